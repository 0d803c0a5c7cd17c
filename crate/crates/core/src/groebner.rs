//! Sparse polynomials over `Q` and a plain Buchberger algorithm in
//! graded reverse lexicographic order. Only meant for the tiny
//! zero-dimensional systems of the relation emitter.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Monomial = Vec<u32>;

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Key(Monomial);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Key, BigRational>,
}

pub fn big(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Poly::term(nvars, vec![0; nvars], c)
    }

    pub fn term(nvars: usize, mono: Monomial, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Key(mono), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::term(nvars, m, BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev().map(|(k, c)| (&k.0, c))
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back().map(|(k, c)| (&k.0, c))
    }

    fn add_term(&mut self, mono: Monomial, c: BigRational) {
        let key = Key(mono);
        let v = self.terms.remove(&key).unwrap_or_else(BigRational::zero) + c;
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let m = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, mono: &[u32], c: &BigRational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in self.terms() {
            let m = a.iter().zip(mono).map(|(x, y)| x + y).collect();
            out.terms.insert(Key(m), ca * c);
        }
        out
    }

    /// Substitutes values for a subset of variables; the remaining
    /// variables are renumbered by `keep` in order.
    pub fn substitute(&self, values: &[Option<BigRational>], keep: usize) -> Poly {
        let mut out = Poly::zero(keep);
        for (m, c) in self.terms() {
            let mut coef = c.clone();
            let mut mono = Vec::with_capacity(keep);
            for (e, v) in m.iter().zip(values) {
                match v {
                    Some(x) => {
                        for _ in 0..*e {
                            coef *= x;
                        }
                    }
                    None => mono.push(*e),
                }
            }
            out.add_term(mono, coef);
        }
        out
    }

    fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                let mut out = Poly::zero(self.nvars);
                for (m, x) in self.terms() {
                    out.terms.insert(Key(m.clone()), x * &inv);
                }
                out
            }
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Fully reduces `p` modulo `basis`.
pub fn normal_form(p: &Poly, basis: &[Poly]) -> Poly {
    let mut rest = p.clone();
    let mut out = Poly::zero(p.nvars);
    while let Some((lm, lc)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let reducer = basis.iter().find(|g| g.leading().is_some_and(|(gm, _)| divides(gm, &lm)));
        match reducer {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let shift: Monomial = lm.iter().zip(gm).map(|(x, y)| x - y).collect();
                rest = rest.sub(&g.mul_term(&shift, &(lc / gc)));
            }
            None => {
                rest.terms.remove(&Key(lm.clone()));
                out.add_term(lm, lc);
            }
        }
    }
    out
}

/// Reduced Gröbner basis; fails when more than `max_pairs` S-pairs are
/// processed.
pub fn groebner_basis(gens: &[Poly], max_pairs: usize) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(Poly::monic).collect();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut processed = 0;
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        processed += 1;
        if processed > max_pairs {
            return Err(Error::SizeBound(format!("more than {max_pairs} S-pairs")));
        }
        let (mi, _) = basis[i].leading().unwrap();
        let (mj, _) = basis[j].leading().unwrap();
        // coprime leading monomials reduce to zero
        if mi.iter().zip(mj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(mi, mj);
        let si: Monomial = l.iter().zip(mi).map(|(x, y)| x - y).collect();
        let sj: Monomial = l.iter().zip(mj).map(|(x, y)| x - y).collect();
        let one = BigRational::one();
        let s = basis[i].mul_term(&si, &one).sub(&basis[j].mul_term(&sj, &one));
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            for t in 0..k {
                pairs.insert((t, k));
            }
        }
    }
    // minimalize and interreduce
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let (gm, _) = g.leading().unwrap();
        let redundant = basis.iter().enumerate().any(|(t, h)| {
            let (hm, _) = h.leading().unwrap();
            t != k && divides(hm, gm) && (hm != gm || t < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(t, _)| *t != k).map(|(_, p)| p.clone()).collect();
        let (lm, _) = minimal[k].leading().unwrap();
        let lead = Poly::term(minimal[k].nvars, lm.clone(), BigRational::one());
        let tail = normal_form(&minimal[k].sub(&lead), &others);
        reduced.push(lead.add(&tail));
    }
    reduced.sort_by(|a, b| grevlex(a.leading().unwrap().0, b.leading().unwrap().0));
    Ok(reduced)
}

/// Standard monomials of a zero-dimensional ideal, or `None` when the
/// ideal is not zero-dimensional or the quotient exceeds `cap`.
pub fn standard_monomials(basis: &[Poly], nvars: usize, cap: usize) -> Option<Vec<Monomial>> {
    if basis.iter().any(|g| g.leading().is_some_and(|(m, _)| m.iter().all(|&e| e == 0))) {
        return Some(Vec::new());
    }
    let leads: Vec<&Monomial> = basis.iter().map(|g| g.leading().unwrap().0).collect();
    // each variable needs a pure power among the leading monomials
    let mut bounds = vec![0u32; nvars];
    for (v, b) in bounds.iter_mut().enumerate() {
        *b = leads
            .iter()
            .filter(|m| m.iter().enumerate().all(|(t, &e)| t == v || e == 0))
            .map(|m| m[v])
            .min()?;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    loop {
        if !leads.iter().any(|l| divides(l, &cur)) {
            out.push(cur.clone());
            if out.len() > cap {
                return None;
            }
        }
        let mut v = 0;
        loop {
            if v == nvars {
                out.sort_by(|a, b| grevlex(a, b));
                return Some(out);
            }
            cur[v] += 1;
            if cur[v] < bounds[v] {
                break;
            }
            cur[v] = 0;
            v += 1;
        }
    }
}

/// Rank over `Q` of a square matrix of big rationals.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Length of `Q[x]/I` and the number of distinct complex points of `V(I)`
/// (rank of the trace form).
pub fn zero_dimensional_counts(basis: &[Poly], nvars: usize, cap: usize) -> Option<(usize, usize)> {
    let std = standard_monomials(basis, nvars, cap)?;
    let len = std.len();
    let mono = |m: &Monomial| Poly::term(nvars, m.clone(), BigRational::one());
    // trace of multiplication by each product b_i b_j
    let trace = |p: &Poly| -> BigRational {
        let mut t = BigRational::zero();
        for b in &std {
            let nf = normal_form(&p.mul(&mono(b)), basis);
            for (m, c) in nf.terms() {
                if m == b {
                    t += c;
                }
            }
        }
        t
    };
    let mut form = vec![vec![BigRational::zero(); len]; len];
    for i in 0..len {
        for j in i..len {
            let v = trace(&normal_form(&mono(&std[i]).mul(&mono(&std[j])), basis));
            form[i][j] = v.clone();
            form[j][i] = v;
        }
    }
    Some((len, rank(form)))
}
