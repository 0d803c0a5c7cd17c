//! Local defining relations of the cover inside the total space of
//! `⊕ L_χ`, with natural-deformation parameters, as polynomial text.
//!
//! Coordinates: `z_χ` for every nontrivial `χ`, the trivial coordinate
//! being normalized to `1`. Parameters: `s_{i,χ}` for `(i, χ) ∈ S`. For each
//! unordered pair `{χ, χ'}` of nontrivial characters (`χ = χ'` allowed) the
//! relation is `z_χ z_χ' − z_χχ' ∏_i τ_i^{ε^i_{χ,χ'}}` with
//! `τ_i = Σ_{(i,χ'')∈S} s_{i,χ''} z_χ''`.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cover::CoverData;
use crate::deformations::{compute_s, SIndex};
use crate::error::{Error, Result};
use crate::groebner::{big, groebner_basis, zero_dimensional_counts, Poly};
use crate::group::{Character, FinAbGroup, InertiaDatum};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Plain,
    Singular,
    #[serde(alias = "m2")]
    Macaulay2,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Flavor::Plain),
            "singular" => Ok(Flavor::Singular),
            "m2" | "macaulay2" => Ok(Flavor::Macaulay2),
            other => Err(Error::InvalidConfig(format!("unknown flavor {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub chi: Character,
    pub chi_prime: Character,
    pub product: Character,
    pub eps: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSystem {
    pub group: FinAbGroup,
    pub galois: bool,
    /// Nontrivial characters, in enumeration order.
    pub variables: Vec<Character>,
    pub parameters: Vec<SIndex>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessReport {
    pub length: usize,
    pub distinct_points: usize,
    pub expected: u64,
}

pub const CONVENTION: &str = "the coordinate of the trivial character is normalized to 1";

fn join(v: &[i64], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl RelationSystem {
    pub fn new(group: &FinAbGroup, inertia: &[InertiaDatum], galois: bool) -> Self {
        let chars = group.characters();
        let variables: Vec<Character> = chars.iter().filter(|c| !c.is_trivial()).cloned().collect();
        let parameters = compute_s(group, inertia)
            .into_iter()
            .filter(|s| !galois || s.chi.is_trivial())
            .collect();
        let mut relations = Vec::new();
        for (a, ca) in variables.iter().enumerate() {
            for cb in &variables[a..] {
                relations.push(Relation {
                    chi: ca.clone(),
                    chi_prime: cb.clone(),
                    product: group.char_mul(ca, cb),
                    eps: inertia.iter().map(|i| group.eps_coeff(i, ca, cb)).collect(),
                });
            }
        }
        RelationSystem { group: group.clone(), galois, variables, parameters, relations }
    }

    pub fn from_cover(cd: &CoverData, galois: bool) -> Self {
        RelationSystem::new(cd.group(), cd.inertia(), galois)
    }

    pub fn expected_relation_count(order: u64) -> u64 {
        let n = order.saturating_sub(1);
        n * n.saturating_sub(1) / 2 + n
    }

    fn z_name(&self, chi: &Character, flavor: Flavor) -> String {
        match flavor {
            Flavor::Macaulay2 if chi.exponents.len() > 1 => format!("z_({})", join(&chi.exponents, ",")),
            _ => format!("z_{}", join(&chi.exponents, "_")),
        }
    }

    fn s_name(&self, s: &SIndex, flavor: Flavor) -> String {
        match flavor {
            Flavor::Macaulay2 => format!("s_({},{})", s.i + 1, join(&s.chi.exponents, ",")),
            _ => format!("s_{}_{}", s.i + 1, join(&s.chi.exponents, "_")),
        }
    }

    fn tau(&self, i: usize, flavor: Flavor) -> String {
        let terms: Vec<String> = self
            .parameters
            .iter()
            .filter(|s| s.i == i)
            .map(|s| {
                if s.chi.is_trivial() {
                    self.s_name(s, flavor)
                } else {
                    format!("{}*{}", self.s_name(s, flavor), self.z_name(&s.chi, flavor))
                }
            })
            .collect();
        match terms.len() {
            0 => "0".into(),
            1 => terms[0].clone(),
            _ => format!("({})", terms.join(" + ")),
        }
    }

    pub fn render_relation(&self, r: &Relation, flavor: Flavor) -> String {
        let lhs = if r.chi == r.chi_prime {
            format!("{}^2", self.z_name(&r.chi, flavor))
        } else {
            format!("{}*{}", self.z_name(&r.chi, flavor), self.z_name(&r.chi_prime, flavor))
        };
        let mut factors = Vec::new();
        if !r.product.is_trivial() {
            factors.push(self.z_name(&r.product, flavor));
        }
        for (i, &e) in r.eps.iter().enumerate() {
            if e == 1 {
                factors.push(self.tau(i, flavor));
            }
        }
        let rhs = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
        format!("{lhs} - {rhs}")
    }

    /// Deterministic text in the requested flavor.
    pub fn emit(&self, flavor: Flavor) -> String {
        let zs: Vec<String> = self.variables.iter().map(|c| self.z_name(c, flavor)).collect();
        let ss: Vec<String> = self.parameters.iter().map(|s| self.s_name(s, flavor)).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| self.render_relation(r, flavor)).collect();
        let kind = if self.galois { "Galois" } else { "natural deformation" };
        let mut out = String::new();
        let comment = match flavor {
            Flavor::Plain => "#",
            Flavor::Singular => "//",
            Flavor::Macaulay2 => "--",
        };
        let _ = writeln!(out, "{comment} relations of a {} cover ({kind} system)", self.group);
        let _ = writeln!(out, "{comment} convention: {CONVENTION}");
        let _ = writeln!(out, "{comment} characters are written by their exponents in the dual basis");
        match flavor {
            Flavor::Plain => {
                let _ = writeln!(out, "# variables: {}", zs.join(", "));
                let _ = writeln!(out, "# parameters: {}", ss.join(", "));
                for r in &rels {
                    let _ = writeln!(out, "{r}");
                }
            }
            Flavor::Singular => {
                let all: Vec<String> = zs.iter().chain(&ss).cloned().collect();
                let _ = writeln!(out, "ring R = 0, ({}), dp;", all.join(", "));
                let _ = writeln!(out, "ideal I =");
                for (k, r) in rels.iter().enumerate() {
                    let end = if k + 1 == rels.len() { ";" } else { "," };
                    let _ = writeln!(out, "  {r}{end}");
                }
                if rels.is_empty() {
                    let _ = writeln!(out, "  0;");
                }
            }
            Flavor::Macaulay2 => {
                let all: Vec<String> = zs.iter().chain(&ss).cloned().collect();
                let _ = writeln!(out, "R = QQ[{}];", all.join(", "));
                let _ = writeln!(out, "I = ideal(");
                for (k, r) in rels.iter().enumerate() {
                    let end = if k + 1 == rels.len() { "" } else { "," };
                    let _ = writeln!(out, "  {r}{end}");
                }
                let _ = writeln!(out, ");");
            }
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.variables.len() + self.parameters.len()
    }

    fn z_poly(&self, chi: &Character) -> Poly {
        let n = self.nvars();
        if chi.is_trivial() {
            return Poly::constant(n, BigRational::one());
        }
        let k = self.variables.iter().position(|c| c == chi).expect("nontrivial character");
        Poly::var(n, k)
    }

    fn tau_poly(&self, i: usize) -> Poly {
        let n = self.nvars();
        let mut t = Poly::zero(n);
        for (k, s) in self.parameters.iter().enumerate() {
            if s.i == i {
                t = t.add(&Poly::var(n, self.variables.len() + k).mul(&self.z_poly(&s.chi)));
            }
        }
        t
    }

    /// The relation as a polynomial in `z`'s followed by `s`'s.
    pub fn polynomial(&self, r: &Relation) -> Poly {
        let lhs = self.z_poly(&r.chi).mul(&self.z_poly(&r.chi_prime));
        let mut rhs = self.z_poly(&r.product);
        for (i, &e) in r.eps.iter().enumerate() {
            if e == 1 {
                rhs = rhs.mul(&self.tau_poly(i));
            }
        }
        lhs.sub(&rhs)
    }

    fn degrees(&self) -> Vec<Character> {
        let g = &self.group;
        let mut degrees: Vec<Character> = self.variables.clone();
        degrees.extend(self.parameters.iter().map(|s| g.char_inverse(&s.chi)));
        degrees
    }

    fn monomial_degree(&self, exps: &[u32], degrees: &[Character]) -> Character {
        let g = &self.group;
        let mut d = g.trivial_character();
        for (e, deg) in exps.iter().zip(degrees) {
            for _ in 0..*e {
                d = g.char_mul(&d, deg);
            }
        }
        d
    }

    /// Whether every monomial of every relation has degree `χχ'` for the
    /// grading `deg z_χ = χ`, `deg s_{i,χ} = χ^{-1}`.
    ///
    /// Works on the factored form: a product is homogeneous of degree `δ`
    /// iff every factor is homogeneous and the factor degrees multiply to `δ`.
    pub fn is_multihomogeneous(&self) -> bool {
        let g = &self.group;
        let degrees = self.degrees();
        let factor_degree = |p: &Poly| -> Option<Character> {
            let mut ds = p.terms().map(|(m, _)| self.monomial_degree(m, &degrees));
            let first = ds.next()?;
            ds.all(|d| d == first).then_some(first)
        };
        self.relations.iter().all(|r| {
            let lhs = self.z_poly(&r.chi).mul(&self.z_poly(&r.chi_prime));
            let mut total = match factor_degree(&self.z_poly(&r.product)) {
                Some(d) => d,
                None => return false,
            };
            for (i, &e) in r.eps.iter().enumerate() {
                if e == 1 {
                    match factor_degree(&self.tau_poly(i)) {
                        Some(d) => total = g.char_mul(&total, &d),
                        None => return false,
                    }
                }
            }
            factor_degree(&lhs) == Some(r.product.clone()) && total == r.product
        })
    }

    /// The same check on the fully expanded relations (exponential in the
    /// number of branch divisors).
    pub fn is_multihomogeneous_expanded(&self) -> bool {
        let degrees = self.degrees();
        self.relations.iter().all(|r| {
            self.polynomial(r).terms().all(|(m, _)| self.monomial_degree(m, &degrees) == r.product)
        })
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.parameters.iter().map(|s| self.s_name(s, Flavor::Plain)).collect()
    }

    /// Specializes every parameter (by plain name) and counts the points of
    /// the fibre: the length of the quotient ring and the number of distinct
    /// points.
    pub fn flatness_smoke_test(&self, values: &[(String, Rational)]) -> Result<FlatnessReport> {
        if self.group.order() > 8 {
            return Err(Error::SizeBound(format!("group of order {} (limit 8)", self.group.order())));
        }
        let names = self.parameter_names();
        for (name, _) in values {
            if !names.contains(name) {
                return Err(Error::InvalidConfig(format!("unknown parameter {name}")));
            }
        }
        let mut subst: Vec<Option<BigRational>> = vec![None; self.variables.len()];
        for name in &names {
            let v = values
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::InvalidConfig(format!("no value for parameter {name}")))?;
            subst.push(Some(big(v.1)));
        }
        let nz = self.variables.len();
        let gens: Vec<Poly> = self.relations.iter().map(|r| self.polynomial(r).substitute(&subst, nz)).collect();
        let gb = groebner_basis(&gens, 20_000)?;
        let (length, distinct_points) = zero_dimensional_counts(&gb, nz, 4096)
            .ok_or_else(|| Error::SizeBound("fibre is not zero-dimensional".into()))?;
        Ok(FlatnessReport { length, distinct_points, expected: self.group.order() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(factors: &[i64], gens: &[&[i64]], galois: bool) -> RelationSystem {
        let g = FinAbGroup::new(factors.to_vec()).unwrap();
        let inertia: Vec<InertiaDatum> = gens.iter().map(|c| g.inertia_from(c).unwrap()).collect();
        RelationSystem::new(&g, &inertia, galois)
    }

    #[test]
    fn double_cover() {
        let s = sys(&[2], &[&[1]], true);
        assert_eq!(s.relations.len(), 1);
        assert_eq!(s.render_relation(&s.relations[0], Flavor::Plain), "z_1^2 - s_1_0");
        let d = sys(&[2], &[&[1]], false);
        assert_eq!(d.render_relation(&d.relations[0], Flavor::Plain), "z_1^2 - s_1_0");
        let z3 = sys(&[3], &[&[1]], false);
        let texts: Vec<String> = z3.relations.iter().map(|r| z3.render_relation(r, Flavor::Plain)).collect();
        assert_eq!(texts, vec!["z_1^2 - z_2", "z_1*z_2 - (s_1_0 + s_1_1*z_1)", "z_2^2 - z_1*(s_1_0 + s_1_1*z_1)"]);
    }

    #[test]
    fn bidouble() {
        let s = sys(&[2, 2], &[&[1, 0], &[0, 1], &[1, 1]], true);
        assert_eq!(s.relations.len(), 6);
        let texts: Vec<String> = s.relations.iter().map(|r| s.render_relation(r, Flavor::Plain)).collect();
        assert!(texts.contains(&"z_1_0*z_0_1 - z_1_1*s_3_0_0".to_string()));
        assert!(texts.contains(&"z_1_0^2 - s_1_0_0*s_3_0_0".to_string()));
        assert!(s.is_multihomogeneous());
        let m2 = s.emit(Flavor::Macaulay2);
        assert!(m2.contains("z_(1,0)*z_(0,1) - z_(1,1)*s_(3,0,0)"));
    }

    #[test]
    fn counts_and_grading() {
        for f in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2]] {
            let g = FinAbGroup::new(f).unwrap();
            let all = g.enumerate_ig();
            for galois in [true, false] {
                let s = RelationSystem::new(&g, &all, galois);
                assert_eq!(s.relations.len() as u64, RelationSystem::expected_relation_count(g.order()));
                assert!(s.is_multihomogeneous());
                if g.order() <= 4 {
                    assert!(s.is_multihomogeneous_expanded());
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let s = sys(&[2, 2], &[&[1, 0], &[0, 1], &[1, 1]], false);
        for f in [Flavor::Plain, Flavor::Singular, Flavor::Macaulay2] {
            assert_eq!(s.emit(f), s.clone().emit(f));
        }
    }

    #[test]
    fn smoke_tests() {
        let s = sys(&[2], &[&[1]], true);
        let r = s.flatness_smoke_test(&[("s_1_0".into(), Rational::from_integer(1))]).unwrap();
        assert_eq!((r.length, r.distinct_points), (2, 2));
        let r = s.flatness_smoke_test(&[("s_1_0".into(), Rational::from_integer(0))]).unwrap();
        assert_eq!((r.length, r.distinct_points), (2, 1));
        let z3 = sys(&[3], &[&[1]], false);
        let vals = vec![("s_1_0".to_string(), Rational::from_integer(2)), ("s_1_1".to_string(), Rational::new(1, 3))];
        let r = z3.flatness_smoke_test(&vals).unwrap();
        assert_eq!((r.length, r.distinct_points), (3, 3));
        let big = sys(&[4, 4], &[&[1, 0], &[0, 1]], true);
        assert!(matches!(big.flatness_smoke_test(&[]), Err(Error::SizeBound(_))));
    }
}
