//! Finite abelian groups in invariant-factor form, their duals, the set of
//! inertia data `I_G`, and the integer coefficients attached to a pair
//! (inertia datum, character).
//!
//! Elements and characters are coordinate vectors with respect to a fixed
//! basis `e_1, …, e_s` with `ord(e_j) = d_j` and `d_j | d_{j+1}`, and its
//! dual basis `χ_j(e_i) = ζ_{d_i}^{δ_ij}`. Roots of unity are exact
//! rationals mod 1: `χ(g) = Σ α_j g_j / d_j mod 1`.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rational_rank, smith_diagonal};
use crate::rational::Rational;

/// Enumeration bound used by [`FinAbGroup::aut_i`] unless overridden.
pub const DEFAULT_AUT_BOUND: u64 = 512;

/// Node budget for the automorphism search; independent of the order bound.
const AUT_SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct FinAbGroup {
    factors: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character {
    pub exponents: Vec<i64>,
}

/// A pair `(H, ψ)` with `H` cyclic of order `m ≥ 2` and `ψ` a generator of
/// `H*`, stored as the element `g ∈ H` with `ψ(g) = ζ_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InertiaDatum {
    pub generator: GroupElement,
    pub order: i64,
}

/// An automorphism, given by the images of the basis elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    pub images: Vec<GroupElement>,
}

/// A subgroup, listed element by element, with its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    pub elements: Vec<GroupElement>,
    pub invariant_factors: Vec<i64>,
}

impl TryFrom<Vec<i64>> for FinAbGroup {
    type Error = Error;

    fn try_from(factors: Vec<i64>) -> Result<Self> {
        FinAbGroup::new(factors)
    }
}

impl From<FinAbGroup> for Vec<i64> {
    fn from(g: FinAbGroup) -> Self {
        g.factors
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z_{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, &a)| if a == 1 { format!("x{}", j + 1) } else { format!("x{}^{a}", j + 1) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }
}

impl InertiaDatum {
    /// `m = #H`.
    pub fn m(&self) -> i64 {
        self.order
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }
}

fn mixed_radix(factors: &[i64]) -> Vec<Vec<i64>> {
    let total: i64 = factors.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0i64; factors.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for (c, &d) in cur.iter_mut().zip(factors) {
            *c += 1;
            if *c < d {
                break;
            }
            *c = 0;
        }
    }
    out
}

impl FinAbGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!("invariant factor {d} < 2")));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        let mut order: i64 = 1;
        for &d in &factors {
            order = order
                .checked_mul(d)
                .filter(|&o| o <= 1 << 40)
                .ok_or_else(|| Error::InvalidGroup("order too large".into()))?;
        }
        Ok(FinAbGroup { factors })
    }

    pub fn cyclic(m: i64) -> Result<Self> {
        FinAbGroup::new(vec![m])
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    /// Number of basis elements `s`.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product::<i64>() as u64
    }

    /// Least common multiple of all element orders, i.e. `d_s`.
    pub fn exponent(&self) -> i64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// Basis element `e_{j+1}` (zero-based `j`).
    pub fn basis(&self, j: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[j] = 1;
        GroupElement { coords }
    }

    /// Element with the given coordinates; each must lie in `[0, d_j)`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_coords(coords)?;
        Ok(GroupElement { coords: coords.to_vec() })
    }

    /// Element with arbitrary integer coordinates, reduced mod `d_j`.
    pub fn reduce(&self, coords: &[i64]) -> GroupElement {
        GroupElement {
            coords: coords.iter().zip(&self.factors).map(|(c, d)| c.mod_floor(d)).collect(),
        }
    }

    fn check_coords(&self, coords: &[i64]) -> Result<()> {
        if coords.len() != self.rank() || coords.iter().zip(&self.factors).any(|(&c, &d)| c < 0 || c >= d) {
            return Err(Error::NotInGroup { coords: coords.to_vec(), factors: self.factors.clone() });
        }
        Ok(())
    }

    /// All elements, first coordinate varying fastest.
    pub fn elements(&self) -> Vec<GroupElement> {
        mixed_radix(&self.factors).into_iter().map(|coords| GroupElement { coords }).collect()
    }

    /// All characters, in the same order as [`elements`](Self::elements).
    pub fn characters(&self) -> Vec<Character> {
        mixed_radix(&self.factors).into_iter().map(|exponents| Character { exponents }).collect()
    }

    pub fn trivial_character(&self) -> Character {
        Character { exponents: vec![0; self.rank()] }
    }

    /// Dual basis character `χ_{j+1}` (zero-based `j`).
    pub fn dual_basis(&self, j: usize) -> Character {
        let mut exponents = vec![0; self.rank()];
        exponents[j] = 1;
        Character { exponents }
    }

    pub fn character(&self, exponents: &[i64]) -> Result<Character> {
        self.check_coords(exponents)?;
        Ok(Character { exponents: exponents.to_vec() })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(&a.coords.iter().map(|c| -c).collect::<Vec<_>>())
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        self.reduce(&a.coords.iter().map(|c| k * c).collect::<Vec<_>>())
    }

    pub fn element_order(&self, g: &GroupElement) -> i64 {
        g.coords
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character {
            exponents: a
                .exponents
                .iter()
                .zip(&b.exponents)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
        }
    }

    pub fn char_inverse(&self, a: &Character) -> Character {
        Character {
            exponents: a.exponents.iter().zip(&self.factors).map(|(x, d)| (-x).mod_floor(d)).collect(),
        }
    }

    pub fn char_order(&self, a: &Character) -> i64 {
        a.exponents
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    /// `N` with `χ(g) = N / d_s mod 1`, `0 ≤ N < d_s`.
    fn pairing_numerator(&self, chi: &Character, g: &GroupElement) -> i64 {
        let e = self.exponent();
        chi.exponents
            .iter()
            .zip(&g.coords)
            .zip(&self.factors)
            .map(|((a, x), d)| a * x * (e / d))
            .sum::<i64>()
            .mod_floor(&e)
    }

    /// `χ(g)` as a reduced fraction in `[0, 1)`.
    pub fn pairing(&self, chi: &Character, g: &GroupElement) -> Rational {
        Rational::new(self.pairing_numerator(chi, g), self.exponent())
    }

    pub fn inertia(&self, g: &GroupElement) -> Result<InertiaDatum> {
        self.check_coords(&g.coords)?;
        if g.is_zero() {
            return Err(Error::ZeroInertia);
        }
        Ok(InertiaDatum { generator: g.clone(), order: self.element_order(g) })
    }

    /// Inertia datum from raw coordinates (reduced mod `d_j`).
    pub fn inertia_from(&self, coords: &[i64]) -> Result<InertiaDatum> {
        if coords.len() != self.rank() {
            return Err(Error::NotInGroup { coords: coords.to_vec(), factors: self.factors.clone() });
        }
        self.inertia(&self.reduce(coords))
    }

    /// The set `I_G`: one datum per nonzero element.
    pub fn enumerate_ig(&self) -> Vec<InertiaDatum> {
        self.elements()
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let order = self.element_order(&g);
                InertiaDatum { generator: g, order }
            })
            .collect()
    }

    /// `r^i_χ`: the unique `0 ≤ r < m_i` with `χ|_{H_i} = ψ_i^r`.
    pub fn r_coeff(&self, i: &InertiaDatum, chi: &Character) -> i64 {
        self.pairing_numerator(chi, &i.generator) * i.order / self.exponent()
    }

    /// `ε^i_{χ,χ'} = [(r^i_χ + r^i_{χ'}) / m_i] ∈ {0, 1}`.
    pub fn eps_coeff(&self, i: &InertiaDatum, a: &Character, b: &Character) -> i64 {
        (self.r_coeff(i, a) + self.r_coeff(i, b)) / i.order
    }

    /// `q^i_χ = [Σ_j α_j r^i_j / m_i]`, basis dependent.
    pub fn q_coeff(&self, i: &InertiaDatum, chi: &Character) -> i64 {
        let total: i64 = chi
            .exponents
            .iter()
            .enumerate()
            .map(|(j, a)| a * self.r_coeff(i, &self.dual_basis(j)))
            .sum();
        Integer::div_floor(&total, &i.order)
    }

    /// The `k × s` matrix `(r^i_j)`.
    pub fn r_matrix(&self, inertia: &[InertiaDatum]) -> Vec<Vec<i64>> {
        inertia
            .iter()
            .map(|i| (0..self.rank()).map(|j| self.r_coeff(i, &self.dual_basis(j))).collect())
            .collect()
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[&GroupElement]) -> u64 {
        if self.rank() == 0 {
            return 1;
        }
        let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.coords.clone()).collect();
        for (j, &d) in self.factors.iter().enumerate() {
            let mut r = vec![0; self.rank()];
            r[j] = d;
            rows.push(r);
        }
        let index: u64 = smith_diagonal(&rows).iter().map(|&x| x as u64).product();
        self.order() / index
    }

    /// Whether `⊕ H_i → G` is onto.
    pub fn surjectivity_check(&self, inertia: &[InertiaDatum]) -> bool {
        let gens: Vec<&GroupElement> = inertia.iter().map(|i| &i.generator).collect();
        self.subgroup_order(&gens) == self.order()
    }

    /// Whether `(r^i_j)` has rank `s` over the rationals.
    pub fn rank_check(&self, inertia: &[InertiaDatum]) -> bool {
        rational_rank(&self.r_matrix(inertia)) == self.rank()
    }

    /// Whether `⊕_{i ∈ subset} H_i → G` is injective.
    pub fn is_injective_sum(&self, data: &[&InertiaDatum]) -> bool {
        let product: u64 = data.iter().map(|i| i.order as u64).product();
        let gens: Vec<&GroupElement> = data.iter().map(|i| &i.generator).collect();
        product == self.subgroup_order(&gens)
    }

    /// Common kernel of a set of characters.
    pub fn kernel(&self, chars: &[&Character]) -> Subgroup {
        let elements = self
            .elements()
            .into_iter()
            .filter(|g| chars.iter().all(|c| self.pairing_numerator(c, g) == 0))
            .collect();
        self.subgroup_from_elements(elements)
    }

    /// Wraps an element list known to be a subgroup; computes its structure.
    pub fn subgroup_from_elements(&self, mut elements: Vec<GroupElement>) -> Subgroup {
        elements.sort();
        elements.dedup();
        let invariant_factors = self.structure_of(&elements);
        Subgroup { elements, invariant_factors }
    }

    /// Invariant factors of a subgroup from the counts `#{x : p^k x = 0}`.
    fn structure_of(&self, elements: &[GroupElement]) -> Vec<i64> {
        let n = elements.len() as i64;
        let mut exps_by_prime: Vec<(i64, Vec<u32>)> = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                while rest % p == 0 {
                    rest /= p;
                }
                // a_k = log_p #{x : p^k x = 0}
                let mut a = vec![0u32];
                let mut k = 1u32;
                loop {
                    let pk = p.pow(k);
                    let count = elements.iter().filter(|x| self.scale(pk, x).is_zero()).count() as i64;
                    let mut log = 0;
                    let mut c = count;
                    while c > 1 {
                        c /= p;
                        log += 1;
                    }
                    a.push(log);
                    if count == n || a[k as usize] == a[k as usize - 1] {
                        break;
                    }
                    k += 1;
                }
                // cyclic p-factors of exponent ≥ k: a_k − a_{k−1}
                let kmax = a.len() - 1;
                let mut parts = Vec::new();
                for k in (1..=kmax).rev() {
                    let at_least_k = a[k] - a[k - 1];
                    let at_least_k1 = if k < kmax { a[k + 1] - a[k] } else { 0 };
                    for _ in 0..(at_least_k - at_least_k1) {
                        parts.push(k as u32);
                    }
                }
                exps_by_prime.push((p, parts));
            }
            p += 1;
        }
        let len = exps_by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut factors: Vec<i64> = (0..len)
            .map(|t| {
                exps_by_prime
                    .iter()
                    .map(|(p, v)| v.get(t).map_or(1, |&e| p.pow(e)))
                    .product()
            })
            .collect();
        factors.reverse();
        factors
    }

    /// The whole group as a [`Subgroup`].
    pub fn as_subgroup(&self) -> Subgroup {
        Subgroup { elements: { let mut e = self.elements(); e.sort(); e }, invariant_factors: self.factors.clone() }
    }

    pub fn apply(&self, phi: &Automorphism, g: &GroupElement) -> GroupElement {
        let mut acc = self.zero();
        for (c, img) in g.coords.iter().zip(&phi.images) {
            acc = self.add(&acc, &self.scale(*c, img));
        }
        acc
    }

    /// `Aut_I(G)`: automorphisms mapping the set `I` onto itself, by brute
    /// force over basis images.
    pub fn aut_i(&self, inertia: &[InertiaDatum], bound: u64) -> Result<Vec<Automorphism>> {
        if self.order() > bound {
            return Err(Error::BoundExceeded { order: self.order(), bound });
        }
        let elements = self.elements();
        let target: HashSet<&GroupElement> = inertia.iter().map(|i| &i.generator).collect();
        let mut out = Vec::new();
        let mut images: Vec<GroupElement> = Vec::new();
        let mut budget = AUT_SEARCH_BUDGET;
        self.aut_search(&elements, &target, &mut images, &mut out, &mut budget)?;
        Ok(out)
    }

    fn aut_search(
        &self,
        elements: &[GroupElement],
        target: &HashSet<&GroupElement>,
        images: &mut Vec<GroupElement>,
        out: &mut Vec<Automorphism>,
        budget: &mut u64,
    ) -> Result<()> {
        let j = images.len();
        if j == self.rank() {
            let phi = Automorphism { images: images.clone() };
            if target.iter().all(|g| target.contains(&self.apply(&phi, g))) {
                out.push(phi);
            }
            return Ok(());
        }
        let d = self.factors[j];
        let needed: u64 = self.factors[..=j].iter().map(|&x| x as u64).product();
        for x in elements {
            if *budget == 0 {
                return Err(Error::BoundExceeded { order: self.order(), bound: AUT_SEARCH_BUDGET });
            }
            *budget -= 1;
            if self.element_order(x) != d {
                continue;
            }
            images.push(x.clone());
            let gens: Vec<&GroupElement> = images.iter().collect();
            if self.subgroup_order(&gens) == needed {
                self.aut_search(elements, target, images, out, budget)?;
            }
            images.pop();
        }
        Ok(())
    }
}
