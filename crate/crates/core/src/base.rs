//! Numerical model of the base variety: a Néron–Severi lattice with its
//! intersection form, canonical class, irregularity, holomorphic Euler
//! characteristic and a finite list of positivity test classes.
//!
//! Line bundles are represented by their classes in `Z^ρ`, plus an optional
//! [`Pic0Marker`] recording the continuous part as a vector of formal
//! symbols. Torsion in `NS(Y)` is not modelled.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// An integral class in `NS(Y) ≅ Z^ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NSClass(pub Vec<i64>);

/// A rational class (Q-divisor) in `NS(Y) ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QClass(pub Vec<Rational>);

/// A point of a formal free module `Z^t` standing in for `Pic⁰(Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pic0Marker(pub Vec<i64>);

/// A dimension that is either known exactly or honestly unknown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Known(i64),
    Unknown,
}

impl NSClass {
    pub fn zero(rank: usize) -> Self {
        NSClass(vec![0; rank])
    }

    pub fn unit(rank: usize, j: usize) -> Self {
        let mut v = vec![0; rank];
        v[j] = 1;
        NSClass(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> NSClass {
        NSClass(self.0.iter().map(|x| k * x).collect())
    }

    pub fn to_q(&self) -> QClass {
        QClass(self.0.iter().map(|&x| int(x)).collect())
    }
}

impl Add for &NSClass {
    type Output = NSClass;
    fn add(self, rhs: &NSClass) -> NSClass {
        NSClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &NSClass {
    type Output = NSClass;
    fn sub(self, rhs: &NSClass) -> NSClass {
        NSClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &NSClass {
    type Output = NSClass;
    fn neg(self) -> NSClass {
        self.scale(-1)
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl QClass {
    pub fn zero(rank: usize) -> Self {
        QClass(vec![int(0); rank])
    }

    pub fn scale(&self, k: Rational) -> QClass {
        QClass(self.0.iter().map(|x| k * x).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == int(0))
    }

    /// The class itself if all coordinates are integers.
    pub fn to_integral(&self) -> Option<NSClass> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(NSClass)
    }
}

impl Add for &QClass {
    type Output = QClass;
    fn add(self, rhs: &QClass) -> QClass {
        QClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QClass {
    type Output = QClass;
    fn sub(self, rhs: &QClass) -> QClass {
        QClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::render).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for QClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::vec_as_str::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for QClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::vec_as_str::deserialize(d).map(QClass)
    }
}

impl Pic0Marker {
    pub fn zero(t: usize) -> Self {
        Pic0Marker(vec![0; t])
    }

    pub fn unit(t: usize, j: usize) -> Self {
        let mut v = vec![0; t];
        v[j] = 1;
        Pic0Marker(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> Pic0Marker {
        Pic0Marker(self.0.iter().map(|x| k * x).collect())
    }
}

impl Add for &Pic0Marker {
    type Output = Pic0Marker;
    fn add(self, rhs: &Pic0Marker) -> Pic0Marker {
        Pic0Marker(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Pic0Marker {
    type Output = Pic0Marker;
    fn sub(self, rhs: &Pic0Marker) -> Pic0Marker {
        Pic0Marker(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Dim {
    pub fn known(self) -> Option<i64> {
        match self {
            Dim::Known(n) => Some(n),
            Dim::Unknown => None,
        }
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, Dim::Unknown)
    }

    /// Sum, unknown if either side is.
    pub fn plus(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::Known(a), Dim::Known(b)) => Dim::Known(a + b),
            _ => Dim::Unknown,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Known(n) => write!(f, "{n}"),
            Dim::Unknown => write!(f, "unknown"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Known(n) => s.serialize_i64(*n),
            Dim::Unknown => s.serialize_str("unknown"),
        }
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Dim::Known)
                .ok_or_else(|| de::Error::custom("dimension must be an integer")),
            serde_json::Value::String(s) if s == "unknown" => Ok(Dim::Unknown),
            other => Err(de::Error::custom(format!("bad dimension: {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalBase {
    pub name: String,
    pub dim: u32,
    /// Symmetric `ρ × ρ` intersection form (a degree functional off surfaces).
    pub form: Vec<Vec<i64>>,
    pub canonical: NSClass,
    pub q: i64,
    pub chi_o: i64,
    /// Topological Euler number `e(Y) = c₂(Y)` (surfaces).
    pub euler_number: i64,
    /// Classes every sufficiently ample class must pair positively with.
    pub ample_tests: Vec<NSClass>,
}

impl NumericalBase {
    pub fn new(
        name: impl Into<String>,
        dim: u32,
        form: Vec<Vec<i64>>,
        canonical: NSClass,
        q: i64,
        chi_o: i64,
        euler_number: i64,
        ample_tests: Vec<NSClass>,
    ) -> Result<Self> {
        let b = NumericalBase { name: name.into(), dim, form, canonical, q, chi_o, euler_number, ample_tests };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let rho = self.form.len();
        if self.dim == 0 {
            return Err(Error::InvalidBase("dimension must be at least 1".into()));
        }
        if rho == 0 {
            return Err(Error::InvalidBase("Néron–Severi rank must be at least 1".into()));
        }
        if self.form.iter().any(|r| r.len() != rho) {
            return Err(Error::InvalidBase("intersection form is not square".into()));
        }
        for i in 0..rho {
            for j in 0..i {
                if self.form[i][j] != self.form[j][i] {
                    return Err(Error::InvalidBase("intersection form is not symmetric".into()));
                }
            }
        }
        self.check_class(&self.canonical)?;
        for t in &self.ample_tests {
            self.check_class(t)?;
        }
        if self.q < 0 {
            return Err(Error::InvalidBase("irregularity must be nonnegative".into()));
        }
        if self.dim == 2 {
            let k2 = self.intersect(&self.canonical, &self.canonical)?;
            if 12 * self.chi_o != k2 + self.euler_number {
                return Err(Error::InvalidBase(format!(
                    "Noether's formula fails: 12·{} ≠ {} + {}",
                    self.chi_o, k2, self.euler_number
                )));
            }
            // L² ≡ L·K mod 2 on a basis makes χ(L) integral for every L
            for j in 0..rho {
                let e = NSClass::unit(rho, j);
                let v = self.intersect(&e, &e)? - self.intersect(&e, &self.canonical)?;
                if v % 2 != 0 {
                    return Err(Error::InvalidBase(format!("basis class {j} violates L² ≡ L·K mod 2")));
                }
            }
        }
        Ok(())
    }

    pub fn ns_rank(&self) -> usize {
        self.form.len()
    }

    pub fn is_surface(&self) -> bool {
        self.dim == 2
    }

    pub fn check_class(&self, c: &NSClass) -> Result<()> {
        if c.len() != self.ns_rank() {
            return Err(Error::DimensionMismatch { expected: self.ns_rank(), got: c.len() });
        }
        Ok(())
    }

    pub fn class(&self, coords: &[i64]) -> Result<NSClass> {
        let c = NSClass(coords.to_vec());
        self.check_class(&c)?;
        Ok(c)
    }

    pub fn zero_class(&self) -> NSClass {
        NSClass::zero(self.ns_rank())
    }

    pub fn intersect(&self, a: &NSClass, b: &NSClass) -> Result<i64> {
        self.check_class(a)?;
        self.check_class(b)?;
        let mut s = 0;
        for (i, ai) in a.0.iter().enumerate() {
            for (j, bj) in b.0.iter().enumerate() {
                s += ai * self.form[i][j] * bj;
            }
        }
        Ok(s)
    }

    pub fn intersect_q(&self, a: &QClass, b: &QClass) -> Result<Rational> {
        let rho = self.ns_rank();
        for c in [a, b] {
            if c.0.len() != rho {
                return Err(Error::DimensionMismatch { expected: rho, got: c.0.len() });
            }
        }
        let mut s = int(0);
        for (i, ai) in a.0.iter().enumerate() {
            for (j, bj) in b.0.iter().enumerate() {
                s += ai * int(self.form[i][j]) * bj;
            }
        }
        Ok(s)
    }

    /// Whether `a − margin` pairs strictly positively with every test class
    /// and, on surfaces, has positive self-intersection. Classes of the
    /// wrong length are never ample.
    pub fn is_sufficiently_ample(&self, a: &NSClass, margin: &NSClass) -> bool {
        if a.len() != self.ns_rank() || margin.len() != self.ns_rank() {
            return false;
        }
        self.is_sufficiently_ample_q(&(a - margin).to_q(), &QClass::zero(self.ns_rank()))
    }

    pub fn is_sufficiently_ample_q(&self, a: &QClass, margin: &QClass) -> bool {
        let zero = int(0);
        let b = a - margin;
        let Ok(self_int) = self.intersect_q(&b, &b) else { return false };
        if self.is_surface() && self_int <= zero {
            return false;
        }
        self.ample_tests
            .iter()
            .all(|t| self.intersect_q(&b, &t.to_q()).map(|v| v > zero).unwrap_or(false))
    }

    /// Nonnegative pairing with every test class (a nef proxy).
    pub fn is_oracle_nonnegative(&self, a: &NSClass) -> bool {
        self.ample_tests
            .iter()
            .all(|t| self.intersect(a, t).map(|v| v >= 0).unwrap_or(false))
    }

    fn pairs_negatively(&self, a: &NSClass) -> bool {
        self.ample_tests
            .iter()
            .any(|t| self.intersect(a, t).map(|v| v < 0).unwrap_or(false))
    }

    /// `χ(L) = χ(O_Y) + ½ L·(L − K_Y)` on a surface.
    pub fn euler_characteristic(&self, l: &NSClass) -> Result<Rational> {
        if !self.is_surface() {
            return Err(Error::InvalidBase("Riemann–Roch is implemented for surfaces only".into()));
        }
        let v = self.intersect(l, &(l - &self.canonical))?;
        Ok(int(self.chi_o) + Rational::new(v, 2))
    }

    /// `h⁰(L)` where it can be decided numerically:
    ///
    /// * `c₁(L) = 0`: 1 if the marker is zero (trivial bundle), else 0;
    /// * `L − K_Y` sufficiently ample: `χ(L)` (higher cohomology vanishes);
    /// * `L` pairs negatively with a test class: 0;
    /// * otherwise unknown.
    pub fn riemann_roch_h0(&self, l: &NSClass, marker: Option<&Pic0Marker>) -> Dim {
        if l.len() != self.ns_rank() {
            return Dim::Unknown;
        }
        if l.is_zero() {
            return Dim::Known(if marker.is_none_or(Pic0Marker::is_zero) { 1 } else { 0 });
        }
        if self.is_surface() && self.is_sufficiently_ample(l, &self.canonical) {
            return match self.euler_characteristic(l) {
                Ok(x) if x.is_integer() => Dim::Known(x.to_integer()),
                _ => Dim::Unknown,
            };
        }
        if self.pairs_negatively(l) {
            return Dim::Known(0);
        }
        Dim::Unknown
    }

    /// `h¹(L)` in the same numerically decidable cases as
    /// [`riemann_roch_h0`](Self::riemann_roch_h0).
    pub fn h1(&self, l: &NSClass, marker: Option<&Pic0Marker>) -> Dim {
        if l.len() != self.ns_rank() {
            return Dim::Unknown;
        }
        if l.is_zero() {
            return Dim::Known(if marker.is_none_or(Pic0Marker::is_zero) { self.q } else { 0 });
        }
        if self.is_surface() && self.is_sufficiently_ample(l, &self.canonical) {
            return Dim::Known(0);
        }
        Dim::Unknown
    }

    // Presets.

    pub fn p2() -> Self {
        NumericalBase {
            name: "P2".into(),
            dim: 2,
            form: vec![vec![1]],
            canonical: NSClass(vec![-3]),
            q: 0,
            chi_o: 1,
            euler_number: 3,
            ample_tests: vec![NSClass(vec![1])],
        }
    }

    /// Basis: the two rulings `f_1`, `f_2`.
    pub fn p1xp1() -> Self {
        NumericalBase {
            name: "P1xP1".into(),
            dim: 2,
            form: vec![vec![0, 1], vec![1, 0]],
            canonical: NSClass(vec![-2, -2]),
            q: 0,
            chi_o: 1,
            euler_number: 4,
            ample_tests: vec![NSClass(vec![1, 0]), NSClass(vec![0, 1])],
        }
    }

    /// Principally polarized abelian surface with `NS = Z·Θ`, `Θ² = 2`.
    pub fn abelian_pp() -> Self {
        NumericalBase {
            name: "abelian_pp".into(),
            dim: 2,
            form: vec![vec![2]],
            canonical: NSClass(vec![0]),
            q: 2,
            chi_o: 0,
            euler_number: 0,
            ample_tests: vec![NSClass(vec![1])],
        }
    }

    /// `C_1 × C_2` for curves of genera `g1`, `g2`, with `NS` spanned by the
    /// fibre classes `f_1 = pt × C_2` and `f_2 = C_1 × pt`.
    pub fn curve_product(g1: i64, g2: i64) -> Result<Self> {
        if g1 < 0 || g2 < 0 {
            return Err(Error::InvalidBase("genera must be nonnegative".into()));
        }
        NumericalBase::new(
            format!("curve_product({g1},{g2})"),
            2,
            vec![vec![0, 1], vec![1, 0]],
            NSClass(vec![2 * g1 - 2, 2 * g2 - 2]),
            g1 + g2,
            (1 - g1) * (1 - g2),
            (2 - 2 * g1) * (2 - 2 * g2),
            vec![NSClass(vec![1, 0]), NSClass(vec![0, 1])],
        )
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "P2" => Some(Self::p2()),
            "P1xP1" => Some(Self::p1xp1()),
            "abelian_pp" => Some(Self::abelian_pp()),
            "curve_product" => Self::curve_product(2, 2).ok(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signature(form: &[Vec<i64>]) -> (usize, usize) {
        // eigenvalue signs of a 1×1 or 2×2 symmetric form
        match form.len() {
            1 => if form[0][0] > 0 { (1, 0) } else { (0, 1) },
            2 => {
                let det = form[0][0] * form[1][1] - form[0][1] * form[1][0];
                let tr = form[0][0] + form[1][1];
                if det < 0 { (1, 1) } else if tr > 0 { (2, 0) } else { (0, 2) }
            }
            _ => unimplemented!(),
        }
    }

    #[test]
    fn presets_are_valid_and_hodge_index() {
        let mut all = vec![NumericalBase::p2(), NumericalBase::p1xp1(), NumericalBase::abelian_pp()];
        for (a, b) in [(0, 0), (2, 2), (2, 5), (3, 1)] {
            all.push(NumericalBase::curve_product(a, b).unwrap());
        }
        for b in &all {
            b.validate().unwrap();
            let k2 = b.intersect(&b.canonical, &b.canonical).unwrap();
            assert_eq!(12 * b.chi_o, k2 + b.euler_number, "{}", b.name);
            assert_eq!(signature(&b.form), (1, b.ns_rank() - 1), "{}", b.name);
        }
    }

    #[test]
    fn intersections() {
        let p2 = NumericalBase::p2();
        assert_eq!(p2.intersect(&NSClass(vec![1]), &NSClass(vec![1])).unwrap(), 1);
        let q = NumericalBase::p1xp1();
        let (f1, f2) = (NSClass(vec![1, 0]), NSClass(vec![0, 1]));
        assert_eq!(q.intersect(&f1, &f2).unwrap(), 1);
        assert_eq!(q.intersect(&f1, &f1).unwrap(), 0);
        assert_eq!(q.intersect(&f2, &f2).unwrap(), 0);
        let a = NumericalBase::abelian_pp();
        assert_eq!(a.intersect(&NSClass(vec![1]), &NSClass(vec![1])).unwrap(), 2);
        assert!(matches!(
            p2.intersect(&NSClass(vec![1, 0]), &NSClass(vec![1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ampleness() {
        let p2 = NumericalBase::p2();
        assert!(p2.is_sufficiently_ample(&NSClass(vec![5]), &NSClass(vec![0])));
        assert!(!p2.is_sufficiently_ample(&NSClass(vec![-1]), &NSClass(vec![0])));
        let a = NumericalBase::abelian_pp();
        assert!(a.is_sufficiently_ample(&NSClass(vec![2]), &NSClass(vec![0])));
        let q = NumericalBase::p1xp1();
        assert!(!q.is_sufficiently_ample(&NSClass(vec![1, 0]), &NSClass(vec![0, 0])));
        assert!(q.is_sufficiently_ample(&NSClass(vec![1, 2]), &NSClass(vec![0, 0])));
    }

    #[test]
    fn riemann_roch_values() {
        let p2 = NumericalBase::p2();
        assert_eq!(p2.riemann_roch_h0(&NSClass(vec![2]), None), Dim::Known(6));
        assert_eq!(p2.riemann_roch_h0(&NSClass(vec![6]), None), Dim::Known(28));
        assert_eq!(p2.riemann_roch_h0(&NSClass(vec![-2]), None), Dim::Known(0));
        let a = NumericalBase::abelian_pp();
        assert_eq!(a.riemann_roch_h0(&NSClass(vec![2]), None), Dim::Known(4));
        assert_eq!(a.riemann_roch_h0(&NSClass(vec![0]), Some(&Pic0Marker(vec![0, 0]))), Dim::Known(1));
        assert_eq!(a.riemann_roch_h0(&NSClass(vec![0]), Some(&Pic0Marker(vec![1, 0]))), Dim::Known(0));
        assert_eq!(a.h1(&NSClass(vec![0]), None), Dim::Known(2));
        // neither ample enough nor negative: refuse to guess
        let q = NumericalBase::p1xp1();
        assert_eq!(q.riemann_roch_h0(&NSClass(vec![1, 0]), None), Dim::Known(2));
        let c = NumericalBase::curve_product(2, 2).unwrap();
        assert_eq!(c.riemann_roch_h0(&NSClass(vec![1, 0]), None), Dim::Unknown);
    }

    #[test]
    fn rejects_inconsistent_base() {
        let mut b = NumericalBase::p2();
        b.euler_number = 4;
        assert!(b.validate().is_err());
        let mut b = NumericalBase::p2();
        b.form = vec![vec![2]];
        b.euler_number = 6;
        // K² = 18, 12 = 18 + e → e = −6, parity: h² − h·K = 2 + 6 even; Noether fails here
        assert!(b.validate().is_err());
    }

    #[test]
    fn dim_serde() {
        assert_eq!(serde_json::to_string(&Dim::Known(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Dim::Unknown).unwrap(), "\"unknown\"");
        assert_eq!(serde_json::from_str::<Dim>("\"unknown\"").unwrap(), Dim::Unknown);
    }
}
