//! The cyclic-chain family: `G = Z_{d_1} × … × Z_{d_s}`, branch data
//! `e_0 = −(e_1 + … + e_s), e_1, …, e_s`, all branch classes equal to one
//! class `ξ`, and Pic⁰ markers `F_j` with `L_j = M_0 ⊗ F_j`,
//! `M_j = M_0 ⊗ F_j^{d_j}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base::{NSClass, NumericalBase, Pic0Marker};
use crate::cover::{CoverData, CoverSpec};
use crate::deformations::{predict_generic_automorphisms, s_chi, tangent_table, InvariantDims};
use crate::error::{Error, Result};
use crate::group::{Character, FinAbGroup, GroupElement, InertiaDatum, Subgroup};
use crate::invariants::{construction62_chern, cover_invariants};
use crate::rational::{self, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C62Params {
    d: Vec<i64>,
    group: FinAbGroup,
}

/// How the Pic⁰ markers of a component are chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarkerLocus {
    /// `F_1, …, F_k` independent, the rest zero.
    Generic { k: usize },
    /// `F_1, …, F_{s−1}` independent, `F_s = 2 F_1`.
    Repaired,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallbackCheck {
    pub character: Character,
    pub n_chi: i64,
    pub in_s: bool,
    /// Marker of `M_0 ⊗ L_χ^{-1}` on the generic locus.
    pub marker: Pic0Marker,
    pub trivial: bool,
    /// Predicted subgroup on the generic locus, where this character was
    /// meant to move.
    pub generic_locus_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRow {
    pub k: usize,
    pub locus: MarkerLocus,
    pub description: String,
    pub predicted: Subgroup,
    /// Invariant factors of `Z_{d_1} × … × Z_{d_k}`.
    pub expected_factors: Vec<i64>,
    pub matches_expected: bool,
    pub fallback: Option<FallbackCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop66Report {
    pub n: i64,
    pub predicted_order: usize,
    #[serde(with = "rational::as_str")]
    pub k2_printed: Rational,
    #[serde(with = "rational::as_str")]
    pub k2_pullback: Rational,
    #[serde(with = "rational::as_str")]
    pub k2_quoted: Rational,
    #[serde(with = "rational::as_str")]
    pub c2_printed: Rational,
    #[serde(with = "rational::as_str")]
    pub euler_stratified: Rational,
    pub exceeds_printed: bool,
    pub exceeds_pullback: bool,
    pub exceeds_quoted: bool,
    pub note: String,
}

impl C62Params {
    /// Chain `d_1 | … | d_s` with `s ≥ 2`.
    pub fn new(d: Vec<i64>) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::InvalidConfig("the chain needs at least two factors".into()));
        }
        let group = FinAbGroup::new(d.clone())?;
        Ok(C62Params { d, group })
    }

    pub fn s(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn d0(&self) -> i64 {
        *self.d.last().unwrap()
    }

    /// `b_j = d_0 / d_j`.
    pub fn b(&self) -> Vec<i64> {
        self.d.iter().map(|x| self.d0() / x).collect()
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// `e_0, e_1, …, e_s`.
    pub fn inertia(&self) -> Vec<InertiaDatum> {
        let g = &self.group;
        let e0 = g.reduce(&vec![-1; self.s()]);
        std::iter::once(e0)
            .chain((0..self.s()).map(|j| g.basis(j)))
            .map(|x| g.inertia(&x).expect("nonzero generator"))
            .collect()
    }

    /// The `(s + 1) × s` table `r^i_j` from the closed form.
    pub fn r_table(&self) -> Vec<Vec<i64>> {
        let b = self.b();
        let mut rows = vec![self.d.iter().zip(&b).map(|(d, b)| b * (d - 1)).collect()];
        for i in 0..self.s() {
            rows.push((0..self.s()).map(|j| i64::from(i == j)).collect());
        }
        rows
    }

    /// `N_χ = ⌈Σ α_j b_j / d_0⌉`.
    pub fn n_chi(&self, chi: &Character) -> i64 {
        let total: i64 = chi.exponents.iter().zip(self.b()).map(|(a, b)| a * b).sum();
        (total + self.d0() - 1).div_euclid(self.d0())
    }

    /// Markers for a locus, with `t = s` formal symbols.
    pub fn markers(&self, locus: &MarkerLocus) -> Vec<Pic0Marker> {
        let s = self.s();
        match locus {
            MarkerLocus::Generic { k } => {
                (0..s).map(|j| if j < *k { Pic0Marker::unit(s, j) } else { Pic0Marker::zero(s) }).collect()
            }
            MarkerLocus::Repaired => (0..s)
                .map(|j| if j + 1 < s { Pic0Marker::unit(s, j) } else { Pic0Marker::unit(s, 0).scale(2) })
                .collect(),
        }
    }

    /// Cover data with `ξ_i = ξ`, `η_j = ξ`, markers `M_0 = 0`,
    /// `M_j = d_j F_j`, `L_j = F_j`.
    pub fn build_cover(&self, base: &NumericalBase, xi: &NSClass, f: &[Pic0Marker]) -> Result<CoverData> {
        base.check_class(xi)?;
        if !base.is_sufficiently_ample(xi, &base.zero_class()) {
            return Err(Error::Hypothesis(format!("ξ = {xi} is not sufficiently ample")));
        }
        if f.len() != self.s() {
            return Err(Error::InvalidConfig(format!("{} markers for s = {}", f.len(), self.s())));
        }
        let t = f.first().map_or(0, |m| m.0.len());
        let mut branch_markers = vec![Pic0Marker::zero(t)];
        branch_markers.extend(f.iter().zip(&self.d).map(|(m, d)| m.scale(*d)));
        let inertia = self.inertia();
        let mut spec = CoverSpec::new(self.group.clone(), inertia, base.clone(), vec![xi.clone(); self.s() + 1]);
        spec.reduced = Some(vec![xi.clone(); self.s()]);
        spec.branch_markers = Some(branch_markers);
        spec.reduced_markers = Some(f.to_vec());
        CoverData::from_spec(spec).map_err(|e| match e {
            Error::NotInjective { subset } => Error::Hypothesis(format!(
                "branch divisors {subset:?} must meet but their inertia groups intersect: \
                 the cover is singular unless d_(s-1) = d_s"
            )),
            other => other,
        })
    }

    fn g_k(&self, k: usize) -> Subgroup {
        let elems: Vec<GroupElement> =
            self.group.elements().into_iter().filter(|g| g.coords[k..].iter().all(|&c| c == 0)).collect();
        self.group.subgroup_from_elements(elems)
    }

    fn predicted(&self, base: &NumericalBase, xi: &NSClass, locus: &MarkerLocus) -> Result<Subgroup> {
        let cd = self.build_cover(base, xi, &self.markers(locus))?;
        let report = tangent_table(&cd, InvariantDims::default());
        Ok(predict_generic_automorphisms(&cd, &report)?.subgroup)
    }

    /// Predicted generic automorphism group on each marker locus
    /// `k = 0, …, s`. When `d_0 = 2` and `k = s − 1`, the generic locus
    /// leaves every character of `e_s` without a moving summand; the row then
    /// uses the locus `F_s = 2F_1` and records the evaluation of `χ_1 χ_s`.
    pub fn classify_components(&self, base: &NumericalBase, xi: &NSClass) -> Result<Vec<ComponentRow>> {
        if base.q < 1 {
            return Err(Error::Hypothesis("the base must have positive irregularity".into()));
        }
        let s = self.s();
        (0..=s)
            .into_par_iter()
            .map(|k| {
                let special = self.d0() == 2 && k + 1 == s;
                let locus = if special { MarkerLocus::Repaired } else { MarkerLocus::Generic { k } };
                let predicted = self.predicted(base, xi, &locus)?;
                let fallback = if special { Some(self.fallback_check(base, xi, k)?) } else { None };
                let expected = self.g_k(k);
                let description = match &locus {
                    MarkerLocus::Generic { k } => {
                        if *k == 0 {
                            "all F_j = 0".to_string()
                        } else if *k == 1 {
                            "F_1 generic, F_j = 0 for j > 1".to_string()
                        } else {
                            format!("F_1..F_{k} generic, F_j = 0 for j > {k}")
                        }
                    }
                    MarkerLocus::Repaired => format!("F_1..F_{} generic, F_{s} = 2·F_1", s - 1),
                };
                Ok(ComponentRow {
                    k,
                    locus,
                    description,
                    matches_expected: predicted.elements == expected.elements,
                    expected_factors: expected.invariant_factors,
                    predicted,
                    fallback,
                })
            })
            .collect()
    }

    fn fallback_check(&self, base: &NumericalBase, xi: &NSClass, k: usize) -> Result<FallbackCheck> {
        let g = &self.group;
        let mut a = vec![0; self.s()];
        a[0] = 1;
        a[self.s() - 1] += 1;
        let chi = g.reduce(&a);
        let chi = Character { exponents: chi.coords };
        let locus = MarkerLocus::Generic { k };
        let cd = self.build_cover(base, xi, &self.markers(&locus))?;
        let l_marker = cd.derive_l_chi_marker(&chi).expect("markers present");
        let marker = cd.branch_marker(0).expect("markers present") - &l_marker;
        let in_s = s_chi(g, cd.inertia(), &chi).contains(&0);
        let report = tangent_table(&cd, InvariantDims::default());
        let generic = predict_generic_automorphisms(&cd, &report)?.subgroup;
        Ok(FallbackCheck {
            n_chi: self.n_chi(&chi),
            in_s,
            trivial: marker.is_zero(),
            marker,
            character: chi,
            generic_locus_order: generic.order(),
        })
    }
}

/// The abelian-surface family with `d = (n, n)` and `ξ = 2Θ`.
pub fn prop66_report(n: i64) -> Result<Prop66Report> {
    if n < 2 {
        return Err(Error::InvalidConfig("n must be at least 2".into()));
    }
    let p = C62Params::new(vec![n, n])?;
    let base = NumericalBase::abelian_pp();
    let xi = NSClass(vec![2]);
    let cd = p.build_cover(&base, &xi, &p.markers(&MarkerLocus::Generic { k: 2 }))?;
    let report = tangent_table(&cd, InvariantDims::default());
    let predicted_order = predict_generic_automorphisms(&cd, &report)?.subgroup.order();
    let printed = construction62_chern(p.d(), &base, &xi)?;
    let inv = cover_invariants(&cd)?;
    let quoted = int(16 * (n - 1) * (n - 1));
    let ord = int(predicted_order as i64);
    let exceeds = |k2: Rational| ord > k2 / int(16);
    Ok(Prop66Report {
        n,
        predicted_order,
        k2_printed: printed.k_squared,
        k2_pullback: inv.k_squared,
        k2_quoted: quoted,
        c2_printed: printed.c2,
        euler_stratified: inv.euler_number,
        exceeds_printed: exceeds(printed.k_squared),
        exceeds_pullback: exceeds(inv.k_squared),
        exceeds_quoted: exceeds(quoted),
        note: "K² variants are reported side by side; only the quoted value enters the inequality check".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_table_matches_group() {
        for d in [vec![2, 2], vec![3, 3], vec![2, 4], vec![2, 2, 4], vec![3, 6, 6]] {
            let p = C62Params::new(d).unwrap();
            let g = p.group();
            let computed: Vec<Vec<i64>> = g.r_matrix(&p.inertia());
            assert_eq!(computed, p.r_table());
            for (i, datum) in p.inertia().iter().enumerate() {
                let expect = if i == 0 { p.d0() } else { p.d()[i - 1] };
                assert_eq!(datum.order, expect);
            }
        }
    }

    #[test]
    fn n_chi_values() {
        let p = C62Params::new(vec![3, 3]).unwrap();
        let g = p.group();
        assert_eq!(p.n_chi(&g.trivial_character()), 0);
        assert_eq!(p.n_chi(&g.character(&[1, 1]).unwrap()), 1);
        assert_eq!(p.n_chi(&g.character(&[2, 2]).unwrap()), 2);
    }

    #[test]
    fn q_coefficient_of_e0() {
        let p = C62Params::new(vec![2, 2]).unwrap();
        let g = p.group();
        assert_eq!(g.q_coeff(&p.inertia()[0], &g.character(&[1, 1]).unwrap()), 1);
    }

    #[test]
    fn build_cover_reproduces_l_chi() {
        let p = C62Params::new(vec![3, 3]).unwrap();
        let base = NumericalBase::abelian_pp();
        let xi = NSClass(vec![2]);
        let f = p.markers(&MarkerLocus::Generic { k: 2 });
        let cd = p.build_cover(&base, &xi, &f).unwrap();
        assert!(cd.check_fundamental_relations().is_ok());
        for chi in p.group().characters() {
            assert_eq!(cd.derive_l_chi(&chi), xi.scale(p.n_chi(&chi)));
            let mut expect = Pic0Marker::zero(2);
            for (a, fj) in chi.exponents.iter().zip(&f) {
                expect = &expect + &fj.scale(*a);
            }
            assert_eq!(cd.derive_l_chi_marker(&chi).unwrap(), expect);
        }
    }

    #[test]
    fn unequal_top_factors_are_singular() {
        let p = C62Params::new(vec![2, 4]).unwrap();
        let f = p.markers(&MarkerLocus::Generic { k: 0 });
        let err = p.build_cover(&NumericalBase::abelian_pp(), &NSClass(vec![2]), &f).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn components_three_three() {
        let p = C62Params::new(vec![3, 3]).unwrap();
        let rows = p.classify_components(&NumericalBase::abelian_pp(), &NSClass(vec![2])).unwrap();
        let orders: Vec<usize> = rows.iter().map(|r| r.predicted.order()).collect();
        assert_eq!(orders, vec![1, 3, 9]);
        assert!(rows.iter().all(|r| r.matches_expected));
    }

    #[test]
    fn components_two_two_use_repair() {
        let p = C62Params::new(vec![2, 2]).unwrap();
        let rows = p.classify_components(&NumericalBase::abelian_pp(), &NSClass(vec![2])).unwrap();
        let orders: Vec<usize> = rows.iter().map(|r| r.predicted.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        let fb = rows[1].fallback.as_ref().unwrap();
        assert_eq!(fb.n_chi, 1);
        assert!(fb.in_s);
        assert!(!fb.trivial);
        assert_eq!(fb.generic_locus_order, 4);
        assert!(rows.iter().all(|r| r.matches_expected));
    }

    #[test]
    fn q_zero_rejected() {
        let p = C62Params::new(vec![2, 2]).unwrap();
        assert!(matches!(p.classify_components(&NumericalBase::p2(), &NSClass(vec![4])), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn prop66_small() {
        let r = prop66_report(2).unwrap();
        assert_eq!(r.predicted_order, 4);
        assert_eq!(r.k2_quoted, int(16));
        assert!(r.exceeds_quoted);
        assert_eq!(r.k2_printed, int(8));
        assert_eq!(r.k2_pullback, int(72));
    }
}
