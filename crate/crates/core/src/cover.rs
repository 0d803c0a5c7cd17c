//! Building data of a totally ramified `(G, I)`-cover, modelled numerically:
//! branch classes `ξ_i`, reduced classes `η_j` for the dual basis, optional
//! Pic⁰ markers, and a declared intersection pattern of branch divisors.
//!
//! The reduced equations read `n_j η_j = Σ_i λ_ij ξ_i`, where `λ_ij` is the
//! `j`-th coordinate of the generator `g_i` (this equals `n_j r^i_j / m_i`).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::base::{NSClass, NumericalBase, Pic0Marker, QClass};
use crate::error::{Error, Result};
use crate::group::{Character, FinAbGroup, InertiaDatum};
use crate::rational::{frac, int};

/// Raw ingredients of a cover, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    pub group: FinAbGroup,
    pub inertia: Vec<InertiaDatum>,
    pub base: NumericalBase,
    pub branch: Vec<NSClass>,
    /// `η_j`; solved from the branch classes when absent.
    pub reduced: Option<Vec<NSClass>>,
    /// Markers of the `M_i`.
    pub branch_markers: Option<Vec<Pic0Marker>>,
    /// Markers of the `L_j`; solved from the branch markers when absent.
    pub reduced_markers: Option<Vec<Pic0Marker>>,
    pub intersection_pattern: Option<Vec<Vec<usize>>>,
}

impl CoverSpec {
    pub fn new(group: FinAbGroup, inertia: Vec<InertiaDatum>, base: NumericalBase, branch: Vec<NSClass>) -> Self {
        CoverSpec {
            group,
            inertia,
            base,
            branch,
            reduced: None,
            branch_markers: None,
            reduced_markers: None,
            intersection_pattern: None,
        }
    }
}

/// Validated cover data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverData {
    group: FinAbGroup,
    inertia: Vec<InertiaDatum>,
    base: NumericalBase,
    branch: Vec<NSClass>,
    reduced: Vec<NSClass>,
    branch_markers: Option<Vec<Pic0Marker>>,
    reduced_markers: Option<Vec<Pic0Marker>>,
    intersection_pattern: Vec<Vec<usize>>,
}

/// A pair of characters for which `η_χ + η_χ' = η_χχ' + Σ ε ξ` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub chi: Character,
    pub chi_prime: Character,
    pub lhs: NSClass,
    pub rhs: NSClass,
    pub marker_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetAudit {
    pub subset: Vec<usize>,
    pub product_of_orders: u64,
    pub generated_order: u64,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub entries: Vec<SubsetAudit>,
    pub all_injective: bool,
    /// Largest `k` such that every `k`-subset of `I` is injective.
    pub max_free_depth: usize,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionHypotheses {
    pub distinguished: usize,
    pub polarization: NSClass,
    pub multiple: i64,
    /// `K_Y − (m_d − 1)·N·H + Σ (m_i − 1)/m_i ξ_i`.
    pub m_class: QClass,
    pub m_sufficiently_ample: bool,
    /// `ξ_d − m_d·N·H`.
    pub residual_class: NSClass,
    pub residual_nonnegative: bool,
    pub residual_note: String,
    pub plausible: bool,
}

pub(crate) const GEOMETRY_NOTE: &str =
    "divisor geometry (smooth members, transversality) is a user assertion and is not verified";

/// Solves `n_j η_j = Σ_i λ_ij ξ_i` in `NS(Y)`.
pub fn solve_reduced(
    group: &FinAbGroup,
    inertia: &[InertiaDatum],
    base: &NumericalBase,
    branch: &[NSClass],
) -> Result<Vec<NSClass>> {
    if !group.surjectivity_check(inertia) {
        return Err(Error::NotTotallyRamified);
    }
    if branch.len() != inertia.len() {
        return Err(Error::InvalidCover(format!(
            "{} branch classes for {} inertia data",
            branch.len(),
            inertia.len()
        )));
    }
    for c in branch {
        base.check_class(c)?;
    }
    let rho = base.ns_rank();
    let mut out = Vec::with_capacity(group.rank());
    for (j, &n) in group.factors().iter().enumerate() {
        let mut rhs = NSClass::zero(rho);
        for (i, xi) in inertia.iter().zip(branch) {
            rhs = &rhs + &xi.scale(i.generator.coords[j]);
        }
        if rhs.0.iter().any(|x| x % n != 0) {
            let residue = rhs.0.iter().map(|x| x.rem_euclid(n)).collect();
            return Err(Error::Infeasible { j: j + 1, residue, modulus: n });
        }
        out.push(NSClass(rhs.0.iter().map(|x| x / n).collect()));
    }
    Ok(out)
}

/// Number of torsion translates of a solution of the reduced equations in
/// `Pic(Y)`: `∏ n_j^{2q}` (`None` on overflow).
pub fn torsion_candidates(group: &FinAbGroup, q: i64) -> Option<u128> {
    let mut total: u128 = 1;
    for &n in group.factors() {
        for _ in 0..2 * q {
            total = total.checked_mul(n as u128)?;
        }
    }
    Some(total)
}

fn solve_markers(group: &FinAbGroup, inertia: &[InertiaDatum], markers: &[Pic0Marker]) -> Result<Vec<Pic0Marker>> {
    let t = markers.first().map_or(0, |m| m.0.len());
    let mut out = Vec::new();
    for (j, &n) in group.factors().iter().enumerate() {
        let mut rhs = Pic0Marker::zero(t);
        for (i, mk) in inertia.iter().zip(markers) {
            rhs = &rhs + &mk.scale(i.generator.coords[j]);
        }
        if rhs.0.iter().any(|x| x % n != 0) {
            return Err(Error::InvalidCover(format!(
                "reduced marker {} is not determined: {:?} is not divisible by {n}",
                j + 1,
                rhs.0
            )));
        }
        out.push(Pic0Marker(rhs.0.iter().map(|x| x / n).collect()));
    }
    Ok(out)
}

/// Subsets of `0..k` of size `1..=depth`, in lexicographic order.
pub fn subsets_up_to(k: usize, depth: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            return;
        }
        for x in start..k {
            cur.push(x);
            out.push(cur.clone());
            rec(x + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, depth, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

impl CoverData {
    /// Validates a spec: matching lengths, distinct inertia data, total
    /// ramification, the reduced relations (solving them if needed), marker
    /// consistency, and injectivity on every declared intersection.
    pub fn from_spec(spec: CoverSpec) -> Result<Self> {
        let CoverSpec { group, inertia, base, branch, reduced, branch_markers, reduced_markers, intersection_pattern } =
            spec;
        base.validate()?;
        let mut seen = HashSet::new();
        let mut checked = Vec::with_capacity(inertia.len());
        for i in &inertia {
            let datum = group.inertia(&i.generator)?;
            if !seen.insert(datum.generator.clone()) {
                return Err(Error::InvalidCover(format!("inertia datum {} listed twice", datum.generator)));
            }
            checked.push(datum);
        }
        let inertia = checked;
        if branch.len() != inertia.len() {
            return Err(Error::InvalidCover(format!(
                "{} branch classes for {} inertia data",
                branch.len(),
                inertia.len()
            )));
        }
        for c in &branch {
            base.check_class(c)?;
        }
        if !group.surjectivity_check(&inertia) {
            return Err(Error::NotTotallyRamified);
        }

        let reduced = match reduced {
            None => solve_reduced(&group, &inertia, &base, &branch)?,
            Some(r) => {
                if r.len() != group.rank() {
                    return Err(Error::InvalidCover(format!(
                        "{} reduced classes for a group of rank {}",
                        r.len(),
                        group.rank()
                    )));
                }
                for c in &r {
                    base.check_class(c)?;
                }
                r
            }
        };

        let (branch_markers, reduced_markers) = match (branch_markers, reduced_markers) {
            (None, None) => (None, None),
            (None, Some(_)) => {
                return Err(Error::InvalidCover("reduced markers given without branch markers".into()));
            }
            (Some(bm), rm) => {
                if bm.len() != inertia.len() {
                    return Err(Error::InvalidCover("one branch marker per inertia datum is required".into()));
                }
                let rm = match rm {
                    Some(rm) => rm,
                    None => solve_markers(&group, &inertia, &bm)?,
                };
                if rm.len() != group.rank() {
                    return Err(Error::InvalidCover("one reduced marker per basis character is required".into()));
                }
                let t = bm.first().or(rm.first()).map_or(0, |m| m.0.len());
                if bm.iter().chain(&rm).any(|m| m.0.len() != t) {
                    return Err(Error::InvalidCover("markers have different lengths".into()));
                }
                (Some(bm), Some(rm))
            }
        };

        let depth = base.dim as usize;
        let pattern = match intersection_pattern {
            Some(p) => {
                let mut out = Vec::with_capacity(p.len());
                for mut s in p {
                    s.sort_unstable();
                    s.dedup();
                    if s.is_empty() || s.iter().any(|&x| x >= inertia.len()) {
                        return Err(Error::InvalidCover(format!("bad intersection pattern entry {s:?}")));
                    }
                    out.push(s);
                }
                out
            }
            None => subsets_up_to(inertia.len(), depth),
        };

        let cd = CoverData {
            group,
            inertia,
            base,
            branch,
            reduced,
            branch_markers,
            reduced_markers,
            intersection_pattern: pattern,
        };
        cd.check_reduced_relations()?;
        for s in &cd.intersection_pattern {
            if !cd.audit_subset(s).injective {
                return Err(Error::NotInjective { subset: s.clone() });
            }
        }
        Ok(cd)
    }

    /// Convenience constructor: solve the reduced equations, default pattern.
    pub fn new(group: FinAbGroup, inertia: Vec<InertiaDatum>, base: NumericalBase, branch: Vec<NSClass>) -> Result<Self> {
        CoverData::from_spec(CoverSpec::new(group, inertia, base, branch))
    }

    /// Builds cover data without any checks. Lengths are still assumed to
    /// match; queries on inconsistent data may give meaningless answers.
    pub fn new_unchecked(spec: CoverSpec) -> Self {
        let pattern = spec
            .intersection_pattern
            .unwrap_or_else(|| subsets_up_to(spec.inertia.len(), spec.base.dim as usize));
        let reduced_markers = match (&spec.branch_markers, spec.reduced_markers) {
            (Some(bm), None) => solve_markers(&spec.group, &spec.inertia, bm).ok(),
            (_, rm) => rm,
        };
        CoverData {
            reduced: spec.reduced.unwrap_or_default(),
            group: spec.group,
            inertia: spec.inertia,
            base: spec.base,
            branch: spec.branch,
            branch_markers: spec.branch_markers,
            reduced_markers,
            intersection_pattern: pattern,
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn inertia(&self) -> &[InertiaDatum] {
        &self.inertia
    }

    pub fn base(&self) -> &NumericalBase {
        &self.base
    }

    pub fn branch(&self) -> &[NSClass] {
        &self.branch
    }

    pub fn reduced(&self) -> &[NSClass] {
        &self.reduced
    }

    pub fn branch_markers(&self) -> Option<&[Pic0Marker]> {
        self.branch_markers.as_deref()
    }

    pub fn reduced_markers(&self) -> Option<&[Pic0Marker]> {
        self.reduced_markers.as_deref()
    }

    pub fn intersection_pattern(&self) -> &[Vec<usize>] {
        &self.intersection_pattern
    }

    pub fn marker_len(&self) -> Option<usize> {
        self.branch_markers.as_ref().map(|m| m.first().map_or(0, |x| x.0.len()))
    }

    fn check_reduced_relations(&self) -> Result<()> {
        for (j, &n) in self.group.factors().iter().enumerate() {
            let mut rhs = NSClass::zero(self.base.ns_rank());
            for (i, xi) in self.inertia.iter().zip(&self.branch) {
                rhs = &rhs + &xi.scale(i.generator.coords[j]);
            }
            if self.reduced[j].scale(n) != rhs {
                return Err(Error::ReducedRelation { j: j + 1, modulus: n });
            }
            if let (Some(bm), Some(rm)) = (&self.branch_markers, &self.reduced_markers) {
                let t = rm[j].0.len();
                let mut mrhs = Pic0Marker::zero(t);
                for (i, mk) in self.inertia.iter().zip(bm) {
                    mrhs = &mrhs + &mk.scale(i.generator.coords[j]);
                }
                if rm[j].scale(n) != mrhs {
                    return Err(Error::ReducedRelation { j: j + 1, modulus: n });
                }
            }
        }
        Ok(())
    }

    /// `c₁(L_χ) = Σ_j α_j η_j − Σ_i q^i_χ ξ_i`.
    pub fn derive_l_chi(&self, chi: &Character) -> NSClass {
        let mut out = NSClass::zero(self.base.ns_rank());
        for (a, eta) in chi.exponents.iter().zip(&self.reduced) {
            out = &out + &eta.scale(*a);
        }
        for (i, xi) in self.inertia.iter().zip(&self.branch) {
            out = &out - &xi.scale(self.group.q_coeff(i, chi));
        }
        out
    }

    /// Marker part of `L_χ`, when markers are present.
    pub fn derive_l_chi_marker(&self, chi: &Character) -> Option<Pic0Marker> {
        let bm = self.branch_markers.as_ref()?;
        let rm = self.reduced_markers.as_ref()?;
        let t = self.marker_len().unwrap_or(0);
        let mut out = Pic0Marker::zero(t);
        for (a, f) in chi.exponents.iter().zip(rm) {
            out = &out + &f.scale(*a);
        }
        for (i, mk) in self.inertia.iter().zip(bm) {
            out = &out - &mk.scale(self.group.q_coeff(i, chi));
        }
        Some(out)
    }

    pub fn branch_marker(&self, i: usize) -> Option<&Pic0Marker> {
        self.branch_markers.as_ref().map(|m| &m[i])
    }

    /// Checks `η_χ + η_χ' = η_χχ' + Σ_i ε^i_{χ,χ'} ξ_i` (and the same for
    /// markers) over all ordered pairs; returns the first violation.
    pub fn check_fundamental_relations(&self) -> std::result::Result<(), RelationViolation> {
        let chars = self.group.characters();
        let etas: Vec<NSClass> = chars.iter().map(|c| self.derive_l_chi(c)).collect();
        let marks: Vec<Option<Pic0Marker>> = chars.iter().map(|c| self.derive_l_chi_marker(c)).collect();
        let index = |c: &Character| -> usize {
            // mixed radix, first coordinate fastest
            let mut idx = 0usize;
            let mut mult = 1usize;
            for (a, d) in c.exponents.iter().zip(self.group.factors()) {
                idx += *a as usize * mult;
                mult *= *d as usize;
            }
            idx
        };
        for (a, ca) in chars.iter().enumerate() {
            for (b, cb) in chars.iter().enumerate() {
                let prod = index(&self.group.char_mul(ca, cb));
                let lhs = &etas[a] + &etas[b];
                let mut rhs = etas[prod].clone();
                let mut mrhs = marks[prod].clone();
                for (k, i) in self.inertia.iter().enumerate() {
                    let e = self.group.eps_coeff(i, ca, cb);
                    rhs = &rhs + &self.branch[k].scale(e);
                    if let (Some(m), Some(bm)) = (mrhs.as_mut(), self.branch_markers.as_ref()) {
                        *m = &*m + &bm[k].scale(e);
                    }
                }
                let marker_ok = match (&marks[a], &marks[b], &mrhs) {
                    (Some(x), Some(y), Some(z)) => &(x + y) == z,
                    _ => true,
                };
                if lhs != rhs || !marker_ok {
                    return Err(RelationViolation {
                        chi: ca.clone(),
                        chi_prime: cb.clone(),
                        marker_only: lhs == rhs,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn audit_subset(&self, subset: &[usize]) -> SubsetAudit {
        let data: Vec<&InertiaDatum> = subset.iter().map(|&k| &self.inertia[k]).collect();
        let product: u64 = data.iter().map(|i| i.order as u64).product();
        let gens: Vec<_> = data.iter().map(|i| &i.generator).collect();
        let generated = self.group.subgroup_order(&gens);
        SubsetAudit {
            subset: subset.to_vec(),
            product_of_orders: product,
            generated_order: generated,
            injective: product == generated,
        }
    }

    pub fn smoothness_audit(&self) -> SmoothnessReport {
        let entries: Vec<SubsetAudit> = self.intersection_pattern.iter().map(|s| self.audit_subset(s)).collect();
        let all_injective = entries.iter().all(|e| e.injective);
        let k = self.inertia.len();
        let mut depth = 0;
        if k <= 16 {
            'outer: for size in 1..=k {
                for s in subsets_up_to(k, size).into_iter().filter(|s| s.len() == size) {
                    if !self.audit_subset(&s).injective {
                        break 'outer;
                    }
                }
                depth = size;
            }
        }
        SmoothnessReport { entries, all_injective, max_free_depth: depth, note: GEOMETRY_NOTE.into() }
    }

    /// Numerical extension hypotheses for a
    /// distinguished branch index `d`, polarization `H` and multiple `N`.
    pub fn extension_hypotheses(&self, polarization: &NSClass, multiple: i64, distinguished: usize) -> Result<ExtensionHypotheses> {
        self.base.check_class(polarization)?;
        if distinguished >= self.inertia.len() {
            return Err(Error::InvalidCover(format!("no branch index {distinguished}")));
        }
        let md = self.inertia[distinguished].order;
        let mut m = &self.base.canonical.to_q() - &polarization.to_q().scale(int((md - 1) * multiple));
        for (i, xi) in self.inertia.iter().zip(&self.branch) {
            m = &m + &xi.to_q().scale(frac(i.order - 1, i.order));
        }
        let m_ok = self.base.is_sufficiently_ample_q(&m, &QClass::zero(self.base.ns_rank()));
        let residual = &self.branch[distinguished] - &polarization.scale(md * multiple);
        let residual_ok = self.base.is_oracle_nonnegative(&residual);
        Ok(ExtensionHypotheses {
            distinguished,
            polarization: polarization.clone(),
            multiple,
            m_class: m,
            m_sufficiently_ample: m_ok,
            residual_class: residual,
            residual_nonnegative: residual_ok,
            residual_note: "base-point-freeness replaced by nonnegativity against the test classes: necessary, not sufficient"
                .into(),
            plausible: m_ok && residual_ok,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bidouble(xi: [i64; 3]) -> Result<CoverData> {
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        let inertia = vec![
            g.inertia_from(&[1, 0]).unwrap(),
            g.inertia_from(&[0, 1]).unwrap(),
            g.inertia_from(&[1, 1]).unwrap(),
        ];
        CoverData::new(g, inertia, NumericalBase::p2(), xi.iter().map(|&x| NSClass(vec![x])).collect())
    }

    #[test]
    fn bidouble_reduced_solution() {
        let cd = bidouble([2, 2, 2]).unwrap();
        assert_eq!(cd.reduced(), &[NSClass(vec![2]), NSClass(vec![2])]);
        let chi = cd.group().character(&[1, 1]).unwrap();
        assert_eq!(cd.derive_l_chi(&chi), NSClass(vec![2]));
        assert_eq!(cd.derive_l_chi(&cd.group().trivial_character()), NSClass(vec![0]));
        assert!(cd.check_fundamental_relations().is_ok());
    }

    #[test]
    fn parity_obstruction() {
        assert_eq!(
            bidouble([1, 2, 2]).unwrap_err(),
            Error::Infeasible { j: 1, residue: vec![1], modulus: 2 }
        );
    }

    #[test]
    fn simple_cyclic() {
        let g = FinAbGroup::cyclic(5).unwrap();
        let i = g.inertia_from(&[1]).unwrap();
        let cd = CoverData::new(g, vec![i], NumericalBase::p2(), vec![NSClass(vec![15])]).unwrap();
        assert_eq!(cd.reduced(), &[NSClass(vec![3])]);
    }

    #[test]
    fn corrupted_reduced_class_is_detected() {
        let good = bidouble([2, 2, 2]).unwrap();
        let mut spec = CoverSpec::new(
            good.group().clone(),
            good.inertia().to_vec(),
            good.base().clone(),
            good.branch().to_vec(),
        );
        spec.reduced = Some(vec![NSClass(vec![3]), NSClass(vec![2])]);
        assert!(matches!(CoverData::from_spec(spec.clone()), Err(Error::ReducedRelation { j: 1, .. })));
        let bad = CoverData::new_unchecked(spec);
        let v = bad.check_fundamental_relations().unwrap_err();
        let x1 = bad.group().dual_basis(0);
        assert_eq!((v.chi, v.chi_prime), (x1.clone(), x1));
    }

    #[test]
    fn smoothness() {
        let cd = bidouble([2, 2, 2]).unwrap();
        let a = cd.audit_subset(&[0, 2]);
        assert!(a.injective);
        assert_eq!((a.product_of_orders, a.generated_order), (4, 4));
        let t = cd.audit_subset(&[0, 1, 2]);
        assert!(!t.injective);
        assert_eq!(t.product_of_orders, 8);
        let r = cd.smoothness_audit();
        assert!(r.all_injective);
        assert_eq!(r.max_free_depth, 2);
        for i in 0..3 {
            assert!(cd.audit_subset(&[i]).injective);
        }
        let g = cd.group().clone();
        let mut spec = CoverSpec::new(g, cd.inertia().to_vec(), NumericalBase::p2(), cd.branch().to_vec());
        spec.intersection_pattern = Some(vec![vec![0, 1, 2]]);
        assert_eq!(CoverData::from_spec(spec).unwrap_err(), Error::NotInjective { subset: vec![0, 1, 2] });
    }

    #[test]
    fn not_totally_ramified() {
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        let i = g.inertia_from(&[1, 0]).unwrap();
        assert_eq!(
            CoverData::new(g, vec![i], NumericalBase::p2(), vec![NSClass(vec![2])]).unwrap_err(),
            Error::NotTotallyRamified
        );
    }

    #[test]
    fn extension_hypotheses_examples() {
        let h = NSClass(vec![1]);
        let cd = bidouble([8, 8, 8]).unwrap();
        let r = cd.extension_hypotheses(&h, 3, 0).unwrap();
        assert_eq!(r.residual_class, NSClass(vec![2]));
        assert_eq!(r.m_class, NSClass(vec![6]).to_q());
        assert!(r.plausible);

        let r0 = cd.extension_hypotheses(&h, 0, 0).unwrap();
        assert!(r0.residual_nonnegative);
        assert_eq!(r0.m_class, NSClass(vec![9]).to_q());

        let small = bidouble([2, 2, 2]).unwrap();
        let r = small.extension_hypotheses(&h, 0, 0).unwrap();
        assert!(r.m_class.is_zero());
        assert!(!r.m_sufficiently_ample);
        assert!(!r.plausible);
    }

    #[test]
    fn markers_follow_reduced_equations() {
        let g = FinAbGroup::cyclic(2).unwrap();
        let i = g.inertia_from(&[1]).unwrap();
        let mut spec = CoverSpec::new(g, vec![i], NumericalBase::abelian_pp(), vec![NSClass(vec![2])]);
        spec.branch_markers = Some(vec![Pic0Marker(vec![2, 0])]);
        let cd = CoverData::from_spec(spec.clone()).unwrap();
        assert_eq!(cd.reduced_markers().unwrap(), &[Pic0Marker(vec![1, 0])]);
        assert!(cd.check_fundamental_relations().is_ok());
        spec.branch_markers = Some(vec![Pic0Marker(vec![1, 0])]);
        assert!(CoverData::from_spec(spec).is_err());
    }

    #[test]
    fn torsion_count() {
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        assert_eq!(torsion_candidates(&g, 0), Some(1));
        assert_eq!(torsion_candidates(&g, 2), Some(256));
    }

    #[test]
    fn default_pattern() {
        assert_eq!(subsets_up_to(3, 2), vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
