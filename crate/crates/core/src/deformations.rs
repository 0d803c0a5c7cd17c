//! Character decomposition of natural deformations: the index set `S`, the
//! tangent and obstruction tables, the subgroup of `G` that extends to
//! generic natural deformations, `C*`-weights and moduli dimension counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::base::{Dim, NSClass, Pic0Marker};
use crate::cover::CoverData;
use crate::error::{Error, Result};
use crate::group::{Character, FinAbGroup, InertiaDatum, Subgroup};

/// One element `(i, χ)` of `S`, with `i` an index into the inertia list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SIndex {
    pub i: usize,
    pub chi: Character,
}

/// User-supplied dimensions of `H^l(T_Y(−log Σ D_i))`, `l = 1, 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDims {
    pub h1: Dim,
    pub h2: Dim,
}

impl Default for InvariantDims {
    fn default() -> Self {
        InvariantDims { h1: Dim::Unknown, h2: Dim::Unknown }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub i: usize,
    /// `ξ_i − c₁(L_χ)`.
    pub class: NSClass,
    pub marker: Option<Pic0Marker>,
    pub h0: Dim,
    pub h1: Dim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub character: Character,
    pub l_class: NSClass,
    pub l_marker: Option<Pic0Marker>,
    pub summands: Vec<Summand>,
    /// Sum of the `h⁰` of the summands: natural deformation parameters.
    pub natural: Dim,
    /// `T¹_χ`; for the trivial character the invariant part.
    pub tangent: Dim,
    /// Lower bound for `H²(T_X)^χ`; for the trivial character the
    /// invariant part.
    pub obstruction_lower: Dim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationReport {
    pub s: Vec<SIndex>,
    pub rows: Vec<CharacterRow>,
    pub invariant: InvariantDims,
    pub natural_deformation_dim: Dim,
    pub complete: bool,
    pub assumptions: Vec<String>,
    pub unknown_characters: Vec<Character>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub j: usize,
    pub chi: Character,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CstarWeights {
    pub rows: Vec<WeightRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub subgroup: Subgroup,
    /// Nontrivial characters with a nonzero tangent summand.
    pub moving_characters: Vec<Character>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDimension {
    pub irregularity_part: i64,
    pub linear_system_part: Dim,
    pub aut_dim: Option<i64>,
    pub total: Dim,
}

/// `S = {(i, χ) : r^i_χ ≠ m_i − 1}`, ordered by `i` then by character.
pub fn compute_s(group: &FinAbGroup, inertia: &[InertiaDatum]) -> Vec<SIndex> {
    let chars = group.characters();
    let mut out = Vec::new();
    for (k, i) in inertia.iter().enumerate() {
        for chi in &chars {
            if group.r_coeff(i, chi) != i.order - 1 {
                out.push(SIndex { i: k, chi: chi.clone() });
            }
        }
    }
    out
}

/// `S_χ`.
pub fn s_chi(group: &FinAbGroup, inertia: &[InertiaDatum], chi: &Character) -> Vec<usize> {
    inertia
        .iter()
        .enumerate()
        .filter(|(_, i)| group.r_coeff(i, chi) != i.order - 1)
        .map(|(k, _)| k)
        .collect()
}

fn summand(cd: &CoverData, i: usize, l_class: &NSClass, l_marker: Option<&Pic0Marker>) -> Summand {
    let class = &cd.branch()[i] - l_class;
    let marker = match (cd.branch_marker(i), l_marker) {
        (Some(m), Some(l)) => Some(m - l),
        _ => None,
    };
    let base = cd.base();
    Summand {
        i,
        h0: base.riemann_roch_h0(&class, marker.as_ref()),
        h1: base.h1(&class, marker.as_ref()),
        class,
        marker,
    }
}

fn sum_dims(it: impl Iterator<Item = Dim>) -> Dim {
    it.fold(Dim::Known(0), Dim::plus)
}

/// The per-character table of natural deformations, computed in parallel
/// over `G*`.
pub fn tangent_table(cd: &CoverData, invariant: InvariantDims) -> DeformationReport {
    let g = cd.group();
    let chars = g.characters();
    let rows: Vec<CharacterRow> = chars
        .par_iter()
        .map(|chi| {
            let l_class = cd.derive_l_chi(chi);
            let l_marker = cd.derive_l_chi_marker(chi);
            let summands: Vec<Summand> = s_chi(g, cd.inertia(), chi)
                .into_iter()
                .map(|i| summand(cd, i, &l_class, l_marker.as_ref()))
                .collect();
            let natural = sum_dims(summands.iter().map(|s| s.h0));
            let (tangent, obstruction_lower) = if chi.is_trivial() {
                (invariant.h1, invariant.h2)
            } else {
                (natural, sum_dims(summands.iter().map(|s| s.h1)))
            };
            CharacterRow { character: chi.clone(), l_class, l_marker, summands, natural, tangent, obstruction_lower }
        })
        .collect();

    let base = cd.base();
    let complete = rows
        .iter()
        .filter(|r| !r.character.is_trivial())
        .all(|r| base.is_sufficiently_ample(&r.l_class, &base.zero_class()));
    let unknown_characters = rows
        .iter()
        .filter(|r| !r.character.is_trivial() && r.tangent.is_unknown())
        .map(|r| r.character.clone())
        .collect();
    let natural_deformation_dim = sum_dims(rows.iter().map(|r| r.natural));
    DeformationReport {
        s: compute_s(g, cd.inertia()),
        rows,
        invariant,
        natural_deformation_dim,
        complete,
        assumptions: vec![
            "higher cohomology vanishes for classes passing the sufficiency test".into(),
            "Ω¹_Y ⊗ L_χ is ample whenever L_χ is (not checked)".into(),
            "obstruction entries are lower bounds for H²(T_X)^χ".into(),
            "invariant-part dimensions are user supplied".into(),
        ],
        unknown_characters,
    }
}

/// Elements acting trivially on every nonzero non-Galois tangent summand:
/// the part of `G` that extends to a generic natural deformation. This is
/// not a claim about the full automorphism group of a generic member.
pub fn predict_generic_automorphisms(cd: &CoverData, report: &DeformationReport) -> Result<Prediction> {
    if !report.unknown_characters.is_empty() {
        return Err(Error::UnknownDims(report.unknown_characters.iter().map(|c| c.exponents.clone()).collect()));
    }
    let moving: Vec<Character> = report
        .rows
        .iter()
        .filter(|r| !r.character.is_trivial() && r.tangent.known().unwrap_or(0) > 0)
        .map(|r| r.character.clone())
        .collect();
    let refs: Vec<&Character> = moving.iter().collect();
    Ok(Prediction {
        subgroup: cd.group().kernel(&refs),
        moving_characters: moving,
        note: "subgroup of G extending to generic natural deformations; extra automorphisms are not excluded".into(),
    })
}

/// Exponents `δ_ij m_i − r^i_χ` of the torus action on `s_{j,χ}`.
pub fn cstar_weights(cd: &CoverData) -> CstarWeights {
    let g = cd.group();
    let rows = compute_s(g, cd.inertia())
        .into_iter()
        .map(|SIndex { i: j, chi }| {
            let exponents = cd
                .inertia()
                .iter()
                .enumerate()
                .map(|(k, i)| if k == j { i.order } else { 0 } - g.r_coeff(i, &chi))
                .collect();
            WeightRow { j, chi, exponents }
        })
        .collect();
    CstarWeights { rows }
}

/// `q·#I + Σ_i (h⁰(ξ_i) − 1)`, minus `aut_dim` when given.
pub fn moduli_dimension(cd: &CoverData, aut_dim: Option<i64>) -> ModuliDimension {
    let base = cd.base();
    let irregularity_part = base.q * cd.inertia().len() as i64;
    let linear_system_part = sum_dims(cd.branch().iter().map(|xi| match base.riemann_roch_h0(xi, None) {
        Dim::Known(h) if base.is_sufficiently_ample(xi, &base.canonical) => Dim::Known(h - 1),
        _ => Dim::Unknown,
    }));
    let total = Dim::Known(irregularity_part - aut_dim.unwrap_or(0)).plus(linear_system_part);
    ModuliDimension { irregularity_part, linear_system_part, aut_dim, total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::NumericalBase;

    fn cyclic(m: i64, xi: i64) -> CoverData {
        let g = FinAbGroup::cyclic(m).unwrap();
        let i = g.inertia_from(&[1]).unwrap();
        CoverData::new(g, vec![i], NumericalBase::p2(), vec![NSClass(vec![xi])]).unwrap()
    }

    fn bidouble(xi: i64) -> CoverData {
        let g = FinAbGroup::new(vec![2, 2]).unwrap();
        let inertia = [[1, 0], [0, 1], [1, 1]].iter().map(|c| g.inertia_from(c).unwrap()).collect();
        CoverData::new(g, inertia, NumericalBase::p2(), vec![NSClass(vec![xi]); 3]).unwrap()
    }

    #[test]
    fn s_sets() {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let s = compute_s(&z2, &[z2.inertia_from(&[1]).unwrap()]);
        assert_eq!(s, vec![SIndex { i: 0, chi: z2.trivial_character() }]);
        for m in 2..8 {
            let g = FinAbGroup::cyclic(m).unwrap();
            assert_eq!(compute_s(&g, &[g.inertia_from(&[1]).unwrap()]).len() as i64, m - 1);
        }
        let b = bidouble(2);
        let s = compute_s(b.group(), b.inertia());
        assert_eq!(s.len(), 6);
        for i in 0..3 {
            assert_eq!(s.iter().filter(|x| x.i == i).count(), 2);
        }
    }

    #[test]
    fn cyclic_three_table() {
        let cd = cyclic(3, 6);
        let r = tangent_table(&cd, InvariantDims::default());
        assert_eq!(r.natural_deformation_dim, Dim::Known(43));
        assert_eq!(r.rows[1].tangent, Dim::Known(15));
        let p = predict_generic_automorphisms(&cd, &r).unwrap();
        assert_eq!(p.subgroup.order(), 1);
    }

    #[test]
    fn double_cover_keeps_group() {
        let cd = cyclic(2, 8);
        let r = tangent_table(&cd, InvariantDims::default());
        let p = predict_generic_automorphisms(&cd, &r).unwrap();
        assert_eq!(p.subgroup.order(), 2);
    }

    #[test]
    fn weights() {
        let cd = bidouble(4);
        let w = cstar_weights(&cd);
        let x2 = cd.group().dual_basis(1);
        let row = w.rows.iter().find(|r| r.j == 0 && r.chi == x2).unwrap();
        assert_eq!(row.exponents, vec![2, -1, -1]);
        for r in w.rows.iter().filter(|r| r.chi.is_trivial()) {
            let mut unit = vec![0; 3];
            unit[r.j] = 2;
            assert_eq!(r.exponents, unit);
        }
        let c = cyclic(5, 10);
        for r in cstar_weights(&c).rows {
            assert_eq!(r.exponents, vec![5 - r.chi.exponents[0]]);
        }
    }

    #[test]
    fn moduli_dims() {
        assert_eq!(moduli_dimension(&bidouble(2), None).total, Dim::Known(15));
        let g = FinAbGroup::trivial();
        let cd = CoverData::new(g, vec![], NumericalBase::p2(), vec![]).unwrap();
        assert_eq!(moduli_dimension(&cd, None).total, Dim::Known(0));
        let ab = CoverData::new(
            FinAbGroup::new(vec![2, 2]).unwrap(),
            [[1, 0], [0, 1], [1, 1]].iter().map(|c| FinAbGroup::new(vec![2, 2]).unwrap().inertia_from(c).unwrap()).collect(),
            NumericalBase::abelian_pp(),
            vec![NSClass(vec![2]); 3],
        )
        .unwrap();
        // h⁰(2Θ) = 4 on each
        assert_eq!(moduli_dimension(&ab, None).total, Dim::Known(6 + 9));
    }

    #[test]
    fn unknown_entries_block_prediction() {
        let g = FinAbGroup::cyclic(3).unwrap();
        let i = g.inertia_from(&[1]).unwrap();
        let base = NumericalBase::curve_product(2, 2).unwrap();
        let cd = CoverData::new(g, vec![i], base, vec![NSClass(vec![3, 3])]).unwrap();
        let r = tangent_table(&cd, InvariantDims::default());
        assert!(!r.unknown_characters.is_empty());
        assert!(matches!(predict_generic_automorphisms(&cd, &r), Err(Error::UnknownDims(_))));
    }
}
