//! Numerical invariants of the cover: canonical class, `K²`, Euler number by
//! stratification, `χ(O_X)`, the printed Chern formulas of the cyclic-chain
//! family, and the Hurwitz formula for curves.

use serde::{Deserialize, Serialize};

use crate::base::{NSClass, NumericalBase, QClass};
use crate::cover::CoverData;
use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupElement, InertiaDatum};
use crate::rational::{self, frac, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalData {
    /// `K_Y + Σ (1 − 1/m_i) ξ_i`.
    pub pullback_class: QClass,
    /// `#G` times the pullback class; always integral.
    pub class_times_order: NSClass,
    /// `#G · (pullback class)²` on surfaces.
    #[serde(with = "rational::opt_as_str")]
    pub k_squared: Option<Rational>,
    pub ample: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub label: String,
    pub euler_number: i64,
    /// Number of preimages of each point of the stratum.
    pub preimages: u64,
    pub contribution: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerStrata {
    pub strata: Vec<Stratum>,
    #[serde(with = "rational::as_str")]
    pub total: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverInvariants {
    pub canonical: CanonicalData,
    pub euler: EulerStrata,
    #[serde(with = "rational::as_str")]
    pub k_squared: Rational,
    #[serde(with = "rational::as_str")]
    pub euler_number: Rational,
    /// From Noether's formula.
    #[serde(with = "rational::as_str")]
    pub chi_o: Rational,
    /// `Σ_χ χ(L_χ^{-1})`, an independent cross-check.
    #[serde(with = "rational::as_str")]
    pub chi_o_eigensheaves: Rational,
    pub noether_consistent: bool,
    pub general_type: bool,
    pub note: String,
}

/// The two printed Chern formulas, evaluated verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedChern {
    #[serde(with = "rational::as_str")]
    pub k_squared: Rational,
    #[serde(with = "rational::as_str")]
    pub c2: Rational,
}

pub fn canonical_data(cd: &CoverData) -> CanonicalData {
    let base = cd.base();
    let order = cd.group().order() as i64;
    let mut pull = base.canonical.to_q();
    let mut times = base.canonical.scale(order);
    for (i, xi) in cd.inertia().iter().zip(cd.branch()) {
        pull = &pull + &xi.to_q().scale(frac(i.order - 1, i.order));
        times = &times + &xi.scale(order / i.order * (i.order - 1));
    }
    let k_squared = base
        .is_surface()
        .then(|| base.intersect_q(&pull, &pull).ok().map(|v| v * int(order)))
        .flatten();
    let ample = base.is_sufficiently_ample_q(&pull, &QClass::zero(base.ns_rank()));
    CanonicalData { pullback_class: pull, class_times_order: times, k_squared, ample }
}

/// Euler number of the cover by additivity over strata: the open part of
/// `Y`, the open parts of the branch divisors and their pairwise
/// intersection points, each weighted by the number of preimages.
///
/// `branch_euler[i]` defaults to `−ξ_i·(ξ_i + K_Y)`; `point_counts` lists
/// `((i, j), #D_i ∩ D_j)` and defaults to `ξ_i·ξ_j` for every pair in the
/// intersection pattern. Pairs outside the pattern are disjoint.
pub fn euler_stratified(
    cd: &CoverData,
    branch_euler: Option<&[i64]>,
    point_counts: Option<&[((usize, usize), i64)]>,
) -> Result<EulerStrata> {
    let base = cd.base();
    if !base.is_surface() {
        return Err(Error::InvalidBase("stratified Euler numbers need a surface".into()));
    }
    if let Some(t) = cd.intersection_pattern().iter().find(|s| s.len() > 2) {
        return Err(Error::InvalidCover(format!("intersection pattern has a triple {t:?}; not supported")));
    }
    let k = cd.inertia().len();
    let g = cd.group();
    let order = g.order();

    let e_d: Vec<i64> = match branch_euler {
        Some(v) if v.len() != k => {
            return Err(Error::InvalidCover(format!("{} branch Euler numbers for {k} divisors", v.len())));
        }
        Some(v) => v.to_vec(),
        None => cd
            .branch()
            .iter()
            .map(|xi| base.intersect(xi, &(xi + &base.canonical)).map(|v| -v))
            .collect::<Result<_>>()?,
    };

    let pairs: Vec<(usize, usize)> = cd
        .intersection_pattern()
        .iter()
        .filter(|s| s.len() == 2)
        .map(|s| (s[0], s[1]))
        .collect();
    let mut points: Vec<((usize, usize), i64)> = Vec::new();
    match point_counts {
        Some(pc) => {
            for &((a, b), n) in pc {
                let key = (a.min(b), a.max(b));
                if !pairs.contains(&key) {
                    return Err(Error::InvalidCover(format!("pair {key:?} is not in the intersection pattern")));
                }
                points.push((key, n));
            }
            for &p in &pairs {
                if !points.iter().any(|(q, _)| *q == p) {
                    points.push((p, base.intersect(&cd.branch()[p.0], &cd.branch()[p.1])?));
                }
            }
        }
        None => {
            for &p in &pairs {
                points.push((p, base.intersect(&cd.branch()[p.0], &cd.branch()[p.1])?));
            }
        }
    }
    points.sort();

    let mut strata = Vec::new();
    let open = base.euler_number - e_d.iter().sum::<i64>() + points.iter().map(|(_, n)| n).sum::<i64>();
    strata.push(Stratum {
        label: "Y minus branch locus".into(),
        euler_number: open,
        preimages: order,
        contribution: open * order as i64,
    });
    for (i, datum) in cd.inertia().iter().enumerate() {
        let e = e_d[i] - points.iter().filter(|((a, b), _)| *a == i || *b == i).map(|(_, n)| n).sum::<i64>();
        let pre = order / datum.order as u64;
        strata.push(Stratum {
            label: format!("D_{} open part", i + 1),
            euler_number: e,
            preimages: pre,
            contribution: e * pre as i64,
        });
    }
    for &((a, b), n) in &points {
        let ia = &cd.inertia()[a];
        let ib = &cd.inertia()[b];
        let local = g.subgroup_order(&[&ia.generator, &ib.generator]);
        let pre = order / local;
        strata.push(Stratum {
            label: format!("D_{} ∩ D_{}", a + 1, b + 1),
            euler_number: n,
            preimages: pre,
            contribution: n * pre as i64,
        });
    }
    let total = int(strata.iter().map(|s| s.contribution).sum());
    Ok(EulerStrata { strata, total })
}

/// `Σ_χ χ(L_χ^{-1}) = Σ_χ [χ(O_Y) + ½ η_χ·(η_χ + K_Y)]`.
pub fn chi_eigensheaf(cd: &CoverData) -> Result<Rational> {
    let base = cd.base();
    let mut total = int(0);
    for chi in cd.group().characters() {
        let eta = cd.derive_l_chi(&chi);
        total += base.euler_characteristic(&-&eta)?;
    }
    Ok(total)
}

/// All surface invariants with default strata inputs.
pub fn cover_invariants(cd: &CoverData) -> Result<CoverInvariants> {
    let canonical = canonical_data(cd);
    let k_squared = canonical
        .k_squared
        .ok_or_else(|| Error::InvalidBase("surface invariants need a surface base".into()))?;
    let euler = euler_stratified(cd, None, None)?;
    let e = euler.total;
    let chi_o = (k_squared + e) / int(12);
    let chi_eig = chi_eigensheaf(cd)?;
    Ok(CoverInvariants {
        general_type: canonical.ample,
        canonical,
        k_squared,
        euler_number: e,
        chi_o,
        chi_o_eigensheaves: chi_eig,
        noether_consistent: chi_eig * int(12) == k_squared + e,
        euler,
        note: crate::cover::GEOMETRY_NOTE.into(),
    })
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// Evaluates the two printed Chern formulas for the chain `d_1 | … | d_s`
/// (with `d_0 = d_s` added) over a surface with `ξ = c₁(M_0)`.
pub fn construction62_chern(d: &[i64], base: &NumericalBase, xi: &NSClass) -> Result<PrintedChern> {
    if !base.is_surface() {
        return Err(Error::InvalidBase("Chern numbers need a surface".into()));
    }
    let Some(&d0) = d.last() else {
        return Err(Error::InvalidConfig("empty chain".into()));
    };
    FinAbGroup::new(d.to_vec())?;
    let s = d.len() as i64;
    let order: i64 = d.iter().product();
    let all: Vec<i64> = std::iter::once(d0).chain(d.iter().copied()).collect();
    let inv_sum: Rational = all.iter().map(|&x| frac(1, x)).sum();
    let mut pair_sum = int(0);
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            pair_sum += frac(1, all[i] * all[j]);
        }
    }
    let k = base.canonical.to_q();
    let x = xi.to_q();
    let c = &k + &x.scale(int(s) - inv_sum);
    let k2 = base.intersect_q(&c, &c)? * int(order);
    let xk = int(base.intersect(xi, &base.canonical)?);
    let xx = int(base.intersect(xi, xi)?);
    let c2 = (int(base.euler_number) - (int(s + 1) - inv_sum) * xk + (int(binomial(s + 2, 2)) + inv_sum + pair_sum) * xx)
        * int(order);
    Ok(PrintedChern { k_squared: k2, c2 })
}

/// Genus of a `(G, I)`-cover of a curve of genus `g_Y` with `b_i` branch
/// points of type `i`.
pub fn hurwitz_genus(g_y: i64, group: &FinAbGroup, inertia: &[InertiaDatum], branch_points: &[i64]) -> Result<i64> {
    if g_y < 0 {
        return Err(Error::InvalidConfig("negative base genus".into()));
    }
    if inertia.len() != branch_points.len() {
        return Err(Error::InvalidConfig(format!(
            "{} branch point counts for {} inertia data",
            branch_points.len(),
            inertia.len()
        )));
    }
    if branch_points.iter().any(|&b| b < 0) {
        return Err(Error::InvalidConfig("negative branch point count".into()));
    }
    let mut total = GroupElement { coords: vec![0; group.rank()] };
    for (i, &b) in inertia.iter().zip(branch_points) {
        total = group.add(&total, &group.scale(b, &i.generator));
    }
    if !total.is_zero() {
        return Err(Error::InvalidConfig(format!(
            "local monodromies do not multiply to the identity (sum {total})"
        )));
    }
    let mut r = int(2 * g_y - 2);
    for (i, &b) in inertia.iter().zip(branch_points) {
        r += int(b) * frac(i.order - 1, i.order);
    }
    let two_g_minus_two = r * int(group.order() as i64);
    if !two_g_minus_two.is_integer() || two_g_minus_two.to_integer() % 2 != 0 {
        return Err(Error::InvalidConfig(format!(
            "2g − 2 = {} is not an even integer",
            rational::render(&two_g_minus_two)
        )));
    }
    let g = two_g_minus_two.to_integer() / 2 + 1;
    if g < 0 {
        return Err(Error::InvalidConfig(format!("negative genus {g}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_cover(factors: &[i64], gens: &[&[i64]], xi: &[i64]) -> CoverData {
        let g = FinAbGroup::new(factors.to_vec()).unwrap();
        let inertia = gens.iter().map(|c| g.inertia_from(c).unwrap()).collect();
        CoverData::new(g, inertia, NumericalBase::p2(), xi.iter().map(|&x| NSClass(vec![x])).collect()).unwrap()
    }

    #[test]
    fn bidouble_canonical() {
        let cd = p2_cover(&[2, 2], &[&[1, 0], &[0, 1], &[1, 1]], &[4, 4, 4]);
        let c = canonical_data(&cd);
        assert_eq!(c.pullback_class, NSClass(vec![3]).to_q());
        assert_eq!(c.k_squared, Some(int(36)));
        assert_eq!(c.class_times_order, NSClass(vec![12]));
        let small = p2_cover(&[2, 2], &[&[1, 0], &[0, 1], &[1, 1]], &[2, 2, 2]);
        let c = canonical_data(&small);
        assert!(c.pullback_class.is_zero());
        assert!(!c.ample);
    }

    #[test]
    fn double_planes() {
        let octic = p2_cover(&[2], &[&[1]], &[8]);
        assert_eq!(canonical_data(&octic).k_squared, Some(int(2)));
        let quartic = p2_cover(&[2], &[&[1]], &[4]);
        let e = euler_stratified(&quartic, None, None).unwrap();
        assert_eq!(e.total, int(10));
        let inv = cover_invariants(&quartic).unwrap();
        assert_eq!(inv.chi_o, int(1));
        assert!(inv.noether_consistent);
    }

    #[test]
    fn trivial_group_gives_base_euler_number() {
        let g = FinAbGroup::trivial();
        let cd = CoverData::new(g, vec![], NumericalBase::p1xp1(), vec![]).unwrap();
        assert_eq!(euler_stratified(&cd, None, None).unwrap().total, int(4));
    }

    #[test]
    fn printed_chern() {
        let r = construction62_chern(&[2, 2], &NumericalBase::p2(), &NSClass(vec![4])).unwrap();
        assert_eq!(r.k_squared, int(4));
        let z = construction62_chern(&[3, 3], &NumericalBase::p2(), &NSClass(vec![0])).unwrap();
        assert_eq!(z.k_squared, int(9 * 9));
        assert_eq!(z.c2, int(9 * 3));
        for n in 2..7 {
            let r = construction62_chern(&[n, n], &NumericalBase::abelian_pp(), &NSClass(vec![2])).unwrap();
            assert_eq!(r.k_squared, int(8 * (2 * n - 3) * (2 * n - 3)));
        }
    }

    #[test]
    fn hurwitz() {
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let i = vec![z3.inertia_from(&[1]).unwrap(), z3.inertia_from(&[2]).unwrap()];
        assert_eq!(hurwitz_genus(0, &z3, &i, &[2, 2]).unwrap(), 2);
        let z2 = FinAbGroup::cyclic(2).unwrap();
        assert_eq!(hurwitz_genus(2, &z2, &[], &[]).unwrap(), 3);
        let j = vec![z2.inertia_from(&[1]).unwrap()];
        assert_eq!(hurwitz_genus(0, &z2, &j, &[2]).unwrap(), 0);
        assert!(hurwitz_genus(0, &z2, &j, &[1]).is_err());
    }
}
