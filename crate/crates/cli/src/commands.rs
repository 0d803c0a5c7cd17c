use std::io::Read;

use coverkit::base::{Dim, NSClass, NumericalBase};
use coverkit::config::CoverConfig;
use coverkit::construction::{prop66_report, C62Params, MarkerLocus};
use coverkit::cover::{torsion_candidates, CoverData};
use coverkit::deformations::{
    cstar_weights, moduli_dimension, predict_generic_automorphisms, tangent_table,
};
use coverkit::emitter::{Flavor, RelationSystem};
use coverkit::group::FinAbGroup;
use coverkit::invariants::{construction62_chern, cover_invariants, euler_stratified};
use coverkit::rational::render;
use coverkit::resolution::{render_ledger, trace, verify_all, Case};
use coverkit::{Error, Result};
use serde_json::{json, Value};

use crate::markdown::{heading, kv, line, table};
use crate::{Command, CoverCommand, Input};

pub struct Report {
    pub json: Value,
    pub markdown: String,
    pub unknown: bool,
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn load(input: &Input) -> Result<CoverConfig> {
    let text = if input.input.trim_start().starts_with('{') {
        input.input.clone()
    } else if input.input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidConfig(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.input).map_err(|e| Error::InvalidConfig(format!("{}: {e}", input.input)))?
    };
    log::info!("parsing cover description ({} bytes)", text.len());
    CoverConfig::from_json(&text)
}

fn build(input: &Input) -> Result<(CoverConfig, CoverData)> {
    let cfg = load(input)?;
    let cd = cfg.cover()?;
    log::debug!("cover over {} with group {}", cd.base().name, cd.group());
    Ok((cfg, cd))
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Group { factors } => group(factors),
        Command::Cover(CoverCommand::Check { input }) => check(input),
        Command::Cover(CoverCommand::Invariants { input }) => invariants(input),
        Command::Cover(CoverCommand::Deformations { input }) => deformations(input),
        Command::Cover(CoverCommand::Emit { input, flavor, galois, smoke }) => emit(input, flavor, *galois, *smoke),
        Command::Construction62 { d, base, xi } => construction62(d, base, xi),
        Command::Prop66 { n } => prop66(*n),
        Command::Resolve { n, case, verify_up_to } => resolve(*n, case, *verify_up_to),
        Command::ModuliDim { input, aut_dim } => moduli(input, *aut_dim),
    }
}

fn group(factors: &[i64]) -> Result<Report> {
    let g = FinAbGroup::new(factors.to_vec())?;
    let ig = g.enumerate_ig();
    let mut md = String::new();
    heading(&mut md, 1, &format!("Inertia data of {g}"));
    kv(&mut md, "order", g.order());
    kv(&mut md, "#I_G", ig.len());
    md.push('\n');
    let rows: Vec<Vec<String>> = ig
        .iter()
        .enumerate()
        .map(|(k, d)| vec![(k + 1).to_string(), d.generator.to_string(), d.order.to_string()])
        .collect();
    table(&mut md, &["#", "generator", "order"], &rows);
    Ok(Report {
        json: json!({ "group": g.factors(), "order": g.order(), "inertia": to_value(&ig) }),
        markdown: md,
        unknown: false,
    })
}

fn check(input: &Input) -> Result<Report> {
    let (_, cd) = build(input)?;
    let g = cd.group();
    let relations = cd.check_fundamental_relations();
    let audit = cd.smoothness_audit();
    let torsion = torsion_candidates(g, cd.base().q);
    let chars: Vec<Value> = g
        .characters()
        .iter()
        .map(|c| json!({ "character": c.exponents, "class": cd.derive_l_chi(c), "marker": cd.derive_l_chi_marker(c) }))
        .collect();

    let mut md = String::new();
    heading(&mut md, 1, &format!("Cover check: {g} over {}", cd.base().name));
    kv(&mut md, "branch divisors", cd.branch().len());
    kv(&mut md, "fundamental relations", if relations.is_ok() { "hold" } else { "FAIL" });
    kv(&mut md, "all pattern entries injective", audit.all_injective);
    kv(&mut md, "torsion translates of the reduced solution", torsion.map_or("overflow".into(), |t| t.to_string()));
    md.push('\n');
    let rows: Vec<Vec<String>> = g
        .characters()
        .iter()
        .map(|c| {
            vec![
                c.to_string(),
                cd.derive_l_chi(c).to_string(),
                cd.derive_l_chi_marker(c).map_or("-".into(), |m| format!("{:?}", m.0)),
            ]
        })
        .collect();
    table(&mut md, &["character", "class of L", "marker"], &rows);
    let audit_rows: Vec<Vec<String>> = audit
        .entries
        .iter()
        .map(|a| {
            vec![
                format!("{:?}", a.subset.iter().map(|i| i + 1).collect::<Vec<_>>()),
                a.product_of_orders.to_string(),
                a.generated_order.to_string(),
                a.injective.to_string(),
            ]
        })
        .collect();
    table(&mut md, &["divisors", "∏ m_i", "generated", "injective"], &audit_rows);
    line(&mut md, format!("Note: {}", audit.note));

    Ok(Report {
        json: json!({
            "cover": to_value(&cd),
            "fundamental_relations": relations.is_ok(),
            "violation": relations.err().map(|v| to_value(&v)),
            "characters": chars,
            "smoothness": to_value(&audit),
            "torsion_translates": torsion.map(|t| t.to_string()),
        }),
        markdown: md,
        unknown: false,
    })
}

fn invariants(input: &Input) -> Result<Report> {
    let (cfg, cd) = build(input)?;
    let mut inv = cover_invariants(&cd)?;
    if cfg.branch_euler.is_some() || cfg.point_counts.is_some() {
        let pc = cfg.point_counts();
        let strata = euler_stratified(&cd, cfg.branch_euler.as_deref(), pc.as_deref())?;
        inv.euler_number = strata.total;
        inv.chi_o = (inv.k_squared + strata.total) / coverkit::rational::int(12);
        inv.noether_consistent = inv.chi_o_eigensheaves == inv.chi_o;
        inv.euler = strata;
    }
    let mut md = String::new();
    heading(&mut md, 1, &format!("Invariants of the {} cover over {}", cd.group(), cd.base().name));
    kv(&mut md, "K_X (pullback)", &inv.canonical.pullback_class);
    kv(&mut md, "K²", render(&inv.k_squared));
    kv(&mut md, "e", render(&inv.euler_number));
    kv(&mut md, "χ(O_X) from Noether", render(&inv.chi_o));
    kv(&mut md, "χ(O_X) from eigensheaves", render(&inv.chi_o_eigensheaves));
    kv(&mut md, "Noether consistent", inv.noether_consistent);
    kv(&mut md, "K_X ample (test classes)", inv.general_type);
    md.push('\n');
    let rows: Vec<Vec<String>> = inv
        .euler
        .strata
        .iter()
        .map(|s| vec![s.label.clone(), s.euler_number.to_string(), s.preimages.to_string(), s.contribution.to_string()])
        .collect();
    table(&mut md, &["stratum", "e", "preimages", "contribution"], &rows);
    line(&mut md, format!("Note: {}", inv.note));
    Ok(Report { json: to_value(&inv), markdown: md, unknown: false })
}

fn deformations(input: &Input) -> Result<Report> {
    let (cfg, cd) = build(input)?;
    let report = tangent_table(&cd, cfg.invariant_dims.unwrap_or_default());
    let prediction = predict_generic_automorphisms(&cd, &report);
    let weights = cstar_weights(&cd);
    let unknown = prediction.is_err()
        || report.natural_deformation_dim.is_unknown()
        || report.rows.iter().any(|r| r.tangent.is_unknown());

    let mut md = String::new();
    heading(&mut md, 1, &format!("Deformations of the {} cover over {}", cd.group(), cd.base().name));
    kv(&mut md, "#S", report.s.len());
    kv(&mut md, "natural deformations", report.natural_deformation_dim);
    kv(&mut md, "all L_χ pass the ampleness test", report.complete);
    match &prediction {
        Ok(p) => kv(
            &mut md,
            "predicted generic automorphisms",
            format!("order {} {:?} ({})", p.subgroup.order(), p.subgroup.invariant_factors, p.note),
        ),
        Err(e) => kv(&mut md, "predicted generic automorphisms", format!("unknown: {e}")),
    }
    md.push('\n');
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            let idx: Vec<String> = r.summands.iter().map(|s| (s.i + 1).to_string()).collect();
            vec![
                r.character.to_string(),
                r.l_class.to_string(),
                idx.join(","),
                r.natural.to_string(),
                r.tangent.to_string(),
                r.obstruction_lower.to_string(),
            ]
        })
        .collect();
    table(&mut md, &["character", "L", "S_χ", "natural", "tangent", "obstruction ≥"], &rows);
    let wrows: Vec<Vec<String>> = weights
        .rows
        .iter()
        .map(|w| vec![format!("s_{},{}", w.j + 1, w.chi), format!("{:?}", w.exponents)])
        .collect();
    table(&mut md, &["parameter", "torus weight"], &wrows);
    heading(&mut md, 2, "Assumptions");
    for a in &report.assumptions {
        line(&mut md, format!("- {a}"));
    }

    Ok(Report {
        json: json!({
            "report": to_value(&report),
            "prediction": prediction.as_ref().ok().map(to_value),
            "prediction_error": prediction.as_ref().err().map(|e| e.to_string()),
            "weights": to_value(&weights),
        }),
        markdown: md,
        unknown,
    })
}

fn emit(input: &Input, flavor: &str, galois: bool, smoke: bool) -> Result<Report> {
    let flavor: Flavor = flavor.parse()?;
    let (cfg, cd) = build(input)?;
    let sys = RelationSystem::from_cover(&cd, galois);
    let text = sys.emit(flavor);
    let smoke_report = if smoke { Some(sys.flatness_smoke_test(&cfg.fiber_values()?)?) } else { None };
    let mut md = text.clone();
    if let Some(r) = &smoke_report {
        let c = match flavor {
            Flavor::Plain => "#",
            Flavor::Singular => "//",
            Flavor::Macaulay2 => "--",
        };
        md.push_str(&format!(
            "{c} fibre: length {}, distinct points {}, expected {}\n",
            r.length, r.distinct_points, r.expected
        ));
    }
    Ok(Report {
        json: json!({
            "flavor": flavor,
            "galois": galois,
            "relation_count": sys.relations.len(),
            "multihomogeneous": sys.is_multihomogeneous(),
            "text": text,
            "fibre": smoke_report.map(|r| to_value(&r)),
        }),
        markdown: md,
        unknown: false,
    })
}

fn construction62(d: &[i64], base: &str, xi: &[i64]) -> Result<Report> {
    let base = NumericalBase::preset(base).ok_or_else(|| Error::InvalidConfig(format!("unknown base preset {base}")))?;
    let p = C62Params::new(d.to_vec())?;
    let xi = NSClass(xi.to_vec());
    let g = p.group();
    let chern = construction62_chern(p.d(), &base, &xi)?;
    let n_chi: Vec<(String, i64)> = g.characters().iter().map(|c| (c.to_string(), p.n_chi(c))).collect();
    let cover = p.build_cover(&base, &xi, &p.markers(&MarkerLocus::Generic { k: p.s() }))?;
    let inv = cover_invariants(&cover)?;
    let components = if base.q >= 1 { Some(p.classify_components(&base, &xi)?) } else { None };

    let mut md = String::new();
    heading(&mut md, 1, &format!("Chain {:?} over {}", p.d(), base.name));
    kv(&mut md, "group", g);
    kv(&mut md, "b", format!("{:?}", p.b()));
    kv(&mut md, "K² (printed formula)", render(&chern.k_squared));
    kv(&mut md, "c₂ (printed formula)", render(&chern.c2));
    kv(&mut md, "K² (pullback)", render(&inv.k_squared));
    kv(&mut md, "e (stratified)", render(&inv.euler_number));
    md.push('\n');
    let rrows: Vec<Vec<String>> = p
        .r_table()
        .iter()
        .enumerate()
        .map(|(i, row)| vec![format!("e_{i}"), format!("{row:?}")])
        .collect();
    table(&mut md, &["inertia", "r_j"], &rrows);
    let nrows: Vec<Vec<String>> = n_chi.iter().map(|(c, n)| vec![c.clone(), n.to_string()]).collect();
    table(&mut md, &["character", "N_χ"], &nrows);
    match &components {
        Some(rows) => {
            let crow: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        r.description.clone(),
                        r.predicted.order().to_string(),
                        format!("{:?}", r.predicted.invariant_factors),
                        r.matches_expected.to_string(),
                    ]
                })
                .collect();
            table(&mut md, &["k", "locus", "order", "structure", "matches G_k"], &crow);
        }
        None => line(&mut md, "Components are only classified over irregular bases."),
    }

    Ok(Report {
        json: json!({
            "d": p.d(),
            "b": p.b(),
            "r_table": p.r_table(),
            "n_chi": n_chi.iter().map(|(c, n)| json!({"character": c, "n": n})).collect::<Vec<_>>(),
            "printed": to_value(&chern),
            "invariants": to_value(&inv),
            "components": components.as_ref().map(to_value),
        }),
        markdown: md,
        unknown: false,
    })
}

fn prop66(n: i64) -> Result<Report> {
    let r = prop66_report(n)?;
    let mut md = String::new();
    heading(&mut md, 1, &format!("Abelian-surface family, n = {n}"));
    kv(&mut md, "predicted order", r.predicted_order);
    let rows = vec![
        vec!["printed formula".into(), render(&r.k2_printed), r.exceeds_printed.to_string()],
        vec!["pullback of K".into(), render(&r.k2_pullback), r.exceeds_pullback.to_string()],
        vec!["quoted 16(n-1)^2".into(), render(&r.k2_quoted), r.exceeds_quoted.to_string()],
    ];
    md.push('\n');
    table(&mut md, &["K² variant", "value", "order > K²/16"], &rows);
    kv(&mut md, "c₂ (printed)", render(&r.c2_printed));
    kv(&mut md, "e (stratified)", render(&r.euler_stratified));
    line(&mut md, format!("\nNote: {}", r.note));
    Ok(Report { json: to_value(&r), markdown: md, unknown: false })
}

fn resolve(n: Option<u32>, case: &str, verify_up_to: Option<u32>) -> Result<Report> {
    if let Some(max) = verify_up_to {
        let s = verify_all(max)?;
        let mut md = String::new();
        heading(&mut md, 1, &format!("Resolution traces for 2 ≤ n ≤ {max}"));
        kv(&mut md, "traces", s.trace_count);
        kv(&mut md, "exceptional divisors", s.divisor_count);
        kv(&mut md, "all verdicts negative", s.all_negative);
        return Ok(Report {
            json: json!({
                "trace_count": s.trace_count,
                "divisor_count": s.divisor_count,
                "all_negative": s.all_negative,
                "n": s.entries.iter().map(|e| e.n).collect::<Vec<_>>(),
            }),
            markdown: md,
            unknown: false,
        });
    }
    let n = n.expect("clap enforces --n");
    let case: Case = case.parse()?;
    let t = trace(n, case)?;
    coverkit::resolution::verify_trace(&t)?;
    let mut md = String::new();
    heading(&mut md, 1, &format!("Resolution trace, n = {n}, case {case}"));
    let rows: Vec<Vec<String>> = t
        .steps
        .iter()
        .map(|s| {
            vec![
                s.divisor.clone(),
                s.chart.clone(),
                s.equation.to_string(),
                render_ledger(&s.ledger),
                s.verdict.r.to_string(),
                render(&s.verdict.value),
                to_value(&s.verdict.kind).as_str().unwrap_or_default().to_string(),
            ]
        })
        .collect();
    table(&mut md, &["divisor", "chart", "local equation", "ledger", "r", "value", "kind"], &rows);
    Ok(Report { json: to_value(&t), markdown: md, unknown: false })
}

fn moduli(input: &Input, aut_dim: Option<i64>) -> Result<Report> {
    let (cfg, cd) = build(input)?;
    let m = moduli_dimension(&cd, aut_dim.or(cfg.aut_dim));
    let mut md = String::new();
    heading(&mut md, 1, &format!("Dimension count for the {} cover over {}", cd.group(), cd.base().name));
    kv(&mut md, "irregularity part", m.irregularity_part);
    kv(&mut md, "linear systems part", m.linear_system_part);
    kv(&mut md, "automorphisms of the base", m.aut_dim.map_or("not given".into(), |a| a.to_string()));
    kv(&mut md, "total", m.total);
    Ok(Report { json: to_value(&m), unknown: matches!(m.total, Dim::Unknown), markdown: md })
}
