//! One function per subcommand, each producing a [`Report`].

use serde_json::{json, Value};

use super::report::{fmt_num, round_sig, Envelope, Report, Table};
use super::state_file::ParsedState;
use crate::entanglement::{
    concurrence_report, dicke_entropy_profile, entropy_report, generate_mes_basis, product_structure,
    verify_claims_three_qubit, Bipartitions, ClaimStatus,
};
use crate::error::{invalid, Result};
use crate::partitions::{conjugacy_classes, decomposition_table, factorial};
use crate::schur_weyl::{
    build_decomposition, couple_spins, sector_projections, SymmetrySector, MAX_COUPLED_PARTICLES,
    MAX_SYMMETRIZER_DIM, MAX_SYMMETRIZER_PARTICLES,
};
use crate::statespace::{StateVector, SystemShape};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Amplitudes at or below this are not printed.
const TERM_CUTOFF: f64 = 1e-12;

const DIGITS: &str = "basis digits are 1-based levels, particle 1 leftmost";
const ROUNDING: &str = "numbers rounded to 12 significant digits";
const BITS: &str = "entropies in bits (log base 2)";

fn envelope(command: &str, input: Value, conventions: &[&str], payload: Value) -> Envelope {
    Envelope {
        command: command.to_string(),
        version: VERSION.to_string(),
        input,
        conventions: conventions.iter().map(|c| c.to_string()).collect(),
        warnings: Vec::new(),
        payload,
    }
}

/// Exact integers stay numbers while they fit in 64 bits.
fn int(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn num(x: f64) -> Value {
    let r = round_sig(x);
    if r.is_finite() {
        json!(r)
    } else {
        Value::String(fmt_num(r))
    }
}

fn subset_text(particles: &[usize]) -> String {
    let inner: Vec<String> = particles.iter().map(|k| (k + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// `(basis, re, im)` for every printed amplitude.
fn amplitude_terms(v: &StateVector) -> Vec<(String, f64, f64)> {
    v.terms(TERM_CUTOFF)
        .into_iter()
        .map(|(label, a)| (label.to_string(), round_sig(a.re), round_sig(a.im)))
        .collect()
}

fn terms_json(v: &StateVector) -> Value {
    Value::Array(
        amplitude_terms(v)
            .into_iter()
            .map(|(basis, re, im)| json!({ "basis": basis, "re": re, "im": im }))
            .collect(),
    )
}

pub fn decompose(particles: usize, levels: usize) -> Result<Report> {
    let table = decomposition_table(particles, levels)?;
    let classes = conjugacy_classes(particles)?;
    let mut rows = Table::new("decomposition", &["lambda", "f", "d", "f*d", "class_size"]);
    let mut json_rows = Vec::new();
    for (record, class) in table.records.iter().zip(&classes) {
        debug_assert_eq!(record.lambda, class.cycle_type);
        rows.push(vec![
            record.lambda.to_string(),
            record.f.to_string(),
            record.d.to_string(),
            record.block_dim().to_string(),
            class.size.to_string(),
        ]);
        json_rows.push(json!({
            "lambda": record.lambda.parts(),
            "f": int(record.f),
            "d": int(record.d),
            "block_dim": int(record.block_dim()),
            "class_size": int(class.size),
        }));
    }
    // one term per copy: "4 + 2 + 2 + 0"
    let blocks: Vec<String> = table
        .records
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.d.to_string(), r.f as usize))
        .collect();
    let mut summary = Table::new("total", &["sum", "n^N", "consistent"]);
    summary.push(vec![blocks.join(" + "), table.hilbert_dim.to_string(), table.is_consistent().to_string()]);
    let payload = json!({
        "particles": particles,
        "levels": levels,
        "rows": json_rows,
        "sum": blocks.join(" + "),
        "total": int(table.total),
        "hilbert_dim": int(table.hilbert_dim),
        "consistent": table.is_consistent(),
    });
    Ok(Report {
        envelope: envelope(
            "decompose",
            json!({ "N": particles, "n": levels }),
            &["partitions in reverse lexicographic order, [N] first", "f*d is the dimension of the lambda block"],
            payload,
        ),
        tables: vec![rows, summary],
    })
}

pub fn classes(particles: usize) -> Result<Report> {
    let classes = conjugacy_classes(particles)?;
    let mut rows = Table::new("classes", &["cycle_type", "size"]);
    let mut json_rows = Vec::new();
    for c in &classes {
        rows.push(vec![c.cycle_type.to_string(), c.size.to_string()]);
        json_rows.push(json!({ "cycle_type": c.cycle_type.parts(), "size": int(c.size) }));
    }
    let order = factorial(particles)?;
    let mut total = Table::new("total", &["classes", "group_order"]);
    total.push(vec![classes.len().to_string(), order.to_string()]);
    Ok(Report {
        envelope: envelope(
            "classes",
            json!({ "N": particles }),
            &["cycle types in reverse lexicographic order"],
            json!({ "particles": particles, "classes": json_rows, "group_order": int(order) }),
        ),
        tables: vec![rows, total],
    })
}

fn sectors_report(
    command: &str,
    input: Value,
    conventions: &[&str],
    sectors: &[SymmetrySector],
) -> Report {
    let mut table = Table::new("basis", &["lambda", "copy", "label", "weight", "basis", "re", "im"]);
    let mut json_sectors = Vec::new();
    for sector in sectors {
        let mut members = Vec::new();
        for member in &sector.members {
            let label = member.coupled.map(|c| c.to_string()).unwrap_or_default();
            let weight: Vec<String> = member.weight.iter().map(|w| w.to_string()).collect();
            for (basis, re, im) in amplitude_terms(&member.state) {
                table.push(vec![
                    sector.lambda.to_string(),
                    sector.multiplicity.to_string(),
                    label.clone(),
                    weight.join(":"),
                    basis,
                    fmt_num(re),
                    fmt_num(im),
                ]);
            }
            members.push(json!({
                "label": member.coupled.map(|c| c.to_string()),
                "weight": member.weight,
                "terms": terms_json(&member.state),
            }));
        }
        json_sectors.push(json!({
            "lambda": sector.lambda.parts(),
            "copy": sector.multiplicity,
            "members": members,
        }));
    }
    let count: usize = sectors.iter().map(|s| s.len()).sum();
    Report {
        envelope: envelope(command, input, conventions, json!({ "states": count, "sectors": json_sectors })),
        tables: vec![table],
    }
}

pub fn basis(particles: usize, levels: usize, coupled: bool) -> Result<Report> {
    let input = json!({ "N": particles, "n": levels, "coupled": coupled });
    if coupled {
        if levels != 2 {
            return Err(invalid(format!("--coupled needs n = 2, got n = {levels}")));
        }
        let sectors = couple_spins(particles)?;
        return Ok(sectors_report(
            "basis",
            input,
            &[
                DIGITS,
                "level 1 is spin up; spins coupled from the last particle to the first",
                "one sign per multiplet: largest amplitude of the m = j state is positive",
                ROUNDING,
            ],
            &sectors,
        ));
    }
    let sectors = build_decomposition(SystemShape::new(particles, levels)?)?;
    Ok(sectors_report(
        "basis",
        input,
        &[DIGITS, "Young symmetrizer images, orthonormalized; first nonzero amplitude positive", ROUNDING],
        &sectors,
    ))
}

pub fn mes(particles: usize) -> Result<Report> {
    let basis = generate_mes_basis(particles)?;
    let mut table = Table::new("mes", &["index", "source", "partner", "combination", "basis", "re", "im"]);
    let mut states = Vec::new();
    for (k, s) in basis.states.iter().enumerate() {
        let partner = s.partner.map(|p| p.to_string()).unwrap_or_default();
        for (b, re, im) in amplitude_terms(&s.state) {
            table.push(vec![
                (k + 1).to_string(),
                s.source.to_string(),
                partner.clone(),
                s.combination.symbol().to_string(),
                b,
                fmt_num(re),
                fmt_num(im),
            ]);
        }
        states.push(json!({
            "index": k + 1,
            "source": s.source.to_string(),
            "partner": s.partner.map(|p| p.to_string()),
            "combination": s.combination,
            "terms": terms_json(&s.state),
        }));
    }
    Ok(Report {
        envelope: envelope(
            "mes",
            json!({ "N": particles }),
            &[
                DIGITS,
                "conjugate: levels 1 and 2 swapped on every particle, largest amplitude made real positive",
                "each |j,m;d> with m > 0 gives (v + conj)/norm and (v - conj)/norm; self-conjugate states kept",
                ROUNDING,
            ],
            json!({ "count": basis.states.len(), "states": states }),
        ),
        tables: vec![table],
    })
}

pub fn dicke_profile(particles: usize) -> Result<Report> {
    let profile = dicke_entropy_profile(particles)?;
    let mut table = Table::new("dicke_profile", &["m", "entropy"]);
    let mut points = Vec::new();
    for p in &profile {
        table.push(vec![p.m.to_string(), fmt_num(p.entropy)]);
        points.push(json!({ "m": p.m.to_string(), "entropy": num(p.entropy) }));
    }
    Ok(Report {
        envelope: envelope(
            "dicke-profile",
            json!({ "N": particles }),
            &["states |N/2, m> from m = N/2 down", "entropy of the particle-1 reduction", BITS, ROUNDING],
            json!({ "j": format!("{}", crate::schur_weyl::HalfInt::from_twice(particles as i32)), "points": points }),
        ),
        tables: vec![table],
    })
}

fn sectors_for_measure(shape: SystemShape) -> Result<Option<Vec<SymmetrySector>>> {
    if shape.levels() == 2 && shape.particles() <= MAX_COUPLED_PARTICLES {
        return couple_spins(shape.particles()).map(Some);
    }
    if shape.particles() <= MAX_SYMMETRIZER_PARTICLES && shape.dim() <= MAX_SYMMETRIZER_DIM {
        return build_decomposition(shape).map(Some);
    }
    Ok(None)
}

pub fn measure(path: &str, parsed: &ParsedState, cuts: Bipartitions) -> Result<Report> {
    let v = &parsed.state;
    let shape = v.shape();
    let mut tables = Vec::new();

    let entropies = entropy_report(v, cuts)?;
    let mut et = Table::new("entropy", &["subset", "entropy"]);
    let mut ej = Vec::new();
    for e in &entropies.bipartitions {
        et.push(vec![subset_text(&e.subset), fmt_num(e.entropy)]);
        ej.push(json!({ "subset": e.subset.iter().map(|k| k + 1).collect::<Vec<_>>(), "entropy": num(e.entropy) }));
    }
    tables.push(et);

    let concurrence = if shape.levels() == 2 && shape.particles() >= 2 {
        let report = concurrence_report(v)?;
        let mut ct = Table::new("concurrence", &["kind", "particles", "value"]);
        let mut pairs = Vec::new();
        for p in &report.pairwise {
            let pair = [p.pair.0, p.pair.1];
            ct.push(vec!["wootters".into(), subset_text(&pair), fmt_num(p.concurrence)]);
            pairs.push(json!({ "pair": [p.pair.0 + 1, p.pair.1 + 1], "concurrence": num(p.concurrence) }));
        }
        let all: Vec<usize> = (0..shape.particles()).collect();
        ct.push(vec!["spin-flip".into(), subset_text(&all), fmt_num(report.global)]);
        tables.push(ct);
        json!({ "wootters_pairwise": pairs, "spin_flip_global": num(report.global) })
    } else {
        Value::Null
    };

    let sectors = match sectors_for_measure(shape)? {
        Some(sectors) => {
            let weights = sector_projections(v, &sectors)?;
            let mut st = Table::new("sectors", &["lambda", "copy", "weight"]);
            let mut sj = Vec::new();
            for w in &weights {
                st.push(vec![w.lambda.to_string(), w.multiplicity.to_string(), fmt_num(w.weight)]);
                sj.push(json!({ "lambda": w.lambda.parts(), "copy": w.multiplicity, "weight": num(w.weight) }));
            }
            tables.push(st);
            Value::Array(sj)
        }
        None => Value::Null,
    };

    let blocks = product_structure(v)?;
    let mut bt = Table::new("product_blocks", &["block", "basis", "re", "im"]);
    let mut bj = Vec::new();
    for b in &blocks {
        for (basis, re, im) in amplitude_terms(&b.state) {
            bt.push(vec![subset_text(&b.particles), basis, fmt_num(re), fmt_num(im)]);
        }
        bj.push(json!({
            "particles": b.particles.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "terms": terms_json(&b.state),
        }));
    }
    tables.push(bt);

    let mut env = envelope(
        "measure",
        json!({
            "state": path,
            "N": shape.particles(),
            "n": shape.levels(),
            "bipartitions": cuts,
            "input_norm": num(parsed.input_norm),
        }),
        &[
            BITS,
            "particles numbered from 1",
            "wootters: two-particle reductions; spin-flip: whole pure state (zero for odd N)",
            "product blocks split off when a subset entropy is below 1e-9",
            ROUNDING,
        ],
        json!({
            "per_particle_entropy": entropies.per_particle.iter().map(|&e| num(e)).collect::<Vec<_>>(),
            "entropies": ej,
            "concurrence": concurrence,
            "sectors": sectors,
            "product_blocks": bj,
        }),
    );
    env.warnings.extend(parsed.warning.clone());
    if sectors.is_null() {
        env.warnings.push("sector projections skipped: system exceeds the basis construction limits".into());
    }
    Ok(Report { envelope: env, tables })
}

#[derive(Clone, Debug)]
struct StructuralCheck {
    name: String,
    passed: bool,
    detail: String,
}

fn structural_checks() -> Vec<StructuralCheck> {
    let mut checks = Vec::new();
    for particles in 1..=8 {
        for levels in 1..=4 {
            let name = format!("duality N={particles} n={levels}");
            let check = match (decomposition_table(particles, levels), factorial(particles)) {
                (Ok(t), Ok(order)) => {
                    let squares: u128 = t.records.iter().map(|r| r.f * r.f).sum();
                    StructuralCheck {
                        name,
                        passed: t.is_consistent() && squares == order,
                        detail: format!("sum f*d = {} (n^N = {}), sum f^2 = {squares} (N! = {order})", t.total, t.hilbert_dim),
                    }
                }
                (Err(e), _) | (_, Err(e)) => StructuralCheck { name, passed: false, detail: e.to_string() },
            };
            checks.push(check);
        }
    }
    for particles in 1..=6 {
        let name = format!("mes orthonormality N={particles}");
        let check = match generate_mes_basis(particles) {
            Ok(basis) => {
                let states: Vec<&StateVector> = basis.states.iter().map(|s| &s.state).collect();
                let mut off = 0.0f64;
                let mut norm_dev = 0.0f64;
                for (a, va) in states.iter().enumerate() {
                    for (b, vb) in states.iter().enumerate().skip(a) {
                        let g = va.inner(vb).expect("same shape").norm();
                        if a == b {
                            norm_dev = norm_dev.max((g - 1.0).abs());
                        } else {
                            off = off.max(g);
                        }
                    }
                }
                StructuralCheck {
                    name,
                    passed: states.len() == 1 << particles && off < 1e-10 && norm_dev < 1e-10,
                    detail: format!(
                        "{} states, max |off-diagonal| = {}, max |norm - 1| = {}",
                        states.len(),
                        fmt_num(off),
                        fmt_num(norm_dev)
                    ),
                }
            }
            Err(e) => StructuralCheck { name, passed: false, detail: e.to_string() },
        };
        checks.push(check);
    }
    checks
}

/// The report and whether any structural identity or (when `strict`) any
/// claim failed.
pub fn verify(strict: bool) -> (Report, bool) {
    let checks = structural_checks();
    let claims = verify_claims_three_qubit();

    let mut st = Table::new("structural", &["check", "passed", "detail"]);
    for c in &checks {
        st.push(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
    }
    let mut ct = Table::new("claims", &["id", "status", "best_residual", "best_convention", "description"]);
    let mut et = Table::new("evidence", &["id", "convention", "residual", "entropies", "notes"]);
    let mut cj = Vec::new();
    for c in &claims {
        ct.push(vec![
            c.id.clone(),
            c.status.to_string(),
            fmt_num(c.best_residual),
            c.best_convention.clone(),
            c.description.clone(),
        ]);
        let mut evidence = Vec::new();
        for e in &c.evidence {
            let entropies: Vec<String> = e.entropies.iter().map(|&s| fmt_num(s)).collect();
            et.push(vec![c.id.clone(), e.convention.clone(), fmt_num(e.residual), entropies.join(" "), e.notes.clone()]);
            evidence.push(json!({
                "convention": e.convention,
                "residual": num(e.residual),
                "entropies": e.entropies.iter().map(|&s| num(s)).collect::<Vec<_>>(),
                "notes": e.notes,
            }));
        }
        cj.push(json!({
            "id": c.id,
            "description": c.description,
            "status": c.status,
            "best_convention": c.best_convention,
            "best_residual": num(c.best_residual),
            "evidence": evidence,
        }));
    }

    let structural_ok = checks.iter().all(|c| c.passed);
    let claims_ok = claims.iter().all(|c| c.status != ClaimStatus::NotReproduced);
    let failed = !structural_ok || (strict && !claims_ok);
    let payload = json!({
        "structural": checks
            .iter()
            .map(|c| json!({ "check": c.name, "passed": c.passed, "detail": c.detail }))
            .collect::<Vec<_>>(),
        "structural_passed": structural_ok,
        "claims": cj,
        "all_claims_reproduced": claims_ok,
    });
    let report = Report {
        envelope: envelope(
            "verify",
            json!({ "strict": strict }),
            &[
                "barred states are the raw level swap 1 <-> 2, no phase fixing",
                "a claim holds when its residual is below 1e-9",
                "the first convention listed for each claim is the literal reading",
                BITS,
                ROUNDING,
            ],
            payload,
        ),
        tables: vec![st, ct, et],
    };
    (report, failed)
}
