use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use serde_json::{json, Value};

use surflap_core::diagram::shadings;
use surflap_core::io::{
    connection_string, read_diagram, read_diagram_file, read_graph, write_graph,
};
use surflap_core::laplacian::CRSF_EDGE_LIMIT;
use surflap_core::ring::parse_monomial;
use surflap_core::{
    determinant, forman_sum, genus_certificate, integer_specialization, laplacian_matrix,
    medial_graph, module_invariants, pair_invariant, random_graph, skein_eval, DiagramError,
    EdgeId, LaurentPoly, Monomial, RandomGraphParams, Shading, Sign, SignedGraph, VariableSet,
    VertexId,
};

use crate::report::RunReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Det,
    Skein,
    Forman,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DiagramAction {
    Check,
    Medial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Rg1Remove {
        vertex: u32,
    },
    Rg1Add {
        anchor: u32,
        sign: i64,
        connection: Option<String>,
    },
    Rg2Add {
        u1: u32,
        u2: u32,
        connection: Option<String>,
    },
    Rg2Remove {
        u1: u32,
        u2: u32,
    },
    Rg3 {
        vertex: u32,
    },
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_graph(path: &Path, bytes: &[u8]) -> Result<SignedGraph> {
    let text =
        std::str::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    read_graph(text).with_context(|| format!("invalid graph file {}", path.display()))
}

fn poly_value(p: &LaurentPoly) -> Value {
    Value::String(p.canonical_string())
}

fn monomials(vars: VariableSet, ms: &[Monomial]) -> Value {
    ms.iter()
        .map(|m| connection_string(vars, m))
        .collect::<Vec<_>>()
        .into()
}

pub fn cmd_poly(path: &Path, method: Method) -> Result<RunReport> {
    let bytes = read_input(path)?;
    let g = load_graph(path, &bytes)?;
    let name = format!("{:?}", method).to_lowercase();
    let mut report = RunReport::new(format!("poly --method {name}"), &[&bytes]);
    let wants = |m: Method| method == m || method == Method::All;
    if wants(Method::Forman) && g.num_edges() > CRSF_EDGE_LIMIT {
        bail!(
            "forman method supports at most {CRSF_EDGE_LIMIT} edges, graph has {}",
            g.num_edges()
        );
    }
    let mut values = Vec::new();
    if wants(Method::Det) {
        values.push(("det", determinant(&laplacian_matrix(&g))));
    }
    if wants(Method::Skein) {
        values.push(("skein", skein_eval(&g)));
    }
    if wants(Method::Forman) {
        values.push(("forman", forman_sum(&g)?));
    }
    for (label, p) in &values {
        report.push(*label, poly_value(p));
    }
    if method == Method::All {
        report.verdict(values.windows(2).all(|w| w[0].1 == w[1].1));
    }
    Ok(report)
}

pub fn cmd_module(path: &Path) -> Result<RunReport> {
    let bytes = read_input(path)?;
    let g = load_graph(path, &bytes)?;
    let mut report = RunReport::new("module", &[&bytes]);
    let m = laplacian_matrix(&g);
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| {
            Value::String(
                r.iter()
                    .map(|p| format!("[{}]", p.canonical_string()))
                    .collect::<Vec<_>>()
                    .join(" "),
            )
        })
        .collect();
    let ints: Vec<Value> = integer_specialization(&m)
        .to_rows()
        .iter()
        .map(|r| {
            Value::String(
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            )
        })
        .collect();
    report.push("laplacian", rows);
    report.push("integer_matrix", ints);
    report.push("invariants", module_invariants(&g).to_string());
    Ok(report)
}

pub fn cmd_genus(path: &Path, dual: Option<&Path>) -> Result<RunReport> {
    let bytes = read_input(path)?;
    let g = load_graph(path, &bytes)?;
    let dual_input = dual.map(|p| read_input(p).map(|b| (p, b))).transpose()?;
    let gstar = dual_input
        .as_ref()
        .map(|(p, b)| load_graph(p, b))
        .transpose()?;
    let mut inputs: Vec<&[u8]> = vec![&bytes];
    let mut command = "genus".to_string();
    if let Some((p, b)) = &dual_input {
        inputs.push(b);
        command.push_str(&format!(
            " --dual {}",
            p.file_name()
                .map(|n| n.to_string_lossy())
                .unwrap_or_default()
        ));
    }
    if let Some(h) = &gstar {
        ensure!(
            h.vars() == g.vars(),
            "graph has genus {} but dual has genus {}",
            g.vars().genus(),
            h.vars().genus()
        );
    }
    let mut report = RunReport::new(command, &inputs);
    let vars = g.vars();
    let delta = determinant(&laplacian_matrix(&g));
    let delta_star = gstar.as_ref().map(|h| determinant(&laplacian_matrix(h)));
    let cert = genus_certificate(&delta, delta_star.as_ref(), vars.genus())?;
    report.push("genus", vars.genus());
    report.push("delta", poly_value(&delta));
    report.push("rank", cert.rank_g);
    report.push("witness", monomials(vars, &cert.witness_g));
    if let (Some(h), Some(ds)) = (&gstar, &delta_star) {
        report.push("dual_delta", poly_value(ds));
        report.push("dual_rank", cert.rank_gstar.unwrap_or(0));
        report.push(
            "dual_witness",
            monomials(vars, cert.witness_gstar.as_deref().unwrap_or(&[])),
        );
        let (a, b) = pair_invariant(&g, h)?.canonical_strings();
        report.push("pair", vec![a, b]);
    }
    let verdict = match cert.virtual_genus() {
        Some(vg) => format!("vg = {vg} (certified)"),
        None => "inconclusive".to_string(),
    };
    report.push("certificate", verdict);
    Ok(report)
}

fn connection_arg(vars: VariableSet, text: Option<&str>) -> Result<Monomial> {
    match text {
        None => Ok(Monomial::one(vars)),
        Some(t) => parse_monomial(vars, t).with_context(|| format!("invalid connection {t:?}")),
    }
}

pub fn cmd_moves(path: &Path, mv: &Move, output: Option<&Path>) -> Result<RunReport> {
    let bytes = read_input(path)?;
    let g = load_graph(path, &bytes)?;
    let vars = g.vars();
    let (label, after) = match mv {
        Move::Rg1Remove { vertex } => (
            format!("rg1 remove {vertex}"),
            g.rg1_remove(VertexId(*vertex))?,
        ),
        Move::Rg1Add {
            anchor,
            sign,
            connection,
        } => {
            let sign = Sign::from_i64(*sign)
                .with_context(|| format!("sign must be 1 or -1, got {sign}"))?;
            let phi = connection_arg(vars, connection.as_deref())?;
            let w = g.next_vertex_id();
            (
                format!("rg1 add {anchor}"),
                g.rg1_add(VertexId(*anchor), w, g.next_edge_id(), sign, phi)?,
            )
        }
        Move::Rg2Add { u1, u2, connection } => {
            let phi = connection_arg(vars, connection.as_deref())?;
            let e = g.next_edge_id();
            let ids = (e, EdgeId(e.0 + 1));
            (
                format!("rg2 add {u1} {u2}"),
                g.rg2_add(VertexId(*u1), VertexId(*u2), ids, phi)?,
            )
        }
        Move::Rg2Remove { u1, u2 } => (
            format!("rg2 remove {u1} {u2}"),
            g.rg2_remove(VertexId(*u1), VertexId(*u2))?,
        ),
        Move::Rg3 { vertex } => (format!("rg3 {vertex}"), g.rg3(VertexId(*vertex))?),
    };
    let mut report = RunReport::new(format!("moves {label}"), &[&bytes]);
    let (d0, d1) = (
        determinant(&laplacian_matrix(&g)),
        determinant(&laplacian_matrix(&after)),
    );
    let (m0, m1) = (module_invariants(&g), module_invariants(&after));
    let delta_ok = d0 == d1 || d0 == -&d1;
    report.push("delta_before", poly_value(&d0));
    report.push("delta_after", poly_value(&d1));
    report.push("module_before", m0.to_string());
    report.push("module_after", m1.to_string());
    let mut ok = delta_ok && m0 == m1;
    if matches!(mv, Move::Rg2Add { .. } | Move::Rg2Remove { .. }) {
        let same = laplacian_matrix(&g) == laplacian_matrix(&after);
        report.push("laplacian_unchanged", same);
        ok &= same;
    }
    let text = write_graph(&after);
    match output {
        Some(out) => {
            fs::write(out, &text).with_context(|| format!("cannot write {}", out.display()))?;
            report.push("output", out.display().to_string());
        }
        None => report.push("graph", serde_json::from_str::<Value>(&text)?),
    }
    report.verdict(ok);
    Ok(report)
}

fn shading_value(s: &Shading) -> Value {
    json!({
        "shaded": s.shaded.iter().map(|r| r.0).collect::<Vec<_>>(),
        "unshaded": s.unshaded.iter().map(|r| r.0).collect::<Vec<_>>(),
    })
}

fn shading_line(s: &Shading) -> String {
    let ids = |set: &std::collections::BTreeSet<surflap_core::RegionId>| {
        set.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "shaded {{{}}} unshaded {{{}}}",
        ids(&s.shaded),
        ids(&s.unshaded)
    )
}

pub fn cmd_diagram(
    path: &Path,
    action: DiagramAction,
    output: Option<&Path>,
    machine: bool,
) -> Result<RunReport> {
    let bytes = read_input(path)?;
    let text =
        std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    match action {
        DiagramAction::Check => {
            let file = read_diagram_file(text)
                .with_context(|| format!("invalid diagram file {}", path.display()))?;
            let mut report = RunReport::new("diagram check", &[&bytes]);
            match shadings(&file.region_ids(), &file.arc_pairs()) {
                Ok(pair) => {
                    report.push("colorable", true);
                    let values: Vec<Value> = if machine {
                        pair.iter().map(shading_value).collect()
                    } else {
                        pair.iter()
                            .map(|s| Value::String(shading_line(s)))
                            .collect()
                    };
                    report.push("shadings", values);
                }
                Err(DiagramError::OddCycle(cycle)) => {
                    report.push("colorable", false);
                    report.push("verdict", DiagramError::OddCycle(cycle.clone()).to_string());
                    report.push("odd_cycle", cycle.iter().map(|r| r.0).collect::<Vec<_>>());
                }
                Err(e) => {
                    return Err(e)
                        .with_context(|| format!("invalid diagram file {}", path.display()))
                }
            }
            Ok(report)
        }
        DiagramAction::Medial => {
            let d = read_diagram(text)
                .with_context(|| format!("invalid diagram file {}", path.display()))?;
            let g = medial_graph(&d)?;
            let mut report = RunReport::new("diagram medial", &[&bytes]);
            let out = write_graph(&g);
            report.push("vertices", g.num_vertices());
            report.push("edges", g.num_edges());
            match output {
                Some(p) => {
                    fs::write(p, &out).with_context(|| format!("cannot write {}", p.display()))?;
                    report.push("output", p.display().to_string());
                }
                None => report.push("graph", serde_json::from_str::<Value>(&out)?),
            }
            Ok(report)
        }
    }
}

/// Seeded self-check: triple agreement, symmetry and augmentation of `Δ`,
/// and invariance under an RG1 and an RG2 insertion, on random graphs.
pub fn cmd_selftest(seed: u64, count: u32) -> Result<RunReport> {
    ensure!(count > 0, "count must be positive");
    let mut report = RunReport::new(format!("selftest --seed {seed} --count {count}"), &[]);
    let mut failures = Vec::new();
    for i in 0..count {
        let s = seed.wrapping_add(i as u64);
        let params = RandomGraphParams {
            vertices: 1 + (s % 5) as u32,
            edges: (s / 5 % 8) as u32,
            genus: 1 + (s / 40 % 2) as usize,
            max_exponent: 2,
        };
        let g = random_graph(s, params);
        let det = determinant(&laplacian_matrix(&g));
        let mut problems = Vec::new();
        if skein_eval(&g) != det {
            problems.push("skein");
        }
        if forman_sum(&g)? != det {
            problems.push("forman");
        }
        if det.bar() != det {
            problems.push("bar");
        }
        if det.augment() != Default::default() {
            problems.push("augment");
        }
        let vars = g.vars();
        let phi = Monomial::from_exponents(
            (0..vars.len())
                .map(|k| (k as i32 % 3) - 1)
                .collect::<Vec<_>>(),
        );
        let grown = g.rg1_add(
            VertexId(0),
            g.next_vertex_id(),
            g.next_edge_id(),
            Sign::Minus,
            phi.clone(),
        )?;
        let d1 = determinant(&laplacian_matrix(&grown));
        if (d1 != det && d1 != -&det) || module_invariants(&grown) != module_invariants(&g) {
            problems.push("rg1");
        }
        let e = g.next_edge_id();
        let paired = g.rg2_add(VertexId(0), VertexId(0), (e, EdgeId(e.0 + 1)), phi)?;
        if laplacian_matrix(&paired) != laplacian_matrix(&g) {
            problems.push("rg2");
        }
        if !problems.is_empty() {
            failures.push(format!("seed {s}: {}", problems.join(", ")));
        }
    }
    report.push("graphs", count);
    report.push("failures", failures.clone());
    report.verdict(failures.is_empty());
    Ok(report)
}
