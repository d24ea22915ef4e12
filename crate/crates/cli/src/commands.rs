use std::fs;

use num_complex::Complex64;
use serde::Serialize;

use cosphere::clutching::{
    transition_from_chart_change, torus_map_k1_matrix, winding_number, ChartChange, LoopSample,
    TorusMap,
};
use cosphere::error::{Error, Result};
use cosphere::exactseq::{parse_diagram, solve_all, FactFlag, INDEX_MAP_SURJECTIVE};
use cosphere::fgab::{snf, IntMatrix};
use cosphere::forms::{
    chern_character, closedness_defect, grassmannian_curvature, multi_indices, reality_defect,
    tau_k,
};
use cosphere::sphere::{sphere_report, KTheoryConfig, PipelineConfig, QuadratureSpec};

use crate::problem::ChernProblem;

fn read_file(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: None,
        msg: format!("cannot read `{path}`: {e}"),
    })
}

fn emit(json: String, path: Option<&str>) -> Result<()> {
    match path {
        None => {
            print!("{json}");
            Ok(())
        }
        Some(p) => fs::write(p, json).map_err(|e| Error::Parse {
            line: None,
            msg: format!("cannot write `{p}`: {e}"),
        }),
    }
}

/// Matrix files: either a bracketed literal or one whitespace-separated row
/// per line; `#` starts a comment.
fn parse_matrix_file(text: &str) -> Result<IntMatrix> {
    let meaningful: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if meaningful.is_empty() {
        return Err(Error::Parse {
            line: None,
            msg: "empty matrix file".into(),
        });
    }
    if meaningful[0].1.starts_with('[') {
        let joined: String = meaningful.iter().map(|(_, l)| *l).collect();
        return IntMatrix::parse(&joined);
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (lineno, line) in &meaningful {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    line: Some(*lineno),
                    msg: format!("invalid integer `{tok}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: Some(*lineno),
                    msg: format!(
                        "row has {} entries but previous rows have {}",
                        row.len(),
                        first.len()
                    ),
                });
            }
        }
        rows.push(row);
    }
    IntMatrix::from_rows(&rows)
}

pub fn cmd_snf(file: &str) -> Result<()> {
    let m = parse_matrix_file(&read_file(file)?)?;
    let dec = snf(&m);
    println!("M = {m}");
    println!("S = {}", dec.s);
    println!("U = {}", dec.u);
    println!("V = {}", dec.v);
    let check = dec.u.mul(&m)?.mul(&dec.v)?;
    debug_assert_eq!(check, dec.s);
    println!(
        "invariant factors: [{}]",
        dec.diagonal()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    Ok(())
}

pub fn cmd_solve(file: &str, json: Option<&str>) -> Result<()> {
    let diagram = parse_diagram(&read_file(file)?)?;
    let solved = solve_all(&diagram)?;
    let mut out = serde_json::to_string_pretty(&solved).expect("serializable");
    out.push('\n');
    emit(out, json)
}

fn parse_loop_csv(text: &str) -> Result<LoopSample> {
    let mut samples = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (re, im) = line.split_once(',').ok_or_else(|| Error::Parse {
            line: Some(lineno + 1),
            msg: format!("expected `re,im`, got `{line}`"),
        })?;
        let parse = |tok: &str| -> Result<f64> {
            tok.trim().parse().map_err(|_| Error::Parse {
                line: Some(lineno + 1),
                msg: format!("invalid number `{tok}`"),
            })
        };
        samples.push(Complex64::new(parse(re)?, parse(im)?));
    }
    LoopSample::new(samples)
}

pub fn cmd_winding(file: &str) -> Result<()> {
    let loop_sample = parse_loop_csv(&read_file(file)?)?;
    let w = winding_number(&loop_sample)?;
    println!("{w}");
    Ok(())
}

#[derive(Serialize)]
struct TransitionSample {
    z: [f64; 2],
    w: [f64; 2],
    image: [[f64; 2]; 2],
}

#[derive(Serialize)]
struct TransitionReport {
    chart: String,
    grid: usize,
    winding_samples: usize,
    k1_matrix: String,
    samples: Vec<TransitionSample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sup_error_vs_closed_form: Option<f64>,
}

pub fn cmd_transition(
    chart_name: &str,
    grid: usize,
    samples: usize,
    json: Option<&str>,
) -> Result<()> {
    let chart = match chart_name {
        "stereographic" => ChartChange::stereographic(),
        "identity" => ChartChange::identity(),
        other => {
            return Err(Error::Parse {
                line: None,
                msg: format!("unknown chart `{other}` (expected stereographic or identity)"),
            })
        }
    };
    let map = transition_from_chart_change(&chart, grid)?;
    let k1 = torus_map_k1_matrix(&map, samples)?;
    let mut sampled = Vec::new();
    let emit_res = 8usize;
    for i in 0..emit_res {
        for j in 0..emit_res {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * i as f64 / emit_res as f64);
            let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / emit_res as f64);
            let (a, b) = map.eval(z, w);
            sampled.push(TransitionSample {
                z: [z.re, z.im],
                w: [w.re, w.im],
                image: [[a.re, a.im], [b.re, b.im]],
            });
        }
    }
    let sup = (chart_name == "stereographic")
        .then(|| map.sup_distance_on_grid(&TorusMap::cosphere_closed_form(), grid));
    let report = TransitionReport {
        chart: chart_name.to_string(),
        grid,
        winding_samples: samples,
        k1_matrix: k1.to_string(),
        samples: sampled,
        sup_error_vs_closed_form: sup,
    };
    let mut out = serde_json::to_string_pretty(&report).expect("serializable");
    out.push('\n');
    emit(out, json)
}

#[derive(Serialize)]
struct CochainValue {
    indices: Vec<usize>,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct CochainReport {
    degree: usize,
    values: Vec<CochainValue>,
    closedness_defect: f64,
    closed: bool,
}

#[derive(Serialize)]
struct RealityReport {
    k: usize,
    max_imag: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ChernReport {
    matrix_size: usize,
    lie_dimension: usize,
    trace_normalization: f64,
    validated: Vec<String>,
    cochains: Vec<CochainReport>,
    reality: Vec<RealityReport>,
}

pub fn cmd_chern(
    file: &str,
    validation_tol: f64,
    identity_tol: f64,
    json: Option<&str>,
) -> Result<()> {
    if validation_tol <= 0.0 || identity_tol <= 0.0 {
        return Err(Error::Validation("tolerances must be positive".into()));
    }
    let problem = ChernProblem::parse(&read_file(file)?)?;
    let (alg, projection, trace, k_max) = problem.build(validation_tol)?;

    let cochains = chern_character(&projection, &alg, &trace, k_max)?;
    let mut cochain_reports = Vec::new();
    for (k, cochain) in cochains.iter().enumerate() {
        let defect = closedness_defect(cochain, alg.lie())?;
        let mut values = Vec::new();
        for idx in multi_indices(alg.lie().dim(), cochain.degree()) {
            let v = cochain.coeff(&idx);
            values.push(CochainValue {
                indices: idx,
                re: v.re,
                im: v.im,
            });
        }
        cochain_reports.push(CochainReport {
            degree: 2 * k,
            values,
            closedness_defect: defect,
            closed: defect <= identity_tol,
        });
    }
    let mut reality = Vec::new();
    for k in 0..=k_max {
        let max_imag = reality_defect(&projection, &alg, &trace, k)?;
        reality.push(RealityReport {
            k,
            max_imag,
            pass: max_imag <= identity_tol,
        });
    }
    // τ₁ of the grassmannian curvature must be closed as well
    let theta = grassmannian_curvature(&projection, &alg)?;
    let t1 = tau_k(&[theta], &trace)?;
    let theta_defect = closedness_defect(&t1, alg.lie())?;

    let report = ChernReport {
        matrix_size: alg.matrix_size(),
        lie_dimension: alg.lie().dim(),
        trace_normalization: trace.normalization(),
        validated: vec![
            "lie algebra: antisymmetry and Jacobi".into(),
            "representation: derivation and bracket realization".into(),
            "projection: idempotent and self-adjoint".into(),
            "trace: tracial, positive, invariant".into(),
            format!("tau of curvature closed (defect {theta_defect:.3e})"),
        ],
        cochains: cochain_reports,
        reality,
    };
    if report.cochains.iter().any(|c| !c.closed) || report.reality.iter().any(|r| !r.pass) {
        return Err(Error::NumericalGuard(
            "a character identity check failed; see the report fields".into(),
        ));
    }
    let mut out = serde_json::to_string_pretty(&report).expect("serializable");
    out.push('\n');
    emit(out, json)
}

pub fn cmd_sphere_report(
    quad: Option<&str>,
    normalization: Option<f64>,
    fact_names: &[String],
    json: Option<&str>,
) -> Result<()> {
    let (l, m, f) = match quad {
        None => (32, 64, 32),
        Some(spec) => {
            let parts: Vec<_> = spec.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    line: None,
                    msg: format!("--quad expects L,M,F, got `{spec}`"),
                });
            }
            let parse = |tok: &str| -> Result<usize> {
                tok.parse().map_err(|_| Error::Parse {
                    line: None,
                    msg: format!("invalid grid order `{tok}`"),
                })
            };
            (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
        }
    };
    let quad = QuadratureSpec::new(l, m, f, normalization.unwrap_or(1.0))?;
    let mut facts = Vec::new();
    for name in fact_names {
        if name == INDEX_MAP_SURJECTIVE {
            facts.push(FactFlag::index_map_surjective());
        } else {
            return Err(Error::Parse {
                line: None,
                msg: format!("unknown fact `{name}` (expected {INDEX_MAP_SURJECTIVE})"),
            });
        }
    }
    let config = PipelineConfig {
        quad,
        ktheory: KTheoryConfig::default(),
        facts,
    };
    let report = sphere_report(&config)?;
    emit(report.to_json(), json)
}
