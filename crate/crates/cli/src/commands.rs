//! One function per subcommand. Each returns its table and whether every
//! check it performs passed.

use std::path::{Path, PathBuf};

use hyptest::composite::{
    canonical_realization, composite_sum_error, conjectured_exponent, exponent_series_at,
    extract_params, reduced_eigen, reduced_matrix, rotated_realization, validate_assumptions,
    verify_theorem, FamilyParams, NormBranch, ReducedKind, SpecialFamily,
};
use hyptest::discrimination::{
    binary_optimal_error, chernoff_divergence, classical_optimal, verify_optimality,
    GeneralizedState,
};
use hyptest::linalg::{CMatrix, Projector};
use hyptest::oracle::{chernoff_bruteforce, tensor_error_bruteforce, OracleBudget};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::input::{
    parse_matrix_file, parse_params_file, parse_psd_file, CliError, CliResult, NSpec,
};
use crate::output::{Output, Value};
use crate::row;

pub struct Report {
    pub output: Output,
    pub passed: bool,
    /// Human-readable summary for the error stream.
    pub summary: Vec<String>,
}

impl Report {
    fn ok(output: Output) -> Self {
        Report {
            output,
            passed: true,
            summary: Vec::new(),
        }
    }
}

fn matrix_value(m: &CMatrix) -> Value {
    let n = m.dim();
    let re = (0..n)
        .map(|i| Value::from(m.row(i).iter().map(|z| z.re).collect::<Vec<_>>()))
        .collect();
    let mut fields = vec![
        ("dim".to_string(), Value::from(n)),
        ("re".to_string(), Value::List(re)),
    ];
    if m.as_slice().iter().any(|z| z.im != 0.0) {
        let im = (0..n)
            .map(|i| Value::from(m.row(i).iter().map(|z| z.im).collect::<Vec<_>>()))
            .collect();
        fields.push(("im".to_string(), Value::List(im)));
    }
    Value::Object(fields)
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn state(path: &Path, label: &str) -> CliResult<GeneralizedState> {
    Ok(GeneralizedState::new(label, parse_psd_file(path)?)?)
}

pub fn helstrom(a: &Path, b: &Path) -> CliResult<Report> {
    let (a, b) = (state(a, "A1")?, state(b, "A2")?);
    let best = binary_optimal_error(&a, &b)?;
    let test = &best.test.effects()[0];
    Ok(Report::ok(Output::rows(vec![row![
        "value" => best.value,
        "trace_a" => a.trace(),
        "trace_b" => b.trace(),
        "test_rank" => test.trace().round() as u32,
        "test" => matrix_value(test.matrix()),
    ]])))
}

pub fn classical(paths: &[PathBuf], tol: f64) -> CliResult<Report> {
    if paths.is_empty() {
        return Err(CliError::Parse(
            "classical needs at least one state file".into(),
        ));
    }
    let states = paths
        .iter()
        .enumerate()
        .map(|(i, p)| state(p, &format!("A{}", i + 1)))
        .collect::<CliResult<Vec<_>>>()?;
    let best = classical_optimal(&states)?;
    let certificate = verify_optimality(&states, &best.ml_povm, tol)?;
    let sup: Vec<f64> = best.sup.matrix().diagonal().iter().map(|z| z.re).collect();
    // Outcome chosen at each basis index, counted from 1.
    let assignment: Vec<usize> = (0..sup.len())
        .map(|k| {
            best.ml_povm
                .effects()
                .iter()
                .position(|e| e.matrix()[(k, k)].re > 0.5)
                .map_or(0, |i| i + 1)
        })
        .collect();
    let mut summary = certificate.warnings.clone();
    if !certificate.holds {
        summary.push(format!(
            "optimality condition fails: min gap {:e}",
            certificate.min_gap
        ));
    }
    Ok(Report {
        output: Output::rows(vec![row![
            "value" => best.value,
            "sup_diagonal" => joined(sup.iter().map(|x| crate::output::format_number(*x))),
            "ml_assignment" => joined(&assignment),
            "optimality_holds" => certificate.holds,
            "min_gap" => certificate.min_gap,
            "sup" => sup,
        ]]),
        passed: certificate.holds,
        summary,
    })
}

pub fn chernoff(a: &Path, b: &Path, grid: Option<usize>) -> CliResult<Report> {
    let (a, b) = (parse_psd_file(a)?, parse_psd_file(b)?);
    let result = chernoff_divergence(&a, &b)?;
    let brute = grid.map(|g| chernoff_bruteforce(&a, &b, g)).transpose()?;
    Ok(Report::ok(Output::rows(vec![row![
        "value" => result.value,
        "alpha_star" => result.alpha_star,
        "objective_at_alpha" => result.objective_at_alpha,
        "grid_value" => brute,
    ]])))
}

fn params_row(params: &FamilyParams, violations: &str) -> crate::output::Row {
    let realization = canonical_realization(params).ok().map(|f| f.dim());
    row![
        "p" => params.rho_weight,
        "q" => params.sigma_weight,
        "t" => params.psi_in_p,
        "s" => params.psi_in_q,
        "r" => params.psi_in_pq,
        "R" => params.overlap_rank,
        "branch" => NormBranch::of(params).name(),
        "conjectured" => conjectured_exponent(params),
        "canonical_dim" => realization,
        "violations" => violations,
    ]
}

fn family_from_files(p: &Path, q: &Path, s: &Path) -> CliResult<SpecialFamily> {
    let p_proj = Projector::new(parse_matrix_file(p)?)?;
    let q_proj = Projector::new(parse_matrix_file(q)?)?;
    let pure = Projector::new(parse_matrix_file(s)?)?;
    if pure.rank() != 1 {
        return Err(
            hyptest::Error::InvalidOperand(format!("{} is not a pure state", s.display())).into(),
        );
    }
    let eig = pure.eig();
    let psi = eig.eigenvector(eig.eigenvalues.len() - 1);
    Ok(SpecialFamily::new(p_proj, q_proj, psi)?)
}

/// Extracts parameters from `P`, `Q`, `|ψ><ψ|` files, or validates a
/// parameter file.
pub fn params(states: &[PathBuf], file: Option<&Path>) -> CliResult<Report> {
    match (states, file) {
        ([p, q, s], None) => {
            let family = family_from_files(p, q, s)?;
            let violations = validate_assumptions(&family);
            if violations.is_empty() {
                let params = extract_params(&family)?;
                return Ok(Report::ok(Output::rows(vec![params_row(&params, "")])));
            }
            // Parameters may be out of range once an assumption fails; report
            // what can be read off and the violations.
            let labels = joined(violations.iter().map(|v| v.label()));
            let mut row = match extract_params(&family) {
                Ok(params) => params_row(&params, &labels),
                Err(_) => row!["violations" => labels],
            };
            if row.len() == 1 {
                row.splice(
                    0..0,
                    [
                        "p",
                        "q",
                        "t",
                        "s",
                        "r",
                        "R",
                        "branch",
                        "conjectured",
                        "canonical_dim",
                    ]
                    .map(|k| (k.to_string(), Value::Null)),
                );
            }
            let summary = violations
                .iter()
                .map(|v| format!("assumption {} violated: {}", v.label(), v.description()))
                .collect();
            Ok(Report {
                output: Output::rows(vec![row]),
                passed: false,
                summary,
            })
        }
        ([], Some(path)) => Ok(Report::ok(Output::rows(vec![params_row(
            &parse_params_file(path)?,
            "",
        )]))),
        _ => Err(CliError::Parse(
            "params needs either --states P,Q,PSI or --params FILE".into(),
        )),
    }
}

pub fn reduce(params: &Path, ns: &NSpec) -> CliResult<Report> {
    let params = parse_params_file(params)?;
    let mut rows = Vec::new();
    for &n in &ns.values {
        let eig = reduced_eigen(&params, n);
        let lambda = |k: usize| eig.eigenvalues.get(k).copied();
        rows.push(row![
            "n" => n,
            "kind" => match eig.kind { ReducedKind::A => "A", ReducedKind::B => "B" },
            "lambda_1" => lambda(0),
            "lambda_2" => lambda(1),
            "lambda_3" => lambda(2),
            "lambda_4" => lambda(3),
            "trace" => eig.trace().to_f64(),
            "trace_norm" => eig.trace_norm().to_f64(),
            "negative_excess" => eig.negative_excess.to_f64(),
            "precision_flag" => eig.precision_loss,
            "coeffs" => eig.coeffs.clone(),
            "matrix" => matrix_value(reduced_matrix(&params, n).matrix()),
        ]);
    }
    Ok(Report::ok(Output::rows(rows)))
}

pub fn exponent(params: &Path, ns: &NSpec, jobs: usize) -> CliResult<Report> {
    let params = parse_params_file(params)?;
    let series = exponent_series_at(&params, &ns.values, ns.step, jobs)?;
    let rows = series
        .entries
        .iter()
        .map(|e| {
            row![
                "n" => e.n,
                "log_error" => e.log_error,
                "one_over_n_log" => e.one_over_n_log,
                "slope" => e.slope,
                "precision_flag" => e.precision_loss,
                "conjectured" => series.conjectured,
            ]
        })
        .collect();
    let gap = series.estimate.map(|s| s - series.conjectured);
    let mut output = Output::rows(rows);
    output.fields = row![
        "estimate" => series.estimate,
        "conjectured" => series.conjectured,
        "gap" => gap,
        "first_flagged" => series.first_flagged(),
        "step" => series.step,
    ];
    let summary = vec![format!(
        "estimate {} conjectured {} first flagged n {}",
        series
            .estimate
            .map_or("none".into(), crate::output::format_number),
        crate::output::format_number(series.conjectured),
        series
            .first_flagged()
            .map_or("none".into(), |n| n.to_string()),
    )];
    Ok(Report {
        output,
        passed: true,
        summary,
    })
}

pub fn verify(params: &Path, ns: &NSpec, with_oracle: bool) -> CliResult<Report> {
    let params = parse_params_file(params)?;
    let budget = if with_oracle {
        Some(OracleBudget::from_env()?)
    } else {
        None
    };
    let report = verify_theorem(&params, &ns.values, budget.as_ref())?;
    let rows = report
        .probes
        .iter()
        .map(|p| {
            row![
                "n" => p.n,
                "lower" => p.lower,
                "upper" => p.upper,
                "slope" => p.slope,
                "remainder_ratio" => p.remainder_ratio,
                "precision_flag" => p.precision_loss,
                "sandwich_ok" => p.sandwich_ok,
            ]
        })
        .collect();
    let mut output = Output::rows(rows);
    output.fields = row![
        "branch" => report.branch.name(),
        "conjectured" => report.conjectured,
        "chernoff" => report.chernoff.to_vec(),
        "remainder_decreasing" => report.remainder_decreasing,
        "final_gap" => report.final_gap,
        "passed" => report.passed(),
    ];
    let mut summary = vec![format!(
        "branch {}; remainder decreasing: {}; sandwich: {}; final gap {}",
        report.branch.name(),
        report.remainder_decreasing,
        report.sandwich_ok(),
        report
            .final_gap
            .map_or("none".into(), crate::output::format_number),
    )];
    if let Some(oracle) = &report.oracle {
        let agreements = oracle
            .agreements
            .iter()
            .map(|a| {
                Value::Object(row![
                    "n" => a.n,
                    "reduced" => a.reduced,
                    "bruteforce" => a.bruteforce,
                    "abs_diff" => a.diff(),
                ])
            })
            .collect();
        output.fields.push((
            "oracle".into(),
            Value::Object(row![
                "dim" => oracle.dim,
                "max_diff" => oracle.max_diff(),
                "skipped" => Value::List(oracle.skipped.iter().map(|&n| Value::from(n)).collect()),
                "chernoff_numeric" => oracle.chernoff_numeric.to_vec(),
                "chernoff_ok" => oracle.chernoff_ok,
                "agreements" => Value::List(agreements),
            ]),
        ));
        let agreement = if oracle.agreements.is_empty() {
            "no probe fits the dense budget".to_string()
        } else {
            format!("max |reduced - dense| {:e}", oracle.max_diff())
        };
        summary.push(format!(
            "oracle: dim {}, {agreement}, Chernoff closed forms {}",
            oracle.dim,
            if oracle.chernoff_ok {
                "confirmed"
            } else {
                "NOT confirmed"
            }
        ));
    }
    Ok(Report {
        output,
        passed: report.passed(),
        summary,
    })
}

/// Dense `n`-copy error on the canonical (or a randomly rotated)
/// realization against the reduced computation.
pub fn oracle(
    params: &Path,
    ns: &NSpec,
    rotate: Option<usize>,
    seed: u64,
    tol: f64,
) -> CliResult<Report> {
    let params = parse_params_file(params)?;
    let budget = OracleBudget::from_env()?;
    let family = match rotate {
        Some(extra) => rotated_realization(&params, extra, &mut ChaCha8Rng::seed_from_u64(seed))?,
        None => canonical_realization(&params)?,
    };
    let mut rows = Vec::new();
    let mut passed = true;
    for &n in &ns.values {
        let dense = tensor_error_bruteforce(&family, n, &budget)?;
        let reduced = composite_sum_error(&params, n).to_f64();
        let diff = (dense - reduced).abs();
        passed &= diff <= tol;
        rows.push(row![
            "n" => n,
            "dim" => family.dim().pow(n),
            "bruteforce" => dense,
            "reduced" => reduced,
            "abs_diff" => diff,
            "agree" => diff <= tol,
        ]);
    }
    let summary = if passed {
        Vec::new()
    } else {
        vec![format!(
            "dense and reduced errors differ by more than {tol:e}"
        )]
    };
    Ok(Report {
        output: Output::rows(rows),
        passed,
        summary,
    })
}
