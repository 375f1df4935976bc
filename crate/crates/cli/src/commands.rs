use std::path::{Path, PathBuf};

use eigenid::{
    eigendecompose, random_hermitian, recover_constraint, run_experiment, signs_from_pattern, stationary_values,
    DeflationMode, Experiment, ExperimentConfig, ExperimentReport, HermitianMatrix64,
};
use serde::Serialize;

use crate::error::{CliError, Result, Status};
use crate::io::{self, Entry, Format, ReportFile};

/// Recovery passes when the stationary values are reproduced this closely.
pub const RECOVERY_TOL: f64 = 1e-8;

pub fn generate(n: usize, seed: u64, complex: bool, out: &Path, format: Option<Format>) -> Result<Status> {
    if n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    let a = random_hermitian::<f64>(n, seed, complex);
    io::write_matrix(out, format, &a, complex)?;
    Ok(Status::Pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExperimentChoice {
    All,
    Minors,
    IdentityBasis,
    ArbitraryBasis,
}

impl ExperimentChoice {
    fn experiments(self) -> Vec<Experiment> {
        match self {
            ExperimentChoice::All => Experiment::ALL.to_vec(),
            ExperimentChoice::Minors => vec![Experiment::Minors],
            ExperimentChoice::IdentityBasis => vec![Experiment::IdentityBasis],
            ExperimentChoice::ArbitraryBasis => vec![Experiment::ArbitraryBasis],
        }
    }
}

pub enum Instance {
    File {
        path: PathBuf,
        format: Option<Format>,
        symmetrize: bool,
    },
    Random {
        n: usize,
        seed: u64,
        complex: bool,
    },
}

pub struct VerifyOptions {
    pub experiment: ExperimentChoice,
    pub eps: f64,
    pub mode: DeflationMode,
    pub basis_seed: Option<u64>,
    pub json: Option<PathBuf>,
}

pub fn verify(instance: Instance, opts: &VerifyOptions) -> Result<Status> {
    if !(opts.eps > 0.0) {
        return Err(CliError::Usage(format!("--eps must be positive, got {}", opts.eps)));
    }
    let (a, seed) = match instance {
        Instance::File {
            path,
            format,
            symmetrize,
        } => (io::read_hermitian(&path, format, symmetrize)?, None),
        Instance::Random { n, seed, complex } => {
            if n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            (random_hermitian::<f64>(n, seed, complex), Some(seed))
        }
    };
    let config = ExperimentConfig {
        tolerance: opts.eps,
        mode: opts.mode,
        seed,
        basis_seed: opts.basis_seed.unwrap_or(seed.unwrap_or(0).wrapping_add(1000)),
    };
    let reports: Vec<ExperimentReport> = opts
        .experiment
        .experiments()
        .into_iter()
        .map(|e| run_experiment(&a, e, &config))
        .collect();
    for r in &reports {
        println!("{}", summary_line(r));
    }
    let file = ReportFile::new(reports);
    println!("all_passed: {}", file.all_passed);
    if let Some(path) = &opts.json {
        io::emit_json(path, &file)?;
    }
    Ok(if file.all_passed {
        Status::Pass
    } else if file.reports.iter().any(ExperimentReport::is_degenerate) {
        Status::Degenerate
    } else {
        Status::Mismatch
    })
}

fn summary_line(r: &ExperimentReport) -> String {
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    let err = r.max_abs_error.map_or_else(|| "-".to_owned(), |e| format!("{e:.3e}"));
    let mode = match r.mode {
        Some(DeflationMode::Restriction) => " mode=restriction",
        Some(DeflationMode::PaperDropSmallest) => " mode=paper-drop-smallest",
        None => "",
    };
    let mut line = format!(
        "{verdict} {} n={}{mode} max_abs_error={err} eps={:e} ({:.2}s)",
        r.experiment.name(),
        r.n,
        r.tolerance,
        r.wall_time
    );
    if let Some(reason) = &r.reason {
        line.push_str(&format!(" [{reason}]"));
    }
    line
}

#[derive(Debug, Serialize)]
struct RecoveryFile {
    n: usize,
    targets: Vec<f64>,
    constraint: Vec<Entry>,
    weights: Vec<f64>,
    residual: f64,
    passed: bool,
}

/// `+`/`-` per eigenvector; empty means all positive.
fn parse_signs(pattern: &str, n: usize) -> Result<Vec<bool>> {
    if pattern.is_empty() {
        return Ok(vec![true; n]);
    }
    let signs: Vec<bool> = pattern
        .chars()
        .map(|c| match c {
            '+' => Ok(true),
            '-' => Ok(false),
            _ => Err(CliError::Usage(format!(
                "sign pattern may only contain '+' and '-', found {c:?}"
            ))),
        })
        .collect::<Result<_>>()?;
    if signs.len() != n {
        return Err(CliError::Usage(format!(
            "sign pattern has {} entries, expected {n}",
            signs.len()
        )));
    }
    Ok(signs)
}

pub fn recover(
    matrix: &Path,
    format: Option<Format>,
    symmetrize: bool,
    targets: &str,
    signs: &str,
    json: Option<&Path>,
) -> Result<Status> {
    let a: HermitianMatrix64 = io::read_hermitian(matrix, format, symmetrize)?;
    let n = a.dim();
    let targets = io::parse_reals(targets)?;
    let signs = signs_from_pattern::<f64>(&parse_signs(signs, n)?);
    let decomp = eigendecompose(&a)?;
    let rec = recover_constraint(&decomp, &targets, &signs)?;
    let achieved = stationary_values(&a, &rec.constraint)?;
    let residual = achieved
        .iter()
        .zip(&targets)
        .map(|(x, t)| (x - t).abs())
        .fold(0.0, f64::max);
    let passed = residual < RECOVERY_TOL;

    let c = rec.constraint.as_vector();
    let complex = c.iter().any(|z| z.im != 0.0);
    let shown: Vec<String> = c
        .iter()
        .map(|z| {
            if complex {
                format!("{}{:+}i", z.re, z.im)
            } else {
                format!("{}", z.re)
            }
        })
        .collect();
    println!("c = [{}]", shown.join(", "));
    println!(
        "d^2 = [{}]",
        rec.weights.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")
    );
    println!("residual = {residual:e}");

    if let Some(path) = json {
        let file = RecoveryFile {
            n,
            targets,
            constraint: c
                .iter()
                .map(|z| {
                    if complex {
                        Entry::Complex([z.re, z.im])
                    } else {
                        Entry::Real(z.re)
                    }
                })
                .collect(),
            weights: rec.weights.clone(),
            residual,
            passed,
        };
        io::emit_json(path, &file)?;
    }
    Ok(if passed { Status::Pass } else { Status::Mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_patterns() {
        assert_eq!(parse_signs("", 3).unwrap(), vec![true; 3]);
        assert_eq!(parse_signs("+-+", 3).unwrap(), vec![true, false, true]);
        assert!(parse_signs("+-", 3).is_err());
        assert!(parse_signs("+x+", 3).is_err());
    }
}
