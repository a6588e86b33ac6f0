//! Tolerances of the acceptance run and its one-line-per-criterion report.

use std::fmt;
use std::process::ExitCode;

pub mod tol {
    /// Closed-form symbols against direct evaluation, absolute.
    pub const SYMBOL: f64 = 1e-12;
    /// Numerical Mellin transform of `1/(π(1 + t))`, absolute.
    pub const MELLIN: f64 = 1e-8;
    /// Mellin against Nyström solutions, relative L².
    pub const SOLVER_AGREEMENT: f64 = 1e-4;
    pub const SOLVER_RESIDUAL: f64 = 1e-5;
    /// Extrapolated double-layer limit against `v/2`, sup.
    pub const PLEMELJ: f64 = 1e-4;
    /// Reconstructed against exact harmonic function, relative sup.
    pub const BVP: f64 = 1e-3;
    /// Edge limits at the corners of the rectangle, absolute.
    pub const CORNER: f64 = 1e-8;
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn new(id: u32, name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            id,
            name,
            pass,
            detail: detail.into(),
        }
    }

    pub fn error(id: u32, name: &'static str, err: impl fmt::Display) -> Self {
        Self::new(id, name, false, format!("error: {err}"))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

/// Prints the tally and fails when any criterion failed.
pub fn finish(outcomes: &[Outcome]) -> ExitCode {
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("acceptance: {passed}/{} criteria passed", outcomes.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
