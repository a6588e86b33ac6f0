//! Parameter documents of the subcommands. Every field has a default, so an
//! empty document `{"schema_version": 1}` runs the reference configuration.

use crate::bie_solver::Method;
use crate::error::{Error, Result};
use crate::mellin_core::{ComplexJson, KernelDocument};
use crate::potential_theory::{BvpOptions, ExtensionMode, HarmonicCase};
use crate::symbol_calculus::Closure;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Operator `d0 I + Σ d_j K¹_{c_j}` for the `symbol` and `index` commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeDoc {
    pub d0: ComplexJson,
    pub terms: Vec<CompositeTerm>,
    #[serde(default)]
    pub gamma: Option<ComplexJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeTerm {
    pub d: ComplexJson,
    pub c: ComplexJson,
}

/// Mellin symbol of `c0 I + c1 S + K` against the numerical transform of `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelParams {
    pub document: KernelDocument,
    pub beta: f64,
    pub xi_max: f64,
    pub xi_points: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
}

impl Default for KernelParams {
    fn default() -> Self {
        let k1 = crate::bie_solver::k1_minus_one();
        let z = num_complex::Complex64::new(0.0, 0.0);
        KernelParams {
            document: KernelDocument::from_parts(&k1, z, z),
            beta: 0.25,
            xi_max: 10.0,
            xi_points: 201,
            t_min: 1e-60,
            t_max: 1e60,
            n: 32768,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SymbolParams {
    pub schema_version: u32,
    pub p: f64,
    pub r: f64,
    pub samples_per_edge: usize,
    pub closure: Closure,
    /// Replaces the system symbol by a scalar composite.
    pub composite: Option<CompositeDoc>,
    pub kernel: Option<KernelParams>,
}

impl Default for SymbolParams {
    fn default() -> Self {
        SymbolParams {
            schema_version: crate::SCHEMA_VERSION,
            p: 2.0,
            r: -0.5,
            samples_per_edge: 1025,
            closure: Closure::Localized,
            composite: None,
            kernel: None,
        }
    }
}

/// BVP criterion table over `s ∈ (1/p, s_max]` in steps of `s_step`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CriterionParams {
    pub p_values: Vec<f64>,
    pub s_max: f64,
    pub s_step: f64,
}

impl Default for CriterionParams {
    fn default() -> Self {
        CriterionParams {
            p_values: vec![1.5, 2.0, 3.0],
            s_max: 3.0,
            s_step: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanParams {
    pub schema_version: u32,
    pub p_min: f64,
    pub p_max: f64,
    pub p_step: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub r_step: f64,
    pub samples_per_edge: usize,
    pub closure: Closure,
    pub tolerance: f64,
    pub anchor: [f64; 2],
    pub criterion: Option<CriterionParams>,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            schema_version: crate::SCHEMA_VERSION,
            p_min: 1.5,
            p_max: 3.0,
            p_step: 0.05,
            r_min: -1.0,
            r_max: 2.0,
            r_step: 0.05,
            samples_per_edge: 257,
            closure: Closure::Localized,
            tolerance: crate::fredholm_analysis::ELLIPTICITY_TOL,
            anchor: [2.0, -0.5],
            criterion: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IndexParams {
    pub schema_version: u32,
    pub p: f64,
    pub r: f64,
    /// Starting resolution; doubled until the winding number is stable.
    pub samples_per_edge: usize,
    pub closure: Closure,
    pub composite: Option<CompositeDoc>,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams {
            schema_version: crate::SCHEMA_VERSION,
            p: 2.0,
            r: -0.25,
            samples_per_edge: 257,
            closure: Closure::Localized,
            composite: None,
        }
    }
}

/// Right-hand sides of the model system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SolveData {
    /// Random smooth exact solution drawn from `--seed`.
    Manufactured,
    /// `t,re,im` CSVs on one geometric grid.
    Files { g: PathBuf, h: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveParams {
    pub schema_version: u32,
    pub beta: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
    pub padding: usize,
    pub cond_max: f64,
    pub methods: Vec<Method>,
    pub nystrom_ratio: f64,
    pub nystrom_nodes: usize,
    pub data: SolveData,
}

impl Default for SolveParams {
    fn default() -> Self {
        SolveParams {
            schema_version: crate::SCHEMA_VERSION,
            beta: 0.25,
            t_min: 1e-32,
            t_max: 1e12,
            n: 4096,
            padding: 4,
            cond_max: 1e12,
            methods: vec![Method::MellinDiagonal, Method::Nystrom],
            nystrom_ratio: 1.15,
            nystrom_nodes: 512,
            data: SolveData::Manufactured,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BvpParams {
    pub schema_version: u32,
    pub case: HarmonicCase,
    pub extension_mode: ExtensionMode,
    pub grid: BvpOptions,
    /// Interior probe points; the 5 × 5 default set when absent.
    pub probes: Option<Vec<[f64; 2]>>,
}

impl Default for BvpParams {
    fn default() -> Self {
        BvpParams {
            schema_version: crate::SCHEMA_VERSION,
            case: HarmonicCase::Case1,
            extension_mode: ExtensionMode::TrueTrace,
            grid: BvpOptions::default(),
            probes: None,
        }
    }
}

/// Reads a parameter document. A missing path gives the defaults; a present
/// document must carry the current `schema_version`.
pub fn load_params<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path)?;
    parse_params(&text)
}

pub fn parse_params<T: DeserializeOwned>(text: &str) -> Result<T> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Config(format!("not JSON: {e}")))?;
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v == crate::SCHEMA_VERSION as u64 => {}
        Some(v) => {
            return Err(Error::Config(format!(
                "schema_version {v} is not supported (expected {})",
                crate::SCHEMA_VERSION
            )))
        }
        None => return Err(Error::Config("missing integer field schema_version".into())),
    }
    serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))
}
