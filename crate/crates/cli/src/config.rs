//! Sweep configuration: a single JSON document.
//!
//! ```json
//! {
//!   "mu": {"start": "0", "stop": "2", "step": "1"},
//!   "lambda": [1, 2],
//!   "delta": ["0", "1/2"],
//!   "alpha": [0],
//!   "phi": "halfplane:0",
//!   "corpus": [[ "1/10" ], {"label": "gap", "coeffs": [0, 0, "1/10"]}],
//!   "order": 12,
//!   "grid": {"radii": [0.5, 0.7, 0.9], "samples_per_circle": 512},
//!   "output": "csv",
//!   "strict": false
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings holding rationals (`"p/q"`,
//! decimals). Corpus entries list `a_2, a_3, ...`; when `corpus` is absent
//! the built-in corpus is used. When `phi` is absent every cell uses the
//! real-part test with its own `alpha`.

use faberkit_core::corpus::{self, CorpusEntry};
use faberkit_core::scalar::{format_rational, int, parse_rational, rational_from_f64};
use faberkit_core::{ClassParams, PhiSpec, Rational, SamplingGrid, DEFAULT_ORDER};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Num {
    fn rational(&self) -> Result<Rational, String> {
        match self {
            Num::Int(i) => Ok(int(*i)),
            Num::Float(x) => rational_from_f64(*x).ok_or_else(|| format!("{x} is not finite")),
            Num::Text(s) => parse_rational(s).map_err(|e| e.to_string()),
        }
    }
}

/// Either an inclusive `start..=stop` range with a positive `step`, or an
/// explicit list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Range { start: Num, stop: Num, step: Num },
    List(Vec<Num>),
}

impl Axis {
    fn values(&self, field: &str) -> Result<Vec<Rational>, CliError> {
        let err = |msg: String| CliError::Input(format!("config field `{field}`: {msg}"));
        match self {
            Axis::List(v) => {
                if v.is_empty() {
                    return Err(err("empty list".into()));
                }
                v.iter().enumerate().map(|(i, x)| x.rational().map_err(|e| err(format!("entry {i}: {e}")))).collect()
            }
            Axis::Range { start, stop, step } => {
                let (start, stop, step) = (
                    start.rational().map_err(|e| err(format!("start: {e}")))?,
                    stop.rational().map_err(|e| err(format!("stop: {e}")))?,
                    step.rational().map_err(|e| err(format!("step: {e}")))?,
                );
                if !step.is_positive() {
                    return Err(err(format!("step = {} must be positive", format_rational(&step))));
                }
                if stop < start {
                    return Err(err("stop is below start".into()));
                }
                let mut out = Vec::new();
                let mut x = start;
                while x <= stop {
                    out.push(x.clone());
                    x += step.clone();
                }
                Ok(out)
            }
        }
    }
}

fn zero_axis() -> Axis {
    Axis::List(vec![Num::Int(0)])
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CorpusItem {
    Coeffs(Vec<Num>),
    Labeled { label: String, coeffs: Vec<Num> },
}

/// Overrides for [`SamplingGrid`]; missing fields keep their defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub radii: Option<Vec<f64>>,
    pub samples_per_circle: Option<usize>,
    pub inverse_radius_cap: Option<f64>,
    pub tolerance: Option<f64>,
    pub truncation_order: Option<usize>,
}

impl GridConfig {
    fn grid(&self) -> SamplingGrid {
        let d = SamplingGrid::default();
        SamplingGrid {
            radii: self.radii.clone().unwrap_or(d.radii),
            samples_per_circle: self.samples_per_circle.unwrap_or(d.samples_per_circle),
            inverse_radius_cap: self.inverse_radius_cap.unwrap_or(d.inverse_radius_cap),
            tolerance: self.tolerance.unwrap_or(d.tolerance),
            truncation_order: self.truncation_order.unwrap_or(d.truncation_order),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub mu: Axis,
    pub lambda: Axis,
    pub delta: Axis,
    #[serde(default = "zero_axis")]
    pub alpha: Axis,
    #[serde(default)]
    pub phi: Option<String>,
    #[serde(default)]
    pub corpus: Option<Vec<CorpusItem>>,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub output: Format,
    #[serde(default)]
    pub strict: bool,
}

/// A validated configuration, ready to run.
#[derive(Debug, Clone)]
pub struct Plan {
    /// Grid points in lexicographic order of their indices.
    pub points: Vec<ClassParams>,
    pub corpus: Vec<CorpusEntry>,
    pub phi: Option<PhiSpec>,
    pub grid: SamplingGrid,
    pub output: Format,
    pub strict: bool,
}

impl SweepConfig {
    /// Parses the document; errors name the failing field path, line and column.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            if path == "." {
                CliError::Input(format!("config: {}", e.inner()))
            } else {
                CliError::Input(format!("config field `{path}`: {}", e.inner()))
            }
        })
    }

    pub fn plan(&self) -> Result<Plan, CliError> {
        let axes = [
            self.mu.values("mu")?,
            self.lambda.values("lambda")?,
            self.delta.values("delta")?,
            self.alpha.values("alpha")?,
        ];
        let mut points = Vec::new();
        for (i, mu) in axes[0].iter().enumerate() {
            for (j, lambda) in axes[1].iter().enumerate() {
                for (k, delta) in axes[2].iter().enumerate() {
                    for (l, alpha) in axes[3].iter().enumerate() {
                        let params = ClassParams::new(mu.clone(), lambda.clone(), delta.clone(), alpha.clone())
                            .map_err(|e| CliError::Input(format!("config grid point [{i}, {j}, {k}, {l}]: {e}")))?;
                        points.push(params);
                    }
                }
            }
        }
        if self.order < 2 {
            return Err(CliError::Input("config field `order`: must be at least 2".into()));
        }
        let corpus = match &self.corpus {
            None => corpus::shipped(self.order),
            Some(items) => items.iter().enumerate().map(|(i, item)| self.entry(i, item)).collect::<Result<_, _>>()?,
        };
        let phi = self
            .phi
            .as_deref()
            .map(|s| s.parse::<PhiSpec>().map_err(|e| CliError::Input(format!("config field `phi`: {e}"))))
            .transpose()?;
        let grid = self.grid.grid();
        grid.validate().map_err(|e| CliError::Input(format!("config field `grid`: {e}")))?;
        Ok(Plan { points, corpus, phi, grid, output: self.output, strict: self.strict })
    }

    fn entry(&self, i: usize, item: &CorpusItem) -> Result<CorpusEntry, CliError> {
        let (label, coeffs) = match item {
            CorpusItem::Coeffs(c) => (None, c),
            CorpusItem::Labeled { label, coeffs } => (Some(label.clone()), coeffs),
        };
        let tail = coeffs
            .iter()
            .enumerate()
            .map(|(k, x)| {
                x.rational().map_err(|e| CliError::Input(format!("config field `corpus[{i}]` entry {k}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if tail.len() + 1 > self.order {
            return Err(CliError::Input(format!(
                "config field `corpus[{i}]`: {} coefficients do not fit order {}",
                tail.len(),
                self.order
            )));
        }
        let label = label.unwrap_or_else(|| {
            let terms: Vec<String> = tail
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(k, a)| format!("({})z^{}", format_rational(a), k + 2))
                .collect();
            if terms.is_empty() {
                "z".into()
            } else {
                format!("z+{}", terms.join("+"))
            }
        });
        Ok(CorpusEntry::custom(label, &tail, self.order))
    }
}
