//! JSON inputs: Cartan data, admissible pairs and parameter sets.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use qsp_core::cartan::{AdmissiblePair, CartanDatum};
use qsp_core::qsp::{QspContext, QspParams};
use qsp_core::uqg::Algebra;
use qsp_core::Scalar;

use crate::error::CliError;

/// Node set of an explicit Cartan matrix: a count (labels `1..=n`) or labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Nodes {
    Count(usize),
    Labels(Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanSpec {
    Matrix {
        nodes: Nodes,
        #[serde(rename = "A")]
        a: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eps: Option<Vec<i64>>,
    },
    /// `type` is `A`..`G` or `affine:A`.
    Named {
        #[serde(rename = "type")]
        kind: String,
        rank: usize,
    },
}

impl CartanSpec {
    pub fn build(&self) -> Result<CartanDatum, CliError> {
        match self {
            CartanSpec::Named { kind, rank } => Ok(match kind.strip_prefix("affine:") {
                Some(k) => CartanDatum::affine(k, *rank)?,
                None => CartanDatum::finite(kind, *rank)?,
            }),
            CartanSpec::Matrix { nodes, a, eps } => {
                let labels: Vec<i64> = match nodes {
                    Nodes::Count(n) => (1..=*n as i64).collect(),
                    Nodes::Labels(l) => l.clone(),
                };
                if labels.len() != a.len() {
                    return Err(CliError::Input(format!(
                        "{} node labels for a {}x{} matrix",
                        labels.len(),
                        a.len(),
                        a.len()
                    )));
                }
                let eps = match eps {
                    Some(e) => e.clone(),
                    None => CartanDatum::from_matrix(a.clone())?.symmetrizers().to_vec(),
                };
                Ok(CartanDatum::new(labels, a.clone(), eps)?)
            }
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PairSpec {
    #[serde(rename = "X", default)]
    pub x: Vec<i64>,
    #[serde(default)]
    pub tau: Vec<[i64; 2]>,
}

impl PairSpec {
    pub fn build(&self, datum: Arc<CartanDatum>) -> Result<AdmissiblePair, CliError> {
        let tau: Vec<(i64, i64)> = self.tau.iter().map(|p| (p[0], p[1])).collect();
        Ok(AdmissiblePair::from_labels(datum, &self.x, &tau)?)
    }

    pub fn of(pair: &AdmissiblePair) -> PairSpec {
        PairSpec {
            x: pair.x_labels(),
            tau: pair.tau_labels().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

/// `{"cartan": ..., "pair": ..., "c": {"1": "<scalar>", ...}, "s": {...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub cartan: CartanSpec,
    #[serde(default)]
    pub pair: PairSpec,
    #[serde(default)]
    pub c: BTreeMap<String, Scalar>,
    #[serde(default)]
    pub s: BTreeMap<String, Scalar>,
}

fn keyed(map: &BTreeMap<String, Scalar>) -> Result<Vec<(i64, Scalar)>, CliError> {
    map.iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<i64>()
                .map(|l| (l, v.clone()))
                .map_err(|_| CliError::Input(format!("parameter key {k:?} is not a node label")))
        })
        .collect()
}

/// A fully loaded problem: algebra, pair and optionally parameters.
pub struct Problem {
    pub ctx: Arc<QspContext>,
    pub params: Option<QspParams>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

/// `--cartan` takes a JSON file or a name such as `A3`, `B:2` or `affine:A:1`.
pub fn load_cartan(arg: &str) -> Result<CartanDatum, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        read_json::<CartanSpec>(path)?.build()
    } else {
        Ok(CartanDatum::by_name(arg)?)
    }
}

pub fn context(datum: CartanDatum, pair: &PairSpec, max_bucket: usize) -> Result<Arc<QspContext>, CliError> {
    let datum = Arc::new(datum);
    let pair = Arc::new(pair.build(datum.clone())?);
    let alg = Arc::new(Algebra::with_max_bucket(datum, max_bucket));
    Ok(Arc::new(QspContext::with_algebra(alg, pair)?))
}

impl ParamsSpec {
    pub fn load(&self, max_bucket: usize) -> Result<Problem, CliError> {
        let ctx = context(self.cartan.build()?, &self.pair, max_bucket)?;
        let params = QspParams::from_labels(ctx.clone(), &keyed(&self.c)?, &keyed(&self.s)?)?;
        Ok(Problem {
            ctx,
            params: Some(params),
        })
    }
}

/// Resolves `--params` or the pair `--cartan`/`--pair`.
pub fn load_problem(
    params: Option<&Path>,
    cartan: Option<&str>,
    pair: Option<&Path>,
    max_bucket: usize,
) -> Result<Problem, CliError> {
    if let Some(p) = params {
        return read_json::<ParamsSpec>(p)?.load(max_bucket);
    }
    let cartan = cartan.ok_or_else(|| CliError::Input("either --params or --cartan is required".into()))?;
    let pair = match pair {
        Some(p) => read_json::<PairSpec>(p)?,
        None => PairSpec::default(),
    };
    Ok(Problem {
        ctx: context(load_cartan(cartan)?, &pair, max_bucket)?,
        params: None,
    })
}
