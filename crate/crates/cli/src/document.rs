//! JSON system documents.

use baltrunc::arrowhead::{canonical_arrowhead_from_tf_with, to_state_space, ArrowheadRealization};
use baltrunc::gridmodel::{build_grid_model, GridConfig};
use baltrunc::lti::StateSpace;
use baltrunc::numkernel::{Matrix, Tolerances};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SystemDocument {
    Dense(DenseDoc),
    Arrowhead(ArrowDoc),
    Grid(GridDoc),
    Tf(TfDoc),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DenseDoc {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub d: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    pub m_hat: f64,
    pub d_hat: f64,
    pub droop_inv: Vec<f64>,
    pub tau: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TfDoc {
    pub numer: Vec<f64>,
    pub denom: Vec<f64>,
}

/// A parsed document lowered to a state-space model. `arrow` is set when
/// the input carries an arrowhead structure of its own.
pub struct Lowered {
    pub sys: StateSpace,
    pub arrow: Option<ArrowheadRealization>,
}

impl SystemDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|_| {
            "document must be exactly one of: dense {A,b,c,d}, arrowhead {d,alpha,beta,gamma}, \
             grid {m_hat,d_hat,droop_inv,tau}, tf {numer,denom}"
                .to_string()
        })
    }

    pub fn lower(&self, tol: &Tolerances) -> baltrunc::Result<Lowered> {
        match self {
            SystemDocument::Dense(doc) => {
                let a = Matrix::from_rows(&doc.a)?;
                let sys = StateSpace::new(a, doc.b.clone(), doc.c.clone(), doc.d)?;
                Ok(Lowered { sys, arrow: None })
            }
            SystemDocument::Arrowhead(doc) => {
                let ar = ArrowheadRealization::new(doc.d.clone(), doc.alpha.clone(), doc.beta.clone(), doc.gamma)?;
                Ok(Lowered { sys: to_state_space(&ar), arrow: Some(ar) })
            }
            SystemDocument::Grid(doc) => {
                let cfg = GridConfig {
                    m_hat: doc.m_hat,
                    d_hat: doc.d_hat,
                    droop_inv: doc.droop_inv.clone(),
                    tau: doc.tau.clone(),
                };
                let ar = build_grid_model(&cfg)?;
                Ok(Lowered { sys: to_state_space(&ar), arrow: Some(ar) })
            }
            SystemDocument::Tf(doc) => {
                let ar = canonical_arrowhead_from_tf_with(&doc.numer, &doc.denom, tol)?;
                Ok(Lowered { sys: to_state_space(&ar), arrow: Some(ar) })
            }
        }
    }
}
