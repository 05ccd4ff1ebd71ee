use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model parameters `(a, b, lambda)` of Poisson growth.
///
/// Attachment weight of a node with degree `k` is `k + a` for `k >= 1` and
/// `b` for `k = 0`; `lambda` is the expected number of edges per new node.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
}

impl ModelParams {
    pub fn new(a: f64, b: f64, lambda: f64) -> Result<Self> {
        let params = ModelParams { a, b, lambda };
        params.validate()?;
        Ok(params)
    }

    /// The plain offset form `r(k) = k + a` for all `k`, which needs `a >= 0`.
    pub fn plain(a: f64, lambda: f64) -> Result<Self> {
        if !(a >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "plain attachment needs a >= 0, got a = {a}"
            )));
        }
        Self::new(a, a, lambda)
    }

    pub fn validate(&self) -> Result<()> {
        let ModelParams { a, b, lambda } = *self;
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must be finite and > 0, got {lambda}"
            )));
        }
        if !(a.is_finite() && a >= -1.0) {
            return Err(Error::InvalidParams(format!(
                "a must be finite and >= -1, got {a}"
            )));
        }
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "b must be finite and >= 0, got {b}"
            )));
        }
        Ok(())
    }

    /// True when `a == b`, i.e. the attachment function has no threshold.
    pub fn is_plain(&self) -> bool {
        self.a == self.b
    }

    #[inline]
    pub fn weight(&self, k: u64) -> f64 {
        if k == 0 {
            self.b
        } else {
            k as f64 + self.a
        }
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.lambda)
    }
}
