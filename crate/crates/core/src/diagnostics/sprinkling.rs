//! Union bound on the probability that sprinkling connects no colored
//! segment to the seed subgraph.

use serde::Serialize;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SprinklingBound {
    /// Natural log of `2^(n/ell) (1 - beta^L)^(delta n / 2 - n / ell)`;
    /// `-inf` when the bound is exactly zero.
    pub log_value: f64,
    /// `min(1, exp(log_value))`.
    pub value: f64,
    /// `delta n / 2 - n / ell`.
    pub exponent: f64,
    /// The bound says nothing: the exponent is not positive or the raw value
    /// is at least 1.
    pub vacuous: bool,
}

/// Path length cap `L = dbar / delta`.
pub fn path_length(average_degree: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) || !(average_degree >= 0.0) {
        return Err(invalid("need delta > 0 and a nonnegative average degree"));
    }
    Ok(average_degree / delta)
}

pub fn sprinkling_bound(
    n: usize,
    ell: usize,
    delta: f64,
    beta: f64,
    path_len: f64,
) -> Result<SprinklingBound> {
    if n < 1 || ell < 1 {
        return Err(invalid("n and ell must be at least 1"));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(invalid(format!("beta = {beta} must lie in (0, 1]")));
    }
    if !(delta > 0.0) || !(path_len > 0.0) {
        return Err(invalid("delta and L must be positive"));
    }
    let n = n as f64;
    let segments = n / ell as f64;
    let exponent = delta * n / 2.0 - segments;
    // ln(1 - beta^L), accurate for tiny beta^L.
    let log_miss = (-(path_len * beta.ln()).exp()).ln_1p();
    let log_tail = if exponent == 0.0 {
        0.0
    } else {
        exponent * log_miss
    };
    let log_value = segments * std::f64::consts::LN_2 + log_tail;
    let value = log_value.exp().min(1.0);
    Ok(SprinklingBound {
        log_value,
        value,
        exponent,
        vacuous: exponent <= 0.0 || log_value >= 0.0,
    })
}
