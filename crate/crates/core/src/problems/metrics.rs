use crate::error::{Error, Result};

/// Relative excess of a tour length over the reference, in percent.
/// Negative when `best` beats the reference.
pub fn tsp_error(best: f64, optimum: f64) -> Result<f64> {
    if optimum == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok((best - optimum) / optimum * 100.0)
}

/// Relative shortfall of a cut weight below the reference optimum, in percent.
pub fn maxcut_error(best: f64, optimum: f64) -> Result<f64> {
    if optimum == 0.0 {
        return Err(Error::DivisionByZero);
    }
    Ok((optimum - best) / optimum * 100.0)
}
