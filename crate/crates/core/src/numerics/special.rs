use crate::error::{Error, Result};

/// Natural log of the Gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// `ln(n!)`, exact table for small `n`.
pub fn log_factorial(n: u32) -> f64 {
    const TABLE: [f64; 21] = {
        let mut t = [0.0f64; 21];
        let mut acc = 1.0f64;
        let mut i = 1;
        while i < 21 {
            acc *= i as f64;
            t[i] = acc;
            i += 1;
        }
        t[0] = 1.0;
        t
    };
    if (n as usize) < TABLE.len() {
        TABLE[n as usize].ln()
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}
