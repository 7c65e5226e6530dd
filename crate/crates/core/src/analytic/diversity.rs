use crate::error::{Error, Result};

/// Negated least-squares slope of `log10 P` against `log10 ρ`.
///
/// Points with `0 < P < 1e-300` are dropped with a warning; `P <= 0` is a
/// domain error.
pub fn diversity_order_fit(curve: &[(f64, f64)]) -> Result<f64> {
    let mut pts = Vec::with_capacity(curve.len());
    for &(rho, p) in curve {
        if !(p > 0.0) || !(rho > 0.0) {
            return Err(Error::Domain(format!(
                "diversity fit needs positive SNR and probability, got ({rho}, {p})"
            )));
        }
        if p < super::PROBABILITY_FLOOR {
            log::warn!("dropping point rho={rho}: P={p:e} is below the numerical floor");
            continue;
        }
        pts.push((rho.log10(), p.log10()));
    }
    if pts.len() < 2 {
        return Err(Error::Domain("diversity fit needs at least two usable points".into()));
    }
    if pts.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::Domain("SNR values must be strictly ascending".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(-sxy / sxx)
}
