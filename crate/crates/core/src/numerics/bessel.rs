//! Modified Bessel function of the second kind for integer orders.
//!
//! `K_0` and `K_1` come from the ascending series for `x <= 2` and from
//! Steed's continued fraction (Temme's CF2 form) above that; higher orders
//! use the upward recurrence `K_{v+1} = K_{v-1} + (2v/x) K_v`, which is
//! stable for `K`.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;
const MAX_ITER: usize = 10_000;

/// `K_order(x)` for `x > 0`. Underflows to zero for large `x`.
pub fn bessel_k(order: u32, x: f64) -> Result<f64> {
    let scaled = bessel_k_scaled(order, x)?;
    Ok(scaled * (-x).exp())
}

/// Exponentially scaled `e^x K_order(x)`.
pub fn bessel_k_scaled(order: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires x > 0, got {x}")));
    }
    let (k0, k1) = if x <= SERIES_LIMIT {
        let (k0, k1) = k01_series(x);
        let scale = x.exp();
        (k0 * scale, k1 * scale)
    } else {
        k01_scaled_steed(x)
    };
    match order {
        0 => Ok(k0),
        1 => Ok(k1),
        _ => {
            let (mut prev, mut cur) = (k0, k1);
            for v in 1..order {
                let next = prev + (2.0 * v as f64 / x) * cur;
                prev = cur;
                cur = next;
            }
            Ok(cur)
        }
    }
}

/// The part of `K_n(x)` left after removing its principal part
/// `½ Σ_{j<n} (-1)^j (n-j-1)!/j! (x/2)^{2j-n}`, divided by `(x/2)^n`.
///
/// Equals `(-1)^{n+1} Σ_j (x/2)^{2j}/(j!(n+j)!) [ln(x/2) + γ - (H_j + H_{n+j})/2]`.
/// Meant for `x <= 2`, where the series converges quickly and has no
/// cancellation for small `x`.
pub fn bessel_k_regular_scaled(order: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires x > 0, got {x}")));
    }
    let n = order as usize;
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln() + EULER_GAMMA;
    let mut h_j = 0.0;
    let mut h_nj: f64 = (1..=n).map(|k| 1.0 / k as f64).sum();
    // (x/2)^{2j}/(j!(n+j)!) starting from 1/n!
    let mut t = (1..=n).fold(1.0, |acc, k| acc / k as f64);
    let mut sum = 0.0;
    for j in 0..MAX_ITER {
        let term = t * (log_half - 0.5 * (h_j + h_nj));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        let (jn, njn) = ((j + 1) as f64, (n + j + 1) as f64);
        t *= y / (jn * njn);
        h_j += 1.0 / jn;
        h_nj += 1.0 / njn;
    }
    Ok(if order % 2 == 0 { -sum } else { sum })
}

fn k01_series(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    // term = y^k / (k!)^2 for K0, y^k / (k!(k+1)!) for K1
    let mut t0 = 1.0;
    let mut t1 = 1.0;
    let mut i0 = 1.0;
    let mut i1_sum = 1.0;
    let mut h = 0.0; // H_k
    let mut k0_tail = 0.0;
    let mut k1_tail = -2.0 * EULER_GAMMA + 1.0; // k = 0: -2γ + H_0 + H_1
    for k in 1..MAX_ITER {
        let kf = k as f64;
        t0 *= y / (kf * kf);
        t1 *= y / (kf * (kf + 1.0));
        h += 1.0 / kf;
        let h_next = h + 1.0 / (kf + 1.0);
        i0 += t0;
        i1_sum += t1;
        k0_tail += h * t0;
        k1_tail += (-2.0 * EULER_GAMMA + h + h_next) * t1;
        if t0 < 1e-17 * i0 && t1 < 1e-17 * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_tail;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_tail;
    (k0, k1)
}

/// Scaled `(e^x K_0, e^x K_1)` via Steed's algorithm, valid for `x >= 2`.
fn k01_scaled_steed(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}
