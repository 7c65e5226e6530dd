//! Gamma-distributed channel power gains (Nakagami-m amplitudes), their
//! order statistics, small-argument expansions and samplers.
//!
//! Everything works on the power gain `λ = |h|²`. The amplitude density is
//! only provided as [`amplitude_pdf`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{log_binomial, log_factorial, CompensatedSum};

/// Shape `mu` (integer) and mean power `omega` of a Gamma power gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingParams {
    pub mu: u32,
    pub omega: f64,
}

impl FadingParams {
    pub fn new(mu: u32, omega: f64) -> Result<Self> {
        if mu == 0 {
            return Err(Error::config("mu", "must be a positive integer"));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::config("omega", format!("must be positive, got {omega}")));
        }
        Ok(Self { mu, omega })
    }

    /// Rate-normalised argument `μλ/ω`.
    fn scaled(&self, lambda: f64) -> f64 {
        self.mu as f64 * lambda / self.omega
    }
}

/// Rank `m` (1 = weakest) among `users` sorted gains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderedIndex {
    pub rank: u32,
    pub users: u32,
}

impl OrderedIndex {
    pub fn new(rank: u32, users: u32) -> Result<Self> {
        if users == 0 || rank == 0 || rank > users {
            return Err(Error::config(
                "rank",
                format!("must satisfy 1 <= rank <= users, got {rank} of {users}"),
            ));
        }
        Ok(Self { rank, users })
    }
}

/// Gamma density of the power gain.
pub fn gamma_pdf(p: &FadingParams, lambda: f64) -> f64 {
    if lambda < 0.0 {
        return 0.0;
    }
    let mu = p.mu as f64;
    if lambda == 0.0 {
        return if p.mu == 1 { 1.0 / p.omega } else { 0.0 };
    }
    let log = mu * (mu / p.omega).ln() + (mu - 1.0) * lambda.ln() - log_factorial(p.mu - 1) - p.scaled(lambda);
    log.exp()
}

/// Density of the Nakagami-m amplitude `x = sqrt(λ)`.
pub fn amplitude_pdf(p: &FadingParams, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    2.0 * x * gamma_pdf(p, x * x)
}

/// Returns `(F(λ), 1 - F(λ))`, each accurate to full relative precision.
///
/// Below the mode the lower tail is summed directly (`e^{-t} Σ_{k≥μ} t^k/k!`)
/// so that tiny CDF values are not lost to cancellation; above it the finite
/// upper-tail sum is used instead.
pub fn gamma_cdf_sf(p: &FadingParams, lambda: f64) -> (f64, f64) {
    if lambda <= 0.0 {
        return (0.0, 1.0);
    }
    let t = p.scaled(lambda);
    if p.mu == 1 {
        let cdf = -(-t).exp_m1();
        return (cdf, (-t).exp());
    }
    let mu = p.mu;
    let ln_t = t.ln();
    if t < mu as f64 {
        let mut term = (mu as f64 * ln_t - t - log_factorial(mu)).exp();
        let mut sum = CompensatedSum::new();
        let mut k = mu;
        while term > 0.0 {
            sum.add(term);
            k += 1;
            term *= t / k as f64;
            if term < 1e-18 * sum.value() {
                break;
            }
        }
        let cdf = sum.value().min(1.0);
        (cdf, 1.0 - cdf)
    } else {
        let sf: f64 = (0..mu)
            .map(|k| (k as f64 * ln_t - t - log_factorial(k)).exp())
            .collect::<CompensatedSum>()
            .value()
            .min(1.0);
        (1.0 - sf, sf)
    }
}

pub fn gamma_cdf(p: &FadingParams, lambda: f64) -> f64 {
    gamma_cdf_sf(p, lambda).0
}

pub fn gamma_sf(p: &FadingParams, lambda: f64) -> f64 {
    gamma_cdf_sf(p, lambda).1
}

/// CDF of the `rank`-th smallest of `users` i.i.d. gains.
///
/// Computed as the binomial tail `Σ_{j≥m} C(M,j) F^j (1-F)^{M-j}`, which is
/// algebraically the alternating order-statistic sum but has only positive
/// terms.
pub fn ordered_cdf(p: &FadingParams, idx: OrderedIndex, x: f64) -> f64 {
    let (f, s) = gamma_cdf_sf(p, x);
    binomial_tail(idx, f, s)
}

/// Complement of [`ordered_cdf`], again without cancellation.
pub fn ordered_sf(p: &FadingParams, idx: OrderedIndex, x: f64) -> f64 {
    let (f, s) = gamma_cdf_sf(p, x);
    // P(rank-th ≥ x) = P(fewer than m below x)
    let (m, n) = (idx.rank, idx.users);
    (0..m)
        .map(|j| binomial_term(n, j, f, s))
        .collect::<CompensatedSum>()
        .value()
        .clamp(0.0, 1.0)
}

fn binomial_term(n: u32, j: u32, f: f64, s: f64) -> f64 {
    let lf = if j == 0 { 0.0 } else { j as f64 * f.ln() };
    let ls = if n == j { 0.0 } else { (n - j) as f64 * s.ln() };
    (log_binomial(n, j) + lf + ls).exp()
}

fn binomial_tail(idx: OrderedIndex, f: f64, s: f64) -> f64 {
    let (m, n) = (idx.rank, idx.users);
    (m..=n)
        .map(|j| binomial_term(n, j, f, s))
        .collect::<CompensatedSum>()
        .value()
        .clamp(0.0, 1.0)
}

/// The order-statistic CDF in its alternating-sum form
/// `M!/((m-1)!(M-m)!) Σ_i C(M-m,i) (-1)^i/(m+i) F^{m+i}`.
///
/// Kept as a cross-check for [`ordered_cdf`]; it loses precision when `F`
/// is close to one.
pub fn ordered_cdf_alternating(p: &FadingParams, idx: OrderedIndex, x: f64) -> f64 {
    let f = gamma_cdf(p, x);
    let (m, n) = (idx.rank, idx.users);
    let pref = log_factorial(n) - log_factorial(m - 1) - log_factorial(n - m);
    let mut sum = crate::numerics::SignedLogSum::new();
    if f == 0.0 {
        return 0.0;
    }
    for i in 0..=(n - m) {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let log = pref + log_binomial(n - m, i) - ((m + i) as f64).ln() + (m + i) as f64 * f.ln();
        sum.push(sign, log);
    }
    sum.value().clamp(0.0, 1.0)
}

/// Density of the `rank`-th order statistic.
pub fn ordered_pdf(p: &FadingParams, idx: OrderedIndex, x: f64) -> f64 {
    let density = gamma_pdf(p, x);
    if density == 0.0 {
        return 0.0;
    }
    let (f, s) = gamma_cdf_sf(p, x);
    let (m, n) = (idx.rank, idx.users);
    let log = log_factorial(n) - log_factorial(m - 1) - log_factorial(n - m)
        + density.ln()
        + if m > 1 { (m - 1) as f64 * f.ln() } else { 0.0 }
        + if n > m { (n - m) as f64 * s.ln() } else { 0.0 };
    log.exp()
}

/// Leading term of the unsorted CDF as `λ → 0`: `(μλ/ω)^μ / μ!`.
pub fn cdf_small_arg(p: &FadingParams, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (p.mu as f64 * p.scaled(x).ln() - log_factorial(p.mu)).exp()
}

/// Leading term of the order-statistic CDF:
/// `M!/((M-m)! m!) (μx/ω)^{μm} (1/μ!)^m`.
pub fn ordered_cdf_small_arg(p: &FadingParams, idx: OrderedIndex, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let (m, n) = (idx.rank as f64, idx.users);
    let log = log_binomial(n, idx.rank) + m * p.mu as f64 * p.scaled(x).ln() - m * log_factorial(p.mu);
    log.exp()
}

/// Draws one power gain as a sum of `μ` exponentials of mean `ω/μ`.
///
/// Consumes exactly `μ` uniforms from `rng`; the Monte Carlo engine relies
/// on that to seek streams per trial.
pub fn sample_gain<R: Rng + ?Sized>(p: &FadingParams, rng: &mut R) -> f64 {
    p.omega / p.mu as f64 * sample_unit_erlang(p.mu, rng)
}

/// Sum of `mu` standard exponentials, via inversion.
pub(crate) fn sample_unit_erlang<R: Rng + ?Sized>(mu: u32, rng: &mut R) -> f64 {
    let mut acc = 0.0;
    for _ in 0..mu {
        let u: f64 = rng.random();
        acc -= (1.0 - u).ln();
    }
    acc
}

/// `users` i.i.d. gains sorted ascending.
pub fn sample_sorted_gains<R: Rng + ?Sized>(p: &FadingParams, users: usize, rng: &mut R) -> Vec<f64> {
    let mut out: Vec<f64> = (0..users).map(|_| sample_gain(p, rng)).collect();
    out.sort_by(f64::total_cmp);
    out
}
