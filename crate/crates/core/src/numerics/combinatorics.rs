use crate::error::{Error, Result};

use super::special::log_factorial;

/// A length-`parts.len()` vector of non-negative integers summing to `total`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    total: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        let total = parts.iter().sum();
        Self { parts, total }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.total
    }
}

/// Every way of writing `q` as an ordered sum of `parts` non-negative
/// integers, in reverse lexicographic order (first part largest first).
pub fn compositions(q: u32, parts: u32) -> Vec<Composition> {
    assert!(parts >= 1, "compositions need at least one part");
    let mut out = Vec::new();
    let mut current = vec![0u32; parts as usize];
    fill(q, 0, &mut current, &mut out);
    out
}

fn fill(remaining: u32, slot: usize, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if slot + 1 == current.len() {
        current[slot] = remaining;
        out.push(Composition::new(current.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[slot] = v;
        fill(remaining - v, slot + 1, current, out);
    }
}

/// `ln(q! / (p_0! p_1! ... ))`.
pub fn log_multinomial(q: u32, parts: &Composition) -> Result<f64> {
    if parts.total() != q {
        return Err(Error::Domain(format!(
            "composition sums to {}, expected {q}",
            parts.total()
        )));
    }
    Ok(log_factorial(q) - parts.parts().iter().map(|&p| log_factorial(p)).sum::<f64>())
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn log_binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    log_factorial(n) - log_factorial(k) - log_factorial(n - k)
}
