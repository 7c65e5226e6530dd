/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Sum of signed terms supplied as `(sign, ln|term|)`.
///
/// Terms are rescaled by the largest magnitude before being accumulated with
/// compensation, so the result keeps whatever precision the cancellation
/// leaves and never overflows in the intermediate.
#[derive(Debug, Clone, Default)]
pub struct SignedLogSum {
    terms: Vec<(f64, f64)>,
}

impl SignedLogSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// `sign` is only inspected for its sign; zero terms are dropped.
    pub fn push(&mut self, sign: f64, log_abs: f64) {
        if sign != 0.0 && log_abs > f64::NEG_INFINITY {
            self.terms.push((sign.signum(), log_abs));
        }
    }

    /// Returns `(sign, ln|sum|)`; an exactly cancelled or empty sum gives
    /// `(0.0, -inf)`.
    pub fn log_value(&self) -> (f64, f64) {
        let peak = self
            .terms
            .iter()
            .map(|&(_, l)| l)
            .fold(f64::NEG_INFINITY, f64::max);
        if peak == f64::NEG_INFINITY {
            return (0.0, f64::NEG_INFINITY);
        }
        let acc: CompensatedSum = self
            .terms
            .iter()
            .map(|&(s, l)| s * (l - peak).exp())
            .collect();
        let v = acc.value();
        if v == 0.0 {
            (0.0, f64::NEG_INFINITY)
        } else {
            (v.signum(), v.abs().ln() + peak)
        }
    }

    pub fn value(&self) -> f64 {
        let (s, l) = self.log_value();
        s * l.exp()
    }
}
