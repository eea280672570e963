use serde::Serialize;

use super::error::PropagatorError;
use super::timeseries::TimeSeries;

/// Worst deviation of one `(X, rhs)` channel pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EhrenfestPair {
    pub observable: String,
    pub rhs: String,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EhrenfestReport {
    pub tolerance: f64,
    pub pairs: Vec<EhrenfestPair>,
}

impl EhrenfestReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.pairs.iter().map(|p| p.max_deviation).fold(0.0, f64::max)
    }
}

/// Default tolerance `max(1e-5, 10 h²)` for a series sampled at spacing `h`.
pub fn ehrenfest_tolerance(series: &TimeSeries) -> f64 {
    let h = series
        .times
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0, f64::max);
    f64::max(1e-5, 10.0 * h * h)
}

/// Compares the centered difference of each `X` channel with its paired
/// right-hand side channel at every interior sample.
pub fn ehrenfest_check(series: &TimeSeries, pairs: &[(&str, &str)]) -> Result<EhrenfestReport, PropagatorError> {
    ehrenfest_check_with(series, pairs, ehrenfest_tolerance(series))
}

pub fn ehrenfest_check_with(
    series: &TimeSeries,
    pairs: &[(&str, &str)],
    tolerance: f64,
) -> Result<EhrenfestReport, PropagatorError> {
    let t = &series.times;
    let mut out = Vec::with_capacity(pairs.len());
    for &(x, rhs) in pairs {
        let xs = series.channel(x)?;
        let rs = series.channel(rhs)?;
        let mut worst = 0.0f64;
        for i in 1..t.len().saturating_sub(1) {
            let (h0, h1) = (t[i] - t[i - 1], t[i + 1] - t[i]);
            // Second-order centered difference on a possibly uneven stencil.
            let d = -h1 / (h0 * (h0 + h1)) * xs[i - 1] + (h1 - h0) / (h0 * h1) * xs[i]
                + h0 / (h1 * (h0 + h1)) * xs[i + 1];
            worst = worst.max((d - rs[i]).abs());
        }
        out.push(EhrenfestPair {
            observable: x.to_string(),
            rhs: rhs.to_string(),
            max_deviation: worst,
            passed: worst <= tolerance,
        });
    }
    Ok(EhrenfestReport { tolerance, pairs: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_quadratics() {
        let mut s = TimeSeries::new(&["x".into(), "v".into()]);
        for i in 0..=20 {
            let t = 0.1 * i as f64;
            s.push(t, &[3.0 * t * t - t, 6.0 * t - 1.0]);
        }
        let r = ehrenfest_check(&s, &[("x", "v")]).unwrap();
        assert!(r.passed());
        assert!(r.max_deviation() < 1e-12);
    }

    #[test]
    fn detects_wrong_rhs() {
        let mut s = TimeSeries::new(&["x".into(), "v".into()]);
        for i in 0..=20 {
            let t = 0.1 * i as f64;
            s.push(t, &[t, 0.0]);
        }
        let r = ehrenfest_check(&s, &[("x", "v")]).unwrap();
        assert!(!r.passed());
        assert!((r.max_deviation() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn missing_channel() {
        let s = TimeSeries::new(&["x".into()]);
        assert!(matches!(ehrenfest_check(&s, &[("x", "y")]), Err(PropagatorError::MissingChannel(_))));
    }
}
