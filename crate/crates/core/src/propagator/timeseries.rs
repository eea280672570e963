
use serde::Serialize;

use super::error::PropagatorError;

/// Sampled expectation values. All channels share `times`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    channels: Vec<(String, Vec<f64>)>,
}

impl TimeSeries {
    pub fn new(labels: &[String]) -> Self {
        TimeSeries { times: Vec::new(), channels: labels.iter().map(|l| (l.clone(), Vec::new())).collect() }
    }

    /// Appends one sample; `values` follow the channel order.
    pub fn push(&mut self, t: f64, values: &[f64]) {
        assert_eq!(values.len(), self.channels.len(), "one value per channel");
        if let Some(&last) = self.times.last() {
            assert!(t > last, "times must increase");
        }
        self.times.push(t);
        for ((_, series), &v) in self.channels.iter_mut().zip(values) {
            series.push(v);
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.channels.iter().map(|(l, _)| l.as_str())
    }

    pub fn channel(&self, label: &str) -> Result<&[f64], PropagatorError> {
        self.channels
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| v.as_slice())
            .ok_or_else(|| PropagatorError::MissingChannel(label.to_string()))
    }

    pub fn last(&self, label: &str) -> Result<f64, PropagatorError> {
        Ok(*self.channel(label)?.last().expect("non-empty series"))
    }

    pub fn first(&self, label: &str) -> Result<f64, PropagatorError> {
        Ok(self.channel(label)?[0])
    }

    /// `t,<channel>,...` header, one row per sample, shortest round-trip
    /// decimal formatting, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for (label, _) in &self.channels {
            out.push(',');
            out.push_str(label);
        }
        out.push('\n');
        let mut buf = ryu::Buffer::new();
        for (k, t) in self.times.iter().enumerate() {
            out.push_str(buf.format(*t));
            for (_, series) in &self.channels {
                out.push(',');
                out.push_str(buf.format(series[k]));
            }
            out.push('\n');
        }
        out
    }
}
