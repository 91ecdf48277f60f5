use crate::error::{invalid, IrdError, Result};

/// Scalars tabulated against one strictly increasing axis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub axis_name: String,
    pub axis: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
    pub metadata: Vec<(String, String)>,
}

impl SweepResult {
    pub fn new(axis_name: impl Into<String>, axis: Vec<f64>) -> Result<Self> {
        if axis.is_empty() {
            return Err(invalid("sweep axis is empty"));
        }
        if axis.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("sweep axis must be strictly increasing"));
        }
        Ok(Self { axis_name: axis_name.into(), axis, columns: Vec::new(), metadata: Vec::new() })
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if values.len() != self.axis.len() {
            return Err(invalid(format!(
                "column {name} has {} values for {} axis points",
                values.len(),
                self.axis.len()
            )));
        }
        self.columns.push((name, values));
        Ok(())
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.0 == name).map(|c| c.1.as_slice())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|m| m.0 == key).map(|m| m.1.as_str())
    }

    /// Value of `name` at the axis point closest to `x`.
    pub fn value_at(&self, name: &str, x: f64) -> Option<f64> {
        let col = self.column(name)?;
        let i =
            self.axis.iter().enumerate().min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs())).map(|(i, _)| i)?;
        Some(col[i])
    }

    pub fn check_finite(&self) -> Result<()> {
        for (name, col) in &self.columns {
            if let Some(i) = col.iter().position(|v| !v.is_finite()) {
                return Err(IrdError::Numerical(format!(
                    "column {name} is not finite at {} = {}",
                    self.axis_name, self.axis[i]
                )));
            }
        }
        Ok(())
    }
}

/// Location and value of the largest forward-difference slope of `y(x)`, at interval midpoints.
pub fn steepest_rise(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| (0.5 * (xs[0] + xs[1]), (ys[1] - ys[0]) / (xs[1] - xs[0])))
        .max_by(|a, b| a.1.total_cmp(&b.1))
}

/// Points `start, start + step, ...` up to `stop` inclusive (with a small tolerance).
pub fn range_inclusive(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(invalid(format!("bad range {start}:{stop}:{step}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).map(|v| (v * 1e12).round() / 1e12).collect())
}
