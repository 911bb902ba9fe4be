use std::io::Read;
use std::str::FromStr;

use super::DiscretizeError;
use crate::metric::{FiniteMetricSpace, PointMetric};

/// How the coordinates of a sample file are read.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SampleMetric {
    Euclidean,
    L1Torus,
    Circle { circumference: f64 },
    /// Each row holds the distances to every sample point.
    ExplicitMatrix,
}

impl FromStr for SampleMetric {
    type Err = String;

    /// `euclidean`, `l1-torus`, `circle`, `circle:<circumference>` or
    /// `explicit-matrix`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(SampleMetric::Euclidean),
            "l1-torus" => Ok(SampleMetric::L1Torus),
            "circle" => Ok(SampleMetric::Circle { circumference: 1.0 }),
            "explicit-matrix" => Ok(SampleMetric::ExplicitMatrix),
            _ => s
                .strip_prefix("circle:")
                .and_then(|c| c.parse::<f64>().ok())
                .filter(|c| *c > 0.0)
                .map(|circumference| SampleMetric::Circle { circumference })
                .ok_or_else(|| format!("unknown sample metric {s:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub ids: Vec<String>,
    pub space: FiniteMetricSpace,
}

/// Reads `id,x1,..,xm` rows. A first row whose values are not numbers is
/// taken as a header.
pub fn read_sample<R: Read>(input: R, metric: SampleMetric) -> Result<Sample, DiscretizeError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(input);
    let mut ids = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 1;
        let record = record.map_err(|e| DiscretizeError::Parse { line, message: e.to_string() })?;
        let mut fields = record.iter();
        let id = fields.next().unwrap_or_default().to_string();
        let values: Result<Vec<f64>, _> = fields.map(str::parse::<f64>).collect();
        match values {
            Ok(v) if !v.is_empty() => {
                ids.push(id);
                rows.push(v);
            }
            Err(_) if line == 1 => continue,
            Ok(_) => return Err(DiscretizeError::Parse { line, message: "row has no coordinates".into() }),
            Err(e) => return Err(DiscretizeError::Parse { line, message: e.to_string() }),
        }
    }
    let space = match metric {
        SampleMetric::ExplicitMatrix => FiniteMetricSpace::from_matrix(rows)?,
        SampleMetric::Euclidean => FiniteMetricSpace::from_points(rows, PointMetric::Euclidean)?,
        SampleMetric::L1Torus => FiniteMetricSpace::from_points(rows, PointMetric::L1Torus)?,
        SampleMetric::Circle { circumference } => {
            FiniteMetricSpace::from_points(rows, PointMetric::Circle { circumference })?
        }
    };
    Ok(Sample { ids, space })
}
