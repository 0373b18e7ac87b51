//! Point cloud container and the ASCII XYZ interchange format.

use super::PerceptionError;
use crate::geometry::Point3;
use std::io::{BufRead, Write};

/// Unordered 3D point cloud, meters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud3 {
    pub points: Vec<Point3>,
}

impl PointCloud3 {
    pub fn new(points: Vec<Point3>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Read whitespace-separated `x y z` lines. Blank lines and `#` comments
    /// are skipped.
    pub fn read_xyz<R: BufRead>(reader: R) -> Result<Self, PerceptionError> {
        let mut points = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| PerceptionError::Io(e.to_string()))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut it = trimmed.split_whitespace();
            let mut next = || -> Result<f64, PerceptionError> {
                it.next()
                    .ok_or_else(|| PerceptionError::Io(format!("line {}: expected 3 fields", lineno + 1)))?
                    .parse::<f64>()
                    .map_err(|e| PerceptionError::Io(format!("line {}: {}", lineno + 1, e)))
            };
            let (x, y, z) = (next()?, next()?, next()?);
            points.push(Point3 { x, y, z });
        }
        Ok(Self { points })
    }

    /// Write one `x y z` line per point with enough digits to round-trip.
    pub fn write_xyz<W: Write>(&self, writer: &mut W) -> Result<(), PerceptionError> {
        for p in &self.points {
            writeln!(writer, "{:.9} {:.9} {:.9}", p.x, p.y, p.z)
                .map_err(|e| PerceptionError::Io(e.to_string()))?;
        }
        Ok(())
    }
}
