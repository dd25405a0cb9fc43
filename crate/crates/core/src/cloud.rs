//! Finite point sets in `ℝ` or `ℝ²` and their text format.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid_measure::Dim;

/// Points stored as `[x, y]`; for `d = 1` the second entry is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: Dim,
    points: Vec<[f64; 2]>,
}

impl PointCloud {
    pub fn new(dim: Dim, points: Vec<[f64; 2]>) -> Result<Self> {
        for p in &points {
            if !p[0].is_finite() || !p[1].is_finite() || (dim == Dim::One && p[1] != 0.0) {
                return Err(Error::InvalidMeasure(format!(
                    "bad point {p:?} for d = {dim}"
                )));
            }
        }
        Ok(PointCloud { dim, points })
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        PointCloud::new(Dim::One, values.iter().map(|&x| [x, 0.0]).collect())
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First coordinates; the set `A` of a one-dimensional cloud.
    pub fn reals(&self) -> Vec<f64> {
        self.points.iter().map(|p| p[0]).collect()
    }

    /// `A × A` for a one-dimensional cloud, in row-major order.
    pub fn square(&self) -> Result<PointCloud> {
        if self.dim != Dim::One {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dim.get(),
            });
        }
        let xs = self.reals();
        let mut pts = Vec::with_capacity(xs.len() * xs.len());
        for &x in &xs {
            for &y in &xs {
                pts.push([x, y]);
            }
        }
        Ok(PointCloud {
            dim: Dim::Two,
            points: pts,
        })
    }

    pub fn translated(&self, v: [f64; 2]) -> PointCloud {
        let v = if self.dim == Dim::One { [v[0], 0.0] } else { v };
        PointCloud {
            dim: self.dim,
            points: self
                .points
                .iter()
                .map(|p| [p[0] + v[0], p[1] + v[1]])
                .collect(),
        }
    }

    /// Seeded uniform sample without replacement, keeping the original order.
    pub fn subsample(&self, cap: usize, seed: u64) -> PointCloud {
        if cap >= self.points.len() {
            return self.clone();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked = index::sample(&mut rng, self.points.len(), cap).into_vec();
        picked.sort_unstable();
        PointCloud {
            dim: self.dim,
            points: picked.into_iter().map(|i| self.points[i]).collect(),
        }
    }

    /// Index of a point equal to `p` within `tol`, if any.
    pub fn position_of(&self, p: [f64; 2], tol: f64) -> Option<usize> {
        self.points
            .iter()
            .position(|q| (q[0] - p[0]).abs() <= tol && (q[1] - p[1]).abs() <= tol)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("#cloud v1 d={}\n", self.dim);
        for p in &self.points {
            match self.dim {
                Dim::One => writeln!(out, "{:.17e}", p[0]),
                Dim::Two => writeln!(out, "{:.17e} {:.17e}", p[0], p[1]),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<PointCloud> {
        let mut lines = text.lines().enumerate();
        let dim = match lines.next().map(|(_, l)| l.trim()) {
            Some("#cloud v1 d=1") => Dim::One,
            Some("#cloud v1 d=2") => Dim::Two,
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: "expected `#cloud v1 d=<1|2>`".into(),
                })
            }
        };
        let mut points = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let vals: std::result::Result<Vec<f64>, _> =
                line.split_whitespace().map(str::parse).collect();
            let vals = vals.map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
            if vals.len() != dim.get() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {} coordinates, found {}", dim.get(), vals.len()),
                });
            }
            points.push([vals[0], vals.get(1).copied().unwrap_or(0.0)]);
        }
        PointCloud::new(dim, points)
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<PointCloud> {
        PointCloud::from_text(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_exact() {
        let c = PointCloud::new(Dim::Two, vec![[0.1, 0.7], [1.0 / 3.0, 0.0]]).unwrap();
        assert_eq!(PointCloud::from_text(&c.to_text()).unwrap(), c);
        let r = PointCloud::from_reals(&[0.0, 0.75, 1e-9]).unwrap();
        assert!(r.to_text().starts_with("#cloud v1 d=1\n"));
        assert_eq!(PointCloud::from_text(&r.to_text()).unwrap(), r);
    }

    #[test]
    fn rejects_wrong_arity() {
        assert!(PointCloud::from_text("#cloud v1 d=2\n0.5\n").is_err());
        assert!(PointCloud::from_text("0.5 0.5\n").is_err());
    }

    #[test]
    fn subsample_is_seeded_and_ordered() {
        let c = PointCloud::from_reals(&(0..100).map(f64::from).collect::<Vec<_>>()).unwrap();
        let a = c.subsample(10, 3);
        assert_eq!(a, c.subsample(10, 3));
        assert_eq!(a.len(), 10);
        assert!(a.reals().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn square_of_reals() {
        let c = PointCloud::from_reals(&[0.0, 1.0])
            .unwrap()
            .square()
            .unwrap();
        assert_eq!(
            c.points(),
            &[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]
        );
    }
}
