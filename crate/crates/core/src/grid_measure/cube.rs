use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finest dyadic level the integer addressing supports.
pub const MAX_LEVEL: u32 = 60;

/// Ambient dimension of a dyadic grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn get(self) -> usize {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }

    pub fn from_usize(d: usize) -> Result<Dim> {
        match d {
            1 => Ok(Dim::One),
            2 => Ok(Dim::Two),
            other => Err(Error::Config(format!(
                "dimension must be 1 or 2, got {other}"
            ))),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// Half-open cube `2^-level * ([0,1)^d + coords)` inside `[0,1)^d`.
///
/// For `d = 1` the second coordinate is always zero, so points and
/// addresses can share the `[_; 2]` representation used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicCube {
    level: u32,
    coords: [u64; 2],
    dim: Dim,
}

impl DyadicCube {
    pub fn new(dim: Dim, level: u32, coords: [u64; 2]) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::LevelOutOfRange {
                level,
                max: MAX_LEVEL,
            });
        }
        let bound = 1u64 << level;
        if coords[0] >= bound || coords[1] >= bound || (dim == Dim::One && coords[1] != 0) {
            return Err(Error::InvalidMeasure(format!(
                "cube coordinates {coords:?} out of range for level {level}, d = {dim}"
            )));
        }
        Ok(DyadicCube { level, coords, dim })
    }

    pub(crate) fn from_raw(dim: Dim, level: u32, coords: [u64; 2]) -> Self {
        debug_assert!(DyadicCube::new(dim, level, coords).is_ok());
        DyadicCube { level, coords, dim }
    }

    /// The cube `[0,1)^d`.
    pub fn unit(dim: Dim) -> Self {
        DyadicCube {
            level: 0,
            coords: [0, 0],
            dim,
        }
    }

    /// The level-`level` cube containing `point`; points on the upper
    /// boundary of `[0,1]` are assigned to the last cube.
    pub fn containing(dim: Dim, level: u32, point: [f64; 2]) -> Result<Self> {
        let scale = (1u64 << level) as f64;
        let last = (1u64 << level) - 1;
        let mut coords = [0u64; 2];
        for (axis, c) in coords.iter_mut().enumerate().take(dim.get()) {
            let x = point[axis];
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::OutsideWindow { value: x });
            }
            *c = ((x * scale).floor() as u64).min(last);
        }
        DyadicCube::new(dim, level, coords)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> [u64; 2] {
        self.coords
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn side(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    /// Lower-left corner `a` in `Q = r[0,1)^d + a`.
    pub fn corner(&self) -> [f64; 2] {
        let r = self.side();
        [self.coords[0] as f64 * r, self.coords[1] as f64 * r]
    }

    pub fn center(&self) -> [f64; 2] {
        let r = self.side();
        let mut c = [(self.coords[0] as f64 + 0.5) * r, 0.0];
        if self.dim == Dim::Two {
            c[1] = (self.coords[1] as f64 + 0.5) * r;
        }
        c
    }

    /// Corners of the closed cube (2 for d = 1, 4 for d = 2).
    pub fn vertices(&self) -> Vec<[f64; 2]> {
        let [x, y] = self.corner();
        let r = self.side();
        match self.dim {
            Dim::One => vec![[x, 0.0], [x + r, 0.0]],
            Dim::Two => vec![[x, y], [x + r, y], [x, y + r], [x + r, y + r]],
        }
    }

    pub fn parent(&self) -> Option<Self> {
        (self.level > 0).then(|| self.ancestor(self.level - 1))
    }

    /// Ancestor at a coarser `level`; panics if `level > self.level()`.
    pub fn ancestor(&self, level: u32) -> Self {
        assert!(
            level <= self.level,
            "ancestor level must not exceed cube level"
        );
        let shift = self.level - level;
        DyadicCube {
            level,
            coords: [self.coords[0] >> shift, self.coords[1] >> shift],
            dim: self.dim,
        }
    }

    pub fn contains_cube(&self, other: &DyadicCube) -> bool {
        other.dim == self.dim && other.level >= self.level && other.ancestor(self.level) == *self
    }

    /// Half-open containment.
    pub fn contains_point(&self, p: [f64; 2]) -> bool {
        let [x, y] = self.corner();
        let r = self.side();
        let inside_x = p[0] >= x && p[0] < x + r;
        match self.dim {
            Dim::One => inside_x,
            Dim::Two => inside_x && p[1] >= y && p[1] < y + r,
        }
    }

    /// Membership of `p` in the closed cube.
    pub fn closure_contains(&self, p: [f64; 2]) -> bool {
        let [x, y] = self.corner();
        let r = self.side();
        let inside_x = p[0] >= x && p[0] <= x + r;
        match self.dim {
            Dim::One => inside_x,
            Dim::Two => inside_x && p[1] >= y && p[1] <= y + r,
        }
    }

    /// All descendants `levels` generations down, in lexicographic order.
    pub fn descendants(&self, levels: u32) -> Vec<DyadicCube> {
        let k = 1u64 << levels;
        let base = [self.coords[0] << levels, self.coords[1] << levels];
        let ys = if self.dim == Dim::Two { k } else { 1 };
        let mut out = Vec::with_capacity((k * ys) as usize);
        for i in 0..k {
            for j in 0..ys {
                out.push(DyadicCube {
                    level: self.level + levels,
                    coords: [
                        base[0] + i,
                        if self.dim == Dim::Two { base[1] + j } else { 0 },
                    ],
                    dim: self.dim,
                });
            }
        }
        out
    }
}

impl PartialOrd for DyadicCube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicCube {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, self.level, self.coords).cmp(&(other.dim, other.level, other.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parent_floor_halves_coordinates() {
        let q = DyadicCube::new(Dim::Two, 3, [5, 6]).unwrap();
        let p = q.parent().unwrap();
        assert_eq!(p.level(), 2);
        assert_eq!(p.coords(), [2, 3]);
        assert!(p.contains_cube(&q));
        assert!(!DyadicCube::new(Dim::Two, 2, [2, 2])
            .unwrap()
            .contains_cube(&q));
    }

    #[test]
    fn refinement_is_a_partition() {
        let q = DyadicCube::new(Dim::Two, 1, [1, 0]).unwrap();
        let kids = q.descendants(2);
        assert_eq!(kids.len(), 16);
        for level3 in DyadicCube::unit(Dim::Two).descendants(3) {
            let owners = DyadicCube::unit(Dim::Two)
                .descendants(2)
                .into_iter()
                .filter(|c| c.contains_cube(&level3))
                .count();
            assert_eq!(owners, 1);
        }
    }

    #[test]
    fn geometry_of_cube() {
        let q = DyadicCube::new(Dim::Two, 2, [1, 3]).unwrap();
        assert_eq!(q.corner(), [0.25, 0.75]);
        assert_eq!(q.center(), [0.375, 0.875]);
        assert!(q.contains_point([0.25, 0.75]));
        assert!(!q.contains_point([0.5, 0.8]));
        assert!(q.closure_contains([0.5, 1.0]));
    }

    #[test]
    fn rejects_bad_coordinates() {
        assert!(DyadicCube::new(Dim::Two, 2, [4, 0]).is_err());
        assert!(DyadicCube::new(Dim::One, 2, [1, 1]).is_err());
        assert!(DyadicCube::new(Dim::One, MAX_LEVEL + 1, [0, 0]).is_err());
    }

    #[test]
    fn containing_clamps_upper_boundary() {
        let q = DyadicCube::containing(Dim::One, 3, [1.0, 0.0]).unwrap();
        assert_eq!(q.coords(), [7, 0]);
        assert!(DyadicCube::containing(Dim::Two, 3, [0.5, 1.5]).is_err());
    }
}
