//! Distance, dot-product and sum-product sets binned on dyadic intervals.
//!
//! Every kernel runs twice over the index space: once for the range of
//! values, once to set bits in a bitset over `2^n` bins. Worker bitsets
//! are merged with OR, so results do not depend on the schedule.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::grid_measure::{Dim, Rescale};

/// Guard on the number of pairs (or quadruples) enumerated.
pub const MAX_PAIRS: u128 = 1 << 34;

/// Deepest level a bitset may resolve.
pub const MAX_BIN_LEVEL: u32 = 28;

/// Seeded subsampling applied before enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Subsample {
    pub cap: usize,
    pub seed: u64,
}

/// Occupied level-`level` intervals of a rescaled value set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OccupiedBins {
    pub rescale: Rescale,
    pub level: u32,
    /// Sorted occupied bin indices at `level`.
    pub bins: Vec<u64>,
    /// Pairs or quadruples actually enumerated.
    pub tuples: u128,
    /// The input was subsampled, so counts are lower bounds.
    pub subsampled: bool,
}

impl OccupiedBins {
    /// Occupied bins at a coarser level.
    pub fn bins_at(&self, level: u32) -> Result<Vec<u64>> {
        if level > self.level {
            return Err(Error::RefinementImpossible {
                requested: level,
                available: self.level,
            });
        }
        let shift = self.level - level;
        let mut out: Vec<u64> = self.bins.iter().map(|b| b >> shift).collect();
        out.dedup();
        Ok(out)
    }

    /// `N(·, 2^{-level})` of the rescaled set.
    pub fn count(&self, level: u32) -> Result<u64> {
        Ok(self.bins_at(level)?.len() as u64)
    }

    pub fn counts(&self, levels: impl IntoIterator<Item = u32>) -> Result<Vec<(u32, u64)>> {
        levels
            .into_iter()
            .map(|n| Ok((n, self.count(n)?)))
            .collect()
    }

    /// CSV `level,bin_index` over the given levels.
    pub fn to_csv(&self, levels: impl IntoIterator<Item = u32>) -> Result<String> {
        let mut out = String::from("level,bin_index\n");
        for n in levels {
            for b in self.bins_at(n)? {
                writeln!(out, "{n},{b}").expect("writing to a String cannot fail");
            }
        }
        Ok(out)
    }
}

fn prepare(
    points: &[[f64; 2]],
    sub: Option<Subsample>,
    dim: Dim,
    power: u32,
) -> Result<(Vec<[f64; 2]>, bool)> {
    let cloud = PointCloud::new(dim, points.to_vec())?;
    let (pts, subsampled) = match sub {
        Some(s) if s.cap < cloud.len() => (cloud.subsample(s.cap, s.seed).points().to_vec(), true),
        _ => (cloud.points().to_vec(), false),
    };
    if pts.is_empty() {
        return Err(Error::InsufficientData("empty point set".into()));
    }
    let tuples = (pts.len() as u128).pow(power);
    if tuples > MAX_PAIRS {
        return Err(Error::DataGuard {
            what: "pairs",
            count: tuples,
            limit: MAX_PAIRS,
        });
    }
    Ok((pts, subsampled))
}

fn check_level(level: u32) -> Result<()> {
    if level > MAX_BIN_LEVEL {
        return Err(Error::LevelOutOfRange {
            level,
            max: MAX_BIN_LEVEL,
        });
    }
    Ok(())
}

struct Bitset(Vec<u64>);

impl Bitset {
    fn new(level: u32) -> Self {
        Bitset(vec![0; (1usize << level).div_ceil(64)])
    }

    fn set(&mut self, i: u64) {
        self.0[(i / 64) as usize] |= 1 << (i % 64);
    }

    fn or(mut self, other: Bitset) -> Bitset {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        self
    }

    fn ones(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let t = bits.trailing_zeros() as u64;
                out.push(w as u64 * 64 + t);
                bits &= bits - 1;
            }
        }
        out
    }
}

/// Runs `row(i, emit)` for every row index in parallel, first to find the
/// value range and then to bin into a bitset at `level`.
fn enumerate<R>(
    rows: usize,
    level: u32,
    rescale_of: impl Fn(f64, f64) -> Rescale,
    row: R,
) -> Result<(Rescale, Vec<u64>)>
where
    R: Fn(usize, &mut dyn FnMut(f64)) + Sync,
{
    let (lo, hi) = (0..rows)
        .into_par_iter()
        .map(|i| {
            let mut acc = (f64::INFINITY, f64::NEG_INFINITY);
            row(i, &mut |v| {
                acc.0 = acc.0.min(v);
                acc.1 = acc.1.max(v);
            });
            acc
        })
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |a, b| (a.0.min(b.0), a.1.max(b.1)),
        );
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::MapEvaluation {
            value: if lo.is_finite() { hi } else { lo },
            x: f64::NAN,
            y: f64::NAN,
        });
    }
    let rescale = rescale_of(lo, hi);
    let bits = (0..rows)
        .into_par_iter()
        .fold(
            || Bitset::new(level),
            |mut set, i| {
                row(i, &mut |v| {
                    let b = rescale
                        .bin(v, level)
                        .expect("value lies inside its own range");
                    set.set(b);
                });
                set
            },
        )
        .reduce(|| Bitset::new(level), Bitset::or);
    Ok((rescale, bits.ones()))
}

/// Pairwise distances `|x − y|` (including 0), with `[0, diam]` rescaled
/// onto `[0, 1]`.
pub fn distance_set(
    cloud: &PointCloud,
    level: u32,
    sub: Option<Subsample>,
) -> Result<OccupiedBins> {
    check_level(level)?;
    let (pts, subsampled) = prepare(cloud.points(), sub, cloud.dim(), 2)?;
    let n = pts.len();
    let (rescale, bins) = enumerate(
        n,
        level,
        |_, hi| Rescale::fit(0.0, hi),
        |i, emit| {
            let p = pts[i];
            for q in &pts[i..] {
                emit((p[0] - q[0]).hypot(p[1] - q[1]));
            }
        },
    )?;
    let tuples = (n as u128) * (n as u128 + 1) / 2;
    Ok(OccupiedBins {
        rescale,
        level,
        bins,
        tuples,
        subsampled,
    })
}

#[inline]
fn dot_value(p: [f64; 2], q: [f64; 2], pin: [f64; 2]) -> f64 {
    p[0] * (q[0] - pin[0]) + p[1] * (q[1] - pin[1])
}

/// `x₁ · (x₂ − x₀)` over ordered pairs, with the value range rescaled onto
/// `[0, 1]`.
pub fn dot_product_set(
    cloud: &PointCloud,
    pin: [f64; 2],
    level: u32,
    sub: Option<Subsample>,
) -> Result<OccupiedBins> {
    check_level(level)?;
    if cloud.dim() != Dim::Two {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: cloud.dim().get(),
        });
    }
    let (pts, subsampled) = prepare(cloud.points(), sub, cloud.dim(), 2)?;
    let n = pts.len();
    let (rescale, bins) = enumerate(n, level, Rescale::fit, |i, emit| {
        let p = pts[i];
        for &q in &pts {
            emit(dot_value(p, q, pin));
        }
    })?;
    Ok(OccupiedBins {
        rescale,
        level,
        bins,
        tuples: (n as u128).pow(2),
        subsampled,
    })
}

/// `x(y − a₁) + z(w − a₂)` over quadruples of `A`, with the value range
/// rescaled onto `[0, 1]`.
pub fn sum_product_set(
    a: &[f64],
    a1: f64,
    a2: f64,
    level: u32,
    sub: Option<Subsample>,
) -> Result<OccupiedBins> {
    check_level(level)?;
    let reals: Vec<[f64; 2]> = a.iter().map(|&x| [x, 0.0]).collect();
    let (pts, subsampled) = prepare(&reals, sub, Dim::One, 4)?;
    let xs: Vec<f64> = pts.iter().map(|p| p[0]).collect();
    let n = xs.len();
    let pin = [a1, a2];
    // row (x, z) ranges over y, w
    let (rescale, bins) = enumerate(n * n, level, Rescale::fit, |r, emit| {
        let (x, z) = (xs[r / n], xs[r % n]);
        for &y in &xs {
            for &w in &xs {
                emit(dot_value([x, z], [y, w], pin));
            }
        }
    })?;
    Ok(OccupiedBins {
        rescale,
        level,
        bins,
        tuples: (n as u128).pow(4),
        subsampled,
    })
}
