//! Box-counting slopes, entropy-to-covering bounds and projection averages.

mod chain;

pub use chain::{
    frame_chain, multiscale_chain, ChainFrame, ChainParams, ChainReport, DirectionRow, StageRow,
};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid_measure::{Dim, DyadicCube, GridMeasure};
use crate::maps::{projection, DirectionNet};

/// Largest sampled linear-growth constant accepted by
/// [`average_projection_entropy`].
pub const GROWTH_LIMIT: f64 = 64.0;

/// Support points probed by the growth check.
pub const GROWTH_SAMPLES: usize = 256;

/// Slack `ε` in the entropy-to-covering exponent.
pub const COVERING_EPSILON: f64 = 1e-6;

/// Least-squares fit of `log₂ N(·, 2^{-n})` against `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub levels: Vec<u32>,
    pub counts: Vec<u64>,
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute deviation of a point from the fitted line.
    pub residual: f64,
    pub window: [u32; 2],
}

#[derive(Serialize)]
struct EstimateSummary {
    slope: f64,
    residual: f64,
    window: [u32; 2],
}

impl DimensionEstimate {
    /// CSV `n,count,log2count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,log2count\n");
        for (n, c) in self.levels.iter().zip(&self.counts) {
            writeln!(out, "{n},{c},{:.12}", (*c as f64).log2())
                .expect("writing to a String cannot fail");
        }
        out
    }

    /// One-line JSON `{"slope":..,"residual":..,"window":[..]}`.
    pub fn summary_json(&self) -> String {
        serde_json::to_string(&EstimateSummary {
            slope: self.slope,
            residual: self.residual,
            window: self.window,
        })
        .expect("summary serialises")
    }

    /// The fitted slope lies in `[0, d]` and counts respect `1 <= N <= 2^{d n}`.
    pub fn is_consistent(&self, dim: Dim) -> bool {
        let d = dim.get() as f64;
        let counts_ok = self
            .levels
            .iter()
            .zip(&self.counts)
            .all(|(&n, &c)| c >= 1 && (c as f64).log2() <= d * n as f64 + 1e-9);
        let monotone = self.counts.windows(2).all(|w| w[0] <= w[1]);
        counts_ok && monotone && self.slope >= -1e-9 && self.slope <= d + 1e-9
    }
}

/// Fits the slope over all given `(n, N)` pairs.
pub fn box_count(counts: &[(u32, u64)]) -> Result<DimensionEstimate> {
    if counts.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "box counting needs at least 3 levels, got {}",
            counts.len()
        )));
    }
    if let Some((n, _)) = counts.iter().find(|(_, c)| *c == 0) {
        return Err(Error::InsufficientData(format!("empty cover at level {n}")));
    }
    let xs: Vec<f64> = counts.iter().map(|(n, _)| *n as f64).collect();
    let ys: Vec<f64> = counts.iter().map(|(_, c)| (*c as f64).log2()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(
            "box counting needs distinct levels".into(),
        ));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    let levels: Vec<u32> = counts.iter().map(|(n, _)| *n).collect();
    Ok(DimensionEstimate {
        window: [
            *levels.iter().min().expect("non-empty"),
            *levels.iter().max().expect("non-empty"),
        ],
        levels,
        counts: counts.iter().map(|(_, c)| *c).collect(),
        slope,
        intercept,
        residual,
    })
}

/// Drops levels whose counts have saturated (`N = saturation`) or sit at
/// the floor (`N <= 2`).
pub fn informative_levels(counts: &[(u32, u64)], saturation: u64) -> Vec<(u32, u64)> {
    counts
        .iter()
        .copied()
        .filter(|&(_, c)| c > 2 && c < saturation)
        .collect()
}

/// Outcome of [`entropy_support_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupportBound {
    /// `H_n(ν)`.
    pub entropy: f64,
    /// `t = H_n(ν) − 1/(n ln 2) − ε`.
    pub t: f64,
    pub support_count: usize,
    /// `2^{n t}`.
    pub guaranteed: f64,
    pub holds: bool,
}

/// Compares the support count at level `n` with `2^{nt}`.
pub fn entropy_support_bound(nu: &GridMeasure, n: u32) -> Result<SupportBound> {
    entropy_support_bound_with(nu, n, |mu, k| mu.entropy(k))
}

pub(crate) fn entropy_support_bound_with<H>(
    nu: &GridMeasure,
    n: u32,
    entropy: H,
) -> Result<SupportBound>
where
    H: Fn(&GridMeasure, u32) -> Result<f64>,
{
    if n == 0 {
        return Err(Error::LevelOutOfRange {
            level: 0,
            max: nu.level(),
        });
    }
    let h = entropy(nu, n)? / n as f64;
    let t = h - 1.0 / (n as f64 * std::f64::consts::LN_2) - COVERING_EPSILON;
    let count = nu.coarsen(n)?.support_count();
    let guaranteed = (n as f64 * t).exp2();
    Ok(SupportBound {
        entropy: h,
        t,
        support_count: count,
        guaranteed,
        holds: count as f64 > guaranteed,
    })
}

/// Outcome of [`weighted_covering_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoveringBound {
    /// `Σ p_e N_e`.
    pub weighted_count: f64,
    /// `log₂(Σ p_e N_e) − n t`.
    pub margin: f64,
    pub pass: bool,
}

/// `Σ_e p_e N_e` against `2^{nt}`.
pub fn weighted_covering_bound(
    net: &DirectionNet,
    counts: &[u64],
    n: u32,
    t: f64,
) -> Result<CoveringBound> {
    weighted_covering(net.weights(), counts, n, t)
}

pub fn weighted_covering(weights: &[f64], counts: &[u64], n: u32, t: f64) -> Result<CoveringBound> {
    if weights.len() != counts.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            found: counts.len(),
        });
    }
    let weighted_count: f64 = weights.iter().zip(counts).map(|(p, &c)| p * c as f64).sum();
    let margin = weighted_count.log2() - n as f64 * t;
    Ok(CoveringBound {
        weighted_count,
        margin,
        pass: margin > 0.0,
    })
}

/// Sampled `max μ(B(x,r))/r` over support points `x` and dyadic radii
/// `r ∈ [2^{-level}, 1]` (open balls around atom centres).
pub fn linear_growth_constant(mu: &GridMeasure) -> f64 {
    let centers: Vec<([f64; 2], f64)> = mu.cubes().map(|(q, m)| (q.center(), m)).collect();
    let stride = centers.len().div_ceil(GROWTH_SAMPLES).max(1);
    let level = mu.level();
    centers
        .par_iter()
        .step_by(stride)
        .map(|&(x, _)| {
            let mut dist: Vec<(f64, f64)> = centers
                .iter()
                .map(|&(c, m)| ((c[0] - x[0]).hypot(c[1] - x[1]), m))
                .collect();
            dist.sort_by(|a, b| a.0.total_cmp(&b.0));
            let (mut acc, mut idx, mut worst) = (0.0, 0, 0.0f64);
            for j in (0..=level).rev() {
                let r = (-(j as f64)).exp2();
                while idx < dist.len() && dist[idx].0 < r {
                    acc += dist[idx].1;
                    idx += 1;
                }
                worst = worst.max(acc / r);
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

/// `Σ_e p_e H_m(π_e♯μ)` on the dyadic partitions of `ℝ`, without the
/// growth check.
pub fn projection_average(mu: &GridMeasure, net: &DirectionNet, m: u32) -> Result<f64> {
    if m == 0 || m > mu.level() {
        return Err(Error::LevelOutOfRange {
            level: m,
            max: mu.level(),
        });
    }
    if mu.dim() != Dim::Two {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: mu.dim().get(),
        });
    }
    let terms: Vec<f64> = net
        .vectors()
        .par_iter()
        .map(|&e| {
            let push = mu.pushforward_line(projection(e)?, m)?;
            Ok(push.line_entropy(m)? / m as f64)
        })
        .collect::<Result<_>>()?;
    Ok(terms.iter().zip(net.weights()).map(|(h, p)| p * h).sum())
}

/// Weighted projection entropy for measures with linear growth; fails with
/// an inapplicable-measure error when the sampled growth constant exceeds
/// [`GROWTH_LIMIT`].
pub fn average_projection_entropy(mu: &GridMeasure, net: &DirectionNet, m: u32) -> Result<f64> {
    let growth = linear_growth_constant(mu);
    if growth > GROWTH_LIMIT {
        return Err(Error::InapplicableMeasure {
            growth,
            limit: GROWTH_LIMIT,
        });
    }
    projection_average(mu, net, m)
}

/// Positive-mass level-`level` squares inside `q0`.
pub fn positive_squares(mu: &GridMeasure, q0: &DyadicCube, level: u32) -> Result<usize> {
    Ok(mu
        .coarsen(level)?
        .cubes()
        .filter(|(q, _)| q0.contains_cube(q))
        .count())
}
