use serde::{Deserialize, Serialize};

use super::{merge_sorted, Dim, GridMeasure};
use crate::error::{Error, Result};

/// Slack for rounding at the edges of a fitted window.
const WINDOW_SLACK: f64 = 1e-9;

/// Affine map `v ↦ (v − offset)·scale` placing map values inside `[0,1]`.
///
/// A rescale with `level_shift = Some(w)` has an integer offset and
/// `scale = 2^{-w}`. Such a rescale carries the dyadic partition `𝒟_k` of
/// the real line exactly onto the grid partition at level `k + w`, so
/// entropies computed through it are entropies on `ℝ` itself.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rescale {
    pub offset: f64,
    pub scale: f64,
    pub level_shift: Option<u32>,
}

impl Rescale {
    /// `[min, max]` onto `[0, 1]` with no padding; `max` lands in the last bin.
    pub fn fit(min: f64, max: f64) -> Self {
        let span = max - min;
        let scale = if span > 0.0 { 1.0 / span } else { 1.0 };
        Rescale {
            offset: min,
            scale,
            level_shift: None,
        }
    }

    /// Smallest window `[⌊min⌋, ⌊min⌋ + 2^w)` with `2^w > max − ⌊min⌋`.
    pub fn dyadic_fit(min: f64, max: f64) -> Self {
        let offset = min.floor();
        let span = max - offset;
        let mut w = 0u32;
        while (w as f64).exp2() <= span {
            w += 1;
        }
        Rescale {
            offset,
            scale: (-(w as f64)).exp2(),
            level_shift: Some(w),
        }
    }

    pub fn identity() -> Self {
        Rescale {
            offset: 0.0,
            scale: 1.0,
            level_shift: Some(0),
        }
    }

    pub fn apply(&self, v: f64) -> f64 {
        (v - self.offset) * self.scale
    }

    /// Grid bin of `v` at `level`.
    pub fn bin(&self, v: f64, level: u32) -> Result<u64> {
        let cells = 1u64 << level;
        if let Some(w) = self.level_shift {
            if level >= w {
                // floor(v·2^k) − offset·2^k is exact in binary arithmetic
                let k = level - w;
                let line = (v * (k as f64).exp2()).floor() - self.offset * (k as f64).exp2();
                if line < 0.0 || line >= cells as f64 {
                    return Err(Error::OutsideWindow { value: v });
                }
                return Ok(line as u64);
            }
        }
        let u = self.apply(v);
        if !(-WINDOW_SLACK..=1.0 + WINDOW_SLACK).contains(&u) {
            return Err(Error::OutsideWindow { value: v });
        }
        Ok(((u.max(0.0) * cells as f64).floor() as u64).min(cells - 1))
    }
}

/// How a pushforward chooses its range window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RescaleMode {
    /// `[min f, max f]` onto `[0,1]`.
    Fit,
    /// Power-of-two window with integer offset (exact dyadic partitions of `ℝ`).
    Dyadic,
    /// Caller-supplied window, shared between several pushforwards.
    Fixed(Rescale),
}

/// A one-dimensional image measure together with the window it was binned in.
#[derive(Clone, Debug, PartialEq)]
pub struct Pushforward {
    pub measure: GridMeasure,
    pub rescale: Rescale,
}

impl Pushforward {
    /// Grid level representing level `k` of the real line.
    pub fn line_level(&self, k: u32) -> Result<u32> {
        let w = self
            .rescale
            .level_shift
            .ok_or_else(|| Error::Config("line levels need a dyadic rescale".into()))?;
        Ok(k + w)
    }

    /// `H(f♯μ, 𝒟_k)` on the real line.
    pub fn line_entropy(&self, k: u32) -> Result<f64> {
        self.measure.entropy(self.line_level(k)?)
    }

    pub fn line_conditional_entropy(&self, fine: u32, coarse: u32) -> Result<f64> {
        self.measure
            .conditional_entropy(self.line_level(fine)?, self.line_level(coarse)?)
    }

    /// Number of level-`k` intervals of `ℝ` with positive mass.
    pub fn line_support_count(&self, k: u32) -> Result<usize> {
        Ok(self.measure.coarsen(self.line_level(k)?)?.support_count())
    }
}

impl GridMeasure {
    fn map_values<F>(&self, f: &F) -> Result<Vec<f64>>
    where
        F: Fn([f64; 2]) -> f64,
    {
        self.cubes()
            .map(|(q, _)| {
                let p = q.center();
                let v = f(p);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::MapEvaluation {
                        value: v,
                        x: p[0],
                        y: p[1],
                    })
                }
            })
            .collect()
    }

    fn bin_values(&self, values: &[f64], rescale: Rescale, out_level: u32) -> Result<Pushforward> {
        let mut items = Vec::with_capacity(values.len());
        for (&v, &(_, m)) in values.iter().zip(&self.atoms) {
            items.push(([rescale.bin(v, out_level)?, 0], m));
        }
        Ok(Pushforward {
            measure: GridMeasure {
                dim: Dim::One,
                level: out_level,
                atoms: merge_sorted(items),
            },
            rescale,
        })
    }

    /// `f♯μ` binned into level-`out_level` intervals of the rescaled range.
    ///
    /// Each atom's mass goes to the interval containing `f` at the atom's
    /// centre, so the operation is exactly linear in `μ`.
    pub fn pushforward<F>(&self, f: F, out_level: u32, mode: RescaleMode) -> Result<Pushforward>
    where
        F: Fn([f64; 2]) -> f64,
    {
        let values = self.map_values(&f)?;
        let rescale = match mode {
            RescaleMode::Fixed(r) => r,
            RescaleMode::Fit | RescaleMode::Dyadic => {
                let (lo, hi) = min_max(&values);
                if mode == RescaleMode::Fit {
                    Rescale::fit(lo, hi)
                } else {
                    Rescale::dyadic_fit(lo, hi)
                }
            }
        };
        if let Some(w) = rescale.level_shift {
            if out_level < w && mode == RescaleMode::Dyadic {
                return Err(Error::LevelOutOfRange {
                    level: out_level,
                    max: w,
                });
            }
        }
        self.bin_values(&values, rescale, out_level)
    }

    /// `f♯μ` on the dyadic partitions of `ℝ`, resolved down to `line_level`.
    pub fn pushforward_line<F>(&self, f: F, line_level: u32) -> Result<Pushforward>
    where
        F: Fn([f64; 2]) -> f64,
    {
        let values = self.map_values(&f)?;
        let (lo, hi) = min_max(&values);
        let rescale = Rescale::dyadic_fit(lo, hi);
        let w = rescale.level_shift.unwrap_or(0);
        self.bin_values(&values, rescale, line_level + w)
    }
}

pub(crate) fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}
