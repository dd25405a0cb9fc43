//! Self-similar sets generated by homogeneous iterated function systems.
//!
//! Only contraction ratios `2^{-j}` with translations on the `2^{-j}` grid
//! are accepted. Every cylinder of generation `g` is then exactly a dyadic
//! cube of level `g·j`, and the natural measure (equal mass on each
//! cylinder) is represented without smearing.

use std::path::Path;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::grid_measure::{Dim, DyadicCube, GridMeasure};

/// Upper limit on generated cylinders.
pub const MAX_ATOMS: u128 = 1 << 26;

/// Density factor in the good-square condition `μ(Q) >= ℓ(Q)^s / (10 A)`.
pub const GOOD_SQUARE_FACTOR: f64 = 10.0;

/// IFS description as read from JSON, e.g.
/// `{"d":2, "ratio":0.25, "maps":[[0,0],[0.75,0]], "label":"x"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IfsConfig {
    pub d: usize,
    pub ratio: f64,
    pub maps: Vec<Vec<f64>>,
    pub label: String,
}

/// A homogeneous IFS `x ↦ ratio·x + t_i` satisfying the open set condition
/// on `[0,1)^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct IfsSystem {
    dim: Dim,
    ratio: f64,
    translations: Vec<[f64; 2]>,
    label: String,
    // levels per generation and integer translations on the 2^{-j} grid
    bits: u32,
    offsets: Vec<[u64; 2]>,
}

impl IfsSystem {
    pub fn new(
        dim: Dim,
        ratio: f64,
        translations: Vec<[f64; 2]>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::Config(format!("ratio {ratio} must lie in (0,1)")));
        }
        if translations.is_empty() {
            return Err(Error::Config("an IFS needs at least one map".into()));
        }
        let inv = 1.0 / ratio;
        let bits = inv.log2().round();
        if bits < 1.0 || bits.exp2() != inv {
            return Err(Error::Alignment(format!(
                "ratio {ratio} is not a negative power of two"
            )));
        }
        let bits = bits as u32;
        let cells = 1u64 << bits;
        let mut offsets = Vec::with_capacity(translations.len());
        for t in &translations {
            if dim == Dim::One && t[1] != 0.0 {
                return Err(Error::Config(format!(
                    "translation {t:?} has a second coordinate in d = 1"
                )));
            }
            let mut o = [0u64; 2];
            for axis in 0..dim.get() {
                let scaled = t[axis] * inv;
                if scaled.fract() != 0.0 || scaled < 0.0 || scaled >= cells as f64 {
                    return Err(Error::Alignment(format!(
                        "translation {t:?} is not on the {ratio} grid inside [0, 1 - ratio]"
                    )));
                }
                o[axis] = scaled as u64;
            }
            offsets.push(o);
        }
        let mut sorted = offsets.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config(
                "open set condition fails: two maps share an image cell".into(),
            ));
        }
        Ok(IfsSystem {
            dim,
            ratio,
            translations,
            label: label.into(),
            bits,
            offsets,
        })
    }

    pub fn from_config(cfg: &IfsConfig) -> Result<Self> {
        let dim = Dim::from_usize(cfg.d)?;
        let translations = cfg
            .maps
            .iter()
            .map(|m| {
                if m.len() != cfg.d {
                    return Err(Error::Config(format!(
                        "map {m:?} does not have {} coordinates",
                        cfg.d
                    )));
                }
                Ok([m[0], m.get(1).copied().unwrap_or(0.0)])
            })
            .collect::<Result<Vec<_>>>()?;
        IfsSystem::new(dim, cfg.ratio, translations, cfg.label.clone())
    }

    pub fn to_config(&self) -> IfsConfig {
        IfsConfig {
            d: self.dim.get(),
            ratio: self.ratio,
            maps: self
                .translations
                .iter()
                .map(|t| t[..self.dim.get()].to_vec())
                .collect(),
            label: self.label.clone(),
        }
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let cfg: IfsConfig = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        IfsSystem::from_config(&cfg)
    }

    /// Built-in systems: `four-corner` (s = 1), `garnett-8` (s = 3/2),
    /// `middle-half` (d = 1, s = 1/2) and `full-square` (s = 2).
    pub fn catalogue(name: &str) -> Result<Self> {
        let q = 0.25;
        match name {
            "four-corner" => IfsSystem::new(
                Dim::Two,
                q,
                vec![[0.0, 0.0], [0.75, 0.0], [0.0, 0.75], [0.75, 0.75]],
                name,
            ),
            // corners of the 4x4 ring plus a pinwheel of edge cells
            "garnett-8" => IfsSystem::new(
                Dim::Two,
                q,
                vec![
                    [0.0, 0.0],
                    [0.75, 0.0],
                    [0.0, 0.75],
                    [0.75, 0.75],
                    [0.25, 0.0],
                    [0.75, 0.25],
                    [0.5, 0.75],
                    [0.0, 0.5],
                ],
                name,
            ),
            "middle-half" => IfsSystem::new(Dim::One, q, vec![[0.0, 0.0], [0.75, 0.0]], name),
            "full-square" => IfsSystem::new(
                Dim::Two,
                0.5,
                vec![[0.0, 0.0], [0.5, 0.0], [0.0, 0.5], [0.5, 0.5]],
                name,
            ),
            other => Err(Error::Config(format!("unknown catalogue model `{other}`"))),
        }
    }

    pub fn catalogue_names() -> &'static [&'static str] {
        &["four-corner", "garnett-8", "middle-half", "full-square"]
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn map_count(&self) -> usize {
        self.translations.len()
    }

    /// Dyadic levels per generation, `log2(1/ratio)`.
    pub fn levels_per_generation(&self) -> u32 {
        self.bits
    }

    /// `s = log(#maps) / log(1/ratio)`.
    pub fn similarity_dimension(&self) -> f64 {
        (self.map_count() as f64).ln() / (1.0 / self.ratio).ln()
    }
}

/// A generated self-similar set with its dimension and regularity constant.
#[derive(Clone, Debug, PartialEq)]
pub struct AdRegularModel {
    pub system: IfsSystem,
    pub s: f64,
    /// Empirical AD-regularity constant, once measured.
    pub a: Option<f64>,
    pub depth: u32,
}

/// Cylinder centres and the natural measure at one generation.
#[derive(Clone, Debug, PartialEq)]
pub struct Cylinders {
    pub cloud: PointCloud,
    pub measure: GridMeasure,
}

/// Outcome of [`AdRegularModel::verify_ad_regularity`].
#[derive(Clone, Debug, PartialEq)]
pub struct AdReport {
    pub a: f64,
    pub worst_point: [f64; 2],
    pub worst_radius: f64,
    pub samples: usize,
}

/// Parameters of [`dense_square_search`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseSquareQuery {
    pub region: DyadicCube,
    /// Only squares whose closure contains this point qualify.
    pub base: Option<[f64; 2]>,
    /// Deepest level examined; the search walks up towards `region`.
    pub max_level: u32,
}

fn guard(count: u128) -> Result<()> {
    if count > MAX_ATOMS {
        return Err(Error::DataGuard {
            what: "cylinders",
            count,
            limit: MAX_ATOMS,
        });
    }
    Ok(())
}

impl AdRegularModel {
    pub fn new(system: IfsSystem, depth: u32) -> Result<Self> {
        let count = (system.map_count() as u128)
            .checked_pow(depth)
            .unwrap_or(u128::MAX);
        guard(count)?;
        let level = depth * system.levels_per_generation();
        if level > 30 {
            return Err(Error::LevelOutOfRange { level, max: 30 });
        }
        Ok(AdRegularModel {
            s: system.similarity_dimension(),
            system,
            a: None,
            depth,
        })
    }

    pub fn dim(&self) -> Dim {
        self.system.dim()
    }

    /// Dyadic level of the generation-`depth` cylinders.
    pub fn level(&self) -> u32 {
        self.depth * self.system.levels_per_generation()
    }

    pub fn cylinder_count(&self) -> u128 {
        (self.system.map_count() as u128).pow(self.depth)
    }

    /// All generation-`depth` cylinders, enumerated depth-first in map order.
    pub fn generate_cylinders(&self) -> Result<Cylinders> {
        let sys = &self.system;
        let bits = sys.levels_per_generation();
        let coords: Vec<[u64; 2]> = if self.depth == 0 {
            vec![[0, 0]]
        } else {
            sys.offsets
                .par_iter()
                .map(|&first| {
                    let mut out = vec![first];
                    for _ in 1..self.depth {
                        let mut next = Vec::with_capacity(out.len() * sys.offsets.len());
                        for c in &out {
                            for o in &sys.offsets {
                                next.push([(c[0] << bits) + o[0], (c[1] << bits) + o[1]]);
                            }
                        }
                        out = next;
                    }
                    out
                })
                .collect::<Vec<_>>()
                .concat()
        };
        self.assemble(coords)
    }

    /// Generation-`depth` cylinders inside `region`, normalised to a
    /// probability measure: the natural measure restricted to `region`.
    pub fn cylinders_within(&self, region: &DyadicCube, depth: u32) -> Result<Cylinders> {
        let sys = &self.system;
        let bits = sys.levels_per_generation();
        if region.dim() != sys.dim() {
            return Err(Error::DimensionMismatch {
                expected: sys.dim().get(),
                found: region.dim().get(),
            });
        }
        let model = AdRegularModel {
            depth,
            ..self.clone()
        };
        if depth * bits > 30 {
            return Err(Error::LevelOutOfRange {
                level: depth * bits,
                max: 30,
            });
        }
        let overlaps = |c: [u64; 2], gen: u32| {
            let cube = DyadicCube::from_raw(sys.dim(), gen * bits, c);
            cube.contains_cube(region) || region.contains_cube(&cube)
        };
        let mut frontier = vec![[0u64, 0u64]];
        for gen in 1..=depth {
            let mut next = Vec::new();
            for c in &frontier {
                for o in &sys.offsets {
                    let child = [(c[0] << bits) + o[0], (c[1] << bits) + o[1]];
                    if overlaps(child, gen) {
                        next.push(child);
                    }
                }
            }
            guard(next.len() as u128)?;
            frontier = next;
        }
        if depth * bits < region.level() {
            return Err(Error::RefinementImpossible {
                requested: region.level(),
                available: depth * bits,
            });
        }
        if frontier.is_empty() {
            return Err(Error::ZeroMassRestriction);
        }
        model.assemble(frontier)
    }

    fn assemble(&self, coords: Vec<[u64; 2]>) -> Result<Cylinders> {
        let level = self.level();
        let w = 1.0 / coords.len() as f64;
        let points = coords
            .iter()
            .map(|&c| DyadicCube::from_raw(self.dim(), level, c).center())
            .collect();
        let cloud = PointCloud::new(self.dim(), points)?;
        let measure =
            GridMeasure::from_weights(self.dim(), level, coords.into_iter().map(|c| (c, w)))?;
        Ok(Cylinders { cloud, measure })
    }

    /// `max(μ(B(x,r))/r^s, r^s/μ(B(x,r)))` over dyadic radii
    /// `r ∈ [2^{-level}, 1]`, with `B` the open ball. `x` must lie in an
    /// atom of `measure`.
    pub fn ad_ratio_at(&self, measure: &GridMeasure, x: [f64; 2]) -> Result<(f64, f64)> {
        let level = measure.level();
        let inside = DyadicCube::containing(measure.dim(), level, x)
            .ok()
            .map(|q| {
                measure
                    .atoms()
                    .binary_search_by_key(&q.coords(), |a| a.0)
                    .is_ok()
            })
            .unwrap_or(false);
        if !inside {
            return Err(Error::OutsideSupport(x));
        }
        let mut dist: Vec<(f64, f64)> = measure
            .cubes()
            .map(|(q, m)| {
                let c = q.center();
                (((c[0] - x[0]).powi(2) + (c[1] - x[1]).powi(2)).sqrt(), m)
            })
            .collect();
        dist.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut worst = (1.0f64, 1.0f64);
        let mut acc = 0.0;
        let mut idx = 0;
        for j in (0..=level).rev() {
            let r = (-(j as f64)).exp2();
            while idx < dist.len() && dist[idx].0 < r {
                acc += dist[idx].1;
                idx += 1;
            }
            let rs = r.powf(self.s);
            let ratio = if acc > 0.0 {
                (acc / rs).max(rs / acc)
            } else {
                f64::INFINITY
            };
            if ratio > worst.0 {
                worst = (ratio, r);
            }
        }
        Ok(worst)
    }

    /// Samples support points (atoms of the generated measure) and records
    /// the worst ratio as the model's AD constant.
    pub fn verify_ad_regularity(&mut self, samples: usize, seed: u64) -> Result<AdReport> {
        if self.depth < 3 {
            return Err(Error::InsufficientData(format!(
                "AD regularity needs depth >= 3, model has {}",
                self.depth
            )));
        }
        let cyl = self.generate_cylinders()?;
        let n = cyl.cloud.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked = index::sample(&mut rng, n, samples.min(n)).into_vec();
        picked.sort_unstable();
        let results: Vec<(f64, f64, [f64; 2])> = picked
            .par_iter()
            .map(|&i| {
                let x = cyl.cloud.points()[i];
                self.ad_ratio_at(&cyl.measure, x).map(|(a, r)| (a, r, x))
            })
            .collect::<Result<_>>()?;
        let mut report = AdReport {
            a: 1.0,
            worst_point: cyl.cloud.points()[0],
            worst_radius: 1.0,
            samples: results.len(),
        };
        for (a, r, x) in results {
            if a > report.a {
                report.a = a;
                report.worst_point = x;
                report.worst_radius = r;
            }
        }
        self.a = Some(report.a);
        Ok(report)
    }

    pub fn ad_constant(&self) -> Result<f64> {
        self.a
            .ok_or_else(|| Error::Config("AD constant has not been measured".into()))
    }
}

/// `μ(Q) >= ℓ(Q)^s / (10 A)`.
pub fn is_good_square(measure: &GridMeasure, s: f64, a: f64, q: &DyadicCube) -> Result<bool> {
    Ok(measure.mass_of(q)? >= q.side().powf(s) / (GOOD_SQUARE_FACTOR * a))
}

/// Deepest good square inside `query.region` (whose closure contains
/// `query.base`, when given), searching from `query.max_level` upward;
/// ties break in lexicographic cube order.
pub fn dense_square_search(
    measure: &GridMeasure,
    s: f64,
    a: f64,
    query: &DenseSquareQuery,
) -> Result<DyadicCube> {
    let region = query.region;
    let deepest = query.max_level.min(measure.level());
    if region.level() > deepest {
        return Err(Error::LevelOutOfRange {
            level: region.level(),
            max: deepest,
        });
    }
    for level in (region.level()..=deepest).rev() {
        let coarse = measure.coarsen(level)?;
        let threshold = (-(level as f64)).exp2().powf(s) / (GOOD_SQUARE_FACTOR * a);
        let hit = coarse.cubes().find(|(q, m)| {
            region.contains_cube(q)
                && query.base.is_none_or(|b| q.closure_contains(b))
                && *m >= threshold
        });
        if let Some((q, _)) = hit {
            return Ok(q);
        }
    }
    Err(Error::SearchExhausted)
}
