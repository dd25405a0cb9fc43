//! Projections, pinned maps and direction nets.

mod pairs;

pub use pairs::{
    distance_set, dot_product_set, sum_product_set, OccupiedBins, Subsample, MAX_PAIRS,
};

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::grid_measure::{Dim, DyadicCube};

/// Tolerance on `|e| = 1`.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Default bound on the measured covering constant of a net.
pub const DEFAULT_NET_CONSTANT: f64 = 4.0;

/// Pins examined by [`PinRule::Best`].
pub const BEST_PIN_CANDIDATES: usize = 256;

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

fn check_unit(e: [f64; 2]) -> Result<()> {
    let n = norm(e);
    if (n - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::NonUnitVector { norm: n });
    }
    Ok(())
}

/// `π_e(x) = x · e`.
pub fn projection(e: [f64; 2]) -> Result<impl Fn([f64; 2]) -> f64 + Copy + Send + Sync> {
    check_unit(e)?;
    Ok(move |x: [f64; 2]| x[0] * e[0] + x[1] * e[1])
}

/// `y ↦ |y − x_e|² / (2|x_e − x₀|)`, the pinned analogue of `π_{−e}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PinnedMap {
    pub witness: [f64; 2],
    pub pin: [f64; 2],
    pub e: [f64; 2],
    reach: f64,
}

impl PinnedMap {
    pub fn new(pin: [f64; 2], witness: [f64; 2]) -> Result<Self> {
        let d = [witness[0] - pin[0], witness[1] - pin[1]];
        let reach = norm(d);
        if reach == 0.0 {
            return Err(Error::Config("witness coincides with the pin".into()));
        }
        Ok(PinnedMap {
            witness,
            pin,
            e: [d[0] / reach, d[1] / reach],
            reach,
        })
    }

    /// `|x_e − x₀|`.
    pub fn reach(&self) -> f64 {
        self.reach
    }

    pub fn value(&self, y: [f64; 2]) -> f64 {
        let dx = y[0] - self.witness[0];
        let dy = y[1] - self.witness[1];
        (dx * dx + dy * dy) / (2.0 * self.reach)
    }

    /// `(y − x_e) / |x_e − x₀|`.
    pub fn gradient(&self, y: [f64; 2]) -> [f64; 2] {
        [
            (y[0] - self.witness[0]) / self.reach,
            (y[1] - self.witness[1]) / self.reach,
        ]
    }

    /// `sup_{y ∈ Q} |∇f_e(y) + e|`, which equals `|y − x₀| / |x_e − x₀|`
    /// and is attained at a vertex.
    pub fn deviation_on(&self, q: &DyadicCube) -> f64 {
        q.vertices()
            .into_iter()
            .map(|y| {
                let g = self.gradient(y);
                norm([g[0] + self.e[0], g[1] + self.e[1]])
            })
            .fold(0.0, f64::max)
    }

    /// Largest side of a square containing the pin on which the deviation
    /// stays below `2^{-m}`.
    pub fn max_side(&self, m: u32) -> f64 {
        (-(m as f64)).exp2() * self.reach / std::f64::consts::SQRT_2
    }

    /// Checks `|∇f_e + e| ≤ 2^{-m}` on the corners of `q`.
    pub fn check_square(&self, q: &DyadicCube, m: u32) -> Result<()> {
        let bound = (-(m as f64)).exp2();
        let deviation = self.deviation_on(q);
        if deviation > bound {
            return Err(Error::SquareTooLarge {
                deviation,
                bound,
                max_side: self.max_side(m),
            });
        }
        Ok(())
    }
}

/// How the pin `x₀` of a direction net is chosen among the cloud points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PinRule {
    /// Point nearest the origin.
    Corner,
    Index(usize),
    /// An explicit support point.
    Point([f64; 2]),
    /// Among a fixed set of candidates, the pin whose net has the largest
    /// minimal witness distance.
    Best,
}

impl FromStr for PinRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "corner" => return Ok(PinRule::Corner),
            "best" => return Ok(PinRule::Best),
            _ => {}
        }
        if let Some(i) = s.strip_prefix("index:") {
            return i
                .parse()
                .map(PinRule::Index)
                .map_err(|_| Error::Config(format!("bad pin index `{i}`")));
        }
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() == 2 {
            if let (Ok(x), Ok(y)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
                return Ok(PinRule::Point([x, y]));
            }
        }
        Err(Error::Config(format!(
            "pin must be corner, best, index:<i> or <x>,<y>; got `{s}`"
        )))
    }
}

impl fmt::Display for PinRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PinRule::Corner => write!(f, "corner"),
            PinRule::Best => write!(f, "best"),
            PinRule::Index(i) => write!(f, "index:{i}"),
            PinRule::Point(p) => write!(f, "{},{}", p[0], p[1]),
        }
    }
}

/// A `2^{-m}`-net of directions `e = (x_e − x₀)/|x_e − x₀|` realised by
/// witness points of a cloud, with arc weights `p_e`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionNet {
    m: u32,
    pin: [f64; 2],
    vectors: Vec<[f64; 2]>,
    weights: Vec<f64>,
    witnesses: Vec<[f64; 2]>,
    max_gap: f64,
}

impl DirectionNet {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn pin(&self) -> [f64; 2] {
        self.pin
    }

    pub fn vectors(&self) -> &[[f64; 2]] {
        &self.vectors
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn witnesses(&self) -> &[[f64; 2]] {
        &self.witnesses
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Largest angular gap between consecutive net directions.
    pub fn max_gap(&self) -> f64 {
        self.max_gap
    }

    /// `C_net`: every unit vector lies within `C_net · 2^{-m}` of the net.
    pub fn covering_constant(&self) -> f64 {
        covering_chord(self.max_gap) * (self.m as f64).exp2()
    }

    /// Smallest `|x_e − x₀|` over the net.
    pub fn min_reach(&self) -> f64 {
        self.witnesses
            .iter()
            .map(|w| norm([w[0] - self.pin[0], w[1] - self.pin[1]]))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn pinned_maps(&self) -> Vec<PinnedMap> {
        self.witnesses
            .iter()
            .map(|&w| PinnedMap::new(self.pin, w).expect("witnesses differ from the pin"))
            .collect()
    }

    /// The pinned map of a net vector.
    pub fn pinned_map(&self, e: [f64; 2]) -> Result<PinnedMap> {
        let i = self
            .vectors
            .iter()
            .position(|v| {
                (v[0] - e[0]).abs() <= UNIT_TOLERANCE && (v[1] - e[1]).abs() <= UNIT_TOLERANCE
            })
            .ok_or(Error::NotInNet(e))?;
        PinnedMap::new(self.pin, self.witnesses[i])
    }

    /// Nearest net vector to `xi` and its distance.
    pub fn nearest(&self, xi: [f64; 2]) -> (usize, f64) {
        self.vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (i, norm([v[0] - xi[0], v[1] - xi[1]])))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }
}

impl DirectionNet {
    /// A net with explicit witnesses and weights; the directions are
    /// `(w − pin)/|w − pin|`.
    pub fn from_parts(
        m: u32,
        pin: [f64; 2],
        witnesses: Vec<[f64; 2]>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if witnesses.is_empty() || witnesses.len() != weights.len() {
            return Err(Error::Config("a net needs one weight per witness".into()));
        }
        let total: f64 = weights.iter().sum();
        if weights.iter().any(|&p| p.is_nan() || p <= 0.0) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "net weights must be positive and sum to 1 (sum {total})"
            )));
        }
        let mut vectors = Vec::with_capacity(witnesses.len());
        for &w in &witnesses {
            vectors.push(PinnedMap::new(pin, w)?.e);
        }
        let mut angles: Vec<f64> = vectors.iter().map(|e| e[1].atan2(e[0])).collect();
        angles.sort_by(f64::total_cmp);
        let mut max_gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
        for w in angles.windows(2) {
            max_gap = max_gap.max(w[1] - w[0]);
        }
        Ok(DirectionNet {
            m,
            pin,
            vectors,
            weights,
            witnesses,
            max_gap,
        })
    }

    /// The `2^m` unit vectors at angles `2πj/2^m`, equally weighted, pinned
    /// at the origin with the vectors themselves as witnesses.
    pub fn equiangular(m: u32) -> Result<Self> {
        if m > 20 {
            return Err(Error::Config(format!(
                "equiangular net with m = {m} is too large (max 20)"
            )));
        }
        let count = 1usize << m;
        let witnesses: Vec<[f64; 2]> = (0..count)
            .map(|j| {
                let a = 2.0 * PI * j as f64 / count as f64;
                [a.cos(), a.sin()]
            })
            .collect();
        DirectionNet::from_parts(m, [0.0, 0.0], witnesses, vec![1.0 / count as f64; count])
    }
}

// distance from the farthest unit vector in a gap to the gap's end points
fn covering_chord(gap: f64) -> f64 {
    2.0 * (gap / 4.0).sin()
}

/// Builds a direction net from the cloud as seen from `pin`.
///
/// The circle is cut into `2^m` arcs centred on `2πj/2^m`; each non-empty
/// arc contributes one witness, the farthest cloud point whose direction is
/// within `2^{-m-2}` of the arc centre (or else the point closest in angle
/// to the centre). Weights are the
/// Voronoi arcs of the chosen directions divided by `2π`. Fails when some
/// unit vector is farther than `max_constant · 2^{-m}` from the net.
pub fn build_direction_net(
    cloud: &PointCloud,
    pin: [f64; 2],
    m: u32,
    max_constant: f64,
) -> Result<DirectionNet> {
    if cloud.dim() != Dim::Two {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: cloud.dim().get(),
        });
    }
    if m > 20 {
        return Err(Error::LevelOutOfRange { level: m, max: 20 });
    }
    let slots = 1usize << m;
    let width = 2.0 * PI / slots as f64;
    let tight = (-(m as f64) - 2.0).exp2();
    // per slot: farthest point within `tight` of the slot centre, and the
    // point closest in angle to the centre as a fallback
    let mut near: Vec<Option<(f64, [f64; 2])>> = vec![None; slots];
    let mut fallback: Vec<Option<(f64, [f64; 2])>> = vec![None; slots];
    let mut distinct = 0usize;
    for &p in cloud.points() {
        let d = [p[0] - pin[0], p[1] - pin[1]];
        let r = norm(d);
        if r == 0.0 {
            continue;
        }
        distinct += 1;
        let theta = d[1].atan2(d[0]);
        let slot = (theta / width).round();
        let offset = (theta - slot * width).abs();
        let j = (slot as i64).rem_euclid(slots as i64) as usize;
        if offset <= tight && near[j].is_none_or(|(r0, _)| r > r0) {
            near[j] = Some((r, p));
        }
        if fallback[j].is_none_or(|(o0, _)| offset < o0) {
            fallback[j] = Some((offset, p));
        }
    }
    let best: Vec<Option<(f64, [f64; 2])>> = near
        .into_iter()
        .zip(fallback)
        .map(|(n, f)| n.or_else(|| f.map(|(_, p)| (norm([p[0] - pin[0], p[1] - pin[1]]), p))))
        .collect();
    if distinct < slots {
        return Err(Error::InsufficientData(format!(
            "a 2^{m} net needs at least {slots} points distinct from the pin, found {distinct}"
        )));
    }
    let mut chosen: Vec<(f64, [f64; 2], [f64; 2])> = best
        .into_iter()
        .flatten()
        .map(|(r, w)| {
            let e = [(w[0] - pin[0]) / r, (w[1] - pin[1]) / r];
            (e[1].atan2(e[0]), e, w)
        })
        .collect();
    chosen.sort_by(|a, b| a.0.total_cmp(&b.0));
    let k = chosen.len();
    // gap[i] runs from direction i to direction i + 1
    let gaps: Vec<f64> = (0..k)
        .map(|i| {
            let next = if i + 1 < k {
                chosen[i + 1].0
            } else {
                chosen[0].0 + 2.0 * PI
            };
            if k == 1 {
                2.0 * PI
            } else {
                next - chosen[i].0
            }
        })
        .collect();
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);
    let allowed_chord = max_constant * (-(m as f64)).exp2();
    if covering_chord(max_gap) > allowed_chord {
        let allowed = if allowed_chord >= 2.0 {
            2.0 * PI
        } else {
            4.0 * (allowed_chord / 2.0).asin()
        };
        return Err(Error::InsufficientDensity {
            gap: max_gap,
            allowed,
        });
    }
    let weights: Vec<f64> = (0..k)
        .map(|i| {
            if k == 1 {
                1.0
            } else {
                (gaps[(i + k - 1) % k] + gaps[i]) / (4.0 * PI)
            }
        })
        .collect();
    Ok(DirectionNet {
        m,
        pin,
        vectors: chosen.iter().map(|c| c.1).collect(),
        witnesses: chosen.iter().map(|c| c.2).collect(),
        weights,
        max_gap,
    })
}

/// The support point named by an explicit rule; `None` for [`PinRule::Best`],
/// which depends on the net.
pub fn resolve_pin(cloud: &PointCloud, rule: PinRule) -> Result<Option<[f64; 2]>> {
    let points = cloud.points();
    if points.is_empty() {
        return Err(Error::InsufficientData("empty cloud".into()));
    }
    Ok(Some(match rule {
        PinRule::Corner => *points
            .iter()
            .min_by(|a, b| norm(**a).total_cmp(&norm(**b)))
            .expect("cloud is non-empty"),
        PinRule::Index(i) => *points.get(i).ok_or_else(|| {
            Error::Config(format!("pin index {i} >= cloud size {}", points.len()))
        })?,
        PinRule::Point(p) => {
            let i = cloud
                .position_of(p, 1e-12)
                .ok_or(Error::OutsideSupport(p))?;
            points[i]
        }
        PinRule::Best => return Ok(None),
    }))
}

/// Resolves a pin rule to a support point together with its net.
pub fn select_pin(
    cloud: &PointCloud,
    rule: PinRule,
    m: u32,
    max_constant: f64,
) -> Result<DirectionNet> {
    match resolve_pin(cloud, rule)? {
        Some(pin) => build_direction_net(cloud, pin, m, max_constant),
        None => best_pin(cloud, m, max_constant),
    }
}

fn best_pin(cloud: &PointCloud, m: u32, max_constant: f64) -> Result<DirectionNet> {
    let candidates = cloud.subsample(BEST_PIN_CANDIDATES, 0);
    let nets: Vec<Result<DirectionNet>> = candidates
        .points()
        .par_iter()
        .map(|&pin| build_direction_net(cloud, pin, m, max_constant))
        .collect();
    let mut best: Option<DirectionNet> = None;
    let mut last_err = None;
    for net in nets {
        match net {
            Ok(net) => {
                if best
                    .as_ref()
                    .is_none_or(|b| net.min_reach() > b.min_reach())
                {
                    best = Some(net);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::SearchExhausted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::{AdRegularModel, IfsSystem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn four_corner(depth: u32) -> PointCloud {
        AdRegularModel::new(IfsSystem::catalogue("four-corner").unwrap(), depth)
            .unwrap()
            .generate_cylinders()
            .unwrap()
            .cloud
    }

    #[test]
    fn projection_examples() {
        let p = projection([1.0, 0.0]).unwrap();
        assert_eq!(p([0.25, 0.75]), 0.25);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = projection([h, h]).unwrap();
        assert_eq!(p([0.0, 0.0]), 0.0);
        assert!((p([1.0, 1.0]) - 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            projection([1.0, 1.0]),
            Err(Error::NonUnitVector { .. })
        ));
    }

    #[test]
    fn vertical_projection_of_uniform_square() {
        use crate::grid_measure::{GridMeasure, RescaleMode};
        let mu = GridMeasure::uniform(Dim::Two, 6).unwrap();
        let p = mu
            .pushforward(projection([0.0, 1.0]).unwrap(), 6, RescaleMode::Fit)
            .unwrap();
        assert!((p.measure.normalized_entropy(6).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pinned_map_examples() {
        let f = PinnedMap::new([0.0, 0.0], [1.0, 0.0]).unwrap();
        assert_eq!(f.value([0.0, 0.0]), 0.5);
        assert_eq!(f.gradient([0.0, 0.0]), [-1.0, 0.0]);
        for m in 0..8 {
            let q = DyadicCube::new(Dim::Two, m + 3, [0, 0]).unwrap();
            // corner oracle: |(y − x_e)/|x_e| + e| at the four corners
            let side = (-((m + 3) as f64)).exp2();
            let worst = [[0.0, 0.0], [side, 0.0], [0.0, side], [side, side]]
                .iter()
                .map(|y: &[f64; 2]| ((y[0] - 1.0 + 1.0).powi(2) + y[1].powi(2)).sqrt())
                .fold(0.0, f64::max);
            assert!((f.deviation_on(&q) - worst).abs() < 1e-15);
            assert!(f.check_square(&q, m).is_ok());
        }
        let big = DyadicCube::new(Dim::Two, 1, [0, 0]).unwrap();
        match f.check_square(&big, 4) {
            Err(Error::SquareTooLarge { max_side, .. }) => {
                assert!((max_side - 1.0 / 16.0 / 2f64.sqrt()).abs() < 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let pin = [0.3, 0.2];
        for _ in 0..100 {
            let w = [rng.gen::<f64>(), rng.gen::<f64>()];
            let f = PinnedMap::new(pin, w).unwrap();
            let y = [rng.gen::<f64>(), rng.gen::<f64>()];
            let h = 1e-6;
            let g = f.gradient(y);
            let gx = (f.value([y[0] + h, y[1]]) - f.value([y[0] - h, y[1]])) / (2.0 * h);
            let gy = (f.value([y[0], y[1] + h]) - f.value([y[0], y[1] - h])) / (2.0 * h);
            let err = (gx - g[0]).abs().max((gy - g[1]).abs());
            assert!(err <= 1e-6 / f.reach(), "error {err}");
        }
    }

    #[test]
    fn equiangular_cloud_gives_uniform_net() {
        for m in 2..7u32 {
            let n = 1usize << m;
            let pts = (0..n)
                .map(|j| {
                    let a = 2.0 * PI * j as f64 / n as f64;
                    [a.cos(), a.sin()]
                })
                .collect();
            let cloud = PointCloud::new(Dim::Two, pts).unwrap();
            let net = build_direction_net(&cloud, [0.0, 0.0], m, DEFAULT_NET_CONSTANT).unwrap();
            assert_eq!(net.len(), n);
            for &p in net.weights() {
                assert!((p - 1.0 / n as f64).abs() < 1e-12);
            }
            let e = net.vectors()[1];
            assert_eq!(net.pinned_map(e).unwrap().witness, net.witnesses()[1]);
        }
    }

    #[test]
    fn equiangular_net_covers_the_circle() {
        let net = DirectionNet::equiangular(8).unwrap();
        assert_eq!(net.len(), 256);
        assert!((net.max_gap() - 2.0 * PI / 256.0).abs() < 1e-12);
        assert!(net.covering_constant() < 4.0);
        assert!((net.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(DirectionNet::equiangular(21).is_err());
    }

    #[test]
    fn collinear_cloud_is_too_sparse() {
        let pts = (0..64).map(|i| [i as f64 / 64.0, 0.5]).collect();
        let cloud = PointCloud::new(Dim::Two, pts).unwrap();
        let r = build_direction_net(&cloud, [0.5, 0.5], 2, DEFAULT_NET_CONSTANT);
        match r {
            Err(Error::InsufficientDensity { gap, .. }) => assert!((gap - PI).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn corner_pin_sees_one_quadrant() {
        let cloud = four_corner(8);
        let r = select_pin(&cloud, PinRule::Corner, 4, DEFAULT_NET_CONSTANT);
        assert!(matches!(r, Err(Error::InsufficientDensity { .. })));
    }

    #[test]
    fn four_corner_best_pin_net() {
        let cloud = four_corner(8);
        let net = select_pin(&cloud, PinRule::Best, 4, DEFAULT_NET_CONSTANT).unwrap();
        assert!((8..=24).contains(&net.len()), "{} directions", net.len());
        assert!(cloud.position_of(net.pin(), 0.0).is_some());
        assert!((net.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (e, w) in net.vectors().iter().zip(net.witnesses()) {
            let d = [w[0] - net.pin()[0], w[1] - net.pin()[1]];
            let r = norm(d);
            assert!(norm([d[0] / r - e[0], d[1] / r - e[1]]) <= (-6f64).exp2());
        }
        // oracle: the largest gap among all realised pair directions from the pin
        let mut angles: Vec<f64> = cloud
            .points()
            .iter()
            .filter(|p| **p != net.pin())
            .map(|p| (p[1] - net.pin()[1]).atan2(p[0] - net.pin()[0]))
            .collect();
        angles.sort_by(f64::total_cmp);
        let mut all_gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
        for w in angles.windows(2) {
            all_gap = all_gap.max(w[1] - w[0]);
        }
        assert!(all_gap <= net.max_gap() + 1e-12);
    }

    #[test]
    fn net_covers_random_directions() {
        let cloud = four_corner(7);
        let net = select_pin(&cloud, PinRule::Best, 4, DEFAULT_NET_CONSTANT).unwrap();
        let c = net.covering_constant();
        assert!(c <= DEFAULT_NET_CONSTANT);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let a = rng.gen::<f64>() * 2.0 * PI;
            let (_, dist) = net.nearest([a.cos(), a.sin()]);
            assert!(dist <= c / 16.0 + 1e-12);
        }
    }

    #[test]
    fn pin_rules_parse() {
        assert_eq!("corner".parse::<PinRule>().unwrap(), PinRule::Corner);
        assert_eq!("best".parse::<PinRule>().unwrap(), PinRule::Best);
        assert_eq!("index:7".parse::<PinRule>().unwrap(), PinRule::Index(7));
        assert_eq!(
            "0.5, 0.25".parse::<PinRule>().unwrap(),
            PinRule::Point([0.5, 0.25])
        );
        assert!("middle".parse::<PinRule>().is_err());
        let cloud = four_corner(3);
        assert!(matches!(
            select_pin(&cloud, PinRule::Point([0.5, 0.5]), 2, DEFAULT_NET_CONSTANT),
            Err(Error::OutsideSupport(_))
        ));
    }

    #[test]
    fn not_in_net() {
        let cloud = four_corner(6);
        let net = select_pin(&cloud, PinRule::Best, 3, DEFAULT_NET_CONSTANT).unwrap();
        assert!(matches!(
            net.pinned_map([0.6, 0.8]),
            Err(Error::NotInNet(_))
        ));
    }
}
