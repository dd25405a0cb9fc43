//! The multi-scale entropy chain behind the weighted covering bound.
//!
//! The chain runs on the blow-up `μ̃ = μ^{Q₀}` of a good square `Q₀`
//! around the pin, with the pinned maps transported to
//! `G_e(u) = f_e(a + ℓu)/ℓ`. Level `k` of `μ̃` is level `q + k` of `μ`
//! (`ℓ = 2^{-q}`), and `∇G_e(u) = ∇f_e(a + ℓu)`, so every gradient bound
//! on `Q₀` carries over unchanged.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::weighted_covering;
use crate::error::{Error, Result};
use crate::grid_measure::{DyadicCube, GridMeasure};
use crate::ifs::{dense_square_search, AdRegularModel, DenseSquareQuery, MAX_ATOMS};
use crate::maps::{DirectionNet, PinnedMap};

/// Numerical slack on inequalities that hold exactly.
pub const CHAIN_TOLERANCE: f64 = 1e-9;

/// Additive constant of the linear-case refinement.
pub const REFINEMENT_CONSTANT: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainParams {
    pub m: u32,
    pub n: u32,
    pub t: f64,
    /// Allowed per-square gap between pinned-map and projection entropies.
    pub error_constant: f64,
}

impl ChainParams {
    pub fn new(m: u32, n: u32, t: f64) -> Result<Self> {
        let p = ChainParams {
            m,
            n,
            t,
            error_constant: 8.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m >= self.n {
            return Err(Error::Config(format!(
                "need 0 < m < n, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if !(self.t > 0.0 && self.t < 1.0) {
            return Err(Error::Config(format!("t = {} must lie in (0, 1)", self.t)));
        }
        Ok(())
    }

    /// `t' = (1 + t)/2`.
    pub fn t_prime(&self) -> f64 {
        (1.0 + self.t) / 2.0
    }

    /// Number of scale blocks `⌊n/m⌋`.
    pub fn blocks(&self) -> u32 {
        self.n / self.m
    }
}

/// One line of the stage report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageRow {
    pub stage: &'static str,
    pub k: Option<u32>,
    pub level: u32,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
}

/// Per-direction outcome at the final scale.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionRow {
    pub e: [f64; 2],
    pub weight: f64,
    /// `H_n(G_e♯μ̃)`.
    pub entropy: f64,
    /// `(1/n) Σ_k Σ_Q μ̃(Q) H(G_e♯μ̃_Q, 𝒟_{(k+1)m} | 𝒟_{km})`.
    pub multiscale_bound: f64,
    /// `N(G_e(K ∩ Q₀), 2^{-n})` in the blown-up frame.
    pub support_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub params: ChainParams,
    pub q0_level: u32,
    pub q0_coords: [u64; 2],
    pub rows: Vec<StageRow>,
    pub directions: Vec<DirectionRow>,
    /// `Σ_e p_e H_n(G_e♯μ̃)`.
    pub final_average: f64,
    /// `log₂ Σ_e p_e N_e − n t`.
    pub covering_margin: f64,
    /// Largest per-square `|H(G_e♯μ̃_Q|·) − H(π_{−e}♯μ̃_Q|·)|`.
    pub max_error_gap: f64,
    /// Smallest per-square `H(π_{−e}♯μ̃_Q|·) − m H_m(π_{−e}♯μ̃^Q) + 3`.
    pub min_refinement_margin: f64,
    pub squares: usize,
    pub violations: Vec<String>,
    /// `μ̃` is a single atom: all stages are zero.
    pub vacuous: bool,
}

impl ChainReport {
    /// CSV `stage,k,level,value,bound,margin`; aggregate rows leave `k` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("stage,k,level,value,bound,margin\n");
        for r in &self.rows {
            let k = r.k.map(|k| k.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{k},{},{:.12},{:.12},{:.12}",
                r.stage, r.level, r.value, r.bound, r.margin
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn row(&self, stage: &str) -> Option<&StageRow> {
        self.rows.iter().find(|r| r.stage == stage)
    }
}

/// Per-square entropies for one direction.
struct SquareTerms {
    mass: f64,
    // H(G_e♯μ̃_Q | ·), H(π_{−e}♯μ̃_Q | ·), m H_m(π_{−e}♯μ̃^Q), one per direction
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

fn transported(f: PinnedMap, q0: &DyadicCube) -> impl Fn([f64; 2]) -> f64 + Copy + Send + Sync {
    let a = q0.corner();
    let l = q0.side();
    move |u: [f64; 2]| f.value([a[0] + l * u[0], a[1] + l * u[1]]) / l
}

fn minus_projection(e: [f64; 2]) -> impl Fn([f64; 2]) -> f64 + Copy + Send + Sync {
    move |u: [f64; 2]| -(u[0] * e[0] + u[1] * e[1])
}

/// Runs the chain for `mu` (at absolute resolution, supported in `Q₀`
/// or beyond) around the pinned maps of `net`.
pub fn multiscale_chain(
    mu: &GridMeasure,
    net: &DirectionNet,
    q0: &DyadicCube,
    params: &ChainParams,
) -> Result<ChainReport> {
    params.validate()?;
    let (m, n) = (params.m, params.n);
    let maps = net.pinned_maps();
    for f in &maps {
        f.check_square(q0, m)?;
    }
    let tilde = mu.blow_up(q0)?;
    if tilde.level() < n {
        return Err(Error::RefinementImpossible {
            requested: q0.level() + n,
            available: mu.level(),
        });
    }
    let g: Vec<_> = maps.iter().map(|&f| transported(f, q0)).collect();
    let p: Vec<_> = net.vectors().iter().map(|&e| minus_projection(e)).collect();
    let weights = net.weights();
    let blocks = params.blocks();
    let c_err = params.error_constant;

    let mut per_k: Vec<Vec<SquareTerms>> = Vec::with_capacity(blocks as usize);
    for k in 0..blocks {
        let (coarse, fine) = (k * m, (k + 1) * m);
        let parts = tilde.split(coarse)?;
        let terms = parts
            .par_iter()
            .map(|(q, mass, restricted)| {
                let blown = restricted.blow_up(q)?;
                let mut t = SquareTerms {
                    mass: *mass,
                    a: vec![],
                    b: vec![],
                    c: vec![],
                };
                for (ge, pe) in g.iter().zip(&p) {
                    t.a.push(
                        restricted
                            .pushforward_line(ge, fine)?
                            .line_conditional_entropy(fine, coarse)?,
                    );
                    t.b.push(
                        restricted
                            .pushforward_line(pe, fine)?
                            .line_conditional_entropy(fine, coarse)?,
                    );
                    t.c.push(blown.pushforward_line(pe, m)?.line_entropy(m)?);
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        per_k.push(terms);
    }

    let finals = g
        .par_iter()
        .map(|ge| {
            let push = tilde.pushforward_line(ge, n)?;
            Ok((
                push.line_entropy(n)? / n as f64,
                push.line_support_count(n)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut violations = Vec::new();
    let mut rows = Vec::new();
    let mut directions = Vec::with_capacity(maps.len());
    for (i, f) in maps.iter().enumerate() {
        let bound: f64 = per_k
            .iter()
            .flat_map(|terms| terms.iter().map(move |t| t.mass * t.a[i]))
            .sum::<f64>()
            / n as f64;
        let (entropy, support_count) = finals[i];
        if entropy < bound - CHAIN_TOLERANCE {
            violations.push(format!(
                "multiscale: direction {:?}: H_n = {entropy} < {bound}",
                f.e
            ));
        }
        directions.push(DirectionRow {
            e: f.e,
            weight: weights[i],
            entropy,
            multiscale_bound: bound,
            support_count,
        });
    }

    let weighted = |terms: &SquareTerms, v: &[f64]| {
        terms.mass * v.iter().zip(weights).map(|(x, p)| p * x).sum::<f64>()
    };
    let mut max_error_gap = 0.0f64;
    let mut min_refinement_margin = f64::INFINITY;
    let (mut s1, mut s2, mut s3) = (0.0, 0.0, 0.0);
    let mut squares = 0;
    for (k, terms) in per_k.iter().enumerate() {
        let k = k as u32;
        let (mut a_k, mut b_k, mut c_k) = (0.0, 0.0, 0.0);
        for t in terms {
            squares += 1;
            a_k += weighted(t, &t.a);
            b_k += weighted(t, &t.b);
            c_k += weighted(t, &t.c);
            for i in 0..maps.len() {
                let gap = (t.a[i] - t.b[i]).abs();
                max_error_gap = max_error_gap.max(gap);
                if gap > c_err + CHAIN_TOLERANCE {
                    violations.push(format!(
                        "error estimate: k = {k}, direction {i}: gap {gap} > {c_err}"
                    ));
                }
                let margin = t.b[i] - t.c[i] + REFINEMENT_CONSTANT;
                min_refinement_margin = min_refinement_margin.min(margin);
                if margin < -CHAIN_TOLERANCE {
                    violations.push(format!(
                        "linear refinement: k = {k}, direction {i}: margin {margin}"
                    ));
                }
            }
        }
        let level = k * m;
        rows.push(StageRow {
            stage: "error_transfer",
            k: Some(k),
            level,
            value: a_k,
            bound: b_k - c_err,
            margin: a_k - b_k + c_err,
        });
        rows.push(StageRow {
            stage: "refinement",
            k: Some(k),
            level,
            value: b_k,
            bound: c_k - REFINEMENT_CONSTANT,
            margin: b_k - c_k + REFINEMENT_CONSTANT,
        });
        let avg = c_k / m as f64;
        rows.push(StageRow {
            stage: "projection_average",
            k: Some(k),
            level,
            value: avg,
            bound: params.t_prime(),
            margin: avg - params.t_prime(),
        });
        s1 += a_k;
        s2 += b_k - c_err;
        s3 += c_k - REFINEMENT_CONSTANT - c_err;
    }
    let nf = n as f64;
    let (s1, s2, s3) = (s1 / nf, s2 / nf, s3 / nf);
    let final_average: f64 = directions.iter().map(|d| d.weight * d.entropy).sum();
    let counts: Vec<u64> = directions.iter().map(|d| d.support_count as u64).collect();
    let covering = weighted_covering(weights, &counts, n, params.t)?;
    if final_average < s1 - CHAIN_TOLERANCE {
        violations.push(format!(
            "multiscale: weighted average {final_average} < {s1}"
        ));
    }
    if min_refinement_margin == f64::INFINITY {
        min_refinement_margin = REFINEMENT_CONSTANT;
    }
    rows.push(StageRow {
        stage: "multiscale",
        k: None,
        level: n,
        value: final_average,
        bound: s1,
        margin: final_average - s1,
    });
    rows.push(StageRow {
        stage: "pinned_transfer",
        k: None,
        level: n,
        value: s1,
        bound: s2,
        margin: s1 - s2,
    });
    rows.push(StageRow {
        stage: "projection_transfer",
        k: None,
        level: n,
        value: s2,
        bound: s3,
        margin: s2 - s3,
    });
    rows.push(StageRow {
        stage: "error_max",
        k: None,
        level: n,
        value: max_error_gap,
        bound: c_err,
        margin: c_err - max_error_gap,
    });
    rows.push(StageRow {
        stage: "refinement_min",
        k: None,
        level: n,
        value: min_refinement_margin,
        bound: 0.0,
        margin: min_refinement_margin,
    });
    rows.push(StageRow {
        stage: "final",
        k: None,
        level: n,
        value: final_average,
        bound: params.t,
        margin: final_average - params.t,
    });
    rows.push(StageRow {
        stage: "covering",
        k: None,
        level: n,
        value: covering.weighted_count.log2(),
        bound: nf * params.t,
        margin: covering.margin,
    });

    Ok(ChainReport {
        params: *params,
        q0_level: q0.level(),
        q0_coords: q0.coords(),
        rows,
        directions,
        final_average,
        covering_margin: covering.margin,
        max_error_gap,
        min_refinement_margin,
        squares,
        violations,
        vacuous: tilde.support_count() == 1,
    })
}

/// A good square around the pin and the natural measure restricted to it,
/// resolved `n` levels below the square.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainFrame {
    pub q0: DyadicCube,
    pub measure: GridMeasure,
    /// Generation of the restricted cylinders.
    pub depth: u32,
}

/// Picks `Q₀` for the chain: the largest good square whose closure holds
/// the pin and on which every pinned map passes its gradient check, shrunk
/// to the smallest dyadic square holding `K ∩ Q₀`. The model must carry a
/// measured AD constant.
pub fn frame_chain(
    model: &AdRegularModel,
    net: &DirectionNet,
    params: &ChainParams,
) -> Result<ChainFrame> {
    params.validate()?;
    let a = model.ad_constant()?;
    let coarse = model.generate_cylinders()?.measure;
    let max_side = net
        .pinned_maps()
        .iter()
        .map(|f| f.max_side(params.m))
        .fold(f64::INFINITY, f64::min);
    let needed = (-max_side.log2()).ceil().max(0.0) as u32;
    if needed > coarse.level() {
        return Err(Error::LevelOutOfRange {
            level: needed,
            max: coarse.level(),
        });
    }
    let query = DenseSquareQuery {
        region: DyadicCube::unit(model.dim()),
        base: Some(net.pin()),
        max_level: needed,
    };
    let mut q0 = dense_square_search(&coarse, model.s, a, &query)?;
    let bits = model.system.levels_per_generation();
    loop {
        let depth = (q0.level() + params.n).div_ceil(bits);
        let expected =
            (model.system.map_count() as f64).powi(depth as i32) * coarse.mass_of(&q0)?;
        if expected > MAX_ATOMS as f64 {
            return Err(Error::DataGuard {
                what: "cylinders",
                count: expected as u128,
                limit: MAX_ATOMS,
            });
        }
        let restricted = model.cylinders_within(&q0, depth)?.measure;
        let tight = restricted.support_cube();
        if tight.level() > q0.level() && restricted.level() < tight.level() + params.n {
            q0 = tight;
            continue;
        }
        return Ok(ChainFrame {
            q0: tight,
            measure: restricted,
            depth,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_measure::Dim;
    use crate::ifs::IfsSystem;
    use crate::maps::{select_pin, PinRule, DEFAULT_NET_CONSTANT};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn axis_net(m: u32) -> DirectionNet {
        let far = 2f64.powi(30);
        DirectionNet::from_parts(m, [0.0, 0.0], vec![[far, 0.0], [0.0, far]], vec![0.5, 0.5])
            .unwrap()
    }

    #[test]
    fn uniform_square_with_axis_net() {
        let mu = GridMeasure::uniform(Dim::Two, 10).unwrap();
        for m in [2, 3, 4] {
            let params = ChainParams::new(m, 10, 0.5).unwrap();
            let r =
                multiscale_chain(&mu, &axis_net(m), &DyadicCube::unit(Dim::Two), &params).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            assert!(!r.vacuous);
            assert!(
                r.final_average >= 1.0 - 2.0 / m as f64,
                "m = {m}: {}",
                r.final_average
            );
            assert!(r.covering_margin > 0.0);
        }
    }

    #[test]
    fn single_atom_is_vacuous() {
        let mu = GridMeasure::point_mass(DyadicCube::new(Dim::Two, 12, [1, 2]).unwrap());
        let params = ChainParams::new(3, 10, 0.5).unwrap();
        let r = multiscale_chain(&mu, &axis_net(3), &DyadicCube::unit(Dim::Two), &params).unwrap();
        assert!(r.vacuous && r.passed());
        let entropy_stages = [
            "error_transfer",
            "refinement",
            "projection_average",
            "multiscale",
            "final",
            "covering",
        ];
        for row in r.rows.iter().filter(|r| entropy_stages.contains(&r.stage)) {
            assert_eq!(row.value, 0.0, "{}", row.stage);
        }
        assert_eq!(r.final_average, 0.0);
    }

    #[test]
    fn chain_holds_on_random_measures() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let level = 10;
            let w: Vec<_> = (0..300)
                .map(|_| {
                    (
                        [rng.gen_range(0..1024), rng.gen_range(0..1024)],
                        rng.gen::<f64>(),
                    )
                })
                .collect();
            let mu = GridMeasure::from_weights(Dim::Two, level, w).unwrap();
            let pin = [rng.gen::<f64>(), rng.gen::<f64>()];
            let witnesses: Vec<[f64; 2]> = (0..8)
                .map(|j| {
                    let a = j as f64 * std::f64::consts::PI / 4.0 + rng.gen::<f64>() * 0.1;
                    [pin[0] + 64.0 * a.cos(), pin[1] + 64.0 * a.sin()]
                })
                .collect();
            let net = DirectionNet::from_parts(2, pin, witnesses, vec![0.125; 8]).unwrap();
            let params = ChainParams::new(2, 9, 0.5).unwrap();
            let r = multiscale_chain(&mu, &net, &DyadicCube::unit(Dim::Two), &params).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            assert!(r.max_error_gap <= 8.0);
        }
    }

    #[test]
    fn oversized_square_is_rejected() {
        let mu = GridMeasure::uniform(Dim::Two, 8).unwrap();
        let net =
            DirectionNet::from_parts(4, [0.0, 0.0], vec![[1.0, 0.0], [0.0, 1.0]], vec![0.5, 0.5])
                .unwrap();
        let params = ChainParams::new(4, 8, 0.5).unwrap();
        let r = multiscale_chain(&mu, &net, &DyadicCube::unit(Dim::Two), &params);
        assert!(matches!(r, Err(Error::SquareTooLarge { .. })));
    }

    #[test]
    fn params_are_validated() {
        assert!(ChainParams::new(4, 4, 0.5).is_err());
        assert!(ChainParams::new(2, 8, 1.0).is_err());
        assert_eq!(ChainParams::new(4, 16, 0.8).unwrap().t_prime(), 0.9);
    }

    #[test]
    fn four_corner_frame_is_admissible() {
        let mut model =
            AdRegularModel::new(IfsSystem::catalogue("four-corner").unwrap(), 5).unwrap();
        model.verify_ad_regularity(128, 1).unwrap();
        let cloud = model.generate_cylinders().unwrap().cloud;
        let net = select_pin(&cloud, PinRule::Best, 2, DEFAULT_NET_CONSTANT).unwrap();
        let params = ChainParams::new(2, 8, 0.6).unwrap();
        let frame = frame_chain(&model, &net, &params).unwrap();
        assert!(frame.q0.closure_contains(net.pin()));
        assert!(frame.measure.level() >= frame.q0.level() + 8);
        let r = multiscale_chain(&frame.measure, &net, &frame.q0, &params).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r
            .to_csv()
            .starts_with("stage,k,level,value,bound,margin\nerror_transfer,0,0,"));
    }
}
