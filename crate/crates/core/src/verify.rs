//! Randomised inequality suite over the entropy toolkit.
//!
//! Each trial draws one instance per check from a seeded generator. The
//! entropy routine is a parameter so that a deliberately broken one can be
//! injected; failing instances are shrunk greedily before being reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dimension::entropy_support_bound_with;
use crate::error::Result;
use crate::grid_measure::{Dim, DyadicCube, GridMeasure};
use crate::maps::PinnedMap;

/// Entropy `H(μ, 𝒟_k)` in bits.
pub type EntropyFn = fn(&GridMeasure, u32) -> Result<f64>;

pub const IDENTITY_TOLERANCE: f64 = 1e-9;

/// Bound used for the per-square pinned-map versus projection gap.
pub const ERROR_CONSTANT: f64 = 8.0;

pub fn exact_entropy(mu: &GridMeasure, k: u32) -> Result<f64> {
    mu.entropy(k)
}

/// Off-by-one fault: evaluates one level too coarse.
pub fn off_by_one_entropy(mu: &GridMeasure, k: u32) -> Result<f64> {
    mu.entropy(k.saturating_sub(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Cef,
    Concavity,
    MultiScale,
    Refinement,
    ErrorEstimate,
    EntropyAndCovering,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Cef,
        Check::Concavity,
        Check::MultiScale,
        Check::Refinement,
        Check::ErrorEstimate,
        Check::EntropyAndCovering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Cef => "cef",
            Check::Concavity => "concavity",
            Check::MultiScale => "multiscale",
            Check::Refinement => "refinement",
            Check::ErrorEstimate => "error_estimate",
            Check::EntropyAndCovering => "entropy_and_covering",
        }
    }
}

/// A random test case. Fields not used by a check keep their defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub check: Check,
    #[serde(serialize_with = "as_text")]
    pub mu: GridMeasure,
    #[serde(serialize_with = "opt_as_text")]
    pub nu: Option<GridMeasure>,
    /// `(fine, coarse)`, or `(n, m)` for multi-scale, or `(k, m)` for the
    /// square-level checks.
    pub levels: [u32; 2],
    pub weight: f64,
    /// `c0 + c1 x + c2 y + c3 x² + c4 xy + c5 y²`.
    pub coeffs: [f64; 6],
    /// Unit vector, or the pin for the error estimate.
    pub vector: [f64; 2],
    /// Witness point of the pinned map.
    pub witness: [f64; 2],
}

fn as_text<S: serde::Serializer>(mu: &GridMeasure, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&mu.to_text())
}

fn opt_as_text<S: serde::Serializer>(
    mu: &Option<GridMeasure>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match mu {
        Some(m) => s.serialize_str(&m.to_text()),
        None => s.serialize_none(),
    }
}

fn random_measure(rng: &mut ChaCha8Rng, dim: Dim, level: u32) -> GridMeasure {
    let side = 1u64 << level;
    let atoms = rng.gen_range(1..=200usize);
    let w: Vec<_> = (0..atoms)
        .map(|_| {
            let y = if dim == Dim::Two {
                rng.gen_range(0..side)
            } else {
                0
            };
            (
                [rng.gen_range(0..side), y],
                rng.gen::<f64>().powi(3) + 1e-12,
            )
        })
        .collect();
    GridMeasure::from_weights(dim, level, w).expect("positive weights")
}

fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 2] {
    let a = rng.gen::<f64>() * std::f64::consts::TAU;
    [a.cos(), a.sin()]
}

impl Instance {
    fn blank(check: Check, mu: GridMeasure) -> Self {
        Instance {
            check,
            mu,
            nu: None,
            levels: [0, 0],
            weight: 0.0,
            coeffs: [0.0; 6],
            vector: [1.0, 0.0],
            witness: [0.0, 0.0],
        }
    }

    pub fn random(check: Check, rng: &mut ChaCha8Rng) -> Instance {
        let dim = if rng.gen_bool(0.5) {
            Dim::Two
        } else {
            Dim::One
        };
        match check {
            Check::Cef => {
                let level = rng.gen_range(0..=10);
                let mut inst = Instance::blank(check, random_measure(rng, dim, level));
                let fine = rng.gen_range(0..=level);
                inst.levels = [fine, rng.gen_range(0..=fine)];
                inst
            }
            Check::Concavity => {
                let level = rng.gen_range(0..=10);
                let mut inst = Instance::blank(check, random_measure(rng, dim, level));
                inst.nu = Some(random_measure(rng, dim, level));
                inst.weight = rng.gen();
                inst.levels = [rng.gen_range(0..=level), 0];
                inst
            }
            Check::MultiScale => {
                let m = rng.gen_range(1..=3);
                let n = rng.gen_range(m + 1..=12);
                let mut inst = Instance::blank(check, random_measure(rng, Dim::Two, n));
                inst.levels = [n, m];
                for c in inst.coeffs.iter_mut() {
                    *c = rng.gen_range(-1.0..1.0);
                }
                inst
            }
            Check::Refinement => {
                let level = rng.gen_range(2..=10);
                let mut inst = Instance::blank(check, random_measure(rng, Dim::Two, level));
                let m = rng.gen_range(1..=level.min(4));
                inst.levels = [rng.gen_range(0..level / m), m];
                inst.vector = random_unit(rng);
                inst
            }
            Check::ErrorEstimate => {
                let level = rng.gen_range(4..=10);
                let mut inst = Instance::blank(check, random_measure(rng, Dim::Two, level));
                let m = rng.gen_range(1..=3);
                inst.levels = [rng.gen_range(0..level / m), m];
                // pin inside the unit square, witness far enough that the
                // gradient stays within 2^{-m} of −e on all of [0,1]²
                inst.vector = [rng.gen(), rng.gen()];
                let e = random_unit(rng);
                let reach = 2f64.powi(m as i32 + 2) * rng.gen_range(1.0..4.0);
                inst.witness = [inst.vector[0] + reach * e[0], inst.vector[1] + reach * e[1]];
                inst
            }
            Check::EntropyAndCovering => {
                let level = rng.gen_range(1..=10);
                let mut inst = Instance::blank(check, random_measure(rng, dim, level));
                inst.levels = [rng.gen_range(1..=level), 0];
                inst
            }
        }
    }

    fn quadratic(&self) -> impl Fn([f64; 2]) -> f64 + Copy {
        let c = self.coeffs;
        move |p: [f64; 2]| {
            c[0] + c[1] * p[0]
                + c[2] * p[1]
                + c[3] * p[0] * p[0]
                + c[4] * p[0] * p[1]
                + c[5] * p[1] * p[1]
        }
    }
}

/// Result of one check on one instance; `margin < 0` means failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub margin: f64,
    pub detail: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.margin >= 0.0
    }
}

fn outcome(margin: f64, detail: String) -> Outcome {
    Outcome { margin, detail }
}

/// Evaluates the inequality of `inst.check` with the given entropy routine.
pub fn evaluate(inst: &Instance, h: EntropyFn) -> Result<Outcome> {
    let mu = &inst.mu;
    match inst.check {
        Check::Cef => {
            let [fine, coarse] = inst.levels;
            let direct = mu.conditional_entropy(fine, coarse)?;
            let diff = h(mu, fine)? - h(mu, coarse)?;
            let err = (direct - diff).abs();
            Ok(outcome(
                IDENTITY_TOLERANCE - err,
                format!("H(·|·) = {direct}, difference = {diff}"),
            ))
        }
        Check::Concavity => {
            let nu = inst
                .nu
                .as_ref()
                .expect("concavity instances carry two measures");
            let k = inst.levels[0];
            let t = inst.weight;
            let mix = GridMeasure::mixture(t, mu, nu)?;
            let lhs = h(&mix, k)?;
            let rhs = t * h(mu, k)? + (1.0 - t) * h(nu, k)?;
            Ok(outcome(
                lhs - rhs + IDENTITY_TOLERANCE,
                format!("H(mix) = {lhs}, average = {rhs}"),
            ))
        }
        Check::MultiScale => {
            let [n, m] = inst.levels;
            let f = inst.quadratic();
            let whole = mu.pushforward_line(f, n)?;
            let lhs = h(&whole.measure, whole.line_level(n)?)? / n as f64;
            let mut rhs = 0.0;
            for k in 0..n / m {
                for (_, mass, restricted) in mu.split(k * m)? {
                    let push = restricted.pushforward_line(f, (k + 1) * m)?;
                    rhs += mass * push.line_conditional_entropy((k + 1) * m, k * m)?;
                }
            }
            rhs /= n as f64;
            Ok(outcome(
                lhs - rhs + IDENTITY_TOLERANCE,
                format!("H_n(f♯μ) = {lhs}, multi-scale sum = {rhs}"),
            ))
        }
        Check::Refinement => {
            let [k, m] = inst.levels;
            let e = inst.vector;
            let proj = move |p: [f64; 2]| p[0] * e[0] + p[1] * e[1];
            let mut worst = f64::INFINITY;
            let mut detail = String::new();
            for (q, _, restricted) in mu.split(k * m)? {
                let b = restricted
                    .pushforward_line(proj, (k + 1) * m)?
                    .line_conditional_entropy((k + 1) * m, k * m)?;
                let blown = restricted.blow_up(&q)?.pushforward_line(proj, m)?;
                let c = h(&blown.measure, blown.line_level(m)?)?;
                let margin = b - c + 3.0 + IDENTITY_TOLERANCE;
                if margin < worst {
                    worst = margin;
                    detail = format!("square {:?}: conditional {b}, m·H_m = {c}", q.coords());
                }
            }
            Ok(outcome(worst, detail))
        }
        Check::ErrorEstimate => {
            let [k, m] = inst.levels;
            let f = PinnedMap::new(inst.vector, inst.witness)?;
            f.check_square(&DyadicCube::unit(Dim::Two), m)?;
            let e = f.e;
            let proj = move |p: [f64; 2]| -(p[0] * e[0] + p[1] * e[1]);
            let map = move |p: [f64; 2]| f.value(p);
            let mut worst = f64::INFINITY;
            let mut detail = String::new();
            for (q, _, restricted) in mu.split(k * m)? {
                let fine = (k + 1) * m;
                let a = restricted
                    .pushforward_line(map, fine)?
                    .line_conditional_entropy(fine, k * m)?;
                let b = restricted
                    .pushforward_line(proj, fine)?
                    .line_conditional_entropy(fine, k * m)?;
                let margin = ERROR_CONSTANT - (a - b).abs();
                if margin < worst {
                    worst = margin;
                    detail = format!("square {:?}: f_e {a}, π_-e {b}", q.coords());
                }
            }
            Ok(outcome(worst, detail))
        }
        Check::EntropyAndCovering => {
            let n = inst.levels[0];
            let b = entropy_support_bound_with(mu, n, h)?;
            Ok(outcome(
                b.support_count as f64 - b.guaranteed,
                format!(
                    "count {} vs 2^(n t) = {} (t = {})",
                    b.support_count, b.guaranteed, b.t
                ),
            ))
        }
    }
}

/// Greedy shrinking: drop atoms, then lower the resolution, while the
/// instance keeps failing.
pub fn shrink(inst: &Instance, h: EntropyFn) -> Instance {
    let fails = |c: &Instance| evaluate(c, h).map(|o| !o.passed()).unwrap_or(false);
    let mut best = inst.clone();
    for _ in 0..10_000 {
        let mut progressed = false;
        let atoms = best.mu.atoms().to_vec();
        for i in 0..atoms.len() {
            if atoms.len() == 1 {
                break;
            }
            let rest = atoms
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, a)| *a);
            let Ok(smaller) = GridMeasure::from_weights(best.mu.dim(), best.mu.level(), rest)
            else {
                continue;
            };
            let candidate = Instance {
                mu: smaller,
                ..best.clone()
            };
            if fails(&candidate) {
                best = candidate;
                progressed = true;
                break;
            }
        }
        if !progressed && best.mu.level() > 0 {
            let lower = best.mu.level() - 1;
            if let Ok(coarse) = best.mu.coarsen(lower) {
                let nu = best.nu.as_ref().and_then(|n| n.coarsen(lower).ok());
                let candidate = Instance {
                    mu: coarse,
                    nu: nu.or(best.nu.clone()),
                    ..best.clone()
                };
                if fails(&candidate) {
                    best = candidate;
                    progressed = true;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub check: &'static str,
    pub trial: usize,
    pub outcome: Outcome,
    pub instance: Instance,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    /// `(check, passed, failed)` per check.
    pub tally: Vec<(&'static str, usize, usize)>,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn vacuous(&self) -> bool {
        self.trials == 0
    }
}

/// Runs every check on `trials` instances; stops collecting
/// counterexamples after the first failure but finishes the tally.
pub fn run_suite(seed: u64, trials: usize, h: EntropyFn) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally: Vec<(&'static str, usize, usize)> =
        Check::ALL.iter().map(|c| (c.name(), 0, 0)).collect();
    let mut counterexample = None;
    for trial in 0..trials {
        for (slot, &check) in Check::ALL.iter().enumerate() {
            let inst = Instance::random(check, &mut rng);
            let out = evaluate(&inst, h)?;
            if out.passed() {
                tally[slot].1 += 1;
            } else {
                tally[slot].2 += 1;
                if counterexample.is_none() {
                    let small = shrink(&inst, h);
                    let outcome = evaluate(&small, h)?;
                    counterexample = Some(Counterexample {
                        check: check.name(),
                        trial,
                        outcome,
                        instance: small,
                    });
                }
            }
        }
    }
    Ok(SuiteReport {
        seed,
        trials,
        tally,
        counterexample,
    })
}
