//! Probability measures at a fixed dyadic resolution and their entropies.
//!
//! A [`GridMeasure`] stores the masses of the occupied level-`n` cubes of
//! `[0,1)^d`. Everything coarser (`𝒟_k`, `k <= n`) is derived by summing
//! descendants. Entropies are in bits, so the normalised entropy at level
//! `k` is simply `H(μ, 𝒟_k) / k`.

mod cube;
mod io;
mod pushforward;

use std::collections::BTreeMap;

pub use cube::{Dim, DyadicCube, MAX_LEVEL};
pub use pushforward::{Pushforward, Rescale, RescaleMode};

use crate::error::{Error, Result};

/// Tolerance on the total mass of a probability measure.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A probability measure on the level-`level` dyadic cubes of `[0,1)^d`.
///
/// Zero-mass cubes are never stored and atoms are kept in lexicographic
/// coordinate order.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMeasure {
    dim: Dim,
    level: u32,
    atoms: Vec<([u64; 2], f64)>,
}

/// Entropies `H(μ, 𝒟_k)` and normalised entropies `H_k(μ)` for every level.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyProfile {
    pub entropy: BTreeMap<u32, f64>,
    pub normalized: BTreeMap<u32, f64>,
}

fn plogp_sum<I: IntoIterator<Item = f64>>(masses: I) -> f64 {
    let mut h = 0.0;
    for p in masses {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    // -0.0 for point masses
    h.max(0.0)
}

/// Sorts by coordinates (stable) and merges equal keys.
fn merge_sorted(mut items: Vec<([u64; 2], f64)>) -> Vec<([u64; 2], f64)> {
    items.sort_by_key(|(c, _)| *c);
    let mut out: Vec<([u64; 2], f64)> = Vec::with_capacity(items.len());
    for (c, m) in items {
        match out.last_mut() {
            Some((last, acc)) if *last == c => *acc += m,
            _ => out.push((c, m)),
        }
    }
    out
}

impl GridMeasure {
    /// Builds a measure from explicit masses; duplicates are summed and the
    /// total must equal 1 within [`MASS_TOLERANCE`].
    pub fn new<I>(dim: Dim, level: u32, atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([u64; 2], f64)>,
    {
        let raw = Self::validated(dim, level, atoms)?;
        let total: f64 = raw.iter().map(|(_, m)| m).sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidMeasure(format!(
                "total mass {total} is not 1"
            )));
        }
        Ok(GridMeasure {
            dim,
            level,
            atoms: raw,
        })
    }

    /// Builds a probability measure from non-negative weights by normalising.
    pub fn from_weights<I>(dim: Dim, level: u32, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([u64; 2], f64)>,
    {
        let mut raw = Self::validated(dim, level, weights)?;
        let total: f64 = raw.iter().map(|(_, m)| m).sum();
        if total <= 0.0 {
            return Err(Error::InvalidMeasure("weights sum to zero".into()));
        }
        for (_, m) in raw.iter_mut() {
            *m /= total;
        }
        Ok(GridMeasure {
            dim,
            level,
            atoms: raw,
        })
    }

    fn validated<I>(dim: Dim, level: u32, atoms: I) -> Result<Vec<([u64; 2], f64)>>
    where
        I: IntoIterator<Item = ([u64; 2], f64)>,
    {
        if level > MAX_LEVEL {
            return Err(Error::LevelOutOfRange {
                level,
                max: MAX_LEVEL,
            });
        }
        let mut items = Vec::new();
        for (c, m) in atoms {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidMeasure(format!("mass {m} at {c:?}")));
            }
            DyadicCube::new(dim, level, c)?;
            if m > 0.0 {
                items.push((c, m));
            }
        }
        if items.is_empty() {
            return Err(Error::InvalidMeasure("no atoms with positive mass".into()));
        }
        Ok(merge_sorted(items))
    }

    /// Normalised counting measure on all `2^{d·level}` cubes.
    pub fn uniform(dim: Dim, level: u32) -> Result<Self> {
        let cubes = DyadicCube::unit(dim).descendants(level);
        let w = 1.0 / cubes.len() as f64;
        GridMeasure::new(dim, level, cubes.into_iter().map(|c| (c.coords(), w)))
    }

    pub fn point_mass(cube: DyadicCube) -> Self {
        GridMeasure {
            dim: cube.dim(),
            level: cube.level(),
            atoms: vec![(cube.coords(), 1.0)],
        }
    }

    /// `t·a + (1 − t)·b` for measures on the same grid.
    pub fn mixture(t: f64, a: &GridMeasure, b: &GridMeasure) -> Result<Self> {
        a.same_grid(b)?;
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidMeasure(format!(
                "mixture weight {t} outside [0,1]"
            )));
        }
        let items = a
            .atoms
            .iter()
            .map(|&(c, m)| (c, t * m))
            .chain(b.atoms.iter().map(|&(c, m)| (c, (1.0 - t) * m)))
            .filter(|(_, m)| *m > 0.0)
            .collect();
        Ok(GridMeasure {
            dim: a.dim,
            level: a.level,
            atoms: merge_sorted(items),
        })
    }

    /// Product of two one-dimensional measures at the same level.
    pub fn product(a: &GridMeasure, b: &GridMeasure) -> Result<Self> {
        for m in [a, b] {
            if m.dim != Dim::One {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    found: m.dim.get(),
                });
            }
        }
        if a.level != b.level {
            return Err(Error::InvalidMeasure(
                "product factors must share a level".into(),
            ));
        }
        let mut atoms = Vec::with_capacity(a.atoms.len() * b.atoms.len());
        for &(ca, ma) in &a.atoms {
            for &(cb, mb) in &b.atoms {
                atoms.push(([ca[0], cb[0]], ma * mb));
            }
        }
        Ok(GridMeasure {
            dim: Dim::Two,
            level: a.level,
            atoms,
        })
    }

    fn same_grid(&self, other: &GridMeasure) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.get(),
                found: other.dim.get(),
            });
        }
        if self.level != other.level {
            return Err(Error::InvalidMeasure(format!(
                "levels differ: {} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Occupied cubes with their masses, in lexicographic order.
    pub fn atoms(&self) -> &[([u64; 2], f64)] {
        &self.atoms
    }

    pub fn cubes(&self) -> impl Iterator<Item = (DyadicCube, f64)> + '_ {
        self.atoms
            .iter()
            .map(move |&(c, m)| (DyadicCube::from_raw(self.dim, self.level, c), m))
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|(_, m)| m).sum()
    }

    pub fn support_count(&self) -> usize {
        self.atoms.len()
    }

    /// `μ(Q)` for a cube at any level up to the measure's level.
    pub fn mass_of(&self, q: &DyadicCube) -> Result<f64> {
        self.check_cube(q)?;
        let shift = self.level - q.level();
        Ok(self
            .atoms
            .iter()
            .filter(|(c, _)| [c[0] >> shift, c[1] >> shift] == q.coords())
            .map(|(_, m)| m)
            .sum())
    }

    fn check_cube(&self, q: &DyadicCube) -> Result<()> {
        if q.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.get(),
                found: q.dim().get(),
            });
        }
        if q.level() > self.level {
            return Err(Error::RefinementImpossible {
                requested: q.level(),
                available: self.level,
            });
        }
        Ok(())
    }

    fn coarse_atoms(&self, level: u32) -> Vec<([u64; 2], f64)> {
        let shift = self.level - level;
        if shift == 0 {
            return self.atoms.clone();
        }
        merge_sorted(
            self.atoms
                .iter()
                .map(|&(c, m)| ([c[0] >> shift, c[1] >> shift], m))
                .collect(),
        )
    }

    /// The `𝒟_target`-marginal: each coarse cube receives the mass of its
    /// descendants.
    pub fn coarsen(&self, target_level: u32) -> Result<GridMeasure> {
        if target_level > self.level {
            return Err(Error::RefinementImpossible {
                requested: target_level,
                available: self.level,
            });
        }
        Ok(GridMeasure {
            dim: self.dim,
            level: target_level,
            atoms: self.coarse_atoms(target_level),
        })
    }

    /// `μ_Q = μ|_Q / μ(Q)` at the original resolution.
    pub fn restrict_normalize(&self, q: &DyadicCube) -> Result<GridMeasure> {
        self.check_cube(q)?;
        let shift = self.level - q.level();
        let inside: Vec<_> = self
            .atoms
            .iter()
            .filter(|(c, _)| [c[0] >> shift, c[1] >> shift] == q.coords())
            .copied()
            .collect();
        let total: f64 = inside.iter().map(|(_, m)| m).sum();
        if inside.is_empty() || total <= 0.0 {
            return Err(Error::ZeroMassRestriction);
        }
        Ok(GridMeasure {
            dim: self.dim,
            level: self.level,
            atoms: inside.into_iter().map(|(c, m)| (c, m / total)).collect(),
        })
    }

    /// `μ^Q = T_Q♯ μ_Q`, living at level `self.level − Q.level`.
    pub fn blow_up(&self, q: &DyadicCube) -> Result<GridMeasure> {
        let restricted = self.restrict_normalize(q)?;
        let shift = self.level - q.level();
        let base = [q.coords()[0] << shift, q.coords()[1] << shift];
        Ok(GridMeasure {
            dim: self.dim,
            level: shift,
            atoms: restricted
                .atoms
                .into_iter()
                .map(|(c, m)| ([c[0] - base[0], c[1] - base[1]], m))
                .collect(),
        })
    }

    /// Shannon entropy `H(μ, 𝒟_k)` in bits.
    pub fn entropy(&self, k: u32) -> Result<f64> {
        if k > self.level {
            return Err(Error::RefinementImpossible {
                requested: k,
                available: self.level,
            });
        }
        Ok(plogp_sum(self.coarse_atoms(k).into_iter().map(|(_, m)| m)))
    }

    /// `H_k(μ) = H(μ, 𝒟_k) / k`; defined for `k >= 1`.
    pub fn normalized_entropy(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Err(Error::LevelOutOfRange {
                level: 0,
                max: self.level,
            });
        }
        Ok(self.entropy(k)? / k as f64)
    }

    /// `H(μ, 𝒟_fine | 𝒟_coarse) = Σ_F μ(F) H(μ_F, 𝒟_fine)`, evaluated
    /// directly from the blocks rather than as a difference of entropies.
    pub fn conditional_entropy(&self, fine: u32, coarse: u32) -> Result<f64> {
        if coarse > fine {
            return Err(Error::LevelOutOfRange {
                level: coarse,
                max: fine,
            });
        }
        if fine > self.level {
            return Err(Error::RefinementImpossible {
                requested: fine,
                available: self.level,
            });
        }
        let shift = fine - coarse;
        let mut blocks: BTreeMap<[u64; 2], Vec<f64>> = BTreeMap::new();
        for (c, m) in self.coarse_atoms(fine) {
            blocks
                .entry([c[0] >> shift, c[1] >> shift])
                .or_default()
                .push(m);
        }
        let mut h = 0.0;
        for masses in blocks.values() {
            let block: f64 = masses.iter().sum();
            if block > 0.0 {
                h += block * plogp_sum(masses.iter().map(|m| m / block));
            }
        }
        Ok(h)
    }

    /// Entropy with respect to the dyadic partition `𝒟_k` translated by
    /// `2^{-k-1}` in every coordinate. Needs `k < level` so no atom straddles
    /// a shifted boundary.
    pub fn shifted_entropy(&self, k: u32) -> Result<f64> {
        if k >= self.level {
            return Err(Error::RefinementImpossible {
                requested: k + 1,
                available: self.level,
            });
        }
        let width = 1i128 << (self.level - k);
        let offset = width / 2;
        let items = self
            .atoms
            .iter()
            .map(|&(c, m)| {
                let idx = |v: u64| ((v as i128 - offset).div_euclid(width) + 1) as u64;
                (
                    [idx(c[0]), if self.dim == Dim::Two { idx(c[1]) } else { 0 }],
                    m,
                )
            })
            .collect();
        Ok(plogp_sum(merge_sorted(items).into_iter().map(|(_, m)| m)))
    }

    pub fn entropy_profile(&self) -> EntropyProfile {
        let mut entropy = BTreeMap::new();
        let mut normalized = BTreeMap::new();
        for k in 0..=self.level {
            let h = plogp_sum(self.coarse_atoms(k).into_iter().map(|(_, m)| m));
            entropy.insert(k, h);
            if k > 0 {
                normalized.insert(k, h / k as f64);
            }
        }
        EntropyProfile {
            entropy,
            normalized,
        }
    }

    /// `(Q, μ(Q), μ_Q)` for every `Q ∈ 𝒟_level` with `μ(Q) > 0`, in one pass.
    pub fn split(&self, level: u32) -> Result<Vec<(DyadicCube, f64, GridMeasure)>> {
        if level > self.level {
            return Err(Error::RefinementImpossible {
                requested: level,
                available: self.level,
            });
        }
        let shift = self.level - level;
        let mut blocks: BTreeMap<[u64; 2], Vec<([u64; 2], f64)>> = BTreeMap::new();
        for &(c, m) in &self.atoms {
            blocks
                .entry([c[0] >> shift, c[1] >> shift])
                .or_default()
                .push((c, m));
        }
        Ok(blocks
            .into_iter()
            .map(|(key, atoms)| {
                let total: f64 = atoms.iter().map(|(_, m)| m).sum();
                let restricted = GridMeasure {
                    dim: self.dim,
                    level: self.level,
                    atoms: atoms.into_iter().map(|(c, m)| (c, m / total)).collect(),
                };
                (
                    DyadicCube::from_raw(self.dim, level, key),
                    total,
                    restricted,
                )
            })
            .collect())
    }

    /// Smallest dyadic cube containing every atom.
    pub fn support_cube(&self) -> DyadicCube {
        let first = self.atoms[0].0;
        let mut level = self.level;
        for &(c, _) in &self.atoms[1..] {
            while level > 0 {
                let shift = self.level - level;
                if [c[0] >> shift, c[1] >> shift] == [first[0] >> shift, first[1] >> shift] {
                    break;
                }
                level -= 1;
            }
        }
        let shift = self.level - level;
        DyadicCube::from_raw(self.dim, level, [first[0] >> shift, first[1] >> shift])
    }

    /// Cube centres of the support, in storage order.
    pub fn centers(&self) -> Vec<[f64; 2]> {
        self.cubes().map(|(q, _)| q.center()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cube(dim: Dim, level: u32, c: [u64; 2]) -> DyadicCube {
        DyadicCube::new(dim, level, c).unwrap()
    }

    fn random_measure(rng: &mut ChaCha8Rng, dim: Dim, level: u32, atoms: usize) -> GridMeasure {
        let side = 1u64 << level;
        let w = (0..atoms).map(|_| {
            let x = rng.gen_range(0..side);
            let y = if dim == Dim::Two {
                rng.gen_range(0..side)
            } else {
                0
            };
            ([x, y], rng.gen::<f64>())
        });
        GridMeasure::from_weights(dim, level, w).unwrap()
    }

    #[test]
    fn coarsen_uniform_to_point_mass() {
        let mu = GridMeasure::uniform(Dim::Two, 1).unwrap();
        let c = mu.coarsen(0).unwrap();
        assert_eq!(c.atoms(), &[([0, 0], 1.0)]);
    }

    #[test]
    fn coarsen_point_mass_to_ancestor() {
        let mu = GridMeasure::point_mass(cube(Dim::One, 3, [5, 0]));
        let c = mu.coarsen(1).unwrap();
        assert_eq!(c.atoms(), &[([1, 0], 1.0)]);
    }

    #[test]
    fn coarsen_matches_brute_force_grouping() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mu = random_measure(&mut rng, Dim::Two, 4, 16);
        let coarse = mu.coarsen(2).unwrap();
        // oracle: for every level-2 cube, add up atoms whose corner lies inside it
        for q in DyadicCube::unit(Dim::Two).descendants(2) {
            let expected: f64 = mu
                .cubes()
                .filter(|(a, _)| q.contains_point(a.corner()))
                .map(|(_, m)| m)
                .sum();
            let got = coarse
                .atoms()
                .iter()
                .find(|(c, _)| *c == q.coords())
                .map_or(0.0, |(_, m)| *m);
            assert!((expected - got).abs() < 1e-12);
        }
        assert!((coarse.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn refinement_is_rejected() {
        let mu = GridMeasure::uniform(Dim::One, 2).unwrap();
        assert!(matches!(
            mu.coarsen(3),
            Err(Error::RefinementImpossible { .. })
        ));
    }

    #[test]
    fn restrict_uniform_quadrant() {
        let mu = GridMeasure::uniform(Dim::Two, 3).unwrap();
        let q = cube(Dim::Two, 1, [1, 0]);
        let r = mu.restrict_normalize(&q).unwrap();
        assert_eq!(r.support_count(), 16);
        for (c, m) in r.cubes() {
            assert!(q.contains_cube(&c));
            assert!((m - 1.0 / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn restrict_to_heavy_interval() {
        let mu = GridMeasure::new(Dim::One, 1, [([0, 0], 0.2), ([1, 0], 0.8)]).unwrap();
        let r = mu.restrict_normalize(&cube(Dim::One, 1, [1, 0])).unwrap();
        assert_eq!(r.atoms(), &[([1, 0], 1.0)]);
    }

    #[test]
    fn restrict_random_has_unit_mass() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mu = random_measure(&mut rng, Dim::Two, 5, 200);
        let (q, _) = mu.cubes().next().unwrap();
        let r = mu.restrict_normalize(&q.ancestor(2)).unwrap();
        assert!((r.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn restrict_zero_mass_errors() {
        let mu = GridMeasure::point_mass(cube(Dim::Two, 2, [0, 0]));
        assert!(matches!(
            mu.restrict_normalize(&cube(Dim::Two, 1, [1, 1])),
            Err(Error::ZeroMassRestriction)
        ));
    }

    #[test]
    fn blow_up_uniform_is_uniform_one_level_less() {
        let mu = GridMeasure::uniform(Dim::Two, 4).unwrap();
        let b = mu.blow_up(&cube(Dim::Two, 1, [0, 1])).unwrap();
        assert_eq!(b, GridMeasure::uniform(Dim::Two, 3).unwrap());
    }

    #[test]
    fn blow_up_point_mass() {
        // level-4 cube inside the level-2 cube [2,1]
        let mu = GridMeasure::point_mass(cube(Dim::Two, 4, [9, 6]));
        let b = mu.blow_up(&cube(Dim::Two, 2, [2, 1])).unwrap();
        assert_eq!(b.level(), 2);
        assert_eq!(b.atoms(), &[([1, 2], 1.0)]);
    }

    #[test]
    fn blow_up_matches_address_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mu = random_measure(&mut rng, Dim::Two, 6, 300);
        let q = mu.cubes().next().unwrap().0.ancestor(3);
        let restricted = mu.restrict_normalize(&q).unwrap();
        let blown = mu.blow_up(&q).unwrap();
        // oracle: T_Q maps the centre of each atom to the centre of its image
        let r = q.side();
        let a = q.corner();
        for ((c, m), (qb, mb)) in restricted.cubes().zip(blown.cubes()) {
            let mapped = [(c.center()[0] - a[0]) / r, (c.center()[1] - a[1]) / r];
            assert!((mapped[0] - qb.center()[0]).abs() < 1e-12);
            assert!((mapped[1] - qb.center()[1]).abs() < 1e-12);
            assert_eq!(m, mb);
        }
    }

    #[test]
    fn entropy_examples() {
        let mu = GridMeasure::uniform(Dim::Two, 3).unwrap();
        assert!((mu.entropy(3).unwrap() - 6.0).abs() < 1e-12);
        assert!((mu.normalized_entropy(3).unwrap() - 2.0).abs() < 1e-12);

        let point = GridMeasure::point_mass(cube(Dim::Two, 5, [3, 17]));
        for k in 0..=5 {
            assert_eq!(point.entropy(k).unwrap(), 0.0);
        }

        let dyadic =
            GridMeasure::new(Dim::One, 2, [([0, 0], 0.5), ([1, 0], 0.25), ([3, 0], 0.25)]).unwrap();
        assert!((dyadic.entropy(2).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn conditional_entropy_examples() {
        let mu = GridMeasure::uniform(Dim::One, 2).unwrap();
        assert!((mu.conditional_entropy(2, 1).unwrap() - 1.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let nu = random_measure(&mut rng, Dim::Two, 5, 60);
        for k in 0..=5 {
            assert!(nu.conditional_entropy(k, k).unwrap().abs() < 1e-12);
        }
        let lhs = nu.conditional_entropy(5, 2).unwrap();
        let rhs = nu.entropy(5).unwrap() - nu.entropy(2).unwrap();
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn profile_is_monotone_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mu = random_measure(&mut rng, Dim::Two, 7, 500);
        let p = mu.entropy_profile();
        let hs: Vec<f64> = p.entropy.values().copied().collect();
        assert!(hs.windows(2).all(|w| w[0] <= w[1] + 1e-12));
        assert!(p
            .normalized
            .values()
            .all(|&h| (0.0..=2.0 + 1e-12).contains(&h)));
    }

    #[test]
    fn shifted_partition_close_to_dyadic() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let mu = random_measure(&mut rng, Dim::Two, 6, 100);
            for k in 0..6 {
                let d = mu.shifted_entropy(k).unwrap() - mu.entropy(k).unwrap();
                assert!(d.abs() <= 2.0 + 1e-9, "k = {k}, difference {d}");
            }
        }
    }

    #[test]
    fn shifted_entropy_of_uniform() {
        // half-cell shift of D_1 on [0,1): cells [-1/4,1/4), [1/4,3/4), [3/4,5/4)
        let mu = GridMeasure::uniform(Dim::One, 2).unwrap();
        let h = mu.shifted_entropy(1).unwrap();
        assert!((h - 1.5).abs() < 1e-12);
    }

    #[test]
    fn product_of_intervals() {
        let a = GridMeasure::uniform(Dim::One, 2).unwrap();
        let p = GridMeasure::product(&a, &a).unwrap();
        assert_eq!(p, GridMeasure::uniform(Dim::Two, 2).unwrap());
    }

    #[test]
    fn rejects_unnormalised_or_negative() {
        assert!(GridMeasure::new(Dim::One, 1, [([0, 0], 0.5)]).is_err());
        assert!(GridMeasure::new(Dim::One, 1, [([0, 0], 1.5), ([1, 0], -0.5)]).is_err());
        assert!(GridMeasure::from_weights(Dim::One, 1, [([0, 0], 0.0)]).is_err());
    }

    #[test]
    fn split_agrees_with_restriction() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mu = random_measure(&mut rng, Dim::Two, 6, 120);
        let parts = mu.split(3).unwrap();
        assert_eq!(parts.len(), mu.coarsen(3).unwrap().support_count());
        for (q, mass, restricted) in parts {
            assert!((mass - mu.mass_of(&q).unwrap()).abs() < 1e-15);
            assert_eq!(restricted, mu.restrict_normalize(&q).unwrap());
        }
    }

    #[test]
    fn support_cube_is_smallest() {
        let mu = GridMeasure::new(Dim::Two, 4, [([4, 4], 0.5), ([5, 7], 0.5)]).unwrap();
        assert_eq!(mu.support_cube(), cube(Dim::Two, 2, [1, 1]));
        let point = GridMeasure::point_mass(cube(Dim::One, 5, [9, 0]));
        assert_eq!(point.support_cube(), cube(Dim::One, 5, [9, 0]));
        assert_eq!(
            GridMeasure::uniform(Dim::Two, 3).unwrap().support_cube(),
            DyadicCube::unit(Dim::Two)
        );
    }
}
