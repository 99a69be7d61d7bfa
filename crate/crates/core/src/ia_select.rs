//! Selection of independent approximates.
//!
//! Samples are normalized by the median and the spread `Q75 - median`, then
//! for each of `P` random permutations partitioned into n-tuples. A tuple is
//! kept when its members agree within the tolerance ε, either along the equal
//! diagonal or, for even moments, along any sign diagonal. The kept tuple's
//! median (the mean, for pairs) is its representative.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

pub const DEFAULT_EPSILON: f64 = 0.1;
pub const DEFAULT_PERMUTATIONS: usize = 10;
const MAX_ORDER: usize = 20;

/// Linear interpolation between order statistics (`(len-1)·p` position) of
/// an ascending slice.
pub fn linear_quantile(sorted: &[f64], p: f64) -> f64 {
    let (i, frac) = quantile_position(sorted.len(), p);
    if frac == 0.0 {
        sorted[i]
    } else {
        sorted[i] + frac * (sorted[i + 1] - sorted[i])
    }
}

fn quantile_position(len: usize, p: f64) -> (usize, f64) {
    let h = (len - 1) as f64 * p;
    let i = (h.floor() as usize).min(len - 1);
    (i, h - i as f64)
}

/// Median and spread used to put a sample on a unit scale.
///
/// The center is kept as an order statistic plus an offset so that
/// normalized values depend only on differences between samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationState {
    pub center: f64,
    pub spread: f64,
    anchor: f64,
    offset: f64,
}

impl NormalizationState {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.len() < 4 {
            return Err(Error::Degenerate(format!(
                "normalization needs at least 4 samples, got {}",
                samples.len()
            )));
        }
        if let Some(x) = samples.iter().find(|x| !x.is_finite()) {
            return Err(Error::Input(format!("non-finite sample {x}")));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_unstable_by(f64::total_cmp);
        let (i50, f50) = quantile_position(sorted.len(), 0.5);
        let (i75, f75) = quantile_position(sorted.len(), 0.75);
        let anchor = sorted[i50];
        let d50 = if f50 == 0.0 { 0.0 } else { sorted[i50 + 1] - anchor };
        let d75 = if f75 == 0.0 { 0.0 } else { sorted[i75 + 1] - sorted[i75] };
        let offset = f50 * d50;
        let spread = ((sorted[i75] - anchor) + f75 * d75) - offset;
        if !(spread > 0.0) {
            return Err(Error::Degenerate(format!(
                "zero spread between median and upper quartile (median {})",
                anchor + offset
            )));
        }
        Ok(NormalizationState {
            center: anchor + offset,
            spread,
            anchor,
            offset,
        })
    }

    /// State that leaves values unchanged.
    pub fn identity() -> Self {
        NormalizationState {
            center: 0.0,
            spread: 1.0,
            anchor: 0.0,
            offset: 0.0,
        }
    }

    pub fn normalize(&self, x: f64) -> f64 {
        ((x - self.anchor) - self.offset) / self.spread
    }

    pub fn denormalize(&self, z: f64) -> f64 {
        self.anchor + (self.offset + self.spread * z)
    }

    pub fn apply(&self, samples: &[f64]) -> Vec<f64> {
        samples.iter().map(|&x| self.normalize(x)).collect()
    }
}

/// Normalize samples by median and spread.
pub fn normalize(samples: &[f64]) -> Result<(Vec<f64>, NormalizationState)> {
    let state = NormalizationState::from_samples(samples)?;
    Ok((state.apply(samples), state))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalMode {
    /// Members equal within ε.
    EqualDiagonal,
    /// Members equal within ε after some choice of signs.
    AbsDiagonals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OffsetMode {
    /// Consecutive non-overlapping tuples of each permutation.
    Disjoint,
    /// Every window of length n in each permutation. Tuples share samples
    /// and are correlated.
    Overlapping,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    pub order: usize,
    pub epsilon: f64,
    pub permutations: usize,
    pub mode: DiagonalMode,
    pub offsets: OffsetMode,
    pub seed: u64,
}

impl SelectionConfig {
    pub fn pairs(epsilon: f64, permutations: usize, seed: u64) -> Self {
        SelectionConfig {
            order: 2,
            epsilon,
            permutations,
            mode: DiagonalMode::EqualDiagonal,
            offsets: OffsetMode::Disjoint,
            seed,
        }
    }

    pub fn triplets_abs(epsilon: f64, permutations: usize, seed: u64) -> Self {
        SelectionConfig {
            order: 3,
            mode: DiagonalMode::AbsDiagonals,
            ..Self::pairs(epsilon, permutations, seed)
        }
    }

    pub fn with_offsets(self, offsets: OffsetMode) -> Self {
        SelectionConfig { offsets, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.order < 2 || self.order > MAX_ORDER {
            return Err(Error::domain(format!("tuple order must lie in [2, {MAX_ORDER}], got {}", self.order)));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::domain(format!("tolerance must be positive, got {}", self.epsilon)));
        }
        if self.permutations == 0 {
            return Err(Error::domain("at least one permutation is required"));
        }
        Ok(())
    }
}

/// Pooled representatives from all permutations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IASelection {
    pub config: SelectionConfig,
    pub state: NormalizationState,
    /// Representatives in normalized units, in permutation order.
    pub normalized: Vec<f64>,
    /// Input indices of each accepted tuple, `order` entries per
    /// representative.
    pub sources: Vec<usize>,
}

impl IASelection {
    pub fn count(&self) -> usize {
        self.normalized.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normalized.is_empty()
    }

    /// Representatives in the original units.
    pub fn representatives(&self) -> Vec<f64> {
        self.normalized.iter().map(|&z| self.state.denormalize(z)).collect()
    }

    /// Input indices of the i-th accepted tuple.
    pub fn tuple(&self, i: usize) -> &[usize] {
        let n = self.config.order;
        &self.sources[i * n..(i + 1) * n]
    }

    /// Error out when nothing was selected.
    pub fn require_nonempty(&self) -> Result<&Self> {
        if self.is_empty() {
            Err(Error::EmptySelection {
                order: self.config.order,
                epsilon: self.config.epsilon,
                permutations: self.config.permutations,
                suggested_epsilon: 2.0 * self.config.epsilon,
            })
        } else {
            Ok(self)
        }
    }
}

/// Normalize and select n-tuples.
pub fn select_ntuples(samples: &[f64], cfg: &SelectionConfig) -> Result<IASelection> {
    cfg.validate()?;
    let (z, state) = normalize(samples)?;
    select_normalized(&z, state, cfg)
}

pub fn select_pairs(samples: &[f64], epsilon: f64, permutations: usize, offsets: OffsetMode, seed: u64) -> Result<IASelection> {
    select_ntuples(samples, &SelectionConfig::pairs(epsilon, permutations, seed).with_offsets(offsets))
}

pub fn select_triplets_abs(
    samples: &[f64],
    epsilon: f64,
    permutations: usize,
    offsets: OffsetMode,
    seed: u64,
) -> Result<IASelection> {
    select_ntuples(samples, &SelectionConfig::triplets_abs(epsilon, permutations, seed).with_offsets(offsets))
}

/// Select from values already in normalized units; `state` is carried along
/// for de-normalizing representatives.
pub fn select_normalized(z: &[f64], state: NormalizationState, cfg: &SelectionConfig) -> Result<IASelection> {
    cfg.validate()?;
    let per_perm: Vec<(Vec<f64>, Vec<usize>)> = (0..cfg.permutations)
        .into_par_iter()
        .map(|p| {
            let mut idx: Vec<usize> = (0..z.len()).collect();
            idx.shuffle(&mut rng::stream(cfg.seed, p as u64));
            scan(z, &idx, cfg)
        })
        .collect();
    let mut normalized = Vec::new();
    let mut sources = Vec::new();
    for (r, s) in per_perm {
        normalized.extend(r);
        sources.extend(s);
    }
    Ok(IASelection {
        config: *cfg,
        state,
        normalized,
        sources,
    })
}

/// Select from one pass over `z` in its given order, without permuting.
pub fn select_in_order(z: &[f64], state: NormalizationState, cfg: &SelectionConfig) -> Result<IASelection> {
    cfg.validate()?;
    let idx: Vec<usize> = (0..z.len()).collect();
    let (normalized, sources) = scan(z, &idx, &SelectionConfig { permutations: 1, ..*cfg });
    Ok(IASelection {
        config: SelectionConfig { permutations: 1, ..*cfg },
        state,
        normalized,
        sources,
    })
}

fn scan(z: &[f64], idx: &[usize], cfg: &SelectionConfig) -> (Vec<f64>, Vec<usize>) {
    let n = cfg.order;
    let mut reps = Vec::new();
    let mut src = Vec::new();
    if idx.len() < n {
        return (reps, src);
    }
    let stride = match cfg.offsets {
        OffsetMode::Disjoint => n,
        OffsetMode::Overlapping => 1,
    };
    let mut buf = vec![0.0; n];
    let mut start = 0;
    while start + n <= idx.len() {
        let tuple = &idx[start..start + n];
        for (b, &i) in buf.iter_mut().zip(tuple) {
            *b = z[i];
        }
        let before = reps.len();
        accept(&mut buf, cfg.epsilon, cfg.mode, &mut reps);
        for _ in before..reps.len() {
            src.extend_from_slice(tuple);
        }
        start += stride;
    }
    (reps, src)
}

/// Push the representative of each diagonal on which the tuple passes the
/// tolerance test. Sign diagonals are searched separately, so near the
/// origin one tuple can qualify on several of them. `buf` is scratch space.
fn accept(buf: &mut [f64], eps: f64, mode: DiagonalMode, out: &mut Vec<f64>) {
    match mode {
        DiagonalMode::EqualDiagonal => {
            let (lo, hi) = range(buf);
            if hi - lo <= eps {
                out.push(median_in_place(buf));
            }
        }
        DiagonalMode::AbsDiagonals => {
            let n = buf.len();
            let orig: Vec<f64> = buf.to_vec();
            // sign classes up to a global flip: the first member keeps its sign
            for mask in 0u32..(1 << (n - 1)) {
                for (j, b) in buf.iter_mut().enumerate() {
                    *b = if j > 0 && mask & (1 << (j - 1)) != 0 { -orig[j] } else { orig[j] };
                }
                let (lo, hi) = range(buf);
                if hi - lo <= eps {
                    out.push(median_in_place(buf));
                }
            }
        }
    }
}

fn range(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

/// Median; the midpoint of the two middle values for even lengths.
pub(crate) fn median_in_place(v: &mut [f64]) -> f64 {
    v.sort_unstable_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalization_example() {
        let (z, s) = normalize(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(s.center, 3.0);
        assert_eq!(s.spread, 1.0);
        assert_eq!(z, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!(matches!(normalize(&[2.0; 10]), Err(Error::Degenerate(_))));
        assert!(normalize(&[1.0, 2.0, 3.0]).is_err());
        assert!(normalize(&[1.0, 2.0, f64::NAN, 3.0]).is_err());
        assert_eq!(linear_quantile(&[1.0, 2.0, 3.0, 4.0], 0.5), 2.5);
    }

    #[test]
    fn pair_example_in_order() {
        let x = [0.0, 0.05, 10.0, -0.02];
        let (z, s) = normalize(&x).unwrap();
        let sel = select_in_order(&z, s, &SelectionConfig::pairs(0.1, 1, 0)).unwrap();
        assert_eq!(sel.count(), 1);
        assert_eq!(sel.tuple(0), &[0, 1]);
        let r = sel.representatives();
        assert!((r[0] - 0.025).abs() < 1e-15);
    }

    #[test]
    fn identical_values_all_selected() {
        let z = vec![0.7; 101];
        let cfg = SelectionConfig::pairs(0.01, 3, 9);
        let sel = select_normalized(&z, NormalizationState::identity(), &cfg).unwrap();
        assert_eq!(sel.count(), 50 * 3);
    }

    #[test]
    fn triplet_sign_alignment() {
        let run = |t: &[f64], mode| {
            let mut out = Vec::new();
            accept(&mut t.to_vec(), 0.1, mode, &mut out);
            out
        };
        assert_eq!(run(&[1.0, -1.02, 0.97], DiagonalMode::AbsDiagonals), vec![1.0]);
        assert!(run(&[1.0, -1.02, 0.5], DiagonalMode::AbsDiagonals).is_empty());
        assert!(run(&[1.0, -1.02, 0.97], DiagonalMode::EqualDiagonal).is_empty());
        let r = run(&[1.0, 1.01, 0.99, 1.02], DiagonalMode::EqualDiagonal);
        assert!((r[0] - 1.005).abs() < 1e-15);
        // near the origin every diagonal is searched on its own
        let r = run(&[0.01, 0.02, -0.01], DiagonalMode::AbsDiagonals);
        assert_eq!(r.len(), 4);
    }

    #[test]
    fn generic_entry_matches_specific() {
        let x: Vec<f64> = (0..500).map(|i| ((i * 7919) % 1000) as f64 / 37.0).collect();
        let a = select_pairs(&x, 0.1, 4, OffsetMode::Disjoint, 5).unwrap();
        let b = select_ntuples(&x, &SelectionConfig::pairs(0.1, 4, 5)).unwrap();
        assert_eq!(a, b);
        let a = select_triplets_abs(&x, 0.1, 4, OffsetMode::Disjoint, 5).unwrap();
        let b = select_ntuples(&x, &SelectionConfig::triplets_abs(0.1, 4, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_selection_hint() {
        let z: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let sel = select_normalized(&z, NormalizationState::identity(), &SelectionConfig::pairs(0.1, 1, 0)).unwrap();
        match sel.require_nonempty() {
            Err(Error::EmptySelection { suggested_epsilon, .. }) => assert_eq!(suggested_epsilon, 0.2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn overlapping_windows() {
        let z = vec![0.0, 0.0, 0.0, 5.0];
        let cfg = SelectionConfig::pairs(0.1, 1, 0).with_offsets(OffsetMode::Overlapping);
        let sel = select_in_order(&z, NormalizationState::identity(), &cfg).unwrap();
        assert_eq!(sel.count(), 2);
    }

    #[test]
    fn rejects_bad_config() {
        let z = vec![0.0; 8];
        let s = NormalizationState::identity();
        assert!(select_normalized(&z, s, &SelectionConfig::pairs(0.0, 1, 0)).is_err());
        assert!(select_normalized(&z, s, &SelectionConfig::pairs(0.1, 0, 0)).is_err());
        let cfg = SelectionConfig { order: 1, ..SelectionConfig::pairs(0.1, 1, 0) };
        assert!(select_normalized(&z, s, &cfg).is_err());
    }

    fn data() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-3.0f64..3.0, 8..200)
    }

    proptest! {
        #[test]
        fn tolerance_monotone(x in data(), e1 in 0.01f64..1.0, e2 in 0.01f64..1.0, seed in any::<u64>(), n in 2usize..5) {
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            for mode in [DiagonalMode::EqualDiagonal, DiagonalMode::AbsDiagonals] {
                let cfg = SelectionConfig { order: n, mode, ..SelectionConfig::pairs(lo, 3, seed) };
                let s = NormalizationState::identity();
                let a = select_normalized(&x, s, &cfg).unwrap();
                let b = select_normalized(&x, s, &SelectionConfig { epsilon: hi, ..cfg }).unwrap();
                prop_assert!(a.count() <= b.count());
            }
        }

        #[test]
        fn disjoint_within_permutation(x in data(), seed in any::<u64>(), n in 2usize..5) {
            let cfg = SelectionConfig { order: n, ..SelectionConfig::pairs(0.5, 1, seed) };
            let sel = select_normalized(&x, NormalizationState::identity(), &cfg).unwrap();
            let mut seen = sel.sources.clone();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), sel.sources.len());
            // with sign diagonals a tuple may repeat, but distinct tuples never share a sample
            let cfg = SelectionConfig { mode: DiagonalMode::AbsDiagonals, ..cfg };
            let sel = select_normalized(&x, NormalizationState::identity(), &cfg).unwrap();
            let mut tuples: Vec<&[usize]> = (0..sel.count()).map(|i| sel.tuple(i)).collect();
            tuples.dedup();
            let mut seen: Vec<usize> = tuples.concat();
            let total = seen.len();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), total);
        }

        #[test]
        fn deterministic(x in data(), seed in any::<u64>()) {
            let cfg = SelectionConfig::triplets_abs(0.3, 4, seed);
            let a = select_normalized(&x, NormalizationState::identity(), &cfg).unwrap();
            let b = select_normalized(&x, NormalizationState::identity(), &cfg).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn representatives_within_tuple(x in data(), seed in any::<u64>(), n in 2usize..6) {
            let cfg = SelectionConfig { order: n, ..SelectionConfig::pairs(0.4, 2, seed) };
            let sel = select_normalized(&x, NormalizationState::identity(), &cfg).unwrap();
            for (i, &r) in sel.normalized.iter().enumerate() {
                let vals: Vec<f64> = sel.tuple(i).iter().map(|&j| x[j]).collect();
                let (lo, hi) = range(&vals);
                prop_assert!(lo <= r && r <= hi);
            }
            let cfg = SelectionConfig { mode: DiagonalMode::AbsDiagonals, ..cfg };
            let sel = select_normalized(&x, NormalizationState::identity(), &cfg).unwrap();
            for (i, &r) in sel.normalized.iter().enumerate() {
                let vals: Vec<f64> = sel.tuple(i).iter().map(|&j| x[j].abs()).collect();
                let (lo, hi) = range(&vals);
                prop_assert!(r.abs() <= hi);
                if n % 2 == 1 {
                    prop_assert!(lo <= r.abs());
                }
            }
        }

        #[test]
        fn normalization_shift_invariant(k in prop::collection::vec(-1000i32..1000, 8..64), c in -64i32..64) {
            // dyadic data so that shifting is exact
            let x: Vec<f64> = k.iter().map(|&v| v as f64 / 8.0).collect();
            let y: Vec<f64> = x.iter().map(|&v| v + c as f64).collect();
            if let (Ok((zx, _)), Ok((zy, _))) = (normalize(&x), normalize(&y)) {
                prop_assert_eq!(zx, zy);
            }
        }
    }
}
