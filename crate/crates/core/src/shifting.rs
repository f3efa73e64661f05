//! Combinatorial (Erdős–Ko–Rado) shifting.
//!
//! `Shift_ij` pushes vertex `i` of a face to the larger vertex `j` whenever
//! the image is not already a face. Iterating over pairs ends in a shifted
//! complex; which one depends on the order of the pairs.

use std::collections::VecDeque;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::complex::{DegreeSlice, IdealSlices, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::Face;

/// An ordered list of pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ShiftSequence(pub Vec<(usize, usize)>);

impl ShiftSequence {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies every pair in order.
    pub fn replay(&self, complex: &SimplicialComplex) -> Result<SimplicialComplex> {
        self.0
            .iter()
            .try_fold(complex.clone(), |acc, &(i, j)| shift_ij(&acc, i, j))
    }
}

/// How [`shift_to_shifted`] picks the next pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "seed")]
pub enum Strategy {
    /// Pairs in lexicographic order, restarting after every change.
    Sweep,
    /// Uniform choice among the pairs that change the complex.
    Random(u64),
}

fn check_pair(complex: &SimplicialComplex, i: usize, j: usize) -> Result<()> {
    let n = complex.n();
    if i == 0 || i >= j || j > n {
        return Err(Error::PairOutOfRange { i, j, n });
    }
    Ok(())
}

/// All pairs `1 ≤ i < j ≤ n` in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// `C_ij(σ)`.
#[inline]
fn compress(complex: &SimplicialComplex, sigma: Face, i: usize, j: usize) -> Face {
    if sigma.contains(i) && !sigma.contains(j) {
        let image = sigma.without(i).with(j);
        if !complex.contains(image) {
            return image;
        }
    }
    sigma
}

/// Whether `Shift_ij` would change the complex. Cheaper than shifting.
pub fn shift_changes(complex: &SimplicialComplex, i: usize, j: usize) -> bool {
    complex
        .faces()
        .iter()
        .any(|&sigma| compress(complex, sigma, i, j) != sigma)
}

/// `Shift_ij(Δ) = {C_ij(σ) : σ ∈ Δ}`.
pub fn shift_ij(complex: &SimplicialComplex, i: usize, j: usize) -> Result<SimplicialComplex> {
    complex.require_strict()?;
    check_pair(complex, i, j)?;
    let mut faces: Vec<Face> = complex
        .faces()
        .iter()
        .map(|&sigma| compress(complex, sigma, i, j))
        .collect();
    faces.sort_unstable();
    debug_assert!(faces.windows(2).all(|w| w[0] != w[1]), "C_ij must be injective");
    Ok(SimplicialComplex::from_sorted_unchecked(
        complex.n(),
        complex.ground(),
        complex.mode(),
        faces,
    ))
}

/// Default step budget: `10 · n² · |faces|`.
pub fn default_iteration_limit(complex: &SimplicialComplex) -> usize {
    10 * complex.n().pow(2) * complex.len()
}

/// Shifts until the complex is shifted; returns the result together with the
/// nontrivial pairs that were applied.
pub fn shift_to_shifted(
    complex: &SimplicialComplex,
    strategy: Strategy,
) -> Result<(SimplicialComplex, ShiftSequence)> {
    shift_to_shifted_with_limit(complex, strategy, default_iteration_limit(complex))
}

pub fn shift_to_shifted_with_limit(
    complex: &SimplicialComplex,
    strategy: Strategy,
    limit: usize,
) -> Result<(SimplicialComplex, ShiftSequence)> {
    complex.require_strict()?;
    let pairs = all_pairs(complex.n());
    let mut current = complex.clone();
    let mut applied = Vec::new();
    let mut steps = 0usize;
    match strategy {
        Strategy::Sweep => 'outer: loop {
            for &(i, j) in &pairs {
                steps += 1;
                if steps > limit {
                    return Err(Error::IterationLimit(limit));
                }
                if shift_changes(&current, i, j) {
                    current = shift_ij(&current, i, j)?;
                    applied.push((i, j));
                    continue 'outer;
                }
            }
            break;
        },
        Strategy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let live: Vec<(usize, usize)> = pairs
                    .iter()
                    .copied()
                    .filter(|&(i, j)| shift_changes(&current, i, j))
                    .collect();
                let Some(&(i, j)) = live.choose(&mut rng) else { break };
                steps += 1;
                if steps > limit {
                    return Err(Error::IterationLimit(limit));
                }
                current = shift_ij(&current, i, j)?;
                applied.push((i, j));
            }
        }
    }
    debug_assert!(current.is_shifted());
    Ok((current, ShiftSequence(applied)))
}

/// Every shifted complex reachable from `complex` by finitely many shifts.
pub fn enumerate_shifted(complex: &SimplicialComplex, state_limit: usize) -> Result<Vec<SimplicialComplex>> {
    enumerate_shifted_with_pairs(complex, &all_pairs(complex.n()), state_limit)
}

/// Breadth-first closure under the given shift pairs, memoised on the exact
/// face set. Returns the shifted states sorted by their face lists.
pub fn enumerate_shifted_with_pairs(
    complex: &SimplicialComplex,
    pairs: &[(usize, usize)],
    state_limit: usize,
) -> Result<Vec<SimplicialComplex>> {
    Ok(explore(complex, pairs, state_limit)?
        .into_iter()
        .filter(|c| c.is_shifted())
        .collect())
}

/// All states reachable under `pairs`, sorted by their face lists.
pub fn reachable_states(
    complex: &SimplicialComplex,
    pairs: &[(usize, usize)],
    state_limit: usize,
) -> Result<Vec<SimplicialComplex>> {
    explore(complex, pairs, state_limit)
}

fn explore(
    complex: &SimplicialComplex,
    pairs: &[(usize, usize)],
    state_limit: usize,
) -> Result<Vec<SimplicialComplex>> {
    complex.require_strict()?;
    for &(i, j) in pairs {
        check_pair(complex, i, j)?;
    }
    let mut seen: FxHashSet<SimplicialComplex> = FxHashSet::default();
    let mut queue = VecDeque::new();
    seen.insert(complex.clone());
    queue.push_back(complex.clone());
    while let Some(state) = queue.pop_front() {
        for &(i, j) in pairs {
            if !shift_changes(&state, i, j) {
                continue;
            }
            let next = shift_ij(&state, i, j)?;
            if !seen.contains(&next) {
                if seen.len() >= state_limit {
                    return Err(Error::StateLimit(state_limit));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<SimplicialComplex> = seen.into_iter().collect();
    out.sort_unstable_by(|a, b| a.faces().cmp(b.faces()));
    Ok(out)
}

/// The ideal-level map `S_ij^0` applied to every monomial of a face ideal:
/// `e_σ ↦ e_{(σ∖{j})∪{i}}` when `j ∈ σ`, `i ∉ σ` and the image is not already
/// in the ideal; otherwise `e_σ` is kept.
pub fn s_ij_zero(ideal: &IdealSlices, i: usize, j: usize) -> IdealSlices {
    assert!(i >= 1 && i < j && j <= ideal.n, "pair ({i}, {j}) out of range");
    let slices = ideal
        .slices
        .iter()
        .map(|slice| {
            let moved = slice
                .monomials
                .iter()
                .map(|&sigma| {
                    if sigma.contains(j) && !sigma.contains(i) {
                        let image = sigma.without(j).with(i);
                        if !ideal.contains(image) {
                            return image;
                        }
                    }
                    sigma
                })
                .collect();
            DegreeSlice::new(slice.degree, moved)
        })
        .collect();
    IdealSlices { n: ideal.n, slices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Mode;

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let lists: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_facet_lists(n, &lists, Mode::Strict).unwrap()
    }

    #[test]
    fn single_shift_examples() {
        let c = cx(3, &[&[1, 2], &[3]]);
        let s = shift_ij(&c, 1, 3).unwrap();
        assert_eq!(s.facets(), vec![Face::of(&[1]), Face::of(&[2, 3])]);
        let cycle = cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert_eq!(shift_ij(&cycle, 1, 3).unwrap(), cycle);
        let shifted = cx(3, &[&[1, 3], &[2, 3]]);
        for (i, j) in all_pairs(3) {
            assert_eq!(shift_ij(&shifted, i, j).unwrap(), shifted);
        }
    }

    #[test]
    fn pair_validation() {
        let c = cx(3, &[&[1, 2], &[3]]);
        assert_eq!(shift_ij(&c, 2, 2).unwrap_err(), Error::PairOutOfRange { i: 2, j: 2, n: 3 });
        assert!(shift_ij(&c, 0, 2).is_err());
        assert!(shift_ij(&c, 1, 4).is_err());
        let relaxed = c.restriction(Face::of(&[1, 2]));
        assert_eq!(shift_ij(&relaxed, 1, 2).unwrap_err(), Error::RelaxedComplex);
    }

    #[test]
    fn iterated_shifting() {
        let shifted = cx(3, &[&[1, 3], &[2, 3]]);
        let (s, seq) = shift_to_shifted(&shifted, Strategy::Sweep).unwrap();
        assert_eq!((s, seq.is_empty()), (shifted.clone(), true));
        let star = cx(3, &[&[1, 2], &[1, 3]]);
        for strategy in [Strategy::Sweep, Strategy::Random(5)] {
            let (s, seq) = shift_to_shifted(&star, strategy).unwrap();
            assert_eq!(s, shifted);
            assert_eq!(seq.replay(&star).unwrap(), s);
        }
        assert_eq!(
            shift_to_shifted_with_limit(&star, Strategy::Sweep, 1).unwrap_err(),
            Error::IterationLimit(1)
        );
    }

    #[test]
    fn enumeration_examples() {
        let shifted = cx(3, &[&[1, 3], &[2, 3]]);
        assert_eq!(enumerate_shifted(&shifted, 10).unwrap(), vec![shifted.clone()]);
        let star = cx(3, &[&[1, 2], &[1, 3]]);
        let all = enumerate_shifted(&star, 10).unwrap();
        assert_eq!(all, vec![shifted]);
        assert_eq!(enumerate_shifted(&star, 1).unwrap_err(), Error::StateLimit(1));
    }

    #[test]
    fn ideal_map_examples() {
        // J = (e_1 e_3) on [3], from the path 1-2-3
        let path = cx(3, &[&[1, 2], &[2, 3]]);
        let j = path.ideal_slices();
        let moved = s_ij_zero(&j, 1, 2);
        assert!(moved.contains(Face::of(&[1, 3])));
        // path 2-1-3 has J = (e_2 e_3); S_12 sends it to e_1 e_3
        let other = cx(3, &[&[1, 2], &[1, 3]]);
        let moved = s_ij_zero(&other.ideal_slices(), 1, 2);
        assert!(moved.contains(Face::of(&[1, 3])));
        assert!(!moved.contains(Face::of(&[2, 3])));
        assert_eq!(moved, shift_ij(&other, 1, 2).unwrap().ideal_slices());
    }
}
