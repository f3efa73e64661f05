//! Seeded random complexes and exhaustive enumeration of small complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Mode, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::{subsets_of_size, Face};

/// Largest ground set accepted by the samplers.
pub const MAX_RANDOM_N: usize = 20;

/// Densities cycled through by the mixed corpora.
pub const MIXED_DENSITIES: [f64; 5] = [0.02, 0.05, 0.1, 0.2, 0.35];

fn check_args(n: usize, density: f64) -> Result<()> {
    if n == 0 || n > MAX_RANDOM_N {
        return Err(Error::InvalidArgument(format!("n = {n} outside 1..={MAX_RANDOM_N}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!("density {density} outside [0, 1]")));
    }
    Ok(())
}

/// Marks every subset of `face` in a dense table indexed by mask.
fn mark_down(present: &mut [bool], face: Face) {
    if present[face.mask() as usize] {
        return;
    }
    for sub in face.subsets() {
        present[sub.mask() as usize] = true;
    }
}

fn collect(n: usize, present: &[bool]) -> SimplicialComplex {
    let faces = present
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(m, _)| Face::from_mask(m as u64));
    SimplicialComplex::from_faces(n, faces, Mode::Strict).expect("marked family is a strict complex")
}

/// Walks cardinalities from `n` down to 2 and adds each subset that is not
/// yet a face with probability `density`, then closes downward. Singletons
/// are always present.
pub fn random_complex(n: usize, density: f64, seed: u64) -> Result<SimplicialComplex> {
    check_args(n, density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![false; 1 << n];
    for v in 1..=n {
        mark_down(&mut present, Face::singleton(v));
    }
    for d in (2..=n).rev() {
        for face in subsets_of_size(n, d) {
            if !present[face.mask() as usize] && rng.random_bool(density) {
                mark_down(&mut present, face);
            }
        }
    }
    Ok(collect(n, &present))
}

/// A random shifted complex: random generators closed under taking subsets
/// and under replacing a vertex by a larger absent one.
pub fn random_shifted_complex(n: usize, density: f64, seed: u64) -> Result<SimplicialComplex> {
    check_args(n, density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![false; 1 << n];
    let mut stack: Vec<Face> = (1..=n).map(Face::singleton).collect();
    for d in (2..=n).rev() {
        for face in subsets_of_size(n, d) {
            if !present[face.mask() as usize] && rng.random_bool(density) {
                stack.push(face);
                while let Some(sigma) = stack.pop() {
                    if present[sigma.mask() as usize] {
                        continue;
                    }
                    present[sigma.mask() as usize] = true;
                    for v in sigma.vertices() {
                        stack.push(sigma.without(v));
                        if v < n && !sigma.contains(v + 1) {
                            stack.push(sigma.without(v).with(v + 1));
                        }
                    }
                }
            }
        }
    }
    while let Some(sigma) = stack.pop() {
        if !present[sigma.mask() as usize] {
            present[sigma.mask() as usize] = true;
            stack.extend(sigma.boundary());
        }
    }
    present[0] = true;
    Ok(collect(n, &present))
}

/// Seeded `(n, density)` draw for mixed corpora: `n` uniform in
/// `lo..=hi`, density from [`MIXED_DENSITIES`].
pub fn corpus_parameters(lo: usize, hi: usize, seed: u64) -> (usize, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_C0DE);
    let n = rng.random_range(lo..=hi);
    let density = MIXED_DENSITIES[rng.random_range(0..MIXED_DENSITIES.len())];
    (n, density)
}

/// Every strict-mode complex on `[n]`, in a fixed order. Intended for
/// `n ≤ 5`; the count grows like the Dedekind numbers.
pub fn all_complexes(n: usize) -> Vec<SimplicialComplex> {
    assert!((1..=6).contains(&n), "exhaustive enumeration needs 1 <= n <= 6");
    let candidates: Vec<Face> = (2..=n).flat_map(|d| subsets_of_size(n, d)).collect();
    let mut present = vec![false; 1 << n];
    present[0] = true;
    for v in 1..=n {
        present[Face::singleton(v).mask() as usize] = true;
    }
    let mut out = Vec::new();
    grow(n, &candidates, 0, &mut present, &mut out);
    out
}

fn grow(n: usize, candidates: &[Face], at: usize, present: &mut [bool], out: &mut Vec<SimplicialComplex>) {
    let Some(&face) = candidates.get(at) else {
        out.push(collect(n, present));
        return;
    };
    grow(n, candidates, at + 1, present, out);
    if face.boundary().all(|b| present[b.mask() as usize]) {
        present[face.mask() as usize] = true;
        grow(n, candidates, at + 1, present, out);
        present[face.mask() as usize] = false;
    }
}
