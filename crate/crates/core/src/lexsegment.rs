//! Squarefree lexsegment complexes.

use crate::complex::{FVector, Mode, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::{binomial, lex_cmp_unchecked, subsets_of_size, Face};

/// Degree-`d` subsets of `[n]`, lex-largest first (`{1,2,...}` leads).
pub fn lex_descending(n: usize, d: usize) -> Vec<Face> {
    let mut faces: Vec<Face> = subsets_of_size(n, d).collect();
    faces.sort_unstable_by(|a, b| lex_cmp_unchecked(*b, *a));
    faces
}

/// `Δ^lex`: in every degree the non-faces are a lex-initial segment.
///
/// Fails with `NotAnFVector` when the segments do not fit together into a
/// complex.
pub fn delta_lex(f: &FVector, n: usize) -> Result<SimplicialComplex> {
    if f.get(0) > n {
        return Err(Error::NotAnFVector(format!("{} vertices on a ground set of {n}", f.get(0))));
    }
    let mut faces = vec![Face::EMPTY];
    for d in 1..=n {
        let total = binomial(n as i64, d as i64) as usize;
        let kept = f.get(d - 1);
        if kept > total {
            return Err(Error::NotAnFVector(format!("f_{} = {kept} exceeds C({n}, {d})", d - 1)));
        }
        faces.extend(lex_descending(n, d).into_iter().skip(total - kept));
    }
    let mode = if f.get(0) == n { Mode::Strict } else { Mode::Relaxed };
    let complex = SimplicialComplex::from_faces(n, faces, mode)
        .map_err(|e| Error::NotAnFVector(format!("{:?}: {e}", f.as_slice())))?;
    if complex.is_strict() && !complex.is_shifted() {
        return Err(Error::NotAnFVector(format!("{:?}: segment is not shifted", f.as_slice())));
    }
    Ok(complex)
}
