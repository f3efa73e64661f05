//! One shift at a time: reduced homology and graded Betti numbers can only
//! grow. Every complex on at most five vertices, plus a random sample on six.

use rayon::prelude::*;

use shiftlab_core::random::{all_complexes, MIXED_DENSITIES};
use shiftlab_core::shifting::all_pairs;
use shiftlab_core::{betti_leq, hochster_betti, random_complex, reduced_homology_dims, shift_ij, PrimeField, SimplicialComplex};

const FIELDS: [u32; 3] = [2, 3, 32003];

/// Returns a description of the first violation, if any.
fn check(c: &SimplicialComplex) -> Option<String> {
    for (i, j) in all_pairs(c.n()) {
        let s = shift_ij(c, i, j).unwrap();
        if s == *c {
            continue;
        }
        for p in FIELDS {
            let field = PrimeField::new(p).unwrap();
            let (h, hs) = (reduced_homology_dims(c, field), reduced_homology_dims(&s, field));
            let top = h.top().max(hs.top());
            if (-1..=top).any(|k| h.dim(k) > hs.dim(k)) {
                return Some(format!("homology GF({p}) ({i},{j}) {:?}", c.facet_lists()));
            }
            if !betti_leq(&hochster_betti(c, field), &hochster_betti(&s, field)) {
                return Some(format!("betti GF({p}) ({i},{j}) {:?}", c.facet_lists()));
            }
        }
    }
    None
}

#[test]
fn exhaustive_up_to_five_vertices() {
    for n in 2..=5 {
        let all = all_complexes(n);
        let bad: Vec<String> = all.par_iter().filter_map(check).collect();
        assert!(bad.is_empty(), "n = {n}: {} violations, first {}", bad.len(), bad[0]);
    }
}

#[test]
fn sampled_on_six_vertices() {
    let bad: Vec<String> = (0..300u64)
        .into_par_iter()
        .filter_map(|seed| check(&random_complex(6, MIXED_DENSITIES[seed as usize % 5], seed).unwrap()))
        .collect();
    assert!(bad.is_empty(), "{} violations, first {}", bad.len(), bad[0]);
}
