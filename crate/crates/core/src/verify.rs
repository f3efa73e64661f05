//! Randomised verification of the Betti-number inequalities between a
//! complex, its combinatorial shiftings, its exterior shifting and its
//! lexsegment complex, together with the shifting axioms.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gin::{gin, GinOptions};
use crate::homology::{hochster_betti, reduced_homology_dims, shifted_betti, BettiTable};
use crate::lexsegment::delta_lex;
use crate::random::{random_complex, MIXED_DENSITIES};
use crate::shifting::{shift_ij, shift_to_shifted, ShiftSequence, Strategy};

/// Location of a violated inequality. For Betti tables this is `(i, j)`
/// of `β_{i,i+j}`; for `m_≤` counts it is `(i, d)`; for homology it is
/// `(k + 1, 0)`; for f-vectors `(k, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub seed: u64,
    pub check: String,
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
    pub pairs: Vec<(usize, usize)>,
    pub cell: Option<Cell>,
    /// The side that should be smaller (or equal).
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.trials += other.trials;
        self.failures.extend(other.failures);
        self.elapsed_ms += other.elapsed_ms;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// One instance under test, used to label failures.
#[derive(Clone, Copy, Debug)]
pub struct Case<'a> {
    pub seed: u64,
    pub complex: &'a SimplicialComplex,
    pub pairs: &'a [(usize, usize)],
}

impl Case<'_> {
    pub fn failure(&self, check: &str, cell: Option<Cell>, lhs: u64, rhs: u64) -> Failure {
        Failure {
            seed: self.seed,
            check: check.to_string(),
            n: self.complex.n(),
            facets: self.complex.facet_lists(),
            pairs: self.pairs.to_vec(),
            cell,
            lhs,
            rhs,
        }
    }

    fn with_pairs<'b>(&self, pairs: &'b [(usize, usize)]) -> Case<'b>
    where
        Self: 'b,
    {
        Case { seed: self.seed, complex: self.complex, pairs }
    }
}

/// One failure per cell where `lower` exceeds `upper`.
pub fn betti_excess(case: &Case, check: &str, lower: &BettiTable, upper: &BettiTable) -> Vec<Failure> {
    lower
        .iter()
        .filter(|&((i, j), v)| v > upper.get(i, j))
        .map(|((i, j), v)| case.failure(check, Some(Cell { i, j }), v, upper.get(i, j)))
        .collect()
}

/// One failure per `(i, d)` where `m_≤i(J_upper, d) < m_≤i(J_lower, d)`.
pub fn m_leq_deficit(case: &Case, check: &str, upper: &SimplicialComplex, lower: &SimplicialComplex) -> Vec<Failure> {
    let n = upper.n();
    let mut out = Vec::new();
    for d in 1..=n {
        for i in d..=n {
            let (lo, hi) = (lower.m_leq(i, d) as u64, upper.m_leq(i, d) as u64);
            if lo > hi {
                out.push(case.failure(check, Some(Cell { i, j: d }), lo, hi));
            }
        }
    }
    out
}

/// S1 and S3 for a claimed shifting of `case.complex`.
pub fn shifting_axioms(case: &Case, shifted: &SimplicialComplex) -> Vec<Failure> {
    let mut out = Vec::new();
    if !shifted.is_shifted() {
        out.push(case.failure("shifted", None, 0, 1));
    }
    let (f, g) = (case.complex.f_vector(), shifted.f_vector());
    let len = f.as_slice().len().max(g.as_slice().len());
    if let Some(k) = (0..len).find(|&k| f.get(k) != g.get(k)) {
        out.push(case.failure("f_vector", Some(Cell { i: k, j: 0 }), f.get(k) as u64, g.get(k) as u64));
    }
    out
}

/// Largest facet of dimension at least one removed, if there is one.
fn drop_a_facet(complex: &SimplicialComplex) -> Option<SimplicialComplex> {
    let facet = complex.facets().into_iter().filter(|f| f.degree() >= 2).max_by_key(|f| (f.degree(), f.mask()))?;
    let faces = complex.faces().iter().copied().filter(|&f| f != facet);
    SimplicialComplex::from_faces(complex.n(), faces, complex.mode()).ok()
}

/// Combinatorial shifting checks for one strategy: axioms, replay, the
/// single-step Betti inequality along the sequence, monotonicity on a
/// subcomplex, and `β(Δ) ≤ β(Δ^c)`.
fn check_combinatorial(
    case: &Case,
    field: PrimeField,
    beta: &BettiTable,
    strategy: Strategy,
) -> (Vec<Failure>, Option<(SimplicialComplex, BettiTable)>) {
    let complex = case.complex;
    let (shifted, seq) = match shift_to_shifted(complex, strategy) {
        Ok(r) => r,
        Err(_) => return (vec![case.failure("shift_terminates", None, 0, 0)], None),
    };
    let case = case.with_pairs(seq.pairs());
    let mut out = shifting_axioms(&case, &shifted);
    if seq.replay(complex).ok().as_ref() != Some(&shifted) {
        out.push(case.failure("replay", None, 0, 0));
    }
    match shift_to_shifted(&shifted, Strategy::Sweep) {
        Ok((again, s)) if again == shifted && s.is_empty() => {}
        _ => out.push(case.failure("fixes_shifted", None, 0, 0)),
    }
    if let Some(sub) = drop_a_facet(complex) {
        if !seq.replay(&sub).is_ok_and(|s| s.is_subcomplex_of(&shifted)) {
            out.push(case.failure("monotone", None, 0, 0));
        }
    }
    let (steps, current_beta) = walk(&case, &seq, field, beta);
    out.extend(steps);
    let shifted_beta = match shifted_betti(&shifted) {
        Ok(b) => b,
        Err(_) => return (out, None),
    };
    if shifted_beta != current_beta {
        for &(i, j) in &shifted_beta.support_union(&current_beta) {
            if shifted_beta.get(i, j) != current_beta.get(i, j) {
                out.push(case.failure("shifted_formula", Some(Cell { i, j }), shifted_beta.get(i, j), current_beta.get(i, j)));
            }
        }
    }
    out.extend(betti_excess(&case, "combinatorial_upper_bound", beta, &shifted_beta));
    (out, Some((shifted, shifted_beta)))
}

/// Every check on one complex. `seed` labels failures and seeds the random
/// shifting strategy and the generic coordinate changes.
pub fn verify_instance(complex: &SimplicialComplex, seed: u64, field: PrimeField) -> Vec<Failure> {
    let case = Case { seed, complex, pairs: &[] };
    let beta = hochster_betti(complex, field);
    let mut out = Vec::new();
    let mut shifted = Vec::new();
    for strategy in [Strategy::Sweep, Strategy::Random(seed)] {
        let (failures, result) = check_combinatorial(&case, field, &beta, strategy);
        out.extend(failures);
        shifted.extend(result);
    }

    let options = GinOptions { prime: field.p(), seed, retries: 3 };
    match gin(complex, options) {
        Ok(outcome) => {
            let exterior = outcome.complex;
            out.extend(shifting_axioms(&case, &exterior));
            let exterior_beta = shifted_betti(&exterior).unwrap_or_default();
            for (c, c_beta) in &shifted {
                out.extend(betti_excess(&case, "exterior_below_combinatorial", &exterior_beta, c_beta));
                out.extend(m_leq_deficit(&case, "m_leq_dominance", &exterior, c));
                match gin(c, options) {
                    Ok(o) if o.complex == *c => {}
                    _ => out.push(case.failure("gin_fixes_shifted", None, 0, 0)),
                }
            }
            let (h, he) = (reduced_homology_dims(complex, field), reduced_homology_dims(&exterior, field));
            let top = h.as_slice().len().max(he.as_slice().len());
            for idx in 0..top {
                let k = idx as isize - 1;
                if h.dim(k) != he.dim(k) {
                    out.push(case.failure("homology_invariance", Some(Cell { i: idx, j: 0 }), h.dim(k) as u64, he.dim(k) as u64));
                }
            }
        }
        Err(_) => out.push(case.failure("gin_agreement", None, 0, 0)),
    }

    match delta_lex(&complex.f_vector(), complex.n()) {
        Ok(lex) => {
            let lex_beta = shifted_betti(&lex).unwrap_or_default();
            out.extend(betti_excess(&case, "lex_upper_bound", &beta, &lex_beta));
            for (_, c_beta) in &shifted {
                out.extend(betti_excess(&case, "lex_above_combinatorial", c_beta, &lex_beta));
            }
        }
        Err(_) => out.push(case.failure("lexsegment", None, 0, 0)),
    }
    out
}

/// [`verify_instance`] on a fixed list of complexes, in parallel.
pub fn verify_complexes(complexes: &[SimplicialComplex], seed: u64, p: u32) -> Result<VerificationReport> {
    let field = PrimeField::new(p)?;
    let start = Instant::now();
    let failures: Vec<Failure> = complexes
        .par_iter()
        .enumerate()
        .flat_map_iter(|(t, c)| verify_instance(c, seed.wrapping_add(t as u64), field))
        .collect();
    Ok(VerificationReport { trials: complexes.len(), failures, elapsed_ms: start.elapsed().as_millis() as u64 })
}

/// Trial `t` draws `random_complex(n, density_t, seed + t)` with densities
/// cycling through [`MIXED_DENSITIES`] and runs every check on it.
pub fn verify_theorems(n: usize, trials: usize, p: u32, seed: u64) -> Result<VerificationReport> {
    if n == 0 || n > crate::random::MAX_RANDOM_N {
        return Err(Error::InvalidArgument(format!("n = {n} outside 1..={}", crate::random::MAX_RANDOM_N)));
    }
    PrimeField::new(p)?;
    let complexes = (0..trials)
        .map(|t| random_complex(n, MIXED_DENSITIES[t % MIXED_DENSITIES.len()], seed.wrapping_add(t as u64)))
        .collect::<Result<Vec<_>>>()?;
    verify_complexes(&complexes, seed, p)
}

/// Replays `seq` and checks the single-step Betti inequality at every step.
pub fn single_step_failures(case: &Case, seq: &ShiftSequence, field: PrimeField) -> Vec<Failure> {
    let beta = hochster_betti(case.complex, field);
    walk(case, seq, field, &beta).0
}

/// Failures along the replay of `seq` and the Betti table at its end.
fn walk(case: &Case, seq: &ShiftSequence, field: PrimeField, beta: &BettiTable) -> (Vec<Failure>, BettiTable) {
    let mut current = case.complex.clone();
    let mut beta = beta.clone();
    let mut out = Vec::new();
    for (step, &(i, j)) in seq.pairs().iter().enumerate() {
        let Ok(next) = shift_ij(&current, i, j) else {
            out.push(case.failure("pair_in_range", None, i as u64, j as u64));
            break;
        };
        let next_beta = hochster_betti(&next, field);
        out.extend(betti_excess(&case.with_pairs(&seq.pairs()[..=step]), "single_step", &beta, &next_beta));
        current = next;
        beta = next_beta;
    }
    (out, beta)
}
