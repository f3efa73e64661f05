//! A complex on 15 vertices none of whose combinatorial shiftings has Betti
//! numbers comparable to all the others, and whose exterior shifting is not
//! a combinatorial shifting.
//!
//! The face ideal is built from blocks. For `3 ≤ i ≤ 8` let
//! `h_{i-2} = {i-2, ..., 2i-5}`, `T_i` the degree-`i` monomials lex-greater
//! than `h_{i-2} ∪ {12, 13}`, and `T_i(H) = {h_{i-2} ∪ p : p ∈ H}` for a set
//! `H` of pairs from `{12, ..., 15}`. The ideal is generated by
//! `T_i ∪ T_i(H_i)` for `i = 3..8` together with every 9-subset. Every
//! shifting replaces each `T_i(H_i)` by `T_i(A)` or `T_i(B)`, giving a word
//! `Q ∈ {A, B}^6`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Mode, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::{lex_cmp_unchecked, subsets_of_size, Face};
use crate::gin::{gin, GinOptions};
use crate::homology::{betti_leq, shifted_betti, BettiTable};
use crate::shifting::{all_pairs, reachable_states, shift_changes};
use crate::verify::{Case, Cell, Failure, VerificationReport};

pub const N: usize = 15;

/// Degrees carrying a block.
pub const DEGREES: std::ops::RangeInclusive<usize> = 3..=8;

type Pairs = [(usize, usize); 3];

/// `H_3, ..., H_8`.
pub const H: [Pairs; 6] = [
    [(12, 13), (12, 15), (13, 14)],
    [(12, 13), (12, 14), (14, 15)],
    [(12, 13), (12, 15), (14, 15)],
    [(12, 13), (13, 14), (14, 15)],
    [(12, 13), (13, 15), (14, 15)],
    [(12, 14), (13, 15), (14, 15)],
];

pub const A: Pairs = [(12, 13), (12, 14), (13, 14)];
pub const B: Pairs = [(12, 13), (12, 14), (12, 15)];

/// `h_k = {k, ..., 2k - 1}`.
pub fn h_block(k: usize) -> Face {
    Face::interval(k, 2 * k - 1)
}

/// `T_i`: degree-`i` faces lex-greater than `h_{i-2} ∪ {12, 13}`.
pub fn t_segment(i: usize) -> Vec<Face> {
    let pivot = h_block(i - 2).with(12).with(13);
    subsets_of_size(N, i)
        .filter(|&s| lex_cmp_unchecked(s, pivot).is_gt())
        .collect()
}

/// `T_i(H)`.
pub fn t_block(i: usize, pairs: &Pairs) -> Vec<Face> {
    let h = h_block(i - 2);
    pairs.iter().map(|&(a, b)| h.with(a).with(b)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    A,
    B,
}

impl Block {
    pub fn pairs(self) -> &'static Pairs {
        match self {
            Block::A => &A,
            Block::B => &B,
        }
    }
}

/// `(Q_3, ..., Q_8)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QSequence(pub [Block; 6]);

impl QSequence {
    /// Entry for degree `d ∈ 3..=8`.
    pub fn at(&self, d: usize) -> Block {
        self.0[d - 3]
    }

    pub fn all() -> impl Iterator<Item = QSequence> {
        (0..64u32).map(|bits| {
            QSequence(std::array::from_fn(|k| if bits >> (5 - k) & 1 == 0 { Block::A } else { Block::B }))
        })
    }

    pub fn parse(text: &str) -> Result<QSequence> {
        let letters: Vec<Block> = text
            .chars()
            .filter(|c| c.is_ascii_alphabetic())
            .map(|c| match c {
                'A' | 'a' => Ok(Block::A),
                'B' | 'b' => Ok(Block::B),
                other => Err(Error::InvalidArgument(format!("block letter {other:?}"))),
            })
            .collect::<Result<_>>()?;
        let array: [Block; 6] = letters
            .try_into()
            .map_err(|_| Error::InvalidArgument(format!("{text:?} does not have six blocks")))?;
        Ok(QSequence(array))
    }
}

impl fmt::Display for QSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<&str> = self.0.iter().map(|b| if *b == Block::A { "A" } else { "B" }).collect();
        write!(f, "({})", letters.join(","))
    }
}

/// The word of the block pairs per degree, either `H_i` or `Q_i`.
fn complex_from_blocks(blocks: impl Fn(usize) -> &'static Pairs) -> SimplicialComplex {
    let mut generators: Vec<Face> = subsets_of_size(N, 9).collect();
    for i in DEGREES {
        generators.extend(t_segment(i));
        generators.extend(t_block(i, blocks(i)));
    }
    SimplicialComplex::from_nonface_generators(N, &generators, Mode::Strict)
        .expect("block generators give a strict complex")
}

/// Degrees `d ∈ 3..=8` where `I_d` is not exactly `T_d ∪ T_d(blocks(d))`.
pub fn slice_mismatches(complex: &SimplicialComplex, blocks: impl Fn(usize) -> &'static Pairs) -> Vec<usize> {
    DEGREES
        .filter(|&d| {
            let mut expected = t_segment(d);
            expected.extend(t_block(d, blocks(d)));
            expected.sort_unstable();
            expected.dedup();
            complex.ideal_degree_slice(d).monomials != expected
        })
        .collect()
}

/// The 15-vertex complex. Panics if a degree slice of its face ideal is not
/// spanned by the block generators of that degree, since the construction
/// depends on it.
pub fn build() -> SimplicialComplex {
    let complex = complex_from_blocks(|i| &H[i - 3]);
    let bad = slice_mismatches(&complex, |i| &H[i - 3]);
    assert!(bad.is_empty(), "ideal slices are not generated in their own degree: {bad:?}");
    complex
}

/// The complex with face ideal `I^Q`.
pub fn complex_for(q: QSequence) -> SimplicialComplex {
    complex_from_blocks(|i| q.at(i).pairs())
}

/// The word `Q` with `J_Δ = I^Q`, if there is one.
pub fn classify(complex: &SimplicialComplex) -> Result<QSequence> {
    if complex.n() != N {
        return Err(Error::NotBlockForm(format!("ground set has {} vertices", complex.n())));
    }
    let mut word = [Block::A; 6];
    for d in DEGREES {
        let mut found = None;
        for block in [Block::A, Block::B] {
            let mut expected = t_segment(d);
            expected.extend(t_block(d, block.pairs()));
            expected.sort_unstable();
            if complex.ideal_degree_slice(d).monomials == expected {
                found = Some(block);
            }
        }
        word[d - 3] = found.ok_or_else(|| Error::NotBlockForm(format!("degree {d} slice")))?;
    }
    let q = QSequence(word);
    // the lower and upper degrees are fixed by the blocks
    if complex_for(q) != *complex {
        return Err(Error::NotBlockForm(format!("outside degrees 3..8 for {q}")));
    }
    Ok(q)
}

/// The words listed as reachable: one `B` among `A`s, one `A` among `B`s,
/// and four mixed words.
pub fn expected_table() -> BTreeSet<QSequence> {
    let mut table = BTreeSet::new();
    for k in 0..6 {
        let mut one_b = [Block::A; 6];
        one_b[k] = Block::B;
        table.insert(QSequence(one_b));
        let mut one_a = [Block::B; 6];
        one_a[k] = Block::A;
        table.insert(QSequence(one_a));
    }
    for w in ["AAABBB", "BABABA", "BBABAA", "ABBAAB"] {
        table.insert(QSequence::parse(w).unwrap());
    }
    table
}

/// Pairs inside `{12, ..., 15}`, the only ones that can act.
pub fn active_pairs() -> Vec<(usize, usize)> {
    all_pairs(N).into_iter().filter(|&(i, _)| i >= 12).collect()
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// States reached with the active pairs.
    pub states: usize,
    /// Shifted states with their words, sorted by word.
    pub shifted: Vec<(QSequence, SimplicialComplex)>,
    /// Every reached state is fixed by every pair outside `{12..15}`, so the
    /// search over all pairs reaches the same states.
    pub other_pairs_inert: bool,
}

impl Classification {
    pub fn words(&self) -> BTreeSet<QSequence> {
        self.shifted.iter().map(|(q, _)| *q).collect()
    }
}

/// Breadth-first search over the active pairs, then a check that the
/// remaining pairs act trivially on every state found.
pub fn enumerate_and_classify(complex: &SimplicialComplex, state_limit: usize) -> Result<Classification> {
    let active = active_pairs();
    let states = reachable_states(complex, &active, state_limit)?;
    let others: Vec<(usize, usize)> = all_pairs(N).into_iter().filter(|p| !active.contains(p)).collect();
    let other_pairs_inert = states
        .par_iter()
        .all(|s| others.iter().all(|&(i, j)| !shift_changes(s, i, j)));
    let mut shifted = states
        .iter()
        .filter(|s| s.is_shifted())
        .map(|s| Ok((classify(s)?, s.clone())))
        .collect::<Result<Vec<_>>>()?;
    shifted.sort_by_key(|(q, _)| *q);
    Ok(Classification { states: states.len(), shifted, other_pairs_inert })
}

/// `table[a][b]` is `β(a) ≤ β(b)` entrywise.
pub fn dominance_matrix(tables: &[BettiTable]) -> Vec<Vec<bool>> {
    tables.iter().map(|a| tables.iter().map(|b| betti_leq(a, b)).collect()).collect()
}

/// Rows that dominate every other table: `β(other) ≤ β(row)` for all.
pub fn universal_upper_bounds(matrix: &[Vec<bool>]) -> Vec<usize> {
    (0..matrix.len()).filter(|&r| (0..matrix.len()).all(|c| matrix[c][r])).collect()
}

/// Rows dominated by every other table.
pub fn universal_lower_bounds(matrix: &[Vec<bool>]) -> Vec<usize> {
    (0..matrix.len()).filter(|&r| (0..matrix.len()).all(|c| matrix[r][c])).collect()
}

/// Two shiftings agreeing in `m_≤i` at degrees `j - 1` and `j` for
/// `i ≠ 14`, with `m_≤14` equal at `j - 1` and smaller for `other` at `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub sharp: QSequence,
    pub other: QSequence,
    pub degree: usize,
    /// Cells `i` with `β_{i,i+j}(sharp) < β_{i,i+j}(other)`.
    pub strictly_larger_in_other: Vec<usize>,
}

/// Degree of the first `A` in `q`.
fn first_a(q: QSequence) -> Option<usize> {
    (3..=8usize).find(|&d| q.at(d) == Block::A)
}

/// Checks the `m_≤` pattern between two complexes at degree `j`.
pub fn is_witness(sharp: &SimplicialComplex, other: &SimplicialComplex, j: usize) -> bool {
    let equal_at = |d: usize, skip14: bool| {
        (1..=N).filter(|&i| !(skip14 && i == 14)).all(|i| sharp.m_leq(i, d) == other.m_leq(i, d))
    };
    equal_at(j - 1, false) && equal_at(j, true) && other.m_leq(14, j) < sharp.m_leq(14, j)
}

/// For each shifting `Δ♯` with first `A` at degree `j`, a shifting with `B`
/// at degrees `j - 1` and `j` exhibiting the `m_≤14` drop.
pub fn witnesses(classification: &Classification) -> Vec<Witness> {
    let mut out = Vec::new();
    for (q, sharp) in &classification.shifted {
        let Some(j) = first_a(*q) else { continue };
        let partner = classification.shifted.iter().find(|(p, other)| {
            p.at(j) == Block::B && (j == 3 || p.at(j - 1) == Block::B) && is_witness(sharp, other, j)
        });
        if let Some((p, other)) = partner {
            let (a, b) = (shifted_betti(sharp).unwrap(), shifted_betti(other).unwrap());
            let strictly_larger_in_other = (0..=N - j).filter(|&i| a.get(i, j) < b.get(i, j)).collect();
            out.push(Witness { sharp: *q, other: *p, degree: j, strictly_larger_in_other });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct NegativeResults {
    pub words: Vec<QSequence>,
    pub tables: Vec<BettiTable>,
    pub dominance: Vec<Vec<bool>>,
    pub upper_bounds: Vec<usize>,
    pub lower_bounds: Vec<usize>,
    pub witnesses: Vec<Witness>,
    /// `None` when the exterior shifting was skipped.
    pub exterior: Option<SimplicialComplex>,
    pub report: VerificationReport,
}

/// Betti comparisons among the shiftings and, when `options` is given, the
/// check that the exterior shifting is not one of them.
pub fn negative_results(
    complex: &SimplicialComplex,
    classification: &Classification,
    options: Option<GinOptions>,
) -> NegativeResults {
    let start = std::time::Instant::now();
    let case = Case { seed: options.map_or(0, |o| o.seed), complex, pairs: &[] };
    let words: Vec<QSequence> = classification.shifted.iter().map(|(q, _)| *q).collect();
    let tables: Vec<BettiTable> = classification
        .shifted
        .par_iter()
        .map(|(_, c)| shifted_betti(c).expect("classified states are shifted"))
        .collect();
    let dominance = dominance_matrix(&tables);
    let upper_bounds = universal_upper_bounds(&dominance);
    let lower_bounds = universal_lower_bounds(&dominance);
    let witnesses = witnesses(classification);

    let mut failures: Vec<Failure> = Vec::new();
    for &r in &upper_bounds {
        failures.push(case.failure("dominates_all", Some(Cell { i: r, j: 0 }), 0, 0));
    }
    for &r in &lower_bounds {
        failures.push(case.failure("dominated_by_all", Some(Cell { i: r, j: 0 }), 0, 0));
    }
    if witnesses.is_empty() {
        failures.push(case.failure("m_leq_witness", None, 0, 1));
    }
    let mut exterior = None;
    if let Some(options) = options {
        match gin(complex, options) {
            Ok(outcome) => {
                if let Some(pos) = classification.shifted.iter().position(|(_, c)| *c == outcome.complex) {
                    failures.push(case.failure("exterior_is_combinatorial", Some(Cell { i: pos, j: 0 }), 1, 0));
                }
                exterior = Some(outcome.complex);
            }
            Err(_) => failures.push(case.failure("gin_agreement", None, 0, 0)),
        }
    }
    let report = VerificationReport {
        trials: classification.shifted.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    NegativeResults { words, tables, dominance, upper_bounds, lower_bounds, witnesses, exterior, report }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_face(p: (usize, usize)) -> Face {
        Face::of(&[p.0, p.1])
    }

    #[test]
    fn blocks_as_displayed() {
        assert_eq!(h_block(1), Face::of(&[1]));
        assert_eq!(h_block(2), Face::of(&[2, 3]));
        assert_eq!(h_block(6), Face::of(&[6, 7, 8, 9, 10, 11]));
        assert_eq!(H[0].map(pair_face), [Face::of(&[12, 13]), Face::of(&[12, 15]), Face::of(&[13, 14])]);
        assert_eq!(H[5].map(pair_face), [Face::of(&[12, 14]), Face::of(&[13, 15]), Face::of(&[14, 15])]);
        assert_eq!(t_block(3, &H[0])[1], Face::of(&[1, 12, 15]));
        assert_eq!(t_block(8, &B)[2], Face::of(&[6, 7, 8, 9, 10, 11, 12, 15]));
    }

    #[test]
    fn segments() {
        let t3 = t_segment(3);
        assert!(t3.contains(&Face::of(&[1, 2, 15])));
        assert!(t3.contains(&Face::of(&[1, 11, 15])));
        assert!(!t3.contains(&Face::of(&[1, 12, 13])));
        assert!(!t3.contains(&Face::of(&[1, 12, 14])));
        assert!(!t3.contains(&Face::of(&[2, 3, 4])));
        // {1, a, b} with 2 <= a <= 11
        assert_eq!(t3.len(), (4..=13).sum::<usize>());
    }

    #[test]
    fn complex_examples() {
        let c = build();
        assert!(c.ideal_degree_slice(3).contains(Face::of(&[1, 12, 15])));
        assert!(!c.ideal_degree_slice(3).contains(Face::of(&[1, 14, 15])));
        assert!(subsets_of_size(N, 9).all(|s| !c.contains(s)));
        assert!(slice_mismatches(&c, |i| &H[i - 3]).is_empty());
        assert!(!c.is_shifted());
    }

    #[test]
    fn words() {
        assert_eq!(QSequence::all().count(), 64);
        assert_eq!(QSequence::all().collect::<BTreeSet<_>>().len(), 64);
        let q = QSequence::parse("(A,B,B,A,A,B)").unwrap();
        assert_eq!(q.to_string(), "(A,B,B,A,A,B)");
        assert_eq!(q.at(3), Block::A);
        assert_eq!(q.at(8), Block::B);
        assert!(QSequence::parse("ABAB").is_err());
        let table = expected_table();
        assert_eq!(table.len(), 16);
        assert!(!table.contains(&QSequence([Block::A; 6])));
        assert!(!table.contains(&QSequence([Block::B; 6])));
    }

    #[test]
    fn block_complexes_classify() {
        for q in QSequence::all().step_by(9) {
            let c = complex_for(q);
            assert!(c.is_shifted(), "{q}");
            assert_eq!(classify(&c).unwrap(), q);
        }
        assert!(classify(&build()).is_err());
    }

    #[test]
    fn dominance_helpers() {
        let mut small = BettiTable::new();
        small.set(0, 2, 1);
        let mut big = BettiTable::new();
        big.set(0, 2, 2);
        let mut side = BettiTable::new();
        side.set(1, 2, 1);
        let m = dominance_matrix(&[small.clone(), big.clone()]);
        assert_eq!(universal_upper_bounds(&m), vec![1]);
        assert_eq!(universal_lower_bounds(&m), vec![0]);
        let m = dominance_matrix(&[small, big, side]);
        assert!(universal_upper_bounds(&m).is_empty());
        assert!(universal_lower_bounds(&m).is_empty());
    }
}
