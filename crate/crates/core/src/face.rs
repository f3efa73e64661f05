//! Faces of a simplicial complex, encoded as bitmasks over the ground set.
//!
//! Vertex `v` (1-based) lives in bit `v - 1`. A face doubles as the
//! squarefree monomial `x_σ` of the polynomial ring and as the exterior
//! monomial `e_σ`.
//!
//! Two conventions are worth knowing when reading the rest of the crate:
//!
//! * Among faces of equal cardinality, ascending numeric mask order is the
//!   colexicographic order, which coincides with the *descending*
//!   reverse-lexicographic order induced by `e_1 > e_2 > ... > e_n`.
//! * Ascending order of sorted vertex tuples is the *descending*
//!   lexicographic order induced by the same variable order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Face {
        Face(mask)
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    /// Builds a face from 1-based vertex labels. Duplicates are collapsed.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Face> {
        let mut mask = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n: MAX_VERTICES });
            }
            mask |= 1 << (v - 1);
        }
        Ok(Face(mask))
    }

    /// Infallible variant for literals known to be in range.
    pub fn of(vertices: &[usize]) -> Face {
        Face::from_vertices(vertices.iter().copied()).expect("vertex label out of range")
    }

    /// The full vertex set `[n]`.
    pub fn full(n: usize) -> Face {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    /// The interval `{lo, lo + 1, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Face {
        if lo > hi || hi == 0 {
            return Face::EMPTY;
        }
        let lo = lo.max(1);
        Face(Face::full(hi).0 & !Face::full(lo - 1).0)
    }

    #[inline]
    pub fn singleton(v: usize) -> Face {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        Face(1 << (v - 1))
    }

    #[inline]
    pub const fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_VERTICES && self.0 & (1 << (v - 1)) != 0
    }

    #[inline]
    pub fn with(self, v: usize) -> Face {
        Face(self.0 | (1 << (v - 1)))
    }

    #[inline]
    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !(1 << (v - 1)))
    }

    #[inline]
    pub const fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    /// `m(u)`: the largest vertex, or `None` for the empty face.
    #[inline]
    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    #[inline]
    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Vertices in ascending order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.vertices().collect()
    }

    /// Faces obtained by deleting one vertex.
    pub fn boundary(self) -> impl Iterator<Item = Face> {
        self.vertices().map(move |v| self.without(v))
    }

    /// Every subset of `self`, including `self` and the empty face.
    pub fn subsets(self) -> Subsets {
        Subsets { set: self.0, next: Some(0) }
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Vertices {}

/// Submask enumeration in ascending numeric order.
pub struct Subsets {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let cur = self.next?;
        self.next = if cur == self.set {
            None
        } else {
            Some((cur.wrapping_sub(self.set)) & self.set)
        };
        Some(Face(cur))
    }
}

/// Lexicographic comparison for the order `e_1 > e_2 > ... > e_n`:
/// `σ > τ` iff the smallest element of the symmetric difference lies in `σ`.
pub fn lex_compare(sigma: Face, tau: Face) -> Result<Ordering> {
    check_degrees(sigma, tau)?;
    Ok(lex_cmp_unchecked(sigma, tau))
}

#[inline]
pub(crate) fn lex_cmp_unchecked(sigma: Face, tau: Face) -> Ordering {
    let diff = sigma.0 ^ tau.0;
    if diff == 0 {
        return Ordering::Equal;
    }
    let low = diff & diff.wrapping_neg();
    if sigma.0 & low != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Reverse-lexicographic comparison for `e_1 > e_2 > ... > e_n`:
/// `σ > τ` iff the largest element of the symmetric difference lies in `τ`.
pub fn revlex_compare(sigma: Face, tau: Face) -> Result<Ordering> {
    check_degrees(sigma, tau)?;
    // Within one degree this is the reversed numeric mask order.
    Ok(tau.0.cmp(&sigma.0))
}

fn check_degrees(sigma: Face, tau: Face) -> Result<()> {
    if sigma.degree() != tau.degree() {
        return Err(Error::DegreeMismatch { left: sigma.degree(), right: tau.degree() });
    }
    Ok(())
}

/// `σ_(i,d) = {i - d + 1, ..., i}`, the revlex-smallest degree-`d` face with
/// maximum at most `i`.
pub fn top_interval(i: usize, d: usize) -> Option<Face> {
    (d <= i && d >= 1).then(|| Face::interval(i + 1 - d, i))
}

/// Binomial coefficient with `C(a, b) = 0` whenever `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc: u128 = 1;
    for k in 0..b {
        acc = acc * (a - k) as u128 / (k + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// All `d`-subsets of `[n]` in ascending mask (colex) order.
pub fn subsets_of_size(n: usize, d: usize) -> FixedWeight {
    assert!(n <= MAX_VERTICES);
    if d > n {
        return FixedWeight { next: None, limit: 0 };
    }
    let first = if d == 0 { 0 } else { Face::full(d).0 };
    FixedWeight { next: Some(first), limit: Face::full(n).0 }
}

/// Gosper's hack over masks of a fixed popcount.
pub struct FixedWeight {
    next: Option<u64>,
    limit: u64,
}

impl Iterator for FixedWeight {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                // carry out of bit 63: cur was the top mask
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(Face(cur))
    }
}

/// Position of `face` among faces of its degree in ascending mask order,
/// `Σ_k C(b_k, k)` over its 0-based bit positions `b_1 < b_2 < ...`.
pub fn colex_rank(face: Face) -> usize {
    face.vertices()
        .enumerate()
        .map(|(k, v)| binomial(v as i64 - 1, k as i64 + 1) as usize)
        .sum()
}

/// Precomputed `C(a, b)` table for ranking hot loops.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    width: usize,
    table: Vec<usize>,
}

impl BinomialTable {
    pub fn new(n: usize) -> Self {
        let width = n + 2;
        let mut table = vec![0usize; width * width];
        for a in 0..width {
            table[a * width] = 1;
            for b in 1..=a {
                table[a * width + b] = table[(a - 1) * width + b - 1] + table[(a - 1) * width + b];
            }
        }
        BinomialTable { width, table }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        if b >= self.width || a >= self.width {
            return 0;
        }
        self.table[a * self.width + b]
    }

    #[inline]
    pub fn rank(&self, face: Face) -> usize {
        let mut mask = face.0;
        let mut k = 1;
        let mut acc = 0;
        while mask != 0 {
            let bit = mask.trailing_zeros() as usize;
            acc += self.get(bit, k);
            k += 1;
            mask &= mask - 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_lex(a: Face, b: Face) -> Ordering {
        // exponent vectors (x_1, ..., x_n) compared lexicographically
        let ea: Vec<u8> = (1..=8).map(|v| a.contains(v) as u8).collect();
        let eb: Vec<u8> = (1..=8).map(|v| b.contains(v) as u8).collect();
        ea.cmp(&eb)
    }

    fn brute_revlex(a: Face, b: Face) -> Ordering {
        // equal degree: the monomial with the smaller exponent in the last
        // differing variable is larger
        for v in (1..=8).rev() {
            match (a.contains(v), b.contains(v)) {
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }

    #[test]
    fn orders_match_exponent_vector_comparators() {
        for d in 1..=3 {
            let layer: Vec<Face> = subsets_of_size(5, d).collect();
            for &a in &layer {
                for &b in &layer {
                    assert_eq!(lex_compare(a, b).unwrap(), brute_lex(a, b), "{a} {b}");
                    assert_eq!(revlex_compare(a, b).unwrap(), brute_revlex(a, b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn order_examples() {
        let f = Face::of;
        assert_eq!(lex_compare(f(&[1, 2]), f(&[1, 3])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(f(&[1, 12, 13]), f(&[2, 3, 4])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(f(&[2, 5]), f(&[2, 5])).unwrap(), Ordering::Equal);
        assert_eq!(revlex_compare(f(&[1, 2]), f(&[1, 3])).unwrap(), Ordering::Greater);
        assert_eq!(revlex_compare(f(&[1, 4]), f(&[2, 3])).unwrap(), Ordering::Less);
        assert!(matches!(
            lex_compare(f(&[1]), f(&[1, 2])),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(revlex_compare(f(&[1]), f(&[1, 2])).is_err());
    }

    #[test]
    fn revlex_threshold_matches_max_vertex() {
        for n in 1..=7 {
            for d in 1..=n {
                for tau in subsets_of_size(n, d) {
                    for i in d..=n {
                        let sigma = top_interval(i, d).unwrap();
                        let below = revlex_compare(sigma, tau).unwrap() != Ordering::Greater;
                        assert_eq!(tau.max_vertex().unwrap() <= i, below);
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_weight_enumeration_counts_and_ranks() {
        for n in 0..=10 {
            for d in 0..=n {
                let all: Vec<Face> = subsets_of_size(n, d).collect();
                assert_eq!(all.len() as u64, binomial(n as i64, d as i64));
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                let table = BinomialTable::new(n);
                for (k, f) in all.iter().enumerate() {
                    assert_eq!(f.degree(), d);
                    assert_eq!(colex_rank(*f), k);
                    assert_eq!(table.rank(*f), k);
                }
            }
        }
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(64, 64).count(), 1);
        assert_eq!(subsets_of_size(64, 63).count(), 64);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(15, 7), 6435);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn face_basics() {
        let f = Face::of(&[1, 3, 5]);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.to_vec(), vec![1, 3, 5]);
        assert_eq!(f.max_vertex(), Some(5));
        assert_eq!(f.min_vertex(), Some(1));
        assert_eq!(Face::EMPTY.max_vertex(), None);
        assert_eq!(f.subsets().count(), 8);
        assert_eq!(f.boundary().count(), 3);
        assert_eq!(Face::interval(2, 4), Face::of(&[2, 3, 4]));
        assert_eq!(Face::interval(3, 2), Face::EMPTY);
        assert_eq!(top_interval(4, 2), Some(Face::of(&[3, 4])));
        assert_eq!(top_interval(1, 2), None);
        assert_eq!(f.to_string(), "{1,3,5}");
        assert!(Face::from_vertices([0]).is_err());
        assert!(Face::from_vertices([65]).is_err());
        assert_eq!(Face::full(64).degree(), 64);
    }
}
