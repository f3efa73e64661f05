//! Reduced simplicial homology over `GF(p)` and graded Betti numbers of
//! Stanley–Reisner ideals.
//!
//! Two independent routes to `β_{i,i+j}(I_Δ)` live here:
//!
//! * [`hochster_betti`] sums reduced homology of every induced subcomplex,
//!   `β_{i,i+j} = Σ_{|W| = i+j} dim H̃_{j-2}(Δ_W)`; valid for any complex.
//! * [`shifted_betti`] evaluates a closed formula in the `m_{≤k}` counts of
//!   the face ideal; valid only for shifted complexes and independent of the
//!   field.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{binomial, Face};
use crate::field::{FieldMatrix, PrimeField};

/// `dim H̃_k` for `k = -1, 0, ..., dim Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    dims: Vec<usize>,
}

impl HomologyProfile {
    /// `dim H̃_k`, zero outside the stored range.
    pub fn dim(&self, k: isize) -> usize {
        if k < -1 {
            return 0;
        }
        self.dims.get((k + 1) as usize).copied().unwrap_or(0)
    }

    /// Dimensions starting at `k = -1`.
    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    /// Highest degree `k` stored (the complex dimension).
    pub fn top(&self) -> isize {
        self.dims.len() as isize - 2
    }

    /// `Σ_k (-1)^k dim H̃_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(idx, &d)| if idx % 2 == 1 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Graded Betti numbers keyed by `(i, j)`, holding `β_{i,i+j}`. Only
/// nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, value: u64) {
        if value == 0 {
            return;
        }
        *self.entries.entry((i, j)).or_insert(0) += value;
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    /// Nonzero entries `((i, j), β_{i,i+j})` in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Keys present in either table.
    pub fn support_union(&self, other: &BettiTable) -> Vec<(usize, usize)> {
        let mut keys: Vec<_> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    /// First cell where `self` exceeds `other`, if any.
    pub fn first_excess(&self, other: &BettiTable) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .find(|(&(i, j), &v)| v > other.get(i, j))
            .map(|(&k, _)| k)
    }

    /// Rows `i<TAB>j<TAB>beta` sorted by `(j, i)`, nonzero entries only.
    pub fn to_tsv(&self) -> String {
        let mut keys: Vec<_> = self.entries.keys().copied().collect();
        keys.sort_unstable_by_key(|&(i, j)| (j, i));
        let mut out = String::new();
        for (i, j) in keys {
            writeln!(out, "{i}\t{j}\t{}", self.get(i, j)).unwrap();
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<BettiTable> {
        let mut table = BettiTable::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.split('\t').collect();
            let parse = |s: &str| s.trim().parse::<u64>().map_err(|e| Error::Format(format!("{line:?}: {e}")));
            if parts.len() != 3 {
                return Err(Error::Format(format!("expected three columns in {line:?}")));
            }
            table.set(parse(parts[0])? as usize, parse(parts[1])? as usize, parse(parts[2])?);
        }
        Ok(table)
    }
}

/// Entrywise `A ≤ B` over the union of supports, missing entries read as 0.
pub fn betti_leq(a: &BettiTable, b: &BettiTable) -> bool {
    a.first_excess(b).is_none()
}

/// Faces grouped by cardinality, each group ascending by mask.
fn faces_by_degree(faces: &[Face]) -> Vec<Vec<Face>> {
    let top = faces.iter().map(|f| f.degree()).max().unwrap_or(0);
    let mut layers = vec![Vec::new(); top + 1];
    for &f in faces {
        layers[f.degree()].push(f);
    }
    layers
}

/// Matrix of `∂_k : C_k → C_{k-1}` with rows indexed by faces of
/// cardinality `k` and columns by faces of cardinality `k + 1`, both
/// ascending by mask. For `k = 0` the single row is the augmentation.
fn boundary_from_layers(layers: &[Vec<Face>], k: usize, field: PrimeField) -> FieldMatrix {
    let empty = Vec::new();
    let rows = layers.get(k).unwrap_or(&empty);
    let cols = layers.get(k + 1).unwrap_or(&empty);
    let mut m = FieldMatrix::zeros(field, rows.len(), cols.len());
    let minus_one = field.neg(1 % field.p());
    for (c, &sigma) in cols.iter().enumerate() {
        for (pos, v) in sigma.vertices().enumerate() {
            let facet = sigma.without(v);
            let r = rows.binary_search(&facet).expect("face family is not closed");
            m.set(r, c, if pos % 2 == 0 { 1 % field.p() } else { minus_one });
        }
    }
    m
}

/// The boundary map `∂_k` of the augmented chain complex of `Δ`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize, field: PrimeField) -> FieldMatrix {
    boundary_from_layers(&faces_by_degree(complex.faces()), k, field)
}

fn homology_of_faces(faces: &[Face], field: PrimeField) -> HomologyProfile {
    let layers = faces_by_degree(faces);
    // ranks[k] = rank ∂_k for k = 0..=top
    let top = layers.len() - 1;
    let ranks: Vec<usize> = (0..top).map(|k| boundary_from_layers(&layers, k, field).rank()).collect();
    let rank = |k: usize| ranks.get(k).copied().unwrap_or(0);
    let dims = (0..=top)
        .map(|card| {
            // card = k + 1; C_k has dimension |layers[card]|
            let chains = layers[card].len();
            let out = if card == 0 { 0 } else { rank(card - 1) };
            chains - out - rank(card)
        })
        .collect();
    HomologyProfile { dims }
}

/// `dim H̃_k(Δ; GF(p))` via two rank computations per degree.
pub fn reduced_homology_dims(complex: &SimplicialComplex, field: PrimeField) -> HomologyProfile {
    homology_of_faces(complex.faces(), field)
}

/// Hochster's formula: every induced subcomplex contributes its reduced
/// homology to the column `j = k + 2` of row `i = |W| - j`.
pub fn hochster_betti(complex: &SimplicialComplex, field: PrimeField) -> BettiTable {
    let n = complex.n();
    let ground = complex.ground();
    let faces = complex.faces();
    let width = n + 2;
    let subsets: Vec<Face> = ground.subsets().filter(|w| !w.is_empty()).collect();
    let acc = subsets
        .par_iter()
        .fold(
            || vec![0u64; (n + 1) * width],
            |mut acc, &w| {
                let restricted: Vec<Face> = faces.iter().copied().filter(|f| f.is_subset(w)).collect();
                let profile = homology_of_faces(&restricted, field);
                let size = w.degree();
                for (idx, &dim) in profile.as_slice().iter().enumerate() {
                    // idx = k + 1, j = k + 2 = idx + 1
                    let j = idx + 1;
                    if dim > 0 && j <= size {
                        acc[(size - j) * width + j] += dim as u64;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; (n + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut table = BettiTable::new();
    for i in 0..=n {
        for j in 1..width {
            table.set(i, j, acc[i * width + j]);
        }
    }
    table
}

/// Closed-form Betti numbers of a shifted complex from its `m_{≤k}` counts:
///
/// `β_{i,i+j} = m_{≤n}(j) C(n-j, i) - Σ_{k=j}^{n-1} m_{≤k}(j) C(k-j, i-1)
///              - Σ_{k=j}^{n} m_{≤k-1}(j-1) C(k-j, i)`.
pub fn shifted_betti(complex: &SimplicialComplex) -> Result<BettiTable> {
    complex.require_strict()?;
    if !complex.is_shifted() {
        return Err(Error::NotShifted);
    }
    let n = complex.n();
    // m[d][k] = m_{≤k}(I_Δ, d)
    let m: Vec<Vec<i128>> = (0..=n)
        .map(|d| (0..=n).map(|k| complex.m_leq(k, d) as i128).collect())
        .collect();
    let c = |a: usize, b: i64| binomial(a as i64, b) as i128;
    let mut table = BettiTable::new();
    for j in 1..=n {
        for i in 0..=n - j {
            let mut beta = m[j][n] * c(n - j, i as i64);
            for k in j..n {
                beta -= m[j][k] * c(k - j, i as i64 - 1);
            }
            for k in j..=n {
                beta -= m[j - 1][k - 1] * c(k - j, i as i64);
            }
            assert!(beta >= 0, "negative Betti number at ({i}, {j}): {beta}");
            table.set(i, j, beta as u64);
        }
    }
    Ok(table)
}

/// `β_{i,i+j} = Σ_u C(m(u) - deg u, i)` over minimal generators `u` of a
/// squarefree strongly stable ideal. Used as an independent cross-check of
/// [`shifted_betti`].
pub fn squarefree_stable_betti(complex: &SimplicialComplex) -> Result<BettiTable> {
    complex.require_strict()?;
    if !complex.is_shifted() {
        return Err(Error::NotShifted);
    }
    let mut table = BettiTable::new();
    for u in complex.minimal_nonfaces() {
        let j = u.degree();
        let top = u.max_vertex().unwrap() - j;
        for i in 0..=top {
            table.add(i, j, binomial(top as i64, i as i64));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Mode;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn cx(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        let lists: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_facet_lists(n, &lists, Mode::Strict).unwrap()
    }

    fn table(entries: &[((usize, usize), u64)]) -> BettiTable {
        let mut t = BettiTable::new();
        for &((i, j), v) in entries {
            t.set(i, j, v);
        }
        t
    }

    #[test]
    fn boundary_examples() {
        let triangle = cx(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        let d1 = boundary_matrix(&triangle, 1, gf(32003));
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(d1.rank(), 2);
        let point = cx(1, &[&[1]]);
        let d0 = boundary_matrix(&point, 0, gf(2));
        assert_eq!((d0.rows(), d0.cols(), d0.get(0, 0)), (1, 1, 1));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let c = cx(5, &[&[1, 2, 3, 4], &[2, 4, 5], &[1, 5]]);
        let f = gf(32003);
        for k in 0..4 {
            let prod = boundary_matrix(&c, k, f).mul(&boundary_matrix(&c, k + 1, f));
            assert!((0..prod.rows()).all(|r| prod.row(r).iter().all(|&x| x == 0)), "k={k}");
        }
    }

    #[test]
    fn homology_examples() {
        let f = gf(32003);
        let cycle = cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        let h = reduced_homology_dims(&cycle, f);
        assert_eq!((h.dim(-1), h.dim(0), h.dim(1)), (0, 0, 1));
        let two_points = cycle.restriction(Face::of(&[1, 3]));
        assert_eq!(reduced_homology_dims(&two_points, f).dim(0), 1);
        let void = cycle.restriction(Face::EMPTY);
        let h = reduced_homology_dims(&void, f);
        assert_eq!(h.as_slice(), &[1]);
        assert_eq!(h.top(), -1);
    }

    #[test]
    fn projective_plane_sees_the_characteristic() {
        // six-vertex triangulation of RP^2
        let rp2 = cx(
            6,
            &[
                &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
                &[2, 3, 5], &[3, 4, 6], &[2, 4, 5], &[3, 5, 6], &[2, 4, 6],
            ],
        );
        let h2 = reduced_homology_dims(&rp2, gf(2));
        assert_eq!((h2.dim(1), h2.dim(2)), (1, 1));
        let h3 = reduced_homology_dims(&rp2, gf(3));
        assert_eq!((h3.dim(1), h3.dim(2)), (0, 0));
    }

    #[test]
    fn hochster_examples() {
        let f = gf(32003);
        let cycle = cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        // the Koszul complex on two quadrics: β_{0,2} = 2, β_{1,4} = 1
        assert_eq!(hochster_betti(&cycle, f), table(&[((0, 2), 2), ((1, 3), 1)]));
        assert!(hochster_betti(&SimplicialComplex::simplex(4).unwrap(), f).is_empty());
        let path = cx(3, &[&[1, 3], &[2, 3]]);
        assert_eq!(hochster_betti(&path, gf(2)), table(&[((0, 2), 1)]));
    }

    #[test]
    fn relaxed_complexes_pick_up_degree_one_generators() {
        let relaxed = SimplicialComplex::from_facet_lists(3, &[vec![1, 2]], Mode::Relaxed).unwrap();
        // I = (x3): β_{0,1} = 1
        assert_eq!(hochster_betti(&relaxed, gf(2)), table(&[((0, 1), 1)]));
    }

    #[test]
    fn shifted_formula_examples() {
        let principal = cx(3, &[&[1, 3], &[2, 3]]);
        let t = shifted_betti(&principal).unwrap();
        assert_eq!(t, table(&[((0, 2), 1)]));
        assert_eq!(t.get(1, 2), 0);
        let two_gens = cx(4, &[&[1, 4], &[2, 3, 4]]);
        let t = shifted_betti(&two_gens).unwrap();
        assert_eq!(t, table(&[((0, 2), 2), ((1, 2), 1)]));
        assert_eq!(t.get(2, 2), 0);
        assert_eq!(squarefree_stable_betti(&two_gens).unwrap(), t);
        assert!(shifted_betti(&SimplicialComplex::simplex(5).unwrap()).unwrap().is_empty());
        let cycle = cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert_eq!(shifted_betti(&cycle).unwrap_err(), Error::NotShifted);
    }

    #[test]
    fn leq_and_tsv() {
        let a = table(&[((0, 2), 1)]);
        let b = table(&[((0, 2), 2), ((1, 2), 1)]);
        assert!(betti_leq(&a, &a));
        assert!(betti_leq(&BettiTable::new(), &b));
        assert!(betti_leq(&a, &b));
        assert!(!betti_leq(&b, &a));
        assert_eq!(b.first_excess(&a), Some((0, 2)));
        let tsv = table(&[((1, 2), 4), ((0, 3), 5), ((0, 2), 3)]).to_tsv();
        assert_eq!(tsv, "0\t2\t3\n1\t2\t4\n0\t3\t5\n");
        assert_eq!(BettiTable::from_tsv(&tsv).unwrap(), table(&[((1, 2), 4), ((0, 3), 5), ((0, 2), 3)]));
        assert!(BettiTable::from_tsv("1\t2").is_err());
    }
}
