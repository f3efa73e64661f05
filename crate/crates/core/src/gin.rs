//! Exterior algebraic shifting through the generic initial ideal of the
//! exterior face ideal `J_Δ`, computed degree by degree with exact linear
//! algebra over `GF(p)`.
//!
//! For a coordinate change `φ` the degree-`d` slice `I_d` is mapped to the
//! row space of a matrix whose columns are the degree-`d` monomials in
//! descending revlex order (ascending mask order). A monomial lies in the
//! initial ideal exactly when its column is a pivot of the row echelon form,
//! so for generic `φ` the pivot columns are `Gin(J_Δ)_d`.
//!
//! Genericity is approximated: `φ` is drawn uniformly over `GF(p)`, and a
//! result is accepted only when two independent draws agree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Mode, SimplicialComplex};
use crate::error::{Error, Result};
use crate::face::{subsets_of_size, top_interval, BinomialTable, Face};
use crate::field::{FieldMatrix, PrimeField, DEFAULT_PRIME};

/// An invertible `n × n` matrix over `GF(p)` with the seed that drew it.
/// Row `k` holds the coordinates of `φ(e_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericMatrix {
    seed: u64,
    matrix: FieldMatrix,
}

impl GenericMatrix {
    /// Wraps an explicit matrix; fails when it is singular.
    pub fn from_matrix(matrix: FieldMatrix, seed: u64) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.determinant() == 0 {
            return Err(Error::Singular);
        }
        Ok(GenericMatrix { seed, matrix })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        GenericMatrix { seed: 0, matrix: FieldMatrix::identity(field, n) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    /// `(φ^{-1})^T`, the coordinate change acting on the orthogonal
    /// complement of every `φ`-image.
    pub fn dual(&self) -> GenericMatrix {
        let inv = self.matrix.inverse().expect("generic matrix is invertible");
        GenericMatrix { seed: self.seed, matrix: inv.transpose() }
    }
}

/// Uniform entries over `GF(p)`, redrawn until invertible.
pub fn random_gl(n: usize, field: PrimeField, seed: u64) -> GenericMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let data: Vec<u32> = (0..n * n).map(|_| rng.random_range(0..field.p())).collect();
        let matrix = FieldMatrix::from_raw(field, n, n, data);
        if matrix.determinant() != 0 {
            return GenericMatrix { seed, matrix };
        }
    }
}

/// Index tables for the monomial basis of `∧^k V`, `k = 0..=n`.
struct WedgeBasis {
    layers: Vec<Vec<Face>>,
    ranks: BinomialTable,
}

impl WedgeBasis {
    fn new(n: usize, top: usize) -> Self {
        WedgeBasis {
            layers: (0..=top).map(|k| subsets_of_size(n, k).collect()).collect(),
            ranks: BinomialTable::new(n),
        }
    }

    /// Coordinates of `φ(e_{v_1}) ∧ ... ∧ φ(e_{v_d})` in the degree-`d`
    /// monomial basis, ascending by mask. Entry `τ` is the minor of `φ` on
    /// rows `σ` and columns `τ`.
    fn image_row(&self, phi: &FieldMatrix, sigma: Face) -> Vec<u32> {
        let field = phi.field();
        let p = field.p() as u64;
        let n = phi.cols();
        let mut current: Vec<u32> = vec![1 % field.p()];
        for (k, v) in sigma.vertices().enumerate() {
            let src = &self.layers[k];
            let mut next = vec![0u64; self.layers[k + 1].len()];
            let row = phi.row(v - 1);
            for (idx, &coef) in current.iter().enumerate() {
                if coef == 0 {
                    continue;
                }
                let s = src[idx];
                for l in 1..=n {
                    let entry = row[l - 1];
                    if entry == 0 || s.contains(l) {
                        continue;
                    }
                    // e_S ∧ e_l: move e_l left past the members of S above l
                    let above = (s.mask() >> l).count_ones();
                    let target = self.ranks.rank(s.with(l));
                    let term = coef as u64 * entry as u64 % p;
                    let slot = &mut next[target];
                    *slot = (*slot + if above % 2 == 0 { term } else { p - term }) % p;
                }
            }
            current = next.into_iter().map(|x| x as u32).collect();
        }
        current
    }
}

/// `M(I, d)` together with its row and column labels.
#[derive(Clone, Debug)]
pub struct ImageMatrix {
    pub matrix: FieldMatrix,
    /// Slice monomials `σ_r`, one per row.
    pub rows: Vec<Face>,
    /// All degree-`d` monomials in descending revlex order.
    pub columns: Vec<Face>,
}

/// Rows are the coordinates of `φ(e_σ)` for the given monomials.
fn wedge_matrix(phi: &GenericMatrix, monomials: &[Face], d: usize) -> ImageMatrix {
    let n = phi.n();
    let basis = WedgeBasis::new(n, d);
    let columns = basis.layers[d].clone();
    let width = columns.len();
    let rows: Vec<Vec<u32>> = monomials
        .par_iter()
        .map(|&sigma| basis.image_row(phi.matrix(), sigma))
        .collect();
    let mut data = Vec::with_capacity(rows.len() * width);
    for r in rows {
        data.extend_from_slice(&r);
    }
    ImageMatrix {
        matrix: FieldMatrix::from_raw(phi.field(), monomials.len(), width, data),
        rows: monomials.to_vec(),
        columns,
    }
}

/// `M(J_Δ, d)` for the coordinate change `φ`.
pub fn phi_image_matrix(complex: &SimplicialComplex, d: usize, phi: &GenericMatrix) -> ImageMatrix {
    assert_eq!(complex.n(), phi.n(), "coordinate change has the wrong size");
    let slice = complex.ideal_degree_slice(d);
    wedge_matrix(phi, &slice.monomials, d)
}

/// Which elimination produced a degree's pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// `I_d = 0`.
    Empty,
    /// `I_d` is the whole degree.
    Full,
    /// Row reduction of `φ(I_d)`.
    Primal,
    /// Row reduction of the orthogonal complement, columns reversed.
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// `dim I_d`.
    pub ideal_dim: usize,
    /// `C(n, d)`.
    pub columns: usize,
    /// Rows actually eliminated.
    pub rows_reduced: usize,
    pub route: Route,
    /// Pivot monomials, i.e. `Gin(J_Δ)_d`, as sorted vertex lists.
    pub pivots: Vec<Vec<usize>>,
}

/// Pivot monomials of `M(J_Δ, d)` by reducing `φ(I_d)` directly.
pub fn gin_pivots_primal(complex: &SimplicialComplex, d: usize, phi: &GenericMatrix) -> Vec<Face> {
    let m = phi_image_matrix(complex, d, phi);
    m.matrix.pivot_columns().into_iter().map(|c| m.columns[c]).collect()
}

/// The same pivots, read off the complement: the row space of `φ(I_d)`
/// is orthogonal to the span of `(φ^{-1})^T(e_τ)` over faces `τ`, so its
/// greedy column basis is the complement of the greedy basis of that span
/// taken from the other end.
pub fn gin_pivots_dual(complex: &SimplicialComplex, d: usize, phi: &GenericMatrix) -> Vec<Face> {
    let faces: Vec<Face> = complex
        .faces_of_degree(d)
        .collect();
    let psi = phi.dual();
    let m = wedge_matrix(&psi, &faces, d);
    let width = m.columns.len();
    let reversed: Vec<usize> = (0..width).rev().collect();
    let mut non_pivot = vec![false; width];
    for c in m.matrix.select_columns(&reversed).pivot_columns() {
        non_pivot[width - 1 - c] = true;
    }
    (0..width).filter(|&c| !non_pivot[c]).map(|c| m.columns[c]).collect()
}

fn gin_degree(complex: &SimplicialComplex, d: usize, phi: &GenericMatrix) -> (Vec<Face>, DegreeReport) {
    let n = complex.n();
    let faces = complex.faces_of_degree(d).count();
    let columns = crate::face::binomial(n as i64, d as i64) as usize;
    let ideal_dim = columns - faces;
    let (route, pivots, rows_reduced) = if ideal_dim == 0 {
        (Route::Empty, Vec::new(), 0)
    } else if faces == 0 {
        (Route::Full, subsets_of_size(n, d).collect(), 0)
    } else if ideal_dim <= faces {
        (Route::Primal, gin_pivots_primal(complex, d, phi), ideal_dim)
    } else {
        (Route::Dual, gin_pivots_dual(complex, d, phi), faces)
    };
    let report = DegreeReport {
        degree: d,
        ideal_dim,
        columns,
        rows_reduced,
        route,
        pivots: pivots.iter().map(|f| f.to_vec()).collect(),
    };
    (pivots, report)
}

/// Pivot sets for every degree under one coordinate change, and the complex
/// they cut out. Fails with `NotDownwardClosed` when the pivots do not form
/// an ideal, which only happens for a non-generic draw.
pub fn gin_with_phi(
    complex: &SimplicialComplex,
    phi: &GenericMatrix,
) -> Result<(SimplicialComplex, Vec<DegreeReport>)> {
    complex.require_strict()?;
    let n = complex.n();
    assert_eq!(n, phi.n(), "coordinate change has the wrong size");
    let mut faces = Vec::new();
    let mut reports = Vec::new();
    for d in 0..=n {
        let (pivots, report) = gin_degree(complex, d, phi);
        let mut pivots = pivots;
        pivots.sort_unstable();
        faces.extend(subsets_of_size(n, d).filter(|f| pivots.binary_search(f).is_err()));
        if report.ideal_dim > 0 {
            reports.push(report);
        }
    }
    let shifted = SimplicialComplex::from_faces(n, faces, Mode::Strict)?;
    Ok((shifted, reports))
}

/// Settings for [`gin`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GinOptions {
    pub prime: u32,
    pub seed: u64,
    /// Extra draws allowed after the first two disagree.
    pub retries: usize,
}

impl Default for GinOptions {
    fn default() -> Self {
        GinOptions { prime: DEFAULT_PRIME, seed: 7, retries: 3 }
    }
}

#[derive(Clone, Debug)]
pub struct GinOutcome {
    /// `Δ^e`.
    pub complex: SimplicialComplex,
    pub reports: Vec<DegreeReport>,
    /// Seeds of the two agreeing draws.
    pub seeds: (u64, u64),
    /// Total draws made.
    pub draws: usize,
}

/// Seed of the `k`-th draw derived from a base seed.
pub fn draw_seed(base: u64, k: usize) -> u64 {
    if k == 0 {
        return base;
    }
    // splitmix64 finaliser
    let mut z = base.wrapping_add((k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `Δ^e`, certified by agreement of two independent coordinate changes.
///
/// Each draw must also yield a shifted complex with the f-vector of `Δ`;
/// draws that fail this are discarded.
pub fn gin(complex: &SimplicialComplex, options: GinOptions) -> Result<GinOutcome> {
    complex.require_strict()?;
    let field = PrimeField::new(options.prime)?;
    let f = complex.f_vector();
    let attempts = 2 + options.retries;
    let mut accepted: Vec<(u64, SimplicialComplex, Vec<DegreeReport>)> = Vec::new();
    for k in 0..attempts {
        let seed = draw_seed(options.seed, k);
        let phi = random_gl(complex.n(), field, seed);
        let Ok((candidate, reports)) = gin_with_phi(complex, &phi) else {
            continue;
        };
        if !candidate.is_shifted() || candidate.f_vector() != f {
            continue;
        }
        if let Some((first, _, _)) = accepted.iter().find(|(_, c, _)| *c == candidate) {
            return Ok(GinOutcome { complex: candidate, reports, seeds: (*first, seed), draws: k + 1 });
        }
        accepted.push((seed, candidate, reports));
    }
    Err(Error::SeedDisagreement { attempts })
}

/// `rank M_{σ(i,d)}(J_Δ, d)`: the rank of the columns whose monomials have
/// largest vertex at most `i`. Those are exactly the first `C(i, d)`
/// columns in descending revlex order.
pub fn m_leq_via_rank(complex: &SimplicialComplex, i: usize, d: usize, phi: &GenericMatrix) -> usize {
    let Some(threshold) = top_interval(i.min(complex.n()), d) else {
        return 0;
    };
    let m = phi_image_matrix(complex, d, phi);
    let width = m.columns.partition_point(|c| c.mask() <= threshold.mask());
    m.matrix.rank_of_prefix(width)
}

/// [`m_leq_via_rank`] for `i = 1..=n` from one elimination: the number of
/// pivots among the first `C(i, d)` columns.
pub fn m_leq_profile_from_pivots(complex: &SimplicialComplex, d: usize, phi: &GenericMatrix) -> Vec<usize> {
    let pivots = gin_pivots_primal(complex, d, phi);
    (1..=complex.n())
        .map(|i| pivots.iter().filter(|p| p.max_vertex().is_some_and(|m| m <= i)).count())
        .collect()
}
