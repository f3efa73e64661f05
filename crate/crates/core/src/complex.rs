//! Simplicial complexes on a labelled ground set, their face ideals, and
//! the counting statistics used by the Betti number formulas.

use std::fmt;
use std::hash::{Hash, Hasher};

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::{binomial, subsets_of_size, Face, MAX_VERTICES};

/// Whether every vertex of the ground set must be a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Strict,
    Relaxed,
}

/// A downward-closed family of faces of a ground set `W ⊆ [n]`, always
/// containing the empty face.
///
/// Faces are kept both as a mask-sorted vector (the canonical encoding used
/// for equality, hashing and iteration) and as a hash set for membership.
#[derive(Clone)]
pub struct SimplicialComplex {
    n: usize,
    ground: Face,
    mode: Mode,
    faces: Vec<Face>,
    index: FxHashSet<Face>,
}

impl SimplicialComplex {
    /// Downward closure of `facets` on `[n]`.
    pub fn from_facets(n: usize, facets: &[Face], mode: Mode) -> Result<Self> {
        check_ground(n)?;
        let ground = Face::full(n);
        let mut index = FxHashSet::default();
        index.insert(Face::EMPTY);
        let mut stack = Vec::new();
        for &facet in facets {
            if !facet.is_subset(ground) {
                let v = facet.difference(ground).min_vertex().unwrap();
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if index.insert(facet) {
                stack.push(facet);
            }
            while let Some(face) = stack.pop() {
                for sub in face.boundary() {
                    if index.insert(sub) {
                        stack.push(sub);
                    }
                }
            }
        }
        Self::from_index(n, ground, mode, index)
    }

    /// Convenience constructor from 1-based vertex lists.
    pub fn from_facet_lists(n: usize, facets: &[Vec<usize>], mode: Mode) -> Result<Self> {
        check_ground(n)?;
        let facets = facets
            .iter()
            .map(|f| {
                if let Some(&v) = f.iter().find(|&&v| v == 0 || v > n) {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                Face::from_vertices(f.iter().copied())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(n, &facets, mode)
    }

    /// A complex from an explicit face family, which must already be
    /// downward closed. The empty face is added if absent.
    pub fn from_faces<I: IntoIterator<Item = Face>>(n: usize, faces: I, mode: Mode) -> Result<Self> {
        check_ground(n)?;
        let ground = Face::full(n);
        let mut index: FxHashSet<Face> = faces.into_iter().collect();
        index.insert(Face::EMPTY);
        for &face in &index {
            if !face.is_subset(ground) {
                let v = face.difference(ground).min_vertex().unwrap();
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if let Some(sub) = face.boundary().find(|s| !index.contains(s)) {
                return Err(Error::NotDownwardClosed { face: sub.to_string() });
            }
        }
        Self::from_index(n, ground, mode, index)
    }

    /// The complex whose non-faces are exactly the subsets of `[n]` that
    /// contain some generator, i.e. `J_Δ` is generated by `generators`.
    pub fn from_nonface_generators(n: usize, generators: &[Face], mode: Mode) -> Result<Self> {
        check_ground(n)?;
        if n > 30 {
            return Err(Error::InvalidArgument(format!(
                "ideal-driven construction enumerates all subsets; n = {n} is too large"
            )));
        }
        let ground = Face::full(n);
        let mut in_ideal = vec![false; 1usize << n];
        for g in generators {
            if !g.is_subset(ground) {
                let v = g.difference(ground).min_vertex().unwrap();
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            in_ideal[g.mask() as usize] = true;
        }
        // ascending masks visit every subset before its supersets
        for mask in 0..(1usize << n) {
            if in_ideal[mask] {
                for v in 0..n {
                    in_ideal[mask | (1 << v)] = true;
                }
            }
        }
        let faces: Vec<Face> = (0..(1u64 << n))
            .filter(|&m| !in_ideal[m as usize])
            .map(Face::from_mask)
            .collect();
        if faces.is_empty() {
            return Err(Error::InvalidArgument("the empty face lies in the ideal".into()));
        }
        let index = faces.iter().copied().collect();
        let mut out = SimplicialComplex { n, ground, mode, faces, index };
        out.faces.sort_unstable();
        out.check_mode()?;
        Ok(out)
    }

    fn from_index(n: usize, ground: Face, mode: Mode, index: FxHashSet<Face>) -> Result<Self> {
        let mut faces: Vec<Face> = index.iter().copied().collect();
        faces.sort_unstable();
        let out = SimplicialComplex { n, ground, mode, faces, index };
        out.check_mode()?;
        Ok(out)
    }

    /// Trusted constructor for operations that preserve closure.
    pub(crate) fn from_sorted_unchecked(n: usize, ground: Face, mode: Mode, faces: Vec<Face>) -> Self {
        debug_assert!(faces.windows(2).all(|w| w[0] < w[1]));
        let index = faces.iter().copied().collect();
        let out = SimplicialComplex { n, ground, mode, faces, index };
        debug_assert!(out.is_downward_closed());
        out
    }

    fn check_mode(&self) -> Result<()> {
        if self.mode == Mode::Strict {
            if let Some(v) = self.ground.vertices().find(|&v| !self.contains(Face::singleton(v))) {
                return Err(Error::MissingSingleton(v));
            }
        }
        Ok(())
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::from_facets(n, &[Face::full(n)], Mode::Strict)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The vertex set this complex lives on; `[n]` except for restrictions.
    pub fn ground(&self) -> Face {
        self.ground
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_strict(&self) -> bool {
        self.mode == Mode::Strict
    }

    pub(crate) fn require_strict(&self) -> Result<()> {
        if self.is_strict() {
            Ok(())
        } else {
            Err(Error::RelaxedComplex)
        }
    }

    /// All faces, including the empty face, in ascending mask order.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Number of faces including the empty face.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    /// A complex always contains the empty face.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, face: Face) -> bool {
        self.index.contains(&face)
    }

    /// Faces of cardinality `d`, ascending by mask.
    pub fn faces_of_degree(&self, d: usize) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().copied().filter(move |f| f.degree() == d)
    }

    /// Largest face cardinality minus one; `-1` for the complex `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces.iter().map(|f| f.degree() as isize).max().unwrap_or(0) - 1
    }

    /// Vertices that actually occur in some face.
    pub fn vertex_support(&self) -> Face {
        self.faces.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0usize; self.n + 1];
        for f in &self.faces {
            if f.degree() > 0 {
                counts[f.degree() - 1] += 1;
            }
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        FVector(counts)
    }

    /// Inclusion-maximal faces, ascending by mask.
    pub fn facets(&self) -> Vec<Face> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| {
                self.ground
                    .difference(f)
                    .vertices()
                    .all(|v| !self.contains(f.with(v)))
            })
            .collect()
    }

    /// The induced subcomplex `Δ_W`. Labels are kept and the result lives on
    /// ground set `W ∩ ground` in relaxed mode.
    pub fn restriction(&self, w: Face) -> SimplicialComplex {
        let w = w.intersection(self.ground);
        let faces: Vec<Face> = self.faces.iter().copied().filter(|f| f.is_subset(w)).collect();
        SimplicialComplex::from_sorted_unchecked(self.n, w, Mode::Relaxed, faces)
    }

    /// Whether `(σ ∖ {i}) ∪ {j}` is a face for every face `σ`, every `i ∈ σ`
    /// and every `j > i` in the ground set with `j ∉ σ`.
    pub fn is_shifted(&self) -> bool {
        let ground = self.ground.mask();
        self.faces.iter().all(|&sigma| {
            sigma.vertices().all(|i| {
                // ground vertices above i that are missing from σ
                let above = ground & !sigma.mask() & !Face::full(i).mask();
                Face::from_mask(above)
                    .vertices()
                    .all(|j| self.contains(sigma.without(i).with(j)))
            })
        })
    }

    /// Inclusion-minimal non-faces, sorted by degree then mask. These
    /// generate both `I_Δ` and `J_Δ`.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let mut found = FxHashSet::default();
        for &tau in &self.faces {
            for v in self.ground.difference(tau).vertices() {
                let sigma = tau.with(v);
                if !self.contains(sigma) && sigma.boundary().all(|s| self.contains(s)) {
                    found.insert(sigma);
                }
            }
        }
        let mut out: Vec<Face> = found.into_iter().collect();
        out.sort_unstable_by_key(|f| (f.degree(), f.mask()));
        out
    }

    /// Non-faces of cardinality `d` inside the ground set: a basis of the
    /// degree-`d` component of the face ideal.
    pub fn ideal_degree_slice(&self, d: usize) -> DegreeSlice {
        let monomials = if self.ground == Face::full(self.n) {
            subsets_of_size(self.n, d).filter(|f| !self.contains(*f)).collect()
        } else {
            subsets_of_size(self.n, d)
                .filter(|f| f.is_subset(self.ground) && !self.contains(*f))
                .collect()
        };
        DegreeSlice { degree: d, monomials }
    }

    /// Every degree slice of the face ideal, degrees `0..=n`.
    pub fn ideal_slices(&self) -> IdealSlices {
        IdealSlices {
            n: self.n,
            slices: (0..=self.n).map(|d| self.ideal_degree_slice(d)).collect(),
        }
    }

    /// Number of non-faces of cardinality `d` whose largest vertex is at
    /// most `i`, i.e. `m_{≤i}` of the face ideal in degree `d`.
    pub fn m_leq(&self, i: usize, d: usize) -> usize {
        if d == 0 || i < d {
            return 0;
        }
        let low = Face::full(i.min(self.n)).intersection(self.ground);
        let total = binomial(low.degree() as i64, d as i64) as usize;
        let faces = self
            .faces
            .iter()
            .filter(|f| f.degree() == d && f.is_subset(low))
            .count();
        total - faces
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.faces.iter().all(|f| other.contains(*f))
    }

    /// Full scan of the closure property.
    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|f| f.boundary().all(|s| self.contains(s)))
    }

    /// Facets as sorted 1-based vertex lists.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets().into_iter().map(Face::to_vec).collect()
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::GroundSetTooLarge(n));
    }
    Ok(())
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ground == other.ground && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

impl Hash for SimplicialComplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.ground.hash(state);
        self.faces.hash(state);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("n", &self.n)
            .field("mode", &self.mode)
            .field("facets", &self.facets())
            .finish()
    }
}

/// `(f_0, f_1, ...)`, where `f_i` counts faces with `i + 1` vertices.
/// Trailing zeros are dropped; `get` reads past the end as zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

/// The degree-`d` monomials of a squarefree monomial ideal, ascending by
/// mask (descending in revlex).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSlice {
    pub degree: usize,
    pub monomials: Vec<Face>,
}

impl DegreeSlice {
    pub fn new(degree: usize, mut monomials: Vec<Face>) -> Self {
        assert!(monomials.iter().all(|m| m.degree() == degree), "slice member of wrong degree");
        monomials.sort_unstable();
        monomials.dedup();
        DegreeSlice { degree, monomials }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.monomials.binary_search(&face).is_ok()
    }

    /// Members whose largest vertex is at most `i`.
    pub fn m_leq(&self, i: usize) -> usize {
        if i < self.degree || self.degree == 0 {
            return 0;
        }
        // masks below 2^i are exactly the faces inside [i]
        let bound = if i >= 64 { u64::MAX } else { (1u64 << i) - 1 };
        self.monomials.partition_point(|m| m.mask() <= bound)
    }
}

/// `m_{≤i}(I, d)` over a slice family.
pub fn m_leq(slices: &IdealSlices, i: usize, d: usize) -> usize {
    slices.slice(d).map_or(0, |s| s.m_leq(i))
}

/// All degree slices of a squarefree monomial ideal on `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealSlices {
    pub n: usize,
    pub slices: Vec<DegreeSlice>,
}

impl IdealSlices {
    pub fn slice(&self, d: usize) -> Option<&DegreeSlice> {
        self.slices.get(d)
    }

    pub fn contains(&self, face: Face) -> bool {
        self.slices.get(face.degree()).is_some_and(|s| s.contains(face))
    }

    pub fn m_leq(&self, i: usize, d: usize) -> usize {
        m_leq(self, i, d)
    }

    pub fn dim(&self) -> usize {
        self.slices.iter().map(DegreeSlice::len).sum()
    }
}
