//! Simplicial complexes on `{x1, ..., xn}`, the Stanley–Reisner correspondence,
//! Alexander duality, reduced homology over a prime field and Reisner's criterion.
//!
//! A complex is stored by its facets. Two degenerate complexes are allowed:
//! the void complex (no faces at all, empty facet list) and the irrelevant
//! complex `{∅}` (a single empty facet).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::decomposition::{minimal_transversals, squarefree_minimal_primes};
use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{Monomial, MonomialIdeal, Ring, VarSet, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VarSet>,
}

fn facet_order(a: &VarSet, b: &VarSet) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.lex_cmp(*b))
}

/// Inclusion-maximal members, deduplicated, in canonical facet order.
fn maximal_sets(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by(facet_order);
    sets.dedup();
    let mut kept: Vec<VarSet> = Vec::with_capacity(sets.len());
    // larger sets come first, so any superset is already kept
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept
}

impl SimplicialComplex {
    /// The complex generated by `faces`; non-maximal entries are dropped.
    pub fn from_facets(n: usize, faces: impl IntoIterator<Item = VarSet>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        let faces: Vec<VarSet> = faces.into_iter().collect();
        if let Some(f) = faces.iter().find(|f| !f.is_subset(VarSet::full(n))) {
            return Err(Error::OutOfRange(format!("face {f:?} on {n} vertices")));
        }
        Ok(Self::from_facets_raw(n, faces))
    }

    pub(crate) fn from_facets_raw(n: usize, faces: Vec<VarSet>) -> Self {
        SimplicialComplex {
            n,
            facets: maximal_sets(faces),
        }
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// `{∅}`.
    pub fn irrelevant(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VarSet::EMPTY],
        }
    }

    /// The full simplex on all `n` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![VarSet::full(n)],
        }
    }

    pub fn nvertices(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VarSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [VarSet::EMPTY]
    }

    fn require_nonvoid(&self) -> Result<()> {
        if self.is_void() {
            return Err(Error::Degenerate("the void complex"));
        }
        Ok(())
    }

    /// `max |F| - 1`; `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.len() as i32 - 1).max()
    }

    pub fn contains_face(&self, face: VarSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// All faces, the empty face included, ordered by size then bit pattern.
    pub fn faces(&self) -> Vec<VarSet> {
        let mut seen: HashSet<VarSet> = HashSet::new();
        for f in &self.facets {
            seen.extend(f.subsets());
        }
        let mut faces: Vec<VarSet> = seen.into_iter().collect();
        faces.sort_by_key(|f| (f.len(), f.0));
        faces
    }

    /// Faces grouped by dimension; index `k` holds the faces of dimension `k - 1`.
    pub fn faces_by_dim(&self) -> Vec<Vec<VarSet>> {
        group_by_dim(self.faces())
    }

    /// `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    /// The pure `i`-skeleton: the complex generated by all faces of dimension `i`.
    pub fn pure_skeleton(&self, i: i32) -> Result<SimplicialComplex> {
        let dim = self.dim().ok_or(Error::Degenerate("the void complex"))?;
        if i < -1 || i > dim {
            return Err(Error::OutOfRange(format!("skeleton dimension {i} (complex has dimension {dim})")));
        }
        let size = (i + 1) as usize;
        let faces: Vec<VarSet> = self
            .faces()
            .into_iter()
            .filter(|f| f.len() == size)
            .collect();
        Ok(Self::from_facets_raw(self.n, faces))
    }

    /// `Δ|_S = {F ∈ Δ : F ⊆ S}`.
    pub fn induced(&self, subset: VarSet) -> SimplicialComplex {
        let faces = self.facets.iter().map(|f| f.intersection(subset)).collect();
        Self::from_facets_raw(self.n, faces)
    }

    /// `lk(F) = {G ∈ Δ : G ∩ F = ∅, G ∪ F ∈ Δ}`.
    pub fn link(&self, face: VarSet) -> Result<SimplicialComplex> {
        if !self.contains_face(face) {
            return Err(Error::NotAFace);
        }
        let faces = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect();
        Ok(Self::from_facets_raw(self.n, faces))
    }

    /// Facets connected through chains of facets with nonempty pairwise intersections.
    pub fn is_connected(&self) -> Result<bool> {
        self.require_nonvoid()?;
        let k = self.facets.len();
        let mut reached = vec![false; k];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(a) = stack.pop() {
            for b in 0..k {
                if !reached[b] && !self.facets[a].intersection(self.facets[b]).is_empty() {
                    reached[b] = true;
                    stack.push(b);
                }
            }
        }
        Ok(reached.into_iter().all(|r| r))
    }

    /// Inclusion-minimal non-faces (the supports of `G(I_Δ)`).
    pub fn minimal_nonfaces(&self) -> Vec<VarSet> {
        let full = VarSet::full(self.n);
        let complements: Vec<VarSet> = self.facets.iter().map(|f| full.difference(*f)).collect();
        let mut out = minimal_transversals(&complements);
        out.sort_by_key(|f| (f.len(), f.0));
        out
    }

    /// `Δ^∨ = {V ∖ A : A ∉ Δ}`.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let full = VarSet::full(self.n);
        let faces = self
            .minimal_nonfaces()
            .into_iter()
            .map(|a| full.difference(a))
            .collect();
        Self::from_facets_raw(self.n, faces)
    }

    /// A cone: some vertex lies in every facet.
    pub(crate) fn is_cone(&self) -> bool {
        !self.is_void()
            && !self
                .facets
                .iter()
                .fold(VarSet::full(self.n), |acc, f| acc.intersection(*f))
                .is_empty()
    }

    pub fn reduced_homology(&self, characteristic: u32) -> Result<HomologyProfile> {
        self.require_nonvoid()?;
        Ok(self.homology_unchecked(characteristic))
    }

    pub(crate) fn homology_unchecked(&self, characteristic: u32) -> HomologyProfile {
        let dim = self.dim().unwrap_or(-1);
        if self.is_void() || self.is_cone() {
            return HomologyProfile {
                ranks: vec![0; (dim + 2) as usize],
            };
        }
        HomologyProfile {
            ranks: homology_of_faces(&self.faces_by_dim(), characteristic),
        }
    }

    /// Euler characteristic `Σ (-1)^k f_k` over all faces including `∅` (index `-1`).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

pub(crate) fn group_by_dim(faces: Vec<VarSet>) -> Vec<Vec<VarSet>> {
    let mut out: Vec<Vec<VarSet>> = Vec::new();
    for f in faces {
        let k = f.len();
        if out.len() <= k {
            out.resize_with(k + 1, Vec::new);
        }
        out[k].push(f);
    }
    for bucket in &mut out {
        bucket.sort_by_key(|f| f.0);
    }
    out
}

/// Reduced homology ranks from faces grouped by size (`by_size[k]` = faces with `k` vertices).
pub(crate) fn homology_of_faces(by_size: &[Vec<VarSet>], characteristic: u32) -> Vec<usize> {
    // boundary_rank[k] = rank of ∂ : C_{k-1} -> C_{k-2}, faces of size k to size k-1
    let top = by_size.len();
    let mut boundary_rank = vec![0usize; top + 1];
    for k in 1..top {
        boundary_rank[k] = boundary_matrix_rank(&by_size[k], &by_size[k - 1], characteristic);
    }
    (0..top)
        .map(|k| by_size[k].len() - boundary_rank[k] - boundary_rank[k + 1])
        .collect()
}

fn boundary_matrix_rank(faces: &[VarSet], lower: &[VarSet], characteristic: u32) -> usize {
    if faces.is_empty() || lower.is_empty() {
        return 0;
    }
    let index: HashMap<VarSet, usize> = lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let rows: Vec<Vec<(usize, i64)>> = faces
        .iter()
        .map(|f| {
            let mut row: Vec<(usize, i64)> = f
                .iter()
                .enumerate()
                .map(|(t, v)| (index[&f.remove(v)], if t % 2 == 0 { 1 } else { -1 }))
                .collect();
            row.sort_unstable();
            row
        })
        .collect();
    linalg::sparse_rank(&rows, lower.len(), characteristic)
}

/// Ranks of `H̃_i(Δ; K)` for `i = -1, 0, ..., dim Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    ranks: Vec<usize>,
}

impl HomologyProfile {
    pub fn rank(&self, i: i32) -> usize {
        if i < -1 {
            return 0;
        }
        self.ranks.get((i + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// Nonzero ranks keyed by dimension.
    pub fn nonzero(&self) -> BTreeMap<i32, usize> {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(k, &r)| (k as i32 - 1, r))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 1 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.nonzero().serialize(s)
    }
}

fn require_squarefree(ideal: &MonomialIdeal) -> Result<()> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// The complex `Δ` with `I = I_Δ`: facets are complements of the minimal primes.
pub fn complex_of_ideal(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    require_squarefree(ideal)?;
    if ideal.is_unit() {
        return Err(Error::Degenerate("the unit ideal"));
    }
    let full = ideal.ring().all_vars();
    let facets = squarefree_minimal_primes(ideal)
        .into_iter()
        .map(|p| full.difference(p.vars()))
        .collect();
    Ok(SimplicialComplex::from_facets_raw(ideal.nvars(), facets))
}

/// `I_Δ`, generated by the minimal non-faces.
pub fn ideal_of_complex(complex: &SimplicialComplex, ring: &Arc<Ring>) -> Result<MonomialIdeal> {
    if ring.nvars() != complex.nvertices() {
        return Err(Error::AmbientMismatch(ring.nvars(), complex.nvertices()));
    }
    let n = ring.nvars();
    let gens = complex
        .minimal_nonfaces()
        .into_iter()
        .map(|f| Monomial::from_varset(n, f))
        .collect();
    Ok(MonomialIdeal::from_minimal_unchecked(ring.clone(), gens))
}

/// `I^∨`, generated by `x_P` for the minimal primes `P` of `I`.
pub fn alexander_dual_ideal(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    require_squarefree(ideal)?;
    ideal.require_proper_nonzero()?;
    let n = ideal.nvars();
    let gens = squarefree_minimal_primes(ideal)
        .into_iter()
        .map(|p| Monomial::from_varset(n, p.vars()))
        .collect();
    Ok(MonomialIdeal::from_minimal_unchecked(ideal.ring().clone(), gens))
}

/// Reisner's criterion: `H̃_i(lk F; K) = 0` for every face `F` and every `i < dim lk F`.
pub fn reisner_is_cm(complex: &SimplicialComplex, characteristic: u32) -> Result<bool> {
    complex.require_nonvoid()?;
    Ok(reisner_within(complex, characteristic, &Budget::unlimited()).expect("unlimited budget"))
}

/// `None` once the budget runs out.
fn reisner_within(complex: &SimplicialComplex, characteristic: u32, budget: &Budget) -> Option<bool> {
    for f in complex.faces() {
        if budget.expired() {
            return None;
        }
        let link = complex.link(f).expect("faces have links");
        let d = link.dim().unwrap_or(-1);
        // nothing below dimension 0 can be nonzero for a nonvoid complex, and cones are acyclic
        if d <= 0 || link.is_cone() {
            continue;
        }
        let h = link.homology_unchecked(characteristic);
        if (-1..d).any(|i| h.rank(i) != 0) {
            return Some(false);
        }
    }
    Some(true)
}

/// Sequential Cohen–Macaulayness via the pure skeletons: `Δ` is sequentially CM
/// over `K` iff every pure skeleton `Δ^[i]` is CM over `K`.
pub fn pure_skeletons_cm(complex: &SimplicialComplex, characteristic: u32) -> Result<bool> {
    complex.require_nonvoid()?;
    Ok(pure_skeletons_cm_within(complex, characteristic, &Budget::unlimited()).expect("unlimited budget"))
}

pub(crate) fn pure_skeletons_cm_within(complex: &SimplicialComplex, characteristic: u32, budget: &Budget) -> Option<bool> {
    let dim = complex.dim()?;
    for i in -1..=dim {
        let skeleton = complex.pure_skeleton(i).expect("dimension in range");
        if !reisner_within(&skeleton, characteristic, budget)? {
            return Some(false);
        }
    }
    Some(true)
}
