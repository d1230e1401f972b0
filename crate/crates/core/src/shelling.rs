//! Shellability (non-pure, in the sense of Björner and Wachs) by exhaustive
//! backtracking, with shelling-order certificates.
//!
//! An order `F_1, ..., F_t` of the facets is a shelling when, for every
//! `k >= 2`, the complex `<F_k> ∩ <F_1, ..., F_{k-1}>` is pure of dimension
//! `|F_k| - 2`.

use std::collections::HashSet;

use crate::bits::Bits;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::monomial::VarSet;
use crate::simplicial::{pure_skeletons_cm_within, SimplicialComplex};

/// Characteristics probed by the homological obstruction. Characteristic 0
/// adds nothing: vanishing homology over `F_p` forces vanishing over `Q`.
pub const OBSTRUCTION_CHARACTERISTICS: [u32; 2] = [2, 3];

#[derive(Debug, Clone, Copy)]
pub struct ShellingOptions {
    /// Refute immediately when some pure skeleton fails to be Cohen–Macaulay
    /// over one of [`OBSTRUCTION_CHARACTERISTICS`]. The check is skipped once
    /// the budget runs out.
    pub homological_prefilter: bool,
    pub budget: Budget,
}

impl Default for ShellingOptions {
    fn default() -> Self {
        ShellingOptions {
            homological_prefilter: true,
            budget: Budget::unlimited(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// Every facet order was ruled out by the search.
    ExhaustiveSearch,
    /// A pure skeleton is not Cohen–Macaulay over this characteristic, while
    /// pure skeletons of shellable complexes are shellable, hence CM over every field.
    HomologicalObstruction { characteristic: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shellability {
    Shellable(Vec<VarSet>),
    NotShellable(Refutation),
    Undecided,
}

impl Shellability {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Shellability::Shellable(_) => Some(true),
            Shellability::NotShellable(_) => Some(false),
            Shellability::Undecided => None,
        }
    }
}

pub fn is_shellable(complex: &SimplicialComplex) -> Result<Shellability> {
    shellability(complex, &ShellingOptions::default())
}

pub fn shellability(complex: &SimplicialComplex, options: &ShellingOptions) -> Result<Shellability> {
    if complex.is_void() {
        return Err(Error::Degenerate("the void complex"));
    }
    if complex.is_irrelevant() {
        return Err(Error::Degenerate("the irrelevant complex {∅}"));
    }
    if options.homological_prefilter {
        for p in OBSTRUCTION_CHARACTERISTICS {
            if pure_skeletons_cm_within(complex, p, &options.budget) == Some(false) {
                return Ok(Shellability::NotShellable(Refutation::HomologicalObstruction {
                    characteristic: p,
                }));
            }
        }
    }
    let mut search = Searcher {
        facets: complex.facets(),
        order: Vec::new(),
        used: Bits::with_len(complex.facets().len()),
        dead: HashSet::new(),
        budget: options.budget,
        nodes: 0,
        out_of_budget: false,
    };
    if search.extend() {
        let order = search.order.iter().map(|&i| complex.facets()[i]).collect();
        Ok(Shellability::Shellable(order))
    } else if search.out_of_budget {
        Ok(Shellability::Undecided)
    } else {
        Ok(Shellability::NotShellable(Refutation::ExhaustiveSearch))
    }
}

struct Searcher<'a> {
    facets: &'a [VarSet],
    order: Vec<usize>,
    used: Bits,
    dead: HashSet<Bits>,
    budget: Budget,
    nodes: u64,
    out_of_budget: bool,
}

impl Searcher<'_> {
    // Facets are in canonical order (descending dimension, then lexicographic),
    // which is also the candidate order.
    fn extend(&mut self) -> bool {
        if self.order.len() == self.facets.len() {
            return true;
        }
        if self.dead.contains(&self.used) {
            return false;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 1 && self.budget.expired() {
            self.out_of_budget = true;
        }
        if self.out_of_budget {
            return false;
        }
        for c in 0..self.facets.len() {
            if self.used.get(c) || !self.can_append(c) {
                continue;
            }
            self.used.set(c);
            self.order.push(c);
            if self.extend() {
                return true;
            }
            self.order.pop();
            self.used.clear(c);
            if self.out_of_budget {
                return false;
            }
        }
        self.dead.insert(self.used.clone());
        false
    }

    /// Local form of the shelling condition: with `A` the vertices `v` of `F`
    /// such that `F - v` lies in an earlier facet, every earlier `F_j` must
    /// miss some vertex of `A` inside `F`.
    fn can_append(&self, c: usize) -> bool {
        if self.order.is_empty() {
            return true;
        }
        let f = self.facets[c];
        let earlier = || self.order.iter().map(|&j| self.facets[j]);
        let restriction = VarSet::from_indices(
            f.iter()
                .filter(|&v| earlier().any(|g| f.remove(v).is_subset(g))),
        );
        earlier().all(|g| !f.difference(g).intersection(restriction).is_empty())
    }
}

/// Checks the shelling condition straight from the definition, by building
/// each intersection complex and testing its purity and dimension.
pub fn is_shelling_order(complex: &SimplicialComplex, order: &[VarSet]) -> bool {
    let mut sorted_order = order.to_vec();
    let mut facets = complex.facets().to_vec();
    sorted_order.sort();
    facets.sort();
    if sorted_order != facets {
        return false;
    }
    (1..order.len()).all(|k| {
        let f = order[k];
        let meet = SimplicialComplex::from_facets_raw(
            complex.nvertices(),
            order[..k].iter().map(|g| g.intersection(f)).collect(),
        );
        meet.is_pure() && meet.dim() == Some(f.len() as i32 - 2)
    })
}
