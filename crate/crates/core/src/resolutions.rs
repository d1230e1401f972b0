//! Graded Betti numbers of squarefree ideals through Hochster's formula,
//! linear resolutions, componentwise linearity, linear quotients and polarization.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::Bits;
use crate::budget::{Budget, Search};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, Ring, VarSet};
use crate::simplicial::{complex_of_ideal, group_by_dim, homology_of_faces};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiSubject {
    /// `β_{i,j}(I)`
    Ideal,
    /// `β_{i,j}(R/I)`
    Quotient,
}

/// Nonzero graded Betti numbers keyed by `(homological index, internal degree)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
    subject: BettiSubject,
}

impl BettiTable {
    pub fn subject(&self) -> BettiSubject {
        self.subject
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    /// Shifts an ideal table to the table of the quotient ring.
    pub fn to_quotient(&self) -> BettiTable {
        match self.subject {
            BettiSubject::Quotient => self.clone(),
            BettiSubject::Ideal => {
                let mut entries: BTreeMap<(usize, usize), u64> =
                    self.entries.iter().map(|(&(i, j), &b)| ((i + 1, j), b)).collect();
                entries.insert((0, 0), 1);
                BettiTable {
                    entries,
                    subject: BettiSubject::Quotient,
                }
            }
        }
    }

    /// `Σ_i (-1)^i Σ_j β_{i,j} t^j` as a coefficient map `j -> coefficient`.
    pub fn alternating_sum(&self) -> BTreeMap<usize, i64> {
        let mut out: BTreeMap<usize, i64> = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(j).or_default() += sign * b as i64;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn max_index(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Rows as `[i, j, β]`, for serialization.
    pub fn rows(&self) -> Vec<[u64; 3]> {
        self.entries
            .iter()
            .map(|(&(i, j), &b)| [i as u64, j as u64, b])
            .collect()
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            subject: BettiSubject,
            entries: Vec<[u64; 3]>,
        }
        Repr {
            subject: self.subject,
            entries: self.rows(),
        }
        .serialize(s)
    }
}

fn require_squarefree(ideal: &MonomialIdeal) -> Result<()> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Closure of the generator supports under union (the squarefree lcm lattice).
fn lcm_lattice(ideal: &MonomialIdeal) -> Vec<VarSet> {
    let supports: Vec<VarSet> = ideal.gens().iter().map(Monomial::support).collect();
    let mut seen: HashSet<VarSet> = supports.iter().copied().collect();
    let mut frontier: Vec<VarSet> = seen.iter().copied().collect();
    while let Some(s) = frontier.pop() {
        for g in &supports {
            let u = s.union(*g);
            if seen.insert(u) {
                frontier.push(u);
            }
        }
    }
    let mut out: Vec<VarSet> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.0));
    out
}

/// `β_{i,j}(I) = Σ_{|S| = j} dim H̃_{j-i-2}(Δ|_S; K)` over the ring's characteristic.
///
/// Only subsets `S` in the lcm lattice can contribute; the others are skipped.
pub fn hochster_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    require_squarefree(ideal)?;
    ideal.require_proper_nonzero()?;
    let subsets = lcm_lattice(ideal);
    Ok(hochster_over(ideal, &subsets))
}

pub(crate) fn hochster_over(ideal: &MonomialIdeal, subsets: &[VarSet]) -> BettiTable {
    let delta = complex_of_ideal(ideal).expect("squarefree proper ideal");
    let faces = delta.faces();
    let characteristic = ideal.ring().characteristic();
    let pieces: Vec<Vec<((usize, usize), u64)>> = subsets
        .par_iter()
        .map(|&s| {
            let induced = delta.induced(s);
            if induced.is_cone() {
                return Vec::new();
            }
            let local: Vec<VarSet> = faces.iter().copied().filter(|f| f.is_subset(s)).collect();
            let ranks = homology_of_faces(&group_by_dim(local), characteristic);
            let j = s.len();
            ranks
                .iter()
                .enumerate()
                .filter(|(_, &r)| r > 0)
                .map(|(k, &r)| {
                    // H̃ in dimension k - 1 contributes to i = j - 1 - k
                    debug_assert!(k < j);
                    ((j - 1 - k, j), r as u64)
                })
                .collect()
        })
        .collect();
    let mut entries: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (key, r) in pieces.into_iter().flatten() {
        *entries.entry(key).or_default() += r;
    }
    BettiTable {
        entries,
        subject: BettiSubject::Ideal,
    }
}

/// Betti table of `I`; non-squarefree ideals go through their polarization.
pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    ideal.require_proper_nonzero()?;
    if ideal.is_squarefree() {
        hochster_betti(ideal)
    } else {
        hochster_betti(&polarize(ideal)?.ideal)
    }
}

/// `max (j - i)` over the nonzero `β_{i,j}(I)`.
pub fn regularity(ideal: &MonomialIdeal) -> Result<usize> {
    let table = betti_table(ideal)?;
    Ok(table.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0))
}

/// `pd(R/I) = 1 + max { i : β_{i,·}(I) ≠ 0 }`.
pub fn proj_dim_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(1 + betti_table(ideal)?.max_index().unwrap_or(0))
}

/// `depth(R/I) = n - pd(R/I)`.
pub fn depth_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(ideal.nvars() - proj_dim_quotient(ideal)?)
}

/// All generators share a degree `d` and `β_{i,j}(I) = 0` unless `j = i + d`.
pub fn has_linear_resolution(ideal: &MonomialIdeal) -> Result<bool> {
    ideal.require_proper_nonzero()?;
    let Some(d) = ideal.single_degree() else {
        return Ok(false);
    };
    let table = betti_table(ideal)?;
    Ok(table.entries.keys().all(|&(i, j)| j as u64 == i as u64 + d))
}

/// `I_[j]`: the ideal generated by the squarefree monomials of degree `j` in `I`.
pub fn squarefree_component(ideal: &MonomialIdeal, j: usize) -> Result<MonomialIdeal> {
    require_squarefree(ideal)?;
    let n = ideal.nvars();
    let mut sets: BTreeSet<u64> = BTreeSet::new();
    if j <= n {
        let full = VarSet::full(n);
        for g in ideal.gens() {
            let base = g.support();
            if base.len() > j {
                continue;
            }
            let rest = full.difference(base);
            for extra in rest.subsets().filter(|e| e.len() == j - base.len()) {
                sets.insert(base.union(extra).0);
            }
        }
    }
    let gens = sets
        .into_iter()
        .map(|s| Monomial::from_varset(n, VarSet(s)))
        .collect();
    Ok(MonomialIdeal::from_minimal_unchecked(ideal.ring().clone(), gens))
}

/// Every nonzero `I_[j]` has a linear resolution.
pub fn is_componentwise_linear(ideal: &MonomialIdeal) -> Result<bool> {
    require_squarefree(ideal)?;
    ideal.require_proper_nonzero()?;
    let low = ideal.gens().iter().map(|g| g.degree() as usize).min().unwrap_or(0);
    for j in low..=ideal.nvars() {
        let component = squarefree_component(ideal, j)?;
        if component.is_zero() {
            continue;
        }
        if !has_linear_resolution(&component)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(u_1, ..., u_{k-1}) : u_k` is generated by variables.
fn colon_is_linear<'a>(prior: impl Iterator<Item = &'a Monomial> + Clone, u: &Monomial) -> bool {
    let quotients: Vec<Monomial> = prior.map(|g| g.saturating_div_raw(u)).collect();
    if quotients.is_empty() {
        return true;
    }
    let linear: VarSet = quotients
        .iter()
        .filter(|q| q.degree() == 1)
        .fold(VarSet::EMPTY, |acc, q| acc.union(q.support()));
    quotients
        .iter()
        .all(|q| !q.is_one() && !q.support().intersection(linear).is_empty())
}

/// Searches for an order of `G(I)` with linear quotients. Candidates are tried
/// in graded-lex order, so the first certificate found is canonical.
pub fn has_linear_quotients(ideal: &MonomialIdeal, budget: &Budget) -> Result<Search<Vec<Monomial>>> {
    ideal.require_proper_nonzero()?;
    let gens = ideal.gens();
    let mut state = LqSearch {
        gens,
        order: Vec::new(),
        used: Bits::with_len(gens.len()),
        dead: HashSet::new(),
        budget: *budget,
        nodes: 0,
        out_of_budget: false,
    };
    Ok(if state.extend() {
        Search::Found(state.order.iter().map(|&i| gens[i].clone()).collect())
    } else if state.out_of_budget {
        Search::OutOfBudget
    } else {
        Search::Exhausted
    })
}

struct LqSearch<'a> {
    gens: &'a [Monomial],
    order: Vec<usize>,
    used: Bits,
    dead: HashSet<Bits>,
    budget: Budget,
    nodes: u64,
    out_of_budget: bool,
}

impl LqSearch<'_> {
    fn extend(&mut self) -> bool {
        if self.order.len() == self.gens.len() {
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
        for c in 0..self.gens.len() {
            if self.used.get(c) {
                continue;
            }
            let prior = self.order.iter().map(|&i| &self.gens[i]);
            if !colon_is_linear(prior, &self.gens[c]) {
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
}

/// Replays a linear-quotient certificate with full colon-ideal arithmetic.
pub fn is_linear_quotient_order(ideal: &MonomialIdeal, order: &[Monomial]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted != ideal.gens() {
        return false;
    }
    (1..order.len()).all(|k| {
        let prefix = MonomialIdeal::from_gens_raw(ideal.ring().clone(), order[..k].to_vec());
        let colon = prefix.colon_raw(&order[k]);
        !colon.is_zero() && colon.gens().iter().all(|g| g.degree() == 1)
    })
}

/// A squarefree ideal in more variables with the same graded Betti numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// For each new variable: (original variable index, copy number starting at 1).
    pub origin: Vec<(usize, u32)>,
}

/// `x_i^a ↦ x_{i,1} x_{i,2} ... x_{i,a}`, in a ring with `Σ_i max_deg_i` variables.
pub fn polarize(ideal: &MonomialIdeal) -> Result<Polarization> {
    ideal.require_proper_nonzero()?;
    let ring = ideal.ring();
    let top = ideal.lcm_of_gens();
    let mut origin: Vec<(usize, u32)> = Vec::new();
    let mut offset = vec![0usize; ideal.nvars()];
    for i in 0..ideal.nvars() {
        offset[i] = origin.len();
        origin.extend((1..=top.exp(i)).map(|k| (i, k)));
    }
    let names: Vec<String> = origin
        .iter()
        .map(|&(i, k)| format!("{}_{k}", ring.name(i)))
        .collect();
    let m = names.len();
    if m > crate::monomial::MAX_VARS {
        return Err(Error::TooManyVariables(m));
    }
    let new_ring = Arc::new(Ring::new(names, ring.characteristic())?);
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut exps = vec![0u32; m];
            for i in 0..g.nvars() {
                for k in 0..g.exp(i) as usize {
                    exps[offset[i] + k] = 1;
                }
            }
            Monomial::new(exps)
        })
        .collect();
    Ok(Polarization {
        ideal: MonomialIdeal::from_gens_raw(new_ring, gens),
        origin,
    })
}
