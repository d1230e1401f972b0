//! Irreducible decomposition, associated and minimal primes.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::Result;
use crate::monomial::{minimize, Monomial, MonomialIdeal, MonomialPrime, Ring, VarSet};

/// An irreducible monomial ideal `(x_i^{a_i} : a_i > 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleComponent {
    // 0 means "variable absent"
    exps: Vec<u32>,
}

impl IrreducibleComponent {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime::new(self.vars())
    }

    pub fn vars(&self) -> VarSet {
        VarSet::from_indices((0..self.exps.len()).filter(|&i| self.exps[i] > 0))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(m.exps())
            .any(|(&a, &b)| a > 0 && b >= a)
    }

    /// `self ⊆ other` as ideals.
    pub fn is_contained_in(&self, other: &IrreducibleComponent) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || (b > 0 && b <= a))
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> MonomialIdeal {
        let n = self.exps.len();
        let gens = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| Monomial::var_power(n, i, a))
            .collect();
        MonomialIdeal::from_gens_raw(ring.clone(), gens)
    }
}

/// Irredundant irreducible decomposition `I = Q_1 ∩ ... ∩ Q_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    ring: Arc<Ring>,
    components: Vec<IrreducibleComponent>,
}

impl Decomposition {
    pub fn components(&self) -> &[IrreducibleComponent] {
        &self.components
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Intersection of all components, as a monomial ideal.
    pub fn intersection(&self) -> MonomialIdeal {
        self.components
            .iter()
            .map(|c| c.to_ideal(&self.ring))
            .reduce(|a, b| a.intersect_raw(&b))
            .unwrap_or_else(|| MonomialIdeal::unit(self.ring.clone()))
    }
}

type Memo = HashMap<Vec<Monomial>, Vec<IrreducibleComponent>>;

pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Decomposition> {
    ideal.require_proper_nonzero()?;
    let mut memo = Memo::new();
    let mut components = split(ideal.gens().to_vec(), &mut memo);
    drop_redundant(&mut components);
    components.sort_by(|a, b| {
        a.radical()
            .cmp(&b.radical())
            .then_with(|| a.exps.cmp(&b.exps))
    });
    let decomposition = Decomposition {
        ring: ideal.ring().clone(),
        components,
    };
    debug_assert_eq!(decomposition.intersection().gens(), ideal.gens());
    Ok(decomposition)
}

// `gens` is minimal and canonically ordered.
fn split(gens: Vec<Monomial>, memo: &mut Memo) -> Vec<IrreducibleComponent> {
    if let Some(hit) = memo.get(&gens) {
        return hit.clone();
    }
    let result = match gens.iter().find(|g| g.pure_power_var().is_none()) {
        None => {
            let n = gens[0].nvars();
            let mut exps = vec![0; n];
            for g in &gens {
                let i = g.pure_power_var().expect("unit ideal never reaches the splitter");
                exps[i] = g.exp(i);
            }
            vec![IrreducibleComponent { exps }]
        }
        Some(g) => {
            // g = x_i^a * rest with gcd 1, so I = (I + x_i^a) ∩ (I + rest)
            let i = g.support().iter().next().unwrap();
            let power = Monomial::var_power(g.nvars(), i, g.exp(i));
            let rest = g.saturating_div_raw(&power);
            let mut left = gens.clone();
            left.push(power);
            let mut right = gens.clone();
            right.push(rest);
            let mut out = split(minimize(left), memo);
            out.extend(split(minimize(right), memo));
            drop_redundant(&mut out);
            out
        }
    };
    memo.insert(gens, result.clone());
    result
}

/// Keeps the components not containing the intersection of the others.
///
/// For irreducible monomial ideals `Q ⊇ ∩ others` holds exactly when `Q`
/// contains one of the others, so the global test reduces to pairwise ones.
fn drop_redundant(components: &mut Vec<IrreducibleComponent>) {
    components.sort();
    components.dedup();
    let keep: Vec<bool> = (0..components.len())
        .map(|i| {
            !components
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && other.is_contained_in(&components[i]))
        })
        .collect();
    let mut k = keep.into_iter();
    components.retain(|_| k.next().unwrap());
}

pub fn associated_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    let dec = irreducible_decomposition(ideal)?;
    Ok(primes_of(&dec))
}

pub(crate) fn primes_of(dec: &Decomposition) -> Vec<MonomialPrime> {
    dec.components()
        .iter()
        .map(IrreducibleComponent::radical)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<MonomialPrime>> {
    Ok(minimal_elements(&associated_primes(ideal)?))
}

pub(crate) fn minimal_elements(primes: &[MonomialPrime]) -> Vec<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q.is_proper_subprime(p)))
        .copied()
        .collect()
}

/// Minimal primes of a squarefree ideal, i.e. its minimal vertex covers.
pub(crate) fn squarefree_minimal_primes(ideal: &MonomialIdeal) -> Vec<MonomialPrime> {
    debug_assert!(ideal.is_squarefree());
    let edges: Vec<VarSet> = ideal.gens().iter().map(Monomial::support).collect();
    let mut primes: Vec<MonomialPrime> = minimal_transversals(&edges)
        .into_iter()
        .map(MonomialPrime::new)
        .collect();
    primes.sort();
    primes
}

/// Inclusion-minimal sets meeting every set in `sets`.
///
/// Built one set at a time as the generators of `∩ (x_i : i ∈ set)`. An empty
/// member admits no transversal; an empty family has the single transversal `∅`.
pub(crate) fn minimal_transversals(sets: &[VarSet]) -> Vec<VarSet> {
    let mut covers: Vec<VarSet> = vec![VarSet::EMPTY];
    for &edge in sets {
        let mut next: Vec<VarSet> = Vec::with_capacity(covers.len());
        for &c in &covers {
            if !c.intersection(edge).is_empty() {
                next.push(c);
            } else {
                next.extend(edge.iter().map(|v| c.insert(v)));
            }
        }
        next.sort_by_key(|c| (c.len(), c.0));
        next.dedup();
        let mut kept: Vec<VarSet> = Vec::with_capacity(next.len());
        for c in next {
            if !kept.iter().any(|k| k.is_subset(c)) {
                kept.push(c);
            }
        }
        covers = kept;
    }
    covers
}

pub fn height(ideal: &MonomialIdeal) -> Result<usize> {
    ideal.require_proper_nonzero()?;
    let mins = if ideal.is_squarefree() {
        squarefree_minimal_primes(ideal)
    } else {
        minimal_primes(ideal)?
    };
    Ok(mins.iter().map(MonomialPrime::height).min().unwrap_or(0))
}

/// Krull dimension of `R/I`.
pub fn dim_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(ideal.nvars() - height(ideal)?)
}

/// Serre's condition S1 for `R/I`: no embedded associated primes.
pub fn satisfies_s1(ideal: &MonomialIdeal) -> Result<bool> {
    let ass = associated_primes(ideal)?;
    Ok(minimal_elements(&ass).len() == ass.len())
}
