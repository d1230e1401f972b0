#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use monideal::decomposition::Decomposition;
use monideal::simplicial::SimplicialComplex;
use monideal::{Monomial, MonomialIdeal, Ring, VarSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ring(n: usize) -> Arc<Ring> {
    Arc::new(Ring::standard(n).unwrap())
}

pub fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(ring(n), gens.iter().map(|g| Monomial::new(g.to_vec()))).unwrap()
}

/// Squarefree ideal from 1-based index lists.
pub fn squarefree(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
    MonomialIdeal::new(
        ring(n),
        gens.iter().map(|g| Monomial::from_varset(n, VarSet::from_indices(g.iter().map(|v| v - 1)))),
    )
    .unwrap()
}

pub fn counterexample() -> MonomialIdeal {
    ideal(4, &[&[2, 1, 0, 0], &[0, 2, 1, 0], &[1, 0, 0, 2], &[0, 0, 2, 1]])
}

pub fn terai(characteristic: u32) -> MonomialIdeal {
    let i = squarefree(
        6,
        &[
            &[1, 2, 3],
            &[1, 2, 6],
            &[1, 3, 5],
            &[1, 4, 5],
            &[1, 4, 6],
            &[2, 3, 4],
            &[2, 4, 5],
            &[2, 5, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ],
    );
    i.with_ring(Arc::new(i.ring().with_characteristic(characteristic).unwrap())).unwrap()
}

pub fn n11() -> MonomialIdeal {
    squarefree(
        11,
        &[
            &[1, 4],
            &[1, 5],
            &[1, 8],
            &[1, 9],
            &[2, 5],
            &[2, 6],
            &[2, 8],
            &[2, 10],
            &[2, 11],
            &[3, 6],
            &[3, 7],
            &[3, 9],
            &[3, 10],
            &[4, 7],
            &[4, 8],
            &[4, 11],
            &[5, 9],
            &[5, 10],
            &[5, 11],
            &[6, 8],
            &[6, 9],
            &[6, 11],
            &[7, 10],
            &[7, 11],
            &[9, 11],
        ],
    )
}

/// Random squarefree ideal in `n` variables with `1..=max_gens` nonempty generators.
pub fn random_squarefree(rng: &mut ChaCha8Rng, n: usize, max_gens: usize) -> MonomialIdeal {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k).map(|_| {
        let mut bits = 0u64;
        while bits == 0 {
            bits = rng.gen_range(1..(1u64 << n));
        }
        Monomial::from_varset(n, VarSet(bits))
    });
    MonomialIdeal::new(ring(n), gens).unwrap()
}

/// Random ideal with exponents in `0..=max_exp` and no constant generator.
pub fn random_monomial_ideal(rng: &mut ChaCha8Rng, n: usize, max_exp: u32, max_gens: usize) -> MonomialIdeal {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k).map(|_| loop {
        let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if exps.iter().any(|&a| a > 0) {
            return Monomial::new(exps);
        }
    });
    MonomialIdeal::new(ring(n), gens).unwrap()
}

/// Squarefree ideal generated by `count` distinct `d`-subsets.
pub fn random_single_degree(rng: &mut ChaCha8Rng, n: usize, d: usize, count: usize) -> MonomialIdeal {
    let all: Vec<VarSet> = VarSet::full(n).subsets().filter(|s| s.len() == d).collect();
    let mut chosen: Vec<VarSet> = Vec::new();
    while chosen.len() < count.min(all.len()) {
        let s = all[rng.gen_range(0..all.len())];
        if !chosen.contains(&s) {
            chosen.push(s);
        }
    }
    MonomialIdeal::new(ring(n), chosen.into_iter().map(|s| Monomial::from_varset(n, s))).unwrap()
}

pub fn random_complex(rng: &mut ChaCha8Rng, n: usize, max_facets: usize) -> SimplicialComplex {
    let k = rng.gen_range(1..=max_facets);
    let faces: Vec<VarSet> = (0..k).map(|_| VarSet(rng.gen_range(1..(1u64 << n)))).collect();
    SimplicialComplex::from_facets(n, faces).unwrap()
}

/// Numerator of the Hilbert series of `I` by inclusion-exclusion over subsets
/// of generators: `Σ_{∅≠A} (-1)^{|A|+1} t^{deg lcm A}`.
pub fn taylor_k_polynomial(ideal: &MonomialIdeal) -> BTreeMap<usize, i64> {
    let gens = ideal.gens();
    assert!(gens.len() <= 16);
    let mut out: BTreeMap<usize, i64> = BTreeMap::new();
    for mask in 1u32..(1 << gens.len()) {
        let mut l = vec![0u32; ideal.nvars()];
        for (k, g) in gens.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (a, &b) in l.iter_mut().zip(g.exps()) {
                    *a = (*a).max(b);
                }
            }
        }
        let deg: u32 = l.iter().sum();
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        *out.entry(deg as usize).or_default() += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `β_{i,j}(I) = Σ_{|b| = j} dim H̃_{i-1}(K^b)` with the upper Koszul complex
/// `K^b = { F ⊆ supp b squarefree : x^{b - F} ∈ I }`, summed over the lcm lattice.
pub fn koszul_betti(ideal: &MonomialIdeal) -> BTreeMap<(usize, usize), u64> {
    let gens = ideal.gens();
    let n = ideal.nvars();
    let mut lattice: Vec<Vec<u32>> = Vec::new();
    for mask in 1u32..(1 << gens.len()) {
        let mut l = vec![0u32; n];
        for (k, g) in gens.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (a, &b) in l.iter_mut().zip(g.exps()) {
                    *a = (*a).max(b);
                }
            }
        }
        if !lattice.contains(&l) {
            lattice.push(l);
        }
    }
    let characteristic = ideal.ring().characteristic();
    let mut out: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for b in lattice {
        let support = VarSet::from_indices((0..n).filter(|&i| b[i] > 0));
        let faces: Vec<VarSet> = support
            .subsets()
            .filter(|f| {
                let exps: Vec<u32> = (0..n).map(|i| b[i] - u32::from(f.contains(i))).collect();
                ideal.contains(&Monomial::new(exps))
            })
            .collect();
        if faces.is_empty() {
            continue;
        }
        let complex = SimplicialComplex::from_facets(n, faces).unwrap();
        let h = complex.reduced_homology(characteristic).unwrap();
        let j: u32 = b.iter().sum();
        for (dim, rank) in h.nonzero() {
            let i = (dim + 1) as usize;
            *out.entry((i, j as usize)).or_default() += rank as u64;
        }
    }
    out
}

/// Every monomial with exponents at most `bound`.
pub fn box_monomials(bound: &[u32]) -> Vec<Monomial> {
    let mut out = vec![vec![0u32; bound.len()]];
    for (i, &b) in bound.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=b).map(move |a| {
                    let mut e = e.clone();
                    e[i] = a;
                    e
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Checks a decomposition against membership on the lcm box: the intersection
/// is `I`, and dropping any component enlarges it.
pub fn decomposition_matches_box(ideal: &MonomialIdeal, dec: &Decomposition) -> Result<(), String> {
    let bound = ideal.lcm_of_gens();
    let points = box_monomials(bound.exps());
    let comps = dec.components();
    for m in &points {
        let in_all = comps.iter().all(|c| c.contains(m));
        if in_all != ideal.contains(m) {
            return Err(format!("membership of {m:?} differs"));
        }
    }
    for skip in 0..comps.len() {
        let witness = points
            .iter()
            .any(|m| !ideal.contains(m) && comps.iter().enumerate().all(|(k, c)| k == skip || c.contains(m)));
        if !witness {
            return Err(format!("component {skip} is redundant"));
        }
    }
    Ok(())
}
