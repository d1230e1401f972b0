//! Monomial prime filtrations `I = I_0 ⊂ I_1 ⊂ ... ⊂ I_r = R` with
//! `I_i = (I_{i-1}, u_i)` and `(I_{i-1} : u_i) = p_i`, and the clean, pretty
//! clean and almost clean verdicts.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::budget::{Budget, Search};
use crate::classify::is_scm;
use crate::decomposition::{associated_primes, minimal_primes};
use crate::error::{Error, Result};
use crate::monomial::{is_generic, Monomial, MonomialIdeal, MonomialPrime, VarSet};
use crate::resolutions::polarize;
use crate::shelling::{shellability, Refutation, Shellability, ShellingOptions};
use crate::simplicial::complex_of_ideal;
use crate::verdict::{Certificate, Decision, Route, Routes};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationMode {
    Any,
    /// Every step prime is a minimal prime of the base ideal.
    Clean,
    /// `p_i ⊂ p_j` forces `j < i`.
    Pretty,
    /// Step primes are associated primes of the base ideal.
    Almost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFiltrationStep {
    pub u: Monomial,
    pub prime: MonomialPrime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFiltration {
    base: MonomialIdeal,
    steps: Vec<PrimeFiltrationStep>,
}

impl PrimeFiltration {
    /// Checks every colon and that the chain ends at the unit ideal.
    pub fn new(base: MonomialIdeal, steps: Vec<PrimeFiltrationStep>) -> Result<Self> {
        let f = PrimeFiltration { base, steps };
        f.replay()?;
        Ok(f)
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    pub fn steps(&self) -> &[PrimeFiltrationStep] {
        &self.steps
    }

    pub fn support(&self) -> BTreeSet<MonomialPrime> {
        supp_of_filtration(self)
    }

    /// Recomputes each colon from scratch.
    pub fn replay(&self) -> Result<()> {
        let ring = self.base.ring();
        let mut current = self.base.clone();
        for (k, step) in self.steps.iter().enumerate() {
            if current.contains(&step.u) {
                return Err(Error::Inconsistency(format!(
                    "step {}: {} already lies in the ideal",
                    k + 1,
                    step.u.display(ring)
                )));
            }
            let colon = current.colon(&step.u)?;
            if colon != step.prime.to_ideal(ring) {
                return Err(Error::Inconsistency(format!(
                    "step {}: colon by {} is {}, not {}",
                    k + 1,
                    step.u.display(ring),
                    colon,
                    step.prime.display(ring)
                )));
            }
            current = current.sum(&MonomialIdeal::from_gens_raw(ring.clone(), vec![step.u.clone()]))?;
        }
        if !current.is_unit() {
            return Err(Error::Inconsistency(format!("filtration ends at {current}, not at R")));
        }
        Ok(())
    }

    /// Steps rendered as `"u : p"`.
    pub fn step_strings(&self) -> Vec<String> {
        let ring = self.base.ring();
        self.steps
            .iter()
            .map(|s| format!("{} : {}", s.u.display(ring), s.prime.display(ring)))
            .collect()
    }

    pub fn satisfies(&self, mode: FiltrationMode) -> Result<bool> {
        let primes: Vec<MonomialPrime> = self.steps.iter().map(|s| s.prime).collect();
        Ok(match mode {
            FiltrationMode::Any => true,
            FiltrationMode::Clean => {
                let min = minimal_primes(&self.base)?;
                primes.iter().all(|p| min.contains(p))
            }
            FiltrationMode::Almost => {
                let ass: BTreeSet<MonomialPrime> = associated_primes(&self.base)?.into_iter().collect();
                self.support() == ass
            }
            FiltrationMode::Pretty => (0..primes.len())
                .all(|j| primes[j + 1..].iter().all(|later| !primes[j].is_proper_subprime(later))),
        })
    }
}

pub fn supp_of_filtration(f: &PrimeFiltration) -> BTreeSet<MonomialPrime> {
    f.steps.iter().map(|s| s.prime).collect()
}

/// Monomials dividing `bound`, in graded-lex order.
fn box_monomials(bound: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(bound.nvars())];
    for i in 0..bound.nvars() {
        let mut next = Vec::with_capacity(out.len() * (bound.exp(i) as usize + 1));
        for m in &out {
            for a in 0..=bound.exp(i) {
                let mut exps = m.exps().to_vec();
                exps[i] = a;
                next.push(Monomial::new(exps));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Backtracking search for a prime filtration of `R/I` whose elements `u_i`
/// divide `bound` (default: the lcm of the generators). An exhausted search
/// proves nothing outside the box.
pub fn find_prime_filtration(
    ideal: &MonomialIdeal,
    mode: FiltrationMode,
    bound: Option<&Monomial>,
    budget: &Budget,
) -> Result<Search<PrimeFiltration>> {
    ideal.require_proper_nonzero()?;
    let bound = match bound {
        Some(b) if b.nvars() != ideal.nvars() => return Err(Error::AmbientMismatch(ideal.nvars(), b.nvars())),
        Some(b) => b.lcm_raw(&ideal.lcm_of_gens()),
        None => ideal.lcm_of_gens(),
    };
    let allowed = match mode {
        FiltrationMode::Clean => Some(minimal_primes(ideal)?),
        FiltrationMode::Almost => Some(associated_primes(ideal)?),
        _ => None,
    };
    let mut search = FiltrationSearch {
        mode,
        candidates: box_monomials(&bound),
        allowed,
        steps: Vec::new(),
        dead: HashSet::new(),
        budget: *budget,
        nodes: 0,
        out_of_budget: false,
    };
    let found = search.extend(ideal)?;
    Ok(if found {
        Search::Found(PrimeFiltration {
            base: ideal.clone(),
            steps: search.steps,
        })
    } else if search.out_of_budget {
        Search::OutOfBudget
    } else {
        Search::Exhausted
    })
}

struct FiltrationSearch {
    mode: FiltrationMode,
    candidates: Vec<Monomial>,
    allowed: Option<Vec<MonomialPrime>>,
    steps: Vec<PrimeFiltrationStep>,
    dead: HashSet<(Vec<Monomial>, Vec<VarSet>)>,
    budget: Budget,
    nodes: u64,
    out_of_budget: bool,
}

impl FiltrationSearch {
    fn admissible(&self, p: &MonomialPrime, extra: Option<&MonomialPrime>) -> bool {
        match (&self.allowed, self.mode) {
            (Some(allowed), _) => allowed.contains(p),
            (None, FiltrationMode::Pretty) => {
                let mut used = self.steps.iter().map(|s| &s.prime).chain(extra);
                !used.any(|q| q.is_proper_subprime(p))
            }
            _ => true,
        }
    }

    fn key(&self, ideal: &MonomialIdeal) -> (Vec<Monomial>, Vec<VarSet>) {
        let used = if self.mode == FiltrationMode::Pretty {
            let set: BTreeSet<VarSet> = self.steps.iter().map(|s| s.prime.vars()).collect();
            set.into_iter().collect()
        } else {
            Vec::new()
        };
        (ideal.gens().to_vec(), used)
    }

    fn extend(&mut self, current: &MonomialIdeal) -> Result<bool> {
        if current.is_unit() {
            return Ok(true);
        }
        let key = self.key(current);
        if self.dead.contains(&key) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes % 64 == 1 && self.budget.expired() {
            self.out_of_budget = true;
        }
        if self.out_of_budget {
            return Ok(false);
        }
        for c in 0..self.candidates.len() {
            let u = &self.candidates[c];
            if current.contains(u) {
                continue;
            }
            let Some(p) = current.colon_prime(u) else {
                continue;
            };
            if !self.admissible(&p, None) {
                continue;
            }
            let next = current.with_gen(u.clone());
            // the associated primes of the next ideal must all appear later
            if !next.is_unit() && !associated_primes(&next)?.iter().all(|q| self.admissible(q, Some(&p))) {
                continue;
            }
            self.steps.push(PrimeFiltrationStep { u: u.clone(), prime: p });
            if self.extend(&next)? {
                return Ok(true);
            }
            self.steps.pop();
            if self.out_of_budget {
                return Ok(false);
            }
        }
        self.dead.insert(key);
        Ok(false)
    }
}

/// The clean filtration of `R/I_Δ` induced by a shelling `F_1, ..., F_t`: the
/// element for `F_k` is the product of its restriction set and its prime is
/// generated by the vertices outside `F_k`, adjoined for `k = t, ..., 1`.
pub fn filtration_from_shelling(ideal: &MonomialIdeal, order: &[VarSet]) -> Result<PrimeFiltration> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let n = ideal.nvars();
    let full = VarSet::full(n);
    let steps = (0..order.len())
        .rev()
        .map(|k| {
            let f = order[k];
            let restriction = VarSet::from_indices(
                f.iter()
                    .filter(|&v| order[..k].iter().any(|g| f.remove(v).is_subset(*g))),
            );
            PrimeFiltrationStep {
                u: Monomial::from_varset(n, restriction),
                prime: MonomialPrime::new(full.difference(f)),
            }
        })
        .collect();
    PrimeFiltration::new(ideal.clone(), steps)
}

/// Shellability of `Δ_I` for a squarefree `I`, with the degenerate complex
/// `{∅}` (the maximal ideal) shelled by its single facet.
pub(crate) fn squarefree_shellability(ideal: &MonomialIdeal, budget: &Budget) -> Result<Shellability> {
    let delta = complex_of_ideal(ideal)?;
    if delta.is_irrelevant() {
        return Ok(Shellability::Shellable(vec![VarSet::EMPTY]));
    }
    shellability(
        &delta,
        &ShellingOptions {
            homological_prefilter: true,
            budget: *budget,
        },
    )
}

fn refutation_note(s: &Shellability) -> Option<String> {
    match s {
        Shellability::NotShellable(Refutation::HomologicalObstruction { characteristic }) => Some(format!(
            "a pure skeleton is not Cohen-Macaulay in characteristic {characteristic}"
        )),
        Shellability::NotShellable(Refutation::ExhaustiveSearch) => Some("no facet order is a shelling".into()),
        _ => None,
    }
}

fn shelling_route(s: &Shellability) -> Route {
    match s {
        Shellability::NotShellable(Refutation::HomologicalObstruction { .. }) => Route::HomologicalObstruction,
        _ => Route::ShellingSearch,
    }
}

struct Polarized {
    ideal: MonomialIdeal,
    shelling: Shellability,
}

fn polarized_shellability(ideal: &MonomialIdeal, budget: &Budget) -> Result<Polarized> {
    let pol = polarize(ideal)?.ideal;
    let shelling = squarefree_shellability(&pol, budget)?;
    Ok(Polarized { ideal: pol, shelling })
}

fn shelling_certificate(ideal: &MonomialIdeal, s: &Shellability) -> Result<Option<Certificate>> {
    match s {
        Shellability::Shellable(order) => Ok(Some(Certificate::Filtration(filtration_from_shelling(ideal, order)?))),
        _ => Ok(None),
    }
}

fn search_certificate(ideal: &MonomialIdeal, mode: FiltrationMode, budget: &Budget) -> Result<Option<Certificate>> {
    Ok(find_prime_filtration(ideal, mode, None, budget)?
        .found()
        .map(Certificate::Filtration))
}

/// `R/I` is clean.
pub fn is_clean(ideal: &MonomialIdeal, budget: &Budget) -> Result<Decision> {
    ideal.require_proper_nonzero()?;
    let characteristic = ideal.ring().characteristic();
    let mut routes = Routes::new("clean");
    let ass = associated_primes(ideal)?;
    let no_embedded = minimal_primes(ideal)?.len() == ass.len();
    if is_generic(ideal)? {
        routes.push(Route::GenericIdeal, Some(no_embedded));
    }
    if ideal.is_squarefree() {
        let s = squarefree_shellability(ideal, budget)?;
        routes.push(shelling_route(&s), s.as_bool());
        let mut d = routes.finish(characteristic, false)?;
        d.note = refutation_note(&s);
        d.certificate = shelling_certificate(ideal, &s)?;
        return Ok(d);
    }
    let mut via_polarization = false;
    let mut note = None;
    if !no_embedded {
        routes.push(Route::PrettyCleanWithoutEmbeddedPrimes, Some(false));
    } else {
        let p = polarized_shellability(ideal, budget)?;
        via_polarization = true;
        note = refutation_note(&p.shelling);
        routes.push(Route::PrettyCleanWithoutEmbeddedPrimes, p.shelling.as_bool());
    }
    let mut d = routes.finish(characteristic, via_polarization)?;
    d.note = note;
    if d.verdict != crate::verdict::Verdict::False {
        d.certificate = search_certificate(ideal, FiltrationMode::Clean, budget)?;
        if d.certificate.is_some() && d.as_bool().is_none() {
            d.verdict = crate::verdict::Verdict::True;
            d.routes = vec![Route::FiltrationSearch];
        }
    }
    Ok(d)
}

/// `R/I` is pretty clean.
pub fn is_pretty_clean(ideal: &MonomialIdeal, budget: &Budget) -> Result<Decision> {
    ideal.require_proper_nonzero()?;
    let characteristic = ideal.ring().characteristic();
    let mut routes = Routes::new("pretty clean");
    let scm = is_scm(ideal)?;
    if is_generic(ideal)? {
        routes.push(Route::GenericIdeal, scm.as_bool());
    }
    if scm.is_false() {
        routes.push(Route::SequentiallyCmObstruction, Some(false));
    }
    if ideal.is_squarefree() {
        let s = squarefree_shellability(ideal, budget)?;
        routes.push(shelling_route(&s), s.as_bool());
        let mut d = routes.finish(characteristic, false)?;
        d.note = refutation_note(&s);
        d.certificate = shelling_certificate(ideal, &s)?;
        return Ok(d);
    }
    let p = polarized_shellability(ideal, budget)?;
    routes.push(Route::PolarizationShelling, p.shelling.as_bool());
    let mut d = routes.finish(characteristic, true)?;
    d.note = refutation_note(&p.shelling);
    if d.verdict != crate::verdict::Verdict::False {
        d.certificate = search_certificate(ideal, FiltrationMode::Pretty, budget)?;
        if d.certificate.is_none() {
            if let Shellability::Shellable(order) = &p.shelling {
                d.certificate = Some(Certificate::ShellingOrder {
                    ring: p.ideal.ring().clone(),
                    facets: order.clone(),
                });
            }
        }
        if matches!(d.certificate, Some(Certificate::Filtration(_))) && d.as_bool().is_none() {
            d.verdict = crate::verdict::Verdict::True;
            d.routes = vec![Route::FiltrationSearch];
        }
    }
    Ok(d)
}

/// `R/I` is almost clean.
pub fn is_almost_clean(ideal: &MonomialIdeal, budget: &Budget) -> Result<Decision> {
    ideal.require_proper_nonzero()?;
    let characteristic = ideal.ring().characteristic();
    let mut routes = Routes::new("almost clean");
    let generic = is_generic(ideal)?;
    if generic {
        routes.push(Route::GenericIdeal, Some(true));
    }
    if ideal.is_squarefree() {
        let s = squarefree_shellability(ideal, budget)?;
        routes.push(Route::SquarefreeCollapse, s.as_bool());
        let mut d = routes.finish(characteristic, false)?;
        d.note = refutation_note(&s);
        d.certificate = shelling_certificate(ideal, &s)?;
        return Ok(d);
    }
    let found = search_certificate(ideal, FiltrationMode::Almost, budget)?;
    routes.push(Route::FiltrationSearch, found.as_ref().map(|_| true));
    let mut via_polarization = false;
    if found.is_none() && !generic {
        let pretty = is_pretty_clean(ideal, budget)?;
        via_polarization = pretty.via_polarization;
        if pretty.is_true() {
            routes.push(Route::PrettyCleanImplication, Some(true));
        }
    }
    let mut d = routes.finish(characteristic, via_polarization)?;
    d.certificate = found;
    Ok(d)
}
