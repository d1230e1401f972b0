//! Cohen–Macaulay and sequentially Cohen–Macaulay predicates, full
//! classification reports, and a cross-check harness over sample ideals.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::budget::{Budget, Search};
use crate::decomposition::{associated_primes, minimal_primes, satisfies_s1};
use crate::error::{Error, Result};
use crate::filtrations::{
    find_prime_filtration, is_almost_clean, is_clean, is_pretty_clean, squarefree_shellability, FiltrationMode,
};
use crate::monomial::{is_generic, MonomialIdeal};
use crate::resolutions::{
    has_linear_quotients, has_linear_resolution, is_componentwise_linear, is_linear_quotient_order, polarize,
};
use crate::shelling::{is_shelling_order, Shellability};
use crate::simplicial::{alexander_dual_ideal, complex_of_ideal, pure_skeletons_cm, reisner_is_cm};
use crate::verdict::{Certificate, Decision, Route, Routes, Verdict};

/// `I` itself when squarefree, otherwise its polarization.
fn squarefree_model(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, bool)> {
    ideal.require_proper_nonzero()?;
    if ideal.is_squarefree() {
        Ok((ideal.clone(), false))
    } else {
        Ok((polarize(ideal)?.ideal, true))
    }
}

/// `R/I` is Cohen–Macaulay, by Reisner's criterion and by a linear resolution
/// of the Alexander dual; the two must agree.
pub fn is_cm(ideal: &MonomialIdeal) -> Result<Decision> {
    let (sf, via) = squarefree_model(ideal)?;
    let characteristic = ideal.ring().characteristic();
    let mut routes = Routes::new("Cohen-Macaulay");
    routes.push(Route::Reisner, Some(reisner_is_cm(&complex_of_ideal(&sf)?, characteristic)?));
    routes.push(
        Route::DualLinearResolution,
        Some(has_linear_resolution(&alexander_dual_ideal(&sf)?)?),
    );
    routes.finish(characteristic, via)
}

/// `R/I` is sequentially Cohen–Macaulay, by componentwise linearity of the
/// Alexander dual and by Cohen–Macaulayness of the pure skeletons.
pub fn is_scm(ideal: &MonomialIdeal) -> Result<Decision> {
    let (sf, via) = squarefree_model(ideal)?;
    let characteristic = ideal.ring().characteristic();
    let mut routes = Routes::new("sequentially Cohen-Macaulay");
    routes.push(
        Route::DualComponentwiseLinear,
        Some(is_componentwise_linear(&alexander_dual_ideal(&sf)?)?),
    );
    routes.push(Route::PureSkeletons, Some(pure_skeletons_cm(&complex_of_ideal(&sf)?, characteristic)?));
    let decision = routes.finish(characteristic, via)?;
    // sequential Cohen–Macaulayness passes from R/I to R/√I
    if decision.is_true() && !ideal.is_squarefree() && is_scm(&ideal.radical())?.is_false() {
        return Err(Error::Inconsistency(format!(
            "{ideal} is sequentially Cohen-Macaulay but its radical is not"
        )));
    }
    Ok(decision)
}

fn simple(verdict: bool, route: Route, characteristic: u32) -> Decision {
    Decision {
        verdict: Verdict::from_option(Some(verdict)),
        routes: vec![route],
        via_polarization: false,
        characteristic,
        note: None,
        certificate: None,
    }
}

/// Shellability of `Δ_I` for a squarefree ideal.
pub fn is_shellable_ideal(ideal: &MonomialIdeal, budget: &Budget) -> Result<Decision> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    ideal.require_proper_nonzero()?;
    let characteristic = ideal.ring().characteristic();
    let s = squarefree_shellability(ideal, budget)?;
    let route = match s {
        Shellability::NotShellable(crate::shelling::Refutation::HomologicalObstruction { characteristic: p }) => {
            return Ok(Decision {
                note: Some(format!("a pure skeleton is not Cohen-Macaulay in characteristic {p}")),
                ..simple(false, Route::HomologicalObstruction, characteristic)
            });
        }
        _ => Route::ShellingSearch,
    };
    let mut d = Routes::new("shellable");
    d.push(route, s.as_bool());
    let mut d = d.finish(characteristic, false)?;
    if let Shellability::Shellable(order) = s {
        d.certificate = Some(Certificate::ShellingOrder {
            ring: ideal.ring().clone(),
            facets: order,
        });
    }
    Ok(d)
}

/// Linear quotients of `I` with the order found as certificate.
pub fn linear_quotients_decision(ideal: &MonomialIdeal, budget: &Budget) -> Result<Decision> {
    let characteristic = ideal.ring().characteristic();
    let search = has_linear_quotients(ideal, budget)?;
    let verdict = match &search {
        Search::Found(_) => Some(true),
        Search::Exhausted => Some(false),
        Search::OutOfBudget => None,
    };
    let mut routes = Routes::new("linear quotients");
    routes.push(Route::Definition, verdict);
    let mut d = routes.finish(characteristic, false)?;
    if let Search::Found(order) = search {
        d.certificate = Some(Certificate::LinearQuotientOrder {
            ring: ideal.ring().clone(),
            order,
        });
    }
    Ok(d)
}

pub const PROPERTY_NAMES: [&str; 9] = [
    "generic",
    "s1",
    "cohen_macaulay",
    "sequentially_cm",
    "clean",
    "pretty_clean",
    "almost_clean",
    "shellable",
    "componentwise_linear",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub variables: Vec<String>,
    pub characteristic: u32,
    pub ideal: Vec<String>,
    pub squarefree: bool,
    /// Property name to decision; `shellable` and `componentwise_linear` only
    /// for squarefree ideals.
    pub verdicts: BTreeMap<&'static str, Decision>,
}

impl ClassificationReport {
    pub fn get(&self, property: &str) -> Option<bool> {
        self.verdicts.get(property).and_then(Decision::as_bool)
    }

    pub fn has_undecided(&self) -> bool {
        self.verdicts.values().any(|d| d.verdict == Verdict::Undecided)
    }
}

/// Decides every property and enforces the known implications between them.
pub fn classify(ideal: &MonomialIdeal, budget: &Budget) -> Result<ClassificationReport> {
    ideal.require_proper_nonzero()?;
    let characteristic = ideal.ring().characteristic();
    let mut verdicts = BTreeMap::new();
    verdicts.insert("generic", simple(is_generic(ideal)?, Route::Definition, characteristic));
    verdicts.insert("s1", simple(satisfies_s1(ideal)?, Route::Decomposition, characteristic));
    verdicts.insert("cohen_macaulay", is_cm(ideal)?);
    verdicts.insert("sequentially_cm", is_scm(ideal)?);
    verdicts.insert("clean", is_clean(ideal, budget)?);
    verdicts.insert("pretty_clean", is_pretty_clean(ideal, budget)?);
    verdicts.insert("almost_clean", is_almost_clean(ideal, budget)?);
    if ideal.is_squarefree() {
        verdicts.insert("shellable", is_shellable_ideal(ideal, budget)?);
        verdicts.insert(
            "componentwise_linear",
            simple(is_componentwise_linear(ideal)?, Route::Definition, characteristic),
        );
    }
    let report = ClassificationReport {
        variables: ideal.ring().names().to_vec(),
        characteristic,
        ideal: ideal.gen_strings(),
        squarefree: ideal.is_squarefree(),
        verdicts,
    };
    let violations = implication_violations(ideal, &report)?;
    if !violations.is_empty() {
        return Err(Error::Inconsistency(format!("{ideal}: {}", violations.join("; "))));
    }
    Ok(report)
}

fn implication_violations(ideal: &MonomialIdeal, report: &ClassificationReport) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut implies = |a: &str, b: &str| {
        if report.get(a) == Some(true) && report.get(b) == Some(false) {
            out.push(format!("{a} holds but {b} fails"));
        }
    };
    implies("clean", "pretty_clean");
    implies("pretty_clean", "almost_clean");
    implies("clean", "almost_clean");
    implies("pretty_clean", "sequentially_cm");
    implies("cohen_macaulay", "sequentially_cm");
    implies("cohen_macaulay", "s1");
    implies("clean", "s1");
    let mut equivalent = |a: &str, b: &str| {
        if let (Some(x), Some(y)) = (report.get(a), report.get(b)) {
            if x != y {
                out.push(format!("{a} is {x} but {b} is {y}"));
            }
        }
    };
    if report.squarefree {
        equivalent("shellable", "clean");
        equivalent("clean", "pretty_clean");
        equivalent("pretty_clean", "almost_clean");
        let dim = complex_of_ideal(ideal)?.dim().unwrap_or(-1);
        if dim <= 1 {
            equivalent("shellable", "sequentially_cm");
        }
    }
    if report.get("generic") == Some(true) {
        equivalent("pretty_clean", "sequentially_cm");
        equivalent("cohen_macaulay", "s1");
        equivalent("s1", "clean");
        if report.get("almost_clean") == Some(false) {
            out.push("generic but not almost clean".into());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub ideal: String,
    pub check: &'static str,
    pub detail: String,
}

/// Runs the classification and every applicable cross-check on each ideal.
/// Implementation inconsistencies are collected, not raised.
pub fn harness_check(sample: &[MonomialIdeal], budget: &Budget) -> Result<Vec<Violation>> {
    let mut violations = Vec::new();
    for ideal in sample.iter().filter(|i| i.is_proper_nonzero()) {
        let mut record = |check: &'static str, detail: String| {
            violations.push(Violation {
                ideal: ideal.to_string(),
                check,
                detail,
            })
        };
        match check_one(ideal, budget, &mut record) {
            Ok(()) => {}
            Err(Error::Inconsistency(msg)) => record("consistency", msg),
            Err(e) => return Err(e),
        }
    }
    Ok(violations)
}

fn check_one(ideal: &MonomialIdeal, budget: &Budget, record: &mut impl FnMut(&'static str, String)) -> Result<()> {
    let report = classify(ideal, budget)?;
    let n = ideal.nvars();

    for (name, decision) in &report.verdicts {
        match &decision.certificate {
            Some(Certificate::Filtration(f)) => {
                if let Err(e) = f.replay() {
                    record("filtration replay", format!("{name}: {e}"));
                }
                let mode = match *name {
                    "clean" | "shellable" => FiltrationMode::Clean,
                    "pretty_clean" => FiltrationMode::Pretty,
                    "almost_clean" => FiltrationMode::Almost,
                    _ => FiltrationMode::Any,
                };
                if f.base() == ideal && !f.satisfies(mode)? {
                    record("filtration mode", format!("{name}: certificate is not a {mode:?} filtration"));
                }
            }
            Some(Certificate::ShellingOrder { ring, facets }) if ring == ideal.ring() => {
                if !is_shelling_order(&complex_of_ideal(ideal)?, facets) {
                    record("shelling replay", format!("{name}: order is not a shelling"));
                }
            }
            _ => {}
        }
    }

    let pretty = report.get("pretty_clean");
    let scm = report.get("sequentially_cm");
    let expect_pretty = |record: &mut dyn FnMut(&'static str, String), check: &'static str| {
        if pretty == Some(false) {
            record(check, "expected pretty clean".into());
        }
    };

    if n <= 3 {
        expect_pretty(record, "pretty clean in at most three variables");
    }
    let ass = associated_primes(ideal)?;
    let chain = ass.iter().all(|p| ass.iter().all(|q| p.vars().is_subset(q.vars()) || q.vars().is_subset(p.vars())));
    if chain {
        expect_pretty(record, "pretty clean with totally ordered associated primes");
    }

    if report.get("generic") == Some(true) {
        let ass_set: BTreeSet<_> = ass.iter().copied().collect();
        for mode in [FiltrationMode::Any, FiltrationMode::Pretty] {
            if let Search::Found(f) = find_prime_filtration(ideal, mode, None, budget)? {
                if f.support() != ass_set {
                    record("generic support", format!("{mode:?} filtration support differs from Ass"));
                }
            }
        }
        for d in report.verdicts.values() {
            if let Some(Certificate::Filtration(f)) = &d.certificate {
                if f.support() != ass_set {
                    record("generic support", "certificate support differs from Ass".into());
                }
            }
        }
    }

    if !ideal.is_squarefree() {
        return Ok(());
    }
    let dual = alexander_dual_ideal(ideal)?;
    let gens = ideal.gens();

    let lq = has_linear_quotients(&dual, budget)?;
    if let Search::Found(order) = &lq {
        if !is_linear_quotient_order(&dual, order) {
            record("linear quotient replay", "order fails the colon check".into());
        }
    }
    let lq_bool = match lq {
        Search::Found(_) => Some(true),
        Search::Exhausted => Some(false),
        Search::OutOfBudget => None,
    };
    if let (Some(a), Some(b)) = (report.get("shellable"), lq_bool) {
        if a != b {
            record("shellable iff dual has linear quotients", format!("shellable {a}, linear quotients {b}"));
        }
    }
    if has_linear_quotients(ideal, budget)?.is_found() && !is_componentwise_linear(ideal)? {
        record("linear quotients imply componentwise linear", String::new());
    }

    let pairwise_cover = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.support().union(b.support()).len() == n));
    if gens.len() <= 3 || pairwise_cover {
        expect_pretty(record, "pretty clean with few or pairwise covering generators");
        if scm == Some(false) {
            record("pretty clean with few or pairwise covering generators", "expected sequentially CM".into());
        }
    }

    let degree = ideal.single_degree();
    if degree == Some(n as u64 - 1) {
        for (which, target) in [("ideal", ideal), ("dual", &dual)] {
            let p = is_pretty_clean(target, budget)?;
            let s = is_scm(target)?;
            if p.is_false() || s.is_false() {
                record("degree n-1", format!("{which}: pretty clean {:?}, sCM {:?}", p.verdict, s.verdict));
            }
        }
    }

    let min_degree = gens.iter().map(|g| g.degree()).min().unwrap_or(0);
    let dual_equivalence = min_degree + 2 >= n as u64 || (n == 5 && degree.is_some());
    if dual_equivalence && dual.is_proper_nonzero() {
        let p = is_pretty_clean(&dual, budget)?.as_bool();
        let s = is_scm(&dual)?.as_bool();
        if let (Some(p), Some(s)) = (p, s) {
            if p != s {
                record("dual sCM iff dual pretty clean", format!("pretty clean {p}, sCM {s}"));
            }
        }
    }

    let mins = minimal_primes(ideal)?;
    if mins.len() != ass.len() {
        record("squarefree ideals are unmixed in the S1 sense", String::new());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Monomial, Ring};
    use std::sync::Arc;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        let ring = Arc::new(Ring::standard(n).unwrap());
        MonomialIdeal::new(ring, gens.iter().map(|g| Monomial::new(g.to_vec()))).unwrap()
    }

    fn squarefree(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        let ring = Arc::new(Ring::standard(n).unwrap());
        let gens = gens.iter().map(|g| {
            let mut e = vec![0; n];
            for &v in *g {
                e[v - 1] = 1;
            }
            Monomial::new(e)
        });
        MonomialIdeal::new(ring, gens).unwrap()
    }

    fn terai(characteristic: u32) -> MonomialIdeal {
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
        let ring = Arc::new(i.ring().with_characteristic(characteristic).unwrap());
        i.with_ring(ring).unwrap()
    }

    fn counterexample() -> MonomialIdeal {
        ideal(4, &[&[2, 1, 0, 0], &[0, 2, 1, 0], &[1, 0, 0, 2], &[0, 0, 2, 1]])
    }

    #[test]
    fn cm_examples() {
        let j = squarefree(4, &[&[1, 2], &[1, 4], &[2, 3], &[3, 4]]);
        let d = is_cm(&j).unwrap();
        assert!(d.is_false());
        assert_eq!(d.routes, vec![Route::Reisner, Route::DualLinearResolution]);
        assert!(is_cm(&terai(0)).unwrap().is_true());
        assert!(is_cm(&terai(2)).unwrap().is_false());
        assert!(is_cm(&squarefree(4, &[&[1, 3], &[2, 4]])).unwrap().is_true());
    }

    #[test]
    fn scm_examples() {
        assert!(is_scm(&counterexample()).unwrap().is_false());
        assert!(is_scm(&terai(0)).unwrap().is_true());
        let j = squarefree(4, &[&[1, 2], &[1, 4], &[2, 3], &[3, 4]]);
        assert!(is_scm(&j).unwrap().is_false());
        let embedded = ideal(2, &[&[2, 0], &[1, 1]]);
        let d = is_scm(&embedded).unwrap();
        assert!(d.is_true() && d.via_polarization);
    }

    #[test]
    fn classify_counterexample() {
        let r = classify(&counterexample(), &Budget::unlimited()).unwrap();
        assert_eq!(r.get("generic"), Some(true));
        assert_eq!(r.get("almost_clean"), Some(true));
        assert_eq!(r.get("clean"), Some(false));
        assert_eq!(r.get("pretty_clean"), Some(false));
        assert_eq!(r.get("sequentially_cm"), Some(false));
        assert_eq!(r.get("cohen_macaulay"), Some(false));
        assert!(!r.verdicts.contains_key("shellable"));
    }

    #[test]
    fn classify_maximal_ideal_and_four_cycle() {
        let m = squarefree(3, &[&[1], &[2], &[3]]);
        let r = classify(&m, &Budget::unlimited()).unwrap();
        for key in ["cohen_macaulay", "sequentially_cm", "clean", "pretty_clean", "shellable"] {
            assert_eq!(r.get(key), Some(true), "{key}");
        }
        let c4 = squarefree(4, &[&[1, 3], &[2, 4]]);
        let r = classify(&c4, &Budget::unlimited()).unwrap();
        assert_eq!(r.get("cohen_macaulay"), Some(true));
        assert_eq!(r.get("clean"), Some(true));
    }

    #[test]
    fn terai_depends_on_characteristic() {
        let r = classify(&terai(0), &Budget::unlimited()).unwrap();
        assert_eq!(r.get("cohen_macaulay"), Some(true));
        assert_eq!(r.get("pretty_clean"), Some(false));
        let r = classify(&terai(2), &Budget::unlimited()).unwrap();
        assert_eq!(r.get("cohen_macaulay"), Some(false));
        assert_eq!(r.get("sequentially_cm"), Some(false));
    }

    #[test]
    fn harness_is_quiet_on_examples() {
        let sample = vec![
            counterexample(),
            ideal(2, &[&[2, 0], &[1, 1]]),
            squarefree(4, &[&[1, 2], &[1, 4], &[2, 3], &[3, 4]]),
            squarefree(4, &[&[1, 2, 3], &[2, 3, 4], &[1, 3, 4]]),
            squarefree(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]),
            terai(0),
        ];
        let v = harness_check(&sample, &Budget::unlimited()).unwrap();
        assert!(v.is_empty(), "{v:?}");
    }

    #[test]
    fn report_serialization_is_stable() {
        let r = classify(&ideal(2, &[&[2, 0], &[1, 1]]), &Budget::unlimited()).unwrap();
        let a = serde_json::to_string(&r).unwrap();
        let b = serde_json::to_string(&classify(&ideal(2, &[&[2, 0], &[1, 1]]), &Budget::unlimited()).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"pretty_clean\":{\"verdict\":\"true\""));
    }
}
