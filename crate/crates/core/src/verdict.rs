//! Three-valued verdicts tagged with the routes that decided them.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::filtrations::PrimeFiltration;
use crate::monomial::{Monomial, Ring, VarSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Undecided,
}

impl Verdict {
    pub fn from_option(b: Option<bool>) -> Verdict {
        match b {
            Some(true) => Verdict::True,
            Some(false) => Verdict::False,
            None => Verdict::Undecided,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Undecided => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Minimal generators checked pairwise.
    Definition,
    /// Irreducible decomposition and associated primes.
    Decomposition,
    /// Reisner's criterion on links.
    Reisner,
    /// The Alexander dual has a linear resolution.
    DualLinearResolution,
    /// The Alexander dual is componentwise linear.
    DualComponentwiseLinear,
    /// Every pure skeleton is Cohen–Macaulay.
    PureSkeletons,
    /// Backtracking over facet orders.
    ShellingSearch,
    /// A pure skeleton fails to be CM over some field.
    HomologicalObstruction,
    /// Shellability of the complex of the polarization.
    PolarizationShelling,
    /// Statements specific to generic ideals.
    GenericIdeal,
    /// Clean exactly when pretty clean with no embedded primes.
    PrettyCleanWithoutEmbeddedPrimes,
    /// Pretty clean implies sequentially CM.
    SequentiallyCmObstruction,
    /// For squarefree ideals almost clean, pretty clean and clean coincide.
    SquarefreeCollapse,
    /// Pretty clean implies almost clean.
    PrettyCleanImplication,
    /// Bounded search for a prime filtration.
    FiltrationSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Filtration(PrimeFiltration),
    /// A shelling order of the complex of `ring`'s ideal, facets as squarefree monomials.
    ShellingOrder { ring: Arc<Ring>, facets: Vec<VarSet> },
    LinearQuotientOrder { ring: Arc<Ring>, order: Vec<Monomial> },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Filtration(_) => "prime_filtration",
            Certificate::ShellingOrder { .. } => "shelling_order",
            Certificate::LinearQuotientOrder { .. } => "linear_quotient_order",
        }
    }

    /// The certificate as an ordered list of strings.
    pub fn items(&self) -> Vec<String> {
        match self {
            Certificate::Filtration(f) => f.step_strings(),
            Certificate::ShellingOrder { ring, facets } => facets
                .iter()
                .map(|&f| Monomial::from_varset(ring.nvars(), f).display(ring).to_string())
                .collect(),
            Certificate::LinearQuotientOrder { ring, order } => {
                order.iter().map(|m| m.display(ring).to_string()).collect()
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        match self {
            Certificate::Filtration(f) => f.base().ring().names(),
            Certificate::ShellingOrder { ring, .. } | Certificate::LinearQuotientOrder { ring, .. } => ring.names(),
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Certificate", 3)?;
        st.serialize_field("kind", self.kind())?;
        st.serialize_field("variables", self.variables())?;
        st.serialize_field("items", &self.items())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    /// Routes that produced the verdict; all of them agree.
    pub routes: Vec<Route>,
    pub via_polarization: bool,
    pub characteristic: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Decision {
    pub fn as_bool(&self) -> Option<bool> {
        self.verdict.as_bool()
    }

    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::True
    }

    pub fn is_false(&self) -> bool {
        self.verdict == Verdict::False
    }
}

/// Collects route outcomes and insists that decided routes agree.
#[derive(Debug)]
pub(crate) struct Routes {
    property: &'static str,
    outcomes: Vec<(Route, Option<bool>)>,
}

impl Routes {
    pub(crate) fn new(property: &'static str) -> Self {
        Routes {
            property,
            outcomes: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, route: Route, outcome: Option<bool>) {
        self.outcomes.push((route, outcome));
    }

    pub(crate) fn decided(&self) -> Result<Option<bool>> {
        let mut value = None;
        for &(route, outcome) in &self.outcomes {
            match (value, outcome) {
                (_, None) => {}
                (None, Some(b)) => value = Some((route, b)),
                (Some((first, a)), Some(b)) if a != b => {
                    return Err(Error::Inconsistency(format!(
                        "{}: route {first:?} says {a} but route {route:?} says {b}",
                        self.property
                    )));
                }
                _ => {}
            }
        }
        Ok(value.map(|(_, b)| b))
    }

    pub(crate) fn finish(self, characteristic: u32, via_polarization: bool) -> Result<Decision> {
        let value = self.decided()?;
        let routes = self
            .outcomes
            .iter()
            .filter(|(_, o)| value.is_none() || o.is_some())
            .map(|&(r, _)| r)
            .collect();
        Ok(Decision {
            verdict: Verdict::from_option(value),
            routes,
            via_polarization,
            characteristic,
            note: None,
            certificate: None,
        })
    }
}
