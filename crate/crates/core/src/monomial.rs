//! Monomials, monomial ideals and monomial primes over `K[x1, ..., xn]`.
//!
//! Every [`MonomialIdeal`] stores its unique minimal generating set in
//! graded-lexicographic order, so iteration order is canonical and every
//! search built on top of it is deterministic.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Hard limit on the number of variables; vertex sets are `u64` bitsets.
pub const MAX_VARS: usize = 64;

/// Default guardrail for exponents accepted from callers.
pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 16;

/// The ambient polynomial ring: variable names plus the field characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Ring {
    names: Vec<String>,
    characteristic: u32,
    exponent_cap: u32,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, characteristic: u32) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidRing(format!("duplicate variable name {a}")));
            }
        }
        check_characteristic(characteristic)?;
        Ok(Ring {
            names,
            characteristic,
            exponent_cap: DEFAULT_EXPONENT_CAP,
        })
    }

    /// `x1, ..., xn` over a field of characteristic zero.
    pub fn standard(n: usize) -> Result<Self> {
        Ring::new((1..=n).map(|i| format!("x{i}")), 0)
    }

    pub fn with_characteristic(&self, characteristic: u32) -> Result<Self> {
        check_characteristic(characteristic)?;
        Ok(Ring {
            characteristic,
            ..self.clone()
        })
    }

    pub fn with_exponent_cap(&self, cap: u32) -> Self {
        Ring {
            exponent_cap: cap,
            ..self.clone()
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn exponent_cap(&self) -> u32 {
        self.exponent_cap
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The full vertex set `{0, ..., n-1}`.
    pub fn all_vars(&self) -> VarSet {
        VarSet::full(self.nvars())
    }
}

fn check_characteristic(p: u32) -> Result<()> {
    if p == 0 {
        return Ok(());
    }
    if p >= 1 << 31 {
        return Err(Error::InvalidRing(format!("characteristic {p} must be below 2^31")));
    }
    let is_prime = p >= 2 && (2..).take_while(|d: &u32| d * d <= p).all(|d| p % d != 0);
    if !is_prime {
        return Err(Error::InvalidRing(format!("characteristic {p} is neither 0 nor prime")));
    }
    Ok(())
}

/// A subset of the variables (or of the vertex set of a complex), as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VarSet(pub u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        VarSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        VarSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: VarSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn insert(self, i: usize) -> VarSet {
        VarSet(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> VarSet {
        VarSet(self.0 & !(1 << i))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Lexicographic order on the sorted vertex lists: `{0,1} < {0,2} < {1,2}`.
    pub fn lex_cmp(self, other: VarSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VarSet(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i + 1)).finish()
    }
}

/// `x^a` as an exponent vector of fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::var_power(n, i, 1)
    }

    pub fn var_power(n: usize, i: usize, a: u32) -> Self {
        let mut exps = vec![0; n];
        exps[i] = a;
        Monomial { exps }
    }

    /// The squarefree monomial `x_F`.
    pub fn from_varset(n: usize, set: VarSet) -> Self {
        Monomial {
            exps: (0..n).map(|i| set.contains(i) as u32).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&a| a as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    pub fn support(&self) -> VarSet {
        VarSet(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .fold(0, |acc, (i, _)| acc | 1 << i),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&a| a <= 1)
    }

    /// `Some(i)` when the monomial is `x_i^a` with `a >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut it = self.exps.iter().enumerate().filter(|(_, &a)| a > 0);
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    fn check_same(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::AmbientMismatch(self.nvars(), other.nvars()));
        }
        Ok(())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same(other)?;
        Ok(self.lcm_raw(other))
    }

    pub(crate) fn lcm_raw(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub(crate) fn mul_raw(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// `self / divisor`, or `None` if the division is not exact.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if self.nvars() != divisor.nvars() || !divisor.divides(self) {
            return None;
        }
        Some(self.saturating_div_raw(divisor))
    }

    /// Coordinatewise `max(a - b, 0)`: the generator of `(self) : divisor`.
    pub(crate) fn saturating_div_raw(&self, divisor: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&divisor.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    pub fn squarefree_part(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&a| a.min(1)).collect(),
        }
    }

    /// Graded lexicographic order with `x1 > x2 > ... > xn`, smallest first.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, ring }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grlex_cmp(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    ring: &'a Ring,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &a) in self.mono.exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.ring.name(i))?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

/// `supp(m / t) == supp(m)`: `t` divides `m` and leaves every variable of `m` behind.
pub fn strictly_divides(t: &Monomial, m: &Monomial) -> Result<bool> {
    t.check_same(m)?;
    if !t.divides(m) {
        let ring = Ring::standard(m.nvars().max(1))?;
        return Err(Error::NotDivisible {
            divisor: t.display(&ring).to_string(),
            dividend: m.display(&ring).to_string(),
        });
    }
    Ok(m.saturating_div_raw(t).support() == m.support())
}

/// A prime generated by variables. The empty set stands for the zero prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialPrime {
    vars: VarSet,
}

impl MonomialPrime {
    pub fn new(vars: VarSet) -> Self {
        MonomialPrime { vars }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    pub fn is_proper_subprime(&self, other: &MonomialPrime) -> bool {
        self.vars.is_proper_subset(other.vars)
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> MonomialIdeal {
        let n = ring.nvars();
        MonomialIdeal::from_minimal_unchecked(
            ring.clone(),
            self.vars.iter().map(|i| Monomial::var(n, i)).collect(),
        )
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PrimeDisplay<'a> {
        PrimeDisplay { prime: self, ring }
    }
}

// Canonical prime order: by height, then lexicographically by variables.
impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.vars.lex_cmp(other.vars))
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PrimeDisplay<'a> {
    prime: &'a MonomialPrime,
    ring: &'a Ring,
}

impl fmt::Display for PrimeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.prime.vars.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(self.ring.name(i))?;
        }
        f.write_str(")")
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimizing and canonically ordering them.
    pub fn new(ring: Arc<Ring>, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let n = ring.nvars();
        let cap = ring.exponent_cap();
        let mut all = Vec::new();
        for g in gens {
            if g.nvars() != n {
                return Err(Error::AmbientMismatch(n, g.nvars()));
            }
            if let Some(&exponent) = g.exps().iter().find(|&&a| a > cap) {
                return Err(Error::ExponentTooLarge { exponent, cap });
            }
            all.push(g);
        }
        Ok(Self::from_gens_raw(ring, all))
    }

    pub fn zero(ring: Arc<Ring>) -> Self {
        MonomialIdeal { ring, gens: Vec::new() }
    }

    pub fn unit(ring: Arc<Ring>) -> Self {
        let one = Monomial::one(ring.nvars());
        MonomialIdeal { ring, gens: vec![one] }
    }

    /// Minimizes without any validation.
    pub(crate) fn from_gens_raw(ring: Arc<Ring>, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            ring,
            gens: minimize(gens),
        }
    }

    /// The caller guarantees `gens` is already minimal; only sorting happens here.
    pub(crate) fn from_minimal_unchecked(ring: Arc<Ring>, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        debug_assert!(is_minimal(&gens));
        MonomialIdeal { ring, gens }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub(crate) fn require_proper_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::Degenerate("the zero ideal"));
        }
        if self.is_unit() {
            return Err(Error::Degenerate("the unit ideal"));
        }
        Ok(())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Common degree of all generators, if there is one.
    pub fn single_degree(&self) -> Option<u64> {
        let d = self.gens.first()?.degree();
        self.gens.iter().all(|g| g.degree() == d).then_some(d)
    }

    /// Componentwise maximum of the generators' exponents, i.e. `lcm(G(I))`.
    pub fn lcm_of_gens(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars()), |acc, g| acc.lcm_raw(g))
    }

    /// Union of the generators' supports.
    pub fn support(&self) -> VarSet {
        self.gens
            .iter()
            .fold(VarSet::EMPTY, |acc, g| acc.union(g.support()))
    }

    fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring.nvars() != other.ring.nvars() {
            return Err(Error::AmbientMismatch(self.nvars(), other.nvars()));
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `(I : u)`, generated by `g / gcd(g, u)`.
    pub fn colon(&self, u: &Monomial) -> Result<MonomialIdeal> {
        if u.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch(self.nvars(), u.nvars()));
        }
        Ok(self.colon_raw(u))
    }

    pub(crate) fn colon_raw(&self, u: &Monomial) -> MonomialIdeal {
        let gens = self.gens.iter().map(|g| g.saturating_div_raw(u)).collect();
        Self::from_gens_raw(self.ring.clone(), gens)
    }

    /// If `(I : u)` is generated by variables, the corresponding prime.
    pub(crate) fn colon_prime(&self, u: &Monomial) -> Option<MonomialPrime> {
        let mut vars = VarSet::EMPTY;
        let mut any = false;
        let mut pending: Vec<Monomial> = Vec::new();
        for g in &self.gens {
            let q = g.saturating_div_raw(u);
            if q.is_one() {
                return None;
            }
            if let Some(i) = q.pure_power_var().filter(|&i| q.exp(i) == 1) {
                vars = vars.insert(i);
            } else {
                pending.push(q);
            }
            any = true;
        }
        if !any {
            return None;
        }
        // every other quotient must be a multiple of one of the variables found
        pending
            .iter()
            .all(|q| !q.support().intersection(vars).is_empty())
            .then_some(MonomialPrime::new(vars))
    }

    pub fn radical(&self) -> MonomialIdeal {
        let gens = self.gens.iter().map(Monomial::squarefree_part).collect();
        Self::from_gens_raw(self.ring.clone(), gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_gens_raw(self.ring.clone(), gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.mul_raw(b)))
            .collect();
        Ok(Self::from_gens_raw(self.ring.clone(), gens))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        Ok(self.intersect_raw(other))
    }

    pub(crate) fn intersect_raw(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm_raw(b)))
            .collect();
        Self::from_gens_raw(self.ring.clone(), gens)
    }

    /// `I + (u)`.
    pub(crate) fn with_gen(&self, u: Monomial) -> MonomialIdeal {
        if self.contains(&u) {
            return self.clone();
        }
        let mut gens: Vec<Monomial> = self.gens.iter().filter(|g| !u.divides(g)).cloned().collect();
        let pos = gens.binary_search(&u).unwrap_or_else(|p| p);
        gens.insert(pos, u);
        MonomialIdeal {
            ring: self.ring.clone(),
            gens,
        }
    }

    /// The same generators over a different ring with the same number of variables.
    pub fn with_ring(&self, ring: Arc<Ring>) -> Result<MonomialIdeal> {
        if ring.nvars() != self.nvars() {
            return Err(Error::AmbientMismatch(ring.nvars(), self.nvars()));
        }
        Ok(MonomialIdeal {
            ring,
            gens: self.gens.clone(),
        })
    }

    /// Generators rendered with the ring's variable names, e.g. `x1^2*x2, x2*x3`.
    pub fn gens_string(&self) -> String {
        self.gen_strings().join(", ")
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| g.display(&self.ring).to_string())
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gens_string())
    }
}

/// Sorts in graded-lex order and drops every generator divisible by another.
pub(crate) fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    // a proper divisor has strictly smaller degree, so it is already in `kept`
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

pub(crate) fn is_minimal(gens: &[Monomial]) -> bool {
    gens.iter().enumerate().all(|(i, a)| {
        gens.iter()
            .enumerate()
            .all(|(j, b)| i == j || !a.divides(b))
    })
}

/// Genericity: any two minimal generators with the same positive degree in some
/// variable admit a third generator strictly dividing their lcm.
pub fn is_generic(ideal: &MonomialIdeal) -> Result<bool> {
    ideal.require_proper_nonzero()?;
    let gens = ideal.gens();
    let n = ideal.nvars();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (a, b) = (&gens[i], &gens[j]);
            let shares = (0..n).any(|s| a.exp(s) > 0 && a.exp(s) == b.exp(s));
            if !shares {
                continue;
            }
            let l = a.lcm_raw(b);
            let witnessed = gens.iter().enumerate().any(|(t, g)| {
                t != i && t != j && g.divides(&l) && l.saturating_div_raw(g).support() == l.support()
            });
            if !witnessed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
