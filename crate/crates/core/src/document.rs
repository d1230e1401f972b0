//! Text and JSON input documents describing a ring and an ideal (or a
//! simplicial complex by its facets).
//!
//! ```text
//! # comment
//! label: example
//! vars: x1..x4
//! char: 0
//! ideal: x1^2*x2, x2^2*x3,
//!        x1*x4^2, x3^2*x4
//! ```
//!
//! Lines starting with whitespace continue the previous key. `facets:` may
//! replace `ideal:`, listing facets as squarefree products. `expect:` holds
//! `property=true|false` pairs, and `expect-dual:` / `expect-radical:` hold
//! monomial lists; these are used by the bundled corpus.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, Ring, VarSet};
use crate::simplicial::{complex_of_ideal, ideal_of_complex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Ideal(MonomialIdeal),
    Complex(SimplicialComplex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDocument {
    pub label: Option<String>,
    pub ring: Arc<Ring>,
    pub body: Body,
    pub expect: BTreeMap<String, bool>,
    pub expect_dual: Option<MonomialIdeal>,
    pub expect_radical: Option<MonomialIdeal>,
    /// Undecided verdicts are tolerated against expectations.
    pub extended: bool,
}

impl IdealDocument {
    /// The ideal, or the Stanley–Reisner ideal of the complex.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        match &self.body {
            Body::Ideal(i) => Ok(i.clone()),
            Body::Complex(c) => ideal_of_complex(c, &self.ring),
        }
    }

    /// The complex, or the complex of the (squarefree) ideal.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        match &self.body {
            Body::Ideal(i) => complex_of_ideal(i),
            Body::Complex(c) => Ok(c.clone()),
        }
    }

    /// Replaces the field characteristic.
    pub fn with_characteristic(&self, characteristic: u32) -> Result<IdealDocument> {
        let ring = Arc::new(self.ring.with_characteristic(characteristic)?);
        let rebase = |i: &Option<MonomialIdeal>| i.as_ref().map(|i| i.with_ring(ring.clone())).transpose();
        let body = match &self.body {
            Body::Ideal(i) => Body::Ideal(i.with_ring(ring.clone())?),
            Body::Complex(c) => Body::Complex(c.clone()),
        };
        Ok(IdealDocument {
            label: self.label.clone(),
            body,
            expect: self.expect.clone(),
            expect_dual: rebase(&self.expect_dual)?,
            expect_radical: rebase(&self.expect_radical)?,
            extended: self.extended,
            ring,
        })
    }
}

/// A value together with where it started in the source.
#[derive(Debug, Clone)]
struct Spanned {
    line: usize,
    column: usize,
    text: String,
}

/// Parses the text format, or JSON when the first non-blank character is `{`.
pub fn parse_document(text: &str) -> Result<IdealDocument> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut fields: Vec<(String, Spanned, Vec<Spanned>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        if content.starts_with(char::is_whitespace) {
            let Some(last) = fields.last_mut() else {
                return Err(Error::parse(line, 1, "continuation line without a key"));
            };
            let column = content.len() - content.trim_start().len() + 1;
            last.2.push(Spanned {
                line,
                column,
                text: content.trim_start().to_string(),
            });
            continue;
        }
        let Some(colon) = content.find(':') else {
            return Err(Error::parse(line, 1, "expected `key: value`"));
        };
        let key = content[..colon].trim().to_ascii_lowercase();
        let rest = &content[colon + 1..];
        let column = colon + 2 + (rest.len() - rest.trim_start().len());
        if fields.iter().any(|(k, _, _)| *k == key) {
            return Err(Error::parse(line, 1, format!("duplicate key `{key}`")));
        }
        fields.push((
            key,
            Spanned {
                line,
                column,
                text: rest.trim_start().to_string(),
            },
            Vec::new(),
        ));
    }
    let get = |k: &str| fields.iter().find(|(key, _, _)| key == k).map(|(_, s, more)| (s, more.as_slice()));
    for (key, s, _) in &fields {
        if !["label", "vars", "char", "ideal", "facets", "expect", "expect-dual", "expect-radical", "extended"]
            .contains(&key.as_str())
        {
            return Err(Error::parse(s.line, 1, format!("unknown key `{key}`")));
        }
    }
    let (vars, vars_more) = get("vars").ok_or_else(|| Error::parse(1, 1, "missing `vars:` declaration"))?;
    let names = parse_vars(vars, vars_more)?;
    let characteristic = match get("char") {
        None => 0,
        Some((s, _)) => s
            .text
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::parse(s.line, s.column, "characteristic must be a non-negative integer"))?,
    };
    let ring = Arc::new(Ring::new(names, characteristic).map_err(|e| Error::parse(vars.line, vars.column, e.to_string()))?);
    let body = match (get("ideal"), get("facets")) {
        (Some(_), Some((s, _))) => return Err(Error::parse(s.line, 1, "give either `ideal:` or `facets:`, not both")),
        (None, None) => return Err(Error::parse(1, 1, "empty ideal")),
        (Some((s, more)), None) => Body::Ideal(ideal_from_spans(&ring, s, more)?),
        (None, Some((s, more))) => {
            let mut facets = Vec::new();
            for m in monomials_from_spans(&ring, s, more)? {
                if !m.is_squarefree() {
                    return Err(Error::parse(s.line, s.column, "facets must be squarefree products"));
                }
                facets.push(m.support());
            }
            Body::Complex(SimplicialComplex::from_facets(ring.nvars(), facets)?)
        }
    };
    let mut expect = BTreeMap::new();
    if let Some((s, more)) = get("expect") {
        for part in std::iter::once(s).chain(more) {
            for item in part.text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| Error::parse(part.line, part.column, format!("expected `property=value`, got `{item}`")))?;
                let v = match v.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(Error::parse(part.line, part.column, format!("`{other}` is not true or false"))),
                };
                expect.insert(k.trim().to_string(), v);
            }
        }
    }
    let expect_dual = get("expect-dual").map(|(s, m)| ideal_from_spans(&ring, s, m)).transpose()?;
    let expect_radical = get("expect-radical").map(|(s, m)| ideal_from_spans(&ring, s, m)).transpose()?;
    let extended = match get("extended") {
        None => false,
        Some((s, _)) => match s.text.trim() {
            "true" => true,
            "false" => false,
            _ => return Err(Error::parse(s.line, s.column, "`extended` must be true or false")),
        },
    };
    Ok(IdealDocument {
        label: get("label").map(|(s, _)| s.text.trim().to_string()),
        ring,
        body,
        expect,
        expect_dual,
        expect_radical,
        extended,
    })
}

fn parse_vars(first: &Spanned, more: &[Spanned]) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for part in std::iter::once(first).chain(more) {
        for item in part.text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some((a, b)) = item.split_once("..") {
                names.extend(expand_range(a.trim(), b.trim()).ok_or_else(|| {
                    Error::parse(part.line, part.column, format!("bad variable range `{item}`"))
                })?);
            } else {
                names.push(item.to_string());
            }
        }
    }
    Ok(names)
}

/// `x1..x4` expands to `x1, x2, x3, x4`.
fn expand_range(a: &str, b: &str) -> Option<Vec<String>> {
    let split = |s: &str| {
        let digits = s.len() - s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (p, d) = s.split_at(s.len() - digits);
        Some((p.to_string(), d.parse::<usize>().ok()?))
    };
    let (pa, lo) = split(a)?;
    let (pb, hi) = split(b)?;
    if pa != pb || pa.is_empty() || lo > hi {
        return None;
    }
    Some((lo..=hi).map(|k| format!("{pa}{k}")).collect())
}

fn monomials_from_spans(ring: &Ring, first: &Spanned, more: &[Spanned]) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    for part in std::iter::once(first).chain(more) {
        out.extend(scan_list(&part.text, ring, part.line, part.column)?);
    }
    if out.is_empty() {
        return Err(Error::parse(first.line, first.column, "empty ideal"));
    }
    Ok(out)
}

fn ideal_from_spans(ring: &Arc<Ring>, first: &Spanned, more: &[Spanned]) -> Result<MonomialIdeal> {
    let gens = monomials_from_spans(ring, first, more)?;
    MonomialIdeal::new(ring.clone(), gens).map_err(|e| Error::parse(first.line, first.column, e.to_string()))
}

/// Parses `"x1^2*x2, x3"` against `ring`. An empty list is an error.
pub fn parse_monomial_list(text: &str, ring: &Ring) -> Result<Vec<Monomial>> {
    let out = scan_list(text, ring, 1, 1)?;
    if out.is_empty() {
        return Err(Error::parse(1, 1, "empty ideal"));
    }
    Ok(out)
}

pub fn parse_ideal(text: &str, ring: &Arc<Ring>) -> Result<MonomialIdeal> {
    MonomialIdeal::new(ring.clone(), parse_monomial_list(text, ring)?)
}

fn scan_list(text: &str, ring: &Ring, line: usize, column: usize) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let start = offset + (piece.len() - piece.trim_start().len());
        offset += piece.len() + 1;
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            continue;
        }
        out.push(scan_monomial(trimmed, ring, line, column + start)?);
    }
    Ok(out)
}

fn scan_monomial(text: &str, ring: &Ring, line: usize, column: usize) -> Result<Monomial> {
    let mut exps = vec![0u32; ring.nvars()];
    let mut offset = 0;
    for factor in text.split('*') {
        let col = column + offset + (factor.len() - factor.trim_start().len());
        offset += factor.len() + 1;
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::parse(line, col, "missing factor"));
        }
        if factor == "1" {
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => {
                let p = p
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(line, col, format!("bad exponent in `{factor}`")))?;
                (n.trim(), p)
            }
            None => (factor, 1),
        };
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::parse(line, col, format!("undeclared variable `{name}`")))?;
        exps[i] = exps[i]
            .checked_add(power)
            .ok_or_else(|| Error::parse(line, col, "exponent overflow"))?;
    }
    Ok(Monomial::new(exps))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    vars: Vec<String>,
    #[serde(default)]
    char: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ideal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    expect: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    extended: bool,
}

fn parse_json(text: &str) -> Result<IdealDocument> {
    let doc: JsonDocument =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let ring = Arc::new(Ring::new(doc.vars, doc.char)?);
    let join = |items: &[String]| items.join(", ");
    let body = match (doc.ideal, doc.facets) {
        (Some(g), None) => Body::Ideal(parse_ideal(&join(&g), &ring)?),
        (None, Some(f)) => {
            let facets = parse_monomial_list(&join(&f), &ring)?;
            if facets.iter().any(|m| !m.is_squarefree()) {
                return Err(Error::parse(1, 1, "facets must be squarefree products"));
            }
            Body::Complex(SimplicialComplex::from_facets(
                ring.nvars(),
                facets.iter().map(Monomial::support),
            )?)
        }
        (None, None) => return Err(Error::parse(1, 1, "empty ideal")),
        (Some(_), Some(_)) => return Err(Error::parse(1, 1, "give either `ideal` or `facets`, not both")),
    };
    Ok(IdealDocument {
        label: doc.label,
        ring,
        body,
        expect: doc.expect,
        expect_dual: None,
        expect_radical: None,
        extended: doc.extended,
    })
}

fn facet_string(ring: &Ring, f: VarSet) -> String {
    Monomial::from_varset(ring.nvars(), f).display(ring).to_string()
}

/// Normalized text form; parsing it gives back the same document.
pub fn render_document(doc: &IdealDocument) -> String {
    let mut out = String::new();
    if let Some(label) = &doc.label {
        out.push_str(&format!("label: {label}\n"));
    }
    out.push_str(&format!("vars: {}\n", doc.ring.names().join(", ")));
    out.push_str(&format!("char: {}\n", doc.ring.characteristic()));
    match &doc.body {
        Body::Ideal(i) => out.push_str(&format!("ideal: {}\n", i.gens_string())),
        Body::Complex(c) => {
            let facets: Vec<String> = c.facets().iter().map(|&f| facet_string(&doc.ring, f)).collect();
            out.push_str(&format!("facets: {}\n", facets.join(", ")));
        }
    }
    if !doc.expect.is_empty() {
        let items: Vec<String> = doc.expect.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("expect: {}\n", items.join(", ")));
    }
    if let Some(d) = &doc.expect_dual {
        out.push_str(&format!("expect-dual: {}\n", d.gens_string()));
    }
    if let Some(r) = &doc.expect_radical {
        out.push_str(&format!("expect-radical: {}\n", r.gens_string()));
    }
    if doc.extended {
        out.push_str("extended: true\n");
    }
    out
}

/// JSON form of a document (expectations on operations are not included).
pub fn render_json(doc: &IdealDocument) -> String {
    let (ideal, facets) = match &doc.body {
        Body::Ideal(i) => (Some(i.gen_strings()), None),
        Body::Complex(c) => (None, Some(c.facets().iter().map(|&f| facet_string(&doc.ring, f)).collect())),
    };
    serde_json::to_string(&JsonDocument {
        label: doc.label.clone(),
        vars: doc.ring.names().to_vec(),
        char: doc.ring.characteristic(),
        ideal,
        facets,
        expect: doc.expect.clone(),
        extended: doc.extended,
    })
    .expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTEREXAMPLE: &str = "\
# generic, almost clean, not pretty clean
label: counterexample
vars: x1..x4
ideal: x1^2*x2, x2^2*x3,
       x1*x4^2, x3^2*x4
";

    #[test]
    fn parses_text_format() {
        let doc = parse_document(COUNTEREXAMPLE).unwrap();
        assert_eq!(doc.label.as_deref(), Some("counterexample"));
        assert_eq!(doc.ring.names(), ["x1", "x2", "x3", "x4"]);
        assert_eq!(doc.ring.characteristic(), 0);
        let i = doc.ideal().unwrap();
        assert_eq!(i.gens().len(), 4);
        assert_eq!(i.gens_string(), "x1^2*x2, x1*x4^2, x2^2*x3, x3^2*x4");
    }

    #[test]
    fn round_trip() {
        let doc = parse_document(COUNTEREXAMPLE).unwrap();
        let again = parse_document(&render_document(&doc)).unwrap();
        assert_eq!(doc, again);
        let via_json = parse_document(&render_json(&doc)).unwrap();
        assert_eq!(doc, via_json);
    }

    #[test]
    fn normalizes_repeated_factors() {
        let ring = Ring::standard(2).unwrap();
        let m = parse_monomial_list("x1*x1", &ring).unwrap();
        assert_eq!(m[0].display(&ring).to_string(), "x1^2");
    }

    #[test]
    fn errors_carry_positions() {
        let ring = Ring::standard(3).unwrap();
        assert_eq!(parse_monomial_list("", &ring), Err(Error::parse(1, 1, "empty ideal")));
        assert_eq!(
            parse_monomial_list("x1, x2*y", &ring),
            Err(Error::parse(1, 8, "undeclared variable `y`"))
        );
        let err = parse_document("vars: x1, x2\nideal: x1,\n  x2^a\n").unwrap_err();
        assert_eq!(err, Error::parse(3, 3, "bad exponent in `x2^a`"));
        let err = parse_document("vars: x1\nideal:\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref message, .. } if message == "empty ideal"));
        assert!(parse_document("ideal: x1\n").is_err());
        assert!(parse_document("vars: x1\nfoo: 1\nideal: x1").is_err());
    }

    #[test]
    fn facets_documents() {
        let doc = parse_document("vars: a, b, c, d\nfacets: a*b, b*c, c*d, a*d\n").unwrap();
        let i = doc.ideal().unwrap();
        assert_eq!(i.gens_string(), "a*c, b*d");
        assert_eq!(doc.complex().unwrap().facets().len(), 4);
        assert!(parse_document("vars: a, b\nfacets: a^2\n").is_err());
    }

    #[test]
    fn expectations_and_characteristic() {
        let doc = parse_document(
            "vars: x1..x3\nchar: 2\nideal: x1*x2\nexpect: clean=true, s1=false\nexpect-dual: x1, x2\nextended: true\n",
        )
        .unwrap();
        assert_eq!(doc.ring.characteristic(), 2);
        assert_eq!(doc.expect.get("clean"), Some(&true));
        assert_eq!(doc.expect.get("s1"), Some(&false));
        assert_eq!(doc.expect_dual.as_ref().unwrap().gens_string(), "x1, x2");
        assert!(doc.extended);
        let back = parse_document(&render_document(&doc)).unwrap();
        assert_eq!(back, doc);
        assert_eq!(doc.with_characteristic(3).unwrap().ring.characteristic(), 3);
        assert!(parse_document("vars: x1\nchar: 4\nideal: x1").is_err());
    }
}
