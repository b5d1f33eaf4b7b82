//! JSON problem documents.
//!
//! ```json
//! {
//!   "parameters": ["Lambda", "z"],
//!   "basis": ["P0", "P1", "K1"],
//!   "brackets": [{"x": "P0", "y": "K1", "terms": [{"gen": "P1", "coeff": "-1"}]}],
//!   "r": [{"x": "K1", "y": "P1", "coeff": "z"}],
//!   "delta": [{"gen": "P1", "terms": [{"a": "P1", "b": "P0", "coeff": "z"}]}],
//!   "splitting": {"h": ["K1"], "t": ["P0", "P1"]},
//!   "substitute": {"Lambda": "0"},
//!   "support": [{"x": "K1", "y": "P1"}],
//!   "special": [{"Lambda": "0"}]
//! }
//! ```
//!
//! Only `parameters` and `basis` are required; `r` and `delta` are exclusive.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bialgebra::{coboundary_cocommutator, Cocommutator};
use crate::catalog::CatalogEntry;
use crate::lie::{add_entry, Basis, LieAlgebra, SparseVec, SubalgebraSplitting};
use crate::scalar::{format_rational, parse_rational, Bindings, Context, Scalar, ScalarError};
use crate::tensor::Bivector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub gen: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub x: String,
    pub y: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RTerm {
    pub x: String,
    pub y: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeTerm {
    pub a: String,
    pub b: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaEntry {
    pub gen: String,
    pub terms: Vec<WedgeTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingDoc {
    pub h: Vec<String>,
    pub t: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair {
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub parameters: Vec<String>,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<RTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<DeltaEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub substitute: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub special: Vec<BTreeMap<String, String>>,
}

/// A diagnostic with 1-based position in the document text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message} (at {token})")]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeltaSource {
    None,
    R(Bivector),
    Explicit(Cocommutator),
}

/// A validated problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub algebra: LieAlgebra,
    pub delta: DeltaSource,
    pub splitting: Option<SubalgebraSplitting>,
    pub substitute: Bindings,
    pub support: Option<Vec<(usize, usize)>>,
    pub special: Vec<Bindings>,
}

impl Problem {
    pub fn context(&self) -> &Context {
        self.algebra.context()
    }

    pub fn from_entry(entry: &CatalogEntry) -> Problem {
        Problem {
            algebra: entry.algebra.clone(),
            delta: DeltaSource::R(entry.r.clone()),
            splitting: Some(entry.splitting.clone()),
            substitute: Bindings::new(),
            support: None,
            special: entry.special.clone(),
        }
    }

    pub fn cocommutator(&self) -> Option<Cocommutator> {
        match &self.delta {
            DeltaSource::None => None,
            DeltaSource::R(r) => Some(coboundary_cocommutator(&self.algebra, r)),
            DeltaSource::Explicit(d) => Some(d.clone()),
        }
    }

    pub fn to_document(&self) -> ProblemDocument {
        let basis = self.algebra.basis();
        let name = |i: usize| basis.name(i).to_string();
        let brackets = self
            .algebra
            .structure()
            .iter()
            .map(|(&(i, j), v)| BracketEntry {
                x: name(i),
                y: name(j),
                terms: v
                    .iter()
                    .map(|(k, c)| Term {
                        gen: name(*k),
                        coeff: c.to_string(),
                    })
                    .collect(),
            })
            .collect();
        let wedge_terms = |b: &Bivector| -> Vec<WedgeTerm> {
            b.components()
                .iter()
                .map(|(&(i, j), c)| WedgeTerm {
                    a: name(i),
                    b: name(j),
                    coeff: c.to_string(),
                })
                .collect()
        };
        let (r, delta) = match &self.delta {
            DeltaSource::None => (None, None),
            DeltaSource::R(r) => (
                Some(
                    r.components()
                        .iter()
                        .map(|(&(i, j), c)| RTerm {
                            x: name(i),
                            y: name(j),
                            coeff: c.to_string(),
                        })
                        .collect(),
                ),
                None,
            ),
            DeltaSource::Explicit(d) => (
                None,
                Some(
                    d.values()
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| !b.is_zero())
                        .map(|(i, b)| DeltaEntry {
                            gen: name(i),
                            terms: wedge_terms(b),
                        })
                        .collect(),
                ),
            ),
        };
        let bindings = |b: &Bindings| -> BTreeMap<String, String> {
            b.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect()
        };
        ProblemDocument {
            parameters: self.context().names().to_vec(),
            basis: basis.names().to_vec(),
            brackets,
            r,
            delta,
            splitting: self.splitting.as_ref().map(|s| SplittingDoc {
                h: s.h().iter().map(|&i| name(i)).collect(),
                t: s.t().iter().map(|&i| name(i)).collect(),
            }),
            substitute: bindings(&self.substitute),
            support: self.support.as_ref().map(|p| {
                p.iter()
                    .map(|&(a, b)| Pair { x: name(a), y: name(b) })
                    .collect()
            }),
            special: self.special.iter().map(bindings).collect(),
        }
    }
}

pub fn serialize_problem(p: &Problem) -> String {
    serde_json::to_string_pretty(&p.to_document()).expect("document serializes")
}

/// Position of the first occurrence of the JSON string `"needle"` at or after
/// the first occurrence of `anchor` (when given), else of the document start.
fn locate(text: &str, needle: &str, anchor: Option<&str>) -> (usize, usize) {
    let quoted = serde_json::to_string(needle).expect("string serializes");
    let start = anchor
        .and_then(|a| text.find(&serde_json::to_string(a).expect("string serializes")))
        .unwrap_or(0);
    let at = text[start..]
        .find(&quoted)
        .map(|p| p + start)
        .or_else(|| text.find(&quoted));
    match at {
        Some(byte) => {
            let before = &text[..byte];
            let line = before.matches('\n').count() + 1;
            let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            (line, col)
        }
        None => (1, 1),
    }
}

struct Checker<'a> {
    text: &'a str,
}

impl Checker<'_> {
    fn at(&self, token: &str, anchor: Option<&str>, message: impl Into<String>) -> Diagnostic {
        let (line, column) = locate(self.text, token, anchor);
        Diagnostic {
            line,
            column,
            token: format!("`{token}`"),
            message: message.into(),
        }
    }

    fn generator(&self, basis: &Basis, name: &str, anchor: Option<&str>) -> Result<usize, Diagnostic> {
        basis
            .index_of(name)
            .ok_or_else(|| self.at(name, anchor, format!("unknown generator `{name}`")))
    }

    fn scalar(&self, ctx: &Context, text: &str) -> Result<Scalar, Diagnostic> {
        Scalar::parse(ctx, text).map_err(|err| {
            let (line, column) = locate(self.text, text, None);
            match err {
                ScalarError::Parse(e) => Diagnostic {
                    line,
                    // One for the opening quote.
                    column: column + e.column,
                    token: e.found.clone(),
                    message: e.message.clone(),
                },
                other => Diagnostic {
                    line,
                    column,
                    token: format!("`{text}`"),
                    message: other.to_string(),
                },
            }
        })
    }

    fn bindings(&self, ctx: &Context, map: &BTreeMap<String, String>) -> Result<Bindings, Diagnostic> {
        let mut out = Bindings::new();
        for (k, v) in map {
            if ctx.index_of(k).is_none() {
                return Err(self.at(k, None, format!("undeclared parameter `{k}`")));
            }
            let q = parse_rational(v).map_err(|e| self.at(v, Some(k), e.to_string()))?;
            out.insert(k.clone(), q);
        }
        Ok(out)
    }
}

pub fn parse_document(text: &str) -> Result<ProblemDocument, Diagnostic> {
    serde_json::from_str(text).map_err(|e| Diagnostic {
        line: e.line(),
        column: e.column(),
        token: "JSON".into(),
        message: e.to_string(),
    })
}

/// Parses and validates a problem document.
pub fn parse_problem(text: &str) -> Result<Problem, Diagnostic> {
    let doc = parse_document(text)?;
    let ck = Checker { text };
    let ctx = Context::new(doc.parameters.iter().map(String::as_str)).map_err(|e| {
        let bad = match &e {
            ScalarError::InvalidIdentifier(s) | ScalarError::DuplicateParameter(s) => s.clone(),
            _ => "parameters".into(),
        };
        ck.at(&bad, Some("parameters"), e.to_string())
    })?;
    let basis = Basis::new(doc.basis.iter().cloned()).map_err(|e| ck.at("basis", None, e.to_string()))?;
    let mut alg = LieAlgebra::abelian(&ctx, basis.clone());
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for br in &doc.brackets {
        let i = ck.generator(&basis, &br.x, None)?;
        let j = ck.generator(&basis, &br.y, None)?;
        let key = (i.min(j), i.max(j));
        if seen.contains(&key) {
            return Err(ck.at(&br.y, Some(&br.x), format!("duplicate bracket entry for [{}, {}]", br.x, br.y)));
        }
        seen.push(key);
        let mut v = SparseVec::new();
        for t in &br.terms {
            let k = ck.generator(&basis, &t.gen, Some(&br.x))?;
            add_entry(&mut v, k, &ck.scalar(&ctx, &t.coeff)?);
        }
        alg.set_bracket(i, j, v).map_err(|e| ck.at(&br.x, None, e.to_string()))?;
    }
    let delta = match (&doc.r, &doc.delta) {
        (Some(_), Some(_)) => return Err(ck.at("delta", None, "both `r` and `delta` given")),
        (Some(terms), None) => {
            let mut r = Bivector::zero(&ctx);
            for t in terms {
                let i = ck.generator(&basis, &t.x, Some("r"))?;
                let j = ck.generator(&basis, &t.y, Some("r"))?;
                if i == j {
                    return Err(ck.at(&t.x, Some("r"), "r term pairs a generator with itself"));
                }
                r.add_wedge(i, j, &ck.scalar(&ctx, &t.coeff)?);
            }
            DeltaSource::R(r)
        }
        (None, Some(entries)) => {
            let mut values = vec![Bivector::zero(&ctx); basis.len()];
            let mut given = vec![false; basis.len()];
            for d in entries {
                let g = ck.generator(&basis, &d.gen, Some("delta"))?;
                if given[g] {
                    return Err(ck.at(&d.gen, Some("delta"), format!("duplicate delta entry for `{}`", d.gen)));
                }
                given[g] = true;
                for t in &d.terms {
                    let a = ck.generator(&basis, &t.a, Some("delta"))?;
                    let b = ck.generator(&basis, &t.b, Some("delta"))?;
                    values[g].add_wedge(a, b, &ck.scalar(&ctx, &t.coeff)?);
                }
            }
            DeltaSource::Explicit(
                Cocommutator::new(&ctx, basis.clone(), values).map_err(|e| ck.at("delta", None, e.to_string()))?,
            )
        }
        (None, None) => DeltaSource::None,
    };
    let splitting = match &doc.splitting {
        None => None,
        Some(s) => {
            let idx = |names: &[String]| {
                names
                    .iter()
                    .map(|n| ck.generator(&basis, n, Some("splitting")))
                    .collect::<Result<Vec<_>, _>>()
            };
            idx(&s.h)?;
            idx(&s.t)?;
            let names_h: Vec<&str> = s.h.iter().map(String::as_str).collect();
            let names_t: Vec<&str> = s.t.iter().map(String::as_str).collect();
            Some(
                SubalgebraSplitting::from_names(&basis, &names_h, &names_t)
                    .map_err(|e| ck.at("splitting", None, e.to_string()))?,
            )
        }
    };
    let substitute = ck.bindings(&ctx, &doc.substitute)?;
    let support = match &doc.support {
        None => None,
        Some(pairs) => {
            let mut out = Vec::new();
            for p in pairs {
                let i = ck.generator(&basis, &p.x, Some("support"))?;
                let j = ck.generator(&basis, &p.y, Some("support"))?;
                if i == j {
                    return Err(ck.at(&p.x, Some("support"), "support pair repeats a generator"));
                }
                out.push((i, j));
            }
            Some(out)
        }
    };
    let special = doc
        .special
        .iter()
        .map(|m| ck.bindings(&ctx, m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Problem {
        algebra: alg,
        delta,
        splitting,
        substitute,
        support,
        special,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_abelian_document() {
        let p = parse_problem(r#"{"parameters": [], "basis": ["A", "B"]}"#).unwrap();
        assert!(p.algebra.structure().is_empty());
        assert_eq!(p.delta, DeltaSource::None);
    }

    #[test]
    fn dangling_caret_is_located() {
        let text = "{\"parameters\": [\"Lambda\"], \"basis\": [\"A\", \"B\"],\n \"brackets\": [{\"x\": \"A\", \"y\": \"B\", \"terms\": [{\"gen\": \"A\", \"coeff\": \"Lambda^\"}]}]}";
        let d = parse_problem(text).unwrap_err();
        assert_eq!(d.line, 2);
        let quote = text.lines().nth(1).unwrap().find("\"Lambda^\"").unwrap() + 1;
        // Caret is the 7th character inside the quotes.
        assert_eq!(d.column, quote + 7);
        assert_eq!(d.token, "end of input");
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            (r#"{"parameters": [], "basis": ["A"], "brackets": [{"x": "A", "y": "C", "terms": []}]}"#, "unknown generator"),
            (
                r#"{"parameters": [], "basis": ["A", "B"], "brackets": [{"x": "A", "y": "B", "terms": []}, {"x": "B", "y": "A", "terms": []}]}"#,
                "duplicate bracket",
            ),
            (
                r#"{"parameters": [], "basis": ["A", "B"], "r": [{"x": "A", "y": "B", "coeff": "q"}]}"#,
                "undeclared parameter",
            ),
            (
                r#"{"parameters": [], "basis": ["A", "B"], "r": [], "delta": []}"#,
                "both",
            ),
            (r#"{"parameters": [], "basis": ["A"], "substitute": {"q": "1"}}"#, "undeclared parameter"),
            (r#"{"parameters": [], "basis": ["A"], "extra": 1}"#, "unknown field"),
            (r#"{"parameters": [], "basis": ["A"],"#, "EOF"),
        ];
        for (text, needle) in cases {
            let d = parse_problem(text).unwrap_err();
            assert!(d.message.contains(needle), "{text}: {d}");
        }
    }

    #[test]
    fn round_trip_with_explicit_delta() {
        let text = r#"{"parameters": ["a"], "basis": ["X", "Y"],
            "brackets": [{"x": "X", "y": "Y", "terms": [{"gen": "X", "coeff": "a/(1+a)"}]}],
            "delta": [{"gen": "X", "terms": [{"a": "Y", "b": "X", "coeff": "-1/2"}]}],
            "splitting": {"h": ["Y"], "t": ["X"]},
            "substitute": {"a": "3/4"},
            "support": [{"x": "Y", "y": "X"}],
            "special": [{"a": "0"}]}"#;
        let p = parse_problem(text).unwrap();
        let again = parse_problem(&serialize_problem(&p)).unwrap();
        assert_eq!(p, again);
    }
}
