//! One in-memory report, rendered either as JSON or as text.
//!
//! Every coefficient is an exact expression string in the report's parameters
//! (plus `scan.parameters` and `metric.coefficients` where those appear).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub basis: String,
    pub coeff: String,
}

/// `lhs = Σ coeff * basis`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Line {
    pub lhs: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarLine {
    pub lhs: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inclusions {
    pub h_perp_closed: bool,
    pub mixed_in_t_perp: bool,
    pub t_perp_in_h_perp: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OffendingTerm {
    pub condition: String,
    pub generator: String,
    pub block: String,
    pub component: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub coisotropic: bool,
    pub coreductive: bool,
    pub cosymmetric: bool,
    pub dual_inclusions: Inclusions,
    pub offending: Vec<OffendingTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualSplitting {
    pub h_perp: Vec<String>,
    pub t_perp: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualAlgebra {
    pub brackets: Vec<Line>,
    pub cocommutator: Vec<Line>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting: Option<DualSplitting>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Geometry {
    pub torsion: Vec<Line>,
    pub curvature: Vec<Line>,
    pub ricci: Vec<ScalarLine>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub coefficients: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub t_perp: Vec<String>,
    pub basis: Vec<Vec<Vec<String>>>,
    pub genericity: Vec<String>,
    pub coefficients: Vec<String>,
    pub generic_determinant: String,
    pub nondegenerate_exists: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub conditions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Special {
    pub at: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forced_zero: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct System {
    pub condition: String,
    pub equations: usize,
    pub rank: usize,
    /// Reduced rows as linear forms in the scan parameters.
    pub constraints: Vec<Vec<Term>>,
    /// Admissible r-matrices over the support.
    pub solution_basis: Vec<Vec<Term>>,
    pub genericity: Vec<String>,
    pub forced_zero: Option<Vec<String>>,
    pub special: Vec<Special>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scan {
    pub support: Vec<String>,
    pub parameters: Vec<String>,
    pub systems: Vec<System>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureLine {
    pub entry: String,
    pub label: String,
    pub citation: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub status: String,
    pub parameters: Vec<String>,
    pub substitutions: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocommutator: Option<Vec<Line>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualAlgebra>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Metric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<Scan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<Vec<FixtureLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let w = &mut o;
        line(w, 0, &format!("command: {}", self.command));
        line(w, 0, &format!("status: {}", self.status));
        line(w, 0, &format!("parameters: {}", self.parameters.join(", ")));
        if !self.substitutions.is_empty() {
            let subs: Vec<String> = self.substitutions.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            line(w, 0, &format!("substitutions: {}", subs.join(", ")));
        }
        if let Some(msg) = &self.message {
            line(w, 0, &format!("message: {msg}"));
        }
        if let Some(v) = &self.verdict {
            line(w, 0, "verdict:");
            line(w, 1, &format!("coisotropic: {}", v.coisotropic));
            line(w, 1, &format!("coreductive: {}", v.coreductive));
            line(w, 1, &format!("cosymmetric: {}", v.cosymmetric));
            let i = &v.dual_inclusions;
            line(w, 0, "dual inclusions:");
            line(w, 1, &format!("[h⊥, h⊥] ⊆ h⊥: {}", i.h_perp_closed));
            line(w, 1, &format!("[h⊥, t⊥] ⊆ t⊥: {}", i.mixed_in_t_perp));
            line(w, 1, &format!("[t⊥, t⊥] ⊆ h⊥: {}", i.t_perp_in_h_perp));
            if !v.offending.is_empty() {
                line(w, 0, "offending components:");
                for off in &v.offending {
                    line(
                        w,
                        1,
                        &format!(
                            "{} ({}): δ({}) has ({})*{}",
                            off.condition, off.block, off.generator, off.coeff, off.component
                        ),
                    );
                }
            }
        }
        if let Some(c) = &self.cocommutator {
            lines(w, "cocommutator:", c);
        }
        if let Some(d) = &self.dual {
            lines(w, "dual brackets:", &d.brackets);
            lines(w, "dual cocommutator:", &d.cocommutator);
            if let Some(s) = &d.splitting {
                line(w, 0, "dual splitting:");
                line(w, 1, &format!("h⊥ = span({})", s.h_perp.join(", ")));
                line(w, 1, &format!("t⊥ = span({})", s.t_perp.join(", ")));
            }
        }
        if let Some(g) = &self.geometry {
            lines(w, "torsion:", &g.torsion);
            lines(w, "curvature:", &g.curvature);
            line(w, 0, "ricci:");
            if g.ricci.is_empty() {
                line(w, 1, "0");
            }
            for r in &g.ricci {
                line(w, 1, &format!("{} = {}", r.lhs, r.coeff));
            }
        }
        if let Some(m) = &self.metric {
            line(w, 0, "metric:");
            line(w, 1, &format!("t⊥ order: {}", m.t_perp.join(", ")));
            line(w, 1, &format!("invariant forms: {}", m.basis.len()));
            for (k, b) in m.basis.iter().enumerate() {
                line(w, 1, &format!("B{}:", k + 1));
                for row in b {
                    line(w, 2, &format!("[{}]", row.join(", ")));
                }
            }
            list(w, 1, "genericity", &m.genericity);
            line(w, 1, &format!("coefficients: {}", m.coefficients.join(", ")));
            line(w, 1, &format!("generic determinant: {}", m.generic_determinant));
            line(w, 1, &format!("nondegenerate exists: {}", m.nondegenerate_exists));
            if let Some(wit) = &m.witness {
                line(w, 1, &format!("witness coefficients: {}", wit.coefficients.join(", ")));
                for row in &wit.matrix {
                    line(w, 2, &format!("[{}]", row.join(", ")));
                }
                line(w, 1, &format!("witness determinant: {}", wit.determinant));
            }
            list(w, 1, "conditions", &m.conditions);
        }
        if let Some(s) = &self.scan {
            line(w, 0, "scan:");
            line(w, 1, &format!("support: {}", s.support.join(", ")));
            line(w, 1, &format!("parameters: {}", s.parameters.join(", ")));
            for sys in &s.systems {
                line(
                    w,
                    1,
                    &format!("{}: {} equations, rank {}", sys.condition, sys.equations, sys.rank),
                );
                line(w, 2, "constraints:");
                for row in &sys.constraints {
                    line(w, 3, &format!("{} = 0", sum(row, "*")));
                }
                line(w, 2, "solution basis:");
                for v in &sys.solution_basis {
                    line(w, 3, &format!("r = {}", sum(v, "*")));
                }
                list(w, 2, "genericity", &sys.genericity);
                match &sys.forced_zero {
                    Some(f) => line(w, 2, &format!("forced zero: {}", f.join(", "))),
                    None => line(w, 2, "forced zero: not a coordinate subspace"),
                }
                for sp in &sys.special {
                    let at: Vec<String> = sp.at.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    let body = match (&sp.error, sp.rank, sp.solution_dim) {
                        (Some(e), _, _) => format!("undefined: {e}"),
                        (None, Some(r), Some(d)) => {
                            let fz = match &sp.forced_zero {
                                Some(f) => f.join(", "),
                                None => "not a coordinate subspace".into(),
                            };
                            format!("rank {r}, solution dim {d}, forced zero: {fz}")
                        }
                        _ => "unavailable".into(),
                    };
                    line(w, 2, &format!("at {}: {body}", at.join(", ")));
                }
            }
        }
        if let Some(fx) = &self.fixtures {
            line(w, 0, "fixtures:");
            for f in fx {
                let mark = if f.passed { "PASS" } else { "FAIL" };
                line(w, 1, &format!("{mark} {} :: {} [{}]", f.entry, f.label, f.citation));
                if !f.passed {
                    line(w, 2, &f.detail);
                }
            }
        }
        o
    }
}

fn line(w: &mut String, indent: usize, text: &str) {
    let _ = writeln!(w, "{}{text}", "  ".repeat(indent));
}

fn list(w: &mut String, indent: usize, label: &str, items: &[String]) {
    if items.is_empty() {
        line(w, indent, &format!("{label}: none"));
    } else {
        line(w, indent, &format!("{label}: {}", items.join("; ")));
    }
}

fn sum(terms: &[Term], sep: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| format!("({}){sep}{}", t.coeff, t.basis))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn lines(w: &mut String, title: &str, ls: &[Line]) {
    line(w, 0, title);
    if ls.is_empty() {
        line(w, 1, "0");
    }
    for l in ls {
        line(w, 1, &format!("{} = {}", l.lhs, sum(&l.terms, "*")));
    }
}
