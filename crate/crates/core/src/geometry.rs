//! Canonical connection of a reductive splitting `g* = h⊥ ⊕ t⊥` at the origin,
//! and invariant symmetric bilinear forms on `t⊥`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::duality::DualSplitting;
use crate::lie::{LieAlgebra, LieError, SparseVec};
use crate::linalg::{determinant, rref, Matrix};
use crate::scalar::{Context, Rational, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("dual splitting is not reductive: [h⊥, t⊥] leaves t⊥")]
    NotReductive,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `T(e_a, e_b)` for `a < b` in `t⊥`, nonzero values only.
pub type Torsion = BTreeMap<(usize, usize), SparseVec>;
/// `R(e_a, e_b) e_c` for all `a, b, c` in `t⊥`, nonzero values only.
pub type Curvature = BTreeMap<(usize, usize, usize), SparseVec>;
/// `S(e_b, e_c)`, nonzero values only.
pub type Ricci = BTreeMap<(usize, usize), Scalar>;

fn require_reductive(dual: &LieAlgebra, ds: &DualSplitting) -> Result<(), GeometryError> {
    if dual.reductive_check(ds.as_splitting())? {
        Ok(())
    } else {
        Err(GeometryError::NotReductive)
    }
}

fn project(v: &SparseVec, keep: impl Fn(usize) -> bool) -> SparseVec {
    v.iter()
        .filter(|(k, _)| keep(**k))
        .map(|(k, c)| (*k, c.clone()))
        .collect()
}

fn negate(v: &SparseVec) -> SparseVec {
    v.iter().map(|(k, c)| (*k, -c)).collect()
}

/// `T(X, Y) = −[X, Y]_{t⊥}`.
pub fn canonical_torsion(dual: &LieAlgebra, ds: &DualSplitting) -> Result<Torsion, GeometryError> {
    require_reductive(dual, ds)?;
    let s = ds.as_splitting();
    let tp = ds.t_perp();
    let mut out = Torsion::new();
    for (n, &a) in tp.iter().enumerate() {
        for &b in &tp[n + 1..] {
            let v = negate(&project(&dual.bracket_basis(a, b), |k| s.in_t(k)));
            if !v.is_empty() {
                out.insert((a.min(b), a.max(b)), if a < b { v } else { negate(&v) });
            }
        }
    }
    Ok(out)
}

/// `R(X, Y) Z = −[[X, Y]_{h⊥}, Z]`.
pub fn canonical_curvature(dual: &LieAlgebra, ds: &DualSplitting) -> Result<Curvature, GeometryError> {
    require_reductive(dual, ds)?;
    let s = ds.as_splitting();
    let tp = ds.t_perp();
    let mut out = Curvature::new();
    for &a in tp {
        for &b in tp {
            let hpart = project(&dual.bracket_basis(a, b), |k| s.in_h(k));
            for &c in tp {
                let ec = SparseVec::from([(c, Scalar::one(dual.context()))]);
                let v = negate(&dual.bracket_sparse(&hpart, &ec));
                if !v.is_empty() {
                    out.insert((a, b, c), v);
                }
            }
        }
    }
    for (&(a, b, c), v) in &out {
        if out.get(&(b, a, c)) != Some(&negate(v)) {
            return Err(GeometryError::Internal(format!(
                "curvature not antisymmetric at ({a}, {b}, {c})"
            )));
        }
    }
    Ok(out)
}

/// `S(Y, Z) = tr(X ↦ R(X, Y) Z)`; not symmetrized.
pub fn ricci(curvature: &Curvature) -> Ricci {
    let mut out = Ricci::new();
    for (&(a, b, c), v) in curvature {
        if let Some(x) = v.get(&a) {
            let e = out.entry((b, c)).or_insert_with(|| Scalar::zero(x.context()));
            *e = &*e + x;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    pub torsion: Torsion,
    pub curvature: Curvature,
    pub ricci: Ricci,
}

pub fn geometry_report(dual: &LieAlgebra, ds: &DualSplitting) -> Result<GeometryReport, GeometryError> {
    let torsion = canonical_torsion(dual, ds)?;
    let curvature = canonical_curvature(dual, ds)?;
    let ricci = ricci(&curvature);
    Ok(GeometryReport {
        torsion,
        curvature,
        ricci,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricVerdict {
    /// A combination with nonzero constant determinant exists.
    Yes { coefficients: Vec<Rational>, witness: Matrix, determinant: Scalar },
    /// The determinant of the generic invariant form vanishes identically.
    No,
    /// A nondegenerate combination exists away from the listed conditions.
    Conditional {
        coefficients: Vec<Rational>,
        witness: Matrix,
        determinant: Scalar,
        conditions: Vec<Scalar>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSolutionSpace {
    /// Rows and columns of every matrix follow this order of `t⊥` indices.
    pub t_perp: Vec<usize>,
    pub basis: Vec<Matrix>,
    /// Pivot conditions of the invariance system.
    pub genericity: Vec<Scalar>,
    /// Context extended by one coefficient per basis element.
    pub generic_context: Context,
    pub coefficients: Vec<String>,
    pub generic_form: Matrix,
    pub generic_determinant: Scalar,
    pub verdict: MetricVerdict,
}

impl MetricSolutionSpace {
    pub fn nondegenerate_exists(&self) -> &'static str {
        match self.verdict {
            MetricVerdict::Yes { .. } => "yes",
            MetricVerdict::No => "no",
            MetricVerdict::Conditional { .. } => "conditional",
        }
    }
}

/// `B([Z,X],Y) + B(X,[Z,Y])` for every `Z ∈ h⊥`, `X, Y ∈ t⊥`, nonzero entries.
pub fn invariance_defect(dual: &LieAlgebra, ds: &DualSplitting, b: &Matrix) -> Vec<(usize, usize, usize, Scalar)> {
    let tp = ds.t_perp();
    let pos: BTreeMap<usize, usize> = tp.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let ctx = dual.context();
    let mut out = Vec::new();
    for &z in ds.h_perp() {
        for (px, &x) in tp.iter().enumerate() {
            for (py, &y) in tp.iter().enumerate() {
                let mut acc = Scalar::zero(ctx);
                for (k, c) in dual.bracket_basis(z, x) {
                    if let Some(&pk) = pos.get(&k) {
                        acc = &acc + &(&c * &b[pk][py]);
                    }
                }
                for (k, c) in dual.bracket_basis(z, y) {
                    if let Some(&pk) = pos.get(&k) {
                        acc = &acc + &(&c * &b[px][pk]);
                    }
                }
                if !acc.is_zero() {
                    out.push((z, x, y, acc));
                }
            }
        }
    }
    out
}

fn fresh_names(ctx: &Context, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut k = 1;
    while out.len() < n {
        let name = format!("c{k}");
        if ctx.index_of(&name).is_none() {
            out.push(name);
        }
        k += 1;
    }
    out
}

fn combine(ctx: &Context, basis: &[Matrix], coeffs: &[Scalar], m: usize) -> Matrix {
    let mut out = vec![vec![Scalar::zero(ctx); m]; m];
    for (b, c) in basis.iter().zip(coeffs) {
        for p in 0..m {
            for q in 0..m {
                if !b[p][q].is_zero() {
                    out[p][q] = &out[p][q] + &(c * &b[p][q]);
                }
            }
        }
    }
    out
}

/// Invariant symmetric forms on `t⊥` and whether a nondegenerate one exists.
///
/// Witness search: first the sum of basis elements with nonzero trace, then
/// fixing coefficients one at a time to the smallest value in `0..=deg` that
/// keeps the generic determinant nonzero.
pub fn invariant_metric_space(dual: &LieAlgebra, ds: &DualSplitting) -> Result<MetricSolutionSpace, GeometryError> {
    require_reductive(dual, ds)?;
    let ctx = dual.context();
    let tp = ds.t_perp().to_vec();
    let m = tp.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|p| (p..m).map(move |q| (p, q))).collect();
    let unit = |k: usize| {
        let (p, q) = pairs[k];
        let mut b = vec![vec![Scalar::zero(ctx); m]; m];
        b[p][q] = Scalar::one(ctx);
        b[q][p] = Scalar::one(ctx);
        b
    };
    // Invariance is linear in B: column k is the defect of the k-th unit form.
    let mut rows: BTreeMap<(usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
    for k in 0..pairs.len() {
        for (z, x, y, v) in invariance_defect(dual, ds, &unit(k)) {
            if x <= y {
                rows.entry((z, x, y)).or_insert_with(|| vec![Scalar::zero(ctx); pairs.len()])[k] = v;
            }
        }
    }
    let reduced = rref(ctx, rows.into_values().collect(), pairs.len());
    let basis: Vec<Matrix> = reduced
        .nullspace(ctx)
        .iter()
        .map(|v| {
            let mut b = vec![vec![Scalar::zero(ctx); m]; m];
            for (k, c) in v.iter().enumerate() {
                let (p, q) = pairs[k];
                b[p][q] = c.clone();
                b[q][p] = c.clone();
            }
            b
        })
        .collect();
    for b in &basis {
        if !invariance_defect(dual, ds, b).is_empty() {
            return Err(GeometryError::Internal("solved form fails invariance".into()));
        }
    }

    let coefficients = fresh_names(ctx, basis.len());
    let generic_context = ctx.extend(coefficients.iter().map(String::as_str))?;
    let lifted: Vec<Matrix> = basis
        .iter()
        .map(|b| {
            b.iter()
                .map(|r| r.iter().map(|v| v.embed(&generic_context)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Matrix, _>>()
        })
        .collect::<Result<_, _>>()?;
    let cs: Vec<Scalar> = coefficients
        .iter()
        .map(|n| Scalar::param(&generic_context, n))
        .collect::<Result<_, _>>()?;
    let generic_form = combine(&generic_context, &lifted, &cs, m);
    let generic_determinant = determinant(&generic_context, &generic_form);

    let verdict = if generic_determinant.is_zero() {
        MetricVerdict::No
    } else {
        let coeffs = find_witness(ctx, &basis, &generic_determinant, &coefficients, m);
        let cs: Vec<Scalar> = coeffs.iter().map(|q| Scalar::from_rational(ctx, q.clone())).collect();
        let witness = combine(ctx, &basis, &cs, m);
        let det = determinant(ctx, &witness);
        let mut conditions = reduced.conditions.clone();
        if !det.is_constant() {
            let c = Scalar::from_polynomial(ctx, det.numerator().monic());
            if !conditions.contains(&c) {
                conditions.push(c);
            }
        }
        if conditions.is_empty() {
            MetricVerdict::Yes {
                coefficients: coeffs,
                witness,
                determinant: det,
            }
        } else {
            MetricVerdict::Conditional {
                coefficients: coeffs,
                witness,
                determinant: det,
                conditions,
            }
        }
    };
    Ok(MetricSolutionSpace {
        t_perp: tp,
        basis,
        genericity: reduced.conditions,
        generic_context,
        coefficients,
        generic_form,
        generic_determinant,
        verdict,
    })
}

fn find_witness(ctx: &Context, basis: &[Matrix], generic_det: &Scalar, names: &[String], m: usize) -> Vec<Rational> {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let trace_nonzero: Vec<Rational> = basis
        .iter()
        .map(|b| {
            if (0..m).all(|p| b[p][p].is_zero()) {
                zero.clone()
            } else {
                one.clone()
            }
        })
        .collect();
    let cs: Vec<Scalar> = trace_nonzero.iter().map(|q| Scalar::from_rational(ctx, q.clone())).collect();
    if !determinant(ctx, &combine(ctx, basis, &cs, m)).is_zero() {
        return trace_nonzero;
    }
    let mut det = generic_det.clone();
    let mut out = Vec::new();
    for name in names {
        let var = det.context().index_of(name).expect("coefficient in context");
        let deg = det.numerator().degree_in(var);
        let mut chosen = None;
        for v in 0..=deg {
            let q = Rational::from_integer(v.into());
            let bound = crate::scalar::Bindings::from([(name.clone(), q.clone())]);
            let next = det.substitute(&bound).expect("polynomial in the coefficients");
            if !next.is_zero() {
                chosen = Some((q, next));
                break;
            }
        }
        let (q, next) = chosen.expect("a nonzero polynomial of degree d has at most d roots");
        out.push(q);
        det = next;
    }
    out
}
