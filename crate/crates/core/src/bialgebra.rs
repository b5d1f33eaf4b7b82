//! Cocommutators, coboundaries, cocycle and co-Jacobi checks, and dualization.

use thiserror::Error;

use crate::lie::{Basis, LieAlgebra, LieError, SparseVec};
use crate::scalar::{Bindings, Context, Scalar, ScalarError};
use crate::tensor::{ad_on_bivector, Bivector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BialgebraError {
    #[error("cocommutator has {found} values for {expected} generators")]
    WrongLength { expected: usize, found: usize },
    #[error("cocommutator and algebra use different bases")]
    BasisMismatch,
    #[error("cocycle identity fails at ({x}, {y}): coefficient of {a}∧{b} is {value}")]
    Cocycle {
        x: String,
        y: String,
        a: String,
        b: String,
        value: String,
    },
    #[error("co-Jacobi fails at ({x}, {y}, {w}): coefficient of {component} is {value}")]
    CoJacobi {
        x: String,
        y: String,
        w: String,
        component: String,
        value: String,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

fn mismatch(a: &Context, b: &Context) -> BialgebraError {
    ScalarError::ContextMismatch(a.names().to_vec(), b.names().to_vec()).into()
}

/// `N` ↦ `N*`, `N*` ↦ `N`.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

pub fn dual_basis(basis: &Basis) -> Basis {
    Basis::new(basis.names().iter().map(|n| dual_name(n))).expect("dual names stay distinct")
}

/// A linear map `δ: g → g ∧ g`, stored as the image of each generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocommutator {
    ctx: Context,
    basis: Basis,
    values: Vec<Bivector>,
}

impl Cocommutator {
    pub fn new(ctx: &Context, basis: Basis, values: Vec<Bivector>) -> Result<Self, BialgebraError> {
        if values.len() != basis.len() {
            return Err(BialgebraError::WrongLength {
                expected: basis.len(),
                found: values.len(),
            });
        }
        for v in &values {
            if v.context() != ctx {
                return Err(mismatch(v.context(), ctx));
            }
            if v.span_bound() > basis.len() {
                return Err(LieError::IndexOutOfRange(v.span_bound() - 1).into());
            }
        }
        Ok(Cocommutator {
            ctx: ctx.clone(),
            basis,
            values,
        })
    }

    pub fn zero(ctx: &Context, basis: Basis) -> Self {
        let values = vec![Bivector::zero(ctx); basis.len()];
        Cocommutator {
            ctx: ctx.clone(),
            basis,
            values,
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn values(&self) -> &[Bivector] {
        &self.values
    }

    pub fn get(&self, i: usize) -> &Bivector {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Bivector::is_zero)
    }

    /// `δ(x)` for a general element.
    pub fn apply(&self, x: &SparseVec) -> Bivector {
        let mut out = Bivector::zero(&self.ctx);
        for (i, c) in x {
            out = out.add(&self.values[*i].scale(c));
        }
        out
    }

    pub fn add(&self, other: &Cocommutator) -> Cocommutator {
        Cocommutator {
            ctx: self.ctx.clone(),
            basis: self.basis.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<Cocommutator, ScalarError> {
        Ok(Cocommutator {
            ctx: self.ctx.clone(),
            basis: self.basis.clone(),
            values: self.values.iter().map(|v| v.substitute(bindings)).collect::<Result<_, _>>()?,
        })
    }

    pub fn embed(&self, ctx: &Context) -> Result<Cocommutator, ScalarError> {
        Ok(Cocommutator {
            ctx: ctx.clone(),
            basis: self.basis.clone(),
            values: self.values.iter().map(|v| v.embed(ctx)).collect::<Result<_, _>>()?,
        })
    }
}

/// `δ(X_i) = [X_i ⊗ 1 + 1 ⊗ X_i, r]`.
pub fn coboundary_cocommutator(alg: &LieAlgebra, r: &Bivector) -> Cocommutator {
    Cocommutator {
        ctx: alg.context().clone(),
        basis: alg.basis().clone(),
        values: (0..alg.dim()).map(|i| ad_on_bivector(alg, i, r)).collect(),
    }
}

/// For `i < j`: `δ([X_i,X_j]) − ad_i δ(X_j) + ad_j δ(X_i)`, nonzero entries only.
pub fn cocycle_defect(alg: &LieAlgebra, delta: &Cocommutator) -> Vec<((usize, usize), Bivector)> {
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let lhs = delta.apply(&alg.bracket_basis(i, j));
            let minus_one = -Scalar::one(alg.context());
            let d = lhs
                .add(&ad_on_bivector(alg, i, delta.get(j)).scale(&minus_one))
                .add(&ad_on_bivector(alg, j, delta.get(i)));
            if !d.is_zero() {
                out.push(((i, j), d));
            }
        }
    }
    out
}

/// The transpose of `δ` as a bracket on the dual basis, without checking Jacobi:
/// `[x̂^a, x̂^b]_* = Σ_c d_c^{ab} x̂^c` where `d_c^{ab}` is the `X_a ∧ X_b`
/// coefficient of `δ(X_c)`.
pub fn transpose_bracket(delta: &Cocommutator) -> LieAlgebra {
    let mut alg = LieAlgebra::abelian(&delta.ctx, dual_basis(&delta.basis));
    let n = delta.dim();
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for (c, v) in delta.values.iter().enumerate() {
        for (&(a, b), d) in v.components() {
            table[a][b].insert(c, d.clone());
        }
    }
    for (a, row) in table.into_iter().enumerate() {
        for (b, v) in row.into_iter().enumerate() {
            if !v.is_empty() {
                alg.set_bracket(a, b, v).expect("each pair set once");
            }
        }
    }
    alg
}

/// Transpose bracket, rejected unless it satisfies Jacobi (co-Jacobi of `δ`).
pub fn dual_bracket(delta: &Cocommutator) -> Result<LieAlgebra, BialgebraError> {
    let alg = transpose_bracket(delta);
    if let Some((&(i, j, k), v)) = alg.jacobi_defect().iter().next() {
        let (&c, value) = v.iter().next().expect("nonzero defect");
        let names = alg.basis();
        return Err(BialgebraError::CoJacobi {
            x: names.name(i).to_string(),
            y: names.name(j).to_string(),
            w: names.name(k).to_string(),
            component: names.name(c).to_string(),
            value: value.to_string(),
        });
    }
    Ok(alg)
}

/// `δ*(x̂^c) = Σ_{a<b} c_ab^c x̂^a ∧ x̂^b` on the dual basis.
pub fn dual_cocommutator(alg: &LieAlgebra) -> Cocommutator {
    let ctx = alg.context();
    let mut values = vec![Bivector::zero(ctx); alg.dim()];
    for (&(a, b), v) in alg.structure() {
        for (c, coeff) in v {
            values[*c].add_wedge(a, b, coeff);
        }
    }
    Cocommutator {
        ctx: ctx.clone(),
        basis: dual_basis(alg.basis()),
        values,
    }
}

/// A Lie algebra with a cocommutator satisfying the cocycle and co-Jacobi identities.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBialgebra {
    algebra: LieAlgebra,
    cocommutator: Cocommutator,
}

impl LieBialgebra {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn cocommutator(&self) -> &Cocommutator {
        &self.cocommutator
    }

    /// `(g*, [·,·]_*, δ*)`.
    pub fn dual(&self) -> Result<LieBialgebra, BialgebraError> {
        let dual_alg = dual_bracket(&self.cocommutator)?;
        let dual_delta = dual_cocommutator(&self.algebra);
        make_bialgebra(dual_alg, dual_delta)
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<LieBialgebra, BialgebraError> {
        make_bialgebra(
            self.algebra.substitute(bindings)?,
            self.cocommutator.substitute(bindings)?,
        )
    }
}

pub fn make_bialgebra(alg: LieAlgebra, delta: Cocommutator) -> Result<LieBialgebra, BialgebraError> {
    if delta.basis() != alg.basis() {
        return Err(BialgebraError::BasisMismatch);
    }
    if delta.context() != alg.context() {
        return Err(mismatch(delta.context(), alg.context()));
    }
    if let Some(((i, j), d)) = cocycle_defect(&alg, &delta).into_iter().next() {
        let (&(a, b), v) = d.components().iter().next().expect("nonzero defect");
        let names = alg.basis();
        return Err(BialgebraError::Cocycle {
            x: names.name(i).to_string(),
            y: names.name(j).to_string(),
            a: names.name(a).to_string(),
            b: names.name(b).to_string(),
            value: v.to_string(),
        });
    }
    dual_bracket(&delta)?;
    Ok(LieBialgebra {
        algebra: alg,
        cocommutator: delta,
    })
}
