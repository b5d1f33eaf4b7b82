//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Bindings, Context, Scalar, ScalarError};

/// Sparse coordinate vector: basis index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("empty generator name")]
    EmptyGenerator,
    #[error("bracket [{0}, {1}] given more than once")]
    DuplicateBracket(String, String),
    #[error("bracket of `{0}` with itself must vanish")]
    SelfBracket(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("span of {0:?} is not a subalgebra")]
    NotSubalgebra(Vec<String>),
    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Ordered list of unique generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    names: Vec<String>,
}

impl Basis {
    pub fn new<I, S>(names: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if n.is_empty() {
                return Err(LieError::EmptyGenerator);
            }
            if out.contains(&n) {
                return Err(LieError::DuplicateGenerator(n));
            }
            out.push(n);
        }
        Ok(Basis { names: out })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, LieError> {
        self.index_of(name)
            .ok_or_else(|| LieError::UnknownGenerator(name.to_string()))
    }
}

/// Adds `c * x` into `acc`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, c: &Scalar, x: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, v) in x {
        add_entry(acc, *k, &(c * v));
    }
}

pub fn add_entry(acc: &mut SparseVec, k: usize, v: &Scalar) {
    if v.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(e) => {
            *e = &*e + v;
            if e.is_zero() {
                acc.remove(&k);
            }
        }
        None => {
            acc.insert(k, v.clone());
        }
    }
}

pub fn to_dense(ctx: &Context, dim: usize, x: &SparseVec) -> Vec<Scalar> {
    (0..dim)
        .map(|i| x.get(&i).cloned().unwrap_or_else(|| Scalar::zero(ctx)))
        .collect()
}

pub fn from_dense(x: &[Scalar]) -> SparseVec {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Lie algebra over the scalar ring with only `[X_i, X_j]`, `i < j`, stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    ctx: Context,
    basis: Basis,
    structure: BTreeMap<(usize, usize), SparseVec>,
}

impl LieAlgebra {
    /// The abelian algebra on `basis`.
    pub fn abelian(ctx: &Context, basis: Basis) -> Self {
        LieAlgebra {
            ctx: ctx.clone(),
            basis,
            structure: BTreeMap::new(),
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

    /// Nonzero brackets `[X_i, X_j]` with `i < j`.
    pub fn structure(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.structure
    }

    fn check_index(&self, i: usize) -> Result<(), LieError> {
        if i < self.dim() {
            Ok(())
        } else {
            Err(LieError::IndexOutOfRange(i))
        }
    }

    /// Declares `[X_i, X_j] = value`. Each unordered pair may be set once.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVec) -> Result<(), LieError> {
        self.check_index(i)?;
        self.check_index(j)?;
        for (k, v) in &value {
            self.check_index(*k)?;
            if v.context() != &self.ctx {
                return Err(ScalarError::ContextMismatch(
                    self.ctx.names().to_vec(),
                    v.context().names().to_vec(),
                )
                .into());
            }
        }
        let value: SparseVec = value.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if i == j {
            if value.is_empty() {
                return Ok(());
            }
            return Err(LieError::SelfBracket(self.basis.name(i).to_string()));
        }
        let (key, value) = if i < j {
            ((i, j), value)
        } else {
            ((j, i), value.into_iter().map(|(k, v)| (k, -v)).collect())
        };
        if self.structure.contains_key(&key) {
            return Err(LieError::DuplicateBracket(
                self.basis.name(i).to_string(),
                self.basis.name(j).to_string(),
            ));
        }
        if !value.is_empty() {
            self.structure.insert(key, value);
        }
        Ok(())
    }

    /// Name-based convenience wrapper around [`set_bracket`](Self::set_bracket).
    pub fn with_bracket(mut self, x: &str, y: &str, terms: &[(&str, Scalar)]) -> Result<Self, LieError> {
        let i = self.basis.require(x)?;
        let j = self.basis.require(y)?;
        let mut value = SparseVec::new();
        for (g, c) in terms {
            add_entry(&mut value, self.basis.require(g)?, c);
        }
        self.set_bracket(i, j, value)?;
        Ok(self)
    }

    /// `[X_i, X_j]` with antisymmetric completion.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => SparseVec::new(),
            Less => self.structure.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .structure
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    /// Coefficient of `X_k` in `[X_i, X_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket_basis(i, j)
            .remove(&k)
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                if i == j {
                    continue;
                }
                let br = self.bracket_basis(*i, *j);
                if !br.is_empty() {
                    axpy(&mut out, &(a * b), &br);
                }
            }
        }
        out
    }

    /// `[x, y]` in coordinates.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>, LieError> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        let r = self.bracket_sparse(&from_dense(x), &from_dense(y));
        Ok(to_dense(&self.ctx, self.dim(), &r))
    }

    /// `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]` for `i < j < k`,
    /// nonzero components only.
    pub fn jacobi_defect(&self) -> BTreeMap<(usize, usize, usize), SparseVec> {
        let n = self.dim();
        let mut out = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |a: usize| SparseVec::from([(a, Scalar::one(&self.ctx))]);
                    let mut acc = SparseVec::new();
                    let one = Scalar::one(&self.ctx);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.bracket_basis(a, b);
                        axpy(&mut acc, &one, &self.bracket_sparse(&ab, &e(c)));
                    }
                    if !acc.is_empty() {
                        out.insert((i, j, k), acc);
                    }
                }
            }
        }
        out
    }

    /// True iff the span of `indices` is closed under the bracket.
    pub fn is_subalgebra(&self, indices: &[usize]) -> bool {
        let inside = |k: &usize| indices.contains(k);
        indices.iter().all(|&i| {
            indices
                .iter()
                .all(|&j| self.bracket_basis(i, j).keys().all(inside))
        })
    }

    fn require_subalgebra(&self, s: &SubalgebraSplitting) -> Result<(), LieError> {
        if s.dim() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: s.dim(),
            });
        }
        if self.is_subalgebra(s.h()) {
            Ok(())
        } else {
            Err(LieError::NotSubalgebra(
                s.h().iter().map(|&i| self.basis.name(i).to_string()).collect(),
            ))
        }
    }

    /// `[h, t] ⊆ t`.
    pub fn reductive_check(&self, s: &SubalgebraSplitting) -> Result<bool, LieError> {
        self.require_subalgebra(s)?;
        Ok(s.h().iter().all(|&i| {
            s.t()
                .iter()
                .all(|&j| self.bracket_basis(i, j).keys().all(|k| s.in_t(*k)))
        }))
    }

    /// Reductive and `[t, t] ⊆ h`.
    pub fn symmetric_check(&self, s: &SubalgebraSplitting) -> Result<bool, LieError> {
        if !self.reductive_check(s)? {
            return Ok(false);
        }
        Ok(s.t().iter().all(|&i| {
            s.t()
                .iter()
                .all(|&j| self.bracket_basis(i, j).keys().all(|k| s.in_h(*k)))
        }))
    }

    /// Matrix of `ad_{X_i}`: entry `[k][j]` is the `X_k` coefficient of `[X_i, X_j]`.
    pub fn adjoint_matrix(&self, i: usize) -> Result<Vec<Vec<Scalar>>, LieError> {
        self.check_index(i)?;
        let n = self.dim();
        let mut m = vec![vec![Scalar::zero(&self.ctx); n]; n];
        for j in 0..n {
            for (k, v) in self.bracket_basis(i, j) {
                m[k][j] = v;
            }
        }
        Ok(m)
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<LieAlgebra, LieError> {
        let mut structure = BTreeMap::new();
        for (key, v) in &self.structure {
            let mut w = SparseVec::new();
            for (k, c) in v {
                add_entry(&mut w, *k, &c.substitute(bindings)?);
            }
            if !w.is_empty() {
                structure.insert(*key, w);
            }
        }
        Ok(LieAlgebra {
            ctx: self.ctx.clone(),
            basis: self.basis.clone(),
            structure,
        })
    }

    /// The same algebra over a larger parameter context.
    pub fn embed(&self, ctx: &Context) -> Result<LieAlgebra, LieError> {
        let mut structure = BTreeMap::new();
        for (key, v) in &self.structure {
            let w = v
                .iter()
                .map(|(k, c)| Ok((*k, c.embed(ctx)?)))
                .collect::<Result<SparseVec, ScalarError>>()?;
            structure.insert(*key, w);
        }
        Ok(LieAlgebra {
            ctx: ctx.clone(),
            basis: self.basis.clone(),
            structure,
        })
    }

    /// Same structure constants under different generator names.
    pub fn renamed(&self, basis: Basis) -> Result<LieAlgebra, LieError> {
        if basis.len() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: basis.len(),
            });
        }
        Ok(LieAlgebra {
            ctx: self.ctx.clone(),
            basis,
            structure: self.structure.clone(),
        })
    }
}

/// Ordered decomposition of the basis indices into an isotropy block `h`
/// and a complement block `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraSplitting {
    h: Vec<usize>,
    t: Vec<usize>,
    in_h: Vec<bool>,
}

impl SubalgebraSplitting {
    pub fn new(h: Vec<usize>, t: Vec<usize>) -> Result<Self, LieError> {
        let dim = h.len() + t.len();
        let mut seen = vec![false; dim];
        let mut in_h = vec![false; dim];
        for (&i, is_h) in h.iter().map(|i| (i, true)).chain(t.iter().map(|i| (i, false))) {
            if i >= dim {
                return Err(LieError::InvalidSplitting(format!(
                    "index {i} outside 0..{dim}"
                )));
            }
            if seen[i] {
                return Err(LieError::InvalidSplitting(format!("index {i} repeated")));
            }
            seen[i] = true;
            in_h[i] = is_h;
        }
        Ok(SubalgebraSplitting { h, t, in_h })
    }

    pub fn from_names(basis: &Basis, h: &[&str], t: &[&str]) -> Result<Self, LieError> {
        let idx = |names: &[&str]| {
            names
                .iter()
                .map(|n| basis.require(n))
                .collect::<Result<Vec<_>, _>>()
        };
        let s = Self::new(idx(h)?, idx(t)?)?;
        if s.dim() != basis.len() {
            return Err(LieError::InvalidSplitting(format!(
                "covers {} of {} generators",
                s.dim(),
                basis.len()
            )));
        }
        Ok(s)
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.in_h.len()
    }

    pub fn in_h(&self, i: usize) -> bool {
        self.in_h[i]
    }

    pub fn in_t(&self, i: usize) -> bool {
        !self.in_h[i]
    }

    /// The same index sets with roles exchanged.
    pub fn swapped(&self) -> SubalgebraSplitting {
        SubalgebraSplitting::new(self.t.clone(), self.h.clone()).expect("valid by construction")
    }
}
