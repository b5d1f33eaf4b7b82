//! Bivectors and trivectors over a Lie algebra basis.
//!
//! Wedge convention: `x ∧ y = x ⊗ y − y ⊗ x`, with no 1/2. A bivector stores
//! `r^{ij}` for `i < j` and stands for `Σ r^{ij} X_i ∧ X_j`, so the
//! `X_i ⊗ X_j` tensor component equals `r^{ij}`. A trivector stores, for each
//! strictly increasing triple, the `X_i ⊗ X_j ⊗ X_k` component of a fully
//! antisymmetric 3-tensor.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lie::{LieAlgebra, SparseVec, SubalgebraSplitting};
use crate::scalar::{Bindings, Context, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("internal error: Schouten bracket not antisymmetric at {0:?}")]
    NotAntisymmetric((usize, usize, usize)),
}

fn add_to<K: Ord + Copy>(map: &mut BTreeMap<K, Scalar>, key: K, v: &Scalar) {
    if v.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            *e = &*e + v;
            if e.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, v.clone());
        }
    }
}

/// Which of the three blocks `h∧h`, `h∧t`, `t∧t` a bivector component sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    HH,
    HT,
    TT,
}

impl Block {
    pub fn of(s: &SubalgebraSplitting, i: usize, j: usize) -> Block {
        match (s.in_h(i), s.in_h(j)) {
            (true, true) => Block::HH,
            (false, false) => Block::TT,
            _ => Block::HT,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Block::HH => "hh",
            Block::HT => "ht",
            Block::TT => "tt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlockProfile {
    pub hh: bool,
    pub ht: bool,
    pub tt: bool,
}

impl BlockProfile {
    pub fn has(&self, b: Block) -> bool {
        match b {
            Block::HH => self.hh,
            Block::HT => self.ht,
            Block::TT => self.tt,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    ctx: Context,
    comps: BTreeMap<(usize, usize), Scalar>,
}

impl Bivector {
    pub fn zero(ctx: &Context) -> Self {
        Bivector {
            ctx: ctx.clone(),
            comps: BTreeMap::new(),
        }
    }

    /// Sum of `c · X_a ∧ X_b`; pairs may come in either order and repeat.
    pub fn from_terms(ctx: &Context, terms: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut b = Bivector::zero(ctx);
        for (a, c, v) in terms {
            b.add_wedge(a, c, &v);
        }
        b
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Nonzero components `r^{ij}`, `i < j`.
    pub fn components(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Coefficient of `X_i ∧ X_j` (antisymmetric in the arguments).
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Scalar::zero(&self.ctx),
            Less => self.comps.get(&(i, j)).cloned().unwrap_or_else(|| Scalar::zero(&self.ctx)),
            Greater => self
                .comps
                .get(&(j, i))
                .map(|v| -v)
                .unwrap_or_else(|| Scalar::zero(&self.ctx)),
        }
    }

    /// Adds `c · X_a ∧ X_b`.
    pub fn add_wedge(&mut self, a: usize, b: usize, c: &Scalar) {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => {}
            Less => add_to(&mut self.comps, (a, b), c),
            Greater => add_to(&mut self.comps, (b, a), &-c),
        }
    }

    /// Adds `c · x ∧ y` for vectors `x`, `y`.
    pub fn add_wedge_vectors(&mut self, x: &SparseVec, y: &SparseVec, c: &Scalar) {
        for (a, xa) in x {
            for (b, yb) in y {
                if a != b {
                    self.add_wedge(*a, *b, &(&(c * xa) * yb));
                }
            }
        }
    }

    pub fn add(&self, other: &Bivector) -> Bivector {
        let mut out = self.clone();
        for ((i, j), v) in &other.comps {
            add_to(&mut out.comps, (*i, *j), v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Bivector {
        if c.is_zero() {
            return Bivector::zero(&self.ctx);
        }
        Bivector {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<Bivector, ScalarError> {
        let mut out = Bivector::zero(&self.ctx);
        for ((i, j), v) in &self.comps {
            out.add_wedge(*i, *j, &v.substitute(bindings)?);
        }
        Ok(out)
    }

    pub fn embed(&self, ctx: &Context) -> Result<Bivector, ScalarError> {
        let mut out = Bivector::zero(ctx);
        for ((i, j), v) in &self.comps {
            out.add_wedge(*i, *j, &v.embed(ctx)?);
        }
        Ok(out)
    }

    /// Components restricted to one block of a splitting.
    pub fn block<'a>(&'a self, s: &'a SubalgebraSplitting, block: Block) -> impl Iterator<Item = (&'a (usize, usize), &'a Scalar)> + 'a {
        self.comps
            .iter()
            .filter(move |((i, j), _)| Block::of(s, *i, *j) == block)
    }

    /// Largest basis index referenced plus one (0 for the zero bivector).
    pub fn span_bound(&self) -> usize {
        self.comps.keys().map(|&(_, j)| j + 1).max().unwrap_or(0)
    }
}

/// `[X_i ⊗ 1 + 1 ⊗ X_i, b]`.
pub fn ad_on_bivector(alg: &LieAlgebra, i: usize, b: &Bivector) -> Bivector {
    let mut out = Bivector::zero(alg.context());
    let ei = SparseVec::from([(i, Scalar::one(alg.context()))]);
    for ((a, c), v) in b.components() {
        let ea = SparseVec::from([(*a, Scalar::one(alg.context()))]);
        let ec = SparseVec::from([(*c, Scalar::one(alg.context()))]);
        let ia = alg.bracket_sparse(&ei, &ea);
        let ic = alg.bracket_sparse(&ei, &ec);
        out.add_wedge_vectors(&ia, &ec, v);
        out.add_wedge_vectors(&ea, &ic, v);
    }
    out
}

/// Extended adjoint action of a general element `x`.
pub fn ad_element_on_bivector(alg: &LieAlgebra, x: &SparseVec, b: &Bivector) -> Bivector {
    let mut out = Bivector::zero(alg.context());
    for (i, c) in x {
        out = out.add(&ad_on_bivector(alg, *i, b).scale(c));
    }
    out
}

pub fn block_profile(b: &Bivector, s: &SubalgebraSplitting) -> BlockProfile {
    let mut p = BlockProfile::default();
    for &(i, j) in b.components().keys() {
        match Block::of(s, i, j) {
            Block::HH => p.hh = true,
            Block::HT => p.ht = true,
            Block::TT => p.tt = true,
        }
    }
    p
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trivector {
    ctx: Context,
    comps: BTreeMap<(usize, usize, usize), Scalar>,
}

/// Sorts three distinct indices, returning the permutation sign.
fn sort3(a: usize, b: usize, c: usize) -> Option<((usize, usize, usize), bool)> {
    if a == b || b == c || a == c {
        return None;
    }
    let mut v = [a, b, c];
    let mut odd = false;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    Some(((v[0], v[1], v[2]), odd))
}

impl Trivector {
    pub fn zero(ctx: &Context) -> Self {
        Trivector {
            ctx: ctx.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize, usize), Scalar> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Full-tensor component at any index triple.
    pub fn get(&self, a: usize, b: usize, c: usize) -> Scalar {
        match sort3(a, b, c) {
            None => Scalar::zero(&self.ctx),
            Some((key, odd)) => {
                let v = self.comps.get(&key).cloned().unwrap_or_else(|| Scalar::zero(&self.ctx));
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Adds `c` times the antisymmetrization of `X_a ⊗ X_b ⊗ X_c`.
    pub fn add_alt(&mut self, a: usize, b: usize, c: usize, v: &Scalar) {
        if let Some((key, odd)) = sort3(a, b, c) {
            add_to(&mut self.comps, key, &if odd { -v } else { v.clone() });
        }
    }
}

/// `[[r, r]] = [r_12, r_13] + [r_12, r_23] + [r_13, r_23]`, expanded literally
/// in the triple tensor power.
pub fn schouten_square(alg: &LieAlgebra, r: &Bivector) -> Result<Trivector, TensorError> {
    let ctx = alg.context();
    // Full antisymmetric matrix of r.
    let mut full: Vec<(usize, usize, Scalar)> = Vec::new();
    for ((i, j), v) in r.components() {
        full.push((*i, *j, v.clone()));
        full.push((*j, *i, -v));
    }
    let mut t: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for (a, b, rab) in &full {
        for (c, d, rcd) in &full {
            let coeff = rab * rcd;
            // [r_12, r_13]: [X_a, X_c] ⊗ X_b ⊗ X_d
            for (k, v) in alg.bracket_basis(*a, *c) {
                add_to(&mut t, (k, *b, *d), &(&coeff * &v));
            }
            // [r_12, r_23]: X_a ⊗ [X_b, X_c] ⊗ X_d
            for (k, v) in alg.bracket_basis(*b, *c) {
                add_to(&mut t, (*a, k, *d), &(&coeff * &v));
            }
            // [r_13, r_23]: X_a ⊗ X_c ⊗ [X_b, X_d]
            for (k, v) in alg.bracket_basis(*b, *d) {
                add_to(&mut t, (*a, *c, k), &(&coeff * &v));
            }
        }
    }
    let mut out = Trivector::zero(ctx);
    for (&(a, b, c), v) in &t {
        match sort3(a, b, c) {
            None => return Err(TensorError::NotAntisymmetric((a, b, c))),
            Some((key, odd)) => {
                let expect = if odd { -v } else { v.clone() };
                let (x, y, z) = key;
                let perms = [(x, y, z, false), (y, z, x, false), (z, x, y, false), (y, x, z, true), (x, z, y, true), (z, y, x, true)];
                for (p, q, s, flip) in perms {
                    let got = t.get(&(p, q, s)).cloned().unwrap_or_else(|| Scalar::zero(ctx));
                    let want = if flip { -&expect } else { expect.clone() };
                    if got != want {
                        return Err(TensorError::NotAntisymmetric((a, b, c)));
                    }
                }
                if !odd {
                    out.comps.insert(key, v.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Components of `(ad_{X_i} ⊗ 1 ⊗ 1 + 1 ⊗ ad_{X_i} ⊗ 1 + 1 ⊗ 1 ⊗ ad_{X_i}) t`,
/// keyed by `(i, a, b, c)` with `a < b < c`. Empty iff `t` is ad-invariant.
pub fn ad_invariance_defect(alg: &LieAlgebra, t: &Trivector) -> BTreeMap<(usize, usize, usize, usize), Scalar> {
    let mut out = BTreeMap::new();
    for i in 0..alg.dim() {
        let mut acc = Trivector::zero(alg.context());
        for (&(a, b, c), v) in t.components() {
            for (k, w) in alg.bracket_basis(i, a) {
                acc.add_alt(k, b, c, &(v * &w));
            }
            for (k, w) in alg.bracket_basis(i, b) {
                acc.add_alt(a, k, c, &(v * &w));
            }
            for (k, w) in alg.bracket_basis(i, c) {
                acc.add_alt(a, b, k, &(v * &w));
            }
        }
        for ((a, b, c), v) in acc.comps {
            out.insert((i, a, b, c), v);
        }
    }
    out
}
