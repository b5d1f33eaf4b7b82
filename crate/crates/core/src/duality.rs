//! Coisotropy, coreductivity and cosymmetry of a cocommutator relative to a
//! splitting `g = h ⊕ t`, the induced splitting of the dual, and the linear
//! analysis of these conditions over a generic coboundary.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bialgebra::{coboundary_cocommutator, dual_bracket, BialgebraError, Cocommutator, LieBialgebra};
use crate::lie::{LieAlgebra, LieError, SubalgebraSplitting};
use crate::linalg::{rref, Matrix, Rref};
use crate::scalar::{Bindings, Context, Scalar, ScalarError};
use crate::tensor::{Bivector, Block};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualityError {
    #[error("internal error: {condition} is {primal} on the algebra but {dual} on the dual")]
    CrossCheck {
        condition: Condition,
        primal: bool,
        dual: bool,
    },
    #[error("support pair ({0}, {1}) is not two distinct generators")]
    BadSupport(usize, usize),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Bialgebra(Box<BialgebraError>),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<BialgebraError> for DualityError {
    fn from(e: BialgebraError) -> Self {
        DualityError::Bialgebra(Box::new(e))
    }
}

/// `(generator, component)` key and its coefficients over the support.
pub type EquationRow = ((usize, (usize, usize)), Vec<Scalar>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Coisotropy,
    Coreductivity,
    Cosymmetry,
    /// Coisotropy and coreductivity together.
    CoisotropyCoreductivity,
}

impl Condition {
    pub const ALL: [Condition; 4] = [
        Condition::Coisotropy,
        Condition::Coreductivity,
        Condition::Cosymmetry,
        Condition::CoisotropyCoreductivity,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::Coisotropy => "coisotropy",
            Condition::Coreductivity => "coreductivity",
            Condition::Cosymmetry => "cosymmetry",
            Condition::CoisotropyCoreductivity => "coisotropy+coreductivity",
        }
    }

    /// `(generator in h?, block)` pairs that must vanish.
    fn blocks(self) -> &'static [(bool, Block)] {
        match self {
            Condition::Coisotropy => &[(true, Block::TT)],
            Condition::Coreductivity => &[(false, Block::HT)],
            Condition::Cosymmetry => &[(true, Block::HH), (true, Block::TT)],
            Condition::CoisotropyCoreductivity => &[(true, Block::TT), (false, Block::HT)],
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A nonzero component of `δ(X_generator)` inside a block that must vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct Offending {
    pub condition: Condition,
    pub generator: usize,
    pub block: Block,
    pub component: (usize, usize),
    pub value: Scalar,
}

fn require_subalgebra(alg: &LieAlgebra, s: &SubalgebraSplitting) -> Result<(), LieError> {
    // reductive_check validates dimension and closure of h.
    alg.reductive_check(s).map(|_| ())
}

fn offending(delta: &Cocommutator, s: &SubalgebraSplitting, condition: Condition) -> Vec<Offending> {
    let mut out = Vec::new();
    for &(on_h, block) in condition.blocks() {
        let gens = if on_h { s.h() } else { s.t() };
        for &g in gens {
            for (&component, value) in delta.get(g).block(s, block) {
                out.push(Offending {
                    condition,
                    generator: g,
                    block,
                    component,
                    value: value.clone(),
                });
            }
        }
    }
    out
}

fn check(
    alg: &LieAlgebra,
    delta: &Cocommutator,
    s: &SubalgebraSplitting,
    condition: Condition,
) -> Result<Vec<Offending>, DualityError> {
    require_subalgebra(alg, s)?;
    if delta.dim() != alg.dim() {
        return Err(LieError::DimensionMismatch {
            expected: alg.dim(),
            found: delta.dim(),
        }
        .into());
    }
    Ok(offending(delta, s, condition))
}

/// `δ(h) ⊆ h ∧ g`: no `t∧t` component in `δ` of any `h` generator.
pub fn coisotropy_check(
    alg: &LieAlgebra,
    delta: &Cocommutator,
    s: &SubalgebraSplitting,
) -> Result<(bool, Vec<Offending>), DualityError> {
    let o = check(alg, delta, s, Condition::Coisotropy)?;
    Ok((o.is_empty(), o))
}

/// `δ(t) ⊆ h∧h ⊕ t∧t`: no `h∧t` component in `δ` of any `t` generator.
pub fn coreductivity_check(
    alg: &LieAlgebra,
    delta: &Cocommutator,
    s: &SubalgebraSplitting,
) -> Result<(bool, Vec<Offending>), DualityError> {
    let o = check(alg, delta, s, Condition::Coreductivity)?;
    Ok((o.is_empty(), o))
}

/// `δ(h) ⊆ h ∧ t`: neither `h∧h` nor `t∧t` components in `δ(h)`.
pub fn cosymmetry_check(
    alg: &LieAlgebra,
    delta: &Cocommutator,
    s: &SubalgebraSplitting,
) -> Result<(bool, Vec<Offending>), DualityError> {
    let o = check(alg, delta, s, Condition::Cosymmetry)?;
    Ok((o.is_empty(), o))
}

/// Splitting of `g*` into the annihilator `h⊥` (duals of `t`) and `t⊥` (duals of `h`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSplitting {
    splitting: SubalgebraSplitting,
}

impl DualSplitting {
    pub fn h_perp(&self) -> &[usize] {
        self.splitting.h()
    }

    pub fn t_perp(&self) -> &[usize] {
        self.splitting.t()
    }

    /// As a splitting of the dual algebra, with `h = h⊥`, `t = t⊥`.
    pub fn as_splitting(&self) -> &SubalgebraSplitting {
        &self.splitting
    }
}

pub fn dual_splitting(s: &SubalgebraSplitting) -> DualSplitting {
    DualSplitting {
        splitting: s.swapped(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionVerdict {
    pub coisotropic: bool,
    pub coreductive: bool,
    pub cosymmetric: bool,
    pub offending: Vec<Offending>,
}

/// Bracket inclusions on the dual algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualInclusions {
    /// `[h⊥, h⊥]_* ⊆ h⊥`
    pub h_perp_closed: bool,
    /// `[h⊥, t⊥]_* ⊆ t⊥`
    pub mixed_in_t_perp: bool,
    /// `[t⊥, t⊥]_* ⊆ h⊥`
    pub t_perp_in_h_perp: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub verdict: ConditionVerdict,
    pub dual_algebra: LieAlgebra,
    pub dual_splitting: DualSplitting,
    pub inclusions: DualInclusions,
}

fn brackets_within(alg: &LieAlgebra, xs: &[usize], ys: &[usize], target: &dyn Fn(usize) -> bool) -> bool {
    xs.iter()
        .all(|&a| ys.iter().all(|&b| alg.bracket_basis(a, b).keys().all(|&k| target(k))))
}

pub fn dual_inclusions(dual: &LieAlgebra, ds: &DualSplitting) -> DualInclusions {
    let s = ds.as_splitting();
    let in_hp = |k: usize| s.in_h(k);
    let in_tp = |k: usize| s.in_t(k);
    DualInclusions {
        h_perp_closed: brackets_within(dual, ds.h_perp(), ds.h_perp(), &in_hp),
        mixed_in_t_perp: brackets_within(dual, ds.h_perp(), ds.t_perp(), &in_tp),
        t_perp_in_h_perp: brackets_within(dual, ds.t_perp(), ds.t_perp(), &in_hp),
    }
}

/// All three checks, cross-checked against bracket inclusions on the dual.
/// Cosymmetry corresponds to `[h⊥,h⊥]_* ⊆ h⊥` together with `[t⊥,t⊥]_* ⊆ h⊥`.
pub fn classify(b: &LieBialgebra, s: &SubalgebraSplitting) -> Result<Classification, DualityError> {
    let alg = b.algebra();
    let delta = b.cocommutator();
    let (coisotropic, mut off) = coisotropy_check(alg, delta, s)?;
    let (coreductive, o2) = coreductivity_check(alg, delta, s)?;
    let (cosymmetric, o3) = cosymmetry_check(alg, delta, s)?;
    off.extend(o2);
    off.extend(o3);
    let dual_algebra = dual_bracket(delta)?;
    let ds = dual_splitting(s);
    let inc = dual_inclusions(&dual_algebra, &ds);
    let pairs = [
        (Condition::Coisotropy, coisotropic, inc.h_perp_closed),
        (Condition::Coreductivity, coreductive, inc.mixed_in_t_perp),
        (
            Condition::Cosymmetry,
            cosymmetric,
            inc.h_perp_closed && inc.t_perp_in_h_perp,
        ),
    ];
    for (condition, primal, dual) in pairs {
        if primal != dual {
            return Err(DualityError::CrossCheck { condition, primal, dual });
        }
    }
    Ok(Classification {
        verdict: ConditionVerdict {
            coisotropic,
            coreductive,
            cosymmetric,
            offending: off,
        },
        dual_algebra,
        dual_splitting: ds,
        inclusions: inc,
    })
}

/// Result of re-reducing a condition's constraints at fixed parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialEvaluation {
    pub bindings: Bindings,
    /// `Err` holds the reason the substitution is undefined.
    pub outcome: Result<SpecialOutcome, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialOutcome {
    pub rank: usize,
    pub solution_dim: usize,
    pub forced_zero: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionSystem {
    pub condition: Condition,
    /// Raw constraint rows: one per `(generator, component)` that must vanish.
    pub equations: Vec<EquationRow>,
    pub reduced: Rref,
    /// Admissible coefficient vectors over the support.
    pub solution_basis: Matrix,
    pub genericity: Vec<Scalar>,
    /// Support pairs forced to zero, when the admissible space is exactly the
    /// vanishing locus of some coefficients.
    pub forced_zero: Option<Vec<(usize, usize)>>,
    pub special: Vec<SpecialEvaluation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenericRSystem {
    pub support: Vec<(usize, usize)>,
    /// Fresh parameter name for each support pair.
    pub parameters: Vec<String>,
    pub systems: Vec<ConditionSystem>,
}

impl GenericRSystem {
    pub fn system(&self, c: Condition) -> &ConditionSystem {
        self.systems.iter().find(|s| s.condition == c).expect("all conditions present")
    }
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_alphanumeric() { c } else { '_' })
        .collect()
}

/// `r_<x>_<y>` for each pair, deduplicated against the context and each other.
pub fn fresh_parameter_names(alg: &LieAlgebra, support: &[(usize, usize)]) -> Vec<String> {
    let mut taken: Vec<String> = alg.context().names().to_vec();
    let mut out = Vec::new();
    for &(a, b) in support {
        let base = format!(
            "r_{}_{}",
            sanitize(alg.basis().name(a)),
            sanitize(alg.basis().name(b))
        );
        let mut name = base.clone();
        let mut k = 1;
        while taken.contains(&name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        taken.push(name.clone());
        out.push(name);
    }
    out
}

/// Pairs normalized to `i < j`, duplicates removed, order kept.
pub fn normalize_support(dim: usize, support: &[(usize, usize)]) -> Result<Vec<(usize, usize)>, DualityError> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in support {
        if a == b || a >= dim || b >= dim {
            return Err(DualityError::BadSupport(a, b));
        }
        let p = (a.min(b), a.max(b));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn full_support(dim: usize) -> Vec<(usize, usize)> {
    (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect()
}

/// `δ_r` for `r = Σ r_p X_a ∧ X_b` over the context extended by one fresh
/// parameter per support pair.
pub fn generic_cocommutator(
    alg: &LieAlgebra,
    support: &[(usize, usize)],
) -> Result<(Context, Cocommutator), DualityError> {
    let support = normalize_support(alg.dim(), support)?;
    let names = fresh_parameter_names(alg, &support);
    let ctx = alg.context().extend(names.iter().map(String::as_str))?;
    let big = alg.embed(&ctx)?;
    let mut r = Bivector::zero(&ctx);
    for (&(a, b), n) in support.iter().zip(&names) {
        r.add_wedge(a, b, &Scalar::param(&ctx, n)?);
    }
    Ok((ctx, coboundary_cocommutator(&big, &r)))
}

fn reduce_special(
    ctx: &Context,
    equations: &[EquationRow],
    support: &[(usize, usize)],
    bindings: &Bindings,
) -> Result<SpecialOutcome, String> {
    let m = equations
        .iter()
        .map(|(_, row)| row.iter().map(|v| v.substitute(bindings)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Matrix, _>>()
        .map_err(|e| e.to_string())?;
    let red = rref(ctx, m, support.len());
    Ok(SpecialOutcome {
        rank: red.rank(),
        solution_dim: support.len() - red.rank(),
        forced_zero: red.forced_zero().map(|cols| cols.iter().map(|&c| support[c]).collect()),
    })
}

/// Linear constraints on `r = Σ_{p ∈ support} r_p X_a ∧ X_b` imposed by each
/// condition on `δ_r`, reduced over the field of rational functions in the
/// base parameters, and re-reduced at each special binding.
pub fn generic_r_analysis(
    alg: &LieAlgebra,
    s: &SubalgebraSplitting,
    support: &[(usize, usize)],
    special: &[Bindings],
) -> Result<GenericRSystem, DualityError> {
    require_subalgebra(alg, s)?;
    let support = normalize_support(alg.dim(), support)?;
    let ctx = alg.context();
    for b in special {
        for name in b.keys() {
            if ctx.index_of(name).is_none() {
                return Err(ScalarError::UnknownParameter(name.clone()).into());
            }
        }
    }
    let parameters = fresh_parameter_names(alg, &support);
    // δ_r is linear in r: column p is the coboundary of X_a ∧ X_b.
    let columns: Vec<Cocommutator> = support
        .iter()
        .map(|&(a, b)| {
            let mut w = Bivector::zero(ctx);
            w.add_wedge(a, b, &Scalar::one(ctx));
            coboundary_cocommutator(alg, &w)
        })
        .collect();
    let mut systems = Vec::new();
    for condition in Condition::ALL {
        let mut rows: BTreeMap<(usize, (usize, usize)), Vec<Scalar>> = BTreeMap::new();
        for (col, delta) in columns.iter().enumerate() {
            for o in offending(delta, s, condition) {
                rows.entry((o.generator, o.component))
                    .or_insert_with(|| vec![Scalar::zero(ctx); support.len()])[col] = o.value;
            }
        }
        let equations: Vec<_> = rows.into_iter().collect();
        let reduced = rref(ctx, equations.iter().map(|(_, r)| r.clone()).collect(), support.len());
        let solution_basis = reduced.nullspace(ctx);
        let forced_zero = reduced
            .forced_zero()
            .map(|cols| cols.iter().map(|&c| support[c]).collect());
        let special = special
            .iter()
            .map(|b| SpecialEvaluation {
                bindings: b.clone(),
                outcome: reduce_special(ctx, &equations, &support, b),
            })
            .collect();
        systems.push(ConditionSystem {
            condition,
            genericity: reduced.conditions.clone(),
            equations,
            reduced,
            solution_basis,
            forced_zero,
            special,
        });
    }
    Ok(GenericRSystem {
        support,
        parameters,
        systems,
    })
}
