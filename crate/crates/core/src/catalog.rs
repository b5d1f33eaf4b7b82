//! Built-in Lorentzian algebras with their κ r-matrices, Lorentz splittings and
//! expected results.
//!
//! Basis order is translations, boosts, rotations. `ε_12 = 1` in 2+1 and
//! `ε_123 = 1` in 3+1. The 3+1 family is written with `η` where `Λ = −η²`.

use num_traits::Signed;

use crate::bialgebra::{
    cocycle_defect, coboundary_cocommutator, dual_bracket, dual_cocommutator, make_bialgebra, BialgebraError, Cocommutator,
    LieBialgebra,
};
use crate::duality::{classify, dual_splitting, full_support, generic_r_analysis, Condition};
use crate::geometry::{canonical_curvature, canonical_torsion, invariant_metric_space, ricci};
use crate::lie::{Basis, LieAlgebra, SparseVec, SubalgebraSplitting};
use crate::scalar::{Bindings, Context, Rational, Scalar};
use crate::tensor::{ad_invariance_defect, schouten_square, Bivector, Block};

/// Generator and its `(a, b, coeff)` wedge terms.
type GenWedges<'a> = (&'a str, &'a [(&'a str, &'a str, &'a str)]);
/// Bracket pair and its `(gen, coeff)` terms.
type DualRow<'a> = (&'a str, &'a str, &'a [(&'a str, &'a str)]);

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub algebra: LieAlgebra,
    pub r: Bivector,
    pub splitting: SubalgebraSplitting,
    /// Parameter values at which generic results must be re-evaluated.
    pub special: Vec<Bindings>,
    pub fixtures: Vec<Fixture>,
}

impl CatalogEntry {
    pub fn context(&self) -> &Context {
        self.algebra.context()
    }

    pub fn cocommutator(&self) -> Cocommutator {
        coboundary_cocommutator(&self.algebra, &self.r)
    }

    pub fn bialgebra(&self) -> Result<LieBialgebra, BialgebraError> {
        make_bialgebra(self.algebra.clone(), self.cocommutator())
    }
}

pub type Terms = Vec<(String, Scalar)>;
pub type WedgeTerms = Vec<(String, String, Scalar)>;

#[derive(Debug, Clone, PartialEq)]
pub enum Expectation {
    Bracket { x: String, y: String, value: Terms },
    JacobiHolds,
    RTerm { a: String, b: String, coeff: Scalar },
    /// Full value of `δ(gen)`.
    Cocommutator { gen: String, value: WedgeTerms },
    /// Full value of `[x, y]_*` on the dual basis.
    DualBracket { x: String, y: String, value: Terms },
    /// Full value of `δ*(gen)` on the dual basis.
    DualCocommutator { gen: String, value: WedgeTerms },
    /// A displayed `δ*(gen)` that differs from the transposed bracket and,
    /// substituted into `δ*`, breaks the cocycle identity for `[·,·]_*`.
    DisplayedDualNotCocycle { gen: String, displayed: WedgeTerms },
    Mcybe,
    Verdict { at: Bindings, coisotropic: bool, coreductive: bool, cosymmetric: bool },
    TorsionVanishes { at: Bindings },
    /// Exactly these `R(a, b) c` with `a` before `b` in index order are nonzero.
    Curvature { at: Bindings, nonzero: Vec<((String, String, String), Terms)> },
    Ricci { at: Bindings, nonzero: Vec<((String, String), Scalar)> },
    Metric { at: Bindings, verdict: &'static str },
    /// Over the support of all pairs outside `exclude`, the admissible r are
    /// exactly those whose coefficients in `blocks` vanish.
    GenericForcedZero { condition: Condition, exclude: Vec<Block>, blocks: Vec<Block> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub label: String,
    pub citation: &'static str,
    pub expect: Expectation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixtureResult {
    pub label: String,
    pub citation: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn lookup(id: &str) -> Option<CatalogEntry> {
    match id {
        "lorentzian-2+1" => Some(lorentzian_2plus1()),
        "lorentzian-3+1" => Some(lorentzian_3plus1()),
        _ => None,
    }
}

pub fn ids() -> [&'static str; 2] {
    ["lorentzian-2+1", "lorentzian-3+1"]
}

/// Maps a user binding onto `ctx`. On contexts written with `eta` instead of
/// `Lambda`, `Lambda = v` becomes `eta = √(−v)` and must be rational.
pub fn resolve_binding(ctx: &Context, name: &str, value: &Rational) -> Result<(String, Rational), String> {
    if ctx.index_of(name).is_some() {
        return Ok((name.to_string(), value.clone()));
    }
    if name == "Lambda" && ctx.index_of("eta").is_some() {
        return rational_sqrt(&-value)
            .map(|r| ("eta".to_string(), r))
            .ok_or_else(|| format!("Lambda = {value} has no rational eta with Lambda = -eta^2"));
    }
    Err(format!("unknown parameter `{name}`"))
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let r = Rational::new(q.numer().sqrt(), q.denom().sqrt());
    (&r * &r == *q).then_some(r)
}

fn sc(ctx: &Context, text: &str) -> Scalar {
    Scalar::parse(ctx, text).expect("catalog expression")
}

fn at(name: &str, v: i64) -> Bindings {
    Bindings::from([(name.to_string(), Rational::from_integer(v.into()))])
}

fn terms(ctx: &Context, t: &[(&str, &str)]) -> Terms {
    t.iter().map(|(g, c)| (g.to_string(), sc(ctx, c))).collect()
}

fn wedges(ctx: &Context, t: &[(&str, &str, &str)]) -> WedgeTerms {
    t.iter()
        .map(|(a, b, c)| (a.to_string(), b.to_string(), sc(ctx, c)))
        .collect()
}

fn fx(label: impl Into<String>, citation: &'static str, expect: Expectation) -> Fixture {
    Fixture {
        label: label.into(),
        citation,
        expect,
    }
}

fn bracket(alg: LieAlgebra, x: &str, y: &str, t: &[(&str, &str)]) -> LieAlgebra {
    let ctx = alg.context().clone();
    let value: Vec<(&str, Scalar)> = t.iter().map(|(g, c)| (*g, sc(&ctx, c))).collect();
    alg.with_bracket(x, y, &value).expect("catalog bracket")
}

const C21_BRACKETS: &str = "2+1 Lorentzian bracket family in the kinematical basis";
const C21_COCOMM: &str = "2+1 κ cocommutator from z(K1∧P1 + K2∧P2)";
const C21_DUAL: &str = "2+1 κ dual bracket table, including displayed zeros";
const C21_DUALCO: &str = "2+1 dual cocommutator transposed from the bracket family";
const C21_VERDICT: &str = "2+1 κ bialgebra is coisotropic, coreductive and cosymmetric";
const C21_GEOM: &str = "2+1 complementary dual: torsionless, curvature and Ricci of the canonical connection";
const C21_METRIC: &str = "2+1 complementary dual admits no invariant nondegenerate metric";
const GENERIC: &str = "generic Lorentzian r-matrix: coisotropy iff no t∧t part; then coreductivity iff no h∧h part";
const C31_BRACKETS: &str = "3+1 Lorentzian bracket family with Λ = −η²";
const C31_R: &str = "3+1 κ r-matrix including the η J1∧J2 term";
const C31_COCOMM: &str = "3+1 κ cocommutator with √(−Λ) = η";
const C31_DUAL: &str = "3+1 κ dual bracket on the translation duals (κ-Minkowski linear order)";
const C31_VERDICT: &str = "3+1 κ bialgebra: coisotropic always, coreductive only at Λ = 0";
const C31_GEOM: &str = "3+1 κ-Minkowski complementary dual is flat";
const MCYBE: &str = "κ r-matrices solve the modified classical Yang–Baxter equation";

pub fn lorentzian_2plus1() -> CatalogEntry {
    let ctx = Context::new(["Lambda", "z"]).expect("valid context");
    let basis = Basis::new(["P0", "P1", "P2", "K1", "K2", "J"]).expect("valid basis");
    let mut alg = LieAlgebra::abelian(&ctx, basis);
    for (x, y, t) in [
        ("J", "P1", &[("P2", "1")][..]),
        ("J", "P2", &[("P1", "-1")]),
        ("J", "K1", &[("K2", "1")]),
        ("J", "K2", &[("K1", "-1")]),
        ("P1", "K1", &[("P0", "-1")]),
        ("P2", "K2", &[("P0", "-1")]),
        ("P0", "K1", &[("P1", "-1")]),
        ("P0", "K2", &[("P2", "-1")]),
        ("K1", "K2", &[("J", "-1")]),
        ("P0", "P1", &[("K1", "-Lambda")]),
        ("P0", "P2", &[("K2", "-Lambda")]),
        ("P1", "P2", &[("J", "Lambda")]),
    ] {
        alg = bracket(alg, x, y, t);
    }
    let b = alg.basis().clone();
    let i = |n: &str| b.require(n).expect("catalog generator");
    let z = sc(&ctx, "z");
    let r = Bivector::from_terms(&ctx, [(i("K1"), i("P1"), z.clone()), (i("K2"), i("P2"), z)]);
    let splitting = SubalgebraSplitting::from_names(&b, &["K1", "K2", "J"], &["P0", "P1", "P2"]).expect("splitting");

    let mut fixtures = vec![
        fx(
            "[P0, K1] = -P1",
            C21_BRACKETS,
            Expectation::Bracket {
                x: "P0".into(),
                y: "K1".into(),
                value: terms(&ctx, &[("P1", "-1")]),
            },
        ),
        fx(
            "[K1, K2] = -J",
            C21_BRACKETS,
            Expectation::Bracket {
                x: "K1".into(),
                y: "K2".into(),
                value: terms(&ctx, &[("J", "-1")]),
            },
        ),
        fx("Jacobi identity", C21_BRACKETS, Expectation::JacobiHolds),
        fx("mCYBE for z(K1∧P1 + K2∧P2)", MCYBE, Expectation::Mcybe),
    ];
    let cocomm: [GenWedges; 6] = [
        ("P0", &[]),
        ("P1", &[("P1", "P0", "z"), ("K2", "J", "z*Lambda")]),
        ("P2", &[("P2", "P0", "z"), ("K1", "J", "-z*Lambda")]),
        ("K1", &[("K1", "P0", "z"), ("P2", "J", "z")]),
        ("K2", &[("K2", "P0", "z"), ("P1", "J", "-z")]),
        ("J", &[]),
    ];
    for (g, t) in cocomm {
        fixtures.push(fx(
            format!("δ({g})"),
            C21_COCOMM,
            Expectation::Cocommutator {
                gen: g.into(),
                value: wedges(&ctx, t),
            },
        ));
    }
    let dual: [DualRow; 15] = [
        ("P0*", "P1*", &[("P1*", "-z")]),
        ("P0*", "P2*", &[("P2*", "-z")]),
        ("P1*", "P2*", &[]),
        ("P0*", "K1*", &[("K1*", "-z")]),
        ("P0*", "K2*", &[("K2*", "-z")]),
        ("K1*", "K2*", &[]),
        ("J*", "P2*", &[("K1*", "-z")]),
        ("J*", "K1*", &[("P2*", "z*Lambda")]),
        ("K1*", "P2*", &[]),
        ("J*", "P1*", &[("K2*", "z")]),
        ("J*", "K2*", &[("P1*", "-z*Lambda")]),
        ("K2*", "P1*", &[]),
        ("J*", "P0*", &[]),
        ("K1*", "P1*", &[]),
        ("K2*", "P2*", &[]),
    ];
    for (x, y, t) in dual {
        fixtures.push(fx(
            format!("[{x}, {y}]_*"),
            C21_DUAL,
            Expectation::DualBracket {
                x: x.into(),
                y: y.into(),
                value: terms(&ctx, t),
            },
        ));
    }
    let dualco: [GenWedges; 4] = [
        ("P0*", &[("K1*", "P1*", "1"), ("K2*", "P2*", "1")]),
        ("P1*", &[("J*", "P2*", "-1"), ("K1*", "P0*", "1")]),
        ("P2*", &[("J*", "P1*", "1"), ("K2*", "P0*", "1")]),
        ("J*", &[("P1*", "P2*", "Lambda"), ("K1*", "K2*", "-1")]),
    ];
    for (g, t) in dualco {
        fixtures.push(fx(
            format!("δ*({g})"),
            C21_DUALCO,
            Expectation::DualCocommutator {
                gen: g.into(),
                value: wedges(&ctx, t),
            },
        ));
    }
    // The displayed boost values disagree with the bracket family: the
    // transpose also carries -Λ P0*∧P_i* and has no Λ on the J* term.
    let displayed: [GenWedges; 2] = [
        ("K1*", &[("J*", "K2*", "-Lambda")]),
        ("K2*", &[("J*", "K1*", "Lambda")]),
    ];
    for (g, t) in displayed {
        fixtures.push(fx(
            format!("displayed δ*({g}) is not a cocycle"),
            C21_DUALCO,
            Expectation::DisplayedDualNotCocycle {
                gen: g.into(),
                displayed: wedges(&ctx, t),
            },
        ));
    }
    fixtures.extend([
        fx(
            "classify at symbolic Λ",
            C21_VERDICT,
            Expectation::Verdict {
                at: Bindings::new(),
                coisotropic: true,
                coreductive: true,
                cosymmetric: true,
            },
        ),
        fx("torsion vanishes", C21_GEOM, Expectation::TorsionVanishes { at: Bindings::new() }),
        fx(
            "curvature R(K_i*, J*)J* = z^2 Λ K_i*",
            C21_GEOM,
            Expectation::Curvature {
                at: Bindings::new(),
                nonzero: vec![
                    (("K1*".into(), "J*".into(), "J*".into()), terms(&ctx, &[("K1*", "z^2*Lambda")])),
                    (("K2*".into(), "J*".into(), "J*".into()), terms(&ctx, &[("K2*", "z^2*Lambda")])),
                ],
            },
        ),
        fx(
            "Ricci S(J*, J*) = 2 z^2 Λ",
            C21_GEOM,
            Expectation::Ricci {
                at: Bindings::new(),
                nonzero: vec![(("J*".into(), "J*".into()), sc(&ctx, "2*z^2*Lambda"))],
            },
        ),
        fx(
            "no nondegenerate invariant metric",
            C21_METRIC,
            Expectation::Metric {
                at: Bindings::new(),
                verdict: "no",
            },
        ),
        fx(
            "coisotropy over all r",
            GENERIC,
            Expectation::GenericForcedZero {
                condition: Condition::Coisotropy,
                exclude: vec![],
                blocks: vec![Block::TT],
            },
        ),
        fx(
            "coreductivity over r without t∧t part",
            GENERIC,
            Expectation::GenericForcedZero {
                condition: Condition::Coreductivity,
                exclude: vec![Block::TT],
                blocks: vec![Block::HH],
            },
        ),
    ]);

    CatalogEntry {
        id: "lorentzian-2+1",
        description: "2+1 Lorentzian algebras (AdS, dS, Poincaré) with the κ r-matrix",
        algebra: alg,
        r,
        splitting,
        special: vec![at("Lambda", 0)],
        fixtures,
    }
}

pub fn lorentzian_3plus1() -> CatalogEntry {
    let ctx = Context::new(["eta", "z"]).expect("valid context");
    let basis =
        Basis::new(["P0", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"]).expect("valid basis");
    let mut alg = LieAlgebra::abelian(&ctx, basis);
    let cyclic = [(1, 2, 3), (2, 3, 1), (3, 1, 2)];
    for (a, b, c) in cyclic {
        let (jc, kc, pc) = (format!("J{c}"), format!("K{c}"), format!("P{c}"));
        alg = bracket(alg, &format!("J{a}"), &format!("J{b}"), &[(&jc, "1")]);
        alg = bracket(alg, &format!("K{a}"), &format!("K{b}"), &[(&jc, "-1")]);
        alg = bracket(alg, &format!("P{a}"), &format!("P{b}"), &[(&jc, "-eta^2")]);
        // ε_abc = 1 and ε_bac = -1.
        alg = bracket(alg, &format!("J{a}"), &format!("P{b}"), &[(&pc, "1")]);
        alg = bracket(alg, &format!("J{b}"), &format!("P{a}"), &[(&pc, "-1")]);
        alg = bracket(alg, &format!("J{a}"), &format!("K{b}"), &[(&kc, "1")]);
        alg = bracket(alg, &format!("J{b}"), &format!("K{a}"), &[(&kc, "-1")]);
    }
    for a in 1..=3 {
        let (ka, pa) = (format!("K{a}"), format!("P{a}"));
        alg = bracket(alg, &ka, "P0", &[(&pa, "1")]);
        alg = bracket(alg, &ka, &pa, &[("P0", "1")]);
        alg = bracket(alg, "P0", &pa, &[(&ka, "eta^2")]);
    }
    let b = alg.basis().clone();
    let i = |n: &str| b.require(n).expect("catalog generator");
    let z = sc(&ctx, "z");
    let r = Bivector::from_terms(
        &ctx,
        [
            (i("K1"), i("P1"), z.clone()),
            (i("K2"), i("P2"), z.clone()),
            (i("K3"), i("P3"), z),
            (i("J1"), i("J2"), sc(&ctx, "z*eta")),
        ],
    );
    let splitting = SubalgebraSplitting::from_names(
        &b,
        &["K1", "K2", "K3", "J1", "J2", "J3"],
        &["P0", "P1", "P2", "P3"],
    )
    .expect("splitting");

    let mut fixtures = vec![
        fx(
            "[K1, P1] = P0",
            C31_BRACKETS,
            Expectation::Bracket {
                x: "K1".into(),
                y: "P1".into(),
                value: terms(&ctx, &[("P0", "1")]),
            },
        ),
        fx(
            "[K1, P2] = 0",
            C31_BRACKETS,
            Expectation::Bracket {
                x: "K1".into(),
                y: "P2".into(),
                value: vec![],
            },
        ),
        fx(
            "[P0, P1] = η^2 K1",
            C31_BRACKETS,
            Expectation::Bracket {
                x: "P0".into(),
                y: "P1".into(),
                value: terms(&ctx, &[("K1", "eta^2")]),
            },
        ),
        fx("Jacobi identity", C31_BRACKETS, Expectation::JacobiHolds),
        fx(
            "r contains z η J1∧J2",
            C31_R,
            Expectation::RTerm {
                a: "J1".into(),
                b: "J2".into(),
                coeff: sc(&ctx, "z*eta"),
            },
        ),
        fx("mCYBE for the 3+1 κ r-matrix", MCYBE, Expectation::Mcybe),
    ];
    let cocomm: [GenWedges; 10] = [
        ("P0", &[]),
        ("J3", &[]),
        ("J1", &[("J1", "J3", "z*eta")]),
        ("J2", &[("J2", "J3", "z*eta")]),
        (
            "P1",
            &[
                ("P1", "P0", "z"),
                ("J2", "K3", "-z*eta^2"),
                ("J3", "K2", "z*eta^2"),
                ("J1", "P3", "z*eta"),
            ],
        ),
        (
            "P2",
            &[
                ("P2", "P0", "z"),
                ("J3", "K1", "-z*eta^2"),
                ("J1", "K3", "z*eta^2"),
                ("J2", "P3", "z*eta"),
            ],
        ),
        (
            "P3",
            &[
                ("P3", "P0", "z"),
                ("J1", "K2", "-z*eta^2"),
                ("J2", "K1", "z*eta^2"),
                ("J1", "P1", "-z*eta"),
                ("J2", "P2", "-z*eta"),
            ],
        ),
        (
            "K1",
            &[("K1", "P0", "z"), ("J2", "P3", "z"), ("J3", "P2", "-z"), ("J1", "K3", "z*eta")],
        ),
        (
            "K2",
            &[("K2", "P0", "z"), ("J3", "P1", "z"), ("J1", "P3", "-z"), ("J2", "K3", "z*eta")],
        ),
        (
            "K3",
            &[
                ("K3", "P0", "z"),
                ("J1", "P2", "z"),
                ("J2", "P1", "-z"),
                ("J1", "K1", "-z*eta"),
                ("J2", "K2", "-z*eta"),
            ],
        ),
    ];
    for (g, t) in cocomm {
        fixtures.push(fx(
            format!("δ({g})"),
            C31_COCOMM,
            Expectation::Cocommutator {
                gen: g.into(),
                value: wedges(&ctx, t),
            },
        ));
    }
    for a in 1..=3 {
        let pa = format!("P{a}*");
        fixtures.push(fx(
            format!("[P0*, {pa}]_*"),
            C31_DUAL,
            Expectation::DualBracket {
                x: "P0*".into(),
                y: pa.clone(),
                value: terms(&ctx, &[(&pa, "-z")]),
            },
        ));
        for b in a + 1..=3 {
            fixtures.push(fx(
                format!("[{pa}, P{b}*]_*"),
                C31_DUAL,
                Expectation::DualBracket {
                    x: pa.clone(),
                    y: format!("P{b}*"),
                    value: vec![],
                },
            ));
        }
    }
    fixtures.extend([
        fx(
            "classify at symbolic η",
            C31_VERDICT,
            Expectation::Verdict {
                at: Bindings::new(),
                coisotropic: true,
                coreductive: false,
                cosymmetric: false,
            },
        ),
        fx(
            "classify at η = 0",
            C31_VERDICT,
            Expectation::Verdict {
                at: at("eta", 0),
                coisotropic: true,
                coreductive: true,
                cosymmetric: true,
            },
        ),
        fx(
            "curvature vanishes at η = 0",
            C31_GEOM,
            Expectation::Curvature {
                at: at("eta", 0),
                nonzero: vec![],
            },
        ),
        fx(
            "Ricci vanishes at η = 0",
            C31_GEOM,
            Expectation::Ricci {
                at: at("eta", 0),
                nonzero: vec![],
            },
        ),
    ]);

    CatalogEntry {
        id: "lorentzian-3+1",
        description: "3+1 Lorentzian algebras (AdS with Λ = −η², Poincaré at η = 0) with the κ r-matrix",
        algebra: alg,
        r,
        splitting,
        special: vec![at("eta", 0)],
        fixtures,
    }
}

fn sparse_of(alg_basis: &Basis, ctx: &Context, t: &Terms) -> Result<SparseVec, String> {
    let mut out = SparseVec::new();
    for (g, c) in t {
        let k = alg_basis.require(g).map_err(|e| e.to_string())?;
        crate::lie::add_entry(&mut out, k, &c.embed(ctx).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn bivector_of(basis: &Basis, ctx: &Context, t: &WedgeTerms) -> Result<Bivector, String> {
    let mut out = Bivector::zero(ctx);
    for (a, b, c) in t {
        let i = basis.require(a).map_err(|e| e.to_string())?;
        let j = basis.require(b).map_err(|e| e.to_string())?;
        out.add_wedge(i, j, c);
    }
    Ok(out)
}

pub fn render_sparse(basis: &Basis, v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(k, c)| format!("({c})*{}", basis.name(*k)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_bivector(basis: &Basis, b: &Bivector) -> String {
    if b.is_zero() {
        return "0".into();
    }
    b.components()
        .iter()
        .map(|((i, j), c)| format!("({c})*{}∧{}", basis.name(*i), basis.name(*j)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn compare<T: PartialEq>(got: T, want: T, show: impl Fn(&T) -> String) -> (bool, String) {
    if got == want {
        (true, show(&got))
    } else {
        (false, format!("got {}, expected {}", show(&got), show(&want)))
    }
}

fn e(x: impl ToString) -> String {
    x.to_string()
}

fn run_one(entry: &CatalogEntry, f: &Fixture) -> Result<(bool, String), String> {
    let alg = &entry.algebra;
    let ctx = entry.context();
    let basis = alg.basis();
    let at_values = |at: &Bindings| -> Result<LieBialgebra, String> {
        entry.bialgebra().map_err(e)?.substitute(at).map_err(e)
    };
    match &f.expect {
        Expectation::Bracket { x, y, value } => {
            let (i, j) = (basis.require(x).map_err(e)?, basis.require(y).map_err(e)?);
            let got = alg.bracket_basis(i, j);
            Ok(compare(got, sparse_of(basis, ctx, value)?, |v| render_sparse(basis, v)))
        }
        Expectation::JacobiHolds => {
            let d = alg.jacobi_defect();
            Ok((d.is_empty(), format!("{} nonzero Jacobi components", d.len())))
        }
        Expectation::RTerm { a, b, coeff } => {
            let got = entry.r.get(basis.require(a).map_err(e)?, basis.require(b).map_err(e)?);
            Ok(compare(got, coeff.clone(), |v| v.to_string()))
        }
        Expectation::Cocommutator { gen, value } => {
            let g = basis.require(gen).map_err(e)?;
            let got = entry.cocommutator().get(g).clone();
            Ok(compare(got, bivector_of(basis, ctx, value)?, |v| render_bivector(basis, v)))
        }
        Expectation::DualBracket { x, y, value } => {
            let dual = dual_bracket(&entry.cocommutator()).map_err(e)?;
            let db = dual.basis();
            let got = dual.bracket_basis(db.require(x).map_err(e)?, db.require(y).map_err(e)?);
            Ok(compare(got, sparse_of(db, ctx, value)?, |v| render_sparse(db, v)))
        }
        Expectation::DualCocommutator { gen, value } => {
            let dc = dual_cocommutator(alg);
            let db = dc.basis().clone();
            let got = dc.get(db.require(gen).map_err(e)?).clone();
            Ok(compare(got, bivector_of(&db, ctx, value)?, |v| render_bivector(&db, v)))
        }
        Expectation::DisplayedDualNotCocycle { gen, displayed } => {
            let dc = dual_cocommutator(alg);
            let db = dc.basis().clone();
            let g = db.require(gen).map_err(e)?;
            let shown = bivector_of(&db, ctx, displayed)?;
            let mut values = dc.values().to_vec();
            values[g] = shown.clone();
            let patched = Cocommutator::new(ctx, db.clone(), values).map_err(e)?;
            let dual = dual_bracket(&entry.cocommutator()).map_err(e)?;
            let defects = cocycle_defect(&dual, &patched).len();
            Ok((
                defects > 0 && *dc.get(g) != shown,
                format!(
                    "transpose gives {}; displayed value leaves {defects} cocycle defects",
                    render_bivector(&db, dc.get(g))
                ),
            ))
        }
        Expectation::Mcybe => {
            let t = schouten_square(alg, &entry.r).map_err(e)?;
            let d = ad_invariance_defect(alg, &t);
            Ok((
                d.is_empty(),
                format!("[[r,r]] has {} components, ad-invariance defect {}", t.components().len(), d.len()),
            ))
        }
        Expectation::Verdict {
            at,
            coisotropic,
            coreductive,
            cosymmetric,
        } => {
            let c = classify(&at_values(at)?, &entry.splitting).map_err(e)?;
            let v = &c.verdict;
            Ok(compare(
                (v.coisotropic, v.coreductive, v.cosymmetric),
                (*coisotropic, *coreductive, *cosymmetric),
                |t| format!("{t:?}"),
            ))
        }
        Expectation::TorsionVanishes { at } => {
            let b = at_values(at)?;
            let dual = dual_bracket(b.cocommutator()).map_err(e)?;
            let t = canonical_torsion(&dual, &dual_splitting(&entry.splitting)).map_err(e)?;
            Ok((t.is_empty(), format!("{} nonzero torsion components", t.len())))
        }
        Expectation::Curvature { at, nonzero } => {
            let b = at_values(at)?;
            let dual = dual_bracket(b.cocommutator()).map_err(e)?;
            let db = dual.basis().clone();
            let r = canonical_curvature(&dual, &dual_splitting(&entry.splitting)).map_err(e)?;
            let got: Vec<_> = r.into_iter().filter(|((a, b, _), _)| a < b).collect();
            let mut want = Vec::new();
            for ((a, b, c), t) in nonzero {
                let key = (db.require(a).map_err(e)?, db.require(b).map_err(e)?, db.require(c).map_err(e)?);
                want.push((key, sparse_of(&db, ctx, t)?));
            }
            want.sort_by_key(|(k, _)| *k);
            Ok(compare(got, want, |v| {
                v.iter()
                    .map(|((a, b, c), x)| {
                        format!("R({},{}){} = {}", db.name(*a), db.name(*b), db.name(*c), render_sparse(&db, x))
                    })
                    .collect::<Vec<_>>()
                    .join("; ")
            }))
        }
        Expectation::Ricci { at, nonzero } => {
            let b = at_values(at)?;
            let dual = dual_bracket(b.cocommutator()).map_err(e)?;
            let db = dual.basis().clone();
            let s = ricci(&canonical_curvature(&dual, &dual_splitting(&entry.splitting)).map_err(e)?);
            let got: Vec<_> = s.into_iter().collect();
            let mut want = Vec::new();
            for ((a, b), v) in nonzero {
                want.push(((db.require(a).map_err(e)?, db.require(b).map_err(e)?), v.clone()));
            }
            want.sort_by_key(|(k, _)| *k);
            Ok(compare(got, want, |v| {
                v.iter()
                    .map(|((a, b), x)| format!("S({},{}) = {x}", db.name(*a), db.name(*b)))
                    .collect::<Vec<_>>()
                    .join("; ")
            }))
        }
        Expectation::Metric { at, verdict } => {
            let b = at_values(at)?;
            let dual = dual_bracket(b.cocommutator()).map_err(e)?;
            let ms = invariant_metric_space(&dual, &dual_splitting(&entry.splitting)).map_err(e)?;
            Ok(compare(ms.nondegenerate_exists(), *verdict, |v| v.to_string()))
        }
        Expectation::GenericForcedZero {
            condition,
            exclude,
            blocks,
        } => {
            let s = &entry.splitting;
            let support: Vec<_> = full_support(alg.dim())
                .into_iter()
                .filter(|&(a, b)| !exclude.contains(&Block::of(s, a, b)))
                .collect();
            let g = generic_r_analysis(alg, s, &support, &[]).map_err(e)?;
            let got = g.system(*condition).forced_zero.clone();
            let want: Vec<_> = support
                .iter()
                .copied()
                .filter(|&(a, b)| blocks.contains(&Block::of(s, a, b)))
                .collect();
            Ok(compare(got, Some(want), |v| match v {
                None => "not a coordinate subspace".to_string(),
                Some(p) => p
                    .iter()
                    .map(|(a, b)| format!("{}∧{}", basis.name(*a), basis.name(*b)))
                    .collect::<Vec<_>>()
                    .join(", "),
            }))
        }
    }
}

/// Runs every fixture of an entry against the live pipeline.
pub fn run_fixtures(entry: &CatalogEntry) -> Vec<FixtureResult> {
    entry
        .fixtures
        .iter()
        .map(|f| {
            let (passed, detail) = run_one(entry, f).unwrap_or_else(|err| (false, format!("error: {err}")));
            FixtureResult {
                label: f.label.clone(),
                citation: f.citation,
                passed,
                detail,
            }
        })
        .collect()
}
