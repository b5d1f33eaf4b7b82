//! Independent dense oracles and shared property checks.
//!
//! Oracles work on plain rational arrays at sampled parameter points and never
//! call the library's tensor, duality or linear-algebra code.

#![allow(dead_code)]

use num_traits::{FromPrimitive, One, Zero};
use rand::Rng;

use liebi::bialgebra::{coboundary_cocommutator, cocycle_defect, dual_cocommutator, transpose_bracket, Cocommutator};
use liebi::duality::{coisotropy_check, coreductivity_check, cosymmetry_check, dual_inclusions, dual_splitting};
use liebi::geometry::canonical_torsion;
use liebi::lie::{LieAlgebra, SubalgebraSplitting};
use liebi::scalar::{Bindings, Context, Rational, Scalar};
use liebi::tensor::Bivector;

pub type Q = Rational;
pub type Mat = Vec<Vec<Q>>;
/// `c[i][j][k]`: coefficient of `X_k` in `[X_i, X_j]`.
pub type Structure = Vec<Vec<Vec<Q>>>;
pub type Tensor3 = Vec<Vec<Vec<Q>>>;

pub fn q(n: i64, d: i64) -> Q {
    Q::from_i64(n).unwrap() / Q::from_i64(d).unwrap()
}

/// Nonzero rational with small numerator and denominator.
pub fn random_q<R: Rng>(rng: &mut R) -> Q {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-9i64..=9);
    }
    q(n, rng.gen_range(1i64..=5))
}

/// Small rational, possibly zero.
pub fn random_coeff<R: Rng>(rng: &mut R) -> Q {
    q(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3))
}

pub fn random_point<R: Rng>(ctx: &Context, rng: &mut R) -> Vec<Q> {
    ctx.names().iter().map(|_| random_q(rng)).collect()
}

pub fn bindings(ctx: &Context, point: &[Q]) -> Bindings {
    ctx.names().iter().cloned().zip(point.iter().cloned()).collect()
}

pub fn eval(s: &Scalar, point: &[Q]) -> Q {
    s.eval(point).expect("sample point avoids poles")
}

pub fn structure_at(alg: &LieAlgebra, point: &[Q]) -> Structure {
    let n = alg.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| eval(&alg.structure_constant(i, j, k), point)).collect())
                .collect()
        })
        .collect()
}

/// Full antisymmetric matrix `r^{ab}` with `X_a ∧ X_b = X_a ⊗ X_b − X_b ⊗ X_a`.
pub fn bivector_at(b: &Bivector, n: usize, point: &[Q]) -> Mat {
    let mut m = vec![vec![Q::zero(); n]; n];
    for (&(i, j), v) in b.components() {
        let x = eval(v, point);
        m[i][j] += &x;
        m[j][i] -= &x;
    }
    m
}

/// `D[i][u][v]`: the `X_u ⊗ X_v` entry of `(ad_i ⊗ 1 + 1 ⊗ ad_i) r`.
pub fn coboundary_dense(c: &Structure, r: &Mat) -> Tensor3 {
    let n = c.len();
    let mut d = vec![vec![vec![Q::zero(); n]; n]; n];
    for i in 0..n {
        for u in 0..n {
            for v in 0..n {
                let mut acc = Q::zero();
                for a in 0..n {
                    acc += &c[i][a][u] * &r[a][v];
                    acc += &c[i][a][v] * &r[u][a];
                }
                d[i][u][v] = acc;
            }
        }
    }
    d
}

/// `[r12, r13] + [r12, r23] + [r13, r23]` as a dense triple tensor.
pub fn schouten_dense(c: &Structure, r: &Mat) -> Tensor3 {
    let n = c.len();
    let mut t = vec![vec![vec![Q::zero(); n]; n]; n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut acc = Q::zero();
                for a in 0..n {
                    for b in 0..n {
                        // [X_a, X_b] ⊗ r^{a y} r^{b z}
                        acc += &c[a][b][x] * &r[a][y] * &r[b][z];
                        // r^{x a} [X_a, X_b] r^{b z}
                        acc += &r[x][a] * &c[a][b][y] * &r[b][z];
                        // r^{x a} r^{y b} [X_a, X_b]
                        acc += &r[x][a] * &r[y][b] * &c[a][b][z];
                    }
                }
                t[x][y][z] = acc;
            }
        }
    }
    t
}

/// True iff `(ad_i ⊗ 1 ⊗ 1 + 1 ⊗ ad_i ⊗ 1 + 1 ⊗ 1 ⊗ ad_i) t = 0` for every `i`.
pub fn ad_invariant_dense(c: &Structure, t: &Tensor3) -> bool {
    let n = c.len();
    for i in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut acc = Q::zero();
                    for a in 0..n {
                        acc += &c[i][a][x] * &t[a][y][z];
                        acc += &c[i][a][y] * &t[x][a][z];
                        acc += &c[i][a][z] * &t[x][y][a];
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Row echelon form over ℚ; returns `(rows, pivot columns)`.
pub fn echelon(mut rows: Mat, ncols: usize) -> (Mat, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank_q(rows: Mat, ncols: usize) -> usize {
    echelon(rows, ncols).1.len()
}

pub fn nullspace_q(rows: Mat, ncols: usize) -> Mat {
    let (red, pivots) = echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn det_q(mut m: Mat) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        for i in col + 1..n {
            let f = &m[i][col] / &m[col][col];
            for j in col..n {
                let d = &f * &m[col][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Q::zero(), |s, v| s + v)
}

/// Block membership of a pair relative to a splitting: 0 = hh, 1 = ht, 2 = tt.
pub fn block_of(s: &SubalgebraSplitting, u: usize, v: usize) -> u8 {
    u8::from(s.in_t(u)) + u8::from(s.in_t(v))
}

/// Constraint rows on `r` over `support` for the given `(generator in h?, block)`
/// requirements, built from the dense coboundary of each basis bivector.
pub fn constraint_rows(
    c: &Structure,
    s: &SubalgebraSplitting,
    support: &[(usize, usize)],
    blocks: &[(bool, u8)],
) -> Mat {
    let n = c.len();
    let cols: Vec<Tensor3> = support
        .iter()
        .map(|&(a, b)| {
            let mut r = vec![vec![Q::zero(); n]; n];
            r[a][b] = Q::one();
            r[b][a] = -Q::one();
            coboundary_dense(c, &r)
        })
        .collect();
    let mut rows = Vec::new();
    for &(on_h, block) in blocks {
        for g in 0..n {
            if s.in_h(g) != on_h {
                continue;
            }
            for u in 0..n {
                for v in u + 1..n {
                    if block_of(s, u, v) == block {
                        rows.push(cols.iter().map(|d| d[g][u][v].clone()).collect());
                    }
                }
            }
        }
    }
    rows
}

/// Invariance system for a symmetric form on `t⊥` of the dual, unknowns `B_pq`
/// with `p ≤ q` in `tp` positions. Dual brackets come from the dense coboundary:
/// `[x̂^a, x̂^b]_*` has `x̂^c` coefficient `D[c][a][b]`.
pub fn metric_nullspace(d: &Tensor3, hp: &[usize], tp: &[usize]) -> (Vec<(usize, usize)>, Mat) {
    let m = tp.len();
    let unknowns: Vec<(usize, usize)> = (0..m).flat_map(|p| (p..m).map(move |q| (p, q))).collect();
    let idx = |p: usize, q: usize| unknowns.iter().position(|&u| u == (p.min(q), p.max(q))).unwrap();
    let bracket = |a: usize, b: usize, c: usize| d[c][a][b].clone();
    let mut rows = Vec::new();
    for &z in hp {
        for x in 0..m {
            for y in 0..m {
                let mut row = vec![Q::zero(); unknowns.len()];
                for k in 0..m {
                    // B([Z, X], Y) + B(X, [Z, Y]) restricted to t⊥ components.
                    row[idx(k, y)] += bracket(z, tp[x], tp[k]);
                    row[idx(x, k)] += bracket(z, tp[y], tp[k]);
                }
                rows.push(row);
            }
        }
    }
    let ns = nullspace_q(rows, unknowns.len());
    (unknowns, ns)
}

pub fn symmetric_from(unknowns: &[(usize, usize)], v: &[Q], m: usize) -> Mat {
    let mut b = vec![vec![Q::zero(); m]; m];
    for (&(p, qq), x) in unknowns.iter().zip(v) {
        b[p][qq] = x.clone();
        b[qq][p] = x.clone();
    }
    b
}

/// `Σ c_k X_a ∧ X_b` over `support`.
pub fn bivector_from(ctx: &Context, support: &[(usize, usize)], coeffs: &[Q]) -> Bivector {
    Bivector::from_terms(
        ctx,
        support
            .iter()
            .zip(coeffs)
            .map(|(&(a, b), c)| (a, b, Scalar::from_rational(ctx, c.clone()))),
    )
}

// Property checks shared by the proptest suites and the acceptance target.

pub fn prop_coboundary_is_cocycle(alg: &LieAlgebra, r: &Bivector) -> Result<(), String> {
    let delta = coboundary_cocommutator(alg, r);
    match cocycle_defect(alg, &delta).first() {
        None => Ok(()),
        Some(((i, j), d)) => Err(format!("defect at ({i}, {j}): {d:?}")),
    }
}

/// Transposing twice returns the original bracket and cocommutator.
pub fn prop_double_dual(alg: &LieAlgebra, delta: &Cocommutator) -> Result<(), String> {
    let back = transpose_bracket(&dual_cocommutator(alg));
    if &back != alg {
        return Err("bracket does not survive double dualization".into());
    }
    let back = dual_cocommutator(&transpose_bracket(delta));
    if &back != delta {
        return Err("cocommutator does not survive double dualization".into());
    }
    Ok(())
}

pub fn prop_cosymmetric_implies_coisotropic(
    alg: &LieAlgebra,
    delta: &Cocommutator,
    s: &SubalgebraSplitting,
) -> Result<(), String> {
    let (cosym, _) = cosymmetry_check(alg, delta, s).map_err(|e| e.to_string())?;
    let (coiso, _) = coisotropy_check(alg, delta, s).map_err(|e| e.to_string())?;
    if cosym && !coiso {
        return Err("cosymmetric but not coisotropic".into());
    }
    Ok(())
}

/// Requires `delta` cosymmetric; the dual canonical torsion must vanish.
pub fn prop_cosymmetric_zero_torsion(
    alg: &LieAlgebra,
    delta: &Cocommutator,
    s: &SubalgebraSplitting,
) -> Result<(), String> {
    let (cosym, _) = cosymmetry_check(alg, delta, s).map_err(|e| e.to_string())?;
    if !cosym {
        return Err("sample is not cosymmetric".into());
    }
    let dual = transpose_bracket(delta);
    let t = canonical_torsion(&dual, &dual_splitting(s)).map_err(|e| e.to_string())?;
    if t.is_empty() {
        Ok(())
    } else {
        Err(format!("nonzero torsion at {:?}", t.keys().next()))
    }
}

pub fn prop_blocks_match_inclusions(
    alg: &LieAlgebra,
    delta: &Cocommutator,
    s: &SubalgebraSplitting,
) -> Result<(), String> {
    let (coiso, _) = coisotropy_check(alg, delta, s).map_err(|e| e.to_string())?;
    let (cored, _) = coreductivity_check(alg, delta, s).map_err(|e| e.to_string())?;
    let (cosym, _) = cosymmetry_check(alg, delta, s).map_err(|e| e.to_string())?;
    let inc = dual_inclusions(&transpose_bracket(delta), &dual_splitting(s));
    let pairs = [
        ("coisotropy", coiso, inc.h_perp_closed),
        ("coreductivity", cored, inc.mixed_in_t_perp),
        ("cosymmetry", cosym, inc.h_perp_closed && inc.t_perp_in_h_perp),
    ];
    for (name, primal, dual) in pairs {
        if primal != dual {
            return Err(format!("{name}: blocks say {primal}, inclusions say {dual}"));
        }
    }
    Ok(())
}
