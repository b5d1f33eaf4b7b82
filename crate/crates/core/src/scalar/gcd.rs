//! Multivariate polynomial gcd over ℚ by recursive primitive remainder sequences.
//!
//! The polynomial is viewed as univariate in its first occurring variable with
//! coefficients in the ring of the remaining variables; contents are split off
//! recursively and the primitive parts are reduced with pseudo-remainders,
//! taking primitive parts at every step to keep coefficient growth in check.

use super::poly::{Monomial, Polynomial};
use super::Rational;
use num_traits::One;

/// Monic gcd of `a` and `b`. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    if a == b {
        return a.monic();
    }
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_content().min_with(&b.monomial_content());
        return Polynomial::term(m, Rational::one());
    }
    let v = match (0..n).find(|&v| a.contains_var(v) || b.contains_var(v)) {
        Some(v) => v,
        None => return Polynomial::one(n),
    };
    if !a.contains_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.contains_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_gcd(pa.integer_primitive(), pb.integer_primitive(), v);
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed as univariate in `v`.
pub fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.nvars());
    for c in p.coeffs_in(v).into_values() {
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(p.nvars());
        }
    }
    acc
}

/// Primitive in `v` over the remaining variables, with coprime integer
/// coefficients. Dropping the numeric content keeps univariate stages from
/// growing exponentially.
fn primitive_part(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").integer_primitive()
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(v);
    let lcb = b.leading_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let shift = r.degree_in(v) - db;
        let lcr = r.leading_coeff_in(v);
        let lifted = &lcr * &b.mul_term(&Monomial::var(n, v, shift), &Rational::one());
        r = &(&r * &lcb) - &lifted;
    }
    r
}

/// Gcd of two polynomials that are primitive in `v` and both depend on `v`.
fn primitive_gcd(mut a: Polynomial, mut b: Polynomial, v: usize) -> Polynomial {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b.monic();
        }
        if !r.contains_var(v) {
            return Polynomial::one(a.nvars());
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

impl Monomial {
    pub(crate) fn min_with(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exponents()
                .iter()
                .zip(other.exponents())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn vars(n: usize) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(n, i)).collect()
    }

    #[test]
    fn univariate_common_factor() {
        let v = vars(1);
        let one = Polynomial::one(1);
        let a = &(&v[0] - &one) * &(&v[0] + &one);
        let b = &(&v[0] - &one) * &(&v[0] - &Polynomial::constant(1, q(2)));
        assert_eq!(gcd(&a, &b), &v[0] - &one);
    }

    #[test]
    fn multivariate_common_factor() {
        let v = vars(3);
        let f = &(&v[0] * &v[1]) + &v[2];
        let g1 = &(&v[0] + &v[2]).pow(2) - &v[1];
        let g2 = &(&v[1] * &v[1]) + &Polynomial::constant(3, q(7));
        let a = &f * &g1;
        let b = &f.scale(&q(3)) * &g2;
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn high_degree_bivariate_factor() {
        let v = vars(2);
        let one = Polynomial::one(2);
        let c = |n: i64| Polynomial::constant(2, q(n));
        let f = &(&(&(&v[0] * &v[1].pow(2)) + &(&c(3) * &v[0])) - &v[1]) + &one;
        let g1 = &(&v[0].pow(2) - &(&c(2) * &v[1].pow(3))) + &c(5);
        let g2 = &(&(&v[1].pow(2) * &v[0]) + &v[0].pow(3)) - &c(7);
        let a = &f.pow(3) * &g1.pow(2);
        let b = &f.pow(3) * &g2.pow(2);
        assert_eq!(gcd(&a, &b), f.pow(3).monic());
    }

    #[test]
    fn integer_primitive_clears_content() {
        let v = vars(2);
        let p = &v[0].scale(&Rational::new(6.into(), 5.into())) - &v[1].scale(&Rational::new(4.into(), 15.into()));
        assert_eq!(p.integer_primitive(), &v[0].scale(&q(9)) - &v[1].scale(&q(2)));
    }

    #[test]
    fn coprime_inputs() {
        let v = vars(2);
        let a = &v[0] + &v[1];
        let b = &v[0] - &v[1];
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_fast_path() {
        let v = vars(2);
        let a = &(&v[0] * &v[0]) * &v[1];
        let b = &(&v[0] * &v[1]) + &(&v[0] * &v[0]);
        assert_eq!(gcd(&a, &b), v[0].clone());
    }
}
