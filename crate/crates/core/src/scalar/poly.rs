//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are kept sorted in descending graded-lexicographic order with no
//! zero coefficients, so structural equality is value equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Exponent vector over a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Polynomial {
            nvars,
            terms: vec![(Monomial::var(nvars, i, 1), Rational::one())],
        }
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.0.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), nvars);
            accumulate(&mut acc, m, c);
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: BTreeMap<Monomial, Rational>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v] > 0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // Multiplying by a monomial preserves the term order.
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Rescales to coprime integer coefficients with the leading sign kept.
    pub fn integer_primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        self.scale(&Rational::new(den, num))
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    ///
    /// A single polynomial is a Gröbner basis of the ideal it generates, so the
    /// multivariate division remainder vanishes exactly when the division is exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().expect("nonzero divisor");
        let mut quotient: Vec<(Monomial, Rational)> = Vec::new();
        let mut rem = self.clone();
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let m = rm.div(lm);
            let c = rc / lc;
            rem = &rem - &divisor.mul_term(&m, &c);
            quotient.push((m, c));
        }
        // Quotient terms are produced in strictly decreasing order.
        Some(Polynomial {
            nvars: self.nvars,
            terms: quotient,
        })
    }

    /// Substitutes the given variables (by index) with rational values.
    pub fn substitute(&self, values: &[Option<Rational>]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = m.0.clone();
            let mut coeff = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if exps[i] > 0 {
                        coeff *= num_traits::pow(v.clone(), exps[i] as usize);
                        exps[i] = 0;
                    }
                }
            }
            (Monomial(exps), coeff)
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Substitutes one variable by a polynomial.
    pub fn compose_var(&self, v: usize, value: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.nvars);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.nvars)];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[v] = 0;
            acc = &acc + &powers[e].mul_term(&rest, c);
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-expresses the polynomial over `nvars` variables, sending variable `i`
    /// to variable `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; nvars];
            for (i, e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial(exps), c.clone())
        });
        Polynomial::from_terms(nvars, terms)
    }

    /// Views the polynomial as univariate in `v`: degree → coefficient
    /// (a polynomial free of `v`).
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, Polynomial> {
        let mut groups: BTreeMap<u32, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::replace(&mut rest.0[v], 0);
            groups.entry(e).or_default().push((rest, c.clone()));
        }
        groups
            .into_iter()
            .map(|(e, ts)| (e, Polynomial::from_terms(self.nvars, ts)))
            .collect()
    }

    pub(crate) fn leading_coeff_in(&self, v: usize) -> Polynomial {
        let d = self.degree_in(v);
        let terms = self.terms.iter().filter(|(m, _)| m.0[v] == d).map(|(m, c)| {
            let mut rest = m.clone();
            rest.0[v] = 0;
            (rest, c.clone())
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Greatest monomial dividing every term.
    pub(crate) fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(self.nvars),
        };
        it.fold(first, |acc, (m, _)| acc.min_with(m))
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_negative())
    }
}

fn accumulate(acc: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn merge(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    assert_eq!(a.nvars, b.nvars, "polynomials over different variable counts");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match ma.cmp(mb) {
            Ordering::Greater => {
                out.push((ma.clone(), ca.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((mb.clone(), if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((ma.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(
        b.terms[j..]
            .iter()
            .map(|(m, c)| (m.clone(), if negate_b { -c } else { c.clone() })),
    );
    Polynomial {
        nvars: a.nvars,
        terms: out,
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomials over different variable counts");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Polynomial::from_map(self.nvars, acc)
    }
}
