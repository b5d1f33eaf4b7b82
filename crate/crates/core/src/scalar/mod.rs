//! Exact coefficients: rational functions over ℚ in named parameters.
//!
//! A [`Scalar`] is a reduced fraction of two [`Polynomial`]s whose
//! denominator is monic under graded-lex order. Because the representation is
//! canonical, equality and the zero test are structural.

mod context;
mod expr;
pub mod gcd;
pub mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use context::{is_identifier, Context};
pub use expr::ExprError;
pub use poly::{Monomial, Polynomial};

/// Arbitrary-precision rational with positive, coprime denominator.
pub type Rational = num_rational::BigRational;

/// Parameter bindings used for substitution.
pub type Bindings = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("parameter context mismatch: {0:?} vs {1:?}")]
    ContextMismatch(Vec<String>, Vec<String>),
    #[error("invalid parameter identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("duplicate parameter `{0}`")]
    DuplicateParameter(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish")]
    VanishingDenominator,
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error(transparent)]
    Parse(#[from] ExprError),
}

#[derive(Clone)]
pub struct Scalar {
    ctx: Context,
    num: Polynomial,
    den: Polynomial,
}

impl Scalar {
    pub fn zero(ctx: &Context) -> Self {
        Scalar {
            ctx: ctx.clone(),
            num: Polynomial::zero(ctx.len()),
            den: Polynomial::one(ctx.len()),
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    pub fn from_rational(ctx: &Context, q: Rational) -> Self {
        Scalar {
            ctx: ctx.clone(),
            num: Polynomial::constant(ctx.len(), q),
            den: Polynomial::one(ctx.len()),
        }
    }

    pub fn from_int(ctx: &Context, n: i64) -> Self {
        Self::from_rational(ctx, Rational::from_integer(n.into()))
    }

    pub fn from_polynomial(ctx: &Context, p: Polynomial) -> Self {
        assert_eq!(p.nvars(), ctx.len());
        Scalar {
            ctx: ctx.clone(),
            num: p,
            den: Polynomial::one(ctx.len()),
        }
    }

    /// `num / den` brought to normal form.
    pub fn from_fraction(
        ctx: &Context,
        num: Polynomial,
        den: Polynomial,
    ) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(ctx.clone(), num, den))
    }

    pub fn param(ctx: &Context, name: &str) -> Result<Self, ScalarError> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))?;
        Ok(Self::from_polynomial(ctx, Polynomial::var(ctx.len(), i)))
    }

    /// Parses a coefficient expression such as `-(1/2)*z^2*Lambda`.
    pub fn parse(ctx: &Context, text: &str) -> Result<Self, ScalarError> {
        expr::parse(ctx, text).map_err(ScalarError::from)
    }

    fn normalized(ctx: Context, num: Polynomial, den: Polynomial) -> Self {
        let n = ctx.len();
        if num.is_zero() {
            return Scalar {
                ctx,
                num,
                den: Polynomial::one(n),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Scalar { ctx, num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                ctx,
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when no parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// True when the canonical numerator's leading coefficient is negative.
    pub fn has_negative_sign(&self) -> bool {
        self.num.is_negative_leading()
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(ScalarError::ContextMismatch(
                self.ctx.names().to_vec(),
                other.ctx.names().to_vec(),
            ))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(
            self.ctx.clone(),
            self.den.clone(),
            self.num.clone(),
        ))
    }

    fn add_unchecked(&self, other: &Scalar, negate: bool) -> Scalar {
        let combine = |a: &Polynomial, b: &Polynomial| if negate { a - b } else { a + b };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                ctx: self.ctx.clone(),
                num: combine(&self.num, &other.num),
                den: self.den.clone(),
            };
        }
        if self.den == other.den {
            return Self::normalized(
                self.ctx.clone(),
                combine(&self.num, &other.num),
                self.den.clone(),
            );
        }
        // a/b + c/d with one side polynomial stays reduced: gcd(ad + cb, bd) = 1
        // when only one denominator is nontrivial and both inputs are reduced.
        if other.den.is_one() {
            return Scalar {
                ctx: self.ctx.clone(),
                num: combine(&self.num, &(&other.num * &self.den)),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return Scalar {
                ctx: self.ctx.clone(),
                num: combine(&(&self.num * &other.den), &other.num),
                den: other.den.clone(),
            };
        }
        let g = gcd::gcd(&self.den, &other.den);
        let bd = self.den.div_exact(&g).expect("gcd divides");
        let dd = other.den.div_exact(&g).expect("gcd divides");
        let num = combine(&(&self.num * &dd), &(&other.num * &bd));
        let den = &(&bd * &dd) * &g;
        Self::normalized(self.ctx.clone(), num, den)
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero(&self.ctx);
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                ctx: self.ctx.clone(),
                num: &self.num * &other.num,
                den: self.den.clone(),
            };
        }
        // Cross-cancel so the product is already reduced.
        let g1 = gcd::gcd(&self.num, &other.den);
        let g2 = gcd::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coeff().expect("nonzero").clone();
        if lc.is_one() {
            Scalar {
                ctx: self.ctx.clone(),
                num,
                den,
            }
        } else {
            let inv = lc.recip();
            Scalar {
                ctx: self.ctx.clone(),
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Substitutes rational values for some parameters. The context is kept;
    /// bound parameters simply no longer occur in the result.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Scalar, ScalarError> {
        let values = self.binding_vector(bindings)?;
        let num = self.num.substitute(&values);
        let den = self.den.substitute(&values);
        if den.is_zero() {
            return Err(ScalarError::VanishingDenominator);
        }
        Ok(Self::normalized(self.ctx.clone(), num, den))
    }

    /// Substitutes one parameter by another scalar of the same context.
    pub fn compose(&self, name: &str, value: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(value)?;
        let v = self
            .ctx
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))?;
        // p(v = a/b) = homogenized numerator / b^deg
        let hom = |p: &Polynomial| -> (Polynomial, u32) {
            let d = p.degree_in(v);
            let mut acc = Polynomial::zero(self.ctx.len());
            for (e, c) in p.coeffs_in(v) {
                let t = &(&value.num.pow(e) * &value.den.pow(d - e)) * &c;
                acc = &acc + &t;
            }
            (acc, d)
        };
        let (n, dn) = hom(&self.num);
        let (d, dd) = hom(&self.den);
        let (n, d) = if dn >= dd {
            (n, &d * &value.den.pow(dn - dd))
        } else {
            (&n * &value.den.pow(dd - dn), d)
        };
        if d.is_zero() {
            return Err(ScalarError::VanishingDenominator);
        }
        Ok(Self::normalized(self.ctx.clone(), n, d))
    }

    fn binding_vector(&self, bindings: &Bindings) -> Result<Vec<Option<Rational>>, ScalarError> {
        let mut values = vec![None; self.ctx.len()];
        for (name, q) in bindings {
            let i = self
                .ctx
                .index_of(name)
                .ok_or_else(|| ScalarError::UnknownParameter(name.clone()))?;
            values[i] = Some(q.clone());
        }
        Ok(values)
    }

    /// Evaluates at a full point (one value per context parameter).
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, ScalarError> {
        assert_eq!(point.len(), self.ctx.len());
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ScalarError::VanishingDenominator);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Re-expresses the scalar in a context containing all of this scalar's
    /// parameter names.
    pub fn embed(&self, target: &Context) -> Result<Scalar, ScalarError> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        let map = self
            .ctx
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| ScalarError::UnknownParameter(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = target.len();
        Ok(Scalar {
            ctx: target.clone(),
            num: self.num.remap(n, &map),
            den: self.den.remap(n, &map),
        })
    }

    /// Names of the parameters that actually occur.
    pub fn occurring_parameters(&self) -> Vec<&str> {
        (0..self.ctx.len())
            .filter(|&i| self.num.contains_var(i) || self.den.contains_var(i))
            .map(|i| self.ctx.names()[i].as_str())
            .collect()
    }
}

/// Parses `a`, `-a`, or `a/b` into a rational.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let t = text.trim();
    let bad = || ScalarError::InvalidRational(text.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.num == other.num && self.den == other.den
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

fn write_polynomial(f: &mut fmt::Formatter<'_>, p: &Polynomial, names: &[String]) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if factors.is_empty() {
            f.write_str(&format_rational(&abs))?;
        } else {
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            f.write_str(&factors.join("*"))?;
        }
    }
    Ok(())
}

struct PolyDisplay<'a>(&'a Polynomial, &'a [String]);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_polynomial(f, self.0, self.1)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ctx.names();
        if self.den.is_one() {
            return write_polynomial(f, &self.num, names);
        }
        let num = PolyDisplay(&self.num, names).to_string();
        let den = PolyDisplay(&self.den, names).to_string();
        let num = if self.num.terms().len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den_atomic = self.den.terms().len() == 1
            && self.den.terms()[0].1.is_one()
            && self.den.terms()[0].0.exponents().iter().filter(|&&e| e > 0).count() <= 1;
        if den_atomic {
            write!(f, "{num}/{den}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands live in different parameter contexts.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(["Lambda", "z"]).unwrap()
    }

    fn s(text: &str) -> Scalar {
        Scalar::parse(&ctx(), text).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_addition() {
        assert_eq!(s("1/2") + s("1/3"), s("5/6"));
        assert!((s("z") + s("-z")).is_zero());
    }

    #[test]
    fn fraction_addition_cancels() {
        let a = s("Lambda/(1+z)");
        let b = s("Lambda*z/(1+z)");
        assert_eq!(a + b, s("Lambda"));
    }

    #[test]
    fn products() {
        assert_eq!(s("z") * s("z"), s("z^2"));
        assert_eq!(s("1+z") * s("1-z"), s("1 - z^2"));
    }

    #[test]
    fn zero_tests() {
        assert!((s("z") - s("z")).is_zero());
        assert!(!s("Lambda*z").is_zero());
        assert!((s("z^2") - s("z^2*1")).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let mut b = Bindings::new();
        b.insert("Lambda".into(), q(0, 1));
        assert!(s("z*Lambda").substitute(&b).unwrap().is_zero());
        let mut b = Bindings::new();
        b.insert("Lambda".into(), q(1, 1));
        assert_eq!(s("z + Lambda").substitute(&b).unwrap(), s("z + 1"));
        assert_eq!(
            s("1/(1-Lambda)").substitute(&b),
            Err(ScalarError::VanishingDenominator)
        );
    }

    #[test]
    fn unknown_binding_is_rejected() {
        let mut b = Bindings::new();
        b.insert("eta".into(), q(0, 1));
        assert!(matches!(
            s("z").substitute(&b),
            Err(ScalarError::UnknownParameter(_))
        ));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let other = Context::new(["z"]).unwrap();
        let a = Scalar::param(&other, "z").unwrap();
        assert!(matches!(
            s("z").try_add(&a),
            Err(ScalarError::ContextMismatch(..))
        ));
    }

    #[test]
    fn eta_convention_square() {
        let c = Context::new(["eta", "z"]).unwrap();
        let eta = Scalar::param(&c, "eta").unwrap();
        let lambda = -(&eta * &eta);
        assert_eq!(&eta * &eta, -lambda);
    }

    #[test]
    fn compose_parameter() {
        let c = Context::new(["eta", "Lambda"]).unwrap();
        let x = Scalar::parse(&c, "Lambda^2 + 1/Lambda").unwrap();
        let v = Scalar::parse(&c, "-eta^2").unwrap();
        assert_eq!(
            x.compose("Lambda", &v).unwrap(),
            Scalar::parse(&c, "eta^4 - 1/eta^2").unwrap()
        );
    }

    #[test]
    fn display_reparses() {
        for t in [
            "-(1/2)*z^2*Lambda",
            "(1+z)/(2*Lambda)",
            "-z/Lambda",
            "3/(z^2 - Lambda)",
            "(z - 1)/z",
            "0",
            "-7/3",
        ] {
            let v = s(t);
            assert_eq!(s(&v.to_string()), v, "{t} -> {v}");
        }
        assert_eq!(s("-(1/2)*z^2*Lambda").to_string(), "-1/2*Lambda*z^2");
    }
}
