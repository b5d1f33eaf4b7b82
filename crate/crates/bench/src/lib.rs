//! Benchmark inputs shared by the criterion targets.

use liebi::scalar::{Context, Scalar};

/// `(a·b, a·c)` with a shared factor `a`, so normalizing `a·b / a·c` needs a
/// nontrivial multivariate gcd.
pub fn gcd_workload(ctx: &Context) -> (Scalar, Scalar) {
    let p = |s: &str| Scalar::parse(ctx, s).expect("bench expression");
    let a = p("(Lambda*z^2 + 3*Lambda - z + 1)^3");
    let b = p("(Lambda^2 - 2*z^3 + 5)^2");
    let c = p("(z^2*Lambda + Lambda^3 - 7)^2");
    (&a * &b, &a * &c)
}
