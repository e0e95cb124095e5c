//! Exact arithmetic substrate.
//!
//! Everything downstream works over [`Rational`], [`BigInt`] or
//! [`CycloNumber`]; there is no floating point anywhere in the crate.

mod cyclo;
mod linsolve;
mod matrix;
mod poly;
mod snf;

pub use cyclo::{cyclo_invert, cyclo_reduce, euler_phi, CycloField, CycloNumber};
pub use linsolve::{solve_linear_rational, solve_linear_rational_with_order, AffineSolution, LinearSolution};
pub use matrix::{hermite_normal_form, IntMatrix, Matrix, RatMatrix};
pub use poly::{cyclotomic_polynomial, IntPolynomial, Poly, RatPolynomial};
pub use snf::{smith_normal_form, SnfResult};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Shorthand for `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Representative of `x` modulo `m` in `[0, m)`.
pub fn rat_mod(x: &Rational, m: &Rational) -> Rational {
    assert!(m.is_positive(), "modulus must be positive");
    let q = (x / m).floor();
    x - q * m
}

/// Canonical `p/q` rendering (`p` alone when the denominator is 1).
pub fn fmt_rat(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

pub(crate) fn big_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

pub(crate) fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_mod_normalizes_into_range() {
        assert_eq!(rat_mod(&rat(-23, 30), &int(2)), rat(37, 30));
        assert_eq!(rat_mod(&rat(-1, 5), &int(1)), rat(4, 5));
        assert_eq!(rat_mod(&int(4), &int(2)), int(0));
    }

    #[test]
    fn rationals_render_in_lowest_terms() {
        assert_eq!(fmt_rat(&rat(46, 60)), "23/30");
        assert_eq!(fmt_rat(&rat(-4, 2)), "-2");
    }
}
