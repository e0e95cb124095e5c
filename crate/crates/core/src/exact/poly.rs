use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed};

use super::Rational;

/// Dense univariate polynomial, `coeffs[i]` is the coefficient of `x^i`.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPolynomial = Poly<BigInt>;
pub type RatPolynomial = Poly<Rational>;

impl<T> Poly<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<U, F>(&self, f: F) -> Poly<U>
    where
        U: Clone + Num + Neg<Output = U>,
        F: Fn(&T) -> U,
    {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Quotient and remainder on division by a monic polynomial.
    ///
    /// Works over any coefficient ring because no leading-coefficient
    /// inversion is needed.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(
            divisor.leading().is_some_and(|c| c.is_one()),
            "divisor must be monic"
        );
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top].clone();
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            quot[shift] = c.clone();
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].clone() - c.clone() * dj.clone();
            }
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem_monic(&self, divisor: &Self) -> Self {
        self.div_rem_monic(divisor).1
    }
}

impl IntPolynomial {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPolynomial {
        self.map(|c| Rational::from_integer(c.clone()))
    }
}

impl<T> Add for &Poly<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T> Sub for &Poly<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T> Mul for &Poly<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T> Neg for &Poly<T>
where
    T: Clone + Num + Neg<Output = T>,
{
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T> $tr for Poly<T>
        where
            T: Clone + Num + Neg<Output = T>,
        {
            type Output = Poly<T>;
            fn $m(self, rhs: Self) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T> fmt::Display for Poly<T>
where
    T: Clone + Num + Neg<Output = T> + Signed + fmt::Display,
{
    /// Descending powers, e.g. `x^4 - x^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The `n`-th cyclotomic polynomial `Φ_n`, obtained by dividing `x^n - 1`
/// by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut p = &IntPolynomial::monomial(BigInt::one(), n as usize) - &IntPolynomial::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = p.div_rem_monic(&cyclotomic_polynomial(d));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(4), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(
            cyclotomic_polynomial(12),
            IntPolynomial::from_i64(&[1, 0, -1, 0, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(15),
            IntPolynomial::from_i64(&[1, -1, 0, 1, -1, 1, 0, -1, 1])
        );
        assert_eq!(
            cyclotomic_polynomial(20),
            IntPolynomial::from_i64(&[1, 0, -1, 0, 1, 0, -1, 0, 1])
        );
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(cyclotomic_polynomial(12).to_string(), "x^4 - x^2 + 1");
        assert_eq!(IntPolynomial::from_i64(&[0, -3, 2]).to_string(), "2*x^2 - 3*x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn monic_division() {
        // x^10 mod Φ_15 = -1 - x^5
        let r = IntPolynomial::monomial(BigInt::one(), 10).rem_monic(&cyclotomic_polynomial(15));
        assert_eq!(r, IntPolynomial::from_i64(&[-1, 0, 0, 0, 0, -1]));
    }
}
