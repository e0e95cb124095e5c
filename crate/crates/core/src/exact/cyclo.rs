use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{
    cyclotomic_polynomial, fmt_rat, solve_linear_rational, zero_vec, LinearSolution, RatMatrix,
    RatPolynomial, Rational,
};
use crate::error::{Error, Result};

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// The cyclotomic field `Q(ζ_n)`, stored as `Q[x] / Φ_n`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    conductor: u32,
    modulus: RatPolynomial,
}

impl CycloField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        Arc::new(Self {
            conductor,
            modulus: cyclotomic_polynomial(conductor).to_rational(),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(n)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &RatPolynomial {
        &self.modulus
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Rational>) -> CycloNumber {
        self.reduce(&RatPolynomial::new(coeffs))
    }

    pub fn zero(self: &Arc<Self>) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(self),
            coeffs: zero_vec(self.degree()),
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloNumber {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(self: &Arc<Self>, r: Rational) -> CycloNumber {
        self.reduce(&RatPolynomial::constant(r))
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> CycloNumber {
        self.from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `ζ_n^k`; negative exponents are taken modulo `n`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycloNumber {
        let e = k.rem_euclid(i64::from(self.conductor)) as usize;
        self.reduce(&RatPolynomial::monomial(Rational::one(), e))
    }

    pub fn zeta(self: &Arc<Self>) -> CycloNumber {
        self.zeta_pow(1)
    }

    /// Residue of `p(ζ_n)` modulo `Φ_n`.
    pub fn reduce(self: &Arc<Self>, p: &RatPolynomial) -> CycloNumber {
        let r = p.rem_monic(&self.modulus);
        let mut coeffs = zero_vec(self.degree());
        for (i, c) in r.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        CycloNumber {
            field: Arc::clone(self),
            coeffs,
        }
    }
}

/// An element of `Q(ζ_n)` as a residue of degree `< φ(n)`.
///
/// Arithmetic between different conductors panics; move values into a
/// common field with [`CycloNumber::embed`] first.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl CycloNumber {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    /// Coordinates in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn as_polynomial(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    /// `Some(r)` when the value lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| i64::try_from(&n).ok())
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k` (`gcd(k, n) = 1`).
    pub fn galois(&self, k: i64) -> CycloNumber {
        let n = i64::from(self.conductor());
        assert_eq!(k.gcd(&n), 1, "galois exponent must be a unit mod n");
        let mut acc = self.field.zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.field.zeta_pow(k * j as i64).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> CycloNumber {
        self.galois(-1)
    }

    pub fn scale(&self, c: &Rational) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CycloNumber {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<CycloNumber> {
        cyclo_invert(self)
    }

    /// Image in `Q(ζ_m)` for a multiple `m` of the conductor, via
    /// `ζ_n = ζ_m^{m/n}`.
    pub fn embed(&self, m: u32) -> Result<CycloNumber> {
        let n = self.conductor();
        if m == 0 || !m.is_multiple_of(n) {
            return Err(Error::InvalidParameters(format!(
                "cannot embed Q(zeta_{n}) into Q(zeta_{m})"
            )));
        }
        let step = (m / n) as usize;
        let mut lifted = zero_vec((self.coeffs.len().max(1) - 1) * step + 1);
        for (j, c) in self.coeffs.iter().enumerate() {
            lifted[j * step] = c.clone();
        }
        Ok(CycloField::new(m).reduce(&RatPolynomial::new(lifted)))
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.conductor(),
            other.conductor(),
            "cyclotomic conductors differ; embed into a common field first"
        );
    }
}

/// Residue of `p` modulo `Φ_n`, i.e. the value `p(ζ_n)`.
pub fn cyclo_reduce(n: u32, p: &RatPolynomial) -> CycloNumber {
    CycloField::new(n).reduce(p)
}

/// Inverse in `Q(ζ_n)` by solving the multiplication-by-`z` linear system.
pub fn cyclo_invert(z: &CycloNumber) -> Result<CycloNumber> {
    if z.is_zero() {
        return Err(Error::DivisionByZero("cyclotomic inversion"));
    }
    let field = z.field();
    let deg = field.degree();
    // Column j holds the coordinates of z * ζ^j.
    let mut m = RatMatrix::zeros(deg, deg);
    for j in 0..deg {
        let col = z * &field.zeta_pow(j as i64);
        for (i, c) in col.coeffs.iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    let mut rhs = zero_vec(deg);
    rhs[0] = Rational::one();
    match solve_linear_rational(&m, &rhs) {
        LinearSolution::Affine(a) if a.dimension() == 0 => Ok(field.element(a.particular)),
        _ => Err(Error::DivisionByZero("cyclotomic inversion")),
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;

    fn add(self, rhs: Self) -> CycloNumber {
        self.check_same_field(rhs);
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;

    fn sub(self, rhs: Self) -> CycloNumber {
        self.check_same_field(rhs);
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;

    fn mul(self, rhs: Self) -> CycloNumber {
        self.check_same_field(rhs);
        self.field.reduce(&(&self.as_polynomial() * &rhs.as_polynomial()))
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: Self) -> CycloNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl fmt::Display for CycloNumber {
    /// Ascending powers of `z = ζ_n`, e.g. `1/2 + 1/2*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let z = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            match (*i, mag.is_one()) {
                (0, _) => write!(f, "{}", fmt_rat(&mag))?,
                (_, true) => write!(f, "{z}")?,
                (_, false) => write!(f, "{}*{z}", fmt_rat(&mag))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(20), 8);
    }

    #[test]
    fn reductions_from_power_relations() {
        let x10 = RatPolynomial::monomial(Rational::one(), 10);
        let r15 = cyclo_reduce(15, &x10);
        let f15 = CycloField::new(15);
        assert_eq!(r15, &(-&f15.one()) - &f15.zeta_pow(5));
        assert_eq!(cyclo_reduce(20, &x10), CycloField::new(20).from_int(-1));
        let x2 = RatPolynomial::monomial(Rational::one(), 2);
        assert_eq!(cyclo_reduce(4, &x2), CycloField::new(4).from_int(-1));
        assert!(f15.zeta_pow(15).is_one());
    }

    #[test]
    fn inverses_of_one_minus_zeta() {
        let f4 = CycloField::new(4);
        let z = &f4.one() - &f4.zeta();
        let inv = cyclo_invert(&z).unwrap();
        assert_eq!(inv, f4.element(vec![rat(1, 2), rat(1, 2)]));
        assert!((&inv * &z).is_one());

        let f3 = CycloField::new(3);
        let z = &f3.one() - &f3.zeta();
        let inv = cyclo_invert(&z).unwrap();
        assert_eq!(inv, f3.element(vec![rat(2, 3), rat(1, 3)]));
        assert!((&inv * &z).is_one());

        assert!(cyclo_invert(&f3.one()).unwrap().is_one());
        assert_eq!(
            cyclo_invert(&f3.zero()),
            Err(Error::DivisionByZero("cyclotomic inversion"))
        );
    }

    #[test]
    fn sqrt5_from_fifth_roots() {
        let f5 = CycloField::new(5);
        let s = &(&f5.one() + &f5.zeta().scale(&int(2))) + &f5.zeta_pow(4).scale(&int(2));
        assert_eq!(&s * &s, f5.from_int(5));
        assert_eq!(s.conjugate(), s);
        assert_eq!(s.galois(2), -&s);
    }

    #[test]
    fn embedding_preserves_values() {
        let i4 = CycloField::new(4).zeta();
        let e = i4.embed(20).unwrap();
        assert_eq!(e, CycloField::new(20).zeta_pow(5));
        assert!(i4.embed(6).is_err());
    }

    #[test]
    fn display() {
        let f4 = CycloField::new(4);
        assert_eq!(f4.element(vec![rat(1, 2), rat(-1, 2)]).to_string(), "1/2 - 1/2*z");
        assert_eq!(f4.zero().to_string(), "0");
    }
}
