//! Holomorphic Lefschetz fixed-point systems.
//!
//! An automorphism `g` of order `n` with `g^*ω = η^det ω` has holomorphic
//! Lefschetz number `1 + η^{-det}`. Localizing it at the fixed locus gives
//!
//! ```text
//! 1 + η^{-det} = Σ_P 1/((1 - α_P)(1 - β_P)) + Σ_C (1 - g(C))(1 + λ)/(1 - λ)^2
//! ```
//!
//! where `(α_P, β_P)` are the tangent eigenvalues at an isolated point and
//! `λ` is the normal eigenvalue along a fixed curve. Grouping points by
//! eigenvalue type and clearing the common denominator turns this into a
//! polynomial identity in `η`; reducing modulo `Φ_n` and reading off
//! coefficients yields `φ(n)` linear equations in the point counts.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    cyclo_invert, fmt_rat, solve_linear_rational_with_order, AffineSolution, CycloField,
    CycloNumber, IntPolynomial, LinearSolution, RatMatrix, Rational,
};

/// Fixed-point counts of a symplectic automorphism by order.
pub struct NikulinTable;

impl NikulinTable {
    pub const ENTRIES: [(u32, u32); 7] = [(2, 8), (3, 6), (4, 4), (5, 4), (6, 2), (7, 3), (8, 2)];

    /// `|X^δ|` for a symplectic `δ` of the given order (`2..=8`).
    pub fn fixed_points(order: u32) -> Option<u32> {
        Self::ENTRIES
            .iter()
            .find(|(o, _)| *o == order)
            .map(|&(_, c)| c)
    }

    /// Euler number of the fixed locus of a symplectic automorphism; the
    /// identity fixes the whole surface (`χ = 24`).
    pub fn euler_of_order(order: u32) -> Option<i64> {
        match order {
            1 => Some(24),
            o => Self::fixed_points(o).map(i64::from),
        }
    }

    /// `Σ_δ χ(X^δ)` over a symplectic group given as `(class size, order)`.
    pub fn class_weighted_total(classes: &[(u64, u32)]) -> Option<i64> {
        classes.iter().try_fold(0i64, |acc, &(size, order)| {
            Some(acc + size as i64 * Self::euler_of_order(order)?)
        })
    }
}

/// Tangent type of an isolated fixed point: `g^*|T_P = (η^{-i}, η^{det+i})`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointType {
    pub index: u32,
    /// Exponents of the two eigenvalues, reduced modulo the conductor.
    pub exponents: (u32, u32),
    pub eigenvalues: (CycloNumber, CycloNumber),
}

/// Canonical isolated point types for `g` of order `n` with determinant
/// `η^det`. `i` is admitted when neither eigenvalue is 1 and `admit(i)`
/// holds; `i` and `-(det + i)` describe the same point with its tangent
/// coordinates swapped, and the smaller one is kept.
fn isolated_point_types(
    field: &Arc<CycloField>,
    det: u32,
    admit: impl Fn(u32) -> bool,
) -> Vec<PointType> {
    let n = field.conductor();
    let mut reps = BTreeSet::new();
    for i in 0..n {
        let a = (n - i) % n;
        let b = (det + i) % n;
        if a == 0 || b == 0 || !admit(i) {
            continue;
        }
        let partner = (2 * n - (det + i) % n) % n;
        reps.insert(i.min(partner));
    }
    reps.into_iter()
        .map(|i| {
            let exponents = ((n - i) % n, (det + i) % n);
            PointType {
                index: i,
                exponents,
                eigenvalues: (
                    field.zeta_pow(i64::from(exponents.0)),
                    field.zeta_pow(i64::from(exponents.1)),
                ),
            }
        })
        .collect()
}

/// Point types of `g = hδ` where `h` has order `order_i` (non-symplectic) and
/// `δ` is symplectic of order `k`, `gcd(order_i, k) = 1`.
///
/// Every fixed point of `g` is an isolated fixed point of the symplectic
/// power `g^I`, which forces `i ≢ 0 (mod k)`.
pub fn point_type_index_set(order_i: u32, k: u32) -> Result<Vec<PointType>> {
    check_mixed(order_i, k)?;
    let field = CycloField::new(order_i * k);
    Ok(isolated_point_types(&field, k, |i| i % k != 0))
}

fn check_mixed(order_i: u32, k: u32) -> Result<()> {
    if order_i == 0 || k < 2 || order_i.gcd(&k) != 1 {
        return Err(Error::InvalidParameters(format!(
            "need gcd(I, k) = 1 and k >= 2, got I = {order_i}, k = {k}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unknown {
    /// `m(i)`, the number of isolated points of type `i`.
    Isolated(u32),
    /// `n`, half the Euler number of the one-dimensional fixed locus.
    CurveHalfEuler,
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unknown::Isolated(i) => write!(f, "m_{i}"),
            Unknown::CurveHalfEuler => write!(f, "n"),
        }
    }
}

/// Linear system over `Q` obtained from the Lefschetz identity after
/// clearing denominators and reducing modulo `Φ_n`.
#[derive(Clone, Debug)]
pub struct FixedPointSystem {
    field: Arc<CycloField>,
    det: u32,
    point_types: Vec<PointType>,
    curve_normal_exponent: Option<u32>,
    unknowns: Vec<Unknown>,
    matrix: RatMatrix,
    rhs: Vec<Rational>,
    denominator: CycloNumber,
}

/// `1 - x^e` as an integer polynomial.
fn one_minus_power(e: u32) -> IntPolynomial {
    &IntPolynomial::one() - &IntPolynomial::monomial(BigInt::one(), e as usize)
}

fn product(factors: &[IntPolynomial]) -> IntPolynomial {
    factors
        .iter()
        .fold(IntPolynomial::one(), |acc, f| &acc * f)
}

impl FixedPointSystem {
    fn build(
        field: Arc<CycloField>,
        det: u32,
        point_types: Vec<PointType>,
        curve_normal_exponent: Option<u32>,
    ) -> Result<Self> {
        let n = field.conductor();
        // One denominator block per unknown, in unknown order.
        let mut blocks: Vec<Vec<IntPolynomial>> = point_types
            .iter()
            .map(|p| vec![one_minus_power(p.exponents.0), one_minus_power(p.exponents.1)])
            .collect();
        if let Some(c) = curve_normal_exponent {
            blocks.push(vec![one_minus_power(c), one_minus_power(c)]);
        }
        let all: Vec<IntPolynomial> = blocks.iter().flatten().cloned().collect();
        let common = product(&all);
        let denominator = field.reduce(&common.to_rational());
        if denominator.is_zero() {
            return Err(Error::DivisionByZero("Lefschetz common denominator"));
        }

        let deg = field.degree();
        let mut unknowns: Vec<Unknown> = point_types
            .iter()
            .map(|p| Unknown::Isolated(p.index))
            .collect();
        if curve_normal_exponent.is_some() {
            unknowns.push(Unknown::CurveHalfEuler);
        }
        let mut matrix = RatMatrix::zeros(deg, unknowns.len());
        for (col, _) in blocks.iter().enumerate() {
            let others: Vec<IntPolynomial> = blocks
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .flat_map(|(_, b)| b.iter().cloned())
                .collect();
            let mut numerator = product(&others);
            if col == point_types.len() {
                let c = curve_normal_exponent.expect("curve block present");
                let one_plus = &IntPolynomial::one()
                    + &IntPolynomial::monomial(BigInt::one(), c as usize);
                numerator = &numerator * &one_plus;
            }
            let residue = field.reduce(&numerator.to_rational());
            for (row, v) in residue.coeffs().iter().enumerate() {
                matrix[(row, col)] = v.clone();
            }
        }
        // Lefschetz number 1 + η^{-det}, multiplied by the denominator.
        let lef = &IntPolynomial::one()
            + &IntPolynomial::monomial(BigInt::one(), ((n - det % n) % n) as usize);
        let rhs = field.reduce(&(&lef * &common).to_rational()).coeffs().to_vec();

        Ok(Self {
            field,
            det,
            point_types,
            curve_normal_exponent,
            unknowns,
            matrix,
            rhs,
            denominator,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn point_types(&self) -> &[PointType] {
        &self.point_types
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    /// Coefficient matrix, one row per power-basis coordinate.
    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    pub fn equation_count(&self) -> usize {
        self.matrix.rows()
    }

    /// Residue of the cleared common denominator; never zero.
    pub fn denominator(&self) -> &CycloNumber {
        &self.denominator
    }

    pub fn position(&self, u: Unknown) -> Option<usize> {
        self.unknowns.iter().position(|&x| x == u)
    }

    /// Solve over `Q` with default pivoting (earlier unknowns are solved for).
    pub fn solve(&self) -> LinearSolution {
        let order: Vec<usize> = (0..self.unknowns.len()).collect();
        solve_linear_rational_with_order(&self.matrix, &self.rhs, &order)
    }

    /// Solve over `Q`, keeping `free` as the parameters where possible.
    pub fn solve_with_free(&self, free: &[Unknown]) -> Result<LinearSolution> {
        let mut tail = Vec::with_capacity(free.len());
        for &u in free {
            tail.push(self.position(u).ok_or_else(|| {
                Error::InvalidParameters(format!("{u} is not an unknown of this system"))
            })?);
        }
        let mut order: Vec<usize> = (0..self.unknowns.len())
            .filter(|i| !tail.contains(i))
            .collect();
        order.extend(tail);
        Ok(solve_linear_rational_with_order(&self.matrix, &self.rhs, &order))
    }

    /// Evaluate the original (uncleared) Lefschetz identity at `values`,
    /// inverting each local denominator in `Q(ζ_n)`. Zero exactly when the
    /// values satisfy the identity.
    pub fn residual(&self, values: &[Rational]) -> Result<CycloNumber> {
        if values.len() != self.unknowns.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} values, got {}",
                self.unknowns.len(),
                values.len()
            )));
        }
        let f = &self.field;
        let one = f.one();
        let mut acc = -&(&one + &f.zeta_pow(-i64::from(self.det)));
        for (p, v) in self.point_types.iter().zip(values) {
            let den = &(&one - &p.eigenvalues.0) * &(&one - &p.eigenvalues.1);
            acc = &acc + &cyclo_invert(&den)?.scale(v);
        }
        if let Some(c) = self.curve_normal_exponent {
            let lambda = f.zeta_pow(i64::from(c));
            let om = &one - &lambda;
            let term = &(&one + &lambda) * &cyclo_invert(&(&om * &om))?;
            let n = values.last().expect("curve unknown is last");
            acc = &acc + &term.scale(n);
        }
        Ok(acc)
    }
}

/// The cleared fixed-point system for `g = hδ` (see [`point_type_index_set`]).
pub fn build_mixed_order_system(order_i: u32, k: u32) -> Result<FixedPointSystem> {
    check_mixed(order_i, k)?;
    let field = CycloField::new(order_i * k);
    let types = isolated_point_types(&field, k, |i| i % k != 0);
    FixedPointSystem::build(field, k, types, None)
}

/// The system for a purely non-symplectic `h` of order `I` with
/// `h^*ω = η_I ω`: isolated points of every admissible type plus curves
/// whose normal eigenvalue is `η_I`.
pub fn build_pure_order_system(order_i: u32) -> Result<FixedPointSystem> {
    if order_i < 2 {
        return Err(Error::InvalidParameters(format!(
            "non-symplectic order must be >= 2, got {order_i}"
        )));
    }
    let field = CycloField::new(order_i);
    let types = isolated_point_types(&field, 1, |_| true);
    FixedPointSystem::build(field, 1, types, Some(1))
}

/// A nonnegative integer point of a fixed-point system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixedPointSolution {
    /// `(i, m(i))` in point-type order.
    pub counts: Vec<(u32, u64)>,
    pub total: u64,
    pub curve_half_euler: Option<i64>,
    pub euler: i64,
}

impl FixedPointSolution {
    pub fn values(&self) -> Vec<u64> {
        self.counts.iter().map(|&(_, m)| m).collect()
    }
}

/// All integer points with every `m_i >= 0` and `Σ m_i <= bound`, in
/// lexicographic order of the free parameters of the default solve.
pub fn enumerate_nonnegative_solutions(
    sys: &FixedPointSystem,
    bound: u32,
) -> Result<Vec<FixedPointSolution>> {
    if sys.unknowns.iter().any(|u| !matches!(u, Unknown::Isolated(_))) {
        return Err(Error::InvalidParameters(
            "enumeration needs a system of isolated-point counts only".into(),
        ));
    }
    let LinearSolution::Affine(aff) = sys.solve() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let dim = aff.dimension();
    let mut params = vec![0u32; dim];
    loop {
        if let Some(sol) = integral_point(sys, &aff, &params, bound) {
            out.push(sol);
        }
        // Odometer over [0, bound]^dim, last parameter fastest.
        let mut pos = dim;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if params[pos] < bound {
                params[pos] += 1;
                params[pos + 1..].iter_mut().for_each(|p| *p = 0);
                break;
            }
        }
    }
}

fn integral_point(
    sys: &FixedPointSystem,
    aff: &AffineSolution,
    params: &[u32],
    bound: u32,
) -> Option<FixedPointSolution> {
    let values: Vec<Rational> = params
        .iter()
        .map(|&p| Rational::from_integer(BigInt::from(p)))
        .collect();
    let point = aff.point(&values);
    let mut counts = Vec::with_capacity(point.len());
    for (u, x) in sys.unknowns.iter().zip(&point) {
        if !x.is_integer() || x.is_negative() {
            return None;
        }
        let Unknown::Isolated(i) = u else { return None };
        counts.push((*i, x.to_integer().to_u64()?));
    }
    let total: u64 = counts.iter().map(|&(_, m)| m).sum();
    (total <= u64::from(bound)).then_some(FixedPointSolution {
        counts,
        total,
        curve_half_euler: None,
        euler: total as i64,
    })
}

/// `m = constant + slope * n` for a purely non-symplectic automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureRelation {
    pub order: u32,
    pub constant: Rational,
    pub slope: Rational,
    /// Admissible range of `n`, a recorded constraint (it rests on rank
    /// bounds for the transcendental lattice, not on the Lefschetz identity).
    pub n_range: (i64, i64),
}

impl PureRelation {
    pub fn isolated_count(&self, n: i64) -> Rational {
        &self.constant + &self.slope * Rational::from_integer(BigInt::from(n))
    }

    pub fn euler(&self, n: i64) -> Rational {
        self.isolated_count(n) + Rational::from_integer(BigInt::from(2 * n))
    }
}

impl fmt::Display for PureRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slope = if self.slope.is_one() {
            "n".to_string()
        } else {
            format!("{}*n", fmt_rat(&self.slope))
        };
        write!(
            f,
            "m = {} + {slope}, {} <= n <= {}",
            fmt_rat(&self.constant),
            self.n_range.0,
            self.n_range.1
        )
    }
}

fn recorded_curve_range(order_i: u32) -> Option<(i64, i64)> {
    match order_i {
        3 => Some((-3, 6)),
        4 => Some((-2, 4)),
        _ => None,
    }
}

/// Solve the pure-order identity for `I ∈ {3, 4}` as `m` in terms of `n`.
pub fn pure_order_relation(order_i: u32) -> Result<PureRelation> {
    let n_range = recorded_curve_range(order_i).ok_or_else(|| {
        Error::InvalidParameters(format!("pure order must be 3 or 4, got {order_i}"))
    })?;
    let sys = build_pure_order_system(order_i)?;
    if sys.point_types.len() != 1 {
        return Err(Error::InvalidParameters(format!(
            "expected a single isolated point type, found {}",
            sys.point_types.len()
        )));
    }
    let sol = sys.solve_with_free(&[Unknown::CurveHalfEuler])?;
    let aff = sol
        .affine()
        .filter(|a| a.dimension() == 1 && a.pivots == [0])
        .ok_or_else(|| {
            Error::InvalidParameters("pure-order system is not a one-parameter family".into())
        })?;
    let (constant, coeffs) = aff.expression(0);
    Ok(PureRelation {
        order: order_i,
        constant,
        slope: coeffs[0].clone(),
        n_range,
    })
}

/// `χ = m + 2n`.
pub fn euler_number(m: u64, n: i64) -> i64 {
    m as i64 + 2 * n
}

/// A relation `x_target = constant + Σ coef * x_index` between unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub target: Unknown,
    pub constant: i64,
    pub terms: Vec<(i64, Unknown)>,
}

impl Relation {
    pub fn isolated(target: u32, constant: i64, terms: &[(i64, u32)]) -> Self {
        Self {
            target: Unknown::Isolated(target),
            constant,
            terms: terms.iter().map(|&(c, i)| (c, Unknown::Isolated(i))).collect(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.target)?;
        let mut first = true;
        if self.constant != 0 || self.terms.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for &(c, u) in &self.terms {
            let mag = c.unsigned_abs();
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag == 1 {
                write!(f, "{u}")?;
            } else {
                write!(f, "{mag}*{u}")?;
            }
        }
        Ok(())
    }
}

/// Express every pivot unknown of `aff` as a [`Relation`] in the free
/// unknowns. Returns `None` if some coefficient is not integral.
pub fn relations_of(sys: &FixedPointSystem, aff: &AffineSolution) -> Option<Vec<Relation>> {
    let mut out = Vec::new();
    for &p in &aff.pivots {
        let (c, coeffs) = aff.expression(p);
        let mut terms = Vec::new();
        for (&f, a) in aff.free.iter().zip(&coeffs) {
            if !a.is_zero() {
                terms.push((ratio_to_i64(a)?, sys.unknowns[f]));
            }
        }
        out.push(Relation {
            target: sys.unknowns[p],
            constant: ratio_to_i64(&c)?,
            terms,
        });
    }
    Some(out)
}

fn ratio_to_i64(x: &Rational) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

/// Whether the solution set of `sys` is exactly the affine space cut out by
/// `relations` (each relation holds on it and the dimensions agree).
pub fn solution_set_matches(sys: &FixedPointSystem, relations: &[Relation]) -> bool {
    let LinearSolution::Affine(aff) = sys.solve() else {
        return false;
    };
    let width = sys.unknowns.len();
    let holds = relations.iter().all(|r| {
        let mut coeffs = vec![Rational::zero(); width];
        let Some(t) = sys.position(r.target) else {
            return false;
        };
        coeffs[t] += Rational::one();
        for &(c, u) in &r.terms {
            let Some(j) = sys.position(u) else {
                return false;
            };
            coeffs[j] -= Rational::from_integer(BigInt::from(c));
        }
        aff.satisfies(&coeffs, &Rational::from_integer(BigInt::from(r.constant)))
    });
    holds && width - aff.dimension() == relations.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indices(i: u32, k: u32) -> Vec<u32> {
        point_type_index_set(i, k)
            .unwrap()
            .into_iter()
            .map(|p| p.index)
            .collect()
    }

    #[test]
    fn index_sets_match_listed_values() {
        assert_eq!(indices(3, 5), vec![1, 2, 3, 4, 11, 12]);
        assert_eq!(indices(4, 5), vec![1, 2, 3, 4, 6, 7, 16, 17]);
        assert_eq!(indices(4, 3), vec![1, 2, 4, 10]);
    }

    #[test]
    fn point_types_have_the_right_determinant() {
        for (i, k) in [(3, 5), (4, 5), (4, 3)] {
            let field = CycloField::new(i * k);
            let det = field.zeta_pow(i64::from(k));
            for p in point_type_index_set(i, k).unwrap() {
                assert!(!p.eigenvalues.0.is_one() && !p.eigenvalues.1.is_one());
                assert_eq!(&p.eigenvalues.0 * &p.eigenvalues.1, det);
            }
        }
    }

    #[test]
    fn rejects_non_coprime_orders() {
        assert!(matches!(
            point_type_index_set(4, 2),
            Err(Error::InvalidParameters(_))
        ));
        assert!(build_mixed_order_system(3, 3).is_err());
        assert!(point_type_index_set(3, 1).is_err());
    }

    #[test]
    fn equation_count_is_phi() {
        assert_eq!(build_mixed_order_system(3, 5).unwrap().equation_count(), 8);
        assert_eq!(build_mixed_order_system(4, 5).unwrap().equation_count(), 8);
        assert_eq!(build_mixed_order_system(4, 3).unwrap().equation_count(), 4);
    }

    #[test]
    fn pure_relations() {
        let r4 = pure_order_relation(4).unwrap();
        assert_eq!((r4.constant.clone(), r4.slope.clone()), (Rational::from_integer(4.into()), Rational::from_integer(2.into())));
        assert_eq!(r4.n_range, (-2, 4));
        assert_eq!(r4.euler(0), Rational::from_integer(4.into()));
        assert_eq!(r4.to_string(), "m = 4 + 2*n, -2 <= n <= 4");
        let r3 = pure_order_relation(3).unwrap();
        assert_eq!(r3.to_string(), "m = 3 + n, -3 <= n <= 6");
        assert!(pure_order_relation(5).is_err());
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(euler_number(6, 1), 8);
        assert_eq!(euler_number(0, 0), 0);
        assert_eq!(euler_number(4, 0), 4);
    }

    #[test]
    fn nikulin_total_over_a5() {
        let a5 = [(1, 1), (15, 2), (20, 3), (24, 5)];
        assert_eq!(NikulinTable::class_weighted_total(&a5), Some(360));
        assert_eq!(NikulinTable::fixed_points(9), None);
    }

    fn solutions(i: u32, k: u32) -> Vec<Vec<u64>> {
        let sys = build_mixed_order_system(i, k).unwrap();
        let bound = NikulinTable::fixed_points(k).unwrap();
        enumerate_nonnegative_solutions(&sys, bound)
            .unwrap()
            .into_iter()
            .map(|s| s.values())
            .collect()
    }

    #[test]
    fn mixed_solution_sets() {
        assert_eq!(solutions(3, 5), vec![vec![1, 0, 1, 1, 0, 1]]);
        assert_eq!(solutions(4, 5), vec![vec![1, 1, 0, 0, 1, 0, 0, 1]]);
        assert_eq!(
            solutions(4, 3),
            vec![vec![3, 0, 0, 1], vec![1, 0, 1, 0], vec![2, 1, 2, 1], vec![0, 1, 3, 0]]
        );
    }

    #[test]
    fn solutions_plug_back_into_the_uncleared_identity() {
        for (i, k) in [(3, 5), (4, 5), (4, 3)] {
            let sys = build_mixed_order_system(i, k).unwrap();
            for s in enumerate_nonnegative_solutions(&sys, 6).unwrap() {
                let v: Vec<Rational> = s
                    .values()
                    .iter()
                    .map(|&m| Rational::from_integer(BigInt::from(m)))
                    .collect();
                assert!(sys.residual(&v).unwrap().is_zero());
            }
            let bad = vec![Rational::one(); sys.unknowns().len()];
            assert!(!sys.residual(&bad).unwrap().is_zero());
        }
    }

    #[test]
    fn pure_relation_plugs_back() {
        for order in [3, 4] {
            let sys = build_pure_order_system(order).unwrap();
            let rel = pure_order_relation(order).unwrap();
            for n in rel.n_range.0..=rel.n_range.1 {
                let v = vec![rel.isolated_count(n), Rational::from_integer(BigInt::from(n))];
                assert!(sys.residual(&v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn free_variable_choice_gives_integral_relations() {
        let sys = build_mixed_order_system(3, 5).unwrap();
        let sol = sys
            .solve_with_free(&[Unknown::Isolated(3), Unknown::Isolated(4)])
            .unwrap();
        let rels = relations_of(&sys, sol.affine().unwrap()).unwrap();
        assert_eq!(rels.len(), 4);
        assert!(solution_set_matches(&sys, &rels));
        assert!(!solution_set_matches(&sys, &rels[..3]));
    }

    #[test]
    fn listed_relations_cut_out_the_solution_sets() {
        let r = Relation::isolated;
        let cases = [
            (
                (3, 5),
                vec![
                    r(1, 0, &[(1, 4)]),
                    r(2, -1, &[(1, 3)]),
                    r(11, -1, &[(1, 4)]),
                    r(12, 0, &[(1, 3)]),
                ],
            ),
            (
                (4, 5),
                vec![
                    r(1, -3, &[(2, 3), (-3, 4), (4, 6), (-2, 7)]),
                    r(2, -1, &[(1, 3), (-2, 4), (2, 6)]),
                    r(16, -5, &[(2, 3), (-4, 4), (5, 6), (-2, 7)]),
                    r(17, 3, &[(2, 4), (-2, 6), (1, 7)]),
                ],
            ),
            ((4, 3), vec![r(1, 3, &[(3, 2), (-2, 4)]), r(10, 1, &[(2, 2), (-1, 4)])]),
        ];
        for ((i, k), rels) in cases {
            let sys = build_mixed_order_system(i, k).unwrap();
            assert!(solution_set_matches(&sys, &rels), "({i}, {k})");
        }
        let sys = build_mixed_order_system(4, 3).unwrap();
        assert!(!solution_set_matches(&sys, &[r(1, 3, &[(3, 2), (-1, 4)]), r(10, 1, &[(2, 2), (-1, 4)])]));
    }

    #[test]
    fn relation_display() {
        let r = Relation::isolated(1, -3, &[(2, 3), (-3, 4), (4, 6), (-2, 7)]);
        assert_eq!(r.to_string(), "m_1 = -3 + 2*m_3 - 3*m_4 + 4*m_6 - 2*m_7");
        assert_eq!(Relation::isolated(1, 0, &[(1, 4)]).to_string(), "m_1 = m_4");
    }
}
