use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, hermite_normal_form, lcm_denominators, IntMatrix, RatMatrix, Rational};

/// A vector of `L ⊗ Q` in the basis of its lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualVector(pub Vec<Rational>);

impl DualVector {
    pub fn zero(n: usize) -> Self {
        DualVector(vec![Rational::zero(); n])
    }

    pub fn from_fractions(entries: &[(i64, i64)]) -> Self {
        DualVector(
            entries
                .iter()
                .map(|&(n, d)| Rational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        DualVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        DualVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DualVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Representative with every coordinate in `[0, 1)`.
    pub fn reduce_mod_lattice(&self) -> Self {
        DualVector(self.0.iter().map(|a| a - a.floor()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        DualVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn split_at(&self, k: usize) -> (Self, Self) {
        (DualVector(self.0[..k].to_vec()), DualVector(self.0[k..].to_vec()))
    }
}

/// An integral lattice given by labelled basis vectors and a Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    labels: Vec<String>,
    gram: IntMatrix,
}

impl GramLattice {
    pub fn new<S: Into<String>>(labels: Vec<S>, gram: IntMatrix) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if !gram.is_square() || gram.rows() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a {}x{} Gram matrix",
                labels.len(),
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidParameters("Gram matrix is not symmetric".into()));
        }
        if gram.determinant().is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(Self { labels, gram })
    }

    pub fn diagonal(labels: &[&str], entries: &[i64]) -> Result<Self> {
        let d: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
        Self::new(labels.to_vec(), IntMatrix::diagonal(&d))
    }

    /// `U(k)`: two isotropic vectors with product `k`.
    pub fn hyperbolic(labels: [&str; 2], k: i64) -> Result<Self> {
        Self::new(labels.to_vec(), IntMatrix::from_i64(&[&[0, k], &[k, 0]]))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[(i, i)] % 2i32).is_zero())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            labels: self.labels.iter().chain(&other.labels).cloned().collect(),
            gram: self.gram.direct_sum(&other.gram),
        }
    }

    pub fn pair(&self, x: &DualVector, y: &DualVector) -> Rational {
        let gy = self.pairings(y);
        x.0.iter().zip(&gy).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm(&self, x: &DualVector) -> Rational {
        self.pair(x, x)
    }

    /// `(x · e_i)_i`, the coordinates of `x` in the dual basis.
    pub fn pairings(&self, x: &DualVector) -> Vec<Rational> {
        assert_eq!(x.len(), self.rank(), "vector length must equal the rank");
        self.gram.to_rational().mul_vec(&x.0)
    }

    pub fn in_dual(&self, x: &DualVector) -> bool {
        self.pairings(x).iter().all(|p| p.is_integer())
    }

    /// `x = Σ x_i e_i` with labels, e.g. `1/2*C + 1/2*D`.
    pub fn render(&self, x: &DualVector) -> String {
        let mut out = String::new();
        for (c, label) in x.0.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&fmt_rat(&mag));
                out.push('*');
            }
            out.push_str(label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Gram matrix of the rows of `basis`, given in this lattice's coordinates.
    pub fn gram_of(&self, basis: &RatMatrix) -> RatMatrix {
        let g = self.gram.to_rational();
        &(basis * &g) * &basis.transpose()
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[{}] with Gram {}", self.labels.join(", "), self.gram)
    }
}

/// `[L_sup : L_sub]` for `L_sub` embedded by `embedding` (row `i` is the
/// `i`-th basis vector of `L_sub` in the basis of `L_sup`).
///
/// Checks that the embedding is an isometry and that
/// `|det L_sub| = index² · |det L_sup|`.
pub fn sublattice_index(
    sub: &GramLattice,
    sup: &GramLattice,
    embedding: &IntMatrix,
) -> Result<BigInt> {
    if sub.rank() != sup.rank()
        || embedding.rows() != sub.rank()
        || embedding.cols() != sup.rank()
    {
        return Err(Error::DimensionMismatch(format!(
            "ranks {} and {} with a {}x{} embedding",
            sub.rank(),
            sup.rank(),
            embedding.rows(),
            embedding.cols()
        )));
    }
    let pulled = &(embedding * sup.gram()) * &embedding.transpose();
    if &pulled != sub.gram() {
        return Err(Error::InvalidParameters(
            "embedding does not preserve the Gram matrix".into(),
        ));
    }
    let index = embedding.determinant().abs();
    if index.is_zero() {
        return Err(Error::InvalidParameters("embedding is not injective".into()));
    }
    debug_assert_eq!(
        sub.determinant().abs(),
        &index * &index * sup.determinant().abs()
    );
    Ok(index)
}

/// Canonical basis (rows, ambient coordinates) of the lattice spanned by
/// `generators`, via the Hermite normal form after clearing denominators.
pub fn lattice_basis(generators: &[DualVector]) -> Result<RatMatrix> {
    let n = generators.first().map_or(0, DualVector::len);
    let den = lcm_denominators(generators.iter().flat_map(|v| v.0.iter()));
    let denr = Rational::from_integer(den.clone());
    let mut m = IntMatrix::zeros(generators.len(), n);
    for (i, v) in generators.iter().enumerate() {
        if v.len() != n {
            return Err(Error::DimensionMismatch("generator lengths differ".into()));
        }
        for (j, x) in v.0.iter().enumerate() {
            m[(i, j)] = (x * &denr).to_integer();
        }
    }
    let h = hermite_normal_form(&m);
    let rows: Vec<Vec<Rational>> = h
        .to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.into_iter().map(|x| Rational::new(x, den.clone())).collect())
        .collect();
    Ok(RatMatrix::from_rows(rows))
}

/// The overlattice of `base` generated by its basis and `glue`.
#[derive(Clone, Debug)]
pub struct Overlattice {
    /// Rows are the new basis in the coordinates of `base`.
    pub basis: RatMatrix,
    pub lattice: GramLattice,
}

impl Overlattice {
    /// Express an ambient vector in the overlattice basis.
    pub fn from_ambient(&self, x: &DualVector) -> Result<DualVector> {
        let inv = self
            .basis
            .transpose()
            .inverse()
            .ok_or(Error::DegenerateLattice)?;
        Ok(DualVector(inv.mul_vec(&x.0)))
    }

    pub fn to_ambient(&self, x: &DualVector) -> DualVector {
        DualVector(self.basis.transpose().mul_vec(&x.0))
    }

    /// Whether the rows of `other` (ambient coordinates) span exactly this
    /// lattice.
    pub fn is_spanned_by(&self, other: &[DualVector]) -> Result<bool> {
        let rows: Vec<DualVector> = self.basis.to_rows().into_iter().map(DualVector).collect();
        Ok(lattice_basis(other)? == lattice_basis(&rows)?)
    }
}

/// Build `base + Σ Z·glue`; fails if the result is not integral.
pub fn overlattice(base: &GramLattice, glue: &[DualVector]) -> Result<Overlattice> {
    let n = base.rank();
    let mut gens: Vec<DualVector> = (0..n)
        .map(|i| {
            let mut v = DualVector::zero(n);
            v.0[i] = Rational::one();
            v
        })
        .collect();
    gens.extend(glue.iter().cloned());
    let basis = lattice_basis(&gens)?;
    let gram = base
        .gram_of(&basis)
        .to_integer()
        .ok_or_else(|| Error::InvalidGlue("overlattice is not integral".into()))?;
    let labels: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    Ok(Overlattice {
        basis,
        lattice: GramLattice::new(labels, gram)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn construction_checks() {
        assert!(matches!(
            GramLattice::new(vec!["a", "b"], IntMatrix::from_i64(&[&[1, 1], &[1, 1]])),
            Err(Error::DegenerateLattice)
        ));
        assert!(GramLattice::new(vec!["a"], IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).is_err());
        let u = GramLattice::hyperbolic(["u1", "u2"], 6).unwrap();
        assert!(u.is_even());
        assert_eq!(u.determinant(), BigInt::from(-36));
    }

    #[test]
    fn l0_in_u6_has_index_two() {
        let l0 = GramLattice::diagonal(&["C", "D"], &[12, -12]).unwrap();
        let u6 = GramLattice::hyperbolic(["u1", "u2"], 6).unwrap();
        let e = IntMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(sublattice_index(&l0, &u6, &e).unwrap(), BigInt::from(2));
        assert_eq!(
            sublattice_index(&u6, &u6, &IntMatrix::identity(2)).unwrap(),
            BigInt::from(1)
        );
        let bad = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert!(sublattice_index(&l0, &u6, &bad).is_err());
    }

    #[test]
    fn render_uses_labels() {
        let l0 = GramLattice::diagonal(&["C", "D"], &[12, -12]).unwrap();
        let v = DualVector(vec![rat(1, 2), rat(-1, 2)]);
        assert_eq!(l0.render(&v), "1/2*C - 1/2*D");
        assert_eq!(l0.render(&DualVector::zero(2)), "0");
        assert_eq!(l0.norm(&v), rat(0, 1));
    }

    #[test]
    fn overlattice_of_l0_is_u6() {
        let l0 = GramLattice::diagonal(&["C", "D"], &[12, -12]).unwrap();
        let theta = DualVector(vec![rat(1, 2), rat(1, 2)]);
        let over = overlattice(&l0, &[theta]).unwrap();
        assert_eq!(over.lattice.determinant(), BigInt::from(-36));
        let u1 = DualVector(vec![rat(1, 2), rat(1, 2)]);
        let u2 = DualVector(vec![rat(1, 2), rat(-1, 2)]);
        assert!(over.is_spanned_by(&[u1.clone(), u2.clone()]).unwrap());
        let b = RatMatrix::from_rows(vec![u1.0, u2.0]);
        assert_eq!(
            l0.gram_of(&b).to_integer().unwrap(),
            IntMatrix::from_i64(&[&[0, 6], &[6, 0]])
        );
        let odd = DualVector(vec![rat(1, 2), rat(0, 1)]);
        assert!(overlattice(&l0, &[odd]).is_ok());
    }
}
