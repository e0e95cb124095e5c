use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::gram::{DualVector, GramLattice};
use crate::error::{Error, Result};
use crate::exact::{big_mod, fmt_rat, int, rat_mod, smith_normal_form, IntMatrix, RatMatrix, Rational};

/// A finite quadratic form on `⊕ Z/n_i` given by its values on generators:
/// `q(g_i)` modulo `2Z` on the diagonal and `b(g_i, g_j)` modulo `Z` off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionForm {
    invariants: Vec<BigInt>,
    gram: RatMatrix,
    generators: Vec<DualVector>,
}

impl TorsionForm {
    /// Normalize and validate a form; `gram` entries may be any
    /// representatives.
    pub fn new(invariants: Vec<BigInt>, gram: &RatMatrix, generators: Vec<DualVector>) -> Result<Self> {
        let k = invariants.len();
        if gram.rows() != k || gram.cols() != k || !gram.is_symmetric() {
            return Err(Error::DimensionMismatch(format!(
                "{k} invariants for a {}x{} symmetric Gram",
                gram.rows(),
                gram.cols()
            )));
        }
        if !generators.is_empty() && generators.len() != k {
            return Err(Error::DimensionMismatch("one generator per invariant".into()));
        }
        let mut g = RatMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let m = if i == j { int(2) } else { int(1) };
                g[(i, j)] = rat_mod(&gram[(i, j)], &m);
            }
        }
        let form = Self {
            invariants,
            gram: g,
            generators,
        };
        if !form.is_well_defined() {
            return Err(Error::InvalidParameters(
                "form values are not compatible with the generator orders".into(),
            ));
        }
        Ok(form)
    }

    pub fn from_fractions(invariants: &[i64], gram: &[&[(i64, i64)]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = gram
            .iter()
            .map(|r| r.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect())
            .collect();
        Self::new(
            invariants.iter().map(|&n| BigInt::from(n)).collect(),
            &RatMatrix::from_rows(rows),
            Vec::new(),
        )
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    /// Normalized values, diagonal in `[0, 2)`, off-diagonal in `[0, 1)`.
    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn generators(&self) -> &[DualVector] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }

    /// `q(n_i g_i) ≡ 0 (mod 2)` and `b(n_i g_i, g_j) ≡ 0 (mod 1)`.
    pub fn is_well_defined(&self) -> bool {
        (0..self.rank()).all(|i| {
            let n = Rational::from_integer(self.invariants[i].clone());
            let qi = &self.gram[(i, i)] * &n * &n;
            let q_ok = rat_mod(&qi, &int(2)).is_zero();
            q_ok && (0..self.rank()).all(|j| {
                let x = if i == j { &self.gram[(i, i)] * &n } else { &self.gram[(i, j)] * &n };
                x.is_integer()
            })
        })
    }

    /// `q(Σ c_i g_i)` in `[0, 2)`.
    pub fn q(&self, c: &[BigInt]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            let ci = Rational::from_integer(c[i].clone());
            acc += &ci * &ci * &self.gram[(i, i)];
            for j in i + 1..self.rank() {
                let cj = Rational::from_integer(c[j].clone());
                acc += int(2) * &ci * &cj * &self.gram[(i, j)];
            }
        }
        rat_mod(&acc, &int(2))
    }

    /// `b(Σ x_i g_i, Σ y_j g_j)` in `[0, 1)`.
    pub fn b(&self, x: &[BigInt], y: &[BigInt]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let v = Rational::from_integer(&x[i] * &y[j]);
                // The diagonal stores q(g_i) = b(g_i, g_i) modulo 2.
                acc += v * &self.gram[(i, j)];
            }
        }
        rat_mod(&acc, &int(1))
    }

    /// `(q_1, b_12; b_12, q_2)` in canonical residues.
    pub fn render_gram(&self) -> String {
        let rows: Vec<String> = (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| fmt_rat(&self.gram[(i, j)]))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        format!("({})", rows.join("; "))
    }

    /// Every coefficient vector `c` with `0 <= c_i < n_i`. Only for small
    /// groups.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for n in &self.invariants {
            let n = n.to_u64().expect("small invariant");
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<BigInt>| {
                    (0..n).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(BigInt::from(a));
                        v
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for TorsionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv: Vec<String> = self.invariants.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{} with Gram {}", inv.join(" + "), self.render_gram())
    }
}

/// `A_L = L^∨ / L` for an even lattice, with its Smith data.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    lattice: GramLattice,
    u: IntMatrix,
    /// Indices `j` with `d_j > 1`.
    active: Vec<usize>,
    form: TorsionForm,
}

/// Discriminant group and form of an even lattice.
///
/// With `U G V = D` in Smith form, the classes of `V e_j / d_j` for
/// `d_j > 1` form a basis of `A_L ≅ ⊕ Z/d_j`.
pub fn discriminant_group(l: &GramLattice) -> Result<DiscriminantGroup> {
    if !l.is_even() {
        return Err(Error::InvalidParameters(
            "discriminant forms are taken on even lattices".into(),
        ));
    }
    let snf = smith_normal_form(l.gram());
    let d = snf.invariant_factors();
    if d.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateLattice);
    }
    let active: Vec<usize> = (0..d.len()).filter(|&j| !d[j].is_one()).collect();
    let generators: Vec<DualVector> = active
        .iter()
        .map(|&j| {
            DualVector(
                snf.v
                    .column(j)
                    .into_iter()
                    .map(|x| Rational::new(x, d[j].clone()))
                    .collect(),
            )
        })
        .collect();
    let k = active.len();
    let mut gram = RatMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = l.pair(&generators[i], &generators[j]);
        }
    }
    let invariants = active.iter().map(|&j| d[j].clone()).collect();
    let form = TorsionForm::new(invariants, &gram, generators)?;
    Ok(DiscriminantGroup {
        lattice: l.clone(),
        u: snf.u,
        active,
        form,
    })
}

impl DiscriminantGroup {
    pub fn lattice(&self) -> &GramLattice {
        &self.lattice
    }

    pub fn form(&self) -> &TorsionForm {
        &self.form
    }

    pub fn order(&self) -> BigInt {
        self.form.order()
    }

    /// Coordinates of the class of `x ∈ L^∨` on the generators.
    pub fn class_of(&self, x: &DualVector) -> Result<Vec<BigInt>> {
        let gx = self.lattice.pairings(x);
        if gx.iter().any(|p| !p.is_integer()) {
            return Err(Error::NotInDual(self.lattice.render(x)));
        }
        let gx: Vec<BigInt> = gx.into_iter().map(|p| p.to_integer()).collect();
        let c = self.u.mul_vec(&gx);
        Ok(self
            .active
            .iter()
            .zip(self.form.invariants())
            .map(|(&j, n)| big_mod(&c[j], n))
            .collect())
    }

    /// A representative of the class with coordinates `c`.
    pub fn element(&self, c: &[BigInt]) -> DualVector {
        let n = self.lattice.rank();
        self.form
            .generators()
            .iter()
            .zip(c)
            .fold(DualVector::zero(n), |acc, (g, ci)| {
                acc.add(&g.scale(&Rational::from_integer(ci.clone())))
            })
    }

    /// Order of the subgroup generated by the classes of `gens`.
    pub fn subgroup_order(&self, gens: &[DualVector]) -> Result<usize> {
        let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| self.class_of(g)).collect::<Result<_>>()?;
        let zero = vec![BigInt::zero(); self.form.rank()];
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y: Vec<BigInt> = x
                    .iter()
                    .zip(g)
                    .zip(self.form.invariants())
                    .map(|((a, b), n)| (a + b).mod_floor(n))
                    .collect();
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.len())
    }

    /// Classes fixed by the isometry `iso` (acting on coordinate columns).
    pub fn fixed_subgroup(&self, iso: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
        let g = self.lattice.gram();
        if &(&iso.transpose() * g) * iso != *g {
            return Err(Error::InvalidParameters("map is not an isometry".into()));
        }
        let iso_q = iso.to_rational();
        let mut out = Vec::new();
        for c in self.form.elements() {
            let x = self.element(&c);
            let y = DualVector(iso_q.mul_vec(&x.0));
            if self.class_of(&y.sub(&x))?.iter().all(Zero::is_zero) {
                out.push(c);
            }
        }
        Ok(out)
    }
}

/// Fixed part of `A_T` for `T = diag(2m, 2m)` under `t_1 ↦ t_2 ↦ -t_1`,
/// as pairs `(a, b)` for the classes of `(a t_1 + b t_2) / 2m`.
pub fn order4_rotation_fixed_part(m: u64) -> Result<Vec<(BigInt, BigInt)>> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be positive".into()));
    }
    let two_m = 2 * m as i64;
    let t = GramLattice::diagonal(&["t1", "t2"], &[two_m, two_m])?;
    let disc = discriminant_group(&t)?;
    let iso = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
    let modulus = BigInt::from(two_m);
    let scale = int(two_m);
    let mut out: Vec<(BigInt, BigInt)> = disc
        .fixed_subgroup(&iso)?
        .into_iter()
        .map(|c| {
            let x = disc.element(&c);
            let a = (&x.0[0] * &scale).to_integer();
            let b = (&x.0[1] * &scale).to_integer();
            (big_mod(&a, &modulus), big_mod(&b, &modulus))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The weaker conclusion `m | a`, `m | b` for the same classes.
pub fn rotation_weak_candidates(m: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    for a in [0, m] {
        for b in [0, m] {
            out.push((BigInt::from(a), BigInt::from(b)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_discriminant_groups() {
        let l0 = GramLattice::diagonal(&["C", "D"], &[12, -12]).unwrap();
        let d = discriminant_group(&l0).unwrap();
        assert_eq!(d.form().invariants(), big(&[12, 12]).as_slice());
        assert_eq!(d.order(), BigInt::from(144));

        let u6 = GramLattice::hyperbolic(["u1", "u2"], 6).unwrap();
        assert_eq!(
            discriminant_group(&u6).unwrap().form().invariants(),
            big(&[6, 6]).as_slice()
        );

        let t = GramLattice::diagonal(&["t1", "t2"], &[10, 10]).unwrap();
        let dt = discriminant_group(&t).unwrap();
        assert_eq!(dt.form().invariants(), big(&[10, 10]).as_slice());
        assert_eq!(dt.form().gram()[(0, 0)], rat(1, 10));
        assert_eq!(dt.form().gram()[(1, 1)], rat(1, 10));
    }

    #[test]
    fn odd_lattice_is_rejected() {
        let l = GramLattice::diagonal(&["a"], &[3]).unwrap();
        assert!(discriminant_group(&l).is_err());
    }

    #[test]
    fn class_round_trip() {
        let u6 = GramLattice::hyperbolic(["u1", "u2"], 6).unwrap();
        let t = GramLattice::diagonal(&["t1", "t2"], &[10, 10]).unwrap();
        let d = discriminant_group(&u6.direct_sum(&t)).unwrap();
        assert_eq!(d.order(), BigInt::from(3600));
        for c in [big(&[1, 2, 3, 4]), big(&[0, 0, 0, 0]), big(&[5, 0, 9, 1])] {
            let c: Vec<BigInt> = c
                .iter()
                .zip(d.form().invariants())
                .map(|(a, n)| a.mod_floor(n))
                .collect();
            assert_eq!(d.class_of(&d.element(&c)).unwrap(), c);
        }
        let outside = DualVector(vec![rat(1, 7), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert!(matches!(d.class_of(&outside), Err(Error::NotInDual(_))));
    }

    #[test]
    fn rotation_fixed_part() {
        let f5 = order4_rotation_fixed_part(5).unwrap();
        assert_eq!(f5, vec![(BigInt::zero(), BigInt::zero()), (BigInt::from(5), BigInt::from(5))]);
        let f1 = order4_rotation_fixed_part(1).unwrap();
        assert_eq!(f1, vec![(BigInt::zero(), BigInt::zero()), (BigInt::one(), BigInt::one())]);
        for m in 1..=8u64 {
            let two_m = BigInt::from(2 * m);
            for (a, b) in order4_rotation_fixed_part(m).unwrap() {
                assert!(((&a + &b) % &two_m).is_zero() && ((&a - &b) % &two_m).is_zero());
                assert!(((&a * BigInt::from(2)) % &two_m).is_zero());
            }
        }
    }

    #[test]
    fn form_from_fractions_normalizes() {
        let f = TorsionForm::from_fractions(&[30, 30], &[&[(-23, 30), (-1, 5)], &[(-1, 5), (-35, 30)]])
            .unwrap();
        assert_eq!(f.render_gram(), "(37/30, 4/5; 4/5, 5/6)");
        assert_eq!(f.order(), BigInt::from(900));
        assert!(TorsionForm::from_fractions(&[2], &[&[(1, 3)]]).is_err());
    }
}
