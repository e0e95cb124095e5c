//! Seeded property checks shared by the acceptance gate and the property
//! tests. Each returns a description of the first counterexample.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use a5k3::exact::{cyclotomic_polynomial, int, rat_mod, smith_normal_form, IntMatrix, IntPolynomial};
use a5k3::lattices::fixtures::Fixtures;
use a5k3::lattices::{discriminant_group, GramLattice};
use a5k3::obstruct::{exhaustive_isometry_search, is_group};

pub type Check = Result<(), String>;

/// `x^n - 1 = Π_{d | n} Φ_d` for `1 <= n <= n_max`.
pub fn cyclotomic_product_formula(n_max: u32) -> Check {
    for n in 1..=n_max {
        let product = (1..=n)
            .filter(|d| n % d == 0)
            .fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic_polynomial(d));
        let target = IntPolynomial::monomial(BigInt::one(), n as usize) - IntPolynomial::one();
        if product != target {
            return Err(format!("product of Phi_d for d | {n} is {product}"));
        }
    }
    Ok(())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    IntMatrix::from_rows(data)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k × k` minors, the `k`-th determinantal divisor.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in subsets(m.rows(), k) {
        for cols in subsets(m.cols(), k) {
            let minor = IntMatrix::from_rows(
                rows.iter()
                    .map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect(),
            );
            g = g.gcd(&minor.determinant());
        }
    }
    g
}

/// Checks one Smith normal form against the defining identities and, as an
/// independent oracle, against determinantal divisors.
pub fn check_snf(m: &IntMatrix) -> Check {
    let r = smith_normal_form(m);
    if &(&r.u * m) * &r.v != r.d {
        return Err(format!("u*m*v != d for\n{m}"));
    }
    if r.u.determinant().abs() != BigInt::one() || r.v.determinant().abs() != BigInt::one() {
        return Err(format!("transform not unimodular for\n{m}"));
    }
    for i in 0..r.d.rows() {
        for j in 0..r.d.cols() {
            if i != j && !r.d[(i, j)].is_zero() {
                return Err(format!("off-diagonal entry in d for\n{m}"));
            }
        }
    }
    let f = r.invariant_factors();
    let mut prod = BigInt::one();
    for (k, x) in f.iter().enumerate() {
        if x.is_negative() {
            return Err(format!("negative invariant factor for\n{m}"));
        }
        if k + 1 < f.len() && !(x.is_zero() && f[k + 1].is_zero()) && (x.is_zero() || !f[k + 1].is_multiple_of(x)) {
            return Err(format!("divisibility chain broken for\n{m}"));
        }
        prod *= x;
        if prod != determinantal_divisor(m, k + 1) {
            return Err(format!("determinantal divisor {} mismatch for\n{m}", k + 1));
        }
    }
    Ok(())
}

/// `count` seeded random matrices of shape up to 5 × 5.
pub fn snf_random(count: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let bound = if rng.gen_bool(0.3) { 2 } else { 30 };
        check_snf(&random_matrix(&mut rng, r, c, bound))?;
    }
    Ok(())
}

/// A random nondegenerate even lattice of rank 2 or 3.
pub fn random_even_lattice(rng: &mut ChaCha8Rng) -> GramLattice {
    loop {
        let n = rng.gen_range(2..=3);
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            rows[i][i] = 2 * rng.gen_range(-6..=6);
            for j in i + 1..n {
                let x = rng.gen_range(-7..=7);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        if let Ok(l) = GramLattice::new(labels, IntMatrix::from_i64(&refs)) {
            return l;
        }
    }
}

/// On random even lattices: `|A_L| = |det|`, `q` agrees with the norm of a
/// representative, and `q(x+y) - q(x) - q(y) = 2 b(x, y)` modulo 2.
pub fn discriminant_polarization(lattices: usize, samples: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..lattices {
        let l = random_even_lattice(&mut rng);
        let a = discriminant_group(&l).map_err(|e| e.to_string())?;
        if a.order() != l.determinant().abs() {
            return Err(format!("|A| = {} but det = {} for\n{}", a.order(), l.determinant(), l.gram()));
        }
        let form = a.form();
        let inv = form.invariants().to_vec();
        let draw = |rng: &mut ChaCha8Rng| -> Vec<BigInt> {
            inv.iter()
                .map(|d| BigInt::from(rng.gen_range(0..d.to_i64().unwrap())))
                .collect()
        };
        for _ in 0..samples {
            let (x, y) = (draw(&mut rng), draw(&mut rng));
            let two = int(2);
            let norm = rat_mod(&l.norm(&a.element(&x)), &two);
            if form.q(&x) != norm {
                return Err(format!("q disagrees with the lattice norm on\n{}", l.gram()));
            }
            let sum: Vec<BigInt> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
            let lhs = rat_mod(&(form.q(&sum) - form.q(&x) - form.q(&y)), &two);
            let rhs = rat_mod(&(int(2) * form.b(&x, &y)), &two);
            if lhs != rhs {
                return Err(format!("polarization fails on\n{}", l.gram()));
            }
            let back = a.class_of(&a.element(&x)).map_err(|e| e.to_string())?;
            let reduced: Vec<BigInt> = x.iter().zip(&inv).map(|(c, d)| c.mod_floor(d)).collect();
            if back != reduced {
                return Err(format!("class_of(element(c)) != c on\n{}", l.gram()));
            }
        }
    }
    Ok(())
}

/// Self-isometries of both bundled `(Z/30)²` forms are closed under
/// composition and inverses.
pub fn self_isometries_are_groups() -> Check {
    let f = Fixtures::bundled().map_err(|e| e.to_string())?;
    for name in ["delta", "epsilon"] {
        let form = f.form(name).map_err(|e| e.to_string())?;
        let isos = exhaustive_isometry_search(&form, &form).map_err(|e| e.to_string())?;
        if !is_group(&isos, 30) {
            return Err(format!("self-isometries of {name} are not a group"));
        }
    }
    Ok(())
}
