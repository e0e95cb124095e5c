use num_traits::{One, Zero};

use super::{zero_vec, RatMatrix, Rational};

/// Solution set of `A x = b` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    Affine(AffineSolution),
}

impl LinearSolution {
    pub fn affine(&self) -> Option<&AffineSolution> {
        match self {
            LinearSolution::Affine(a) => Some(a),
            LinearSolution::Inconsistent => None,
        }
    }
}

/// `x = particular + sum_f t_f * kernel[f]`, one kernel vector per free
/// column. Pivot variables are written as affine functions of the free
/// variables, so `x_p = offsets[p] + sum_f coefficients[p][f] * x_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
}

impl AffineSolution {
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// The point whose free coordinates equal `values` (in `free` order).
    pub fn point(&self, values: &[Rational]) -> Vec<Rational> {
        assert_eq!(values.len(), self.free.len(), "one value per free variable");
        let mut x = self.particular.clone();
        for (t, k) in values.iter().zip(&self.kernel) {
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi += t * ki;
            }
        }
        x
    }

    /// Affine expression `(constant, coefficient per free variable)` for
    /// variable `var`.
    pub fn expression(&self, var: usize) -> (Rational, Vec<Rational>) {
        let constant = self.particular[var].clone();
        let coeffs = self.kernel.iter().map(|k| k[var].clone()).collect();
        (constant, coeffs)
    }

    /// Whether the affine relation `sum_i coeffs[i] x_i = rhs` holds on the
    /// whole solution set.
    pub fn satisfies(&self, coeffs: &[Rational], rhs: &Rational) -> bool {
        let dot = |v: &[Rational]| {
            v.iter()
                .zip(coeffs)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        };
        dot(&self.particular) == *rhs && self.kernel.iter().all(|k| dot(k).is_zero())
    }
}

/// Exact parametrization of `{x : A x = b}`.
pub fn solve_linear_rational(a: &RatMatrix, b: &[Rational]) -> LinearSolution {
    let order: Vec<usize> = (0..a.cols()).collect();
    solve_linear_rational_with_order(a, b, &order)
}

/// Like [`solve_linear_rational`], but pivots are chosen by scanning columns
/// in `order`, so variables listed earlier are preferentially solved for and
/// later ones become the free parameters.
pub fn solve_linear_rational_with_order(
    a: &RatMatrix,
    b: &[Rational],
    order: &[usize],
) -> LinearSolution {
    let (rows, cols) = (a.rows(), a.cols());
    assert_eq!(b.len(), rows, "right-hand side length mismatch");
    let mut seen = vec![false; cols];
    for &c in order {
        assert!(c < cols && !seen[c], "column order must be a permutation");
        seen[c] = true;
    }
    assert_eq!(order.len(), cols, "column order must be a permutation");

    // Augmented matrix [A | b].
    let mut m = RatMatrix::zeros(rows, cols + 1);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = a[(i, j)].clone();
        }
        m[(i, cols)] = b[i].clone();
    }

    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = Rational::one() / &m[(r, c)];
        for j in 0..=cols {
            m[(r, j)] = &m[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[(i, c)].is_zero() {
                let f = -m[(i, c)].clone();
                m.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..rows).any(|i| !m[(i, cols)].is_zero()) {
        return LinearSolution::Inconsistent;
    }

    let free: Vec<usize> = order.iter().copied().filter(|c| !pivots.contains(c)).collect();
    let mut particular = zero_vec(cols);
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = m[(row, cols)].clone();
    }
    let kernel = free
        .iter()
        .map(|&f| {
            let mut k = zero_vec(cols);
            k[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                k[p] = -m[(row, f)].clone();
            }
            k
        })
        .collect();
    LinearSolution::Affine(AffineSolution {
        particular,
        kernel,
        pivots,
        free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, IntMatrix};

    #[test]
    fn single_relation_gives_a_line() {
        let a = IntMatrix::from_i64(&[&[1, -1]]).to_rational();
        let sol = solve_linear_rational(&a, &[int(0)]);
        let aff = sol.affine().unwrap();
        assert_eq!(aff.dimension(), 1);
        assert!(aff.satisfies(&[int(1), int(-1)], &int(0)));
        assert_eq!(aff.point(&[int(7)]), vec![int(7), int(7)]);
    }

    #[test]
    fn inconsistent_system_is_a_value() {
        let a = IntMatrix::from_i64(&[&[1], &[1]]).to_rational();
        assert_eq!(
            solve_linear_rational(&a, &[int(0), int(1)]),
            LinearSolution::Inconsistent
        );
    }

    #[test]
    fn column_order_controls_free_variables() {
        let a = IntMatrix::from_i64(&[&[1, 1, 1]]).to_rational();
        let sol = solve_linear_rational_with_order(&a, &[int(3)], &[2, 0, 1]);
        let aff = sol.affine().unwrap();
        assert_eq!(aff.pivots, vec![2]);
        assert_eq!(aff.free, vec![0, 1]);
        let (c, coeffs) = aff.expression(2);
        assert_eq!(c, int(3));
        assert_eq!(coeffs, vec![int(-1), int(-1)]);
    }
}
