//! Determinant bookkeeping and the final non-existence argument: the cited
//! discriminant form and the computed one admit no isometry.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{lcm_denominators, Rational};
use crate::lattices::fixtures::Fixtures;
use crate::lattices::TorsionForm;

/// `(m, d_1, d)` together with the determinant it matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DetCase {
    pub m: u64,
    pub d1: u64,
    pub d: u64,
    pub det: u64,
}

impl fmt::Display for DetCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.d1, self.d)
    }
}

/// `|det L_0| · |det T| = 144 · 4m²`.
pub fn lhs(m: u64) -> u64 {
    576 * m * m
}

/// All `(m, d_1, d)` with `576 m² = d_1² d² |det|` for some pooled `|det|`.
pub fn determinant_case_enumeration(
    det_pool: &[u64],
    d1_pool: &[u64],
    d_pool: &[u64],
    m_max: u64,
) -> BTreeSet<DetCase> {
    let mut out = BTreeSet::new();
    for m in 1..=m_max {
        for &d1 in d1_pool {
            for &d in d_pool {
                for &det in det_pool {
                    if lhs(m) == d1 * d1 * d * d * det {
                        out.insert(DetCase { m, d1, d, det });
                    }
                }
            }
        }
    }
    out
}

/// Largest `m` that can satisfy the determinant equation for these pools.
pub fn m_bound(det_pool: &[u64], d1_pool: &[u64], d_pool: &[u64]) -> u64 {
    let top = det_pool.iter().max().copied().unwrap_or(0)
        * d1_pool.iter().map(|x| x * x).max().unwrap_or(0)
        * d_pool.iter().map(|x| x * x).max().unwrap_or(0);
    ((top / 576) as f64).sqrt() as u64 + 1
}

pub const D1_POOL: [u64; 2] = [1, 2];
pub const D_POOL: [u64; 3] = [1, 2, 4];

/// The cited discriminant form on `(Z/30)²` from the bundled fixtures.
pub fn target_form() -> Result<TorsionForm> {
    Fixtures::bundled()?.form("epsilon")
}

/// Count of `(a, b) ∈ (Z/modulus)²` with `α a² + β b² + γ ab ≡ target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCount {
    pub count: u64,
    /// First solution in lexicographic order, with its value.
    pub witness: Option<(i64, i64, i64)>,
}

pub fn congruence_solution_count(coeffs: (i64, i64, i64), target: i64, modulus: i64) -> CongruenceCount {
    let (alpha, beta, gamma) = coeffs;
    let t = target.rem_euclid(modulus);
    let mut count = 0;
    let mut witness = None;
    for a in 0..modulus {
        for b in 0..modulus {
            let v = (alpha * a * a + beta * b * b + gamma * a * b).rem_euclid(modulus);
            if v == t {
                count += 1;
                witness.get_or_insert((a, b, v));
            }
        }
    }
    CongruenceCount { count, witness }
}

/// `q(a δ_1 + b δ_2) ≡ q(ε_1) (mod 2)` cleared of denominators: returns
/// `((α, β, γ), target, modulus)` with `α a² + β b² + γ ab ≡ target`.
pub fn derive_congruence(source: &TorsionForm, target: &TorsionForm) -> Result<((i64, i64, i64), i64, i64)> {
    if source.rank() != 2 || target.rank() != 2 {
        return Err(Error::GroupMismatch("both forms must have rank 2".into()));
    }
    let tg = target.gram();
    let two_b = &tg[(0, 1)] * Rational::from_integer(2.into());
    let entries = [&tg[(0, 0)], &tg[(1, 1)], &two_b, &source.gram()[(0, 0)]];
    let n = lcm_denominators(entries.iter().copied());
    let scale = |x: &Rational| -> Result<i64> {
        (x * Rational::from_integer(n.clone()))
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidParameters("scaled value out of range".into()))
    };
    let n = n.to_i64().ok_or_else(|| Error::InvalidParameters("denominator out of range".into()))?;
    Ok((
        (scale(entries[0])?, scale(entries[1])?, scale(entries[2])?),
        scale(entries[3])?,
        2 * n,
    ))
}

/// `φ(g_1) = a h_1 + b h_2`, `φ(g_2) = c h_1 + d h_2` as `[[a, c], [b, d]]`.
pub type Mat2 = [[i64; 2]; 2];

struct Scaled {
    /// `N q_1`, `N q_2` modulo `2N`, and `N b_12` modulo `N`.
    q: [i64; 2],
    b: i64,
    scale: i64,
}

fn scaled(f: &TorsionForm, scale: &num_bigint::BigInt) -> Result<Scaled> {
    let g = f.gram();
    let s = Rational::from_integer(scale.clone());
    let conv = |x: &Rational| (x * &s).to_integer().to_i64().expect("small scaled value");
    Ok(Scaled {
        q: [conv(&g[(0, 0)]), conv(&g[(1, 1)])],
        b: conv(&g[(0, 1)]),
        scale: scale.to_i64().expect("small scale"),
    })
}

fn check_shape(f: &TorsionForm) -> Result<i64> {
    let inv = f.invariants();
    if inv.len() != 2 || inv[0] != inv[1] {
        return Err(Error::GroupMismatch(format!("expected (Z/n)^2, got {f}")));
    }
    inv[0]
        .to_i64()
        .ok_or_else(|| Error::GroupMismatch("group too large".into()))
}

/// Every bijective homomorphism `A → B` of `(Z/n)²` preserving `q` modulo
/// `2Z` and `b` modulo `Z`, in lexicographic order of `(a, b, c, d)`.
pub fn exhaustive_isometry_search(form_a: &TorsionForm, form_b: &TorsionForm) -> Result<Vec<Mat2>> {
    let n = check_shape(form_a)?;
    if check_shape(form_b)? != n {
        return Err(Error::GroupMismatch("groups have different orders".into()));
    }
    let all = form_a.gram().to_rows().into_iter().chain(form_b.gram().to_rows()).flatten().collect::<Vec<_>>();
    let den = lcm_denominators(all.iter());
    let a = scaled(form_a, &den)?;
    let b = scaled(form_b, &den)?;
    let (two_s, s) = (2 * a.scale, a.scale);
    // Scaled q on B of x h_1 + y h_2.
    let q_b = |x: i64, y: i64| (x * x * b.q[0] + y * y * b.q[1] + 2 * x * y * b.b).rem_euclid(two_s);
    let target = [a.q[0].rem_euclid(two_s), a.q[1].rem_euclid(two_s)];
    let target_b = a.b.rem_euclid(s);

    // Images of g_1 with the right norm, then of g_2.
    let mut first = Vec::new();
    let mut second = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let q = q_b(x, y);
            if q == target[0] {
                first.push((x, y));
            }
            if q == target[1] {
                second.push((x, y));
            }
        }
    }
    let mut out = Vec::new();
    for &(x1, y1) in &first {
        for &(x2, y2) in &second {
            let det = (x1 * y2 - x2 * y1).rem_euclid(n);
            if det.gcd(&n) != 1 {
                continue;
            }
            let bv = (x1 * x2 * b.q[0] + y1 * y2 * b.q[1] + (x1 * y2 + y1 * x2) * b.b).rem_euclid(s);
            if bv == target_b {
                out.push([[x1, x2], [y1, y2]]);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Reference search: runs over all `n⁴` matrices with no pruning.
pub fn brute_force_isometry_count(form_a: &TorsionForm, form_b: &TorsionForm) -> Result<usize> {
    let n = check_shape(form_a)?;
    if check_shape(form_b)? != n {
        return Err(Error::GroupMismatch("groups have different orders".into()));
    }
    let all = form_a.gram().to_rows().into_iter().chain(form_b.gram().to_rows()).flatten().collect::<Vec<_>>();
    let den = lcm_denominators(all.iter());
    let a = scaled(form_a, &den)?;
    let b = scaled(form_b, &den)?;
    let (two_s, s) = (2 * a.scale, a.scale);
    let mut count = 0;
    for m00 in 0..n {
        for m10 in 0..n {
            let q1 = (m00 * m00 * b.q[0] + m10 * m10 * b.q[1] + 2 * m00 * m10 * b.b - a.q[0]).rem_euclid(two_s);
            for m01 in 0..n {
                for m11 in 0..n {
                    if (m00 * m11 - m01 * m10).rem_euclid(n).gcd(&n) != 1 {
                        continue;
                    }
                    let q2 = (m01 * m01 * b.q[0] + m11 * m11 * b.q[1] + 2 * m01 * m11 * b.b - a.q[1])
                        .rem_euclid(two_s);
                    let bv = (m00 * m01 * b.q[0] + m10 * m11 * b.q[1] + (m00 * m11 + m10 * m01) * b.b - a.b)
                        .rem_euclid(s);
                    if q1 == 0 && q2 == 0 && bv == 0 {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

pub fn compose(x: &Mat2, y: &Mat2, n: i64) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (x[i][0] * y[0][j] + x[i][1] * y[1][j]).rem_euclid(n);
        }
    }
    out
}

/// Identity, closure and inverses for a finite set of matrices mod `n`.
pub fn is_group(set: &[Mat2], n: i64) -> bool {
    let elems: BTreeSet<Mat2> = set.iter().copied().collect();
    let id = [[1, 0], [0, 1]];
    elems.contains(&id)
        && elems.iter().all(|x| {
            elems.iter().all(|y| elems.contains(&compose(x, y, n)))
                && elems.iter().any(|y| compose(x, y, n) == id)
        })
}

/// Outcome for one determinant case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub case: DetCase,
    pub isometry_count: usize,
    pub congruence_count: u64,
    pub verdict: &'static str,
}

/// Compare the cited form with `computed` by both methods.
pub fn obstruction_verdict(case: DetCase, computed: &TorsionForm) -> Result<ObstructionVerdict> {
    let cited = target_form()?;
    let isometries = exhaustive_isometry_search(&cited, computed)?;
    let (coeffs, target, modulus) = derive_congruence(&cited, computed)?;
    let cong = congruence_solution_count(coeffs, target, modulus);
    let verdict = match (isometries.is_empty(), cong.count == 0) {
        (true, true) => "impossible",
        (false, false) => "possible",
        _ => "inconsistent",
    };
    Ok(ObstructionVerdict {
        case,
        isometry_count: isometries.len(),
        congruence_count: cong.count,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const POOL: [u64; 5] = [900, 300, 400, 1200, 4800];

    fn delta() -> TorsionForm {
        Fixtures::bundled().unwrap().form("delta").unwrap()
    }

    #[test]
    fn determinant_cases() {
        let cases: Vec<(u64, u64, u64)> = determinant_case_enumeration(&POOL, &D1_POOL, &D_POOL, 30)
            .into_iter()
            .map(|c| (c.m, c.d1, c.d))
            .collect();
        assert_eq!(cases, vec![(5, 1, 4), (5, 2, 2), (10, 2, 4)]);
        assert_eq!(lhs(5), 4 * 4 * 900);
        assert!(determinant_case_enumeration(&[300], &D1_POOL, &D_POOL, 30).is_empty());
        assert_eq!(m_bound(&POOL, &D1_POOL, &D_POOL), 24);
        assert_eq!(
            determinant_case_enumeration(&POOL, &D1_POOL, &D_POOL, 24),
            determinant_case_enumeration(&POOL, &D1_POOL, &D_POOL, 200)
        );
    }

    #[test]
    fn congruences() {
        let c = congruence_solution_count((23, 3, 20), -23, 60);
        assert_eq!(c, CongruenceCount { count: 0, witness: None });
        assert_eq!(congruence_solution_count((1, 1, 0), 3, 4).count, 0);
        let w = congruence_solution_count((23, 3, 20), 46, 60);
        assert!(w.count >= 1);
        assert_eq!(congruence_solution_count((23, 3, 20), 46, 60).witness.map(|(_, _, v)| v), Some(46));
    }

    #[test]
    fn derived_congruence_matches() {
        let ((a, b, c), t, m) = derive_congruence(&target_form().unwrap(), &delta()).unwrap();
        assert_eq!((a, b, c, m), (23, 3, 20, 60));
        assert_eq!(t.rem_euclid(60), (-23i64).rem_euclid(60));
    }

    #[test]
    fn self_isometries_form_groups() {
        let d = delta();
        let sd = exhaustive_isometry_search(&d, &d).unwrap();
        assert!(sd.contains(&[[1, 0], [0, 1]]));
        assert!(is_group(&sd, 30));
        let e = target_form().unwrap();
        let se = exhaustive_isometry_search(&e, &e).unwrap();
        assert!(!se.is_empty());
        assert!(is_group(&se, 30));
        assert_eq!((sd.len(), se.len()), (64, 128));
    }

    #[test]
    fn no_isometry_between_the_forms() {
        assert!(exhaustive_isometry_search(&target_form().unwrap(), &delta()).unwrap().is_empty());
    }

    #[test]
    fn pruned_search_agrees_with_brute_force() {
        let (e, d) = (target_form().unwrap(), delta());
        assert_eq!(brute_force_isometry_count(&e, &d).unwrap(), 0);
        assert_eq!(
            brute_force_isometry_count(&d, &d).unwrap(),
            exhaustive_isometry_search(&d, &d).unwrap().len()
        );
    }

    #[test]
    fn group_mismatch() {
        let small = TorsionForm::from_fractions(&[2], &[&[(1, 2)]]).unwrap();
        assert!(matches!(
            exhaustive_isometry_search(&small, &delta()),
            Err(Error::GroupMismatch(_))
        ));
    }
}
