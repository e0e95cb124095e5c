//! Case analysis over the action of `g` on `χ_4 ⊕ χ_4'` and `χ_5 ⊕ χ_5'`.
//!
//! `g` either stabilizes or switches each pair. For every configuration the
//! unknown scalars range over fourth roots of unity, the Euler numbers of
//! four fixed loci are linear in them, and the fixed-point constraints cut
//! the grid down to a handful of tuples.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{int, CycloField, CycloNumber};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseConfig {
    /// `g` stabilizes `χ_4` (otherwise it switches `χ_4` and `χ_4'`).
    pub stab4: bool,
    /// `g` stabilizes `χ_5` (otherwise it switches `χ_5` and `χ_5'`).
    pub stab5: bool,
}

impl CaseConfig {
    pub const ALL: [CaseConfig; 4] = [
        CaseConfig { stab4: true, stab5: true },
        CaseConfig { stab4: false, stab5: true },
        CaseConfig { stab4: true, stab5: false },
        CaseConfig { stab4: false, stab5: false },
    ];
}

impl fmt::Display for CaseConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |s: bool| if s { "stable" } else { "switch" };
        write!(f, "χ4 {} / χ5 {}", word(self.stab4), word(self.stab5))
    }
}

/// Scalars on `χ_4 ⊕ χ_4'`. Roots of unity are stored as exponents of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chi4Scalars {
    /// `d_1 = i^d1[0]`, `d_1' = i^d1[1]`, `d_3 = d3_sign[0] * d_1`, ...
    Stable { d1: [u8; 2], d3_sign: [i8; 2] },
    /// The product `d_1 d_5 = ±1`.
    Switch { d1d5: i8 },
}

/// Scalars on `χ_5 ⊕ χ_5'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chi5Scalars {
    /// `e_1 = i^e1[0]`, `e_1' = i^e1[1]`.
    Stable { e1: [u8; 2] },
    /// The product `e_1 e_6 = ±1`.
    Switch { e1e6: i8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarAssignment {
    /// `Tr(g^* | χ_1 ⊕ χ_1')`, either 0 or 2.
    pub tr1: i64,
    pub chi4: Chi4Scalars,
    pub chi5: Chi5Scalars,
}

impl ScalarAssignment {
    pub fn config(&self) -> CaseConfig {
        CaseConfig {
            stab4: matches!(self.chi4, Chi4Scalars::Stable { .. }),
            stab5: matches!(self.chi5, Chi5Scalars::Stable { .. }),
        }
    }

    /// The multisets `{d_1, d_1'}`, `{d_3, d_3'}` and `{e_1, e_1'}` are each
    /// closed under complex conjugation.
    pub fn is_conjugation_symmetric(&self) -> bool {
        let sym = |a: u8, b: u8| {
            let (ca, cb) = ((4 - a) % 4, (4 - b) % 4);
            (ca, cb) == (a, b) || (ca, cb) == (b, a)
        };
        let d_ok = match self.chi4 {
            Chi4Scalars::Stable { d1, d3_sign } => {
                let d3 = |k: usize| if d3_sign[k] > 0 { d1[k] } else { (d1[k] + 2) % 4 };
                sym(d1[0], d1[1]) && sym(d3(0), d3(1))
            }
            Chi4Scalars::Switch { .. } => true,
        };
        let e_ok = match self.chi5 {
            Chi5Scalars::Stable { e1 } => sym(e1[0], e1[1]),
            Chi5Scalars::Switch { .. } => true,
        };
        d_ok && e_ok
    }
}

/// Every assignment allowed for `config`, in a fixed order.
pub fn assignment_grid(config: CaseConfig) -> Vec<ScalarAssignment> {
    let chi4: Vec<Chi4Scalars> = if config.stab4 {
        let mut v = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for sa in [1, -1] {
                    for sb in [1, -1] {
                        v.push(Chi4Scalars::Stable {
                            d1: [a, b],
                            d3_sign: [sa, sb],
                        });
                    }
                }
            }
        }
        v
    } else {
        vec![Chi4Scalars::Switch { d1d5: 1 }, Chi4Scalars::Switch { d1d5: -1 }]
    };
    let chi5: Vec<Chi5Scalars> = if config.stab5 {
        (0..16)
            .map(|k| Chi5Scalars::Stable { e1: [k / 4, k % 4] })
            .collect()
    } else {
        vec![Chi5Scalars::Switch { e1e6: 1 }, Chi5Scalars::Switch { e1e6: -1 }]
    };
    let mut out = Vec::with_capacity(2 * chi4.len() * chi5.len());
    for tr1 in [0, 2] {
        for &c4 in &chi4 {
            for &c5 in &chi5 {
                out.push(ScalarAssignment { tr1, chi4: c4, chi5: c5 });
            }
        }
    }
    out
}

/// Euler numbers of `X^g`, `X^{gτ}`, `X^{g²τ}`, `X^{g²}` as elements of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceValues {
    pub chi_g: CycloNumber,
    pub chi_gtau: CycloNumber,
    pub chi_g2tau: CycloNumber,
    pub chi_g2: CycloNumber,
}

impl TraceValues {
    /// All four values as integers, or `None` if any is not a rational
    /// integer.
    pub fn to_integers(&self) -> Option<[i64; 4]> {
        Some([
            self.chi_g.to_i64()?,
            self.chi_gtau.to_i64()?,
            self.chi_g2tau.to_i64()?,
            self.chi_g2.to_i64()?,
        ])
    }
}

/// Evaluate the trace formulas of the configuration `config`.
pub fn evaluate_traces(config: CaseConfig, assign: &ScalarAssignment) -> Result<TraceValues> {
    if assign.config() != config {
        return Err(Error::ShapeMismatch(format!(
            "assignment has shape {}, expected {config}",
            assign.config()
        )));
    }
    static GAUSSIAN: OnceLock<Arc<CycloField>> = OnceLock::new();
    let f = GAUSSIAN.get_or_init(|| CycloField::new(4));
    let root = |k: u8| f.zeta_pow(i64::from(k));
    let n = |v: i64| f.from_int(v);
    let base = n(2 + assign.tr1);
    let two = n(2);

    let (chi_g, chi_gtau, chi_g2tau, chi_g2) = match (assign.chi4, assign.chi5) {
        (Chi4Scalars::Stable { d1, d3_sign }, Chi5Scalars::Stable { e1 }) => {
            let d1v = [root(d1[0]), root(d1[1])];
            let d3v = [
                d1v[0].scale(&int(i64::from(d3_sign[0]))),
                d1v[1].scale(&int(i64::from(d3_sign[1]))),
            ];
            let e1v = [root(e1[0]), root(e1[1])];
            let sum_d1 = &d1v[0] + &d1v[1];
            let sum_d3 = &d3v[0] + &d3v[1];
            let sum_e1 = &e1v[0] + &e1v[1];
            let sum_d1_sq = &d1v[0].pow(2) + &d1v[1].pow(2);
            let sum_e1_sq = &e1v[0].pow(2) + &e1v[1].pow(2);
            (
                &base + &(&(&sum_d1 + &sum_d3) + &sum_e1),
                &base + &(&(&sum_d1 - &sum_d3.scale(&int(2))) + &sum_e1),
                &two + &(&sum_d1_sq - &sum_e1_sq),
                &two + &(&sum_d1_sq.scale(&int(4)) + &sum_e1_sq.scale(&int(5))),
            )
        }
        (Chi4Scalars::Switch { d1d5 }, Chi5Scalars::Stable { e1 }) => {
            let e1v = [root(e1[0]), root(e1[1])];
            let sum_e1 = &e1v[0] + &e1v[1];
            let sum_e1_sq = &e1v[0].pow(2) + &e1v[1].pow(2);
            let p = n(i64::from(d1d5));
            let chi_g = &base + &sum_e1;
            (
                chi_g.clone(),
                chi_g,
                &(&two + &p.scale(&int(2))) - &sum_e1_sq,
                &(&two + &p.scale(&int(8))) + &sum_e1_sq.scale(&int(5)),
            )
        }
        (Chi4Scalars::Stable { d1, d3_sign }, Chi5Scalars::Switch { e1e6 }) => {
            let d1v = [root(d1[0]), root(d1[1])];
            let d3v = [
                d1v[0].scale(&int(i64::from(d3_sign[0]))),
                d1v[1].scale(&int(i64::from(d3_sign[1]))),
            ];
            let sum_d1 = &d1v[0] + &d1v[1];
            let sum_d3 = &d3v[0] + &d3v[1];
            let sum_d1_sq = &d1v[0].pow(2) + &d1v[1].pow(2);
            let q = n(i64::from(e1e6));
            (
                &base + &(&sum_d1 + &sum_d3),
                &base + &(&sum_d1 - &sum_d3.scale(&int(2))),
                &(&two + &sum_d1_sq) - &q.scale(&int(2)),
                &(&two + &sum_d1_sq.scale(&int(4))) + &q.scale(&int(10)),
            )
        }
        (Chi4Scalars::Switch { d1d5 }, Chi5Scalars::Switch { e1e6 }) => {
            let p = n(i64::from(d1d5));
            let q = n(i64::from(e1e6));
            (
                base.clone(),
                base,
                &(&two + &p.scale(&int(2))) - &q.scale(&int(2)),
                &(&two + &p.scale(&int(8))) + &q.scale(&int(10)),
            )
        }
    };
    Ok(TraceValues {
        chi_g,
        chi_gtau,
        chi_g2tau,
        chi_g2,
    })
}

/// `(n_g, m_g; χ(X^g), χ(X^{gτ}), χ(X^{g²τ}), χ(X^{g²}))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EulerTuple {
    pub n: i64,
    pub m: i64,
    pub chi_g: i64,
    pub chi_gtau: i64,
    pub chi_g2tau: i64,
    pub chi_g2: i64,
}

impl EulerTuple {
    pub const fn new(n: i64, m: i64, chi: [i64; 4]) -> Self {
        Self {
            n,
            m,
            chi_g: chi[0],
            chi_gtau: chi[1],
            chi_g2tau: chi[2],
            chi_g2: chi[3],
        }
    }
}

impl fmt::Display for EulerTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; {}, {}, {}, {})",
            self.n, self.m, self.chi_g, self.chi_gtau, self.chi_g2tau, self.chi_g2
        )
    }
}

/// Range of `n_g` for an order-4 purely non-symplectic `g`.
pub const N_RANGE: (i64, i64) = (-2, 4);
/// Allowed `|X^{hδ}|` for the mixed-order elements.
pub const MIXED_FIXED_COUNTS: [i64; 3] = [2, 4, 6];
/// Upper bound on `χ(X^h)` for a non-symplectic `h`.
pub const MAX_NON_SYMPLECTIC_EULER: i64 = 18;

/// Apply the fixed-point constraints to integer trace values.
pub fn admit(values: [i64; 4]) -> Option<EulerTuple> {
    let [chi_g, chi_gtau, chi_g2tau, chi_g2] = values;
    if chi_g.rem_euclid(4) != 0 {
        return None;
    }
    let n = chi_g / 4 - 1;
    let m = 4 + 2 * n;
    let ok = (N_RANGE.0..=N_RANGE.1).contains(&n)
        && MIXED_FIXED_COUNTS.contains(&chi_gtau)
        && MIXED_FIXED_COUNTS.contains(&chi_g2tau)
        && chi_g2tau >= chi_gtau
        && chi_g2 <= MAX_NON_SYMPLECTIC_EULER
        && m >= 0;
    ok.then(|| EulerTuple::new(n, m, values))
}

/// Assignments of `config` that survive, with their tuples.
pub fn admissible_assignments(config: CaseConfig) -> Vec<(ScalarAssignment, EulerTuple)> {
    assignment_grid(config)
        .into_iter()
        .filter_map(|a| {
            let values = evaluate_traces(config, &a).ok()?.to_integers()?;
            admit(values).map(|t| (a, t))
        })
        .collect()
}

pub fn admissible_tuples(config: CaseConfig) -> BTreeSet<EulerTuple> {
    admissible_assignments(config)
        .into_iter()
        .map(|(_, t)| t)
        .collect()
}

pub fn all_admissible_tuples() -> BTreeSet<EulerTuple> {
    CaseConfig::ALL
        .iter()
        .flat_map(|&c| admissible_tuples(c))
        .collect()
}

/// Values of `s` ruled out by geometric arguments outside this engine.
pub const GEOMETRIC_EXCLUSIONS: [u64; 2] = [1, 5];

/// Pairs `(genus, s)` for `X^{g²} = C ⊔ D_1 ⊔ .. ⊔ D_s` with `C` of genus `g`
/// and rational `D_i`: `(2 - 2g) + 2s = chi_g2`, `1 <= s <= s_max - 1`.
pub fn fixed_locus_genus_candidates(
    chi_g2: i64,
    s_max: u64,
    allowed_s: &BTreeSet<u64>,
) -> BTreeSet<(u64, u64)> {
    (1..s_max)
        .filter(|s| allowed_s.contains(s))
        .filter_map(|s| {
            let twice = 2 + 2 * s as i64 - chi_g2;
            (twice >= 0 && twice % 2 == 0).then_some(((twice / 2) as u64, s))
        })
        .collect()
}

/// `C² = 2g - 2` for a smooth curve on a K3 surface.
pub fn self_intersection(genus: u64) -> i64 {
    2 * genus as i64 - 2
}

#[cfg(test)]
mod tests {
    use super::*;

    const SS: CaseConfig = CaseConfig { stab4: true, stab5: true };
    const WW: CaseConfig = CaseConfig { stab4: false, stab5: false };

    fn ints(c: CaseConfig, a: &ScalarAssignment) -> Option<[i64; 4]> {
        evaluate_traces(c, a).unwrap().to_integers()
    }

    #[test]
    fn stable_stable_example() {
        let a = ScalarAssignment {
            tr1: 2,
            chi4: Chi4Scalars::Stable { d1: [0, 0], d3_sign: [1, 1] },
            chi5: Chi5Scalars::Stable { e1: [1, 3] },
        };
        let v = ints(SS, &a).unwrap();
        assert_eq!(v[0], 8);
        assert_eq!(v[3], 0);
        assert!(a.is_conjugation_symmetric());
    }

    #[test]
    fn switch_switch_example() {
        let a = ScalarAssignment {
            tr1: 2,
            chi4: Chi4Scalars::Switch { d1d5: 1 },
            chi5: Chi5Scalars::Switch { e1e6: -1 },
        };
        assert_eq!(ints(WW, &a), Some([4, 4, 6, 0]));
    }

    #[test]
    fn all_primitive_gives_two() {
        let a = ScalarAssignment {
            tr1: 0,
            chi4: Chi4Scalars::Stable { d1: [1, 3], d3_sign: [1, 1] },
            chi5: Chi5Scalars::Stable { e1: [1, 3] },
        };
        assert_eq!(ints(SS, &a).unwrap()[2], 2);
    }

    #[test]
    fn non_real_values_are_flagged() {
        let a = ScalarAssignment {
            tr1: 0,
            chi4: Chi4Scalars::Stable { d1: [0, 0], d3_sign: [1, 1] },
            chi5: Chi5Scalars::Stable { e1: [1, 1] },
        };
        assert_eq!(ints(SS, &a), None);
        assert!(!a.is_conjugation_symmetric());
    }

    #[test]
    fn shape_mismatch() {
        let a = assignment_grid(WW)[0];
        assert!(matches!(
            evaluate_traces(SS, &a),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn grid_sizes() {
        let sizes: Vec<usize> = CaseConfig::ALL
            .iter()
            .map(|&c| assignment_grid(c).len())
            .collect();
        assert_eq!(sizes, vec![2048, 64, 256, 8]);
    }

    #[test]
    fn union_is_the_three_tuples() {
        let expect: BTreeSet<EulerTuple> = [
            EulerTuple::new(1, 6, [8, 2, 6, 0]),
            EulerTuple::new(0, 4, [4, 4, 6, 0]),
            EulerTuple::new(-1, 2, [0, 6, 6, 0]),
        ]
        .into();
        assert_eq!(all_admissible_tuples(), expect);
        assert_eq!(
            admissible_tuples(WW),
            [EulerTuple::new(0, 4, [4, 4, 6, 0])].into()
        );
    }

    #[test]
    fn admitted_assignments_are_real() {
        for c in CaseConfig::ALL {
            for (a, t) in admissible_assignments(c) {
                assert!(a.is_conjugation_symmetric());
                assert_eq!(t.chi_g2, 0);
            }
        }
    }

    #[test]
    fn only_d_primitive_is_rejected() {
        let a = ScalarAssignment {
            tr1: 2,
            chi4: Chi4Scalars::Stable { d1: [1, 3], d3_sign: [1, 1] },
            chi5: Chi5Scalars::Stable { e1: [0, 0] },
        };
        let v = ints(SS, &a).unwrap();
        assert_eq!(v[2], -2);
        assert_eq!(admit(v), None);
    }

    #[test]
    fn genus_candidates() {
        let allowed: BTreeSet<u64> = [1, 5, 6, 10, 12, 15, 20, 30, 60].into();
        let all = fixed_locus_genus_candidates(0, 10, &allowed);
        assert_eq!(all, [(2, 1), (6, 5), (7, 6)].into());
        let kept: BTreeSet<(u64, u64)> = all
            .into_iter()
            .filter(|(_, s)| !GEOMETRIC_EXCLUSIONS.contains(s))
            .collect();
        assert_eq!(kept, [(7, 6)].into());
        assert_eq!(fixed_locus_genus_candidates(0, 10, &[6].into()), [(7, 6)].into());
        assert_eq!(self_intersection(7), 12);
    }
}
