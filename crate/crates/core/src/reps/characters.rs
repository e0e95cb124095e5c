use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{
    rat, solve_linear_rational, CycloField, CycloNumber, LinearSolution, RatMatrix, Rational,
};

pub const A5_CLASS_LABELS: [&str; 5] = ["1A", "2A", "3A", "5A", "5B"];
pub const A5_CLASS_SIZES: [u64; 5] = [1, 15, 20, 12, 12];

/// Irreducible characters of a finite group, evaluated on its classes.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<u64>,
    /// `rows[i][c]` is `χ_{i+1}` on class `c`.
    pub rows: Vec<Vec<CycloNumber>>,
    field: Arc<CycloField>,
}

impl CharacterTable {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn group_order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    pub fn dimensions(&self) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r[0].to_i64().expect("degrees are integers"))
            .collect()
    }

    pub fn class_position(&self, label: &str) -> Option<usize> {
        self.class_labels.iter().position(|l| l == label)
    }

    /// `⟨χ_i, χ_j⟩ = (1/|G|) Σ_c |c| χ_i(c) conj(χ_j(c))`.
    pub fn inner_product(&self, i: usize, j: usize) -> CycloNumber {
        let mut acc = self.field.zero();
        for (c, &size) in self.class_sizes.iter().enumerate() {
            let term = &self.rows[i][c] * &self.rows[j][c].conjugate();
            acc = &acc + &term.scale(&Rational::from_integer(BigInt::from(size)));
        }
        acc.scale(&Rational::new(1.into(), BigInt::from(self.group_order())))
    }

    /// `Σ_i χ_i(c) conj(χ_i(c'))`.
    pub fn column_product(&self, c: usize, d: usize) -> CycloNumber {
        self.rows.iter().fold(self.field.zero(), |acc, r| {
            &acc + &(&r[c] * &r[d].conjugate())
        })
    }
}

/// `√5 = 1 + 2ζ_5 + 2ζ_5^4` in `Q(ζ_5)`.
pub fn sqrt5(field: &Arc<CycloField>) -> CycloNumber {
    let two = rat(2, 1);
    &(&field.one() + &field.zeta().scale(&two)) + &field.zeta_pow(4).scale(&two)
}

/// Character table of `A5` on classes `1A, 2A, 3A, 5A, 5B`, with `5A` the
/// class of `(12345)`.
pub fn a5_character_table() -> CharacterTable {
    let field = CycloField::new(5);
    let s = sqrt5(&field);
    let half = rat(1, 2);
    let minus = (&field.one() - &s).scale(&half);
    let plus = (&field.one() + &s).scale(&half);
    let i = |n: i64| field.from_int(n);
    let rows = vec![
        vec![i(1), i(1), i(1), i(1), i(1)],
        vec![i(3), i(-1), i(0), minus.clone(), plus.clone()],
        vec![i(3), i(-1), i(0), plus, minus],
        vec![i(4), i(0), i(1), i(-1), i(-1)],
        vec![i(5), i(1), i(-1), i(0), i(0)],
    ];
    CharacterTable {
        class_labels: A5_CLASS_LABELS.iter().map(|s| s.to_string()).collect(),
        class_sizes: A5_CLASS_SIZES.to_vec(),
        rows,
        field,
    }
}

/// Multiplicities `a_i` of `χ_i` in a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities(pub Vec<u64>);

impl Multiplicities {
    pub fn dimension(&self, table: &CharacterTable) -> i64 {
        self.0
            .iter()
            .zip(table.dimensions())
            .map(|(&a, d)| a as i64 * d)
            .sum()
    }

    /// Direct-sum notation with primed copies, e.g. `χ_1 ⊕ χ_1' ⊕ χ_4`.
    pub fn direct_sum_notation(&self) -> String {
        let mut parts = Vec::new();
        for (i, &a) in self.0.iter().enumerate() {
            for copy in 0..a {
                parts.push(format!("χ_{}{}", i + 1, "'".repeat(copy as usize)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl fmt::Display for Multiplicities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", v.join(", "))
    }
}

/// Decompose the Néron–Severi representation of `A5` from the Euler numbers
/// of the fixed loci.
///
/// By the topological Lefschetz formula, `χ(X^a) = 2 + Tr(a | H^2)` and the
/// transcendental part contributes its rank, so
/// `Tr(a | S) = χ(X^a) - 2 - (22 - rank_S)`. The trivial multiplicity is
/// `invariant_rank`; the remaining ones are solved for exactly.
pub fn decompose_neron_severi(
    rank_s: u32,
    invariant_rank: u32,
    euler_by_class: &[(&str, i64)],
) -> Result<Multiplicities> {
    let table = a5_character_table();
    let deg = table.field().degree();
    let mut traces = vec![None; table.class_labels.len()];
    traces[0] = Some(i64::from(rank_s));
    for &(label, chi) in euler_by_class {
        let c = table
            .class_position(label)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown class {label}")))?;
        traces[c] = Some(chi - 2 - (22 - i64::from(rank_s)));
    }
    let traces: Vec<i64> = traces
        .into_iter()
        .enumerate()
        .map(|(c, t)| {
            t.ok_or_else(|| {
                Error::InvalidParameters(format!("missing class {}", table.class_labels[c]))
            })
        })
        .collect::<Result<_>>()?;

    // Unknowns a_2..a_5; every class gives one equation in Q(ζ_5), split
    // into its rational coordinates.
    let k = table.rows.len() - 1;
    let a1 = Rational::from_integer(BigInt::from(invariant_rank));
    let mut a = RatMatrix::zeros(traces.len() * deg, k);
    let mut b = Vec::with_capacity(traces.len() * deg);
    for (c, &t) in traces.iter().enumerate() {
        let target = &table.field().from_int(t) - &table.rows[0][c].scale(&a1);
        for coord in 0..deg {
            for j in 0..k {
                a[(c * deg + coord, j)] = table.rows[j + 1][c].coeffs()[coord].clone();
            }
            b.push(target.coeffs()[coord].clone());
        }
    }
    let LinearSolution::Affine(aff) = solve_linear_rational(&a, &b) else {
        return Err(Error::NoSolution);
    };
    let bound = u64::from(rank_s);
    let mut found = Vec::new();
    let mut params = vec![0u64; aff.dimension()];
    loop {
        let vals: Vec<Rational> = params
            .iter()
            .map(|&p| Rational::from_integer(BigInt::from(p)))
            .collect();
        let x = aff.point(&vals);
        if x.iter().all(|v| v.is_integer() && !v.is_negative()) {
            let mut m = vec![u64::from(invariant_rank)];
            m.extend(x.iter().map(|v| v.to_integer().to_u64().unwrap_or(u64::MAX)));
            found.push(Multiplicities(m));
        }
        let Some(pos) = (0..params.len()).rev().find(|&i| params[i] < bound) else {
            break;
        };
        params[pos] += 1;
        params[pos + 1..].iter_mut().for_each(|p| *p = 0);
    }
    match found.len() {
        0 => Err(Error::NoSolution),
        1 => Ok(found.pop().expect("one element")),
        n => Err(Error::NonUnique(n)),
    }
}

/// The class-by-class traces of a decomposition, for checking.
pub fn character_of(table: &CharacterTable, m: &Multiplicities) -> Vec<CycloNumber> {
    (0..table.class_labels.len())
        .map(|c| {
            table.rows.iter().zip(&m.0).fold(table.field().zero(), |acc, (r, &a)| {
                &acc + &r[c].scale(&Rational::from_integer(BigInt::from(a)))
            })
        })
        .collect()
}
