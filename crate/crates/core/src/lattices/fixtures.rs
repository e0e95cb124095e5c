//! Lattice data stored as JSON: integer Gram matrices and rational vectors
//! written as `[numerator, denominator]` pairs.

use serde::{Deserialize, Serialize};

use super::discriminant::TorsionForm;
use super::gram::{DualVector, GramLattice};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Rational};

const BUNDLED: &str = include_str!("../../fixtures/lattices.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFixture {
    pub name: String,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorFixture {
    pub name: String,
    /// Names of the lattices whose direct sum carries the vector.
    pub lattice: Vec<String>,
    pub coords: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFixture {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub invariants: Vec<i64>,
    pub gram: Vec<Vec<[i64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixtures {
    pub version: u32,
    pub lattices: Vec<LatticeFixture>,
    pub vectors: Vec<VectorFixture>,
    pub forms: Vec<FormFixture>,
    pub determinant_pool: Vec<u64>,
}

impl Fixtures {
    pub fn bundled() -> Result<Self> {
        Self::parse(BUNDLED)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Fixture(e.to_string()))
    }

    pub fn lattice(&self, name: &str) -> Result<GramLattice> {
        let f = self
            .lattices
            .iter()
            .find(|l| l.name == name)
            .ok_or_else(|| Error::Fixture(format!("no lattice named {name}")))?;
        let rows: Vec<&[i64]> = f.gram.iter().map(Vec::as_slice).collect();
        GramLattice::new(f.labels.clone(), IntMatrix::from_i64(&rows))
    }

    /// Direct sum of the named lattices.
    pub fn ambient(&self, names: &[&str]) -> Result<GramLattice> {
        let mut parts = names.iter().map(|n| self.lattice(n));
        let first = parts
            .next()
            .ok_or_else(|| Error::Fixture("empty lattice list".into()))??;
        parts.try_fold(first, |acc, l| Ok(acc.direct_sum(&l?)))
    }

    pub fn vector(&self, name: &str, ambient: &[&str]) -> Result<DualVector> {
        let f = self
            .vectors
            .iter()
            .find(|v| v.name == name && v.lattice == ambient)
            .ok_or_else(|| Error::Fixture(format!("no vector {name} on {ambient:?}")))?;
        f.coords
            .iter()
            .map(|&[n, d]| ratio(n, d))
            .collect::<Result<Vec<_>>>()
            .map(DualVector)
    }

    pub fn form(&self, name: &str) -> Result<TorsionForm> {
        let f = self
            .forms
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::Fixture(format!("no form named {name}")))?;
        let gram: Vec<Vec<(i64, i64)>> = f
            .gram
            .iter()
            .map(|r| r.iter().map(|&[n, d]| (n, d)).collect())
            .collect();
        if gram.iter().flatten().any(|&(_, d)| d == 0) {
            return Err(Error::Fixture(format!("zero denominator in form {name}")));
        }
        let rows: Vec<&[(i64, i64)]> = gram.iter().map(Vec::as_slice).collect();
        TorsionForm::from_fractions(&f.invariants, &rows)
    }
}

fn ratio(n: i64, d: i64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Fixture("zero denominator".into()));
    }
    Ok(Rational::new(n.into(), d.into()))
}
