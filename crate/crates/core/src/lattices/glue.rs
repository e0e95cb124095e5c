use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::discriminant::{discriminant_group, DiscriminantGroup, TorsionForm};
use super::gram::{overlattice, DualVector, GramLattice, Overlattice};
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, rat_mod, Rational};

/// Nonzero classes of `(1/den) L / L` that lie in `L^∨`, each with its norm,
/// coordinates in `[0, 1)`, in lexicographic order of the numerators.
pub fn dual_grid(l: &GramLattice, den: u32) -> Vec<(DualVector, Rational)> {
    let n = l.rank();
    let den_i = den as usize;
    let total = den_i.pow(n as u32);
    let mut out = Vec::new();
    for idx in 1..total {
        let mut k = idx;
        let mut coords = vec![Rational::zero(); n];
        for c in coords.iter_mut().rev() {
            *c = Rational::new(BigInt::from(k % den_i), BigInt::from(den));
            k /= den_i;
        }
        let v = DualVector(coords);
        if l.in_dual(&v) {
            let norm = l.norm(&v);
            out.push((v, norm));
        }
    }
    out
}

fn is_even_norm(x: &Rational) -> bool {
    x.is_integer() && rat_mod(x, &int(2)).is_zero()
}

/// Classes `θ` of `(1/den) L / L` with `θ ∈ L^∨` and `θ² ∈ 2Z`.
pub fn even_overlattice_candidates(l: &GramLattice, den: u32) -> Result<Vec<DualVector>> {
    if !l.is_even() {
        return Err(Error::InvalidParameters("lattice must be even".into()));
    }
    Ok(dual_grid(l, den)
        .into_iter()
        .filter(|(_, n)| is_even_norm(n))
        .map(|(v, _)| v)
        .collect())
}

/// Candidates on `S ⊕ T` whose projections to `S ⊗ Q / S` and
/// `T ⊗ Q / T` are both nonzero.
pub fn glue_candidates(s: &GramLattice, t: &GramLattice, den: u32) -> Result<Vec<DualVector>> {
    let l = s.direct_sum(t);
    let k = s.rank();
    Ok(even_overlattice_candidates(&l, den)?
        .into_iter()
        .filter(|v| {
            let (a, b) = v.split_at(k);
            !a.is_integral() && !b.is_integral()
        })
        .collect())
}

/// A subgroup of `A_S ⊕ A_T`, listed by its nonzero elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GlueGroup {
    pub generators: Vec<DualVector>,
    pub elements: Vec<DualVector>,
}

impl GlueGroup {
    pub fn order(&self) -> usize {
        self.elements.len() + 1
    }

    pub fn trivial() -> Self {
        Self {
            generators: Vec::new(),
            elements: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GlueFeasibility {
    pub ambient: GramLattice,
    pub candidates: Vec<DualVector>,
    pub groups: Vec<GlueGroup>,
    /// Why each rejected candidate subgroup fails, in labelled notation.
    pub rejections: Vec<String>,
}

/// All 2-elementary glue groups of order `required_d` between `S` and `T`.
///
/// A group qualifies when every nonzero element is even, elements pair
/// integrally and both projections are injective.
pub fn glue_feasibility(
    s: &GramLattice,
    t: &GramLattice,
    required_d: u32,
) -> Result<GlueFeasibility> {
    if ![1, 2, 4].contains(&required_d) {
        return Err(Error::InvalidParameters(format!(
            "glue order must be 1, 2 or 4, got {required_d}"
        )));
    }
    let ambient = s.direct_sum(t);
    let cands = glue_candidates(s, t, 2)?;
    let cand_set: BTreeSet<&DualVector> = cands.iter().collect();
    let mut groups = Vec::new();
    let mut rejections = Vec::new();
    match required_d {
        1 => groups.push(GlueGroup::trivial()),
        2 => {
            for c in &cands {
                groups.push(GlueGroup {
                    generators: vec![c.clone()],
                    elements: vec![c.clone()],
                });
            }
        }
        _ => {
            let k = s.rank();
            let mut seen = BTreeSet::new();
            for (i, x) in cands.iter().enumerate() {
                for y in &cands[i + 1..] {
                    let name = |v: &DualVector| ambient.render(v);
                    let b = ambient.pair(x, y);
                    if !b.is_integer() {
                        rejections.push(format!(
                            "({}) . ({}) = {} is not an integer",
                            name(x),
                            name(y),
                            fmt_rat(&b)
                        ));
                        continue;
                    }
                    let sum = x.add(y).reduce_mod_lattice();
                    if !cand_set.contains(&sum) {
                        let (ps, pt) = sum.split_at(k);
                        let why = if ps.is_integral() {
                            "has zero projection to A_S".to_string()
                        } else if pt.is_integral() {
                            "has zero projection to A_T".to_string()
                        } else {
                            format!("has odd norm {}", fmt_rat(&ambient.norm(&sum)))
                        };
                        rejections.push(format!(
                            "({}) + ({}) = {} mod lattice {why}",
                            name(x),
                            name(y),
                            name(&sum)
                        ));
                        continue;
                    }
                    let mut elements = vec![x.clone(), y.clone(), sum];
                    elements.sort();
                    if seen.insert(elements.clone()) {
                        groups.push(GlueGroup {
                            generators: vec![x.clone(), y.clone()],
                            elements,
                        });
                    }
                }
            }
            if cands.len() < 2 {
                rejections.push(format!(
                    "only {} glue candidate(s), a group of order 4 needs three",
                    cands.len()
                ));
            }
        }
    }
    Ok(GlueFeasibility {
        ambient,
        candidates: cands,
        groups,
        rejections,
    })
}

/// Discriminant data of the overlattice `S ⊕ T + glue`.
#[derive(Clone, Debug)]
pub struct OverlatticeForm {
    pub ambient: GramLattice,
    pub overlattice: Overlattice,
    pub discriminant: DiscriminantGroup,
}

pub fn overlattice_form(s: &GramLattice, t: &GramLattice, glue: &GlueGroup) -> Result<OverlatticeForm> {
    let ambient = s.direct_sum(t);
    let k = s.rank();
    for x in &glue.elements {
        let (ps, pt) = x.split_at(k);
        if !ambient.in_dual(x) || !is_even_norm(&ambient.norm(x)) || ps.is_integral() || pt.is_integral() {
            return Err(Error::InvalidGlue(ambient.render(x)));
        }
    }
    let over = overlattice(&ambient, &glue.generators)?;
    let discriminant = discriminant_group(&over.lattice)?;
    Ok(OverlatticeForm {
        ambient,
        overlattice: over,
        discriminant,
    })
}

impl OverlatticeForm {
    /// Whether an ambient vector pairs integrally with the overlattice.
    pub fn in_dual(&self, x: &DualVector) -> Result<bool> {
        let y = self.overlattice.from_ambient(x)?;
        Ok(self.overlattice.lattice.in_dual(&y))
    }

    /// The form on the classes of the ambient vectors `gens`, after checking
    /// they lie in the dual and generate the whole discriminant group as a
    /// direct sum of their cyclic subgroups.
    pub fn form_on(&self, gens: &[DualVector]) -> Result<TorsionForm> {
        let own: Vec<DualVector> = gens
            .iter()
            .map(|g| self.overlattice.from_ambient(g))
            .collect::<Result<_>>()?;
        for (g, o) in gens.iter().zip(&own) {
            if !self.overlattice.lattice.in_dual(o) {
                return Err(Error::NotInDual(self.ambient.render(g)));
            }
        }
        let orders: Vec<BigInt> = own
            .iter()
            .map(|g| self.discriminant.subgroup_order(std::slice::from_ref(g)).map(BigInt::from))
            .collect::<Result<_>>()?;
        let generated = BigInt::from(self.discriminant.subgroup_order(&own)?);
        let product: BigInt = orders.iter().product();
        if generated != self.discriminant.order() || product != generated {
            return Err(Error::InvalidParameters(format!(
                "classes generate a subgroup of order {generated}, product of orders {product}, group order {}",
                self.discriminant.order()
            )));
        }
        let n = gens.len();
        let mut gram = crate::exact::RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                gram[(i, j)] = self.ambient.pair(&gens[i], &gens[j]);
            }
        }
        TorsionForm::new(orders, &gram, gens.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn u6() -> GramLattice {
        GramLattice::hyperbolic(["u1", "u2"], 6).unwrap()
    }

    fn diag(labels: [&str; 2], e: i64) -> GramLattice {
        GramLattice::diagonal(&labels, &[e, e]).unwrap()
    }

    fn half(v: &[i64]) -> DualVector {
        DualVector(v.iter().map(|&x| rat(x, 2)).collect())
    }

    #[test]
    fn l0_candidates() {
        let l0 = GramLattice::diagonal(&["C", "D"], &[12, -12]).unwrap();
        let grid = dual_grid(&l0, 2);
        let norms: Vec<Rational> = grid.iter().map(|(_, n)| n.clone()).collect();
        assert_eq!(norms, vec![rat(-3, 1), rat(3, 1), rat(0, 1)]);
        assert_eq!(even_overlattice_candidates(&l0, 2).unwrap(), vec![half(&[1, 1])]);
    }

    #[test]
    fn glue_candidate_sets() {
        let t20 = diag(["t1", "t2"], 20);
        let mut c = glue_candidates(&u6(), &t20, 2).unwrap();
        c.sort();
        let mut expect = vec![
            half(&[1, 1, 1, 0]),
            half(&[1, 1, 0, 1]),
            half(&[1, 0, 1, 1]),
            half(&[0, 1, 1, 1]),
        ];
        expect.sort();
        assert_eq!(c, expect);

        let t10 = diag(["t1", "t2"], 10);
        assert_eq!(glue_candidates(&u6(), &t10, 2).unwrap(), vec![half(&[1, 1, 1, 1])]);

        let l0 = GramLattice::diagonal(&["C", "D"], &[12, -12]).unwrap();
        let mut c = glue_candidates(&l0, &t10, 2).unwrap();
        c.sort();
        let mut expect = vec![half(&[1, 0, 1, 1]), half(&[0, 1, 1, 1])];
        expect.sort();
        assert_eq!(c, expect);
    }

    #[test]
    fn feasibility_cases() {
        let t10 = diag(["t1", "t2"], 10);
        let t20 = diag(["t1", "t2"], 20);
        let l0 = GramLattice::diagonal(&["C", "D"], &[12, -12]).unwrap();

        let f = glue_feasibility(&u6(), &t20, 4).unwrap();
        assert!(f.groups.is_empty());
        assert!(f.rejections.iter().any(|r| r.contains("= 13/2 is not an integer")));

        let f = glue_feasibility(&l0, &t10, 4).unwrap();
        assert!(f.groups.is_empty());
        assert!(f.rejections.iter().any(|r| r.contains("zero projection to A_T")));

        let f = glue_feasibility(&u6(), &t10, 2).unwrap();
        assert_eq!(f.groups.len(), 1);
        assert_eq!(f.groups[0].generators, vec![half(&[1, 1, 1, 1])]);

        for (s, t) in [(&u6(), &t10), (&l0, &t20)] {
            let f = glue_feasibility(s, t, 1).unwrap();
            assert_eq!(f.groups, vec![GlueGroup::trivial()]);
        }
        assert!(glue_feasibility(&u6(), &t10, 3).is_err());
    }

    #[test]
    fn overlattice_discriminant() {
        let t10 = diag(["t1", "t2"], 10);
        let glue = &glue_feasibility(&u6(), &t10, 2).unwrap().groups[0];
        let of = overlattice_form(&u6(), &t10, glue).unwrap();
        assert_eq!(of.overlattice.lattice.determinant(), BigInt::from(-900));
        let inv: Vec<BigInt> = of.discriminant.form().invariants().to_vec();
        assert_eq!(inv, vec![BigInt::from(30), BigInt::from(30)]);

        // (u1, u2, t1, t2) coordinates.
        let d1 = DualVector(vec![rat(1, 3), rat(1, 6), rat(0, 1), rat(1, 10)]);
        let d2 = DualVector(vec![rat(0, 1), rat(1, 6), rat(1, 10), rat(0, 1)]);
        assert_eq!(
            of.ambient.pairings(&d1),
            vec![rat(1, 1), rat(2, 1), rat(0, 1), rat(1, 1)]
        );
        let form = of.form_on(&[d1.clone(), d2.clone()]).unwrap();
        assert_eq!(form.render_gram(), "(23/30, 1/3; 1/3, 1/10)");
        assert!(of.form_on(&[d1.clone(), d1.clone()]).is_err());

        let trivial = overlattice_form(&u6(), &t10, &GlueGroup::trivial()).unwrap();
        assert_eq!(trivial.discriminant.order(), BigInt::from(3600));
    }
}
