use std::collections::BTreeSet;
use std::fmt::Display;

use super::{CheckDef, CheckRecord, Selector};
use crate::cases::{all_admissible_tuples, fixed_locus_genus_candidates, self_intersection, EulerTuple, GEOMETRIC_EXCLUSIONS};
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, RatMatrix};
use crate::lattices::fixtures::Fixtures;
use crate::lattices::{even_overlattice_candidates, glue_feasibility, overlattice, overlattice_form};
use crate::lefschetz::{
    build_mixed_order_system, enumerate_nonnegative_solutions, pure_order_relation, relations_of, NikulinTable,
    Relation, Unknown,
};
use crate::obstruct::{
    congruence_solution_count, derive_congruence, determinant_case_enumeration, exhaustive_isometry_search,
    obstruction_verdict, target_form, D1_POOL, D_POOL,
};
use crate::reps::{a5, decompose_neron_severi, transitive_orbit_sizes};

fn set<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn matrix(m: &RatMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
        .collect();
    format!("({})", rows.join("; "))
}

fn ok(def: &CheckDef, computed: String, expected: &str) -> Result<CheckRecord> {
    Ok(CheckRecord::compare(def.id, def.location, computed, expected.into()))
}

fn fixtures() -> Result<Fixtures> {
    Fixtures::bundled()
}

macro_rules! check {
    ($suite:ident, $id:literal, $loc:literal, $f:ident) => {
        CheckDef {
            suite: Selector::$suite,
            id: $id,
            location: $loc,
            run: $f,
        }
    };
}

pub(crate) static REGISTRY: &[CheckDef] = &[
    check!(FixedPoints, "prop1_4.mixed_3_5", "fixed points of an order-15 element, I = 3, k = 5", mixed_3_5),
    check!(FixedPoints, "prop1_4.mixed_4_5", "fixed points of an order-20 element, I = 4, k = 5", mixed_4_5),
    check!(FixedPoints, "prop1_4.mixed_4_3", "fixed points of an order-12 element, I = 4, k = 3", mixed_4_3),
    check!(FixedPoints, "prop1_4.pure_3", "purely non-symplectic order 3: m in terms of n", pure_3),
    check!(FixedPoints, "prop1_4.pure_4", "purely non-symplectic order 4: m in terms of n", pure_4),
    check!(FixedPoints, "prop1_4.relations_3_5", "linear relations among fixed-point counts, I = 3, k = 5", relations_3_5),
    check!(FixedPoints, "prop1_4.relations_4_5", "linear relations among fixed-point counts, I = 4, k = 5", relations_4_5),
    check!(FixedPoints, "prop1_4.relations_4_3", "linear relations among fixed-point counts, I = 4, k = 3", relations_4_3),
    check!(Decomposition, "lemma1_6.decomposition", "A5-character of the Neron-Severi lattice", decomposition),
    check!(Decomposition, "lemma1_6.weighted_total", "class-weighted symplectic fixed-point total over A5", weighted_total),
    check!(OrbitSizes, "lemma1_8.orbit_sizes", "degrees of transitive A5-actions", orbit_sizes),
    check!(OrbitSizes, "lemma1_8.small_degrees", "A5 has no nontrivial action on 2, 3 or 4 letters", small_degrees),
    check!(EulerTuples, "prop2_2.chi_g2", "every admissible tuple has chi(X^{g^2}) = 0", chi_g2),
    check!(EulerTuples, "prop2_2.tuples", "admissible (n_g, m_g; Euler numbers) tuples", tuples),
    check!(FixedCurves, "prop3_2_arith.after_exclusions", "fixed curve of g^2 after geometric exclusions", after_exclusions),
    check!(FixedCurves, "prop3_2_arith.candidates", "(genus, s) candidates for the fixed curves of g^2", genus_candidates),
    check!(Lattices, "section3.case1_determinant", "determinant of the index-2 overlattice of U(6) + diag(10, 10)", case1_determinant),
    check!(Lattices, "section3.case1_discriminant", "discriminant form of the index-2 overlattice of U(6) + diag(10, 10)", case1_discriminant),
    check!(Lattices, "section3.case1_glue", "index-2 glue between U(6) and diag(10, 10)", case1_glue),
    check!(Lattices, "section3.case2_glue", "index-4 glue between U(6) and diag(20, 20)", case2_glue),
    check!(Lattices, "section3.case3_glue", "index-4 glue between diag(12, -12) and diag(10, 10)", case3_glue),
    check!(Lattices, "section3.determinant_cases", "(m, d_1, d) solving 576 m^2 = d_1^2 d^2 |det|", determinant_cases),
    check!(Lattices, "section3.invariant_overlattice", "even index-2 overlattices of diag(12, -12)", invariant_overlattice),
    check!(Obstruction, "obstruction.congruence", "23a^2 + 3b^2 + 20ab = -23 mod 60", congruence),
    check!(Obstruction, "obstruction.derived_congruence", "congruence read off from the two discriminant forms", derived_congruence),
    check!(Obstruction, "obstruction.isometry_search", "isometries between the cited and computed (Z/30)^2 forms", isometry_search),
    check!(Obstruction, "obstruction.mod4", "a^2 + b^2 = 3 mod 4", mod4),
    check!(Obstruction, "obstruction.verdict", "both methods agree that the case cannot occur", verdict),
];

fn mixed(i: u32, k: u32) -> Result<String> {
    let sys = build_mixed_order_system(i, k)?;
    let bound = NikulinTable::fixed_points(k).ok_or_else(|| Error::InvalidParameters(format!("order {k}")))?;
    let sols = enumerate_nonnegative_solutions(&sys, bound)?;
    let parts: Vec<String> = sols
        .iter()
        .map(|s| format!("{:?} m_g={}", s.values(), s.total))
        .collect();
    Ok(parts.join("; "))
}

fn mixed_3_5(d: &CheckDef) -> Result<CheckRecord> {
    ok(d, mixed(3, 5)?, "[1, 0, 1, 1, 0, 1] m_g=4")
}

fn mixed_4_5(d: &CheckDef) -> Result<CheckRecord> {
    ok(d, mixed(4, 5)?, "[1, 1, 0, 0, 1, 0, 0, 1] m_g=4")
}

fn mixed_4_3(d: &CheckDef) -> Result<CheckRecord> {
    ok(
        d,
        mixed(4, 3)?,
        "[3, 0, 0, 1] m_g=4; [1, 0, 1, 0] m_g=2; [2, 1, 2, 1] m_g=6; [0, 1, 3, 0] m_g=4",
    )
}

fn pure(order: u32) -> Result<String> {
    let r = pure_order_relation(order)?;
    let (lo, hi) = r.n_range;
    let euler: Vec<String> = (lo..=hi).map(|n| fmt_rat(&r.euler(n))).collect();
    Ok(format!("{r}; euler = [{}]", euler.join(", ")))
}

fn pure_3(d: &CheckDef) -> Result<CheckRecord> {
    // chi = 3(1 + n) for n = -3..6.
    ok(d, pure(3)?, "m = 3 + n, -3 <= n <= 6; euler = [-6, -3, 0, 3, 6, 9, 12, 15, 18, 21]")
}

fn pure_4(d: &CheckDef) -> Result<CheckRecord> {
    // chi = 4(1 + n) for n = -2..4.
    ok(d, pure(4)?, "m = 4 + 2*n, -2 <= n <= 4; euler = [-4, 0, 4, 8, 12, 16, 20]")
}

fn relations(i: u32, k: u32, free: &[u32]) -> Result<String> {
    let sys = build_mixed_order_system(i, k)?;
    let free: Vec<Unknown> = free.iter().map(|&j| Unknown::Isolated(j)).collect();
    let sol = sys.solve_with_free(&free)?;
    let aff = sol.affine().ok_or(Error::NoSolution)?;
    let rels = relations_of(&sys, aff).ok_or(Error::NoSolution)?;
    Ok(rels.iter().map(Relation::to_string).collect::<Vec<_>>().join("; "))
}

fn relations_3_5(d: &CheckDef) -> Result<CheckRecord> {
    ok(d, relations(3, 5, &[3, 4])?, "m_1 = m_4; m_2 = -1 + m_3; m_11 = -1 + m_4; m_12 = m_3")
}

fn relations_4_5(d: &CheckDef) -> Result<CheckRecord> {
    ok(
        d,
        relations(4, 5, &[3, 4, 6, 7])?,
        "m_1 = -3 + 2*m_3 - 3*m_4 + 4*m_6 - 2*m_7; m_2 = -1 + m_3 - 2*m_4 + 2*m_6; \
         m_16 = -5 + 2*m_3 - 4*m_4 + 5*m_6 - 2*m_7; m_17 = 3 + 2*m_4 - 2*m_6 + m_7",
    )
}

fn relations_4_3(d: &CheckDef) -> Result<CheckRecord> {
    ok(d, relations(4, 3, &[2, 4])?, "m_1 = 3 + 3*m_2 - 2*m_4; m_10 = 1 + 2*m_2 - m_4")
}

fn decomposition(d: &CheckDef) -> Result<CheckRecord> {
    let euler = [("2A", 8), ("3A", 6), ("5A", 4), ("5B", 4)];
    let m = decompose_neron_severi(20, 2, &euler)?;
    ok(
        d,
        format!("{m} = {}", m.direct_sum_notation()),
        "(2, 0, 0, 2, 2) = χ_1 ⊕ χ_1' ⊕ χ_4 ⊕ χ_4' ⊕ χ_5 ⊕ χ_5'",
    )
}

fn weighted_total(d: &CheckDef) -> Result<CheckRecord> {
    let classes: Vec<(u64, u32)> = a5()
        .classes()
        .iter()
        .map(|c| (c.size as u64, c.element_order as u32))
        .collect();
    let total = NikulinTable::class_weighted_total(&classes).ok_or(Error::NoSolution)?;
    ok(d, total.to_string(), "360")
}

fn orbit_sizes(d: &CheckDef) -> Result<CheckRecord> {
    let computed = set(transitive_orbit_sizes(&a5())?);
    Ok(CheckRecord::with_discrepancy(
        d.id,
        d.location,
        computed,
        "{5, 6, 10, 12, 15, 20, 30}".into(),
        "{5, 6, 10, 12, 15, 20, 30, 60}",
        "the regular action (r = 60) is transitive but missing from the expected list",
    ))
}

fn small_degrees(d: &CheckDef) -> Result<CheckRecord> {
    let g = a5();
    let small: BTreeSet<usize> = g
        .subgroup_orders()?
        .into_iter()
        .map(|h| g.order() / h)
        .filter(|r| (2..=4).contains(r))
        .collect();
    ok(d, set(small), "{}")
}

fn tuples(d: &CheckDef) -> Result<CheckRecord> {
    ok(d, set(all_admissible_tuples()), "{(-1, 2; 0, 6, 6, 0), (0, 4; 4, 4, 6, 0), (1, 6; 8, 2, 6, 0)}")
}

fn chi_g2(d: &CheckDef) -> Result<CheckRecord> {
    let values: BTreeSet<i64> = all_admissible_tuples().iter().map(|t: &EulerTuple| t.chi_g2).collect();
    ok(d, set(values), "{0}")
}

fn allowed_s() -> Result<BTreeSet<u64>> {
    let mut s: BTreeSet<u64> = transitive_orbit_sizes(&a5())?.into_iter().map(|r| r as u64).collect();
    s.insert(1);
    Ok(s)
}

fn genus_candidates(d: &CheckDef) -> Result<CheckRecord> {
    let c = fixed_locus_genus_candidates(0, 10, &allowed_s()?);
    Ok(CheckRecord::compare(
        d.id,
        d.location,
        set(c.iter().map(|(g, s)| format!("({g}, {s})"))),
        "{(2, 1), (6, 5), (7, 6)}".into(),
    )
    .note("s counts the rational curves, 1 <= s <= 9"))
}

fn after_exclusions(d: &CheckDef) -> Result<CheckRecord> {
    let c: Vec<(u64, u64)> = fixed_locus_genus_candidates(0, 10, &allowed_s()?)
        .into_iter()
        .filter(|(_, s)| !GEOMETRIC_EXCLUSIONS.contains(s))
        .collect();
    let computed = c
        .iter()
        .map(|&(g, s)| format!("genus {g}, C^2 = {}, s = {s}", self_intersection(g)))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(CheckRecord::compare(d.id, d.location, computed, "genus 7, C^2 = 12, s = 6".into())
        .note("s = 1 and s = 5 are excluded by geometric arguments taken as axioms"))
}

fn invariant_overlattice(d: &CheckDef) -> Result<CheckRecord> {
    let f = fixtures()?;
    let l0 = f.lattice("L0")?;
    let cands = even_overlattice_candidates(&l0, 2)?;
    let mut parts = vec![format!("{} extension(s)", cands.len())];
    if let [c] = cands.as_slice() {
        let over = overlattice(&l0, std::slice::from_ref(c))?;
        let u = [f.vector("u1", &["L0"])?, f.vector("u2", &["L0"])?];
        let basis = RatMatrix::from_rows(u.iter().map(|v| v.0.clone()).collect());
        parts.push(format!("glue {}", l0.render(c)));
        parts.push(format!("spanned by u1, u2: {}", over.is_spanned_by(&u)?));
        parts.push(format!("Gram in u1, u2 {}", matrix(&l0.gram_of(&basis))));
    }
    ok(d, parts.join("; "), "1 extension(s); glue 1/2*C + 1/2*D; spanned by u1, u2: true; Gram in u1, u2 (0, 6; 6, 0)")
}

fn determinant_cases(d: &CheckDef) -> Result<CheckRecord> {
    let pool = fixtures()?.determinant_pool;
    let cases = determinant_case_enumeration(&pool, &D1_POOL, &D_POOL, 30);
    ok(d, set(cases), "{(5, 1, 4), (5, 2, 2), (10, 2, 4)}")
}

fn case3_glue(d: &CheckDef) -> Result<CheckRecord> {
    let f = fixtures()?;
    let feas = glue_feasibility(&f.lattice("L0")?, &f.lattice("T10")?, 4)?;
    let ambient = ["L0", "T10"];
    let diff = f.vector("theta_1", &ambient)?.sub(&f.vector("theta_2", &ambient)?);
    let (s_part, t_part) = diff.split_at(2);
    ok(
        d,
        format!(
            "groups: {}; theta_1 - theta_2 integral on T: {}, on S: {}",
            feas.groups.len(),
            t_part.is_integral(),
            s_part.is_integral()
        ),
        "groups: 0; theta_1 - theta_2 integral on T: true, on S: false",
    )
}

fn case2_glue(d: &CheckDef) -> Result<CheckRecord> {
    let f = fixtures()?;
    let feas = glue_feasibility(&f.lattice("U6")?, &f.lattice("T20")?, 4)?;
    let ambient = ["U6", "T20"];
    let mut pairings = BTreeSet::new();
    for i in ["theta^1", "theta^2"] {
        for j in ["theta_1", "theta_2"] {
            pairings.insert(fmt_rat(&feas.ambient.pair(&f.vector(i, &ambient)?, &f.vector(j, &ambient)?)));
        }
    }
    ok(
        d,
        format!("groups: {}; theta^i . theta_j = {}", feas.groups.len(), set(pairings)),
        "groups: 0; theta^i . theta_j = {13/2}",
    )
}

fn case1_glue(d: &CheckDef) -> Result<CheckRecord> {
    let f = fixtures()?;
    let feas = glue_feasibility(&f.lattice("U6")?, &f.lattice("T10")?, 2)?;
    let gens: Vec<String> = feas
        .groups
        .iter()
        .flat_map(|g| g.generators.iter().map(|v| feas.ambient.render(v)))
        .collect();
    let theta = f.vector("theta_glue", &["U6", "T10"])?;
    ok(
        d,
        format!("{}; equals theta: {}", set(gens), feas.groups.len() == 1 && feas.groups[0].generators == [theta]),
        "{1/2*u1 + 1/2*u2 + 1/2*t1 + 1/2*t2}; equals theta: true",
    )
}

fn case1_form() -> Result<crate::lattices::OverlatticeForm> {
    let f = fixtures()?;
    let (u6, t10) = (f.lattice("U6")?, f.lattice("T10")?);
    let feas = glue_feasibility(&u6, &t10, 2)?;
    let glue = feas.groups.first().ok_or(Error::NoSolution)?;
    overlattice_form(&u6, &t10, glue)
}

fn case1_determinant(d: &CheckDef) -> Result<CheckRecord> {
    ok(d, case1_form()?.overlattice.lattice.determinant().to_string(), "-900")
}

fn case1_discriminant(d: &CheckDef) -> Result<CheckRecord> {
    let f = fixtures()?;
    let of = case1_form()?;
    let ambient = ["U6", "T10"];
    let form = of.form_on(&[f.vector("delta1", &ambient)?, f.vector("delta2", &ambient)?])?;
    ok(d, form.to_string(), &f.form("delta")?.to_string())
}

fn congruence(d: &CheckDef) -> Result<CheckRecord> {
    let c = congruence_solution_count((23, 3, 20), -23, 60);
    ok(d, format!("{} of 3600 pairs", c.count), "0 of 3600 pairs")
}

fn mod4(d: &CheckDef) -> Result<CheckRecord> {
    let c = congruence_solution_count((1, 1, 0), 3, 4);
    ok(d, format!("{} of 16 pairs", c.count), "0 of 16 pairs")
}

fn render_congruence((a, b, c): (i64, i64, i64), target: i64, modulus: i64) -> String {
    format!("{a}a^2 + {b}b^2 + {c}ab = {} mod {modulus}", target.rem_euclid(modulus))
}

fn derived_congruence(d: &CheckDef) -> Result<CheckRecord> {
    let computed = fixtures()?.form("delta")?;
    let (coeffs, target, modulus) = derive_congruence(&target_form()?, &computed)?;
    ok(d, render_congruence(coeffs, target, modulus), &render_congruence((23, 3, 20), -23, 60))
}

fn isometry_search(d: &CheckDef) -> Result<CheckRecord> {
    let found = exhaustive_isometry_search(&target_form()?, &fixtures()?.form("delta")?)?;
    ok(d, format!("{} isometries", found.len()), "0 isometries")
}

fn verdict(d: &CheckDef) -> Result<CheckRecord> {
    let f = fixtures()?;
    let case = *determinant_case_enumeration(&f.determinant_pool, &D1_POOL, &D_POOL, 30)
        .iter()
        .find(|c| (c.m, c.d1, c.d) == (5, 2, 2))
        .ok_or(Error::NoSolution)?;
    let v = obstruction_verdict(case, &f.form("delta")?)?;
    ok(
        d,
        format!("case {}: {} (isometries {}, congruence solutions {})", v.case, v.verdict, v.isometry_count, v.congruence_count),
        "case (5, 2, 2): impossible (isometries 0, congruence solutions 0)",
    )
}
