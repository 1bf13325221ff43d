//! Relative rank of the invertible subgroup inside the full CA monoid for
//! abelian groups, the generating set realizing it, rank upper bounds, the
//! alpha = 1 certificates, and the small-memory impossibility check.

use crate::ca::{tau_xy, LocalRule, Transformation};
use crate::config::{ConfigSpace, OrbitTable};
use crate::error::{CaError, Result};
use crate::group::SubgroupLattice;
use crate::oracle;
use serde::Serialize;

/// One generator of the relative generating set with its provenance:
/// `edge i->j` for a strict class relation, `loop i` for a class with at
/// least two orbits.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorInfo {
    pub provenance: String,
    pub map: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub relative_rank: usize,
    pub generators: Vec<GeneratorInfo>,
    pub rank_upper_bound_tight: usize,
    pub rank_upper_bound_coarse: usize,
    pub alpha_one_classes: Vec<usize>,
}

/// Per-class outcome of the alpha = 1 certificates.
#[derive(Debug, Clone, Serialize)]
pub struct ClassCertificate {
    pub class: usize,
    pub subgroup_index: usize,
    pub alpha: usize,
    /// index 2 implies (alpha = 1 iff q = 2)
    pub index_two_ok: bool,
    /// alpha = 1 implies q divides the index
    pub divisibility_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaOneReport {
    pub certificates: Vec<ClassCertificate>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmallMemoryReport {
    pub generator_count: usize,
    pub closure_size: usize,
    pub full_monoid_size: usize,
    pub closure_is_proper: bool,
    pub contains_constant_collapse: bool,
}

fn require_abelian(space: &ConfigSpace) -> Result<()> {
    if !space.group().is_abelian() {
        return Err(CaError::NotAbelian);
    }
    Ok(())
}

fn delta(a: usize, b: usize) -> usize {
    usize::from(a == b)
}

/// Classes i >= 2 (1-based as in the formula; index > 0 here) with a single
/// orbit in their block.
pub fn alpha_one_classes(table: &OrbitTable) -> Vec<usize> {
    table
        .alpha
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &a)| a == 1)
        .map(|(i, _)| i)
        .collect()
}

/// `|E_G| - sum_{i>=2} delta(alpha_i, 1)` for abelian G.
pub fn relative_rank(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
) -> Result<usize> {
    require_abelian(space)?;
    // The class of G always holds the q constant orbits.
    assert_eq!(table.alpha[0], space.q(), "alpha_1 must equal q");
    Ok(lattice.edge_count() - alpha_one_classes(table).len())
}

/// Fixed orbit representatives per class: x_i from the minimal-code orbit
/// of the block, y_i from the second-minimal (when alpha_i >= 2).
fn class_reps(table: &OrbitTable, class: usize) -> (usize, Option<usize>) {
    let orbits = table.block_orbits(class);
    let x = table.reps[orbits[0]];
    let y = orbits.get(1).map(|&o| table.reps[o]);
    (x, y)
}

/// The generating set from the relative-rank formula: one orbit collapse
/// per strict class relation plus one per class with at least two orbits.
pub fn generating_set_u(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
) -> Result<Vec<(Transformation, String)>> {
    require_abelian(space)?;
    let mut out = Vec::new();
    for &(i, j) in &lattice.edges {
        if i == j {
            continue;
        }
        let (xi, _) = class_reps(table, i);
        let (xj, _) = class_reps(table, j);
        out.push((tau_xy(space, xi, xj)?, format!("edge {i}->{j}")));
    }
    for class in 0..lattice.class_count() {
        if table.alpha[class] >= 2 {
            let (x, y) = class_reps(table, class);
            let y = y.expect("alpha >= 2 gives a second orbit");
            out.push((tau_xy(space, x, y)?, format!("loop {class}")));
        }
    }
    Ok(out)
}

/// The two generic rank upper bounds `(tight, coarse)` for abelian G with
/// `m` the rank of the group.
pub fn rank_upper_bounds(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
    m: usize,
) -> Result<(usize, usize)> {
    require_abelian(space)?;
    let r = lattice.class_count();
    let q = space.q();
    let e = lattice.edge_count();
    let alpha = &table.alpha;
    let sum_m_alpha: usize = (1..r).map(|i| m * alpha[i]).sum();
    let penalty: usize = (1..r).map(|i| 3 * delta(alpha[i], 1) + delta(alpha[i], 2)).sum();
    let tight = sum_m_alpha + 2 * r + e - delta(q, 2) - penalty;
    let coarse = sum_m_alpha + 2 * r + r * r;
    Ok((tight, coarse))
}

/// Rank bound via a supplied bound on the rank of the invertible subgroup.
pub fn rank_bound_with_ica(relative_rank: usize, ica_rank_bound: usize) -> usize {
    relative_rank + ica_rank_bound
}

/// Full rank report for an abelian instance: the formula value, the
/// generating set with provenance, both upper bounds and the alpha = 1
/// classes. Serializes to JSON.
pub fn rank_report(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
) -> Result<RankReport> {
    let rel = relative_rank(space, lattice, table)?;
    let generators: Vec<GeneratorInfo> = generating_set_u(space, lattice, table)?
        .into_iter()
        .map(|(t, provenance)| GeneratorInfo { provenance, map: t.map })
        .collect();
    assert_eq!(generators.len(), rel, "|U| must equal the relative rank");
    let (tight, coarse) = rank_upper_bounds(space, lattice, table, space.group().rank())?;
    Ok(RankReport {
        relative_rank: rel,
        generators,
        rank_upper_bound_tight: tight,
        rank_upper_bound_coarse: coarse,
        alpha_one_classes: alpha_one_classes(table),
    })
}

/// Checks, for every class: index 2 implies (alpha = 1 iff q = 2), and
/// alpha = 1 implies q divides the index. Violations indicate a library
/// bug, not bad input.
pub fn alpha_one_certificates(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
) -> AlphaOneReport {
    let q = space.q();
    let n = space.n();
    let mut certificates = Vec::new();
    let mut violations = Vec::new();
    for (class, c) in lattice.classes.iter().enumerate() {
        let index = n / c.rep.order as usize;
        let alpha = table.alpha[class];
        let index_two_ok = index != 2 || ((alpha == 1) == (q == 2));
        let divisibility_ok = alpha != 1 || index % q == 0;
        if !index_two_ok {
            violations.push(format!(
                "class {class}: index 2 but alpha = {alpha} with q = {q}"
            ));
        }
        if !divisibility_ok {
            violations.push(format!(
                "class {class}: alpha = 1 but q = {q} does not divide index {index}"
            ));
        }
        certificates.push(ClassCertificate {
            class,
            subgroup_index: index,
            alpha,
            index_two_ok,
            divisibility_ok,
        });
    }
    AlphaOneReport { certificates, violations }
}

/// All CA whose memory fits inside `G \ {g}` for some g; these are exactly
/// the CA with minimal memory set a proper subset of G.
pub fn small_memory_generators(space: &ConfigSpace, cap: usize) -> Result<oracle::MonoidSet> {
    let n = space.n();
    let q = space.q();
    let patterns = q.pow((n - 1) as u32);
    // q^patterns rules per maximal proper subset.
    let mut rule_count: usize = 1;
    for _ in 0..patterns {
        rule_count = rule_count
            .checked_mul(q)
            .filter(|&c| c <= cap)
            .ok_or(CaError::SpaceTooLarge { needed: u128::MAX, guard: cap as u128 })?;
    }
    let mut set = oracle::MonoidSet::new();
    for skipped in 0..n {
        let memory: Vec<usize> = (0..n).filter(|&g| g != skipped).collect();
        for rule_id in 0..rule_count {
            let mut table = Vec::with_capacity(patterns);
            let mut v = rule_id;
            for _ in 0..patterns {
                table.push(v % q);
                v /= q;
            }
            let rule = LocalRule::new(memory.clone(), table, q)?;
            set.insert(rule.to_transformation(space)?);
        }
    }
    Ok(set)
}

/// Closes the small-memory CA under composition and certifies the closure
/// is a proper submonoid missing the constant collapse `(0 -> 1)`.
pub fn small_memory_closure_check(space: &ConfigSpace, cap: usize) -> Result<SmallMemoryReport> {
    let q = space.q();
    let mut full: usize = 1;
    for _ in 0..space.size() {
        full = full
            .checked_mul(q)
            .filter(|&c| c <= cap)
            .ok_or(CaError::SpaceTooLarge { needed: u128::MAX, guard: cap as u128 })?;
    }
    let gens_set = small_memory_generators(space, cap)?;
    let gens: Vec<Transformation> = gens_set.iter().cloned().collect();
    let closed = oracle::closure(&gens, space.size(), cap)?;
    let sigma = Transformation::collapse(space.size(), &[space.constant(0)], space.constant(1));
    Ok(SmallMemoryReport {
        generator_count: gens.len(),
        closure_size: closed.len(),
        full_monoid_size: full,
        closure_is_proper: closed.len() < full,
        contains_constant_collapse: closed.contains(&sigma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::oracle::DEFAULT_CAP;

    fn setup(spec: &str, q: usize) -> (ConfigSpace, SubgroupLattice, OrbitTable) {
        let g = FiniteGroup::from_spec(spec).unwrap();
        let s = ConfigSpace::new(g, q).unwrap();
        let lat = s.group().conjugacy_classes();
        let t = s.orbit_table(&lat);
        (s, lat, t)
    }

    #[test]
    fn klein_relative_rank_is_nine() {
        let (s, lat, t) = setup("cyclic:2xcyclic:2", 2);
        assert_eq!(relative_rank(&s, &lat, &t).unwrap(), 9);
        assert_eq!(generating_set_u(&s, &lat, &t).unwrap().len(), 9);
    }

    #[test]
    fn cyclic2_relative_ranks() {
        let (s, lat, t) = setup("cyclic:2", 2);
        assert_eq!(relative_rank(&s, &lat, &t).unwrap(), 2);
        // q = 3 does not divide |G| = 2, so no alpha_i = 1 and the rank is
        // the full edge count.
        let (s3, lat3, t3) = setup("cyclic:2", 3);
        assert_eq!(relative_rank(&s3, &lat3, &t3).unwrap(), 3);
        assert_eq!(lat3.edge_count(), 3);
    }

    #[test]
    fn rank_refuses_nonabelian() {
        let g = crate::group::tests::sym3();
        let s = ConfigSpace::new(g, 2).unwrap();
        let lat = s.group().conjugacy_classes();
        let t = s.orbit_table(&lat);
        assert!(matches!(relative_rank(&s, &lat, &t), Err(CaError::NotAbelian)));
        assert!(matches!(generating_set_u(&s, &lat, &t), Err(CaError::NotAbelian)));
    }

    #[test]
    fn upper_bounds() {
        let (s, lat, t) = setup("cyclic:2xcyclic:2", 2);
        let m = s.group().rank();
        assert_eq!(rank_upper_bounds(&s, &lat, &t, m).unwrap(), (21, 45));
        assert_eq!(rank_bound_with_ica(9, 9), 18);

        let (s2, lat2, t2) = setup("cyclic:2", 2);
        let (tight, _) = rank_upper_bounds(&s2, &lat2, &t2, s2.group().rank()).unwrap();
        assert_eq!(tight, 4);
    }

    #[test]
    fn generating_set_closure_reaches_full_monoid() {
        for (spec, q) in [("cyclic:2", 2), ("cyclic:3", 2)] {
            let (s, lat, t) = setup(spec, q);
            let ca = oracle::enumerate_ca(&s).unwrap();
            let ica = oracle::enumerate_ica(&s).unwrap();
            let mut gens: Vec<Transformation> = ica.iter().cloned().collect();
            gens.extend(generating_set_u(&s, &lat, &t).unwrap().into_iter().map(|(t, _)| t));
            let closed = oracle::closure(&gens, s.size(), DEFAULT_CAP).unwrap();
            assert_eq!(closed.len(), ca.len(), "{spec} q={q}");
        }
    }

    #[test]
    fn alpha_one_certificate_cases() {
        // Klein, q=2: all three index-2 subgroups have alpha = 1.
        let (s, lat, t) = setup("cyclic:2xcyclic:2", 2);
        let report = alpha_one_certificates(&s, &lat, &t);
        assert!(report.violations.is_empty());
        let ones = alpha_one_classes(&t);
        assert_eq!(ones.len(), 3);
        for &c in &ones {
            assert_eq!(s.n() / lat.classes[c].rep.order as usize, 2);
        }
        // Klein, q=3: all index-2 subgroups now have alpha >= 2.
        let (s3, lat3, t3) = setup("cyclic:2xcyclic:2", 3);
        let report = alpha_one_certificates(&s3, &lat3, &t3);
        assert!(report.violations.is_empty());
        assert!(alpha_one_classes(&t3).is_empty());
        // cyclic:4, q=3: 3 does not divide 4, so no class beyond the first
        // has alpha = 1.
        let (s4, lat4, t4) = setup("cyclic:4", 3);
        let report = alpha_one_certificates(&s4, &lat4, &t4);
        assert!(report.violations.is_empty());
        assert!(alpha_one_classes(&t4).is_empty());
    }

    #[test]
    fn small_memory_closure_cyclic2() {
        let (s, _, _) = setup("cyclic:2", 2);
        let report = small_memory_closure_check(&s, DEFAULT_CAP).unwrap();
        assert!(report.closure_is_proper);
        assert!(report.closure_size < 16);
        assert!(!report.contains_constant_collapse);
    }

    #[test]
    fn small_memory_closure_cyclic3() {
        let (s, _, _) = setup("cyclic:3", 2);
        let report = small_memory_closure_check(&s, DEFAULT_CAP).unwrap();
        assert_eq!(report.full_monoid_size, 256);
        assert!(report.closure_is_proper);
        assert!(!report.contains_constant_collapse);
    }
}
