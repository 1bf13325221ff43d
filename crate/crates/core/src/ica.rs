//! Structure of the group of invertible cellular automata: per-orbit
//! centralizers and the direct product of wreath products they assemble
//! into, with orders kept exact via big integers.

use crate::config::{ConfigSpace, OrbitTable};
use crate::error::{CaError, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};
use num_bigint::BigUint;

/// The restriction group of invertible CA fixing one orbit setwise.
#[derive(Debug, Clone)]
pub struct OrbitCentralizer {
    pub orbit: usize,
    pub order: usize,
    /// Codes y in the orbit with `G_y = G_x` for the representative x; each
    /// determines one centralizing permutation.
    pub elements: Vec<usize>,
    pub pointwise_stab: Subgroup,
}

/// One wreath factor per conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct IcaFactor {
    pub class_index: usize,
    pub centralizer_order: u64,
    pub multiplicity: usize,
    pub label: String,
}

/// The full decomposition: one factor `C_i wr Sym_{alpha_i}` per class.
#[derive(Debug, Clone)]
pub struct IcaDecomposition {
    pub factors: Vec<IcaFactor>,
    pub total_order: BigUint,
    pub structure: String,
}

/// Centralizer data for one orbit: the codes sharing the representative's
/// stabilizer exactly, one per centralizing permutation.
pub fn orbit_centralizer(
    orbit: usize,
    table: &OrbitTable,
    space: &ConfigSpace,
) -> OrbitCentralizer {
    let rep_stab = table.stab[orbit];
    let codes = table.orbit_codes(orbit);
    let elements: Vec<usize> = codes
        .iter()
        .copied()
        .filter(|&y| space.stabilizer(y) == rep_stab)
        .collect();
    let mut pointwise = u64::MAX;
    for &y in &codes {
        pointwise &= space.stabilizer(y).members;
    }
    OrbitCentralizer {
        orbit,
        order: elements.len(),
        elements,
        pointwise_stab: Subgroup { members: pointwise, order: pointwise.count_ones() },
    }
}

/// Invariant factors of a finite abelian group, ascending with each
/// dividing the next. Peels off a cyclic direct summand of maximal order.
pub fn invariant_factors(group: &FiniteGroup) -> Vec<usize> {
    if group.order() == 1 {
        return Vec::new();
    }
    debug_assert!(group.is_abelian());
    let top = (0..group.order()).max_by_key(|&g| group.element_order(g)).unwrap();
    let d = group.element_order(top);
    let h = group.subgroup_closure(1 << top);
    let q = quotient_group(group, &h);
    let mut factors = invariant_factors(&q);
    factors.push(d);
    factors
}

/// Quotient of a group by a normal subgroup, as a concrete group on coset
/// representatives.
pub fn quotient_group(group: &FiniteGroup, h: &Subgroup) -> FiniteGroup {
    let n = group.order();
    // Coset of e = { e*s : s in H }; representative = minimal member.
    let coset_rep = |e: usize| -> usize {
        h.elements().map(|s| group.mul(e, s)).min().unwrap()
    };
    let mut reps: Vec<usize> = (0..n).map(coset_rep).collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    reps.sort();
    let index_of = |e: usize| reps.iter().position(|&r| r == coset_rep(e)).unwrap();
    let m = reps.len();
    let mut table = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            table[i][j] = index_of(group.mul(reps[i], reps[j]));
        }
    }
    FiniteGroup::from_cayley(table, &format!("{}/H", group.name()))
        .expect("quotient by a normal subgroup is a group")
}

fn quotient_label(group: &FiniteGroup, h: &Subgroup) -> String {
    let q = quotient_group(group, h);
    if q.order() == 1 {
        return "1".to_string();
    }
    if q.is_abelian() {
        invariant_factors(&q)
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join("x")
    } else {
        format!("C{}", q.order())
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).map(BigUint::from).product()
}

/// The decomposition of the invertible-CA group into wreath factors, one
/// per conjugacy class in lattice order, with the exact total order
/// `prod |C_i|^{alpha_i} * alpha_i!`.
pub fn ica_decomposition(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
) -> Result<IcaDecomposition> {
    let group = space.group();
    let abelian = group.is_abelian();
    let mut factors = Vec::new();
    let mut total = BigUint::from(1u32);
    for (i, class) in lattice.classes.iter().enumerate() {
        let orbits = table.block_orbits(i);
        if orbits.is_empty() {
            // Cannot happen for q >= 2: the indicator configuration of any
            // subgroup realizes its class.
            return Err(CaError::NotAGroup(format!("class {i} has no orbit")));
        }
        let alpha = table.alpha[i];
        debug_assert_eq!(alpha, orbits.len());
        let cent = orbit_centralizer(orbits[0], table, space);
        let label = if abelian {
            quotient_label(group, &class.rep)
        } else if cent.order == 1 {
            "1".to_string()
        } else {
            format!("C{}", cent.order)
        };
        total *= BigUint::from(cent.order as u64).pow(alpha as u32) * factorial(alpha);
        factors.push(IcaFactor {
            class_index: i,
            centralizer_order: cent.order as u64,
            multiplicity: alpha,
            label,
        });
    }
    let structure = render_structure(&factors);
    Ok(IcaDecomposition { factors, total_order: total, structure })
}

/// Product string such as `(1 wr S2) x (Z2 wr S1)^3 x (Z2xZ2 wr S2)`,
/// grouping adjacent identical factors.
fn render_structure(factors: &[IcaFactor]) -> String {
    let mut parts: Vec<(String, usize)> = Vec::new();
    for f in factors {
        let s = format!("({} wr S{})", f.label, f.multiplicity);
        match parts.last_mut() {
            Some((prev, count)) if *prev == s => *count += 1,
            _ => parts.push((s, 1)),
        }
    }
    parts
        .into_iter()
        .map(|(s, c)| if c == 1 { s } else { format!("{s}^{c}") })
        .collect::<Vec<_>>()
        .join(" x ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(spec: &str, q: usize) -> (ConfigSpace, SubgroupLattice, OrbitTable) {
        let g = FiniteGroup::from_spec(spec).unwrap();
        let s = ConfigSpace::new(g, q).unwrap();
        let lat = s.group().conjugacy_classes();
        let t = s.orbit_table(&lat);
        (s, lat, t)
    }

    #[test]
    fn singleton_orbit_has_trivial_centralizer() {
        let (s, _, t) = setup("cyclic:2xcyclic:2", 2);
        for o in 0..t.orbit_count() {
            if t.orbit_size[o] == 1 {
                assert_eq!(orbit_centralizer(o, &t, &s).order, 1);
            }
        }
    }

    #[test]
    fn abelian_free_orbit_centralizer_has_order_of_g() {
        let (s, _, t) = setup("cyclic:2xcyclic:3", 2);
        for o in 0..t.orbit_count() {
            let cent = orbit_centralizer(o, &t, &s);
            // Abelian: centralizer order = |G| / |G_x| for every orbit.
            assert_eq!(cent.order, s.n() / t.stab[o].order as usize);
            if t.stab[o].order == 1 {
                assert_eq!(cent.order, 6);
            }
        }
    }

    #[test]
    fn centralizer_order_is_normalizer_index() {
        // |C(G^O)| = |N_G(G_x)| / |G_x| also in the nonabelian case.
        let g = crate::group::tests::sym3();
        let s = ConfigSpace::new(g, 2).unwrap();
        let lat = s.group().conjugacy_classes();
        let t = s.orbit_table(&lat);
        for o in 0..t.orbit_count() {
            let cent = orbit_centralizer(o, &t, &s);
            let norm = s.group().normalizer(&t.stab[o]);
            assert_eq!(cent.order as u32, norm.order / t.stab[o].order);
            if t.stab[o].order == 1 {
                assert_eq!(cent.order, 6, "free orbit of sym3");
            }
        }
    }

    #[test]
    fn klein_decomposition() {
        let (s, lat, t) = setup("cyclic:2xcyclic:2", 2);
        let d = ica_decomposition(&s, &lat, &t).unwrap();
        let cents: Vec<u64> = d.factors.iter().map(|f| f.centralizer_order).collect();
        let alphas: Vec<usize> = d.factors.iter().map(|f| f.multiplicity).collect();
        assert_eq!(cents, vec![1, 2, 2, 2, 4]);
        assert_eq!(alphas, vec![2, 1, 1, 1, 2]);
        assert_eq!(d.total_order, BigUint::from(512u32));
        assert_eq!(d.structure, "(1 wr S2) x (Z2 wr S1)^3 x (Z2xZ2 wr S2)");
    }

    #[test]
    fn cyclic2_decomposition() {
        let (s, lat, t) = setup("cyclic:2", 2);
        let d = ica_decomposition(&s, &lat, &t).unwrap();
        assert_eq!(d.total_order, BigUint::from(4u32));
        assert_eq!(d.structure, "(1 wr S2) x (Z2 wr S1)");
    }

    #[test]
    fn invariant_factor_labels() {
        let klein = FiniteGroup::from_spec("cyclic:2xcyclic:2").unwrap();
        assert_eq!(invariant_factors(&klein), vec![2, 2]);
        let z6 = FiniteGroup::from_spec("cyclic:2xcyclic:3").unwrap();
        assert_eq!(invariant_factors(&z6), vec![6]);
        let z2z4 = FiniteGroup::from_spec("cyclic:2xcyclic:4").unwrap();
        assert_eq!(invariant_factors(&z2z4), vec![2, 4]);
    }

    #[test]
    fn quotient_orders() {
        let g = FiniteGroup::from_spec("cyclic:4").unwrap();
        for h in g.subgroups() {
            assert_eq!(quotient_group(&g, &h).order(), 4 / h.order as usize);
        }
    }
}
