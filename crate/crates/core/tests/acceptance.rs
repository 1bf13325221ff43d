//! End-to-end acceptance suite. Each test covers one criterion and prints a
//! single PASS/FAIL line (run with `--nocapture` to see them on success).
//! All equalities are exact integer combinatorics; there are no tolerances.

use camonoid::{
    analyze, ca, config::ConfigSpace, enumerate_ca, group::FiniteGroup, ica, oracle, rank,
    AnalyzeOptions, Transformation,
};
use num_bigint::BigUint;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("PASS {name}"),
        Err(why) => {
            println!("FAIL {name}: {why}");
            panic!("{name}: {why}");
        }
    }
}

/// Symmetric group on 3 letters (elements e, three transpositions, two
/// 3-cycles), via an explicit Cayley table.
fn sym3() -> FiniteGroup {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let compose = |a: &[usize; 3], b: &[usize; 3]| [b[a[0]], b[a[1]], b[a[2]]];
    let mut table = vec![vec![0usize; 6]; 6];
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate() {
            let c = compose(a, b);
            table[i][j] = perms.iter().position(|p| *p == c).unwrap();
        }
    }
    FiniteGroup::from_cayley(table, "sym:3").unwrap()
}

/// The test corpus: cyclic groups of order 2..8, products of two cyclics up
/// to order 16, and the smallest nonabelian group.
fn corpus() -> Vec<FiniteGroup> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(FiniteGroup::from_spec(&format!("cyclic:{n}")).unwrap());
    }
    for a in 2..=8 {
        for b in a..=8 {
            if a * b <= 16 {
                out.push(FiniteGroup::from_spec(&format!("cyclic:{a}xcyclic:{b}")).unwrap());
            }
        }
    }
    out.push(sym3());
    out
}

fn space(spec: &str, q: usize) -> ConfigSpace {
    ConfigSpace::new(FiniteGroup::from_spec(spec).unwrap(), q).unwrap()
}

/// The four instances small enough to enumerate in full.
const ENUMERABLE: [(&str, usize, usize); 4] = [
    ("cyclic:2", 2, 16),
    ("cyclic:3", 2, 256),
    ("cyclic:2", 3, 19683),
    ("cyclic:2xcyclic:2", 2, 65536),
];

#[test]
fn criterion_1_klein_four_analysis() {
    criterion("1 Klein-four analysis reproduces the known structure", || {
        let g = FiniteGroup::from_spec("cyclic:2xcyclic:2").unwrap();
        let r = analyze(g, 2, AnalyzeOptions::default()).map_err(|e| e.to_string())?;
        ensure!(r.orbit_count == 7, "orbit count {}", r.orbit_count);
        ensure!(r.orbit_sizes == vec![1, 1, 2, 2, 2, 4, 4], "sizes {:?}", r.orbit_sizes);
        ensure!(r.alpha == vec![2, 1, 1, 1, 2], "alpha {:?}", r.alpha);
        ensure!(r.class_count == 5, "classes {}", r.class_count);
        ensure!(r.edge_count == 12, "|E| = {}", r.edge_count);
        ensure!(r.relative_rank == Some(9), "relative rank {:?}", r.relative_rank);
        // Equivalent to (Z2)^4 x ((Z2 x Z2) wr Sym2): the first factor is
        // Sym2 of the two constants, then three order-2 centralizers.
        ensure!(
            r.ica_structure == "(1 wr S2) x (Z2 wr S1)^3 x (Z2xZ2 wr S2)",
            "structure {}",
            r.ica_structure
        );
        ensure!(r.ica_order == "512", "|ICA| = {}", r.ica_order);
        Ok(())
    });
}

#[test]
fn criterion_2_cardinality_identity() {
    criterion("2 |CA| = q^(q^n) = product of fix counts on enumerable instances", || {
        for (spec, q, expected) in ENUMERABLE {
            let s = space(spec, q);
            let ca = enumerate_ca(&s).map_err(|e| e.to_string())?;
            ensure!(ca.len() == expected, "{spec} q={q}: enumerated {}", ca.len());
            let pow = q.checked_pow(s.size() as u32).unwrap();
            ensure!(pow == expected, "{spec} q={q}: q^(q^n) = {pow}");
            let lat = s.group().conjugacy_classes();
            let table = s.orbit_table(&lat);
            let prod: u64 = (0..table.orbit_count()).map(|o| s.fix_count(&table.stab[o])).product();
            ensure!(prod == expected as u64, "{spec} q={q}: fix-count product {prod}");
        }
        Ok(())
    });
}

#[test]
fn criterion_3_invertible_order_matches_formula() {
    criterion("3 brute-force |ICA| equals the wreath-product formula", || {
        let expected = [("cyclic:2", 4usize), ("cyclic:3", 36), ("cyclic:2xcyclic:2", 512)];
        for (spec, count) in expected {
            let s = space(spec, 2);
            let ica = oracle::enumerate_ica(&s).map_err(|e| e.to_string())?;
            ensure!(ica.len() == count, "{spec}: counted {}", ica.len());
            let lat = s.group().conjugacy_classes();
            let table = s.orbit_table(&lat);
            let d = ica::ica_decomposition(&s, &lat, &table).map_err(|e| e.to_string())?;
            ensure!(
                d.total_order == BigUint::from(count),
                "{spec}: formula gives {}",
                d.total_order
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_4_generation_sufficiency() {
    criterion("4 closure of the invertibles plus U is the whole monoid", || {
        for (spec, q, expected) in ENUMERABLE {
            let s = space(spec, q);
            let ca = enumerate_ca(&s).map_err(|e| e.to_string())?;
            let ica = oracle::enumerate_ica(&s).map_err(|e| e.to_string())?;
            let lat = s.group().conjugacy_classes();
            let table = s.orbit_table(&lat);
            // Closing over a generating subset of the invertibles reaches the
            // same submonoid as closing over all of them.
            let mut gens = oracle::greedy_generators(&ica, s.size());
            gens.extend(
                rank::generating_set_u(&s, &lat, &table)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .map(|(t, _)| t),
            );
            let closed = oracle::closure(&gens, s.size(), usize::MAX).map_err(|e| e.to_string())?;
            ensure!(
                closed.len() == expected && closed.len() == ca.len(),
                "{spec} q={q}: closure size {} of {}",
                closed.len(),
                ca.len()
            );
            for t in closed.iter() {
                ensure!(ca.contains(t), "{spec} q={q}: closure left the monoid");
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_relative_rank_necessity() {
    criterion("5 exhaustive relative rank equals the formula", || {
        for (spec, q, expected) in [("cyclic:2", 2, 2usize), ("cyclic:2", 3, 3)] {
            let s = space(spec, q);
            let lat = s.group().conjugacy_classes();
            let table = s.orbit_table(&lat);
            let formula = rank::relative_rank(&s, &lat, &table).map_err(|e| e.to_string())?;
            ensure!(formula == expected, "{spec} q={q}: formula {formula}");
            let searched = oracle::exhaustive_relative_rank(&s, usize::MAX, true)
                .map_err(|e| e.to_string())?;
            ensure!(searched == expected, "{spec} q={q}: search found {searched}");
        }
        Ok(())
    });
}

#[test]
fn criterion_6_small_memory_impossibility() {
    criterion("6 small-memory CA close to a proper submonoid without (0 -> 1)", || {
        for spec in ["cyclic:2", "cyclic:3", "cyclic:2xcyclic:2"] {
            let s = space(spec, 2);
            let r = rank::small_memory_closure_check(&s, usize::MAX).map_err(|e| e.to_string())?;
            ensure!(r.closure_is_proper, "{spec}: closure reaches the full monoid");
            ensure!(!r.contains_constant_collapse, "{spec}: closure contains (0 -> 1)");
        }
        Ok(())
    });
}

#[test]
fn criterion_7_weight_census() {
    criterion("7 weight census equals n(q-1)(q^(n-1)-1), w/n not divisible by q", || {
        let groups = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:2xcyclic:2"];
        for spec in groups {
            for q in 2..=4 {
                let s = space(spec, q);
                for k in 0..q {
                    let c = ca::weight_census(&s, k);
                    ensure!(
                        c.total == c.closed_form,
                        "{spec} q={q} k={k}: census {} vs {}",
                        c.total,
                        c.closed_form
                    );
                    ensure!(
                        !c.per_cell_divisible_by_q,
                        "{spec} q={q} k={k}: w/n = {} divisible by q",
                        c.per_cell
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_8_property_suites_over_corpus() {
    criterion("8 property suites hold on the whole corpus", || {
        for group in corpus() {
            for q in [2usize, 3] {
                let name = format!("{} q={q}", group.name());
                let s = match ConfigSpace::new(group.clone(), q) {
                    Ok(s) => s,
                    // Out of the space guard (large group with q = 3).
                    Err(_) => continue,
                };
                check_action_axioms(&s).map_err(|e| format!("{name}: {e}"))?;
                check_orbit_structure(&s).map_err(|e| format!("{name}: {e}"))?;
                check_tau(&s).map_err(|e| format!("{name}: {e}"))?;
                check_enumerated_monoid(&s).map_err(|e| format!("{name}: {e}"))?;
            }
        }
        Ok(())
    });
}

/// Identity and compatibility axioms of the right action, on every code for
/// small spaces and on a deterministic stride sample for large ones.
fn check_action_axioms(s: &ConfigSpace) -> Result<(), String> {
    let n = s.n();
    let stride = (s.size() / 4096).max(1);
    for x in (0..s.size()).step_by(stride) {
        ensure!(s.act(x, FiniteGroup::IDENTITY) == x, "x.e != x at {x}");
        for g in 0..n {
            for h in 0..n {
                let lhs = s.act(s.act(x, g), h);
                let rhs = s.act(x, s.group().mul(g, h));
                ensure!(lhs == rhs, "(x.g).h != x.(gh) at x={x} g={g} h={h}");
            }
        }
    }
    Ok(())
}

/// Orbit-stabilizer equality, the partition identity, the constant block,
/// and the index-2/divisibility certificates.
fn check_orbit_structure(s: &ConfigSpace) -> Result<(), String> {
    let lat = s.group().conjugacy_classes();
    let table = s.orbit_table(&lat);
    let mut total = 0usize;
    for o in 0..table.orbit_count() {
        ensure!(
            table.orbit_size[o] * table.stab[o].order as usize == s.n(),
            "orbit-stabilizer fails on orbit {o}"
        );
        total += table.orbit_size[o];
    }
    ensure!(total == s.size(), "orbits do not partition the space");
    ensure!(table.alpha[0] == s.q(), "constant block has alpha {}", table.alpha[0]);
    let certs = rank::alpha_one_certificates(s, &lat, &table);
    ensure!(certs.violations.is_empty(), "certificates: {}", certs.violations.join("; "));
    Ok(())
}

/// tau_{x,y} exists iff the stabilizer class of x sits below that of y, and
/// every tau is idempotent. Orbit pairs are capped for very large spaces.
fn check_tau(s: &ConfigSpace) -> Result<(), String> {
    let lat = s.group().conjugacy_classes();
    let table = s.orbit_table(&lat);
    let cap = if s.size() <= 4096 { 48 } else { 12 };
    let reps: Vec<usize> = table.reps.iter().copied().take(cap).collect();
    let full_equivariance = s.size() <= 4096;
    for &x in &reps {
        for &y in &reps {
            if x == y {
                continue;
            }
            let cx = table.block_of[table.orbit_id[x] as usize];
            let cy = table.block_of[table.orbit_id[y] as usize];
            match ca::tau_xy(s, x, y) {
                Ok(t) => {
                    ensure!(lat.leq[cx][cy], "tau exists but [G_x] is not below [G_y]");
                    ensure!(t.compose(&t) == t, "tau_{x},{y} is not idempotent");
                    if full_equivariance {
                        ensure!(t.is_equivariant(s), "tau_{x},{y} is not equivariant");
                    } else {
                        // Spot-check equivariance on a stride of codes.
                        for c in (0..s.size()).step_by(257) {
                            for g in 0..s.n() {
                                ensure!(
                                    t.apply(s.act(c, g)) == s.act(t.apply(c), g),
                                    "tau_{x},{y} is not equivariant at {c}"
                                );
                            }
                        }
                    }
                }
                Err(camonoid::CaError::StabilizerNotDominated) => {
                    ensure!(!lat.leq[cx][cy], "tau missing though [G_x] <= [G_y]");
                }
                Err(camonoid::CaError::SameOrbit) => {}
                Err(e) => return Err(format!("tau_{x},{y}: {e}")),
            }
        }
    }
    Ok(())
}

/// On instances small enough to enumerate in full: constants go to
/// constants, each orbit maps into a single orbit, fixing every orbit
/// setwise forces a permutation, and every constructed tau is a member.
fn check_enumerated_monoid(s: &ConfigSpace) -> Result<(), String> {
    let ca = match oracle::enumerate_ca_capped(s, 65_536) {
        Ok(ca) => ca,
        Err(camonoid::CaError::SpaceTooLarge { .. }) => return Ok(()),
        Err(e) => return Err(e.to_string()),
    };
    let lat = s.group().conjugacy_classes();
    let table = s.orbit_table(&lat);
    let orbit_codes: Vec<Vec<usize>> =
        (0..table.orbit_count()).map(|o| table.orbit_codes(o)).collect();
    for t in ca.iter() {
        let mut fixes_every_orbit = true;
        for (o, codes) in orbit_codes.iter().enumerate() {
            let image_orbit = table.orbit_id[t.apply(codes[0])];
            for &x in codes {
                ensure!(
                    table.orbit_id[t.apply(x)] == image_orbit,
                    "an orbit maps into two orbits"
                );
            }
            if image_orbit as usize != o {
                fixes_every_orbit = false;
            }
        }
        for k in 0..s.q() {
            ensure!(
                s.is_constant(t.apply(s.constant(k))),
                "a constant maps to a non-constant"
            );
        }
        if fixes_every_orbit {
            ensure!(t.is_invertible(), "fixing every orbit setwise must force a permutation");
        }
    }
    for &x in &table.reps {
        for &y in &table.reps {
            if let Ok(t) = ca::tau_xy(s, x, y) {
                ensure!(ca.contains(&t), "tau_{x},{y} missing from the enumeration");
            }
        }
    }
    // U is irredundant over the invertibles: dropping any member loses the
    // monoid (kept to the very small abelian instances).
    if s.group().is_abelian() && ca.len() <= 20_000 {
        let ica = oracle::enumerate_ica(s).map_err(|e| e.to_string())?;
        let ica_gens = oracle::greedy_generators(&ica, s.size());
        let u: Vec<Transformation> = rank::generating_set_u(s, &lat, &table)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(t, _)| t)
            .collect();
        for skip in 0..u.len() {
            let mut gens = ica_gens.clone();
            gens.extend(u.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, t)| t.clone()));
            let closed = oracle::closure(&gens, s.size(), usize::MAX).map_err(|e| e.to_string())?;
            ensure!(
                closed.len() < ca.len(),
                "dropping generator {skip} of U still generates the monoid"
            );
        }
    }
    Ok(())
}
