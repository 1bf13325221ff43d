//! Ground truth by brute force: enumerate all equivariant transformations
//! and the invertible ones among them, compute submonoid closures, and
//! search exact relative ranks exhaustively on tiny instances.

use crate::ca::Transformation;
use crate::config::ConfigSpace;
use crate::error::{CaError, Result};
use rayon::prelude::*;
use std::collections::HashMap;

/// Default cap on both enumeration counts and closure sizes.
pub const DEFAULT_CAP: usize = 1 << 20;

/// A deduplicated set of transformations keyed by their map arrays,
/// remembering insertion order so reports stay deterministic.
#[derive(Debug, Clone, Default)]
pub struct MonoidSet {
    elements: Vec<Transformation>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonoidSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, t: Transformation) -> bool {
        if self.index.contains_key(&t.map) {
            return false;
        }
        self.index.insert(t.map.clone(), self.elements.len());
        self.elements.push(t);
        true
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.index.contains_key(&t.map)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Transformation> {
        self.elements.iter()
    }

    pub fn get(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }
}

/// `q^e` if it stays within `cap`, else None.
fn checked_pow_capped(q: usize, e: usize, cap: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..e {
        acc = acc.checked_mul(q)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// All equivariant transformations, built by assigning every orbit
/// representative an image fixed by its stabilizer and extending along the
/// action. The result has exactly `q^(q^n)` elements.
pub fn enumerate_ca(space: &ConfigSpace) -> Result<MonoidSet> {
    enumerate_ca_capped(space, DEFAULT_CAP)
}

pub fn enumerate_ca_capped(space: &ConfigSpace, cap: usize) -> Result<MonoidSet> {
    let total = checked_pow_capped(space.q(), space.size(), cap).ok_or(CaError::SpaceTooLarge {
        needed: u128::MAX,
        guard: cap as u128,
    })?;
    let lattice = space.group().conjugacy_classes();
    let table = space.orbit_table(&lattice);
    let n_orbits = table.orbit_count();
    // For each orbit: the admissible images of its representative, and a
    // transversal (code, g) with code = rep . g covering the orbit once.
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(n_orbits);
    let mut transversal: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n_orbits);
    for o in 0..n_orbits {
        choices.push(space.fixed_codes(&table.stab[o]));
        let rep = table.reps[o];
        let mut seen = vec![false; space.size()];
        let mut tr = Vec::new();
        for g in 0..space.n() {
            let c = space.act(rep, g);
            if !seen[c] {
                seen[c] = true;
                tr.push((c, g));
            }
        }
        transversal.push(tr);
    }
    let mut set = MonoidSet::new();
    let mut assignment = vec![0usize; n_orbits];
    loop {
        let mut map = vec![0u32; space.size()];
        for o in 0..n_orbits {
            let image = choices[o][assignment[o]];
            for &(code, g) in &transversal[o] {
                map[code] = space.act(image, g) as u32;
            }
        }
        set.insert(Transformation { map });
        // Mixed-radix increment.
        let mut o = 0;
        loop {
            if o == n_orbits {
                debug_assert_eq!(set.len(), total);
                return Ok(set);
            }
            assignment[o] += 1;
            if assignment[o] < choices[o].len() {
                break;
            }
            assignment[o] = 0;
            o += 1;
        }
    }
}

/// The bijective members of `enumerate_ca`.
pub fn enumerate_ica(space: &ConfigSpace) -> Result<MonoidSet> {
    enumerate_ica_capped(space, DEFAULT_CAP)
}

pub fn enumerate_ica_capped(space: &ConfigSpace, cap: usize) -> Result<MonoidSet> {
    let ca = enumerate_ca_capped(space, cap)?;
    let mut out = MonoidSet::new();
    for t in ca.iter() {
        if t.is_invertible() {
            out.insert(t.clone());
        }
    }
    Ok(out)
}

/// Breadth-first closure under composition, starting from the generators
/// plus the identity. Every word in the generators is reachable by
/// extending shorter words on the right, so each frontier round composes
/// frontier x generators only. Deterministic regardless of thread count:
/// products are collected in frontier-major order before merging.
pub fn closure(generators: &[Transformation], size: usize, cap: usize) -> Result<MonoidSet> {
    let mut set = MonoidSet::new();
    set.insert(Transformation::identity(size));
    let mut gens: Vec<Transformation> = Vec::new();
    for g in generators {
        assert_eq!(g.map.len(), size, "generators must share one configuration space");
        if !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    for g in &gens {
        set.insert(g.clone());
    }
    if set.len() > cap {
        return Err(CaError::CapExceeded { cap });
    }
    let mut frontier: Vec<usize> = (0..set.len()).collect();
    while !frontier.is_empty() {
        let products: Vec<Transformation> = {
            let set = &set;
            if frontier.len() * gens.len() >= 4096 {
                frontier
                    .par_iter()
                    .flat_map_iter(|&fi| gens.iter().map(move |g| set.get(fi).compose(g)))
                    .collect()
            } else {
                frontier
                    .iter()
                    .flat_map(|&fi| gens.iter().map(move |g| set.get(fi).compose(g)))
                    .collect()
            }
        };
        let mut next = Vec::new();
        for p in products {
            let idx = set.len();
            if set.insert(p) {
                if set.len() > cap {
                    return Err(CaError::CapExceeded { cap });
                }
                next.push(idx);
            }
        }
        frontier = next;
    }
    Ok(set)
}

/// A small generating set of a finite group of transformations, found
/// greedily: keep any element not yet generated.
pub fn greedy_generators(group: &MonoidSet, size: usize) -> Vec<Transformation> {
    let mut gens: Vec<Transformation> = Vec::new();
    let mut generated = closure(&gens, size, usize::MAX).expect("uncapped");
    for t in group.iter() {
        if !generated.contains(t) {
            gens.push(t.clone());
            generated = closure(&gens, size, usize::MAX).expect("uncapped");
        }
    }
    gens
}

/// Double cosets `ICA v ICA`, each reduced to its lexicographically least
/// member. Replacing a candidate by anything in its double coset leaves the
/// generated monoid unchanged, so one representative per coset suffices.
fn double_coset_reps(
    candidates: &[&Transformation],
    ica_gens: &[Transformation],
) -> Vec<Transformation> {
    let mut assigned: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut reps = Vec::new();
    for v in candidates {
        if assigned.contains_key(&v.map) {
            continue;
        }
        let coset_id = reps.len();
        let mut frontier = vec![(*v).clone()];
        assigned.insert(v.map.clone(), coset_id);
        let mut min = (*v).clone();
        while let Some(w) = frontier.pop() {
            for g in ica_gens {
                for p in [w.compose(g), g.compose(&w)] {
                    if !assigned.contains_key(&p.map) {
                        assigned.insert(p.map.clone(), coset_id);
                        if p.map < min.map {
                            min = p.clone();
                        }
                        frontier.push(p);
                    }
                }
            }
        }
        reps.push(min);
    }
    reps.sort();
    reps
}

/// Exhaustive relative rank: the smallest k such that some k-subset V of
/// CA(G;A) satisfies `<ICA u V> = CA`. Candidates are the non-invertible
/// elements; with `prune` they are reduced to double-coset representatives.
/// `cap` bounds the number of closure evaluations.
pub fn exhaustive_relative_rank(space: &ConfigSpace, cap: usize, prune: bool) -> Result<usize> {
    let ca = enumerate_ca(space)?;
    let ica = enumerate_ica(space)?;
    let size = space.size();
    let ica_gens = greedy_generators(&ica, size);
    if closure(&ica_gens, size, usize::MAX)?.len() == ca.len() {
        return Ok(0);
    }
    let non_invertible: Vec<&Transformation> =
        ca.iter().filter(|t| !ica.contains(t)).collect();
    let candidates: Vec<Transformation> = if prune {
        double_coset_reps(&non_invertible, &ica_gens)
    } else {
        non_invertible.into_iter().cloned().collect()
    };
    let mut evals = 0usize;
    for k in 1..=candidates.len() {
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        if try_subsets(
            &candidates, &ica_gens, ca.len(), size, k, 0, &mut chosen, &mut evals, cap,
        )? {
            return Ok(k);
        }
    }
    unreachable!("the full candidate set always generates")
}

#[allow(clippy::too_many_arguments)]
fn try_subsets(
    candidates: &[Transformation],
    ica_gens: &[Transformation],
    target: usize,
    size: usize,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    evals: &mut usize,
    cap: usize,
) -> Result<bool> {
    if k == 0 {
        *evals += 1;
        if *evals > cap {
            return Err(CaError::CapExceeded { cap });
        }
        let mut gens: Vec<Transformation> = ica_gens.to_vec();
        gens.extend(chosen.iter().map(|&i| candidates[i].clone()));
        return Ok(closure(&gens, size, usize::MAX)?.len() == target);
    }
    for i in start..candidates.len() {
        chosen.push(i);
        if try_subsets(candidates, ica_gens, target, size, k - 1, i + 1, chosen, evals, cap)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
