//! Cellular automata as full transformations of the packed configuration
//! space: local rules, equivariance, invertibility, kernels, the named
//! constructions (shifts, orbit collapses, orbit swaps) and the weight
//! census behind the small-memory impossibility argument.

use crate::config::ConfigSpace;
use crate::error::{CaError, Result};

/// A cellular automaton (or any transformation of A^G) as a full map on
/// configuration codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    pub map: Vec<u32>,
}

/// A local rule: an ordered memory set S and a table mapping each base-q
/// pattern over S (memory order, least-significant digit first) to a symbol.
/// Memory is kept sorted ascending so the table layout is bit-exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRule {
    pub memory: Vec<usize>,
    pub table: Vec<usize>,
}

/// The kernel of a transformation: the partition of codes by equal image,
/// blocks sorted by minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPartition {
    pub blocks: Vec<Vec<usize>>,
}

/// The sum of k-weights of all non-constant configurations, together with
/// the closed form it must equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightCensus {
    pub total: u64,
    pub per_cell: u64,
    pub closed_form: u64,
    pub per_cell_divisible_by_q: bool,
}

impl LocalRule {
    pub fn new(memory: Vec<usize>, table: Vec<usize>, q: usize) -> Result<Self> {
        if memory.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CaError::MalformedRule(
                "memory elements must be strictly increasing".into(),
            ));
        }
        let expected = q.pow(memory.len() as u32);
        if table.len() != expected {
            return Err(CaError::BadTableLength { expected, got: table.len() });
        }
        if table.iter().any(|&s| s >= q) {
            return Err(CaError::MalformedRule("table symbol out of alphabet".into()));
        }
        Ok(LocalRule { memory, table })
    }

    /// Parses the local-rule document: line 1 `n q`, line 2 the memory
    /// elements, remaining lines the table symbols in pattern-code order.
    pub fn parse(text: &str) -> Result<(usize, usize, LocalRule)> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| CaError::MalformedRule("empty document".into()))?;
        let mut it = header.split_whitespace();
        let parse_int = |t: Option<&str>| -> Result<usize> {
            t.and_then(|t| t.parse().ok())
                .ok_or_else(|| CaError::MalformedRule("header must be `n q`".into()))
        };
        let n = parse_int(it.next())?;
        let q = parse_int(it.next())?;
        let memory: Vec<usize> = lines
            .next()
            .ok_or_else(|| CaError::MalformedRule("missing memory line".into()))?
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&s| s < n)
                    .ok_or_else(|| CaError::MalformedRule(format!("bad memory element `{t}`")))
            })
            .collect::<Result<_>>()?;
        let table: Vec<usize> = lines
            .flat_map(|l| l.split_whitespace())
            .map(|t| {
                t.parse()
                    .map_err(|_| CaError::MalformedRule(format!("bad table symbol `{t}`")))
            })
            .collect::<Result<_>>()?;
        Ok((n, q, LocalRule::new(memory, table, q)?))
    }

    /// Expands the rule to a full transformation: digit g of the image is
    /// the table entry for the pattern read at positions `{s . g : s in S}`.
    pub fn to_transformation(&self, space: &ConfigSpace) -> Result<Transformation> {
        let n = space.n();
        let q = space.q();
        if self.memory.iter().any(|&s| s >= n) {
            return Err(CaError::MalformedRule("memory element outside the group".into()));
        }
        let expected = q.pow(self.memory.len() as u32);
        if self.table.len() != expected {
            return Err(CaError::BadTableLength { expected, got: self.table.len() });
        }
        let group = space.group();
        let mut map = vec![0u32; space.size()];
        for (x, slot) in map.iter_mut().enumerate() {
            let mut image = 0usize;
            let mut pw = 1usize;
            for g in 0..n {
                let mut pattern = 0usize;
                let mut pq = 1usize;
                for &s in &self.memory {
                    pattern += space.digit(x, group.mul(s, g)) * pq;
                    pq *= q;
                }
                image += self.table[pattern] * pw;
                pw *= q;
            }
            *slot = image as u32;
        }
        Ok(Transformation { map })
    }
}

impl Transformation {
    pub fn identity(size: usize) -> Self {
        Transformation { map: (0..size as u32).collect() }
    }

    #[inline]
    pub fn apply(&self, code: usize) -> usize {
        self.map[code] as usize
    }

    /// Composition in application order: `self` then `other`.
    pub fn compose(&self, other: &Transformation) -> Transformation {
        Transformation {
            map: self.map.iter().map(|&y| other.map[y as usize]).collect(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        for &y in &self.map {
            if seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        true
    }

    /// Exact membership test for CA(G;A): commutes with the right action.
    pub fn is_equivariant(&self, space: &ConfigSpace) -> bool {
        for x in 0..space.size() {
            for g in 0..space.n() {
                if space.act(self.apply(x), g) != self.apply(space.act(x, g)) {
                    return false;
                }
            }
        }
        true
    }

    /// The shift by g: `x -> x . g`. Equivariant when g is central, so for
    /// every element of an abelian group.
    pub fn shift(space: &ConfigSpace, g: usize) -> Transformation {
        Transformation {
            map: (0..space.size()).map(|x| space.act(x, g) as u32).collect(),
        }
    }

    /// The idempotent `(B -> a)`: everything in B goes to a, rest fixed.
    pub fn collapse(size: usize, b: &[usize], a: usize) -> Transformation {
        let mut map: Vec<u32> = (0..size as u32).collect();
        for &x in b {
            map[x] = a as u32;
        }
        Transformation { map }
    }

    /// The full-memory local function of an equivariant transformation:
    /// `mu(x)` = digit at the identity of the image of x. Pattern codes
    /// coincide with configuration codes.
    pub fn full_local_function(&self, space: &ConfigSpace) -> Vec<usize> {
        (0..space.size()).map(|x| space.digit(self.apply(x), 0)).collect()
    }

    /// Minimal memory set as the essential-coordinate set of the full-memory
    /// local function: g is included iff two codes differing only at g give
    /// different local values.
    pub fn minimal_memory_set(&self, space: &ConfigSpace) -> Result<Vec<usize>> {
        if !self.is_equivariant(space) {
            return Err(CaError::NotEquivariant);
        }
        let mu = self.full_local_function(space);
        Ok(essential_coordinates(space, &mu))
    }

    /// Kernel partition by equal image, in canonical form.
    pub fn kernel(&self) -> KernelPartition {
        let mut by_image: std::collections::BTreeMap<u32, Vec<usize>> =
            std::collections::BTreeMap::new();
        for (x, &y) in self.map.iter().enumerate() {
            by_image.entry(y).or_default().push(x);
        }
        let mut blocks: Vec<Vec<usize>> = by_image.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        KernelPartition { blocks }
    }
}

/// Essential coordinates of a local function given as a table over full
/// pattern codes.
pub fn essential_coordinates(space: &ConfigSpace, mu: &[usize]) -> Vec<usize> {
    let q = space.q();
    let mut essential = Vec::new();
    'coords: for g in 0..space.n() {
        for x in 0..space.size() {
            if space.digit(x, g) != 0 {
                continue;
            }
            let base = mu[x];
            for v in 1..q {
                if mu[space.with_digit(x, g, v)] != base {
                    essential.push(g);
                    continue 'coords;
                }
            }
        }
    }
    essential
}

/// The idempotent `tau_{x,y}` collapsing the orbit of x onto the orbit of y
/// (everything else fixed). Exists iff `[G_x] <= [G_y]`; the witness g is
/// the minimal element with `G_x <= g^-1 G_y g`.
pub fn tau_xy(space: &ConfigSpace, x: usize, y: usize) -> Result<Transformation> {
    let group = space.group();
    let n = space.n();
    if (0..n).any(|g| space.act(x, g) == y) {
        return Err(CaError::SameOrbit);
    }
    let sx = space.stabilizer(x);
    let sy = space.stabilizer(y);
    let witness = (0..n)
        .find(|&g| {
            let conj = group.conjugate_subgroup(&sy, g);
            sx.members & !conj.members == 0
        })
        .ok_or(CaError::StabilizerNotDominated)?;
    let mut map: Vec<u32> = (0..space.size() as u32).collect();
    for h in 0..n {
        map[space.act(x, h)] = space.act(y, group.mul(witness, h)) as u32;
    }
    Ok(Transformation { map })
}

/// The involution exchanging the orbits of x and y via an equivalence of
/// actions, fixing all other codes. Exists iff `[G_x] = [G_y]`; returns the
/// identity when x and y share an orbit.
pub fn swap_orbits(space: &ConfigSpace, x: usize, y: usize) -> Result<Transformation> {
    let group = space.group();
    let n = space.n();
    if (0..n).any(|g| space.act(x, g) == y) {
        return Ok(Transformation::identity(space.size()));
    }
    let sx = space.stabilizer(x);
    let sy = space.stabilizer(y);
    let witness = (0..n)
        .find(|&c| group.conjugate_subgroup(&sy, c) == sx)
        .ok_or(CaError::ClassMismatch)?;
    let mut map: Vec<u32> = (0..space.size() as u32).collect();
    for h in 0..n {
        let a = space.act(x, h);
        let b = space.act(y, group.mul(witness, h));
        map[a] = b as u32;
        map[b] = a as u32;
    }
    Ok(Transformation { map })
}

/// Sums the k-weights `|x|_k = #{g : x(g) != k}` of all non-constant
/// configurations and compares against `n(q-1)(q^{n-1}-1)`.
pub fn weight_census(space: &ConfigSpace, k: usize) -> WeightCensus {
    let n = space.n() as u64;
    let q = space.q() as u64;
    let mut total = 0u64;
    for x in 0..space.size() {
        if space.is_constant(x) {
            continue;
        }
        total += (0..space.n()).filter(|&g| space.digit(x, g) != k).count() as u64;
    }
    let closed_form = n * (q - 1) * (q.pow(space.n() as u32 - 1) - 1);
    let per_cell = total / n;
    WeightCensus {
        total,
        per_cell,
        closed_form,
        per_cell_divisible_by_q: per_cell % q == 0,
    }
}
