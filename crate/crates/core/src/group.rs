//! Concrete finite groups: Cayley tables, subgroups, conjugacy classes of
//! subgroups and the partial order between them.
//!
//! Elements are plain indices `0..n` with `0` always the identity. Subgroups
//! are bitsets over element indices, so everything here stays allocation-light
//! for the orders this crate targets (`n <= 16` by default).

use crate::error::{CaError, Result};
use serde::Serialize;

/// Default guard on group order. Subgroup enumeration and the configuration
/// space both blow up quickly past this.
pub const MAX_GROUP_ORDER: usize = 16;

/// A finite group given by its Cayley table. Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    cayley: Vec<u8>,
    inv: Vec<u8>,
    name: String,
}

/// A subgroup as a bitset over element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subgroup {
    pub members: u64,
    pub order: u32,
}

impl Subgroup {
    pub fn contains(&self, g: usize) -> bool {
        self.members >> g & 1 == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let m = self.members;
        (0..64).filter(move |&i| m >> i & 1 == 1)
    }

    fn from_members(members: u64) -> Self {
        Subgroup { members, order: members.count_ones() }
    }
}

/// A conjugacy class of subgroups. `rep` is the member with minimal bitset
/// value; `members` is sorted ascending.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub rep: Subgroup,
    pub members: Vec<Subgroup>,
}

/// Conjugacy classes of subgroups with the order `[H1] <= [H2]` iff
/// `H1 <= g^-1 H2 g` for some g. Classes are listed with the class of G
/// first, then by descending representative order, ties broken by ascending
/// bitset. `edges` contains every ordered pair `(i, j)` with
/// `classes[i] <= classes[j]`, loops included.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub classes: Vec<ConjClass>,
    pub leq: Vec<Vec<bool>>,
    pub edges: Vec<(usize, usize)>,
}

impl FiniteGroup {
    /// Builds a group from a raw Cayley table, validating the group axioms.
    /// If the identity is not element 0 the table is re-indexed so it is.
    pub fn from_cayley(table: Vec<Vec<usize>>, name: &str) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(CaError::NotAGroup("empty table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(CaError::SpaceTooLarge {
                needed: n as u128,
                guard: MAX_GROUP_ORDER as u128,
            });
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(CaError::NotAGroup(format!("row {g} has length {}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(CaError::NotAGroup(format!("entry {v} out of range in row {g}")));
                }
            }
        }
        // Locate the identity, then re-index so it sits at 0.
        let id = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| CaError::NotAGroup("no two-sided identity".into()))?;
        let table: Vec<Vec<usize>> = if id == 0 {
            table
        } else {
            // Swap labels 0 <-> id.
            let relabel = |v: usize| {
                if v == 0 {
                    id
                } else if v == id {
                    0
                } else {
                    v
                }
            };
            let mut t = vec![vec![0usize; n]; n];
            for g in 0..n {
                for h in 0..n {
                    t[relabel(g)][relabel(h)] = relabel(table[g][h]);
                }
            }
            t
        };

        // Latin square check.
        for g in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for h in 0..n {
                row[table[g][h]] = true;
                col[table[h][g]] = true;
            }
            if row.iter().any(|&b| !b) || col.iter().any(|&b| !b) {
                return Err(CaError::NotAGroup(format!(
                    "row or column {g} is not a permutation"
                )));
            }
        }
        // Associativity, reporting the first failing triple.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(CaError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        // Inverses.
        let mut inv = vec![0u8; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == 0 && table[h][g] == 0) {
                Some(h) => inv[g] = h as u8,
                None => return Err(CaError::NotAGroup(format!("element {g} has no inverse"))),
            }
        }
        let cayley = table
            .into_iter()
            .flat_map(|row| row.into_iter().map(|v| v as u8))
            .collect();
        Ok(FiniteGroup { n, cayley, inv, name: name.to_string() })
    }

    /// Parses the group-spec grammar `family ("x" family)*` with
    /// `family = "cyclic:" int`. Direct products use lexicographic component
    /// encoding (first component most significant).
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(CaError::MalformedSpec("empty spec".into()));
        }
        let mut orders = Vec::new();
        for part in spec.split('x') {
            let part = part.trim();
            let rest = part
                .strip_prefix("cyclic:")
                .ok_or_else(|| CaError::MalformedSpec(format!("unknown family `{part}`")))?;
            let k: usize = rest
                .parse()
                .map_err(|_| CaError::MalformedSpec(format!("bad order `{rest}`")))?;
            if k == 0 {
                return Err(CaError::MalformedSpec("cyclic:0 is not a group".into()));
            }
            orders.push(k);
        }
        let n: usize = orders.iter().product();
        if n > MAX_GROUP_ORDER {
            return Err(CaError::SpaceTooLarge {
                needed: n as u128,
                guard: MAX_GROUP_ORDER as u128,
            });
        }
        // Element index = mixed-radix number over the component values,
        // first component most significant.
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut comps = vec![0usize; orders.len()];
            for (i, &k) in orders.iter().enumerate().rev() {
                comps[i] = idx % k;
                idx /= k;
            }
            comps
        };
        let encode = |comps: &[usize]| -> usize {
            comps
                .iter()
                .zip(&orders)
                .fold(0usize, |acc, (&c, &k)| acc * k + c)
        };
        let mut table = vec![vec![0usize; n]; n];
        for g in 0..n {
            for h in 0..n {
                let (a, b) = (decode(g), decode(h));
                let sum: Vec<usize> = a
                    .iter()
                    .zip(&b)
                    .zip(&orders)
                    .map(|((&x, &y), &k)| (x + y) % k)
                    .collect();
                table[g][h] = encode(&sum);
            }
        }
        Self::from_cayley(table, spec)
    }

    /// Parses the Cayley-table document format: line 1 = n, then n rows of n
    /// indices; `#` lines are comments.
    pub fn from_table_document(text: &str, name: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| CaError::MalformedSpec("empty table document".into()))?
            .parse()
            .map_err(|_| CaError::MalformedSpec("first line must be the group order".into()))?;
        let mut table = Vec::with_capacity(n);
        for _ in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| CaError::MalformedSpec("too few table rows".into()))?;
            let row: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| CaError::MalformedSpec(format!("bad table entry `{t}`")))
                })
                .collect::<Result<_>>()?;
            table.push(row);
        }
        Self::from_cayley(table, name)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub const IDENTITY: usize = 0;

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.cayley[g * self.n + h] as usize
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|g| (0..self.n).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut cur = g;
        while cur != 0 {
            cur = self.mul(cur, g);
            k += 1;
        }
        k
    }

    /// Closure of a set of generators (given as a bitset) under the product.
    /// In a finite group this also closes under inverses.
    pub fn subgroup_closure(&self, generators: u64) -> Subgroup {
        let mut members: u64 = 1; // identity
        let mut elems: Vec<usize> = vec![0];
        for g in 0..self.n {
            if generators >> g & 1 == 1 && members >> g & 1 == 0 {
                members |= 1 << g;
                elems.push(g);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let mut j = 0;
            while j < elems.len() {
                for p in [self.mul(elems[i], elems[j]), self.mul(elems[j], elems[i])] {
                    if members >> p & 1 == 0 {
                        members |= 1 << p;
                        elems.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        Subgroup::from_members(members)
    }

    /// All subgroups, each once, sorted by (order, bitset value). Uses a
    /// breadth-first closure over generated subgroups instead of scanning all
    /// subsets.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found = std::collections::BTreeSet::new();
        found.insert(1u64); // trivial subgroup
        let mut frontier: Vec<u64> = vec![1];
        // Seed with all cyclic subgroups.
        for g in 1..self.n {
            let h = self.subgroup_closure(1 << g);
            if found.insert(h.members) {
                frontier.push(h.members);
            }
        }
        while let Some(h) = frontier.pop() {
            for g in 1..self.n {
                if h >> g & 1 == 1 {
                    continue;
                }
                let joined = self.subgroup_closure(h | (1 << g));
                if found.insert(joined.members) {
                    frontier.push(joined.members);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(Subgroup::from_members).collect();
        subs.sort_by_key(|s| (s.order, s.members));
        subs
    }

    /// Conjugate `g^-1 H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let gi = self.inverse(g);
        let mut members = 0u64;
        for s in h.elements() {
            members |= 1 << self.mul(self.mul(gi, s), g);
        }
        Subgroup::from_members(members)
    }

    /// Normalizer of H in G.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut members = 0u64;
        for g in 0..self.n {
            if self.conjugate_subgroup(h, g) == *h {
                members |= 1 << g;
            }
        }
        Subgroup::from_members(members)
    }

    /// Conjugacy classes of subgroups with the partial order and full edge
    /// set, classes ordered with the class of G first.
    pub fn conjugacy_classes(&self) -> SubgroupLattice {
        let subs = self.subgroups();
        let mut class_of: std::collections::BTreeMap<u64, u64> = std::collections::BTreeMap::new();
        for s in &subs {
            let canon = (0..self.n)
                .map(|g| self.conjugate_subgroup(s, g).members)
                .min()
                .unwrap();
            class_of.insert(s.members, canon);
        }
        let mut classes: Vec<ConjClass> = Vec::new();
        let mut canon_seen: Vec<u64> = Vec::new();
        for s in &subs {
            let canon = class_of[&s.members];
            if !canon_seen.contains(&canon) {
                canon_seen.push(canon);
                let mut members: Vec<Subgroup> = subs
                    .iter()
                    .filter(|t| class_of[&t.members] == canon)
                    .copied()
                    .collect();
                members.sort();
                classes.push(ConjClass { rep: Subgroup::from_members(canon), members });
            }
        }
        // Class of G first, then descending representative order, ascending
        // bitset; G has maximal order so one sort key covers it.
        classes.sort_by(|a, b| {
            b.rep
                .order
                .cmp(&a.rep.order)
                .then(a.rep.members.cmp(&b.rep.members))
        });
        let r = classes.len();
        let mut leq = vec![vec![false; r]; r];
        for i in 0..r {
            for j in 0..r {
                // [Hi] <= [Hj] iff Hi is contained in some conjugate of Hj.
                leq[i][j] = (0..self.n).any(|g| {
                    let c = self.conjugate_subgroup(&classes[j].rep, g).members;
                    classes[i].rep.members & !c == 0
                });
            }
        }
        let mut edges = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if leq[i][j] {
                    edges.push((i, j));
                }
            }
        }
        SubgroupLattice { classes, leq, edges }
    }

    /// Size of a smallest generating set, by increasing-size subset search.
    /// Every strictly ascending subgroup chain doubles at each step, so
    /// log2(n) generators always suffice.
    pub fn rank(&self) -> usize {
        if self.n == 1 {
            return 0;
        }
        let max_k = (usize::BITS - 1 - self.n.leading_zeros()) as usize; // floor(log2 n)
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        for k in 1..=max_k {
            if subsets_generate(self, full, k) {
                return k;
            }
        }
        unreachable!("every finite group of order n is generated by log2(n) elements")
    }
}

fn subsets_generate(g: &FiniteGroup, full: u64, k: usize) -> bool {
    fn rec(g: &FiniteGroup, full: u64, chosen: u64, start: usize, k: usize) -> bool {
        if k == 0 {
            return g.subgroup_closure(chosen).members == full;
        }
        for e in start..g.order() {
            if rec(g, full, chosen | (1 << e), e + 1, k - 1) {
                return true;
            }
        }
        false
    }
    rec(g, full, 0, 1, k)
}

impl SubgroupLattice {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of the class containing the given subgroup.
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.members.iter().any(|m| m == h))
    }

    /// Covering (Hasse) edges: strict relations with no class in between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let r = self.classes.len();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let covered = (0..r)
                    .any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !covered {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
