//! The configuration space A^G: base-q packed configurations, the right
//! G-action, orbits, stabilizers, blocks and multiplicities.
//!
//! A configuration x: G -> A is packed as an integer in `[0, q^n)` whose
//! base-q digit i (least-significant first) is the value of x at group
//! element i. Every module shares this encoding.

use crate::error::{CaError, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};

/// Default guard on `q^n`; transformation storage is an array of `q^n` codes.
pub const DEFAULT_SPACE_GUARD: usize = 65_536;

/// A finite alphabet identified with `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    pub q: usize,
}

/// A group together with an alphabet and precomputed digit arithmetic for
/// the packed configuration encoding.
#[derive(Debug, Clone)]
pub struct ConfigSpace {
    group: FiniteGroup,
    q: usize,
    pow: Vec<usize>,
    size: usize,
}

/// Per-code orbit data over the whole configuration space.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    /// code -> orbit index
    pub orbit_id: Vec<u32>,
    /// minimal code of each orbit
    pub reps: Vec<usize>,
    /// stabilizer of the representative
    pub stab: Vec<Subgroup>,
    pub orbit_size: Vec<usize>,
    /// orbit -> index of the conjugacy class of its stabilizer
    pub block_of: Vec<usize>,
    /// per conjugacy class (in lattice order), number of orbits in its block
    pub alpha: Vec<usize>,
}

impl ConfigSpace {
    pub fn new(group: FiniteGroup, q: usize) -> Result<Self> {
        Self::with_guard(group, q, DEFAULT_SPACE_GUARD)
    }

    pub fn with_guard(group: FiniteGroup, q: usize, guard: usize) -> Result<Self> {
        if q < 1 {
            return Err(CaError::MalformedSpec("alphabet must have q >= 1".into()));
        }
        let n = group.order();
        let mut size: u128 = 1;
        for _ in 0..n {
            size *= q as u128;
            if size > guard as u128 {
                return Err(CaError::SpaceTooLarge { needed: size, guard: guard as u128 });
            }
        }
        let size = size as usize;
        let mut pow = Vec::with_capacity(n + 1);
        let mut p = 1usize;
        for _ in 0..=n {
            pow.push(p);
            p = p.saturating_mul(q);
        }
        Ok(ConfigSpace { group, q, pow, size })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.group.order()
    }

    /// `q^n`, the number of configurations.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn digit(&self, code: usize, i: usize) -> usize {
        code / self.pow[i] % self.q
    }

    #[inline]
    pub fn with_digit(&self, code: usize, i: usize, v: usize) -> usize {
        code - self.digit(code, i) * self.pow[i] + v * self.pow[i]
    }

    /// The right action: digit h of `x . g` is digit `h g^-1` of x.
    pub fn act(&self, code: usize, g: usize) -> usize {
        let gi = self.group.inverse(g);
        let mut out = 0;
        for h in 0..self.n() {
            out += self.digit(code, self.group.mul(h, gi)) * self.pow[h];
        }
        out
    }

    /// The constant configuration with value k everywhere.
    pub fn constant(&self, k: usize) -> usize {
        debug_assert!(k < self.q);
        k * (self.size - 1) / (self.q - 1).max(1)
    }

    pub fn is_constant(&self, code: usize) -> bool {
        let k = code % self.q;
        (1..self.n()).all(|i| self.digit(code, i) == k)
    }

    /// Stabilizer `G_x = { g : x . g = x }`.
    pub fn stabilizer(&self, code: usize) -> Subgroup {
        let mut members = 0u64;
        for g in 0..self.n() {
            if self.act(code, g) == code {
                members |= 1 << g;
            }
        }
        Subgroup { members, order: members.count_ones() }
    }

    /// Number of configurations fixed by every element of H: `q^[G:H]`,
    /// one free symbol per left coset of H.
    pub fn fix_count(&self, h: &Subgroup) -> u64 {
        (self.q as u64).pow((self.n() / h.order as usize) as u32)
    }

    /// All configurations fixed pointwise by H, in increasing code order.
    pub fn fixed_codes(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| h.elements().all(|g| self.act(x, g) == x))
            .collect()
    }

    /// Renders a code as a base-q digit string, element 0 leftmost.
    pub fn render(&self, code: usize) -> String {
        (0..self.n()).map(|i| self.digit(code, i).to_string()).collect()
    }

    /// Full orbit table; the alpha vector is indexed by the lattice's class
    /// order.
    pub fn orbit_table(&self, lattice: &SubgroupLattice) -> OrbitTable {
        let size = self.size;
        let mut orbit_id = vec![u32::MAX; size];
        let mut reps = Vec::new();
        let mut stab = Vec::new();
        let mut orbit_size = Vec::new();
        let mut block_of = Vec::new();
        let mut alpha = vec![0usize; lattice.class_count()];
        for x in 0..size {
            if orbit_id[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            let mut members = Vec::new();
            for g in 0..self.n() {
                let y = self.act(x, g);
                if orbit_id[y] != id {
                    orbit_id[y] = id;
                    members.push(y);
                }
            }
            let s = self.stabilizer(x);
            let class = lattice
                .class_of(&s)
                .expect("stabilizer is a subgroup, so it lies in some class");
            reps.push(x);
            stab.push(s);
            orbit_size.push(members.len());
            block_of.push(class);
            alpha[class] += 1;
        }
        OrbitTable { orbit_id, reps, stab, orbit_size, block_of, alpha }
    }
}

impl OrbitTable {
    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    /// Codes of one orbit, ascending.
    pub fn orbit_codes(&self, orbit: usize) -> Vec<usize> {
        (0..self.orbit_id.len())
            .filter(|&x| self.orbit_id[x] == orbit as u32)
            .collect()
    }

    /// Orbits of one block (conjugacy class), ascending by representative.
    pub fn block_orbits(&self, class: usize) -> Vec<usize> {
        (0..self.orbit_count()).filter(|&o| self.block_of[o] == class).collect()
    }
}
