//! The analysis report: one record tying together orbit structure, the
//! invertible-subgroup decomposition and the rank analysis, with stable
//! text, JSON and DOT renderings.

use crate::config::{ConfigSpace, OrbitTable, DEFAULT_SPACE_GUARD};
use crate::error::Result;
use crate::group::{FiniteGroup, SubgroupLattice};
use crate::ica;
use crate::oracle;
use crate::rank;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct OracleResults {
    pub ca_size: usize,
    pub ica_size: usize,
    pub ica_matches_formula: bool,
    /// closure(ICA u U) reaches the whole monoid (abelian instances only)
    pub generation_sufficient: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub group: String,
    pub n: usize,
    pub q: usize,
    pub abelian: bool,
    pub group_rank: usize,
    /// Set for n = 1, where the CA monoid is the full transformation monoid
    /// on the alphabet.
    pub degenerate_note: Option<String>,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
    pub alpha: Vec<usize>,
    pub class_count: usize,
    pub edge_count: usize,
    pub hasse_edge_count: usize,
    pub ca_order_expr: String,
    pub ca_order: Option<u64>,
    pub ica_structure: String,
    pub ica_order: String,
    pub relative_rank: Option<usize>,
    pub rank_upper_bound_tight: Option<usize>,
    pub rank_upper_bound_coarse: Option<usize>,
    pub alpha_one_classes: Vec<usize>,
    pub certificate_violations: Vec<String>,
    pub oracle: Option<OracleResults>,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub space_guard: usize,
    pub cap: usize,
    pub run_oracle: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            space_guard: DEFAULT_SPACE_GUARD,
            cap: oracle::DEFAULT_CAP,
            run_oracle: false,
        }
    }
}

/// Runs the full pipeline: group structure, orbits, decomposition, rank
/// analysis, and (optionally) the brute-force cross-checks.
pub fn analyze(group: FiniteGroup, q: usize, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let space = ConfigSpace::with_guard(group, q, opts.space_guard)?;
    let lattice = space.group().conjugacy_classes();
    let table = space.orbit_table(&lattice);
    build_report(&space, &lattice, &table, opts)
}

pub fn build_report(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
    opts: AnalyzeOptions,
) -> Result<AnalysisReport> {
    let group = space.group();
    let abelian = group.is_abelian();
    let decomposition = ica::ica_decomposition(space, lattice, table)?;
    let certs = rank::alpha_one_certificates(space, lattice, table);
    let mut orbit_sizes = table.orbit_size.clone();
    orbit_sizes.sort_unstable();

    let (relative_rank, tight, coarse) = if abelian {
        let m = group.rank();
        let (t, c) = rank::rank_upper_bounds(space, lattice, table, m)?;
        (Some(rank::relative_rank(space, lattice, table)?), Some(t), Some(c))
    } else {
        (None, None, None)
    };

    let ca_order = u64::try_from(space.q())
        .ok()
        .and_then(|q| q.checked_pow(u32::try_from(space.size()).ok()?));
    let oracle_results = if opts.run_oracle {
        run_oracle(space, lattice, table, &decomposition, opts.cap)?
    } else {
        None
    };

    Ok(AnalysisReport {
        group: group.name().to_string(),
        n: space.n(),
        q: space.q(),
        abelian,
        group_rank: group.rank(),
        degenerate_note: (space.n() == 1).then(|| {
            format!("n = 1: the CA monoid is the full transformation monoid on {} symbols", space.q())
        }),
        orbit_count: table.orbit_count(),
        orbit_sizes,
        alpha: table.alpha.clone(),
        class_count: lattice.class_count(),
        edge_count: lattice.edge_count(),
        hasse_edge_count: lattice.hasse_edges().len(),
        ca_order_expr: format!("{}^{}", space.q(), space.size()),
        ca_order,
        ica_structure: decomposition.structure.clone(),
        ica_order: decomposition.total_order.to_string(),
        relative_rank,
        rank_upper_bound_tight: tight,
        rank_upper_bound_coarse: coarse,
        alpha_one_classes: rank::alpha_one_classes(table),
        certificate_violations: certs.violations,
        oracle: oracle_results,
    })
}

fn run_oracle(
    space: &ConfigSpace,
    lattice: &SubgroupLattice,
    table: &OrbitTable,
    decomposition: &ica::IcaDecomposition,
    cap: usize,
) -> Result<Option<OracleResults>> {
    let ca = match oracle::enumerate_ca_capped(space, cap) {
        Ok(ca) => ca,
        Err(crate::error::CaError::SpaceTooLarge { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut ica_size = 0usize;
    let mut invertibles = Vec::new();
    for t in ca.iter() {
        if t.is_invertible() {
            ica_size += 1;
            invertibles.push(t.clone());
        }
    }
    let ica_matches_formula =
        decomposition.total_order == num_bigint::BigUint::from(ica_size as u64);
    let generation_sufficient = if space.group().is_abelian() {
        let mut gens = invertibles;
        gens.extend(
            rank::generating_set_u(space, lattice, table)?
                .into_iter()
                .map(|(t, _)| t),
        );
        let closed = oracle::closure(&gens, space.size(), cap)?;
        Some(closed.len() == ca.len())
    } else {
        None
    };
    Ok(Some(OracleResults {
        ca_size: ca.len(),
        ica_size,
        ica_matches_formula,
        generation_sufficient,
    }))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group: {} (n = {}, abelian: {}, rank {})", self.group, self.n, self.abelian, self.group_rank);
        let _ = writeln!(s, "alphabet: q = {}", self.q);
        if let Some(note) = &self.degenerate_note {
            let _ = writeln!(s, "note: {note}");
        }
        let _ = writeln!(
            s,
            "orbits: {} with sizes {:?}",
            self.orbit_count, self.orbit_sizes
        );
        let _ = writeln!(s, "alpha: {:?}", self.alpha);
        let _ = writeln!(
            s,
            "subgroup classes: {} (edge set size {}, hasse edges {})",
            self.class_count, self.edge_count, self.hasse_edge_count
        );
        match self.ca_order {
            Some(v) => {
                let _ = writeln!(s, "|CA| = {} = {}", self.ca_order_expr, v);
            }
            None => {
                let _ = writeln!(s, "|CA| = {}", self.ca_order_expr);
            }
        }
        let _ = writeln!(s, "ICA structure: {}", self.ica_structure);
        let _ = writeln!(s, "|ICA| = {}", self.ica_order);
        match self.relative_rank {
            Some(r) => {
                let _ = writeln!(s, "relative rank of ICA in CA: {r}");
                let _ = writeln!(
                    s,
                    "rank upper bounds: tight {}, coarse {}",
                    self.rank_upper_bound_tight.unwrap(),
                    self.rank_upper_bound_coarse.unwrap()
                );
            }
            None => {
                let _ = writeln!(s, "relative rank: not computed (nonabelian group)");
            }
        }
        let _ = writeln!(s, "classes with alpha = 1 (beyond the first): {:?}", self.alpha_one_classes);
        if self.certificate_violations.is_empty() {
            let _ = writeln!(s, "certificates: ok");
        } else {
            for v in &self.certificate_violations {
                let _ = writeln!(s, "certificate violation: {v}");
            }
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "oracle: |CA| = {}, |ICA| = {}", o.ca_size, o.ica_size);
            let _ = writeln!(
                s,
                "oracle: ICA order matches formula: {}",
                o.ica_matches_formula
            );
            if let Some(ok) = o.generation_sufficient {
                let _ = writeln!(s, "oracle: <ICA u U> = CA: {ok}");
            }
        }
        s
    }
}

/// Plain-text lattice listing: classes, full edge count and Hasse edges.
pub fn lattice_text(group: &FiniteGroup, lattice: &SubgroupLattice) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group: {} (order {})", group.name(), group.order());
    let _ = writeln!(s, "conjugacy classes of subgroups: {}", lattice.class_count());
    for (i, c) in lattice.classes.iter().enumerate() {
        let _ = writeln!(
            s,
            "  class {i}: representative order {}, index {}, {} member(s)",
            c.rep.order,
            group.order() / c.rep.order as usize,
            c.members.len()
        );
    }
    let _ = writeln!(s, "edge set size (loops included): {}", lattice.edge_count());
    let hasse = lattice.hasse_edges();
    let _ = writeln!(s, "hasse edges: {}", hasse.len());
    for (i, j) in hasse {
        let _ = writeln!(s, "  class {i} < class {j}");
    }
    s
}

/// DOT digraph of the Hasse diagram. Loops are omitted from the drawing but
/// always counted in `edge_count`.
pub fn lattice_dot(group: &FiniteGroup, lattice: &SubgroupLattice) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph lattice {{");
    let _ = writeln!(s, "  rankdir=BT;");
    let _ = writeln!(s, "  label=\"{} ({} classes, |E| = {})\";", group.name(), lattice.class_count(), lattice.edge_count());
    for (i, c) in lattice.classes.iter().enumerate() {
        let _ = writeln!(s, "  c{i} [label=\"[H{i}] order {}\"];", c.rep.order);
    }
    for (i, j) in lattice.hasse_edges() {
        let _ = writeln!(s, "  c{i} -> c{j};");
    }
    let _ = writeln!(s, "}}");
    s
}
