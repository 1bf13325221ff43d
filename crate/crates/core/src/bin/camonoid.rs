//! Command-line front end: structural analysis reports, lattice exports,
//! closure runs and the per-instance verification suite.

use camonoid::{
    ca::{LocalRule, Transformation},
    config::ConfigSpace,
    error::CaError,
    group::FiniteGroup,
    ica, oracle, rank,
    report::{self, AnalyzeOptions},
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "camonoid", version, about = "Structure of finite cellular automaton monoids")]
struct Cli {
    /// Emit JSON instead of text where supported
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumeration counts and closure sizes
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_CAP)]
    cap: usize,
    /// Worker threads for closure expansion (results are identical for any
    /// thread count)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full structural analysis of CA(G;A)
    Analyze {
        /// Group spec (`cyclic:n` joined by `x`) or `@file` for a Cayley table
        group: String,
        /// Alphabet size
        q: usize,
        /// Also run the brute-force oracle cross-checks (in-guard instances)
        #[arg(long)]
        oracle: bool,
    },
    /// Run the verification suite on one instance; exit 0 iff all checks pass
    Verify {
        group: String,
        q: usize,
    },
    /// List conjugacy classes of subgroups and the order between them
    Lattice {
        group: String,
        /// Emit a DOT digraph of the Hasse diagram
        #[arg(long)]
        dot: bool,
    },
    /// Closure of the CA defined by local-rule files, under composition
    Closure {
        group: String,
        q: usize,
        /// Local-rule documents (line 1 `n q`, line 2 memory, then the table)
        rules: Vec<String>,
        /// Dump every element of the closure, one map array per line
        #[arg(long)]
        dump: bool,
    },
    /// Minimal memory set of the CA defined by a local-rule file
    Memoryset {
        group: String,
        rule: String,
    },
}

fn load_group(arg: &str) -> Result<FiniteGroup, CaError> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CaError::MalformedSpec(format!("cannot read {path}: {e}")))?;
        FiniteGroup::from_table_document(&text, path)
    } else {
        FiniteGroup::from_spec(arg)
    }
}

fn load_rule(space: &ConfigSpace, path: &str) -> Result<Transformation, CaError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CaError::MalformedRule(format!("cannot read {path}: {e}")))?;
    let (n, q, rule) = LocalRule::parse(&text)?;
    if n != space.n() || q != space.q() {
        return Err(CaError::MalformedRule(format!(
            "{path} is for n = {n}, q = {q}; expected n = {}, q = {}",
            space.n(),
            space.q()
        )));
    }
    rule.to_transformation(space)
}

fn main() {
    // Die quietly when output is piped into a closed reader (e.g. `| head`).
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if cli.threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool initializes once");
    }
    match run(cli) {
        Ok(all_passed) => std::process::exit(if all_passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<bool, CaError> {
    match cli.command {
        Command::Analyze { group, q, oracle: run_oracle } => {
            let g = load_group(&group)?;
            let opts = AnalyzeOptions { cap: cli.cap, run_oracle, ..Default::default() };
            let r = report::analyze(g, q, opts)?;
            if !r.certificate_violations.is_empty() {
                eprintln!("internal invariant violation: {:?}", r.certificate_violations);
                std::process::exit(3);
            }
            if cli.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.to_text());
            }
            Ok(true)
        }
        Command::Verify { group, q } => {
            let g = load_group(&group)?;
            Ok(verify(g, q, cli.cap)?)
        }
        Command::Lattice { group, dot } => {
            let g = load_group(&group)?;
            let lat = g.conjugacy_classes();
            if dot {
                print!("{}", report::lattice_dot(&g, &lat));
            } else {
                print!("{}", report::lattice_text(&g, &lat));
            }
            Ok(true)
        }
        Command::Closure { group, q, rules, dump } => {
            let g = load_group(&group)?;
            let space = ConfigSpace::new(g, q)?;
            let gens: Vec<Transformation> = rules
                .iter()
                .map(|path| load_rule(&space, path))
                .collect::<Result<_, _>>()?;
            let closed = oracle::closure(&gens, space.size(), cli.cap)?;
            println!("generators: {}", gens.len());
            println!("closure size: {}", closed.len());
            if dump {
                for t in closed.iter() {
                    let line: Vec<String> = t.map.iter().map(|v| v.to_string()).collect();
                    println!("{}", line.join(" "));
                }
            }
            Ok(true)
        }
        Command::Memoryset { group, rule } => {
            let g = load_group(&group)?;
            let text = std::fs::read_to_string(&rule)
                .map_err(|e| CaError::MalformedRule(format!("cannot read {rule}: {e}")))?;
            let (n, q, parsed) = LocalRule::parse(&text)?;
            if n != g.order() {
                return Err(CaError::MalformedRule(format!(
                    "rule is for n = {n}, group has order {}",
                    g.order()
                )));
            }
            let space = ConfigSpace::new(g, q)?;
            let t = parsed.to_transformation(&space)?;
            let s = t.minimal_memory_set(&space)?;
            println!("declared memory: {:?}", parsed.memory);
            println!("minimal memory set: {s:?}");
            Ok(true)
        }
    }
}

enum Check {
    Pass,
    Fail(String),
    Skip(String),
}

fn verify(group: FiniteGroup, q: usize, cap: usize) -> Result<bool, CaError> {
    let space = ConfigSpace::new(group, q)?;
    let lattice = space.group().conjugacy_classes();
    let table = space.orbit_table(&lattice);
    let abelian = space.group().is_abelian();
    let mut all = true;

    let mut report = |name: &str, check: Check| match check {
        Check::Pass => println!("PASS {name}"),
        Check::Fail(why) => {
            all = false;
            println!("FAIL {name}: {why}");
        }
        Check::Skip(why) => println!("SKIP {name}: {why}"),
    };

    // Orbit-stabilizer and partition.
    let partition_ok = {
        let total: usize = table.orbit_size.iter().sum();
        let os = (0..table.orbit_count())
            .all(|o| table.orbit_size[o] * table.stab[o].order as usize == space.n());
        total == space.size() && os && table.alpha[0] == q
    };
    report(
        "orbit partition and orbit-stabilizer identity",
        if partition_ok { Check::Pass } else { Check::Fail("orbit bookkeeping broken".into()) },
    );

    // Weight census.
    if space.n() >= 2 {
        let c = camonoid::weight_census(&space, 0);
        let ok = c.total == c.closed_form && !c.per_cell_divisible_by_q;
        report(
            "weight census matches n(q-1)(q^(n-1)-1)",
            if ok { Check::Pass } else { Check::Fail(format!("{c:?}")) },
        );
    } else {
        report("weight census matches n(q-1)(q^(n-1)-1)", Check::Skip("needs n >= 2".into()));
    }

    // Alpha = 1 certificates.
    let certs = rank::alpha_one_certificates(&space, &lattice, &table);
    report(
        "index-2 and divisibility certificates",
        if certs.violations.is_empty() {
            Check::Pass
        } else {
            Check::Fail(certs.violations.join("; "))
        },
    );

    // Enumeration-based checks.
    match oracle::enumerate_ca_capped(&space, cap) {
        Err(CaError::SpaceTooLarge { .. }) => {
            report("cardinality |CA| = q^(q^n)", Check::Skip("enumeration guard".into()));
            report("ICA order matches wreath formula", Check::Skip("enumeration guard".into()));
            report("<ICA u U> = CA", Check::Skip("enumeration guard".into()));
        }
        Err(e) => return Err(e),
        Ok(ca) => {
            let expected: Option<usize> = {
                let mut acc: usize = 1;
                let mut ok = true;
                for _ in 0..space.size() {
                    match acc.checked_mul(q) {
                        Some(v) => acc = v,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                ok.then_some(acc)
            };
            let prod: u64 = (0..table.orbit_count())
                .map(|o| space.fix_count(&table.stab[o]))
                .product();
            let card_ok = expected == Some(ca.len()) && prod == ca.len() as u64;
            report(
                "cardinality |CA| = q^(q^n) = prod of fix counts",
                if card_ok { Check::Pass } else { Check::Fail(format!("|CA| = {}", ca.len())) },
            );

            let ica_size = ca.iter().filter(|t| t.is_invertible()).count();
            let decomposition = ica::ica_decomposition(&space, &lattice, &table)?;
            let ica_ok =
                decomposition.total_order == num_bigint::BigUint::from(ica_size as u64);
            report(
                "ICA order matches wreath formula",
                if ica_ok {
                    Check::Pass
                } else {
                    Check::Fail(format!("counted {ica_size}, formula {}", decomposition.total_order))
                },
            );

            if abelian {
                let mut gens: Vec<Transformation> =
                    ca.iter().filter(|t| t.is_invertible()).cloned().collect();
                gens.extend(
                    rank::generating_set_u(&space, &lattice, &table)?
                        .into_iter()
                        .map(|(t, _)| t),
                );
                let closed = oracle::closure(&gens, space.size(), cap)?;
                report(
                    "<ICA u U> = CA",
                    if closed.len() == ca.len() {
                        Check::Pass
                    } else {
                        Check::Fail(format!("closure size {} of {}", closed.len(), ca.len()))
                    },
                );
            } else {
                report("<ICA u U> = CA", Check::Skip("nonabelian group".into()));
            }
        }
    }

    // Relative rank formula vs exhaustive search on tiny instances.
    if abelian && space.n() >= 2 {
        let feasible = oracle::enumerate_ca_capped(&space, 20_000).is_ok();
        if feasible {
            let formula = rank::relative_rank(&space, &lattice, &table)?;
            let searched = oracle::exhaustive_relative_rank(&space, cap, true)?;
            report(
                "relative rank formula = exhaustive search",
                if formula == searched {
                    Check::Pass
                } else {
                    Check::Fail(format!("formula {formula}, search {searched}"))
                },
            );
        } else {
            report("relative rank formula = exhaustive search", Check::Skip("search guard".into()));
        }
    } else {
        report(
            "relative rank formula = exhaustive search",
            Check::Skip(if abelian { "needs n >= 2" } else { "nonabelian group" }.into()),
        );
    }

    // Small-memory impossibility.
    if space.n() >= 2 {
        match rank::small_memory_closure_check(&space, cap) {
            Ok(r) => report(
                "small-memory CA generate a proper submonoid without (0 -> 1)",
                if r.closure_is_proper && !r.contains_constant_collapse {
                    Check::Pass
                } else {
                    Check::Fail(format!("{r:?}"))
                },
            ),
            Err(CaError::SpaceTooLarge { .. }) | Err(CaError::CapExceeded { .. }) => report(
                "small-memory CA generate a proper submonoid without (0 -> 1)",
                Check::Skip("guard".into()),
            ),
            Err(e) => return Err(e),
        }
    } else {
        report(
            "small-memory CA generate a proper submonoid without (0 -> 1)",
            Check::Skip("needs n >= 2".into()),
        );
    }

    Ok(all)
}
