use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use normcov::bounds::{self, BoundReport, DEFAULT_PRECISION};
use normcov::covering::counterexample::DEFAULT_PRIME_BUDGET;
use normcov::covering::{self, tables, BasicSet, Family, GroupKind, SubgroupType};
use normcov::numtheory;
use normcov::partitions::{self, ClusterFamily, Partition, PartitionStream};
use normcov::suite::{self, Config, Level, DEFAULT_SEED};
use normcov::Error;

#[derive(Parser)]
#[command(name = "normcov", version, about = "Partition and normal covering computations for Sym(n) and Alt(n)")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (defaults to available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Number of partitions of n, or with exactly k parts
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Stream the partitions of n, or those with exactly k parts
    Enum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<usize>,
        /// Stop after this many partitions
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Cluster counts for one x, or the intersection and union for several
    Clusters {
        #[arg(long)]
        n: u64,
        /// Cluster size; repeat for a family
        #[arg(long = "x", required = true)]
        xs: Vec<u64>,
        /// Number of parts (single x only)
        #[arg(long, default_value_t = 3)]
        k: u64,
    },
    /// Number of k-partitions of n with gcd 1
    Coprime {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        k: u64,
    },
    /// Representations n = (q^d - 1)/(q - 1), q a prime power, d >= 2
    Qset {
        #[arg(long)]
        n: u64,
    },
    /// Whether a component contains elements of a partition type
    Covers {
        #[command(flatten)]
        group: GroupArgs,
        /// e.g. intransitive:3, imprimitive:2, alternating, primitive:1.4:9,1,1
        #[arg(long)]
        component: SubgroupType,
        /// e.g. 5,3,2
        #[arg(long)]
        partition: Partition,
    },
    /// The explicit basic set for composite n and its size
    Maroti {
        #[arg(long)]
        n: u64,
    },
    /// Check that a basic set covers every partition type of the group
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        /// Use the explicit construction for Sym(n)
        #[arg(long, conflicts_with = "components")]
        maroti: bool,
        /// Components, repeatable
        #[arg(long = "component")]
        components: Vec<SubgroupType>,
        /// Uncovered types to list (the total is always printed)
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// The conjectured normal covering number of Sym(n)
    Conjecture {
        #[arg(long)]
        n: u64,
    },
    /// Certified lower bounds; with --to, every degree in the range that
    /// the bound applies to (even for sym, odd for alt)
    Bound {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        to: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// The shipped primitive-type tables
    Tables {
        #[command(subcommand)]
        action: TablesAction,
    },
    /// The inequality chain for N = product of r consecutive primes from p
    Counterexample {
        #[arg(long, default_value_t = 43)]
        p: u64,
        #[arg(long)]
        r: u64,
        /// Sieve limit for the primes
        #[arg(long, default_value_t = DEFAULT_PRIME_BUDGET)]
        prime_budget: u64,
    },
    /// Run the acceptance battery
    Suite {
        #[arg(long, default_value = "desk")]
        level: Level,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Only these criteria, repeatable
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum TablesAction {
    /// Print the data file exactly as shipped
    Dump,
    /// Catalogued coprime 3-types for degree n, with their sources
    Catalog {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, default_value = "sym")]
    group: Family,
    #[arg(long)]
    n: u64,
}

impl GroupArgs {
    fn kind(&self) -> Result<GroupKind, Error> {
        GroupKind::new(self.group, self.n)
    }
}

/// A command result in all three output shapes.
struct Output {
    text: String,
    json: serde_json::Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Output {
    fn single(text: String, value: impl Serialize, fields: &[(&str, String)]) -> Self {
        Output {
            text,
            json: serde_json::to_value(value).expect("serializable"),
            header: fields.iter().map(|(k, _)| k.to_string()).collect(),
            rows: vec![fields.iter().map(|(_, v)| v.clone()).collect()],
        }
    }

    fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Text => writeln!(out, "{}", self.text),
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&self.json).expect("serializable")),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.flush()
            }
        }
    }
}

enum Failure {
    Domain(Error),
    Io(io::Error),
    /// Ran fine, but some check did not hold.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("normcov: cannot start {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let res = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            let _ = out.flush();
            eprintln!("normcov: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("normcov: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let f = cli.format;
    let output = match &cli.command {
        Command::Count { n, k } => {
            let (label, count) = match k {
                Some(k) => (format!("p_{k}({n})"), partitions::count_partitions(*n, *k)?),
                None => (format!("p({n})"), partitions::partition_number(*n)?),
            };
            Output::single(
                format!("{label} = {count}"),
                json!({ "n": n, "k": k, "count": count.to_string() }),
                &[("n", n.to_string()), ("k", opt(k)), ("count", count.to_string())],
            )
        }
        Command::Enum { n, k, limit } => return enumerate(*n, *k, *limit, f, out),
        Command::Clusters { n, xs, k } => clusters(*n, xs, *k)?,
        Command::Coprime { n, k } => {
            let c = partitions::count_coprime(*n, *k)?;
            Output::single(
                format!("p_{k}({n})' = {c}"),
                json!({ "n": n, "k": k, "count": c.to_string() }),
                &[("n", n.to_string()), ("k", k.to_string()), ("count", c.to_string())],
            )
        }
        Command::Qset { n } => {
            let qs = numtheory::q_set(*n)?;
            let text = qs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
            Output {
                text: if qs.is_empty() { "none".to_string() } else { text },
                json: json!({ "n": n, "reps": qs }),
                header: vec!["n".into(), "q".into(), "d".into()],
                rows: qs.iter().map(|r| vec![n.to_string(), r.q.to_string(), r.d.to_string()]).collect(),
            }
        }
        Command::Covers { group, component, partition } => {
            let g = group.kind()?;
            let c = covering::covers(component, partition, &g)?;
            Output::single(
                c.to_string(),
                json!({ "group": g.to_string(), "component": component.to_string(), "partition": partition, "covers": c }),
                &[
                    ("group", g.to_string()),
                    ("component", component.to_string()),
                    ("partition", partition.to_string()),
                    ("covers", c.to_string()),
                ],
            )
        }
        Command::Maroti { n } => {
            let bs = covering::maroti_basic_set(*n)?;
            let ub = covering::maroti_upper_bound(*n)?;
            let comps: Vec<String> = bs.components.iter().map(|c| c.to_string()).collect();
            Output {
                text: format!("{}\nsize: {}, n/3 + phi(n)/2 + omega(n) = {}", comps.join(" "), bs.len(), ub),
                json: json!({ "group": bs.group.to_string(), "components": comps, "size": bs.len(), "upper_bound": ub.to_string() }),
                header: vec!["component".into()],
                rows: comps.iter().map(|c| vec![c.clone()]).collect(),
            }
        }
        Command::Verify { group, maroti, components, limit } => {
            let bs = if *maroti {
                if group.group != Family::Sym {
                    return Err(Error::Domain("--maroti builds a basic set for Sym(n) only".into()).into());
                }
                covering::maroti_basic_set(group.n)?
            } else if components.is_empty() {
                return Err(Error::Domain("verify needs --maroti or at least one --component".into()).into());
            } else {
                BasicSet::new(group.kind()?, components.iter().cloned())?
            };
            let r = covering::verify_basic_set(&bs, *limit)?;
            let mut text = format!("complete: {}, partitions checked: {}", r.complete, r.checked);
            if !r.complete {
                let listed: Vec<String> = r.uncovered.iter().map(|p| p.to_string()).collect();
                text.push_str(&format!("\nuncovered: {} total\n{}", r.uncovered_total, listed.join(" ")));
            }
            Output {
                text,
                json: serde_json::to_value(&r).expect("serializable"),
                header: vec!["uncovered".into()],
                rows: r.uncovered.iter().map(|p| vec![p.to_string()]).collect(),
            }
        }
        Command::Conjecture { n } => {
            let v = covering::conjecture_value(*n)?;
            Output::single(v.to_string(), json!({ "n": n, "value": v }), &[("n", n.to_string()), ("value", v.to_string())])
        }
        Command::Bound { group, to, precision } => {
            let last = to.unwrap_or(group.n);
            if last < group.n {
                return Err(Error::Domain(format!("--to {last} is below --n {}", group.n)).into());
            }
            let degrees: Vec<u64> = if to.is_some() {
                let parity = match group.group {
                    Family::Sym => 0,
                    Family::Alt => 1,
                };
                (group.n..=last).filter(|n| n % 2 == parity).collect()
            } else {
                vec![group.n]
            };
            let reports = degrees
                .into_iter()
                .map(|n| bounds::bound_report_with_precision(&GroupKind::new(group.group, n)?, *precision))
                .collect::<Result<Vec<_>, _>>()?;
            bound_output(&reports)
        }
        Command::Tables { action: TablesAction::Dump } => {
            out.write_all(tables::TABLE_SOURCE.as_bytes())?;
            return Ok(());
        }
        Command::Tables { action: TablesAction::Catalog { group } } => {
            let g = group.kind()?;
            let types = covering::primitive_coprime3_types(&g)?;
            let sources = covering::primitive_catalog_sources(g.n())?;
            let entries: Vec<(String, Vec<String>)> = types
                .iter()
                .map(|p| (p.to_string(), sources[p].iter().map(|e| e.to_string()).collect()))
                .collect();
            let text = entries.iter().map(|(p, s)| format!("{p}  {}", s.join(" "))).collect::<Vec<_>>().join("\n");
            Output {
                text: if entries.is_empty() { "none".to_string() } else { text },
                json: json!({
                    "group": g.to_string(),
                    "types": entries.iter().map(|(p, s)| json!({ "partition": p, "sources": s })).collect::<Vec<_>>(),
                }),
                header: vec!["partition".into(), "sources".into()],
                rows: entries.iter().map(|(p, s)| vec![p.clone(), s.join(" ")]).collect(),
            }
        }
        Command::Counterexample { p, r, prime_budget } => {
            let rep = covering::counterexample_check(*p, *r, *prime_budget)?;
            let mut lines = Vec::new();
            if let Some(w) = &rep.warning {
                lines.push(format!("warning: {w}"));
            }
            lines.push(format!("(a2) leading coefficients: {}", rep.a2_leading));
            lines.push(format!("(a3) r ln p > ln(14 r): {}", rep.a3_surrogate));
            if rep.feasible {
                lines.push(format!("N has {} digits, largest prime {}", rep.n_digits.unwrap_or(0), rep.largest_prime.unwrap_or(0)));
                lines.push(format!("(a2) exact: {}", rep.a2_exact.unwrap_or(false)));
                lines.push(format!("(a3) exact: {}", rep.a3_exact.unwrap_or(false)));
                lines.push(format!(
                    "phi(N)/N ~ {:.6e} (ln {:.6}), strictly decreasing: {}",
                    rep.phi_ratio_approx.unwrap_or(f64::NAN),
                    rep.phi_ratio_ln.unwrap_or(f64::NAN),
                    rep.strictly_decreasing.unwrap_or(false)
                ));
                if let Some(x) = &rep.phi_ratio {
                    lines.push(format!("phi(N)/N = {x}"));
                }
                lines.push(format!("(a4) phi(N)/N < 1/7: {}", rep.a4_holds.unwrap_or(false)));
            } else {
                lines.push(format!("fewer than {r} primes from {p} below the budget {prime_budget}"));
            }
            lines.push(rep.note.clone());
            let fields = [
                ("p", p.to_string()),
                ("r", r.to_string()),
                ("feasible", rep.feasible.to_string()),
                ("a2_leading", rep.a2_leading.to_string()),
                ("a2_exact", opt(&rep.a2_exact)),
                ("a3_surrogate", rep.a3_surrogate.to_string()),
                ("phi_ratio_ln", opt(&rep.phi_ratio_ln)),
                ("strictly_decreasing", opt(&rep.strictly_decreasing)),
                ("a4_holds", opt(&rep.a4_holds)),
                ("note", rep.note.clone()),
            ];
            Output::single(lines.join("\n"), &rep, &fields)
        }
        Command::Suite { level, seed, criteria } => return run_suite(*level, *seed, criteria, f, out),
    };
    output.write(f, out)?;
    Ok(())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, |x| x.to_string())
}

fn enumerate(n: u64, k: Option<usize>, limit: Option<u64>, f: Format, out: &mut impl Write) -> Result<(), Failure> {
    partitions::enumerate_partitions(n, k)?;
    let mut stream = PartitionStream::new(n, k);
    let limit = limit.unwrap_or(u64::MAX);
    if f == Format::Csv {
        writeln!(out, "partition")?;
    }
    let mut count = 0u64;
    while count < limit {
        let Some(t) = stream.advance() else { break };
        let body = t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        // one record per line in every format, so the listing streams
        match f {
            Format::Text => writeln!(out, "[{body}]")?,
            Format::Json => writeln!(out, "[{body}]")?,
            Format::Csv => writeln!(out, "\"[{body}]\"")?,
        }
        count += 1;
    }
    Ok(())
}

fn clusters(n: u64, xs: &[u64], k: u64) -> Result<Output, Error> {
    if let [x] = xs {
        let c = partitions::count_cluster_partitions(n, *x, k)?;
        let mut fields = vec![("n", n.to_string()), ("x", x.to_string()), ("k", k.to_string()), ("count", c.to_string())];
        let mut value = json!({ "n": n, "x": x, "k": k, "count": c });
        let mut text = format!("p_{k}({n},{x}) = {c}");
        if k == 3 {
            let formula = partitions::p3_cluster_formula(n, *x);
            value["formula"] = json!(formula);
            fields.push(("formula", formula.to_string()));
            text.push_str(&format!(" (closed form {formula})"));
        }
        return Ok(Output::single(text, value, &fields));
    }
    let fam = ClusterFamily::new(n, xs.iter().copied())?;
    let inter = partitions::cluster_intersection(&fam)?;
    let union = partitions::union_cluster_count(&fam);
    let listed: Vec<String> = inter.iter().map(|p| p.to_string()).collect();
    let l = fam.len() as u64;
    let cap = l * (n + 1 - l) / 2;
    Ok(Output {
        text: format!(
            "intersection ({}): {}\nunion: {union} (cap {cap})",
            listed.len(),
            if listed.is_empty() { "none".to_string() } else { listed.join(" ") }
        ),
        json: json!({ "n": n, "xs": fam.xs(), "intersection": inter, "union": union, "union_cap": cap }),
        header: vec!["partition".into()],
        rows: listed.into_iter().map(|p| vec![p]).collect(),
    })
}

fn bound_output(reports: &[BoundReport]) -> Output {
    let text = reports
        .iter()
        .map(|r| {
            let mut s = format!(
                "{}({}): theorem_bound {} (raw {:.6}, clamped {}), corollary {:.6}",
                r.group, r.n, r.theorem_bound, r.theorem_raw, r.clamped, r.corollary_bound
            );
            if let Some(c) = r.corollary_simple {
                s.push_str(&format!(", simple {c:.6}"));
            }
            s.push_str(&format!(
                ", f_upper {:.6e}, radicand {:.6e}, precision {} bits",
                r.f_upper, r.radicand, r.precision_bits
            ));
            if r.vacuous {
                s.push_str(" [vacuous]");
            }
            s
        })
        .collect::<Vec<_>>()
        .join("\n");
    let json = if let [r] = reports {
        serde_json::to_value(r)
    } else {
        serde_json::to_value(reports)
    }
    .expect("serializable");
    Output {
        text,
        json,
        header: BoundReport::csv_header().into_iter().map(String::from).collect(),
        rows: reports.iter().map(|r| r.csv_record()).collect(),
    }
}

fn run_suite(level: Level, seed: u64, criteria: &[u8], f: Format, out: &mut impl Write) -> Result<(), Failure> {
    let cfg = Config { level, seed };
    let ids: Vec<u8> = if criteria.is_empty() { suite::CRITERIA.iter().map(|c| c.id).collect() } else { criteria.to_vec() };
    let mut results = Vec::new();
    if f == Format::Text {
        writeln!(out, "suite level {level}, seed {seed:#018x}")?;
        out.flush()?;
    }
    for id in ids {
        let r = suite::run_criterion(id, &cfg)?;
        if f == Format::Text {
            writeln!(out, "{r}")?;
            out.flush()?;
        }
        results.push(r);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    match f {
        Format::Text => writeln!(out, "{} passed, {failed} failed", results.len() - failed)?,
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json!({ "level": level, "seed": seed, "results": results })).expect("serializable")
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["id", "passed", "title", "detail", "tolerance", "elapsed_secs", "budget_secs", "seed"])?;
            for r in &results {
                w.write_record([
                    r.id.to_string(),
                    r.passed.to_string(),
                    r.title.clone(),
                    r.detail.clone(),
                    r.tolerance.clone(),
                    format!("{:.3}", r.elapsed_secs),
                    r.budget_secs.to_string(),
                    seed.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    if failed > 0 {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}
