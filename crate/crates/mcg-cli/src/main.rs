//! Command-line driver: model construction, identity verification, order
//! reports, generation certification and JSON export.
//!
//! Exit codes: 0 all checks pass, 1 mathematical failure, 2 invalid
//! configuration or I/O, 3 resource budget exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mcg_core::error::Error;
use mcg_core::export::{build_bundle, bundle_to_string};
use mcg_core::models::{full_model, CircularModel};
use mcg_core::quotient::{generation_battery, is_prime, NamedSet};
use mcg_core::symp::random_word_check;
use mcg_core::verify::{
    coxeter_for_model, default_order_cap, identity_suite, orders_report, run_suite,
};
use mcg_core::words::Letter;

#[derive(Parser)]
#[command(
    name = "mcg",
    version,
    about = "Exact symplectic certification of twist and involution generating sets",
    after_help = "Environment overrides: MCG_GENUS, MCG_PRIMES, MCG_ORBIT_BUDGET, \
                  MCG_ORDER_CAP, MCG_SEED, MCG_OUT."
)]
struct Cli {
    #[command(flatten)]
    config: Config,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Genus values to process.
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        default_value = "3,4,5",
        env = "MCG_GENUS"
    )]
    genus: Vec<usize>,

    /// Primes for the finite-quotient battery.
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        default_value = "2,3,5,7",
        env = "MCG_PRIMES"
    )]
    primes: Vec<u64>,

    /// Cap on the point space p^{2g} a stabilizer level may need.
    #[arg(long, global = true, default_value_t = 10_000_000, env = "MCG_ORBIT_BUDGET")]
    orbit_budget: u64,

    /// Order-search cap; `auto` means 12g.
    #[arg(long, global = true, default_value = "auto", env = "MCG_ORDER_CAP")]
    order_cap: String,

    /// Seed for the randomized word sampling in `verify`.
    #[arg(long, global = true, default_value_t = 0, env = "MCG_SEED")]
    seed: u64,

    /// Output path for `export` (stdout when absent).
    #[arg(long, global = true, env = "MCG_OUT")]
    out: Option<PathBuf>,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every witness identity for each genus.
    Verify {
        /// `auto` runs what the genus supports; `basic` only the chain and
        /// torsion identities; `involutions` requires genus >= 3.
        #[arg(long, default_value = "auto")]
        suite: String,
        /// Falsifiability hook: make one twist left-handed.
        #[arg(long)]
        inject_flip: Option<String>,
        /// Falsifiability hook: replace one symmetry by the identity.
        #[arg(long)]
        neutralize: Option<String>,
        /// Number of random words for the form-preservation smoke check.
        #[arg(long, default_value_t = 200)]
        sample_words: usize,
    },
    /// Report torsion orders and the divisibility requirements.
    Orders,
    /// Certify generation of Sp(2g, p) for the named sets.
    Generate {
        /// Subset of sets (default: all six).
        #[arg(long, value_delimiter = ',')]
        sets: Option<Vec<String>>,
    },
    /// Pairwise product orders of the six involutions.
    Coxeter,
    /// Write the JSON bundle of models, tables, words and verdicts.
    Export,
}

const EXIT_MATH: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            let code = match e.downcast_ref::<Error>() {
                Some(Error::OrbitBudget { .. }) => EXIT_RESOURCE,
                Some(Error::UnsupportedGenus { .. }) | Some(Error::NotPrime(_)) => EXIT_CONFIG,
                _ => EXIT_CONFIG,
            };
            fail(code, &e.to_string())
        }
    }
}

fn parse_order_cap(raw: &str, g: usize) -> anyhow::Result<u64> {
    if raw == "auto" {
        return Ok(default_order_cap(g));
    }
    Ok(raw.parse::<u64>()?)
}

fn validate(config: &Config, need_lantern: bool) -> anyhow::Result<()> {
    if config.genus.is_empty() {
        anyhow::bail!("empty genus list");
    }
    for &g in &config.genus {
        if g < 2 {
            anyhow::bail!("genus {g} unsupported: the toolkit needs genus >= 2");
        }
        if need_lantern && g < 3 {
            anyhow::bail!("genus {g} unsupported: the involution suite needs genus >= 3");
        }
    }
    for &p in &config.primes {
        if !is_prime(p) {
            anyhow::bail!("{p} is not prime");
        }
    }
    if config.orbit_budget == 0 {
        anyhow::bail!("orbit budget must be positive");
    }
    Ok(())
}

fn build_models(genus: &[usize]) -> anyhow::Result<BTreeMap<usize, CircularModel>> {
    let mut models = BTreeMap::new();
    for &g in genus {
        models.insert(g, full_model(g)?);
    }
    Ok(models)
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Verify { suite, inject_flip, neutralize, sample_words } => {
            cmd_verify(&cli.config, suite, inject_flip, neutralize, *sample_words)
        }
        Command::Orders => cmd_orders(&cli.config),
        Command::Generate { sets } => cmd_generate(&cli.config, sets),
        Command::Coxeter => cmd_coxeter(&cli.config),
        Command::Export => cmd_export(&cli.config),
    }
}

fn cmd_verify(
    config: &Config,
    suite: &str,
    inject_flip: &Option<String>,
    neutralize: &Option<String>,
    sample_words: usize,
) -> anyhow::Result<ExitCode> {
    validate(config, suite == "involutions")?;
    if !matches!(suite, "auto" | "basic" | "involutions") {
        anyhow::bail!("unknown suite '{suite}' (expected auto, basic or involutions)");
    }
    let models = build_models(&config.genus)?;
    let mut all_hold = true;
    let mut json_out = Vec::new();
    for (g, model) in &models {
        let mut table = model.generator_table()?;
        if let Some(curve) = inject_flip {
            table.inject_flip(curve)?;
        }
        if let Some(sym) = neutralize {
            table.neutralize(&Letter::sym(sym))?;
        }
        let mut checks = identity_suite(model)?;
        if suite == "basic" {
            checks.retain(|c| {
                !(c.name.contains("lantern")
                    || c.name.contains("involution")
                    || c.name.contains("K matches"))
            });
        }
        let results = run_suite(model, &table, &checks)?;
        let words_checked = random_word_check(&table, config.seed, sample_words)?;
        if config.json {
            let checks_json: Vec<_> = checks
                .iter()
                .zip(results.iter())
                .map(|(c, (_, v))| mcg_core::verify::check_to_json(c, v))
                .collect();
            json_out.push(serde_json::json!({
                "genus": g,
                "checks": checks_json,
                "random_words_checked": words_checked,
            }));
        } else {
            println!("genus {g}: {} identities, {words_checked} random words", results.len());
            for (name, verdict) in &results {
                match verdict {
                    mcg_core::symp::Verdict::Holds => println!("  ok   {name}"),
                    mcg_core::symp::Verdict::Fails { column, .. } => {
                        println!("  FAIL {name} (first differing column {column})");
                    }
                }
            }
        }
        all_hold &= results.iter().all(|(_, v)| v.holds());
    }
    if config.json {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    Ok(if all_hold { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MATH) })
}

fn cmd_orders(config: &Config) -> anyhow::Result<ExitCode> {
    validate(config, false)?;
    let models = build_models(&config.genus)?;
    let mut all_ok = true;
    let mut json_out = Vec::new();
    for (g, model) in &models {
        let cap = parse_order_cap(&config.order_cap, *g)?;
        let lines = orders_report(model, cap)?;
        if config.json {
            json_out.push(serde_json::json!({ "genus": g, "orders": lines }));
        } else {
            println!("genus {g} (order cap {cap}):");
            for line in &lines {
                let status = if line.ok { "ok  " } else { "FAIL" };
                println!(
                    "  {status} {:8} order {:<16} requirement: {}",
                    line.name,
                    line.verdict.to_string(),
                    line.requirement
                );
            }
        }
        all_ok &= lines.iter().all(|l| l.ok);
    }
    if config.json {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MATH) })
}

fn cmd_generate(config: &Config, sets: &Option<Vec<String>>) -> anyhow::Result<ExitCode> {
    validate(config, false)?;
    let selected: Vec<NamedSet> = match sets {
        None => NamedSet::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|s| NamedSet::parse(s).map_err(anyhow::Error::from))
            .collect::<anyhow::Result<_>>()?,
    };
    // explicitly requested sets must be runnable somewhere
    if sets.is_some() {
        for set in &selected {
            if config.genus.iter().all(|&g| g < set.min_genus()) {
                anyhow::bail!(
                    "{} needs genus >= {}, none requested",
                    set.name(),
                    set.min_genus()
                );
            }
        }
    }
    let models = build_models(&config.genus)?;
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for &set in &selected {
        for &g in &config.genus {
            if g < set.min_genus() {
                skipped.push((set, g));
                continue;
            }
            for &p in &config.primes {
                cells.push((set, g, p));
            }
        }
    }
    let results = generation_battery(&models, &cells, Some(config.orbit_budget));
    let mut all_generate = true;
    let mut over_budget = false;
    let mut json_out = Vec::new();
    for ((set, g, p), result) in cells.iter().zip(results) {
        match result {
            Ok(v) => {
                if config.json {
                    json_out.push(serde_json::to_value(v.to_json())?);
                } else {
                    println!(
                        "{:22} g={g} p={p}: {} (|subgroup| = {}, |Sp| = {}, {} ms)",
                        set.name(),
                        if v.generates { "generates" } else { "PROPER SUBGROUP" },
                        v.subgroup_order,
                        v.full_order,
                        v.ms
                    );
                }
                all_generate &= v.generates;
            }
            Err(e @ Error::OrbitBudget { .. }) => {
                // explicit per-cell resource error; remaining cells still run
                eprintln!("error: {}: g={g} p={p}: {e}", set.name());
                over_budget = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    for (set, g) in skipped {
        println!("{:22} g={g}: n/a (needs genus >= {})", set.name(), set.min_genus());
    }
    if config.json {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    Ok(if over_budget {
        ExitCode::from(EXIT_RESOURCE)
    } else if all_generate {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MATH)
    })
}

fn cmd_coxeter(config: &Config) -> anyhow::Result<ExitCode> {
    validate(config, true)?;
    let models = build_models(&config.genus)?;
    let mut json_out = Vec::new();
    for (g, model) in &models {
        let cap = parse_order_cap(&config.order_cap, *g)?;
        let report = coxeter_for_model(model, cap)?;
        if config.json {
            json_out.push(serde_json::json!({
                "genus": g,
                "names": report.names,
                "cap": report.cap,
                "entries": report
                    .entries
                    .iter()
                    .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }));
        } else {
            println!("genus {g}: pairwise product orders (cap {cap})");
            print!("{:>8}", "");
            for n in &report.names {
                print!("{n:>18}");
            }
            println!();
            for (i, row) in report.entries.iter().enumerate() {
                print!("{:>8}", report.names[i]);
                for v in row {
                    print!("{:>18}", v.to_string());
                }
                println!();
            }
        }
    }
    if config.json {
        println!("{}", serde_json::to_string_pretty(&json_out)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(config: &Config) -> anyhow::Result<ExitCode> {
    validate(config, false)?;
    // the cap must be genus-independent inside one bundle; use the largest
    let max_g = *config.genus.iter().max().expect("validated nonempty");
    let cap = parse_order_cap(&config.order_cap, max_g)?;
    let bundle = build_bundle(&config.genus, config.seed, cap)?;
    let text = bundle_to_string(&bundle)?;
    match &config.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| anyhow::anyhow!("writing {}: {e}", path.display()))?;
            println!("wrote {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
