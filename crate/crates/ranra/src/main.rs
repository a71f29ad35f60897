//! Command-line interface: sample structures, check `.cyc` files, enumerate
//! small atom counts, and run Monte Carlo experiments.
//!
//! Exit codes: 0 on success (and for `check` of an associative structure),
//! 3 when `check` finds a non-associative structure, 2 for usage, parse, and
//! I/O errors.

use clap::{Parser, Subcommand, ValueEnum};
use ranra::experiment::{run_experiment_to_files, ExperimentConfig};
use ranra::{
    algebra_quasirandomness, atom_name, census, flexible_atoms, is_associative, parse_structure,
    sample, serialize_structure, CycFormat, CycleStructure, SamplerConfig,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ranra", version, about = "Random symmetric integral relation algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one structure and print it as a `.cyc` file on stdout.
    Sample {
        /// Number of diversity atoms.
        #[arg(long)]
        n: usize,
        /// Probability that each cycle is mandatory.
        #[arg(long, value_parser = parse_probability)]
        p: f64,
        /// Seed (there is no wall-clock default; runs are reproducible).
        #[arg(long)]
        seed: u64,
        /// Output form: one line per cycle, or a compact hex bit vector.
        #[arg(long, value_enum, default_value_t = FormatArg::Cycles)]
        format: FormatArg,
    },
    /// Analyze a `.cyc` file: associativity, witness conditions, flexible
    /// atoms, and (for n >= 3) the quasirandomness verdict.
    Check {
        /// Path to the `.cyc` file.
        path: PathBuf,
        /// Density parameter for the quasirandomness statistics; defaults to
        /// the structure's empirical cycle density.
        #[arg(long, value_parser = parse_probability)]
        p: Option<f64>,
        /// Quasirandomness tolerance.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Allowed fraction of failing atom graphs.
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        /// Also write the report as JSON to this path (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate all structures for a small atom count and print census JSON.
    Enumerate {
        /// Number of diversity atoms (M(n) <= 25 cycle bits).
        #[arg(long)]
        n: usize,
        /// Also write one canonical `.cyc` block per associative class.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Run a Monte Carlo experiment described by a JSON config file.
    Experiment {
        /// Path to the config JSON.
        config: PathBuf,
        /// Also dump one CSV row per trial to this path.
        #[arg(long)]
        per_trial: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Cycles,
    Bits,
}

fn parse_probability(raw: &str) -> Result<f64, String> {
    let p: f64 = raw.parse().map_err(|_| format!("`{raw}` is not a number"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("probability {p} must lie in [0, 1]"))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> ranra::Result<ExitCode> {
    match cli.command {
        Command::Sample { n, p, seed, format } => {
            let s = sample(&SamplerConfig { n, p, seed })?;
            let format = match format {
                FormatArg::Cycles => CycFormat::Cycles,
                FormatArg::Bits => CycFormat::Bits,
            };
            print!("{}", serialize_structure(&s, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            path,
            p,
            epsilon,
            delta,
            json,
        } => {
            let text = std::fs::read_to_string(&path)?;
            let s = parse_structure(&text)?;
            check_structure(&s, p, epsilon, delta, json.as_deref())
        }
        Command::Enumerate { n, catalog } => {
            let c = census(n)?;
            println!("{}", serde_json::to_string(&c)?);
            if let Some(path) = catalog {
                write_catalog(n, &path)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment { config, per_trial } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg = ExperimentConfig::from_json(&text)?;
            run_experiment_to_files(&cfg, per_trial.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn check_structure(
    s: &CycleStructure,
    p: Option<f64>,
    epsilon: f64,
    delta: f64,
    json: Option<&Path>,
) -> ranra::Result<ExitCode> {
    let n = s.n();
    let assoc = is_associative(s);
    let flex = flexible_atoms(s);
    let density = s.mandatory_count() as f64 / s.total_cycles() as f64;
    let p = p.unwrap_or(density);
    let verdict = (n >= 3).then(|| algebra_quasirandomness(s, p, epsilon, delta));

    println!(
        "structure: n = {n}, {} of {} cycles mandatory",
        s.mandatory_count(),
        s.total_cycles()
    );
    match &assoc.first_violation {
        None => println!("associative: yes"),
        Some(v) => {
            let (u, vv, w) = v.atoms;
            println!(
                "associative: no; least violation ({},{},{}): ({};{});{} = {} but {};({};{}) = {}",
                atom_name(u, n),
                atom_name(vv, n),
                atom_name(w, n),
                atom_name(u, n),
                atom_name(vv, n),
                atom_name(w, n),
                render_set(&v.left, n),
                atom_name(u, n),
                atom_name(vv, n),
                atom_name(w, n),
                render_set(&v.right, n),
            );
        }
    }
    println!(
        "witness condition: diversity-only {}, identity-extended {}",
        yes_no(assoc.paper_condition_holds),
        yes_no(assoc.extended_condition_holds)
    );
    println!(
        "flexible atoms: {} (count {})",
        render_set(&flex.flexible_atoms, n),
        flex.count
    );
    println!("representability: {}", flex.representable_flag.as_str());
    if let Some(v) = &verdict {
        println!(
            "quasirandom (p = {p}, epsilon = {epsilon}, delta = {delta}): {} ({} of {n} atom graphs fail)",
            yes_no(v.algebra_quasirandom),
            v.per_atom_pass.iter().filter(|&&ok| !ok).count(),
        );
    }

    if let Some(path) = json {
        let report = build_json_report(s, &assoc, &flex, verdict.as_ref(), p, epsilon, delta);
        let rendered = serde_json::to_string_pretty(&report)?;
        if path.as_os_str() == "-" {
            println!("{rendered}");
        } else {
            std::fs::write(path, rendered)?;
        }
    }

    Ok(if assoc.associative {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_set(set: &ranra::AtomSet, n: usize) -> String {
    let names: Vec<String> = set.iter().map(|a| atom_name(a, n)).collect();
    format!("{{{}}}", names.join(","))
}

fn build_json_report(
    s: &CycleStructure,
    assoc: &ranra::AssociativityReport,
    flex: &ranra::FlexibilityReport,
    verdict: Option<&ranra::quasirandom::QuasirandomVerdict>,
    p: f64,
    epsilon: f64,
    delta: f64,
) -> serde_json::Value {
    let n = s.n();
    let violation = assoc.first_violation.as_ref().map(|v| {
        serde_json::json!({
            "atoms": [v.atoms.0, v.atoms.1, v.atoms.2],
            "left": v.left.iter().collect::<Vec<_>>(),
            "right": v.right.iter().collect::<Vec<_>>(),
        })
    });
    let quasirandom = verdict.map(|v| {
        let per_atom: serde_json::Map<String, serde_json::Value> = (0..n)
            .map(|a| {
                (
                    a.to_string(),
                    serde_json::json!({
                        "pass": v.per_atom_pass[a],
                        "stats": v.per_atom_stats[a],
                    }),
                )
            })
            .collect();
        serde_json::json!({
            "p": p,
            "epsilon": epsilon,
            "delta": delta,
            "algebra_quasirandom": v.algebra_quasirandom,
            "failing_fraction": v.failing_fraction,
            "per_atom": per_atom,
        })
    });
    serde_json::json!({
        "n": n,
        "mandatory_cycles": s.mandatory_count(),
        "total_cycles": s.total_cycles(),
        "associative": assoc.associative,
        "violation": violation,
        "paper_condition": assoc.paper_condition_holds,
        "extended_condition": assoc.extended_condition_holds,
        "flexible_atoms": flex.flexible_atoms.iter().collect::<Vec<_>>(),
        "flexible_count": flex.count,
        "representability": flex.representable_flag.as_str(),
        "quasirandom": quasirandom,
    })
}

fn write_catalog(n: usize, path: &Path) -> ranra::Result<()> {
    let reps = ranra::enumerate::associative_catalog(n)?;
    let mut out = String::new();
    for (i, rep) in reps.iter().enumerate() {
        out.push_str(&format!("# class {i}\n"));
        out.push_str(&serialize_structure(rep, CycFormat::Cycles));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}
