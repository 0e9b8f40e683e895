//! `sortnet`: exact computations, samplers and Monte Carlo experiments on
//! uniform sorting networks and their random subnetworks.
//!
//! Exit status: 0 on success, 1 when a verification command finds a
//! violated identity, 2 on argument or input errors.

mod experiment;
mod output;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::Value;
use sortnet::diagram::write_wiring_svg;
use sortnet::exact::export::{rational_text, ExactRecord};
use sortnet::exact::{
    corollary2_probability, count_networks, expected_subnet_swaps_all, first_swap_pmf_vec,
    lemma6_check, theorem1_expectation, NetworkEnumerator, Rational,
};
use sortnet::geometry::{
    archimedes_expected_swaps, geometric_network, sample_archimedes, PointSet,
};
use sortnet::montecarlo::{mc_corollary2, mc_subnet_swap_expectation, worker_rng, McConfig};
use sortnet::network::parse_networks;
use sortnet::urn::{coupled_first_swaps, white_count_pmf};
use sortnet::{sample_uniform_network, SortingNetwork};

use experiment::{append_result, ExperimentConfig};
use output::{Format, Output};

#[derive(Debug, Parser)]
#[command(
    name = "sortnet",
    version,
    about = "Uniform sorting networks and their random subnetworks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct McArgs {
    /// Number of Monte Carlo samples.
    #[arg(long)]
    samples: u64,
    /// Master seed; results depend on (seed, workers).
    #[arg(long)]
    seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
}

impl McArgs {
    fn config(&self) -> McConfig {
        McConfig::new(
            self.samples,
            self.seed,
            self.workers.unwrap_or_else(default_workers),
        )
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every n-particle sorting network in lexicographic order.
    Enumerate {
        n: usize,
        /// Permit n = 7 (hundreds of millions of networks).
        #[arg(long)]
        allow_expensive: bool,
    },
    /// Number of n-particle sorting networks.
    Count { n: usize },
    /// Uniformly random sorting networks.
    Sample {
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Subnetwork induced by a particle subset, for each network in a file.
    Subnet {
        /// Network file in the line format `n: s1 s2 ...` ("-" for stdin).
        #[arg(long)]
        input: PathBuf,
        /// Particle labels, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<u32>,
    },
    /// Exact law of the first swap location.
    PmfFirstSwap { n: usize },
    /// Exact expected number of location-j swaps in the random m-particle subnetwork.
    Theorem1 { m: usize, j: usize },
    /// Compare exhaustive subnetwork averages with the closed form for all m <= n <= NMAX.
    VerifyTheorem1 {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Check the hypergeometric mixture identity for all m <= n <= NMAX.
    Lemma6 {
        #[arg(long, default_value_t = 40)]
        nmax: usize,
    },
    /// Probability that the random 4-particle subnetwork has a point inside a triangle.
    Corollary2 {
        /// Particle count for the exact computation (4..=6).
        #[arg(required_unless_present = "mc", conflicts_with = "mc")]
        n: Option<usize>,
        /// Estimate by Monte Carlo at this particle count instead.
        #[arg(long, requires_all = ["samples", "seed"])]
        mc: Option<usize>,
        #[arg(long, requires = "mc")]
        samples: Option<u64>,
        #[arg(long, requires = "mc")]
        seed: Option<u64>,
        #[arg(long, requires = "mc")]
        workers: Option<usize>,
    },
    /// Exact law of 1 + (number of white additions) after n - 2 urn steps.
    UrnPmf { n: usize },
    /// One urn path read as first swap locations s(2..=NMAX).
    UrnCouple {
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Archimedes-distributed points, as CSV.
    GeomSample {
        m: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Geometric sorting network of a point file (x,y rows).
    GeomNetwork {
        #[arg(long)]
        points: PathBuf,
    },
    /// Expected location-j swaps of the geometric network, by quadrature.
    GeomExpect { m: usize, j: usize },
    /// Monte Carlo estimate of the expected location-j swaps of the m-out-of-n subnetwork.
    McSubnet {
        n: usize,
        m: usize,
        j: usize,
        #[command(flatten)]
        mc: McArgs,
    },
    /// SVG wiring diagram of a network from a file.
    Diagram {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Which network of the file to draw (1-based).
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
    /// Run an experiment described by a JSON config and append the result to a log.
    RunConfig {
        config: PathBuf,
        /// JSON-lines results log.
        #[arg(long, default_value = "results.jsonl")]
        log: PathBuf,
    },
}

/// A command's result and whether its verification passed.
struct Outcome {
    output: Output,
    verified: bool,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome {
            output,
            verified: true,
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_networks(path: &Path) -> Result<Vec<SortingNetwork>> {
    let nets = parse_networks(&read_input(path)?)
        .with_context(|| format!("parsing {}", path.display()))?;
    if nets.is_empty() {
        bail!("{} contains no networks", path.display());
    }
    Ok(nets)
}

fn network_lines(nets: impl IntoIterator<Item = SortingNetwork>) -> Output {
    Output::lines("network", nets.into_iter().map(|n| n.to_string()).collect())
}

fn pmf_records(pmf: Vec<Rational>) -> Vec<ExactRecord> {
    pmf.into_iter()
        .enumerate()
        .map(|(k, p)| ExactRecord::new([("k", k as i64 + 1)], p))
        .collect()
}

fn exact_cell(r: &Rational) -> Value {
    Value::from(rational_text(r))
}

fn verify_theorem1(nmax: usize) -> Result<Outcome> {
    if !(2..=6).contains(&nmax) {
        bail!("--nmax must be between 2 and 6, got {nmax}");
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=nmax {
        for m in 2..=n {
            for (j, brute) in (1..m).zip(expected_subnet_swaps_all(n, m)?) {
                let closed = theorem1_expectation(m, j)?;
                let equal = brute == closed;
                if !equal {
                    failures.push(format!("n={n} m={m} j={j}: {brute} != {closed}"));
                }
                rows.push(vec![
                    n.into(),
                    m.into(),
                    j.into(),
                    exact_cell(&brute),
                    exact_cell(&closed),
                    equal.into(),
                ]);
            }
        }
    }
    let text = summary(
        rows.len(),
        &failures,
        "brute-force averages equal the closed form",
    );
    Ok(Outcome {
        output: Output::table(
            &["n", "m", "j", "bruteforce", "closed_form", "equal"],
            rows,
            text,
        ),
        verified: failures.is_empty(),
    })
}

fn verify_lemma6(nmax: usize) -> Result<Outcome> {
    if nmax < 2 {
        bail!("--nmax must be at least 2, got {nmax}");
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=nmax {
        for m in 2..=n {
            for j in 1..m {
                let check = lemma6_check(n, m, j)?;
                let holds = check.holds();
                if !holds {
                    failures.push(format!("n={n} m={m} j={j}: {} != {}", check.lhs, check.rhs));
                }
                rows.push(vec![
                    n.into(),
                    m.into(),
                    j.into(),
                    exact_cell(&check.lhs),
                    exact_cell(&check.rhs),
                    holds.into(),
                ]);
            }
        }
    }
    let text = summary(rows.len(), &failures, "mixture identity holds");
    Ok(Outcome {
        output: Output::table(&["n", "m", "j", "lhs", "rhs", "holds"], rows, text),
        verified: failures.is_empty(),
    })
}

fn summary(checked: usize, failures: &[String], claim: &str) -> String {
    if failures.is_empty() {
        format!("ok: {claim} for all {checked} (n, m, j)")
    } else {
        let mut lines = vec![format!(
            "FAILED: {} of {checked} (n, m, j) violate: {claim}",
            failures.len()
        )];
        lines.extend(failures.iter().cloned());
        lines.join("\n")
    }
}

fn run(command: Command) -> Result<Outcome> {
    let outcome = match command {
        Command::Enumerate { n, allow_expensive } => {
            network_lines(NetworkEnumerator::new(n, allow_expensive)?).into()
        }
        Command::Count { n } => {
            if n < 2 {
                bail!("need n >= 2, got {n}");
            }
            let count = count_networks(n).to_string();
            Output::table(
                &["n", "count"],
                vec![vec![n.into(), count.clone().into()]],
                count,
            )
            .single()
            .into()
        }
        Command::Sample { n, seed, count } => {
            if n < 2 {
                bail!("need n >= 2, got {n}");
            }
            let mut rng = worker_rng(seed, 0);
            network_lines((0..count).map(|_| sample_uniform_network(n, &mut rng))).into()
        }
        Command::Subnet { input, subset } => {
            let subs = read_networks(&input)?
                .iter()
                .map(|net| net.subnetwork(&subset))
                .collect::<Result<Vec<_>, _>>()?;
            network_lines(subs).into()
        }
        Command::PmfFirstSwap { n } => {
            if n < 2 {
                bail!("need n >= 2, got {n}");
            }
            Output::exact(pmf_records(first_swap_pmf_vec(n))).into()
        }
        Command::Theorem1 { m, j } => {
            let value = theorem1_expectation(m, j)?;
            Output::exact(vec![ExactRecord::new(
                [("m", m as i64), ("j", j as i64)],
                value,
            )])
            .into()
        }
        Command::VerifyTheorem1 { nmax } => verify_theorem1(nmax)?,
        Command::Lemma6 { nmax } => verify_lemma6(nmax)?,
        Command::Corollary2 {
            n,
            mc,
            samples,
            seed,
            workers,
        } => match (n, mc) {
            (Some(n), None) => Output::exact(vec![ExactRecord::new(
                [("n", n as i64)],
                corollary2_probability(n)?,
            )])
            .into(),
            (None, Some(n)) => {
                let cfg = McConfig::new(
                    samples.expect("required by clap"),
                    seed.expect("required by clap"),
                    workers.unwrap_or_else(default_workers),
                );
                Output::estimate(&mc_corollary2(n, &cfg)?).into()
            }
            _ => unreachable!("clap enforces exactly one of n and --mc"),
        },
        Command::UrnPmf { n } => Output::exact(pmf_records(white_count_pmf(n)?)).into(),
        Command::UrnCouple { nmax, seed } => {
            let path = coupled_first_swaps(nmax, &mut worker_rng(seed, 0))?;
            let rows = path.iter().map(|(n, s)| vec![n.into(), s.into()]).collect();
            let text = path
                .iter()
                .map(|(n, s)| format!("{n} {s}"))
                .collect::<Vec<_>>()
                .join("\n");
            Output::table(&["n", "s"], rows, text).into()
        }
        Command::GeomSample { m, seed } => {
            if m < 2 {
                bail!("need m >= 2, got {m}");
            }
            let (points, resamples) = sample_archimedes(m, &mut worker_rng(seed, 0));
            if resamples > 0 {
                eprintln!("note: {resamples} degenerate draws discarded");
            }
            point_output(&points).into()
        }
        Command::GeomNetwork { points } => {
            let set = PointSet::from_csv(&read_input(&points)?)?;
            network_lines([geometric_network(&set)?]).into()
        }
        Command::GeomExpect { m, j } => {
            let quadrature = archimedes_expected_swaps(m, j)?;
            let exact = theorem1_expectation(m, j)?;
            let exact_decimal = sortnet::exact::export::rational_decimal(&exact);
            let text = format!(
                "quadrature {} exact {} {exact_decimal}",
                sortnet::exact::export::decimal(quadrature),
                rational_text(&exact)
            );
            Output::table(
                &["m", "j", "quadrature", "exact", "exact_decimal"],
                vec![vec![
                    m.into(),
                    j.into(),
                    quadrature.into(),
                    exact_cell(&exact),
                    exact_decimal.into(),
                ]],
                text,
            )
            .single()
            .into()
        }
        Command::McSubnet { n, m, j, mc } => {
            Output::estimate(&mc_subnet_swap_expectation(n, m, j, &mc.config())?).into()
        }
        Command::Diagram { input, out, index } => {
            let nets = read_networks(&input)?;
            let Some(net) = index.checked_sub(1).and_then(|i| nets.get(i)) else {
                bail!(
                    "--index {index} out of range: file has {} networks",
                    nets.len()
                );
            };
            write_wiring_svg(net, &out).with_context(|| format!("writing {}", out.display()))?;
            Output::lines("path", vec![out.display().to_string()]).into()
        }
        Command::RunConfig { config, log } => {
            let cfg = ExperimentConfig::from_file(&config)?;
            let result = cfg.run()?;
            append_result(&log, &cfg, &result)?;
            let text = serde_json::to_string_pretty(&result)?;
            Output::table(&["result"], vec![vec![result]], text)
                .single()
                .into()
        }
    };
    Ok(outcome)
}

fn point_output(points: &PointSet) -> Output {
    let rows = points
        .points()
        .iter()
        .map(|p| vec![p.x.into(), p.y.into()])
        .collect();
    Output::table(&["x", "y"], rows, points.to_csv().trim_end().to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.output.render(cli.format));
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
