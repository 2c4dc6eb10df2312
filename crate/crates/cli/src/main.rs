//! `hyperchrom`: generate hypergraphs, compute chromatic polynomials and roots,
//! and run verification sweeps.
//!
//! Exit statuses: 0 ok, 1 usage or I/O error, 2 theorem violation,
//! 3 cap exceeded on a single instance.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperchrom::campaign::{
    all_graphs, exhaustive_instances, exit_status, family_instance, parse_check_list,
    seeded_instances, Instance, SweepConfig,
};
use hyperchrom::chromatic::{admissible_partition_form, chromatic_polynomial_auto};
use hyperchrom::generate::Family;
use hyperchrom::hypergraph::{parse_hypergraph, to_json};
use hyperchrom::matroid::{
    is_partition_connected, maximal_bad_partition, partition_connected_decomposition,
};
use hyperchrom::roots::check_root_bound;
use hyperchrom::{Caps, Error};

#[derive(Parser, Debug)]
#[command(name = "hyperchrom", version, about = "Exact hypergraph chromatic polynomials and bound verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a hypergraph (or several with --count) as JSON.
    Gen(Common),
    /// Chromatic polynomial in the power basis and falling-factorial counts.
    Chrom(Common),
    /// Chromatic roots against the 7.04 etD and 8 etD bounds.
    Roots(Common),
    /// Run verification checks on one instance or a family sweep.
    Verify(Common),
    /// Maximal bad partition and partition-connected decomposition.
    Decompose(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Common {
    /// Hypergraph JSON file, or `-` for stdin.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// single_edge, complete_uniform, tight_cycle, loose_path, random_uniform,
    /// random_instance, exhaustive_uniform or all_graphs.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Edge probability for random_uniform.
    #[arg(long)]
    p: Option<f64>,
    /// Number of edges for loose_path.
    #[arg(long)]
    k: Option<usize>,
    /// Seed of a random family; with --count, the master seed of the sweep.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances, each with its own recorded sub-seed.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    #[arg(long)]
    cap_edges: Option<usize>,
    #[arg(long)]
    cap_partition: Option<usize>,
    /// `all` or a comma-separated list of check names.
    #[arg(long, default_value = "all")]
    check: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest accepted root residual.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

/// A failure with the exit status it maps to.
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            status: exit_status::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::TheoremViolation(_) => exit_status::VIOLATION,
            ref e if e.is_cap() => exit_status::CAP,
            _ => exit_status::USAGE,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("I/O error: {e}"))
    }
}

type Outcome = Result<(String, i32), Failure>;

impl Common {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(e) = self.cap_edges {
            caps.edges = e;
        }
        if let Some(p) = self.cap_partition {
            caps.partition = p;
        }
        caps
    }

    fn need(&self, value: Option<usize>, flag: &str) -> Result<usize, Failure> {
        let family = self.family.as_deref().unwrap_or_default();
        value.ok_or_else(|| Failure::usage(format!("family {family} needs --{flag}")))
    }

    /// The family named on the command line with `seed` substituted.
    fn family_with_seed(&self, seed: u64) -> Result<Family, Failure> {
        let name = self.family.as_deref().unwrap_or_default();
        Ok(match name {
            "single_edge" => Family::SingleEdge {
                t: self.need(self.t, "t")?,
            },
            "complete_uniform" => Family::CompleteUniform {
                n: self.need(self.n, "n")?,
                t: self.need(self.t, "t")?,
            },
            "tight_cycle" => Family::TightCycle {
                n: self.need(self.n, "n")?,
                t: self.need(self.t, "t")?,
            },
            "loose_path" => Family::LoosePath {
                k: self.need(self.k, "k")?,
                t: self.need(self.t, "t")?,
            },
            "random_uniform" => Family::RandomUniform {
                n: self.need(self.n, "n")?,
                t: self.need(self.t, "t")?,
                p: self.p.ok_or_else(|| Failure::usage("family random_uniform needs --p"))?,
                seed,
            },
            "random_instance" => Family::RandomInstance { seed },
            other => return Err(Failure::usage(format!("unknown family {other:?}"))),
        })
    }

    /// Instances named by the flags, and whether this is single-instance mode.
    fn instances(&self) -> Result<(Vec<Instance>, bool), Failure> {
        if let Some(path) = &self.input {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
            };
            let h = parse_hypergraph(&text).map_err(|e| Failure::usage(e.to_string()))?;
            let inst = Instance {
                id: 0,
                family: format!("input {}", path.display()),
                seed: None,
                hypergraph: h,
            };
            return Ok((vec![inst], true));
        }
        let name = self
            .family
            .as_deref()
            .ok_or_else(|| Failure::usage("give --input or --family"))?;
        let instances = match name {
            "exhaustive_uniform" => exhaustive_instances(self.need(self.n, "n")?, self.need(self.t, "t")?)?,
            "all_graphs" => all_graphs(self.need(self.n, "n")?)?,
            _ => match self.count {
                Some(count) => seeded_instances(&self.family_with_seed(0)?, count, self.seed)?,
                None => return Ok((vec![family_instance(&self.family_with_seed(self.seed)?)?], true)),
            },
        };
        Ok((instances, false))
    }

    fn single(&self) -> Result<Instance, Failure> {
        match self.instances()? {
            (mut v, true) => Ok(v.remove(0)),
            _ => Err(Failure::usage("this command takes a single instance, not a sweep")),
        }
    }

    fn json_only(&self) -> Result<(), Failure> {
        match self.format {
            Format::Json => Ok(()),
            Format::Csv => Err(Failure::usage("csv output is not available for this command")),
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn gen(args: &Common) -> Outcome {
    args.json_only()?;
    let (instances, single) = args.instances()?;
    if single {
        return Ok((to_json(&instances[0].hypergraph) + "\n", exit_status::OK));
    }
    let docs: Vec<_> = instances
        .iter()
        .map(|i| json!({"instance_id": i.id, "family": i.family, "seed": i.seed, "hypergraph": i.hypergraph}))
        .collect();
    Ok((pretty(&json!(docs)), exit_status::OK))
}

fn chrom(args: &Common) -> Outcome {
    let caps = args.caps();
    let h = args.single()?.hypergraph;
    let p = chromatic_polynomial_auto(&h, &caps)?;
    let falling = admissible_partition_form(&h, &caps).ok();
    let text = match args.format {
        Format::Json => pretty(&json!({
            "hypergraph": h,
            "polynomial": p.to_string(),
            "power_basis": p,
            "falling_factorial": falling.as_ref().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        })),
        Format::Csv => {
            let mut out = String::from("degree,power_coefficient,falling_factorial_count\n");
            for j in 0..=h.num_vertices() {
                let count = falling.as_ref().map(|v| v[j].to_string()).unwrap_or_default();
                out.push_str(&format!("{j},{},{count}\n", p.coefficient(j)));
            }
            out
        }
    };
    Ok((text, exit_status::OK))
}

fn roots(args: &Common) -> Outcome {
    let h = args.single()?.hypergraph;
    let report = check_root_bound(&h, args.tol, &args.caps())?;
    let status = if report.ok_cr && report.ok_8etd {
        exit_status::OK
    } else {
        exit_status::VIOLATION
    };
    let text = match args.format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
        Format::Csv => {
            let mut out = String::from("re,im,modulus,residual\n");
            for z in &report.roots {
                out.push_str(&format!("{},{},{},{}\n", z.re, z.im, z.modulus(), z.residual));
            }
            out
        }
    };
    Ok((text, status))
}

fn verify(args: &Common) -> Outcome {
    let checks = parse_check_list(&args.check).map_err(|e| Failure::usage(e.to_string()))?;
    let (instances, single) = args.instances()?;
    let config = SweepConfig {
        checks,
        caps: args.caps(),
        workers: args.workers as usize,
        root_tolerance: args.tol,
    };
    let report = hyperchrom::campaign::run_sweep(&instances, &config)?;
    let text = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    Ok((text, report.exit_status(single)))
}

fn decompose(args: &Common) -> Outcome {
    let caps = args.caps();
    let h = args.single()?.hypergraph;
    let pieces = partition_connected_decomposition(&h, &caps)?;
    let text = match args.format {
        Format::Json => pretty(&json!({
            "hypergraph": h,
            "partition_connected": is_partition_connected(&h, &caps)?,
            "maximal_bad_partition": maximal_bad_partition(&h, &caps)?,
            "decomposition": pieces,
        })),
        Format::Csv => {
            let mut out = String::from("piece,vertices\n");
            for (i, piece) in pieces.iter().enumerate() {
                let verts: Vec<String> = piece.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("{i},{}\n", verts.join(" ")));
            }
            out
        }
    };
    Ok((text, exit_status::OK))
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            other => Ok(other?),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { exit_status::USAGE } else { exit_status::OK };
            let _ = e.print();
            return ExitCode::from(status as u8);
        }
    };
    let (args, outcome) = match &cli.command {
        Command::Gen(a) => (a, gen(a)),
        Command::Chrom(a) => (a, chrom(a)),
        Command::Roots(a) => (a, roots(a)),
        Command::Verify(a) => (a, verify(a)),
        Command::Decompose(a) => (a, decompose(a)),
    };
    let status = match outcome.and_then(|(text, status)| write_output(args.out.as_ref(), &text).map(|_| status)) {
        Ok(status) => status,
        Err(f) => {
            eprintln!("hyperchrom: {}", f.message);
            f.status
        }
    };
    ExitCode::from(status as u8)
}
