use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use strata_core::catalog::worked_examples;
use strata_core::config::{RunConfig, Setup, THEOREM_IDS};
use strata_core::figure::render_svg;
use strata_core::{Error, FixedSubgroup};

const GOLDEN: [(&str, &str); 3] = [
    ("A2-swap", include_str!("../golden/a2_swap.txt")),
    ("B2-swap", include_str!("../golden/b2_swap.txt")),
    ("resSL2", include_str!("../golden/res_sl2.txt")),
];

#[derive(Parser)]
#[command(name = "strata", version, about = "Twisted conjugacy classes of extended affine Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Svg,
}

#[derive(clap::Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Length bound of the window; overrides `length_bound` from the config.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Abort when a window would hold more elements than this.
    #[arg(long)]
    max_elements: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the straight classes of the window with their invariants.
    StraightClasses(Common),
    /// Check one of the classification statements on the window.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theorem: String,
    },
    /// Print the worked examples and compare them with the stored copies.
    Examples {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the apartment and the fixed subspace of a rank-two twist.
    Figure(Common),
}

enum Failure {
    Usage(anyhow::Error),
    Mismatch,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.into())
    }
}

struct Loaded {
    setup: Setup,
    bound: u32,
    format: Option<Format>,
}

fn load(c: &Common) -> anyhow::Result<Loaded> {
    let text = std::fs::read_to_string(&c.config).with_context(|| format!("reading {}", c.config.display()))?;
    let cfg = RunConfig::from_json(&text)?;
    let mut setup = cfg.build()?;
    if let Some(m) = c.max_elements {
        setup.cap = m;
    }
    let format = c.format.or(cfg.format.map(|f| match f {
        strata_core::config::OutputFormat::Json => Format::Json,
        strata_core::config::OutputFormat::Tsv => Format::Tsv,
        strata_core::config::OutputFormat::Svg => Format::Svg,
    }));
    Ok(Loaded { bound: c.bound.unwrap_or(setup.bound), setup, format })
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::StraightClasses(c) => {
            let l = load(&c)?;
            let table = l.setup.class_table(l.bound)?;
            let text = match l.format.unwrap_or(Format::Json) {
                Format::Json => table.to_json() + "\n",
                Format::Tsv => table.to_tsv(),
                Format::Svg => return Err(anyhow::anyhow!("straight-classes has no svg output").into()),
            };
            emit(c.out.as_deref(), &text)?;
        }
        Command::Verify { common, theorem } => {
            if !THEOREM_IDS.contains(&theorem.as_str()) {
                return Err(anyhow::anyhow!("unknown theorem `{theorem}`; expected one of {}", THEOREM_IDS.join(", ")).into());
            }
            let l = load(&common)?;
            let rep = l.setup.verify(&theorem, l.bound)?;
            let text = match l.format.unwrap_or(Format::Json) {
                Format::Json => rep.to_json() + "\n",
                Format::Tsv => {
                    let status = if rep.passed() { "pass" } else { "fail" };
                    let mut s = String::from("theorem\tbound\tstatus\tclasses\telements\tcounterexamples\n");
                    s += &format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\n",
                        rep.theorem,
                        rep.bound,
                        status,
                        rep.classes,
                        rep.elements,
                        rep.counterexamples.len()
                    );
                    s
                }
                Format::Svg => return Err(anyhow::anyhow!("verify has no svg output").into()),
            };
            emit(common.out.as_deref(), &text)?;
            if !rep.passed() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Examples { out } => {
            let examples = worked_examples()?;
            let mut text = String::new();
            let mut differs = false;
            for ((name, body), (gname, golden)) in examples.iter().zip(GOLDEN) {
                debug_assert_eq!(*name, gname);
                if body != golden {
                    differs = true;
                    eprintln!("{name}: output differs from the stored copy");
                    for (i, (a, b)) in body.lines().zip(golden.lines()).enumerate() {
                        if a != b {
                            eprintln!("  line {}: got `{a}`, stored `{b}`", i + 1);
                        }
                    }
                    if body.lines().count() != golden.lines().count() {
                        eprintln!("  line counts differ: {} vs {}", body.lines().count(), golden.lines().count());
                    }
                }
                if !text.is_empty() {
                    text.push('\n');
                }
                text += body;
            }
            emit(out.as_deref(), &text)?;
            if differs {
                return Err(Failure::Mismatch);
            }
        }
        Command::Figure(c) => {
            let l = load(&c)?;
            if matches!(l.format, Some(Format::Json | Format::Tsv)) {
                return Err(anyhow::anyhow!("figure only produces svg").into());
            }
            let fs = FixedSubgroup::new(&l.setup.group, &l.setup.twist)?;
            emit(c.out.as_deref(), &render_svg(&fs)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(2),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
