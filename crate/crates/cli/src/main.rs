//! `sctool`: verify, recognize and generate profiles that are single-crossing
//! on trees, analyse their majority relation and pick Chamberlin-Courant
//! committees.
//!
//! Exit status: 0 for a positive finding, 1 for a negative one (not
//! single-crossing, intransitive, no representative voter), 2 for usage or
//! input errors.

mod report;

use std::fmt::Display;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sctree::cc::{self, CcError, MisrepModel, Mode};
use sctree::majority::{self, MajorityError};
use sctree::oracle;
use sctree::sctree as sct;
use sctree::{Profile, Tree};

use report::Report;

#[derive(Parser)]
#[command(name = "sctool", version, about = "Profiles single-crossing on trees")]
struct Cli {
    /// Output format. JSON output is deterministic.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Utilitarian,
    Egalitarian,
}

impl From<Rule> for Mode {
    fn from(r: Rule) -> Mode {
        match r {
            Rule::Utilitarian => Mode::Utilitarian,
            Rule::Egalitarian => Mode::Egalitarian,
        }
    }
}

#[derive(Args)]
struct CcArgs {
    /// Committee size.
    #[arg(short = 'k')]
    k: usize,
    #[arg(long, value_enum, default_value_t = Rule::Utilitarian)]
    rule: Rule,
    /// borda | positional:<r1,r2,...> | approval:<file> | matrix:<file>
    #[arg(long, default_value = "borda")]
    misrep: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check a profile against a given tree and print the cut of every pair.
    Verify { profile: PathBuf, tree: PathBuf },
    /// Decide whether a profile is single-crossing on some tree and build the
    /// minimal one.
    Recognize { profile: PathBuf },
    /// Print a profile whose minimal tree is the given tree.
    Generate { tree: PathBuf },
    /// Pairwise margins, strict majority relation and representative voter.
    Majority { profile: PathBuf },
    /// Optimal Chamberlin-Courant committee on a tree.
    Cc {
        profile: PathBuf,
        tree: PathBuf,
        #[command(flatten)]
        args: CcArgs,
    },
    /// Sample weighted profiles over the distinct orders and check that the
    /// majority relation stays transitive.
    CheckDomain {
        profile: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Largest multiplicity drawn for one order.
        #[arg(long, default_value_t = 5)]
        max_weight: u64,
    },
    /// Exhaustive counterparts for small inputs.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// List every labeled tree on `n` vertices.
    Trees { n: usize },
    /// Try every tree on the distinct orders of the profile.
    Recognize { profile: PathBuf },
    /// Optimal committee by enumerating all `k`-subsets.
    Cc {
        profile: PathBuf,
        #[command(flatten)]
        args: CcArgs,
    },
    /// Search for a voter order along which every pair flips at most once.
    Classical { profile: PathBuf },
}

/// Input or usage problem; reported on stderr with exit status 2.
struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn load_profile(path: &Path) -> Result<Profile, Failure> {
    Profile::parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path, n: usize) -> Result<Tree, Failure> {
    Tree::parse(&read(path)?, n).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_misrep(spec: &str, p: &Profile) -> Result<cc::Misrep, Failure> {
    let model = match spec.split_once(':') {
        None if spec == "borda" => MisrepModel::borda(p.m()),
        Some(("positional", list)) => MisrepModel::parse_positional(list)?,
        Some(("approval", file)) => MisrepModel::parse_approval(&read(Path::new(file))?, p)
            .map_err(|e| Failure(format!("{file}: {e}")))?,
        Some(("matrix", file)) => MisrepModel::parse_matrix(&read(Path::new(file))?, p)
            .map_err(|e| Failure(format!("{file}: {e}")))?,
        _ => return Err(cc::ModelParseError::UnknownSpec(spec.to_string()).into()),
    };
    model.validate(p).map_err(|violations| {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        Failure(format!(
            "invalid misrepresentation function:\n{}",
            lines.join("\n")
        ))
    })
}

fn run(cli: Cli) -> Result<Report, Failure> {
    Ok(match cli.command {
        Command::Verify { profile, tree } => {
            let p = load_profile(&profile)?;
            let t = load_tree(&tree, p.n())?;
            match sct::verify_single_crossing(&p, &t) {
                Ok(ct) => Report::verified(&p, &t, &ct),
                Err(w) => Report::no_cut(&p, &w),
            }
        }
        Command::Recognize { profile } => {
            let p = load_profile(&profile)?;
            match sct::recognize(&p) {
                Ok(r) => Report::recognized(&p, &r),
                Err(e) => Report::not_single_crossing(&e),
            }
        }
        Command::Generate { tree } => {
            let t = Tree::parse_standalone(&read(&tree)?)
                .map_err(|e| Failure(format!("{}: {e}", tree.display())))?;
            Report::generated(&sct::generate_profile(&t)?.profile)
        }
        Command::Majority { profile } => {
            let p = load_profile(&profile)?;
            let margins = majority::majority_margins(&p);
            let relation = majority::strict_majority(&margins);
            let rep = match majority::representative_voter(&p) {
                Ok(v) => Ok(v),
                Err(MajorityError::EvenElectorate(w)) => Err(w),
            };
            Report::majority(&p, &margins, &relation, rep)
        }
        Command::Cc { profile, tree, args } => {
            let p = load_profile(&profile)?;
            let t = load_tree(&tree, p.n())?;
            let r = load_misrep(&args.misrep, &p)?;
            match cc::cc_optimal(&p, &t, args.k, &r, args.rule.into()) {
                Ok(res) => Report::committee(&p, &res),
                Err(CcError::NotSingleCrossing(w)) => Report::no_cut(&p, &w),
                Err(e) => return Err(e.into()),
            }
        }
        Command::CheckDomain {
            profile,
            seed,
            trials,
            max_weight,
        } => {
            let p = load_profile(&profile)?;
            let reduced = p.reduce();
            let report = majority::sample_condorcet_check(&reduced, trials, max_weight, seed);
            Report::domain(&p, reduced.len(), &report)
        }
        Command::Oracle(OracleCommand::Trees { n }) => {
            Report::trees(oracle::enumerate_labeled_trees(n)?.collect())
        }
        Command::Oracle(OracleCommand::Recognize { profile }) => {
            let p = load_profile(&profile)?;
            Report::exhaustive(&oracle::recognize_exhaustive(&p)?)
        }
        Command::Oracle(OracleCommand::Cc { profile, args }) => {
            let p = load_profile(&profile)?;
            let r = load_misrep(&args.misrep, &p)?;
            Report::committee(&p, &oracle::cc_brute_force(&p, args.k, &r, args.rule.into())?)
        }
        Command::Oracle(OracleCommand::Classical { profile }) => {
            let p = load_profile(&profile)?;
            Report::classical(oracle::classical_sc_check(&p)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            let body = match format {
                Format::Json => report.json + "\n",
                Format::Text => report.text,
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if report.positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("sctool: {msg}");
            ExitCode::from(2)
        }
    }
}
