use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zn_tower::axioms::{check_axioms, commutation_suite, SampleSpec};
use zn_tower::factory;
use zn_tower::hnn::{extend_hnn, Placement};
use zn_tower::nielsen::{reduce_genset, GenSet, Move, ReduceOptions};
use zn_tower::pregroup::{split_level, verify_pregroup};
use zn_tower::{parse, AbelianSubgroup, Element, GroupTower, TowerError, TowerFile};

type Result<T> = std::result::Result<T, TowerError>;

#[derive(Parser)]
#[command(name = "zntower", version, about = "Groups with free Z^n-valued length functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TowerArg {
    /// Tower file (JSON).
    #[arg(short, long)]
    tower: PathBuf,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form, length, height and λ of an expression.
    Eval {
        #[command(flatten)]
        t: TowerArg,
        expr: String,
    },
    /// Whether two expressions denote the same element.
    Eq {
        #[command(flatten)]
        t: TowerArg,
        a: String,
        b: String,
    },
    /// Longest common initial segment.
    Com {
        #[command(flatten)]
        t: TowerArg,
        a: String,
        b: String,
    },
    /// Whether two elements commute.
    Commutes {
        #[command(flatten)]
        t: TowerArg,
        a: String,
        b: String,
    },
    /// Generators of the centralizer of an element.
    Centralizer {
        #[command(flatten)]
        t: TowerArg,
        expr: String,
    },
    /// Reduce a generating set by μ, η, ν and print the witness log.
    ReduceGens {
        #[command(flatten)]
        t: TowerArg,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Split the top level of the group generated by a reduced set.
    SplitLevel {
        #[command(flatten)]
        t: TowerArg,
        /// Reduce the set first.
        #[arg(long)]
        reduce: bool,
        /// Write the rebuilt tower here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Add a stable letter s with s^-1 source_k s = target_k.
    ExtendHnn {
        #[command(flatten)]
        t: TowerArg,
        #[arg(long, required = true)]
        source: Vec<String>,
        #[arg(long, required = true)]
        target: Vec<String>,
        #[arg(long, default_value = "s")]
        name: String,
        /// Place the letter on the current top level.
        #[arg(long)]
        join_top: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample L1–L6 (and optionally the commutation lemmas).
    CheckAxioms {
        #[command(flatten)]
        t: TowerArg,
        #[command(flatten)]
        s: Sampling,
        /// Stable letters per sampled element.
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Also run the commutation lemmas.
        #[arg(long)]
        lemmas: bool,
    },
    /// Sampled pregroup checks for a reduced generating set.
    VerifyPregroup {
        #[command(flatten)]
        t: TowerArg,
        #[command(flatten)]
        s: Sampling,
        /// Generating set; defaults to the reduced tower generators.
        gens: Vec<String>,
    },
    /// Orientable surface tower of genus n.
    Surface {
        n: usize,
    },
    /// Nonorientable surface tower with n crosscaps.
    Nonorientable {
        n: usize,
    },
    /// Z^n.
    Abelian {
        n: usize,
    },
    /// Free product of two tower files.
    FreeProduct {
        first: PathBuf,
        second: PathBuf,
    },
    /// Initial-letter condition over U^{±1} for base words.
    CheckBasis {
        #[command(flatten)]
        t: TowerArg,
        #[arg(required = true)]
        words: Vec<String>,
    },
}

fn load(path: &Path) -> Result<GroupTower> {
    let s = fs::read_to_string(path).map_err(|e| TowerError::File(format!("{}: {e}", path.display())))?;
    zn_tower::load_tower(&s)
}

fn parse_all(t: &GroupTower, xs: &[String]) -> Result<Vec<Element>> {
    xs.iter().map(|x| parse(t, x)).collect()
}

fn emit(t: &GroupTower, out: Option<&Path>) -> Result<()> {
    let json = TowerFile::from_tower(t).to_json();
    match out {
        Some(p) => fs::write(p, json + "\n").map_err(|e| TowerError::File(format!("{}: {e}", p.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn list(t: &GroupTower, xs: &[Element]) -> String {
    xs.iter().map(|x| t.render(x)).collect::<Vec<_>>().join(", ")
}

/// `Ok(false)` reports a domain failure already printed.
fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Eval { t, expr } => {
            let t = load(&t.tower)?;
            let g = parse(&t, &expr)?;
            println!("normal form: {}", t.render(&g));
            println!("length: {}", t.length(&g));
            println!("height: {}", t.height(&g));
            println!("lambda: {}", t.lambda(&g));
        }
        Cmd::Eq { t, a, b } => {
            let t = load(&t.tower)?;
            println!("{}", t.equals(&parse(&t, &a)?, &parse(&t, &b)?));
        }
        Cmd::Com { t, a, b } => {
            let t = load(&t.tower)?;
            println!("{}", t.render(&t.com(&parse(&t, &a)?, &parse(&t, &b)?)));
        }
        Cmd::Commutes { t, a, b } => {
            let t = load(&t.tower)?;
            println!("{}", t.commutes(&parse(&t, &a)?, &parse(&t, &b)?));
        }
        Cmd::Centralizer { t, expr } => {
            let t = load(&t.tower)?;
            let c = t.centralizer(&parse(&t, &expr)?)?;
            println!("rank: {}", c.rank());
            println!("generators: {}", list(&t, &t.subgroup_elements(&c)));
        }
        Cmd::ReduceGens { t, radius, gens } => {
            let t = load(&t.tower)?;
            let y = GenSet::new(&t, &parse_all(&t, &gens)?);
            let r = reduce_genset(&t, &y, ReduceOptions { radius, ..Default::default() });
            println!("steps: {} (bound {})", r.steps, r.bound);
            println!("weight: {} -> {}", y.weight(&t), r.set.weight(&t));
            println!("generators: {}", list(&t, &r.set.elements()));
            for s in r.set.log() {
                let kind = match s.kind {
                    Move::Mu => "mu",
                    Move::Eta => "eta",
                    Move::Nu => "nu",
                    Move::Augment => "augment",
                };
                println!("log: {kind} {}", s.params.join(" | "));
            }
            for (i, g) in r.set.inputs().enumerate() {
                println!("witness: {} = {}", t.render(g), r.set.render_expr(&t, &r.set.witness(i)));
            }
        }
        Cmd::SplitLevel { t, reduce, out, gens } => {
            let t = load(&t.tower)?;
            let mut y = GenSet::new(&t, &parse_all(&t, &gens)?);
            if reduce {
                y = reduce_genset(&t, &y, ReduceOptions::default()).set;
            }
            let s = split_level(&t, &y)?;
            println!("base: {}", list(&t, &s.base_gens));
            for l in &s.letters {
                println!(
                    "letter {} = {}: ⟨{}⟩ -> ⟨{}⟩",
                    l.name,
                    t.render(&l.element),
                    list(&t, &l.source),
                    list(&t, &l.target)
                );
            }
            if !s.letters.is_empty() && !s.verify(&t)? {
                println!("split-level: relations do not survive the rebuild");
                return Ok(false);
            }
            if let Some(p) = out {
                emit(&s.rebuild(&t)?.0, Some(&p))?;
            }
        }
        Cmd::ExtendHnn { t, source, target, name, join_top, out } => {
            let t = load(&t.tower)?;
            let a = AbelianSubgroup::new(parse_all(&t, &source)?);
            let b = AbelianSubgroup::new(parse_all(&t, &target)?);
            let placement = if join_top { Placement::JoinTop } else { Placement::NewLevel };
            let ext = extend_hnn(&t, &a, &b, &name, placement)?;
            let s = ext.requested_letter(&name)?;
            eprintln!("requested letter: {}", ext.tower.render(&s));
            emit(&ext.tower, out.as_deref())?;
        }
        Cmd::CheckAxioms { t, s, radius, lemmas } => {
            let t = load(&t.tower)?;
            let spec = SampleSpec { seed: s.seed, samples: s.samples, radius, ..Default::default() };
            let mut rep = check_axioms(&t, spec);
            if lemmas {
                rep.violations.extend(commutation_suite(&t, spec).violations);
            }
            for v in &rep.violations {
                println!("{v}");
            }
            if !rep.ok() {
                return Ok(false);
            }
            println!("L1..L6 OK ({} samples, seed {})", rep.checked, s.seed);
        }
        Cmd::VerifyPregroup { t, s, gens } => {
            let t = load(&t.tower)?;
            let y = if gens.is_empty() {
                reduce_genset(&t, &GenSet::new(&t, &t.generators()), ReduceOptions::default()).set
            } else {
                GenSet::new(&t, &parse_all(&t, &gens)?)
            };
            let rep = verify_pregroup(&t, &y, s.samples, s.seed);
            for f in rep.failures.iter().take(20) {
                println!("{f}");
            }
            if rep.failures.len() > 20 {
                println!("... {} more", rep.failures.len() - 20);
            }
            if !rep.ok() {
                return Ok(false);
            }
            println!("pregroup OK ({} samples, seed {})", rep.checked, s.seed);
        }
        Cmd::Surface { n } => emit(&factory::surface_orientable(n)?, None)?,
        Cmd::Nonorientable { n } => emit(&factory::surface_nonorientable(n)?, None)?,
        Cmd::Abelian { n } => emit(&factory::free_abelian(n)?, None)?,
        Cmd::FreeProduct { first, second } => emit(&factory::free_product(&load(&first)?, &load(&second)?)?, None)?,
        Cmd::CheckBasis { t, words } => {
            let t = load(&t.tower)?;
            let u = parse_all(&t, &words)?
                .into_iter()
                .map(|e| match e {
                    Element::Word(w) => Ok(w),
                    other => {
                        Err(TowerError::rejected("check-basis", format!("{} is not a base word", t.render(&other))))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            println!("{}", factory::check_regular_basis(&u));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
