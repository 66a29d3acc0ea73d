use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use entangle_core::catalog::{
    is_serre_obstructed, verify_goursat36_suite, verify_groups_suite, verify_prop25_steps, Classifier, ImageData,
};
use entangle_core::curves::{entanglement_scan, specialize_integral, CurveQ};
use entangle_core::density::{correction_factor, hooley_delta, ImageSpec};
use entangle_core::funcfield::{format_rat, invert_j, parse_rat, verify_symbolic_suite};
use entangle_core::groups::{closure, FinGroup, GroupFile};
use entangle_core::modring::Mat2;
use entangle_core::report::Report;
use entangle_core::{Error, Exec};

#[derive(Parser, Debug)]
#[command(
    name = "entangle",
    version,
    about = "Torsion entanglement and Serre-curve computations"
)]
struct Cli {
    /// Append run metadata (version, mode, elapsed time) after the report.
    #[arg(long, global = true)]
    meta: bool,
    /// Run without data parallelism.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Groups,
    Symbolic,
    Prop25,
    Goursat36,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Integral model of the degree-6 family at t.
    Model {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Rational t with j(t) = j0.
    InvertJ {
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
    /// Frobenius sampling of Q(E[2]) in Q(E[3]).
    Scan {
        /// Coefficients "a,b" of y^2 = x^3 + ax + b.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, default_value_t = 10_000)]
        pmax: u64,
        /// Print every prime, not only violations.
        #[arg(long)]
        all: bool,
    },
    /// Classify a level-36 image and test the Serre-curve obstruction.
    Classify {
        #[arg(long, default_value_t = 36)]
        level: u32,
        #[command(flatten)]
        group: GroupArgs,
        /// Generator of a mod-l image, as "l=a,b;c,d"; repeatable.
        #[arg(long = "lgen", allow_hyphen_values = true)]
        lgens: Vec<String>,
    },
    /// Cyclicity density and correction factor of a finite-level image.
    Density {
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 100)]
        cutoff: u32,
    },
}

#[derive(clap::Args, Debug)]
struct GroupArgs {
    /// Generator "a,b;c,d"; repeatable.
    #[arg(long = "gen", allow_hyphen_values = true)]
    gens: Vec<String>,
    /// Group file with a "mod <n>" header and one matrix per line.
    #[arg(long)]
    group_file: Option<PathBuf>,
    /// Treat the file's matrices as generators rather than a full element list.
    #[arg(long)]
    close: bool,
}

enum Outcome {
    Pass,
    Fail,
}

fn input(msg: String) -> Error {
    Error::Input(msg)
}

/// The message of an input error without its prefix, for adding context.
fn bare(e: &Error) -> String {
    match e {
        Error::Input(m) => m.clone(),
        e => e.to_string(),
    }
}

fn parse_gens(gens: &[String], level: u32) -> Result<Vec<Mat2>, Error> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            let m = Mat2::parse(g, level).map_err(|e| input(format!("--gen #{}: {}", i + 1, bare(&e))))?;
            if !m.is_invertible() {
                return Err(input(format!("--gen #{}: {m} is not invertible mod {level}", i + 1)));
            }
            Ok(m)
        })
        .collect()
}

/// Generators from `--gen` and the group file; `None` if neither is given.
fn load_group(args: &GroupArgs, level: u32) -> Result<Option<FinGroup<Mat2>>, Error> {
    let mut gens = parse_gens(&args.gens, level)?;
    if let Some(path) = &args.group_file {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {}", path.display(), e)))?;
        let file = GroupFile::parse(&text).map_err(|e| input(format!("{}: {}", path.display(), bare(&e))))?;
        if file.modulus != level {
            return Err(input(format!(
                "{}: header says mod {}, expected level {level}",
                path.display(),
                file.modulus
            )));
        }
        let group = if args.close { file.close() } else { file.as_closed() }
            .map_err(|e| input(format!("{}: {}", path.display(), bare(&e))))?;
        gens.extend(group.generators().iter().copied());
    } else if gens.is_empty() {
        return Ok(None);
    }
    Ok(Some(closure(&gens, level)?))
}

fn print_report(out: &mut String, r: &Report) -> Outcome {
    out.push_str(&r.to_string());
    if r.all_passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run_suite(out: &mut String, result: Result<Report, Error>) -> Result<Outcome, Error> {
    match result {
        Ok(r) => Ok(print_report(out, &r)),
        Err(Error::Verification { step, detail }) => {
            writeln!(out, "step.{step} = FAIL {detail} (claim: {step})").expect("string write");
            Ok(Outcome::Fail)
        }
        Err(e) => Err(e),
    }
}

fn execute(cli: &Cli, out: &mut String) -> Result<Outcome, Error> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match &cli.command {
        Command::Verify { suite } => {
            let mut ok = true;
            let run = |s: Suite| match s {
                Suite::Groups => verify_groups_suite(exec),
                Suite::Symbolic => Ok(verify_symbolic_suite()),
                Suite::Prop25 => verify_prop25_steps(exec),
                Suite::Goursat36 => verify_goursat36_suite(exec),
                Suite::All => unreachable!("expanded below"),
            };
            let suites = match suite {
                Suite::All => vec![Suite::Groups, Suite::Symbolic, Suite::Prop25, Suite::Goursat36],
                s => vec![*s],
            };
            for s in suites {
                ok &= matches!(run_suite(out, run(s))?, Outcome::Pass);
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Model { t } => {
            let t = parse_rat(t).map_err(|e| input(format!("--t: {}", bare(&e))))?;
            let s = specialize_integral(&t)?;
            let c = &s.curve;
            writeln!(
                out,
                "a={} b={} disc={} j={}",
                format_rat(c.a()),
                format_rat(c.b()),
                format_rat(c.discriminant()),
                format_rat(c.j_invariant())
            )
            .expect("string write");
            writeln!(out, "scale={} cm={}", s.scale, s.cm).expect("string write");
            Ok(Outcome::Pass)
        }
        Command::InvertJ { j } => {
            let j0 = parse_rat(j).map_err(|e| input(format!("--j: {}", bare(&e))))?;
            let roots = invert_j(&j0);
            if roots.is_empty() {
                out.push_str("none\n");
            }
            for t in roots {
                writeln!(out, "t={}", format_rat(&t)).expect("string write");
            }
            Ok(Outcome::Pass)
        }
        Command::Scan { curve, pmax, all } => {
            let e = CurveQ::parse(curve).map_err(|e| input(format!("--curve: {}", bare(&e))))?;
            let scan = entanglement_scan(&e, *pmax, exec)?;
            for r in &scan.records {
                if *all || r.is_violation() {
                    writeln!(out, "{r}").expect("string write");
                }
            }
            writeln!(out, "{}", scan.summary()).expect("string write");
            Ok(if scan.smallest_violation().is_some() {
                Outcome::Fail
            } else {
                Outcome::Pass
            })
        }
        Command::Classify { level, group, lgens } => {
            if *level != 36 {
                return Err(input(format!(
                    "--level: classification is defined at level 36, got {level}"
                )));
            }
            let h = load_group(group, 36)?.ok_or_else(|| input("no generators given".to_string()))?;
            writeln!(out, "image level=36 order={}", h.order()).expect("string write");
            let mut images = ImageData {
                mod_l: Vec::new(),
                mod36: h.generators().to_vec(),
            };
            if images.mod36.is_empty() {
                images.mod36.push(Mat2::identity(36));
            }
            for (i, spec) in lgens.iter().enumerate() {
                let (l, m) = spec
                    .split_once('=')
                    .ok_or_else(|| input(format!("--lgen #{}: expected \"l=a,b;c,d\"", i + 1)))?;
                let l: u32 = l
                    .trim()
                    .parse()
                    .map_err(|_| input(format!("--lgen #{}: bad prime {l:?}", i + 1)))?;
                let m =
                    parse_gens(&[m.to_string()], l).map_err(|e| input(format!("--lgen #{}: {}", i + 1, bare(&e))))?;
                match images.mod_l.iter_mut().find(|x| x.0 == l) {
                    Some(x) => x.1.extend(m),
                    None => images.mod_l.push((l, m)),
                }
            }
            let classifier = Classifier::with_exec(exec)?;
            let c = classifier.classify(&images.mod36)?;
            writeln!(out, "{c}").expect("string write");
            let o = is_serre_obstructed(&images)?;
            writeln!(out, "serre_obstructed={} reason={}", o.obstructed, o.reason).expect("string write");
            Ok(Outcome::Pass)
        }
        Command::Density { level, group, cutoff } => {
            if *level == 0 {
                return Err(input("--level must be positive".to_string()));
            }
            let spec = match load_group(group, *level)? {
                Some(h) => {
                    writeln!(out, "image level={level} order={}", h.order()).expect("string write");
                    ImageSpec::new(h)?
                }
                None => ImageSpec::full(*level)?,
            };
            writeln!(out, "delta {}", hooley_delta(&spec, *cutoff)?).expect("string write");
            writeln!(out, "correction {}", correction_factor(&spec, *cutoff)?).expect("string write");
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut out = String::new();
    let code = match execute(&cli, &mut out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(Error::Verification { step, detail }) => {
            out.push_str(&format!("step.{step} = FAIL {detail} (claim: {step})\n"));
            1
        }
        Err(e) => {
            print!("{out}");
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{out}");
    if cli.meta {
        println!("meta.version={}", env!("CARGO_PKG_VERSION"));
        println!("meta.parallel={}", !cli.sequential && Exec::default().is_parallel());
        println!("meta.elapsed_ms={}", start.elapsed().as_millis());
    }
    ExitCode::from(code)
}
