use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;

use modbasis::generators::{random_structure, GenSpec};
use modbasis::io::{read_document, read_structure, write_document, Document};
use modbasis::minimality::TheoremReport;
use modbasis::semidirect::{verify_ideal, PairingReport};
use modbasis::{
    check_minimality_theorem, components, components_oracle, decompose, find_connection,
    is_minimal, is_mu_multiplicative, pairing, Budget, ConnectionWitness, Error, KModuleStructure,
    ModuleOverAlgebra, Shape,
};

#[derive(Parser)]
#[command(
    name = "modbasis",
    version,
    about = "Decompose k-modules with multiplicative bases"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against every invariant
    Validate { file: PathBuf },
    /// List the connection classes
    Decompose {
        file: PathBuf,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Write a Graphviz rendering of the classes to this file
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Find a chain of steps between two module indices
    Connect {
        file: PathBuf,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Minimality and μ-multiplicativity checks
    #[command(group(ArgGroup::new("which").required(true).args(["minimal", "mu", "theorem2"])))]
    Check {
        file: PathBuf,
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        mu: bool,
        /// Under μ-multiplicativity, compare minimality with connectivity
        #[arg(long)]
        theorem2: bool,
    },
    /// Build and decompose the semidirect sum of an algebra and a module over it
    Semidirect {
        #[arg(long, value_name = "A.json")]
        algebra: PathBuf,
        #[arg(long, value_name = "M.json")]
        action: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a seeded random structure
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "dim-i")]
        dim_i: usize,
        #[arg(long = "dim-j")]
        dim_j: usize,
        #[arg(long)]
        density: f64,
        #[arg(short = 'o', long = "output", value_name = "OUT")]
        output: PathBuf,
    },
    /// Compare the fast decomposition with literal chain search
    Oracle {
        file: PathBuf,
        /// Defaults to twice the module dimension
        #[arg(long = "max-depth")]
        max_depth: Option<usize>,
    },
}

type Outcome = Result<bool, Error>;

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn budget() -> Result<Budget, Error> {
    Budget::from_env()
}

fn warn_if_large(shape: Shape) -> Result<(), Error> {
    let budget = budget()?;
    if shape.placement_count() > budget.get() as u128 {
        eprintln!(
            "warning: {} candidate placements exceed the enumeration budget of {}",
            shape.placement_count(),
            budget.get()
        );
    }
    Ok(())
}

fn load(path: &Path) -> Result<KModuleStructure, Error> {
    let st = read_structure(path)?;
    warn_if_large(st.shape())?;
    Ok(st)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Decompose { file, json, dot } => decompose_cmd(&file, json, dot.as_deref()),
        Command::Connect { file, from, to } => connect(&file, from, to),
        Command::Check {
            file,
            minimal,
            mu,
            theorem2: _,
        } => check(&file, minimal, mu),
        Command::Semidirect {
            algebra,
            action,
            json,
        } => semidirect(&algebra, &action, json),
        Command::Generate {
            seed,
            n,
            k,
            dim_i,
            dim_j,
            density,
            output,
        } => {
            let spec = GenSpec::new(seed, Shape::new(n, k, dim_i, dim_j), density);
            let st = random_structure(&spec, budget()?)?;
            write_document(&Document::KModule(st), &output)?;
            Ok(true)
        }
        Command::Oracle { file, max_depth } => oracle(&file, max_depth),
    }
}

fn validate(file: &Path) -> Outcome {
    match read_document(file) {
        Ok(doc) => {
            if let Document::KModule(st) = &doc {
                warn_if_large(st.shape())?;
            }
            println!("valid");
            Ok(true)
        }
        Err(Error::Validation(report)) => {
            println!("invalid: {} violation(s)", report.len());
            print!("{report}");
            Ok(false)
        }
        Err(other) => Err(other),
    }
}

#[derive(Serialize)]
struct ClassReport {
    representative: usize,
    members: Vec<usize>,
}

#[derive(Serialize)]
struct DecomposeReport {
    module_dim: usize,
    classes: Vec<ClassReport>,
    /// More than one class rules out simplicity.
    not_simple: bool,
}

fn decompose_cmd(file: &Path, json: bool, dot: Option<&Path>) -> Outcome {
    let st = load(file)?;
    let classes: Vec<ClassReport> = decompose(&st)
        .into_iter()
        .map(|c| ClassReport {
            representative: c.representative,
            members: c.members,
        })
        .collect();
    let report = DecomposeReport {
        module_dim: st.module_dim(),
        not_simple: classes.len() >= 2,
        classes,
    };
    if let Some(out) = dot {
        fs::write(out, modbasis::dot::export_dot(&st, &components(&st)))?;
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        println!("module_dim: {}", report.module_dim);
        println!("classes: {}", report.classes.len());
        for c in &report.classes {
            let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
            println!("  [{}] {{{}}}", c.representative, members.join(","));
        }
        println!("not_simple: {}", report.not_simple);
    }
    Ok(true)
}

fn connect(file: &Path, from: usize, to: usize) -> Outcome {
    let st = load(file)?;
    match find_connection(&st, from, to)? {
        None => {
            println!("not connected");
            Ok(false)
        }
        Some(ConnectionWitness::Reflexive) => {
            println!("connected: {from} is connected to itself");
            Ok(true)
        }
        Some(ConnectionWitness::Chain(conn)) => {
            println!("connected: {} step(s) from {from} to {to}", conn.len());
            for (pos, step) in conn.steps().iter().enumerate() {
                println!("  {}: {step}", pos + 1);
            }
            Ok(true)
        }
    }
}

fn check(file: &Path, minimal: bool, mu: bool) -> Outcome {
    let st = load(file)?;
    if minimal {
        let holds = is_minimal(&st);
        println!("{holds}");
        return Ok(holds);
    }
    if mu {
        let report = is_mu_multiplicative(&st);
        println!("{}", report.holds);
        for (a, b) in &report.missing {
            println!("  missing edge ({a}, {b})");
        }
        return Ok(report.holds);
    }
    match check_minimality_theorem(&st)? {
        TheoremReport::Agreement {
            minimal,
            components,
        } => {
            println!("agreement: minimal={minimal}, components={components}");
            Ok(true)
        }
        TheoremReport::HypothesisNotMet {
            minimal,
            components,
            missing,
        } => {
            println!("hypothesis not met: basis is not μ-multiplicative");
            println!("  minimal={minimal}, components={components}");
            for (a, b) in missing {
                println!("  missing edge ({a}, {b})");
            }
            Ok(false)
        }
    }
}

#[derive(Serialize)]
struct CombinedClassReport {
    id: usize,
    module_part: Vec<usize>,
    algebra_part: Vec<usize>,
    algebra_part_is_ideal: bool,
}

#[derive(Serialize)]
struct SemidirectReport {
    classes: Vec<CombinedClassReport>,
    omega_v: Vec<usize>,
    omega_a: Vec<usize>,
    omega_v_active: Vec<usize>,
    omega_a_active: Vec<usize>,
    f: Vec<(usize, usize)>,
    bijection: bool,
    violations: Vec<String>,
}

fn semidirect_report(pair: &ModuleOverAlgebra, report: &PairingReport) -> SemidirectReport {
    let dec = &report.decomposition;
    SemidirectReport {
        classes: dec
            .classes
            .iter()
            .enumerate()
            .map(|(id, c)| CombinedClassReport {
                id,
                module_part: c.module_part.clone(),
                algebra_part: c.algebra_part.clone(),
                algebra_part_is_ideal: verify_ideal(
                    pair.algebra(),
                    &c.algebra_part.iter().copied().collect(),
                ),
            })
            .collect(),
        omega_v: dec.omega_v.clone(),
        omega_a: dec.omega_a.clone(),
        omega_v_active: report.omega_v_active.clone(),
        omega_a_active: report.omega_a_active.clone(),
        f: report.f.iter().map(|(&a, &b)| (a, b)).collect(),
        bijection: report.is_bijection(),
        violations: report.violations.iter().map(ToString::to_string).collect(),
    }
}

fn semidirect(algebra: &Path, action: &Path, json: bool) -> Outcome {
    let algebra = match read_document(algebra)? {
        Document::Algebra(a) => a,
        Document::ModuleOverAlgebra(p) => p.algebra().clone(),
        Document::KModule(_) => {
            return Err(Error::Schema(
                "--algebra expects an n-ary-algebra document".into(),
            ))
        }
    };
    let action = match read_document(action)? {
        Document::KModule(st) => st,
        Document::ModuleOverAlgebra(p) => p.action().clone(),
        Document::Algebra(_) => {
            return Err(Error::Schema("--action expects a k-module document".into()))
        }
    };
    let pair = ModuleOverAlgebra::new(algebra, action)?;
    let report = semidirect_report(&pair, &pairing(&pair));
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        println!("classes: {}", report.classes.len());
        for c in &report.classes {
            println!(
                "  U{}: module {:?} algebra {:?} ideal={}",
                c.id, c.module_part, c.algebra_part, c.algebra_part_is_ideal
            );
        }
        println!("omega_v: {:?}", report.omega_v);
        println!("omega_a: {:?}", report.omega_a);
        println!("omega_v_active: {:?}", report.omega_v_active);
        println!("omega_a_active: {:?}", report.omega_a_active);
        for (a, b) in &report.f {
            println!("  f: U{a} -> U{b}");
        }
        println!("bijection: {}", report.bijection);
        println!("violations: {}", report.violations.len());
        for v in &report.violations {
            println!("  {v}");
        }
    }
    Ok(report.violations.is_empty() && report.classes.iter().all(|c| c.algebra_part_is_ideal))
}

fn oracle(file: &Path, max_depth: Option<usize>) -> Outcome {
    let st = load(file)?;
    let depth = max_depth.unwrap_or(2 * st.module_dim()).max(1);
    let fast = components(&st);
    let slow = components_oracle(&st, depth, budget()?)?;
    if fast == slow {
        println!("agree: {fast} (depth {depth})");
        Ok(true)
    } else {
        println!("disagree at depth {depth}");
        println!("  components: {fast}");
        println!("  oracle:     {slow}");
        Ok(false)
    }
}
