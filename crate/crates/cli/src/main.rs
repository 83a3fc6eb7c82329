use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use twisted_torsion::algebra::{set_runtime_modulus, FieldSpec, Fp, GaussRational, Rational, RuntimeModulus, ScalarField};
use twisted_torsion::fox::{abelianization, knot_table, GroupPresentation};
use twisted_torsion::invariants::{
    alexander_order, degree_parity_check, palindromic_normalize, symmetry_check, wada_invariant,
};
use twisted_torsion::report::{
    InvariantReport, OrdersRecord, PalindromeRecord, ParityRecord, SymmetryRecord,
};
use twisted_torsion::reps::{enumerate_sl2_reps, RepText, Representation};
use twisted_torsion::selftest::{run_selftest_with, SelftestOptions, SelftestReport};
use twisted_torsion::Error;

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "twalex", version, about = "Twisted Alexander polynomials and Reidemeister torsion of knot and link groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Twisted invariant, its degree and the twisted orders.
    Compute(Input),
    /// Twisted Alexander orders Δ0 and Δ1 (one-variable φ only).
    Orders(Input),
    /// Symmetry of the invariant under t ↦ t^{-1} with the unit classified.
    CheckSymmetry(Input),
    /// deg τ ≡ d·x(φ) (mod 2), with x(φ) from the presentation metadata.
    CheckParity(Input),
    /// Symmetric form Σ a_i (t^{-i} + t^i) of a polynomial invariant.
    Palindrome(Input),
    /// All SL(2, F_p) representations of a two-generator presentation.
    Enumerate(EnumerateArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false, args = ["knot", "presentation"])]
struct Source {
    /// Built-in table entry: unknot, trefoil, figure8, 5_2, hopf, whitehead.
    #[arg(long)]
    knot: Option<String>,
    /// Presentation file.
    #[arg(long)]
    presentation: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Representation file; the trivial 1-dimensional representation if absent.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Coefficient field: Q, Qi or Fp:<prime>.
    #[arg(long)]
    field: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    source: Source,
    /// Prime: 3, 5 or 7.
    #[arg(long)]
    prime: u32,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SelftestArgs {
    /// Worker threads for the corpus checks.
    #[arg(long)]
    jobs: Option<usize>,
    /// Replace a table entry with a presentation file (NAME=FILE).
    #[arg(long, hide = true)]
    inject: Vec<String>,
    #[command(flatten)]
    output: Output,
}

/// Failure of a command, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) => CHECK_FAILED,
            _ => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: INPUT_ERROR, message }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn load_presentation(src: &Source) -> Result<(String, GroupPresentation), Failure> {
    match (&src.knot, &src.presentation) {
        (Some(name), None) => Ok((name.clone(), knot_table(name)?)),
        (None, Some(path)) => {
            let p = GroupPresentation::parse(&read(path)?)
                .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let name = p.name.clone().unwrap_or_else(|| {
                path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
            });
            Ok((name, p))
        }
        _ => Err(input_error("exactly one of --knot and --presentation is required".into())),
    }
}

fn emit(output: &Output, json: &str, text: &str) -> Result<(), Failure> {
    if let Some(path) = &output.out {
        fs::write(path, json).map_err(|e| input_error(format!("cannot write {}: {e}", path.display())))?;
    }
    if output.json {
        print!("{json}");
    } else {
        print!("{text}");
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Compute,
    Orders,
    Symmetry,
    Parity,
    Palindrome,
}

fn run_invariant<K: ScalarField>(
    mode: Mode,
    name: &str,
    p: &GroupPresentation,
    rep_text: Option<&str>,
    output: &Output,
) -> Outcome {
    let rep = match rep_text {
        Some(t) => Representation::<K>::parse(t, Some(p))?,
        None => Representation::<K>::trivial(p.generator_count(), 1),
    };
    let phi = abelianization(p)?;
    let w = wada_invariant(p, &rep, &phi)?;
    let inv = &w.invariant;
    let mut report = InvariantReport::new(name, p, &rep, inv, w.acyclic);
    let mut code = OK;
    match mode {
        Mode::Compute | Mode::Orders => {
            if phi.rank() == 1 {
                let d0 = alexander_order(p, &rep, &phi, 0)?;
                let d1 = alexander_order(p, &rep, &phi, 1)?;
                report.orders = Some(OrdersRecord::new(&d0, &d1, inv)?);
            } else if mode == Mode::Orders {
                return Err(Error::NotUnivariate(phi.rank()).into());
            }
        }
        Mode::Symmetry => {
            if inv.is_zero() {
                return Err(input_error("the invariant is zero; symmetry is not defined".into()));
            }
            let s = symmetry_check(inv, p, &rep, &phi, p.b0())?;
            code = if s.holds {
                OK
            } else if s.inconclusive {
                INCONCLUSIVE
            } else {
                CHECK_FAILED
            };
            report.symmetry = Some(SymmetryRecord::new(&s));
        }
        Mode::Parity => {
            if p.generator_count() == 1 && p.relators().is_empty() {
                return Err(Error::Hypothesis("degree parity excludes the solid torus (group Z)".into()).into());
            }
            let x = p
                .thurston_norm
                .ok_or_else(|| input_error(format!("{name}: no `thurston:` value in the presentation")))?;
            let holds = degree_parity_check(inv, rep.dim(), x)?;
            code = if holds { OK } else { CHECK_FAILED };
            report.parity = Some(ParityRecord { d: rep.dim(), x_phi: x, degree: inv.degree()?, holds });
        }
        Mode::Palindrome => {
            let pal = palindromic_normalize(inv)?;
            code = if pal.is_some() { OK } else { CHECK_FAILED };
            report.palindrome = Some(PalindromeRecord::new(pal.as_ref()));
        }
    }
    emit(output, &report.to_json(), &report.to_text())?;
    Ok(code)
}

fn field_for(input: &Input, rep_text: Option<&str>) -> Result<FieldSpec, Failure> {
    let from_flag = input.field.as_deref().map(str::parse::<FieldSpec>).transpose()?;
    let from_rep = rep_text.map(|t| RepText::parse(t).and_then(|r| r.field.parse::<FieldSpec>())).transpose()?;
    match (from_flag, from_rep) {
        (Some(a), Some(b)) if a != b => {
            Err(Error::FieldMismatch { expected: a.to_string(), found: b.to_string() }.into())
        }
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(FieldSpec::Rationals),
    }
}

fn invariant_command(mode: Mode, input: &Input) -> Outcome {
    let (name, p) = load_presentation(&input.source)?;
    let rep_text = input.rep.as_deref().map(read).transpose()?;
    let rep_text = rep_text.as_deref();
    match field_for(input, rep_text)? {
        FieldSpec::Rationals => run_invariant::<Rational>(mode, &name, &p, rep_text, &input.output),
        FieldSpec::GaussianRationals => run_invariant::<GaussRational>(mode, &name, &p, rep_text, &input.output),
        FieldSpec::Prime(q) => {
            set_runtime_modulus(q)?;
            run_invariant::<Fp<RuntimeModulus>>(mode, &name, &p, rep_text, &input.output)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EnumeratedRecord {
    index: usize,
    irreducible: bool,
    images: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct EnumerationReport {
    presentation: String,
    field: String,
    count: usize,
    irreducible: usize,
    representations: Vec<EnumeratedRecord>,
}

fn enumerate_command(args: &EnumerateArgs) -> Outcome {
    let (name, p) = load_presentation(&args.source)?;
    if ![3, 5, 7].contains(&args.prime) {
        return Err(input_error(format!("--prime {} is not supported (3, 5 or 7)", args.prime)));
    }
    set_runtime_modulus(args.prime)?;
    let pool = jobs_pool(args.jobs)?;
    let reps = pool.install(|| enumerate_sl2_reps::<Fp<RuntimeModulus>>(&p))?;
    let representations: Vec<EnumeratedRecord> = reps
        .iter()
        .enumerate()
        .map(|(index, e)| EnumeratedRecord {
            index,
            irreducible: e.irreducible,
            images: e
                .rep
                .images()
                .iter()
                .map(|m| m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect())
                .collect(),
        })
        .collect();
    let report = EnumerationReport {
        presentation: name,
        field: format!("Fp:{}", args.prime),
        count: reps.len(),
        irreducible: reps.iter().filter(|e| e.irreducible).count(),
        representations,
    };
    let mut text = format!(
        "{}: {} representations into SL(2, F_{}), {} irreducible\n",
        report.presentation, report.count, args.prime, report.irreducible
    );
    for r in &report.representations {
        let imgs: Vec<String> = r
            .images
            .iter()
            .zip(p.generators())
            .map(|(m, g)| {
                let rows: Vec<String> = m.iter().map(|row| row.join(" ")).collect();
                format!("{g} = [{}]", rows.join("; "))
            })
            .collect();
        text += &format!(
            "{:>5}  {:<11}  {}\n",
            r.index,
            if r.irreducible { "irreducible" } else { "reducible" },
            imgs.join("  ")
        );
    }
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    emit(&args.output, &json, &text)?;
    Ok(OK)
}

fn jobs_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(input_error("--jobs must be positive".into()));
        }
        b = b.num_threads(j);
    }
    b.build().map_err(|e| input_error(format!("thread pool: {e}")))
}

fn selftest_command(args: &SelftestArgs) -> Outcome {
    let mut overrides = BTreeMap::new();
    for spec in &args.inject {
        let (name, path) =
            spec.split_once('=').ok_or_else(|| input_error(format!("--inject expects NAME=FILE, got `{spec}`")))?;
        let p = GroupPresentation::parse(&read(Path::new(path))?)
            .map_err(|e| input_error(format!("{path}: {e}")))?;
        overrides.insert(name.to_string(), p);
    }
    if args.jobs == Some(0) {
        return Err(input_error("--jobs must be positive".into()));
    }
    let opts = SelftestOptions { jobs: args.jobs, overrides };
    let quiet = args.output.json;
    let report = run_selftest_with(&opts, |c| {
        if !quiet {
            println!("{}", SelftestReport::line(c));
        }
    })?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    emit(&args.output, &json, "")?;
    Ok(if report.any_failed() {
        CHECK_FAILED
    } else if report.all_passed() {
        OK
    } else {
        INCONCLUSIVE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(i) => invariant_command(Mode::Compute, i),
        Command::Orders(i) => invariant_command(Mode::Orders, i),
        Command::CheckSymmetry(i) => invariant_command(Mode::Symmetry, i),
        Command::CheckParity(i) => invariant_command(Mode::Parity, i),
        Command::Palindrome(i) => invariant_command(Mode::Palindrome, i),
        Command::Enumerate(a) => enumerate_command(a),
        Command::Selftest(a) => selftest_command(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
