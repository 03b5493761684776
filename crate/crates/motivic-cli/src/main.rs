//! `motivic` — command line front end for the motive pipelines.
//!
//! One subcommand per pipeline: `info`, `charpoly`, `weil`, `shtuka`,
//! `check-thm1`, `check-thm2`, `repr-check`.  Every subcommand accepts
//! `--json` for machine-readable output with a stable schema (documented in
//! the repository README).
//!
//! Exit codes:
//!
//! * `0` — a verdict was computed, including negative and inconclusive ones;
//! * `1` — usage or parse failure (bad flags, malformed files or literals);
//! * `2` — the input violates a hypothesis of the requested pipeline
//!   (height above its bound, bad reduction, guard violations, ...);
//! * `3` — an internal invariant was violated (independent routes
//!   disagreeing, coefficients outside the base ring).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motivic_core::algebra::field::{FFElem, FiniteField};
use motivic_core::algebra::literal::{eval_scalar_poly, parse_expr, render_scalar_poly};
use motivic_core::algebra::poly::Poly;
use motivic_core::algebra::{AlgebraError, Var};
use motivic_core::congruence::{
    check_theorem_main1, check_theorem_main2, BoundContext, CongruenceError,
};
use motivic_core::frobenius::{charpoly_semistable, CharPolyMethod, FrobeniusError};
use motivic_core::io::{parse_motive, parse_repr_pair, parse_targets, MotiveDocument};
use motivic_core::place::{Place, PlaceError, SemiStablePresentation};
use motivic_core::repr::{brauer_nesbitt_equal, trace_equal_criterion, ReprError};
use motivic_core::shtuka::{
    associated_local_shtuka, permutation_normal_form, shtuka_dimension, ti_sum_check, ShtukaError,
};

#[derive(Parser)]
#[command(
    name = "motivic",
    version,
    about = "Exact Frobenius data for effective t-motives over F_q(theta)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shape of a presentation: rank, dimension, weights, height.
    Info(InfoArgs),
    /// Frobenius characteristic polynomial at a finite place.
    Charpoly(CharpolyArgs),
    /// Weil weights of the Frobenius characteristic polynomial.
    Weil(WeilArgs),
    /// Local shtuka at a place above a prime: torsion and tame inertia.
    Shtuka(ShtukaArgs),
    /// Congruence criterion: are two semisimplifications identified?
    CheckThm1(Thm1Args),
    /// Non-existence screening against sums of character powers.
    CheckThm2(Thm2Args),
    /// Compare two group representations by characteristic polynomials.
    ReprCheck(ReprArgs),
}

#[derive(Args)]
struct InfoArgs {
    /// Presentation file.
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Reduce, then multiply the Frobenius twists over the residue field.
    Iterate,
    /// Restriction of scalars down to F_q[t].
    Restrict,
    /// Run both routes and insist they agree.
    Both,
}

impl MethodArg {
    fn to_core(self) -> CharPolyMethod {
        match self {
            MethodArg::Iterate => CharPolyMethod::Iterate,
            MethodArg::Restrict => CharPolyMethod::Restriction,
            MethodArg::Both => CharPolyMethod::Both,
        }
    }

    fn label(self) -> &'static str {
        match self {
            MethodArg::Iterate => "iterate",
            MethodArg::Restrict => "restrict",
            MethodArg::Both => "both",
        }
    }
}

#[derive(Args)]
struct CharpolyArgs {
    /// Presentation file.
    file: PathBuf,
    /// Place of K as a monic polynomial literal in `th`.
    #[arg(long)]
    place: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WeilArgs {
    /// Presentation file.
    file: PathBuf,
    /// Place of K as a monic polynomial literal in `th`.
    #[arg(long)]
    place: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ShtukaArgs {
    /// Presentation file.
    file: PathBuf,
    /// Place of K as a monic polynomial literal in `th`; must lie above
    /// the prime.
    #[arg(long)]
    place: String,
    /// Prime of F_q[t] as a monic polynomial literal in `t`.
    #[arg(long)]
    prime: String,
    /// Height bound for the tame inertia digits [default: the height of
    /// the presentation].
    #[arg(long)]
    height: Option<usize>,
    /// pi-adic working precision [default: 16, or MOTIVIC_PRECISION].
    #[arg(long)]
    prec_pi: Option<usize>,
    /// z-adic working precision [default: 8, or MOTIVIC_PRECISION].
    #[arg(long)]
    prec_z: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Thm1Args {
    /// Left presentation file.
    file_a: PathBuf,
    /// Right presentation file.
    file_b: PathBuf,
    /// Comparison place of K as a monic polynomial literal in `th`.
    #[arg(long = "place-v")]
    place_v: String,
    /// Congruence prime of F_q[t] as a monic polynomial literal in `t`;
    /// the auxiliary place is the unique place of K above it.
    #[arg(long)]
    prime: String,
    /// Height bound for the left side [default: its computed height].
    #[arg(long)]
    height: Option<usize>,
    /// Height bound for the right side [default: its computed height].
    #[arg(long = "height-right")]
    height_right: Option<usize>,
    /// Synthetic bound context `i=1,dk=1,e=1` (inseparable degree,
    /// discriminant bound, ramification index).
    #[arg(long)]
    ctx: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// pi-adic working precision [default: 16, or MOTIVIC_PRECISION].
    #[arg(long)]
    prec_pi: Option<usize>,
    /// z-adic working precision [default: 8, or MOTIVIC_PRECISION].
    #[arg(long)]
    prec_z: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Thm2Args {
    /// Candidate presentation file.
    file: PathBuf,
    /// Targets file: one rank-one factor with exponent per line.
    #[arg(long)]
    targets: PathBuf,
    /// Comparison place of K as a monic polynomial literal in `th`.
    #[arg(long = "place-v")]
    place_v: String,
    /// Congruence prime of F_q[t] as a monic polynomial literal in `t`.
    #[arg(long)]
    prime: String,
    /// Height bound [default: the computed height].
    #[arg(long)]
    height: Option<usize>,
    /// Synthetic bound context `i=1,dk=1,e=1`.
    #[arg(long)]
    ctx: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReprArgs {
    /// Representation pair file.
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

/// A failed run with its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Hypothesis(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Hypothesis(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Hypothesis(m) | Failure::Internal(m) => m,
        }
    }
}

fn map_place(e: PlaceError) -> Failure {
    // everything the place layer rejects is a violated precondition of the
    // requested pipeline
    Failure::Hypothesis(e.to_string())
}

fn map_algebra(e: AlgebraError) -> Failure {
    Failure::Internal(e.to_string())
}

fn map_frob(e: FrobeniusError) -> Failure {
    match e {
        FrobeniusError::NotGoodReduction(_)
        | FrobeniusError::ZeroRoot
        | FrobeniusError::NotMonic => Failure::Hypothesis(e.to_string()),
        FrobeniusError::Place(p) => map_place(p),
        FrobeniusError::Algebra(a) => map_algebra(a),
        FrobeniusError::CoefficientNotInBase(_)
        | FrobeniusError::UnexpectedPower(_)
        | FrobeniusError::RouteMismatch(_) => Failure::Internal(e.to_string()),
    }
}

fn map_shtuka(e: ShtukaError) -> Failure {
    match e {
        ShtukaError::NotGoodAtU(_)
        | ShtukaError::PrecisionExhausted(_)
        | ShtukaError::NotCyclicShape(_)
        | ShtukaError::HeightViolation { .. }
        | ShtukaError::ExponentOutOfRange(_)
        | ShtukaError::GuardViolated(_) => Failure::Hypothesis(e.to_string()),
        ShtukaError::Place(p) => map_place(p),
        ShtukaError::Algebra(a) => map_algebra(a),
    }
}

fn map_congruence(e: CongruenceError) -> Failure {
    match e {
        CongruenceError::Internal(_) => Failure::Internal(e.to_string()),
        _ => Failure::Hypothesis(e.to_string()),
    }
}

fn map_repr(e: ReprError) -> Failure {
    Failure::Hypothesis(e.to_string())
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_motive(path: &Path) -> Result<MotiveDocument, Failure> {
    let src = read_file(path)?;
    parse_motive(&src).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// A presentation file without a `blocks` line is read as a single block.
fn semistable_of(doc: &MotiveDocument) -> Result<SemiStablePresentation, Failure> {
    let blocks = doc
        .blocks
        .clone()
        .unwrap_or_else(|| vec![doc.motive.rank()]);
    SemiStablePresentation::new(doc.motive.clone(), blocks).map_err(map_place)
}

fn parse_poly_flag(
    flag: &str,
    text: &str,
    var: Var,
    field: &Arc<FiniteField>,
) -> Result<Poly<FFElem>, Failure> {
    let expr = parse_expr(text).map_err(|e| {
        Failure::Usage(format!(
            "{flag} `{text}`: {} (offset {})",
            e.message, e.pos
        ))
    })?;
    eval_scalar_poly(&expr, var, field)
        .map_err(|e| Failure::Usage(format!("{flag} `{text}`: {e}")))
}

fn place_flag(flag: &str, text: &str, field: &Arc<FiniteField>) -> Result<Place, Failure> {
    let gen = parse_poly_flag(flag, text, Var::Theta, field)?;
    Place::from_prime(gen).map_err(map_place)
}

/// Resolve the series working precision: built-in default, overridden by
/// `MOTIVIC_PRECISION` (either `N` for both or `N_pi,N_z`), overridden by
/// the explicit flags.
fn resolve_precision(
    prec_pi: Option<usize>,
    prec_z: Option<usize>,
) -> Result<(usize, usize), Failure> {
    let (mut pi, mut z) = (16usize, 8usize);
    if let Ok(s) = std::env::var("MOTIVIC_PRECISION") {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || {
            Failure::Usage(format!(
                "MOTIVIC_PRECISION `{s}`: expected `N` or `N_pi,N_z` with positive integers"
            ))
        };
        match parts.as_slice() {
            [one] => {
                let n: usize = one.parse().map_err(|_| bad())?;
                pi = n;
                z = n;
            }
            [a, b] => {
                pi = a.parse().map_err(|_| bad())?;
                z = b.parse().map_err(|_| bad())?;
            }
            _ => return Err(bad()),
        }
    }
    if let Some(p) = prec_pi {
        pi = p;
    }
    if let Some(p) = prec_z {
        z = p;
    }
    if pi == 0 || z == 0 {
        return Err(Failure::Usage(
            "series precision must be at least 1".to_string(),
        ));
    }
    Ok((pi, z))
}

/// Parse `--ctx i=1,dk=1,e=1` (all keys optional, defaults 1).
fn parse_ctx(text: Option<&str>) -> Result<BoundContext, Failure> {
    let mut ctx = BoundContext::default();
    let Some(text) = text else {
        return Ok(ctx);
    };
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((key, value)) = part.split_once('=') else {
            return Err(Failure::Usage(format!(
                "--ctx entry `{part}`: expected `key=value`"
            )));
        };
        let value: u64 = value.trim().parse().map_err(|_| {
            Failure::Usage(format!("--ctx entry `{part}`: value must be an integer"))
        })?;
        match key.trim() {
            "i" => ctx.insep_degree = value,
            "dk" => ctx.discriminant_bound = value,
            "e" => ctx.ram_index = value,
            other => {
                return Err(Failure::Usage(format!(
                    "--ctx key `{other}`: expected one of i, dk, e"
                )))
            }
        }
    }
    Ok(ctx)
}

fn cmd_info(args: &InfoArgs) -> Result<(), Failure> {
    let doc = load_motive(&args.file)?;
    print!("{}", report::info(&doc, args.json));
    Ok(())
}

fn cmd_charpoly(args: &CharpolyArgs) -> Result<(), Failure> {
    let doc = load_motive(&args.file)?;
    let ss = semistable_of(&doc)?;
    let field = doc.motive.field().clone();
    let place = place_flag("--place", &args.place, &field)?;
    let cp = charpoly_semistable(&ss, &place, args.method.to_core()).map_err(map_frob)?;
    print!("{}", report::charpoly(&cp, args.method.label(), args.json));
    Ok(())
}

fn cmd_weil(args: &WeilArgs) -> Result<(), Failure> {
    let doc = load_motive(&args.file)?;
    let ss = semistable_of(&doc)?;
    let field = doc.motive.field().clone();
    let place = place_flag("--place", &args.place, &field)?;
    let cp = charpoly_semistable(&ss, &place, args.method.to_core()).map_err(map_frob)?;
    let weights = cp.weil_weights().map_err(map_frob)?;
    print!("{}", report::weil(&cp, &weights, args.json));
    Ok(())
}

fn cmd_shtuka(args: &ShtukaArgs) -> Result<(), Failure> {
    let doc = load_motive(&args.file)?;
    let motive = &doc.motive;
    let field = motive.field().clone();
    let place = place_flag("--place", &args.place, &field)?;
    let prime = parse_poly_flag("--prime", &args.prime, Var::T, &field)?;
    // over F_q(theta) the place above the prime reads the same coefficients
    // in theta; anything else is not a place above this prime
    if place.generator().coeffs() != prime.coeffs() {
        return Err(Failure::Hypothesis(format!(
            "place `{}` does not lie above the prime `{}`",
            render_scalar_poly(place.generator()),
            render_scalar_poly(&prime)
        )));
    }
    let (prec_pi, prec_z) = resolve_precision(args.prec_pi, args.prec_z)?;
    let height = args.height.unwrap_or_else(|| motive.height());
    let sh = associated_local_shtuka(motive, &place, prec_pi, prec_z).map_err(map_shtuka)?;
    let dimension = shtuka_dimension(&sh).map_err(map_shtuka)?;
    let torsion = sh.torsion_mod_z();
    let normal_form = permutation_normal_form(&torsion, None).map_err(map_shtuka)?;
    let ti = ti_sum_check(&sh, height).map_err(map_shtuka)?;
    print!(
        "{}",
        report::shtuka(report::ShtukaReport {
            place: &place,
            prime: &prime,
            shtuka: &sh,
            dimension,
            height,
            precision: (prec_pi, prec_z),
            torsion: &torsion,
            normal_form: &normal_form,
            ti: &ti,
            json: args.json,
        })
    );
    Ok(())
}

fn cmd_check_thm1(args: &Thm1Args) -> Result<(), Failure> {
    let doc_left = load_motive(&args.file_a)?;
    let doc_right = load_motive(&args.file_b)?;
    let field = doc_left.motive.field().clone();
    let left = semistable_of(&doc_left)?;
    let right = semistable_of(&doc_right)?;
    let v = place_flag("--place-v", &args.place_v, &field)?;
    let prime = parse_poly_flag("--prime", &args.prime, Var::T, &field)?;
    let h = args.height.unwrap_or_else(|| doc_left.motive.height());
    let h_right = args
        .height_right
        .unwrap_or_else(|| doc_right.motive.height());
    let ctx = parse_ctx(args.ctx.as_deref())?;
    let precision = resolve_precision(args.prec_pi, args.prec_z)?;
    let verdict = check_theorem_main1(
        &left,
        &right,
        &v,
        &prime,
        h,
        h_right,
        &ctx,
        args.method.to_core(),
        precision,
    )
    .map_err(map_congruence)?;
    print!(
        "{}",
        report::thm1(&verdict, &v, &prime, h, h_right, &ctx, args.json)
    );
    Ok(())
}

fn cmd_check_thm2(args: &Thm2Args) -> Result<(), Failure> {
    let doc = load_motive(&args.file)?;
    let field = doc.motive.field().clone();
    let ss = semistable_of(&doc)?;
    let v = place_flag("--place-v", &args.place_v, &field)?;
    let prime = parse_poly_flag("--prime", &args.prime, Var::T, &field)?;
    let targets_src = read_file(&args.targets)?;
    let (targets_field, entries) = parse_targets(&targets_src)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.targets.display())))?;
    if targets_field.order() != field.order() {
        return Err(Failure::Hypothesis(format!(
            "targets are over F_{} but the presentation is over F_{}",
            targets_field.order(),
            field.order()
        )));
    }
    let targets: Vec<(motivic_core::MotivePresentation, u64)> = entries
        .iter()
        .map(|t| (t.motive.clone(), t.exponent))
        .collect();
    let h = args.height.unwrap_or_else(|| doc.motive.height());
    let ctx = parse_ctx(args.ctx.as_deref())?;
    let verdict = check_theorem_main2(&ss, &v, &prime, h, &ctx, &targets, args.method.to_core())
        .map_err(map_congruence)?;
    print!(
        "{}",
        report::thm2(&verdict, &v, &prime, h, &ctx, &entries, args.json)
    );
    Ok(())
}

fn cmd_repr_check(args: &ReprArgs) -> Result<(), Failure> {
    let src = read_file(&args.file)?;
    let (a, b) = parse_repr_pair(&src)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.file.display())))?;
    let equal = brauer_nesbitt_equal(&a, &b).map_err(map_repr)?;
    let trace = trace_equal_criterion(&a, &b).map_err(map_repr)?;
    print!("{}", report::repr_check(&a, equal, &trace, args.json));
    Ok(())
}

fn run(cmd: &Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Info(args) => cmd_info(args),
        Cmd::Charpoly(args) => cmd_charpoly(args),
        Cmd::Weil(args) => cmd_weil(args),
        Cmd::Shtuka(args) => cmd_shtuka(args),
        Cmd::CheckThm1(args) => cmd_check_thm1(args),
        Cmd::CheckThm2(args) => cmd_check_thm2(args),
        Cmd::ReprCheck(args) => cmd_repr_check(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here as non-error kinds
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ctx_strings_parse_and_reject() {
        let ctx = parse_ctx(Some("i=2, dk=7,e=1")).unwrap();
        assert_eq!(ctx.insep_degree, 2);
        assert_eq!(ctx.discriminant_bound, 7);
        assert_eq!(ctx.ram_index, 1);
        assert_eq!(parse_ctx(None).unwrap().insep_degree, 1);
        assert!(parse_ctx(Some("j=2")).is_err());
        assert!(parse_ctx(Some("i")).is_err());
        assert!(parse_ctx(Some("i=x")).is_err());
    }

    #[test]
    fn precision_resolution_prefers_flags() {
        // no env manipulation here: the env var belongs to integration
        // tests, which own their process environment
        let (pi, z) = resolve_precision(None, None).unwrap();
        assert_eq!((pi, z), (16, 8));
        let (pi, z) = resolve_precision(Some(20), None).unwrap();
        assert_eq!((pi, z), (20, 8));
        assert!(resolve_precision(Some(0), None).is_err());
    }

    #[test]
    fn failures_carry_their_exit_codes() {
        assert_eq!(Failure::Usage(String::new()).code(), 1);
        assert_eq!(Failure::Hypothesis(String::new()).code(), 2);
        assert_eq!(Failure::Internal(String::new()).code(), 3);
    }
}
