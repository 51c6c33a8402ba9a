//! Command-line front end: every operation of the library behind a
//! subcommand with stable JSON output.
//!
//! Exit codes: 0 = computed, 1 = domain error (JSON error object on
//! stdout), 2 = usage error (from the argument parser).

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

mod wire;

use defdatum::algebra::Field;
use defdatum::dessins::{
    build_tree, combinatorial_type_m1, combinatorial_type_m2, count_classes,
    search_generating_systems, tree_to_generating_system, CombinatorialType, CycleType,
};
use defdatum::forms::{goodness, goodness_over_splitting_field, EquivariantContext};
use defdatum::search::{
    m2_reduce, nonprimitive_datum, primitive_datum, search_good_deformation, verify_m2_branching,
    PoleConfiguration, SearchOptions, DEFAULT_CANDIDATE_CAP,
};
use defdatum::types::{
    decide_lifting, enumerate_lifts, existence_window, necessary_conditions,
    nonexistence_certificate, LiftedType, ResidueType,
};

#[derive(Parser)]
#[command(
    name = "defdatum",
    about = "Exact search and verification tools for logarithmic differential forms \
             with a unique zero over small finite fields",
    version
)]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for search subcommands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a zero-sum integer tuple is realizable as a
    /// bicolored weighted plane tree (equivalently, by a three-point
    /// cover of matching cycle data).
    Realizable(RealizableArgs),
    /// Build a weighted plane tree with the given signed valencies.
    Tree(TreeArgs),
    /// Brute-force search over generating systems (permutation triples).
    #[command(subcommand)]
    Dessin(DessinCmd),
    /// Residue-type canonicalization and equivalence.
    #[command(subcommand)]
    Type(TypeCmd),
    /// Construct, search for, and verify good forms.
    #[command(subcommand)]
    Defdatum(DefdatumCmd),
    /// Local lifting decision from (p, m, h).
    #[command(subcommand)]
    Lift(LiftCmd),
    /// Order-2 symmetry reduction and its branching checks.
    #[command(subcommand)]
    M2(M2Cmd),
}

#[derive(Args)]
struct RealizableArgs {
    /// Comma-separated nonzero integers summing to zero, e.g. 2,4,-3,-2,-1.
    #[arg(long, allow_hyphen_values = true)]
    lift: String,
}

#[derive(Args)]
struct TreeArgs {
    #[arg(long, allow_hyphen_values = true)]
    lift: String,
    /// Additionally print DOT after the JSON line.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum DessinCmd {
    /// List generating systems of the given combinatorial type.
    Search(DessinArgs),
    /// Count them up to simultaneous conjugation.
    Count(DessinArgs),
    /// The combinatorial type forced by an integer lift.
    Type(DessinTypeArgs),
}

#[derive(Args)]
struct DessinTypeArgs {
    #[arg(long, allow_hyphen_values = true)]
    lift: String,
    /// Use the order-2 reduction shape (all-positive lift) instead of the
    /// zero-sum shape.
    #[arg(long)]
    m2: bool,
}

#[derive(Args)]
struct DessinArgs {
    /// Degree of the permutations.
    #[arg(long)]
    n: u64,
    /// Cycle type over 0, 1s may be omitted, e.g. 4,2.
    #[arg(long)]
    c1: String,
    /// Cycle type over 1.
    #[arg(long)]
    c2: String,
    /// Cycle type over infinity.
    #[arg(long)]
    c3: String,
    /// Stop after this many systems (search only).
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Subcommand)]
enum TypeCmd {
    /// Canonical form of a residue tuple.
    Canon(TypeArgs),
    /// Equivalence of two residue tuples.
    Equiv(TypeEquivArgs),
    /// Integer lifts: enumeration and the two certificates.
    Lifts(TypeLiftsArgs),
}

#[derive(Args)]
struct TypeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    /// Comma-separated residues mod p.
    #[arg(long)]
    entries: String,
}

#[derive(Args)]
struct TypeEquivArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct TypeLiftsArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    entries: String,
    /// Bound on |A_i|; defaults to max(3p, 3 max entry).
    #[arg(long)]
    bound: Option<u64>,
    /// Stop after this many lifts.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Subcommand)]
enum DefdatumCmd {
    /// Closed-form good datum of conductor h.
    Construct(ConstructArgs),
    /// Exhaustive search for good forms of a prescribed type.
    Search(SearchArgs),
    /// Goodness analysis of an explicit form.
    Verify(VerifyArgs),
    /// Screen (p, m, h) against the necessary conditions.
    Screen(ScreenArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    h: u64,
    /// Force the primitive construction (default: primitive unless m | h).
    #[arg(long)]
    primitive: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    /// Residue type entries, e.g. 1,1,4,4.
    #[arg(long = "type")]
    residue_type: String,
    /// Extension degree d of the coefficient field F_{p^d}.
    #[arg(long, default_value_t = 1)]
    ext: usize,
    /// Candidate cap (also via DEFDATUM_MAX_CANDIDATES).
    #[arg(long)]
    cap: Option<u128>,
    /// Resume the scan from this candidate rank.
    #[arg(long, default_value_t = 0)]
    start_offset: u128,
    /// Emit each solution's form in the standard JSON schema.
    #[arg(long)]
    emit_witness: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    /// Numerator coefficients, lowest degree first.
    #[arg(long, allow_hyphen_values = true)]
    num: String,
    /// Denominator coefficients, lowest degree first.
    #[arg(long, allow_hyphen_values = true)]
    den: String,
    /// Parse coefficients over F_{p^d} instead of F_p.
    #[arg(long, default_value_t = 1)]
    ext: usize,
}

#[derive(Args)]
struct ScreenArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    h: u64,
}

#[derive(Subcommand)]
enum LiftCmd {
    /// Decide the local lifting problem.
    Decide(ScreenArgs),
}

#[derive(Subcommand)]
enum M2Cmd {
    /// Reduce a configuration by the order-2 symmetry and verify the
    /// branching structure of the descended cover.
    Verify(M2VerifyArgs),
}

#[derive(Args)]
struct M2VerifyArgs {
    #[arg(long)]
    p: u64,
    /// Extension degree for the pole coordinates.
    #[arg(long, default_value_t = 1)]
    ext: usize,
    /// All-positive integer lift, e.g. 1,1,3.
    #[arg(long)]
    lift: String,
    /// Pole orbit representatives, e.g. `1,[2,2],[6,4]`.
    #[arg(long)]
    poles: String,
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // A search partitions its candidate space across this pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli.command) {
        Ok((value, trailer)) => {
            print_json(&value, cli.pretty);
            if let Some(text) = trailer {
                print!("{text}");
            }
        }
        Err(err) => {
            print_json(&json!({ "error": err }), cli.pretty);
            std::process::exit(1);
        }
    }
}

fn print_json(value: &Value, pretty: bool) {
    let rendered = if pretty {
        serde_json::to_string_pretty(value).expect("serializable output")
    } else {
        serde_json::to_string(value).expect("serializable output")
    };
    println!("{rendered}");
}

type Rendered = (Value, Option<String>);

fn run(command: &Command) -> Result<Rendered, String> {
    let plain = |value: Value| Ok((value, None));
    match command {
        Command::Realizable(args) => {
            let lift = parse_lift(&args.lift)?;
            let ok = defdatum::types::realizable(&lift).map_err(|e| e.to_string())?;
            let (n, k) = lift.stats();
            plain(json!({ "realizable": ok, "n": n, "k": k }))
        }
        Command::Tree(args) => {
            let lift = parse_lift(&args.lift)?;
            let tree = build_tree(&lift).map_err(|e| e.to_string())?;
            let system = tree_to_generating_system(&tree).map_err(|e| e.to_string())?;
            let ct = system.combinatorial_type();
            let value = json!({
                "tree": tree,
                "system": system,
                "combinatorial_type": ct,
                "genus": ct.genus().map_err(|e| e.to_string())?,
            });
            let trailer = args.dot.then(|| tree.to_dot());
            Ok((value, trailer))
        }
        Command::Dessin(cmd) => match cmd {
            DessinCmd::Search(args) => {
                let ct = parse_combinatorial_type(args)?;
                let systems =
                    search_generating_systems(&ct, args.limit).map_err(|e| e.to_string())?;
                plain(json!({
                    "n": ct.n,
                    "count": systems.len(),
                    "systems": systems,
                }))
            }
            DessinCmd::Count(args) => {
                let ct = parse_combinatorial_type(args)?;
                let classes = count_classes(&ct).map_err(|e| e.to_string())?;
                plain(json!({ "n": ct.n, "classes": classes }))
            }
            DessinCmd::Type(args) => {
                let lift = parse_lift(&args.lift)?;
                let ct = if args.m2 {
                    combinatorial_type_m2(&lift)
                } else {
                    combinatorial_type_m1(&lift)
                }
                .map_err(|e| e.to_string())?;
                plain(json!({
                    "type": ct,
                    "genus": ct.genus().map_err(|e| e.to_string())?,
                }))
            }
        },
        Command::Type(cmd) => match cmd {
            TypeCmd::Canon(args) => {
                let t = parse_type(args.p, args.m, &args.entries)?;
                plain(json!({
                    "p": t.p(),
                    "m": t.m(),
                    "entries": t.entries(),
                }))
            }
            TypeCmd::Equiv(args) => {
                let a = parse_type(args.p, args.m, &args.a)?;
                let b = parse_type(args.p, args.m, &args.b)?;
                plain(json!({ "equivalent": a.equivalent(&b) }))
            }
            TypeCmd::Lifts(args) => {
                let t = parse_type(args.p, args.m, &args.entries)?;
                let bound = args.bound.unwrap_or_else(|| t.default_lift_bound());
                let lifts = enumerate_lifts(&t, bound).map_err(|e| e.to_string())?;
                let shown: Vec<&LiftedType> = match args.limit {
                    Some(k) => lifts.iter().take(k).collect(),
                    None => lifts.iter().collect(),
                };
                let mut out = json!({
                    "bound": bound,
                    "total": lifts.len(),
                    "lifts": shown,
                });
                if t.m() == 1 {
                    let cert = nonexistence_certificate(&t, bound).map_err(|e| e.to_string())?;
                    let window = existence_window(&t, bound).map_err(|e| e.to_string())?;
                    out["nonexistence_certificate"] = json!(cert);
                    out["existence_window"] = json!(window);
                }
                plain(out)
            }
        },
        Command::Defdatum(cmd) => match cmd {
            DefdatumCmd::Construct(args) => {
                let use_primitive = args.primitive || args.h % args.m != 0;
                let form = if use_primitive {
                    primitive_datum(args.p, args.m, args.h)
                } else {
                    nonprimitive_datum(args.p, args.m, args.h)
                }
                .map_err(|e| e.to_string())?;
                let (report, ctx) =
                    goodness_over_splitting_field(&form, args.m).map_err(|e| e.to_string())?;
                plain(json!({
                    "construction": if use_primitive { "primitive" } else { "nonprimitive" },
                    "field": form.field(),
                    "num": form.f().num(),
                    "den": form.f().den(),
                    "analysis_field": ctx.field(),
                    "goodness": report,
                }))
            }
            DefdatumCmd::Search(args) => {
                let t = parse_type(args.p, args.m, &args.residue_type)?;
                let cap = args
                    .cap
                    .or_else(|| {
                        std::env::var("DEFDATUM_MAX_CANDIDATES")
                            .ok()
                            .and_then(|v| v.parse().ok())
                    })
                    .unwrap_or(DEFAULT_CANDIDATE_CAP);
                let opts = SearchOptions {
                    cap,
                    start_offset: args.start_offset,
                };
                let report =
                    search_good_deformation(&t, args.ext, &opts).map_err(|e| e.to_string())?;
                let mut out = serde_json::to_value(&report).expect("serializable report");
                if args.emit_witness {
                    let witnesses: Result<Vec<Value>, String> = report
                        .solutions
                        .iter()
                        .map(|config| {
                            let form = config.form(&t).map_err(|e| e.to_string())?;
                            Ok(json!({
                                "field": form.field(),
                                "num": form.f().num(),
                                "den": form.f().den(),
                            }))
                        })
                        .collect();
                    out["witnesses"] = Value::Array(witnesses?);
                }
                plain(out)
            }
            DefdatumCmd::Verify(args) => {
                let field = Field::extension(args.p, args.ext).map_err(|e| e.to_string())?;
                let num = wire::parse_poly(&field, &args.num)?;
                let den = wire::parse_poly(&field, &args.den)?;
                if den.is_zero() {
                    return Err("zero denominator".into());
                }
                let form = defdatum::forms::DifferentialForm::new(
                    defdatum::algebra::RationalFunction::new(num, den),
                )
                .map_err(|e| e.to_string())?;
                let (report, ctx) = if field.is_prime_field() {
                    goodness_over_splitting_field(&form, args.m).map_err(|e| e.to_string())?
                } else {
                    let ctx = EquivariantContext::new(&field, args.m).map_err(|e| e.to_string())?;
                    (goodness(&form, &ctx).map_err(|e| e.to_string())?, ctx)
                };
                plain(json!({
                    "good": report.is_good,
                    "conductor": report.conductor_h,
                    "analysis_field": ctx.field(),
                    "goodness": report,
                }))
            }
            DefdatumCmd::Screen(args) => {
                let verdict = necessary_conditions(args.p, args.m, args.h);
                plain(json!({
                    "p": args.p,
                    "m": args.m,
                    "h": args.h,
                    "screening": verdict,
                }))
            }
        },
        Command::Lift(LiftCmd::Decide(args)) => {
            let verdict = decide_lifting(args.p, args.m, args.h).map_err(|e| e.to_string())?;
            plain(serde_json::to_value(&verdict).expect("serializable verdict"))
        }
        Command::M2(M2Cmd::Verify(args)) => {
            let field = Field::extension(args.p, args.ext).map_err(|e| e.to_string())?;
            let lift = parse_lift(&args.lift)?;
            let poles = wire::parse_elements(&field, &args.poles)?;
            let ctx = EquivariantContext::new(&field, 2).map_err(|e| e.to_string())?;
            let config = PoleConfiguration::new(&ctx, poles).map_err(|e| e.to_string())?;
            let gt = m2_reduce(&lift, &config).map_err(|e| e.to_string())?;
            let report = verify_m2_branching(&gt, &lift).map_err(|e| e.to_string())?;
            plain(json!({
                "gt": { "field": gt.field(), "num": gt.num(), "den": gt.den() },
                "report": report,
            }))
        }
    }
}

fn parse_lift(text: &str) -> Result<LiftedType, String> {
    let entries = wire::parse_i64_list(text)?;
    LiftedType::new(entries).map_err(|e| e.to_string())
}

fn parse_type(p: u64, m: u64, text: &str) -> Result<ResidueType, String> {
    let entries = wire::parse_u64_list(text)?;
    ResidueType::new(p, m, &entries).map_err(|e| e.to_string())
}

fn parse_combinatorial_type(args: &DessinArgs) -> Result<CombinatorialType, String> {
    let c1 = parse_cycle_type(&args.c1, args.n)?;
    let c2 = parse_cycle_type(&args.c2, args.n)?;
    let c3 = parse_cycle_type(&args.c3, args.n)?;
    CombinatorialType::new(args.n, c1, c2, c3).map_err(|e| e.to_string())
}

fn parse_cycle_type(text: &str, n: u64) -> Result<CycleType, String> {
    let parts = wire::parse_u64_list(text)?;
    CycleType::with_degree(parts, n).map_err(|e| e.to_string())
}
