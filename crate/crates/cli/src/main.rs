//! `eorb`: compute and compare orbifold E-polynomials from the command line.
//!
//! Exit status: 0 on success or a verified equality, 2 when a verification
//! finds an inequality, 1 on usage or input errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eorb_core::epoly::{BivariatePolynomial, LatticeSide, SpaceDescriptor};
use eorb_core::orbifold::{duality_check, mirror_check, orbifold_e_polynomial, OrbifoldReport, DEFAULT_CAP};
use eorb_core::root_data::{ClassicalFamily, ClassicalForm, RootDatum};
use eorb_core::sln::{closed_form_eorb, partitions, sym_e_polynomial, tau, Surface};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "eorb", version, about = "Exact orbifold E-polynomials of torus quotients by Weyl groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E_orb of (A ⊗ Λ)/W with per-class contributions
    Compute(SpaceJob),
    /// Compare E_orb for a datum and its Langlands dual
    MirrorCheck(SpaceJob),
    /// Compare component groups and centralizer actions on Λ and Λ̂
    DualityCheck(GroupJob),
    /// Evaluate the SL(n)/Z_m closed form
    ClosedForm(ClosedFormJob),
    /// Compare the general engine with the closed form on SL(n)/Z_m
    CrossValidate(SpaceJob),
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest Weyl group to enumerate
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct GroupJob {
    /// `sl N M`, `classical FAMILY N FORM` or `custom PATH`
    #[arg(long, num_args = 2..=4, value_names = ["KIND", "ARGS"], required = true)]
    group: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SpaceJob {
    #[command(flatten)]
    group: GroupJob,
    /// betti, dolbeault, derham, abelian-surface, mixed, or a factor list such as `elliptic:dual,c_star:primal`
    #[arg(long)]
    space: String,
}

#[derive(Args, Debug)]
struct ClosedFormJob {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    /// Number of U(1) factors of A; must match the surface when given
    #[arg(long)]
    d: Option<u32>,
    /// point, cstar, betti, elliptic, abelian or dolbeault
    #[arg(long)]
    surface: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Why a run stopped: bad input (exit 1) or a failed verification (exit 2).
enum Failure {
    Usage(String),
    Unequal(String),
}

impl From<eorb_core::Error> for Failure {
    fn from(e: eorb_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn parse_group(args: &[String]) -> Result<(RootDatum, Value), Failure> {
    let usage = || Failure::Usage(format!("bad --group '{}': expected sl N M, classical FAMILY N FORM or custom PATH", args.join(" ")));
    let int = |s: &str| s.parse::<usize>().map_err(|_| Failure::Usage(format!("bad --group number '{s}'")));
    match args.first().map(String::as_str) {
        Some("sl") if args.len() == 3 => {
            let (n, m) = (int(&args[1])?, int(&args[2])?);
            Ok((RootDatum::sl_quotient(n, m)?, json!({"kind": "sl", "n": n, "m": m})))
        }
        Some("classical") if args.len() == 4 => {
            let family: ClassicalFamily = args[1].parse()?;
            let n = int(&args[2])?;
            let form: ClassicalForm = args[3].parse()?;
            Ok((
                RootDatum::classical(family, n, form)?,
                json!({"kind": "classical", "family": family.to_string(), "n": n, "form": form.to_string()}),
            ))
        }
        Some("custom") if args.len() == 2 => {
            let path = PathBuf::from(&args[1]);
            let datum = RootDatum::from_file(&path)
                .map_err(|e| Failure::Usage(format!("custom datum '{}': {e}", path.display())))?;
            Ok((datum, json!({"kind": "custom", "path": args[1]})))
        }
        _ => Err(usage()),
    }
}

fn parse_space(name: &str) -> Result<SpaceDescriptor, Failure> {
    SpaceDescriptor::by_name(name).map_err(|_| Failure::Usage(format!("unknown space '{name}'")))
}

fn render(format: Format, value: &Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("JSON values serialize"),
        Format::Text => text(),
    }
}

fn class_text(out: &mut String, report: &OrbifoldReport, heading: &str) {
    for c in &report.classes {
        let _ = writeln!(out, "{heading}class {}", c.class_index);
        let _ = writeln!(out, "  rep: {}", c.class_rep);
        let _ = writeln!(out, "  size: {}", c.class_size);
        let _ = writeln!(out, "  centralizer_order: {}", c.centralizer_order);
        let _ = writeln!(out, "  shift: {}", c.shift);
        let _ = writeln!(out, "  pi0_divisors: {:?}", c.pi0_divisors);
        if let Some(d) = &c.dual_pi0_divisors {
            let _ = writeln!(out, "  dual_pi0_divisors: {d:?}");
        }
        let _ = writeln!(out, "  average: {}", c.average_poly.to_text());
        let _ = writeln!(out, "  weighted: {}", c.weighted_poly.to_text());
    }
}

fn echo(command: &str, group: &Value, space: Option<&SpaceDescriptor>, common: &Common) -> Value {
    let mut v = json!({"command": command, "group": group, "cap": common.cap});
    if let Some(s) = space {
        v["space"] = json!(s.name());
    }
    v
}

fn compute(job: &SpaceJob) -> Outcome {
    let (datum, group) = parse_group(&job.group.group)?;
    let space = parse_space(&job.space)?;
    let common = &job.group.common;
    let report = orbifold_e_polynomial(&datum, &space, common.cap)?;
    let value = json!({
        "config_echo": echo("compute", &group, Some(&space), common),
        "datum": datum.label(),
        "group_order": report.group_order,
        "classes": report.classes,
        "total": report.total,
    });
    Ok(render(common.format, &value, || {
        let mut out = format!("datum: {}\nspace: {}\ngroup_order: {}\n", datum.label(), space.name(), report.group_order);
        class_text(&mut out, &report, "");
        let _ = writeln!(out, "total: {}", report.total.to_text());
        out
    }))
}

fn mirror(job: &SpaceJob) -> Outcome {
    let (datum, group) = parse_group(&job.group.group)?;
    let space = parse_space(&job.space)?;
    let common = &job.group.common;
    let report = mirror_check(&datum, &space, common.cap)?;
    let value = json!({
        "config_echo": echo("mirror-check", &group, Some(&space), common),
        "datum": report.primal.datum,
        "dual_datum": report.dual.datum,
        "classes": report.primal.classes,
        "dual_classes": report.dual.classes,
        "total": report.primal.total,
        "dual_total": report.dual.total,
        "pair_diffs": report.pair_diffs,
        "classes_matched": report.classes_matched,
        "term_by_term_equal": report.term_by_term_equal,
        "verdict": if report.verdict { "equal" } else { "unequal" },
    });
    let out = render(common.format, &value, || {
        let mut out = format!("datum: {}\ndual: {}\nspace: {}\n", report.primal.datum, report.dual.datum, space.name());
        class_text(&mut out, &report.primal, "");
        class_text(&mut out, &report.dual, "dual ");
        for p in &report.pair_diffs {
            let _ = writeln!(out, "pair {} ~ {}: {}", p.primal_class, p.dual_class, p.difference.to_text());
        }
        let _ = writeln!(out, "total: {}", report.primal.total.to_text());
        let _ = writeln!(out, "dual_total: {}", report.dual.total.to_text());
        let _ = writeln!(out, "verdict: {}", if report.verdict { "equal" } else { "unequal" });
        out
    });
    if report.verdict {
        Ok(out)
    } else {
        Err(Failure::Unequal(out))
    }
}

fn duality(job: &GroupJob) -> Outcome {
    let (datum, group) = parse_group(&job.group)?;
    let report = duality_check(&datum, job.common.cap)?;
    let value = json!({
        "config_echo": echo("duality-check", &group, None, &job.common),
        "datum": report.datum,
        "classes": report.classes,
        "verdict": if report.verdict { "equal" } else { "unequal" },
    });
    let out = render(job.common.format, &value, || {
        let mut out = format!("datum: {}\n", report.datum);
        for c in &report.classes {
            let _ = writeln!(out, "class {}", c.class_index);
            let _ = writeln!(out, "  rep: {}", c.class_rep);
            let _ = writeln!(out, "  centralizer_order: {}", c.centralizer_order);
            let _ = writeln!(out, "  pi0_divisors: {:?} / {:?}", c.primal_pi0_divisors, c.dual_pi0_divisors);
            let _ = writeln!(out, "  shift: {} / {}", c.primal_shift, c.dual_shift);
            let _ = writeln!(out, "  fixed_count_mismatches: {}", c.fixed_count_mismatches);
        }
        let _ = writeln!(out, "verdict: {}", if report.verdict { "equal" } else { "unequal" });
        out
    });
    if report.verdict {
        Ok(out)
    } else {
        Err(Failure::Unequal(out))
    }
}

fn closed_form(job: &ClosedFormJob) -> Outcome {
    let surface: Surface = job.surface.parse()?;
    let d = surface.circle_count();
    if let Some(given) = job.d {
        if given != d {
            return Err(Failure::Usage(format!("--d {given} does not match surface '{surface}' (d = {d})")));
        }
    }
    if job.m == 0 || job.n % job.m != 0 {
        return Err(Failure::Usage(format!("--m {} does not divide --n {}", job.m, job.n)));
    }
    let e_a = surface.e_polynomial();
    let total = closed_form_eorb(job.n, job.m, d, &e_a)?;
    let l = job.n / job.m;
    let terms: Vec<Value> = partitions(job.n)
        .iter()
        .map(|alpha| {
            let t = tau(l.into(), job.m.into(), alpha.gcd().into(), d);
            let shift = job.n - alpha.size();
            let product = alpha
                .multiplicities()
                .iter()
                .map(|&k| sym_e_polynomial(&e_a, k).expect("integral E(A)"))
                .fold(BivariatePolynomial::one(), |acc, p| &acc * &p);
            json!({"partition": alpha.parts(), "tau": t, "shift": shift, "sym_product": product})
        })
        .collect();
    let value = json!({
        "config_echo": {"command": "closed-form", "n": job.n, "m": job.m, "d": d, "surface": surface.name()},
        "classes": terms,
        "total": total,
    });
    Ok(render(job.common.format, &value, || {
        let mut out = format!("n: {}\nm: {}\nd: {d}\nsurface: {surface}\n", job.n, job.m);
        for t in &terms {
            let _ = writeln!(out, "partition {}", t["partition"]);
            let _ = writeln!(out, "  tau: {}", t["tau"]);
            let _ = writeln!(out, "  shift: {}", t["shift"]);
        }
        let _ = writeln!(out, "total: {}", total.to_text());
        out
    }))
}

fn cross_validate(job: &SpaceJob) -> Outcome {
    let args = &job.group.group;
    let (n, m) = match (args.first().map(String::as_str), args.len()) {
        (Some("sl"), 3) => (
            args[1].parse::<u32>().map_err(|_| Failure::Usage(format!("bad --group number '{}'", args[1])))?,
            args[2].parse::<u32>().map_err(|_| Failure::Usage(format!("bad --group number '{}'", args[2])))?,
        ),
        _ => return Err(Failure::Usage("cross-validate needs --group sl N M".into())),
    };
    let (datum, group) = parse_group(args)?;
    let space = parse_space(&job.space)?;
    if space.uses_side(LatticeSide::Dual) {
        return Err(Failure::Usage(format!("space '{}' has dual-lattice factors; the closed form needs one A ⊗ Λ", space.name())));
    }
    let common = &job.group.common;
    let report = orbifold_e_polynomial(&datum, &space, common.cap)?;
    let closed = closed_form_eorb(n, m, space.circle_count(), &space.base_e_polynomial())?;
    let equal = closed == report.total;
    let value = json!({
        "config_echo": echo("cross-validate", &group, Some(&space), common),
        "datum": datum.label(),
        "classes": report.classes,
        "total": report.total,
        "closed_form_total": closed,
        "verdict": if equal { "equal" } else { "unequal" },
    });
    let out = render(common.format, &value, || {
        let mut out = format!("datum: {}\nspace: {}\n", datum.label(), space.name());
        class_text(&mut out, &report, "");
        let _ = writeln!(out, "total: {}", report.total.to_text());
        let _ = writeln!(out, "closed_form_total: {}", closed.to_text());
        let _ = writeln!(out, "verdict: {}", if equal { "equal" } else { "unequal" });
        out
    });
    if equal {
        Ok(out)
    } else {
        Err(Failure::Unequal(out))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Compute(job) => compute(job),
        Command::MirrorCheck(job) => mirror(job),
        Command::DualityCheck(job) => duality(job),
        Command::ClosedForm(job) => closed_form(job),
        Command::CrossValidate(job) => cross_validate(job),
    };
    match outcome {
        Ok(out) => {
            print_block(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Unequal(out)) => {
            print_block(&out);
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("eorb: {msg}");
            ExitCode::from(1)
        }
    }
}

fn print_block(s: &str) {
    if s.ends_with('\n') {
        print!("{s}");
    } else {
        println!("{s}");
    }
}
