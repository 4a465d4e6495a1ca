//! `quantikit`: validate bundles, build constructions, and certify them.
//!
//! Reports go to stdout (or `--output`), diagnostics to stderr. Exit status
//! is 0 on success or a certificate, 1 on a validation failure or a
//! counterexample, and 2 on unreadable input or bad usage.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quantikit::io::{
    emit_report, parse_bundle, parse_quantaloid, report, DefinitionBundle, QuantaloidSpec,
};
use quantikit::oracle::{self, CatShape, ChuShape, Mutant, Verdict};
use quantikit::qcat::{self, functor_leq, QCategory, QFunctor};
use quantikit::qchu::{self, ChuDiagram, GeneratorMode};
use quantikit::qdist::PresheafCategory;
use quantikit::quantaloid::{Diagonal, Quantaloid};
use quantikit::Error;

#[derive(Parser)]
#[command(
    name = "quantikit",
    version,
    about = "Finite quantaloids, their categories and Chu constructions"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and fully validate a bundle (`-` reads stdin).
    Validate { bundle: String },
    /// Build a construction from named bundle entries.
    Construct {
        kind: ConstructKind,
        #[arg(long)]
        bundle: String,
        /// Comma-separated entry names.
        #[arg(long, value_delimiter = ',')]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "standard")]
        mode: Mode,
    },
    /// Check a single named entry.
    Check {
        kind: CheckKind,
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        name: String,
        /// Second functor, for `leq`.
        #[arg(long)]
        other: Option<String>,
    },
    /// Find a generator separating two parallel transforms.
    Separate {
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
        #[arg(long, value_enum, default_value = "standard")]
        mode: Mode,
    },
    /// Certify a universal property against the bundle's small entries.
    Oracle {
        kind: OracleKind,
        #[arg(long)]
        bundle: String,
        #[arg(long, value_delimiter = ',')]
        args: Vec<String>,
        #[arg(long, value_enum, default_value = "standard")]
        mode: Mode,
    },
    /// Print the tables of a builtin quantaloid: `two`, `chain:N`, or
    /// `diagonal` (of `--of`, a builtin spec or a bundle file).
    Builtin {
        name: String,
        #[arg(long)]
        of: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Product,
    Coproduct,
    Equalizer,
    Coequalizer,
    Terminal,
    Initial,
    Presheaf,
    Diagonal,
    Opposite,
    ChuProduct,
    ChuCoproduct,
    ChuEqualizer,
    ChuCoequalizer,
    DomLift,
    Generators,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Category,
    Functor,
    Distributor,
    Chu,
    Adjunction,
    Leq,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    Product,
    Coproduct,
    Equalizer,
    Coequalizer,
    Terminal,
    Initial,
    ChuProduct,
    ChuCoproduct,
    ChuEqualizer,
    ChuCoequalizer,
    DomLift,
    Generating,
    GraphAdjunction,
    Mutants,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Standard,
    Alternative,
}

impl From<Mode> for GeneratorMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Standard => GeneratorMode::Standard,
            Mode::Alternative => GeneratorMode::Alternative,
        }
    }
}

/// A report and whether it records a failure.
struct Outcome {
    report: Value,
    failed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome {
            report,
            failed: false,
        }
    }

    fn verdict(v: &Verdict) -> Self {
        Outcome {
            report: report::verdict(v),
            failed: v.is_err(),
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn read_input(path: &str) -> Run<String> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn load(path: &str) -> Run<DefinitionBundle> {
    Ok(parse_bundle(&read_input(path)?)?)
}

fn exactly<'a>(args: &'a [String], n: usize, what: &str) -> Run<&'a [String]> {
    if args.len() == n {
        Ok(args)
    } else {
        Err(Failure::Usage(format!(
            "expected {n} {what} in --args, got {}",
            args.len()
        )))
    }
}

fn categories(b: &DefinitionBundle, names: &[String]) -> Run<Vec<Arc<QCategory>>> {
    Ok(names
        .iter()
        .map(|n| b.category(n).cloned())
        .collect::<Result<_, _>>()?)
}

fn chu_objects(b: &DefinitionBundle, names: &[String]) -> Run<Vec<qchu::ChuObject>> {
    Ok(names
        .iter()
        .map(|n| b.distributor(n).cloned())
        .collect::<Result<_, _>>()?)
}

fn cocone(nadir: &QCategory, legs: &[QFunctor]) -> Value {
    json!({ "nadir": report::category(nadir), "legs": legs.iter().map(report::map).collect::<Vec<_>>() })
}

fn chu_cocone(nadir: &qchu::ChuObject, legs: &[qchu::ChuTransform]) -> Value {
    json!({
        "nadir": report::chu_object(nadir),
        "legs": legs.iter().map(report::transform).collect::<Vec<_>>(),
    })
}

/// Diagram, apex and legs for a lifting: `diagram[,apex,leg...]`, with the
/// limit of the domains as the default cone.
fn lift_input(
    b: &DefinitionBundle,
    args: &[String],
) -> Run<(ChuDiagram, Arc<QCategory>, Vec<QFunctor>)> {
    let Some((name, rest)) = args.split_first() else {
        return Err(Failure::Usage(
            "dom-lift needs a diagram name in --args".into(),
        ));
    };
    let diagram = b.diagram(name)?.diagram.clone();
    if rest.is_empty() {
        let (apex, legs) = qchu::domain_limit(&b.quantaloid, &diagram)?;
        return Ok((diagram, apex, legs));
    }
    let apex = b.category(&rest[0])?.clone();
    let legs = rest[1..]
        .iter()
        .map(|n| b.functor(n).cloned())
        .collect::<Result<_, _>>()?;
    Ok((diagram, apex, legs))
}

fn generator_names(f: &qchu::GeneratorFamily) -> Vec<String> {
    let q = &f.quantaloid;
    let mut names: Vec<String> = match f.mode {
        GeneratorMode::Standard => q
            .objects()
            .map(|s| format!("eta:{}", q.object_name(s)))
            .collect(),
        GeneratorMode::Alternative => vec!["lambda:empty".into()],
    };
    names.extend(q.objects().map(|t| format!("lambda:{}", q.object_name(t))));
    names
}

fn construct(
    kind: ConstructKind,
    b: &DefinitionBundle,
    args: &[String],
    mode: Mode,
) -> Run<Outcome> {
    let q = &b.quantaloid;
    let v = match kind {
        ConstructKind::Product => {
            let c = qcat::product(q, &categories(b, args)?)?;
            report::cone(&c.apex, &c.legs)
        }
        ConstructKind::Coproduct => {
            let c = qcat::coproduct(q, &categories(b, args)?)?;
            cocone(&c.nadir, &c.legs)
        }
        ConstructKind::Terminal => {
            exactly(args, 0, "names")?;
            report::category(&qcat::product(q, &[])?.apex)
        }
        ConstructKind::Initial => {
            exactly(args, 0, "names")?;
            report::category(&qcat::coproduct(q, &[])?.nadir)
        }
        ConstructKind::Equalizer | ConstructKind::Coequalizer => {
            let a = exactly(args, 2, "functor names")?;
            let (f, g) = (b.functor(&a[0])?, b.functor(&a[1])?);
            if matches!(kind, ConstructKind::Equalizer) {
                let c = qcat::equalizer(f, g)?;
                report::cone(&c.apex, &c.legs)
            } else {
                let c = qcat::coequalizer(f, g)?;
                cocone(&c.nadir, &c.legs)
            }
        }
        ConstructKind::Presheaf => {
            let a = exactly(args, 1, "category name")?;
            let px = PresheafCategory::new(b.category(&a[0])?.clone())?;
            report::category(&px.category)
        }
        ConstructKind::Opposite => {
            let a = exactly(args, 1, "category name")?;
            let op = b.category(&a[0])?.opposite();
            json!({ "quantaloid": report::quantaloid(op.quantaloid()), "category": report::category(&op) })
        }
        ConstructKind::Diagonal => {
            exactly(args, 0, "names")?;
            report::quantaloid(&Diagonal::new(q)?.quantaloid)
        }
        ConstructKind::ChuProduct => {
            let c = qchu::chu_product(q, &chu_objects(b, args)?)?;
            report::chu_cone(&c.apex, &c.legs)
        }
        ConstructKind::ChuCoproduct => {
            let c = qchu::chu_coproduct(q, &chu_objects(b, args)?)?;
            chu_cocone(&c.nadir, &c.legs)
        }
        ConstructKind::ChuEqualizer | ConstructKind::ChuCoequalizer => {
            let a = exactly(args, 2, "transform names")?;
            let (t1, t2) = (b.transform(&a[0])?, b.transform(&a[1])?);
            if matches!(kind, ConstructKind::ChuEqualizer) {
                let c = qchu::chu_equalizer(t1, t2)?;
                report::chu_cone(&c.apex, &c.legs)
            } else {
                let c = qchu::chu_coequalizer(t1, t2)?;
                chu_cocone(&c.nadir, &c.legs)
            }
        }
        ConstructKind::DomLift => {
            let (diagram, apex, legs) = lift_input(b, args)?;
            report::lift(&qchu::dom_initial_lift(q, &diagram, &apex, &legs)?)
        }
        ConstructKind::Generators => {
            exactly(args, 0, "names")?;
            let f = qchu::generator_family(q, mode.into())?;
            let members: serde_json::Map<String, Value> = generator_names(&f)
                .into_iter()
                .zip(f.members())
                .map(|(n, g)| (n, report::chu_object(&g)))
                .collect();
            json!({ "members": members })
        }
    };
    Ok(Outcome::ok(v))
}

fn check(kind: CheckKind, b: &DefinitionBundle, name: &str, other: Option<&str>) -> Run<Outcome> {
    // Entries were validated while parsing; these re-run the checks and
    // report what was checked.
    let v = match kind {
        CheckKind::Category => {
            let c = b.category(name)?;
            c.validate()?;
            json!({ "status": "valid", "category": report::category(c) })
        }
        CheckKind::Functor => {
            let f = b.functor(name)?;
            f.validate()?;
            json!({ "status": "valid", "functor": report::functor(f) })
        }
        CheckKind::Distributor => {
            let d = b.distributor(name)?;
            d.validate()?;
            json!({ "status": "valid", "distributor": report::distributor(d) })
        }
        CheckKind::Chu => {
            let t = b.transform(name)?;
            t.validate()?;
            json!({ "status": "valid", "transform": report::transform(t) })
        }
        CheckKind::Adjunction => {
            return Ok(Outcome::verdict(&oracle::check_graph_adjunction(
                b.functor(name)?,
            )?));
        }
        CheckKind::Leq => {
            let Some(other) = other else {
                return Err(Failure::Usage("check leq needs --other".into()));
            };
            let (f, g) = (b.functor(name)?, b.functor(other)?);
            let verdict = oracle::check_graph_order(f, g)?;
            let mut out = Outcome::verdict(&verdict);
            out.report["leq"] = json!(functor_leq(f, g)?);
            return Ok(out);
        }
    };
    Ok(Outcome::ok(v))
}

fn run_oracle(kind: OracleKind, b: &DefinitionBundle, args: &[String], mode: Mode) -> Run<Outcome> {
    let q = &b.quantaloid;
    let suite = b.suite()?;
    let verdict = match kind {
        OracleKind::Product | OracleKind::Terminal => {
            let family = categories(b, args)?;
            if matches!(kind, OracleKind::Terminal) {
                exactly(args, 0, "names")?;
            }
            let c = qcat::product(q, &family)?;
            oracle::check_universal(CatShape::Product(&family), &c.apex, &c.legs, &suite)?
        }
        OracleKind::Coproduct | OracleKind::Initial => {
            let family = categories(b, args)?;
            if matches!(kind, OracleKind::Initial) {
                exactly(args, 0, "names")?;
            }
            let c = qcat::coproduct(q, &family)?;
            oracle::check_universal(CatShape::Coproduct(&family), &c.nadir, &c.legs, &suite)?
        }
        OracleKind::Equalizer => {
            let a = exactly(args, 2, "functor names")?;
            let (f, g) = (b.functor(&a[0])?, b.functor(&a[1])?);
            let c = qcat::equalizer(f, g)?;
            oracle::check_universal(CatShape::Equalizer(f, g), &c.apex, &c.legs, &suite)?
        }
        OracleKind::Coequalizer => {
            let a = exactly(args, 2, "functor names")?;
            let (f, g) = (b.functor(&a[0])?, b.functor(&a[1])?);
            let c = qcat::coequalizer(f, g)?;
            oracle::check_universal(CatShape::Coequalizer(f, g), &c.nadir, &c.legs, &suite)?
        }
        OracleKind::ChuProduct => {
            let family = chu_objects(b, args)?;
            let c = qchu::chu_product(q, &family)?;
            oracle::check_chu_universal(ChuShape::Product(&family), &c.apex, &c.legs, &suite)?
        }
        OracleKind::ChuCoproduct => {
            let family = chu_objects(b, args)?;
            let c = qchu::chu_coproduct(q, &family)?;
            oracle::check_chu_universal(ChuShape::Coproduct(&family), &c.nadir, &c.legs, &suite)?
        }
        OracleKind::ChuEqualizer => {
            let a = exactly(args, 2, "transform names")?;
            let (t1, t2) = (b.transform(&a[0])?, b.transform(&a[1])?);
            let c = qchu::chu_equalizer(t1, t2)?;
            oracle::check_chu_universal(ChuShape::Equalizer(t1, t2), &c.apex, &c.legs, &suite)?
        }
        OracleKind::ChuCoequalizer => {
            let a = exactly(args, 2, "transform names")?;
            let (t1, t2) = (b.transform(&a[0])?, b.transform(&a[1])?);
            let c = qchu::chu_coequalizer(t1, t2)?;
            oracle::check_chu_universal(ChuShape::Coequalizer(t1, t2), &c.nadir, &c.legs, &suite)?
        }
        OracleKind::DomLift => {
            let (diagram, apex, legs) = lift_input(b, args)?;
            oracle::check_lift_initiality(q, &diagram, &apex, &legs, &suite)?
        }
        OracleKind::Generating => {
            exactly(args, 0, "names")?;
            let family = qchu::generator_family(q, mode.into())?;
            return Ok(match oracle::check_generating(&suite, &family)? {
                Ok(cert) => Outcome::ok(report::generating(&cert)),
                Err(c) => Outcome {
                    report: report::counterexample(&c),
                    failed: true,
                },
            });
        }
        OracleKind::GraphAdjunction => graph_adjunctions(b, args, &suite)?,
        OracleKind::Mutants => return mutants(args, &suite),
    };
    Ok(Outcome::verdict(&verdict))
}

/// The named functors, or every functor between probe categories.
fn graph_adjunctions(
    b: &DefinitionBundle,
    args: &[String],
    suite: &oracle::TestSuite,
) -> Run<Verdict> {
    let functors: Vec<QFunctor> = if args.is_empty() {
        let mut all = Vec::new();
        for (_, x) in &suite.categories {
            for (_, y) in &suite.categories {
                all.extend(oracle::enumerate_functors(x, y)?);
            }
        }
        all
    } else {
        args.iter()
            .map(|n| b.functor(n).cloned())
            .collect::<Result<_, _>>()?
    };
    let mut checked = 0;
    for f in &functors {
        let v = oracle::check_graph_adjunction(f)?;
        if v.is_err() {
            return Ok(v);
        }
        checked += 1;
    }
    Ok(Ok(oracle::Certificate {
        property: "graph-adjunction".into(),
        probes: suite.categories.len(),
        checked,
    }))
}

/// A mutant is killed when the oracle finds a counterexample against it.
fn mutants(args: &[String], suite: &oracle::TestSuite) -> Run<Outcome> {
    let chosen: Vec<Mutant> = if args.is_empty() {
        Mutant::ALL.to_vec()
    } else {
        args.iter()
            .map(|n| {
                Mutant::from_name(n).ok_or_else(|| Failure::Usage(format!("unknown mutant `{n}`")))
            })
            .collect::<Run<_>>()?
    };
    let mut rows = serde_json::Map::new();
    let mut survived = false;
    for m in chosen {
        let v = oracle::run_mutant(m, suite)?;
        survived |= v.is_ok();
        let mut r = report::verdict(&v);
        r["killed"] = json!(v.is_err());
        rows.insert(m.name().to_string(), r);
    }
    Ok(Outcome {
        report: json!({ "status": if survived { "survivor" } else { "all-killed" }, "mutants": rows }),
        failed: survived,
    })
}

/// A builtin spec such as `builtin:two`, or else a bundle file.
fn quantaloid_of(src: &str) -> Run<Quantaloid> {
    if let Ok(spec) = QuantaloidSpec::parse_short(src) {
        return Ok(spec.build()?);
    }
    let text = read_input(src)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match v.get("quantaloid") {
        Some(q) => Ok(parse_quantaloid(q, "quantaloid")?.1),
        None => Ok(parse_quantaloid(&v, "")?.1),
    }
}

fn builtin(name: &str, of: Option<&str>) -> Run<Outcome> {
    let q = match (name, of) {
        ("diagonal", Some(src)) => Diagonal::new(&quantaloid_of(src)?)?.quantaloid,
        ("diagonal", None) => return Err(Failure::Usage("builtin diagonal needs --of".into())),
        (_, Some(_)) => return Err(Failure::Usage("--of only applies to diagonal".into())),
        (spec, None) => QuantaloidSpec::parse_short(spec)
            .map_err(|e| Failure::Usage(e.to_string()))?
            .build()?,
    };
    Ok(Outcome::ok(report::quantaloid(&q)))
}

fn dispatch(cmd: &Command) -> Run<Outcome> {
    match cmd {
        Command::Validate { bundle } => {
            let b = load(bundle)?;
            Ok(Outcome::ok(json!({
                "status": "valid",
                "categories": b.categories.len(),
                "functors": b.functors.len(),
                "distributors": b.distributors.len(),
                "transforms": b.transforms.len(),
                "diagrams": b.diagrams.len(),
            })))
        }
        Command::Construct {
            kind,
            bundle,
            args,
            mode,
        } => construct(*kind, &load(bundle)?, args, *mode),
        Command::Check {
            kind,
            bundle,
            name,
            other,
        } => check(*kind, &load(bundle)?, name, other.as_deref()),
        Command::Separate {
            bundle,
            t1,
            t2,
            mode,
        } => {
            let b = load(bundle)?;
            let family = qchu::generator_family(&b.quantaloid, (*mode).into())?;
            let sep = qchu::separate(b.transform(t1)?, b.transform(t2)?, &family)?;
            Ok(Outcome::ok(report::separation(&sep)))
        }
        Command::Oracle {
            kind,
            bundle,
            args,
            mode,
        } => run_oracle(*kind, &load(bundle)?, args, *mode),
        Command::Builtin { name, of } => builtin(name, of.as_deref()),
    }
}

/// Input that could not be read as a well-formed bundle.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::Schema { .. }
            | Error::UnresolvedReference { .. }
            | Error::BadParameter(_)
    )
}

fn write_report(out: &Option<PathBuf>, v: &Value) -> std::io::Result<()> {
    let text = emit_report(v);
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match dispatch(&cli.command) {
        Ok(o) => {
            let code = if o.failed {
                eprintln!("quantikit: property does not hold");
                1
            } else {
                0
            };
            (o.report, code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("quantikit: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Lib(e)) if is_input_error(&e) => {
            eprintln!("quantikit: {e}");
            eprintln!("{}", emit_report(&report::error(&e)).trim_end());
            return ExitCode::from(2);
        }
        Err(Failure::Lib(e)) => {
            eprintln!("quantikit: {e}");
            (report::error(&e), 1)
        }
    };
    if let Err(e) = write_report(&cli.output, &report) {
        eprintln!("quantikit: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
