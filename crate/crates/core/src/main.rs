use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use moduli::classify::{self, FieldProfile};
use moduli::descent::{self, Aut, CurveQuery};
use moduli::groups::{reference, set_order_ceiling, AbstractGroup};
use moduli::hessian::HessianLibrary;
use moduli::input::GroupFile;
use moduli::torsor::{self, DEFAULT_FAMILY_CEILING};
use moduli::verify::{self, Scope};
use moduli::Error;

#[derive(Parser)]
#[command(name = "moduli", version, about = "Finite subgroups of PGL3, criticality and descent verdicts")]
struct Cli {
    /// Human-readable output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Group-order ceiling for closures and family builders.
    #[arg(long, global = true, env = "MODULI_CEILING")]
    ceiling: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical / lucky status of a group.
    Classify {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Descent verdicts.
    #[command(subcommand)]
    Verdict(VerdictCommand),
    /// Build an obstruction family and search for commuting lifts.
    Counterexample {
        #[arg(long, value_parser = ["c1-3n", "c1-3a", "c2", "h2"])]
        family: String,
        /// a,n,d for c1 families; a,n,d,b for c2; unused for h2.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Hessian group checks.
    #[command(subcommand)]
    Hessian(HessianCommand),
    /// Replay the registered assertions.
    Verify {
        #[arg(value_parser = Scope::NAMES)]
        scope: String,
    },
}

#[derive(Subcommand)]
enum HessianCommand {
    Verify,
}

#[derive(Args)]
struct AutArgs {
    /// Group file with an embedding.
    #[arg(long, conflicts_with = "aut")]
    group: Option<PathBuf>,
    /// Abstract group name such as C4, S3, Klein, C3^2:C4.
    #[arg(long)]
    aut: Option<String>,
}

#[derive(Subcommand)]
enum VerdictCommand {
    Curve {
        #[arg(long)]
        degree: u64,
        #[command(flatten)]
        aut: AutArgs,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    Quartic {
        #[command(flatten)]
        aut: AutArgs,
    },
    Sextic {
        #[command(flatten)]
        aut: AutArgs,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    Cycle {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Checks(verify::RunReport),
}

enum Output {
    Json(Value),
    Report(verify::RunReport),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            other => Failure::Domain(other),
        }
    }
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn aut_of(args: &AutArgs) -> Result<Aut, Failure> {
    match (&args.group, &args.aut) {
        (Some(path), _) => Ok(Aut::Embedded(GroupFile::read(path)?.group()?)),
        (None, Some(name)) => {
            reference::by_name(name).map(Aut::Abstract).ok_or_else(|| Failure::Usage(format!("unknown group name {name:?}")))
        }
        (None, None) => Err(Failure::Usage("one of --group or --aut is required".into())),
    }
}

fn abstract_of(args: &AutArgs) -> Result<AbstractGroup, Failure> {
    Ok(match aut_of(args)? {
        Aut::Embedded(g) => g.to_abstract(),
        Aut::Abstract(t) => t,
    })
}

fn params(text: &str, want: &[usize]) -> Result<Vec<u64>, Failure> {
    let values: Vec<u64> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("bad parameter {s:?}"))))
        .collect::<Result<_, _>>()?;
    if !want.contains(&values.len()) {
        return Err(Failure::Usage(format!("expected {want:?} comma-separated parameters, got {}", values.len())));
    }
    Ok(values)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let family_ceiling = cli.ceiling.unwrap_or(DEFAULT_FAMILY_CEILING);
    match &cli.command {
        Command::Classify { group, field } => {
            let file = GroupFile::read(group)?;
            let g = file.group()?;
            let field = FieldProfile::parse(field)?;
            let mut out = to_value(&classify::criticality(&g, &field)?);
            let obj = out.as_object_mut().expect("object");
            obj.insert("group".into(), json!(file.name));
            obj.insert("order".into(), json!(g.order()));
            obj.insert("field".into(), json!(field.label));
            if let Ok(t) = classify::mbd_type(&g) {
                obj.insert("mbd_type".into(), to_value(&t));
            }
            Ok(Output::Json(out))
        }
        Command::Verdict(v) => {
            let verdict = match v {
                VerdictCommand::Curve { degree, aut, field } => {
                    descent::verdict_curve(&CurveQuery { degree: *degree, aut: aut_of(aut)?, field: FieldProfile::parse(field)? })?
                }
                VerdictCommand::Quartic { aut } => descent::verdict_quartic(&abstract_of(aut)?),
                VerdictCommand::Sextic { aut, field } => descent::verdict_sextic(&abstract_of(aut)?, &FieldProfile::parse(field)?),
                VerdictCommand::Cycle { group, field } => {
                    descent::verdict_cycle(&GroupFile::read(group)?.group()?, &FieldProfile::parse(field)?)?
                }
            };
            Ok(Output::Json(to_value(&verdict)))
        }
        Command::Counterexample { family, params: text } => {
            let p = match family.as_str() {
                "c1-3n" => {
                    let v = params(text, &[3])?;
                    torsor::build_family_c1_3n_with_ceiling(v[0], v[1], v[2], family_ceiling)?
                }
                "c1-3a" => {
                    let v = params(text, &[3])?;
                    torsor::build_family_c1_3a_with_ceiling(v[0], v[1], v[2], family_ceiling)?
                }
                "c2" => {
                    let v = params(text, &[4])?;
                    let b = u32::try_from(v[3]).map_err(|_| Failure::Usage("b too large".into()))?;
                    torsor::build_family_c2_with_ceiling(v[0], b, v[1], v[2], family_ceiling)?
                }
                _ => {
                    params(text, &[0])?;
                    torsor::build_family_h2(&HessianLibrary::build()?)?
                }
            };
            Ok(Output::Json(to_value(&p.summary())))
        }
        Command::Hessian(HessianCommand::Verify) => report(verify::run(Scope::Hessian)),
        Command::Verify { scope } => report(verify::run(scope.parse()?)),
    }
}

fn report(r: verify::RunReport) -> Result<Output, Failure> {
    if r.passed() {
        Ok(Output::Report(r))
    } else {
        Err(Failure::Checks(r))
    }
}

fn emit(out: &Output, pretty: bool) {
    match (out, pretty) {
        (Output::Report(r), true) => {
            for line in r.lines() {
                println!("{line}");
            }
        }
        (Output::Report(r), false) => println!("{}", serde_json::to_string(r).expect("json")),
        (Output::Json(v), true) => println!("{}", serde_json::to_string_pretty(v).expect("json")),
        (Output::Json(v), false) => println!("{}", serde_json::to_string(v).expect("json")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(c) = cli.ceiling {
        set_order_ceiling(c);
    }
    match run(&cli) {
        Ok(out) => {
            emit(&out, cli.pretty);
            ExitCode::SUCCESS
        }
        Err(Failure::Checks(r)) => {
            emit(&Output::Report(r), cli.pretty);
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            let msg = json!({"error": error_kind(&e), "message": e.to_string()});
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
