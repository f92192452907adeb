mod args;

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use roc_ties::auc::{auc_for_convention, auc_half_ties, auc_strict, pair_statistics};
use roc_ties::inference::bootstrap_auc;
use roc_ties::io::{read_dataset, write_curve_csv};
use roc_ties::montecarlo::est_auc;
use roc_ties::report::{build_report, BootstrapOptions, DiagnosticPolicy, ReportOptions};
use roc_ties::roc::roc_curve;
use roc_ties::{Dataset, PathConvention};
use serde_json::{json, Map, Value};

use args::{
    AucArgs, BootArgs, Cli, Command, CurveArgs, Format, InputArgs, ReportArgs, SimulateArgs,
};

enum Failure {
    Usage(String),
    Data { code: &'static str, message: String },
}

impl From<roc_ties::Error> for Failure {
    fn from(e: roc_ties::Error) -> Self {
        match e {
            roc_ties::Error::Argument(msg) => Failure::Usage(msg),
            other => Failure::Data {
                code: other.code(),
                message: other.to_string(),
            },
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data {
            code: "IO",
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("{}", json!({"error": "THREADS", "message": e.to_string()}));
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Auc(a) => run_auc(a),
        Command::Curve(a) => run_curve(a),
        Command::Report(a) => run_report(a),
        Command::Simulate(a) => run_simulate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(message)) => {
            eprintln!("{}", json!({"error": "USAGE", "message": message}));
            ExitCode::from(2)
        }
        Err(Failure::Data { code, message }) => {
            eprintln!("{}", json!({"error": code, "message": message}));
            ExitCode::from(1)
        }
    }
}

fn load(input: &InputArgs) -> Result<Dataset, Failure> {
    let mode = input.mode.into();
    let d = if input.input == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        read_dataset(buf.as_slice(), mode)?
    } else {
        let file = File::open(&input.input).map_err(|e| Failure::Data {
            code: "IO",
            message: format!("{}: {e}", input.input.display()),
        })?;
        read_dataset(io::BufReader::new(file), mode)?
    };
    d.require_both_classes()?;
    Ok(d)
}

fn emit(out: Option<&Path>, body: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types always serialize")
}

/// Drops the interval fields the user did not ask for.
fn filter_intervals(mut boot: Value, args: &BootArgs) -> Value {
    if let Some(obj) = boot.as_object_mut() {
        obj.retain(|k, _| !k.starts_with("ci_") || args.ci.keeps(k));
    }
    boot
}

fn bootstrap_block(
    d: &Dataset,
    conventions: &[PathConvention],
    args: &BootArgs,
) -> Result<Option<Value>, Failure> {
    let Some(replicates) = args.boot else {
        return Ok(None);
    };
    let seed = args
        .seed
        .ok_or_else(|| Failure::Usage("--boot requires --seed".into()))?;
    let mut block = Map::new();
    for &c in conventions {
        let r = bootstrap_auc(d, c, replicates, seed, args.level)?;
        block.insert(
            c.auc_name().to_owned(),
            filter_intervals(to_value(&r), args),
        );
    }
    Ok(Some(Value::Object(block)))
}

fn run_auc(a: &AucArgs) -> CmdResult {
    let d = load(&a.input)?;
    let pairs = pair_statistics(d.groups())?;
    let conventions = a.convention.conventions();
    let estimates: Vec<_> = conventions
        .iter()
        .map(|&c| auc_for_convention(&pairs, c))
        .collect();
    let boot = bootstrap_block(&d, &conventions, &a.boot)?;

    let body = match a.format {
        Format::Json => {
            let mut auc = Map::new();
            for e in &estimates {
                auc.insert(e.convention.auc_name().to_owned(), to_value(e));
            }
            let mut root = Map::new();
            root.insert("n".into(), json!(d.len()));
            root.insert("n_pos".into(), json!(d.n_pos()));
            root.insert("n_neg".into(), json!(d.n_neg()));
            root.insert("auc".into(), Value::Object(auc));
            if let Some(b) = boot {
                root.insert("bootstrap".into(), b);
            }
            pretty(&Value::Object(root))
        }
        Format::Csv => {
            let mut s = String::from("convention,value,num,den\n");
            for e in &estimates {
                let (num, den) = e
                    .exact
                    .map(|r| (r.num.to_string(), r.den.to_string()))
                    .unwrap_or_default();
                s.push_str(&format!("{},{},{num},{den}\n", e.convention, e.value));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for e in &estimates {
                let exact = e.exact.map(|r| format!("  ({r})")).unwrap_or_default();
                s.push_str(&format!(
                    "{:<11} {:.7}{exact}\n",
                    e.convention.auc_name(),
                    e.value
                ));
            }
            if let Some(Value::Object(b)) = boot {
                for (name, r) in b {
                    s.push_str(&format!(
                        "bootstrap {name}: se {:.7}, bias {:.7}\n",
                        r["se"].as_f64().unwrap_or(f64::NAN),
                        r["bias"].as_f64().unwrap_or(f64::NAN)
                    ));
                    for key in ["ci_normal", "ci_percentile", "ci_bc"] {
                        if let Some(ci) = r.get(key) {
                            s.push_str(&format!("    {key}: [{}, {}]\n", ci["lower"], ci["upper"]));
                        }
                    }
                }
            }
            s
        }
    };
    emit(a.input.out.as_deref(), &body)
}

fn run_curve(a: &CurveArgs) -> CmdResult {
    let d = load(&a.input)?;
    let pl = roc_curve(d.groups(), a.path.into())?;
    let svg = a.svg.then(|| pl.to_svg(600));
    let body = match a.format {
        Format::Json => pretty(&to_value(&pl)),
        Format::Csv | Format::Text => {
            let mut buf = Vec::new();
            write_curve_csv(&pl, &mut buf)?;
            String::from_utf8(buf).expect("CSV output is UTF-8")
        }
    };
    match (&a.input.out, svg) {
        (Some(out), Some(svg)) => {
            emit(Some(out), &body)?;
            emit(Some(&out.with_extension("svg")), &svg)
        }
        (None, Some(svg)) => emit(None, &svg),
        (out, None) => emit(out.as_deref(), &body),
    }
}

fn run_report(a: &ReportArgs) -> CmdResult {
    let d = load(&a.input)?;
    let bootstrap = match a.boot.boot {
        Some(replicates) => Some(BootstrapOptions {
            replicates,
            seed: a
                .boot
                .seed
                .ok_or_else(|| Failure::Usage("--boot requires --seed".into()))?,
            level: a.boot.level,
            conventions: a.convention.conventions(),
        }),
        None => None,
    };
    let both_have_two = d.n_pos() >= 2 && d.n_neg() >= 2;
    let opts = ReportOptions {
        policy: DiagnosticPolicy {
            high_tie_mass: a.tie_mass_warning,
            discrete_max_distinct: a.discrete_max,
            ..Default::default()
        },
        asymptotic_level: both_have_two.then_some(a.boot.level),
        bootstrap,
        curves: a.path.map(|p| vec![p.into()]).unwrap_or_default(),
    };
    let report = build_report(&d, &opts)?;
    let body = match a.format {
        Format::Text => report.to_text(),
        Format::Json | Format::Csv => {
            let mut v = to_value(&report);
            if let Some(Value::Object(boot)) = v.get_mut("bootstrap") {
                for r in boot.values_mut() {
                    *r = filter_intervals(r.take(), &a.boot);
                }
            }
            pretty(&v)
        }
    };
    emit(a.input.out.as_deref(), &body)
}

fn run_simulate(a: &SimulateArgs) -> CmdResult {
    let d = load(&a.input)?;
    let mc = est_auc(&d, a.draws, a.seed)?;
    let pairs = pair_statistics(d.groups())?;
    let exact_strict = auc_strict(&pairs);
    let exact_half = auc_half_ties(&pairs);
    let body = match a.format {
        Format::Text => format!(
            "auc.definition {:.6}  (exact {:.7})\nauc.wties      {:.6}  (exact {:.7})\ndraws {}, seed {}\n",
            mc.auc_definition, exact_strict.value, mc.auc_wties, exact_half.value, mc.n_draws, mc.seed
        ),
        Format::Json | Format::Csv => pretty(&json!({
            "monte_carlo": mc,
            "exact": {"strict": exact_strict, "half_ties": exact_half},
        })),
    };
    emit(a.input.out.as_deref(), &body)
}
