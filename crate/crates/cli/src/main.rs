use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use subshift::agler::{certified_x_max_with, sweep_csv};
use subshift::measures::{parse_measure_json, Measure};
use subshift::numerics::{format_rational, parse_rational, Rational};
use subshift::report::lubin_report_with;
use subshift::shift1d::{
    agler_sums_1d_with, backward_extension_1d, berger_fit, moments_csv, parse_moments_csv,
    subnormal_necessary, FitError, WeightSequence1D, WeightSpec,
};
use subshift::shift2d::{
    check_berger_2d_with, commutativity_check_with, joint_hyponormality_window,
    path_independence_check, WeightDiagram, Window,
};
use subshift::{lubin, Certificate, Exec};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "subshift", version, about = "Exact checks for weighted shifts and the sum-subnormality counterexample")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Disable data-parallel evaluation.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Moments gamma_n of a 1D measure file or weight spec.
    Moments {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
    /// Recover an atomic measure from a moment CSV (columns n,gamma_n).
    Fit {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_atoms: usize,
    },
    /// Hankel, Agler and backward-extension checks on a 1D shift.
    Check1d {
        /// Measure file or weight spec.
        input: PathBuf,
        /// Hankel order.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, default_value_t = 20)]
        n_max: u64,
        #[arg(long, default_value_t = 10)]
        k_max: u64,
        /// Prepend this squared weight and test the backward extension
        /// (needs a measure input).
        #[arg(long, value_parser = rational_arg)]
        extend: Option<Rational>,
    },
    /// Commutativity, path independence, Berger and hyponormality checks on a 2D shift.
    Check2d(Check2d),
    /// The parameterized pair.
    Lubin {
        #[command(subcommand)]
        action: LubinAction,
    },
    /// Agler sums P_n(k,0) over a grid of x.
    Sweep {
        #[arg(long, value_parser = rational_arg)]
        x_min: Rational,
        #[arg(long, value_parser = rational_arg)]
        x_max: Rational,
        #[arg(long, value_parser = positive_rational_arg)]
        x_step: Rational,
        #[arg(long, default_value_t = 50)]
        n_max: u64,
        #[arg(long, default_value_t = 5)]
        k_max: u64,
    },
    /// The certified epsilon and the per-n bounds behind it.
    Epsilon,
}

#[derive(Args)]
struct Check2d {
    /// Use the parameterized pair at this x.
    #[arg(long, value_parser = positive_rational_arg, conflicts_with = "diagram")]
    lubin: Option<Rational>,
    /// Diagram CSV with columns k1,k2,alpha_sq,beta_sq.
    #[arg(long)]
    diagram: Option<PathBuf>,
    /// Restrict to k >= offset, given as "k1,k2".
    #[arg(long, value_parser = offset_arg, default_value = "0,0")]
    offset: (u64, u64),
    #[arg(long, default_value = "8x8")]
    window: Window,
    /// Expected Berger measure (2D measure file).
    #[arg(long)]
    berger: Option<PathBuf>,
    /// Also run the floating-point joint hyponormality check.
    #[arg(long)]
    hyponormal: bool,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Subcommand)]
enum LubinAction {
    /// Subnormality of T1, T2, the pair, and Agler positivity of the sum.
    Certify {
        #[arg(long, value_parser = positive_rational_arg)]
        x: Rational,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn positive_rational_arg(s: &str) -> Result<Rational, String> {
    let v = rational_arg(s)?;
    if v > Rational::default() {
        Ok(v)
    } else {
        Err(format!("{s} is not positive"))
    }
}

fn offset_arg(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or("expected k1,k2")?;
    let p = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad offset {s:?}"));
    Ok((p(a)?, p(b)?))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// A file holding either a measure (`"dim"`) or a weight spec (`"rule"`).
enum Source1D {
    Measure(subshift::AtomicMeasure1D),
    Spec(WeightSpec),
}

fn load_1d(path: &Path) -> Result<Source1D, CliError> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| input_error(path, e))?;
    if value.get("rule").is_some() {
        WeightSpec::from_json(&text)
            .map(Source1D::Spec)
            .map_err(|e| input_error(path, e))
    } else {
        let m = parse_measure_json(&text)
            .and_then(Measure::into_1d)
            .map_err(|e| input_error(path, e))?;
        Ok(Source1D::Measure(m))
    }
}

fn weights_of(path: &Path, src: &Source1D) -> Result<WeightSequence1D, CliError> {
    match src {
        Source1D::Measure(m) => WeightSequence1D::from_measure(m),
        Source1D::Spec(s) => s.build(),
    }
    .map_err(|e| input_error(path, e))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn certificate_output(cert: &Certificate, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = cert.to_json();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("check,verdict,witness\n");
            let mut stack = vec![cert];
            while let Some(c) = stack.pop() {
                let witness = c.witness.as_ref().map(|w| w.location.clone()).unwrap_or_default();
                out.push_str(&format!("{},{},\"{}\"\n", c.check, c.verdict, witness.replace('"', "'")));
                stack.extend(c.steps.iter().rev());
            }
            out
        }
    }
}

fn run(cli: Cli) -> Result<(String, Outcome), CliError> {
    let exec = if cli.common.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let format = cli.common.format;
    match cli.command {
        Command::Moments { input, n_max } => {
            let src = load_1d(&input)?;
            let w = weights_of(&input, &src)?;
            let out = match format {
                Format::Csv => moments_csv(&w, n_max),
                Format::Json => json(
                    &(0..=n_max)
                        .map(|n| format_rational(&w.moment(n)))
                        .collect::<Vec<_>>(),
                ),
            };
            Ok((out, Outcome::Pass))
        }
        Command::Fit { input, max_atoms } => {
            let moments = parse_moments_csv(&read(&input)?).map_err(|e| input_error(&input, e))?;
            match berger_fit(&moments, max_atoms) {
                Ok(m) => Ok((Measure::One(m).to_json() + "\n", Outcome::Pass)),
                Err(e @ (FitError::TooFewMoments { .. } | FitError::NotNormalized)) => {
                    Err(input_error(&input, e))
                }
                Err(e) => {
                    let cert = Certificate::fail("berger_fit").with_witness(e.to_string(), [("max_atoms", max_atoms)]);
                    Ok((certificate_output(&cert, format), Outcome::Fail))
                }
            }
        }
        Command::Check1d {
            input,
            order,
            n_max,
            k_max,
            extend,
        } => {
            let src = load_1d(&input)?;
            let w = weights_of(&input, &src)?;
            let mut steps = vec![
                subnormal_necessary(&w, order),
                agler_sums_1d_with(exec, &w, n_max, k_max),
            ];
            if let Some(alpha0_sq) = extend {
                let Source1D::Measure(xi) = &src else {
                    return Err(input_error(&input, "--extend needs a measure file"));
                };
                steps.push(backward_extension_1d(&alpha0_sq, xi));
            }
            let cert = Certificate::all_of("check1d", steps).with_value("sequence", w.name());
            let pass = cert.passed();
            Ok((certificate_output(&cert, format), Outcome::from_pass(pass)))
        }
        Command::Check2d(args) => check2d(exec, format, args),
        Command::Lubin {
            action: LubinAction::Certify { x },
        } => {
            let report = lubin_report_with(exec, &x).map_err(|e| CliError::Input(e.to_string()))?;
            let out = match format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
            };
            Ok((out, Outcome::from_pass(report.all_pass())))
        }
        Command::Sweep {
            x_min,
            x_max,
            x_step,
            n_max,
            k_max,
        } => {
            let csv = sweep_csv(exec, &x_min, &x_max, &x_step, n_max, k_max);
            let negative = csv.lines().skip(1).filter(|l| l.contains(",-")).count();
            if negative > 0 {
                eprintln!("{negative} negative entries");
            }
            Ok((csv, Outcome::from_pass(negative == 0)))
        }
        Command::Epsilon => {
            let (x_cert, bounds, tail) = certified_x_max_with(exec);
            let eps = &x_cert - lubin::threshold_pair();
            let out = match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        n: usize,
                        x_max: String,
                    }
                    #[derive(Serialize)]
                    struct Report {
                        certified_x_max: String,
                        epsilon: String,
                        epsilon_float: f64,
                        n_tail: u64,
                        tail: subshift::agler::TailBound,
                        per_n: Vec<Row>,
                    }
                    json(&Report {
                        certified_x_max: format_rational(&x_cert),
                        epsilon: format_rational(&eps),
                        epsilon_float: subshift::numerics::to_f64(&eps),
                        n_tail: tail.n_tail,
                        tail,
                        per_n: bounds
                            .iter()
                            .enumerate()
                            .map(|(i, b)| Row {
                                n: i + 1,
                                x_max: b.as_ref().map_or("inf".into(), format_rational),
                            })
                            .collect(),
                    })
                }
                Format::Csv => {
                    let mut s = String::from("n,x_max\n");
                    for (i, b) in bounds.iter().enumerate() {
                        s.push_str(&format!("{},{}\n", i + 1, b.as_ref().map_or("inf".into(), format_rational)));
                    }
                    s
                }
            };
            Ok((out, Outcome::from_pass(eps > Rational::default())))
        }
    }
}

fn load_diagram(path: &Path, window: Window) -> Result<WeightDiagram, CliError> {
    let text = read(path)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| input_error(path, e))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["k1", "k2", "alpha_sq", "beta_sq"] {
        return Err(input_error(path, "expected header k1,k2,alpha_sq,beta_sq"));
    }
    let mut cells: HashMap<(u64, u64), (Rational, Rational)> = HashMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let r = record.map_err(|e| input_error(path, format!("line {line}: {e}")))?;
        let idx = |j: usize| -> Result<u64, CliError> {
            r[j].trim()
                .parse()
                .map_err(|_| input_error(path, format!("line {line}: bad index {:?}", &r[j])))
        };
        let weight = |j: usize| -> Result<Rational, CliError> {
            positive_rational_arg(r[j].trim()).map_err(|e| input_error(path, format!("line {line}: {e}")))
        };
        cells.insert((idx(0)?, idx(1)?), (weight(2)?, weight(3)?));
    }
    // commutativity at the window edge reads one cell beyond it
    for k1 in 0..=window.width {
        for k2 in 0..=window.height {
            if !cells.contains_key(&(k1, k2)) {
                return Err(input_error(
                    path,
                    format!("missing cell ({k1},{k2}); window {window} needs {}x{} cells", window.width + 1, window.height + 1),
                ));
            }
        }
    }
    let cells = std::sync::Arc::new(cells);
    let c2 = cells.clone();
    Ok(WeightDiagram::from_rules(
        move |k1, k2| cells[&(k1, k2)].0.clone(),
        move |k1, k2| c2[&(k1, k2)].1.clone(),
    ))
}

fn check2d(exec: Exec, format: Format, args: Check2d) -> Result<(String, Outcome), CliError> {
    let Check2d {
        lubin: x,
        diagram,
        offset,
        window,
        berger,
        hyponormal,
        tolerance,
    } = args;
    let (d, name) = match (x, diagram) {
        (Some(x), None) => {
            let family = lubin::LubinFamily::new(x.clone()).map_err(|e| CliError::Input(e.to_string()))?;
            (family.diagram(), format!("lubin x={}", format_rational(&x)))
        }
        (None, Some(path)) => {
            let needed = Window::new(window.width + offset.0, window.height + offset.1);
            (load_diagram(&path, needed)?, path.display().to_string())
        }
        _ => return Err(CliError::Input("check2d needs --lubin X or --diagram FILE".into())),
    };
    let d = if offset == (0, 0) { d } else { d.restrict(offset) };
    let corner = (window.width - 1, window.height - 1);
    let mut steps = vec![
        commutativity_check_with(exec, &d, window),
        path_independence_check(&d, corner),
    ];
    if let Some(path) = berger {
        let mu = parse_measure_json(&read(&path)?)
            .and_then(Measure::into_2d)
            .map_err(|e| input_error(&path, e))?;
        steps.push(check_berger_2d_with(exec, &d, &mu, window));
    }
    if hyponormal {
        if tolerance <= 0.0 {
            return Err(CliError::Input("--tolerance must be positive".into()));
        }
        steps.push(joint_hyponormality_window(&d, window, tolerance));
    }
    let cert = Certificate::all_of("check2d", steps)
        .with_value("diagram", name)
        .with_value("offset", format!("{},{}", offset.0, offset.1))
        .with_value("window", window);
    let pass = cert.passed();
    Ok((certificate_output(&cert, format), Outcome::from_pass(pass)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.common.out.clone();
    match run(cli) {
        Ok((text, outcome)) => {
            if let Some(path) = out_path {
                if let Err(e) = fs::write(&path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            match outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
