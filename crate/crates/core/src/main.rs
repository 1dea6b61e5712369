use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use sb_core::brauer::{decide_birational, decide_stably_birational_products, BrauerClass, SbVariety, StableVerdict, Verdict, SUBGROUP_BOUND};
use sb_core::cert::{check_certificate, Certificate, CheckResult};
use sb_core::geom::{apply_forms, monomials, restricted_form_space, segre, transversal, veronese};
use sb_core::io::{self as sio, ElementJson, FieldSpec, FormJson};
use sb_core::verify::{self, Report};

const EXIT_OK: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "sb", version, about = "Severi-Brauer birationality and split-case birational maps over finite fields")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Brauer classes, decisions and certificates.
    #[command(subcommand)]
    Brauer(BrauerCmd),
    /// Projective geometry over finite fields.
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Seeded property suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

/// Inputs are JSON files; `-` reads stdin.
#[derive(Subcommand)]
enum BrauerCmd {
    /// Tensor product of classes.
    Tensor { inputs: Vec<PathBuf> },
    /// Period and index of a class.
    Period { input: PathBuf },
    /// Primary decomposition of a class.
    Decompose { input: PathBuf },
    /// Whether two classes generate the same cyclic subgroup.
    SameSubgroup { a: PathBuf, b: PathBuf },
    /// Birationality of two varieties, or stable birationality of two lists of varieties.
    Decide {
        p: PathBuf,
        q: PathBuf,
        /// Write the certificate here when one is produced.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Replay a certificate.
    CheckCert { input: PathBuf },
}

#[derive(Subcommand)]
enum GeomCmd {
    /// `{field, point, subspaces}`: the transversal subspace through the point.
    Transversal { input: PathBuf },
    /// `{field, x, y}`.
    Segre { input: PathBuf },
    /// `{field, x, r}`.
    Veronese { input: PathBuf },
    /// `{field, ambient, degree, constraints: [{rows, form}], point?}`.
    Forms { input: PathBuf },
}

#[derive(Args, Clone)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    Span {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long = "N", default_value_t = 3)]
        big_n: usize,
    },
    Prop14 {
        #[command(flatten)]
        run: RunArgs,
    },
    Thm2 {
        #[command(flatten)]
        run: RunArgs,
        /// Attach the intermediate objects of the first gate-passing sample.
        #[arg(long)]
        trace: bool,
    },
    Lemma17 {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    BrauerLaws {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 60)]
        max_period: u64,
    },
}

struct Failure(String);

impl<E: std::fmt::Display + std::fmt::Debug> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(format!("{e} [{e:?}]"))
    }
}

type CmdResult = Result<(Value, u8), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }
}

fn parse<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

enum DecideInput {
    One(SbVariety),
    Many(Vec<SbVariety>),
}

fn parse_decide(path: &Path) -> Result<DecideInput, Failure> {
    let v: Value = parse(path)?;
    let bad = |e: serde_json::Error| Failure(format!("{}: {e}", path.display()));
    if v.is_array() {
        serde_json::from_value(v).map(DecideInput::Many).map_err(bad)
    } else {
        serde_json::from_value(v).map(DecideInput::One).map_err(bad)
    }
}

fn brauer(cmd: BrauerCmd) -> CmdResult {
    match cmd {
        BrauerCmd::Tensor { inputs } => {
            let classes = inputs.iter().map(|p| parse::<BrauerClass>(p)).collect::<Result<Vec<_>, _>>()?;
            let product = classes.iter().fold(BrauerClass::trivial(), |acc, c| acc.tensor(c));
            Ok((serde_json::to_value(product)?, EXIT_OK))
        }
        BrauerCmd::Period { input } => {
            let c: BrauerClass = parse(&input)?;
            Ok((json!({ "period": c.period(), "index": c.index(), "min_dimension": c.min_dimension() }), EXIT_OK))
        }
        BrauerCmd::Decompose { input } => {
            let c: BrauerClass = parse(&input)?;
            Ok((json!({ "parts": c.primary_decompose() }), EXIT_OK))
        }
        BrauerCmd::SameSubgroup { a, b } => {
            let (a, b): (BrauerClass, BrauerClass) = (parse(&a)?, parse(&b)?);
            Ok((json!({ "same_subgroup": a.same_subgroup(&b) }), EXIT_OK))
        }
        BrauerCmd::Decide { p, q, cert } => match (parse_decide(&p)?, parse_decide(&q)?) {
            (DecideInput::One(p), DecideInput::One(q)) => {
                let verdict = decide_birational(&p, &q)?;
                let code = match &verdict {
                    Verdict::Birational { certificate } => {
                        if let Some(path) = cert {
                            fs::write(&path, serde_json::to_string(certificate)?)?;
                        }
                        EXIT_OK
                    }
                    Verdict::NotBirational { .. } => EXIT_NO,
                    Verdict::Unknown => EXIT_UNKNOWN,
                };
                Ok((serde_json::to_value(verdict)?, code))
            }
            (DecideInput::Many(ps), DecideInput::Many(qs)) => {
                let verdict = decide_stably_birational_products(&ps, &qs, SUBGROUP_BOUND)?;
                let code = if verdict == StableVerdict::StablyBirational { EXIT_OK } else { EXIT_NO };
                Ok((json!({ "verdict": verdict }), code))
            }
            _ => Err(Failure("decide takes two varieties or two lists of varieties".into())),
        },
        BrauerCmd::CheckCert { input } => {
            let c: Certificate = parse(&input)?;
            let result = check_certificate(&c);
            let code = if result == CheckResult::Valid { EXIT_OK } else { EXIT_NO };
            Ok((serde_json::to_value(result)?, code))
        }
    }
}

#[derive(Deserialize)]
struct TransversalInput {
    field: FieldSpec,
    point: Vec<ElementJson>,
    subspaces: Vec<Vec<Vec<ElementJson>>>,
}

#[derive(Deserialize)]
struct SegreInput {
    field: FieldSpec,
    x: Vec<ElementJson>,
    y: Vec<ElementJson>,
}

#[derive(Deserialize)]
struct VeroneseInput {
    field: FieldSpec,
    x: Vec<ElementJson>,
    r: u32,
}

#[derive(Deserialize)]
struct Constraint {
    rows: Vec<Vec<ElementJson>>,
    form: Vec<ElementJson>,
}

#[derive(Deserialize)]
struct FormsInput {
    field: FieldSpec,
    ambient: usize,
    degree: u32,
    #[serde(default)]
    constraints: Vec<Constraint>,
    point: Option<Vec<ElementJson>>,
}

fn geom(cmd: GeomCmd) -> CmdResult {
    let report = match cmd {
        GeomCmd::Transversal { input } => {
            let inp: TransversalInput = parse(&input)?;
            let ctx = inp.field.context()?;
            let p = sio::point_in(&ctx, &inp.point)?;
            let ls = inp.subspaces.iter().map(|rows| sio::subspace_in(&ctx, rows)).collect::<Result<Vec<_>, _>>()?;
            let m = transversal(&p, &ls)?;
            json!({ "field": FieldSpec::of(&ctx), "dim": m.dim(), "rows": sio::subspace_out(&m) })
        }
        GeomCmd::Segre { input } => {
            let inp: SegreInput = parse(&input)?;
            let ctx = inp.field.context()?;
            let z = segre(&sio::point_in(&ctx, &inp.x)?, &sio::point_in(&ctx, &inp.y)?)?;
            json!({ "field": FieldSpec::of(&ctx), "point": sio::point_out(&z) })
        }
        GeomCmd::Veronese { input } => {
            let inp: VeroneseInput = parse(&input)?;
            if inp.r == 0 {
                return Err(Failure("veronese degree must be positive".into()));
            }
            let ctx = inp.field.context()?;
            let z = veronese(&sio::point_in(&ctx, &inp.x)?, inp.r);
            json!({ "field": FieldSpec::of(&ctx), "point": sio::point_out(&z) })
        }
        GeomCmd::Forms { input } => {
            let inp: FormsInput = parse(&input)?;
            let ctx = inp.field.context()?;
            let mut constraints = Vec::new();
            for c in &inp.constraints {
                let l = sio::subspace_in(&ctx, &c.rows)?;
                let form = FormJson { nvars: l.dim() + 1, degree: inp.degree, coeffs: c.form.clone() };
                constraints.push((l, sio::form_in(&ctx, &form)?));
            }
            let w = restricted_form_space(&ctx, inp.ambient, inp.degree, &constraints)?;
            let mut report = json!({
                "field": FieldSpec::of(&ctx),
                "dim": w.dim(),
                "monomials": monomials(inp.ambient + 1, inp.degree),
                "basis": w.forms().iter().map(|f| sio::form_out(&ctx, f)).collect::<Vec<_>>(),
            });
            if let Some(x) = &inp.point {
                let image = apply_forms(&w, &sio::point_in(&ctx, x)?)?;
                report["image"] = json!(sio::point_out(&image));
            }
            report
        }
    };
    Ok((report, EXIT_OK))
}

fn need<T>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure(format!("--{name} is required")))
}

fn finish(report: Report) -> CmdResult {
    let code = if report.ok { EXIT_OK } else { EXIT_NO };
    Ok((serde_json::to_value(report)?, code))
}

fn run_verify(cmd: VerifyCmd) -> CmdResult {
    match cmd {
        VerifyCmd::Span { run, big_n } => {
            finish(verify::verify_span(run.q.unwrap_or(5), big_n, run.trials.unwrap_or(100), run.seed)?)
        }
        VerifyCmd::Prop14 { run } => {
            let (q, n, m) = (need(run.q, "q")?, need(run.n, "n")?, need(run.m, "m")?);
            finish(verify::verify_prop14(q, n, m, run.trials.unwrap_or(200), run.seed)?)
        }
        VerifyCmd::Thm2 { run, trace } => {
            let (q, n, m) = (need(run.q, "q")?, need(run.n, "n")?, need(run.m, "m")?);
            let trials = run.trials.unwrap_or(100);
            let report = verify::verify_thm2(q, n, m, trials, run.seed)?;
            let (mut value, code) = finish(report)?;
            if trace {
                value["trace"] = verify::thm2_sample_trace(q, n, m, trials, run.seed)?.unwrap_or(Value::Null);
            }
            Ok((value, code))
        }
        VerifyCmd::Lemma17 { run, r } => {
            let (q, n, m) = (run.q.unwrap_or(7), run.n.unwrap_or(1), run.m.unwrap_or(1));
            finish(verify::verify_lemma17(q, n, m, r, run.trials.unwrap_or(20), run.seed)?)
        }
        VerifyCmd::BrauerLaws { run, max_period } => {
            finish(verify::verify_brauer_laws(run.trials.unwrap_or(1000), run.seed, max_period)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::Brauer(cmd) => brauer(cmd),
        Command::Geom(cmd) => geom(cmd),
        Command::Verify(cmd) => run_verify(cmd),
    };
    match result {
        Ok((report, code)) => {
            let text = serde_json::to_string(&report).expect("reports serialize") + "\n";
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(EXIT_INPUT);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(code)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
