//! `repho`: representation homology from semi-free DG presentations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use repho_core::builders::{builtin, Builtin, BUILTIN_NAMES};
use repho_core::cache::BlockCache;
use repho_core::commdga::CommDgAlgebra;
use repho_core::homology::{
    betti, class_of, euler_check, h0_oracle, BettiOptions, HomologyBlock, DEFAULT_MONOMIAL_CAP,
};
use repho_core::linalg::Arithmetic;
use repho_core::matrixify::{is_gl_invariant, matrixify};
use repho_core::presentation::{DgPresentation, Mode};
use repho_core::tangent::{tangent_complex, RepPoint};
use repho_core::traces::{trace_word, MatrixWord};
use repho_core::Error;

const THREADS_ENV: &str = "REPHO_THREADS";

#[derive(Parser)]
#[command(name = "repho", version, about = "Exact representation homology of associative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check degree, weight and d^2 = 0 rules of a presentation.
    Validate {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the commutative DG algebra on n x n matrix entries.
    Matrixify {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Betti table of H(A, k^n) on a bidegree window.
    Homology {
        input: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_weight: u32,
        #[arg(long)]
        max_hdeg: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        /// Filtered mode: compare the W-run with the (W + margin)-run.
        #[arg(long)]
        margin: Option<u32>,
        /// Include homology basis representatives (graded mode).
        #[arg(long)]
        reps: bool,
        #[arg(long, conflicts_with = "modular")]
        exact: bool,
        /// Multi-modular ranks with an agreement vote; falls back to exact.
        #[arg(long)]
        modular: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Compare H_0 with the coordinate ring of the representation scheme.
    #[command(name = "h0-oracle")]
    H0Oracle {
        input: String,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_weight: u32,
    },
    /// Trace of a product of generator matrices.
    Trace {
        input: String,
        #[command(flatten)]
        common: Common,
        /// Letters separated by spaces or `*`.
        #[arg(long)]
        word: String,
        #[arg(long)]
        cyclic: bool,
        /// Also report the homology class.
        #[arg(long)]
        class: bool,
    },
    /// Test GL_n invariance of an element of the matrixified algebra.
    Invariant {
        input: String,
        #[command(flatten)]
        common: Common,
        /// Expression in the matrix variables, e.g. `x[1][1] + x[2][2]`.
        #[arg(long)]
        element: String,
    },
    /// Derived tangent space dimensions at a representation.
    Tangent {
        input: String,
        #[command(flatten)]
        common: Common,
        /// JSON map from generator to row-major rational matrix.
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        max_deg: usize,
        /// Truncate the presentation to generators of weight <= W first.
        #[arg(long)]
        max_weight: Option<u32>,
    },
    /// List or emit built-in presentations.
    Builtin {
        #[command(subcommand)]
        action: BuiltinAction,
    },
}

#[derive(Subcommand)]
enum BuiltinAction {
    List,
    Emit {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: usize,
    /// Overrides the REPHO_THREADS environment variable.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MONOMIAL_CAP)]
    monomial_cap: usize,
    /// Write JSON here and the text rendering next to it with a `.txt` suffix.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auto,
    Graded,
    Filtered,
}

/// A path, or `builtin:NAME[:p1,p2,...]`.
fn load(input: &str) -> anyhow::Result<DgPresentation> {
    if let Some(spec) = input.strip_prefix("builtin:") {
        let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
        let params: Vec<String> = params.split(',').filter(|s| !s.is_empty()).map(str::to_string).collect();
        return Ok(builtin(&Builtin::parse(name, &params)?)?);
    }
    let text = fs::read_to_string(input).with_context(|| format!("cannot read `{input}`"))?;
    Ok(DgPresentation::from_json_str(&text)?)
}

fn threads(flag: Option<usize>) -> anyhow::Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => Ok(Some(v.trim().parse().with_context(|| format!("{THREADS_ENV}=`{v}` is not a count"))?)),
        Err(_) => Ok(None),
    }
}

fn algebra(input: &str, n: usize) -> anyhow::Result<CommDgAlgebra> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    Ok(matrixify(&load(input)?, n)?)
}

/// Prints `text` or `json` to stdout; with `-o`, writes both to files.
fn emit(common: &Common, text: &str, json: &serde_json::Value) -> anyhow::Result<()> {
    let body = serde_json::to_string_pretty(json)? + "\n";
    if let Some(path) = &common.output {
        write(path, &body)?;
        let mut txt = path.clone().into_os_string();
        txt.push(".txt");
        write(Path::new(&txt), text)?;
    }
    match common.format {
        Format::Text => print!("{text}"),
        Format::Json => print!("{body}"),
    }
    Ok(())
}

fn write(path: &Path, body: &str) -> anyhow::Result<()> {
    fs::write(path, body).with_context(|| format!("cannot write `{}`", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Validate { input, format } => {
            let pres = load(&input)?;
            let report = pres.validate();
            let out = match format {
                Format::Text => report.to_string(),
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            if report.valid {
                print!("{out}");
                Ok(ExitCode::SUCCESS)
            } else {
                eprint!("{out}");
                Ok(ExitCode::from(2))
            }
        }
        Command::Matrixify { input, common } => {
            let alg = algebra(&input, common.n)?;
            let json = alg.to_json();
            let mut text = format!("{} variables\n", json.variables.len());
            for (v, d) in &json.differential {
                text.push_str(&format!("d {v} = {d}\n"));
            }
            emit(&common, &text, &serde_json::to_value(&json)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology {
            input,
            common,
            max_weight,
            max_hdeg,
            mode,
            margin,
            reps,
            exact: _,
            modular,
            cache_dir,
        } => {
            let alg = algebra(&input, common.n)?;
            let cache = cache_dir.map(BlockCache::open).transpose()?;
            let mut opts = BettiOptions::new(max_hdeg, max_weight)
                .monomial_cap(common.monomial_cap)
                .arithmetic(if modular { Arithmetic::Modular } else { Arithmetic::Exact });
            if let Some(t) = threads(common.threads)? {
                opts = opts.threads(t);
            }
            match mode {
                ModeArg::Auto => {}
                ModeArg::Graded => opts = opts.mode(Mode::Graded),
                ModeArg::Filtered => opts = opts.mode(Mode::Filtered),
            }
            if let Some(m) = margin {
                opts = opts.margin(m);
            }
            if let Some(c) = cache.as_ref() {
                opts = opts.cache(c);
            }
            let table = betti(&alg, &opts)?;
            let mut json = serde_json::to_value(&table)?;
            let mut text = table.render_text();
            if table.mode == Mode::Graded {
                let euler = euler_check(&table)?;
                text.push_str(&format!("Euler identity on complete weights: {}\n", if euler { "ok" } else { "FAILED" }));
                if !euler {
                    bail!("Euler identity fails; the table is inconsistent");
                }
            }
            if reps {
                if table.mode != Mode::Graded {
                    bail!("--reps needs graded mode");
                }
                let mut all = serde_json::Map::new();
                for e in table.entries.iter().filter(|e| e.dim > 0) {
                    let block = HomologyBlock::compute(&alg, e.hdeg, e.weight, common.monomial_cap)?;
                    let r: Vec<String> = block.representatives().iter().map(|x| alg.fmt_element(x)).collect();
                    for x in &r {
                        text.push_str(&format!("H({},{}) ∋ {x}\n", e.hdeg, e.weight));
                    }
                    all.insert(format!("{},{}", e.hdeg, e.weight), json!(r));
                }
                json["representatives"] = serde_json::Value::Object(all);
            }
            emit(&common, &text, &json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::H0Oracle { input, common, max_weight } => {
            let pres = load(&input)?;
            let r = h0_oracle(&pres, common.n, max_weight, common.monomial_cap)?;
            let mut text = String::from("weight  oracle  betti\n");
            for w in 0..=max_weight as usize {
                text.push_str(&format!("{w:>6}  {:>6}  {:>5}\n", r.oracle[w], r.betti[w]));
            }
            text.push_str(&format!("verdict: {}\n", if r.equal { "equal" } else { "DIFFERENT" }));
            emit(&common, &text, &serde_json::to_value(&r)?)?;
            Ok(if r.equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Trace { input, common, word, cyclic, class } => {
            let alg = algebra(&input, common.n)?;
            let mut w = MatrixWord::parse(&word);
            w.cyclic = cyclic;
            let e = trace_word(&alg, &w)?;
            let mut text = format!("{}\n", alg.fmt_element(&e));
            let mut json = json!({ "word": w.letters, "cyclic": cyclic, "element": alg.fmt_element(&e) });
            if class {
                let c = class_of(&alg, &e, common.monomial_cap)?;
                text.push_str(&format!(
                    "class in H({},{}) of dimension {}: {}\n",
                    c.hdeg,
                    c.weight,
                    c.homology_dim,
                    if c.is_zero() { "zero" } else { "nonzero" }
                ));
                if let Some(wit) = &c.boundary_witness {
                    text.push_str(&format!("boundary of {}\n", alg.fmt_element(wit)));
                    json["boundary_witness"] = json!(alg.fmt_element(wit));
                }
                json["class"] = serde_json::to_value(&c)?;
            }
            emit(&common, &text, &json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariant { input, common, element } => {
            let alg = algebra(&input, common.n)?;
            let e = alg.parse(&element)?;
            let inv = is_gl_invariant(&alg, &e)?;
            let text = format!("{}\n", if inv { "invariant" } else { "not invariant" });
            emit(&common, &text, &json!({ "element": alg.fmt_element(&e), "invariant": inv }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tangent { input, common, point, max_deg, max_weight } => {
            let mut pres = load(&input)?;
            if let Some(w) = max_weight {
                pres = pres.truncate_by_weight(w)?;
                eprintln!(
                    "note: truncated at weight {w}; π_i is exact only once every generator of hdeg i and i+1 is included"
                );
            }
            let alg = matrixify(&pres, common.n)?;
            let text = fs::read_to_string(&point).with_context(|| format!("cannot read `{}`", point.display()))?;
            let pt = RepPoint::from_json_str(&text)?;
            let tc = tangent_complex(&alg, &pt)?;
            let pi: Vec<usize> = (0..=max_deg).map(|i| tc.homology().get(i).copied().unwrap_or(0)).collect();
            if !tc.euler_holds() {
                bail!("Euler identity fails for the tangent complex");
            }
            let mut text = String::from("degree  dim  pi\n");
            for (i, p) in pi.iter().enumerate() {
                text.push_str(&format!("{i:>6}  {:>3}  {p:>2}\n", tc.dims.get(i).copied().unwrap_or(0)));
            }
            emit(&common, &text, &json!({ "n": tc.n, "dims": tc.dims, "ranks": tc.ranks, "pi": pi }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Builtin { action } => match action {
            BuiltinAction::List => {
                for (name, about) in BUILTIN_NAMES {
                    println!("{name:<16} {about}");
                }
                Ok(ExitCode::SUCCESS)
            }
            BuiltinAction::Emit { name, params, output } => {
                let pres = builtin(&Builtin::parse(&name, &params)?)?;
                let body = pres.to_json_string() + "\n";
                match output {
                    Some(path) => write(&path, &body)?,
                    None => print!("{body}"),
                }
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidPresentation { .. }) => 2,
        Some(Error::ResourceCap { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
