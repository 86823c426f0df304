mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cliffhc_core::lie_core::{CartanType, FormChoice};
use cliffhc_core::principal::verify_main2;
use cliffhc_core::transgression::primitive_basis_from;
use cliffhc_core::verify::{default_hbars, form_name, Report, Suite, SweepPolicy, Verifier};
use cliffhc_core::{Error, Q};
use serde_json::{json, Value};

use cache::{Cache, Entry};

#[derive(Parser)]
#[command(
    name = "cliffhc",
    version,
    about = "Exact verification of the Clifford Harish-Chandra map on low-rank Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite and report every assertion.
    Verify(VerifyArgs),
    /// Print the principal-basis table: exponents, degrees, dual principal basis, Phi(p_i).
    Table(TableArgs),
    /// Manage the structure-constant and generator cache.
    Cache(CacheArgs),
}

#[derive(Args)]
struct Common {
    /// Cartan type, e.g. A1, A2, B2, G2, A1+A1.
    #[arg(long, value_parser = parse_type)]
    algebra: CartanType,
    #[arg(long, value_enum, default_value_t = FormArg::Trace)]
    form: FormArg,
    /// Directory of the structure-constant cache; without it everything is built fresh.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Write the JSON document to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print JSON on stdout instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Comma-separated rationals, e.g. 0,1,2,1/2.
    #[arg(long, value_delimiter = ',', value_parser = parse_q)]
    hbar: Vec<Q>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
    #[arg(long, global = true, default_value = ".cliffhc-cache")]
    cache_dir: PathBuf,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Build (or rebuild) the entry for one algebra and form.
    Build {
        #[arg(long, value_parser = parse_type)]
        algebra: CartanType,
        #[arg(long, value_enum, default_value_t = FormArg::Trace)]
        form: FormArg,
    },
    /// List cached (type, form) entries.
    List,
    /// Remove every cache entry.
    Clear,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Killing,
    Trace,
}

impl From<FormArg> for FormChoice {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Killing => FormChoice::Killing,
            FormArg::Trace => FormChoice::MinimalTrace,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Main1,
    Main2,
    Lemmas,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Main1 => Suite::Main1,
            SuiteArg::Main2 => Suite::Main2,
            SuiteArg::Lemmas => Suite::Lemmas,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    let t: CartanType = s.parse().map_err(|e: Error| e.to_string())?;
    t.validate().map_err(|e| e.to_string())?;
    Ok(t)
}

fn parse_q(s: &str) -> Result<Q, String> {
    s.trim().parse().map_err(|e: Error| e.to_string())
}

const EXIT_MATH: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn load(c: &Common) -> Result<Entry, Error> {
    let form = c.form.into();
    match &c.cache_dir {
        Some(dir) => Cache::new(dir).load_or_build(&c.algebra, form),
        None => cache::fresh(&c.algebra, form),
    }
}

fn emit(c: &Common, doc: &Value, text: &str) -> Result<(), ExitCode> {
    let s = serde_json::to_string_pretty(doc).expect("json");
    if let Some(path) = &c.out {
        if let Err(e) = std::fs::write(path, format!("{s}\n")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return Err(ExitCode::from(EXIT_USAGE));
        }
    }
    if c.json {
        println!("{s}");
    } else {
        print!("{text}");
    }
    Ok(())
}

fn math_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Unsupported(_) | Error::Parse(_) => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_MATH),
    }
}

fn report_text(r: &Report) -> String {
    let mut s =
        format!("cliffhc verify: {} ({} form), suite {}, hbar {{{}}}\n", r.algebra, r.form, r.suite, r.hbar.join(", "));
    for a in &r.assertions {
        s += &format!("  [{}] {:<48} {}\n", if a.passed { "pass" } else { "FAIL" }, a.id, a.anchor);
    }
    let failed = r.assertions.iter().filter(|a| !a.passed).count();
    s += &format!("{} assertions, {} failed\n", r.assertions.len(), failed);
    s
}

fn cmd_verify(a: VerifyArgs) -> ExitCode {
    let hbars = if a.hbar.is_empty() { default_hbars() } else { a.hbar };
    let entry = match load(&a.common) {
        Ok(e) => e,
        Err(e) => return math_error(e),
    };
    let report = Verifier::with_generators(&entry.algebra, &entry.generators, hbars, SweepPolicy::default())
        .and_then(|v| v.run(a.suite.into()));
    let report = match report {
        Ok(r) => r,
        Err(e) => return math_error(e),
    };
    let doc = serde_json::to_value(&report).expect("report serializes");
    if let Err(code) = emit(&a.common, &doc, &report_text(&report)) {
        return code;
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        for f in report.failures() {
            eprintln!("counterexample {}: {}", f.id, serde_json::to_string(&f.detail).expect("json"));
        }
        ExitCode::from(EXIT_MATH)
    }
}

fn cmd_table(a: TableArgs) -> ExitCode {
    let entry = match load(&a.common) {
        Ok(e) => e,
        Err(e) => return math_error(e),
    };
    let g = &entry.algebra;
    let rep = match primitive_basis_from(g, &entry.generators).and_then(|pb| verify_main2(g, &pb)) {
        Ok(r) => r,
        Err(e) => return math_error(e),
    };
    let mut rows = Vec::new();
    let mut text = format!(
        "{} ({} form), dual {}\nrho = ({})   rho_check = ({})\n",
        rep.algebra,
        form_name(g.form_choice),
        rep.dual,
        rep.rho.join(", "),
        rep.rho_check.join(", ")
    );
    text += "  m   d  dim  dual principal basis          Phi(p_i)                      constant\n";
    for d in &rep.degrees {
        let idx: Vec<usize> = (0..rep.exponents.len()).filter(|&i| rep.exponents[i] == d.exponent).collect();
        let consts: Vec<Option<String>> = idx.iter().map(|&i| rep.closed_formula_constants[i].clone()).collect();
        let vec_s = |vs: &[Vec<String>]| vs.iter().map(|v| format!("({})", v.join(", "))).collect::<Vec<_>>().join(" ");
        text += &format!(
            "{:>3} {:>3} {:>4}  {:<30} {:<29} {}\n",
            d.exponent,
            d.degree,
            d.dual_piece.len(),
            vec_s(&d.dual_piece),
            vec_s(&d.phi_images),
            consts.iter().map(|c| c.clone().unwrap_or_else(|| "not parallel".into())).collect::<Vec<_>>().join(" ")
        );
        rows.push(json!({
            "exponent": d.exponent,
            "degree": d.degree,
            "dimension": d.dual_piece.len(),
            "dual_principal_basis": d.dual_piece,
            "phi_images": d.phi_images,
            "closed_formula_constants": consts,
            "spans_equal": d.spans_equal,
        }));
    }
    let doc = json!({
        "schema": "cliffhc-table/1",
        "algebra": rep.algebra,
        "form": form_name(g.form_choice),
        "dual": rep.dual,
        "rho": rep.rho,
        "rho_check": rep.rho_check,
        "rows": rows,
    });
    match emit(&a.common, &doc, &text) {
        Ok(()) => ExitCode::SUCCESS,
        Err(c) => c,
    }
}

fn cmd_cache(a: CacheArgs) -> ExitCode {
    let cache = Cache::new(&a.cache_dir);
    match a.action {
        CacheAction::Build { algebra, form } => match cache.build(&algebra, form.into()) {
            Ok(_) => {
                println!("built {} ({}) in {}", algebra, form_name(form.into()), cache.dir().display());
                ExitCode::SUCCESS
            }
            Err(e) => math_error(e),
        },
        CacheAction::List => {
            for (t, f) in cache.list() {
                println!("{t}\t{f}");
            }
            ExitCode::SUCCESS
        }
        CacheAction::Clear => match cache.clear() {
            Ok(n) => {
                println!("removed {n} files");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Table(a) => cmd_table(a),
        Cmd::Cache(a) => cmd_cache(a),
    }
}
