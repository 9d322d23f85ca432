use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lysenok::clopen::{ClopenSet, Cylinder};
use lysenok::element::{GroupElement, DEFAULT_ORDER_CAP};
use lysenok::error::Error;
use lysenok::grigorchuk::{check_relator, lysenok_relator, Relator};
use lysenok::rewrite::{compile_expr, eval_expr, eval_word, exponent_sum_t, parse_expr};
use lysenok::verify::{self, Config};
use lysenok::words::{occurs_in_xi, set_prefix_cap, w_n, xi_letter, xi_prefix, Word};

/// Exact computations in the topological full group of the Lysenok
/// substitution subshift.
#[derive(Parser)]
#[command(name = "lysenok", version)]
struct Cli {
    /// Largest level n for parameterized lemma suites.
    #[arg(long = "n", global = true, default_value_t = 5, value_name = "MAX")]
    n_max: u32,
    /// Longest prefix of xi that may be materialized.
    #[arg(long, global = true, default_value_t = 1 << 20, value_name = "P")]
    prefix_cap: usize,
    /// Seed for the randomized identity checks.
    #[arg(long, global = true, default_value_t = 0, value_name = "S")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The fixed word xi.
    #[command(subcommand)]
    Xi(XiCmd),
    /// Cylinders and clopen sets.
    #[command(subcommand)]
    Cyl(CylCmd),
    /// Elements given as expressions or serialized cocycles.
    #[command(subcommand)]
    Elem(ElemCmd),
    /// Rewrite an expression as a word in T, delta[.b], delta[.d], delta[.acacac].
    Rewrite { expr: String },
    /// Run a lemma suite (or `all`).
    Verify { lemma: String },
    /// The Grigorchuk group embedding.
    #[command(subcommand)]
    Grig(GrigCmd),
}

#[derive(Subcommand)]
enum XiCmd {
    /// The letter at 1-based position N.
    Letter { n: u64 },
    /// The first L letters.
    Prefix { len: usize },
    /// Whether WORD is a factor.
    Occurs { word: String },
}

#[derive(Subcommand)]
enum CylCmd {
    /// Whether the cylinder is empty.
    Empty { cyl: String },
    /// Invariant measure of a cylinder or serialized clopen set.
    Measure { set: String },
    /// Write a dimension-2^n cylinder as T^N [.w_n l].
    Normal { cyl: String },
}

#[derive(Subcommand)]
enum ElemCmd {
    /// Canonical serialization.
    Eval { expr: String },
    /// Order, or `infinite` beyond the cap.
    Order {
        expr: String,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: u64,
    },
    /// Index (measure-weighted mean of the cocycle).
    Index { expr: String },
    /// Whether two elements are equal.
    Eq { a: String, b: String },
}

#[derive(Subcommand)]
enum GrigCmd {
    /// Expand sigma^K of a relator and check its image.
    Relator { k: u32, which: String },
}

enum Failure {
    Usage(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalVerificationFailed(m) => Failure::Verification(m),
            other => Failure::Usage(other),
        }
    }
}

type Out = Result<Vec<String>, Failure>;

fn element(text: &str) -> Result<GroupElement, Error> {
    if text.trim_start().starts_with("r=") {
        text.parse()
    } else {
        eval_expr(&parse_expr(text)?)
    }
}

fn clopen(text: &str) -> Result<ClopenSet, Error> {
    if text.trim_start().starts_with("r=") {
        text.parse()
    } else {
        text.parse::<Cylinder>()?.to_set()
    }
}

fn xi(cmd: XiCmd) -> Out {
    Ok(vec![match cmd {
        XiCmd::Letter { n } => {
            if n == 0 {
                return Err(Error::InvalidArgument("positions of xi start at 1".into()).into());
            }
            xi_letter(n).to_string()
        }
        XiCmd::Prefix { len } => xi_prefix(len)?.to_string(),
        XiCmd::Occurs { word } => occurs_in_xi(&word.parse::<Word>()?)?.to_string(),
    }])
}

fn cyl(cmd: CylCmd) -> Out {
    Ok(vec![match cmd {
        CylCmd::Empty { cyl } => cyl.parse::<Cylinder>()?.is_empty()?.to_string(),
        CylCmd::Measure { set } => clopen(&set)?.measure().to_string(),
        CylCmd::Normal { cyl } => {
            let c: Cylinder = cyl.parse()?;
            let (l, shift) = c.normal_form_2n()?;
            let n = c.dimension().trailing_zeros();
            format!("T^{shift} [.{}{l}]", w_n(n)?)
        }
    }])
}

fn elem(cmd: ElemCmd) -> Out {
    Ok(vec![match cmd {
        ElemCmd::Eval { expr } => element(&expr)?.to_string(),
        ElemCmd::Order { expr, cap } => element(&expr)?.order(cap)?.to_string(),
        ElemCmd::Index { expr } => element(&expr)?.index().to_string(),
        ElemCmd::Eq { a, b } => (element(&a)? == element(&b)?).to_string(),
    }])
}

fn rewrite(expr: &str) -> Out {
    if expr.trim_start().starts_with("r=") {
        return Err(Failure::Usage(Error::InvalidArgument(
            "not decomposed: a raw cocycle has no known decomposition into basic moves; \
             give a product of T, delta, tau and psi instead"
                .into(),
        )));
    }
    let e = parse_expr(expr)?;
    let word = compile_expr(&e)?;
    let target = eval_expr(&e)?;
    let got = eval_word(&word)?;
    let verified = got == target;
    let index = target.index();
    let lines = vec![
        format!("word: {word}"),
        format!("verified: {verified}"),
        format!("index: {index}"),
    ];
    if !verified || exponent_sum_t(&word) != index {
        return Err(Failure::Verification(lines.join("\n")));
    }
    Ok(lines)
}

fn run_verify(lemma: &str, cfg: &Config) -> Out {
    let outcomes = if lemma == "all" {
        verify::run_all(cfg)
    } else {
        verify::run(lemma, cfg)?
    };
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let mut lines: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
    lines.push(format!("passed: {}", outcomes.len() - failed));
    lines.push(format!("failed: {failed}"));
    if failed > 0 {
        return Err(Failure::Verification(lines.join("\n")));
    }
    Ok(lines)
}

fn grig(cmd: GrigCmd) -> Out {
    let GrigCmd::Relator { k, which } = cmd;
    let which: Relator = which.parse()?;
    let word = lysenok_relator(k, which)?;
    let identity = check_relator(k, which)?;
    let lines = vec![format!("word: {word}"), format!("identity: {identity}")];
    if !identity {
        return Err(Failure::Verification(lines.join("\n")));
    }
    Ok(lines)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_prefix_cap(cli.prefix_cap);
    let cfg = Config {
        n_max: cli.n_max,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Xi(c) => xi(c),
        Command::Cyl(c) => cyl(c),
        Command::Elem(c) => elem(c),
        Command::Rewrite { expr } => rewrite(&expr),
        Command::Verify { lemma } => run_verify(&lemma, &cfg),
        Command::Grig(c) => grig(c),
    };
    match result {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(report)) => {
            println!("{report}");
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
