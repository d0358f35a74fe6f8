//! Command-line dispatch: load an algebra, run one operation, print the
//! result. `run` is in-process (returns the exit code and the output) so
//! tests can drive the full command surface without spawning binaries.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage or parse
//! error.

use crate::dual::{dual_coproduct, dual_mul, three_exterior_check, DualElement};
use crate::enveloping::{mul, pbw_basis, Element};
use crate::expr::{parse_dual, parse_element};
use crate::exterior::{roby_basis, roby_dim};
use crate::hopf::{antipode, axiom_suite, coproduct, counit, CheckOutcome};
use crate::render::{
    render_dual, render_dual_machine, render_dual_tensor,
    render_dual_tensor_machine, render_element, render_element_machine,
    render_tensor, render_tensor_machine,
};
use crate::structure::{builtin, AlgebraSpec, BUILTIN_NAMES};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

const DUAL_DEFAULT_CUTOFF: u32 = 4;
const HOPF_DEFAULT_DEGREE: usize = 3;
const HOPF_CHECK_PAIRS: usize = 200;
const HOPF_CHECK_SEED: u64 = 0x5eed_2026;

#[derive(Parser)]
#[command(
    name = "trilie",
    version,
    about = "Exact computations in order-three enveloping algebras and their Hopf dual"
)]
struct Cli {
    /// Algebra to work over: a definition file path, or `builtin:NAME`
    /// (iso3_1_1, iso3_1_2, iso3_1_3, killing_rank1, matrix_1_1_1)
    #[arg(long, global = true)]
    algebra: Option<String>,

    /// Degree cutoff for dual-space operations (default 4)
    #[arg(long, global = true)]
    cutoff: Option<u32>,

    /// Degree bound for basis listings and check suites
    #[arg(long, global = true)]
    degree: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable; round-trips through the expression parser
    Text,
    /// One term per line, `coefficient TAB label`; the golden-file contract
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the graded Jacobi/Filippov axioms of the algebra definition
    Validate,
    /// Rewrite an expression to the divided-power normal-form basis
    Normalize { expr: String },
    /// Multiply two expressions and normalize the product
    Mul { left: String, right: String },
    /// Coproduct of an expression, legs in normal form
    Coprod { expr: String },
    /// Counit of an expression
    Counit { expr: String },
    /// Antipode of an expression
    Antipode { expr: String },
    /// Run the coproduct axiom suite up to --degree (default 3)
    HopfCheck,
    /// Product of two functionals, exact up to --cutoff
    DualMul { left: String, right: String },
    /// Coproduct of a functional, exact up to the stated cutoff
    DualCoprod { expr: String },
    /// Check the functional-side exterior identities up to --cutoff
    DualCheck,
    /// Number of normal-form words: dimension d, order n, length k
    RobyDim { d: usize, n: usize, k: usize },
    /// List the normal-form words: dimension d, order n, length k
    RobyBasis { d: usize, n: usize, k: usize },
    /// Count normal-form basis monomials at each degree up to --degree
    PbwDim,
}

struct Usage(String);

fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}

/// Parse and dispatch one invocation. `args` excludes the program name.
pub fn run(args: &[&str]) -> (i32, String) {
    let argv = std::iter::once("trilie").chain(args.iter().copied());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.to_string().trim_end().to_string());
        }
    };
    match dispatch(cli) {
        Ok(out) => out,
        Err(Usage(msg)) => (2, msg),
    }
}

fn load_algebra(arg: &Option<String>) -> Result<AlgebraSpec, Usage> {
    let Some(a) = arg else {
        return Err(usage("this command needs --algebra <path|builtin:NAME>"));
    };
    if let Some(name) = a.strip_prefix("builtin:") {
        builtin(name).ok_or_else(|| {
            usage(format!(
                "unknown builtin `{name}`; available: {}",
                BUILTIN_NAMES.join(", ")
            ))
        })
    } else {
        let text = std::fs::read_to_string(a)
            .map_err(|e| usage(format!("cannot read `{a}`: {e}")))?;
        AlgebraSpec::from_json_str(&text)
            .map_err(|e| usage(format!("invalid algebra file `{a}`: {e}")))
    }
}

fn element(text: &str, spec: &AlgebraSpec) -> Result<Element, Usage> {
    parse_element(text, spec).map_err(|e| usage(e.to_string()))
}

fn dual(text: &str, spec: &AlgebraSpec) -> Result<DualElement, Usage> {
    parse_dual(text, spec).map_err(|e| usage(e.to_string()))
}

fn outcome_lines(outcomes: &[CheckOutcome]) -> (i32, String) {
    let all = outcomes.iter().all(|o| o.passed());
    let lines: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
    (if all { 0 } else { 1 }, lines.join("\n"))
}

fn dispatch(cli: Cli) -> Result<(i32, String), Usage> {
    let fmt = cli.format;
    let cutoff = cli.cutoff.unwrap_or(DUAL_DEFAULT_CUTOFF);
    Ok(match cli.cmd {
        Cmd::Validate => {
            let spec = load_algebra(&cli.algebra)?;
            let report = spec.validate();
            let lines: Vec<String> =
                report.checks.iter().map(|c| c.to_string()).collect();
            (if report.passed() { 0 } else { 1 }, lines.join("\n"))
        }
        Cmd::Normalize { expr } => {
            let spec = load_algebra(&cli.algebra)?;
            let u = element(&expr, &spec)?;
            let out = match fmt {
                Format::Text => render_element(&u, &spec),
                Format::Machine => render_element_machine(&u, &spec),
            };
            (0, out)
        }
        Cmd::Mul { left, right } => {
            let spec = load_algebra(&cli.algebra)?;
            let u = mul(&element(&left, &spec)?, &element(&right, &spec)?, &spec);
            let out = match fmt {
                Format::Text => render_element(&u, &spec),
                Format::Machine => render_element_machine(&u, &spec),
            };
            (0, out)
        }
        Cmd::Coprod { expr } => {
            let spec = load_algebra(&cli.algebra)?;
            let t = coproduct(&element(&expr, &spec)?, &spec);
            let out = match fmt {
                Format::Text => render_tensor(&t, &spec),
                Format::Machine => render_tensor_machine(&t, &spec),
            };
            (0, out)
        }
        Cmd::Counit { expr } => {
            let spec = load_algebra(&cli.algebra)?;
            let c = counit(&element(&expr, &spec)?);
            let out = match fmt {
                Format::Text => c.to_string(),
                Format::Machine => format!("{c}\t1"),
            };
            (0, out)
        }
        Cmd::Antipode { expr } => {
            let spec = load_algebra(&cli.algebra)?;
            let u = antipode(&element(&expr, &spec)?, &spec);
            let out = match fmt {
                Format::Text => render_element(&u, &spec),
                Format::Machine => render_element_machine(&u, &spec),
            };
            (0, out)
        }
        Cmd::HopfCheck => {
            let spec = load_algebra(&cli.algebra)?;
            let degree = cli.degree.unwrap_or(HOPF_DEFAULT_DEGREE);
            let outcomes =
                axiom_suite(&spec, degree, HOPF_CHECK_PAIRS, HOPF_CHECK_SEED);
            outcome_lines(&outcomes)
        }
        Cmd::DualMul { left, right } => {
            let spec = load_algebra(&cli.algebra)?;
            let h = dual_mul(&dual(&left, &spec)?, &dual(&right, &spec)?, &spec, cutoff);
            let out = match fmt {
                Format::Text => {
                    format!("{}\ncutoff: {}", render_dual(&h), h.cutoff())
                }
                Format::Machine => render_dual_machine(&h),
            };
            (0, out)
        }
        Cmd::DualCoprod { expr } => {
            let spec = load_algebra(&cli.algebra)?;
            let t = dual_coproduct(&dual(&expr, &spec)?, &spec, cutoff);
            let out = match fmt {
                Format::Text => {
                    format!("{}\ncutoff: {}", render_dual_tensor(&t), t.cutoff())
                }
                Format::Machine => render_dual_tensor_machine(&t),
            };
            (0, out)
        }
        Cmd::DualCheck => {
            let spec = load_algebra(&cli.algebra)?;
            let outcomes = three_exterior_check(&spec, cutoff);
            outcome_lines(&outcomes)
        }
        Cmd::RobyDim { d, n, k } => (0, roby_dim(d, n, k).to_string()),
        Cmd::RobyBasis { d, n, k } => {
            let lines: Vec<String> =
                roby_basis(d, n, k).iter().map(|w| w.to_string()).collect();
            (0, lines.join("\n"))
        }
        Cmd::PbwDim => {
            let spec = load_algebra(&cli.algebra)?;
            let degree = cli.degree.unwrap_or(4);
            let basis = pbw_basis(&spec, degree);
            let lines: Vec<String> = (0..=degree)
                .map(|k| {
                    let count = basis.iter().filter(|m| m.degree() == k).count();
                    match fmt {
                        Format::Text => format!("degree {k}: {count}"),
                        Format::Machine => format!("{k}\t{count}"),
                    }
                })
                .collect();
            (0, lines.join("\n"))
        }
    })
}
