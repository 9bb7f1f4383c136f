use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loopbracket::goldman::{verify_goldman, SurfaceBracket};
use loopbracket::schema::{
    axiom_report_to_json, bv_element_from_json, bv_element_to_json, formal_sum_to_json, goldman_report_to_json,
    sign_resolution_to_json,
};
use loopbracket::{
    backend, resolve_signs, verify_axioms, BVElement, BracketConfig, BracketConvention, BvAlgebra,
    Error, LoopClass, Presentation, Representation, SignConfig,
};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "loopbracket", version, about = "Goldman bracket and the BV algebra of a closed surface group")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Conjugator search depth for the genus >= 2 bracket.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Extra depth of the stabilization pass.
    #[arg(long, global = true, default_value_t = 2)]
    step: usize,
    /// Numerical tolerance for geometric predicates.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Signs of the degree (1,1) product, e.g. `++-+`.
    #[arg(long = "sign-config", global = true, allow_hyphen_values = true, value_parser = parse_signs)]
    sign_config: Option<SignConfig>,
    /// How the bracket is derived from the BV operator.
    #[arg(long, global = true, value_enum, default_value_t = Convention::Shifted)]
    convention: Convention,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Shifted,
    Literal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Goldman,
    Bv,
}

#[derive(Subcommand)]
enum Command {
    /// Goldman bracket of two loop classes.
    Bracket {
        genus: usize,
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
        /// Write a Poincaré-disk picture of the crossings.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Classes of canonical length at most N and the truncated dimensions of HH*.
    Classes { genus: usize, max_len: i64 },
    /// Cup product of two elements (JSON files or inline JSON).
    Cup { genus: usize, e1: String, e2: String },
    /// The BV operator.
    Delta { genus: usize, e: String },
    /// The bracket generated by the BV operator.
    Gerstenhaber { genus: usize, e1: String, e2: String },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "max-class-len", default_value_t = 2)]
        max_class_len: usize,
    },
    /// Test all sixteen sign configurations against the BV axioms.
    ResolveSigns {
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long = "max-class-len", default_value_t = 2)]
        max_class_len: usize,
    },
    /// Check the Fuchsian representation.
    RepCheck {
        genus: usize,
        #[arg(long = "max-length", default_value_t = 6)]
        max_length: usize,
    },
}

fn parse_signs(text: &str) -> Result<SignConfig, String> {
    text.parse().map_err(|e: Error| e.to_string())
}

/// What a subcommand produced: text, JSON, and whether a verification failed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonStabilized { .. } | Error::Degenerate(_) => 3,
        Error::NoPassingSigns => 1,
        _ => 2,
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    if let Error::NonStabilized {
        depth,
        next_depth,
        lower,
        upper,
    } = e
    {
        v["error"]["depth"] = json!(depth);
        v["error"]["next_depth"] = json!(next_depth);
        v["error"]["lower"] = formal_sum_to_json(lower);
        v["error"]["upper"] = formal_sum_to_json(upper);
    }
    v
}

impl Cli {
    fn config(&self) -> BracketConfig {
        BracketConfig {
            max_conjugator_length: self.depth,
            stabilization_step: self.step,
            tolerance: self.tolerance,
        }
    }

    fn signs(&self) -> SignConfig {
        self.sign_config.unwrap_or_default()
    }

    fn algebra(&self, genus: usize) -> Result<BvAlgebra, Error> {
        let convention = match self.convention {
            Convention::Shifted => BracketConvention::Shifted,
            Convention::Literal => BracketConvention::Literal,
        };
        Ok(BvAlgebra::new(Arc::from(backend(genus, self.config())?), self.signs()).with_convention(convention))
    }
}

fn read_element(arg: &str, genus: usize) -> Result<BVElement, Error> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg)).map_err(|e| Error::InvalidArgument(format!("cannot read `{arg}`: {e}")))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Schema(format!("`{arg}`: {e}")))?;
    let x = bv_element_from_json(&value)?;
    if x.genus() != genus {
        return Err(Error::GenusMismatch {
            left: x.genus(),
            right: genus,
        });
    }
    Ok(x)
}

fn element_output(x: &BVElement) -> Output {
    Output::ok(x.to_string(), bv_element_to_json(x))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Bracket { genus, w1, w2, svg } => {
            let presentation = Presentation::new(*genus)?;
            let x = LoopClass::parse(w1, &presentation)?;
            let y = LoopClass::parse(w2, &presentation)?;
            let result = if *genus >= 2 {
                let engine = SurfaceBracket::new(*genus, cli.config())?;
                let trace = engine.trace(&x, &y)?;
                if let Some(path) = svg {
                    let picture = loopbracket::svg::render_trace(&trace, &x.to_string(), &y.to_string());
                    fs::write(path, picture)
                        .map_err(|e| Error::InvalidArgument(format!("cannot write `{}`: {e}", path.display())))?;
                }
                trace.result
            } else {
                if svg.is_some() {
                    return Err(Error::Unsupported("--svg needs genus >= 2".into()));
                }
                backend(1, cli.config())?.bracket_classes(&x, &y)?
            };
            Ok(Output::ok(format!("[{x}, {y}] = {result}"), formal_sum_to_json(&result)))
        }
        Command::Classes { genus, max_len } => {
            let classes = Presentation::new(*genus)?.enumerate_classes(*max_len)?;
            let n = classes.len();
            let (hh0, hh1, hh2) = (1, 2 * genus + (n - 1), n);
            let mut text: Vec<String> = classes
                .iter()
                .map(|c| if c.is_trivial() { "γ0".to_string() } else { c.to_string() })
                .collect();
            text.push(format!("classes: {n}"));
            text.push(format!("dim HH0 = {hh0}, dim HH1 = {hh1}, dim HH2 = {hh2}"));
            let json = json!({
                "genus": genus,
                "max_len": max_len,
                "classes": classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "count": n,
                "dimensions": {"HH0": hh0, "HH1": hh1, "HH2": hh2},
            });
            Ok(Output::ok(text.join("\n"), json))
        }
        Command::Cup { genus, e1, e2 } => {
            let alg = cli.algebra(*genus)?;
            Ok(element_output(&alg.cup(&read_element(e1, *genus)?, &read_element(e2, *genus)?)?))
        }
        Command::Delta { genus, e } => {
            let alg = cli.algebra(*genus)?;
            Ok(element_output(&alg.delta(&read_element(e, *genus)?)?))
        }
        Command::Gerstenhaber { genus, e1, e2 } => {
            let alg = cli.algebra(*genus)?;
            Ok(element_output(&alg.gerstenhaber(&read_element(e1, *genus)?, &read_element(e2, *genus)?)?))
        }
        Command::Verify {
            suite,
            genus,
            samples,
            seed,
            max_class_len,
        } => match suite {
            Suite::Goldman => {
                let engine = backend(*genus, cli.config())?;
                let report = verify_goldman(engine.as_ref(), *max_class_len, *samples, *seed)?;
                let mut lines = vec![format!(
                    "goldman suite: genus {genus}, classes up to length {max_class_len}, {samples} samples, seed {seed}"
                )];
                for c in &report.checks {
                    lines.push(format!(
                        "  {:<28} {} ({} checks, {} failures)",
                        c.name,
                        if c.passed() { "PASS" } else { "FAIL" },
                        c.checks,
                        c.failures
                    ));
                    if let Some(w) = &c.counterexample {
                        let inputs: Vec<String> = w.inputs.iter().map(|x| x.to_string()).collect();
                        lines.push(format!("    witness [{}]: {} != {}", inputs.join("; "), w.lhs, w.rhs));
                    }
                }
                Ok(Output {
                    text: lines.join("\n"),
                    json: goldman_report_to_json(&report),
                    ok: report.passed(),
                })
            }
            Suite::Bv => {
                let alg = cli.algebra(*genus)?;
                let report = verify_axioms(&alg, *max_class_len, *samples, *seed)?;
                let mut lines = vec![format!(
                    "bv suite: genus {genus}, signs {}, {} bracket, classes up to length {max_class_len}, {samples} samples, seed {seed}",
                    report.signs, report.convention
                )];
                lines.extend(axiom_lines(&report));
                Ok(Output {
                    text: lines.join("\n"),
                    json: axiom_report_to_json(&report),
                    ok: report.passed(),
                })
            }
        },
        Command::ResolveSigns {
            genus,
            samples,
            seed,
            max_class_len,
        } => {
            let alg = cli.algebra(*genus)?;
            let res = resolve_signs(&alg, *max_class_len, *samples, *seed)?;
            let mut lines = vec![format!(
                "sign resolution: genus {genus}, {samples} samples, seed {seed}, {} bracket",
                alg.convention()
            )];
            for r in &res.reports {
                let failed: Vec<&str> = r.results.iter().filter(|a| !a.passed()).map(|a| a.axiom).collect();
                lines.push(format!(
                    "  {} {}",
                    r.signs,
                    if failed.is_empty() { "PASS".to_string() } else { format!("FAIL {}", failed.join(", ")) }
                ));
            }
            let passing: Vec<String> = res.passing.iter().map(|s| s.to_string()).collect();
            lines.push(format!("passing: {}", passing.join(" ")));
            lines.push(format!("default: {}", res.default));
            if let Some(r) = res.reports.iter().find(|r| r.signs == SignConfig::ALL_PLUS) {
                if let Some(c) = r.result("graded_commutativity").and_then(|a| a.counterexample.as_ref()) {
                    lines.push(format!("all-plus commutativity witness: x = {}", c.inputs[0]));
                    lines.push(format!("                                y = {}", c.inputs[1]));
                    lines.push(format!("  x∪y = {}", c.lhs));
                    lines.push(format!("  (−1)^|x||y| y∪x = {}", c.rhs));
                }
            }
            Ok(Output::ok(lines.join("\n"), sign_resolution_to_json(&res)))
        }
        Command::RepCheck { genus, max_length } => {
            let rep = Representation::build(*genus)?.with_tolerance(cli.tolerance);
            let check = rep.check(*max_length);
            let text = format!(
                "genus {}: relator error {:.3e}, {} words up to length {}, min |trace| {:.6} -> {}",
                check.genus,
                check.relator_error,
                check.words_checked,
                check.max_length,
                check.min_abs_trace,
                if check.passed { "PASS" } else { "FAIL" }
            );
            let json = json!({
                "genus": check.genus,
                "relator_error": check.relator_error,
                "words_checked": check.words_checked,
                "max_length": check.max_length,
                "min_abs_trace": check.min_abs_trace,
                "tolerance": rep.tolerance(),
                "passed": check.passed,
            });
            Ok(Output {
                text,
                json,
                ok: check.passed,
            })
        }
    }
}

fn axiom_lines(report: &loopbracket::AxiomReport) -> Vec<String> {
    let mut lines = Vec::new();
    for r in &report.results {
        lines.push(format!(
            "  {:<22} {} ({} checks, {} failures)",
            r.axiom,
            if r.passed() { "PASS" } else { "FAIL" },
            r.checks,
            r.failures
        ));
        if let Some(c) = &r.counterexample {
            for (i, x) in c.inputs.iter().enumerate() {
                lines.push(format!("    input {}: {}", i + 1, x));
            }
            lines.push(format!("    lhs: {}", c.lhs));
            lines.push(format!("    rhs: {}", c.rhs));
        }
    }
    lines
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                let body = serde_json::to_string_pretty(&error_json(&e)).expect("serializable");
                let _ = writeln!(std::io::stdout().lock(), "{body}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
