//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the rendered output with its exit code.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{enumerate_family, GraphFamilyId, Limits};
use crate::hopf::{antipode, coproduct, parse_combo, reduced_coproduct, star, verify_axioms, LawStatus};
use crate::spectral::{
    coeff_table, decide_catalan_index, decide_handle_factor, verify_coproduct_identity, w_graph_sum,
    CoeffMode, CurveModel, Recursion,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Plain-text rendering for `--text`.
    pub text: String,
}

impl CommandResult {
    fn ok(payload: Value, text: String) -> CommandResult {
        CommandResult {
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
            text,
        }
    }

    fn error(e: &Error) -> CommandResult {
        CommandResult {
            status: Status::Error,
            payload: Value::Null,
            diagnostics: vec![e.to_string()],
            text: format!("error: {e}\n"),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.name(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }
}

#[derive(Parser, Debug)]
#[command(name = "hopf-tr", version, about = "Tagged-graph Hopf algebra and exact topological recursion")]
struct Cli {
    /// Print plain text instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    #[value(name = "Y")]
    Y,
    #[value(name = "X")]
    X,
    #[value(name = "Xbar")]
    Xbar,
    #[value(name = "Xg")]
    Xg,
    #[value(name = "EO")]
    Eo,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RecursionMode {
    Direct,
    GraphSum,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffModeArg {
    Statement,
    Proof,
    Brute,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List a graph family.
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        /// Size for Y, X and Xbar.
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Free leaves for Xg and EO.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Loops for Xg and EO.
        #[arg(long, default_value_t = 0)]
        genus: usize,
    },
    /// Star product of two combinations.
    Product { left: String, right: String },
    /// Coproduct of a combination.
    Coproduct {
        combo: String,
        /// Drop the two trivial terms.
        #[arg(long)]
        reduced: bool,
    },
    /// Antipode of a combination.
    Antipode { combo: String },
    /// Check the Hopf algebra laws on all small basis graphs.
    VerifyAxioms {
        #[arg(long, default_value_t = 4)]
        max_leaves: usize,
        #[arg(long, default_value_t = 0)]
        max_loops: usize,
    },
    /// Evaluate a correlation function.
    Recursion {
        #[arg(long, default_value = "airy")]
        curve: String,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value = "direct")]
        mode: RecursionMode,
    },
    /// Compare the direct recursion with the graph sum.
    Compare {
        #[arg(long, default_value = "airy")]
        curve: String,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: usize,
    },
    /// Coefficient table relating the coproduct to the recursion.
    Coefficients {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        points: usize,
        #[arg(long, value_enum, default_value = "brute")]
        mode: CoeffModeArg,
        /// Also check the coproduct identity with brute-forced coefficients.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value = "airy")]
        curve: String,
    },
    /// Decide the statement-versus-proof coefficient discrepancies.
    ResolveAmbiguities,
}

/// Parses `argv` (without the program name), executes and renders. Returns
/// the text to print and the exit code.
pub fn run<I, T>(argv: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("hopf-tr")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (e.to_string(), 0);
            }
            let r = CommandResult::error(&Error::Usage(e.to_string().trim().to_string()));
            return (render(&r, false), r.status.exit_code());
        }
    };
    let r = execute(&cli.command, &Limits::from_env()).unwrap_or_else(|e| CommandResult::error(&e));
    (render(&r, cli.text), r.status.exit_code())
}

fn render(r: &CommandResult, text: bool) -> String {
    if !text {
        let mut s = serde_json::to_string_pretty(&r.to_json()).expect("serializable");
        s.push('\n');
        return s;
    }
    let mut s = r.text.clone();
    for d in &r.diagnostics {
        if r.status != Status::Error {
            let _ = writeln!(s, "note: {d}");
        }
    }
    s
}

fn execute(cmd: &Command, limits: &Limits) -> Result<CommandResult> {
    match cmd {
        Command::Enumerate { family, n, k, genus } => {
            let id = match family {
                Family::Y => GraphFamilyId::Y(*n),
                Family::X => GraphFamilyId::X(*n),
                Family::Xbar => GraphFamilyId::Xbar(*n),
                Family::Xg => GraphFamilyId::Xg { k: *k, g: *genus },
                Family::Eo => GraphFamilyId::Eo { k: *k, g: *genus },
            };
            let graphs: Vec<String> = enumerate_family(id, limits)?.iter().map(|g| g.render()).collect();
            let mut text = String::new();
            for g in &graphs {
                let _ = writeln!(text, "{g}");
            }
            Ok(CommandResult::ok(
                json!({ "family": id.to_string(), "count": graphs.len(), "graphs": graphs }),
                text,
            ))
        }
        Command::Product { left, right } => {
            let p = star(&parse_combo(left)?, &parse_combo(right)?)?;
            Ok(CommandResult::ok(json!({ "result": p.to_json(), "text": p.to_string() }), format!("{p}\n")))
        }
        Command::Coproduct { combo, reduced } => {
            let x = parse_combo(combo)?;
            let d = if *reduced { reduced_coproduct(&x)? } else { coproduct(&x)? };
            Ok(CommandResult::ok(
                json!({ "reduced": reduced, "result": d.to_json(), "text": d.to_string() }),
                format!("{d}\n"),
            ))
        }
        Command::Antipode { combo } => {
            let s = antipode(&parse_combo(combo)?)?;
            Ok(CommandResult::ok(json!({ "result": s.to_json(), "text": s.to_string() }), format!("{s}\n")))
        }
        Command::VerifyAxioms { max_leaves, max_loops } => {
            let report = verify_axioms(*max_leaves, *max_loops, limits)?;
            let mut text = String::new();
            let mut diagnostics = Vec::new();
            for l in &report.laws {
                match &l.status {
                    LawStatus::Pass => {
                        let _ = writeln!(text, "{:<22} pass ({} cases)", l.law.name(), l.checked);
                    }
                    LawStatus::Violation { counterexample, attributed } => {
                        let inputs: Vec<String> = counterexample.iter().map(|g| g.render()).collect();
                        let why = if *attributed { "attributed to the straddle rule" } else { "unattributed" };
                        let _ = writeln!(text, "{:<22} VIOLATION on [{}] ({why})", l.law.name(), inputs.join(", "));
                        diagnostics.push(format!("{} fails on [{}]", l.law.name(), inputs.join(", ")));
                    }
                }
            }
            Ok(CommandResult {
                status: if report.all_pass() { Status::Ok } else { Status::Violation },
                payload: report.to_json(),
                diagnostics,
                text,
            })
        }
        Command::Recursion { curve, genus, points, mode } => {
            let c = CurveModel::parse(curve)?;
            let w = match mode {
                RecursionMode::Direct => Recursion::new(c.clone()).correlator(*genus, *points)?,
                RecursionMode::GraphSum => w_graph_sum(&c, *genus, *points)?,
            };
            let mode = match mode {
                RecursionMode::Direct => "direct",
                RecursionMode::GraphSum => "graph-sum",
            };
            Ok(CommandResult::ok(
                json!({ "curve": c.to_string(), "mode": mode, "correlator": w.to_json() }),
                format!("{w}\n"),
            ))
        }
        Command::Compare { curve, genus, points } => {
            let c = CurveModel::parse(curve)?;
            let direct = Recursion::new(c.clone()).correlator(*genus, *points)?;
            let sum = w_graph_sum(&c, *genus, *points)?;
            let equal = direct == sum;
            let mut diagnostics = Vec::new();
            if !equal {
                diagnostics.push(format!("difference: {}", &direct.value - &sum.value));
            }
            Ok(CommandResult {
                status: if equal { Status::Ok } else { Status::Violation },
                payload: json!({
                    "curve": c.to_string(),
                    "equal": equal,
                    "direct": direct.to_json(),
                    "graph_sum": sum.to_json(),
                }),
                diagnostics,
                text: format!("direct:    {direct}\ngraph sum: {sum}\nequal: {equal}\n"),
            })
        }
        Command::Coefficients { genus, points, mode, verify, curve } => {
            let k = points
                .checked_sub(1)
                .ok_or_else(|| Error::Usage("--points must be at least 1".into()))?;
            let mode = match mode {
                CoeffModeArg::Statement => CoeffMode::Statement,
                CoeffModeArg::Proof => CoeffMode::Proof,
                CoeffModeArg::Brute => CoeffMode::Brute,
            };
            let table = coeff_table(*genus, k, mode, limits)?;
            let mut text = table.to_string();
            let mut diagnostics: Vec<String> = table
                .integrality_violations()
                .iter()
                .map(|e| format!("1/{} is not an integer", e.kind))
                .collect();
            let mut payload = json!({ "table": table.to_json() });
            let mut holds = true;
            if *verify {
                let report = verify_coproduct_identity(&CurveModel::parse(curve)?, *genus, k, limits)?;
                holds = report.holds();
                for p in report.parts.iter().filter(|p| !p.holds()) {
                    let implied = p.implied_coefficient().map_or("none".into(), |c| c.to_string());
                    diagnostics.push(format!("{} part differs (implied coefficient: {implied})", p.kind));
                }
                let _ = writeln!(text, "identity holds: {holds}");
                payload["identity"] = report.to_json();
            }
            let bad = !holds || !diagnostics.is_empty();
            Ok(CommandResult {
                status: if bad { Status::Violation } else { Status::Ok },
                payload,
                diagnostics,
                text,
            })
        }
        Command::ResolveAmbiguities => {
            let verdicts = [decide_catalan_index(limits)?, decide_handle_factor(limits)?];
            let mut text = String::new();
            for v in &verdicts {
                let _ = writeln!(text, "{v}");
            }
            let diagnostics = verdicts
                .iter()
                .filter(|v| v.winner == "neither")
                .map(|v| format!("{}: brute force matches neither closed form", v.question))
                .collect();
            Ok(CommandResult {
                status: Status::Ok,
                payload: json!({ "verdicts": verdicts.iter().map(|v| v.to_json()).collect::<Vec<_>>() }),
                diagnostics,
                text,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(args: &[&str]) -> (Value, i32) {
        let (out, code) = run(args.iter().copied());
        (serde_json::from_str(&out).unwrap(), code)
    }

    #[test]
    fn enumerate_trees() {
        let (v, code) = json_of(&["enumerate", "--family", "Y", "--n", "3"]);
        assert_eq!(code, 0);
        assert_eq!(v["payload"]["count"], 5);
    }

    #[test]
    fn product_text() {
        let (out, code) = run(["--text", "product", "<1>", "<1 2>"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "<1 <2 3>> + <<1 2> 3>");
    }

    #[test]
    fn compare_ok() {
        let (v, code) = json_of(&["compare", "--curve", "airy", "--genus", "1", "--points", "1"]);
        assert_eq!(code, 0);
        assert_eq!(v["status"], "ok");
        assert_eq!(v["payload"]["direct"]["text"], v["payload"]["graph_sum"]["text"]);
    }

    #[test]
    fn errors_and_usage() {
        let (v, code) = json_of(&["product", "<1", "<2>"]);
        assert_eq!((code, v["status"].as_str()), (1, Some("error")));
        let (v, code) = json_of(&["enumerate", "--family", "Q"]);
        assert_eq!((code, v["status"].as_str()), (1, Some("error")));
    }

    #[test]
    fn violations_exit_two() {
        let (v, code) = json_of(&["verify-axioms", "--max-leaves", "3"]);
        assert_eq!(code, 2);
        assert_eq!(v["status"], "violation");
        assert!(!v["diagnostics"].as_array().unwrap().is_empty());
    }

    #[test]
    fn deterministic_output() {
        let a = run(["coproduct", "<_ _> | 1~2"]);
        let b = run(["coproduct", "<_ _> | 1~2"]);
        assert_eq!(a, b);
    }
}
