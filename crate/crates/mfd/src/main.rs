use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mfd::commands::{self, Output, EXIT_USAGE};
use mfd::Options;
use mfd_core::Budgets;

/// Reasoning about monoidal functional dependencies.
///
/// Exit codes: 0 proved or holds, 1 refuted or violated, 2 unknown within
/// budgets, 64 usage or parse error, 65 input rejected (contracting theory,
/// attribute outside the scheme, invalid structure).
#[derive(Parser, Debug)]
#[command(name = "mfd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Multisets the proof search may visit.
    #[arg(long, global = true, default_value_t = Budgets::default().bfs_nodes as u64, value_parser = clap::value_parser!(u64).range(1..))]
    budget_bfs: u64,

    /// Assignment nodes the countermodel search may visit.
    #[arg(long, global = true, default_value_t = Budgets::default().model_evaluations, value_parser = clap::value_parser!(u64).range(1..))]
    budget_models: u64,

    /// Largest structure the countermodel search enumerates (at most 6).
    #[arg(long, global = true, default_value_t = Budgets::default().max_algebra_size as u64, value_parser = clap::value_parser!(u64).range(1..=6))]
    max_size: u64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Random seed. Every command is deterministic, so this only fixes
    /// the interface.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Print the passes of the polynomial procedure.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a theory entails a query.
    Decide { theory: PathBuf, query: String },
    /// Run the polynomial procedure on a non-contracting theory.
    Member { theory: PathBuf, query: String },
    /// Check a ranked relation against a theory.
    Check { relation: PathBuf, theory: PathBuf },
    /// Search finite structures for a countermodel.
    Countermodel { theory: PathBuf, query: String },
    /// Report contracting and trivial formulas.
    Classify { theory: PathBuf },
    /// Add `p -> p p` for every attribute.
    Boolify { theory: PathBuf },
    /// Embed a finite structure into its lattice of downsets.
    CompleteAlgebra { algebra: PathBuf },
}

fn read(path: &Path) -> Result<String, Output> {
    std::fs::read_to_string(path).map_err(|e| Output::error(EXIT_USAGE, format_args!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Output {
    let opts = Options {
        budgets: Budgets {
            bfs_nodes: usize::try_from(cli.budget_bfs).unwrap_or(usize::MAX),
            model_evaluations: cli.budget_models,
            max_algebra_size: cli.max_size as usize,
        },
        json: cli.json,
        trace: cli.trace,
    };
    let result = (|| {
        Ok(match &cli.command {
            Command::Decide { theory, query } => commands::decide(&read(theory)?, query, opts),
            Command::Member { theory, query } => commands::member(&read(theory)?, query, opts),
            Command::Check { relation, theory } => commands::check(&read(relation)?, &read(theory)?, opts),
            Command::Countermodel { theory, query } => commands::countermodel(&read(theory)?, query, opts),
            Command::Classify { theory } => commands::classify(&read(theory)?, opts),
            Command::Boolify { theory } => commands::boolify(&read(theory)?, opts),
            Command::CompleteAlgebra { algebra } => commands::complete_algebra(&read(algebra)?, opts),
        })
    })();
    result.unwrap_or_else(|e: Output| e)
}

/// Parses `args` (program name first) and runs the command. Help and
/// version requests exit 0, other argument errors 64.
fn execute<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let out = execute(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfd::verdict::VerdictDoc;
    use mfd_core::{parse_theory, Verdict};

    fn data(name: &str) -> String {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("data")
            .join(name)
            .to_string_lossy()
            .into_owned()
    }

    /// A theory written to a scratch file that lives as long as the value.
    struct Scratch(PathBuf);

    impl Scratch {
        fn new(tag: &str, text: &str) -> Self {
            let path = std::env::temp_dir().join(format!("mfd-cli-{}-{tag}", std::process::id()));
            std::fs::write(&path, text).unwrap();
            Scratch(path)
        }

        fn path(&self) -> String {
            self.0.to_string_lossy().into_owned()
        }
    }

    impl Drop for Scratch {
        fn drop(&mut self) {
            let _ = std::fs::remove_file(&self.0);
        }
    }

    fn mfd(args: &[&str]) -> (i32, String, String) {
        let out = execute(std::iter::once("mfd").chain(args.iter().copied()));
        (out.code, out.stdout, out.stderr)
    }

    #[test]
    fn decide_linear_theory() {
        let (code, out, _) = mfd(&["decide", &data("linear.theory"), "p p -> q q"]);
        assert_eq!(code, 0);
        assert!(out.contains("rewrite path (4 steps)"));
        assert!(out.contains("certificate:"));

        let (code, out, _) = mfd(&["decide", &data("linear.theory"), "p -> q"]);
        assert_eq!(code, 1);
        assert!(out.contains("countermodel over a structure with 5 elements"));
    }

    #[test]
    fn decide_json_reverifies() {
        let theory = parse_theory(&std::fs::read_to_string(data("linear.theory")).unwrap()).unwrap();
        for (query, code) in [("p p -> q q", 0), ("p -> q", 1)] {
            let (got, out, _) = mfd(&["--json", "decide", &data("linear.theory"), query]);
            assert_eq!(got, code);
            let doc: VerdictDoc = serde_json::from_str(&out).unwrap();
            let (_, v) = doc.verify(&theory).unwrap();
            assert_eq!(v.is_proved(), code == 0);
        }
    }

    #[test]
    fn budgets_bound_the_search() {
        let t = Scratch::new("grow", "p -> p p\np q -> q\n");
        let (code, out, _) = mfd(&["decide", &t.path(), "p -> q", "--budget-bfs", "20", "--max-size", "1"]);
        assert_eq!(code, 2);
        assert!(out.starts_with("unknown: p -> q"));
        let (code, _, _) = mfd(&["decide", &t.path(), "p -> q"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = mfd(&["decide", &data("linear.theory"), "p ->"]);
        assert_eq!(code, 64);
        assert!(err.starts_with("error: query:"));
        assert_eq!(mfd(&["decide", "/nonexistent/theory", "p -> q"]).0, 64);
        assert_eq!(mfd(&["decide", &data("linear.theory"), "p -> q", "--max-size", "7"]).0, 64);
        assert_eq!(mfd(&["decide", &data("linear.theory"), "p -> q", "--budget-bfs", "0"]).0, 64);
        assert_eq!(mfd(&["frobnicate"]).0, 64);
        assert_eq!(mfd(&["--help"]).0, 0);
    }

    #[test]
    fn member_command() {
        let grow = Scratch::new("member-grow", "p -> p p\n");
        assert_eq!(mfd(&["member", &grow.path(), "p -> p p p"]).0, 0);
        let empty = Scratch::new("member-empty", "");
        assert_eq!(mfd(&["member", &empty.path(), "p -> q"]).0, 1);
        let contracting = Scratch::new("member-contracting", "p q -> q\n");
        let (code, _, err) = mfd(&["member", &contracting.path(), "p -> q"]);
        assert_eq!(code, 65);
        assert!(err.contains("p q -> q"));
        let (_, out, _) = mfd(&["--trace", "member", &grow.path(), "p -> p p p"]);
        assert!(out.contains("pass 1: W = p p"));
    }

    #[test]
    fn check_command() {
        let (code, out, _) = mfd(&["check", &data("listings.json"), &data("loc_area_price.theory")]);
        assert_eq!((code, out.as_str()), (0, "holds: 1 formulas over 4 tuples\n"));

        let (code, out, _) = mfd(&["check", &data("listings.json"), &data("price_loc.theory")]);
        assert_eq!(code, 1);
        assert!(out.starts_with("violated: price -> loc\n  tuples 1 and 2: 0.8521 is not below 0.7524\n"));
        assert!(out.contains("tuples 1 and 3: 0.8311 is not below 0.3596"));

        let (code, out, _) = mfd(&["check", &data("listings_extended.json"), &data("loc_area_price.theory")]);
        assert_eq!(code, 1);
        assert!(out.contains("tuples 2 and 5: 0.8263 is not below 0.8187"));
        assert!(out.contains("tuples 4 and 5: 0.6268 is not below 0.6219"));

        assert_eq!(mfd(&["check", &data("listings_extended.json"), &data("loc_area_area_price.theory")]).0, 0);
        assert_eq!(mfd(&["check", &data("listings.json"), &data("both.theory")]).0, 1);

        let outside = Scratch::new("outside", "loc -> rooms\n");
        let (code, _, err) = mfd(&["check", &data("listings.json"), &outside.path()]);
        assert_eq!(code, 65);
        assert!(err.contains("rooms"));
    }

    #[test]
    fn check_json() {
        let (code, out, _) = mfd(&["--json", "check", &data("listings_extended.json"), &data("loc_area_price.theory")]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["holds"], false);
        assert_eq!(v["violations"][0]["first"], 2);
        assert_eq!(v["violations"][0]["lhs"], "0.8263");
    }

    #[test]
    fn countermodel_command() {
        let (code, out, _) = mfd(&["countermodel", &data("nsound1.theory"), "p -> q r", "--max-size", "3"]);
        assert_eq!(code, 1);
        assert!(out.contains("countermodel over a structure with 3 elements"));
        let (code, out, _) = mfd(&["countermodel", &data("linear.theory"), "p -> q", "--max-size", "4"]);
        assert_eq!(code, 2);
        assert!(out.contains("no countermodel among"));
    }

    #[test]
    fn classify_boolify_complete() {
        let (code, out, _) = mfd(&["classify", &data("linear.theory")]);
        assert_eq!(code, 0);
        assert!(out.contains("non-contracting: false"));
        assert!(out.contains("trivial formulas: none"));

        let single = Scratch::new("boolify", "p -> q\n");
        assert_eq!(mfd(&["boolify", &single.path()]).1, "p -> q\np -> p p\nq -> q q\n");

        let (code, out, _) = mfd(&["complete-algebra", &data("nonlinear5.json")]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), 7);
        assert_eq!(v["embedding"]["1"], v["unit"]);
    }

    #[test]
    fn certificates_are_tied_to_their_theory() {
        let t = parse_theory("p -> q").unwrap();
        let (_, out, _) = mfd(&["--json", "decide", &data("linear.theory"), "p p -> q q"]);
        let doc: VerdictDoc = serde_json::from_str(&out).unwrap();
        assert!(doc.verify(&t).is_err());
        let v = mfd_core::decide(
            &parse_theory("p -> p p\np q -> q").unwrap(),
            &"p -> q".parse().unwrap(),
            mfd_core::Budgets {
                bfs_nodes: 5,
                model_evaluations: 5,
                max_algebra_size: 1,
            },
        );
        assert!(matches!(v, Verdict::Unknown(_)));
        assert_eq!(mfd::commands::verdict_exit_code(&v), 2);
    }
}
