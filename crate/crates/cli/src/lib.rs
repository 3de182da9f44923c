//! Command-line front end: query parsing, dispatch and rendering.
//!
//! Exit codes: 0 provable (or a computed value), 1 refutable, 2 unknown,
//! 3 usage or input error.

mod output;
mod query;
mod run;

use std::io::Write;

pub use output::{format, Mode, VERSION};
pub use query::{parse_args, parse_query, Command, CoveringCmd, Options, PadicOp, Predicate, Query};
pub use run::{execute, merge_directives, parse_caps, resolve_context, run, CliError, Outcome, DEFAULT_SAMPLES};

pub const EXIT_USAGE: i32 = 3;

pub const USAGE: &str = "\
usage: stoyanov <command> [flags]

commands:
  eval <term>
  check {min|ps} kappa=<term> sigma=<term>
  check {stoyanov|explog|cf|stronglimit} kappa=<term>
  admits F(<term>) <class> [weight=<term>]
  witness min kappa=<term> sigma=<term>
  spectrum kappa=<term>
  padic {essential|dense|minimal|closure|oracle} <file>
  covering verify <file> t=<n>
  covering {min|bound} s=<n> t=<n>

classes: minimal, pseudocompact, minimal-pseudocompact,
  zero-dim-minimal-pseudocompact, connected-minimal,
  connected-minimal-pseudocompact, locally-connected-minimal

flags: --assume <directive> (repeatable), --context <file>, --json,
  --seed <int>, --samples <int>
environment: STOYANOV_CAPS=s=<n>,t=<n> raises the covering search caps
";

/// Runs one invocation, writing results to `out` and diagnostics to `err`,
/// and returns the process exit code.
pub fn cli_main<S: AsRef<str>>(args: &[S], out: &mut impl Write, err: &mut impl Write) -> i32 {
    if args.is_empty() {
        let _ = write!(err, "{USAGE}");
        return EXIT_USAGE;
    }
    if args.iter().any(|a| matches!(a.as_ref(), "-h" | "--help")) {
        let _ = write!(out, "{USAGE}");
        return 0;
    }
    let query = match parse_args(args) {
        Ok(q) => q,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&query) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let mode = if query.options.json { Mode::Machine } else { Mode::Human };
            let _ = write!(out, "{}", format(&outcome, mode));
            outcome.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
