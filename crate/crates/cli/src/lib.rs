//! Batch CLI over the finite-algebra library: parse operation-table files,
//! validate axioms and compute congruences, commutators, semidirect
//! decompositions, ideals and derivations. All reports are byte-stable for
//! identical inputs and flags; exit codes are 0 (holds), 1 (violated),
//! 2 (input error), 3 (resource limit).

pub mod action;
pub mod commands;
pub mod format;
pub mod report;

use clap::Parser;

/// Run one invocation. `args` excludes the program name. Returns the exit
/// code and the full report text (errors included).
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut argv: Vec<String> = vec!["trusskit".to_string()];
    argv.extend(args.into_iter().map(Into::into));
    match commands::Cli::try_parse_from(&argv) {
        Ok(cli) => commands::dispatch(&cli),
        Err(error) => {
            // clap renders help/version on stdout with exit 0; everything
            // else is an input error
            let rendered = error.render().to_string();
            let code = if error.exit_code() == 0 { 0 } else { 2 };
            (code, rendered)
        }
    }
}
