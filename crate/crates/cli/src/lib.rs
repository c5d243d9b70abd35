//! Command-line front end: model parsing, commands and report rendering.

pub mod commands;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod report;

use std::path::Path;

use commands::{Context, Options, Registry};
use error::{CliError, CliResult};
use fixtures::Builtin;
use report::{render, render_error, Format, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub command: String,
    /// A model file path or `builtin:NAME`.
    pub input: String,
    pub t: Option<u32>,
    pub format: Format,
    pub options: Options,
}

pub fn load(input: &str, t: Option<u32>) -> CliResult<(Option<Builtin>, model::Model)> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let builtin = Builtin::lookup(name, t)?;
        let model = model::parse_model(&builtin.source())?;
        return Ok((Some(builtin), model));
    }
    if t.is_some() {
        return Err(CliError::Usage("--t only applies to builtin:example36".into()));
    }
    let text = std::fs::read_to_string(Path::new(input)).map_err(|source| CliError::Io {
        path: input.to_string(),
        source,
    })?;
    Ok((None, model::parse_model(&text)?))
}

pub fn execute(inv: &Invocation) -> CliResult<Report> {
    let (builtin, model) = load(&inv.input, inv.t)?;
    let ctx = Context {
        input: inv.input.clone(),
        builtin,
        model,
        opts: inv.options.clone(),
    };
    Registry::with_builtins().execute(&inv.command, &ctx)
}

/// Rendered output and process exit code.
pub fn run(inv: &Invocation) -> (String, i32) {
    match execute(inv) {
        Ok(report) => {
            let code = if report.ok { 0 } else { 1 };
            (render(&report, inv.format), code)
        }
        Err(e) => (render_error(&e, inv.format), e.exit_code()),
    }
}
