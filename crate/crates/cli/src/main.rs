use std::process::ExitCode;

use clap::Parser;
use mixmult::commands::{Options, Registry};
use mixmult::report::Format;
use mixmult::{run, Invocation};

#[derive(Debug, Parser)]
#[command(name = "mixmult", version, about = "Mixed multiplicities of block-graded monomial quotients")]
struct Args {
    /// One of: hilbert-at, mixed-table, filter-seq, positivity, maximal-lengths,
    /// ideal-mm, superficial, theorem45, verify.
    command: String,
    /// Model file, or builtin:example36 / builtin:example37.
    input: String,
    /// Named ideal of the model (default: the first one declared).
    #[arg(long)]
    ideal: Option<String>,
    /// Named system of the model (default: the first one declared).
    #[arg(long)]
    system: Option<String>,
    #[arg(long, value_delimiter = ',')]
    at: Option<Vec<u32>>,
    #[arg(long = "type", value_delimiter = ',')]
    type_vector: Option<Vec<u32>>,
    /// Variable names; theorem45 accepts `name:index`.
    #[arg(long, value_delimiter = ',')]
    seq: Option<Vec<String>>,
    #[arg(long)]
    var: Option<String>,
    #[arg(long)]
    index: Option<usize>,
    #[arg(long)]
    window_start: Option<u32>,
    #[arg(long)]
    base: Option<u32>,
    #[arg(long, default_value_t = 3)]
    window: u32,
    #[arg(long, default_value_t = 64)]
    max_base: u32,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Counting strategy: auto, inclusion-exclusion or brute-force.
    #[arg(long, default_value = "auto")]
    counter: String,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Number of variables of builtin:example36.
    #[arg(long)]
    t: Option<u32>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            if e.kind() == clap::error::ErrorKind::DisplayHelp {
                println!("\ncommands:");
                for (name, about) in Registry::with_builtins().summaries() {
                    println!("  {name:<16} {about}");
                }
            }
            return ExitCode::from(code);
        }
    };
    let inv = Invocation {
        command: args.command,
        input: args.input,
        t: args.t,
        format: args.format,
        options: Options {
            ideal: args.ideal,
            system: args.system,
            at: args.at,
            type_vector: args.type_vector,
            seq: args.seq,
            var: args.var,
            index: args.index,
            base: args.base,
            window: args.window,
            max_base: args.max_base,
            budget: args.budget,
            counter: args.counter,
            window_start: args.window_start,
        },
    };
    let (out, code) = run(&inv);
    print!("{out}");
    ExitCode::from(code as u8)
}
