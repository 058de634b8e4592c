use std::io::Write;

use clap::Parser;
use longres::cli::{run, Cli, JobSpec, EXIT_FAILURE};

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let _ = e.print();
        std::process::exit(if e.use_stderr() { EXIT_FAILURE } else { 0 });
    });
    let job = JobSpec::from(cli.command);
    let outcome = run(&job);
    if job.output.is_none() || outcome.code == EXIT_FAILURE {
        let text = serde_json::to_string_pretty(&outcome.report).expect("plain data");
        // a closed pipe is not an error worth reporting
        let _ = writeln!(std::io::stdout(), "{text}");
    }
    std::process::exit(outcome.code);
}
