use clap::Parser;

use nbcomplex::cli::{run, JobSpec};

fn main() {
    let job = JobSpec::parse();
    let outcome = run(&job);
    print!("{}", outcome.rendered);
    if !outcome.rendered.ends_with('\n') {
        println!();
    }
    if let nbcomplex::cli::Output::Error(e) = &outcome.output {
        eprintln!("nbcomplex: {}", e.message);
    }
    std::process::exit(outcome.code);
}
