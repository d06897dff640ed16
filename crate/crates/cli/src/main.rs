use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let run = froberg_cli::execute(&args);
    if let Some(msg) = &run.stderr {
        eprintln!("{}", msg.trim_end());
    }
    let mut out = std::io::stdout().lock();
    // A closed pipe is not worth a panic.
    let _ = out.write_all(run.stdout.as_bytes());
    let _ = out.flush();
    std::process::exit(run.exit_code);
}
