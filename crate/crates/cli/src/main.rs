use std::io::Write;

use anyhow::Context;

fn main() -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let exit = fracdim_cli::run(std::env::args_os(), &mut out, &mut err);
    out.flush().context("flushing standard output")?;
    std::process::exit(exit.code())
}
