use std::io::Write;

use tcrcalc::{CancelToken, Ctx};

fn main() {
    let ctx = match Ctx::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    };
    let token = CancelToken::new();
    let handler_token = token.clone();
    if let Err(e) = ctrlc::set_handler(move || handler_token.cancel()) {
        eprintln!("warning: cannot install interrupt handler: {e}");
    }
    let out = tcrcalc_cli::run(std::env::args_os(), &ctx.with_cancel(token));
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
