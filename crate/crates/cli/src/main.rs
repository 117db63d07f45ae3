use std::process::exit;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut out = std::io::stdout();
    let code = skewcalc_cli::run(&args, &mut out);
    exit(code);
}
