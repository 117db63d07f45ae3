use std::io::Write;

pub fn run(_args: &[String], out: &mut dyn Write) -> i32 {
    let _ = writeln!(out, "skewcalc: not yet wired");
    2
}
