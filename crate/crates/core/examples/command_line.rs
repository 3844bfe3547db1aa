//! Drive the command-line interface in process.

use delpezzo::cli::run;

fn main() {
    let commands: [&[&str]; 6] = [
        &["decide", "--family", "cyclic_cubic", "--group", "H33"],
        &["fixed", "--family", "fermat", "--group", "typeI"],
        &["classify", "--family", "diagonal_quartic", "--group", "typeII"],
        &["tables", "dp3-c32"],
        &["--seed", "1", "lines", "--group", "S4", "--samples", "2"],
        &["--format", "json", "decide", "--family", "p1xp1_quadric", "--group", "obstructionA"],
    ];
    for args in commands {
        let out = run(std::iter::once("delpezzo").chain(args.iter().copied()));
        println!("$ delpezzo {}   (exit {})", args.join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
        println!();
    }
}
