//! Drive the command line in-process, the way a batch script would, and
//! show that repeated runs print identical JSON.

use diophantine_lab::cli::run;

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("diophlab").chain(args.iter().copied()), &mut out, &mut err);
    let text = if out.is_empty() { err } else { out };
    (code, String::from_utf8_lossy(&text).into_owned())
}

fn main() {
    let batch: [&[&str]; 5] = [
        &["count", "--eq", "x1^2 + x2^2 - 25", "--N", "10"],
        &["fit", "--eq", "x1^2 + x2^2 - x3^2 - 1", "--N", "25,50,100,200", "--format", "table"],
        &["transform", "diagonalize", "--a11", "1", "--a12", "1", "--a22", "1"],
        &["witness", "hyperboloid", "--N", "2"],
        &["count", "--eq", "x1^2 +", "--N", "3"],
    ];
    for args in batch {
        let (code, text) = invoke(args);
        println!("$ diophlab {}\n[exit {code}]\n{text}", args.join(" "));
    }
    let first = invoke(&["check", "--seed", "3", "--cases", "10"]);
    let second = invoke(&["check", "--seed", "3", "--cases", "10"]);
    println!("seeded engine check reproducible: {}", first == second);
}
