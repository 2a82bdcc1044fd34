//! Parse a few equations, print their canonical form, structural class and
//! predicted growth exponent.

use diophantine_lab::asymptotics::predicted_exponent;
use diophantine_lab::counting::{applicable_engines, CountMode};
use diophantine_lab::{classify, parse_equation, render};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let equations = [
        "x1 = x2^2 - x3^2",
        "x1^2 + x2^2 - x3^2 - 1",
        "x1^2 + x2^2 + x3^2 - 100",
        "x1^2 + x2^2 + x3^2 + 1",
        "x1^3 + x2^3 - x3^3 - 2",
        "x1^3 + x1*x2*x3 - 7",
    ];
    for src in equations {
        let p = parse_equation(src)?;
        let class = classify(&p)?;
        let pred = predicted_exponent(&class, CountMode::IntegerBox)?;
        let engines: Vec<String> = applicable_engines(&p).iter().map(|e| e.to_string()).collect();
        println!("{}", render(&p));
        println!("  class     {:?}", class.kind);
        println!("  exponent  {} ({})", pred.exponent, pred.source);
        println!("  engines   {}", engines.join(", "));
    }

    match parse_equation("x1^2 + ") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error example: {e}"),
    }
    Ok(())
}
