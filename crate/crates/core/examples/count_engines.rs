//! Count solutions of one equation with every applicable engine and with the
//! parallel partitioned counter.

use diophantine_lab::counting::{
    applicable_engines, count_partitioned, count_with, enumerate_solutions, Budget, Engine, Hypercube,
};
use diophantine_lab::parse_equation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = parse_equation("x1^2 + x2^2 - x3^2 - x4^2 - 1")?;
    let budget = Budget::default();
    let cube = Hypercube::integer(15);
    for engine in applicable_engines(&p) {
        let r = count_with(&p, cube, engine, &budget)?;
        println!("{engine:<9} count {:>6}  in {:?}", r.count, r.elapsed);
    }
    let r = count_partitioned(&p, cube, Engine::Brute, 8, &budget)?;
    println!("brute x8  count {:>6}  in {:?}", r.count, r.elapsed);

    let big = Hypercube::integer(300);
    let r = count_with(&p, big, Engine::Mitm, &budget)?;
    println!("mitm at N=300: {} solutions in {:?}", r.count, r.elapsed);

    let circle = parse_equation("x1^2 + x2^2 - 25")?;
    let first: Vec<_> = enumerate_solutions(&circle, Hypercube::integer(5), 4, &budget)?.collect();
    println!("first circle points: {first:?}");

    let tight = Budget::with_work(1_000);
    if let Err(e) = count_with(&p, cube, Engine::Brute, &tight) {
        println!("refused: {e}");
    }
    Ok(())
}
