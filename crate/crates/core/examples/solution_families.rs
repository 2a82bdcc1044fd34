//! Explicit solution families as exact lower-bound witnesses.

use diophantine_lab::counting::{count_brute, Budget, Hypercube};
use diophantine_lab::families::{
    assertion2_check, assertion3_lower_bound, unit_hyperboloid, unit_hyperboloid_families, unit_hyperboloid_lines,
    witnesses_to_json, SplitEquation,
};
use diophantine_lab::{parse_equation, render};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for family in unit_hyperboloid_families() {
        println!("family: {}", family.description);
    }
    let p = unit_hyperboloid();
    for n in [1, 5, 20] {
        let f = unit_hyperboloid_lines(n)?;
        let all = count_brute(&p, Hypercube::integer(n), &Budget::default())?.count;
        println!("N={n:<3} distinct {:<4} with multiplicity {:<4} all solutions {all}", f.distinct(), f.with_multiplicity);
    }

    let eq = SplitEquation::new(parse_equation("x1^2 - x2^2")?, 1, -4, 2)?;
    println!("equation {}", render(&eq.polynomial()?));
    if let Some(w) = assertion2_check(&eq)? {
        println!("  last-coordinate roots {:?}, witness {:?}", w.roots, w.point);
    }
    let scaled = assertion3_lower_bound(&eq, &[1, 1], 2, 3)?;
    println!(
        "  N=3: {} scaled witnesses (bounds {:.2} and {}): {}",
        scaled.count(),
        scaled.stated_bound,
        scaled.floor_bound,
        witnesses_to_json(&scaled.witnesses)
    );
    Ok(())
}
