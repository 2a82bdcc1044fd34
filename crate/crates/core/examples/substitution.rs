//! Substitute integer affine maps into equations and check that solutions
//! correspond one to one.

use diophantine_lab::counting::{Budget, Hypercube};
use diophantine_lab::transforms::{apply_transform, verify_count_preservation, IntegerAffine};
use diophantine_lab::{parse_equation, render};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = Budget::default();

    let square = parse_equation("x1^2 + 2*x1*x2 + x2^2")?;
    let cd = IntegerAffine::linear(vec![vec![1, -1], vec![1, 1]])?;
    let t = apply_transform(&square, &cd, true)?;
    println!("{}  ->  {}  (divided by {})", render(&square), render(&t.polynomial), t.content_divisor);
    let r = verify_count_preservation(&square, &cd, Hypercube::integer(10), &budget)?;
    println!("  det {}, {} -> {} solutions, inflation bound holds: {}", r.determinant, r.original_count, r.transformed_count, r.inflation_bound_holds);

    let hyper = parse_equation("x1^2 + x2^2 - x3^2 - 1")?;
    let shear = IntegerAffine::new(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 1, 1]], vec![1, 0, -1])?;
    let r = verify_count_preservation(&hyper, &shear, Hypercube::integer(10), &budget)?;
    println!("{}  ->  {}", r.original, r.transformed);
    println!(
        "  unimodular: {}, forward violations {}, backward violations {:?}",
        r.unimodular, r.forward_violations, r.backward_violations
    );
    Ok(())
}
