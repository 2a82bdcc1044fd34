//! Rational rotations, their products, and homothety scaling to integer
//! deformation matrices.

use diophantine_lab::transforms::{
    compose_rotations, deformation_matrix, homothety_case, pythagorean_rotation, MatrixEntry, TransformMatrix,
};
use num_rational::BigRational;

fn show(m: &TransformMatrix) {
    for row in &m.entries {
        let cells: Vec<String> = row.iter().map(|e| format!("{e:>10}")).collect();
        println!("  [{}]", cells.join(" "));
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = pythagorean_rotation(2, 1)?;
    println!("rotation from (u, v) = (2, 1):");
    show(&r);
    let case = homothety_case(&r);
    let d = deformation_matrix(&r, &case)?;
    println!("case {}, lambda {}, deformation {:?}", case.case_id, d.lambda, d.matrix);

    let product = compose_rotations(&[((0, 1), r), ((1, 2), pythagorean_rotation(3, 2)?)], 3)?;
    println!("product of two plane rotations in 3 dimensions:");
    show(&product);
    println!("proper rotation: {}", product.is_proper_rotation()?);

    let half = BigRational::new(1.into(), 2.into());
    let h = MatrixEntry::surd(half.clone(), 2)?;
    let quarter_turn = TransformMatrix::linear(vec![vec![h.clone(), h.neg()], vec![h.clone(), h]])?;
    let case = homothety_case(&quarter_turn);
    println!("45 degree rotation: case {}, {:?}", case.case_id, deformation_matrix(&quarter_turn, &case)?.matrix);

    let s = MatrixEntry::surd(half.clone(), 3)?;
    let c = MatrixEntry::rational(half);
    let sixty = TransformMatrix::linear(vec![vec![c.clone(), s.neg()], vec![s, c]])?;
    let case = homothety_case(&sixty);
    println!("60 degree rotation: case {} ({})", case.case_id, case.reason);
    println!("matrix JSON: {}", serde_json::to_string(&sixty)?);
    Ok(())
}
