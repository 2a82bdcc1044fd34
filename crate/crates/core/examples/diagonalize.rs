//! Diagonalize binary quadratic forms by rotation plus homothety and check
//! the exact substitution identity.

use diophantine_lab::render_expression;
use diophantine_lab::transforms::{binary_quadratic_form, diagonalize_binary_quadratic, Branch, DiagonalOutcome};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (a11, a12, a22) in [(1, 1, 1), (3, -2, 3), (1, 0, 1), (0, 2, 3), (7, 12, 0), (1, 1, 2)] {
        let d = diagonalize_binary_quadratic(a11, a12, a22, Branch::Plus)?;
        print!("({a11}, {a12}, {a22}) {}: ", render_expression(&binary_quadratic_form(a11, a12, a22)));
        match &d.outcome {
            DiagonalOutcome::AlreadyDiagonal { coefficients } => println!("already diagonal {coefficients:?}"),
            DiagonalOutcome::Deformed { tan_phi, deformation, coefficients, certificate, .. } => {
                println!("tan(phi) = {tan_phi}, C = {deformation:?}, coefficients {coefficients:?}");
                println!(
                    "  {} = {} * ({})",
                    certificate.substituted, certificate.multiplier, certificate.diagonal_form
                );
            }
            DiagonalOutcome::NoIntegerHomothety { case_id, reason } => println!("case {case_id}: {reason}"),
        }
    }
    Ok(())
}
