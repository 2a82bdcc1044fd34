//! Fit growth exponents of solution counts and compare them with the
//! predicted upper bounds.

use diophantine_lab::asymptotics::{exponent_report, ReportConfig};
use diophantine_lab::counting::Budget;
use diophantine_lab::parse_equation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let runs = [
        ("x1 = x2^2 - x3^2", vec![100, 200, 400, 800]),
        ("x1^2 + x2^2 - x3^2 - 1", vec![25, 50, 100, 200]),
        ("x1^2 + x2^2 - x3^2", vec![25, 50, 100, 200]),
        ("x1^2 + x2^2 + x3^2 - 100", vec![10, 20, 40, 80]),
        ("x1^2 + x2^2 + 1", vec![10, 20, 40]),
    ];
    let budget = Budget::default();
    for (src, radii) in runs {
        let report = exponent_report(&parse_equation(src)?, &ReportConfig::new(radii), &budget)?;
        let alpha = report.alpha.map_or("-".to_string(), |a| format!("{a:.3}"));
        println!(
            "{:<28} predicted {:<7} alpha {:<6} {:?}: {}",
            report.equation, report.predicted.to_string(), alpha, report.verdict, report.message
        );
    }
    Ok(())
}
