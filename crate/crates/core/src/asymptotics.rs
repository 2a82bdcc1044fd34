//! Upper-bound exponents for `R_k(N)` and their empirical counterparts.
//!
//! [`predicted_exponent`] maps an [`EquationClass`] to the exponent `a` of a
//! bound `R_k(N) << N^(a + eps)`. [`fit_exponent`] fits `log R = log C + alpha log N`
//! by unweighted least squares, and [`check_bound`] compares the two with an
//! additive slack standing in for the unquantified `eps`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::counting::{count_auto, count_with, Budget, CountMode, Engine, Hypercube};
use crate::error::{Error, Result};
use crate::poly::{classify_with, Assumptions, EquationClass, EquationKind, Parity, Polynomial};

/// Default additive slack on fitted exponents.
pub const DEFAULT_SLACK: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    /// No solutions at all.
    Empty,
    /// Bounded number of solutions (`N^eps`).
    Finite,
    Value(Ratio<i64>),
}

impl Exponent {
    /// Numeric exponent; `Finite` counts as 0.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Exponent::Empty => None,
            Exponent::Finite => Some(0.0),
            Exponent::Value(r) => Some(*r.numer() as f64 / *r.denom() as f64),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Empty => f.write_str("empty"),
            Exponent::Finite => f.write_str("finite"),
            Exponent::Value(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Which bound an exponent comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// Slicing the negative coordinates of `x_e = sum b_i x_i^d`.
    ExplicitVariableSlicing,
    /// Sign-definite form whose constant has the same sign: no real points.
    ImaginaryEllipsoid,
    /// Sign-definite form with constant of opposite sign: bounded.
    Ellipsoid,
    /// Indefinite diagonal form, exponent set by the signature.
    HyperboloidSignature,
    /// Circle-method bound `k - d` for many variables.
    CircleMethodLargeK,
    /// Pila-type bound `k - 1 + 1/d` for irreducible equations.
    PilaIrreducible,
    /// Finitely many points on a genus >= 1 coordinate-plane curve.
    GenusCurveSlicing,
    /// `R <= d (2N+1)^(k-1)` for any nonzero polynomial of degree `d`.
    DegreeBound,
    /// Nonzero constant equation.
    Constant,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok();
        f.write_str(s.as_ref().and_then(|v| v.as_str()).unwrap_or("unknown"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentPrediction {
    pub exponent: Exponent,
    pub source: BoundSource,
    pub applicability_note: String,
    /// Set when the large-k circle-method cap was applied by the heuristic threshold.
    pub heuristic: bool,
    /// `Some(d)` when the bound is the explicit `d (2N+1)^(k-1)`.
    pub explicit_constant: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PredictionOptions {
    /// Apply the circle-method cap when `k >= threshold`; `None` means `2^d`.
    pub large_k_threshold: Option<usize>,
}

impl PredictionOptions {
    fn threshold(&self, degree: u32) -> usize {
        self.large_k_threshold.unwrap_or_else(|| 1usize.checked_shl(degree).unwrap_or(usize::MAX))
    }
}

fn validate(cls: &EquationClass) -> Result<()> {
    let bad = |m: &str| Err(Error::InconsistentClass(m.into()));
    if cls.var_count == 0 {
        return bad("no variables");
    }
    if cls.pos_count > cls.var_count {
        return bad("pos_count exceeds var_count");
    }
    if (cls.degree % 2 == 0) != (cls.parity == Parity::Even) {
        return bad("parity disagrees with degree");
    }
    match cls.kind {
        EquationKind::DiagonalHomogeneous if cls.constant != 0 => bad("homogeneous with nonzero constant"),
        EquationKind::DiagonalThue if cls.constant == 0 => bad("Thue form with zero constant"),
        EquationKind::DiagonalThue | EquationKind::DiagonalHomogeneous if cls.degree == 0 => {
            bad("diagonal form of degree 0")
        }
        EquationKind::DiagonalExplicit { explicit_var } => {
            if explicit_var >= cls.var_count {
                bad("explicit variable out of range")
            } else if cls.pos_count == 0 {
                bad("explicit equation with pos_count 0")
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

fn frac(n: i64, d: i64) -> Ratio<i64> {
    Ratio::new(n, d)
}

pub fn predicted_exponent(cls: &EquationClass, mode: CountMode) -> Result<ExponentPrediction> {
    predicted_exponent_with(cls, mode, PredictionOptions::default())
}

pub fn predicted_exponent_with(
    cls: &EquationClass,
    mode: CountMode,
    options: PredictionOptions,
) -> Result<ExponentPrediction> {
    validate(cls)?;
    let k = cls.var_count as i64;
    let m = cls.pos_count as i64;
    let d = cls.degree as i64;
    let pred = |exponent, source, note: &str| ExponentPrediction {
        exponent,
        source,
        applicability_note: note.to_string(),
        heuristic: false,
        explicit_constant: None,
    };

    let out = match cls.kind {
        EquationKind::DiagonalExplicit { .. } => {
            let e = frac(m - 1, d) + frac(k - m, 1);
            let note = if cls.parity == Parity::Odd && mode == CountMode::IntegerBox {
                "slicing bound; established for even degree or for natural solutions"
            } else {
                "slicing bound over the negative coordinates"
            };
            pred(Exponent::Value(e), BoundSource::ExplicitVariableSlicing, note)
        }
        EquationKind::DiagonalThue | EquationKind::DiagonalHomogeneous => {
            let signature_rule = cls.parity == Parity::Even || mode == CountMode::NaturalOrthant;
            let mut p = if !signature_rule {
                pred(
                    Exponent::Value(frac(k - 1, 1) + frac(1, d)),
                    BoundSource::PilaIrreducible,
                    "odd degree over the full box",
                )
            } else if m == k {
                let homogeneous = cls.kind == EquationKind::DiagonalHomogeneous;
                if homogeneous && mode == CountMode::IntegerBox {
                    pred(Exponent::Finite, BoundSource::Ellipsoid, "definite form: only the origin")
                } else if homogeneous || cls.constant > 0 {
                    pred(Exponent::Empty, BoundSource::ImaginaryEllipsoid, "definite form, constant of the same sign")
                } else {
                    pred(Exponent::Finite, BoundSource::Ellipsoid, "definite form, constant of opposite sign")
                }
            } else {
                pred(
                    Exponent::Value(frac(k - m.max(k - m), 1)),
                    BoundSource::HyperboloidSignature,
                    "indefinite diagonal form",
                )
            };
            if let Exponent::Value(e) = p.exponent {
                let threshold = options.threshold(cls.degree);
                if cls.var_count >= threshold && k - d >= 0 {
                    let cap = frac(k - d, 1);
                    if cap < e {
                        p.exponent = Exponent::Value(cap);
                        p.source = BoundSource::CircleMethodLargeK;
                    }
                    p.heuristic = true;
                    p.applicability_note = format!(
                        "{}; large-k cap k - d applied at threshold k >= {threshold} (heuristic)",
                        p.applicability_note
                    );
                }
            }
            p
        }
        EquationKind::GeneralIrreducibleAsserted { genus_curve: true } => pred(
            Exponent::Value(frac(k - 2, 1).max(frac(0, 1))),
            BoundSource::GenusCurveSlicing,
            "caller asserts a genus >= 1 curve on a coordinate plane",
        ),
        EquationKind::GeneralIrreducibleAsserted { genus_curve: false } => {
            if d == 0 {
                pred(Exponent::Empty, BoundSource::Constant, "nonzero constant")
            } else {
                pred(
                    Exponent::Value(frac(k - 1, 1) + frac(1, d)),
                    BoundSource::PilaIrreducible,
                    "caller asserts irreducibility",
                )
            }
        }
        EquationKind::GeneralReducibleAllowed => {
            if d == 0 {
                pred(Exponent::Empty, BoundSource::Constant, "nonzero constant")
            } else {
                let mut p = pred(
                    Exponent::Value(frac(k - 1, 1)),
                    BoundSource::DegreeBound,
                    "explicit bound d (2N+1)^(k-1)",
                );
                p.explicit_constant = Some(cls.degree);
                p
            }
        }
    };
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    pub alpha: f64,
    pub log_constant: f64,
    pub max_residual: f64,
    pub points: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FitOutcome {
    Fit(ExponentFit),
    /// Some count was zero; no logarithmic fit is possible.
    Empty { points: Vec<(u64, u64)> },
}

impl FitOutcome {
    pub fn alpha(&self) -> Option<f64> {
        match self {
            FitOutcome::Fit(f) => Some(f.alpha),
            FitOutcome::Empty { .. } => None,
        }
    }
}

/// Least-squares slope of `ln count` against `ln N`.
pub fn fit_exponent(points: &[(u64, u64)]) -> Result<FitOutcome> {
    if points.len() < 3 {
        return Err(Error::InvalidFitInput(format!("need at least 3 points, got {}", points.len())));
    }
    if points[0].0 == 0 {
        return Err(Error::InvalidFitInput("radius 0 has no logarithm".into()));
    }
    if points.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::InvalidFitInput("radii must be strictly increasing".into()));
    }
    if points.iter().any(|p| p.1 == 0) {
        return Ok(FitOutcome::Empty { points: points.to_vec() });
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| (p.1 as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let alpha = sxy / sxx;
    let log_constant = my - alpha * mx;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (log_constant + alpha * x)).abs())
        .fold(0.0, f64::max);
    Ok(FitOutcome::Fit(ExponentFit { alpha, log_constant, max_residual, points: points.to_vec() }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// Fewer than three nonzero counts to fit.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundVerdict {
    pub status: Status,
    pub message: String,
    pub predicted: Option<f64>,
    pub alpha: Option<f64>,
    pub slack: f64,
    pub points: Vec<(u64, u64)>,
}

/// Counts at every radius using `engine` (or the automatic choice).
pub fn gather_counts(
    p: &Polynomial,
    mode: CountMode,
    radii: &[u64],
    engine: Option<Engine>,
    budget: &Budget,
) -> Result<Vec<(u64, u64)>> {
    radii
        .iter()
        .map(|&n| {
            let cube = Hypercube { radius: n, mode };
            let r = match engine {
                Some(e) => count_with(p, cube, e, budget)?,
                None => count_auto(p, cube, budget)?,
            };
            Ok((n, r.count))
        })
        .collect()
}

/// Judges counts already gathered at increasing radii against a prediction.
pub fn judge(
    p: &Polynomial,
    mode: CountMode,
    points: &[(u64, u64)],
    prediction: &ExponentPrediction,
    slack: f64,
) -> Result<BoundVerdict> {
    if slack.is_nan() || slack <= 0.0 {
        return Err(Error::InvalidArgument("slack must be positive".into()));
    }
    let predicted = prediction.exponent.as_f64();
    let positive: Vec<(u64, u64)> = points.iter().copied().filter(|p| p.1 > 0).collect();
    let alpha = if positive.len() >= 3 { fit_exponent(&positive)?.alpha() } else { None };
    let verdict = |status, message: String| BoundVerdict {
        status,
        message,
        predicted,
        alpha,
        slack,
        points: points.to_vec(),
    };

    if prediction.exponent == Exponent::Empty {
        return Ok(if positive.is_empty() {
            verdict(Status::Pass, "Empty confirmed".into())
        } else {
            verdict(Status::Fail, format!("predicted no solutions, found {} at N={}", positive[0].1, positive[0].0))
        });
    }

    if let Some(d) = prediction.explicit_constant {
        let k = p.var_count() as u32;
        for &(n, count) in points {
            let side = 2 * n as u128 + 1;
            let bound = side.checked_pow(k - 1).and_then(|s| s.checked_mul(d as u128));
            if let Some(bound) = bound {
                if count as u128 > bound {
                    return Ok(verdict(
                        Status::Fail,
                        format!("count {count} exceeds {d}*(2N+1)^{} = {bound} at N={n}", k - 1),
                    ));
                }
            }
        }
        let _ = mode;
        return Ok(verdict(Status::Pass, format!("count <= {d}*(2N+1)^{} at every radius", k - 1)));
    }

    if positive.is_empty() {
        return Ok(verdict(Status::Pass, "no solutions observed; consistent with the upper bound".into()));
    }
    let predicted_value = predicted.unwrap_or(0.0);
    match alpha {
        None => Ok(verdict(Status::Inconclusive, "fewer than three nonzero counts to fit".into())),
        Some(a) if a <= predicted_value + slack => Ok(verdict(
            Status::Pass,
            format!("fitted alpha {a:.4} <= predicted {predicted_value:.4} + slack {slack}"),
        )),
        Some(a) => Ok(verdict(
            Status::Fail,
            format!("fitted alpha {a:.4} > predicted {predicted_value:.4} + slack {slack}"),
        )),
    }
}

/// Counts `p` at each radius and judges the counts against `prediction`.
pub fn check_bound(
    p: &Polynomial,
    mode: CountMode,
    radii: &[u64],
    prediction: &ExponentPrediction,
    slack: f64,
    budget: &Budget,
) -> Result<BoundVerdict> {
    if slack.is_nan() || slack <= 0.0 {
        return Err(Error::InvalidArgument("slack must be positive".into()));
    }
    let points = gather_counts(p, mode, radii, None, budget)?;
    judge(p, mode, &points, prediction, slack)
}

/// Machine-readable summary of one prediction-versus-fit experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentReport {
    pub equation: String,
    pub class: EquationClass,
    pub mode: CountMode,
    pub predicted: Exponent,
    pub source_citation: BoundSource,
    pub heuristic: bool,
    pub points: Vec<(u64, u64)>,
    pub alpha: Option<f64>,
    pub verdict: Status,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportConfig {
    pub mode: CountMode,
    pub radii: Vec<u64>,
    pub slack: f64,
    pub engine: Option<Engine>,
    pub assumptions: Assumptions,
    pub options: PredictionOptions,
}

impl ReportConfig {
    pub fn new(radii: Vec<u64>) -> Self {
        ReportConfig {
            mode: CountMode::IntegerBox,
            radii,
            slack: DEFAULT_SLACK,
            engine: None,
            assumptions: Assumptions::default(),
            options: PredictionOptions::default(),
        }
    }
}

pub fn exponent_report(p: &Polynomial, cfg: &ReportConfig, budget: &Budget) -> Result<ExponentReport> {
    if cfg.radii.len() < 3 {
        return Err(Error::InvalidFitInput(format!("need at least 3 radii, got {}", cfg.radii.len())));
    }
    if cfg.radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidFitInput("radii must be strictly increasing".into()));
    }
    let class = classify_with(p, cfg.assumptions)?;
    let prediction = predicted_exponent_with(&class, cfg.mode, cfg.options)?;
    let points = gather_counts(p, cfg.mode, &cfg.radii, cfg.engine, budget)?;
    let verdict = judge(p, cfg.mode, &points, &prediction, cfg.slack)?;
    Ok(ExponentReport {
        equation: crate::parse::render(p),
        class,
        mode: cfg.mode,
        predicted: prediction.exponent,
        source_citation: prediction.source,
        heuristic: prediction.heuristic,
        points,
        alpha: verdict.alpha,
        verdict: verdict.status,
        message: verdict.message,
    })
}
