//! Analytic data of Γ(s)D(s), where D(s) = Σ Λ_k k^{-s}.
//!
//! For multiset models with unit scales, D(s) = ζ(s+1)·D_b(s) with
//! D_b(s) = Σ b_k k^{-s}. A simple pole of D_b at ρ with residue A gives a
//! pole of Γ(s)D(s) with residue h = A·ζ(ρ+1)·Γ(ρ). The zero-pole constants
//! are A_0 = D_b(0) and h_0 = D_b′(0), and D(-l) = ζ(1-l)·D_b(-l).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::RealHP;
use crate::model::{BaseFunction, ModelKind, ModelSpec, ScaleRule, WeightRule};
use crate::specfun::{
    hurwitz_unchecked, hurwitz_zeta_deriv0, log_gamma, riemann_unchecked, riemann_zeta,
    riemann_zeta_deriv,
};

/// Number of D(-l) values kept by default.
pub const DEFAULT_D_NEG_TERMS: usize = 8;
/// Largest supported number of D(-l) values.
pub const MAX_D_NEG_TERMS: usize = 20;
/// Absolute tolerance on 2ρ_{r-1} - ρ_r for the critical classification.
pub const CRITICAL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Pole {
    pub rho: RealHP,
    /// Residue h of Γ(s)D(s) at rho.
    pub residue: RealHP,
    /// Residue A of D_b(s) at rho, when the pole was derived from a weight
    /// Dirichlet series.
    pub weight_residue: Option<RealHP>,
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    /// Positive simple poles, strictly increasing in rho.
    pub poles: Vec<Pole>,
    /// A_0 = lim_{s→0} s·D(s)
    pub a0: RealHP,
    /// h_0 = Θ - γA_0
    pub h0: RealHP,
    /// Θ = lim_{s→0} (D(s) - A_0/s), when known separately.
    pub theta: Option<RealHP>,
    /// D(-1), D(-2), …, D(-L)
    pub d_neg: Vec<RealHP>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// r = 1, or 2ρ_{r-1} - ρ_r < 0.
    Subcritical,
    /// 2ρ_{r-1} - ρ_r = 0 (within [`CRITICAL_TOLERANCE`]).
    Critical,
    /// 2ρ_{r-1} - ρ_r > 0: the explicit formula does not apply.
    Ineligible,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Subcritical => "subcritical",
            Classification::Critical => "critical",
            Classification::Ineligible => "ineligible",
        })
    }
}

impl SpectralData {
    /// Builds spectral data and checks its invariants.
    pub fn new(
        poles: Vec<Pole>,
        a0: RealHP,
        h0: RealHP,
        theta: Option<RealHP>,
        d_neg: Vec<RealHP>,
    ) -> Result<Self> {
        let sd = SpectralData { poles, a0, h0, theta, d_neg };
        sd.check()?;
        Ok(sd)
    }

    fn check(&self) -> Result<()> {
        if self.poles.is_empty() {
            return Err(Error::Schema("at least one positive pole is required".into()));
        }
        if self.d_neg.is_empty() {
            return Err(Error::Schema("d_neg must contain at least D(-1)".into()));
        }
        let mut prev: Option<&RealHP> = None;
        for (i, p) in self.poles.iter().enumerate() {
            let ordered = p.rho.is_positive() && prev.is_none_or(|q| *q < p.rho);
            if !ordered {
                return Err(Error::PoleOrdering { index: i + 1, rho: p.rho.to_f64() });
            }
            if !p.residue.is_positive() {
                return Err(Error::NonPositiveResidue { index: i + 1, value: p.residue.to_f64() });
            }
            prev = Some(&p.rho);
        }
        Ok(())
    }

    /// Number of positive poles r.
    pub fn r(&self) -> usize {
        self.poles.len()
    }

    /// The dominant pole (ρ_r, h_r).
    pub fn top(&self) -> &Pole {
        self.poles.last().expect("nonempty poles")
    }

    /// The second-largest pole (ρ_{r-1}, h_{r-1}), if r ≥ 2.
    pub fn second(&self) -> Option<&Pole> {
        self.poles.len().checked_sub(2).map(|i| &self.poles[i])
    }

    /// D(-1); the constant term of the Khintchine equation.
    pub fn d_neg1(&self) -> &RealHP {
        &self.d_neg[0]
    }

    /// 2ρ_{r-1} - ρ_r, or `None` when r = 1.
    pub fn pole_gap(&self) -> Option<RealHP> {
        self.second().map(|p| &p.rho * 2.0 - &self.top().rho)
    }

    pub fn classification(&self) -> Classification {
        match self.pole_gap() {
            None => Classification::Subcritical,
            Some(gap) => classify_gap(gap.to_f64()),
        }
    }
}

fn classify_gap(gap: f64) -> Classification {
    if gap.abs() <= CRITICAL_TOLERANCE {
        Classification::Critical
    } else if gap < 0.0 {
        Classification::Subcritical
    } else {
        Classification::Ineligible
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub ordered: bool,
    pub residues_positive: bool,
    /// 2ρ_{r-1} - ρ_r, absent when r = 1.
    pub gap: Option<f64>,
    pub classification: Classification,
}

impl ValidationReport {
    pub fn is_eligible(&self) -> bool {
        self.ordered && self.residues_positive && self.classification != Classification::Ineligible
    }
}

/// Reports pole ordering, residue positivity and the explicit-formula
/// classification. Never fails; inspect the report instead.
pub fn validate_spectrum(sd: &SpectralData) -> ValidationReport {
    let ordered = sd.poles.iter().all(|p| p.rho.is_positive())
        && sd.poles.windows(2).all(|w| w[0].rho < w[1].rho);
    let residues_positive = sd.poles.iter().all(|p| p.residue.is_positive());
    let gap = match sd.poles.len() {
        0 | 1 => None,
        _ => sd.pole_gap().map(|g| g.to_f64()),
    };
    let classification = gap.map_or(Classification::Subcritical, classify_gap);
    ValidationReport { ordered, residues_positive, gap, classification }
}

fn pole_from_weight_residue(rho: i64, weight_residue: RealHP) -> Result<Pole> {
    // h = A ζ(ρ+1) Γ(ρ)
    let residue = &weight_residue * riemann_zeta(rho as f64 + 1.0)? * log_gamma(rho as f64)?.exp();
    Ok(Pole { rho: RealHP::from_i64(rho), residue, weight_residue: Some(weight_residue) })
}

/// Derives the spectral data of a preset model with `terms` values of D(-l).
pub fn derive_spectrum(model: &ModelSpec, terms: usize) -> Result<SpectralData> {
    if !(1..=MAX_D_NEG_TERMS).contains(&terms) {
        return Err(Error::InvalidParameters(format!(
            "number of D(-l) terms must lie in 1..={MAX_D_NEG_TERMS}"
        )));
    }
    let zeta = |s: i64| riemann_unchecked(&RealHP::from_i64(s));
    let d_neg_with = |weight_dirichlet: &dyn Fn(i64) -> RealHP| -> Vec<RealHP> {
        (1..=terms as i64).map(|l| zeta(1 - l) * weight_dirichlet(-l)).collect()
    };
    match model.kind {
        ModelKind::Standard => {
            // D_b(s) = ζ(s)
            let poles = vec![pole_from_weight_residue(1, RealHP::one())?];
            let a0 = zeta(0);
            let h0 = riemann_zeta_deriv(0.0)?;
            SpectralData::new(poles, a0, h0, None, d_neg_with(&zeta))
        }
        ModelKind::Roots => {
            // D_b(s) = 2ζ(s-1) + ζ(s)
            let poles = vec![
                pole_from_weight_residue(1, RealHP::one())?,
                pole_from_weight_residue(2, RealHP::from_i64(2))?,
            ];
            let a0 = zeta(-1) * 2.0 + zeta(0);
            let h0 = riemann_zeta_deriv(-1.0)? * 2.0 + riemann_zeta_deriv(0.0)?;
            let d_b = |s: i64| zeta(s - 1) * 2.0 + zeta(s);
            SpectralData::new(poles, a0, h0, None, d_neg_with(&d_b))
        }
        ModelKind::Congruent { modulus, residue } => {
            // D_b(s) = a^{-s} ζ(s, b/a)
            let a = RealHP::from_i64(modulus as i64);
            let q = RealHP::ratio(residue as i64, modulus as i64);
            let poles = vec![pole_from_weight_residue(1, a.recip())?];
            let a0 = hurwitz_unchecked(&RealHP::zero(), &q);
            let h0 = -a.ln() * &a0 + hurwitz_zeta_deriv0(&q)?;
            let d_b = |s: i64| a.powi(-s) * hurwitz_unchecked(&RealHP::from_i64(s), &q);
            SpectralData::new(poles, a0, h0, None, d_neg_with(&d_b))
        }
        ModelKind::Custom => Err(Error::CustomModel),
    }
}

/// A numeric literal from a JSON document: a JSON number kept verbatim, or a
/// string holding a decimal literal or a fraction `p/q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Number(serde_json::Number),
    Text(String),
}

impl Literal {
    pub fn as_str(&self) -> String {
        match self {
            Literal::Number(n) => n.to_string(),
            Literal::Text(s) => s.trim().to_string(),
        }
    }

    pub fn to_real(&self) -> Option<RealHP> {
        let s = self.as_str();
        if let Some((p, q)) = s.split_once('/') {
            let p = RealHP::parse(p)?;
            let q = RealHP::parse(q)?;
            return (!q.is_zero()).then(|| p / q);
        }
        RealHP::parse(&s)
    }

    /// The literal as an exact rational: integers, fractions `p/q`, and
    /// decimals with an optional exponent.
    pub fn to_rational(&self) -> Option<BigRational> {
        let s = self.as_str();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            return (!q.is_zero()).then(|| BigRational::new(p, q));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
            None => (s.as_str(), 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if frac_part.starts_with(['+', '-']) || int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
        let scale = exponent - frac_part.len() as i32;
        let ten = BigRational::from_integer(BigInt::from(10));
        let factor = if scale >= 0 {
            num_traits::pow(ten, scale as usize)
        } else {
            BigRational::one() / num_traits::pow(ten, (-scale) as usize)
        };
        Some(BigRational::from_integer(digits) * factor)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleEntry {
    pub rho: Literal,
    pub h: Literal,
}

/// JSON document describing a custom model's analytic data, plus optional
/// inputs for exact counting.
///
/// ```json
/// { "poles": [{"rho": 1, "h": "1.6449340668482264364724151666460251892"}],
///   "A0": -0.5, "h0": -0.9189385332046727, "d_neg": ["1/24"],
///   "weights": [1, 1, 1] }
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumDocument {
    pub poles: Vec<PoleEntry>,
    #[serde(rename = "A0")]
    pub a0: Literal,
    pub h0: Literal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Literal>,
    pub d_neg: Vec<Literal>,
    /// b_1..b_N for exact counting (integers, decimals, or "p/q").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Literal>>,
    /// Base function name: multiset (default), selection, or exponential.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// a_1..a_N, each in (0, 1]; defaults to a_j = 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scales: Option<Vec<Literal>>,
}

impl SpectrumDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn spectral_data(&self) -> Result<SpectralData> {
        let real = |lit: &Literal, field: &str| {
            lit.to_real()
                .ok_or_else(|| Error::Schema(format!("{field}: not a number: {}", lit.as_str())))
        };
        let poles = self
            .poles
            .iter()
            .enumerate()
            .map(|(i, p)| {
                Ok(Pole {
                    rho: real(&p.rho, &format!("poles[{i}].rho"))?,
                    residue: real(&p.h, &format!("poles[{i}].h"))?,
                    weight_residue: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let d_neg = self
            .d_neg
            .iter()
            .enumerate()
            .map(|(i, d)| real(d, &format!("d_neg[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let theta = self.theta.as_ref().map(|t| real(t, "theta")).transpose()?;
        SpectralData::new(poles, real(&self.a0, "A0")?, real(&self.h0, "h0")?, theta, d_neg)
    }

    /// The model for exact counting, if the document lists weights.
    pub fn model(&self) -> Result<Option<ModelSpec>> {
        let rational = |lit: &Literal, field: String| {
            lit.to_rational().ok_or_else(|| {
                Error::Schema(format!("{field}: not an exact number: {}", lit.as_str()))
            })
        };
        let Some(weights) = &self.weights else {
            if self.base.is_some() || self.scales.is_some() {
                return Err(Error::Schema("base and scales need a weights table".into()));
            }
            return Ok(None);
        };
        let base = match &self.base {
            None => BaseFunction::Multiset,
            Some(name) => BaseFunction::from_name(name)
                .ok_or_else(|| Error::Schema(format!("unknown base function {name:?}")))?,
        };
        let table = weights
            .iter()
            .enumerate()
            .map(|(i, w)| rational(w, format!("weights[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let scales = match &self.scales {
            None => ScaleRule::Unit,
            Some(list) => ScaleRule::Exact(
                list.iter()
                    .enumerate()
                    .map(|(i, a)| rational(a, format!("scales[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        ModelSpec::custom(base, WeightRule::Table(table), scales).map(Some)
    }
}

/// Parses and validates a custom spectrum document.
pub fn load_custom_spectrum(document: &str) -> Result<SpectralData> {
    SpectrumDocument::parse(document)?.spectral_data()
}
