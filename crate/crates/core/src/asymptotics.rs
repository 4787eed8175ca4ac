//! Log-space asymptotic estimates of c_n.
//!
//! Two evaluators are provided. The Khintchine form solves for δ_n and
//! assembles
//!
//! ```text
//! log c_n ≈ (ρ_r/2 + 1 - A_0) log δ_n - ½log(2π) - ½log(ρ_r(ρ_r+1)h_r)
//!           + h_0 + Σ_{l=1}^r h_l δ_n^{-ρ_l} + nδ_n + Δ(δ_n)
//! ```
//!
//! The explicit form needs no root-finding:
//!
//! ```text
//! log c_n ≈ -½log(2π ρ_r h_r (ρ_r+1)) + (ρ_r+2-2A_0)/(2(ρ_r+1)) · log(ρ_r h_r)
//!           + κ log n + Q + (1+ρ_r) h_r (ρ_r h_r)^{-ρ_r/(ρ_r+1)} n^{ρ_r/(ρ_r+1)}
//!           + Σ_{l<r} h_l (ρ_r h_r)^{-ρ_l/(ρ_r+1)} n^{ρ_l/(ρ_r+1)}
//! ```
//!
//! with κ = (A_0 - ρ_r/2 - 1)/(ρ_r + 1). It applies when 2ρ_{r-1} ≤ ρ_r; in
//! the critical case 2ρ_{r-1} = ρ_r the constant Q picks up a correction from
//! the second pole. Values stay in log-space until [`to_decimal`].

use crate::error::{Error, Result};
use crate::hp::{precision_digits, RealHP};
use crate::khintchine::solve_delta;
use crate::specfun::ln_two_pi;
use crate::spectrum::{Classification, SpectralData};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaKind {
    Khintchine,
    Explicit,
}

impl std::fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormulaKind::Khintchine => "khintchine",
            FormulaKind::Explicit => "explicit",
        })
    }
}

/// One named additive piece of a log-estimate.
#[derive(Clone, Debug)]
pub struct Term {
    pub name: &'static str,
    pub value: RealHP,
}

#[derive(Clone, Debug)]
pub struct LogEstimate {
    pub n: u64,
    pub formula: FormulaKind,
    /// Natural log of the predicted c_n; the sum of `terms`.
    pub log_value: RealHP,
    pub terms: Vec<Term>,
    /// δ_n, for the Khintchine form.
    pub delta: Option<RealHP>,
}

impl LogEstimate {
    fn from_terms(n: u64, formula: FormulaKind, terms: Vec<Term>, delta: Option<RealHP>) -> Self {
        let log_value = terms.iter().map(|t| &t.value).sum();
        LogEstimate { n, formula, log_value, terms, delta }
    }

    pub fn term(&self, name: &str) -> Option<&RealHP> {
        self.terms.iter().find(|t| t.name == name).map(|t| &t.value)
    }

    /// Base-10 logarithm of the prediction.
    pub fn log10_value(&self) -> RealHP {
        &self.log_value / RealHP::from_i64(10).ln()
    }
}

/// Partial sum of Δ(τ) = Σ_{l≥1} (-1)^l D(-l) τ^l / l!.
#[derive(Clone, Debug)]
pub struct Remainder {
    pub value: RealHP,
    /// Number of series terms included.
    pub terms_used: usize,
    /// False when every available D(-l) was still significant, so the
    /// tolerance may not have been reached.
    pub converged: bool,
}

/// Sums Δ(τ) over the available D(-l), dropping the tail once every remaining
/// term is below `tol · (1 + |partial sum|)`.
pub fn remainder_delta(sd: &SpectralData, tau: &RealHP, tol: f64) -> Result<Remainder> {
    if !tau.is_positive() || tau.to_f64() >= 1.0 {
        return Err(Error::InvalidParameters("remainder argument must lie in (0, 1)".into()));
    }
    if sd.d_neg.is_empty() {
        return Err(Error::Schema("d_neg must contain at least D(-1)".into()));
    }
    let tol = RealHP::from_f64(tol);
    let mut partial = Vec::with_capacity(sd.d_neg.len());
    let mut running = RealHP::zero();
    let mut power = RealHP::one();
    let mut factorial = RealHP::one();
    let mut last_significant = 0;
    for (i, d) in sd.d_neg.iter().enumerate() {
        let l = i + 1;
        power = &power * tau;
        factorial = &factorial * (l as f64);
        let signed = if l % 2 == 1 { -d } else { d.clone() };
        let term = signed * &power / &factorial;
        if term.abs() >= &tol * (running.abs() + 1.0) {
            last_significant = l;
        }
        running = running + term;
        partial.push(running.clone());
    }
    let value =
        if last_significant == 0 { RealHP::zero() } else { partial[last_significant - 1].clone() };
    Ok(Remainder {
        value,
        terms_used: last_significant,
        converged: last_significant < sd.d_neg.len(),
    })
}

/// κ = (A_0 - ρ_r/2 - 1)/(ρ_r + 1), the power of n in the explicit formula.
pub fn kappa(sd: &SpectralData) -> RealHP {
    let rho = &sd.top().rho;
    (&sd.a0 - rho * 0.5 - 1.0) / (rho + 1.0)
}

/// The critical-case correction subtracted from h_0:
/// (ρ_r h_r)^{-(2ρ_{r-1}+1)/(ρ_r+1)} (ρ_{r-1} h_{r-1})² / (2(ρ_r+1)).
/// Zero for subcritical spectra.
pub fn q_correction(sd: &SpectralData) -> Result<RealHP> {
    match sd.classification() {
        Classification::Subcritical => Ok(RealHP::zero()),
        Classification::Ineligible => {
            Err(Error::IneligibleSpectrum { gap: sd.pole_gap().map_or(0.0, |g| g.to_f64()) })
        }
        Classification::Critical => {
            let top = sd.top();
            let second = sd.second().expect("critical spectra have two poles");
            let scale = &top.rho * &top.residue;
            let exponent = -(&second.rho * 2.0 + 1.0) / (&top.rho + 1.0);
            let weight = &second.rho * &second.residue;
            Ok(scale.powf(&exponent) * &weight * &weight / ((&top.rho + 1.0) * 2.0))
        }
    }
}

/// Q = h_0 minus the critical-case correction.
pub fn q_constant(sd: &SpectralData) -> Result<RealHP> {
    Ok(&sd.h0 - q_correction(sd)?)
}

/// Khintchine-form estimate at `n`.
pub fn log_estimate_khintchine(sd: &SpectralData, n: u64) -> Result<LogEstimate> {
    let sol = solve_delta(sd, n)?;
    let delta = &sol.delta;
    let ln_delta = delta.ln();
    let top = sd.top();
    let bits = delta.precision_bits();

    let variance = &top.rho * (&top.rho + 1.0) * &top.residue;
    let prefactor = -(ln_two_pi(bits) + variance.ln()) * 0.5;
    let power = (&top.rho * 0.5 + 1.0 - &sd.a0) * &ln_delta;
    let mut exponent = delta * (n as f64);
    for p in &sd.poles {
        exponent = exponent + &p.residue * delta.powf(&-&p.rho);
    }
    let tol = 10f64.powi(-(precision_digits() as i32 + 2));
    let remainder = remainder_delta(sd, delta, tol)?;

    let terms = vec![
        Term { name: "prefactor", value: prefactor },
        Term { name: "power", value: power },
        Term { name: "constant", value: sd.h0.clone() },
        Term { name: "exponent", value: exponent },
        Term { name: "remainder", value: remainder.value },
    ];
    Ok(LogEstimate::from_terms(n, FormulaKind::Khintchine, terms, Some(sol.delta)))
}

/// The explicit formula with its n-independent constants precomputed.
#[derive(Clone, Debug)]
pub struct ExplicitFormula {
    prefactor: RealHP,
    kappa: RealHP,
    q: RealHP,
    leading_coeff: RealHP,
    leading_power: RealHP,
    /// (h_l (ρ_r h_r)^{-ρ_l/(ρ_r+1)}, ρ_l/(ρ_r+1)) for l < r
    lower: Vec<(RealHP, RealHP)>,
}

impl ExplicitFormula {
    pub fn new(sd: &SpectralData) -> Result<Self> {
        let q = q_constant(sd)?;
        let top = sd.top();
        let rho1 = &top.rho + 1.0;
        let scale = &top.rho * &top.residue;
        let ln_scale = scale.ln();
        let bits = scale.precision_bits();
        let prefactor = -(ln_two_pi(bits) + &ln_scale + rho1.ln()) * 0.5
            + (&top.rho + 2.0 - &sd.a0 * 2.0) / (&rho1 * 2.0) * &ln_scale;
        let leading_power = &top.rho / &rho1;
        let leading_coeff = &rho1 * &top.residue * (-&leading_power * &ln_scale).exp();
        let lower = sd.poles[..sd.poles.len() - 1]
            .iter()
            .map(|p| {
                let power = &p.rho / &rho1;
                let coeff = &p.residue * (-&power * &ln_scale).exp();
                (coeff, power)
            })
            .collect();
        Ok(ExplicitFormula { prefactor, kappa: kappa(sd), q, leading_coeff, leading_power, lower })
    }

    pub fn log_estimate(&self, n: u64) -> Result<LogEstimate> {
        if n == 0 {
            return Err(Error::InvalidParameters("n must be positive".into()));
        }
        let ln_n = RealHP::from_i64(n as i64).ln();
        let leading = &self.leading_coeff * (&self.leading_power * &ln_n).exp();
        let lower: RealHP = self.lower.iter().map(|(c, p)| c * (p * &ln_n).exp()).sum();
        let terms = vec![
            Term { name: "prefactor", value: self.prefactor.clone() },
            Term { name: "power", value: &self.kappa * &ln_n },
            Term { name: "constant", value: self.q.clone() },
            Term { name: "leading_exponent", value: leading },
            Term { name: "lower_exponents", value: lower },
        ];
        Ok(LogEstimate::from_terms(n, FormulaKind::Explicit, terms, None))
    }
}

/// Explicit-formula estimate at `n`.
pub fn log_estimate_explicit(sd: &SpectralData, n: u64) -> Result<LogEstimate> {
    ExplicitFormula::new(sd)?.log_estimate(n)
}

/// exp(log_value) as mantissa · 10^exponent with the mantissa in [1, 10)
/// rounded to 12 significant digits.
pub fn to_decimal(le: &LogEstimate) -> (f64, i64) {
    let x = le.log10_value();
    let mut exponent = x.floor().to_f64() as i64;
    let frac = &x - RealHP::from_i64(exponent);
    let mantissa = (frac * RealHP::from_i64(10).ln()).exp().to_f64();
    let mut rounded = (mantissa * 1e11).round() / 1e11;
    if rounded >= 10.0 {
        rounded /= 10.0;
        exponent += 1;
    }
    (rounded, exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_preset, ModelKind};
    use crate::spectrum::{derive_spectrum, Pole, DEFAULT_D_NEG_TERMS};

    fn preset(kind: ModelKind) -> SpectralData {
        derive_spectrum(&make_preset(kind).unwrap(), DEFAULT_D_NEG_TERMS).unwrap()
    }

    fn estimate_with(log_value: RealHP) -> LogEstimate {
        LogEstimate::from_terms(
            1,
            FormulaKind::Explicit,
            vec![Term { name: "x", value: log_value }],
            None,
        )
    }

    fn custom(rhos: &[f64], d_neg: &[f64]) -> SpectralData {
        let poles = rhos
            .iter()
            .map(|&r| Pole { rho: r.into(), residue: 1.0.into(), weight_residue: None })
            .collect();
        SpectralData::new(
            poles,
            0.0.into(),
            0.0.into(),
            None,
            d_neg.iter().map(|&d| d.into()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn kappa_values() {
        assert!((kappa(&preset(ModelKind::Roots)).to_f64() + 8.0 / 9.0).abs() < 1e-15);
        assert!((kappa(&preset(ModelKind::Standard)).to_f64() + 1.0).abs() < 1e-15);
        for (a, b) in [(2u64, 1u64), (3, 1), (3, 2), (5, 3)] {
            let sd = preset(ModelKind::Congruent { modulus: a, residue: b });
            let expected = -((a + b) as f64) / (2.0 * a as f64);
            assert!((kappa(&sd).to_f64() - expected).abs() < 1e-15, "a={a} b={b}");
        }
    }

    #[test]
    fn q_values() {
        let standard = preset(ModelKind::Standard);
        let expected = -0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!((q_constant(&standard).unwrap().to_f64() - expected).abs() < 1e-15);

        let roots = preset(ModelKind::Roots);
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let zeta3 = 1.2020569031595942;
        let correction = zeta2 * zeta2 / (24.0 * zeta3);
        assert!((q_correction(&roots).unwrap().to_f64() - correction).abs() < 1e-15);
        let q = q_constant(&roots).unwrap().to_f64();
        assert!((q - (roots.h0.to_f64() - correction)).abs() < 1e-15);

        let bad = custom(&[1.5, 2.0], &[0.0]);
        assert!(matches!(q_constant(&bad), Err(Error::IneligibleSpectrum { .. })));
        assert!(matches!(log_estimate_explicit(&bad, 10), Err(Error::IneligibleSpectrum { .. })));
    }

    #[test]
    fn remainder_small_tau() {
        let sd = preset(ModelKind::Roots);
        let tau = RealHP::from_f64(1e-6);
        let r = remainder_delta(&sd, &tau, 1e-40).unwrap();
        assert!(r.value.abs().to_f64() <= (1.0 / 24.0) * 1e-6 * 1.001);
    }

    #[test]
    fn remainder_term_by_term() {
        let sd = preset(ModelKind::Roots);
        let tau = 0.1f64;
        let d: Vec<f64> = sd.d_neg.iter().map(|x| x.to_f64()).collect();
        let mut expected = 0.0;
        let mut fact = 1.0;
        for (i, dl) in d.iter().enumerate() {
            let l = (i + 1) as i32;
            fact *= l as f64;
            expected += (-1f64).powi(l) * dl * tau.powi(l) / fact;
        }
        let r = remainder_delta(&sd, &RealHP::from_f64(tau), 1e-40).unwrap();
        assert!((r.value.to_f64() - expected).abs() < 1e-17);

        let standard = preset(ModelKind::Standard);
        let r = remainder_delta(&standard, &RealHP::from_f64(tau), 1e-40).unwrap();
        assert!((r.value.to_f64() + 0.1 / 24.0).abs() < 1e-17);
        assert!(r.converged);
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn remainder_zero_series() {
        let sd = custom(&[1.0], &[0.0]);
        let r = remainder_delta(&sd, &RealHP::from_f64(0.3), 1e-30).unwrap();
        assert!(r.value.is_zero());
        assert!(remainder_delta(&sd, &RealHP::from_f64(1.5), 1e-30).is_err());
    }

    #[test]
    fn remainder_flags_unconverged_tail() {
        let sd = custom(&[1.0], &[1.0, 1.0]);
        let r = remainder_delta(&sd, &RealHP::from_f64(0.5), 1e-30).unwrap();
        assert!(!r.converged);
        assert!((r.value.to_f64() - (-0.5 + 0.125)).abs() < 1e-17);
    }

    #[test]
    fn hardy_ramanujan_collapse() {
        let sd = preset(ModelKind::Standard);
        for n in [10u64, 100, 1000] {
            let le = log_estimate_explicit(&sd, n).unwrap();
            let nn = RealHP::from_i64(n as i64);
            let pi = RealHP::pi();
            let hr = -(RealHP::from_i64(48).sqrt()).ln() - nn.ln() + pi * (nn * 2.0 / 3.0).sqrt();
            assert!((&le.log_value - hr).abs().to_f64() < 1e-30);
        }
    }

    #[test]
    fn breakdown_sums_to_value() {
        let sd = preset(ModelKind::Roots);
        for le in
            [log_estimate_explicit(&sd, 500).unwrap(), log_estimate_khintchine(&sd, 500).unwrap()]
        {
            let total: RealHP = le.terms.iter().map(|t| &t.value).sum();
            assert!((&total - &le.log_value).abs() <= le.log_value.abs() * 1e-20);
        }
    }

    #[test]
    fn khintchine_close_to_log_p100() {
        let sd = preset(ModelKind::Standard);
        let le = log_estimate_khintchine(&sd, 100).unwrap();
        let exact = (190569292f64).ln();
        assert!((le.log_value.to_f64() - exact).abs() < 0.08);
        assert!(le.delta.is_some());
    }

    #[test]
    fn congruent_leading_exponent() {
        let sd = preset(ModelKind::Congruent { modulus: 2, residue: 1 });
        let le = log_estimate_explicit(&sd, 1000).unwrap();
        let expected = std::f64::consts::PI * (1000.0f64 / 3.0).sqrt();
        let got = le.term("leading_exponent").unwrap().to_f64();
        assert!((got / expected - 1.0).abs() < 1e-14);
    }

    #[test]
    fn leading_exponent_scaling() {
        for kind in [ModelKind::Standard, ModelKind::Roots] {
            let sd = preset(kind);
            let a = log_estimate_explicit(&sd, 1234).unwrap();
            let b = log_estimate_explicit(&sd, 2468).unwrap();
            let ratio = b.term("leading_exponent").unwrap() / a.term("leading_exponent").unwrap();
            let rho = sd.top().rho.to_f64();
            assert!((ratio.to_f64() / 2f64.powf(rho / (rho + 1.0)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn decimal_conversion() {
        assert_eq!(to_decimal(&estimate_with(RealHP::zero())), (1.0, 0));
        let (m, e) = to_decimal(&estimate_with(RealHP::from_i64(190569292).ln()));
        assert_eq!(e, 8);
        assert!((m - 1.90569292).abs() < 1e-12);
        let (m, e) = to_decimal(&estimate_with(RealHP::from_i64(10).ln() * 100.0));
        assert_eq!((m, e), (1.0, 100));
        let (m, e) = to_decimal(&estimate_with(RealHP::from_i64(2).ln() * -10.0));
        assert_eq!(e, -4);
        assert!((m - 9.765625).abs() < 1e-12);
    }
}
