//! Multiplicative models f(z) = ∏_{j≥1} S(a_j z^j)^{b_j}.
//!
//! A model is a base function S together with a weight rule b_j ≥ 0 and a
//! scale rule 0 < a_j ≤ 1, both queried by index. Taking logs,
//!
//! ```text
//! log f(z) = Σ_j b_j log S(a_j z^j) = Σ_k Λ_k z^k,   Λ_k = Σ_{jm=k} b_j g_m a_j^m
//! ```
//!
//! where log S(w) = Σ_m g_m w^m. [`LambdaSeries`] stores k·Λ_k, which is an
//! integer for integer-weight multiset models.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hp::RealHP;

/// The per-part generating function S, described by its log-Taylor
/// coefficients. S(0) = 1 for all variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseFunction {
    /// S(w) = 1/(1 - w): each part may repeat (partitions).
    Multiset,
    /// S(w) = 1 + w: each part used at most once.
    Selection,
    /// S(w) = e^w.
    Exponential,
}

impl BaseFunction {
    /// g_m in log S(w) = Σ_{m≥1} g_m w^m.
    pub fn log_taylor(&self, m: usize) -> BigRational {
        assert!(m >= 1, "log-Taylor index starts at 1");
        match self {
            BaseFunction::Multiset => BigRational::new(BigInt::one(), BigInt::from(m)),
            BaseFunction::Selection => {
                let sign = if m % 2 == 1 { 1 } else { -1 };
                BigRational::new(BigInt::from(sign), BigInt::from(m))
            }
            BaseFunction::Exponential => {
                if m == 1 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseFunction::Multiset => "multiset",
            BaseFunction::Selection => "selection",
            BaseFunction::Exponential => "exponential",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "multiset" => Some(BaseFunction::Multiset),
            "selection" => Some(BaseFunction::Selection),
            "exponential" => Some(BaseFunction::Exponential),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// b_j = 1: ordinary partitions.
    Standard,
    /// b_j = 2j + 1: partitions into integer parts of square roots.
    Roots,
    /// b_j = 1 iff j ≡ residue (mod modulus). The residue is kept in
    /// 1..=modulus so that residue/modulus ∈ (0, 1].
    Congruent {
        modulus: u64,
        residue: u64,
    },
    Custom,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelKind::Standard => f.write_str("standard"),
            ModelKind::Roots => f.write_str("roots"),
            ModelKind::Congruent { modulus, residue } => {
                write!(f, "congruent({modulus},{residue})")
            }
            ModelKind::Custom => f.write_str("custom"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum WeightRule {
    Unit,
    /// (j+1)^2 - j^2 = 2j + 1
    OddLinear,
    Congruent {
        modulus: u64,
        residue: u64,
    },
    /// b_1..b_N; indices beyond the table are undefined.
    Table(Vec<BigRational>),
}

impl WeightRule {
    pub fn weight(&self, j: usize) -> Result<BigRational> {
        assert!(j >= 1, "weights are indexed from 1");
        Ok(match self {
            WeightRule::Unit => BigRational::one(),
            WeightRule::OddLinear => BigRational::from_integer(BigInt::from(2 * j + 1)),
            WeightRule::Congruent { modulus, residue } => {
                if (j as u64) % modulus == residue % modulus {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            WeightRule::Table(t) => {
                t.get(j - 1).cloned().ok_or(Error::UndefinedWeight { index: j })?
            }
        })
    }
}

/// A single scale value a_j.
#[derive(Clone, Debug)]
pub enum Scale {
    Exact(BigRational),
    Real(RealHP),
}

#[derive(Clone, Debug)]
pub enum ScaleRule {
    Unit,
    Exact(Vec<BigRational>),
    /// Irrational scales; the whole Λ series switches to high-precision reals.
    Real(Vec<RealHP>),
}

impl ScaleRule {
    pub fn scale(&self, j: usize) -> Result<Scale> {
        match self {
            ScaleRule::Unit => Ok(Scale::Exact(BigRational::one())),
            ScaleRule::Exact(t) => {
                t.get(j - 1).cloned().map(Scale::Exact).ok_or(Error::UndefinedScale { index: j })
            }
            ScaleRule::Real(t) => {
                t.get(j - 1).cloned().map(Scale::Real).ok_or(Error::UndefinedScale { index: j })
            }
        }
    }

    fn is_exact(&self) -> bool {
        !matches!(self, ScaleRule::Real(_))
    }
}

/// An immutable multiplicative model.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub base: BaseFunction,
    pub weights: WeightRule,
    pub scales: ScaleRule,
    pub kind: ModelKind,
}

impl ModelSpec {
    /// A custom model. Weights must be nonnegative and scales in (0, 1].
    pub fn custom(base: BaseFunction, weights: WeightRule, scales: ScaleRule) -> Result<Self> {
        if let WeightRule::Table(t) = &weights {
            if let Some(j) = t.iter().position(|b| b.is_negative()) {
                return Err(Error::InvalidParameters(format!("weight b_{} is negative", j + 1)));
            }
        }
        let bad_scale = match &scales {
            ScaleRule::Unit => None,
            ScaleRule::Exact(t) => {
                t.iter().position(|a| !a.is_positive() || *a > BigRational::one())
            }
            ScaleRule::Real(t) => t.iter().position(|a| !a.is_positive() || a.to_f64() > 1.0),
        };
        if let Some(j) = bad_scale {
            return Err(Error::UndefinedScale { index: j + 1 });
        }
        Ok(ModelSpec { base, weights, scales, kind: ModelKind::Custom })
    }

    pub fn weight(&self, j: usize) -> Result<BigRational> {
        self.weights.weight(j)
    }

    pub fn scale(&self, j: usize) -> Result<Scale> {
        self.scales.scale(j)
    }

    /// b_1..b_n as integers when the model is a multiset model with unit
    /// scales and integer weights; `None` otherwise.
    pub fn integer_multiset_weights(&self, n: usize) -> Result<Option<Vec<BigInt>>> {
        if self.base != BaseFunction::Multiset || !matches!(self.scales, ScaleRule::Unit) {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(n);
        for j in 1..=n {
            let b = self.weight(j)?;
            if !b.is_integer() {
                return Ok(None);
            }
            out.push(b.to_integer());
        }
        Ok(Some(out))
    }
}

/// Builds one of the preset models (multiset base, a_j ≡ 1).
pub fn make_preset(kind: ModelKind) -> Result<ModelSpec> {
    let (weights, kind) = match kind {
        ModelKind::Standard => (WeightRule::Unit, kind),
        ModelKind::Roots => (WeightRule::OddLinear, kind),
        ModelKind::Congruent { modulus, residue } => {
            if modulus == 0 || residue == 0 {
                return Err(Error::InvalidParameters("a and b must be positive integers".into()));
            }
            if modulus.gcd(&residue) != 1 {
                return Err(Error::InvalidParameters(format!(
                    "gcd(a, b) must be 1 (a = {modulus}, b = {residue})"
                )));
            }
            let residue = (residue - 1) % modulus + 1;
            (WeightRule::Congruent { modulus, residue }, ModelKind::Congruent { modulus, residue })
        }
        ModelKind::Custom => {
            return Err(Error::InvalidParameters(
                "custom models are built with ModelSpec::custom".into(),
            ))
        }
    };
    Ok(ModelSpec { base: BaseFunction::Multiset, weights, scales: ScaleRule::Unit, kind })
}

/// k·Λ_k for k = 1..=N, exact whenever every input is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaSeries {
    Exact(Vec<BigRational>),
    Real(Vec<RealHP>),
}

impl LambdaSeries {
    pub fn order(&self) -> usize {
        match self {
            LambdaSeries::Exact(v) => v.len(),
            LambdaSeries::Real(v) => v.len(),
        }
    }

    /// Exact Λ_k (1-based), if the series is exact.
    pub fn lambda_exact(&self, k: usize) -> Option<BigRational> {
        match self {
            LambdaSeries::Exact(v) => Some(&v[k - 1] / BigRational::from_integer(BigInt::from(k))),
            LambdaSeries::Real(_) => None,
        }
    }

    /// Λ_k (1-based) as a high-precision real.
    pub fn lambda(&self, k: usize) -> RealHP {
        match self {
            LambdaSeries::Exact(v) => RealHP::from_rational(&v[k - 1]) / (k as f64),
            LambdaSeries::Real(v) => &v[k - 1] / (k as f64),
        }
    }
}

/// Λ_k = Σ_{jm=k} b_j g_m a_j^m for k = 1..=N, stored as k·Λ_k.
pub fn lambda_coeffs(model: &ModelSpec, order: usize) -> Result<LambdaSeries> {
    if order == 0 {
        return Err(Error::InvalidParameters("truncation order must be at least 1".into()));
    }
    let g: Vec<BigRational> = (1..=order).map(|m| model.base.log_taylor(m)).collect();
    if model.scales.is_exact() {
        let mut out = vec![BigRational::zero(); order];
        for j in 1..=order {
            let b = model.weight(j)?;
            if b.is_zero() {
                continue;
            }
            let a = match model.scale(j)? {
                Scale::Exact(a) => a,
                Scale::Real(_) => unreachable!("exact scale rule"),
            };
            let mut a_pow = BigRational::one();
            for m in 1..=order / j {
                a_pow *= &a;
                if g[m - 1].is_zero() {
                    continue;
                }
                let k = j * m;
                // k·g_m = j·(m·g_m)
                let term = &b * &g[m - 1] * BigRational::from_integer(BigInt::from(k)) * &a_pow;
                out[k - 1] += term;
            }
        }
        Ok(LambdaSeries::Exact(out))
    } else {
        let mut out = vec![RealHP::zero(); order];
        for j in 1..=order {
            let b = model.weight(j)?;
            if b.is_zero() {
                continue;
            }
            let b = RealHP::from_rational(&b);
            let a = match model.scale(j)? {
                Scale::Exact(a) => RealHP::from_rational(&a),
                Scale::Real(a) => a,
            };
            let mut a_pow = RealHP::one();
            for m in 1..=order / j {
                a_pow = &a_pow * &a;
                if g[m - 1].is_zero() {
                    continue;
                }
                let k = j * m;
                let gm = RealHP::from_rational(&g[m - 1]);
                out[k - 1] = &out[k - 1] + &b * gm * &a_pow * (k as f64);
            }
        }
        Ok(LambdaSeries::Real(out))
    }
}

/// One row of the local-limit-theorem weight diagnostic.
#[derive(Clone, Debug, PartialEq)]
pub struct LltRow {
    pub q: u64,
    pub n: u64,
    /// Σ_{1≤k≤n, q∤k} b_k
    pub count: BigRational,
    /// count / ln²(n)
    pub ratio: f64,
}

/// Σ_{1≤k≤n, q∤k} b_k.
pub fn llt_count(model: &ModelSpec, q: u64, n: u64) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        if k % q != 0 {
            acc += model.weight(k as usize)?;
        }
    }
    Ok(acc)
}

/// Tabulates Σ_{1≤k≤n, q∤k} b_k and its ratio to ln²(n) for q = 2..=q_max
/// over the grid 16, 32, 64, … (plus n_max itself). The condition behind the
/// table is asymptotic, so no verdict is attached.
pub fn llt_condition_report(model: &ModelSpec, n_max: u64, q_max: u64) -> Result<Vec<LltRow>> {
    if n_max < 16 {
        return Err(Error::InvalidParameters("n_max must be at least 16".into()));
    }
    if !(2..=64).contains(&q_max) {
        return Err(Error::InvalidParameters("q_max must lie in 2..=64".into()));
    }
    let mut grid: Vec<u64> = std::iter::successors(Some(16u64), |n| n.checked_mul(2))
        .take_while(|&n| n <= n_max)
        .collect();
    if grid.last() != Some(&n_max) {
        grid.push(n_max);
    }
    let weights: Vec<BigRational> =
        (1..=n_max as usize).map(|j| model.weight(j)).collect::<Result<_>>()?;

    let mut totals = Vec::with_capacity(grid.len());
    let mut running = BigRational::zero();
    let mut k = 0usize;
    for &n in &grid {
        while (k as u64) < n {
            running += &weights[k];
            k += 1;
        }
        totals.push(running.clone());
    }

    let mut rows = Vec::with_capacity(grid.len() * (q_max as usize - 1));
    for q in 2..=q_max {
        let mut divisible = BigRational::zero();
        let mut multiple = q;
        for (gi, &n) in grid.iter().enumerate() {
            while multiple <= n {
                divisible += &weights[multiple as usize - 1];
                multiple += q;
            }
            let count = &totals[gi] - &divisible;
            let log_n = (n as f64).ln();
            let ratio = count.to_f64().unwrap_or(f64::INFINITY) / (log_n * log_n);
            rows.push(LltRow { q, n, count, ratio });
        }
    }
    Ok(rows)
}
