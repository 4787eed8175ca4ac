//! Exact coefficients c_0..c_N of f(z) = exp(Σ Λ_k z^k).
//!
//! The main path is the recurrence n·c_n = Σ_{k=1}^n (kΛ_k) c_{n-k}. It runs
//! on big integers when every kΛ_k is an integer and every division by n is
//! exact, falls back to rationals otherwise, and to high-precision reals when
//! the model has irrational scales. [`pentagonal_oracle`] and [`product_dp`]
//! are independent algorithms used to cross-check it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hp::RealHP;
use crate::model::{lambda_coeffs, LambdaSeries, ModelKind, ModelSpec};

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    Integer(Vec<BigInt>),
    Rational(Vec<BigRational>),
    Approx(Vec<RealHP>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactSeries {
    pub coeffs: Coefficients,
    pub order: usize,
    pub model_kind: ModelKind,
}

impl ExactSeries {
    fn integer(coeffs: Vec<BigInt>, model_kind: ModelKind) -> Self {
        ExactSeries { order: coeffs.len() - 1, coeffs: Coefficients::Integer(coeffs), model_kind }
    }

    pub fn len(&self) -> usize {
        self.order + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.coeffs, Coefficients::Approx(_))
    }

    /// The integer coefficients, if every c_n has denominator 1.
    pub fn integers(&self) -> Option<&[BigInt]> {
        match &self.coeffs {
            Coefficients::Integer(v) => Some(v),
            _ => None,
        }
    }

    pub fn rational(&self, n: usize) -> Option<BigRational> {
        match &self.coeffs {
            Coefficients::Integer(v) => Some(BigRational::from_integer(v[n].clone())),
            Coefficients::Rational(v) => Some(v[n].clone()),
            Coefficients::Approx(_) => None,
        }
    }

    pub fn real(&self, n: usize) -> RealHP {
        match &self.coeffs {
            Coefficients::Integer(v) => RealHP::from_bigint(&v[n]),
            Coefficients::Rational(v) => RealHP::from_rational(&v[n]),
            Coefficients::Approx(v) => v[n].clone(),
        }
    }

    /// log c_n; a domain error when c_n is not positive.
    pub fn log_coeff(&self, n: usize) -> Result<RealHP> {
        let c = self.real(n);
        if !c.is_positive() {
            return Err(Error::Domain { value: c.to_f64(), domain: "c_n > 0" });
        }
        Ok(c.ln())
    }

    /// c_n as a decimal string (a fraction p/q for non-integral values).
    pub fn display(&self, n: usize) -> String {
        match &self.coeffs {
            Coefficients::Integer(v) => v[n].to_string(),
            Coefficients::Rational(v) => v[n].to_string(),
            Coefficients::Approx(v) => v[n].to_sci_string(20),
        }
    }
}

pub fn exact_coefficients(model: &ModelSpec, order: usize) -> Result<ExactSeries> {
    let kind = model.kind;
    if order == 0 {
        return Ok(ExactSeries::integer(vec![BigInt::one()], kind));
    }
    match lambda_coeffs(model, order)? {
        LambdaSeries::Exact(klambda) => {
            if klambda.iter().all(|x| x.is_integer()) {
                let ints: Vec<BigInt> = klambda.iter().map(|x| x.to_integer()).collect();
                if let Some(c) = integer_recurrence(&ints) {
                    return Ok(ExactSeries::integer(c, kind));
                }
            }
            let c = rational_recurrence(&klambda);
            Ok(ExactSeries { order, coeffs: Coefficients::Rational(c), model_kind: kind })
        }
        LambdaSeries::Real(klambda) => {
            let mut c = vec![RealHP::one()];
            for n in 1..=order {
                let s: RealHP = (1..=n).map(|k| &klambda[k - 1] * &c[n - k]).sum();
                c.push(s / (n as f64));
            }
            Ok(ExactSeries { order, coeffs: Coefficients::Approx(c), model_kind: kind })
        }
    }
}

/// Returns `None` as soon as some division by n leaves a remainder.
fn integer_recurrence(klambda: &[BigInt]) -> Option<Vec<BigInt>> {
    let order = klambda.len();
    let mut c = Vec::with_capacity(order + 1);
    c.push(BigInt::one());
    for n in 1..=order {
        let mut s = BigInt::zero();
        for k in 1..=n {
            if !klambda[k - 1].is_zero() {
                s += &klambda[k - 1] * &c[n - k];
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return None;
        }
        c.push(q);
    }
    Some(c)
}

fn rational_recurrence(klambda: &[BigRational]) -> Vec<BigRational> {
    let order = klambda.len();
    let mut c = Vec::with_capacity(order + 1);
    c.push(BigRational::one());
    for n in 1..=order {
        let mut s = BigRational::zero();
        for k in 1..=n {
            if !klambda[k - 1].is_zero() {
                s += &klambda[k - 1] * &c[n - k];
            }
        }
        c.push(s / BigRational::from_integer(BigInt::from(n)));
    }
    c
}

/// p(0..=N) by Euler's pentagonal-number recurrence.
pub fn pentagonal_oracle(order: usize) -> ExactSeries {
    let mut p: Vec<BigInt> = Vec::with_capacity(order + 1);
    p.push(BigInt::one());
    for n in 1..=order {
        let mut s = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut t = p[n - g1].clone();
            if g2 <= n {
                t += &p[n - g2];
            }
            if k % 2 == 1 {
                s += t;
            } else {
                s -= t;
            }
        }
        p.push(s);
    }
    ExactSeries::integer(p, ModelKind::Standard)
}

/// Multiplies out ∏_j (1 - z^j)^{-b_j} truncated at z^N, expanding each
/// factor by the binomial series. Needs a multiset model with unit scales
/// and nonnegative integer weights.
pub fn product_dp(model: &ModelSpec, order: usize) -> Result<ExactSeries> {
    let weights = model.integer_multiset_weights(order)?.ok_or_else(|| {
        Error::UnsupportedModel(
            "product_dp needs a multiset base, unit scales and integer weights".into(),
        )
    })?;
    if weights.iter().any(|b| b.is_negative()) {
        return Err(Error::UnsupportedModel("product_dp needs nonnegative weights".into()));
    }
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for (idx, b) in weights.iter().enumerate() {
        let j = idx + 1;
        if b.is_zero() {
            continue;
        }
        // binom[t] = C(b + t - 1, t)
        let terms = order / j;
        let mut binom = Vec::with_capacity(terms + 1);
        binom.push(BigInt::one());
        for t in 1..=terms {
            let next = &binom[t - 1] * (b + BigInt::from(t - 1)) / BigInt::from(t);
            binom.push(next);
        }
        let mut out = vec![BigInt::zero(); order + 1];
        for (n, slot) in out.iter_mut().enumerate() {
            let mut s = BigInt::zero();
            for (t, coeff) in binom.iter().enumerate().take(n / j + 1) {
                let prev = &c[n - j * t];
                if !prev.is_zero() {
                    s += coeff * prev;
                }
            }
            *slot = s;
        }
        c = out;
    }
    Ok(ExactSeries::integer(c, model.kind))
}

/// c_n as an `u128`, when it fits. Handy for small tables.
pub fn small_value(series: &ExactSeries, n: usize) -> Option<u128> {
    series.integers().and_then(|v| v[n].to_u128())
}
