use crate::error::{Error, Result};
use crate::hp::RealHP;

use super::bernoulli::series_coeffs;
use super::constants::ln_two_pi;

/// Number of Stirling correction terms and the shift threshold for a given
/// precision. At 192 bits the truncation error is below 1e-80.
fn stirling_params(bits: usize) -> (usize, f64) {
    (bits / 6 + 8, (bits / 4 + 8) as f64)
}

/// ln Γ(x) for x > 0.
///
/// The argument is shifted upward with the recurrence Γ(x+1) = xΓ(x) until
/// the Stirling series with Bernoulli corrections converges to working
/// precision.
pub fn log_gamma(x: impl Into<RealHP>) -> Result<RealHP> {
    let x = x.into();
    if !x.is_finite() || !x.is_positive() {
        return Err(Error::Domain { value: x.to_f64(), domain: "x > 0" });
    }
    Ok(log_gamma_unchecked(&x))
}

pub(crate) fn log_gamma_unchecked(x: &RealHP) -> RealHP {
    let bits = x.precision_bits();
    let (terms, threshold) = stirling_params(bits);
    let threshold = RealHP::from_f64_prec(threshold, bits);
    let mut z = x.clone();
    let mut shift = RealHP::from_i64_prec(1, bits);
    while z < threshold {
        shift = &shift * &z;
        z = z + 1.0;
    }
    stirling(&z, terms) - shift.ln()
}

fn stirling(z: &RealHP, terms: usize) -> RealHP {
    let bits = z.precision_bits();
    let coeffs = series_coeffs(bits, terms);
    let ln_z = z.ln();
    let mut acc = (z - 0.5) * &ln_z - z + ln_two_pi(bits) * 0.5;
    let inv_z = z.recip();
    let inv_z2 = &inv_z * &inv_z;
    let mut pow = inv_z;
    for c in &coeffs.stirling {
        acc = acc + c * &pow;
        pow = &pow * &inv_z2;
    }
    acc
}
