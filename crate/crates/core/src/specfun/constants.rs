use crate::hp::RealHP;

/// Euler–Mascheroni constant, lim (H_n - ln n).
const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992";

/// Logarithm of the Glaisher–Kinkelin constant,
/// lim (sum_{k<=n} k ln k - (n^2/2 + n/2 + 1/12) ln n + n^2/4).
const LOG_GLAISHER: &str = "0.24875447703378426254725299357611397609736971366853";

pub fn euler_gamma() -> RealHP {
    RealHP::parse(EULER_GAMMA).expect("constant literal")
}

pub fn log_glaisher() -> RealHP {
    RealHP::parse(LOG_GLAISHER).expect("constant literal")
}

/// ln(2π) at `bits` of precision.
pub(crate) fn ln_two_pi(bits: usize) -> RealHP {
    (RealHP::pi_prec(bits) * 2.0).ln()
}
