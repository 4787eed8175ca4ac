//! Exact Bernoulli numbers and the high-precision series coefficients derived
//! from them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hp::RealHP;

static EXACT: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();

/// B_0, B_1, …, B_n (with B_1 = -1/2).
pub fn bernoulli_upto(n: usize) -> Vec<BigRational> {
    let cell = EXACT.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut table = cell.lock().expect("bernoulli table");
    while table.len() <= n {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let m = table.len();
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, b) in table.iter().enumerate() {
            acc += b * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        table.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    table[..=n].to_vec()
}

/// Coefficients used by the zeta and log-gamma asymptotic tails, cached per
/// precision.
pub(crate) struct SeriesCoeffs {
    /// B_{2j} / (2j)! for j = 1..=m.
    pub euler_maclaurin: Vec<RealHP>,
    /// B_{2j} / (2j (2j - 1)) for j = 1..=m.
    pub stirling: Vec<RealHP>,
}

type CoeffCache = Mutex<HashMap<(usize, usize), Arc<SeriesCoeffs>>>;
static CACHE: OnceLock<CoeffCache> = OnceLock::new();

pub(crate) fn series_coeffs(bits: usize, m: usize) -> Arc<SeriesCoeffs> {
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("coefficient cache").get(&(bits, m)) {
        return Arc::clone(c);
    }
    let b = bernoulli_upto(2 * m);
    let mut factorial = BigInt::one();
    let mut euler_maclaurin = Vec::with_capacity(m);
    let mut stirling = Vec::with_capacity(m);
    for j in 1..=m {
        factorial *= BigInt::from((2 * j - 1) * (2 * j));
        let b2j = &b[2 * j];
        let em = b2j / BigRational::from_integer(factorial.clone());
        let st = b2j / BigRational::from_integer(BigInt::from(2 * j * (2 * j - 1)));
        euler_maclaurin.push(RealHP::from_rational_prec(&em, bits));
        stirling.push(RealHP::from_rational_prec(&st, bits));
    }
    let coeffs = Arc::new(SeriesCoeffs { euler_maclaurin, stirling });
    cache.lock().expect("coefficient cache").insert((bits, m), Arc::clone(&coeffs));
    coeffs
}
