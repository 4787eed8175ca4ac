//! The Khintchine equation
//!
//! ```text
//! Σ_{l=1}^r h_l ρ_l δ^{-ρ_l-1} + A_0 δ^{-1} + D(-1) = n
//! ```
//!
//! and its solution δ_n, found by Newton's method safeguarded with bisection
//! inside a verified sign-change bracket.

use crate::error::{Error, Result};
use crate::hp::{precision_digits, RealHP};
use crate::spectrum::SpectralData;

pub const MAX_ITERATIONS: usize = 200;
const BRACKET_MIN: f64 = 1e-12;
const BRACKET_MAX: f64 = 1e12;

/// Bracket state after one solver iteration.
#[derive(Clone, Debug)]
pub struct SolverStep {
    pub lo: RealHP,
    pub hi: RealHP,
    /// The Newton step left the bracket and was replaced by bisection.
    pub bisected: bool,
}

#[derive(Clone, Debug)]
pub struct KhintchineSolution {
    pub n: u64,
    /// δ_n > 0
    pub delta: RealHP,
    /// z_n = 1/δ_n
    pub z: RealHP,
    /// Left side minus n at δ_n.
    pub residual: RealHP,
    pub iterations: usize,
    /// Final sign-change bracket, lo < δ_n < hi.
    pub bracket: (RealHP, RealHP),
    pub steps: Vec<SolverStep>,
}

/// Residual bound max(1e-10·n, 1e-12) guaranteed for every returned solution.
pub fn residual_tolerance(n: u64) -> f64 {
    (1e-10 * n as f64).max(1e-12)
}

/// Left side of the Khintchine equation at `delta`.
pub fn khintchine_lhs(sd: &SpectralData, delta: &RealHP) -> RealHP {
    let inv = delta.recip();
    let mut acc = sd.d_neg1() + &sd.a0 * &inv;
    for p in &sd.poles {
        acc = acc + &p.residue * &p.rho * delta.powf(&(-&p.rho - 1.0));
    }
    acc
}

/// d/dδ of [`khintchine_lhs`].
fn lhs_derivative(sd: &SpectralData, delta: &RealHP) -> RealHP {
    let inv = delta.recip();
    let mut acc = -(&sd.a0 * &inv * &inv);
    for p in &sd.poles {
        acc = acc - &p.residue * &p.rho * (&p.rho + 1.0) * delta.powf(&(-&p.rho - 2.0));
    }
    acc
}

/// Two-term expansion of z_n = 1/δ_n:
///
/// ```text
/// z ≈ (n/(ρ_r h_r))^{1/(ρ_r+1)} ± M (ρ_r h_r)^{-e} n^{e},
/// e = (ρ_{r-1} - ρ_r + 1)/(ρ_r + 1),  M = ρ_{r-1} h_{r-1} / ((ρ_r+1) ρ_r h_r)
/// ```
///
/// The correction is dropped when r = 1. Its sign is chosen so that the left
/// side at 1/z moves toward n.
pub fn initial_guess(sd: &SpectralData, n: u64) -> RealHP {
    let top = sd.top();
    let scale = &top.rho * &top.residue;
    let nn = RealHP::from_i64(n as i64);
    let lead = (&nn / &scale).powf(&(&top.rho + 1.0).recip());
    let Some(second) = sd.second() else {
        return lead;
    };
    let e = (&second.rho - &top.rho + 1.0) / (&top.rho + 1.0);
    let m = &second.rho * &second.residue / ((&top.rho + 1.0) * &scale);
    let w = m * scale.powf(&-&e) * nn.powf(&e);
    if khintchine_lhs(sd, &lead.recip()) > nn {
        // the left side grows with z, so shrink z
        let shrunk = &lead - &w;
        if shrunk.is_positive() {
            shrunk
        } else {
            lead * 0.5
        }
    } else {
        lead + w
    }
}

/// Solves the Khintchine equation for δ_n.
pub fn solve_delta(sd: &SpectralData, n: u64) -> Result<KhintchineSolution> {
    let target = RealHP::from_i64(n as i64);
    if n == 0 || target <= *sd.d_neg1() {
        return Err(Error::NoBracket { n });
    }
    let f = |d: &RealHP| khintchine_lhs(sd, d) - &target;
    let tol = RealHP::from_f64(residual_tolerance(n));
    // iterate well past the contract while the precision allows it
    let tight = &target * RealHP::from_i64(10).powi(-(precision_digits() as i64 - 6));
    let step_floor = RealHP::from_i64(10).powi(-(precision_digits() as i64 + 4));

    let min = RealHP::from_f64(BRACKET_MIN);
    let max = RealHP::from_f64(BRACKET_MAX);
    let start = initial_guess(sd, n).recip().max(&min).min(&max);
    let f_start = f(&start);
    if f_start.is_zero() {
        return Ok(KhintchineSolution {
            n,
            z: start.recip(),
            bracket: (&start * 0.5, &start * 2.0),
            delta: start,
            residual: f_start,
            iterations: 0,
            steps: Vec::new(),
        });
    }

    // geometric search for F(lo) > 0 > F(hi)
    let (mut lo, mut hi) = if f_start.is_positive() {
        let mut lo = start.clone();
        let mut hi = &start * 2.0;
        loop {
            if hi > max {
                return Err(Error::NoBracket { n });
            }
            if f(&hi).is_negative() {
                break (lo, hi);
            }
            lo = hi.clone();
            hi = hi * 2.0;
        }
    } else {
        let mut hi = start.clone();
        let mut lo = &start * 0.5;
        loop {
            if lo < min {
                return Err(Error::NoBracket { n });
            }
            if f(&lo).is_positive() {
                break (lo, hi);
            }
            hi = lo.clone();
            lo = lo * 0.5;
        }
    };

    let inside = |x: &RealHP, lo: &RealHP, hi: &RealHP| x > lo && x < hi;
    let newton = |x: &RealHP, fx: &RealHP| {
        let d = lhs_derivative(sd, x);
        (d.is_negative()).then(|| x - fx / d)
    };
    let mut x = newton(&start, &f_start)
        .filter(|c| inside(c, &lo, &hi))
        .unwrap_or_else(|| (&lo + &hi) * 0.5);

    let mut steps = Vec::new();
    let mut last_step: Option<RealHP> = None;
    for iteration in 1..=MAX_ITERATIONS {
        let fx = f(&x);
        let small_step = last_step.as_ref().is_some_and(|s| s.abs() <= &x * &step_floor);
        if fx.abs() <= tight || fx.is_zero() || (small_step && fx.abs() <= tol) {
            return Ok(KhintchineSolution {
                n,
                z: x.recip(),
                delta: x,
                residual: fx,
                iterations: iteration,
                bracket: (lo, hi),
                steps,
            });
        }
        if fx.is_positive() {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let (next, bisected) = match newton(&x, &fx).filter(|c| inside(c, &lo, &hi)) {
            Some(c) => (c, false),
            None => ((&lo + &hi) * 0.5, true),
        };
        steps.push(SolverStep { lo: lo.clone(), hi: hi.clone(), bisected });
        last_step = Some(&next - &x);
        x = next;
    }
    let fx = f(&x);
    if fx.abs() <= tol && inside(&x, &lo, &hi) {
        return Ok(KhintchineSolution {
            n,
            z: x.recip(),
            delta: x,
            residual: fx,
            iterations: MAX_ITERATIONS,
            bracket: (lo, hi),
            steps,
        });
    }
    Err(Error::NonConvergence { n, iterations: MAX_ITERATIONS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_preset, ModelKind};
    use crate::spectrum::{derive_spectrum, Pole, DEFAULT_D_NEG_TERMS};

    fn preset(kind: ModelKind) -> SpectralData {
        derive_spectrum(&make_preset(kind).unwrap(), DEFAULT_D_NEG_TERMS).unwrap()
    }

    /// Plain bisection on the left side, independent of the Newton path.
    fn bisect(sd: &SpectralData, n: u64) -> RealHP {
        let target = RealHP::from_i64(n as i64);
        let mut lo = RealHP::from_f64(1e-9);
        let mut hi = RealHP::from_f64(10.0);
        for _ in 0..160 {
            let mid = (&lo + &hi) * 0.5;
            if khintchine_lhs(sd, &mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) * 0.5
    }

    #[test]
    fn lhs_at_unit_delta() {
        let sd = preset(ModelKind::Standard);
        let v = khintchine_lhs(&sd, &RealHP::one()).to_f64();
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v - (pi2_6 - 0.5 + 1.0 / 24.0)).abs() < 1e-14);
        assert!((v - 1.186600733514893).abs() < 1e-14);

        let roots = preset(ModelKind::Roots);
        let zeta3: f64 = 1.2020569031595942;
        let expected = 4.0 * zeta3 + pi2_6 - 2.0 / 3.0 + 1.0 / 24.0;
        assert!((khintchine_lhs(&roots, &RealHP::one()).to_f64() - expected).abs() < 1e-14);
    }

    #[test]
    fn lhs_tends_to_d_neg1() {
        let sd = preset(ModelKind::Roots);
        let v = khintchine_lhs(&sd, &RealHP::from_f64(1e6)).to_f64();
        assert!((v - 1.0 / 24.0).abs() < 1e-5);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let sd = preset(ModelKind::Roots);
        let x = RealHP::from_f64(0.3);
        let h = RealHP::from_f64(1e-12);
        let fd = (khintchine_lhs(&sd, &(&x + &h)) - khintchine_lhs(&sd, &(&x - &h))) / (h * 2.0);
        let d = lhs_derivative(&sd, &x);
        assert!(((fd - &d) / d).abs().to_f64() < 1e-15);
    }

    #[test]
    fn guess_standard_leading_term() {
        let sd = preset(ModelKind::Standard);
        let z = initial_guess(&sd, 100).to_f64();
        let expected = (100.0 / (std::f64::consts::PI.powi(2) / 6.0)).sqrt();
        assert!((z - expected).abs() < 1e-12);
        assert!((z - 7.797).abs() < 1e-3);
        let z4 = initial_guess(&sd, 400).to_f64();
        assert!((z4 / z - 2.0).abs() < 1e-12);
    }

    #[test]
    fn guess_roots_has_constant_correction() {
        let sd = preset(ModelKind::Roots);
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let zeta3: f64 = 1.2020569031595942;
        let lead: f64 = (1000.0 / (4.0 * zeta3)).powf(1.0 / 3.0);
        let z = initial_guess(&sd, 1000).to_f64();
        // exponent e = 0, so the correction is the constant M
        let m = zeta2 / (12.0 * zeta3);
        assert!((z - (lead - m)).abs() < 1e-12);
    }

    #[test]
    fn standard_hundred_matches_bisection() {
        let sd = preset(ModelKind::Standard);
        let sol = solve_delta(&sd, 100).unwrap();
        let oracle = bisect(&sd, 100);
        assert!((&sol.delta - &oracle).abs().to_f64() < 1e-12);
        assert!((sol.delta.to_f64() - 0.12580504750128083).abs() < 1e-15);
        assert!(sol.residual.abs().to_f64() <= residual_tolerance(100));
        assert!(sol.bracket.0 < sol.delta && sol.delta < sol.bracket.1);
    }

    #[test]
    fn roots_thousand_near_leading_order() {
        let sd = preset(ModelKind::Roots);
        let sol = solve_delta(&sd, 1000).unwrap();
        let zeta3: f64 = 1.2020569031595942;
        let leading: f64 = (4.0 * zeta3 / 1000.0).powf(1.0 / 3.0);
        assert!((sol.delta.to_f64() / leading - 1.0).abs() < 0.02);
        assert!((&sol.delta - bisect(&sd, 1000)).abs().to_f64() < 1e-12);
    }

    #[test]
    fn bracket_width_never_grows() {
        for kind in [ModelKind::Standard, ModelKind::Roots] {
            let sd = preset(kind);
            for n in [10u64, 1000, 100_000_000] {
                let sol = solve_delta(&sd, n).unwrap();
                let widths: Vec<RealHP> = sol.steps.iter().map(|s| &s.hi - &s.lo).collect();
                assert!(widths.windows(2).all(|w| w[1] <= w[0]), "{kind} n = {n}");
                for s in &sol.steps {
                    assert!(s.lo < s.hi);
                }
            }
        }
    }

    #[test]
    fn rejects_targets_below_constant_term() {
        let poles = vec![Pole { rho: 1.0.into(), residue: 1.0.into(), weight_residue: None }];
        let sd = SpectralData::new(poles, 0.0.into(), 0.0.into(), None, vec![5.0.into()]).unwrap();
        assert!(matches!(solve_delta(&sd, 3), Err(Error::NoBracket { n: 3 })));
        assert!(matches!(solve_delta(&sd, 0), Err(Error::NoBracket { .. })));
        assert!(solve_delta(&sd, 6).is_ok());
    }

    #[test]
    fn fractional_poles() {
        let poles = vec![
            Pole { rho: 0.5.into(), residue: 2.0.into(), weight_residue: None },
            Pole { rho: 1.5.into(), residue: 0.75.into(), weight_residue: None },
        ];
        let sd =
            SpectralData::new(poles, (-0.25).into(), 0.1.into(), None, vec![0.01.into()]).unwrap();
        let sol = solve_delta(&sd, 5000).unwrap();
        assert!(sol.residual.abs().to_f64() <= residual_tolerance(5000));
        assert!((&sol.delta - bisect(&sd, 5000)).abs().to_f64() < 1e-12);
    }
}
