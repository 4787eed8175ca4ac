//! Built-in constant checks. Each check prints `<subject>: <claim> OK` or
//! `... FAIL (got …, expected …)`.

use std::io::Write;

use subexp_core::specfun::{hurwitz_zeta, log_gamma, riemann_zeta, riemann_zeta_deriv};
use subexp_core::{
    derive_spectrum, kappa, log_estimate_explicit, make_preset, q_correction, Classification,
    ModelKind, RealHP, SpectralData,
};

use crate::error::{CliError, CliResult};
use crate::format::real;

const TOL: f64 = 1e-12;

struct Report<'a> {
    out: &'a mut dyn Write,
    failures: usize,
}

impl Report<'_> {
    fn check(
        &mut self,
        subject: &str,
        claim: &str,
        got: &RealHP,
        expected: &RealHP,
    ) -> CliResult<()> {
        let scale = expected.abs().to_f64().max(1.0);
        if (got - expected).abs().to_f64() <= TOL * scale {
            writeln!(self.out, "{subject}: {claim} OK")?;
        } else {
            self.failures += 1;
            writeln!(
                self.out,
                "{subject}: {claim} FAIL (got {}, expected {})",
                real(got),
                real(expected)
            )?;
        }
        Ok(())
    }

    fn check_flag(&mut self, subject: &str, claim: &str, ok: bool) -> CliResult<()> {
        if ok {
            writeln!(self.out, "{subject}: {claim} OK")?;
        } else {
            self.failures += 1;
            writeln!(self.out, "{subject}: {claim} FAIL")?;
        }
        Ok(())
    }
}

fn spectrum(kind: ModelKind) -> CliResult<SpectralData> {
    Ok(derive_spectrum(&make_preset(kind)?, 8)?)
}

fn ratio(p: i64, q: i64) -> RealHP {
    RealHP::ratio(p, q)
}

pub fn run(out: &mut dyn Write) -> CliResult<()> {
    let mut r = Report { out, failures: 0 };
    let pi = RealHP::pi();
    let zeta2 = &pi * &pi / 6.0;
    let zeta3 = riemann_zeta(3.0)?;
    let half_ln_2pi = (&pi * 2.0).ln() * 0.5;

    r.check("zeta", "zeta(2)=pi^2/6", &riemann_zeta(2.0)?, &zeta2)?;
    r.check("zeta", "zeta(0)=-1/2", &riemann_zeta(0.0)?, &ratio(-1, 2))?;
    r.check("zeta", "zeta(-1)=-1/12", &riemann_zeta(-1.0)?, &ratio(-1, 12))?;
    r.check("zeta", "zeta'(0)=-log(2pi)/2", &riemann_zeta_deriv(0.0)?, &-&half_ln_2pi)?;
    for (a, b) in [(2, 1), (3, 1), (3, 2), (4, 3), (7, 5)] {
        let got = hurwitz_zeta(0.0, ratio(b, a))?;
        r.check(
            "zeta",
            &format!("zeta(0,{b}/{a})=1/2-{b}/{a}"),
            &got,
            &(ratio(1, 2) - ratio(b, a)),
        )?;
    }

    let standard = spectrum(ModelKind::Standard)?;
    r.check("standard", "h_1=pi^2/6", &standard.poles[0].residue, &zeta2)?;
    r.check("standard", "A0=-1/2", &standard.a0, &ratio(-1, 2))?;
    r.check("standard", "h0=-log(2pi)/2", &standard.h0, &-&half_ln_2pi)?;
    r.check("standard", "Q=h0", &subexp_core::q_constant(&standard)?, &standard.h0)?;
    let hardy_ramanujan = [10u64, 100, 1000].iter().try_fold(true, |ok, &n| {
        let nn = RealHP::from_i64(n as i64);
        let closed = -(RealHP::from_i64(48).sqrt()).ln() - nn.ln() + &pi * (nn * 2.0 / 3.0).sqrt();
        let got = log_estimate_explicit(&standard, n)?.log_value;
        Ok::<_, CliError>(ok && (got - closed).abs().to_f64() <= 1e-10)
    })?;
    r.check_flag("standard", "explicit formula = Hardy–Ramanujan leading term", hardy_ramanujan)?;

    let model = make_preset(ModelKind::Roots)?;
    let roots = spectrum(ModelKind::Roots)?;
    r.check("roots", "b_5=11", &RealHP::from_rational(&model.weight(5)?), &RealHP::from_i64(11))?;
    r.check("roots", "A0=-2/3", &roots.a0, &ratio(-2, 3))?;
    r.check("roots", "h_1=zeta(2)", &roots.poles[0].residue, &zeta2)?;
    r.check("roots", "h_2=2zeta(3)", &roots.poles[1].residue, &(&zeta3 * 2.0))?;
    r.check(
        "roots",
        "2rho_1-rho_2=0",
        &roots.pole_gap().unwrap_or_else(RealHP::one),
        &RealHP::zero(),
    )?;
    r.check_flag("roots", "critical", roots.classification() == Classification::Critical)?;
    r.check("roots", "kappa=-8/9", &kappa(&roots), &ratio(-8, 9))?;
    let correction = &zeta2 * &zeta2 / (&zeta3 * 24.0);
    r.check("roots", "Q=h0-zeta(2)^2/(24zeta(3))", &q_correction(&roots)?, &correction)?;

    for (a, b) in [(2i64, 1i64), (3, 1), (3, 2), (5, 3)] {
        let kind = ModelKind::Congruent { modulus: a as u64, residue: b as u64 };
        let sd = spectrum(kind)?;
        let subject = kind.to_string();
        r.check(&subject, "A0=1/2-b/a", &sd.a0, &(ratio(1, 2) - ratio(b, a)))?;
        r.check(&subject, "kappa=-(a+b)/(2a)", &kappa(&sd), &ratio(-(a + b), 2 * a))?;
        // h_0 = ζ'(0, b/a) - log(a)·ζ(0, b/a) with ζ'(0, q) = log Γ(q) - ½log 2π
        let q = ratio(b, a);
        let h0 =
            log_gamma(q.clone())? - &half_ln_2pi - RealHP::from_i64(a).ln() * (ratio(1, 2) - q);
        r.check(&subject, "h0=zeta'(0,b/a)-log(a)zeta(0,b/a)", &sd.h0, &h0)?;
        let exponent = [100u64, 1000, 10_000].iter().try_fold(true, |ok, &n| {
            let le = log_estimate_explicit(&sd, n)?;
            let got = le.term("leading_exponent").cloned().unwrap_or_else(RealHP::zero);
            let want = &pi * (RealHP::from_i64(2 * n as i64) / (3 * a) as f64).sqrt();
            Ok::<_, CliError>(ok && ((got / want) - 1.0).abs().to_f64() <= TOL)
        })?;
        r.check_flag(&subject, "exponent π√(2n/(3a))", exponent)?;
    }

    let failures = r.failures;
    if failures > 0 {
        return Err(CliError::Verify(format!("{failures} check(s) failed")));
    }
    writeln!(r.out, "all checks passed")?;
    Ok(())
}
