use std::io::Write;

use rayon::prelude::*;
use subexp_core::asymptotics::Term;
use subexp_core::{
    exact_coefficients, log_estimate_khintchine, pentagonal_oracle, product_dp, to_decimal,
    validate_spectrum, ExactSeries, ExplicitFormula, LogEstimate, ModelKind, RealHP, SpectralData,
};

use crate::error::{CliError, CliResult};
use crate::format::{real, reals};
use crate::select::Selected;

pub const CSV_HEADER: [&str; 6] = [
    "n",
    "exact_log",
    "pred_khintchine_log",
    "pred_explicit_log",
    "ratio_khintchine",
    "ratio_explicit",
];

/// Orders above this get a warning about the quadratic cost of exact counting.
pub const LARGE_ORDER: usize = 20_000;

fn ln10() -> RealHP {
    RealHP::from_i64(10).ln()
}

pub fn spectrum(out: &mut dyn Write, sel: &Selected, require_eligible: bool) -> CliResult<()> {
    let sd = &sel.spectrum;
    let report = validate_spectrum(sd);
    let rhos: Vec<RealHP> = sd.poles.iter().map(|p| p.rho.clone()).collect();
    let hs: Vec<RealHP> = sd.poles.iter().map(|p| p.residue.clone()).collect();
    writeln!(out, "model={}", sel.label)?;
    writeln!(out, "rho={}", reals(&rhos))?;
    writeln!(out, "h={}", reals(&hs))?;
    writeln!(out, "A0={}", real(&sd.a0))?;
    writeln!(out, "h0={}", real(&sd.h0))?;
    if let Some(theta) = &sd.theta {
        writeln!(out, "theta={}", real(theta))?;
    }
    writeln!(out, "d_neg={}", reals(&sd.d_neg))?;
    match report.gap {
        Some(gap) => writeln!(out, "gap={}", crate::format::sig(gap, 15))?,
        None => writeln!(out, "gap=none")?,
    }
    writeln!(out, "classification={}", report.classification)?;
    if report.is_eligible() {
        writeln!(out, "kappa={}", real(&subexp_core::kappa(sd)))?;
        writeln!(out, "Q={}", real(&subexp_core::q_constant(sd)?))?;
    } else if require_eligible {
        return Err(CliError::Model(subexp_core::Error::IneligibleSpectrum {
            gap: report.gap.unwrap_or(f64::NAN),
        }));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FormulaChoice {
    Khintchine,
    Explicit,
    Both,
}

fn write_estimate(out: &mut dyn Write, le: &LogEstimate, log10: bool) -> CliResult<()> {
    let scale = if log10 { ln10().recip() } else { RealHP::one() };
    let key = if log10 { "log10" } else { "log" };
    let (mantissa, exponent) = to_decimal(le);
    writeln!(out, "formula={}", le.formula)?;
    if let Some(delta) = &le.delta {
        writeln!(out, "delta={}", real(delta))?;
    }
    writeln!(out, "{key}={}", real(&(&le.log_value * &scale)))?;
    writeln!(out, "decimal={mantissa:.11}e{exponent}")?;
    for Term { name, value } in &le.terms {
        writeln!(out, "  {name}={}", real(&(value * &scale)))?;
    }
    Ok(())
}

pub fn predict(
    out: &mut dyn Write,
    sel: &Selected,
    n: u64,
    formula: FormulaChoice,
    log10: bool,
) -> CliResult<()> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    writeln!(out, "model={} n={n}", sel.label)?;
    if formula != FormulaChoice::Explicit {
        write_estimate(out, &log_estimate_khintchine(&sel.spectrum, n)?, log10)?;
    }
    if formula != FormulaChoice::Khintchine {
        let le = ExplicitFormula::new(&sel.spectrum)?.log_estimate(n)?;
        write_estimate(out, &le, log10)?;
    }
    Ok(())
}

fn counting_model(sel: &Selected) -> CliResult<&subexp_core::ModelSpec> {
    sel.model.as_ref().ok_or_else(|| {
        CliError::Model(subexp_core::Error::InvalidParameters(
            "the spectrum document lists no weights, so exact counting is unavailable".into(),
        ))
    })
}

fn warn_if_large(order: usize) {
    if order > LARGE_ORDER {
        eprintln!("warning: exact counting to N={order} is quadratic in N and may be slow");
    }
}

pub fn exact(out: &mut dyn Write, sel: &Selected, order: usize, oracle: bool) -> CliResult<()> {
    let model = counting_model(sel)?;
    warn_if_large(order);
    let series = exact_coefficients(model, order)?;
    if oracle {
        let (name, check) = if model.kind == ModelKind::Standard {
            ("pentagonal", pentagonal_oracle(order))
        } else {
            ("product", product_dp(model, order)?)
        };
        if check.coeffs != series.coeffs {
            let first = (0..=order).find(|&n| check.display(n) != series.display(n)).unwrap_or(0);
            return Err(CliError::Verify(format!(
                "{name} oracle disagrees at n={first}: {} vs {}",
                check.display(first),
                series.display(first)
            )));
        }
        eprintln!("{name} oracle agrees for n=0..{order}");
    }
    for n in 0..=order {
        writeln!(out, "{n} {}", series.display(n))?;
    }
    Ok(())
}

struct Row {
    n: u64,
    exact: Option<RealHP>,
    khintchine: RealHP,
    explicit: RealHP,
}

fn compare_row(
    sd: &SpectralData,
    f: &ExplicitFormula,
    series: Option<&ExactSeries>,
    n: u64,
) -> CliResult<Row> {
    let exact = match series {
        Some(s) => Some(s.log_coeff(n as usize)?),
        None => None,
    };
    Ok(Row {
        n,
        exact,
        khintchine: log_estimate_khintchine(sd, n)?.log_value,
        explicit: f.log_estimate(n)?.log_value,
    })
}

pub fn compare(
    out: &mut dyn Write,
    sel: &Selected,
    order: Option<usize>,
    points: &[u64],
    log10: bool,
) -> CliResult<()> {
    if points.first() == Some(&0) {
        return Err(CliError::Usage("grid points must be positive".into()));
    }
    let max_point = points.last().copied().unwrap_or(0) as usize;
    let order = order.unwrap_or(max_point);
    if order < max_point {
        return Err(CliError::Usage(format!(
            "--N {order} is below the largest grid point {max_point}"
        )));
    }
    let series = match &sel.model {
        Some(model) if !points.is_empty() => {
            warn_if_large(order);
            Some(exact_coefficients(model, order)?)
        }
        _ => None,
    };
    let sd = &sel.spectrum;
    let formula = ExplicitFormula::new(sd)?;
    let rows: Vec<Row> = points
        .par_iter()
        .map(|&n| compare_row(sd, &formula, series.as_ref(), n))
        .collect::<CliResult<_>>()?;

    let scale = if log10 { ln10().recip() } else { RealHP::one() };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        let logs = [&row.khintchine, &row.explicit].map(|x| real(&(x * &scale)));
        let (exact, ratios) = match &row.exact {
            Some(e) => (
                real(&(e * &scale)),
                [&row.khintchine, &row.explicit].map(|p| real(&(e - p).exp())),
            ),
            None => (String::new(), [String::new(), String::new()]),
        };
        w.write_record([&row.n.to_string(), &exact, &logs[0], &logs[1], &ratios[0], &ratios[1]])?;
    }
    w.flush()?;
    Ok(())
}
