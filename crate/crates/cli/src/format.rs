use subexp_core::RealHP;

pub const SIG_DIGITS: usize = 15;

/// `%.{digits}g`-style formatting: fixed notation for moderate exponents,
/// scientific otherwise, trailing zeros dropped.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn real(x: &RealHP) -> String {
    sig(x.to_f64(), SIG_DIGITS)
}

pub fn reals(xs: &[RealHP]) -> String {
    let parts: Vec<String> = xs.iter().map(real).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(sig(19.110225911795245, 15), "19.1102259117952");
        assert_eq!(sig(-0.5, 15), "-0.5");
        assert_eq!(sig(1.0, 15), "1");
        assert_eq!(sig(190569292.0, 15), "190569292");
        assert_eq!(sig(6.613756613756614e-5, 15), "6.61375661375661e-5");
        assert_eq!(sig(1e20, 15), "1e20");
        assert_eq!(sig(0.0001234, 3), "0.000123");
        assert_eq!(sig(9.99999999999999999, 15), "10");
    }

    #[test]
    fn round_trips_at_fifteen_digits() {
        for x in [std::f64::consts::PI, -1.2497808206055746, 254.62059271509, 3.3e-7] {
            let back: f64 = sig(x, 15).parse().unwrap();
            assert_eq!(sig(back, 15), sig(x, 15));
            assert!((back / x - 1.0).abs() < 1e-14);
        }
    }
}
