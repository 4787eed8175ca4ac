//! Values computed independently with mpmath at 40 digits.

use subexp_core::specfun::{euler_gamma, hurwitz_zeta_deriv0, log_glaisher, riemann_zeta};
use subexp_core::{
    derive_spectrum, khintchine_lhs, log_estimate_explicit, log_estimate_khintchine, make_preset,
    remainder_delta, solve_delta, to_decimal, ModelKind, RealHP, SpectralData,
};

fn spectrum(kind: ModelKind) -> SpectralData {
    derive_spectrum(&make_preset(kind).unwrap(), 8).unwrap()
}

fn near(got: &RealHP, want: &str, tol: f64) {
    let want = RealHP::parse(want).unwrap();
    let err = (got - &want).abs().to_f64();
    assert!(err <= tol, "got {got}, want {want}, err {err:e}");
}

#[test]
fn constants() {
    near(&euler_gamma(), "0.57721566490153286060651209008240243104", 1e-36);
    near(&log_glaisher(), "0.24875447703378426254725299357611397610", 1e-36);
    near(&riemann_zeta(3.0).unwrap(), "1.2020569031595942853997381615114499908", 1e-35);
    near(&hurwitz_zeta_deriv0(RealHP::ratio(1, 3)).unwrap(), "0.066482113723094327", 1e-17);
}

#[test]
fn spectra() {
    let st = spectrum(ModelKind::Standard);
    near(&st.h0, "-0.91893853320467274178", 1e-19);
    near(&st.d_neg[0], "0.041666666666666666667", 1e-19);

    let roots = spectrum(ModelKind::Roots);
    near(&roots.h0, "-1.2497808206055746", 1e-15);
    near(&roots.d_neg[1], "-0.0013888888888888888889", 1e-19);
    near(&roots.d_neg[3], "-0.000066137566137566137566", 1e-19);

    let odd = spectrum(ModelKind::Congruent { modulus: 2, residue: 1 });
    assert!(odd.a0.is_zero() || odd.a0.abs().to_f64() < 1e-30);
    near(&odd.h0, "-0.34657359027997265471", 1e-19);
    near(&odd.d_neg[0], "-0.041666666666666666667", 1e-19);
}

#[test]
fn khintchine_lhs_at_one() {
    near(
        &khintchine_lhs(&spectrum(ModelKind::Standard), &RealHP::one()),
        "1.186600733514893",
        1e-14,
    );
    near(&khintchine_lhs(&spectrum(ModelKind::Roots), &RealHP::one()), "5.828161679486603", 1e-14);
}

#[test]
fn deltas() {
    let st = spectrum(ModelKind::Standard);
    near(&solve_delta(&st, 100).unwrap().delta, "0.12580504750128083", 1e-15);
    near(&solve_delta(&st, 1000).unwrap().delta, "0.0403093918693266", 1e-14);
    let roots = spectrum(ModelKind::Roots);
    near(&solve_delta(&roots, 100).unwrap().delta, "0.37645878454529", 1e-12);
    near(&solve_delta(&roots, 1000).unwrap().delta, "0.17180738559360", 1e-12);
}

#[test]
fn remainder() {
    let st = spectrum(ModelKind::Standard);
    let r = remainder_delta(&st, &RealHP::from_f64(0.1), 1e-40).unwrap();
    near(&r.value, "-0.0041666666666666666667", 1e-18);
}

#[test]
fn log_estimates() {
    let st = spectrum(ModelKind::Standard);
    near(&log_estimate_khintchine(&st, 100).unwrap().log_value, "19.0711813137748685", 1e-12);
    near(&log_estimate_explicit(&st, 100).unwrap().log_value, "19.1102259117952451", 1e-12);
    near(&log_estimate_khintchine(&st, 1000).unwrap().log_value, "72.2597822381103794", 1e-12);
    near(&log_estimate_explicit(&st, 1000).unwrap().log_value, "72.2722177350361554", 1e-12);

    let roots = spectrum(ModelKind::Roots);
    near(&log_estimate_khintchine(&roots, 1000).unwrap().log_value, "254.62059271509", 1e-9);
    near(&log_estimate_explicit(&roots, 1000).unwrap().log_value, "254.57878839152", 1e-9);

    let odd = spectrum(ModelKind::Congruent { modulus: 2, residue: 1 });
    near(&log_estimate_khintchine(&odd, 100).unwrap().log_value, "13.026634", 1e-5);
    near(&log_estimate_explicit(&odd, 100).unwrap().log_value, "13.023169", 1e-5);
}

#[test]
fn decimal_form_of_standard_prediction() {
    let le = log_estimate_explicit(&spectrum(ModelKind::Standard), 100).unwrap();
    let (m, e) = to_decimal(&le);
    assert_eq!(e, 8);
    // exp(19.1102259117952451) = 1.99...e8
    let expected = (19.110225911795245f64 - 8.0 * std::f64::consts::LN_10).exp();
    assert!((m - expected).abs() < 1e-9);
}
