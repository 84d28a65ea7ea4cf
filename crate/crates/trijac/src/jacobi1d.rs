//! Univariate Jacobi polynomials on [0, 1] with weight xᵃ(1−x)ᵇ.
//!
//! Normalization:
//!
//!   J_n(x) = ((a+1)_n / n!) · ₂F₁(−n, n+a+b+1; a+1; x)
//!
//! so the leading coefficient is (−1)ⁿ (n+a+b+1)_n / n! and
//!
//!   ∫₀¹ J_m J_n xᵃ(1−x)ᵇ dx = δ_{mn} · Γ(n+a+1)Γ(n+b+1) / ((2n+a+b+1) n! Γ(n+a+b+1)).

use crate::diffop::PolyDiffOp;
use crate::error::{KernelError, Result};
use crate::hyper::{factorial, gamma_ratio, hyp_terminating, pochhammer};
use crate::poly::BivarPoly;
use crate::scalar::Scalar;

/// J_n^{(a,b)}(x).
pub fn eval<S: Scalar>(n: u32, a: &S, b: &S, x: &S) -> Result<S> {
    let lead = pochhammer(&(a.clone() + S::one()), n) / factorial::<S>(n);
    let upper = [
        S::from_int(-i64::from(n)),
        S::from_int(i64::from(n) + 1) + a.clone() + b.clone(),
    ];
    let lower = [a.clone() + S::one()];
    Ok(lead * hyp_terminating(&upper, &lower, x, n + 1)?)
}

/// J_n^{(a,b)} materialized as a polynomial in x (the y slot stays unused).
pub fn poly<S: Scalar>(n: u32, a: &S, b: &S) -> Result<BivarPoly<S>> {
    let mut coeff = pochhammer(&(a.clone() + S::one()), n) / factorial::<S>(n);
    let mut out = BivarPoly::zero();
    for j in 0..=n {
        out.add_term(j, 0, coeff.clone());
        if j == n {
            break;
        }
        let jf = S::from_int(i64::from(j));
        let num = (S::from_int(-i64::from(n)) + jf.clone())
            * (S::from_int(i64::from(n) + 1) + a.clone() + b.clone() + jf.clone());
        let den = (a.clone() + S::one() + jf.clone()) * (jf + S::one());
        if den.is_zero() {
            return Err(KernelError::DegenerateLowerParameter {
                param: format!("{a} + 1"),
                term: j as usize + 1,
            });
        }
        coeff = coeff * num / den;
    }
    Ok(out)
}

/// Squared L² norm N_n = Γ(n+a+1)Γ(n+b+1) / ((2n+a+b+1) n! Γ(n+a+b+1)).
///
/// In rational mode this only succeeds when the gamma arguments pair up by
/// integer shifts (e.g. integer a, b); use [`norm_ratio`] for exact work with
/// generic rational parameters.
pub fn norm<S: Scalar>(n: u32, a: &S, b: &S) -> Result<S> {
    let nf = S::from_int(i64::from(n));
    let num = [
        nf.clone() + a.clone() + S::one(),
        nf.clone() + b.clone() + S::one(),
    ];
    let den = [
        nf.clone() + a.clone() + b.clone() + S::one(),
        nf.clone() + S::one(),
    ];
    let g = gamma_ratio(&num, &den)?;
    let front = S::from_int(2 * i64::from(n) + 1) + a.clone() + b.clone();
    if front.is_zero() {
        return Err(KernelError::DegenerateDenominator(format!(
            "2·{n} + a + b + 1 with a = {a}, b = {b}"
        )));
    }
    Ok(g / front)
}

/// N_n / N_m, exact for any rational a, b: every gamma factor pairs with one
/// shifted by the integer n − m.
pub fn norm_ratio<S: Scalar>(n: u32, m: u32, a: &S, b: &S) -> Result<S> {
    let nf = S::from_int(i64::from(n));
    let mf = S::from_int(i64::from(m));
    let num = [
        nf.clone() + a.clone() + S::one(),
        nf.clone() + b.clone() + S::one(),
        mf.clone() + a.clone() + b.clone() + S::one(),
        mf.clone() + S::one(),
    ];
    let den = [
        mf.clone() + a.clone() + S::one(),
        mf.clone() + b.clone() + S::one(),
        nf.clone() + a.clone() + b.clone() + S::one(),
        nf.clone() + S::one(),
    ];
    let g = gamma_ratio(&num, &den)?;
    let dn = S::from_int(2 * i64::from(n) + 1) + a.clone() + b.clone();
    let dm = S::from_int(2 * i64::from(m) + 1) + a.clone() + b.clone();
    if dn.is_zero() {
        return Err(KernelError::DegenerateDenominator(format!(
            "2·{n} + a + b + 1 with a = {a}, b = {b}"
        )));
    }
    Ok(g * dm / dn)
}

/// The hypergeometric operator x(1−x)∂ₓ² + (a+1−(a+b+2)x)∂ₓ, which has the
/// J_n as eigenfunctions with eigenvalues −n(n+a+b+1).
pub fn diffop<S: Scalar>(a: &S, b: &S) -> PolyDiffOp<S> {
    let x = BivarPoly::x();
    let second = &x * &(BivarPoly::one() - x.clone());
    let first = BivarPoly::constant(a.clone() + S::one())
        - x.scale(&(a.clone() + b.clone() + S::from_int(2)));
    let mut op = PolyDiffOp::zero();
    op.add_term(2, 0, second);
    op.add_term(1, 0, first);
    op
}

/// Eigenvalue −n(n+a+b+1) of [`diffop`] on J_n.
pub fn eigenvalue<S: Scalar>(n: u32, a: &S, b: &S) -> S {
    let nf = S::from_int(i64::from(n));
    -(nf.clone() * (nf + a.clone() + b.clone() + S::one()))
}

/// Coefficients of (1−2x) J_n = c₊ J_{n+1} + c₀ J_n + c₋ J_{n−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCoeffs<S> {
    pub c_plus: S,
    pub c_zero: S,
    pub c_minus: S,
}

pub fn recurrence<S: Scalar>(n: u32, a: &S, b: &S) -> Result<RecurrenceCoeffs<S>> {
    let nf = S::from_int(i64::from(n));
    let s = a.clone() + b.clone();
    let two_n_s = S::from_int(2 * i64::from(n)) + s.clone();
    let d0 = two_n_s.clone();
    let d1 = two_n_s.clone() + S::one();
    let d2 = two_n_s + S::from_int(2);
    for d in [&d0, &d1, &d2] {
        if d.is_zero() {
            return Err(KernelError::DegenerateDenominator(format!(
                "2·{n} + a + b + j with a = {a}, b = {b}"
            )));
        }
    }
    let c_plus = S::from_int(2)
        * (nf.clone() + S::one())
        * (nf.clone() + s.clone() + S::one())
        / (d1.clone() * d2.clone());
    let c_zero = -((a.clone() - b.clone()) * s / (d0.clone() * d2));
    let c_minus = S::from_int(2) * (nf.clone() + a.clone()) * (nf + b.clone()) / (d0 * d1);
    Ok(RecurrenceCoeffs { c_plus, c_zero, c_minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rat> {
        // parameters in (-1, 5) with denominator ≤ 13
        (1i64..=13, -12i64..=60).prop_filter_map("in range", |(q, p)| {
            let r = rat(p, q);
            let v = Scalar::to_f64(&r);
            (v > -0.99 && v < 5.0).then_some(r)
        })
    }

    #[test]
    fn degree_one_closed_form() {
        // J₁ = (a+1) − (a+b+2)x
        let (a, b) = (rat(1, 3), rat(3, 4));
        let p = poly(1, &a, &b).unwrap();
        assert_eq!(p.coeff(0, 0), &a + rat(1, 1));
        assert_eq!(p.coeff(1, 0), -(&a + &b + rat(2, 1)));
    }

    #[test]
    fn poly_and_eval_agree() {
        let (a, b) = (rat(2, 5), rat(-1, 3));
        for n in 0..=7 {
            let p = poly(n, &a, &b).unwrap();
            for x in [rat(0, 1), rat(1, 4), rat(9, 10), rat(1, 1)] {
                assert_eq!(p.eval(&x, &rat(0, 1)), eval(n, &a, &b, &x).unwrap());
            }
        }
    }

    #[test]
    fn leading_coefficient_closed_form() {
        let (a, b) = (rat(5, 7), rat(11, 6));
        for n in 0..=8u32 {
            let p = poly(n, &a, &b).unwrap();
            let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let expect = sign
                * pochhammer(&(rat(i64::from(n) + 1, 1) + &a + &b), n)
                / factorial::<Rat>(n);
            assert_eq!(p.coeff(n, 0), expect);
        }
    }

    #[test]
    fn legendre_norms_are_exact() {
        // a = b = 0: N_n = 1/(2n+1)
        for n in 0..6u32 {
            let v: Rat = norm(n, &rat(0, 1), &rat(0, 1)).unwrap();
            assert_eq!(v, rat(1, 2 * i64::from(n) + 1));
        }
    }

    #[test]
    fn float_norm_matches_beta_value() {
        // N₀ = B(a+1, b+1); at a = 1/2, b = 3/2: B(3/2, 5/2) = π/16
        let v: f64 = norm(0, &0.5, &1.5).unwrap();
        assert!((v - std::f64::consts::PI / 16.0).abs() < 1e-14);
    }

    #[test]
    fn norm_ratio_is_exact_for_generic_rationals() {
        let (a, b) = (rat(1, 2), rat(2, 3));
        // From N_n = Γ(n+a+1)Γ(n+b+1)/((2n+a+b+1) n! Γ(n+a+b+1)):
        //   N₁/N₀ = (a+1)(b+1) · (a+b+1)/(a+b+3) / (a+b+1) = (a+1)(b+1)/(a+b+3)
        let expect =
            (&a + rat(1, 1)) * (&b + rat(1, 1)) / (&a + &b + rat(3, 1));
        let got: Rat = norm_ratio(1, 0, &a, &b).unwrap();
        assert_eq!(got, expect);
        // and the float mode agrees
        let gf: f64 = norm_ratio(1, 0, &0.5, &(2.0 / 3.0)).unwrap();
        assert!((gf - Scalar::to_f64(&got)).abs() < 1e-13);
    }

    #[test]
    fn rational_norm_with_generic_parameters_is_irreducible() {
        let e: Result<Rat> = norm(2, &rat(1, 2), &rat(1, 3));
        assert!(matches!(e, Err(KernelError::IrreducibleRatio(_))));
    }

    #[test]
    fn differential_equation_exact() {
        let (a, b) = (rat(4, 5), rat(-2, 7));
        let h = diffop(&a, &b);
        for n in 0..=8 {
            let p = poly(n, &a, &b).unwrap();
            let lhs = h.apply(&p);
            let rhs = p.scale(&eigenvalue(n, &a, &b));
            assert!((&lhs - &rhs).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn recurrence_frozen_coefficient() {
        // n = 1, a = 1, b = 0: c₀ = −1/15
        let c = recurrence(1, &rat(1, 1), &rat(0, 1)).unwrap();
        assert_eq!(c.c_zero, rat(-1, 15));
    }

    #[test]
    fn recurrence_degenerate_denominator() {
        let e = recurrence(0, &rat(1, 2), &rat(-1, 2));
        assert!(matches!(e, Err(KernelError::DegenerateDenominator(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn three_term_recurrence_exact(a in small_rat(), b in small_rat(), n in 1u32..=6) {
            let c = recurrence(n, &a, &b).unwrap();
            let lhs_factor = BivarPoly::<Rat>::one()
                - BivarPoly::x().scale(&rat(2, 1));
            let lhs = &lhs_factor * &poly(n, &a, &b).unwrap();
            let rhs = &(&poly(n + 1, &a, &b).unwrap().scale(&c.c_plus)
                + &poly(n, &a, &b).unwrap().scale(&c.c_zero))
                + &poly(n - 1, &a, &b).unwrap().scale(&c.c_minus);
            prop_assert!((&lhs - &rhs).is_zero());
        }

        #[test]
        fn reflection_swaps_parameters(a in small_rat(), b in small_rat(), n in 0u32..=6) {
            // J_n^{(a,b)}(1−x) = (−1)ⁿ J_n^{(b,a)}(x)
            let p = poly(n, &a, &b).unwrap();
            let reflected = p.subst(&(BivarPoly::one() - BivarPoly::x()), &BivarPoly::y());
            let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let q = poly(n, &b, &a).unwrap().scale(&sign);
            prop_assert!((&reflected - &q).is_zero());
        }
    }
}
