//! Scalar abstraction shared by every kernel in the crate.
//!
//! The same formulas run in two modes: `f64` for fast numerics and
//! `BigRational` for exact certification. The only operations that genuinely
//! differ between the modes are gamma-function ratios (log-space with sign
//! tracking vs. Pochhammer reduction) and square roots, so those live behind
//! trait methods while everything else is plain field arithmetic.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use crate::error::{KernelError, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Field scalar with the few mode-specific escape hatches the kernels need.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True in exact rational mode.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// `self - other` when that difference is an integer, else `None`.
    /// Float mode accepts differences within 1e-9 of an integer.
    fn integer_offset(&self, other: &Self) -> Option<i64>;

    /// Exact integer value of the scalar, when it is one.
    fn as_integer(&self) -> Option<i64>;

    /// Γ(num₀)⋯Γ(numₖ) / (Γ(den₀)⋯Γ(denₖ)).
    ///
    /// Float mode sums log-gammas with sign tracking. Rational mode pairs
    /// numerator and denominator arguments differing by integers and reduces
    /// each pair to a Pochhammer product; anything unpairable is an
    /// `IrreducibleRatio`.
    fn gamma_ratio(num: &[Self], den: &[Self]) -> Result<Self>;

    /// Lossy f64 view for reports and float post-processing.
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn integer_offset(&self, other: &Self) -> Option<i64> {
        let diff = self - other;
        let nearest = diff.round();
        if (diff - nearest).abs() <= 1e-9 && nearest.abs() < 9e15 {
            Some(nearest as i64)
        } else {
            None
        }
    }

    fn as_integer(&self) -> Option<i64> {
        self.integer_offset(&0.0)
    }

    fn gamma_ratio(num: &[Self], den: &[Self]) -> Result<Self> {
        let mut log = 0.0;
        let mut sign = 1.0;
        for &x in num {
            let (l, s) = ln_abs_gamma(x)?;
            log += l;
            sign *= s;
        }
        for &x in den {
            let (l, s) = ln_abs_gamma(x)?;
            log -= l;
            sign *= s;
        }
        Ok(sign * log.exp())
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// ln |Γ(x)| together with the sign of Γ(x).
///
/// Arguments on the negative axis go through the reflection formula
/// Γ(x) Γ(1−x) = π / sin(πx); non-positive integers are poles.
pub fn ln_abs_gamma(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        Ok((statrs::function::gamma::ln_gamma(x), 1.0))
    } else if x == x.floor() {
        Err(KernelError::Pole(format!("{x}")))
    } else {
        let s = (std::f64::consts::PI * x).sin();
        let l = (std::f64::consts::PI / s.abs()).ln() - statrs::function::gamma::ln_gamma(1.0 - x);
        Ok((l, s.signum()))
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as num_traits::One>::one()
    }
    fn from_int(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn integer_offset(&self, other: &Self) -> Option<i64> {
        let diff = self - other;
        if diff.is_integer() {
            diff.to_integer().to_i64()
        } else {
            None
        }
    }

    fn as_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn gamma_ratio(num: &[Self], den: &[Self]) -> Result<Self> {
        if num.len() != den.len() {
            return Err(KernelError::IrreducibleRatio(format!(
                "{} gamma factors over {}",
                num.len(),
                den.len()
            )));
        }
        let mut remaining: Vec<Option<&Rat>> = den.iter().map(Some).collect();
        let mut acc = <Rat as num_traits::One>::one();
        for u in num {
            let mut matched = false;
            for slot in remaining.iter_mut() {
                let Some(v) = *slot else { continue };
                let Some(shift) = u.integer_offset(v) else {
                    continue;
                };
                acc *= gamma_shift_ratio(v, shift)?;
                *slot = None;
                matched = true;
                break;
            }
            if !matched {
                return Err(KernelError::IrreducibleRatio(format!(
                    "no denominator argument an integer away from {u}"
                )));
            }
        }
        Ok(acc)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            let n = ToPrimitive::to_f64(self.numer()).unwrap_or(f64::NAN);
            let d = ToPrimitive::to_f64(self.denom()).unwrap_or(f64::NAN);
            n / d
        })
    }
}

/// Γ(v + shift) / Γ(v) as a rational: (v)_shift for shift ≥ 0, else 1/(v+shift)_{-shift}.
///
/// Products crossing zero are kept literal, so ratios of gammas at negative
/// integers take their limiting values (they appear in the truncated Racah
/// weights); a zero in a denominator position is a genuine pole.
fn gamma_shift_ratio(v: &Rat, shift: i64) -> Result<Rat> {
    let one = <Rat as num_traits::One>::one();
    let step = <Rat as Scalar>::from_int(1);
    if shift >= 0 {
        let mut acc = one;
        let mut f = v.clone();
        for _ in 0..shift {
            acc *= &f;
            f += &step;
        }
        Ok(acc)
    } else {
        let mut acc = one.clone();
        let mut f = v + <Rat as Scalar>::from_int(shift);
        for _ in 0..(-shift) {
            acc *= &f;
            f += &step;
        }
        if Zero::is_zero(&acc) {
            return Err(KernelError::Pole(format!("gamma ratio at {v} with shift {shift}")));
        }
        Ok(one / acc)
    }
}

/// Convenience constructor for exact rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "p/q" or a plain integer string into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if Zero::is_zero(&q) {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Render an exact rational as "p/q" (or "p" for integers).
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Closest f64-backed rational, for routing decimal CLI input into exact code
/// paths that only need a handful of digits.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_f64(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_offset_detects_shifts() {
        let a = rat(7, 3);
        let b = rat(1, 3);
        assert_eq!(a.integer_offset(&b), Some(2));
        assert_eq!(b.integer_offset(&a), Some(-2));
        assert_eq!(a.integer_offset(&rat(1, 2)), None);

        assert_eq!(2.5f64.integer_offset(&0.5), Some(2));
        assert_eq!(2.5f64.integer_offset(&0.25), None);
    }

    #[test]
    fn gamma_ratio_float_matches_known_value() {
        // Γ(2.5)/Γ(1.5) = 1.5
        let r = <f64 as Scalar>::gamma_ratio(&[2.5], &[1.5]).unwrap();
        assert!((r - 1.5).abs() < 1e-13);
    }

    #[test]
    fn gamma_ratio_rational_reduces_pochhammers() {
        // Γ(x+3)/Γ(x) = x(x+1)(x+2) at x = 1/2: 1/2 · 3/2 · 5/2 = 15/8
        let r = <Rat as Scalar>::gamma_ratio(&[rat(7, 2)], &[rat(1, 2)]).unwrap();
        assert_eq!(r, rat(15, 8));
        // inverse direction
        let r = <Rat as Scalar>::gamma_ratio(&[rat(1, 2)], &[rat(7, 2)]).unwrap();
        assert_eq!(r, rat(8, 15));
    }

    #[test]
    fn gamma_ratio_rational_rejects_fractional_shift() {
        let e = <Rat as Scalar>::gamma_ratio(&[rat(1, 2)], &[rat(1, 3)]);
        assert!(matches!(e, Err(KernelError::IrreducibleRatio(_))));
    }

    #[test]
    fn gamma_ratio_multi_argument_pairing() {
        // Γ(x+2)Γ(y+1) / (Γ(y)Γ(x)) = x(x+1)·y, x = 1/3, y = 5/7
        let x = rat(1, 3);
        let y = rat(5, 7);
        let num = [&x + rat(2, 1), &y + rat(1, 1)];
        let den = [y.clone(), x.clone()];
        let r = <Rat as Scalar>::gamma_ratio(&num, &den).unwrap();
        assert_eq!(r, rat(1, 3) * rat(4, 3) * rat(5, 7));
    }

    #[test]
    fn float_gamma_ratio_handles_negative_arguments() {
        // Γ(-1/2) = -2√π, Γ(1/2) = √π, ratio = -2.
        let r = <f64 as Scalar>::gamma_ratio(&[-0.5], &[0.5]).unwrap();
        assert!((r + 2.0).abs() < 1e-12);
        assert!(matches!(
            <f64 as Scalar>::gamma_ratio(&[-1.0], &[0.5]),
            Err(KernelError::Pole(_))
        ));
    }

    #[test]
    fn parse_and_format_round_trip() {
        assert_eq!(parse_rat("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rat("-5"), Some(rat(-5, 1)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(format_rat(&rat(-3, 9)), "-1/3");
        assert_eq!(format_rat(&rat(8, 2)), "4");
    }
}
