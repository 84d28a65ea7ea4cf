//! Terminating hypergeometric sums and Pochhammer products.
//!
//! Every special function in this crate reduces to a terminating series
//!
//!   ₚF_q(a₁,…,aₚ; b₁,…,b_q; x) = Σ_j (a₁)_j ⋯ (aₚ)_j / ((b₁)_j ⋯ (b_q)_j) · xʲ / j!
//!
//! summed over a fixed number of terms. Terms are accumulated by the forward
//! ratio term_{j+1} = term_j · Π(aᵢ+j) / Π(bᵢ+j) · x/(j+1), which is exact in
//! rational mode and avoids recomputing Pochhammer products at every order.

use crate::error::{KernelError, Result};
use crate::scalar::Scalar;

/// Rising factorial (x)_n = x (x+1) ⋯ (x+n−1); empty product for n = 0.
pub fn pochhammer<S: Scalar>(x: &S, n: u32) -> S {
    let mut acc = S::one();
    let mut f = x.clone();
    for _ in 0..n {
        acc = acc * f.clone();
        f = f + S::one();
    }
    acc
}

/// n! in the scalar type.
pub fn factorial<S: Scalar>(n: u32) -> S {
    let mut acc = S::one();
    for j in 2..=n {
        acc = acc * S::from_int(i64::from(j));
    }
    acc
}

/// Terminating hypergeometric sum with `terms` terms (j = 0, …, terms−1).
///
/// Callers arrange termination through an upper parameter −n and
/// `terms = n + 1`; the sum is simply cut at `terms` regardless. A lower
/// parameter hitting zero before the series terminates is reported as
/// `DegenerateLowerParameter`.
pub fn hyp_terminating<S: Scalar>(upper: &[S], lower: &[S], arg: &S, terms: u32) -> Result<S> {
    if terms == 0 {
        return Ok(S::zero());
    }
    let mut sum = S::one();
    let mut term = S::one();
    for j in 0..terms.saturating_sub(1) {
        let jf = S::from_int(i64::from(j));
        for u in upper {
            term = term * (u.clone() + jf.clone());
        }
        if term.is_zero() {
            // Series terminated early; later lower-parameter zeros are outside
            // the effective summation range.
            break;
        }
        for l in lower {
            let d = l.clone() + jf.clone();
            if d.is_zero() {
                return Err(KernelError::DegenerateLowerParameter {
                    param: format!("{l}"),
                    term: j as usize,
                });
            }
            term = term / d;
        }
        term = term * arg.clone() / S::from_int(i64::from(j) + 1);
        sum = sum + term.clone();
    }
    Ok(sum)
}

/// Γ-product ratio; see [`Scalar::gamma_ratio`].
pub fn gamma_ratio<S: Scalar>(num: &[S], den: &[S]) -> Result<S> {
    S::gamma_ratio(num, den)
}
