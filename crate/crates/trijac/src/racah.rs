//! Racah polynomials R_n(λ(ℓ)) on the finite lattice ℓ ∈ {0, …, N}.
//!
//! R_n(λ(ℓ)) = ₄F₃(−n, n+α+β+1, −ℓ, ℓ+γ+δ+1; α+1, β+δ+1, γ+1; 1) with
//! λ(ℓ) = ℓ(ℓ+γ+δ+1). Exactly one of α+1, β+δ+1, γ+1 must equal −N; which
//! one decides the normalization constant in the discrete weight.

use crate::error::{KernelError, Result};
use crate::hyper::{factorial, hyp_terminating, pochhammer};
use crate::scalar::Scalar;

/// Which lower parameter carries the lattice truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationCase {
    /// α + 1 = −N
    Alpha,
    /// β + δ + 1 = −N
    BetaDelta,
    /// γ + 1 = −N
    Gamma,
}

/// Structure constants of the quadratic algebra generated by the Racah
/// recurrence and difference operators.
#[derive(Clone, Debug, PartialEq)]
pub struct RactConstants<S> {
    pub xi: S,
    pub eta1: S,
    pub eta2: S,
    pub zeta1: S,
    pub zeta2: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RacahParams<S> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
    pub delta: S,
    /// Lattice size parameter: valid degrees and points are 0..=trunc.
    pub trunc: u32,
    pub case: TruncationCase,
}

fn neg_integer_level<S: Scalar>(v: &S) -> Option<u32> {
    v.as_integer().and_then(|i| (i <= 0).then(|| (-i) as u32))
}

fn prod<S: Scalar>(factors: &[S]) -> S {
    factors
        .iter()
        .fold(S::one(), |acc, f| acc * f.clone())
}

impl<S: Scalar> RacahParams<S> {
    /// Classifies the truncation condition. Rejects parameter sets where
    /// none or more than one of the three lower parameters is −N.
    pub fn new(alpha: S, beta: S, gamma: S, delta: S) -> Result<Self> {
        let candidates = [
            (
                TruncationCase::Alpha,
                neg_integer_level(&(alpha.clone() + S::one())),
            ),
            (
                TruncationCase::BetaDelta,
                neg_integer_level(&(beta.clone() + delta.clone() + S::one())),
            ),
            (
                TruncationCase::Gamma,
                neg_integer_level(&(gamma.clone() + S::one())),
            ),
        ];
        let mut hits = candidates
            .iter()
            .filter_map(|(c, n)| n.map(|n| (*c, n)));
        let first = hits.next().ok_or_else(|| {
            KernelError::Domain(format!(
                "no truncation: none of alpha+1, beta+delta+1, gamma+1 is a \
                 nonpositive integer for alpha = {alpha}, beta = {beta}, \
                 gamma = {gamma}, delta = {delta}"
            ))
        })?;
        if let Some(second) = hits.next() {
            return Err(KernelError::Domain(format!(
                "ambiguous truncation: {:?} (N = {}) and {:?} (N = {}) both hold",
                first.0, first.1, second.0, second.1
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            trunc: first.1,
            case: first.0,
        })
    }

    /// Spectral variable λ(ℓ) = ℓ(ℓ + γ + δ + 1).
    pub fn lambda(&self, l: u32) -> S {
        let lf = S::from_int(i64::from(l));
        lf.clone() * (lf + self.gamma.clone() + self.delta.clone() + S::one())
    }

    /// R_n(λ(ℓ)).
    pub fn eval(&self, n: u32, l: u32) -> Result<S> {
        let upper = [
            S::from_int(-i64::from(n)),
            S::from_int(i64::from(n) + 1) + self.alpha.clone() + self.beta.clone(),
            S::from_int(-i64::from(l)),
            S::from_int(i64::from(l) + 1) + self.gamma.clone() + self.delta.clone(),
        ];
        let lower = [
            self.alpha.clone() + S::one(),
            self.beta.clone() + self.delta.clone() + S::one(),
            self.gamma.clone() + S::one(),
        ];
        hyp_terminating(&upper, &lower, &S::one(), n.min(l) + 1)
    }

    /// Discrete weight w(ℓ); vanishes for ℓ > N through (γ+1)-type factors.
    pub fn weight(&self, l: u32) -> Result<S> {
        let one = S::one();
        let gd = self.gamma.clone() + self.delta.clone();
        let lf = S::from_int(i64::from(l));
        let num = prod(&[
            pochhammer(&(self.alpha.clone() + one.clone()), l),
            pochhammer(&(self.beta.clone() + self.delta.clone() + one.clone()), l),
            pochhammer(&(self.gamma.clone() + one.clone()), l),
            pochhammer(&(gd.clone() + S::from_int(2)), 2 * l),
        ]);
        let den = prod(&[
            pochhammer(&(gd.clone() - self.alpha.clone() + one.clone()), l),
            pochhammer(&(self.gamma.clone() - self.beta.clone() + one.clone()), l),
            pochhammer(&(gd + lf + one), l),
            pochhammer(&(self.delta.clone() + S::one()), l),
            factorial::<S>(l),
        ]);
        if den.is_zero() {
            return Err(KernelError::DegenerateDenominator(format!(
                "weight denominator at l = {l}"
            )));
        }
        Ok(num / den)
    }

    /// Truncation-dependent constant relating the weight and the norms.
    pub fn k_constant(&self) -> Result<S> {
        let n = self.trunc;
        let one = S::one();
        let two = S::from_int(2);
        let gd2 = self.gamma.clone() + self.delta.clone() + two.clone();
        let (num, den) = match self.case {
            TruncationCase::Alpha => (
                [pochhammer(&(-self.beta.clone()), n), pochhammer(&gd2, n)],
                [
                    pochhammer(&(self.gamma.clone() - self.beta.clone() + one.clone()), n),
                    pochhammer(&(self.delta.clone() + one), n),
                ],
            ),
            TruncationCase::BetaDelta => (
                [
                    pochhammer(&(self.delta.clone() - self.alpha.clone()), n),
                    pochhammer(&gd2, n),
                ],
                [
                    pochhammer(
                        &(self.gamma.clone() + self.delta.clone() - self.alpha.clone()
                            + one.clone()),
                        n,
                    ),
                    pochhammer(&(self.delta.clone() + one), n),
                ],
            ),
            TruncationCase::Gamma => (
                [
                    pochhammer(&(self.alpha.clone() + self.beta.clone() + two), n),
                    pochhammer(&(-self.delta.clone()), n),
                ],
                [
                    pochhammer(&(self.alpha.clone() - self.delta.clone() + one.clone()), n),
                    pochhammer(&(self.beta.clone() + one), n),
                ],
            ),
        };
        let den = prod(&den);
        if den.is_zero() {
            return Err(KernelError::DegenerateDenominator(
                "normalization constant denominator".into(),
            ));
        }
        Ok(prod(&num) / den)
    }

    /// Squared norm M_n: Σ_ℓ w(ℓ) R_m(λ(ℓ)) R_n(λ(ℓ)) = δ_{mn} M_n.
    pub fn norm(&self, n: u32) -> Result<S> {
        let one = S::one();
        let nf = S::from_int(i64::from(n));
        let ab1 = self.alpha.clone() + self.beta.clone() + one.clone();
        let num = prod(&[
            pochhammer(&(nf.clone() + ab1.clone()), n),
            pochhammer(&(ab1.clone() - self.gamma.clone()), n),
            pochhammer(&(self.alpha.clone() - self.delta.clone() + one.clone()), n),
            pochhammer(&(self.beta.clone() + one.clone()), n),
            factorial::<S>(n),
        ]);
        let den = prod(&[
            pochhammer(&(ab1 + one.clone()), 2 * n),
            pochhammer(&(self.alpha.clone() + one.clone()), n),
            pochhammer(&(self.beta.clone() + self.delta.clone() + one.clone()), n),
            pochhammer(&(self.gamma.clone() + one), n),
        ]);
        if den.is_zero() {
            return Err(KernelError::DegenerateDenominator(format!(
                "norm denominator at n = {n}"
            )));
        }
        Ok(self.k_constant()? * num / den)
    }

    /// Coefficients (A_n, C_n) of
    /// λ(ℓ) R_n = A_n R_{n+1} − (A_n + C_n) R_n + C_n R_{n−1}.
    /// A_N = 0 and C_0 = 0, so the lattice truncation is respected exactly.
    pub fn recurrence(&self, n: u32) -> Result<(S, S)> {
        let one = S::one();
        let nf = S::from_int(i64::from(n));
        let ab = self.alpha.clone() + self.beta.clone();
        let d_a = (S::from_int(2 * i64::from(n) + 1) + ab.clone())
            * (S::from_int(2 * i64::from(n) + 2) + ab.clone());
        let d_c = (S::from_int(2 * i64::from(n)) + ab.clone())
            * (S::from_int(2 * i64::from(n) + 1) + ab.clone());
        if d_a.is_zero() || d_c.is_zero() {
            return Err(KernelError::DegenerateDenominator(format!(
                "recurrence denominator at n = {n}"
            )));
        }
        let a = prod(&[
            nf.clone() + self.alpha.clone() + one.clone(),
            nf.clone() + ab.clone() + one.clone(),
            nf.clone() + self.gamma.clone() + one.clone(),
            nf.clone() + self.beta.clone() + self.delta.clone() + one.clone(),
        ]) / d_a;
        let c = prod(&[
            nf.clone(),
            nf.clone() + self.beta.clone(),
            nf.clone() + self.alpha.clone() - self.delta.clone(),
            nf + ab - self.gamma.clone(),
        ]) / d_c;
        Ok((a, c))
    }

    /// Coefficients (B(ℓ), D(ℓ)) of the difference equation
    /// B(ℓ) R_n(λ(ℓ+1)) − (B(ℓ)+D(ℓ)) R_n(λ(ℓ)) + D(ℓ) R_n(λ(ℓ−1))
    ///   = n(n+α+β+1) R_n(λ(ℓ)).
    /// B(N) = 0 and D(0) = 0.
    pub fn difference(&self, l: u32) -> Result<(S, S)> {
        let one = S::one();
        let lf = S::from_int(i64::from(l));
        let gd = self.gamma.clone() + self.delta.clone();
        let d_b = (S::from_int(2 * i64::from(l) + 1) + gd.clone())
            * (S::from_int(2 * i64::from(l) + 2) + gd.clone());
        let d_d = (S::from_int(2 * i64::from(l)) + gd.clone())
            * (S::from_int(2 * i64::from(l) + 1) + gd.clone());
        if d_b.is_zero() || d_d.is_zero() {
            return Err(KernelError::DegenerateDenominator(format!(
                "difference denominator at l = {l}"
            )));
        }
        let b = prod(&[
            lf.clone() + self.alpha.clone() + one.clone(),
            lf.clone() + self.beta.clone() + self.delta.clone() + one.clone(),
            lf.clone() + self.gamma.clone() + one.clone(),
            lf.clone() + gd.clone() + one.clone(),
        ]) / d_b;
        let d = prod(&[
            lf.clone(),
            lf.clone() + gd.clone() - self.alpha.clone(),
            lf.clone() + self.gamma.clone() - self.beta.clone(),
            lf + self.delta.clone(),
        ]) / d_d;
        Ok((b, d))
    }

    /// Self-duality companion: swapping n ↔ ℓ is the same as swapping
    /// (α, β) ↔ (γ, δ).
    pub fn dual(&self) -> Self {
        let case = match self.case {
            TruncationCase::Alpha => TruncationCase::Gamma,
            TruncationCase::BetaDelta => TruncationCase::BetaDelta,
            TruncationCase::Gamma => TruncationCase::Alpha,
        };
        Self {
            alpha: self.gamma.clone(),
            beta: self.delta.clone(),
            gamma: self.alpha.clone(),
            delta: self.beta.clone(),
            trunc: self.trunc,
            case,
        }
    }

    /// Structure constants for the pair (difference operator, λ-multiplication).
    pub fn ract_constants(&self) -> RactConstants<S> {
        let one = S::one();
        let two = S::from_int(2);
        let a = &self.alpha;
        let b = &self.beta;
        let g = &self.gamma;
        let d = &self.delta;
        let ab = a.clone() + b.clone();
        let gd = g.clone() + d.clone();
        let xi = b.clone() * (d.clone() - g.clone() - two.clone())
            - a.clone() * (two.clone() * b.clone() + gd.clone() + two.clone())
            - two.clone() * (g.clone() + one.clone()) * (d.clone() + one.clone());
        let eta1 = -(ab.clone() * (ab.clone() + two.clone()));
        let eta2 = -(gd.clone() * (gd.clone() + two));
        let zeta1 = (a.clone() + one.clone())
            * ab
            * (b.clone() + d.clone() + one.clone())
            * (g.clone() + one.clone());
        let zeta2 = (a.clone() + one.clone())
            * (b.clone() + d.clone() + one.clone())
            * (g.clone() + one)
            * gd;
        RactConstants { xi, eta1, eta2, zeta1, zeta2 }
    }
}

impl RacahParams<f64> {
    /// Orthonormalized value √(w(ℓ)/M_n) · R_n(λ(ℓ)). The flag reports a
    /// negative weight-to-norm ratio (the square root is taken of |·|), which
    /// signals the parameters left the positive-definite regime.
    pub fn orthonormal(&self, n: u32, l: u32) -> Result<(f64, bool)> {
        let ratio = self.weight(l)? / self.norm(n)?;
        Ok((ratio.abs().sqrt() * self.eval(n, l)?, ratio < 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn gamma_case(n: u32) -> RacahParams<Rat> {
        RacahParams::new(rat(1, 2), rat(1, 3), rat(-(i64::from(n)) - 1, 1), rat(2, 7)).unwrap()
    }

    #[test]
    fn truncation_detection() {
        let p = gamma_case(3);
        assert_eq!(p.case, TruncationCase::Gamma);
        assert_eq!(p.trunc, 3);

        let p = RacahParams::new(rat(-4, 1), rat(1, 2), rat(1, 3), rat(1, 5)).unwrap();
        assert_eq!(p.case, TruncationCase::Alpha);
        assert_eq!(p.trunc, 3);

        let p = RacahParams::new(rat(1, 3), rat(1, 2), rat(1, 4), rat(-9, 2)).unwrap();
        assert_eq!(p.case, TruncationCase::BetaDelta);
        assert_eq!(p.trunc, 3);
    }

    #[test]
    fn truncation_rejects_none_and_ambiguous() {
        let none = RacahParams::new(rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7));
        assert!(matches!(none, Err(KernelError::Domain(_))));
        let ambiguous = RacahParams::new(rat(-3, 1), rat(1, 2), rat(-4, 1), rat(1, 5));
        assert!(matches!(ambiguous, Err(KernelError::Domain(_))));
    }

    #[test]
    fn value_is_one_on_the_boundary_row_and_column() {
        let p = gamma_case(4);
        for l in 0..=4 {
            assert_eq!(p.eval(0, l).unwrap(), rat(1, 1));
        }
        for n in 0..=4 {
            assert_eq!(p.eval(n, 0).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn series_matches_term_by_term_product_form() {
        // independent summation with explicit Pochhammer products
        let p = gamma_case(5);
        for n in 0..=5u32 {
            for l in 0..=5u32 {
                let mut direct = rat(0, 1);
                for j in 0..=n.min(l) {
                    let num = pochhammer(&rat(-i64::from(n), 1), j)
                        * pochhammer(&(rat(i64::from(n) + 1, 1) + &p.alpha + &p.beta), j)
                        * pochhammer(&rat(-i64::from(l), 1), j)
                        * pochhammer(&(rat(i64::from(l) + 1, 1) + &p.gamma + &p.delta), j);
                    let den = pochhammer(&(&p.alpha + rat(1, 1)), j)
                        * pochhammer(&(&p.beta + &p.delta + rat(1, 1)), j)
                        * pochhammer(&(&p.gamma + rat(1, 1)), j)
                        * factorial::<Rat>(j);
                    direct += num / den;
                }
                assert_eq!(p.eval(n, l).unwrap(), direct, "n = {n}, l = {l}");
            }
        }
    }

    fn check_orthogonality(p: &RacahParams<Rat>) {
        let nn = p.trunc;
        for m in 0..=nn {
            for n in m..=nn {
                let mut acc = rat(0, 1);
                for l in 0..=nn {
                    acc += p.weight(l).unwrap()
                        * p.eval(m, l).unwrap()
                        * p.eval(n, l).unwrap();
                }
                let expect = if m == n { p.norm(n).unwrap() } else { rat(0, 1) };
                assert_eq!(acc, expect, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn orthogonality_certificate_gamma_case() {
        check_orthogonality(&gamma_case(4));
    }

    #[test]
    fn orthogonality_certificate_alpha_case() {
        let p = RacahParams::new(rat(-4, 1), rat(1, 2), rat(1, 3), rat(1, 5)).unwrap();
        check_orthogonality(&p);
    }

    #[test]
    fn orthogonality_certificate_beta_delta_case() {
        let p = RacahParams::new(rat(1, 3), rat(1, 2), rat(1, 4), rat(-9, 2)).unwrap();
        check_orthogonality(&p);
    }

    #[test]
    fn self_duality() {
        let p = gamma_case(4);
        let q = p.dual();
        assert_eq!(q.case, TruncationCase::Alpha);
        assert_eq!(q.trunc, p.trunc);
        for n in 0..=4 {
            for l in 0..=4 {
                assert_eq!(p.eval(n, l).unwrap(), q.eval(l, n).unwrap());
            }
        }
        // the normalization constant is invariant under the swap, and the
        // dual weight at n is K / M_n
        assert_eq!(p.k_constant().unwrap(), q.k_constant().unwrap());
        let k = p.k_constant().unwrap();
        for n in 0..=4 {
            assert_eq!(q.weight(n).unwrap() * p.norm(n).unwrap(), k);
        }
    }

    #[test]
    fn recurrence_relation_exact_on_full_lattice() {
        let p = gamma_case(5);
        for n in 0..=5u32 {
            let (a, c) = p.recurrence(n).unwrap();
            if n == 0 {
                assert_eq!(c, rat(0, 1));
            }
            if n == 5 {
                assert_eq!(a, rat(0, 1));
            }
            for l in 0..=5u32 {
                let lhs = p.lambda(l) * p.eval(n, l).unwrap();
                let up = if n == 5 { rat(0, 1) } else { &a * p.eval(n + 1, l).unwrap() };
                let down = if n == 0 { rat(0, 1) } else { &c * p.eval(n - 1, l).unwrap() };
                let rhs = up - (&a + &c) * p.eval(n, l).unwrap() + down;
                assert_eq!(lhs, rhs, "n = {n}, l = {l}");
            }
        }
    }

    #[test]
    fn difference_relation_exact_on_full_lattice() {
        let p = RacahParams::new(rat(-6, 1), rat(3, 4), rat(2, 5), rat(1, 6)).unwrap();
        let nn = p.trunc;
        for l in 0..=nn {
            let (b, d) = p.difference(l).unwrap();
            if l == 0 {
                assert_eq!(d, rat(0, 1));
            }
            if l == nn {
                assert_eq!(b, rat(0, 1));
            }
            for n in 0..=nn {
                let nf = rat(i64::from(n), 1);
                let eig = &nf * (&nf + &p.alpha + &p.beta + rat(1, 1));
                let up = if l == nn { rat(0, 1) } else { &b * p.eval(n, l + 1).unwrap() };
                let down = if l == 0 { rat(0, 1) } else { &d * p.eval(n, l - 1).unwrap() };
                let lhs = up - (&b + &d) * p.eval(n, l).unwrap() + down;
                assert_eq!(lhs, eig * p.eval(n, l).unwrap(), "n = {n}, l = {l}");
            }
        }
    }

    #[test]
    fn orthonormal_rows_in_float_mode() {
        // a positive-definite set: the basis-change overlaps for the
        // triangle parameters (1/2, 1/3, 3/4) at total degree 5
        let p = RacahParams::new(1.0 / 3.0, 0.75, -6.0, 41.0 / 6.0).unwrap();
        assert_eq!(p.trunc, 5);
        for m in 0..=5u32 {
            for n in m..=5u32 {
                let mut acc = 0.0;
                for l in 0..=5 {
                    let (sm, neg_m) = p.orthonormal(m, l).unwrap();
                    let (sn, neg_n) = p.orthonormal(n, l).unwrap();
                    assert!(!neg_m && !neg_n);
                    acc += sm * sn;
                }
                let expect = if m == n { 1.0 } else { 0.0 };
                assert!((acc - expect).abs() < 1e-12, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn orthonormal_flags_indefinite_parameters() {
        // orthogonality is an algebraic identity and survives outside the
        // positive-definite regime, but there the weight/norm ratios change
        // sign and the square-root normalization must report it
        let p = RacahParams::new(0.5, 1.0 / 3.0, -6.0, 2.0 / 7.0).unwrap();
        let mut saw_negative = false;
        for n in 0..=5u32 {
            for l in 0..=5u32 {
                let (_, neg) = p.orthonormal(n, l).unwrap();
                saw_negative |= neg;
            }
        }
        assert!(saw_negative);
    }
}
