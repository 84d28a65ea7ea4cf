//! Change of basis between the three reflected families of the triangle
//! basis.
//!
//! For fixed total degree n the plain family {J_{n,m}}, its coordinate
//! reversal {J^π_{n,ℓ}} and the xy-swap {J^σ_{n,ℓ}} span the same orthogonal
//! complement, so each pair is connected by an (n+1)×(n+1) orthogonal
//! matrix. The entries are values of a degree-truncated discrete family with
//! parameters assembled from (a, b, c) and n. This module builds the three
//! matrices, the pointwise expansion sums, and the exact-rational
//! certificates that pin down the square-root normalizations and phases.

use crate::error::{KernelError, Result};
use crate::poly::BivarPoly;
use crate::quadrature;
use crate::racah::RacahParams;
use crate::scalar::{rat, rat_from_f64, Rat, Scalar};
use crate::triangle::{
    family_poly, tri_family_eval, tri_norm, tri_poly, Family, TriIndex, TriParams,
};

/// Overlap parameters connecting the plain family to the coordinate
/// reversal at total degree n.
pub fn pi_overlap_params<S: Scalar>(n: u32, p: &TriParams<S>) -> Result<RacahParams<S>> {
    RacahParams::new(
        p.b.clone(),
        p.c.clone(),
        S::from_int(-i64::from(n) - 1),
        S::from_int(i64::from(n) + 1) + p.a.clone() + p.b.clone(),
    )
}

/// Overlap parameters connecting the plain family to the xy-swap.
pub fn sigma_overlap_params<S: Scalar>(n: u32, p: &TriParams<S>) -> Result<RacahParams<S>> {
    RacahParams::new(
        p.c.clone(),
        p.b.clone(),
        S::from_int(-i64::from(n) - 1),
        S::from_int(i64::from(n) + 1) + p.a.clone() + p.c.clone(),
    )
}

/// Overlap parameters connecting the coordinate reversal to the xy-swap.
pub fn sigma_via_pi_overlap_params<S: Scalar>(
    n: u32,
    p: &TriParams<S>,
) -> Result<RacahParams<S>> {
    RacahParams::new(
        p.a.clone(),
        p.b.clone(),
        S::from_int(-i64::from(n) - 1),
        S::from_int(i64::from(n) + 1) + p.a.clone() + p.c.clone(),
    )
}

/// Orthogonal change-of-basis matrix between the orthonormalized overlaps
/// of two families at fixed total degree. Row index ℓ labels the target
/// family member, column index m the source member.
#[derive(Clone, Debug)]
pub struct ConnectionMatrix {
    pub n: u32,
    pub source: Family,
    pub target: Family,
    entries: Vec<Vec<f64>>,
}

impl ConnectionMatrix {
    pub fn entry(&self, ell: u32, m: u32) -> f64 {
        self.entries[ell as usize][m as usize]
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Largest deviation of MMᵀ and MᵀM from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0f64;
        for i in 0..d {
            for j in 0..d {
                let mut right = 0.0;
                let mut left = 0.0;
                for k in 0..d {
                    right += self.entries[i][k] * self.entries[j][k];
                    left += self.entries[k][i] * self.entries[k][j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((right - target).abs()).max((left - target).abs());
            }
        }
        worst
    }
}

/// Sign convention attached to a connection. The orthonormalized overlap
/// value is always taken on the positive square-root branch, so each
/// expansion's true signs live in an explicit phase factor. The three rules
/// below were read off from the exactly solved coefficients (two generic
/// parameter triples, degrees through four) and are re-certified entry by
/// entry in [`exact_entry_certificate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    /// (−1)^n: the coordinate reversal expanded over the plain family.
    Degree,
    /// (−1)^{n+ℓ+m}: the xy-swap expanded over the plain family.
    DegreeRowCol,
    /// (−1)^{n+m}: the xy-swap expanded over the coordinate reversal.
    DegreeCol,
}

impl Phase {
    fn exponent(self, n: u32, ell: u32, m: u32) -> u32 {
        match self {
            Phase::Degree => n,
            Phase::DegreeRowCol => n + ell + m,
            Phase::DegreeCol => n + m,
        }
    }

    fn sign(self, n: u32, ell: u32, m: u32) -> i64 {
        if self.exponent(n, ell, m) % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

/// The matrix entries are assembled in exact rational arithmetic and rounded
/// once at the end: the alternating hypergeometric sums behind the overlap
/// values cancel catastrophically in floating point from degree eight or so,
/// while the exact squared entry (weight over norm times squared overlap) is
/// a modest rational. Every f64 parameter is a dyadic rational, so the
/// conversion loses nothing.
fn build_matrix(
    n: u32,
    rp: &RacahParams<Rat>,
    ph: Phase,
    source: Family,
    target: Family,
) -> Result<ConnectionMatrix> {
    let dim = n as usize + 1;
    let zero = <Rat as Scalar>::zero();
    let mut entries = vec![vec![0.0; dim]; dim];
    for ell in 0..=n {
        let w = rp.weight(ell)?;
        for m in 0..=n {
            let ratio = w.clone() / rp.norm(m)?;
            if ratio < zero {
                return Err(KernelError::Domain(format!(
                    "weight/norm ratio negative at (ell, m) = ({ell}, {m}): \
                     parameters left the positive-definite regime"
                )));
            }
            let r = rp.eval(m, ell)?;
            let mut v = Scalar::to_f64(&(ratio * (&r * &r))).sqrt();
            if r < zero {
                v = -v;
            }
            entries[ell as usize][m as usize] = ph.sign(n, ell, m) as f64 * v;
        }
    }
    Ok(ConnectionMatrix {
        n,
        source,
        target,
        entries,
    })
}

fn exact_params(p: &TriParams<f64>) -> Result<TriParams<Rat>> {
    let conv = |v: f64, name: &str| {
        rat_from_f64(v).ok_or_else(|| {
            KernelError::Domain(format!("parameter {name} = {v} is not finite"))
        })
    };
    Ok(TriParams::new(
        conv(p.a, "a")?,
        conv(p.b, "b")?,
        conv(p.c, "c")?,
    ))
}

/// Matrix sending orthonormalized plain-family overlaps to the coordinate
/// reversal; every entry carries the global (−1)^n phase.
pub fn connection_pi(n: u32, p: &TriParams<f64>) -> Result<ConnectionMatrix> {
    let pe = exact_params(p)?;
    build_matrix(
        n,
        &pi_overlap_params(n, &pe)?,
        Phase::Degree,
        Family::E,
        Family::Pi,
    )
}

/// Matrix sending orthonormalized plain-family overlaps to the xy-swap;
/// entry (ℓ, m) carries the (−1)^{n+ℓ+m} phase.
pub fn connection_sigma(n: u32, p: &TriParams<f64>) -> Result<ConnectionMatrix> {
    let pe = exact_params(p)?;
    build_matrix(
        n,
        &sigma_overlap_params(n, &pe)?,
        Phase::DegreeRowCol,
        Family::E,
        Family::Sigma,
    )
}

/// Matrix sending coordinate-reversal overlaps to the xy-swap; entry
/// (ℓ, m) carries the (−1)^{n+m} phase.
pub fn connection_sigma_from_pi(n: u32, p: &TriParams<f64>) -> Result<ConnectionMatrix> {
    let pe = exact_params(p)?;
    build_matrix(
        n,
        &sigma_via_pi_overlap_params(n, &pe)?,
        Phase::DegreeCol,
        Family::Pi,
        Family::Sigma,
    )
}

/// Pointwise expansion of target-family member (n, ℓ) as a sum over
/// source-family members, with the normalization square roots taken on the
/// positive branch.
#[allow(clippy::too_many_arguments)]
fn reconstruct(
    p: &TriParams<f64>,
    source: Family,
    target: Family,
    rp: &RacahParams<f64>,
    ph: Phase,
    n: u32,
    ell: u32,
    x: f64,
    y: f64,
) -> Result<f64> {
    if ell > n {
        return Err(KernelError::Domain(format!(
            "member index ell = {ell} exceeds total degree n = {n}"
        )));
    }
    let tp = target.params(p);
    let sp = source.params(p);
    let wn = rp.weight(ell)? * tri_norm(&tp, TriIndex::new(n, ell))?;
    if wn < 0.0 {
        return Err(KernelError::Domain(
            "negative weight/norm product in the target prefactor".into(),
        ));
    }
    let f = wn.sqrt();
    let mut acc = 0.0;
    for m in 0..=n {
        let gg = rp.norm(m)? * tri_norm(&sp, TriIndex::new(n, m))?;
        if gg <= 0.0 {
            return Err(KernelError::Domain(
                "nonpositive norm product in a source denominator".into(),
            ));
        }
        acc += ph.sign(n, ell, m) as f64 * rp.eval(m, ell)? / gg.sqrt()
            * tri_family_eval(p, source, TriIndex::new(n, m), &x, &y)?;
    }
    Ok(f * acc)
}

/// Reconstruct the coordinate-reversed member (n, ℓ) at (x, y) from plain
/// family values; matches `tri_family_eval` of the reversal to float
/// accuracy.
pub fn expand_pi_in_e(n: u32, ell: u32, p: &TriParams<f64>, x: f64, y: f64) -> Result<f64> {
    let rp = pi_overlap_params(n, p)?;
    reconstruct(p, Family::E, Family::Pi, &rp, Phase::Degree, n, ell, x, y)
}

/// Reconstruct the xy-swapped member (n, ℓ) from plain family values.
pub fn expand_sigma_in_e(n: u32, ell: u32, p: &TriParams<f64>, x: f64, y: f64) -> Result<f64> {
    let rp = sigma_overlap_params(n, p)?;
    reconstruct(
        p,
        Family::E,
        Family::Sigma,
        &rp,
        Phase::DegreeRowCol,
        n,
        ell,
        x,
        y,
    )
}

/// Reconstruct the xy-swapped member (n, ℓ) from coordinate-reversal
/// values.
pub fn expand_sigma_in_pi(n: u32, ell: u32, p: &TriParams<f64>, x: f64, y: f64) -> Result<f64> {
    let rp = sigma_via_pi_overlap_params(n, p)?;
    reconstruct(
        p,
        Family::Pi,
        Family::Sigma,
        &rp,
        Phase::DegreeCol,
        n,
        ell,
        x,
        y,
    )
}

/// Frobenius distance between the direct e→σ matrix and the composition
/// through the coordinate reversal.
pub fn coherence_defect(p: &TriParams<f64>, n: u32) -> Result<f64> {
    let s = connection_sigma(n, p)?;
    let q = connection_sigma_from_pi(n, p)?;
    let pi = connection_pi(n, p)?;
    let d = s.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            let mut prod = 0.0;
            for k in 0..d {
                prod += q.entries[i][k] * pi.entries[k][j];
            }
            let diff = s.entries[i][j] - prod;
            acc += diff * diff;
        }
    }
    Ok(acc.sqrt())
}

/// Exact expansion of a total-degree-n polynomial in the plain family with
/// parameters `pe`, by back-substitution down the y-degree strata. The
/// member (n, m) is the only basis element whose y-degree reaches m, so the
/// coefficients resolve top-down; a nonzero final remainder means the input
/// was outside the span and is an error.
pub fn exact_expand_in_e(
    pe: &TriParams<Rat>,
    n: u32,
    target: &BivarPoly<Rat>,
) -> Result<Vec<Rat>> {
    let mut residual = target.clone();
    let mut coeffs = vec![<Rat as Scalar>::zero(); n as usize + 1];
    for m in (0..=n).rev() {
        let basis = tri_poly(pe, TriIndex::new(n, m))?;
        let pivot = basis.coeff(n - m, m);
        if pivot.is_zero() {
            return Err(KernelError::DegenerateDenominator(format!(
                "vanishing leading coefficient in basis member (n, m) = ({n}, {m})"
            )));
        }
        let c = residual.coeff(n - m, m) / pivot;
        residual = &residual - &basis.scale(&c);
        coeffs[m as usize] = c;
    }
    if !residual.is_zero() {
        return Err(KernelError::Domain(
            "expansion remainder does not vanish: input outside the degree-n span".into(),
        ));
    }
    Ok(coeffs)
}

/// Exact unnormalized connection coefficients: coeffs[ℓ][m] expands target
/// member (n, ℓ) over source members (n, m).
#[derive(Clone, Debug)]
pub struct ExactExpansion {
    pub n: u32,
    pub coeffs: Vec<Vec<Rat>>,
}

/// Solve the coordinate-reversal expansion exactly.
pub fn exact_pi_expansion(p: &TriParams<Rat>, n: u32) -> Result<ExactExpansion> {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for ell in 0..=n {
        let target = family_poly(p, Family::Pi, TriIndex::new(n, ell))?;
        coeffs.push(exact_expand_in_e(p, n, &target)?);
    }
    Ok(ExactExpansion { n, coeffs })
}

/// Solve the xy-swap expansion exactly.
pub fn exact_sigma_expansion(p: &TriParams<Rat>, n: u32) -> Result<ExactExpansion> {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for ell in 0..=n {
        let target = family_poly(p, Family::Sigma, TriIndex::new(n, ell))?;
        coeffs.push(exact_expand_in_e(p, n, &target)?);
    }
    Ok(ExactExpansion { n, coeffs })
}

/// Solve the swap-through-reversal expansion exactly: both sides are
/// rewritten in the reversed coordinates, where the reversal family becomes
/// the plain family with permuted parameters.
pub fn exact_sigma_via_pi_expansion(p: &TriParams<Rat>, n: u32) -> Result<ExactExpansion> {
    let pe = Family::Pi.params(p);
    let z = BivarPoly::<Rat>::z();
    let y = BivarPoly::<Rat>::y();
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for ell in 0..=n {
        let target = family_poly(p, Family::Sigma, TriIndex::new(n, ell))?.subst(&z, &y);
        coeffs.push(exact_expand_in_e(&pe, n, &target)?);
    }
    Ok(ExactExpansion { n, coeffs })
}

/// Γ-argument decomposition of the squared norm of member (n, k) with
/// parameters q: norm = pre · Π Γ(num) / Π Γ(den).
fn norm_gamma_args(q: &TriParams<Rat>, n: u32, k: u32) -> Result<([Rat; 4], [Rat; 4], Rat)> {
    let one = rat(1, 1);
    let two = rat(2, 1);
    let nf = rat(i64::from(n), 1);
    let kf = rat(i64::from(k), 1);
    let bc = &q.b + &q.c;
    let num = [
        &kf + &q.b + &one,
        &kf + &q.c + &one,
        &nf - &kf + &q.a + &one,
        &nf + &kf + &bc + &two,
    ];
    let den = [
        &kf + &bc + &one,
        &nf + &kf + &q.sum() + &two,
        &kf + &one,
        &nf - &kf + &one,
    ];
    let d1 = &two * &kf + &bc + &one;
    let d2 = &two * &nf + &q.sum() + &two;
    if d1.is_zero() || d2.is_zero() {
        return Err(KernelError::DegenerateDenominator(format!(
            "norm prefactor vanishes at (n, k) = ({n}, {k})"
        )));
    }
    Ok((num, den, one / (d1 * d2)))
}

/// Exact ratio norm(num_p; n, ℓ) / norm(den_p; n, m). The two parameter
/// triples must be permutations of each other so that the Γ arguments pair
/// up by integer offsets; the individual norms are irrational but the cross
/// ratio reduces to a rational Pochhammer product.
pub fn exact_cross_norm_ratio(
    num_p: &TriParams<Rat>,
    ell: u32,
    den_p: &TriParams<Rat>,
    m: u32,
    n: u32,
) -> Result<Rat> {
    let (n1, d1, p1) = norm_gamma_args(num_p, n, ell)?;
    let (n2, d2, p2) = norm_gamma_args(den_p, n, m)?;
    let mut num: Vec<Rat> = n1.to_vec();
    num.extend(d2);
    let mut den: Vec<Rat> = d1.to_vec();
    den.extend(n2);
    Ok(<Rat as Scalar>::gamma_ratio(&num, &den)? * p1 / p2)
}

/// Entry-by-entry certificate: each exactly solved coefficient squares to
/// the closed-form product (weight over norm times the cross norm ratio
/// times the squared overlap value) and carries the stated phase.
fn exact_entry_certificate(
    p: &TriParams<Rat>,
    exp: &ExactExpansion,
    rp: &RacahParams<Rat>,
    target: Family,
    source: Family,
    ph: Phase,
) -> Result<()> {
    let n = exp.n;
    let tp = target.params(p);
    let sp = source.params(p);
    let zero = <Rat as Scalar>::zero();
    for ell in 0..=n {
        let w = rp.weight(ell)?;
        for m in 0..=n {
            let c = &exp.coeffs[ell as usize][m as usize];
            let r = rp.eval(m, ell)?;
            let cross = exact_cross_norm_ratio(&tp, ell, &sp, m, n)?;
            let rhs = w.clone() / rp.norm(m)? * cross * (&r * &r);
            if c * c != rhs {
                return Err(KernelError::Domain(format!(
                    "squared-entry mismatch at (ell, m) = ({ell}, {m})"
                )));
            }
            // the phase rule says c = phase · (positive root) · R, so c·R
            // must land on the phase side of zero
            if c * &r * rat(ph.sign(n, ell, m), 1) < zero {
                return Err(KernelError::Domain(format!(
                    "phase mismatch at (ell, m) = ({ell}, {m})"
                )));
            }
        }
    }
    Ok(())
}

/// Solve and certify the coordinate-reversal expansion.
pub fn exact_pi_certificate(p: &TriParams<Rat>, n: u32) -> Result<ExactExpansion> {
    let exp = exact_pi_expansion(p, n)?;
    exact_entry_certificate(
        p,
        &exp,
        &pi_overlap_params(n, p)?,
        Family::Pi,
        Family::E,
        Phase::Degree,
    )?;
    Ok(exp)
}

/// Solve and certify the xy-swap expansion.
pub fn exact_sigma_certificate(p: &TriParams<Rat>, n: u32) -> Result<ExactExpansion> {
    let exp = exact_sigma_expansion(p, n)?;
    exact_entry_certificate(
        p,
        &exp,
        &sigma_overlap_params(n, p)?,
        Family::Sigma,
        Family::E,
        Phase::DegreeRowCol,
    )?;
    Ok(exp)
}

/// Solve and certify the swap-through-reversal expansion.
pub fn exact_sigma_via_pi_certificate(p: &TriParams<Rat>, n: u32) -> Result<ExactExpansion> {
    let exp = exact_sigma_via_pi_expansion(p, n)?;
    exact_entry_certificate(
        p,
        &exp,
        &sigma_via_pi_overlap_params(n, p)?,
        Family::Sigma,
        Family::Pi,
        Phase::DegreeCol,
    )?;
    Ok(exp)
}

/// Exact group coherence: the direct swap coefficients equal the matrix
/// product of the through-reversal and reversal coefficients.
pub fn exact_coherence(p: &TriParams<Rat>, n: u32) -> Result<()> {
    let pi = exact_pi_expansion(p, n)?;
    let sigma = exact_sigma_expansion(p, n)?;
    let via = exact_sigma_via_pi_expansion(p, n)?;
    let zero = <Rat as Scalar>::zero();
    for ell in 0..=n as usize {
        for m in 0..=n as usize {
            let mut acc = zero.clone();
            for j in 0..=n as usize {
                acc += &via.coeffs[ell][j] * &pi.coeffs[j][m];
            }
            if acc != sigma.coeffs[ell][m] {
                return Err(KernelError::Domain(format!(
                    "coherence mismatch at (ell, m) = ({ell}, {m})"
                )));
            }
        }
    }
    Ok(())
}

/// Exact dual orthogonality of the overlap rows:
/// w(ℓ) Σ_m R_m(λ(ℓ)) R_m(λ(ℓ')) / M_m = δ_{ℓℓ'}.
pub fn exact_dual_orthogonality(rp: &RacahParams<Rat>) -> Result<()> {
    let nn = rp.trunc;
    let zero = <Rat as Scalar>::zero();
    let one = rat(1, 1);
    for ell in 0..=nn {
        for ell2 in ell..=nn {
            let mut acc = zero.clone();
            for m in 0..=nn {
                acc += rp.eval(m, ell)? * rp.eval(m, ell2)? / rp.norm(m)?;
            }
            let lhs = rp.weight(ell)? * acc;
            let expect = if ell == ell2 { one.clone() } else { zero.clone() };
            if lhs != expect {
                return Err(KernelError::Domain(format!(
                    "dual orthogonality fails at (ell, ell') = ({ell}, {ell2})"
                )));
            }
        }
    }
    Ok(())
}

/// Exact self-duality of the reversal overlaps: the value at (degree m,
/// point ℓ) with parameters from (a, b, c) equals the value at (degree ℓ,
/// point m) with the reversed parameter triple (c, b, a).
pub fn exact_reflection_duality(p: &TriParams<Rat>, n: u32) -> Result<()> {
    let rp = pi_overlap_params(n, p)?;
    let rq = pi_overlap_params(n, &Family::Pi.params(p))?;
    for ell in 0..=n {
        for m in 0..=n {
            if rp.eval(m, ell)? != rq.eval(ell, m)? {
                return Err(KernelError::Domain(format!(
                    "reflection duality fails at (ell, m) = ({ell}, {m})"
                )));
            }
        }
    }
    Ok(())
}

/// Quadrature form of the reversal overlaps: largest relative deviation of
/// F(ℓ)·R_m from the weighted cross integral of the two family members.
pub fn integral_form_defect(p: &TriParams<f64>, n: u32, npts: usize) -> Result<f64> {
    let rp = pi_overlap_params(n, p)?;
    let rule = quadrature::triangle_rule(npts, p)?;
    let pp = Family::Pi.params(p);
    let mut worst = 0f64;
    for ell in 0..=n {
        let f = (rp.weight(ell)? * tri_norm(&pp, TriIndex::new(n, ell))?).sqrt();
        let jpi = family_poly(p, Family::Pi, TriIndex::new(n, ell))?;
        for m in 0..=n {
            let lhs = f * rp.eval(m, ell)?;
            let je = tri_poly(p, TriIndex::new(n, m))?;
            let integral = rule.integrate(|x, y| jpi.eval(&x, &y) * je.eval(&x, &y));
            let phase = Phase::Degree.sign(n, ell, m) as f64;
            let rhs = phase * (rp.norm(m)? / tri_norm(p, TriIndex::new(n, m))?).sqrt() * integral;
            worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> TriParams<Rat> {
        TriParams::new(rat(1, 2), rat(1, 3), rat(3, 4))
    }

    fn paramsf() -> TriParams<f64> {
        TriParams::new(0.5, 1.0 / 3.0, 0.75)
    }

    #[test]
    fn degree_zero_matrices_are_identity() {
        let p = paramsf();
        for m in [
            connection_pi(0, &p).unwrap(),
            connection_sigma(0, &p).unwrap(),
            connection_sigma_from_pi(0, &p).unwrap(),
        ] {
            assert_eq!(m.dim(), 1);
            assert!((m.entry(0, 0) - 1.0).abs() < 1e-14);
        }
        let v = expand_pi_in_e(0, 0, &p, 0.3, 0.4).unwrap();
        assert!((v - 1.0).abs() < 1e-14, "constant member reconstructs to 1");
    }

    #[test]
    fn frozen_degree_one_expansion() {
        // Back-substitution oracle: with (a, b, c) = (1/2, 1/3, 3/4) the
        // reversed member (1, 0) expands as −21/37·J_{1,0} − 55/37·J_{1,1}.
        let exp = exact_pi_expansion(&params(), 1).unwrap();
        assert_eq!(exp.coeffs[0], vec![rat(-21, 37), rat(-55, 37)]);
    }

    #[test]
    fn matrices_are_orthogonal() {
        for p in [paramsf(), TriParams::new(0.5, 0.3, 1.7), TriParams::new(0.0, 0.0, 0.0)] {
            for n in [1u32, 4, 7] {
                assert!(connection_pi(n, &p).unwrap().orthogonality_defect() < 1e-12);
                assert!(connection_sigma(n, &p).unwrap().orthogonality_defect() < 1e-12);
                assert!(
                    connection_sigma_from_pi(n, &p)
                        .unwrap()
                        .orthogonality_defect()
                        < 1e-12
                );
            }
        }
    }

    #[test]
    fn reconstruction_matches_family_values() {
        let p = paramsf();
        let pts = [(0.21, 0.34), (0.55, 0.17), (0.08, 0.66)];
        for n in 0..=3u32 {
            for ell in 0..=n {
                for &(x, y) in &pts {
                    let idx = TriIndex::new(n, ell);
                    let truth_pi = tri_family_eval(&p, Family::Pi, idx, &x, &y).unwrap();
                    let truth_sig = tri_family_eval(&p, Family::Sigma, idx, &x, &y).unwrap();
                    let scale = truth_pi.abs().max(1.0);
                    let v = expand_pi_in_e(n, ell, &p, x, y).unwrap();
                    assert!((v - truth_pi).abs() / scale < 1e-11, "pi n={n} ell={ell}");
                    let scale = truth_sig.abs().max(1.0);
                    let v = expand_sigma_in_e(n, ell, &p, x, y).unwrap();
                    assert!((v - truth_sig).abs() / scale < 1e-11, "sigma n={n} ell={ell}");
                    let v = expand_sigma_in_pi(n, ell, &p, x, y).unwrap();
                    assert!(
                        (v - truth_sig).abs() / scale < 1e-11,
                        "sigma-via-pi n={n} ell={ell}"
                    );
                }
            }
        }
    }

    #[test]
    fn swap_through_reversal_rejects_missing_alternation() {
        // Dropping the (−1)^m alternation from the through-reversal sum must
        // break the reconstruction; the flat (−1)^n phase alone is not the
        // convention this expansion carries.
        let p = paramsf();
        let (n, ell, x, y) = (2u32, 1u32, 0.3f64, 0.4f64);
        let rp = sigma_via_pi_overlap_params(n, &p).unwrap();
        let wrong =
            reconstruct(&p, Family::Pi, Family::Sigma, &rp, Phase::Degree, n, ell, x, y).unwrap();
        let truth = tri_family_eval(&p, Family::Sigma, TriIndex::new(n, ell), &x, &y).unwrap();
        assert!((wrong - truth).abs() > 1e-3);
    }

    #[test]
    fn swap_expansion_rejects_reversal_parameters() {
        // The xy-swap overlaps end in a+c, not a+b; feeding the reversal's
        // fourth parameter into the swap expansion must fail to reconstruct.
        let p = paramsf();
        let (n, ell, x, y) = (2u32, 0u32, 0.3f64, 0.4f64);
        let wrong_rp = RacahParams::new(
            p.c,
            p.b,
            -(f64::from(n)) - 1.0,
            f64::from(n) + 1.0 + p.a + p.b,
        )
        .unwrap();
        let wrong = reconstruct(
            &p,
            Family::E,
            Family::Sigma,
            &wrong_rp,
            Phase::DegreeRowCol,
            n,
            ell,
            x,
            y,
        )
        .unwrap();
        let truth = tri_family_eval(&p, Family::Sigma, TriIndex::new(n, ell), &x, &y).unwrap();
        assert!((wrong - truth).abs() > 1e-3);
    }

    #[test]
    fn exact_certificates_through_degree_four() {
        let p = params();
        for n in 0..=4u32 {
            exact_pi_certificate(&p, n).unwrap();
            exact_sigma_certificate(&p, n).unwrap();
            exact_sigma_via_pi_certificate(&p, n).unwrap();
        }
    }

    #[test]
    fn exact_coherence_and_duality() {
        let p = params();
        for n in 1..=3u32 {
            exact_coherence(&p, n).unwrap();
            exact_reflection_duality(&p, n).unwrap();
            exact_dual_orthogonality(&pi_overlap_params(n, &p).unwrap()).unwrap();
        }
    }

    #[test]
    fn reversal_matrix_transposes_under_parameter_reversal() {
        // The reversal is an involution exchanging the two families while
        // sending (a, b, c) to (c, b, a), so the orthogonal matrix for the
        // reversed parameters is exactly the transpose.
        let p = paramsf();
        let rev = Family::Pi.params(&p);
        let n = 4u32;
        let m1 = connection_pi(n, &p).unwrap();
        let m2 = connection_pi(n, &rev).unwrap();
        for ell in 0..=n {
            for m in 0..=n {
                assert!(
                    (m1.entry(ell, m) - m2.entry(m, ell)).abs() < 1e-12,
                    "(ell, m) = ({ell}, {m})"
                );
            }
        }
    }

    #[test]
    fn integral_form_matches_overlaps() {
        let p = paramsf();
        assert!(integral_form_defect(&p, 3, 6).unwrap() < 1e-9);
    }

    #[test]
    fn coherence_defect_is_tiny() {
        let p = paramsf();
        assert!(coherence_defect(&p, 5).unwrap() < 1e-12);
    }
}
