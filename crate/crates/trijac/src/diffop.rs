//! Linear differential operators with polynomial coefficients.
//!
//! Operators are kept in normal form Σ p_{rs}(x,y) ∂ₓʳ ∂_yˢ with every
//! coefficient standing to the left of the derivatives. Composition pushes
//! derivatives across coefficients with the Leibniz rule, so commutators of
//! exact operators are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::BivarPoly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct PolyDiffOp<S> {
    /// (r, s) ↦ coefficient of ∂ₓʳ ∂_yˢ.
    terms: BTreeMap<(u32, u32), BivarPoly<S>>,
}

impl<S: Scalar> PolyDiffOp<S> {
    pub fn zero() -> Self {
        PolyDiffOp { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::from_poly(BivarPoly::one())
    }

    /// Multiplication operator f ↦ p·f.
    pub fn from_poly(p: BivarPoly<S>) -> Self {
        let mut op = Self::zero();
        op.add_term(0, 0, p);
        op
    }

    pub fn constant(c: S) -> Self {
        Self::from_poly(BivarPoly::constant(c))
    }

    /// p(x,y) ∂ₓʳ ∂_yˢ.
    pub fn term(p: BivarPoly<S>, r: u32, s: u32) -> Self {
        let mut op = Self::zero();
        op.add_term(r, s, p);
        op
    }

    pub fn dx() -> Self {
        Self::term(BivarPoly::one(), 1, 0)
    }

    pub fn dy() -> Self {
        Self::term(BivarPoly::one(), 0, 1)
    }

    pub fn add_term(&mut self, r: u32, s: u32, p: BivarPoly<S>) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry((r, s)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &p;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of nonzero polynomial monomials across all derivative
    /// orders; the residual size reported for failed exact identities.
    pub fn num_monomials(&self) -> usize {
        self.terms.values().map(BivarPoly::num_terms).sum()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (&(r, s), p) in &self.terms {
            out.add_term(r, s, p.scale(c));
        }
        out
    }

    /// Apply to a polynomial.
    pub fn apply(&self, f: &BivarPoly<S>) -> BivarPoly<S> {
        let mut out = BivarPoly::zero();
        for (&(r, s), p) in &self.terms {
            let mut g = f.clone();
            for _ in 0..r {
                g = g.dx();
            }
            for _ in 0..s {
                g = g.dy();
            }
            out = &out + &(p * &g);
        }
        out
    }

    /// Operator composition self ∘ rhs in normal form:
    /// ∂ₓʳ∂_yˢ ∘ q = Σ C(r,i) C(s,j) (∂ₓ^i ∂_y^j q) ∂ₓ^{r−i} ∂_y^{s−j}.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(r, s), p) in &self.terms {
            for (&(r2, s2), q) in &rhs.terms {
                // Successive derivatives of q, reused across the binomial sum.
                let mut qx = q.clone();
                for i in 0..=r {
                    if qx.is_zero() {
                        break;
                    }
                    let mut qxy = qx.clone();
                    for j in 0..=s {
                        if qxy.is_zero() {
                            break;
                        }
                        let coeff = S::from_int(binom(r, i) * binom(s, j));
                        let contrib = (p * &qxy).scale(&coeff);
                        out.add_term(r - i + r2, s - j + s2, contrib);
                        qxy = qxy.dy();
                    }
                    qx = qx.dx();
                }
            }
        }
        out
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        &a.compose(b) - &b.compose(a)
    }

    pub fn anticommutator(a: &Self, b: &Self) -> Self {
        &a.compose(b) + &b.compose(a)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BivarPoly<S>)> {
        self.terms.iter()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(BivarPoly::max_abs_coeff)
            .fold(0.0, f64::max)
    }
}

fn binom(n: u32, k: u32) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * i64::from(n - i) / i64::from(i + 1);
    }
    acc
}

impl<S: Scalar> Add for &PolyDiffOp<S> {
    type Output = PolyDiffOp<S>;
    fn add(self, rhs: Self) -> PolyDiffOp<S> {
        let mut out = self.clone();
        for (&(r, s), p) in &rhs.terms {
            out.add_term(r, s, p.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &PolyDiffOp<S> {
    type Output = PolyDiffOp<S>;
    fn sub(self, rhs: Self) -> PolyDiffOp<S> {
        let mut out = self.clone();
        for (&(r, s), p) in &rhs.terms {
            out.add_term(r, s, -p);
        }
        out
    }
}

impl<S: Scalar> Mul for &PolyDiffOp<S> {
    type Output = PolyDiffOp<S>;
    fn mul(self, rhs: Self) -> PolyDiffOp<S> {
        self.compose(rhs)
    }
}

impl<S: Scalar> Neg for &PolyDiffOp<S> {
    type Output = PolyDiffOp<S>;
    fn neg(self) -> PolyDiffOp<S> {
        let mut out = PolyDiffOp::zero();
        for (&(r, s), p) in &self.terms {
            out.add_term(r, s, -p);
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for PolyDiffOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(r, s), p) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{p}]")?;
            if r > 0 {
                write!(f, " Dx^{r}")?;
            }
            if s > 0 {
                write!(f, " Dy^{s}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    type Op = PolyDiffOp<Rat>;

    #[test]
    fn dx_with_x_has_unit_commutator() {
        let x = Op::from_poly(BivarPoly::x());
        let c = Op::commutator(&Op::dx(), &x);
        assert_eq!(c, Op::identity());
        let y = Op::from_poly(BivarPoly::y());
        assert!(Op::commutator(&Op::dx(), &y).is_zero());
    }

    #[test]
    fn composition_matches_sequential_application() {
        // A = x y ∂x², B = (x + y) ∂y
        let a = Op::term(&BivarPoly::x() * &BivarPoly::y(), 2, 0);
        let b = Op::term(BivarPoly::x() + BivarPoly::y(), 0, 1);
        let f = {
            let mut f = BivarPoly::<Rat>::zero();
            f.add_term(3, 2, rat(1, 1));
            f.add_term(1, 1, rat(-2, 3));
            f.add_term(0, 4, rat(5, 1));
            f
        };
        let ab = a.compose(&b);
        assert_eq!(ab.apply(&f), a.apply(&b.apply(&f)));
        let ba = b.compose(&a);
        assert_eq!(ba.apply(&f), b.apply(&a.apply(&f)));
    }

    #[test]
    fn composition_is_associative() {
        let a = Op::term(BivarPoly::x(), 1, 0);
        let b = Op::term(BivarPoly::y(), 0, 1);
        let c = Op::term(&BivarPoly::x() * &BivarPoly::y(), 1, 1);
        assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn jacobi_identity_holds() {
        let a = Op::term(BivarPoly::x(), 2, 0);
        let b = Op::term(BivarPoly::z(), 0, 1);
        let c = Op::term(BivarPoly::y(), 1, 1);
        let j = &(&Op::commutator(&a, &Op::commutator(&b, &c))
            + &Op::commutator(&b, &Op::commutator(&c, &a)))
            + &Op::commutator(&c, &Op::commutator(&a, &b));
        assert!(j.is_zero());
    }
}
