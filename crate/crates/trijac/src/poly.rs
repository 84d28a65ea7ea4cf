//! Sparse bivariate polynomials over an abstract scalar.
//!
//! Monomials are keyed by (x-degree, y-degree) in a BTreeMap so that all
//! iteration, and therefore every exact certification report built on top,
//! is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct BivarPoly<S> {
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> BivarPoly<S> {
    pub fn zero() -> Self {
        BivarPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// The monomial coefficient · x^i y^j.
    pub fn monomial(i: u32, j: u32, c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, S::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, S::one())
    }

    /// 1 − x − y.
    pub fn z() -> Self {
        Self::one() - Self::x() - Self::y()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
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

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v.clone() * c.clone());
        }
        out
    }

    pub fn dx(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, v.clone() * S::from_int(i64::from(i)));
            }
        }
        out
    }

    pub fn dy(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, v.clone() * S::from_int(i64::from(j)));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        // Horner is awkward on sparse 2-d supports; power tables keep this
        // exact-mode friendly without quadratic multiplication counts.
        let ideg = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let jdeg = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let xs = power_table(x, ideg);
        let ys = power_table(y, jdeg);
        let mut acc = S::zero();
        for (&(i, j), v) in &self.terms {
            acc = acc + v.clone() * xs[i as usize].clone() * ys[j as usize].clone();
        }
        acc
    }

    /// Substitute x ← p, y ← q.
    pub fn subst(&self, p: &Self, q: &Self) -> Self {
        let ideg = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let jdeg = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let ps = poly_power_table(p, ideg);
        let qs = poly_power_table(q, jdeg);
        let mut acc = Self::zero();
        for (&(i, j), v) in &self.terms {
            let prod = &ps[i as usize] * &qs[j as usize];
            acc = &acc + &prod.scale(v);
        }
        acc
    }

    /// Coefficients of a univariate-in-x polynomial, lowest degree first.
    /// Panics if any term involves y.
    pub fn univar_coeffs_x(&self) -> Vec<S> {
        let deg = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let mut out = vec![S::zero(); deg as usize + 1];
        for (&(i, j), v) in &self.terms {
            assert_eq!(j, 0, "polynomial is not univariate in x");
            out[i as usize] = v.clone();
        }
        out
    }

    /// Largest |coefficient| in the f64 view, for float residual reports.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

fn power_table<S: Scalar>(x: &S, n: u32) -> Vec<S> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(S::one());
    for i in 1..=n {
        let prev = out[i as usize - 1].clone();
        out.push(prev * x.clone());
    }
    out
}

fn poly_power_table<S: Scalar>(p: &BivarPoly<S>, n: u32) -> Vec<BivarPoly<S>> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BivarPoly::one());
    for i in 1..=n {
        let prev = &out[i as usize - 1] * p;
        out.push(prev);
    }
    out
}

impl<S: Scalar> Add for &BivarPoly<S> {
    type Output = BivarPoly<S>;
    fn add(self, rhs: Self) -> BivarPoly<S> {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &BivarPoly<S> {
    type Output = BivarPoly<S>;
    fn sub(self, rhs: Self) -> BivarPoly<S> {
        let mut out = self.clone();
        for (&(i, j), v) in &rhs.terms {
            out.add_term(i, j, -v.clone());
        }
        out
    }
}

impl<S: Scalar> Mul for &BivarPoly<S> {
    type Output = BivarPoly<S>;
    fn mul(self, rhs: Self) -> BivarPoly<S> {
        let mut out = BivarPoly::zero();
        for (&(i1, j1), v1) in &self.terms {
            for (&(i2, j2), v2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, v1.clone() * v2.clone());
            }
        }
        out
    }
}

impl<S: Scalar> Neg for &BivarPoly<S> {
    type Output = BivarPoly<S>;
    fn neg(self) -> BivarPoly<S> {
        let mut out = BivarPoly::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, -v.clone());
        }
        out
    }
}

impl<S: Scalar> Add for BivarPoly<S> {
    type Output = BivarPoly<S>;
    fn add(self, rhs: Self) -> BivarPoly<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for BivarPoly<S> {
    type Output = BivarPoly<S>;
    fn sub(self, rhs: Self) -> BivarPoly<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for BivarPoly<S> {
    type Output = BivarPoly<S>;
    fn mul(self, rhs: Self) -> BivarPoly<S> {
        &self * &rhs
    }
}

impl<S: Scalar> fmt::Debug for BivarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for BivarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({v})")?;
            if i > 0 {
                write!(f, "*x^{i}")?;
            }
            if j > 0 {
                write!(f, "*y^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn p_xy() -> BivarPoly<Rat> {
        // 2x² − 3xy + y − 5
        let mut p = BivarPoly::zero();
        p.add_term(2, 0, rat(2, 1));
        p.add_term(1, 1, rat(-3, 1));
        p.add_term(0, 1, rat(1, 1));
        p.add_term(0, 0, rat(-5, 1));
        p
    }

    #[test]
    fn eval_matches_hand_expansion() {
        let p = p_xy();
        let v = p.eval(&rat(1, 2), &rat(1, 3));
        // 2/4 − 3/6 + 1/3 − 5 = 1/2 − 1/2 + 1/3 − 5
        assert_eq!(v, rat(1, 3) - rat(5, 1));
    }

    #[test]
    fn derivative_of_product_obeys_leibniz() {
        let p = p_xy();
        let q = BivarPoly::x() + BivarPoly::y().scale(&rat(7, 2));
        let prod = &p * &q;
        assert_eq!(prod.dx(), &(&p.dx() * &q) + &(&p * &q.dx()));
        assert_eq!(prod.dy(), &(&p.dy() * &q) + &(&p * &q.dy()));
    }

    #[test]
    fn substitution_composes_with_eval() {
        let p = p_xy();
        let u = BivarPoly::z(); // 1 - x - y
        let v = BivarPoly::y();
        let s = p.subst(&u, &v);
        let (x0, y0) = (rat(2, 7), rat(3, 11));
        let z0 = rat(1, 1) - &x0 - &y0;
        assert_eq!(s.eval(&x0, &y0), p.eval(&z0, &y0));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = p_xy();
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).num_terms(), 0);
    }
}
