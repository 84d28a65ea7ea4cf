//! Shift-operator realization of the triangle generators on the label
//! lattice {(n, k) : 0 ≤ k ≤ n}.
//!
//! Each generator acts on the basis {J_{n,k}} by moving the labels at most
//! one step in n and one step in k, with coefficients rational in (n, k) and
//! the weight exponents. Labels outside the triangular lattice correspond to
//! the zero polynomial (a Jacobi factor of negative degree), so shifts that
//! would leave the lattice are dropped; the intertwining tests in `algebra`
//! pin that convention down against the differential realization.
//!
//! Operators are stored sparsely as (source, target) → coefficient. An
//! operator built on the window n ≤ nmax has correct products only for
//! sources whose intermediate labels stay inside the window; callers that
//! compose r factors must restrict conclusions to sources with n ≤ nmax − r.

use std::collections::BTreeMap;

use crate::error::{KernelError, Result};
use crate::scalar::Scalar;
use crate::triangle::{lattice_indices, TriIndex, TriParams};

/// Dense square matrix over a [`Scalar`], for relation residuals on
/// restricted index windows and for the discrete Racah realization.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<S> {
    size: usize,
    data: Vec<S>,
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            data: vec![S::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.size + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self {
            size: self.size,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self {
            size: self.size,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            size: self.size,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let mut m = Self::zeros(self.size);
        for i in 0..self.size {
            for l in 0..self.size {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.size {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = m.get(i, j).clone();
                    m.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        m
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }

    pub fn anticommutator(a: &Self, b: &Self) -> Self {
        a.mul(b).add(&b.mul(a))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Sparse operator on the label lattice, keyed (source, target):
/// Op(J_source) = Σ_target coeff · J_target.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeOp<S> {
    /// Source window bound the operator was built on: entries exist for all
    /// sources with n ≤ nmax, and compositions are trustworthy only away
    /// from that edge.
    pub nmax: u32,
    entries: BTreeMap<(TriIndex, TriIndex), S>,
}

impl<S: Scalar> LatticeOp<S> {
    pub fn zero(nmax: u32) -> Self {
        Self {
            nmax,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(nmax: u32) -> Self {
        let mut op = Self::zero(nmax);
        for idx in lattice_indices(nmax) {
            op.insert(idx, idx, S::one());
        }
        op
    }

    /// Accumulate a coefficient; exact zeros are not stored.
    pub fn insert(&mut self, source: TriIndex, target: TriIndex, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.entries.entry((source, target));
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn coeff(&self, source: TriIndex, target: TriIndex) -> S {
        self.entries
            .get(&(source, target))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (TriIndex, TriIndex, &S)> {
        self.entries.iter().map(|(&(s, t), c)| (s, t, c))
    }

    /// All (target, coefficient) pairs fed by one source label.
    pub fn row(&self, source: TriIndex) -> impl Iterator<Item = (TriIndex, &S)> {
        let lo = (source, TriIndex { n: 0, k: 0 });
        let hi = (source, TriIndex { n: u32::MAX, k: u32::MAX });
        self.entries.range(lo..=hi).map(|(&(_, t), c)| (t, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.nmax = self.nmax.min(other.nmax);
        for (s, t, c) in other.entries() {
            out.insert(s, t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            nmax: self.nmax,
            entries: self
                .entries
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.nmax);
        for (src, t, c) in self.entries() {
            out.insert(src, t, c.clone() * s.clone());
        }
        out
    }

    /// self ∘ inner (inner acts first):
    /// coeff(s, u) = Σ_t inner(s, t) · self(t, u).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut out = Self::zero(self.nmax.min(inner.nmax));
        for (s, t, b) in inner.entries() {
            for (u, a) in self.row(t) {
                out.insert(s, u, b.clone() * a.clone());
            }
        }
        out
    }

    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.compose(b).sub(&b.compose(a))
    }

    pub fn anticommutator(a: &Self, b: &Self) -> Self {
        a.compose(b).add(&b.compose(a))
    }

    /// Keep only entries whose source satisfies the predicate.
    pub fn restrict_sources(&self, pred: impl Fn(TriIndex) -> bool) -> Self {
        Self {
            nmax: self.nmax,
            entries: self
                .entries
                .iter()
                .filter(|(&(s, _), _)| pred(s))
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    pub fn is_zero_for_sources(&self, pred: impl Fn(TriIndex) -> bool) -> bool {
        self.entries().all(|(s, _, c)| !pred(s) || c.is_zero())
    }

    pub fn max_abs_for_sources(&self, pred: impl Fn(TriIndex) -> bool) -> f64 {
        self.entries()
            .filter(|&(s, _, _)| pred(s))
            .map(|(_, _, c)| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Count of stored entries with a source accepted by the predicate.
    pub fn support_for_sources(&self, pred: impl Fn(TriIndex) -> bool) -> usize {
        self.entries().filter(|&(s, _, _)| pred(s)).count()
    }

    /// Matrix over an index window: M[i][j] = coeff(indices[j] → indices[i]),
    /// so that matrices of composed operators multiply in operator order.
    /// Entries pointing outside the window are dropped, consistent with the
    /// zero-vector convention for out-of-range labels.
    pub fn to_matrix(&self, indices: &[TriIndex]) -> ExactMatrix<S> {
        ExactMatrix::from_fn(indices.len(), |i, j| self.coeff(indices[j], indices[i]))
    }
}

/// Shift displacement guard: emit the entry only when the target stays on
/// the triangular lattice.
fn push<S: Scalar>(op: &mut LatticeOp<S>, src: TriIndex, dn: i64, dk: i64, coeff: S) {
    let n = i64::from(src.n) + dn;
    let k = i64::from(src.k) + dk;
    if n >= 0 && k >= 0 && k <= n {
        op.insert(src, TriIndex::new(n as u32, k as u32), coeff);
    }
}

fn checked_div<S: Scalar>(num: S, den: S, what: &str, idx: TriIndex) -> Result<S> {
    if den.is_zero() {
        return Err(KernelError::DegenerateDenominator(format!(
            "{what} vanishes at (n, k) = ({}, {})",
            idx.n, idx.k
        )));
    }
    Ok(num / den)
}

struct LabelScalars<S> {
    n: S,
    k: S,
}

fn labels<S: Scalar>(idx: TriIndex) -> LabelScalars<S> {
    LabelScalars {
        n: S::from_int(i64::from(idx.n)),
        k: S::from_int(i64::from(idx.k)),
    }
}

/// Multiplication by x, acting on labels: tridiagonal in n, diagonal in k.
pub fn op_x1<S: Scalar>(p: &TriParams<S>, nmax: u32) -> Result<LatticeOp<S>> {
    let abc = p.sum();
    let two = S::from_int(2);
    let mut op = LatticeOp::zero(nmax);
    for idx in lattice_indices(nmax) {
        let LabelScalars { n, k } = labels::<S>(idx);
        let d = |j: i64| n.clone() + n.clone() + abc.clone() + S::from_int(j);
        // up: -(n-k+1)(n+k+a+b+c+2) / ((2n+abc+2)(2n+abc+3))
        let up = checked_div(
            -(n.clone() - k.clone() + S::one()) * (n.clone() + k.clone() + abc.clone() + two.clone()),
            d(2) * d(3),
            "degree ladder denominator",
            idx,
        )?;
        push(&mut op, idx, 1, 0, up);
        // stay: (1 - (2k+abc+1)(2k-a+b+c+1)/((2n+abc+1)(2n+abc+3))) / 2
        let e1 = k.clone() + k.clone() + abc.clone() + S::one();
        let e2 = k.clone() + k.clone() - p.a.clone() + p.b.clone() + p.c.clone() + S::one();
        let stay = (S::one() - checked_div(e1 * e2, d(1) * d(3), "degree ladder denominator", idx)?)
            / two.clone();
        push(&mut op, idx, 0, 0, stay);
        // down: -(n-k+a)(n+k+b+c+1) / ((2n+abc+1)(2n+abc+2))
        let down = checked_div(
            -(n.clone() - k.clone() + p.a.clone())
                * (n.clone() + k.clone() + p.b.clone() + p.c.clone() + S::one()),
            d(1) * d(2),
            "degree ladder denominator",
            idx,
        )?;
        push(&mut op, idx, -1, 0, down);
    }
    Ok(op)
}

/// Multiplication by 1−x−y: nine shift terms on top of (I − X̂₁)/2.
pub fn op_x3<S: Scalar>(p: &TriParams<S>, nmax: u32) -> Result<LatticeOp<S>> {
    let abc = p.sum();
    let bc = p.b.clone() + p.c.clone();
    let half = S::from_ratio(1, 2);
    let quarter = S::from_ratio(1, 4);
    let two = S::from_int(2);

    let x1 = op_x1(p, nmax)?;
    let mut op = LatticeOp::identity(nmax).sub(&x1).scale(&half);

    for idx in lattice_indices(nmax) {
        let LabelScalars { n, k } = labels::<S>(idx);
        let dk = |j: i64| k.clone() + k.clone() + bc.clone() + S::from_int(j);
        let dn = |j: i64| n.clone() + n.clone() + abc.clone() + S::from_int(j);
        // denominator pairs shared by the nine terms
        let d1 = dk(1) * dk(2);
        let d1p = dk(0) * dk(1);
        let d1pp = dk(0) * dk(2);
        let d2 = dn(2) * dn(3);
        let d2p = dn(1) * dn(3);
        let d2pp = dn(1) * dn(2);

        let kq = (k.clone() + S::one()) * (k.clone() + bc.clone() + S::one());
        let kb = (k.clone() + p.b.clone()) * (k.clone() + p.c.clone());
        let c2b2 = p.c.clone() * p.c.clone() - p.b.clone() * p.b.clone();
        let den = |v: S, d: S| checked_div(v, d, "shift ladder denominator", idx);

        // raising in k
        let t = kq.clone()
            * (n.clone() + k.clone() + abc.clone() + two.clone())
            * (n.clone() + k.clone() + abc.clone() + S::from_int(3));
        push(&mut op, idx, 1, 1, den(t, d1.clone() * d2.clone())?);
        let t = two.clone()
            * kq.clone()
            * (n.clone() - k.clone() + p.a.clone())
            * (n.clone() + k.clone() + abc.clone() + two.clone());
        push(&mut op, idx, 0, 1, den(t, d1.clone() * d2p.clone())?);
        let t = kq
            * (n.clone() - k.clone() + p.a.clone() - S::one())
            * (n.clone() - k.clone() + p.a.clone());
        push(&mut op, idx, -1, 1, den(t, d1 * d2pp.clone())?);

        // staying in k
        let t = c2b2.clone()
            * (n.clone() - k.clone() + S::one())
            * (n.clone() + k.clone() + abc.clone() + two.clone());
        push(&mut op, idx, 1, 0, den(t, two.clone() * d1pp.clone() * d2.clone())?);
        let t = den(S::one(), d1pp.clone())?
            + den(S::one(), d2p.clone())?
            + den(
                S::one() - p.a.clone() * p.a.clone(),
                d1pp.clone() * d2p.clone(),
            )?;
        push(&mut op, idx, 0, 0, c2b2.clone() * quarter.clone() * t);
        let t = c2b2
            * (n.clone() - k.clone() + p.a.clone())
            * (n.clone() + k.clone() + bc.clone() + S::one());
        push(&mut op, idx, -1, 0, den(t, two.clone() * d1pp * d2pp.clone())?);

        // lowering in k
        let t = kb.clone()
            * (n.clone() - k.clone() + S::one())
            * (n.clone() - k.clone() + two.clone());
        push(&mut op, idx, 1, -1, den(t, d1p.clone() * d2)?);
        let t = two.clone()
            * kb.clone()
            * (n.clone() - k.clone() + S::one())
            * (n.clone() + k.clone() + bc.clone() + S::one());
        push(&mut op, idx, 0, -1, den(t, d1p.clone() * d2p)?);
        let t = kb
            * (n.clone() + k.clone() + bc.clone())
            * (n.clone() + k.clone() + bc.clone() + S::one());
        push(&mut op, idx, -1, -1, den(t, d1p * d2pp)?);
    }
    Ok(op)
}

/// Diagonal operator −k(k+b+c+1).
pub fn op_l1<S: Scalar>(p: &TriParams<S>, nmax: u32) -> Result<LatticeOp<S>> {
    let bc = p.b.clone() + p.c.clone();
    let mut op = LatticeOp::zero(nmax);
    for idx in lattice_indices(nmax) {
        let LabelScalars { k, .. } = labels::<S>(idx);
        push(
            &mut op,
            idx,
            0,
            0,
            -(k.clone() * (k + bc.clone() + S::one())),
        );
    }
    Ok(op)
}

/// Diagonal operator −n(n+a+b+c+2).
pub fn op_l<S: Scalar>(p: &TriParams<S>, nmax: u32) -> Result<LatticeOp<S>> {
    let abc = p.sum();
    let mut op = LatticeOp::zero(nmax);
    for idx in lattice_indices(nmax) {
        let LabelScalars { n, .. } = labels::<S>(idx);
        push(
            &mut op,
            idx,
            0,
            0,
            -(n.clone() * (n + abc.clone() + S::from_int(2))),
        );
    }
    Ok(op)
}

/// Tridiagonal-in-k operator; n-preserving.
pub fn op_l3<S: Scalar>(p: &TriParams<S>, nmax: u32) -> Result<LatticeOp<S>> {
    let abc = p.sum();
    let bc = p.b.clone() + p.c.clone();
    let two = S::from_int(2);
    let mut op = LatticeOp::zero(nmax);
    for idx in lattice_indices(nmax) {
        let LabelScalars { n, k } = labels::<S>(idx);
        let dk = |j: i64| k.clone() + k.clone() + bc.clone() + S::from_int(j);

        let t = (k.clone() + p.b.clone())
            * (k.clone() + p.c.clone())
            * (n.clone() - k.clone() + S::one())
            * (n.clone() + k.clone() + bc.clone() + S::one());
        push(
            &mut op,
            idx,
            0,
            -1,
            checked_div(t, dk(0) * dk(1), "pair ladder denominator", idx)?,
        );

        let t = (k.clone() + S::one())
            * (k.clone() + bc.clone() + S::one())
            * (n.clone() - k.clone() + p.a.clone())
            * (n.clone() + k.clone() + abc.clone() + two.clone());
        push(
            &mut op,
            idx,
            0,
            1,
            checked_div(t, dk(1) * dk(2), "pair ladder denominator", idx)?,
        );

        let lead = (k.clone() - n.clone()) * (n.clone() - k.clone() + p.a.clone() + p.b.clone() + S::one());
        let t1 = k.clone()
            * (k.clone() + p.c.clone())
            * (n.clone() - k.clone() + S::one())
            * (n.clone() - k.clone() + p.a.clone() + S::one());
        let t2 = (k.clone() + S::one())
            * (k.clone() + p.c.clone() + S::one())
            * (n.clone() - k.clone())
            * (n.clone() - k.clone() + p.a.clone());
        let stay = lead - checked_div(t1, dk(0), "pair ladder denominator", idx)?
            + checked_div(t2, dk(2), "pair ladder denominator", idx)?;
        push(&mut op, idx, 0, 0, stay);
    }
    Ok(op)
}

/// Derived generator I − X̂₁ − X̂₃ (multiplication by y).
pub fn op_x2<S: Scalar>(p: &TriParams<S>, nmax: u32) -> Result<LatticeOp<S>> {
    Ok(LatticeOp::identity(nmax)
        .sub(&op_x1(p, nmax)?)
        .sub(&op_x3(p, nmax)?))
}

/// Derived generator L̂ − L̂₁ − L̂₃.
pub fn op_l2<S: Scalar>(p: &TriParams<S>, nmax: u32) -> Result<LatticeOp<S>> {
    Ok(op_l(p, nmax)?
        .sub(&op_l1(p, nmax)?)
        .sub(&op_l3(p, nmax)?))
}

/// The five generators plus the two derived ones on a common window.
pub struct LatticeRealization<S> {
    pub x1: LatticeOp<S>,
    pub x2: LatticeOp<S>,
    pub x3: LatticeOp<S>,
    pub l1: LatticeOp<S>,
    pub l2: LatticeOp<S>,
    pub l3: LatticeOp<S>,
    pub l: LatticeOp<S>,
}

impl<S: Scalar> LatticeRealization<S> {
    pub fn new(p: &TriParams<S>, nmax: u32) -> Result<Self> {
        let x1 = op_x1(p, nmax)?;
        let x3 = op_x3(p, nmax)?;
        let l1 = op_l1(p, nmax)?;
        let l3 = op_l3(p, nmax)?;
        let l = op_l(p, nmax)?;
        let x2 = LatticeOp::identity(nmax).sub(&x1).sub(&x3);
        let l2 = l.sub(&l1).sub(&l3);
        Ok(Self {
            x1,
            x2,
            x3,
            l1,
            l2,
            l3,
            l,
        })
    }
}
