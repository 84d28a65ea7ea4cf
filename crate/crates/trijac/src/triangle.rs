//! Orthogonal polynomial basis on the triangle x, y ≥ 0, x + y ≤ 1 with
//! weight xᵃ yᵇ (1−x−y)ᶜ.
//!
//! The basis factors through two univariate Jacobi families:
//!
//!   J_{n,k}(x, y) = J_{n−k}^{(a, b+c+2k+1)}(x) · (1−x)ᵏ J_k^{(b,c)}(y/(1−x))
//!
//! with 0 ≤ k ≤ n. The second factor is expanded as Σ_j c_j yʲ (1−x)^{k−j},
//! so no division by 1−x ever happens and the edge x = 1 is safe.
//!
//! The symmetry group of the triangle permutes the barycentric coordinates
//! (x, y, 1−x−y) and the exponents (a, b, c) simultaneously; [`Family`]
//! enumerates the six images of the basis under that action.

use crate::error::Result;
use crate::jacobi1d;
use crate::poly::BivarPoly;
use crate::scalar::Scalar;

/// Weight exponents (a, b, c) on x, y, and 1−x−y.
#[derive(Clone, Debug, PartialEq)]
pub struct TriParams<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> TriParams<S> {
    pub fn new(a: S, b: S, c: S) -> Self {
        Self { a, b, c }
    }

    /// Jacobi parameter in the x factor that accompanies degree offset k:
    /// b + c + 2k + 1.
    pub fn outer_b(&self, k: u32) -> S {
        self.b.clone() + self.c.clone() + S::from_int(2 * i64::from(k) + 1)
    }

    pub fn sum(&self) -> S {
        self.a.clone() + self.b.clone() + self.c.clone()
    }
}

/// Basis label (n, k) with 0 ≤ k ≤ n; n is the total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriIndex {
    pub n: u32,
    pub k: u32,
}

impl TriIndex {
    pub fn new(n: u32, k: u32) -> Self {
        assert!(k <= n, "triangle index needs k <= n, got ({n}, {k})");
        Self { n, k }
    }
}

/// All indices with n ≤ nmax, ordered by (n, k).
pub fn lattice_indices(nmax: u32) -> Vec<TriIndex> {
    (0..=nmax)
        .flat_map(|n| (0..=n).map(move |k| TriIndex { n, k }))
        .collect()
}

/// Coefficients c_j of J_k^{(b,c)} so that the inner factor is
/// Σ_j c_j yʲ (1−x)^{k−j}.
fn inner_coeffs<S: Scalar>(p: &TriParams<S>, k: u32) -> Result<Vec<S>> {
    Ok(jacobi1d::poly(k, &p.b, &p.c)?.univar_coeffs_x())
}

/// J_{n,k}(x, y).
pub fn tri_eval<S: Scalar>(p: &TriParams<S>, idx: TriIndex, x: &S, y: &S) -> Result<S> {
    let TriIndex { n, k } = idx;
    let outer = jacobi1d::eval(n - k, &p.a, &p.outer_b(k), x)?;
    let coeffs = inner_coeffs(p, k)?;
    let omx = S::one() - x.clone();
    // Horner in (1-x): sum = c_0 (1-x)^k + c_1 y (1-x)^{k-1} + ... + c_k y^k
    let mut inner = S::zero();
    for (j, c) in coeffs.iter().enumerate() {
        inner = inner * omx.clone();
        let mut term = c.clone();
        for _ in 0..j {
            term = term * y.clone();
        }
        inner = inner + term;
    }
    Ok(outer * inner)
}

/// J_{n,k} as an explicit bivariate polynomial.
pub fn tri_poly<S: Scalar>(p: &TriParams<S>, idx: TriIndex) -> Result<BivarPoly<S>> {
    let TriIndex { n, k } = idx;
    let outer = jacobi1d::poly(n - k, &p.a, &p.outer_b(k))?;
    let coeffs = inner_coeffs(p, k)?;
    let omx = BivarPoly::<S>::one() - BivarPoly::x();
    let mut inner = BivarPoly::zero();
    for (j, c) in coeffs.iter().enumerate() {
        let mut term = omx.pow(k - j as u32).scale(c);
        term = &term * &BivarPoly::monomial(0, j as u32, S::one());
        inner = &inner + &term;
    }
    Ok(&outer * &inner)
}

/// Squared L² norm against xᵃ yᵇ (1−x−y)ᶜ: the product of the two univariate
/// norms. Exact mode needs integer-pairing gamma arguments; see
/// [`tri_norm_ratio`] for the generic-parameter exact quantity.
pub fn tri_norm<S: Scalar>(p: &TriParams<S>, idx: TriIndex) -> Result<S> {
    let TriIndex { n, k } = idx;
    Ok(jacobi1d::norm(n - k, &p.a, &p.outer_b(k))? * jacobi1d::norm(k, &p.b, &p.c)?)
}

/// N_{i} / N_{j}, exact for arbitrary rational parameters: every gamma factor
/// in the two norms pairs with a partner offset by an integer.
pub fn tri_norm_ratio<S: Scalar>(p: &TriParams<S>, i: TriIndex, j: TriIndex) -> Result<S> {
    let one = S::one();
    let abc = p.sum();
    let bc = p.b.clone() + p.c.clone();
    let gamma_args = |t: TriIndex| -> [S; 8] {
        let kf = S::from_int(i64::from(t.k));
        let npk = S::from_int(i64::from(t.n) + i64::from(t.k));
        let nmk = S::from_int(i64::from(t.n) - i64::from(t.k));
        [
            // numerator gammas of N_t
            nmk.clone() + p.a.clone() + one.clone(),
            npk.clone() + bc.clone() + S::from_int(2),
            kf.clone() + p.b.clone() + one.clone(),
            kf.clone() + p.c.clone() + one.clone(),
            // denominator gammas of N_t
            nmk + one.clone(),
            npk + abc.clone() + S::from_int(2),
            kf.clone() + one.clone(),
            kf + bc.clone() + one.clone(),
        ]
    };
    let gi = gamma_args(i);
    let gj = gamma_args(j);
    let num: Vec<S> = gi[..4].iter().chain(gj[4..].iter()).cloned().collect();
    let den: Vec<S> = gj[..4].iter().chain(gi[4..].iter()).cloned().collect();
    let g = crate::hyper::gamma_ratio(&num, &den)?;
    let front = |t: TriIndex| -> S {
        (S::from_int(2 * i64::from(t.n) + 2) + abc.clone())
            * (S::from_int(2 * i64::from(t.k) + 1) + bc.clone())
    };
    Ok(g * front(j) / front(i))
}

impl TriParams<f64> {
    /// Weight xᵃ yᵇ (1−x−y)ᶜ at an interior point.
    pub fn weight(&self, x: f64, y: f64) -> f64 {
        x.powf(self.a) * y.powf(self.b) * (1.0 - x - y).powf(self.c)
    }
}

/// The six symmetries of the triangle, acting jointly on the weight
/// exponents and the barycentric coordinates (x, y, 1−x−y).
///
/// `E`, `Pi`, `Sigma`, `Tau` are the identity and the three reflections;
/// `R2` and `R4` are the rotations by 2π/3 and 4π/3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    E,
    Pi,
    Sigma,
    Tau,
    R2,
    R4,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::E,
        Family::Pi,
        Family::Sigma,
        Family::Tau,
        Family::R2,
        Family::R4,
    ];

    /// Index permutation s: the image tuple is t'ᵢ = t_{s(i)}, applied to
    /// both (a, b, c) and (x, y, 1−x−y).
    fn perm(self) -> [usize; 3] {
        match self {
            Family::E => [0, 1, 2],
            Family::Pi => [2, 1, 0],
            Family::Sigma => [1, 0, 2],
            Family::Tau => [0, 2, 1],
            Family::R2 => [1, 2, 0],
            Family::R4 => [2, 0, 1],
        }
    }

    fn from_perm(p: [usize; 3]) -> Family {
        Family::ALL
            .into_iter()
            .find(|f| f.perm() == p)
            .expect("every permutation of three slots is represented")
    }

    /// Group product on label permutations: (g ∘ h) applies h's permutation
    /// first. On coordinate maps the order reverses, so the point polynomials
    /// of (g ∘ h) arise by substituting g's coordinates into h's.
    pub fn compose(self, h: Family) -> Family {
        let sg = self.perm();
        let sh = h.perm();
        Family::from_perm([sg[sh[0]], sg[sh[1]], sg[sh[2]]])
    }

    pub fn inverse(self) -> Family {
        let s = self.perm();
        let mut inv = [0usize; 3];
        for (i, &si) in s.iter().enumerate() {
            inv[si] = i;
        }
        Family::from_perm(inv)
    }

    /// Permuted weight exponents.
    pub fn params<S: Scalar>(self, p: &TriParams<S>) -> TriParams<S> {
        let t = [p.a.clone(), p.b.clone(), p.c.clone()];
        let s = self.perm();
        TriParams::new(t[s[0]].clone(), t[s[1]].clone(), t[s[2]].clone())
    }

    /// Permuted coordinates as polynomials in (x, y).
    pub fn point_polys<S: Scalar>(self) -> (BivarPoly<S>, BivarPoly<S>) {
        let t = [BivarPoly::x(), BivarPoly::y(), BivarPoly::z()];
        let s = self.perm();
        (t[s[0]].clone(), t[s[1]].clone())
    }

    /// Permuted coordinates at a numeric point.
    pub fn point<S: Scalar>(self, x: &S, y: &S) -> (S, S) {
        let z = S::one() - x.clone() - y.clone();
        let t = [x.clone(), y.clone(), z];
        let s = self.perm();
        (t[s[0]].clone(), t[s[1]].clone())
    }

    /// The representative with the same span: reflections in y/z reduce to
    /// the identity-, σ-, or π-image up to the sign (−1)ᵏ.
    pub fn reduced(self) -> Family {
        match self {
            Family::E | Family::Pi | Family::Sigma => self,
            Family::Tau => Family::E,
            Family::R2 => Family::Sigma,
            Family::R4 => Family::Pi,
        }
    }

    /// Sign relating this family member to its [`reduced`](Self::reduced)
    /// representative at label (n, k): +1, or (−1)ᵏ for Tau/R2/R4.
    pub fn phase_sign(self, k: u32) -> i64 {
        match self {
            Family::E | Family::Pi | Family::Sigma => 1,
            Family::Tau | Family::R2 | Family::R4 => {
                if k.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

/// g-image of J_{n,k} built literally: permuted parameters, substituted
/// coordinates. Reference implementation for [`family_poly`].
pub fn unreduced_family_poly<S: Scalar>(
    p: &TriParams<S>,
    g: Family,
    idx: TriIndex,
) -> Result<BivarPoly<S>> {
    let base = tri_poly(&g.params(p), idx)?;
    let (px, py) = g.point_polys();
    Ok(base.subst(&px, &py))
}

/// g-image of J_{n,k} through the reduced representative and phase.
pub fn family_poly<S: Scalar>(p: &TriParams<S>, g: Family, idx: TriIndex) -> Result<BivarPoly<S>> {
    let r = g.reduced();
    let base = unreduced_family_poly(p, r, idx)?;
    Ok(base.scale(&S::from_int(g.phase_sign(idx.k))))
}

/// g-image of J_{n,k} at a numeric point, evaluated without materializing
/// the polynomial.
pub fn tri_family_eval<S: Scalar>(
    p: &TriParams<S>,
    g: Family,
    idx: TriIndex,
    x: &S,
    y: &S,
) -> Result<S> {
    let r = g.reduced();
    let (u, v) = r.point(x, y);
    let val = tri_eval(&r.params(p), idx, &u, &v)?;
    Ok(val * S::from_int(g.phase_sign(idx.k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;

    fn params() -> TriParams<Rat> {
        TriParams::new(rat(1, 2), rat(1, 3), rat(3, 4))
    }

    #[test]
    fn degree_one_members() {
        let p = params();
        // J_{1,0} = (a+1) − (a+b+c+3)x
        let j10 = tri_poly(&p, TriIndex::new(1, 0)).unwrap();
        assert_eq!(j10.coeff(0, 0), &p.a + rat(1, 1));
        assert_eq!(j10.coeff(1, 0), -(&p.sum() + rat(3, 1)));
        assert_eq!(j10.coeff(0, 1), rat(0, 1));
        // J_{1,1} = (b+1)(1−x) − (b+c+2)y
        let j11 = tri_poly(&p, TriIndex::new(1, 1)).unwrap();
        assert_eq!(j11.coeff(0, 0), &p.b + rat(1, 1));
        assert_eq!(j11.coeff(1, 0), -(&p.b + rat(1, 1)));
        assert_eq!(j11.coeff(0, 1), -(&p.b + &p.c + rat(2, 1)));
    }

    #[test]
    fn eval_matches_poly_including_edge_x_equals_one() {
        let p = params();
        let pts = [
            (rat(1, 5), rat(2, 5)),
            (rat(0, 1), rat(0, 1)),
            (rat(1, 1), rat(0, 1)),
            (rat(3, 7), rat(4, 7)),
        ];
        for idx in lattice_indices(4) {
            let poly = tri_poly(&p, idx).unwrap();
            for (x, y) in &pts {
                assert_eq!(
                    tri_eval(&p, idx, x, y).unwrap(),
                    poly.eval(x, y),
                    "idx = {idx:?}, x = {x}, y = {y}"
                );
            }
        }
    }

    #[test]
    fn total_degree_is_n() {
        let p = params();
        for idx in lattice_indices(5) {
            let poly = tri_poly(&p, idx).unwrap();
            assert_eq!(poly.total_degree(), idx.n);
        }
    }

    #[test]
    fn norm_ratio_matches_float_norms() {
        let p = params();
        let pf = TriParams::new(0.5, 1.0 / 3.0, 0.75);
        let i = TriIndex::new(4, 2);
        let j = TriIndex::new(3, 1);
        let exact: Rat = tri_norm_ratio(&p, i, j).unwrap();
        let ni = tri_norm(&pf, i).unwrap();
        let nj = tri_norm(&pf, j).unwrap();
        assert!((Scalar::to_f64(&exact) - ni / nj).abs() < 1e-12);
    }

    #[test]
    fn norm_ratio_with_identical_indices_is_one() {
        let p = params();
        let i = TriIndex::new(5, 3);
        assert_eq!(tri_norm_ratio(&p, i, i).unwrap(), rat(1, 1));
    }

    #[test]
    fn group_table_round_trips() {
        for g in Family::ALL {
            assert_eq!(g.compose(g.inverse()), Family::E);
            assert_eq!(g.inverse().compose(g), Family::E);
            assert_eq!(Family::E.compose(g), g);
        }
        assert_eq!(Family::Pi.compose(Family::Sigma), Family::R2);
        assert_eq!(Family::Sigma.compose(Family::Pi), Family::R4);
        assert_eq!(Family::R2.compose(Family::R2), Family::R4);
        assert_eq!(Family::R2.compose(Family::R4), Family::E);
    }

    #[test]
    fn substitution_action_composes_along_the_group_product() {
        // f(m_h(m_g(x,y))) must equal f(m_{g∘h}(x,y)) for every pair
        let f = {
            let mut f = BivarPoly::<Rat>::zero();
            f.add_term(2, 0, rat(3, 1));
            f.add_term(1, 1, rat(-5, 2));
            f.add_term(0, 1, rat(7, 3));
            f.add_term(0, 0, rat(1, 4));
            f
        };
        for g in Family::ALL {
            for h in Family::ALL {
                let (hx, hy) = h.point_polys::<Rat>();
                let inner = f.subst(&hx, &hy);
                let (gx, gy) = g.point_polys::<Rat>();
                let two_step = inner.subst(&gx, &gy);
                let (cx, cy) = g.compose(h).point_polys::<Rat>();
                let one_step = f.subst(&cx, &cy);
                assert!(
                    (&two_step - &one_step).is_zero(),
                    "g = {g:?}, h = {h:?}"
                );
            }
        }
    }

    #[test]
    fn reduced_families_reproduce_all_six_images() {
        let p = params();
        for idx in lattice_indices(4) {
            for g in Family::ALL {
                let lit = unreduced_family_poly(&p, g, idx).unwrap();
                let red = family_poly(&p, g, idx).unwrap();
                assert!((&lit - &red).is_zero(), "g = {g:?}, idx = {idx:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn family_eval_agrees_with_family_poly(
            n in 0u32..=4,
            xi in 0i64..=8,
            yi in 0i64..=8,
        ) {
            let p = params();
            let x = rat(xi, 9);
            let y = rat(yi, 9) * (rat(1, 1) - &x);
            for k in 0..=n {
                let idx = TriIndex::new(n, k);
                for g in Family::ALL {
                    let poly = family_poly(&p, g, idx).unwrap();
                    prop_assert_eq!(
                        tri_family_eval(&p, g, idx, &x, &y).unwrap(),
                        poly.eval(&x, &y)
                    );
                }
            }
        }
    }
}
