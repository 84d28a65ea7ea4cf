//! Gauss quadrature for the interval weight xᵃ(1−x)ᵇ on [0, 1] and, through
//! the substitution x = u, y = (1−u)v, for the triangle weight
//! xᵃ yᵇ (1−x−y)ᶜ on the unit simplex.

use crate::error::{KernelError, Result};
use crate::scalar::ln_abs_gamma;
use crate::triangle::TriParams;
use nalgebra::{DMatrix, SymmetricEigen};

#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct TriangleRule {
    pub nodes: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
}

impl TriangleRule {
    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&(x, y), &w)| w * f(x, y))
            .sum()
    }
}

/// ∫₀¹ xᵃ(1−x)ᵇ dx = Γ(a+1)Γ(b+1)/Γ(a+b+2).
fn total_mass(a: f64, b: f64) -> Result<f64> {
    let (la, _) = ln_abs_gamma(a + 1.0)?;
    let (lb, _) = ln_abs_gamma(b + 1.0)?;
    let (lab, _) = ln_abs_gamma(a + b + 2.0)?;
    Ok((la + lb - lab).exp())
}

/// n-point Gauss rule for xᵃ(1−x)ᵇ on [0, 1], exact on degrees ≤ 2n−1.
///
/// Nodes are the eigenvalues of the symmetric tridiagonal recurrence matrix;
/// weights come from the first eigenvector components. The n = 0 and n = 1
/// recurrence coefficients use cancelled forms so a + b near 0 or −1 does
/// not produce 0/0.
pub fn gauss_jacobi_01(n: usize, a: f64, b: f64) -> Result<GaussRule> {
    if !(a > -1.0 && b > -1.0) {
        return Err(KernelError::Domain(format!(
            "integrable weight needs a, b > -1, got a = {a}, b = {b}"
        )));
    }
    if n == 0 {
        return Err(KernelError::Domain("quadrature rule needs n >= 1".into()));
    }
    let s = a + b;
    let diag = |j: usize| -> f64 {
        if j == 0 {
            (a + 1.0) / (s + 2.0)
        } else {
            let t = 2.0 * j as f64 + s;
            0.5 * (1.0 + (a - b) * s / (t * (t + 2.0)))
        }
    };
    let off = |j: usize| -> f64 {
        // e_j connects degrees j−1 and j
        if j == 1 {
            ((1.0 + a) * (1.0 + b) / ((s + 2.0).powi(2) * (s + 3.0))).sqrt()
        } else {
            let jf = j as f64;
            let t = 2.0 * jf + s;
            (jf * (jf + s) * (jf + a) * (jf + b) / ((t - 1.0) * t * t * (t + 1.0))).sqrt()
        }
    };
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(j, j)] = diag(j);
        if j > 0 {
            let e = off(j);
            m[(j, j - 1)] = e;
            m[(j - 1, j)] = e;
        }
    }
    let eig = SymmetricEigen::new(m);
    let mu0 = total_mass(a, b)?;
    let mut rule: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    rule.sort_by(|p, q| p.0.total_cmp(&q.0));
    Ok(GaussRule {
        nodes: rule.iter().map(|p| p.0).collect(),
        weights: rule.iter().map(|p| p.1).collect(),
    })
}

/// Product rule on the simplex for xᵃ yᵇ (1−x−y)ᶜ, exact for total degree
/// ≤ 2n−1: an n-point (a, b+c+1) rule in u times an n-point (b, c) rule in
/// v, mapped through x = u, y = (1−u)v.
pub fn triangle_rule(n: usize, p: &TriParams<f64>) -> Result<TriangleRule> {
    let u_rule = gauss_jacobi_01(n, p.a, p.b + p.c + 1.0)?;
    let v_rule = gauss_jacobi_01(n, p.b, p.c)?;
    let mut nodes = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for (&u, &wu) in u_rule.nodes.iter().zip(&u_rule.weights) {
        for (&v, &wv) in v_rule.nodes.iter().zip(&v_rule.weights) {
            nodes.push((u, (1.0 - u) * v));
            weights.push(wu * wv);
        }
    }
    Ok(TriangleRule { nodes, weights })
}
