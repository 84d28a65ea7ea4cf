//! Named verification suites. Each driver assembles the checks behind one
//! `verify` subcommand and the acceptance harness; all randomness flows
//! through a caller-supplied seed, so reports are reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra;
use crate::connection;
use crate::error::Result;
use crate::poly::BivarPoly;
use crate::quadrature;
use crate::racah::RacahParams;
use crate::report::Check;
use crate::scalar::{format_rat, rat, Rat, Scalar};
use crate::triangle::{
    family_poly, lattice_indices, tri_norm, unreduced_family_poly, Family, TriIndex, TriParams,
};

/// Lowercase family tag used in CLI flags and check ids.
pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::E => "e",
        Family::Pi => "pi",
        Family::Sigma => "sigma",
        Family::Tau => "tau",
        Family::R2 => "rot1",
        Family::R4 => "rot2",
    }
}

pub fn parse_family(s: &str) -> Option<Family> {
    Family::ALL.into_iter().find(|&f| family_name(f) == s)
}

fn sample_rat(rng: &mut ChaCha8Rng) -> Rat {
    let q = rng.gen_range(2i64..=13);
    let p = rng.gen_range(-q + 1..=5 * q - 1);
    rat(p, q)
}

fn degenerate(p: &TriParams<Rat>) -> bool {
    [
        p.a.clone() + p.b.clone(),
        p.b.clone() + p.c.clone(),
        p.a.clone() + p.c.clone(),
        p.sum(),
    ]
    .iter()
    .any(|s| matches!(s.as_integer(), Some(v) if v <= 0))
}

/// Random rational triple in (−1, 5)³ with denominators ≤ 13, rejecting
/// triples whose pairwise or total sums are nonpositive integers (those
/// zero printed denominators in the operator coefficients and norms).
pub fn sample_params(rng: &mut ChaCha8Rng) -> TriParams<Rat> {
    loop {
        let p = TriParams::new(sample_rat(rng), sample_rat(rng), sample_rat(rng));
        if !degenerate(&p) {
            return p;
        }
    }
}

fn param_label(p: &TriParams<Rat>) -> String {
    format!(
        "(a, b, c) = ({}, {}, {})",
        format_rat(&p.a),
        format_rat(&p.b),
        format_rat(&p.c)
    )
}

fn retag(mut c: Check, suffix: &str, context: &str) -> Check {
    c.id = format!("{}-{}", c.id, suffix);
    c.detail = format!("{}; {}", context, c.detail);
    c
}

/// Defining relations of the five-generator algebra: the differential
/// realization at `trials` sampled triples, plus one lattice-window pass.
pub fn run_algebra(seed: u64, trials: usize, lattice_nmax: u32) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for t in 0..trials {
        let p = sample_params(&mut rng);
        let tag = param_label(&p);
        checks.extend(
            algebra::verify_defining_relations(&p)
                .into_iter()
                .map(|r| retag(r.into(), &format!("s{t}"), &tag)),
        );
        if t == 0 {
            checks.extend(
                algebra::verify_defining_relations_lattice(&p, lattice_nmax)?
                    .into_iter()
                    .map(|r| retag(r.into(), "s0", &tag)),
            );
        }
    }
    Ok(checks)
}

/// Rank-one subalgebra certification at `trials` sampled triples.
pub fn run_subalgebras(seed: u64, trials: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for t in 0..trials {
        let p = sample_params(&mut rng);
        let tag = param_label(&p);
        checks.extend(
            algebra::verify_rank1_subalgebras(&p)?
                .into_iter()
                .map(|r| retag(r.into(), &format!("s{t}"), &tag)),
        );
    }
    Ok(checks)
}

/// Exact intertwining between the differential and lattice realizations on
/// a sampled triple and on one pinned triple.
pub fn run_intertwine(seed: u64, nmax: u32) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for (suffix, p) in [
        ("pinned", TriParams::new(rat(1, 2), rat(1, 3), rat(3, 4))),
        ("sampled", sample_params(&mut rng)),
    ] {
        let tag = param_label(&p);
        checks.extend(
            algebra::verify_intertwining(&p, nmax)?
                .into_iter()
                .map(|r| retag(r.into(), suffix, &tag)),
        );
    }
    Ok(checks)
}

/// Hermiticity: exact detailed balance on a sampled rational triple and a
/// float Gram-matrix symmetry test.
pub fn run_hermiticity(seed: u64, nmax: u32, npts: usize, tol: f64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = sample_params(&mut rng);
    let tag = param_label(&p);
    let mut checks: Vec<Check> = algebra::verify_hermiticity_exact(&p, nmax)?
        .into_iter()
        .map(|r| retag(r.into(), "exact", &tag))
        .collect();
    let pf = TriParams::new(p.a.to_f64(), p.b.to_f64(), p.c.to_f64());
    checks.extend(
        algebra::verify_hermiticity_gram(&pf, nmax, npts, tol)?
            .into_iter()
            .map(Check::from),
    );
    Ok(checks)
}

/// Quadrature orthogonality of the plain, reversed, and swapped families
/// against the closed-form norms, degrees n ≤ nmax.
pub fn run_orthogonality(
    p: &TriParams<f64>,
    set_label: &str,
    nmax: u32,
    npts: usize,
    tol: f64,
) -> Result<Vec<Check>> {
    let rule = quadrature::triangle_rule(npts, p)?;
    let indices = lattice_indices(nmax);
    let mut checks = Vec::new();
    for fam in [Family::E, Family::Pi, Family::Sigma] {
        let fp = fam.params(p);
        let polys: Vec<BivarPoly<f64>> = indices
            .iter()
            .map(|&i| family_poly(p, fam, i))
            .collect::<Result<_>>()?;
        let norms: Vec<f64> = indices
            .iter()
            .map(|&i| tri_norm(&fp, i))
            .collect::<Result<_>>()?;
        let mut worst = 0f64;
        for i in 0..indices.len() {
            for j in i..indices.len() {
                let g = rule.integrate(|x, y| polys[i].eval(&x, &y) * polys[j].eval(&x, &y));
                let target = if i == j { norms[i] } else { 0.0 };
                worst = worst.max((g - target).abs() / (norms[i] * norms[j]).sqrt());
            }
        }
        checks.push(Check::from_residual(
            format!("orthogonality-{}-{}", family_name(fam), set_label),
            "weighted triangle inner products are diagonal with the closed-form norms",
            worst,
            tol,
            format!(
                "family {} at (a, b, c) = ({}, {}, {}), n <= {nmax}, {npts}x{npts}-point rule",
                family_name(fam),
                p.a,
                p.b,
                p.c
            ),
        ));
    }
    Ok(checks)
}

fn interior_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let x: f64 = rng.gen_range(0.05..0.90);
        let y: f64 = rng.gen_range(0.05..0.90);
        if x + y < 0.95 {
            pts.push((x, y));
        }
    }
    pts
}

/// Float connection suite: pointwise reconstruction of the three
/// expansions, matrix orthogonality, composition coherence, and the
/// integral form of the overlaps.
#[allow(clippy::too_many_arguments)]
pub fn run_connection(
    p: &TriParams<f64>,
    set_label: &str,
    seed: u64,
    recon_nmax: u32,
    matrix_nmax: u32,
    npoints: usize,
    tol_recon: f64,
    tol_orth: f64,
) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = interior_points(&mut rng, npoints);
    let mut checks = Vec::new();

    type Expander = fn(u32, u32, &TriParams<f64>, f64, f64) -> Result<f64>;
    let expanders: [(&str, Family, Expander); 3] = [
        ("pi-in-e", Family::Pi, connection::expand_pi_in_e),
        ("sigma-in-e", Family::Sigma, connection::expand_sigma_in_e),
        ("sigma-in-pi", Family::Sigma, connection::expand_sigma_in_pi),
    ];
    for (name, truth_family, expand) in expanders {
        let mut worst = 0f64;
        for n in 0..=recon_nmax {
            for ell in 0..=n {
                for &(x, y) in &pts {
                    let truth =
                        crate::triangle::tri_family_eval(p, truth_family, TriIndex::new(n, ell), &x, &y)?;
                    let got = expand(n, ell, p, x, y)?;
                    worst = worst.max((got - truth).abs() / truth.abs().max(1.0));
                }
            }
        }
        checks.push(Check::from_residual(
            format!("connection-reconstruct-{name}-{set_label}"),
            "overlap-weighted sums of one family reproduce the other pointwise",
            worst,
            tol_recon,
            format!("n <= {recon_nmax}, {npoints} interior points"),
        ));
    }

    type Builder = fn(u32, &TriParams<f64>) -> Result<connection::ConnectionMatrix>;
    let builders: [(&str, Builder); 3] = [
        ("pi", connection::connection_pi),
        ("sigma", connection::connection_sigma),
        ("sigma-from-pi", connection::connection_sigma_from_pi),
    ];
    for (name, build) in builders {
        let mut worst = 0f64;
        for n in 0..=matrix_nmax {
            worst = worst.max(build(n, p)?.orthogonality_defect());
        }
        checks.push(Check::from_residual(
            format!("connection-orthogonal-{name}-{set_label}"),
            "the change-of-basis matrices are orthogonal",
            worst,
            tol_orth,
            format!("max over n <= {matrix_nmax} of the worst entry of MMt - I and MtM - I"),
        ));
    }

    let mut worst = 0f64;
    for n in 0..=recon_nmax {
        worst = worst.max(connection::coherence_defect(p, n)?);
    }
    checks.push(Check::from_residual(
        format!("connection-coherence-{set_label}"),
        "the direct swap matrix equals the reversal composition",
        worst,
        1e-11,
        format!("Frobenius distance, max over n <= {recon_nmax}"),
    ));

    checks.push(Check::from_residual(
        format!("connection-integral-form-{set_label}"),
        "overlap values match the weighted cross integrals of the two families",
        connection::integral_form_defect(p, 4, 8)?,
        1e-9,
        "n = 4, 8x8-point rule".to_string(),
    ));
    Ok(checks)
}

/// Exact connection certificates over the rationals: solved coefficients
/// square to the closed-form products, phases match, the composition is
/// coherent, and the overlap family is doubly orthogonal and self-dual.
pub fn run_connection_exact(seed: u64, nmax: u32) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for (suffix, p) in [
        ("pinned", TriParams::new(rat(1, 2), rat(1, 3), rat(3, 4))),
        ("sampled", sample_params(&mut rng)),
    ] {
        type Cert = fn(&TriParams<Rat>, u32) -> Result<connection::ExactExpansion>;
        let certs: [(&str, Cert); 3] = [
            ("pi", connection::exact_pi_certificate),
            ("sigma", connection::exact_sigma_certificate),
            ("sigma-from-pi", connection::exact_sigma_via_pi_certificate),
        ];
        for (name, cert) in certs {
            let outcome = (0..=nmax)
                .try_for_each(|n| cert(&p, n).map(|_| ()))
                .map_err(|e| e.to_string());
            checks.push(Check::from_exact(
                format!("connection-exact-{name}-{suffix}"),
                "each solved coefficient squares to weight/norm times the squared overlap",
                outcome,
            ));
        }
        let outcome = (1..=nmax)
            .try_for_each(|n| connection::exact_coherence(&p, n))
            .map_err(|e| e.to_string());
        checks.push(Check::from_exact(
            format!("connection-exact-coherence-{suffix}"),
            "swap coefficients equal the reversal composition, entry by entry",
            outcome,
        ));
        let outcome = (1..=nmax)
            .try_for_each(|n| {
                connection::exact_dual_orthogonality(&connection::pi_overlap_params(n, &p)?)?;
                connection::exact_reflection_duality(&p, n)
            })
            .map_err(|e| e.to_string());
        checks.push(Check::from_exact(
            format!("connection-exact-duality-{suffix}"),
            "overlap rows are dual-orthogonal and self-dual under parameter reversal",
            outcome,
        ));
    }
    Ok(checks)
}

/// Exact Racah suite: one parameter set per admissible truncation case,
/// checking orthogonality, the three-term recurrence, the difference
/// equation, self-duality, and the matrix realization of the algebra.
pub fn run_racah(trunc: u32) -> Result<Vec<Check>> {
    let nf = i64::from(trunc);
    let sets: [(&str, RacahParams<Rat>); 3] = [
        (
            "gamma",
            RacahParams::new(rat(1, 2), rat(1, 3), rat(-nf - 1, 1), rat(2, 7))?,
        ),
        (
            "alpha",
            RacahParams::new(rat(-nf - 1, 1), rat(1, 3), rat(5, 2), rat(2, 7))?,
        ),
        (
            "beta-delta",
            RacahParams::new(rat(1, 2), rat(1, 3), rat(2, 7), rat(-3 * nf - 4, 3))?,
        ),
    ];
    let mut checks = Vec::new();
    for (case, rp) in sets {
        let nn = rp.trunc;
        let zero = <Rat as Scalar>::zero();

        let mut ortho = Ok(());
        'ortho: for n in 0..=nn {
            for m in n..=nn {
                let mut acc = zero.clone();
                for l in 0..=nn {
                    acc += rp.weight(l)? * rp.eval(n, l)? * rp.eval(m, l)?;
                }
                let expect = if n == m { rp.norm(n)? } else { zero.clone() };
                if acc != expect {
                    ortho = Err(format!("orthogonality fails at (n, m) = ({n}, {m})"));
                    break 'ortho;
                }
            }
        }
        checks.push(Check::from_exact(
            format!("racah-orthogonality-{case}"),
            "weighted lattice sums of value products are diagonal with the closed-form norms",
            ortho,
        ));

        let mut rec = Ok(());
        'rec: for n in 0..=nn {
            let (av, cv) = rp.recurrence(n)?;
            for l in 0..=nn {
                let mut rhs = -(av.clone() + cv.clone()) * rp.eval(n, l)?;
                if !av.is_zero() {
                    rhs += av.clone() * rp.eval(n + 1, l)?;
                }
                if n > 0 {
                    rhs += cv.clone() * rp.eval(n - 1, l)?;
                }
                if rp.lambda(l) * rp.eval(n, l)? != rhs {
                    rec = Err(format!("recurrence fails at (n, l) = ({n}, {l})"));
                    break 'rec;
                }
            }
        }
        checks.push(Check::from_exact(
            format!("racah-recurrence-{case}"),
            "spectral multiplication acts tridiagonally in the degree",
            rec,
        ));

        let mut diff = Ok(());
        'diff: for n in 0..=nn {
            let nr = rat(i64::from(n), 1);
            let ev = nr.clone() * (nr + rp.alpha.clone() + rp.beta.clone() + rat(1, 1));
            for l in 0..=nn {
                let (bv, dv) = rp.difference(l)?;
                let mut lhs = -(bv.clone() + dv.clone()) * rp.eval(n, l)?;
                if !bv.is_zero() {
                    lhs += bv.clone() * rp.eval(n, l + 1)?;
                }
                if l > 0 {
                    lhs += dv.clone() * rp.eval(n, l - 1)?;
                }
                if lhs != ev.clone() * rp.eval(n, l)? {
                    diff = Err(format!("difference equation fails at (n, l) = ({n}, {l})"));
                    break 'diff;
                }
            }
        }
        checks.push(Check::from_exact(
            format!("racah-difference-{case}"),
            "the dual ladder acts tridiagonally in the lattice point",
            diff,
        ));

        let dual = rp.dual();
        let mut duality = Ok(());
        'dual: for n in 0..=nn {
            for l in 0..=nn {
                if rp.eval(n, l)? != dual.eval(l, n)? {
                    duality = Err(format!("self-duality fails at (n, l) = ({n}, {l})"));
                    break 'dual;
                }
            }
        }
        checks.push(Check::from_exact(
            format!("racah-duality-{case}"),
            "swapping degree and lattice point matches swapping the parameter pairs",
            duality,
        ));

        checks.push(retag(
            algebra::verify_racah_realization(&rp)?.into(),
            case,
            &format!("truncation case {case}, N = {nn}"),
        ));
    }
    Ok(checks)
}

/// Symmetry-group coherence: the composition table matches coordinate
/// substitution, and the reducible families differ from their reduced
/// representatives by exactly the alternating sign.
pub fn run_group_coherence(nmax: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut table = Ok(());
    'table: for g in Family::ALL {
        for h in Family::ALL {
            let gh = g.compose(h);
            // label permutations compose contravariantly to point maps, so the
            // coordinate polynomials of g∘h arise by substituting g's
            // coordinates into h's
            let (gx, gy) = g.point_polys::<Rat>();
            let (hx, hy) = h.point_polys::<Rat>();
            let (cx, cy) = gh.point_polys::<Rat>();
            if hx.subst(&gx, &gy) != cx || hy.subst(&gx, &gy) != cy {
                table = Err(format!(
                    "composition of {} and {} does not act as {}",
                    family_name(g),
                    family_name(h),
                    family_name(gh)
                ));
                break 'table;
            }
            if g.compose(g.inverse()) != Family::E {
                table = Err(format!("inverse fails for {}", family_name(g)));
                break 'table;
            }
        }
    }
    checks.push(Check::from_exact(
        "group-cayley-table",
        "the six symmetries compose as coordinate substitution",
        table,
    ));

    let p = TriParams::new(rat(1, 2), rat(1, 3), rat(3, 4));
    let mut phases = Ok(());
    'phase: for g in [Family::Tau, Family::R2, Family::R4] {
        for idx in lattice_indices(nmax) {
            let direct = unreduced_family_poly(&p, g, idx)?;
            let reduced = unreduced_family_poly(&p, g.reduced(), idx)?
                .scale(&rat(g.phase_sign(idx.k), 1));
            if direct != reduced {
                phases = Err(format!(
                    "phase identity fails for {} at (n, k) = ({}, {})",
                    family_name(g),
                    idx.n,
                    idx.k
                ));
                break 'phase;
            }
        }
    }
    checks.push(Check::from_exact(
        "group-phase-identities",
        "reflections fixing the x-slot act on members by the alternating sign",
        phases,
    ));
    Ok(checks)
}

/// Univariate bispectrality: the hypergeometric operator has the stated
/// eigenvalues and the multiplication operator acts by the three-term
/// recurrence, exactly, degrees n ≤ nmax, over sampled parameter pairs.
pub fn run_univariate(seed: u64, pairs: usize, nmax: u32) -> Result<Vec<Check>> {
    use crate::jacobi1d;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for t in 0..pairs {
        // same admissibility rule as the triple sampler, on (a, b) alone
        let (a, b) = loop {
            let a = sample_rat(&mut rng);
            let b = sample_rat(&mut rng);
            if !matches!((a.clone() + b.clone()).as_integer(), Some(v) if v <= 0) {
                break (a, b);
            }
        };
        let tag = format!("(a, b) = ({}, {})", format_rat(&a), format_rat(&b));

        let op = jacobi1d::diffop(&a, &b);
        let affine = BivarPoly::one() - BivarPoly::x().scale(&rat(2, 1));
        let mut eig = Ok(());
        let mut rec = Ok(());
        for n in 0..=nmax {
            let pn = jacobi1d::poly::<Rat>(n, &a, &b)?;
            let lhs = op.apply(&pn);
            if lhs != pn.scale(&jacobi1d::eigenvalue(n, &a, &b)) {
                eig = Err(format!("eigenvalue identity fails at n = {n}, {tag}"));
                break;
            }
            let rc = jacobi1d::recurrence(n, &a, &b)?;
            let mut rhs = pn.scale(&rc.c_zero);
            if !rc.c_plus.is_zero() {
                rhs = &rhs + &jacobi1d::poly::<Rat>(n + 1, &a, &b)?.scale(&rc.c_plus);
            }
            if n > 0 {
                rhs = &rhs + &jacobi1d::poly::<Rat>(n - 1, &a, &b)?.scale(&rc.c_minus);
            }
            if &affine * &pn != rhs {
                rec = Err(format!("recurrence fails at n = {n}, {tag}"));
                break;
            }
        }
        checks.push(Check::from_exact(
            format!("univariate-eigenvalue-p{t}"),
            "the second-order operator acts diagonally with eigenvalue -n(n+a+b+1)",
            eig,
        ));
        checks.push(Check::from_exact(
            format!("univariate-recurrence-p{t}"),
            "multiplication by x is tridiagonal in the degree",
            rec,
        ));
    }
    Ok(checks)
}
