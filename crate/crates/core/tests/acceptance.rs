use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C;
use poncelet::cli::svg::read_polygons;
use poncelet::error::Error;
use poncelet::geometry::{
    billiard_closure, closure_eccentricity, critical_feasibility, midpoint_word, steiner_foci, two_point_defect,
    ConvexBody, Ellipse,
};
use poncelet::ggt::{contraction_to_verblunsky, ggt_build, head_flip, DEFAULT_CONTRACTION_TOL};
use poncelet::matrix::CMatrix;
use poncelet::numrange::{boundary_distance, boundary_sweep, frame_tangent_points, frames, support_value, uniform_angles};
use poncelet::opuc::{second_kind, szego_forward, verblunsky_from_measure, verblunsky_from_phi, VerblunskyWord};
use poncelet::poly::{roots, MonicPoly, Poly};
use poncelet::popuc::{
    christoffel_weights, popuc_zeros, resolvent_m_function, weights_from_blaschke_derivative,
    weights_from_eigenvectors,
};
use poncelet::schur::{schur_algorithm, schur_params_closed_form, RationalSchurFn};
use poncelet::wendroff::{reconstruct_from_two_popuc, reconstruct_second_kind, CircularConfiguration};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn in_disk(r: &mut ChaCha8Rng, radius: f64) -> C {
    C::from_polar(radius * r.gen::<f64>().sqrt(), r.gen_range(0.0..TAU))
}

fn unimodular(r: &mut ChaCha8Rng) -> C {
    C::from_polar(1.0, r.gen_range(0.0..TAU))
}

fn random_word(r: &mut ChaCha8Rng, n: usize, radius: f64) -> VerblunskyWord {
    VerblunskyWord::interior_only((0..n).map(|_| in_disk(r, radius)).collect()).unwrap()
}

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn horner(c: &[C], z: C) -> C {
    c.iter().rev().fold(C::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    let mut d = C::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&a, &b| m[a][k].norm().total_cmp(&m[b][k].norm())).unwrap();
        if m[p][k].norm() == 0.0 {
            return C::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        d *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let v = m[k][j];
                m[i][j] -= f * v;
            }
        }
    }
    d
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn cmax_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Largest distance from a point of `a` to its nearest point of `b`, both ways.
fn set_distance(a: &[C], b: &[C]) -> f64 {
    let one = |a: &[C], b: &[C]| {
        a.iter()
            .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}

/// Boundary point of the numerical range in direction `phi`, from the top
/// eigenvector of the Hermitian part.
fn support_point(a: &CMatrix, phi: f64) -> C {
    let e = C::from_polar(1.0, -phi);
    let h = CMatrix::from_fn(a.rows(), a.cols(), |i, j| 0.5 * (e * a[(i, j)] + (e * a[(j, i)]).conj()));
    let (_, vecs) = h.hermitian_eigen().unwrap();
    let v = vecs.column(0);
    let av = a.mul_vec(&v);
    v.iter().zip(&av).map(|(x, y)| x.conj() * y).sum()
}

fn ellipse_support(foci: [C; 2], a: f64, phi: f64) -> f64 {
    let c = 0.5 * (foci[0] + foci[1]);
    let d = 0.5 * (foci[1] - foci[0]).norm();
    let b = (a * a - d * d).sqrt();
    let psi = (foci[1] - foci[0]).arg();
    let t = phi - psi;
    (c * C::from_polar(1.0, -phi)).re + (a * a * t.cos().powi(2) + b * b * t.sin().powi(2)).sqrt()
}

fn random_unitary(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let mut cols: Vec<Vec<C>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<C> = (0..n).map(|_| C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
        for _ in 0..2 {
            for u in &cols {
                let p: C = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= p * y;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

fn ratio_law(word: &VerblunskyWord, lambda: C) -> Result<f64, String> {
    let frame = lib(popuc_zeros(word, lambda))?;
    let a = ggt_build(word);
    let w = frame.zeros();
    let m = frame.weights();
    let k = w.len();
    let mut worst: f64 = 0.0;
    for j in 0..k {
        let (p, q) = (w[j], w[(j + 1) % k]);
        // outward normal of the edge: away from the remaining vertices
        let mut normal = (q - p) * C::new(0.0, -1.0);
        let other = w[(j + 2) % k];
        if (normal.conj() * (other - p)).re > 0.0 {
            normal = -normal;
        }
        let zeta = support_point(a.entries(), normal.arg());
        let got = (zeta - p).norm() / (zeta - q).norm();
        let want = m[j] / m[(j + 1) % k];
        worst = worst.max((got - want).abs() / want.max(1.0));
    }
    Ok(worst)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut r = rng(1);
    let (mut coeff, mut dense): (f64, f64) = (0.0, 0.0);
    for i in 0..200 {
        let n = 1 + i % 8;
        let mut w = random_word(&mut r, n, 0.95);
        if i % 2 == 1 {
            w = lib(w.with_terminal(unimodular(&mut r)))?;
        }
        let g = ggt_build(&w);
        let cp = g.char_poly();
        let seq = szego_forward(&w);
        let expected = seq.paraorthogonal().unwrap_or(seq.phi_n());
        coeff = coeff.max(cmax_diff(cp.coeffs(), expected.coeffs()));
        let d = g.dim();
        for _ in 0..8 {
            let z = in_disk(&mut r, 1.5);
            let m: Vec<Vec<C>> = (0..d)
                .map(|i| (0..d).map(|j| if i == j { z } else { C::new(0.0, 0.0) } - g.entries()[(i, j)]).collect())
                .collect();
            let p = horner(expected.coeffs(), z);
            dense = dense.max((det(m) - p).norm() / p.norm().max(1.0));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    require(coeff < 1e-10 && dense < 1e-9 && secs < 5.0, || format!("coeff {coeff:.2e} dense {dense:.2e} time {secs:.2}s"))?;
    Ok(format!("coeff {coeff:.2e}, determinant {dense:.2e}, {secs:.2}s"))
}

fn criterion_2() -> Check {
    let mut r = rng(2);
    let (mut dev, mut sum): (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let n = 1 + i % 8;
        let w = random_word(&mut r, n, 0.9);
        let l = unimodular(&mut r);
        let frame = lib(popuc_zeros(&w, l))?;
        let (_, kernel) = lib(christoffel_weights(&w, frame.zeros()))?;
        let eig = lib(weights_from_eigenvectors(&w, l, frame.zeros()))?.weights;
        let bl = lib(weights_from_blaschke_derivative(&w, frame.zeros()))?;
        dev = dev.max(max_diff(&kernel, &eig)).max(max_diff(&kernel, &bl)).max(max_diff(&eig, &bl));
        for m in [&kernel, &eig, &bl] {
            sum = sum.max((m.iter().sum::<f64>() - 1.0).abs());
        }
    }
    require(dev < 1e-9 && sum < 1e-11, || format!("pairwise {dev:.2e} sum {sum:.2e}"))?;
    Ok(format!("pairwise {dev:.2e}, sum {sum:.2e}"))
}

fn criterion_3() -> Check {
    let mut r = rng(3);
    let mut dev: f64 = 0.0;
    for i in 0..100 {
        let n = 1 + i % 8;
        let w = random_word(&mut r, n, 0.9);
        let l = unimodular(&mut r);
        let frame = lib(popuc_zeros(&w, l))?;
        for _ in 0..16 {
            let z = in_disk(&mut r, 0.95);
            let m = lib(frame.m_function(z))?;
            let res = lib(resolvent_m_function(&w, l, z))?;
            let scale = m.partial_fractions.norm().max(1.0);
            dev = dev
                .max((m.partial_fractions - m.rational).norm() / scale)
                .max((m.partial_fractions - res).norm() / scale)
                .max((m.rational - res).norm() / scale);
        }
    }
    require(dev < 1e-9, || format!("deviation {dev:.2e}"))?;
    Ok(format!("three-way {dev:.2e}"))
}

fn criterion_4() -> Check {
    let mut r = rng(4);
    let (mut dev, mut schur): (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let n = 1 + i % 7;
        let w = random_word(&mut r, n, 0.85);
        let l = unimodular(&mut r);
        let frame = lib(popuc_zeros(&w, l))?;
        let nu = lib(verblunsky_from_measure(&lib(frame.spectral_measure())?))?;
        let a = w.interior();
        let expected: Vec<C> = (0..n).map(|j| -l * a[n - 1 - j].conj()).collect();
        let t = nu.terminal().ok_or("measure word has no terminal")?;
        dev = dev.max(cmax_diff(nu.interior(), &expected)).max((t - l).norm());
        let closed = lib(schur_params_closed_form(&lib(w.with_terminal(l))?))?;
        let mut got = nu.interior().to_vec();
        got.push(t);
        schur = schur.max(cmax_diff(&closed, &got));
    }
    require(dev < 1e-8 && schur < 1e-8, || format!("word {dev:.2e} schur {schur:.2e}"))?;
    Ok(format!("word {dev:.2e}, closed-form {schur:.2e}"))
}

fn criterion_5() -> Check {
    let mut r = rng(5);
    let mut dev: f64 = 0.0;
    for i in 0..100 {
        let n = 1 + i % 6;
        let w = random_word(&mut r, n, 0.85);
        let l = unimodular(&mut r);
        let f = RationalSchurFn::blaschke(&lib(w.with_terminal(l))?);
        let got = lib(schur_algorithm(&f, n + 1))?;
        let a = w.interior();
        let mut want: Vec<C> = (0..n).map(|j| -l * a[n - 1 - j].conj()).collect();
        want.push(l);
        require(got.len() == want.len(), || format!("{} parameters, expected {}", got.len(), want.len()))?;
        dev = dev.max(cmax_diff(&got, &want));
    }
    let i = C::new(0.0, 1.0);
    let w = lib(VerblunskyWord::new(vec![C::new(0.5, 0.0), i / 3.0], Some(i)))?;
    let got = lib(schur_algorithm(&RationalSchurFn::blaschke(&w), 3))?;
    let exact = cmax_diff(&got, &[C::new(-1.0 / 3.0, 0.0), -i / 2.0, i]);
    require(dev < 1e-10 && exact < 1e-12 && got.len() == 3, || format!("random {dev:.2e} example {exact:.2e}"))?;
    Ok(format!("random {dev:.2e}, example {exact:.2e}"))
}

/// `z Ψ_n + conj(λ) Ψ_n*` zeros, the second-kind paraorthogonal polynomial.
fn second_kind_oracle(w: &VerblunskyWord, l: C) -> Result<Vec<C>, String> {
    let psi = second_kind(w);
    let p = psi.phi_n().coeffs();
    let s = psi.phistar_n().coeffs();
    let n = w.len();
    let mut c = vec![C::new(0.0, 0.0); n + 2];
    for (k, a) in p.iter().enumerate() {
        c[k + 1] += a;
    }
    for (k, a) in s.iter().enumerate() {
        c[k] += l.conj() * a;
    }
    lib(roots(&Poly::new(c), 1e-14))
}

fn break_interlacing(first: &[C], second: &[C]) -> Vec<C> {
    // crowd two points of `second` into one gap of `first`, keeping the product
    let mut s = second.to_vec();
    let k = s.len();
    let target = s[1] * C::from_polar(1.0, 1e-4);
    let shift = target / s[0];
    s[0] = target;
    s[2 % k] /= shift;
    debug_assert!(first.len() == k);
    s
}

fn criterion_6() -> Check {
    let mut r = rng(6);
    let (mut two, mut second): (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let n = 1 + i % 6;
        let w = random_word(&mut r, n, 0.85);
        let l = unimodular(&mut r);
        let mu = l * C::from_polar(1.0, r.gen_range(0.3..TAU - 0.3));
        let first = lib(popuc_zeros(&w, l))?.zeros().to_vec();
        let other = lib(popuc_zeros(&w, mu))?.zeros().to_vec();
        let rec = lib(reconstruct_from_two_popuc(&lib(CircularConfiguration::new(first.clone(), other))?))?;
        two = two
            .max(cmax_diff(rec.word.interior(), w.interior()))
            .max((rec.lambda - l).norm())
            .max((rec.mu - mu).norm());
        let y = second_kind_oracle(&w, l)?;
        let rec = lib(reconstruct_second_kind(&lib(CircularConfiguration::new(first, y))?))?;
        second = second.max(cmax_diff(rec.word.interior(), w.interior())).max((rec.lambda - l).norm());
    }
    let (mut product, mut interlace) = (0, 0);
    for i in 0..20 {
        let n = 2 + i % 5;
        let w = random_word(&mut r, n, 0.85);
        let l = unimodular(&mut r);
        let first = lib(popuc_zeros(&w, l))?.zeros().to_vec();
        let mut y = second_kind_oracle(&w, l)?;
        y[0] *= C::from_polar(1.0, 1e-3);
        let cfg = lib(CircularConfiguration::new(first.clone(), y))?;
        if matches!(reconstruct_second_kind(&cfg), Err(Error::ProductCondition { .. })) {
            product += 1;
        }
        let mu = l * C::from_polar(1.0, r.gen_range(0.3..TAU - 0.3));
        let other = lib(popuc_zeros(&w, mu))?.zeros().to_vec();
        let y = second_kind_oracle(&w, l)?;
        let bad_two = lib(CircularConfiguration::new(first.clone(), break_interlacing(&first, &other)))?;
        let bad_second = lib(CircularConfiguration::new(first.clone(), break_interlacing(&first, &y)))?;
        if matches!(reconstruct_from_two_popuc(&bad_two), Err(Error::NotRealizable(_)))
            && matches!(reconstruct_second_kind(&bad_second), Err(Error::NotRealizable(_)))
        {
            interlace += 1;
        }
    }
    require(two < 1e-8 && second < 1e-8 && product == 20 && interlace == 20, || {
        format!("two {two:.2e} second {second:.2e} product {product}/20 interlacing {interlace}/20")
    })?;
    Ok(format!("two-popuc {two:.2e}, second-kind {second:.2e}, rejections {product}/20 and {interlace}/20"))
}

fn criterion_7() -> Check {
    let (mut circle, mut radius): (f64, f64) = (0.0, 0.0);
    for n in 2..=6 {
        let w = VerblunskyWord::interior_only(vec![C::new(0.0, 0.0); n]).unwrap();
        let a = ggt_build(&w);
        let curve = lib(boundary_sweep(&w, 256))?;
        for (p, s) in curve.samples().iter().zip(curve.sources()) {
            circle = circle.max((p.norm() - lib(support_value(a.entries(), s.normal()))?).abs());
        }
        for phi in uniform_angles(16) {
            radius = radius.max((lib(support_value(a.entries(), phi))? - (PI / (n + 1) as f64).cos()).abs());
        }
    }
    let mut r = rng(7);
    let (mut hausdorff, mut ratio): (f64, f64) = (0.0, 0.0);
    for i in 0..50 {
        let n = 1 + i % 6;
        let w = random_word(&mut r, n, 0.9);
        let curve = lib(boundary_sweep(&w, 1024))?;
        hausdorff = hausdorff.max(lib(boundary_distance(&curve, ggt_build(&w).entries(), 256))?);
        if n >= 2 {
            for _ in 0..4 {
                ratio = ratio.max(ratio_law(&w, unimodular(&mut r))?);
            }
        }
    }
    require(circle < 1e-6 && radius < 1e-6 && hausdorff < 1e-5 && ratio < 1e-10, || {
        format!("circle {circle:.2e} radius {radius:.2e} hausdorff {hausdorff:.2e} ratio {ratio:.2e}")
    })?;
    Ok(format!("circle {circle:.2e}, cos radius {radius:.2e}, hausdorff {hausdorff:.2e}, ratio {ratio:.2e}"))
}

fn criterion_8() -> Check {
    let mut r = rng(8);
    let mut flip: f64 = 0.0;
    for i in 0..50 {
        let n = 1 + i % 7;
        let w = lib(random_word(&mut r, n, 0.9).with_terminal(unimodular(&mut r)))?;
        let t = w.terminal().unwrap();
        let a = w.interior();
        let beta = lib(VerblunskyWord::new((0..n).map(|j| -t * a[n - 1 - j].conj()).collect(), Some(t)))?;
        let g = ggt_build(&w);
        let h = ggt_build(&beta);
        let d = g.dim();
        for i in 0..d {
            for j in 0..d {
                flip = flip.max((g.entries()[(d - 1 - j, d - 1 - i)] - h.entries()[(i, j)]).norm());
            }
        }
        flip = flip.max(lib(head_flip(&w))?.distance(&beta));
    }
    let mut inv: f64 = 0.0;
    for i in 0..50 {
        let n = 1 + i % 6;
        let w = random_word(&mut r, n, 0.85);
        let q = random_unitary(&mut r, n);
        let a = &(&q * ggt_build(&w).entries()) * &q.adjoint();
        inv = inv.max(lib(contraction_to_verblunsky(&a, DEFAULT_CONTRACTION_TOL))?.distance(&w));
    }
    let one = C::new(1.0, 0.0);
    let zero = C::new(0.0, 0.0);
    let rejected = contraction_to_verblunsky(&CMatrix::diag(&[one, zero]), DEFAULT_CONTRACTION_TOL).is_err();
    require(flip < 1e-12 && inv < 1e-7 && rejected, || format!("flip {flip:.2e} inversion {inv:.2e} rejected {rejected}"))?;
    Ok(format!("flip {flip:.2e}, inversion {inv:.2e}, diag(1,0) rejected"))
}

fn criterion_9() -> Check {
    let mut r = rng(9);
    let mut foci: f64 = 0.0;
    for _ in 0..100 {
        let z = [in_disk(&mut r, 1.0), in_disk(&mut r, 1.0), in_disk(&mut r, 1.0)];
        let (f1, f2) = lib(steiner_foci(z[0], z[1], z[2]))?;
        let s1 = z[0] + z[1] + z[2];
        let s2 = z[0] * z[1] + z[1] * z[2] + z[2] * z[0];
        // 3z² - 2 s1 z + s2 = 0
        let disc = (4.0 * s1 * s1 - 12.0 * s2).sqrt();
        let (r1, r2) = ((2.0 * s1 + disc) / 6.0, (2.0 * s1 - disc) / 6.0);
        let d = ((f1 - r1).norm().max((f2 - r2).norm())).min((f1 - r2).norm().max((f2 - r1).norm()));
        foci = foci.max(d);
    }
    let mut mid: f64 = 0.0;
    for k in 3..=7 {
        for _ in 0..5 {
            let mut ws: Vec<C> = (0..k).map(|_| unimodular(&mut r)).collect();
            ws.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
            let word = lib(midpoint_word(&ws))?;
            let p = MonicPoly::from_roots(&ws);
            let l = -p.coeff(0).conj();
            let frame = lib(popuc_zeros(&word, l))?;
            mid = mid.max(set_distance(frame.zeros(), &ws));
            let midpoints: Vec<C> = (0..k).map(|j| 0.5 * (ws[j] + ws[(j + 1) % k])).collect();
            let tangent: Vec<C> = lib(frame_tangent_points(&frame))?.into_iter().map(|(z, _)| z).collect();
            mid = mid.max(set_distance(&tangent, &midpoints));
        }
    }
    let mut agree = 0;
    for i in 0..50 {
        let a = if i % 2 == 0 {
            let ws: Vec<C> = (0..3).map(|_| unimodular(&mut r)).collect();
            lib(roots(&Poly::from_roots(&ws).deriv(), 1e-14))?
        } else {
            vec![in_disk(&mut r, 0.9), in_disk(&mut r, 0.9)]
        };
        let s = [a[0] + a[1], a[0] * a[1]];
        // residuals for n = 2: j = 0, 1
        let scan = (0..20000)
            .map(|k| {
                let lb = C::from_polar(1.0, -TAU * k as f64 / 20000.0);
                let r0 = 2.0 * s[1] - lb * s[0].conj();
                let r1 = s[0] - lb * 2.0 * s[1].conj();
                r0.norm().max(r1.norm())
            })
            .fold(f64::INFINITY, f64::min);
        let brute = scan < 1e-3;
        let closed = two_point_defect(a[0], a[1]).abs() < 1e-9;
        let solver = lib(critical_feasibility(&a))?.feasible;
        if brute == closed && closed == solver {
            agree += 1;
        }
    }
    require(foci < 1e-10 && mid < 1e-8 && agree == 50, || format!("foci {foci:.2e} midpoints {mid:.2e} agree {agree}/50"))?;
    Ok(format!("foci {foci:.2e}, midpoints {mid:.2e}, classification {agree}/50"))
}

fn criterion_10() -> Check {
    let mut r = rng(10);
    let mut circle: f64 = 0.0;
    for k in 3..=5 {
        let body = lib(Ellipse::circle(C::new(0.0, 0.0), (PI / k as f64).cos()))?;
        for _ in 0..5 {
            circle = circle.max(lib(billiard_closure(&body, unimodular(&mut r), k))?.defect);
        }
    }
    let (mut shape, mut poncelet): (f64, f64) = (0.0, 0.0);
    for _ in 0..10 {
        let (f1, f2) = (in_disk(&mut r, 0.7), in_disk(&mut r, 0.7));
        let e = lib(closure_eccentricity(f1, f2, 3))?;
        let word = lib(verblunsky_from_phi(&MonicPoly::from_roots(&[f1, f2])))?;
        let a = ggt_build(&word);
        for phi in uniform_angles(256) {
            shape = shape.max((ellipse_support([f1, f2], e.semimajor(), phi) - lib(support_value(a.entries(), phi))?).abs());
        }
        for k in 0..5 {
            let w0 = C::from_polar(1.0, 0.37 + TAU * k as f64 / 5.0);
            poncelet = poncelet.max(lib(billiard_closure(&e as &dyn ConvexBody, w0, 3))?.defect);
        }
    }
    require(circle < 1e-8 && shape < 1e-5 && poncelet < 1e-6, || {
        format!("circle {circle:.2e} ellipse {shape:.2e} start points {poncelet:.2e}")
    })?;
    Ok(format!("circle {circle:.2e}, ellipse {shape:.2e}, five starts {poncelet:.2e}"))
}

fn criterion_11() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let eigs = "0.8e34i,0.57e4i,0.7i";
    let args = ["poncelet", "figure", "--eigs", eigs, "--lambdas", "64", "--out-dir", dir.path().to_str().unwrap()];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = poncelet::cli::run(args, &mut out, &mut err);
    require(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    let report: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let checks = &report["checks"];
    let get = |k: &str| checks[k].as_f64().unwrap_or(f64::INFINITY);
    require(get("weight_deviation") < 1e-9 && get("weight_sum_deviation") < 1e-11 && get("ratio_law") < 1e-10, || {
        format!("figure checks {checks}")
    })?;

    let one = std::fs::read_to_string(dir.path().join("figure1.svg")).map_err(|e| e.to_string())?;
    let two = std::fs::read_to_string(dir.path().join("figure2.svg")).map_err(|e| e.to_string())?;
    let eig = poncelet::cli::parse::parse_complex_list(eigs).map_err(|e| e.to_string())?;
    let word = lib(verblunsky_from_phi(&MonicPoly::from_roots(&eig)))?;
    let a = ggt_build(&word);
    let fr = lib(frames(&word, 64))?;
    let outer = read_polygons(&one, "outer");
    require(outer.len() == 64, || format!("{} outer polygons", outer.len()))?;
    let (mut vertices, mut weights, mut sum, mut ratio): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for (poly, frame) in outer.iter().zip(&fr) {
        vertices = vertices.max(set_distance(poly, frame.zeros()));
        let (_, kernel) = lib(christoffel_weights(&word, frame.zeros()))?;
        let eigw = lib(weights_from_eigenvectors(&word, frame.lambda(), frame.zeros()))?.weights;
        let bl = lib(weights_from_blaschke_derivative(&word, frame.zeros()))?;
        weights = weights.max(max_diff(&kernel, &eigw)).max(max_diff(&kernel, &bl)).max(max_diff(&eigw, &bl));
        sum = sum.max((kernel.iter().sum::<f64>() - 1.0).abs());
        ratio = ratio.max(ratio_law(&word, frame.lambda())?);
    }
    let mut boundary: f64 = 0.0;
    for svg in [&one, &two] {
        let curves = read_polygons(svg, "boundary");
        require(curves.len() == 1, || format!("{} boundary curves", curves.len()))?;
        for phi in uniform_angles(256) {
            let h = curves[0].iter().map(|p| (p * C::from_polar(1.0, -phi)).re).fold(f64::NEG_INFINITY, f64::max);
            boundary = boundary.max((h - lib(support_value(a.entries(), phi))?).abs());
        }
    }
    let chords = two.matches(r#"class="chord""#).count();
    require(vertices < 1e-5 && weights < 1e-9 && sum < 1e-11 && ratio < 1e-10 && boundary < 1e-5 && chords == 64 * 6, || {
        format!("vertices {vertices:.2e} weights {weights:.2e} sum {sum:.2e} ratio {ratio:.2e} boundary {boundary:.2e} chords {chords}")
    })?;
    Ok(format!("vertices {vertices:.2e}, svg boundary {boundary:.2e}, ratio {ratio:.2e}, {chords} chords"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("characteristic polynomial", criterion_1),
        ("weight formulas", criterion_2),
        ("m-function", criterion_3),
        ("spectral measure word", criterion_4),
        ("schur closed form", criterion_5),
        ("wendroff round trips", criterion_6),
        ("numerical range", criterion_7),
        ("head flip and inversion", criterion_8),
        ("critical points", criterion_9),
        ("billiards", criterion_10),
        ("figure", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
