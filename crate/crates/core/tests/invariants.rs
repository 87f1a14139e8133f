//! Cross-module property tests: eigenvalue identities on grids, recurrence
//! and transformation identities at random points, bracket stability, node
//! and pole counting.

mod common;

use common::{richardson_diff, second_diff};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use swkblab_core::complexscan::{cell_residue_scan, qmf_eval, ComplexRect};
use swkblab_core::quadrature::{
    find_turning_points, find_turning_points_scan, integrate_sqrt_bracket, ScanDomain,
};
use swkblab_core::specfun::{
    hermite, hyp1f1, hyp1f1_deriv, hyp2f1, hyp2f1_deriv, jacobi, laguerre, orth_poly,
    orth_poly_deriv, PolyFamily,
};
use swkblab_core::swkb::swkb_integral;
use swkblab_core::systems::{build_system, Family, LevelIndex, System, SystemSpec};

type C = Complex64;

fn every_system() -> Vec<(String, System)> {
    let specs: Vec<(&str, SystemSpec)> = vec![
        ("si-h", SystemSpec::si(Family::H)),
        ("si-l", SystemSpec::si(Family::L).with_g(1.5)),
        ("si-j", SystemSpec::si(Family::J).with_g(1.0).with_h(2.5)),
        ("ces-h", SystemSpec::ces(Family::H, 0.9, 0.3)),
        ("ces-l", SystemSpec::ces(Family::L, 0.8, 0.1).with_g(0.8)),
        ("ces-j", SystemSpec::ces(Family::J, 0.7, 0.1).with_g(1.3).with_h(0.9)),
        ("ka-h", SystemSpec::krein_adler(Family::H, 1)),
        ("ka-l", SystemSpec::krein_adler(Family::L, 1).with_g(1.5)),
        ("ka-j", SystemSpec::krein_adler(Family::J, 1).with_g(1.0).with_h(1.2)),
    ];
    specs
        .into_iter()
        .map(|(name, s)| (name.to_string(), build_system(&s).unwrap()))
        .collect()
}

/// x-grid strictly inside the physical domain of the family.
fn x_grid(family: Family, points: usize) -> Vec<f64> {
    match family {
        Family::H => (0..points)
            .map(|i| -3.0 + 6.0 * i as f64 / (points - 1) as f64)
            .collect(),
        Family::L => (0..points)
            .map(|i| 0.1 + 4.5 * i as f64 / (points - 1) as f64)
            .collect(),
        Family::J => (0..points)
            .map(|i| {
                0.15 + (std::f64::consts::FRAC_PI_2 - 0.3) * i as f64 / (points - 1) as f64
            })
            .collect(),
    }
}

fn natural_of_x(family: Family, x: f64) -> f64 {
    match family {
        Family::H => x,
        Family::L => x * x,
        Family::J => (2.0 * x).cos(),
    }
}

fn psi_x(sys: &System, n: u32, x: f64) -> f64 {
    let t = natural_of_x(sys.family(), x);
    sys.wavefunction(LevelIndex::new(n), C::new(t, 0.0)).unwrap().re
}

#[test]
fn potential_identity_from_ground_state() {
    // V = W^2 - W' reconstructed from psi_0 must annihilate psi_0
    for (name, sys) in every_system() {
        let family = sys.family();
        let w = |x: f64| {
            let t = natural_of_x(family, x);
            let (psi, dpsi) = sys
                .wavefunction_with_deriv(LevelIndex::new(0), C::new(t, 0.0))
                .unwrap();
            let dt_dx = sys.dnatural_dx(C::new(x, 0.0), C::new(t, 0.0));
            -(dpsi * dt_dx / psi).re
        };
        let mut worst = 0.0_f64;
        let grid = x_grid(family, 500);
        let mut scale = 0.0_f64;
        for &x in &grid {
            scale = scale.max(psi_x(&sys, 0, x).abs());
        }
        for &x in &grid {
            let wv = w(x);
            let dw = richardson_diff(&w, x, 1e-3);
            let v = wv * wv - dw;
            let psi = |y: f64| psi_x(&sys, 0, y);
            let d2 = second_diff(&psi, x, 1e-3);
            worst = worst.max((-d2 + v * psi(x)).abs());
        }
        assert!(worst / scale < 1e-6, "{name}: max residual {}", worst / scale);
    }
}

#[test]
fn eigen_residual_on_grids() {
    // -psi_n'' + V psi_n = E_n psi_n for the line systems and the plain
    // shape-invariant ones, n <= 5 (deformed radial/trig excited states are
    // out of scope)
    let cases: Vec<(SystemSpec, u32)> = vec![
        (SystemSpec::si(Family::H), 5),
        (SystemSpec::si(Family::L).with_g(1.5), 5),
        (SystemSpec::si(Family::J).with_g(1.0).with_h(2.5), 5),
        (SystemSpec::ces(Family::H, 0.9, 0.3), 5),
        (SystemSpec::krein_adler(Family::H, 1), 5),
    ];
    for (spec, n_max) in cases {
        let sys = build_system(&spec).unwrap();
        let family = sys.family();
        let w = |x: f64| {
            let t = natural_of_x(family, x);
            let (psi, dpsi) = sys
                .wavefunction_with_deriv(LevelIndex::new(0), C::new(t, 0.0))
                .unwrap();
            let dt_dx = sys.dnatural_dx(C::new(x, 0.0), C::new(t, 0.0));
            -(dpsi * dt_dx / psi).re
        };
        for n in 0..=n_max {
            // natural-unit energy: hbar = omega = 1
            let e_n = sys.energy(LevelIndex::new(n));
            let mut worst = 0.0_f64;
            let mut scale = 0.0_f64;
            let grid = x_grid(family, 160);
            for &x in &grid {
                scale = scale.max(psi_x(&sys, n, x).abs());
            }
            for &x in &grid {
                let wv = w(x);
                let dw = richardson_diff(&w, x, 1e-3);
                let v = wv * wv - dw;
                let psi = |y: f64| psi_x(&sys, n, y);
                let d2 = second_diff(&psi, x, 1e-3);
                worst = worst.max((-d2 + v * psi(x) - e_n * psi(x)).abs());
            }
            assert!(
                worst / scale < 1e-6,
                "{spec:?} n = {n}: residual {} (scale {scale})",
                worst / scale
            );
        }
    }
}

#[test]
fn ratio_satisfies_reduced_equation() {
    // R = psi_n / psi_0 solves R'' - 2 W R' + E_n R = 0 for the plain
    // shape-invariant systems
    for (name, sys) in every_system().into_iter().take(3) {
        let family = sys.family();
        for n in [1u32, 3] {
            let e_n = sys.energy(LevelIndex::new(n));
            let ratio = |x: f64| psi_x(&sys, n, x) / psi_x(&sys, 0, x);
            let w = |x: f64| {
                let t = natural_of_x(family, x);
                let (psi, dpsi) = sys
                    .wavefunction_with_deriv(LevelIndex::new(0), C::new(t, 0.0))
                    .unwrap();
                let dt_dx = sys.dnatural_dx(C::new(x, 0.0), C::new(t, 0.0));
                -(dpsi * dt_dx / psi).re
            };
            let mut worst = 0.0_f64;
            let mut scale = 0.0_f64;
            let grid = x_grid(family, 120);
            for &x in &grid {
                scale = scale.max(ratio(x).abs());
            }
            for &x in &grid {
                let d2 = second_diff(&ratio, x, 1e-3);
                let d1 = richardson_diff(&ratio, x, 1e-3);
                worst = worst.max((d2 - 2.0 * w(x) * d1 + e_n * ratio(x)).abs());
            }
            assert!(worst / scale < 1e-6, "{name} n = {n}: {}", worst / scale);
        }
    }
}

#[test]
fn node_counts_match_level_index() {
    for (name, sys) in every_system() {
        let family = sys.family();
        for n in 0..=4u32 {
            if sys.is_ces() && family != Family::H && n > 0 {
                continue;
            }
            let grid = x_grid(family, 4000);
            let mut nodes = 0;
            let mut prev = psi_x(&sys, n, grid[0]);
            for &x in &grid[1..] {
                let v = psi_x(&sys, n, x);
                if v == 0.0 {
                    nodes += 1;
                    prev = 0.0;
                } else {
                    if prev * v < 0.0 {
                        nodes += 1;
                    }
                    prev = v;
                }
            }
            assert_eq!(nodes, n as usize, "{name} level {n}");
        }
    }
}

#[test]
fn deformation_degenerates_to_shape_invariant() {
    let ces = build_system(&SystemSpec::ces(Family::H, 0.0, 0.0)).unwrap();
    let si = build_system(&SystemSpec::si(Family::H)).unwrap();
    for i in 0..100 {
        let t = -3.0 + 6.0 * i as f64 / 99.0;
        let a = ces.superpotential_w(t).unwrap();
        let b = si.superpotential_w(t).unwrap();
        assert!((a - b).abs() < 1e-12, "t = {t}: {a} vs {b}");
    }
}

#[test]
fn ground_state_quantization_is_exact_everywhere() {
    for (name, sys) in every_system() {
        let r = swkb_integral(&sys, 0).unwrap();
        assert_eq!(r.i_over_pi, 0.0, "{name}");
        assert_eq!(r.err, 0.0, "{name}");
    }
}

#[test]
fn continuity_toward_the_exact_point() {
    // I/pi approaches n monotonically along b = beta = 10^-k
    let mut prev_gap = f64::INFINITY;
    for k in 1..=6 {
        let eps = 10f64.powi(-k);
        let sys = build_system(&SystemSpec::ces(Family::H, eps, eps)).unwrap();
        let r = swkb_integral(&sys, 1).unwrap();
        let gap = (r.i_over_pi - 1.0).abs();
        assert!(
            gap < prev_gap + 1e-12,
            "k = {k}: gap {gap} did not shrink from {prev_gap}"
        );
        prev_gap = gap;
    }
    assert!(prev_gap < 1e-6);
}

#[test]
fn integral_grows_with_the_shift_parameter() {
    // I/pi > n for b > 0 and I/pi < n for b < 0 at beta = 0
    for n in [1u32, 2] {
        for b in [0.5, 1.5] {
            let sys = build_system(&SystemSpec::ces(Family::H, b, 0.0)).unwrap();
            assert!(swkb_integral(&sys, n).unwrap().i_over_pi > n as f64);
        }
        for b in [-0.5, -1.2] {
            let sys = build_system(&SystemSpec::ces(Family::H, b, 0.0)).unwrap();
            assert!(swkb_integral(&sys, n).unwrap().i_over_pi < n as f64);
        }
    }
}

#[test]
fn quadratic_oracle_random_family() {
    // 25 randomized quadratics with known closed-form area
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..25 {
        let a: f64 = rng.gen_range(-3.0..1.0);
        let b: f64 = a + rng.gen_range(0.3..4.0);
        let scale: f64 = rng.gen_range(0.2..3.0);
        let f = move |t: f64| scale * (t - a) * (b - t);
        let exact = std::f64::consts::PI * scale.sqrt() * (b - a) * (b - a) / 8.0;
        let v = integrate_sqrt_bracket(
            swkblab_core::quadrature::Bracket { a_left: a, a_right: b },
            &f,
            &|_| 1.0,
        )
        .unwrap();
        assert!((v - exact).abs() <= 1e-10 * exact, "{v} vs {exact}");
    }
}

#[test]
fn bracket_scan_resolution_stability() {
    let sys = build_system(&SystemSpec::ces(Family::H, 0.9, 0.3)).unwrap();
    let c = sys.level_constant(1);
    let f = |t: f64| c - sys.superpotential_w(t).unwrap().powi(2);
    let domain = ScanDomain::Line { lo: -8.0, hi: 8.0 };
    let coarse = find_turning_points_scan(&f, domain, 4000).unwrap();
    let fine = find_turning_points_scan(&f, domain, 8000).unwrap();
    assert_eq!(coarse.len(), fine.len());
    for (c0, f0) in coarse.iter().zip(fine.iter()) {
        assert!((c0.a_left - f0.a_left).abs() < 1e-12);
        assert!((c0.a_right - f0.a_right).abs() < 1e-12);
    }
    let m = |_: f64| 1.0;
    let ic = integrate_sqrt_bracket(coarse[0], &f, &m).unwrap();
    let i_f = integrate_sqrt_bracket(fine[0], &f, &m).unwrap();
    assert!((ic - i_f).abs() < 1e-10 * ic.abs());
}

// ---------------------------------------------------------------------------
// special-function properties

/// Monomial-expansion oracles.
fn hermite_monomial(n: u32, x: f64) -> f64 {
    let mut total = 0.0;
    let nf = |k: u32| (1..=k).map(|i| i as f64).product::<f64>().max(1.0);
    let mut m = 0;
    while 2 * m <= n {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * nf(n) / (nf(m) * nf(n - 2 * m)) * (2.0 * x).powi((n - 2 * m) as i32);
        m += 1;
    }
    total
}

fn binom_real(a: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (a - i as f64) / (i as f64 + 1.0);
    }
    acc
}

fn laguerre_monomial(n: u32, alpha: f64, x: f64) -> f64 {
    let mut total = 0.0;
    let nf = |k: u32| (1..=k).map(|i| i as f64).product::<f64>().max(1.0);
    for k in 0..=n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * binom_real(n as f64 + alpha, n - k) * x.powi(k as i32) / nf(k);
    }
    total
}

fn jacobi_monomial(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut total = 0.0;
    for k in 0..=n {
        total += binom_real(n as f64 + alpha, (n - k) as u32)
            * binom_real(n as f64 + beta, k)
            * ((x - 1.0) / 2.0).powi(k as i32)
            * ((x + 1.0) / 2.0).powi((n - k) as i32);
    }
    total
}

#[test]
fn recurrence_matches_monomial_expansion() {
    let mut rng = StdRng::seed_from_u64(23);
    for n in 0..=20u32 {
        for _ in 0..50 {
            let x: f64 = rng.gen_range(-2.5..2.5);
            let h = hermite(n, C::new(x, 0.0)).re;
            let hm = hermite_monomial(n, x);
            assert!(
                (h - hm).abs() <= 1e-9 * hm.abs().max(1.0),
                "H_{n}({x}): {h} vs {hm}"
            );
            let zl: f64 = rng.gen_range(0.0..6.0);
            let l = laguerre(n, 0.7, C::new(zl, 0.0)).re;
            let lm = laguerre_monomial(n, 0.7, zl);
            assert!(
                (l - lm).abs() <= 1e-9 * lm.abs().max(1.0),
                "L_{n}({zl}): {l} vs {lm}"
            );
            let yj: f64 = rng.gen_range(-1.0..1.0);
            let j = jacobi(n, 0.6, 1.3, C::new(yj, 0.0)).re;
            let jm = jacobi_monomial(n, 0.6, 1.3, yj);
            assert!(
                (j - jm).abs() <= 1e-9 * jm.abs().max(1.0),
                "P_{n}({yj}): {j} vs {jm}"
            );
        }
    }
}

#[test]
fn analytic_derivatives_match_finite_differences() {
    let fams = [
        PolyFamily::Hermite,
        PolyFamily::Laguerre { alpha: 0.7 },
        PolyFamily::Jacobi { alpha: 0.6, beta: 1.3 },
    ];
    for family in fams {
        for n in [1u32, 4, 9] {
            for &x in &[0.35, 0.8] {
                let f = |t: f64| orth_poly(family, n, C::new(t, 0.0)).unwrap().re;
                let fd = richardson_diff(&f, x, 1e-6);
                let an = orth_poly_deriv(family, n, C::new(x, 0.0)).unwrap().re;
                assert!(
                    (an - fd).abs() <= 1e-6 * an.abs().max(1.0),
                    "{family:?} n = {n}: {an} vs {fd}"
                );
            }
        }
    }
    // confluent and Gauss functions
    let f = |t: f64| hyp1f1(0.4, 1.3, C::new(t, 0.0)).unwrap().re;
    let fd = richardson_diff(&f, 0.9, 1e-6);
    let an = hyp1f1_deriv(0.4, 1.3, C::new(0.9, 0.0)).unwrap().re;
    assert!((an - fd).abs() <= 1e-6 * an.abs().max(1.0));
    let f = |t: f64| hyp2f1(0.4, 0.9, 1.7, C::new(t, 0.0)).unwrap().re;
    let fd = richardson_diff(&f, 0.45, 1e-6);
    let an = hyp2f1_deriv(0.4, 0.9, 1.7, C::new(0.45, 0.0)).unwrap().re;
    assert!((an - fd).abs() <= 1e-6 * an.abs().max(1.0));
}

#[test]
fn kummer_transformation_at_random_points() {
    let mut rng = StdRng::seed_from_u64(37);
    for _ in 0..100 {
        let a: f64 = rng.gen_range(-2.0..3.0);
        let b: f64 = rng.gen_range(0.4..4.0);
        let r: f64 = rng.gen_range(0.0..20.0);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = C::new(r * th.cos(), r * th.sin());
        let lhs = hyp1f1(a, b, z).unwrap();
        let rhs = z.exp() * hyp1f1(b - a, b, -z).unwrap();
        assert!(
            (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1e-12),
            "a={a} b={b} z={z}: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn gauss_special_case_identity() {
    let mut rng = StdRng::seed_from_u64(41);
    for _ in 0..100 {
        let a: f64 = rng.gen_range(-1.5..2.0);
        let b: f64 = rng.gen_range(0.4..3.0);
        let r: f64 = rng.gen_range(0.0..0.9);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = C::new(r * th.cos(), r * th.sin());
        let lhs = hyp2f1(a, b, b, z).unwrap();
        let rhs = (C::new(1.0, 0.0) - z).powc(C::new(-a, 0.0));
        assert!(
            (lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-12),
            "a={a} b={b} z={z}"
        );
    }
}

// ---------------------------------------------------------------------------
// complex-plane properties

#[test]
fn real_axis_pole_count_equals_node_count() {
    for (name, sys) in every_system() {
        for n in 1..=5u32 {
            if sys.is_ces() && sys.family() != Family::H {
                continue;
            }
            // classical region: between the natural-variable turning points
            let c = sys.level_constant(n);
            let f = |t: f64| c - sys.superpotential_w(t).map(|w| w * w).unwrap_or(f64::INFINITY);
            let brackets = match find_turning_points(&f, sys.scan_domain(c)) {
                Ok(b) => b,
                Err(e) => panic!("{name} n = {n}: {e}"),
            };
            let (lo, hi) = (brackets[0].a_left, brackets.last().unwrap().a_right);
            let mut nodes = 0;
            let mut prev: Option<f64> = None;
            for i in 0..=3000 {
                let t = lo + (hi - lo) * i as f64 / 3000.0;
                let v = sys.wavefunction(LevelIndex::new(n), C::new(t, 0.0)).unwrap().re;
                if v == 0.0 {
                    nodes += 1;
                    prev = None;
                    continue;
                }
                if let Some(p) = prev {
                    if p * v < 0.0 {
                        nodes += 1;
                    }
                }
                prev = Some(v);
            }
            assert_eq!(nodes, n, "{name} level {n}");
        }
    }
}

#[test]
fn real_axis_pole_residue_via_ring_quadrature() {
    // local ring quadrature of the momentum function around one node
    let sys = build_system(&SystemSpec::si(Family::L).with_g(1.5)).unwrap();
    // node of L_2^{(1)}(z) maps to x = sqrt(z_node); find by scan
    let mut z_node = None;
    let mut prev = 0.0;
    for i in 0..=4000 {
        let z = 0.05 + 12.0 * i as f64 / 4000.0;
        let v = sys.wavefunction(LevelIndex::new(2), C::new(z, 0.0)).unwrap().re;
        if i > 0 && prev * v < 0.0 {
            z_node = Some(z);
            break;
        }
        prev = v;
    }
    let x_node = z_node.unwrap().sqrt();
    // refine in x by bisection on psi
    let psi = |x: f64| sys.wavefunction(LevelIndex::new(2), C::new(x * x, 0.0)).unwrap().re;
    let (mut lo, mut hi) = (x_node - 0.05, x_node + 0.05);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if psi(lo) * psi(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let x0 = 0.5 * (lo + hi);
    let mut acc = C::new(0.0, 0.0);
    const POINTS: usize = 256;
    for k in 0..POINTS {
        let th = std::f64::consts::TAU * k as f64 / POINTS as f64;
        let offset = 1e-3 * C::new(th.cos(), th.sin());
        acc += qmf_eval(&sys, 2, C::new(x0, 0.0) + offset).unwrap() * offset;
    }
    let residue = acc / POINTS as f64;
    assert!(
        (residue - C::new(0.0, -1.0)).norm() < 1e-8,
        "residue {residue}"
    );
}

#[test]
fn pairwise_residues_cancel_for_the_deformed_line_system() {
    let sys = build_system(&SystemSpec::ces(Family::H, 0.1, 0.0)).unwrap();
    let region = ComplexRect { re_min: 0.5, re_max: 3.6, im_min: 2.2, im_max: 4.1 };
    let report = cell_residue_scan(&sys, 1, &region, 10).unwrap();
    // adjacent ladder poles pair up with opposite residues
    assert!(report.poles.len() >= 4, "found {}", report.poles.len());
    let mut poles = report.poles.clone();
    poles.sort_by(|p, q| {
        (p.re * p.re + p.im * p.im)
            .partial_cmp(&(q.re * q.re + q.im * q.im))
            .unwrap()
    });
    for pair in poles.chunks(2) {
        if pair.len() == 2 {
            let sum = pair[0].residue() + pair[1].residue();
            assert!(
                sum.norm() < 1e-6,
                "pair at ({}, {}) and ({}, {}) sums to {sum}",
                pair[0].re,
                pair[0].im,
                pair[1].re,
                pair[1].im
            );
        }
    }
}

#[test]
fn scan_is_stable_under_resolution_doubling() {
    let sys = build_system(&SystemSpec::krein_adler(Family::H, 1)).unwrap();
    let region = ComplexRect { re_min: -2.0, re_max: 2.0, im_min: -2.0, im_max: 2.0 };
    let coarse = cell_residue_scan(&sys, 1, &region, 8).unwrap();
    let fine = cell_residue_scan(&sys, 1, &region, 16).unwrap();
    assert_eq!(coarse.poles.len(), fine.poles.len());
    for a in &coarse.poles {
        let nearest = fine
            .poles
            .iter()
            .map(|b| (a.location() - b.location()).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-7, "pole at {} moved by {nearest}", a.location());
    }
}
