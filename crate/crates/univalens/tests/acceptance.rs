//! End-to-end acceptance checks. Every test prints one pass/fail line, so
//! `cargo test --test acceptance -- --nocapture` reads as a checklist.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use univalens::criteria::{
    eval_main_condition, resolve_preset, schwarzian, sup_search, CoFn, Condition, CriterionSpec,
    FirstCenter, GridSpec, ResolvedParams, Variant,
};
use univalens::expr::FunctionExpr;
use univalens::loewner::transfer_g;
use univalens::qcext::{check_qc_criterion, estimate_k, univalence_evidence, ExtensionMap};
use univalens::quad::{integral_operator, real_pow_complex, QuadConfig};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fe(s: &str) -> FunctionExpr {
    FunctionExpr::parse(s).unwrap()
}

fn example1() -> FunctionExpr {
    fe("z/(1 - z^2/2)")
}

fn example1_c34() -> (CriterionSpec, ResolvedParams) {
    let spec = CriterionSpec {
        beta: c(2.0, 0.0),
        variant: Variant::CorollaryC34,
        ..CriterionSpec::default()
    };
    let p = resolve_preset(&spec, &example1()).unwrap();
    (spec, p)
}

fn pass(n: usize, what: &str) {
    println!("criterion {:>2}: PASS - {}", n, what);
}

#[test]
fn acceptance_01_example1_first_condition() {
    let (_, p) = example1_c34();
    let started = Instant::now();
    let rep = sup_search(
        &p,
        Condition::First,
        FirstCenter::Proof,
        None,
        &GridSpec::default(),
    )
    .unwrap();
    let elapsed = started.elapsed();
    assert!(
        (rep.sup_estimate - 0.5).abs() <= 1e-6,
        "sup {} is not 0.5 within 1e-6",
        rep.sup_estimate
    );
    assert!(rep.satisfied && rep.bound == 1.0);
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "took {:.2}s (limit 5s)",
        elapsed.as_secs_f64()
    );
    pass(
        1,
        &format!(
            "example-1 first condition sup = {:.9} (0.5 +- 1e-6), satisfied, {:.2}s",
            rep.sup_estimate,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn acceptance_02_example1_main_condition() {
    let (_, p) = example1_c34();
    let started = Instant::now();
    let rep = sup_search(
        &p,
        Condition::Main,
        FirstCenter::Proof,
        None,
        &GridSpec::default(),
    )
    .unwrap();
    let elapsed = started.elapsed();
    let bound = 24.0 / 27.0;
    assert!(
        rep.sup_estimate <= bound + 1e-6,
        "sup {} exceeds 24/27 + 1e-6",
        rep.sup_estimate
    );
    assert!(rep.satisfied);
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "took {:.2}s (limit 10s)",
        elapsed.as_secs_f64()
    );
    pass(
        2,
        &format!(
            "example-1 main condition sup = {:.9} <= 24/27, satisfied, {:.2}s",
            rep.sup_estimate,
            elapsed.as_secs_f64()
        ),
    );
}

fn hundred_points() -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(100);
    for i in 0..10 {
        for j in 0..10 {
            let r = 0.05 + 0.09 * i as f64;
            let th = std::f64::consts::TAU * j as f64 / 10.0;
            pts.push(Complex64::from_polar(r, th));
        }
    }
    pts
}

#[test]
fn acceptance_03_operator_exactness() {
    let cfg = QuadConfig::default();
    let id = fe("z");
    let mut worst: f64 = 0.0;
    for beta in [c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), c(1.0, 1.0)] {
        for &z in &hundred_points() {
            let v = integral_operator(&id, beta, z, &cfg).unwrap();
            worst = worst.max((v - z).norm());
        }
    }
    assert!(worst < 1e-10, "|F_beta(z) - z| reached {}", worst);

    let f1 = example1();
    let mut worst_red: f64 = 0.0;
    for &z in &hundred_points() {
        let v = integral_operator(&f1, c(1.0, 0.0), z, &cfg).unwrap();
        worst_red = worst_red.max((v - f1.eval(z).unwrap()).norm());
    }
    assert!(worst_red < 1e-10, "|F_1(z) - f(z)| reached {}", worst_red);
    pass(
        3,
        &format!(
            "operator exactness: identity worst {:.2e}, beta=1 reduction worst {:.2e}",
            worst, worst_red
        ),
    );
}

#[test]
fn acceptance_04_closed_form_spot_value() {
    // independent antiderivative oracle: int_0^z u f'(u) du = z f(z) + log(1 - z^2/2)
    let want = (2.0 * (0.25 / 0.875 + 0.875f64.ln())).sqrt();
    let got = integral_operator(&example1(), c(2.0, 0.0), c(0.5, 0.0), &QuadConfig::default())
        .unwrap();
    assert!(
        (got - c(want, 0.0)).norm() < 1e-8,
        "F_2(0.5) = {} vs oracle {}",
        got,
        want
    );
    pass(
        4,
        &format!("F_2(0.5) = {:.9} matches the antiderivative oracle within 1e-8", got.re),
    );
}

#[test]
fn acceptance_05_static_dynamic_identity() {
    // parameter ranges bounded so the absolute 1e-10 tolerance is meaningful;
    // the identity itself is exact
    let families: Vec<ResolvedParams> = vec![
        example1_c34().1,
        resolve_preset(
            &CriterionSpec {
                variant: Variant::Nehari,
                ..CriterionSpec::default()
            },
            &example1(),
        )
        .unwrap(),
        ResolvedParams {
            f: fe("z*exp(z/2)"),
            g: CoFn::Expr(fe("1 + 0.3*z")),
            h: CoFn::Expr(fe("0.2 + 0.1*z")),
            alpha: c(0.1, -0.1),
            beta: c(0.8, 0.2),
            m: 1.3,
            pascu_form: false,
        },
        ResolvedParams {
            f: fe("z"),
            g: CoFn::Expr(fe("1")),
            h: CoFn::Zero,
            alpha: c(0.0, 0.0),
            beta: c(1.0, 0.0),
            m: 1.0,
            pascu_form: false,
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut worst: f64 = 0.0;
    for draw in 0..1000 {
        let fam = &families[draw % families.len()];
        let m = rng.gen_range(0.5..1.6);
        let beta = c(rng.gen_range(0.4..1.0), rng.gen_range(-0.4..0.4));
        let p = ResolvedParams {
            m,
            beta,
            ..fam.clone()
        };
        let th = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let t = rng.gen_range(0.3..1.2);
        let boundary = Complex64::from_polar(1.0, th);
        let g = transfer_g(&p, boundary, t).unwrap();
        let dynamic = (g - c((m - 1.0) / 2.0, 0.0)).norm();
        let inner = boundary * (-t).exp();
        let statik = eval_main_condition(&p, None, inner).unwrap().modulus;
        worst = worst.max((dynamic - statik).abs());
    }
    assert!(worst < 1e-10, "worst static/dynamic gap {}", worst);
    pass(
        5,
        &format!("static/dynamic identity over 1000 draws, worst gap {:.2e}", worst),
    );
}

#[test]
fn acceptance_06_reduction_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let tau = std::f64::consts::TAU;

    // becker: value = (1 - |z|^2) z f''/f'
    let becker_catalog = ["-log(1 - z)", "z/(1 - z^2/2)", "z*exp(z)", "z/(1 - z)^2"];
    let spec = CriterionSpec {
        variant: Variant::Becker,
        ..CriterionSpec::default()
    };
    let mut worst_b: f64 = 0.0;
    for i in 0..1000 {
        let f = fe(becker_catalog[i % becker_catalog.len()]);
        let p = resolve_preset(&spec, &f).unwrap();
        let z = Complex64::from_polar(rng.gen_range(0.05..0.9), rng.gen_range(0.0..tau));
        let pe = eval_main_condition(&p, None, z).unwrap();
        let j = f.eval_jet(z, 2).unwrap();
        let rhs = (1.0 - z.norm_sqr()) * (z * j.d2 / j.d1);
        worst_b = worst_b.max((pe.value - rhs).norm());
    }
    assert!(worst_b < 1e-12, "becker identity worst {}", worst_b);

    // c3star: value = z^2 (1 - |z|^(m+1))^2 / |z|^(m+1) * S/2 - (m-1)/2
    let c3_catalog = ["z/(1 - z^2/2)", "-log(1 - z)", "z*exp(z)"];
    let mut worst_s: f64 = 0.0;
    for i in 0..1000 {
        let f = fe(c3_catalog[i % c3_catalog.len()]);
        let m = rng.gen_range(0.5..2.5);
        let spec = CriterionSpec {
            m,
            variant: Variant::CorollaryC3Star,
            ..CriterionSpec::default()
        };
        let p = resolve_preset(&spec, &f).unwrap();
        let z = Complex64::from_polar(rng.gen_range(0.15..0.9), rng.gen_range(0.0..tau));
        let pe = eval_main_condition(&p, None, z).unwrap();
        let x = real_pow_complex(z.norm(), c(m + 1.0, 0.0)).unwrap();
        let one = c(1.0, 0.0);
        let rhs = z * z * (one - x) * (one - x) / x * (0.5 * schwarzian(&f, z).unwrap())
            - c((m - 1.0) / 2.0, 0.0);
        worst_s = worst_s.max((pe.value - rhs).norm());
    }
    assert!(worst_s < 1e-12, "c3star identity worst {}", worst_s);

    // c34: value = (z^2 f'/f^2 - 1) x + (2/beta)(1 - x)(z f'/f - 1) - (m-1)/2
    let c34_catalog = ["z/(1 - z^2/2)", "z*exp(z)"];
    let mut worst_c: f64 = 0.0;
    for i in 0..1000 {
        let f = fe(c34_catalog[i % c34_catalog.len()]);
        let m = rng.gen_range(0.5..2.5);
        let beta = c(rng.gen_range(0.4..2.0), rng.gen_range(-0.5..0.5));
        let spec = CriterionSpec {
            m,
            beta,
            variant: Variant::CorollaryC34,
            ..CriterionSpec::default()
        };
        let p = resolve_preset(&spec, &f).unwrap();
        let z = Complex64::from_polar(rng.gen_range(0.15..0.9), rng.gen_range(0.0..tau));
        let pe = eval_main_condition(&p, None, z).unwrap();
        let j = f.eval_jet(z, 1).unwrap();
        let fz = f.eval(z).unwrap();
        let x = real_pow_complex(z.norm(), beta * (m + 1.0)).unwrap();
        let one = c(1.0, 0.0);
        let rhs = (z * z * j.d1 / (fz * fz) - one) * x
            + 2.0 / beta * (one - x) * (z * j.d1 / fz - one)
            - c((m - 1.0) / 2.0, 0.0);
        worst_c = worst_c.max((pe.value - rhs).norm());
    }
    assert!(worst_c < 1e-12, "c34 identity worst {}", worst_c);

    pass(
        6,
        &format!(
            "reduction identities (becker {:.1e}, schwarzian {:.1e}, c34 {:.1e}) at 1000 points each",
            worst_b, worst_s, worst_c
        ),
    );
}

#[test]
fn acceptance_07_quasiconformal_constant() {
    let f = fe("z");
    let cfg = QuadConfig::default();
    let grid = GridSpec::default();
    for m in [1.5, 2.0, 3.0] {
        let started = Instant::now();
        let base = CriterionSpec {
            m,
            g: Some(CoFn::Expr(fe("1"))),
            ..CriterionSpec::default()
        };
        let params = resolve_preset(&base, &f).unwrap();
        let map = ExtensionMap {
            params: &params,
            cfg,
        };
        let ratio = (m - 1.0) / (m + 1.0);
        let measured = estimate_k(&map, 1.001, 3.0, 16, 64).unwrap();
        assert!(
            (measured - ratio).abs() < 1e-4,
            "m {}: measured {} vs {}",
            m,
            measured,
            ratio
        );

        let spec = CriterionSpec {
            k: Some(ratio + 1e-9),
            ..base.clone()
        };
        let out = check_qc_criterion(&spec, &f, &grid, &cfg, true).unwrap();
        assert!(out.overall, "m {}: expected pass just above the ratio", m);
        assert_eq!(out.within_k, Some(true));

        let spec = CriterionSpec {
            k: Some(ratio - 0.05),
            ..base.clone()
        };
        let out = check_qc_criterion(&spec, &f, &grid, &cfg, false).unwrap();
        assert!(!out.overall, "m {}: expected fail at ratio - 0.05", m);

        let elapsed = started.elapsed();
        assert!(
            elapsed.as_secs_f64() < 10.0,
            "m {} took {:.2}s (limit 10s)",
            m,
            elapsed.as_secs_f64()
        );
    }
    pass(
        7,
        "extension constant (m-1)/(m+1) measured within 1e-4 and the k threshold behaves for m in {1.5, 2, 3}",
    );
}

#[test]
fn acceptance_08_negative_controls() {
    // Koebe fails becker
    let spec = CriterionSpec {
        variant: Variant::Becker,
        ..CriterionSpec::default()
    };
    let p = resolve_preset(&spec, &fe("z/(1 - z)^2")).unwrap();
    let rep = sup_search(
        &p,
        Condition::Main,
        FirstCenter::Proof,
        None,
        &GridSpec {
            n_radii: 32,
            n_angles: 64,
            ..GridSpec::default()
        },
    )
    .unwrap();
    assert!(rep.sup_estimate > 1.0 && !rep.satisfied);

    let grid = GridSpec {
        n_radii: 24,
        n_angles: 64,
        r_min: 1e-3,
        r_max: 0.995,
    };

    // z + z^2 has a critical point at -1/2
    let bad = fe("z + z^2");
    let rep_bad = univalence_evidence(|z| bad.eval(z), &grid, 8).unwrap();
    assert!(!rep_bad.pass);
    assert!((rep_bad.min_deriv_at - c(-0.5, 0.0)).norm() < 1e-2);

    // Example 1's F_2 passes
    let f = example1();
    let cfg = QuadConfig::default();
    let rep_good =
        univalence_evidence(|z| integral_operator(&f, c(2.0, 0.0), z, &cfg), &grid, 8).unwrap();
    assert!(rep_good.pass, "evidence report: {:?}", rep_good);

    pass(
        8,
        &format!(
            "negative controls: Koebe/becker sup {:.3} > 1, z+z^2 critical at {:.4}+{:.4}i, F_2 passes",
            rep.sup_estimate, rep_bad.min_deriv_at.re, rep_bad.min_deriv_at.im
        ),
    );
}

/// Central stencils with one Richardson pass for the higher orders; plain
/// central at 1e-5 for d1. Steps are balanced against roundoff (~eps/h^k).
mod fd {
    use super::*;

    pub fn d1<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64) -> Complex64 {
        let h = 1e-5;
        (f(z + c(h, 0.0)) - f(z - c(h, 0.0))) / c(2.0 * h, 0.0)
    }

    fn d2_step<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64, h: f64) -> Complex64 {
        (f(z + c(h, 0.0)) - 2.0 * f(z) + f(z - c(h, 0.0))) / c(h * h, 0.0)
    }

    pub fn d2<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64) -> Complex64 {
        let h = 1e-3;
        (4.0 * d2_step(f, z, h / 2.0) - d2_step(f, z, h)) / c(3.0, 0.0)
    }

    fn d3_step<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64, h: f64) -> Complex64 {
        (f(z + c(2.0 * h, 0.0)) - 2.0 * f(z + c(h, 0.0)) + 2.0 * f(z - c(h, 0.0))
            - f(z - c(2.0 * h, 0.0)))
            / c(2.0 * h * h * h, 0.0)
    }

    pub fn d3<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64) -> Complex64 {
        let h = 3e-3;
        (4.0 * d3_step(f, z, h / 2.0) - d3_step(f, z, h)) / c(3.0, 0.0)
    }
}

#[test]
fn acceptance_09_jet_derivatives_match_finite_differences() {
    let catalog = ["z/(1 - z^2/2)", "-log(1 - z)", "z*exp(z)", "z/(1 - z)^2"];
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut worst = [0.0f64; 3];
    for src in catalog {
        let f = fe(src);
        let ev = |z: Complex64| f.eval(z).unwrap();
        for _ in 0..200 {
            let z = Complex64::from_polar(
                rng.gen_range(0.05..0.8),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let j = f.eval_jet(z, 3).unwrap();
            let rel =
                |a: Complex64, b: Complex64| (a - b).norm() / a.norm().max(1.0);
            let r1 = rel(j.d1, fd::d1(&ev, z));
            let r2 = rel(j.d2, fd::d2(&ev, z));
            let r3 = rel(j.d3, fd::d3(&ev, z));
            worst[0] = worst[0].max(r1);
            worst[1] = worst[1].max(r2);
            worst[2] = worst[2].max(r3);
            assert!(
                r1 < 1e-6 && r2 < 1e-6 && r3 < 1e-6,
                "{} at {}: rel ({:.2e}, {:.2e}, {:.2e})",
                src,
                z,
                r1,
                r2,
                r3
            );
        }
    }
    pass(
        9,
        &format!(
            "jet derivatives vs central differences: worst rel (d1 {:.1e}, d2 {:.1e}, d3 {:.1e})",
            worst[0], worst[1], worst[2]
        ),
    );
}

#[test]
fn acceptance_10_schwarzian_values() {
    let moebius = fe("z/(1 - z)");
    let expm1 = fe("exp(z) - 1");
    let mut worst_m: f64 = 0.0;
    let mut worst_e: f64 = 0.0;
    for i in 0..12 {
        for j in 0..12 {
            let z = Complex64::from_polar(
                0.05 + 0.07 * i as f64,
                std::f64::consts::TAU * j as f64 / 12.0,
            );
            worst_m = worst_m.max(schwarzian(&moebius, z).unwrap().norm());
            worst_e = worst_e.max((schwarzian(&expm1, z).unwrap() - c(-0.5, 0.0)).norm());
        }
    }
    assert!(worst_m < 1e-10, "Moebius Schwarzian reached {}", worst_m);
    assert!(worst_e < 1e-10, "exp(z)-1 Schwarzian off by {}", worst_e);
    pass(
        10,
        &format!(
            "Schwarzian: Moebius |S| <= {:.1e}, exp(z)-1 matches -1/2 within {:.1e}",
            worst_m, worst_e
        ),
    );
}

#[test]
fn acceptance_11_pascu_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    for _ in 0..10_000 {
        let x: f64 = rng.gen_range(1e-9..1.0);
        let beta = c(rng.gen_range(1e-6..3.0), rng.gen_range(-3.0..3.0));
        let m: f64 = rng.gen_range(1e-6..4.0);
        let lhs =
            (c(1.0, 0.0) - real_pow_complex(x, beta * (m + 1.0)).unwrap()).norm() / beta.norm();
        let rhs = (1.0 - x.powf((m + 1.0) * beta.re)) / beta.re;
        assert!(
            lhs <= rhs * (1.0 + 1e-12) + 1e-15,
            "x {} beta {} m {}: {} > {}",
            x,
            beta,
            m,
            lhs,
            rhs
        );
    }
    pass(11, "modulus bound |1 - x^((m+1)b)|/|b| <= (1 - x^((m+1)Re b))/Re b on 10^4 draws");
}

#[test]
fn acceptance_12_reproduce_determinism() {
    let bin = env!("CARGO_BIN_EXE_univalens");
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let status = std::process::Command::new(bin)
            .args(["reproduce", "example1", "--out-dir"])
            .arg(dir.path())
            .status()
            .unwrap();
        assert!(status.success(), "reproduce example1 exited with {:?}", status);
    }
    for name in ["example1_report.json", "example1_f.svg", "example1_f2.svg"] {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{} differs between runs", name);
    }
    pass(12, "two `reproduce example1` runs emit byte-identical JSON and SVG outputs");
}
