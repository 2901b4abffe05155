//! Named invariant suites, shared by `lbo verify` and the test targets.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

use rand::Rng;
use serde::Serialize;

use crate::linalg::{max_abs, Mat4};
use crate::minkowski::{random_proper_lorentz, seeded_rng};
use crate::orbit::{
    omega_phi, orbit_class, orthonormal_tangent_frame, parallel_frame_check, random_light_cone,
    tangent_signature,
};
use crate::slice::{empirical_min_radius, r_min};
use crate::stabilizer::{
    degenerate_base_point, degenerate_companion, invariant_det_closed_form, invariant_matrix_a,
    neutral_base_point, sampled_elements, stabilizer_generator_degenerate, u_prime, v_prime,
    DegenerateGenerator, GeneratorSet, StabilizerBase,
};
use crate::tolerance::ToleranceConfig;
use crate::wedge::{hat_inner, pfaffian, pushforward, Bivector};

pub const SUITES: [&str; 5] = ["isometry", "pfaffian", "frames", "stabilizer", "slice"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl CheckResult {
    fn at_most(suite: &'static str, name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            suite,
            name: name.into(),
            value,
            threshold,
            passed: value <= threshold,
        }
    }

    fn holds(suite: &'static str, name: impl Into<String>, ok: bool) -> Self {
        Self {
            suite,
            name: name.into(),
            value: if ok { 0.0 } else { 1.0 },
            threshold: 0.0,
            passed: ok,
        }
    }
}

/// Runs one suite by name (or every suite for `"all"`); `None` for an
/// unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<Vec<CheckResult>> {
    let out = match name {
        "isometry" => isometry(seed),
        "pfaffian" => pfaffian_suite(seed),
        "frames" => frames(),
        "stabilizer" => stabilizer(seed),
        "slice" => slice(seed),
        "all" => SUITES.iter().flat_map(|s| run_suite(s, seed).unwrap()).collect(),
        _ => return None,
    };
    Some(out)
}

fn random_bivector<R: Rng + ?Sized>(rng: &mut R) -> Bivector {
    Bivector(std::array::from_fn(|_| rng.random_range(-1.0..=1.0)))
}

fn isometry(seed: u64) -> Vec<CheckResult> {
    let mut rng = seeded_rng(seed, 0);
    let mut worst = 0.0_f64;
    let mut worst_hom = 0.0_f64;
    for _ in 0..1000 {
        let p = random_proper_lorentz(&mut rng, 4).expect("positive length");
        let q = random_proper_lorentz(&mut rng, 4).expect("positive length");
        let (w1, w2) = (random_bivector(&mut rng), random_bivector(&mut rng));
        let d = hat_inner(&pushforward(&p, &w1), &pushforward(&p, &w2)) - hat_inner(&w1, &w2);
        worst = worst.max(d.abs() / (1.0 + w1.norm() * w2.norm()));
        let lhs = pushforward(&(p * q), &w1);
        let rhs = pushforward(&p, &pushforward(&q, &w1));
        worst_hom = worst_hom.max(lhs.max_abs_diff(&rhs) / lhs.norm().max(1.0));
    }
    vec![
        CheckResult::at_most("isometry", "hat metric preserved", worst, 1e-8),
        CheckResult::at_most("isometry", "pushforward is a homomorphism", worst_hom, 1e-9),
    ]
}

fn pfaffian_suite(seed: u64) -> Vec<CheckResult> {
    let tol = ToleranceConfig::default();
    let mut rng = seeded_rng(seed, 1);
    let mut worst = 0.0_f64;
    let mut class_kept = true;
    for _ in 0..500 {
        let w = random_light_cone(&mut rng);
        let p = random_proper_lorentz(&mut rng, 3).expect("positive length");
        let pw = pushforward(&p, &w);
        let scale = w.norm() * w.norm();
        worst = worst.max((pfaffian(&pw) - pfaffian(&w)).abs() / scale.max(1.0));
        let a = orbit_class(&w, &tol).map(|c| c.kind);
        let b = orbit_class(&pw, &ToleranceConfig::uniform(1e-7)).map(|c| c.kind);
        class_kept &= a.is_ok() && a == b;
    }
    vec![
        CheckResult::at_most("pfaffian", "pfaffian invariant", worst, 1e-9),
        CheckResult::holds("pfaffian", "orbit class invariant", class_kept),
    ]
}

fn frames() -> Vec<CheckResult> {
    let tol = ToleranceConfig::default();
    let mut out = Vec::new();
    for phi in [0.0, FRAC_PI_6, FRAC_PI_3, 3.0 * PI / 4.0, PI] {
        let sig = tangent_signature(phi, &tol).ok();
        out.push(CheckResult::holds("frames", format!("signature (2,2) at φ={phi:.4}"), sig == Some((2, 2, 0))));
    }
    let sig = tangent_signature(FRAC_PI_2, &tol).ok();
    out.push(CheckResult::holds("frames", "rank 2 at φ=π/2", sig == Some((1, 1, 2))));

    let want = Mat4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, -1.0));
    let mut worst = 0.0_f64;
    for k in 0..10 {
        let phi = PI * (k as f64 + 0.5) / 10.0;
        let f = orthonormal_tangent_frame(phi, &tol).expect("φ ≠ π/2");
        let g = Mat4::from_fn(|i, j| hat_inner(&f[i], &f[j]));
        worst = worst.max(max_abs(&(g - want)));
    }
    out.push(CheckResult::at_most("frames", "orthonormal frame Gram", worst, 1e-10));

    for phi in [FRAC_PI_3, FRAC_PI_2] {
        let mut passed = true;
        let mut worst = 0.0_f64;
        for i in 0..5 {
            for j in 0..5 {
                let th = -PI + 2.0 * PI * i as f64 / 5.0;
                let t = -1.0 + 0.5 * j as f64;
                let r = parallel_frame_check(phi, th, t, &tol).expect("φ in range");
                passed &= r.passed;
                worst = worst.max(r.max_tangential.max(r.max_x_span));
            }
        }
        out.push(CheckResult {
            suite: "frames",
            name: format!("parallel frame at φ={phi:.4}"),
            value: worst,
            threshold: crate::orbit::FRAME_TANGENTIAL_LIMIT,
            passed,
        });
    }
    out
}

fn stabilizer(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut fix = 0.0_f64;
    for (r, eps) in [(1.0, 1), (0.5, -1), (3.0, 1)] {
        let base = StabilizerBase::Neutral { r, epsilon: eps };
        let w = neutral_base_point(r, eps);
        for e in sampled_elements(base, GeneratorSet::WithNegation) {
            fix = fix.max(e.fixing_residual(&w));
        }
    }
    for e in sampled_elements(StabilizerBase::Degenerate, GeneratorSet::WithNegation) {
        fix = fix.max(e.fixing_residual(&degenerate_base_point()));
        fix = fix.max(e.fixing_residual(&degenerate_companion()));
    }
    out.push(CheckResult::at_most("stabilizer", "generators fix base points", fix, 1e-10));

    let mut prime = 0.0_f64;
    for t in [-1.5, -0.5, 0.5, 1.5] {
        let u = stabilizer_generator_degenerate(DegenerateGenerator::U, t).matrix.into_inner();
        let v = stabilizer_generator_degenerate(DegenerateGenerator::V, t).matrix.into_inner();
        prime = prime.max(max_abs(&(u - u_prime(t.tanh()).into_inner())));
        prime = prime.max(max_abs(&(v - v_prime(t.tanh()).into_inner())));
    }
    out.push(CheckResult::at_most("stabilizer", "U'/V' match U_t/V_t", prime, 1e-10));

    let mut comm = 0.0_f64;
    for (x, y) in [(0.3, -0.7), (1.2, 0.4), (-2.0, 2.5)] {
        let a = (u_prime(x) * v_prime(y)).into_inner();
        let b = (v_prime(y) * u_prime(x)).into_inner();
        comm = comm.max((a - b).norm());
    }
    out.push(CheckResult::at_most("stabilizer", "U' and V' commute", comm, 1e-12));

    let mut rng = seeded_rng(seed, 2);
    let mut det = 0.0_f64;
    for _ in 0..1000 {
        let [a, b, c, d]: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..=2.0));
        let (_, direct) = invariant_matrix_a(a, b, c, d);
        let closed = invariant_det_closed_form(a, b, c, d);
        det = det.max((direct - closed).abs() / closed.abs().max(1e-300));
    }
    out.push(CheckResult::at_most("stabilizer", "det A closed form", det, 1e-9));
    out
}

fn slice(seed: u64) -> Vec<CheckResult> {
    let tol = ToleranceConfig::default();
    let n = 1000;
    let grid: Vec<f64> = (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect();
    let identity = grid
        .iter()
        .map(|&phi| (r_min(phi).unwrap().powi(2) - 2.0 * phi.cos().abs()).abs())
        .fold(0.0, f64::max);
    let symmetry = grid
        .iter()
        .map(|&phi| (r_min(phi).unwrap() - r_min(PI - phi).unwrap()).abs())
        .fold(0.0, f64::max);
    let upper = FRAC_PI_2 - 1e-3;
    let mono: Vec<f64> = (0..n).map(|k| r_min(upper * k as f64 / (n - 1) as f64).unwrap()).collect();
    let decreasing = mono.windows(2).all(|w| w[1] < w[0]);

    let mut out = vec![
        CheckResult::at_most("slice", "r_min² = 2|cos φ|", identity, 1e-12),
        CheckResult::at_most("slice", "r_min symmetric", symmetry, 1e-12),
        CheckResult::holds("slice", "r_min decreasing on [0, π/2)", decreasing),
    ];
    for phi in [0.0, FRAC_PI_6, FRAC_PI_3] {
        let r0 = r_min(phi).unwrap();
        let v = empirical_min_radius(&omega_phi(phi), 2000, seed, &tol).expect("light cone");
        let ok = v >= r0 * (1.0 - 1e-12) && v <= r0 * 1.02;
        out.push(CheckResult {
            suite: "slice",
            name: format!("sampled minimum at φ={phi:.4}"),
            value: v / r0 - 1.0,
            threshold: 0.02,
            passed: ok,
        });
    }
    let v = empirical_min_radius(&omega_phi(FRAC_PI_2), 2000, seed, &tol).expect("light cone");
    out.push(CheckResult::at_most("slice", "sampled minimum at φ=π/2", v, 1e-3));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0).is_none());
    }

    #[test]
    fn cheap_suites_pass() {
        for name in ["isometry", "pfaffian", "frames", "stabilizer"] {
            for c in run_suite(name, 7).unwrap() {
                assert!(c.passed, "{c:?}");
            }
        }
    }
}
