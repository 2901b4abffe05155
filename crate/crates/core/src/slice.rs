//! The r-slice `A = B = r²` of the light cone: the minimal radius of each
//! orbit, its topology certificate, and a sampling oracle for the minimum.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{random_proper_lorentz, seeded_rng};
use crate::orbit::{canonical_form, join_ab, random_unit3, surface_point, OrbitClass, OrbitKind};
use crate::tolerance::ToleranceConfig;
use crate::wedge::{in_light_cone, pushforward, quantities_ab, Bivector};

/// Word length of the random group elements drawn by the oracle.
pub const ORACLE_WORD_LENGTH: usize = 4;
/// Half-width of the deterministic `t` sweep.
pub const SWEEP_T_MAX: f64 = 10.0;
const SWEEP_THETA_STEPS: usize = 181;
const SWEEP_T_STEPS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SliceTopology {
    Empty,
    Sphere2,
    RP3,
}

/// `t(φ) = atanh(tan(φ/2))` on `[0, π/2)` and `atanh(cot(φ/2))` on `(π/2, π]`.
pub fn t_phi(phi: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&phi) || (phi - FRAC_PI_2).abs() <= 8.0 * f64::EPSILON {
        return Err(Error::InvalidAngle(phi));
    }
    let half = 0.5 * phi;
    let arg = if phi < FRAC_PI_2 { half.tan() } else { 1.0 / half.tan() };
    Ok(arg.atanh())
}

/// Minimal radius `r(φ)` of the slices meeting the orbit of `Ω(φ)`; zero at
/// `φ = π/2`. Angles outside `[0, π]` are rejected.
pub fn r_min(phi: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&phi) {
        return Err(Error::InvalidAngle(phi));
    }
    if phi == FRAC_PI_2 {
        return Ok(0.0);
    }
    let t = t_phi(phi).unwrap_or(f64::INFINITY);
    let half = 0.5 * phi;
    let num = if phi < FRAC_PI_2 { half.cos() } else { half.sin() };
    Ok(SQRT_2 * num / t.cosh())
}

/// `A(w) = B(w) = r²` within `rel_tol · r²`.
pub fn slice_membership(w: &Bivector, r: f64, tol: &ToleranceConfig) -> Result<bool> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    let (a, _) = quantities_ab(w);
    Ok(in_light_cone(w, tol) && (a - r * r).abs() <= tol.rel_tol * r * r)
}

/// Topology label together with whether `r` sat inside the tolerance band
/// around `r0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCertificate {
    pub topology: SliceTopology,
    pub boundary: bool,
}

pub fn slice_certificate(class: &OrbitClass, r: f64, tol: &ToleranceConfig) -> Result<SliceCertificate> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius(r));
    }
    if class.kind == OrbitKind::Degenerate {
        return Ok(SliceCertificate {
            topology: SliceTopology::RP3,
            boundary: false,
        });
    }
    let band = tol.abs_tol * class.r0.max(1.0);
    let cert = if (r - class.r0).abs() <= band {
        SliceCertificate {
            topology: SliceTopology::Sphere2,
            boundary: true,
        }
    } else if r < class.r0 {
        SliceCertificate {
            topology: SliceTopology::Empty,
            boundary: false,
        }
    } else {
        SliceCertificate {
            topology: SliceTopology::RP3,
            boundary: false,
        }
    };
    Ok(cert)
}

pub fn slice_topology(class: &OrbitClass, r: f64, tol: &ToleranceConfig) -> Result<SliceTopology> {
    slice_certificate(class, r, tol).map(|c| c.topology)
}

/// Points `r0 (𝒂, ε𝒂)` with `|𝒂| = 1` on the sphere realising the minimal
/// slice of a neutral orbit; `None` for the degenerate orbit.
pub fn sphere_points(class: &OrbitClass, n: usize, seed: u64) -> Option<Vec<Bivector>> {
    let eps = f64::from(class.epsilon?);
    let mut rng = seeded_rng(seed, 0);
    Some(
        (0..n)
            .map(|_| {
                let a = class.r0 * random_unit3(&mut rng);
                join_ab(&a, &(eps * a))
            })
            .collect(),
    )
}

fn sqrt_a(w: &Bivector) -> f64 {
    quantities_ab(w).0.sqrt()
}

/// Sampling oracle for `inf{r > 0 | the orbit meets the r-slice}`.
///
/// Combines the running minimum of `√A` over pushforwards by `samples`
/// random words (one independent RNG stream per sample, reduced with `min`)
/// with a deterministic sweep of the surface through the canonical point,
/// refined by compass search inside the swept box.
pub fn empirical_min_radius(w: &Bivector, samples: usize, seed: u64, tol: &ToleranceConfig) -> Result<f64> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let cf = canonical_form(w, tol)?;

    let random_min = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded_rng(seed, i);
            let p = random_proper_lorentz(&mut rng, ORACLE_WORD_LENGTH).expect("positive word length");
            sqrt_a(&pushforward(&p, w))
        })
        .reduce(|| sqrt_a(w), f64::min);

    // A is invariant under the spatial rotation relating w to r/√2 · Ω(φ).
    let scale = cf.r / SQRT_2;
    let f = |th: f64, t: f64| scale * sqrt_a(&surface_point(cf.phi, th, t));
    let theta_at = |i: usize| -PI + 2.0 * PI * i as f64 / (SWEEP_THETA_STEPS - 1) as f64;
    let t_at = |j: usize| -SWEEP_T_MAX + 2.0 * SWEEP_T_MAX * j as f64 / (SWEEP_T_STEPS - 1) as f64;
    let (mut best, mut th, mut t) = (f64::INFINITY, 0.0, 0.0);
    for i in 0..SWEEP_THETA_STEPS {
        for j in 0..SWEEP_T_STEPS {
            let v = f(theta_at(i), t_at(j));
            if v < best {
                (best, th, t) = (v, theta_at(i), t_at(j));
            }
        }
    }
    let mut step = 2.0 * PI / (SWEEP_THETA_STEPS - 1) as f64;
    while step > 1e-12 {
        let mut moved = false;
        for (dth, dt) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (nth, nt) = (th + dth, (t + dt).clamp(-SWEEP_T_MAX, SWEEP_T_MAX));
            let v = f(nth, nt);
            if v < best {
                (best, th, t) = (v, nth, nt);
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    Ok(random_min.min(best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{generator, GeneratorKind};
    use crate::orbit::{omega_phi, orbit_class};
    use crate::wedge::pfaffian;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn w0() -> Bivector {
        Bivector::omega(1, 2) + Bivector::omega(3, 4)
    }

    #[test]
    fn t_phi_examples() {
        assert_eq!(t_phi(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(t_phi(FRAC_PI_3).unwrap(), (1.0 / 3f64.sqrt()).atanh(), epsilon = 1e-14);
        assert_abs_diff_eq!(t_phi(FRAC_PI_3).unwrap(), 0.658479, epsilon = 1e-6);
        assert_abs_diff_eq!(t_phi(2.0 * FRAC_PI_3).unwrap(), t_phi(FRAC_PI_3).unwrap(), epsilon = 1e-12);
        assert_eq!(t_phi(FRAC_PI_2), Err(Error::InvalidAngle(FRAC_PI_2)));
        assert!(t_phi(-0.1).is_err() && t_phi(3.2).is_err());
    }

    #[test]
    fn r_min_examples() {
        assert_abs_diff_eq!(r_min(0.0).unwrap(), SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(r_min(FRAC_PI_3).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(r_min(FRAC_PI_2).unwrap(), 0.0);
        assert!(r_min(FRAC_PI_2 - 1e-9).unwrap() < 1e-4);
        assert!(r_min(-1.0).is_err());
        for k in 0..=100 {
            let phi = PI * k as f64 / 100.0;
            let r = r_min(phi).unwrap();
            assert_abs_diff_eq!(r * r, 2.0 * phi.cos().abs(), epsilon = 1e-12);
            assert_abs_diff_eq!(r, r_min(PI - phi).unwrap(), epsilon = 1e-14);
        }
    }

    #[test]
    fn membership_examples() {
        assert!(slice_membership(&w0(), 1.0, &tol()).unwrap());
        assert!(!slice_membership(&w0(), 2.0, &tol()).unwrap());
        assert_eq!(slice_membership(&w0(), 0.0, &tol()), Err(Error::NonPositiveRadius(0.0)));
        // Slices are not invariant under boosts.
        let boosted = pushforward(&generator(GeneratorKind::boost(2), 0.8), &w0());
        assert!(!slice_membership(&boosted, 1.0, &tol()).unwrap());
        let r = quantities_ab(&boosted).0.sqrt();
        assert!(r > 1.0 && slice_membership(&boosted, r, &tol()).unwrap());
    }

    #[test]
    fn topology_examples() {
        let plus = orbit_class(&w0(), &tol()).unwrap();
        assert_eq!(slice_topology(&plus, 2.0, &tol()).unwrap(), SliceTopology::RP3);
        assert_eq!(slice_topology(&plus, 1.0, &tol()).unwrap(), SliceTopology::Sphere2);
        assert_eq!(slice_topology(&plus, 0.5, &tol()).unwrap(), SliceTopology::Empty);
        assert!(slice_certificate(&plus, 1.0 + 1e-12, &tol()).unwrap().boundary);
        let deg = orbit_class(&omega_phi(FRAC_PI_2), &tol()).unwrap();
        assert_eq!(slice_topology(&deg, 0.01, &tol()).unwrap(), SliceTopology::RP3);
        assert!(slice_topology(&deg, -1.0, &tol()).is_err());
    }

    #[test]
    fn sphere_points_are_members() {
        for w in [w0(), -(Bivector::omega(1, 2)) + Bivector::omega(3, 4), 2.5 * omega_phi(FRAC_PI_6)] {
            let class = orbit_class(&w, &tol()).unwrap();
            assert_eq!(slice_topology(&class, class.r0, &tol()).unwrap(), SliceTopology::Sphere2);
            for p in sphere_points(&class, 50, 3).unwrap() {
                assert!(slice_membership(&p, class.r0, &tol()).unwrap());
                assert_abs_diff_eq!(pfaffian(&p), pfaffian(&w), epsilon = 1e-9 * class.r0 * class.r0);
            }
        }
        assert!(sphere_points(&orbit_class(&omega_phi(FRAC_PI_2), &tol()).unwrap(), 5, 0).is_none());
    }

    #[test]
    fn consistency_with_pfaffian() {
        for k in 0..=40 {
            let phi = PI * k as f64 / 40.0;
            if k == 20 {
                continue;
            }
            let w = omega_phi(phi);
            let cf = canonical_form(&w, &tol()).unwrap();
            assert_abs_diff_eq!(r_min(cf.phi).unwrap(), pfaffian(&w).abs().sqrt(), epsilon = 1e-10);
        }
    }

    #[test]
    fn oracle_brackets_the_minimum() {
        let v = empirical_min_radius(&w0(), 200, 1, &tol()).unwrap();
        assert!((1.0 - 1e-12..=1.0 + 1e-3).contains(&v), "{v}");
        let v = empirical_min_radius(&omega_phi(FRAC_PI_3), 200, 1, &tol()).unwrap();
        assert!((1.0 - 1e-12..=1.02).contains(&v), "{v}");
        let v = empirical_min_radius(&omega_phi(FRAC_PI_2), 200, 1, &tol()).unwrap();
        assert!(v < 1e-3, "{v}");
        assert_eq!(empirical_min_radius(&w0(), 0, 1, &tol()), Err(Error::NoSamples));
        assert!(empirical_min_radius(&Bivector::omega(1, 2), 10, 1, &tol()).is_err());
    }

    #[test]
    fn oracle_is_seed_deterministic() {
        let w = 0.7 * omega_phi(1.1);
        let a = empirical_min_radius(&w, 300, 42, &tol()).unwrap();
        let b = empirical_min_radius(&w, 300, 42, &tol()).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
