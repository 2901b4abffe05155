//! Canonical forms and orbit geometry for light-cone bivectors.
//!
//! Every light-cone bivector can be written, in a suitable pseudo-orthonormal
//! basis related to the standard one by a spatial rotation, as
//! `r (cos φ ω12 + sin φ ω23 + ω34)` with `r > 0` and `φ ∈ [0, π]`. The
//! orbit through such a point is neutral when `cos φ ≠ 0` (and then contains
//! exactly one point of the form `r0 (ω12 ± ω34)` on the surface
//! `T̃_{P21(θ) P22(t)} Ω`), and degenerate at `φ = π/2`.
//!
//! Functions taking only `phi` work at the reference point
//! `Ω(φ) = √2 (cos φ ω12 + sin φ ω23 + ω34)`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use nalgebra::{DMatrix, DVector, Matrix4, Vector3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{span_residual, Mat4};
use crate::minkowski::{generator, lie_generator, GeneratorKind, LorentzMatrix, Vec4};
use crate::tolerance::ToleranceConfig;
use crate::wedge::{
    e_basis, hat_gram, hat_inner, in_light_cone, lie_action, pfaffian, pushforward, quantities_ab,
    Bivector, Half, C12, C13, C14, C23, C24, C34,
};

/// Fixed limits used by [`parallel_frame_check`].
pub const FRAME_TANGENTIAL_LIMIT: f64 = 1e-4;
pub const FRAME_NULL_LIMIT: f64 = 1e-6;

/// `(𝒂, 𝒃)` with `a = (c23, −c13, c12)` and `b = (c14, c24, c34)`.
pub fn split_ab(w: &Bivector) -> (Vector3<f64>, Vector3<f64>) {
    let c = w.coeffs();
    (
        Vector3::new(c[C23], -c[C13], c[C12]),
        Vector3::new(c[C14], c[C24], c[C34]),
    )
}

/// Inverse of [`split_ab`].
pub fn join_ab(a: &Vector3<f64>, b: &Vector3<f64>) -> Bivector {
    let mut c = [0.0; 6];
    c[C23] = a[0];
    c[C13] = -a[1];
    c[C12] = a[2];
    c[C14] = b[0];
    c[C24] = b[1];
    c[C34] = b[2];
    Bivector(c)
}

/// `r (cos φ ω12 + sin φ ω23 + ω34)` in the standard basis.
pub fn canonical_bivector(r: f64, phi: f64) -> Bivector {
    let (s, c) = phi.sin_cos();
    let mut out = [0.0; 6];
    out[C12] = r * c;
    out[C23] = r * s;
    out[C34] = r;
    Bivector(out)
}

/// The reference point `Ω(φ)` (radius `√2`).
pub fn omega_phi(phi: f64) -> Bivector {
    canonical_bivector(SQRT_2, phi)
}

/// Result of reducing a light-cone bivector to `r (cos φ ω12 + sin φ ω23 + ω34)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    pub r: f64,
    pub phi: f64,
    /// Columns are the adapted basis `e'1..e'4`; `e'4 = e4` and the spatial
    /// block is in SO(3).
    pub basis_witness: LorentzMatrix,
}

impl CanonicalForm {
    pub fn standard_bivector(&self) -> Bivector {
        canonical_bivector(self.r, self.phi)
    }

    /// Pushes the canonical expression back into the original coordinates.
    pub fn reconstruct(&self) -> Bivector {
        pushforward(&self.basis_witness, &self.standard_bivector())
    }

    pub fn basis_vectors(&self) -> [Vec4; 4] {
        let m = self.basis_witness.matrix();
        std::array::from_fn(|i| m.column(i).into_owned())
    }
}

/// `⟨𝒂, 𝒃⟩ / A(Ω)` clamped to `[−1, 1]`.
pub fn cos_phi_ratio(w: &Bivector) -> f64 {
    let (a, b) = split_ab(w);
    let (big_a, _) = quantities_ab(w);
    (a.dot(&b) / big_a).clamp(-1.0, 1.0)
}

fn require_light_cone(w: &Bivector, tol: &ToleranceConfig) -> Result<()> {
    if in_light_cone(w, tol) {
        Ok(())
    } else {
        let (a, b) = quantities_ab(w);
        Err(Error::NotInLightCone { a, b })
    }
}

/// Reduces `w` to its canonical form.
///
/// The adapted rotation `U = (u1 u2 u3)` has `u3 = 𝒃/|𝒃|` and `u1` along the
/// part of `𝒂` orthogonal to `𝒃`, so that `⟨u2, 𝒂⟩ = 0` and `⟨u1, 𝒂⟩ ≥ 0`.
/// When `𝒂 ∥ 𝒃` the choice of `u1` falls back to the standard basis vector
/// least aligned with `𝒃` (lowest index on ties), orthogonalised.
pub fn canonical_form(w: &Bivector, tol: &ToleranceConfig) -> Result<CanonicalForm> {
    require_light_cone(w, tol)?;
    let (a, b) = split_ab(w);
    let r = a.norm();
    let u3 = b / b.norm();
    let a_par = a.dot(&u3);
    let a_perp = a - a_par * u3;
    let perp_norm = a_perp.norm();

    let (u1, u2) = if perp_norm > 16.0 * f64::EPSILON * r {
        let u1 = a_perp / perp_norm;
        (u1, u3.cross(&u1))
    } else {
        let k = (0..3)
            .min_by(|&i, &j| u3[i].abs().total_cmp(&u3[j].abs()).then(i.cmp(&j)))
            .expect("three candidates");
        let mut ek = Vector3::zeros();
        ek[k] = 1.0;
        let u1 = (ek - ek.dot(&u3) * u3).normalize();
        (u1, u3.cross(&u1))
    };

    let phi = f64::atan2(u1.dot(&a).max(0.0), a_par);
    let mut q = Mat4::identity();
    for (col, u) in [u1, u2, u3].iter().enumerate() {
        for row in 0..3 {
            q[(row, col)] = u[row];
        }
    }
    Ok(CanonicalForm {
        r,
        phi,
        basis_witness: LorentzMatrix::new_unchecked(q),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitKind {
    NeutralPlus,
    NeutralMinus,
    Degenerate,
}

impl OrbitKind {
    pub fn is_neutral(self) -> bool {
        !matches!(self, OrbitKind::Degenerate)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub kind: OrbitKind,
    /// Minimal slice radius; zero for the degenerate orbit.
    pub r0: f64,
    /// `ε = ±1` for neutral orbits.
    pub epsilon: Option<i8>,
}

/// Classifies the orbit through `w` by the sign of its Pfaffian.
pub fn orbit_class(w: &Bivector, tol: &ToleranceConfig) -> Result<OrbitClass> {
    require_light_cone(w, tol)?;
    let (a, _) = quantities_ab(w);
    let pf = pfaffian(w);
    if pf.abs() <= tol.abs_tol * a.max(1.0) {
        return Ok(OrbitClass {
            kind: OrbitKind::Degenerate,
            r0: 0.0,
            epsilon: None,
        });
    }
    let (kind, eps) = if pf > 0.0 {
        (OrbitKind::NeutralPlus, 1)
    } else {
        (OrbitKind::NeutralMinus, -1)
    };
    Ok(OrbitClass {
        kind,
        r0: pf.abs().sqrt(),
        epsilon: Some(eps),
    })
}

/// `(θ, t)` such that `P21(θ) P22(t)` sends `Ω(φ)` to a multiple of
/// `ω12 + ε ω34`. For `ε = +1`: `θ = φ/2`, `tanh t = tan(φ/2)`; for `ε = −1`:
/// `θ = φ/2 + π/2`, `tanh t = cot(φ/2)`.
pub fn normal_form_params(phi: f64, epsilon: i8) -> Result<(f64, f64)> {
    let half = 0.5 * phi;
    let (theta, arg) = if epsilon > 0 {
        (half, half.tan())
    } else {
        (half + FRAC_PI_2, 1.0 / half.tan())
    };
    if !(arg.abs() < 1.0) {
        return Err(Error::InvalidAngle(phi));
    }
    Ok((theta, arg.atanh()))
}

/// The unique normal-form element of a neutral orbit together with a
/// Lorentz witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Representative {
    pub bivector: Bivector,
    /// `T̃_witness(Ω) = bivector`.
    pub witness: LorentzMatrix,
    pub canonical: CanonicalForm,
    pub class: OrbitClass,
    /// Distance of `bivector` from the exact `r0 (ω12 + ε ω34)`.
    pub residual: f64,
}

pub fn canonical_representative(w: &Bivector, tol: &ToleranceConfig) -> Result<Representative> {
    let class = orbit_class(w, tol)?;
    let eps = class.epsilon.ok_or(Error::DegenerateOrbit)?;
    let cf = canonical_form(w, tol)?;
    let (theta, t) = normal_form_params(cf.phi, eps)?;
    let to_normal = surface_transform(theta, t);
    let witness = to_normal * cf.basis_witness.inverse();
    let bivector = pushforward(&witness, w);
    let exact = class.r0 * (Bivector::omega(1, 2) + f64::from(eps) * Bivector::omega(3, 4));
    Ok(Representative {
        bivector,
        witness,
        canonical: cf,
        class,
        residual: bivector.max_abs_diff(&exact),
    })
}

/// Tangent frame `X±, Y±` of the orbit at `Ω(φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentFrame {
    pub x_plus: Bivector,
    pub x_minus: Bivector,
    pub y_plus: Bivector,
    pub y_minus: Bivector,
    pub base_point: Bivector,
}

impl TangentFrame {
    /// Frame vectors in the order `(X+, X−, Y+, Y−)`.
    pub fn vectors(&self) -> [Bivector; 4] {
        [self.x_plus, self.x_minus, self.y_plus, self.y_minus]
    }

    pub fn transported(&self, p: &LorentzMatrix) -> TangentFrame {
        TangentFrame {
            x_plus: pushforward(p, &self.x_plus),
            x_minus: pushforward(p, &self.x_minus),
            y_plus: pushforward(p, &self.y_plus),
            y_minus: pushforward(p, &self.y_minus),
            base_point: pushforward(p, &self.base_point),
        }
    }

    pub fn gram(&self) -> Matrix4<f64> {
        let v = self.vectors();
        Matrix4::from_fn(|i, j| hat_inner(&v[i], &v[j]))
    }
}

fn check_phi(phi: f64) -> Result<()> {
    if (0.0..=PI).contains(&phi) {
        Ok(())
    } else {
        Err(Error::InvalidAngle(phi))
    }
}

fn x_vector(phi: f64, half: Half) -> Bivector {
    let (s, c) = phi.sin_cos();
    let sign = half.sign();
    s * e_basis(half, 1) - (sign * c) * e_basis(half, 3) - e_basis(half.flip(), 3)
}

/// `X± = sin φ E±1 ∓ cos φ E±3 − E∓3`, `Y± = E±2`.
pub fn tangent_frame(phi: f64) -> Result<TangentFrame> {
    check_phi(phi)?;
    Ok(TangentFrame {
        x_plus: x_vector(phi, Half::Plus),
        x_minus: x_vector(phi, Half::Minus),
        y_plus: e_basis(Half::Plus, 2),
        y_minus: e_basis(Half::Minus, 2),
        base_point: omega_phi(phi),
    })
}

/// Velocities of the six one-parameter subgroups at `Ω(φ)`, in the order
/// `P11, P12, P21, P22, P31, P32`.
pub fn orbit_tangent_vectors(phi: f64) -> [Bivector; 6] {
    let base = omega_phi(phi);
    GeneratorKind::ALL.map(|k| lie_action(&lie_generator(k), &base))
}

/// `N± = −cos φ E±1 ∓ sin φ E±3 ± E∓1`, normal to the orbit at `Ω(φ)`.
pub fn normal_vectors(phi: f64) -> (Bivector, Bivector) {
    let (s, c) = phi.sin_cos();
    let n = |half: Half| {
        let sign = half.sign();
        (-c) * e_basis(half, 1) - (sign * s) * e_basis(half, 3) + sign * e_basis(half.flip(), 1)
    };
    (n(Half::Plus), n(Half::Minus))
}

/// Gram matrix of `(X+, X−, Y+, Y−)` under `ĥ`.
pub fn tangent_gram(phi: f64) -> Result<Matrix4<f64>> {
    Ok(tangent_frame(phi)?.gram())
}

/// `(positive, negative, zero)` eigenvalue counts of [`tangent_gram`].
pub fn tangent_signature(phi: f64, tol: &ToleranceConfig) -> Result<(usize, usize, usize)> {
    let g = tangent_gram(phi)?;
    let d = DMatrix::from_fn(4, 4, |i, j| g[(i, j)]);
    Ok(crate::linalg::inertia(&d, tol.abs_tol))
}

/// The pseudo-orthonormal tangent basis `(X1, X2, Y1, Y2)` with `X1, Y1`
/// space-like and `X2, Y2` time-like. Undefined at `φ = π/2`.
pub fn orthonormal_tangent_frame(phi: f64, tol: &ToleranceConfig) -> Result<[Bivector; 4]> {
    check_phi(phi)?;
    let (s, c) = phi.sin_cos();
    if c.abs() <= tol.abs_tol {
        return Err(Error::InvalidAngle(phi));
    }
    let k = 1.0 / (2.0 * c);
    let x1 = k * ((c * s) * Bivector::omega(1, 2) - (1.0 + c * c) * Bivector::omega(2, 3) - s * Bivector::omega(3, 4));
    let x2 = k
        * ((c * s) * Bivector::omega(1, 2) - (2.0 * c) * Bivector::omega(1, 4)
            + (s * s) * Bivector::omega(2, 3)
            + s * Bivector::omega(3, 4));
    Ok([x1, x2, Bivector::omega(1, 3), Bivector::omega(4, 2)])
}

/// `P21(θ) P22(t)`; the two factors commute.
pub fn surface_transform(theta: f64, t: f64) -> LorentzMatrix {
    generator(GeneratorKind::rotation(2), theta) * generator(GeneratorKind::boost(2), t)
}

/// The point `T̃_{P21(θ) P22(t)} Ω(φ)` of the surface through `Ω(φ)`, in
/// closed form.
pub fn surface_point(phi: f64, theta: f64, t: f64) -> Bivector {
    let (sd, cd) = (phi - theta).sin_cos();
    let (st, ct) = theta.sin_cos();
    let (sh, ch) = (t.sinh(), t.cosh());
    let mut c = [0.0; 6];
    c[C12] = SQRT_2 * (cd * ch - st * sh);
    c[C34] = SQRT_2 * (-sd * sh + ct * ch);
    c[C14] = SQRT_2 * (cd * sh - st * ch);
    c[C23] = SQRT_2 * (sd * ch - ct * sh);
    Bivector(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameBranch {
    Neutral,
    Degenerate,
}

/// Outcome of [`parallel_frame_check`]. Residuals that do not apply to the
/// branch are zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelFrameReport {
    pub branch: FrameBranch,
    /// Largest tangential component of `∂X̃±`, `∂Ỹ±` (neutral branch).
    pub max_tangential: f64,
    /// Largest deviation of `∂θ X̃±`, `∂t X̃±` from `T̃N±`, `±T̃N∓`.
    pub max_normal_mismatch: f64,
    /// Largest `|ĥ(∂X̃, ∂X̃)|` (degenerate branch).
    pub max_x_null: f64,
    /// Largest distance of `∂X̃±` from `span{X̃+, X̃−}` (degenerate branch).
    pub max_x_span: f64,
    /// Largest norm of `∂Ỹ±`.
    pub max_y_derivative: f64,
    pub passed: bool,
}

/// Finite-difference check that the transported frame is parallel along the
/// surface through `Ω(φ)` (or, at `φ = π/2`, that its derivatives stay in
/// the null distribution).
pub fn parallel_frame_check(phi: f64, theta: f64, t: f64, tol: &ToleranceConfig) -> Result<ParallelFrameReport> {
    let frame = tangent_frame(phi)?;
    let h = tol.fd_step;
    let at = |th: f64, tt: f64| frame.transported(&surface_transform(th, tt));
    let here = at(theta, t);
    let diff = |a: Bivector, b: Bivector| (1.0 / (2.0 * h)) * (a - b);
    let (tp, tm, sp, sm) = (at(theta + h, t), at(theta - h, t), at(theta, t + h), at(theta, t - h));
    let d_theta = [
        diff(tp.x_plus, tm.x_plus),
        diff(tp.x_minus, tm.x_minus),
        diff(tp.y_plus, tm.y_plus),
        diff(tp.y_minus, tm.y_minus),
    ];
    let d_t = [
        diff(sp.x_plus, sm.x_plus),
        diff(sp.x_minus, sm.x_minus),
        diff(sp.y_plus, sm.y_plus),
        diff(sp.y_minus, sm.y_minus),
    ];

    let max_y_derivative = [d_theta[2], d_theta[3], d_t[2], d_t[3]]
        .iter()
        .map(Bivector::norm)
        .fold(0.0, f64::max);

    let basis = here.vectors();
    let basis_mat = DMatrix::from_fn(6, 4, |r, c| basis[c][r]);
    if phi.cos().abs() > tol.abs_tol {
        let g = hat_gram();
        let g_dyn = DMatrix::from_fn(6, 6, |r, c| g[(r, c)]);
        let gram = basis_mat.transpose() * &g_dyn * &basis_mat;
        let lu = gram.lu();
        let tangential = |v: &Bivector| -> f64 {
            let rhs = basis_mat.transpose() * &g_dyn * DVector::from_column_slice(v.coeffs());
            match lu.solve(&rhs) {
                Some(coef) => (&basis_mat * coef).norm(),
                None => f64::INFINITY,
            }
        };
        let max_tangential = d_theta.iter().chain(d_t.iter()).map(tangential).fold(0.0, f64::max);

        let r = surface_transform(theta, t);
        let (n_plus, n_minus) = normal_vectors(phi);
        let expect_theta = [pushforward(&r, &n_plus), pushforward(&r, &n_minus)];
        let expect_t = [pushforward(&r, &n_minus), -pushforward(&r, &n_plus)];
        let max_normal_mismatch = (0..2)
            .map(|i| {
                d_theta[i]
                    .max_abs_diff(&expect_theta[i])
                    .max(d_t[i].max_abs_diff(&expect_t[i]))
            })
            .fold(0.0, f64::max);

        let passed = max_tangential <= FRAME_TANGENTIAL_LIMIT && max_normal_mismatch <= FRAME_TANGENTIAL_LIMIT;
        Ok(ParallelFrameReport {
            branch: FrameBranch::Neutral,
            max_tangential,
            max_normal_mismatch,
            max_x_null: 0.0,
            max_x_span: 0.0,
            max_y_derivative,
            passed,
        })
    } else {
        let x_span = DMatrix::from_fn(6, 2, |r, c| basis[c][r]);
        let xs = [d_theta[0], d_theta[1], d_t[0], d_t[1]];
        let max_x_null = xs.iter().map(|v| hat_inner(v, v).abs()).fold(0.0, f64::max);
        let max_x_span = xs
            .iter()
            .map(|v| span_residual(&x_span, &DVector::from_column_slice(v.coeffs())))
            .fold(0.0, f64::max);
        let passed = max_x_null <= FRAME_NULL_LIMIT
            && max_x_span <= FRAME_TANGENTIAL_LIMIT
            && max_y_derivative <= FRAME_NULL_LIMIT;
        Ok(ParallelFrameReport {
            branch: FrameBranch::Degenerate,
            max_tangential: 0.0,
            max_normal_mismatch: 0.0,
            max_x_null,
            max_x_span,
            max_y_derivative,
            passed,
        })
    }
}

/// A surface point of the form `coefficient · (ω12 + ε ω34)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalFormHit {
    pub theta: f64,
    pub t: f64,
    /// Signed `ω12` coefficient.
    pub coefficient: f64,
    pub epsilon: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormScan {
    pub hits: Vec<NormalFormHit>,
    /// Distinct `(|coefficient|, ε)` pairs among the hits.
    pub patterns: Vec<(f64, i8)>,
}

/// Scans an `n × n` grid of `(θ, t) ∈ [−π, π) × [−t_max, t_max]` on the
/// surface through `Ω(φ)` for points whose `ω14`, `ω23` coefficients
/// vanish, refining every grid-local minimum with Newton's method.
pub fn scan_normal_forms(phi: f64, n: usize, t_max: f64) -> NormalFormScan {
    let residual = |th: f64, t: f64| {
        let p = surface_point(phi, th, t);
        p[C14] * p[C14] + p[C23] * p[C23]
    };
    let theta_at = |i: usize| -PI + 2.0 * PI * i as f64 / n as f64;
    let t_at = |j: usize| -t_max + 2.0 * t_max * j as f64 / (n - 1) as f64;

    let values: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| residual(theta_at(i), t_at(j)))
        .collect();
    let val = |i: usize, j: usize| values[i * n + j];

    let mut hits: Vec<NormalFormHit> = Vec::new();
    for i in 0..n {
        for j in 1..n - 1 {
            let v = val(i, j);
            let is_min = (-1i64..=1).all(|di| {
                (-1i64..=1).all(|dj| {
                    if di == 0 && dj == 0 {
                        return true;
                    }
                    let ii = (i as i64 + di).rem_euclid(n as i64) as usize;
                    let jj = (j as i64 + dj) as usize;
                    v <= val(ii, jj)
                })
            });
            if !is_min {
                continue;
            }
            let Some((th, t)) = refine_normal_form(phi, theta_at(i), t_at(j)) else {
                continue;
            };
            if t.abs() > 2.0 * t_max {
                continue;
            }
            let th = (th + PI).rem_euclid(2.0 * PI) - PI;
            if hits.iter().any(|h| angle_gap(h.theta, th) < 1e-8 && (h.t - t).abs() < 1e-8) {
                continue;
            }
            let p = surface_point(phi, th, t);
            let eps = if p[C12] * p[C34] >= 0.0 { 1 } else { -1 };
            hits.push(NormalFormHit {
                theta: th,
                t,
                coefficient: p[C12],
                epsilon: eps,
            });
        }
    }

    let mut patterns: Vec<(f64, i8)> = Vec::new();
    for h in &hits {
        let r = h.coefficient.abs();
        if !patterns.iter().any(|&(pr, pe)| pe == h.epsilon && (pr - r).abs() <= 1e-9 * pr.max(1.0)) {
            patterns.push((r, h.epsilon));
        }
    }
    NormalFormScan { hits, patterns }
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Newton iteration on `(c14, c23) = 0` along the surface.
fn refine_normal_form(phi: f64, theta0: f64, t0: f64) -> Option<(f64, f64)> {
    let (mut th, mut t) = (theta0, t0);
    for _ in 0..60 {
        let (sd, cd) = (phi - th).sin_cos();
        let (st, ct) = th.sin_cos();
        let (sh, ch) = (t.sinh(), t.cosh());
        let f1 = cd * sh - st * ch;
        let f2 = sd * ch - ct * sh;
        let scale = ch.max(1.0);
        if f1.abs().max(f2.abs()) <= 1e-14 * scale {
            return Some((th, t));
        }
        // ∂θ f1 = ∂t f2, ∂t f1 = −∂θ f2
        let a = sd * sh - ct * ch;
        let b = cd * ch - st * sh;
        let det = a * a + b * b;
        if det < 1e-300 {
            return None;
        }
        // [a b; −b a] · (dθ, dt) = −(f1, f2)
        let d_th = -(a * f1 - b * f2) / det;
        let d_t = -(b * f1 + a * f2) / det;
        th += d_th;
        t += d_t;
        if !t.is_finite() || t.abs() > 50.0 {
            return None;
        }
    }
    None
}

/// A random light-cone bivector with `r ∈ [0.2, 5]` and independent uniform
/// directions for `𝒂` and `𝒃`.
pub fn random_light_cone<R: Rng + ?Sized>(rng: &mut R) -> Bivector {
    let r: f64 = rng.random_range(0.2..=5.0);
    let a = random_unit3(rng);
    let b = random_unit3(rng);
    join_ab(&(r * a), &(r * b))
}

pub fn random_unit3<R: Rng + ?Sized>(rng: &mut R) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Spatial rotation `diag(U, 1)` as a Lorentz matrix.
pub fn spatial_rotation(u: &nalgebra::Rotation3<f64>) -> LorentzMatrix {
    let mut q = Mat4::identity();
    q.fixed_view_mut::<3, 3>(0, 0).copy_from(u.matrix());
    LorentzMatrix::new_unchecked(q)
}
