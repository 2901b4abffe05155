//! Stabilizers of the canonical light-cone points and the subspaces of the
//! tangent space they leave invariant.
//!
//! At a neutral point `Ω0 = r(ω12 + ε ω34)` the stabilizer is generated by
//! the 1-2 rotations and the boosts along e3 (and their negatives). At the
//! degenerate point `Ω(π/2) = √2 (ω23 + ω34)` it is generated by the two
//! commuting one-parameter families `U_t`, `V_t`, which fix the null plane
//! `W0 = span{X+, X−}` pointwise.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use nalgebra::{DMatrix, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{column_space, subspace_distance, Mat4, Mat6};
use crate::minkowski::{generator, lie_generator, GeneratorKind, LorentzMatrix};
use crate::orbit::{canonical_form, canonical_representative, orbit_class, tangent_frame, OrbitClass};
use crate::tolerance::ToleranceConfig;
use crate::wedge::{e_basis, lie_action_matrix, pushforward, pushforward_matrix, Bivector, Half};

/// Parameters at which each one-parameter family is sampled when testing
/// invariance.
pub const SAMPLE_PARAMS: [f64; 4] = [-0.9, -0.3, 0.3, 0.9];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerFamily {
    Rot12,
    Boost34,
    NegBoost34,
    U,
    V,
    UPrime,
    VPrime,
}

/// Generators of the stabilizer at `r(ω12 + ε ω34)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeutralGenerator {
    Rot12,
    Boost34,
    NegBoost34,
}

/// Generators of the stabilizer at `Ω(π/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateGenerator {
    U,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilizerElement {
    pub matrix: LorentzMatrix,
    pub family: StabilizerFamily,
    pub parameter: f64,
}

impl StabilizerElement {
    /// `max |T̃(base) − base|`.
    pub fn fixing_residual(&self, base: &Bivector) -> f64 {
        pushforward(&self.matrix, base).max_abs_diff(base)
    }
}

pub fn neutral_base_point(r: f64, epsilon: i8) -> Bivector {
    r * (Bivector::omega(1, 2) + f64::from(epsilon) * Bivector::omega(3, 4))
}

/// `Ω(π/2) = E+1 − E−1 + E+3 − E−3 = √2 (ω23 + ω34)`.
pub fn degenerate_base_point() -> Bivector {
    SQRT_2 * (Bivector::omega(2, 3) + Bivector::omega(3, 4))
}

/// `Ω' = E+1 + E−1 − E+3 − E−3`; together with `Ω(π/2)` it spans `W0`.
pub fn degenerate_companion() -> Bivector {
    e_basis(Half::Plus, 1) + e_basis(Half::Minus, 1) - e_basis(Half::Plus, 3) - e_basis(Half::Minus, 3)
}

pub fn stabilizer_generator_neutral(kind: NeutralGenerator, parameter: f64) -> StabilizerElement {
    let (matrix, family) = match kind {
        NeutralGenerator::Rot12 => (generator(GeneratorKind::rotation(1), parameter), StabilizerFamily::Rot12),
        NeutralGenerator::Boost34 => (generator(GeneratorKind::boost(1), parameter), StabilizerFamily::Boost34),
        NeutralGenerator::NegBoost34 => (-generator(GeneratorKind::boost(1), parameter), StabilizerFamily::NegBoost34),
    };
    StabilizerElement { matrix, family, parameter }
}

/// `θ(t) = arcsin(tanh t)`, `s(t) = −log(cosh t)`.
pub fn theta_s(t: f64) -> (f64, f64) {
    let a = t.abs();
    // log cosh t = |t| + log(1 + e^{−2|t|}) − log 2, stable for large |t|.
    let log_cosh = a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2;
    (t.tanh().asin(), -log_cosh)
}

/// `U_t = P32(t) P11(−θ(t)) P22(s(t))`, `V_t = P12(t) P31(θ(t)) P22(s(t))`.
pub fn stabilizer_generator_degenerate(kind: DegenerateGenerator, t: f64) -> StabilizerElement {
    let (theta, s) = theta_s(t);
    let tail = generator(GeneratorKind::boost(2), s);
    let (matrix, family) = match kind {
        DegenerateGenerator::U => (
            generator(GeneratorKind::boost(3), t) * generator(GeneratorKind::rotation(1), -theta) * tail,
            StabilizerFamily::U,
        ),
        DegenerateGenerator::V => (
            generator(GeneratorKind::boost(1), t) * generator(GeneratorKind::rotation(3), theta) * tail,
            StabilizerFamily::V,
        ),
    };
    StabilizerElement { matrix, family, parameter: t }
}

/// The polynomial form of `U_t` with `x = tanh t`.
pub fn u_prime(x: f64) -> LorentzMatrix {
    let q = 0.5 * x * x;
    LorentzMatrix::new_unchecked(Matrix4::new(
        1.0, x, 0.0, x,
        -x, 1.0 - q, 0.0, -q,
        0.0, 0.0, 1.0, 0.0,
        x, q, 0.0, 1.0 + q,
    ))
}

/// The polynomial form of `V_t` with `x = tanh t`.
pub fn v_prime(x: f64) -> LorentzMatrix {
    let q = 0.5 * x * x;
    LorentzMatrix::new_unchecked(Matrix4::new(
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0 - q, -x, -q,
        0.0, x, 1.0, x,
        0.0, q, x, 1.0 + q,
    ))
}

fn u_prime_velocity() -> Mat4 {
    Matrix4::new(
        0.0, 1.0, 0.0, 1.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0,
        1.0, 0.0, 0.0, 0.0,
    )
}

fn v_prime_velocity() -> Mat4 {
    Matrix4::new(
        0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, -1.0, 0.0,
        0.0, 1.0, 0.0, 1.0,
        0.0, 0.0, 1.0, 0.0,
    )
}

/// Lie-algebra velocities of the two stabilizer generators at parameter 0.
pub fn stabilizer_velocities(base: StabilizerBase) -> [Mat4; 2] {
    match base {
        StabilizerBase::Neutral { .. } => [
            lie_generator(GeneratorKind::rotation(1)),
            lie_generator(GeneratorKind::boost(1)),
        ],
        StabilizerBase::Degenerate => [u_prime_velocity(), v_prime_velocity()],
    }
}

/// Coefficient matrix `[𝒂1 𝒂2 𝒂3 𝒂4]` describing how the neutral stabilizer
/// moves `a E+2 + b E−2 + c E+3 + d E−3`, and its determinant computed by
/// LU factorisation.
pub fn invariant_matrix_a(a: f64, b: f64, c: f64, d: f64) -> (Matrix4<f64>, f64) {
    let m = Matrix4::new(
        a, d, -c, -b,
        b, c, d, a,
        c, b, a, d,
        d, a, -b, -c,
    );
    let det = m.determinant();
    (m, det)
}

/// `det A = −((a−d)² + (b−c)²)((a+d)² + (b+c)²)`.
pub fn invariant_det_closed_form(a: f64, b: f64, c: f64, d: f64) -> f64 {
    -((a - d).powi(2) + (b - c).powi(2)) * ((a + d).powi(2) + (b + c).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubspaceLabel {
    Whole,
    WPlus,
    WMinus,
    W0,
    ContainsW0,
    LineInW0,
    NotInvariant,
}

/// The canonical point whose tangent space is being examined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StabilizerBase {
    Neutral { r: f64, epsilon: i8 },
    Degenerate,
}

impl StabilizerBase {
    pub fn base_point(&self) -> Bivector {
        match *self {
            StabilizerBase::Neutral { r, epsilon } => neutral_base_point(r, epsilon),
            StabilizerBase::Degenerate => degenerate_base_point(),
        }
    }

    /// A basis of the tangent space of the orbit at the base point.
    pub fn tangent_basis(&self) -> [Bivector; 4] {
        match self {
            StabilizerBase::Neutral { .. } => [
                e_basis(Half::Plus, 2),
                e_basis(Half::Minus, 2),
                e_basis(Half::Plus, 3),
                e_basis(Half::Minus, 3),
            ],
            StabilizerBase::Degenerate => tangent_frame(FRAC_PI_2).expect("π/2 is in range").vectors(),
        }
    }
}

/// Whether the sampled neutral stabilizer includes `−P12(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSet {
    WithNegation,
    WithoutNegation,
}

/// `W+ = span{E+2 + E−3, E−2 + E+3}`.
pub fn w_plus() -> [Bivector; 2] {
    [
        e_basis(Half::Plus, 2) + e_basis(Half::Minus, 3),
        e_basis(Half::Minus, 2) + e_basis(Half::Plus, 3),
    ]
}

/// `W− = span{E+2 − E−3, E−2 − E+3}`.
pub fn w_minus() -> [Bivector; 2] {
    [
        e_basis(Half::Plus, 2) - e_basis(Half::Minus, 3),
        e_basis(Half::Minus, 2) - e_basis(Half::Plus, 3),
    ]
}

/// `W0 = span{X+, X−}` at `φ = π/2`.
pub fn w_zero() -> [Bivector; 2] {
    let f = tangent_frame(FRAC_PI_2).expect("π/2 is in range");
    [f.x_plus, f.x_minus]
}

/// Sampled stabilizer elements at the base point.
pub fn sampled_elements(base: StabilizerBase, set: GeneratorSet) -> Vec<StabilizerElement> {
    let mut out = Vec::new();
    match base {
        StabilizerBase::Neutral { .. } => {
            let mut kinds = vec![NeutralGenerator::Rot12, NeutralGenerator::Boost34];
            if set == GeneratorSet::WithNegation {
                kinds.push(NeutralGenerator::NegBoost34);
            }
            for kind in kinds {
                for &p in &SAMPLE_PARAMS {
                    out.push(stabilizer_generator_neutral(kind, p));
                }
            }
        }
        StabilizerBase::Degenerate => {
            for kind in [DegenerateGenerator::U, DegenerateGenerator::V] {
                for &p in &SAMPLE_PARAMS {
                    out.push(stabilizer_generator_degenerate(kind, p));
                }
            }
        }
    }
    out
}

/// Linear maps on bivectors used to decide invariance: pushforwards of the
/// sampled elements and the infinitesimal actions at parameter 0.
fn sampled_maps(base: StabilizerBase, set: GeneratorSet) -> Vec<Mat6> {
    let mut maps: Vec<Mat6> = sampled_elements(base, set)
        .iter()
        .map(|e| pushforward_matrix(&e.matrix))
        .collect();
    maps.extend(stabilizer_velocities(base).iter().map(lie_action_matrix));
    maps
}

fn to_columns(vs: &[Bivector]) -> DMatrix<f64> {
    DMatrix::from_fn(6, vs.len(), |r, c| vs[c][r])
}

/// Classifies `span` (a subspace of the tangent space at the base point) by
/// its invariance under the stabilizer, using the full generator set.
pub fn classify_invariant_subspace(
    base: StabilizerBase,
    span: &[Bivector],
    tol: &ToleranceConfig,
) -> Result<SubspaceLabel> {
    classify_invariant_subspace_with(base, span, GeneratorSet::WithNegation, tol)
}

pub fn classify_invariant_subspace_with(
    base: StabilizerBase,
    span: &[Bivector],
    set: GeneratorSet,
    tol: &ToleranceConfig,
) -> Result<SubspaceLabel> {
    let eps = tol.abs_tol.max(1e-8);
    let q = column_space(&to_columns(span), eps);
    if q.ncols() == 0 {
        return Err(Error::EmptySpan);
    }

    let tangent = column_space(&to_columns(&base.tangent_basis()), 1e-12);
    let off_tangent = &q - &tangent * (tangent.transpose() * &q);
    let tangency = off_tangent.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
    if tangency > eps {
        return Err(Error::NotTangent(tangency));
    }

    let dim = q.ncols();
    let invariant = sampled_maps(base, set).iter().all(|m| {
        let md = DMatrix::from_fn(6, 6, |r, c| m[(r, c)]);
        let img = &md * &q;
        let resid = &img - &q * (q.transpose() * &img);
        let scale = md.norm().max(1.0);
        resid.column_iter().all(|c| c.norm() <= eps * scale)
    });
    if !invariant {
        return Ok(SubspaceLabel::NotInvariant);
    }
    if dim == 4 {
        return Ok(SubspaceLabel::Whole);
    }

    let unexpected = || {
        Error::InvariantViolation(format!(
            "found an invariant {dim}-dimensional subspace outside the known lattice"
        ))
    };
    match base {
        StabilizerBase::Neutral { .. } => {
            let wp = column_space(&to_columns(&w_plus()), 1e-12);
            let wm = column_space(&to_columns(&w_minus()), 1e-12);
            if subspace_distance(&q, &wp) <= eps {
                Ok(SubspaceLabel::WPlus)
            } else if subspace_distance(&q, &wm) <= eps {
                Ok(SubspaceLabel::WMinus)
            } else {
                Err(unexpected())
            }
        }
        StabilizerBase::Degenerate => {
            let w0 = column_space(&to_columns(&w_zero()), 1e-12);
            // Distance from each basis vector of one space to the other.
            let inside = |a: &DMatrix<f64>, b: &DMatrix<f64>| {
                let r = a - b * (b.transpose() * a);
                r.column_iter().map(|c| c.norm()).fold(0.0, f64::max) <= eps
            };
            match dim {
                1 if inside(&q, &w0) => Ok(SubspaceLabel::LineInW0),
                2 if inside(&q, &w0) => Ok(SubspaceLabel::W0),
                3 if inside(&w0, &q) => Ok(SubspaceLabel::ContainsW0),
                _ => Err(unexpected()),
            }
        }
    }
}

/// One conjugated stabilizer element of an arbitrary light-cone point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixingSample {
    pub element: StabilizerElement,
    /// `max |T̃(Ω) − Ω| / max(|Ω|, 1)`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerSummary {
    pub class: OrbitClass,
    pub samples: Vec<FixingSample>,
    pub max_residual: f64,
}

/// Stabilizer generators of an arbitrary light-cone point, obtained by
/// conjugating the generators at its canonical point.
pub fn stabilizer_at(w: &Bivector, tol: &ToleranceConfig) -> Result<StabilizerSummary> {
    let class = orbit_class(w, tol)?;
    // `to_base` sends w to the canonical point.
    let (to_base, base) = match class.epsilon {
        Some(eps) => {
            let rep = canonical_representative(w, tol)?;
            (rep.witness, StabilizerBase::Neutral { r: class.r0, epsilon: eps })
        }
        None => {
            let cf = canonical_form(w, tol)?;
            (cf.basis_witness.inverse(), StabilizerBase::Degenerate)
        }
    };
    let from_base = to_base.inverse();
    let scale = w.norm().max(1.0);
    let samples: Vec<FixingSample> = sampled_elements(base, GeneratorSet::WithNegation)
        .into_iter()
        .map(|e| {
            let conj = StabilizerElement {
                matrix: from_base * e.matrix * to_base,
                ..e
            };
            FixingSample {
                residual: conj.fixing_residual(w) / scale,
                element: conj,
            }
        })
        .collect();
    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    Ok(StabilizerSummary {
        class,
        samples,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, rank};
    use crate::minkowski::is_proper_lorentz;
    use crate::wedge::{in_light_cone, to_e_basis};
    use approx::assert_abs_diff_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn e(h: Half, i: usize) -> Bivector {
        e_basis(h, i)
    }

    #[test]
    fn neutral_generators_fix_base() {
        let base = neutral_base_point(1.0, 1);
        assert!(stabilizer_generator_neutral(NeutralGenerator::Rot12, 0.7).fixing_residual(&base) <= 1e-12);
        assert!(stabilizer_generator_neutral(NeutralGenerator::Boost34, 1.3).fixing_residual(&base) <= 1e-12);
        let neg = stabilizer_generator_neutral(NeutralGenerator::NegBoost34, 0.4);
        assert!(is_proper_lorentz(neg.matrix.matrix(), &tol()));
        assert!(neg.fixing_residual(&base) <= 1e-12);
        for &(r, eps) in &[(0.3, 1), (2.5, -1), (7.0, 1)] {
            let base = neutral_base_point(r, eps);
            for el in sampled_elements(StabilizerBase::Neutral { r, epsilon: eps }, GeneratorSet::WithNegation) {
                assert!(el.fixing_residual(&base) <= 1e-10 * r);
            }
        }
    }

    #[test]
    fn theta_s_values() {
        assert_eq!(theta_s(0.0), (0.0, 0.0));
        let (th, s) = theta_s(1.0);
        assert_abs_diff_eq!(th, 1.0f64.tanh().asin(), epsilon = 1e-15);
        assert_abs_diff_eq!(th, 0.86577, epsilon = 1e-5);
        assert_abs_diff_eq!(s, -0.43378, epsilon = 1e-5);
        for k in -20..=20 {
            let t = 0.25 * k as f64;
            let (th, s) = theta_s(t);
            assert!((t.sinh() - th.sin() * t.cosh()).abs() <= 1e-12 * t.cosh());
            assert!((s.exp() - th.cos()).abs() < 1e-12);
            assert!((s.exp() - 1.0 / t.cosh()).abs() < 1e-12);
        }
        // No overflow far out.
        assert!(theta_s(800.0).1.is_finite());
    }

    #[test]
    fn degenerate_generators_fix_base_and_companion() {
        assert!(max_abs(&(stabilizer_generator_degenerate(DegenerateGenerator::U, 0.0).matrix.into_inner() - Mat4::identity())) < 1e-15);
        let base = degenerate_base_point();
        let comp = degenerate_companion();
        for (kind, t) in [(DegenerateGenerator::U, 1.0), (DegenerateGenerator::V, -0.8), (DegenerateGenerator::U, -2.0), (DegenerateGenerator::V, 1.7)] {
            let el = stabilizer_generator_degenerate(kind, t);
            assert!(is_proper_lorentz(el.matrix.matrix(), &tol()));
            assert!(el.fixing_residual(&base) <= 1e-10, "{kind:?} {t}");
            assert!(el.fixing_residual(&comp) <= 1e-10, "{kind:?} {t}");
        }
    }

    #[test]
    fn degenerate_base_in_e_basis() {
        let e = to_e_basis(&degenerate_base_point()).to_array();
        let want = [1.0, 0.0, 1.0, -1.0, 0.0, -1.0];
        for (a, b) in e.iter().zip(want) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        assert!(in_light_cone(&degenerate_base_point(), &tol()));
    }

    #[test]
    fn primed_forms_match_products() {
        assert_eq!(u_prime(0.0).into_inner(), Mat4::identity());
        assert_eq!(v_prime(0.0).into_inner(), Mat4::identity());
        for &t in &[-1.5, -0.5, 0.5, 1.0, 1.5] {
            let u = stabilizer_generator_degenerate(DegenerateGenerator::U, t).matrix;
            let v = stabilizer_generator_degenerate(DegenerateGenerator::V, t).matrix;
            assert!(max_abs(&(u_prime(t.tanh()).into_inner() - u.into_inner())) <= 1e-10);
            assert!(max_abs(&(v_prime(t.tanh()).into_inner() - v.into_inner())) <= 1e-10);
        }
        for &(x, y) in &[(0.3, -0.5), (1.7, 2.2), (-4.0, 0.1)] {
            assert!(is_proper_lorentz(u_prime(x).matrix(), &ToleranceConfig::uniform(1e-9)));
            let uu = u_prime(x) * u_prime(y);
            assert!(max_abs(&(uu.into_inner() - u_prime(x + y).into_inner())) <= 1e-10);
            let vv = v_prime(x) * v_prime(y);
            assert!(max_abs(&(vv.into_inner() - v_prime(x + y).into_inner())) <= 1e-10);
        }
        let a = u_prime(0.3) * v_prime(-0.5);
        let b = v_prime(-0.5) * u_prime(0.3);
        assert!(max_abs(&(a.into_inner() - b.into_inner())) <= 1e-12);
    }

    #[test]
    fn velocities_match_derivatives_of_primed_forms() {
        let h = 1e-6;
        let du = (u_prime(h).into_inner() - u_prime(-h).into_inner()) / (2.0 * h);
        let dv = (v_prime(h).into_inner() - v_prime(-h).into_inner()) / (2.0 * h);
        let [vu, vv] = stabilizer_velocities(StabilizerBase::Degenerate);
        assert!(max_abs(&(du - vu)) < 1e-9 && max_abs(&(dv - vv)) < 1e-9);
    }

    #[test]
    fn stabilizers_are_two_dimensional() {
        for base in [StabilizerBase::Neutral { r: 1.0, epsilon: 1 }, StabilizerBase::Degenerate] {
            let vel = stabilizer_velocities(base);
            let m = DMatrix::from_fn(16, 2, |r, c| vel[c][(r / 4, r % 4)]);
            assert_eq!(rank(&m, 1e-12), 2);
        }
    }

    #[test]
    fn invariant_matrix_examples() {
        let (_, det) = invariant_matrix_a(1.0, 0.0, 0.0, 0.0);
        assert_abs_diff_eq!(det, -1.0, epsilon = 1e-12);
        let (_, det) = invariant_matrix_a(1.0, 2.0, 3.0, 4.0);
        assert_abs_diff_eq!(det, -500.0, epsilon = 1e-9);
        assert_eq!(invariant_det_closed_form(1.0, 2.0, 3.0, 4.0), -500.0);
        let (_, det) = invariant_matrix_a(1.0, 1.0, 1.0, 1.0);
        assert_abs_diff_eq!(det, 0.0, epsilon = 1e-12);
        // (a, b) = (d, c) puts the vector in W+.
        let v = e(Half::Plus, 2) + e(Half::Minus, 2) + e(Half::Plus, 3) + e(Half::Minus, 3);
        let q = column_space(&to_columns(&w_plus()), 1e-12);
        let vv = nalgebra::DVector::from_column_slice(v.coeffs());
        assert!((&vv - &q * (q.transpose() * &vv)).norm() < 1e-14);
    }

    #[test]
    fn invariant_matrix_columns_describe_the_action() {
        // Images of E = aE+2 + bE−2 + cE+3 + dE−3 under P11(θ)P12(t).
        let (a, b, c, d) = (0.3, -1.1, 0.7, 2.0);
        let (m, _) = invariant_matrix_a(a, b, c, d);
        let basis = [e(Half::Plus, 2), e(Half::Minus, 2), e(Half::Plus, 3), e(Half::Minus, 3)];
        let v = a * basis[0] + b * basis[1] + c * basis[2] + d * basis[3];
        for &(th, t) in &[(0.4, -0.2), (-1.2, 0.9)] {
            let p = generator(GeneratorKind::rotation(1), th) * generator(GeneratorKind::boost(1), t);
            let img = pushforward(&p, &v);
            let w = nalgebra::Vector4::new(th.cos() * t.cosh(), th.cos() * t.sinh(), th.sin() * t.cosh(), th.sin() * t.sinh());
            let coef = m * w;
            let expect = coef[0] * basis[0] + coef[1] * basis[1] + coef[2] * basis[2] + coef[3] * basis[3];
            assert!(img.max_abs_diff(&expect) < 1e-13);
        }
    }

    #[test]
    fn classify_examples() {
        let neutral = StabilizerBase::Neutral { r: 1.0, epsilon: 1 };
        assert_eq!(classify_invariant_subspace(neutral, &w_plus(), &tol()).unwrap(), SubspaceLabel::WPlus);
        assert_eq!(classify_invariant_subspace(neutral, &w_minus(), &tol()).unwrap(), SubspaceLabel::WMinus);
        assert_eq!(
            classify_invariant_subspace(neutral, &neutral.tangent_basis(), &tol()).unwrap(),
            SubspaceLabel::Whole
        );
        assert_eq!(
            classify_invariant_subspace(neutral, &[e(Half::Plus, 2)], &tol()).unwrap(),
            SubspaceLabel::NotInvariant
        );

        let f = tangent_frame(FRAC_PI_2).unwrap();
        let deg = StabilizerBase::Degenerate;
        assert_eq!(classify_invariant_subspace(deg, &[f.x_plus], &tol()).unwrap(), SubspaceLabel::LineInW0);
        assert_eq!(classify_invariant_subspace(deg, &[f.x_plus, f.y_plus], &tol()).unwrap(), SubspaceLabel::NotInvariant);
        assert_eq!(classify_invariant_subspace(deg, &w_zero(), &tol()).unwrap(), SubspaceLabel::W0);
        assert_eq!(
            classify_invariant_subspace(deg, &[f.x_plus, f.x_minus, f.y_minus], &tol()).unwrap(),
            SubspaceLabel::ContainsW0
        );
    }

    #[test]
    fn classify_errors() {
        let neutral = StabilizerBase::Neutral { r: 1.0, epsilon: 1 };
        assert_eq!(classify_invariant_subspace(neutral, &[], &tol()), Err(Error::EmptySpan));
        assert_eq!(classify_invariant_subspace(neutral, &[Bivector::ZERO], &tol()), Err(Error::EmptySpan));
        assert!(matches!(
            classify_invariant_subspace(neutral, &[e(Half::Plus, 1)], &tol()),
            Err(Error::NotTangent(_))
        ));
    }

    #[test]
    fn negation_does_not_change_labels() {
        let neutral = StabilizerBase::Neutral { r: 2.0, epsilon: -1 };
        for span in [w_plus().to_vec(), w_minus().to_vec(), vec![e(Half::Minus, 3)]] {
            let a = classify_invariant_subspace_with(neutral, &span, GeneratorSet::WithNegation, &tol()).unwrap();
            let b = classify_invariant_subspace_with(neutral, &span, GeneratorSet::WithoutNegation, &tol()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn u_t_moves_e2_into_w0() {
        let base = degenerate_base_point();
        let comp = degenerate_companion();
        for k in -10..=10 {
            let t = 0.2 * k as f64;
            let u = stabilizer_generator_degenerate(DegenerateGenerator::U, t).matrix;
            let v = stabilizer_generator_degenerate(DegenerateGenerator::V, t).matrix;
            let h = 0.5 * t.tanh();
            let (ep, em) = (e(Half::Plus, 2), e(Half::Minus, 2));
            assert!(pushforward(&u, &ep).max_abs_diff(&(ep - h * (base - comp))) < 1e-10);
            assert!(pushforward(&u, &em).max_abs_diff(&(em - h * (base + comp))) < 1e-10);
            assert!(pushforward(&v, &ep).max_abs_diff(&(ep - h * (base + comp))) < 1e-10);
            assert!(pushforward(&v, &em).max_abs_diff(&(em + h * (base - comp))) < 1e-10);
        }
    }

    #[test]
    fn stabilizer_of_general_points() {
        let mut rng = crate::minkowski::seeded_rng(9, 0);
        for _ in 0..20 {
            let w = crate::orbit::random_light_cone(&mut rng);
            let s = stabilizer_at(&w, &tol()).unwrap();
            assert!(s.max_residual < 1e-9, "{}", s.max_residual);
        }
        let s = stabilizer_at(&degenerate_base_point(), &tol()).unwrap();
        assert_eq!(s.class.kind, crate::orbit::OrbitKind::Degenerate);
        assert!(s.samples.iter().all(|x| matches!(x.element.family, StabilizerFamily::U | StabilizerFamily::V)));
        assert!(s.max_residual <= 1e-10);
    }
}
