//! Minkowski 4-space: the metric `h = diag(1, 1, 1, -1)`, proper Lorentz
//! matrices and the six one-parameter generators of the identity component.
//!
//! The basis is fixed: `e1, e2, e3` space-like, `e4` time-like. Indices in
//! code are zero-based, so `e4` is component 3.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Mul, Neg};

use nalgebra::Vector4;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{max_abs, Mat4};
use crate::tolerance::ToleranceConfig;

pub type Vec4 = Vector4<f64>;

/// The metric matrix `η = diag(1, 1, 1, -1)`.
pub fn eta() -> Mat4 {
    Mat4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0))
}

/// `h(x, y) = x¹y¹ + x²y² + x³y³ − x⁴y⁴`.
pub fn minkowski_inner(x: &Vec4, y: &Vec4) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2] - x[3] * y[3]
}

/// Standard basis vector `e_i`, one-based to match the usual naming.
pub fn basis_vector(i: usize) -> Vec4 {
    assert!((1..=4).contains(&i), "basis index {i} out of range");
    let mut v = Vec4::zeros();
    v[i - 1] = 1.0;
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Rotation,
    Boost,
}

/// One of the six one-parameter subgroups `P_{k,l}`.
///
/// `k = 1` rotates the 1-2 plane and boosts along e3, `k = 2` rotates the
/// 1-3 plane and boosts along e2, `k = 3` rotates the 2-3 plane and boosts
/// along e1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorKind {
    axis: u8,
    family: Family,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind { axis: 1, family: Family::Rotation },
        GeneratorKind { axis: 1, family: Family::Boost },
        GeneratorKind { axis: 2, family: Family::Rotation },
        GeneratorKind { axis: 2, family: Family::Boost },
        GeneratorKind { axis: 3, family: Family::Rotation },
        GeneratorKind { axis: 3, family: Family::Boost },
    ];

    /// Builds `P_{k,l}` from its numeric indices, `l = 1` for the rotation
    /// and `l = 2` for the boost.
    pub fn new(axis: u8, family: u8) -> Result<Self> {
        let fam = match family {
            1 => Family::Rotation,
            2 => Family::Boost,
            _ => return Err(Error::InvalidGenerator { axis, family }),
        };
        if !(1..=3).contains(&axis) {
            return Err(Error::InvalidGenerator { axis, family });
        }
        Ok(Self { axis, family: fam })
    }

    pub const fn rotation(axis: u8) -> Self {
        assert!(axis >= 1 && axis <= 3);
        Self { axis, family: Family::Rotation }
    }

    pub const fn boost(axis: u8) -> Self {
        assert!(axis >= 1 && axis <= 3);
        Self { axis, family: Family::Boost }
    }

    pub fn axis(&self) -> u8 {
        self.axis
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Zero-based index pair the generator acts on. For boosts the second
    /// index is always the time direction.
    fn plane(&self) -> (usize, usize) {
        match (self.family, self.axis) {
            (Family::Rotation, 1) => (0, 1),
            (Family::Rotation, 2) => (0, 2),
            (Family::Rotation, 3) => (1, 2),
            (Family::Boost, 1) => (2, 3),
            (Family::Boost, 2) => (1, 3),
            (Family::Boost, 3) => (0, 3),
            _ => unreachable!("axis validated on construction"),
        }
    }

    pub fn at(self, param: f64) -> Generator {
        Generator { kind: self, param }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.family {
            Family::Rotation => 1,
            Family::Boost => 2,
        };
        write!(f, "P{}{}", self.axis, l)
    }
}

/// A generator together with its parameter (angle θ or rapidity t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub param: f64,
}

impl Generator {
    pub fn matrix(&self) -> LorentzMatrix {
        generator(self.kind, self.param)
    }
}

/// The matrix `P_{k,l}` at the given parameter.
pub fn generator(kind: GeneratorKind, param: f64) -> LorentzMatrix {
    let (i, j) = kind.plane();
    let mut m = Mat4::identity();
    match kind.family {
        Family::Rotation => {
            let (s, c) = param.sin_cos();
            m[(i, i)] = c;
            m[(j, j)] = c;
            m[(i, j)] = -s;
            m[(j, i)] = s;
        }
        Family::Boost => {
            let (s, c) = (param.sinh(), param.cosh());
            m[(i, i)] = c;
            m[(j, j)] = c;
            m[(i, j)] = s;
            m[(j, i)] = s;
        }
    }
    LorentzMatrix(m)
}

/// Derivative of `generator(kind, s)` at `s = 0`.
pub fn lie_generator(kind: GeneratorKind) -> Mat4 {
    let (i, j) = kind.plane();
    let mut m = Mat4::zeros();
    match kind.family {
        Family::Rotation => {
            m[(i, j)] = -1.0;
            m[(j, i)] = 1.0;
        }
        Family::Boost => {
            m[(i, j)] = 1.0;
            m[(j, i)] = 1.0;
        }
    }
    m
}

/// `max |ᵗP η P − η|`.
pub fn metric_defect(p: &Mat4) -> f64 {
    let eta = eta();
    max_abs(&(p.transpose() * eta * p - eta))
}

pub fn is_proper_lorentz(p: &Mat4, tol: &ToleranceConfig) -> bool {
    metric_defect(p) <= tol.abs_tol && (p.determinant() - 1.0).abs() <= tol.abs_tol
}

/// A 4×4 matrix preserving `h` with determinant +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Mat4);

impl LorentzMatrix {
    pub fn new(m: Mat4, tol: &ToleranceConfig) -> Result<Self> {
        if is_proper_lorentz(&m, tol) {
            Ok(Self(m))
        } else {
            Err(Error::NotLorentz {
                metric_defect: metric_defect(&m),
                det: m.determinant(),
            })
        }
    }

    /// Wraps a matrix known to be Lorentz by construction (closed-form
    /// families). Callers own the invariant.
    pub fn new_unchecked(m: Mat4) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_inner(self) -> Mat4 {
        self.0
    }

    /// `P⁻¹ = η ᵗP η`.
    pub fn inverse(&self) -> Self {
        let eta = eta();
        Self(eta * self.0.transpose() * eta)
    }

    pub fn apply(&self, x: &Vec4) -> Vec4 {
        self.0 * x
    }

    /// Product of a word of generators, left to right.
    pub fn from_word(word: &[Generator]) -> Self {
        word.iter()
            .fold(Self::identity(), |acc, g| acc * g.matrix())
    }

    /// Row-major entries.
    pub fn to_row_major(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for r in 0..4 {
            for c in 0..4 {
                out[4 * r + c] = self.0[(r, c)];
            }
        }
        out
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * rhs.0)
    }
}

impl Neg for LorentzMatrix {
    type Output = LorentzMatrix;
    /// `det(−P) = det P` in dimension four, so `−P` stays proper.
    fn neg(self) -> LorentzMatrix {
        LorentzMatrix(-self.0)
    }
}

/// Seeded generator for all sampling in the crate: ChaCha8 keyed by `seed`,
/// with `stream` selecting an independent substream.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A uniformly chosen generator: rotation angles in `[−π, π]`, rapidities in
/// `[−1, 1]`.
pub fn random_generator<R: Rng + ?Sized>(rng: &mut R) -> Generator {
    let kind = GeneratorKind::ALL[rng.random_range(0..6)];
    let param = match kind.family {
        Family::Rotation => rng.random_range(-PI..=PI),
        Family::Boost => rng.random_range(-1.0..=1.0),
    };
    kind.at(param)
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, word_length: usize) -> Result<Vec<Generator>> {
    if word_length == 0 {
        return Err(Error::EmptyWord);
    }
    Ok((0..word_length).map(|_| random_generator(rng)).collect())
}

pub fn random_proper_lorentz<R: Rng + ?Sized>(rng: &mut R, word_length: usize) -> Result<LorentzMatrix> {
    random_word(rng, word_length).map(|w| LorentzMatrix::from_word(&w))
}
