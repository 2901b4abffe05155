//! The exterior square of Minkowski 4-space.
//!
//! Bivectors are stored as six coefficients over `ω_ij = e_i ∧ e_j` in
//! lexicographic order `(12, 13, 14, 23, 24, 34)`. The induced metric `ĥ` is
//! diagonal in this basis with signs `(+, +, −, +, −, −)`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use nalgebra::Vector6;
use serde::{Deserialize, Serialize};

use crate::linalg::{Mat4, Mat6};
use crate::minkowski::{minkowski_inner, LorentzMatrix, Vec4};
use crate::tolerance::ToleranceConfig;

/// Zero-based index pairs of the coefficient slots.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Diagonal of `ĥ` in the `ω` basis.
pub const HAT_SIGNS: [f64; 6] = [1.0, 1.0, -1.0, 1.0, -1.0, -1.0];

pub const C12: usize = 0;
pub const C13: usize = 1;
pub const C14: usize = 2;
pub const C23: usize = 3;
pub const C24: usize = 4;
pub const C34: usize = 5;

fn slot(i: usize, j: usize) -> (usize, f64) {
    let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    let idx = PAIRS
        .iter()
        .position(|&p| p == (lo, hi))
        .unwrap_or_else(|| panic!("no slot for indices ({i}, {j})"));
    (idx, sign)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bivector(pub [f64; 6]);

impl Bivector {
    pub const ZERO: Bivector = Bivector([0.0; 6]);

    pub fn new(c: [f64; 6]) -> Self {
        Self(c)
    }

    /// `ω_ij` for one-based `i ≠ j`; `omega(4, 2)` is `−ω24`.
    pub fn omega(i: usize, j: usize) -> Self {
        assert!(i != j && (1..=4).contains(&i) && (1..=4).contains(&j));
        let (idx, sign) = slot(i - 1, j - 1);
        let mut c = [0.0; 6];
        c[idx] = sign;
        Self(c)
    }

    pub fn coeffs(&self) -> &[f64; 6] {
        &self.0
    }

    pub fn to_vector(&self) -> Vector6<f64> {
        Vector6::from_column_slice(&self.0)
    }

    pub fn from_vector(v: &Vector6<f64>) -> Self {
        let mut c = [0.0; 6];
        c.copy_from_slice(v.as_slice());
        Self(c)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn max_abs_diff(&self, other: &Bivector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

impl Index<usize> for Bivector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Bivector {
    type Output = Bivector;
    fn add(self, rhs: Bivector) -> Bivector {
        Bivector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Bivector {
    fn add_assign(&mut self, rhs: Bivector) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Bivector {
    type Output = Bivector;
    fn sub(self, rhs: Bivector) -> Bivector {
        Bivector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        Bivector(self.0.map(|x| -x))
    }
}

impl Mul<Bivector> for f64 {
    type Output = Bivector;
    fn mul(self, rhs: Bivector) -> Bivector {
        Bivector(rhs.0.map(|x| self * x))
    }
}

impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["ω12", "ω13", "ω14", "ω23", "ω24", "ω34"];
        let mut first = true;
        for (name, &c) in NAMES.iter().zip(self.0.iter()) {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{name}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `x ∧ y`; each coefficient is a 2×2 minor of the pair.
pub fn wedge(x: &Vec4, y: &Vec4) -> Bivector {
    Bivector(PAIRS.map(|(i, j)| x[i] * y[j] - x[j] * y[i]))
}

/// The induced metric `ĥ(x∧y, u∧v) = h(x,u)h(y,v) − h(x,v)h(y,u)`, extended
/// bilinearly.
pub fn hat_inner(a: &Bivector, b: &Bivector) -> f64 {
    (0..6).map(|k| HAT_SIGNS[k] * a.0[k] * b.0[k]).sum()
}

/// `ĥ` evaluated on simple bivectors straight from `h`, without going
/// through coefficients.
pub fn hat_inner_simple(x: &Vec4, y: &Vec4, u: &Vec4, v: &Vec4) -> f64 {
    minkowski_inner(x, u) * minkowski_inner(y, v) - minkowski_inner(x, v) * minkowski_inner(y, u)
}

pub fn hat_gram() -> Mat6 {
    Mat6::from_diagonal(&Vector6::from_row_slice(&HAT_SIGNS))
}

/// `A = c12² + c13² + c23²`, `B = c14² + c24² + c34²`.
pub fn quantities_ab(w: &Bivector) -> (f64, f64) {
    let c = &w.0;
    let a = c[C12] * c[C12] + c[C13] * c[C13] + c[C23] * c[C23];
    let b = c[C14] * c[C14] + c[C24] * c[C24] + c[C34] * c[C34];
    (a, b)
}

/// Light-cone membership: `A = B ≠ 0` up to tolerance.
pub fn in_light_cone(w: &Bivector, tol: &ToleranceConfig) -> bool {
    let (a, b) = quantities_ab(w);
    (a - b).abs() <= tol.rel_tol * a.max(b).max(1.0) && a > tol.abs_tol
}

/// Matrix of `T̃_P` acting on coefficient vectors. Column `(k,l)` holds
/// `Pe_k ∧ Pe_l`.
pub fn pushforward_matrix(p: &LorentzMatrix) -> Mat6 {
    minors_matrix(p.matrix())
}

pub(crate) fn minors_matrix(p: &Mat4) -> Mat6 {
    Mat6::from_fn(|r, c| {
        let (i, j) = PAIRS[r];
        let (k, l) = PAIRS[c];
        p[(i, k)] * p[(j, l)] - p[(i, l)] * p[(j, k)]
    })
}

pub fn pushforward(p: &LorentzMatrix, w: &Bivector) -> Bivector {
    Bivector::from_vector(&(pushforward_matrix(p) * w.to_vector()))
}

/// Infinitesimal action of a Lie-algebra element `X`:
/// `X·(x ∧ y) = Xx ∧ y + x ∧ Xy`.
pub fn lie_action_matrix(x: &Mat4) -> Mat6 {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    Mat6::from_fn(|r, c| {
        let (i, j) = PAIRS[r];
        let (k, l) = PAIRS[c];
        x[(i, k)] * d(j, l) + d(i, k) * x[(j, l)] - x[(i, l)] * d(j, k) - d(i, l) * x[(j, k)]
    })
}

pub fn lie_action(x: &Mat4, w: &Bivector) -> Bivector {
    Bivector::from_vector(&(lie_action_matrix(x) * w.to_vector()))
}

/// `c12 c34 − c13 c24 + c14 c23`, the coefficient of `Ω ∧ Ω`.
pub fn pfaffian(w: &Bivector) -> f64 {
    let c = &w.0;
    c[C12] * c[C34] - c[C13] * c[C24] + c[C14] * c[C23]
}

/// Coordinates over the null basis
/// `E±1 = (ω12 ± ω34)/√2`, `E±2 = (ω13 ± ω42)/√2`, `E±3 = (ω14 ± ω23)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EBivector {
    pub plus: [f64; 3],
    pub minus: [f64; 3],
}

/// Selects the `+` or `−` half of the null basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    Plus,
    Minus,
}

impl Half {
    pub fn sign(self) -> f64 {
        match self {
            Half::Plus => 1.0,
            Half::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Half {
        match self {
            Half::Plus => Half::Minus,
            Half::Minus => Half::Plus,
        }
    }
}

impl EBivector {
    pub fn new(plus: [f64; 3], minus: [f64; 3]) -> Self {
        Self { plus, minus }
    }

    /// The single basis element `E_{half, i}` for `i ∈ {1, 2, 3}`.
    pub fn basis(half: Half, i: usize) -> Self {
        assert!((1..=3).contains(&i));
        let mut e = Self::default();
        match half {
            Half::Plus => e.plus[i - 1] = 1.0,
            Half::Minus => e.minus[i - 1] = 1.0,
        }
        e
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.plus[0], self.plus[1], self.plus[2], self.minus[0], self.minus[1], self.minus[2]]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Self {
            plus: [a[0], a[1], a[2]],
            minus: [a[3], a[4], a[5]],
        }
    }
}

/// `E_{half, i}` as a bivector.
pub fn e_basis(half: Half, i: usize) -> Bivector {
    from_e_basis(&EBivector::basis(half, i))
}

pub fn to_e_basis(w: &Bivector) -> EBivector {
    let c = &w.0;
    let s = FRAC_1_SQRT_2;
    EBivector {
        plus: [
            s * (c[C12] + c[C34]),
            s * (c[C13] - c[C24]),
            s * (c[C14] + c[C23]),
        ],
        minus: [
            s * (c[C12] - c[C34]),
            s * (c[C13] + c[C24]),
            s * (c[C14] - c[C23]),
        ],
    }
}

pub fn from_e_basis(e: &EBivector) -> Bivector {
    let s = FRAC_1_SQRT_2;
    let (p, m) = (&e.plus, &e.minus);
    let mut c = [0.0; 6];
    c[C12] = s * (p[0] + m[0]);
    c[C34] = s * (p[0] - m[0]);
    c[C13] = s * (p[1] + m[1]);
    c[C24] = -s * (p[1] - m[1]);
    c[C14] = s * (p[2] + m[2]);
    c[C23] = s * (p[2] - m[2]);
    Bivector(c)
}

/// Change of coordinates `ω → E` as a matrix on coefficient vectors
/// (rows ordered `E+1, E+2, E+3, E−1, E−2, E−3`).
pub fn e_basis_matrix() -> Mat6 {
    let mut m = Mat6::zeros();
    for k in 0..6 {
        let mut c = [0.0; 6];
        c[k] = 1.0;
        let e = to_e_basis(&Bivector(c)).to_array();
        for (r, v) in e.iter().enumerate() {
            m[(r, k)] = *v;
        }
    }
    m
}
