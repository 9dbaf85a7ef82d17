//! The three parametrized surface families and their exact jets.
//!
//! | family                 | r(u, v)                          |
//! |------------------------|----------------------------------|
//! | `NCoral(n)`            | (u cos v, u sin v, -u² cos nv)   |
//! | `Lettuce(n)`           | (v, u, -u² cos nv)               |
//! | `HyperbolicParaboloid` | (u cos v, u sin v, -u² cos 2v)   |
//!
//! The canonical domain is `u ∈ [0, 2]`, `v ∈ [0, 2π]`. The formulas are
//! entire, so points outside it are evaluated normally and only flagged.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;
use twofloat::TwoFloat;

use crate::{Error, Result};

pub const CANONICAL_U_MAX: f64 = 2.0;
pub const CANONICAL_V_MAX: f64 = TAU;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(self, o: Vec3) -> f64 {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainPoint {
    pub u: f64,
    pub v: f64,
}

impl DomainPoint {
    pub const fn new(u: f64, v: f64) -> Self {
        DomainPoint { u, v }
    }

    pub fn in_canonical_domain(&self) -> bool {
        (0.0..=CANONICAL_U_MAX).contains(&self.u) && (0.0..=CANONICAL_V_MAX).contains(&self.v)
    }
}

/// Position and all first and second partials at one domain point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet2 {
    pub p: Vec3,
    pub ru: Vec3,
    pub rv: Vec3,
    pub ruu: Vec3,
    pub ruv: Vec3,
    pub rvv: Vec3,
}

impl Jet2 {
    pub fn fields(&self) -> [(&'static str, Vec3); 6] {
        [
            ("p", self.p),
            ("ru", self.ru),
            ("rv", self.rv),
            ("ruu", self.ruu),
            ("ruv", self.ruv),
            ("rvv", self.rvv),
        ]
    }

    /// Worst componentwise difference over the five partials (position excluded).
    pub fn max_partial_diff(&self, other: &Jet2) -> f64 {
        self.fields()[1..]
            .iter()
            .zip(&other.fields()[1..])
            .map(|((_, a), (_, b))| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SurfaceKind {
    NCoral,
    Lettuce,
    HyperbolicParaboloid,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::NCoral => "coral",
            SurfaceKind::Lettuce => "lettuce",
            SurfaceKind::HyperbolicParaboloid => "paraboloid",
        })
    }
}

impl FromStr for SurfaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "coral" | "ncoral" | "n-coral" => Ok(SurfaceKind::NCoral),
            "lettuce" => Ok(SurfaceKind::Lettuce),
            "paraboloid" | "hyperbolic-paraboloid" => Ok(SurfaceKind::HyperbolicParaboloid),
            other => Err(Error::invalid(format!("unknown surface '{other}'"))),
        }
    }
}

/// A validated surface: the family plus its frequency `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceFamily {
    kind: SurfaceKind,
    n: u32,
}

impl SurfaceFamily {
    /// `n` must be at least 2 for the coral and at least 1 for the lettuce.
    /// The paraboloid ignores `n` and always carries frequency 2.
    pub fn new(kind: SurfaceKind, n: u32) -> Result<Self> {
        match kind {
            SurfaceKind::NCoral if n < 2 => Err(Error::invalid(format!(
                "the n-coral needs n >= 2, got n = {n}"
            ))),
            SurfaceKind::Lettuce if n < 1 => {
                Err(Error::invalid("the lettuce needs n >= 1, got n = 0"))
            }
            SurfaceKind::HyperbolicParaboloid => Ok(SurfaceFamily { kind, n: 2 }),
            _ => Ok(SurfaceFamily { kind, n }),
        }
    }

    pub fn coral(n: u32) -> Result<Self> {
        Self::new(SurfaceKind::NCoral, n)
    }

    pub fn lettuce(n: u32) -> Result<Self> {
        Self::new(SurfaceKind::Lettuce, n)
    }

    pub fn paraboloid() -> Self {
        SurfaceFamily {
            kind: SurfaceKind::HyperbolicParaboloid,
            n: 2,
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// True for the families shaped like `(u cos v, u sin v, z)`, which
    /// degenerate on the axis `u = 0`.
    pub fn is_radial(&self) -> bool {
        matches!(
            self.kind,
            SurfaceKind::NCoral | SurfaceKind::HyperbolicParaboloid
        )
    }

    /// The parametrization evaluated in any scalar type. [`Self::position`]
    /// is the `f64` instance; the finite-difference oracle uses a
    /// double-double instance.
    pub fn position_in<T: Scalar>(&self, u: T, v: T) -> [T; 3] {
        let n = T::from_f64(f64::from(self.n));
        let height = -(u * u) * (n * v).cos();
        match self.kind {
            SurfaceKind::NCoral | SurfaceKind::HyperbolicParaboloid => {
                [u * v.cos(), u * v.sin(), height]
            }
            SurfaceKind::Lettuce => [v, u, height],
        }
    }

    pub fn position(&self, q: DomainPoint) -> Vec3 {
        self.position_in(q.u, q.v).into()
    }

    /// Closed-form position and partials.
    pub fn jet(&self, q: DomainPoint) -> Jet2 {
        let DomainPoint { u, v } = q;
        let n = f64::from(self.n);
        let (snv, cnv) = (n * v).sin_cos();
        let p = self.position(q);

        // The height -u² cos nv is shared by all three families.
        let zu = -2.0 * u * cnv;
        let zv = n * u * u * snv;
        let zuu = -2.0 * cnv;
        let zuv = 2.0 * n * u * snv;
        let zvv = n * n * u * u * cnv;

        match self.kind {
            SurfaceKind::NCoral | SurfaceKind::HyperbolicParaboloid => {
                let (sv, cv) = v.sin_cos();
                Jet2 {
                    p,
                    ru: Vec3::new(cv, sv, zu),
                    rv: Vec3::new(-u * sv, u * cv, zv),
                    ruu: Vec3::new(0.0, 0.0, zuu),
                    ruv: Vec3::new(-sv, cv, zuv),
                    rvv: Vec3::new(-u * cv, -u * sv, zvv),
                }
            }
            SurfaceKind::Lettuce => Jet2 {
                p,
                ru: Vec3::new(0.0, 1.0, zu),
                rv: Vec3::new(1.0, 0.0, zv),
                ruu: Vec3::new(0.0, 0.0, zuu),
                ruv: Vec3::new(0.0, 0.0, zuv),
                rvv: Vec3::new(0.0, 0.0, zvv),
            },
        }
    }
}

impl fmt::Display for SurfaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::HyperbolicParaboloid => write!(f, "paraboloid"),
            kind => write!(f, "{kind}(n={})", self.n),
        }
    }
}

/// Minimal real-number interface needed to evaluate a parametrization.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
}

impl Scalar for TwoFloat {
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
    fn sin(self) -> Self {
        TwoFloat::sin(self)
    }
    fn cos(self) -> Self {
        TwoFloat::cos(self)
    }
}

impl<T: Scalar> From<[T; 3]> for Vec3 {
    fn from([x, y, z]: [T; 3]) -> Self {
        Vec3::new(x.to_f64(), y.to_f64(), z.to_f64())
    }
}
