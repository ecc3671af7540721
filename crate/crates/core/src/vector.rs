//! Three- and four-vectors.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::context::InvariantSpeedContext;
use crate::error::{Error, Result};

/// Plain Cartesian triple used for positions, forces, momenta and raw
/// (unvalidated) velocities.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
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

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// A velocity whose magnitude is strictly below `c_m` of the context it was
/// built against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Velocity3(Vec3);

impl Velocity3 {
    pub fn new(ctx: &InvariantSpeedContext, vx: f64, vy: f64, vz: f64) -> Result<Self> {
        Self::from_vec(ctx, Vec3::new(vx, vy, vz))
    }

    pub fn from_vec(ctx: &InvariantSpeedContext, v: Vec3) -> Result<Self> {
        let speed = v.norm();
        // NaN components fail this comparison too
        if !(speed < ctx.c_max()) {
            return Err(Error::SpeedExceedsMaximum { speed, c_max: ctx.c_max() });
        }
        Ok(Velocity3(v))
    }

    /// Velocity along x.
    pub fn along_x(ctx: &InvariantSpeedContext, vx: f64) -> Result<Self> {
        Self::new(ctx, vx, 0.0, 0.0)
    }

    pub fn zero() -> Self {
        Velocity3(Vec3::ZERO)
    }

    pub fn speed(&self) -> f64 {
        self.0.norm()
    }

    pub fn as_vec(&self) -> Vec3 {
        self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }
}

/// Real four-vector `(t, x, y, z)` with signature `(+, -, -, -)`.
///
/// For events the time slot holds `c_m·t`; for momenta it holds `E/c_m`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    /// Event at coordinate time `time` and position `(x, y, z)`.
    pub fn event(ctx: &InvariantSpeedContext, time: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector::new(ctx.c_max() * time, x, y, z)
    }

    /// Coordinate time of an event.
    pub fn time(&self, ctx: &InvariantSpeedContext) -> f64 {
        self.t / ctx.c_max()
    }

    pub fn spatial(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    /// Minkowski square `t² - x² - y² - z²`.
    pub fn minkowski_sqr(&self) -> f64 {
        self.t * self.t - self.x * self.x - self.y * self.y - self.z * self.z
    }

    /// Sum of squared components; the natural scale for round-off in
    /// [`FourVector::minkowski_sqr`].
    pub fn euclidean_sqr(&self) -> f64 {
        self.t * self.t + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn dot(&self, o: &FourVector) -> f64 {
        self.t * o.t - self.x * o.x - self.y * o.y - self.z * o.z
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}
