//! Coordinate frames and spherical polarization bases.
//!
//! Directions are (zenith, azimuth) pairs with the spherical unit vectors
//!
//! ```text
//! r_hat     = ( sin t cos p,  sin t sin p,  cos t )
//! theta_hat = ( cos t cos p,  cos t sin p, -sin t )
//! phi_hat   = (-sin p,        cos p,        0     )
//! ```
//!
//! so that `theta_hat x phi_hat = r_hat`. At the poles (`sin t` below 1e-12)
//! the azimuth is fixed to zero, which selects the `p = 0` limit of the basis.
//!
//! A [`Frame`] carries a panel (or antenna) local coordinate system; the
//! [`PolRotation`] produced by [`polarization_rotation`] re-expresses the
//! 2-vector of (theta, phi) field components of the same physical field in
//! the global basis at the same physical direction.

use nalgebra::{Matrix2, Matrix3, Vector3};

use crate::{Mat2, Vec3, C64};

/// Zenith/azimuth direction in radians; `theta` in `[0, pi]`, `phi` in `[0, 2*pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Direction of a (not necessarily unit) vector. Poles report `phi = 0`.
    pub fn from_vector(v: &Vec3) -> Self {
        let n = v.norm();
        let ct = (v.z / n).clamp(-1.0, 1.0);
        let theta = ct.acos();
        if theta.sin() < 1e-12 {
            return Self { theta, phi: 0.0 };
        }
        let mut phi = v.y.atan2(v.x);
        if phi < 0.0 {
            phi += 2.0 * std::f64::consts::PI;
        }
        Self { theta, phi }
    }

    /// Unit propagation vector pointing toward this direction.
    pub fn unit_vector(&self) -> Vec3 {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        Vector3::new(st * cp, st * sp, ct)
    }
}

/// Spherical polarization basis `(theta_hat, phi_hat)` at direction `d`.
pub fn spherical_basis(d: Direction) -> (Vec3, Vec3) {
    let (st, ct) = (d.theta.sin(), d.theta.cos());
    let (sp, cp) = if st < 1e-12 {
        (0.0, 1.0) // phi = 0 limit at the poles
    } else {
        (d.phi.sin(), d.phi.cos())
    };
    let theta_hat = Vector3::new(ct * cp, ct * sp, -st);
    let phi_hat = Vector3::new(-sp, cp, 0.0);
    (theta_hat, phi_hat)
}

/// Right-handed orthonormal local coordinate system embedded in the global one.
///
/// `axes` columns are the local x, y, z unit vectors expressed in global
/// coordinates. For an RIS panel the local z axis is the boresight normal and
/// the surface spans local x/y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub origin: Vec3,
    pub axes: Matrix3<f64>,
}

impl Frame {
    /// Identity frame at `origin`.
    pub fn identity(origin: Vec3) -> Self {
        Self {
            origin,
            axes: Matrix3::identity(),
        }
    }

    /// Frame from a boresight `normal` (local z) and an `up` hint completed by
    /// Gram-Schmidt: local y is `up` with its normal component removed, local
    /// x closes the right-handed triad.
    ///
    /// Returns `None` when `normal` is (near) zero or `up` is (near) parallel
    /// to it.
    pub fn from_normal_up(origin: Vec3, normal: Vec3, up: Vec3) -> Option<Self> {
        let nz = normal.norm();
        if nz < 1e-12 {
            return None;
        }
        let z = normal / nz;
        let y_raw = up - z * up.dot(&z);
        let ny = y_raw.norm();
        if ny < 1e-9 {
            return None;
        }
        let y = y_raw / ny;
        let x = y.cross(&z);
        Some(Self {
            origin,
            axes: Matrix3::from_columns(&[x, y, z]),
        })
    }

    /// Determinant of the axes matrix; +1 for a valid right-handed frame.
    pub fn handedness(&self) -> f64 {
        self.axes.determinant()
    }

    /// Global vector components of a locally expressed vector.
    pub fn to_global(&self, v_local: &Vec3) -> Vec3 {
        self.axes * v_local
    }

    /// Local components of a globally expressed vector.
    pub fn to_local(&self, v_global: &Vec3) -> Vec3 {
        self.axes.transpose() * v_global
    }
}

/// Express a global direction in the frame's local axes.
pub fn global_to_local(frame: &Frame, d_global: Direction) -> Direction {
    Direction::from_vector(&frame.to_local(&d_global.unit_vector()))
}

/// Express a local direction in global axes.
pub fn local_to_global(frame: &Frame, d_local: Direction) -> Direction {
    Direction::from_vector(&frame.to_global(&d_local.unit_vector()))
}

/// 2x2 rotation mapping local (theta, phi) field components to global ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolRotation {
    pub matrix: Matrix2<f64>,
}

impl PolRotation {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix2::identity(),
        }
    }

    /// Largest deviation of `m^T m` from the identity.
    pub fn orthogonality_residual(&self) -> f64 {
        let r = self.matrix.transpose() * self.matrix - Matrix2::identity();
        r.iter().fold(0.0f64, |a, v| a.max(v.abs()))
    }

    pub fn inverse(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
        }
    }
}

/// Polarization basis rotation at global direction `d_global`.
///
/// Both bases span the plane orthogonal to the propagation axis, so the
/// matrix of mutual projections is orthogonal. Columns project the local
/// basis vectors (carried to global coordinates) onto the global basis.
pub fn polarization_rotation(frame: &Frame, d_global: Direction) -> PolRotation {
    let d_local = global_to_local(frame, d_global);
    let (th_l, ph_l) = spherical_basis(d_local);
    let th_lg = frame.to_global(&th_l);
    let ph_lg = frame.to_global(&ph_l);
    let (th_g, ph_g) = spherical_basis(d_global);
    let matrix = Matrix2::new(
        th_g.dot(&th_lg),
        th_g.dot(&ph_lg),
        ph_g.dot(&th_lg),
        ph_g.dot(&ph_lg),
    );
    PolRotation { matrix }
}

/// Similarity transform `P G P^-1` of a local polarimetric response.
pub fn lift_response(p: &PolRotation, g_local: &Mat2) -> Mat2 {
    lift_response_pair(p, p, g_local)
}

/// General lift with distinct departure/incidence rotations: `P_out G P_in^-1`.
///
/// A response matrix consumes incidence-side components and produces
/// departure-side components, so each side rotates with the basis at its own
/// direction; the single-rotation form above is the special case of equal
/// directions.
pub fn lift_response_pair(p_out: &PolRotation, p_in: &PolRotation, g_local: &Mat2) -> Mat2 {
    let po = p_out.matrix.map(|x| C64::new(x, 0.0));
    let pi_inv = p_in.inverse().matrix.map(|x| C64::new(x, 0.0));
    po * g_local * pi_inv
}
