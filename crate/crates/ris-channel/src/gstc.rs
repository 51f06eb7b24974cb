//! Impedance-sheet model of an RIS element.
//!
//! An element is a zero-thickness sheet whose tangential field jumps obey
//!
//! ```text
//! [E_y^- - E_y^+, E_x^+ - E_x^-]^T = -Zm * [H_av,x, H_av,y]^T
//! [H_y^- - H_y^+, H_x^+ - H_x^-]^T =  Ye * [E_av,x, E_av,y]^T
//! ```
//!
//! with `+` the illuminated (upper) side and `av` the two-side average. The
//! admittance/impedance blocks are synthesized from the user-configured
//! reflection/transmission coefficients, which are exact at normal incidence;
//! at oblique incidence the same sheet exhibits different coefficients, which
//! this module computes either in closed form or by solving the boundary
//! system directly.
//!
//! Coefficient bookkeeping keeps the normal-incidence identity for every
//! entry: the co/cross components of the departing waves are expressed on
//! transverse basis pairs chosen so that at `theta_in = 0` each actual
//! coefficient reduces to the configured one (see `wave_bases`).

use nalgebra::{Matrix4, Vector4};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

use crate::constants::ETA0;
use crate::coords::{spherical_basis, Direction};
use crate::{CVec3, Mat2, Vec3, C64};

/// Incident polarization of a plane wave on the element, in the local frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Theta,
    Phi,
}

impl Polarization {
    pub fn other(self) -> Self {
        match self {
            Polarization::Theta => Polarization::Phi,
            Polarization::Phi => Polarization::Theta,
        }
    }
}

/// Element behaviour class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RisType {
    Type1,
    Type2,
    Type3,
}

/// User-configured reflection/transmission coefficients of one element.
///
/// The implied tensors are `R*I` for type 1, `diag(R_x, R_y)` for type 2 and
/// the rotation-like `[[R_co, -R_cro], [R_cro, R_co]]` for type 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DesiredCoefficients {
    Type1 { r: C64, t: C64 },
    Type2 { r_x: C64, t_x: C64, r_y: C64, t_y: C64 },
    Type3 { r_co: C64, r_cro: C64, t_co: C64, t_cro: C64 },
}

impl DesiredCoefficients {
    pub fn ris_type(&self) -> RisType {
        match self {
            DesiredCoefficients::Type1 { .. } => RisType::Type1,
            DesiredCoefficients::Type2 { .. } => RisType::Type2,
            DesiredCoefficients::Type3 { .. } => RisType::Type3,
        }
    }

    /// 2x2 reflection tensor acting on tangential (x, y) components.
    pub fn reflection_tensor(&self) -> Mat2 {
        let zero = C64::new(0.0, 0.0);
        match *self {
            DesiredCoefficients::Type1 { r, .. } => Mat2::new(r, zero, zero, r),
            DesiredCoefficients::Type2 { r_x, r_y, .. } => Mat2::new(r_x, zero, zero, r_y),
            DesiredCoefficients::Type3 { r_co, r_cro, .. } => Mat2::new(r_co, -r_cro, r_cro, r_co),
        }
    }

    /// 2x2 transmission tensor acting on tangential (x, y) components.
    pub fn transmission_tensor(&self) -> Mat2 {
        let zero = C64::new(0.0, 0.0);
        match *self {
            DesiredCoefficients::Type1 { t, .. } => Mat2::new(t, zero, zero, t),
            DesiredCoefficients::Type2 { t_x, t_y, .. } => Mat2::new(t_x, zero, zero, t_y),
            DesiredCoefficients::Type3 { t_co, t_cro, .. } => Mat2::new(t_co, -t_cro, t_cro, t_co),
        }
    }

    /// All configured coefficient magnitudes must stay physical (at most 1).
    pub fn validate(&self) -> Result<(), GstcError> {
        let mags: Vec<f64> = match *self {
            DesiredCoefficients::Type1 { r, t } => vec![r.norm(), t.norm()],
            DesiredCoefficients::Type2 { r_x, t_x, r_y, t_y } => {
                vec![r_x.norm(), t_x.norm(), r_y.norm(), t_y.norm()]
            }
            DesiredCoefficients::Type3 { r_co, r_cro, t_co, t_cro } => {
                vec![r_co.norm(), r_cro.norm(), t_co.norm(), t_cro.norm()]
            }
        };
        match mags.iter().cloned().fold(0.0f64, f64::max) {
            m if m <= 1.0 + 1e-12 => Ok(()),
            m => Err(GstcError::UnphysicalMagnitude { magnitude: m }),
        }
    }
}

/// Active 2x2 blocks of the element's admittance and impedance tensors.
///
/// The z rows/columns of the full 3x3 tensors are identically zero and are
/// not stored. `ye` is in siemens, `zm` in ohms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedanceTensors {
    pub ye: Mat2,
    pub zm: Mat2,
}

impl ImpedanceTensors {
    /// Largest entry of `A* + A^T` over both blocks.
    ///
    /// A passive lossless sheet is purely reactive: conjugation must negate
    /// the transposed tensors, so this residual vanishes exactly for
    /// coefficients that satisfy the passive-lossless conditions.
    pub fn reactive_residual(&self) -> f64 {
        let res = |m: &Mat2, scale: f64| -> f64 {
            let s = m.map(|v| v.conj()) + m.transpose();
            s.iter().fold(0.0f64, |a, v| a.max(v.norm())) / scale
        };
        res(&self.ye, 1.0 / ETA0).max(res(&self.zm, ETA0))
    }
}

/// Actual (angle-dependent) coefficients for one incident polarization.
///
/// `co_*` keeps the incident polarization, `cross_*` is the orthogonal
/// component of the departing wave. Cross terms are identically zero for
/// types 1 and 2 at cardinal azimuths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActualCoefficients {
    pub pol: Polarization,
    pub co_r: C64,
    pub cross_r: C64,
    pub co_t: C64,
    pub cross_t: C64,
}

impl ActualCoefficients {
    /// Total scattered power fraction; equals 1 for passive lossless inputs.
    pub fn power(&self) -> f64 {
        self.co_r.norm_sqr() + self.cross_r.norm_sqr() + self.co_t.norm_sqr()
            + self.cross_t.norm_sqr()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GstcError {
    #[error("synthesis denominator magnitude {magnitude:.3e} below 1e-12 ({which})")]
    SingularSynthesis { which: &'static str, magnitude: f64 },
    #[error("coefficient denominator magnitude {magnitude:.3e} below 1e-12 at theta_in = {theta_in:.6} rad")]
    SingularAngle { theta_in: f64, magnitude: f64 },
    #[error("closed form requires a cardinal azimuth, got phi_in = {phi_in:.6} rad")]
    NonCardinalAzimuth { phi_in: f64 },
    #[error("boundary system condition number {cond:.3e} exceeds 1e12")]
    IllConditioned { cond: f64 },
    #[error("coefficient magnitude {magnitude} exceeds 1")]
    UnphysicalMagnitude { magnitude: f64 },
    #[error("operation is defined for type 1 coefficients only")]
    Type1Only,
}

const ONE: C64 = C64::new(1.0, 0.0);
const POLE_TOL: f64 = 1e-12;

fn ratio(num: C64, den: C64, which: &'static str) -> Result<C64, GstcError> {
    if den.norm() < POLE_TOL {
        return Err(GstcError::SingularSynthesis { which, magnitude: den.norm() });
    }
    Ok(num / den)
}

/// Synthesize the impedance blocks realizing `desired` at normal incidence.
pub fn synthesize_impedance(desired: &DesiredCoefficients) -> Result<ImpedanceTensors, GstcError> {
    let zero = C64::new(0.0, 0.0);
    let eta = C64::new(ETA0, 0.0);
    match *desired {
        DesiredCoefficients::Type1 { r, t } => {
            let y = 2.0 / eta * ratio(ONE - r - t, ONE + r + t, "1+R+T")?;
            let z = 2.0 * eta * ratio(ONE + r - t, ONE - r + t, "1-R+T")?;
            Ok(ImpedanceTensors {
                ye: Mat2::new(y, zero, zero, y),
                zm: Mat2::new(z, zero, zero, z),
            })
        }
        DesiredCoefficients::Type2 { r_x, t_x, r_y, t_y } => {
            let y_xx = 2.0 / eta * ratio(ONE - r_x - t_x, ONE + r_x + t_x, "1+Rx+Tx")?;
            let y_yy = 2.0 / eta * ratio(ONE - r_y - t_y, ONE + r_y + t_y, "1+Ry+Ty")?;
            // magnetic response couples across polarizations: Z_xx pairs with
            // the y coefficients and Z_yy with the x coefficients
            let z_xx = 2.0 * eta * ratio(ONE + r_y - t_y, ONE - r_y + t_y, "1-Ry+Ty")?;
            let z_yy = 2.0 * eta * ratio(ONE + r_x - t_x, ONE - r_x + t_x, "1-Rx+Tx")?;
            Ok(ImpedanceTensors {
                ye: Mat2::new(y_xx, zero, zero, y_yy),
                zm: Mat2::new(z_xx, zero, zero, z_yy),
            })
        }
        DesiredCoefficients::Type3 { r_co, r_cro, t_co, t_cro } => {
            let p = r_co + t_co;
            let q = r_cro + t_cro;
            let m = r_co - t_co;
            let w = r_cro - t_cro;
            let dy = (ONE + p) * (ONE + p) + q * q;
            let dz = (ONE - m) * (ONE - m) + w * w;
            let y_c = 2.0 / eta * ratio(ONE - p * p - q * q, dy, "(1+Rco+Tco)^2+(Rcro+Tcro)^2")?;
            let y_q = 4.0 / eta * ratio(q, dy, "(1+Rco+Tco)^2+(Rcro+Tcro)^2")?;
            let z_c = 2.0 * eta * ratio(ONE - m * m - w * w, dz, "(1-Rco+Tco)^2+(Rcro-Tcro)^2")?;
            let z_q = -4.0 * eta * ratio(w, dz, "(1-Rco+Tco)^2+(Rcro-Tcro)^2")?;
            Ok(ImpedanceTensors {
                ye: Mat2::new(y_c, y_q, -y_q, y_c),
                zm: Mat2::new(z_c, z_q, -z_q, z_c),
            })
        }
    }
}

/// Clamp cosines that are zero up to rounding so the grazing limit is exact.
fn cos_clamped(theta_in: f64) -> f64 {
    let ct = theta_in.cos();
    if ct.abs() < 1e-15 {
        0.0
    } else {
        ct
    }
}

/// Actual coefficients of a type 1 element for phi-polarized incidence.
///
/// Accepts `theta_in` in `[0, pi/2]`; the upper endpoint evaluates the
/// grazing limit (-1, 0) exactly.
pub fn actual_type1(imp: &ImpedanceTensors, theta_in: f64) -> Result<ActualCoefficients, GstcError> {
    let (r, t) = type1_pair(imp.ye[(0, 0)], imp.zm[(0, 0)], theta_in)?;
    Ok(ActualCoefficients {
        pol: Polarization::Phi,
        co_r: r,
        cross_r: C64::new(0.0, 0.0),
        co_t: t,
        cross_t: C64::new(0.0, 0.0),
    })
}

fn type1_pair(y: C64, z: C64, theta_in: f64) -> Result<(C64, C64), GstcError> {
    let ct = cos_clamped(theta_in);
    let ey = y * ETA0;
    let zn = z / ETA0;
    let d1 = ey + 2.0 * ct;
    let d2 = zn * ct + C64::new(2.0, 0.0);
    let mag = d1.norm().min(d2.norm());
    if mag < POLE_TOL {
        return Err(GstcError::SingularAngle { theta_in, magnitude: mag });
    }
    let r = -ey / d1 + zn * ct / d2;
    let t = 2.0 * ct / d1 - zn * ct / d2;
    Ok((r, t))
}

/// Nearest cardinal azimuth, or `None` when more than 1e-9 rad away.
fn cardinal_axis(phi_in: f64) -> Option<usize> {
    let tau = 2.0 * PI;
    let p = phi_in.rem_euclid(tau);
    for (i, c) in [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2, tau].iter().enumerate() {
        if (p - c).abs() < 1e-9 {
            return Some(i % 4);
        }
    }
    None
}

/// Actual coefficients of a type 2 element for phi-polarized incidence at a
/// cardinal azimuth.
///
/// At `phi_in` of 0 or pi the incident field lies along y and the y pair
/// (`Y_yy`, `Z_xx`) responds; at pi/2 or 3pi/2 it lies along x and the x pair
/// (`Y_xx`, `Z_yy`) responds. Away from cardinal azimuths the closed form does
/// not apply and [`solve_boundary_system`] must be used instead.
pub fn actual_type2(
    imp: &ImpedanceTensors,
    theta_in: f64,
    phi_in: f64,
) -> Result<ActualCoefficients, GstcError> {
    let axis = cardinal_axis(phi_in).ok_or(GstcError::NonCardinalAzimuth { phi_in })?;
    let (y, z) = if axis % 2 == 0 {
        (imp.ye[(1, 1)], imp.zm[(0, 0)]) // field along y
    } else {
        (imp.ye[(0, 0)], imp.zm[(1, 1)]) // field along x
    };
    let ct = cos_clamped(theta_in);
    let eta = C64::new(ETA0, 0.0);
    let d1 = y * eta + 2.0 * ct;
    let d2 = (z * ct + 2.0 * eta) / ETA0;
    let mag = d1.norm().min(d2.norm());
    if mag < POLE_TOL {
        return Err(GstcError::SingularAngle { theta_in, magnitude: mag });
    }
    let den = d1 * d2 * ETA0;
    let r = -2.0 * (y * eta * eta - z * ct * ct) / den;
    let t = -eta * ct * (y * z - C64::new(4.0, 0.0)) / den;
    Ok(ActualCoefficients {
        pol: Polarization::Phi,
        co_r: r,
        cross_r: C64::new(0.0, 0.0),
        co_t: t,
        cross_t: C64::new(0.0, 0.0),
    })
}

/// Actual coefficients of a type 3 element for phi-polarized incidence,
/// computed from the expanded determinant ratios `D_1..D_4 / D_0`.
pub fn actual_type3(imp: &ImpedanceTensors, theta_in: f64) -> Result<ActualCoefficients, GstcError> {
    let c = C64::new(cos_clamped(theta_in), 0.0);
    let e = C64::new(ETA0, 0.0);
    let yxx = imp.ye[(0, 0)];
    let yxy = imp.ye[(0, 1)];
    let zxx = imp.zm[(0, 0)];
    let zxy = imp.zm[(0, 1)];

    let c2 = c * c;
    let c3 = c2 * c;
    let c4 = c2 * c2;
    let e2 = e * e;
    let e3 = e2 * e;
    let e4 = e2 * e2;
    let yxx2 = yxx * yxx;
    let yxy2 = yxy * yxy;
    let zxx2 = zxx * zxx;
    let zxy2 = zxy * zxy;

    let d0 = -(4.0 * c + 2.0 * yxx * e + 2.0 * yxx * e * c2 + yxx2 * e2 * c + yxy2 * e2 * c)
        * (4.0 * e2 * c + 2.0 * zxx * e + zxx2 * c + zxy2 * c + 2.0 * zxx * e * c2);
    // eta^2-normalized pole check (D0 scales as eta^2 for typical sheets)
    if d0.norm() / (ETA0 * ETA0) < POLE_TOL {
        return Err(GstcError::SingularAngle { theta_in, magnitude: d0.norm() / (ETA0 * ETA0) });
    }

    let d1 = -2.0
        * (2.0 * zxx2 * c2 + 2.0 * zxy2 * c2
            - 2.0 * yxx2 * e4 * c2
            - 2.0 * yxy2 * e4 * c2
            - 4.0 * yxx * e3 * c
            + 4.0 * zxx * e * c3
            - 2.0 * yxx * zxx * e2
            + yxx * zxx2 * e * c3
            - yxx2 * zxx * e3 * c
            + 2.0 * yxx * zxx * e2 * c4
            + yxx * zxy2 * e * c3
            - yxy2 * zxx * e3 * c);
    let d2 = 2.0
        * e
        * c
        * (4.0 * zxy * c - yxy * zxx2 * c - yxy * zxy2 * c - 4.0 * yxy * e2 * c
            + 2.0 * yxx * zxy * e
            - 2.0 * yxy * zxx * e
            + yxx2 * zxy * e2 * c
            + yxy2 * zxy * e2 * c
            + 2.0 * yxx * zxy * e * c2
            - 2.0 * yxy * zxx * e * c2);
    let d3 = e
        * c
        * (2.0 * yxx * zxx2 - 8.0 * zxx + 2.0 * yxx * zxy2
            - 16.0 * e * c
            - 8.0 * yxx * e2 * c2
            + yxx2 * zxx2 * e * c
            + yxx2 * zxy2 * e * c
            + yxy2 * zxx2 * e * c
            + yxy2 * zxy2 * e * c
            + 2.0 * yxx2 * zxx * e2 * c2
            + 2.0 * yxy2 * zxx * e2 * c2);
    let d4 = -2.0
        * e
        * c
        * (4.0 * zxy * c + yxy * zxx2 * c + yxy * zxy2 * c + 4.0 * yxy * e2 * c
            + 2.0 * yxx * zxy * e
            + 2.0 * yxy * zxx * e
            + yxx2 * zxy * e2 * c
            + yxy2 * zxy * e2 * c
            + 2.0 * yxx * zxy * e * c2
            + 2.0 * yxy * zxx * e * c2);

    Ok(ActualCoefficients {
        pol: Polarization::Phi,
        co_r: d1 / d0,
        cross_r: d2 / d0,
        co_t: d3 / d0,
        cross_t: d4 / d0,
    })
}

/// Transverse basis pairs used to book-keep the departing co/cross components.
///
/// Returns `(e_i, e_r_co, e_r_cross, e_t_co, e_t_cross)` for incidence from
/// `(theta_in, phi_in)`. The pairs satisfy the normal-incidence identity: at
/// `theta_in = 0` a coefficient set equal to the configured tensors is
/// reproduced with positive signs for both polarizations.
pub(crate) fn wave_bases(
    theta_in: f64,
    phi_in: f64,
    pol: Polarization,
) -> (Vec3, Vec3, Vec3, Vec3, Vec3) {
    let d = Direction::new(theta_in, phi_in);
    let (theta_hat, phi_hat) = spherical_basis(d);
    let u_i = -d.unit_vector();
    let u_r = Vec3::new(u_i.x, u_i.y, -u_i.z);
    match pol {
        Polarization::Phi => {
            let e_r_cross = u_r.cross(&phi_hat);
            (phi_hat, phi_hat, e_r_cross, phi_hat, -theta_hat)
        }
        Polarization::Theta => {
            let mirrored = Vec3::new(theta_hat.x, theta_hat.y, -theta_hat.z);
            (theta_hat, mirrored, phi_hat, theta_hat, phi_hat)
        }
    }
}

fn cvec(v: Vec3) -> CVec3 {
    v.map(|x| C64::new(x, 0.0))
}

fn ccross(a: &CVec3, b: &CVec3) -> CVec3 {
    CVec3::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}

/// Solve the boundary system directly for the four unknown coefficients.
///
/// This is the universal path: it covers theta-polarized incidence and
/// non-cardinal azimuths where no closed form is available, and doubles as
/// the independent oracle for the closed forms above.
pub fn solve_boundary_system(
    imp: &ImpedanceTensors,
    theta_in: f64,
    phi_in: f64,
    pol: Polarization,
) -> Result<ActualCoefficients, GstcError> {
    let d = Direction::new(theta_in, phi_in);
    let u_i = cvec(-d.unit_vector());
    let u_r = CVec3::new(u_i.x, u_i.y, -u_i.z);
    let u_t = u_i;
    let (e_i, e_r_co, e_r_cr, e_t_co, e_t_cr) = wave_bases(theta_in, phi_in, pol);

    let eta = C64::new(ETA0, 0.0);
    let h_of = |u: &CVec3, e: &CVec3| ccross(u, e) / eta;

    let e_i = cvec(e_i);
    let h_i = h_of(&u_i, &e_i);
    let zero3 = CVec3::zeros();

    // columns: contribution of each unknown to (E+, H+, E-, H-)
    let columns = [
        (cvec(e_r_co), h_of(&u_r, &cvec(e_r_co)), zero3, zero3),
        (cvec(e_r_cr), h_of(&u_r, &cvec(e_r_cr)), zero3, zero3),
        (zero3, zero3, cvec(e_t_co), h_of(&u_t, &cvec(e_t_co))),
        (zero3, zero3, cvec(e_t_cr), h_of(&u_t, &cvec(e_t_cr))),
    ];

    let equations = |e_p: &CVec3, h_p: &CVec3, e_m: &CVec3, h_m: &CVec3| -> Vector4<C64> {
        let e_av = (e_p + e_m) * C64::new(0.5, 0.0);
        let h_av = (h_p + h_m) * C64::new(0.5, 0.0);
        Vector4::new(
            (e_m.y - e_p.y) + imp.zm[(0, 0)] * h_av.x + imp.zm[(0, 1)] * h_av.y,
            (e_p.x - e_m.x) + imp.zm[(1, 0)] * h_av.x + imp.zm[(1, 1)] * h_av.y,
            (h_m.y - h_p.y) - imp.ye[(0, 0)] * e_av.x - imp.ye[(0, 1)] * e_av.y,
            (h_p.x - h_m.x) - imp.ye[(1, 0)] * e_av.x - imp.ye[(1, 1)] * e_av.y,
        )
    };

    let mut a = Matrix4::<C64>::zeros();
    for (j, (ep, hp, em, hm)) in columns.iter().enumerate() {
        a.set_column(j, &equations(ep, hp, em, hm));
    }
    let b = -equations(&e_i, &h_i, &zero3, &zero3);

    // scale rows to a common magnitude before conditioning the solve: the
    // E-jump rows carry volts while the H-jump rows carry volts/ohm
    let mut a_s = a;
    let mut b_s = b;
    for row in 2..4 {
        for col in 0..4 {
            a_s[(row, col)] *= ETA0;
        }
        b_s[row] *= ETA0;
    }

    let inf_norm = |m: &Matrix4<C64>| -> f64 {
        (0..4)
            .map(|r| (0..4).map(|c| m[(r, c)].norm()).sum::<f64>())
            .fold(0.0f64, f64::max)
    };
    let inv = a_s
        .try_inverse()
        .ok_or(GstcError::IllConditioned { cond: f64::INFINITY })?;
    let cond = inf_norm(&a_s) * inf_norm(&inv);
    if cond > 1e12 {
        return Err(GstcError::IllConditioned { cond });
    }
    let x = inv * b_s;

    Ok(ActualCoefficients {
        pol,
        co_r: x[0],
        cross_r: x[1],
        co_t: x[2],
        cross_t: x[3],
    })
}

/// Route to the applicable closed form, falling back to the boundary system
/// for theta-polarized incidence and non-cardinal type 2 azimuths.
pub fn actual_coefficients(
    ris_type: RisType,
    imp: &ImpedanceTensors,
    theta_in: f64,
    phi_in: f64,
    pol: Polarization,
) -> Result<ActualCoefficients, GstcError> {
    match (ris_type, pol) {
        (RisType::Type1, Polarization::Phi) => actual_type1(imp, theta_in),
        (RisType::Type2, Polarization::Phi) => match actual_type2(imp, theta_in, phi_in) {
            Err(GstcError::NonCardinalAzimuth { .. }) => {
                solve_boundary_system(imp, theta_in, phi_in, pol)
            }
            other => other,
        },
        (RisType::Type3, Polarization::Phi) => actual_type3(imp, theta_in),
        (_, Polarization::Theta) => solve_boundary_system(imp, theta_in, phi_in, pol),
    }
}

/// Desired coefficients re-expressed as an [`ActualCoefficients`] set for the
/// given incidence, i.e. the angle-independent idealization of the element.
///
/// Type 2 requires a cardinal azimuth so the incident field selects a single
/// coefficient pair; the theta and phi polarizations map to opposite axes.
pub fn desired_as_actual(
    desired: &DesiredCoefficients,
    phi_in: f64,
    pol: Polarization,
) -> Result<ActualCoefficients, GstcError> {
    let zero = C64::new(0.0, 0.0);
    let (co_r, cross_r, co_t, cross_t) = match *desired {
        DesiredCoefficients::Type1 { r, t } => (r, zero, t, zero),
        DesiredCoefficients::Type2 { r_x, t_x, r_y, t_y } => {
            let axis = cardinal_axis(phi_in).ok_or(GstcError::NonCardinalAzimuth { phi_in })?;
            let field_on_y = axis % 2 == 0;
            // phi-polarized fields lie along y at phi_in in {0, pi}; the
            // theta polarization is tangentially orthogonal
            let use_y = match pol {
                Polarization::Phi => field_on_y,
                Polarization::Theta => !field_on_y,
            };
            if use_y {
                (r_y, zero, t_y, zero)
            } else {
                (r_x, zero, t_x, zero)
            }
        }
        DesiredCoefficients::Type3 { r_co, r_cro, t_co, t_cro } => (r_co, r_cro, t_co, t_cro),
    };
    Ok(ActualCoefficients { pol, co_r, cross_r, co_t, cross_t })
}

/// Wrap an angle into `[-pi, pi)`.
fn wrap_pi(a: f64) -> f64 {
    let tau = 2.0 * PI;
    let mut x = a.rem_euclid(tau);
    if x >= PI {
        x -= tau;
    }
    x
}

/// Phase-pair rule for the passive-lossless tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PhaseRule {
    /// Difference must equal pi/2 + v*pi.
    Quadrature,
    /// Difference must equal pi + v*pi, i.e. a multiple of pi.
    Collinear,
}

fn phase_residual(delta: f64, rule: PhaseRule) -> (f64, u8) {
    let (t0, t1) = match rule {
        PhaseRule::Quadrature => (FRAC_PI_2, -FRAC_PI_2), // v = 0, v = 1 (mod 2pi)
        PhaseRule::Collinear => (PI, 0.0),
    };
    let r0 = wrap_pi(delta - t0).abs();
    let r1 = wrap_pi(delta - t1).abs();
    if r0 <= r1 {
        (r0, 0)
    } else {
        (r1, 1)
    }
}

/// Passive-lossless diagnostic for a coefficient set.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveLosslessReport {
    pub ok: bool,
    /// Worst deviation of the squared-magnitude sums from 1.
    pub magnitude_residual: f64,
    /// Worst phase-pair residual over all applicable pairs.
    pub phase_residual: f64,
    /// Chosen branch integer `v` per applicable phase pair.
    pub branches: Vec<(&'static str, u8)>,
    /// Largest entry of `B^T B* - I` for the 4x4 block coefficient matrix.
    pub unitarity_residual: f64,
}

const PL_TOL: f64 = 1e-9;
const PL_ZERO: f64 = 1e-12;

/// Evaluate the passive-lossless conditions for `desired`.
///
/// `ok` requires the magnitude sum(s) to equal 1 and every applicable phase
/// pair to sit on its allowed branch within 1e-9. Pairs involving a (near)
/// zero coefficient are vacuous and skipped. The block-matrix unitarity
/// residual is reported alongside; the per-pair conditions imply it but admit
/// no cross-term cancellation, so it can vanish for inputs the pair rules
/// reject.
pub fn check_passive_lossless(desired: &DesiredCoefficients) -> PassiveLosslessReport {
    let mag_res;
    let mut phase_res = 0.0f64;
    let mut branches = Vec::new();

    let mut pair = |label: &'static str, a: C64, b: C64, rule: PhaseRule| {
        if a.norm() < PL_ZERO || b.norm() < PL_ZERO {
            return;
        }
        let (res, v) = phase_residual(a.arg() - b.arg(), rule);
        phase_res = phase_res.max(res);
        branches.push((label, v));
    };

    match *desired {
        DesiredCoefficients::Type1 { r, t } => {
            mag_res = (r.norm_sqr() + t.norm_sqr() - 1.0).abs();
            pair("R-T", r, t, PhaseRule::Quadrature);
        }
        DesiredCoefficients::Type2 { r_x, t_x, r_y, t_y } => {
            mag_res = (r_x.norm_sqr() + t_x.norm_sqr() - 1.0)
                .abs()
                .max((r_y.norm_sqr() + t_y.norm_sqr() - 1.0).abs());
            pair("Rx-Tx", r_x, t_x, PhaseRule::Quadrature);
            pair("Ry-Ty", r_y, t_y, PhaseRule::Quadrature);
        }
        DesiredCoefficients::Type3 { r_co, r_cro, t_co, t_cro } => {
            mag_res = (r_co.norm_sqr() + r_cro.norm_sqr() + t_co.norm_sqr() + t_cro.norm_sqr()
                - 1.0)
                .abs();
            pair("Rco-Tco", r_co, t_co, PhaseRule::Quadrature);
            pair("Rcro-Tcro", r_cro, t_cro, PhaseRule::Quadrature);
            pair("Rco-Rcro", r_co, r_cro, PhaseRule::Collinear);
            pair("Tco-Tcro", t_co, t_cro, PhaseRule::Collinear);
            pair("Rco-Tcro", r_co, t_cro, PhaseRule::Collinear);
            pair("Rcro-Tco", r_cro, t_co, PhaseRule::Collinear);
        }
    }

    let unitarity_residual = block_unitarity_residual(desired);
    PassiveLosslessReport {
        ok: mag_res < PL_TOL && phase_res < PL_TOL,
        magnitude_residual: mag_res,
        phase_residual: phase_res,
        branches,
        unitarity_residual,
    }
}

/// Max-abs entry of `B^T B* - I` with `B = [[R, T], [T, R]]` in 2x2 blocks.
pub fn block_unitarity_residual(desired: &DesiredCoefficients) -> f64 {
    let r = desired.reflection_tensor();
    let t = desired.transmission_tensor();
    let mut b = Matrix4::<C64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            b[(i, j)] = r[(i, j)];
            b[(i, j + 2)] = t[(i, j)];
            b[(i + 2, j)] = t[(i, j)];
            b[(i + 2, j + 2)] = r[(i, j)];
        }
    }
    let prod = b.transpose() * b.map(|v| v.conj());
    let mut res = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j { ONE } else { C64::new(0.0, 0.0) };
            res = res.max((prod[(i, j)] - expect).norm());
        }
    }
    res
}

/// Phase adjustment projecting independently chosen reflection/transmission
/// phases onto the nearest passive-lossless branch.
///
/// Inputs must lie in `(-2*pi, 2*pi)`; magnitudes are untouched. The output
/// difference is exactly `pi/2 + v*pi` for some `v` in `{0, 1}`.
pub fn project_table1(angle_r: f64, angle_t: f64) -> (f64, f64) {
    let tau = 2.0 * PI;
    let mut ar = angle_r;
    let at = angle_t;
    // fold the difference into [-2*pi, 2*pi) without moving angles mod 2*pi
    if ar - at >= tau {
        ar -= tau;
    } else if ar - at < -tau {
        ar += tau;
    }
    let delta = ar - at;
    let mean = 0.5 * (ar + at);
    let quarter = std::f64::consts::FRAC_PI_4;
    let offset = if (0.0..PI).contains(&delta) {
        quarter
    } else if (PI..tau).contains(&delta) {
        3.0 * quarter
    } else if (-PI..0.0).contains(&delta) {
        -quarter
    } else {
        -3.0 * quarter
    };
    (mean + offset, mean - offset)
}

/// Phase deviation of the actual type 1 coefficients from the configured
/// ones, each wrapped to `[0, pi]`.
pub fn phase_deviation(
    desired: &DesiredCoefficients,
    theta_in: f64,
) -> Result<(f64, f64), GstcError> {
    let DesiredCoefficients::Type1 { r, t } = *desired else {
        return Err(GstcError::Type1Only);
    };
    let imp = synthesize_impedance(desired)?;
    let act = actual_type1(&imp, theta_in)?;
    let wrap = |a: f64| -> f64 {
        let d = a.abs().rem_euclid(2.0 * PI);
        if d > PI {
            2.0 * PI - d
        } else {
            d
        }
    };
    Ok((
        wrap(act.co_r.arg() - r.arg()),
        wrap(act.co_t.arg() - t.arg()),
    ))
}
