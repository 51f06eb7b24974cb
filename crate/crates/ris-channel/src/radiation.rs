//! Secondary radiation of an RIS element via the equivalence principle.
//!
//! Given the actual coefficients at an incidence, the element surface fields
//! are reconstructed, replaced by equivalent electric/magnetic sheet currents,
//! and radiated to the far field. Currents are taken uniform over the element
//! (fields evaluated at its center), so the radiation integral reduces to a
//! closed-form rectangular-aperture factor; a numerical quadrature of the
//! exact integral serves as the test oracle only.
//!
//! The element response entry `G[p][q]` is the `p`-polarized far-field
//! component launched by a unit `q`-polarized incident wave, normalized by
//! `(4 pi / lambda) * r * exp(j 2 pi r / lambda)` so the result does not
//! depend on the evaluation radius.

use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

use crate::constants::{wavelength, wavenumber, EPS0, ETA0, MU0};
use crate::coords::{spherical_basis, Direction};
use crate::gstc::{
    actual_coefficients, desired_as_actual, synthesize_impedance, wave_bases, ActualCoefficients,
    DesiredCoefficients, GstcError, Polarization, RisType,
};
use crate::{CVec3, Mat2, Vec3, C64};

/// Evaluation radius for the response limit, in wavelengths.
pub const DEFAULT_RADIUS_WAVELENGTHS: f64 = 1e4;

/// Which coefficient set drives the surface fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientModel {
    /// Configured coefficients applied regardless of incidence angle (the
    /// idealization that overestimates performance at oblique incidence).
    Desired,
    /// Angle-dependent coefficients from the impedance sheet.
    Actual,
}

/// Uniform plane wave; `h` is derived from the propagation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    /// Complex field vector (V/m).
    pub e: CVec3,
    /// Real wave vector (rad/m).
    pub k: Vec3,
}

impl PlaneWave {
    pub fn new(e: CVec3, k: Vec3) -> Self {
        Self { e, k }
    }

    /// Magnetic field `(k x E) / (|k| eta)`.
    pub fn h(&self) -> CVec3 {
        let u = self.k / self.k.norm();
        ccross_rv(&u, &self.e) / C64::new(ETA0, 0.0)
    }

    /// `|k . E| / (|k| |E|)`; zero for a transversal wave.
    pub fn transversality_residual(&self) -> f64 {
        let ke = C64::new(self.k.x, 0.0) * self.e.x
            + C64::new(self.k.y, 0.0) * self.e.y
            + C64::new(self.k.z, 0.0) * self.e.z;
        let en = self.e.norm();
        if en == 0.0 {
            return 0.0;
        }
        ke.norm() / (self.k.norm() * en)
    }
}

/// Which side of the sheet the currents radiate into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfSpace {
    Reflective,
    Transmissive,
}

impl HalfSpace {
    /// Half-space containing a departure direction; the upper (reflective)
    /// side holds zeniths below pi/2.
    pub fn of(direction: Direction) -> Self {
        if direction.theta < FRAC_PI_2 {
            HalfSpace::Reflective
        } else {
            HalfSpace::Transmissive
        }
    }
}

/// Equivalent sheet currents. Both are tangential by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentCurrents {
    /// Electric surface current (A/m).
    pub j: CVec3,
    /// Magnetic surface current (V/m).
    pub m: CVec3,
    pub half_space: HalfSpace,
}

/// Polarimetric element response for one (incidence, departure) angle pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementResponse {
    /// Rows: departing theta/phi components; columns: incident polarization.
    pub g: Mat2,
    pub incidence: Direction,
    pub departure: Direction,
}

#[derive(Debug, Error, PartialEq)]
pub enum RadiationError {
    #[error("incident wave is not transversal (residual {0:.3e})")]
    NonTransversal(f64),
    #[error("observation direction lies in the wrong half-space for the supplied currents")]
    HalfSpaceMismatch,
    #[error("far-field radius {r} m below the enforced minimum {min} m")]
    RadiusTooSmall { r: f64, min: f64 },
    #[error("incidence must come from the upper half-space")]
    IncidenceFromBelow,
    #[error(transparent)]
    Gstc(#[from] GstcError),
}

fn cvec(v: Vec3) -> CVec3 {
    v.map(|x| C64::new(x, 0.0))
}

/// Cross product of a real vector with a complex vector.
fn ccross_rv(a: &Vec3, b: &CVec3) -> CVec3 {
    CVec3::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}

fn cdot_rv(a: &Vec3, b: &CVec3) -> C64 {
    C64::new(a.x, 0.0) * b.x + C64::new(a.y, 0.0) * b.y + C64::new(a.z, 0.0) * b.z
}

/// Reflected/transmitted plane waves on the element surface.
///
/// The incident wave must be transversal, arrive from the upper half-space
/// (`k_z < 0`) and be polarized along the basis vector matching
/// `actual.pol`; its complex amplitude on that basis scales the output. The
/// reflected wave keeps the tangential wave vector and flips `k_z`; the
/// transmitted wave continues with the incident wave vector.
pub fn surface_fields(
    incident: &PlaneWave,
    actual: &ActualCoefficients,
    ris_type: RisType,
) -> Result<(PlaneWave, PlaneWave), RadiationError> {
    let res = incident.transversality_residual();
    if res >= 1e-10 {
        return Err(RadiationError::NonTransversal(res));
    }
    if incident.k.z >= 0.0 {
        return Err(RadiationError::IncidenceFromBelow);
    }
    let k_r = Vec3::new(incident.k.x, incident.k.y, -incident.k.z);
    let k_t = incident.k;

    let src = Direction::from_vector(&-incident.k);
    let (e_i, e_r_co, e_r_cr, e_t_co, e_t_cr) = wave_bases(src.theta, src.phi, actual.pol);
    let amp = cdot_rv(&e_i, &incident.e);

    let cross_is_zero = actual.cross_r.norm() < 1e-14 && actual.cross_t.norm() < 1e-14;
    let (e_refl, e_trans) = match (ris_type, actual.pol, cross_is_zero) {
        // uniform scaling of the incident field vector; valid because the
        // phi basis is shared by all three waves
        (RisType::Type1, Polarization::Phi, _) => {
            (incident.e * actual.co_r, incident.e * actual.co_t)
        }
        // tangential components scaled, z restored from transversality
        (RisType::Type2, _, true) => {
            let complete = |k: Vec3, ex: C64, ey: C64| -> CVec3 {
                let ez = -(C64::new(k.x, 0.0) * ex + C64::new(k.y, 0.0) * ey)
                    / C64::new(k.z, 0.0);
                CVec3::new(ex, ey, ez)
            };
            (
                complete(k_r, actual.co_r * incident.e.x, actual.co_r * incident.e.y),
                complete(k_t, actual.co_t * incident.e.x, actual.co_t * incident.e.y),
            )
        }
        // co/cross dyadics on the departing wave bases
        _ => (
            (cvec(e_r_co) * actual.co_r + cvec(e_r_cr) * actual.cross_r) * amp,
            (cvec(e_t_co) * actual.co_t + cvec(e_t_cr) * actual.cross_t) * amp,
        ),
    };

    Ok((PlaneWave::new(e_refl, k_r), PlaneWave::new(e_trans, k_t)))
}

/// Equivalent sheet currents for one half-space.
///
/// The reflective side samples the total upper fields (incident plus
/// reflected); the transmissive side samples the transmitted fields.
pub fn equivalent_currents(
    incident: &PlaneWave,
    reflected: &PlaneWave,
    transmitted: &PlaneWave,
    half_space: HalfSpace,
) -> EquivalentCurrents {
    let z = Vec3::z();
    let (e_tot, h_tot) = match half_space {
        HalfSpace::Reflective => (incident.e + reflected.e, incident.h() + reflected.h()),
        HalfSpace::Transmissive => (transmitted.e, transmitted.h()),
    };
    EquivalentCurrents {
        j: ccross_rv(&z, &h_tot),
        m: -ccross_rv(&z, &e_tot),
        half_space,
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Closed-form rectangular-aperture factor `integral exp(jk r_hat . r') ds'`.
pub fn aperture_factor(dims: (f64, f64), f_hz: f64, out: Direction) -> f64 {
    let k = wavenumber(f_hz);
    let u = out.unit_vector();
    dims.0 * dims.1 * sinc(0.5 * k * dims.0 * u.x) * sinc(0.5 * k * dims.1 * u.y)
}

/// Far-zone electric field of the uniform currents at radius `r` toward `out`.
///
/// The potentials use the far-field phase approximation, turning the surface
/// integral into [`aperture_factor`]; the curl acts as `-j k r_hat x`.
/// Requires `out` to lie in the currents' half-space and
/// `r >= 100 * max(a, b)`.
pub fn far_field(
    currents: &EquivalentCurrents,
    dims: (f64, f64),
    f_hz: f64,
    out: Direction,
    r: f64,
) -> Result<CVec3, RadiationError> {
    if HalfSpace::of(out) != currents.half_space {
        return Err(RadiationError::HalfSpaceMismatch);
    }
    let min_r = 100.0 * dims.0.max(dims.1);
    if r < min_r {
        return Err(RadiationError::RadiusTooSmall { r, min: min_r });
    }
    let k = wavenumber(f_hz);
    let omega = 2.0 * PI * f_hz;
    let sf = aperture_factor(dims, f_hz, out);
    let spread = C64::from_polar(1.0 / r, -k * r) * sf;
    let a = currents.j * (C64::new(MU0 / (4.0 * PI), 0.0) * spread);
    let ff = currents.m * (C64::new(EPS0 / (4.0 * PI), 0.0) * spread);
    let u = out.unit_vector();
    let e_a = a * C64::new(0.0, -omega);
    let e_f = ccross_rv(&u, &ff) * C64::new(0.0, k / EPS0);
    Ok(e_a + e_f)
}

/// Full response pipeline for one element and one angle pair.
pub fn element_response(
    desired: &DesiredCoefficients,
    d_in: Direction,
    d_out: Direction,
    dims: (f64, f64),
    f_hz: f64,
) -> Result<ElementResponse, RadiationError> {
    element_response_model(desired, CoefficientModel::Actual, d_in, d_out, dims, f_hz)
}

/// Like [`element_response`], selecting desired or actual coefficients.
pub fn element_response_model(
    desired: &DesiredCoefficients,
    model: CoefficientModel,
    d_in: Direction,
    d_out: Direction,
    dims: (f64, f64),
    f_hz: f64,
) -> Result<ElementResponse, RadiationError> {
    let r = DEFAULT_RADIUS_WAVELENGTHS * wavelength(f_hz);
    element_response_at_radius(desired, model, d_in, d_out, dims, f_hz, r)
}

/// Response evaluated at an explicit radius; exposed for convergence checks.
pub fn element_response_at_radius(
    desired: &DesiredCoefficients,
    model: CoefficientModel,
    d_in: Direction,
    d_out: Direction,
    dims: (f64, f64),
    f_hz: f64,
    r: f64,
) -> Result<ElementResponse, RadiationError> {
    if d_in.theta >= FRAC_PI_2 {
        return Err(RadiationError::IncidenceFromBelow);
    }
    let imp = match model {
        CoefficientModel::Actual => Some(synthesize_impedance(desired)?),
        CoefficientModel::Desired => None,
    };
    let k = wavenumber(f_hz);
    let lambda = wavelength(f_hz);
    let u_i = -d_in.unit_vector();
    let half_space = HalfSpace::of(d_out);
    let (theta_out, phi_out) = spherical_basis(d_out);
    let norm = C64::from_polar(4.0 * PI * r / lambda, k * r);

    let mut g = Mat2::zeros();
    for (col, pol) in [Polarization::Theta, Polarization::Phi].into_iter().enumerate() {
        let act = match &imp {
            Some(imp) => {
                actual_coefficients(desired.ris_type(), imp, d_in.theta, d_in.phi, pol)?
            }
            None => desired_as_actual(desired, d_in.phi, pol)?,
        };
        let (e_i, ..) = wave_bases(d_in.theta, d_in.phi, pol);
        let incident = PlaneWave::new(cvec(e_i), u_i * k);
        let (refl, trans) = surface_fields(&incident, &act, desired.ris_type())?;
        let currents = equivalent_currents(&incident, &refl, &trans, half_space);
        let e_s = far_field(&currents, dims, f_hz, d_out, r)?;
        g[(0, col)] = norm * cdot_rv(&theta_out, &e_s);
        g[(1, col)] = norm * cdot_rv(&phi_out, &e_s);
    }
    Ok(ElementResponse { g, incidence: d_in, departure: d_out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    const F: f64 = 26.0e9;
    const SQ2: f64 = std::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn half_lambda_dims() -> (f64, f64) {
        let l = wavelength(F);
        (l / 2.0, l / 2.0)
    }

    fn mirror_type1() -> DesiredCoefficients {
        DesiredCoefficients::Type1 { r: c(1.0, 0.0), t: c(0.0, 0.0) }
    }

    fn incident_wave(d: Direction, pol: Polarization, f_hz: f64) -> PlaneWave {
        let (e_i, ..) = wave_bases(d.theta, d.phi, pol);
        PlaneWave::new(cvec(e_i), -d.unit_vector() * wavenumber(f_hz))
    }

    #[test]
    fn mirror_surface_fields_at_normal_incidence() {
        // x-polarized = theta-polarized at phi = 0
        let d = Direction::new(0.0, 0.0);
        let act = ActualCoefficients {
            pol: Polarization::Theta,
            co_r: c(1.0, 0.0),
            cross_r: c(0.0, 0.0),
            co_t: c(0.0, 0.0),
            cross_t: c(0.0, 0.0),
        };
        let inc = incident_wave(d, Polarization::Theta, F);
        let (refl, trans) = surface_fields(&inc, &act, RisType::Type1).unwrap();
        assert!((refl.e - CVec3::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))).norm() < 1e-14);
        assert!(trans.e.norm() < 1e-14);
        assert!(refl.k.z > 0.0);

        let currents = equivalent_currents(&inc, &refl, &trans, HalfSpace::Reflective);
        assert!(currents.j.norm() < 1e-14, "perfect mirror carries no electric current");
        assert_relative_eq!(currents.m.norm(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn surface_fields_reject_bad_input() {
        let k = Vec3::new(0.0, 0.0, -1.0) * wavenumber(F);
        let act = ActualCoefficients {
            pol: Polarization::Phi,
            co_r: c(1.0, 0.0),
            cross_r: c(0.0, 0.0),
            co_t: c(0.0, 0.0),
            cross_t: c(0.0, 0.0),
        };
        let bad = PlaneWave::new(CVec3::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)), k);
        assert!(matches!(
            surface_fields(&bad, &act, RisType::Type1),
            Err(RadiationError::NonTransversal(_))
        ));
        let from_below = PlaneWave::new(
            CVec3::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)),
            -k,
        );
        assert!(matches!(
            surface_fields(&from_below, &act, RisType::Type1),
            Err(RadiationError::IncidenceFromBelow)
        ));
    }

    #[test]
    fn type2_reflected_field_is_transversal() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..1000 {
            let theta = rng.gen_range(0.01..1.5f64);
            let phi = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2][rng.gen_range(0..4)];
            let d = Direction::new(theta, phi);
            let pol = if rng.gen() { Polarization::Theta } else { Polarization::Phi };
            let act = ActualCoefficients {
                pol,
                co_r: C64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..2.0 * PI)),
                cross_r: c(0.0, 0.0),
                co_t: C64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..2.0 * PI)),
                cross_t: c(0.0, 0.0),
            };
            let inc = incident_wave(d, pol, F);
            let (refl, trans) = surface_fields(&inc, &act, RisType::Type2).unwrap();
            assert!(refl.transversality_residual() < 1e-10);
            assert!(trans.transversality_residual() < 1e-10);
        }
    }

    #[test]
    fn type3_complete_rotation_reflects_cross_polarized() {
        let d = Direction::new(0.6, 0.0);
        let act = ActualCoefficients {
            pol: Polarization::Phi,
            co_r: c(0.0, 0.0),
            cross_r: c(1.0, 0.0),
            co_t: c(0.0, 0.0),
            cross_t: c(0.0, 0.0),
        };
        let inc = incident_wave(d, Polarization::Phi, F);
        let (refl, _) = surface_fields(&inc, &act, RisType::Type3).unwrap();
        // purely theta-polarized on the reflected wave basis
        let (_, e_r_cr, ..) = {
            let b = wave_bases(d.theta, d.phi, Polarization::Phi);
            (b.1, b.2, b.3)
        };
        let along = cdot_rv(&e_r_cr, &refl.e);
        assert_relative_eq!(along.norm(), 1.0, epsilon = 1e-12);
        let (_, phi_hat) = spherical_basis(d);
        assert!(cdot_rv(&phi_hat, &refl.e).norm() < 1e-14);
    }

    #[test]
    fn currents_are_tangential() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..500 {
            let d = Direction::new(rng.gen_range(0.01..1.5), rng.gen_range(0.0..2.0 * PI));
            let pol = if rng.gen() { Polarization::Theta } else { Polarization::Phi };
            let act = ActualCoefficients {
                pol,
                co_r: C64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..2.0 * PI)),
                cross_r: C64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..2.0 * PI)),
                co_t: C64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..2.0 * PI)),
                cross_t: C64::from_polar(rng.gen::<f64>(), rng.gen_range(0.0..2.0 * PI)),
            };
            let inc = incident_wave(d, pol, F);
            let (refl, trans) = surface_fields(&inc, &act, RisType::Type3).unwrap();
            for hs in [HalfSpace::Reflective, HalfSpace::Transmissive] {
                let cur = equivalent_currents(&inc, &refl, &trans, hs);
                assert!(cur.j.z.norm() < 1e-12);
                assert!(cur.m.z.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_fields_give_zero_currents() {
        let d = Direction::new(0.4, 1.0);
        let inc = PlaneWave::new(CVec3::zeros(), -d.unit_vector() * wavenumber(F));
        let zero = PlaneWave::new(CVec3::zeros(), inc.k);
        let refl = PlaneWave::new(CVec3::zeros(), Vec3::new(inc.k.x, inc.k.y, -inc.k.z));
        let cur = equivalent_currents(&inc, &refl, &zero, HalfSpace::Reflective);
        assert_eq!(cur.j.norm(), 0.0);
        assert_eq!(cur.m.norm(), 0.0);
    }

    fn mirror_currents(d_in: Direction) -> EquivalentCurrents {
        let desired = mirror_type1();
        let imp = synthesize_impedance(&desired).unwrap();
        let act = actual_coefficients(RisType::Type1, &imp, d_in.theta, d_in.phi, Polarization::Phi)
            .unwrap();
        let inc = incident_wave(d_in, Polarization::Phi, F);
        let (refl, trans) = surface_fields(&inc, &act, RisType::Type1).unwrap();
        equivalent_currents(&inc, &refl, &trans, HalfSpace::Reflective)
    }

    #[test]
    fn far_field_peaks_at_specular_direction() {
        let d_in = Direction::new(0.5, 0.0);
        let cur = mirror_currents(d_in);
        let dims = half_lambda_dims();
        let r = 1e4 * wavelength(F);
        let specular = Direction::new(0.5, PI);
        let peak = far_field(&cur, dims, F, specular, r).unwrap().norm();
        let mut best = 0.0f64;
        for it in 0..90 {
            for ip in 0..72 {
                let out = Direction::new(it as f64 * FRAC_PI_2 / 90.0, ip as f64 * PI / 36.0);
                best = best.max(far_field(&cur, dims, F, out, r).unwrap().norm());
            }
        }
        assert!(peak >= best * (1.0 - 1e-9), "peak {peak} vs grid max {best}");
    }

    #[test]
    fn far_field_spherical_spreading() {
        let cur = mirror_currents(Direction::new(0.3, 0.2));
        let dims = half_lambda_dims();
        let out = Direction::new(0.3, 0.2 + PI);
        let r1 = 2e3 * wavelength(F);
        let e1 = far_field(&cur, dims, F, out, r1).unwrap();
        let e2 = far_field(&cur, dims, F, out, 2.0 * r1).unwrap();
        assert_relative_eq!(e2.norm() * 2.0, e1.norm(), max_relative = 1e-9);
        // phase advances by k*r between the two radii
        let k = wavenumber(F);
        let ratio = e1.x / e2.x;
        let expect = C64::from_polar(2.0, k * r1);
        assert!((ratio - expect).norm() < 1e-6 * ratio.norm());
    }

    #[test]
    fn far_field_rejects_wrong_half_space() {
        let cur = mirror_currents(Direction::new(0.5, 0.0));
        let dims = half_lambda_dims();
        let below = Direction::new(2.5, 0.0);
        assert!(matches!(
            far_field(&cur, dims, F, below, 1.0),
            Err(RadiationError::HalfSpaceMismatch)
        ));
        let above = Direction::new(0.5, PI);
        assert!(matches!(
            far_field(&cur, dims, F, above, 0.001),
            Err(RadiationError::RadiusTooSmall { .. })
        ));
    }

    /// Composite Simpson quadrature of the exact potential integral
    /// `integral exp(-j k R) / R ds'` over the element, 64 intervals per axis.
    fn quadrature_potential(dims: (f64, f64), f_hz: f64, out: Direction, r: f64) -> C64 {
        let k = wavenumber(f_hz);
        let obs = out.unit_vector() * r;
        let n = 64usize;
        let (hx, hy) = (dims.0 / n as f64, dims.1 / n as f64);
        let w = |i: usize| -> f64 {
            if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            }
        };
        let mut acc = C64::new(0.0, 0.0);
        for ix in 0..=n {
            let x = -dims.0 / 2.0 + ix as f64 * hx;
            for iy in 0..=n {
                let y = -dims.1 / 2.0 + iy as f64 * hy;
                let rr = (obs - Vec3::new(x, y, 0.0)).norm();
                acc += C64::from_polar(1.0 / rr, -k * rr) * (w(ix) * w(iy));
            }
        }
        acc * (hx * hy / 9.0)
    }

    #[test]
    fn aperture_factor_matches_quadrature() {
        // far-field phase error scales as lambda/r; 1e6 wavelengths keeps it
        // comfortably below the 1e-6 relative bound
        let dims = half_lambda_dims();
        let r = 1e6 * wavelength(F);
        let k = wavenumber(F);
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for _ in 0..20 {
            let out = Direction::new(rng.gen_range(0.0..FRAC_PI_2), rng.gen_range(0.0..2.0 * PI));
            let closed = C64::from_polar(1.0 / r, -k * r) * aperture_factor(dims, F, out);
            let quad = quadrature_potential(dims, F, out, r);
            assert!(
                (closed - quad).norm() / quad.norm() < 1e-6,
                "relative error {}",
                (closed - quad).norm() / quad.norm()
            );
        }
    }

    #[test]
    fn response_is_radius_independent() {
        let desired = DesiredCoefficients::Type1 { r: c(SQ2 / 2.0, 0.0), t: c(0.0, SQ2 / 2.0) };
        let d_in = Direction::new(1.0, 0.0);
        let d_out = Direction::new(0.7, PI);
        let dims = half_lambda_dims();
        let l = wavelength(F);
        let g3 = element_response_at_radius(
            &desired, CoefficientModel::Actual, d_in, d_out, dims, F, 1e3 * l).unwrap();
        let g5 = element_response_at_radius(
            &desired, CoefficientModel::Actual, d_in, d_out, dims, F, 1e5 * l).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let (a, b) = (g3.g[(i, j)], g5.g[(i, j)]);
                if b.norm() > 1e-12 {
                    assert!((a - b).norm() / b.norm() < 1e-3);
                }
            }
        }
    }

    #[test]
    fn type1_response_is_diagonal_in_plane() {
        let desired = DesiredCoefficients::Type1 { r: c(SQ2 / 2.0, 0.0), t: c(0.0, SQ2 / 2.0) };
        let d_in = Direction::new(1.0, 0.0);
        let dims = half_lambda_dims();
        for out in [
            Direction::new(0.8, PI),
            Direction::new(0.3, 0.0),
            Direction::new(2.3, PI),
            Direction::new(2.9, 0.0),
        ] {
            let resp = element_response(&desired, d_in, out, dims, F).unwrap();
            assert!(resp.g[(0, 1)].norm() < 1e-10 * resp.g.norm());
            assert!(resp.g[(1, 0)].norm() < 1e-10 * resp.g.norm());
        }
    }

    #[test]
    fn type3_complete_rotation_response_is_anti_diagonal() {
        let desired = DesiredCoefficients::Type3 {
            r_co: c(0.0, 0.0),
            r_cro: c(1.0, 0.0),
            t_co: c(0.0, 0.0),
            t_cro: c(0.0, 0.0),
        };
        let d_in = Direction::new(0.9, 0.0);
        let out = Direction::new(0.9, PI);
        let resp = element_response(&desired, d_in, out, half_lambda_dims(), F).unwrap();
        assert!(resp.g[(0, 0)].norm() < 1e-10 * resp.g.norm());
        assert!(resp.g[(1, 1)].norm() < 1e-10 * resp.g.norm());
        assert!(resp.g[(0, 1)].norm() > 1e-3);
        assert!(resp.g[(1, 0)].norm() > 1e-3);
    }

    #[test]
    fn desired_model_recovers_configuration_at_normal_incidence() {
        // at normal incidence desired and actual models coincide
        let desired = DesiredCoefficients::Type1 { r: c(0.5, 0.5), t: c(0.5, -0.5) };
        let d_in = Direction::new(1e-6, 0.0);
        let out = Direction::new(1e-6, PI);
        let dims = half_lambda_dims();
        let ga = element_response_model(&desired, CoefficientModel::Actual, d_in, out, dims, F)
            .unwrap();
        let gd = element_response_model(&desired, CoefficientModel::Desired, d_in, out, dims, F)
            .unwrap();
        assert!((ga.g - gd.g).norm() < 1e-6 * gd.g.norm());
    }
}
