//! Physical constants shared by the field and channel models.

/// Speed of light in vacuum (m/s).
pub const C0: f64 = 299_792_458.0;

/// Free-space wave impedance used by the sheet model, exactly 120*pi (ohm).
pub const ETA0: f64 = 120.0 * std::f64::consts::PI;

/// Vacuum permeability (H/m).
pub const MU0: f64 = 4.0e-7 * std::f64::consts::PI;

/// Vacuum permittivity (F/m), derived from `MU0` and `C0`.
pub const EPS0: f64 = 1.0 / (MU0 * C0 * C0);

/// Wavelength in meters at frequency `f_hz`.
#[inline]
pub fn wavelength(f_hz: f64) -> f64 {
    C0 / f_hz
}

/// Free-space wavenumber 2*pi/lambda at frequency `f_hz`.
#[inline]
pub fn wavenumber(f_hz: f64) -> f64 {
    2.0 * std::f64::consts::PI * f_hz / C0
}
