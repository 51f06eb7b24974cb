//! Deterministic channel simulator for reconfigurable intelligent surfaces (RIS).
//!
//! The crate models three element behaviours — dual-polarization unified
//! control (type 1), dual-polarization independent control (type 2) and
//! polarization rotation (type 3) — from an impedance-sheet boundary model,
//! radiates each element through the equivalence principle, and cascades the
//! resulting polarimetric responses over ray-traced Tx–RIS and RIS–Rx
//! multipath into a channel impulse response.
//!
//! Modules follow the processing chain:
//!
//! * [`coords`] — frames, spherical polarization bases, local/global rotation
//! * [`gstc`] — impedance synthesis and angle-dependent coefficients
//! * [`radiation`] — surface fields, equivalent currents, far-field response
//! * [`raytrace`] — image-method multipath for free space and a T corridor
//! * [`channel`] — per-element cascade, panel assembly, received power
//! * [`codebook`] — beamforming / beamfocusing element configurations
//! * [`scenario`] — declarative study configs and batch runners
//!
//! The `examples/` directory exercises each capability end to end; the thin
//! `risim` binary drives the same scenario runners from the command line.

// pub mod channel;
// pub mod codebook;
pub mod constants;
pub mod coords;
pub mod gstc;
pub mod radiation;
// pub mod raytrace;
// pub mod scenario;

// pub use channel::{ChannelImpulseResponse, RisPanel, RxPolarization, Tap};
pub use coords::{Direction, Frame, PolRotation};
pub use gstc::{ActualCoefficients, DesiredCoefficients, ImpedanceTensors, Polarization};
pub use radiation::ElementResponse;
// pub use raytrace::{PathRecord, Scene};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;
/// 2x2 complex polarimetric matrix (rows/columns ordered theta, phi).
pub type Mat2 = nalgebra::Matrix2<C64>;
/// Real 3-vector in meters or unitless direction cosines.
pub type Vec3 = nalgebra::Vector3<f64>;
/// Complex 3-vector field quantity.
pub type CVec3 = nalgebra::Vector3<C64>;
