//! End-to-end downlink beamforming for FDD multiuser MIMO without explicit
//! downlink channel estimation.
//!
//! The crate keeps the classic least-squares estimator and zero-forcing
//! precoder in place and learns two things around them: the uplink pilot
//! matrix and a single per-user calibration MLP that transforms the uplink
//! channel estimate into the input of the ZF stage. Everything is trained on
//! the downlink sum-rate via hand-rolled reverse-mode differentiation over
//! complex matrix primitives.
//!
//! Module layering, bottom up:
//!
//! - [`numerics`]: complex dense matrices, LU inverse, right pseudo-inverse
//!   (generic over the scalar type).
//! - [`channel`]: paired uplink/downlink multipath channel generation with
//!   shared path geometry, plus dataset files.
//! - [`classic`]: pilot reception, LS estimation, ZF beamforming, sum-rate,
//!   and the WMMSE reference method.
//! - [`neural`]: shared calibration MLP, batch normalization, Adam, pilot
//!   normalization, checkpoints.
//! - [`gradients`]: closed-form sum-rate gradients, the reverse-mode tape,
//!   full-pipeline backprop, and finite-difference oracles.
//! - [`pipeline`]: training loops, baselines, and evaluation.

pub mod channel;
pub mod classic;
pub mod gradients;
pub mod neural;
pub mod numerics;
pub mod pipeline;
pub mod rng;

pub use num_complex::Complex;

/// Complex scalar used by the double-precision aliases below.
pub type Complex64 = num_complex::Complex<f64>;

/// Double-precision complex matrix; the working type of the whole pipeline.
pub type CMatrix = numerics::CMat<f64>;

/// Double-precision pilot matrix (rows are per-user pilot sequences).
pub type PilotMatrix = classic::PilotMatrix<f64>;

/// Double-precision downlink beamformer (columns are per-user beams).
pub type Beamformer = classic::Beamformer<f64>;
