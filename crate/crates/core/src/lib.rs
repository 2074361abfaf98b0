//! Lie-algebra level models of the compact rank-one symmetric spaces and the
//! invariant contact geometry of their tangent sphere bundles.
//!
//! The crate is layered bottom-up:
//!
//! * [`rootsys`] generates positive root systems, Killing-normalized inner
//!   products and signed structure constants `N_{α,β}`.
//! * [`compactform`] turns a root system into the compact real form
//!   spanned by `{i t_α, U⁰_α, U¹_α}`, or builds `so(n+1)` from matrices.
//! * [`crossmodel`] fixes the symmetric pair, the Cartan vector `X` and the
//!   restricted-root frame of `m̄ = m ⊕ k_ε ⊕ k_{ε/2}`.
//! * [`homgeo`] holds the invariant metrics on `G/H`, the `𝔘`-map and the
//!   Levi-Civita bilinear form.
//! * [`contact`] builds almost contact metric structures on `T_r(G/K)` and
//!   classifies them (contact, K-contact, Sasakian).
//! * [`tanbundle`] models the punctured tangent bundle `G/H × ℝ⁺`.
//! * [`suites`] and [`acceptance`] package the checks into reports.

pub mod acceptance;
pub mod compactform;
pub mod contact;
pub mod crossmodel;
pub mod error;
pub mod fixtures;
pub mod homgeo;
pub mod linalg;
pub mod report;
pub mod rootsys;
pub mod suites;
pub mod tanbundle;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::ToleranceConfig;

/// Dense column vector used for algebra and frame coordinates.
pub type Vector = nalgebra::DVector<f64>;
/// Dense matrix used for operators and Gram matrices.
pub type Matrix = nalgebra::DMatrix<f64>;
