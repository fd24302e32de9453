//! Verification and simulation tools for the special Lagrangian potential
//! equation `F(D^2 w) = f(x)`, where `F(X) = sum_i arctan(lambda_i(X))`.
//!
//! * [`symmat`]: small symmetric matrices, Jacobi eigenvalues, Loewner order.
//! * [`slop`]: the operator `F`, phases, and the special phase values.
//! * [`family`]: the sub/supersolution pairs `v_k`, `u_k` and phases `f_k`
//!   whose difference has an isolated interior maximum.
//! * [`viscosity`]: analytic certificates and randomized touching probes for
//!   the viscosity inequalities.
//! * [`verify`]: grid sweeps combining the family and viscosity checks into a
//!   [`verify::VerificationReport`].
//! * [`certificate`]: the gap `delta(theta, tau)` behind the comparison
//!   criterion.
//! * [`fdsolve`]: a monotone wide-stencil solver in two dimensions.

pub mod certificate;
pub mod error;
pub mod family;
pub mod fdsolve;
pub mod slop;
pub mod symmat;
pub mod verify;
pub mod viscosity;

pub use error::{Error, Result};
pub use family::{DomainBox, Family, Point};
pub use slop::Phase;
pub use symmat::{OrthMatrix, Spectrum, SymMatrix};
