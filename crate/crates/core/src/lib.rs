//! Degree-wise verification of the Fröberg conjecture for ideals generated
//! by generic forms of degree `d`, in degree `d + d'` with `d' < d`.
//!
//! The crate is split along the lines of the argument:
//!
//! - [`ring`]: dimensions and monomial bases of `k[x_1..x_n]`, the
//!   parameters `r` and `s`, and the conjectured (truncated) Hilbert series.
//! - [`exactpoly`]: exact rational polynomials, Sturm root counting and
//!   certified non-negativity on intervals, real-argument binomials.
//! - [`gpoly`]: the polynomial `g_{d,d'}` and everything that is checked
//!   about it (sign changes, the `g(x) <= g(n-1)` bound, the d'-scan).
//! - [`bounds`]: Macaulay growth bounds and the per-instance audit of the
//!   dimension count.
//! - [`gflinalg`]: prime fields and dense rank computation.
//! - [`verify`]: randomized rank verification, including the split over a
//!   subring in fewer variables.

pub mod bounds;
pub mod error;
pub mod exactpoly;
pub mod gflinalg;
pub mod gpoly;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
