//! Construction and verification of integer sets with prescribed
//! representation functions under binary linear forms.
//!
//! For an eligible form F(x1, x2) = u1*x1 + u2*x2 (nonzero coprime
//! coefficients, u1*u2 outside {1, -1, -2}) and a target function
//! f: ℤ → ℕ₀ ∪ {∞} whose zero set has asymptotic density zero,
//! [`builder::build`] grows a finite set two elements at a time until its
//! representation function matches f on a window, and [`builder::certify`]
//! re-verifies the result against the brute-force oracle in [`oracle`].
//! With f ≡ 1 the output is a unique representation basis at desk scale.
//! The [`gadic`] module generates and decodes the digit-restricted Sidon
//! bases for the weighted forms x1 + g*x2 + ... + g^(m-1)*xm, and
//! [`density`] profiles zero-set descriptions empirically.
//!
//! The `repbasis` binary exposes the same operations as subcommands; the
//! crate's `examples/` directory holds one runnable walk-through per
//! capability.

pub mod augment;
pub mod builder;
pub mod cli;
pub mod density;
mod error;
pub mod forms;
pub mod gadic;
pub mod oracle;

pub use error::{Error, Result};
pub use forms::{BezoutPair, IntSet, LinearForm, MaryForm, Multiplicity, TargetSpec, ZeroSetSpec};
