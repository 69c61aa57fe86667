//! Rate regions and bounds for the two-user Gaussian interference channel
//! assisted by an out-of-band relay.
//!
//! Two relay topologies are covered. In the first ([`type1`]) the relay band is
//! four orthogonal point-to-point links; in the second ([`type2`]) it is a
//! multiple-access phase followed by a broadcast phase. Regions are carried as
//! [`RateRegion2D`] values built from linear systems with the machinery in
//! [`polytope`].
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channel;
mod error;
pub mod optimize;
pub mod polytope;
pub mod type1;
pub mod type2;

pub use channel::{cap, db_to_linear, linear_to_db, IcParams, ObrcTypeI, ObrcTypeII, PowerSplit, Violation};
pub use error::{Error, Result};
pub use polytope::{HalfPlane, HalfSpaceSystem, RateRegion2D};
