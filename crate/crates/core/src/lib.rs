//! Depth-zero cuspidal representations of p-adic classical groups as exact
//! combinatorial data.
//!
//! A cuspidal datum is a maximal parahoric J_{N₁,N₂} together with, on each factor
//! of its reductive quotient, the multiplicities m_P of the self-dual irreducible
//! polynomials in the characteristic polynomial of a semisimple dual element. From
//! it the engine computes the Hecke parameters f₁, f₂, the reducibility points
//! {s, s′} of each inertial class, the inertial reducibility multiset IRed, the
//! Jordan set and parameter shape, and the census of all data sharing IRed.

pub mod cuspdata;
pub mod error;
pub mod ffpoly;
pub mod fixtures;
pub mod groups;
pub mod hecke;
pub mod packets;
pub mod sweep;

pub use error::{Error, Result};
