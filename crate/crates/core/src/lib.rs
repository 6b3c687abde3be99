//! Uniform bases for ideal arrangements of root systems.
//!
//! The crate builds the logarithmic derivation bases ψ_{i,j} for every
//! irreducible root system, certifies them with Saito's criterion over all
//! lower ideals, re-derives the P_m matrices with the multiple addition
//! construction, and exports cohomology presentations of regular nilpotent
//! Hessenberg varieties.

pub mod bases;
pub mod cohomology;
pub mod derivation;
pub mod error;
pub mod exactmath;
pub mod ideals;
pub mod matsolver;
pub mod rootsys;
pub mod saito;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/roots-and-ideals.md")]
    pub mod roots_and_ideals {}
    #[doc = include_str!("../../../book/src/bases.md")]
    pub mod bases {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    pub mod matrices {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    pub mod cohomology {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
