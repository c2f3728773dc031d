//! Witt vectors `W_G(R)` of a finite group `G` and Tambara's category of
//! bispans `U^G`, computed with exact integer arithmetic.
//!
//! The pieces, bottom up: finite groups and their subgroup classes
//! ([`group`], [`subgroups`]), finite G-sets with pullbacks and dependent
//! products ([`gset`]), sparse integer polynomials ([`poly`], [`ring`]),
//! universal Witt polynomials and Witt vector arithmetic ([`witt`]), bispans
//! and their composition ([`bispan`]), and the comparison between
//! `U^G(X, G/G)` and `W_G(ℤ[X])` ([`teichmuller`]). [`verify`] runs seeded
//! property suites over all of it.

pub mod bispan;
pub mod error;
pub mod group;
pub mod gset;
pub mod poly;
pub mod random;
pub mod ring;
pub mod subgroups;
pub mod teichmuller;
pub mod verify;
pub mod witt;
