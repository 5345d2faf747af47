//! Exact-arithmetic polyhedral toolkit for nef-cone bounds of toric
//! varieties.
//!
//! Given a rational fan, typically non-complete, this crate computes three
//! polyhedral bounds on the nef cone in class-group coordinates: the cone of
//! globally generated classes, the cone of classes with effective pullback
//! to every orbit closure, and the weighted intersection-nonnegativity cone,
//! together with certificates for the containment chain between them. A
//! built-in catalog provides the standard worked instances (projective
//! spaces, the punctured Hirzebruch surface, a non-projective complete
//! 3-fold, blow-ups of P^4, Kleinschmidt bundles, del Pezzo tropicalization
//! fans, and the space of phylogenetic trees).
//!
//! All arithmetic is exact (big integers and rationals); there is no
//! floating point anywhere.

pub mod catalog;
pub mod chow;
pub mod cone;
pub mod divclass;
pub mod exactlin;
pub mod fan;
pub mod lp;
pub mod nefbounds;
pub mod verify;

pub use exactlin::{Int, IntVec, Rat, RatVec};
