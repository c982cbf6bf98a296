//! Exact arithmetic for the 0-Hecke category: the algebra `H_n(0)` on its
//! standard basis, hom-spaces in canonical form, induced and padded induced
//! modules, composition series, quasisymmetric characteristics, a
//! Grothendieck-group decomposer, and several concrete module families
//! (Demazure polynomials, Stanley-Reisner gradings, unipotent group homology,
//! Borel cohomology, tableau modules).

pub mod boolean_sr;
pub mod borel;
pub mod category;
pub mod demazure;
pub mod comps;
pub mod grothendieck;
pub mod homology;
pub mod hecke;
pub mod induced;
pub mod repn;
pub mod field;
pub mod linalg;
pub mod qsym;
pub mod srct;
pub mod unipotent;

pub use comps::Composition;
pub use field::{Field, PrimeField, Rationals};
