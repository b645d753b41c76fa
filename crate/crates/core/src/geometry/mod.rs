//! Grid domains in 2-D and 3-D.
//!
//! A domain is a cell-center mask on a uniform lattice: a cell belongs
//! to the domain iff its center satisfies the generating predicate.
//! Constructors produce boxes, cusps `{0 ≤ x_n, |x'| < ψ(x_n)}`,
//! quarter-space domains with mushroom attachments, and nested
//! exhaustions of unbounded prototypes on a common lattice.  A cigar
//! checker certifies the chain condition `B(x, ψ(q(x))/c_J) ⊂ D` along
//! user-supplied core curves.

mod cigar;
mod cusp;
mod exhaustion;
mod grid;
mod mushroom;

pub use cigar::{check_cigar, CigarReport, CoreCurve};
pub use cusp::make_cusp;
pub use exhaustion::{make_exhaustion, Prototype};
pub use grid::{make_box, GridDomain};
pub use mushroom::{make_mushroom_domain, MushroomSpec};
