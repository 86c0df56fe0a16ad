//! Container encoding of even delta-matroids.
//!
//! For an even delta-matroid on `[n]` with all feasible sizes even, the
//! infeasible even sets `L` are vertices of the even component of `R_n`.
//! Peeling yields `(S, A)`; a local cover at each member of `S` classifies
//! all of its `R_n`-neighbours, and `L ∩ A` is listed verbatim.

pub mod bound;
pub mod container;
pub mod cover;
pub mod graph;
pub mod record;
pub mod spectrum;

pub use bound::{bound_calculator, BoundReport};
pub use container::{kw_encode, kw_reconstruct_a, Alpha, KwOutcome, KwStep};
pub use cover::{cover_certifies, local_cover, Certificate, Partition};
pub use graph::{rn_component, Parity, RegularGraph};
pub use record::{decode_even_dm, decode_system, encode_even_dm, EncodingRecord, Fraction};
pub use spectrum::{rn_matrix_identity, rn_spectrum, smallest_eigenvalue};
