//! Exact counting of monic irreducible polynomials over finite fields
//! with prescribed next-to-leading coefficients.
//!
//! The crate has two independent routes to every count and checks them
//! against each other:
//!
//! * a brute-force oracle that enumerates monic polynomials and sums the
//!   polynomial von Mangoldt function or the irreducibility indicator;
//! * exact character sums: the classes of monics that agree on their
//!   first `l` next-to-leading coefficients form an abelian group of
//!   order q^l, its characters have polynomial L-functions, and the
//!   counts come out of power sums of the inverse L-roots computed in
//!   rings of cyclotomic integers. No floating point enters any count.
//!
//! On top of the counts sit verification suites for the structural
//! facts this machinery exposes: periodicity of the normalized counts
//! in characteristics 2 and 5 (periods 24 and 60), Galois symmetries,
//! root-of-unity orders of normalized L-roots, and explicit witness
//! characters showing non-periodicity everywhere else.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod coset;
pub mod counting;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod lfunction;
pub mod poly;
pub mod report;

pub use coset::CosetClass;
pub use cyclotomic::CyclotomicInt;
pub use error::{Error, Result};
pub use field::{FieldDesc, FieldElement};
pub use poly::MonicPoly;
