//! Frobenius additive FFT over Cantor bases, GF(2)[x] multiplication built on
//! it, and a generator of straight-line AND/XOR multiplier circuits.

pub mod bench;
pub mod circuit;
pub mod error;
pub mod transform;
pub mod field;
pub mod gf2x;
pub mod novel;
pub mod poly;
pub mod selftest;
pub mod subspace;

pub use circuit::{gen_mul_circuit, verify_slp, StraightLineProgram};
pub use error::{Error, Result};
pub use transform::{CrossSectionPoint, FaftResult, OpCounters};
pub use field::{Field, FieldElement, FieldParams};
pub use gf2x::{mul_fafft, mul_karatsuba, mul_schoolbook, Method, MulPlan};
pub use novel::{from_novel, to_novel, NovelPoly};
pub use poly::{BinaryPoly, BitVec};
pub use subspace::{SubspaceCoeffs, TwiddleTable};
