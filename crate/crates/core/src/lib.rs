//! Veronese surface of PG(5,3), its 12-point caps and Witt designs, the
//! ternary Golay code they span, and the replaced-conic twelve-sets.

pub mod automorphism;
pub mod cap;
pub mod cli;
pub mod coset;
pub mod design;
pub mod error;
pub mod gf3;
pub mod golay;
pub mod pg;
pub mod veronese;
