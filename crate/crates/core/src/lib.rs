//! Weyl group combinatorics of unipotent blocks: sharp twisted Weyl groups,
//! block enumeration for affine Weyl groups, the weighted affine Weyl groups
//! attached to blocks, their c-functions, and the triangular factorization of
//! the pairing matrix.

pub mod affine;
pub mod blocks;
pub mod chars;
pub mod coxeter;
pub mod exec;
pub mod green;
pub mod group;
pub mod hecke;
pub mod partition;
pub mod poly;
pub mod report;
pub mod verify;
pub mod weighted;
