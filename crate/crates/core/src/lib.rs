//! Orbit length generating functions of automorphisms of the rooted binary tree.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that talks to the
//! outside world (files, JSON, command line) lives in the companion `olgf` crate.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod img;
pub mod nonrational;
pub mod olgf;
pub mod poly_series;
pub mod tree_group;
