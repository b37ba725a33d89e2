//! Exact-arithmetic toolkit for light dual multinets in the projective plane.
//!
//! The crate provides exact scalars over prime fields and cyclotomic fields
//! ([`field`]), projective geometry in PG(2)/PG(3) ([`geom`]), quasigroups
//! and latin squares ([`loops`]), the central labeled-multinet object with
//! verification / classification / labelability machinery ([`multinet`]),
//! builders for the four explicit families ([`constructions`]), and the
//! `ldm-1` JSON file format ([`io`]).

pub mod constructions;
pub mod field;
pub mod geom;
pub mod io;
pub mod loops;
pub mod multinet;
pub mod rng;
