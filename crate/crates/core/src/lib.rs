//! Finite-group engine for integral 3-valent Cayley graphs.

pub mod analysis;
pub mod cache;
pub mod catalog;
pub mod constructors;
pub mod group;
pub mod io;
pub mod morphisms;
pub mod recipe;
pub mod spectra;
