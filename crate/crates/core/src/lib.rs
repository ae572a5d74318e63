//! Combinatorial sutured Floer homology over F2.

pub mod exactlin;
pub mod surface;
pub mod catalog;
pub mod strands;
pub mod sfc;
pub mod modules;
pub mod glue;
