pub mod angle;
pub mod catalog;
pub mod geometry;
pub mod flow;
pub mod holonomy;
pub mod io;
pub mod isometry;
pub mod real;
pub mod skew;
pub mod svg;
pub mod unfolding;
