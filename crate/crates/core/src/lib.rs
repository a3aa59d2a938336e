pub mod exactpoly;
pub mod groebner;
pub mod genmat;
pub mod borel;
pub mod fp;
pub mod ribet;
pub mod brcomplex;
pub mod properties;
