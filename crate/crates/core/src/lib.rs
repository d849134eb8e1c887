pub mod arith;
pub mod counting;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod series;
pub mod zeta;
pub mod sturm;
pub mod weil;
pub mod hasse_weil;
