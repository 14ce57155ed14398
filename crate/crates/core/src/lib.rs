//! Exact verification engine for Poisson pencils, quantum relation families,
//! quotient flatness and braided U_q(sl2) structures.

pub mod mode;
pub mod scalar;
pub mod linalg;
pub mod algebra;
pub mod poisson;
pub mod rmatrix;
pub mod quotient;
pub mod braided;
