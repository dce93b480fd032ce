//! Exact arithmetic: finite fields, `F_q[t]`, series at infinity, integer
//! matrices and polynomials.

pub mod field;
pub mod fqpoly;
pub mod integer;
pub mod intpoly;
pub mod matrix;
pub mod fqmat;
pub mod laurent;
pub mod ratfunc;
