pub mod fib;
pub mod figures;
pub mod golden;
pub mod ifs;
pub mod seq;
