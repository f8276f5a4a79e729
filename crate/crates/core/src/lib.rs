pub mod arith;
pub mod covariants;
pub mod modp;
pub mod numap;
pub mod qexp;
pub mod ringlab;
pub mod theta;
