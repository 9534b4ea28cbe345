pub mod approx;
pub mod cli;
pub mod exact;
pub mod prover;
pub mod series;
pub mod suite;
