pub mod decay;
pub mod metrics;
pub mod robustness;
pub mod stats;
pub mod validate;
pub mod verify;
