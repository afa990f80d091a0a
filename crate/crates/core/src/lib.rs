pub mod analyze;
pub mod coeffs;
pub mod dg;
pub mod frontend;
pub mod ganea;
pub mod linalg;
pub mod present;
pub mod schreier;
pub mod tensor;
