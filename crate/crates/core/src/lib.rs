pub mod augmentation;
pub mod bounds;
pub mod cone;
pub mod corpus;
pub mod diagram;
pub mod numeric;
pub mod synth;
pub mod twist;
