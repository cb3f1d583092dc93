pub mod algebra;
pub mod deformation;
pub mod family;
pub mod fixtures;
pub mod gf2m;
pub mod pipeline;
pub mod singularity;
pub mod zeta;
