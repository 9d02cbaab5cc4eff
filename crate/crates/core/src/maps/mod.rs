//! Finite descriptions of holomorphic maps `D → Ω_n` and `Ω_n → Ω_n`, with
//! seeded generators.

mod disc;
pub mod sampling;
mod self_map;

pub use disc::{
    boundary_sup, eval_disc_map, sample_disc_map, sample_disc_map_with, DiscMapSpec, BOUNDARY_SAMPLES,
    CERTIFICATION_SAFETY,
};
pub use self_map::{eval_self_map, sample_self_map, sample_self_map_with, SelfMapSpec, MAX_SIMILARITY_COND};
