//! Parabolic induction from the torus at the level of trace functions: flag
//! sums, Steinberg fibers, φ_ρ on the regular locus and its coset sums.

pub mod flags;
pub mod phi;

pub use flags::{all_flags, flag_fixed_points, induced_trace, FlagPoint, HyperLookup};
pub use phi::{
    borel_unipotent_sum, coset_vanishing_top, has_distinct_roots, is_regular, steinberg_fiber, CosetSums,
    GammaTrace,
};
