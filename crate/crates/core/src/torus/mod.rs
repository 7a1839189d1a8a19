//! Weight systems, hypergeometric sums on tori and their Weyl twists.

pub mod hypergeometric;
pub mod mellin;
pub mod twisted;
pub mod weights;

pub use hypergeometric::{hyper_sign, hyper_table, hyper_trace};
pub use mellin::{
    cycle_characters, gauss_product, kummer_convolution_scalar, mellin_gamma, mellin_root_sum, sigma_fiber_sum,
    sigma_fiber_sums,
    twisted_characters, MellinCalibration,
};
pub use twisted::{Action, FiberTable, Torus, TwistedTorusPoint};
pub use weights::{cycle_lcm, RepSpec, WeightEntry, WeightSystem, WeylLift};
