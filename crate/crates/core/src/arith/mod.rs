//! Finite fields, cyclotomic numbers, characters and character sums.

pub mod characters;
pub mod cyclotomic;
pub mod linalg;
pub mod numth;
pub mod sums;
pub mod tower;

pub use characters::MultCharacter;
pub use cyclotomic::{CycNum, ExactValue, RootSum};
pub use linalg::{solve_exact, Solution};
pub use sums::{gauss_root_sum, gauss_sum, kloosterman, psi_eval};
pub use tower::{build_tower, build_tower_with_cap, Elem, FieldMap, FieldTower, Level, MapValue};
