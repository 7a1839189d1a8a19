//! Matrix geometry of the mirabolic subgroup: strata, companion forms,
//! Bernstein coordinates, coset characteristic polynomials, orbit censuses
//! and the parabolic rank normal form.

pub mod census;
pub mod matrix;
pub mod parabolic;
pub mod poly;
pub mod strata;

pub use census::{orbit_census, q1_elements, recursion_prediction, Census};
pub use matrix::{elem_code, elem_label, Echelon, Mat};
pub use parabolic::{parabolic_rank_classify, pivot_shape, ParabolicClass};
pub use poly::{companion, Poly};
pub use strata::{
    all_rows, bernstein_coords, companion_normalize, coset_charpoly, coset_formula, krylov_basis, l_x,
    l_x_rank, lemma_map, normalize, reassemble, solve_lemma, split_normalized, stratum_index,
    uq_element, CosetCharpoly, Normalized, StratumData,
};
