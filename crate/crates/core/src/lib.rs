//! Crystals of tableaux, LS paths and matrices, Demazure crystals and
//! atoms, RSK as a bicrystal isomorphism, and exact checks of the
//! non-symmetric Cauchy and Littlewood identities, including a continuous
//! (rational-scale) version of the matrix correspondence.

pub mod continuous;
pub mod demazure;
pub mod error;
pub mod identity;
pub mod ls_path;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod suites;
pub mod tableau;
pub mod weyl;
pub mod word;

pub use continuous::{build_pi_m, cont_raise_to_highest, cont_tensor_op, verify_main2, PLPath, RatMatrix};
pub use demazure::{atom, character, demazure_crystal, demazure_set, opposite_demazure_crystal, DemazureSet, Kind};
pub use error::{Error, Result};
pub use identity::{kernel_series, rhs_sum, verify_identity, verify_littlewood, IdentityReport, KernelSpec, Support, Variant};
pub use ls_path::{psi, psi_inv, LSPath};
pub use matrix::{classify_low, diagonal_op, raise_to_highest, rsk, Classification, NNMatrix, Side};
pub use poly::{SparsePoly, Vars};
pub use rational::Q;
pub use tableau::{enumerate_crystal, word_to_tableau, Tableau};
pub use weyl::{Partition, Permutation, Weight};
pub use word::{Direction, Word};
