//! Exact centralizers of square matrices over `Z/p` and `Q`.
//!
//! The pipeline runs Smith normal form of `xI - A` over `k[x]`, reads off
//! the invariant factors and a rational canonical form transform `P`, builds
//! an explicit basis of the centralizer of the canonical form block by
//! block, and conjugates it back by `P`. The same machinery solves the
//! linear (not necessarily invertible) simultaneous intertwiner problem for
//! matrix pairs.

pub mod centralizer;
pub mod cli;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod poly_matrix;
pub mod rcf;
pub mod smith;
pub mod wild;

pub use centralizer::{
    centralizer_basis, frobenius_dimension, frobenius_dimension_closed_form, generating_matrix,
    generating_polynomial, generating_vector, rcf_centralizer_basis, CentralizerBasis, Provenance,
};
pub use error::{Error, Result};
pub use field::{FieldKind, FieldSpec, Scalar};
pub use io::{parse_input, InputDocument};
pub use matrix::{companion, direct_sum, direct_sum_all, MatrixK};
pub use poly::{Degree, Polynomial};
pub use poly_matrix::{char_matrix, MatrixPoly};
pub use rcf::{apply_phi, invariant_factors, rcf_transform, RcfResult};
pub use smith::{snf, SnfResult};
pub use wild::{
    invertible_witness_search, one_sided_intertwiners, simultaneous_intertwiners,
    IntertwinerMethod, IntertwinerSpace,
};
