//! Weight generators for concrete pairs `h ⊂ g`.

pub mod blocks;

pub use blocks::{
    build_sl_block, levi_decomposition, table1_predicate, table2_predicate, BlockPattern,
    DiagonalKind, LeviDecomposition, TorusMode, TABLE1_NAMES, TABLE2_NAMES,
};
pub mod classical;

pub use classical::{
    classical_in_sl, complex_pair, product_in_sl, product_in_sp, realify, so_pair, ClassicalInSl,
    ComplexFamily,
};
pub mod matrix;

pub use matrix::{extract_weights, sl_block_matrices, sp21_pair, sp_product_matrices, MatrixPairInput, QMatrix};
