//! Fourier-multiplier calculus on the periodic square.

pub mod fft;
mod field;
mod grid;
mod product;
pub mod random;
mod symbol;

pub use field::{pair_add, pair_l2_norm, pair_sub, pair_zeros, FieldPair, SpectralField2D};
pub use grid::GridSpec;
pub use product::{null_form_q12, pointwise_product};
pub(crate) use product::dealiased_from_physical;
pub use symbol::{apply_symbol, ops, SymbolKind, SymbolSpec, ZeroModeRule};
