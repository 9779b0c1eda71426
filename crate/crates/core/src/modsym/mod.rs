//! Modular symbols for `Gamma_0(N)` at prime level `N`.

pub mod heilbronn;
pub mod modp;
pub mod p1;
pub mod presentation;
mod space;

pub use p1::P1;
pub use space::{
    build_space, continued_fraction_symbols, genus, HeckeIndex, HeckeOp, ModularSymbolSpace, Sign,
    ThetaElement,
};
