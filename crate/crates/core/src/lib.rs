pub mod calculus;
pub mod error;
pub mod hermitian;
pub mod lefschetz;
pub mod qalgebra;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use qalgebra::{AlgebraElement, Gen, Monomial};
pub use scalar::Scalar;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    mod calculus {}
    #[doc = include_str!("../../../book/src/hermitian.md")]
    mod hermitian {}
    #[doc = include_str!("../../../book/src/kahler.md")]
    mod kahler {}
    #[doc = include_str!("../../../book/src/blocks.md")]
    mod blocks {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
