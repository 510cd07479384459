pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod roots;
pub mod divisor;
pub mod bundle;
pub mod poly;
pub mod spectral;
pub mod local;
pub mod transform;
pub mod cli;
pub mod suite;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/divisors.md")]
    mod divisors {}
    #[doc = include_str!("../../../book/src/bundles.md")]
    mod bundles {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/transform.md")]
    mod transform {}
    #[doc = include_str!("../../../book/src/local-models.md")]
    mod local_models {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
