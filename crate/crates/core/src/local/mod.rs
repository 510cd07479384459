//! Graded quotient rings with exact linear algebra, and the conifold checks built on them.

mod conifold;
mod mpoly;
mod ring;

pub use conifold::{
    cone_ring, conifold_ring, double_cover_ring, h1_p1, verify_extension_chain, ChainReport, DegreeRow, Split,
    SubCheck, MAX_CHAIN_DEGREE,
};
pub use mpoly::{monomial_degree, monomials_of_degree, parse_poly, MPoly, Monomial};
pub use ring::{
    check_free, check_generate, min_generators_at_origin, singular_locus_rank, DegreeDims, Echelon, FreeDims,
    FreeReport, GenerateReport, GradedModule, MinGenReport, Relation, TruncRing, DEFAULT_MAX_DEGREE,
};
