//! Exact rational expressions, local Laurent expansion and residues.

mod poly;
mod ratexpr;
mod series;

pub use poly::{Monomial, Poly};
pub use ratexpr::RatExpr;
pub use series::{expand_local, residue_of_product, valuation, LocalSeries};

/// `Res_{var=0} e`.
pub fn residue_at_origin(e: &RatExpr, var: &str) -> crate::Result<RatExpr> {
    residue_of_product(std::slice::from_ref(e), var)
}
