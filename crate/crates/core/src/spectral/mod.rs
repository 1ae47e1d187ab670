//! Local spectral curves, the recursion and its graph expansion.

mod coeffs;
mod curve;
mod phi;
mod recursion;

pub use coeffs::{
    binomial_q, coeff_table, coproduct_split, decide_catalan_index, decide_handle_factor, s_sequence,
    verify_coproduct_identity, AmbiguityVerdict, CoeffEntry, CoeffKind, CoeffMode, CoeffTable, CoproductSplit,
    IdentityPart, IdentityReport, SplitTerm,
};
pub use curve::{bergmann, recursion_kernel, vertex_omega, CurveModel};
pub use phi::{phi, phi_eval, w_class_sum, w_graph_sum};
pub use recursion::{w_direct, Correlator, Recursion, MAX_EULER};
