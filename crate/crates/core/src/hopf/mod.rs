//! The free module on tagged graphs with its Hopf algebra structure.

pub mod axioms;
mod combo;
pub mod loday_ronco;
mod ops;

pub use axioms::{verify_axioms, AxiomReport, Law, LawResult, LawStatus};
pub use combo::{parse_combo, parse_rational, Combo, TensorCombo, Q};
#[allow(unused_imports)]
pub(crate) use combo::q_text;
pub use loday_ronco::{lr_coproduct, lr_product};
pub use ops::{
    antipode, antipode_graph, coproduct, coproduct_graph, counit, multiply, reduced_coproduct,
    star, star_graphs, unit,
};
