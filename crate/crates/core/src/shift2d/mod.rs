//! Commuting pairs of weighted shifts on `l^2(Z_+^2)`.

mod backext;
mod checks;
mod diagram;
mod hypo;

pub use backext::{backward_extension_2d, BackwardExtensionReport, Direction};
pub use checks::{
    check_berger_2d, check_berger_2d_with, commutativity_check, commutativity_check_with,
    path_independence_check,
};
pub use diagram::{weights_from_moments2d, Lattice, MomentTable2D, WeightDiagram, Window};
pub use hypo::{joint_hyponormality_window, self_commutator_window};
