//! Sample LP assembly and a sparse revised simplex solver with certificates.

mod assemble;
mod dual;
mod dump;
mod lu;
mod model;
mod simplex;
mod solve;

pub use assemble::assemble;
pub use dual::{evaluate_lagrangian_dual, lagrangian_dual_value};
pub use dump::{read_lp, write_lp};
pub use model::{
    check_certificate, CertificateReport, LpModel, LpSolution, LpStatus, Orientation, SolveStats,
    COMPLEMENTARITY_TOL, DUAL_TOL, GAP_TOL, PRIMAL_TOL,
};
pub use solve::{solve, solve_with, OrientationChoice, SolveOptions};
