//! Finite-difference discretisation of the four problems on lattice domains,
//! the spherical-cap radial problem, and the symmetric eigensolvers behind them.

mod cap;
mod dense;
mod envelope;
mod fd;
mod gevp;
mod grid;
mod krylov;
mod oned;
mod operator;

pub use cap::{cap_spectrum, CapDomain};
pub use dense::{sym_eig_select, HouseholderTridiag, Tridiagonal};
pub use envelope::EnvelopeCholesky;
pub use fd::{fd_spectrum, pencil};
pub use gevp::{solve_gevp, solve_gevp_deflated, EvpSolution, SolverMethod, SolverOptions};
pub use grid::GridDomain;
pub use oned::{interval_fd_spectrum, interval_pencil};
pub use operator::{assemble_bilaplacian_clamped, assemble_laplacian, LaplaceBc, SparseSymOperator};
