//! Two particles on concentric rings, solved by plane-wave basis truncation.
//!
//! The product basis `e^{imφ1} e^{inφ2} / (2π √(r1 r2))` with `|m|, |n| <= N/2`
//! turns the Schrödinger equation into a dense `(N+1)² x (N+1)²` symmetric
//! eigenproblem ([`matelem::assemble`], [`eigen::ground_state`]). The
//! [`mathieu`] module provides independent relative-angle references: a
//! one-dimensional Fourier solver and, for the harmonic interaction, Mathieu
//! characteristic values.
//!
//! ```
//! use ring_ritz::{ground_state, quasi_exact_coulomb_case, BasisSpec, QuadratureSpec};
//!
//! let case = quasi_exact_coulomb_case();
//! let basis = BasisSpec::new(10).unwrap();
//! let ground = ground_state(&basis, &case.geometry, &case.interaction, &QuadratureSpec::default()).unwrap();
//! assert!((ground.energy() - 28.0 / 507.0).abs() < 1e-5);
//! ```

pub mod analysis;
pub mod eigen;
pub mod error;
pub mod matelem;
pub mod mathieu;
pub mod model;
pub mod published;

pub use analysis::{
    compare, convergence_sweep, count_nodes, relative_profile, ComparisonReport, ConvergenceRow,
    Reference, NODE_REL_TOL,
};
pub use eigen::{eigensolve, excited_states, ground_state, sector_levels, EigenPairs, GroundSolution};
pub use error::{Error, Result};
pub use matelem::{
    assemble, coulomb_fourier, interaction_element, kinetic_element, momentum_blocks,
    HermitianMatrix, MomentumBlock, QuadratureSpec,
};
pub use mathieu::{
    harmonic_energy, harmonic_reference_case, mathieu_char, mathieu_profile, quasi_exact_coulomb_case,
    relative_spectrum, uniform_grid, CaseSpec, MathieuQuery, Parity, Profile, RelativeLevel,
};
pub use model::{distance, index_of, mode_of, BasisSpec, Interaction, ModePair, RingGeometry};
