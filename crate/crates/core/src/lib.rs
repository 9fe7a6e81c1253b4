//! Dense-state simulation of teleportation protocols for `M`-particle,
//! `d`-level cat-like states `Σ_l α_l |l…l⟩`.
//!
//! The crate builds the joint state of the cat and an `(M+1)`-qudit
//! maximally entangled channel, projects Alice's qudits onto one of several
//! measurement families and applies a monomial correction on Bob's side:
//!
//! * [`ProtocolKind::BellBasis`]: π-basis measurements on `M-1` particles and
//!   one two-particle Bell measurement; `(M+1)·log₂d` bits.
//! * [`ProtocolKind::GhzBasis`] and [`ProtocolKind::Barred`]: one collective
//!   measurement on all `M+1` of Alice's particles; `2·log₂d` bits.
//! * [`ProtocolKind::Hybrid`]: the interpolating family with `k·log₂d` bits
//!   and an `(M-k+3)`-particle collective measurement.
//!
//! ```
//! use catport::{CatState, Protocol, ProtocolSpec};
//!
//! let cat = CatState::random(3, 2, 42).unwrap();
//! let protocol = Protocol::new(ProtocolSpec::ghz(3, 2).unwrap()).unwrap();
//! for record in protocol.enumerate(&cat).unwrap().iter().filter(|r| r.is_possible()) {
//!     assert!((record.probability - 1.0 / 9.0).abs() < 1e-12);
//!     assert!(record.fidelity.unwrap() > 1.0 - 1e-12);
//! }
//! ```

pub mod analysis;
pub mod bases;
pub mod cat;
pub mod cli;
pub mod density;
pub mod error;
pub mod io;
pub mod operator;
pub mod phase;
pub mod protocols;
pub mod register;
pub mod state;
pub mod verify;

pub use analysis::{cost_of, cost_table, CostRow};
pub use bases::{
    build_basis, verify_orthonormal_complete, BasisFamily, BasisLabel, BellLabel, GhzLabel,
    MeasurementBasis, PiLabel,
};
pub use cat::CatState;
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use operator::MonomialOperator;
pub use protocols::{
    apply_correction, barred_equivalence_check, compose_joint_state, correction_for,
    enumerate_outcomes, measurement_family, run_protocol, OutcomeRecord, Protocol, ProtocolKind,
    ProtocolSpec,
};
pub use register::RegisterShape;
pub use state::PureState;
