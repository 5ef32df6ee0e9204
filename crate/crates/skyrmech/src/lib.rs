//! Desk-scale physics of skyrmion qubits coupled to nanomechanical
//! cantilevers: qubit spectra, tip-field coupling budgets, parametrically
//! enhanced Rabi dynamics, phonon-mediated qubit-qubit interactions, and
//! chiral bound states in a dimerized phonon bath.

pub mod device;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod ode;
pub mod operators;
pub mod quadrature;
pub mod qubit;
pub mod tip;
pub mod topo;
pub mod units;

pub use error::{Result, SkyrmechError};
