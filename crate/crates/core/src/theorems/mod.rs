//! Decision procedures built on the fusion context: factorization, normality
//! criteria, the local p-nilpotency criterion and consistency suites.

pub mod battery;
pub mod factorize;
pub mod frobenius;
pub mod normality;
pub mod power;
pub mod resistance;

pub use factorize::{factorize, verify_chain, ChainStep, FactorizationChain};
pub use normality::{NormalityMethod, NormalityVerdict, NormalityWitness};
pub use frobenius::{frobenius_test, FrobeniusReport};
pub use power::{power_congruence_check, PowerCongruence};
pub use resistance::{resistance_row, resistance_suite, ResistanceReport, ResistanceRow};
