//! Automatic sequences over base-`c` digit words, and the machinery that turns
//! two automata for the same sequence in multiplicatively independent bases
//! into an explicit eventual-periodicity certificate.
//!
//! The crate is organised bottom-up:
//!
//! * [`dfao`]: deterministic finite automata with output, their text format,
//!   reading-direction reversal and the periodic-sequence generator.
//! * [`numeration`]: base-`c` words, window representations and digit-set
//!   extension/restriction.
//! * [`approx`]: multiplicative independence and exact power approximation.
//! * [`periodicity`]: local periods on intervals and how they merge.
//! * [`cobham`]: certificate extraction and verification.

pub mod approx;
pub mod cobham;
pub mod dfao;
mod error;
pub mod numeration;
pub mod periodicity;

pub use approx::{approx_powers, multiplicatively_independent, ApproxPair};
pub use cobham::{
    extract, teleport_check, verify_certificate, ExtractConfig, ExtractionTrace,
    PeriodCertificate, StatePairWitness, VerificationReport,
};
pub use dfao::{build_periodic_dfao, Dfao, Reading};
pub use error::{Error, Result};
pub use numeration::{canonical_repr, eval_word, DigitSet};
pub use periodicity::{Interval, IntervalClaim};
