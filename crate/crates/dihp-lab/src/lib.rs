//! A desk-scale verification laboratory for the machinery behind streaming-CSP
//! lower bounds.
//!
//! The crate builds every concrete object in that machinery — CSP instances and
//! their exact values, the BasicLP relaxation solved over the rationals, the
//! reduction from LP solutions to distribution-labeled k-graphs, the
//! DIHP(G, n, α, K) communication game with its Markov kernels and yes/no input
//! distributions, labeled-matching spaces with globalness and pseudo-uniformity
//! tests, and a Fourier toolkit on `Z_N^Λ` — and then checks, exactly where the
//! identities are rational and statistically where they are not, the bounds and
//! invariants that the lower-bound analysis relies on.
//!
//! Modules follow the pipeline order: [`csp`] → [`lp`] → [`blowup`] →
//! [`matching`] → [`game`] → [`fourier`] → [`rectangle`], with [`suites`]
//! bundling the verification batteries the CLI exposes.

pub mod blowup;
pub mod config;
pub mod csp;
pub mod error;
pub mod fourier;
pub mod game;
pub mod lp;
pub mod matching;
pub mod ratio;
pub mod rectangle;
pub mod report;
pub mod stats;
pub mod suites;

pub use config::Caps;
pub use error::{Error, Result};
