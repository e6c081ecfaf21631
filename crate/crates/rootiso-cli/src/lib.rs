//! Experiment harness behind the `rootiso` command-line tool: ensemble
//! benchmarks, degree-scaling sweeps, tail-bound validation, and three-way
//! cross-validation of the solvers against the certified numeric oracle.

pub mod ensemble;
pub mod report;
pub mod stats;
pub mod tails;
pub mod xval;

pub use ensemble::{run_ensemble, scaling_experiment, HarnessError, Solver};
pub use report::{ExperimentRecord, SampleRow, ScalingReport, TailReport, CSV_HEADER};
pub use tails::{cond_tail_check, rho_tail_check};
pub use xval::{cross_validate, validate_instance, XvalReport};
