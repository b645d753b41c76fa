//! Packaged numerical experiments built from the lower layers.
//!
//! Each experiment produces a plain struct of results plus a `to_csv`
//! rendering; nothing here prints or touches the filesystem. The CLI is
//! a thin dispatcher over these functions.
//!
//! * [`poincare_ratio`] / [`poincare_sweep`] — the shift-minimized
//!   Luxemburg/gradient quotient ‖u − avg‖_H / ‖∇u‖_p over catalogs of
//!   test functions and a ladder of grid resolutions.
//! * [`exhaustion_experiment`] — the same quotient along a nested family
//!   of growing domains, watching the averages and the ratio stabilize.
//! * [`sjohn_exponent_table`] — predicted vs. measured large-argument
//!   exponent of H for power boundary growth.
//! * [`mushroom_counterexample`] / [`farfield_bump_counterexample`] —
//!   closed-form witness families whose target-norm lower bounds grow
//!   while gradient energy stays fixed.

mod counterexample;
mod domains;
mod exhaustion_run;
mod poincare;
mod sjohn;
mod testfns;

pub use counterexample::{
    farfield_bump_counterexample, mushroom_counterexample, FarFieldCounterexample, FarFieldRow,
    MushroomCounterexample, MushroomRow,
};
pub use domains::DomainSpec;
pub use exhaustion_run::{exhaustion_experiment, ExhaustionReport, ExhaustionRow};
pub use poincare::{poincare_ratio, poincare_sweep, PoincareRatio, PoincareRow, PoincareRun};
pub use sjohn::{sjohn_exponent_table, SJohnRow, SJohnTable};
pub use testfns::{ExhaustionField, TestFamily};
