//! Witten index of one-dimensional split-step quantum walks.
//!
//! A walk with evolution `U = ΓC` has a chirally symmetric supercharge
//! `Q = (U - U*)/2i`. Its index is computed here four ways, which must agree:
//!
//! * [`analysis::formula_index`], the closed form in `p` and the coin limits;
//! * [`winding`], winding numbers of the limit symbols (root count and
//!   argument principle);
//! * [`transfer`], exact kernel dimensions of `Q_{ε,+}` and its adjoint for
//!   piecewise-constant coins;
//! * [`spectral`], chirality of the localized near-zero modes of a finite
//!   section of `Q`.
//!
//! ```
//! use splitstep::{analyze_spec, AnalyzeOptions, WalkSpec};
//!
//! let walk = WalkSpec::step(0.5, 0.9, 0.0, 0.0)?;
//! let report = analyze_spec(&walk, &AnalyzeOptions::default().with_methods("formula,winding,transfer")?)?;
//! assert_eq!(report.index(), Some(1));
//! # Ok::<(), splitstep::Error>(())
//! ```

pub mod analysis;
pub mod error;
pub mod model;
pub mod operators;
pub mod report;
pub mod scenario;
pub mod spectral;
pub mod sweep;
pub mod symbol;
pub mod transfer;
pub mod verify;
pub mod winding;

pub use analysis::{analyze_spec, formula_index, AnalyzeOptions, FormulaCase, FormulaIndex, IndexReport};
pub use error::{Error, Result};
pub use model::{CoinProfile, CoinSite, ProfileKind, ShiftParams, WalkSpec};
pub use operators::{Boundary, TrigPoly, Window};
pub use scenario::Scenario;
pub use symbol::{build_symbol, Side, SymbolPoly};
