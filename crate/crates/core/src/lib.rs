//! Ext of `F2[a, u]` and `F2[a, u^{±1}]` over the truncated Hopf algebras `F2[x]/x^{2^n}`,
//! their inverse limit, and the x-adic spectral sequence computing them.

pub mod charts;
pub mod cobar;
pub mod f2linalg;
pub mod grading;
pub mod hopf;
pub mod koszul;
pub mod xadic;

pub use charts::{ChartArrow, ChartDot, ChartError, ChartFormat};
pub use cobar::{CobarError, CobarModel, CochainModel, ExtGroup, LimitReport};
pub use f2linalg::{F2Matrix, F2Vector, LinalgError};
pub use grading::{binom_mod2, CobarMonomial, F2Element, ParseError, RO2Degree, Tridegree, YMonomial};
pub use hopf::{HopfError, NegativeConeClass, TruncationLevel};
pub use koszul::KoszulModel;
pub use xadic::{EinftyMonomial, XadicError};
