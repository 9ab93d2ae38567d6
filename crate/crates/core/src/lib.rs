//! Exact-arithmetic covering-gonality bounds for very general complete
//! intersections, plus mechanical replays of the numerical steps behind them:
//! Hilbert functions, genus and multiplicity inequalities, prime-degree
//! selection, and the induction-step feasibility systems.

pub mod dimcheck;
pub mod error;
pub mod exactnum;
pub mod genus;
pub mod gonality;
pub mod hilbert;
pub mod neffeas;
pub mod primesel;

pub use dimcheck::DimCountReport;
pub use error::{Error, Result};
pub use exactnum::{Enclosure, Integer, Rational};
pub use genus::CurveOnCI;
pub use gonality::{BoundCertificate, HypothesisCheck, NamedConstant};
pub use hilbert::CompleteIntersectionSpec;
pub use neffeas::{
    Codim2System, ConstraintCheck, ConstraintStatus, CurveClass, FeasibilityVerdict,
    InductionReport, InductionTarget, Outcome, SurfaceSystem,
};
pub use primesel::PrimeDegreeSelection;
