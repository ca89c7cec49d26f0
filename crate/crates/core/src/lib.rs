//! Gödel universe as a matrix Lie group with a left-invariant Lorentz
//! metric: closed-form timelike and isotropic geodesics obtained from a
//! first-order adjoint system, an independent structure-constant-driven
//! integrator to cross-check them, curvature and field-equation
//! verification, chart transforms, the causal horizon, and the audits that
//! rule out closed causal geodesics.

pub mod analysis;
pub mod chart;
pub mod curvature;
pub mod extremal;
pub mod group;
pub mod metric;
pub mod oracle;
pub mod verify;

pub use chart::Chart;
pub use extremal::{AdjointState, GeodesicClass, GeodesicParams, SampledCurve};
pub use group::{AlgebraVector, Frame, GroupElement};
pub use metric::{CausalClass, CausalKind, ChartPoint, MetricTensor};
