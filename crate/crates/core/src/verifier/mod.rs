//! Exact polynomial checks on the foliation side of the pencil.

pub mod config;
pub mod extactic;
pub mod field;
pub mod geometry;
pub mod modp;
pub mod poly;

pub use config::{ConfigurationData, Line, PlanePoint};
pub use extactic::{extactic_certifier, minimal_degree, Certificate, CertifierConfig, Verdict};
pub use field::{reference_field, Foliation, InfinityChart, VectorField};
pub use geometry::{
    certify_line_invariance, check_line_invariance, degenerate_first_integral, singular_points,
    CubicIntegral, SingularKind, SingularPoint, SingularReport,
};
pub use poly::Poly;
