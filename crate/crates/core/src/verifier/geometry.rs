//! Invariant lines, singular points and degree-3 first integrals of the pencil.
//!
//! The extra singular points are located by restricting the field to each line
//! of the configuration: on `x = z` the first component vanishes and the
//! second leaves `y = t z^2`; on `y = z` symmetrically `x = t z^2`; on
//! `x = z y` both components agree and leave `y = z / t`, `x = z^2 / t`, which
//! runs off to the point at infinity `[z:1:0]` when `t = 0`. Together with the
//! twelve configuration points these are 21 nondegenerate singularities, the
//! total Milnor number of a degree-4 foliation, so no other singularity exists.

use crate::eisenstein::{EisRat, ExtRat};

use super::config::{cube_roots, ConfigurationData, PlanePoint};
use super::field::{Foliation, InfinityChart, VectorField};
use super::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularKind {
    /// Not a singular point at all.
    Regular,
    /// Linear part a nonzero multiple of the identity.
    Radial,
    /// Eigenvalue ratio `-3`, i.e. `3 tr^2 + 4 det = 0` with `tr != 0`.
    MinusThreeToOne,
    /// Singular, some other linear part.
    Other,
}

impl SingularKind {
    pub fn name(self) -> &'static str {
        match self {
            SingularKind::Regular => "regular",
            SingularKind::Radial => "radial",
            SingularKind::MinusThreeToOne => "(-3:1)",
            SingularKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: PlanePoint,
    /// Jacobian in the chart containing the point.
    pub jacobian: [[EisRat; 2]; 2],
    pub kind: SingularKind,
}

#[derive(Clone, Debug)]
pub struct SingularReport {
    pub t: ExtRat,
    pub degenerate: bool,
    pub config: Vec<SingularPoint>,
    pub extra: Vec<SingularPoint>,
}

impl SingularReport {
    pub fn total(&self) -> usize {
        self.config.len() + self.extra.len()
    }

    /// Twelve radial configuration points and nine `(-3:1)` points.
    pub fn matches_generic_structure(&self) -> bool {
        !self.degenerate
            && self.config.len() == 12
            && self.config.iter().all(|s| s.kind == SingularKind::Radial)
            && self.extra.len() == 9
            && self
                .extra
                .iter()
                .all(|s| s.kind == SingularKind::MinusThreeToOne)
    }
}

/// `t` in `{1, w, w^2, inf}`.
pub fn is_degenerate_t(t: &ExtRat) -> bool {
    match t {
        ExtRat::Infinity => true,
        ExtRat::Finite(t) => cube_roots().contains(t),
    }
}

/// The field in a chart containing `p`, and the coordinates of `p` there.
fn local_field(field: &VectorField, p: &PlanePoint) -> (VectorField, [EisRat; 2]) {
    if p.is_affine() {
        (field.clone(), [p.x.clone(), p.y.clone()])
    } else if p.y.is_zero() {
        (
            field.chart_at_infinity(InfinityChart::X),
            [EisRat::zero(), EisRat::zero()],
        )
    } else {
        (
            field.chart_at_infinity(InfinityChart::Y),
            [EisRat::zero(), p.x.clone()],
        )
    }
}

pub fn classify(jacobian: &[[EisRat; 2]; 2]) -> SingularKind {
    let [[a, b], [c, d]] = jacobian;
    let tr = a + d;
    let det = &(a * d) - &(b * c);
    if b.is_zero() && c.is_zero() && a == d && !a.is_zero() {
        SingularKind::Radial
    } else if !tr.is_zero()
        && (&(&(&tr * &tr) * &EisRat::from_int(3)) + &(&det * &EisRat::from_int(4))).is_zero()
    {
        SingularKind::MinusThreeToOne
    } else {
        SingularKind::Other
    }
}

/// Examines `p` as a singular point of `field`.
pub fn examine_point(field: &VectorField, p: &PlanePoint) -> SingularPoint {
    let (local, at) = local_field(field, p);
    let jacobian = local.jacobian_at(&at);
    let kind = if local.vanishes_at(&at) {
        classify(&jacobian)
    } else {
        SingularKind::Regular
    };
    SingularPoint {
        point: p.clone(),
        jacobian,
        kind,
    }
}

/// Closed-form locations of the nine non-radial singular points.
pub fn extra_point_locations(t: &EisRat) -> Vec<PlanePoint> {
    let roots = cube_roots();
    let mut out = Vec::with_capacity(9);
    for z in &roots {
        out.push(PlanePoint::affine(z.clone(), t * &(z * z)));
    }
    for z in &roots {
        out.push(PlanePoint::affine(t * &(z * z), z.clone()));
    }
    for z in &roots {
        out.push(match t.recip() {
            Ok(inv) => PlanePoint::affine(&(z * z) * &inv, z * &inv),
            Err(_) => PlanePoint::at_infinity(z.clone(), EisRat::one()),
        });
    }
    out
}

/// Singular points on the configuration and, for nondegenerate `t`, the nine
/// closed-form extra points, each with its type.
pub fn singular_points(f: &Foliation) -> SingularReport {
    let cfg = ConfigurationData::new();
    let field = f.field();
    let config = cfg.points.iter().map(|p| examine_point(field, p)).collect();
    let degenerate = is_degenerate_t(f.t());
    let extra = match (degenerate, f.t()) {
        (false, ExtRat::Finite(t)) => extra_point_locations(t)
            .iter()
            .map(|p| examine_point(field, p))
            .collect(),
        _ => Vec::new(),
    };
    SingularReport {
        t: f.t().clone(),
        degenerate,
        config,
        extra,
    }
}

/// For each configuration line, whether `l` divides `X(l)`.
pub fn check_line_invariance(f: &Foliation) -> Vec<(String, bool)> {
    ConfigurationData::new()
        .lines
        .iter()
        .map(|l| (l.label.clone(), l.form.divides(&f.field().lie(&l.form))))
        .collect()
}

/// Six parameters used to certify invariance for every `t`: the remainder of
/// `X_t(l)` modulo `l` is affine in `t`, so agreement at two values already
/// forces it to vanish identically.
pub fn invariance_samples() -> Vec<ExtRat> {
    ["0", "1", "-1", "2-w", "3+w", "-1/3+2/3*w"]
        .iter()
        .map(|s| crate::eisenstein::parse_eisrat(s).expect("valid literal"))
        .collect()
}

/// Runs [`check_line_invariance`] over [`invariance_samples`].
pub fn certify_line_invariance() -> Vec<(ExtRat, Vec<(String, bool)>)> {
    invariance_samples()
        .into_iter()
        .map(|t| {
            let verdicts = check_line_invariance(&Foliation::new(t.clone()));
            (t, verdicts)
        })
        .collect()
}

/// A degree-3 rational first integral `C_i / C_j` built from the concurrent
/// cubics of the configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicIntegral {
    /// Indices into the configuration points; cubic `k` is the product of the
    /// three lines through point `k`.
    pub i: usize,
    pub j: usize,
    pub numerator: Poly,
    pub denominator: Poly,
    /// `X(C_i) C_j - C_i X(C_j)`, identically zero.
    pub certificate: Poly,
}

/// Searches the pairs of concurrent cubics for a first integral of `f`.
pub fn degenerate_first_integral(f: &Foliation) -> Option<CubicIntegral> {
    let cubics = ConfigurationData::new().concurrent_cubics();
    let lie: Vec<Poly> = cubics.iter().map(|c| f.field().lie(c)).collect();
    for i in 0..cubics.len() {
        for j in i + 1..cubics.len() {
            let cert = &(&lie[i] * &cubics[j]) - &(&cubics[i] * &lie[j]);
            if cert.is_zero() {
                return Some(CubicIntegral {
                    i,
                    j,
                    numerator: cubics[i].clone(),
                    denominator: cubics[j].clone(),
                    certificate: cert,
                });
            }
        }
    }
    None
}
