//! Parameters of the foliation pencil and of the linear pencil on the torus,
//! and the degree of the rational first integral as a function of the
//! parameter.
//!
//! A parameter `t` of the pencil corresponds to the linear foliation `dy - alpha dx`
//! on `E0 x E0` with `t = L(alpha) = (w^2 - 1) alpha + 1`. Writing
//! `alpha = alpha1 / beta1` in lowest terms, the degree is a sum of four norms.
//! Two readings of the leaf through the origin are provided:
//!
//! * [`Variant::Paper`]: `N(b) + N(a) + N(b - a) + N(b + w a)`, the leaf taken as
//!   `{(alpha1 x, beta1 x)}`;
//! * [`Variant::Corrected`]: `N(b) + N(a) + N(b - a) + N(a + w b)`, the leaf
//!   taken as `{(x, alpha x)} = {(beta1 x, alpha1 x)}`.
//!
//! They differ only in the last term. `Corrected` is the default; the extactic
//! certifier in [`crate::verifier`] is what decides between them.

use std::fmt;

use num_bigint::BigInt;

use crate::eisenstein::{EisInt, EisRat, ExtRat};
use crate::error::{Error, Result};
use crate::lattice::Subtorus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    Paper,
    #[default]
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Paper => "paper",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which pair represents the leaf of `dy - alpha dx` through the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafOrientation {
    /// `E_{alpha1, beta1}`
    AsWritten,
    /// `E_{beta1, alpha1} = {(x, alpha x)}`
    LeafOfAlpha,
}

/// `-2 - w = w^2 - 1`, the slope of `L`.
fn slope_int() -> EisInt {
    EisInt::new(-2, -1)
}

/// `L(alpha) = (w^2 - 1) alpha + 1`, with `L(inf) = inf`.
pub fn lambda_map(alpha: &ExtRat) -> ExtRat {
    match alpha {
        ExtRat::Infinity => ExtRat::Infinity,
        ExtRat::Finite(a) => {
            let num = &(&slope_int() * a.num()) + a.den();
            ExtRat::Finite(EisRat::new(num, a.den().clone()).expect("den is nonzero"))
        }
    }
}

/// Inverse of [`lambda_map`]: `alpha(t) = (t - 1) / (-2 - w)`.
pub fn alpha_of(t: &ExtRat) -> ExtRat {
    match t {
        ExtRat::Infinity => ExtRat::Infinity,
        ExtRat::Finite(t) => {
            let num = t.num() - t.den();
            ExtRat::Finite(EisRat::new(num, &slope_int() * t.den()).expect("den is nonzero"))
        }
    }
}

/// A parameter of the pencil with its torus-side data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PencilParam {
    t: ExtRat,
    alpha: ExtRat,
    alpha1: EisInt,
    beta1: EisInt,
    degenerate: bool,
}

impl PencilParam {
    pub fn from_t(t: ExtRat) -> Self {
        let alpha = alpha_of(&t);
        Self::build(t, alpha)
    }

    pub fn from_alpha(alpha: ExtRat) -> Self {
        let t = lambda_map(&alpha);
        Self::build(t, alpha)
    }

    /// From any pair `(alpha1, beta1) != (0, 0)`; common factors are removed.
    pub fn from_pair(alpha1: EisInt, beta1: EisInt) -> Result<Self> {
        if alpha1.is_zero() && beta1.is_zero() {
            return Err(Error::ZeroPair);
        }
        Ok(Self::from_alpha(ExtRat::from_pair(alpha1, beta1)?))
    }

    fn build(t: ExtRat, alpha: ExtRat) -> Self {
        let (alpha1, beta1) = alpha.as_pair();
        let degenerate = match &alpha {
            ExtRat::Infinity => true,
            ExtRat::Finite(a) => a.is_zero() || *a == EisRat::one() || *a == -EisRat::tau(),
        };
        PencilParam {
            t,
            alpha,
            alpha1,
            beta1,
            degenerate,
        }
    }

    pub fn t(&self) -> &ExtRat {
        &self.t
    }

    pub fn alpha(&self) -> &ExtRat {
        &self.alpha
    }

    pub fn alpha1(&self) -> &EisInt {
        &self.alpha1
    }

    pub fn beta1(&self) -> &EisInt {
        &self.beta1
    }

    /// `alpha in {0, 1, -w, inf}`, equivalently `t in {1, w^2, w, inf}`.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// `(a, b, c, d)` with `alpha1 = a + b w`, `beta1 = c + d w`.
    pub fn quartic_inputs(&self) -> [BigInt; 4] {
        [
            self.alpha1.a.clone(),
            self.alpha1.b.clone(),
            self.beta1.a.clone(),
            self.beta1.b.clone(),
        ]
    }

    pub fn degree(&self, variant: Variant) -> BigInt {
        degree_of_pair(&self.alpha1, &self.beta1, variant)
    }
}

/// The degree formula on an explicit pair (not necessarily reduced).
pub fn degree_of_pair(alpha1: &EisInt, beta1: &EisInt, variant: Variant) -> BigInt {
    let tau = EisInt::tau();
    let last = match variant {
        Variant::Paper => beta1 + &(&tau * alpha1),
        Variant::Corrected => alpha1 + &(&tau * beta1),
    };
    beta1.norm() + alpha1.norm() + (beta1 - alpha1).norm() + last.norm()
}

pub fn degree(t: &ExtRat, variant: Variant) -> BigInt {
    PencilParam::from_t(t.clone()).degree(variant)
}

/// Sum of intersection numbers of the leaf through the origin with the four
/// reference curves `E_{1,0}, E_{0,1}, E_{1,1}, E_{1,-w}`.
pub fn degree_via_intersections(param: &PencilParam, orientation: LeafOrientation) -> BigInt {
    let (first, second) = match orientation {
        LeafOrientation::AsWritten => (param.alpha1(), param.beta1()),
        LeafOrientation::LeafOfAlpha => (param.beta1(), param.alpha1()),
    };
    // The pair of a parameter is coprime, so no ideal norms need dividing out.
    let leaf = Subtorus::from_coprime(first, second);
    Subtorus::reference_curves()
        .iter()
        .map(|f| leaf.intersection(f))
        .sum()
}

/// `3 (a^2 - ab + b^2 - ac + c^2 + ad - bd - cd + d^2)`.
pub fn quartic_form(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> BigInt {
    let s = a * a - a * b + b * b - a * c + c * c + a * d - b * d - c * d + d * d;
    s * 3
}

/// Minimal `k >= 1` with `k Gamma(alpha) subset Gamma` for `Gamma = Z[w]`:
/// the leaf of `dy - alpha dx` through the origin closes up after `k` turns.
/// `None` for `alpha = inf`, where the leaf is the fibre `{0} x E0`.
pub fn leaf_closure_index(alpha: &ExtRat) -> Option<BigInt> {
    alpha.finite().map(EisRat::denominator_content)
}

/// Integrability of `F_t`: every `t` in `Q(w) u {inf}` is integrable. Returns the
/// leaf-closure index of `alpha(t)` alongside.
pub fn is_integrable(t: &ExtRat) -> (bool, Option<BigInt>) {
    (true, leaf_closure_index(&alpha_of(t)))
}

/// One row of a degree table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRecord {
    pub param: PencilParam,
    pub d_paper: BigInt,
    pub d_corrected: BigInt,
    pub d_intersection: BigInt,
    pub quartic_inputs: [BigInt; 4],
}

impl DegreeRecord {
    pub fn new(param: PencilParam) -> Self {
        let d_paper = param.degree(Variant::Paper);
        let d_corrected = param.degree(Variant::Corrected);
        let d_intersection = degree_via_intersections(&param, LeafOrientation::LeafOfAlpha);
        debug_assert_eq!(d_intersection, d_corrected);
        let quartic_inputs = param.quartic_inputs();
        DegreeRecord {
            param,
            d_paper,
            d_corrected,
            d_intersection,
            quartic_inputs,
        }
    }

    pub fn degree(&self, variant: Variant) -> &BigInt {
        match variant {
            Variant::Paper => &self.d_paper,
            Variant::Corrected => &self.d_corrected,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::parse_eisrat;

    fn lit(s: &str) -> ExtRat {
        parse_eisrat(s).unwrap()
    }

    #[test]
    fn lambda_at_degenerate_points() {
        assert_eq!(lambda_map(&lit("0")), lit("1"));
        assert_eq!(lambda_map(&lit("1")), lit("-1-w"));
        assert_eq!(lambda_map(&lit("-w")), lit("w"));
        assert_eq!(lambda_map(&ExtRat::Infinity), ExtRat::Infinity);
        assert_eq!(lambda_map(&lit("w")), lit("2-w"));
    }

    #[test]
    fn alpha_inverts_lambda() {
        for s in ["0", "1", "w", "-1/3+2/3*w", "7-5/2*w", "inf"] {
            let x = lit(s);
            assert_eq!(alpha_of(&lambda_map(&x)), x);
            assert_eq!(lambda_map(&alpha_of(&x)), x);
        }
    }

    #[test]
    fn degenerate_flags() {
        for t in ["1", "w", "-1-w", "inf"] {
            assert!(PencilParam::from_t(lit(t)).is_degenerate(), "{t}");
        }
        for t in ["-1", "2-w", "3+w", "0"] {
            assert!(!PencilParam::from_t(lit(t)).is_degenerate(), "{t}");
        }
    }

    #[test]
    fn pair_invariants() {
        let p = PencilParam::from_t(ExtRat::Infinity);
        assert_eq!((p.alpha1(), p.beta1()), (&EisInt::one(), &EisInt::zero()));
        let p = PencilParam::from_alpha(lit("1/3+1/3*w"));
        assert!(p.beta1().is_canonical());
        assert!(p.alpha1().gcd(p.beta1()).unwrap().is_unit());
    }

    #[test]
    fn degree_examples() {
        let at = |alpha: &str| PencilParam::from_alpha(lit(alpha));
        let p = at("0");
        assert_eq!(p.t(), &lit("1"));
        assert_eq!(
            (p.degree(Variant::Paper), p.degree(Variant::Corrected)),
            (3.into(), 3.into())
        );
        let p = at("-w");
        assert_eq!(p.t(), &lit("w"));
        assert_eq!(
            (p.degree(Variant::Paper), p.degree(Variant::Corrected)),
            (6.into(), 3.into())
        );
        let p = at("-1");
        assert_eq!(p.t(), &lit("3+w"));
        assert_eq!(
            (p.degree(Variant::Paper), p.degree(Variant::Corrected)),
            (9.into(), 9.into())
        );
        let p = at("w");
        assert_eq!(p.t(), &lit("2-w"));
        assert_eq!(
            (p.degree(Variant::Paper), p.degree(Variant::Corrected)),
            (6.into(), 9.into())
        );
    }

    #[test]
    fn intersection_route_examples() {
        let p = PencilParam::from_alpha(lit("0"));
        assert_eq!(
            degree_via_intersections(&p, LeafOrientation::AsWritten),
            3.into()
        );
        assert_eq!(
            degree_via_intersections(&p, LeafOrientation::LeafOfAlpha),
            3.into()
        );

        let p = PencilParam::from_alpha(lit("-w"));
        assert_eq!(
            degree_via_intersections(&p, LeafOrientation::LeafOfAlpha),
            3.into()
        );
        assert_eq!(
            degree_via_intersections(&p, LeafOrientation::AsWritten),
            6.into()
        );
        // The leaf coincides with E_{1,-w}: that term vanishes.
        let leaf = Subtorus::new(p.beta1().clone(), p.alpha1().clone()).unwrap();
        assert_eq!(leaf, Subtorus::reference_curves()[3]);
    }

    #[test]
    fn quartic_examples() {
        let q = |a: i64, b: i64, c: i64, d: i64| {
            quartic_form(&a.into(), &b.into(), &c.into(), &d.into())
        };
        assert_eq!(q(0, 0, 1, 0), 3.into());
        // alpha1 = beta1 = 1: 3 (1 - 0 + 0 - 1 + 1 + 0 - 0 - 0 + 0) = 3
        assert_eq!(q(1, 0, 1, 0), 3.into());
        assert_eq!(
            degree_of_pair(&EisInt::one(), &EisInt::one(), Variant::Paper),
            3.into()
        );
    }

    #[test]
    fn leaf_closure_examples() {
        assert_eq!(is_integrable(&lit("1")), (true, Some(1.into())));
        assert_eq!(leaf_closure_index(&lit("1/2")), Some(2.into()));
        assert_eq!(leaf_closure_index(&lit("1/3+1/3*w")), Some(3.into()));
        assert_eq!(leaf_closure_index(&ExtRat::Infinity), None);
    }

    #[test]
    fn leaf_closure_brute_force() {
        // smallest k with k * alpha * {1, w} integral
        for s in ["1/3+1/3*w", "2/7-3/14*w", "5/6", "1/4*w"] {
            let a = lit(s);
            let x = a.finite().unwrap();
            let k = (1..200)
                .find(|&k| {
                    let kx = x * &EisRat::from_int(k);
                    kx.is_integral() && (&kx * &EisRat::tau()).is_integral()
                })
                .unwrap();
            assert_eq!(leaf_closure_index(&a), Some(k.into()), "{s}");
        }
    }
}
