use crate::eisenstein::{EisRat, ExtRat};
use crate::error::{Error, Result};

use super::poly::Poly;

/// Polynomial vector field `A d/dx + B d/dy` on the affine plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub a: Poly,
    pub b: Poly,
}

impl VectorField {
    pub fn new(a: Poly, b: Poly) -> Self {
        assert!(a.nvars() == 2 && b.nvars() == 2);
        VectorField { a, b }
    }

    /// Lie derivative `X(f) = A f_x + B f_y`.
    pub fn lie(&self, f: &Poly) -> Poly {
        &(&self.a * &f.partial(0)) + &(&self.b * &f.partial(1))
    }

    pub fn degree(&self) -> u32 {
        self.a
            .degree()
            .unwrap_or(0)
            .max(self.b.degree().unwrap_or(0))
    }

    /// Jacobian `[[A_x, A_y], [B_x, B_y]]` at a point.
    pub fn jacobian_at(&self, point: &[EisRat; 2]) -> [[EisRat; 2]; 2] {
        let ev = |p: &Poly, i: usize| p.partial(i).eval(point);
        [
            [ev(&self.a, 0), ev(&self.a, 1)],
            [ev(&self.b, 0), ev(&self.b, 1)],
        ]
    }

    pub fn vanishes_at(&self, point: &[EisRat; 2]) -> bool {
        self.a.eval(point).is_zero() && self.b.eval(point).is_zero()
    }

    /// The same foliation in the chart around a point at infinity: `x = 1/u,
    /// y = v/u` for [`InfinityChart::X`] (the point `[1:0:0]`), `x = v/u,
    /// y = 1/u` for [`InfinityChart::Y`] (`[0:1:0]`). Coordinates are `(u, v)`;
    /// the returned field is divided by the largest power of `u` it contains.
    pub fn chart_at_infinity(&self, chart: InfinityChart) -> VectorField {
        let m = self.degree();
        let u = Poly::var(2, 0);
        let v = Poly::var(2, 1);
        let one = Poly::one(2);
        let ha = self.a.homogenize(m);
        let hb = self.b.homogenize(m);
        // Pull back the 1-form A dy - B dx and read off the field (G, -F) of
        // F du + G dv.
        let (f, g) = match chart {
            InfinityChart::X => {
                // x = 1/u, y = v/u: form ~ (B~ - v A~) du + u A~ dv
                let at = ha.compose(&[one.clone(), v.clone(), u.clone()]);
                let bt = hb.compose(&[one, v.clone(), u.clone()]);
                (&bt - &(&v * &at), &u * &at)
            }
            InfinityChart::Y => {
                // x = v/u, y = 1/u: form ~ (v B~ - A~) du - u B~ dv
                let at = ha.compose(&[v.clone(), one.clone(), u.clone()]);
                let bt = hb.compose(&[v.clone(), one, u.clone()]);
                (&(&v * &bt) - &at, -(&u * &bt))
            }
        };
        let (mut a, mut b) = (g, -f);
        while !a.is_zero() || !b.is_zero() {
            match (a.exact_div(&u), b.exact_div(&u)) {
                (Some(qa), Some(qb)) => {
                    a = qa;
                    b = qb;
                }
                _ => break,
            }
        }
        VectorField::new(a, b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfinityChart {
    /// Around `[1:0:0]`.
    X,
    /// Around `[0:1:0]`.
    Y,
}

/// Member `F_t` of the pencil, given by the 1-form
/// `omega - t eta` with
/// `omega = (x^3 - 1) x dy - (y^3 - 1) y dx` and
/// `eta = (x^3 - 1) y^2 dy - (y^3 - 1) x^2 dx`; `t = inf` is `eta` alone.
///
/// The vector field is `A = (x^3 - 1)(x - t y^2)`, `B = (y^3 - 1)(y - t x^2)`.
/// With this sign the four parameters whose singular set collapses onto the
/// twelve points of the configuration are `t in {1, w, w^2, inf}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foliation {
    t: ExtRat,
    field: VectorField,
}

impl Foliation {
    pub fn new(t: ExtRat) -> Self {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let one = Poly::one(2);
        let cx = &x.pow(3) - &one;
        let cy = &y.pow(3) - &one;
        let (ca, cb) = match &t {
            ExtRat::Infinity => (y.pow(2), x.pow(2)),
            ExtRat::Finite(t) => {
                let mt = -t;
                (&x + &y.pow(2).scale(&mt), &y + &x.pow(2).scale(&mt))
            }
        };
        let field = VectorField::new(&cx * &ca, &cy * &cb);
        let f = Foliation { t, field };
        debug_assert!(f.form_annihilates_field());
        f
    }

    pub fn t(&self) -> &ExtRat {
        &self.t
    }

    pub fn field(&self) -> &VectorField {
        &self.field
    }

    /// Coefficients `(P, Q)` of the defining form `P dx + Q dy`.
    pub fn form(&self) -> (Poly, Poly) {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let one = Poly::one(2);
        let cx = &x.pow(3) - &one;
        let cy = &y.pow(3) - &one;
        let omega = (-(&cy * &y), &cx * &x);
        let eta = (-(&cy * &x.pow(2)), &cx * &y.pow(2));
        match &self.t {
            ExtRat::Infinity => eta,
            ExtRat::Finite(t) => {
                let mt = -t;
                (&omega.0 + &eta.0.scale(&mt), &omega.1 + &eta.1.scale(&mt))
            }
        }
    }

    /// `omega_t(X_t) = P A + Q B`, identically zero.
    pub fn form_annihilates_field(&self) -> bool {
        let (p, q) = self.form();
        (&(&p * &self.field.a) + &(&q * &self.field.b)).is_zero()
    }
}

/// The reference pencil `alpha x dy - y dx` with `alpha = p / q`, as the field
/// `p x d/dx + q y d/dy`; `q = 0` gives `x d/dx` (the form `x dy`).
pub fn reference_field(p: i64, q: i64) -> Result<VectorField> {
    if p == 0 && q == 0 {
        return Err(Error::invalid("p and q cannot both vanish"));
    }
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    Ok(VectorField::new(
        x.scale(&EisRat::from_int(p)),
        y.scale(&EisRat::from_int(q)),
    ))
}
