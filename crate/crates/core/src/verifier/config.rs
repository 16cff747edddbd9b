//! The nine lines and twelve points of the tangency configuration
//! `(x^3 - z^3)(y^3 - z^3)(x^3 - y^3) = 0`.

use std::fmt;

use crate::eisenstein::{format_eisrat, EisInt, EisRat, ExtRat};

use super::poly::Poly;

/// Point of the projective plane, normalised so that its last nonzero
/// homogeneous coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePoint {
    pub x: EisRat,
    pub y: EisRat,
    pub z: EisRat,
}

impl PlanePoint {
    pub fn affine(x: EisRat, y: EisRat) -> Self {
        PlanePoint {
            x,
            y,
            z: EisRat::one(),
        }
    }

    /// The point at infinity in direction `(x, y)`.
    pub fn at_infinity(x: EisRat, y: EisRat) -> Self {
        let (x, y) = if y.is_zero() {
            (EisRat::one(), EisRat::zero())
        } else {
            (x.checked_div(&y).expect("y is nonzero"), EisRat::one())
        };
        PlanePoint {
            x,
            y,
            z: EisRat::zero(),
        }
    }

    pub fn is_affine(&self) -> bool {
        !self.z.is_zero()
    }

    pub fn coords(&self) -> [EisRat; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &EisRat| format_eisrat(&ExtRat::Finite(v.clone()));
        write!(f, "[{}:{}:{}]", s(&self.x), s(&self.y), s(&self.z))
    }
}

/// Affine line `l(x, y) = 0` with `l` of degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub label: String,
    pub form: Poly,
}

impl Line {
    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.form.homogenize(1).eval(&p.coords()).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ConfigurationData {
    pub lines: Vec<Line>,
    pub points: Vec<PlanePoint>,
    /// Fixed points of multiplication by `w` on `C / Z[w]`.
    pub torus_fixed_points: [EisRat; 3],
}

/// `1, w, w^2`.
pub fn cube_roots() -> [EisRat; 3] {
    [EisRat::one(), EisRat::tau(), EisInt::new(-1, -1).into()]
}

fn root_name(i: usize) -> &'static str {
    ["1", "w", "w^2"][i]
}

impl ConfigurationData {
    pub fn new() -> Self {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let roots = cube_roots();
        let mut lines = Vec::with_capacity(9);
        for (i, z) in roots.iter().enumerate() {
            lines.push(Line {
                label: format!("x = {}", root_name(i)),
                form: &x - &Poly::constant(2, z.clone()),
            });
        }
        for (i, z) in roots.iter().enumerate() {
            lines.push(Line {
                label: format!("y = {}", root_name(i)),
                form: &y - &Poly::constant(2, z.clone()),
            });
        }
        for (i, z) in roots.iter().enumerate() {
            lines.push(Line {
                label: format!("x = {} y", root_name(i)),
                form: &x - &y.scale(z),
            });
        }
        let mut points = Vec::with_capacity(12);
        for zx in &roots {
            for zy in &roots {
                points.push(PlanePoint::affine(zx.clone(), zy.clone()));
            }
        }
        points.push(PlanePoint::affine(EisRat::zero(), EisRat::zero()));
        points.push(PlanePoint::at_infinity(EisRat::one(), EisRat::zero()));
        points.push(PlanePoint::at_infinity(EisRat::zero(), EisRat::one()));
        let third = |a: i64, b: i64| {
            EisRat::new(EisInt::new(a, b), EisInt::from_int(3)).expect("3 is nonzero")
        };
        ConfigurationData {
            lines,
            points,
            torus_fixed_points: [EisRat::zero(), third(2, 1), third(1, 2)],
        }
    }

    /// `incidence[i][j]` is true when point `j` lies on line `i`.
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        self.lines
            .iter()
            .map(|l| self.points.iter().map(|p| l.contains(p)).collect())
            .collect()
    }

    /// Product of the three lines through each point, in point order. These
    /// cubics span a pencil-closed family of invariant curves of the foliation.
    pub fn concurrent_cubics(&self) -> Vec<Poly> {
        let inc = self.incidence();
        (0..self.points.len())
            .map(|j| {
                self.lines
                    .iter()
                    .zip(&inc)
                    .filter(|(_, row)| row[j])
                    .fold(Poly::one(2), |acc, (l, _)| &acc * &l.form)
            })
            .collect()
    }
}

impl Default for ConfigurationData {
    fn default() -> Self {
        ConfigurationData::new()
    }
}
