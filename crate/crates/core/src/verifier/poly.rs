use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::eisenstein::{format_eisrat, EisRat, ExtRat};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over `Q(w)`.
///
/// No zero coefficient is ever stored. Terms are ordered lexicographically on
/// exponent vectors, which is the monomial order used by [`Poly::div_rem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, EisRat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: EisRat) -> Self {
        Poly::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, EisRat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(nvars, e, EisRat::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: EisRat) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, EisRat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &EisRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> EisRat {
        self.terms.get(exps).cloned().unwrap_or_else(EisRat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Homogeneous component of total degree `k`.
    pub fn component(&self, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: EisRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &EisRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[i] -= 1;
            out.add_term(e, c * &EisRat::from_int(m[i]));
        }
        out
    }

    pub fn eval(&self, point: &[EisRat]) -> EisRat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = EisRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images share one ring.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images[0].nvars;
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Degree-`deg` homogenisation in one extra trailing variable.
    pub fn homogenize(&self, deg: u32) -> Poly {
        let mut out = Poly::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let total: u32 = m.iter().sum();
            assert!(total <= deg, "homogenisation degree too small");
            let mut e = m.clone();
            e.push(deg - total);
            out.add_term(e, c.clone());
        }
        out
    }

    fn leading(&self) -> Option<(&Monomial, &EisRat)> {
        self.terms.iter().next_back()
    }

    /// Division by one polynomial in lex order: `self = q * g + r` with no
    /// term of `r` divisible by the leading term of `g`. Since a single
    /// polynomial is a Groebner basis of the ideal it generates, `r = 0` iff
    /// `g` divides `self`.
    pub fn div_rem(&self, g: &Poly) -> (Poly, Poly) {
        let (lm, lc) = g.leading().expect("division by the zero polynomial");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut p = self.clone();
        let mut q = Poly::zero(self.nvars);
        let mut r = Poly::zero(self.nvars);
        while let Some((m, c)) = p.leading() {
            let (m, c) = (m.clone(), c.clone());
            if m.iter().zip(&lm).all(|(a, b)| a >= b) {
                let e: Monomial = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
                let coef = c.checked_div(&lc).expect("leading coefficient is nonzero");
                let t = Poly::monomial(self.nvars, e, coef);
                p = &p - &(&t * g);
                q = &q + &t;
            } else {
                p.terms.remove(&m);
                r.add_term(m, c);
            }
        }
        (q, r)
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.div_rem(self).1.is_zero()
    }

    /// Exact quotient, `None` if `g` does not divide `self`.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(g);
        r.is_zero().then_some(q)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

crate::eisenstein::forward_owned!(Poly, Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        const NAMES: [&str; 3] = ["x", "y", "z"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = NAMES.get(i).copied().unwrap_or("v");
                        if e == 1 {
                            name.to_string()
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
                format!(
                    "({})*{}",
                    format_eisrat(&ExtRat::Finite(c.clone())),
                    if mono.is_empty() {
                        "1".to_string()
                    } else {
                        mono.join("*")
                    }
                )
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(2, n.into())
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = &(&x() + &y()) * &(&x() - &y());
        let q = &x().pow(2) - &y().pow(2);
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(Poly::zero(2).degree(), None);
    }

    #[test]
    fn division_detects_factors() {
        let f = &(&x().pow(3) - &c(1)) * &(&y() - &x());
        let l = &x() - &c(1);
        assert!(l.divides(&f));
        assert!(!(&y() - &c(2)).divides(&f));
        let q = f.exact_div(&(&y() - &x())).unwrap();
        assert_eq!(q, &x().pow(3) - &c(1));
    }

    #[test]
    fn partials_and_eval() {
        let f = &(&x().pow(2) * &y()) + &y().pow(3);
        assert_eq!(f.partial(0), &c(2) * &(&x() * &y()));
        assert_eq!(f.partial(1), &x().pow(2) + &(&c(3) * &y().pow(2)));
        let v = f.eval(&[EisRat::from_int(2), EisRat::tau()]);
        // 4 w + w^3 = 4 w + 1
        assert_eq!(v, crate::eisenstein::EisInt::new(1, 4).into());
    }

    #[test]
    fn homogenize_and_dehomogenize() {
        let f = &(&x().pow(3) - &c(1)) * &(&x() + &y().pow(2));
        let h = f.homogenize(5);
        assert!(h.terms().all(|(m, _)| m.iter().sum::<u32>() == 5));
        let back = h.compose(&[x(), y(), c(1)]);
        assert_eq!(back, f);
    }
}
