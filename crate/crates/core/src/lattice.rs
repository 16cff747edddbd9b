//! Integer-lattice side of the torus `E0 x E0`, `E0 = C / Z[w]`.
//!
//! Subtori `E_{a,b} = {(a x, b x)}` are intersected two ways: through the norm
//! of a 2x2 determinant over `Z[w]`, and through the determinant of the 4x4
//! integer matrix that describes the same intersection as a lattice index.
//! Also counts elements and ideals by norm, `H(n)`, and Dedekind zeta sums.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::eisenstein::EisInt;
use crate::error::{Error, Result};

/// The elliptic curve `E_{alpha,beta}`, image of `x -> (alpha x, beta x)`.
///
/// Stored with `gcd(alpha, beta) = 1` and the first nonzero entry a canonical
/// associate. Pairs that differ by a common factor give the same curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subtorus {
    alpha: EisInt,
    beta: EisInt,
}

impl Subtorus {
    pub fn new(alpha: EisInt, beta: EisInt) -> Result<Self> {
        let g = alpha.gcd(&beta).map_err(|_| Error::ZeroPair)?;
        let mut alpha = alpha.checked_div(&g).expect("gcd divides");
        let mut beta = beta.checked_div(&g).expect("gcd divides");
        let lead = if alpha.is_zero() { &beta } else { &alpha };
        let (_, u) = lead.canonical_associate();
        alpha = &u * &alpha;
        beta = &u * &beta;
        Ok(Subtorus { alpha, beta })
    }

    /// For a pair already known to be coprime: only the unit is normalised.
    pub(crate) fn from_coprime(alpha: &EisInt, beta: &EisInt) -> Self {
        debug_assert!(alpha.gcd(beta).is_ok_and(|g| g.is_unit()));
        let lead = if alpha.is_zero() { beta } else { alpha };
        let (_, u) = lead.canonical_associate();
        Subtorus {
            alpha: &u * alpha,
            beta: &u * beta,
        }
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        Subtorus::new(a.into(), b.into())
    }

    pub fn alpha(&self) -> &EisInt {
        &self.alpha
    }

    pub fn beta(&self) -> &EisInt {
        &self.beta
    }

    /// The four reference curves `E_{1,0}, E_{0,1}, E_{1,1}, E_{1,-w}`.
    pub fn reference_curves() -> &'static [Subtorus; 4] {
        static CURVES: OnceLock<[Subtorus; 4]> = OnceLock::new();
        CURVES.get_or_init(|| {
            [
                Subtorus::from_ints((1, 0), (0, 0)).unwrap(),
                Subtorus::from_ints((0, 0), (1, 0)).unwrap(),
                Subtorus::from_ints((1, 0), (1, 0)).unwrap(),
                Subtorus::from_ints((1, 0), (0, -1)).unwrap(),
            ]
        })
    }

    pub fn intersection(&self, other: &Subtorus) -> BigInt {
        (&self.alpha * &other.beta - &self.beta * &other.alpha).norm()
    }
}

impl fmt::Display for Subtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// Matrix of multiplication by `a + b w` on `Z^2` in the basis `(1, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat2(pub [[BigInt; 2]; 2]);

/// A 4x4 exact integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat4(pub [[BigInt; 4]; 4]);

impl IntMat2 {
    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn mul(&self, rhs: &IntMat2) -> IntMat2 {
        let (l, r) = (&self.0, &rhs.0);
        let cell = |i: usize, j: usize| &l[i][0] * &r[0][j] + &l[i][1] * &r[1][j];
        IntMat2([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }

    pub fn add(&self, rhs: &IntMat2) -> IntMat2 {
        let (l, r) = (&self.0, &rhs.0);
        IntMat2([
            [&l[0][0] + &r[0][0], &l[0][1] + &r[0][1]],
            [&l[1][0] + &r[1][0], &l[1][1] + &r[1][1]],
        ])
    }

    fn neg(&self) -> IntMat2 {
        IntMat2(self.0.clone().map(|row| row.map(|x| -x)))
    }
}

impl IntMat4 {
    /// Block matrix `[[top_left, top_right], [bottom_left, bottom_right]]`.
    pub fn from_blocks(tl: &IntMat2, tr: &IntMat2, bl: &IntMat2, br: &IntMat2) -> IntMat4 {
        let mut m: [[BigInt; 4]; 4] = Default::default();
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = tl.0[i][j].clone();
                m[i][j + 2] = tr.0[i][j].clone();
                m[i + 2][j] = bl.0[i][j].clone();
                m[i + 2][j + 2] = br.0[i][j].clone();
            }
        }
        IntMat4(m)
    }

    /// Fraction-free Gaussian elimination (Bareiss); every division is exact.
    pub fn det(&self) -> BigInt {
        let mut m = self.0.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::from(1);
        for k in 0..4 {
            if m[k][k].is_zero() {
                match (k + 1..4).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..4 {
                for j in k + 1..4 {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        if sign < 0 {
            -m[3][3].clone()
        } else {
            m[3][3].clone()
        }
    }
}

pub fn mat_of(x: &EisInt) -> IntMat2 {
    IntMat2([[x.a.clone(), -x.b.clone()], [x.b.clone(), &x.a - &x.b]])
}

/// `|det [[M_alpha, -M_gamma], [M_beta, -M_delta]]|`: the index of the lattice
/// map `(x, y) -> (alpha x - gamma y, beta x - delta y)` on `(R^2 / Z^2)^2`,
/// i.e. the number of points of `E_A` meeting `E_B`.
pub fn intersection_oracle(a: &Subtorus, b: &Subtorus) -> BigInt {
    oracle_matrix(a, b).det().abs()
}

pub fn oracle_matrix(a: &Subtorus, b: &Subtorus) -> IntMat4 {
    IntMat4::from_blocks(
        &mat_of(a.alpha()),
        &mat_of(b.alpha()).neg(),
        &mat_of(a.beta()),
        &mat_of(b.beta()).neg(),
    )
}

/// Intersection number of `E_{alpha,beta}` and `E_{gamma,delta}`:
/// `N(alpha delta - beta gamma) / (N(alpha, beta) N(gamma, delta))`.
///
/// The pairs need not be coprime; the ideal norms in the denominator are the
/// norms of the gcds. The quotient is always an integer.
pub fn intersection_number(
    first: (&EisInt, &EisInt),
    second: (&EisInt, &EisInt),
) -> Result<BigInt> {
    let (alpha, beta) = first;
    let (gamma, delta) = second;
    let g1 = alpha.gcd(beta).map_err(|_| Error::ZeroPair)?;
    let g2 = gamma.gcd(delta).map_err(|_| Error::ZeroPair)?;
    let det = alpha * delta - beta * gamma;
    let (q, r) = det.norm().div_rem(&(g1.norm() * g2.norm()));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `N(alpha gamma - beta delta)`, the entry order printed in the coprime
/// specialisation. Kept only so the two orders can be compared.
pub fn intersection_as_printed(first: &Subtorus, second: &Subtorus) -> BigInt {
    (first.alpha() * second.alpha() - first.beta() * second.beta()).norm()
}

/// Number of elements of norm exactly `k` and number of (principal) ideals of
/// norm `k`, by scanning `|a|, |b| <= ceil(2 sqrt(k / 3))`.
pub fn count_norm(k: u64) -> Result<(u64, u64)> {
    if k == 0 {
        return Err(Error::invalid(
            "the zero ideal is excluded (k must be >= 1)",
        ));
    }
    let bound = coordinate_bound(k);
    let k = k as i128;
    let mut elements = 0u64;
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a * a - a * b + b * b == k {
                elements += 1;
            }
        }
    }
    debug_assert_eq!(elements % 6, 0);
    Ok((elements, elements / 6))
}

/// `ceil(2 sqrt(k / 3))`, the largest coordinate an element of norm `<= k` can have.
fn coordinate_bound(k: u64) -> i128 {
    // smallest m with 3 m^2 >= 4 k
    let target = 4 * k as u128;
    let mut m = ((target as f64 / 3.0).sqrt()) as u128;
    while 3 * m * m < target {
        m += 1;
    }
    while m > 0 && 3 * (m - 1) * (m - 1) >= target {
        m -= 1;
    }
    m as i128
}

/// Ideal counts `ideals(k)` for `k = 0..=limit` (index 0 unused), from one scan
/// of the lattice.
pub fn ideal_counts(limit: u64) -> Vec<u64> {
    let mut counts = vec![0u64; limit as usize + 1];
    let bound = coordinate_bound(limit);
    for a in -bound..=bound {
        for b in -bound..=bound {
            let n = a * a - a * b + b * b;
            if n >= 1 && n <= limit as i128 {
                counts[n as usize] += 1;
            }
        }
    }
    for c in counts.iter_mut() {
        *c /= 6;
    }
    counts
}

/// `H(n)`: number of nonzero ideals of norm at most `n`.
pub fn ideals_up_to(n: u64) -> u64 {
    ideal_counts(n).iter().sum()
}

/// Partial Dedekind zeta sum `sum_{k <= terms} ideals(k) / k^s` for `Q(w)`.
pub fn zeta_k(s: f64, terms: u64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::invalid("zeta_K needs s > 1"));
    }
    if terms == 0 {
        return Err(Error::invalid("terms must be >= 1"));
    }
    let counts = ideal_counts(terms);
    // Small terms last.
    Ok((1..=terms as usize)
        .rev()
        .filter(|&k| counts[k] != 0)
        .map(|k| counts[k] as f64 / (k as f64).powf(s))
        .sum())
}

/// `zeta(s) * L(s, chi_{-3})` from two ordinary Dirichlet series, the product
/// formula for the Dedekind zeta function of `Q(w)`.
pub fn zeta_product_oracle(s: f64, terms: u64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::invalid("the oracle needs s > 1"));
    }
    let m = terms.max(3) as f64;
    let mut zeta: f64 = (1..=terms.max(3)).rev().map(|n| (n as f64).powf(-s)).sum();
    // Euler-Maclaurin tail for sum_{n > m} n^-s.
    zeta += m.powf(1.0 - s) / (s - 1.0) - 0.5 * m.powf(-s) + s / 12.0 * m.powf(-s - 1.0);

    let periods = terms.max(3) / 3;
    let l: f64 = (0..periods)
        .rev()
        .map(|j| {
            let base = 3 * j;
            ((base + 1) as f64).powf(-s) - ((base + 2) as f64).powf(-s)
        })
        .sum();
    Ok(zeta * l)
}

/// `pi / (3 sqrt 3)`: area of `{N <= 1}` divided by the covolume `sqrt(3)/2`
/// and by the six units, the limit of `H(n) / n`.
pub fn ideal_density() -> f64 {
    std::f64::consts::PI / (3.0 * 3f64.sqrt())
}
