//! Probabilistic certifier for the minimal degree of a rational first integral.
//!
//! For monomials `v_1, ..., v_N` of degree `<= d` (`N = (d+1)(d+2)/2`) the
//! extactic matrix has entries `X^k(v_i)`, `k = 0..N-1`. Its determinant vanishes
//! identically exactly when the foliation has a rational first integral of
//! degree `<= d`. The determinant is evaluated at random points over prime
//! fields `F_p`, `p = 1 (mod 3)`. One nonzero value proves there is no first
//! integral of degree `<= d`; zeros everywhere are consistent with one
//! (Schwartz-Zippel).
//!
//! Derivatives along the field are read off the Taylor jet of the integral
//! curve through the point: `X^k(f)(q) = k! [s^k] f(phi(s))` where
//! `phi' = X(phi)`, `phi(0) = q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::field::VectorField;
use super::modp::PrimeField;

/// Prime size used by the certifier.
pub const PRIME_BITS: u32 = 61;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Some extactic value is nonzero: no first integral of degree `<= d`.
    NoIntegralLeq,
    /// All sampled values vanish.
    ConsistentWith,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::NoIntegralLeq => "NO_INTEGRAL_LEQ_d",
            Verdict::ConsistentWith => "CONSISTENT_WITH_d",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifierConfig {
    /// Points per prime.
    pub trials: usize,
    pub primes: usize,
    pub seed: u64,
}

impl Default for CertifierConfig {
    fn default() -> Self {
        CertifierConfig {
            trials: 3,
            primes: 2,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub d: u32,
    pub verdict: Verdict,
    /// Primes actually used, in order.
    pub primes: Vec<u64>,
    /// Points evaluated in total, `trials * primes`.
    pub points: usize,
    /// Points where the determinant did not vanish.
    pub nonzero: usize,
    pub seed: u64,
}

/// The field with coefficients reduced into `F_p`, as `(coef, i, j)` triples.
#[derive(Clone, Debug)]
pub struct ReducedField {
    fp: PrimeField,
    a: Vec<(u64, u32, u32)>,
    b: Vec<(u64, u32, u32)>,
}

impl ReducedField {
    pub fn new(field: &VectorField, fp: PrimeField) -> Result<Self> {
        let reduce = |p: &super::poly::Poly| -> Result<Vec<(u64, u32, u32)>> {
            p.terms()
                .map(|(m, c)| {
                    let v = fp.from_eisrat(c).ok_or(Error::BadPrime(fp.modulus()))?;
                    Ok((v, m[0], m[1]))
                })
                .filter(|r| !matches!(r, Ok((0, _, _))))
                .collect()
        };
        Ok(ReducedField {
            fp,
            a: reduce(&field.a)?,
            b: reduce(&field.b)?,
        })
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.fp
    }

    /// Taylor coefficients of the integral curve through `(x0, y0)`, `len` terms.
    pub fn solution_jet(&self, x0: u64, y0: u64, len: usize) -> (Vec<u64>, Vec<u64>) {
        let f = &self.fp;
        let mut xs = vec![0u64; len];
        let mut ys = vec![0u64; len];
        xs[0] = x0;
        ys[0] = y0;
        let max_i = self.a.iter().chain(&self.b).map(|t| t.1).max().unwrap_or(0);
        let max_j = self.a.iter().chain(&self.b).map(|t| t.2).max().unwrap_or(0);
        for k in 0..len - 1 {
            // Coefficient k of A(x(s), y(s)) only needs x, y up to order k.
            let n = k + 1;
            let xp = powers(f, &xs[..n], max_i);
            let yp = powers(f, &ys[..n], max_j);
            let ak = coeff_of(f, &self.a, &xp, &yp, k);
            let bk = coeff_of(f, &self.b, &xp, &yp, k);
            let inv = f.inv((k + 1) as u64 % f.modulus()).expect("k + 1 < p");
            xs[k + 1] = f.mul(ak, inv);
            ys[k + 1] = f.mul(bk, inv);
        }
        (xs, ys)
    }

    /// Extactic matrix of degree `d` at `(x0, y0)`: row `k`, column `i` holds
    /// `X^k(v_i)` for the monomials `v_i = x^a y^b`, `a + b <= d`.
    pub fn extactic_matrix(&self, d: u32, x0: u64, y0: u64) -> Vec<Vec<u64>> {
        let f = &self.fp;
        let monos = monomials(d);
        let n = monos.len();
        let (xs, ys) = self.solution_jet(x0, y0, n);
        let xp = powers(f, &xs, d);
        let yp = powers(f, &ys, d);
        let mut fact = vec![1u64; n];
        for k in 1..n {
            fact[k] = f.mul(fact[k - 1], k as u64);
        }
        let mut rows = vec![vec![0u64; n]; n];
        for (col, &(i, j)) in monos.iter().enumerate() {
            let series = mul_trunc(f, &xp[i as usize], &yp[j as usize], n);
            for k in 0..n {
                rows[k][col] = f.mul(fact[k], series[k]);
            }
        }
        rows
    }

    pub fn extactic_at(&self, d: u32, x0: u64, y0: u64) -> u64 {
        self.fp.det(self.extactic_matrix(d, x0, y0))
    }
}

/// Monomials `(i, j)` with `i + j <= d`, graded.
pub fn monomials(d: u32) -> Vec<(u32, u32)> {
    (0..=d)
        .flat_map(|s| (0..=s).map(move |i| (i, s - i)))
        .collect()
}

fn mul_trunc(f: &PrimeField, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// `s^0, s^1, ..., s^max` as truncated series of the same length as `s`.
fn powers(f: &PrimeField, s: &[u64], max: u32) -> Vec<Vec<u64>> {
    let len = s.len();
    let mut one = vec![0u64; len];
    one[0] = 1;
    let mut out = vec![one];
    for e in 1..=max as usize {
        let next = mul_trunc(f, &out[e - 1], s, len);
        out.push(next);
    }
    out
}

fn coeff_of(
    f: &PrimeField,
    terms: &[(u64, u32, u32)],
    xp: &[Vec<u64>],
    yp: &[Vec<u64>],
    k: usize,
) -> u64 {
    let mut acc = 0u64;
    for &(c, i, j) in terms {
        let (x, y) = (&xp[i as usize], &yp[j as usize]);
        let mut conv = 0u64;
        for m in 0..=k {
            conv = f.add(conv, f.mul(x[m], y[k - m]));
        }
        acc = f.add(acc, f.mul(c, conv));
    }
    acc
}

/// Runs the certifier at degree `d`.
pub fn extactic_certifier(
    field: &VectorField,
    d: u32,
    cfg: &CertifierConfig,
) -> Result<Certificate> {
    if !(1..=12).contains(&d) {
        return Err(Error::invalid("certifier degree must be in 1..=12"));
    }
    if cfg.trials < 3 {
        return Err(Error::invalid("at least 3 points per prime are required"));
    }
    if cfg.primes < 2 {
        return Err(Error::invalid("at least 2 primes are required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((d as u64) << 48));
    let mut primes = Vec::with_capacity(cfg.primes);
    let mut points = 0;
    let mut nonzero = 0;
    while primes.len() < cfg.primes {
        let fp = PrimeField::random(&mut rng, PRIME_BITS);
        let reduced = match ReducedField::new(field, fp) {
            Ok(r) => r,
            Err(Error::BadPrime(_)) => continue,
            Err(e) => return Err(e),
        };
        primes.push(fp.modulus());
        for _ in 0..cfg.trials {
            let x0 = rng.gen_range(0..fp.modulus());
            let y0 = rng.gen_range(0..fp.modulus());
            points += 1;
            if reduced.extactic_at(d, x0, y0) != 0 {
                nonzero += 1;
            }
        }
    }
    let verdict = if nonzero > 0 {
        Verdict::NoIntegralLeq
    } else {
        Verdict::ConsistentWith
    };
    Ok(Certificate {
        d,
        verdict,
        primes,
        points,
        nonzero,
        seed: cfg.seed,
    })
}

/// Smallest candidate degree at which the certifier returns
/// [`Verdict::ConsistentWith`], with the certificates of every degree tried.
pub fn minimal_degree(
    field: &VectorField,
    candidates: impl IntoIterator<Item = u32>,
    cfg: &CertifierConfig,
) -> Result<(Option<u32>, Vec<Certificate>)> {
    let mut log = Vec::new();
    for d in candidates {
        let cert = extactic_certifier(field, d, cfg)?;
        let hit = cert.verdict == Verdict::ConsistentWith;
        log.push(cert);
        if hit {
            return Ok((Some(d), log));
        }
    }
    Ok((None, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::EisRat;
    use crate::verifier::field::reference_field;
    use crate::verifier::poly::Poly;

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(1).len(), 3);
        assert_eq!(monomials(6).len(), 28);
        assert_eq!(monomials(9).len(), 55);
    }

    #[test]
    fn jet_matches_symbolic_lie_derivatives() {
        // A small nonlinear field with Q(w) coefficients.
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = &(&x * &y) - &Poly::constant(2, EisRat::tau());
        let b = &(&x.pow(2) + &y.scale(&EisRat::from_ratio(1, 2).unwrap())) - &x;
        let field = VectorField::new(a, b);
        let fp = PrimeField::new(1_000_000_087);
        let reduced = ReducedField::new(&field, fp).unwrap();
        let (x0, y0) = (12345u64, 67890u64);
        let d = 2;
        let m = reduced.extactic_matrix(d, x0, y0);
        for (col, &(i, j)) in monomials(d).iter().enumerate() {
            let mut g = &x.pow(i) * &y.pow(j);
            for row in m.iter() {
                let at = g.eval(&[EisRat::from_int(x0), EisRat::from_int(y0)]);
                assert_eq!(row[col], fp.from_eisrat(&at).unwrap());
                g = field.lie(&g);
            }
        }
    }

    #[test]
    fn reference_pencil_minimal_degrees() {
        let cfg = CertifierConfig::default();
        for (p, q, expect) in [(1, 1, 1), (-1, 1, 2), (3, 2, 3), (1, 2, 2), (-2, 3, 5)] {
            let f = reference_field(p, q).unwrap();
            let (d, _) = minimal_degree(&f, 1..=6, &cfg).unwrap();
            assert_eq!(d, Some(expect), "p = {p}, q = {q}");
        }
    }

    #[test]
    fn argument_checks() {
        let f = reference_field(1, 1).unwrap();
        let cfg = CertifierConfig::default();
        assert!(extactic_certifier(&f, 0, &cfg).is_err());
        assert!(extactic_certifier(&f, 13, &cfg).is_err());
        assert!(extactic_certifier(&f, 2, &CertifierConfig { trials: 2, ..cfg }).is_err());
        assert!(extactic_certifier(&f, 2, &CertifierConfig { primes: 1, ..cfg }).is_err());
    }
}
