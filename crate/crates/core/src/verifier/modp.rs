//! Prime fields `F_p` with `p = 1 (mod 3)`, where `w` has an image.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::eisenstein::{EisInt, EisRat};

/// `F_p` together with a primitive cube root of unity standing in for `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    w: u64,
}

impl PrimeField {
    /// `p` must be a prime `= 1 (mod 3)` below `2^63`.
    pub fn new(p: u64) -> Self {
        assert!(p % 3 == 1 && is_prime(p), "{p} is not a prime = 1 mod 3");
        let exp = (p - 1) / 3;
        let w = (2..)
            .map(|g| pow_mod(g, exp, p))
            .find(|&w| w != 1)
            .expect("a non-cube exists");
        PrimeField { p, w }
    }

    /// A random prime `= 1 (mod 3)` with exactly `bits` bits.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bits: u32) -> Self {
        assert!((32..=62).contains(&bits));
        loop {
            let lo = 1u64 << (bits - 1);
            let mut c = rng.gen_range(lo..lo << 1);
            // c = 1 mod 6
            c -= c % 6;
            c += 1;
            if c >= lo && is_prime(c) {
                return PrimeField::new(c);
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn tau(&self) -> u64 {
        self.w
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced mod p")
    }

    pub fn from_eisint(&self, x: &EisInt) -> u64 {
        self.add(self.from_int(&x.a), self.mul(self.from_int(&x.b), self.w))
    }

    /// Image of `x`, or `None` if its denominator vanishes mod `p`.
    pub fn from_eisrat(&self, x: &EisRat) -> Option<u64> {
        let den = self.inv(self.from_eisint(x.den()))?;
        Some(self.mul(self.from_eisint(x.num()), den))
    }

    /// Determinant by Gaussian elimination; consumes the matrix.
    pub fn det(&self, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            if piv != col {
                m.swap(piv, col);
                det = self.sub(0, det);
            }
            det = self.mul(det, m[col][col]);
            let inv = self.inv(m[col][col]).expect("pivot is nonzero");
            for r in col + 1..n {
                if m[r][col] == 0 {
                    continue;
                }
                let f = self.mul(m[r][col], inv);
                for c in col..n {
                    let v = self.mul(f, m[col][c]);
                    m[r][c] = self.sub(m[r][c], v);
                }
            }
        }
        det
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primality_small() {
        let sieve: Vec<u64> = (0..500)
            .filter(|&n| (2..n).all(|d| n % d != 0) && n >= 2)
            .collect();
        let mr: Vec<u64> = (0..500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn cube_root_of_unity() {
        let f = PrimeField::new(7);
        let w = f.tau();
        assert_eq!(f.mul(f.mul(w, w), w), 1);
        assert_eq!(f.add(f.add(f.mul(w, w), w), 1), 0);
    }

    #[test]
    fn random_primes_have_right_shape() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let f = PrimeField::random(&mut rng, 61);
            assert_eq!(f.modulus() % 3, 1);
            assert!(f.modulus() >= 1 << 60);
        }
    }

    #[test]
    fn eisenstein_reduction_is_a_homomorphism() {
        let f = PrimeField::new(1_000_003);
        let x = EisInt::new(17, -5);
        let y = EisInt::new(-3, 11);
        assert_eq!(
            f.from_eisint(&(&x * &y)),
            f.mul(f.from_eisint(&x), f.from_eisint(&y))
        );
        let q = EisRat::new(x.clone(), y.clone()).unwrap();
        assert_eq!(
            f.mul(f.from_eisrat(&q).unwrap(), f.from_eisint(&y)),
            f.from_eisint(&x)
        );
        let small = PrimeField::new(7);
        assert_eq!(small.from_eisrat(&EisRat::from_ratio(1, 7).unwrap()), None);
    }

    #[test]
    fn det_small() {
        let f = PrimeField::new(13);
        assert_eq!(f.det(vec![vec![2, 3], vec![1, 4]]), 5);
        assert_eq!(f.det(vec![vec![0, 1], vec![1, 0]]), 12);
        assert_eq!(f.det(vec![vec![1, 2], vec![2, 4]]), 0);
    }
}
