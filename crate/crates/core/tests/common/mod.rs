//! Oracles and randomized property suites shared by the integration tests.
#![allow(dead_code)]

use eisenfoil::eisenstein::{format_eisrat, parse_eisrat, EisInt, EisRat, ExtRat};
use eisenfoil::lattice::{intersection_number, mat_of};
use eisenfoil::pencil::{alpha_of, degree_of_pair, lambda_map, Variant};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const COORD: i64 = 1_000_000;

pub fn eis(r: i64) -> impl Strategy<Value = EisInt> {
    (-r..=r, -r..=r).prop_map(|(a, b)| EisInt::new(a, b))
}

pub fn nonzero_eis(r: i64) -> impl Strategy<Value = EisInt> {
    eis(r).prop_filter("nonzero", |x| !x.is_zero())
}

pub fn eisrat(r: i64) -> impl Strategy<Value = EisRat> {
    (eis(r), nonzero_eis(r)).prop_map(|(n, d)| EisRat::new(n, d).unwrap())
}

/// `(a + b w)(c + d w)` on machine integers, straight from `w^2 = -1 - w`.
pub fn mul_oracle(x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    let (a, b) = x;
    let (c, d) = y;
    // ac + (ad + bc) w + bd w^2
    (a * c - b * d, a * d + b * c - b * d)
}

pub fn coords(x: &EisInt) -> (i128, i128) {
    let (a, b) = x.to_i64_pair().expect("small value");
    (a as i128, b as i128)
}

pub fn in_sector(x: &EisInt) -> bool {
    x.a > BigInt::from(0) && x.b >= BigInt::from(0) && x.b < x.a
}

/// 4x4 determinant by cofactor expansion along the first row.
pub fn det4_cofactor(m: &[[i128; 4]; 4]) -> i128 {
    fn det3(m: [[i128; 3]; 3]) -> i128 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
    (0..4)
        .map(|col| {
            let mut minor = [[0i128; 3]; 3];
            for r in 1..4 {
                let mut k = 0;
                for c in 0..4 {
                    if c != col {
                        minor[r - 1][k] = m[r][c];
                        k += 1;
                    }
                }
            }
            let sign = if col % 2 == 0 { 1 } else { -1 };
            sign * m[0][col] * det3(minor)
        })
        .sum()
}

/// Lattice count of `E_{a,b} . E_{c,d}` for coprime pairs: `|det|` of the
/// real 4x4 matrix of `(x, y) -> (a x - c y, b x - d y)` on `Z[w]^2`.
pub fn lattice_count(a: &EisInt, b: &EisInt, c: &EisInt, d: &EisInt) -> i128 {
    let m2 = |x: &EisInt| {
        let (p, q) = coords(x);
        [[p, -q], [q, p - q]]
    };
    let (ma, mb, mc, md) = (m2(a), m2(b), m2(c), m2(d));
    let mut m = [[0i128; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = ma[i][j];
            m[i][j + 2] = -mc[i][j];
            m[i + 2][j] = mb[i][j];
            m[i + 2][j + 2] = -md[i][j];
        }
    }
    det4_cofactor(&m).abs()
}

/// All `a + b w` with `N <= bound`.
pub fn elements_up_to(bound: i64) -> Vec<EisInt> {
    let r = (2.0 * (bound as f64 / 3.0).sqrt()).ceil() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            if a * a - a * b + b * b <= bound {
                out.push(EisInt::new(a, b));
            }
        }
    }
    out
}

/// `chi_{-3}(n)`.
pub fn chi(n: u64) -> i64 {
    match n % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

/// `H(n) = sum_{k <= n} sum_{d | k} chi(d) = sum_{d <= n} chi(d) floor(n / d)`.
pub fn ideals_up_to_oracle(n: u64) -> i64 {
    (1..=n).map(|d| chi(d) * (n / d) as i64).sum()
}

/// `zeta(2) L(2, chi_{-3})` with `zeta(2) = pi^2 / 6` and the L-series summed
/// in periods of three far past the tolerance.
pub fn zeta_k2_oracle() -> f64 {
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    let mut l = 0.0;
    for j in (0..5_000_000u64).rev() {
        let a = (3 * j + 1) as f64;
        let b = (3 * j + 2) as f64;
        l += 1.0 / (a * a) - 1.0 / (b * b);
    }
    zeta2 * l
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn outcome<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn ring_laws(cases: u32) -> Result<(), String> {
    let s = (eis(COORD), eis(COORD), eis(COORD));
    outcome(runner(cases).run(&s, |(x, y, z)| {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        let p = mul_oracle(coords(&x), coords(&y));
        prop_assert_eq!(coords(&(&x * &y)), p);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.norm() == BigInt::from(0), x.is_zero());
        Ok(())
    }))
}

pub fn divmod_bound(cases: u32) -> Result<(), String> {
    let s = (eis(COORD), nonzero_eis(COORD));
    outcome(runner(cases).run(&s, |(x, y)| {
        let (q, r) = x.divmod(&y).unwrap();
        prop_assert_eq!(&(&q * &y) + &r, x.clone());
        prop_assert!(r.norm() < y.norm());
        Ok(())
    }))
}

pub fn canonical_associate(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&nonzero_eis(COORD), |x| {
        let passing: Vec<EisInt> = EisInt::units()
            .iter()
            .map(|u| u * &x)
            .filter(in_sector)
            .collect();
        prop_assert_eq!(passing.len(), 1);
        let (c, u) = x.canonical_associate();
        prop_assert!(u.is_unit());
        prop_assert_eq!(&u * &x, c.clone());
        prop_assert_eq!(&c, &passing[0]);
        Ok(())
    }))
}

pub fn gcd_laws(cases: u32) -> Result<(), String> {
    let s = (eis(2000), eis(2000), nonzero_eis(300));
    outcome(runner(cases).run(&s, |(x, y, z)| {
        if x.is_zero() && y.is_zero() {
            return Ok(());
        }
        let g = x.gcd(&y).unwrap();
        prop_assert!(g.divides(&x) && g.divides(&y));
        prop_assert!(g.is_canonical());
        // Common divisors divide the gcd: z | xz, yz so z | gcd(xz, yz) = g z.
        let gz = (&x * &z).gcd(&(&y * &z)).unwrap();
        prop_assert!(z.divides(&gz));
        prop_assert_eq!(gz, (&g * &z).canonical());
        let left = g.gcd(&z).unwrap();
        let right = x.gcd(&y.gcd(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(
            x.gcd(&EisInt::zero()).ok(),
            (!x.is_zero()).then(|| x.canonical())
        );
        Ok(())
    }))
}

pub fn parse_format_round_trip(cases: u32) -> Result<(), String> {
    let s = prop_oneof![
        9 => eisrat(1_000_000).prop_map(ExtRat::Finite),
        1 => Just(ExtRat::Infinity),
    ];
    outcome(runner(cases).run(&s, |x| {
        let text = format_eisrat(&x);
        prop_assert_eq!(parse_eisrat(&text).unwrap(), x.clone());
        // Whitespace between tokens is ignored.
        let spaced: String = text
            .chars()
            .flat_map(|c| {
                if c.is_ascii_alphanumeric() {
                    vec![c]
                } else {
                    vec![' ', c, ' ']
                }
            })
            .collect();
        prop_assert_eq!(parse_eisrat(&spaced).unwrap(), x);
        Ok(())
    }))
}

pub fn reduction_idempotent(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&eisrat(100_000), |r| {
        prop_assert!(r.num().gcd(r.den()).unwrap().is_unit());
        prop_assert!(r.den().is_canonical() && !r.den().is_zero());
        prop_assert_eq!(EisRat::new(r.num().clone(), r.den().clone()).unwrap(), r);
        Ok(())
    }))
}

pub fn mat_of_homomorphism(cases: u32) -> Result<(), String> {
    let s = (eis(100_000), eis(100_000));
    outcome(runner(cases).run(&s, |(x, y)| {
        prop_assert_eq!(mat_of(&(&x + &y)), mat_of(&x).add(&mat_of(&y)));
        prop_assert_eq!(mat_of(&(&x * &y)), mat_of(&x).mul(&mat_of(&y)));
        prop_assert_eq!(mat_of(&x).det(), x.norm());
        Ok(())
    }))
}

pub fn lambda_inverse(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&eisrat(10_000), |a| {
        let a = ExtRat::Finite(a);
        prop_assert_eq!(alpha_of(&lambda_map(&a)), a.clone());
        prop_assert_eq!(lambda_map(&alpha_of(&a)), a);
        Ok(())
    }))
}

pub fn degree_unit_invariance(cases: u32) -> Result<(), String> {
    let s = (eis(500), eis(500));
    outcome(runner(cases).run(&s, |(a, b)| {
        if a.is_zero() && b.is_zero() {
            return Ok(());
        }
        for v in [Variant::Paper, Variant::Corrected] {
            let d = degree_of_pair(&a, &b, v);
            for u in EisInt::units() {
                prop_assert_eq!(degree_of_pair(&(&u * &a), &(&u * &b), v), d.clone());
            }
        }
        Ok(())
    }))
}

pub fn intersection_symmetry(cases: u32) -> Result<(), String> {
    let s = (eis(50), eis(50), eis(50), eis(50), nonzero_eis(20));
    outcome(runner(cases).run(&s, |(a, b, c, d, k)| {
        if (a.is_zero() && b.is_zero()) || (c.is_zero() && d.is_zero()) {
            return Ok(());
        }
        let ab = intersection_number((&a, &b), (&c, &d)).unwrap();
        let ba = intersection_number((&c, &d), (&a, &b)).unwrap();
        prop_assert_eq!(&ab, &ba);
        let proportional = (&a * &d - &b * &c).is_zero();
        prop_assert_eq!(ab == BigInt::from(0), proportional);
        // A common factor does not change the curve.
        let scaled = intersection_number((&(&k * &a), &(&k * &b)), (&c, &d)).unwrap();
        prop_assert_eq!(scaled, ab);
        Ok(())
    }))
}

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

/// The suites named by the acceptance criteria.
pub const CORE_SUITES: [Suite; 5] = [
    ("ring laws", ring_laws),
    ("euclidean divmod bound", divmod_bound),
    ("unique canonical associate", canonical_associate),
    ("gcd divisibility", gcd_laws),
    ("parse/format round trip", parse_format_round_trip),
];

pub fn check(r: Result<(), String>) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}
