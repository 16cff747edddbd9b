//! Counting integrable parameters by the degree of their first integral.

use std::io::Write;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rayon::prelude::*;

use crate::eisenstein::{format_eisrat, small_gcd, EisInt};
use crate::error::{Error, Result};
use crate::lattice::{ideals_up_to, zeta_k};
use crate::pencil::{DegreeRecord, PencilParam, Variant};

/// Result of [`enumerate_parameters`].
#[derive(Clone, Debug)]
pub struct CountReport {
    pub n: u64,
    pub variant: Variant,
    pub count: u64,
    /// Sorted by degree, `N(beta1)`, `N(alpha1)`, then the literal of `t`.
    pub parameters: Vec<DegreeRecord>,
    /// `count / n^2`.
    pub ratio: f64,
    pub elapsed: Duration,
}

fn norm(a: i64, b: i64) -> i64 {
    a * a - a * b + b * b
}

/// True when the gcd is a unit.
fn coprime(x: (i64, i64), y: (i64, i64)) -> bool {
    let g =
        small_gcd((x.0 as i128, x.1 as i128), (y.0 as i128, y.1 as i128)).expect("small inputs");
    g.0 * g.0 - g.0 * g.1 + g.1 * g.1 == 1
}

fn degree_i64(a: (i64, i64), b: (i64, i64), variant: Variant) -> i64 {
    // last term: N(b + w a) or N(a + w b); w (c + d w) = -d + (c - d) w
    let last = match variant {
        Variant::Paper => (b.0 - a.1, b.1 + a.0 - a.1),
        Variant::Corrected => (a.0 - b.1, a.1 + b.0 - b.1),
    };
    norm(b.0, b.1) + norm(a.0, a.1) + norm(b.0 - a.0, b.1 - a.1) + norm(last.0, last.1)
}

/// Coordinate bound for elements of norm at most `k`: `|a|, |b| <= 2 sqrt(k / 3)`.
fn coordinate_bound(k: i64) -> i64 {
    let mut r = ((4 * k) as f64 / 3.0).sqrt() as i64;
    while 3 * r * r < 4 * k {
        r += 1;
    }
    r
}

/// All canonical coprime pairs `(alpha1, beta1)` with degree at most `n`, as
/// `(degree, alpha1, beta1)` in no particular order.
fn raw_parameters(n: u64, variant: Variant) -> Vec<(i64, (i64, i64), (i64, i64))> {
    let n = n as i64;
    let rb = coordinate_bound(n);
    let betas: Vec<(i64, i64)> = (1..=rb)
        .flat_map(|a| (0..a).map(move |b| (a, b)))
        .filter(|&(a, b)| norm(a, b) <= n)
        .collect();
    let mut out: Vec<_> = betas
        .par_iter()
        .flat_map_iter(|&beta| {
            let budget = n - norm(beta.0, beta.1);
            let ra = coordinate_bound(budget);
            let mut local = Vec::new();
            for a in -ra..=ra {
                for b in -ra..=ra {
                    if norm(a, b) > budget {
                        continue;
                    }
                    let d = degree_i64((a, b), beta, variant);
                    if d <= n && coprime((a, b), beta) {
                        local.push((d, (a, b), beta));
                    }
                }
            }
            local
        })
        .collect();
    // beta1 = 0 only for alpha = inf, with alpha1 = 1.
    let d = degree_i64((1, 0), (0, 0), variant);
    if d <= n {
        out.push((d, (1, 0), (0, 0)));
    }
    out
}

/// Number of integrable parameters with degree at most `n`, without building
/// records.
pub fn count_parameters(n: u64, variant: Variant) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    Ok(raw_parameters(n, variant).len() as u64)
}

/// Sorted degrees of every integrable parameter up to `n`; the counting
/// function at any `m <= n` is the number of entries `<= m`.
pub fn degree_spectrum(n: u64, variant: Variant) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let mut ds: Vec<u64> = raw_parameters(n, variant)
        .into_iter()
        .map(|r| r.0 as u64)
        .collect();
    ds.par_sort_unstable();
    Ok(ds)
}

/// Every integrable parameter whose first integral has degree at most `n`.
pub fn enumerate_parameters(n: u64, variant: Variant) -> Result<CountReport> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let start = Instant::now();
    let parameters = sorted_records(raw_parameters(n, variant));
    let count = parameters.len() as u64;
    Ok(CountReport {
        n,
        variant,
        count,
        parameters,
        ratio: count as f64 / (n as f64 * n as f64),
        elapsed: start.elapsed(),
    })
}

fn sorted_records(raw: Vec<(i64, (i64, i64), (i64, i64))>) -> Vec<DegreeRecord> {
    let mut keyed: Vec<((i64, i64, i64, String), DegreeRecord)> = raw
        .into_par_iter()
        .map(|(d, a, b)| {
            let param = PencilParam::from_pair(EisInt::new(a.0, a.1), EisInt::new(b.0, b.1))
                .expect("pair is nonzero");
            let key = (d, norm(b.0, b.1), norm(a.0, a.1), format_eisrat(param.t()));
            (key, DegreeRecord::new(param))
        })
        .collect();
    keyed.par_sort_unstable_by(|x, y| x.0.cmp(&y.0));
    keyed.dedup_by(|x, y| x.0 == y.0);
    keyed.into_iter().map(|(_, r)| r).collect()
}

/// Records for every parameter whose pair has `N(alpha1) <= m` and
/// `N(beta1) <= m`, in the order of [`CountReport::parameters`].
pub fn degree_table(max_norm: u64) -> Result<Vec<DegreeRecord>> {
    if max_norm == 0 {
        return Err(Error::invalid("the norm bound must be positive"));
    }
    let m = max_norm as i64;
    let r = coordinate_bound(m);
    let elems: Vec<(i64, i64)> = (-r..=r)
        .flat_map(|a| (-r..=r).map(move |b| (a, b)))
        .filter(|&(a, b)| norm(a, b) <= m)
        .collect();
    let mut pairs = vec![((1, 0), (0, 0))];
    for &beta in elems.iter().filter(|&&(a, b)| a > 0 && 0 <= b && b < a) {
        for &alpha in &elems {
            if coprime(alpha, beta) {
                pairs.push((alpha, beta));
            }
        }
    }
    Ok(sorted_records(
        pairs
            .into_iter()
            .map(|(a, b)| (degree_i64(a, b, Variant::Corrected), a, b))
            .collect(),
    ))
}

/// Parameters counted at degree `<= n` by exactly one of the two variants,
/// as `(only_paper, only_corrected)` lists of `t` literals.
pub fn variant_difference(n: u64) -> Result<(Vec<String>, Vec<String>)> {
    let lits = |v| -> Result<std::collections::BTreeSet<String>> {
        Ok(enumerate_parameters(n, v)?
            .parameters
            .iter()
            .map(|r| format_eisrat(r.param.t()))
            .collect())
    };
    let paper = lits(Variant::Paper)?;
    let corrected = lits(Variant::Corrected)?;
    Ok((
        paper.difference(&corrected).cloned().collect(),
        corrected.difference(&paper).cloned().collect(),
    ))
}

/// Writes `t, alpha, a, b, c, d, d_paper, d_corrected` rows with a header.
pub fn write_csv<W: Write>(records: &[DegreeRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io = |e: csv::Error| Error::invalid(format!("csv output failed: {e}"));
    w.write_record(["t", "alpha", "a", "b", "c", "d", "d_paper", "d_corrected"])
        .map_err(io)?;
    for r in records {
        let [a, b, c, d] = &r.quartic_inputs;
        w.write_record([
            format_eisrat(r.param.t()),
            format_eisrat(r.param.alpha()),
            a.to_string(),
            b.to_string(),
            c.to_string(),
            d.to_string(),
            r.d_paper.to_string(),
            r.d_corrected.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::invalid(format!("csv output failed: {e}")))?;
    Ok(())
}

/// Degree of the first integral `x^q / y^p` of `p x dy - q y dx`, i.e. of the
/// linear pencil `alpha x dy - y dx` at `alpha = p / q`.
pub fn ref_degree(p: i64, q: i64) -> Result<u64> {
    if q <= 0 {
        return Err(Error::invalid("q must be positive"));
    }
    if p.unsigned_abs().gcd(&q.unsigned_abs()) != 1 {
        return Err(Error::invalid(format!("{p}/{q} is not in lowest terms")));
    }
    Ok(if p >= 0 {
        p.max(q) as u64
    } else {
        p.unsigned_abs() + q as u64
    })
}

/// Integrable parameters of the linear pencil with degree at most `n`, by
/// brute force over `alpha = p / q`; `alpha = inf` (first integral `x`) adds 1.
pub fn ref_count(n: u64) -> u64 {
    let n = n as i64;
    let finite: u64 = (1..=n)
        .into_par_iter()
        .map(|q| {
            (-n..=n)
                .filter(|&p| ref_degree(p, q).is_ok_and(|d| d <= n as u64))
                .count() as u64
        })
        .sum();
    finite + 1
}

/// Second count of the same set, walking Stern-Brocot trees: one for
/// `alpha > 0` bounded by `max(p, q) <= n`, one for `alpha < 0` bounded by
/// `|p| + q <= n`, plus `alpha = 0` and `alpha = inf`.
pub fn ref_count_stern_brocot(n: u64) -> u64 {
    fn walk(n: u64, size: impl Fn(u64, u64) -> u64) -> u64 {
        // Each node is the mediant of its two bounding fractions.
        let mut stack = vec![((0u64, 1u64), (1u64, 0u64))];
        let mut count = 0;
        while let Some((l, r)) = stack.pop() {
            let m = (l.0 + r.0, l.1 + r.1);
            if size(m.0, m.1) > n {
                continue;
            }
            count += 1;
            stack.push((l, m));
            stack.push((m, r));
        }
        count
    }
    let positive = walk(n, |p, q| p.max(q));
    let negative = walk(n, |p, q| p + q);
    positive + negative + 2
}

/// Euler totients `phi(0..=n)` by sieve.
pub fn totients(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// `2 + 3 sum_{j <= n} phi(j)`, the closed form quoted for [`ref_count`].
pub fn totient_formula(n: u64) -> u64 {
    2 + 3 * totients(n)[1..].iter().sum::<u64>()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: u64,
    pub count: u64,
    pub ratio: f64,
    pub ideals: u64,
    /// `count / H(n)^2`.
    pub ideal_ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub variant: Variant,
    pub rows: Vec<GrowthRow>,
    /// `1 / zeta_K(2)` from a long partial sum.
    pub zeta_bound: f64,
}

impl GrowthReport {
    /// Smallest `C` with `count <= C n^2` on every row.
    pub fn fitted_constant(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }

    /// `max / min` of `count / n^2` over rows with `n >= from`.
    pub fn ratio_spread(&self, from: u64) -> f64 {
        let rs: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.n >= from)
            .map(|r| r.ratio)
            .collect();
        let max = rs.iter().copied().fold(f64::MIN, f64::max);
        let min = rs.iter().copied().fold(f64::MAX, f64::min);
        max / min
    }
}

/// `1, 2, 5` times powers of ten below `n_max`, then `n_max` itself.
pub fn log_grid(n_max: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    let mut p = 10u64;
    'outer: loop {
        for m in [1, 2, 5] {
            let n = m * p;
            if n >= n_max {
                break 'outer;
            }
            grid.push(n);
        }
        p *= 10;
    }
    grid.push(n_max);
    grid
}

pub fn growth_report(n_max: u64, variant: Variant) -> Result<GrowthReport> {
    if n_max < 10 {
        return Err(Error::invalid("n_max must be at least 10"));
    }
    let spectrum = degree_spectrum(n_max, variant)?;
    let rows = log_grid(n_max)
        .into_iter()
        .map(|n| {
            let count = spectrum.partition_point(|&d| d <= n) as u64;
            let ideals = ideals_up_to(n);
            GrowthRow {
                n,
                count,
                ratio: count as f64 / (n as f64).powi(2),
                ideals,
                ideal_ratio: count as f64 / (ideals as f64).powi(2),
            }
        })
        .collect();
    Ok(GrowthReport {
        variant,
        rows,
        zeta_bound: 1.0 / zeta_k(2.0, 1_000_000)?,
    })
}
