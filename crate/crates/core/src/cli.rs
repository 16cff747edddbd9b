//! Command-line front end. Output is one JSON document (or CSV table) on
//! stdout; errors go to stderr with exit code 1 for domain errors and 2 for
//! usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value};

use crate::counting::{
    degree_table, enumerate_parameters, growth_report, variant_difference, write_csv,
};
use crate::eisenstein::{format_eisrat, parse_eisrat, EisInt, ExtRat};
use crate::error::Error;
use crate::lattice::{
    intersection_as_printed, intersection_number, intersection_oracle, oracle_matrix, zeta_k,
    zeta_product_oracle, Subtorus,
};
use crate::pencil::{DegreeRecord, PencilParam, Variant};
use crate::verifier::{
    certify_line_invariance, degenerate_first_integral, minimal_degree, singular_points,
    Certificate, CertifierConfig, Foliation, SingularKind,
};

/// Environment variable consulted when `verify` gets no `--seed`.
pub const SEED_ENV: &str = "EISENFOIL_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "eisenfoil",
    version,
    about = "Degrees of rational first integrals for a pencil of degree-4 plane foliations"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Paper,
    Corrected,
    Both,
}

impl VariantArg {
    fn single(self) -> Option<Variant> {
        match self {
            VariantArg::Paper => Some(Variant::Paper),
            VariantArg::Corrected => Some(Variant::Corrected),
            VariantArg::Both => None,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree of the first integral of F_t.
    Degree {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
    },
    /// Intersection number of two subtori, given as pairs "alpha,beta".
    Intersect {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Also print the lattice matrix and the transposed-index value.
        #[arg(long)]
        oracle: bool,
    },
    /// Every integrable parameter with degree at most N.
    Count {
        #[arg(long = "max-degree")]
        max_degree: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
        #[arg(long, value_enum)]
        emit: Option<Format>,
    },
    /// Growth of the counting function on a log-spaced grid.
    Growth {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
    },
    /// Partial sum of the Dedekind zeta function of Q(w).
    Zeta {
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long)]
        terms: u64,
    },
    /// Certify the minimal degree of a first integral of F_t.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long = "max-d")]
        max_d: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        primes: usize,
    },
    /// Degree records of all parameters with N(alpha1), N(beta1) <= M.
    Table {
        #[arg(long = "max-norm")]
        max_norm: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

enum Output {
    Json(Value),
    Csv(Vec<u8>),
}

/// Runs the command line with `EISENFOIL_SEED` read from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_seed_env(args, std::env::var(SEED_ENV).ok(), out, err)
}

/// As [`run`], with the fallback seed passed in.
pub fn run_with_seed_env<I, T>(
    args: I,
    seed_env: Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, seed_env) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Ok(Output::Csv(bytes)) => {
            let _ = out.write_all(&bytes);
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: Cli, seed_env: Option<String>) -> Result<Output, Failure> {
    let csv = cli.format == Format::Csv;
    let tabular_only = |name: &str| -> Result<(), Failure> {
        if csv {
            Err(Failure::Usage(format!(
                "--format csv is only available for count, growth and table, not {name}"
            )))
        } else {
            Ok(())
        }
    };
    match cli.command {
        Command::Degree { t, variant } => {
            tabular_only("degree")?;
            degree_cmd(&t, variant)
        }
        Command::Intersect { a, b, oracle } => {
            tabular_only("intersect")?;
            intersect_cmd(&a, &b, oracle)
        }
        Command::Count {
            max_degree,
            variant,
            emit,
        } => count_cmd(max_degree, variant, csv || emit == Some(Format::Csv)),
        Command::Growth { max, variant } => growth_cmd(max, variant, csv),
        Command::Zeta { s, terms } => {
            tabular_only("zeta")?;
            zeta_cmd(s, terms)
        }
        Command::Verify {
            t,
            max_d,
            seed,
            trials,
            primes,
        } => {
            tabular_only("verify")?;
            let seed = match (seed, seed_env) {
                (Some(s), _) => s,
                (None, Some(v)) => v.trim().parse().map_err(|_| {
                    Failure::Usage(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))
                })?,
                (None, None) => CertifierConfig::default().seed,
            };
            verify_cmd(
                &t,
                max_d,
                CertifierConfig {
                    trials,
                    primes,
                    seed,
                },
            )
        }
        Command::Table { max_norm } => table_cmd(max_norm, csv),
    }
}

/// Integers as JSON numbers while they are exactly representable as doubles,
/// as strings beyond that.
fn int_value(n: &BigInt) -> Value {
    const SAFE: i64 = 1 << 53;
    match n.to_i64() {
        Some(v) if v.abs() < SAFE => Value::from(v),
        _ => Value::String(n.to_string()),
    }
}

fn u64_value(n: u64) -> Value {
    int_value(&BigInt::from(n))
}

/// Doubles with 17 significant digits.
fn float_value(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(
        text.parse::<Number>()
            .expect("formatted double is a JSON number"),
    )
}

fn float_text(x: f64) -> String {
    format!("{x:.16e}")
}

fn lit(x: &ExtRat) -> Value {
    Value::String(format_eisrat(x))
}

fn parse_param(text: &str) -> Result<ExtRat, Failure> {
    Ok(parse_eisrat(text)?)
}

fn degree_cmd(t: &str, variant: VariantArg) -> Result<Output, Failure> {
    let param = PencilParam::from_t(parse_param(t)?);
    let mut m = Map::new();
    m.insert("t".into(), lit(param.t()));
    match variant.single() {
        None => {
            m.insert("d_paper".into(), int_value(&param.degree(Variant::Paper)));
            m.insert(
                "d_corrected".into(),
                int_value(&param.degree(Variant::Corrected)),
            );
        }
        Some(v) => {
            m.insert("variant".into(), v.name().into());
            m.insert("degree".into(), int_value(&param.degree(v)));
        }
    }
    m.insert("degenerate".into(), param.is_degenerate().into());
    Ok(Output::Json(Value::Object(m)))
}

/// `"x,y"` with both entries in `Z[w]`. Parse offsets refer to the whole flag.
fn parse_pair(text: &str) -> Result<(EisInt, EisInt), Failure> {
    let Some(comma) = text.find(',') else {
        return Err(Error::Parse {
            offset: text.len(),
            message: "expected a pair \"x,y\"".into(),
        }
        .into());
    };
    let element = |s: &str, base: usize| -> Result<EisInt, Failure> {
        let v = parse_eisrat(s).map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse {
                offset: offset + base,
                message,
            },
            other => other,
        })?;
        match v {
            ExtRat::Finite(r) if r.is_integral() => Ok(r.into_parts().0),
            _ => Err(Error::invalid(format!(
                "subtorus entries must lie in Z[w], got {:?}",
                s.trim()
            ))
            .into()),
        }
    };
    Ok((
        element(&text[..comma], 0)?,
        element(&text[comma + 1..], comma + 1)?,
    ))
}

fn intersect_cmd(a: &str, b: &str, details: bool) -> Result<Output, Failure> {
    let (alpha, beta) = parse_pair(a)?;
    let (gamma, delta) = parse_pair(b)?;
    let eq1 = intersection_number((&alpha, &beta), (&gamma, &delta))?;
    let sa = Subtorus::new(alpha, beta)?;
    let sb = Subtorus::new(gamma, delta)?;
    let mut m = Map::new();
    m.insert("eq1".into(), int_value(&eq1));
    m.insert("oracle".into(), int_value(&intersection_oracle(&sa, &sb)));
    if details {
        m.insert(
            "as_printed".into(),
            int_value(&intersection_as_printed(&sa, &sb)),
        );
        let rows: Vec<Value> = oracle_matrix(&sa, &sb)
            .0
            .iter()
            .map(|row| Value::Array(row.iter().map(int_value).collect()))
            .collect();
        m.insert("matrix".into(), Value::Array(rows));
    }
    Ok(Output::Json(Value::Object(m)))
}

fn record_value(r: &DegreeRecord) -> Value {
    let [a, b, c, d] = &r.quartic_inputs;
    json!({
        "t": lit(r.param.t()),
        "alpha": lit(r.param.alpha()),
        "a": int_value(a),
        "b": int_value(b),
        "c": int_value(c),
        "d": int_value(d),
        "d_paper": int_value(&r.d_paper),
        "d_corrected": int_value(&r.d_corrected),
        "d_intersection": int_value(&r.d_intersection),
        "degenerate": r.param.is_degenerate(),
    })
}

fn csv_bytes(records: &[DegreeRecord]) -> Result<Output, Failure> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(Output::Csv(buf))
}

fn count_cmd(n: u64, variant: VariantArg, csv: bool) -> Result<Output, Failure> {
    let Some(v) = variant.single() else {
        if csv {
            return Err(Failure::Usage("CSV output needs a single --variant".into()));
        }
        let paper = enumerate_parameters(n, Variant::Paper)?;
        let corrected = enumerate_parameters(n, Variant::Corrected)?;
        let (only_paper, only_corrected) = variant_difference(n)?;
        return Ok(Output::Json(json!({
            "n": u64_value(n),
            "count_paper": u64_value(paper.count),
            "count_corrected": u64_value(corrected.count),
            "only_paper": only_paper,
            "only_corrected": only_corrected,
        })));
    };
    let report = enumerate_parameters(n, v)?;
    if csv {
        return csv_bytes(&report.parameters);
    }
    Ok(Output::Json(json!({
        "n": u64_value(report.n),
        "variant": v.name(),
        "count": u64_value(report.count),
        "ratio": float_value(report.ratio),
        "parameters": report.parameters.iter().map(record_value).collect::<Vec<_>>(),
    })))
}

fn growth_cmd(n_max: u64, variant: VariantArg, csv: bool) -> Result<Output, Failure> {
    let v = variant
        .single()
        .ok_or_else(|| Failure::Usage("growth needs a single --variant".into()))?;
    let g = growth_report(n_max, v)?;
    if csv {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Failure::Domain(Error::invalid(format!("csv output failed: {e}")));
        w.write_record([
            "n",
            "count",
            "count_over_n2",
            "ideals",
            "count_over_ideals2",
            "zeta_bound",
        ])
        .map_err(io)?;
        for r in &g.rows {
            w.write_record([
                r.n.to_string(),
                r.count.to_string(),
                float_text(r.ratio),
                r.ideals.to_string(),
                float_text(r.ideal_ratio),
                float_text(g.zeta_bound),
            ])
            .map_err(io)?;
        }
        let buf = w
            .into_inner()
            .map_err(|e| Failure::Domain(Error::invalid(e.to_string())))?;
        return Ok(Output::Csv(buf));
    }
    let rows: Vec<Value> = g
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": u64_value(r.n),
                "count": u64_value(r.count),
                "count_over_n2": float_value(r.ratio),
                "ideals": u64_value(r.ideals),
                "count_over_ideals2": float_value(r.ideal_ratio),
            })
        })
        .collect();
    Ok(Output::Json(json!({
        "variant": v.name(),
        "zeta_bound": float_value(g.zeta_bound),
        "fitted_constant": float_value(g.fitted_constant()),
        "rows": rows,
    })))
}

fn zeta_cmd(s: f64, terms: u64) -> Result<Output, Failure> {
    let value = zeta_k(s, terms)?;
    let product = zeta_product_oracle(s, terms)?;
    Ok(Output::Json(json!({
        "s": float_value(s),
        "terms": u64_value(terms),
        "value": float_value(value),
        "product_oracle": float_value(product),
        "difference": float_value((value - product).abs()),
    })))
}

fn certificate_value(t: &ExtRat, c: &Certificate) -> Value {
    json!({
        "t": lit(t),
        "d": c.d,
        "verdict": c.verdict.name(),
        "primes": c.primes.iter().map(|&p| u64_value(p)).collect::<Vec<_>>(),
        "points": c.points,
        "nonzero": c.nonzero,
        "seed": u64_value(c.seed),
    })
}

fn verify_cmd(t: &str, max_d: u32, cfg: CertifierConfig) -> Result<Output, Failure> {
    let param = PencilParam::from_t(parse_param(t)?);
    let fol = Foliation::new(param.t().clone());
    let (minimal, log) = minimal_degree(fol.field(), 1..=max_d, &cfg)?;
    let d_paper = param.degree(Variant::Paper);
    let d_corrected = param.degree(Variant::Corrected);
    let agrees = |d: &BigInt| minimal.map(|m| BigInt::from(m) == *d);
    let sing = singular_points(&fol);
    let count = |k: SingularKind| {
        sing.config
            .iter()
            .chain(&sing.extra)
            .filter(|s| s.kind == k)
            .count()
    };
    let lines = certify_line_invariance()
        .iter()
        .all(|(_, verdicts)| verdicts.iter().all(|v| v.1));
    let cubic =
        degenerate_first_integral(&fol).map(|c| format!("({}) / ({})", c.numerator, c.denominator));
    Ok(Output::Json(json!({
        "t": lit(param.t()),
        "degenerate": param.is_degenerate(),
        "d_paper": int_value(&d_paper),
        "d_corrected": int_value(&d_corrected),
        "minimal_degree": minimal,
        "paper_agrees": agrees(&d_paper),
        "corrected_agrees": agrees(&d_corrected),
        "certificates": log.iter().map(|c| certificate_value(param.t(), c)).collect::<Vec<_>>(),
        "lines_invariant": lines,
        "singular_points": {
            "radial": count(SingularKind::Radial),
            "minus_three_to_one": count(SingularKind::MinusThreeToOne),
            "other": count(SingularKind::Other),
            "regular": count(SingularKind::Regular),
        },
        "cubic_integral": cubic,
    })))
}

fn table_cmd(max_norm: u64, csv: bool) -> Result<Output, Failure> {
    let records = degree_table(max_norm)?;
    if csv {
        return csv_bytes(&records);
    }
    Ok(Output::Json(json!({
        "max_norm": u64_value(max_norm),
        "rows": records.iter().map(record_value).collect::<Vec<_>>(),
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("eisenfoil").chain(args.iter().copied());
        let code = run_with_seed_env(argv, None, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn float_formatting() {
        assert_eq!(float_value(0.5).to_string(), "5.0000000000000000e-1");
        assert_eq!(
            int_value(&BigInt::from(1u64 << 60)),
            Value::String((1u64 << 60).to_string())
        );
    }

    #[test]
    fn pair_offsets() {
        match parse_pair("1+w,2+*w") {
            Err(Failure::Domain(Error::Parse { offset, .. })) => assert!(offset >= 4, "{offset}"),
            _ => panic!("expected a parse error"),
        }
        assert!(matches!(parse_pair("1/2,1"), Err(Failure::Domain(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["degree", "--t", "1"]).0, 0);
        assert_eq!(run_args(&["degree", "--t", "1+"]).0, 1);
        assert_eq!(run_args(&["degree"]).0, 2);
        assert_eq!(run_args(&["--format", "csv", "zeta", "--terms", "10"]).0, 2);
    }
}
