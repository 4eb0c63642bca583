//! JSON and CSV encodings of the core types.
//!
//! Exact rationals are always strings, `"p/q"` or `"p"` for integers; big
//! integers are decimal strings.

use std::cmp::Ordering;
use std::io::Write;

use jumpstat_core::genfunc::{Failure, Verdict};
use jumpstat_core::guess::{Guess, Limit, RationalFunctionN};
use jumpstat_core::moments::{FormCheck, MomentRow, MomentTable, ScaledMoment};
use jumpstat_core::{ExactRational, Poly2, Series, TreeStats};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub fn rational(v: &ExactRational) -> String {
    v.to_string()
}

pub fn parse_rational(s: &str) -> Result<ExactRational, String> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in {s:?}"))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in {s:?}"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(ExactRational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsJson {
    pub v: u64,
    pub j: u64,
    pub d: u64,
    pub jd: u64,
}

impl From<TreeStats> for StatsJson {
    fn from(s: TreeStats) -> Self {
        StatsJson {
            v: s.v,
            j: s.j,
            d: s.d,
            jd: s.jd,
        }
    }
}

/// One monomial `num/den * t^et * q^eq`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub et: u32,
    pub eq: u32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

pub fn poly_terms(p: &Poly2) -> Vec<TermJson> {
    p.terms()
        .map(|(et, eq, c)| TermJson {
            et,
            eq,
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

pub fn poly_from_terms(terms: &[TermJson]) -> Result<Poly2, String> {
    let mut p = Poly2::zero();
    for t in terms {
        let num: BigInt = t
            .num
            .parse()
            .map_err(|_| format!("bad numerator {:?}", t.num))?;
        let den: BigInt = t
            .den
            .parse()
            .map_err(|_| format!("bad denominator {:?}", t.den))?;
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        p.add_term(t.et, t.eq, ExactRational::new(num, den));
    }
    Ok(p)
}

/// `[{n, terms: [{et, eq, num, den}]}]`, one entry per coefficient `x^0..x^N`.
pub fn series_to_json(s: &Series) -> Vec<CoeffJson> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| CoeffJson {
            n,
            terms: poly_terms(c),
        })
        .collect()
}

/// Inverse of [`series_to_json`]. Entries must be listed for `n = 0, 1, ...`
/// without gaps.
pub fn series_from_json(coeffs: &[CoeffJson]) -> Result<Series, String> {
    if coeffs.is_empty() {
        return Err("empty series".into());
    }
    let polys = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.n != i {
                return Err(format!("coefficient {i} is labelled n={}", c.n));
            }
            poly_from_terms(&c.terms)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Series::new(polys))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureJson {
    pub n: usize,
    pub residual_terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub theorem: u8,
    pub order: usize,
    pub pass: bool,
    pub first_failure: Option<FailureJson>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            theorem: v.theorem.number(),
            order: v.order,
            pass: v.pass,
            first_failure: v
                .first_failure
                .as_ref()
                .map(|Failure { n, residual }| FailureJson {
                    n: *n,
                    residual_terms: poly_terms(residual),
                }),
        }
    }
}

fn sign_str(s: Ordering) -> &'static str {
    match s {
        Ordering::Less => "-",
        Ordering::Equal => "0",
        Ordering::Greater => "+",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScaledJson {
    Undefined {
        order: usize,
    },
    Even {
        order: usize,
        value: String,
    },
    Odd {
        order: usize,
        sign: String,
        square: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentRowJson {
    pub n: usize,
    pub b_n: String,
    pub raw: Vec<String>,
    pub central: Vec<String>,
    pub scaled: Vec<ScaledJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentTableJson {
    pub stat: String,
    pub max_order: usize,
    pub rows: Vec<MomentRowJson>,
}

fn row_json(row: &MomentRow) -> MomentRowJson {
    MomentRowJson {
        n: row.n,
        b_n: row.count.to_string(),
        raw: row.raw.iter().map(rational).collect(),
        central: row.central.iter().map(rational).collect(),
        scaled: row
            .scaled
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let order = i + 2;
                match s {
                    ScaledMoment::Undefined => ScaledJson::Undefined { order },
                    ScaledMoment::Even(v) => ScaledJson::Even {
                        order,
                        value: rational(v),
                    },
                    ScaledMoment::Odd { sign, square } => ScaledJson::Odd {
                        order,
                        sign: sign_str(*sign).into(),
                        square: rational(square),
                    },
                }
            })
            .collect(),
    }
}

pub fn moment_table_json(t: &MomentTable) -> MomentTableJson {
    MomentTableJson {
        stat: t.stat.name().into(),
        max_order: t.max_order,
        rows: t.rows.iter().map(row_json).collect(),
    }
}

/// Column names of the CSV moment table for moment orders up to `r`.
///
/// `n, b_n, m_1..m_R, mu_2..mu_R`, then per scaled order `k`: `scaled_k` for
/// even `k`, `scaled_sq_k` and `sign_k` for odd `k`. Undefined cells are
/// empty.
pub fn moment_csv_header(r: usize) -> Vec<String> {
    let mut h = vec!["n".to_string(), "b_n".to_string()];
    h.extend((1..=r).map(|k| format!("m_{k}")));
    h.extend((2..=r).map(|k| format!("mu_{k}")));
    for k in 2..=r {
        if k % 2 == 0 {
            h.push(format!("scaled_{k}"));
        } else {
            h.push(format!("scaled_sq_{k}"));
            h.push(format!("sign_{k}"));
        }
    }
    h
}

pub fn write_moment_csv<W: Write>(t: &MomentTable, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(moment_csv_header(t.max_order))?;
    for row in &t.rows {
        let mut rec = vec![row.n.to_string(), row.count.to_string()];
        rec.extend(row.raw.iter().map(rational));
        rec.extend(row.central.iter().map(rational));
        for (i, s) in row.scaled.iter().enumerate() {
            let odd = (i + 2) % 2 == 1;
            match s {
                ScaledMoment::Undefined if odd => rec.extend([String::new(), String::new()]),
                ScaledMoment::Undefined => rec.push(String::new()),
                ScaledMoment::Even(v) => rec.push(rational(v)),
                ScaledMoment::Odd { sign, square } => {
                    rec.push(rational(square));
                    rec.push(sign_str(*sign).into());
                }
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormCheckJson {
    pub theorem: String,
    pub pass: bool,
    pub checked: usize,
    pub first_mismatch: Option<usize>,
    pub first_sign_mismatch: Option<usize>,
}

impl From<&FormCheck> for FormCheckJson {
    fn from(c: &FormCheck) -> Self {
        FormCheckJson {
            theorem: c.label.into(),
            pass: c.pass,
            checked: c.checked,
            first_mismatch: c.first_mismatch,
            first_sign_mismatch: c.first_sign_mismatch,
        }
    }
}

/// Coefficients from the constant term up, plus a readable rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaJson {
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub text: String,
}

impl From<&RationalFunctionN> for FormulaJson {
    fn from(rf: &RationalFunctionN) -> Self {
        FormulaJson {
            numerator: rf
                .numerator()
                .coeffs()
                .iter()
                .map(ToString::to_string)
                .collect(),
            denominator: rf
                .denominator()
                .coeffs()
                .iter()
                .map(ToString::to_string)
                .collect(),
            text: rf.render(),
        }
    }
}

impl FormulaJson {
    pub fn to_formula(&self) -> Result<RationalFunctionN, String> {
        use jumpstat_core::guess::IntPoly;
        let parse = |v: &[String]| {
            v.iter()
                .map(|c| {
                    c.parse::<BigInt>()
                        .map_err(|_| format!("bad coefficient {c:?}"))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(IntPoly::new)
        };
        RationalFunctionN::new(parse(&self.numerator)?, parse(&self.denominator)?)
            .ok_or_else(|| "zero denominator".to_string())
    }
}

pub fn limit_str(l: &Limit) -> String {
    l.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessJson {
    pub stat: String,
    pub moment: String,
    pub n_from: usize,
    pub n_to: usize,
    pub holdout: usize,
    pub formula: FormulaJson,
    pub deg_num: usize,
    pub deg_den: usize,
    pub attempts: usize,
    pub limit: String,
}

impl GuessJson {
    pub fn new(
        stat: &str,
        moment: &str,
        range: (usize, usize),
        holdout: usize,
        g: &Guess,
        limit: &Limit,
    ) -> Self {
        GuessJson {
            stat: stat.into(),
            moment: moment.into(),
            n_from: range.0,
            n_to: range.1,
            holdout,
            formula: (&g.formula).into(),
            deg_num: g.formula.num_degree().unwrap_or(0),
            deg_den: g.formula.den_degree(),
            attempts: g.attempts,
            limit: limit_str(limit),
        }
    }
}
