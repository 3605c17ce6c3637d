//! JSON interchange for germ fixtures: a form, its separatrix list and
//! optional expected values. This is the schema the command-line tool reads
//! on stdin and the family generator emits, so pipelines like
//! `example ... | obstruction` work on plain text.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::poly1::Poly1;
use crate::algebra::rat::{rat_from_str, rat_to_string, Rat};
use crate::algebra::ratfunc::RatFunc1;
use crate::error::{Error, Result};
use crate::examples::CorpusEntry;
use crate::foliation::OneForm;
use crate::parse::{parse_form, parse_poly, print_form, print_poly};
use crate::reduction::TrackedCurve;

#[derive(Serialize, Deserialize)]
pub struct EntryJson {
    pub schema: String,
    pub name: String,
    pub form: String,
    #[serde(default)]
    pub separatrices: Vec<CurveJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_integral: Option<FirstIntegralJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CurveJson {
    #[serde(rename = "poly")]
    Poly { expr: String },
    /// Polynomial parametrization by coefficient lists, degree order.
    #[serde(rename = "param")]
    Param { x: Vec<String>, y: Vec<String> },
    #[serde(rename = "curvette")]
    Curvette { component: usize, coord: String },
}

#[derive(Serialize, Deserialize)]
pub struct FirstIntegralJson {
    pub numerator: String,
    pub denominator: String,
}

#[derive(Serialize, Deserialize)]
pub struct ExpectedJson {
    pub nu0: u32,
    pub nu0_balanced: i64,
    pub second_kind: bool,
    pub obstruction_dim: u64,
}

pub struct ParsedEntry {
    pub name: String,
    pub form: OneForm,
    pub separatrices: Vec<TrackedCurve>,
    pub expected: Option<ExpectedJson>,
}

fn coeffs_to_json(p: &Poly1) -> Vec<String> {
    p.coeffs().iter().map(rat_to_string).collect()
}

fn coeffs_from_json(v: &[String]) -> Result<Poly1> {
    let mut coeffs: Vec<Rat> = Vec::with_capacity(v.len());
    for s in v {
        coeffs.push(rat_from_str(s).ok_or_else(|| Error::SyntaxError {
            pos: 0,
            msg: format!("bad rational '{}'", s),
        })?);
    }
    Ok(Poly1::from_coeffs(coeffs))
}

pub fn curve_to_json(curve: &TrackedCurve) -> CurveJson {
    match curve {
        TrackedCurve::Explicit(f) => CurveJson::Poly {
            expr: print_poly(f),
        },
        TrackedCurve::Parametrized { x, y } => {
            assert!(
                x.den().degree() == Some(0)
                    && x.den().coeff(0).is_one()
                    && y.den().degree() == Some(0)
                    && y.den().coeff(0).is_one(),
                "only polynomial parametrizations are serialized"
            );
            CurveJson::Param {
                x: coeffs_to_json(x.num()),
                y: coeffs_to_json(y.num()),
            }
        }
        TrackedCurve::Curvette { comp, coord } => CurveJson::Curvette {
            component: *comp,
            coord: rat_to_string(coord),
        },
    }
}

pub fn curve_from_json(c: &CurveJson) -> Result<TrackedCurve> {
    Ok(match c {
        CurveJson::Poly { expr } => TrackedCurve::Explicit(parse_poly(expr)?),
        CurveJson::Param { x, y } => TrackedCurve::Parametrized {
            x: RatFunc1::from_poly(coeffs_from_json(x)?),
            y: RatFunc1::from_poly(coeffs_from_json(y)?),
        },
        CurveJson::Curvette { component, coord } => TrackedCurve::Curvette {
            comp: *component,
            coord: rat_from_str(coord).ok_or_else(|| Error::SyntaxError {
                pos: 0,
                msg: format!("bad rational '{}'", coord),
            })?,
        },
    })
}

pub fn entry_to_json(entry: &CorpusEntry) -> EntryJson {
    EntryJson {
        schema: "folres/1".to_string(),
        name: entry.name.clone(),
        form: print_form(&entry.form),
        separatrices: entry.separatrices.iter().map(curve_to_json).collect(),
        first_integral: entry.first_integral.as_ref().map(|(n, d)| FirstIntegralJson {
            numerator: print_poly(n),
            denominator: print_poly(d),
        }),
        expected: Some(ExpectedJson {
            nu0: entry.expected.nu0,
            nu0_balanced: entry.expected.nu0_balanced,
            second_kind: entry.expected.second_kind,
            obstruction_dim: entry.expected.obstruction_dim,
        }),
    }
}

pub fn entry_from_json(text: &str) -> Result<ParsedEntry> {
    let raw: EntryJson = serde_json::from_str(text).map_err(|e| Error::SyntaxError {
        pos: 0,
        msg: format!("entry JSON: {}", e),
    })?;
    let form = parse_form(&raw.form)?;
    let mut separatrices = Vec::new();
    for c in &raw.separatrices {
        separatrices.push(curve_from_json(c)?);
    }
    Ok(ParsedEntry {
        name: raw.name,
        form,
        separatrices,
        expected: raw.expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::corpus;

    #[test]
    fn corpus_round_trips_through_entry_json() {
        for e in corpus() {
            let json = serde_json::to_string(&entry_to_json(&e)).unwrap();
            let back = entry_from_json(&json).unwrap();
            assert_eq!(back.form, e.form, "{}", e.name);
            assert_eq!(back.separatrices.len(), e.separatrices.len());
            let exp = back.expected.unwrap();
            assert_eq!(exp.nu0, e.expected.nu0);
            assert_eq!(exp.obstruction_dim, e.expected.obstruction_dim);
        }
    }
}
