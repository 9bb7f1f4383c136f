//! JSON encodings of formal sums, BV elements and reports.
//!
//! Coefficients are exact rational strings `"p/q"`; classes use the word syntax
//! (`"a1 B2"`, `""` for the trivial class) or `"(p,q)"` on the torus.

use serde_json::{json, Map, Value};

use crate::bv::{AxiomReport, BVElement, Counterexample, SignResolution};
use crate::error::{Error, Result};
use crate::formal::{format_rational, parse_rational, FormalSum};
use crate::goldman::GoldmanReport;
use crate::surface::{H1Class, LoopClass, Presentation};

fn schema_err(message: impl Into<String>) -> Error {
    Error::Schema(message.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema_err(format!("missing field `{key}`")))
}

fn genus_of(v: &Value) -> Result<usize> {
    field(v, "genus")?
        .as_u64()
        .filter(|&g| g >= 1)
        .map(|g| g as usize)
        .ok_or_else(|| schema_err("`genus` must be a positive integer"))
}

fn rational_of(v: &Value) -> Result<crate::formal::Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(crate::formal::rational(n.as_i64().expect("checked"))),
        _ => Err(schema_err(format!("expected a rational string, got {v}"))),
    }
}

pub fn formal_sum_to_json(sum: &FormalSum) -> Value {
    let terms: Vec<Value> = sum
        .iter()
        .map(|(class, coeff)| json!({"coeff": format_rational(coeff), "class": class.to_string()}))
        .collect();
    json!({"genus": sum.genus(), "terms": terms})
}

/// Parses and canonicalizes; repeated classes are summed.
pub fn formal_sum_from_json(v: &Value) -> Result<FormalSum> {
    let genus = genus_of(v)?;
    let presentation = Presentation::new(genus)?;
    formal_sum_terms(v, &presentation)
}

fn formal_sum_terms(v: &Value, presentation: &Presentation) -> Result<FormalSum> {
    let genus = genus_of(v)?;
    if genus != presentation.genus() {
        return Err(Error::GenusMismatch {
            left: genus,
            right: presentation.genus(),
        });
    }
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| schema_err("`terms` must be an array"))?;
    let mut sum = FormalSum::zero(genus);
    for t in terms {
        let class = field(t, "class")?
            .as_str()
            .ok_or_else(|| schema_err("`class` must be a string"))?;
        sum.add_term(LoopClass::parse(class, presentation)?, rational_of(field(t, "coeff")?)?);
    }
    Ok(sum)
}

pub fn h1_to_json(alpha: &H1Class) -> Value {
    Value::Array(alpha.coords().iter().map(|c| Value::String(format_rational(c))).collect())
}

pub fn bv_element_to_json(x: &BVElement) -> Value {
    json!({
        "genus": x.genus(),
        "h0": format_rational(x.h0()),
        "h1": {"alpha": h1_to_json(x.h1_alpha()), "loops": formal_sum_to_json(x.h1_loops())},
        "h2": formal_sum_to_json(x.h2()),
    })
}

/// Missing components default to zero.
pub fn bv_element_from_json(v: &Value) -> Result<BVElement> {
    let genus = genus_of(v)?;
    let presentation = Presentation::new(genus)?;
    let h0 = match v.get("h0") {
        Some(c) => rational_of(c)?,
        None => crate::formal::rational(0),
    };
    let empty = || json!({"genus": genus, "terms": []});
    let (alpha, loops) = match v.get("h1") {
        Some(h1) => {
            let alpha = match h1.get("alpha") {
                Some(a) => {
                    let coords = a
                        .as_array()
                        .ok_or_else(|| schema_err("`alpha` must be an array"))?
                        .iter()
                        .map(rational_of)
                        .collect::<Result<Vec<_>>>()?;
                    if coords.len() != 2 * genus {
                        return Err(schema_err(format!(
                            "`alpha` needs {} coordinates, got {}",
                            2 * genus,
                            coords.len()
                        )));
                    }
                    H1Class::new(coords)?
                }
                None => H1Class::zero(genus),
            };
            let loops = formal_sum_terms(h1.get("loops").cloned().as_ref().unwrap_or(&empty()), &presentation)?;
            (alpha, loops)
        }
        None => (H1Class::zero(genus), FormalSum::zero(genus)),
    };
    let h2 = formal_sum_terms(v.get("h2").cloned().as_ref().unwrap_or(&empty()), &presentation)?;
    BVElement::new(h0, alpha, loops, h2)
}

fn counterexample_to_json(c: &Counterexample) -> Value {
    json!({
        "inputs": c.inputs.iter().map(bv_element_to_json).collect::<Vec<_>>(),
        "lhs": bv_element_to_json(&c.lhs),
        "rhs": bv_element_to_json(&c.rhs),
    })
}

pub fn axiom_report_to_json(report: &AxiomReport) -> Value {
    let results: Vec<Value> = report
        .results
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("axiom".into(), json!(r.axiom));
            m.insert("passed".into(), json!(r.passed()));
            m.insert("checks".into(), json!(r.checks));
            m.insert("failures".into(), json!(r.failures));
            m.insert(
                "counterexample".into(),
                r.counterexample.as_ref().map_or(Value::Null, counterexample_to_json),
            );
            Value::Object(m)
        })
        .collect();
    json!({
        "suite": "bv",
        "genus": report.genus,
        "max_class_len": report.max_class_len,
        "samples": report.samples,
        "seed": report.seed,
        "signs": report.signs.to_string(),
        "convention": report.convention.to_string(),
        "passed": report.passed(),
        "results": results,
    })
}

pub fn sign_resolution_to_json(res: &SignResolution) -> Value {
    json!({
        "passing": res.passing.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "default": res.default.to_string(),
        "reports": res.reports.iter().map(axiom_report_to_json).collect::<Vec<_>>(),
    })
}

pub fn goldman_report_to_json(report: &GoldmanReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let witness = c.counterexample.as_ref().map_or(Value::Null, |w| {
                json!({
                    "inputs": w.inputs.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "lhs": formal_sum_to_json(&w.lhs),
                    "rhs": formal_sum_to_json(&w.rhs),
                })
            });
            json!({
                "check": c.name,
                "passed": c.passed(),
                "checks": c.checks,
                "failures": c.failures,
                "counterexample": witness,
            })
        })
        .collect();
    json!({
        "suite": "goldman",
        "genus": report.genus,
        "max_class_len": report.max_class_len,
        "samples": report.samples,
        "seed": report.seed,
        "passed": report.passed(),
        "results": checks,
    })
}
