//! JSON spec files and report fragments.
//!
//! Rationals are written as `"p/q"` strings; floats only ever appear under
//! keys ending in `_numeric`. All maps are ordered, so output is byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cec::AlgebraSpec;
use crate::characteristic::{CharResult, NumericReport, NumericVerdict};
use crate::error::{Error, Result};
use crate::group::{CommutationFactor, Coords, FinAbGroup, GroupElement, ParityMap};
use crate::numeric::Limit;
use crate::ring::{GroupRingElem, Rational};
use crate::series::TruncatedSeries;
use crate::summation::{MethodChi, SumOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub invariant_factors: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsilonSection {
    pub root_order: u64,
    pub exponents: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsSection {
    pub dims: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub group: GroupSection,
    pub parity: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<EpsilonSection>,
    pub algebra: DimsSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<DimsSection>,
}

pub fn parse_element(group: &FinAbGroup, key: &str) -> Result<GroupElement> {
    let coords: Coords = key.parse()?;
    group.element(&coords.0)
}

fn parse_dims(group: &FinAbGroup, dims: &BTreeMap<String, u64>) -> Result<BTreeMap<GroupElement, u64>> {
    let mut out = BTreeMap::new();
    for (k, &d) in dims {
        let a = parse_element(group, k)?;
        if out.insert(a.clone(), d).is_some() {
            return Err(Error::Parse(format!("degree {a} listed twice")));
        }
    }
    Ok(out)
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        let group = FinAbGroup::new(&self.group.invariant_factors)?;
        let parity = ParityMap::new(&group, &self.parity)?;
        let epsilon = self
            .epsilon
            .as_ref()
            .map(|e| CommutationFactor::new(e.root_order, e.exponents.clone()))
            .transpose()?;
        let l = parse_dims(&group, &self.algebra.dims)?;
        let m = self.module.as_ref().map(|m| parse_dims(&group, &m.dims)).transpose()?;
        AlgebraSpec::new(parity, epsilon, l, m)
    }

    /// Canonical form of a spec; the module is always written out.
    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        let dims = |m: &BTreeMap<GroupElement, u64>| DimsSection {
            dims: m.iter().map(|(a, &d)| (a.to_string(), d)).collect(),
        };
        SpecFile {
            group: GroupSection { invariant_factors: spec.group().factors().iter().map(|&m| m as i64).collect() },
            parity: spec.parity().bits().to_vec(),
            epsilon: spec
                .epsilon()
                .map(|e| EpsilonSection { root_order: e.root_order(), exponents: e.exponents().to_vec() }),
            algebra: dims(spec.l_dims()),
            module: Some(dims(spec.m_dims())),
        }
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// `{element: "p/q"}` over the support.
pub fn elem(x: &GroupRingElem) -> Value {
    Value::Object(x.terms().map(|(a, c)| (a.to_string(), rational(c))).collect())
}

pub fn parse_elem(group: &FinAbGroup, v: &Value) -> Result<GroupRingElem> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("coefficient is not an object".into()))?;
    let mut terms = Vec::new();
    for (k, c) in obj {
        let a = parse_element(group, k)?;
        let s = c.as_str().ok_or_else(|| Error::Parse(format!("coefficient of {k} is not a string")))?;
        let r: Rational = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        terms.push((a, r));
    }
    GroupRingElem::from_terms(group, terms)
}

pub fn series(s: &TruncatedSeries) -> Value {
    Value::Array(s.coeffs().iter().map(elem).collect())
}

fn elements(set: impl IntoIterator<Item = GroupElement>) -> Value {
    Value::Array(set.into_iter().map(|a| Value::String(a.to_string())).collect())
}

pub fn char_result(r: &CharResult) -> Value {
    match r {
        CharResult::Exists(v) => json!({ "status": "exists", "value": elem(v), "pretty": v.pretty() }),
        CharResult::Diverges(w) => json!({ "status": "diverges", "witnesses": elements(w.iter().cloned()) }),
        CharResult::ConditionalExists { value, note } => {
            json!({ "status": "conditional", "value": elem(value), "pretty": value.pretty(), "note": note })
        }
        CharResult::NoVerdict { reason } => json!({ "status": "no-verdict", "reason": reason }),
    }
}

fn float_map(m: &BTreeMap<GroupElement, f64>) -> Value {
    Value::Object(m.iter().map(|(a, v)| (a.to_string(), json!(v))).collect())
}

pub fn numeric_report(r: &NumericReport) -> Value {
    let mut out = Map::new();
    out.insert("offsets_numeric".into(), json!(r.offsets));
    let comps: Map<String, Value> = r
        .components
        .iter()
        .map(|(a, l)| {
            let v = match l {
                Limit::Converged(x) => json!({ "verdict": "converged", "limit_numeric": x }),
                Limit::Diverging => json!({ "verdict": "diverging" }),
                Limit::Undecided(x) => json!({ "verdict": "undecided", "estimate_numeric": x }),
            };
            (a.to_string(), v)
        })
        .collect();
    out.insert("components".into(), Value::Object(comps));
    let verdict = match &r.verdict {
        NumericVerdict::Converged(m) => json!({ "status": "converged", "limit_numeric": float_map(m) }),
        NumericVerdict::Diverging(s) => json!({ "status": "diverging", "degrees": elements(s.iter().cloned()) }),
        NumericVerdict::Undecided => json!({ "status": "undecided" }),
    };
    out.insert("verdict".into(), verdict);
    Value::Object(out)
}

fn outcome_name(o: &SumOutcome) -> &'static str {
    match o {
        SumOutcome::Summed(_) => "summed",
        SumOutcome::NotSummable => "not-summable",
        SumOutcome::BudgetExceeded => "budget-exceeded",
    }
}

pub fn method_chi(c: &MethodChi) -> Value {
    match c {
        MethodChi::Exists(m) => json!({ "status": "exists", "value_numeric": float_map(m) }),
        MethodChi::Fails(m) => {
            let comps: Map<String, Value> =
                m.iter().map(|(a, o)| (a.to_string(), Value::String(outcome_name(o).into()))).collect();
            json!({ "status": "fails", "components": comps })
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
