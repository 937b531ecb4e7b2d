//! Euler characteristics as Abel limits at `t = -1`, exact and numeric.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::cec::{complex_closed_form, AlgebraSpec};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::limit::{laurent_at_minus_one, limit_at_minus_one, ExactLimit};
use crate::numeric::{self, AbelSchedule, Limit};
use crate::ring::{scaled_char, GroupRingElem, Rational};
use crate::series::{ClosedFormSeries, NumericSeries, TruncatedSeries};

/// Which ring the characteristic is taken in: `ℚ`, `ℚ[Z_2]` or `ℚ[G]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Variant {
    Ordinary,
    Super,
    Color,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Ordinary, Variant::Super, Variant::Color];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Ordinary => "ordinary",
            Variant::Super => "super",
            Variant::Color => "color",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(Variant::Ordinary),
            "super" => Ok(Variant::Super),
            "color" => Ok(Variant::Color),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharResult {
    Exists(GroupRingElem),
    /// Degrees whose coefficient series has no limit.
    Diverges(BTreeSet<GroupElement>),
    ConditionalExists { value: GroupRingElem, note: String },
    NoVerdict { reason: String },
}

impl CharResult {
    pub fn value(&self) -> Option<&GroupRingElem> {
        match self {
            CharResult::Exists(v) | CharResult::ConditionalExists { value: v, .. } => Some(v),
            _ => None,
        }
    }
}

pub const CONDITIONAL_NOTE: &str = "conditional on existence of χ(B*)";

fn half_pow(n: u64) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2).pow(n as u32))
}

fn from_engine(cf: &ClosedFormSeries) -> CharResult {
    match limit_at_minus_one(cf) {
        ExactLimit::Exists(v) => CharResult::Exists(v),
        ExactLimit::Diverges { witnesses, .. } => CharResult::Diverges(witnesses),
    }
}

/// Characteristic of `⋀*_ε L` in the ring of `v`.
///
/// The dimension tests and closed values are the ones of the ordinary, super
/// and color cases; the color test `dim L_0 ≥ dim L_odd` is sufficient but not
/// necessary, so below it the component engine decides.
pub fn abel_exact_complex(spec: &AlgebraSpec, v: Variant) -> CharResult {
    let phi = spec.variant_hom(v);
    let ring = phi.target().clone();
    let (even, odd) = (spec.dim_even(), spec.dim_odd());
    match v {
        Variant::Ordinary => {
            let value = if even > 0 { Rational::from_integer(0.into()) } else { half_pow(odd) };
            CharResult::Exists(GroupRingElem::constant(&ring, value))
        }
        Variant::Super if even > odd => CharResult::Exists(GroupRingElem::zero(&ring)),
        Variant::Super if even == odd => {
            let half = Rational::new(1.into(), 2.into());
            let factor = GroupRingElem::from_terms(&ring, [(ring.zero(), half.clone()), (ring.generator(0), -half)])
                .expect("Z_2 elements");
            CharResult::Exists(factor.pow(spec.supported_odd().len() as u32))
        }
        Variant::Color if spec.dim_zero() > odd => CharResult::Exists(GroupRingElem::zero(&ring)),
        Variant::Color if spec.dim_zero() == odd => {
            let g = spec.group();
            let mut value = GroupRingElem::one(g);
            for (a, &d) in spec.l_dims() {
                if spec.parity().is_odd(a) {
                    value = &value * &scaled_char(g, a).expect("odd degrees have even order");
                } else if !a.is_zero() {
                    let f = &GroupRingElem::one(g) - &GroupRingElem::basis(g, a.clone());
                    value = &value * &f.pow(d as u32);
                }
            }
            CharResult::Exists(value)
        }
        _ => from_engine(&complex_closed_form(spec).pushforward(&phi).expect("hom from the spec group")),
    }
}

/// Characteristic of the whole complex `C*(L, M)`: the series is multiplied by
/// `dim M`, which may also annihilate a divergent part.
pub fn abel_exact_with_module(spec: &AlgebraSpec, v: Variant) -> CharResult {
    let phi = spec.variant_hom(v);
    let m = spec.dim_m().pushforward(&phi).expect("hom from the spec group");
    match abel_exact_complex(spec, v) {
        CharResult::Exists(x) => CharResult::Exists(&x * &m),
        _ => {
            let cf = complex_closed_form(spec).pushforward(&phi).expect("hom from the spec group");
            let laurent = laurent_at_minus_one(&cf);
            let principal: BTreeSet<GroupElement> = laurent
                .iter()
                .filter(|(&k, _)| k < 0)
                .flat_map(|(_, c)| (c * &m).support().cloned().collect::<Vec<_>>())
                .collect();
            if principal.is_empty() {
                let c0 = laurent.get(&0).cloned().unwrap_or_else(|| GroupRingElem::zero(m.group()));
                CharResult::Exists(&c0 * &m)
            } else {
                CharResult::Diverges(principal)
            }
        }
    }
}

/// The same characteristic computed only by the component engine.
pub fn engine_exact_complex(spec: &AlgebraSpec, v: Variant) -> CharResult {
    let phi = spec.variant_hom(v);
    from_engine(&complex_closed_form(spec).pushforward(&phi).expect("hom from the spec group"))
}

#[derive(Clone, Debug, PartialEq)]
pub enum NumericVerdict {
    /// Every component converged; values for all group elements.
    Converged(BTreeMap<GroupElement, f64>),
    Diverging(BTreeSet<GroupElement>),
    Undecided,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericReport {
    pub offsets: Vec<f64>,
    /// `f(-1 + δ_k)` per component along the schedule.
    pub values: BTreeMap<GroupElement, Vec<f64>>,
    pub components: BTreeMap<GroupElement, Limit>,
    pub verdict: NumericVerdict,
}

/// Componentwise evaluation at `t = -1 + δ_k` and classification of the limit.
pub fn abel_numeric(f: &NumericSeries, schedule: &AbelSchedule) -> Result<NumericReport> {
    if f.order() < schedule.max_order() {
        return Err(Error::OrderTooSmall { needed: schedule.max_order(), have: f.order() });
    }
    let g = f.group().clone();
    let mut values = BTreeMap::new();
    let mut components = BTreeMap::new();
    for a in g.elements() {
        let c = f.component(&a);
        let vals: Vec<f64> = schedule
            .offsets
            .iter()
            .zip(&schedule.orders)
            .map(|(&d, &n)| numeric::tapered_eval(&c[..=n.min(c.len() - 1)], -1.0 + d))
            .collect();
        let lim = if c.iter().all(|&x| x == 0.0) {
            Limit::Converged(0.0)
        } else {
            numeric::classify(&schedule.offsets, &vals, schedule.tol, schedule.blowup)
        };
        values.insert(a.clone(), vals);
        components.insert(a, lim);
    }
    let diverging: BTreeSet<_> =
        components.iter().filter(|(_, l)| **l == Limit::Diverging).map(|(a, _)| a.clone()).collect();
    let verdict = if !diverging.is_empty() {
        NumericVerdict::Diverging(diverging)
    } else if components.values().all(|l| matches!(l, Limit::Converged(_))) {
        NumericVerdict::Converged(components.iter().map(|(a, l)| (a.clone(), l.estimate())).collect())
    } else {
        NumericVerdict::Undecided
    };
    Ok(NumericReport { offsets: schedule.offsets.clone(), values, components, verdict })
}

pub fn abel_numeric_exact(f: &TruncatedSeries, schedule: &AbelSchedule) -> Result<NumericReport> {
    abel_numeric(&f.to_numeric(), schedule)
}

/// Numeric limit of the variant series of `C*(L, M)`, expanded just far enough for `schedule`.
pub fn abel_numeric_complex(spec: &AlgebraSpec, v: Variant, schedule: &AbelSchedule) -> NumericReport {
    let phi = spec.variant_hom(v);
    let cf = complex_closed_form(spec).pushforward(&phi).expect("hom from the spec group");
    let m = spec.dim_m().pushforward(&phi).expect("hom from the spec group");
    let series = cf.expand_numeric(schedule.max_order()).scale_by(&m).expect("same group");
    abel_numeric(&series, schedule).expect("expanded to the schedule's order")
}

/// Whether the variant's dimension hypothesis holds.
pub fn dimension_condition(spec: &AlgebraSpec, v: Variant) -> bool {
    match v {
        Variant::Ordinary => true,
        Variant::Super => spec.dim_even() >= spec.dim_odd(),
        Variant::Color => spec.dim_zero() >= spec.dim_odd(),
    }
}

/// Characteristic of `C*(L, M)`, given that the caller vouches for `χ(B*)`.
pub fn theorem_main(spec: &AlgebraSpec, v: Variant, assume_boundary_char_exists: bool) -> CharResult {
    if !assume_boundary_char_exists {
        return CharResult::NoVerdict {
            reason: "existence of χ(B*) was not asserted; it cannot be decided from dimensions".into(),
        };
    }
    if !dimension_condition(spec, v) {
        let need = match v {
            Variant::Super => "dim L_even ≥ dim L_odd",
            _ => "dim L_0 ≥ dim L_odd",
        };
        return CharResult::NoVerdict { reason: format!("dimension condition {need} fails") };
    }
    let base = abel_exact_complex(spec, v);
    let value = base.value().expect("exists under the dimension condition");
    let m = spec.dim_m().pushforward(&spec.variant_hom(v)).expect("hom from the spec group");
    CharResult::ConditionalExists { value: value * &m, note: CONDITIONAL_NOTE.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Vanishes,
    NoVerdict { reason: String },
}

/// Vanishing of the cohomology characteristic when `H*(L, M)` is finite-dimensional.
pub fn corollary_verdict(spec: &AlgebraSpec, v: Variant, h_finite_dimensional: bool) -> Verdict {
    if !h_finite_dimensional {
        return Verdict::NoVerdict { reason: "finite-dimensional cohomology was not asserted".into() };
    }
    let (holds, need) = match v {
        Variant::Ordinary => (spec.dim_even() > 0, "L_even ≠ 0"),
        Variant::Super => (spec.dim_even() > spec.dim_odd(), "dim L_even > dim L_odd"),
        Variant::Color => (spec.dim_zero() > spec.dim_odd(), "dim L_0 > dim L_odd"),
    };
    if holds {
        Verdict::Vanishes
    } else {
        Verdict::NoVerdict { reason: format!("requires {need}") }
    }
}
