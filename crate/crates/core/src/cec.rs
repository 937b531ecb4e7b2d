//! Dimension data of the cochain complex `Hom(⋀*_ε L, M)`.
//!
//! Only graded dimensions are modelled; the differential never is.

use std::collections::BTreeMap;

use crate::characteristic::Variant;
use crate::error::{Error, Result};
use crate::group::{CommutationFactor, FinAbGroup, GroupElement, GroupHom, ParityMap};
use crate::ring::GroupRingElem;
use crate::series::{ClosedFormSeries, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    group: FinAbGroup,
    parity: ParityMap,
    epsilon: Option<CommutationFactor>,
    l_dims: BTreeMap<GroupElement, u64>,
    m_dims: BTreeMap<GroupElement, u64>,
}

impl AlgebraSpec {
    /// `m_dims = None` means the trivial module, one dimension in degree 0.
    pub fn new(
        parity: ParityMap,
        epsilon: Option<CommutationFactor>,
        l_dims: BTreeMap<GroupElement, u64>,
        m_dims: Option<BTreeMap<GroupElement, u64>>,
    ) -> Result<Self> {
        let group = parity.group().clone();
        if let Some(eps) = &epsilon {
            let report = eps.validate(&group, &parity);
            if !report.is_valid() {
                return Err(Error::InvalidSpec(format!(
                    "commutation factor does not match the parity: {:?}",
                    report.violations
                )));
            }
        }
        let m_dims = m_dims.unwrap_or_else(|| BTreeMap::from([(group.zero(), 1)]));
        for a in l_dims.keys().chain(m_dims.keys()) {
            group.check(a)?;
        }
        let strip = |m: BTreeMap<GroupElement, u64>| m.into_iter().filter(|&(_, d)| d > 0).collect();
        Ok(AlgebraSpec { group, parity, epsilon, l_dims: strip(l_dims), m_dims: strip(m_dims) })
    }

    /// Lie superalgebra with `even` dimensions in degree 0 and `odd` in degree θ.
    pub fn superalgebra(even: u64, odd: u64) -> Self {
        let g = FinAbGroup::z2();
        let dims = BTreeMap::from([(g.zero(), even), (g.generator(0), odd)]);
        AlgebraSpec::new(ParityMap::super_parity(), Some(CommutationFactor::super_sign()), dims, None)
            .expect("super sign is valid on Z_2")
    }

    /// Same algebra with a different module.
    pub fn with_module_dims(&self, m_dims: BTreeMap<GroupElement, u64>) -> Result<Self> {
        AlgebraSpec::new(self.parity.clone(), self.epsilon.clone(), self.l_dims.clone(), Some(m_dims))
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn parity(&self) -> &ParityMap {
        &self.parity
    }

    pub fn epsilon(&self) -> Option<&CommutationFactor> {
        self.epsilon.as_ref()
    }

    pub fn l_dims(&self) -> &BTreeMap<GroupElement, u64> {
        &self.l_dims
    }

    pub fn m_dims(&self) -> &BTreeMap<GroupElement, u64> {
        &self.m_dims
    }

    pub fn dim_even(&self) -> u64 {
        self.l_dims.iter().filter(|(a, _)| !self.parity.is_odd(a)).map(|(_, d)| d).sum()
    }

    pub fn dim_odd(&self) -> u64 {
        self.l_dims.iter().filter(|(a, _)| self.parity.is_odd(a)).map(|(_, d)| d).sum()
    }

    /// Dimension of the genuine zero part `L_0`, not of `L_even`.
    pub fn dim_zero(&self) -> u64 {
        self.l_dims.get(&self.group.zero()).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.l_dims.values().sum()
    }

    pub fn dim_l(&self) -> GroupRingElem {
        GroupRingElem::from_dims(&self.group, &self.l_dims).expect("keys validated")
    }

    pub fn dim_m(&self) -> GroupRingElem {
        GroupRingElem::from_dims(&self.group, &self.m_dims).expect("keys validated")
    }

    /// Odd degrees carrying a nonzero part of `L`.
    pub fn supported_odd(&self) -> Vec<GroupElement> {
        self.l_dims.keys().filter(|a| self.parity.is_odd(a)).cloned().collect()
    }

    /// Default truncation order for expansions of this complex.
    pub fn default_order(&self) -> usize {
        (4 * self.group.order() * self.total_dim()).max(32) as usize
    }

    /// Regrading homomorphism from `G` to the ring of the variant.
    pub fn variant_hom(&self, v: Variant) -> GroupHom {
        match v {
            Variant::Ordinary => GroupHom::to_trivial(&self.group),
            Variant::Super => self.parity.as_hom(),
            Variant::Color => GroupHom::identity(&self.group),
        }
    }
}

/// `Π_{α even} (1 + t e^α)^{dim L_α} · Π_{α odd} (1 - t e^α)^{-dim L_α}`.
pub fn complex_closed_form(spec: &AlgebraSpec) -> ClosedFormSeries {
    let mut cf = ClosedFormSeries::new(spec.group());
    for (a, &d) in spec.l_dims() {
        cf = if spec.parity().is_odd(a) {
            cf.with_minus(a.clone(), d)
        } else {
            cf.with_plus(a.clone(), d)
        }
        .expect("keys validated");
    }
    cf
}

/// Multiplies every coefficient by `dim_G M`.
pub fn with_module(series: &TruncatedSeries, spec: &AlgebraSpec) -> Result<TruncatedSeries> {
    series.scale_by(&spec.dim_m())
}

/// Graded dimensions of `C^0, …, C^order`.
pub fn complex_series(spec: &AlgebraSpec, order: usize) -> TruncatedSeries {
    with_module(&complex_closed_form(spec).expand(order), spec).expect("same group")
}

/// The complex series regraded for the variant.
pub fn variant_series(spec: &AlgebraSpec, v: Variant, order: usize) -> TruncatedSeries {
    complex_series(spec, order).specialize(&spec.variant_hom(v)).expect("hom from the spec group")
}

pub fn cochain_dim(spec: &AlgebraSpec, n: usize) -> GroupRingElem {
    complex_series(spec, n).coeff(n).clone()
}

/// Graded dimensions `(C^n, Z^n, B^n, H^n)` of a finite complex.
///
/// `B^n` is the image of `C^{n-1}`, so `C^n = Z^n + B^{n+1}` and `Z^n = B^n + H^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticComplex {
    group: FinAbGroup,
    levels: Vec<[GroupRingElem; 4]>,
}

impl SyntheticComplex {
    /// Derives `Z` and `C` from freely chosen coboundary and cohomology dimensions.
    pub fn from_b_h(group: &FinAbGroup, b: Vec<GroupRingElem>, h: Vec<GroupRingElem>) -> Result<Self> {
        if b.len() != h.len() {
            return Err(Error::LengthMismatch { expected: b.len(), actual: h.len() });
        }
        let zero = GroupRingElem::zero(group);
        let levels = (0..b.len())
            .map(|n| {
                let z = &b[n] + &h[n];
                let c = &z + b.get(n + 1).unwrap_or(&zero);
                [c, z, b[n].clone(), h[n].clone()]
            })
            .collect();
        SyntheticComplex::from_parts(group, levels)
    }

    /// Accepts `[C, Z, B, H]` per degree and re-validates both exact sequences.
    pub fn from_parts(group: &FinAbGroup, levels: Vec<[GroupRingElem; 4]>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InconsistentComplex("empty complex".into()));
        }
        let zero = GroupRingElem::zero(group);
        for (n, [c, z, b, h]) in levels.iter().enumerate() {
            for x in [c, z, b, h] {
                if x.group() != group {
                    return Err(Error::GroupMismatch);
                }
                if !x.is_dimension() {
                    return Err(Error::InconsistentComplex(format!("degree {n}: {x} is not a dimension")));
                }
            }
            let b_next = levels.get(n + 1).map_or(&zero, |l| &l[2]);
            if *c != z + b_next {
                return Err(Error::InconsistentComplex(format!("degree {n}: C ≠ Z + B[n+1]")));
            }
            if *z != b + h {
                return Err(Error::InconsistentComplex(format!("degree {n}: Z ≠ B + H")));
            }
        }
        if !levels[0][2].is_zero() {
            return Err(Error::InconsistentComplex("B^0 must vanish".into()));
        }
        Ok(SyntheticComplex { group: group.clone(), levels })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    fn series(&self, k: usize) -> TruncatedSeries {
        let coeffs = self.levels.iter().map(|l| l[k].clone()).collect();
        TruncatedSeries::from_coeffs(&self.group, coeffs).expect("nonempty, one group")
    }

    pub fn c_series(&self) -> TruncatedSeries {
        self.series(0)
    }

    pub fn h_series(&self) -> TruncatedSeries {
        self.series(3)
    }

    /// Coboundaries graded by the degree they come from: `Σ dim B^{n+1} t^n`.
    pub fn b_series(&self) -> TruncatedSeries {
        let zero = GroupRingElem::zero(&self.group);
        let coeffs = (0..self.levels.len())
            .map(|n| self.levels.get(n + 1).map_or(zero.clone(), |l| l[2].clone()))
            .collect();
        TruncatedSeries::from_coeffs(&self.group, coeffs).expect("nonempty, one group")
    }

    /// `χ(C) - χ(H) - (1 + t)χ(B)`; zero for every consistent complex.
    pub fn check_one_plus_t(&self) -> TruncatedSeries {
        let b = self.b_series();
        let one_plus_t = b.checked_add(&b.shift()).expect("same group");
        self.c_series()
            .checked_sub(&self.h_series())
            .and_then(|d| d.checked_sub(&one_plus_t))
            .expect("same group")
    }
}
