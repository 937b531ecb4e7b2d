//! Power series in `t` with group-ring coefficients.
//!
//! [`ClosedFormSeries`] is the product shape every Chevalley–Eilenberg series
//! takes: factors `(1 + t e^α)^d` for even degrees and `(1 - t e^α)^{-d}` for
//! odd degrees. [`TruncatedSeries`] holds exact coefficients up to an order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupElement, GroupHom};
use crate::numeric;
use crate::ring::{GroupRingElem, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosedFormSeries {
    group: FinAbGroup,
    plus: BTreeMap<GroupElement, u64>,
    minus: BTreeMap<GroupElement, u64>,
}

impl ClosedFormSeries {
    /// The constant series `1`.
    pub fn new(group: &FinAbGroup) -> Self {
        ClosedFormSeries { group: group.clone(), plus: BTreeMap::new(), minus: BTreeMap::new() }
    }

    /// Multiplies in `(1 + t e^α)^d`.
    pub fn with_plus(mut self, a: GroupElement, d: u64) -> Result<Self> {
        self.group.check(&a)?;
        if d > 0 {
            *self.plus.entry(a).or_insert(0) += d;
        }
        Ok(self)
    }

    /// Multiplies in `(1 - t e^α)^{-d}`.
    pub fn with_minus(mut self, a: GroupElement, d: u64) -> Result<Self> {
        self.group.check(&a)?;
        if d > 0 {
            *self.minus.entry(a).or_insert(0) += d;
        }
        Ok(self)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn plus_factors(&self) -> &BTreeMap<GroupElement, u64> {
        &self.plus
    }

    pub fn minus_factors(&self) -> &BTreeMap<GroupElement, u64> {
        &self.minus
    }

    /// Product of two closed forms (multiset union of their factors).
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.clone();
        for (a, &d) in &other.plus {
            *out.plus.entry(a.clone()).or_insert(0) += d;
        }
        for (a, &d) in &other.minus {
            *out.minus.entry(a.clone()).or_insert(0) += d;
        }
        Ok(out)
    }

    /// Regrades every factor along `φ`.
    pub fn pushforward(&self, phi: &GroupHom) -> Result<Self> {
        if phi.source() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = ClosedFormSeries::new(phi.target());
        for (a, &d) in &self.plus {
            out = out.with_plus(phi.apply(a), d)?;
        }
        for (a, &d) in &self.minus {
            out = out.with_minus(phi.apply(a), d)?;
        }
        Ok(out)
    }

    /// Applies the factors to a dense table `table[n][idx]` in place.
    ///
    /// A plus factor contributes `Σ C(d, n) e^{nα} t^n` and a minus factor
    /// `Σ C(d+n-1, n) e^{nα} t^n`; both are produced one linear factor at a
    /// time, which keeps the cost at `O(N·|G|)` per unit of dimension.
    fn apply_factors<T>(&self, table: &mut [Vec<T>])
    where
        T: Clone + for<'a> std::ops::AddAssign<&'a T>,
    {
        let n_el = self.group.order() as usize;
        let shift = |a: &GroupElement| -> Vec<usize> {
            self.group
                .elements()
                .map(|g| self.group.index_of(&self.group.sub(&g, a)))
                .collect()
        };
        for (a, &d) in &self.plus {
            let src = shift(a);
            for _ in 0..d {
                for n in (1..table.len()).rev() {
                    let (lo, hi) = table.split_at_mut(n);
                    let prev = &lo[n - 1];
                    for g in 0..n_el {
                        hi[0][g] += &prev[src[g]];
                    }
                }
            }
        }
        for (a, &d) in &self.minus {
            let src = shift(a);
            for _ in 0..d {
                for n in 1..table.len() {
                    let (lo, hi) = table.split_at_mut(n);
                    let prev = &lo[n - 1];
                    for g in 0..n_el {
                        hi[0][g] += &prev[src[g]];
                    }
                }
            }
        }
    }

    /// Exact coefficients through order `order`.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let n_el = self.group.order() as usize;
        let mut table = vec![vec![BigInt::zero(); n_el]; order + 1];
        table[0][self.group.index_of(&self.group.zero())] = BigInt::from(1);
        self.apply_factors(&mut table);
        let elems: Vec<_> = self.group.elements().collect();
        let coeffs = table
            .into_iter()
            .map(|row| {
                let mut x = GroupRingElem::zero(&self.group);
                for (g, v) in row.into_iter().enumerate() {
                    x.add_term(elems[g].clone(), Rational::from_integer(v));
                }
                x
            })
            .collect();
        TruncatedSeries { group: self.group.clone(), coeffs }
    }

    /// Floating-point coefficients through `order`, for long numeric evaluations.
    pub fn expand_numeric(&self, order: usize) -> NumericSeries {
        let n_el = self.group.order() as usize;
        let mut table = vec![vec![0.0f64; n_el]; order + 1];
        table[0][self.group.index_of(&self.group.zero())] = 1.0;
        self.apply_factors(&mut table);
        NumericSeries::from_rows(&self.group, &table)
    }
}

/// Coefficients `c_0, …, c_N` of `Σ c_n t^n` in `ℚ[G]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    group: FinAbGroup,
    coeffs: Vec<GroupRingElem>,
}

impl TruncatedSeries {
    pub fn zero(group: &FinAbGroup, order: usize) -> Self {
        TruncatedSeries { group: group.clone(), coeffs: vec![GroupRingElem::zero(group); order + 1] }
    }

    pub fn one(group: &FinAbGroup, order: usize) -> Self {
        let mut s = Self::zero(group, order);
        s.coeffs[0] = GroupRingElem::one(group);
        s
    }

    pub fn from_coeffs(group: &FinAbGroup, coeffs: Vec<GroupRingElem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, actual: 0 });
        }
        if coeffs.iter().any(|c| c.group() != group) {
            return Err(Error::GroupMismatch);
        }
        Ok(TruncatedSeries { group: group.clone(), coeffs })
    }

    /// Ordinary series over the trivial group.
    pub fn scalar<I: IntoIterator<Item = Rational>>(coeffs: I) -> Result<Self> {
        let t = FinAbGroup::trivial();
        Self::from_coeffs(&t, coeffs.into_iter().map(|c| GroupRingElem::constant(&t, c)).collect())
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &GroupRingElem {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[GroupRingElem] {
        &self.coeffs
    }

    /// Coefficient sequence of a single `e^α` component.
    pub fn component(&self, a: &GroupElement) -> Vec<Rational> {
        self.coeffs.iter().map(|c| c.coeff(a)).collect()
    }

    /// Scalar coefficients of a series over the trivial group.
    pub fn scalar_coeffs(&self) -> Result<Vec<Rational>> {
        if !self.group.is_trivial() {
            return Err(Error::GroupMismatch);
        }
        Ok(self.component(&self.group.zero()))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries { group: self.group.clone(), coeffs: self.coeffs[..=n].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GroupRingElem::is_zero)
    }

    /// Pointwise sum; the result has the smaller of the two orders.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(TruncatedSeries { group: self.group.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { group: self.group.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let n = self.order().min(other.order());
        let mut coeffs = vec![GroupRingElem::zero(&self.group); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(TruncatedSeries { group: self.group.clone(), coeffs })
    }

    /// Multiplies every coefficient by a constant element of `ℚ[G]`.
    pub fn scale_by(&self, x: &GroupRingElem) -> Result<Self> {
        if x.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let coeffs = self.coeffs.iter().map(|c| c * x).collect();
        Ok(TruncatedSeries { group: self.group.clone(), coeffs })
    }

    /// Multiplication by `t`, keeping the order.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(GroupRingElem::zero(&self.group));
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        TruncatedSeries { group: self.group.clone(), coeffs }
    }

    /// Keeps the coefficients whose index is `≡ residue (mod modulus)`.
    pub fn multisect(&self, modulus: i64, residue: i64) -> Result<Self> {
        if modulus < 1 || residue < 0 || residue >= modulus {
            return Err(Error::BadResidue { modulus, residue });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n as i64 % modulus == residue {
                    c.clone()
                } else {
                    GroupRingElem::zero(&self.group)
                }
            })
            .collect();
        Ok(TruncatedSeries { group: self.group.clone(), coeffs })
    }

    /// Places the `n`-th coefficient of an ordinary series in degree `e^{nα}`.
    pub fn lift_single_degree(&self, group: &FinAbGroup, a: &GroupElement) -> Result<Self> {
        let scalars = self.scalar_coeffs()?;
        group.check(a)?;
        let coeffs = scalars
            .into_iter()
            .enumerate()
            .map(|(n, c)| GroupRingElem::monomial(group, group.scale(a, n as i64), c))
            .collect();
        Ok(TruncatedSeries { group: group.clone(), coeffs })
    }

    /// Pushes every coefficient forward along `φ`.
    pub fn specialize(&self, phi: &GroupHom) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.pushforward(phi)).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries { group: phi.target().clone(), coeffs })
    }

    /// Plain partial sums `Σ_{n ≤ N} c_n t^n`, componentwise.
    pub fn eval_real(&self, t: f64) -> BTreeMap<GroupElement, f64> {
        let mut out = BTreeMap::new();
        for a in self.group.elements() {
            let comp = self.component(&a);
            if comp.iter().all(Zero::is_zero) {
                continue;
            }
            let v = comp.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN));
            out.insert(a, v);
        }
        out
    }

    /// Windowed partial sums (see [`numeric::tapered_eval`]), componentwise.
    pub fn eval_tapered(&self, t: f64) -> BTreeMap<GroupElement, f64> {
        let num = self.to_numeric();
        num.eval_tapered(t)
    }

    pub fn to_numeric(&self) -> NumericSeries {
        let n_el = self.group.order() as usize;
        let mut rows = vec![vec![0.0; n_el]; self.coeffs.len()];
        for (n, c) in self.coeffs.iter().enumerate() {
            for (a, v) in c.terms() {
                rows[n][self.group.index_of(a)] = v.to_f64().unwrap_or(f64::NAN);
            }
        }
        NumericSeries::from_rows(&self.group, &rows)
    }
}

/// Floating-point coefficient streams, one per group element.
#[derive(Clone, Debug)]
pub struct NumericSeries {
    group: FinAbGroup,
    components: Vec<Vec<f64>>,
}

impl NumericSeries {
    fn from_rows(group: &FinAbGroup, rows: &[Vec<f64>]) -> Self {
        let n_el = group.order() as usize;
        let components = (0..n_el).map(|g| rows.iter().map(|r| r[g]).collect()).collect();
        NumericSeries { group: group.clone(), components }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.components.first().map_or(0, |c| c.len().saturating_sub(1))
    }

    pub fn component(&self, a: &GroupElement) -> &[f64] {
        &self.components[self.group.index_of(a)]
    }

    /// Elements whose component is not identically zero.
    pub fn support(&self) -> Vec<GroupElement> {
        self.group
            .elements()
            .filter(|a| self.component(a).iter().any(|&c| c != 0.0))
            .collect()
    }

    /// Multiplies every coefficient by a constant element of `ℚ[G]`.
    pub fn scale_by(&self, x: &GroupRingElem) -> Result<Self> {
        if x.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let len = self.order() + 1;
        let mut components = vec![vec![0.0; len]; self.components.len()];
        for (b, c) in x.terms() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            for a in self.group.elements() {
                let dst = &mut components[self.group.index_of(&self.group.add(&a, b))];
                for (d, s) in dst.iter_mut().zip(self.component(&a)) {
                    *d += c * s;
                }
            }
        }
        Ok(NumericSeries { group: self.group.clone(), components })
    }

    pub fn eval_tapered(&self, t: f64) -> BTreeMap<GroupElement, f64> {
        self.support()
            .into_iter()
            .map(|a| {
                let v = numeric::tapered_eval(self.component(&a), t);
                (a, v)
            })
            .collect()
    }
}

fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Multisection through roots of unity: `(1/r) Σ_j f(ω^j t) ω^{-ij}` with `ω = e^{2πi/r}`.
pub fn multisect_by_roots(f: &TruncatedSeries, modulus: usize, residue: usize, t: f64) -> Result<f64> {
    if modulus == 0 || residue >= modulus {
        return Err(Error::BadResidue { modulus: modulus as i64, residue: residue as i64 });
    }
    let c: Vec<f64> = f.scalar_coeffs()?.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let r = modulus as f64;
    let sum = (0..modulus).fold(Complex64::new(0.0, 0.0), |acc, j| {
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / r);
        let wi = Complex64::from_polar(1.0, -std::f64::consts::TAU * (j * residue) as f64 / r);
        acc + eval_complex(&c, w * t) * wi
    });
    Ok(sum.re / r)
}

/// Lifts an ordinary series to degree `α` through the roots-of-unity formula,
/// evaluated at the real point `t`. Independent of [`TruncatedSeries::lift_single_degree`].
pub fn lift_by_roots(
    f: &TruncatedSeries,
    group: &FinAbGroup,
    a: &GroupElement,
    t: f64,
) -> Result<BTreeMap<GroupElement, f64>> {
    group.check(a)?;
    let k = group.element_order(a) as usize;
    let mut out: BTreeMap<GroupElement, f64> = BTreeMap::new();
    for i in 0..k {
        let v = multisect_by_roots(f, k, i, t)?;
        *out.entry(group.scale(a, i as i64)).or_insert(0.0) += v;
    }
    Ok(out)
}
