//! Exact arithmetic in the rational group ring `ℚ[G]`.
//!
//! Color dimensions, characteristics and their pushforwards all live here.
//! Elements are kept canonical: zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupElement, GroupHom};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Default modulus threshold for [`GroupRingElem::is_zero_divisor_numeric`].
pub const ZERO_DIVISOR_TOL: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    group: FinAbGroup,
    coeffs: BTreeMap<GroupElement, Rational>,
}

impl GroupRingElem {
    pub fn zero(group: &FinAbGroup) -> Self {
        GroupRingElem { group: group.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(group: &FinAbGroup) -> Self {
        Self::constant(group, Rational::one())
    }

    pub fn constant(group: &FinAbGroup, c: Rational) -> Self {
        Self::monomial(group, group.zero(), c)
    }

    /// `e^α`.
    pub fn basis(group: &FinAbGroup, a: GroupElement) -> Self {
        Self::monomial(group, a, Rational::one())
    }

    pub fn monomial(group: &FinAbGroup, a: GroupElement, c: Rational) -> Self {
        let mut x = Self::zero(group);
        x.add_term(a, c);
        x
    }

    pub fn from_terms<I>(group: &FinAbGroup, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, Rational)>,
    {
        let mut x = Self::zero(group);
        for (a, c) in terms {
            group.check(&a)?;
            x.add_term(a, c);
        }
        Ok(x)
    }

    /// Color dimension `Σ (dim V_α) e^α` of a space given by its graded dimensions.
    pub fn from_dims(group: &FinAbGroup, dims: &BTreeMap<GroupElement, u64>) -> Result<Self> {
        Self::from_terms(group, dims.iter().map(|(a, &d)| (a.clone(), int(d as i64))))
    }

    pub(crate) fn add_term(&mut self, a: GroupElement, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(a) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coeff(&self, a: &GroupElement) -> Rational {
        self.coeffs.get(a).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient is a non-negative integer.
    pub fn is_dimension(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = self.clone();
        for (a, c) in &other.coeffs {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Convolution product: the coefficient of `γ` is `Σ_{α+β=γ} x_α y_β`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = Self::zero(&self.group);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                out.add_term(self.group.add(a, b), x * y);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.group);
        }
        GroupRingElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(a, x)| (a.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.group);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of all coefficients: the ring homomorphism `ℚ[G] → ℚ`.
    pub fn augment(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Image under the ring homomorphism `ℚ[G] → ℚ[H]` induced by `φ`.
    pub fn pushforward(&self, phi: &GroupHom) -> Result<Self> {
        if phi.source() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let mut out = Self::zero(phi.target());
        for (a, c) in &self.coeffs {
            out.add_term(phi.apply(a), c.clone());
        }
        Ok(out)
    }

    pub fn to_f64_map(&self) -> BTreeMap<GroupElement, f64> {
        self.coeffs
            .iter()
            .map(|(a, c)| (a.clone(), c.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }

    /// Values of all `|G|` characters, indexed by the dual element in [`FinAbGroup::elements`] order.
    pub fn character_values(&self) -> Vec<Complex64> {
        let e = self.group.exponent() as f64;
        self.group
            .elements()
            .map(|c| {
                self.coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, (a, x)| {
                    let k = self.group.pairing(&c, a) as f64;
                    let phase = std::f64::consts::TAU * k / e;
                    acc + Complex64::from_polar(x.to_f64().unwrap_or(f64::NAN), phase)
                })
            })
            .collect()
    }

    /// Exploratory zero-divisor test: some character of `G` nearly annihilates `self`.
    ///
    /// A nonzero element of `ℚ[G]` is a zero divisor exactly when one of its
    /// character values vanishes; the evaluation is done in floating point.
    pub fn is_zero_divisor_numeric(&self, tol: f64) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.character_values().iter().any(|v| v.norm() < tol))
    }

    /// Pretty form such as `1/2 - 1/2·e^[1]`; `ℚ[Z_2]` elements use `θ`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let is_z2 = self.group.factors() == [2];
        let mut s = String::new();
        for (i, (a, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = if a.is_zero() {
                None
            } else if is_z2 {
                Some("θ".to_string())
            } else {
                Some(format!("e^{a}"))
            };
            match unit {
                None => s.push_str(&mag.to_string()),
                Some(u) if mag.is_one() => s.push_str(&u),
                Some(u) if is_z2 => s.push_str(&format!("{mag}{u}")),
                Some(u) => s.push_str(&format!("{mag}·{u}")),
            }
        }
        s
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q[{:?}]", self.pretty(), self.group)
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

// Operator forms panic on group mismatch; use the `checked_*` methods for fallible input.
impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, rhs: Self) -> GroupRingElem {
        self.checked_add(rhs).expect("group mismatch in addition")
    }
}

impl Sub for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, rhs: Self) -> GroupRingElem {
        self.checked_sub(rhs).expect("group mismatch in subtraction")
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, rhs: Self) -> GroupRingElem {
        self.checked_mul(rhs).expect("group mismatch in multiplication")
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        GroupRingElem {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

/// `χ̄(α) = (1/|α|) Σ_{i<|α|} (-1)^i e^{iα}`, defined for elements of even order.
pub fn scaled_char(group: &FinAbGroup, a: &GroupElement) -> Result<GroupRingElem> {
    group.check(a)?;
    let order = group.element_order(a);
    if order % 2 == 1 {
        return Err(Error::OddOrder(order));
    }
    let w = rat(1, order as i64);
    let mut x = GroupRingElem::zero(group);
    for i in 0..order {
        let c = if i % 2 == 0 { w.clone() } else { -w.clone() };
        x.add_term(group.scale(a, i as i64), c);
    }
    Ok(x)
}

/// An element `a + bθ` of `ℚ[Z_2]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperElem {
    pub even: Rational,
    pub odd: Rational,
}

impl SuperElem {
    pub fn new(even: Rational, odd: Rational) -> Self {
        SuperElem { even, odd }
    }

    pub fn from_group_ring(x: &GroupRingElem) -> Result<Self> {
        if x.group().factors() != [2] {
            return Err(Error::GroupMismatch);
        }
        let z2 = x.group();
        Ok(SuperElem { even: x.coeff(&z2.zero()), odd: x.coeff(&z2.generator(0)) })
    }

    pub fn to_group_ring(&self) -> GroupRingElem {
        let z2 = FinAbGroup::z2();
        let mut x = GroupRingElem::constant(&z2, self.even.clone());
        x.add_term(z2.generator(0), self.odd.clone());
        x
    }

    pub fn mul(&self, other: &Self) -> Self {
        SuperElem {
            even: &self.even * &other.even + &self.odd * &other.odd,
            odd: &self.even * &other.odd + &self.odd * &other.even,
        }
    }
}

impl fmt::Display for SuperElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_group_ring().pretty())
    }
}

/// Exact solution of `a·y = e` inside the ideal `e·ℚ[G]`, where `e` is an idempotent
/// and `a` is a unit of that ideal. Returns `None` if `a` is not invertible there.
pub(crate) fn invert_in_component(a: &GroupRingElem, e: &GroupRingElem) -> Option<GroupRingElem> {
    let g = a.group().clone();
    let n = g.order() as usize;
    let elems: Vec<_> = g.elements().collect();
    let table = g.addition_table();
    // Row γ: Σ_β a_{γ-β} y_β = e_γ.
    let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n + 1]; n];
    for (ai, x) in a.terms() {
        let ai = g.index_of(ai);
        for b in 0..n {
            let row = table[ai * n + b];
            m[row][b] += x;
        }
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[n] = e.coeff(&elems[i]);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..n).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut y = GroupRingElem::zero(&g);
    for (i, &col) in pivots.iter().enumerate() {
        y.add_term(elems[col].clone(), m[i][n].clone());
    }
    Some(&y * e)
}
