//! Finite abelian grading groups in invariant-factor form.
//!
//! A group `Z_{m1} × … × Z_{mk}` is stored by its invariant factors and its
//! elements by reduced residue vectors. Elements are enumerated in
//! lexicographic order of their coordinates, which is also the order of
//! [`FinAbGroup::index_of`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Arc<[u64]>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Raw coordinate vector parsed from `"[1,3]"`; not yet checked against a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coords(pub Vec<i64>);

impl FromStr for Coords {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("element key {s:?} is not a bracketed list")))?;
        if inner.trim().is_empty() {
            return Ok(Coords(Vec::new()));
        }
        inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad residue {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Coords)
    }
}

impl FinAbGroup {
    pub fn new(factors: &[i64]) -> Result<Self> {
        let factors = factors
            .iter()
            .map(|&m| if m >= 1 { Ok(m as u64) } else { Err(Error::NonPositiveFactor(m)) })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinAbGroup { factors: factors.into() })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Arc::from(Vec::new()) }
    }

    /// `Z_m`; panics if `m == 0`.
    pub fn cyclic(m: u64) -> Self {
        assert!(m >= 1, "cyclic group of order zero");
        FinAbGroup { factors: Arc::from(vec![m]) }
    }

    pub fn z2() -> Self {
        Self::cyclic(2)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Least common multiple of the invariant factors.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.factors[i];
        GroupElement(c)
    }

    /// Strict constructor: every residue must already lie in `[0, m_i)`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        let bad = || Error::InvalidElement {
            element: format!("{coords:?}"),
            factors: self.factors.to_vec(),
        };
        if coords.len() != self.rank() {
            return Err(bad());
        }
        coords
            .iter()
            .zip(self.factors.iter())
            .map(|(&c, &m)| if c >= 0 && (c as u64) < m { Ok(c as u64) } else { Err(bad()) })
            .collect::<Result<Vec<_>>>()
            .map(GroupElement)
    }

    /// Reduces arbitrary integers modulo the invariant factors.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), actual: coords.len() });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(self.factors.iter())
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.0.len() == self.rank() && a.0.iter().zip(self.factors.iter()).all(|(&c, &m)| c < m)
    }

    pub(crate) fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::InvalidElement { element: a.to_string(), factors: self.factors.to_vec() })
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(self.factors.iter())
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(self.factors.iter()).map(|(&x, &m)| (m - x) % m).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `n·a` for any integer `n`.
    pub fn scale(&self, a: &GroupElement, n: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(self.factors.iter())
                .map(|(&x, &m)| {
                    let m = m as i128;
                    ((x as i128 * n as i128).rem_euclid(m)) as u64
                })
                .collect(),
        )
    }

    /// Smallest `n ≥ 1` with `n·a = 0`.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(self.factors.iter())
            .fold(1, |acc, (&x, &m)| acc.lcm(&(m / m.gcd(&x))))
    }

    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(self.factors.iter())
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut c = vec![0u64; self.rank()];
        for (slot, &m) in c.iter_mut().zip(self.factors.iter()).rev() {
            *slot = (idx % m as usize) as u64;
            idx /= m as usize;
        }
        GroupElement(c)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    /// `G × H` with the factors of `self` first.
    pub fn product(&self, other: &FinAbGroup) -> FinAbGroup {
        let f: Vec<u64> = self.factors.iter().chain(other.factors.iter()).copied().collect();
        FinAbGroup { factors: f.into() }
    }

    /// Index table for addition; `table[i * |G| + j] = index_of(e_i + e_j)`.
    pub(crate) fn addition_table(&self) -> Vec<usize> {
        let n = self.order() as usize;
        let elems: Vec<_> = self.elements().collect();
        let mut t = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                t.push(self.index_of(&self.add(a, b)));
            }
        }
        t
    }

    /// Pairing of the dual element `c` with `a`, as `k` with `χ_c(a) = exp(2πi k / exponent)`.
    ///
    /// The dual group is identified with `G` itself: `χ_c(a) = Π exp(2πi c_j a_j / m_j)`.
    pub fn pairing(&self, c: &GroupElement, a: &GroupElement) -> u64 {
        let e = self.exponent();
        c.0.iter()
            .zip(&a.0)
            .zip(self.factors.iter())
            .fold(0u64, |acc, ((&cj, &aj), &m)| {
                let term = ((cj as u128 * aj as u128) % m as u128) as u64 * (e / m);
                (acc + term) % e
            })
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Z_1");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z_{m}")).collect();
        f.write_str(&parts.join("×"))
    }
}

/// Homomorphism `G → Z_2` splitting the group into even and odd elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityMap {
    group: FinAbGroup,
    bits: Vec<u8>,
}

impl ParityMap {
    pub fn new(group: &FinAbGroup, bits: &[u8]) -> Result<Self> {
        if bits.len() != group.rank() {
            return Err(Error::LengthMismatch { expected: group.rank(), actual: bits.len() });
        }
        let mut norm = Vec::with_capacity(bits.len());
        for (i, (&b, &m)) in bits.iter().zip(group.factors()).enumerate() {
            if b > 1 {
                return Err(Error::Parse(format!("parity bit {b} is not 0 or 1")));
            }
            if b == 1 && m % 2 == 1 {
                return Err(Error::IllDefinedParity { generator: i, order: m });
            }
            norm.push(b);
        }
        Ok(ParityMap { group: group.clone(), bits: norm })
    }

    pub fn all_even(group: &FinAbGroup) -> Self {
        ParityMap { group: group.clone(), bits: vec![0; group.rank()] }
    }

    /// The superalgebra split on `Z_2`.
    pub fn super_parity() -> Self {
        ParityMap { group: FinAbGroup::z2(), bits: vec![1] }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn parity(&self, a: &GroupElement) -> u8 {
        let s: u64 = self.bits.iter().zip(a.coords()).map(|(&b, &c)| b as u64 * c).sum();
        (s % 2) as u8
    }

    pub fn is_odd(&self, a: &GroupElement) -> bool {
        self.parity(a) == 1
    }

    pub fn even_elements(&self) -> Vec<GroupElement> {
        self.group.elements().filter(|a| !self.is_odd(a)).collect()
    }

    pub fn odd_elements(&self) -> Vec<GroupElement> {
        self.group.elements().filter(|a| self.is_odd(a)).collect()
    }

    /// The parity as a homomorphism onto `Z_2`.
    pub fn as_hom(&self) -> GroupHom {
        let z2 = FinAbGroup::z2();
        let images = self.bits.iter().map(|&b| GroupElement(vec![b as u64])).collect();
        GroupHom::new(&self.group, &z2, images).expect("parity bits define a homomorphism")
    }
}

/// Bicharacter `ε(g_i, g_j) = ζ^{B_ij}` for a fixed primitive root `ζ` of order `root_order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutationFactor {
    root_order: u64,
    exponents: Vec<Vec<i64>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FactorViolation {
    /// Matrix shape does not match the number of generators.
    Shape { expected: usize },
    /// `ε(g_i, g_j)^{m_i} ≠ 1` (or `^{m_j}`), so the matrix does not descend to the group.
    NotWellDefined { i: usize, j: usize },
    /// `ε(g_i, g_j) ε(g_j, g_i) ≠ 1`.
    Skew { i: usize, j: usize },
    /// `ε(g_i, g_i) ≠ (-1)^{parity(g_i)}`.
    Diagonal { i: usize },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FactorReport {
    pub violations: Vec<FactorViolation>,
}

impl FactorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CommutationFactor {
    pub fn new(root_order: u64, exponents: Vec<Vec<i64>>) -> Result<Self> {
        if root_order == 0 {
            return Err(Error::InvalidSpec("root order must be positive".into()));
        }
        Ok(CommutationFactor { root_order, exponents })
    }

    /// `ε(α, β) = (-1)^{αβ}` on `Z_2`.
    pub fn super_sign() -> Self {
        CommutationFactor { root_order: 2, exponents: vec![vec![1]] }
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.exponents
    }

    /// Exponent `k` with `ε(a, b) = ζ^k`, reduced modulo the root order.
    pub fn exponent(&self, a: &GroupElement, b: &GroupElement) -> u64 {
        let e = self.root_order as i128;
        let mut acc: i128 = 0;
        for (i, &ai) in a.coords().iter().enumerate() {
            for (j, &bj) in b.coords().iter().enumerate() {
                acc = (acc + self.exponents[i][j] as i128 * ai as i128 * bj as i128).rem_euclid(e);
            }
        }
        acc as u64
    }

    pub fn validate(&self, group: &FinAbGroup, parity: &ParityMap) -> FactorReport {
        let k = group.rank();
        let mut report = FactorReport::default();
        if self.exponents.len() != k || self.exponents.iter().any(|row| row.len() != k) {
            report.violations.push(FactorViolation::Shape { expected: k });
            return report;
        }
        let e = self.root_order as i128;
        let b = |i: usize, j: usize| self.exponents[i][j] as i128;
        let m = group.factors();
        for i in 0..k {
            for j in 0..k {
                let ok = (m[i] as i128 * b(i, j)).rem_euclid(e) == 0
                    && (m[j] as i128 * b(i, j)).rem_euclid(e) == 0;
                if !ok {
                    report.violations.push(FactorViolation::NotWellDefined { i, j });
                }
            }
        }
        for i in 0..k {
            for j in i..k {
                if (b(i, j) + b(j, i)).rem_euclid(e) != 0 {
                    report.violations.push(FactorViolation::Skew { i, j });
                }
            }
        }
        // Given skew-symmetry, ε(α, α) = Π ε(g_i, g_i)^{a_i}, so generators suffice.
        for i in 0..k {
            let d = b(i, i).rem_euclid(e);
            let expected = if parity.bits()[i] == 1 {
                if e % 2 == 0 { Some(e / 2) } else { None }
            } else {
                Some(0)
            };
            if expected != Some(d) {
                report.violations.push(FactorViolation::Diagonal { i });
            }
        }
        report
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: &FinAbGroup, target: &FinAbGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::LengthMismatch { expected: source.rank(), actual: images.len() });
        }
        for (i, (img, &m)) in images.iter().zip(source.factors()).enumerate() {
            target.check(img)?;
            if !target.scale(img, m as i64).is_zero() {
                return Err(Error::InvalidHom { generator: i, order: m });
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(group: &FinAbGroup) -> Self {
        let images = (0..group.rank()).map(|i| group.generator(i)).collect();
        GroupHom { source: group.clone(), target: group.clone(), images }
    }

    pub fn to_trivial(group: &FinAbGroup) -> Self {
        let t = FinAbGroup::trivial();
        GroupHom { source: group.clone(), target: t.clone(), images: vec![t.zero(); group.rank()] }
    }

    /// Projection `G × H → H` where `G` supplies the first `left_rank` factors.
    pub fn projection_right(product: &FinAbGroup, left_rank: usize) -> Result<Self> {
        let right = FinAbGroup::new(
            &product.factors()[left_rank..].iter().map(|&m| m as i64).collect::<Vec<_>>(),
        )?;
        let images = (0..product.rank())
            .map(|i| if i < left_rank { right.zero() } else { right.generator(i - left_rank) })
            .collect();
        GroupHom::new(product, &right, images)
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        let mut acc = self.target.zero();
        for (img, &c) in self.images.iter().zip(a.coords()) {
            acc = self.target.add(&acc, &self.target.scale(img, c as i64));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &FinAbGroup, c: &[i64]) -> GroupElement {
        g.element(c).unwrap()
    }

    #[test]
    fn make_group_examples() {
        let t = FinAbGroup::new(&[]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.elements().collect::<Vec<_>>(), vec![t.zero()]);
        let z2 = FinAbGroup::new(&[2]).unwrap();
        assert_eq!(z2.elements().map(|e| e.to_string()).collect::<Vec<_>>(), ["[0]", "[1]"]);
        assert_eq!(FinAbGroup::new(&[4]).unwrap().order(), 4);
        assert_eq!(FinAbGroup::new(&[3, 0]), Err(Error::NonPositiveFactor(0)));
        assert_eq!(FinAbGroup::new(&[-2]), Err(Error::NonPositiveFactor(-2)));
    }

    #[test]
    fn element_orders() {
        let z4 = FinAbGroup::cyclic(4);
        assert_eq!(z4.element_order(&el(&z4, &[1])), 4);
        assert_eq!(z4.element_order(&el(&z4, &[2])), 2);
        assert_eq!(z4.element_order(&z4.zero()), 1);
        let v4 = FinAbGroup::new(&[2, 2]).unwrap();
        assert_eq!(v4.element_order(&el(&v4, &[1, 1])), 2);
        let g = FinAbGroup::new(&[2, 3]).unwrap();
        assert_eq!(g.element_order(&el(&g, &[1, 1])), 6);
    }

    #[test]
    fn index_round_trip_is_lexicographic() {
        let g = FinAbGroup::new(&[2, 3, 4]).unwrap();
        let elems: Vec<_> = g.elements().collect();
        assert_eq!(elems.len(), 24);
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(g.index_of(e), i);
        }
    }

    #[test]
    fn parity_examples() {
        let z2 = FinAbGroup::z2();
        let p = ParityMap::new(&z2, &[1]).unwrap();
        assert!(!p.is_odd(&z2.zero()));
        assert!(p.is_odd(&el(&z2, &[1])));
        let z3 = FinAbGroup::cyclic(3);
        let p3 = ParityMap::new(&z3, &[0]).unwrap();
        assert!(p3.odd_elements().is_empty());
        assert_eq!(ParityMap::new(&z3, &[1]), Err(Error::IllDefinedParity { generator: 0, order: 3 }));
        assert!(matches!(ParityMap::new(&z3, &[0, 0]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn commutation_factor_examples() {
        let z2 = FinAbGroup::z2();
        let p = ParityMap::new(&z2, &[1]).unwrap();
        assert!(CommutationFactor::super_sign().validate(&z2, &p).is_valid());

        let trivial = CommutationFactor::new(2, vec![vec![0]]).unwrap();
        assert_eq!(trivial.validate(&z2, &p).violations, vec![FactorViolation::Diagonal { i: 0 }]);

        let z4 = FinAbGroup::cyclic(4);
        let p4 = ParityMap::new(&z4, &[1]).unwrap();
        let quarter = CommutationFactor::new(4, vec![vec![1]]).unwrap();
        let report = quarter.validate(&z4, &p4);
        assert!(report.violations.contains(&FactorViolation::Skew { i: 0, j: 0 }));

        let wrong_shape = CommutationFactor::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(
            wrong_shape.validate(&z2, &p).violations,
            vec![FactorViolation::Shape { expected: 1 }]
        );
    }

    #[test]
    fn commutation_factor_must_descend_to_group() {
        // ζ_4 on a Z_2 generator: ε(g, g)^2 = ζ_4^2 ≠ 1.
        let z2 = FinAbGroup::z2();
        let p = ParityMap::all_even(&z2);
        let f = CommutationFactor::new(4, vec![vec![1]]).unwrap();
        assert!(f.validate(&z2, &p).violations.contains(&FactorViolation::NotWellDefined { i: 0, j: 0 }));
    }

    #[test]
    fn hom_examples() {
        let z4 = FinAbGroup::cyclic(4);
        let z2 = FinAbGroup::z2();
        let phi = GroupHom::new(&z4, &z2, vec![el(&z2, &[1])]).unwrap();
        assert_eq!(phi.apply(&el(&z4, &[3])), el(&z2, &[1]));
        let id = GroupHom::identity(&z4);
        for a in z4.elements() {
            assert_eq!(id.apply(&a), a);
        }
        let triv = GroupHom::to_trivial(&z4);
        assert_eq!(triv.apply(&el(&z4, &[2])).coords(), &[] as &[u64]);
        // Z_2 → Z_4 sending 1 ↦ 1 is not a homomorphism.
        assert_eq!(
            GroupHom::new(&z2, &z4, vec![el(&z4, &[1])]),
            Err(Error::InvalidHom { generator: 0, order: 2 })
        );
        assert!(GroupHom::new(&z2, &z4, vec![el(&z4, &[2])]).is_ok());
    }

    #[test]
    fn coords_parse() {
        assert_eq!("[1, 3]".parse::<Coords>().unwrap(), Coords(vec![1, 3]));
        assert_eq!("[]".parse::<Coords>().unwrap(), Coords(vec![]));
        assert!("1,3".parse::<Coords>().is_err());
        assert!("[a]".parse::<Coords>().is_err());
    }

    #[test]
    fn pairing_matches_definition() {
        let g = FinAbGroup::new(&[2, 4]).unwrap();
        // exponent 4; χ_(1,1)(1,1) = exp(2πi (1/2 + 1/4)) → k = 3
        assert_eq!(g.pairing(&el(&g, &[1, 1]), &el(&g, &[1, 1])), 3);
        assert_eq!(g.pairing(&g.zero(), &el(&g, &[1, 3])), 0);
    }
}
