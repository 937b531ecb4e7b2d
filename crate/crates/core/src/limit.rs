//! Exact behaviour of a closed-form series at `t = -1`.
//!
//! `ℚ[G]` splits as a product of fields `e_C·ℚ[G]`, one for each Galois class
//! `C` of characters (equivalently, each cyclic quotient of `G`). Inside a
//! component `e^α` acts as `1`, as `-1` or as neither, so with `s = 1 + t` a
//! closed form becomes `s^{-Z}·P(s)` with `P` a power series over the
//! component. The Laurent coefficients at negative powers are the divergent
//! part; the `s^0` coefficient is the limit.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::group::{FinAbGroup, GroupElement};
use crate::ring::{invert_in_component, GroupRingElem, Rational};
use crate::series::ClosedFormSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactLimit {
    Exists(GroupRingElem),
    /// `principal` maps each negative power `k` of `(1 + t)` to its coefficient.
    Diverges { witnesses: BTreeSet<GroupElement>, principal: BTreeMap<i64, GroupRingElem> },
}

/// One rational idempotent with the data needed to read off `χ(α)` on it.
#[derive(Clone, Debug)]
pub struct Component {
    /// A character in the class, as a dual element.
    pub rep: GroupElement,
    /// Order `m` of the characters in the class.
    pub order: u64,
    pub idempotent: GroupRingElem,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sign {
    One,
    MinusOne,
    Other,
}

impl Component {
    fn sign(&self, group: &FinAbGroup, a: &GroupElement) -> Sign {
        let step = group.exponent() / self.order;
        let j = group.pairing(&self.rep, a) / step;
        if j == 0 {
            Sign::One
        } else if 2 * j == self.order {
            Sign::MinusOne
        } else {
            Sign::Other
        }
    }
}

fn totient(n: u64) -> u64 {
    let (mut n, mut out, mut p) = (n, n, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut out, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// Ramanujan sum `c_m(j) = Σ_{u ∈ (ℤ/m)^×} ζ_m^{uj}`.
fn ramanujan(m: u64, j: u64) -> i64 {
    let g = j.gcd(&m);
    mobius(m / g) * (totient(m) / totient(m / g)) as i64
}

/// The primitive idempotents of `ℚ[G]`, sorted by class representative.
pub fn rational_idempotents(group: &FinAbGroup) -> Vec<Component> {
    let order = group.order() as i64;
    let e = group.exponent();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in group.elements() {
        if seen.contains(&c) {
            continue;
        }
        let m = group.element_order(&c);
        for u in 1..=m {
            if u.gcd(&m) == 1 {
                seen.insert(group.scale(&c, u as i64));
            }
        }
        let mut idem = GroupRingElem::zero(group);
        for a in group.elements() {
            let j = group.pairing(&c, &a) / (e / m);
            let r = ramanujan(m, j);
            if r != 0 {
                idem.add_term(a, Rational::new(BigInt::from(r), BigInt::from(order)));
            }
        }
        out.push(Component { rep: c, order: m, idempotent: idem });
    }
    out
}

type Poly = Vec<GroupRingElem>;

/// Product of two power series in `s`, truncated to `len` terms.
fn poly_mul(a: &Poly, b: &Poly, len: usize) -> Poly {
    let group = a[0].group().clone();
    let mut out = vec![GroupRingElem::zero(&group); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Laurent coefficients of `F·e_C` in `s = 1 + t` up to `s^0`, keyed by power.
fn component_laurent(cf: &ClosedFormSeries, comp: &Component) -> BTreeMap<i64, GroupRingElem> {
    let g = cf.group();
    let e = &comp.idempotent;
    let pole: u64 = cf
        .minus_factors()
        .iter()
        .filter(|(a, _)| comp.sign(g, a) == Sign::MinusOne)
        .map(|(_, &d)| d)
        .sum();
    let len = pole as usize + 1;
    let mut p: Poly = vec![GroupRingElem::zero(g); len];
    p[0] = e.clone();

    for (a, &d) in cf.plus_factors() {
        let x = &GroupRingElem::basis(g, a.clone()) * e;
        match comp.sign(g, a) {
            // (1 + t)^d = s^d
            Sign::One => {
                let d = d as usize;
                let mut shifted = vec![GroupRingElem::zero(g); len];
                if d < len {
                    shifted[d..].clone_from_slice(&p[..len - d]);
                }
                p = shifted;
            }
            _ => {
                // 1 + t x = (1 - x) + s x
                let lin = vec![e - &x, x];
                for _ in 0..d {
                    p = poly_mul(&p, &lin, len);
                }
            }
        }
    }

    for (a, &d) in cf.minus_factors() {
        let x = &GroupRingElem::basis(g, a.clone()) * e;
        match comp.sign(g, a) {
            // (1 - t x)^{-1} = (-s x)^{-1} since (1 + x) e = 0
            Sign::MinusOne => {
                let sign = if d % 2 == 0 { Rational::one() } else { -Rational::one() };
                let inv = GroupRingElem::monomial(g, g.scale(a, -(d as i64)), sign);
                p = p.iter().map(|c| c * &inv).collect();
            }
            _ => {
                // (B - s x)^{-d} = B^{-d} Σ C(d+n-1, n) (x B^{-1})^n s^n, B = (1 + x) e
                let b = &GroupRingElem::one(g) + &GroupRingElem::basis(g, a.clone());
                let b_inv = invert_in_component(&b, e)
                    .expect("1 + e^α is a unit away from the χ(α) = -1 components");
                let q = &x * &b_inv;
                let mut ser = Vec::with_capacity(len);
                let mut q_pow = e.clone();
                let mut binom = Rational::one();
                for n in 0..len {
                    ser.push(q_pow.scale(&binom));
                    q_pow = &q_pow * &q;
                    binom = binom * Rational::from_integer(BigInt::from(d + n as u64))
                        / Rational::from_integer(BigInt::from(n as u64 + 1));
                }
                let b_inv_d = (0..d).fold(e.clone(), |acc, _| &acc * &b_inv);
                ser = ser.iter().map(|c| c * &b_inv_d).collect();
                p = poly_mul(&p, &ser, len);
            }
        }
    }

    p.into_iter()
        .enumerate()
        .map(|(i, c)| (i as i64 - pole as i64, c))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Full Laurent expansion of `F` at `t = -1`, through the constant term.
pub fn laurent_at_minus_one(cf: &ClosedFormSeries) -> BTreeMap<i64, GroupRingElem> {
    let mut total: BTreeMap<i64, GroupRingElem> = BTreeMap::new();
    for comp in rational_idempotents(cf.group()) {
        for (k, c) in component_laurent(cf, &comp) {
            let slot = total.entry(k).or_insert_with(|| GroupRingElem::zero(cf.group()));
            *slot = &*slot + &c;
        }
    }
    total.retain(|_, c| !c.is_zero());
    total
}

/// `lim_{t → -1}` of the closed form, or its divergent part.
pub fn limit_at_minus_one(cf: &ClosedFormSeries) -> ExactLimit {
    let laurent = laurent_at_minus_one(cf);
    let principal: BTreeMap<i64, GroupRingElem> =
        laurent.iter().filter(|(&k, _)| k < 0).map(|(&k, c)| (k, c.clone())).collect();
    if principal.is_empty() {
        let value = laurent.get(&0).cloned().unwrap_or_else(|| GroupRingElem::zero(cf.group()));
        return ExactLimit::Exists(value);
    }
    let witnesses = principal.values().flat_map(|c| c.support().cloned()).collect();
    ExactLimit::Diverges { witnesses, principal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn sum(elems: &[Component], g: &FinAbGroup) -> GroupRingElem {
        elems.iter().fold(GroupRingElem::zero(g), |acc, c| &acc + &c.idempotent)
    }

    #[test]
    fn idempotents_are_complete_and_orthogonal() {
        for f in [&[1][..], &[2], &[4], &[6], &[2, 2], &[2, 4], &[3, 3], &[12]] {
            let g = FinAbGroup::new(&f.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
            let comps = rational_idempotents(&g);
            assert_eq!(sum(&comps, &g), GroupRingElem::one(&g));
            for (i, a) in comps.iter().enumerate() {
                for (j, b) in comps.iter().enumerate() {
                    let p = &a.idempotent * &b.idempotent;
                    if i == j {
                        assert_eq!(p, a.idempotent);
                    } else {
                        assert!(p.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn number_of_components_counts_cyclic_quotients() {
        // Z_12 has one component per divisor of 12.
        assert_eq!(rational_idempotents(&FinAbGroup::cyclic(12)).len(), 6);
        // Z_2 × Z_2: trivial plus three order-2 characters.
        assert_eq!(rational_idempotents(&FinAbGroup::new(&[2, 2]).unwrap()).len(), 4);
    }

    #[test]
    fn ordinary_values() {
        let t = FinAbGroup::trivial();
        let odd = ClosedFormSeries::new(&t).with_minus(t.zero(), 3).unwrap();
        assert_eq!(limit_at_minus_one(&odd), ExactLimit::Exists(GroupRingElem::constant(&t, rat(1, 8))));
        let mixed = odd.clone().with_plus(t.zero(), 1).unwrap();
        assert_eq!(limit_at_minus_one(&mixed), ExactLimit::Exists(GroupRingElem::zero(&t)));
        assert_eq!(limit_at_minus_one(&ClosedFormSeries::new(&t)), ExactLimit::Exists(GroupRingElem::one(&t)));
    }

    #[test]
    fn super_line_diverges_in_both_degrees() {
        let g = FinAbGroup::z2();
        let cf = ClosedFormSeries::new(&g).with_minus(g.generator(0), 1).unwrap();
        match limit_at_minus_one(&cf) {
            ExactLimit::Diverges { witnesses, principal } => {
                assert!(witnesses.contains(&g.zero()));
                // (1 - tθ)^{-1} = (1 + tθ)/(1 - t²); residue at s = 0 is (1 - θ)/2.
                let expected = GroupRingElem::from_terms(&g, [(g.zero(), rat(1, 2)), (g.generator(0), rat(-1, 2))]).unwrap();
                assert_eq!(principal[&-1], expected);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn super_balanced_value() {
        let g = FinAbGroup::z2();
        let cf = ClosedFormSeries::new(&g)
            .with_plus(g.zero(), 1)
            .unwrap()
            .with_minus(g.generator(0), 1)
            .unwrap();
        let expected = GroupRingElem::from_terms(&g, [(g.zero(), rat(1, 2)), (g.generator(0), rat(-1, 2))]).unwrap();
        assert_eq!(limit_at_minus_one(&cf), ExactLimit::Exists(expected));
    }

    #[test]
    fn cyclic_four_odd_generator() {
        let g = FinAbGroup::cyclic(4);
        let cf = ClosedFormSeries::new(&g)
            .with_plus(g.zero(), 1)
            .unwrap()
            .with_minus(g.generator(0), 1)
            .unwrap();
        let expected = GroupRingElem::from_terms(
            &g,
            (0..4).map(|k| (g.scale(&g.generator(0), k), rat(if k % 2 == 0 { 1 } else { -1 }, 4))),
        )
        .unwrap();
        assert_eq!(limit_at_minus_one(&cf), ExactLimit::Exists(expected));
    }

    #[test]
    fn laurent_matches_direct_expansion_numerically() {
        // F = (1 + t e^a)(1 - t e^b)^{-2} over Z_2 × Z_4; compare s^{-k} coefficients
        // against (1+t)^k F(t) near t = -1.
        let g = FinAbGroup::new(&[2, 4]).unwrap();
        let cf = ClosedFormSeries::new(&g)
            .with_plus(g.element(&[0, 1]).unwrap(), 1)
            .unwrap()
            .with_minus(g.element(&[1, 2]).unwrap(), 2)
            .unwrap();
        let laurent = laurent_at_minus_one(&cf);
        let top = *laurent.keys().next().unwrap();
        assert!(top < 0);
        let lead = laurent[&top].to_f64_map();
        let n = 1 << 15;
        let num = cf.expand_numeric(n);
        let delta = (-9f64).exp2();
        let vals = num.eval_tapered(-1.0 + delta);
        for (a, v) in vals {
            let scaled = v * delta.powi(-top as i32);
            let want = lead.get(&a).copied().unwrap_or(0.0);
            assert!((scaled - want).abs() < 2e-2, "{a}: {scaled} vs {want}");
        }
    }
}
