//! Brute-force count of the graded monomial basis of `⋀*_ε L`.
//!
//! Written independently of the series code: every monomial over a fixed
//! homogeneous basis is visited once, even basis vectors with multiplicity at
//! most one and odd ones with any multiplicity.

use crate::cec::{complex_closed_form, AlgebraSpec};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::ring::{GroupRingElem, Rational};

pub const MAX_TOTAL_DIM: u64 = 12;
pub const MAX_ORDER: usize = 24;

/// Basis counts per degree `n`, as elements of `ℚ[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCount {
    pub degrees: Vec<GroupRingElem>,
}

struct Walk<'a> {
    /// (index of the generator's G-degree, odd?)
    gens: Vec<(usize, bool)>,
    table: &'a [usize],
    n_el: usize,
    order: usize,
    counts: Vec<Vec<u64>>,
}

impl Walk<'_> {
    fn visit(&mut self, i: usize, used: usize, deg: usize) {
        if i == self.gens.len() {
            self.counts[used][deg] += 1;
            return;
        }
        let (g, odd) = self.gens[i];
        let max = if odd { self.order - used } else { 1.min(self.order - used) };
        let mut d = deg;
        for k in 0..=max {
            self.visit(i + 1, used + k, d);
            d = self.table[d * self.n_el + g];
        }
    }
}

fn guard(spec: &AlgebraSpec, order: usize) -> Result<()> {
    if spec.total_dim() > MAX_TOTAL_DIM {
        return Err(Error::TooLarge(format!("total dimension {} exceeds {MAX_TOTAL_DIM}", spec.total_dim())));
    }
    if order > MAX_ORDER {
        return Err(Error::TooLarge(format!("order {order} exceeds {MAX_ORDER}")));
    }
    Ok(())
}

pub fn count_basis(spec: &AlgebraSpec, order: usize) -> Result<MonomialCount> {
    guard(spec, order)?;
    let g = spec.group();
    let n_el = g.order() as usize;
    let table = g.addition_table();
    let mut gens = Vec::new();
    for (a, &d) in spec.l_dims() {
        for _ in 0..d {
            gens.push((g.index_of(a), spec.parity().is_odd(a)));
        }
    }
    let mut walk = Walk { gens, table: &table, n_el, order, counts: vec![vec![0; n_el]; order + 1] };
    walk.visit(0, 0, g.index_of(&g.zero()));
    let degrees = walk
        .counts
        .into_iter()
        .map(|row| {
            let terms = row
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c > 0)
                .map(|(i, c)| (g.element_at(i), Rational::from_integer(c.into())));
            GroupRingElem::from_terms(g, terms).expect("elements of g")
        })
        .collect();
    Ok(MonomialCount { degrees })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: usize,
    pub element: GroupElement,
    pub oracle: Rational,
    pub closed_form: Rational,
}

/// Compares the oracle with the expanded closed form; `None` means full agreement.
pub fn verify_closed_form(spec: &AlgebraSpec, order: usize) -> Result<Option<Mismatch>> {
    let counts = count_basis(spec, order)?;
    let series = complex_closed_form(spec).expand(order);
    Ok(first_mismatch(spec, &counts.degrees, series.coeffs()))
}

/// First `(n, α)` where the two coefficient lists differ.
pub fn first_mismatch(spec: &AlgebraSpec, oracle: &[GroupRingElem], other: &[GroupRingElem]) -> Option<Mismatch> {
    let zero = GroupRingElem::zero(spec.group());
    for n in 0..oracle.len().max(other.len()) {
        let x = oracle.get(n).unwrap_or(&zero);
        let y = other.get(n).unwrap_or(&zero);
        if x != y {
            let element = spec.group().elements().find(|a| x.coeff(a) != y.coeff(a)).expect("they differ");
            return Some(Mismatch { degree: n, oracle: x.coeff(&element), closed_form: y.coeff(&element), element });
        }
    }
    None
}
