//! Order and weight of the canonical basis, and the resulting dimensions of
//! the spaces of twisted jet differentials `H⁰(Pᴺ, E_{k,n}Pᴺ(d))`.
//!
//! Those sections are the differentially homogeneous polynomials of degree
//! `d`, order at most `k` and weight `n`, so the census is a count inside
//! `V_d^Diff`. For `k ≥ d-1` every basis element qualifies and the census
//! groups the basis by weight. Below that, each isobaric block is cut down to
//! the polynomials with no monomial of order `> k`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dpoly::{coefficient_matrix, monomial_order, DiffPoly};
use crate::exact::{binomial, rank, SparseMatrix};
use crate::wronskian::{enumerate_canonical_basis, BasisElement, WronskianError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub k: usize,
    /// The weight.
    pub n: u32,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisClassification {
    pub m: Vec<usize>,
    pub alpha: Vec<usize>,
    pub computed_order: u32,
    /// `None` when the element is not isobaric.
    pub computed_weight: Option<u32>,
    /// `max_i (d - 1 - α_i)`.
    pub order_bound: u32,
    /// `d(d-1)/2 - |α|`.
    pub weight_formula: u32,
}

impl BasisClassification {
    pub fn weight_matches(&self) -> bool {
        self.computed_weight == Some(self.weight_formula)
    }

    /// The computed order falls short of `max_i (d - 1 - α_i)`.
    pub fn order_below_bound(&self) -> bool {
        self.computed_order < self.order_bound
    }
}

pub fn classify_element(e: &BasisElement) -> Result<BasisClassification, WronskianError> {
    let d = e.datum.degree();
    let alpha = e.datum.flat_alpha();
    let g = e.poly.gradings()?;
    let order_bound = alpha.iter().map(|&a| (d - 1 - a) as u32).max().unwrap_or(0);
    let weight_formula = (d * (d - 1) / 2 - alpha.iter().sum::<usize>()) as u32;
    Ok(BasisClassification {
        m: e.datum.m.clone(),
        alpha,
        computed_order: g.order,
        computed_weight: g.weight,
        order_bound,
        weight_formula,
    })
}

pub fn classify_basis(n: usize, d: usize) -> Result<Vec<BasisClassification>, WronskianError> {
    enumerate_canonical_basis(n, d)?.iter().map(classify_element).collect()
}

/// `⌊N·d² / (2(N+1))⌋`, beyond which no weight occurs.
pub fn weight_bound(n: usize, d: usize) -> u32 {
    ((n * d * d) / (2 * (n + 1))) as u32
}

/// The census at jet order `k`, computed from the canonical basis of degree
/// `d` (which must be given in full). Weights with count zero are omitted.
pub fn census_from_basis(basis: &[BasisElement], d: usize, k: usize) -> Result<Vec<CensusEntry>, WronskianError> {
    if d == 0 {
        return Ok(vec![CensusEntry { k, n: 0, count: 1 }]);
    }
    let mut blocks: BTreeMap<u32, Vec<DiffPoly>> = BTreeMap::new();
    for e in basis {
        let w = e.poly.gradings()?.weight.ok_or_else(|| {
            WronskianError::Manifest(format!("basis element {:?} is not isobaric", e.datum))
        })?;
        blocks.entry(w).or_default().push(e.poly.clone());
    }
    let mut out = Vec::new();
    for (w, polys) in blocks {
        let count = if k + 1 >= d {
            polys.len()
        } else {
            polys.len() - high_order_rank(&polys, k)
        };
        if count > 0 {
            out.push(CensusEntry { k, n: w, count });
        }
    }
    Ok(out)
}

/// Rank of the coefficients of `polys` on monomials of order `> k`.
fn high_order_rank(polys: &[DiffPoly], k: usize) -> usize {
    let (m, keys) = coefficient_matrix(polys);
    let keep: Vec<usize> = keys
        .iter()
        .enumerate()
        .filter(|(_, (mono, _))| monomial_order(mono) as usize > k)
        .map(|(i, _)| i)
        .collect();
    let position: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut sub = SparseMatrix::new(m.rows(), keep.len());
    for ((r, c), v) in m.entries() {
        if let Some(&c) = position.get(c) {
            sub.set(*r, c, v.clone());
        }
    }
    rank(&sub)
}

pub fn census(n: usize, d: usize, k: usize) -> Result<Vec<CensusEntry>, WronskianError> {
    if d == 0 {
        return census_from_basis(&[], 0, k);
    }
    census_from_basis(&enumerate_canonical_basis(n, d)?, d, k)
}

pub fn census_total(entries: &[CensusEntry]) -> usize {
    entries.iter().map(|e| e.count).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemVerdict {
    pub item: u8,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetCensusReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub items: Vec<ItemVerdict>,
}

impl JetCensusReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

/// Checks, for the census of `(N, d)`:
/// 1. the census is the same for `k = d-1, d, d+1`;
/// 2. its total at `k = d-1` is `(N+1)^d`;
/// 3. no weight exceeds [`weight_bound`].
pub fn verify_jet_census(n: usize, d: usize) -> Result<JetCensusReport, WronskianError> {
    let basis = if d == 0 { Vec::new() } else { enumerate_canonical_basis(n, d)? };
    verify_jet_census_with(&basis, n, d)
}

pub fn verify_jet_census_with(basis: &[BasisElement], n: usize, d: usize) -> Result<JetCensusReport, WronskianError> {
    let k0 = d.saturating_sub(1);
    let base = census_from_basis(basis, d, k0)?;
    let strip = |c: &[CensusEntry]| c.iter().map(|e| (e.n, e.count)).collect::<Vec<_>>();
    let mut item1 = ItemVerdict {
        item: 1,
        pass: true,
        detail: format!("census constant for k = {k0}..={}", k0 + 2),
    };
    for k in k0 + 1..=k0 + 2 {
        let other = census_from_basis(basis, d, k)?;
        if strip(&other) != strip(&base) {
            item1.pass = false;
            item1.detail = format!("census at k = {k} differs from k = {k0}: {:?} vs {:?}", strip(&other), strip(&base));
            break;
        }
    }
    let total = census_total(&base);
    let expected = (n + 1).pow(d as u32);
    let item2 = ItemVerdict {
        item: 2,
        pass: total == expected,
        detail: format!("total {total}, expected {expected}"),
    };
    let bound = weight_bound(n, d);
    let offenders: Vec<u32> = base.iter().filter(|e| e.n > bound).map(|e| e.n).collect();
    let item3 = ItemVerdict {
        item: 3,
        pass: offenders.is_empty(),
        detail: if offenders.is_empty() {
            format!("no weight above {bound}")
        } else {
            format!("weights {offenders:?} exceed {bound}")
        },
    };
    Ok(JetCensusReport {
        n,
        d,
        items: vec![item1, item2, item3],
    })
}

/// `C(N+d, d)`, the number of degree-`d` forms in `N+1` variables.
pub fn forms_count(n: usize, d: usize) -> usize {
    let b = binomial((n + d) as u64, d as u64);
    b.to_integer().try_into().expect("small binomial")
}
