//! Incremental sparse integer echelon form.
//!
//! The graded relation matrices are sparse with small integer entries; rows
//! are inserted one at a time and reduced against the current pivots with
//! fraction-free two-row combinations, gcd-normalizing as we go. Rank queries
//! and span-membership tests come out of the same structure.

use super::Int;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// Sparse row: `(column, coefficient)` sorted by column, no zero entries.
pub type SparseRow = Vec<(usize, Int)>;

#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl IntEchelon {
    pub fn new() -> Self {
        IntEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        match self.reduce(row) {
            Some(reduced) => {
                let lead = reduced[0].0;
                self.pivots.insert(lead, reduced);
                true
            }
            None => false,
        }
    }

    /// True when `row` already lies in the span of the inserted rows.
    pub fn reduces_to_zero(&self, row: SparseRow) -> bool {
        self.reduce(row).is_none()
    }

    fn reduce(&self, mut row: SparseRow) -> Option<SparseRow> {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        loop {
            row.retain(|(_, c)| !c.is_zero());
            let (lead, lead_coeff) = row.first().cloned()?;
            let lead_coeff = &lead_coeff;
            let Some(pivot) = self.pivots.get(&lead) else {
                normalize(&mut row);
                return Some(row);
            };
            // row := row * pivot_lead - pivot * row_lead, cancelling `lead`
            let a = pivot[0].1.clone();
            let b = lead_coeff.clone();
            row = combine(&row, &a, pivot, &b);
            normalize(&mut row);
        }
    }
}

/// `a * left - b * right`, merged by column.
fn combine(left: &SparseRow, a: &Int, right: &SparseRow, b: &Int) -> SparseRow {
    let mut out = SparseRow::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() || j < right.len() {
        match (left.get(i), right.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = a * vi - b * vj;
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, a * vi));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                out.push((*cj, -(b * vj)));
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, a * vi));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                out.push((*cj, -(b * vj)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Divides by the gcd of the entries and makes the leading entry positive.
fn normalize(row: &mut SparseRow) {
    if row.is_empty() {
        return;
    }
    let mut g = Int::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
    }
    let negate = row[0].1.is_negative();
    for (_, c) in row.iter_mut() {
        *c = &*c / &g;
        if negate {
            *c = -c.clone();
        }
    }
}
