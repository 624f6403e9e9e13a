//! Sparse row echelon forms over `Q`.
//!
//! Vectors are inserted one at a time and head-reduced against the stored
//! rows, each of which has a distinct leading column and leading coefficient
//! one. This gives rank, span membership and, with tracking enabled, the
//! linear relations among the inserted vectors.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::Rational;

/// Sparse vector: column index to nonzero rational.
pub type SparseVec = BTreeMap<usize, Rational>;

/// `acc -= factor · row`, dropping entries that cancel.
fn sub_scaled(acc: &mut SparseVec, row: &[(usize, Rational)], factor: &Rational) {
    for (c, x) in row {
        match acc.entry(*c) {
            Entry::Vacant(v) => {
                v.insert(-(x * factor));
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() -= x * factor;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: Vec<Vec<(usize, Rational)>>,
    /// Leading column to row index.
    pivots: BTreeMap<usize, usize>,
    /// Per row, its expression in terms of the inserted vectors (if tracking).
    combos: Option<Vec<Vec<(usize, Rational)>>>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records, for every row, which combination of inserted vectors produced it.
    pub fn tracking() -> Self {
        Echelon {
            combos: Some(Vec::new()),
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Head-reduces `v`. The result is zero iff `v` lies in the row span.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_tracked(v, None).0
    }

    fn reduce_tracked(
        &self,
        mut v: SparseVec,
        mut combo: Option<SparseVec>,
    ) -> (SparseVec, Option<SparseVec>) {
        while let Some((&lead, coeff)) = v.iter().next() {
            let Some(&r) = self.pivots.get(&lead) else {
                break;
            };
            let factor = coeff.clone();
            sub_scaled(&mut v, &self.rows[r], &factor);
            if let (Some(c), Some(combos)) = (combo.as_mut(), self.combos.as_ref()) {
                sub_scaled(c, &combos[r], &factor);
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v`; returns true iff it was independent of the existing rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.insert_with_relation(v).is_none()
    }

    /// Inserts `v`. If `v` is dependent on earlier vectors and tracking is on,
    /// returns the relation `Σ cᵢ vᵢ = 0` (indices count inserted vectors).
    pub fn insert_with_relation(&mut self, v: SparseVec) -> Option<SparseVec> {
        let index = self.inserted;
        self.inserted += 1;
        let combo = self.combos.as_ref().map(|_| {
            let mut c = SparseVec::new();
            c.insert(index, Rational::one());
            c
        });
        let (v, combo) = self.reduce_tracked(v, combo);
        let Some((&lead, lead_coeff)) = v.iter().next() else {
            return Some(combo.unwrap_or_default());
        };
        let inv = lead_coeff.recip();
        let row: Vec<(usize, Rational)> = v.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        if let (Some(combos), Some(combo)) = (self.combos.as_mut(), combo) {
            combos.push(combo.into_iter().map(|(c, x)| (c, x * &inv)).collect());
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        None
    }
}

pub fn rank<I: IntoIterator<Item = SparseVec>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// A basis of `{c : Σ cᵢ vᵢ = 0}`.
pub fn relations<I: IntoIterator<Item = SparseVec>>(vectors: I) -> Vec<SparseVec> {
    let mut e = Echelon::tracking();
    vectors
        .into_iter()
        .filter_map(|v| e.insert_with_relation(v))
        .collect()
}
