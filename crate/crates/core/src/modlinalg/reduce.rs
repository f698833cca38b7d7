//! Span-preserving row compression over `Z_m` for composite `m`.
//!
//! Rows are inserted one at a time into an echelon basis with at most one row per
//! leading column. Clashing leads are merged with a unimodular 2x2 gcd step, and every
//! pivot with a zero-divisor lead also contributes its annihilator multiple, so the
//! stored rows generate exactly the same `Z_m`-module as the inserted ones.

use std::collections::BTreeMap;

use super::modint::{ext_gcd, gcd};

pub(crate) type Origin = BTreeMap<usize, u64>;

#[derive(Clone, Debug)]
pub(crate) struct ReducedRow {
    pub coeffs: Vec<u64>,
    pub origin: Origin,
}

pub(crate) struct RowReducer {
    modulus: u64,
    width: usize,
    track: bool,
    pivots: Vec<Option<ReducedRow>>,
}

impl RowReducer {
    pub fn new(width: usize, modulus: u64, track: bool) -> Self {
        Self {
            modulus,
            width,
            track,
            pivots: vec![None; width],
        }
    }

    /// Inserts a dense row (entries already reduced) tagged with its source index.
    pub fn insert(&mut self, coeffs: Vec<u64>, source: usize) {
        debug_assert_eq!(coeffs.len(), self.width);
        if coeffs.iter().all(|&x| x == 0) {
            return;
        }
        let mut origin = Origin::new();
        if self.track {
            origin.insert(source, 1);
        }
        let mut stack = vec![ReducedRow { coeffs, origin }];
        while let Some(row) = stack.pop() {
            self.reduce_one(row, &mut stack);
        }
    }

    fn reduce_one(&mut self, mut row: ReducedRow, stack: &mut Vec<ReducedRow>) {
        let m = self.modulus;
        loop {
            let Some(j) = row.coeffs.iter().position(|&x| x != 0) else {
                return;
            };
            match self.pivots[j].take() {
                None => {
                    if let Some(ann) = self.annihilator(&row, j) {
                        stack.push(ann);
                    }
                    self.pivots[j] = Some(row);
                    return;
                }
                Some(pivot) => {
                    let p = pivot.coeffs[j] as i64;
                    let e = row.coeffs[j] as i64;
                    let (g, s, t) = ext_gcd(p, e);
                    let (a1, b1) = (e / g, p / g);
                    // [[s, t], [e/g, -p/g]] has determinant -1
                    let new_pivot = self.combine(&pivot, s, &row, t);
                    let rest = self.combine(&pivot, a1, &row, -b1);
                    debug_assert_eq!(rest.coeffs[j], 0);
                    debug_assert_eq!(new_pivot.coeffs[j], (g as u64) % m);
                    if g != p {
                        if let Some(ann) = self.annihilator(&new_pivot, j) {
                            stack.push(ann);
                        }
                    }
                    self.pivots[j] = Some(new_pivot);
                    row = rest;
                }
            }
        }
    }

    fn annihilator(&self, row: &ReducedRow, lead_col: usize) -> Option<ReducedRow> {
        let m = self.modulus;
        let g = gcd(row.coeffs[lead_col], m);
        if g == 1 {
            return None;
        }
        let factor = m / g;
        let ann = self.combine(row, factor as i64, row, 0);
        ann.coeffs.iter().any(|&x| x != 0).then_some(ann)
    }

    fn combine(&self, a: &ReducedRow, ka: i64, b: &ReducedRow, kb: i64) -> ReducedRow {
        let m = self.modulus as i64;
        let ka = ka.rem_euclid(m) as u64;
        let kb = kb.rem_euclid(m) as u64;
        let mm = self.modulus;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x * ka + y * kb) % mm)
            .collect();
        let mut origin = Origin::new();
        if self.track {
            for (&k, &v) in &a.origin {
                *origin.entry(k).or_insert(0) += v * ka % mm;
            }
            for (&k, &v) in &b.origin {
                *origin.entry(k).or_insert(0) += v * kb % mm;
            }
            origin.retain(|_, v| {
                *v %= mm;
                *v != 0
            });
        }
        ReducedRow { coeffs, origin }
    }

    pub fn rows(&self) -> Vec<&ReducedRow> {
        self.pivots.iter().flatten().collect()
    }

    /// The compressed generating rows, ordered by leading column.
    pub fn into_rows(self) -> Vec<ReducedRow> {
        self.pivots.into_iter().flatten().collect()
    }
}
