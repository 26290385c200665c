//! Exact sparse Gaussian elimination over a [`Field`].
//!
//! Rows are sorted `(column, value)` lists without zeros. [`Echelon`] keeps
//! each stored row normalized so its leading entry is one; nullspaces are
//! read off by back substitution and come out in the canonical form where
//! each basis vector has a one at its free column and zeros at every other
//! free column.

use std::collections::BTreeMap;

use crate::field::Field;

pub type SparseVec<F> = Vec<(usize, F)>;

/// A row space in echelon form, keyed by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

/// `target -= scale * row`, dropping cancelled entries.
fn sub_scaled<F: Field>(target: &mut BTreeMap<usize, F>, scale: &F, row: &[(usize, F)]) {
    for (c, v) in row {
        let next = target.remove(c).unwrap_or_else(F::zero) - scale.clone() * v.clone();
        if !next.is_zero() {
            target.insert(*c, next);
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `row` against the stored pivots, leaving a remainder whose
    /// leading column is not a pivot (or nothing).
    pub fn reduce(&self, row: &[(usize, F)]) -> BTreeMap<usize, F> {
        let mut work: BTreeMap<usize, F> =
            row.iter().filter(|(_, v)| !v.is_zero()).cloned().collect();
        let mut floor = 0;
        loop {
            let lead = work.range(floor..).find(|(c, _)| self.rows.contains_key(c));
            let Some((&col, coef)) = lead else { break };
            let coef = coef.clone();
            sub_scaled(&mut work, &coef, &self.rows[&col]);
            floor = col + 1;
        }
        work
    }

    /// Adds a row; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, row: &[(usize, F)]) -> bool {
        let rem = self.reduce(row);
        let Some((&lead, lead_val)) = rem.iter().next() else {
            return false;
        };
        let inv = F::one() / lead_val.clone();
        let normalized = rem
            .iter()
            .map(|(&c, v)| (c, v.clone() * inv.clone()))
            .collect();
        self.rows.insert(lead, normalized);
        true
    }

    /// The stored rows in fully reduced row echelon form, by pivot column.
    pub fn reduced_rows(&self) -> Vec<SparseVec<F>> {
        let mut done: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut work: BTreeMap<usize, F> = row.iter().cloned().collect();
            for (&q, later) in &done {
                if let Some(c) = work.get(&q).cloned() {
                    sub_scaled(&mut work, &c, later);
                }
            }
            debug_assert!(work.get(&p).map(|v| v.is_one()).unwrap_or(false));
            done.insert(p, work.into_iter().collect());
        }
        done.into_values().collect()
    }

    pub fn contains(&self, row: &[(usize, F)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Canonical basis of `{x : row · x = 0 for every stored row}` inside
    /// `F^ncols`.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec<F>> {
        let free: Vec<usize> = (0..ncols).filter(|c| !self.rows.contains_key(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x: BTreeMap<usize, F> = BTreeMap::from([(f, F::one())]);
            // pivots in decreasing order: x_p = -Σ_{c>p} row[c] x_c
            for (&p, row) in self.rows.iter().rev() {
                let mut acc = F::zero();
                for (c, v) in row.iter().skip(1) {
                    if let Some(xc) = x.get(c) {
                        acc = acc + v.clone() * xc.clone();
                    }
                }
                if !acc.is_zero() {
                    x.insert(p, -acc);
                }
            }
            basis.push(x.into_iter().collect());
        }
        basis
    }
}

/// Canonical nullspace basis of the given rows.
pub fn nullspace<F: Field>(ncols: usize, rows: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.nullspace(ncols)
}

/// Rank of a list of sparse vectors.
pub fn rank<F: Field>(rows: &[SparseVec<F>]) -> usize {
    let mut ech = Echelon::new();
    rows.iter().filter(|r| ech.insert(r)).count()
}
