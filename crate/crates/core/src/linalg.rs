//! Exact linear algebra: reduced row echelon bases over a field, and integer
//! kernels via unimodular row operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Field;

/// A subspace of `F^ncols` kept in reduced row echelon form.
///
/// Rows are inserted one at a time; the pivot of a row is its first nonzero
/// column after reduction, and every stored row is zero in the other rows'
/// pivot columns. When tracking is enabled each stored row also carries its
/// expression as a combination of the inserted rows.
#[derive(Clone, Debug)]
pub struct RowEchelon<F> {
    ncols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    tracking: Option<Tracking<F>>,
}

#[derive(Clone, Debug)]
struct Tracking<F> {
    inserted: usize,
    combos: Vec<Vec<F>>,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        RowEchelon { ncols, rows: Vec::new(), pivots: Vec::new(), tracking: None }
    }

    pub fn with_tracking(ncols: usize) -> Self {
        RowEchelon {
            tracking: Some(Tracking { inserted: 0, combos: Vec::new() }),
            ..Self::new(ncols)
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Reduces `v` against the basis; returns the residual (zero in every
    /// pivot column) and, if tracking, the combination of inserted rows that
    /// was subtracted.
    pub fn reduce(&self, v: &[F]) -> (Vec<F>, Option<Vec<F>>) {
        let mut r = v.to_vec();
        let mut combo = self.tracking.as_ref().map(|t| vec![F::zero(); t.inserted]);
        for (k, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&self.rows[k]) {
                if !y.is_zero() {
                    *x -= &(f.clone() * y.clone());
                }
            }
            if let (Some(c), Some(t)) = (combo.as_mut(), self.tracking.as_ref()) {
                for (x, y) in c.iter_mut().zip(&t.combos[k]) {
                    if !y.is_zero() {
                        *x += &(f.clone() * y.clone());
                    }
                }
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns `true` when the rank grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ncols, "row length");
        let (mut r, combo) = self.reduce(v);
        let index = self.tracking.as_ref().map(|t| t.inserted);
        if let Some(t) = self.tracking.as_mut() {
            t.inserted += 1;
            for c in t.combos.iter_mut() {
                c.push(F::zero());
            }
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        // new row = (v - combo.rows) / pivot, as a combination of inserted rows
        let mut new_combo = None;
        if let (Some(mut c), Some(_)) = (combo, index) {
            for x in c.iter_mut() {
                *x = -x.clone();
            }
            c.push(F::one());
            for x in c.iter_mut() {
                *x = x.clone() * inv.clone();
            }
            new_combo = Some(c);
        }
        // clear the new pivot column from existing rows
        for k in 0..self.rows.len() {
            let f = self.rows[k][p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in self.rows[k].iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &(f.clone() * y.clone());
                }
            }
            if let (Some(t), Some(nc)) = (self.tracking.as_mut(), new_combo.as_ref()) {
                for (x, y) in t.combos[k].iter_mut().zip(nc) {
                    if !y.is_zero() {
                        *x -= &(f.clone() * y.clone());
                    }
                }
            }
        }
        // keep rows sorted by pivot
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        if let (Some(t), Some(nc)) = (self.tracking.as_mut(), new_combo) {
            t.combos.insert(pos, nc);
        }
        true
    }

    /// Coefficients `c` with `sum c_i inserted_i = v`, when `v` is in the span
    /// and tracking is enabled.
    pub fn solve(&self, v: &[F]) -> Option<Vec<F>> {
        let (r, combo) = self.reduce(v);
        if r.iter().all(Zero::is_zero) {
            combo
        } else {
            None
        }
    }
}

/// A `Z`-basis of `{ v in Z^n : rows . v = 0 }` for an integer matrix with
/// `n` columns.
///
/// Row-reduces the transpose augmented by the identity with unimodular
/// steps, always pivoting on the entry of least absolute value so the
/// multipliers stay small; the identity part of the rows whose matrix part
/// vanishes spans the kernel.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // work[j] = column j of the matrix followed by e_j
    let mut work: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut v: Vec<BigInt> = (0..m).map(|i| rows[i][j].clone()).collect();
            v.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..m {
        if pivot_row == n {
            break;
        }
        loop {
            let best = (pivot_row..n)
                .filter(|&q| !work[q][c].is_zero())
                .min_by(|&a, &b| work[a][c].abs().cmp(&work[b][c].abs()));
            let Some(best) = best else { break };
            work.swap(pivot_row, best);
            let pivot = work[pivot_row][c].clone();
            let mut done = true;
            for q in pivot_row + 1..n {
                if work[q][c].is_zero() {
                    continue;
                }
                let f = work[q][c].div_floor(&pivot);
                if !f.is_zero() {
                    let (head, tail) = work.split_at_mut(q);
                    for (x, y) in tail[0].iter_mut().zip(&head[pivot_row]) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
                if !work[q][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !work[pivot_row][c].is_zero() {
            pivot_row += 1;
        }
    }
    let mut kernel: Vec<Vec<BigInt>> = work.into_iter().skip(pivot_row).map(|v| v[m..].to_vec()).collect();
    for v in kernel.iter_mut() {
        normalize_sign(v);
    }
    kernel
}

fn normalize_sign(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Fp, Rational};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn echelon_rank_and_reduction() {
        let mut e = RowEchelon::<Rational>::new(3);
        assert!(e.insert(&q(&[0, 2, 4])));
        assert!(e.insert(&q(&[1, 1, 1])));
        assert!(!e.insert(&q(&[1, 2, 3])));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        let (r, _) = e.reduce(&q(&[0, 0, 5]));
        assert_eq!(r, q(&[0, 0, 5]));
        assert!(e.contains(&q(&[2, 3, 4])));
    }

    #[test]
    fn tracked_solutions() {
        let rows = [q(&[1, 2, 0]), q(&[2, 4, 0]), q(&[0, 1, 1]), q(&[1, 3, 1])];
        let mut e = RowEchelon::<Rational>::with_tracking(3);
        for r in &rows {
            e.insert(r);
        }
        let target = q(&[3, 7, 1]);
        let c = e.solve(&target).unwrap();
        let mut combo = q(&[0, 0, 0]);
        for (ci, r) in c.iter().zip(&rows) {
            for (x, y) in combo.iter_mut().zip(r) {
                *x += &(ci * y);
            }
        }
        assert_eq!(combo, target);
        assert!(e.solve(&q(&[0, 0, 1])).is_none());
    }

    #[test]
    fn prime_field_rank_drops() {
        let mut e = RowEchelon::<Fp<3>>::new(2);
        e.insert(&[Fp::new(1), Fp::new(1)]);
        assert!(!e.insert(&[Fp::new(4), Fp::new(1)]));
        let mut f = RowEchelon::<Rational>::new(2);
        f.insert(&q(&[1, 1]));
        assert!(f.insert(&q(&[4, 1])));
    }

    #[test]
    fn kernel_of_small_matrix() {
        let rows = vec![vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)]];
        let k = integer_kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().zip(&rows[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        // saturated: the last two coordinates determine the first freely
        let det = &k[0][1] * &k[1][2] - &k[0][2] * &k[1][1];
        assert_eq!(det.abs(), BigInt::one());
    }
}
