//! Exact linear algebra over the rationals: rank, kernel bases, surjectivity
//! tests, and canonical subspaces. No floating point anywhere.
//!
//! Elimination is fraction-free in the style of Bareiss: every row is first
//! scaled to integer entries, the forward pass works on `BigInt` rows with
//! cross-multiplication updates and a row-gcd reduction after each update to
//! keep coefficient growth in check. Kernel bases are then rescaled to
//! reduced row-echelon form over the rationals, so equal subspaces compare
//! equal componentwise.
//!
//! Rank queries eliminate on whichever orientation of the matrix has fewer
//! columns; the matrices this crate builds are often very wide stacks of
//! near-monomial rows, and row rank equals column rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Matrix with exact rational entries; zero entries are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, BigRational>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.push(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        ExactMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Convenience constructor for tests and small literals.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&k| BigRational::from_integer(k.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> BigRational {
        self.data[i].get(&j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        assert!(i < self.rows && j < self.cols);
        if value.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, value);
        }
    }

    /// Stack blocks with equal column count on top of each other.
    pub fn vstack(blocks: &[&ExactMatrix]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows);
        for b in blocks {
            assert_eq!(b.cols, cols, "column mismatch in vstack");
            data.extend(b.data.iter().cloned());
        }
        ExactMatrix { rows, cols, data }
    }

    /// Matrix–vector product, exact.
    pub fn mul_vector(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                for (&j, a) in row {
                    if !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact rank over the rationals. Elimination runs on the orientation
    /// with fewer columns; row rank equals column rank.
    pub fn rank(&self) -> usize {
        if self.cols <= self.rows {
            let (_, pivots) = integer_echelon(self.to_integer_rows(), self.cols);
            pivots.len()
        } else {
            incremental_rank(self.transposed_integer_rows(), self.rows)
        }
    }

    /// Kernel dimension `cols - rank`, without extracting a basis.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// True iff the matrix is surjective as a map onto its target
    /// coordinate space, i.e. `rank == rows`.
    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    /// Canonical basis of `{v : Av = 0}`; dimension is `cols - rank`.
    pub fn kernel_basis(&self) -> Subspace {
        let (ech, pivots) = integer_echelon(self.to_integer_rows(), self.cols);
        let rref = rref_from_echelon(ech, &pivots, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                if !rref[i][f].is_zero() {
                    v[p] = -rref[i][f].clone();
                }
            }
            vectors.push(v);
        }
        Subspace::from_spanning(vectors, self.cols)
    }

    /// Reduced row-echelon form of the matrix: nonzero rows plus their pivot
    /// columns.
    pub fn rref(&self) -> (Vec<Vec<BigRational>>, Vec<usize>) {
        let (ech, pivots) = integer_echelon(self.to_integer_rows(), self.cols);
        let rref = rref_from_echelon(ech, &pivots, self.cols);
        (rref, pivots)
    }

    /// Scale each row by the lcm of its denominators; zero entries cost no
    /// allocation.
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.data
            .iter()
            .map(|row| {
                let mut scale = BigInt::one();
                for e in row.values() {
                    scale = scale.lcm(e.denom());
                }
                let mut out = vec![BigInt::zero(); self.cols];
                for (&j, e) in row {
                    out[j] = e.numer() * (&scale / e.denom());
                }
                out
            })
            .collect()
    }

    /// Integer-scaled columns of the matrix, as dense rows of the transpose.
    fn transposed_integer_rows(&self) -> Vec<Vec<BigInt>> {
        let mut cols: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (&j, e) in row {
                cols[j].insert(i, e.clone());
            }
        }
        cols.into_iter()
            .map(|col| {
                let mut scale = BigInt::one();
                for e in col.values() {
                    scale = scale.lcm(e.denom());
                }
                let mut out = vec![BigInt::zero(); self.rows];
                for (&i, e) in &col {
                    out[i] = e.numer() * (&scale / e.denom());
                }
                out
            })
            .collect()
    }
}

/// Cross-multiplication row update with gcd-reduced multipliers followed by
/// a content reduction: `target := (p/g)·target - (t/g)·pivot_row`, then
/// divide by the gcd of the entries from `from` on.
fn eliminate_row(
    target: &mut [BigInt],
    pivot_row: &[BigInt],
    col: usize,
    from: usize,
    cols: usize,
) {
    let g = pivot_row[col].gcd(&target[col]);
    let am = &pivot_row[col] / &g;
    let bm = &target[col] / &g;
    let mut content = BigInt::zero();
    for v in from..cols {
        let val = &am * &target[v] - &bm * &pivot_row[v];
        if !val.is_zero() {
            content = content.gcd(&val);
        }
        target[v] = val;
    }
    if content > BigInt::one() {
        for v in from..cols {
            if !target[v].is_zero() {
                target[v] = &target[v] / &content;
            }
        }
    }
}

/// Forward elimination on integer rows. Returns the matrix with pivot rows
/// swapped into leading position and the list of pivot columns.
fn integer_echelon(mut m: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        // Deterministic pivot choice: smallest absolute value, then lowest row.
        let mut best: Option<(BigInt, usize)> = None;
        for (u, row) in m.iter().enumerate().skip(pr) {
            if row[col].is_zero() {
                continue;
            }
            let a = row[col].abs();
            match &best {
                Some((b, _)) if *b <= a => {}
                _ => best = Some((a, u)),
            }
        }
        let Some((_, piv)) = best else { continue };
        m.swap(pr, piv);
        let (head, tail) = m.split_at_mut(pr + 1);
        let prow = &head[pr];
        for urow in tail.iter_mut() {
            if !urow[col].is_zero() {
                eliminate_row(urow, prow, col, col, cols);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    (m, pivots)
}

/// Rank by inserting rows one at a time into an echelon structure keyed by
/// pivot column; fully reduced rows are dropped, so memory stays bounded by
/// the rank. Same row operations as [`integer_echelon`], different order.
fn incremental_rank(rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    // pivot column -> reduced row with that leading position
    let mut pivots: BTreeMap<usize, Vec<BigInt>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some(lead) = row.iter().position(|e| !e.is_zero()) else {
                break;
            };
            match pivots.get(&lead) {
                None => {
                    pivots.insert(lead, row);
                    break;
                }
                Some(prow) => {
                    eliminate_row(&mut row, prow, lead, lead, cols);
                }
            }
        }
    }
    pivots.len()
}

/// Back-substitute an integer echelon form into a rational reduced
/// row-echelon form (pivot entries one, zeros above each pivot).
fn rref_from_echelon(
    ech: Vec<Vec<BigInt>>,
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<BigRational>> {
    let r = pivots.len();
    let mut rows: Vec<Vec<BigRational>> = ech
        .into_iter()
        .take(r)
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for i in (0..r).rev() {
        let pc = pivots[i];
        let p = rows[i][pc].clone();
        if !p.is_one() {
            for v in pc..cols {
                if !rows[i][v].is_zero() {
                    let scaled = &rows[i][v] / &p;
                    rows[i][v] = scaled;
                }
            }
        }
        let (above, rest) = rows.split_at_mut(i);
        let prow = &rest[0];
        for urow in above.iter_mut() {
            if urow[pc].is_zero() {
                continue;
            }
            let f = urow[pc].clone();
            for v in pc..cols {
                if !prow[v].is_zero() {
                    let sub = &f * &prow[v];
                    urow[v] = &urow[v] - &sub;
                }
            }
        }
    }
    rows
}

/// A linear subspace of a labeled coordinate space, stored by its unique
/// reduced row-echelon basis so equality of subspaces is componentwise
/// equality of bases.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<BigRational>>,
    pivot_cols: Vec<usize>,
    labels: Vec<String>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Subspace {
    /// Canonicalize a spanning set into the RREF basis of its span.
    pub fn from_spanning(vectors: Vec<Vec<BigRational>>, ambient_dim: usize) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
        }
        let (basis, pivot_cols) = if vectors.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            ExactMatrix::from_rows(vectors).rref()
        };
        Subspace {
            ambient_dim,
            basis,
            pivot_cols,
            labels: (0..ambient_dim).map(|j| format!("e{j}")).collect(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::from_spanning(Vec::new(), ambient_dim)
    }

    /// Replace the default ambient labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.ambient_dim);
        self.labels = labels;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Canonical coset representative: `v` minus its projection onto the
    /// basis, zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut out = v.to_vec();
        for (i, &p) in self.pivot_cols.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(&self.basis[i]) {
                if !b.is_zero() {
                    let sub = &f * b;
                    *o = &*o - &sub;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_identity() {
        let a = ExactMatrix::from_int_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.rank(), 3);
    }

    #[test]
    fn rank_proportional_rows() {
        let a = ExactMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(ExactMatrix::zeros(4, 5).rank(), 0);
    }

    #[test]
    fn rank_agrees_between_orientations() {
        // wide: the incremental path; tall: the column-major path
        let wide = ExactMatrix::from_int_rows(&[vec![1, 2, 3, 4, 5], vec![2, 4, 6, 8, 11]]);
        assert_eq!(wide.rank(), 2);
        let tall = ExactMatrix::from_int_rows(&[
            vec![1, 2],
            vec![2, 4],
            vec![3, 6],
            vec![4, 8],
            vec![5, 11],
        ]);
        assert_eq!(tall.rank(), 2);
    }

    #[test]
    fn kernel_of_proportional_rows() {
        let a = ExactMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        let k = a.kernel_basis();
        // spanned by (-2, 1); the canonical RREF representative is (1, -1/2)
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![q(1), qr(-1, 2)]);
        assert!(k.contains(&[q(-2), q(1)]));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let a = ExactMatrix::from_int_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(a.kernel_basis().dim(), 0);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let k = ExactMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(k.dim(), 3);
        for (i, b) in k.basis().iter().enumerate() {
            for (j, e) in b.iter().enumerate() {
                assert_eq!(*e, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn surjectivity_cases() {
        assert!(ExactMatrix::from_int_rows(&[vec![1, 0, 0], vec![0, 1, 0]]).is_surjective());
        assert!(!ExactMatrix::zeros(1, 3).is_surjective());
        assert!(ExactMatrix::from_int_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .is_surjective());
    }

    #[test]
    fn kernel_vectors_are_killed_exactly() {
        let a = ExactMatrix::from_int_rows(&[vec![2, 3, 5], vec![7, 11, 13], vec![9, 14, 18]]);
        let k = a.kernel_basis();
        for v in k.basis() {
            assert!(a.mul_vector(v).iter().all(Zero::is_zero));
        }
        assert_eq!(a.rank() + k.dim(), a.cols());
    }

    #[test]
    fn rational_entries_are_handled_exactly() {
        let a = ExactMatrix::from_rows(vec![
            vec![qr(1, 2), qr(1, 3)],
            vec![qr(3, 2), q(1)],
        ]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert!(a.mul_vector(&k.basis()[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let a = ExactMatrix::from_int_rows(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]]);
        let k = a.kernel_basis();
        let again = Subspace::from_spanning(k.basis().to_vec(), k.ambient_dim());
        assert_eq!(k, again);
    }

    #[test]
    fn reduce_detects_membership() {
        let s = Subspace::from_spanning(
            vec![vec![q(1), q(0), q(2)], vec![q(0), q(1), q(3)]],
            3,
        );
        assert!(s.contains(&[q(2), q(1), q(7)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
    }
}
