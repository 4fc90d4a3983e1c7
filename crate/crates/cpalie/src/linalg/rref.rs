use super::matrix::dot;
use super::{Matrix, Rational, Subspace};
use num_traits::{One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Result of a reduced row-echelon computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    /// Column index of each pivot, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form with deterministic pivoting: pivots are chosen in
/// the leftmost column containing a nonzero entry, topmost candidate row
/// first. Same input, same output, regardless of feature flags.
pub fn rref(m: &Matrix) -> Rref {
    #[cfg(feature = "parallel")]
    {
        // The parallel path only wins on wide eliminations; small systems
        // dominate this crate, so gate on size to keep overhead negligible.
        if m.rows() * m.cols() >= 64 * 64 {
            return rref_parallel(m);
        }
    }
    rref_sequential(m)
}

/// Single-threaded elimination. Always available; the reference semantics.
pub fn rref_sequential(m: &Matrix) -> Rref {
    rref_impl(m, eliminate_sequential)
}

/// Rayon-backed elimination: rows are reduced against the pivot row in
/// parallel. Pivot choice is identical to the sequential variant.
#[cfg(feature = "parallel")]
pub fn rref_parallel(m: &Matrix) -> Rref {
    rref_impl(m, eliminate_parallel)
}

fn eliminate_sequential(rows: &mut [Vec<Rational>], pivot: &[Rational], col: usize) {
    for row in rows.iter_mut() {
        eliminate_row(row, pivot, col);
    }
}

#[cfg(feature = "parallel")]
fn eliminate_parallel(rows: &mut [Vec<Rational>], pivot: &[Rational], col: usize) {
    rows.par_iter_mut()
        .for_each(|row| eliminate_row(row, pivot, col));
}

fn eliminate_row(row: &mut [Rational], pivot: &[Rational], col: usize) {
    let factor = row[col].clone();
    if factor.is_zero() {
        return;
    }
    for (x, p) in row.iter_mut().zip(pivot) {
        if !p.is_zero() {
            *x = &*x - &(&factor * p);
        }
    }
}

fn rref_impl(m: &Matrix, eliminate: impl Fn(&mut [Vec<Rational>], &[Rational], usize)) -> Rref {
    let (nrows, ncols) = (m.rows(), m.cols());
    let mut rows: Vec<Vec<Rational>> = (0..nrows).map(|i| m.row_vec(i)).collect();
    let mut pivots = Vec::new();
    let mut next_row = 0;

    for col in 0..ncols {
        let Some(found) = (next_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = {
            let lead = rows[next_row][col].clone();
            Rational::one() / lead
        };
        for x in rows[next_row].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot = rows[next_row].clone();
        let (above, rest) = rows.split_at_mut(next_row);
        let (_, below) = rest.split_at_mut(1);
        eliminate(above, &pivot, col);
        eliminate(below, &pivot, col);
        pivots.push(col);
        next_row += 1;
        if next_row == nrows {
            break;
        }
    }

    Rref {
        matrix: Matrix::from_rows(rows),
        pivots,
    }
}

/// Kernel of `m` as a canonical subspace of the column-index space.
///
/// Basis vectors come from the free columns of the RREF in increasing column
/// order (each has 1 at its free column), then the whole set is canonicalized
/// through `Subspace::from_vectors`.
pub fn kernel(m: &Matrix) -> Subspace {
    let r = rref(m);
    let ncols = m.cols();
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; ncols];
        for (row, &col) in r.pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![Rational::zero(); ncols];
        vec[free] = Rational::one();
        for (col, slot) in pivot_of_col.iter().enumerate() {
            if let Some(row) = slot {
                vec[col] = -r.matrix[(*row, free)].clone();
            }
        }
        basis.push(vec);
    }
    Subspace::from_vectors(basis, ncols)
}

/// Solution set of `m x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    /// No solution exists.
    Inconsistent,
    /// `particular + kernel`; the particular point has zeros in all free
    /// coordinates, making it the canonical representative.
    Solution {
        particular: Vec<Rational>,
        kernel: Subspace,
    },
}

/// Solves the affine system `m x = b` exactly.
pub fn solve_affine(m: &Matrix, b: &[Rational]) -> AffineSolution {
    assert_eq!(m.rows(), b.len(), "solve_affine: rhs length mismatch");
    let ncols = m.cols();
    let mut aug = Matrix::zero(m.rows(), ncols + 1);
    for i in 0..m.rows() {
        for j in 0..ncols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, ncols)] = b[i].clone();
    }
    let r = rref(&aug);
    if r.pivots.last() == Some(&ncols) {
        return AffineSolution::Inconsistent;
    }
    let mut particular = vec![Rational::zero(); ncols];
    for (row, &col) in r.pivots.iter().enumerate() {
        particular[col] = r.matrix[(row, ncols)].clone();
    }
    AffineSolution::Solution {
        particular,
        kernel: kernel(m),
    }
}

/// Residual `m x - b`, for verifying solutions in tests.
pub fn residual(m: &Matrix, x: &[Rational], b: &[Rational]) -> Vec<Rational> {
    m.iter_rows()
        .zip(b)
        .map(|(row, bi)| &dot(row, x) - bi)
        .collect()
}
