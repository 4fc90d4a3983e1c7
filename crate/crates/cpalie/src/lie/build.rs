use super::{basis_vector, default_labels, LieAlgebra, LieError};
use crate::linalg::{Matrix, Rational, Subspace};
use num_traits::Zero;

/// Quotient by a Lie ideal, with the projection matrix onto quotient
/// coordinates.
///
/// The quotient basis is the set of standard basis vectors at the non-pivot
/// columns of the ideal's canonical basis, so the projection is exact and
/// deterministic: `project * x` are the coordinates of `x + I`.
pub fn quotient(l: &LieAlgebra, ideal: &Subspace) -> Result<(LieAlgebra, Matrix), LieError> {
    l.require_valid()?;
    if !l.is_ideal(ideal) {
        return Err(LieError::NotAnIdeal);
    }
    let n = l.dim();
    let pivots: Vec<usize> = ideal
        .basis()
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let q = free.len();

    // project[(a, :)] = (reduction of x mod I at coordinate free[a]).
    // Reducing e_c mod I: subtract, for each pivot p, (e_c)_p times the basis
    // row; since rows are in RREF the result is e_c minus contributions at
    // pivot coordinates only when c itself is a pivot.
    let mut project = Matrix::zero(q, n);
    for (a, &f) in free.iter().enumerate() {
        project[(a, f)] = num_traits::One::one();
    }
    for (row, &p) in pivots.iter().enumerate() {
        for (a, &f) in free.iter().enumerate() {
            project[(a, p)] = -ideal.basis()[row][f].clone();
        }
    }

    let mut c = vec![vec![vec![Rational::zero(); q]; q]; q];
    for a in 0..q {
        for b in 0..q {
            let br = l.bracket(&basis_vector(n, free[a]), &basis_vector(n, free[b]));
            let coords = project.apply(&br);
            c[a][b] = coords;
        }
    }
    let labels = free
        .iter()
        .map(|&f| l.labels()[f].clone())
        .collect::<Vec<_>>();
    let quot = LieAlgebra::new(format!("{}/I", l.name()), labels, c);
    debug_assert!(quot.is_valid());
    Ok((quot, project))
}

/// Direct sum of Lie algebras: block-diagonal bracket, cross terms zero.
pub fn direct_sum(l1: &LieAlgebra, l2: &LieAlgebra) -> LieAlgebra {
    let (n1, n2) = (l1.dim(), l2.dim());
    let n = n1 + n2;
    let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n1 {
        for j in 0..n1 {
            for k in 0..n1 {
                c[i][j][k] = l1.c(i, j, k).clone();
            }
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            for k in 0..n2 {
                c[n1 + i][n1 + j][n1 + k] = l2.c(i, j, k).clone();
            }
        }
    }
    LieAlgebra::new(
        format!("{} (+) {}", l1.name(), l2.name()),
        default_labels(n),
        c,
    )
}

/// Semidirect product `s ⋉ a` of `s` acting on an abelian algebra `a` of
/// dimension `abelian_dim` through `rep`: one matrix per basis element of
/// `s`, satisfying `rep([x,y]) = rep(x) rep(y) - rep(y) rep(x)` (checked).
pub fn semidirect(
    s: &LieAlgebra,
    rep: &[Matrix],
    abelian_dim: usize,
) -> Result<LieAlgebra, LieError> {
    s.require_valid()?;
    let ns = s.dim();
    assert_eq!(rep.len(), ns, "semidirect: one matrix per basis element");
    for m in rep {
        assert_eq!(
            (m.rows(), m.cols()),
            (abelian_dim, abelian_dim),
            "semidirect: representation matrices must be square of the module dimension"
        );
    }
    // Representation property on all basis pairs.
    for i in 0..ns {
        for j in (i + 1)..ns {
            let commutator = &(&rep[i] * &rep[j]) - &(&rep[j] * &rep[i]);
            let mut of_bracket = Matrix::zero(abelian_dim, abelian_dim);
            for k in 0..ns {
                let coeff = s.c(i, j, k);
                if !coeff.is_zero() {
                    of_bracket = &of_bracket + &rep[k].scale(coeff);
                }
            }
            if commutator != of_bracket {
                return Err(LieError::NotARepresentation);
            }
        }
    }

    let n = ns + abelian_dim;
    let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..ns {
        for j in 0..ns {
            for k in 0..ns {
                c[i][j][k] = s.c(i, j, k).clone();
            }
        }
    }
    // [x, v] = rep(x) v, [v, x] = -rep(x) v.
    for i in 0..ns {
        for v in 0..abelian_dim {
            for w in 0..abelian_dim {
                let entry = rep[i][(w, v)].clone();
                if entry.is_zero() {
                    continue;
                }
                c[i][ns + v][ns + w] = entry.clone();
                c[ns + v][i][ns + w] = -entry;
            }
        }
    }
    let out = LieAlgebra::new(
        format!("{} |x a{}", s.name(), abelian_dim),
        default_labels(n),
        c,
    );
    out.require_valid()?;
    Ok(out)
}
