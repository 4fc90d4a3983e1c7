use super::{basis_vector, LieAlgebra, LieError};
use crate::linalg::{kernel, Matrix, Rational, Subspace};
use num_traits::Zero;

/// Structural summary of a Lie algebra.
///
/// The zero-dimensional algebra is abelian, solvable, nilpotent, perfect and
/// metabelian by convention (all series are trivially zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructReport {
    pub solvable: bool,
    pub nilpotent: bool,
    pub perfect: bool,
    pub abelian: bool,
    pub metabelian: bool,
    /// `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ …` to stabilization.
    pub derived_series: Vec<Subspace>,
    /// `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` to stabilization.
    pub lower_central_series: Vec<Subspace>,
    pub center: Subspace,
    /// Solvable radical: Killing-orthogonal complement of `[g,g]`.
    pub radical: Subspace,
}

/// Killing form matrix `K[i][j] = trace(ad(e_i) ad(e_j))`.
pub fn killing_matrix(l: &LieAlgebra) -> Matrix {
    let n = l.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| l.adjoint(&basis_vector(n, i))).collect();
    let mut k = Matrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let t = (&ads[i] * &ads[j]).trace().expect("square by construction");
            k[(i, j)] = t.clone();
            k[(j, i)] = t;
        }
    }
    k
}

fn series(l: &LieAlgebra, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![Subspace::full(l.dim())];
    loop {
        let next = step(out.last().unwrap());
        if &next == out.last().unwrap() {
            return out;
        }
        out.push(next);
    }
}

/// All structural flags and series in one pass.
pub fn structure_report(l: &LieAlgebra) -> Result<StructReport, LieError> {
    l.require_valid()?;
    let n = l.dim();
    let full = Subspace::full(n);

    let derived_series = series(l, |s| l.subspace_bracket(s, s));
    let lower_central_series = series(l, |s| l.subspace_bracket(&full, s));

    let solvable = derived_series.last().unwrap().is_zero();
    let nilpotent = lower_central_series.last().unwrap().is_zero();
    let derived = l.derived();
    let abelian = derived.is_zero();
    let perfect = derived == full;
    let metabelian = l.subspace_bracket(&derived, &derived).is_zero();

    // x is in the radical iff K(x, d) = 0 for every d in [g,g]; rows of the
    // constraint matrix are (d-basis-vector)^T * K.
    let radical = if derived.is_zero() {
        full.clone()
    } else {
        let k = killing_matrix(l);
        let mut m = Matrix::zero(derived.dim(), n);
        for (r, d) in derived.basis().iter().enumerate() {
            let row = k.apply(d); // K is symmetric, so K d gives the functional
            for (c, val) in row.into_iter().enumerate() {
                m[(r, c)] = val;
            }
        }
        kernel(&m)
    };

    Ok(StructReport {
        solvable,
        nilpotent,
        perfect,
        abelian,
        metabelian,
        derived_series,
        lower_central_series,
        center: l.center(),
        radical,
    })
}

/// Row-major flattening of a matrix, the coordinate convention shared by
/// `derivations` and `adjoint_image`.
pub(crate) fn flatten(m: &Matrix) -> Vec<Rational> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        v.extend(m.row(i).iter().cloned());
    }
    v
}

pub(crate) fn unflatten(v: &[Rational], n: usize) -> Matrix {
    assert_eq!(v.len(), n * n, "unflatten: wrong length");
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = v[i * n + j].clone();
        }
    }
    m
}

/// Derivation algebra `Der(g)` as a subspace of row-major-flattened `n x n`
/// matrices: solutions `D` of `D[x,y] = [Dx,y] + [x,Dy]` over basis pairs.
pub fn derivations(l: &LieAlgebra) -> Result<Subspace, LieError> {
    l.require_valid()?;
    let n = l.dim();
    if n == 0 {
        return Ok(Subspace::zero(0));
    }
    // Unknowns D_{a,b} at flat index a*n + b. For each pair i < j and output
    // coordinate m:
    //   sum_k c[i][j][k] D_{m,k} - sum_a D_{a,i} c[a][j][m] - sum_a D_{a,j} c[i][a][m] = 0.
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut sys = Matrix::zero(pairs.len() * n, n * n);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for m in 0..n {
            let row = p * n + m;
            for k in 0..n {
                let cijk = l.c(i, j, k);
                if !cijk.is_zero() {
                    sys[(row, m * n + k)] = &sys[(row, m * n + k)] + cijk;
                }
            }
            for a in 0..n {
                let caj = l.c(a, j, m);
                if !caj.is_zero() {
                    sys[(row, a * n + i)] = &sys[(row, a * n + i)] - caj;
                }
                let cia = l.c(i, a, m);
                if !cia.is_zero() {
                    sys[(row, a * n + j)] = &sys[(row, a * n + j)] - cia;
                }
            }
        }
    }
    Ok(kernel(&sys))
}

/// Basis matrices of a flattened matrix subspace.
pub fn matrices_of(space: &Subspace, n: usize) -> Vec<Matrix> {
    space.basis().iter().map(|v| unflatten(v, n)).collect()
}

/// `ad(g)` as a subspace of flattened matrices.
pub fn adjoint_image(l: &LieAlgebra) -> Subspace {
    let n = l.dim();
    Subspace::from_vectors(
        (0..n)
            .map(|i| flatten(&l.adjoint(&basis_vector(n, i))))
            .collect(),
        n * n,
    )
}

/// Complete means trivial center and `Der(g) = ad(g)`.
pub fn is_complete(l: &LieAlgebra) -> Result<bool, LieError> {
    l.require_valid()?;
    if !l.center().is_zero() {
        return Ok(false);
    }
    Ok(derivations(l)? == adjoint_image(l))
}
