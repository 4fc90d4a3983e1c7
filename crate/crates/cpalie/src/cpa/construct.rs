use super::{require_cpa, CPAProduct, CpaError};
use crate::lie::{direct_sum, quotient, structure_report, LieAlgebra};
use crate::linalg::{char_poly, kernel, Matrix, Rational, Subspace};
use num_traits::Zero;

/// The family on the three-dimensional Heisenberg algebra:
/// `e1·e1 = e2`, `e1·e2 = e2·e1 = mu e3`.
pub fn heisenberg_a_mu(mu: &Rational) -> CPAProduct {
    CPAProduct::from_products(
        3,
        &[
            ((0, 0), vec![(1, Rational::from_integer(1.into()))]),
            ((0, 1), vec![(2, mu.clone())]),
        ],
    )
}

/// The two-parameter family on the two-dimensional Borel algebra with
/// `[e1, e2] = -2 e1`: `e1·e2 = alpha e1`, `e2·e2 = beta e1`. A
/// CPA-structure exactly when `alpha (alpha - 2) = 0`.
pub fn borel2_product(alpha: &Rational, beta: &Rational) -> CPAProduct {
    CPAProduct::from_products(
        2,
        &[
            ((0, 1), vec![(0, alpha.clone())]),
            ((1, 1), vec![(0, beta.clone())]),
        ],
    )
}

/// Center of a subalgebra, as a subspace of the ambient space: the vectors
/// of `s` whose bracket with all of `s` vanishes.
fn center_of(l: &LieAlgebra, s: &Subspace) -> Subspace {
    let n = l.dim();
    let d = s.dim();
    if d == 0 {
        return Subspace::zero(n);
    }
    // z = sum_c w_c b_c with [z, b] = 0 for every basis vector b of s.
    let mut rows = Vec::new();
    for b in s.basis() {
        for k in 0..n {
            let mut row = vec![Rational::zero(); d];
            for (c, bc) in s.basis().iter().enumerate() {
                row[c] = l.bracket(bc, b)[k].clone();
            }
            rows.push(row);
        }
    }
    let w = kernel(&Matrix::from_rows(rows));
    let vectors = w
        .basis()
        .iter()
        .map(|w| {
            let mut v = vec![Rational::zero(); n];
            for (c, bc) in s.basis().iter().enumerate() {
                if !w[c].is_zero() {
                    for (x, y) in v.iter_mut().zip(bc) {
                        *x = &*x + &(&w[c] * y);
                    }
                }
            }
            v
        })
        .collect();
    Subspace::from_vectors(vectors, n)
}

fn check_cocycle_preconditions(l: &LieAlgebra, ideal: &Subspace) -> Result<(), CpaError> {
    l.require_valid()?;
    if !l.is_ideal(ideal) {
        return Err(CpaError::NotAnIdeal);
    }
    if !ideal.contains_subspace(&l.derived()) {
        return Err(CpaError::QuotientNotAbelian);
    }
    Ok(())
}

/// Basis of the maps `f` from the (abelian) quotient by `ideal` into the
/// center of `ideal` satisfying `[f(x quotient), y] = [f(y quotient), x]`.
/// Each basis element is a `dim x q` matrix applied to quotient coordinates.
pub fn cocycle_space(l: &LieAlgebra, ideal: &Subspace) -> Result<Vec<Matrix>, CpaError> {
    check_cocycle_preconditions(l, ideal)?;
    let n = l.dim();
    let zc = center_of(l, ideal);
    debug_assert!(
        l.subspace_bracket(ideal, &zc).is_zero(),
        "ideal must act trivially on its center"
    );
    let (_, projection) = quotient(l, ideal)?;
    let q = projection.rows();
    let zdim = zc.dim();
    if q == 0 || zdim == 0 {
        return Ok(Vec::new());
    }
    // f = Z * G with unknown G (zdim x q); one symmetry row per basis pair
    // and coordinate.
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let pi = projection.col_vec(i);
            let pj = projection.col_vec(j);
            for k in 0..n {
                let mut row = vec![Rational::zero(); zdim * q];
                for (w, zw) in zc.basis().iter().enumerate() {
                    let zi = l.bracket(zw, &crate::lie::basis_vector(n, i))[k].clone();
                    let zj = l.bracket(zw, &crate::lie::basis_vector(n, j))[k].clone();
                    for c in 0..q {
                        let mut acc = Rational::zero();
                        if !pi[c].is_zero() && !zj.is_zero() {
                            acc = &acc + &(&pi[c] * &zj);
                        }
                        if !pj[c].is_zero() && !zi.is_zero() {
                            acc = &acc - &(&pj[c] * &zi);
                        }
                        if !acc.is_zero() {
                            row[w * q + c] = acc;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![Rational::zero(); zdim * q]);
    }
    let g_space = kernel(&Matrix::from_rows(rows));
    Ok(g_space
        .basis()
        .iter()
        .map(|g| {
            let mut f = Matrix::zero(n, q);
            for (w, zw) in zc.basis().iter().enumerate() {
                for c in 0..q {
                    let coeff = &g[w * q + c];
                    if coeff.is_zero() {
                        continue;
                    }
                    for r in 0..n {
                        f[(r, c)] = &f[(r, c)] + &(coeff * &zw[r]);
                    }
                }
            }
            f
        })
        .collect())
}

/// The product `x·y = [f(x quotient), y]` for a map `f` from
/// [`cocycle_space`]. All triple products vanish (checked), which makes the
/// product associative.
pub fn cocycle_product(
    l: &LieAlgebra,
    ideal: &Subspace,
    f: &Matrix,
) -> Result<CPAProduct, CpaError> {
    check_cocycle_preconditions(l, ideal)?;
    let n = l.dim();
    let zc = center_of(l, ideal);
    let (_, projection) = quotient(l, ideal)?;
    if f.rows() != n || f.cols() != projection.rows() {
        return Err(CpaError::NotACocycle);
    }
    for c in 0..f.cols() {
        if !zc.contains(&f.col_vec(c)) {
            return Err(CpaError::NotACocycle);
        }
    }
    let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        let fi = f.apply(&projection.col_vec(i));
        for j in 0..n {
            d[i][j] = l.bracket(&fi, &crate::lie::basis_vector(n, j));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if d[i][j] != d[j][i] {
                return Err(CpaError::NotACocycle);
            }
        }
    }
    let p = CPAProduct::new(d);
    require_cpa(l, &p)?;
    assert!(
        triple_products_vanish(&p),
        "cocycle product must kill triples"
    );
    Ok(p)
}

fn triple_products_vanish(p: &CPAProduct) -> bool {
    let n = p.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = p.apply(p.product_basis(i, j), &crate::lie::basis_vector(n, k));
                let right = p.apply(&crate::lie::basis_vector(n, i), p.product_basis(j, k));
                if left.iter().any(|x| !x.is_zero()) || right.iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

fn is_associative(p: &CPAProduct) -> bool {
    let n = p.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = p.apply(p.product_basis(i, j), &crate::lie::basis_vector(n, k));
                let right = p.apply(&crate::lie::basis_vector(n, i), p.product_basis(j, k));
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// The product `x·y = [[z, x], y]` for a central element `z` of the ideal.
/// A special case of [`cocycle_product`] with `f = [z, ·]`.
pub fn central_z_product(
    l: &LieAlgebra,
    ideal: &Subspace,
    z: &[Rational],
) -> Result<CPAProduct, CpaError> {
    check_cocycle_preconditions(l, ideal)?;
    let n = l.dim();
    let zc = center_of(l, ideal);
    if z.len() != n || !zc.contains(z) {
        return Err(CpaError::NotCentralInI);
    }
    let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        let zi = l.bracket(z, &crate::lie::basis_vector(n, i));
        for j in 0..n {
            d[i][j] = l.bracket(&zi, &crate::lie::basis_vector(n, j));
        }
    }
    let p = CPAProduct::new(d);
    require_cpa(l, &p)?;
    assert!(
        triple_products_vanish(&p),
        "central product must kill triples"
    );
    Ok(p)
}

/// Searches for a vector that is an eigenvector of every adjoint operator
/// simultaneously, refining rational eigenspaces basis element by basis
/// element. `None` when the search proves nothing rational exists along the
/// explored spectra (an explicit vector can still be supplied).
pub fn common_eigenvector(l: &LieAlgebra) -> Result<Option<Vec<Rational>>, CpaError> {
    l.require_valid()?;
    let n = l.dim();
    let mut spaces = vec![Subspace::full(n)];
    for i in 0..n {
        let ad = l.adjoint(&crate::lie::basis_vector(n, i));
        let roots = char_poly(&ad)?.rational_roots();
        let mut next = Vec::new();
        for s in &spaces {
            for (root, _) in &roots {
                let mut shifted = ad.clone();
                for r in 0..n {
                    shifted[(r, r)] = &shifted[(r, r)] - root;
                }
                let eig = kernel(&shifted);
                let cut = s.intersect(&eig);
                if !cut.is_zero() {
                    next.push(cut);
                }
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        // Keep the search bounded: identical refinements collapse.
        next.dedup_by(|a, b| a.basis() == b.basis());
        spaces = next;
    }
    Ok(spaces.first().map(|s| s.basis()[0].clone()))
}

/// The product `x·y = lambda(x) lambda(y) v` on a solvable algebra with a
/// common eigenvector `v`; returns the product and the eigenvalue
/// functional `lambda` per basis element.
pub fn lie_eigenfunctional_product(
    l: &LieAlgebra,
    v: &[Rational],
) -> Result<(CPAProduct, Vec<Rational>), CpaError> {
    l.require_valid()?;
    let n = l.dim();
    if !structure_report(l)?.solvable {
        return Err(CpaError::NotSolvable);
    }
    if v.len() != n || v.iter().all(Zero::is_zero) {
        return Err(CpaError::NotCommonEigenvector);
    }
    let vpos = v.iter().position(|x| !x.is_zero()).unwrap();
    let mut lambda = Vec::with_capacity(n);
    for i in 0..n {
        let w = l.bracket(&crate::lie::basis_vector(n, i), v);
        let lam = &w[vpos] / &v[vpos];
        let scaled: Vec<Rational> = v.iter().map(|x| &lam * x).collect();
        if w != scaled {
            return Err(CpaError::NotCommonEigenvector);
        }
        lambda.push(lam);
    }
    // lambda kills brackets; a consequence of the eigenvector property.
    for i in 0..n {
        for j in (i + 1)..n {
            let lb: Rational = l
                .bracket_basis(i, j)
                .iter()
                .zip(&lambda)
                .fold(Rational::zero(), |acc, (c, lam)| &acc + &(c * lam));
            debug_assert!(lb.is_zero(), "eigenvalue functional on a bracket");
        }
    }
    let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = &lambda[i] * &lambda[j];
            if !c.is_zero() {
                d[i][j] = v.iter().map(|x| &c * x).collect();
            }
        }
    }
    let p = CPAProduct::new(d);
    require_cpa(l, &p)?;
    Ok((p, lambda))
}

/// Nontrivial product on any non-perfect algebra with nonzero center:
/// `x·y = ell(x) ell(y) z` where `ell` is the canonical functional killing
/// the derived algebra and `z` is central, preferring central elements
/// inside the derived algebra. Always associative.
pub fn center_construction_product(l: &LieAlgebra) -> Result<CPAProduct, CpaError> {
    let report = structure_report(l)?;
    if report.perfect {
        return Err(CpaError::IsPerfect);
    }
    if report.center.is_zero() {
        return Err(CpaError::TrivialCenter);
    }
    let n = l.dim();
    let derived = l.derived();
    let conditions = derived.membership_conditions();
    debug_assert!(conditions.rows() > 0, "non-perfect algebra");
    let ell = conditions.row_vec(0);
    let central_derived = report.center.intersect(&derived);
    let z = if !central_derived.is_zero() {
        central_derived.basis()[0].clone()
    } else {
        report.center.basis()[0].clone()
    };
    let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = &ell[i] * &ell[j];
            if !c.is_zero() {
                d[i][j] = z.iter().map(|x| &c * x).collect();
            }
        }
    }
    let p = CPAProduct::new(d);
    require_cpa(l, &p)?;
    assert!(!p.is_zero(), "construction must produce a nonzero product");
    assert!(is_associative(&p), "construction must be associative");
    Ok(p)
}

/// Block product on the direct sum: factor products on the factors, zero
/// across. The factor products must be verified structures.
pub fn componentwise_product(
    l1: &LieAlgebra,
    p1: &CPAProduct,
    l2: &LieAlgebra,
    p2: &CPAProduct,
) -> Result<(LieAlgebra, CPAProduct), CpaError> {
    require_cpa(l1, p1)?;
    require_cpa(l2, p2)?;
    let n1 = l1.dim();
    let n2 = l2.dim();
    let n = n1 + n2;
    let sum = direct_sum(l1, l2);
    let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n1 {
        for j in 0..n1 {
            for k in 0..n1 {
                d[i][j][k] = p1.d(i, j, k).clone();
            }
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            for k in 0..n2 {
                d[n1 + i][n1 + j][n1 + k] = p2.d(i, j, k).clone();
            }
        }
    }
    let p = CPAProduct::new(d);
    require_cpa(&sum, &p)?;
    Ok((sum, p))
}
