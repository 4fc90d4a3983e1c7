//! Commutative products on Lie algebras: axiom verification, annihilator and
//! ideal chain, the linear/quadratic solver pipelines, inner structures and
//! their spectral decomposition, and the constructive product recipes.

mod chain;
mod construct;
mod inner;
mod resolve;
mod solve;

pub use chain::{annihilator, ideal_chain, quotient_cpa, ChainResult};
pub use construct::{
    borel2_product, center_construction_product, central_z_product, cocycle_product, cocycle_space,
    common_eigenvector, componentwise_product, heisenberg_a_mu, lie_eigenfunctional_product,
};
pub use inner::{
    detect_inner, inner_phi_linear_space, inner_solve, phi_decompose, phi_product, Decomposition,
    DecompositionChecks, InnerDetection, InnerSolveReport, InnerWitness,
};
pub use resolve::{classify, AffineComponent, Classification, ClassifyMethod, Kind};
pub use solve::{
    pair_index, param_product, quadratic_residuals, solve_linear_part, solve_linear_part_dense,
    QuadPoly,
};

use crate::lie::LieAlgebra;
use crate::lie::LieError;
use crate::linalg::{LinalgError, Matrix, Rational};
use num_traits::Zero;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

/// A commutative bilinear product by structure constants: `d[i][j][k]` is the
/// `e_k`-coefficient of `e_i · e_j`. Symmetry `d[i][j] = d[j][i]` is enforced
/// by every constructor, so the first commutativity axiom holds by
/// representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPAProduct {
    d: Vec<Vec<Vec<Rational>>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CpaError {
    #[error("dimension mismatch: product is on dimension {product}, algebra has {algebra}")]
    DimensionMismatch { algebra: usize, product: usize },
    #[error("product fails the CPA axioms")]
    NotACpa,
    #[error("subspace is not an ideal for both bracket and product")]
    NotATwoSidedIdeal,
    #[error("algebra is not complete")]
    NotComplete,
    #[error("quotient modulo the ideal is not abelian")]
    QuotientNotAbelian,
    #[error("subspace is not a Lie ideal")]
    NotAnIdeal,
    #[error("map is not a cocycle for the ideal")]
    NotACocycle,
    #[error("vector is not central in the ideal")]
    NotCentralInI,
    #[error("vector is not a common eigenvector of the adjoint action")]
    NotCommonEigenvector,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("algebra is perfect")]
    IsPerfect,
    #[error("algebra has trivial center")]
    TrivialCenter,
    #[error("the endomorphism has irrational eigenvalues")]
    UnsupportedSpectrum,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl CPAProduct {
    /// Raw table; must be `n x n x n` and symmetric in the first two indices.
    pub fn new(d: Vec<Vec<Vec<Rational>>>) -> Self {
        let n = d.len();
        for plane in &d {
            assert_eq!(plane.len(), n, "product table must be cubic");
            for row in plane {
                assert_eq!(row.len(), n, "product table must be cubic");
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                assert_eq!(d[i][j], d[j][i], "product table must be symmetric");
            }
        }
        CPAProduct { d }
    }

    pub fn zero(n: usize) -> Self {
        CPAProduct {
            d: vec![vec![vec![Rational::zero(); n]; n]; n],
        }
    }

    /// Builds from the products of pairs `i <= j`; the symmetric completion
    /// is filled in automatically.
    pub fn from_products(n: usize, products: &[((usize, usize), Vec<(usize, Rational)>)]) -> Self {
        let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
        for ((i, j), coeffs) in products {
            assert!(i <= j, "from_products expects i <= j pairs");
            for (k, v) in coeffs {
                d[*i][*j][*k] = v.clone();
                d[*j][*i][*k] = v.clone();
            }
        }
        CPAProduct { d }
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.d[i][j][k]
    }

    /// `e_i · e_j` as a coordinate vector.
    pub fn product_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.d[i][j]
    }

    /// `x · y` for coordinate vectors.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        assert_eq!(x.len(), n, "apply: x has wrong length");
        assert_eq!(y.len(), n, "apply: y has wrong length");
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let scale = &x[i] * &y[j];
                for k in 0..n {
                    let dijk = &self.d[i][j][k];
                    if !dijk.is_zero() {
                        out[k] = &out[k] + &(&scale * dijk);
                    }
                }
            }
        }
        out
    }

    /// Left multiplication operator `L(e_i)`: `L(e_i) y = e_i · y`.
    pub fn l_operator(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zero(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(k, j)] = self.d[i][j][k].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.d
            .iter()
            .all(|p| p.iter().all(|r| r.iter().all(Zero::is_zero)))
    }

    /// The flattened coordinates used by the solver and for canonical
    /// comparison: entries `d[i][j][k]` for `i <= j` (lexicographic), then
    /// `k`.
    pub fn flatten_sym(&self) -> Vec<Rational> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * (n + 1) / 2 * n);
        for i in 0..n {
            for j in i..n {
                out.extend(self.d[i][j].iter().cloned());
            }
        }
        out
    }

    /// Inverse of `flatten_sym`.
    pub fn from_flat_sym(n: usize, flat: &[Rational]) -> Self {
        assert_eq!(flat.len(), n * (n + 1) / 2 * n, "bad flattened length");
        let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut pos = 0;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    d[i][j][k] = flat[pos].clone();
                    d[j][i][k] = flat[pos].clone();
                    pos += 1;
                }
            }
        }
        CPAProduct { d }
    }

    /// `acc + c * p`, entrywise.
    pub fn add_scaled(&self, c: &Rational, p: &CPAProduct) -> CPAProduct {
        let n = self.dim();
        assert_eq!(p.dim(), n, "add_scaled: dimension mismatch");
        let mut d = self.d.clone();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !p.d[i][j][k].is_zero() {
                        d[i][j][k] = &d[i][j][k] + &(c * &p.d[i][j][k]);
                    }
                }
            }
        }
        CPAProduct { d }
    }
}

/// Axiom check outcome. The three flags cover commutativity, the left
/// Leibniz-type law `[x,y]·z = x·(y·z) - y·(x·z)`, and the derivation law
/// `x·[y,z] = [x·y, z] + [y, x·z]`; the product is a CPA-structure iff all
/// three hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub eq4_ok: bool,
    pub eq5_ok: bool,
    pub eq6_ok: bool,
    /// `(equation, (i, j, k), residual)` for the first failing check in scan
    /// order: commutativity over pairs, then per basis triple the Leibniz law
    /// followed by the derivation law.
    pub first_violation: Option<(u8, (usize, usize, usize), Vec<Rational>)>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.eq4_ok && self.eq5_ok && self.eq6_ok
    }
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Per-triple residuals, shared by the sequential and parallel sweeps.
/// Returns `(eq5_residual, eq6_residual)` for basis indices `(i, j, k)`.
fn triple_residuals(
    l: &LieAlgebra,
    p: &CPAProduct,
    i: usize,
    j: usize,
    k: usize,
) -> (Vec<Rational>, Vec<Rational>) {
    let n = l.dim();
    let ei = crate::lie::basis_vector(n, i);
    let ej = crate::lie::basis_vector(n, j);
    let ek = crate::lie::basis_vector(n, k);
    // eq5: [e_i, e_j] · e_k - e_i·(e_j·e_k) + e_j·(e_i·e_k)
    let lhs5 = p.apply(l.bracket_basis(i, j), &ek);
    let rhs5 = sub(
        &p.apply(&ei, p.product_basis(j, k)),
        &p.apply(&ej, p.product_basis(i, k)),
    );
    // eq6: e_i · [e_j, e_k] - [e_i·e_j, e_k] - [e_j, e_i·e_k]
    let lhs6 = p.apply(&ei, l.bracket_basis(j, k));
    let mut rhs6 = l.bracket(p.product_basis(i, j), &ek);
    crate::lie::add_into(&mut rhs6, &l.bracket(&ej, p.product_basis(i, k)));
    (sub(&lhs5, &rhs5), sub(&lhs6, &rhs6))
}

/// Exhaustive CPA axiom check over all basis triples, exact residuals.
pub fn verify_cpa(l: &LieAlgebra, p: &CPAProduct) -> Result<AxiomReport, CpaError> {
    if l.dim() != p.dim() {
        return Err(CpaError::DimensionMismatch {
            algebra: l.dim(),
            product: p.dim(),
        });
    }
    let n = l.dim();

    // Commutativity: guaranteed by the representation, but re-checked so the
    // report never depends on constructor discipline.
    let mut first: Option<(u8, (usize, usize, usize), Vec<Rational>)> = None;
    let mut eq4_ok = true;
    'eq4: for i in 0..n {
        for j in (i + 1)..n {
            let r = sub(p.product_basis(i, j), p.product_basis(j, i));
            if r.iter().any(|x| !x.is_zero()) {
                eq4_ok = false;
                first = Some((4, (i, j, 0), r));
                break 'eq4;
            }
        }
    }

    let per_i = |i: usize| -> (
        bool,
        bool,
        Option<(u8, (usize, usize, usize), Vec<Rational>)>,
    ) {
        let mut ok5 = true;
        let mut ok6 = true;
        let mut first_here = None;
        for j in 0..n {
            for k in 0..n {
                let (r5, r6) = triple_residuals(l, p, i, j, k);
                let bad5 = r5.iter().any(|x| !x.is_zero());
                let bad6 = r6.iter().any(|x| !x.is_zero());
                if bad5 {
                    ok5 = false;
                    if first_here.is_none() {
                        first_here = Some((5, (i, j, k), r5));
                    }
                }
                if bad6 {
                    ok6 = false;
                    if first_here.is_none() {
                        first_here = Some((6, (i, j, k), r6));
                    }
                }
            }
        }
        (ok5, ok6, first_here)
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<_> = (0..n).into_par_iter().map(per_i).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<_> = (0..n).map(per_i).collect();

    let eq5_ok = rows.iter().all(|r| r.0);
    let eq6_ok = rows.iter().all(|r| r.1);
    if first.is_none() {
        first = rows.into_iter().find_map(|r| r.2);
    }
    Ok(AxiomReport {
        eq4_ok,
        eq5_ok,
        eq6_ok,
        first_violation: first,
    })
}

/// `verify_cpa` that fails with `NotACpa` unless all axioms hold.
pub fn require_cpa(l: &LieAlgebra, p: &CPAProduct) -> Result<(), CpaError> {
    if verify_cpa(l, p)?.all_ok() {
        Ok(())
    } else {
        Err(CpaError::NotACpa)
    }
}
