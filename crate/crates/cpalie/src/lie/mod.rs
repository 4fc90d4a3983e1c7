//! Lie algebras by structure constants, with the standard structural
//! toolkit: bracket and adjoint, ideals, derived and lower central series,
//! center, Killing radical, derivations, completeness, quotients, direct and
//! semidirect sums, and the fixed-point witness ideal.

mod build;
mod fix;
mod structure;

pub use build::{direct_sum, quotient, semidirect};
pub use fix::{fix_witness_ideal, FixWitness};
pub use structure::{
    adjoint_image, derivations, is_complete, killing_matrix, matrices_of, structure_report,
    StructReport,
};

use crate::linalg::{LinalgError, Matrix, Rational, Subspace};
use num_traits::Zero;
use thiserror::Error;

/// A finite-dimensional Lie algebra over Q, presented by structure constants:
/// `c[i][j][k]` is the `e_k`-coefficient of `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

/// A failed bracket axiom, reported as data rather than an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c[i][j][k] != -c[j][i][k]`.
    Antisymmetry { i: usize, j: usize, k: usize },
    /// The Jacobi identity fails on the basis triple `(i, j, k)`.
    Jacobi { i: usize, j: usize, k: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("algebra fails the bracket axioms ({0} violation(s))")]
    InvalidAlgebra(usize),
    #[error("subspace is not a Lie ideal")]
    NotAnIdeal,
    #[error("matrices do not define a representation")]
    NotARepresentation,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    /// Raw constructor; the table must be `n x n x n`.
    pub fn new(name: impl Into<String>, labels: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Self {
        let n = labels.len();
        assert_eq!(c.len(), n, "structure table has wrong first dimension");
        for plane in &c {
            assert_eq!(plane.len(), n, "structure table has wrong second dimension");
            for row in plane {
                assert_eq!(row.len(), n, "structure table has wrong third dimension");
            }
        }
        LieAlgebra {
            name: name.into(),
            labels,
            c,
        }
    }

    /// Builds from the brackets of pairs `i < j`; the antisymmetric
    /// completion `[e_j, e_i] = -[e_i, e_j]` is filled in automatically.
    pub fn from_brackets(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: &[((usize, usize), Vec<(usize, Rational)>)],
    ) -> Self {
        let n = labels.len();
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        for ((i, j), coeffs) in brackets {
            assert!(i < j, "from_brackets expects i < j pairs");
            for (k, v) in coeffs {
                c[*i][*j][*k] = v.clone();
                c[*j][*i][*k] = -v.clone();
            }
        }
        LieAlgebra::new(name, labels, c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.c[i][j]
    }

    /// Checks antisymmetry and the Jacobi identity over all basis triples.
    /// An empty list means the table is a Lie algebra.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        violations.push(Violation::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        if !violations.is_empty() {
            // Jacobi sums are only meaningful on an antisymmetric table.
            return violations;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let ei = basis_vector(n, i);
                    let ej = basis_vector(n, j);
                    let ek = basis_vector(n, k);
                    let mut sum = self.bracket(&ei, &self.bracket(&ej, &ek));
                    add_into(&mut sum, &self.bracket(&ej, &self.bracket(&ek, &ei)));
                    add_into(&mut sum, &self.bracket(&ek, &self.bracket(&ei, &ej)));
                    if sum.iter().any(|x| !x.is_zero()) {
                        violations.push(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Fails with `InvalidAlgebra` when the table breaks the axioms; the
    /// entry point for operations that require a genuine Lie algebra.
    pub fn require_valid(&self) -> Result<(), LieError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(LieError::InvalidAlgebra(v.len()))
        }
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        assert_eq!(x.len(), n, "bracket: x has wrong length");
        assert_eq!(y.len(), n, "bracket: y has wrong length");
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
                    let cijk = &self.c[i][j][k];
                    if !cijk.is_zero() {
                        out[k] = &out[k] + &(&scale * cijk);
                    }
                }
            }
        }
        out
    }

    /// `ad(x)` as a matrix: `adjoint(x) * y = [x, y]`.
    pub fn adjoint(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        assert_eq!(x.len(), n, "adjoint: x has wrong length");
        let mut m = Matrix::zero(n, n);
        for j in 0..n {
            let col = self.bracket(x, &basis_vector(n, j));
            for k in 0..n {
                m[(k, j)] = col[k].clone();
            }
        }
        m
    }

    /// Span of `[a, b]` over all basis pairs of two subspaces.
    pub fn subspace_bracket(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vectors.push(self.bracket(x, y));
            }
        }
        Subspace::from_vectors(vectors, self.dim())
    }

    /// Derived subalgebra `[g, g]`.
    pub fn derived(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.subspace_bracket(&full, &full)
    }

    /// Smallest Lie ideal containing `s`: closure of `s` under bracketing
    /// with the whole algebra.
    pub fn ideal_generated(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        assert_eq!(s.ambient(), n, "ideal_generated: ambient mismatch");
        let mut current = s.clone();
        loop {
            let grown = current.sum(&self.subspace_bracket(&Subspace::full(n), &current));
            if grown == current {
                return current;
            }
            current = grown;
        }
    }

    /// Is `s` closed under bracketing with the whole algebra?
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            s.basis()
                .iter()
                .all(|b| s.contains(&self.bracket(&basis_vector(n, i), b)))
        })
    }

    /// Center `{x : [x, g] = 0}` as the kernel of the stacked adjoints.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        if n == 0 {
            return Subspace::zero(0);
        }
        // Equations: for all j, k: sum_i x_i c[i][j][k] = 0.
        let mut m = Matrix::zero(n * n, n);
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    m[(j * n + k, i)] = self.c[i][j][k].clone();
                }
            }
        }
        crate::linalg::kernel(&m)
    }
}

pub(crate) fn basis_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = num_traits::One::one();
    v
}

pub(crate) fn add_into(acc: &mut [Rational], other: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a = &*a + b;
    }
}

#[cfg(test)]
pub(crate) mod test_algebras {
    use super::*;
    use crate::linalg::rat;

    /// dim 3, [e1,e2] = e3.
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(
            "heisenberg",
            default_labels(3),
            &[((0, 1), vec![(2, rat(1))])],
        )
    }

    /// dim 2, [e1,e2] = -2 e1.
    pub fn borel2() -> LieAlgebra {
        LieAlgebra::from_brackets(
            "borel_sl(2)",
            default_labels(2),
            &[((0, 1), vec![(0, rat(-2))])],
        )
    }

    /// Basis (e, f, h): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::from_brackets(
            "sl(2)",
            vec!["e".into(), "f".into(), "h".into()],
            &[
                ((0, 1), vec![(2, rat(1))]),
                ((0, 2), vec![(0, rat(-2))]),
                ((1, 2), vec![(1, rat(2))]),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::test_algebras::*;
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn standard_algebras_validate() {
        assert!(heisenberg().is_valid());
        assert!(borel2().is_valid());
        assert!(sl2().is_valid());
    }

    #[test]
    fn broken_antisymmetry_is_reported() {
        let mut c = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        c[0][1][2] = rat(1);
        c[1][0][2] = rat(1); // should be -1
        let bad = LieAlgebra::new("bad", default_labels(3), c);
        let violations = bad.validate();
        assert!(violations.contains(&Violation::Antisymmetry { i: 0, j: 1, k: 2 }));
        assert_eq!(bad.require_valid(), Err(LieError::InvalidAlgebra(2)));
    }

    #[test]
    fn broken_jacobi_is_reported() {
        // [e1,e2] = e3, [e1,e3] = e1: the cyclic sum on (e1,e2,e3) is e3.
        let bad = LieAlgebra::from_brackets(
            "bad",
            default_labels(3),
            &[((0, 1), vec![(2, rat(1))]), ((0, 2), vec![(0, rat(1))])],
        );
        assert_eq!(bad.validate(), vec![Violation::Jacobi { i: 0, j: 1, k: 2 }]);
    }

    #[test]
    fn heisenberg_bracket_and_adjoint() {
        let h = heisenberg();
        let e1 = basis_vector(3, 0);
        let e2 = basis_vector(3, 1);
        assert_eq!(h.bracket(&e1, &e2), basis_vector(3, 2));
        assert_eq!(h.bracket(&e1, &e1), vec![rat(0), rat(0), rat(0)]);
        let ad1 = h.adjoint(&e1);
        assert_eq!(ad1.apply(&e2), basis_vector(3, 2));
    }

    #[test]
    fn borel_bracket() {
        let b = borel2();
        let e1 = basis_vector(2, 0);
        let e2 = basis_vector(2, 1);
        assert_eq!(b.bracket(&e1, &e2), vec![rat(-2), rat(0)]);
    }

    #[test]
    fn heisenberg_center_is_e3() {
        let z = heisenberg().center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&basis_vector(3, 2)));
    }

    #[test]
    fn sl2_center_is_zero() {
        assert!(sl2().center().is_zero());
    }

    #[test]
    fn ideal_closure() {
        let b = borel2();
        let line = Subspace::from_vectors(vec![basis_vector(2, 0)], 2);
        assert_eq!(b.ideal_generated(&line), line);
        assert!(b.is_ideal(&line));

        // A root vector generates all of sl(2).
        let s = sl2();
        let e_line = Subspace::from_vectors(vec![basis_vector(3, 0)], 3);
        assert_eq!(s.ideal_generated(&e_line), Subspace::full(3));
        assert!(!s.is_ideal(&e_line));

        assert!(b.ideal_generated(&Subspace::zero(2)).is_zero());
    }

    #[test]
    fn derived_subalgebras() {
        assert_eq!(sl2().derived(), Subspace::full(3));
        let d = heisenberg().derived();
        assert_eq!(d.dim(), 1);
        assert!(d.contains(&basis_vector(3, 2)));
    }
}
