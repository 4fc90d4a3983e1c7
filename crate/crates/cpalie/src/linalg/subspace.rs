use super::rref::rref;
use super::{Matrix, Rational};
use num_traits::Zero;

/// A linear subspace of Q^n in canonical form.
///
/// The basis is the reduced row-echelon form of any spanning set, so two
/// subspaces are equal as sets iff they are equal as values. `ambient` is
/// carried even when the dimension is zero so that equality of trivial
/// subspaces still checks the surrounding space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    /// Canonicalizes an arbitrary spanning set.
    pub fn from_vectors(vectors: Vec<Vec<Rational>>, ambient: usize) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Vec::new(),
            };
        }
        let r = rref(&Matrix::from_rows(vectors));
        let basis = r
            .matrix
            .iter_rows()
            .take(r.rank())
            .map(<[Rational]>::to_vec)
            .collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Rational::zero(); ambient];
                    v[i] = num_traits::One::one();
                    v
                })
                .collect(),
            ambient,
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Pivot column of each echelon basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .position(|x| !x.is_zero())
                    .expect("zero basis row")
            })
            .collect()
    }

    /// Membership by rank comparison: appending `v` must not grow the span.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "contains: wrong vector length");
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&Matrix::from_rows(rows)).rank() == self.dim()
    }

    /// Does `self` contain every vector of `other`?
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Sum of subspaces (span of the union).
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "sum: ambient mismatch");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_vectors(rows, self.ambient)
    }

    /// Intersection, computed via the kernel of the stacked dual conditions:
    /// a vector is in both spans iff it is orthogonal to both row-space
    /// complements. Implemented with the standard kernel trick on the
    /// concatenated coefficient systems.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "intersect: ambient mismatch");
        // Solve a*B1 - b*B2 = 0 jointly; the B1-part of each kernel vector
        // spans the intersection.
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let d1 = self.dim();
        let d2 = other.dim();
        let mut m = Matrix::zero(self.ambient, d1 + d2);
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, j)] = v[i].clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, d1 + j)] = -v[i].clone();
            }
        }
        let k = super::rref::kernel(&m);
        let vectors = k
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (j, c) in coeffs[..d1].iter().enumerate() {
                    for i in 0..self.ambient {
                        v[i] = &v[i] + &(c * &self.basis[j][i]);
                    }
                }
                v
            })
            .collect();
        Subspace::from_vectors(vectors, self.ambient)
    }

    /// A matrix whose kernel is exactly this subspace: one row per free
    /// (non-pivot) column, expressing that reducing a vector by the basis
    /// leaves residual zero there. Zero rows for the full space, the identity
    /// for the zero subspace.
    pub fn membership_conditions(&self) -> Matrix {
        let n = self.ambient;
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut m = Matrix::zero(free.len(), n);
        for (r, &f) in free.iter().enumerate() {
            m[(r, f)] = num_traits::One::one();
            for (s, &p) in pivots.iter().enumerate() {
                m[(r, p)] = -self.basis[s][f].clone();
            }
        }
        m
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient, "coordinates: wrong vector length");
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let mut cols = Matrix::zero(self.ambient, self.dim());
        for (j, b) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                cols[(i, j)] = b[i].clone();
            }
        }
        match super::rref::solve_affine(&cols, v) {
            super::rref::AffineSolution::Solution { particular, .. } => Some(particular),
            super::rref::AffineSolution::Inconsistent => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn span(vs: &[&[i64]], ambient: usize) -> Subspace {
        Subspace::from_vectors(
            vs.iter()
                .map(|v| v.iter().map(|&n| rat(n)).collect())
                .collect(),
            ambient,
        )
    }

    #[test]
    fn equality_is_set_equality() {
        let a = span(&[&[1, 1, 0], &[0, 0, 1]], 3);
        let b = span(&[&[2, 2, 2], &[0, 0, -5]], 3);
        assert_eq!(a, b);
    }

    #[test]
    fn containment_and_membership() {
        let s = span(&[&[1, 0, 1]], 3);
        assert!(s.contains(&[rat(3), rat(0), rat(3)]));
        assert!(!s.contains(&[rat(1), rat(1), rat(1)]));
        assert!(span(&[&[1, 0, 0], &[0, 0, 1]], 3).contains_subspace(&s));
        assert!(!s.contains_subspace(&span(&[&[0, 1, 0]], 3)));
    }

    #[test]
    fn sum_and_intersection() {
        let a = span(&[&[1, 0, 0], &[0, 1, 0]], 3);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.intersect(&b), span(&[&[0, 1, 0]], 3));
    }

    #[test]
    fn intersection_of_skew_lines_is_zero() {
        let a = span(&[&[1, 0]], 2);
        let b = span(&[&[0, 1]], 2);
        assert!(a.intersect(&b).is_zero());
    }

    #[test]
    fn coordinates_round_trip() {
        let s = span(&[&[1, 2, 0], &[0, 0, 3]], 3);
        let v = vec![rat(2), rat(4), rat(6)];
        let coords = s.coordinates(&v).unwrap();
        // Reconstruct from the canonical basis.
        let mut rebuilt = vec![rat(0); 3];
        for (c, b) in coords.iter().zip(s.basis()) {
            for i in 0..3 {
                rebuilt[i] = &rebuilt[i] + &(c * &b[i]);
            }
        }
        assert_eq!(rebuilt, v);
        assert_eq!(s.coordinates(&[rat(1), rat(0), rat(0)]), None);
    }

    #[test]
    fn membership_conditions_cut_out_the_subspace() {
        let s = span(&[&[1, 2, 0], &[0, 0, 1]], 3);
        let m = s.membership_conditions();
        assert_eq!(m.rows(), 1);
        assert_eq!(crate::linalg::kernel(&m), s);

        assert_eq!(Subspace::full(2).membership_conditions().rows(), 0);
        let z = Subspace::zero(2).membership_conditions();
        assert_eq!(crate::linalg::kernel(&z), Subspace::zero(2));
    }

    #[test]
    fn zero_subspace_conventions() {
        let z = Subspace::zero(4);
        let origin = vec![rat(0), rat(0), rat(0), rat(0)];
        assert!(z.is_zero());
        assert!(z.contains(&origin));
        assert_eq!(z.coordinates(&origin), Some(vec![]));
        assert_eq!(z.coordinates(&[rat(1), rat(0), rat(0), rat(0)]), None);
    }
}
