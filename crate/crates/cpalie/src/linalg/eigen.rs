use super::rref::kernel;
use super::{LinalgError, Matrix, Polynomial, Rational, Subspace};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Characteristic polynomial `det(t*I - m)` by the Faddeev–LeVerrier
/// recursion: exact, division only by integers, O(n^4) multiplications.
pub fn char_poly(m: &Matrix) -> Result<Polynomial, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    // coeffs[k] multiplies t^k; leading coefficient is 1.
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = Matrix::identity(n);
    for k in 1..=n {
        aux = m * &aux;
        let c = -(aux.trace()? / Rational::from_integer(BigInt::from(k)));
        for i in 0..n {
            let d = aux[(i, i)].clone();
            aux[(i, i)] = &d + &c;
        }
        coeffs[n - k] = c;
    }
    Ok(Polynomial::new(coeffs))
}

/// Outcome of exact eigenvalue computation over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalSpectrum {
    /// The characteristic polynomial splits over Q: all eigenvalues are
    /// rational, listed in increasing order with algebraic multiplicities.
    Split(Vec<(Rational, usize)>),
    /// Some eigenvalues are irrational; the rational ones found so far are
    /// reported, but the spectrum is incomplete.
    Unsupported {
        rational_part: Vec<(Rational, usize)>,
    },
}

impl RationalSpectrum {
    pub fn is_split(&self) -> bool {
        matches!(self, RationalSpectrum::Split(_))
    }
}

/// Eigenvalues of a square matrix over Q, exactly.
pub fn rational_eigen(m: &Matrix) -> Result<RationalSpectrum, LinalgError> {
    let p = char_poly(m)?;
    let roots = p.rational_roots();
    let total: usize = roots.iter().map(|(_, k)| k).sum();
    if Some(total) == p.degree() {
        Ok(RationalSpectrum::Split(roots))
    } else {
        Ok(RationalSpectrum::Unsupported {
            rational_part: roots,
        })
    }
}

/// Generalized eigenspace `ker((m - lambda*I)^n)` where `n = dim`.
///
/// Errors with `NotAnEigenvalue` when the space is trivial, so callers can
/// distinguish "not an eigenvalue" from a genuine zero-dimensional edge case.
pub fn generalized_eigenspace(m: &Matrix, lambda: &Rational) -> Result<Subspace, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut shifted = m.clone();
    for i in 0..n {
        let d = shifted[(i, i)].clone();
        shifted[(i, i)] = &d - lambda;
    }
    let space = kernel(&shifted.pow(n)?);
    if space.is_zero() && n > 0 {
        return Err(LinalgError::NotAnEigenvalue(super::format_rational(lambda)));
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn char_poly_two_by_two() {
        // [[-1,-2],[0,1]] has char poly t^2 - 1.
        let m = Matrix::from_i64(&[&[-1, -2], &[0, 1]]);
        assert_eq!(char_poly(&m).unwrap(), Polynomial::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn char_poly_nilpotent() {
        let m = Matrix::from_i64(&[&[0, -1], &[0, 0]]);
        assert_eq!(char_poly(&m).unwrap(), Polynomial::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn char_poly_matches_cayley_hamilton() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[1, 0, -3]]);
        let p = char_poly(&m).unwrap();
        // p(m) = 0.
        let mut acc = Matrix::zero(3, 3);
        for (k, c) in p.coeffs().iter().enumerate() {
            acc = &acc + &m.pow(k).unwrap().scale(c);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn spectrum_split() {
        let m = Matrix::from_i64(&[&[-1, -2], &[0, 1]]);
        assert_eq!(
            rational_eigen(&m).unwrap(),
            RationalSpectrum::Split(vec![(rat(-1), 1), (rat(1), 1)])
        );
    }

    #[test]
    fn spectrum_irrational() {
        // [[0,2],[1,0]] has eigenvalues ±sqrt(2).
        let m = Matrix::from_i64(&[&[0, 2], &[1, 0]]);
        assert_eq!(
            rational_eigen(&m).unwrap(),
            RationalSpectrum::Unsupported {
                rational_part: vec![]
            }
        );
    }

    #[test]
    fn spectrum_mixed_rational_and_not() {
        // Block diag([[0,2],[1,0]], [3]) : eigenvalues ±sqrt(2), 3.
        let m = Matrix::from_i64(&[&[0, 2, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(
            rational_eigen(&m).unwrap(),
            RationalSpectrum::Unsupported {
                rational_part: vec![(rat(3), 1)]
            }
        );
    }

    #[test]
    fn generalized_eigenspace_of_jordan_block() {
        // [[0,-1],[0,0]]: ordinary kernel is 1-dim, generalized is full.
        let m = Matrix::from_i64(&[&[0, -1], &[0, 0]]);
        let g = generalized_eigenspace(&m, &rat(0)).unwrap();
        assert_eq!(g, Subspace::full(2));
        assert_eq!(
            generalized_eigenspace(&m, &rat(1)),
            Err(LinalgError::NotAnEigenvalue("1".into()))
        );
    }

    #[test]
    fn generalized_eigenspaces_decompose_diagonalizable() {
        let m = Matrix::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 5]]);
        let e2 = generalized_eigenspace(&m, &rat(2)).unwrap();
        let e5 = generalized_eigenspace(&m, &rat(5)).unwrap();
        assert_eq!(e2.dim(), 2);
        assert_eq!(e5.dim(), 1);
        assert_eq!(e2.sum(&e5), Subspace::full(3));
        assert!(e2.intersect(&e5).is_zero());
    }
}
