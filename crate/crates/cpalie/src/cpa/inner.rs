use super::resolve::Classification;
use super::solve::QuadPoly;
use super::{require_cpa, CPAProduct, CpaError};
use crate::lie::{is_complete, LieAlgebra};
use crate::linalg::{
    generalized_eigenspace, kernel, rational_eigen, solve_affine, AffineSolution, Matrix, Rational,
    RationalSpectrum, Subspace,
};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Matrix entry layout for a flattened endomorphism: variable `a*n + b`
/// holds entry `(a, b)`, so column `i` is the image of basis vector `i`.
fn unflatten_phi(n: usize, flat: &[Rational]) -> Matrix {
    let mut m = Matrix::zero(n, n);
    for a in 0..n {
        for b in 0..n {
            m[(a, b)] = flat[a * n + b].clone();
        }
    }
    m
}

/// Canonical basis of the matrices `phi` for which `x·y = [phi(x), y]` is
/// commutative: the solutions of `[phi(e_i), e_j] = [phi(e_j), e_i]`.
pub fn inner_phi_linear_space(l: &LieAlgebra) -> Result<Vec<Matrix>, CpaError> {
    l.require_valid()?;
    let n = l.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut sys = Matrix::zero(pairs.len().max(1) * n, n * n);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            let row = p * n + k;
            for a in 0..n {
                let caj = l.c(a, j, k).clone();
                if !caj.is_zero() {
                    sys[(row, a * n + i)] = &sys[(row, a * n + i)] + &caj;
                }
                let cai = l.c(a, i, k).clone();
                if !cai.is_zero() {
                    sys[(row, a * n + j)] = &sys[(row, a * n + j)] - &cai;
                }
            }
        }
    }
    Ok(kernel(&sys)
        .basis()
        .iter()
        .map(|v| unflatten_phi(n, v))
        .collect())
}

/// The product `x·y = [phi(x), y]`. Fails with `NotACpa` when the table is
/// not commutative (i.e. `phi` is outside the linear space above).
pub fn phi_product(l: &LieAlgebra, phi: &Matrix) -> Result<CPAProduct, CpaError> {
    let n = l.dim();
    let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        let phi_ei = phi.col_vec(i);
        for j in 0..n {
            d[i][j] = l.bracket(&phi_ei, &crate::lie::basis_vector(n, j));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if d[i][j] != d[j][i] {
                return Err(CpaError::NotACpa);
            }
        }
    }
    Ok(CPAProduct::new(d))
}

/// Quadratic residuals of the homomorphism condition `phi([x,y]) =
/// [phi(x), phi(y)]` over `phi = sum_a u_a Phi_a`; zero polynomials dropped
/// and proportional duplicates merged. Exact for trivial center, where the
/// condition is equivalent to the remaining CPA axiom.
pub(crate) fn hom_residuals(l: &LieAlgebra, phis: &[Matrix]) -> Vec<QuadPoly> {
    let n = l.dim();
    let d = phis.len();
    let images: Vec<Vec<Vec<Rational>>> = phis
        .iter()
        .map(|phi| (0..n).map(|i| phi.col_vec(i)).collect())
        .collect();
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let linear_parts: Vec<Vec<Rational>> = phis
                .iter()
                .map(|phi| phi.apply(l.bracket_basis(i, j)))
                .collect();
            // cross[a][b] = [Phi_a e_i, Phi_b e_j]
            let cross: Vec<Vec<Vec<Rational>>> = (0..d)
                .map(|a| {
                    (0..d)
                        .map(|b| l.bracket(&images[a][i], &images[b][j]))
                        .collect()
                })
                .collect();
            for k in 0..n {
                let linear: Vec<Rational> = linear_parts.iter().map(|v| v[k].clone()).collect();
                let mut quadratic = BTreeMap::new();
                for a in 0..d {
                    for b in a..d {
                        let c = if a == b {
                            -cross[a][a][k].clone()
                        } else {
                            -(&cross[a][b][k] + &cross[b][a][k])
                        };
                        if !c.is_zero() {
                            quadratic.insert((a, b), c);
                        }
                    }
                }
                let poly = QuadPoly::new(d, Rational::zero(), linear, quadratic);
                if poly.is_zero() {
                    continue;
                }
                let norm = poly.normalized();
                let fingerprint = format!("{norm:?}");
                if seen.insert(fingerprint) {
                    out.push(norm);
                }
            }
        }
    }
    out
}

/// Everything the `phi` parametrization yields on a complete algebra.
#[derive(Clone, Debug)]
pub struct InnerSolveReport {
    /// Canonical basis of the linear (commutativity) solution space.
    pub phi_basis: Vec<Matrix>,
    /// Quadratic homomorphism residuals in the `phi_basis` coordinates.
    pub hom_residuals: Vec<QuadPoly>,
    pub classification: Classification,
}

/// Solves for all CPA-structures through the `x·y = [phi(x), y]`
/// parametrization. Complete algebras only; there the parametrization is a
/// bijection onto all structures.
pub fn inner_solve(l: &LieAlgebra) -> Result<InnerSolveReport, CpaError> {
    if !is_complete(l)? {
        return Err(CpaError::NotComplete);
    }
    let phi_basis = inner_phi_linear_space(l)?;
    let hom_residuals = hom_residuals(l, &phi_basis);
    let classification = super::resolve::classify(l, super::resolve::ClassifyMethod::Inner)?;
    // Spot-check the round trip on the component offsets.
    for comp in &classification.components {
        let phi = phi_at(&phi_basis, &comp.point, l.dim());
        let p = phi_product(l, &phi)?;
        require_cpa(l, &p)?;
    }
    Ok(InnerSolveReport {
        phi_basis,
        hom_residuals,
        classification,
    })
}

fn phi_at(basis: &[Matrix], u: &[Rational], n: usize) -> Matrix {
    let mut acc = Matrix::zero(n, n);
    for (c, m) in u.iter().zip(basis) {
        if !c.is_zero() {
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

/// Witness that a product is (weakly) inner.
#[derive(Clone, Debug)]
pub struct InnerWitness {
    /// Canonical representing matrix: the homomorphism witness when one
    /// exists, otherwise the particular solution with free entries zero.
    pub phi: Matrix,
    /// Freedom in `phi`: the maps into the center, flattened row-major.
    pub freedom: Subspace,
    pub weakly_inner: bool,
    /// Some representing matrix is a Lie algebra homomorphism.
    pub inner: bool,
    /// `inner` with a nilpotent homomorphism witness. Evaluated on the
    /// canonical witness; exact whenever the center is trivial (then the
    /// witness is unique).
    pub nil_inner: bool,
}

#[derive(Clone, Debug)]
pub enum InnerDetection {
    NotWeaklyInner,
    Witness(InnerWitness),
}

/// Decides whether `p` equals `x·y = [phi(x), y]` for some `phi`, and
/// reports the canonical witness with its homomorphism and nilpotency flags.
pub fn detect_inner(l: &LieAlgebra, p: &CPAProduct) -> Result<InnerDetection, CpaError> {
    require_cpa(l, p)?;
    let n = l.dim();
    // d[i][j][k] = sum_a phi[(a, i)] c[a][j][k], over all (i, j, k).
    let mut rows = Vec::with_capacity(n * n * n);
    let mut rhs = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for a in 0..n {
                    let c = l.c(a, j, k);
                    if !c.is_zero() {
                        row[a * n + i] = c.clone();
                    }
                }
                rows.push(row);
                rhs.push(p.d(i, j, k).clone());
            }
        }
    }
    let (particular, freedom) = match solve_affine(&Matrix::from_rows(rows), &rhs) {
        AffineSolution::Inconsistent => return Ok(InnerDetection::NotWeaklyInner),
        AffineSolution::Solution { particular, kernel } => (particular, kernel),
    };
    let phi0 = unflatten_phi(n, &particular);

    // Homomorphism witness search across the whole family phi0 + psi, where
    // psi ranges over the maps into the center. Such a psi drops out of
    // every bracket, so (phi0 + psi) is a homomorphism iff
    // psi([x, y]) = [phi0 x, phi0 y] - phi0([x, y]) for all basis pairs.
    let center = l.center();
    let zrows = center.membership_conditions();
    let mut hrows = Vec::new();
    let mut hrhs = Vec::new();
    for j in 0..n {
        for r in 0..zrows.rows() {
            let mut row = vec![Rational::zero(); n * n];
            for a in 0..n {
                row[a * n + j] = zrows[(r, a)].clone();
            }
            hrows.push(row);
            hrhs.push(Rational::zero());
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let bij = l.bracket_basis(i, j);
            let defect = {
                let lhs = l.bracket(&phi0.col_vec(i), &phi0.col_vec(j));
                let rhs = phi0.apply(bij);
                lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect::<Vec<_>>()
            };
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for (a, c) in bij.iter().enumerate() {
                    if !c.is_zero() {
                        row[k * n + a] = c.clone();
                    }
                }
                hrows.push(row);
                hrhs.push(defect[k].clone());
            }
        }
    }
    let hom = if hrows.is_empty() {
        Some(phi0.clone())
    } else {
        match solve_affine(&Matrix::from_rows(hrows), &hrhs) {
            AffineSolution::Inconsistent => None,
            AffineSolution::Solution { particular, .. } => {
                Some(&phi0 + &unflatten_phi(n, &particular))
            }
        }
    };
    let (phi, inner) = match hom {
        Some(h) => (h, true),
        None => (phi0, false),
    };
    let nil_inner = inner && phi.pow(n).unwrap().is_zero();
    Ok(InnerDetection::Witness(InnerWitness {
        phi,
        freedom,
        weakly_inner: true,
        inner,
        nil_inner,
    }))
}

/// The five reported properties of a `phi`-decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionChecks {
    pub n_nilpotent_phi: bool,
    pub h_automorphism_phi: bool,
    pub h_metabelian: bool,
    pub both_ideals: bool,
    pub direct_sum: bool,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.n_nilpotent_phi
            && self.h_automorphism_phi
            && self.h_metabelian
            && self.both_ideals
            && self.direct_sum
    }
}

/// Splitting of the algebra along the generalized eigenspaces of `phi`:
/// the eigenvalue-zero part and the sum of the invertible parts.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub n_part: Subspace,
    pub h_part: Subspace,
    /// Distinct eigenvalues in increasing order.
    pub eigenvalues: Vec<Rational>,
    pub checks: DecompositionChecks,
}

/// Decomposes `l` along the generalized eigenspaces of `phi`, where
/// `x·y = [phi(x), y]` must be a CPA-structure. Requires the characteristic
/// polynomial of `phi` to split over the rationals.
///
/// Also asserts the eigenvalue pairing law: nonvanishing brackets between
/// generalized eigenspaces only occur for eigenvalues summing to zero.
pub fn phi_decompose(l: &LieAlgebra, phi: &Matrix) -> Result<Decomposition, CpaError> {
    let p = phi_product(l, phi)?;
    require_cpa(l, &p)?;
    let n = l.dim();
    let spectrum = match rational_eigen(phi)? {
        RationalSpectrum::Split(pairs) => pairs,
        RationalSpectrum::Unsupported { .. } => return Err(CpaError::UnsupportedSpectrum),
    };
    let eigenvalues: Vec<Rational> = spectrum.iter().map(|(v, _)| v.clone()).collect();
    let spaces: Vec<Subspace> = eigenvalues
        .iter()
        .map(|ev| generalized_eigenspace(phi, ev))
        .collect::<Result<_, _>>()?;

    let mut n_part = Subspace::zero(n);
    let mut h_part = Subspace::zero(n);
    for (ev, space) in eigenvalues.iter().zip(&spaces) {
        if ev.is_zero() {
            n_part = space.clone();
        } else {
            h_part = h_part.sum(space);
        }
    }

    // Eigenvalue pairing law on every pair of generalized eigenspaces.
    for (ea, sa) in eigenvalues.iter().zip(&spaces) {
        for (eb, sb) in eigenvalues.iter().zip(&spaces) {
            let bracket = l.subspace_bracket(sa, sb);
            if bracket.is_zero() {
                continue;
            }
            assert!(
                (ea + eb).is_zero(),
                "eigenvalue pairing law violated: [g_a, g_b] != 0 for a + b != 0"
            );
            let product = ea * eb;
            let target = eigenvalues
                .iter()
                .zip(&spaces)
                .find(|(ev, _)| **ev == product)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(|| Subspace::zero(n));
            assert!(
                target.contains_subspace(&bracket),
                "eigenvalue pairing law violated: [g_a, g_b] escapes g_ab"
            );
        }
    }

    let nil_ok = {
        let pk = phi.pow(n)?;
        n_part
            .basis()
            .iter()
            .all(|v| pk.apply(v).iter().all(Zero::is_zero))
    };
    let h_auto = {
        let image: Vec<Vec<Rational>> = h_part.basis().iter().map(|v| phi.apply(v)).collect();
        let image_in = image.iter().all(|v| h_part.contains(v));
        let image_span = Subspace::from_vectors(image, n);
        let invertible = image_span.dim() == h_part.dim();
        // Homomorphism on h: phi[x, y] = [phi x, phi y] for basis pairs.
        let hb = h_part.basis();
        let hom = hb.iter().enumerate().all(|(a, x)| {
            hb.iter().skip(a + 1).all(|y| {
                let lhs = phi.apply(&l.bracket(x, y));
                let rhs = l.bracket(&phi.apply(x), &phi.apply(y));
                lhs == rhs
            })
        });
        image_in && invertible && hom
    };
    let h_metabelian = {
        let der = l.subspace_bracket(&h_part, &h_part);
        l.subspace_bracket(&der, &der).is_zero()
    };
    let both_ideals = l.is_ideal(&n_part) && l.is_ideal(&h_part);
    let direct_sum = n_part.intersect(&h_part).is_zero() && n_part.dim() + h_part.dim() == n;

    Ok(Decomposition {
        n_part,
        h_part,
        eigenvalues,
        checks: DecompositionChecks {
            n_nilpotent_phi: nil_ok,
            h_automorphism_phi: h_auto,
            h_metabelian,
            both_ideals,
            direct_sum,
        },
    })
}
