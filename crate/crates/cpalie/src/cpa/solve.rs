use super::{CPAProduct, CpaError};
use crate::lie::{derivations, matrices_of, LieAlgebra};
use crate::linalg::{kernel, Matrix, Rational, Subspace};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Index of the unordered pair `(i, j)`, `i <= j`, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * (2 * n - i + 1) / 2 + (j - i)
}

/// Basis of the space of commutative products whose left multiplications are
/// all derivations — the solution set of the two linear axioms. Canonical:
/// the returned products are the reduced echelon basis of the solution space
/// in symmetric-table coordinates.
///
/// Solved in two stages: first the derivation algebra once, then the
/// commutativity constraint on tuples of derivation coefficients. The
/// one-shot system over all table entries (see
/// [`solve_linear_part_dense`]) gives the same space; the staged form keeps
/// the working dimensions near `dim * dim` instead of `dim^3`.
pub fn solve_linear_part(l: &LieAlgebra) -> Result<Vec<CPAProduct>, CpaError> {
    l.require_valid()?;
    let n = l.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let der = matrices_of(&derivations(l)?, n);
    let m = der.len();
    // Unknowns t[i*m + a]: L(e_i) = sum_a t[i,a] der[a]. Commutativity says
    // L(e_i)[(k, j)] = L(e_j)[(k, i)] for i < j.
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut sys = Matrix::zero(pairs.len() * n, n * m);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..n {
            let row = p * n + k;
            for (a, d) in der.iter().enumerate() {
                let lhs = d[(k, j)].clone();
                if !lhs.is_zero() {
                    sys[(row, i * m + a)] = &sys[(row, i * m + a)] + &lhs;
                }
                let rhs = d[(k, i)].clone();
                if !rhs.is_zero() {
                    sys[(row, j * m + a)] = &sys[(row, j * m + a)] - &rhs;
                }
            }
        }
    }
    let t_space = kernel(&sys);

    // Map every t-vector to a product table, then canonicalize the family.
    let products: Vec<Vec<Rational>> = t_space
        .basis()
        .iter()
        .map(|t| {
            let mut d = vec![vec![vec![Rational::zero(); n]; n]; n];
            for i in 0..n {
                for (a, dm) in der.iter().enumerate() {
                    let coeff = &t[i * m + a];
                    if coeff.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        for k in 0..n {
                            if !dm[(k, j)].is_zero() {
                                d[i][j][k] = &d[i][j][k] + &(coeff * &dm[(k, j)]);
                            }
                        }
                    }
                }
            }
            CPAProduct::new(d).flatten_sym()
        })
        .collect();
    let canonical = Subspace::from_vectors(products, n * (n + 1) / 2 * n);
    Ok(canonical
        .basis()
        .iter()
        .map(|v| CPAProduct::from_flat_sym(n, v))
        .collect())
}

/// One-shot solve over all symmetric table entries; the small-dimension
/// oracle for [`solve_linear_part`].
pub fn solve_linear_part_dense(l: &LieAlgebra) -> Result<Vec<CPAProduct>, CpaError> {
    l.require_valid()?;
    let n = l.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let nvars = n * (n + 1) / 2 * n;
    let var = |i: usize, j: usize, k: usize| {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        pair_index(n, a, b) * n + k
    };
    // Derivation law rows for every (i, j < k, out): e_i·[e_j,e_k] =
    // [e_i·e_j, e_k] + [e_j, e_i·e_k].
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in (j + 1)..n {
                for out in 0..n {
                    let mut row = vec![Rational::zero(); nvars];
                    for l_idx in 0..n {
                        let cjk = l.c(j, k, l_idx);
                        if !cjk.is_zero() {
                            let v = var(i, l_idx, out);
                            row[v] = &row[v] + cjk;
                        }
                        let clk = l.c(l_idx, k, out);
                        if !clk.is_zero() {
                            let v = var(i, j, l_idx);
                            row[v] = &row[v] - clk;
                        }
                        let cjl = l.c(j, l_idx, out);
                        if !cjl.is_zero() {
                            let v = var(i, k, l_idx);
                            row[v] = &row[v] - cjl;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        // Abelian: no constraints at all beyond symmetry.
        rows.push(vec![Rational::zero(); nvars]);
    }
    let space = kernel(&Matrix::from_rows(rows));
    Ok(space
        .basis()
        .iter()
        .map(|v| CPAProduct::from_flat_sym(n, v))
        .collect())
}

/// `sum_a t_a * basis[a]`.
pub fn param_product(basis: &[CPAProduct], t: &[Rational]) -> CPAProduct {
    assert_eq!(basis.len(), t.len(), "param_product: wrong parameter count");
    assert!(
        !basis.is_empty(),
        "param_product needs at least one direction"
    );
    let n = basis[0].dim();
    let mut acc = CPAProduct::zero(n);
    for (c, p) in t.iter().zip(basis) {
        if !c.is_zero() {
            acc = acc.add_scaled(c, p);
        }
    }
    acc
}

/// Polynomial of total degree at most 2 in parameters `t_1..t_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadPoly {
    nvars: usize,
    constant: Rational,
    linear: Vec<Rational>,
    /// Keys `(a, b)` with `a <= b`; values nonzero.
    quadratic: BTreeMap<(usize, usize), Rational>,
}

impl QuadPoly {
    pub fn zero(nvars: usize) -> Self {
        QuadPoly {
            nvars,
            constant: Rational::zero(),
            linear: vec![Rational::zero(); nvars],
            quadratic: BTreeMap::new(),
        }
    }

    pub fn new(
        nvars: usize,
        constant: Rational,
        linear: Vec<Rational>,
        quadratic: BTreeMap<(usize, usize), Rational>,
    ) -> Self {
        assert_eq!(linear.len(), nvars);
        let quadratic: BTreeMap<_, _> = quadratic
            .into_iter()
            .filter(|(k, v)| {
                assert!(k.0 <= k.1 && k.1 < nvars, "bad quadratic key");
                !v.is_zero()
            })
            .collect();
        QuadPoly {
            nvars,
            constant,
            linear,
            quadratic,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn linear(&self) -> &[Rational] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.quadratic
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
            && self.linear.iter().all(Zero::is_zero)
            && self.quadratic.is_empty()
    }

    pub fn is_affine(&self) -> bool {
        self.quadratic.is_empty()
    }

    pub fn is_nonzero_constant(&self) -> bool {
        !self.constant.is_zero()
            && self.linear.iter().all(Zero::is_zero)
            && self.quadratic.is_empty()
    }

    /// The variables with a nonzero coefficient somewhere.
    pub fn support(&self) -> Vec<usize> {
        let mut used: Vec<usize> = (0..self.nvars)
            .filter(|&v| !self.linear[v].is_zero())
            .collect();
        for (a, b) in self.quadratic.keys() {
            used.push(*a);
            used.push(*b);
        }
        used.sort_unstable();
        used.dedup();
        used
    }

    pub fn eval(&self, t: &[Rational]) -> Rational {
        assert_eq!(t.len(), self.nvars, "eval: wrong parameter count");
        let mut acc = self.constant.clone();
        for (c, x) in self.linear.iter().zip(t) {
            if !c.is_zero() {
                acc = &acc + &(c * x);
            }
        }
        for ((a, b), c) in &self.quadratic {
            acc = &acc + &(&(c * &t[*a]) * &t[*b]);
        }
        acc
    }

    /// Scales so the first nonzero coefficient (constant, then linear by
    /// index, then quadratic keys in order) is 1; canonical for dedup.
    pub fn normalized(&self) -> QuadPoly {
        let lead = if !self.constant.is_zero() {
            self.constant.clone()
        } else if let Some(c) = self.linear.iter().find(|c| !c.is_zero()) {
            c.clone()
        } else if let Some(c) = self.quadratic.values().next() {
            c.clone()
        } else {
            return self.clone();
        };
        let inv = Rational::one() / lead;
        QuadPoly {
            nvars: self.nvars,
            constant: &self.constant * &inv,
            linear: self.linear.iter().map(|c| c * &inv).collect(),
            quadratic: self.quadratic.iter().map(|(k, c)| (*k, c * &inv)).collect(),
        }
    }

    /// Substitutes the affine change `t = offset + dirs * s`, producing a
    /// polynomial in the `s` variables (`dirs` is `nvars x new_nvars`).
    pub fn substitute(&self, offset: &[Rational], dirs: &Matrix) -> QuadPoly {
        let d = self.nvars;
        assert_eq!(offset.len(), d, "substitute: offset length");
        assert_eq!(dirs.rows(), d, "substitute: direction rows");
        let m = dirs.cols();

        // Symmetric matrix form q(t) = c + l.t + t' Q t with Q_ab = Q_ba.
        let mut qm = Matrix::zero(d, d);
        for ((a, b), c) in &self.quadratic {
            if a == b {
                qm[(*a, *a)] = c.clone();
            } else {
                let half = c / crate::linalg::rat(2);
                qm[(*a, *b)] = half.clone();
                qm[(*b, *a)] = half;
            }
        }

        let q_off = qm.apply(offset); // Q p
        let constant = {
            let mut acc = self.constant.clone();
            for (lc, p) in self.linear.iter().zip(offset) {
                acc = &acc + &(lc * p);
            }
            for (qp, p) in q_off.iter().zip(offset) {
                acc = &acc + &(qp * p);
            }
            acc
        };
        // linear_s = (l + 2 Q p)^T N
        let mut linear = vec![Rational::zero(); m];
        for (u, item) in linear.iter_mut().enumerate() {
            let mut acc = Rational::zero();
            for a in 0..d {
                let coeff = &self.linear[a] + &(&q_off[a] * &crate::linalg::rat(2));
                if !coeff.is_zero() {
                    acc = &acc + &(&coeff * &dirs[(a, u)]);
                }
            }
            *item = acc;
        }
        // quadratic_s = N^T Q N
        let nqn = &(&dirs.transpose() * &qm) * dirs;
        let mut quadratic = BTreeMap::new();
        for u in 0..m {
            for v in u..m {
                let c = if u == v {
                    nqn[(u, u)].clone()
                } else {
                    &nqn[(u, v)] + &nqn[(v, u)]
                };
                if !c.is_zero() {
                    quadratic.insert((u, v), c);
                }
            }
        }
        QuadPoly {
            nvars: m,
            constant,
            linear,
            quadratic,
        }
    }
}

/// Residuals of the remaining (quadratic) CPA axiom on the span of the given
/// linear-part basis: one polynomial per `(i < j, k, out)` tuple with the
/// zero polynomials dropped and proportional duplicates merged.
///
/// A parameter point `t` solves the system iff `param_product(basis, t)` is a
/// CPA-structure.
pub fn quadratic_residuals(l: &LieAlgebra, basis: &[CPAProduct]) -> Vec<QuadPoly> {
    let n = l.dim();
    let d = basis.len();
    let mut out: Vec<QuadPoly> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                // [e_i,e_j]·e_k - e_i·(e_j·e_k) + e_j·(e_i·e_k), coordinate `out`.
                let linear_terms: Vec<Vec<Rational>> = basis
                    .iter()
                    .map(|p| p.apply(l.bracket_basis(i, j), &crate::lie::basis_vector(n, k)))
                    .collect();
                // quad[(a, b)] = e_i ·_a (e_j ·_b e_k) - e_j ·_a (e_i ·_b e_k)
                let mut quad: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(d);
                for pa in basis {
                    let mut row = Vec::with_capacity(d);
                    for pb in basis {
                        let first =
                            pa.apply(&crate::lie::basis_vector(n, i), pb.product_basis(j, k));
                        let second =
                            pa.apply(&crate::lie::basis_vector(n, j), pb.product_basis(i, k));
                        row.push(
                            first
                                .iter()
                                .zip(&second)
                                .map(|(x, y)| x - y)
                                .collect::<Vec<_>>(),
                        );
                    }
                    quad.push(row);
                }
                for coord in 0..n {
                    let linear: Vec<Rational> =
                        linear_terms.iter().map(|v| v[coord].clone()).collect();
                    let mut quadratic = BTreeMap::new();
                    for a in 0..d {
                        for b in a..d {
                            let c = if a == b {
                                -quad[a][a][coord].clone()
                            } else {
                                -(&quad[a][b][coord] + &quad[b][a][coord])
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
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpa::verify_cpa;
    use crate::lie::test_algebras::*;
    use crate::linalg::rat;

    #[test]
    fn pair_index_is_lexicographic() {
        let n = 3;
        let expected = [
            ((0, 0), 0),
            ((0, 1), 1),
            ((0, 2), 2),
            ((1, 1), 3),
            ((1, 2), 4),
            ((2, 2), 5),
        ];
        for ((i, j), idx) in expected {
            assert_eq!(pair_index(n, i, j), idx);
        }
    }

    #[test]
    fn staged_and_dense_solvers_agree() {
        for l in [heisenberg(), borel2(), sl2()] {
            let staged = solve_linear_part(&l).unwrap();
            let dense = solve_linear_part_dense(&l).unwrap();
            assert_eq!(staged, dense, "solver mismatch on {}", l.name());
        }
    }

    #[test]
    fn borel2_linear_space_is_three_dimensional() {
        // The derivation law alone only forces every product into span{e1};
        // the diagonal direction e1·e1 = e1 survives until the quadratic
        // axiom (its residual is linear and kills it there).
        let basis = solve_linear_part(&borel2()).unwrap();
        let diag = CPAProduct::from_products(2, &[((0, 0), vec![(0, rat(1))])]);
        let alpha_dir = CPAProduct::from_products(2, &[((0, 1), vec![(0, rat(1))])]);
        let beta_dir = CPAProduct::from_products(2, &[((1, 1), vec![(0, rat(1))])]);
        assert_eq!(basis, vec![diag, alpha_dir, beta_dir]);
    }

    #[test]
    fn heisenberg_linear_space_contains_the_family() {
        let h = heisenberg();
        let basis = solve_linear_part(&h).unwrap();
        // A(mu) directions: e1·e1 = e2 plus mu times (e1·e2 = e3); both must
        // lie in the span. Check by solving coordinates in flattened form.
        let dir1 = CPAProduct::from_products(3, &[((0, 0), vec![(1, rat(1))])]);
        let dir2 = CPAProduct::from_products(3, &[((0, 1), vec![(2, rat(1))])]);
        let space = Subspace::from_vectors(basis.iter().map(CPAProduct::flatten_sym).collect(), 18);
        // A(mu) itself mixes dir1 and dir2, but also e1·e1 = e2 forces the
        // cross product; the span test is on the family members.
        for mu in [0i64, 1, -2] {
            let p = dir1.add_scaled(&rat(mu), &dir2);
            assert!(space.contains(&p.flatten_sym()), "A({mu}) in linear span");
            assert!(verify_cpa(&h, &p).unwrap().all_ok());
        }
    }

    #[test]
    fn abelian_one_linear_space() {
        let l = crate::catalog::make(&crate::catalog::CatalogKey::Abelian(1)).unwrap();
        let basis = solve_linear_part(&l).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(
            basis[0],
            CPAProduct::from_products(1, &[((0, 0), vec![(0, rat(1))])])
        );
        assert!(quadratic_residuals(&l, &basis).is_empty());
    }

    #[test]
    fn borel2_residuals_cut_out_the_known_family() {
        // Parameters (t0, t1, t2) = coefficients of e1·e1, e1·e2, e2·e2
        // along e1. The residual system is {t0, t1^2 - 2 t1 - t0 t2} up to
        // scale, so the zero set is t0 = 0 with t1 in {0, 2}.
        let b = borel2();
        let basis = solve_linear_part(&b).unwrap();
        let residuals = quadratic_residuals(&b, &basis);
        assert_eq!(residuals.len(), 2);
        let vanish = |t: &[Rational]| residuals.iter().all(|r| r.eval(t).is_zero());
        assert!(vanish(&[rat(0), rat(0), rat(7)]));
        assert!(vanish(&[rat(0), rat(2), rat(-3)]));
        assert!(!vanish(&[rat(0), rat(1), rat(0)]));
        assert!(!vanish(&[rat(1), rat(0), rat(0)]));
    }

    #[test]
    fn residuals_vanish_exactly_on_cpa_points() {
        let h = heisenberg();
        let basis = solve_linear_part(&h).unwrap();
        let residuals = quadratic_residuals(&h, &basis);
        let d = basis.len();
        // Probe a few deterministic points.
        for seed in 0..6i64 {
            let t: Vec<Rational> = (0..d).map(|a| rat((seed + a as i64) % 3 - 1)).collect();
            let p = param_product(&basis, &t);
            let verified = verify_cpa(&h, &p).unwrap().all_ok();
            let vanish = residuals.iter().all(|r| r.eval(&t).is_zero());
            assert_eq!(verified, vanish, "seed {seed}");
        }
    }

    #[test]
    fn quad_poly_substitution() {
        // q = t0^2 - 2 t0 in two variables.
        let mut quad = BTreeMap::new();
        quad.insert((0, 0), rat(1));
        let q = QuadPoly::new(2, rat(0), vec![rat(-2), rat(0)], quad);
        // Substitute t0 = 2, t1 = s0 (one free variable).
        let offset = vec![rat(2), rat(0)];
        let dirs = Matrix::from_i64(&[&[0], &[1]]);
        let s = q.substitute(&offset, &dirs);
        assert!(s.is_zero(), "q vanishes identically on the t0 = 2 line");

        // Substitute t0 = s0, t1 = 0: q stays t0^2 - 2 t0 in s0.
        let offset = vec![rat(0), rat(0)];
        let dirs = Matrix::from_i64(&[&[1], &[0]]);
        let s = q.substitute(&offset, &dirs);
        assert_eq!(s.eval(&[rat(2)]), rat(0));
        assert_eq!(s.eval(&[rat(3)]), rat(3));
    }

    #[test]
    fn support_and_flags() {
        let mut quad = BTreeMap::new();
        quad.insert((1, 2), rat(4));
        let q = QuadPoly::new(3, rat(0), vec![rat(0), rat(0), rat(0)], quad);
        assert_eq!(q.support(), vec![1, 2]);
        assert!(!q.is_affine());
        assert!(!q.is_nonzero_constant());
        let c = QuadPoly::new(2, rat(5), vec![rat(0), rat(0)], BTreeMap::new());
        assert!(c.is_nonzero_constant());
    }
}
