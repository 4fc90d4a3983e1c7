//! Named constructors for the stock of Lie algebras used throughout the
//! crate: abelian algebras, the Heisenberg algebra, the sl(n) family with its
//! Borel and parabolic subalgebras, a distinguished 6-dimensional parabolic
//! with a fixed basis, and semidirect products of sl(2) with its irreducible
//! modules.
//!
//! The sl-family is realized concretely as spans of elementary matrices and
//! converted to structure constants, so every table is mechanical to audit.

use crate::lie::{default_labels, semidirect, LieAlgebra, LieError};
use crate::linalg::{kernel, rat, solve_affine, AffineSolution, Matrix, Rational, Subspace};
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogKey {
    /// `abelian(n)`, n >= 1: zero bracket.
    Abelian(usize),
    /// 3-dimensional: `[e1, e2] = e3`.
    Heisenberg,
    /// `sl(n)`, n >= 2: traceless n x n matrices.
    Sl(usize),
    /// `borel_sl(n)`, n >= 2: upper-triangular traceless matrices.
    BorelSl(usize),
    /// `parabolic_sl(n, S)`: block upper-triangular traceless matrices; `S`
    /// is the nonempty proper set of simple roots (1-based) whose negative
    /// root spaces are included.
    ParabolicSl(usize, Vec<usize>),
    /// The 6-dimensional subalgebra of sl(3) spanned by
    /// `(E12, E13, E21, E23, E11 - E22, E22 - E33)`, in that order.
    Example36,
    /// `sl2_semidirect_V(n)`, n >= 1: sl(2) acting on its irreducible
    /// (n+1)-dimensional module.
    Sl2SemidirectV(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("bad parameters for {key}: {reason}")]
    BadParameters { key: String, reason: String },
    #[error("unknown catalog key: {0:?}")]
    UnknownKey(String),
    #[error("matrix basis is not closed under the commutator")]
    NotClosed,
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Abelian(n) => write!(f, "abelian({n})"),
            CatalogKey::Heisenberg => write!(f, "heisenberg"),
            CatalogKey::Sl(n) => write!(f, "sl({n})"),
            CatalogKey::BorelSl(n) => write!(f, "borel_sl({n})"),
            CatalogKey::ParabolicSl(n, s) => {
                let set: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "parabolic_sl({n},{{{}}})", set.join(","))
            }
            CatalogKey::Example36 => write!(f, "example_3_6"),
            CatalogKey::Sl2SemidirectV(n) => write!(f, "sl2_semidirect_V({n})"),
        }
    }
}

impl FromStr for CatalogKey {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let s = s.trim();
        let bad = || CatalogError::UnknownKey(s.to_string());
        match s {
            "heisenberg" => return Ok(CatalogKey::Heisenberg),
            "example_3_6" => return Ok(CatalogKey::Example36),
            _ => {}
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let parse_n = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match name {
            "abelian" => Ok(CatalogKey::Abelian(parse_n(args)?)),
            "sl" => Ok(CatalogKey::Sl(parse_n(args)?)),
            "borel_sl" => Ok(CatalogKey::BorelSl(parse_n(args)?)),
            "sl2_semidirect_V" => Ok(CatalogKey::Sl2SemidirectV(parse_n(args)?)),
            "parabolic_sl" => {
                let (n_part, set_part) = args.split_once(',').ok_or_else(bad)?;
                let set_inner = set_part
                    .trim()
                    .strip_prefix('{')
                    .and_then(|t| t.strip_suffix('}'))
                    .ok_or_else(bad)?;
                let mut roots = Vec::new();
                for piece in set_inner.split(',') {
                    if !piece.trim().is_empty() {
                        roots.push(parse_n(piece)?);
                    }
                }
                Ok(CatalogKey::ParabolicSl(parse_n(n_part)?, roots))
            }
            _ => Err(bad()),
        }
    }
}

/// The fixed instances shown by `catalog list`.
pub fn list_keys() -> Vec<CatalogKey> {
    vec![
        CatalogKey::Abelian(1),
        CatalogKey::Abelian(2),
        CatalogKey::Abelian(3),
        CatalogKey::Heisenberg,
        CatalogKey::Sl(2),
        CatalogKey::Sl(3),
        CatalogKey::BorelSl(2),
        CatalogKey::BorelSl(3),
        CatalogKey::BorelSl(4),
        CatalogKey::ParabolicSl(3, vec![1]),
        CatalogKey::Example36,
        CatalogKey::Sl2SemidirectV(1),
        CatalogKey::Sl2SemidirectV(2),
    ]
}

/// Builds the algebra for a key. Every result passes `validate`.
pub fn make(key: &CatalogKey) -> Result<LieAlgebra, CatalogError> {
    let bad = |reason: &str| CatalogError::BadParameters {
        key: key.to_string(),
        reason: reason.to_string(),
    };
    match key {
        CatalogKey::Abelian(n) => {
            if *n < 1 {
                return Err(bad("need n >= 1"));
            }
            Ok(LieAlgebra::from_brackets(
                key.to_string(),
                default_labels(*n),
                &[],
            ))
        }
        CatalogKey::Heisenberg => Ok(LieAlgebra::from_brackets(
            "heisenberg",
            default_labels(3),
            &[((0, 1), vec![(2, rat(1))])],
        )),
        CatalogKey::Sl(n) => {
            if *n < 2 {
                return Err(bad("need n >= 2"));
            }
            let (basis, labels) = sl_basis(*n, |_, _| true);
            from_matrix_basis(key.to_string(), labels, &basis)
        }
        CatalogKey::BorelSl(n) => {
            if *n < 2 {
                return Err(bad("need n >= 2"));
            }
            let (basis, labels) = sl_basis(*n, |i, j| i < j);
            from_matrix_basis(key.to_string(), labels, &basis)
        }
        CatalogKey::ParabolicSl(n, roots) => {
            if *n < 3 {
                return Err(bad("need n >= 3"));
            }
            if roots.is_empty() {
                return Err(bad("simple-root subset must be nonempty"));
            }
            if roots.len() >= n - 1 {
                return Err(bad("simple-root subset must be proper"));
            }
            if roots.iter().any(|&r| r < 1 || r > n - 1) {
                return Err(bad("simple roots range over 1..=n-1"));
            }
            // Column block id: a cut sits between positions r and r+1 for
            // every simple root r NOT in the subset.
            let mut block = vec![0usize; *n];
            for p in 1..*n {
                block[p] = block[p - 1] + usize::from(!roots.contains(&p));
            }
            let (basis, labels) = sl_basis(*n, |i, j| i < j || block[i] == block[j]);
            from_matrix_basis(key.to_string(), labels, &basis)
        }
        CatalogKey::Example36 => {
            let e = |i: usize, j: usize| elementary(3, i, j);
            let basis = vec![
                e(1, 2),
                e(1, 3),
                e(2, 1),
                e(2, 3),
                &e(1, 1) - &e(2, 2),
                &e(2, 2) - &e(3, 3),
            ];
            from_matrix_basis("example_3_6", default_labels(6), &basis)
        }
        CatalogKey::Sl2SemidirectV(n) => {
            if *n < 1 {
                return Err(bad("need n >= 1"));
            }
            let sl2 = make(&CatalogKey::Sl(2))?;
            let rep = irreducible_sl2_rep(*n);
            let mut out = semidirect(&sl2, &rep, n + 1)?;
            out = LieAlgebra::new(key.to_string(), out.labels().to_vec(), table_of(&out));
            Ok(out)
        }
    }
}

fn table_of(l: &LieAlgebra) -> Vec<Vec<Vec<Rational>>> {
    let n = l.dim();
    (0..n)
        .map(|i| (0..n).map(|j| l.bracket_basis(i, j).to_vec()).collect())
        .collect()
}

/// Elementary matrix `E_ij` (1-based indices) inside `m x m`.
fn elementary(m: usize, i: usize, j: usize) -> Matrix {
    let mut e = Matrix::zero(m, m);
    e[(i - 1, j - 1)] = Rational::one();
    e
}

/// Basis of a matrix subalgebra of sl(n): the elementary matrices `E_ij`
/// with `i != j` passing `keep` (0-based test), ordered upper triangle first
/// (lexicographic), then lower triangle (lexicographic), then the Cartan
/// generators `H_i = E_ii - E_{i+1,i+1}`.
fn sl_basis(n: usize, keep: impl Fn(usize, usize) -> bool) -> (Vec<Matrix>, Vec<String>) {
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if keep(i, j) {
                basis.push(elementary(n, i + 1, j + 1));
                labels.push(format!("e{}{}", i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            if keep(i, j) {
                basis.push(elementary(n, i + 1, j + 1));
                labels.push(format!("e{}{}", i + 1, j + 1));
            }
        }
    }
    for i in 0..n - 1 {
        basis.push(&elementary(n, i + 1, i + 1) - &elementary(n, i + 2, i + 2));
        labels.push(format!("h{}", i + 1));
    }
    (basis, labels)
}

/// Structure constants from a linearly independent family of matrices closed
/// under the commutator.
pub fn from_matrix_basis(
    name: impl Into<String>,
    labels: Vec<String>,
    basis: &[Matrix],
) -> Result<LieAlgebra, CatalogError> {
    let d = basis.len();
    assert_eq!(labels.len(), d, "one label per basis matrix");
    if d == 0 {
        return Ok(LieAlgebra::new(name, labels, Vec::new()));
    }
    let m = basis[0].rows();
    // Columns of `b` are the flattened basis matrices.
    let mut b = Matrix::zero(m * m, d);
    for (col, mat) in basis.iter().enumerate() {
        assert_eq!(
            (mat.rows(), mat.cols()),
            (m, m),
            "basis matrices must share a shape"
        );
        for i in 0..m {
            for j in 0..m {
                b[(i * m + j, col)] = mat[(i, j)].clone();
            }
        }
    }
    if kernel(&b).dim() > 0 {
        return Err(CatalogError::NotClosed); // dependent family cannot carry coordinates
    }
    let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
    for p in 0..d {
        for q in (p + 1)..d {
            let commutator = &(&basis[p] * &basis[q]) - &(&basis[q] * &basis[p]);
            let mut flat = Vec::with_capacity(m * m);
            for i in 0..m {
                flat.extend(commutator.row(i).iter().cloned());
            }
            let coords = match solve_affine(&b, &flat) {
                AffineSolution::Solution { particular, .. } => particular,
                AffineSolution::Inconsistent => return Err(CatalogError::NotClosed),
            };
            for (k, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    c[p][q][k] = v.clone();
                    c[q][p][k] = -v;
                }
            }
        }
    }
    let out = LieAlgebra::new(name, labels, c);
    out.require_valid()?;
    Ok(out)
}

/// The irreducible sl(2)-module of highest weight `n` on basis `v_0..v_n`,
/// as matrices for the ordered basis (e12, e21, h1) of sl(2):
/// `e.v_k = k(n-k+1) v_{k-1}`, `f.v_k = v_{k+1}`, `h.v_k = (n-2k) v_k`.
fn irreducible_sl2_rep(n: usize) -> Vec<Matrix> {
    let d = n + 1;
    let mut rho_e = Matrix::zero(d, d);
    let mut rho_f = Matrix::zero(d, d);
    let mut rho_h = Matrix::zero(d, d);
    for k in 0..=n {
        if k >= 1 {
            rho_e[(k - 1, k)] = rat((k * (n - k + 1)) as i64);
        }
        if k < n {
            rho_f[(k + 1, k)] = Rational::one();
        }
        rho_h[(k, k)] = rat(n as i64 - 2 * k as i64);
    }
    vec![rho_e, rho_f, rho_h]
}

/// The Borel of sl(k+1) together with the coordinate vector of
/// `z = E_{1,k+1}` and the indices of the Cartan generators `h_1..h_k`.
///
/// `z` spans the center of the nilradical (the strictly upper-triangular
/// part), and `[h_1, z] = [h_k, z] = z` while `[h_i, z] = 0` otherwise;
/// callers assert these relations in the suite.
pub fn borel_center_element(
    k: usize,
) -> Result<(LieAlgebra, Vec<Rational>, Vec<usize>), CatalogError> {
    if k < 2 {
        return Err(CatalogError::BadParameters {
            key: format!("borel_center_element({k})"),
            reason: "need k >= 2".to_string(),
        });
    }
    let n = k + 1;
    let l = make(&CatalogKey::BorelSl(n))?;
    let n_roots = n * (n - 1) / 2;
    // Upper-triangle lex order puts E_{1,m} at position m-2, so E_{1,k+1}
    // sits at index k-1.
    let z_index = k - 1;
    debug_assert_eq!(l.labels()[z_index], format!("e1{n}"));
    let mut z = vec![Rational::zero(); l.dim()];
    z[z_index] = Rational::one();
    let h_indices: Vec<usize> = (0..k).map(|i| n_roots + i).collect();
    Ok((l, z, h_indices))
}

/// Center of the nilradical span (the root-vector part) of a Borel, as a
/// subspace of the Borel: elements of the span commuting with all of it.
pub fn nilradical_center(l: &LieAlgebra, nil_dim: usize) -> Subspace {
    // The nilradical is spanned by the first `nil_dim` basis vectors; x in
    // that span is central iff [x, e_j] has no component at all, for each
    // generator e_j of the span.
    let dim = l.dim();
    let mut rows = Vec::new();
    for j in 0..nil_dim {
        for out in 0..dim {
            let mut row = vec![Rational::zero(); nil_dim];
            for (col, item) in row.iter_mut().enumerate() {
                *item = l.c(col, j, out).clone();
            }
            rows.push(row);
        }
    }
    let within = kernel(&Matrix::from_rows(rows));
    // Embed back into the Borel's coordinates.
    Subspace::from_vectors(
        within
            .basis()
            .iter()
            .map(|v| {
                let mut full = vec![Rational::zero(); dim];
                full[..nil_dim].clone_from_slice(v);
                full
            })
            .collect(),
        dim,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{is_complete, structure_report};

    fn get(key: &str) -> LieAlgebra {
        make(&key.parse().unwrap()).unwrap()
    }

    #[test]
    fn keys_round_trip_through_strings() {
        for key in list_keys() {
            let s = key.to_string();
            assert_eq!(s.parse::<CatalogKey>().unwrap(), key, "round trip {s}");
        }
    }

    #[test]
    fn bad_keys_are_rejected() {
        assert!("frobnicate(3)".parse::<CatalogKey>().is_err());
        assert!("sl(x)".parse::<CatalogKey>().is_err());
        assert!(make(&CatalogKey::Sl(1)).is_err());
        assert!(make(&CatalogKey::Abelian(0)).is_err());
        assert!(make(&CatalogKey::ParabolicSl(3, vec![])).is_err());
        assert!(make(&CatalogKey::ParabolicSl(3, vec![1, 2])).is_err());
        assert!(make(&CatalogKey::ParabolicSl(3, vec![7])).is_err());
    }

    #[test]
    fn every_catalog_algebra_validates() {
        for key in list_keys() {
            let l = make(&key).unwrap();
            assert!(l.is_valid(), "{key} must validate");
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(get("abelian(3)").dim(), 3);
        assert_eq!(get("heisenberg").dim(), 3);
        assert_eq!(get("sl(2)").dim(), 3);
        assert_eq!(get("sl(3)").dim(), 8);
        assert_eq!(get("borel_sl(2)").dim(), 2);
        assert_eq!(get("borel_sl(3)").dim(), 5);
        assert_eq!(get("borel_sl(4)").dim(), 9);
        assert_eq!(get("parabolic_sl(3,{1})").dim(), 6);
        assert_eq!(get("example_3_6").dim(), 6);
        assert_eq!(get("sl2_semidirect_V(1)").dim(), 5);
        assert_eq!(get("sl2_semidirect_V(2)").dim(), 6);
    }

    #[test]
    fn borel2_bracket_table() {
        // Basis (E12, H1): [e1, e2] = -2 e1.
        let b = get("borel_sl(2)");
        assert_eq!(b.labels(), ["e12", "h1"]);
        assert_eq!(b.bracket_basis(0, 1), &[rat(-2), rat(0)][..]);
    }

    #[test]
    fn sl2_is_the_standard_triple() {
        // Basis (e, f, h) = (E12, E21, H1): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
        let s = get("sl(2)");
        assert_eq!(s.labels(), ["e12", "e21", "h1"]);
        assert_eq!(s.bracket_basis(0, 1), &[rat(0), rat(0), rat(1)][..]);
        assert_eq!(s.bracket_basis(2, 0), &[rat(2), rat(0), rat(0)][..]);
        assert_eq!(s.bracket_basis(2, 1), &[rat(0), rat(-2), rat(0)][..]);
    }

    #[test]
    fn example_3_6_bracket_table() {
        // Frozen expectations for the full 11-entry table; everything else
        // among i < j pairs vanishes.
        let l = get("example_3_6");
        let expected: Vec<((usize, usize), Vec<(usize, i64)>)> = vec![
            ((0, 2), vec![(4, 1)]),  // [e1,e3] = e5
            ((0, 3), vec![(1, 1)]),  // [e1,e4] = e2
            ((0, 4), vec![(0, -2)]), // [e1,e5] = -2e1
            ((0, 5), vec![(0, 1)]),  // [e1,e6] = e1
            ((1, 2), vec![(3, -1)]), // [e2,e3] = -e4
            ((1, 4), vec![(1, -1)]), // [e2,e5] = -e2
            ((1, 5), vec![(1, -1)]), // [e2,e6] = -e2
            ((2, 4), vec![(2, 2)]),  // [e3,e5] = 2e3
            ((2, 5), vec![(2, -1)]), // [e3,e6] = -e3
            ((3, 4), vec![(3, 1)]),  // [e4,e5] = e4
            ((3, 5), vec![(3, -2)]), // [e4,e6] = -2e4
        ];
        for i in 0..6 {
            for j in (i + 1)..6 {
                let want: Vec<Rational> = match expected.iter().find(|(p, _)| *p == (i, j)) {
                    Some((_, coeffs)) => {
                        let mut v = vec![rat(0); 6];
                        for (k, val) in coeffs {
                            v[*k] = rat(*val);
                        }
                        v
                    }
                    None => vec![rat(0); 6],
                };
                assert_eq!(
                    l.bracket_basis(i, j),
                    &want[..],
                    "bracket [e{},e{}]",
                    i + 1,
                    j + 1
                );
            }
        }
    }

    #[test]
    fn example_3_6_structure() {
        let l = get("example_3_6");
        let r = structure_report(&l).unwrap();
        assert!(!r.perfect);
        assert_eq!(l.derived().dim(), 5);
        // Radical = span{e2, e4, e5 + 2e6}.
        let want = Subspace::from_vectors(
            vec![
                vec![rat(0), rat(1), rat(0), rat(0), rat(0), rat(0)],
                vec![rat(0), rat(0), rat(0), rat(1), rat(0), rat(0)],
                vec![rat(0), rat(0), rat(0), rat(0), rat(1), rat(2)],
            ],
            6,
        );
        assert_eq!(r.radical, want);
    }

    #[test]
    fn parabolic_matches_example_3_6_up_to_basis() {
        // Explicit basis map from the fixed example basis
        // (E12, E13, E21, E23, H1, H2) into parabolic coordinates
        // (e12, e13, e23, e21, h1, h2): a permutation.
        let ex = get("example_3_6");
        let pa = get("parabolic_sl(3,{1})");
        assert_eq!(pa.labels(), ["e12", "e13", "e23", "e21", "h1", "h2"]);
        let perm = [0usize, 1, 3, 2, 4, 5]; // image index in pa of each ex basis vector
        let map = |v: &[Rational]| -> Vec<Rational> {
            let mut out = vec![rat(0); 6];
            for (src, x) in v.iter().enumerate() {
                out[perm[src]] = &out[perm[src]] + x;
            }
            out
        };
        for i in 0..6 {
            for j in 0..6 {
                let lhs = map(ex.bracket_basis(i, j));
                let mut ei = vec![rat(0); 6];
                ei[i] = rat(1);
                let mut ej = vec![rat(0); 6];
                ej[j] = rat(1);
                let rhs = pa.bracket(&map(&ei), &map(&ej));
                assert_eq!(lhs, rhs, "homomorphism fails at ({i},{j})");
            }
        }
    }

    #[test]
    fn sl_algebras_are_perfect_with_zero_radical() {
        for n in [2usize, 3] {
            let l = get(&format!("sl({n})"));
            let r = structure_report(&l).unwrap();
            assert!(r.perfect, "sl({n}) perfect");
            assert!(r.radical.is_zero(), "sl({n}) radical");
        }
    }

    #[test]
    fn borels_are_solvable_complete_and_metabelian_iff_rank_one() {
        for n in [2usize, 3, 4] {
            let l = get(&format!("borel_sl({n})"));
            let r = structure_report(&l).unwrap();
            assert!(r.solvable, "borel_sl({n}) solvable");
            assert!(is_complete(&l).unwrap(), "borel_sl({n}) complete");
            assert_eq!(r.metabelian, n == 2, "borel_sl({n}) metabelian iff n = 2");
        }
    }

    #[test]
    fn semidirect_v1_is_perfect() {
        let r = structure_report(&get("sl2_semidirect_V(1)")).unwrap();
        assert!(r.perfect);
        let r2 = structure_report(&get("sl2_semidirect_V(2)")).unwrap();
        assert!(r2.perfect);
    }

    #[test]
    fn borel_center_element_relations() {
        for k in [2usize, 3] {
            let (l, z, h_indices) = borel_center_element(k).unwrap();
            assert_eq!(h_indices.len(), k);
            for (pos, &h) in h_indices.iter().enumerate() {
                let i = pos + 1; // h_i, 1-based
                let mut hv = vec![rat(0); l.dim()];
                hv[h] = rat(1);
                let br = l.bracket(&hv, &z);
                if i == 1 || i == k {
                    assert_eq!(br, z, "[h{i}, z] = z for k = {k}");
                } else {
                    assert!(br.iter().all(|x| x.is_zero()), "[h{i}, z] = 0 for k = {k}");
                }
            }
            // z spans the center of the nilradical.
            let nil_dim = (k + 1) * k / 2;
            let zc = nilradical_center(&l, nil_dim);
            assert_eq!(zc.dim(), 1);
            assert!(zc.contains(&z));
        }
        assert!(borel_center_element(1).is_err());
    }
}
