use super::inner::{inner_phi_linear_space, phi_product};
use super::solve::{quadratic_residuals, solve_linear_part, QuadPoly};
use super::{CPAProduct, CpaError};
use crate::lie::{is_complete, LieAlgebra};
use crate::linalg::{solve_affine, AffineSolution, Matrix, Polynomial, Rational, Subspace};
use num_traits::{One, Zero};

/// Shape of the solution variety inside the linear-part space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Only the zero product.
    Trivial,
    /// Every point of the linear space solves the quadratic axiom too.
    FullLinearSpace,
    /// A finite union of affine-linear pieces, listed in `components`.
    ComponentUnion,
    /// The resolver could not finish; `residuals` still describe the variety.
    Unresolved,
}

/// One affine-linear piece of the solution set, in linear-part coordinates:
/// the points `point + w` for `w` in `directions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineComponent {
    /// Canonical offset: reduced against the direction space, so equal
    /// components compare equal structurally.
    pub point: Vec<Rational>,
    pub directions: Subspace,
    /// Linear equations `coeffs . t = rhs` cutting out the component.
    pub equations: Vec<(Vec<Rational>, Rational)>,
}

impl AffineComponent {
    fn new(mut point: Vec<Rational>, directions: Subspace) -> Self {
        // Reduce the offset modulo the direction space: subtract, for each
        // echelon row, point[pivot] times that row.
        for (row, pc) in directions.basis().iter().zip(directions.pivots()) {
            let coeff = point[pc].clone();
            if coeff.is_zero() {
                continue;
            }
            for (p, r) in point.iter_mut().zip(row) {
                *p = &*p - &(&coeff * r);
            }
        }
        let equations = directions
            .membership_conditions()
            .iter_rows()
            .map(|row| {
                let rhs = row
                    .iter()
                    .zip(&point)
                    .fold(Rational::zero(), |acc, (c, p)| &acc + &(c * p));
                (row.to_vec(), rhs)
            })
            .collect();
        AffineComponent {
            point,
            directions,
            equations,
        }
    }

    pub fn dim(&self) -> usize {
        self.directions.dim()
    }

    pub fn contains_point(&self, t: &[Rational]) -> bool {
        self.equations.iter().all(|(coeffs, rhs)| {
            let lhs = coeffs
                .iter()
                .zip(t)
                .fold(Rational::zero(), |acc, (c, p)| &acc + &(c * p));
            &lhs == rhs
        })
    }

    fn contains_component(&self, other: &AffineComponent) -> bool {
        self.directions.contains_subspace(&other.directions) && self.contains_point(&other.point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyMethod {
    /// Solve the axioms directly over product tables.
    General,
    /// Solve over the matrices `phi` with `x·y = [phi(x), y]`; complete
    /// algebras only, where this loses nothing.
    Inner,
}

/// Description of all CPA-structures on one algebra.
#[derive(Clone, Debug)]
pub struct Classification {
    pub method: ClassifyMethod,
    pub kind: Kind,
    /// Canonical basis of the solution space of the linear axioms. For the
    /// inner method these are the products of the `phi` basis matrices.
    pub linear_basis: Vec<CPAProduct>,
    /// Residual quadratic equations in the `linear_basis` coordinates.
    pub residuals: Vec<QuadPoly>,
    /// Affine pieces of the solution set (`ComponentUnion` and `Trivial`).
    pub components: Vec<AffineComponent>,
}

impl Classification {
    /// Dimension of the variety: the largest component dimension. `None`
    /// when unresolved.
    pub fn variety_dimension(&self) -> Option<usize> {
        match self.kind {
            Kind::Trivial => Some(0),
            Kind::FullLinearSpace => Some(self.linear_basis.len()),
            Kind::ComponentUnion => self.components.iter().map(AffineComponent::dim).max(),
            Kind::Unresolved => None,
        }
    }

    /// Components mapped into product-table coordinates (offset, span),
    /// independent of the parametrization; lets classifications obtained by
    /// different methods be compared geometrically.
    pub fn component_geometry(&self) -> Vec<(Vec<Rational>, Subspace)> {
        let flat_dim = match self.linear_basis.first() {
            Some(p) => {
                let n = p.dim();
                n * (n + 1) / 2 * n
            }
            None => 0,
        };
        let flats: Vec<Vec<Rational>> = self
            .linear_basis
            .iter()
            .map(CPAProduct::flatten_sym)
            .collect();
        let embed = |t: &[Rational]| -> Vec<Rational> {
            let mut acc = vec![Rational::zero(); flat_dim];
            for (c, f) in t.iter().zip(&flats) {
                if c.is_zero() {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(f) {
                    *a = &*a + &(c * x);
                }
            }
            acc
        };
        let pieces: Vec<(Vec<Rational>, Subspace)> = match self.kind {
            Kind::Trivial => vec![(vec![Rational::zero(); flat_dim], Subspace::zero(flat_dim))],
            Kind::FullLinearSpace => vec![(
                vec![Rational::zero(); flat_dim],
                Subspace::from_vectors(flats.clone(), flat_dim),
            )],
            Kind::ComponentUnion => self
                .components
                .iter()
                .map(|c| {
                    let span = Subspace::from_vectors(
                        c.directions.basis().iter().map(|w| embed(w)).collect(),
                        flat_dim,
                    );
                    let mut offset = embed(&c.point);
                    // Canonicalize the offset against the span.
                    for (row, pc) in span.basis().iter().zip(span.pivots()) {
                        let coeff = offset[pc].clone();
                        if coeff.is_zero() {
                            continue;
                        }
                        for (p, r) in offset.iter_mut().zip(row) {
                            *p = &*p - &(&coeff * r);
                        }
                    }
                    (offset, span)
                })
                .collect(),
            Kind::Unresolved => Vec::new(),
        };
        pieces
    }
}

/// Node budget for the branch-and-reduce resolver; generous for the catalog
/// sizes this crate targets.
const RESOLVE_BUDGET: usize = 4096;

struct Branch {
    /// Parameter point in the original t-coordinates.
    offset: Vec<Rational>,
    /// Columns span the remaining directions: t = offset + dirs * s.
    dirs: Matrix,
    /// Residuals rewritten in the s-coordinates.
    polys: Vec<QuadPoly>,
}

struct Unresolvable;

/// Decomposes the zero set of the residuals into affine-linear components.
/// Conservative: only linear reasoning plus exact branching steps (rational
/// roots of one-variable polynomials, vanishing monomials) are used, so an
/// `Err` means "not decided", never "empty".
fn resolve_components(
    d: usize,
    residuals: &[QuadPoly],
) -> Result<Vec<AffineComponent>, Unresolvable> {
    let mut budget: usize = RESOLVE_BUDGET;
    let root = Branch {
        offset: vec![Rational::zero(); d],
        dirs: Matrix::identity(d),
        polys: residuals.to_vec(),
    };
    let mut components = Vec::new();
    let mut stack = vec![root];
    while let Some(branch) = stack.pop() {
        if budget == 0 {
            return Err(Unresolvable);
        }
        budget -= 1;
        step_branch(branch, &mut stack, &mut components)?;
    }
    // Deduplicate and drop pieces contained in another piece.
    let mut keep: Vec<AffineComponent> = Vec::new();
    for c in components {
        if keep.iter().any(|k| k.contains_component(&c)) {
            continue;
        }
        keep.retain(|k| !c.contains_component(k));
        keep.push(c);
    }
    keep.sort_by(|a, b| {
        a.dim()
            .cmp(&b.dim())
            .then_with(|| a.point.cmp(&b.point))
            .then_with(|| a.directions.basis().cmp(b.directions.basis()))
    });
    Ok(keep)
}

fn step_branch(
    branch: Branch,
    stack: &mut Vec<Branch>,
    components: &mut Vec<AffineComponent>,
) -> Result<(), Unresolvable> {
    let Branch {
        offset,
        dirs,
        polys,
    } = branch;
    let m = dirs.cols();

    let mut affine_rows: Vec<Vec<Rational>> = Vec::new();
    let mut affine_rhs: Vec<Rational> = Vec::new();
    let mut rest: Vec<QuadPoly> = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        if p.is_nonzero_constant() {
            return Ok(()); // inconsistent branch, empty piece
        }
        if p.is_affine() {
            affine_rows.push(p.linear().to_vec());
            affine_rhs.push(-p.constant().clone());
        } else {
            rest.push(p);
        }
    }

    if !affine_rows.is_empty() {
        let sol = solve_affine(&Matrix::from_rows(affine_rows), &affine_rhs);
        match sol {
            AffineSolution::Inconsistent => return Ok(()),
            AffineSolution::Solution { particular, kernel } => {
                let k_cols = kernel.dim();
                let mut kmat = Matrix::zero(m, k_cols);
                for (c, v) in kernel.basis().iter().enumerate() {
                    for r in 0..m {
                        kmat[(r, c)] = v[r].clone();
                    }
                }
                let new_offset: Vec<Rational> = {
                    let shift = dirs.apply(&particular);
                    offset.iter().zip(&shift).map(|(o, s)| o + s).collect()
                };
                let new_dirs = &dirs * &kmat;
                let new_polys: Vec<QuadPoly> = rest
                    .iter()
                    .map(|p| p.substitute(&particular, &kmat))
                    .collect();
                stack.push(Branch {
                    offset: new_offset,
                    dirs: new_dirs,
                    polys: new_polys,
                });
                return Ok(());
            }
        }
    }

    if rest.is_empty() {
        let d = dirs.rows();
        let span = Subspace::from_vectors((0..dirs.cols()).map(|c| dirs.col_vec(c)).collect(), d);
        components.push(AffineComponent::new(offset, span));
        return Ok(());
    }

    // All remaining polynomials are genuinely quadratic. Branch on the first
    // one with an exactly solvable shape.
    for (idx, p) in rest.iter().enumerate() {
        let support = p.support();
        if support.len() == 1 {
            let v = support[0];
            let poly = Polynomial::new(vec![
                p.constant().clone(),
                p.linear()[v].clone(),
                p.quadratic()
                    .get(&(v, v))
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            ]);
            let roots = poly.rational_roots();
            if roots.is_empty() {
                // No rational root: the branch has no points with rational
                // v-coordinate, but roots may exist in extensions. Give up
                // rather than misreport.
                return Err(Unresolvable);
            }
            for (root, _) in roots {
                push_pinned(stack, &offset, &dirs, &rest, idx, v, root);
            }
            return Ok(());
        }
        // c * s_a * s_b with nothing else: zero set is {s_a = 0} u {s_b = 0}.
        if p.constant().is_zero()
            && p.linear().iter().all(Zero::is_zero)
            && p.quadratic().len() == 1
        {
            let (&(a, b), _) = p.quadratic().iter().next().unwrap();
            push_pinned(stack, &offset, &dirs, &rest, idx, a, Rational::zero());
            if b != a {
                push_pinned(stack, &offset, &dirs, &rest, idx, b, Rational::zero());
            }
            return Ok(());
        }
    }
    Err(Unresolvable)
}

/// Pushes the sub-branch with variable `v` pinned to `value`; `skip` is the
/// residual being consumed by the split.
fn push_pinned(
    stack: &mut Vec<Branch>,
    offset: &[Rational],
    dirs: &Matrix,
    polys: &[QuadPoly],
    skip: usize,
    v: usize,
    value: Rational,
) {
    let m = dirs.cols();
    let mut particular = vec![Rational::zero(); m];
    particular[v] = value;
    // Keep every variable except v.
    let mut kmat = Matrix::zero(m, m - 1);
    let mut c = 0;
    for r in 0..m {
        if r != v {
            kmat[(r, c)] = Rational::one();
            c += 1;
        }
    }
    let new_offset: Vec<Rational> = {
        let shift = dirs.apply(&particular);
        offset.iter().zip(&shift).map(|(o, s)| o + s).collect()
    };
    let new_polys: Vec<QuadPoly> = polys
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, p)| p.substitute(&particular, &kmat))
        .collect();
    stack.push(Branch {
        offset: new_offset,
        dirs: dirs * &kmat,
        polys: new_polys,
    });
}

fn classification_from(
    method: ClassifyMethod,
    linear_basis: Vec<CPAProduct>,
    residuals: Vec<QuadPoly>,
) -> Classification {
    let d = linear_basis.len();
    if d == 0 {
        return Classification {
            method,
            kind: Kind::Trivial,
            linear_basis,
            residuals,
            components: Vec::new(),
        };
    }
    if residuals.is_empty() {
        return Classification {
            method,
            kind: Kind::FullLinearSpace,
            linear_basis,
            residuals,
            components: Vec::new(),
        };
    }
    match resolve_components(d, &residuals) {
        Ok(components) => {
            debug_assert!(
                components
                    .iter()
                    .any(|c| c.contains_point(&vec![Rational::zero(); d])),
                "zero product missing from the decomposition"
            );
            let trivial = components.len() == 1
                && components[0].dim() == 0
                && components[0].point.iter().all(Zero::is_zero);
            Classification {
                method,
                kind: if trivial {
                    Kind::Trivial
                } else {
                    Kind::ComponentUnion
                },
                linear_basis,
                residuals,
                components,
            }
        }
        Err(Unresolvable) => Classification {
            method,
            kind: Kind::Unresolved,
            linear_basis,
            residuals,
            components: Vec::new(),
        },
    }
}

/// Classifies all CPA-structures on `l`.
///
/// `General` works on any valid algebra. `Inner` parametrizes products as
/// `x·y = [phi(x), y]` and requires a complete algebra (trivial center, all
/// derivations inner), where the two parametrizations describe the same set
/// of products.
pub fn classify(l: &LieAlgebra, method: ClassifyMethod) -> Result<Classification, CpaError> {
    l.require_valid()?;
    match method {
        ClassifyMethod::General => {
            let basis = solve_linear_part(l)?;
            let residuals = quadratic_residuals(l, &basis);
            Ok(classification_from(method, basis, residuals))
        }
        ClassifyMethod::Inner => {
            if !is_complete(l)? {
                return Err(CpaError::NotComplete);
            }
            let phis = inner_phi_linear_space(l)?;
            let products: Vec<CPAProduct> = phis
                .iter()
                .map(|phi| phi_product(l, phi))
                .collect::<Result<_, _>>()?;
            let residuals = super::inner::hom_residuals(l, &phis);
            Ok(classification_from(method, products, residuals))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::test_algebras::*;
    use crate::linalg::rat;

    #[test]
    fn sl2_is_trivial() {
        let c = classify(&sl2(), ClassifyMethod::General).unwrap();
        assert_eq!(c.kind, Kind::Trivial);
        assert!(c.linear_basis.is_empty());
        assert_eq!(c.variety_dimension(), Some(0));
    }

    #[test]
    fn borel2_components() {
        let c = classify(&borel2(), ClassifyMethod::General).unwrap();
        assert_eq!(c.kind, Kind::ComponentUnion);
        assert_eq!(c.linear_basis.len(), 3);
        assert_eq!(c.components.len(), 2);
        // Both components are lines: in the parameters (t0, t1, t2) for
        // e1·e1 = t0 e1, e1·e2 = t1 e1, e2·e2 = t2 e1, the solution set is
        // {t0 = 0, t1 = 0} u {t0 = 0, t1 = 2} with t2 free.
        assert!(c.components.iter().all(|comp| comp.dim() == 1));
        assert_eq!(c.variety_dimension(), Some(1));
        let on_some_component =
            |t: &[Rational]| c.components.iter().any(|comp| comp.contains_point(t));
        assert!(on_some_component(&[rat(0), rat(0), rat(5)]));
        assert!(on_some_component(&[rat(0), rat(2), rat(-7)]));
        assert!(!on_some_component(&[rat(0), rat(1), rat(0)]));
        assert!(!on_some_component(&[rat(1), rat(0), rat(0)]));
    }

    #[test]
    fn catalog_classification_shapes() {
        use crate::catalog::{make, CatalogKey as K};
        // (key, kind, linear dim, variety dim if decided)
        let expected: &[(K, Kind, usize, Option<usize>)] = &[
            (K::Abelian(1), Kind::FullLinearSpace, 1, Some(1)),
            (K::Abelian(2), Kind::Unresolved, 6, None),
            (K::Heisenberg, Kind::Unresolved, 9, None),
            (K::Sl(2), Kind::Trivial, 0, Some(0)),
            (K::Sl(3), Kind::Trivial, 0, Some(0)),
            (K::BorelSl(2), Kind::ComponentUnion, 3, Some(1)),
            (K::BorelSl(3), Kind::FullLinearSpace, 1, Some(1)),
            (K::BorelSl(4), Kind::FullLinearSpace, 1, Some(1)),
            (K::ParabolicSl(3, vec![1]), Kind::Trivial, 0, Some(0)),
            (K::Example36, Kind::Trivial, 0, Some(0)),
            (K::Sl2SemidirectV(1), Kind::Trivial, 0, Some(0)),
            (K::Sl2SemidirectV(2), Kind::Trivial, 0, Some(0)),
        ];
        for (key, kind, lin, vdim) in expected {
            let l = make(key).unwrap();
            let c = classify(&l, ClassifyMethod::General).unwrap();
            assert_eq!(c.kind, *kind, "{key}");
            assert_eq!(c.linear_basis.len(), *lin, "{key}");
            assert_eq!(c.variety_dimension(), *vdim, "{key}");
        }
    }

    #[test]
    fn heisenberg_family_solves_the_residuals() {
        // The full solution set on the Heisenberg algebra is not a union of
        // affine pieces, so the resolver declines; the residuals still cut
        // out the solutions exactly.
        let h = heisenberg();
        let c = classify(&h, ClassifyMethod::General).unwrap();
        assert_eq!(c.kind, Kind::Unresolved);
        for mu in [0i64, 1, -2] {
            let p = crate::cpa::heisenberg_a_mu(&rat(mu));
            let flat = Subspace::from_vectors(
                c.linear_basis
                    .iter()
                    .map(super::CPAProduct::flatten_sym)
                    .collect(),
                18,
            );
            let t = flat
                .coordinates(&p.flatten_sym())
                .expect("family lies in the linear space");
            assert!(
                c.residuals.iter().all(|r| r.eval(&t).is_zero()),
                "mu = {mu}"
            );
        }
    }

    #[test]
    fn abelian_line_is_full_space() {
        let l = crate::catalog::make(&crate::catalog::CatalogKey::Abelian(1)).unwrap();
        let c = classify(&l, ClassifyMethod::General).unwrap();
        assert_eq!(c.kind, Kind::FullLinearSpace);
        assert_eq!(c.variety_dimension(), Some(1));
    }

    #[test]
    fn inner_method_requires_complete() {
        assert!(matches!(
            classify(&heisenberg(), ClassifyMethod::Inner),
            Err(CpaError::NotComplete)
        ));
    }

    #[test]
    fn methods_agree_on_borel2() {
        let general = classify(&borel2(), ClassifyMethod::General).unwrap();
        let inner = classify(&borel2(), ClassifyMethod::Inner).unwrap();
        assert_eq!(general.kind, inner.kind);
        assert_eq!(general.linear_basis.len(), inner.linear_basis.len());
        let g = general.component_geometry();
        let i = inner.component_geometry();
        assert_eq!(g.len(), i.len());
        for piece in &g {
            assert!(i.contains(piece), "inner components match general ones");
        }
    }

    #[test]
    fn component_subsumption() {
        // Residual t0 * t1 plus the redundant (t0 * t1)^... same poly twice:
        // components {t0 = 0} and {t1 = 0}, each of dim 1, none subsumed.
        let mut quad = std::collections::BTreeMap::new();
        quad.insert((0, 1), rat(1));
        let p = QuadPoly::new(2, rat(0), vec![rat(0), rat(0)], quad);
        let comps = resolve_components(2, &[p.clone(), p]).unwrap_or_else(|_| panic!());
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.dim() == 1));
    }

    #[test]
    fn unresolved_when_roots_are_irrational() {
        // t0^2 = 2 has no rational roots; the resolver must decline.
        let mut quad = std::collections::BTreeMap::new();
        quad.insert((0, 0), rat(1));
        let p = QuadPoly::new(1, rat(-2), vec![rat(0)], quad);
        assert!(resolve_components(1, &[p]).is_err());
    }

    #[test]
    fn pinned_branches_cover_rational_roots() {
        // (t0 - 1)(t0 - 3) = t0^2 - 4 t0 + 3, together with t1 free:
        // two parallel lines.
        let mut quad = std::collections::BTreeMap::new();
        quad.insert((0, 0), rat(1));
        let p = QuadPoly::new(2, rat(3), vec![rat(-4), rat(0)], quad);
        let comps = resolve_components(2, &[p]).unwrap_or_else(|_| panic!());
        assert_eq!(comps.len(), 2);
        let on = |t: &[Rational]| comps.iter().any(|c| c.contains_point(t));
        assert!(on(&[rat(1), rat(9)]));
        assert!(on(&[rat(3), rat(-2)]));
        assert!(!on(&[rat(2), rat(0)]));
    }
}
