use super::{require_cpa, verify_cpa, CPAProduct, CpaError};
use crate::lie::{basis_vector, quotient, LieAlgebra};
use crate::linalg::{kernel, Rational, Subspace};
use num_traits::Zero;

/// The ascending ideal chain of a verified product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    /// `I_0 = 0 ⊆ I_1 ⊆ …` up to and including the stable term.
    pub chain: Vec<Subspace>,
    pub i_infinity: Subspace,
    /// Index of the first stable term: `chain[k_stable] = i_infinity`.
    pub k_stable: usize,
    /// The induced product on `g / I_∞` has zero annihilator (re-verified on
    /// the quotient, not assumed).
    pub nondegenerate: bool,
    /// Smallest `k >= 1` with the iterated bracket `I_∞^[k]` inside the
    /// annihilator, where `I^[1] = I` and `I^[k+1] = [I, I^[k]]`.
    pub nilpotency_index: usize,
}

/// `Ann = {x : x · g = 0}`, the kernel of the stacked multiplication
/// operators.
pub fn annihilator(l: &LieAlgebra, p: &CPAProduct) -> Result<Subspace, CpaError> {
    require_cpa(l, p)?;
    Ok(step(p, &Subspace::zero(l.dim())))
}

/// One chain step: `{x : x · g ⊆ target}`.
fn step(p: &CPAProduct, target: &Subspace) -> Subspace {
    let n = p.dim();
    let conditions = target.membership_conditions();
    if conditions.rows() == 0 {
        return Subspace::full(n);
    }
    // x · e_j = L(e_j) x by symmetry; require conditions · L(e_j) · x = 0
    // for every j.
    let mut stacked = &conditions * &p.l_operator(0);
    for j in 1..n {
        stacked = stacked.vstack(&(&conditions * &p.l_operator(j)));
    }
    kernel(&stacked)
}

/// Computes the full chain `I_n = {x : x · g ⊆ I_{n-1}}` to stabilization,
/// the nilpotency index of `I_∞` relative to the annihilator, and
/// re-verifies nondegeneracy of the quotient product.
pub fn ideal_chain(l: &LieAlgebra, p: &CPAProduct) -> Result<ChainResult, CpaError> {
    require_cpa(l, p)?;
    let n = l.dim();
    let mut chain = vec![Subspace::zero(n)];
    loop {
        let next = step(p, chain.last().unwrap());
        if &next == chain.last().unwrap() {
            break;
        }
        chain.push(next);
    }
    let i_infinity = chain.last().unwrap().clone();
    let k_stable = chain.len() - 1;
    let ann = if chain.len() > 1 {
        chain[1].clone()
    } else {
        i_infinity.clone()
    };

    // Smallest k with I_∞^[k] ⊆ Ann. The bracket powers descend, so the
    // search terminates at the stable power; if even that is not inside the
    // annihilator the product was not a CPA-structure to begin with.
    let mut power = i_infinity.clone();
    let mut nilpotency_index = 1;
    while !ann.contains_subspace(&power) {
        let next = l.subspace_bracket(&i_infinity, &power);
        assert_ne!(next, power, "bracket powers must reach the annihilator");
        power = next;
        nilpotency_index += 1;
    }

    let nondegenerate = {
        let (ql, qp) = quotient_cpa(l, p, &i_infinity)?;
        annihilator(&ql, &qp)?.is_zero()
    };

    Ok(ChainResult {
        chain,
        i_infinity,
        k_stable,
        nondegenerate,
        nilpotency_index,
    })
}

/// Quotient of a verified product by an ideal closed under both the bracket
/// and the product.
pub fn quotient_cpa(
    l: &LieAlgebra,
    p: &CPAProduct,
    ideal: &Subspace,
) -> Result<(LieAlgebra, CPAProduct), CpaError> {
    require_cpa(l, p)?;
    let n = l.dim();
    // Product-ideal check: e_i · b ∈ I for all basis b of I.
    let product_closed = (0..n).all(|i| {
        ideal
            .basis()
            .iter()
            .all(|b| ideal.contains(&p.apply(&basis_vector(n, i), b)))
    });
    if !product_closed || !l.is_ideal(ideal) {
        return Err(CpaError::NotATwoSidedIdeal);
    }
    let (ql, project) = quotient(l, ideal).map_err(|_| CpaError::NotATwoSidedIdeal)?;
    let q = ql.dim();

    // Quotient representatives: the standard basis vectors at the free
    // columns of the ideal, matching the projection's convention.
    let pivots: Vec<usize> = ideal
        .basis()
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

    let mut d = vec![vec![vec![Rational::zero(); q]; q]; q];
    for a in 0..q {
        for b in 0..q {
            let prod = p.apply(&basis_vector(n, free[a]), &basis_vector(n, free[b]));
            d[a][b] = project.apply(&prod);
        }
    }
    let qp = CPAProduct::new(d);
    debug_assert!(verify_cpa(&ql, &qp)?.all_ok());
    Ok((ql, qp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpa::CPAProduct;
    use crate::lie::test_algebras::*;
    use crate::linalg::rat;

    fn a_mu(mu: i64) -> CPAProduct {
        CPAProduct::from_products(
            3,
            &[((0, 0), vec![(1, rat(1))]), ((0, 1), vec![(2, rat(mu))])],
        )
    }

    #[test]
    fn heisenberg_chain_for_a_one() {
        let h = heisenberg();
        let r = ideal_chain(&h, &a_mu(1)).unwrap();
        // 0 ⊂ span{e3} ⊂ span{e2,e3} ⊂ h.
        assert_eq!(r.chain.len(), 4);
        assert!(r.chain[0].is_zero());
        assert_eq!(
            r.chain[1],
            Subspace::from_vectors(vec![basis_vector(3, 2)], 3)
        );
        assert_eq!(
            r.chain[2],
            Subspace::from_vectors(vec![basis_vector(3, 1), basis_vector(3, 2)], 3)
        );
        assert_eq!(r.chain[3], Subspace::full(3));
        assert_eq!(r.i_infinity, Subspace::full(3));
        assert_eq!(r.k_stable, 3);
        // I_∞^[2] = [h, h] = span{e3} ⊆ Ann.
        assert_eq!(r.nilpotency_index, 2);
        // Quotient by I_∞ = h is the zero algebra: vacuously nondegenerate.
        assert!(r.nondegenerate);
    }

    #[test]
    fn annihilator_of_a_one() {
        let ann = annihilator(&heisenberg(), &a_mu(1)).unwrap();
        assert_eq!(ann, Subspace::from_vectors(vec![basis_vector(3, 2)], 3));
    }

    #[test]
    fn zero_product_chain_stabilizes_immediately() {
        let h = heisenberg();
        let r = ideal_chain(&h, &CPAProduct::zero(3)).unwrap();
        assert_eq!(r.chain.len(), 2);
        assert_eq!(r.chain[1], Subspace::full(3));
        assert_eq!(r.k_stable, 1);
        assert_eq!(r.nilpotency_index, 1);
        assert!(r.nondegenerate, "zero quotient is vacuously nondegenerate");
    }

    #[test]
    fn borel_nondegenerate_structure_has_trivial_chain() {
        // alpha = 2, beta = 0 on the rank-one Borel.
        let b = borel2();
        let p = CPAProduct::from_products(2, &[((0, 1), vec![(0, rat(2))])]);
        assert!(annihilator(&b, &p).unwrap().is_zero());
        let r = ideal_chain(&b, &p).unwrap();
        assert!(r.i_infinity.is_zero());
        assert_eq!(r.k_stable, 0);
        assert!(r.nondegenerate);
    }

    #[test]
    fn quotient_by_partial_ideal() {
        // heisenberg, A(1), I = span{e3}: quotient is 2-dim abelian with
        // induced product ē1·ē1 = ē2.
        let h = heisenberg();
        let i = Subspace::from_vectors(vec![basis_vector(3, 2)], 3);
        let (ql, qp) = quotient_cpa(&h, &a_mu(1), &i).unwrap();
        assert_eq!(ql.dim(), 2);
        assert!(ql.derived().is_zero());
        assert_eq!(qp.product_basis(0, 0), &[rat(0), rat(1)][..]);
        assert!(qp.product_basis(0, 1).iter().all(|x| x.is_zero()));
        assert!(qp.product_basis(1, 1).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn quotient_rejects_non_ideals() {
        // span{e1} is not even a Lie ideal of heisenberg.
        let h = heisenberg();
        let not_ideal = Subspace::from_vectors(vec![basis_vector(3, 0)], 3);
        assert!(matches!(
            quotient_cpa(&h, &a_mu(1), &not_ideal),
            Err(CpaError::NotATwoSidedIdeal)
        ));
        // span{e1, e3} is a Lie ideal but not product-closed under A(1):
        // e1·e1 = e2 falls outside.
        let lie_only = Subspace::from_vectors(vec![basis_vector(3, 0), basis_vector(3, 2)], 3);
        assert!(h.is_ideal(&lie_only));
        assert!(matches!(
            quotient_cpa(&h, &a_mu(1), &lie_only),
            Err(CpaError::NotATwoSidedIdeal)
        ));
    }
}
