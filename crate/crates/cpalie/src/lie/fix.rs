use super::{basis_vector, LieAlgebra};
use crate::linalg::{rat, solve_affine, AffineSolution, Rational, Subspace};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An element `x` with `[y, x] = x`, together with its `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixWitness {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

const SEARCH_SEED: u64 = 0x5EED;
const RANDOM_CANDIDATES: usize = 64;

/// Lower bound for the ideal generated by `{x : [y, x] = x for some y}`.
///
/// The witness condition is linear in `y` for fixed `x`, so each candidate
/// `x` is settled by one exact solve. Candidates are the basis vectors plus
/// a fixed-seed batch of small random combinations; the result is therefore
/// deterministic, and a lower bound rather than the exact fixed-point ideal
/// (it is always contained in the derived subalgebra, since `x = [y, x]`).
pub fn fix_witness_ideal(l: &LieAlgebra) -> (Subspace, Vec<FixWitness>) {
    let n = l.dim();
    let mut candidates: Vec<Vec<Rational>> = (0..n).map(|i| basis_vector(n, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEARCH_SEED);
    for _ in 0..RANDOM_CANDIDATES {
        let v: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            candidates.push(v);
        }
    }

    let mut witnesses = Vec::new();
    let mut span = Subspace::zero(n);
    for x in candidates {
        if span.contains(&x) && !span.is_zero() {
            continue; // already witnessed up to the ideal we are building
        }
        // [y, x] = x  ⟺  ad(x)·y = -x.
        let neg_x: Vec<Rational> = x.iter().map(|v| -v.clone()).collect();
        if let AffineSolution::Solution { particular, .. } = solve_affine(&l.adjoint(&x), &neg_x) {
            span = span.sum(&Subspace::from_vectors(vec![x.clone()], n));
            witnesses.push(FixWitness { x, y: particular });
        }
    }
    (l.ideal_generated(&span), witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::test_algebras::*;

    #[test]
    fn nilpotent_algebras_have_no_witnesses() {
        let (ideal, witnesses) = fix_witness_ideal(&heisenberg());
        assert!(ideal.is_zero());
        assert!(witnesses.is_empty());
    }

    #[test]
    fn borel_witness_ideal_is_the_derived_subalgebra() {
        let b = borel2();
        let (ideal, witnesses) = fix_witness_ideal(&b);
        assert_eq!(ideal, b.derived());
        assert_eq!(ideal.dim(), 1);
        // Each witness actually satisfies [y, x] = x.
        for w in &witnesses {
            assert_eq!(b.bracket(&w.y, &w.x), w.x);
        }
    }

    #[test]
    fn perfect_algebra_witness_ideal_is_everything() {
        let s = sl2();
        let (ideal, witnesses) = fix_witness_ideal(&s);
        assert_eq!(ideal, Subspace::full(3));
        for w in &witnesses {
            assert_eq!(s.bracket(&w.y, &w.x), w.x);
        }
    }

    #[test]
    fn witness_ideal_sits_inside_the_derived_subalgebra() {
        for l in [heisenberg(), borel2(), sl2()] {
            let (ideal, _) = fix_witness_ideal(&l);
            assert!(l.derived().contains_subspace(&ideal));
        }
    }
}
