use super::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Univariate polynomial over the rationals, coefficients low degree first,
/// trailing zeros trimmed (the zero polynomial has an empty coefficient
/// vector).
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&n| super::rat(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        Polynomial::new(coeffs)
    }

    /// Scales so the leading coefficient is 1. No-op on zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(lead) => {
                let inv = Rational::one() / lead.clone();
                Polynomial::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dlead = divisor.leading().unwrap().clone();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg {
            let k = rem.len() - 1 - ddeg;
            let factor = rem.last().unwrap() / &dlead;
            if !factor.is_zero() {
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&factor * dc);
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part: `self / gcd(self, self')`, monic.
    pub fn square_free(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// All rational roots with multiplicities, by the rational root theorem
    /// on the square-free part followed by repeated exact division.
    ///
    /// The roots are found on the primitive integer model of the square-free
    /// part: every rational root is `±p/q` with `p | constant term` and
    /// `q | leading coefficient`.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_zero() || self.degree() == Some(0) {
            return Vec::new();
        }
        let sf = self.square_free();
        let mut candidates = rational_root_candidates(&sf);
        candidates.retain(|r| sf.eval(r).is_zero());
        candidates.sort();
        candidates.dedup();
        let mut out = Vec::new();
        for root in candidates {
            // x - root
            let factor = Polynomial::new(vec![-root.clone(), Rational::one()]);
            let mut mult = 0;
            let mut p = self.clone();
            loop {
                let (q, r) = p.div_rem(&factor);
                if !r.is_zero() {
                    break;
                }
                mult += 1;
                p = q;
            }
            out.push((root, mult));
        }
        out
    }
}

/// Candidate roots `±p/q` for a polynomial after clearing denominators.
fn rational_root_candidates(p: &Polynomial) -> Vec<Rational> {
    // Clear denominators to get integer coefficients.
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    // Strip zero low-order coefficients: x = 0 is then a candidate.
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    let mut candidates = Vec::new();
    if low > 0 {
        candidates.push(Rational::zero());
    }
    if low >= ints.len() {
        return candidates;
    }
    let constant = ints[low].abs();
    let leading = ints.last().unwrap().abs();
    for p_div in divisors(&constant) {
        for q_div in divisors(&leading) {
            let r = Rational::new(p_div.clone(), q_div.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive(), "divisors of a nonpositive integer");
    let mut out = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d_sq = &d * &d;
        if &d_sq > n {
            break;
        }
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => super::format_rational(c),
                1 => format!("{}*t", super::format_rational(c)),
                _ => format!("{}*t^{}", super::format_rational(c), i),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn eval_and_derivative() {
        // p = t^2 - 1
        let p = Polynomial::from_i64(&[-1, 0, 1]);
        assert_eq!(p.eval(&rat(2)), rat(3));
        assert_eq!(p.derivative(), Polynomial::from_i64(&[0, 2]));
    }

    #[test]
    fn division_with_remainder() {
        // t^3 + 1 = (t + 1)(t^2 - t + 1)
        let p = Polynomial::from_i64(&[1, 0, 0, 1]);
        let d = Polynomial::from_i64(&[1, 1]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(q, Polynomial::from_i64(&[1, -1, 1]));
        assert!(r.is_zero());

        let (q2, r2) = p.div_rem(&Polynomial::from_i64(&[0, 0, 1]));
        assert_eq!(q2, Polynomial::from_i64(&[0, 1]));
        assert_eq!(r2, Polynomial::from_i64(&[1]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (t-1)(t-2) and (t-1)(t+3) share t-1.
        let a = Polynomial::from_i64(&[2, -3, 1]);
        let b = Polynomial::from_i64(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), Polynomial::from_i64(&[-1, 1]));
    }

    #[test]
    fn square_free_strips_multiplicity() {
        // (t-1)^2 (t+2) = t^3 - 3t + 2; square-free part (t-1)(t+2).
        let p = Polynomial::from_i64(&[2, -3, 0, 1]);
        assert_eq!(p.square_free(), Polynomial::from_i64(&[-2, 1, 1]));
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (t-1)^2 (t+2)
        let p = Polynomial::from_i64(&[2, -3, 0, 1]);
        assert_eq!(p.rational_roots(), vec![(rat(-2), 1), (rat(1), 2)]);
    }

    #[test]
    fn rational_roots_fractional() {
        // (2t - 1)(t + 3) = 2t^2 + 5t - 3
        let p = Polynomial::from_i64(&[-3, 5, 2]);
        assert_eq!(p.rational_roots(), vec![(rat(-3), 1), (ratio(1, 2), 1)]);
    }

    #[test]
    fn irrational_roots_are_invisible() {
        // t^2 - 2 has no rational roots.
        let p = Polynomial::from_i64(&[-2, 0, 1]);
        assert!(p.rational_roots().is_empty());
    }

    #[test]
    fn zero_root_detected() {
        // t^2 (t - 5)
        let p = Polynomial::from_i64(&[0, 0, -5, 1]);
        assert_eq!(p.rational_roots(), vec![(rat(0), 2), (rat(5), 1)]);
    }
}
