//! Characteristic polynomials and rational root isolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::scalar::Rational;

/// Coefficients `c[0..=n]` of `det(λI − A) = Σ c[k] λᵏ`, computed exactly
/// with the Faddeev-LeVerrier recurrence. `c[n] = 1`.
pub fn characteristic_polynomial(a: &Matrix<Rational>) -> Vec<Rational> {
    assert_eq!(a.rows(), a.cols(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let identity = Matrix::<Rational>::identity(n);
    let mut m = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&identity.scale(&coeffs[n - k + 1]));
        let am = a.mul(&m);
        coeffs[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}

pub fn evaluate(poly: &[Rational], x: &Rational) -> Rational {
    poly.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots of a polynomial given by ascending coefficients,
/// sorted ascending. Returns `None` if the integer coefficients after
/// clearing denominators do not fit the divisor search (|c| ≥ 2⁶⁴).
pub fn rational_roots(poly: &[Rational]) -> Option<Vec<Rational>> {
    let mut p: Vec<Rational> = poly.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.len() <= 1 {
        return Some(Vec::new());
    }
    let mut roots = Vec::new();
    let lead_zeros = p.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Rational::zero());
        p.drain(..lead_zeros);
    }
    let lcm = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let constant = ints[0].abs().to_u64()?;
    let leading = ints[ints.len() - 1].abs().to_u64()?;
    for q in divisors(leading) {
        for d in divisors(constant) {
            if num_integer::gcd(d, q) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rational::new(
                    BigInt::from(d) * BigInt::from(sign),
                    BigInt::from(q),
                );
                if evaluate(&p, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d <= n / d {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{rat, ratio};

    #[test]
    fn charpoly_of_rotation_generator() {
        // [[0,-2],[2,0]] has eigenvalues ±2i: λ² + 4.
        let a = Matrix::from_rows(vec![vec![rat(0), rat(-2)], vec![rat(2), rat(0)]]);
        assert_eq!(characteristic_polynomial(&a), vec![rat(4), rat(0), rat(1)]);
    }

    #[test]
    fn charpoly_matches_determinant_at_sample_points() {
        let a = Matrix::from_rows(vec![
            vec![rat(1), rat(2), rat(0)],
            vec![ratio(1, 3), rat(-1), rat(5)],
            vec![rat(4), rat(0), rat(2)],
        ]);
        let p = characteristic_polynomial(&a);
        for x in [-2, 0, 1, 7] {
            let x = rat(x);
            let shifted = Matrix::<Rational>::identity(3).scale(&x).sub(&a);
            assert_eq!(evaluate(&p, &x), shifted.determinant());
        }
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3) x = 2x³ + 5x² - 3x
        let p = vec![rat(0), rat(-3), rat(5), rat(2)];
        assert_eq!(rational_roots(&p).unwrap(), vec![rat(-3), rat(0), ratio(1, 2)]);
        // x² + 1 has none.
        assert!(rational_roots(&[rat(1), rat(0), rat(1)]).unwrap().is_empty());
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
        assert_eq!(rational_sqrt(&rat(-4)), None);
    }
}
