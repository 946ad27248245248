//! Quantum integers, factorials and binomials in the balanced convention
//! `[n]_{q^e} = (q^{en} - q^{-en}) / (q^e - q^{-e})`.

use super::{Gauss, LaurentPoly, Scalar};
use num_traits::One;

/// `[n]_{q^eps}` as a Laurent polynomial in `v`.
pub fn qint(n: i64, eps: i64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    let sign = n.signum();
    let n = n.abs();
    let terms = (0..n).map(|k| ((2 * eps * (n - 1 - 2 * k)) as i32, Gauss::one()));
    let p = Scalar::from_poly(LaurentPoly::from_terms(terms));
    if sign < 0 {
        -p
    } else {
        p
    }
}

/// `[n]_{q^eps}!`; `n` must be nonnegative.
pub fn qfactorial(n: i64, eps: i64) -> Scalar {
    assert!(n >= 0, "q-factorial of negative integer");
    (1..=n).map(|k| qint(k, eps)).product()
}

/// Gaussian binomial `[m choose k]_{q^eps}`; zero outside `0 <= k <= m`.
pub fn qbinom(m: i64, k: i64, eps: i64) -> Scalar {
    if k < 0 || k > m || m < 0 {
        return Scalar::zero();
    }
    // q-Pascal: [m,k] = q^{-ek}[m-1,k] + q^{e(m-k)}[m-1,k-1]
    let mut row = vec![Scalar::one()];
    for n in 1..=m {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=n {
            let left = if j < n {
                row[j as usize].mul_v_pow(-2 * eps * j)
            } else {
                Scalar::zero()
            };
            let right = if j > 0 {
                row[(j - 1) as usize].mul_v_pow(2 * eps * (n - j))
            } else {
                Scalar::zero()
            };
            next.push(&left + &right);
        }
        row = next;
    }
    row[k as usize].clone()
}

/// `(x;x)_n = prod_{k=1}^{n} (1 - x^k)`.
pub fn qshifted_factorial(x: &Scalar, n: u32) -> Scalar {
    let one = Scalar::one();
    (1..=n as i64).map(|k| &one - &x.pow(k)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> Scalar {
        Scalar::q_pow(k)
    }

    #[test]
    fn two_choose_one() {
        assert_eq!(qbinom(2, 1, 1), &q(1) + &q(-1));
        assert_eq!(qbinom(3, 0, 1), Scalar::one());
        assert!(qbinom(3, 4, 1).is_zero());
        assert!(qbinom(3, -1, 1).is_zero());
    }

    #[test]
    fn binomial_is_factorial_ratio() {
        for m in 0..7 {
            for k in 0..=m {
                for eps in 1..4 {
                    let ratio = &qfactorial(m, eps)
                        / &(&qfactorial(k, eps) * &qfactorial(m - k, eps));
                    assert_eq!(qbinom(m, k, eps), ratio);
                }
            }
        }
    }

    #[test]
    fn shifted_factorial_cases() {
        let one = Scalar::one();
        assert_eq!(qshifted_factorial(&q(2), 1), &one - &q(2));
        assert_eq!(qshifted_factorial(&q(5), 0), one);
        let expected = &(&Scalar::one() - &q(-2)) * &(&Scalar::one() - &q(-4));
        assert_eq!(qshifted_factorial(&q(-2), 2), expected);
    }

    #[test]
    fn qint_values() {
        assert_eq!(qint(2, 1), &q(1) + &q(-1));
        assert_eq!(qint(1, 3), Scalar::one());
        let expected = &(&q(3) - &q(-3)) / &(&q(1) - &q(-1));
        assert_eq!(qint(3, 1), expected);
    }
}
