use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial, `coeffs[d]` is the coefficient of `t^d`.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Synthetic division by `(t - r)`, returning quotient and remainder.
    pub fn divide_linear(&self, r: &Rational) -> (RationalPolynomial, Rational) {
        if self.coeffs.is_empty() {
            return (self.clone(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for d in (0..n).rev() {
            let cur = &self.coeffs[d] + &carry * r;
            if d == 0 {
                return (RationalPolynomial::new(q), cur);
            }
            q[d - 1] = cur.clone();
            carry = cur;
        }
        unreachable!()
    }

    /// All rational roots with multiplicities, ascending by value.
    ///
    /// Candidates come from the rational root theorem applied to the
    /// integer-cleared polynomial; multiplicities from repeated division.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut p = self.clone();
        let mut roots = Vec::new();

        let zero_mult = p.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            p = RationalPolynomial::new(p.coeffs[zero_mult..].to_vec());
            roots.push((Rational::zero(), zero_mult));
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }

        let ints = p.integer_coefficients();
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        let num_divs = divisors(&a0);
        let den_divs = divisors(&an);
        let mut candidates: Vec<Rational> = Vec::new();
        for pn in &num_divs {
            for qd in &den_divs {
                let c = Rational::from_bigints(pn.clone(), qd.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();

        for c in candidates {
            let mut mult = 0;
            loop {
                if p.degree().unwrap_or(0) == 0 {
                    break;
                }
                let (q, rem) = p.divide_linear(&c);
                if !rem.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots
    }

    /// Primitive integer multiple of the polynomial.
    fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            ints
        } else {
            ints.into_iter().map(|x| x / &g).collect()
        }
    }
}

/// Positive divisors of a positive integer by trial division up to √n.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = n.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match d {
                0 => c.to_string(),
                1 => format!("({c})t"),
                _ => format!("({c})t^{d}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
