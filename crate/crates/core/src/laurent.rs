//! Finitely supported Laurent polynomials `Σ c_k z^k`, generic over the
//! coefficient ring (exact rationals for mask construction, floats for
//! factorisation of user supplied masks).

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{Num, Zero};

#[derive(Clone, PartialEq)]
pub struct LaurentPoly<T> {
    /// Exponent of `coeffs[0]`.
    min_exp: i64,
    coeffs: Vec<T>,
}

impl<T: Clone + Num> LaurentPoly<T> {
    pub fn new(min_exp: i64, coeffs: Vec<T>) -> Self {
        let mut p = Self { min_exp, coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, T::one())
    }

    pub fn monomial(exp: i64, c: T) -> Self {
        Self::new(exp, vec![c])
    }

    /// `1 + z + … + z^{g-1}`
    pub fn geometric(g: usize) -> Self {
        Self::new(0, vec![T::one(); g])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    /// Coefficients from the lowest to the highest exponent.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: i64) -> T {
        let idx = exp - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            T::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Iterator over `(exponent, coefficient)` pairs, including interior zeros.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(
            self.min_exp,
            self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn map<U: Clone + Num>(&self, f: impl Fn(&T) -> U) -> LaurentPoly<U> {
        LaurentPoly::new(self.min_exp, self.coeffs.iter().map(f).collect())
    }

    /// Euclidean division `self = q · divisor + r` treating both as
    /// polynomials after factoring out their lowest powers of `z`.
    /// Returns `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some((Self::zero(), Self::zero()));
        }
        let d = &divisor.coeffs;
        let dl = d.len();
        let lead = d[dl - 1].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dl {
            return Some((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - dl + 1;
        let mut q = vec![T::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dl - 1].clone() / lead.clone();
            for (j, dj) in d.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dj.clone();
            }
            q[i] = c;
        }
        Some((
            Self::new(self.min_exp - divisor.min_exp, q),
            Self::new(self.min_exp, rem),
        ))
    }
}

impl<T: Clone + Num> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn mul(self, rhs: Self) -> LaurentPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.min_exp + rhs.min_exp, out)
    }
}

impl<T: Clone + Num> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn add(self, rhs: Self) -> LaurentPoly<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().max(rhs.max_exp());
        let coeffs = (lo..=hi)
            .map(|e| self.coefficient(e) + rhs.coefficient(e))
            .collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl<T: Clone + Num + fmt::Display> fmt::Debug for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() && e != 0 {
                write!(f, "z^{e}")?;
            } else {
                write!(f, "({c})z^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    #[test]
    fn product_and_power() {
        let one_plus_z = LaurentPoly::<i64>::new(0, vec![1, 1]);
        let sq = one_plus_z.pow(4);
        assert_eq!(sq.coeffs(), &[1, 4, 6, 4, 1]);
        let shifted = &sq * &LaurentPoly::monomial(-2, 1);
        assert_eq!(shifted.min_exp(), -2);
        assert_eq!(shifted.max_exp(), 2);
    }

    #[test]
    fn exact_division_recovers_quotient() {
        let f = LaurentPoly::<Q>::new(-1, vec![Q::new(1, 4), Q::new(1, 2), Q::new(1, 4)]);
        let g = LaurentPoly::<Q>::new(0, vec![Q::new(1, 1), Q::new(1, 1)]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.coefficient(-1), Q::new(1, 4));
        assert_eq!(q.coefficient(0), Q::new(1, 4));
        assert_eq!(&(&q * &g) + &r, f);
    }

    #[test]
    fn division_with_remainder() {
        // z^2 + 1 = (z + 1)(z - 1) + 2
        let f = LaurentPoly::<Q>::new(0, vec![Q::from(1), Q::from(0), Q::from(1)]);
        let g = LaurentPoly::<Q>::new(0, vec![Q::from(1), Q::from(1)]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(r.coefficient(0), Q::from(2));
        assert_eq!(&(&q * &g) + &r, f);
        assert!(f.div_rem(&LaurentPoly::zero()).is_none());
    }

    #[test]
    fn addition_cancels_to_zero() {
        let a = LaurentPoly::<i64>::new(-2, vec![1, 2]);
        let b = LaurentPoly::<i64>::new(-2, vec![-1, -2]);
        assert!((&a + &b).is_zero());
    }
}
