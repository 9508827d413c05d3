//! Odd-symmetric subdivision masks and their symbols.
//!
//! A mask `{p_α}` with arity `g` has the Laurent symbol `p(z) = Σ p_α z^α`;
//! on the unit circle `z = e^{-ix}` it is the real cosine series
//! `p_0 + 2 Σ_{α>0} p_α cos(αx)`. Offsets are centred: `α = 0` is the centre
//! of symmetry.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cosine;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;

pub use crate::cosine::MAX_DERIVATIVE_ORDER;

/// Relative tolerance on the remainder when testing divisibility of a
/// floating-point symbol.
pub const DIVISION_TOL: f64 = 1e-10;

/// Relative tolerance when checking the symmetry of a floating-point mask.
const SYMMETRY_TOL: f64 = 1e-12;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn qi(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Σ_{k=0}^{count-1} C(base + k, k) · δ^k`
fn binomial_series(
    delta: &LaurentPoly<BigRational>,
    base: u64,
    count: u32,
) -> LaurentPoly<BigRational> {
    let mut acc = LaurentPoly::zero();
    let mut power = LaurentPoly::one();
    for k in 0..count as u64 {
        acc = &acc + &power.scale(&qi(binomial(base + k, k)));
        power = &power * delta;
    }
    acc
}

/// A symmetric mask with exact rational coefficients.
#[derive(Clone, PartialEq)]
pub struct RationalMask {
    arity: usize,
    poly: LaurentPoly<BigRational>,
}

impl RationalMask {
    /// Builds a mask from coefficients listed left to right and the index of
    /// the centre within that list.
    pub fn new(arity: usize, coeffs: Vec<BigRational>, center: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidSymbol(format!(
                "arity must be at least 2, got {arity}"
            )));
        }
        if center >= coeffs.len() {
            return Err(Error::InvalidSymbol(format!(
                "centre index {center} outside {} coefficients",
                coeffs.len()
            )));
        }
        let poly = LaurentPoly::new(-(center as i64), coeffs);
        let lo = poly.min_exp().min(-poly.max_exp());
        let hi = -lo;
        for a in lo..=hi {
            if poly.coefficient(a) != poly.coefficient(-a) {
                return Err(Error::InvalidSymbol(format!(
                    "mask is not symmetric at offset {a}"
                )));
            }
        }
        Ok(Self { arity, poly })
    }

    /// Binary primal pseudo-spline `p_{J,L}(z) = 2 σ(z)^J q_{J,L}(z)` with
    /// `σ = (1+z)²/(4z)`, `δ = -(1-z)²/(4z)` and
    /// `q_{J,L} = Σ_{k=0}^{L} C(J-1+k, k) δ^k`.
    pub fn binary_pseudo_spline(j: u32, l: u32) -> Result<Self> {
        if j < 1 {
            return Err(Error::InvalidOrder {
                j,
                l,
                reason: "J must be at least 1",
            });
        }
        if l >= j {
            return Err(Error::InvalidOrder {
                j,
                l,
                reason: "L must satisfy 0 <= L <= J-1",
            });
        }
        let sigma = LaurentPoly::new(-1, vec![q(1, 4), q(1, 2), q(1, 4)]);
        let delta = LaurentPoly::new(-1, vec![q(-1, 4), q(1, 2), q(-1, 4)]);
        let qpart = binomial_series(&delta, u64::from(j) - 1, l + 1);
        let poly = (&sigma.pow(j) * &qpart).scale(&qi(2));
        Ok(Self { arity: 2, poly })
    }

    /// Ternary primal pseudo-spline `p̃_{J,L}(z) = 3 σ̃(z)^{J+1} q̃_{J,L}(z)`
    /// with `σ̃ = (1+z+z²)/(3z)`, `δ̃ = -(1-z)²/(3z)`, `L = 2L'+1` odd and
    /// `q̃_{J,L} = Σ_{k=0}^{L'} C(J+k, k) δ̃^k`.
    pub fn ternary_pseudo_spline(j: u32, l: u32) -> Result<Self> {
        if j < 1 {
            return Err(Error::InvalidOrder {
                j,
                l,
                reason: "J must be at least 1",
            });
        }
        if l.is_multiple_of(2) {
            return Err(Error::InvalidOrder {
                j,
                l,
                reason: "L must be odd",
            });
        }
        if l > j {
            return Err(Error::InvalidOrder {
                j,
                l,
                reason: "L must satisfy 1 <= L <= J",
            });
        }
        let sigma = LaurentPoly::new(-1, vec![q(1, 3), q(1, 3), q(1, 3)]);
        let delta = LaurentPoly::new(-1, vec![q(-1, 3), q(2, 3), q(-1, 3)]);
        let qpart = binomial_series(&delta, u64::from(j), (l - 1) / 2 + 1);
        let poly = (&sigma.pow(j + 1) * &qpart).scale(&qi(3));
        Ok(Self { arity: 3, poly })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Largest offset with a nonzero coefficient.
    pub fn half_width(&self) -> usize {
        self.poly.max_exp().max(0) as usize
    }

    /// Coefficients from the leftmost offset `-half_width` to the rightmost.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let w = self.half_width() as i64;
        (-w..=w).map(|a| self.poly.coefficient(a)).collect()
    }

    pub fn coefficient(&self, offset: i64) -> BigRational {
        self.poly.coefficient(offset)
    }

    pub fn laurent(&self) -> &LaurentPoly<BigRational> {
        &self.poly
    }

    /// `p(1)`, the sum of all coefficients.
    pub fn sum(&self) -> BigRational {
        self.poly
            .coeffs()
            .iter()
            .fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn to_symbol<T: Scalar>(&self) -> SubdivisionSymbol<T> {
        let half = (0..=self.half_width() as i64)
            .map(|a| T::of(self.poly.coefficient(a).to_f64().unwrap_or(f64::NAN)))
            .collect();
        SubdivisionSymbol {
            arity: self.arity,
            half: cosine::trim(half),
        }
    }

    /// Serialises as three lines: `arity g`, the coefficients as integers or
    /// `num/den` from the leftmost to the rightmost offset, and the centre index.
    pub fn to_text(&self) -> String {
        let coeffs: Vec<String> = self
            .coefficients()
            .iter()
            .map(ToString::to_string)
            .collect();
        format!(
            "arity {}\n{}\n{}\n",
            self.arity,
            coeffs.join(" "),
            self.half_width()
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing arity line".into()))?;
        let arity = header
            .strip_prefix("arity")
            .map(str::trim)
            .ok_or_else(|| Error::Parse(format!("expected `arity g`, got `{header}`")))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad arity: {e}")))?;
        let coeff_line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing coefficient line".into()))?;
        let coeffs = coeff_line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        let center = lines
            .next()
            .ok_or_else(|| Error::Parse("missing centre index line".into()))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad centre index: {e}")))?;
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after centre index".into()));
        }
        Self::new(arity, coeffs, center)
    }
}

fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = |e: String| Error::Parse(format!("bad rational `{tok}`: {e}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|e| bad(e.to_string()))?;
            let d = BigInt::from_str(d).map_err(|e| bad(e.to_string()))?;
            if d.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(tok).map_err(|e| bad(e.to_string()))?,
        )),
    }
}

impl fmt::Debug for RationalMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMask(g={}, {{", self.arity)?;
        for (i, c) in self.coefficients().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if c.denom().is_one() || c.is_zero() {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())?;
            }
        }
        write!(f, "}})")
    }
}

impl fmt::Display for RationalMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Floating-point subdivision symbol. Only `p_0, …, p_d` are stored; the
/// negative offsets follow from symmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct SubdivisionSymbol<T> {
    arity: usize,
    half: Vec<T>,
}

/// `p(z) = (1 + z + … + z^{g-1})^{factor_power} · quotient(z)`
#[derive(Clone, Debug)]
pub struct SmoothingSplit<T: Scalar> {
    pub factor_power: usize,
    pub quotient: LaurentPoly<T>,
}

impl<T: Scalar> SmoothingSplit<T> {
    /// `d` in the factorisation with exponent `d + 1`; `-1` when no factor.
    pub fn d(&self) -> i64 {
        self.factor_power as i64 - 1
    }
}

impl<T: Scalar> SubdivisionSymbol<T> {
    /// From `p_0, p_1, …, p_d`.
    pub fn from_half(arity: usize, half: Vec<T>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidSymbol(format!(
                "arity must be at least 2, got {arity}"
            )));
        }
        if half.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidSymbol("non-finite coefficient".into()));
        }
        Ok(Self {
            arity,
            half: cosine::trim(half),
        })
    }

    /// From a full centred mask of odd length `2d + 1`.
    pub fn from_centered(arity: usize, mask: &[T]) -> Result<Self> {
        if mask.len().is_multiple_of(2) {
            return Err(Error::InvalidSymbol(format!(
                "centred mask must have odd length, got {}",
                mask.len()
            )));
        }
        let d = mask.len() / 2;
        let scale = crate::scalar::max_abs(mask).max(T::one());
        for a in 1..=d {
            if (mask[d + a] - mask[d - a]).abs() > T::tol(SYMMETRY_TOL) * scale {
                return Err(Error::InvalidSymbol(format!(
                    "mask is not symmetric at offset {a}"
                )));
            }
        }
        Self::from_half(arity, mask[d..].to_vec())
    }

    pub fn binary_pseudo_spline(j: u32, l: u32) -> Result<Self> {
        Ok(RationalMask::binary_pseudo_spline(j, l)?.to_symbol())
    }

    pub fn ternary_pseudo_spline(j: u32, l: u32) -> Result<Self> {
        Ok(RationalMask::ternary_pseudo_spline(j, l)?.to_symbol())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Largest offset with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.half.len() - 1
    }

    pub fn half(&self) -> &[T] {
        &self.half
    }

    pub fn coefficient(&self, offset: i64) -> T {
        self.half
            .get(offset.unsigned_abs() as usize)
            .copied()
            .unwrap_or_else(T::zero)
    }

    /// Full mask from offset `-d` to `d`.
    pub fn mask(&self) -> Vec<T> {
        let d = self.degree() as i64;
        (-d..=d).map(|a| self.coefficient(a)).collect()
    }

    pub fn laurent(&self) -> LaurentPoly<T> {
        LaurentPoly::new(-(self.degree() as i64), self.mask())
    }

    /// `p(e^{-ix})`
    pub fn eval(&self, x: T) -> T {
        cosine::eval(&self.half, x)
    }

    /// Exact derivative of the cosine series of the given order.
    pub fn derivative_at(&self, x: T, order: u32) -> Result<T> {
        cosine::derivative(&self.half, x, order)
    }

    /// Largest power of `1 + z + … + z^{g-1}` dividing `p(z)`, with the
    /// remainder judged against `1e-10 · max|p_α|`, and the quotient.
    pub fn smoothing_factor_split(&self) -> SmoothingSplit<T> {
        let factor = LaurentPoly::geometric(self.arity);
        let tol = T::tol(DIVISION_TOL) * crate::scalar::max_abs(&self.half);
        let mut quotient = self.laurent();
        let mut factor_power = 0;
        while let Some((qt, rem)) = quotient.div_rem(&factor) {
            if qt.is_zero() || rem.coeffs().iter().any(|c| c.abs() > tol) {
                break;
            }
            quotient = qt;
            factor_power += 1;
        }
        SmoothingSplit {
            factor_power,
            quotient,
        }
    }
}
