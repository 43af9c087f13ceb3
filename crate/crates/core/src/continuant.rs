//! Generalized continuants `A_{ν,λ}` and `B_{ν,λ}`, the numerator and
//! denominator of the `ν`-th convergent of the tail fraction
//! `b_λ + a_{λ+1}/(b_{λ+1} + …)`.
//!
//! Three independent evaluation routes are provided: the three-term forward
//! recurrence ([`continuant_pair`]), the 2×2 matrix product
//! ([`continuant_matrix`]) and cofactor expansion of the tridiagonal
//! determinants ([`continuant_determinant`]).

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::system::PeriodicSystem;

fn check_nu(nu: i64) -> Result<()> {
    if nu < -1 {
        return Err(Error::IndexOutOfRange {
            index: nu,
            reason: "continuants are defined from ν = -1",
        });
    }
    Ok(())
}

fn check_lambda(lambda: i64) -> Result<()> {
    if lambda < 0 {
        return Err(Error::IndexOutOfRange {
            index: lambda,
            reason: "λ must be non-negative",
        });
    }
    Ok(())
}

/// `(A_{ν,λ}, B_{ν,λ})` by the forward recurrence
/// `X_{k} = b_{λ+k} X_{k-1} + a_{λ+k} X_{k-2}` from
/// `A_{-1} = 1, A_0 = b_λ, B_{-1} = 0, B_0 = 1`.
pub fn continuant_pair(system: &PeriodicSystem, nu: i64, lambda: i64) -> Result<(BigInt, BigInt)> {
    check_nu(nu)?;
    check_lambda(lambda)?;
    if nu == -1 {
        return Ok((BigInt::one(), BigInt::zero()));
    }
    let (mut a_prev, mut a_cur) = (BigInt::one(), system.head(lambda).clone());
    let (mut b_prev, mut b_cur) = (BigInt::zero(), BigInt::one());
    for k in 1..=nu {
        let (bk, ak) = (system.b(lambda + k), system.a(lambda + k));
        let a_next = bk * &a_cur + ak * &a_prev;
        let b_next = bk * &b_cur + ak * &b_prev;
        a_prev = std::mem::replace(&mut a_cur, a_next);
        b_prev = std::mem::replace(&mut b_cur, b_next);
    }
    Ok((a_cur, b_cur))
}

/// The run `A_{-1,λ}, …, A_{n,λ}` and `B_{-1,λ}, …, B_{n,λ}` in one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuantSequence {
    numerators: Vec<BigInt>,
    denominators: Vec<BigInt>,
}

impl ContinuantSequence {
    pub fn new(system: &PeriodicSystem, lambda: i64, upto: i64) -> Result<Self> {
        check_lambda(lambda)?;
        check_nu(upto)?;
        let len = (upto + 2) as usize;
        let mut numerators = Vec::with_capacity(len);
        let mut denominators = Vec::with_capacity(len);
        numerators.push(BigInt::one());
        denominators.push(BigInt::zero());
        if upto >= 0 {
            numerators.push(system.head(lambda).clone());
            denominators.push(BigInt::one());
        }
        for k in 1..=upto {
            let i = (k + 1) as usize;
            let (bk, ak) = (system.b(lambda + k), system.a(lambda + k));
            let a_next = bk * &numerators[i - 1] + ak * &numerators[i - 2];
            let b_next = bk * &denominators[i - 1] + ak * &denominators[i - 2];
            numerators.push(a_next);
            denominators.push(b_next);
        }
        Ok(Self { numerators, denominators })
    }

    /// Highest index held.
    pub fn upto(&self) -> i64 {
        self.numerators.len() as i64 - 2
    }

    /// `A_ν`; panics outside `-1..=upto`.
    pub fn numerator(&self, nu: i64) -> &BigInt {
        &self.numerators[(nu + 1) as usize]
    }

    /// `B_ν`; panics outside `-1..=upto`.
    pub fn denominator(&self, nu: i64) -> &BigInt {
        &self.denominators[(nu + 1) as usize]
    }

    pub fn denominators(&self) -> &[BigInt] {
        &self.denominators
    }
}

/// Shorthand for `B_{-1}, …, B_{upto}` with `λ = 0`.
pub fn denominators(system: &PeriodicSystem, upto: i64) -> Result<Vec<BigInt>> {
    Ok(ContinuantSequence::new(system, 0, upto)?.denominators)
}

/// Precomputed `A_{ν,λ}` and `B_{ν,λ}` for `-1 ≤ ν ≤ max_nu` and every `λ`.
///
/// For `λ ≥ 1` the values depend only on `λ mod d`, so only `λ = 0..=d` is
/// stored.
#[derive(Clone, Debug)]
pub struct ContinuantTable {
    system: PeriodicSystem,
    period: i64,
    rows: Vec<ContinuantSequence>,
}

impl ContinuantTable {
    pub fn new(system: &PeriodicSystem, max_nu: i64) -> Result<Self> {
        let period = system.period() as i64;
        let rows = (0..=period)
            .map(|lambda| ContinuantSequence::new(system, lambda, max_nu))
            .collect::<Result<_>>()?;
        Ok(Self {
            system: system.clone(),
            period,
            rows,
        })
    }

    pub fn system(&self) -> &PeriodicSystem {
        &self.system
    }

    pub fn max_nu(&self) -> i64 {
        self.rows[0].upto()
    }

    fn row(&self, nu: i64, lambda: i64) -> Result<&ContinuantSequence> {
        check_nu(nu)?;
        check_lambda(lambda)?;
        if nu > self.max_nu() {
            return Err(Error::IndexOutOfRange {
                index: nu,
                reason: "beyond the precomputed table",
            });
        }
        let slot = if lambda == 0 {
            0
        } else {
            ((lambda - 1) % self.period + 1) as usize
        };
        Ok(&self.rows[slot])
    }

    /// `A_{ν,λ}`.
    pub fn a(&self, nu: i64, lambda: i64) -> Result<&BigInt> {
        Ok(self.row(nu, lambda)?.numerator(nu))
    }

    /// `B_{ν,λ}`.
    pub fn b(&self, nu: i64, lambda: i64) -> Result<&BigInt> {
        Ok(self.row(nu, lambda)?.denominator(nu))
    }
}

/// A 2×2 integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2(pub [[BigInt; 2]; 2]);

impl Matrix2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Self::new(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn determinant(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: &Matrix2) -> Matrix2 {
        let (l, r) = (&self.0, &rhs.0);
        Matrix2::new(
            &l[0][0] * &r[0][0] + &l[0][1] * &r[1][0],
            &l[0][0] * &r[0][1] + &l[0][1] * &r[1][1],
            &l[1][0] * &r[0][0] + &l[1][1] * &r[1][0],
            &l[1][0] * &r[0][1] + &l[1][1] * &r[1][1],
        )
    }
}

/// `(1 1; 1 0) · ∏_{j=1..ν} (b_j 1; a_j 0)`.
///
/// The leading factor encodes `b₀ = 1`, so `system.b0` is ignored: the
/// result is `(A_ν A_{ν-1}; B_ν B_{ν-1})` for the system with `b₀ = 1`.
pub fn continuant_matrix(system: &PeriodicSystem, nu: i64) -> Result<Matrix2> {
    if nu < 0 {
        return Err(Error::IndexOutOfRange {
            index: nu,
            reason: "matrix form needs ν ≥ 0",
        });
    }
    let mut acc = Matrix2::new(BigInt::one(), BigInt::one(), BigInt::one(), BigInt::zero());
    for j in 1..=nu {
        let step = Matrix2::new(system.b(j).clone(), BigInt::one(), system.a(j).clone(), BigInt::zero());
        acc = &acc * &step;
    }
    Ok(acc)
}

pub type Matrix = Vec<Vec<BigInt>>;

/// The tridiagonal matrices whose determinants are `A_ν` (size `ν+1`, built
/// from `b₀..b_ν`) and `B_ν` (size `ν`, built from `b₁..b_ν`): `b` on the
/// diagonal, `-1` above it, `a` below it.
pub fn tridiagonal_matrices(system: &PeriodicSystem, nu: i64) -> Result<(Matrix, Matrix)> {
    if nu < 0 {
        return Err(Error::IndexOutOfRange {
            index: nu,
            reason: "determinant form needs ν ≥ 0",
        });
    }
    let build = |first: i64| {
        let n = (nu - first + 1) as usize;
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (row, idx) in (first..=nu).enumerate() {
            m[row][row] = system.head(idx).clone();
            if row + 1 < n {
                m[row][row + 1] = -BigInt::one();
            }
            if row > 0 {
                m[row][row - 1] = system.a(idx).clone();
            }
        }
        m
    };
    Ok((build(0), build(1)))
}

/// Determinant by Laplace expansion along the last row, skipping zero
/// entries. Exponential in general; intended for the small sparse matrices
/// of [`tridiagonal_matrices`].
pub fn laplace_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let last = n - 1;
    let mut total = BigInt::zero();
    for (j, entry) in m[last].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[..last]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry * laplace_determinant(&minor);
        if (last + j).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `(A_ν, B_ν)` as determinants of the tridiagonal matrices.
pub fn continuant_determinant(system: &PeriodicSystem, nu: i64) -> Result<(BigInt, BigInt)> {
    let (ma, mb) = tridiagonal_matrices(system, nu)?;
    Ok((laplace_determinant(&ma), laplace_determinant(&mb)))
}

/// The truncated fraction `b_λ + a_{λ+1}/(… + a_{λ+ν}/b_{λ+ν})` evaluated
/// bottom-up in exact rationals. `None` when an intermediate denominator
/// vanishes.
pub fn truncated_fraction(system: &PeriodicSystem, nu: i64, lambda: i64) -> Option<BigRational> {
    if nu < 0 || lambda < 0 {
        return None;
    }
    let mut value = BigRational::from_integer(system.head(lambda + nu).clone());
    if nu == 0 {
        return Some(BigRational::from_integer(system.head(lambda).clone()));
    }
    for k in (0..nu).rev() {
        if value.is_zero() {
            return None;
        }
        let tail = BigRational::from_integer(system.a(lambda + k + 1).clone()) / value;
        value = BigRational::from_integer(system.head(lambda + k).clone()) + tail;
    }
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s8() -> PeriodicSystem {
        PeriodicSystem::from_ints(&[1, 1], &[1, 4], 2, true).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn sqrt8_denominators() {
        let s = s8();
        let got: Vec<BigInt> = (0..=8).map(|nu| continuant_pair(&s, nu, 0).unwrap().1).collect();
        assert_eq!(got, ints(&[1, 1, 5, 6, 29, 35, 169, 204, 985]));
        let seq = denominators(&s, 8).unwrap();
        assert_eq!(&seq[1..], &got[..]);
    }

    #[test]
    fn initial_values() {
        let s = s8();
        assert_eq!(continuant_pair(&s, -1, 0).unwrap(), (BigInt::one(), BigInt::zero()));
        assert_eq!(continuant_pair(&s, 0, 0).unwrap(), (BigInt::from(2), BigInt::one()));
        assert_eq!(continuant_pair(&s, 0, 3).unwrap(), (BigInt::from(1), BigInt::one()));
    }

    #[test]
    fn pell_pair_at_seven() {
        let (a, b) = continuant_pair(&s8(), 7, 0).unwrap();
        assert_eq!((a.clone(), b.clone()), (BigInt::from(577), BigInt::from(204)));
        assert_eq!(&a * &a - BigInt::from(8) * &b * &b, BigInt::one());
    }

    #[test]
    fn rejects_out_of_range_indices() {
        assert!(matches!(continuant_pair(&s8(), -2, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(continuant_pair(&s8(), 3, -1), Err(Error::IndexOutOfRange { .. })));
        assert!(continuant_matrix(&s8(), -1).is_err());
        assert!(continuant_determinant(&s8(), -1).is_err());
    }

    #[test]
    fn matrix_form() {
        let s = s8().with_b0(BigInt::one());
        let m0 = continuant_matrix(&s, 0).unwrap();
        assert_eq!(m0, Matrix2::new(1.into(), 1.into(), 1.into(), 0.into()));
        let m3 = continuant_matrix(&s, 3).unwrap();
        assert_eq!(m3.0[1], [BigInt::from(6), BigInt::from(5)]);
        let fib = continuant_matrix(&PeriodicSystem::fibonacci(), 5).unwrap();
        assert_eq!(fib.0[1], [BigInt::from(8), BigInt::from(5)]);
    }

    #[test]
    fn determinant_form() {
        assert_eq!(continuant_determinant(&s8(), 0).unwrap(), (BigInt::from(2), BigInt::one()));
        assert_eq!(continuant_determinant(&s8(), 4).unwrap().1, BigInt::from(29));
        assert_eq!(
            continuant_determinant(&PeriodicSystem::fibonacci(), 6).unwrap().1,
            BigInt::from(13)
        );
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let s = PeriodicSystem::from_ints(&[2, -3, 1], &[1, 5, -2], 7, false).unwrap();
        let t = ContinuantTable::new(&s, 10).unwrap();
        for lambda in 0..9 {
            for nu in -1..=10 {
                let (a, b) = continuant_pair(&s, nu, lambda).unwrap();
                assert_eq!(t.a(nu, lambda).unwrap(), &a);
                assert_eq!(t.b(nu, lambda).unwrap(), &b);
            }
        }
        assert!(t.a(11, 0).is_err());
    }

    #[test]
    fn truncated_fraction_matches_ratio() {
        let s = s8();
        let v = truncated_fraction(&s, 3, 0).unwrap();
        assert_eq!(v, BigRational::new(17.into(), 6.into()));
        assert!(truncated_fraction(&s, -1, 0).is_none());
    }
}
