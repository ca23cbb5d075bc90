//! Dense truncated formal power series.
//!
//! A [`Series`] of order N stores the coefficients of q^0 .. q^(N-1) over one
//! of two coefficient rings:
//!
//! * [`CoeffRing::Exact`] — 256-bit signed integers with mandatory overflow
//!   detection (an operation that would exceed the width returns
//!   [`SeriesError::Overflow`], never a wrapped value),
//! * [`CoeffRing::Mod`] — integers modulo m for 2 <= m <= 2^63, stored as
//!   least nonnegative residues in a u64.
//!
//! Binary operations require both operands to live in the same ring and
//! truncate to the shorter order. Multiplication is schoolbook O(N^2) with
//! ring-specific kernels: wrapping u32/u64 arithmetic with a final mask when
//! the modulus is a power of two, per-term reduction otherwise. Division is
//! the usual long-division recurrence and exists whenever the divisor's
//! constant term is a unit.

use std::fmt;

use thiserror::Error;

use crate::wide::{narrow, widen, I256, I512};

/// Largest supported modulus (inclusive).
pub const MAX_MODULUS: u64 = 1 << 63;

/// Coefficient ring of a series.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    /// Signed 256-bit integers.
    Exact,
    /// Integers modulo the given m, 2 <= m <= 2^63.
    Mod(u64),
}

impl CoeffRing {
    fn validate(self) -> std::result::Result<(), SeriesError> {
        match self {
            CoeffRing::Exact => Ok(()),
            CoeffRing::Mod(m) if (2..=MAX_MODULUS).contains(&m) => Ok(()),
            CoeffRing::Mod(m) => Err(SeriesError::BadModulus(m)),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Exact => write!(f, "Exact"),
            CoeffRing::Mod(m) => write!(f, "Mod({m})"),
        }
    }
}

#[derive(Error, Clone, PartialEq, Eq, Debug)]
pub enum SeriesError {
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(CoeffRing, CoeffRing),
    #[error("exact coefficient overflow (past 256 bits)")]
    Overflow,
    #[error("constant term {0} is not a unit in {1}")]
    NonUnit(String, CoeffRing),
    #[error("modulus {0} outside 2..=2^63")]
    BadModulus(u64),
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, SeriesError>;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Coeffs {
    Exact(Vec<I256>),
    Mod(Vec<u64>),
}

/// Truncated power series; see the module docs for the representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    ring: CoeffRing,
    coeffs: Coeffs,
}

/// Build a series of the given order from machine-integer coefficients.
///
/// Inputs are reduced into the ring (least nonnegative residues for Mod),
/// missing high coefficients are zero-filled, extra ones are truncated.
pub fn make_series(ring: CoeffRing, coeffs: &[i64], order: usize) -> Result<Series> {
    ring.validate()?;
    let take = coeffs.len().min(order);
    match ring {
        CoeffRing::Exact => {
            let mut c = vec![I256::ZERO; order];
            for (dst, &src) in c.iter_mut().zip(&coeffs[..take]) {
                *dst = I256::from(src);
            }
            Ok(Series {
                ring,
                coeffs: Coeffs::Exact(c),
            })
        }
        CoeffRing::Mod(m) => {
            let mut c = vec![0u64; order];
            for (dst, &src) in c.iter_mut().zip(&coeffs[..take]) {
                *dst = (src as i128).rem_euclid(m as i128) as u64;
            }
            Ok(Series {
                ring,
                coeffs: Coeffs::Mod(c),
            })
        }
    }
}

impl Series {
    pub fn zero(ring: CoeffRing, order: usize) -> Result<Series> {
        make_series(ring, &[], order)
    }

    pub fn one(ring: CoeffRing, order: usize) -> Result<Series> {
        make_series(ring, &[1], order)
    }

    /// c * q^exp, truncated to `order`.
    pub fn monomial(ring: CoeffRing, c: i64, exp: usize, order: usize) -> Result<Series> {
        let mut s = Series::zero(ring, order)?;
        if exp < order {
            s.set_coeff(exp, c);
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.len(),
            Coeffs::Mod(c) => c.len(),
        }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// Raw residue, for Mod series only.
    pub fn coeff_u64(&self, n: usize) -> Option<u64> {
        match &self.coeffs {
            Coeffs::Mod(c) => c.get(n).copied(),
            Coeffs::Exact(_) => None,
        }
    }

    /// Raw wide coefficient, for Exact series only.
    pub fn coeff_exact(&self, n: usize) -> Option<I256> {
        match &self.coeffs {
            Coeffs::Exact(c) => c.get(n).copied(),
            Coeffs::Mod(_) => None,
        }
    }

    /// Coefficient of q^n as an i128 (exact values saturate; see
    /// [`crate::wide::to_i128_saturating`]).
    ///
    /// Panics if n is at or past the order.
    pub fn coeff_i128(&self, n: usize) -> i128 {
        assert!(
            n < self.order(),
            "coefficient index {n} past order {}",
            self.order()
        );
        match &self.coeffs {
            Coeffs::Exact(c) => crate::wide::to_i128_saturating(c[n]),
            Coeffs::Mod(c) => c[n] as i128,
        }
    }

    pub fn coeff_is_zero(&self, n: usize) -> bool {
        assert!(
            n < self.order(),
            "coefficient index {n} past order {}",
            self.order()
        );
        match &self.coeffs {
            Coeffs::Exact(c) => c[n] == I256::ZERO,
            Coeffs::Mod(c) => c[n] == 0,
        }
    }

    fn set_coeff(&mut self, n: usize, v: i64) {
        match (&mut self.coeffs, self.ring) {
            (Coeffs::Exact(c), _) => c[n] = I256::from(v),
            (Coeffs::Mod(c), CoeffRing::Mod(m)) => c[n] = (v as i128).rem_euclid(m as i128) as u64,
            _ => unreachable!("ring/coeff storage mismatch"),
        }
    }

    /// Add `v` to the coefficient of q^n (used by the sparse constructors).
    pub(crate) fn add_to_coeff(&mut self, n: usize, v: i64) -> Result<()> {
        match (&mut self.coeffs, self.ring) {
            (Coeffs::Exact(c), _) => {
                c[n] = c[n]
                    .checked_add(I256::from(v))
                    .ok_or(SeriesError::Overflow)?;
            }
            (Coeffs::Mod(c), CoeffRing::Mod(m)) => {
                let add = (v as i128).rem_euclid(m as i128) as u64;
                c[n] = addm(c[n], add, m);
            }
            _ => unreachable!("ring/coeff storage mismatch"),
        }
        Ok(())
    }

    pub(crate) fn from_raw_exact(c: Vec<I256>) -> Series {
        Series {
            ring: CoeffRing::Exact,
            coeffs: Coeffs::Exact(c),
        }
    }

    /// Caller guarantees the residues are already reduced and m is valid.
    pub(crate) fn from_raw_mod(m: u64, c: Vec<u64>) -> Series {
        Series {
            ring: CoeffRing::Mod(m),
            coeffs: Coeffs::Mod(c),
        }
    }

    pub(crate) fn raw_exact(&self) -> Option<&[I256]> {
        match &self.coeffs {
            Coeffs::Exact(c) => Some(c),
            Coeffs::Mod(_) => None,
        }
    }

    pub(crate) fn raw_mod(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Mod(c) => Some(c),
            Coeffs::Exact(_) => None,
        }
    }

    fn check_ring(&self, other: &Series) -> Result<()> {
        if self.ring != other.ring {
            return Err(SeriesError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    /// Copy of the first `order` coefficients. `order` must not exceed the
    /// current order.
    pub fn truncated(&self, order: usize) -> Series {
        assert!(
            order <= self.order(),
            "cannot extend a series by truncation"
        );
        let coeffs = match &self.coeffs {
            Coeffs::Exact(c) => Coeffs::Exact(c[..order].to_vec()),
            Coeffs::Mod(c) => Coeffs::Mod(c[..order].to_vec()),
        };
        Series {
            ring: self.ring,
            coeffs,
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                let mut c = Vec::with_capacity(n);
                for i in 0..n {
                    c.push(a[i].checked_add(b[i]).ok_or(SeriesError::Overflow)?);
                }
                Coeffs::Exact(c)
            }
            (Coeffs::Mod(a), Coeffs::Mod(b)) => {
                let m = self.modulus();
                Coeffs::Mod((0..n).map(|i| addm(a[i], b[i], m)).collect())
            }
            _ => unreachable!("ring equality already checked"),
        };
        Ok(Series {
            ring: self.ring,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                let mut c = Vec::with_capacity(n);
                for i in 0..n {
                    c.push(a[i].checked_sub(b[i]).ok_or(SeriesError::Overflow)?);
                }
                Coeffs::Exact(c)
            }
            (Coeffs::Mod(a), Coeffs::Mod(b)) => {
                let m = self.modulus();
                Coeffs::Mod((0..n).map(|i| subm(a[i], b[i], m)).collect())
            }
            _ => unreachable!("ring equality already checked"),
        };
        Ok(Series {
            ring: self.ring,
            coeffs,
        })
    }

    pub fn negate(&self) -> Result<Series> {
        Series::zero(self.ring, self.order())?.sub(self)
    }

    pub fn scalar_mul(&self, c: i64) -> Result<Series> {
        let coeffs = match &self.coeffs {
            Coeffs::Exact(a) => {
                let cw = I256::from(c);
                let mut out = Vec::with_capacity(a.len());
                for &x in a {
                    out.push(x.checked_mul(cw).ok_or(SeriesError::Overflow)?);
                }
                Coeffs::Exact(out)
            }
            Coeffs::Mod(a) => {
                let m = self.modulus();
                let cm = (c as i128).rem_euclid(m as i128) as u128;
                Coeffs::Mod(
                    a.iter()
                        .map(|&x| ((x as u128 * cm) % m as u128) as u64)
                        .collect(),
                )
            }
        };
        Ok(Series {
            ring: self.ring,
            coeffs,
        })
    }

    /// Multiply by q^k, truncating at the current order.
    pub fn shift_up(&self, k: usize) -> Series {
        let n = self.order();
        let coeffs = match &self.coeffs {
            Coeffs::Exact(a) => {
                let mut c = vec![I256::ZERO; n];
                if k < n {
                    c[k..].copy_from_slice(&a[..n - k]);
                }
                Coeffs::Exact(c)
            }
            Coeffs::Mod(a) => {
                let mut c = vec![0u64; n];
                if k < n {
                    c[k..].copy_from_slice(&a[..n - k]);
                }
                Coeffs::Mod(c)
            }
        };
        Series {
            ring: self.ring,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let n = self.order().min(other.order());
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => Coeffs::Exact(mul_exact(&a[..n], &b[..n])?),
            (Coeffs::Mod(a), Coeffs::Mod(b)) => {
                Coeffs::Mod(mul_mod(self.modulus(), &a[..n], &b[..n]))
            }
            _ => unreachable!("ring equality already checked"),
        };
        Ok(Series {
            ring: self.ring,
            coeffs,
        })
    }

    /// Binary exponentiation; `pow(0)` is the one-series of the same order.
    pub fn pow(&self, e: u64) -> Result<Series> {
        let mut acc = Series::one(self.ring, self.order())?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Long division. Defined when the divisor's constant term is a unit
    /// (+-1 in Exact, coprime to m in Mod(m)).
    pub fn div(&self, den: &Series) -> Result<Series> {
        self.check_ring(den)?;
        let n = self.order().min(den.order());
        if n == 0 {
            return Series::zero(self.ring, 0);
        }
        let coeffs = match (&self.coeffs, &den.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                Coeffs::Exact(div_exact(&a[..n], &b[..n]).ok_or_else(|| self.non_unit(den))??)
            }
            (Coeffs::Mod(a), Coeffs::Mod(b)) => Coeffs::Mod(
                div_mod(self.modulus(), &a[..n], &b[..n]).ok_or_else(|| self.non_unit(den))?,
            ),
            _ => unreachable!("ring equality already checked"),
        };
        Ok(Series {
            ring: self.ring,
            coeffs,
        })
    }

    fn non_unit(&self, den: &Series) -> SeriesError {
        let c0 = match &den.coeffs {
            Coeffs::Exact(b) => b.first().map(|x| x.to_string()).unwrap_or_default(),
            Coeffs::Mod(b) => b.first().map(|x| x.to_string()).unwrap_or_default(),
        };
        SeriesError::NonUnit(c0, self.ring)
    }

    /// Multiplicative inverse; precondition as for [`Series::div`].
    pub fn invert(&self) -> Result<Series> {
        Series::one(self.ring, self.order())?.div(self)
    }

    /// Substitute q -> q^k. The result has order min(self.order * k, cap);
    /// its q^(k*n) coefficient is the old q^n coefficient.
    pub fn substitute_power(&self, k: usize, cap: usize) -> Result<Series> {
        if k == 0 {
            return Err(SeriesError::Invalid("substitute_power needs k >= 1".into()));
        }
        let new_order = self.order().saturating_mul(k).min(cap);
        let mut out = Series::zero(self.ring, new_order)?;
        match (&self.coeffs, &mut out.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(c)) => {
                for (i, &x) in a.iter().enumerate() {
                    match i.checked_mul(k) {
                        Some(j) if j < new_order => c[j] = x,
                        _ => break,
                    }
                }
            }
            (Coeffs::Mod(a), Coeffs::Mod(c)) => {
                for (i, &x) in a.iter().enumerate() {
                    match i.checked_mul(k) {
                        Some(j) if j < new_order => c[j] = x,
                        _ => break,
                    }
                }
            }
            _ => unreachable!("rings match by construction"),
        }
        Ok(out)
    }

    /// Reduce coefficients into Mod(m). From Exact this takes least
    /// nonnegative residues; from Mod(m1) it reduces residues mod m.
    pub fn reduce_mod(&self, m: u64) -> Result<Series> {
        CoeffRing::Mod(m).validate()?;
        let coeffs = match &self.coeffs {
            Coeffs::Exact(a) => {
                use bnum::cast::As;
                let mw = I256::from(m);
                Coeffs::Mod(a.iter().map(|x| x.rem_euclid(mw).as_()).collect())
            }
            Coeffs::Mod(a) => Coeffs::Mod(a.iter().map(|&x| x % m).collect()),
        };
        Ok(Series {
            ring: CoeffRing::Mod(m),
            coeffs,
        })
    }

    /// Compare the coefficients of q^0 .. q^(upto-1). Errors if either series
    /// is shorter than `upto` or the rings differ.
    pub fn eq_upto(&self, other: &Series, upto: usize) -> Result<bool> {
        self.check_ring(other)?;
        if upto > self.order() || upto > other.order() {
            return Err(SeriesError::Invalid(format!(
                "eq_upto({upto}) exceeds orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => a[..upto] == b[..upto],
            (Coeffs::Mod(a), Coeffs::Mod(b)) => a[..upto] == b[..upto],
            _ => unreachable!("ring equality already checked"),
        })
    }

    /// First index n < order with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        (0..self.order()).find(|&n| !self.coeff_is_zero(n))
    }

    fn modulus(&self) -> u64 {
        match self.ring {
            CoeffRing::Mod(m) => m,
            CoeffRing::Exact => unreachable!("modulus() on an exact series"),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut shown = 0;
        let mut first = true;
        for n in 0..self.order() {
            if self.coeff_is_zero(n) {
                continue;
            }
            let v = self.coeff_i128(n);
            if first {
                write!(f, "{v}")?;
                if n > 0 {
                    write!(f, "*q^{n}")?;
                }
                first = false;
            } else if v < 0 {
                write!(f, " - {}*q^{n}", -v)?;
            } else {
                write!(f, " + {v}*q^{n}")?;
            }
            shown += 1;
            if shown == 8 {
                write!(f, " + ...")?;
                break;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

// ---- Modular scalar helpers ----

#[inline]
fn addm(a: u64, b: u64, m: u64) -> u64 {
    // a, b < m <= 2^63, so the sum fits in a u64.
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (m - b)
    }
}

/// Modular inverse by extended Euclid; None when gcd(a, m) != 1.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

// ---- Multiplication kernels ----

fn mul_exact(a: &[I256], b: &[I256]) -> Result<Vec<I256>> {
    let n = a.len();
    let mut out = vec![I256::ZERO; n];
    for i in 0..n {
        let ai = a[i];
        if ai == I256::ZERO {
            continue;
        }
        for j in 0..n - i {
            if b[j] == I256::ZERO {
                continue;
            }
            let p = ai.checked_mul(b[j]).ok_or(SeriesError::Overflow)?;
            out[i + j] = out[i + j].checked_add(p).ok_or(SeriesError::Overflow)?;
        }
    }
    Ok(out)
}

fn mul_mod(m: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if m.is_power_of_two() {
        if m <= 1 << 32 {
            mul_mod_pow2_u32(m, a, b)
        } else {
            mul_mod_pow2_u64(m, a, b)
        }
    } else {
        mul_mod_general(m, a, b)
    }
}

// Power-of-two modulus m <= 2^32: wrapping u32 arithmetic is arithmetic
// mod 2^32, and m divides 2^32, so one final mask suffices.
fn mul_mod_pow2_u32(m: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mask = (m - 1) as u32;
    let aa: Vec<u32> = a.iter().map(|&x| x as u32).collect();
    let bb: Vec<u32> = b.iter().map(|&x| x as u32).collect();
    let mut out = vec![0u32; n];
    for (i, &ai) in aa.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (o, &bj) in out[i..].iter_mut().zip(&bb[..n - i]) {
            *o = o.wrapping_add(ai.wrapping_mul(bj));
        }
    }
    out.into_iter().map(|x| (x & mask) as u64).collect()
}

fn mul_mod_pow2_u64(m: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mask = m - 1;
    let mut out = vec![0u64; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (o, &bj) in out[i..].iter_mut().zip(&b[..n - i]) {
            *o = o.wrapping_add(ai.wrapping_mul(bj));
        }
    }
    for x in out.iter_mut() {
        *x &= mask;
    }
    out
}

// Any modulus < 2^63: operands are < 2^63, so cur + a*b < 2^127 fits a u128.
fn mul_mod_general(m: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mm = m as u128;
    let mut out = vec![0u64; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let aw = ai as u128;
        for (o, &bj) in out[i..].iter_mut().zip(&b[..n - i]) {
            if bj == 0 {
                continue;
            }
            *o = ((*o as u128 + aw * bj as u128) % mm) as u64;
        }
    }
    out
}

// ---- Division kernels ----
//
// Long division: q[n] = (a[n] - sum_{i=1..n} b[i] q[n-i]) / b[0]. All keep a
// reversed copy of the quotient so the inner dot product runs over two
// ascending slices.

// Returns None for a non-unit constant term, Some(Err) on exact overflow.
fn div_exact(a: &[I256], b: &[I256]) -> Option<Result<Vec<I256>>> {
    let n = a.len();
    let b0 = b[0];
    let neg = if b0 == I256::ONE {
        false
    } else if b0 == -I256::ONE {
        true
    } else {
        return None;
    };
    let mut q = vec![I256::ZERO; n];
    let mut qr = vec![I512::ZERO; n];
    for i in 0..n {
        let mut acc = widen(a[i]);
        for (&bj, &qk) in b[1..=i].iter().zip(&qr[n - i..]) {
            if bj == I256::ZERO {
                continue;
            }
            // Products of two 256-bit values always fit in 512 bits; the
            // checked ops guard the accumulating sum.
            let p = match widen(bj).checked_mul(qk) {
                Some(p) => p,
                None => return Some(Err(SeriesError::Overflow)),
            };
            acc = match acc.checked_sub(p) {
                Some(v) => v,
                None => return Some(Err(SeriesError::Overflow)),
            };
        }
        if neg {
            acc = match acc.checked_neg() {
                Some(v) => v,
                None => return Some(Err(SeriesError::Overflow)),
            };
        }
        let v = match narrow(acc) {
            Some(v) => v,
            None => return Some(Err(SeriesError::Overflow)),
        };
        q[i] = v;
        qr[n - 1 - i] = widen(v);
    }
    Some(Ok(q))
}

fn div_mod(m: u64, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    if m.is_power_of_two() {
        if m <= 1 << 32 {
            div_mod_pow2_u32(m, a, b)
        } else {
            div_mod_pow2_u64(m, a, b)
        }
    } else {
        div_mod_general(m, a, b)
    }
}

// Inverse of an odd x modulo 2^64 by Newton doubling.
fn inv_pow2_u64(x: u64) -> u64 {
    debug_assert!(x % 2 == 1);
    let mut inv = 1u64;
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(inv)));
    }
    inv
}

fn inv_pow2_u32(x: u32) -> u32 {
    debug_assert!(x % 2 == 1);
    let mut inv = 1u32;
    for _ in 0..5 {
        inv = inv.wrapping_mul(2u32.wrapping_sub(x.wrapping_mul(inv)));
    }
    inv
}

fn div_mod_pow2_u32(m: u64, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let n = a.len();
    if b[0].is_multiple_of(2) {
        return None;
    }
    let mask = (m - 1) as u32;
    let inv = inv_pow2_u32(b[0] as u32);
    let aa: Vec<u32> = a.iter().map(|&x| x as u32).collect();
    let bb: Vec<u32> = b.iter().map(|&x| x as u32).collect();
    let mut q = vec![0u32; n];
    let mut qr = vec![0u32; n];
    for i in 0..n {
        let mut acc = 0u32;
        for (&bj, &qk) in bb[1..=i].iter().zip(&qr[n - i..]) {
            acc = acc.wrapping_add(bj.wrapping_mul(qk));
        }
        let v = aa[i].wrapping_sub(acc).wrapping_mul(inv);
        q[i] = v;
        qr[n - 1 - i] = v;
    }
    Some(q.into_iter().map(|x| (x & mask) as u64).collect())
}

fn div_mod_pow2_u64(m: u64, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let n = a.len();
    if b[0].is_multiple_of(2) {
        return None;
    }
    let mask = m - 1;
    let inv = inv_pow2_u64(b[0]);
    let mut q = vec![0u64; n];
    let mut qr = vec![0u64; n];
    for i in 0..n {
        let mut acc = 0u64;
        for (&bj, &qk) in b[1..=i].iter().zip(&qr[n - i..]) {
            acc = acc.wrapping_add(bj.wrapping_mul(qk));
        }
        let v = a[i].wrapping_sub(acc).wrapping_mul(inv);
        q[i] = v;
        qr[n - 1 - i] = v;
    }
    for x in q.iter_mut() {
        *x &= mask;
    }
    Some(q)
}

fn div_mod_general(m: u64, a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let n = a.len();
    let mm = m as u128;
    let inv = inv_mod(b[0], m)? as u128;
    let mut q = vec![0u64; n];
    let mut qr = vec![0u64; n];
    for i in 0..n {
        let mut acc = 0u128;
        for (&bj, &qk) in b[1..=i].iter().zip(&qr[n - i..]) {
            acc = (acc + bj as u128 * qk as u128) % mm;
        }
        let diff = if a[i] as u128 >= acc {
            a[i] as u128 - acc
        } else {
            a[i] as u128 + mm - acc
        };
        let v = ((diff * inv) % mm) as u64;
        q[i] = v;
        qr[n - 1 - i] = v;
    }
    Some(q)
}
