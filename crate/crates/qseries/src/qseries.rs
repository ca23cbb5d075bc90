//! q-series constructors.
//!
//! Everything here produces a [`Series`] truncated at a caller-chosen order:
//!
//! * [`euler_f`] — the Euler products f_k = prod_{i>=1} (1 - q^(k i)),
//!   built from the pentagonal number expansion of f_1.
//! * [`phi`], [`psi`], [`theta_f`] — theta series; `f(a, b)` is the general
//!   two-parameter theta sum f(a,b) = sum_j a^(j(j+1)/2) b^(j(j-1)/2).
//! * [`EtaQuotient`] — products prod f_k^(e_k) with integer exponents,
//!   evaluated by one long division so intermediate coefficients never blow
//!   past the final quotient's size.
//! * [`FamilySpec`] / [`family_series`] — generating functions of the
//!   counting families (partitions, overpartitions, k-tuples, odd-part
//!   variants).

use crate::series::{CoeffRing, Series, SeriesError};

type Result<T> = std::result::Result<T, SeriesError>;

/// Euler product f_k = prod_{i>=1} (1 - q^(k i)), truncated at `order`.
///
/// f_1 is assembled from the pentagonal number theorem
/// (1 - q - q^2 + q^5 + q^7 - q^12 - ...), and f_k for k > 1 substitutes
/// q -> q^k into an f_1 of just enough terms, so every subscript shares one
/// construction.
pub fn euler_f(k: u64, order: usize, ring: CoeffRing) -> Result<Series> {
    if k == 0 {
        return Err(SeriesError::Invalid(
            "euler_f needs subscript k >= 1".into(),
        ));
    }
    if order == 0 {
        return Series::zero(ring, 0);
    }
    let k = k as usize;
    let base_order = order.div_ceil(k);
    let mut f = Series::zero(ring, base_order)?;
    f.add_to_coeff(0, 1)?;
    let mut j = 1usize;
    loop {
        let lo = j * (3 * j - 1) / 2;
        let hi = j * (3 * j + 1) / 2;
        if lo >= base_order {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        f.add_to_coeff(lo, sign)?;
        if hi < base_order {
            f.add_to_coeff(hi, sign)?;
        }
        j += 1;
    }
    if k == 1 {
        Ok(f)
    } else {
        f.substitute_power(k, order)
    }
}

/// phi(q^k) = 1 + 2 sum_{n>=1} q^(k n^2).
pub fn phi(k: u64, order: usize, ring: CoeffRing) -> Result<Series> {
    if k == 0 {
        return Err(SeriesError::Invalid("phi needs subscript k >= 1".into()));
    }
    let mut s = Series::zero(ring, order)?;
    if order > 0 {
        s.add_to_coeff(0, 1)?;
    }
    let mut n = 1u64;
    loop {
        let e = match n.checked_mul(n).and_then(|sq| sq.checked_mul(k)) {
            Some(e) if (e as usize) < order => e as usize,
            _ => break,
        };
        s.add_to_coeff(e, 2)?;
        n += 1;
    }
    Ok(s)
}

/// psi(q^k) = sum_{n>=0} q^(k n(n+1)/2).
pub fn psi(k: u64, order: usize, ring: CoeffRing) -> Result<Series> {
    if k == 0 {
        return Err(SeriesError::Invalid("psi needs subscript k >= 1".into()));
    }
    let mut s = Series::zero(ring, order)?;
    let mut n = 0u64;
    loop {
        let t = n * (n + 1) / 2;
        let e = match t.checked_mul(k) {
            Some(e) if (e as usize) < order => e as usize,
            _ => break,
        };
        s.add_to_coeff(e, 1)?;
        n += 1;
    }
    Ok(s)
}

/// Arguments of the general theta series f(s_a q^(e_a), s_b q^(e_b)).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ThetaSpec {
    sign_a: i8,
    exp_a: i64,
    sign_b: i8,
    exp_b: i64,
}

impl ThetaSpec {
    /// Signs must be +-1, exponents nonnegative with a positive sum (the
    /// series diverges otherwise).
    pub fn new(sign_a: i64, exp_a: i64, sign_b: i64, exp_b: i64) -> Result<ThetaSpec> {
        if sign_a.abs() != 1 || sign_b.abs() != 1 {
            return Err(SeriesError::Invalid("theta signs must be +1 or -1".into()));
        }
        if exp_a < 0 || exp_b < 0 || exp_a + exp_b == 0 {
            return Err(SeriesError::Invalid(format!(
                "theta exponents must be nonnegative with positive sum, got ({exp_a}, {exp_b})"
            )));
        }
        Ok(ThetaSpec {
            sign_a: sign_a as i8,
            exp_a,
            sign_b: sign_b as i8,
            exp_b,
        })
    }
}

/// f(a, b) = sum_{j in Z} a^(j(j+1)/2) b^(j(j-1)/2) with a = s_a q^(e_a),
/// b = s_b q^(e_b).
///
/// Specializations: f(-q, -q^2) = f_1, f(q, q) = phi(q), f(q, q^3) = psi(q).
/// Assembled exponents are computed in 128-bit integers before truncation.
pub fn theta_f(spec: ThetaSpec, order: usize, ring: CoeffRing) -> Result<Series> {
    let mut s = Series::zero(ring, order)?;
    let mut place = |j: i64| -> Result<bool> {
        let t1 = (j as i128) * (j as i128 + 1) / 2;
        let t2 = (j as i128) * (j as i128 - 1) / 2;
        let e = spec.exp_a as i128 * t1 + spec.exp_b as i128 * t2;
        debug_assert!(e >= 0 && t1 >= 0 && t2 >= 0);
        if e >= order as i128 {
            return Ok(false);
        }
        let neg = (spec.sign_a < 0 && t1 % 2 == 1) ^ (spec.sign_b < 0 && t2 % 2 == 1);
        s.add_to_coeff(e as usize, if neg { -1 } else { 1 })?;
        Ok(true)
    };
    // The exponent is a parabola in j with vertex inside [-1/2, 1/2]; walking
    // out from 0 in each direction stops at the first out-of-range term.
    let mut j = 0i64;
    while place(j)? || j == 0 {
        j += 1;
    }
    let mut j = -1i64;
    while place(j)? {
        j -= 1;
    }
    Ok(s)
}

/// A finite product prod f_k^(e_k), exponents of either sign.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaQuotient {
    factors: Vec<(u64, i32)>,
}

impl EtaQuotient {
    /// Subscripts must be >= 1. Repeated subscripts are merged; zero
    /// exponents are dropped.
    pub fn new(factors: &[(u64, i32)]) -> Result<EtaQuotient> {
        let mut merged: Vec<(u64, i32)> = Vec::new();
        for &(k, e) in factors {
            if k == 0 {
                return Err(SeriesError::Invalid(
                    "eta factor subscript must be >= 1".into(),
                ));
            }
            match merged.iter_mut().find(|(k2, _)| *k2 == k) {
                Some((_, e2)) => *e2 += e,
                None => merged.push((k, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        merged.sort_unstable();
        Ok(EtaQuotient { factors: merged })
    }

    pub fn factors(&self) -> &[(u64, i32)] {
        &self.factors
    }

    /// Evaluate to the given order.
    ///
    /// The positive-exponent factors become one numerator product, the
    /// negative ones a denominator, and a single long division finishes the
    /// job. Denominator constant terms are 1, so the division always exists;
    /// doing it once (rather than inverting factor by factor) keeps every
    /// intermediate bounded by products of plain f_k powers.
    pub fn eval(&self, order: usize, ring: CoeffRing) -> Result<Series> {
        let mut num = Series::one(ring, order)?;
        let mut den: Option<Series> = None;
        for &(k, e) in &self.factors {
            let f = euler_f(k, order, ring)?;
            if e > 0 {
                num = num.mul(&f.pow(e as u64)?)?;
            } else {
                let p = f.pow((-e) as u64)?;
                den = Some(match den {
                    Some(d) => d.mul(&p)?,
                    None => p,
                });
            }
        }
        match den {
            Some(d) => num.div(&d),
            None => Ok(num),
        }
    }
}

/// Counting family whose generating function the toolkit manipulates.
///
/// `OptK(3)` and `Opt` have identical generating functions; `Opt` is kept as
/// its own tag because most of the congruence catalog is about it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FamilySpec {
    /// Partitions p(n), generating function 1/f_1.
    P,
    /// Overpartitions, f_2 / f_1^2.
    Pbar,
    /// k-tuples of overpartitions, (f_2 / f_1^2)^k with k >= 1.
    PbarK(u32),
    /// Overpartitions into odd parts, f_2^3 / (f_1^2 f_4).
    PbarO,
    /// Overpartition triples with odd parts, f_2^9 / (f_1^6 f_4^3).
    Opt,
    /// k-tuples of overpartitions with odd parts, f_2^(3k) / (f_1^(2k) f_4^k).
    OptK(u32),
}

impl FamilySpec {
    pub fn eta(&self) -> EtaQuotient {
        let factors: Vec<(u64, i32)> = match *self {
            FamilySpec::P => vec![(1, -1)],
            FamilySpec::Pbar => vec![(2, 1), (1, -2)],
            FamilySpec::PbarK(k) => vec![(2, k as i32), (1, -2 * k as i32)],
            FamilySpec::PbarO => vec![(2, 3), (1, -2), (4, -1)],
            FamilySpec::Opt => vec![(2, 9), (1, -6), (4, -3)],
            FamilySpec::OptK(k) => {
                vec![(2, 3 * k as i32), (1, -2 * k as i32), (4, -(k as i32))]
            }
        };
        EtaQuotient::new(&factors).expect("family eta data is well formed")
    }

    /// Number of tuple components.
    pub fn components(&self) -> u32 {
        match *self {
            FamilySpec::P | FamilySpec::Pbar | FamilySpec::PbarO => 1,
            FamilySpec::Opt => 3,
            FamilySpec::PbarK(k) | FamilySpec::OptK(k) => k,
        }
    }

    /// Whether parts are restricted to odd sizes.
    pub fn odd_parts_only(&self) -> bool {
        matches!(
            self,
            FamilySpec::PbarO | FamilySpec::Opt | FamilySpec::OptK(_)
        )
    }

    /// Whether the first occurrence of a part size may be overlined.
    pub fn overlined(&self) -> bool {
        !matches!(self, FamilySpec::P)
    }

    pub fn name(&self) -> String {
        match *self {
            FamilySpec::P => "p".into(),
            FamilySpec::Pbar => "pbar".into(),
            FamilySpec::PbarK(k) => format!("pbar_{k}"),
            FamilySpec::PbarO => "pbar_o".into(),
            FamilySpec::Opt => "OPT".into(),
            FamilySpec::OptK(k) => format!("OPT_{k}"),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::PbarK(k) | FamilySpec::OptK(k) if k == 0 => {
                Err(SeriesError::Invalid("tuple families need k >= 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Generating function of a counting family, truncated at `order`.
pub fn family_series(spec: FamilySpec, order: usize, ring: CoeffRing) -> Result<Series> {
    spec.validate()?;
    spec.eta().eval(order, ring)
}

/// The generating function of overpartitions into odd parts as an infinite
/// phi product: phi(q) phi(q^2) phi(q^4)^2 phi(q^8)^4 ... with exponent
/// max(1, 2^(i-1)) on phi(q^(2^i)). Factors with 2^i >= order are 1 after
/// truncation and are skipped.
pub fn pbar_o_phi_product(order: usize, ring: CoeffRing) -> Result<Series> {
    let mut acc = Series::one(ring, order)?;
    let mut i = 0u32;
    while (1usize << i) < order {
        let exp = if i == 0 { 1 } else { 1u64 << (i - 1) };
        acc = acc.mul(&phi(1 << i, order, ring)?.pow(exp)?)?;
        i += 1;
    }
    Ok(acc)
}

/// (phi(q) phi(q^2) phi(q^4)^2)^t.
pub fn phi124_product_pow(t: u64, order: usize, ring: CoeffRing) -> Result<Series> {
    let base = phi(1, order, ring)?
        .mul(&phi(2, order, ring)?)?
        .mul(&phi(4, order, ring)?.pow(2)?)?;
    base.pow(t)
}
