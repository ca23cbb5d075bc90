//! Arithmetic-progression extraction and the dissection identity catalog.
//!
//! The identities here split classical Euler products into pieces supported
//! on residue classes of the exponent. Each one is checked coefficient by
//! coefficient: both sides are expanded independently to the requested order
//! and compared. [`verify_identity`] runs the comparison over the exact ring
//! and falls back to two large prime moduli only when the exact coefficients
//! overflow 256 bits.

use num_bigint::BigUint;
use num_traits::One;

use crate::qseries::{euler_f, pbar_o_phi_product, phi, psi, theta_f, EtaQuotient, ThetaSpec};
use crate::report::{params_from, Counterexample, Status, VerificationReport};
use crate::series::{CoeffRing, Series, SeriesError};
use crate::wide::to_i128_saturating;

type Result<T> = std::result::Result<T, SeriesError>;

/// Picks every `step`-th coefficient starting at `offset`.
///
/// The result is a series in its own variable with `c[n] = a[offset + n*step]`,
/// of order `ceil((order - offset) / step)`; it is empty when `offset` lies
/// at or past the input's order.
pub fn extract_ap(s: &Series, step: u64, offset: u64) -> Result<Series> {
    if step == 0 {
        return Err(SeriesError::Invalid("extraction step must be >= 1".into()));
    }
    let step = step as usize;
    let offset = usize::try_from(offset)
        .map_err(|_| SeriesError::Invalid("extraction offset out of range".into()))?;
    let order = s.order();
    let count = if offset >= order {
        0
    } else {
        (order - 1 - offset) / step + 1
    };
    Ok(match s.ring() {
        CoeffRing::Exact => {
            let a = s
                .raw_exact()
                .expect("exact series stores exact coefficients");
            Series::from_raw_exact((0..count).map(|n| a[offset + n * step]).collect())
        }
        CoeffRing::Mod(m) => {
            let a = s.raw_mod().expect("modular series stores residues");
            Series::from_raw_mod(m, (0..count).map(|n| a[offset + n * step]).collect())
        }
    })
}

/// An identity between two independently constructed series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityId {
    /// phi(q) = phi(q^4) + 2q psi(q^8).
    PhiFourDissect,
    /// Even/odd split of f_1^2.
    SquareDissect,
    /// Even/odd split of 1/f_1^2.
    InvSquareDissect,
    /// Even/odd split of f_1^4.
    FourthPowerDissect,
    /// Even/odd split of 1/f_1^4.
    InvFourthPowerDissect,
    /// Split of f_1 f_2 along exponent residues mod 3.
    F1F2Dissect,
    /// Split of f_1^3 along exponent residues mod 3.
    CubeDissect,
    /// f_2^3/(f_1^2 f_4) equals the product phi(q) phi(q^2) phi(q^4)^2 phi(q^8)^4 ...
    PbarOPhiProduct,
    /// f_k^(p^l) = f_(pk)^(p^(l-1)) over Z/p^l.
    EulerPowerCongruence { k: u64, p: u64, l: u32 },
}

impl IdentityId {
    pub fn label(&self) -> String {
        match *self {
            IdentityId::PhiFourDissect => "phi_four_dissection".into(),
            IdentityId::SquareDissect => "f1_squared_two_dissection".into(),
            IdentityId::InvSquareDissect => "inv_f1_squared_two_dissection".into(),
            IdentityId::FourthPowerDissect => "f1_fourth_two_dissection".into(),
            IdentityId::InvFourthPowerDissect => "inv_f1_fourth_two_dissection".into(),
            IdentityId::F1F2Dissect => "f1f2_three_dissection".into(),
            IdentityId::CubeDissect => "f1_cubed_three_dissection".into(),
            IdentityId::PbarOPhiProduct => "pbar_o_phi_product".into(),
            IdentityId::EulerPowerCongruence { k, p, l } => {
                format!("euler_power_congruence_f{k}_p{p}_l{l}")
            }
        }
    }

    pub fn params(&self) -> std::collections::BTreeMap<String, i64> {
        match *self {
            IdentityId::EulerPowerCongruence { k, p, l } => {
                params_from(&[("k", k as i64), ("p", p as i64), ("l", l as i64)])
            }
            _ => Default::default(),
        }
    }

    /// Expands both sides at `order` over `ring`. The two sides share no
    /// intermediate values: the left side is the plain product, the right
    /// side is assembled from shifted pieces.
    pub fn sides(&self, order: usize, ring: CoeffRing) -> Result<(Series, Series)> {
        let eta = |f: &[(u64, i32)]| -> Result<Series> { EtaQuotient::new(f)?.eval(order, ring) };
        match *self {
            IdentityId::PhiFourDissect => {
                let lhs = phi(1, order, ring)?;
                let rhs =
                    phi(4, order, ring)?.add(&psi(8, order, ring)?.scalar_mul(2)?.shift_up(1))?;
                Ok((lhs, rhs))
            }
            IdentityId::SquareDissect => {
                let lhs = eta(&[(1, 2)])?;
                let rhs = eta(&[(2, 1), (8, 5), (4, -2), (16, -2)])?
                    .sub(&eta(&[(2, 1), (16, 2), (8, -1)])?.scalar_mul(2)?.shift_up(1))?;
                Ok((lhs, rhs))
            }
            IdentityId::InvSquareDissect => {
                let lhs = eta(&[(1, -2)])?;
                let rhs = eta(&[(8, 5), (2, -5), (16, -2)])?.add(
                    &eta(&[(4, 2), (16, 2), (2, -5), (8, -1)])?
                        .scalar_mul(2)?
                        .shift_up(1),
                )?;
                Ok((lhs, rhs))
            }
            IdentityId::FourthPowerDissect => {
                let lhs = eta(&[(1, 4)])?;
                let rhs = eta(&[(4, 10), (2, -2), (8, -4)])?
                    .sub(&eta(&[(2, 2), (8, 4), (4, -2)])?.scalar_mul(4)?.shift_up(1))?;
                Ok((lhs, rhs))
            }
            IdentityId::InvFourthPowerDissect => {
                let lhs = eta(&[(1, -4)])?;
                let rhs = eta(&[(4, 14), (2, -14), (8, -4)])?
                    .add(&eta(&[(4, 2), (8, 4), (2, -10)])?.scalar_mul(4)?.shift_up(1))?;
                Ok((lhs, rhs))
            }
            IdentityId::F1F2Dissect => {
                let lhs = eta(&[(1, 1), (2, 1)])?;
                let rhs = eta(&[(6, 1), (9, 4), (3, -1), (18, -2)])?
                    .sub(&eta(&[(9, 1), (18, 1)])?.shift_up(1))?
                    .sub(
                        &eta(&[(3, 1), (18, 4), (6, -1), (9, -2)])?
                            .scalar_mul(2)?
                            .shift_up(2),
                    )?;
                Ok((lhs, rhs))
            }
            IdentityId::CubeDissect => {
                let lhs = eta(&[(1, 3)])?;
                let rhs = eta(&[(6, 1), (9, 6), (3, -1), (18, -3)])?
                    .sub(&eta(&[(9, 3)])?.scalar_mul(3)?.shift_up(1))?
                    .add(
                        &eta(&[(3, 2), (18, 6), (6, -2), (9, -3)])?
                            .scalar_mul(4)?
                            .shift_up(3),
                    )?;
                Ok((lhs, rhs))
            }
            IdentityId::PbarOPhiProduct => {
                let lhs = eta(&[(2, 3), (1, -2), (4, -1)])?;
                let rhs = pbar_o_phi_product(order, ring)?;
                Ok((lhs, rhs))
            }
            IdentityId::EulerPowerCongruence { k, p, l } => {
                let lhs = euler_f(k, order, ring)?.pow(p.pow(l))?;
                let rhs = euler_f(p * k, order, ring)?.pow(p.pow(l - 1))?;
                Ok((lhs, rhs))
            }
        }
    }
}

/// First index where the two series disagree, with the difference of the
/// coefficients there (residue difference over Z/m, saturated i128 exactly).
fn first_diff(a: &Series, b: &Series, upto: usize) -> Option<(usize, i128)> {
    for n in 0..upto {
        let d = match (a.ring(), b.ring()) {
            (CoeffRing::Exact, CoeffRing::Exact) => {
                let (x, y) = (a.coeff_exact(n).unwrap(), b.coeff_exact(n).unwrap());
                match x.checked_sub(y) {
                    Some(d) => to_i128_saturating(d),
                    None => i128::MAX,
                }
            }
            (CoeffRing::Mod(m), CoeffRing::Mod(_)) => {
                let (x, y) = (a.coeff_u64(n).unwrap(), b.coeff_u64(n).unwrap());
                if x >= y {
                    (x - y) as i128
                } else {
                    (x + (m - y)) as i128
                }
            }
            _ => unreachable!("sides are built over the same ring"),
        };
        if d != 0 {
            return Some((n, d));
        }
    }
    None
}

/// Moduli used when an exact identity check overflows: both are primes just
/// below 2^61 and 2^63, large enough that a coefficient-by-coefficient match
/// over each is overwhelming evidence for the exact identity.
const FALLBACK_MODULI: [u64; 2] = [(1 << 61) - 1, (1 << 63) - 25];

/// Checks one identity at `order` and reports the outcome.
///
/// Congruence identities run directly over their own modulus. Exact
/// identities run over the exact ring; if that overflows, the check reruns
/// over [`FALLBACK_MODULI`] and a pass is labeled as modular.
pub fn verify_identity(id: IdentityId, order: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        label: id.label(),
        family: "identity".into(),
        params: id.params(),
        step: 0,
        offset: 0,
        modulus: 0,
        terms_checked: order as u64,
        status: Status::Pass,
        counterexample: None,
        elapsed_ms: 0,
    };
    if let IdentityId::EulerPowerCongruence { p, l, .. } = id {
        let m = p.pow(l);
        report.modulus = m;
        let (lhs, rhs) = id.sides(order, CoeffRing::Mod(m))?;
        if let Some((n, value)) = first_diff(&lhs, &rhs, order) {
            report.status = Status::Fail;
            report.counterexample = Some(Counterexample {
                n: n as u64,
                index: n as u64,
                value,
            });
        }
        return Ok(report);
    }
    match id.sides(order, CoeffRing::Exact) {
        Ok((lhs, rhs)) => {
            if let Some((n, value)) = first_diff(&lhs, &rhs, order) {
                report.status = Status::Fail;
                report.counterexample = Some(Counterexample {
                    n: n as u64,
                    index: n as u64,
                    value,
                });
            }
            Ok(report)
        }
        Err(SeriesError::Overflow) => {
            report.label.push_str(" (modular)");
            report.params.insert("modular_fallback".into(), 1);
            for m in FALLBACK_MODULI {
                let (lhs, rhs) = id.sides(order, CoeffRing::Mod(m))?;
                if let Some((n, value)) = first_diff(&lhs, &rhs, order) {
                    report.status = Status::Fail;
                    report.counterexample = Some(Counterexample {
                        n: n as u64,
                        index: n as u64,
                        value,
                    });
                    break;
                }
            }
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

/// The exact identity portion of the verification catalog: the seven
/// two- and three-dissections plus the phi product identity.
pub fn identity_catalog() -> Vec<IdentityId> {
    let mut ids = vec![
        IdentityId::PhiFourDissect,
        IdentityId::SquareDissect,
        IdentityId::InvSquareDissect,
        IdentityId::FourthPowerDissect,
        IdentityId::InvFourthPowerDissect,
        IdentityId::F1F2Dissect,
        IdentityId::CubeDissect,
        IdentityId::PbarOPhiProduct,
    ];
    for k in [1u64, 2] {
        for (p, l) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
            ids.push(IdentityId::EulerPowerCongruence { k, p, l });
        }
    }
    ids
}

fn require_prime(p: u64, floor: u64) -> Result<()> {
    let is_prime = p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
    if !is_prime || p < floor {
        return Err(SeriesError::Invalid(format!(
            "need a prime >= {floor}, got {p}"
        )));
    }
    Ok(())
}

/// Verifies the p-dissection of f_1 for a prime p > 3.
///
/// f_1 splits into p pieces indexed by the exponent residue mod p: one piece
/// is a unary theta function for each k in [-(p-1)/2, (p-1)/2] other than
/// k* = (p-1)/6 or -(p+1)/6 (whichever is an integer), and the k* slot is
/// (-1)^(k*) q^((p^2-1)/24) f_(p^2). The report also covers the side
/// condition that makes the split a genuine p-dissection: the exponents
/// (3k^2+k)/2 for k != k* avoid the residue class of (p^2-1)/24 mod p.
pub fn pdissect_f1_check(p: u64, order: usize) -> Result<VerificationReport> {
    require_prime(p, 5)?;
    let ring = CoeffRing::Exact;
    let ip = p as i64;
    let k_star = if p % 6 == 1 {
        (ip - 1) / 6
    } else {
        -(ip + 1) / 6
    };
    let half = (ip - 1) / 2;

    // (3k^2+k)/2 = (p^2-1)/24 mod p must pin down k = k* and nothing else;
    // equivalently (6k+1)^2 = 0 mod p exactly once in the window.
    let target = ((ip * ip - 1) / 24) % ip;
    let mut side_ok = true;
    let mut roots = 0;
    for k in -half..=half {
        let e = ((3 * k * k + k) / 2).rem_euclid(ip);
        if k != k_star && e == target {
            side_ok = false;
        }
        if (6 * k + 1).pow(2).rem_euclid(ip) == 0 {
            roots += 1;
        }
    }
    side_ok &= roots == 1 && (6 * k_star + 1).pow(2).rem_euclid(ip) == 0;

    let lhs = euler_f(1, order, ring)?;
    let sign_star = if k_star.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut rhs = euler_f(p * p, order, ring)?
        .scalar_mul(sign_star)?
        .shift_up(((p * p - 1) / 24) as usize);
    for k in -half..=half {
        if k == k_star {
            continue;
        }
        let shift = ((3 * k * k + k) / 2) as usize;
        if shift >= order {
            continue;
        }
        let a = (3 * ip * ip + (6 * k + 1) * ip) / 2;
        let b = (3 * ip * ip - (6 * k + 1) * ip) / 2;
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let piece = theta_f(ThetaSpec::new(-1, a, -1, b)?, order, ring)?;
        rhs = rhs.add(&piece.scalar_mul(sign)?.shift_up(shift))?;
    }

    let mut report = VerificationReport {
        label: format!("f1_p_dissection_p{p}"),
        family: "identity".into(),
        params: params_from(&[("p", ip), ("side_ok", side_ok as i64)]),
        step: 0,
        offset: 0,
        modulus: 0,
        terms_checked: order as u64,
        status: if side_ok { Status::Pass } else { Status::Fail },
        counterexample: None,
        elapsed_ms: 0,
    };
    if let Some((n, value)) = first_diff(&lhs, &rhs, order) {
        report.status = Status::Fail;
        report.counterexample = Some(Counterexample {
            n: n as u64,
            index: n as u64,
            value,
        });
    }
    Ok(report)
}

/// Verifies the p-dissection of f_1^3 for an odd prime p.
///
/// The pieces for k in [0, p-1], k != (p-1)/2, carry coefficients
/// (-1)^(n+k) (2pn+2k+1) at exponent k(k+1)/2 + p n (pn+2k+1)/2, and the
/// remaining slot is p (-1)^((p-1)/2) q^((p^2-1)/8) f_(p^2)^3. The side
/// condition mirrors the f_1 case with (k^2+k)/2 against (p^2-1)/8.
pub fn pdissect_f1cubed_check(p: u64, order: usize) -> Result<VerificationReport> {
    require_prime(p, 3)?;
    let ring = CoeffRing::Exact;
    let ip = p as i64;
    let skip = (p - 1) / 2;

    let target = ((ip * ip - 1) / 8) % ip;
    let mut side_ok = true;
    let mut roots = 0;
    for k in 0..ip {
        let e = ((k * k + k) / 2).rem_euclid(ip);
        if k != skip as i64 && e == target {
            side_ok = false;
        }
        if (2 * k + 1).pow(2).rem_euclid(ip) == 0 {
            roots += 1;
        }
    }
    side_ok &= roots == 1;

    let lhs = euler_f(1, order, ring)?.pow(3)?;
    let sign_skip = if skip.is_multiple_of(2) { 1 } else { -1 };
    let mut rhs = euler_f(p * p, order, ring)?
        .pow(3)?
        .scalar_mul(sign_skip * ip)?
        .shift_up(((p * p - 1) / 8) as usize);
    for k in 0..p {
        if k == skip {
            continue;
        }
        let base = ((k * k + k) / 2) as usize;
        let mut piece = Series::zero(ring, order)?;
        let mut n = 0u64;
        loop {
            let e = base as u64 + p * n * (p * n + 2 * k + 1) / 2;
            let Ok(e) = usize::try_from(e) else { break };
            if e >= order {
                break;
            }
            let c = (2 * p * n + 2 * k + 1) as i64;
            piece.add_to_coeff(e, if n.is_multiple_of(2) { c } else { -c })?;
            n += 1;
        }
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        rhs = rhs.add(&piece.scalar_mul(sign)?)?;
    }

    let mut report = VerificationReport {
        label: format!("f1_cubed_p_dissection_p{p}"),
        family: "identity".into(),
        params: params_from(&[("p", ip), ("side_ok", side_ok as i64)]),
        step: 0,
        offset: 0,
        modulus: 0,
        terms_checked: order as u64,
        status: if side_ok { Status::Pass } else { Status::Fail },
        counterexample: None,
        elapsed_ms: 0,
    };
    if let Some((n, value)) = first_diff(&lhs, &rhs, order) {
        report.status = Status::Fail;
        report.counterexample = Some(Counterexample {
            n: n as u64,
            index: n as u64,
            value,
        });
    }
    Ok(report)
}

/// Checks that binomial(2^m, n) 2^n is divisible by 2^(m+1) for every
/// n in [1, 2^m], returning the first failing n if any.
///
/// The binomials are carried exactly as big integers and updated
/// incrementally, so the full walk is linear in 2^m big-integer steps;
/// m = 20 takes on the order of a minute, m <= 10 is instant.
pub fn binom_2power_check(m: u32) -> Option<u64> {
    assert!((1..=20).contains(&m), "supported range is 1 <= m <= 20");
    let big_n = 1u64 << m;
    let modulus = 1u64 << (m + 1);
    let mut binom = BigUint::one();
    for n in 1..=big_n {
        binom = binom * BigUint::from(big_n - n + 1) / BigUint::from(n);
        let b = (&binom % BigUint::from(modulus))
            .iter_u64_digits()
            .next()
            .unwrap_or(0);
        let two_n = if n >= (m + 1) as u64 { 0 } else { 1u64 << n };
        if b.checked_mul(two_n).is_none_or(|x| x % modulus != 0) {
            // b * two_n stays under 2^42 for m <= 20, so the multiply can
            // only return None if the assert above is bypassed.
            return Some(n);
        }
    }
    None
}
