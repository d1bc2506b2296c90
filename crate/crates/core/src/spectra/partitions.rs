//! Integer coefficient generators: partitions, powers of the Euler product,
//! and the Ising character products.

use crate::error::{Error, Result};

/// Generalized pentagonal numbers with the sign of their term in
/// `Π(1 − qⁿ) = Σ (−1)^k q^{k(3k−1)/2}`, ascending, up to `limit`.
pub fn pentagonal_terms(limit: usize) -> Vec<(usize, i128)> {
    let mut out = vec![(0usize, 1i128)];
    let mut k = 1usize;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        if g1 > limit {
            break;
        }
        let sign = if k % 2 == 1 { -1 } else { 1 };
        out.push((g1, sign));
        let g2 = k * (3 * k + 1) / 2;
        if g2 <= limit {
            out.push((g2, sign));
        }
        k += 1;
    }
    out.sort_by_key(|t| t.0);
    out
}

/// Exact partition numbers P(0..=n) by the pentagonal-number recurrence.
/// Fails with the first `n` whose value does not fit in `u128`.
pub fn partition_coeffs(n: usize) -> Result<Vec<u128>> {
    let mut p: Vec<u128> = Vec::with_capacity(n + 1);
    p.push(1);
    for m in 1..=n {
        let mut acc: i128 = 0;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let positive = k % 2 == 1;
            for g in [g1, k * (3 * k + 1) / 2] {
                if g > m {
                    continue;
                }
                let v = i128::try_from(p[m - g]).map_err(|_| Error::Overflow { n: m })?;
                acc = if positive { acc.checked_add(v) } else { acc.checked_sub(v) }
                    .ok_or(Error::Overflow { n: m })?;
            }
            k += 1;
        }
        p.push(u128::try_from(acc).map_err(|_| Error::Overflow { n: m })?);
    }
    Ok(p)
}

/// P(0..=n) in binary64 from Euler's product `Π 1/(1 − qᵏ)`.
///
/// Only positive quantities are added, so each value carries a relative
/// error of order `n·ε`, unlike the alternating recurrence whose
/// cancellation destroys all digits beyond n ≈ 1000.
pub fn partition_f64(n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n + 1];
    c[0] = 1.0;
    for k in 1..=n {
        for j in k..=n {
            c[j] += c[j - k];
        }
    }
    c
}

/// Coefficients of `Π(1 − qⁿ)^r` up to `q^n` (exact).
pub fn euler_product_power(r: u32, n: usize) -> Result<Vec<i128>> {
    let pent = pentagonal_terms(n);
    let mut c = vec![0i128; n + 1];
    c[0] = 1;
    for _ in 0..r {
        let mut next = vec![0i128; n + 1];
        for (j, cj) in c.iter().enumerate() {
            if *cj == 0 {
                continue;
            }
            for &(g, sign) in &pent {
                if j + g > n {
                    break;
                }
                let t = cj.checked_mul(sign).ok_or(Error::Overflow { n: j + g })?;
                next[j + g] = next[j + g].checked_add(t).ok_or(Error::Overflow { n: j + g })?;
            }
        }
        c = next;
    }
    Ok(c)
}

/// Coefficients of η²⁴ = q Π(1 − qⁿ)²⁴, indexed by the power of q
/// (`v[0] = 0`, `v[1] = 1`, `v[2] = −24`, ...), up to `q^n`.
pub fn eta24_coeffs(n: usize) -> Result<Vec<i128>> {
    if n < 1 {
        return Err(Error::InvalidArgument("eta24_coeffs needs N >= 1".into()));
    }
    let base = euler_product_power(24, n - 1)?;
    let mut v = vec![0i128; n + 1];
    v[1..].copy_from_slice(&base);
    Ok(v)
}

/// Coefficients of `Π_{n≥1}(1 + x^{2n−1})` up to `x^n`.
pub fn odd_distinct_product(n: usize) -> Vec<u128> {
    let mut c = vec![0u128; n + 1];
    c[0] = 1;
    let mut part = 1;
    while part <= n {
        for j in (part..=n).rev() {
            c[j] += c[j - part];
        }
        part += 2;
    }
    c
}

/// Coefficients of `Π_{n≥1}(1 + qⁿ)` (partitions into distinct parts).
pub fn distinct_parts(n: usize) -> Vec<u128> {
    let mut c = vec![0u128; n + 1];
    c[0] = 1;
    for part in 1..=n {
        for j in (part..=n).rev() {
            c[j] += c[j - part];
        }
    }
    c
}
