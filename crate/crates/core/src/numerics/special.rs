use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 2.0 {
        j0_series(x)
    } else if x <= 25.0 {
        j0_miller(x)
    } else {
        j0_hankel(x)
    }
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k * k) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && k > 2 {
            break;
        }
    }
    sum
}

// Backward recurrence normalised by J0 + 2 Σ J_{2k} = 1.
fn j0_miller(x: f64) -> f64 {
    let start = 2 * ((x as usize + 40) / 2);
    let mut next = 0.0;
    let mut cur = 1e-30;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * cur - next;
        next = cur;
        cur = prev;
        // cur now holds J_{k-1}
        if (k - 1) % 2 == 0 && k > 1 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
    }
    cur / (norm + cur)
}

fn j0_hankel(x: f64) -> f64 {
    let (p, q) = hankel_pq(x);
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

// Asymptotic P and Q for order zero; summed until the terms stop shrinking.
fn hankel_pq(x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..200usize {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * a;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        if k % 2 == 0 {
            p += term;
        } else {
            q += term;
        }
        if term.abs() < 1e-17 {
            break;
        }
        let odd = (2 * k + 1) as f64;
        a *= -(odd * odd) / (8.0 * (k + 1) as f64 * x);
    }
    (p, q)
}

/// Modified Bessel function of the first kind, order zero.
///
/// Fails for `|x| > 700`, where the value exceeds the f64 range.
pub fn bessel_i0(x: f64) -> Result<f64> {
    let x = x.abs();
    if !x.is_finite() {
        return Err(Error::NonFinite(format!("bessel_i0 argument {x}")));
    }
    if x > 700.0 {
        return Err(Error::Overflow(format!("bessel_i0({x}) exceeds f64 range")));
    }
    if x <= 30.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..400 {
            term *= q / (k * k) as f64;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        return Ok(sum);
    }
    let mut a = 1.0;
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    for k in 0..200usize {
        if a > last {
            break;
        }
        sum += a;
        last = a;
        if a < 1e-17 * sum {
            break;
        }
        let odd = (2 * k + 1) as f64;
        a *= odd * odd / (8.0 * (k + 1) as f64 * x);
    }
    Ok(x.exp() / (2.0 * PI * x).sqrt() * sum)
}

/// The first `count` positive zeros of `J0`, located by bisection from McMahon estimates.
pub fn bessel_j0_zeros(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|m| {
            let beta = (m as f64 - 0.25) * PI;
            bisect(bessel_j0, beta, beta + 0.25)
        })
        .collect()
}

/// Bisection for a bracketed sign change; returns the midpoint at machine resolution.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Binomial coefficient as a float.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    if acc < 9.0e15 {
        acc.round()
    } else {
        acc
    }
}

pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Horner evaluation of `Σ q_n t^n`.
pub fn eval_poly(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &q| acc * t + q)
}
