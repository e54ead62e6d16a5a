//! Exact integer checks of point-count inequalities for hypersurfaces.

use num_bigint::BigInt;
use serde::Serialize;

/// Smallest integer `c` with `c^3 ≥ n^13`, i.e. `⌈n^{13/3}⌉`.
pub fn ceil_n_13_thirds(n: u64) -> BigInt {
    let target = BigInt::from(n).pow(13);
    let mut c = target.cbrt();
    while &c * &c * &c < target {
        c += 1;
    }
    c
}

/// Outcome of `|N - q^{d-1}| ≤ (n-1)(n-2) q^{d-3/2} + 5 ⌈n^{13/3}⌉ q^{d-2}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CafureMatera {
    pub deviation: String,
    /// Right-hand side, rounded for display only; `holds` is exact.
    pub bound_approx: f64,
    pub holds: bool,
    /// `⌈n^{13/3}⌉` stands in for `n^{13/3}`, which loosens the bound slightly.
    pub ceiling_used: bool,
}

/// Evaluated by squaring after clearing the half-integer power of `q`, so no
/// floating point enters the verdict.
pub fn cafure_matera(n_zeros: u64, q: u64, d: usize, n: u64) -> CafureMatera {
    let qb = BigInt::from(q);
    let main = qb.pow(d as u32 - 1);
    let dev = (BigInt::from(n_zeros) - &main).magnitude().clone();
    let dev = BigInt::from(dev);
    let c = ceil_n_13_thirds(n);
    let a = BigInt::from(n.saturating_sub(1) * n.saturating_sub(2));
    // dev·q^2 ≤ a q^{d+1/2} + 5c q^d
    let x = &dev * qb.pow(2) - BigInt::from(5) * &c * qb.pow(d as u32);
    let holds = x <= BigInt::from(0) || &x * &x <= &a * &a * qb.pow(2 * d as u32 + 1);
    let cf: f64 = c.to_string().parse().unwrap_or(f64::INFINITY);
    let qf = q as f64;
    let bound_approx = (a.to_string().parse::<f64>().unwrap()) * qf.powf(d as f64 - 1.5) + 5.0 * cf * qf.powf(d as f64 - 2.0);
    CafureMatera {
        deviation: dev.to_string(),
        bound_approx,
        holds,
        ceiling_used: c.pow(3) != BigInt::from(n).pow(13),
    }
}

/// `q^{d-1} ≤ 4N ≤ 7q^{d-1}`.
pub fn lang_weil_window(n_zeros: u64, q: u64, d: usize) -> bool {
    let main = (q as u128).pow(d as u32 - 1);
    let four_n = 4 * n_zeros as u128;
    main <= four_n && four_n <= 7 * main
}

/// At most `n(q^{d-1} - 1)` nontrivial zeros for a nonzero form of degree `n`.
pub fn ore_holds(nontrivial_zeros: u64, q: u64, d: usize, n: u64) -> bool {
    (nontrivial_zeros as u128) <= n as u128 * ((q as u128).pow(d as u32 - 1) - 1)
}

/// `q^d - k q^{d-1} + k - 1`.
pub fn rank_lower_bound(q: u64, d: usize, k: u64) -> i128 {
    let qd = (q as i128).pow(d as u32);
    let qd1 = (q as i128).pow(d as u32 - 1);
    qd - k as i128 * qd1 + k as i128 - 1
}

/// `q^d - n q^{d-1} + (n-1) q^{d-2}`, valid for `n ≤ q + 1` and `d ≥ 2`.
pub fn serre_rank_bound(q: u64, d: usize, n: u64) -> Option<i128> {
    if n > q + 1 || d < 2 {
        return None;
    }
    let p = |e: usize| (q as i128).pow(e as u32);
    Some(p(d) - n as i128 * p(d - 1) + (n as i128 - 1) * p(d - 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceiling_root() {
        assert_eq!(ceil_n_13_thirds(1), BigInt::from(1));
        // 2^{13/3} ≈ 20.16
        assert_eq!(ceil_n_13_thirds(2), BigInt::from(21));
        assert_eq!(ceil_n_13_thirds(8), BigInt::from(8192));
    }

    #[test]
    fn full_quadric_counts() {
        for q in [3u64, 5, 7, 11, 67] {
            let n = q * q * q + q * q - q;
            assert!(cafure_matera(n, q, 4, 2).holds);
        }
        assert!(!cafure_matera(0, 1000, 4, 2).holds);
        assert!(lang_weil_window(385, 7, 4));
        assert_eq!(rank_lower_bound(2, 3, 3), -2);
    }
}
