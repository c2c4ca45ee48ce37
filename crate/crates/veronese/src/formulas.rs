//! Closed-form dimension counts for the Veronese cone computations, as pure
//! big-integer arithmetic.
//!
//! Parameters follow one convention throughout: `r ≥ 1` is the dimension of
//! the projective space being embedded, `d ≥ 1` the degree of the embedding,
//! `m ≥ 0` a twist. The embedding target is projective space of dimension
//! `C(r+d,d) - 1`.
//!
//! All functions return signed big integers; [`toshow_lhs`] is the left-hand
//! side of an inequality and may legitimately be negative.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)`, zero when `k < 0`, `n < 0`, or `k > n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut res = BigInt::one();
    for i in 0..k {
        res = res * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    res
}

fn check_rd(r: u32, d: u32) {
    assert!(r >= 1, "require r >= 1");
    assert!(d >= 1, "require d >= 1");
}

/// Number of degree-`m` forms on the ambient projective space vanishing on
/// the Veronese variety: `C(C(d+r,r)+m-1, m) - C(md+r, r)`.
pub fn h0_ideal(r: u32, d: u32, m: u32) -> BigInt {
    check_rd(r, d);
    let (r, d, m) = (i64::from(r), i64::from(d), i64::from(m));
    let big_n = binom(d + r, r);
    let sym: i64 = i64::try_from(&big_n + m - 1).expect("symmetric power index overflows");
    binom(sym, m) - binom(m * d + r, r)
}

/// Lower bound for the dimension of twisted conormal sections coming from
/// the normal bundle sequence:
/// `C(d+r,r)·C((m-1)d+r,r) - C(md+r,r) - (dm-1)·C(r+dm-1, md)`.
pub fn conormal_lower_bound(r: u32, d: u32, m: u32) -> BigInt {
    check_rd(r, d);
    assert!(m >= 1, "require m >= 1");
    let (r, d, m) = (i64::from(r), i64::from(d), i64::from(m));
    binom(d + r, r) * binom((m - 1) * d + r, r)
        - binom(m * d + r, r)
        - (d * m - 1) * binom(r + d * m - 1, m * d)
}

/// Dimension of the space of global twisted 1-forms on projective `r`-space
/// with twist `k ≥ 1`: `(k-1)·C(r+k-1, k)`.
///
/// The twist `k = 0` is rejected rather than clamped: the formula is only
/// used for the twists the section computations need (`k ≥ 1`), and a silent
/// extension would encode a claim nothing here verifies.
pub fn bott_h0_omega(r: u32, k: u32) -> BigInt {
    assert!(r >= 1, "require r >= 1");
    assert!(k >= 1, "bott_h0_omega: twist k = 0 rejected");
    let (r, k) = (i64::from(r), i64::from(k));
    (BigInt::from(k) - 1) * binom(r + k - 1, k)
}

/// Left-hand side of the positivity inequality that forces torsion for
/// `d ≥ 3`: `C(d+r,r)^2 - C(d+r,r) - 2(2d-1)·C(r+2d-1, 2d)`.
pub fn toshow_lhs(r: u32, d: u32) -> BigInt {
    check_rd(r, d);
    let (r, d) = (i64::from(r), i64::from(d));
    let n = binom(d + r, r);
    &n * &n - &n - 2 * (2 * d - 1) * binom(r + 2 * d - 1, 2 * d)
}

/// Number of generators of the invariant differentials in excess of the
/// embedding dimension: `(r+1)·C(d+r-1, d-1) - C(d+r, d)`.
///
/// The same number has the product form `r(d-1)/(d+r)·C(d+r,d)`; the two are
/// asserted equal on every call.
pub fn cotorsion_excess(r: u32, d: u32) -> BigInt {
    check_rd(r, d);
    let (r, d) = (i64::from(r), i64::from(d));
    let excess = (r + 1) * binom(d + r - 1, d - 1) - binom(d + r, d);
    let product = BigInt::from(r) * (d - 1) * binom(d + r, d);
    let (q, rem) = num_integer::Integer::div_rem(&product, &BigInt::from(d + r));
    assert!(rem.is_zero(), "cotorsion product form not divisible by d+r");
    assert_eq!(excess, q, "cotorsion closed forms disagree");
    excess
}

/// Embedding dimension of the Veronese cone: `C(r+d, d)`.
pub fn embedding_dim(r: u32, d: u32) -> BigInt {
    check_rd(r, d);
    binom(i64::from(r) + i64::from(d), i64::from(d))
}
