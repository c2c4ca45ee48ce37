//! Property tests for the algebraic invariants: rank–nullity, kernel
//! soundness, canonical-form idempotence, the Euler identity, and the ring
//! homomorphism law of substitution.
//!
//! Rank and kernel results are checked against a deliberately naive oracle:
//! textbook Gauss–Jordan elimination over the rationals, written here with
//! none of the fraction-free machinery of the library path.

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use veronese::linalg::{ExactMatrix, Subspace};
use veronese::poly::{euler_check, monomial_basis, Polynomial};

/// Textbook Gauss–Jordan reduction: normalize each pivot to one and clear
/// its column everywhere, working entirely in `BigRational`.
fn naive_rref(mut rows: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        let Some(hit) = (pr..rows.len()).find(|&u| !rows[u][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, hit);
        let p = rows[pr][col].clone();
        for v in 0..cols {
            let scaled = &rows[pr][v] / &p;
            rows[pr][v] = scaled;
        }
        for u in 0..rows.len() {
            if u == pr || rows[u][col].is_zero() {
                continue;
            }
            let f = rows[u][col].clone();
            for v in 0..cols {
                let sub = &f * &rows[pr][v];
                rows[u][v] = &rows[u][v] - &sub;
            }
        }
        pivots.push(col);
        pr += 1;
        if pr == rows.len() {
            break;
        }
    }
    rows.truncate(pr);
    (rows, pivots)
}

fn naive_kernel(rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let (rref, pivots) = naive_rref(rows, cols);
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -rref[i][f].clone();
        }
        basis.push(v);
    }
    basis
}

fn to_rational_rows(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| r.iter().map(|&k| BigRational::from_integer(k.into())).collect())
        .collect()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows)
    })
}

proptest! {
    #[test]
    fn rank_nullity_holds(m in small_matrix()) {
        let a = ExactMatrix::from_int_rows(&m);
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.dim(), a.cols());
    }

    #[test]
    fn kernel_vectors_are_killed(m in small_matrix()) {
        let a = ExactMatrix::from_int_rows(&m);
        for v in a.kernel_basis().basis() {
            prop_assert!(a.mul_vector(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_is_canonical_and_idempotent(m in small_matrix()) {
        let a = ExactMatrix::from_int_rows(&m);
        let k = a.kernel_basis();
        let re = Subspace::from_spanning(k.basis().to_vec(), k.ambient_dim());
        prop_assert_eq!(&re, &k);
    }

    #[test]
    fn rank_and_kernel_agree_with_naive_oracle(m in small_matrix()) {
        let a = ExactMatrix::from_int_rows(&m);
        let cols = a.cols();
        let (_, naive_pivots) = naive_rref(to_rational_rows(&m), cols);
        prop_assert_eq!(a.rank(), naive_pivots.len());

        let k = a.kernel_basis();
        let naive = naive_kernel(to_rational_rows(&m), cols);
        prop_assert_eq!(k.dim(), naive.len());
        for v in &naive {
            prop_assert!(k.contains(v), "naive kernel vector outside library kernel");
        }
    }
}

fn homogeneous_poly() -> impl Strategy<Value = (Polynomial, u32)> {
    (1usize..=3, 0u32..=4).prop_flat_map(|(nv, deg)| {
        let basis = monomial_basis(nv, deg);
        let len = basis.len();
        proptest::collection::vec(-3i64..=3, len).prop_map(move |coeffs| {
            let mut f = Polynomial::zero(nv);
            for (mono, c) in basis.iter().zip(coeffs) {
                if c != 0 {
                    f = f.add(&Polynomial::from_term(
                        mono.clone(),
                        BigRational::from_integer(c.into()),
                    ));
                }
            }
            (f, deg)
        })
    })
}

fn poly_pair_with_images() -> impl Strategy<Value = (Polynomial, Polynomial, Vec<Polynomial>)> {
    (2usize..=3).prop_flat_map(|nv| {
        let f = homogeneous_poly_in(nv);
        let g = homogeneous_poly_in(nv);
        let images = proptest::collection::vec(homogeneous_poly_in(2).prop_map(|(p, _)| p), nv);
        (f, g, images).prop_map(|((f, _), (g, _), images)| (f, g, images))
    })
}

fn homogeneous_poly_in(nv: usize) -> impl Strategy<Value = (Polynomial, u32)> {
    (0u32..=3).prop_flat_map(move |deg| {
        let basis = monomial_basis(nv, deg);
        let len = basis.len();
        proptest::collection::vec(-3i64..=3, len).prop_map(move |coeffs| {
            let mut f = Polynomial::zero(nv);
            for (mono, c) in basis.iter().zip(coeffs) {
                if c != 0 {
                    f = f.add(&Polynomial::from_term(
                        mono.clone(),
                        BigRational::from_integer(c.into()),
                    ));
                }
            }
            (f, deg)
        })
    })
}

proptest! {
    #[test]
    fn euler_identity_holds((f, deg) in homogeneous_poly()) {
        prop_assert!(euler_check(&f, deg));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism((f, g, images) in poly_pair_with_images()) {
        let lhs = f.mul(&g).substitute(&images);
        let rhs = f.substitute(&images).mul(&g.substitute(&images));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_basis_count_matches_binomial(nv in 1usize..=4, deg in 0u32..=6) {
        let expected = veronese::formulas::binom(
            i64::from(deg) + nv as i64 - 1,
            nv as i64 - 1,
        );
        prop_assert_eq!(
            num_bigint::BigInt::from(monomial_basis(nv, deg).len()),
            expected
        );
    }
}
