//! Randomized property suites over exact arithmetic: every instance is
//! checked with zero tolerance, never approximately.

use fano_core::exact::{rat, Rat};
use fano_core::lattice::{det_bareiss, int_identity, rank_signature, snf, IMat};
use fano_core::poly::{groebner, reduce, s_poly, Exp, MPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn to_imat(rows: &[Vec<i64>]) -> IMat {
    rows.iter()
        .map(|r| r.iter().map(|&v| big(v)).collect())
        .collect()
}

fn mat_mul_int(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

fn transpose_int(a: &IMat) -> IMat {
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, cols), rows)
}

/// Symmetric integer matrix given by its lower triangle.
fn symmetric_matrix(n: usize) -> impl Strategy<Value = IMat> {
    prop::collection::vec(-6i64..=6, n * (n + 1) / 2).prop_map(move |vals| {
        let mut g: IMat = vec![vec![BigInt::zero(); n]; n];
        let mut it = vals.into_iter();
        for i in 0..n {
            for j in 0..=i {
                let v = big(it.next().unwrap());
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        g
    })
}

/// Unimodular matrix built from column shears, so its determinant is 1.
fn unimodular_matrix(n: usize) -> impl Strategy<Value = IMat> {
    prop::collection::vec((0..n, 0..n, -3i64..=3), 6).prop_map(move |shears| {
        let mut t = int_identity(n);
        for (i, j, c) in shears {
            if i == j {
                continue;
            }
            let c = big(c);
            for r in 0..n {
                let add = &t[r][j] * &c;
                t[r][i] += add;
            }
        }
        t
    })
}

fn sparse_poly(nvars: usize, max_exp: u16, terms: usize) -> impl Strategy<Value = MPoly<Rat>> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_exp, nvars),
            -5i64..=5,
        ),
        1..=terms,
    )
    .prop_map(move |spec| {
        let mut q = MPoly::zero();
        for (exps, c) in spec {
            let mut e = [0u16; 5];
            e[..nvars].copy_from_slice(&exps);
            q.add_term(Exp(e), rat(c));
        }
        q
    })
}

/// Homogeneous polynomial of fixed degree in the first four variables
/// plus a balancing exponent on the fifth.
fn homogeneous_poly(degree: u16) -> impl Strategy<Value = MPoly<Rat>> {
    prop::collection::vec(
        (prop::collection::vec(0..=degree, 4), -5i64..=5),
        1..=6,
    )
    .prop_map(move |spec| {
        let mut q = MPoly::zero();
        for (cuts, c) in spec {
            let mut e = [0u16; 5];
            let mut left = degree;
            for (slot, cut) in e.iter_mut().zip(cuts) {
                let take = cut.min(left);
                *slot = take;
                left -= take;
            }
            e[4] = left;
            q.add_term(Exp(e), rat(c));
        }
        q
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_transforms_verify(
        rows in 1usize..=5,
        cols in 1usize..=5,
        entries in int_matrix(5, 5),
    ) {
        let m = to_imat(
            &entries[..rows]
                .iter()
                .map(|r| r[..cols].to_vec())
                .collect::<Vec<_>>(),
        );
        let r = snf(&m);
        let d = mat_mul_int(&mat_mul_int(&r.u, &m), &r.v);
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if i == j && i < r.factors.len() {
                    r.factors[i].clone()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(v, &want);
            }
        }
        for w in r.factors.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert!(r.factors.iter().all(|f| *f >= BigInt::zero()));
        prop_assert_eq!(det_bareiss(&r.u).abs(), BigInt::one());
        prop_assert_eq!(det_bareiss(&r.v).abs(), BigInt::one());
    }

    #[test]
    fn signature_invariant_under_unimodular_congruence(
        g in symmetric_matrix(4),
        t in unimodular_matrix(4),
    ) {
        let tgt = mat_mul_int(&mat_mul_int(&transpose_int(&t), &g), &t);
        prop_assert_eq!(rank_signature(&g), rank_signature(&tgt));
    }

    #[test]
    fn groebner_s_polynomials_reduce_to_zero(
        f in sparse_poly(2, 2, 3),
        g in sparse_poly(2, 2, 3),
    ) {
        let gens: Vec<MPoly<Rat>> =
            [f, g].into_iter().filter(|q| !q.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = groebner(&gens);
        for i in 0..gb.len() {
            for j in 0..i {
                let s = s_poly(&gb[i], &gb[j]);
                prop_assert!(reduce(&s, &gb).is_zero());
            }
        }
    }

    #[test]
    fn euler_identity_for_homogeneous_cubics(f in homogeneous_poly(3)) {
        prop_assume!(!f.is_zero());
        let mut acc: MPoly<Rat> = MPoly::zero();
        for (i, df) in f.partials().iter().enumerate() {
            let mut e = [0u16; 5];
            e[i] = 1;
            acc = acc.add(&df.mul(&MPoly::monomial(Exp(e), rat(1))));
        }
        prop_assert_eq!(acc, f.scale(&rat(3)));
    }
}
