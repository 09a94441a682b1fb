//! Randomized properties of standard forms, kernels, weights and cyclotomic sets.

use std::collections::HashSet;
use std::sync::Arc;

use chaincodes::cyclotomic::{CycContext, CycPartition, CycSet};
use chaincodes::linalg::{self, standard_form, RMatrix};
use chaincodes::ring::{Family, RingSpec};
use proptest::prelude::*;

fn ring(p: u64, n: u32, s: u32, family: Family) -> Arc<RingSpec> {
    RingSpec::new(p, n, s, 1, family).unwrap()
}

/// Ring choices: Z_4, Z_8, Z_9, GR(4,2), F_2[x]/(x^2+x+1)[u]/(u^2).
fn rings() -> Vec<Arc<RingSpec>> {
    vec![
        ring(2, 1, 2, Family::GaloisRing),
        ring(2, 1, 3, Family::GaloisRing),
        ring(3, 1, 2, Family::GaloisRing),
        ring(2, 2, 2, Family::GaloisRing),
        ring(2, 2, 2, Family::EqualCharacteristic),
    ]
}

fn matrix_strategy() -> impl Strategy<Value = RMatrix> {
    (0..5usize, 1..4usize, 2..7usize).prop_flat_map(|(ri, rows, cols)| {
        let r = rings()[ri].clone();
        let size = r.size();
        prop::collection::vec(prop::collection::vec(0..size, cols), rows).prop_map(move |idx| {
            let data = idx.iter().map(|row| row.iter().map(|&i| r.from_index(i)).collect()).collect();
            RMatrix::new(&r, cols, data).unwrap()
        })
    })
}

fn z4_matrix(max_cols: usize) -> impl Strategy<Value = RMatrix> {
    (1..4usize, 2..=max_cols).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(prop::collection::vec(0i64..4, cols), rows)
            .prop_map(|data| RMatrix::from_ints(&ring(2, 1, 2, Family::GaloisRing), &data).unwrap())
    })
}

/// Applies a random unimodular row transformation: adds multiples of rows,
/// scales by units and shuffles.
fn mix_rows(g: &RMatrix, seed: &[u64]) -> RMatrix {
    let r = g.ring().clone();
    let mut rows: Vec<_> = g.rows().to_vec();
    let n = rows.len();
    for (k, &x) in seed.iter().enumerate() {
        let (i, j) = (k % n, (x as usize) % n);
        let c = r.from_index(x % r.size());
        if i != j {
            let add: Vec<_> = rows[j].iter().map(|e| r.mul(&c, e)).collect();
            rows[i] = rows[i].iter().zip(&add).map(|(a, b)| r.add(a, b)).collect();
        } else if r.is_unit(&c) {
            rows[i] = rows[i].iter().map(|e| r.mul(&c, e)).collect();
        }
        rows.swap(i, (x as usize / 7) % n);
    }
    RMatrix::new(&r, g.ncols(), rows).unwrap()
}

fn words(g: &RMatrix) -> HashSet<Vec<u32>> {
    linalg::enumerate_span(g, 1 << 20).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn type_is_invariant_under_row_operations(g in matrix_strategy(), seed in prop::collection::vec(any::<u64>(), 0..8)) {
        let h = mix_rows(&g, &seed);
        prop_assert_eq!(standard_form(&g).type_vector, standard_form(&h).type_vector);
    }

    #[test]
    fn standard_form_preserves_the_span(g in matrix_strategy()) {
        let sf = standard_form(&g);
        for row in g.rows() {
            prop_assert!(sf.contains(row));
        }
        let back = standard_form(&sf.matrix);
        prop_assert!(back.contains_all(&g));
        prop_assert!(sf.contains_all(&sf.matrix));
        prop_assert_eq!(words(&g), words(&sf.matrix));
    }

    #[test]
    fn standard_form_shape(g in matrix_strategy()) {
        let sf = standard_form(&g);
        let r = g.ring();
        let p = sf.permuted();
        for (i, &(col, t)) in sf.pivots.iter().enumerate() {
            prop_assert_eq!(sf.matrix.get(i, col), &r.theta_pow(t));
            prop_assert_eq!(p.get(i, i), &r.theta_pow(t));
            for k in i + 1..sf.rank() {
                prop_assert!(r.is_zero(p.get(k, i)));
            }
        }
        let mut cols = sf.permutation.clone();
        cols.sort_unstable();
        prop_assert_eq!(cols, (0..g.ncols()).collect::<Vec<_>>());
    }

    #[test]
    fn cardinality_matches_enumeration(g in matrix_strategy()) {
        let sf = standard_form(&g);
        prop_assert_eq!(num_bigint::BigUint::from(words(&g).len()), sf.cardinality());
        let r = g.ring();
        prop_assert_eq!(sf.cardinality(), linalg::cardinality(&sf.type_vector, r.q(), r.s()));
    }

    #[test]
    fn weight_by_annihilator_matches_full_enumeration(g in matrix_strategy()) {
        let w = linalg::min_weight(&g, 1 << 20).unwrap();
        let full = linalg::min_weight_full(&g, 1 << 20).unwrap();
        prop_assert_eq!(w, full);
        let r = g.ring();
        let direct = words(&g)
            .iter()
            .filter(|v| v.iter().any(|&c| c != 0))
            .map(|v| v.chunks(r.len()).filter(|e| e.iter().any(|&c| c != 0)).count())
            .min()
            .unwrap_or(0);
        prop_assert_eq!(w, direct);
    }

    #[test]
    fn kernel_duality_oracle(a in z4_matrix(7), b_seed in prop::collection::vec(0i64..4, 7 * 3)) {
        let r = a.ring().clone();
        let cols = a.ncols();
        let b_rows: Vec<Vec<i64>> = b_seed.chunks(7).map(|c| c[..cols].to_vec()).collect();
        let b = RMatrix::from_ints(&r, &b_rows).unwrap();
        let ka = linalg::kernel(&a);
        let sa = standard_form(&a);
        prop_assert_eq!(standard_form(&ka).type_vector, linalg::dual_type(&sa.type_vector, cols).unwrap());
        for x in ka.rows() {
            for y in a.rows() {
                prop_assert!(r.is_zero(&RMatrix::dot(&r, x, y)));
            }
        }
        prop_assert_eq!(words(&linalg::kernel(&ka)), words(&a));
        let kb = linalg::kernel(&b);
        let sum = linalg::module_sum(&a, &b).unwrap();
        let inter = linalg::module_intersection(&a, &b).unwrap();
        let wa = words(&a);
        let wb = words(&b);
        prop_assert_eq!(words(&inter), wa.intersection(&wb).cloned().collect::<HashSet<_>>());
        prop_assert_eq!(words(&linalg::kernel(&sum)), words(&ka).intersection(&words(&kb)).cloned().collect::<HashSet<_>>());
        prop_assert_eq!(words(&linalg::kernel(&inter)), words(&linalg::module_sum(&ka, &kb).unwrap()));
    }

    #[test]
    fn q_closure_properties(ell in 2usize..40, q in 2u64..6, raw in prop::collection::vec(0usize..40, 0..6), raw2 in prop::collection::vec(0usize..40, 0..6)) {
        prop_assume!(chaincodes::arith::gcd(ell as u64, q) == 1);
        let ctx = CycContext::new(ell, q, 2).unwrap();
        let a: Vec<usize> = raw.iter().map(|x| x % ell).collect();
        let b: Vec<usize> = raw2.iter().map(|x| x % ell).collect();
        let ca = ctx.q_closure(&a).unwrap();
        let cb = ctx.q_closure(&b).unwrap();
        prop_assert!(ctx.is_q_closed(&ca));
        prop_assert_eq!(ctx.q_closure(&ca.to_vec()).unwrap(), ca.clone());
        let times_q = CycSet::new(ell, ca.iter().map(|z| z * q as usize % ell)).unwrap();
        prop_assert_eq!(&times_q, &ca);
        let mut ab = a.clone();
        ab.extend(&b);
        prop_assert_eq!(ctx.q_closure(&ab).unwrap(), ca.union(&cb));
        let neg: Vec<usize> = a.iter().map(|z| (ell - z) % ell).collect();
        prop_assert_eq!(ctx.q_closure(&neg).unwrap(), ca.opposite());
        prop_assert!(ctx.is_q_closed(&ca.complement()));
        prop_assert_eq!(ca.dual(), ca.complement().opposite());
        let iv = ca.dual().longest_interval();
        prop_assert!(iv.delta <= ca.dual().len());
        prop_assert!(iv.members().iter().all(|&z| ca.dual().contains(z)));
    }

    #[test]
    fn partition_text_round_trips(ell in 2usize..30, s in 1u32..4, seed in any::<u64>()) {
        prop_assume!(ell % 2 == 1);
        let ctx = CycContext::new(ell, 2, s).unwrap();
        let levels: Vec<u32> = (0..ctx.coset_count()).map(|i| ((seed >> (2 * i % 60)) % (s as u64 + 1)) as u32).collect();
        let p = CycPartition::new(&ctx, levels).unwrap();
        let text = p.to_string();
        prop_assert_eq!(CycPartition::parse(&ctx, &text).unwrap(), p.clone());
        prop_assert_eq!(CycPartition::from_sets(&ctx, &p.sets()).unwrap(), p.clone());
        let union: usize = p.sets().iter().map(CycSet::len).sum();
        prop_assert_eq!(union, ell);
        prop_assert_eq!(p.dual().dual(), p);
    }
}
