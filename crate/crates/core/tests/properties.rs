//! Invariants as property tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use blockweyl::affine::AffineType;
use blockweyl::blocks;
use blockweyl::chars::{self, character_table};
use blockweyl::coxeter::{Family, FiniteType};
use blockweyl::exec::{self, Backend};
use blockweyl::green;
use blockweyl::hecke::{self, Weighted};
use blockweyl::poly::{Poly, RatFun};
use blockweyl::weighted::{self, WeightedAffineGroup};

fn ft(f: Family, n: usize) -> FiniteType {
    FiniteType::new(f, n)
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 1..4).prop_map(|c| Poly::from_ints(&c))
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFun::new(n, d))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ratfun_inverse(x in ratfun()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.recip()).is_one());
        prop_assert!((&x / &x).is_one());
    }

    #[test]
    fn ratfun_ring_laws(x in ratfun(), y in ratfun(), z in ratfun()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
    }

    #[test]
    fn ratfun_canonical_form_is_idempotent(x in ratfun(), k in 1i64..5) {
        let again = RatFun::new(x.num().clone(), x.den().clone());
        prop_assert_eq!(&again, &x);
        let scaled = RatFun::new(x.num().scale(&rat(k, 1)), x.den().scale(&rat(k, 1)));
        prop_assert_eq!(scaled, x);
    }

    #[test]
    fn ratfun_evaluation_is_a_homomorphism(x in ratfun(), y in ratfun(), n in -7i64..7, d in 1i64..5) {
        let q = rat(n, d);
        if let (Some(a), Some(b)) = (x.eval(&q), y.eval(&q)) {
            if let Some(s) = (&x + &y).eval(&q) {
                prop_assert_eq!(s, &a + &b);
            }
            if let Some(p) = (&x * &y).eval(&q) {
                prop_assert_eq!(p, &a * &b);
            }
        }
    }

    #[test]
    fn a_values_scale_with_weights(ti in 0usize..6, a in 1u64..5, b in 1u64..5, k in 1u64..5) {
        let ty = [ft(Family::A, 1), ft(Family::A, 2), ft(Family::A, 3), ft(Family::B, 2), ft(Family::B, 3), ft(Family::G2, 2)][ti];
        let w: Vec<u64> = (0..ty.rank).map(|i| if i + 1 == ty.rank { b } else { a }).collect();
        prop_assume!(hecke::is_weight_function(&ty.diagram(), &w));
        let base = hecke::a_values(&Weighted { ty, w: w.clone() }).unwrap();
        let kw = hecke::a_values(&Weighted { ty, w: w.iter().map(|x| k * x).collect() }).unwrap();
        prop_assert!(base.iter().zip(kw.iter()).all(|(x, y)| k * x == *y));
    }

    #[test]
    fn nu_of_affine_a1_is_the_larger_weight(t in 1u64..40, s in 1u64..40) {
        let g = WeightedAffineGroup::standard(ft(Family::A, 1), &[t, s]).unwrap();
        prop_assert_eq!(weighted::nu(&g).unwrap(), t.max(s));
    }

    #[test]
    fn c_function_dominates_second_row(u in 2u64..7, r in 2usize..4, mid in 1u64..3, flip in any::<bool>()) {
        let mut w = vec![mid; r + 1];
        let (t, s) = if flip { (u - 1, u) } else { (u, u - 1) };
        w[0] = t;
        w[r] = s;
        let tbl = weighted::c_function(ft(Family::C, r), &w).unwrap();
        let rel = weighted::order_relations(&tbl).unwrap();
        for (e, row) in tbl.rows.iter().enumerate() {
            prop_assert!(row.c >= row.second);
            if row.c == row.second {
                prop_assert!(row.extra.is_empty());
            }
            for f in 0..tbl.rows.len() {
                if rel.sim_eq(e, f) {
                    prop_assert!(rel.approx_eq(e, f));
                }
            }
        }
    }

    #[test]
    fn omega_prime_specializes_to_the_class_sum(t in 1u64..4, s in 1u64..4, n in 2i64..9, d in 1i64..4) {
        let q = rat(n, d);
        prop_assume!(q != rat(1, 1));
        let tbl = weighted::c_function(ft(Family::A, 1), &[t, s]).unwrap();
        let om = green::omega_prime_matrix(&tbl, Backend::Sequential).unwrap();
        for i in 0..om.len() {
            for j in 0..om.len() {
                let direct = green::omega_prime_at(&tbl, om.table_index[i], om.table_index[j], &q);
                let scaled = &om.entries[i][j] * &RatFun::q_pow((om.c[i] + om.c[j]) as i64);
                prop_assert_eq!(scaled.eval(&q), direct);
            }
        }
    }

    #[test]
    fn bonds_are_crystallographic(pick in 0usize..1000) {
        let types: Vec<AffineType> = [ft(Family::B, 5), ft(Family::C, 5), ft(Family::D, 6), ft(Family::E7, 7), ft(Family::C, 8)]
            .into_iter()
            .map(AffineType::new)
            .collect();
        let all: Vec<_> = types
            .iter()
            .flat_map(|a| a.omega.iter().flat_map(move |o| blocks::enumerate_blocks(a, o).unwrap().into_iter().map(move |b| (a, o, b))))
            .collect();
        let (a, o, b) = &all[pick % all.len()];
        let g = weighted::build_weighted_group(a, o, &b.nodes).unwrap();
        for row in &g.coxeter {
            for &m in row {
                prop_assert!([0, 1, 2, 3, 4, 6].contains(&m));
            }
        }
        if g.recognized.is_some() {
            prop_assert!(hecke::is_weight_function(&g.diagram(), &g.weights));
        }
    }

    #[test]
    fn restriction_matches_element_tallies(ti in 0usize..5, mask in 1u32..1 << 8, chi in 0usize..64) {
        let ty = [ft(Family::A, 3), ft(Family::B, 3), ft(Family::D, 4), ft(Family::G2, 2), ft(Family::B, 4)][ti];
        let full = (1u32 << ty.rank) - 1;
        let m = 1 + mask % (full - 1);
        let nodes: Vec<usize> = (0..ty.rank).filter(|i| m & (1 << i) != 0).collect();
        let amb = character_table(ty).unwrap();
        let chi = chi % amb.irr.len();
        let sub = chars::parabolic(ty, &nodes);
        let fusion = chars::fuse(&amb, &sub).unwrap();
        let by_words = fusion.restrict(&amb.values[chi]);
        let tally = chars::fuse_by_elements(&amb, &sub).unwrap();
        let tabs: Vec<_> = sub.comps.iter().map(|(t, _)| character_table(*t).unwrap()).collect();
        let order: i128 = tabs.iter().map(|t| t.order as i128).product();
        for psi in fusion.irreducibles() {
            let mut sum = 0i128;
            for (idx, hits) in tally.iter().enumerate() {
                let mut rest = idx;
                let mut val = 1i128;
                for (k, t) in tabs.iter().enumerate() {
                    val *= t.values[psi[k]][rest % t.num_classes()] as i128;
                    rest /= t.num_classes();
                }
                sum += hits.iter().map(|(&a, &c)| c as i128 * amb.values[chi][a] as i128).sum::<i128>() * val;
            }
            prop_assert_eq!(sum % order, 0);
            let want = (sum / order) as u64;
            let got = by_words.iter().find(|(p, _)| *p == psi).map_or(0, |(_, m)| *m);
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn backends_return_identical_results(xs in prop::collection::vec(0u64..1000, 0..200)) {
        let f = |x: &u64| x.wrapping_mul(2654435761) % 97;
        let seq = exec::map(Backend::Sequential, &xs, f);
        prop_assert_eq!(exec::map(Backend::Parallel, &xs, f), seq);
    }
}
