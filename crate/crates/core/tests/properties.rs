//! Property tests for the arithmetic, the tree and the coset model.

use num_bigint::BigInt;
use proptest::prelude::*;

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::arith::intpoly::IntPoly;
use drinfeld::arith::matrix::IntMatrix;
use drinfeld::groups::GroupSpec;
use drinfeld::tree::{canonicalize_vertex, PolyMat2, TreeVertex};

fn poly(q: u64, codes: &[u64]) -> FqPoly {
    let f = FiniteField::new(q).unwrap();
    let c: Vec<u64> = codes.iter().map(|x| x % q).collect();
    FqPoly::from_codes(&f, &c).unwrap()
}

/// A product of elementary matrices, hence an element of `SL(2, A)`.
fn sl2(q: u64, words: &[(bool, Vec<u64>)]) -> PolyMat2 {
    let f = FiniteField::new(q).unwrap();
    let mut g = PolyMat2::identity(&f);
    for (up, c) in words {
        let x = poly(q, c);
        g = g.mul(&if *up { PolyMat2::upper(x) } else { PolyMat2::lower(x) });
    }
    g
}

fn word() -> impl Strategy<Value = Vec<(bool, Vec<u64>)>> {
    prop::collection::vec((any::<bool>(), prop::collection::vec(0u64..9, 0..4)), 0..5)
}

fn codes() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..9, 0..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_laws(q in prop::sample::select(vec![2u64, 3, 4, 5]), a in codes(), b in codes(), c in codes()) {
        let (a, b, c) = (poly(q, &a), poly(q, &b), poly(q, &c));
        prop_assert_eq!(&(&a * &b), &(&b * &a));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
    }

    #[test]
    fn poly_division(q in prop::sample::select(vec![2u64, 3, 4]), a in codes(), b in codes()) {
        let (a, b) = (poly(q, &a), poly(q, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b);
        prop_assert_eq!(&(&quo * &b) + &rem, a.clone());
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn poly_factorization(q in prop::sample::select(vec![2u64, 3]), a in prop::collection::vec(0u64..9, 2..8)) {
        let a = poly(q, &a);
        prop_assume!(a.degree().unwrap_or(0) >= 1);
        let m = a.monic();
        let mut prod = FqPoly::one(a.field());
        for (p, e) in m.factor() {
            prop_assert!(p.is_irreducible() && p.is_monic());
            prod = &prod * &p.pow(e);
        }
        prop_assert_eq!(prod, m);
    }

    #[test]
    fn tree_action_is_isometric(q in prop::sample::select(vec![2u64, 3]), g in word(), h in word(), k in word()) {
        let f = FiniteField::new(q).unwrap();
        let o = TreeVertex::origin(&f);
        let v = o.act(&sl2(q, &h));
        let w = o.act(&sl2(q, &k));
        let g = sl2(q, &g);
        prop_assert_eq!(v.distance(&w), v.act(&g).distance(&w.act(&g)));
    }

    #[test]
    fn tree_is_regular(q in prop::sample::select(vec![2u64, 3]), h in word()) {
        let f = FiniteField::new(q).unwrap();
        let v = TreeVertex::origin(&f).act(&sl2(q, &h));
        let nb = v.neighbors();
        prop_assert_eq!(nb.len() as u64, q + 1);
        for u in &nb {
            prop_assert!(u.is_adjacent(&v) && v.is_adjacent(u));
            prop_assert!(u.neighbors().contains(&v));
        }
    }

    #[test]
    fn canonical_form_is_unique(q in prop::sample::select(vec![2u64, 3]), h in word()) {
        let f = FiniteField::new(q).unwrap();
        let g = sl2(q, &h);
        let m = g.to_ratmat().mul(&TreeVertex::origin(&f).matrix());
        prop_assert_eq!(canonicalize_vertex(&m).unwrap(), TreeVertex::origin(&f).act(&g));
    }

    #[test]
    fn coset_key_is_left_invariant(g in word(), x in codes(), y in codes(), which in 0usize..3) {
        let f = FiniteField::new(2).unwrap();
        let n = FqPoly::parse(&f, "1,1,1").unwrap();
        let spec = match which {
            0 => GroupSpec::gamma(n.clone()).unwrap(),
            1 => GroupSpec::gamma0(n.clone()).unwrap(),
            _ => GroupSpec::gamma0_cap_gamma(FqPoly::parse(&f, "0,1").unwrap(), n.clone(), 1).unwrap(),
        };
        let m = spec.modulus();
        let gamma = PolyMat2::upper(&poly(2, &x) * &m).mul(&PolyMat2::lower(&poly(2, &y) * &m));
        prop_assert!(spec.contains(&gamma));
        let g = sl2(2, &g);
        prop_assert_eq!(spec.coset_key(&gamma.mul(&g)), spec.coset_key(&g));
    }

    #[test]
    fn smith_form_invariants(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 3), 3)) {
        let m = IntMatrix::from_i64_rows(&rows);
        let snf = m.smith_normal_form();
        for w in snf.diag.windows(2) {
            prop_assert!(w[1] == BigInt::from(0) || (&w[1] % &w[0]) == BigInt::from(0));
        }
        let prod = &(&snf.left * &m) * &snf.right;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { snf.diag[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(prod.get(i, j), &want);
            }
        }
        let det: BigInt = snf.diag.iter().product();
        let d = m.det().unwrap();
        prop_assert!(d == det || d == -det);
    }

    #[test]
    fn resultant_is_multiplicative(a in prop::collection::vec(-5i64..6, 2..4), b in prop::collection::vec(-5i64..6, 2..4), c in prop::collection::vec(-5i64..6, 2..4)) {
        let (mut a, mut b, mut c) = (a, b, c);
        *a.last_mut().unwrap() = 1;
        *b.last_mut().unwrap() = 1;
        *c.last_mut().unwrap() = 1;
        let (f, g, h) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b), IntPoly::from_i64(&c));
        prop_assert_eq!(f.mul(&g).resultant(&h), f.resultant(&h) * g.resultant(&h));
    }
}
