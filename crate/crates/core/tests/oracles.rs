//! Library results checked against brute-force recomputations that share no
//! code path with the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use drinfeld::arith::field::FiniteField;
use drinfeld::arith::fqpoly::FqPoly;
use drinfeld::arith::intpoly::IntPoly;
use drinfeld::arith::matrix::{IntMatrix, RatMatrix};
use drinfeld::explore::explore;
use drinfeld::groups::{Flavor, GroupSpec};
use drinfeld::hecke::{char_poly_of, hecke_matrix, Level};

fn spec(q: u64, n: &str, flavor: Flavor) -> GroupSpec {
    let f = FiniteField::new(q).unwrap();
    GroupSpec::new(&f, FqPoly::parse(&f, n).unwrap(), None, 0, flavor).unwrap()
}

/// All residues modulo `n`, i.e. polynomials of degree below `deg n`.
fn residues(n: &FqPoly) -> Vec<FqPoly> {
    FqPoly::all_below_degree(n.field(), n.degree().unwrap())
}

#[test]
fn index_of_gamma_n_counts_sl2_of_quotient() {
    for (q, n) in [(2, "0,0,1"), (2, "0,1,1"), (3, "0,1"), (2, "1,1,1")] {
        let s = spec(q, n, Flavor::GammaN);
        let m = s.n().clone();
        let rs = residues(&m);
        let one = FqPoly::one(m.field());
        let mut count = 0u64;
        for a in &rs {
            for b in &rs {
                for c in &rs {
                    for d in &rs {
                        let det = &(a * d) - &(b * c);
                        if det.rem(&m) == one {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(s.index_in_sl2(), count, "{n}");
    }
}

#[test]
fn index_of_gamma0_counts_projective_line() {
    for (q, n) in [(2, "1,1,0,1"), (2, "0,0,1"), (3, "1,0,1"), (3, "0,1,1")] {
        let s = spec(q, n, Flavor::Gamma0Only);
        let m = s.n().clone();
        let rs = residues(&m);
        let unimodular = rs
            .iter()
            .flat_map(|c| rs.iter().map(move |d| (c, d)))
            .filter(|(c, d)| c.gcd(d).gcd(&m).is_one())
            .count() as u64;
        let units = rs.iter().filter(|x| x.gcd(&m).is_one()).count() as u64;
        assert_eq!(s.index_in_sl2(), unimodular / units, "{n}");
    }
}

#[test]
fn exploration_matches_coset_quotient() {
    for (q, n, fl) in [
        (2, "1,1,0,1", Flavor::Gamma0Only),
        (2, "1,1,1", Flavor::Gamma0Only),
        (3, "1,0,1", Flavor::Gamma0Only),
        (2, "0,1", Flavor::GammaN),
        (2, "0,1,1", Flavor::GammaN),
    ] {
        let s = spec(q, n, fl);
        let ex = explore(&s, 24).unwrap();
        let level = Level::build(&s, true).unwrap();
        assert_eq!(ex.genus(), level.genus() as i64, "{}", s.describe());
        assert_eq!(ex.core_edges.len(), level.graph.core_edges().len(), "{}", s.describe());
    }
}

#[test]
fn gram_is_weighted_edge_sum() {
    for (q, n, fl) in [(3, "1,0,1", Flavor::Gamma0Only), (2, "1,1,0,1", Flavor::Gamma0Only), (2, "0,1,1", Flavor::GammaN)] {
        let s = spec(q, n, fl);
        let level = Level::build(&s, true).unwrap();
        let lat = &level.lattice;
        let g = level.genus();
        for i in 0..g {
            for j in 0..g {
                let mut acc = BigRational::zero();
                for k in 0..lat.num_edges() {
                    let prod = lat.basis.get(i, k) * lat.basis.get(j, k);
                    acc += BigRational::new(prod, BigInt::from(lat.weights[k]));
                }
                assert_eq!(&acc, level.gram.entries.get(i, j), "{} ({i},{j})", s.describe());
            }
        }
    }
}

/// Characteristic polynomial by Faddeev-LeVerrier over the rationals.
fn faddeev(m: &RatMatrix) -> Vec<BigRational> {
    let n = m.rows();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = mk.clone();
        for i in 0..n {
            let d = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, d);
        }
        mk = m * &next;
        c[n - k] = -mk.trace() / BigRational::from_integer(BigInt::from(k as i64));
    }
    c
}

#[test]
fn hecke_char_poly_matches_faddeev() {
    let s = spec(2, "0,0,1", Flavor::GammaN);
    let level = Level::build(&s, false).unwrap();
    for v in ["1,1", "1,1,1"] {
        let t = hecke_matrix(&level, &FqPoly::parse(s.field(), v).unwrap()).unwrap();
        let cp = char_poly_of(&t.to_int().unwrap()).unwrap();
        let want: Vec<BigInt> = faddeev(&t.matrix).into_iter().map(|x| x.to_integer()).collect();
        assert_eq!(cp.coeffs(), &want[..]);
    }
}

#[test]
fn hecke_trace_matches_char_poly() {
    let s = spec(2, "1,1,0,1", Flavor::Gamma0Only);
    let level = Level::build(&s, false).unwrap();
    let t = hecke_matrix(&level, &FqPoly::parse(s.field(), "0,1").unwrap()).unwrap();
    let cp = char_poly_of(&t.to_int().unwrap()).unwrap();
    let n = cp.degree().unwrap();
    assert_eq!(-cp.coeff(n - 1), t.matrix.trace().to_integer());
}

/// Sylvester resultant of two integer polynomials.
fn sylvester(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    let mut s = RatMatrix::zeros(size, size);
    for r in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            s.set(r, r + k, BigRational::from_integer(c.clone()));
        }
    }
    for r in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            s.set(n + r, r + k, BigRational::from_integer(c.clone()));
        }
    }
    s.det().unwrap().to_integer()
}

#[test]
fn resultant_matches_sylvester() {
    let cases = [
        (vec![-3, 0, 1], vec![-25, 0, 1]),
        (vec![-1, 1], vec![-9, 0, 1]),
        (vec![3, 3, -4, -4, 1, 1], vec![-4, 1, 2]),
    ];
    for (a, b) in cases {
        let (f, g) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b));
        assert_eq!(f.resultant(&g), sylvester(&f, &g));
    }
    assert_eq!(IntPoly::from_i64(&[-3, 0, 1]).resultant(&IntPoly::from_i64(&[-25, 0, 1])), BigInt::from(484));
}

#[test]
fn smith_form_of_small_matrix() {
    let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = m.smith_normal_form();
    let d: Vec<i64> = snf.diag.iter().map(|x| x.try_into().unwrap()).collect();
    assert_eq!(d, vec![2, 6, 12]);
    let prod = &(&snf.left * &m) * &snf.right;
    assert_eq!(prod.to_i64_rows(), vec![vec![2, 0, 0], vec![0, 6, 0], vec![0, 0, 12]]);
}
