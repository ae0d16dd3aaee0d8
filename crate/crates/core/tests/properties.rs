use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use ess_core::coeffs::{cyclotomic_polynomial, rank_exact, CoeffRing, Field, FieldElem, IntPoly};
use ess_core::complex::{presentation_complex, Epimorphism, FreeWord, Letter, Presentation};
use ess_core::groupring::{GroupDescriptor, GroupRingElem};
use ess_core::modz::{smith_normal_form, verify_snf, Integers, LaurentPoly, LaurentRing};
use ess_core::twisted::twisted_betti_at;
use ess_core::Matrix;

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![1 => Just(0i64), 2 => -9i64..=9], c), r)
    })
}

/// Laurent polynomials as `(shift, coefficients)` with span at most 4.
fn laurent_entry() -> impl Strategy<Value = (i64, Vec<i64>)> {
    prop_oneof![
        1 => Just((0, vec![])),
        2 => (-1i64..=1, prop::collection::vec(-3i64..=3, 1..=4)),
    ]
}

fn laurent_matrix() -> impl Strategy<Value = Vec<Vec<(i64, Vec<i64>)>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(laurent_entry(), c), r))
}

fn letters(n: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0..n, any::<bool>()), 0..=20)
}

fn word(n: usize, letters: &[(usize, bool)]) -> FreeWord {
    FreeWord::new(n, letters.iter().map(|&(gen, inv)| Letter { gen, inv }).collect()).unwrap()
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn to_bigint(rows: &[Vec<i64>]) -> Matrix<BigInt> {
    let cols = rows[0].len();
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
}

/// `sum c_i x^(shift + i)` in a field, with `x` given.
fn eval(f: &Field, x: &FieldElem, shift: i64, coeffs: &[i64]) -> FieldElem {
    let mut acc = f.zero();
    for (i, &c) in coeffs.iter().enumerate() {
        acc = acc + f.from_i64(c) * x.pow(shift + i as i64).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn snf_over_integers(rows in int_matrix()) {
        let a = to_bigint(&rows);
        let res = smith_normal_form(&Integers, &a);
        prop_assert_eq!(verify_snf(&Integers, &a, &res), Ok(()));
        let g = a.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        prop_assert_eq!(res.diagonal.first().cloned().unwrap_or_default(), g);
        let rank = res.diagonal.iter().filter(|x| !x.is_zero()).count();
        let q = Field::rationals();
        prop_assert_eq!(rank, rank_exact(&to_bigint(&rows).map(|x| q.from_i64(i64::try_from(x).unwrap()))).unwrap());
    }

    #[test]
    fn snf_over_laurent(rows in laurent_matrix(), which in 0usize..3) {
        let f = [Field::rationals(), Field::prime(2).unwrap(), Field::prime(3).unwrap()][which].clone();
        let lam = LaurentRing::new(&f);
        let cols = rows[0].len();
        let a = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|(s, c)| LaurentPoly::new(*s, c.iter().map(|&x| f.from_i64(x)).collect())).collect())
                .collect(),
            cols,
        );
        let res = smith_normal_form(&lam, &a);
        prop_assert_eq!(verify_snf(&lam, &a, &res), Ok(()));
        // Evaluating at t = 2 cannot raise the rank.
        if which == 0 {
            let two = f.from_i64(2);
            let at_two = Matrix::from_rows(
                rows.iter().map(|r| r.iter().map(|(s, c)| eval(&f, &two, *s, c)).collect()).collect(),
                cols,
            );
            prop_assert!(rank_exact(&at_two).unwrap() <= res.rank(&lam));
        }
    }

    #[test]
    fn fox_fundamental_identity(
        n in 1usize..=4,
        raw in letters(4),
        k in 1usize..=3,
        imgs in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 4),
    ) {
        let w = word(n, &raw.into_iter().filter(|(g, _)| *g < n).collect::<Vec<_>>());
        let p = Presentation::new(names(n), vec![]).unwrap();
        let target = GroupDescriptor::FreeAbelian(k);
        let images: Vec<Vec<i64>> = imgs[..n].iter().map(|v| v[..k].to_vec()).collect();
        let nu = Epimorphism::abelianization(&p).unwrap().compose(target, &images);
        let f = Field::rationals();
        let one = GroupRingElem::one(target, &f);
        let mut exps = vec![0i64; k];
        for l in w.letters() {
            for (e, x) in exps.iter_mut().zip(&images[l.gen]) {
                *e += if l.inv { -x } else { *x };
            }
        }
        let lhs = GroupRingElem::group_element(target, &f, exps) - one.clone();
        let mut rhs = GroupRingElem::zero(target, &f);
        for (i, img) in images.iter().enumerate() {
            let g = GroupRingElem::group_element(target, &f, img.clone()) - one.clone();
            rhs = rhs + nu.fox_image(&w, i, &f).unwrap() * g;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn minors_rank_inequality(rows in laurent_matrix(), pr in prop::sample::select(vec![(2u64, 1u32), (2, 2), (3, 1), (5, 1)])) {
        let (p, r) = pr;
        let d = p.pow(r) as u32;
        let cyc = Field::cyclotomic(d).unwrap();
        let fp = Field::prime(p).unwrap();
        let zeta = cyc.zeta_pow(1).unwrap();
        let one = fp.one();
        let cols = rows[0].len();
        let at_zeta = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|(s, c)| eval(&cyc, &zeta, *s, c)).collect()).collect(), cols);
        let at_one = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|(s, c)| eval(&fp, &one, *s, c)).collect()).collect(), cols);
        prop_assert!(rank_exact(&at_zeta).unwrap() >= rank_exact(&at_one).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// One-relator complexes on `x1, x2` with `x1 -> 1, x2 -> 0`.
    #[test]
    fn twisted_betti_is_galois_invariant(raw in letters(2), d in prop::sample::select(vec![5u32, 7, 8, 9, 12])) {
        let w = word(2, &raw);
        let e = w.abelianization()[0];
        let fix = (0..e.unsigned_abs()).map(|_| Letter { gen: 0, inv: e > 0 }).collect();
        let rel = w.concat(&FreeWord::new(2, fix).unwrap());
        let p = Presentation::new(names(2), vec![rel]).unwrap();
        let nu = Epimorphism::new(&p, GroupDescriptor::FreeAbelian(1), vec![vec![1], vec![0]]).unwrap();
        let c = presentation_complex(&p, &nu, CoeffRing::Integers).unwrap();
        let base = twisted_betti_at(&c, d, 1).unwrap();
        for a in (2..d as i64).filter(|a| a.gcd(&(d as i64)) == 1) {
            prop_assert_eq!(&twisted_betti_at(&c, d, a).unwrap(), &base);
        }
    }
}

#[test]
fn cyclotomic_product() {
    for d in 1..=200u64 {
        let mut prod = IntPoly::one();
        for e in (1..=d).filter(|e| d % e == 0) {
            prod = &prod * &cyclotomic_polynomial(e);
        }
        let mut want = vec![BigInt::zero(); d as usize + 1];
        want[0] = -BigInt::one();
        want[d as usize] = BigInt::one();
        assert_eq!(prod, IntPoly::new(want), "d = {d}");
    }
}
