//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact (zero tolerance); random inputs come from fixed ChaCha seeds.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ess_cli::builtins::{self, DEFAULT_INSTANCES};
use ess_cli::input::{build_space, parse_nu, Space};
use ess_core::aomoto::{aomoto_betti, aomoto_specialize, universal_aomoto};
use ess_core::coeffs::{cyclotomic_polynomial, rank_exact, CoeffRing, Field, FieldElem, IntPoly};
use ess_core::complex::{Epimorphism, EquivariantComplex, FreeWord, Letter, Presentation};
use ess_core::groupring::{parse_element, GroupDescriptor, GroupRingElem, Valuation};
use ess_core::modz::{
    einf_gr_module, homology_decomposition, integral_torsion_check, monodromy_report, smith_normal_form, verify_snf,
    Integers, LaurentPoly, LaurentRing,
};
use ess_core::pages::{compute_pages, d1_closed_form, d1_from_engine, e_infinity_z, reznikov_collapse, Engine};
use ess_core::twisted::{alexander_polynomial, aomoto_betti_along, bounds_report, twisted_betti_along, Verdict};
use ess_core::Matrix;

/// Random loops per algebraic property.
const RANDOM_CASES: usize = 500;
/// Filtration window used for `E^inf` comparisons.
const S_WINDOW: usize = 4;
/// Random directions for the universal Aomoto comparison.
const DIRECTIONS: usize = 20;

type Outcome = Result<(), String>;
/// A knot built-in, its Alexander coefficients, and `(d, b_1)` pairs.
type KnotCase = (&'static str, &'static [i64], Vec<(u32, usize)>);
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space(name: &str) -> Space {
    build_space(&builtins::load(name).unwrap()).unwrap()
}

fn over(c: &EquivariantComplex, ring: &str) -> EquivariantComplex {
    c.change_coefficients(ring.parse().unwrap()).unwrap()
}

fn field_complex(c: &EquivariantComplex) -> EquivariantComplex {
    if c.ring().is_field() {
        c.clone()
    } else {
        over(c, "Q")
    }
}

/// The default map to `Z` of a built-in.
fn default_nu(s: &Space) -> Vec<i64> {
    match s.complex.group() {
        GroupDescriptor::FreeAbelian(1) => vec![1],
        _ => parse_nu(s.default_nu.as_deref().expect("default nu"), &s.generator_names).unwrap(),
    }
}

fn along(c: &EquivariantComplex, nu: &[i64]) -> EquivariantComplex {
    if c.group() == GroupDescriptor::FreeAbelian(1) && nu == [1] {
        return c.clone();
    }
    let images: Vec<Vec<i64>> = nu.iter().map(|&x| vec![x]).collect();
    c.base_change(GroupDescriptor::FreeAbelian(1), &images).unwrap()
}

fn c1_wedge() -> Outcome {
    let s = space("wedge2");
    let c = &s.complex;
    let f = c.field();
    let g = c.group();
    let expect = [parse_element("t1 - 1", g, f).unwrap(), parse_element("t2 - 1", g, f).unwrap()];
    let b = c.boundary(1);
    ensure(b.rows() == 2 && b.cols() == 1, || format!("shape {}x{}", b.rows(), b.cols()))?;
    ensure(b[(0, 0)] == expect[0] && b[(1, 0)] == expect[1], || format!("boundary {} ; {}", b[(0, 0)], b[(1, 0)]))?;
    let cz = along(c, &[1, 1]);
    let d = homology_decomposition(&cz, 1).unwrap();
    ensure(d.free_rank == 1 && d.t_minus_1_blocks.is_empty() && d.other_primary.is_empty(), || {
        format!("H_1 = {:?}", d.report())
    })
}

fn c2_zxf2() -> Outcome {
    let s = space("zxf2");
    let nu = default_nu(&s);
    ensure(nu == [2, 1, 1], || format!("default nu {nu:?}"))?;
    let q = along(&s.complex, &nu);
    let d = homology_decomposition(&q, 1).unwrap().report();
    ensure(d.free_rank == 0 && d.t_minus_1_blocks == [1, 1], || format!("over Q: {d:?}"))?;
    ensure(d.other_primary.len() == 1, || format!("over Q: {d:?}"))?;
    let o = &d.other_primary[0];
    ensure(o.poly == "t + 1" && o.exp == 1 && o.mult == 1 && !d.separated, || format!("over Q: {d:?}"))?;
    for p in ["Fp:3", "Fp:5"] {
        let d = homology_decomposition(&over(&q, p), 1).unwrap().report();
        ensure(!d.separated && d.t_minus_1_blocks == [1, 1], || format!("over {p}: {d:?}"))?;
    }
    let d = homology_decomposition(&over(&q, "Fp:2"), 1).unwrap().report();
    ensure(d.free_rank == 0 && d.t_minus_1_blocks == [1, 2] && d.other_primary.is_empty() && d.separated, || {
        format!("over F_2: {d:?}")
    })
}

fn c3_circle_mod_p() -> Outcome {
    let s = space("circle");
    for p in [2u64, 3, 5] {
        let g = GroupDescriptor::cyclic(p).unwrap();
        let c = over(&s.complex, &format!("Fp:{p}")).base_change(g, &[vec![1]]).unwrap();
        let f = Field::prime(p).unwrap();
        // Multiplication by t - 1 on F_p[Z/p]; H_1 is its kernel.
        let mut m = Matrix::filled(p as usize, p as usize, f.zero());
        for i in 0..p as usize {
            m[(i, (i + 1) % p as usize)] = &m[(i, (i + 1) % p as usize)] + &f.one();
            m[(i, i)] = &m[(i, i)] - &f.one();
        }
        let kernel = p as usize - rank_exact(&m).unwrap();
        ensure(kernel == 1, || format!("p = {p}: dim H_1 = {kernel}"))?;
        let norm =
            (0..p as i64).fold(GroupRingElem::zero(g, &f), |acc, i| acc + GroupRingElem::group_element(g, &f, vec![i]));
        let x = GroupRingElem::element_minus_one(g, &f, vec![1]);
        ensure((&x * &norm).is_zero(), || format!("p = {p}: (t - 1) N != 0"))?;
        ensure(norm.j_valuation() == Valuation::Finite(p as usize - 1), || {
            format!("p = {p}: valuation of N is {}", norm.j_valuation())
        })?;
        let rep = reznikov_collapse(&c).unwrap();
        ensure(rep.homology_dims[1] == 1, || format!("p = {p}: homology {:?}", rep.homology_dims))?;
        for sdeg in 0..p as usize {
            let want = usize::from(sdeg == p as usize - 1);
            let got = rep.e_infinity.dim(sdeg, 1);
            ensure(got == want, || format!("p = {p}: E^inf({sdeg}, 1) = {got}"))?;
        }
    }
    Ok(())
}

fn check_d1(name: &str, c: &EquivariantComplex) -> Outcome {
    let engine = Engine::new(c, 3);
    for q in 1..=c.top_degree() {
        let closed = d1_closed_form(c, q).unwrap();
        let pages = d1_from_engine(&engine, q).unwrap();
        ensure(closed == pages, || format!("{name} ({}, {}): d^1 out of degree {q} differs", c.ring(), c.group()))?;
    }
    Ok(())
}

fn c4_pipelines() -> Outcome {
    for name in DEFAULT_INSTANCES {
        let s = space(name);
        let c = field_complex(&s.complex);
        check_d1(name, &c)?;
        let nu = default_nu(&s);
        for ring in ["Q", "Fp:2", "Fp:3"] {
            let z = over(&along(&s.complex, &nu), ring);
            check_d1(name, &z)?;
            let einf = e_infinity_z(&z, S_WINDOW).unwrap();
            for q in 0..=z.top_degree() {
                let gr = einf_gr_module(&homology_decomposition(&z, q).unwrap()).dims(S_WINDOW);
                let col: Vec<usize> = (0..=S_WINDOW).map(|sd| einf.dim(sd, q)).collect();
                ensure(gr == col, || format!("{name} over {ring}, q = {q}: E^inf {col:?}, Smith form {gr:?}"))?;
            }
        }
    }
    let circle = space("circle");
    for p in [2u64, 3, 5] {
        let c = over(&circle.complex, &format!("Fp:{p}"))
            .base_change(GroupDescriptor::cyclic(p).unwrap(), &[vec![1]])
            .unwrap();
        check_d1("circle mod p", &c)?;
    }
    Ok(())
}

const BOUND_INPUTS: &[&str] = &["trefoil", "figure8", "comm-p:3", "comm-p:5", "torsfree", "torus2"];

fn prime_powers() -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let mut r = 1;
        while p.pow(r) <= 9 {
            out.push((p, r));
            r += 1;
        }
    }
    out
}

/// Ranks of every boundary matrix at `zeta_d^nu` and mod `p` at 1.
fn minors_check(name: &str, c: &EquivariantComplex, nu: &[i64], p: u64, d: u32) -> Outcome {
    let cyc = Field::cyclotomic(d).unwrap();
    let cz = c.change_coefficients(CoeffRing::Field(cyc.descriptor())).unwrap();
    let cp = over(c, &format!("Fp:{p}"));
    let zeta: Vec<FieldElem> = nu.iter().map(|&x| cyc.zeta_pow(x).unwrap()).collect();
    let ones = vec![cp.field().one(); nu.len()];
    for q in 1..=c.top_degree() {
        let rz = rank_exact(&cz.evaluate_boundary(q, &zeta).unwrap()).unwrap();
        let rp = rank_exact(&cp.evaluate_boundary(q, &ones).unwrap()).unwrap();
        ensure(rz >= rp, || format!("{name}, d_{q}: rank at zeta_{d} = {rz} < rank mod {p} = {rp}"))?;
    }
    Ok(())
}

fn c5_betti_bound() -> Outcome {
    for name in BOUND_INPUTS {
        let s = space(name);
        let nu = default_nu(&s);
        for (p, r) in prime_powers() {
            let d = p.pow(r) as u32;
            let b = twisted_betti_along(&s.complex, &nu, d).unwrap();
            let bp = over(&s.complex, &format!("Fp:{p}")).betti_numbers().unwrap();
            for q in 0..b.len() {
                ensure(b[q] <= bp[q], || format!("{name}, {p}^{r}, q = {q}: {} > {}", b[q], bp[q]))?;
            }
            let rep = bounds_report(&s.complex, &nu, p, r).unwrap();
            ensure(rep.betti_bound == Verdict::Holds, || format!("{name}: verdict {}", rep.betti_bound))?;
        }
    }
    for name in DEFAULT_INSTANCES {
        let s = space(name);
        if !matches!(s.complex.ring(), CoeffRing::Integers | CoeffRing::Field(_))
            || s.complex.ring().characteristic() != 0
        {
            continue;
        }
        let nu = default_nu(&s);
        for (p, r) in prime_powers() {
            minors_check(name, &s.complex, &nu, p, p.pow(r) as u32)?;
        }
    }
    Ok(())
}

fn c6_aomoto_bound() -> Outcome {
    for name in BOUND_INPUTS {
        let s = space(name);
        let nu = default_nu(&s);
        let torsion_free = match integral_torsion_check(&s.complex) {
            Ok(t) => t.all_torsion_free(),
            Err(e) => return Err(format!("{name}: {e}")),
        };
        for (p, r) in prime_powers() {
            let rep = bounds_report(&s.complex, &nu, p, r).unwrap();
            if torsion_free {
                ensure(rep.aomoto_bound == Verdict::Holds, || format!("{name} {p}^{r}: {}", rep.aomoto_bound))?;
                let beta = aomoto_betti_along(&s.complex, &nu, p).unwrap();
                let b = twisted_betti_along(&s.complex, &nu, p.pow(r) as u32).unwrap();
                for q in 0..b.len() {
                    ensure(b[q] <= beta[q], || format!("{name} {p}^{r} q = {q}: {} > {}", b[q], beta[q]))?;
                }
            } else {
                ensure(rep.aomoto_bound == Verdict::NotApplicable, || format!("{name}: {}", rep.aomoto_bound))?;
            }
        }
    }
    let t = space("torsfree");
    let h = integral_torsion_check(&t.complex).unwrap();
    ensure(h.homology[2].torsion == ["2"] && !h.torsion_free[2], || format!("torsfree H_2 {:?}", h.homology[2]))?;
    let rep = bounds_report(&t.complex, &[1], 2, 1).unwrap();
    let g = &rep.degrees[3];
    ensure(g.twisted == 1 && g.beta == 0, || format!("torsfree q = 3: b = {}, beta = {}", g.twisted, g.beta))?;
    ensure(rep.aomoto_bound == Verdict::NotApplicable, || "torsfree verdict".into())?;
    let l = space("lyndon:6");
    let b = twisted_betti_along(&l.complex, &[1, 1], 6).unwrap();
    ensure(b[1] == 1, || format!("lyndon:6 b_1(nu/6) = {}", b[1]))?;
    for p in [2, 3, 5] {
        let beta = aomoto_betti_along(&l.complex, &[1, 1], p).unwrap();
        ensure(beta[1] == 0, || format!("lyndon:6 beta_1 mod {p} = {}", beta[1]))?;
    }
    Ok(())
}

fn c7_trivial_monodromy() -> Outcome {
    for name in ["torus2", "torus3"] {
        let s = space(name);
        let n = s.complex.group().nvars();
        // Surjective maps to Z: the default one and a few others.
        let mut nus = vec![vec![1; n]];
        nus.push((0..n as i64).map(|i| if i == 0 { 1 } else { i + 1 }).collect());
        nus.push((0..n).map(|i| if i == n - 1 { 1 } else { 0 }).collect());
        for nu in nus {
            let c = along(&s.complex, &nu);
            let rep = monodromy_report(&c, c.top_degree()).map_err(|e| format!("{name} {nu:?}: {e}"))?;
            ensure(rep.degrees.iter().all(|d| d.monodromy_trivial && d.aomoto_betti == 0), || {
                format!("{name} {nu:?}: {rep:?}")
            })?;
        }
    }
    for name in DEFAULT_INSTANCES {
        let s = space(name);
        let nu = default_nu(&s);
        for ring in ["Q", "Fp:2", "Fp:3"] {
            let c = over(&along(&s.complex, &nu), ring);
            monodromy_report(&c, c.top_degree()).map_err(|e| format!("{name} over {ring}: {e}"))?;
        }
    }
    Ok(())
}

fn c8_comm_p() -> Outcome {
    for p in [3u64, 5] {
        let s = space(&format!("comm-p:{p}"));
        let rep = bounds_report(&s.complex, &[1], p, 1).unwrap();
        let g = &rep.degrees[1];
        ensure(g.twisted == 0 && g.beta == 1 && g.betti_fp == 2, || {
            format!("p = {p}: b = {}, beta = {}, b(F_p) = {}", g.twisted, g.beta, g.betti_fp)
        })?;
        let direct = over(&s.complex, &format!("Fp:{p}")).betti_numbers().unwrap();
        ensure(direct[1] == 2, || format!("p = {p}: b_1(F_p) = {}", direct[1]))?;
    }
    Ok(())
}

fn integer_poly(a: &[FieldElem]) -> IntPoly {
    IntPoly::new(a.iter().map(|c| c.as_integer().expect("integral coefficient")).collect())
}

fn c9_knots() -> Outcome {
    let cases: [KnotCase; 2] = [
        ("trefoil", &[1, -1, 1], vec![(2, 0), (3, 0), (4, 0), (5, 0), (6, 1)]),
        ("figure8", &[1, -3, 1], (2..=12).map(|d| (d, 0)).collect()),
    ];
    for (name, coeffs, expect) in cases {
        let s = space(name);
        let delta = alexander_polynomial(&s.complex).unwrap();
        let ip = integer_poly(&delta.coeffs);
        ensure(ip == IntPoly::from_i64s(coeffs), || format!("{name}: Δ = {delta}"))?;
        for (d, b1) in expect {
            let b = twisted_betti_along(&s.complex, &[1], d).unwrap();
            ensure(b[1] == b1, || format!("{name}: b_1(nu/{d}) = {}", b[1]))?;
            let root = ip.div_exact(&cyclotomic_polynomial(d as u64)).is_some();
            ensure(root == (b[1] > 0), || format!("{name}: Φ_{d} | Δ is {root}, b_1 = {}", b[1]))?;
        }
    }
    Ok(())
}

fn random_int_matrix(rng: &mut ChaCha8Rng) -> Matrix<BigInt> {
    let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let rows = (0..r)
        .map(|_| {
            (0..c)
                .map(|_| if rng.gen_bool(0.3) { BigInt::zero() } else { BigInt::from(rng.gen_range(-9i64..=9)) })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows, c)
}

fn random_laurent(rng: &mut ChaCha8Rng, f: &Field) -> LaurentPoly {
    if rng.gen_bool(0.35) {
        return LaurentPoly::zero();
    }
    let len = rng.gen_range(1..=4);
    let coeffs = (0..len).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
    LaurentPoly::new(rng.gen_range(-1..=1), coeffs)
}

fn gcd_of_entries(m: &Matrix<BigInt>) -> BigInt {
    m.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn plain_product(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
    let mut out = Matrix::filled(a.rows(), b.cols(), BigInt::zero());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            out[(i, j)] = (0..a.cols()).map(|k| &a[(i, k)] * &b[(k, j)]).sum();
        }
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, n: usize) -> FreeWord {
    let len = rng.gen_range(0..=20);
    let letters = (0..len).map(|_| Letter { gen: rng.gen_range(0..n), inv: rng.gen_bool(0.5) }).collect();
    FreeWord::new(n, letters).unwrap()
}

fn c10_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    for case in 0..RANDOM_CASES {
        let a = random_int_matrix(&mut rng);
        let res = smith_normal_form(&Integers, &a);
        verify_snf(&Integers, &a, &res).map_err(|e| format!("Z case {case}: {e}"))?;
        ensure(plain_product(&plain_product(&res.u, &a), &res.v) == res.d, || format!("Z case {case}: UAV != D"))?;
        for w in res.diagonal.windows(2) {
            ensure(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero(), || {
                format!("Z case {case}: {} does not divide {}", w[0], w[1])
            })?;
        }
        let d1 = res.diagonal.first().cloned().unwrap_or_default();
        ensure(d1 == gcd_of_entries(&a), || format!("Z case {case}: d_1 = {d1}"))?;
    }
    for f in &[Field::rationals(), Field::prime(2).unwrap(), Field::prime(5).unwrap()] {
        let lam = LaurentRing::new(f);
        for case in 0..RANDOM_CASES {
            let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let rows = (0..r).map(|_| (0..c).map(|_| random_laurent(&mut rng, f)).collect()).collect();
            let a = Matrix::from_rows(rows, c);
            let res = smith_normal_form(&lam, &a);
            verify_snf(&lam, &a, &res).map_err(|e| format!("Λ over {} case {case}: {e}", f.descriptor()))?;
        }
    }
    let field = Field::rationals();
    for case in 0..RANDOM_CASES {
        let n = rng.gen_range(1..=4);
        let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
        let w = random_word(&mut rng, n);
        let pres = Presentation::new(names, vec![]).unwrap();
        let (target, images): (GroupDescriptor, Vec<Vec<i64>>) = if rng.gen_bool(0.5) {
            let k = rng.gen_range(1..=3);
            (GroupDescriptor::FreeAbelian(k), (0..n).map(|_| (0..k).map(|_| rng.gen_range(-2..=2)).collect()).collect())
        } else {
            let m = rng.gen_range(2..=7);
            (GroupDescriptor::cyclic(m).unwrap(), (0..n).map(|_| vec![rng.gen_range(0..m as i64)]).collect())
        };
        let nu = Epimorphism::abelianization(&pres).unwrap().compose(target, &images);
        // Image of w, summed letter by letter.
        let mut exp = vec![0i64; target.nvars()];
        for l in w.letters() {
            for (e, x) in exp.iter_mut().zip(&images[l.gen]) {
                *e += if l.inv { -x } else { *x };
            }
        }
        let one = GroupRingElem::one(target, &field);
        let lhs = GroupRingElem::group_element(target, &field, exp) - one.clone();
        let mut rhs = GroupRingElem::zero(target, &field);
        for (i, img) in images.iter().enumerate() {
            let g = GroupRingElem::group_element(target, &field, img.clone()) - one.clone();
            rhs = rhs + nu.fox_image(&w, i, &field).unwrap() * g;
        }
        ensure(lhs == rhs, || format!("Fox case {case}: {w:?} under {images:?}"))?;
    }
    for d in 1..=200u64 {
        let mut prod = IntPoly::one();
        for e in (1..=d).filter(|e| d % e == 0) {
            prod = &prod * &cyclotomic_polynomial(e);
        }
        let mut want = vec![BigInt::zero(); d as usize + 1];
        want[0] = -BigInt::one();
        want[d as usize] = BigInt::one();
        ensure(prod == IntPoly::new(want), || format!("cyclotomic product fails at d = {d}"))?;
    }
    for name in DEFAULT_INSTANCES {
        let c = field_complex(&space(name).complex);
        let small = compute_pages(&c, 2, 2).unwrap();
        let big = compute_pages(&c, 3, 4).unwrap();
        for r in 1..=2 {
            for e in &small.page(r).entries {
                let same = e.dim == big.page(r).dim(e.s, e.q) && e.d_rank == big.page(r).d_rank(e.s, e.q);
                ensure(same, || format!("{name}: E^{r}({}, {}) depends on the window", e.s, e.q))?;
            }
        }
    }
    Ok(())
}

fn c11_universal_aomoto() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for name in ["torus2", "torus3", "zxf2"] {
        let s = space(name);
        let u = universal_aomoto(&s.complex).map_err(|e| format!("{name}: {e}"))?;
        u.check_square_zero().map_err(|e| format!("{name}: {e}"))?;
        let f = u.field.clone();
        for _ in 0..DIRECTIONS {
            // A nonzero rational direction, and the primitive integral map to Z it spans.
            let (nums, dens): (Vec<i64>, Vec<i64>) = loop {
                let nums: Vec<i64> = (0..u.n).map(|_| rng.gen_range(-4..=4)).collect();
                if nums.iter().any(|&x| x != 0) {
                    break (nums, (0..u.n).map(|_| rng.gen_range(1..=3)).collect());
                }
            };
            let z: Vec<FieldElem> = nums
                .iter()
                .zip(&dens)
                .map(|(&a, &b)| f.from_rational(&BigRational::new(a.into(), b.into())).unwrap())
                .collect();
            let lcm = dens.iter().fold(1i64, |l, d| l.lcm(d));
            let ints: Vec<i64> = nums.iter().zip(&dens).map(|(a, b)| a * (lcm / b)).collect();
            let g = ints.iter().fold(0i64, |g, x| g.gcd(x));
            let nu: Vec<i64> = ints.iter().map(|x| x / g).collect();
            let spec = aomoto_specialize(&u, &z).unwrap();
            let e2 = aomoto_betti(&along(&s.complex, &nu)).unwrap();
            ensure(spec.betas == e2.betas, || format!("{name} at {nu:?}: {:?} vs E^2 {:?}", spec.betas, e2.betas))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("wedge of two circles: boundary and H_1 = Λ", c1_wedge),
        ("Z x F_2: decompositions and separatedness over Q, F_2, F_3, F_5", c2_zxf2),
        ("circle over F_p[Z/p], p = 2, 3, 5: norm generator and E^inf", c3_circle_mod_p),
        ("d^1 closed form = pages; E^inf = Smith form on every built-in", c4_pipelines),
        ("b(nu/p^r) <= b(F_p) and rank inequality for boundary matrices", c5_betti_bound),
        ("b(nu/p^r) <= beta when torsion-free; torsfree and lyndon:6 violations", c6_aomoto_bound),
        ("tori: beta = 0, trivial monodromy; three conditions agree everywhere", c7_trivial_monodromy),
        ("<x, y | [x, y]^p>, p = 3, 5: b_1 = 0, beta_1 = 1, b_1(F_p) = 2", c8_comm_p),
        ("knots: Alexander polynomials and b_1 at roots of unity", c9_knots),
        ("SNF, Fox identity, cyclotomic product, window stability", c10_algebra),
        ("universal Aomoto complex: D D = 0 and specializations = E^2", c11_universal_aomoto),
    ];
    let mut failed = 0;
    for (i, (desc, check)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match res {
            Ok(()) => println!("criterion {:>2}: PASS  {desc}", i + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {desc}: {m}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
