//! Built-in property suites, one per acceptance criterion, driven by a
//! seeded generator so that a failing run can be replayed with `EDR_SEED`.

use std::time::{Duration, Instant};

use edr_core::kaplansky::kap_w;
use edr_core::matrix::strict_maps;
use edr_core::smith::{
    bezout_mx, bezout_step, compare_invariant_factors, determinantal_divisor, smith, smith_seq,
    verify_smith,
};
use edr_core::{
    BezoutDomain, ChainComplex, Edr, FpPoly, IndexMap, Integers, Matrix, Presentation, QPoly, Ring,
    Side, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::ComplexFile;

pub const DEFAULT_SEED: u64 = 20_240_917;

type ZMatrix = Matrix<<Integers as Ring>::Elem>;
type FMatrix = Matrix<<FpPoly as Ring>::Elem>;
/// `(free rank, torsion)` of `H_0, H_1, …`.
type Betti = &'static [(usize, &'static [i64])];

/// Instance counts per suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scale {
    pub smith_z: usize,
    pub smith_f5: usize,
    pub agreement: usize,
    pub binet_cauchy: usize,
    pub bezout: usize,
    pub kaplansky_z: usize,
    pub kaplansky_f5: usize,
    pub gdco_b: i64,
    pub gdco_a: i64,
    pub coherence: usize,
    pub unimodular: usize,
}

impl Scale {
    pub fn full() -> Self {
        Scale {
            smith_z: 500,
            smith_f5: 200,
            agreement: 200,
            binet_cauchy: 200,
            bezout: 500,
            kaplansky_z: 1000,
            kaplansky_f5: 200,
            gdco_b: 200,
            gdco_a: 50,
            coherence: 300,
            unimodular: 100,
        }
    }

    pub fn quick() -> Self {
        Scale {
            smith_z: 40,
            smith_f5: 20,
            agreement: 20,
            binet_cauchy: 20,
            bezout: 50,
            kaplansky_z: 100,
            kaplansky_f5: 20,
            gdco_b: 30,
            gdco_a: 10,
            coherence: 30,
            unimodular: 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {}: {} ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed
        )
    }
}

type Check = fn(u64, &Scale) -> Result<String, String>;

pub const CRITERIA: [(u8, &str, Check); 10] = [
    (1, "Smith form", smith_form),
    (2, "determinantal divisors", determinantal),
    (3, "strategy agreement", agreement),
    (4, "Binet-Cauchy", binet_cauchy),
    (5, "bezout_step", bezout_steps),
    (6, "Kaplansky condition", kaplansky),
    (7, "gdco exhaustive", gdco_exhaustive),
    (8, "kernel coherence", coherence),
    (9, "module classification", classification),
    (10, "homology fixtures", homology_fixtures),
];

pub fn run_criterion(id: u8, seed: u64, scale: &Scale) -> CriterionResult {
    let (id, title, check) = CRITERIA
        .iter()
        .copied()
        .find(|c| c.0 == id)
        .unwrap_or_else(|| panic!("no criterion {id}"));
    let start = Instant::now();
    let outcome = check(seed, scale);
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all(seed: u64, scale: &Scale) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|c| run_criterion(c.0, seed, scale))
        .collect()
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut g = ChaCha8Rng::seed_from_u64(seed);
    g.set_stream(stream);
    g
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z_matrix(g: &mut ChaCha8Rng, max: usize, bound: i64) -> ZMatrix {
    let (m, n) = (g.gen_range(1..=max), g.gen_range(1..=max));
    z_sized(g, m, n, bound)
}

fn z_sized(g: &mut ChaCha8Rng, m: usize, n: usize, bound: i64) -> ZMatrix {
    let v: Vec<i64> = (0..m * n).map(|_| g.gen_range(-bound..=bound)).collect();
    Matrix::from_i64(&Integers, m, n, &v)
}

fn fp_poly(g: &mut ChaCha8Rng, r: &FpPoly, max_deg: usize) -> <FpPoly as Ring>::Elem {
    let len = g.gen_range(0..=max_deg + 1);
    let c: Vec<i64> = (0..len).map(|_| g.gen_range(0..5)).collect();
    r.from_ints(&c)
}

fn fp_matrix(g: &mut ChaCha8Rng, r: &FpPoly, max: usize) -> FMatrix {
    let (m, n) = (g.gen_range(1..=max), g.gen_range(1..=max));
    Matrix::from_fn(m, n, |_, _| fp_poly(g, r, 3))
}

fn q_poly(g: &mut ChaCha8Rng, r: &QPoly) -> <QPoly as Ring>::Elem {
    let len = g.gen_range(0..=3);
    let c: Vec<String> = (0..len)
        .map(|_| format!("{}/{}", g.gen_range(-5..=5), g.gen_range(1..=3)))
        .collect();
    r.parse(&format!("[{}]", c.join(",")))
        .expect("generated polynomial parses")
}

fn smith_corpus(seed: u64, scale: &Scale) -> (Vec<ZMatrix>, Vec<FMatrix>) {
    let mut g = rng(seed, 1);
    let f5 = FpPoly::new(5).expect("5 is prime");
    let z = (0..scale.smith_z)
        .map(|_| z_matrix(&mut g, 6, 50))
        .collect();
    let f = (0..scale.smith_f5)
        .map(|_| fp_matrix(&mut g, &f5, 4))
        .collect();
    (z, f)
}

fn spec_all<R: BezoutDomain>(r: &R, ms: &[Matrix<R::Elem>]) -> Result<usize, String> {
    let mut runs = 0;
    for m in ms {
        for s in Strategy::ALL {
            if !r.capabilities().has(s.required()) {
                continue;
            }
            let res =
                smith(r, m, s).map_err(|e| format!("{s} on {}x{}: {e}", m.rows(), m.cols()))?;
            let rep = verify_smith(r, m, &res);
            ensure(rep.all_pass(), || {
                format!("{s}: {:?} on {:?}", rep.failures(), m)
            })?;
            runs += 1;
        }
    }
    Ok(runs)
}

fn smith_form(seed: u64, scale: &Scale) -> Result<String, String> {
    let (z, f) = smith_corpus(seed, scale);
    let a = spec_all(&Integers, &z)?;
    let b = spec_all(&FpPoly::new(5).expect("prime"), &f)?;
    Ok(format!(
        "{} Z and {} F5[x] matrices, {} strategy runs verified",
        z.len(),
        f.len(),
        a + b
    ))
}

fn divisors_agree<R: BezoutDomain>(r: &R, ms: &[Matrix<R::Elem>]) -> Result<usize, String> {
    let mut checks = 0;
    for m in ms {
        let res = smith(r, m, Strategy::Euclidean).map_err(|e| e.to_string())?;
        let bound = m.rows().min(m.cols());
        let d = smith_seq(r, &res.d, bound);
        let mut prod = r.one();
        for k in 1..=bound {
            prod = r.mul(&prod, &d[k - 1]);
            let dk = determinantal_divisor(r, m, k).map_err(|e| e.to_string())?;
            ensure(r.associates(&prod, &dk), || {
                format!(
                    "k = {k}: {} vs gcd of minors {} for {:?}",
                    r.format(&prod),
                    r.format(&dk),
                    m
                )
            })?;
            checks += 1;
        }
    }
    Ok(checks)
}

fn determinantal(seed: u64, scale: &Scale) -> Result<String, String> {
    let (z, f) = smith_corpus(seed, scale);
    let a = divisors_agree(&Integers, &z)?;
    let b = divisors_agree(&FpPoly::new(5).expect("prime"), &f)?;
    Ok(format!("{} divisor products matched", a + b))
}

fn agreement(seed: u64, scale: &Scale) -> Result<String, String> {
    let mut g = rng(seed, 3);
    let r = Integers;
    for _ in 0..scale.agreement {
        let m = z_matrix(&mut g, 6, 50);
        let bound = m.rows().min(m.cols());
        let ds = Strategy::ALL
            .iter()
            .map(|&s| {
                smith(&r, &m, s)
                    .map(|x| (s, x.d))
                    .map_err(|e| format!("{s}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (s, d) in &ds[1..] {
            ensure(compare_invariant_factors(&r, d, &ds[0].1, bound), || {
                format!("{s} disagrees with {} on {:?}", ds[0].0, m)
            })?;
        }
    }
    Ok(format!(
        "{} inputs, {} strategies agree",
        scale.agreement,
        Strategy::ALL.len()
    ))
}

fn binet_one<R: BezoutDomain>(
    r: &R,
    m: &Matrix<R::Elem>,
    n: &Matrix<R::Elem>,
) -> Result<(), String> {
    let k = m.rows();
    let lhs = m
        .mul(r, n)
        .and_then(|p| p.determinant(r))
        .map_err(|e| e.to_string())?;
    let id = IndexMap::identity(k);
    let mut rhs = r.zero();
    for f in strict_maps(k, m.cols()) {
        let a = m.minor(r, &id, &f).map_err(|e| e.to_string())?;
        let b = n.minor(r, &f, &id).map_err(|e| e.to_string())?;
        rhs = r.add(&rhs, &r.mul(&a, &b));
    }
    ensure(lhs == rhs, || {
        format!("det {} but minor sum {}", r.format(&lhs), r.format(&rhs))
    })
}

fn binet_cauchy(seed: u64, scale: &Scale) -> Result<String, String> {
    let mut g = rng(seed, 4);
    let q = QPoly::new();
    for _ in 0..scale.binet_cauchy {
        let (k, l) = (g.gen_range(1..=3), g.gen_range(1..=6));
        binet_one(
            &Integers,
            &z_sized(&mut g, k, l, 9),
            &z_sized(&mut g, l, k, 9),
        )?;
        let m = Matrix::from_fn(k, l, |_, _| q_poly(&mut g, &q));
        let n = Matrix::from_fn(l, k, |_, _| q_poly(&mut g, &q));
        binet_one(&q, &m, &n)?;
    }
    Ok(format!(
        "{} products over Z and over Q[x]",
        scale.binet_cauchy
    ))
}

fn bezout_steps(seed: u64, scale: &Scale) -> Result<String, String> {
    let mut g = rng(seed, 5);
    let r = Integers;
    for _ in 0..scale.bezout {
        let (m, n) = (g.gen_range(2..=5), g.gen_range(2..=5));
        let mat = z_sized(&mut g, m, n, 30);
        let a = r.from_i64(g.gen_range(-100..=100));
        let b = r.from_i64(g.gen_range(-100..=100));
        let side = if g.gen_bool(0.5) {
            Side::Row
        } else {
            Side::Col
        };
        let dim = if side == Side::Row { m } else { n };
        let k = g.gen_range(1..dim);
        let step = bezout_step(&r, &a, &b, &mat, k, side).map_err(|e| e.to_string())?;
        let e = bezout_mx(&r, &a, &b, dim, k).map_err(|e| e.to_string())?;
        let product = match side {
            Side::Row => e.mul(&r, &mat),
            Side::Col => mat.mul(&r, &e.transpose()),
        }
        .map_err(|e| e.to_string())?;
        ensure(step == product, || {
            format!("{side:?} step k = {k} with a = {a}, b = {b} on {mat:?}")
        })?;
    }
    Ok(format!(
        "{} instances equal the matrix product",
        scale.bezout
    ))
}

fn kap_one<R: BezoutDomain>(r: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> Result<(), String> {
    let w = kap_w(r, a, b, c).map_err(|e| e.to_string())?;
    let pa = r.mul(&w.p, a);
    let s = r.add(&r.mul(&w.p, b), &r.mul(&w.q, c));
    ensure(r.is_unit(&r.gcd(&pa, &s)), || {
        format!(
            "gcd(pa, pb + qc) not a unit for ({}, {}, {})",
            r.format(a),
            r.format(b),
            r.format(c)
        )
    })?;
    let lhs = r.add(&r.mul(&w.x1, &pa), &r.mul(&w.y1, &s));
    ensure(r.is_one(&lhs), || {
        format!(
            "x1·pa + y1·(pb + qc) = {} for ({}, {}, {})",
            r.format(&lhs),
            r.format(a),
            r.format(b),
            r.format(c)
        )
    })
}

fn unit_triples<R: BezoutDomain>(
    r: &R,
    count: usize,
    mut draw: impl FnMut() -> R::Elem,
) -> Result<(), String> {
    let mut done = 0;
    while done < count {
        let (a, b, c) = (draw(), draw(), draw());
        if !r.is_unit(&r.gcd(&a, &r.gcd(&b, &c))) {
            continue;
        }
        kap_one(r, &a, &b, &c)?;
        done += 1;
    }
    Ok(())
}

fn kaplansky(seed: u64, scale: &Scale) -> Result<String, String> {
    let mut g = rng(seed, 6);
    let z = Integers;
    unit_triples(&z, scale.kaplansky_z, || {
        let v = match g.gen_range(0..4) {
            0 => 0,
            1 => g.gen_range(-6..=6),
            _ => g.gen_range(-1000..=1000),
        };
        z.from_i64(v)
    })?;
    let f5 = FpPoly::new(5).expect("prime");
    let mut g = rng(seed, 60);
    unit_triples(&f5, scale.kaplansky_f5, || fp_poly(&mut g, &f5, 3))?;
    Ok(format!(
        "{} Z and {} F5[x] unit triples",
        scale.kaplansky_z, scale.kaplansky_f5
    ))
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest divisor of `b` sharing no factor with `a`, by trial.
fn brute_gdco(a: i64, b: i64) -> i64 {
    (1..=b.abs())
        .rev()
        .find(|d| b % d == 0 && gcd_i64(*d, a) == 1)
        .expect("1 qualifies")
}

fn gdco_exhaustive(_seed: u64, scale: &Scale) -> Result<String, String> {
    let r = Integers;
    let mut pairs = 0;
    for a in -scale.gdco_a..=scale.gdco_a {
        for b in (-scale.gdco_b..=scale.gdco_b).filter(|b| *b != 0) {
            let got = r
                .gdco(&r.from_i64(a), &r.from_i64(b))
                .map_err(|e| e.to_string())?;
            let want = brute_gdco(a, b);
            ensure(r.associates(&got, &r.from_i64(want)), || {
                format!("gdco({a}, {b}) = {got}, expected {want}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs match trial division"))
}

/// Random matrix whose last row is an integer combination `c` of the
/// others, so that `[c | −1]` lies in the left kernel.
fn dependent_rows(g: &mut ChaCha8Rng) -> (ZMatrix, ZMatrix) {
    let r = Integers;
    let (m, n) = (g.gen_range(2..=5), g.gen_range(1..=5));
    let base = z_sized(g, m - 1, n, 9);
    let c = z_sized(g, 1, m - 1, 4);
    let last = c.mul(&r, &base).expect("shapes");
    let mat = Matrix::col_mx(&base, &last).expect("shapes");
    let x = Matrix::row_mx(&c, &Matrix::from_i64(&r, 1, 1, &[-1])).expect("shapes");
    (mat, x)
}

fn in_row_span(e: &Edr<Integers>, basis: &ZMatrix, x: &ZMatrix) -> Result<bool, String> {
    e.solve_xm_eq_b(basis, x)
        .map(|s| s.is_some())
        .map_err(|e| e.to_string())
}

fn coherence(seed: u64, scale: &Scale) -> Result<String, String> {
    let mut g = rng(seed, 8);
    let r = Integers;
    let e = Edr::new(Integers).map_err(|e| e.to_string())?;
    let err = |x: edr_core::SmithError| x.to_string();
    let mul = |a: &Matrix<_>, b: &Matrix<_>| a.mul(&r, b).map_err(|x| x.to_string());
    for _ in 0..scale.coherence {
        let (m, dep) = dependent_rows(&mut g);
        let k = e.kermx(&m).map_err(err)?;
        ensure(mul(&k, &m)?.is_zero(&r), || {
            format!("kermx·M ≠ 0 for {m:?}")
        })?;
        let y = z_sized(&mut g, 1, k.rows(), 5);
        ensure(mul(&mul(&y, &k)?, &m)?.is_zero(&r), || {
            format!("row span of kermx leaves the kernel of {m:?}")
        })?;
        ensure(in_row_span(&e, &k, &dep)?, || {
            format!("kernel vector {dep:?} not in the span of kermx {m:?}")
        })?;
        let x = z_sized(&mut g, 1, m.rows(), 3);
        ensure(mul(&x, &m)?.is_zero(&r) == in_row_span(&e, &k, &x)?, || {
            format!("kermx membership of {x:?} for {m:?}")
        })?;

        let mt = m.transpose();
        let c = e.cokermx(&mt).map_err(err)?;
        ensure(mul(&mt, &c)?.is_zero(&r), || {
            format!("M·cokermx ≠ 0 for {mt:?}")
        })?;
        let y = z_sized(&mut g, c.cols(), 1, 5);
        ensure(mul(&mt, &mul(&c, &y)?)?.is_zero(&r), || {
            format!("column span of cokermx leaves the kernel of {mt:?}")
        })?;
        ensure(in_row_span(&e, &c.transpose(), &dep)?, || {
            format!("{dep:?} not in the column span of cokermx {mt:?}")
        })?;
        let x = z_sized(&mut g, mt.cols(), 1, 3);
        ensure(
            mul(&mt, &x)?.is_zero(&r) == in_row_span(&e, &c.transpose(), &x.transpose())?,
            || format!("cokermx membership of {x:?} for {mt:?}"),
        )?;
    }
    Ok(format!(
        "{} matrices, kernel and cokernel both directions",
        scale.coherence
    ))
}

fn unimodular(g: &mut ChaCha8Rng, n: usize) -> ZMatrix {
    let r = Integers;
    let mut u = Matrix::identity(&r, n);
    for _ in 0..g.gen_range(5..=20) {
        let (i, j) = (g.gen_range(0..n), g.gen_range(0..n));
        if i == j {
            u.scale_row(&r, i, &r.from_i64(-1));
        } else {
            u.axpy_rows(&r, i, j, &r.from_i64(g.gen_range(-3..=3)));
        }
    }
    u
}

/// A presentation pair with hand-computed invariant factors of the first.
struct IsoCase {
    a: (usize, usize, &'static [i64]),
    b: (usize, usize, &'static [i64]),
    /// Nonzero invariant factors of `a`, including units.
    factors: &'static [i64],
    isomorphic: bool,
}

const fn case(
    a: (usize, usize, &'static [i64]),
    b: (usize, usize, &'static [i64]),
    factors: &'static [i64],
    isomorphic: bool,
) -> IsoCase {
    IsoCase {
        a,
        b,
        factors,
        isomorphic,
    }
}

const ISO_TABLE: [IsoCase; 20] = [
    case((2, 2, &[2, 0, 0, 3]), (1, 1, &[6]), &[1, 6], true),
    case((1, 1, &[4]), (2, 2, &[2, 0, 0, 2]), &[4], false),
    case((2, 2, &[2, 2, 0, 2]), (2, 2, &[2, 0, 0, 2]), &[2, 2], true),
    case((1, 1, &[0]), (0, 1, &[]), &[], true),
    case((1, 1, &[0]), (1, 1, &[1]), &[], false),
    case((1, 1, &[1]), (0, 0, &[]), &[1], true),
    case((2, 2, &[2, 4, 6, 8]), (2, 2, &[2, 0, 0, 4]), &[2, 4], true),
    case((2, 2, &[2, 4, 6, 8]), (1, 1, &[8]), &[2, 4], false),
    case(
        (2, 2, &[6, 0, 0, 10]),
        (2, 2, &[2, 0, 0, 30]),
        &[2, 30],
        true,
    ),
    case((2, 2, &[6, 0, 0, 10]), (1, 1, &[60]), &[2, 30], false),
    case((2, 2, &[3, 0, 0, 5]), (1, 1, &[15]), &[1, 15], true),
    case((1, 3, &[2, 0, 0]), (1, 3, &[0, 2, 0]), &[2], true),
    case((1, 3, &[2, 0, 0]), (2, 3, &[2, 0, 0, 0, 2, 0]), &[2], false),
    case((2, 2, &[1, 2, 3, 4]), (1, 1, &[2]), &[1, 2], true),
    case((1, 2, &[4, 6]), (1, 2, &[2, 0]), &[2], true),
    case((1, 2, &[4, 6]), (1, 2, &[4, 0]), &[2], false),
    case((2, 2, &[9, 0, 0, 3]), (1, 1, &[27]), &[3, 9], false),
    case(
        (2, 2, &[12, 18, 18, 12]),
        (2, 2, &[6, 0, 0, 30]),
        &[6, 30],
        true,
    ),
    case(
        (3, 3, &[2, 0, 0, 0, 4, 0, 0, 0, 8]),
        (3, 3, &[8, 0, 0, 0, 2, 0, 0, 0, 4]),
        &[2, 4, 8],
        true,
    ),
    case((2, 2, &[0, 0, 0, 0]), (1, 1, &[0]), &[], false),
];

fn check_iso_case(e: &Edr<Integers>, i: usize, c: &IsoCase) -> Result<(), String> {
    let r = Integers;
    let a = Matrix::from_i64(&r, c.a.0, c.a.1, c.a.2);
    let b = Matrix::from_i64(&r, c.b.0, c.b.1, c.b.2);
    let bound = a.rows().min(a.cols());
    let mut prod = r.one();
    for k in 1..=bound {
        let expected = match c.factors.get(k - 1) {
            Some(&f) => {
                prod = r.mul(&prod, &r.from_i64(f));
                prod.clone()
            }
            None => r.zero(),
        };
        let dk = determinantal_divisor(&r, &a, k).map_err(|e| e.to_string())?;
        ensure(r.associates(&dk, &expected), || {
            format!(
                "case {i}: hand factors {:?} disagree with minors at k = {k}",
                c.factors
            )
        })?;
    }
    let dec = e
        .decompose(&Presentation::new(a.clone()))
        .map_err(|e| e.to_string())?;
    let torsion: Vec<i64> = c.factors.iter().copied().filter(|f| f.abs() != 1).collect();
    ensure(
        dec.free_rank == a.cols() - c.factors.len()
            && dec.torsion == torsion.iter().map(|t| r.from_i64(*t)).collect::<Vec<_>>(),
        || {
            format!(
                "case {i}: decomposition {dec:?}, hand factors {:?}",
                c.factors
            )
        },
    )?;
    let iso = e
        .is_isomorphic(&Presentation::new(a), &Presentation::new(b))
        .map_err(|e| e.to_string())?;
    ensure(iso == c.isomorphic, || {
        format!("case {i}: is_isomorphic returned {iso}")
    })
}

fn classification(seed: u64, scale: &Scale) -> Result<String, String> {
    let mut g = rng(seed, 9);
    let r = Integers;
    let e = Edr::new(Integers).map_err(|e| e.to_string())?;
    for _ in 0..scale.unimodular {
        let m = z_matrix(&mut g, 5, 10);
        let changed = unimodular(&mut g, m.rows())
            .mul(&r, &m)
            .and_then(|x| x.mul(&r, &unimodular(&mut g, m.cols())))
            .map_err(|e| e.to_string())?;
        let (a, b) = (Presentation::new(m), Presentation::new(changed));
        let (da, db) = (
            e.decompose(&a).map_err(|e| e.to_string())?,
            e.decompose(&b).map_err(|e| e.to_string())?,
        );
        ensure(da == db, || {
            format!("decomposition changed under unimodular change: {da:?} vs {db:?}")
        })?;
    }
    for (i, c) in ISO_TABLE.iter().enumerate() {
        check_iso_case(&e, i + 1, c)?;
    }
    Ok(format!(
        "{} unimodular changes, {} fixture cases",
        scale.unimodular,
        ISO_TABLE.len()
    ))
}

/// Stored complexes with their homology.
pub const HOMOLOGY_FIXTURES: [(&str, &str, Betti); 6] = [
    (
        "point",
        include_str!("../fixtures/point.json"),
        &[(1, &[]), (0, &[])],
    ),
    (
        "circle",
        include_str!("../fixtures/circle.json"),
        &[(1, &[]), (1, &[])],
    ),
    (
        "sphere",
        include_str!("../fixtures/sphere.json"),
        &[(1, &[]), (0, &[]), (1, &[])],
    ),
    (
        "torus",
        include_str!("../fixtures/torus.json"),
        &[(1, &[]), (2, &[]), (1, &[])],
    ),
    (
        "klein",
        include_str!("../fixtures/klein.json"),
        &[(1, &[]), (1, &[2]), (0, &[])],
    ),
    (
        "rp2",
        include_str!("../fixtures/rp2.json"),
        &[(1, &[]), (0, &[2]), (0, &[])],
    ),
];

fn homology_fixtures(_seed: u64, _scale: &Scale) -> Result<String, String> {
    let r = Integers;
    let e = Edr::new(Integers).map_err(|e| e.to_string())?;
    for (name, text, expected) in HOMOLOGY_FIXTURES {
        let (_, file) = ComplexFile::parse(text).map_err(|e| format!("{name}: {e}"))?;
        let boundaries = file
            .boundaries
            .iter()
            .map(|b| b.build(&r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("{name}: {e}"))?;
        let c = ChainComplex::new(&r, boundaries).map_err(|e| format!("{name}: {e}"))?;
        let hs = e.homology_all(&c).map_err(|e| format!("{name}: {e}"))?;
        ensure(hs.len() == expected.len(), || {
            format!("{name}: {} degrees", hs.len())
        })?;
        for (k, (h, (free, torsion))) in hs.iter().zip(expected.iter()).enumerate() {
            let t: Vec<_> = torsion.iter().map(|x| r.from_i64(*x)).collect();
            ensure(h.free_rank == *free && h.torsion == t, || {
                format!("{name}: H{k} = {h:?}")
            })?;
        }
        let betti: i64 = hs
            .iter()
            .enumerate()
            .map(|(k, h)| {
                if k % 2 == 0 {
                    h.free_rank as i64
                } else {
                    -(h.free_rank as i64)
                }
            })
            .sum();
        ensure(betti == c.euler_characteristic(), || {
            format!(
                "{name}: Betti sum {betti} vs chain Euler characteristic {}",
                c.euler_characteristic()
            )
        })?;
    }
    Ok(format!(
        "{} complexes, Euler characteristics agree",
        HOMOLOGY_FIXTURES.len()
    ))
}
