//! Smith normal form by pivot improvement.
//!
//! `smith` returns invertible `P`, `Q` and the nonzero invariant factors `d`
//! with `P·M·Q = diag(d)`, `d[i] ∣ d[i+1]`, each `d[i]` canonical.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::kaplansky;
use crate::matrix::{strict_maps, Matrix, MatrixError, Side};
use crate::rings::{BezoutDomain, Capability, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmithError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Pivot improvement bounded by the Euclidean norm of the pivot.
    Euclidean,
    /// Pivot improvement terminating by well-founded strict divisibility.
    Pid,
    /// Reduction to 2×2 blocks solved through the Kaplansky condition.
    Kaplansky,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Euclidean, Strategy::Pid, Strategy::Kaplansky];

    pub fn required(&self) -> Capability {
        match self {
            Strategy::Euclidean => Capability::Euclidean,
            Strategy::Pid => Capability::Pid,
            Strategy::Kaplansky => Capability::Gdco,
        }
    }

    /// Euclidean when available, else PID, else Kaplansky.
    pub fn preferred<R: BezoutDomain + ?Sized>(r: &R) -> Result<Self, RingError> {
        let caps = r.capabilities();
        [Strategy::Euclidean, Strategy::Pid, Strategy::Kaplansky]
            .into_iter()
            .find(|s| caps.has(s.required()))
            .ok_or_else(|| r.missing(Capability::Gdco))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Euclidean => "euclidean",
            Strategy::Pid => "pid",
            Strategy::Kaplansky => "kaplansky",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euclidean" => Ok(Strategy::Euclidean),
            "pid" => Ok(Strategy::Pid),
            "kaplansky" => Ok(Strategy::Kaplansky),
            other => Err(format!(
                "unknown strategy {other:?} (expected euclidean, pid or kaplansky)"
            )),
        }
    }
}

/// Termination argument used by [`improve_pivot`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Descent {
    /// At most `enorm(M(0,0)) + 1` rounds.
    Fuel,
    /// Unbounded, asserting strict divisibility every round.
    WellFounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithResult<E> {
    pub p: Matrix<E>,
    pub d: Vec<E>,
    pub q: Matrix<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotReport<E> {
    pub p: Matrix<E>,
    pub m: Matrix<E>,
    pub q: Matrix<E>,
}

/// Working triple `(P, W, Q)`: row operations hit `W` and `P`, column
/// operations hit `W` and `Q`.
pub(crate) struct Work<E> {
    pub p: Matrix<E>,
    pub w: Matrix<E>,
    pub q: Matrix<E>,
}

impl<E: Clone + PartialEq> Work<E> {
    pub fn new<R: BezoutDomain<Elem = E> + ?Sized>(r: &R, m: &Matrix<E>) -> Self {
        Work {
            p: Matrix::identity(r, m.rows()),
            w: m.clone(),
            q: Matrix::identity(r, m.cols()),
        }
    }

    pub fn swap(&mut self, side: Side, i: usize, j: usize) {
        match side {
            Side::Row => {
                self.w.swap_rows(i, j);
                self.p.swap_rows(i, j);
            }
            Side::Col => {
                self.w.swap_cols(i, j);
                self.q.swap_cols(i, j);
            }
        }
    }

    pub fn combine<R: BezoutDomain<Elem = E> + ?Sized>(
        &mut self,
        r: &R,
        side: Side,
        i: usize,
        j: usize,
        coef: [&E; 4],
    ) {
        match side {
            Side::Row => {
                self.w.combine_rows(r, i, j, coef);
                self.p.combine_rows(r, i, j, coef);
            }
            Side::Col => {
                self.w.combine_cols(r, i, j, coef);
                self.q.combine_cols(r, i, j, coef);
            }
        }
    }

    pub fn axpy<R: BezoutDomain<Elem = E> + ?Sized>(
        &mut self,
        r: &R,
        side: Side,
        target: usize,
        source: usize,
        factor: &E,
    ) {
        match side {
            Side::Row => {
                self.w.axpy_rows(r, target, source, factor);
                self.p.axpy_rows(r, target, source, factor);
            }
            Side::Col => {
                self.w.axpy_cols(r, target, source, factor);
                self.q.axpy_cols(r, target, source, factor);
            }
        }
    }

    /// Bézout step mixing lines `i` and `k` so that the entry at the pivot
    /// position becomes `gcd(a, b)`.
    pub fn bezout<R: BezoutDomain<Elem = E> + ?Sized>(
        &mut self,
        r: &R,
        side: Side,
        i: usize,
        k: usize,
        a: &E,
        b: &E,
    ) {
        let e = r.egcdr(a, b);
        let nb1 = r.neg(&e.b1);
        self.combine(r, side, i, k, [&e.u, &e.v, &nb1, &e.a1]);
    }
}

/// The `n × n` identity with `u, v` in row 0 and `−b1, a1` in row `k`
/// at columns `0` and `k`, from `egcdr(a, b)`.
pub fn bezout_mx<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
    n: usize,
    k: usize,
) -> Result<Matrix<R::Elem>, MatrixError> {
    if k == 0 || k >= n {
        return Err(MatrixError::IndexOutOfRange { index: k, bound: n });
    }
    let e = r.egcdr(a, b);
    let mut out = Matrix::identity(r, n);
    out[(0, 0)] = e.u;
    out[(0, k)] = e.v;
    out[(k, 0)] = r.neg(&e.b1);
    out[(k, k)] = e.a1;
    Ok(out)
}

/// Row side: `row 0 ← u·row 0 + v·row k`, `row k ← −b1·row 0 + a1·row k`.
/// Column side does the same to columns `0` and `k`.
pub fn bezout_step<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
    m: &Matrix<R::Elem>,
    k: usize,
    side: Side,
) -> Result<Matrix<R::Elem>, MatrixError> {
    let bound = match side {
        Side::Row => m.rows(),
        Side::Col => m.cols(),
    };
    if k == 0 || k >= bound {
        return Err(MatrixError::IndexOutOfRange { index: k, bound });
    }
    let e = r.egcdr(a, b);
    let nb1 = r.neg(&e.b1);
    let mut out = m.clone();
    match side {
        Side::Row => out.combine_rows(r, 0, k, [&e.u, &e.v, &nb1, &e.a1]),
        Side::Col => out.combine_cols(r, 0, k, [&e.u, &e.v, &nb1, &e.a1]),
    }
    Ok(out)
}

/// Improves the pivot `M(0,0)` until it divides every entry and fills
/// column 0. Returns `(P', M', Q')` with `P'·M·Q' = M'`.
pub fn improve_pivot<R: BezoutDomain + ?Sized>(
    r: &R,
    m: &Matrix<R::Elem>,
    descent: Descent,
) -> Result<PivotReport<R::Elem>, SmithError> {
    if m.rows() == 0 || m.cols() == 0 || r.is_zero(&m[(0, 0)]) {
        return Err(
            RingError::Precondition("improve_pivot needs a nonzero (0,0) entry".into()).into(),
        );
    }
    let mut work = Work::new(r, m);
    improve_at(r, &mut work, 0, descent)?;
    Ok(PivotReport {
        p: work.p,
        m: work.w,
        q: work.q,
    })
}

fn improve_at<R: BezoutDomain + ?Sized>(
    r: &R,
    work: &mut Work<R::Elem>,
    t: usize,
    descent: Descent,
) -> Result<(), SmithError> {
    let caps = r.capabilities();
    let fuel = match descent {
        Descent::Fuel => {
            if !caps.has(Capability::Euclidean) {
                return Err(r.missing(Capability::Euclidean).into());
            }
            Some(r.enorm(&work.w[(t, t)])? + BigUint::one())
        }
        Descent::WellFounded => {
            if !caps.has(Capability::Pid) {
                return Err(r.missing(Capability::Pid).into());
            }
            None
        }
    };
    let (rows, cols) = work.w.shape();
    let mut rounds = BigUint::ZERO;
    loop {
        let a = work.w[(t, t)].clone();
        if let Some(i) = (t + 1..rows).find(|&i| !r.divides(&a, &work.w[(i, t)])) {
            let b = work.w[(i, t)].clone();
            work.bezout(r, Side::Row, t, i, &a, &b);
        } else {
            for i in t + 1..rows {
                let qi = r.div_opt(&work.w[(i, t)], &a).ok_or_else(|| {
                    SmithError::Internal("pivot lost divisibility of column".into())
                })?;
                let f = r.sub(&r.one(), &qi);
                work.axpy(r, Side::Row, i, t, &f);
            }
            let found = (t..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !r.divides(&a, &work.w[(i, j)]));
            match found {
                None => return Ok(()),
                Some((i, j)) => {
                    work.swap(Side::Row, t, i);
                    let b = work.w[(t, j)].clone();
                    work.bezout(r, Side::Col, t, j, &a, &b);
                }
            }
        }
        let next = &work.w[(t, t)];
        match &fuel {
            Some(cap) => {
                rounds += 1u32;
                if &rounds > cap {
                    return Err(SmithError::Internal(format!(
                        "pivot improvement exhausted its fuel at {}",
                        r.format(next)
                    )));
                }
            }
            None => {
                if !r.strictly_divides(next, &a) {
                    return Err(SmithError::Internal(format!(
                        "pivot {} does not strictly divide {}",
                        r.format(next),
                        r.format(&a)
                    )));
                }
            }
        }
    }
}

/// Smith normal form of `m` with the given strategy.
pub fn smith<R: BezoutDomain + ?Sized>(
    r: &R,
    m: &Matrix<R::Elem>,
    strategy: Strategy,
) -> Result<SmithResult<R::Elem>, SmithError> {
    if !r.capabilities().has(strategy.required()) {
        return Err(r.missing(strategy.required()).into());
    }
    match strategy {
        Strategy::Euclidean => smith_by_pivots(r, m, Descent::Fuel),
        Strategy::Pid => smith_by_pivots(r, m, Descent::WellFounded),
        Strategy::Kaplansky => kaplansky::smithmxn(r, m, &|r, m| kaplansky::kap_smith2x2(r, m)),
    }
}

fn smith_by_pivots<R: BezoutDomain + ?Sized>(
    r: &R,
    m: &Matrix<R::Elem>,
    descent: Descent,
) -> Result<SmithResult<R::Elem>, SmithError> {
    let (rows, cols) = m.shape();
    let mut work = Work::new(r, m);
    let mut d = Vec::new();
    let mut acc = r.one();
    for t in 0..rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !r.is_zero(&work.w[(i, j)]));
        let Some((pi, pj)) = pivot else { break };
        work.swap(Side::Row, t, pi);
        work.swap(Side::Col, t, pj);
        improve_at(r, &mut work, t, descent)?;
        let a = work.w[(t, t)].clone();
        let minus_one = r.neg(&r.one());
        for i in t + 1..rows {
            work.axpy(r, Side::Row, i, t, &minus_one);
        }
        for j in t + 1..cols {
            let qj = r
                .div_opt(&work.w[(t, j)], &a)
                .ok_or_else(|| SmithError::Internal("pivot does not divide its row".into()))?;
            work.axpy(r, Side::Col, j, t, &r.neg(&qj));
        }
        for i in t + 1..rows {
            for j in t + 1..cols {
                work.w[(i, j)] = r.div_opt(&work.w[(i, j)], &a).ok_or_else(|| {
                    SmithError::Internal("trailing block not divisible by the pivot".into())
                })?;
            }
        }
        acc = r.mul(&acc, &a);
        d.push(acc.clone());
    }
    let (p, q) = (work.p, work.q);
    Ok(canonicalize(r, SmithResult { p, d, q }))
}

/// Scales row `i` of `P` so that every `d[i]` is its canonical associate.
pub(crate) fn canonicalize<R: BezoutDomain + ?Sized>(
    r: &R,
    mut res: SmithResult<R::Elem>,
) -> SmithResult<R::Elem> {
    for (i, di) in res.d.iter_mut().enumerate() {
        let w = r.normal_unit(di);
        if !r.is_one(&w) {
            res.p.scale_row(r, i, &w);
            *di = r.mul(&w, di);
        }
    }
    res
}

/// Per-clause verification of a Smith result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmithReport {
    pub shapes: bool,
    pub product: bool,
    pub sorted: bool,
    pub p_unit: bool,
    pub q_unit: bool,
    pub nonzero: bool,
    pub canonical: bool,
}

impl SmithReport {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.shapes, "shapes"),
            (self.product, "product"),
            (self.sorted, "sorted"),
            (self.p_unit, "p_unit"),
            (self.q_unit, "q_unit"),
            (self.nonzero, "nonzero"),
            (self.canonical, "canonical"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

pub fn verify_smith<R: BezoutDomain + ?Sized>(
    r: &R,
    m: &Matrix<R::Elem>,
    res: &SmithResult<R::Elem>,
) -> SmithReport {
    let (rows, cols) = m.shape();
    let shapes = res.p.shape() == (rows, rows)
        && res.q.shape() == (cols, cols)
        && res.d.len() <= rows.min(cols);
    let unit = |x: &Matrix<R::Elem>| x.is_square() && r.is_unit(&x.bareiss_det(r));
    let product = shapes
        && res
            .p
            .mul(r, m)
            .and_then(|pm| pm.mul(r, &res.q))
            .is_ok_and(|pmq| pmq == Matrix::diag_mx_seq(r, rows, cols, &res.d));
    SmithReport {
        shapes,
        product,
        sorted: res.d.windows(2).all(|w| r.divides(&w[0], &w[1])),
        p_unit: unit(&res.p),
        q_unit: unit(&res.q),
        nonzero: res.d.iter().all(|x| !r.is_zero(x)),
        canonical: res.d.iter().all(|x| r.canon(x) == *x),
    }
}

/// Canonical gcd of all `k × k` minors; 1 for `k = 0`.
pub fn determinantal_divisor<R: BezoutDomain + ?Sized>(
    r: &R,
    m: &Matrix<R::Elem>,
    k: usize,
) -> Result<R::Elem, MatrixError> {
    if k > m.rows().min(m.cols()) {
        return Err(MatrixError::IndexOutOfRange {
            index: k,
            bound: m.rows().min(m.cols()) + 1,
        });
    }
    let mut g = r.zero();
    for f in strict_maps(k, m.rows()) {
        for h in strict_maps(k, m.cols()) {
            g = r.gcd(&g, &m.minor(r, &f, &h)?);
            if r.is_one(&g) {
                return Ok(g);
            }
        }
    }
    if k == 0 {
        return Ok(r.one());
    }
    Ok(r.canon(&g))
}

/// `d` padded with zeros to `bound` entries.
pub fn smith_seq<R: BezoutDomain + ?Sized>(r: &R, d: &[R::Elem], bound: usize) -> Vec<R::Elem> {
    let mut out = d.to_vec();
    out.resize(bound.max(d.len()), r.zero());
    out
}

/// Pairwise associate equality after zero-padding to `bound`.
pub fn compare_invariant_factors<R: BezoutDomain + ?Sized>(
    r: &R,
    d1: &[R::Elem],
    d2: &[R::Elem],
    bound: usize,
) -> bool {
    let a = smith_seq(r, d1, bound);
    let b = smith_seq(r, d2, bound);
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| r.associates(x, y))
}

/// `gcd(a, b)` read off the Smith form of the row `[a b]`.
pub fn gcd_via_smith<R: BezoutDomain + ?Sized>(
    r: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<R::Elem, SmithError> {
    let m = Matrix::from_vec(1, 2, vec![a.clone(), b.clone()])?;
    let res = smith(r, &m, Strategy::preferred(r)?)?;
    Ok(res
        .d
        .first()
        .map(|g| r.canon(g))
        .unwrap_or_else(|| r.zero()))
}
