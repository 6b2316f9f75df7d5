//! Finitely presented modules over an elementary divisor ring.
//!
//! Vectors are rows: the kernel of `M` is `{X : X·M = 0}` and a presentation
//! matrix `M` (relations × generators) presents `R^{m0} / (row space of M)`.

use thiserror::Error;

use crate::matrix::{Matrix, MatrixError};
use crate::rings::{BezoutDomain, Capability, RingError};
use crate::smith::{smith, SmithError, SmithResult, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpmodError {
    #[error(transparent)]
    Smith(#[from] SmithError),
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<MatrixError> for FpmodError {
    fn from(e: MatrixError) -> Self {
        FpmodError::Smith(e.into())
    }
}

impl From<RingError> for FpmodError {
    fn from(e: RingError) -> Self {
        FpmodError::Smith(e.into())
    }
}

/// The module `coker(M) = R^{m0} / im(M)` for an `m1 × m0` matrix `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation<E> {
    pub matrix: Matrix<E>,
}

impl<E: Clone> Presentation<E> {
    pub fn new(matrix: Matrix<E>) -> Self {
        Presentation { matrix }
    }

    pub fn relations(&self) -> usize {
        self.matrix.rows()
    }

    pub fn generators(&self) -> usize {
        self.matrix.cols()
    }
}

/// A module map given on generators, with `M·phi_g = phi_r·N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism<E> {
    pub source: Presentation<E>,
    pub target: Presentation<E>,
    pub phi_g: Matrix<E>,
    pub phi_r: Matrix<E>,
}

/// `R^free_rank ⊕ R/(t_1) ⊕ … ⊕ R/(t_k)` with `t_i ∣ t_{i+1}`, canonical,
/// neither zero nor units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecomposition<E> {
    pub free_rank: usize,
    pub torsion: Vec<E>,
}

impl<E> ModuleDecomposition<E> {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Boundary maps `∂_1, ∂_2, …`, `∂_k` of shape `dim C_k × dim C_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex<E> {
    boundaries: Vec<Matrix<E>>,
}

impl<E: Clone + PartialEq> ChainComplex<E> {
    /// Checks the shapes chain and that `∂_{k+1}·∂_k = 0`.
    pub fn new<R: BezoutDomain<Elem = E> + ?Sized>(
        r: &R,
        boundaries: Vec<Matrix<E>>,
    ) -> Result<Self, FpmodError> {
        if boundaries.is_empty() {
            return Err(FpmodError::InvalidComplex("no boundary maps".into()));
        }
        for (k, pair) in boundaries.windows(2).enumerate() {
            let (lower, upper) = (&pair[0], &pair[1]);
            if upper.cols() != lower.rows() {
                return Err(FpmodError::InvalidComplex(format!(
                    "boundary {} has {} columns but boundary {} has {} rows",
                    k + 2,
                    upper.cols(),
                    k + 1,
                    lower.rows()
                )));
            }
            if !upper.mul(r, lower)?.is_zero(r) {
                return Err(FpmodError::InvalidComplex(format!(
                    "boundary {} composed with boundary {} is nonzero",
                    k + 2,
                    k + 1
                )));
            }
        }
        Ok(ChainComplex { boundaries })
    }

    pub fn boundaries(&self) -> &[Matrix<E>] {
        &self.boundaries
    }

    /// `∂_k` for `1 ≤ k ≤ top`.
    pub fn boundary(&self, k: usize) -> Option<&Matrix<E>> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Highest degree with a nonzero chain group.
    pub fn top(&self) -> usize {
        self.boundaries.len()
    }

    pub fn dim(&self, k: usize) -> usize {
        match k {
            0 => self.boundaries[0].cols(),
            _ => self.boundary(k).map_or(0, Matrix::rows),
        }
    }

    /// `Σ (−1)^k dim C_k`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top())
            .map(|k| {
                if k % 2 == 0 {
                    self.dim(k) as i64
                } else {
                    -(self.dim(k) as i64)
                }
            })
            .sum()
    }
}

/// An elementary divisor ring together with the Smith strategy it uses.
#[derive(Debug, Clone)]
pub struct Edr<R> {
    ring: R,
    strategy: Strategy,
}

impl<R: BezoutDomain> Edr<R> {
    /// Euclidean strategy when the ring is Euclidean, Kaplansky otherwise.
    pub fn new(ring: R) -> Result<Self, RingError> {
        let caps = ring.capabilities();
        let strategy = if caps.has(Capability::Euclidean) {
            Strategy::Euclidean
        } else if caps.has(Capability::Gdco) {
            Strategy::Kaplansky
        } else {
            return Err(ring.missing(Capability::Gdco));
        };
        Ok(Edr { ring, strategy })
    }

    pub fn with_strategy(ring: R, strategy: Strategy) -> Result<Self, RingError> {
        if !ring.capabilities().has(strategy.required()) {
            return Err(ring.missing(strategy.required()));
        }
        Ok(Edr { ring, strategy })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn smith(&self, m: &Matrix<R::Elem>) -> Result<SmithResult<R::Elem>, SmithError> {
        smith(&self.ring, m, self.strategy)
    }

    pub fn mxrank(&self, m: &Matrix<R::Elem>) -> Result<usize, SmithError> {
        Ok(self.smith(m)?.d.len())
    }

    /// `(I − I_r)·P`: rows `r..` of `P`, zero rows above.
    pub fn kermx(&self, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>, SmithError> {
        let res = self.smith(m)?;
        let rank = res.d.len();
        let mut k = res.p;
        for i in 0..rank {
            for j in 0..k.cols() {
                k[(i, j)] = self.ring.zero();
            }
        }
        Ok(k)
    }

    /// A basis of the row kernel: rows `r..` of `P`.
    pub fn kernel_basis(&self, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>, SmithError> {
        let res = self.smith(m)?;
        Ok(res.p.rows_from(res.d.len()))
    }

    /// `Q·(I − I_r)`: columns `r..` of `Q`, zero columns before.
    pub fn cokermx(&self, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>, SmithError> {
        let res = self.smith(m)?;
        let rank = res.d.len();
        let mut c = res.q;
        for i in 0..c.rows() {
            for j in 0..rank {
                c[(i, j)] = self.ring.zero();
            }
        }
        Ok(c)
    }

    /// `ys` with `x = Σ gens[i]·ys[i]`, when `x` lies in the ideal.
    pub fn ideal_member(&self, x: &R::Elem, gens: &[R::Elem]) -> Option<Vec<R::Elem>> {
        let r = &self.ring;
        let mut g = r.zero();
        let mut coefs: Vec<R::Elem> = Vec::with_capacity(gens.len());
        for gen in gens {
            let e = r.egcdr(&g, gen);
            for c in coefs.iter_mut() {
                *c = r.mul(c, &e.u);
            }
            coefs.push(e.v);
            g = e.g;
        }
        if r.is_zero(&g) {
            return r.is_zero(x).then(|| vec![r.zero(); gens.len()]);
        }
        let f = r.div_opt(x, &g)?;
        Some(coefs.iter().map(|c| r.mul(c, &f)).collect())
    }

    /// `X` with `X·M = B`, if one exists.
    pub fn solve_xm_eq_b(
        &self,
        m: &Matrix<R::Elem>,
        b: &Matrix<R::Elem>,
    ) -> Result<Option<Matrix<R::Elem>>, SmithError> {
        if m.cols() != b.cols() {
            return Err(MatrixError::DimensionMismatch {
                op: "solve",
                left: m.shape(),
                right: b.shape(),
            }
            .into());
        }
        let r = &self.ring;
        let res = self.smith(m)?;
        let c = b.mul(r, &res.q)?;
        let rank = res.d.len();
        let mut y = Matrix::zeros(r, b.rows(), m.rows());
        for i in 0..b.rows() {
            for j in 0..c.cols() {
                if j < rank {
                    match r.div_opt(&c[(i, j)], &res.d[j]) {
                        Some(v) => y[(i, j)] = v,
                        None => return Ok(None),
                    }
                } else if !r.is_zero(&c[(i, j)]) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(y.mul(r, &res.p)?))
    }

    pub fn decompose(
        &self,
        p: &Presentation<R::Elem>,
    ) -> Result<ModuleDecomposition<R::Elem>, SmithError> {
        let r = &self.ring;
        let res = self.smith(&p.matrix)?;
        Ok(ModuleDecomposition {
            free_rank: p.generators() - res.d.len(),
            torsion: res
                .d
                .iter()
                .filter(|x| !r.is_unit(x))
                .map(|x| r.canon(x))
                .collect(),
        })
    }

    pub fn is_isomorphic(
        &self,
        a: &Presentation<R::Elem>,
        b: &Presentation<R::Elem>,
    ) -> Result<bool, SmithError> {
        Ok(self.decompose(a)? == self.decompose(b)?)
    }

    /// The morphism induced by `phi_g` on generators, when it respects the
    /// relations.
    pub fn morphism_make(
        &self,
        source: &Presentation<R::Elem>,
        target: &Presentation<R::Elem>,
        phi_g: &Matrix<R::Elem>,
    ) -> Result<Option<Morphism<R::Elem>>, SmithError> {
        if phi_g.shape() != (source.generators(), target.generators()) {
            return Err(MatrixError::DimensionMismatch {
                op: "morphism",
                left: phi_g.shape(),
                right: (source.generators(), target.generators()),
            }
            .into());
        }
        let image = source.matrix.mul(&self.ring, phi_g)?;
        Ok(self
            .solve_xm_eq_b(&target.matrix, &image)?
            .map(|phi_r| Morphism {
                source: source.clone(),
                target: target.clone(),
                phi_g: phi_g.clone(),
                phi_r,
            }))
    }

    /// `H_k = ker ∂_k / im ∂_{k+1}`.
    pub fn homology(
        &self,
        c: &ChainComplex<R::Elem>,
        k: usize,
    ) -> Result<ModuleDecomposition<R::Elem>, FpmodError> {
        let r = &self.ring;
        if k > c.top() {
            return Ok(ModuleDecomposition {
                free_rank: 0,
                torsion: Vec::new(),
            });
        }
        let basis = match c.boundary(k) {
            None => Matrix::identity(r, c.dim(0)),
            Some(d) => self.kernel_basis(d)?,
        };
        let relations = match c.boundary(k + 1) {
            None => Matrix::zeros(r, 0, basis.rows()),
            Some(d) => self.solve_xm_eq_b(&basis, d)?.ok_or_else(|| {
                FpmodError::Internal(format!("image of boundary {} is not in the kernel", k + 1))
            })?,
        };
        Ok(self.decompose(&Presentation::new(relations))?)
    }

    pub fn homology_all(
        &self,
        c: &ChainComplex<R::Elem>,
    ) -> Result<Vec<ModuleDecomposition<R::Elem>>, FpmodError> {
        (0..=c.top()).map(|k| self.homology(c, k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{Integers, QPoly, Ring};
    use num_bigint::BigInt;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn zm(m: usize, n: usize, v: &[i64]) -> Matrix<BigInt> {
        Matrix::from_i64(&Integers, m, n, v)
    }

    fn edr() -> Edr<Integers> {
        Edr::new(Integers).unwrap()
    }

    #[test]
    fn default_strategies() {
        assert_eq!(edr().strategy(), Strategy::Euclidean);
        assert_eq!(
            Edr::new(QPoly::new()).unwrap().strategy(),
            Strategy::Euclidean
        );
        assert_eq!(
            Edr::with_strategy(Integers, Strategy::Kaplansky)
                .unwrap()
                .strategy(),
            Strategy::Kaplansky
        );
    }

    #[test]
    fn mxrank_examples() {
        let e = edr();
        assert_eq!(e.mxrank(&zm(2, 3, &[0; 6])).unwrap(), 0);
        assert_eq!(e.mxrank(&Matrix::identity(&Integers, 4)).unwrap(), 4);
        assert_eq!(e.mxrank(&zm(2, 2, &[2, 4, 6, 8])).unwrap(), 2);
    }

    #[test]
    fn kermx_examples() {
        let e = edr();
        let r = Integers;
        assert!(e.kermx(&Matrix::identity(&r, 3)).unwrap().is_zero(&r));
        let zero = zm(2, 3, &[0; 6]);
        let res = e.smith(&zero).unwrap();
        assert_eq!(e.kermx(&zero).unwrap(), res.p);
        let m = zm(2, 2, &[2, 0, 0, 0]);
        let k = e.kermx(&m).unwrap();
        assert!(k.mul(&r, &m).unwrap().is_zero(&r));
        assert!(e.solve_xm_eq_b(&k, &zm(1, 2, &[0, 1])).unwrap().is_some());
        assert!(e.solve_xm_eq_b(&k, &zm(1, 2, &[1, 0])).unwrap().is_none());
    }

    #[test]
    fn cokermx_examples() {
        let e = edr();
        let r = Integers;
        assert!(e.cokermx(&Matrix::identity(&r, 2)).unwrap().is_zero(&r));
        let zero = zm(3, 2, &[0; 6]);
        assert_eq!(e.cokermx(&zero).unwrap(), e.smith(&zero).unwrap().q);
        let m = zm(2, 2, &[2, 0, 0, 0]);
        let c = e.cokermx(&m).unwrap();
        assert!(m.mul(&r, &c).unwrap().is_zero(&r));
        let ct = c.transpose();
        assert!(e.solve_xm_eq_b(&ct, &zm(1, 2, &[0, 1])).unwrap().is_some());
        assert!(e.solve_xm_eq_b(&ct, &zm(1, 2, &[1, 0])).unwrap().is_none());
    }

    #[test]
    fn ideal_member_examples() {
        let e = edr();
        let ys = e.ideal_member(&z(6), &[z(4), z(10)]).unwrap();
        assert_eq!(&ys[0] * 4 + &ys[1] * 10, z(6));
        assert!(e.ideal_member(&z(3), &[z(4), z(10)]).is_none());
        assert_eq!(e.ideal_member(&z(0), &[]), Some(vec![]));
        assert!(e.ideal_member(&z(1), &[]).is_none());
        assert_eq!(e.ideal_member(&z(0), &[z(0)]), Some(vec![z(0)]));
    }

    #[test]
    fn solve_examples() {
        let e = edr();
        assert_eq!(
            e.solve_xm_eq_b(&zm(1, 1, &[2]), &zm(1, 1, &[6])).unwrap(),
            Some(zm(1, 1, &[3]))
        );
        assert_eq!(
            e.solve_xm_eq_b(&zm(1, 1, &[2]), &zm(1, 1, &[3])).unwrap(),
            None
        );
        let x = e
            .solve_xm_eq_b(&zm(2, 2, &[1, 2, 3, 4]), &zm(3, 2, &[0; 6]))
            .unwrap()
            .unwrap();
        assert!(x.is_zero(&Integers));
        assert!(e
            .solve_xm_eq_b(&zm(1, 2, &[1, 2]), &zm(1, 1, &[1]))
            .is_err());
    }

    #[test]
    fn solve_matches_exhaustive_search() {
        let e = edr();
        let r = Integers;
        let m = zm(2, 2, &[2, 4, 0, 6]);
        for b0 in -6..=6 {
            for b1 in -6..=6 {
                let b = zm(1, 2, &[b0, b1]);
                let brute =
                    (-12..=12).any(|x0| (-12..=12).any(|x1| 2 * x0 == b0 && 4 * x0 + 6 * x1 == b1));
                let got = e.solve_xm_eq_b(&m, &b).unwrap();
                assert_eq!(got.is_some(), brute, "b = [{b0}, {b1}]");
                if let Some(x) = got {
                    assert_eq!(x.mul(&r, &m).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let e = edr();
        let d = e
            .decompose(&Presentation::new(zm(2, 2, &[2, 0, 0, 3])))
            .unwrap();
        assert_eq!(
            d,
            ModuleDecomposition {
                free_rank: 0,
                torsion: vec![z(6)]
            }
        );
        let d = e.decompose(&Presentation::new(zm(1, 2, &[0, 0]))).unwrap();
        assert_eq!(
            d,
            ModuleDecomposition {
                free_rank: 2,
                torsion: vec![]
            }
        );
        assert!(e
            .decompose(&Presentation::new(zm(1, 1, &[1])))
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn isomorphism_examples() {
        let e = edr();
        let p = |m, n, v: &[i64]| Presentation::new(zm(m, n, v));
        assert!(e.is_isomorphic(&p(1, 1, &[2]), &p(1, 1, &[-2])).unwrap());
        assert!(!e.is_isomorphic(&p(1, 1, &[2]), &p(1, 1, &[3])).unwrap());
        assert!(e
            .is_isomorphic(&p(2, 2, &[1, 0, 0, 2]), &p(1, 1, &[2]))
            .unwrap());
        assert!(!e
            .is_isomorphic(&p(1, 1, &[4]), &p(2, 2, &[2, 0, 0, 2]))
            .unwrap());
    }

    #[test]
    fn morphism_examples() {
        let e = edr();
        let r = Integers;
        let a = Presentation::new(zm(1, 1, &[2]));
        let b = Presentation::new(zm(1, 1, &[3]));
        let id = Matrix::identity(&r, 1);
        let m = e.morphism_make(&a, &a, &id).unwrap().unwrap();
        assert_eq!(
            a.matrix.mul(&r, &m.phi_g).unwrap(),
            m.phi_r.mul(&r, &a.matrix).unwrap()
        );
        assert!(e.morphism_make(&a, &b, &id).unwrap().is_none());
        let m = e.morphism_make(&a, &b, &zm(1, 1, &[0])).unwrap().unwrap();
        assert!(m.phi_r.is_zero(&r));
        let m = e
            .morphism_make(&a, &Presentation::new(zm(1, 1, &[4])), &zm(1, 1, &[2]))
            .unwrap()
            .unwrap();
        assert_eq!(m.phi_r, zm(1, 1, &[1]));
    }

    fn cx(parts: &[(usize, usize, &[i64])]) -> ChainComplex<BigInt> {
        ChainComplex::new(
            &Integers,
            parts.iter().map(|&(m, n, v)| zm(m, n, v)).collect(),
        )
        .unwrap()
    }

    fn summary(e: &Edr<Integers>, c: &ChainComplex<BigInt>) -> Vec<(usize, Vec<BigInt>)> {
        e.homology_all(c)
            .unwrap()
            .into_iter()
            .map(|h| (h.free_rank, h.torsion))
            .collect()
    }

    #[test]
    fn homology_of_small_spaces() {
        let e = edr();
        let point = cx(&[(0, 1, &[])]);
        assert_eq!(summary(&e, &point), vec![(1, vec![]), (0, vec![])]);
        let circle = cx(&[(2, 2, &[-1, 1, -1, 1])]);
        assert_eq!(summary(&e, &circle), vec![(1, vec![]), (1, vec![])]);
        let rp2 = cx(&[(3, 2, &[-1, 1, -1, 1, 0, 0]), (2, 3, &[-1, 1, 1, 1, -1, 1])]);
        assert_eq!(
            summary(&e, &rp2),
            vec![(1, vec![]), (0, vec![z(2)]), (0, vec![])]
        );
        let klein = cx(&[(3, 1, &[0, 0, 0]), (2, 3, &[1, 1, -1, 1, -1, 1])]);
        assert_eq!(
            summary(&e, &klein),
            vec![(1, vec![]), (1, vec![z(2)]), (0, vec![])]
        );
        assert!(e.homology(&klein, 7).unwrap().is_trivial());
    }

    #[test]
    fn complex_validation() {
        let r = Integers;
        assert!(ChainComplex::new(&r, vec![zm(2, 2, &[1, 0, 0, 1]), zm(1, 2, &[1, 0])]).is_err());
        assert!(
            ChainComplex::new(&r, vec![zm(2, 2, &[1, 0, 0, 1]), zm(1, 3, &[1, 0, 0])]).is_err()
        );
        assert!(ChainComplex::<BigInt>::new(&r, vec![]).is_err());
    }

    #[test]
    fn qpoly_module() {
        let r = QPoly::new();
        let e = Edr::new(r.clone()).unwrap();
        let x = r.x();
        let m = Matrix::diag_mx_seq(&r, 2, 3, &[x.clone(), r.mul(&x, &x)]);
        let d = e.decompose(&Presentation::new(m)).unwrap();
        assert_eq!(d.free_rank, 1);
        assert_eq!(d.torsion, vec![x.clone(), r.mul(&x, &x)]);
    }
}
