//! Spectral covers of a one-dimensional base: discriminants, branch points
//! and ramification, plus the conic-bundle degree bookkeeping and the fiber
//! Picard decomposition.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, ModelKind, SurfaceModel};
use crate::linalg;
use crate::poly::UniPoly;

/// Polynomial in `u` with coefficients in `Q[t]`, low degree first.
pub type BiPoly = Vec<UniPoly>;

/// Monic `F(t, u) = u^n + c_{n-1}(t) u^{n-1} + ... + c_0(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPoly {
    coeffs: Vec<UniPoly>,
}

impl CoverPoly {
    /// From the non-leading coefficients `c_0, ..., c_{n-1}`.
    pub fn new(coeffs: Vec<UniPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidCover("degree must be at least 1".into()));
        }
        Ok(Self { coeffs })
    }

    /// From all coefficients `c_0, ..., c_n`; `c_n` must be `1`.
    pub fn from_full(mut coeffs: Vec<UniPoly>) -> Result<Self> {
        match coeffs.pop() {
            Some(lead) if lead == UniPoly::one() => Self::new(coeffs),
            Some(lead) => Err(Error::InvalidCover(format!("leading coefficient is {lead}, not 1"))),
            None => Err(Error::InvalidCover("no coefficients".into())),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn full(&self) -> BiPoly {
        let mut v = self.coeffs.clone();
        v.push(UniPoly::one());
        v
    }

    pub fn derivative_u(&self) -> BiPoly {
        bi_derivative(&self.full())
    }

    /// `F(t0, u)` as a polynomial in `u`.
    pub fn at(&self, t0: &BigRational) -> UniPoly {
        UniPoly::new(self.full().iter().map(|c| c.eval(t0)).collect())
    }

    pub fn display(&self) -> String {
        let mut terms = vec![format!("u^{}", self.degree())];
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "*u".into(),
                _ => format!("*u^{k}"),
            };
            terms.push(format!("({c}){mono}"));
        }
        terms.join(" + ")
    }
}

fn bi_trim(mut p: BiPoly) -> BiPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn bi_degree(p: &BiPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

fn bi_derivative(p: &BiPoly) -> BiPoly {
    bi_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&BigRational::from_integer(k.into())))
            .collect(),
    )
}

fn bi_scale(p: &BiPoly, k: &UniPoly) -> BiPoly {
    bi_trim(p.iter().map(|c| c * k).collect())
}

fn bi_exact_div(p: &BiPoly, k: &UniPoly) -> BiPoly {
    p.iter()
        .map(|c| c.exact_div(k).expect("exact division in Q[t]"))
        .collect()
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a mod b`.
fn bi_prem(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let db = bi_degree(b).expect("nonzero divisor");
    let lb = b[db].clone();
    let mut r = a.clone();
    let Some(da) = bi_degree(a) else {
        return Vec::new();
    };
    if da < db {
        return r;
    }
    for _ in 0..=da - db {
        r = bi_trim(r);
        let Some(dr) = bi_degree(&r) else {
            break;
        };
        // r <- lb r - lc(r) u^(dr - db) b, or just lb r once r is short
        let lr = r.get(dr).cloned().unwrap_or_default();
        let mut next = bi_scale(&r, &lb);
        next.resize(next.len().max(dr + 1), UniPoly::zero());
        if dr >= db {
            for (j, bc) in b.iter().enumerate() {
                let idx = dr - db + j;
                next[idx] = &next[idx] - &(&lr * bc);
            }
        }
        r = next;
    }
    bi_trim(r)
}

fn pow(p: &UniPoly, e: usize) -> UniPoly {
    p.pow(e as u32)
}

/// Resultant in `u` as the determinant of the Sylvester matrix, evaluated
/// by fraction-free Bareiss elimination over `Q[t]`.
pub fn resultant_sylvester(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let (Some(m), Some(n)) = (bi_degree(f), bi_degree(g)) else {
        return UniPoly::zero();
    };
    let size = m + n;
    if size == 0 {
        return UniPoly::one();
    }
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in f.iter().enumerate() {
            mat[r][r + m - k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.iter().enumerate() {
            mat[n + r][r + n - k] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    let mut sign = BigRational::one();
    let mut prev = UniPoly::one();
    for k in 0..n.saturating_sub(1) {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return UniPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

/// Resultant in `u` by the subresultant pseudo-remainder sequence.
pub fn resultant_subresultant(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let (mut a, mut b) = (bi_trim(f.clone()), bi_trim(g.clone()));
    if a.is_empty() || b.is_empty() {
        return UniPoly::zero();
    }
    let mut s = BigRational::one();
    if bi_degree(&a) < bi_degree(&b) {
        if bi_degree(&a).unwrap() % 2 == 1 && bi_degree(&b).unwrap() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if bi_degree(&b) == Some(0) {
        return pow(&b[0], bi_degree(&a).unwrap());
    }
    let mut g_ = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let da = bi_degree(&a).unwrap();
        let db = bi_degree(&b).unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = bi_prem(&a, &b);
        if r.is_empty() {
            return UniPoly::zero();
        }
        a = b;
        let divisor = &g_ * &pow(&h, delta);
        b = bi_exact_div(&r, &divisor);
        g_ = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            pow(&g_, delta)
                .exact_div(&pow(&h, delta - 1))
                .expect("subresultant division is exact")
        };
        if bi_degree(&b) == Some(0) {
            let da = bi_degree(&a).unwrap();
            let lb = &b[0];
            let out = pow(lb, da)
                .exact_div(&pow(&h, da - 1))
                .expect("subresultant division is exact");
            return out.scale(&s);
        }
    }
}

/// `Res_u(F, dF/du)`; the zero polynomial means the cover is not reduced.
pub fn discriminant(cover: &CoverPoly) -> Result<UniPoly> {
    let d = resultant_sylvester(&cover.full(), &cover.derivative_u());
    if d.is_zero() {
        return Err(Error::NonReducedCover);
    }
    Ok(d)
}

/// Root multiplicities of `F(t0, u)`, as a partition of `n`.
pub fn fiber_profile(cover: &CoverPoly, t0: &BigRational) -> Vec<u32> {
    cover.at(t0).root_multiplicities()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub t: BigRational,
    /// Order of vanishing of the discriminant.
    pub order: u32,
    pub profile: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub degree: usize,
    pub discriminant: UniPoly,
    pub branch_points: Vec<BranchPoint>,
    /// Square-free factors of the discriminant without rational roots, with
    /// their multiplicity.
    pub irrational_factors: Vec<(UniPoly, u32)>,
}

pub fn analyze(cover: &CoverPoly) -> Result<BranchReport> {
    let disc = discriminant(cover)?;
    let roots = disc.rational_roots();
    let mut rest = disc.clone();
    let mut branch_points = Vec::with_capacity(roots.len());
    for (t, order) in roots {
        let lin = UniPoly::new(vec![-t.clone(), BigRational::one()]);
        rest = rest
            .exact_div(&lin.pow(order))
            .expect("root multiplicity divides");
        branch_points.push(BranchPoint {
            profile: fiber_profile(cover, &t),
            t,
            order,
        });
    }
    Ok(BranchReport {
        degree: cover.degree(),
        discriminant: disc,
        branch_points,
        irrational_factors: rest.squarefree(),
    })
}

/// Fiber degrees of `K_F^{-1}` and `L^{-1}` on the ruling of `F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub d_k: i64,
    pub d_l: i64,
}

impl DegreeData {
    /// The ruling of a Hirzebruch base is a `P^1`, where `K^{-1}` has
    /// degree 2; `L^{-1}` has degree `k`.
    pub fn from_k(k: i64) -> Self {
        Self { d_k: 2, d_l: k }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SenFamily {
    pub b2: UniPoly,
    pub b4: UniPoly,
    pub b6: UniPoly,
    pub delta: UniPoly,
    pub degrees: DegreeData,
    /// Fiber degree of `Delta`, `2 d_k + 2 d_l`.
    pub delta_degree: i64,
    /// Degree of the spectral cover over the base, `2 (2 d_k + 2 d_l)`.
    pub cover_degree: i64,
    pub warnings: Vec<String>,
}

impl SenFamily {
    pub fn is_degenerate(&self) -> bool {
        self.delta.is_zero()
    }
}

/// `Delta = b2 b6 - b4^2` with degree bookkeeping.
pub fn sen_delta(b2: UniPoly, b4: UniPoly, b6: UniPoly, degrees: DegreeData) -> Result<SenFamily> {
    let DegreeData { d_k, d_l } = degrees;
    for (name, p, bound) in [("b2", &b2, 2 * d_k), ("b4", &b4, d_k + d_l), ("b6", &b6, 2 * d_l)] {
        if bound < 0 && !p.is_zero() {
            return Err(Error::InconsistentDegrees(format!(
                "{name} is nonzero but its declared degree {bound} is negative"
            )));
        }
        if let Some(d) = p.degree() {
            if d as i64 > bound {
                return Err(Error::InconsistentDegrees(format!(
                    "{name} has degree {d}, above the declared {bound}"
                )));
            }
        }
    }
    let delta = &(&b2 * &b6) - &b4.pow(2);
    let delta_degree = 2 * d_k + 2 * d_l;
    let mut warnings = Vec::new();
    if delta.is_zero() {
        warnings.push("Delta vanishes identically: the conic is a perfect square".to_string());
    }
    Ok(SenFamily {
        b2,
        b4,
        b6,
        delta,
        degrees,
        delta_degree,
        cover_degree: 2 * delta_degree,
        warnings,
    })
}

/// Orthogonal decomposition of a fiber lattice into the `A_{n-1}` root
/// block and the block spanned by `E`, `l_0`, `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPicard {
    pub root_block: Vec<LatticeClass>,
    pub complement: Vec<(&'static str, LatticeClass)>,
    /// Basis coordinates touched by each block.
    pub root_support: Vec<usize>,
    pub complement_support: Vec<usize>,
    /// Index of the sum of the blocks in the full lattice.
    pub index: BigInt,
}

pub fn fiber_picard(model: &SurfaceModel) -> Result<FiberPicard> {
    let ModelKind::HirzebruchBlowup(n) = model.kind() else {
        return Err(Error::MissingClass {
            kind: model.kind(),
            class: "fiber (f)",
        });
    };
    let root_block: Vec<LatticeClass> = (1..n)
        .map(|i| Ok(model.line(i)? - model.line(i + 1)?))
        .collect::<Result<_>>()?;
    let complement = vec![
        ("E", model.boundary()),
        ("l0", model.l0()?),
        ("f", model.fiber()?.clone()),
    ];
    for r in &root_block {
        for (name, c) in &complement {
            if !model.pair_via_gram(r, c)?.is_zero() {
                return Err(Error::DecompositionFailed(format!("{} pairs nontrivially with {name}", r.pretty())));
            }
        }
    }
    let all: Vec<&LatticeClass> = root_block.iter().chain(complement.iter().map(|(_, c)| c)).collect();
    let gram = |v: &[&LatticeClass]| -> Result<Vec<Vec<BigInt>>> {
        v.iter()
            .map(|a| v.iter().map(|b| model.pair_via_gram(a, b)).collect())
            .collect()
    };
    let det_all = linalg::det_int(&gram(&all)?);
    if det_all.is_zero() {
        return Err(Error::DecompositionFailed("the blocks do not span the lattice over Q".into()));
    }
    let roots: Vec<&LatticeClass> = root_block.iter().collect();
    let det_roots = linalg::det_int(&gram(&roots)?);
    let comp: Vec<&LatticeClass> = complement.iter().map(|(_, c)| c).collect();
    let det_comp = linalg::det_int(&gram(&comp)?);
    if det_roots.clone() * &det_comp != det_all {
        return Err(Error::DecompositionFailed("Gram determinant is not multiplicative".into()));
    }
    // the full lattice is unimodular, so |det| = index^2
    let sq = det_all.abs();
    let index = sq.sqrt();
    if &index * &index != sq {
        return Err(Error::DecompositionFailed(format!("|det| = {sq} is not a square")));
    }
    let support = |v: &[&LatticeClass]| -> Vec<usize> {
        (0..model.rank())
            .filter(|&i| v.iter().any(|c| !c.coeffs()[i].is_zero()))
            .collect()
    };
    Ok(FiberPicard {
        root_support: support(&roots),
        complement_support: support(&comp),
        root_block,
        complement,
        index,
    })
}

/// Convenience: `u^n + sum c_i u^i` from integer coefficient tables.
pub fn cover_from_i64(coeffs: &[&[i64]]) -> Result<CoverPoly> {
    CoverPoly::new(coeffs.iter().map(|c| UniPoly::from_i64(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn square_root_cover() {
        let c = cover_from_i64(&[&[0, -1], &[]]).unwrap(); // u^2 - t
        let d = discriminant(&c).unwrap();
        assert_eq!(d, UniPoly::from_i64(&[0, -4]));
        let rep = analyze(&c).unwrap();
        assert_eq!(rep.branch_points.len(), 1);
        assert_eq!(rep.branch_points[0].t, q(0));
        assert_eq!(rep.branch_points[0].profile, vec![2]);
        assert_eq!(fiber_profile(&c, &q(1)), vec![1, 1]);
    }

    #[test]
    fn unramified_cover() {
        let c = cover_from_i64(&[&[-1], &[]]).unwrap(); // u^2 - 1
        let d = discriminant(&c).unwrap();
        assert!(d.is_constant() && !d.is_zero());
        assert!(analyze(&c).unwrap().branch_points.is_empty());
    }

    #[test]
    fn cubic_cover() {
        let c = cover_from_i64(&[&[0, 2], &[-3], &[]]).unwrap(); // u^3 - 3u + 2t
        let d = discriminant(&c).unwrap();
        assert_eq!(d, UniPoly::from_i64(&[-108, 0, 108]));
        let rep = analyze(&c).unwrap();
        let ts: Vec<BigRational> = rep.branch_points.iter().map(|b| b.t.clone()).collect();
        assert_eq!(ts, vec![q(-1), q(1)]);
        assert_eq!(fiber_profile(&c, &q(1)), vec![2, 1]);
    }

    #[test]
    fn two_resultant_routes_agree() {
        let covers = [
            cover_from_i64(&[&[0, -1], &[]]).unwrap(),
            cover_from_i64(&[&[0, 2], &[-3], &[]]).unwrap(),
            cover_from_i64(&[&[1, 0, 1], &[0, 3], &[-2, 1], &[5]]).unwrap(),
            cover_from_i64(&[&[0, 0, 1], &[1, -1], &[], &[], &[0, 1]]).unwrap(),
        ];
        for c in &covers {
            let f = c.full();
            let g = c.derivative_u();
            assert_eq!(resultant_sylvester(&f, &g), resultant_subresultant(&f, &g), "{}", c.display());
        }
    }

    #[test]
    fn non_reduced_cover_is_rejected() {
        let c = cover_from_i64(&[&[0, 0, 1], &[0, -2]]).unwrap(); // (u - t)^2
        assert_eq!(discriminant(&c), Err(Error::NonReducedCover));
    }

    #[test]
    fn sen_family_bookkeeping() {
        let t = UniPoly::var();
        let one = UniPoly::one();
        let fam = sen_delta(one.clone(), t.clone(), t.pow(2), DegreeData::from_k(1)).unwrap();
        assert!(fam.is_degenerate());
        assert!(!fam.warnings.is_empty());
        let fam = sen_delta(t.clone(), one.clone(), t.clone(), DegreeData::from_k(1)).unwrap();
        assert_eq!(fam.delta, UniPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(fam.cover_degree, 12);
        for k in 0..10 {
            let fam = sen_delta(one.clone(), one.clone(), UniPoly::zero(), DegreeData::from_k(k)).unwrap();
            assert_eq!(fam.cover_degree, 4 * k + 8);
        }
        assert!(matches!(
            sen_delta(t.pow(5), one.clone(), one, DegreeData::from_k(1)),
            Err(Error::InconsistentDegrees(_))
        ));
    }

    #[test]
    fn fiber_picard_blocks() {
        let fp = fiber_picard(&SurfaceModel::hirzebruch(2).unwrap()).unwrap();
        assert_eq!(fp.root_block.len(), 1);
        assert_eq!(fp.complement.len(), 3);
        assert_eq!(fp.index, BigInt::from(2));
        let fp = fiber_picard(&SurfaceModel::hirzebruch(1).unwrap()).unwrap();
        assert!(fp.root_block.is_empty());
        assert_eq!(fp.index, BigInt::one());
        for n in 1..=12 {
            let fp = fiber_picard(&SurfaceModel::hirzebruch(n).unwrap()).unwrap();
            assert_eq!(fp.index, BigInt::from(n));
        }
    }
}
