//! Complete enumeration of classes with prescribed pairings.
//!
//! Solves `x.c_j = k_j` (linear) together with `x.x = q` (quadratic) over the
//! integers. The linear constraints cut out an affine lattice `x0 + L`; when
//! the orthogonal complement of the constraint span is negative definite the
//! quadratic condition becomes an ellipsoid in `L`, enumerated exactly with a
//! Fincke-Pohst search over an LLL-reduced basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, SurfaceModel};
use crate::linalg::{self, q, to_q, QMatrix};

/// Default limit on the number of solutions returned.
pub const DEFAULT_SOLUTION_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub class: LatticeClass,
    pub value: BigInt,
}

impl LinearConstraint {
    pub fn new(class: LatticeClass, value: i64) -> Self {
        Self {
            class,
            value: BigInt::from(value),
        }
    }
}

/// All integer classes `x` with `x.x = self_pairing` and every linear
/// constraint satisfied, sorted lexicographically.
pub fn solve(
    model: &SurfaceModel,
    linear: &[LinearConstraint],
    self_pairing: &BigInt,
    cap: usize,
) -> Result<Vec<LatticeClass>> {
    let rank = model.rank();
    let kind = model.kind();
    for c in linear {
        model.check(&c.class)?;
    }
    // row j: the functional x -> x.c_j in coordinates
    let rows: Vec<Vec<BigInt>> = linear
        .iter()
        .map(|c| {
            (0..rank)
                .map(|i| LatticeClass::unit(kind, i).pair(&c.class).expect("same basis"))
                .collect()
        })
        .collect();
    let (h, u, r) = linalg::column_hermite(&rows, rank);

    // particular solution z_1 of H[:, :r] z_1 = k
    let mut aug: QMatrix = rows
        .iter()
        .enumerate()
        .map(|(j, _)| {
            let mut row: Vec<BigRational> = (0..r).map(|c| to_q(&h[j][c])).collect();
            row.push(to_q(&linear[j].value));
            row
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    if pivots.contains(&r) {
        return Ok(Vec::new());
    }
    let mut z1 = vec![BigInt::zero(); r];
    for (row, &p) in pivots.iter().enumerate() {
        let v = &aug[row][r];
        if !v.is_integer() {
            return Ok(Vec::new());
        }
        z1[p] = v.to_integer();
    }
    let x0: Vec<BigInt> = (0..rank)
        .map(|i| (0..r).map(|c| &u[i][c] * &z1[c]).sum())
        .collect();
    let x0 = LatticeClass::new(kind, x0)?;
    let kernel: Vec<LatticeClass> = (r..rank)
        .map(|c| LatticeClass::new(kind, (0..rank).map(|i| u[i][c].clone()).collect()))
        .collect::<Result<_>>()?;

    if kernel.is_empty() {
        return Ok(if &x0.self_pairing() == self_pairing {
            vec![x0]
        } else {
            Vec::new()
        });
    }

    // N = -(V^T G V) must be positive definite
    let neg_gram = |a: &LatticeClass, b: &LatticeClass| -a.pair(b).expect("same basis");
    let gram_of = |vs: &[LatticeClass]| -> QMatrix {
        vs.iter()
            .map(|a| vs.iter().map(|b| to_q(&neg_gram(a, b))).collect())
            .collect()
    };
    let (pos, _, _) = linalg::inertia(&gram_of(&kernel));
    if pos != kernel.len() {
        return Err(Error::EnumerationUnbounded(format!(
            "the constraints leave an indefinite {}-dimensional complement on {kind}",
            kernel.len()
        )));
    }
    let kernel = lll_reduce(kernel, &neg_gram);
    let k = kernel.len();
    let nq = gram_of(&kernel);

    // complete the square: (a - c)^T N (a - c) = x0^2 - q + b^T c, N c = b
    let b: Vec<BigRational> = kernel.iter().map(|v| to_q(&x0.pair(v).unwrap())).collect();
    let c = linalg::solve(&nq, &b).expect("positive definite is invertible");
    let btc: BigRational = b.iter().zip(&c).map(|(x, y)| x * y).sum();
    let target = to_q(&x0.self_pairing()) - to_q(self_pairing) + btc;
    if target.is_negative() {
        return Ok(Vec::new());
    }

    let (d, rr) = ldl(&nq);
    let mut search = Search {
        d: &d,
        r: &rr,
        c: &c,
        target: &target,
        a: vec![BigInt::zero(); k],
        found: Vec::new(),
        cap,
    };
    search.descend(k, BigRational::zero())?;

    let mut out: Vec<LatticeClass> = search
        .found
        .into_iter()
        .map(|a| {
            let mut x = x0.clone();
            for (ai, v) in a.iter().zip(&kernel) {
                if !ai.is_zero() {
                    x = &x + &v.scale(ai);
                }
            }
            x
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `N = R^T D R` with `R` unit upper triangular.
fn ldl(n: &QMatrix) -> (Vec<BigRational>, QMatrix) {
    let k = n.len();
    let mut d = vec![BigRational::zero(); k];
    let mut r = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        r[i][i] = BigRational::one();
        let mut di = n[i][i].clone();
        for l in 0..i {
            di -= &r[l][i] * &r[l][i] * &d[l];
        }
        d[i] = di;
        for j in i + 1..k {
            let mut v = n[i][j].clone();
            for l in 0..i {
                v -= &r[l][i] * &r[l][j] * &d[l];
            }
            r[i][j] = v / &d[i];
        }
    }
    (d, r)
}

struct Search<'a> {
    d: &'a [BigRational],
    r: &'a QMatrix,
    c: &'a [BigRational],
    target: &'a BigRational,
    a: Vec<BigInt>,
    found: Vec<Vec<BigInt>>,
    cap: usize,
}

impl Search<'_> {
    /// Fix coordinates `level-1, ..., 0` given `a[level..]`.
    fn descend(&mut self, level: usize, used: BigRational) -> Result<()> {
        if level == 0 {
            if &used == self.target {
                if self.found.len() == self.cap {
                    return Err(Error::EnumerationCapExceeded { cap: self.cap });
                }
                self.found.push(self.a.clone());
            }
            return Ok(());
        }
        let i = level - 1;
        let k = self.a.len();
        let mut center = self.c[i].clone();
        for j in i + 1..k {
            center -= &self.r[i][j] * (to_q(&self.a[j]) - &self.c[j]);
        }
        let budget = (self.target - &used) / &self.d[i];
        if budget.is_negative() {
            return Ok(());
        }
        let reach = linalg::isqrt_floor(&budget) + 1;
        let lo = center.floor().to_integer() - &reach;
        let hi = center.ceil().to_integer() + &reach;
        let mut ai = lo;
        while ai <= hi {
            let off = to_q(&ai) - &center;
            let sq = &off * &off;
            if sq <= budget {
                self.a[i] = ai.clone();
                let next = &used + &self.d[i] * sq;
                self.descend(i, next)?;
            }
            ai += 1;
        }
        self.a[i] = BigInt::zero();
        Ok(())
    }
}

/// LLL reduction (delta = 3/4) of lattice vectors under a positive definite
/// integer inner product.
pub fn lll_reduce<F>(mut basis: Vec<LatticeClass>, inner: &F) -> Vec<LatticeClass>
where
    F: Fn(&LatticeClass, &LatticeClass) -> BigInt,
{
    let n = basis.len();
    if n < 2 {
        return basis;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < n {
        let (mut mu, _) = gram_schmidt(&basis, inner);
        for j in (0..k).rev() {
            let m = round_half_up(&mu[k][j]);
            if m.is_zero() {
                continue;
            }
            basis[k] = &basis[k] - &basis[j].scale(&m);
            let mq = to_q(&m);
            for l in 0..j {
                let d = &mq * &mu[j][l];
                mu[k][l] -= d;
            }
            mu[k][j] -= &mq;
        }
        let (mu, bstar) = gram_schmidt(&basis, inner);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if bstar[k] >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    basis
}

fn gram_schmidt<F>(basis: &[LatticeClass], inner: &F) -> (QMatrix, Vec<BigRational>)
where
    F: Fn(&LatticeClass, &LatticeClass) -> BigInt,
{
    let n = basis.len();
    let g: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| to_q(&inner(&basis[i], &basis[j]))).collect())
        .collect();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar = vec![BigRational::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut v = g[i][j].clone();
            for l in 0..j {
                v -= &mu[j][l] * &mu[i][l] * &bstar[l];
            }
            mu[i][j] = v / &bstar[j];
        }
        let mut b = g[i][i].clone();
        for l in 0..i {
            b -= &mu[i][l] * &mu[i][l] * &bstar[l];
        }
        bstar[i] = b;
    }
    (mu, bstar)
}

fn round_half_up(x: &BigRational) -> BigInt {
    (x + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Per-coordinate integer box containing every solution, from Cauchy-Schwarz
/// on the negative definite complement of the constraint span.
///
/// Returns `None` when the quadratic condition is infeasible over `Q`.
pub fn coefficient_bounds(
    model: &SurfaceModel,
    linear: &[LinearConstraint],
    self_pairing: &BigInt,
) -> Result<Option<Vec<(BigInt, BigInt)>>> {
    let rank = model.rank();
    let kind = model.kind();
    // independent subset of constraints
    let mut span: Vec<&LinearConstraint> = Vec::new();
    let mut rows: QMatrix = Vec::new();
    for c in linear {
        let mut trial = rows.clone();
        trial.push(c.class.coeffs().iter().map(to_q).collect());
        if linalg::rank(&trial) > rows.len() {
            rows = trial;
            span.push(c);
        }
    }
    let m = span.len();
    let gw: QMatrix = (0..m)
        .map(|i| (0..m).map(|j| to_q(&span[i].class.pair(&span[j].class).unwrap())).collect())
        .collect();
    let (pos, _, zero) = linalg::inertia(&gw);
    if pos != 1 || zero != 0 {
        return Err(Error::EnumerationUnbounded(format!(
            "constraint span on {kind} is not hyperbolic with one positive direction"
        )));
    }
    let kvals: Vec<BigRational> = span.iter().map(|c| to_q(&c.value)).collect();
    let alpha = linalg::solve(&gw, &kvals).expect("nondegenerate");
    // w = sum alpha_j c_j ; w.w = alpha . k
    let ww: BigRational = alpha.iter().zip(&kvals).map(|(a, k)| a * k).sum();
    let neg_y2 = &ww - to_q(self_pairing);
    if neg_y2.is_negative() {
        return Ok(None);
    }
    // G^{-1}; the models are unimodular but we stay rational
    let g: QMatrix = model
        .gram()
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let mut out = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut e = vec![BigRational::zero(); rank];
        e[i] = BigRational::one();
        let dual = linalg::solve(&g, &e).expect("unimodular");
        // pairing of a rational vector with a class
        let pair_q = |v: &[BigRational], cls: &LatticeClass| -> BigRational {
            (0..rank)
                .map(|a| {
                    let col: BigRational = (0..rank)
                        .map(|b| to_q(&cls.coeffs()[b]) * q(model.gram()[a][b]))
                        .sum();
                    &v[a] * col
                })
                .sum()
        };
        let dual_c: Vec<BigRational> = span.iter().map(|c| pair_q(&dual, &c.class)).collect();
        let center: BigRational = alpha.iter().zip(&dual_c).map(|(a, d)| a * d).sum();
        let beta = linalg::solve(&gw, &dual_c).expect("nondegenerate");
        // u = dual - sum beta_j c_j ; u.u = dual.dual - beta . dual_c
        let dual_sq: BigRational = (0..rank)
            .map(|a| (0..rank).map(|b| &dual[a] * &dual[b] * q(model.gram()[a][b])).sum::<BigRational>())
            .sum();
        let bd: BigRational = beta.iter().zip(&dual_c).map(|(b, d)| b * d).sum();
        let neg_u2 = -(dual_sq - bd);
        let s2 = neg_u2 * &neg_y2;
        out.push(integer_window(&center, &s2));
    }
    Ok(Some(out))
}

/// Integers `a` with `(a - center)^2 <= s2`, as `(lo, hi)`.
fn integer_window(center: &BigRational, s2: &BigRational) -> (BigInt, BigInt) {
    let reach = linalg::isqrt_floor(s2) + 2;
    let fits = |a: &BigInt| {
        let off = to_q(a) - center;
        &off * &off <= *s2
    };
    let mut lo = center.floor().to_integer() - &reach;
    while !fits(&lo) && lo < center.ceil().to_integer() + &reach {
        lo += 1;
    }
    let mut hi = center.ceil().to_integer() + &reach;
    while !fits(&hi) && hi > lo {
        hi -= 1;
    }
    if !fits(&lo) {
        // empty window; return an inverted range
        return (BigInt::one(), BigInt::zero());
    }
    (lo, hi)
}
