//! The conifold computation: a rank-two module on `s^2 = x^2 - y^2 + z^2`, its restriction
//! to `s = 0`, the blow-up charts, and the splitting on the exceptional curve.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::mpoly::{monomials_of_degree, MPoly};
use super::ring::{check_free, check_generate, Echelon, GradedModule, TruncRing};
use crate::divisor::CollisionConfig;
use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;
use crate::linalg::nullspace;

pub const MAX_CHAIN_DEGREE: u32 = 12;

/// `Q[x,y,z,s]/(s^2 = x^2 - y^2 + z^2)`.
pub fn conifold_ring(max_degree: u32) -> TruncRing {
    TruncRing::from_strings(
        &[("x", 1), ("y", 1), ("z", 1), ("s", 1)],
        &[("s^2", "x^2 - y^2 + z^2")],
        max_degree,
    )
    .expect("conifold ring is well formed")
}

/// The same ring presented with `t = s^2` as an extra degree-2 variable.
pub fn double_cover_ring(max_degree: u32) -> TruncRing {
    TruncRing::from_strings(
        &[("x", 1), ("y", 1), ("z", 1), ("s", 1), ("t", 2)],
        &[("s^2", "t"), ("t", "x^2 - y^2 + z^2")],
        max_degree,
    )
    .expect("double cover ring is well formed")
}

/// `Q[x,y,z]/(x^2 - y^2 + z^2)`, the cone over a conic.
pub fn cone_ring(max_degree: u32) -> TruncRing {
    TruncRing::from_strings(&[("x", 1), ("y", 1), ("z", 1)], &[("z^2", "y^2 - x^2")], max_degree)
        .expect("cone ring is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: u32,
    pub values: Vec<(&'static str, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubCheck {
    pub id: &'static str,
    pub passed: bool,
    pub failed_degree: Option<u32>,
    pub detail: String,
    pub dims: Vec<DegreeRow>,
}

impl SubCheck {
    fn new(id: &'static str, detail: impl Into<String>) -> Self {
        Self {
            id,
            passed: true,
            failed_degree: None,
            detail: detail.into(),
            dims: Vec::new(),
        }
    }

    fn fail_at(&mut self, d: Option<u32>) {
        if self.passed {
            self.passed = false;
            self.failed_degree = d;
        }
    }

    fn require(&mut self, ok: bool, d: Option<u32>) {
        if !ok {
            self.fail_at(d);
        }
    }
}

/// Splitting type of a rank-two bundle on the exceptional curve.
pub type Split = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub maxdeg: u32,
    pub checks: Vec<SubCheck>,
    /// `O(-l_1) + O(-l_2)` restricted to the curve.
    pub comparison_split: Split,
    /// The pulled back free module restricted to the curve.
    pub free_split: Split,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The first failing sub-check and the degree where it failed.
    pub fn failure(&self) -> Option<(&'static str, Option<u32>)> {
        self.checks.iter().find(|c| !c.passed).map(|c| (c.id, c.failed_degree))
    }
}

fn transpose(cols: &[Vec<BigRational>], nrows: usize) -> Vec<Vec<BigRational>> {
    (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn rank_of(rows: &[Vec<BigRational>]) -> usize {
    let mut e = Echelon::default();
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

fn same_span(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> bool {
    let ra = rank_of(a);
    ra == rank_of(b) && ra == rank_of(&[a, b].concat())
}

/// Matrix columns of a substitution map between graded pieces, one column per source basis monomial.
fn map_columns(src: &TruncRing, images: &[MPoly], dst: &TruncRing, d: u32) -> Result<Vec<Vec<BigRational>>> {
    src.normal_monomials(d)?
        .into_iter()
        .map(|m| {
            let p = MPoly::term(src.nvars(), m, BigRational::one());
            dst.coords(&p.substitute(images), d)
        })
        .collect()
}

fn all_vars(r: &TruncRing) -> Vec<usize> {
    (0..r.nvars()).collect()
}

/// Generation and freeness of the pushforward and of `<x - y, z + s>` over `Q[x,y,z]`.
fn check_modules(maxdeg: u32) -> Result<Vec<SubCheck>> {
    let r = conifold_ring(maxdeg);
    let mut gen = SubCheck::new("pushforward_generators", "1 and s generate the conifold ring over Q[x,y,z]");
    let whole = GradedModule::whole_ring(&r);
    let pf = GradedModule::parse(&r, &["1", "s"], &["x", "y", "z"])?;
    let g = check_generate(&r, &whole, &pf, maxdeg)?;
    let f = check_free(&r, &pf, maxdeg)?;
    gen.require(g.holds, g.first_failure);
    gen.require(f.holds, f.first_failure);
    for (a, b) in g.dims.iter().zip(&f.dims) {
        gen.dims.push(DegreeRow {
            degree: a.degree,
            values: vec![("ring", a.target), ("span", a.span), ("free_domain", b.domain)],
        });
    }

    let mut free = SubCheck::new("f2_free", "x - y and z + s generate their ideal freely over Q[x,y,z]");
    let ideal = GradedModule::parse(&r, &["x - y", "z + s"], &["x", "y", "z", "s"])?;
    let f2 = GradedModule::parse(&r, &["x - y", "z + s"], &["x", "y", "z"])?;
    let g = check_generate(&r, &ideal, &f2, maxdeg)?;
    let f = check_free(&r, &f2, maxdeg)?;
    free.require(g.holds, g.first_failure);
    free.require(f.holds, f.first_failure);
    for (a, b) in g.dims.iter().zip(&f.dims) {
        free.dims.push(DegreeRow {
            degree: a.degree,
            values: vec![("ideal", a.target), ("free_domain", b.domain)],
        });
    }
    Ok(vec![gen, free])
}

/// The ideal `(x - y, z + s)` is the kernel of `y -> x, s -> -z`, which is onto `Q[x,z]`.
fn check_conifold_kernel(maxdeg: u32) -> Result<SubCheck> {
    let r = conifold_ring(maxdeg);
    let plane = TruncRing::polynomial(&[("x", 1), ("z", 1)], maxdeg)?;
    let (x, z) = (MPoly::var(2, 0), MPoly::var(2, 1));
    let images = [x.clone(), x, z.clone(), -&z];
    let ideal = GradedModule::ideal(&r, vec![r.parse("x - y")?, r.parse("z + s")?])?;
    let mut c = SubCheck::new("conifold_kernel", "(x - y, z + s) is the kernel of R -> Q[x,z], y -> x, s -> -z");
    for d in 0..=maxdeg {
        let cols = map_columns(&r, &images, &plane, d)?;
        let m = transpose(&cols, plane.graded_dim(d)?);
        let ker = nullspace(&m, cols.len());
        let piece = ideal.piece(&r, d)?;
        let image_rank = rank_of(&m);
        let (rd, id) = (r.graded_dim(d)?, rank_of(&piece));
        c.require(same_span(&ker, &piece), Some(d));
        c.require(image_rank == d as usize + 1, Some(d));
        c.require(rd == id + image_rank, Some(d));
        c.dims.push(DegreeRow {
            degree: d,
            values: vec![("ring", rd), ("ideal", id), ("quotient", image_rank)],
        });
    }
    Ok(c)
}

/// Setting `s = 0` sends `<x - y, z + s>` onto `(x - y, z)` in the cone ring; the kernel is spanned
/// by the syzygies `(x + y, z)` and `(-z, x - y)`.
fn check_restriction(maxdeg: u32) -> Result<SubCheck> {
    let s0 = cone_ring(maxdeg);
    let line = TruncRing::polynomial(&[("y", 1)], maxdeg)?;
    let y = MPoly::var(1, 0);
    let to_line = [y.clone(), y, MPoly::zero(1)];
    let (g1, g2) = (s0.parse("x - y")?, s0.parse("z")?);
    let syz = [
        (s0.parse("x + y")?, s0.parse("z")?),
        (s0.parse("-z")?, s0.parse("x - y")?),
    ];
    let mut c = SubCheck::new(
        "restriction_s0",
        "s = 0 maps the module onto (x - y, z) = ker(S0 -> Q[y]); dim F2 = dim image + dim kernel",
    );
    for d in 0..=maxdeg {
        let dom: Vec<MPoly> = if d == 0 {
            Vec::new()
        } else {
            s0.normal_monomials(d - 1)?
                .into_iter()
                .map(|m| MPoly::term(3, m, BigRational::one()))
                .collect()
        };
        let k = dom.len();
        // columns: images of (b, 0) then (0, b)
        let mut cols = Vec::new();
        for g in [&g1, &g2] {
            for b in &dom {
                cols.push(s0.coords(&(g * b), d)?);
            }
        }
        let target_dim = s0.graded_dim(d)?;
        let m = transpose(&cols, target_dim);
        let image: Vec<Vec<BigRational>> = cols.clone();
        let ker = nullspace(&m, cols.len());

        let sub_cols = map_columns(&s0, &to_line, &line, d)?;
        let sigma = transpose(&sub_cols, 1);
        let ker_sigma: Vec<Vec<BigRational>> = nullspace(&sigma, sub_cols.len());

        let mut expected = Vec::new();
        if d >= 2 {
            for b in s0.normal_monomials(d - 2)? {
                let b = MPoly::term(3, b, BigRational::one());
                for (a1, a2) in &syz {
                    let mut v = s0.coords(&(a1 * &b), d - 1)?;
                    v.extend(s0.coords(&(a2 * &b), d - 1)?);
                    expected.push(v);
                }
            }
        }
        let image_rank = rank_of(&image);
        c.require(same_span(&image, &ker_sigma), Some(d));
        c.require(same_span(&ker, &expected), Some(d));
        c.require(2 * k == image_rank + ker.len(), Some(d));
        c.dims.push(DegreeRow {
            degree: d,
            values: vec![("f2", 2 * k), ("image", image_rank), ("kernel", ker.len())],
        });
    }
    Ok(c)
}

struct Chart {
    id: &'static str,
    detail: &'static str,
    names: [&'static str; 2],
    /// x, y, z in chart coordinates
    xyz: [&'static str; 3],
    lambda: [&'static str; 2],
    /// kernel generator (f2, f3)
    kernel_gen: [&'static str; 2],
    /// the f2 components of the kernel form this ideal
    kernel_ideal: &'static str,
    exceptional: &'static str,
    pullback: &'static str,
}

const CHARTS: [Chart; 2] = [
    Chart {
        id: "chart_lambda1",
        detail: "lambda1 = 1: kernel generated by (mu, 1), f2 components form the ideal (lambda2) = (mu)",
        names: ["w", "mu"],
        xyz: ["1/2*w - 1/2*w*mu^2", "1/2*w + 1/2*w*mu^2", "w*mu"],
        lambda: ["1", "mu"],
        kernel_gen: ["mu", "1"],
        kernel_ideal: "mu",
        exceptional: "w",
        pullback: "w*mu",
    },
    Chart {
        id: "chart_lambda2",
        detail: "lambda2 = 1: kernel generated by (1, lambda), f2 components form the unit ideal",
        names: ["u", "lam"],
        xyz: ["1/2*u - 1/2*u*lam^2", "-1/2*u - 1/2*u*lam^2", "-u*lam"],
        lambda: ["lam", "1"],
        kernel_gen: ["1", "lam"],
        kernel_ideal: "1",
        exceptional: "u",
        pullback: "u",
    },
];

fn check_chart(ch: &Chart, maxdeg: u32) -> Result<SubCheck> {
    let a = TruncRing::polynomial(&[(ch.names[0], 1), (ch.names[1], 1)], maxdeg + 3)?;
    let p = |s: &str| a.parse(s);
    let [x, y, z] = [p(ch.xyz[0])?, p(ch.xyz[1])?, p(ch.xyz[2])?];
    let [l1, l2] = [p(ch.lambda[0])?, p(ch.lambda[1])?];
    let mut c = SubCheck::new(ch.id, ch.detail);

    // both rows of [[x - y, z], [-z, x + y]] (l1, l2) and the conifold equation vanish
    let xmy = &x - &y;
    let xpy = &x + &y;
    let row1 = &(&xmy * &l1) + &(&z * &l2);
    let row2 = &(&xpy * &l2) - &(&z * &l1);
    let cone = &(&xmy * &xpy) + &(&z * &z);
    c.require(row1.is_zero() && row2.is_zero() && cone.is_zero(), None);

    let degs = a.degrees();
    let (dz, dxmy) = match (z.homogeneous_degree(degs), xmy.homogeneous_degree(degs)) {
        (Some(u), Some(v)) => (u, v),
        _ => return Err(Error::InvalidRing(format!("{}: chart map is not graded", ch.id))),
    };
    let (k2, k3) = (p(ch.kernel_gen[0])?, p(ch.kernel_gen[1])?);
    let e2 = k2.homogeneous_degree(degs).unwrap_or(0);
    c.require(dz + e2 == dxmy + k3.homogeneous_degree(degs).unwrap_or(0), None);
    c.require((&(&z * &k2) + &(&xmy * &k3)).is_zero(), None);
    let kideal = GradedModule::ideal(&a, vec![p(ch.kernel_ideal)?])?;
    let all = all_vars(&a);

    for d in 0..=maxdeg {
        // (f2, f3) with z f2 + (x - y) f3 = 0 in degree d
        let f2_basis = if d >= dz { monomials_of_degree(2, &all, degs, d - dz) } else { Vec::new() };
        let f3_basis = if d >= dxmy { monomials_of_degree(2, &all, degs, d - dxmy) } else { Vec::new() };
        let mut cols = Vec::new();
        for m in &f2_basis {
            cols.push(a.coords(&z.mul_monomial(m, &BigRational::one()), d)?);
        }
        for m in &f3_basis {
            cols.push(a.coords(&xmy.mul_monomial(m, &BigRational::one()), d)?);
        }
        let ker = nullspace(&transpose(&cols, a.graded_dim(d)?), cols.len());
        let mut expected = Vec::new();
        if d >= dz + e2 {
            for m in monomials_of_degree(2, &all, degs, d - dz - e2) {
                let mut v = a.coords(&k2.mul_monomial(&m, &BigRational::one()), d - dz)?;
                v.extend(a.coords(&k3.mul_monomial(&m, &BigRational::one()), d - dxmy)?);
                expected.push(v);
            }
        }
        c.require(same_span(&ker, &expected), Some(d));
        // f2 components
        let f2_part: Vec<Vec<BigRational>> = ker.iter().map(|v| v[..f2_basis.len()].to_vec()).collect();
        if d >= dz {
            c.require(same_span(&f2_part, &kideal.piece(&a, d - dz)?), Some(d));
        }
        c.dims.push(DegreeRow {
            degree: d,
            values: vec![("kernel", ker.len()), ("generator_multiples", expected.len())],
        });
    }

    // the origin pulls back to the exceptional curve, and (x - y, z) to the curve plus l_1
    let origin = GradedModule::ideal(&a, vec![xpy, xmy.clone(), z.clone()])?;
    let exc = GradedModule::ideal(&a, vec![p(ch.exceptional)?])?;
    let g = check_generate(&a, &exc, &origin, maxdeg)?;
    c.require(g.holds, g.first_failure);
    let pulled = GradedModule::ideal(&a, vec![xmy, z])?;
    let prin = GradedModule::ideal(&a, vec![p(ch.pullback)?])?;
    let g = check_generate(&a, &prin, &pulled, maxdeg)?;
    c.require(g.holds, g.first_failure);
    Ok(c)
}

/// `h^1(O(k))` on the projective line.
pub fn h1_p1(k: i64) -> i64 {
    (-k - 1).max(0)
}

fn int(b: BigInt) -> i64 {
    i64::try_from(b).expect("small intersection number")
}

/// Lattice side on the two-point model with the curve `C = l_2 - l_1`.
fn check_exceptional(split: &mut (Split, Split)) -> Result<Vec<SubCheck>> {
    let model = SurfaceModel::hirzebruch(2)?;
    let cfg = CollisionConfig::new(&model, &[(1, 2)])?;
    let curve = cfg.induced_curves()[0].clone();
    let (l1, l2) = (model.line(1)?, model.line(2)?);
    let f = model.fiber()?.clone();
    let pair = |a: &crate::lattice::LatticeClass, b| model.pair(a, b).map(int);

    let mut c = SubCheck::new(
        "exceptional_split",
        "on C: O(-l1) + O(-l2) splits as (-1, +1), the pulled back free module as (0, 0)",
    );
    c.require(pair(&curve, &curve)? == -2, None);
    let sub = -pair(&l1, &curve)?;
    let quo = -pair(&l2, &curve)?;
    let comparison = (sub.min(quo), sub.max(quo));
    // the free module is generated by functions from downstairs, which are constant along C
    let free = (0, 0);
    let c1 = &(-&l1) + &(-&l2);
    c.require(comparison == (-1, 1), None);
    c.require(pair(&c1, &curve)? == free.0 + free.1, None);
    c.require(sub + quo == free.0 + free.1, None);
    // Ext^1(O_C(1), O_C(-1)) is one-dimensional, so a non-split extension exists
    c.require(h1_p1(sub - quo) == 1, None);
    c.require(free != comparison, None);
    let r = &l1 + &l2;
    let twisted_sub = &(-&l1) + &r;
    let twisted_quo = &(-&l2) + &r;
    c.require(twisted_sub == l2 && twisted_quo == l1, None);
    c.dims.push(DegreeRow {
        degree: 0,
        values: vec![("h1_O(-2)", h1_p1(-2) as usize)],
    });
    *split = (comparison, free);

    let mut conic = SubCheck::new("conic_bundle", "l1^2 = (f - l1)^2 = -1 and l1.(f - l1) = 1 with f^2 = 0");
    let other = &f + &(-&l1);
    conic.require(pair(&f, &f)? == 0, None);
    conic.require(pair(&l1, &l1)? == -1 && pair(&other, &other)? == -1, None);
    conic.require(pair(&l1, &other)? == 1, None);
    Ok(vec![c, conic])
}

/// Run every local check up to degree `maxdeg`.
pub fn verify_extension_chain(maxdeg: u32) -> Result<ChainReport> {
    if maxdeg > MAX_CHAIN_DEGREE {
        return Err(Error::OutOfRange {
            what: "maxdeg",
            value: maxdeg as i64,
            allowed: format!("0..={MAX_CHAIN_DEGREE}"),
        });
    }
    let mut checks = check_modules(maxdeg)?;
    checks.push(check_restriction(maxdeg)?);
    checks.push(check_conifold_kernel(maxdeg)?);
    for ch in &CHARTS {
        checks.push(check_chart(ch, maxdeg)?);
    }
    let mut split = ((0, 0), (0, 0));
    checks.extend(check_exceptional(&mut split)?);
    Ok(ChainReport {
        maxdeg,
        checks,
        comparison_split: split.0,
        free_split: split.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_passes() {
        let rep = verify_extension_chain(6).unwrap();
        for c in &rep.checks {
            assert!(c.passed, "{} failed at {:?}", c.id, c.failed_degree);
        }
        assert_eq!(rep.comparison_split, (-1, 1));
        assert_eq!(rep.free_split, (0, 0));
    }

    #[test]
    fn presentations_agree() {
        let a = conifold_ring(8);
        let b = double_cover_ring(8);
        for d in 0..=8 {
            assert_eq!(a.graded_dim(d).unwrap(), b.graded_dim(d).unwrap());
        }
    }

    #[test]
    fn maxdeg_limit() {
        assert!(verify_extension_chain(MAX_CHAIN_DEGREE + 1).is_err());
    }
}
