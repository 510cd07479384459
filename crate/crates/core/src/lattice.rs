//! Picard lattices of blown-up rational surfaces.
//!
//! Two presentations are supported, with fixed basis orderings:
//!
//! * [`ModelKind::HirzebruchBlowup`]`(n)`: the Hirzebruch surface `F_1` blown
//!   up in `n` points, basis `(b, f, l_1, ..., l_n)` with `b.b = -1`,
//!   `f.f = 0`, `b.f = 1`, `l_i.l_j = -delta_ij` and `K = -2b - 3f + sum l_i`.
//!   The section `b` doubles as the line `l_0`.
//! * [`ModelKind::P2Blowup`]`(m)`: the plane blown up in `m` points, basis
//!   `(h, l_0, ..., l_{m-1})` with `h.h = 1`, `l_i.l_j = -delta_ij` and
//!   `K = -3h + sum l_i`.
//!
//! `HirzebruchBlowup(n)` and `P2Blowup(n + 1)` are the same surface; see
//! [`change_basis`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;

/// Largest number of blown-up points accepted by [`SurfaceModel::build`].
pub const MAX_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    HirzebruchBlowup(usize),
    P2Blowup(usize),
}

impl ModelKind {
    pub fn points(self) -> usize {
        match self {
            ModelKind::HirzebruchBlowup(n) | ModelKind::P2Blowup(n) => n,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            ModelKind::HirzebruchBlowup(n) => n + 2,
            ModelKind::P2Blowup(n) => n + 1,
        }
    }

    /// Basis index of the exceptional class `l_i`.
    ///
    /// Hirzebruch models index `l_1..l_n` (with `l_0 = b` at index 0);
    /// plane models index `l_0..l_{m-1}`.
    pub fn line_index(self, i: usize) -> Option<usize> {
        match self {
            ModelKind::HirzebruchBlowup(n) => match i {
                0 => Some(0),
                i if i <= n => Some(i + 1),
                _ => None,
            },
            ModelKind::P2Blowup(m) => (i < m).then_some(i + 1),
        }
    }

    /// Labels of the ordered basis.
    pub fn labels(self) -> Vec<String> {
        match self {
            ModelKind::HirzebruchBlowup(n) => ["b".to_string(), "f".to_string()]
                .into_iter()
                .chain((1..=n).map(|i| format!("l{i}")))
                .collect(),
            ModelKind::P2Blowup(m) => std::iter::once("h".to_string())
                .chain((0..m).map(|i| format!("l{i}")))
                .collect(),
        }
    }

    /// Stable identifier such as `hirzebruch_blowup(3)` or `p2_blowup(6)`.
    pub fn id(self) -> String {
        self.to_string()
    }

    pub fn parse_id(s: &str) -> Result<Self> {
        let bad = || Error::Schema {
            path: "basis".into(),
            message: format!("unknown model id `{s}`"),
        };
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let n: usize = s[open + 1..s.len() - 1].trim().parse().map_err(|_| bad())?;
        Self::from_name(&s[..open], n).ok_or_else(bad)
    }

    /// Accepts `hirzebruch_blowup`/`hirzebruch` and `p2_blowup`/`p2`.
    pub fn from_name(name: &str, n: usize) -> Option<Self> {
        match name {
            "hirzebruch_blowup" | "hirzebruch" => Some(ModelKind::HirzebruchBlowup(n)),
            "p2_blowup" | "p2" => Some(ModelKind::P2Blowup(n)),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::HirzebruchBlowup(_) => "hirzebruch_blowup",
            ModelKind::P2Blowup(_) => "p2_blowup",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.points())
    }
}

/// An integral divisor class in the fixed basis of its model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    basis: ModelKind,
    coeffs: Vec<BigInt>,
}

impl LatticeClass {
    pub fn new(basis: ModelKind, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != basis.rank() {
            return Err(Error::WrongLength {
                kind: basis,
                got: coeffs.len(),
                rank: basis.rank(),
            });
        }
        Ok(Self { basis, coeffs })
    }

    pub fn from_i64(basis: ModelKind, coeffs: &[i64]) -> Result<Self> {
        Self::new(basis, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(basis: ModelKind) -> Self {
        Self {
            basis,
            coeffs: vec![BigInt::zero(); basis.rank()],
        }
    }

    pub fn unit(basis: ModelKind, index: usize) -> Self {
        let mut c = Self::zero(basis);
        c.coeffs[index] = BigInt::one();
        c
    }

    /// The exceptional class `l_i` (see [`ModelKind::line_index`]).
    pub fn line(basis: ModelKind, i: usize) -> Result<Self> {
        let idx = basis.line_index(i).ok_or(Error::OutOfRange {
            what: "line index",
            value: i as i64,
            allowed: format!("exceptional classes of {basis}"),
        })?;
        Ok(Self::unit(basis, idx))
    }

    pub fn basis(&self) -> ModelKind {
        self.basis
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Intersection pairing with another class of the same model.
    pub fn pair(&self, other: &LatticeClass) -> Result<BigInt> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis,
                right: other.basis,
            });
        }
        let (x, y) = (&self.coeffs, &other.coeffs);
        Ok(match self.basis {
            ModelKind::HirzebruchBlowup(_) => {
                let lines: BigInt = x[2..].iter().zip(&y[2..]).map(|(a, b)| a * b).sum();
                -(&x[0] * &y[0]) + &x[0] * &y[1] + &x[1] * &y[0] - lines
            }
            ModelKind::P2Blowup(_) => {
                let lines: BigInt = x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum();
                &x[0] * &y[0] - lines
            }
        })
    }

    pub fn self_pairing(&self) -> BigInt {
        self.pair(self).expect("same basis")
    }

    /// Human-readable form, e.g. `f - l1 - l2`.
    pub fn pretty(&self) -> String {
        let labels = self.basis.labels();
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(&labels) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn zip_with(&self, other: &LatticeClass, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(
            self.basis, other.basis,
            "class arithmetic across different lattices"
        );
        Self {
            basis: self.basis,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add<&LatticeClass> for &LatticeClass {
    type Output = LatticeClass;
    fn add(self, rhs: &LatticeClass) -> LatticeClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for LatticeClass {
    type Output = LatticeClass;
    fn add(self, rhs: LatticeClass) -> LatticeClass {
        &self + &rhs
    }
}

impl Sub<&LatticeClass> for &LatticeClass {
    type Output = LatticeClass;
    fn sub(self, rhs: &LatticeClass) -> LatticeClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Sub for LatticeClass {
    type Output = LatticeClass;
    fn sub(self, rhs: LatticeClass) -> LatticeClass {
        &self - &rhs
    }
}

impl Neg for &LatticeClass {
    type Output = LatticeClass;
    fn neg(self) -> LatticeClass {
        LatticeClass {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LatticeClass {
    type Output = LatticeClass;
    fn neg(self) -> LatticeClass {
        -&self
    }
}

impl Mul<&LatticeClass> for i64 {
    type Output = LatticeClass;
    fn mul(self, rhs: &LatticeClass) -> LatticeClass {
        rhs.scale(&BigInt::from(self))
    }
}

/// A rational surface with its Picard lattice and distinguished classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    kind: ModelKind,
    gram: Vec<Vec<i64>>,
    canonical: LatticeClass,
    fiber: Option<LatticeClass>,
    base: Option<LatticeClass>,
    effective_generators: Vec<LatticeClass>,
}

impl SurfaceModel {
    pub fn build(kind: ModelKind) -> Result<Self> {
        let n = kind.points();
        if n > MAX_POINTS {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
                allowed: format!("0..={MAX_POINTS}"),
            });
        }
        let rank = kind.rank();
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut canonical = vec![1i64; rank];
        let (fiber, base) = match kind {
            ModelKind::HirzebruchBlowup(_) => {
                gram[0][0] = -1;
                gram[0][1] = 1;
                gram[1][0] = 1;
                for (i, row) in gram.iter_mut().enumerate().skip(2) {
                    row[i] = -1;
                }
                canonical[0] = -2;
                canonical[1] = -3;
                (Some(LatticeClass::unit(kind, 1)), Some(LatticeClass::unit(kind, 0)))
            }
            ModelKind::P2Blowup(_) => {
                gram[0][0] = 1;
                for (i, row) in gram.iter_mut().enumerate().skip(1) {
                    row[i] = -1;
                }
                canonical[0] = -3;
                (None, None)
            }
        };
        let canonical = LatticeClass::from_i64(kind, &canonical)?;
        let effective_generators = default_effective_generators(kind)?;
        Ok(Self {
            kind,
            gram,
            canonical,
            fiber,
            base,
            effective_generators,
        })
    }

    pub fn hirzebruch(n: usize) -> Result<Self> {
        Self::build(ModelKind::HirzebruchBlowup(n))
    }

    pub fn p2(n: usize) -> Result<Self> {
        Self::build(ModelKind::P2Blowup(n))
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &LatticeClass {
        &self.canonical
    }

    /// The boundary elliptic curve class `E = -K`.
    pub fn boundary(&self) -> LatticeClass {
        -&self.canonical
    }

    pub fn fiber(&self) -> Result<&LatticeClass> {
        self.fiber.as_ref().ok_or(Error::MissingClass {
            kind: self.kind,
            class: "fiber (f)",
        })
    }

    pub fn base(&self) -> Result<&LatticeClass> {
        self.base.as_ref().ok_or(Error::MissingClass {
            kind: self.kind,
            class: "base (b)",
        })
    }

    /// The distinguished line `l_0` (`b` on Hirzebruch models).
    pub fn l0(&self) -> Result<LatticeClass> {
        LatticeClass::line(self.kind, 0)
    }

    pub fn line(&self, i: usize) -> Result<LatticeClass> {
        LatticeClass::line(self.kind, i)
    }

    pub fn effective_generators(&self) -> &[LatticeClass] {
        &self.effective_generators
    }

    pub fn class(&self, coeffs: &[i64]) -> Result<LatticeClass> {
        LatticeClass::from_i64(self.kind, coeffs)
    }

    pub fn pair(&self, a: &LatticeClass, b: &LatticeClass) -> Result<BigInt> {
        self.check(a)?;
        a.pair(b)
    }

    /// `a^T G b` evaluated directly from the stored Gram matrix.
    pub fn pair_via_gram(&self, a: &LatticeClass, b: &LatticeClass) -> Result<BigInt> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = BigInt::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != 0 {
                    acc += &a.coeffs[i] * &b.coeffs[j] * g;
                }
            }
        }
        Ok(acc)
    }

    /// Inertia `(positive, negative, zero)` of the Gram matrix.
    pub fn signature(&self) -> (usize, usize, usize) {
        let q: linalg::QMatrix = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| linalg::q(x)).collect())
            .collect();
        linalg::inertia(&q)
    }

    pub fn check(&self, c: &LatticeClass) -> Result<()> {
        if c.basis != self.kind {
            return Err(Error::BasisMismatch {
                left: self.kind,
                right: c.basis,
            });
        }
        Ok(())
    }
}

fn default_effective_generators(kind: ModelKind) -> Result<Vec<LatticeClass>> {
    let n = kind.points();
    let mut gens = Vec::new();
    match kind {
        ModelKind::HirzebruchBlowup(_) => {
            let b = LatticeClass::unit(kind, 0);
            let f = LatticeClass::unit(kind, 1);
            gens.push(b);
            gens.push(f.clone());
            for i in 1..=n {
                let l = LatticeClass::line(kind, i)?;
                gens.push(&f - &l);
                gens.push(l);
            }
        }
        ModelKind::P2Blowup(_) => {
            let h = LatticeClass::unit(kind, 0);
            match n {
                0 => gens.push(h),
                1 => {
                    let l0 = LatticeClass::line(kind, 0)?;
                    gens.push(&h - &l0);
                    gens.push(l0);
                }
                _ => {
                    for i in 0..n {
                        gens.push(LatticeClass::line(kind, i)?);
                    }
                    for i in 0..n {
                        for j in i + 1..n {
                            let li = LatticeClass::line(kind, i)?;
                            let lj = LatticeClass::line(kind, j)?;
                            gens.push(&(&h - &li) - &lj);
                        }
                    }
                }
            }
        }
    }
    gens.sort();
    Ok(gens)
}

/// Map a class between the two presentations of the same surface.
///
/// The dictionary identifies `HirzebruchBlowup(n)` with `P2Blowup(n + 1)`:
/// `b -> l_0`, `f -> h - l_0`, `l_i -> l_i`, and conversely `h -> b + f`.
/// Identical models map by the identity.
pub fn change_basis(from: &SurfaceModel, to: &SurfaceModel, cls: &LatticeClass) -> Result<LatticeClass> {
    from.check(cls)?;
    let c = cls.coeffs();
    match (from.kind, to.kind) {
        (a, b) if a == b => Ok(cls.clone()),
        (ModelKind::HirzebruchBlowup(n), ModelKind::P2Blowup(m)) if m == n + 1 => {
            // beta b + phi f + sum m_i l_i  ->  phi h + (beta - phi) l_0 + sum m_i l_i
            let mut out = Vec::with_capacity(m + 1);
            out.push(c[1].clone());
            out.push(&c[0] - &c[1]);
            out.extend(c[2..].iter().cloned());
            LatticeClass::new(to.kind, out)
        }
        (ModelKind::P2Blowup(m), ModelKind::HirzebruchBlowup(n)) if m == n + 1 => {
            // d h + e_0 l_0 + sum m_i l_i  ->  (d + e_0) b + d f + sum m_i l_i
            let mut out = Vec::with_capacity(n + 2);
            out.push(&c[0] + &c[1]);
            out.push(c[0].clone());
            out.extend(c[2..].iter().cloned());
            LatticeClass::new(to.kind, out)
        }
        (a, b) => Err(Error::UnrelatedModels { from: a, to: b }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn canonical_class_of_hirzebruch_blowup() {
        let s = SurfaceModel::hirzebruch(3).unwrap();
        assert_eq!(s.canonical(), &s.class(&[-2, -3, 1, 1, 1]).unwrap());
        assert_eq!(s.boundary(), s.class(&[2, 3, -1, -1, -1]).unwrap());
    }

    #[test]
    fn small_models() {
        let s = SurfaceModel::hirzebruch(0).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.canonical().self_pairing(), big(8));

        let p = SurfaceModel::p2(0).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.canonical(), &p.class(&[-3]).unwrap());
        assert_eq!(p.canonical().self_pairing(), big(9));
    }

    #[test]
    fn canonical_square_formula() {
        for n in 0..=12 {
            let h = SurfaceModel::hirzebruch(n).unwrap();
            assert_eq!(h.canonical().self_pairing(), big(8 - n as i64));
            let p = SurfaceModel::p2(n).unwrap();
            assert_eq!(p.canonical().self_pairing(), big(9 - n as i64));
        }
    }

    #[test]
    fn named_pairings() {
        let s = SurfaceModel::hirzebruch(3).unwrap();
        let l1 = s.line(1).unwrap();
        assert_eq!(s.pair(&l1, &l1).unwrap(), big(-1));
        let f = s.fiber().unwrap();
        assert_eq!(s.pair(f, f).unwrap(), big(0));
        let p = SurfaceModel::p2(6).unwrap();
        assert_eq!(p.pair(p.canonical(), p.canonical()).unwrap(), big(3));
    }

    #[test]
    fn pairing_rejects_mixed_bases() {
        let a = SurfaceModel::hirzebruch(2).unwrap();
        let b = SurfaceModel::p2(3).unwrap();
        let err = a.canonical().pair(b.canonical()).unwrap_err();
        assert!(matches!(err, Error::BasisMismatch { .. }));
    }

    #[test]
    fn out_of_range_points() {
        assert!(matches!(
            SurfaceModel::p2(65),
            Err(Error::OutOfRange { what: "n", .. })
        ));
        assert!(SurfaceModel::hirzebruch(64).is_ok());
    }

    #[test]
    fn signature_is_hyperbolic() {
        for n in [0, 1, 5, 9, 20] {
            let s = SurfaceModel::hirzebruch(n).unwrap();
            assert_eq!(s.signature(), (1, s.rank() - 1, 0));
            let p = SurfaceModel::p2(n).unwrap();
            assert_eq!(p.signature(), (1, p.rank() - 1, 0));
        }
    }

    #[test]
    fn dictionary_images() {
        let hz = SurfaceModel::hirzebruch(3).unwrap();
        let p2 = SurfaceModel::p2(4).unwrap();
        let f = change_basis(&hz, &p2, hz.fiber().unwrap()).unwrap();
        assert_eq!(f, &p2.class(&[1, 0, 0, 0, 0]).unwrap() - &p2.line(0).unwrap());
        let b = change_basis(&hz, &p2, hz.base().unwrap()).unwrap();
        assert_eq!(b, p2.line(0).unwrap());
        let k = change_basis(&hz, &p2, hz.canonical()).unwrap();
        assert_eq!(&k, p2.canonical());
        let back = change_basis(&p2, &hz, &k).unwrap();
        assert_eq!(&back, hz.canonical());
    }

    #[test]
    fn dictionary_is_an_isometry_on_a_full_basis() {
        for n in 0..8 {
            let hz = SurfaceModel::hirzebruch(n).unwrap();
            let p2 = SurfaceModel::p2(n + 1).unwrap();
            for i in 0..hz.rank() {
                for j in 0..hz.rank() {
                    let x = LatticeClass::unit(hz.kind(), i);
                    let y = LatticeClass::unit(hz.kind(), j);
                    let tx = change_basis(&hz, &p2, &x).unwrap();
                    let ty = change_basis(&hz, &p2, &y).unwrap();
                    assert_eq!(x.pair(&y).unwrap(), tx.pair(&ty).unwrap());
                    assert_eq!(change_basis(&p2, &hz, &tx).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn unrelated_models_rejected() {
        let hz = SurfaceModel::hirzebruch(3).unwrap();
        let p2 = SurfaceModel::p2(6).unwrap();
        assert!(matches!(
            change_basis(&hz, &p2, hz.canonical()),
            Err(Error::UnrelatedModels { .. })
        ));
    }

    #[test]
    fn model_ids_round_trip() {
        for kind in [ModelKind::HirzebruchBlowup(3), ModelKind::P2Blowup(0)] {
            assert_eq!(ModelKind::parse_id(&kind.id()).unwrap(), kind);
        }
        assert!(ModelKind::parse_id("torus(2)").is_err());
    }

    #[test]
    fn pretty_printing() {
        let s = SurfaceModel::hirzebruch(2).unwrap();
        assert_eq!(s.canonical().pretty(), "-2b - 3f + l1 + l2");
        assert_eq!(LatticeClass::zero(s.kind()).pretty(), "0");
    }
}
