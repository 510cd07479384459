//! Tautological bundles as formal sums of divisor classes, and their
//! restriction to the boundary curve `E = -K`.
//!
//! The group law of `E` is modeled by the cyclic group `Z/N` with the
//! origin `p_0 = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, ModelKind, SurfaceModel};

/// Default order of the boundary group model.
pub const DEFAULT_GROUP_ORDER: u64 = 720;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rep {
    FundamentalA,
    VectorD,
    Adjoint,
}

impl Rep {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fundamental_A" | "fundamental" => Some(Rep::FundamentalA),
            "vector_D" | "vector" => Some(Rep::VectorD),
            "adjoint" => Some(Rep::Adjoint),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rep::FundamentalA => "fundamental_A",
            Rep::VectorD => "vector_D",
            Rep::Adjoint => "adjoint",
        }
    }
}

/// A line-bundle summand; `ext_group != 0` ties summands into one
/// extension block, listed sub-object first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub class: LatticeClass,
    pub ext_group: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalBundle {
    kind: ModelKind,
    summands: Vec<Summand>,
}

impl FormalBundle {
    pub fn new(kind: ModelKind, summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if s.class.basis() != kind {
                return Err(Error::BasisMismatch {
                    left: kind,
                    right: s.class.basis(),
                });
            }
        }
        Ok(Self { kind, summands })
    }

    /// Direct sum of line bundles, no extension blocks.
    pub fn plain(kind: ModelKind, classes: Vec<LatticeClass>) -> Result<Self> {
        Self::new(
            kind,
            classes
                .into_iter()
                .map(|class| Summand { class, ext_group: 0 })
                .collect(),
        )
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn classes(&self) -> impl Iterator<Item = &LatticeClass> {
        self.summands.iter().map(|s| &s.class)
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn c1(&self) -> LatticeClass {
        self.classes()
            .fold(LatticeClass::zero(self.kind), |acc, c| &acc + c)
    }

    /// Tensor every summand with `O(by)`.
    pub fn twist(&self, by: &LatticeClass) -> Result<Self> {
        if by.basis() != self.kind {
            return Err(Error::BasisMismatch {
                left: self.kind,
                right: by.basis(),
            });
        }
        Ok(Self {
            kind: self.kind,
            summands: self
                .summands
                .iter()
                .map(|s| Summand {
                    class: &s.class + by,
                    ext_group: s.ext_group,
                })
                .collect(),
        })
    }

    /// Summands of each extension block, in stored order.
    pub fn blocks(&self) -> BTreeMap<u32, Vec<&LatticeClass>> {
        let mut out: BTreeMap<u32, Vec<&LatticeClass>> = BTreeMap::new();
        for s in self.summands.iter().filter(|s| s.ext_group != 0) {
            out.entry(s.ext_group).or_default().push(&s.class);
        }
        out
    }
}

/// Lines `l_1, ..., l_n` of the A-type configuration.
fn a_lines(model: &SurfaceModel) -> Result<Vec<LatticeClass>> {
    let n = match model.kind() {
        ModelKind::HirzebruchBlowup(n) => n,
        ModelKind::P2Blowup(m) => m.saturating_sub(1),
    };
    (1..=n).map(|i| model.line(i)).collect()
}

pub fn build_tautological(model: &SurfaceModel, rep: Rep) -> Result<FormalBundle> {
    let kind = model.kind();
    match rep {
        Rep::FundamentalA => FormalBundle::plain(kind, a_lines(model)?),
        Rep::VectorD => {
            let ModelKind::HirzebruchBlowup(_) = kind else {
                return Err(Error::RepModelMismatch {
                    rep: rep.name(),
                    kind,
                });
            };
            let f = model.fiber()?;
            let lines = a_lines(model)?;
            let mut classes = lines.clone();
            classes.extend(lines.iter().map(|l| f - l));
            FormalBundle::plain(kind, classes)
        }
        Rep::Adjoint => {
            let lines = a_lines(model)?;
            let n = lines.len();
            let mut classes = vec![LatticeClass::zero(kind); n.saturating_sub(1)];
            let mut roots = Vec::new();
            for (i, a) in lines.iter().enumerate() {
                for (j, b) in lines.iter().enumerate() {
                    if i != j {
                        roots.push(a - b);
                    }
                }
            }
            roots.sort();
            classes.extend(roots);
            FormalBundle::plain(kind, classes)
        }
    }
}

/// `cls . E` with `E = -K`.
pub fn boundary_degree(model: &SurfaceModel, cls: &LatticeClass) -> Result<BigInt> {
    model.pair(cls, &model.boundary())
}

/// The cyclic model `Z/N` of the boundary group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EGroup {
    order: u64,
}

impl Default for EGroup {
    fn default() -> Self {
        Self {
            order: DEFAULT_GROUP_ORDER,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EGroupPoint(u64);

impl EGroupPoint {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for EGroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl EGroup {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::OutOfRange {
                what: "N",
                value: 0,
                allowed: ">= 1".into(),
            });
        }
        Ok(Self { order })
    }

    pub fn order(self) -> u64 {
        self.order
    }

    pub fn origin(self) -> EGroupPoint {
        EGroupPoint(0)
    }

    pub fn point(self, v: i64) -> EGroupPoint {
        EGroupPoint(v.rem_euclid(self.order as i64) as u64)
    }

    pub fn point_big(self, v: &BigInt) -> EGroupPoint {
        let r = ((v % self.order) + self.order) % self.order;
        EGroupPoint(r.to_u64().expect("reduced mod N"))
    }

    pub fn add(self, a: EGroupPoint, b: EGroupPoint) -> EGroupPoint {
        EGroupPoint(((a.0 as u128 + b.0 as u128) % self.order as u128) as u64)
    }

    pub fn neg(self, a: EGroupPoint) -> EGroupPoint {
        EGroupPoint((self.order - a.0 % self.order) % self.order)
    }

    pub fn mul(self, k: &BigInt, a: EGroupPoint) -> EGroupPoint {
        self.point_big(&(k * BigInt::from(a.0)))
    }

    pub fn sum<'a>(self, pts: impl IntoIterator<Item = &'a EGroupPoint>) -> EGroupPoint {
        pts.into_iter().fold(self.origin(), |acc, p| self.add(acc, *p))
    }
}

/// `sum p_i = 0` in the group.
pub fn check_su_constraint(group: EGroup, points: &[EGroupPoint]) -> bool {
    group.sum(points) == group.origin()
}

/// Points `p_i` attached to the marked lines `l_i` (`i >= 1`); `l_0` is
/// attached to the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub group: EGroup,
    pub points: BTreeMap<usize, EGroupPoint>,
}

impl Marking {
    pub fn new(group: EGroup) -> Self {
        Self {
            group,
            points: BTreeMap::new(),
        }
    }

    /// `l_i -> p_i` for `i = 1..=n` from a list of values.
    pub fn from_values(group: EGroup, values: &[i64]) -> Self {
        Self {
            group,
            points: values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i + 1, group.point(v)))
                .collect(),
        }
    }

    pub fn set(&mut self, line: usize, p: EGroupPoint) {
        self.points.insert(line, p);
    }
}

/// Image of a degree-zero class in the group: `sum m_i p_i` over the
/// marked-line coefficients `m_i` (`i >= 1`).
pub fn class_point(marking: &Marking, cls: &LatticeClass) -> Result<EGroupPoint> {
    let kind = cls.basis();
    let mut acc = marking.group.origin();
    for i in 1..=kind.points() {
        let Some(idx) = kind.line_index(i) else {
            continue;
        };
        let m = &cls.coeffs()[idx];
        if m.is_zero() {
            continue;
        }
        let p = marking.points.get(&i).ok_or(Error::UnmarkedLine(i))?;
        acc = marking.group.add(acc, marking.group.mul(m, *p));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EBundleEntry {
    pub point: EGroupPoint,
    pub mult: u32,
    /// Single Jordan block (regular representative) rather than a direct sum.
    pub regular: bool,
}

/// Degree-zero bundle on `E` as a sorted list of points with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EBundleClass {
    pub order: u64,
    pub entries: Vec<EBundleEntry>,
}

impl EBundleClass {
    pub fn empty(group: EGroup) -> Self {
        Self {
            order: group.order(),
            entries: Vec::new(),
        }
    }

    /// Merges plain entries at the same point and sorts.
    pub fn canonical(group: EGroup, entries: Vec<EBundleEntry>) -> Self {
        let mut plain: BTreeMap<EGroupPoint, u32> = BTreeMap::new();
        let mut out = Vec::new();
        for e in entries {
            if e.regular {
                out.push(e);
            } else {
                *plain.entry(e.point).or_default() += e.mult;
            }
        }
        out.extend(plain.into_iter().map(|(point, mult)| EBundleEntry {
            point,
            mult,
            regular: false,
        }));
        out.sort();
        Self {
            order: group.order(),
            entries: out,
        }
    }

    pub fn rank(&self) -> u32 {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// The multiset of points with multiplicity, ignoring block structure.
    pub fn point_multiset(&self) -> BTreeMap<EGroupPoint, u32> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.point).or_default() += e.mult;
        }
        out
    }
}

/// Restrict a degree-zero formal bundle to `E`.
///
/// Each plain summand becomes a simple point; each extension block must
/// land on a single point and becomes one regular entry.
pub fn restrict_to_boundary(
    model: &SurfaceModel,
    bundle: &FormalBundle,
    marking: &Marking,
) -> Result<EBundleClass> {
    let mut entries = Vec::new();
    let mut blocks: BTreeMap<u32, (EGroupPoint, u32)> = BTreeMap::new();
    for s in bundle.summands() {
        let deg = boundary_degree(model, &s.class)?;
        if !deg.is_zero() {
            return Err(Error::NonzeroBoundaryDegree {
                class: s.class.pretty(),
                degree: deg.to_string(),
            });
        }
        let p = class_point(marking, &s.class)?;
        if s.ext_group == 0 {
            entries.push(EBundleEntry {
                point: p,
                mult: 1,
                regular: false,
            });
            continue;
        }
        match blocks.get_mut(&s.ext_group) {
            Some((q, m)) if *q == p => *m += 1,
            Some(_) => return Err(Error::SplitBlock { group: s.ext_group }),
            None => {
                blocks.insert(s.ext_group, (p, 1));
            }
        }
    }
    for (point, mult) in blocks.into_values() {
        entries.push(EBundleEntry {
            point,
            mult,
            regular: mult >= 2,
        });
    }
    Ok(EBundleClass::canonical(marking.group, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize) -> SurfaceModel {
        SurfaceModel::hirzebruch(n).unwrap()
    }

    #[test]
    fn tautological_summands() {
        let s = h(3);
        let w = build_tautological(&s, Rep::FundamentalA).unwrap();
        let expected: Vec<LatticeClass> = (1..=3).map(|i| s.line(i).unwrap()).collect();
        assert_eq!(w.classes().cloned().collect::<Vec<_>>(), expected);

        let s = h(2);
        let v = build_tautological(&s, Rep::VectorD).unwrap();
        let f = s.fiber().unwrap();
        let (l1, l2) = (s.line(1).unwrap(), s.line(2).unwrap());
        assert_eq!(
            v.classes().cloned().collect::<Vec<_>>(),
            vec![l1.clone(), l2.clone(), f - &l1, f - &l2]
        );

        let ad = build_tautological(&s, Rep::Adjoint).unwrap();
        assert_eq!(ad.rank(), 3);
        let mut got: Vec<LatticeClass> = ad.classes().cloned().collect();
        got.sort();
        let mut want = vec![LatticeClass::zero(s.kind()), &l1 - &l2, &l2 - &l1];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn vector_rep_needs_a_fiber() {
        let s = SurfaceModel::p2(4).unwrap();
        assert!(matches!(
            build_tautological(&s, Rep::VectorD),
            Err(Error::RepModelMismatch { .. })
        ));
        assert_eq!(build_tautological(&s, Rep::FundamentalA).unwrap().rank(), 3);
    }

    #[test]
    fn twists() {
        let s = h(3);
        let l0 = s.l0().unwrap();
        let w = build_tautological(&s, Rep::FundamentalA).unwrap();
        let t = w.twist(&-&l0).unwrap();
        for (i, c) in t.classes().enumerate() {
            assert_eq!(c, &(s.line(i + 1).unwrap() - l0.clone()));
        }
        assert_eq!(w.twist(&LatticeClass::zero(s.kind())).unwrap(), w);
        let v = build_tautological(&s, Rep::VectorD).unwrap().twist(&-&l0).unwrap();
        let f = s.fiber().unwrap();
        for (i, c) in v.classes().skip(3).enumerate() {
            assert_eq!(c, &(&(f - &s.line(i + 1).unwrap()) - &l0));
        }
    }

    #[test]
    fn boundary_degrees() {
        let s = h(5);
        let l0 = s.l0().unwrap();
        let l2 = s.line(2).unwrap();
        assert_eq!(boundary_degree(&s, &(&l2 - &l0)).unwrap(), BigInt::zero());
        assert_eq!(boundary_degree(&s, &l2).unwrap(), BigInt::from(1));
        assert_eq!(boundary_degree(&s, s.canonical()).unwrap(), BigInt::from(-(8 - 5)));
    }

    #[test]
    fn restriction_of_twisted_bundles() {
        let s = h(3);
        let g = EGroup::new(12).unwrap();
        let marking = Marking::from_values(g, &[2, 5, 5]);
        let l0 = s.l0().unwrap();
        let w = build_tautological(&s, Rep::FundamentalA).unwrap().twist(&-&l0).unwrap();
        let e = restrict_to_boundary(&s, &w, &marking).unwrap();
        assert_eq!(e.rank(), 3);
        assert_eq!(e.point_multiset().into_iter().collect::<Vec<_>>(), vec![(g.point(2), 1), (g.point(5), 2)]);

        let v = build_tautological(&s, Rep::VectorD).unwrap().twist(&-&l0).unwrap();
        let e = restrict_to_boundary(&s, &v, &marking).unwrap();
        let pts = e.point_multiset();
        for (p, m) in &pts {
            assert_eq!(pts.get(&g.neg(*p)), Some(m));
        }

        assert!(matches!(
            restrict_to_boundary(&s, &build_tautological(&s, Rep::FundamentalA).unwrap(), &marking),
            Err(Error::NonzeroBoundaryDegree { .. })
        ));
    }

    #[test]
    fn extension_block_restricts_to_a_regular_point() {
        let s = h(2);
        let g = EGroup::default();
        let marking = Marking::from_values(g, &[7, 7]);
        let l0 = s.l0().unwrap();
        let b = FormalBundle::new(
            s.kind(),
            vec![
                Summand { class: s.line(2).unwrap() - l0.clone(), ext_group: 1 },
                Summand { class: s.line(1).unwrap() - l0.clone(), ext_group: 1 },
            ],
        )
        .unwrap();
        let e = restrict_to_boundary(&s, &b, &marking).unwrap();
        assert_eq!(e.entries, vec![EBundleEntry { point: g.point(7), mult: 2, regular: true }]);

        let apart = Marking::from_values(g, &[7, 8]);
        assert!(matches!(
            restrict_to_boundary(&s, &b, &apart),
            Err(Error::SplitBlock { group: 1 })
        ));
    }

    #[test]
    fn su_constraint() {
        let g = EGroup::new(12).unwrap();
        assert!(check_su_constraint(g, &[g.point(0), g.point(0), g.point(0)]));
        assert!(check_su_constraint(g, &[g.point(5), g.point(7)]));
        assert!(!check_su_constraint(g, &[g.point(5), g.point(6)]));
        assert!(EGroup::new(0).is_err());
    }
}
