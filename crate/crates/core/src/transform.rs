//! Class-level transform from spectral fiber data to bundles on the surface fiber and on `E`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::bundle::{
    boundary_degree, restrict_to_boundary, EBundleClass, EBundleEntry, EGroup, EGroupPoint, FormalBundle, Marking,
    Summand,
};
use crate::divisor::CollisionConfig;
use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, ModelKind, SurfaceModel};
use crate::local::{check_free, check_generate, verify_extension_chain, GradedModule, TruncRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistMode {
    /// `O(D)`: summands `l_(i)`.
    RawD,
    /// `O(D - l_0)`: summands `l_(i) - l_0`, degree zero on `E`.
    MinusL0,
    /// As `MinusL0`, plus the base twist degree.
    FullP,
}

impl TwistMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "raw_D" | "raw" => Some(Self::RawD),
            "minus_l0" => Some(Self::MinusL0),
            "full_P" | "full" => Some(Self::FullP),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::RawD => "raw_D",
            Self::MinusL0 => "minus_l0",
            Self::FullP => "full_P",
        }
    }
}

impl fmt::Display for TwistMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A point of the cover over the chosen base point, with the number of sheets meeting there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sheet {
    pub point: EGroupPoint,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralFiberDatum {
    group: EGroup,
    sheets: Vec<Sheet>,
    su_constraint: bool,
    base_twist_degree: i64,
}

impl SpectralFiberDatum {
    /// One sheet per listed point; coincident points merge into one sheet of higher degree.
    pub fn from_points(group: EGroup, points: &[EGroupPoint], base_twist_degree: i64) -> Result<Self> {
        let pairs: Vec<(EGroupPoint, u32)> = points.iter().map(|&p| (p, 1)).collect();
        Self::with_degrees(group, &pairs, base_twist_degree)
    }

    pub fn from_values(group: EGroup, values: &[i64], base_twist_degree: i64) -> Result<Self> {
        let pts: Vec<EGroupPoint> = values.iter().map(|&v| group.point(v)).collect();
        Self::from_points(group, &pts, base_twist_degree)
    }

    pub fn with_degrees(group: EGroup, sheets: &[(EGroupPoint, u32)], base_twist_degree: i64) -> Result<Self> {
        let mut merged: BTreeMap<EGroupPoint, u32> = BTreeMap::new();
        for &(p, d) in sheets {
            if d == 0 {
                return Err(Error::InvalidDatum(format!("sheet at {p} has degree 0")));
            }
            if p.value() >= group.order() {
                return Err(Error::InvalidDatum(format!("point {p} is not in Z/{}", group.order())));
            }
            *merged.entry(p).or_default() += d;
        }
        let sheets: Vec<Sheet> = merged.into_iter().map(|(point, degree)| Sheet { point, degree }).collect();
        let total = group.sum(
            sheets
                .iter()
                .flat_map(|s| std::iter::repeat_n(&s.point, s.degree as usize)),
        );
        Ok(Self {
            group,
            su_constraint: total == group.origin(),
            sheets,
            base_twist_degree,
        })
    }

    pub fn group(&self) -> EGroup {
        self.group
    }

    pub fn sheets(&self) -> &[Sheet] {
        &self.sheets
    }

    /// Whether the points sum to the origin, counted with multiplicity.
    pub fn su_constraint(&self) -> bool {
        self.su_constraint
    }

    pub fn base_twist_degree(&self) -> i64 {
        self.base_twist_degree
    }

    /// Cover degree over the base.
    pub fn n(&self) -> usize {
        self.sheets.iter().map(|s| s.degree as usize).sum()
    }

    /// Points with multiplicity, in sorted order; the `k`-th goes to line `l_k`.
    pub fn assigned_points(&self) -> Vec<EGroupPoint> {
        self.sheets
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.point, s.degree as usize))
            .collect()
    }

    pub fn marking(&self) -> Marking {
        let mut m = Marking::new(self.group);
        for (k, p) in self.assigned_points().into_iter().enumerate() {
            m.set(k + 1, p);
        }
        m
    }

    /// Line ranges `(first, multiplicity)` per sheet.
    fn line_ranges(&self) -> Vec<(usize, Sheet)> {
        let mut k = 1;
        self.sheets
            .iter()
            .map(|s| {
                let start = k;
                k += s.degree as usize;
                (start, *s)
            })
            .collect()
    }

    /// Collisions `(k, k+1)` needed for every sheet of degree at least two.
    pub fn required_collisions(&self) -> Vec<(usize, usize)> {
        self.line_ranges()
            .into_iter()
            .flat_map(|(k, s)| (k..k + s.degree as usize - 1).map(|i| (i, i + 1)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionBlock {
    pub point: EGroupPoint,
    pub multiplicity: u32,
    /// Filtration classes, sub-object first.
    pub classes: Vec<LatticeClass>,
}

impl CollisionBlock {
    pub fn c1(&self) -> LatticeClass {
        let kind = self.classes[0].basis();
        self.classes.iter().fold(LatticeClass::zero(kind), |acc, c| &acc + c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformResult {
    pub mode: TwistMode,
    pub bundle: FormalBundle,
    pub collision_blocks: Vec<CollisionBlock>,
    pub c1: LatticeClass,
    /// `c1 . E`.
    pub c1_fiber: BigInt,
    /// Restriction to `E`; for `RawD` this is taken after the `-l_0` twist.
    pub boundary: EBundleClass,
    /// Only tracked in `FullP` mode.
    pub base_twist_degree: Option<i64>,
}

fn a_type_n(model: &SurfaceModel) -> Result<usize> {
    match model.kind() {
        ModelKind::HirzebruchBlowup(n) => Ok(n),
        kind => Err(Error::InvalidDatum(format!(
            "the transform needs a HirzebruchBlowup model, got {kind}"
        ))),
    }
}

pub fn transform(
    model: &SurfaceModel,
    collisions: &CollisionConfig,
    datum: &SpectralFiberDatum,
    mode: TwistMode,
) -> Result<TransformResult> {
    let n = a_type_n(model)?;
    if n != datum.n() {
        return Err(Error::InvalidDatum(format!(
            "cover degree {} does not match the {n} lines of the model",
            datum.n()
        )));
    }
    for (i, j) in datum.required_collisions() {
        if !collisions.contains(i, j) {
            return Err(Error::MissingCollision { i, j });
        }
    }
    let l0 = model.l0()?;
    let shift = match mode {
        TwistMode::RawD => LatticeClass::zero(model.kind()),
        TwistMode::MinusL0 | TwistMode::FullP => -&l0,
    };
    let mut summands = Vec::new();
    let mut blocks = Vec::new();
    let mut group_id = 0;
    for (k, sheet) in datum.line_ranges() {
        let m = sheet.degree as usize;
        if m == 1 {
            summands.push(Summand {
                class: &model.line(k)? + &shift,
                ext_group: 0,
            });
            continue;
        }
        group_id += 1;
        let mut classes = Vec::new();
        for i in (k..k + m).rev() {
            let class = &model.line(i)? + &shift;
            summands.push(Summand {
                class: class.clone(),
                ext_group: group_id,
            });
            classes.push(class);
        }
        blocks.push(CollisionBlock {
            point: sheet.point,
            multiplicity: sheet.degree,
            classes,
        });
    }
    let bundle = FormalBundle::new(model.kind(), summands)?;
    let boundary_bundle = match mode {
        TwistMode::RawD => bundle.twist(&-&l0)?,
        _ => bundle.clone(),
    };
    let boundary = restrict_to_boundary(model, &boundary_bundle, &datum.marking())?;
    let c1 = bundle.c1();
    let c1_fiber = boundary_degree(model, &c1)?;
    Ok(TransformResult {
        mode,
        bundle,
        collision_blocks: blocks,
        c1,
        c1_fiber,
        boundary,
        base_twist_degree: (mode == TwistMode::FullP).then_some(datum.base_twist_degree()),
    })
}

/// The boundary bundle read directly off the spectral points.
pub fn fm_classlevel(datum: &SpectralFiberDatum) -> EBundleClass {
    let entries = datum
        .sheets()
        .iter()
        .map(|s| EBundleEntry {
            point: s.point,
            mult: s.degree,
            regular: s.degree >= 2,
        })
        .collect();
    EBundleClass::canonical(datum.group(), entries)
}

/// Transform with full twist, restrict to `E`, and compare with [`fm_classlevel`].
pub fn check_restriction_compatibility(model: &SurfaceModel, datum: &SpectralFiberDatum) -> Result<bool> {
    let collisions = CollisionConfig::new(model, &datum.required_collisions())?;
    let t = transform(model, &collisions, datum, TwistMode::FullP)?;
    Ok(t.boundary == fm_classlevel(datum))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalClass {
    pub multiplicity: u32,
    pub free_rank: usize,
    /// Generators over the base coordinate `t`.
    pub generators: Vec<String>,
    pub checked_degree: u32,
    /// Splitting on the exceptional curve, when verified.
    pub exceptional_split: Option<Vec<i64>>,
}

impl LocalClass {
    pub fn describe(&self) -> String {
        format!("free of rank {}", self.free_rank)
    }
}

/// Local structure of the pushforward near a point where `m` sheets meet: `Q[s,t]/(s^m = t)` over `Q[t]`.
pub fn local_isomorphism_class(m: u32) -> Result<LocalClass> {
    if m == 0 {
        return Err(Error::OutOfRange {
            what: "multiplicity",
            value: 0,
            allowed: ">= 1".into(),
        });
    }
    let maxdeg = (2 * m).max(8);
    let rhs = "t".to_string();
    let lhs = format!("s^{m}");
    let ring = TruncRing::from_strings(&[("s", 1), ("t", m)], &[(&lhs, &rhs)], maxdeg)?;
    let gens: Vec<String> = (0..m)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "s".to_string(),
            _ => format!("s^{k}"),
        })
        .collect();
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    let module = GradedModule::parse(&ring, &refs, &["t"])?;
    let whole = GradedModule::whole_ring(&ring);
    let g = check_generate(&ring, &whole, &module, maxdeg)?;
    let f = check_free(&ring, &module, maxdeg)?;
    if !(g.holds && f.holds) {
        return Err(Error::InvalidRing(format!(
            "pushforward at multiplicity {m} failed to be free at degree {:?}",
            g.first_failure.or(f.first_failure)
        )));
    }
    let mut split = None;
    if m == 1 {
        split = Some(vec![0]);
    }
    if m == 2 {
        let chain = verify_extension_chain(6)?;
        let ok = ["pushforward_generators", "f2_free"]
            .iter()
            .all(|id| chain.checks.iter().any(|c| c.id == *id && c.passed));
        if !ok {
            return Err(Error::InvalidRing("conifold cross-check failed".into()));
        }
        split = Some(vec![chain.free_split.0, chain.free_split.1]);
    }
    Ok(LocalClass {
        multiplicity: m,
        free_rank: m as usize,
        generators: gens,
        checked_degree: maxdeg,
        exceptional_split: split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize) -> SurfaceModel {
        SurfaceModel::hirzebruch(n).unwrap()
    }

    #[test]
    fn distinct_points_minus_l0() {
        let s = h(3);
        let g = EGroup::new(12).unwrap();
        let d = SpectralFiberDatum::from_values(g, &[1, 4, 7], 0).unwrap();
        assert!(d.su_constraint());
        let t = transform(&s, &CollisionConfig::none(), &d, TwistMode::MinusL0).unwrap();
        let l0 = s.l0().unwrap();
        let want: Vec<LatticeClass> = (1..=3).map(|i| &s.line(i).unwrap() - &l0).collect();
        assert_eq!(t.bundle.classes().cloned().collect::<Vec<_>>(), want);
        assert_eq!(t.c1_fiber, BigInt::from(0));
        assert_eq!(t.boundary, fm_classlevel(&d));
        assert_eq!(t.boundary.entries.len(), 3);
    }

    #[test]
    fn collision_block() {
        let s = h(2);
        let g = EGroup::new(10).unwrap();
        let d = SpectralFiberDatum::from_values(g, &[5, 5], 0).unwrap();
        assert_eq!(d.required_collisions(), vec![(1, 2)]);
        assert!(matches!(
            transform(&s, &CollisionConfig::none(), &d, TwistMode::MinusL0),
            Err(Error::MissingCollision { i: 1, j: 2 })
        ));
        let cfg = CollisionConfig::new(&s, &[(1, 2)]).unwrap();
        let t = transform(&s, &cfg, &d, TwistMode::MinusL0).unwrap();
        let l0 = s.l0().unwrap();
        let (l1, l2) = (s.line(1).unwrap(), s.line(2).unwrap());
        assert_eq!(t.collision_blocks.len(), 1);
        assert_eq!(t.collision_blocks[0].classes, vec![&l2 - &l0, &l1 - &l0]);
        assert_eq!(t.boundary.entries, vec![EBundleEntry { point: g.point(5), mult: 2, regular: true }]);
        let raw = transform(&s, &cfg, &d, TwistMode::RawD).unwrap();
        assert_eq!(raw.collision_blocks[0].c1(), &l1 + &l2);
        assert!(check_restriction_compatibility(&s, &d).unwrap());
    }

    #[test]
    fn rank_one_raw() {
        let s = h(1);
        let g = EGroup::new(7).unwrap();
        let d = SpectralFiberDatum::from_values(g, &[3], 2).unwrap();
        assert!(!d.su_constraint());
        let t = transform(&s, &CollisionConfig::none(), &d, TwistMode::RawD).unwrap();
        assert_eq!(t.bundle.classes().cloned().collect::<Vec<_>>(), vec![s.line(1).unwrap()]);
        assert_eq!(t.c1_fiber, BigInt::from(1));
        assert_eq!(t.base_twist_degree, None);
        let full = transform(&s, &CollisionConfig::none(), &d, TwistMode::FullP).unwrap();
        assert_eq!(full.base_twist_degree, Some(2));
    }

    #[test]
    fn empty_datum() {
        let g = EGroup::default();
        let d = SpectralFiberDatum::from_values(g, &[], 0).unwrap();
        assert_eq!(fm_classlevel(&d), EBundleClass::empty(g));
        assert!(check_restriction_compatibility(&h(0), &d).unwrap());
    }

    #[test]
    fn local_classes() {
        let one = local_isomorphism_class(1).unwrap();
        assert_eq!(one.describe(), "free of rank 1");
        let two = local_isomorphism_class(2).unwrap();
        assert_eq!(two.free_rank, 2);
        assert_eq!(two.exceptional_split, Some(vec![0, 0]));
        assert_eq!(local_isomorphism_class(4).unwrap().free_rank, 4);
        assert!(local_isomorphism_class(0).is_err());
    }
}
