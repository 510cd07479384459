//! Riemann-Roch, effectivity and Ext bookkeeping for line-class differences.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, ModelKind, SurfaceModel};

/// Default node budget of the effectivity search.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

/// Collided blow-up points and the `(-2)`-curves they produce.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollisionConfig {
    pairs: Vec<(usize, usize)>,
    induced_curves: Vec<LatticeClass>,
}

impl CollisionConfig {
    pub fn none() -> Self {
        Self::default()
    }

    /// Pairs are normalized to `i < j`; the induced curve is `l_j - l_i`.
    pub fn new(model: &SurfaceModel, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::OutOfRange {
                    what: "collision index",
                    value: a as i64,
                    allowed: "two distinct points".into(),
                });
            }
            let p = (a.min(b), a.max(b));
            if !norm.contains(&p) {
                norm.push(p);
            }
        }
        norm.sort();
        let mut induced_curves = Vec::with_capacity(norm.len());
        for &(i, j) in &norm {
            let c = model.line(j)? - model.line(i)?;
            debug_assert_eq!(c.self_pairing(), BigInt::from(-2));
            debug_assert!(c.pair(model.canonical())?.is_zero());
            induced_curves.push(c);
        }
        Ok(Self {
            pairs: norm,
            induced_curves,
        })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn induced_curves(&self) -> &[LatticeClass] {
        &self.induced_curves
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i.min(j), i.max(j)))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `chi(O(D)) = 1 + (D.D - D.K) / 2`.
pub fn euler_char(model: &SurfaceModel, d: &LatticeClass) -> Result<BigInt> {
    let num = model.pair(d, d)? - model.pair(d, model.canonical())?;
    if num.is_odd() {
        return Err(Error::ParityViolation { class: d.pretty() });
    }
    Ok(BigInt::from(1) + num / 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Effectivity {
    /// Nonnegative combination `sum m_g g` reproducing the class.
    Effective(Vec<(LatticeClass, BigInt)>),
    NotEffective,
    Indeterminate { budget: usize },
}

impl Effectivity {
    pub fn is_effective(&self) -> bool {
        matches!(self, Effectivity::Effective(_))
    }
}

/// A class positive on every generator: `M P - sum (k + 1) l_k`, with
/// `P = -K` on Hirzebruch models and `P = h` on plane models, for the
/// least `M` that works.
pub fn polarization(model: &SurfaceModel, gens: &[LatticeClass]) -> Result<LatticeClass> {
    let kind = model.kind();
    let p = match kind {
        ModelKind::HirzebruchBlowup(_) => model.boundary(),
        ModelKind::P2Blowup(_) => LatticeClass::unit(kind, 0),
    };
    let mut tilt = LatticeClass::zero(kind);
    let first = match kind {
        ModelKind::HirzebruchBlowup(_) => 1,
        ModelKind::P2Blowup(_) => 0,
    };
    for k in first..first + kind.points() {
        tilt = &tilt - &model.line(k)?.scale(&BigInt::from(k as i64 + 1));
    }
    let limit = 4 * (kind.rank() as i64 + 2).pow(2);
    for m in 1..=limit {
        let a = &p.scale(&BigInt::from(m)) + &tilt;
        if gens.iter().all(|g| g.pair(&a).map(|v| v.is_positive()).unwrap_or(false)) {
            return Ok(a);
        }
    }
    Err(Error::NonPointedCone)
}

/// Decide whether `d` is a nonnegative combination of the model's effective
/// generators together with the collision curves.
pub fn is_effective(
    model: &SurfaceModel,
    collisions: &CollisionConfig,
    d: &LatticeClass,
) -> Result<Effectivity> {
    is_effective_with_budget(model, collisions, d, DEFAULT_NODE_BUDGET)
}

pub fn is_effective_with_budget(
    model: &SurfaceModel,
    collisions: &CollisionConfig,
    d: &LatticeClass,
    budget: usize,
) -> Result<Effectivity> {
    model.check(d)?;
    let mut gens: Vec<LatticeClass> = model.effective_generators().to_vec();
    for c in collisions.induced_curves() {
        if !gens.contains(c) {
            gens.push(c.clone());
        }
    }
    gens.sort();
    if d.is_zero() {
        return Ok(Effectivity::Effective(Vec::new()));
    }
    let a = polarization(model, &gens)?;
    let gens = closing_order(gens);
    let rank = model.rank();
    // closes[i]: coordinates no generator after position i touches
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    for c in 0..rank {
        match gens.iter().rposition(|g| !g.coeffs()[c].is_zero()) {
            Some(i) => closes[i].push(c),
            None if !d.coeffs()[c].is_zero() => return Ok(Effectivity::NotEffective),
            None => {}
        }
    }
    let weights: Vec<BigInt> = gens.iter().map(|g| g.pair(&a)).collect::<Result<_>>()?;
    let mut search = EffSearch {
        gens: &gens,
        weights: &weights,
        closes: &closes,
        a: &a,
        mult: vec![BigInt::zero(); gens.len()],
        nodes: 0,
        budget,
        dead: HashSet::new(),
    };
    match search.go(0, d.clone()) {
        Ok(true) => {
            let mut cert: Vec<(LatticeClass, BigInt)> = gens
                .iter()
                .zip(&search.mult)
                .filter(|(_, m)| !m.is_zero())
                .map(|(g, m)| (g.clone(), m.clone()))
                .collect();
            cert.sort();
            Ok(Effectivity::Effective(cert))
        }
        Ok(false) => Ok(Effectivity::NotEffective),
        Err(()) => Ok(Effectivity::Indeterminate { budget }),
    }
}

/// Orders generators so that coordinates are exhausted as early as
/// possible: repeatedly take every generator touching the coordinate with
/// the fewest untaken touchers.
fn closing_order(mut rest: Vec<LatticeClass>) -> Vec<LatticeClass> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let rank = rest[0].coeffs().len();
        let c = (0..rank)
            .filter_map(|c| {
                let n = rest.iter().filter(|g| !g.coeffs()[c].is_zero()).count();
                (n > 0).then_some((n, c))
            })
            .min()
            .map(|(_, c)| c)
            .expect("nonzero generators");
        let (take, keep): (Vec<_>, Vec<_>) = rest.into_iter().partition(|g| !g.coeffs()[c].is_zero());
        out.extend(take);
        rest = keep;
    }
    out
}

struct EffSearch<'a> {
    gens: &'a [LatticeClass],
    weights: &'a [BigInt],
    closes: &'a [Vec<usize>],
    a: &'a LatticeClass,
    mult: Vec<BigInt>,
    nodes: usize,
    budget: usize,
    dead: HashSet<(usize, LatticeClass)>,
}

impl EffSearch<'_> {
    fn go(&mut self, i: usize, rest: LatticeClass) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        if rest.is_zero() {
            for m in &mut self.mult[i..] {
                *m = BigInt::zero();
            }
            return Ok(true);
        }
        if i == self.gens.len() {
            return Ok(false);
        }
        let phi = rest.pair(self.a).expect("same basis");
        if !phi.is_positive() || self.dead.contains(&(i, rest.clone())) {
            return Ok(false);
        }
        let g = &self.gens[i];
        let candidates: Vec<BigInt> = match self.closes[i].first() {
            Some(&c) => {
                // the last generator touching c must clear it
                let (m, r) = rest.coeffs()[c].div_rem(&g.coeffs()[c]);
                if r.is_zero() && !m.is_negative() && m <= &phi / &self.weights[i] {
                    vec![m]
                } else {
                    Vec::new()
                }
            }
            None => {
                let top: BigInt = &phi / &self.weights[i];
                num_iter_down(top)
            }
        };
        for m in candidates {
            let next = &rest - &g.scale(&m);
            if self.closes[i].iter().any(|&c| !next.coeffs()[c].is_zero()) {
                continue;
            }
            self.mult[i] = m;
            if self.go(i + 1, next)? {
                return Ok(true);
            }
        }
        self.mult[i] = BigInt::zero();
        self.dead.insert((i, rest));
        Ok(false)
    }
}

fn num_iter_down(top: BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut m = top;
    while !m.is_negative() {
        out.push(m.clone());
        m -= 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtProfile {
    pub ext0: i64,
    pub ext1: i64,
    pub ext2: i64,
    pub index: i64,
    /// Effectivity certificate of `L2 - L1`, when effective.
    pub certificate: Option<Vec<(LatticeClass, BigInt)>>,
}

/// `Ext^i(O(L1), O(L2))` in the regime where `L2 - L1` is a difference of
/// line classes: `h^2 = 0`, `h^0` is 0 or 1 by effectivity, and `h^1`
/// follows from the index.
pub fn ext_profile(
    model: &SurfaceModel,
    collisions: &CollisionConfig,
    l1: &LatticeClass,
    l2: &LatticeClass,
) -> Result<ExtProfile> {
    model.check(l1)?;
    model.check(l2)?;
    let d = l2 - l1;
    if d.self_pairing().is_positive() {
        return Err(Error::OutOfRegime {
            class: d.pretty(),
            reason: "positive self-intersection".into(),
        });
    }
    let index = small(euler_char(model, &d)?)?;
    let (ext0, certificate) = match is_effective(model, collisions, &d)? {
        Effectivity::Effective(c) => (1, Some(c)),
        Effectivity::NotEffective => (0, None),
        Effectivity::Indeterminate { budget } => return Err(Error::Indeterminate { budget }),
    };
    let ext2 = 0;
    let ext1 = ext0 + ext2 - index;
    if ext1 < 0 {
        return Err(Error::OutOfRegime {
            class: d.pretty(),
            reason: format!("index {index} exceeds h0 = {ext0}"),
        });
    }
    debug_assert_eq!(index, ext0 - ext1 + ext2);
    Ok(ExtProfile {
        ext0,
        ext1,
        ext2,
        index,
        certificate,
    })
}

fn small(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::OutOfRegime {
        class: x.to_string(),
        reason: "index does not fit in 64 bits".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        let s = SurfaceModel::hirzebruch(3).unwrap();
        assert_eq!(euler_char(&s, &LatticeClass::zero(s.kind())).unwrap(), BigInt::from(1));
        let d = s.line(2).unwrap() - s.line(1).unwrap();
        assert_eq!(euler_char(&s, &d).unwrap(), BigInt::zero());
        let p = SurfaceModel::p2(6).unwrap();
        assert_eq!(euler_char(&p, &p.boundary()).unwrap(), BigInt::from(4));
    }

    #[test]
    fn effectivity_examples() {
        let s = SurfaceModel::hirzebruch(3).unwrap();
        let none = CollisionConfig::none();
        let l1 = s.line(1).unwrap();
        let l2 = s.line(2).unwrap();
        assert!(is_effective(&s, &none, &l1).unwrap().is_effective());
        let d = &l2 - &l1;
        assert_eq!(is_effective(&s, &none, &d).unwrap(), Effectivity::NotEffective);
        let coll = CollisionConfig::new(&s, &[(2, 1)]).unwrap();
        match is_effective(&s, &coll, &d).unwrap() {
            Effectivity::Effective(cert) => assert_eq!(cert, vec![(d.clone(), BigInt::from(1))]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn certificates_reproduce_the_class() {
        let s = SurfaceModel::hirzebruch(4).unwrap();
        let coll = CollisionConfig::new(&s, &[(1, 2), (3, 4)]).unwrap();
        let d = s.class(&[1, 3, 0, -1, 1, 0]).unwrap();
        let Effectivity::Effective(cert) = is_effective(&s, &coll, &d).unwrap() else {
            panic!("expected effective");
        };
        let mut sum = LatticeClass::zero(s.kind());
        for (g, m) in &cert {
            sum = &sum + &g.scale(m);
        }
        assert_eq!(sum, d);
    }

    #[test]
    fn negative_classes_are_not_effective() {
        let s = SurfaceModel::p2(3).unwrap();
        let none = CollisionConfig::none();
        let d = -&s.line(0).unwrap();
        assert_eq!(is_effective(&s, &none, &d).unwrap(), Effectivity::NotEffective);
    }

    #[test]
    fn tiny_budget_is_indeterminate() {
        let s = SurfaceModel::hirzebruch(3).unwrap();
        let d = s.class(&[3, 5, -1, -1, -1]).unwrap();
        assert_eq!(
            is_effective_with_budget(&s, &CollisionConfig::none(), &d, 1).unwrap(),
            Effectivity::Indeterminate { budget: 1 }
        );
    }

    #[test]
    fn ext_profiles() {
        let s = SurfaceModel::hirzebruch(2).unwrap();
        let l1 = s.line(1).unwrap();
        let l2 = s.line(2).unwrap();
        let coll = CollisionConfig::new(&s, &[(1, 2)]).unwrap();
        let p = ext_profile(&s, &coll, &l1, &l2).unwrap();
        assert_eq!((p.ext0, p.ext1, p.ext2, p.index), (1, 1, 0, 0));
        let p = ext_profile(&s, &CollisionConfig::none(), &l1, &l2).unwrap();
        assert_eq!((p.ext0, p.ext1, p.ext2, p.index), (0, 0, 0, 0));
        let p = ext_profile(&s, &CollisionConfig::none(), &l1, &l1).unwrap();
        assert_eq!((p.ext0, p.ext1, p.ext2, p.index), (1, 0, 0, 1));
    }

    #[test]
    fn ext_refuses_positive_classes() {
        let s = SurfaceModel::hirzebruch(2).unwrap();
        let zero = LatticeClass::zero(s.kind());
        assert!(matches!(
            ext_profile(&s, &CollisionConfig::none(), &zero, &s.boundary()),
            Err(Error::OutOfRegime { .. })
        ));
    }

    #[test]
    fn induced_curves_are_minus_two() {
        let s = SurfaceModel::hirzebruch(5).unwrap();
        let c = CollisionConfig::new(&s, &[(4, 2), (0, 1)]).unwrap();
        assert_eq!(c.pairs(), &[(0, 1), (2, 4)]);
        for curve in c.induced_curves() {
            assert_eq!(curve.self_pairing(), BigInt::from(-2));
            assert!(curve.pair(s.canonical()).unwrap().is_zero());
        }
    }
}
