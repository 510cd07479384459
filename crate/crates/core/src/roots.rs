//! Lines, root systems, Weyl reflections and weights.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::enumerate::{self, LinearConstraint, DEFAULT_SOLUTION_CAP};
use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, SurfaceModel};

/// Distinguished classes a root lattice may be required to be orthogonal to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrthClass {
    K,
    F,
    B,
}

impl OrthClass {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "K" | "k" => Some(OrthClass::K),
            "f" | "F" => Some(OrthClass::F),
            "b" | "B" => Some(OrthClass::B),
            _ => None,
        }
    }

    fn class(self, model: &SurfaceModel) -> Result<LatticeClass> {
        match self {
            OrthClass::K => Ok(model.canonical().clone()),
            OrthClass::F => model.fiber().cloned(),
            OrthClass::B => model.base().cloned(),
        }
    }
}

impl fmt::Display for OrthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrthClass::K => "K",
            OrthClass::F => "f",
            OrthClass::B => "b",
        })
    }
}

/// All classes `x` with `x.x = -1`, `x.K = -1` and, if given, `x.f = c`.
pub fn enumerate_lines(model: &SurfaceModel, fiber_pairing: Option<i64>) -> Result<Vec<LatticeClass>> {
    enumerate_lines_capped(model, fiber_pairing, DEFAULT_SOLUTION_CAP)
}

pub fn enumerate_lines_capped(
    model: &SurfaceModel,
    fiber_pairing: Option<i64>,
    cap: usize,
) -> Result<Vec<LatticeClass>> {
    let mut cons = vec![LinearConstraint::new(model.canonical().clone(), -1)];
    if let Some(c) = fiber_pairing {
        cons.push(LinearConstraint::new(model.fiber()?.clone(), c));
    }
    enumerate::solve(model, &cons, &BigInt::from(-1), cap)
}

/// Type label of a simply-laced root system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
    /// A connected diagram matching no ADE template, by rank.
    Unrecognized(usize),
    Product(Vec<DynkinType>),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(k) => write!(f, "A{k}"),
            DynkinType::D(k) => write!(f, "D{k}"),
            DynkinType::E(k) => write!(f, "E{k}"),
            DynkinType::Unrecognized(k) => write!(f, "?{k}"),
            DynkinType::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                f.write_str(&s.join("x"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub roots: Vec<LatticeClass>,
    pub simple_roots: Vec<LatticeClass>,
    pub cartan: Vec<Vec<i64>>,
    pub type_label: DynkinType,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }
}

/// First nonzero coordinate positive.
pub fn is_positive(c: &LatticeClass) -> bool {
    c.coeffs()
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x > &BigInt::zero())
}

/// All `(-2)`-classes orthogonal to the given classes, with a simple system
/// and its Dynkin type.
pub fn enumerate_roots(model: &SurfaceModel, orth: &[OrthClass]) -> Result<RootDatum> {
    let cons: Vec<LinearConstraint> = orth
        .iter()
        .map(|o| Ok(LinearConstraint::new(o.class(model)?, 0)))
        .collect::<Result<_>>()?;
    let roots = enumerate::solve(model, &cons, &BigInt::from(-2), DEFAULT_SOLUTION_CAP)?;
    Ok(root_datum_from_roots(roots))
}

/// Builds the datum from a complete, negation-closed root set.
pub fn root_datum_from_roots(mut roots: Vec<LatticeClass>) -> RootDatum {
    roots.sort();
    roots.dedup();
    let positive: Vec<&LatticeClass> = roots.iter().filter(|r| is_positive(r)).collect();
    let pos_set: HashSet<&LatticeClass> = positive.iter().copied().collect();
    let mut simple: Vec<LatticeClass> = positive
        .iter()
        .filter(|&&a| !positive.iter().any(|&b| b != a && pos_set.contains(&(a - b))))
        .map(|&a| a.clone())
        .collect();
    simple.sort_by(|a, b| b.cmp(a));
    let cartan: Vec<Vec<i64>> = simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| {
                    let p: i64 = (-a.pair(b).expect("same basis")).try_into().expect("small");
                    p
                })
                .collect()
        })
        .collect();
    let type_label = recognize(&cartan);
    RootDatum {
        roots,
        simple_roots: simple,
        cartan,
        type_label,
    }
}

/// Dynkin type of a simply-laced Cartan matrix.
pub fn recognize(cartan: &[Vec<i64>]) -> DynkinType {
    let n = cartan.len();
    if n == 0 {
        return DynkinType::A(0);
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && cartan[i][j] != 0).collect())
        .collect();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        parts.push(component_type(&comp, &adj, cartan));
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        parts.sort();
        DynkinType::Product(parts)
    }
}

fn component_type(comp: &[usize], adj: &[Vec<usize>], cartan: &[Vec<i64>]) -> DynkinType {
    let k = comp.len();
    let simply_laced = comp
        .iter()
        .all(|&i| cartan[i][i] == 2 && adj[i].iter().all(|&j| cartan[i][j] == -1));
    let edges: usize = comp.iter().map(|&i| adj[i].len()).sum::<usize>() / 2;
    if !simply_laced || edges != k - 1 {
        return DynkinType::Unrecognized(k);
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
    if branch.is_empty() {
        return DynkinType::A(k);
    }
    if branch.len() > 1 || adj[branch[0]].len() != 3 {
        return DynkinType::Unrecognized(k);
    }
    let center = branch[0];
    let mut arms: Vec<usize> = adj[center]
        .iter()
        .map(|&first| {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            loop {
                let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [] => break len,
                    [w] => {
                        prev = cur;
                        cur = *w;
                        len += 1;
                    }
                    _ => break usize::MAX,
                }
            }
        })
        .collect();
    arms.sort();
    match arms.as_slice() {
        [1, 1, _] => DynkinType::D(k),
        [1, 2, 2] => DynkinType::E(6),
        [1, 2, 3] => DynkinType::E(7),
        [1, 2, 4] => DynkinType::E(8),
        _ => DynkinType::Unrecognized(k),
    }
}

/// `s_r(x) = x + (x.r) r` for a `(-2)`-class `r`.
pub fn reflect(root: &LatticeClass, cls: &LatticeClass) -> Result<LatticeClass> {
    let rr = root.pair(root)?;
    if rr != BigInt::from(-2) {
        return Err(Error::NotARoot {
            self_pairing: rr.to_string(),
        });
    }
    let k = cls.pair(root)?;
    Ok(cls + &root.scale(&k))
}

/// Closure of `{cls}` under the simple reflections, sorted.
pub fn weyl_orbit(datum: &RootDatum, cls: &LatticeClass, cap: usize) -> Result<Vec<LatticeClass>> {
    let mut seen: BTreeSet<LatticeClass> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(cls.clone());
    queue.push_back(cls.clone());
    if seen.len() > cap {
        return Err(Error::OrbitCapExceeded { cap });
    }
    while let Some(x) = queue.pop_front() {
        for a in &datum.simple_roots {
            let y = reflect(a, &x)?;
            if !seen.contains(&y) {
                seen.insert(y.clone());
                if seen.len() > cap {
                    return Err(Error::OrbitCapExceeded { cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    pub entries: Vec<BigInt>,
}

/// Pairings of `cls` with the simple roots, in order.
pub fn weight_of(datum: &RootDatum, cls: &LatticeClass) -> Result<WeightVector> {
    let entries = datum
        .simple_roots
        .iter()
        .map(|a| cls.pair(a))
        .collect::<Result<_>>()?;
    Ok(WeightVector { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize) -> SurfaceModel {
        SurfaceModel::hirzebruch(n).unwrap()
    }

    #[test]
    fn a_type_simple_roots() {
        let s = h(4);
        let d = enumerate_roots(&s, &[OrthClass::K, OrthClass::F, OrthClass::B]).unwrap();
        assert_eq!(d.roots.len(), 12);
        assert_eq!(d.type_label, DynkinType::A(3));
        for (i, a) in d.simple_roots.iter().enumerate() {
            assert_eq!(a, &(s.line(i + 1).unwrap() - s.line(i + 2).unwrap()));
        }
        assert_eq!(d.cartan, vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
    }

    #[test]
    fn no_roots_on_first_blowup() {
        let d = enumerate_roots(&h(1), &[OrthClass::K, OrthClass::F, OrthClass::B]).unwrap();
        assert!(d.roots.is_empty());
        assert_eq!(d.type_label, DynkinType::A(0));
    }

    #[test]
    fn d_type_from_k_and_f() {
        for n in 2..=6 {
            let d = enumerate_roots(&h(n), &[OrthClass::K, OrthClass::F]).unwrap();
            assert_eq!(d.roots.len(), 2 * n * (n - 1));
            let expected = match n {
                2 => DynkinType::Product(vec![DynkinType::A(1), DynkinType::A(1)]),
                3 => DynkinType::A(3),
                _ => DynkinType::D(n),
            };
            assert_eq!(d.type_label, expected);
        }
    }

    #[test]
    fn e_series_on_the_plane() {
        for (m, count, ty) in [(6, 72, DynkinType::E(6)), (7, 126, DynkinType::E(7)), (8, 240, DynkinType::E(8))] {
            let d = enumerate_roots(&SurfaceModel::p2(m).unwrap(), &[OrthClass::K]).unwrap();
            assert_eq!(d.roots.len(), count);
            assert_eq!(d.type_label, ty);
        }
    }

    #[test]
    fn reflection_examples() {
        let s = h(3);
        let l1 = s.line(1).unwrap();
        let l2 = s.line(2).unwrap();
        let a = &l1 - &l2;
        assert_eq!(reflect(&a, &l1).unwrap(), l2);
        assert_eq!(reflect(&a, &a).unwrap(), -&a);
        let x = s.line(3).unwrap();
        assert_eq!(reflect(&a, &x).unwrap(), x);
        assert!(matches!(reflect(&l1, &l2), Err(Error::NotARoot { .. })));
    }

    #[test]
    fn orbit_of_twisted_line() {
        for n in 1..=6 {
            let s = h(n);
            let d = enumerate_roots(&s, &[OrthClass::K, OrthClass::F, OrthClass::B]).unwrap();
            let l0 = s.l0().unwrap();
            let start = s.line(1).unwrap() - l0.clone();
            let orbit = weyl_orbit(&d, &start, 1000).unwrap();
            let mut expected: Vec<LatticeClass> = (1..=n).map(|i| s.line(i).unwrap() - l0.clone()).collect();
            expected.sort();
            assert_eq!(orbit, expected);
        }
        let s = h(3);
        let d = enumerate_roots(&s, &[OrthClass::K, OrthClass::F, OrthClass::B]).unwrap();
        let zero = LatticeClass::zero(s.kind());
        assert_eq!(weyl_orbit(&d, &zero, 1).unwrap(), vec![zero]);
        assert!(matches!(
            weyl_orbit(&d, &(s.line(1).unwrap()), 2),
            Err(Error::OrbitCapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn orbit_of_root_is_root_system() {
        let d = enumerate_roots(&SurfaceModel::p2(6).unwrap(), &[OrthClass::K]).unwrap();
        let orbit = weyl_orbit(&d, &d.simple_roots[0], 1000).unwrap();
        assert_eq!(orbit, d.roots);
    }

    #[test]
    fn weights_of_lines() {
        let s = h(4);
        let d = enumerate_roots(&s, &[OrthClass::K, OrthClass::F, OrthClass::B]).unwrap();
        for i in 1..=4 {
            let w = weight_of(&d, &s.line(i).unwrap()).unwrap();
            let expected: Vec<BigInt> = (1..=3)
                .map(|j| BigInt::from(-((i == j) as i64) + (i == j + 1) as i64))
                .collect();
            assert_eq!(w.entries, expected);
        }
        let wk = weight_of(&d, s.canonical()).unwrap();
        assert!(wk.entries.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn vector_weights_are_opposite() {
        let s = h(5);
        let d = enumerate_roots(&s, &[OrthClass::K, OrthClass::F]).unwrap();
        let f = s.fiber().unwrap();
        for i in 1..=5 {
            let l = s.line(i).unwrap();
            let a = weight_of(&d, &l).unwrap();
            let b = weight_of(&d, &(f - &l)).unwrap();
            let neg: Vec<BigInt> = b.entries.iter().map(|x| -x).collect();
            assert_eq!(a.entries, neg);
        }
    }

    #[test]
    fn lines_on_the_cubic_surface() {
        let lines = enumerate_lines(&SurfaceModel::p2(6).unwrap(), None).unwrap();
        assert_eq!(lines.len(), 27);
        assert!(enumerate_lines(&SurfaceModel::p2(0).unwrap(), None).unwrap().is_empty());
    }

    #[test]
    fn e6_line_weights_form_one_orbit() {
        let s = SurfaceModel::p2(6).unwrap();
        let d = enumerate_roots(&s, &[OrthClass::K]).unwrap();
        let lines = enumerate_lines(&s, None).unwrap();
        assert_eq!(weyl_orbit(&d, &lines[0], 100).unwrap(), lines);
    }

    #[test]
    fn recognizer_templates() {
        let path = |k: usize| -> Vec<Vec<i64>> {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| if i == j { 2 } else if i.abs_diff(j) == 1 { -1 } else { 0 })
                        .collect()
                })
                .collect()
        };
        assert_eq!(recognize(&path(5)), DynkinType::A(5));
        // a triangle is affine A2, not finite
        let tri = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert_eq!(recognize(&tri), DynkinType::Unrecognized(3));
    }
}
