//! Truncated graded quotient rings `Q[vars]/(v^k = g, ...)` and degree-wise module checks.

use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mpoly::{monomials_of_degree, parse_poly, MPoly, Monomial};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: u32 = 8;

/// `var^power = rhs`, with `rhs` free of `var` and homogeneous of the same degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub var: usize,
    pub power: u32,
    pub rhs: MPoly,
}

#[derive(Debug)]
pub struct TruncRing {
    names: Vec<String>,
    degrees: Vec<u32>,
    relations: Vec<Relation>,
    max_degree: u32,
    nf_cache: Mutex<HashMap<Monomial, MPoly>>,
}

impl Clone for TruncRing {
    fn clone(&self) -> Self {
        Self {
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            relations: self.relations.clone(),
            max_degree: self.max_degree,
            nf_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl TruncRing {
    pub fn new(vars: &[(&str, u32)], relations: Vec<Relation>, max_degree: u32) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
        let degrees: Vec<u32> = vars.iter().map(|&(_, d)| d).collect();
        let n = names.len();
        for (i, name) in names.iter().enumerate() {
            if degrees[i] == 0 {
                return Err(Error::InvalidRing(format!("variable {name} needs a positive degree")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("variable {name} declared twice")));
            }
        }
        let mut head = vec![None; n];
        for (ri, r) in relations.iter().enumerate() {
            let name = names
                .get(r.var)
                .ok_or_else(|| Error::InvalidRing(format!("relation {ri} names variable {}", r.var)))?;
            if r.rhs.nvars() != n {
                return Err(Error::InvalidRing(format!("relation for {name} lives in another ring")));
            }
            if r.power == 0 {
                return Err(Error::InvalidRing(format!("relation for {name} has power 0")));
            }
            if head[r.var].replace(ri).is_some() {
                return Err(Error::InvalidRing(format!("two relations rewrite {name}")));
            }
            if r.rhs.contains_var(r.var) {
                return Err(Error::InvalidRing(format!("right side for {name} mentions {name}")));
            }
            let want = r.power * degrees[r.var];
            if r.rhs.degrees(&degrees).iter().any(|&d| d != want) {
                return Err(Error::InvalidRing(format!(
                    "right side for {name}^{} is not homogeneous of degree {want}",
                    r.power
                )));
            }
        }
        // heads must form an acyclic dependency graph so rewriting terminates
        let mut state = vec![0u8; n];
        fn visit(v: usize, rels: &[Relation], head: &[Option<usize>], state: &mut [u8]) -> bool {
            match state[v] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[v] = 1;
            if let Some(ri) = head[v] {
                for u in 0..head.len() {
                    if head[u].is_some() && rels[ri].rhs.contains_var(u) && !visit(u, rels, head, state) {
                        return false;
                    }
                }
            }
            state[v] = 2;
            true
        }
        for v in 0..n {
            if !visit(v, &relations, &head, &mut state) {
                return Err(Error::InvalidRing("relation heads depend on each other cyclically".into()));
            }
        }
        Ok(Self {
            names,
            degrees,
            relations,
            max_degree,
            nf_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn polynomial(vars: &[(&str, u32)], max_degree: u32) -> Result<Self> {
        Self::new(vars, Vec::new(), max_degree)
    }

    /// Build from textual relations such as `("s^2", "x^2 - y^2 + z^2")`.
    pub fn from_strings(vars: &[(&str, u32)], relations: &[(&str, &str)], max_degree: u32) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|(n, _)| n.to_string()).collect();
        let mut rels = Vec::new();
        for (lhs, rhs) in relations {
            let l = parse_poly(lhs, &names)?;
            let (mono, coef) = match l.terms().iter().next() {
                Some(t) if l.terms().len() == 1 => t,
                _ => return Err(Error::InvalidRing(format!("left side `{lhs}` must be a single power"))),
            };
            let support: Vec<usize> = (0..names.len()).filter(|&i| mono[i] > 0).collect();
            if support.len() != 1 || !coef.is_one() {
                return Err(Error::InvalidRing(format!("left side `{lhs}` must be a pure power of one variable")));
            }
            rels.push(Relation {
                var: support[0],
                power: mono[support[0]],
                rhs: parse_poly(rhs, &names)?,
            });
        }
        Self::new(vars, rels, max_degree)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidRing(format!("no variable named {name}")))
    }

    pub fn vars_named(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.var_index(n)).collect()
    }

    pub fn parse(&self, src: &str) -> Result<MPoly> {
        parse_poly(src, &self.names)
    }

    pub fn display(&self, p: &MPoly) -> String {
        p.display(&self.names)
    }

    /// Relations as polynomials `v^k - g`, for Jacobian computations.
    pub fn relation_polys(&self) -> Vec<MPoly> {
        self.relations
            .iter()
            .map(|r| {
                let mut e = vec![0; self.nvars()];
                e[r.var] = r.power;
                &MPoly::term(self.nvars(), e, BigRational::one()) - &r.rhs
            })
            .collect()
    }

    fn reducer(&self, m: &[u32]) -> Option<&Relation> {
        self.relations.iter().find(|r| m[r.var] >= r.power)
    }

    pub fn is_normal(&self, m: &[u32]) -> bool {
        self.reducer(m).is_none()
    }

    fn nf_monomial(&self, m: &Monomial) -> MPoly {
        if let Some(hit) = self.nf_cache.lock().expect("cache lock").get(m) {
            return hit.clone();
        }
        let out = match self.reducer(m) {
            None => MPoly::term(self.nvars(), m.clone(), BigRational::one()),
            Some(r) => {
                let mut rest = m.clone();
                rest[r.var] -= r.power;
                let mut acc = MPoly::zero(self.nvars());
                for (e, c) in r.rhs.terms() {
                    let prod: Monomial = e.iter().zip(&rest).map(|(a, b)| a + b).collect();
                    acc = &acc + &self.nf_monomial(&prod).scale(c);
                }
                acc
            }
        };
        self.nf_cache.lock().expect("cache lock").insert(m.clone(), out.clone());
        out
    }

    pub fn normal_form(&self, p: &MPoly) -> MPoly {
        let mut acc = MPoly::zero(self.nvars());
        for (m, c) in p.terms() {
            acc = &acc + &self.nf_monomial(m).scale(c);
        }
        acc
    }

    /// Normal form where `pick(k)` chooses which of the `k` available rewrites fires next.
    pub fn normal_form_by(&self, p: &MPoly, pick: &mut dyn FnMut(usize) -> usize) -> MPoly {
        let mut cur = p.clone();
        loop {
            let options: Vec<(Monomial, usize)> = cur
                .terms()
                .keys()
                .flat_map(|m| {
                    self.relations
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| m[r.var] >= r.power)
                        .map(|(ri, _)| (m.clone(), ri))
                        .collect::<Vec<_>>()
                })
                .collect();
            if options.is_empty() {
                return cur;
            }
            let (m, ri) = options[pick(options.len()) % options.len()].clone();
            let r = &self.relations[ri];
            let c = cur.terms()[&m].clone();
            let mut rest = m.clone();
            rest[r.var] -= r.power;
            let mut lead = MPoly::zero(self.nvars());
            lead.add_term(m, c.clone());
            cur = &(&cur - &lead) + &r.rhs.mul_monomial(&rest, &c);
        }
    }

    pub fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        self.normal_form(&(a * b))
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::OutOfRange {
                what: "degree",
                value: d as i64,
                allowed: format!("0..={}", self.max_degree),
            });
        }
        Ok(())
    }

    /// Normal monomials of weighted degree `d`, sorted.
    pub fn normal_monomials(&self, d: u32) -> Result<Vec<Monomial>> {
        self.check_degree(d)?;
        let all: Vec<usize> = (0..self.nvars()).collect();
        Ok(monomials_of_degree(self.nvars(), &all, &self.degrees, d)
            .into_iter()
            .filter(|m| self.is_normal(m))
            .collect())
    }

    pub fn graded_dim(&self, d: u32) -> Result<usize> {
        Ok(self.normal_monomials(d)?.len())
    }

    /// Coordinates of a homogeneous element of degree `d` in the normal monomial basis.
    pub fn coords(&self, p: &MPoly, d: u32) -> Result<Vec<BigRational>> {
        let basis = self.normal_monomials(d)?;
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![BigRational::zero(); basis.len()];
        for (m, c) in self.normal_form(p).terms() {
            let i = index.get(m).ok_or_else(|| {
                Error::InvalidPolynomial(format!("{} is not homogeneous of degree {d}", self.display(p)))
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    /// A basis of the degree-`d` part of the subring generated by `over`.
    pub fn subring_basis(&self, over: &[usize], d: u32) -> Result<Vec<MPoly>> {
        let mut ech = Echelon::default();
        let mut out = Vec::new();
        for m in monomials_of_degree(self.nvars(), over, &self.degrees, d) {
            let p = MPoly::term(self.nvars(), m, BigRational::one());
            if ech.insert(self.coords(&p, d)?) {
                out.push(self.normal_form(&p));
            }
        }
        Ok(out)
    }
}

/// Incremental row echelon form used to detect dependence one vector at a time.
#[derive(Default, Debug)]
pub struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    /// Returns `true` when `v` was independent of the rows so far.
    pub fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &v[p];
        for a in v.iter_mut() {
            *a *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    *a -= &f * b;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Submodule generated by `gens` with coefficients from the subring on `over`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    gens: Vec<MPoly>,
    gen_degrees: Vec<u32>,
    over: Vec<usize>,
}

impl GradedModule {
    pub fn new(ring: &TruncRing, gens: Vec<MPoly>, over: Vec<usize>) -> Result<Self> {
        let mut gen_degrees = Vec::new();
        for g in &gens {
            let g = ring.normal_form(g);
            let d = g.homogeneous_degree(ring.degrees()).ok_or_else(|| {
                Error::InvalidPolynomial(format!("generator {} must be nonzero and homogeneous", ring.display(&g)))
            })?;
            gen_degrees.push(d);
        }
        if let Some(&v) = over.iter().find(|&&v| v >= ring.nvars()) {
            return Err(Error::InvalidRing(format!("subring variable {v} does not exist")));
        }
        Ok(Self {
            gens,
            gen_degrees,
            over,
        })
    }

    /// Parse generator strings and subring variable names.
    pub fn parse(ring: &TruncRing, gens: &[&str], over: &[&str]) -> Result<Self> {
        let g = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, g, ring.vars_named(over)?)
    }

    pub fn ideal(ring: &TruncRing, gens: Vec<MPoly>) -> Result<Self> {
        Self::new(ring, gens, (0..ring.nvars()).collect())
    }

    pub fn whole_ring(ring: &TruncRing) -> Self {
        Self::ideal(ring, vec![MPoly::one(ring.nvars())]).expect("1 is homogeneous")
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn over(&self) -> &[usize] {
        &self.over
    }

    /// Spanning vectors of the degree-`d` piece.
    pub fn piece(&self, ring: &TruncRing, d: u32) -> Result<Vec<Vec<BigRational>>> {
        let mut rows = Vec::new();
        for (g, &dg) in self.gens.iter().zip(&self.gen_degrees) {
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(ring.nvars(), &self.over, ring.degrees(), d - dg) {
                rows.push(ring.coords(&g.mul_monomial(&m, &BigRational::one()), d)?);
            }
        }
        Ok(rows)
    }

    pub fn dim(&self, ring: &TruncRing, d: u32) -> Result<usize> {
        let mut ech = Echelon::default();
        for r in self.piece(ring, d)? {
            ech.insert(r);
        }
        Ok(ech.rank())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDims {
    pub degree: u32,
    pub target: usize,
    pub span: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerateReport {
    pub holds: bool,
    pub first_failure: Option<u32>,
    pub dims: Vec<DegreeDims>,
}

/// Does `candidate` span exactly the degree pieces of `target` for every degree up to `maxdeg`?
pub fn check_generate(
    ring: &TruncRing,
    target: &GradedModule,
    candidate: &GradedModule,
    maxdeg: u32,
) -> Result<GenerateReport> {
    ring.check_degree(maxdeg)?;
    let mut dims = Vec::new();
    let mut first_failure = None;
    for d in 0..=maxdeg {
        let t = target.piece(ring, d)?;
        let c = candidate.piece(ring, d)?;
        let mut et = Echelon::default();
        t.iter().for_each(|r| {
            et.insert(r.clone());
        });
        let mut ec = Echelon::default();
        c.iter().for_each(|r| {
            ec.insert(r.clone());
        });
        let (rt, rc) = (et.rank(), ec.rank());
        for r in c {
            et.insert(r);
        }
        if (et.rank() != rt || rt != rc) && first_failure.is_none() {
            first_failure = Some(d);
        }
        dims.push(DegreeDims {
            degree: d,
            target: rt,
            span: rc,
        });
    }
    Ok(GenerateReport {
        holds: first_failure.is_none(),
        first_failure,
        dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDims {
    pub degree: u32,
    /// Dimension of the free module on the generators in this degree.
    pub domain: usize,
    pub image: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeReport {
    pub holds: bool,
    pub first_failure: Option<u32>,
    pub rank: usize,
    pub dims: Vec<FreeDims>,
}

/// No syzygies among the generators with subring coefficients, degree by degree.
pub fn check_free(ring: &TruncRing, module: &GradedModule, maxdeg: u32) -> Result<FreeReport> {
    ring.check_degree(maxdeg)?;
    let mut dims = Vec::new();
    let mut first_failure = None;
    for d in 0..=maxdeg {
        let mut ech = Echelon::default();
        let mut domain = 0;
        for (g, &dg) in module.gens.iter().zip(&module.gen_degrees) {
            if dg > d {
                continue;
            }
            for b in ring.subring_basis(&module.over, d - dg)? {
                domain += 1;
                ech.insert(ring.coords(&(&b * g), d)?);
            }
        }
        if ech.rank() != domain && first_failure.is_none() {
            first_failure = Some(d);
        }
        dims.push(FreeDims {
            degree: d,
            domain,
            image: ech.rank(),
        });
    }
    Ok(FreeReport {
        holds: first_failure.is_none(),
        first_failure,
        rank: module.gens.len(),
        dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinGenReport {
    pub count: usize,
    /// `(degree, dim (I/mI)_d)` for degrees with a nonzero contribution.
    pub by_degree: Vec<(u32, usize)>,
    pub warnings: Vec<String>,
}

/// `sum_d dim (I/mI)_d` for a homogeneous ideal, `m` the ideal of all variables.
pub fn min_generators_at_origin(ring: &TruncRing, gens: &[MPoly], maxdeg: u32) -> Result<MinGenReport> {
    ring.check_degree(maxdeg)?;
    let ideal = GradedModule::ideal(ring, gens.to_vec())?;
    let all: Vec<usize> = (0..ring.nvars()).collect();
    let mut by_degree = Vec::new();
    for d in 0..=maxdeg {
        let mut full = Echelon::default();
        let mut deep = Echelon::default();
        for (g, &dg) in ideal.gens.iter().zip(&ideal.gen_degrees) {
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(ring.nvars(), &all, ring.degrees(), d - dg) {
                let v = ring.coords(&g.mul_monomial(&m, &BigRational::one()), d)?;
                if d > dg {
                    deep.insert(v.clone());
                }
                full.insert(v);
            }
        }
        let k = full.rank() - deep.rank();
        if k > 0 {
            by_degree.push((d, k));
        }
    }
    let mut warnings = Vec::new();
    if by_degree.last().is_some_and(|&(d, _)| d == maxdeg) {
        warnings.push(format!("new generators still appear at degree {maxdeg}; raise maxdeg"));
    }
    Ok(MinGenReport {
        count: by_degree.iter().map(|&(_, k)| k).sum(),
        by_degree,
        warnings,
    })
}

/// Rank of the Jacobian of `relations` at `point`.
pub fn singular_locus_rank(relations: &[MPoly], point: &[BigRational]) -> usize {
    let rows: Vec<Vec<BigRational>> = relations
        .iter()
        .map(|f| (0..f.nvars()).map(|i| f.partial(i).eval(point)).collect())
        .collect();
    crate::linalg::rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn conifold(max: u32) -> TruncRing {
        TruncRing::from_strings(
            &[("x", 1), ("y", 1), ("z", 1), ("s", 1)],
            &[("s^2", "x^2 - y^2 + z^2")],
            max,
        )
        .unwrap()
    }

    #[test]
    fn conifold_dimensions() {
        let r = conifold(8);
        assert_eq!(r.graded_dim(0).unwrap(), 1);
        assert_eq!(r.graded_dim(1).unwrap(), 4);
        assert_eq!(r.graded_dim(2).unwrap(), 9);
        // dims of a quadric hypersurface in four variables: (d+1)^2
        for d in 0..=8 {
            assert_eq!(r.graded_dim(d).unwrap(), ((d + 1) * (d + 1)) as usize);
        }
        assert!(r.graded_dim(9).is_err());
    }

    #[test]
    fn invalid_rings() {
        let v = [("a", 1), ("b", 1)];
        assert!(TruncRing::from_strings(&v, &[("a", "b"), ("b", "a")], 4).is_err());
        assert!(TruncRing::from_strings(&v, &[("a^2", "a*b")], 4).is_err());
        assert!(TruncRing::from_strings(&v, &[("a^2", "b")], 4).is_err());
        assert!(TruncRing::from_strings(&v, &[("a*b", "b^2")], 4).is_err());
        assert!(TruncRing::new(&[("a", 0)], vec![], 4).is_err());
    }

    #[test]
    fn generation_and_freeness() {
        let r = conifold(8);
        let whole = GradedModule::whole_ring(&r);
        let pf = GradedModule::parse(&r, &["1", "s"], &["x", "y", "z"]).unwrap();
        assert!(check_generate(&r, &whole, &pf, 8).unwrap().holds);
        let only_one = GradedModule::parse(&r, &["1"], &["x", "y", "z"]).unwrap();
        assert_eq!(check_generate(&r, &whole, &only_one, 8).unwrap().first_failure, Some(1));
        assert!(check_free(&r, &pf, 8).unwrap().holds);

        let ideal = GradedModule::parse(&r, &["x - y", "z + s"], &["x", "y", "z", "s"]).unwrap();
        let f2 = GradedModule::parse(&r, &["x - y", "z + s"], &["x", "y", "z"]).unwrap();
        assert!(check_generate(&r, &ideal, &f2, 8).unwrap().holds);
        assert!(check_free(&r, &f2, 8).unwrap().holds);

        let dup = GradedModule::parse(&r, &["x", "x"], &["x", "y", "z"]).unwrap();
        assert_eq!(check_free(&r, &dup, 4).unwrap().first_failure, Some(1));
    }

    #[test]
    fn weil_versus_cartier() {
        let r = conifold(8);
        let two = ["x - y", "z - s"].map(|s| r.parse(s).unwrap());
        assert_eq!(min_generators_at_origin(&r, &two, 6).unwrap().count, 2);
        let one = [r.parse("x - y").unwrap()];
        assert_eq!(min_generators_at_origin(&r, &one, 6).unwrap().count, 1);
        let line = TruncRing::polynomial(&[("x", 1)], 8).unwrap();
        let m = min_generators_at_origin(&line, &[line.parse("x").unwrap()], 4).unwrap();
        assert_eq!(m.count, 1);
        assert!(m.warnings.is_empty());
    }

    #[test]
    fn jacobian_ranks() {
        let names: Vec<String> = ["s", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let f = parse_poly("s^2 - x^2 + y^2 - z^2", &names).unwrap();
        assert_eq!(singular_locus_rank(std::slice::from_ref(&f), &[q(0), q(0), q(0), q(0)]), 0);
        assert_eq!(singular_locus_rank(&[f], &[q(1), q(1), q(0), q(0)]), 1);
        let uv: Vec<String> = ["u", "v"].iter().map(|s| s.to_string()).collect();
        let g = parse_poly("u^2 + v", &uv).unwrap();
        assert_eq!(singular_locus_rank(&[g], &[q(0), q(0)]), 1);
    }

    #[test]
    fn reduction_order_does_not_matter() {
        let r = TruncRing::from_strings(
            &[("x", 1), ("y", 1), ("z", 1), ("s", 1), ("t", 2)],
            &[("s^2", "t"), ("t", "x^2 - y^2 + z^2")],
            8,
        )
        .unwrap();
        let p = r.parse("s^5*t + 3*s^3*x*y - t^2*s").unwrap();
        let a = r.normal_form(&p);
        let mut k = 0usize;
        let b = r.normal_form_by(&p, &mut |n| {
            k += 1;
            (k * 7) % n
        });
        assert_eq!(a, b);
    }
}
