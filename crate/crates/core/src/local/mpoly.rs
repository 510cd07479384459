//! Sparse multivariate polynomials over `Q` and a small infix parser.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, BigRational::one())
    }

    pub fn term(nvars: usize, exps: Monomial, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars, "monomial length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &[u32], c: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            let e2: Monomial = e.iter().zip(m).map(|(a, b)| a + b).collect();
            out.add_term(e2, v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Weighted degree of each term.
    pub fn degrees(&self, weights: &[u32]) -> Vec<u32> {
        self.terms.keys().map(|m| monomial_degree(m, weights)).collect()
    }

    /// The common weighted degree, if the polynomial is nonzero and homogeneous.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let ds = self.degrees(weights);
        let first = *ds.first()?;
        ds.iter().all(|&d| d == first).then_some(first)
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut e = m.clone();
            e[i] -= 1;
            out.add_term(e, c * BigRational::from_integer(BigInt::from(m[i])));
        }
        out
    }

    /// Replace variable `i` by `images[i]` (all images share one ring).
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("{}/{}", a.numer(), a.denom())
            };
            match (mono.is_empty(), a.is_one()) {
                (true, _) => s.push_str(&coef),
                (false, true) => s.push_str(&mono.join("*")),
                (false, false) => s.push_str(&format!("{coef}*{}", mono.join("*"))),
            }
        }
        s
    }
}

pub fn monomial_degree(m: &[u32], weights: &[u32]) -> u32 {
    m.iter().zip(weights).map(|(e, w)| e * w).sum()
}

/// All exponent vectors over the listed variables with weighted degree `d`.
pub fn monomials_of_degree(nvars: usize, allowed: &[usize], weights: &[u32], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(
        k: usize,
        allowed: &[usize],
        weights: &[u32],
        left: u32,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if k == allowed.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let v = allowed[k];
        let w = weights[v];
        let mut e = 0;
        while e * w <= left {
            cur[v] = e;
            rec(k + 1, allowed, weights, left - e * w, cur, out);
            e += 1;
        }
        cur[v] = 0;
    }
    rec(0, allowed, weights, d, &mut cur, &mut out);
    out.sort();
    out
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &rhs.terms {
            for (pm, pc) in self.mul_monomial(m, c).terms {
                out.add_term(pm, pc);
            }
        }
        out
    }
}

/// Parse sums of terms like `2*x^2*y - 3/4*z + 1` over the named variables.
/// Parentheses are not supported.
pub fn parse_poly(src: &str, names: &[String]) -> Result<MPoly> {
    let n = names.len();
    let err = |pos: usize, msg: &str| Error::InvalidPolynomial(format!("`{src}` at column {}: {msg}", pos + 1));
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut out = MPoly::zero(n);
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == chars.len() {
            if first {
                return Err(err(pos, "empty polynomial"));
            }
            break;
        }
        let mut sign = BigRational::one();
        if chars[pos] == '+' || chars[pos] == '-' {
            if chars[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if !first {
            return Err(err(pos, "expected `+` or `-`"));
        }
        first = false;
        // term: factor (`*` factor)*
        let mut coef = sign;
        let mut mono = vec![0u32; n];
        loop {
            skip_ws(&mut pos);
            let start = pos;
            if pos < chars.len() && chars[pos].is_ascii_digit() {
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                    pos += 1;
                }
                let lit: String = chars[start..pos].iter().collect();
                let (p, q) = lit.split_once('/').unwrap_or((&lit, "1"));
                let p: BigInt = p.parse().map_err(|_| err(start, "bad number"))?;
                let q: BigInt = q.parse().map_err(|_| err(start, "bad number"))?;
                if q.is_zero() {
                    return Err(err(start, "zero denominator"));
                }
                coef *= BigRational::new(p, q);
            } else if pos < chars.len() && (chars[pos].is_alphabetic() || chars[pos] == '_') {
                while pos < chars.len() && (chars[pos].is_alphanumeric() || chars[pos] == '_') {
                    pos += 1;
                }
                let name: String = chars[start..pos].iter().collect();
                let v = names
                    .iter()
                    .position(|x| *x == name)
                    .ok_or_else(|| err(start, &format!("unknown variable `{name}`")))?;
                skip_ws(&mut pos);
                let mut e = 1u32;
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let es = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let lit: String = chars[es..pos].iter().collect();
                    e = lit.parse().map_err(|_| err(es, "bad exponent"))?;
                }
                mono[v] += e;
            } else {
                return Err(err(start, "expected a number or a variable"));
            }
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                continue;
            }
            break;
        }
        out.add_term(mono, coef);
    }
    Ok(out)
}
