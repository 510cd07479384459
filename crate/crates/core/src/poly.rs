//! Dense univariate polynomials over `Q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients from low to high degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let inv = d.lead().recip();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut q = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        (Self::new(q), Self::new(r))
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (`0` if both are zero).
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `[(a_1, 1), (a_2, 2), ...]` with
    /// `self = lead * prod a_i^i`, each `a_i` monic and square-free, and
    /// constant factors omitted.
    pub fn squarefree(&self) -> Vec<(UniPoly, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let b = UniPoly::gcd(&f, &df);
        let mut c = f.exact_div(&b).expect("gcd divides");
        let mut d = &df.exact_div(&b).expect("gcd divides") - &c.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while !c.is_constant() {
            let a = UniPoly::gcd(&c, &d);
            c = c.exact_div(&a).expect("gcd divides");
            d = &d.exact_div(&a).expect("gcd divides") - &c.derivative();
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Multiplicities of the roots over `C`, as a partition sorted in
    /// decreasing order.
    pub fn root_multiplicities(&self) -> Vec<u32> {
        let mut parts: Vec<u32> = self
            .squarefree()
            .into_iter()
            .flat_map(|(a, i)| std::iter::repeat_n(i, a.degree().unwrap_or(0)))
            .collect();
        parts.sort_by(|a, b| b.cmp(a));
        parts
    }

    /// Primitive integer polynomial with the same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Distinct rational roots with multiplicity, sorted.
    pub fn rational_roots(&self) -> Vec<(BigRational, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut f = self.clone();
        let zero_mult = f.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            out.push((BigRational::zero(), zero_mult as u32));
            f = Self::new(f.coeffs[zero_mult..].to_vec());
        }
        if f.degree().unwrap_or(0) > 0 {
            let ints = f.primitive_integer();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let ps = divisors(&a0);
            let qs = divisors(&an);
            let mut cands: Vec<BigRational> = Vec::new();
            for p in &ps {
                for q in &qs {
                    let r = BigRational::new(p.clone(), q.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                let lin = UniPoly::new(vec![-r.clone(), BigRational::one()]);
                let mut m = 0;
                while let Some(q) = f.exact_div(&lin) {
                    f = q;
                    m += 1;
                }
                if m > 0 {
                    out.push((r, m));
                }
            }
        }
        out.sort();
        out
    }

    /// Render with the given variable name, highest degree first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

/// Positive divisors of `|n|` by trial division (`n = 0` gives `[]`).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Parse a rational written as `p`, `p/q` or a decimal integer string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidPolynomial(format!("`{s}` is not a rational number"));
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn arithmetic_and_division() {
        let a = UniPoly::from_i64(&[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_i64(&[-1, 1]);
        let (q, rem) = a.div_rem(&b);
        assert_eq!(q, UniPoly::from_i64(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(&q * &b, a);
        assert_eq!(UniPoly::gcd(&a, &UniPoly::from_i64(&[1, 2, 1])), UniPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn squarefree_decomposition() {
        // (t - 1)^2 (t + 2)
        let f = UniPoly::from_i64(&[2, -3, 0, 1]);
        let sf = f.squarefree();
        assert_eq!(sf, vec![(UniPoly::from_i64(&[2, 1]), 1), (UniPoly::from_i64(&[-1, 1]), 2)]);
        assert_eq!(f.root_multiplicities(), vec![2, 1]);
        // t^2 + 1 has two simple complex roots
        assert_eq!(UniPoly::from_i64(&[1, 0, 1]).root_multiplicities(), vec![1, 1]);
    }

    #[test]
    fn rational_root_test() {
        // 6t^3 - 7t^2 + 1 = (t - 1)(2t - 1)(3t + 1)
        let f = UniPoly::from_i64(&[1, 0, -7, 6]);
        assert_eq!(f.rational_roots(), vec![(r(-1, 3), 1), (r(1, 2), 1), (r(1, 1), 1)]);
        let g = UniPoly::from_i64(&[0, 0, -2, 1]);
        assert_eq!(g.rational_roots(), vec![(r(0, 1), 2), (r(2, 1), 1)]);
        assert!(UniPoly::from_i64(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(UniPoly::from_i64(&[-1, 0, 3]).to_string(), "3*t^2 - 1");
        assert_eq!(UniPoly::from_i64(&[0, -1]).display("u"), "-u");
        assert_eq!(parse_rational(" -3/6 ").unwrap(), r(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&r(4, 2)), "2");
    }
}
