//! Exact univariate polynomials and rational functions over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial, coefficient of `x^i` at index `i`. Never has trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(v: BigRational) -> Self {
        Poly::from_coeffs(vec![v])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// The monomial `x^k`.
    pub fn x_pow(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Poly { c }
    }

    /// `coef * x^k`.
    pub fn monomial(coef: i64, k: usize) -> Self {
        Poly::x_pow(k).scale(&rat(coef))
    }

    pub fn from_coeffs(c: Vec<BigRational>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&v| rat(v)).collect())
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|v| v.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|v| !v.is_zero())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|v| v * k).collect() }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        self.scale(&l.recip())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        if r.c.len() <= dd {
            return (Poly::zero(), r);
        }
        let mut q = vec![BigRational::zero(); r.c.len() - dd];
        let inv = d.lead().recip();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let k = rd - dd;
            let f = &r.c[rd] * &inv;
            for (i, dv) in d.c.iter().enumerate() {
                let t = &r.c[i + k] - &f * dv;
                r.c[i + k] = t;
            }
            q[k] = f;
            r.trim();
        }
        (Poly::from_coeffs(q), r)
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// Integer-coefficient primitive form with positive leading coefficient, and the
    /// rational factor `k` such that `self = k * prim`.
    pub fn primitive(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let mut den = BigInt::one();
        for v in &self.c {
            den = den.lcm(v.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|v| (v * BigRational::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
        (BigRational::new(g, den), prim)
    }

    /// Multiplicity of `f` as a factor.
    pub fn multiplicity(&self, f: &Poly) -> u32 {
        assert!(f.degree().unwrap_or(0) > 0);
        let mut p = self.clone();
        let mut m = 0;
        if p.is_zero() {
            return u32::MAX;
        }
        loop {
            let (q, r) = p.div_rem(f);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }
}

fn fmt_int_poly(c: &[BigInt], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, v) in c.iter().enumerate().rev() {
        if v.is_zero() {
            continue;
        }
        let neg = v.is_negative();
        let a = v.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { "-" } else { "+" })?;
        }
        first = false;
        match (i, a.is_one()) {
            (0, _) => write!(f, "{a}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{a}*{var}")?,
            (_, true) => write!(f, "{var}^{i}")?,
            (_, false) => write!(f, "{a}*{var}^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, prim) = self.primitive();
        if k.is_one() || self.is_zero() {
            return fmt_int_poly(&prim, "q", f);
        }
        write!(f, "({k})*(")?;
        fmt_int_poly(&prim, "q", f)?;
        write!(f, ")")
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                $body(self, o)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                $body(&self, &o)
            }
        }
    };
}

fn p_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.c.len().max(b.c.len());
    let c = (0..n).map(|i| a.coeff(i) + b.coeff(i)).collect();
    Poly::from_coeffs(c)
}

fn p_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.c.len().max(b.c.len());
    let c = (0..n).map(|i| a.coeff(i) - b.coeff(i)).collect();
    Poly::from_coeffs(c)
}

fn p_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut c = vec![BigRational::zero(); a.c.len() + b.c.len() - 1];
    for (i, x) in a.c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.c.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    Poly::from_coeffs(c)
}

poly_binop!(Add, add, p_add);
poly_binop!(Sub, sub, p_sub);
poly_binop!(Mul, mul, p_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|v| -v).collect() }
    }
}

/// Reduced fraction `num/den` with `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (n, d) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let l = d.lead().recip();
        RatFun { num: n.scale(&l), den: d.scale(&l) }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Poly::from_int(n))
    }

    pub fn constant(v: BigRational) -> Self {
        Self::from_poly(Poly::constant(v))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(Poly::x_pow(e as usize))
        } else {
            RatFun { num: Poly::one(), den: Poly::x_pow((-e) as usize) }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn recip(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of zero");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, k: &BigRational) -> RatFun {
        RatFun::new(self.num.scale(k), self.den.clone())
    }

    /// Order of vanishing at 0 (negative for a pole).
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        Some(vn - self.den.valuation().unwrap() as i64)
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn pow(&self, e: i32) -> RatFun {
        let b = if e < 0 { self.recip() } else { self.clone() };
        let mut r = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            r = &r * &b;
        }
        r
    }

    /// Canonical integer form: primitive denominator with positive leading coefficient.
    pub fn integer_form(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let (kd, d) = self.den.primitive();
        let n = self.num.scale(&kd.recip());
        let (kn, np) = n.primitive();
        if np.is_empty() {
            return (vec![], vec![BigInt::one()]);
        }
        // kn is rational: push its denominator into the denominator polynomial
        let numer: Vec<BigInt> = np.iter().map(|v| v * kn.numer()).collect();
        let denom: Vec<BigInt> = d.iter().map(|v| v * kn.denom()).collect();
        (numer, denom)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_form();
        fmt_int_poly(&n, "q", f)?;
        if !(d.len() == 1 && d[0].is_one()) {
            write!(f, "/(")?;
            fmt_int_poly(&d, "q", f)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn r_add(a: &RatFun, b: &RatFun) -> RatFun {
    if a.den == b.den {
        return RatFun::new(&a.num + &b.num, a.den.clone());
    }
    RatFun::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
}

fn r_sub(a: &RatFun, b: &RatFun) -> RatFun {
    r_add(a, &-b)
}

fn r_mul(a: &RatFun, b: &RatFun) -> RatFun {
    if a.is_zero() || b.is_zero() {
        return RatFun::zero();
    }
    // cross-cancel first to keep intermediate sizes small
    let g1 = Poly::gcd(&a.num, &b.den);
    let g2 = Poly::gcd(&b.num, &a.den);
    let an = a.num.div_exact(&g1);
    let bd = b.den.div_exact(&g1);
    let bn = b.num.div_exact(&g2);
    let ad = a.den.div_exact(&g2);
    RatFun::new(&an * &bn, &ad * &bd)
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $m(self, o: &RatFun) -> RatFun {
                $body(self, o)
            }
        }
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun {
                $body(&self, &o)
            }
        }
    };
}

rat_binop!(Add, add, r_add);
rat_binop!(Sub, sub, r_sub);
rat_binop!(Mul, mul, r_mul);

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl std::ops::Div<&RatFun> for &RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        self * &o.recip()
    }
}

/// Parse `"{num}/{den}"` or `"{num}"` as written by `Display`.
pub fn parse_int_poly(s: &str) -> Option<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Some(Poly::zero());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut p = Poly::zero();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1i64, b.to_string()),
            None => (1, t.trim_start_matches('+').to_string()),
        };
        let (coef, mon) = match body.split_once('*') {
            Some((c, m)) => (c.parse::<BigInt>().ok()?, m.to_string()),
            None if body.contains('q') => (BigInt::one(), body.clone()),
            None => (body.parse::<BigInt>().ok()?, String::new()),
        };
        let deg = if mon.is_empty() {
            0
        } else if mon == "q" {
            1
        } else {
            mon.strip_prefix("q^")?.parse::<usize>().ok()?
        };
        let term = Poly::x_pow(deg).scale(&BigRational::from_integer(coef * sign));
        p = &p + &term;
    }
    Some(p)
}

pub fn parse_ratfun(s: &str) -> Option<RatFun> {
    match s.split_once("/(") {
        Some((n, d)) => Some(RatFun::new(parse_int_poly(n)?, parse_int_poly(d.strip_suffix(')')?)?)),
        None => Some(RatFun::from_poly(parse_int_poly(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_reduce() {
        let a = Poly::from_ints(&[-1, 0, 1]); // q^2-1
        let b = Poly::from_ints(&[1, 1]);
        let r = RatFun::new(a, b);
        assert_eq!(r.num(), &Poly::from_ints(&[-1, 1]));
        assert!(r.den().is_one());
    }

    #[test]
    fn sum_of_two_poles() {
        // (1/2)[(q-1)^-1 + (q+1)^-1] = q/(q^2-1)
        let h = BigRational::new(1.into(), 2.into());
        let s = (RatFun::new(Poly::one(), Poly::from_ints(&[-1, 1])) + RatFun::new(Poly::one(), Poly::from_ints(&[1, 1]))).scale(&h);
        assert_eq!(s, RatFun::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[-1, 0, 1])));
    }

    #[test]
    fn display_roundtrip() {
        let r = RatFun::new(Poly::from_ints(&[3, 0, -2, 1]), Poly::from_ints(&[2, 4, 6]));
        let s = r.to_string();
        assert_eq!(parse_ratfun(&s).unwrap(), r);
    }

    #[test]
    fn multiplicity_counts() {
        let f = Poly::from_ints(&[1, 1]);
        let p = &f.pow(3) * &Poly::from_ints(&[0, 1]);
        assert_eq!(p.multiplicity(&f), 3);
    }
}
