//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! A [`CycloNum`] is a polynomial in `zeta_n` with rational coefficients,
//! reduced modulo the n-th cyclotomic polynomial, so it always carries exactly
//! `phi(n)` coefficients. Internally the coefficients share one positive
//! denominator; values with denominator 1 (every Laplacian entry and most
//! determinants) never touch rational gcds.
//!
//! Values of different orders are combined by embedding both into
//! `Q(zeta_lcm)`. Rational values can be moved to order 1 with
//! [`CycloNum::simplify`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The parameter `omega = zeta_order^power`.
///
/// `omega_{p/q}` (a primitive root written with rational period `p/q`) is
/// `RootParam::new(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootParam {
    order: u32,
    power: u32,
}

impl RootParam {
    /// `omega = 1`.
    pub const ONE: RootParam = RootParam { order: 1, power: 0 };

    pub fn new(order: u32, power: u32) -> Result<Self> {
        let invalid = |reason| Error::InvalidParam {
            order: order as u64,
            power: power as u64,
            reason,
        };
        if order == 0 {
            return Err(invalid("order must be at least 1"));
        }
        if power >= order && !(order == 1 && power == 0) {
            return Err(invalid("power must be below the order"));
        }
        if power != 0 && power.gcd(&order) != 1 {
            return Err(invalid("power must be coprime to the order"));
        }
        if power == 0 {
            return Ok(Self::ONE);
        }
        Ok(Self { order, power })
    }

    /// The primitive root `e^{2 pi i / n}`.
    pub fn primitive(order: u32) -> Result<Self> {
        if order == 1 {
            return Ok(Self::ONE);
        }
        Self::new(order, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn is_one(&self) -> bool {
        self.power == 0
    }

    /// Is `zeta^(power * m)` equal to 1, i.e. does a cycle with
    /// `k - 2g = m` vanish at this parameter?
    pub fn annihilates(&self, m: i64) -> bool {
        (self.power as i64 * m).rem_euclid(self.order as i64) == 0
    }
}

impl fmt::Display for RootParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.power) {
            (_, 0) => write!(f, "1"),
            (2, 1) => write!(f, "-1"),
            (4, 1) => write!(f, "i"),
            (n, 1) => write!(f, "w{n}"),
            (n, q) => write!(f, "w{n}^{q}"),
        }
    }
}

/// Parses the shorthands `1`, `-1`, `i`, `w{n}`, `w{n}^{q}` and the explicit
/// form `{n}/{q}`.
impl FromStr for RootParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("cannot parse parameter `{s}`"),
        };
        let s = s.trim();
        match s {
            "1" => return Ok(Self::ONE),
            "-1" => return Self::new(2, 1),
            "i" => return Self::new(4, 1),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('w') {
            let (n, q) = match rest.split_once('^') {
                Some((n, q)) => (n, q),
                None => (rest, "1"),
            };
            let n: u32 = n.parse().map_err(|_| bad())?;
            let q: u32 = q.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Self::new(n, q % n);
        }
        if let Some((n, q)) = s.split_once('/') {
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            let q: u32 = q.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Self::new(n, q % n);
        }
        Err(bad())
    }
}

impl Serialize for RootParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Per-order data: the cyclotomic polynomial and the unit group.
#[derive(Debug)]
struct Field {
    order: u32,
    /// Coefficients of `Phi_n`, lowest degree first; monic of degree `phi(n)`.
    modulus: Vec<i64>,
    units: Vec<u32>,
}

impl Field {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduces `v` (any length) modulo `Phi_n` in place and truncates to
    /// `phi(n)` coefficients.
    fn reduce(&self, v: &mut Vec<BigInt>) {
        let d = self.degree();
        for j in (d..v.len()).rev() {
            if v[j].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[j]);
            for (i, &m) in self.modulus[..d].iter().enumerate() {
                if m != 0 {
                    v[j - d + i] -= &c * m;
                }
            }
        }
        v.resize(d, BigInt::zero());
    }
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<Field>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field(order: u32) -> Arc<Field> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(f) = field_cache().read().unwrap().get(&order) {
        return f.clone();
    }
    let modulus = cyclotomic_polynomial(order);
    let units = (0..order.max(1))
        .filter(|q| q.gcd(&order) == 1)
        .collect();
    let built = Arc::new(Field {
        order,
        modulus,
        units,
    });
    field_cache()
        .write()
        .unwrap()
        .entry(order)
        .or_insert(built)
        .clone()
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
///
/// `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`, divided out one factor at
/// a time. Every divisor is monic with integer coefficients, so the division
/// is exact over the integers.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let divisor = field(d);
        poly = exact_monic_div(&poly, &divisor.modulus);
    }
    poly
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for j in (0..quot.len()).rev() {
        let c = rem[j + dd];
        quot[j] = c;
        for (i, &m) in den.iter().enumerate() {
            rem[j + i] -= c * m;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// An exact element of `Q(zeta_n)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Field>,
    /// Numerators in the power basis `1, zeta, ..., zeta^{phi(n)-1}`.
    num: Vec<BigInt>,
    /// Positive common denominator, coprime to the numerators jointly.
    den: BigInt,
}

/// The four field operations, for callers that pick one at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b` at their common order.
pub fn field_arith(a: &CycloNum, b: &CycloNum, op: FieldOp) -> Result<CycloNum> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl CycloNum {
    fn from_parts(field: Arc<Field>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = Self { field, num, den };
        x.normalize();
        x
    }

    /// Builds a value from an unreduced coefficient vector in powers of
    /// `zeta_order` (any length; exponents are taken as written).
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Self {
        let f = field(order);
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        f.reduce(&mut num);
        Self::from_parts(f, num, den)
    }

    /// Integer coefficients in powers of `zeta_order`.
    pub fn from_int_coeffs(order: u32, coeffs: &[i64]) -> Self {
        let f = field(order);
        let mut num: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        f.reduce(&mut num);
        Self::from_parts(f, num, BigInt::one())
    }

    pub fn from_rational(order: u32, r: &BigRational) -> Self {
        let f = field(order);
        let mut num = vec![BigInt::zero(); f.degree()];
        num[0] = r.numer().clone();
        Self::from_parts(f, num, r.denom().clone())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, &BigRational::from_integer(n.into()))
    }

    pub fn zero(order: u32) -> Self {
        Self::from_int(order, 0)
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    /// `zeta_order^exponent` (any integer exponent).
    pub fn zeta_pow(order: u32, exponent: i64) -> Self {
        let f = field(order);
        let mut num = vec![BigInt::zero(); order as usize];
        num[exponent.rem_euclid(order as i64) as usize] = BigInt::one();
        f.reduce(&mut num);
        Self {
            field: f,
            num,
            den: BigInt::one(),
        }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Reduced coefficients in the power basis, `phi(order)` of them.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.den.is_one() && self.num[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// The value as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Moves a rational value to order 1; leaves other values unchanged.
    pub fn simplify(self) -> Self {
        if self.order() != 1 && self.is_rational() {
            let r = BigRational::new(self.num[0].clone(), self.den.clone());
            Self::from_rational(1, &r)
        } else {
            self
        }
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let g = self
            .num
            .iter()
            .fold(self.den.clone(), |acc, c| if c.is_zero() { acc } else { acc.gcd(c) });
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// Embeds into `Q(zeta_order)`; `order` must be a multiple of the
    /// current order.
    pub fn lift(&self, order: u32) -> Self {
        let n = self.order();
        assert!(order % n == 0, "cannot embed order {n} into order {order}");
        if order == n {
            return self.clone();
        }
        if self.is_rational() {
            let f = field(order);
            let mut num = vec![BigInt::zero(); f.degree()];
            num[0] = self.num[0].clone();
            return Self {
                field: f,
                num,
                den: self.den.clone(),
            };
        }
        let step = (order / n) as usize;
        let f = field(order);
        let mut num = vec![BigInt::zero(); order as usize];
        for (i, c) in self.num.iter().enumerate() {
            num[i * step] = c.clone();
        }
        f.reduce(&mut num);
        Self {
            field: f,
            num,
            den: self.den.clone(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.order().lcm(&b.order());
        (a.lift(l), b.lift(l))
    }

    fn scale(&self, num: &BigInt, den: &BigInt) -> Self {
        Self::from_parts(
            self.field.clone(),
            self.num.iter().map(|c| c * num).collect(),
            &self.den * den,
        )
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let num: Vec<BigInt> = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Self::from_parts(self.field.clone(), num, den)
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.is_rational() {
            return other.scale(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scale(&other.num[0], &other.den);
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.field.reduce(&mut prod);
        Self::from_parts(self.field.clone(), prod, &self.den * &other.den)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse, via the product of the non-trivial Galois
    /// conjugates divided by the (rational) field norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); self.field.degree()];
            num[0] = self.den.clone();
            return Ok(Self::from_parts(
                self.field.clone(),
                num,
                self.num[0].clone(),
            ));
        }
        let mut others = Self::one(self.order());
        for &u in self.field.units.iter().filter(|&&u| u != 1) {
            others = &others * &self.apply_unit(u);
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm of a cyclotomic element is rational");
        Ok(others.scale(norm.denom(), norm.numer()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    fn apply_unit(&self, q: u32) -> Self {
        let n = self.order() as usize;
        let mut num = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                num[(i * q as usize) % n] = c.clone();
            }
        }
        self.field.reduce(&mut num);
        Self {
            field: self.field.clone(),
            num,
            den: self.den.clone(),
        }
    }

    /// The automorphism `sigma_q : zeta -> zeta^q` of `Q(zeta_n)`.
    pub fn galois_apply(&self, q: i64) -> Result<Self> {
        let n = self.order();
        let r = q.rem_euclid(n as i64) as u32;
        if r.gcd(&n) != 1 {
            return Err(Error::NotCoprime { q, order: n });
        }
        Ok(self.apply_unit(r))
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.apply_unit(self.order() - 1)
    }

    /// Embedding into the complex numbers with `zeta = e^{2 pi i / n}`.
    /// Only meant for diagnostics; compare with a tolerance of about `1e-9`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, theta)
            })
            .sum()
    }

    /// Writes the value as `a + b*sqrt5` with rational `a`, `b` when it lies
    /// in `Q(sqrt 5)`.
    pub fn as_sqrt5_parts(&self) -> Option<(BigRational, BigRational)> {
        if self.is_rational() {
            return Some((self.to_rational()?, BigRational::zero()));
        }
        if self.order() != 5 {
            return None;
        }
        let conj = self.apply_unit(2);
        let two = BigRational::from_integer(2.into());
        let a = (self + &conj).to_rational()? / &two;
        let b_sqrt5 = (self - &conj).scale(&BigInt::one(), &2.into());
        let b = (&b_sqrt5 * &sqrt5()).to_rational()? / BigRational::from_integer(5.into());
        let rebuilt = &CycloNum::from_rational(5, &a) + &(&sqrt5() * &CycloNum::from_rational(5, &b));
        (rebuilt == *self).then_some((a, b))
    }

    /// Renders `Q(sqrt 5)` values as `a + b√5`; other values in polynomial
    /// form.
    pub fn pretty(&self) -> String {
        match self.as_sqrt5_parts() {
            Some((a, b)) if !b.is_zero() => {
                let sign = if b.is_negative() { "-" } else { "+" };
                let b = b.abs();
                let bs = if b.is_one() {
                    "√5".to_string()
                } else {
                    format!("{b}√5")
                };
                if a.is_zero() {
                    if sign == "-" {
                        format!("-{bs}")
                    } else {
                        bs
                    }
                } else {
                    format!("{a} {sign} {bs}")
                }
            }
            _ => self.to_string(),
        }
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order() == other.order() {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNum {}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.order(), self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let mut first = true;
        for (i, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{n}")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                if self.order() == rhs.order() {
                    f(self, rhs)
                } else {
                    let (a, b) = CycloNum::common(self, rhs);
                    f(&a, &b)
                }
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_same(b, false));
binop!(Sub, sub, |a, b| a.add_same(b, true));
binop!(Mul, mul, |a, b| a.mul_same(b));

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl std::iter::Sum for CycloNum {
    fn sum<I: Iterator<Item = CycloNum>>(iter: I) -> CycloNum {
        iter.fold(CycloNum::zero(1), |a, b| &a + &b)
    }
}

impl std::iter::Product for CycloNum {
    fn product<I: Iterator<Item = CycloNum>>(iter: I) -> CycloNum {
        iter.fold(CycloNum::one(1), |a, b| &a * &b)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloNumRepr {
    order: u32,
    coeffs: Vec<String>,
}

/// Serialized as `{"order": n, "coeffs": ["a", "p/q", ...]}` with exactly
/// `phi(n)` reduced coefficients.
impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloNumRepr {
            order: self.order(),
            coeffs: self.coeffs().iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycloNumRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycloNum::from_coeffs(repr.order, &coeffs))
    }
}

/// `omega` as a field element of order `param.order()`.
pub fn root_of_unity(param: RootParam) -> CycloNum {
    CycloNum::zeta_pow(param.order(), param.power() as i64)
}

/// Determinant of a k-cycle with g negative edges at `param`:
/// `2 - omega^{k-2g} - omega^{-(k-2g)}`, which is `4 sin^2((k-2g) q pi / n)`.
pub fn cycle_contribution(param: RootParam, k: i64, g: i64) -> CycloNum {
    debug_assert!(g >= 0 && 2 * g <= k, "negative-edge count out of range");
    let n = param.order();
    let e = (param.power() as i64 * (k - 2 * g)).rem_euclid(n as i64);
    let mut coeffs = vec![0i64; n as usize];
    coeffs[0] += 2;
    coeffs[e as usize] -= 1;
    coeffs[((n as i64 - e) % n as i64) as usize] -= 1;
    CycloNum::from_int_coeffs(n, &coeffs)
}

/// Folds `n` into `[0, (p-1)/2]`: `n mod p`, reflected to `p - (n mod p)`
/// above the midpoint.
pub fn fold_index(n: i64, p: u64) -> u64 {
    assert!(p >= 3 && p % 2 == 1, "fold_index needs an odd modulus >= 3");
    let r = n.rem_euclid(p as i64) as u64;
    if r <= (p - 1) / 2 {
        r
    } else {
        p - r
    }
}

/// The exponent `e` with `x = p^e`, found by repeated exact division.
pub fn log_power_of(x: &CycloNum, p: u64) -> Result<i64> {
    assert!(p >= 2, "base must be at least 2");
    let r = x.to_rational().ok_or_else(|| Error::NotRational(x.to_string()))?;
    let not_power = || Error::NotAPower {
        value: x.to_string(),
        base: p,
    };
    if !r.is_positive() {
        return Err(not_power());
    }
    let base = BigInt::from(p);
    let strip = |mut v: BigInt| {
        let mut e = 0i64;
        while v.is_multiple_of(&base) {
            v /= &base;
            e += 1;
        }
        (v, e)
    };
    let (num_rest, num_e) = strip(r.numer().clone());
    let (den_rest, den_e) = strip(r.denom().clone());
    if num_rest.is_one() && den_rest.is_one() {
        Ok(num_e - den_e)
    } else {
        Err(not_power())
    }
}

/// `N(a + b sqrt5) = a^2 - 5 b^2`.
pub fn field_norm_q5(x: &CycloNum) -> Result<BigRational> {
    let (a, b) = x
        .as_sqrt5_parts()
        .ok_or_else(|| Error::NotInSubfield(x.to_string()))?;
    Ok(&a * &a - BigRational::from_integer(5.into()) * &b * &b)
}

/// `sqrt 5 = zeta + zeta^4 - zeta^2 - zeta^3` in `Q(zeta_5)`.
pub fn sqrt5() -> CycloNum {
    CycloNum::from_int_coeffs(5, &[0, 1, -1, -1, 1])
}

/// `(1 + sqrt 5) / 2`.
pub fn golden_ratio() -> CycloNum {
    let half = CycloNum::from_rational(5, &BigRational::new(1.into(), 2.into()));
    &(&CycloNum::one(5) + &sqrt5()) * &half
}

/// `(5 + sqrt 5) / 2 = 4 sin^2(2 pi / 5)`.
pub fn alpha() -> CycloNum {
    let half = CycloNum::from_rational(5, &BigRational::new(1.into(), 2.into()));
    &(&CycloNum::from_int(5, 5) + &sqrt5()) * &half
}

/// `(5 - sqrt 5) / 2 = 4 sin^2(pi / 5)`.
pub fn beta() -> CycloNum {
    let half = CycloNum::from_rational(5, &BigRational::new(1.into(), 2.into()));
    &(&CycloNum::from_int(5, 5) - &sqrt5()) * &half
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first non-trivial coefficient
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn param_validation() {
        assert!(RootParam::new(0, 0).is_err());
        assert!(RootParam::new(4, 2).is_err());
        assert!(RootParam::new(5, 5).is_err());
        assert_eq!(RootParam::new(7, 0).unwrap(), RootParam::ONE);
        assert_eq!(RootParam::new(5, 2).unwrap().to_string(), "w5^2");
    }

    #[test]
    fn param_shorthands() {
        let p = |s: &str| s.parse::<RootParam>().unwrap();
        assert_eq!(p("1"), RootParam::ONE);
        assert_eq!(p("-1"), RootParam::new(2, 1).unwrap());
        assert_eq!(p("i"), RootParam::new(4, 1).unwrap());
        assert_eq!(p("w5"), RootParam::new(5, 1).unwrap());
        assert_eq!(p("w5^2"), RootParam::new(5, 2).unwrap());
        assert_eq!(p("5/2"), RootParam::new(5, 2).unwrap());
        assert!("w9^3".parse::<RootParam>().is_err());
        assert!("x".parse::<RootParam>().is_err());
    }

    #[test]
    fn roots_of_unity() {
        assert!(root_of_unity(RootParam::ONE).is_one());
        assert_eq!(
            root_of_unity(RootParam::new(2, 1).unwrap()),
            CycloNum::from_int(1, -1)
        );
        let i = root_of_unity(RootParam::new(4, 1).unwrap());
        assert_eq!(&i * &i, CycloNum::from_int(1, -1));
        let z5 = root_of_unity(RootParam::new(5, 1).unwrap());
        assert!(z5.pow(5).is_one());
        assert!(!z5.pow(3).is_one());
    }

    #[test]
    fn alpha_beta_identities() {
        let (a, b) = (alpha(), beta());
        assert_eq!(&a * &b, CycloNum::from_int(1, 5));
        assert_eq!(&a + &b, CycloNum::from_int(1, 5));
        assert_eq!(&a - &b, sqrt5());
        let phi = golden_ratio();
        assert_eq!(a.checked_div(&b).unwrap(), &phi * &phi);
        assert_eq!(a, &sqrt5() * &phi);
        assert_eq!(a, &phi + &CycloNum::from_int(5, 2));
        assert_eq!(&sqrt5() * &sqrt5(), CycloNum::from_int(5, 5));
    }

    #[test]
    fn division() {
        let x = &sqrt5() + &CycloNum::zeta_pow(5, 1);
        assert!(x.checked_div(&x).unwrap().is_one());
        assert!(matches!(
            x.checked_div(&CycloNum::zero(5)),
            Err(Error::DivisionByZero)
        ));
        let w = CycloNum::from_int_coeffs(12, &[1, 2, 0, -3]);
        assert!((&w.inv().unwrap() * &w).is_one());
    }

    #[test]
    fn conjugation() {
        assert!(CycloNum::one(7).conjugate().is_one());
        assert_eq!(CycloNum::zeta_pow(5, 1).conjugate(), CycloNum::zeta_pow(5, 4));
        assert_eq!(sqrt5().conjugate(), sqrt5());
    }

    #[test]
    fn galois_action() {
        assert_eq!(sqrt5().galois_apply(2).unwrap(), -sqrt5());
        let x = CycloNum::from_int_coeffs(7, &[1, -3, 0, 2]);
        assert_eq!(x.galois_apply(1).unwrap(), x);
        assert!(matches!(
            CycloNum::zeta_pow(9, 1).galois_apply(3),
            Err(Error::NotCoprime { q: 3, order: 9 })
        ));
    }

    #[test]
    fn contributions() {
        let w4 = RootParam::new(4, 1).unwrap();
        let w5 = RootParam::new(5, 1).unwrap();
        assert_eq!(cycle_contribution(w4, 3, 0), CycloNum::from_int(1, 2));
        assert_eq!(cycle_contribution(w5, 4, 1), alpha());
        assert_eq!(cycle_contribution(w5, 3, 0), alpha());
        assert_eq!(cycle_contribution(w5, 4, 0), beta());
        for n in 1..9 {
            let p = RootParam::primitive(n).unwrap();
            assert!(cycle_contribution(p, 6, 3).is_zero());
        }
    }

    #[test]
    fn folding() {
        assert_eq!(fold_index(9, 7), 2);
        assert_eq!(fold_index(5, 7), 2);
        assert_eq!(fold_index(12, 7), 2);
        assert_eq!(fold_index(0, 5), 0);
        assert_eq!(fold_index(3, 7), 3);
        assert_eq!(fold_index(-1, 7), 1);
    }

    #[test]
    fn logarithms() {
        assert_eq!(log_power_of(&CycloNum::from_int(5, 25), 5).unwrap(), 2);
        assert_eq!(log_power_of(&CycloNum::one(3), 7).unwrap(), 0);
        assert_eq!(
            log_power_of(&CycloNum::from_rational(1, &q(1, 9)), 3).unwrap(),
            -2
        );
        assert!(matches!(
            log_power_of(&CycloNum::from_int(1, 10), 5),
            Err(Error::NotAPower { .. })
        ));
        assert!(matches!(
            log_power_of(&CycloNum::zero(1), 5),
            Err(Error::NotAPower { .. })
        ));
        assert!(matches!(log_power_of(&sqrt5(), 5), Err(Error::NotRational(_))));
    }

    #[test]
    fn q5_norm() {
        assert_eq!(field_norm_q5(&sqrt5()).unwrap(), q(-5, 1));
        assert_eq!(field_norm_q5(&golden_ratio()).unwrap(), q(-1, 1));
        assert_eq!(field_norm_q5(&CycloNum::one(1)).unwrap(), q(1, 1));
        assert!(matches!(
            field_norm_q5(&CycloNum::zeta_pow(5, 1)),
            Err(Error::NotInSubfield(_))
        ));
        assert!(field_norm_q5(&CycloNum::zeta_pow(4, 1)).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(CycloNum::zero(5).to_string(), "0");
        assert_eq!(CycloNum::from_int_coeffs(5, &[0, 1, -1]).to_string(), "z5 - z5^2");
        assert_eq!(alpha().to_string(), "2 - z5^2 - z5^3");
        assert_eq!(alpha().pretty(), "5/2 + 1/2√5");
        assert_eq!(sqrt5().galois_apply(2).unwrap().pretty(), "-√5");
        let json = serde_json::to_string(&beta()).unwrap();
        assert_eq!(json, r#"{"order":5,"coeffs":["3","0","1","1"]}"#);
    }

    #[test]
    fn mixed_orders() {
        let i = CycloNum::zeta_pow(4, 1);
        let w3 = CycloNum::zeta_pow(3, 1);
        let prod = &i * &w3;
        assert_eq!(prod.order(), 12);
        assert_eq!(prod, CycloNum::zeta_pow(12, 3 + 4));
        // -1 at order 2 equals zeta_6^3
        assert_eq!(CycloNum::zeta_pow(2, 1), CycloNum::zeta_pow(6, 3));
        assert_eq!(CycloNum::from_int(4, 3).simplify().order(), 1);
    }

    fn cyclo(order: u32) -> impl Strategy<Value = CycloNum> {
        let d = cyclotomic_polynomial(order).len() - 1;
        proptest::collection::vec((-20i64..20, 1i64..5), d).prop_map(move |cs| {
            let rs: Vec<BigRational> = cs.into_iter().map(|(n, d)| q(n, d)).collect();
            CycloNum::from_coeffs(order, &rs)
        })
    }

    proptest! {
        #[test]
        fn galois_is_a_ring_homomorphism(a in cyclo(7), b in cyclo(7), qq in 1i64..7) {
            let s = |x: &CycloNum| x.galois_apply(qq).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        }

        #[test]
        fn conjugation_is_an_involution(a in cyclo(12)) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!(a.conjugate(), a.galois_apply(11).unwrap());
            let c = a.to_complex();
            let cc = a.conjugate().to_complex();
            prop_assert!((c.conj() - cc).norm() < 1e-9);
        }

        #[test]
        fn embedding_matches_floats(a in cyclo(5), b in cyclo(4)) {
            let p = &a * &b;
            prop_assert!((p.to_complex() - a.to_complex() * b.to_complex()).norm() < 1e-6);
        }

        #[test]
        fn inverse_roundtrip(a in cyclo(9)) {
            prop_assume!(!a.is_zero());
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }

        #[test]
        fn norm_is_multiplicative(a in -9i64..9, b in -9i64..9, c in -9i64..9, d in -9i64..9) {
            let x = &CycloNum::from_int(5, a) + &(&CycloNum::from_int(5, b) * &sqrt5());
            let y = &CycloNum::from_int(5, c) + &(&CycloNum::from_int(5, d) * &sqrt5());
            prop_assert_eq!(
                field_norm_q5(&(&x * &y)).unwrap(),
                field_norm_q5(&x).unwrap() * field_norm_q5(&y).unwrap()
            );
        }

        #[test]
        fn contributions_are_real_and_bounded(n in 1u32..14, k in 1i64..12, g in 0i64..6) {
            prop_assume!(2 * g <= k);
            let p = RootParam::primitive(n).unwrap();
            let l = cycle_contribution(p, k, g);
            prop_assert_eq!(l.conjugate(), l.clone());
            let z = l.to_complex();
            prop_assert!(z.im.abs() < 1e-12 && z.re > -1e-12 && z.re < 4.0 + 1e-12);
            prop_assert_eq!(l.is_zero(), p.annihilates(k - 2 * g));
        }

        #[test]
        fn serialization_roundtrip(a in cyclo(6)) {
            let s = serde_json::to_string(&a).unwrap();
            let back: CycloNum = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }

    #[test]
    fn sine_product_formula() {
        for p in [3u32, 5, 7, 11, 13] {
            let prod: CycloNum = (1..=(p as i64 - 1) / 2)
                .map(|j| {
                    &(&CycloNum::from_int(p, 2) - &CycloNum::zeta_pow(p, j))
                        - &CycloNum::zeta_pow(p, -j)
                })
                .product();
            assert_eq!(prod, CycloNum::from_int(1, p as i64), "p = {p}");
        }
    }

    #[test]
    fn latin_square() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            let half = (p - 1) / 2;
            for a in 1..=half {
                let mut seen: Vec<u64> = (1..=half).map(|x| fold_index((a * x) as i64, p)).collect();
                seen.sort_unstable();
                assert_eq!(seen, (1..=half).collect::<Vec<_>>(), "p = {p}, a = {a}");
            }
        }
    }

    #[test]
    fn alpha_beta_powers_are_distinct() {
        let mut seen = Vec::new();
        for x in 0..=6u32 {
            for y in 0..=6u32 {
                seen.push(((x, y), &alpha().pow(x) * &beta().pow(y)));
            }
        }
        for (i, (xy, v)) in seen.iter().enumerate() {
            for (xy2, v2) in &seen[i + 1..] {
                assert!(v != v2, "{xy:?} and {xy2:?} collide");
            }
        }
    }
}
