//! Exact multivariate Laurent polynomials with quarter-integer exponents.
//!
//! Exponents are stored as integers scaled by [`EXP_SCALE`], so `X^(1/2)` is
//! stored as `2` and `t^(-3/4)` as `-3`. Coefficients are arbitrary-precision
//! integers. Every operation keeps the representation canonical: no zero
//! coefficient and no zero exponent is ever stored.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::parse;

/// Denominator of the exponent lattice.
pub const EXP_SCALE: i64 = 4;

const BUILTINS: [&str; 8] = ["X", "Y", "Z", "A", "B", "d", "w", "t"];

/// A variable symbol.
///
/// Weight symbols (anything that is not a built-in) sort first, by name;
/// the built-ins follow in the fixed order `X Y Z A B d w t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    rank: u8,
    name: Arc<str>,
}

impl Var {
    pub fn new(name: &str) -> Var {
        let rank = BUILTINS
            .iter()
            .position(|b| *b == name)
            .map_or(0, |i| i as u8 + 1);
        Var {
            rank,
            name: Arc::from(name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_builtin(&self) -> bool {
        self.rank > 0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Scaled exponent for `num/den`, if it lies on the quarter lattice.
pub fn scaled_exponent(num: i64, den: i64) -> Option<i64> {
    if den == 0 || (num * EXP_SCALE) % den != 0 {
        return None;
    }
    Some(num * EXP_SCALE / den)
}

/// A product of variable powers. Entries are sorted by variable and never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, i64)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    /// `var^(scaled / EXP_SCALE)`.
    pub fn var_scaled(var: Var, scaled: i64) -> Monomial {
        if scaled == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: vec![(var, scaled)],
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Var, i64)>) -> Monomial {
        let mut acc: BTreeMap<Var, i64> = BTreeMap::new();
        for (v, e) in factors {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: acc.into_iter().filter(|(_, e)| *e != 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(Var, i64)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Scaled exponent of `var` (0 if absent).
    pub fn exponent(&self, var: &Var) -> i64 {
        self.factors
            .binary_search_by(|(v, _)| v.cmp(var))
            .map_or(0, |i| self.factors[i].1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// Raise to the rational power `scaled / EXP_SCALE`.
    pub fn pow_scaled(&self, scaled: i64) -> Result<Monomial> {
        let mut factors = Vec::with_capacity(self.factors.len());
        for (v, e) in &self.factors {
            let prod = e * scaled;
            if prod % EXP_SCALE != 0 {
                return Err(Error::ExponentResolution {
                    var: v.name().to_string(),
                });
            }
            if prod != 0 {
                factors.push((v.clone(), prod / EXP_SCALE));
            }
        }
        Ok(Monomial { factors })
    }

    fn without(&self, var: &Var) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .filter(|(v, _)| v != var)
                .cloned()
                .collect(),
        }
    }
}

// Lexicographic order on dense exponent vectors, variables in `Var` order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, e))) => return 0.cmp(e),
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_exponent(scaled: i64) -> Option<String> {
    if scaled == EXP_SCALE {
        return None;
    }
    if scaled % EXP_SCALE == 0 {
        let n = scaled / EXP_SCALE;
        return Some(if n < 0 {
            format!("({n})")
        } else {
            n.to_string()
        });
    }
    let g = gcd(scaled.abs(), EXP_SCALE);
    Some(format!("({}/{})", scaled / g, EXP_SCALE / g))
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(v.name())?;
            if let Some(exp) = fmt_exponent(*e) {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Laurent polynomial with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Polynomial {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(1, m)
    }

    /// The variable `name` to the first power.
    pub fn var(name: &str) -> Polynomial {
        Polynomial::monomial(Monomial::var_scaled(Var::new(name), EXP_SCALE))
    }

    /// `name^(num/den)`. Panics if the exponent is off the quarter lattice.
    pub fn var_pow(name: &str, num: i64, den: i64) -> Polynomial {
        let scaled = scaled_exponent(num, den).expect("exponent must be a multiple of 1/4");
        Polynomial::monomial(Monomial::var_scaled(Var::new(name), scaled))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Variables occurring anywhere, in `Var` order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v.clone()))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// True if the canonical-form invariants hold.
    pub fn is_normalized(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            !c.is_zero()
                && m.factors.iter().all(|(_, e)| *e != 0)
                && m.factors.windows(2).all(|w| w[0].0 < w[1].0)
        })
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Raise to the power `scaled / EXP_SCALE`.
    ///
    /// Nonnegative integer powers work for any polynomial; other powers need
    /// a single term whose coefficient admits them.
    pub fn pow_scaled(&self, scaled: i64) -> Result<Polynomial> {
        if scaled >= 0 && scaled % EXP_SCALE == 0 {
            return Ok(self.pow((scaled / EXP_SCALE) as u32));
        }
        let Some((m, c)) = self.as_term() else {
            return Err(Error::NonMonomialNegativePower {
                var: "(expression)".into(),
                power: fmt_exponent(scaled).unwrap_or_else(|| "1".into()),
            });
        };
        let coefficient = coefficient_power(c, scaled)?;
        Ok(Polynomial::term(coefficient, m.pow_scaled(scaled)?))
    }

    /// Replace `var` by `value` everywhere.
    pub fn substitute(&self, var: &Var, value: &Polynomial) -> Result<Polynomial> {
        let mut map = BTreeMap::new();
        map.insert(var.clone(), value.clone());
        self.substitute_all(&map)
    }

    /// Simultaneous substitution of several variables.
    pub fn substitute_all(&self, map: &BTreeMap<Var, Polynomial>) -> Result<Polynomial> {
        let mut cache: BTreeMap<(Var, i64), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Polynomial::constant(c.clone());
            for (v, e) in &m.factors {
                match map.get(v) {
                    None => kept.push((v.clone(), *e)),
                    Some(value) => {
                        let key = (v.clone(), *e);
                        let power = match cache.get(&key) {
                            Some(p) => p.clone(),
                            None => {
                                let p = power_of_value(v, value, *e)?;
                                cache.insert(key, p.clone());
                                p
                            }
                        };
                        factor = &factor * &power;
                    }
                }
            }
            let kept = Monomial { factors: kept };
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), fc);
            }
        }
        Ok(out)
    }

    /// Multiply by `var^(scaled / EXP_SCALE)`.
    pub fn shift(&self, var: &Var, scaled: i64) -> Polynomial {
        self.mul_monomial(&Monomial::var_scaled(var.clone(), scaled))
    }

    /// Split into coefficient polynomials by the scaled exponent of `var`.
    pub fn collect_by(&self, var: &Var) -> BTreeMap<i64, Polynomial> {
        let mut out: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(var))
                .or_default()
                .add_term(m.without(var), c.clone());
        }
        out
    }

    /// Deterministic text form; `parse` reads it back.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

fn coefficient_power(c: &BigInt, scaled: i64) -> Result<BigInt> {
    if c.is_one() {
        return Ok(BigInt::one());
    }
    let err = || Error::CoefficientPower {
        coefficient: c.to_string(),
        power: fmt_exponent(scaled).unwrap_or_else(|| "1".into()),
    };
    if scaled % EXP_SCALE != 0 {
        return Err(err());
    }
    let n = scaled / EXP_SCALE;
    if n >= 0 {
        return Ok(num_traits::pow(c.clone(), n as usize));
    }
    if c.abs().is_one() {
        // c = -1
        return Ok(if n % 2 == 0 { BigInt::one() } else { -BigInt::one() });
    }
    Err(err())
}

fn power_of_value(var: &Var, value: &Polynomial, scaled: i64) -> Result<Polynomial> {
    if value.len() > 1 && (scaled < 0 || scaled % EXP_SCALE != 0) {
        return Err(Error::NonMonomialNegativePower {
            var: var.name().to_string(),
            power: fmt_exponent(scaled).unwrap_or_else(|| "1".into()),
        });
    }
    if value.is_zero() {
        return if scaled > 0 {
            Ok(Polynomial::zero())
        } else {
            Err(Error::NonMonomialNegativePower {
                var: var.name().to_string(),
                power: fmt_exponent(scaled).unwrap_or_else(|| "1".into()),
            })
        };
    }
    value.pow_scaled(scaled)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

impl Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |a, b| &a * &b)
    }
}

/// Substitution map builder: `subs(&[("w", p), ("d", q)])`.
pub fn subs(pairs: &[(&str, Polynomial)]) -> BTreeMap<Var, Polynomial> {
    pairs
        .iter()
        .map(|(n, p)| (Var::new(n), p.clone()))
        .collect()
}
