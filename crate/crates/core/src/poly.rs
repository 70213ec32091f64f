//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every polynomial lives in a [`Universe`] of named variable families:
//!
//! ```text
//! y1 < … < yn < z < x1 < … < x(n+1) < b1 < … < b(n+1) < bw1 < … < bw(n+1) < xg1_1 < … < xgn_n
//! ```
//!
//! Monomials are ordered graded-lexicographically, with earlier variables in
//! the list above being more significant. Text output lists terms from the
//! largest monomial down, e.g. `3/2*y1^2*z - y2 + 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// A variable. The derived order is the universe order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Equivariant parameter `y_i` of the torus `T`.
    Y(u8),
    /// The extra parameter of `K = T × ℂ^×`.
    Z,
    X(u8),
    B(u8),
    /// The family `b^w_l = b_l + (w_l/u) x_id`.
    Bw(u8),
    /// Matrix entry `x_{ij}` of Déruyts' construction.
    Xg(u8, u8),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::Y(i) => write!(f, "y{i}"),
            Var::Z => f.write_str("z"),
            Var::X(i) => write!(f, "x{i}"),
            Var::B(i) => write!(f, "b{i}"),
            Var::Bw(i) => write!(f, "bw{i}"),
            Var::Xg(i, j) => write!(f, "xg{i}_{j}"),
        }
    }
}

impl std::str::FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown variable {s:?}"));
        let idx = |t: &str| t.parse::<u8>().ok().filter(|&i| i >= 1).ok_or_else(bad);
        if s == "z" {
            Ok(Var::Z)
        } else if let Some(rest) = s.strip_prefix("xg") {
            let (i, j) = rest.split_once('_').ok_or_else(bad)?;
            Ok(Var::Xg(idx(i)?, idx(j)?))
        } else if let Some(rest) = s.strip_prefix("bw") {
            Ok(Var::Bw(idx(rest)?))
        } else if let Some(rest) = s.strip_prefix('y') {
            Ok(Var::Y(idx(rest)?))
        } else if let Some(rest) = s.strip_prefix('x') {
            Ok(Var::X(idx(rest)?))
        } else if let Some(rest) = s.strip_prefix('b') {
            Ok(Var::B(idx(rest)?))
        } else {
            Err(bad())
        }
    }
}

/// The variable universe for rank `n`: `y[1..n]`, `z`, `x[1..n+1]`,
/// `b[1..n+1]`, `bw[1..n+1]` and `xg[1..n][1..n]`.
///
/// The `x`, `b`, `bw` families carry one extra index so that Monk products can
/// be embedded in `S_{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    n: usize,
}

impl Universe {
    pub fn new(n: usize) -> Self {
        assert!((1..=60).contains(&n), "universe rank out of range");
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: Var) -> bool {
        let n = self.n;
        match v {
            Var::Y(i) => (1..=n).contains(&(i as usize)),
            Var::Z => true,
            Var::X(i) | Var::B(i) | Var::Bw(i) => (1..=n + 1).contains(&(i as usize)),
            Var::Xg(i, j) => (1..=n).contains(&(i as usize)) && (1..=n).contains(&(j as usize)),
        }
    }

    pub fn check(&self, v: Var) -> Result<Var> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(Error::VariableOutOfRange(format!("{v} (n={})", self.n)))
        }
    }

    pub fn y(&self, i: usize) -> Polynomial {
        Polynomial::var(*self, Var::Y(i as u8))
    }

    pub fn z(&self) -> Polynomial {
        Polynomial::var(*self, Var::Z)
    }

    pub fn x(&self, i: usize) -> Polynomial {
        Polynomial::var(*self, Var::X(i as u8))
    }

    pub fn b(&self, i: usize) -> Polynomial {
        Polynomial::var(*self, Var::B(i as u8))
    }

    pub fn bw(&self, i: usize) -> Polynomial {
        Polynomial::var(*self, Var::Bw(i as u8))
    }

    pub fn xg(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(*self, Var::Xg(i as u8, j as u8))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(*self)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(*self)
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(*self, c)
    }
}

/// A monomial as a sorted list of `(variable, exponent > 0)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Self(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map_or(0, |k| self.0[k].1)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits off the power of `v`: returns `(e, m / v^e)`.
    pub fn split(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        (e, Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect()))
    }

    /// Keeps only the variables selected by `keep`.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(v, _)| keep(v)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.degree().cmp(&other.degree()) {
            Equal => {}
            ord => return ord,
        }
        // Lexicographic with earlier variables more significant.
        let (a, b) = (&self.0, &other.0);
        let mut k = 0;
        while k < a.len() && k < b.len() {
            let ((va, ea), (vb, eb)) = (a[k], b[k]);
            if va != vb {
                return if va < vb { Greater } else { Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
            k += 1;
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in a fixed [`Universe`]; no zero coefficients are stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    universe: Universe,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(universe: Universe) -> Self {
        Self {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(universe: Universe) -> Self {
        Self::constant(universe, Rational::one())
    }

    pub fn constant(universe: Universe, c: Rational) -> Self {
        Self::monomial(universe, Monomial::one(), c)
    }

    pub fn monomial(universe: Universe, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { universe, terms }
    }

    /// The variable `v`. Panics if `v` is outside the universe.
    pub fn var(universe: Universe, v: Var) -> Self {
        assert!(universe.contains(v), "variable {v} outside universe n={}", universe.n);
        Self::monomial(universe, Monomial::var(v), Rational::one())
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// The largest term, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn uses_only(&self, allowed: impl Fn(Var) -> bool) -> bool {
        self.terms
            .keys()
            .all(|m| m.factors().iter().all(|&(v, _)| allowed(v)))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_universe(&self, other: &Polynomial) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                left: self.universe.n,
                right: other.universe.n,
            })
        }
    }

    fn assert_universe(&self, other: &Polynomial) {
        if let Err(e) = self.check_universe(other) {
            panic!("{e}");
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.universe);
        }
        Polynomial {
            universe: self.universe,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.universe);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_universe(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_universe(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_universe(other)?;
        Ok(self * other)
    }

    /// Simultaneous substitution; variables without an image are kept.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Polynomial>) -> Result<Polynomial> {
        for image in assignment.values() {
            self.check_universe(image)?;
        }
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(self.universe);
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut term = Polynomial::one(self.universe);
            for &(v, e) in m.factors() {
                match assignment.get(&v) {
                    Some(image) => {
                        let p = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                        term = &term * &*p;
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept = Monomial(kept);
            for (tm, tc) in term.terms {
                out.add_term(tm.mul(&kept), tc * c);
            }
        }
        Ok(out)
    }

    /// Substitutes a single variable.
    pub fn substitute_var(&self, v: Var, image: &Polynomial) -> Result<Polynomial> {
        self.substitute(&BTreeMap::from([(v, image.clone())]))
    }

    /// Applies a variable renaming (which must stay inside the universe).
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Polynomial {
        let mut out = Polynomial::zero(self.universe);
        for (m, c) in &self.terms {
            let renamed = Monomial::from_pairs(m.factors().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(renamed, c.clone());
        }
        out
    }

    /// Groups terms by the exponent of `v`: `self = Σ_k coeffs[k] · v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(self.universe); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Exact division by a linear form, by synthetic division in its
    /// leading variable. Errors if the remainder is nonzero.
    pub fn div_exact_linear(&self, divisor: &LinearForm) -> Result<Polynomial> {
        let l = divisor.as_poly();
        self.check_universe(l)?;
        let (v, c) = divisor.leading();
        // divisor = c·(v − a)
        let a = (&Polynomial::var(self.universe, v) - &l.scale(&c.recip())).clone();
        let f = self.coefficients_in(v);
        let deg = f.len() - 1;
        let vpoly = Polynomial::var(self.universe, v);
        let mut quotient = Polynomial::zero(self.universe);
        let mut q = Polynomial::zero(self.universe);
        for k in (1..=deg).rev() {
            q = &f[k] + &(&a * &q);
            quotient = &quotient + &(&q * &vpoly.pow(k as u32 - 1));
        }
        let remainder = &f[0] + &(&a * &q);
        if !remainder.is_zero() {
            return Err(Error::InexactDivision {
                divisor: l.to_string(),
                remainder: remainder.to_string(),
            });
        }
        Ok(quotient.scale(&c.recip()))
    }

    /// `∂_i f = (f − s_i f)/(x_i − x_{i+1})`.
    pub fn divided_difference(&self, i: usize) -> Result<Polynomial> {
        let u = self.universe;
        let (xi, xj) = (Var::X(i as u8), Var::X(i as u8 + 1));
        u.check(xj)?;
        let swapped = self.rename(|v| {
            if v == xi {
                xj
            } else if v == xj {
                xi
            } else {
                v
            }
        });
        let numerator = self - &swapped;
        let divisor = LinearForm::new(&u.x(i) - &u.x(i + 1))?;
        numerator.div_exact_linear(&divisor)
    }

    /// The JSON term list `[{coeff: "p/q", exps: {var: e}}]`.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                exps: m.factors().iter().map(|&(v, e)| (v.to_string(), e)).collect(),
            })
            .collect()
    }

    pub fn from_json_terms(universe: Universe, terms: &[JsonTerm]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(universe);
        for t in terms {
            let c = parse_rational(&t.coeff)?;
            let mut pairs = Vec::new();
            for (name, &e) in &t.exps {
                let v = universe.check(name.parse()?)?;
                pairs.push((v, e));
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }

    /// Parses the text format produced by `Display`.
    pub fn parse(universe: Universe, s: &str) -> Result<Polynomial> {
        parse::parse_polynomial(universe, s)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub exps: BTreeMap<String, u32>,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_universe(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_universe(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_universe(rhs);
        let mut out = Polynomial::zero(self.universe);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            universe: self.universe,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.assert_universe(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.assert_universe(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

/// The arithmetic operations exposed by [`poly_arith`].
#[derive(Clone, Debug)]
pub enum ArithOp<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Neg,
    Scale(&'a Rational),
    Pow(u32),
}

/// Checked arithmetic entry point; binary operations require equal universes.
pub fn poly_arith(f: &Polynomial, op: ArithOp<'_>) -> Result<Polynomial> {
    match op {
        ArithOp::Add(g) => f.try_add(g),
        ArithOp::Sub(g) => f.try_sub(g),
        ArithOp::Mul(g) => f.try_mul(g),
        ArithOp::Neg => Ok(-f),
        ArithOp::Scale(c) => Ok(f.scale(c)),
        ArithOp::Pow(e) => Ok(f.pow(e)),
    }
}

/// A nonzero homogeneous polynomial of degree one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(Polynomial);

impl LinearForm {
    pub fn new(p: Polynomial) -> Result<Self> {
        if p.is_zero() || p.terms.keys().any(|m| m.degree() != 1) {
            return Err(Error::NotLinearForm(p.to_string()));
        }
        Ok(Self(p))
    }

    pub fn as_poly(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_poly(self) -> Polynomial {
        self.0
    }

    /// `v ↦ coefficient` for each variable.
    pub fn coefficients(&self) -> BTreeMap<Var, Rational> {
        self.0
            .terms
            .iter()
            .map(|(m, c)| (m.factors()[0].0, c.clone()))
            .collect()
    }

    /// The largest variable in universe order together with its coefficient.
    pub fn leading(&self) -> (Var, Rational) {
        let (v, c) = self.coefficients().into_iter().next_back().unwrap();
        (v, c)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Normal form of `f` modulo the ideal generated by linearly independent
/// linear forms.
///
/// The forms are brought to reduced row echelon form with the largest
/// variable of each as pivot; each pivot is then eliminated by substitution.
/// `f` lies in the ideal iff the result is zero.
pub fn reduce_mod_linear(f: &Polynomial, generators: &[LinearForm]) -> Result<Polynomial> {
    let mut rows: Vec<(Var, BTreeMap<Var, Rational>)> = Vec::new();
    for g in generators {
        f.check_universe(g.as_poly())?;
        let mut row = g.coefficients();
        for (pv, prow) in &rows {
            if let Some(c) = row.get(pv).cloned() {
                for (v, a) in prow {
                    let e = row.entry(*v).or_insert_with(Rational::zero);
                    *e -= &c * a;
                }
                row.retain(|_, a| !a.is_zero());
            }
        }
        let Some((&pivot, lead)) = row.iter().next_back() else {
            return Err(Error::DependentGenerators);
        };
        let lead = lead.clone();
        for a in row.values_mut() {
            *a /= &lead;
        }
        for (_, prow) in rows.iter_mut() {
            if let Some(c) = prow.get(&pivot).cloned() {
                for (v, a) in &row {
                    let e = prow.entry(*v).or_insert_with(Rational::zero);
                    *e -= &c * a;
                }
                prow.retain(|_, a| !a.is_zero());
            }
        }
        rows.push((pivot, row));
    }
    let u = f.universe;
    let assignment: BTreeMap<Var, Polynomial> = rows
        .into_iter()
        .map(|(pivot, row)| {
            let mut image = Polynomial::zero(u);
            for (v, a) in row {
                if v != pivot {
                    image.add_term(Monomial::var(v), -a);
                }
            }
            (pivot, image)
        })
        .collect();
    f.substitute(&assignment)
}

/// `f ∈ ⟨L⟩`.
pub fn is_divisible_by(f: &Polynomial, l: &LinearForm) -> Result<bool> {
    Ok(reduce_mod_linear(f, std::slice::from_ref(l))?.is_zero())
}

mod parse {
    use super::*;

    struct Lexer<'a> {
        s: &'a [u8],
        pos: usize,
    }

    impl<'a> Lexer<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.s.get(self.pos).copied()
        }

        fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
            let start = self.pos;
            while self.pos < self.s.len() && f(self.s[self.pos]) {
                self.pos += 1;
            }
            std::str::from_utf8(&self.s[start..self.pos]).unwrap()
        }

        fn err(&self, what: &str) -> Error {
            Error::Parse(format!("{what} at byte {}", self.pos))
        }
    }

    pub(super) fn parse_polynomial(u: Universe, s: &str) -> Result<Polynomial> {
        let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
        let mut out = Polynomial::zero(u);
        let mut first = true;
        loop {
            let mut sign = Rational::one();
            match lx.peek() {
                None if !first => break,
                None => return Err(lx.err("empty polynomial")),
                Some(b'+') if !first => lx.pos += 1,
                Some(b'-') => {
                    lx.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return Err(lx.err("expected '+' or '-'")),
            }
            first = false;
            let (m, c) = parse_term(u, &mut lx)?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }

    fn parse_term(u: Universe, lx: &mut Lexer<'_>) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut pairs = Vec::new();
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let p: BigInt = lx.take_while(|c| c.is_ascii_digit()).parse().unwrap();
                    let mut r = Rational::from_integer(p);
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        lx.skip_ws();
                        let q = lx.take_while(|c| c.is_ascii_digit());
                        let q: BigInt = q.parse().map_err(|_| lx.err("bad denominator"))?;
                        if q.is_zero() {
                            return Err(lx.err("zero denominator"));
                        }
                        r /= Rational::from_integer(q);
                    }
                    coeff *= r;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = lx.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
                    let v = u.check(name.parse()?)?;
                    let mut e = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        lx.skip_ws();
                        e = lx
                            .take_while(|c| c.is_ascii_digit())
                            .parse()
                            .map_err(|_| lx.err("bad exponent"))?;
                    }
                    pairs.push((v, e));
                }
                _ => return Err(lx.err("expected a factor")),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_pairs(pairs), coeff))
    }
}
