use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable of the owning
/// polynomial's universe.
///
/// Ordering is graded lexicographic: total degree first, then exponents
/// compared variable by variable in universe order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_exponents(exps))
    }

    /// `self / other` when `other` divides `self`.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial::from_exponents(exps))
    }

    fn checked_pow(&self, e: u32) -> Result<Monomial> {
        let exps = self
            .0
            .iter()
            .map(|&a| a.checked_mul(e).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_exponents(exps))
    }

    fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        for (i, &e) in self.0.iter().enumerate() {
            exps[map[i]] = e;
        }
        Monomial::from_exponents(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients.
///
/// The variable universe is kept sorted by name, so two polynomials over the
/// same symbols always share one monomial order. Binary operations unify
/// universes automatically. Zero coefficients are never stored.
#[derive(Clone)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            vars: Arc::from(Vec::<String>::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(0), c);
        }
        MPoly {
            vars: Arc::from(Vec::<String>::new()),
            terms,
        }
    }

    /// The polynomial consisting of a single variable.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::from_exponents(vec![1]), BigInt::one());
        MPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms,
        }
    }

    /// Builds a polynomial from `(coefficient, [(variable, exponent)])` terms.
    pub fn from_terms<'a, I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Vec<(&'a str, u32)>)>,
        C: Into<BigInt>,
    {
        let mut out = MPoly::zero();
        for (c, factors) in terms {
            let mut t = MPoly::constant(c);
            for (v, e) in factors {
                t = t.mul(&MPoly::var(v).pow(e).expect("exponent fits in u32"));
            }
            out = out.add(&t);
        }
        out
    }

    /// Builds a polynomial over a sorted universe from exponent vectors;
    /// repeated monomials are summed.
    pub fn from_exponent_terms<I>(vars: Arc<[String]>, terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length");
            *map.entry(Monomial::from_exponents(exps)).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        MPoly { vars, terms: map }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn vars_arc(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Leading monomial and coefficient in graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Lowest monomial and coefficient in graded lex order.
    pub fn trailing(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Exponent of `var` in `mono`, where `mono` belongs to this polynomial.
    pub fn exponent_of(&self, mono: &Monomial, var: &str) -> u32 {
        self.vars
            .iter()
            .position(|v| v == var)
            .map_or(0, |i| mono.0[i])
    }

    /// Re-expresses the polynomial over `vars`, which must be a sorted
    /// superset of the current universe.
    pub fn with_vars(&self, vars: &Arc<[String]>) -> MPoly {
        if Arc::ptr_eq(&self.vars, vars) || *self.vars == **vars {
            return MPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.binary_search(v)
                    .expect("target universe must contain every variable")
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.remap(&map, vars.len()), c.clone()))
            .collect();
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Sorted union of two variable universes.
    pub fn union_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
        if Arc::ptr_eq(a, b) || **a == **b {
            return a.clone();
        }
        let mut all: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
        all.sort();
        all.dedup();
        if all.len() == a.len() {
            return a.clone();
        }
        if all.len() == b.len() {
            return b.clone();
        }
        Arc::from(all)
    }

    fn unified(&self, other: &MPoly) -> (MPoly, MPoly) {
        let vars = Self::union_vars(&self.vars, &other.vars);
        (self.with_vars(&vars), other.with_vars(&vars))
    }

    fn same_universe(&self, other: &MPoly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        if !self.same_universe(other) {
            let (a, b) = self.unified(other);
            return a.add(&b);
        }
        let (big, small) = if self.terms.len() >= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            accumulate(&mut terms, m.clone(), c);
        }
        MPoly {
            vars: big.vars.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        if !self.same_universe(other) {
            let (a, b) = self.unified(other);
            return a.try_mul(&b);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            });
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let prod = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Product of two polynomials.
    ///
    /// Panics on exponent overflow; use [`MPoly::try_mul`] to get an error
    /// instead.
    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.try_mul(other).expect("exponent overflow in product")
    }

    pub fn pow(&self, e: u32) -> Result<MPoly> {
        if e == 0 {
            return Ok(MPoly::one().with_vars(&self.vars));
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            terms.insert(m.checked_pow(e)?, num_traits::pow(c.clone(), e as usize));
            return Ok(MPoly {
                vars: self.vars.clone(),
                terms,
            });
        }
        let mut result = MPoly::one().with_vars(&self.vars);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Fails with [`Error::InexactDivision`] when the divisor does not divide
    /// `self` over the integers.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly> {
        if !self.same_universe(divisor) {
            let (a, b) = self.unified(divisor);
            return a.exact_div(&b);
        }
        let (lead_m, lead_c) = divisor.leading().ok_or(Error::InexactDivision)?;
        if divisor.terms.len() == 1 {
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let qm = m.checked_div(lead_m).ok_or(Error::InexactDivision)?;
                let (qc, r) = c.div_rem(lead_c);
                if !r.is_zero() {
                    return Err(Error::InexactDivision);
                }
                terms.insert(qm, qc);
            }
            return Ok(MPoly {
                vars: self.vars.clone(),
                terms,
            });
        }
        let tail: Vec<(&Monomial, &BigInt)> = divisor.terms.iter().rev().skip(1).collect();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lead_m).ok_or(Error::InexactDivision)?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (dm, dc) in &tail {
                let mm = dm.checked_mul(&qm)?;
                let delta = -(&qc * *dc);
                accumulate(&mut rem, mm, &delta);
            }
            quot.insert(qm, qc);
        }
        Ok(MPoly {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Evaluates at a point given as variable → value.
    pub fn eval_f64(&self, point: &HashMap<String, f64>) -> Result<f64> {
        let values = self.lookup(point)?;
        let mut terms: Vec<f64> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        t *= values[i].powi(e as i32);
                    }
                }
                t
            })
            .collect();
        Ok(pairwise_sum(&mut terms))
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, point: &HashMap<String, BigInt>) -> Result<BigInt> {
        let values = self.lookup(point)?;
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[i].clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    fn lookup<T: Clone>(&self, point: &HashMap<String, T>) -> Result<Vec<T>> {
        self.vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::MissingWeight(format!("variable `{v}`")))
            })
            .collect()
    }

    /// Substitutes polynomials for some variables.
    pub fn substitute(&self, map: &HashMap<String, MPoly>) -> Result<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.vars[i];
                let base = map.get(name).cloned().unwrap_or_else(|| MPoly::var(name));
                t = t.try_mul(&base.pow(e)?)?;
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Monomial-and-coefficient view when the polynomial has one term.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Drops variables that do not occur in any term.
    pub fn trimmed(&self) -> MPoly {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Arc<[String]> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    Monomial::from_exponents(used.iter().map(|&i| m.0[i]).collect()),
                    c.clone(),
                )
            })
            .collect();
        MPoly { vars, terms }
    }

    /// JSON term list: `[{"coeff": "2", "exponents": {"a": 1}}, ...]` in
    /// descending graded lex order. Coefficients are decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (self.vars[i].clone(), serde_json::Value::from(e)))
                    .collect();
                serde_json::json!({ "coeff": c.to_string(), "exponents": exps })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<MPoly> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("term list must be an array".into()))?;
        let mut out = MPoly::zero();
        for t in arr {
            let coeff: BigInt = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse("term needs a string `coeff`".into()))?
                .parse()
                .map_err(|_| Error::Parse("bad coefficient".into()))?;
            let mut term = MPoly::constant(coeff);
            if let Some(exps) = t.get("exponents").and_then(|e| e.as_object()) {
                for (v, e) in exps {
                    let e = e
                        .as_u64()
                        .and_then(|e| u32::try_from(e).ok())
                        .ok_or_else(|| Error::Parse(format!("bad exponent for `{v}`")))?;
                    term = term.try_mul(&MPoly::var(v).pow(e)?)?;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: &BigInt) {
    match terms.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c.clone());
            }
        }
    }
}

/// Pairwise summation; reorders nothing, so results are reproducible.
pub(crate) fn pairwise_sum(xs: &mut [f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (a, b) = xs.split_at_mut(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.same_universe(other) {
            return self.terms == other.terms;
        }
        let (a, b) = self.unified(other);
        a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl Default for MPoly {
    fn default() -> Self {
        MPoly::zero()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        MPoly::add(self, rhs)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        MPoly::sub(self, rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        MPoly::mul(self, rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> MPoly {
        MPoly::var(s)
    }

    #[test]
    fn difference_of_squares() {
        let x = v("x");
        let a = v("a");
        let p = &(&x + &a) * &(&x - &a);
        let expected = &x.pow(2).unwrap() - &a.pow(2).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn additive_identity() {
        let p = &v("x") + &MPoly::constant(3);
        assert_eq!(&p + &MPoly::zero(), p);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn multinomial_term_count() {
        // (x^2+a^2+b^2+c^2)^4 has C(4+3,3) = 35 distinct monomials.
        let s = ["x", "a", "b", "c"]
            .iter()
            .fold(MPoly::zero(), |acc, n| &acc + &v(n).pow(2).unwrap());
        assert_eq!(s.pow(4).unwrap().num_terms(), 35);
    }

    #[test]
    fn exponent_overflow_is_an_error() {
        let big = v("x").pow(u32::MAX).unwrap();
        assert_eq!(big.try_mul(&v("x")), Err(Error::ExponentOverflow));
        assert_eq!(v("x").pow(2).unwrap().pow(u32::MAX), Err(Error::ExponentOverflow));
    }

    #[test]
    fn unification_is_order_free() {
        let p = &v("x") + &v("a");
        let q = &v("a") + &v("x");
        assert_eq!(p, q);
        assert_eq!(p.vars(), &["a".to_string(), "x".to_string()]);
    }

    #[test]
    fn exact_division_roundtrip_and_failure() {
        let x = v("x");
        let a = v("a");
        let p = &(&x + &a) * &(&(&x * &x) - &MPoly::constant(2));
        assert_eq!(p.exact_div(&(&x + &a)).unwrap(), &(&x * &x) - &MPoly::constant(2));
        assert_eq!(p.exact_div(&(&x + &MPoly::constant(1))), Err(Error::InexactDivision));
        assert_eq!(
            MPoly::constant(3).exact_div(&MPoly::constant(2)),
            Err(Error::InexactDivision)
        );
    }

    #[test]
    fn display_is_canonical() {
        let p = &(&v("x").pow(2).unwrap() - &MPoly::constant(1))
            + &(&MPoly::constant(2) * &(&v("a") * &v("b")));
        assert_eq!(p.to_string(), "2*a*b + x^2 - 1");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!((-&v("a")).to_string(), "-a");
    }

    #[test]
    fn json_roundtrip() {
        let p = &(&v("x").pow(3).unwrap() * &MPoly::constant(-7)) + &v("a12");
        let back = MPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn evaluation() {
        let p = &(&v("x") * &v("x")) + &(&MPoly::constant(3) * &v("a"));
        let pt: HashMap<String, f64> = [("x".into(), 2.0), ("a".into(), 0.5)].into();
        assert_eq!(p.eval_f64(&pt).unwrap(), 5.5);
        let missing: HashMap<String, f64> = [("x".into(), 2.0)].into();
        assert!(matches!(p.eval_f64(&missing), Err(Error::MissingWeight(_))));
        let ipt: HashMap<String, BigInt> = [("x".into(), 3.into()), ("a".into(), 5.into())].into();
        assert_eq!(p.eval_int(&ipt).unwrap(), BigInt::from(24));
    }

    #[test]
    fn graded_lex_order() {
        let p = &(&v("a") + &v("x").pow(2).unwrap()) + &(&v("a") * &v("x"));
        let (lead, _) = p.leading().unwrap();
        assert_eq!(lead.degree(), 2);
        // a*x and x^2 have degree 2; a precedes x, so a*x is larger.
        assert_eq!(p.exponent_of(lead, "a"), 1);
    }
}
