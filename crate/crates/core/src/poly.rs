//! Sparse multivariate polynomials with exponents in (1/2)·Z and
//! arbitrary-precision integer coefficients.
//!
//! Exponents are stored doubled, so the monomial `x^(3/2)` keeps `3` for
//! `x`. Doubled exponents are signed: Laurent-type objects such as the
//! Krushkal polynomial are representable directly. Every operation
//! normalises its result (zero terms dropped, unused variables pruned,
//! variables kept sorted by name), so structural equality is polynomial
//! equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("substitution for `{0}` would produce quarter-integer exponents")]
    QuarterExponent(String),
    #[error("negative exponent of `{0}` requires a monomial substitution")]
    NegativePower(String),
    #[error("half exponent of `{0}` requires a monomial substitution")]
    HalfPower(String),
    #[error("negative base under a half exponent of `{0}`")]
    NegativeBase(String),
    #[error("value for `{0}` is not an exact square, needed for a half exponent")]
    NotASquare(String),
    #[error("division by zero when evaluating `{0}` at a negative exponent")]
    DivisionByZero(String),
}

/// Polynomial in the ring Z[v1^(±1/2), ..., vk^(±1/2)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPoly {
    /// Variable names, sorted ascending. Arity of every exponent tuple.
    vars: Vec<String>,
    /// Doubled exponent tuple -> nonzero coefficient.
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl HalfPoly {
    pub fn zero() -> Self {
        HalfPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        HalfPoly { vars: Vec::new(), terms }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// Single variable to the first power.
    pub fn var(name: &str) -> Self {
        Self::monomial(&[name], &[(1, 1)], 1)
    }

    /// Monomial `coeff * vars[i]^(num/den)` with den in {1, 2}.
    pub fn monomial(vars: &[&str], exps: &[(i64, i64)], coeff: impl Into<BigInt>) -> Self {
        assert_eq!(vars.len(), exps.len());
        let doubled: Vec<i64> = exps
            .iter()
            .map(|&(n, d)| match d {
                1 => 2 * n,
                2 => n,
                _ => panic!("exponent denominator must be 1 or 2"),
            })
            .collect();
        Self::from_doubled_monomial(vars, &doubled, coeff.into())
    }

    /// Monomial from doubled exponents (exponent k/2 passed as k).
    pub fn from_doubled_monomial(vars: &[&str], doubled: &[i64], coeff: BigInt) -> Self {
        assert_eq!(vars.len(), doubled.len());
        let mut pairs: Vec<(String, i64)> = vars
            .iter()
            .zip(doubled)
            .map(|(v, &e)| (v.to_string(), e))
            .collect();
        pairs.sort();
        for w in pairs.windows(2) {
            assert_ne!(w[0].0, w[1].0, "duplicate variable in monomial");
        }
        let mut p = HalfPoly {
            vars: pairs.iter().map(|(v, _)| v.clone()).collect(),
            terms: BTreeMap::new(),
        };
        if !coeff.is_zero() {
            p.terms.insert(pairs.iter().map(|(_, e)| *e).collect(), coeff);
        }
        p.normalize();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms as (variable-name, doubled-exponent) pairs plus coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(&str, i64)>, &BigInt)> {
        self.terms.iter().map(move |(exps, c)| {
            let m: Vec<(&str, i64)> = self
                .vars
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e != 0)
                .map(|(v, &e)| (v.as_str(), e))
                .collect();
            (m, c)
        })
    }

    /// Drop variables that appear with exponent 0 in every term.
    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] != 0))
            .collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let vars: Vec<String> = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| {
                let e: Vec<i64> = e
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(x, _)| x)
                    .collect();
                (e, c)
            })
            .collect();
        self.vars = vars;
        self.terms = terms;
    }

    /// Rewrite both polynomials over the union of their variable sets.
    fn aligned(&self, other: &HalfPoly) -> (Vec<String>, Vec<(Vec<i64>, BigInt)>, Vec<(Vec<i64>, BigInt)>) {
        let mut vars: Vec<String> = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let embed = |p: &HalfPoly| -> Vec<(Vec<i64>, BigInt)> {
            let idx: Vec<usize> = p
                .vars
                .iter()
                .map(|v| vars.iter().position(|w| w == v).unwrap())
                .collect();
            p.terms
                .iter()
                .map(|(e, c)| {
                    let mut t = vec![0i64; vars.len()];
                    for (j, &x) in e.iter().enumerate() {
                        t[idx[j]] = x;
                    }
                    (t, c.clone())
                })
                .collect()
        };
        let a = embed(self);
        let b = embed(other);
        (vars, a, b)
    }

    pub fn add(&self, other: &HalfPoly) -> HalfPoly {
        let (vars, a, b) = self.aligned(other);
        let mut terms: BTreeMap<Vec<i64>, BigInt> = a.into_iter().collect();
        for (e, c) in b {
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        let mut p = HalfPoly { vars, terms };
        p.normalize();
        p
    }

    pub fn sub(&self, other: &HalfPoly) -> HalfPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HalfPoly {
        HalfPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &HalfPoly) -> HalfPoly {
        let (vars, a, b) = self.aligned(other);
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        let mut p = HalfPoly { vars, terms };
        p.normalize();
        p
    }

    pub fn pow(&self, n: u32) -> HalfPoly {
        let mut acc = HalfPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The polynomial as a single monomial, if it is one.
    fn as_monomial(&self) -> Option<(Vec<(String, i64)>, BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some((
            self.vars.iter().cloned().zip(e.iter().cloned()).collect(),
            c.clone(),
        ))
    }

    /// Monomial raised to the doubled power `d` (that is, to d/2). Fails if a
    /// resulting exponent leaves (1/2)·Z or the coefficient is not ±1 under a
    /// genuinely half power.
    fn monomial_pow_doubled(var: &str, m: &(Vec<(String, i64)>, BigInt), d: i64) -> Result<HalfPoly, PolyError> {
        let (vexp, coeff) = m;
        let mut exps: Vec<(String, i64)> = Vec::with_capacity(vexp.len());
        for (v, e) in vexp {
            let prod = e.checked_mul(d).expect("exponent overflow");
            if prod % 2 != 0 {
                return Err(PolyError::QuarterExponent(var.to_string()));
            }
            exps.push((v.clone(), prod / 2));
        }
        let c = if d % 2 == 0 {
            let k = d / 2;
            if k >= 0 {
                coeff.pow(k as u32)
            } else {
                if !coeff.magnitude().is_one() {
                    return Err(PolyError::DivisionByZero(var.to_string()));
                }
                coeff.pow((-k) as u32) // ±1 is its own inverse
            }
        } else {
            // Half power of the coefficient: only 1 is exact here.
            if !coeff.is_one() {
                return Err(PolyError::NotASquare(var.to_string()));
            }
            BigInt::one()
        };
        let names: Vec<&str> = exps.iter().map(|(v, _)| v.as_str()).collect();
        let doubled: Vec<i64> = exps.iter().map(|(_, e)| *e).collect();
        Ok(HalfPoly::from_doubled_monomial(&names, &doubled, c))
    }

    /// Simultaneous substitution. Unbound variables stay themselves. A
    /// binding must be a single monomial when the variable occurs with a
    /// half-integer or negative exponent.
    pub fn substitute(&self, bindings: &[(&str, HalfPoly)]) -> Result<HalfPoly, PolyError> {
        let find = |v: &str| bindings.iter().find(|(name, _)| *name == v).map(|(_, p)| p);
        let mut acc = HalfPoly::zero();
        for (exps, coeff) in &self.terms {
            let mut term = HalfPoly::constant(coeff.clone());
            for (v, &d) in self.vars.iter().zip(exps) {
                if d == 0 {
                    continue;
                }
                let factor = match find(v) {
                    None => {
                        HalfPoly::from_doubled_monomial(&[v], &[d], BigInt::one())
                    }
                    Some(b) => {
                        if let Some(m) = b.as_monomial() {
                            Self::monomial_pow_doubled(v, &m, d)?
                        } else if d < 0 {
                            return Err(PolyError::NegativePower(v.to_string()));
                        } else if d % 2 != 0 {
                            return Err(PolyError::HalfPower(v.to_string()));
                        } else {
                            b.pow((d / 2) as u32)
                        }
                    }
                };
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point. Variables appearing with a
    /// half-integer exponent must receive a nonnegative perfect square.
    pub fn eval_rational(&self, point: &[(&str, BigRational)]) -> Result<BigRational, PolyError> {
        let mut acc = BigRational::zero();
        for (exps, coeff) in &self.terms {
            let mut val = BigRational::from_integer(coeff.clone());
            for (v, &d) in self.vars.iter().zip(exps) {
                if d == 0 {
                    continue;
                }
                let x = point
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, x)| x.clone())
                    .unwrap_or_else(|| panic!("no value supplied for variable `{v}`"));
                let base = if d % 2 == 0 {
                    x
                } else {
                    if x.is_negative() {
                        return Err(PolyError::NegativeBase(v.to_string()));
                    }
                    exact_sqrt(&x).ok_or_else(|| PolyError::NotASquare(v.to_string()))?
                };
                let e = if d % 2 == 0 { d / 2 } else { d };
                if e < 0 && base.is_zero() {
                    return Err(PolyError::DivisionByZero(v.to_string()));
                }
                let mut f = BigRational::one();
                for _ in 0..e.unsigned_abs() {
                    f *= &base;
                }
                if e < 0 {
                    f = f.recip();
                }
                val *= f;
            }
            acc += val;
        }
        Ok(acc)
    }

    /// Canonical text form; inverse of [`crate::io::parse_poly`].
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // Descending lexicographic order on exponent tuples.
        let mut out = String::new();
        for (i, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = coeff.magnitude();
            let mut factors: Vec<String> = Vec::new();
            for (v, &d) in self.vars.iter().zip(exps) {
                match d {
                    0 => {}
                    2 => factors.push(v.clone()),
                    d if d % 2 == 0 && d > 0 => factors.push(format!("{v}^{}", d / 2)),
                    d if d % 2 == 0 => factors.push(format!("{v}^({})", d / 2)),
                    d => factors.push(format!("{v}^({d}/2)")),
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for HalfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Exact square root of a nonnegative rational, if one exists.
fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    if &(&num * &num) == x.numer() && &(&den * &den) == x.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> HalfPoly {
        HalfPoly::var(name)
    }

    #[test]
    fn add_distinct_variables() {
        let p = v("x").add(&v("y"));
        assert_eq!(p.canonical_string(), "x + y");
    }

    #[test]
    fn half_exponents_multiply_to_whole() {
        let h = HalfPoly::monomial(&["x"], &[(1, 2)], 1);
        assert_eq!(h.mul(&h), v("x"));
    }

    #[test]
    fn binomial_square() {
        let p = HalfPoly::one().add(&v("y"));
        assert_eq!(p.mul(&p).canonical_string(), "y^2 + 2*y + 1");
    }

    #[test]
    fn substitute_collapse() {
        let p = v("w").add(&v("x"));
        let q = p.substitute(&[("w", v("x"))]).unwrap();
        assert_eq!(q.canonical_string(), "2*x");
    }

    #[test]
    fn substitute_half_power_of_square() {
        let p = HalfPoly::monomial(&["x"], &[(1, 2)], 1);
        let q = p.substitute(&[("x", v("x").mul(&v("x")))]).unwrap();
        assert_eq!(q, v("x"));
    }

    #[test]
    fn substitute_swap_is_simultaneous() {
        let p = HalfPoly::monomial(&["x"], &[(1, 2)], 1)
            .add(&HalfPoly::monomial(&["z"], &[(1, 2)], 1));
        let q = p.substitute(&[("x", v("z")), ("z", v("x"))]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn substitute_rejects_quarter_exponent() {
        let p = HalfPoly::monomial(&["x"], &[(1, 2)], 1);
        let err = p.substitute(&[("x", HalfPoly::monomial(&["z"], &[(1, 2)], 1))]);
        assert_eq!(err, Err(PolyError::QuarterExponent("x".into())));
    }

    #[test]
    fn eval_simple() {
        let p = v("x").add(&HalfPoly::one());
        let r = p.eval_rational(&[("x", BigRational::from_integer(2.into()))]).unwrap();
        assert_eq!(r, BigRational::from_integer(3.into()));
    }

    #[test]
    fn eval_half_exponent_square() {
        let p = HalfPoly::monomial(&["x"], &[(1, 2)], 1);
        let r = p.eval_rational(&[("x", BigRational::from_integer(4.into()))]).unwrap();
        assert_eq!(r, BigRational::from_integer(2.into()));
    }

    #[test]
    fn eval_half_exponent_negative_base_errors() {
        let p = HalfPoly::monomial(&["x"], &[(1, 2)], 1);
        let r = p.eval_rational(&[("x", BigRational::from_integer((-1).into()))]);
        assert_eq!(r, Err(PolyError::NegativeBase("x".into())));
    }

    #[test]
    fn laurent_monomials() {
        let p = HalfPoly::monomial(&["b"], &[(-1, 2)], 1);
        let q = HalfPoly::monomial(&["b"], &[(3, 2)], 2);
        assert_eq!(p.mul(&q), HalfPoly::monomial(&["b"], &[(1, 1)], 2));
    }

    #[test]
    fn canonical_order_is_descending() {
        let p = v("y").add(&v("x")).add(&HalfPoly::one());
        assert_eq!(p.canonical_string(), "x + y + 1");
        let h = HalfPoly::monomial(&["x"], &[(1, 2)], 1)
            .add(&HalfPoly::monomial(&["y"], &[(1, 2)], 1));
        assert_eq!(h.canonical_string(), "x^(1/2) + y^(1/2)");
    }

    #[test]
    fn unused_variables_are_pruned() {
        let p = v("x").add(&v("y")).sub(&v("y"));
        assert_eq!(p, v("x"));
        assert_eq!(p.variables(), ["x".to_string()]);
    }
}
