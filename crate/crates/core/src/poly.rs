//! Sparse polynomials with arbitrary-precision integer coefficients in the
//! variables `x_1, …, x_n, y_1, …, y_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of length `2n`: `x` exponents followed by `y` exponents.
///
/// Ordered by total degree, then lexicographically, so that the largest
/// monomial in graded lex order (`x_1 > x_2 > ⋯ > y_n`) sorts last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vars {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero(n: usize) -> Self {
        SparsePoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; 2 * n], BigInt::one())
    }

    pub fn monomial(n: usize, exps: Vec<u16>, coef: BigInt) -> Self {
        assert_eq!(exps.len(), 2 * n, "exponent vector must have length 2n");
        let mut p = Self::zero(n);
        p.add_term(Monomial(exps), coef);
        p
    }

    /// `x^wt` or `y^wt` for a weight with nonnegative coordinates.
    pub fn from_weight(n: usize, vars: Vars, wt: &[i64]) -> Self {
        Self::monomial(n, Self::weight_exponents(n, vars, wt), BigInt::one())
    }

    fn weight_exponents(n: usize, vars: Vars, wt: &[i64]) -> Vec<u16> {
        let mut exps = vec![0u16; 2 * n];
        let offset = match vars {
            Vars::X => 0,
            Vars::Y => n,
        };
        for (k, &c) in wt.iter().enumerate() {
            exps[offset + k] = u16::try_from(c).expect("polynomial weights are nonnegative");
        }
        exps
    }

    /// The variable `x_i` or `y_i` (1-based).
    pub fn var(n: usize, vars: Vars, i: usize) -> Self {
        let mut wt = vec![0; n];
        wt[i - 1] = 1;
        Self::from_weight(n, vars, &wt)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u16]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        SparsePoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_component(&self, degree: u32) -> Self {
        SparsePoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product with every term of degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &SparsePoly, max_degree: u32) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > max_degree {
                continue;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > max_degree {
                    continue;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Relabels variables: variable `k` becomes variable `map[k]` (0-based,
    /// over all `2n` slots).
    pub fn relabel(&self, map: &[usize]) -> Self {
        assert_eq!(map.len(), 2 * self.n);
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; 2 * self.n];
            for (k, &e) in m.0.iter().enumerate() {
                exps[map[k]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// `x_i ↦ x_{n−i+1}`, `y` untouched.
    pub fn reverse_x(&self) -> Self {
        let n = self.n;
        let map: Vec<usize> = (0..n).map(|k| n - 1 - k).chain(n..2 * n).collect();
        self.relabel(&map)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        let n = self.n;
        let map: Vec<usize> = (n..2 * n).chain(0..n).collect();
        self.relabel(&map)
    }

    /// Substitutes `y_j := x_j`.
    pub fn specialize_y_to_x(&self) -> Self {
        let n = self.n;
        let map: Vec<usize> = (0..n).chain(0..n).collect();
        self.relabel(&map)
    }

    /// `s_i` acting on the `x` variables (swap `x_i`, `x_{i+1}`).
    pub fn swap_x(&self, i: usize) -> Self {
        let mut map: Vec<usize> = (0..2 * self.n).collect();
        map.swap(i - 1, i);
        self.relabel(&map)
    }

    /// Number of terms per total degree, ascending.
    pub fn terms_per_degree(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for m in self.terms.keys() {
            *out.entry(m.degree()).or_insert(0) += 1;
        }
        out
    }

    /// Exact division. The remainder of multivariate division by a single
    /// divisor in lex order vanishes iff the divisor divides `self`.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        assert_eq!(self.n, divisor.n);
        let lex_lead = |p: &BTreeMap<Vec<u16>, BigInt>| p.iter().next_back().map(|(m, c)| (m.clone(), c.clone()));
        let dividend_lex: BTreeMap<Vec<u16>, BigInt> =
            self.terms.iter().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        let divisor_lex: BTreeMap<Vec<u16>, BigInt> =
            divisor.terms.iter().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        let (dm, dc) = lex_lead(&divisor_lex).ok_or_else(|| Error::Internal("division by zero".into()))?;
        let mut rest = dividend_lex;
        let mut quotient = Self::zero(self.n);
        while let Some((m, c)) = lex_lead(&rest) {
            let divisible = m.iter().zip(&dm).all(|(a, b)| a >= b) && (&c % &dc).is_zero();
            if !divisible {
                return Err(Error::Internal(format!(
                    "nonzero remainder dividing {self} by {divisor}"
                )));
            }
            let qm: Vec<u16> = m.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = &c / &dc;
            for (tm, tc) in &divisor_lex {
                let key: Vec<u16> = tm.iter().zip(&qm).map(|(a, b)| a + b).collect();
                let e = rest.entry(key.clone()).or_insert_with(BigInt::zero);
                *e -= tc * &qc;
                if e.is_zero() {
                    rest.remove(&key);
                }
            }
            quotient.add_term(Monomial(qm), qc);
        }
        Ok(quotient)
    }

    /// JSON list of `{"exp": [...], "coef": k}` in descending graded lex order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| {
                    let coef = match c.to_i64() {
                        Some(v) => serde_json::Value::from(v),
                        None => serde_json::Value::from(c.to_string()),
                    };
                    serde_json::json!({ "exp": m.0, "coef": coef })
                })
                .collect(),
        )
    }

    pub fn from_json(n: usize, value: &serde_json::Value) -> Result<Self> {
        let bad = |d: &str| Error::Parse {
            what: "polynomial JSON",
            detail: d.to_string(),
        };
        let mut p = Self::zero(n);
        for term in value.as_array().ok_or_else(|| bad("expected a list"))? {
            let exps: Vec<u16> = serde_json::from_value(term["exp"].clone()).map_err(|e| bad(&e.to_string()))?;
            if exps.len() != 2 * n {
                return Err(bad("exponent length"));
            }
            let coef: BigInt = match &term["coef"] {
                serde_json::Value::Number(num) => num
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("coefficient"))?,
                serde_json::Value::String(s) => s.parse().map_err(|_| bad("coefficient"))?,
                _ => return Err(bad("coefficient")),
            };
            p.add_term(Monomial(exps), coef);
        }
        Ok(p)
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let n = self.n;
        let factors: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let name = if k < n { format!("x{}", k + 1) } else { format!("y{}", k - n + 1) };
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        factors.join("*")
    }
}

impl fmt::Display for SparsePoly {
    /// Descending graded lex order, e.g. `x1^2 + x1*x2 + x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.format_monomial(m);
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl std::iter::Sum for SparsePoly {
    fn sum<I: Iterator<Item = SparsePoly>>(mut iter: I) -> SparsePoly {
        let first = iter.next().expect("sum of an empty polynomial iterator has no rank");
        iter.fold(first, |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(n, Vars::X, i)
    }

    #[test]
    fn display_order() {
        let p = &(&(&x(2, 1) * &x(2, 1)) + &(&x(2, 1) * &x(2, 2))) + &(&x(2, 2) * &x(2, 2));
        assert_eq!(p.to_string(), "x1^2 + x1*x2 + x2^2");
        let q = &(&SparsePoly::one(2) - &SparsePoly::var(2, Vars::Y, 1)) - &SparsePoly::var(2, Vars::Y, 1);
        assert_eq!(q.to_string(), "-2*y1 + 1");
        assert_eq!(SparsePoly::zero(3).to_string(), "0");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &x(2, 1) - &x(2, 1);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let d = &x(n, 1) - &x(n, 2);
        let f = &(&x(n, 1) * &x(n, 1)) - &(&x(n, 2) * &x(n, 2));
        assert_eq!(f.div_exact(&d).unwrap(), &x(n, 1) + &x(n, 2));
        assert!(x(n, 1).div_exact(&d).is_err());
    }

    #[test]
    fn truncated_product() {
        let n = 1;
        let geo = &SparsePoly::one(n) + &x(n, 1);
        let p = geo.mul_truncated(&geo, 1);
        assert_eq!(p.to_string(), "2*x1 + 1");
    }

    #[test]
    fn json_round_trip() {
        let p = &(&x(2, 1) * &SparsePoly::var(2, Vars::Y, 2)) + &SparsePoly::one(2);
        let j = p.to_json();
        assert_eq!(j.to_string(), r#"[{"exp":[1,0,0,1],"coef":1},{"exp":[0,0,0,0],"coef":1}]"#);
        assert_eq!(SparsePoly::from_json(2, &j).unwrap(), p);
    }

    #[test]
    fn substitutions() {
        let p = &x(3, 1) * &SparsePoly::var(3, Vars::Y, 2);
        assert_eq!(p.reverse_x().to_string(), "x3*y2");
        assert_eq!(p.swap_xy().to_string(), "x2*y1");
        assert_eq!(p.specialize_y_to_x().to_string(), "x1*x2");
        assert_eq!(p.swap_x(1).to_string(), "x2*y2");
    }
}
