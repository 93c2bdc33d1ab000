//! Multilinear polynomials over bit variables `q₀…q₆₃`.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A product of distinct variables, as a bitmask (`x² = x` is implicit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        assert!(i < 64, "variable index {i} out of range");
        Monomial(1 << i)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Variable indices in ascending order.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i
            })
        })
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// 1 iff every variable in the monomial is set in `x`.
    pub fn eval(self, x: u64) -> bool {
        x & self.0 == self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let names: Vec<String> = self.vars().map(|i| format!("q{i}")).collect();
        f.write_str(&names.join("·"))
    }
}

/// Largest variable count accepted by the truth-table routines.
pub const DENSE_MAX_VARS: usize = 24;

/// `Σ c_m · m` with zero coefficients pruned.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, f64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(i), 1.0);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, f64)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: f64) {
        let e = self.terms.entry(m).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, f64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: Monomial) -> f64 {
        self.terms.get(&m).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Union of variables appearing in any term.
    pub fn support(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m.0)
    }

    /// Number of variables needed to index the support, `1 + max index`.
    pub fn num_vars(&self) -> usize {
        64 - self.support().leading_zeros() as usize
    }

    /// Value at the assignment whose bit `i` is `q_i`.
    pub fn eval(&self, x: u64) -> f64 {
        self.terms.iter().filter(|(m, _)| m.eval(x)).map(|(_, c)| c).sum()
    }

    /// Monomial counts by degree, index = degree.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.degree() + 1];
        self.terms.keys().for_each(|m| h[m.degree()] += 1);
        h
    }

    /// The unique multilinear polynomial agreeing with `f` on `{0,1}^n`.
    pub fn from_fn(n: usize, f: impl Fn(u64) -> f64) -> Result<Self> {
        check_dense(n)?;
        let mut table: Vec<f64> = (0..1u64 << n).map(f).collect();
        mobius(&mut table);
        Ok(Polynomial::from_dense(&table))
    }

    /// Values on all of `{0,1}^n`.
    pub fn truth_table(&self, n: usize) -> Result<Vec<f64>> {
        check_dense(n)?;
        if self.support() >> n != 0 {
            return Err(Error::input(format!("polynomial uses variables beyond q{}", n - 1)));
        }
        let mut table = vec![0.0; 1 << n];
        for (m, c) in self.terms() {
            table[m.0 as usize] += c;
        }
        zeta(&mut table);
        Ok(table)
    }

    fn from_dense(coeffs: &[f64]) -> Self {
        Polynomial::from_terms(coeffs.iter().enumerate().filter(|(_, &c)| c != 0.0).map(|(m, &c)| (Monomial(m as u64), c)))
    }

    /// Product of many factors, computed pointwise on the truth table over `n`
    /// variables. Cheaper than repeated sparse products when intermediates fill up.
    pub fn product(factors: &[Polynomial], n: usize) -> Result<Self> {
        let mut acc = vec![1.0; 1usize << n];
        check_dense(n)?;
        for f in factors {
            let t = f.truth_table(n)?;
            acc.iter_mut().zip(t).for_each(|(a, v)| *a *= v);
        }
        mobius(&mut acc);
        Ok(Polynomial::from_dense(&acc))
    }

    pub fn scale(&self, k: f64) -> Self {
        Polynomial::from_terms(self.terms().map(|(m, c)| (m, c * k)))
    }

    /// Restriction to terms of the given degrees.
    pub fn filter_degree(&self, keep: impl Fn(usize) -> bool) -> Self {
        Polynomial { terms: self.terms.iter().filter(|(m, _)| keep(m.degree())).map(|(&m, &c)| (m, c)).collect() }
    }
}

fn check_dense(n: usize) -> Result<()> {
    if n > DENSE_MAX_VARS {
        return Err(Error::Capacity { what: "truth-table variables", requested: n, limit: DENSE_MAX_VARS });
    }
    Ok(())
}

/// Coefficients to values: `v[x] = Σ_{m ⊆ x} c[m]`.
fn zeta(t: &mut [f64]) {
    let mut h = 1;
    while h < t.len() {
        for x in 0..t.len() {
            if x & h != 0 {
                t[x] += t[x ^ h];
            }
        }
        h <<= 1;
    }
}

/// Values to coefficients, inverse of [`zeta`].
fn mobius(t: &mut [f64]) {
    let mut h = 1;
    while h < t.len() {
        for x in 0..t.len() {
            if x & h != 0 {
                t[x] -= t[x ^ h];
            }
        }
        h <<= 1;
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in rhs.terms() {
            self.add_term(m, c);
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = std::collections::HashMap::with_capacity(self.len() * rhs.len());
        for (a, ca) in self.terms() {
            for (b, cb) in rhs.terms() {
                *out.entry(Monomial(a.0 | b.0)).or_insert(0.0) += ca * cb;
            }
        }
        Polynomial::from_terms(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let sign = match (k, c < 0.0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let a = c.abs();
            match m.0 {
                0 => write!(f, "{sign}{a}")?,
                _ if a == 1.0 => write!(f, "{sign}{m}")?,
                _ => write!(f, "{sign}{a}·{m}")?,
            }
        }
        Ok(())
    }
}

/// A bit operand: a variable or a fixed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitRef {
    Var(usize),
    Const(bool),
}

impl BitRef {
    fn poly(self) -> Polynomial {
        match self {
            BitRef::Var(i) => Polynomial::var(i),
            BitRef::Const(b) => Polynomial::constant(b as u8 as f64),
        }
    }
}

/// `δ_{a,b} = (a + b − 1)²`, reduced with `x² = x` to `1 − a − b + 2ab`.
pub fn delta_bit_poly(a: BitRef, b: BitRef) -> Polynomial {
    let s = a.poly() + b.poly() - Polynomial::constant(1.0);
    &s * &s
}

/// `δ_{s,k}` for the field `s` stored little-endian in `vars`: the product of the
/// per-bit deltas against the bits of `k`.
pub fn delta_int_poly(vars: &[usize], k: u64) -> Result<Polynomial> {
    if vars.len() < 64 && k >> vars.len() != 0 {
        return Err(Error::input(format!("{k} does not fit in {} bits", vars.len())));
    }
    Ok(vars.iter().enumerate().fold(Polynomial::constant(1.0), |acc, (j, &v)| {
        &acc * &delta_bit_poly(BitRef::Var(v), BitRef::Const(k >> j & 1 == 1))
    }))
}

/// `δ_{s,t}` for two fields of equal width: `Π_j δ(s_j, t_j)`.
pub fn delta_fields_poly(s: &[usize], t: &[usize]) -> Polynomial {
    assert_eq!(s.len(), t.len(), "fields differ in width");
    s.iter().zip(t).fold(Polynomial::constant(1.0), |acc, (&a, &b)| &acc * &delta_bit_poly(BitRef::Var(a), BitRef::Var(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_delta_expansion() {
        let d = delta_bit_poly(BitRef::Var(0), BitRef::Var(1));
        assert_eq!(d.len(), 4);
        assert_eq!(d.coefficient(Monomial::ONE), 1.0);
        assert_eq!(d.coefficient(Monomial::var(0)), -1.0);
        assert_eq!(d.coefficient(Monomial::var(1)), -1.0);
        assert_eq!(d.coefficient(Monomial(0b11)), 2.0);
        assert_eq!(d.eval(0b11), 1.0);
        assert_eq!(d.eval(0b10), 0.0);
        assert_eq!(d.eval(0b01), 0.0);
        assert_eq!(d.eval(0b00), 1.0);
    }

    #[test]
    fn int_delta_examples() {
        let d = delta_int_poly(&[0, 1], 3).unwrap();
        assert_eq!(d.eval(0b11), 1.0);
        assert_eq!(d.eval(0b10), 0.0);
        let d3 = delta_int_poly(&[0, 1, 2], 7).unwrap();
        assert_eq!(d3.coefficient(Monomial(0b111)), 1.0);
        assert_eq!(d3.degree(), 3);
        for k in 0..8 {
            let d = delta_int_poly(&[0, 1, 2], k).unwrap();
            assert!((0..8).all(|x| d.eval(x) == (x == k) as u8 as f64));
        }
        assert!(delta_int_poly(&[0, 1], 4).is_err());
    }

    #[test]
    fn mobius_round_trip() {
        let f = |x: u64| (x.count_ones() as f64 - 1.5).abs() * if x & 4 != 0 { 3.0 } else { 1.0 };
        let p = Polynomial::from_fn(5, f).unwrap();
        assert!((0..32).all(|x| p.eval(x) == f(x)));
        assert_eq!(p.truth_table(5).unwrap(), (0..32).map(f).collect::<Vec<_>>());
    }

    #[test]
    fn dense_product_matches_sparse() {
        let a = delta_bit_poly(BitRef::Var(0), BitRef::Var(2));
        let b = Polynomial::var(1) + Polynomial::constant(2.0);
        let c = delta_int_poly(&[1, 3], 2).unwrap();
        let sparse = &(&a * &b) * &c;
        assert_eq!(Polynomial::product(&[a, b, c], 4).unwrap(), sparse);
    }

    #[test]
    fn display() {
        let d = delta_bit_poly(BitRef::Var(0), BitRef::Var(1));
        assert_eq!(d.to_string(), "1 - q0 - q1 + 2·q0·q1");
    }
}
