//! Exact coefficient arithmetic.
//!
//! Everything downstream is linear algebra over one of two rings:
//! [`LaurentQ`], the Laurent polynomials `Z[q, q^-1]` that quantum
//! coefficients live in, and [`PolyZ`], multivariate polynomials in
//! `z_1..z_d` with rational coefficients used by the exchange-equation
//! checks. Both are sparse maps keyed by exponent, kept in `BTreeMap`s so
//! iteration (and therefore printing) is canonical. No floating point
//! anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::CoeffError;

/// A Laurent polynomial in the quantum parameter `q`, with arbitrary
/// precision integer coefficients.
///
/// Invariant: no explicit zero coefficients are stored, so `terms.is_empty()`
/// is the unique representation of zero and structural equality is ring
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentQ {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        LaurentQ::monomial(1, 0)
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentQ { terms }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        LaurentQ::monomial(1, k)
    }

    pub fn int(c: impl Into<BigInt>) -> Self {
        LaurentQ::monomial(c, 0)
    }

    /// The quantum integer `[m] = (q^m - q^-m)/(q - q^-1)`, expanded so no
    /// division is ever performed: `q^(m-1) + q^(m-3) + ... + q^(1-m)`.
    pub fn q_int(m: i64) -> Self {
        if m == 0 {
            return LaurentQ::zero();
        }
        let (sign, m_abs) = if m > 0 { (1, m) } else { (-1, -m) };
        let mut out = LaurentQ::zero();
        let mut k = m_abs - 1;
        loop {
            out += LaurentQ::monomial(sign, k);
            if k == 1 - m_abs {
                break;
            }
            k -= 2;
        }
        out
    }

    /// Multiplicative inverse, defined exactly when this is a single term
    /// with coefficient ±1 (the units of the Laurent ring).
    pub fn monomial_inverse(&self) -> Option<LaurentQ> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&k, c) = self.terms.iter().next().unwrap();
        if c.is_one() || (-c).is_one() {
            Some(LaurentQ::monomial(c.clone(), -k))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Lowest exponent carrying a nonzero coefficient, if any.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `q^k` in place (exact, no rounding of any kind).
    pub fn shift(&self, k: i64) -> Self {
        LaurentQ {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Evaluate at `q = 1`; the classical degeneration of a coefficient.
    pub fn eval_q1(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluate at a rational `q`, used only by diagnostics.
    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in &self.terms {
            let mut p = BigRational::one();
            let a = if *k >= 0 { q.clone() } else { q.recip() };
            for _ in 0..k.unsigned_abs() {
                p *= &a;
            }
            acc += BigRational::from(c.clone()) * p;
        }
        acc
    }

    fn insert_add(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl AddAssign<&LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: &LaurentQ) {
        for (k, c) in &rhs.terms {
            self.insert_add(*k, c.clone());
        }
    }
}

impl AddAssign<LaurentQ> for LaurentQ {
    fn add_assign(&mut self, rhs: LaurentQ) {
        for (k, c) in rhs.terms {
            self.insert_add(k, c);
        }
    }
}

impl SubAssign<&LaurentQ> for LaurentQ {
    fn sub_assign(&mut self, rhs: &LaurentQ) {
        for (k, c) in &rhs.terms {
            self.insert_add(*k, -c.clone());
        }
    }
}

impl Add for LaurentQ {
    type Output = LaurentQ;
    fn add(mut self, rhs: LaurentQ) -> LaurentQ {
        self += rhs;
        self
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for LaurentQ {
    type Output = LaurentQ;
    fn sub(mut self, rhs: LaurentQ) -> LaurentQ {
        self -= &rhs;
        self
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        -self.clone()
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.insert_add(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: LaurentQ) -> LaurentQ {
        &self * &rhs
    }
}

impl fmt::Display for LaurentQ {
    /// Canonical form: terms by descending power of `q`, unit coefficients
    /// suppressed, e.g. `q^2 - 1`, `-q`, `2*q^-1 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one();
            match (*k, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{abs}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial in `z_1..z_nvars` with rational coefficients. Exponents may
/// be negative (Laurent monomials appear when clearing the overall `z` powers
/// of an expansion), but [`PolyZ::divide_exact`] internally shifts to honest
/// polynomials before dividing.
///
/// Same storage invariant as [`LaurentQ`]: zero coefficients are never kept.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyZ {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigRational>,
}

impl PolyZ {
    pub fn zero(nvars: usize) -> Self {
        PolyZ {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        PolyZ::monomial(nvars, vec![0; nvars], BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        PolyZ::monomial(nvars, vec![0; nvars], c)
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        PolyZ::constant(nvars, BigRational::from(BigInt::from(c)))
    }

    pub fn rational(nvars: usize, num: i64, den: i64) -> Self {
        PolyZ::constant(
            nvars,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn monomial(nvars: usize, exps: Vec<i32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        PolyZ { nvars, terms }
    }

    /// The variable `z_i` (1-based, matching tensor slot numbering).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!((1..=nvars).contains(&i));
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        PolyZ::monomial(nvars, exps, BigRational::one())
    }

    /// `z_i - z_j`.
    pub fn var_diff(nvars: usize, i: usize, j: usize) -> Self {
        &PolyZ::var(nvars, i) - &PolyZ::var(nvars, j)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return PolyZ::zero(self.nvars);
        }
        PolyZ {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Partial derivative with respect to `z_i` (1-based).
    pub fn derivative(&self, i: usize) -> Self {
        assert!((1..=self.nvars).contains(&i));
        let mut out = PolyZ::zero(self.nvars);
        for (exps, c) in &self.terms {
            let e = exps[i - 1];
            if e == 0 {
                continue;
            }
            let mut new = exps.clone();
            new[i - 1] = e - 1;
            out.insert_add(new, c * BigRational::from(BigInt::from(e)));
        }
        out
    }

    /// Exact division, failing with [`CoeffError::NotDivisible`] when the
    /// divisor does not divide. Standard single-divisor reduction in lex
    /// order; exponents are first shifted to be nonnegative so the reduction
    /// terminates even on Laurent input.
    pub fn divide_exact(&self, divisor: &PolyZ) -> Result<PolyZ, CoeffError> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return Err(CoeffError::NotDivisible);
        }
        if self.is_zero() {
            return Ok(PolyZ::zero(self.nvars));
        }
        let shift_of = |p: &PolyZ| -> Vec<i32> {
            let mut m = vec![0i32; p.nvars];
            for exps in p.terms.keys() {
                for (mi, e) in m.iter_mut().zip(exps) {
                    *mi = (*mi).min(*e);
                }
            }
            m
        };
        let sa = shift_of(self);
        let sb = shift_of(divisor);
        let num = self.shift_exps(&sa.iter().map(|e| -e).collect::<Vec<_>>());
        let den = divisor.shift_exps(&sb.iter().map(|e| -e).collect::<Vec<_>>());

        let (lead_exp, lead_coeff) = den.terms.iter().next_back().unwrap();
        let mut rem = num;
        let mut quo = PolyZ::zero(self.nvars);
        while let Some((rexp, rcoeff)) = rem.terms.iter().next_back() {
            let mut mexp = Vec::with_capacity(self.nvars);
            for (re, le) in rexp.iter().zip(lead_exp) {
                let d = re - le;
                if d < 0 {
                    return Err(CoeffError::NotDivisible);
                }
                mexp.push(d);
            }
            let mcoeff = rcoeff / lead_coeff;
            let mono = PolyZ::monomial(self.nvars, mexp, mcoeff);
            rem = &rem - &(&mono * &den);
            quo = &quo + &mono;
        }
        // Undo the normalizing shifts: self = q * divisor with
        // q = quo * z^(sa - sb).
        let back: Vec<i32> = sa.iter().zip(&sb).map(|(a, b)| a - b).collect();
        Ok(quo.shift_exps(&back))
    }

    fn shift_exps(&self, by: &[i32]) -> PolyZ {
        PolyZ {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(by).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn insert_add(&mut self, exps: Vec<i32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl Add for &PolyZ {
    type Output = PolyZ;
    fn add(self, rhs: &PolyZ) -> PolyZ {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PolyZ {
    type Output = PolyZ;
    fn sub(self, rhs: &PolyZ) -> PolyZ {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &PolyZ {
    type Output = PolyZ;
    fn mul(self, rhs: &PolyZ) -> PolyZ {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = PolyZ::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &PolyZ {
    type Output = PolyZ;
    fn neg(self) -> PolyZ {
        PolyZ {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for PolyZ {
    /// Terms in descending lex order of exponent vectors: `z1^2*z2 - 1/2*z3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("z{}", i + 1)),
                    _ => factors.push(format!("z{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A rational function whose denominator is constrained to a product of
/// differences `(z_i - z_j)`, `i < j`, with multiplicities. That is the only
/// denominator shape the exchange equation produces, and keeping the factored
/// form makes common denominators and divisibility checks cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct FactoredRational {
    num: PolyZ,
    /// `(i, j) -> multiplicity`, always with `i < j`.
    den: BTreeMap<(usize, usize), u32>,
}

impl FactoredRational {
    pub fn from_poly(num: PolyZ) -> Self {
        FactoredRational {
            num,
            den: BTreeMap::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        FactoredRational::from_poly(PolyZ::zero(nvars))
    }

    /// `num / (z_i - z_j)`. Order of `i, j` is normalized; a flipped pair
    /// negates the numerator.
    pub fn over_diff(num: PolyZ, i: usize, j: usize) -> Self {
        assert!(i != j);
        let (num, key) = if i < j {
            (num, (i, j))
        } else {
            (-&num, (j, i))
        };
        let mut den = BTreeMap::new();
        if !num.is_zero() {
            den.insert(key, 1);
        }
        FactoredRational { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &PolyZ {
        &self.num
    }

    pub fn denominator_poly(&self) -> PolyZ {
        let mut p = PolyZ::one(self.num.nvars());
        for ((i, j), m) in &self.den {
            let d = PolyZ::var_diff(self.num.nvars(), *i, *j);
            for _ in 0..*m {
                p = &p * &d;
            }
        }
        p
    }

    pub fn add(&self, rhs: &FactoredRational) -> FactoredRational {
        // Common denominator = factorwise max of multiplicities.
        let mut den: BTreeMap<(usize, usize), u32> = self.den.clone();
        for (k, m) in &rhs.den {
            let e = den.entry(*k).or_insert(0);
            *e = (*e).max(*m);
        }
        let lift = |fr: &FactoredRational| -> PolyZ {
            let mut p = fr.num.clone();
            for (k, m) in &den {
                let have = fr.den.get(k).copied().unwrap_or(0);
                let d = PolyZ::var_diff(p.nvars(), k.0, k.1);
                for _ in have..*m {
                    p = &p * &d;
                }
            }
            p
        };
        let num = &lift(self) + &lift(rhs);
        if num.is_zero() {
            return FactoredRational::zero(self.num.nvars());
        }
        FactoredRational { num, den }
    }

    pub fn scale(&self, c: &BigRational) -> FactoredRational {
        FactoredRational {
            num: self.num.scale(c),
            den: if self.num.scale(c).is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    /// Equality as rational functions: cross-multiplied polynomial equality.
    pub fn eq_cross(&self, rhs: &FactoredRational) -> bool {
        let lhs = &self.num * &rhs.denominator_poly();
        let rhs_p = &rhs.num * &self.denominator_poly();
        lhs == rhs_p
    }

    /// If the denominator actually divides the numerator, reduce to a
    /// polynomial.
    pub fn to_poly(&self) -> Result<PolyZ, CoeffError> {
        self.num.divide_exact(&self.denominator_poly())
    }
}

impl fmt::Debug for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.num)?;
        for ((i, j), m) in &self.den {
            write!(f, "/(z{i}-z{j})^{m}")?;
        }
        Ok(())
    }
}
