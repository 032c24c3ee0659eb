//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rational::Rational;

/// Default cap on the number of terms any single polynomial may hold.
pub const DEFAULT_TERM_BUDGET: usize = 10_000_000;

/// Resource limits threaded through the fallible arithmetic.
///
/// `truncate_above = Some(d)` makes every product and substitution drop
/// terms of total degree `> d`. This is arithmetic in `Q[x] / (x)^(d+1)`; it
/// is exact for the retained terms as long as substituted maps have no
/// constant terms (checked by [`crate::poly_map::substitute`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub term_budget: usize,
    pub truncate_above: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { term_budget: DEFAULT_TERM_BUDGET, truncate_above: None }
    }
}

impl Limits {
    pub fn with_budget(term_budget: usize) -> Self {
        Limits { term_budget, truncate_above: None }
    }

    pub fn unlimited() -> Self {
        Limits { term_budget: usize::MAX, truncate_above: None }
    }

    pub fn truncated(self, degree: u32) -> Self {
        Limits { truncate_above: Some(degree), ..self }
    }

    pub(crate) fn check(&self, terms: usize) -> Result<()> {
        if terms > self.term_budget {
            Err(Error::BudgetExceeded { terms, budget: self.term_budget })
        } else {
            Ok(())
        }
    }

    fn keeps(&self, degree: u32) -> bool {
        self.truncate_above.is_none_or(|d| degree <= d)
    }
}

/// A polynomial in `nvars` variables.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    /// The coordinate function `x_{index+1}` (indices are zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars}");
        Polynomial { nvars, terms: vec![(Monomial::var(nvars, index), Rational::one())] }
    }

    pub fn monomial(mono: Monomial, c: Rational) -> Self {
        let nvars = mono.nvars();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial { nvars, terms: vec![(mono, c)] }
    }

    /// Linear form `sum coeffs[j] * x_{j+1}`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(j, c)| (Monomial::var(n, j), c.clone())),
        )
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rational::zero) += &c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms }
    }

    /// Takes already sorted (descending), zero-free terms.
    fn from_sorted(nvars: usize, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Constant term (zero when absent).
    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(m, _)| mono.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Lowest total degree among the terms.
    pub fn order(&self) -> Result<u32> {
        self.terms.last().map(|(m, _)| m.degree()).ok_or(Error::ZeroPolynomial)
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exponent(index)).max()
    }

    pub fn depends_on(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(index) > 0)
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == degree).cloned().collect();
        Self::from_sorted(self.nvars, terms)
    }

    /// Sum of the terms of minimal total degree.
    pub fn lowest_component(&self) -> Result<Polynomial> {
        let d = self.order()?;
        Ok(self.homogeneous_component(d))
    }

    /// Drops every term of total degree above `degree`.
    pub fn truncate_above(&self, degree: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= degree).cloned().collect();
        Self::from_sorted(self.nvars, terms)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) => a.0.degree() == b.0.degree(),
            _ => true,
        }
    }

    fn same_arity(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::dims(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_arity(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_arity(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Less => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Self::from_sorted(self.nvars, out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Self::from_sorted(self.nvars, terms)
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // Multiplying by a monomial preserves grlex order.
        let terms = self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect();
        Self::from_sorted(self.nvars, terms)
    }

    /// Product under the given limits (term budget, optional truncation).
    pub fn mul_with(&self, other: &Polynomial, limits: &Limits) -> Result<Polynomial> {
        self.same_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() == 1 && limits.truncate_above.is_none() {
            let (m, c) = &small.terms[0];
            let out = large.mul_term(m, c);
            limits.check(out.num_terms())?;
            return Ok(out);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(large.terms.len().saturating_mul(2).min(1 << 20));
        for (ms, cs) in &small.terms {
            for (ml, cl) in &large.terms {
                if !limits.keeps(ms.degree() + ml.degree()) {
                    // `large` is sorted by descending degree, but grlex ties
                    // mean we cannot break early safely across equal degrees;
                    // skipping is cheap enough.
                    continue;
                }
                let m = ms.mul(ml);
                let c = cs * cl;
                match acc.get_mut(&m) {
                    Some(slot) => *slot += &c,
                    None => {
                        acc.insert(m, c);
                        if acc.len() > limits.term_budget {
                            return Err(Error::BudgetExceeded {
                                terms: acc.len(),
                                budget: limits.term_budget,
                            });
                        }
                    }
                }
            }
        }
        Ok(Self::from_map(self.nvars, acc))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.mul_with(other, &Limits::default())
    }

    /// `self^e` with `p^0 = 1`.
    pub fn pow_with(&self, e: u32, limits: &Limits) -> Result<Polynomial> {
        let mut acc = Self::one(self.nvars);
        if let Some(d) = limits.truncate_above {
            acc = acc.truncate_above(d);
        }
        for _ in 0..e {
            acc = acc.mul_with(self, limits)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        self.pow_with(e, &Limits::default())
    }

    /// Formal partial derivative with respect to `x_{index+1}`.
    pub fn partial(&self, index: usize) -> Result<Polynomial> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange { index, nvars: self.nvars });
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(index);
            (e > 0).then(|| (m.with_exponent(index, e - 1), c * &Rational::from(e as i64)))
        });
        // Lowering one exponent can reorder grlex ties, so re-canonicalize.
        Ok(Self::from_terms(self.nvars, terms))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::dims(self.nvars, point.len()));
        }
        let mut cache: Vec<Vec<Rational>> = point.iter().map(|v| vec![Rational::one(), v.clone()]).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &powers[1];
                    powers.push(next);
                }
                t *= &powers[e as usize];
            }
            total += &t;
        }
        Ok(total)
    }

    /// Exact quotient `self / divisor`; fails unless the division is exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.same_arity(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::NotDivisible)?.clone();
        let lc_inv = lc.recip().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            let qm = m.div(&lm).ok_or(Error::NotDivisible)?;
            let qc = &c * &lc_inv;
            rem = rem.merge(&divisor.mul_term(&qm, &qc), true);
            quotient.push((qm, qc));
        }
        // Quotient terms are produced in strictly descending order.
        Ok(Self::from_sorted(self.nvars, quotient))
    }

    /// Re-embeds into a larger variable set: `x_i` becomes `x_{map[i]}`.
    pub fn reindex(&self, nvars: usize, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.nvars {
            return Err(Error::dims(self.nvars, map.len()));
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= nvars) {
            return Err(Error::IndexOutOfRange { index: bad, nvars });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0; nvars];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::new(exps), c.clone())
        });
        Ok(Self::from_terms(nvars, terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::map_io::default_names(self.nvars);
        f.write_str(&crate::map_io::render_polynomial(self, &names))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

// Operator forms panic on arity mismatch and ignore the term budget; the
// engine uses the `checked_*` / `*_with` methods.

impl<'b> Add<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'b Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl<'b> Sub<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'b Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl<'b> Mul<&'b Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'b Polynomial) -> Polynomial {
        self.mul_with(rhs, &Limits::unlimited()).expect("polynomial arity mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from(-1))
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
