//! Polynomial maps and their composition.

use std::collections::HashMap;
use std::ops::{Add, Sub};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::polynomial::{Limits, Polynomial};
use crate::rat_matrix::RatMatrix;
use crate::rational::Rational;

/// `F = (F_1, ..., F_m)` with every `F_i` a polynomial in `domain_dim`
/// variables. The codomain dimension is `m`, which need not equal the
/// domain dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    domain_dim: usize,
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(domain_dim: usize, components: Vec<Polynomial>) -> Result<Self> {
        if let Some(bad) = components.iter().find(|p| p.nvars() != domain_dim) {
            return Err(Error::dims(domain_dim, bad.nvars()));
        }
        Ok(PolyMap { domain_dim, components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap { domain_dim: n, components: (0..n).map(|i| Polynomial::var(n, i)).collect() }
    }

    pub fn zero(domain_dim: usize, codomain_dim: usize) -> Self {
        PolyMap { domain_dim, components: vec![Polynomial::zero(domain_dim); codomain_dim] }
    }

    /// The linear map `x -> M x`.
    pub fn linear(m: &RatMatrix) -> Self {
        let components = (0..m.rows()).map(|i| Polynomial::linear(m.row(i))).collect();
        PolyMap { domain_dim: m.cols(), components }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_square(&self) -> bool {
        self.domain_dim == self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.domain_dim)
    }

    /// Maximum component degree; `None` when every component is zero.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Polynomial::degree).max()
    }

    /// Minimum component order over the nonzero components.
    pub fn order(&self) -> Option<u32> {
        self.components.iter().filter_map(|p| p.order().ok()).min()
    }

    pub fn max_terms(&self) -> usize {
        self.components.iter().map(Polynomial::num_terms).max().unwrap_or(0)
    }

    pub fn total_terms(&self) -> usize {
        self.components.iter().map(Polynomial::num_terms).sum()
    }

    pub fn has_constant_terms(&self) -> bool {
        self.components.iter().any(|p| !p.constant_term().is_zero())
    }

    pub fn checked_add(&self, other: &PolyMap) -> Result<PolyMap> {
        self.zip_with(other, Polynomial::checked_add)
    }

    pub fn checked_sub(&self, other: &PolyMap) -> Result<PolyMap> {
        self.zip_with(other, Polynomial::checked_sub)
    }

    fn zip_with(
        &self,
        other: &PolyMap,
        op: impl Fn(&Polynomial, &Polynomial) -> Result<Polynomial>,
    ) -> Result<PolyMap> {
        if self.domain_dim != other.domain_dim {
            return Err(Error::dims(self.domain_dim, other.domain_dim));
        }
        if self.codomain_dim() != other.codomain_dim() {
            return Err(Error::dims(self.codomain_dim(), other.codomain_dim()));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| op(a, b))
            .collect::<Result<_>>()?;
        Ok(PolyMap { domain_dim: self.domain_dim, components })
    }

    pub fn scale(&self, c: &Rational) -> PolyMap {
        PolyMap {
            domain_dim: self.domain_dim,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// `F - Id` for a square map.
    pub fn minus_identity(&self) -> Result<PolyMap> {
        if !self.is_square() {
            return Err(Error::dims(self.domain_dim, self.codomain_dim()));
        }
        self.checked_sub(&Self::identity(self.domain_dim))
    }

    /// Left multiplication by a constant matrix: `x -> M F(x)`.
    pub fn left_mul(&self, m: &RatMatrix) -> Result<PolyMap> {
        if m.cols() != self.codomain_dim() {
            return Err(Error::dims(self.codomain_dim(), m.cols()));
        }
        let components = (0..m.rows())
            .map(|i| {
                let terms = m.row(i).iter().zip(&self.components).flat_map(|(c, p)| {
                    p.terms().iter().map(move |(mono, a)| (mono.clone(), a * c))
                });
                Polynomial::from_terms(self.domain_dim, terms)
            })
            .collect();
        Ok(PolyMap { domain_dim: self.domain_dim, components })
    }

    /// Right composition with a linear map: `x -> F(M x)`.
    pub fn right_mul(&self, m: &RatMatrix, limits: &Limits) -> Result<PolyMap> {
        compose(self, &PolyMap::linear(m), limits)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|p| p.evaluate(point)).collect()
    }
}

impl std::fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.components.iter().map(|p| p.to_string())).finish()
    }
}

impl<'b> Add<&'b PolyMap> for &PolyMap {
    type Output = PolyMap;
    fn add(self, rhs: &'b PolyMap) -> PolyMap {
        self.checked_add(rhs).expect("polynomial map shape mismatch")
    }
}

impl<'b> Sub<&'b PolyMap> for &PolyMap {
    type Output = PolyMap;
    fn sub(self, rhs: &'b PolyMap) -> PolyMap {
        self.checked_sub(rhs).expect("polynomial map shape mismatch")
    }
}

/// Evaluates polynomials at a fixed map `g`.
///
/// A polynomial is split by the exponent of its first variable and the
/// resulting coefficient polynomials are substituted recursively, then
/// recombined by Horner's rule in `g_1`. Gaps between consecutive exponents
/// use memoized powers of the `g` components.
pub struct Substituter<'a> {
    g: &'a PolyMap,
    limits: Limits,
    powers: HashMap<(usize, u32), Polynomial>,
}

impl<'a> Substituter<'a> {
    pub fn new(g: &'a PolyMap, limits: Limits) -> Result<Self> {
        if limits.truncate_above.is_some() && g.has_constant_terms() {
            return Err(Error::Invalid(
                "truncated substitution requires a map without constant terms".into(),
            ));
        }
        Ok(Substituter { g, limits, powers: HashMap::new() })
    }

    fn power(&mut self, var: usize, e: u32) -> Result<Polynomial> {
        if let Some(p) = self.powers.get(&(var, e)) {
            return Ok(p.clone());
        }
        let base = &self.g.components[var];
        // Build from the largest cached lower power when there is one.
        let lower = (1..e).rev().find(|k| self.powers.contains_key(&(var, *k)));
        let p = match lower {
            Some(k) => {
                let rest = self.power(var, e - k)?;
                self.powers[&(var, k)].mul_with(&rest, &self.limits)?
            }
            None => base.pow_with(e, &self.limits)?,
        };
        self.powers.insert((var, e), p.clone());
        Ok(p)
    }

    pub fn substitute(&mut self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.g.codomain_dim() {
            return Err(Error::dims(self.g.codomain_dim(), p.nvars()));
        }
        let terms: Vec<(&Monomial, &Rational)> = p.terms().iter().map(|(m, c)| (m, c)).collect();
        self.substitute_terms(&terms, 0)
    }

    fn substitute_terms(&mut self, terms: &[(&Monomial, &Rational)], var: usize) -> Result<Polynomial> {
        let n = self.g.domain_dim;
        if terms.is_empty() {
            return Ok(Polynomial::zero(n));
        }
        if var == self.g.codomain_dim() {
            let c: Rational = terms.iter().map(|(_, c)| (*c).clone()).sum();
            let out = Polynomial::constant(n, c);
            return Ok(match self.limits.truncate_above {
                Some(d) => out.truncate_above(d),
                None => out,
            });
        }
        let mut groups: Vec<(u32, Vec<(&Monomial, &Rational)>)> = Vec::new();
        {
            let mut by_exp: HashMap<u32, Vec<(&Monomial, &Rational)>> = HashMap::new();
            for &(m, c) in terms {
                by_exp.entry(m.exponent(var)).or_default().push((m, c));
            }
            groups.extend(by_exp);
        }
        groups.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut acc: Option<Polynomial> = None;
        let mut prev_exp = 0;
        for (e, group) in &groups {
            let inner = self.substitute_terms(group, var + 1)?;
            acc = Some(match acc {
                None => inner,
                Some(a) => {
                    let gap = self.power(var, prev_exp - e)?;
                    let shifted = a.mul_with(&gap, &self.limits)?;
                    let sum = shifted.checked_add(&inner)?;
                    self.limits.check(sum.num_terms())?;
                    sum
                }
            });
            prev_exp = *e;
        }
        let acc = acc.expect("nonempty groups");
        if prev_exp == 0 {
            Ok(acc)
        } else {
            let tail = self.power(var, prev_exp)?;
            acc.mul_with(&tail, &self.limits)
        }
    }
}

/// `p(g_1, ..., g_m)` as a polynomial in the domain variables of `g`.
pub fn substitute(p: &Polynomial, g: &PolyMap, limits: &Limits) -> Result<Polynomial> {
    Substituter::new(g, *limits)?.substitute(p)
}

/// `f ∘ g`, componentwise `substitute(f_i, g)`.
///
/// Components are substituted in parallel, each with its own power cache;
/// the result does not depend on scheduling.
pub fn compose(f: &PolyMap, g: &PolyMap, limits: &Limits) -> Result<PolyMap> {
    if f.domain_dim != g.codomain_dim() {
        return Err(Error::dims(f.domain_dim, g.codomain_dim()));
    }
    Substituter::new(g, *limits)?;
    let components = f
        .components
        .par_iter()
        .map(|p| Substituter::new(g, *limits)?.substitute(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMap { domain_dim: g.domain_dim, components })
}

/// `g∘g∘...∘g` (`k` times); `k = 0` gives the identity.
pub fn iterate(g: &PolyMap, k: usize, limits: &Limits) -> Result<PolyMap> {
    if !g.is_square() {
        return Err(Error::dims(g.domain_dim, g.codomain_dim()));
    }
    let mut acc = PolyMap::identity(g.domain_dim);
    for _ in 0..k {
        acc = compose(&acc, g, limits)?;
    }
    Ok(acc)
}
