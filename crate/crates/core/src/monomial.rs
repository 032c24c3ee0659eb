use std::cmp::Ordering;

use smallvec::SmallVec;

type Exps = SmallVec<[u32; 8]>;

/// Exponent vector of a monomial in a fixed ambient variable count.
///
/// Ordering is graded lexicographic: higher total degree first compares
/// greater, ties broken lexicographically with `x1 > x2 > ...`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps: Exps::from_vec(exps), degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps: Exps = SmallVec::from_elem(0, nvars);
        exps[index] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exps = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if self.degree < other.degree {
            return None;
        }
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    /// Same monomial with the exponent of `index` replaced.
    pub fn with_exponent(&self, index: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        let old = exps[index];
        exps[index] = e;
        Monomial { exps, degree: self.degree - old + e }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{:?}", &self.exps[..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x1 = Monomial::new(vec![1, 0]);
        let x2 = Monomial::new(vec![0, 1]);
        let x2sq = Monomial::new(vec![0, 2]);
        let x1x2 = Monomial::new(vec![1, 1]);
        assert!(x1 > x2);
        assert!(x2sq > x1);
        assert!(x1x2 > x2sq);
        assert!(Monomial::one(2) < x2);
    }

    #[test]
    fn divide() {
        let a = Monomial::new(vec![2, 1, 0]);
        let b = Monomial::new(vec![1, 1, 0]);
        assert_eq!(a.div(&b), Some(Monomial::new(vec![1, 0, 0])));
        assert_eq!(b.div(&a), None);
        assert_eq!(a.with_exponent(2, 3).degree(), 6);
    }
}
