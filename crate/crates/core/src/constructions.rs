//! Builders and recognizers for the map families the engine is exercised on.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::jacobian::PolyMatrix;
use crate::monomial::Monomial;
use crate::poly_map::{compose, PolyMap};
use crate::polynomial::{Limits, Polynomial};
use crate::rat_matrix::RatMatrix;
use crate::rational::Rational;

/// Shape of the random perturbations used by [`make_triangular`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangularParams {
    /// Largest total degree of a term in `H_i`.
    pub max_degree: u32,
    /// Each `H_i` gets between zero and this many terms.
    pub max_terms: usize,
    /// Coefficients are nonzero integers in `[-coeff_range, coeff_range]`.
    pub coeff_range: i64,
}

impl Default for TriangularParams {
    fn default() -> Self {
        TriangularParams { max_degree: 3, max_terms: 2, coeff_range: 3 }
    }
}

fn nonzero_coeff(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    let range = range.max(1);
    loop {
        let c = rng.gen_range(-range..=range);
        if c != 0 {
            return Rational::from(c);
        }
    }
}

/// `F_i = X_i + H_i(X_{i+1}, ..., X_n)`, `F_n = X_n`, with random sparse `H_i`
/// of degree at most `params.max_degree` and no constant term.
pub fn make_triangular(n: usize, params: &TriangularParams, seed: u64) -> PolyMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut components = Vec::with_capacity(n);
    for i in 0..n {
        let mut h = Vec::new();
        let later = n - i - 1;
        if later > 0 && params.max_degree > 0 {
            for _ in 0..rng.gen_range(0..=params.max_terms) {
                let degree = rng.gen_range(1..=params.max_degree);
                let mut exps = vec![0u32; n];
                for _ in 0..degree {
                    exps[rng.gen_range(i + 1..n)] += 1;
                }
                h.push((Monomial::new(exps), nonzero_coeff(&mut rng, params.coeff_range)));
            }
        }
        let hi = Polynomial::from_terms(n, h);
        components.push(&Polynomial::var(n, i) + &hi);
    }
    PolyMap::new(n, components).expect("consistent dimensions")
}

/// True iff `F_i - X_i` only involves variables with index `> i` (so in
/// particular `F_n = X_n`).
pub fn is_triangular(f: &PolyMap) -> bool {
    if !f.is_square() {
        return false;
    }
    let n = f.domain_dim();
    f.components().iter().enumerate().all(|(i, fi)| {
        let h = fi - &Polynomial::var(n, i);
        (0..=i).all(|j| !h.depends_on(j))
    })
}

/// `T^{-1} ∘ F ∘ T` for a linear change of coordinates `T`.
pub fn conjugate(f: &PolyMap, t: &RatMatrix, limits: &Limits) -> Result<PolyMap> {
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    if !f.is_square() || f.domain_dim() != t.rows() {
        return Err(Error::dims(t.rows(), f.domain_dim()));
    }
    let tinv = t.inverse()?;
    f.right_mul(t, limits)?.left_mul(&tinv)
}

/// Cubic-linear map `F = X + ((AX)_1^3, ..., (AX)_n^3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DruzkowskiSpec {
    a: RatMatrix,
}

impl DruzkowskiSpec {
    pub fn new(a: RatMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        Ok(DruzkowskiSpec { a })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// `L_i = a_{i1} X_1 + ... + a_{in} X_n`.
    pub fn linear_forms(&self) -> Vec<Polynomial> {
        (0..self.dim()).map(|i| Polynomial::linear(self.a.row(i))).collect()
    }

    /// `H = (L_1^3, ..., L_n^3)`.
    pub fn h(&self) -> PolyMap {
        let comps = self.linear_forms().iter().map(|l| l.pow(3).expect("cube of a linear form")).collect();
        PolyMap::new(self.dim(), comps).expect("square")
    }

    pub fn build(&self) -> PolyMap {
        &PolyMap::identity(self.dim()) + &self.h()
    }

    /// `J(H) = 3 diag(L_i^2) A`, tagged with its factorization.
    pub fn jacobian_h(&self) -> PolyMatrix {
        let diag = self.linear_forms().iter().map(|l| l.pow(2).expect("square")).collect();
        PolyMatrix::diag_times_constant(Rational::from(3), diag, self.a.clone()).expect("square A")
    }

    /// Recovers `A` when `F - X` is a tuple of cubes of linear forms.
    pub fn recognize(f: &PolyMap) -> Option<Self> {
        if !f.is_square() {
            return None;
        }
        let n = f.domain_dim();
        let mut a = RatMatrix::zeros(n, n);
        for (i, fi) in f.components().iter().enumerate() {
            let h = fi - &Polynomial::var(n, i);
            if h.is_zero() {
                continue;
            }
            if h.degree() != Some(3) || !h.is_homogeneous() {
                return None;
            }
            let j = (0..n).find(|&j| !h.coefficient(&Monomial::var(n, j).with_exponent(j, 3)).is_zero())?;
            let aij = rational_cbrt(&h.coefficient(&Monomial::var(n, j).with_exponent(j, 3)))?;
            let denom = Rational::from(3) * aij.pow(2);
            let mut row = vec![Rational::zero(); n];
            for (k, slot) in row.iter_mut().enumerate() {
                *slot = if k == j {
                    aij.clone()
                } else {
                    let mono = Monomial::var(n, j).with_exponent(j, 2).with_exponent(k, 1);
                    &h.coefficient(&mono) / &denom
                };
            }
            if Polynomial::linear(&row).pow(3).ok()? != h {
                return None;
            }
            for (k, v) in row.into_iter().enumerate() {
                a.set(i, k, v);
            }
        }
        Some(DruzkowskiSpec { a })
    }

    /// `F ∘ g = g + ((A g)_i^3)_i`, without expanding `F` itself.
    pub fn apply(&self, g: &PolyMap, limits: &Limits) -> Result<PolyMap> {
        if g.codomain_dim() != self.dim() {
            return Err(Error::dims(self.dim(), g.codomain_dim()));
        }
        let nv = g.domain_dim();
        let comps = (0..self.dim())
            .into_par_iter()
            .map(|i| {
                let mut l = Polynomial::zero(nv);
                for (j, c) in self.a.row(i).iter().enumerate() {
                    if !c.is_zero() {
                        l = l.checked_add(&g.component(j).scale(c))?;
                    }
                }
                if l.is_zero() {
                    return Ok(g.component(i).clone());
                }
                let sq = l.mul_with(&l, limits)?;
                let cube = sq.mul_with(&l, limits)?;
                let out = g.component(i).checked_add(&cube)?;
                limits.check(out.num_terms())?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(nv, comps)
    }
}

fn rational_cbrt(r: &Rational) -> Option<Rational> {
    let (n, d) = (r.numer(), r.denom());
    let (cn, cd) = (n.cbrt(), d.cbrt());
    if &cn * &cn * &cn == n && &cd * &cd * &cd == d {
        Rational::new(cn, cd).ok()
    } else {
        None
    }
}

/// `F = X + (AX)^3` componentwise.
pub fn druzkowski(a: &RatMatrix) -> Result<PolyMap> {
    Ok(DruzkowskiSpec::new(a.clone())?.build())
}

/// Random rank-one `A = u v^T` with `v^T u = 0` and `sum_i v_i u_i^3 = 0`.
///
/// The first condition gives `A^2 = 0`; the second is what makes
/// `(JH)^2 = 3^2 L^4 (v^T u^3) u^3 v^T` vanish for the cubic-linear map of `A`.
/// Entries of `u` lie in `[-range, range]`.
pub fn random_rank_one_nilpotent(n: usize, range: i64, seed: u64) -> RatMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = range.max(1);
    if n < 2 {
        return RatMatrix::zeros(n, n);
    }
    let (u, v) = loop {
        let mut u = vec![0i64; n];
        let mut v = vec![0i64; n];
        if n == 2 {
            // Orthogonality to u and u^3 in the plane forces u_1 u_2 (u_1^2 - u_2^2) = 0.
            let a = nonzero_coeff(&mut rng, range).numer().try_into().unwrap_or(1i64);
            let b = nonzero_coeff(&mut rng, range).numer().try_into().unwrap_or(1i64);
            if rng.gen_bool(0.5) {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                u = vec![a, sign * a];
                v = vec![b, -sign * b];
            } else {
                let k = rng.gen_range(0..2);
                u[k] = a;
                v[1 - k] = b;
            }
        } else {
            for x in u.iter_mut() {
                *x = rng.gen_range(-range..=range);
            }
            let mut idx: Vec<usize> = (0..n).collect();
            for _ in 0..rng.gen_range(1..=2) {
                idx.shuffle(&mut rng);
                let (p, q, r) = (idx[0], idx[1], idx[2]);
                let (a, b) = ([u[p], u[q], u[r]], [u[p].pow(3), u[q].pow(3), u[r].pow(3)]);
                let scale = rng.gen_range(1..=2);
                v[p] += scale * (a[1] * b[2] - a[2] * b[1]);
                v[q] += scale * (a[2] * b[0] - a[0] * b[2]);
                v[r] += scale * (a[0] * b[1] - a[1] * b[0]);
            }
        }
        if u.iter().any(|&x| x != 0) && v.iter().any(|&x| x != 0) {
            break (u, v);
        }
    };
    let rows: Vec<Vec<Rational>> =
        u.iter().map(|&ui| v.iter().map(|&vj| Rational::from(ui * vj)).collect()).collect();
    RatMatrix::from_rows(rows).expect("square")
}

/// Random strictly lower triangular `A` whose cubic-linear map has
/// `(JH)^3 = 0`.
///
/// Indices are split into three consecutive blocks and `a_{ij}` may be
/// nonzero only when `i` lies in a later block than `j`. Every chain
/// `a_{ij} a_{jk} a_{kl}` then vanishes, so `(diag(L^2) A)^3 = 0`. For
/// `n <= 3` this is every strictly lower triangular matrix.
pub fn random_lower_nilpotent(n: usize, range: i64, seed: u64) -> RatMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block: Vec<usize> = if n <= 3 {
        (0..n).collect()
    } else {
        let first = rng.gen_range(1..=n - 2);
        let second = rng.gen_range(first + 1..n);
        (0..n).map(|i| (i >= first) as usize + (i >= second) as usize).collect()
    };
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            if block[i] > block[j] {
                a.set(i, j, Rational::from(rng.gen_range(-range..=range)));
            }
        }
    }
    a
}

/// Invertible matrix with integer entries in `[-range, range]`.
pub fn random_linear_invertible(n: usize, range: i64, seed: u64) -> RatMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = range.max(1);
    loop {
        let entries = (0..n * n).map(|_| Rational::from(rng.gen_range(-range..=range))).collect();
        let m = RatMatrix::new(n, n, entries).expect("shape");
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

/// Integer matrix with determinant 1 (so its inverse is integral too): a
/// unit lower triangular times a unit upper triangular factor, entries of
/// each factor in `[-range, range]`.
pub fn random_unimodular(n: usize, range: i64, seed: u64) -> RatMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range = range.max(1);
    let mut lower = RatMatrix::identity(n);
    let mut upper = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, Rational::from(rng.gen_range(-range..=range)));
            upper.set(j, i, Rational::from(rng.gen_range(-range..=range)));
        }
    }
    lower.mul(&upper).expect("square factors")
}

/// Small map `f` (dimension `n`) and big map `F` (dimension `N`) related by
/// `f(x) = B F(C x)` with `B C = I_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GzPair {
    pub f: PolyMap,
    pub big_f: PolyMap,
    pub b: RatMatrix,
    pub c: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GzReport {
    pub bc_identity: bool,
    pub map_identity: bool,
    /// `(t, p_t == B P_t(C x))` for `t = 0..=t_max`.
    pub pairing: Vec<(usize, bool)>,
}

impl GzReport {
    pub fn passes(&self) -> bool {
        self.bc_identity && self.map_identity && self.pairing.iter().all(|(_, ok)| *ok)
    }
}

impl GzPair {
    pub fn new(f: PolyMap, big_f: PolyMap, b: RatMatrix, c: RatMatrix) -> Result<Self> {
        let (n, big) = (f.domain_dim(), big_f.domain_dim());
        if !f.is_square() || !big_f.is_square() {
            return Err(Error::Invalid("paired maps must be square".into()));
        }
        if b.rows() != n || b.cols() != big {
            return Err(Error::Invalid(format!("B must be {n}x{big}, found {}x{}", b.rows(), b.cols())));
        }
        if c.rows() != big || c.cols() != n {
            return Err(Error::Invalid(format!("C must be {big}x{n}, found {}x{}", c.rows(), c.cols())));
        }
        Ok(GzPair { f, big_f, b, c })
    }

    /// Pads `f` with identity coordinates and hides the padding under a
    /// random linear conjugation.
    pub fn synthetic(f: PolyMap, extra: usize, seed: u64, limits: &Limits) -> Result<Self> {
        let n = f.domain_dim();
        let big = n + extra;
        let mut comps: Vec<Polynomial> = f
            .components()
            .iter()
            .map(|p| p.reindex(big, &(0..n).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        comps.extend((n..big).map(|i| Polynomial::var(big, i)));
        let padded = PolyMap::new(big, comps)?;
        let t = random_linear_invertible(big, 2, seed);
        let tinv = t.inverse()?;
        let mut b0 = RatMatrix::zeros(n, big);
        let mut c0 = RatMatrix::zeros(big, n);
        for i in 0..n {
            b0.set(i, i, Rational::one());
            c0.set(i, i, Rational::one());
        }
        let big_f = conjugate(&padded, &t, limits)?;
        GzPair::new(f, big_f, b0.mul(&t)?, tinv.mul(&c0)?)
    }
}

/// Checks `B C = I`, `f(x) = B F(C x)` and `p_t(x) = B P_t(C x)` for
/// `t <= t_max`, computing both nicety sequences from scratch.
pub fn gz_check(pair: &GzPair, t_max: usize, limits: &Limits) -> Result<GzReport> {
    let n = pair.f.domain_dim();
    let bc_identity = pair.b.mul(&pair.c)? == RatMatrix::identity(n);
    let c_map = PolyMap::linear(&pair.c);
    let f_of_c = compose(&pair.big_f, &c_map, limits)?;
    let map_identity = f_of_c.left_mul(&pair.b)? == pair.f;
    let small = crate::engine::difference_table(&pair.f, &PolyMap::identity(n), t_max, limits)?;
    let big = crate::engine::difference_table(&pair.big_f, &c_map, t_max, limits)?;
    let mut pairing = Vec::with_capacity(t_max + 1);
    for (t, (p, q)) in small.iter().zip(&big).enumerate() {
        pairing.push((t, q.left_mul(&pair.b)? == *p));
    }
    Ok(GzReport { bc_identity, map_identity, pairing })
}

/// Parameters of the eighth Hubbers class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubbersParams {
    pub e3: Rational,
    pub e4: Rational,
    pub g4: Rational,
    pub k3: Rational,
    pub k4: Rational,
    pub m4: Rational,
}

impl Default for HubbersParams {
    fn default() -> Self {
        let one = Rational::one();
        HubbersParams { e3: one.clone(), e4: one.clone(), g4: one.clone(), k3: one.clone(), k4: one.clone(), m4: one }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HubbersMaps {
    pub f: PolyMap,
    pub h: PolyMap,
    pub g: PolyMap,
}

/// The eighth class in dimension 4 and its splitting `F = G ∘ H`.
pub fn hubbers_eighth(p: &HubbersParams) -> Result<HubbersMaps> {
    if p.g4.is_zero() {
        return Err(Error::Invalid("g4 must be nonzero".into()));
    }
    let x = |i: usize| Polynomial::var(4, i);
    // Each term is (coefficient, [e1, e2, e3, e4]).
    let poly = |terms: Vec<(Rational, [u32; 4])>| {
        Polynomial::from_terms(4, terms.into_iter().map(|(c, e)| (Monomial::new(e.to_vec()), c)))
    };
    let one = Rational::one;
    let g4inv = p.g4.recip().expect("nonzero");

    let f2 = poly(vec![(one(), [0, 1, 0, 0]), (-Rational::new(1, 3)?, [3, 0, 0, 0])]);
    let f3 = poly(vec![
        (one(), [0, 0, 1, 0]),
        (-one(), [2, 1, 0, 0]),
        (-p.e3.clone(), [1, 2, 0, 0]),
        (p.g4.clone(), [1, 1, 1, 0]),
        (-p.k3.clone(), [0, 3, 0, 0]),
        (p.m4.clone(), [0, 2, 1, 0]),
        (p.g4.pow(2), [0, 2, 0, 1]),
    ]);
    let f4 = poly(vec![
        (one(), [0, 0, 0, 1]),
        (-one(), [2, 0, 1, 0]),
        (-p.e4.clone(), [1, 2, 0, 0]),
        (-(Rational::from(2) * &p.m4 * &g4inv), [1, 1, 1, 0]),
        (-p.g4.clone(), [1, 1, 0, 1]),
        (-p.k4.clone(), [0, 3, 0, 0]),
        (-(p.m4.pow(2) * g4inv.pow(2)), [0, 2, 1, 0]),
        (-p.m4.clone(), [0, 2, 0, 1]),
    ]);
    let (x1, x2, x3, x4) = (0, 1, 2, 3);

    let f = PolyMap::new(4, vec![x(x1), f2.clone(), f3.clone(), f4.clone()])?;
    let h = PolyMap::new(4, vec![x(x1), x(x2), f3, f4])?;
    let g = PolyMap::new(4, vec![x(x1), f2, x(x3), x(x4)])?;
    Ok(HubbersMaps { f, h, g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::{jacobian, nilpotence_index, Nilpotence, NilpotenceMode};
    use crate::map_io::parse_map;

    fn map(src: &str) -> PolyMap {
        parse_map(src).unwrap().map
    }

    #[test]
    fn triangular_shapes() {
        assert_eq!(make_triangular(1, &TriangularParams::default(), 3), PolyMap::identity(1));
        for seed in 0..20 {
            let f = make_triangular(4, &TriangularParams::default(), seed);
            assert!(is_triangular(&f));
            assert_eq!(f, make_triangular(4, &TriangularParams::default(), seed));
        }
        assert!(is_triangular(&map("vars: x1 x2\nF1 = x1 + x2^3\nF2 = x2\n")));
        assert!(is_triangular(&PolyMap::identity(3)));
        assert!(!is_triangular(&map(
            "vars: x1 x2 x3\nF1 = x1 - 2*(x1*x3+x2^2)*x2 - (x1*x3+x2^2)^2*x3\nF2 = x2 + (x1*x3+x2^2)*x3\nF3 = x3\n"
        )));
        assert!(!is_triangular(&map("vars: x1 x2\nF1 = x1\nF2 = x2 + x1^2\n")));
    }

    #[test]
    fn conjugation_examples() {
        let lim = Limits::default();
        let f = map("vars: x1 x2\nF1 = x1 + x2^3\nF2 = x2\n");
        assert_eq!(conjugate(&f, &RatMatrix::identity(2), &lim).unwrap(), f);
        let swap = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(conjugate(&f, &swap, &lim).unwrap(), map("vars: x1 x2\nF1 = x1\nF2 = x2 + x1^3\n"));
        let t = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let back = conjugate(&conjugate(&f, &t, &lim).unwrap(), &t.inverse().unwrap(), &lim).unwrap();
        assert_eq!(back, f);
        let singular = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(conjugate(&f, &singular, &lim), Err(Error::Singular));
    }

    #[test]
    fn druzkowski_examples() {
        assert_eq!(druzkowski(&RatMatrix::zeros(3, 3)).unwrap(), PolyMap::identity(3));
        let f = druzkowski(&RatMatrix::from_i64(&[&[1, -1], &[1, -1]])).unwrap();
        assert_eq!(f, map("vars: x1 x2\nF1 = x1 + (x1-x2)^3\nF2 = x2 + (x1-x2)^3\n"));
        assert!(druzkowski(&RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn recognizer_inverts_builder() {
        let a = RatMatrix::from_rows(vec![
            vec![Rational::new(1, 24).unwrap(), Rational::from(-2), Rational::zero()],
            vec![Rational::zero(); 3],
            vec![Rational::from(3), Rational::new(-1, 2).unwrap(), Rational::from(1)],
        ])
        .unwrap();
        let spec = DruzkowskiSpec::recognize(&druzkowski(&a).unwrap()).unwrap();
        assert_eq!(spec.matrix(), &a);
        assert!(DruzkowskiSpec::recognize(&map("vars: x1 x2\nF1 = x1 + x2^2\nF2 = x2\n")).is_none());
        assert!(DruzkowskiSpec::recognize(&map("vars: x1 x2\nF1 = x1 + x1*x2^2\nF2 = x2\n")).is_none());
    }

    #[test]
    fn fast_apply_matches_compose() {
        let lim = Limits::default();
        let a = RatMatrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[2, -1, 0]]);
        let spec = DruzkowskiSpec::new(a).unwrap();
        let g = map("vars: y1 y2\nF1 = y1 + y2^2\nF2 = y2 - 3\nF3 = y1*y2\n");
        assert_eq!(spec.apply(&g, &lim).unwrap(), compose(&spec.build(), &g, &lim).unwrap());
    }

    #[test]
    fn rank_one_generator_kills_jh_squared() {
        let lim = Limits::default();
        for n in 2..=6 {
            for seed in 0..5 {
                let a = random_rank_one_nilpotent(n, 3, seed);
                assert!(a.mul(&a).unwrap().is_zero(), "A^2 != 0 for n={n} seed={seed}");
                assert!(a.rank() <= 1);
                let jh = DruzkowskiSpec::new(a).unwrap().jacobian_h();
                let r = nilpotence_index(&jh, 2, NilpotenceMode::Symbolic, &lim).unwrap();
                assert!(matches!(r.outcome, Nilpotence::Nilpotent(k) if k <= 2));
            }
        }
    }

    #[test]
    fn lower_generator_kills_jh_cubed() {
        let lim = Limits::default();
        for n in 2..=6 {
            for seed in 0..5 {
                let a = random_lower_nilpotent(n, 3, seed);
                let jh = jacobian(&DruzkowskiSpec::new(a).unwrap().h());
                let r = nilpotence_index(&jh, 3, NilpotenceMode::Symbolic, &lim).unwrap();
                assert!(matches!(r.outcome, Nilpotence::Nilpotent(k) if k <= 3), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn invertible_generator() {
        for n in 1..=5 {
            let t = random_linear_invertible(n, 3, 11);
            assert!(!t.det().unwrap().is_zero());
            assert_eq!(t, random_linear_invertible(n, 3, 11));
        }
    }

    #[test]
    fn hubbers_splitting() {
        let maps = hubbers_eighth(&HubbersParams::default()).unwrap();
        assert_eq!(compose(&maps.g, &maps.h, &Limits::default()).unwrap(), maps.f);
        let zero = HubbersParams { g4: Rational::zero(), ..HubbersParams::default() };
        assert!(hubbers_eighth(&zero).is_err());
        let odd = HubbersParams {
            e3: Rational::from(2),
            g4: Rational::new(-3, 2).unwrap(),
            m4: Rational::from(5),
            ..HubbersParams::default()
        };
        let maps = hubbers_eighth(&odd).unwrap();
        assert_eq!(compose(&maps.g, &maps.h, &Limits::default()).unwrap(), maps.f);
    }
}
