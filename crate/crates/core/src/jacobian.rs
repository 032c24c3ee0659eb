//! Jacobian matrices, determinants, the Keller test and nilpotence indices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly_map::PolyMap;
use crate::polynomial::{Limits, Polynomial};
use crate::rat_matrix::RatMatrix;
use crate::rational::Rational;

/// Sampling range for randomized nilpotence: integers in `[-99, 99]`.
pub const SAMPLE_RANGE: i64 = 99;
pub const DEFAULT_SAMPLES: usize = 8;

/// Known factorization `M = c * diag(d_1, ..., d_n) * A` with `A` constant.
///
/// Jacobians of cubic-linear maps have this shape (`c = 3`, `d_i = L_i^2`),
/// which makes symbolic powers far cheaper than generic products.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagTimesConst {
    pub scale: Rational,
    pub diag: Vec<Polynomial>,
    pub constant: RatMatrix,
}

/// Matrix with polynomial entries, all in the same variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
    structure: Option<DiagTimesConst>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, nvars: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dims(rows * cols, entries.len()));
        }
        if let Some(bad) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(Error::dims(nvars, bad.nvars()));
        }
        Ok(PolyMatrix { rows, cols, nvars, entries, structure: None })
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::dims(c, bad.len()));
        }
        Self::new(r, c, nvars, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut entries = vec![Polynomial::zero(nvars); n * n];
        for i in 0..n {
            entries[i * n + i] = Polynomial::one(nvars);
        }
        PolyMatrix { rows: n, cols: n, nvars, entries, structure: None }
    }

    pub fn constant(m: &RatMatrix, nvars: usize) -> Self {
        let entries = m.entries().iter().map(|c| Polynomial::constant(nvars, c.clone())).collect();
        PolyMatrix { rows: m.rows(), cols: m.cols(), nvars, entries, structure: None }
    }

    /// `scale * diag(diag) * constant`, tagged so that symbolic powers can
    /// use the factorization.
    pub fn diag_times_constant(scale: Rational, diag: Vec<Polynomial>, constant: RatMatrix) -> Result<Self> {
        let n = diag.len();
        if !constant.is_square() || constant.rows() != n || n == 0 {
            return Err(Error::NotSquare { rows: constant.rows(), cols: constant.cols() });
        }
        let nvars = diag[0].nvars();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(diag[i].scale(&(&scale * constant.get(i, j))));
            }
        }
        let mut m = Self::new(n, n, nvars, entries)?;
        m.structure = Some(DiagTimesConst { scale, diag, constant });
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn structure(&self) -> Option<&DiagTimesConst> {
        self.structure.as_ref()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        let entries = self.entries.iter().map(|p| p.scale(c)).collect();
        PolyMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars, entries, structure: None }
    }

    pub fn mul(&self, other: &PolyMatrix, limits: &Limits) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::dims(self.cols, other.rows));
        }
        if self.nvars != other.nvars {
            return Err(Error::dims(self.nvars, other.nvars));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(self.nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&a.mul_with(b, limits)?)?;
                    limits.check(acc.num_terms())?;
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, other.cols, self.nvars, entries)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<RatMatrix> {
        let entries = self.entries.iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>>>()?;
        RatMatrix::new(self.rows, self.cols, entries)
    }

    /// Substitutes a map into every entry: `M(g(x))`.
    pub fn substitute(&self, g: &PolyMap, limits: &Limits) -> Result<PolyMatrix> {
        let mut sub = crate::poly_map::Substituter::new(g, *limits)?;
        let entries = self.entries.iter().map(|p| sub.substitute(p)).collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, g.domain_dim(), entries)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Determinant; cofactor expansion up to 4x4, Bareiss elimination above.
    pub fn det(&self, limits: &Limits) -> Result<Polynomial> {
        self.require_square()?;
        if self.rows <= 4 {
            self.det_cofactor(limits)
        } else {
            self.det_bareiss(limits)
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self, limits: &Limits) -> Result<Polynomial> {
        self.require_square()?;
        let idx: Vec<usize> = (0..self.rows).collect();
        self.cofactor_rec(0, &idx, limits)
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize], limits: &Limits) -> Result<Polynomial> {
        if cols.len() == 1 {
            return Ok(self.get(row, cols[0]).clone());
        }
        let mut acc = Polynomial::zero(self.nvars);
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.cofactor_rec(row + 1, &rest, limits)?;
            let term = a.mul_with(&minor, limits)?;
            acc = if pos % 2 == 0 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
            limits.check(acc.num_terms())?;
        }
        Ok(acc)
    }

    /// Fraction-free (Bareiss) elimination; every division is exact.
    pub fn det_bareiss(&self, limits: &Limits) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        let mut m: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = Polynomial::one(self.nvars);
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(Polynomial::zero(self.nvars));
                };
                m.swap(k, swap);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k]
                        .mul_with(&m[i][j], limits)?
                        .checked_sub(&m[i][k].mul_with(&m[k][j], limits)?)?;
                    m[i][j] = num.div_exact(&prev)?;
                }
                m[i][k] = Polynomial::zero(self.nvars);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }
}

/// `J(F)_{ij} = ∂F_i / ∂x_j`.
pub fn jacobian(f: &PolyMap) -> PolyMatrix {
    let n = f.domain_dim();
    let entries = f
        .components()
        .iter()
        .flat_map(|p| (0..n).map(move |j| p.partial(j).expect("index in range")))
        .collect();
    PolyMatrix::new(f.codomain_dim(), n, n, entries).expect("consistent shape")
}

#[derive(Debug, Clone, PartialEq)]
pub struct KellerReport {
    pub is_keller: bool,
    pub det: Polynomial,
}

/// Keller test: is `det J(F)` a nonzero constant?
pub fn keller_check(f: &PolyMap, limits: &Limits) -> Result<KellerReport> {
    if !f.is_square() {
        return Err(Error::NotSquare { rows: f.codomain_dim(), cols: f.domain_dim() });
    }
    let det = jacobian(f).det(limits)?;
    Ok(KellerReport { is_keller: det.is_constant() && !det.is_zero(), det })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum NilpotenceMode {
    Symbolic,
    Randomized { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Nilpotence {
    Nilpotent(usize),
    NotNilpotentWithin(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotenceReport {
    pub outcome: Nilpotence,
    pub mode: NilpotenceMode,
    /// True for randomized answers, which hold only with high probability.
    pub monte_carlo: bool,
}

/// Smallest `k <= k_max` with `M^k = 0`.
pub fn nilpotence_index(m: &PolyMatrix, k_max: usize, mode: NilpotenceMode, limits: &Limits) -> Result<NilpotenceReport> {
    m.require_square()?;
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let outcome = match mode {
        NilpotenceMode::Symbolic => match m.structure() {
            Some(s) => symbolic_structured(s, m.nvars(), k_max, limits)?,
            None => symbolic_generic(m, k_max, limits)?,
        },
        NilpotenceMode::Randomized { samples, seed } => {
            if samples == 0 {
                return Err(Error::Invalid("samples must be at least 1".into()));
            }
            randomized(m, k_max, samples, seed)?
        }
    };
    Ok(NilpotenceReport { outcome, mode, monte_carlo: matches!(mode, NilpotenceMode::Randomized { .. }) })
}

fn symbolic_generic(m: &PolyMatrix, k_max: usize, limits: &Limits) -> Result<Nilpotence> {
    let mut power = m.clone();
    for k in 1..=k_max {
        if power.is_zero() {
            return Ok(Nilpotence::Nilpotent(k));
        }
        if k < k_max {
            power = power.mul(m, limits)?;
        }
    }
    Ok(Nilpotence::NotNilpotentWithin(k_max))
}

/// Powers of `c D A` via `W_1 = D A`, `W_{k+1} = (W_k D) A`; the scalar
/// `c^k` never affects vanishing.
fn symbolic_structured(s: &DiagTimesConst, nvars: usize, k_max: usize, limits: &Limits) -> Result<Nilpotence> {
    let n = s.diag.len();
    if s.scale.is_zero() {
        return Ok(Nilpotence::Nilpotent(1));
    }
    let mut w: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| s.diag[i].scale(s.constant.get(i, j))).collect())
        .collect();
    for k in 1..=k_max {
        if w.iter().flatten().all(Polynomial::is_zero) {
            return Ok(Nilpotence::Nilpotent(k));
        }
        if k == k_max {
            break;
        }
        let wd: Vec<Vec<Polynomial>> = w
            .iter()
            .map(|row| row.iter().zip(&s.diag).map(|(p, d)| p.mul_with(d, limits)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut next = vec![vec![Polynomial::zero(nvars); n]; n];
        for (i, row) in wd.iter().enumerate() {
            for j in 0..n {
                let terms = row.iter().enumerate().flat_map(|(l, p)| {
                    let a = s.constant.get(l, j);
                    p.terms().iter().map(move |(m, c)| (m.clone(), c * a))
                });
                let entry = Polynomial::from_terms(nvars, terms);
                limits.check(entry.num_terms())?;
                next[i][j] = entry;
            }
        }
        w = next;
    }
    Ok(Nilpotence::NotNilpotentWithin(k_max))
}

fn randomized(m: &PolyMatrix, k_max: usize, samples: usize, seed: u64) -> Result<Nilpotence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0;
    for _ in 0..samples {
        let point: Vec<Rational> =
            (0..m.nvars()).map(|_| Rational::from(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))).collect();
        let numeric = m.evaluate(&point)?;
        match numeric.nilpotence_index(k_max)? {
            Some(k) => worst = worst.max(k),
            None => return Ok(Nilpotence::NotNilpotentWithin(k_max)),
        }
    }
    Ok(Nilpotence::Nilpotent(worst))
}
