//! The difference sequence `P_0 = X`, `P_k = P_{k-1}∘F - P_{k-1}` and what
//! it decides: nicety, inverses, inverse nicety, conjugation transport.
//!
//! Exact computation is the ground truth. Every step is also evaluated
//! modulo a few 61-63 bit primes along random orbits; a nonzero residue is a
//! proof that the step is nonzero, which lets [`check_nice`] certify
//! non-nicety even when the exact expansions are too large to hold.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::DruzkowskiSpec;
use crate::error::{Error, Result};
use crate::modular::{self, ModMap, SCREEN_PRIMES};
use crate::poly_map::{compose, substitute, PolyMap};
use crate::polynomial::{Limits, Polynomial};
use crate::rat_matrix::RatMatrix;

pub const DEFAULT_MAX_STEPS: usize = 32;
pub const DEFAULT_SCREEN_SAMPLES: usize = 3;
pub const DEFAULT_SEED: u64 = 1;

fn require_square(f: &PolyMap) -> Result<()> {
    if f.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare { rows: f.codomain_dim(), cols: f.domain_dim() })
    }
}

/// `P_k` from `P_{k-1}`.
pub fn next_step(prev: &PolyMap, f: &PolyMap, limits: &Limits) -> Result<PolyMap> {
    let out = compose(prev, f, limits)?.checked_sub(prev)?;
    limits.check(out.max_terms())?;
    Ok(out)
}

/// A square map `F = f_1∘f_2∘...∘f_r` kept together with its factors.
///
/// `P∘F` is computed as `(...((P∘f_1)∘f_2)...)∘f_r`. When the factors are
/// linear or sparse (a conjugate `T^{-1}∘F∘T` of a triangular map, say) this
/// avoids the full-degree intermediate expansion of a direct substitution
/// into the dense product.
#[derive(Debug, Clone, PartialEq)]
pub struct Factored {
    map: PolyMap,
    factors: Vec<PolyMap>,
}

impl Factored {
    pub fn new(factors: Vec<PolyMap>, limits: &Limits) -> Result<Self> {
        let (first, rest) = factors.split_first().ok_or_else(|| Error::Invalid("no factors".into()))?;
        let mut map = first.clone();
        for g in rest {
            map = compose(&map, g, limits)?;
        }
        require_square(&map)?;
        Ok(Factored { map, factors })
    }

    pub fn plain(f: &PolyMap) -> Self {
        Factored { map: f.clone(), factors: vec![f.clone()] }
    }

    /// `T^{-1}∘F∘T`.
    pub fn conjugate(f: &PolyMap, t: &RatMatrix, limits: &Limits) -> Result<Self> {
        let tinv = t.inverse()?;
        Factored::new(vec![PolyMap::linear(&tinv), f.clone(), PolyMap::linear(t)], limits)
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn factors(&self) -> &[PolyMap] {
        &self.factors
    }

    /// `p∘F`.
    pub fn pullback(&self, p: &PolyMap, limits: &Limits) -> Result<PolyMap> {
        let mut acc = p.clone();
        for g in &self.factors {
            acc = compose(&acc, g, limits)?;
        }
        Ok(acc)
    }

    fn next_step(&self, prev: &PolyMap, limits: &Limits) -> Result<PolyMap> {
        let out = self.pullback(prev, limits)?.checked_sub(prev)?;
        limits.check(out.max_terms())?;
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetBreach {
    /// The step whose computation was abandoned.
    pub step: usize,
    pub terms: usize,
    pub budget: usize,
}

fn breach(step: usize, e: Error) -> Result<BudgetBreach> {
    match e {
        Error::BudgetExceeded { terms, budget } => Ok(BudgetBreach { step, terms, budget }),
        other => Err(other),
    }
}

/// `P_0, P_1, ...` for a square map, stopping at the first zero step.
#[derive(Debug, Clone, PartialEq)]
pub struct NicetySequence {
    base: Factored,
    steps: Vec<PolyMap>,
    elapsed: Vec<Duration>,
    breach: Option<BudgetBreach>,
}

impl NicetySequence {
    fn start(f: &Factored) -> Self {
        let n = f.map().domain_dim();
        NicetySequence { base: f.clone(), steps: vec![PolyMap::identity(n)], elapsed: vec![Duration::ZERO], breach: None }
    }

    pub fn base_map(&self) -> &PolyMap {
        self.base.map()
    }

    pub fn steps(&self) -> &[PolyMap] {
        &self.steps
    }

    pub fn step(&self, k: usize) -> Option<&PolyMap> {
        self.steps.get(k)
    }

    /// Index of the last stored step.
    pub fn last_index(&self) -> usize {
        self.steps.len() - 1
    }

    /// Wall time spent on each stored step.
    pub fn elapsed(&self) -> &[Duration] {
        &self.elapsed
    }

    pub fn budget_breach(&self) -> Option<BudgetBreach> {
        self.breach
    }

    /// `m` with `P_m = 0`, when the sequence reached it.
    pub fn vanishing_step(&self) -> Option<usize> {
        let k = self.last_index();
        (k > 0 && self.steps[k].is_zero()).then_some(k)
    }

    /// For each component `i`, the first stored `k` with `P_k^i = 0`.
    pub fn component_vanishing(&self) -> Vec<Option<usize>> {
        (0..self.base.map().domain_dim())
            .map(|i| (1..self.steps.len()).find(|&k| self.steps[k].component(i).is_zero()))
            .collect()
    }

    /// Recomputes every stored step from its predecessor.
    pub fn check_recursion(&self, limits: &Limits) -> Result<bool> {
        if !self.steps[0].is_identity() {
            return Ok(false);
        }
        for k in 1..self.steps.len() {
            if self.base.next_step(&self.steps[k - 1], limits)? != self.steps[k] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Computes one more step, recording a budget breach instead of failing.
    fn advance(&mut self, limits: &Limits) -> Result<bool> {
        let k = self.steps.len();
        let start = Instant::now();
        match self.base.next_step(&self.steps[k - 1], limits) {
            Ok(p) => {
                self.steps.push(p);
                self.elapsed.push(start.elapsed());
                Ok(true)
            }
            Err(e) => {
                self.breach = Some(breach(k, e)?);
                Ok(false)
            }
        }
    }
}

/// Computes steps until the first zero map, `m_max`, or a budget breach.
pub fn p_sequence(f: &PolyMap, m_max: usize, limits: &Limits) -> Result<NicetySequence> {
    require_square(f)?;
    p_sequence_factored(&Factored::plain(f), m_max, limits)
}

/// [`p_sequence`] for a map given as a composition of factors.
pub fn p_sequence_factored(f: &Factored, m_max: usize, limits: &Limits) -> Result<NicetySequence> {
    if m_max == 0 {
        return Err(Error::Invalid("m_max must be at least 1".into()));
    }
    let mut seq = NicetySequence::start(f);
    while seq.last_index() < m_max && seq.vanishing_step().is_none() {
        if !seq.advance(limits)? {
            break;
        }
    }
    Ok(seq)
}

/// Nonvanishing certificates from modular evaluation along orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Screening {
    pub primes: Vec<u64>,
    pub samples: usize,
    pub seed: u64,
    /// `nonzero[k][i]`: some residue of `P_k^i` was nonzero.
    nonzero: Vec<Vec<bool>>,
}

impl Screening {
    /// Proven nonzero (the converse is only probable).
    pub fn component_nonzero(&self, k: usize, i: usize) -> bool {
        self.nonzero.get(k).is_some_and(|row| row[i])
    }

    pub fn step_nonzero(&self, k: usize) -> bool {
        self.nonzero.get(k).is_some_and(|row| row.iter().any(|&b| b))
    }

    pub fn k_max(&self) -> usize {
        self.nonzero.len() - 1
    }
}

/// Evaluates `P_k(a)` mod `p` for `k <= k_max` at `samples` random points per
/// prime via the difference table of the orbit `a, F(a), F(F(a)), ...`.
pub fn screen(f: &PolyMap, k_max: usize, samples: usize, seed: u64) -> Result<Screening> {
    require_square(f)?;
    let n = f.domain_dim();
    let mut nonzero = vec![vec![false; n]; k_max + 1];
    let mut primes = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &p in &SCREEN_PRIMES {
        let Some(fp) = ModMap::reduce(f, p) else { continue };
        primes.push(p);
        for _ in 0..samples {
            let mut orbit: Vec<Vec<u64>> = Vec::with_capacity(k_max + 1);
            orbit.push((0..n).map(|_| rng.gen_range(0..p)).collect());
            for j in 0..k_max {
                let next = fp.eval(&orbit[j]);
                orbit.push(next);
            }
            for (i, nz) in nonzero[0].iter_mut().enumerate() {
                *nz |= orbit[0][i] != 0;
            }
            for k in 1..=k_max {
                for j in 0..=k_max - k {
                    for i in 0..n {
                        orbit[j][i] = modular::sub(orbit[j + 1][i], orbit[j][i], p);
                    }
                }
                for i in 0..n {
                    nonzero[k][i] |= orbit[0][i] != 0;
                }
            }
        }
    }
    Ok(Screening { primes, samples, seed, nonzero })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Nice(usize),
    NotNiceWithin(usize),
    BudgetExceeded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepStats {
    pub k: usize,
    pub degrees: Vec<Option<u32>>,
    pub terms: Vec<usize>,
    /// `deg P_k > deg(F)^n`, beyond what any inverse could need.
    pub exceeds_inverse_bound: bool,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NiceOptions {
    pub max_steps: usize,
    pub limits: Limits,
    pub screen_samples: usize,
    pub seed: u64,
}

impl Default for NiceOptions {
    fn default() -> Self {
        NiceOptions {
            max_steps: DEFAULT_MAX_STEPS,
            limits: Limits::default(),
            screen_samples: DEFAULT_SCREEN_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

impl NiceOptions {
    pub fn with_max_steps(max_steps: usize) -> Self {
        NiceOptions { max_steps, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NicetyReport {
    pub verdict: Verdict,
    /// Statistics of every exactly computed step, `P_0` included.
    pub steps: Vec<StepStats>,
    /// Steps proven nonzero by modular evaluation.
    pub certified_nonzero: Vec<usize>,
    /// First `k` with `P_k^i = 0`, per component, when known.
    pub component_vanishing: Vec<Option<usize>>,
    pub budget_breach: Option<BudgetBreach>,
    pub screening: Screening,
    pub inverse: Option<PolyMap>,
    pub inverse_verified: bool,
    /// `deg G <= deg(F)^(n-1)` for the synthesized inverse.
    pub inverse_degree_within_bound: Option<bool>,
}

impl NicetyReport {
    pub fn m(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Nice(m) => Some(m),
            _ => None,
        }
    }
}

fn stats(k: usize, p: &PolyMap, elapsed: Duration, bound: Option<u64>) -> StepStats {
    let degrees: Vec<Option<u32>> = p.components().iter().map(Polynomial::degree).collect();
    let top = degrees.iter().flatten().max().copied();
    StepStats {
        k,
        terms: p.components().iter().map(Polynomial::num_terms).collect(),
        exceeds_inverse_bound: matches!((top, bound), (Some(d), Some(b)) if u64::from(d) > b),
        elapsed,
        degrees,
    }
}

/// Upper bound on the terms of any component of the next step, from the
/// number of monomials of bounded degree.
fn predicted_terms(prev: &PolyMap, f: &PolyMap) -> u128 {
    let n = f.domain_dim() as u128;
    let d = u128::from(prev.degree().unwrap_or(0)) * u128::from(f.degree().unwrap_or(0).max(1));
    // C(d + n, n), saturating.
    let mut acc: u128 = 1;
    for i in 1..=n {
        acc = acc.saturating_mul(d + i) / i;
        if acc > u128::from(u64::MAX) {
            return u128::MAX;
        }
    }
    acc
}

/// Decides `Nice(m)` for `m <= max_steps`.
///
/// Steps certified nonzero by [`screen`] need no exact confirmation; exact
/// computation runs up to each step the screen could not rule out. Once every
/// remaining step is certified, further exact steps are only computed for the
/// statistics table, and only while their a-priori size fits the budget.
pub fn check_nice(f: &PolyMap, opts: &NiceOptions) -> Result<NicetyReport> {
    require_square(f)?;
    check_nice_factored(&Factored::plain(f), opts)
}

/// [`check_nice`] for a map given as a composition of factors.
pub fn check_nice_factored(factored: &Factored, opts: &NiceOptions) -> Result<NicetyReport> {
    let f = factored.map();
    if opts.max_steps == 0 {
        return Err(Error::Invalid("max_steps must be at least 1".into()));
    }
    let n = f.domain_dim();
    let limits = &opts.limits;
    let screening = screen(f, opts.max_steps, opts.screen_samples, opts.seed)?;
    let mut seq = NicetySequence::start(factored);
    let verdict = loop {
        let done = seq.last_index();
        let target = (done + 1..=opts.max_steps).find(|&k| !screening.step_nonzero(k));
        let Some(target) = target else {
            while seq.last_index() < opts.max_steps && seq.breach.is_none() {
                let prev = &seq.steps[seq.last_index()];
                if predicted_terms(prev, f) > limits.term_budget as u128 {
                    break;
                }
                seq.advance(limits)?;
            }
            break Verdict::NotNiceWithin(opts.max_steps);
        };
        let mut stopped = None;
        while seq.last_index() < target {
            if !seq.advance(limits)? {
                stopped = Some(seq.last_index() + 1);
                break;
            }
            if let Some(m) = seq.vanishing_step() {
                stopped = Some(m);
                break;
            }
        }
        if let Some(m) = seq.vanishing_step() {
            break Verdict::Nice(m);
        }
        if let Some(step) = stopped {
            break Verdict::BudgetExceeded(step);
        }
    };

    let bound = f.degree().map(|d| u64::from(d).saturating_pow(n as u32));
    let steps: Vec<StepStats> = seq.steps.iter().zip(&seq.elapsed).enumerate().map(|(k, (p, t))| stats(k, p, *t, bound)).collect();
    let certified_nonzero = (1..=opts.max_steps).filter(|&k| screening.step_nonzero(k)).collect();
    let component_vanishing = seq.component_vanishing();

    let mut report = NicetyReport {
        verdict,
        steps,
        certified_nonzero,
        component_vanishing,
        budget_breach: seq.breach,
        screening,
        inverse: None,
        inverse_verified: false,
        inverse_degree_within_bound: None,
    };
    if let Verdict::Nice(m) = verdict {
        let g = synthesize_inverse(&seq, m)?;
        let verified = factored.pullback(&g, limits).and_then(|gf| Ok(gf.is_identity() && compose(f, &g, limits)?.is_identity()));
        match verified {
            Ok(ok) => report.inverse_verified = ok,
            Err(Error::BudgetExceeded { terms, budget }) => {
                report.budget_breach = Some(BudgetBreach { step: m, terms, budget });
                report.verdict = Verdict::BudgetExceeded(m);
            }
            Err(e) => return Err(e),
        }
        let inverse_bound = f.degree().map(|d| u64::from(d).saturating_pow(n.saturating_sub(1) as u32));
        report.inverse_degree_within_bound = match (g.degree(), inverse_bound) {
            (Some(dg), Some(b)) => Some(u64::from(dg) <= b),
            _ => Some(true),
        };
        report.inverse = Some(g);
    }
    Ok(report)
}

/// `G = sum_{l < m} (-1)^l P_l`.
pub fn synthesize_inverse(seq: &NicetySequence, m: usize) -> Result<PolyMap> {
    let pm = seq
        .step(m)
        .ok_or_else(|| Error::Invalid(format!("step {m} has not been computed")))?;
    if m == 0 || !pm.is_zero() {
        return Err(Error::Invalid(format!("P_{m} is not zero")));
    }
    let n = seq.base_map().domain_dim();
    let mut g = PolyMap::zero(n, n);
    for (l, p) in seq.steps[..m].iter().enumerate() {
        g = if l % 2 == 0 { g.checked_add(p)? } else { g.checked_sub(p)? };
    }
    Ok(g)
}

/// `G∘F = X` and `F∘G = X`, exactly.
pub fn verify_inverse(f: &PolyMap, g: &PolyMap, limits: &Limits) -> Result<bool> {
    require_square(f)?;
    if g.domain_dim() != f.domain_dim() || g.codomain_dim() != f.codomain_dim() {
        return Err(Error::dims(f.domain_dim(), g.domain_dim()));
    }
    Ok(compose(g, f, limits)?.is_identity() && compose(f, g, limits)?.is_identity())
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseNicetyReport {
    pub m: usize,
    pub inverse: PolyMap,
    /// `Q_0, ..., Q_m` of the inverse, computed by the same recursion.
    pub q_steps: Vec<PolyMap>,
    /// `k < m` where `Q_k` differs from `sum_{l=k}^{m-1} (-1)^l P_l∘G^{k-1}`.
    pub mismatches: Vec<usize>,
}

impl InverseNicetyReport {
    pub fn q_vanishes(&self) -> bool {
        self.q_steps[self.m].is_zero()
    }

    pub fn holds(&self) -> bool {
        self.q_vanishes() && self.mismatches.is_empty()
    }
}

/// Computes the sequence of `G = F^{-1}` directly and compares it with the
/// closed form in terms of the sequence of `F`.
pub fn verify_inverse_nicety(f: &PolyMap, m: usize, limits: &Limits) -> Result<InverseNicetyReport> {
    let seq = p_sequence(f, m, limits)?;
    if let Some(b) = seq.budget_breach() {
        return Err(Error::BudgetExceeded { terms: b.terms, budget: b.budget });
    }
    if seq.vanishing_step() != Some(m) {
        return Err(Error::Invalid(format!("F does not vanish exactly at step {m}")));
    }
    let g = synthesize_inverse(&seq, m)?;
    let mut q_steps = vec![PolyMap::identity(f.domain_dim())];
    for k in 1..=m {
        let next = next_step(&q_steps[k - 1], &g, limits)?;
        q_steps.push(next);
    }
    let mut mismatches = Vec::new();
    let mut g_power = PolyMap::identity(f.domain_dim());
    for k in 1..m {
        if k > 1 {
            g_power = compose(&g_power, &g, limits)?;
        }
        let mut closed = PolyMap::zero(f.domain_dim(), f.domain_dim());
        for l in k..m {
            let term = compose(&seq.steps()[l], &g_power, limits)?;
            closed = if l % 2 == 0 { closed.checked_add(&term)? } else { closed.checked_sub(&term)? };
        }
        if closed != q_steps[k] {
            mismatches.push(k);
        }
    }
    Ok(InverseNicetyReport { m, inverse: g, q_steps, mismatches })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportReport {
    pub conjugate: PolyMap,
    /// `(k, P~_k == T^{-1}∘P_k∘T)` for `k = 0..=k_max`.
    pub per_step: Vec<(usize, bool)>,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        self.per_step.iter().all(|(_, ok)| *ok)
    }
}

/// Compares the sequence of `T^{-1}∘F∘T` with the transported sequence of `F`.
/// Zero steps are carried on, so `k_max` may exceed the vanishing step.
pub fn conjugation_transport_check(f: &PolyMap, t: &RatMatrix, k_max: usize, limits: &Limits) -> Result<TransportReport> {
    require_square(f)?;
    let tilde = Factored::conjugate(f, t, limits)?;
    let tinv = t.inverse()?;
    let n = f.domain_dim();
    let (mut p, mut q) = (PolyMap::identity(n), PolyMap::identity(n));
    let mut per_step = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            p = next_step(&p, f, limits)?;
            q = tilde.next_step(&q, limits)?;
        }
        let moved = p.right_mul(t, limits)?.left_mul(&tinv)?;
        per_step.push((k, moved == q));
    }
    Ok(TransportReport { conjugate: tilde.map, per_step })
}

/// `[P_0∘S, P_1∘S, ..., P_t∘S]`, where `S` maps into the domain of `F`.
///
/// Built from the orbit `S, F∘S, F∘F∘S, ...` by repeated differences, since
/// `P_t∘F^j∘S = P_{t-1}∘F^{j+1}∘S - P_{t-1}∘F^j∘S`. This never expands `P_t`
/// itself, and cubic-linear `F` is applied in factored form.
pub fn difference_table(f: &PolyMap, s: &PolyMap, t_max: usize, limits: &Limits) -> Result<Vec<PolyMap>> {
    require_square(f)?;
    if s.codomain_dim() != f.domain_dim() {
        return Err(Error::dims(f.domain_dim(), s.codomain_dim()));
    }
    let cubic = DruzkowskiSpec::recognize(f);
    let mut row = vec![s.clone()];
    for j in 0..t_max {
        let next = match &cubic {
            Some(spec) => spec.apply(&row[j], limits)?,
            None => compose(f, &row[j], limits)?,
        };
        row.push(next);
    }
    let mut out = vec![row[0].clone()];
    for t in 1..=t_max {
        for j in 0..=t_max - t {
            row[j] = row[j + 1].checked_sub(&row[j])?;
        }
        out.push(row[0].clone());
    }
    Ok(out)
}

/// Lowest homogeneous component of `P_k^i` for `k = 1..=k_max`, stopping at
/// the first `k` with `P_k^i = 0`.
///
/// Maps without constant terms are handled modulo `(x)^{D+1}`, which is exact
/// for all components of degree `<= D`; `D` doubles until every requested
/// lowest component is visible or provably absent.
pub fn lowest_term_trace(f: &PolyMap, i: usize, k_max: usize, limits: &Limits) -> Result<Vec<(usize, Polynomial)>> {
    require_square(f)?;
    let n = f.domain_dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, nvars: n });
    }
    if f.has_constant_terms() {
        return trace_with(f, i, k_max, limits, None);
    }
    let deg_f = u64::from(f.degree().unwrap_or(1).max(1));
    let mut cutoff: u32 = 8;
    loop {
        let trace = trace_with(f, i, k_max, limits, Some(cutoff))?;
        let k_end = trace.len() + 1;
        // A truncated zero is final once the cutoff covers every degree P_k^i can have.
        let complete = k_end > k_max || deg_f.checked_pow(k_end as u32).is_some_and(|b| b <= u64::from(cutoff));
        if complete {
            return Ok(trace);
        }
        cutoff = cutoff.checked_mul(2).ok_or_else(|| Error::Invalid("truncation degree overflow".into()))?;
    }
}

fn trace_with(f: &PolyMap, i: usize, k_max: usize, limits: &Limits, cutoff: Option<u32>) -> Result<Vec<(usize, Polynomial)>> {
    let lim = match cutoff {
        Some(d) => limits.truncated(d),
        None => *limits,
    };
    let mut p = Polynomial::var(f.domain_dim(), i);
    if let Some(d) = cutoff {
        p = p.truncate_above(d);
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        p = substitute(&p, f, &lim)?.checked_sub(&p)?;
        if p.is_zero() {
            break;
        }
        out.push((k, p.lowest_component()?));
    }
    Ok(out)
}
