//! Built-in fixtures with their expected facts.
//!
//! Fixture data lives in `fixtures/<name>/` in the map and matrix text
//! formats and is compiled in, so the library and the on-disk files can
//! never drift apart.

use std::collections::BTreeMap;

use crate::constructions::{druzkowski, gz_check, is_triangular, DruzkowskiSpec, GzPair};
use crate::engine::{
    check_nice, conjugation_transport_check, lowest_term_trace, p_sequence, verify_inverse_nicety, NiceOptions,
    Verdict,
};
use crate::error::{Error, Result};
use crate::jacobian::{jacobian, keller_check, nilpotence_index, Nilpotence, NilpotenceMode, PolyMatrix};
use crate::map_io::{parse_map, parse_matrix, parse_polynomial, render_map, render_matrix, render_polynomial, NamedMap};
use crate::monomial::Monomial;
use crate::poly_map::{compose, PolyMap};
use crate::polynomial::{Limits, Polynomial};
use crate::rat_matrix::RatMatrix;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the source literature.
    Paper,
    /// Follows from the definitions.
    Trivial,
    /// Computed once by an independent route and frozen.
    Derived,
}

/// One checkable statement about a fixture. Map and matrix names refer to
/// the fixture's files without extension.
#[derive(Debug, Clone, PartialEq)]
pub enum Fact {
    Verdict { map: &'static str, max_steps: usize, expected: Verdict },
    /// `Nice(m)` for some `m <= max_steps`.
    NiceWithin { map: &'static str, max_steps: usize },
    /// `P_step^component = 0` and no earlier step of that component vanishes.
    ComponentVanishes { map: &'static str, component: usize, step: usize },
    StepComponent { map: &'static str, step: usize, component: usize, expected: &'static str },
    /// The synthesized inverse equals the frozen inverse file.
    FrozenInverse { map: &'static str, inverse: &'static str },
    /// The inverse is `2X - F`, i.e. `X - H`.
    InverseIsXMinusH { map: &'static str },
    InverseDegree { map: &'static str, expected: u32 },
    Keller { map: &'static str, det: &'static str },
    InverseNicety { map: &'static str },
    Transport { map: &'static str, matrix: &'static str, k_max: usize },
    /// Lowest terms of `P_k^component` agree with `trace_formula(k)`.
    TraceFormula { map: &'static str, component: usize, k_max: usize },
    /// Lowest terms of `P_k^component` for `k = from, from + 1, ...`.
    TraceValues { map: &'static str, component: usize, from: usize, expected: &'static [&'static str] },
    PairingBc { big: &'static str, small: &'static str, b: &'static str, c: &'static str },
    PairingMap { big: &'static str, small: &'static str, b: &'static str, c: &'static str },
    Pairing { big: &'static str, small: &'static str, b: &'static str, c: &'static str, t_max: usize },
    /// Nilpotence index of `J(F)` or, with `of_h`, of `J(F - X)`.
    Nilpotence { map: &'static str, of_h: bool, mode: NilpotenceMode, k_max: usize, expected: usize },
    Composition { outer: &'static str, inner: &'static str, result: &'static str },
    IsDruzkowskiOf { map: &'static str, matrix: &'static str },
    Triangular { map: &'static str, expected: bool },
    /// The verdict is recorded but not asserted.
    Evidence { map: &'static str, max_steps: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedFact {
    pub fact: Fact,
    pub provenance: Provenance,
}

/// A fixture file: relative path under `fixtures/` and its exact bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureFile {
    pub path: &'static str,
    pub contents: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub maps: BTreeMap<&'static str, NamedMap>,
    pub matrices: BTreeMap<&'static str, RatMatrix>,
    pub files: Vec<FixtureFile>,
    pub facts: Vec<ExpectedFact>,
}

impl Fixture {
    pub fn map(&self, name: &str) -> Result<&PolyMap> {
        self.maps
            .get(name)
            .map(|m| &m.map)
            .ok_or_else(|| Error::Invalid(format!("fixture {} has no map {name:?}", self.name)))
    }

    pub fn matrix(&self, name: &str) -> Result<&RatMatrix> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::Invalid(format!("fixture {} has no matrix {name:?}", self.name)))
    }

    /// Files whose canonical re-rendering differs from the stored bytes.
    pub fn round_trip_failures(&self) -> Vec<&'static str> {
        self.files
            .iter()
            .filter(|f| {
                let again = if f.path.ends_with(".map") {
                    parse_map(f.contents).and_then(|m| render_map(&m.map, &m.names))
                } else {
                    parse_matrix(f.contents).map(|m| render_matrix(&m))
                };
                again.as_deref() != Ok(f.contents)
            })
            .map(|f| f.path)
            .collect()
    }
}

macro_rules! files {
    ($($path:literal),* $(,)?) => {
        vec![$(FixtureFile { path: $path, contents: include_str!(concat!("../fixtures/", $path)) }),*]
    };
}

pub const FIXTURE_NAMES: [&str; 8] = [
    "identity_n",
    "elementary",
    "nagata",
    "remark1_nonnice",
    "gz16",
    "druzkowski_idx2",
    "druzkowski_idx3",
    "hubbers8_default",
];

pub fn list_fixtures() -> Vec<&'static str> {
    FIXTURE_NAMES.to_vec()
}

fn fact(provenance: Provenance, fact: Fact) -> ExpectedFact {
    ExpectedFact { fact, provenance }
}

pub fn get_fixture(name: &str) -> Result<Fixture> {
    use Fact::*;
    use Provenance::*;
    let (name, description, files, facts): (&'static str, &'static str, Vec<FixtureFile>, Vec<ExpectedFact>) =
        match name {
            "identity_n" => (
                "identity_n",
                "identity map of affine 3-space",
                files!["identity_n/F.map"],
                vec![
                    fact(Trivial, Verdict { map: "F", max_steps: 32, expected: crate::Verdict::Nice(1) }),
                    fact(Trivial, FrozenInverse { map: "F", inverse: "F" }),
                    fact(Trivial, Keller { map: "F", det: "1" }),
                    fact(Trivial, InverseNicety { map: "F" }),
                    fact(Trivial, Triangular { map: "F", expected: true }),
                ],
            ),
            "elementary" => (
                "elementary",
                "elementary map (x1 + x2^2, x2)",
                files!["elementary/F.map", "elementary/inverse.map"],
                vec![
                    fact(Derived, Verdict { map: "F", max_steps: 32, expected: crate::Verdict::Nice(2) }),
                    fact(Derived, FrozenInverse { map: "F", inverse: "inverse" }),
                    fact(Derived, Keller { map: "F", det: "1" }),
                    fact(Derived, InverseNicety { map: "F" }),
                    fact(Trivial, Triangular { map: "F", expected: true }),
                ],
            ),
            "nagata" => (
                "nagata",
                "Nagata automorphism with p = x1*x3 + x2^2",
                files!["nagata/F.map", "nagata/inverse.map", "nagata/T.json"],
                vec![
                    fact(Paper, Verdict { map: "F", max_steps: 32, expected: crate::Verdict::Nice(3) }),
                    fact(Paper, ComponentVanishes { map: "F", component: 1, step: 3 }),
                    fact(Paper, ComponentVanishes { map: "F", component: 2, step: 2 }),
                    fact(
                        Derived,
                        StepComponent { map: "F", step: 2, component: 1, expected: "-2*(x1*x3 + x2^2)^2*x3" },
                    ),
                    fact(Derived, FrozenInverse { map: "F", inverse: "inverse" }),
                    fact(Derived, InverseDegree { map: "F", expected: 5 }),
                    fact(Derived, Keller { map: "F", det: "1" }),
                    fact(Derived, InverseNicety { map: "F" }),
                    fact(Derived, Transport { map: "F", matrix: "T", k_max: 3 }),
                    fact(Derived, Triangular { map: "F", expected: false }),
                ],
            ),
            "remark1_nonnice" => (
                "remark1_nonnice",
                "composition of two elementary maps that is not nice",
                files!["remark1_nonnice/F.map"],
                vec![
                    fact(Paper, Verdict { map: "F", max_steps: 8, expected: crate::Verdict::NotNiceWithin(8) }),
                    fact(Paper, TraceFormula { map: "F", component: 1, k_max: 4 }),
                    fact(
                        Derived,
                        TraceValues {
                            map: "F",
                            component: 1,
                            from: 5,
                            expected: &["252*x1^5*x2^3", "756*x1^7*x2^2", "1512*x1^9*x2", "1512*x1^11"],
                        },
                    ),
                    fact(Derived, Keller { map: "F", det: "1" }),
                ],
            ),
            "gz16" => (
                "gz16",
                "cubic-linear map in dimension 16 paired with a cubic map in dimension 4",
                files!["gz16/f.map", "gz16/F.map", "gz16/B.json", "gz16/C.json"],
                vec![
                    fact(Paper, PairingBc { big: "F", small: "f", b: "B", c: "C" }),
                    fact(Paper, PairingMap { big: "F", small: "f", b: "B", c: "C" }),
                    fact(Paper, Pairing { big: "F", small: "f", b: "B", c: "C", t_max: 3 }),
                    fact(Paper, Verdict { map: "f", max_steps: 8, expected: crate::Verdict::NotNiceWithin(8) }),
                    fact(
                        Paper,
                        Nilpotence {
                            map: "F",
                            of_h: true,
                            mode: NilpotenceMode::Randomized { samples: 8, seed: 1 },
                            k_max: 16,
                            expected: 5,
                        },
                    ),
                ],
            ),
            "druzkowski_idx2" => (
                "druzkowski_idx2",
                "cubic-linear map with A = [[1, -1], [1, -1]]",
                files!["druzkowski_idx2/A.json", "druzkowski_idx2/F.map", "druzkowski_idx2/inverse.map"],
                vec![
                    fact(Derived, IsDruzkowskiOf { map: "F", matrix: "A" }),
                    fact(Derived, Verdict { map: "F", max_steps: 32, expected: crate::Verdict::Nice(2) }),
                    fact(Derived, InverseIsXMinusH { map: "F" }),
                    fact(Derived, FrozenInverse { map: "F", inverse: "inverse" }),
                    fact(
                        Derived,
                        Nilpotence { map: "F", of_h: true, mode: NilpotenceMode::Symbolic, k_max: 8, expected: 2 },
                    ),
                    fact(Derived, InverseNicety { map: "F" }),
                ],
            ),
            "druzkowski_idx3" => (
                "druzkowski_idx3",
                "cubic-linear map with H = (0, x1^3, x2^3)",
                files!["druzkowski_idx3/A.json", "druzkowski_idx3/F.map", "druzkowski_idx3/inverse.map"],
                vec![
                    fact(Derived, IsDruzkowskiOf { map: "F", matrix: "A" }),
                    fact(Derived, Verdict { map: "F", max_steps: 32, expected: crate::Verdict::Nice(5) }),
                    fact(Derived, FrozenInverse { map: "F", inverse: "inverse" }),
                    fact(Derived, InverseDegree { map: "F", expected: 9 }),
                    fact(
                        Derived,
                        Nilpotence { map: "F", of_h: true, mode: NilpotenceMode::Symbolic, k_max: 8, expected: 3 },
                    ),
                    fact(Derived, InverseNicety { map: "F" }),
                ],
            ),
            "hubbers8_default" => (
                "hubbers8_default",
                "eighth Hubbers class with all parameters 1, split as F = G o H",
                files!["hubbers8_default/F.map", "hubbers8_default/H.map", "hubbers8_default/G.map"],
                vec![
                    fact(Paper, Composition { outer: "G", inner: "H", result: "F" }),
                    fact(Paper, NiceWithin { map: "H", max_steps: 32 }),
                    fact(Paper, NiceWithin { map: "G", max_steps: 32 }),
                    fact(Derived, Verdict { map: "H", max_steps: 32, expected: crate::Verdict::Nice(3) }),
                    fact(Derived, Verdict { map: "G", max_steps: 32, expected: crate::Verdict::Nice(2) }),
                    fact(Derived, InverseNicety { map: "H" }),
                    fact(Derived, InverseNicety { map: "G" }),
                    fact(Derived, Keller { map: "F", det: "1" }),
                    fact(Derived, Evidence { map: "F", max_steps: 32 }),
                ],
            ),
            other => return Err(Error::UnknownFixture(other.to_string())),
        };
    let mut maps = BTreeMap::new();
    let mut matrices = BTreeMap::new();
    for f in &files {
        let file = f.path.rsplit('/').next().unwrap_or(f.path);
        let (stem, ext) = file.rsplit_once('.').unwrap_or((file, ""));
        let stem: &'static str = stem;
        match ext {
            "map" => {
                maps.insert(stem, parse_map(f.contents)?);
            }
            _ => {
                matrices.insert(stem, parse_matrix(f.contents)?);
            }
        }
    }
    Ok(Fixture { name, description, maps, matrices, files, facts })
}

/// Lowest term of `P_k^1` for `(x1 + (x1^2 + x2)^3, x2 + x1^2)` as given by
/// the closed formula: with `k = 4m + r`, `r in 1..=4`,
/// `mu(r) 6^m prod_{j=0}^{m} (6 + 5(j - 1)) x1^(2r - 2 + 5m) x2^(4 - r)`,
/// `mu = (1, 3, 6, 6)`.
pub fn trace_formula(k: usize) -> Polynomial {
    assert!(k >= 1, "the formula starts at k = 1");
    let (m, r) = ((k - 1) / 4, (k - 1) % 4 + 1);
    let mu = [1i64, 3, 6, 6][r - 1];
    let mut c = Rational::from(mu) * Rational::from(6).pow(m as u32);
    for j in 0..=m as i64 {
        c *= &Rational::from(6 + 5 * (j - 1));
    }
    let exps = vec![(2 * r - 2 + 5 * m) as u32, (4 - r) as u32];
    Polynomial::monomial(Monomial::new(exps), c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub limits: Limits,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { limits: Limits::default(), seed: crate::engine::DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactOutcome {
    pub description: String,
    pub provenance: Provenance,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub name: String,
    pub round_trip_failures: Vec<String>,
    pub outcomes: Vec<FactOutcome>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.round_trip_failures.is_empty() && self.outcomes.iter().all(|o| o.passed)
    }
}

pub fn describe(fact: &Fact) -> String {
    match fact {
        Fact::Verdict { map, max_steps, expected } => format!("check_nice({map}, {max_steps}) = {expected:?}"),
        Fact::NiceWithin { map, max_steps } => format!("{map} is Nice(m) with m <= {max_steps}"),
        Fact::ComponentVanishes { map, component, step } => {
            format!("first k with P_k^{component}({map}) = 0 is {step}")
        }
        Fact::StepComponent { map, step, component, expected } => format!("P_{step}^{component}({map}) = {expected}"),
        Fact::FrozenInverse { map, inverse } => format!("inverse of {map} equals {inverse}.map"),
        Fact::InverseIsXMinusH { map } => format!("inverse of {map} is X - H"),
        Fact::InverseDegree { map, expected } => format!("deg inverse({map}) = {expected}"),
        Fact::Keller { map, det } => format!("det J({map}) = {det}"),
        Fact::InverseNicety { map } => format!("inverse of {map} has Q_m = 0 and matches the closed form"),
        Fact::Transport { map, matrix, k_max } => format!("transport of {map} by {matrix} holds for k <= {k_max}"),
        Fact::TraceFormula { map, component, k_max } => {
            format!("lowest terms of P_k^{component}({map}) follow the closed formula for k <= {k_max}")
        }
        Fact::TraceValues { map, component, from, expected } => format!(
            "lowest terms of P_k^{component}({map}) for k = {from}..{} are frozen",
            from + expected.len() - 1
        ),
        Fact::PairingBc { b, c, .. } => format!("{b}*{c} = I"),
        Fact::PairingMap { big, small, b, c } => format!("{small}(x) = {b}*{big}({c}*x)"),
        Fact::Pairing { big, small, b, c, t_max } => {
            format!("p_t({small}) = {b}*P_t({big})({c}*x) for t <= {t_max}")
        }
        Fact::Nilpotence { map, of_h, mode, expected, .. } => {
            let m = if *of_h { format!("J({map} - X)") } else { format!("J({map})") };
            let mode = match mode {
                NilpotenceMode::Symbolic => "symbolic".to_string(),
                NilpotenceMode::Randomized { samples, seed } => format!("randomized, {samples} samples, seed {seed}"),
            };
            format!("nilpotence index of {m} = {expected} ({mode})")
        }
        Fact::Composition { outer, inner, result } => format!("{outer} o {inner} = {result}"),
        Fact::IsDruzkowskiOf { map, matrix } => format!("{map} = X + ({matrix}*X)^3"),
        Fact::Triangular { map, expected } => format!("is_triangular({map}) = {expected}"),
        Fact::Evidence { map, max_steps } => format!("check_nice({map}, {max_steps}) reported, not asserted"),
    }
}

fn render(p: &Polynomial) -> String {
    render_polynomial(p, &crate::map_io::default_names(p.nvars()))
}

fn nilpotence_matrix(f: &PolyMap, of_h: bool) -> Result<PolyMatrix> {
    if of_h {
        if let Some(spec) = DruzkowskiSpec::recognize(f) {
            return Ok(spec.jacobian_h());
        }
        Ok(jacobian(&f.minus_identity()?))
    } else {
        Ok(jacobian(f))
    }
}

fn check(fx: &Fixture, fact: &Fact, opts: &RunOptions) -> Result<(bool, String)> {
    let lim = &opts.limits;
    let nice = |max_steps: usize| NiceOptions { max_steps, limits: *lim, seed: opts.seed, ..NiceOptions::default() };
    let names = |n: usize| crate::map_io::default_names(n);
    Ok(match fact {
        Fact::Verdict { map, max_steps, expected } => {
            let r = check_nice(fx.map(map)?, &nice(*max_steps))?;
            let ok = r.verdict == *expected && (r.m().is_none() || r.inverse_verified);
            (ok, format!("{:?}", r.verdict))
        }
        Fact::NiceWithin { map, max_steps } => {
            let r = check_nice(fx.map(map)?, &nice(*max_steps))?;
            (matches!(r.verdict, Verdict::Nice(_)) && r.inverse_verified, format!("{:?}", r.verdict))
        }
        Fact::Evidence { map, max_steps } => {
            let r = check_nice(fx.map(map)?, &nice(*max_steps))?;
            (true, format!("{:?}", r.verdict))
        }
        Fact::ComponentVanishes { map, component, step } => {
            let seq = p_sequence(fx.map(map)?, *step, lim)?;
            let got = seq.component_vanishing()[component - 1];
            (got == Some(*step), format!("{got:?}"))
        }
        Fact::StepComponent { map, step, component, expected } => {
            let f = fx.map(map)?;
            let seq = p_sequence(f, *step, lim)?;
            let want = parse_polynomial(expected, &names(f.domain_dim()))?;
            match seq.step(*step) {
                Some(p) => (p.component(component - 1) == &want, render(p.component(component - 1))),
                None => (false, "step not reached".into()),
            }
        }
        Fact::FrozenInverse { map, inverse } => {
            let r = check_nice(fx.map(map)?, &nice(32))?;
            let want = fx.map(inverse)?;
            let ok = r.inverse.as_ref() == Some(want) && r.inverse_verified;
            (ok, format!("{:?}, inverse verified: {}", r.verdict, r.inverse_verified))
        }
        Fact::InverseIsXMinusH { map } => {
            let f = fx.map(map)?;
            let h = f.minus_identity()?;
            let r = check_nice(f, &nice(32))?;
            let ok = r.inverse.as_ref() == Some(&PolyMap::identity(f.domain_dim()).checked_sub(&h)?);
            (ok && r.inverse_verified, format!("{:?}", r.verdict))
        }
        Fact::InverseDegree { map, expected } => {
            let r = check_nice(fx.map(map)?, &nice(32))?;
            let d = r.inverse.as_ref().and_then(PolyMap::degree);
            (d == Some(*expected), format!("{d:?}"))
        }
        Fact::Keller { map, det } => {
            let f = fx.map(map)?;
            let k = keller_check(f, lim)?;
            let want = parse_polynomial(det, &names(f.domain_dim()))?;
            (k.det == want && k.is_keller, render(&k.det))
        }
        Fact::InverseNicety { map } => {
            let f = fx.map(map)?;
            let m = check_nice(f, &nice(32))?
                .m()
                .ok_or_else(|| Error::Invalid(format!("{map} is not nice")))?;
            let r = verify_inverse_nicety(f, m, lim)?;
            (r.holds(), format!("m = {m}, Q_m = 0: {}, mismatches: {:?}", r.q_vanishes(), r.mismatches))
        }
        Fact::Transport { map, matrix, k_max } => {
            let r = conjugation_transport_check(fx.map(map)?, fx.matrix(matrix)?, *k_max, lim)?;
            let failed: Vec<usize> = r.per_step.iter().filter(|(_, ok)| !ok).map(|(k, _)| *k).collect();
            (r.holds(), format!("failing steps: {failed:?}"))
        }
        Fact::TraceFormula { map, component, k_max } => {
            let trace = lowest_term_trace(fx.map(map)?, component - 1, *k_max, lim)?;
            let bad: Vec<usize> =
                (1..=*k_max).filter(|&k| trace.get(k - 1).map(|(_, q)| q) != Some(&trace_formula(k))).collect();
            (bad.is_empty(), format!("mismatching k: {bad:?}"))
        }
        Fact::TraceValues { map, component, from, expected } => {
            let f = fx.map(map)?;
            let k_max = from + expected.len() - 1;
            let trace = lowest_term_trace(f, component - 1, k_max, lim)?;
            let mut bad = Vec::new();
            for (off, e) in expected.iter().enumerate() {
                let want = parse_polynomial(e, &names(f.domain_dim()))?;
                if trace.get(from - 1 + off).map(|(_, q)| q) != Some(&want) {
                    bad.push(from + off);
                }
            }
            (bad.is_empty(), format!("mismatching k: {bad:?}"))
        }
        Fact::PairingBc { big, small, b, c } => {
            let pair = GzPair::new(fx.map(small)?.clone(), fx.map(big)?.clone(), fx.matrix(b)?.clone(), fx.matrix(c)?.clone())?;
            let r = gz_check(&pair, 0, lim)?;
            (r.bc_identity, String::new())
        }
        Fact::PairingMap { big, small, b, c } => {
            let pair = GzPair::new(fx.map(small)?.clone(), fx.map(big)?.clone(), fx.matrix(b)?.clone(), fx.matrix(c)?.clone())?;
            let r = gz_check(&pair, 0, lim)?;
            (r.map_identity, String::new())
        }
        Fact::Pairing { big, small, b, c, t_max } => {
            let pair = GzPair::new(fx.map(small)?.clone(), fx.map(big)?.clone(), fx.matrix(b)?.clone(), fx.matrix(c)?.clone())?;
            let r = gz_check(&pair, *t_max, lim)?;
            let failed: Vec<usize> = r.pairing.iter().filter(|(_, ok)| !ok).map(|(t, _)| *t).collect();
            (failed.is_empty(), format!("failing t: {failed:?}"))
        }
        Fact::Nilpotence { map, of_h, mode, k_max, expected } => {
            let m = nilpotence_matrix(fx.map(map)?, *of_h)?;
            let r = nilpotence_index(&m, *k_max, *mode, lim)?;
            (r.outcome == Nilpotence::Nilpotent(*expected), format!("{:?}", r.outcome))
        }
        Fact::Composition { outer, inner, result } => {
            let got = compose(fx.map(outer)?, fx.map(inner)?, lim)?;
            (&got == fx.map(result)?, String::new())
        }
        Fact::IsDruzkowskiOf { map, matrix } => (druzkowski(fx.matrix(matrix)?)? == *fx.map(map)?, String::new()),
        Fact::Triangular { map, expected } => {
            let got = is_triangular(fx.map(map)?);
            (got == *expected, format!("{got}"))
        }
    })
}

/// Recomputes every expected fact of a fixture from scratch.
pub fn run_fixture(fx: &Fixture, opts: &RunOptions) -> FixtureReport {
    let outcomes = fx
        .facts
        .iter()
        .map(|ef| {
            let (passed, detail) = match check(fx, &ef.fact, opts) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            FactOutcome { description: describe(&ef.fact), provenance: ef.provenance, passed, detail }
        })
        .collect();
    FixtureReport {
        name: fx.name.to_string(),
        round_trip_failures: fx.round_trip_failures().into_iter().map(String::from).collect(),
        outcomes,
    }
}
