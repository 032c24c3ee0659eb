//! Acceptance run: one PASS/FAIL line per criterion, each under its time
//! limit. Run with `cargo test --test acceptance`.
//!
//! Two criteria require closed forms that disagree with exact computation and
//! are reported as FAIL (listed in `KNOWN_FAILURES`): the lowest-term formula
//! of criterion 2 is wrong from k = 5 on, and the `P_3` form of criterion 5
//! has `9 w_i^3` where exact expansion gives `6 w_i^3`. Each line also shows
//! the independent check that pins down the correct value. Any other failure
//! makes the target fail.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use nicety::constructions::{
    conjugate, gz_check, hubbers_eighth, make_triangular, random_lower_nilpotent, random_rank_one_nilpotent,
    random_unimodular, DruzkowskiSpec, GzPair, HubbersParams, TriangularParams,
};
use nicety::corpus::{get_fixture, list_fixtures};
use nicety::engine::{lowest_term_trace, next_step, p_sequence, p_sequence_factored, synthesize_inverse};
use nicety::jacobian::{jacobian, nilpotence_index, Nilpotence, NilpotenceMode};
use nicety::report::without_timing;
use nicety::{check_nice, check_nice_factored, compose, iterate, Factored, Limits, NiceOptions, PolyMap, Polynomial, RatMatrix, Rational, Verdict};

const KNOWN_FAILURES: &[usize] = &[2, 5];

type Outcome = Result<(bool, String), String>;

fn limits() -> Limits {
    Limits::default()
}

fn opts(max_steps: usize) -> NiceOptions {
    NiceOptions::with_max_steps(max_steps)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn is_id(f: &PolyMap) -> bool {
    *f == PolyMap::identity(f.domain_dim())
}

// ---------------------------------------------------------------- 1

fn nagata() -> Outcome {
    let fx = get_fixture("nagata").map_err(err)?;
    let f = fx.map("F").map_err(err)?;
    let r = check_nice(f, &opts(32)).map_err(err)?;
    let seq = p_sequence(f, 3, &limits()).map_err(err)?;
    let p31 = seq.step(3).map(|p| p.component(0).is_zero()) == Some(true);
    let p22 = seq.step(2).map(|p| p.component(1).is_zero()) == Some(true);
    let g = r.inverse.clone().ok_or("no inverse")?;
    let gf = is_id(&compose(&g, f, &limits()).map_err(err)?);
    let fg = is_id(&compose(f, &g, &limits()).map_err(err)?);
    let dg = g.degree().unwrap_or(0);
    let df = f.degree().unwrap_or(0);
    let ok = r.verdict == Verdict::Nice(3) && p31 && p22 && gf && fg && dg == 5 && dg <= df * df;
    Ok((ok, format!("{:?}, P_3^1 = 0: {p31}, P_2^2 = 0: {p22}, G∘F = id: {gf}, F∘G = id: {fg}, deg G = {dg} <= {}", r.verdict, df * df)))
}

// ---------------------------------------------------------------- 2

/// Bivariate integer power series truncated above a total degree.
#[derive(Clone, PartialEq)]
struct Series {
    cap: u32,
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Series {
    fn zero(cap: u32) -> Self {
        Series { cap, terms: BTreeMap::new() }
    }

    fn term(cap: u32, a: u32, b: u32, c: i64) -> Self {
        let mut s = Series::zero(cap);
        s.add_term((a, b), BigInt::from(c));
        s
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if key.0 + key.1 > self.cap {
            return;
        }
        let e = self.terms.entry(key).or_default();
        *e += c;
        if *e == BigInt::from(0) {
            self.terms.remove(&key);
        }
    }

    fn add(&self, other: &Series, sign: i64) -> Series {
        let mut s = self.clone();
        for (k, c) in &other.terms {
            s.add_term(*k, c * sign);
        }
        s
    }

    fn mul(&self, other: &Series) -> Series {
        let mut s = Series::zero(self.cap);
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &other.terms {
                s.add_term((a + d, b + e), c * f);
            }
        }
        s
    }

    fn one(cap: u32) -> Series {
        Series::term(cap, 0, 0, 1)
    }

    /// `self(g1, g2)`; the `g` have no constant term.
    fn compose(&self, g1: &Series, g2: &Series) -> Series {
        let mut p1 = vec![Series::one(self.cap)];
        let mut p2 = vec![Series::one(self.cap)];
        for _ in 0..self.cap {
            p1.push(p1.last().unwrap().mul(g1));
            p2.push(p2.last().unwrap().mul(g2));
        }
        let mut out = Series::zero(self.cap);
        for ((a, b), c) in &self.terms {
            let t = p1[*a as usize].mul(&p2[*b as usize]);
            for (k, v) in t.terms {
                out.add_term(k, v * c);
            }
        }
        out
    }

    fn lowest(&self) -> Vec<((u32, u32), BigInt)> {
        let d = self.terms.keys().map(|(a, b)| a + b).min();
        self.terms.iter().filter(|((a, b), _)| Some(a + b) == d).map(|(k, c)| (*k, c.clone())).collect()
    }
}

/// Lowest homogeneous part of `P_k^1` for `(x1 + (x1^2 + x2)^3, x2 + x1^2)`
/// by plain series expansion up to total degree 14.
fn brute_force_trace(k_max: usize) -> Vec<Vec<((u32, u32), BigInt)>> {
    let cap = 14;
    let u = Series::term(cap, 2, 0, 1).add(&Series::term(cap, 0, 1, 1), 1);
    let f1 = Series::term(cap, 1, 0, 1).add(&u.mul(&u).mul(&u), 1);
    let f2 = u.clone();
    let mut p = (Series::term(cap, 1, 0, 1), Series::term(cap, 0, 1, 1));
    let mut out = Vec::new();
    for _ in 0..k_max {
        p = (p.0.compose(&f1, &f2).add(&p.0, -1), p.1.compose(&f1, &f2).add(&p.1, -1));
        out.push(p.0.lowest());
    }
    out
}

/// `mu(r) 6^m prod_{j=0}^{m} (6 + 5(j - 1)) x1^(2r - 2 + 5m) x2^(4 - r)`, `k = 4m + r`.
fn formula(k: usize) -> ((u32, u32), BigInt) {
    let (m, r) = ((k - 1) / 4, (k - 1) % 4 + 1);
    let mu = [1i64, 3, 6, 6][r - 1];
    let mut c = BigInt::from(mu) * BigInt::from(6).pow(m as u32);
    for j in 0..=m as i64 {
        c *= 6 + 5 * (j - 1);
    }
    (((2 * r - 2 + 5 * m) as u32, (4 - r) as u32), c)
}

fn as_terms(p: &Polynomial) -> Vec<((u32, u32), BigInt)> {
    p.terms()
        .iter()
        .map(|(m, c)| ((m.exponent(0), m.exponent(1)), c.numer()))
        .collect()
}

fn remark1() -> Outcome {
    let fx = get_fixture("remark1_nonnice").map_err(err)?;
    let f = fx.map("F").map_err(err)?;
    let r = check_nice(f, &opts(8)).map_err(err)?;
    let engine = lowest_term_trace(f, 0, 8, &limits()).map_err(err)?;
    let brute = brute_force_trace(8);
    let mut oracle_ok = engine.len() == 8;
    let mut formula_bad = Vec::new();
    for (k, q) in &engine {
        let got = as_terms(q);
        oracle_ok &= got == brute[k - 1];
        if got != vec![formula(*k)] {
            formula_bad.push(*k);
        }
    }
    let spot = |k: usize| engine.get(k - 1).map(|(_, q)| q.to_string()).unwrap_or_default();
    let ok = r.verdict == Verdict::NotNiceWithin(8) && oracle_ok && formula_bad.is_empty();
    Ok((
        ok,
        format!(
            "{:?}; engine = brute-force expansion for k = 1..8: {oracle_ok}; formula mismatches at k = {formula_bad:?} \
             (k=1: {}, k=2: {}, k=5: {} vs formula {})",
            r.verdict,
            spot(1),
            spot(2),
            spot(5),
            formula(5).1
        ),
    ))
}

// ---------------------------------------------------------------- 3

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `sum_j (-1)^(t-j) C(t, j) h^j(x)`, evaluated pointwise.
fn orbit_difference(h: &PolyMap, x: &[Rational], t: usize) -> Result<Vec<Rational>, String> {
    let mut orbit = vec![x.to_vec()];
    for _ in 0..t {
        let next = h.evaluate(orbit.last().unwrap()).map_err(err)?;
        orbit.push(next);
    }
    let mut out = vec![Rational::zero(); x.len()];
    for (j, y) in orbit.iter().enumerate() {
        let c = Rational::from(binomial(t, j) * if (t - j).is_multiple_of(2) { 1 } else { -1 });
        for (o, v) in out.iter_mut().zip(y) {
            *o += &(c.clone() * v.clone());
        }
    }
    Ok(out)
}

fn gz() -> Outcome {
    let fx = get_fixture("gz16").map_err(err)?;
    let (f, big) = (fx.map("f").map_err(err)?, fx.map("F").map_err(err)?);
    let (b, c) = (fx.matrix("B").map_err(err)?, fx.matrix("C").map_err(err)?);
    let bc = b.mul(c).map_err(err)? == RatMatrix::identity(4);
    let pulled = compose(big, &PolyMap::linear(c), &limits()).map_err(err)?.left_mul(b).map_err(err)?;
    let map_id = pulled == *f;
    let pair = GzPair::new(f.clone(), big.clone(), b.clone(), c.clone()).map_err(err)?;
    let rep = gz_check(&pair, 3, &limits()).map_err(err)?;
    let symbolic = rep.pairing.len() == 4 && rep.pairing.iter().all(|(_, ok)| *ok);
    let mut pointwise = true;
    for x in [[1i64, -2, 3, 1], [2, 1, -1, -3], [-1, 3, 2, 2]] {
        let x: Vec<Rational> = x.iter().map(|&v| Rational::from(v)).collect();
        let cx = c.mul_vec(&x).map_err(err)?;
        for t in 0..=3 {
            let lhs = orbit_difference(f, &x, t)?;
            let rhs = b.mul_vec(&orbit_difference(big, &cx, t)?).map_err(err)?;
            pointwise &= lhs == rhs;
        }
    }
    let jh = jacobian(&big.minus_identity().map_err(err)?);
    let nil = nilpotence_index(&jh, 32, NilpotenceMode::Randomized { samples: 8, seed: 1 }, &limits()).map_err(err)?;
    let ok = bc && map_id && symbolic && pointwise && nil.outcome == Nilpotence::Nilpotent(5);
    Ok((
        ok,
        format!(
            "BC = I: {bc}, f = B F(Cx): {map_id}, pairing t <= 3 symbolic: {symbolic}, pointwise: {pointwise}, randomized index: {:?}",
            nil.outcome
        ),
    ))
}

// ---------------------------------------------------------------- 4

fn rank_one() -> Outcome {
    let mut failures = Vec::new();
    for s in 0..25u64 {
        let n = 2 + (s as usize % 5);
        let a = random_rank_one_nilpotent(n, 4, 1000 + s);
        let spec = DruzkowskiSpec::new(a).map_err(err)?;
        let f = spec.build();
        let h = f.minus_identity().map_err(err)?;
        let jh = jacobian(&h);
        let sq_zero = jh.mul(&jh, &limits()).map_err(err)?.is_zero();
        let r = check_nice(&f, &opts(32)).map_err(err)?;
        let inv_ok = r.inverse.as_ref() == Some(&(&PolyMap::identity(n) - &h));
        if !(sq_zero && r.verdict == Verdict::Nice(2) && inv_ok) {
            failures.push((n, s, sq_zero, r.verdict, inv_ok));
        }
    }
    Ok((failures.is_empty(), format!("25 maps, n = 2..6; failures: {failures:?}")))
}

// ---------------------------------------------------------------- 5

/// Returns `(P_3, P_4)` from `L = AX`, `w = A L^3`:
/// `P_4^i = 6 w_i^3`, `P_3^i = 6 L_i w_i^2 + c3 w_i^3`.
fn closed_forms(a: &RatMatrix, c3: i64) -> (PolyMap, PolyMap) {
    let n = a.rows();
    let l: Vec<Polynomial> = (0..n).map(|i| Polynomial::linear(a.row(i))).collect();
    let cubes: Vec<Polynomial> = l.iter().map(|p| p.pow(3).unwrap()).collect();
    let w: Vec<Polynomial> = (0..n)
        .map(|i| {
            (0..n).fold(Polynomial::zero(n), |acc, j| acc + cubes[j].scale(a.get(i, j)))
        })
        .collect();
    let p4: Vec<Polynomial> = w.iter().map(|wi| wi.pow(3).unwrap().scale(&Rational::from(6))).collect();
    let p3: Vec<Polynomial> = (0..n)
        .map(|i| (l[i].clone() * w[i].pow(2).unwrap()).scale(&Rational::from(6)) + w[i].pow(3).unwrap().scale(&Rational::from(c3)))
        .collect();
    (PolyMap::new(n, p3).unwrap(), PolyMap::new(n, p4).unwrap())
}

fn index_three() -> Outcome {
    let fx = get_fixture("druzkowski_idx3").map_err(err)?;
    let mut cases = vec![fx.matrix("A").map_err(err)?.clone()];
    for s in 0..10u64 {
        cases.push(random_lower_nilpotent(3, 3, 2000 + s));
        cases.push(random_lower_nilpotent(4, 3, 3000 + s));
    }
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut six_holds = 0;
    for a in &cases {
        let f = DruzkowskiSpec::new(a.clone()).map_err(err)?.build();
        let seq = p_sequence(&f, 5, &limits()).map_err(err)?;
        let vanish = seq.vanishing_step().filter(|m| *m <= 5);
        let p5 = vanish.is_some();
        let deg_ok = match vanish {
            Some(m) => synthesize_inverse(&seq, m).map_err(err)?.degree().unwrap_or(0) <= 9,
            None => false,
        };
        let (p3, p4) = closed_forms(a, 9);
        let (p3_six, _) = closed_forms(a, 6);
        let zero = PolyMap::zero(a.rows(), a.rows());
        let p3_ok = seq.step(3).unwrap_or(&zero) == &p3;
        let p4_ok = seq.step(4).unwrap_or(&zero) == &p4;
        if seq.step(3).unwrap_or(&zero) == &p3_six {
            six_holds += 1;
        }
        for (what, ok) in [("P_5 = 0", p5), ("deg <= 9", deg_ok), ("P_3 closed form", p3_ok), ("P_4 closed form", p4_ok)] {
            if !ok {
                *failures.entry(what).or_insert(0) += 1;
            }
        }
    }
    let total = cases.len();
    Ok((
        failures.is_empty(),
        format!("{total} matrices; failing clauses (count): {failures:?}; P_3 = 6 L w^2 + 6 w^3 holds for {six_holds}/{total}"),
    ))
}

// ---------------------------------------------------------------- 6

fn triangular() -> Outcome {
    let params = TriangularParams::default();
    let mut bad = Vec::new();
    let mut max_m = 0;
    let mut maps = Vec::new();
    for s in 0..100u64 {
        let n = 1 + (s as usize % 5);
        let f = make_triangular(n, &params, 4000 + s);
        let r = check_nice(&f, &opts(64)).map_err(err)?;
        match r.m() {
            Some(m) => {
                max_m = max_m.max(m);
                maps.push((f, m));
            }
            None => bad.push((s, r.verdict)),
        }
    }
    let mut conj_bad = Vec::new();
    for (s, (f, m)) in maps.iter().enumerate().take(50) {
        let n = f.domain_dim();
        let t = random_unimodular(n, 2, 5000 + s as u64);
        let tinv = t.inverse().map_err(err)?;
        let g = Factored::conjugate(f, &t, &limits()).map_err(err)?;
        if *g.map() != conjugate(f, &t, &limits()).map_err(err)? {
            conj_bad.push((s, *m, Verdict::NotNiceWithin(0), false));
            continue;
        }
        let r = check_nice_factored(&g, &opts(64)).map_err(err)?;
        let ps = p_sequence(f, *m, &limits()).map_err(err)?;
        let qs = p_sequence_factored(&g, *m, &limits()).map_err(err)?;
        let mut transport = true;
        for k in 0..=*m {
            let moved = compose(ps.step(k).ok_or("missing step")?, &PolyMap::linear(&t), &limits())
                .map_err(err)?
                .left_mul(&tinv)
                .map_err(err)?;
            transport &= qs.step(k) == Some(&moved);
        }
        if r.m() != Some(*m) || !transport {
            conj_bad.push((s, *m, r.verdict, transport));
        }
    }
    let ok = bad.is_empty() && conj_bad.is_empty() && max_m <= 64;
    Ok((ok, format!("100 maps nice, max m = {max_m}; non-nice: {bad:?}; conjugate failures: {conj_bad:?}")))
}

// ---------------------------------------------------------------- 7

fn inverse_nicety() -> Outcome {
    let mut cases = Vec::new();
    for (fixture, map) in [
        ("identity_n", "F"),
        ("elementary", "F"),
        ("nagata", "F"),
        ("druzkowski_idx2", "F"),
        ("druzkowski_idx3", "F"),
        ("hubbers8_default", "H"),
        ("hubbers8_default", "G"),
    ] {
        cases.push((format!("{fixture}/{map}"), get_fixture(fixture).map_err(err)?.map(map).map_err(err)?.clone()));
    }
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (label, f) in &cases {
        let m = check_nice(f, &opts(32)).map_err(err)?.m().ok_or(format!("{label} not nice"))?;
        let seq = p_sequence(f, m, &limits()).map_err(err)?;
        let g = synthesize_inverse(&seq, m).map_err(err)?;
        let mut q = vec![PolyMap::identity(f.domain_dim())];
        for k in 1..=m {
            q.push(next_step(&q[k - 1], &g, &limits()).map_err(err)?);
        }
        let mut ok = q[m].is_zero();
        for k in 1..m {
            let gk = iterate(&g, k - 1, &limits()).map_err(err)?;
            let mut sum = PolyMap::zero(f.domain_dim(), f.domain_dim());
            for l in k..m {
                let term = compose(seq.step(l).ok_or("missing step")?, &gk, &limits()).map_err(err)?;
                sum = if l % 2 == 0 { &sum + &term } else { &sum - &term };
            }
            ok &= sum == q[k];
        }
        summary.push(format!("{label}: m = {m}"));
        if !ok {
            failures.push(label.clone());
        }
    }
    Ok((failures.is_empty(), format!("{}; failures: {failures:?}", summary.join(", "))))
}

// ---------------------------------------------------------------- 8

fn hubbers() -> Outcome {
    let maps = hubbers_eighth(&HubbersParams::default()).map_err(err)?;
    let composed = compose(&maps.g, &maps.h, &limits()).map_err(err)? == maps.f;
    let h = check_nice(&maps.h, &opts(32)).map_err(err)?;
    let g = check_nice(&maps.g, &opts(32)).map_err(err)?;
    let f = check_nice(&maps.f, &opts(32)).map_err(err)?;
    let ok = composed && h.m().is_some_and(|m| m <= 32) && g.m().is_some_and(|m| m <= 32);
    Ok((ok, format!("G∘H = F: {composed}, H: {:?}, G: {:?}, F (reported only): {:?}", h.verdict, g.verdict, f.verdict)))
}

// ---------------------------------------------------------------- 9

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("corpus.json");
    let mut texts = Vec::new();
    for _ in 0..2 {
        let (mut out, mut errs) = (Vec::new(), Vec::new());
        let code = nicety::cli::run(
            ["nicety", "corpus", "run", "--json", path.to_str().unwrap()],
            &mut out,
            &mut errs,
        );
        if code != 0 {
            return Ok((false, format!("corpus run exited {code}: {}", String::from_utf8_lossy(&errs))));
        }
        let json = std::fs::read_to_string(&path).map_err(err)?;
        texts.push(without_timing(&json).map_err(err)?);
    }
    let identical = texts[0] == texts[1];
    let mut round_trip = Vec::new();
    for name in list_fixtures() {
        let fx = get_fixture(name).map_err(err)?;
        round_trip.extend(fx.round_trip_failures().into_iter().map(String::from));
    }
    Ok((identical && round_trip.is_empty(), format!("identical JSON modulo timing: {identical}; round-trip failures: {round_trip:?}")))
}

fn main() {
    let criteria: [(usize, &str, Duration, fn() -> Outcome); 9] = [
        (1, "Nagata automorphism is Nice(3) with verified inverse", Duration::from_secs(1), nagata),
        (2, "non-nice composition: verdict and lowest-term formula", Duration::from_secs(30), remark1),
        (3, "cubic pairing in dimensions 4 and 16", Duration::from_secs(120), gz),
        (4, "rank-one cubic-linear maps are Nice(2) with inverse X - H", Duration::from_secs(30), rank_one),
        (5, "index-3 cubic-linear maps: P_5 = 0, closed forms of P_3, P_4", Duration::from_secs(60), index_three),
        (6, "triangular maps and their conjugates", Duration::from_secs(120), triangular),
        (7, "inverse sequences of nice fixtures", Duration::from_secs(60), inverse_nicety),
        (8, "eighth Hubbers class factors", Duration::from_secs(120), hubbers),
        (9, "determinism and round-trip", Duration::from_secs(120), determinism),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && elapsed <= limit, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let timing = format!("{:.2}s / limit {}s", elapsed.as_secs_f64(), limit.as_secs());
        println!("{} criterion {id}: {name} [{timing}] {detail}", if ok { "PASS" } else { "FAIL" });
        if ok {
            passed += 1;
        } else if !KNOWN_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    println!("{passed}/9 criteria pass; known failures: {KNOWN_FAILURES:?}");
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
