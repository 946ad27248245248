//! Named verification suites. Each suite is a list of independent tasks run
//! in parallel; results are collected in task order, so a report depends only
//! on the suite name and the seed.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use qsp_core::barcheck::{self, bar_exists, canonical_params, corollary_conditions};
use qsp_core::braid::{apply_word, t_i, BraidOperator};
use qsp_core::cartan::{enumerate_admissible, AdmissiblePair, CartanDatum, RootVector, WeylWord};
use qsp_core::qsp::{closed_form, serre_defect, c_oracle, CSource, Presentation, QspContext, QspError, QspParams};
use qsp_core::scalar::{qbinom, qshifted_factorial};
use qsp_core::uqg::{Algebra, Element, Tensor};
use qsp_core::Scalar;

use crate::error::CliError;
use crate::random;

pub const SUITES: [&str; 10] = [
    "scalar-combinatorics",
    "hopf",
    "derivations",
    "braid",
    "sigma-tau-invariance",
    "nu-atlas",
    "bar-z",
    "cij-closed-vs-oracle",
    "bar-decisions",
    "round-trip",
];

/// Finite types covered by the pair atlas.
pub const ATLAS: [&str; 9] = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub subject: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A computed value that is reported without being asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub subject: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub observations: Vec<Observation>,
}

impl SuiteReport {
    /// One line per identity with pass counts, then failing subjects and
    /// observations.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let mut order: Vec<&str> = Vec::new();
        for c in &self.checks {
            if !order.contains(&c.identity.as_str()) {
                order.push(&c.identity);
            }
        }
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        for id in order {
            let all: Vec<&Check> = self.checks.iter().filter(|c| c.identity == id).collect();
            let ok = all.iter().filter(|c| c.passed).count();
            let _ = writeln!(out, "  {id}: {ok}/{} passed", all.len());
            for c in all.iter().filter(|c| !c.passed) {
                let _ = write!(out, "    FAIL {}", c.subject);
                if let Some(d) = &c.detail {
                    let _ = write!(out, ": {d}");
                }
                out.push('\n');
            }
        }
        for o in &self.observations {
            let _ = writeln!(out, "  observed {}: {}", o.subject, o.value);
        }
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

type Res = Result<bool, Box<dyn std::error::Error + Send + Sync>>;

#[derive(Default)]
struct Out {
    checks: Vec<Check>,
    observations: Vec<Observation>,
}

impl Out {
    fn check(&mut self, identity: &str, subject: impl Into<String>, f: impl FnOnce() -> Res) {
        let (passed, detail) = match f() {
            Ok(b) => (b, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Check {
            identity: identity.to_string(),
            subject: subject.into(),
            passed,
            detail,
        });
    }

    fn observe(&mut self, subject: impl Into<String>, value: impl Into<String>) {
        self.observations.push(Observation {
            subject: subject.into(),
            value: value.into(),
        });
    }
}

/// Datum name, `X` and `tau` by node label.
type LabelledPair = (&'static str, Vec<i64>, Vec<(i64, i64)>);

/// A labelled pair with an optional single `(i, j)` to restrict to.
type PairCase = (&'static str, Vec<i64>, Vec<(i64, i64)>, Option<(i64, i64)>);

type Task = Box<dyn Fn(&mut ChaCha8Rng, &mut Out) + Send + Sync>;

fn task(f: impl Fn(&mut ChaCha8Rng, &mut Out) + Send + Sync + 'static) -> Task {
    Box::new(f)
}

#[derive(Clone, Copy)]
struct Env {
    max_bucket: usize,
}

impl Env {
    fn algebra(&self, name: &str) -> Arc<Algebra> {
        Arc::new(Algebra::with_max_bucket(datum(name), self.max_bucket))
    }
}

/// Built-in data by name; `A1xA1` is the decomposable rank-2 datum.
pub fn datum(name: &str) -> Arc<CartanDatum> {
    let d = match name {
        "A1xA1" => CartanDatum::from_matrix(vec![vec![2, 0], vec![0, 2]]),
        _ => CartanDatum::by_name(name),
    };
    Arc::new(d.expect("built-in Cartan datum"))
}

fn context(alg: &Arc<Algebra>, pair: AdmissiblePair) -> Result<Arc<QspContext>, QspError> {
    Ok(Arc::new(QspContext::with_algebra(alg.clone(), Arc::new(pair))?))
}

fn labelled(alg: &Arc<Algebra>, x: &[i64], tau: &[(i64, i64)]) -> Arc<QspContext> {
    let pair = AdmissiblePair::from_labels(alg.datum_arc().clone(), x, tau).expect("built-in pair");
    context(alg, pair).expect("built-in pair")
}

/// Runs a suite with the ambient rayon pool.
pub fn run_suite(name: &str, seed: u64, max_bucket: usize) -> Result<SuiteReport, CliError> {
    let env = Env { max_bucket };
    let tasks = match name {
        "scalar-combinatorics" => scalar_combinatorics(),
        "hopf" => hopf(env),
        "derivations" => derivations(env),
        "braid" => braid(env),
        "sigma-tau-invariance" => sigma_tau(env),
        "nu-atlas" => nu_atlas(env),
        "bar-z" => bar_z(env),
        "cij-closed-vs-oracle" => cij(env),
        "bar-decisions" => bar_decisions(env),
        "round-trip" => round_trip(env),
        other => {
            return Err(CliError::Input(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let outs: Vec<Out> = tasks
        .par_iter()
        .enumerate()
        .map(|(k, t)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut out = Out::default();
            t(&mut rng, &mut out);
            out
        })
        .collect();
    let mut checks = Vec::new();
    let mut observations = Vec::new();
    for o in outs {
        checks.extend(o.checks);
        observations.extend(o.observations);
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
        observations,
    })
}

fn scalar_combinatorics() -> Vec<Task> {
    vec![task(|_, out| {
        for eps in 1..=3i64 {
            for m in 1..=6i64 {
                let subject = format!("m={m}, q_i=q^{eps}");
                let alternating = |shift: i64| -> Scalar {
                    (0..=m)
                        .map(|k| {
                            let sign = Scalar::from_int(if k % 2 == 0 { 1 } else { -1 });
                            sign * qbinom(m, k, eps) * Scalar::q_pow(eps * shift * k)
                        })
                        .sum()
                };
                out.check("q-binomial-alternating-sum-vanishes", subject.clone(), || {
                    Ok(alternating(m - 1).is_zero() && alternating(1 - m).is_zero())
                });
                out.check("q-binomial-sum-equals-shifted-factorial", subject.clone(), || {
                    Ok(alternating(m + 1) == qshifted_factorial(&Scalar::q_pow(2 * eps), m as u32))
                });
                out.check("bar-of-shifted-factorial", subject, || {
                    let x = qshifted_factorial(&Scalar::q_pow(2 * eps), m as u32);
                    Ok(x.bar() == qshifted_factorial(&Scalar::q_pow(-2 * eps), m as u32))
                });
            }
        }
    })]
}

fn sign(n: i64) -> Scalar {
    Scalar::from_int(if n.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn generators(a: &Algebra) -> Vec<Element> {
    (0..a.rank())
        .flat_map(|i| [a.e(i), a.f(i), a.k_simple(i, 1)])
        .collect()
}

fn tensor_mul(a: &Algebra, x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::zero(2);
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            let c = cx * cy;
            let first = a.mul_monomials(&mx[0], &my[0]);
            let second = a.mul_monomials(&mx[1], &my[1]);
            for (m1, c1) in first.iter() {
                for (m2, c2) in second.iter() {
                    out.add_term(vec![m1.clone(), m2.clone()], &c * &(c1 * c2));
                }
            }
        }
    }
    out
}

const HOPF_DATA: [&str; 6] = ["A2", "B2", "G2", "A3", "B3", "affine:A1"];

fn hopf(env: Env) -> Vec<Task> {
    let mut tasks = Vec::new();
    for name in HOPF_DATA {
        let a = env.algebra(name);
        let alg = a.clone();
        tasks.push(task(move |_, out| {
            let a = &alg;
            let n = a.rank();
            let d = a.datum();
            out.check("cartan-part-commutes", name, || {
                for i in 0..n {
                    if !a.equals(&a.mul(&a.k_simple(i, 1), &a.k_simple(i, -1)), &a.one())? {
                        return Ok(false);
                    }
                    for j in 0..n {
                        let l = a.mul(&a.k_simple(i, 1), &a.k_simple(j, 1));
                        let r = a.mul(&a.k_simple(j, 1), &a.k_simple(i, 1));
                        if !a.equals(&l, &r)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            });
            for (id, e_side) in [("k-conjugates-e", true), ("k-conjugates-f", false)] {
                out.check(id, name, || {
                    for i in 0..n {
                        for j in 0..n {
                            let x = if e_side { a.e(j) } else { a.f(j) };
                            let p = d.form(&d.simple(i), &d.simple(j));
                            let l = a.mul(&a.k_simple(i, 1), &x);
                            let r = a.mul(&x, &a.k_simple(i, 1)).scale(&Scalar::q_pow(if e_side { p } else { -p }));
                            if !a.equals(&l, &r)? {
                                return Ok(false);
                            }
                        }
                    }
                    Ok(true)
                });
            }
            out.check("e-f-commutator", name, || {
                for i in 0..n {
                    for j in 0..n {
                        let l = a.mul(&a.e(i), &a.f(j)) - a.mul(&a.f(j), &a.e(i));
                        let r = if i == j {
                            (a.k_simple(i, 1) - a.k_simple(i, -1)).scale(a.qdiff_inv(i))
                        } else {
                            Element::zero()
                        };
                        if !a.equals(&l, &r)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            });
            out.check("quantum-serre-relations", name, || {
                for i in 0..n {
                    for j in (0..n).filter(|&j| j != i) {
                        if !a.is_zero(&a.serre_polynomial(i, j, &a.e(i), &a.e(j)))?
                            || !a.is_zero(&a.serre_polynomial(i, j, &a.f(i), &a.f(j)))?
                        {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            });
        }));
        for chunk in 0..2 {
            let a = a.clone();
            tasks.push(task(move |rng, out| {
                let a = &a;
                let mut samples = if chunk == 0 { generators(a) } else { Vec::new() };
                for _ in 0..5 {
                    samples.push(random::element(a, rng, 3, 3));
                }
                for x in &samples {
                    let subject = format!("{name} {}", a.format(x));
                    let d = a.coproduct(x);
                    out.check("coassociativity", subject.clone(), || {
                        Ok(a.tensor_is_zero(&(&a.coproduct_at(&d, 0) - &a.coproduct_at(&d, 1)))?)
                    });
                    out.check("counit", subject.clone(), || {
                        let l = a.tensor_to_element(&a.counit_at(&d, 0));
                        let r = a.tensor_to_element(&a.counit_at(&d, 1));
                        Ok(a.equals(&l, x)? && a.equals(&r, x)?)
                    });
                    out.check("antipode", subject.clone(), || {
                        let unit = a.scalar(a.counit(x));
                        let l = a.multiply_factors(&d.map_slot(0, |m| a.antipode_monomial(m)));
                        let r = a.multiply_factors(&d.map_slot(1, |m| a.antipode_monomial(m)));
                        Ok(a.equals(&l, &unit)? && a.equals(&r, &unit)?)
                    });
                    let y = random::element(a, rng, 2, 3);
                    let pair_subject = format!("{subject} ; {}", a.format(&y));
                    out.check("coproduct-is-multiplicative", pair_subject.clone(), || {
                        let l = a.coproduct(&a.mul(x, &y));
                        let r = tensor_mul(a, &d, &a.coproduct(&y));
                        Ok(a.tensor_is_zero(&(&l - &r))?)
                    });
                    out.check("antipode-reverses-products", pair_subject, || {
                        let l = a.antipode(&a.mul(x, &y));
                        let r = a.mul(&a.antipode(&y), &a.antipode(x));
                        Ok(a.equals(&l, &r)?)
                    });
                }
            }));
        }
    }
    tasks
}

fn derivations(env: Env) -> Vec<Task> {
    let mut tasks = Vec::new();
    for name in HOPF_DATA {
        let a = env.algebra(name);
        // 50 words per datum in five tasks
        for _ in 0..5 {
            let a = a.clone();
            tasks.push(task(move |rng, out| {
                let a = &a;
                let d = a.datum();
                let n = a.rank();
                for _ in 0..10 {
                    let len = rand::Rng::gen_range(rng, 1..=5);
                    let w = random::word(rng, n, len);
                    let x = a.e_word(&w);
                    let beta = qsp_core::uqg::word_degree(n, &w);
                    let subject = format!("{name} {}", a.format(&x));
                    out.check("skew-derivations-f-commutator", subject.clone(), || {
                        for i in 0..n {
                            let l = a.mul(&x, &a.f(i)) - a.mul(&a.f(i), &x);
                            let r = a.mul_k_right(&a.skew_r(i, &x)?, &d.simple(i));
                            let ir = a.mul_k_left(&-&d.simple(i), &a.skew_ir(i, &x)?);
                            if !a.equals(&l, &(r - ir).scale(a.qdiff_inv(i)))? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    });
                    out.check("sigma-intertwines-skew-derivations", subject.clone(), || {
                        if !a.equals(&a.sigma(&a.sigma(&x)), &x)? {
                            return Ok(false);
                        }
                        for i in 0..n {
                            let l = a.sigma(&a.skew_r(i, &x)?);
                            let r = a.skew_ir(i, &a.sigma(&x))?;
                            if !a.equals(&l, &r)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    });
                    let u = random::homogeneous(a, rng, &w);
                    out.check("bar-intertwines-skew-derivations", format!("{name} {}", a.format(&u)), || {
                        for i in 0..n {
                            let ai = d.simple(i);
                            let l = a.bar(&a.skew_r(i, &u)?);
                            let c = Scalar::q_pow(d.form(&ai, &(&ai - &beta)));
                            let r = a.skew_ir(i, &a.bar(&u))?.scale(&c);
                            if !a.equals(&l, &r)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    });
                    out.check("skew-derivations-from-coproduct", subject, || {
                        let zero = RootVector::zero(n);
                        for i in 0..n {
                            let ai = d.simple(i);
                            let ei = qsp_core::uqg::Monomial::e_word(n, &[i as u8]);
                            // Delta(x) = ... + r_i(x) K_i (x) E_i + ...
                            let t = a.coproduct_projected(&x, &ai, &zero).filter(|ms| ms[1] == ei);
                            let expected = Tensor::pure(&a.mul_k_right(&a.skew_r(i, &x)?, &ai), &a.e(i));
                            if !a.tensor_is_zero(&(&t - &expected))? {
                                return Ok(false);
                            }
                            // Delta(x) = ... + E_i K_{beta - alpha_i} (x) {}_i r(x) + ...
                            let rest = &beta - &ai;
                            if rest.iter().any(|&c| c < 0) {
                                continue;
                            }
                            let left = qsp_core::uqg::Monomial {
                                e: vec![i as u8],
                                k: rest.clone(),
                                f: Vec::new(),
                            };
                            let t = a.coproduct_projected(&x, &rest, &zero).filter(|ms| ms[0] == left);
                            let expected = Tensor::pure(&Element::from_monomial(left.clone(), Scalar::one()), &a.skew_ir(i, &x)?);
                            if !a.tensor_is_zero(&(&t - &expected))? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    });
                }
            }));
        }
    }
    tasks
}

/// A reduced word for `w` obtained by repeatedly splitting off the smallest
/// or largest left descent in `x`.
fn greedy_word(d: &CartanDatum, w: &WeylWord, x: &[usize], largest: bool) -> WeylWord {
    let mut current = w.clone();
    let mut out = Vec::new();
    loop {
        let inv = current.reversed();
        let descents: Vec<usize> = x
            .iter()
            .copied()
            .filter(|&j| d.weyl_action(&inv, &d.simple(j)).is_negative())
            .collect();
        let pick = if largest { descents.last() } else { descents.first() };
        match pick {
            Some(&j) if out.len() < w.len() => {
                out.push(j);
                current.0.insert(0, j);
            }
            _ => break,
        }
    }
    WeylWord(out)
}

fn braid(env: Env) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (name, m) in [("A1xA1", 2usize), ("A2", 3), ("B2", 4), ("G2", 6)] {
        let a = env.algebra(name);
        {
            let a = a.clone();
            tasks.push(task(move |_, out| {
                let a = &a;
                let w1 = WeylWord((0..m).map(|k| k % 2).collect());
                let w2 = WeylWord((0..m).map(|k| (k + 1) % 2).collect());
                out.check("braid-relation", format!("{name} m={m}"), || {
                    for x in generators(a) {
                        if !a.equals(&apply_word(a, &w1, &x)?, &apply_word(a, &w2, &x)?)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
            }));
        }
        tasks.push(task(move |rng, out| {
            let a = &a;
            let mut samples = generators(a);
            for _ in 0..3 {
                samples.push(random::element(a, rng, 2, 2));
            }
            for x in &samples {
                let subject = format!("{name} {}", a.format(x));
                out.check("braid-operator-inverses", subject.clone(), || {
                    for i in 0..a.rank() {
                        for e in [1, -1] {
                            for op in [BraidOperator::double(i, e), BraidOperator::single(i, e)] {
                                let inv = op.inverse();
                                if !a.equals(&inv.apply(a, &op.apply(a, x)), x)?
                                    || !a.equals(&op.apply(a, &inv.apply(a, x)), x)?
                                {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                    Ok(true)
                });
                out.check("braid-operator-sigma", subject.clone(), || {
                    for i in 0..a.rank() {
                        let l = t_i(a, i, &a.sigma(x));
                        let r = a.sigma(&BraidOperator::t_inv(i).apply(a, x));
                        if !a.equals(&l, &r)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                });
                out.check("braid-operator-bar", subject.clone(), || {
                    for i in 0..a.rank() {
                        for e in [1, -1] {
                            for (op, back) in [
                                (BraidOperator::double(i, e), BraidOperator::double(i, -e)),
                                (BraidOperator::single(i, e), BraidOperator::single(i, -e)),
                            ] {
                                if !a.equals(&a.bar(&op.apply(a, x)), &back.apply(a, &a.bar(x)))? {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                    Ok(true)
                });
            }
            for _ in 0..5 {
                let u = random::element(a, rng, 1, 3);
                out.check("braid-double-vs-single-prime", format!("{name} {}", a.format(&u)), || {
                    let mu = u.weights()[0].clone();
                    for i in 0..a.rank() {
                        let n = a.datum().coroot(i, &mu);
                        for e in [1, -1] {
                            let c = sign(n).mul_v_pow(2 * a.datum().eps(i) * e * n);
                            let l = BraidOperator::double(i, e).apply(a, &u);
                            let r = BraidOperator::single(i, e).apply(a, &u).scale(&c);
                            if !a.equals(&l, &r)? {
                                return Ok(false);
                            }
                        }
                    }
                    Ok(true)
                });
            }
        }));
    }
    for (name, x) in [
        ("B2", vec![0usize, 1]),
        ("G2", vec![0, 1]),
        ("A3", vec![0, 1, 2]),
        ("A3", vec![0, 2]),
        ("B3", vec![1, 2]),
        ("C3", vec![0, 1]),
    ] {
        let a = env.algebra(name);
        tasks.push(task(move |_, out| {
            let a = &a;
            let d = a.datum();
            let labels: Vec<String> = x.iter().map(|&j| d.label(j).to_string()).collect();
            out.check("longest-word-independence", format!("{name} X={{{}}}", labels.join(",")), || {
                let w = d.longest_word(&x)?;
                let mut words = vec![w.clone(), w.reversed(), greedy_word(d, &w, &x, false), greedy_word(d, &w, &x, true)];
                words.dedup();
                if words.iter().any(|v| v.len() != w.len() || !d.is_reduced(v)) {
                    return Ok(false);
                }
                for g in generators(a) {
                    let reference = apply_word(a, &w, &g)?;
                    for v in &words[1..] {
                        if !a.equals(&apply_word(a, v, &g)?, &reference)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            });
        }));
    }
    tasks
}

fn pair_subject(name: &str, pair: &AdmissiblePair) -> String {
    format!("{name} {pair}")
}

fn sigma_tau(env: Env) -> Vec<Task> {
    let cases: [LabelledPair; 4] = [
        ("A3", vec![2], vec![(1, 3)]),
        ("A4", vec![2, 3], vec![(1, 4), (2, 3)]),
        ("B2", vec![2], vec![]),
        ("B3", vec![2, 3], vec![]),
    ];
    let mut tasks = Vec::new();
    for (name, x, tau) in cases {
        let a = env.algebra(name);
        tasks.push(task(move |_, out| {
            let ctx = labelled(&a, &x, &tau);
            let a = ctx.algebra();
            let pair = ctx.pair();
            for i in pair.outside_x() {
                let subject = format!("{} i={}", pair_subject(name, pair), pair.datum().label(i));
                out.check("sigma-tau-fixes-r-twx", subject, || {
                    let p = barcheck::r_twx(&ctx, i)?;
                    let image = a.sigma(&a.relabel(pair.tau_map(), &p));
                    Ok(!p.is_empty() && a.equals(&image, &p)?)
                });
            }
            if name.starts_with('A') {
                let n = pair.rank();
                out.check("r-twx-aiv-value", format!("{} i=1", pair_subject(name, pair)), || {
                    let p = barcheck::r_twx(&ctx, 0)?;
                    // (1 - q^{-2}) T_{n-1} ... T_3 (E_2)
                    let mut expected = a.e(1);
                    for k in 2..n - 1 {
                        expected = t_i(a, k, &expected);
                    }
                    let expected = expected.scale(&(Scalar::one() - Scalar::q_pow(-2)));
                    Ok(a.equals(&p, &expected)?)
                });
            }
        }));
    }
    tasks
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..n {
            if !prefix.contains(&k) {
                prefix.push(k);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Admissible pairs of the atlas data, in atlas order.
fn atlas_pairs(env: Env) -> Vec<(&'static str, Arc<Algebra>, AdmissiblePair)> {
    let mut out = Vec::new();
    for name in ATLAS {
        let a = env.algebra(name);
        for p in enumerate_admissible(a.datum_arc().clone()).expect("atlas rank") {
            out.push((name, a.clone(), p));
        }
    }
    out
}

fn nu_atlas(env: Env) -> Vec<Task> {
    let mut tasks = Vec::new();
    for name in ATLAS {
        tasks.push(task(move |_, out| {
            let d = datum(name);
            let n = d.rank();
            let listed = enumerate_admissible(d.clone()).map(|v| v.len());
            let mut exhaustive = 0usize;
            for mask in 0u32..(1 << n) {
                let x: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
                for tau in permutations(n) {
                    if AdmissiblePair::validate(d.clone(), &x, &tau).is_ok() {
                        exhaustive += 1;
                    }
                }
            }
            out.check("admissible-count-exhaustive", name, || Ok(listed? == exhaustive));
            out.observe(format!("{name} admissible pairs"), exhaustive.to_string());
        }));
    }
    for (name, a, pair) in atlas_pairs(env) {
        tasks.push(task(move |_, out| {
            let subject = pair_subject(name, &pair);
            let ctx = match context(&a, pair.clone()) {
                Ok(c) => c,
                Err(e) => {
                    out.check("nu-sign-positive", subject, || Err(e.into()));
                    return;
                }
            };
            for i in pair.outside_x() {
                out.check("nu-sign-positive", format!("{subject} i={}", pair.datum().label(i)), || {
                    Ok(barcheck::nu_sign(&ctx, i)? == 1)
                });
            }
        }));
    }
    for (name, x, tau) in [("affine:A1", vec![0i64], vec![]), ("affine:A2", vec![0], vec![(1i64, 2i64)])] {
        let a = env.algebra(name);
        tasks.push(task(move |_, out| {
            let pair = match AdmissiblePair::from_labels(a.datum_arc().clone(), &x, &tau) {
                Ok(p) => p,
                Err(e) => {
                    out.observe(name, format!("pair rejected: {e}"));
                    return;
                }
            };
            let subject = pair_subject(name, &pair);
            let ctx = match context(&a, pair.clone()) {
                Ok(c) => c,
                Err(e) => {
                    out.observe(subject, format!("error: {e}"));
                    return;
                }
            };
            for i in pair.outside_x() {
                let value = match barcheck::nu_sign(&ctx, i) {
                    Ok(v) => format!("nu = {v:+}"),
                    Err(e) => format!("error: {e}"),
                };
                out.observe(format!("{subject} i={}", pair.datum().label(i)), value);
            }
        }));
    }
    tasks
}

fn bar_z(env: Env) -> Vec<Task> {
    atlas_pairs(env)
        .into_iter()
        .map(|(name, a, pair)| {
            task(move |_, out| {
                let subject = pair_subject(name, &pair);
                let ctx = match context(&a, pair.clone()) {
                    Ok(c) => c,
                    Err(e) => {
                        out.check("bar-z", subject, || Err(e.into()));
                        return;
                    }
                };
                for i in pair.outside_x() {
                    let s = format!("{subject} i={}", pair.datum().label(i));
                    out.check("bar-z", s.clone(), || Ok(barcheck::check_ocz(&ctx, i)?));
                    out.check("bar-r-twx", s.clone(), || Ok(barcheck::check_bar_r_twx(&ctx, i)?));
                    out.check("ell-tau-symmetric", s, || {
                        Ok(barcheck::ell(&pair, i) == barcheck::ell(&pair, pair.tau(i)))
                    });
                }
            })
        })
        .collect()
}

fn random_params(ctx: &Arc<QspContext>, rng: &mut ChaCha8Rng) -> Result<QspParams, QspError> {
    let (c, s) = random::params(ctx.pair(), ctx, rng);
    QspParams::new(ctx.clone(), c, s)
}

/// Closed formulas against the projection oracle for one `(i, j)`.
fn closed_vs_oracle(params: &QspParams, i: usize, j: usize, subject: &str, out: &mut Out) {
    let oracle = match c_oracle(params, i, j) {
        Ok(c) => c,
        Err(e) => {
            out.check("closed-equals-oracle", subject, || Err(e.into()));
            return;
        }
    };
    let alg = params.context().algebra();
    for p in [Presentation::Standard, Presentation::Unified] {
        if p == Presentation::Unified && params.context().pair().tau(i) != i {
            continue;
        }
        match closed_form(params, i, j, p) {
            Err(QspError::NoClosedFormula { .. }) => {}
            Err(e) => out.check("closed-equals-oracle", format!("{subject} {p:?}"), || Err(e.into())),
            Ok(f) => out.check("closed-equals-oracle", format!("{subject} {p:?}"), || {
                Ok(alg.equals(&f.evaluate(params), &oracle)?)
            }),
        }
    }
}

/// The first pair of `C3` or `C4` with a `tau`-fixed node `i` outside `X` and
/// `j` in `X` with `a_ij = -2`.
pub fn find_cii_pair() -> Option<(&'static str, AdmissiblePair, usize, usize)> {
    for name in ["C3", "C4"] {
        for p in enumerate_admissible(datum(name)).ok()? {
            for i in p.outside_x() {
                if p.tau(i) != i {
                    continue;
                }
                if let Some(&j) = p.x().iter().find(|&&j| p.datum().a(i, j) == -2) {
                    return Some((name, p, i, j));
                }
            }
        }
    }
    None
}

fn cij(env: Env) -> Vec<Task> {
    let mut tasks = Vec::new();
    let mut explicit: Vec<PairCase> = vec![
        ("A1xA1", vec![], vec![(1, 2)], None),
        ("A2", vec![], vec![(1, 2)], None),
        ("affine:A1", vec![], vec![(0, 1)], None),
        ("A1xA1", vec![], vec![], None),
        ("A2", vec![], vec![], None),
        ("B2", vec![], vec![], None),
        ("G2", vec![], vec![], None),
        ("B2", vec![2], vec![], Some((1, 2))),
    ];
    if let Some((name, p, i, j)) = find_cii_pair() {
        let d = p.datum();
        explicit.push((name, p.x_labels(), p.tau_labels(), Some((d.label(i), d.label(j)))));
    }
    for (name, x, tau, only) in explicit {
        let a = env.algebra(name);
        tasks.push(task(move |rng, out| {
            let ctx = labelled(&a, &x, &tau);
            let pair = ctx.pair();
            let d = pair.datum();
            let params = match random_params(&ctx, rng) {
                Ok(p) => p,
                Err(e) => {
                    out.check("closed-equals-oracle", pair_subject(name, pair), || Err(e.into()));
                    return;
                }
            };
            for i in pair.outside_x() {
                for j in (0..pair.rank()).filter(|&j| j != i) {
                    if let Some((li, lj)) = only {
                        if (d.label(i), d.label(j)) != (li, lj) {
                            continue;
                        }
                    }
                    let subject = format!("{} (i,j)=({},{})", pair_subject(name, pair), d.label(i), d.label(j));
                    closed_vs_oracle(&params, i, j, &subject, out);
                }
            }
        }));
    }
    for (name, a, pair) in atlas_pairs(env) {
        for i in pair.outside_x() {
            for j in (0..pair.rank()).filter(|&j| j != i) {
                let a = a.clone();
                let pair = pair.clone();
                tasks.push(task(move |rng, out| {
                    let d = pair.datum();
                    let subject = format!("{} (i,j)=({},{})", pair_subject(name, &pair), d.label(i), d.label(j));
                    let params = match context(&a, pair.clone()).and_then(|c| random_params(&c, rng)) {
                        Ok(p) => p,
                        Err(e) => {
                            out.check("oracle-serre-defect-vanishes", subject, || Err(e.into()));
                            return;
                        }
                    };
                    out.check("oracle-serre-defect-vanishes", subject.clone(), || {
                        let defect = serre_defect(&params, i, j, CSource::Oracle)?;
                        Ok(params.context().algebra().is_zero(&defect)?)
                    });
                    closed_vs_oracle(&params, i, j, &subject, out);
                }));
            }
        }
    }
    tasks
}

fn from_strs(v: &[&str]) -> Vec<Scalar> {
    v.iter().map(|s| s.parse().expect("scalar literal")).collect()
}

fn bar_decisions(env: Env) -> Vec<Task> {
    let mut tasks = Vec::new();
    let a3 = env.algebra("A3");
    {
        let a = a3.clone();
        tasks.push(task(move |_, out| {
            let ctx = labelled(&a, &[2], &[(1, 3)]);
            let subject = pair_subject("A3", ctx.pair());
            for (c1, c3, expect) in [
                ("q", "q", true),
                ("1", "q^2", true),
                ("q^-1", "q^3", true),
                ("q", "1", false),
                ("q", "q^-1", false),
                ("1", "1", false),
            ] {
                let c = from_strs(&[c1, "0", c3]);
                let id = if expect { "bar-involution-accepted" } else { "bar-involution-rejected" };
                out.check(id, format!("{subject} c=({c1}, {c3})"), || {
                    let params = QspParams::new(ctx.clone(), c.clone(), vec![Scalar::zero(); 3])?;
                    Ok(bar_exists(&params)?.exists() == expect)
                });
            }
        }));
    }
    {
        let a = a3.clone();
        tasks.push(task(move |_, out| {
            let ctx = labelled(&a, &[], &[(1, 3)]);
            let subject = pair_subject("A3", ctx.pair());
            for (c, expect) in [(["1", "q^-1", "1"], true), (["1", "1", "1"], false)] {
                let id = if expect { "bar-involution-accepted" } else { "bar-involution-rejected" };
                let values = from_strs(&c);
                out.check(id, format!("{subject} c=({})", c.join(", ")), || {
                    let params = QspParams::new(ctx.clone(), values.clone(), vec![Scalar::zero(); 3])?;
                    Ok(bar_exists(&params)?.exists() == expect)
                });
            }
            out.check("canonical-parameters-value", subject, || {
                Ok(canonical_params(ctx.pair()) == from_strs(&["1", "q^-1", "1"]))
            });
        }));
    }
    for (name, a, pair) in atlas_pairs(env) {
        tasks.push(task(move |rng, out| {
            let subject = pair_subject(name, &pair);
            if barcheck::check_scope(&pair).is_err() {
                out.observe(subject, "outside the proved range; skipped");
                return;
            }
            let ctx = match context(&a, pair.clone()) {
                Ok(c) => c,
                Err(e) => {
                    out.check("corollary-agrees-with-bar-check", subject, || Err(e.into()));
                    return;
                }
            };
            let mut verdicts = [0usize; 2];
            for draw in 0..20 {
                let s = format!("{subject} draw {draw}");
                let params = random_params(&ctx, rng);
                out.check("corollary-agrees-with-bar-check", s, || {
                    let params = params?;
                    let exists = bar_exists(&params)?.exists();
                    verdicts[usize::from(exists)] += 1;
                    Ok(exists == corollary_conditions(&params)?.holds)
                });
            }
            out.observe(
                format!("{subject} random draws"),
                format!("{} exist, {} fail", verdicts[1], verdicts[0]),
            );
            out.check("canonical-parameters-admit-bar", subject, || {
                let params = QspParams::new(ctx.clone(), canonical_params(&pair), vec![Scalar::zero(); pair.rank()])?;
                Ok(bar_exists(&params)?.exists())
            });
        }));
    }
    tasks
}

fn round_trip(env: Env) -> Vec<Task> {
    ["A2", "B2", "G2", "affine:A1"]
        .into_iter()
        .map(|name| {
            let a = env.algebra(name);
            task(move |rng, out| {
                for _ in 0..50 {
                    let x = random::element(&a, rng, 4, 4);
                    let text = a.format(&x);
                    out.check("parse-format-round-trip", format!("{name} {text}"), || {
                        Ok(a.parse(&text)? == x)
                    });
                }
            })
        })
        .collect()
}
