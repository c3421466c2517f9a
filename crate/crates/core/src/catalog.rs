//! The ten five-dimensional nilpotent metric Lie algebras in Milnor-type
//! normal form, their soliton classification, and seeded verification.
//!
//! Family equations involving square roots are stored on squares
//! (`alpha^2 = 2*gamma^2` together with `alpha = epsilon`), so membership
//! is decidable exactly once signs are fixed by the constraints.
//!
//! `A5_6` is recorded as `never`. That verdict holds at every rational
//! admissible point, which is what [`verify_entry`] samples. Over the reals
//! it fails: `beta = delta = 0`, `sigma = epsilon`,
//! `alpha^2 = gamma^2 = 3/2 * epsilon^2` with `alpha < 0` is a nilsoliton
//! (with `mu = -11/4` at `epsilon = 1`), and no such point is rational.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::liealg::{MetricLieAlgebra, ParameterConstraint, Relation, Sample};
use crate::ratpoly::{parse_polynomial, Polynomial, Rational, Real};
use crate::soliton::{
    nilsoliton_check, numeric_soliton_oracle, numeric_soliton_oracle_f64, Status,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraId {
    FiveA1,
    A5_4,
    A3_1Plus2A1,
    A4_1PlusA1Case1,
    A4_1PlusA1Case2,
    A5_6,
    A5_5,
    A5_3,
    A5_1,
    A5_2,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 10] = [
        AlgebraId::FiveA1,
        AlgebraId::A5_4,
        AlgebraId::A3_1Plus2A1,
        AlgebraId::A4_1PlusA1Case1,
        AlgebraId::A4_1PlusA1Case2,
        AlgebraId::A5_6,
        AlgebraId::A5_5,
        AlgebraId::A5_3,
        AlgebraId::A5_1,
        AlgebraId::A5_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraId::FiveA1 => "5A1",
            AlgebraId::A5_4 => "A5_4",
            AlgebraId::A3_1Plus2A1 => "A3_1+2A1",
            AlgebraId::A4_1PlusA1Case1 => "A4_1+A1_case1",
            AlgebraId::A4_1PlusA1Case2 => "A4_1+A1_case2",
            AlgebraId::A5_6 => "A5_6",
            AlgebraId::A5_5 => "A5_5",
            AlgebraId::A5_3 => "A5_3",
            AlgebraId::A5_1 => "A5_1",
            AlgebraId::A5_2 => "A5_2",
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgebraId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownAlgebra(s.to_string()))
    }
}

const DIM: usize = 5;

type BracketSpec = (usize, usize, &'static [(usize, &'static str)]);

fn build(id: AlgebraId, brackets: &[BracketSpec], params: &[(&str, Relation)]) -> MetricLieAlgebra {
    let brackets = brackets.iter().map(|&(i, j, terms)| {
        let mut v = vec![Polynomial::int(0); DIM];
        for &(k, coeff) in terms {
            v[k - 1] = Polynomial::var(coeff);
        }
        (i, j, v)
    });
    let constraints = params
        .iter()
        .map(|&(n, r)| ParameterConstraint::new(n, r))
        .collect();
    MetricLieAlgebra::from_brackets(id.as_str(), DIM, brackets, constraints)
        .expect("catalog entries are valid Lie algebras")
}

/// The normal form of `id` with its parameter constraints.
pub fn get_algebra(id: AlgebraId) -> MetricLieAlgebra {
    use Relation::{Free, Negative, Positive};
    match id {
        AlgebraId::FiveA1 => build(id, &[], &[]),
        AlgebraId::A5_4 => build(
            id,
            &[(1, 3, &[(5, "alpha")]), (1, 4, &[(5, "beta")]), (2, 3, &[(5, "gamma")])],
            &[("alpha", Free), ("beta", Positive), ("gamma", Positive)],
        ),
        AlgebraId::A3_1Plus2A1 => build(id, &[(1, 2, &[(5, "alpha")])], &[("alpha", Positive)]),
        AlgebraId::A4_1PlusA1Case1 => build(
            id,
            &[(1, 2, &[(3, "alpha"), (5, "gamma")]), (1, 3, &[(5, "beta")])],
            &[("alpha", Positive), ("beta", Positive), ("gamma", Free)],
        ),
        AlgebraId::A4_1PlusA1Case2 => build(
            id,
            &[(1, 2, &[(3, "alpha"), (4, "gamma")]), (1, 3, &[(5, "beta")])],
            &[("alpha", Positive), ("beta", Positive), ("gamma", Free)],
        ),
        AlgebraId::A5_6 => build(
            id,
            &[
                (1, 2, &[(3, "alpha"), (4, "beta")]),
                (1, 3, &[(4, "gamma"), (5, "delta")]),
                (1, 4, &[(5, "epsilon")]),
                (2, 3, &[(5, "sigma")]),
            ],
            &[
                ("alpha", Negative),
                ("beta", Free),
                ("gamma", Positive),
                ("delta", Free),
                ("epsilon", Positive),
                ("sigma", Positive),
            ],
        ),
        AlgebraId::A5_5 => build(
            id,
            &[
                (1, 2, &[(4, "alpha"), (5, "beta")]),
                (1, 3, &[(5, "gamma")]),
                (2, 3, &[(5, "delta")]),
                (2, 4, &[(5, "epsilon")]),
            ],
            &[
                ("alpha", Positive),
                ("beta", Free),
                ("gamma", Positive),
                ("delta", Free),
                ("epsilon", Positive),
            ],
        ),
        AlgebraId::A5_3 => build(
            id,
            &[
                (1, 2, &[(3, "alpha"), (4, "beta")]),
                (1, 3, &[(4, "gamma"), (5, "delta")]),
                (2, 3, &[(5, "epsilon")]),
            ],
            &[
                ("alpha", Positive),
                ("beta", Free),
                ("gamma", Positive),
                ("delta", Free),
                ("epsilon", Positive),
            ],
        ),
        AlgebraId::A5_1 => build(
            id,
            &[(1, 2, &[(4, "alpha"), (5, "beta")]), (1, 3, &[(5, "gamma")])],
            &[("alpha", Positive), ("beta", Free), ("gamma", Positive)],
        ),
        AlgebraId::A5_2 => build(
            id,
            &[
                (1, 2, &[(3, "alpha"), (4, "beta")]),
                (1, 3, &[(4, "gamma")]),
                (1, 4, &[(5, "delta")]),
            ],
            &[
                ("alpha", Positive),
                ("beta", Free),
                ("gamma", Positive),
                ("delta", Positive),
            ],
        ),
    }
}

/// Looks up a built-in algebra by its textual id.
pub fn builtin(name: &str) -> Result<MetricLieAlgebra> {
    Ok(get_algebra(name.parse()?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Always,
    Never,
    Family,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Always => "always",
            Verdict::Never => "never",
            Verdict::Family => "family",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `lhs = rhs` between polynomials in the structure parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl Equation {
    fn parse(lhs: &str, rhs: &str) -> Self {
        Self {
            lhs: parse_polynomial(lhs).expect("valid literal"),
            rhs: parse_polynomial(rhs).expect("valid literal"),
        }
    }

    pub fn difference(&self) -> Polynomial {
        &self.lhs - &self.rhs
    }

    pub fn holds_at(&self, sample: &Sample) -> Result<bool> {
        Ok(self.difference().eval_with(|n| sample.get(n).cloned())?.is_zero())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs.pretty(), self.rhs.pretty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationEntry {
    pub algebra_id: AlgebraId,
    pub verdict: Verdict,
    pub family_constraints: Vec<Equation>,
}

impl ClassificationEntry {
    /// Whether an oriented admissible sample satisfies every family equation.
    pub fn on_family(&self, sample: &Sample) -> Result<bool> {
        for e in &self.family_constraints {
            if !e.holds_at(sample)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn classification_entry(id: AlgebraId) -> ClassificationEntry {
    let eqs: &[(&str, &str)] = match id {
        AlgebraId::FiveA1 | AlgebraId::A3_1Plus2A1 | AlgebraId::A5_6 => &[],
        AlgebraId::A5_4 => &[("alpha", "0"), ("beta", "gamma")],
        AlgebraId::A4_1PlusA1Case1 | AlgebraId::A4_1PlusA1Case2 => {
            &[("gamma", "0"), ("alpha", "beta")]
        }
        AlgebraId::A5_5 => &[
            ("beta", "0"),
            ("delta", "0"),
            ("alpha^2", "2*gamma^2"),
            ("epsilon^2", "2*gamma^2"),
            ("alpha", "epsilon"),
        ],
        AlgebraId::A5_3 => &[
            ("beta", "0"),
            ("delta", "0"),
            ("4*gamma^2", "3*alpha^2"),
            ("4*epsilon^2", "3*alpha^2"),
            ("gamma", "epsilon"),
        ],
        AlgebraId::A5_1 => &[("beta", "0"), ("alpha", "gamma")],
        AlgebraId::A5_2 => &[
            ("beta", "0"),
            ("4*alpha^2", "3*gamma^2"),
            ("4*delta^2", "3*gamma^2"),
            ("alpha", "delta"),
        ],
    };
    let verdict = match id {
        AlgebraId::FiveA1 | AlgebraId::A3_1Plus2A1 => Verdict::Always,
        AlgebraId::A5_6 => Verdict::Never,
        _ => Verdict::Family,
    };
    ClassificationEntry {
        algebra_id: id,
        verdict,
        family_constraints: eqs.iter().map(|&(l, r)| Equation::parse(l, r)).collect(),
    }
}

pub fn classification_table() -> Vec<ClassificationEntry> {
    AlgebraId::ALL.into_iter().map(classification_entry).collect()
}

/// Seeded generator of admissible samples for one catalog entry.
pub struct Sampler {
    id: AlgebraId,
    algebra: MetricLieAlgebra,
    entry: ClassificationEntry,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(id: AlgebraId, seed: u64) -> Self {
        let stream = AlgebraId::ALL.iter().position(|&x| x == id).unwrap_or(0) as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self {
            id,
            algebra: get_algebra(id),
            entry: classification_entry(id),
            rng,
        }
    }

    fn positive(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(1..=12);
        let d: i64 = self.rng.gen_range(1..=6);
        Rational::new(n.into(), d.into())
    }

    fn value(&mut self, relation: Relation) -> Rational {
        match relation {
            Relation::Positive => self.positive(),
            Relation::Negative => -self.positive(),
            Relation::Nonzero => {
                let p = self.positive();
                if self.rng.gen_bool(0.5) {
                    p
                } else {
                    -p
                }
            }
            Relation::Free => {
                let n: i64 = self.rng.gen_range(-12..=12);
                let d: i64 = self.rng.gen_range(1..=6);
                Rational::new(n.into(), d.into())
            }
        }
    }

    /// Uniformly drawn admissible rational sample.
    pub fn admissible(&mut self) -> Sample {
        let constraints = self.algebra.constraints().to_vec();
        let mut s = Sample::new();
        for c in constraints {
            let v = self.value(c.relation);
            s.insert(c.name, v);
        }
        s
    }

    /// A sample on the classification family; for `always`/`never`
    /// entries any admissible sample.
    pub fn on_family(&mut self) -> Sample {
        let t = self.positive();
        let coin = self.rng.gen_bool(0.5);
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let sq = |x: &Rational| x * x;
        let mut s = Sample::new();
        let squared = |s: &mut Sample, name: &str, v: Rational| {
            s.insert_squared(name, &v).expect("non-negative, single radicand")
        };
        match self.id {
            AlgebraId::A5_4 => {
                s.insert("alpha", q(0, 1));
                s.insert("beta", t.clone());
                s.insert("gamma", t);
            }
            AlgebraId::A4_1PlusA1Case1 | AlgebraId::A4_1PlusA1Case2 => {
                s.insert("gamma", q(0, 1));
                s.insert("alpha", t.clone());
                s.insert("beta", t);
            }
            AlgebraId::A5_1 => {
                s.insert("beta", q(0, 1));
                s.insert("alpha", t.clone());
                s.insert("gamma", t);
            }
            AlgebraId::A5_5 => {
                s.insert("beta", q(0, 1));
                s.insert("delta", q(0, 1));
                if coin {
                    s.insert("gamma", t.clone());
                    squared(&mut s, "alpha", sq(&t) * q(2, 1));
                    squared(&mut s, "epsilon", sq(&t) * q(2, 1));
                } else {
                    squared(&mut s, "gamma", sq(&t) * q(2, 1));
                    s.insert("alpha", &t * q(2, 1));
                    s.insert("epsilon", &t * q(2, 1));
                }
            }
            AlgebraId::A5_3 => {
                s.insert("beta", q(0, 1));
                s.insert("delta", q(0, 1));
                if coin {
                    s.insert("alpha", t.clone());
                    squared(&mut s, "gamma", sq(&t) * q(3, 4));
                    squared(&mut s, "epsilon", sq(&t) * q(3, 4));
                } else {
                    squared(&mut s, "alpha", sq(&t) * q(3, 1));
                    s.insert("gamma", &t * q(3, 2));
                    s.insert("epsilon", &t * q(3, 2));
                }
            }
            AlgebraId::A5_2 => {
                s.insert("beta", q(0, 1));
                if coin {
                    s.insert("gamma", t.clone());
                    squared(&mut s, "alpha", sq(&t) * q(3, 4));
                    squared(&mut s, "delta", sq(&t) * q(3, 4));
                } else {
                    squared(&mut s, "gamma", sq(&t) * q(3, 1));
                    s.insert("alpha", &t * q(3, 2));
                    s.insert("delta", &t * q(3, 2));
                }
            }
            AlgebraId::FiveA1 | AlgebraId::A3_1Plus2A1 | AlgebraId::A5_6 => {
                return self.admissible();
            }
        }
        s
    }

    /// A family sample moved off the family by `|delta| >= 1/10` in one
    /// parameter that the family equations constrain.
    pub fn off_family(&mut self) -> Sample {
        let params: Vec<String> = {
            let mut v: Vec<String> = self
                .entry
                .family_constraints
                .iter()
                .flat_map(|e| e.difference().variables())
                .collect();
            v.sort();
            v.dedup();
            v
        };
        if params.is_empty() {
            return self.admissible();
        }
        loop {
            let base = self.on_family();
            let name = params[self.rng.gen_range(0..params.len())].clone();
            let relation = self.algebra.constraint(&name).unwrap_or(Relation::Free);
            let k: i64 = self.rng.gen_range(1..=20);
            let mut delta = Rational::new(k.into(), 10.into());
            if relation == Relation::Free && self.rng.gen_bool(0.5) {
                delta = -delta;
            }
            let old = base.get(&name).cloned().expect("family samples assign every parameter");
            let mut s = Sample::new();
            for (n, v) in base.iter() {
                let v = if n == name {
                    old.clone() + Real::rational(delta.clone())
                } else {
                    v.clone()
                };
                s.set(n, v).expect("one radicand");
            }
            let admissible = self.algebra.check_sample(&s).is_ok();
            if admissible && !self.entry.on_family(&s).unwrap_or(true) {
                return s;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub passed: usize,
}

/// A sample whose outcome contradicts the classification or a cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub sample: String,
    pub expected: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub algebra_id: AlgebraId,
    pub verdict: Verdict,
    /// Samples expected feasible.
    pub feasible: Tally,
    /// Samples expected infeasible.
    pub infeasible: Tally,
    pub counterexamples: Vec<Counterexample>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
            && self.feasible.passed == self.feasible.checked
            && self.infeasible.passed == self.infeasible.checked
    }
}

fn judge(g: &MetricLieAlgebra, sample: &Sample, expected: Status) -> Option<String> {
    let exact = match numeric_soliton_oracle(g, sample) {
        Ok(v) => v,
        Err(e) => return Some(format!("error: {e}")),
    };
    if exact.status != expected {
        return Some(format!("oracle says {}", exact.status));
    }
    match nilsoliton_check(g, sample) {
        Ok(v) if v.status == exact.status && v.witness_mu == exact.witness_mu => {}
        Ok(v) => return Some(format!("nilsoliton check says {}", v.status)),
        Err(e) => return Some(format!("error: {e}")),
    }
    match numeric_soliton_oracle_f64(g, sample) {
        Ok(v) if v.status == exact.status => {}
        Ok(v) => {
            return Some(format!(
                "float oracle says {} (residual {:e})",
                v.status, v.residual_norm
            ))
        }
        Err(e) => return Some(format!("error: {e}")),
    }
    match g.nilpotency_step(sample) {
        Ok(step) if step <= 4 => None,
        Ok(step) => Some(format!("nilpotency step {step}")),
        Err(e) => Some(format!("error: {e}")),
    }
}

#[cfg(feature = "parallel")]
fn judge_all(g: &MetricLieAlgebra, jobs: &[(Sample, Status)]) -> Vec<Option<String>> {
    use rayon::prelude::*;
    jobs.par_iter().map(|(s, e)| judge(g, s, *e)).collect()
}

#[cfg(not(feature = "parallel"))]
fn judge_all(g: &MetricLieAlgebra, jobs: &[(Sample, Status)]) -> Vec<Option<String>> {
    jobs.iter().map(|(s, e)| judge(g, s, *e)).collect()
}

/// Checks the classification of `id` against the oracle on seeded samples.
///
/// `always` and `never` entries draw `on + off` admissible samples, all
/// expected feasible or all infeasible. `family` entries draw `on` family
/// samples (feasible) and `off` perturbed samples (infeasible). Every
/// sample is also decided by the derivation-algebra route and in float
/// mode; disagreements are counterexamples. Samples are generated
/// sequentially, so the report depends only on `(id, seed, on, off)`.
pub fn verify_entry(id: AlgebraId, on: usize, off: usize, seed: u64) -> EntryReport {
    let g = get_algebra(id);
    let entry = classification_entry(id);
    let mut sampler = Sampler::new(id, seed);
    let mut jobs = Vec::with_capacity(on + off);
    match entry.verdict {
        Verdict::Always => jobs.extend((0..on + off).map(|_| (sampler.admissible(), Status::Feasible))),
        Verdict::Never => {
            jobs.extend((0..on + off).map(|_| (sampler.admissible(), Status::Infeasible)))
        }
        Verdict::Family => {
            jobs.extend((0..on).map(|_| (sampler.on_family(), Status::Feasible)));
            jobs.extend((0..off).map(|_| (sampler.off_family(), Status::Infeasible)));
        }
    }
    let outcomes = judge_all(&g, &jobs);
    let mut report = EntryReport {
        algebra_id: id,
        verdict: entry.verdict,
        feasible: Tally::default(),
        infeasible: Tally::default(),
        counterexamples: Vec::new(),
    };
    for ((sample, expected), outcome) in jobs.iter().zip(outcomes) {
        let tally = match expected {
            Status::Feasible => &mut report.feasible,
            Status::Infeasible => &mut report.infeasible,
        };
        tally.checked += 1;
        match outcome {
            None => tally.passed += 1,
            Some(detail) => report.counterexamples.push(Counterexample {
                sample: sample.to_string(),
                expected: *expected,
                detail,
            }),
        }
    }
    report
}
