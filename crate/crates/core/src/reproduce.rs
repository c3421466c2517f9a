//! The full reproduction run: golden comparisons plus seeded classification
//! checks, reported one assertion per line.

use std::fmt;

use crate::algebra_file::print_algebra;
use crate::catalog::{get_algebra, verify_entry, AlgebraId};
use crate::golden::{compare_ricci, compare_system, GoldenSource, SYSTEM_IDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssertionKind {
    Ricci,
    System,
    AlgebraFile,
    Classification,
}

impl AssertionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AssertionKind::Ricci => "ricci",
            AssertionKind::System => "system",
            AssertionKind::AlgebraFile => "algebra-file",
            AssertionKind::Classification => "classification",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub kind: AssertionKind,
    pub algebra_id: AlgebraId,
    pub passed: bool,
    /// Counts on success, the first mismatches on failure.
    pub detail: String,
}

impl fmt::Display for Assertion {
    /// `<kind> <id> ok|FAIL <detail>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAIL" };
        write!(f, "{} {} {status}", self.kind.as_str(), self.algebra_id)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// On-family and off-family samples per entry; 0 skips classification.
    pub samples: usize,
    pub golden: GoldenSource,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            samples: 50,
            golden: GoldenSource::Embedded,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub assertions: Vec<Assertion>,
    pub samples: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    /// `(passed, total)` for one kind.
    pub fn count(&self, kind: AssertionKind) -> (usize, usize) {
        let of_kind = self.assertions.iter().filter(|a| a.kind == kind);
        let total = of_kind.clone().count();
        (of_kind.filter(|a| a.passed).count(), total)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub fn summary(&self) -> String {
        let (rp, rt) = self.count(AssertionKind::Ricci);
        let (sp, st) = self.count(AssertionKind::System);
        let tail = format!("{rp}/{rt} Ricci golden matrices match; {sp}/{st} printed systems match");
        if self.samples == 0 {
            format!("classification skipped (0 samples); {tail}")
        } else {
            let (cp, ct) = self.count(AssertionKind::Classification);
            format!("{cp}/{ct} classification entries verified; {tail}")
        }
    }
}

fn failed(detail: impl Into<String>) -> (bool, String) {
    (false, detail.into())
}

fn from_diffs(diffs: Vec<String>) -> (bool, String) {
    if diffs.is_empty() {
        (true, String::new())
    } else {
        let shown: Vec<_> = diffs.iter().take(3).cloned().collect();
        let more = diffs.len().saturating_sub(3);
        let mut detail = shown.join("; ");
        if more > 0 {
            detail.push_str(&format!("; and {more} more"));
        }
        failed(detail)
    }
}

pub fn verify_paper(opts: &VerifyOptions) -> VerifyReport {
    let mut assertions = Vec::new();
    let mut push = |kind, id, (passed, detail): (bool, String)| {
        assertions.push(Assertion {
            kind,
            algebra_id: id,
            passed,
            detail,
        })
    };
    for id in AlgebraId::ALL {
        let outcome = match opts.golden.ricci(id) {
            Ok(g) => from_diffs(compare_ricci(id, &g)),
            Err(e) => failed(e.to_string()),
        };
        push(AssertionKind::Ricci, id, outcome);
    }
    for id in SYSTEM_IDS {
        let outcome = match opts.golden.system(id) {
            Ok(Some(g)) => from_diffs(compare_system(id, &g)),
            Ok(None) => failed("no golden system"),
            Err(e) => failed(e.to_string()),
        };
        push(AssertionKind::System, id, outcome);
    }
    for id in AlgebraId::ALL {
        let outcome = match opts.golden.algebra(id) {
            Ok(file) if file.algebra != get_algebra(id) => failed("differs from catalog entry"),
            Ok(file) if opts.golden.algebra_text(id).ok() != Some(print_algebra(&file.algebra)) => {
                failed("not in canonical form")
            }
            Ok(_) => (true, String::new()),
            Err(e) => failed(e.to_string()),
        };
        push(AssertionKind::AlgebraFile, id, outcome);
    }
    if opts.samples > 0 {
        for id in AlgebraId::ALL {
            let r = verify_entry(id, opts.samples, opts.samples, opts.seed);
            let counts = format!(
                "verdict={} feasible={}/{} infeasible={}/{}",
                r.verdict.as_str(),
                r.feasible.passed,
                r.feasible.checked,
                r.infeasible.passed,
                r.infeasible.checked
            );
            let outcome = match r.counterexamples.first() {
                None if r.passed() => (true, counts),
                None => failed(counts),
                Some(c) => failed(format!(
                    "{counts} counterexample {} expected {}: {}",
                    c.sample, c.expected, c.detail
                )),
            };
            push(AssertionKind::Classification, id, outcome);
        }
    }
    VerifyReport {
        assertions,
        samples: opts.samples,
    }
}
