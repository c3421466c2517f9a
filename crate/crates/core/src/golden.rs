//! Reference data embedded at build time: the printed Ricci operators, the
//! printed obstruction systems and canonical definition files for the
//! catalog. A directory with the same layout can replace the embedded copy.
//!
//! Ricci files hold `scale <q>` and one `row` line per matrix row with
//! comma-separated polynomials; the operator is `q` times that matrix.
//! System files hold one `eq <poly>` line per generator. Both accept
//! `deviation <text>` lines recording where the stored form departs from
//! the printed one, and `#` comments.

use std::path::{Path, PathBuf};

use crate::algebra_file::{parse_algebra_file, AlgebraFile};
use crate::catalog::{get_algebra, AlgebraId};
use crate::curvature::ricci_operator;
use crate::error::{Error, Result};
use crate::liealg::Matrix;
use crate::ratpoly::{parse_polynomial, parse_rational, Polynomial, Rational};
use crate::soliton::obstruction_system;

/// Entries with a printed obstruction system.
pub const SYSTEM_IDS: [AlgebraId; 8] = [
    AlgebraId::A5_4,
    AlgebraId::A3_1Plus2A1,
    AlgebraId::A4_1PlusA1Case1,
    AlgebraId::A4_1PlusA1Case2,
    AlgebraId::A5_5,
    AlgebraId::A5_3,
    AlgebraId::A5_1,
    AlgebraId::A5_2,
];

macro_rules! embedded {
    ($kind:literal, $ext:literal, $id:expr) => {
        match $id {
            AlgebraId::FiveA1 => include_str!(concat!("../golden/", $kind, "/5A1", $ext)),
            AlgebraId::A5_4 => include_str!(concat!("../golden/", $kind, "/A5_4", $ext)),
            AlgebraId::A3_1Plus2A1 => include_str!(concat!("../golden/", $kind, "/A3_1+2A1", $ext)),
            AlgebraId::A4_1PlusA1Case1 => {
                include_str!(concat!("../golden/", $kind, "/A4_1+A1_case1", $ext))
            }
            AlgebraId::A4_1PlusA1Case2 => {
                include_str!(concat!("../golden/", $kind, "/A4_1+A1_case2", $ext))
            }
            AlgebraId::A5_6 => include_str!(concat!("../golden/", $kind, "/A5_6", $ext)),
            AlgebraId::A5_5 => include_str!(concat!("../golden/", $kind, "/A5_5", $ext)),
            AlgebraId::A5_3 => include_str!(concat!("../golden/", $kind, "/A5_3", $ext)),
            AlgebraId::A5_1 => include_str!(concat!("../golden/", $kind, "/A5_1", $ext)),
            AlgebraId::A5_2 => include_str!(concat!("../golden/", $kind, "/A5_2", $ext)),
        }
    };
}

fn embedded_system(id: AlgebraId) -> Option<&'static str> {
    Some(match id {
        AlgebraId::FiveA1 | AlgebraId::A5_6 => return None,
        AlgebraId::A5_4 => include_str!("../golden/systems/A5_4.txt"),
        AlgebraId::A3_1Plus2A1 => include_str!("../golden/systems/A3_1+2A1.txt"),
        AlgebraId::A4_1PlusA1Case1 => include_str!("../golden/systems/A4_1+A1_case1.txt"),
        AlgebraId::A4_1PlusA1Case2 => include_str!("../golden/systems/A4_1+A1_case2.txt"),
        AlgebraId::A5_5 => include_str!("../golden/systems/A5_5.txt"),
        AlgebraId::A5_3 => include_str!("../golden/systems/A5_3.txt"),
        AlgebraId::A5_1 => include_str!("../golden/systems/A5_1.txt"),
        AlgebraId::A5_2 => include_str!("../golden/systems/A5_2.txt"),
    })
}

/// Where golden files are read from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum GoldenSource {
    #[default]
    Embedded,
    /// A directory containing `ricci/`, `systems/` and `algebras/`.
    Dir(PathBuf),
}

impl GoldenSource {
    pub fn dir(path: impl Into<PathBuf>) -> Self {
        GoldenSource::Dir(path.into())
    }

    fn read(dir: &Path, kind: &str, id: AlgebraId, ext: &str) -> Result<String> {
        let path = dir.join(kind).join(format!("{}{ext}", id.as_str()));
        std::fs::read_to_string(&path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn ricci_text(&self, id: AlgebraId) -> Result<String> {
        match self {
            GoldenSource::Embedded => Ok(embedded!("ricci", ".txt", id).to_string()),
            GoldenSource::Dir(d) => Self::read(d, "ricci", id, ".txt"),
        }
    }

    /// `None` for entries without a printed system.
    pub fn system_text(&self, id: AlgebraId) -> Result<Option<String>> {
        if !SYSTEM_IDS.contains(&id) {
            return Ok(None);
        }
        match self {
            GoldenSource::Embedded => Ok(embedded_system(id).map(str::to_string)),
            GoldenSource::Dir(d) => Self::read(d, "systems", id, ".txt").map(Some),
        }
    }

    pub fn algebra_text(&self, id: AlgebraId) -> Result<String> {
        match self {
            GoldenSource::Embedded => Ok(embedded!("algebras", ".alg", id).to_string()),
            GoldenSource::Dir(d) => Self::read(d, "algebras", id, ".alg"),
        }
    }

    pub fn ricci(&self, id: AlgebraId) -> Result<RicciGolden> {
        RicciGolden::parse(&self.ricci_text(id)?)
    }

    pub fn system(&self, id: AlgebraId) -> Result<Option<SystemGolden>> {
        self.system_text(id)?
            .map(|t| SystemGolden::parse(&t))
            .transpose()
    }

    pub fn algebra(&self, id: AlgebraId) -> Result<AlgebraFile> {
        parse_algebra_file(&self.algebra_text(id)?)
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn keyword<'a>(line: &'a str, word: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(word)?;
    (rest.is_empty() || rest.starts_with(char::is_whitespace)).then(|| rest.trim())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RicciGolden {
    pub scale: Rational,
    pub rows: Vec<Vec<Polynomial>>,
    pub deviations: Vec<String>,
}

impl RicciGolden {
    pub fn parse(text: &str) -> Result<Self> {
        let mut scale = None;
        let mut rows = Vec::new();
        let mut deviations = Vec::new();
        for (n, line) in content_lines(text) {
            if let Some(q) = keyword(line, "scale") {
                if scale.is_some() {
                    return Err(syntax(n, "scale given twice"));
                }
                scale = Some(parse_rational(q).map_err(|e| syntax(n, e.to_string()))?);
            } else if let Some(r) = keyword(line, "row") {
                let row = r
                    .split(',')
                    .map(|p| parse_polynomial(p.trim()))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| syntax(n, e.to_string()))?;
                if let Some(first) = rows.first() {
                    if row.len() != Vec::len(first) {
                        return Err(syntax(n, "rows have different lengths"));
                    }
                }
                rows.push(row);
            } else if let Some(d) = keyword(line, "deviation") {
                deviations.push(d.to_string());
            } else {
                return Err(syntax(n, format!("unrecognised line `{line}`")));
            }
        }
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(syntax(0, "matrix is not square"));
        }
        Ok(Self {
            scale: scale.unwrap_or_else(|| Rational::from_integer(1.into())),
            rows,
            deviations,
        })
    }

    /// The stored operator, scale applied.
    pub fn operator(&self) -> Matrix<Polynomial> {
        Matrix::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(|p| p.scale(&self.scale)).collect())
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemGolden {
    pub equations: Vec<Polynomial>,
    pub deviations: Vec<String>,
}

impl SystemGolden {
    pub fn parse(text: &str) -> Result<Self> {
        let mut equations = Vec::new();
        let mut deviations = Vec::new();
        for (n, line) in content_lines(text) {
            if let Some(e) = keyword(line, "eq") {
                equations.push(parse_polynomial(e).map_err(|e| syntax(n, e.to_string()))?);
            } else if let Some(d) = keyword(line, "deviation") {
                deviations.push(d.to_string());
            } else {
                return Err(syntax(n, format!("unrecognised line `{line}`")));
            }
        }
        Ok(Self {
            equations,
            deviations,
        })
    }
}

/// Entry-wise differences between the computed Ricci operator of `id` and
/// the golden one; empty when they agree exactly.
pub fn compare_ricci(id: AlgebraId, golden: &RicciGolden) -> Vec<String> {
    let computed = ricci_operator(&get_algebra(id));
    let expected = golden.operator();
    if expected.size() != computed.size() {
        return vec![format!(
            "size {} expected, computed {}",
            expected.size(),
            computed.size()
        )];
    }
    let n = computed.size();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if computed[(i, j)] != expected[(i, j)] {
                out.push(format!(
                    "entry ({},{}): golden {}, computed {}",
                    i + 1,
                    j + 1,
                    expected[(i, j)].pretty(),
                    computed[(i, j)].pretty()
                ));
            }
        }
    }
    out
}

/// Set comparison of sign-normalized generators; empty when they agree.
pub fn compare_system(id: AlgebraId, golden: &SystemGolden) -> Vec<String> {
    let sys = obstruction_system(&get_algebra(id));
    let mut expected = Vec::new();
    let mut out = Vec::new();
    for p in &golden.equations {
        match p.normalize_sign() {
            Ok(q) => expected.push(q),
            Err(_) => out.push("golden equation is zero".to_string()),
        }
    }
    for q in &expected {
        if !sys.generators().contains(q) {
            out.push(format!("golden generator not produced: {}", q.pretty()));
        }
    }
    for q in sys.generators() {
        if !expected.contains(q) {
            out.push(format!("generator missing from golden: {}", q.pretty()));
        }
    }
    out
}
