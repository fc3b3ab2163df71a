//! Serializable output records. Rationals are always carried as `"num/den"`
//! strings (the denominator is omitted when it is 1).

use std::collections::BTreeMap;
use std::fmt;

use clap::ValueEnum;
use hurwitz_core::characters::ClassVector;
use hurwitz_core::multipoly::MultiPoly;
use hurwitz_core::verify::CheckResult;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Definition,
    Closed,
    Factorization,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Definition => "definition",
            Method::Closed => "closed",
            Method::Factorization => "factorization",
            Method::Both => "both",
        })
    }
}

/// One Hurwitz number, as printed by `compute` and `table`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub r: u32,
    pub g: u32,
    pub alpha: String,
    pub beta: String,
    pub s: u32,
    pub method: Method,
    pub result: String,
    /// Per-method values when `method` is `both`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub results: Option<BTreeMap<Method, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl OutputRecord {
    pub const CSV_HEADER: [&'static str; 10] = [
        "command",
        "r",
        "g",
        "alpha",
        "beta",
        "s",
        "method",
        "result",
        "agreement",
        "timing_ms",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.command.clone(),
            self.r.to_string(),
            self.g.to_string(),
            self.alpha.clone(),
            self.beta.clone(),
            self.s.to_string(),
            self.method.to_string(),
            self.result.clone(),
            opt(self.agreement),
            opt(self.timing_ms),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HodgeRecord {
    pub command: String,
    pub g: u32,
    pub b: Vec<u32>,
    pub k: u32,
    pub admissible: bool,
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl HodgeRecord {
    pub const CSV_HEADER: [&'static str; 6] = ["g", "b", "k", "admissible", "result", "timing_ms"];

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.g.to_string(),
            join(&self.b),
            self.k.to_string(),
            self.admissible.to_string(),
            self.result.clone(),
            opt(self.timing_ms),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

/// `{"n": .., "terms": [{"exp": [..], "coeff": "p/q"}, ..]}`, terms in
/// descending graded reverse-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl From<&MultiPoly> for MultiPolyJson {
    fn from(p: &MultiPoly) -> Self {
        MultiPolyJson {
            n: p.nvars(),
            terms: p
                .terms_grevlex()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

impl MultiPolyJson {
    pub fn to_poly(&self) -> hurwitz_core::Result<MultiPoly> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), hurwitz_core::rational::parse(&t.coeff)?)))
            .collect::<hurwitz_core::Result<Vec<_>>>()?;
        MultiPoly::from_terms(self.n, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub command: String,
    pub g: u32,
    pub n: usize,
    pub lowest_degree: u32,
    pub highest_degree: u32,
    pub poly: MultiPolyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTermJson {
    pub class: String,
    pub coeff: String,
}

/// `{"d": .., "terms": [{"class": "3,1", "coeff": "13/8"}, ..]}`, classes in
/// reverse-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVectorJson {
    pub d: u32,
    pub terms: Vec<ClassTermJson>,
}

impl From<&ClassVector> for ClassVectorJson {
    fn from(v: &ClassVector) -> Self {
        ClassVectorJson {
            d: v.degree(),
            terms: v
                .terms()
                .map(|(mu, c)| ClassTermJson {
                    class: mu.to_string(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleJson {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub command: String,
    pub suite: String,
    pub check: String,
    pub statement: String,
    pub cases: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
}

impl From<&CheckResult> for CheckRecord {
    fn from(c: &CheckResult) -> Self {
        CheckRecord {
            command: "verify".into(),
            suite: c.suite.to_string(),
            check: c.name.into(),
            statement: c.statement.into(),
            cases: c.cases,
            passed: c.passed(),
            counterexample: c.counterexample.as_ref().map(|x| CounterexampleJson {
                input: x.input.clone(),
                lhs: x.lhs.clone(),
                rhs: x.rhs.clone(),
            }),
        }
    }
}

impl CheckRecord {
    pub const CSV_HEADER: [&'static str; 7] =
        ["suite", "check", "cases", "passed", "input", "lhs", "rhs"];

    pub fn csv_row(&self) -> Vec<String> {
        let (i, l, r) = match &self.counterexample {
            Some(c) => (c.input.clone(), c.lhs.clone(), c.rhs.clone()),
            None => Default::default(),
        };
        vec![
            self.suite.clone(),
            self.check.clone(),
            self.cases.to_string(),
            self.passed.to_string(),
            i,
            l,
            r,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub command: String,
    pub suite: String,
    pub max_d: u32,
    pub max_g: u32,
    pub checks: usize,
    pub cases: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn join(b: &[u32]) -> String {
    b.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
