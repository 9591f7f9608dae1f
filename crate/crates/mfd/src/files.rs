//! JSON formats for structures and ranked relations.
//!
//! A finite structure:
//!
//! ```json
//! {
//!   "elements": ["0", "a", "1"],
//!   "unit": "1",
//!   "order": [["0", "a"], ["a", "1"]],
//!   "times": [["0", "0", "0"], ["0", "0", "a"], ["0", "a", "1"]]
//! }
//! ```
//!
//! `order` lists pairs `x <= y`; the reflexive transitive closure is taken.
//! A residuated lattice adds `bottom`, `meet`, `join` and `residuum`. In
//! place of an object, the strings `product`, `min`, `lukasiewicz` and
//! `bool2` name the built-in structures.

use std::collections::BTreeMap;

use mfd_core::algebra::{
    AlgebraError, Completion, Element, FinitePomonoid, FiniteResiduatedLattice, Pomonoid, TNorm,
    UnitInterval,
};
use mfd_core::relational::{AttributeSpec, Domain, RankedRelation, RelationError, Similarity, Value};
use mfd_core::syntax::is_valid_attr_name;
use mfd_core::Attr;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown built-in structure `{0}`")]
    UnknownBuiltin(String),
    #[error("a residuated lattice needs all of `bottom`, `meet`, `join` and `residuum`")]
    PartialLattice,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid structure: {0}")]
    Shape(#[from] mfd_core::algebra::ShapeError),
    #[error("`{0}` is not a valid attribute name")]
    BadAttribute(String),
    #[error("attribute `{0}` lacks a {1}")]
    MissingSpec(String, &'static str),
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),
    #[error("tuple {tuple}, attribute `{attr}`: {message}")]
    BadValue {
        tuple: usize,
        attr: String,
        message: &'static str,
    },
    #[error("attribute `{attr}`: {message}")]
    BadSimilarity { attr: String, message: String },
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// The on-disk form of a finite structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub elements: Vec<String>,
    pub unit: String,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    pub times: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuum: Option<Vec<Vec<String>>>,
}

/// A structure as read from a file: finite, or one of the built-in
/// structures on the unit interval.
#[derive(Debug, Clone)]
pub enum LoadedAlgebra {
    Interval(UnitInterval),
    Pomonoid(FinitePomonoid),
    Lattice(FiniteResiduatedLattice),
}

impl LoadedAlgebra {
    /// The finite pomonoid, when there is one.
    pub fn finite(&self) -> Option<&FinitePomonoid> {
        match self {
            LoadedAlgebra::Interval(_) => None,
            LoadedAlgebra::Pomonoid(p) => Some(p),
            LoadedAlgebra::Lattice(l) => Some(l.monoid()),
        }
    }
}

impl AlgebraFile {
    fn index(&self, name: &str) -> Result<usize, FormatError> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| FormatError::UnknownElement(name.to_string()))
    }

    fn table(&self, rows: &[Vec<String>]) -> Result<Vec<Vec<usize>>, FormatError> {
        rows.iter()
            .map(|r| r.iter().map(|x| self.index(x)).collect())
            .collect()
    }

    /// Builds and validates the structure.
    pub fn to_algebra(&self) -> Result<LoadedAlgebra, FormatError> {
        let n = self.elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for (lo, hi) in &self.order {
            leq[self.index(lo)?][self.index(hi)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let times = self.table(&self.times)?;
        let monoid = FinitePomonoid::from_tables(self.elements.clone(), &leq, &times, self.index(&self.unit)?)?;
        match (&self.bottom, &self.meet, &self.join, &self.residuum) {
            (None, None, None, None) => Ok(LoadedAlgebra::Pomonoid(monoid.validated()?)),
            (Some(bottom), Some(meet), Some(join), Some(residuum)) => {
                let lattice = FiniteResiduatedLattice::from_tables(
                    monoid,
                    &self.table(meet)?,
                    &self.table(join)?,
                    &self.table(residuum)?,
                    self.index(bottom)?,
                )?;
                Ok(LoadedAlgebra::Lattice(lattice.validated()?))
            }
            _ => Err(FormatError::PartialLattice),
        }
    }

    pub fn from_pomonoid(p: &FinitePomonoid) -> Self {
        let names = p.names().to_vec();
        let name_table = |t: Vec<Vec<usize>>| -> Vec<Vec<String>> {
            t.into_iter()
                .map(|r| r.into_iter().map(|x| names[x].clone()).collect())
                .collect()
        };
        AlgebraFile {
            elements: names.clone(),
            unit: p.name(p.unit()).to_string(),
            order: covers(p),
            times: name_table(p.times_matrix()),
            bottom: None,
            meet: None,
            join: None,
            residuum: None,
        }
    }

    pub fn from_lattice(l: &FiniteResiduatedLattice) -> Self {
        let names = l.monoid().names().to_vec();
        let name_table = |t: Vec<Vec<usize>>| -> Vec<Vec<String>> {
            t.into_iter()
                .map(|r| r.into_iter().map(|x| names[x].clone()).collect())
                .collect()
        };
        AlgebraFile {
            bottom: Some(names[l.bottom().index()].clone()),
            meet: Some(name_table(l.meet_matrix())),
            join: Some(name_table(l.join_matrix())),
            residuum: Some(name_table(l.residuum_matrix())),
            ..AlgebraFile::from_pomonoid(l.monoid())
        }
    }
}

/// Covering pairs `a < b` with nothing strictly between.
fn covers(p: &FinitePomonoid) -> Vec<(String, String)> {
    let lt = |a: Element, b: Element| a != b && p.leq(a, b);
    let mut out = Vec::new();
    for a in p.elements() {
        for b in p.elements() {
            if lt(a, b) && !p.elements().any(|c| lt(a, c) && lt(c, b)) {
                out.push((p.name(a).to_string(), p.name(b).to_string()));
            }
        }
    }
    out
}

fn builtin(name: &str) -> Result<LoadedAlgebra, FormatError> {
    if name == "bool2" {
        return Ok(LoadedAlgebra::Pomonoid(FinitePomonoid::boolean()));
    }
    TNorm::from_name(name)
        .map(|t| LoadedAlgebra::Interval(UnitInterval::new(t)))
        .ok_or_else(|| FormatError::UnknownBuiltin(name.to_string()))
}

/// Reads a structure given as a built-in name or an inline object.
pub fn algebra_from_json(v: &Json) -> Result<LoadedAlgebra, FormatError> {
    match v {
        Json::String(name) => builtin(name),
        other => {
            let file: AlgebraFile = serde_json::from_value(other.clone())?;
            file.to_algebra()
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<LoadedAlgebra, FormatError> {
    algebra_from_json(&serde_json::from_str(text)?)
}

/// The completion as a structure file plus the embedding by element name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionFile {
    #[serde(flatten)]
    pub lattice: AlgebraFile,
    pub embedding: BTreeMap<String, String>,
}

impl CompletionFile {
    pub fn new(source: &FinitePomonoid, c: &Completion) -> Self {
        let names = c.lattice.monoid().names();
        CompletionFile {
            lattice: AlgebraFile::from_lattice(&c.lattice),
            embedding: source
                .elements()
                .map(|a| (source.name(a).to_string(), names[c.embed(a).index()].clone()))
                .collect(),
        }
    }
}

/// The on-disk form of a ranked relation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationFile {
    pub algebra: Json,
    pub scheme: Vec<String>,
    pub domains: BTreeMap<String, String>,
    pub similarity: BTreeMap<String, Json>,
    pub tuples: Vec<Vec<Json>>,
}

/// A relation over whichever structure its file names.
#[derive(Debug, Clone)]
pub enum LoadedRelation {
    Interval(RankedRelation<UnitInterval>),
    Finite(RankedRelation<FinitePomonoid>),
}

fn parse_domain(s: &str) -> Result<Domain, FormatError> {
    match s {
        "scalar" => Ok(Domain::Scalar),
        "token" => Ok(Domain::Token),
        "degree" => Ok(Domain::Degree),
        _ => s
            .strip_prefix("vector")
            .and_then(|n| n.parse().ok())
            .filter(|&n: &usize| n > 0)
            .map(Domain::Vector)
            .ok_or_else(|| FormatError::UnknownDomain(s.to_string())),
    }
}

/// How degrees are written for a given structure.
trait DegreeCodec: Pomonoid {
    fn degree(&self, v: &Json) -> Option<Self::Elem>;
}

impl DegreeCodec for UnitInterval {
    fn degree(&self, v: &Json) -> Option<f64> {
        let x = match v {
            Json::Number(n) => n.as_f64()?,
            Json::String(s) => s.parse().ok()?,
            _ => return None,
        };
        self.degree_from_real(x)
    }
}

impl DegreeCodec for FinitePomonoid {
    fn degree(&self, v: &Json) -> Option<Element> {
        v.as_str().and_then(|s| self.element(s))
    }
}

fn parse_value<L: DegreeCodec>(l: &L, domain: Domain, v: &Json) -> Option<Value<L::Elem>> {
    match domain {
        Domain::Scalar => v.as_f64().map(Value::Scalar),
        Domain::Vector(_) => v
            .as_array()?
            .iter()
            .map(Json::as_f64)
            .collect::<Option<Vec<f64>>>()
            .map(Value::Vector),
        Domain::Token => v.as_str().map(|s| Value::Token(s.to_string())),
        Domain::Degree => l.degree(v).map(Value::Degree),
    }
}

fn parse_similarity<L: DegreeCodec>(l: &L, attr: &str, v: &Json) -> Result<Similarity<L::Elem>, FormatError> {
    let bad = |message: &str| FormatError::BadSimilarity {
        attr: attr.to_string(),
        message: message.to_string(),
    };
    let kind = v.get("kind").and_then(Json::as_str).ok_or_else(|| bad("missing `kind`"))?;
    match kind {
        "exp_euclidean" => {
            let c = v.get("c").and_then(Json::as_f64).ok_or_else(|| bad("exp_euclidean needs a number `c`"))?;
            Ok(Similarity::ExpEuclidean { c })
        }
        "equality" => {
            let other = v
                .get("bottom")
                .and_then(|b| l.degree(b))
                .ok_or_else(|| bad("equality needs `bottom`, an element of the structure"))?;
            Ok(Similarity::Equality { other })
        }
        "table" => {
            let domain: Vec<String> = v
                .get("domain")
                .and_then(Json::as_array)
                .and_then(|a| a.iter().map(|t| t.as_str().map(str::to_string)).collect())
                .ok_or_else(|| bad("table needs `domain`, a list of tokens"))?;
            let degrees = v
                .get("values")
                .and_then(Json::as_array)
                .and_then(|rows| {
                    rows.iter()
                        .map(|r| r.as_array()?.iter().map(|d| l.degree(d)).collect::<Option<Vec<_>>>())
                        .collect::<Option<Vec<_>>>()
                })
                .ok_or_else(|| bad("table needs `values`, a matrix of degrees"))?;
            Ok(Similarity::Table { domain, degrees })
        }
        other => Err(bad(&format!("unknown kind `{other}`"))),
    }
}

fn build_relation<L: DegreeCodec>(l: L, file: &RelationFile) -> Result<RankedRelation<L>, FormatError> {
    let mut specs = Vec::new();
    let mut domains = Vec::new();
    for name in &file.scheme {
        if !is_valid_attr_name(name) {
            return Err(FormatError::BadAttribute(name.clone()));
        }
        let domain = parse_domain(
            file.domains
                .get(name)
                .ok_or_else(|| FormatError::MissingSpec(name.clone(), "domain"))?,
        )?;
        let sim = file
            .similarity
            .get(name)
            .ok_or_else(|| FormatError::MissingSpec(name.clone(), "similarity"))?;
        specs.push(AttributeSpec {
            domain,
            similarity: parse_similarity(&l, name, sim)?,
        });
        domains.push(domain);
    }
    let mut tuples = Vec::new();
    for (t, row) in file.tuples.iter().enumerate() {
        if row.len() != file.scheme.len() {
            return Err(RelationError::Arity {
                tuple: t,
                expected: file.scheme.len(),
                got: row.len(),
            }
            .into());
        }
        let mut values = Vec::new();
        for ((v, name), &domain) in row.iter().zip(&file.scheme).zip(&domains) {
            let value = parse_value(&l, domain, v).ok_or_else(|| FormatError::BadValue {
                tuple: t + 1,
                attr: name.clone(),
                message: "value does not match the attribute's domain",
            })?;
            values.push(value);
        }
        tuples.push(values);
    }
    let scheme = file.scheme.iter().map(|s| Attr::new(s)).collect();
    Ok(RankedRelation::new(l, scheme, specs, tuples)?)
}

pub fn parse_relation(text: &str) -> Result<LoadedRelation, FormatError> {
    let file: RelationFile = serde_json::from_str(text)?;
    match algebra_from_json(&file.algebra)? {
        LoadedAlgebra::Interval(l) => Ok(LoadedRelation::Interval(build_relation(l, &file)?)),
        LoadedAlgebra::Pomonoid(p) => Ok(LoadedRelation::Finite(build_relation(p, &file)?)),
        LoadedAlgebra::Lattice(l) => Ok(LoadedRelation::Finite(build_relation(l.monoid().clone(), &file)?)),
    }
}
