//! JSON report schemas. Field order is stable; every report emitted with
//! `--json` deserializes back into the type that produced it.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    /// `input` (exit 2) or `limit` (exit 3).
    pub kind: String,
    pub error: String,
    /// Debug form of the violated axiom, when the error carries one.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidSummary {
    pub name: String,
    pub objects: usize,
    pub arrows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub groupoids: Vec<GroupoidSummary>,
    pub functors: Vec<String>,
    pub bibundles: Vec<String>,
    pub cospans: Vec<String>,
    pub covers: Vec<String>,
    pub bundles: Vec<String>,
    pub data: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub objects: Vec<String>,
    pub isotropy_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub groupoid: String,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitiveReport {
    pub groupoid: String,
    pub transitive: bool,
    /// Isotropy order of the point groupoid it is equivalent to.
    pub isotropy_order: Option<usize>,
    /// Two objects with no arrow between them.
    pub witness: Option<(String, String)>,
    /// The bibundle equivalence with the point groupoid, in text form.
    pub bibundle: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonLine {
    pub base: String,
    pub orbit_size: usize,
    pub hash: String,
    pub group: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub groupoid: String,
    pub orbits: Vec<SkeletonLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaReport {
    pub source: String,
    pub target: String,
    pub equivalent: bool,
    /// Bibundle equivalence in text form.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanWitness {
    /// Apex groupoid in text form.
    pub apex: String,
    /// Leg into the source, in functor text form.
    pub left: String,
    /// Leg into the target, in functor text form.
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaHomotopyReport {
    pub source: String,
    pub target: String,
    pub equivalent: bool,
    pub witness: Option<SpanWitness>,
}

/// A natural number or `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Count {
    Finite(usize),
    Infinite(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `witnessed`, `vacuous` or `refuted`.
    pub status: String,
    /// Object the subgroupoid retracts onto.
    pub base: Option<String>,
    /// Order of the isotropy group of the point it retracts onto.
    pub isotropy_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CgeoJson {
    pub groupoid: String,
    pub cgeo: Count,
    pub cover: Vec<Vec<String>>,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakPointReport {
    pub groupoid: String,
    pub subset: Vec<String>,
    pub weak_point: bool,
    pub certificate: Certificate,
    /// Two objects of the subset in different orbits.
    pub refuted_by: Option<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformReport {
    pub groupoid: String,
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub deformation: bool,
    /// `(x, φ(x))` for every object of the source subgroupoid.
    pub object_map: Vec<(String, String)>,
    /// `(x, τ_x)`: the transport arrow `x -> φ(x)`.
    pub transport: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorReport {
    pub source: String,
    pub target: String,
    pub carrier_size: usize,
    pub right_principal: bool,
    pub equivalence: bool,
    pub bibundle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopicReport {
    pub source: String,
    pub target: String,
    pub homotopic: bool,
    /// `(x, T(x))` components of the natural transformation.
    pub components: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackReport {
    pub cospan: String,
    pub n: usize,
    pub objects: usize,
    pub arrows: usize,
    pub groupoid: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueReport {
    pub datum: String,
    pub glued: bool,
    pub failure: Option<String>,
    /// The glued bundle in text form.
    pub bundle: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentCheckReport {
    pub datum: String,
    pub cocycle: bool,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusReport {
    pub groupoid: String,
    pub key: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub count: usize,
    /// One groupoid document per member.
    pub groupoids: Vec<String>,
}
