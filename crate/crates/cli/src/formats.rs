//! JSON encodings of the library types.
//!
//! Rational functions are written as coefficient lists, constant term first,
//! with every coefficient an exact decimal string (`"3"`, `"-1/2"`), next to
//! a human-readable rendering that is informational only.

use dehn_core::dehngraph::{generator_name, parse_generator_name, EdgeOrigin, GraphEdge, Vertex, VertexKind};
use dehn_core::diagram::Corner;
use dehn_core::invariants::{DefectTerm, TorsionValue};
use dehn_core::mscomplex::{ChainComplex, ExactnessWitness};
use dehn_core::pipeline::CheckReport;
use dehn_core::{DehnGraph, FieldMatrix, GroupRingTerm, KnotDiagram, Polynomial, RatFunc, Rational, Word};
use serde::{Deserialize, Serialize};

/// Version stamped on every top-level JSON object.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
    pub text: String,
}

fn coeff_strings(p: &Polynomial) -> Vec<String> {
    if p.coeffs().is_empty() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

impl From<&RatFunc> for RatFuncJson {
    fn from(f: &RatFunc) -> Self {
        RatFuncJson { num: coeff_strings(f.num()), den: coeff_strings(f.den()), text: f.to_string() }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("unknown generator {0:?}")]
    Generator(String),
    #[error("bad exponent {0} in word")]
    Exponent(i64),
    #[error("bad vertex kind {0:?}")]
    VertexKind(String),
    #[error("bad edge origin")]
    Origin,
    #[error("sign must be +1 or -1")]
    Sign,
    #[error(transparent)]
    Graph(#[from] dehn_core::dehngraph::GraphError),
}

fn parse_coeffs(cs: &[String]) -> Result<Polynomial, FormatError> {
    let coeffs = cs
        .iter()
        .map(|c| c.parse::<Rational>().map_err(|_| FormatError::Coefficient(c.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(coeffs))
}

impl TryFrom<&RatFuncJson> for RatFunc {
    type Error = FormatError;
    fn try_from(j: &RatFuncJson) -> Result<Self, FormatError> {
        RatFunc::new(parse_coeffs(&j.num)?, parse_coeffs(&j.den)?).map_err(|_| FormatError::ZeroDenominator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub entries: Vec<Vec<RatFuncJson>>,
}

impl From<&FieldMatrix> for MatrixJson {
    fn from(m: &FieldMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(RatFuncJson::from).collect()).collect(),
        }
    }
}

// Dehn graph.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    /// "crossing", "region" or "basepoint".
    pub kind: String,
    /// Crossing or region id in the diagram; absent for the basepoint.
    #[serde(rename = "ref", skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<usize>,
    pub index: u8,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginJson {
    /// Crossing id and corner position.
    Corner([usize; 2]),
    GammaPlus(usize),
    GammaMinus(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub sign: i8,
    pub word: Vec<(String, i64)>,
    pub origin: OriginJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub generators: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

/// Runs of one letter are merged into a single power.
pub fn word_json(w: &Word) -> Vec<(String, i64)> {
    let mut runs: Vec<(usize, i64)> = Vec::new();
    for &(g, e) in w.letters() {
        match runs.last_mut() {
            Some((h, f)) if *h == g && (*f > 0) == (e > 0) => *f += i64::from(e),
            _ => runs.push((g, i64::from(e))),
        }
    }
    runs.into_iter().map(|(g, e)| (generator_name(g), e)).collect()
}

fn parse_word(letters: &[(String, i64)]) -> Result<Word, FormatError> {
    let mut out = Vec::new();
    for (name, e) in letters {
        let g = parse_generator_name(name).ok_or_else(|| FormatError::Generator(name.clone()))?;
        if *e == 0 || e.unsigned_abs() > 1 << 16 {
            return Err(FormatError::Exponent(*e));
        }
        let step: i8 = if *e > 0 { 1 } else { -1 };
        out.extend(std::iter::repeat_n((g, step), e.unsigned_abs() as usize));
    }
    Word::from_letters(out).ok_or(FormatError::Exponent(0))
}

impl From<&DehnGraph> for GraphJson {
    fn from(g: &DehnGraph) -> Self {
        let vertices = g
            .vertices()
            .iter()
            .map(|v| {
                let (kind, reference) = match v.kind {
                    VertexKind::Crossing(c) => ("crossing", Some(c)),
                    VertexKind::Region(r) => ("region", Some(r)),
                    VertexKind::Basepoint => ("basepoint", None),
                };
                VertexJson { id: v.id, kind: kind.to_string(), reference, index: v.index, name: g.vertex_name(v.id) }
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                from: e.from,
                to: e.to,
                sign: e.label.sign,
                word: word_json(&e.label.word),
                origin: match e.origin {
                    EdgeOrigin::Corner(c) => OriginJson::Corner([c.crossing, usize::from(c.position)]),
                    EdgeOrigin::RegionPlus(r) => OriginJson::GammaPlus(r),
                    EdgeOrigin::RegionMinus(r) => OriginJson::GammaMinus(r),
                },
            })
            .collect();
        GraphJson { generators: g.generators(), vertices, edges }
    }
}

impl TryFrom<&GraphJson> for DehnGraph {
    type Error = FormatError;
    fn try_from(j: &GraphJson) -> Result<Self, FormatError> {
        let vertices = j
            .vertices
            .iter()
            .map(|v| {
                let kind = match (v.kind.as_str(), v.reference) {
                    ("crossing", Some(c)) => VertexKind::Crossing(c),
                    ("region", Some(r)) => VertexKind::Region(r),
                    ("basepoint", None) => VertexKind::Basepoint,
                    _ => return Err(FormatError::VertexKind(v.kind.clone())),
                };
                Ok(Vertex { id: v.id, kind, index: v.index })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let edges = j
            .edges
            .iter()
            .map(|e| {
                if e.sign != 1 && e.sign != -1 {
                    return Err(FormatError::Sign);
                }
                let origin = match e.origin {
                    OriginJson::Corner([c, p]) => {
                        let position = u8::try_from(p).ok().filter(|&p| p < 4).ok_or(FormatError::Origin)?;
                        EdgeOrigin::Corner(Corner { crossing: c, position })
                    }
                    OriginJson::GammaPlus(r) => EdgeOrigin::RegionPlus(r),
                    OriginJson::GammaMinus(r) => EdgeOrigin::RegionMinus(r),
                };
                let label = GroupRingTerm::new(e.sign, parse_word(&e.word)?);
                Ok(GraphEdge { from: e.from, to: e.to, label, origin })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DehnGraph::from_parts(vertices, edges, j.generators)?)
    }
}

// Diagram debug dump.

#[derive(Clone, Debug, Serialize)]
pub struct CrossingJson {
    pub id: usize,
    pub rotation: [u32; 4],
    pub over_arc: String,
    pub under_in_arc: String,
    pub under_out_arc: String,
    pub sign: i8,
    pub over_in_slot: u8,
    /// Region of the corner between slot i and slot i + 1.
    pub corner_regions: [usize; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcJson {
    pub id: usize,
    pub name: String,
    pub edges: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionJson {
    pub id: usize,
    pub unbounded: bool,
    /// (crossing, corner position) pairs.
    pub corners: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramJson {
    pub crossings: Vec<CrossingJson>,
    pub arcs: Vec<ArcJson>,
    pub regions: Vec<RegionJson>,
}

impl From<&KnotDiagram> for DiagramJson {
    fn from(d: &KnotDiagram) -> Self {
        let corner_regions = |c: usize| [0u8, 1, 2, 3].map(|position| d.region_of(Corner { crossing: c, position }));
        DiagramJson {
            crossings: d
                .crossings()
                .iter()
                .map(|c| CrossingJson {
                    id: c.id,
                    rotation: c.rotation,
                    over_arc: generator_name(c.over_arc),
                    under_in_arc: generator_name(c.under_in_arc),
                    under_out_arc: generator_name(c.under_out_arc),
                    sign: c.sign,
                    over_in_slot: c.over_in,
                    corner_regions: corner_regions(c.id),
                })
                .collect(),
            arcs: d
                .arcs()
                .iter()
                .map(|a| ArcJson { id: a.id, name: generator_name(a.id), edges: a.edges.clone() })
                .collect(),
            regions: d
                .regions()
                .iter()
                .map(|r| RegionJson {
                    id: r.id,
                    unbounded: r.is_unbounded,
                    corners: r.corners.iter().map(|c| [c.crossing, usize::from(c.position)]).collect(),
                })
                .collect(),
        }
    }
}

// Chain complex dump.

#[derive(Clone, Debug, Serialize)]
pub struct BasisJson {
    /// Graph vertex names of the blocks of each chain group, in block order.
    pub c2: Vec<String>,
    pub c1: Vec<String>,
    pub c0: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson {
    pub dim: usize,
    pub basis: BasisJson,
    pub d2: MatrixJson,
    pub d1: MatrixJson,
}

pub fn complex_json(cx: &ChainComplex, g: &DehnGraph) -> ComplexJson {
    let names = |vs: &[usize]| vs.iter().map(|&v| g.vertex_name(v)).collect();
    ComplexJson {
        dim: cx.dim,
        basis: BasisJson { c2: names(&cx.basis.c2), c1: names(&cx.basis.c1), c0: names(&cx.basis.c0) },
        d2: MatrixJson::from(&cx.d2),
        d1: MatrixJson::from(&cx.d1),
    }
}

// Command results.

#[derive(Clone, Debug, Serialize)]
pub struct UnitJson {
    pub sign: i8,
    pub power: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionJson {
    pub raw: RatFuncJson,
    pub normalized: RatFuncJson,
    /// `raw = sign * t^power * normalized`.
    pub unit: UnitJson,
}

impl From<&TorsionValue> for TorsionJson {
    fn from(t: &TorsionValue) -> Self {
        TorsionJson {
            raw: (&t.raw).into(),
            normalized: (&t.normalized).into(),
            unit: UnitJson { sign: t.unit_sign, power: t.unit_power },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectTermJson {
    pub from: String,
    pub to: String,
    pub value: RatFuncJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectJson {
    pub representative: RatFuncJson,
    pub terms: Vec<DefectTermJson>,
}

pub fn defect_json(rep: &RatFunc, terms: &[DefectTerm], g: &DehnGraph) -> DefectJson {
    DefectJson {
        representative: rep.into(),
        terms: terms
            .iter()
            .map(|t| {
                let e = &g.edges()[t.edge];
                DefectTermJson { from: g.vertex_name(e.from), to: g.vertex_name(e.to), value: (&t.value).into() }
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComputeChecksJson {
    pub exact: bool,
    pub propagator: bool,
    pub lescop: bool,
    pub milnor: bool,
    pub d2_consistency: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComputeJson {
    pub schema_version: u32,
    pub pd: String,
    pub crossings: usize,
    pub unbounded_region: usize,
    pub torsion: TorsionJson,
    pub defect: DefectJson,
    pub checks: ComputeChecksJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphOutputJson {
    pub schema_version: u32,
    pub pd: String,
    #[serde(flatten)]
    pub graph: GraphJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleJson {
    pub schema_version: u32,
    pub pd: String,
    /// Integer coefficients as decimal strings, constant term first.
    pub alexander: Vec<String>,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub rank_d2: usize,
    pub rank_d1: usize,
    pub c2_dim: usize,
    pub c1_dim: usize,
    pub c0_dim: usize,
    pub boundary_squared_vanishes: bool,
}

impl From<&ExactnessWitness> for WitnessJson {
    fn from(w: &ExactnessWitness) -> Self {
        WitnessJson {
            rank_d2: w.rank_d2,
            rank_d1: w.rank_d1,
            c2_dim: w.c2_dim,
            c1_dim: w.c1_dim,
            c0_dim: w.c0_dim,
            boundary_squared_vanishes: w.boundary_squared_vanishes,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckFlagsJson {
    pub exact: bool,
    pub propagator: bool,
    pub d2_consistency: bool,
    pub lescop: bool,
    pub milnor: bool,
    pub seed_independence: bool,
    pub region_independence: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub schema_version: u32,
    pub pd: String,
    pub passed: bool,
    pub seeds: u64,
    pub checks: CheckFlagsJson,
    pub exactness: WitnessJson,
}

pub fn check_json(pd: String, seeds: u64, r: &CheckReport) -> CheckJson {
    CheckJson {
        schema_version: SCHEMA_VERSION,
        pd,
        passed: r.all_passed(),
        seeds,
        checks: CheckFlagsJson {
            exact: r.exact,
            propagator: r.propagator,
            d2_consistency: r.d2_consistency,
            lescop: r.lescop,
            milnor: r.milnor,
            seed_independence: r.seed_independent,
            region_independence: r.region_independent,
        },
        exactness: (&r.exactness).into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorJson {
    pub schema_version: u32,
    pub error: String,
    pub code: i32,
    pub message: String,
    /// 1-based input line, when the error belongs to one knot.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
}
