//! End-to-end evaluation of a PD code and the self-checks that go with it.

use alloc::vec::Vec;

use crate::dehngraph::{build_d1, build_d2, build_dehn_graph, check_d2, D2Error, DehnGraph};
use crate::diagram::{DiagramError, KnotDiagram, PdCode};
use crate::invariants::{
    build_propagator, check_lescop_relation, defect, defect_equal_mod_z, defect_terms, torsion,
    torsion_equal_up_to_units, DefectTerm, DefectValue, InvariantError, Propagator, TorsionValue,
};
use crate::mscomplex::{build_complex, witness, ChainComplex, ExactnessWitness, Representation};
use crate::oracle::{fox_alexander, milnor_check, AlexanderPolynomial};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Region to treat as unbounded; `None` picks the default.
    pub outer_region: Option<usize>,
    /// Seed for the order in which complement coordinates are tried.
    pub pivot_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    RegionLabels(#[from] D2Error),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Everything computed for one diagram with the abelian representation.
#[derive(Clone, Debug)]
pub struct KnotReport {
    pub diagram: KnotDiagram,
    pub graph: DehnGraph,
    pub representation: Representation,
    pub complex: ChainComplex,
    pub propagator: Propagator,
    pub torsion: TorsionValue,
    pub defect: DefectValue,
    pub defect_terms: Vec<DefectTerm>,
}

pub fn build_graph(pd: &PdCode, outer_region: Option<usize>) -> Result<(KnotDiagram, DehnGraph), PipelineError> {
    let diagram = KnotDiagram::build_with_outer(pd, outer_region)?;
    let graph = build_dehn_graph(&diagram, &build_d1(&diagram), &build_d2(&diagram));
    Ok((diagram, graph))
}

pub fn analyze(pd: &PdCode, options: &AnalysisOptions) -> Result<KnotReport, PipelineError> {
    let (diagram, graph) = build_graph(pd, options.outer_region)?;
    let representation = Representation::abelian(&diagram.wirtinger());
    let complex = build_complex(&graph, &representation);
    let propagator = build_propagator(&complex, options.pivot_seed)?;
    let torsion = torsion(&complex, &propagator)?;
    let defect_terms = defect_terms(&graph, &complex, &propagator, &representation)?;
    let defect = defect(&graph, &complex, &propagator, &representation)?;
    Ok(KnotReport { diagram, graph, representation, complex, propagator, torsion, defect, defect_terms })
}

/// Outcome of the self-checks on one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    /// `d1 d2 = 0` and the complex is acyclic.
    pub exact: bool,
    pub exactness: ExactnessWitness,
    /// The three propagator identities.
    pub propagator: bool,
    /// Region labels agree across every diagram edge.
    pub d2_consistency: bool,
    /// Defect agrees with the logarithmic derivative of the torsion mod Z.
    pub lescop: bool,
    /// Torsion times `(t - 1)` matches the Fox-calculus Alexander polynomial.
    pub milnor: bool,
    /// Torsion and defect agree for every pivot seed tried.
    pub seed_independent: bool,
    /// Torsion and defect agree for every choice of unbounded region.
    pub region_independent: bool,
    pub alexander: AlexanderPolynomial,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.exact
            && self.propagator
            && self.d2_consistency
            && self.lescop
            && self.milnor
            && self.seed_independent
            && self.region_independent
    }
}

/// Runs every self-check, trying seeds `0..seeds` besides the ascending
/// order.
pub fn run_checks(pd: &PdCode, options: &AnalysisOptions, seeds: u64) -> Result<CheckReport, PipelineError> {
    let (diagram, graph) = build_graph(pd, options.outer_region)?;
    let representation = Representation::abelian(&diagram.wirtinger());
    let complex = build_complex(&graph, &representation);
    let exactness = witness(&complex);
    let d2_consistency = check_d2(&build_d2(&diagram), &diagram, &representation).is_ok();
    let alexander = fox_alexander(&diagram.wirtinger());
    if !exactness.is_exact() {
        return Ok(CheckReport {
            exact: false,
            exactness,
            propagator: false,
            d2_consistency,
            lescop: false,
            milnor: false,
            seed_independent: false,
            region_independent: false,
            alexander,
        });
    }

    let base = analyze(pd, options)?;
    let propagator = base.propagator.identities(&base.complex).map(|i| i.all()).unwrap_or(false);
    let lescop = check_lescop_relation(&base.torsion, &base.defect);
    let milnor = milnor_check(&base.torsion, &alexander);

    let agrees = |other: &KnotReport| {
        torsion_equal_up_to_units(&base.torsion, &other.torsion) && defect_equal_mod_z(&base.defect, &other.defect)
    };
    let mut seed_independent = true;
    for seed in 0..seeds {
        let other = analyze(pd, &AnalysisOptions { pivot_seed: Some(seed), ..*options })?;
        let ok = other.propagator.identities(&other.complex).map(|i| i.all()).unwrap_or(false);
        seed_independent &= ok && agrees(&other);
    }
    let mut region_independent = true;
    for r in 0..diagram.regions().len() {
        let other = analyze(pd, &AnalysisOptions { outer_region: Some(r), ..*options })?;
        region_independent &= agrees(&other);
    }

    Ok(CheckReport {
        exact: true,
        exactness,
        propagator,
        d2_consistency,
        lescop,
        milnor,
        seed_independent,
        region_independent,
        alexander,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn trefoil_checks_pass() {
        let pd = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let report = run_checks(&pd, &AnalysisOptions::default(), 4).unwrap();
        assert!(report.all_passed(), "{:?}", report);
    }

    #[test]
    fn bad_region_is_reported() {
        let pd = parse_pd("[[1,2,2,1]]").unwrap();
        let opts = AnalysisOptions { outer_region: Some(7), pivot_seed: None };
        assert!(matches!(analyze(&pd, &opts), Err(PipelineError::Diagram(DiagramError::NoSuchRegion { .. }))));
    }
}
