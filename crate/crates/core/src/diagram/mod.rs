//! Oriented knot diagrams built from PD codes.
//!
//! Slots of a PD tuple are numbered 0..4 counterclockwise, slot 0 being the
//! incoming under-strand. A *corner* `(c, s)` is the wedge at crossing `c`
//! between slot `s` and slot `s + 1`. Regions are traced as cyclic lists of
//! corners, so a region touching the same crossing twice keeps both
//! incidences.

mod pd;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::dehngraph::Word;

pub use pd::{parse_pd, PdCode};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PdError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: &'static str },
    #[error("empty PD code")]
    Empty,
    #[error("edge label {label} appears {count} times, expected 2")]
    LabelCount { label: u32, count: usize },
    #[error("PD code describes a link with {components} components")]
    MultipleComponents { components: usize },
    #[error("strand orientation is inconsistent at crossing {crossing}")]
    Orientation { crossing: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("not a planar diagram: traced {faces} faces, expected {expected}")]
    NotPlanar { faces: usize, expected: usize },
    #[error("region {region} does not exist (diagram has {count} regions)")]
    NoSuchRegion { region: usize, count: usize },
}

/// A wedge between two consecutive slots of a crossing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Corner {
    pub crossing: usize,
    /// Lies between slot `position` and slot `position + 1` (mod 4).
    pub position: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub id: usize,
    pub over_arc: usize,
    pub under_in_arc: usize,
    pub under_out_arc: usize,
    /// +1 for a positive (right-handed) crossing.
    pub sign: i8,
    /// Slot where the over-strand enters (1 or 3); it leaves at the opposite
    /// slot.
    pub over_in: u8,
    /// Edge labels at slots 0..4, counterclockwise.
    pub rotation: [u32; 4],
}

impl Crossing {
    pub fn over_out(&self) -> u8 {
        (self.over_in + 2) % 4
    }
}

/// A maximal over-strand run between two undercrossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    /// Edge labels in order of travel.
    pub edges: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    pub corners: Vec<Corner>,
    pub is_unbounded: bool,
}

/// An oriented edge of the diagram with the regions on either side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: u32,
    pub arc: usize,
    /// Slot positions (flattened `4 * crossing + slot`) of the two ends.
    pub tail: usize,
    pub head: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug)]
pub struct KnotDiagram {
    pd: PdCode,
    crossings: Vec<Crossing>,
    arcs: Vec<Arc>,
    regions: Vec<Region>,
    edges: Vec<Edge>,
    corner_region: Vec<[usize; 4]>,
    unbounded: usize,
}

impl KnotDiagram {
    /// Builds the diagram, choosing the unbounded region by the default
    /// rule (see [`KnotDiagram::default_unbounded`]).
    pub fn build(pd: &PdCode) -> Result<Self, DiagramError> {
        Self::build_with_outer(pd, None)
    }

    /// Builds the diagram with `outer` as the unbounded region, or the
    /// default choice when `None`.
    pub fn build_with_outer(pd: &PdCode, outer: Option<usize>) -> Result<Self, DiagramError> {
        let strand = pd.strand().expect("PdCode is validated on construction");
        let k = pd.len();
        let slot_label = |pos: usize| pd.crossings()[pos / 4][pos % 4];

        // Arcs: a new arc starts after every arrival at an under-in slot.
        let mut edge_arc = vec![0usize; 4 * k];
        let mut arcs: Vec<Arc> = Vec::with_capacity(k);
        let mut current = Arc { id: 0, edges: Vec::new() };
        for &tail in &strand.tails {
            let head = strand.partner[tail];
            current.edges.push(slot_label(tail));
            edge_arc[tail] = current.id;
            edge_arc[head] = current.id;
            if head.is_multiple_of(4) {
                let next = Arc { id: current.id + 1, edges: Vec::new() };
                arcs.push(core::mem::replace(&mut current, next));
            }
        }
        debug_assert!(current.edges.is_empty());
        debug_assert_eq!(arcs.len(), k);

        let mut is_tail = vec![false; 4 * k];
        for &t in &strand.tails {
            is_tail[t] = true;
        }

        let crossings: Vec<Crossing> = (0..k)
            .map(|c| {
                let over_in: u8 = if is_tail[4 * c + 1] { 3 } else { 1 };
                Crossing {
                    id: c,
                    over_arc: edge_arc[4 * c + over_in as usize],
                    under_in_arc: edge_arc[4 * c],
                    under_out_arc: edge_arc[4 * c + 2],
                    sign: if over_in == 3 { 1 } else { -1 },
                    over_in,
                    rotation: pd.crossings()[c],
                }
            })
            .collect();

        // Face tracing: the face of corner (c, s) continues along slot s+1 to
        // the far end (c', s') of that edge and picks up corner (c', s').
        let mut corner_region = vec![[usize::MAX; 4]; k];
        let mut regions = Vec::new();
        for c in 0..k {
            for s in 0..4 {
                if corner_region[c][s] != usize::MAX {
                    continue;
                }
                let id = regions.len();
                let mut corners = Vec::new();
                let (mut cc, mut ss) = (c, s);
                while corner_region[cc][ss] == usize::MAX {
                    corner_region[cc][ss] = id;
                    corners.push(Corner { crossing: cc, position: ss as u8 });
                    let far = strand.partner[4 * cc + (ss + 1) % 4];
                    cc = far / 4;
                    ss = far % 4;
                }
                regions.push(Region { id, corners, is_unbounded: false });
            }
        }
        if regions.len() != k + 2 {
            return Err(DiagramError::NotPlanar { faces: regions.len(), expected: k + 2 });
        }

        // Walking out of slot s, corner s-1 is on the right and corner s on
        // the left.
        let edges = strand
            .tails
            .iter()
            .map(|&tail| {
                let (c, s) = (tail / 4, tail % 4);
                Edge {
                    label: slot_label(tail),
                    arc: edge_arc[tail],
                    tail,
                    head: strand.partner[tail],
                    left: corner_region[c][s],
                    right: corner_region[c][(s + 3) % 4],
                }
            })
            .collect();

        let mut diagram = KnotDiagram { pd: pd.clone(), crossings, arcs, regions, edges, corner_region, unbounded: 0 };
        let outer = match outer {
            Some(r) => r,
            None => diagram.default_unbounded(),
        };
        diagram.set_unbounded(outer)?;
        Ok(diagram)
    }

    /// The region with the most corners; ties go to the lowest id.
    pub fn default_unbounded(&self) -> usize {
        let mut best = 0;
        for r in &self.regions {
            if r.corners.len() > self.regions[best].corners.len() {
                best = r.id;
            }
        }
        best
    }

    fn set_unbounded(&mut self, region: usize) -> Result<(), DiagramError> {
        if region >= self.regions.len() {
            return Err(DiagramError::NoSuchRegion { region, count: self.regions.len() });
        }
        for r in &mut self.regions {
            r.is_unbounded = r.id == region;
        }
        self.unbounded = region;
        Ok(())
    }

    /// Same diagram with a different choice of unbounded region.
    pub fn with_unbounded(&self, region: usize) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.set_unbounded(region)?;
        Ok(d)
    }

    pub fn pd(&self) -> &PdCode {
        &self.pd
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn unbounded_region(&self) -> usize {
        self.unbounded
    }

    /// Bounded region ids in increasing order.
    pub fn bounded_regions(&self) -> impl Iterator<Item = usize> + '_ {
        let u = self.unbounded;
        (0..self.regions.len()).filter(move |&r| r != u)
    }

    pub fn region_of(&self, corner: Corner) -> usize {
        self.corner_region[corner.crossing][corner.position as usize]
    }

    /// The region-adjacency (dual) graph walked breadth-first from `root`:
    /// for every region other than `root`, the edge through which it was
    /// first reached, plus the edges not used by the spanning tree.
    pub(crate) fn dual_spanning_tree(&self, root: usize) -> (Vec<(usize, usize)>, Vec<usize>) {
        let n = self.regions.len();
        let mut adjacent: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            adjacent[e.left].push(i);
            if e.right != e.left {
                adjacent[e.right].push(i);
            }
        }
        let mut reached = vec![false; n];
        let mut tree_edge = vec![false; self.edges.len()];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        reached[root] = true;
        while let Some(r) = queue.pop_front() {
            for &i in &adjacent[r] {
                let e = &self.edges[i];
                let other = if e.left == r { e.right } else { e.left };
                if !reached[other] {
                    reached[other] = true;
                    tree_edge[i] = true;
                    order.push((other, i));
                    queue.push_back(other);
                }
            }
        }
        let non_tree = (0..self.edges.len()).filter(|&i| !tree_edge[i]).collect();
        (order, non_tree)
    }

    /// Wirtinger presentation: one generator per arc and one relation per
    /// crossing.
    pub fn wirtinger(&self) -> WirtingerPresentation {
        let relations = self
            .crossings
            .iter()
            .map(|c| {
                // z = x^-s y x^s, as the relator x^-s y x^s z^-1
                let s = c.sign as i32;
                let x = Word::generator(c.over_arc);
                let y = Word::generator(c.under_in_arc);
                let z = Word::generator(c.under_out_arc);
                x.pow(-s).mul(&y).mul(&x.pow(s)).mul(&z.inverse())
            })
            .collect();
        WirtingerPresentation { generators: self.arcs.len(), relations }
    }
}

/// A presentation of the knot group with generators `0..generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub generators: usize,
    /// Relators: each word is trivial in the group.
    pub relations: Vec<Word>,
}
