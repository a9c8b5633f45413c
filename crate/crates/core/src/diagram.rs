//! Colored planar-diagram codes for Klein graphs.
//!
//! A diagram is a list of nodes (4-slot crossings and 3-slot trivalent
//! vertices) together with a color for every arc. Slots are listed
//! counterclockwise. For a crossing, slots `{0,2}` form the under-strand and
//! slots `{1,3}` the over-strand; generators write slot 0 as the incoming
//! under-strand end, but nothing downstream depends on that choice since
//! orientations are carried separately.
//!
//! Only local combinatorial invariants are validated. Planarity of the code
//! is trusted: the generators emit realizable codes, and the braiding stage
//! independently rejects codes whose face structure is not spherical.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// One of the three edge colors, ordered `r < g < b` for canonicalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Color {
    R,
    G,
    B,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::G, Color::B];

    /// The three unordered color pairs in reporting order: rb, bg, rg.
    /// Each pair is stored with its colors sorted by the `r < g < b` order.
    pub const PAIRS: [(Color, Color); 3] = [
        (Color::R, Color::B),
        (Color::G, Color::B),
        (Color::R, Color::G),
    ];

    /// Display names matching [`Color::PAIRS`].
    pub const PAIR_NAMES: [&'static str; 3] = ["rb", "bg", "rg"];

    pub fn letter(self) -> char {
        match self {
            Color::R => 'r',
            Color::G => 'g',
            Color::B => 'b',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'r' => Some(Color::R),
            'g' => Some(Color::G),
            'b' => Some(Color::B),
            _ => None,
        }
    }

    /// The color that is neither `a` nor `b`.
    pub fn third(a: Color, b: Color) -> Color {
        assert_ne!(a, b);
        *Color::ALL
            .iter()
            .find(|c| **c != a && **c != b)
            .expect("two distinct colors leave one")
    }

    /// Index of the unordered pair {a, b} in [`Color::PAIRS`].
    pub fn pair_index(a: Color, b: Color) -> usize {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Color::PAIRS
            .iter()
            .position(|&p| p == (lo, hi))
            .expect("every unordered color pair is canonical")
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Identifier of an arc (a maximal strand segment between node slots).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArcId(pub u32);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of a node in a diagram's node list.
pub type NodeIx = usize;

/// A node of the diagram: a crossing (4 slots, ccw) or a vertex (3 slots, ccw).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagramNode {
    /// Slots ccw; `{0,2}` under-strand, `{1,3}` over-strand.
    Crossing([ArcId; 4]),
    /// Slots ccw; the three incident arcs carry pairwise distinct colors.
    Vertex([ArcId; 3]),
}

impl DiagramNode {
    pub fn slots(&self) -> &[ArcId] {
        match self {
            DiagramNode::Crossing(s) => s,
            DiagramNode::Vertex(s) => s,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, DiagramNode::Crossing(_))
    }
}

/// Identifier of a derived edge (index into [`ColoredDiagram::edges`] output).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub usize);

/// Where an arc end sits: node index and slot.
pub type SlotRef = (NodeIx, usize);

/// A derived graph edge: a maximal strand run of one color.
///
/// `arcs` lists the arcs in traversal order from `ends.0` to `ends.1`;
/// a closed run (knot component) has `ends == None` and starts at its least
/// arc. `arc_dirs[k]` records whether the run traverses `arcs[k]` from its
/// lexicographically first slot position to its second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub color: Color,
    pub arcs: Vec<ArcId>,
    pub arc_dirs: Vec<bool>,
    /// Endpoint vertex slots, or `None` for a knot component.
    pub ends: Option<(SlotRef, SlotRef)>,
}

impl Edge {
    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("arc {0} occurs {1} times across node slots, expected exactly 2")]
    ArcMultiplicity(ArcId, usize),
    #[error("arc {0} has no color assignment")]
    MissingArcColor(ArcId),
    #[error("color assigned to unknown arc {0}")]
    ColorForUnknownArc(ArcId),
    #[error("crossing {0}: under-strand arcs {1} and {2} have different colors")]
    UnderStrandColor(NodeIx, ArcId, ArcId),
    #[error("crossing {0}: over-strand arcs {1} and {2} have different colors")]
    OverStrandColor(NodeIx, ArcId, ArcId),
    #[error("vertex {0}: incident arcs do not carry three distinct colors")]
    VertexColors(NodeIx),
    #[error("diagram has no {0}-colored arc")]
    MissingColor(Color),
    #[error("diagram has no arcs")]
    Empty,
}

/// A validated colored diagram of a Klein graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDiagram {
    pub name: Option<String>,
    nodes: Vec<DiagramNode>,
    arc_colors: BTreeMap<ArcId, Color>,
    /// Arcs forming closed loops that meet no node (split unknot components).
    free_loops: Vec<(ArcId, Color)>,
}

impl ColoredDiagram {
    /// Build and validate a diagram. Node order is preserved.
    pub fn new(
        name: Option<String>,
        nodes: Vec<DiagramNode>,
        arc_colors: BTreeMap<ArcId, Color>,
    ) -> Result<Self, DiagramError> {
        let d = ColoredDiagram {
            name,
            nodes,
            arc_colors,
            free_loops: Vec::new(),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn nodes(&self) -> &[DiagramNode] {
        &self.nodes
    }

    pub fn arc_colors(&self) -> &BTreeMap<ArcId, Color> {
        &self.arc_colors
    }

    pub fn color_of(&self, a: ArcId) -> Color {
        self.arc_colors[&a]
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.is_crossing()).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_crossing()).count()
    }

    fn validate(&self) -> Result<(), DiagramError> {
        if self.arc_colors.is_empty() {
            return Err(DiagramError::Empty);
        }
        let mut occurrences: BTreeMap<ArcId, usize> = BTreeMap::new();
        for node in &self.nodes {
            for &a in node.slots() {
                *occurrences.entry(a).or_insert(0) += 1;
            }
        }
        for (&a, &n) in &occurrences {
            if n != 2 {
                return Err(DiagramError::ArcMultiplicity(a, n));
            }
            if !self.arc_colors.contains_key(&a) {
                return Err(DiagramError::MissingArcColor(a));
            }
        }
        for &a in self.arc_colors.keys() {
            if !occurrences.contains_key(&a) && !self.free_loops.iter().any(|&(f, _)| f == a) {
                return Err(DiagramError::ColorForUnknownArc(a));
            }
        }
        for (ix, node) in self.nodes.iter().enumerate() {
            match node {
                DiagramNode::Crossing(s) => {
                    if self.color_of(s[0]) != self.color_of(s[2]) {
                        return Err(DiagramError::UnderStrandColor(ix, s[0], s[2]));
                    }
                    if self.color_of(s[1]) != self.color_of(s[3]) {
                        return Err(DiagramError::OverStrandColor(ix, s[1], s[3]));
                    }
                }
                DiagramNode::Vertex(s) => {
                    let cs: BTreeSet<Color> = s.iter().map(|&a| self.color_of(a)).collect();
                    if cs.len() != 3 {
                        return Err(DiagramError::VertexColors(ix));
                    }
                }
            }
        }
        for c in Color::ALL {
            if !self.arc_colors.values().any(|&x| x == c) {
                return Err(DiagramError::MissingColor(c));
            }
        }
        Ok(())
    }

    /// The two slot positions of an arc, in node-then-slot order.
    pub fn arc_ends(&self, a: ArcId) -> (SlotRef, SlotRef) {
        let mut found = Vec::with_capacity(2);
        for (ix, node) in self.nodes.iter().enumerate() {
            for (s, &b) in node.slots().iter().enumerate() {
                if b == a {
                    found.push((ix, s));
                }
            }
        }
        assert_eq!(found.len(), 2, "validated arcs occur exactly twice");
        (found[0], found[1])
    }

    /// Derive the graph edges: maximal strand runs through crossings,
    /// terminating at vertex slots; closed runs are knot components.
    pub fn derive_edges(&self) -> Vec<Edge> {
        let ends = self.slot_table();
        let mut assigned: BTreeSet<ArcId> = BTreeSet::new();
        let mut edges: Vec<Edge> = Vec::new();

        // Open runs: start from each vertex slot not yet consumed.
        let mut vertex_slots: Vec<SlotRef> = Vec::new();
        for (ix, node) in self.nodes.iter().enumerate() {
            if let DiagramNode::Vertex(s) = node {
                for slot in 0..s.len() {
                    vertex_slots.push((ix, slot));
                }
            }
        }
        for &start in &vertex_slots {
            let first_arc = self.nodes[start.0].slots()[start.1];
            if assigned.contains(&first_arc) {
                continue;
            }
            let mut arcs = vec![first_arc];
            let mut arc_dirs = vec![ends[&first_arc].0 == start];
            assigned.insert(first_arc);
            let mut cur = other_end(&ends, first_arc, start);
            loop {
                let (ix, slot) = cur;
                match &self.nodes[ix] {
                    DiagramNode::Vertex(_) => {
                        edges.push(Edge {
                            id: EdgeId(edges.len()),
                            color: self.color_of(arcs[0]),
                            arcs,
                            arc_dirs,
                            ends: Some((start, cur)),
                        });
                        break;
                    }
                    DiagramNode::Crossing(s) => {
                        let next_slot = (slot + 2) % 4;
                        let next_arc = s[next_slot];
                        assigned.insert(next_arc);
                        arcs.push(next_arc);
                        arc_dirs.push(ends[&next_arc].0 == (ix, next_slot));
                        cur = other_end(&ends, next_arc, (ix, next_slot));
                    }
                }
            }
        }

        // Closed runs through crossings only.
        let mut remaining: Vec<ArcId> = self
            .arc_colors
            .keys()
            .copied()
            .filter(|a| !assigned.contains(a) && ends.contains_key(a))
            .collect();
        remaining.sort();
        for a in remaining {
            if assigned.contains(&a) {
                continue;
            }
            let mut arcs = vec![a];
            let mut arc_dirs = vec![true];
            assigned.insert(a);
            let start = ends[&a].0;
            let mut cur = other_end(&ends, a, start);
            loop {
                let (ix, slot) = cur;
                let s = match &self.nodes[ix] {
                    DiagramNode::Crossing(s) => s,
                    DiagramNode::Vertex(_) => unreachable!("closed run meets no vertex"),
                };
                let next_slot = (slot + 2) % 4;
                let next_arc = s[next_slot];
                if next_arc == a && next_slot == start.1 && ix == start.0 {
                    break;
                }
                assigned.insert(next_arc);
                arcs.push(next_arc);
                arc_dirs.push(ends[&next_arc].0 == (ix, next_slot));
                cur = other_end(&ends, next_arc, (ix, next_slot));
            }
            edges.push(Edge {
                id: EdgeId(edges.len()),
                color: self.color_of(arcs[0]),
                arcs,
                arc_dirs,
                ends: None,
            });
        }

        // Free loops (no node occurrences at all).
        for &(a, color) in &self.free_loops {
            edges.push(Edge {
                id: EdgeId(edges.len()),
                color,
                arcs: vec![a],
                arc_dirs: vec![true],
                ends: None,
            });
        }

        // Renumber ids after the full list is known.
        for (i, e) in edges.iter_mut().enumerate() {
            e.id = EdgeId(i);
        }
        edges
    }

    /// Map from arc to its two slot positions.
    pub fn slot_table(&self) -> BTreeMap<ArcId, (SlotRef, SlotRef)> {
        let mut table: BTreeMap<ArcId, Vec<SlotRef>> = BTreeMap::new();
        for (ix, node) in self.nodes.iter().enumerate() {
            for (s, &a) in node.slots().iter().enumerate() {
                table.entry(a).or_default().push((ix, s));
            }
        }
        table
            .into_iter()
            .map(|(a, v)| {
                assert_eq!(v.len(), 2);
                (a, (v[0], v[1]))
            })
            .collect()
    }

    /// Connected components of the node/arc incidence structure, as sets of
    /// node indices. Free loops are not included.
    pub fn node_components(&self) -> Vec<Vec<NodeIx>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let ends = self.slot_table();
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(ix) = queue.pop_front() {
                comp.push(ix);
                for (slot, &a) in self.nodes[ix].slots().iter().enumerate() {
                    let (e0, e1) = ends[&a];
                    let other = if e0 == (ix, slot) { e1 } else { e0 };
                    if !seen[other.0] {
                        seen[other.0] = true;
                        queue.push_back(other.0);
                    }
                }
            }
            comp.sort();
            comps.push(comp);
        }
        comps
    }

    /// Whether the diagram is connected as a spatial-graph code
    /// (one node component and no free loops, or a single free loop).
    pub fn is_connected_code(&self) -> bool {
        let comps = self.node_components();
        match (comps.len(), self.free_loops.len()) {
            (1, 0) => true,
            (0, 1) => true,
            _ => false,
        }
    }

    /// Euler characteristic of the surface carrying the rotation system,
    /// normalized so that planar codes give exactly `2`.
    ///
    /// Faces are traced from the counterclockwise slot orders; the raw value
    /// `V - E + F` equals `2 * components` when every component is spherical,
    /// so `2 * (components - 1)` is subtracted. Free loops are ignored (they
    /// are trivially planar).
    pub fn code_euler_characteristic(&self) -> i64 {
        // Darts: (node, slot, direction), where direction=true means the dart
        // leaves the slot. Faces are orbits of next(d) = rotate(enter(d)).
        let ends = self.slot_table();
        let mut nodes_e: i64 = 0;
        let mut edges_e: i64 = 0;
        for node in &self.nodes {
            nodes_e += 1;
            edges_e += node.slots().len() as i64;
        }
        edges_e /= 2;

        // Face tracing: a dart is identified by the slot it leaves from.
        // Leaving (ix, s) we travel along arc a to its other end (jx, t),
        // then turn to the next slot counterclockwise and leave from there.
        let mut visited: BTreeSet<SlotRef> = BTreeSet::new();
        let mut faces: i64 = 0;
        for (ix, node) in self.nodes.iter().enumerate() {
            for s in 0..node.slots().len() {
                if visited.contains(&(ix, s)) {
                    continue;
                }
                faces += 1;
                let mut cur = (ix, s);
                loop {
                    if !visited.insert(cur) {
                        break;
                    }
                    let a = self.nodes[cur.0].slots()[cur.1];
                    let (e0, e1) = ends[&a];
                    let (jx, t) = if e0 == cur { e1 } else { e0 };
                    let k = self.nodes[jx].slots().len();
                    let next = (jx, (t + 1) % k);
                    if next == (ix, s) {
                        break;
                    }
                    cur = next;
                }
            }
        }
        if self.nodes.is_empty() {
            return 2;
        }
        let components = self.node_components().len() as i64;
        nodes_e - edges_e + faces - 2 * (components - 1)
    }

    /// Canonical form: arcs renumbered 1.. by breadth-first traversal, nodes
    /// reordered by first visit, minimized over all traversal roots.
    /// Returns the canonical diagram and the arc renumbering map.
    pub fn canonicalize(&self) -> (ColoredDiagram, BTreeMap<ArcId, ArcId>) {
        if self.nodes.is_empty() {
            // Only free loops: renumber them in color order.
            let mut loops = self.free_loops.clone();
            loops.sort_by_key(|&(a, c)| (c, a));
            let mut map = BTreeMap::new();
            let mut colors = BTreeMap::new();
            let mut out = Vec::new();
            for (i, (a, c)) in loops.into_iter().enumerate() {
                let na = ArcId(i as u32 + 1);
                map.insert(a, na);
                colors.insert(na, c);
                out.push((na, c));
            }
            let d = ColoredDiagram {
                name: self.name.clone(),
                nodes: Vec::new(),
                arc_colors: colors,
                free_loops: out,
            };
            return (d, map);
        }

        let comps = self.node_components();
        // Canonicalize each component independently (best root), then order
        // components by their canonical encodings.
        let mut canon_comps: Vec<(Vec<DiagramNode>, BTreeMap<ArcId, u32>)> = Vec::new();
        for comp in &comps {
            let mut best: Option<(Vec<DiagramNode>, BTreeMap<ArcId, u32>)> = None;
            for &root in comp {
                let cand = self.bfs_encode(root);
                if best.as_ref().map_or(true, |b| cand.0 < b.0) {
                    best = Some(cand);
                }
            }
            canon_comps.push(best.expect("component has a root"));
        }
        canon_comps.sort_by(|a, b| a.0.cmp(&b.0));

        // Merge: offset arc numbers per component.
        let mut nodes = Vec::new();
        let mut map: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let mut offset: u32 = 0;
        for (enc_nodes, local) in canon_comps {
            let count = local.len() as u32;
            for node in enc_nodes {
                nodes.push(shift_node(&node, offset));
            }
            for (old, loc) in local {
                map.insert(old, ArcId(loc + offset));
            }
            offset += count;
        }
        // Free loops after all node arcs.
        let mut loops = self.free_loops.clone();
        loops.sort_by_key(|&(a, c)| (c, a));
        let mut free_out = Vec::new();
        for (a, c) in loops {
            offset += 1;
            let na = ArcId(offset);
            map.insert(a, na);
            free_out.push((na, c));
        }

        let mut colors = BTreeMap::new();
        for (&old, &c) in &self.arc_colors {
            colors.insert(map[&old], c);
        }
        let d = ColoredDiagram {
            name: self.name.clone(),
            nodes,
            arc_colors: colors,
            free_loops: free_out,
        };
        debug_assert!(d.validate().is_ok());
        (d, map)
    }

    /// BFS encoding of one component from a fixed root: returns the node list
    /// with locally renumbered arcs (1-based before offsetting) and the map.
    fn bfs_encode(&self, root: NodeIx) -> (Vec<DiagramNode>, BTreeMap<ArcId, u32>) {
        let ends = self.slot_table();
        let mut arc_num: BTreeMap<ArcId, u32> = BTreeMap::new();
        let mut node_order: Vec<NodeIx> = Vec::new();
        let mut seen: BTreeSet<NodeIx> = BTreeSet::new();
        let mut queue = VecDeque::from([root]);
        seen.insert(root);
        while let Some(ix) = queue.pop_front() {
            node_order.push(ix);
            for (slot, &a) in self.nodes[ix].slots().iter().enumerate() {
                let next = arc_num.len() as u32 + 1;
                arc_num.entry(a).or_insert(next);
                let (e0, e1) = ends[&a];
                let other = if e0 == (ix, slot) { e1 } else { e0 };
                if seen.insert(other.0) {
                    queue.push_back(other.0);
                }
            }
        }
        let nodes = node_order
            .iter()
            .map(|&ix| renumber_node(&self.nodes[ix], &arc_num))
            .collect();
        (nodes, arc_num)
    }

    /// Add a free (0-crossing) loop of the given color. Used by splicing code
    /// paths that eliminate all nodes on a component.
    pub(crate) fn push_free_loop(&mut self, a: ArcId, c: Color) {
        self.arc_colors.insert(a, c);
        self.free_loops.push((a, c));
    }

    pub fn free_loops(&self) -> &[(ArcId, Color)] {
        &self.free_loops
    }
}

fn other_end(
    ends: &BTreeMap<ArcId, (SlotRef, SlotRef)>,
    a: ArcId,
    here: SlotRef,
) -> SlotRef {
    let (e0, e1) = ends[&a];
    if e0 == here {
        e1
    } else {
        debug_assert_eq!(e1, here);
        e0
    }
}

fn renumber_node(node: &DiagramNode, map: &BTreeMap<ArcId, u32>) -> DiagramNode {
    let f = |a: ArcId| ArcId(map[&a]);
    match node {
        DiagramNode::Crossing(s) => DiagramNode::Crossing([f(s[0]), f(s[1]), f(s[2]), f(s[3])]),
        DiagramNode::Vertex(s) => DiagramNode::Vertex([f(s[0]), f(s[1]), f(s[2])]),
    }
}

fn shift_node(node: &DiagramNode, offset: u32) -> DiagramNode {
    let f = |a: ArcId| ArcId(a.0 + offset);
    match node {
        DiagramNode::Crossing(s) => DiagramNode::Crossing([f(s[0]), f(s[1]), f(s[2]), f(s[3])]),
        DiagramNode::Vertex(s) => DiagramNode::Vertex([f(s[0]), f(s[1]), f(s[2])]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksg;

    fn trivial_theta_src() -> &'static str {
        "name theta\nvertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=g 3=b\n"
    }

    #[test]
    fn trivial_theta_edges() {
        let d = ksg::parse(trivial_theta_src()).unwrap().diagram;
        assert_eq!(d.vertex_count(), 2);
        let edges = d.derive_edges();
        assert_eq!(edges.len(), 3);
        let colors: BTreeSet<Color> = edges.iter().map(|e| e.color).collect();
        assert_eq!(colors.len(), 3);
        assert!(edges.iter().all(|e| !e.is_closed()));
    }

    #[test]
    fn vertex_needs_three_colors() {
        let src = "vertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=r 3=b\n";
        let err = ksg::parse(src).unwrap_err();
        assert!(format!("{err}").contains("distinct colors"));
    }

    #[test]
    fn arc_multiplicity_enforced() {
        let src = "vertex 1: 1 2 3\ncolor 1=r 2=g 3=b\n";
        let err = ksg::parse(src).unwrap_err();
        assert!(format!("{err}").contains("expected exactly 2"));
    }

    #[test]
    fn edge_count_is_three_halves_v() {
        // Tetrahedral graph: 4 vertices, 6 edges, no crossings.
        let d = crate::transform::gen_basic("tetrahedron").unwrap();
        let edges = d.derive_edges();
        assert_eq!(edges.len(), 6);
        assert_eq!(edges.iter().filter(|e| e.is_closed()).count(), 0);
        assert_eq!(3 * d.vertex_count() / 2, 6);
    }

    #[test]
    fn kink_circle_is_closed_edge() {
        // A red kink circle disjoint from a trivial theta: 4 edges, one closed.
        let src = "vertex 1: 1 2 3\nvertex 2: 1 3 2\ncrossing 3: 4 5 5 4\n\
                   color 1=r 2=g 3=b 4=r 5=r\n";
        let d = ksg::parse(src).unwrap().diagram;
        let edges = d.derive_edges();
        assert_eq!(edges.len(), 4);
        assert_eq!(edges.iter().filter(|e| e.is_closed()).count(), 1);
        let closed = edges.iter().find(|e| e.is_closed()).unwrap();
        assert_eq!(closed.color, Color::R);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let d = ksg::parse(trivial_theta_src()).unwrap().diagram;
        let (c1, _) = d.canonicalize();
        let (c2, _) = c1.canonicalize();
        assert_eq!(c1, c2);
    }

    #[test]
    fn canonical_form_forgets_input_numbering() {
        let a = ksg::parse("vertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=g 3=b\n")
            .unwrap()
            .diagram;
        let b = ksg::parse("vertex 1: 7 9 8\nvertex 2: 7 8 9\ncolor 7=r 9=g 8=b\n")
            .unwrap()
            .diagram;
        let (ca, _) = a.canonicalize();
        let (cb, _) = b.canonicalize();
        assert_eq!(ca.nodes(), cb.nodes());
        assert_eq!(ca.arc_colors(), cb.arc_colors());
    }

    #[test]
    fn planar_codes_have_spherical_euler_characteristic() {
        let d = ksg::parse(trivial_theta_src()).unwrap().diagram;
        assert_eq!(d.code_euler_characteristic(), 2);
        let t = crate::transform::gen_basic("tetrahedron").unwrap();
        assert_eq!(t.code_euler_characteristic(), 2);
    }
}
