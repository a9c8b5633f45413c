//! Total orientations of Klein graphs: a direction for every bicolored-link
//! component, the induced double orientations and signs on edges, the
//! classification of vertices, and the signed seam-vertex count.
//!
//! Among the two triply negative vertex types, the cyclic type RGB (the
//! bicolored arcs run r->g, g->b, b->r) counts as `+1`; this choice is a
//! convention of this crate.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Color, ColoredDiagram, Edge, EdgeId, NodeIx};
use crate::link::{bicolored_link, BicoloredLink};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrientError {
    #[error("{0} components exceed the enumeration guard of 24; pass an explicit orientation")]
    TooManyComponents(usize),
    #[error("orientation spec: {0}")]
    BadSpec(String),
    #[error("pair {0} has {1} components, index {2} out of range")]
    ComponentRange(&'static str, usize, usize),
}

/// The three bicolored links of a diagram, with provenance, in pair order
/// rb, bg, rg.
#[derive(Clone, Debug)]
pub struct GraphLinks {
    pub exts: [BicoloredLink; 3],
}

impl GraphLinks {
    pub fn new(d: &ColoredDiagram) -> GraphLinks {
        let mk = |k: usize| {
            let (a, b) = Color::PAIRS[k];
            bicolored_link(d, a, b)
        };
        GraphLinks {
            exts: [mk(0), mk(1), mk(2)],
        }
    }

    pub fn mu_per_pair(&self) -> [usize; 3] {
        [
            self.exts[0].link.component_count(),
            self.exts[1].link.component_count(),
            self.exts[2].link.component_count(),
        ]
    }

    pub fn mu(&self) -> usize {
        self.mu_per_pair().iter().sum()
    }
}

/// A direction bit for every component of every bicolored link
/// (`true` = the component's canonical direction).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TotalOrientation {
    pub dirs: [Vec<bool>; 3],
}

impl TotalOrientation {
    /// All components in canonical direction.
    pub fn default_for(links: &GraphLinks) -> TotalOrientation {
        let mu = links.mu_per_pair();
        TotalOrientation {
            dirs: [vec![true; mu[0]], vec![true; mu[1]], vec![true; mu[2]]],
        }
    }

    /// Every direction bit flipped; the diagram is unchanged.
    pub fn reversed(&self) -> TotalOrientation {
        TotalOrientation {
            dirs: [
                self.dirs[0].iter().map(|b| !b).collect(),
                self.dirs[1].iter().map(|b| !b).collect(),
                self.dirs[2].iter().map(|b| !b).collect(),
            ],
        }
    }

    pub fn mu(&self) -> usize {
        self.dirs.iter().map(|v| v.len()).sum()
    }

    /// Parse `default` or `rb:c0=+,c1=- bg:c0=+ rg:c0=-`; omitted components
    /// default to `+`.
    pub fn parse(spec: &str, links: &GraphLinks) -> Result<TotalOrientation, OrientError> {
        let mut t = TotalOrientation::default_for(links);
        let spec = spec.trim();
        if spec == "default" {
            return Ok(t);
        }
        for group in spec.split_whitespace() {
            let (pair_name, rest) = group
                .split_once(':')
                .ok_or_else(|| OrientError::BadSpec(format!("missing ':' in '{group}'")))?;
            let k = Color::PAIR_NAMES
                .iter()
                .position(|&n| n == pair_name)
                .ok_or_else(|| OrientError::BadSpec(format!("unknown pair '{pair_name}'")))?;
            for item in rest.split(',') {
                let (comp, dir) = item
                    .split_once('=')
                    .ok_or_else(|| OrientError::BadSpec(format!("missing '=' in '{item}'")))?;
                let idx: usize = comp
                    .strip_prefix('c')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| OrientError::BadSpec(format!("bad component '{comp}'")))?;
                if idx >= t.dirs[k].len() {
                    return Err(OrientError::ComponentRange(
                        Color::PAIR_NAMES[k],
                        t.dirs[k].len(),
                        idx,
                    ));
                }
                t.dirs[k][idx] = match dir {
                    "+" => true,
                    "-" => false,
                    other => {
                        return Err(OrientError::BadSpec(format!("bad direction '{other}'")))
                    }
                };
            }
        }
        Ok(t)
    }

    /// Render in the `orient` syntax.
    pub fn to_spec(&self) -> String {
        let mut parts = Vec::new();
        for k in 0..3 {
            if self.dirs[k].is_empty() {
                continue;
            }
            let items: Vec<String> = self.dirs[k]
                .iter()
                .enumerate()
                .map(|(i, &b)| format!("c{i}={}", if b { '+' } else { '-' }))
                .collect();
            parts.push(format!("{}:{}", Color::PAIR_NAMES[k], items.join(",")));
        }
        parts.join(" ")
    }
}

/// Lazily yields all `2^mu` total orientations in lexicographic order
/// (`+` before `-`, rb components first).
pub fn enumerate_orientations(
    links: &GraphLinks,
) -> Result<impl Iterator<Item = TotalOrientation>, OrientError> {
    let mu = links.mu();
    if mu > 24 {
        return Err(OrientError::TooManyComponents(mu));
    }
    let per = links.mu_per_pair();
    let total: u64 = 1 << mu;
    Ok((0..total).map(move |k| {
        let mut dirs = [Vec::new(), Vec::new(), Vec::new()];
        let mut bit = 0;
        for p in 0..3 {
            for _ in 0..per[p] {
                // Highest bit first so that k = 0 is all-plus and order is
                // lexicographic in the printed spec.
                let shift = mu - 1 - bit;
                dirs[p].push((k >> shift) & 1 == 0);
                bit += 1;
            }
        }
        TotalOrientation { dirs }
    }))
}

/// The sign of one doubly oriented edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeDoubleOrientation {
    pub edge: EdgeId,
    pub color: Color,
    /// Directions along the edge's run order induced by its two bicolored
    /// links, in pair-index order for the two pairs containing the color.
    pub along_run: [bool; 2],
    /// `+1` parallel, `-1` antiparallel.
    pub sign: i64,
}

/// Double orientations and signs of all edges (knot components included:
/// their two directions are reported the same way).
pub fn double_orientations(
    d: &ColoredDiagram,
    links: &GraphLinks,
    t: &TotalOrientation,
) -> Vec<EdgeDoubleOrientation> {
    let edges = d.derive_edges();
    edges
        .iter()
        .map(|e| {
            let pairs = pairs_of_color(e.color);
            let along = [
                edge_direction_in_pair(links, t, e, pairs[0]),
                edge_direction_in_pair(links, t, e, pairs[1]),
            ];
            EdgeDoubleOrientation {
                edge: e.id,
                color: e.color,
                along_run: along,
                sign: if along[0] == along[1] { 1 } else { -1 },
            }
        })
        .collect()
}

/// Pair indices containing a color, in pair order.
fn pairs_of_color(c: Color) -> [usize; 2] {
    let mut out = [0usize; 2];
    let mut n = 0;
    for (k, &(a, b)) in Color::PAIRS.iter().enumerate() {
        if a == c || b == c {
            out[n] = k;
            n += 1;
        }
    }
    debug_assert_eq!(n, 2);
    out
}

/// Direction the pair's oriented link induces along an edge, relative to the
/// edge's run order.
fn edge_direction_in_pair(
    links: &GraphLinks,
    t: &TotalOrientation,
    e: &Edge,
    pair: usize,
) -> bool {
    let a = e.arcs[0];
    let af = links.exts[pair]
        .arc_flow
        .get(&a)
        .expect("edge arc survives in a pair containing its color");
    let actual_forward = af.forward == t.dirs[pair][af.component];
    actual_forward == e.arc_dirs[0]
}

/// Cyclic type of a triply negative vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CyclicType {
    Rgb,
    Bgr,
}

/// Classification of one vertex under a total orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexType {
    pub vertex: NodeIx,
    /// Directions of the three bicolored arcs through the vertex, as
    /// low-color-to-high-color flags in pair order rb, bg, rg.
    pub lo_to_hi: [bool; 3],
    /// Count of incident negative edge ends (1 or 3).
    pub negatives: usize,
    pub cyclic: Option<CyclicType>,
}

impl VertexType {
    /// The two tetrahedral classes partition the eight local orientations by
    /// the parity of their direction bits.
    pub fn tetrahedral_class(&self) -> usize {
        self.lo_to_hi.iter().filter(|&&b| b).count() % 2
    }

    /// Types are opposite when every bicolored arc direction is reversed.
    pub fn is_opposite(&self, other: &VertexType) -> bool {
        (0..3).all(|k| self.lo_to_hi[k] != other.lo_to_hi[k])
    }
}

/// Classify every vertex: bicolored arc directions, negative-edge count, and
/// RGB/BGR type for triply negative vertices.
pub fn vertex_types(
    d: &ColoredDiagram,
    links: &GraphLinks,
    t: &TotalOrientation,
) -> Vec<VertexType> {
    let mut out = Vec::new();
    for (ix, node) in d.nodes().iter().enumerate() {
        if node.is_crossing() {
            continue;
        }
        let mut lo_to_hi = [false; 3];
        for k in 0..3 {
            let pass = links.exts[k]
                .vertex_pass
                .get(&ix)
                .expect("every vertex is spliced in every pair");
            lo_to_hi[k] = pass.lo_to_hi == t.dirs[k][pass.component];
        }
        let (x, y, z) = (lo_to_hi[0], lo_to_hi[1], lo_to_hi[2]);
        // Edge-end signs: r negative iff rg and rb disagree at the end, etc.
        let r_neg = z != x;
        let g_neg = y == z;
        let b_neg = x != y;
        let negatives = [r_neg, g_neg, b_neg].iter().filter(|&&n| n).count();
        debug_assert!(negatives % 2 == 1, "odd negative count at every vertex");
        let cyclic = if negatives == 3 {
            // RGB: arcs run r->g, g->b, b->r.
            if (x, y, z) == (false, true, true) {
                Some(CyclicType::Rgb)
            } else {
                debug_assert_eq!((x, y, z), (true, false, false));
                Some(CyclicType::Bgr)
            }
        } else {
            None
        };
        out.push(VertexType {
            vertex: ix,
            lo_to_hi,
            negatives,
            cyclic,
        });
    }
    out
}

/// Signed seam-vertex count: RGB vertices minus BGR vertices. Its absolute
/// value is the least seam-vertex count of a totally oriented slice foam for
/// the graph.
pub fn signed_seam_vertex_count(
    d: &ColoredDiagram,
    links: &GraphLinks,
    t: &TotalOrientation,
) -> i64 {
    vertex_types(d, links, t)
        .iter()
        .map(|v| match v.cyclic {
            Some(CyclicType::Rgb) => 1,
            Some(CyclicType::Bgr) => -1,
            None => 0,
        })
        .sum()
}

/// Matched/unmatched classification for edges with two distinct endpoint
/// vertices: a k-edge is matched iff its two adjacent i-edges carry equal
/// signs (equivalently the two adjacent j-edges do).
pub fn classify_edges_matched(
    d: &ColoredDiagram,
    links: &GraphLinks,
    t: &TotalOrientation,
) -> BTreeMap<EdgeId, bool> {
    let edges = d.derive_edges();
    let signs: BTreeMap<EdgeId, i64> = double_orientations(d, links, t)
        .into_iter()
        .map(|e| (e.edge, e.sign))
        .collect();
    // Edge incident to a vertex slot.
    let mut at_slot: BTreeMap<(NodeIx, usize), EdgeId> = BTreeMap::new();
    for e in &edges {
        if let Some((s0, s1)) = e.ends {
            at_slot.insert(s0, e.id);
            at_slot.insert(s1, e.id);
        }
    }
    let mut out = BTreeMap::new();
    for e in &edges {
        let Some((s0, s1)) = e.ends else { continue };
        if s0.0 == s1.0 {
            continue; // loop at a single vertex
        }
        let i = Color::ALL
            .into_iter()
            .find(|&c| c != e.color)
            .expect("two other colors exist");
        let adj = |slot: (NodeIx, usize)| -> EdgeId {
            let node = &d.nodes()[slot.0];
            let s = node
                .slots()
                .iter()
                .enumerate()
                .find(|(_, &a)| d.color_of(a) == i)
                .map(|(k, _)| k)
                .expect("vertex meets all colors");
            at_slot[&(slot.0, s)]
        };
        let (e0, e1) = (adj(s0), adj(s1));
        out.insert(e.id, signs[&e0] == signs[&e1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksg;

    fn theta() -> ColoredDiagram {
        ksg::parse("vertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=g 3=b\n")
            .unwrap()
            .diagram
    }

    #[test]
    fn enumeration_counts_and_order() {
        let d = theta();
        let links = GraphLinks::new(&d);
        assert_eq!(links.mu(), 3);
        let all: Vec<_> = enumerate_orientations(&links).unwrap().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], TotalOrientation::default_for(&links));
        // Last is the full reversal.
        assert_eq!(all[7], all[0].reversed());
        // All distinct.
        let set: std::collections::BTreeSet<String> =
            all.iter().map(|t| t.to_spec()).collect();
        assert_eq!(set.len(), 8);
    }

    #[test]
    fn theta_vertices_are_opposite_and_sv_vanishes() {
        let d = theta();
        let links = GraphLinks::new(&d);
        for t in enumerate_orientations(&links).unwrap() {
            let vt = vertex_types(&d, &links, &t);
            assert_eq!(vt.len(), 2);
            assert!(vt[0].is_opposite(&vt[1]));
            assert_eq!(signed_seam_vertex_count(&d, &links, &t), 0);
        }
    }

    #[test]
    fn every_vertex_has_odd_negative_count() {
        let d = theta();
        let links = GraphLinks::new(&d);
        for t in enumerate_orientations(&links).unwrap() {
            for vt in vertex_types(&d, &links, &t) {
                assert!(vt.negatives == 1 || vt.negatives == 3);
            }
        }
    }

    #[test]
    fn vertex_types_cover_all_eight_equally() {
        let d = theta();
        let links = GraphLinks::new(&d);
        let mut counts: BTreeMap<(usize, [bool; 3]), usize> = BTreeMap::new();
        for t in enumerate_orientations(&links).unwrap() {
            for vt in vertex_types(&d, &links, &t) {
                *counts.entry((vt.vertex, vt.lo_to_hi)).or_insert(0) += 1;
            }
        }
        // 2 vertices x 8 types, each hit 2^3/8 = 1 time.
        assert_eq!(counts.len(), 16);
        assert!(counts.values().all(|&c| c == 1));
    }

    #[test]
    fn reversal_flips_arrows_keeps_signs() {
        let d = theta();
        let links = GraphLinks::new(&d);
        for t in enumerate_orientations(&links).unwrap() {
            let r = t.reversed();
            let a = double_orientations(&d, &links, &t);
            let b = double_orientations(&d, &links, &r);
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(x.along_run[0], !y.along_run[0]);
                assert_eq!(x.along_run[1], !y.along_run[1]);
                assert_eq!(x.sign, y.sign);
            }
            assert_eq!(
                signed_seam_vertex_count(&d, &links, &t),
                -signed_seam_vertex_count(&d, &links, &r)
            );
        }
    }

    #[test]
    fn theta_all_plus_edges_are_matched() {
        let d = theta();
        let links = GraphLinks::new(&d);
        // Find an orientation with all edges positive.
        let mut found = false;
        for t in enumerate_orientations(&links).unwrap() {
            let signs = double_orientations(&d, &links, &t);
            if signs.iter().all(|s| s.sign == 1) {
                found = true;
                let m = classify_edges_matched(&d, &links, &t);
                assert_eq!(m.len(), 3);
                assert!(m.values().all(|&v| v));
            }
        }
        assert!(found, "some orientation makes all theta edges parallel");
    }

    #[test]
    fn orientation_spec_round_trip() {
        let d = theta();
        let links = GraphLinks::new(&d);
        let t = TotalOrientation::parse("rb:c0=- rg:c0=+", &links).unwrap();
        assert_eq!(t.dirs[0], vec![false]);
        assert_eq!(t.dirs[1], vec![true]);
        let s = t.to_spec();
        let t2 = TotalOrientation::parse(&s, &links).unwrap();
        assert_eq!(t, t2);
        assert!(TotalOrientation::parse("xy:c0=+", &links).is_err());
        assert!(TotalOrientation::parse("rb:c7=+", &links).is_err());
    }
}
