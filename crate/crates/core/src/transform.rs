//! Diagram-level operations (mirror, reverse, edge and vertex connected
//! sums) and parametric generators for the example families.
//!
//! Generators encode the families as twist-region templates; fidelity is
//! asserted by the constituent invariants in the test suites, not by
//! matching any particular picture.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{ArcId, Color, ColoredDiagram, DiagramError, DiagramNode, EdgeId, NodeIx};
use crate::orient::{vertex_types, GraphLinks, TotalOrientation};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("edges must share a color (found {0} and {1})")]
    ColorMismatch(Color, Color),
    #[error("edge {0:?} not found")]
    NoSuchEdge(EdgeId),
    #[error("node {0} is not a vertex")]
    NotAVertex(NodeIx),
    #[error("closed edges cannot be summed along")]
    ClosedEdge,
    #[error("vertex cyclic color orders must be opposite for a planar sum")]
    CyclicOrder,
    #[error("total orientations do not match on the chosen edges")]
    OrientationMismatch,
    #[error("vertex types are not opposite")]
    VertexTypesNotOpposite,
    #[error("unknown generator name '{0}'")]
    UnknownName(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Transport a total orientation from one diagram to a derived diagram.
///
/// `arc_map` sends a surviving old arc to its label in the new diagram
/// (`None` for arcs consumed by the surgery); `end_map` sends an old slot
/// position to its new position. Every new component's direction is chosen
/// to preserve the geometric flow on the witness arcs; two witnesses that
/// disagree signal an orientation incompatibility.
fn transport_orientation(
    old_d: &ColoredDiagram,
    old_links: &GraphLinks,
    t: &TotalOrientation,
    new_d: &ColoredDiagram,
    new_links: &GraphLinks,
    arc_map: &dyn Fn(ArcId) -> Option<ArcId>,
    end_map: &dyn Fn((usize, usize)) -> Option<(usize, usize)>,
    out: &mut [Vec<Option<bool>>; 3],
) -> Result<(), TransformError> {
    let old_slots = old_d.slot_table();
    let new_slots = new_d.slot_table();
    for k in 0..3 {
        let old = &old_links.exts[k];
        let new = &new_links.exts[k];
        for (&arc, &of) in &old.arc_flow {
            let Some(new_arc) = arc_map(arc) else { continue };
            let Some(&nf) = new.arc_flow.get(&new_arc) else { continue };
            // Free loops have no slot positions; their direction carries over
            // directly (nothing downstream observes it).
            let Some(&(e0, e1)) = old_slots.get(&arc) else {
                let bit = of.forward == t.dirs[k][of.component];
                set_dir(&mut out[k], nf.component, nf.forward == bit)?;
                continue;
            };
            let actual_forward = of.forward == t.dirs[k][of.component];
            let old_from = if actual_forward { e0 } else { e1 };
            let Some(new_from) = end_map(old_from) else { continue };
            let Some(&(s0, s1)) = new_slots.get(&new_arc) else { continue };
            let want = if new_from == s0 {
                nf.forward
            } else {
                debug_assert_eq!(new_from, s1, "mapped end belongs to the arc");
                !nf.forward
            };
            set_dir(&mut out[k], nf.component, want)?;
        }
    }
    Ok(())
}

fn set_dir(out: &mut [Option<bool>], comp: usize, want: bool) -> Result<(), TransformError> {
    match out[comp] {
        None => {
            out[comp] = Some(want);
            Ok(())
        }
        Some(prev) if prev == want => Ok(()),
        Some(_) => Err(TransformError::OrientationMismatch),
    }
}

fn finish_dirs(out: [Vec<Option<bool>>; 3]) -> TotalOrientation {
    TotalOrientation {
        dirs: out.map(|v| v.into_iter().map(|b| b.unwrap_or(true)).collect()),
    }
}

/// Mirror image: over/under swapped at every crossing (cyclic slot shift by
/// one). The orientation is transported componentwise: the same geometric
/// directions expressed against the mirror's canonical directions.
pub fn mirror(
    d: &ColoredDiagram,
    t: &TotalOrientation,
) -> (ColoredDiagram, TotalOrientation) {
    let nodes: Vec<DiagramNode> = d
        .nodes()
        .iter()
        .map(|n| match n {
            DiagramNode::Crossing(s) => DiagramNode::Crossing([s[1], s[2], s[3], s[0]]),
            DiagramNode::Vertex(s) => DiagramNode::Vertex(*s),
        })
        .collect();
    let mut m = ColoredDiagram::new(d.name.clone(), nodes, d.arc_colors().clone())
        .expect("mirroring preserves validity");
    for &(a, c) in d.free_loops() {
        m.push_free_loop(a, c);
    }

    let old_links = GraphLinks::new(d);
    let new_links = GraphLinks::new(&m);
    let mut out: [Vec<Option<bool>>; 3] = [
        vec![None; new_links.exts[0].link.component_count()],
        vec![None; new_links.exts[1].link.component_count()],
        vec![None; new_links.exts[2].link.component_count()],
    ];
    let is_crossing: Vec<bool> = d.nodes().iter().map(|n| n.is_crossing()).collect();
    transport_orientation(
        d,
        &old_links,
        t,
        &m,
        &new_links,
        &|a| Some(a),
        &|(ix, s)| {
            Some(if is_crossing[ix] {
                (ix, (s + 3) % 4)
            } else {
                (ix, s)
            })
        },
        &mut out,
    )
    .expect("mirror transport cannot conflict");
    (m, finish_dirs(out))
}

/// Reverse the total orientation (the diagram is unchanged).
pub fn reverse(t: &TotalOrientation) -> TotalOrientation {
    t.reversed()
}

/// How the two half-edges are matched in an edge connected sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Matching {
    /// First half of e1 joins the first half of e2.
    Parallel,
    /// First half of e1 joins the second half of e2.
    Crossed,
}

/// Edge connected sum: cut an arc in the interior of each chosen edge and
/// cross-join the halves. Both edges must carry the same color.
///
/// When orientations are supplied they must match on the pair of edges
/// (both induced directions glue head-to-tail); the sum's orientation is
/// inherited. Returns the summed diagram and the transported orientation
/// when inputs carried one.
pub fn edge_sum(
    d1: &ColoredDiagram,
    e1: EdgeId,
    t1: Option<&TotalOrientation>,
    d2: &ColoredDiagram,
    e2: EdgeId,
    t2: Option<&TotalOrientation>,
    matching: Matching,
) -> Result<(ColoredDiagram, Option<TotalOrientation>), TransformError> {
    let edges1 = d1.derive_edges();
    let edges2 = d2.derive_edges();
    let edge1 = edges1
        .iter()
        .find(|e| e.id == e1)
        .ok_or(TransformError::NoSuchEdge(e1))?;
    let edge2 = edges2
        .iter()
        .find(|e| e.id == e2)
        .ok_or(TransformError::NoSuchEdge(e2))?;
    if edge1.color != edge2.color {
        return Err(TransformError::ColorMismatch(edge1.color, edge2.color));
    }
    if edge1.is_closed() || edge2.is_closed() {
        return Err(TransformError::ClosedEdge);
    }

    // Offset d2's arcs and nodes after d1's.
    let offset = d1
        .arc_colors()
        .keys()
        .map(|a| a.0)
        .max()
        .expect("nonempty diagram");
    let shift = |a: ArcId| ArcId(a.0 + offset);
    let mut nodes: Vec<DiagramNode> = d1.nodes().to_vec();
    let node_offset = nodes.len();
    for n in d2.nodes() {
        nodes.push(match n {
            DiagramNode::Crossing(s) => {
                DiagramNode::Crossing([shift(s[0]), shift(s[1]), shift(s[2]), shift(s[3])])
            }
            DiagramNode::Vertex(s) => {
                DiagramNode::Vertex([shift(s[0]), shift(s[1]), shift(s[2])])
            }
        });
    }
    let mut colors: BTreeMap<ArcId, Color> = d1.arc_colors().clone();
    for (&a, &c) in d2.arc_colors() {
        colors.insert(shift(a), c);
    }

    // Cut the first arc of each edge and cross-join: arc x (ends p0, p1 in
    // d1) and arc y (ends q0, q1 in d2, shifted). Matching::Parallel joins
    // p0-side to q1-side and p1-side to q0-side so the strands run through.
    let x = edge1.arcs[0];
    let y = edge2.arcs[0];
    let (p0, p1) = d1.slot_table()[&x];
    let (q0raw, q1raw) = d2.slot_table()[&y];
    let q0 = (q0raw.0 + node_offset, q0raw.1);
    let q1 = (q1raw.0 + node_offset, q1raw.1);
    let y_shifted = shift(y);

    // New arcs: u joins p0..q?, w joins p1..q?.
    let u = ArcId(colors.keys().map(|a| a.0).max().unwrap() + 1);
    let w = ArcId(u.0 + 1);
    let c = edge1.color;
    colors.remove(&x);
    colors.remove(&y_shifted);
    colors.insert(u, c);
    colors.insert(w, c);
    let (u_ends, w_ends) = match matching {
        Matching::Parallel => ((p0, q1), (p1, q0)),
        Matching::Crossed => ((p0, q0), (p1, q1)),
    };
    let set = |nodes: &mut Vec<DiagramNode>, end: (usize, usize), val: ArcId| {
        let slots = match &mut nodes[end.0] {
            DiagramNode::Crossing(s) => &mut s[..],
            DiagramNode::Vertex(s) => &mut s[..],
        };
        slots[end.1] = val;
    };
    set(&mut nodes, u_ends.0, u);
    set(&mut nodes, u_ends.1, u);
    set(&mut nodes, w_ends.0, w);
    set(&mut nodes, w_ends.1, w);

    let sum = ColoredDiagram::new(None, nodes, colors)?;

    // Orientation transport and the compatibility check.
    let out_t = match (t1, t2) {
        (Some(t1), Some(t2)) => {
            let ls = GraphLinks::new(&sum);
            let mut out: [Vec<Option<bool>>; 3] = [
                vec![None; ls.exts[0].link.component_count()],
                vec![None; ls.exts[1].link.component_count()],
                vec![None; ls.exts[2].link.component_count()],
            ];
            let l1 = GraphLinks::new(d1);
            transport_orientation(
                d1,
                &l1,
                t1,
                &sum,
                &ls,
                &|a| if a == x { None } else { Some(a) },
                &|e| Some(e),
                &mut out,
            )?;
            let l2 = GraphLinks::new(d2);
            transport_orientation(
                d2,
                &l2,
                t2,
                &sum,
                &ls,
                &|a| if a == y { None } else { Some(shift(a)) },
                &|(ix, s)| Some((ix + node_offset, s)),
                &mut out,
            )?;
            Some(finish_dirs(out))
        }
        _ => None,
    };
    Ok((sum, out_t))
}

/// Vertex connected sum: delete one vertex from each diagram and join the
/// three arc ends by color. The two vertices must have opposite
/// counterclockwise color orders (a planar gluing), and opposite vertex
/// types when orientations are supplied.
pub fn vertex_sum(
    d1: &ColoredDiagram,
    v1: NodeIx,
    t1: Option<&TotalOrientation>,
    d2: &ColoredDiagram,
    v2: NodeIx,
    t2: Option<&TotalOrientation>,
) -> Result<(ColoredDiagram, Option<TotalOrientation>), TransformError> {
    let slots1 = match d1.nodes().get(v1) {
        Some(DiagramNode::Vertex(s)) => *s,
        _ => return Err(TransformError::NotAVertex(v1)),
    };
    let slots2 = match d2.nodes().get(v2) {
        Some(DiagramNode::Vertex(s)) => *s,
        _ => return Err(TransformError::NotAVertex(v2)),
    };
    let order1: Vec<Color> = slots1.iter().map(|&a| d1.color_of(a)).collect();
    let order2: Vec<Color> = slots2.iter().map(|&a| d2.color_of(a)).collect();
    // Opposite cyclic orders: order2 reversed must be a rotation of order1.
    let rev2: Vec<Color> = order2.iter().rev().copied().collect();
    let opposite = (0..3).any(|r| (0..3).all(|i| order1[i] == rev2[(i + r) % 3]));
    if !opposite {
        return Err(TransformError::CyclicOrder);
    }
    if let (Some(t1), Some(t2)) = (t1, t2) {
        let l1 = GraphLinks::new(d1);
        let l2 = GraphLinks::new(d2);
        let vt1 = vertex_types(d1, &l1, t1)
            .into_iter()
            .find(|v| v.vertex == v1)
            .expect("v1 classified");
        let vt2 = vertex_types(d2, &l2, t2)
            .into_iter()
            .find(|v| v.vertex == v2)
            .expect("v2 classified");
        if !vt1.is_opposite(&vt2) {
            return Err(TransformError::VertexTypesNotOpposite);
        }
    }

    let offset = d1
        .arc_colors()
        .keys()
        .map(|a| a.0)
        .max()
        .expect("nonempty diagram");
    let shift = |a: ArcId| ArcId(a.0 + offset);
    let mut nodes: Vec<DiagramNode> = Vec::new();
    // Keep all nodes except the two vertices; remember index shifts.
    let mut colors: BTreeMap<ArcId, Color> = BTreeMap::new();
    for (ix, n) in d1.nodes().iter().enumerate() {
        if ix != v1 {
            nodes.push(n.clone());
        }
    }
    for (ix, n) in d2.nodes().iter().enumerate() {
        if ix == v2 {
            continue;
        }
        nodes.push(match n {
            DiagramNode::Crossing(s) => {
                DiagramNode::Crossing([shift(s[0]), shift(s[1]), shift(s[2]), shift(s[3])])
            }
            DiagramNode::Vertex(s) => {
                DiagramNode::Vertex([shift(s[0]), shift(s[1]), shift(s[2])])
            }
        });
    }
    for (&a, &c) in d1.arc_colors() {
        colors.insert(a, c);
    }
    for (&a, &c) in d2.arc_colors() {
        colors.insert(shift(a), c);
    }
    // Fuse arcs by color: the arc of color c at v1 merges with the arc of
    // color c at v2 (relabeled to the v1 arc).
    for &c in Color::ALL.iter() {
        let a1 = slots1
            .iter()
            .copied()
            .find(|&a| d1.color_of(a) == c)
            .expect("vertex meets all colors");
        let a2 = shift(
            slots2
                .iter()
                .copied()
                .find(|&a| d2.color_of(a) == c)
                .expect("vertex meets all colors"),
        );
        colors.remove(&a2);
        for n in nodes.iter_mut() {
            let slots = match n {
                DiagramNode::Crossing(s) => &mut s[..],
                DiagramNode::Vertex(s) => &mut s[..],
            };
            for slot in slots {
                if *slot == a2 {
                    *slot = a1;
                }
            }
        }
    }
    let sum = ColoredDiagram::new(None, nodes, colors)?;
    let out_t = match (t1, t2) {
        (Some(t1), Some(t2)) => {
            let ls = GraphLinks::new(&sum);
            let mut out: [Vec<Option<bool>>; 3] = [
                vec![None; ls.exts[0].link.component_count()],
                vec![None; ls.exts[1].link.component_count()],
                vec![None; ls.exts[2].link.component_count()],
            ];
            // Node index maps: d1 skips v1, d2 skips v2 and appends.
            let n1 = d1.nodes().len();
            let fused: BTreeMap<ArcId, ArcId> = fused_pairs(d1, &slots1, d2, &slots2, offset);
            let l1 = GraphLinks::new(d1);
            transport_orientation(
                d1,
                &l1,
                t1,
                &sum,
                &ls,
                &|a| Some(a),
                &|(ix, s)| {
                    if ix == v1 {
                        None
                    } else {
                        Some((if ix > v1 { ix - 1 } else { ix }, s))
                    }
                },
                &mut out,
            )?;
            let l2 = GraphLinks::new(d2);
            transport_orientation(
                d2,
                &l2,
                t2,
                &sum,
                &ls,
                &|a| {
                    let sa = shift(a);
                    Some(*fused.get(&sa).unwrap_or(&sa))
                },
                &|(ix, s)| {
                    if ix == v2 {
                        None
                    } else {
                        Some((n1 - 1 + if ix > v2 { ix - 1 } else { ix }, s))
                    }
                },
                &mut out,
            )?;
            Some(finish_dirs(out))
        }
        _ => None,
    };
    Ok((sum, out_t))
}

/// The relabeling of the three d2-side vertex arcs onto their d1 partners.
fn fused_pairs(
    d1: &ColoredDiagram,
    slots1: &[ArcId; 3],
    d2: &ColoredDiagram,
    slots2: &[ArcId; 3],
    offset: u32,
) -> BTreeMap<ArcId, ArcId> {
    let mut map = BTreeMap::new();
    for &c in Color::ALL.iter() {
        let a1 = slots1
            .iter()
            .copied()
            .find(|&a| d1.color_of(a) == c)
            .expect("vertex meets all colors");
        let a2 = slots2
            .iter()
            .copied()
            .find(|&a| d2.color_of(a) == c)
            .expect("vertex meets all colors");
        map.insert(ArcId(a2.0 + offset), a1);
    }
    map
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Incremental builder for braid-like diagrams: lanes of descending strands
/// with colors, crossed pairwise.
struct LaneBuilder {
    nodes: Vec<DiagramNode>,
    colors: BTreeMap<ArcId, Color>,
    lanes: Vec<ArcId>,
    lane_colors: Vec<Color>,
    next: u32,
}

impl LaneBuilder {
    fn new(lane_colors: Vec<Color>) -> LaneBuilder {
        let mut b = LaneBuilder {
            nodes: Vec::new(),
            colors: BTreeMap::new(),
            lanes: Vec::new(),
            lane_colors: lane_colors.clone(),
            next: 1,
        };
        for c in lane_colors {
            let a = b.fresh(c);
            b.lanes.push(a);
        }
        b
    }

    fn fresh(&mut self, c: Color) -> ArcId {
        let a = ArcId(self.next);
        self.next += 1;
        self.colors.insert(a, c);
        a
    }

    /// One crossing between lanes `pos` and `pos+1`; strands swap lanes.
    /// `positive` means the strand entering on the right passes over.
    fn crossing(&mut self, pos: usize, positive: bool) {
        let l = self.lanes[pos];
        let r = self.lanes[pos + 1];
        let (cl, cr) = (self.lane_colors[pos], self.lane_colors[pos + 1]);
        let l2 = self.fresh(cr);
        let r2 = self.fresh(cl);
        // After the crossing the left lane carries the old right strand.
        if positive {
            self.nodes.push(DiagramNode::Crossing([l, l2, r2, r]));
        } else {
            self.nodes.push(DiagramNode::Crossing([r, l, l2, r2]));
        }
        self.lanes[pos] = l2;
        self.lanes[pos + 1] = r2;
        self.lane_colors.swap(pos, pos + 1);
    }

    /// A twist region: `count` crossings of the given handedness between the
    /// two lanes.
    fn twist(&mut self, pos: usize, count: usize, positive: bool) {
        for _ in 0..count {
            self.crossing(pos, positive);
        }
    }
}

/// Trivial theta curve: two vertices joined by three edges.
pub fn gen_trivial_theta() -> ColoredDiagram {
    let nodes = vec![
        DiagramNode::Vertex([ArcId(1), ArcId(2), ArcId(3)]),
        DiagramNode::Vertex([ArcId(1), ArcId(3), ArcId(2)]),
    ];
    let colors = [
        (ArcId(1), Color::R),
        (ArcId(2), Color::G),
        (ArcId(3), Color::B),
    ]
    .into_iter()
    .collect();
    let mut d = ColoredDiagram::new(Some("trivial-theta".into()), nodes, colors)
        .expect("trivial theta is valid");
    d = d.canonicalize().0;
    d.name = Some("trivial-theta".into());
    d
}

/// Planar tetrahedral Klein graph: the outer triangle and a central vertex,
/// Tait-colored by perfect matchings.
pub fn gen_tetrahedron() -> ColoredDiagram {
    let a = ArcId;
    let nodes = vec![
        DiagramNode::Vertex([a(1), a(4), a(3)]),
        DiagramNode::Vertex([a(2), a(5), a(1)]),
        DiagramNode::Vertex([a(3), a(6), a(2)]),
        DiagramNode::Vertex([a(6), a(4), a(5)]),
    ];
    let colors = [
        (a(1), Color::R),
        (a(6), Color::R),
        (a(2), Color::G),
        (a(4), Color::G),
        (a(3), Color::B),
        (a(5), Color::B),
    ]
    .into_iter()
    .collect();
    let mut d = ColoredDiagram::new(Some("tetrahedron".into()), nodes, colors)
        .expect("tetrahedral graph is valid");
    d = d.canonicalize().0;
    d.name = Some("tetrahedron".into());
    d
}

/// The theta curve whose three constituent knots are all (2, 2n+1) torus
/// knots: the annular closure of the 3-strand braid (s1 s2)^(3n) s1 s2 s1
/// with two vertices.
pub fn gen_theta_n(n: usize) -> ColoredDiagram {
    assert!(n >= 1, "theta_n is defined for n >= 1");
    let mut b = LaneBuilder::new(vec![Color::R, Color::G, Color::B]);
    let top = [b.lanes[0], b.lanes[1], b.lanes[2]];
    for _ in 0..3 * n {
        b.crossing(0, true);
        b.crossing(1, true);
    }
    b.crossing(0, true);
    b.crossing(1, true);
    b.crossing(0, true);
    let bottom = [b.lanes[0], b.lanes[1], b.lanes[2]];
    let mut nodes = b.nodes;
    // Top vertex: lanes left to right are counterclockwise; bottom vertex
    // sits left of the braid, reached by nested wrap arcs, making the
    // outermost (rightmost) lane first in counterclockwise order.
    nodes.insert(0, DiagramNode::Vertex(top));
    nodes.push(DiagramNode::Vertex([bottom[2], bottom[1], bottom[0]]));
    let mut d =
        ColoredDiagram::new(Some(format!("theta-{n}")), nodes, b.colors).expect("theta_n valid");
    d = d.canonicalize().0;
    d.name = Some(format!("theta-{n}"));
    d
}

/// Kinoshita-Wolcott theta curve with p, q, r full twists: all three
/// constituent knots are unknots.
pub fn gen_kinoshita(p: i64, q: i64, r: i64) -> ColoredDiagram {
    let mut b = LaneBuilder::new(vec![Color::R, Color::G, Color::B]);
    let top = [b.lanes[0], b.lanes[1], b.lanes[2]];
    b.twist(0, 2 * p.unsigned_abs() as usize, p >= 0); // r-g region
    b.twist(1, 2 * q.unsigned_abs() as usize, q >= 0); // g-b region
    b.crossing(0, true); // route r past g; lanes become g, r, b
    b.twist(1, 2 * r.unsigned_abs() as usize, r >= 0); // r-b region
    let bottom = [b.lanes[0], b.lanes[1], b.lanes[2]];
    let mut nodes = b.nodes;
    nodes.insert(0, DiagramNode::Vertex(top));
    // Plat closure: the bottom vertex is directly below the lanes.
    nodes.push(DiagramNode::Vertex([bottom[2], bottom[1], bottom[0]]));
    let name = format!("kinoshita-{p}-{q}-{r}");
    let mut d = ColoredDiagram::new(Some(name.clone()), nodes, b.colors)
        .expect("kinoshita theta valid");
    d = d.canonicalize().0;
    d.name = Some(name);
    d
}

/// A vertexless Klein graph whose rb bicolored link is the (2, 2k) torus
/// link: red and blue loops twisted 2k times, plus a split green kink.
pub fn gen_torus2k(k: usize) -> ColoredDiagram {
    assert!(k >= 1);
    // Braid closure of sigma_1^(2k): crossing t is [L_t, L_{t+1}, R_{t+1}, R_t].
    let m = 2 * k;
    let a = |v: u32| ArcId(v);
    let l = |t: usize| a(1 + 2 * (t % m) as u32);
    let r = |t: usize| a(2 + 2 * (t % m) as u32);
    let mut nodes = Vec::new();
    let mut colors: BTreeMap<ArcId, Color> = BTreeMap::new();
    for t in 0..m {
        nodes.push(DiagramNode::Crossing([l(t), l(t + 1), r(t + 1), r(t)]));
    }
    // Strand A starts in the left lane and alternates; color it red.
    for t in 0..m {
        let (ca, cb) = if t % 2 == 0 {
            (Color::R, Color::B)
        } else {
            (Color::B, Color::R)
        };
        colors.insert(l(t), ca);
        colors.insert(r(t), cb);
    }
    // Disjoint green kink circle keeps all three colors present.
    let g1 = a(2 * m as u32 + 1);
    let g2 = a(2 * m as u32 + 2);
    nodes.push(DiagramNode::Crossing([g1, g1, g2, g2]));
    colors.insert(g1, Color::G);
    colors.insert(g2, Color::G);
    let name = format!("torus2k-{k}");
    let mut d =
        ColoredDiagram::new(Some(name.clone()), nodes, colors).expect("torus2k valid");
    d = d.canonicalize().0;
    d.name = Some(name);
    d
}

/// Canonical small diagrams by name.
pub fn gen_basic(name: &str) -> Result<ColoredDiagram, TransformError> {
    match name {
        "trivial-theta" | "trivial_theta" => Ok(gen_trivial_theta()),
        "tetrahedron" => Ok(gen_tetrahedron()),
        other => {
            if let Some(rest) = other
                .strip_prefix("torus2k-")
                .or_else(|| other.strip_prefix("torus2k("))
            {
                let digits: String = rest.chars().filter(|c| c.is_ascii_digit()).collect();
                if let Ok(k) = digits.parse::<usize>() {
                    if k >= 1 {
                        return Ok(gen_torus2k(k));
                    }
                }
            }
            Err(TransformError::UnknownName(other.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksg;
    use crate::link::component_count;

    #[test]
    fn generators_are_valid_planar_and_round_trip() {
        let mut corpus = vec![
            gen_trivial_theta(),
            gen_tetrahedron(),
            gen_theta_n(1),
            gen_theta_n(2),
            gen_kinoshita(1, 1, 1),
            gen_kinoshita(0, 0, 0),
            gen_torus2k(1),
            gen_torus2k(2),
        ];
        for d in corpus.drain(..) {
            assert_eq!(d.code_euler_characteristic(), 2, "{:?} planar", d.name);
            let text = ksg::serialize(&d);
            let d2 = ksg::parse(&text).unwrap().diagram;
            let (canon, _) = d.canonicalize();
            assert_eq!(canon.nodes(), d2.nodes(), "{:?} round trip", d.name);
        }
    }

    #[test]
    fn tetrahedron_is_three_hamiltonian() {
        let d = gen_tetrahedron();
        let (per, mu, ham) = component_count(&d);
        assert_eq!(per, [1, 1, 1]);
        assert_eq!(mu, 3);
        assert!(ham);
        assert_eq!(d.vertex_count(), 4);
    }

    #[test]
    fn theta_n_is_three_hamiltonian() {
        for n in 1..=3 {
            let d = gen_theta_n(n);
            let (per, mu, ham) = component_count(&d);
            assert_eq!(per, [1, 1, 1], "n={n}");
            assert_eq!(mu, 3);
            assert!(ham);
            assert_eq!(d.vertex_count(), 2);
            assert_eq!(d.crossing_count(), 6 * n + 3);
        }
    }

    #[test]
    fn kinoshita_shape() {
        let d = gen_kinoshita(1, 2, 3);
        let (per, mu, ham) = component_count(&d);
        assert_eq!(per, [1, 1, 1]);
        assert_eq!(mu, 3);
        assert!(ham);
        assert_eq!(d.crossing_count(), 2 * (1 + 2 + 3) + 1);
    }

    #[test]
    fn torus2k_extractions() {
        let d = gen_torus2k(2);
        let (per, mu, ham) = component_count(&d);
        assert_eq!(per, [2, 2, 2]);
        assert_eq!(mu, 6);
        assert!(!ham);
        // The rb link is the (2,4) torus link: linking number +/-2.
        let links = GraphLinks::new(&d);
        let o = links.exts[0].link.orient_default();
        let lk = o.linking_number(0, 1).unwrap();
        assert_eq!(lk.abs(), 2);
    }

    #[test]
    fn mirror_is_an_involution() {
        let d = gen_theta_n(1);
        let links = GraphLinks::new(&d);
        let t = TotalOrientation::default_for(&links);
        let (m, mt) = mirror(&d, &t);
        let (mm, mmt) = mirror(&m, &mt);
        let (canon_d, _) = d.canonicalize();
        let (canon_mm, _) = mm.canonicalize();
        assert_eq!(canon_d.nodes(), canon_mm.nodes());
        assert_eq!(mmt, t);
    }

    #[test]
    fn edge_sum_counts() {
        let d = gen_trivial_theta();
        let edges = d.derive_edges();
        let red = edges.iter().find(|e| e.color == Color::R).unwrap().id;
        let (sum, _) = edge_sum(&d, red, None, &d, red, None, Matching::Parallel).unwrap();
        assert_eq!(sum.vertex_count(), 4);
        let (per, mu, _) = component_count(&sum);
        assert_eq!(mu, 4, "mu(#2) = 3 + 3 - 2, got {per:?}");
    }

    #[test]
    fn edge_sum_rejects_color_mismatch() {
        let d = gen_trivial_theta();
        let edges = d.derive_edges();
        let red = edges.iter().find(|e| e.color == Color::R).unwrap().id;
        let green = edges.iter().find(|e| e.color == Color::G).unwrap().id;
        assert!(edge_sum(&d, red, None, &d, green, None, Matching::Parallel).is_err());
    }

    #[test]
    fn vertex_sum_counts() {
        let d = gen_trivial_theta();
        // Vertex 0 of one copy against vertex 1 of another: opposite cyclic
        // orders by construction.
        let (sum, _) = vertex_sum(&d, 0, None, &d, 1, None).unwrap();
        assert_eq!(sum.vertex_count(), 2);
        let (_, mu, ham) = component_count(&sum);
        assert_eq!(mu, 3, "mu(#3) = 3 + 3 - 3");
        assert!(ham);
    }

    #[test]
    fn vertex_sum_rejects_same_cyclic_order() {
        let d = gen_trivial_theta();
        assert!(vertex_sum(&d, 0, None, &d, 0, None).is_err());
    }
}
