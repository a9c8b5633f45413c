//! Strand-level link operations: bicolored-link extraction, component
//! tracing, crossing signs, linking numbers, split decomposition.
//!
//! Crossing signs use the right-hand convention throughout: a crossing is
//! positive when a counterclockwise quarter-turn carries the over-strand
//! direction onto the under-strand direction. In slot terms (slots ccw,
//! under on `{0,2}`, over on `{1,3}`) that reads: the under-strand enters at
//! slot `(over_entry + 1) mod 4`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diagram::{ArcId, Color, ColoredDiagram, DiagramNode, NodeIx};

/// An arc-end position inside a link diagram: (crossing index, slot).
pub type End = (usize, usize);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("component indices must differ")]
    SameComponent,
    #[error("component index {0} out of range")]
    BadComponent(usize),
    #[error("orientation has {0} direction bits, diagram has {1} components")]
    DirectionCount(usize, usize),
}

/// A vertex-free link diagram: crossings plus 0-crossing unknot components.
///
/// Arcs are canonically renumbered from 1 along component traversals;
/// components are ordered least-arc-first, with free loops last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[ArcId; 4]>,
    free_loops: Vec<ArcId>,
    component_of: BTreeMap<ArcId, usize>,
    n_components: usize,
    /// Canonical flow per arc on a crossing: (from-end, to-end).
    flow: BTreeMap<ArcId, (End, End)>,
}

impl LinkDiagram {
    /// Build from raw crossing slot lists (arbitrary positive labels) and a
    /// number of extra free loops. Arcs are renumbered canonically.
    pub fn new(raw_crossings: Vec<[u32; 4]>, extra_free_loops: usize) -> LinkDiagram {
        let (link, _) = Self::new_with_map(raw_crossings, extra_free_loops);
        link
    }

    /// As [`LinkDiagram::new`], also returning the raw-label-to-arc map.
    pub fn new_with_map(
        raw_crossings: Vec<[u32; 4]>,
        extra_free_loops: usize,
    ) -> (LinkDiagram, BTreeMap<u32, ArcId>) {
        // Occurrences of each raw label.
        let mut ends: BTreeMap<u32, Vec<End>> = BTreeMap::new();
        for (ix, c) in raw_crossings.iter().enumerate() {
            for (s, &a) in c.iter().enumerate() {
                ends.entry(a).or_default().push((ix, s));
            }
        }
        for (a, v) in &ends {
            assert_eq!(v.len(), 2, "raw arc {a} must occur exactly twice");
        }

        // Trace components in raw labels.
        let mut comp_of_raw: BTreeMap<u32, usize> = BTreeMap::new();
        let mut comp_arcs: Vec<Vec<u32>> = Vec::new();
        let labels: Vec<u32> = ends.keys().copied().collect();
        for &start in &labels {
            if comp_of_raw.contains_key(&start) {
                continue;
            }
            let comp = comp_arcs.len();
            let mut order = Vec::new();
            // Flow: start arc travels from its first to its second occurrence.
            let mut cur = start;
            let mut arrive = ends[&start][1];
            loop {
                comp_of_raw.insert(cur, comp);
                order.push(cur);
                let (ix, s) = arrive;
                let s2 = (s + 2) % 4;
                let nxt = raw_crossings[ix][s2];
                if nxt == start {
                    // Closed up only if we re-enter the start arc at its
                    // original departure end.
                    let depart = ends[&start][0];
                    if (ix, s2) == depart {
                        break;
                    }
                }
                let e = &ends[&nxt];
                arrive = if e[0] == (ix, s2) { e[1] } else { e[0] };
                cur = nxt;
            }
            comp_arcs.push(order);
        }

        // Renumber: components by least raw label, arcs along traversal order.
        let mut comp_order: Vec<usize> = (0..comp_arcs.len()).collect();
        comp_order.sort_by_key(|&c| comp_arcs[c].iter().min().copied().unwrap_or(u32::MAX));
        let mut map: BTreeMap<u32, ArcId> = BTreeMap::new();
        let mut next = 1u32;
        for &c in &comp_order {
            // Rotate traversal order to start at the least raw label.
            let arcs = &comp_arcs[c];
            let min_pos = arcs
                .iter()
                .enumerate()
                .min_by_key(|&(_, a)| a)
                .map(|(i, _)| i)
                .unwrap_or(0);
            for k in 0..arcs.len() {
                let a = arcs[(min_pos + k) % arcs.len()];
                map.insert(a, ArcId(next));
                next += 1;
            }
        }
        let crossings: Vec<[ArcId; 4]> = raw_crossings
            .iter()
            .map(|c| [map[&c[0]], map[&c[1]], map[&c[2]], map[&c[3]]])
            .collect();
        let mut free_loops = Vec::new();
        for _ in 0..extra_free_loops {
            free_loops.push(ArcId(next));
            next += 1;
        }
        let link = Self::from_canonical(crossings, free_loops);
        (link, map)
    }

    /// Finish construction from already-renumbered crossings.
    fn from_canonical(crossings: Vec<[ArcId; 4]>, free_loops: Vec<ArcId>) -> LinkDiagram {
        let mut ends: BTreeMap<ArcId, Vec<End>> = BTreeMap::new();
        for (ix, c) in crossings.iter().enumerate() {
            for (s, &a) in c.iter().enumerate() {
                ends.entry(a).or_default().push((ix, s));
            }
        }
        let mut component_of: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut flow: BTreeMap<ArcId, (End, End)> = BTreeMap::new();
        let mut n_components = 0usize;
        let arcs: Vec<ArcId> = ends.keys().copied().collect();
        for &start in &arcs {
            if component_of.contains_key(&start) {
                continue;
            }
            let comp = n_components;
            n_components += 1;
            // Canonical flow: the least arc travels from its lex-least end to
            // its other end.
            let e = &ends[&start];
            let (from, to) = if e[0] <= e[1] {
                (e[0], e[1])
            } else {
                (e[1], e[0])
            };
            let mut cur = start;
            let mut cur_flow = (from, to);
            loop {
                component_of.insert(cur, comp);
                flow.insert(cur, cur_flow);
                let (ix, s) = cur_flow.1;
                let s2 = (s + 2) % 4;
                let nxt = crossings[ix][s2];
                let e = &ends[&nxt];
                let nxt_flow = if e[0] == (ix, s2) {
                    (e[0], e[1])
                } else {
                    (e[1], e[0])
                };
                if nxt == start && nxt_flow == flow[&start] {
                    break;
                }
                cur = nxt;
                cur_flow = nxt_flow;
            }
        }
        for &a in &free_loops {
            component_of.insert(a, n_components);
            n_components += 1;
        }
        LinkDiagram {
            crossings,
            free_loops,
            component_of,
            n_components,
            flow,
        }
    }

    pub fn crossings(&self) -> &[[ArcId; 4]] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[ArcId] {
        &self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.n_components
    }

    pub fn component_of(&self, a: ArcId) -> usize {
        self.component_of[&a]
    }

    /// Canonical flow of an arc that meets crossings.
    pub fn canonical_flow(&self, a: ArcId) -> (End, End) {
        self.flow[&a]
    }

    /// Orient with explicit direction bits (`true` = canonical direction).
    pub fn orient(&self, dirs: Vec<bool>) -> Result<OrientedLinkDiagram, LinkError> {
        if dirs.len() != self.n_components {
            return Err(LinkError::DirectionCount(dirs.len(), self.n_components));
        }
        Ok(OrientedLinkDiagram {
            base: self.clone(),
            dirs,
        })
    }

    /// Orient every component in its canonical direction.
    pub fn orient_default(&self) -> OrientedLinkDiagram {
        OrientedLinkDiagram {
            base: self.clone(),
            dirs: vec![true; self.n_components],
        }
    }

    /// Connected pieces of the diagram (crossing-incidence components plus
    /// one piece per free loop), each with its component-index mapping back
    /// into `self` and, per piece component, whether the piece's canonical
    /// direction agrees with this diagram's.
    pub fn split_decompose(&self) -> Vec<SplitPiece> {
        // Union-find over crossings via shared arcs.
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut arc_home: BTreeMap<ArcId, usize> = BTreeMap::new();
        for (ix, c) in self.crossings.iter().enumerate() {
            for &a in c.iter() {
                if let Some(&jx) = arc_home.get(&a) {
                    let (ra, rb) = (find(&mut parent, ix), find(&mut parent, jx));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                } else {
                    arc_home.insert(a, ix);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for ix in 0..n {
            let r = find(&mut parent, ix);
            groups.entry(r).or_default().push(ix);
        }
        let mut pieces = Vec::new();
        let mut group_list: Vec<Vec<usize>> = groups.into_values().collect();
        group_list.sort_by_key(|g| g[0]);
        for group in group_list {
            let raw: Vec<[u32; 4]> = group
                .iter()
                .map(|&ix| {
                    let c = self.crossings[ix];
                    [c[0].0, c[1].0, c[2].0, c[3].0]
                })
                .collect();
            let (link, map) = LinkDiagram::new_with_map(raw, 0);
            // Component mapping and direction agreement.
            let mut comp_map = vec![usize::MAX; link.component_count()];
            let mut dir_agree = vec![true; link.component_count()];
            for (&raw_label, &new_arc) in &map {
                let old_arc = ArcId(raw_label);
                let pc = link.component_of(new_arc);
                comp_map[pc] = self.component_of(old_arc);
            }
            // Agreement: compare flows through the least new arc of each
            // piece component. Crossing indices map via position in `group`.
            for pc in 0..link.component_count() {
                let (&raw_label, &new_arc) = map
                    .iter()
                    .filter(|&(_, &na)| link.component_of(na) == pc)
                    .min_by_key(|&(_, &na)| na)
                    .expect("component has arcs");
                let new_flow = link.canonical_flow(new_arc);
                let old_flow = self.canonical_flow(ArcId(raw_label));
                // Map the old flow's from-end into piece coordinates.
                let old_from_piece = (
                    group
                        .iter()
                        .position(|&ix| ix == old_flow.0 .0)
                        .expect("end stays in its piece"),
                    old_flow.0 .1,
                );
                dir_agree[pc] = new_flow.0 == old_from_piece;
            }
            pieces.push(SplitPiece {
                link,
                parent_components: comp_map,
                dir_agree,
            });
        }
        for &a in &self.free_loops {
            pieces.push(SplitPiece {
                link: LinkDiagram::new(Vec::new(), 1),
                parent_components: vec![self.component_of(a)],
                dir_agree: vec![true],
            });
        }
        pieces
    }
}

/// One connected piece of a split diagram.
#[derive(Clone, Debug)]
pub struct SplitPiece {
    pub link: LinkDiagram,
    /// Piece component index -> component index in the parent diagram.
    pub parent_components: Vec<usize>,
    /// Whether the piece's canonical direction matches the parent's.
    pub dir_agree: Vec<bool>,
}

/// A link diagram with a direction chosen for every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedLinkDiagram {
    pub base: LinkDiagram,
    /// Per component: `true` = canonical direction.
    pub dirs: Vec<bool>,
}

impl OrientedLinkDiagram {
    /// Actual flow of an arc under the chosen directions.
    pub fn flow(&self, a: ArcId) -> (End, End) {
        let (from, to) = self.base.canonical_flow(a);
        if self.dirs[self.base.component_of(a)] {
            (from, to)
        } else {
            (to, from)
        }
    }

    /// Sign of crossing `ix` under the right-hand convention.
    pub fn crossing_sign(&self, ix: usize) -> i64 {
        let c = self.base.crossings[ix];
        // Find the entry slots: the slot where each strand's flow arrives.
        let mut under_in = None;
        let mut over_in = None;
        for s in 0..4 {
            let a = c[s];
            let (_, to) = self.flow(a);
            if to == (ix, s) {
                if s % 2 == 0 {
                    under_in = Some(s);
                } else {
                    over_in = Some(s);
                }
            }
        }
        let (u, o) = (
            under_in.expect("under strand enters once"),
            over_in.expect("over strand enters once"),
        );
        if u == (o + 1) % 4 {
            1
        } else {
            -1
        }
    }

    /// Sum of crossing signs (the writhe).
    pub fn writhe(&self) -> i64 {
        (0..self.base.crossings.len())
            .map(|ix| self.crossing_sign(ix))
            .sum()
    }

    /// Linking number of two distinct components: half the signed count of
    /// crossings between them.
    pub fn linking_number(&self, c1: usize, c2: usize) -> Result<i64, LinkError> {
        if c1 == c2 {
            return Err(LinkError::SameComponent);
        }
        let n = self.base.component_count();
        if c1 >= n || c2 >= n {
            return Err(LinkError::BadComponent(c1.max(c2)));
        }
        let mut total = 0i64;
        for (ix, c) in self.base.crossings.iter().enumerate() {
            let cu = self.base.component_of(c[0]);
            let co = self.base.component_of(c[1]);
            if (cu, co) == (c1, c2) || (cu, co) == (c2, c1) {
                total += self.crossing_sign(ix);
            }
        }
        debug_assert!(total % 2 == 0, "pairwise crossing signs sum to an even number");
        Ok(total / 2)
    }

    /// Total linking number: sum over unordered component pairs.
    pub fn total_linking(&self) -> i64 {
        let n = self.base.component_count();
        let mut sum = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                sum += self.linking_number(i, j).expect("distinct components");
            }
        }
        sum
    }

    /// Mirror image: over/under swapped at every crossing (cyclic slot shift
    /// by one), directions transported componentwise.
    pub fn mirror(&self) -> OrientedLinkDiagram {
        let raw: Vec<[u32; 4]> = self
            .base
            .crossings
            .iter()
            .map(|c| [c[1].0, c[2].0, c[3].0, c[0].0])
            .collect();
        let (link, map) = LinkDiagram::new_with_map(raw, self.base.free_loops.len());
        let mut dirs = vec![true; link.component_count()];
        for (&raw_label, &new_arc) in &map {
            let old_arc = ArcId(raw_label);
            let nc = link.component_of(new_arc);
            // Transport: compare flows on this arc. Slot s of old crossing ix
            // became slot (s + 3) % 4 of the same crossing index.
            let old_flow = self.flow(old_arc);
            let old_from_new = (old_flow.0 .0, (old_flow.0 .1 + 3) % 4);
            let new_flow = link.canonical_flow(new_arc);
            dirs[nc] = new_flow.0 == old_from_new;
        }
        // Free loops keep their directions, in order.
        let f = self.base.free_loops.len();
        let n = link.component_count();
        for k in 0..f {
            dirs[n - f + k] = self.dirs[self.base.component_count() - f + k];
        }
        OrientedLinkDiagram { base: link, dirs }
    }
}

/// Flow of an original colored-diagram arc inside an extracted bicolored
/// link, relative to the canonical direction of its component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcFlow {
    pub component: usize,
    /// Canonical flow traverses the original arc from its lex-first original
    /// end to its second.
    pub forward: bool,
}

/// How the canonical flow passes a spliced vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexPass {
    pub component: usize,
    /// Canonical flow enters along the lower-colored arc and leaves along the
    /// higher-colored one (colors ordered r < g < b).
    pub lo_to_hi: bool,
}

/// A bicolored link together with provenance back to the colored diagram.
#[derive(Clone, Debug)]
pub struct BicoloredLink {
    pub colors: (Color, Color),
    pub link: LinkDiagram,
    pub arc_flow: BTreeMap<ArcId, ArcFlow>,
    pub vertex_pass: BTreeMap<NodeIx, VertexPass>,
}

/// Extract the bicolored link of colors `i`, `j` from a colored diagram.
///
/// Arcs of the third color are deleted; crossings with one surviving strand
/// are spliced, crossings with none are dropped; at each vertex the two
/// surviving arcs are spliced into one strand.
pub fn bicolored_link(d: &ColoredDiagram, i: Color, j: Color) -> BicoloredLink {
    assert_ne!(i, j);
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    let keep = |c: Color| c == lo || c == hi;

    type OEnd = (NodeIx, usize);
    let slot_table = d.slot_table();
    let mut glue: BTreeMap<OEnd, OEnd> = BTreeMap::new();
    let mut surviving_crossings: Vec<NodeIx> = Vec::new();
    let mut vertex_glue: BTreeMap<OEnd, NodeIx> = BTreeMap::new();

    for (ix, node) in d.nodes().iter().enumerate() {
        match node {
            DiagramNode::Vertex(s) => {
                let kept: Vec<usize> = (0..3).filter(|&k| keep(d.color_of(s[k]))).collect();
                assert_eq!(kept.len(), 2, "a vertex meets exactly two kept colors");
                glue.insert((ix, kept[0]), (ix, kept[1]));
                glue.insert((ix, kept[1]), (ix, kept[0]));
                vertex_glue.insert((ix, kept[0]), ix);
            }
            DiagramNode::Crossing(s) => {
                let under = keep(d.color_of(s[0]));
                let over = keep(d.color_of(s[1]));
                match (under, over) {
                    (true, true) => surviving_crossings.push(ix),
                    (true, false) => {
                        glue.insert((ix, 0), (ix, 2));
                        glue.insert((ix, 2), (ix, 0));
                    }
                    (false, true) => {
                        glue.insert((ix, 1), (ix, 3));
                        glue.insert((ix, 3), (ix, 1));
                    }
                    (false, false) => {}
                }
            }
        }
    }

    let crossing_rank: BTreeMap<NodeIx, usize> = surviving_crossings
        .iter()
        .enumerate()
        .map(|(r, &ix)| (ix, r))
        .collect();
    let terminal = |e: OEnd| crossing_rank.contains_key(&e.0) && d.nodes()[e.0].is_crossing();

    // Surviving original arcs with their (lex ordered) original ends.
    let mut orig_ends: BTreeMap<ArcId, (OEnd, OEnd)> = BTreeMap::new();
    for (&a, &(e0, e1)) in &slot_table {
        if keep(d.color_of(a)) {
            orig_ends.insert(a, (e0, e1));
        }
    }

    // Walk chains. Each chain becomes one link arc.
    struct Chain {
        steps: Vec<(ArcId, bool)>,
        passes: Vec<(NodeIx, bool)>, // (vertex, walk enters via lower-colored arc end)
        terminals: Option<(OEnd, OEnd)>,
    }
    let mut chains: Vec<Chain> = Vec::new();
    let mut chain_of_terminal: BTreeMap<OEnd, (usize, bool)> = BTreeMap::new(); // end -> (chain, is_start)
    let mut visited: BTreeSet<ArcId> = BTreeSet::new();

    let walk = |start_end: OEnd,
                    closed_start: Option<ArcId>,
                    visited: &mut BTreeSet<ArcId>|
     -> Chain {
        let mut steps = Vec::new();
        let mut passes = Vec::new();
        let mut cur_end = start_end;
        loop {
            // The arc having an end at cur_end.
            let a = d.nodes()[cur_end.0].slots()[cur_end.1];
            let (e0, e1) = orig_ends[&a];
            let (to, fwd) = if e0 == cur_end { (e1, true) } else { (e0, false) };
            steps.push((a, fwd));
            visited.insert(a);
            if closed_start.is_none() && terminal(to) {
                return Chain {
                    steps,
                    passes,
                    terminals: Some((start_end, to)),
                };
            }
            let glued = glue[&to];
            if let Some(&v) = vertex_glue.get(&to).or_else(|| vertex_glue.get(&glued)) {
                // Walk passes vertex v entering via `to`.
                let entering = d.nodes()[v].slots()[to.1];
                let leaving = d.nodes()[v].slots()[glued.1];
                let lo_entry = d.color_of(entering) < d.color_of(leaving);
                passes.push((v, lo_entry));
            }
            if let Some(first) = closed_start {
                let next_arc = d.nodes()[glued.0].slots()[glued.1];
                if next_arc == first && glued == start_end {
                    return Chain {
                        steps,
                        passes,
                        terminals: None,
                    };
                }
            }
            cur_end = glued;
        }
    };

    // Open chains start at surviving crossing slots.
    for &ix in &surviving_crossings {
        for s in 0..4 {
            let here = (ix, s);
            if chain_of_terminal.contains_key(&here) {
                continue;
            }
            let chain = walk(here, None, &mut visited);
            let id = chains.len();
            let (t0, t1) = chain.terminals.expect("open chain has terminals");
            chain_of_terminal.insert(t0, (id, true));
            chain_of_terminal.insert(t1, (id, false));
            chains.push(chain);
        }
    }
    // Closed chains from leftover arcs.
    let leftovers: Vec<ArcId> = orig_ends
        .keys()
        .copied()
        .filter(|a| !visited.contains(a))
        .collect();
    for a in leftovers {
        if visited.contains(&a) {
            continue;
        }
        let start = orig_ends[&a].0;
        let chain = walk(start, Some(a), &mut visited);
        chains.push(chain);
    }

    // Assemble the link: chain index + 1 as raw label.
    let raw_crossings: Vec<[u32; 4]> = surviving_crossings
        .iter()
        .map(|&ix| {
            let mut slots = [0u32; 4];
            for s in 0..4 {
                let (chain, _) = chain_of_terminal[&(ix, s)];
                slots[s] = chain as u32 + 1;
            }
            slots
        })
        .collect();
    let closed_chain_ids: Vec<usize> = chains
        .iter()
        .enumerate()
        .filter(|(_, c)| c.terminals.is_none())
        .map(|(i, _)| i)
        .collect();
    let (link, label_map) = LinkDiagram::new_with_map(raw_crossings, 0);
    // Closed chains become free loops, appended in order.
    let mut link = link;
    let mut free_arc_of_chain: BTreeMap<usize, ArcId> = BTreeMap::new();
    if !closed_chain_ids.is_empty() {
        let base: u32 = 1 + label_map.len() as u32;
        let mut free = Vec::new();
        for (k, &cid) in closed_chain_ids.iter().enumerate() {
            let a = ArcId(base + k as u32);
            free.push(a);
            free_arc_of_chain.insert(cid, a);
        }
        // Rebuild with the free loops attached.
        let crossings = link.crossings().to_vec();
        link = LinkDiagram::from_canonical(crossings, free);
    }

    // Chain-level direction of canonical flow, then per-original-arc flows.
    let mut arc_flow: BTreeMap<ArcId, ArcFlow> = BTreeMap::new();
    let mut vertex_pass: BTreeMap<NodeIx, VertexPass> = BTreeMap::new();
    for (cid, chain) in chains.iter().enumerate() {
        let (component, chain_forward) = match chain.terminals {
            Some((t0, _)) => {
                let new_arc = label_map[&(cid as u32 + 1)];
                let comp = link.component_of(new_arc);
                let (from, _) = link.canonical_flow(new_arc);
                // Map original terminal t0 into link coordinates.
                let t0_link = (crossing_rank[&t0.0], t0.1);
                (comp, from == t0_link)
            }
            None => {
                let a = free_arc_of_chain[&cid];
                (link.component_of(a), true)
            }
        };
        for &(orig_arc, fwd) in &chain.steps {
            arc_flow.insert(
                orig_arc,
                ArcFlow {
                    component,
                    forward: fwd == chain_forward,
                },
            );
        }
        for &(v, lo_entry) in &chain.passes {
            vertex_pass.insert(
                v,
                VertexPass {
                    component,
                    lo_to_hi: lo_entry == chain_forward,
                },
            );
        }
    }
    // Free loops of the surviving colors in the source diagram.
    // (They were never in any chain: append as additional free loops.)
    let src_free: Vec<(ArcId, Color)> = d
        .free_loops()
        .iter()
        .copied()
        .filter(|&(_, c)| keep(c))
        .collect();
    if !src_free.is_empty() {
        let mut free = link.free_loops().to_vec();
        let mut next = free
            .iter()
            .map(|a| a.0)
            .chain(link.crossings().iter().flatten().map(|a| a.0))
            .max()
            .unwrap_or(0);
        for (orig, _) in &src_free {
            next += 1;
            free.push(ArcId(next));
            let comp = link.component_count() + free.len() - 1 - link.free_loops().len();
            arc_flow.insert(
                *orig,
                ArcFlow {
                    component: comp,
                    forward: true,
                },
            );
        }
        let crossings = link.crossings().to_vec();
        link = LinkDiagram::from_canonical(crossings, free);
    }

    BicoloredLink {
        colors: (lo, hi),
        link,
        arc_flow,
        vertex_pass,
    }
}

/// Component counts of the three bicolored links, their sum, and whether the
/// diagram is 3-Hamiltonian (all three are knots and the code is connected).
pub fn component_count(d: &ColoredDiagram) -> ([usize; 3], usize, bool) {
    let mut per = [0usize; 3];
    for (k, &(a, b)) in Color::PAIRS.iter().enumerate() {
        per[k] = bicolored_link(d, a, b).link.component_count();
    }
    let mu = per.iter().sum();
    let hamiltonian = per.iter().all(|&m| m == 1) && d.is_connected_code();
    (per, mu, hamiltonian)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ksg;

    /// Positive Hopf link as a braid closure of two positive crossings.
    fn hopf_raw() -> Vec<[u32; 4]> {
        vec![[1, 2, 3, 4], [2, 1, 4, 3]]
    }

    #[test]
    fn hopf_components_and_signs() {
        let l = LinkDiagram::new(hopf_raw(), 0);
        assert_eq!(l.component_count(), 2);
        // Some orientation makes both crossings positive.
        let mut found = false;
        for bits in 0..4u8 {
            let o = l.orient(vec![bits & 1 != 0, bits & 2 != 0]).unwrap();
            let signs: Vec<i64> = (0..2).map(|ix| o.crossing_sign(ix)).collect();
            if signs == [1, 1] {
                found = true;
                assert_eq!(o.linking_number(0, 1).unwrap(), 1);
                // Reversing one component negates the linking number.
                let mut dirs = o.dirs.clone();
                dirs[0] = !dirs[0];
                let o2 = l.orient(dirs).unwrap();
                assert_eq!(o2.linking_number(0, 1).unwrap(), -1);
            }
        }
        assert!(found, "positive Hopf diagram admits an all-positive orientation");
    }

    #[test]
    fn hopf_sign_is_orientation_stable_under_full_reversal() {
        let l = LinkDiagram::new(hopf_raw(), 0);
        let o = l.orient_default();
        let r = l.orient(vec![!o.dirs[0], !o.dirs[1]]).unwrap();
        for ix in 0..2 {
            assert_eq!(o.crossing_sign(ix), r.crossing_sign(ix));
        }
        assert_eq!(o.linking_number(0, 1), r.linking_number(0, 1));
    }

    #[test]
    fn mirror_negates_signs_and_linking() {
        let l = LinkDiagram::new(hopf_raw(), 0);
        let o = l.orient_default();
        let m = o.mirror();
        assert_eq!(o.writhe(), -m.writhe());
        assert_eq!(
            o.linking_number(0, 1).unwrap(),
            -m.linking_number(0, 1).unwrap()
        );
    }

    #[test]
    fn positive_kink_has_sign_plus_one() {
        // One-crossing kink circle: arcs x=1 (slots 0,3), y=2 (slots 1,2).
        let l = LinkDiagram::new(vec![[1, 2, 2, 1]], 0);
        assert_eq!(l.component_count(), 1);
        let o = l.orient_default();
        let s = o.crossing_sign(0);
        let r = l.orient(vec![false]).unwrap();
        // A kink's sign does not depend on the traversal direction.
        assert_eq!(s, r.crossing_sign(0));
        assert_eq!(s.abs(), 1);
        // The mirrored kink has the opposite sign.
        assert_eq!(o.mirror().crossing_sign(0), -s);
    }

    #[test]
    fn unlink_split_pieces() {
        let l = LinkDiagram::new(Vec::new(), 3);
        assert_eq!(l.component_count(), 3);
        let pieces = l.split_decompose();
        assert_eq!(pieces.len(), 3);
        let o = l.orient_default();
        assert_eq!(o.total_linking(), 0);
    }

    #[test]
    fn split_decompose_hopf_plus_loop() {
        let mut raw = hopf_raw();
        raw.extend_from_slice(&[[10, 11, 12, 13], [11, 10, 13, 12]]);
        let l = LinkDiagram::new(raw, 1);
        assert_eq!(l.component_count(), 5);
        let pieces = l.split_decompose();
        assert_eq!(pieces.len(), 3);
        let total: usize = pieces.iter().map(|p| p.link.component_count()).sum();
        assert_eq!(total, 5);
        // Parent components are a partition of 0..5.
        let mut seen: Vec<usize> = pieces
            .iter()
            .flat_map(|p| p.parent_components.iter().copied())
            .collect();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn trivial_theta_bicolored_links_are_unknots() {
        let d = ksg::parse("vertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=g 3=b\n")
            .unwrap()
            .diagram;
        for (a, b) in Color::PAIRS {
            let ext = bicolored_link(&d, a, b);
            assert_eq!(ext.link.component_count(), 1);
            assert_eq!(ext.link.crossings().len(), 0);
            assert_eq!(ext.vertex_pass.len(), 2);
        }
        let (per, mu, ham) = component_count(&d);
        assert_eq!(per, [1, 1, 1]);
        assert_eq!(mu, 3);
        assert!(ham);
    }

    #[test]
    fn theta_vertex_passes_are_opposite() {
        // Each bicolored unknot of the trivial theta enters one vertex along
        // its low color and leaves the other along its low color.
        let d = ksg::parse("vertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=g 3=b\n")
            .unwrap()
            .diagram;
        for (a, b) in Color::PAIRS {
            let ext = bicolored_link(&d, a, b);
            let passes: Vec<bool> = ext.vertex_pass.values().map(|p| p.lo_to_hi).collect();
            assert_eq!(passes.len(), 2);
            assert_ne!(passes[0], passes[1]);
        }
    }

    #[test]
    fn disjoint_thetas_double_mu() {
        let src = "vertex 1: 1 2 3\nvertex 2: 1 3 2\nvertex 3: 4 5 6\nvertex 4: 4 6 5\n\
                   color 1=r 2=g 3=b 4=r 5=g 6=b\n";
        let d = ksg::parse(src).unwrap().diagram;
        let (per, mu, ham) = component_count(&d);
        assert_eq!(per, [2, 2, 2]);
        assert_eq!(mu, 6);
        assert!(!ham);
    }

    #[test]
    fn component_count_matches_split_sum() {
        let mut raw = hopf_raw();
        raw.push([20, 21, 21, 20]);
        let l = LinkDiagram::new(raw, 2);
        let pieces = l.split_decompose();
        let total: usize = pieces.iter().map(|p| p.link.component_count()).sum();
        assert_eq!(total, l.component_count());
    }
}
