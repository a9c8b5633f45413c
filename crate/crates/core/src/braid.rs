//! Braiding an oriented link diagram by Vogel's algorithm.
//!
//! Seifert-smoothing the diagram yields Seifert circles. A face of the
//! diagram whose boundary carries two arcs of distinct Seifert circles with
//! the same co-orientation sign admits a Reidemeister-II move that reduces
//! the incoherence; when no such face remains the circles are coherently
//! nested and the diagram is the annular closure of a braid, which is read
//! off by cutting each nesting level once and merging the resulting linear
//! orders. The move count is bounded; the budget converts malformed codes
//! into diagnostics instead of loops.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::link::OrientedLinkDiagram;
use crate::seifert::BraidWord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("diagram is not a connected split piece")]
    NotConnected,
    #[error("rotation system is not planar (code Euler characteristic {0}, expected 2)")]
    NotPlanar(i64),
    #[error("move budget of {0} exceeded; the input code is likely malformed")]
    MoveBudget(usize),
    #[error("braid extraction failed: {0}")]
    Extraction(&'static str),
}

type End = (usize, usize);

/// Working diagram: crossings with u32 arc labels plus the head end
/// (flow target) of every arc.
#[derive(Clone, Debug)]
struct Working {
    crossings: Vec<[u32; 4]>,
    head: BTreeMap<u32, End>,
    next_label: u32,
}

impl Working {
    fn from_oriented(o: &OrientedLinkDiagram) -> Working {
        let mut head = BTreeMap::new();
        let mut crossings = Vec::new();
        let mut max = 0;
        for c in o.base.crossings() {
            crossings.push([c[0].0, c[1].0, c[2].0, c[3].0]);
            for &a in c {
                max = max.max(a.0);
            }
        }
        for c in o.base.crossings() {
            for &a in c {
                head.entry(a.0).or_insert_with(|| o.flow(a).1);
            }
        }
        Working {
            crossings,
            head,
            next_label: max + 1,
        }
    }

    fn fresh(&mut self) -> u32 {
        self.next_label += 1;
        self.next_label - 1
    }

    /// Two end positions of every arc.
    fn ends(&self) -> BTreeMap<u32, Vec<End>> {
        let mut ends: BTreeMap<u32, Vec<End>> = BTreeMap::new();
        for (ix, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.iter().enumerate() {
                ends.entry(a).or_default().push((ix, s));
            }
        }
        ends
    }

    /// Entry slots (under, over) of a crossing: where the strands flow in.
    fn entries(&self, ix: usize) -> (usize, usize) {
        let c = self.crossings[ix];
        let mut under = None;
        let mut over = None;
        for s in 0..4 {
            if self.head[&c[s]] == (ix, s) {
                if s % 2 == 0 {
                    under = Some(s);
                } else {
                    over = Some(s);
                }
            }
        }
        (
            under.expect("under strand enters exactly once"),
            over.expect("over strand enters exactly once"),
        )
    }

    /// Right-hand crossing sign.
    fn sign(&self, ix: usize) -> i64 {
        let (u, o) = self.entries(ix);
        if u == (o + 1) % 4 {
            1
        } else {
            -1
        }
    }

    /// Seifert successor: for each arc, the arc its circle continues into,
    /// and the crossing passed.
    fn seifert_successor(&self) -> BTreeMap<u32, (u32, usize)> {
        let mut tail_at: BTreeMap<End, u32> = BTreeMap::new();
        for (ix, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.iter().enumerate() {
                if self.head[&a] != (ix, s) {
                    tail_at.insert((ix, s), a);
                }
            }
        }
        let mut succ = BTreeMap::new();
        for (&a, &(ix, s)) in self.head.iter().map(|(a, h)| (a, h)) {
            let (u, o) = self.entries(ix);
            // Incoming under joins outgoing over and vice versa.
            let t = if s == u { (o + 2) % 4 } else { (u + 2) % 4 };
            succ.insert(a, (tail_at[&(ix, t)], ix));
        }
        succ
    }

    /// Seifert circles: per arc its circle id, plus each circle's cyclic
    /// crossing sequence in pass order.
    fn seifert_circles(&self) -> (BTreeMap<u32, usize>, Vec<Vec<usize>>) {
        let succ = self.seifert_successor();
        let mut circle_of: BTreeMap<u32, usize> = BTreeMap::new();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for &start in self.head.keys() {
            if circle_of.contains_key(&start) {
                continue;
            }
            let id = cycles.len();
            let mut crossings_passed = Vec::new();
            let mut a = start;
            loop {
                circle_of.insert(a, id);
                let (next, ix) = succ[&a];
                crossings_passed.push(ix);
                a = next;
                if a == start {
                    break;
                }
            }
            cycles.push(crossings_passed);
        }
        (circle_of, cycles)
    }

    /// Faces, keeping the face on the left: each face is a list of
    /// (arc, sign) where sign is +1 when the boundary traverses the arc in
    /// its flow direction.
    fn faces(&self) -> Vec<Vec<(u32, i64)>> {
        let ends = self.ends();
        // A dart is identified by the end it leaves from.
        let mut visited: BTreeSet<End> = BTreeSet::new();
        let mut faces = Vec::new();
        for ix in 0..self.crossings.len() {
            for s in 0..4 {
                if visited.contains(&(ix, s)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = (ix, s);
                loop {
                    if !visited.insert(cur) {
                        break;
                    }
                    let a = self.crossings[cur.0][cur.1];
                    let e = &ends[&a];
                    let other = if e[0] == cur { e[1] } else { e[0] };
                    let sign = if self.head[&a] == other { 1 } else { -1 };
                    face.push((a, sign));
                    // Keep-left: arriving at a slot, leave from the next
                    // clockwise slot.
                    let next = (other.0, (other.1 + 3) % 4);
                    if next == (ix, s) {
                        break;
                    }
                    cur = next;
                }
                faces.push(face);
            }
        }
        faces
    }

    fn euler_characteristic(&self) -> i64 {
        if self.crossings.is_empty() {
            return 2;
        }
        let v = self.crossings.len() as i64;
        let e = 2 * v;
        let f = self.faces().len() as i64;
        v - e + f
    }

    /// Find a Vogel defect: a face with two arcs of distinct Seifert circles
    /// carrying the same sign. Returns (arc_a, arc_b, sign).
    fn find_defect(&self, circle_of: &BTreeMap<u32, usize>) -> Option<(u32, u32, i64)> {
        for face in self.faces() {
            for i in 0..face.len() {
                for j in (i + 1)..face.len() {
                    let (a, sa) = face[i];
                    let (b, sb) = face[j];
                    if sa == sb && circle_of[&a] != circle_of[&b] {
                        return Some((a, b, sa));
                    }
                }
            }
        }
        None
    }

    /// Reidemeister-II move pulling `a` across the shared face over `b`.
    /// Both darts carry the same sign. Splits each arc into three and adds
    /// two crossings of opposite signs.
    fn vogel_move(&mut self, a: u32, b: u32, sign: i64) {
        let a2 = self.fresh();
        let am = self.fresh();
        let b2 = self.fresh();
        let bm = self.fresh();
        let a_head = self.head[&a];
        let b_head = self.head[&b];
        let l_ix = self.crossings.len();
        let r_ix = l_ix + 1;
        if sign > 0 {
            // a runs with the face boundary below the face, b above.
            self.crossings.push([bm, am, b2, a]); // L
            self.crossings.push([b, am, bm, a2]); // R
            self.head.insert(a, (l_ix, 3));
            self.head.insert(am, (r_ix, 1));
            self.head.insert(a2, a_head);
            self.head.insert(b, (r_ix, 0));
            self.head.insert(bm, (l_ix, 0));
            self.head.insert(b2, b_head);
            self.replace_end(a_head, a, a2);
            self.replace_end(b_head, b, b2);
        } else {
            self.crossings.push([b, a2, bm, am]); // L
            self.crossings.push([bm, a, b2, am]); // R
            self.head.insert(a, (r_ix, 1));
            self.head.insert(am, (l_ix, 3));
            self.head.insert(a2, a_head);
            self.head.insert(b, (l_ix, 0));
            self.head.insert(bm, (r_ix, 0));
            self.head.insert(b2, b_head);
            self.replace_end(a_head, a, a2);
            self.replace_end(b_head, b, b2);
        }
    }

    /// Relabel the arc occupying `end` (which must currently be `old`).
    fn replace_end(&mut self, end: End, old: u32, new: u32) {
        debug_assert_eq!(self.crossings[end.0][end.1], old);
        self.crossings[end.0][end.1] = new;
    }
}

/// Convert a connected oriented link diagram into a braid word whose closure
/// is the same oriented link.
pub fn to_braid(o: &OrientedLinkDiagram) -> Result<BraidWord, BraidError> {
    let crossings = o.base.crossings();
    if crossings.is_empty() {
        // A connected piece without crossings is a single unknot component.
        if o.base.component_count() != 1 {
            return Err(BraidError::NotConnected);
        }
        return Ok(BraidWord::new(1, Vec::new()));
    }
    if !o.base.free_loops().is_empty() {
        return Err(BraidError::NotConnected);
    }

    let mut w = Working::from_oriented(o);
    let chi = w.euler_characteristic();
    if chi != 2 {
        return Err(BraidError::NotPlanar(chi));
    }

    let (mut circle_of, mut cycles) = w.seifert_circles();
    let budget = 10 * (w.crossings.len() + cycles.len()).pow(2);
    let mut moves = 0usize;
    while let Some((a, b, sign)) = w.find_defect(&circle_of) {
        if moves >= budget {
            return Err(BraidError::MoveBudget(budget));
        }
        w.vogel_move(a, b, sign);
        moves += 1;
        debug_assert_eq!(w.euler_characteristic(), 2, "moves preserve planarity");
        let (c, cy) = w.seifert_circles();
        circle_of = c;
        cycles = cy;
    }

    extract_braid(&w, &circle_of, &cycles, o.base.component_count())
}

fn extract_braid(
    w: &Working,
    circle_of: &BTreeMap<u32, usize>,
    cycles: &[Vec<usize>],
    expect_components: usize,
) -> Result<BraidWord, BraidError> {
    let n = cycles.len();
    // Circles at each crossing.
    let mut circles_at: Vec<(usize, usize)> = Vec::new();
    for ix in 0..w.crossings.len() {
        let (u, o) = w.entries(ix);
        let c1 = circle_of[&w.crossings[ix][u]];
        let c2 = circle_of[&w.crossings[ix][o]];
        if c1 == c2 {
            return Err(BraidError::Extraction("self-touching Seifert circle"));
        }
        circles_at.push((c1.min(c2), c1.max(c2)));
    }

    // The simple quotient of the Seifert graph must be a path; order circles
    // along it.
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(c1, c2) in &circles_at {
        adj.entry(c1).or_default().insert(c2);
        adj.entry(c2).or_default().insert(c1);
    }
    if adj.len() != n {
        return Err(BraidError::Extraction("isolated Seifert circle"));
    }
    let ends: Vec<usize> = (0..n).filter(|c| adj[c].len() == 1).collect();
    let order: Vec<usize> = if n == 1 {
        vec![0]
    } else {
        if ends.len() != 2 {
            return Err(BraidError::Extraction("Seifert graph is not a path"));
        }
        let start = *ends.iter().min().expect("two ends");
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next = adj[&cur]
                .iter()
                .copied()
                .find(|&x| x != prev)
                .ok_or(BraidError::Extraction("path walk stuck"))?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    };
    // level[circle] = 0-based strand position.
    let mut level = vec![0usize; n];
    for (pos, &c) in order.iter().enumerate() {
        level[c] = pos;
    }
    // Letter index of each crossing (0-based), must join adjacent levels.
    let mut letter_index = vec![0usize; w.crossings.len()];
    for (ix, &(c1, c2)) in circles_at.iter().enumerate() {
        let (l1, l2) = (level[c1], level[c2]);
        if l1.max(l2) != l1.min(l2) + 1 {
            return Err(BraidError::Extraction("crossing joins non-adjacent levels"));
        }
        letter_index[ix] = l1.min(l2);
    }
    // Cyclic crossing sequences in level order.
    let mut cyc: Vec<&Vec<usize>> = Vec::with_capacity(n);
    for pos in 0..n {
        cyc.push(&cycles[order[pos]]);
    }

    // Choose one cut per circle, propagating inner to outer.
    let mut cut = vec![0usize; n];
    for pos in 0..n.saturating_sub(1) {
        let seq = cyc[pos];
        let len = seq.len();
        if len == 0 {
            return Err(BraidError::Extraction("circle passes no crossing"));
        }
        // First crossing at or after the cut joining pos and pos+1.
        let mut found = None;
        for k in 0..len {
            let ix = seq[(cut[pos] + k) % len];
            if letter_index[ix] == pos {
                found = Some(ix);
                break;
            }
        }
        let x = found.ok_or(BraidError::Extraction("adjacent circles share no crossing"))?;
        let pos_in_next = cyc[pos + 1]
            .iter()
            .position(|&ix| ix == x)
            .ok_or(BraidError::Extraction("crossing missing from outer circle"))?;
        cut[pos + 1] = pos_in_next;
    }

    // Merge the linearized sequences by topological sort.
    let m = w.crossings.len();
    let mut succ_edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    let mut indeg = vec![0usize; m];
    for pos in 0..n {
        let seq = cyc[pos];
        let len = seq.len();
        for k in 0..len.saturating_sub(1) {
            let x = seq[(cut[pos] + k) % len];
            let y = seq[(cut[pos] + k + 1) % len];
            if succ_edges[x].insert(y) {
                indeg[y] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..m).filter(|&x| indeg[x] == 0).collect();
    let mut topo = Vec::with_capacity(m);
    while let Some(&x) = ready.iter().next() {
        ready.remove(&x);
        topo.push(x);
        for &y in &succ_edges[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                ready.insert(y);
            }
        }
    }
    if topo.len() != m {
        return Err(BraidError::Extraction("cut produced a cyclic precedence"));
    }

    let letters: Vec<i32> = topo
        .iter()
        .map(|&ix| {
            let idx = (letter_index[ix] + 1) as i32;
            if w.sign(ix) > 0 {
                idx
            } else {
                -idx
            }
        })
        .collect();
    let word = BraidWord::new(n, letters);
    if word.closure_component_count() != expect_components {
        return Err(BraidError::Extraction("closure component count mismatch"));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::LinkDiagram;

    /// Braid closure of sigma_1^k with positive crossings.
    fn torus2_raw(k: usize) -> Vec<[u32; 4]> {
        // Crossing t: [a_t, c_{t+1}, a_{t+1}, c_t] with indices mod k merging
        // into closure arcs; build explicitly with labels.
        // Left-entering arc of crossing t is l_t, right-entering r_t.
        // Positive template: [l_t, r_{t+1}, l_{t+1}, r_t] where after the
        // crossing the left exit becomes the next right entry and vice versa.
        let mut out = Vec::new();
        for t in 0..k {
            let l = |i: usize| (2 * (i % k) + 1) as u32;
            let r = |i: usize| (2 * (i % k) + 2) as u32;
            out.push([l(t), l(t + 1), r(t + 1), r(t)]);
        }
        out
    }

    #[test]
    fn zero_crossing_unknot_is_a_one_strand_empty_word() {
        let l = LinkDiagram::new(Vec::new(), 1);
        let w = to_braid(&l.orient_default()).unwrap();
        assert_eq!(w.strands(), 1);
        assert!(w.letters().is_empty());
    }

    #[test]
    fn already_braided_torus_words() {
        for k in 1..=7 {
            let l = LinkDiagram::new(torus2_raw(k), 0);
            let o = l.orient_default();
            let w = to_braid(&o).unwrap();
            assert_eq!(w.strands(), 2, "k={k}");
            assert_eq!(w.letters().len(), k, "k={k}");
            let s: i32 = w.letters().iter().map(|l| l.signum()).sum();
            assert_eq!(s.unsigned_abs() as usize, k, "coherent signs for k={k}");
            assert_eq!(
                w.closure_component_count(),
                if k % 2 == 0 { 2 } else { 1 }
            );
        }
    }

    #[test]
    fn torus_reversal_keeps_braid_size() {
        let l = LinkDiagram::new(torus2_raw(4), 0);
        let dirs = vec![false; l.component_count()];
        let o = l.orient(dirs).unwrap();
        let w = to_braid(&o).unwrap();
        assert_eq!(w.strands(), 2);
        assert_eq!(w.letters().len(), 4);
    }

    #[test]
    fn figure_eight_standard_code_braids() {
        // Knot-atlas PD of 4_1; ccw slots, slot 0 the incoming under end.
        let raw = vec![[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 2], [2, 7, 3, 8]];
        let l = LinkDiagram::new(raw, 0);
        assert_eq!(l.component_count(), 1);
        let o = l.orient_default();
        let w = to_braid(&o).unwrap();
        assert_eq!(w.closure_component_count(), 1);
        // The figure eight has braid index 3 and zero writhe-balance.
        let pos = w.letters().iter().filter(|&&x| x > 0).count();
        let neg = w.letters().iter().filter(|&&x| x < 0).count();
        assert_eq!(pos as i64 - neg as i64, o.writhe());
    }

    #[test]
    fn mixed_orientation_torus_link_braids() {
        // T(2,4) with one component reversed has antiparallel strands and
        // needs genuine Vogel moves.
        let l = LinkDiagram::new(torus2_raw(4), 0);
        assert_eq!(l.component_count(), 2);
        let o = l.orient(vec![true, false]).unwrap();
        let w = to_braid(&o).unwrap();
        assert_eq!(w.closure_component_count(), 2);
    }

    #[test]
    fn trefoil_nonbraided_code() {
        // Knot-atlas PD of 3_1.
        let raw = vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];
        let l = LinkDiagram::new(raw, 0);
        let o = l.orient_default();
        let w = to_braid(&o).unwrap();
        assert_eq!(w.closure_component_count(), 1);
        let s: i32 = w.letters().iter().map(|l| l.signum()).sum();
        assert_eq!(s.unsigned_abs(), 3, "trefoil writhe magnitude survives");
    }
}
