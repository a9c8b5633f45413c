//! Abstract foam descriptors, orbifold Euler characteristics, crossing-change
//! cobordism ledgers, and the resulting upper bounds.
//!
//! Foams are never embedded: a descriptor records facet Euler
//! characteristics and seam-graph cell counts, which is all the downstream
//! formulas consume. Facet entries carry the Euler characteristic of the
//! facet *minus its seam points* (boundary-graph edges included), so
//! `chi(F) = sum of facet entries + chi(s(F))` holds with or without seam
//! vertices.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Color, ColoredDiagram, Edge, EdgeId};
use crate::invariants::KleinInvariants;
use crate::orient::{double_orientations, GraphLinks, TotalOrientation};
use crate::rat::{min_rat, rat, rat_int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FoamError {
    #[error("identity check requires a seamless descriptor (found {0} seam vertices)")]
    HasSeamVertices(usize),
    #[error("script line {0}: {1}")]
    Script(usize, String),
    #[error("step {0}: edge {1:?} out of range")]
    BadEdgeRef(usize, EdgeId),
    #[error("step {0}: edge {1:?} has color {2}, step names {3}")]
    EdgeColor(usize, EdgeId, Color, Color),
    #[error("seamed cobordism bound requires equal vertex counts ({0} vs {1})")]
    VertexMismatch(usize, usize),
}

/// Cell-count descriptor of an abstract colored 2-complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoamDescriptor {
    /// Open facet Euler characteristics (facet minus seam points).
    pub facets: Vec<(Color, i64)>,
    pub seam_circles: usize,
    pub seam_arcs: usize,
    pub seam_vertices: usize,
    pub boundary_vertex_total: usize,
    /// Component Euler characteristics of the three bicolored surfaces,
    /// in pair order rb, bg, rg.
    pub bicolored_component_eulers: [Vec<i64>; 3],
}

impl FoamDescriptor {
    /// Euler characteristic of the seam 1-complex.
    pub fn chi_seam(&self) -> i64 {
        // Circles contribute 0; arcs are edges, boundary and seam vertices
        // are the 0-cells.
        self.boundary_vertex_total as i64 + self.seam_vertices as i64 - self.seam_arcs as i64
    }

    /// Euler characteristic of the whole complex.
    pub fn chi_foam(&self) -> i64 {
        self.facets.iter().map(|&(_, e)| e).sum::<i64>() + self.chi_seam()
    }

    /// Orbifold Euler characteristic: half the foam's Euler characteristic
    /// minus a quarter of the seam complex's.
    pub fn chi_orb(&self) -> Rat {
        rat(self.chi_foam(), 2) - rat(self.chi_seam(), 4)
    }

    /// For seamless descriptors: whether four times the orbifold Euler
    /// characteristic equals the bicolored Euler sum minus the boundary
    /// vertex count. A failure indicates an inconsistent descriptor.
    pub fn chiorb_identity_check(&self) -> Result<bool, FoamError> {
        if self.seam_vertices != 0 {
            return Err(FoamError::HasSeamVertices(self.seam_vertices));
        }
        let lhs = rat_int(4) * self.chi_orb();
        let bicolored: i64 = self
            .bicolored_component_eulers
            .iter()
            .flat_map(|v| v.iter())
            .sum();
        let rhs = rat_int(bicolored - self.boundary_vertex_total as i64);
        Ok(lhs == rhs)
    }

    /// Connected-sum with the suspension of the tetrahedral graph along a
    /// seam point: two new seam vertices, four seam edges, three surviving
    /// bigon facets; raises the orbifold Euler characteristic by exactly 1.
    pub fn bubble_move(&self) -> FoamDescriptor {
        let mut out = self.clone();
        out.seam_vertices += 2;
        out.seam_arcs += 4;
        for c in Color::ALL {
            out.facets.push((c, 1));
        }
        out
    }
}

/// Kind of crossing change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Same(Color),
    Mixed(Color, Color),
}

/// One crossing-change step, referencing derived edges of the source
/// diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub edges: (EdgeId, EdgeId),
}

/// A crossing-change script over one source diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct ChangeScript {
    pub steps: Vec<Step>,
}

impl ChangeScript {
    pub fn same(c: Color, e1: EdgeId, e2: EdgeId) -> Step {
        Step {
            kind: StepKind::Same(c),
            edges: (e1, e2),
        }
    }

    pub fn mixed(c1: Color, c2: Color, e1: EdgeId, e2: EdgeId) -> Step {
        assert_ne!(c1, c2);
        Step {
            kind: StepKind::Mixed(c1, c2),
            edges: (e1, e2),
        }
    }

    /// Parse the script file format: lines
    /// `same <color> <edge> <edge>` / `mixed <color> <color> <edge> <edge>`
    /// with `#` comments; edge references are `e<k>` or `<k>` indices into
    /// the diagram's derived edge list.
    pub fn parse(src: &str) -> Result<ChangeScript, FoamError> {
        let mut steps = Vec::new();
        for (lineno, raw) in src.lines().enumerate() {
            let n = lineno + 1;
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.is_empty() {
                continue;
            }
            let color = |w: &str| -> Result<Color, FoamError> {
                let mut it = w.chars();
                it.next()
                    .and_then(Color::from_letter)
                    .filter(|_| it.next().is_none())
                    .ok_or_else(|| FoamError::Script(n, format!("bad color '{w}'")))
            };
            let edge = |w: &str| -> Result<EdgeId, FoamError> {
                let digits = w.strip_prefix('e').unwrap_or(w);
                digits
                    .parse::<usize>()
                    .map(EdgeId)
                    .map_err(|_| FoamError::Script(n, format!("bad edge reference '{w}'")))
            };
            match words[0] {
                "same" if words.len() == 4 => {
                    steps.push(ChangeScript::same(
                        color(words[1])?,
                        edge(words[2])?,
                        edge(words[3])?,
                    ));
                }
                "mixed" if words.len() == 5 => {
                    let c1 = color(words[1])?;
                    let c2 = color(words[2])?;
                    if c1 == c2 {
                        return Err(FoamError::Script(n, "mixed step needs two colors".into()));
                    }
                    steps.push(ChangeScript::mixed(c1, c2, edge(words[3])?, edge(words[4])?));
                }
                other => {
                    return Err(FoamError::Script(
                        n,
                        format!("expected 'same <c> <e> <e>' or 'mixed <c> <c> <e> <e>', got '{other}'"),
                    ))
                }
            }
        }
        Ok(ChangeScript { steps })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            match s.kind {
                StepKind::Same(c) => {
                    out.push_str(&format!("same {} e{} e{}\n", c, s.edges.0 .0, s.edges.1 .0))
                }
                StepKind::Mixed(c1, c2) => out.push_str(&format!(
                    "mixed {} {} e{} e{}\n",
                    c1, c2, s.edges.0 .0, s.edges.1 .0
                )),
            }
        }
        out
    }

    /// Cost `s + m/2` of the script as written.
    pub fn cost(&self) -> Rat {
        let s = self
            .steps
            .iter()
            .filter(|x| matches!(x.kind, StepKind::Same(_)))
            .count() as i64;
        let m = self.steps.len() as i64 - s;
        rat_int(s) + rat(m, 2)
    }
}

/// Ledger of the stacked elementary cobordisms of a script.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerReport {
    pub descriptor: FoamDescriptor,
    /// Same/mixed counts as written.
    pub same_steps: usize,
    pub mixed_steps: usize,
    /// Counts after rewriting illegal same steps into mixed pairs.
    pub realized_same: usize,
    pub realized_mixed: usize,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub cost: Rat,
    #[serde(serialize_with = "crate::rat::serialize_rat")]
    pub chi_orb: Rat,
    pub warnings: Vec<String>,
}

/// Build the foam descriptor of a script's stacked elementary cobordisms.
///
/// Every same step contributes -1 to the orbifold Euler characteristic (a
/// 1-handle across two saddles) and every mixed step -1/2 (a zip/unzip pair
/// adding one seam circle), giving `chi_orb = -V/2 - (s + m/2)`. When a
/// total orientation is supplied, a same step between edges of opposite
/// signs is rewritten into two mixed steps with a warning; the cost is
/// unchanged.
pub fn cobordism_ledger(
    d: &ColoredDiagram,
    links: &GraphLinks,
    t: Option<&TotalOrientation>,
    script: &ChangeScript,
) -> Result<LedgerReport, FoamError> {
    let edges = d.derive_edges();
    let edge_sign: Option<BTreeMap<EdgeId, i64>> = t.map(|t| {
        double_orientations(d, links, t)
            .into_iter()
            .map(|e| (e.edge, e.sign))
            .collect()
    });

    // Validate references and rewrite illegal same steps.
    let mut realized: Vec<Step> = Vec::new();
    let mut warnings = Vec::new();
    let mut same_written = 0usize;
    let mut mixed_written = 0usize;
    for (i, step) in script.steps.iter().enumerate() {
        let lookup = |id: EdgeId| -> Result<&Edge, FoamError> {
            edges
                .iter()
                .find(|e| e.id == id)
                .ok_or(FoamError::BadEdgeRef(i, id))
        };
        let e1 = lookup(step.edges.0)?;
        let e2 = lookup(step.edges.1)?;
        match step.kind {
            StepKind::Same(c) => {
                same_written += 1;
                for e in [e1, e2] {
                    if e.color != c {
                        return Err(FoamError::EdgeColor(i, e.id, e.color, c));
                    }
                }
                let legal = match &edge_sign {
                    Some(signs) => signs[&e1.id] == signs[&e2.id],
                    None => true,
                };
                if legal {
                    realized.push(*step);
                } else {
                    let (j, k) = other_two(c);
                    warnings.push(format!(
                        "step {i}: same-color change between opposite-sign edges e{} e{} \
                         realized as two mixed changes",
                        e1.id.0, e2.id.0
                    ));
                    realized.push(ChangeScript::mixed(c, j, e1.id, e2.id));
                    realized.push(ChangeScript::mixed(c, k, e1.id, e2.id));
                }
            }
            StepKind::Mixed(c1, c2) => {
                mixed_written += 1;
                if e1.color != c1 {
                    return Err(FoamError::EdgeColor(i, e1.id, e1.color, c1));
                }
                if e2.color != c2 {
                    return Err(FoamError::EdgeColor(i, e2.id, e2.color, c2));
                }
                realized.push(*step);
            }
        }
    }

    // Base descriptor: the identity cobordism Gamma x I.
    // Open facet of an edge with endpoints: a square minus its two seam
    // sides; a knot component: an annulus.
    let mut facet_chi: BTreeMap<EdgeId, i64> = BTreeMap::new();
    let mut facet_color: BTreeMap<EdgeId, Color> = BTreeMap::new();
    let mut facet_parent: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for e in &edges {
        facet_chi.insert(e.id, if e.is_closed() { 0 } else { -1 });
        facet_color.insert(e.id, e.color);
        facet_parent.insert(e.id, e.id);
    }
    fn find_facet(parent: &mut BTreeMap<EdgeId, EdgeId>, x: EdgeId) -> EdgeId {
        let p = parent[&x];
        if p == x {
            x
        } else {
            let r = find_facet(parent, p);
            parent.insert(x, r);
            r
        }
    }

    // Bicolored component tracking: per pair, union-find over components of
    // the extracted link with per-component Euler characteristics (annuli).
    let mut bic_parent: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut bic_chi: [Vec<i64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for k in 0..3 {
        let n = links.exts[k].link.component_count();
        bic_parent[k] = (0..n).collect();
        bic_chi[k] = vec![0; n];
    }
    fn find_bic(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find_bic(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    // Component of an edge inside a pair's link.
    let comp_of_edge = |k: usize, e: &Edge| -> usize {
        links.exts[k].arc_flow[&e.arcs[0]].component
    };
    let pair_of = |a: Color, b: Color| Color::pair_index(a, b);

    let v = d.vertex_count();
    let mut seam_circles = 0usize;
    let mut extra_facets: Vec<(Color, i64)> = Vec::new();
    let mut realized_same = 0usize;
    let mut realized_mixed = 0usize;

    for step in &realized {
        let e1 = edges.iter().find(|e| e.id == step.edges.0).expect("checked");
        let e2 = edges.iter().find(|e| e.id == step.edges.1).expect("checked");
        match step.kind {
            StepKind::Same(c) => {
                realized_same += 1;
                // One 1-handle joining (or adding genus to) the c-facets.
                let (r1, r2) = (
                    find_facet(&mut facet_parent, e1.id),
                    find_facet(&mut facet_parent, e2.id),
                );
                if r1 == r2 {
                    facet_chi.insert(r1, facet_chi[&r1] - 2);
                } else {
                    let merged = facet_chi[&r1] + facet_chi[&r2] - 2;
                    facet_parent.insert(r2, r1);
                    facet_chi.insert(r1, merged);
                    facet_chi.remove(&r2);
                }
                // Both pairs containing c merge the two edge components.
                let (j, k) = other_two(c);
                for x in [j, k] {
                    let p = pair_of(c, x);
                    merge_bic(&mut bic_parent[p], &mut bic_chi[p], comp_of_edge(p, e1), comp_of_edge(p, e2), 2);
                }
            }
            StepKind::Mixed(c1, c2) => {
                realized_mixed += 1;
                // Zip/unzip pair: a tube from the c1 facet to the c2 facet
                // with a third-color co-core disk and a new seam circle.
                seam_circles += 1;
                let r1 = find_facet(&mut facet_parent, e1.id);
                facet_chi.insert(r1, facet_chi[&r1] - 1);
                let r2 = find_facet(&mut facet_parent, e2.id);
                facet_chi.insert(r2, facet_chi[&r2] - 1);
                let third = Color::third(c1, c2);
                extra_facets.push((third, 1));
                let p = pair_of(c1, c2);
                merge_bic(&mut bic_parent[p], &mut bic_chi[p], comp_of_edge(p, e1), comp_of_edge(p, e2), 2);
            }
        }
    }

    // Assemble the descriptor.
    let mut facets: Vec<(Color, i64)> = Vec::new();
    for (&root, &chi) in &facet_chi {
        facets.push((facet_color[&root], chi));
    }
    facets.extend(extra_facets);
    let mut bicolored = [Vec::new(), Vec::new(), Vec::new()];
    for k in 0..3 {
        let n = bic_parent[k].len();
        let mut seen = BTreeMap::new();
        for x in 0..n {
            let r = find_bic(&mut bic_parent[k], x);
            seen.entry(r).or_insert_with(|| bic_chi[k][r]);
        }
        bicolored[k] = seen.into_values().collect();
    }
    let descriptor = FoamDescriptor {
        facets,
        seam_circles,
        seam_arcs: v,
        seam_vertices: 0,
        boundary_vertex_total: 2 * v,
        bicolored_component_eulers: bicolored,
    };

    let cost = rat_int(realized_same as i64) + rat(realized_mixed as i64, 2);
    debug_assert_eq!(cost, {
        let s = same_written as i64;
        let m = mixed_written as i64;
        rat_int(s) + rat(m, 2)
    });
    let chi_orb = descriptor.chi_orb();
    // The closed form of the stacked cobordism.
    debug_assert_eq!(chi_orb, rat(-(v as i64), 2) - &cost);
    Ok(LedgerReport {
        descriptor,
        same_steps: same_written,
        mixed_steps: mixed_written,
        realized_same,
        realized_mixed,
        cost,
        chi_orb,
        warnings,
    })
}

fn merge_bic(parent: &mut Vec<usize>, chi: &mut Vec<i64>, a: usize, b: usize, drop: i64) {
    let ra = find_bic_outer(parent, a);
    let rb = find_bic_outer(parent, b);
    if ra == rb {
        chi[ra] -= drop;
    } else {
        let merged = chi[ra] + chi[rb] - drop;
        parent[rb] = ra;
        chi[ra] = merged;
    }
}

fn find_bic_outer(parent: &mut Vec<usize>, x: usize) -> usize {
    if parent[x] != x {
        let r = find_bic_outer(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

fn other_two(c: Color) -> (Color, Color) {
    let mut it = Color::ALL.into_iter().filter(|&x| x != c);
    (
        it.next().expect("two other colors"),
        it.next().expect("two other colors"),
    )
}

/// Upper bound on the slice orbifold Euler characteristic:
/// `(mu - V)/4`, intersected with `V/8` when the graph has no knot
/// components.
pub fn slice_chi_upper_bound(inv: &KleinInvariants, knot_free: bool) -> Rat {
    let base = rat(inv.mu as i64 - inv.vertices as i64, 4);
    if knot_free {
        min_rat(base, rat(inv.vertices as i64, 8))
    } else {
        base
    }
}

/// Upper bound on the seamed cobordism characteristic:
/// `(mu0 + mu1 - 2V)/4` for graphs with equal vertex counts.
pub fn seamed_cobordism_upper_bound(
    inv1: &KleinInvariants,
    inv2: &KleinInvariants,
) -> Result<Rat, FoamError> {
    if inv1.vertices != inv2.vertices {
        return Err(FoamError::VertexMismatch(inv1.vertices, inv2.vertices));
    }
    Ok(rat(
        inv1.mu as i64 + inv2.mu as i64 - 2 * inv1.vertices as i64,
        4,
    ))
}

/// The theta-times-interval descriptor (used in tests and as a reference
/// point): three squares, two seam arcs, four boundary vertices.
pub fn theta_interval_descriptor() -> FoamDescriptor {
    FoamDescriptor {
        facets: vec![(Color::R, -1), (Color::G, -1), (Color::B, -1)],
        seam_circles: 0,
        seam_arcs: 2,
        seam_vertices: 0,
        boundary_vertex_total: 4,
        bicolored_component_eulers: [vec![0], vec![0], vec![0]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::TotalOrientation;
    use crate::transform::gen_trivial_theta;
    use num::Zero;

    #[test]
    fn theta_interval_chi_orb_is_chi_of_theta() {
        let f = theta_interval_descriptor();
        assert_eq!(f.chi_seam(), 2);
        assert_eq!(f.chi_foam(), -1);
        assert_eq!(f.chi_orb(), rat_int(-1));
        assert!(f.chiorb_identity_check().unwrap());
    }

    #[test]
    fn cone_on_theta_descriptor() {
        // Cone on the trivial theta: three disk facets each carrying one
        // radial seam boundary arc (open euler 0), one seam arc through the
        // apex, two boundary vertices.
        let f = FoamDescriptor {
            facets: vec![(Color::R, 0), (Color::G, 0), (Color::B, 0)],
            seam_circles: 0,
            seam_arcs: 1,
            seam_vertices: 0,
            boundary_vertex_total: 2,
            bicolored_component_eulers: [vec![1], vec![1], vec![1]],
        };
        assert_eq!(f.chi_seam(), 1);
        assert_eq!(f.chi_foam(), 1);
        assert_eq!(f.chi_orb(), rat(1, 4));
        assert!(f.chiorb_identity_check().unwrap());
    }

    #[test]
    fn formula_on_stated_cell_counts() {
        // Any descriptor with chi(F) = 2 and chi(s) = 1 evaluates to 3/4.
        let f = FoamDescriptor {
            facets: vec![(Color::R, 1)],
            seam_circles: 0,
            seam_arcs: 1,
            seam_vertices: 0,
            boundary_vertex_total: 2,
            bicolored_component_eulers: [vec![], vec![], vec![]],
        };
        assert_eq!(f.chi_foam(), 2);
        assert_eq!(f.chi_seam(), 1);
        assert_eq!(f.chi_orb(), rat(3, 4));
    }

    #[test]
    fn bubble_move_adds_exactly_one() {
        let f = theta_interval_descriptor();
        let b = f.bubble_move();
        assert_eq!(b.chi_orb(), f.chi_orb() + rat_int(1));
        assert!(b.chiorb_identity_check().is_err());
    }

    #[test]
    fn empty_script_ledger_is_identity_cobordism() {
        let d = gen_trivial_theta();
        let links = GraphLinks::new(&d);
        let t = TotalOrientation::default_for(&links);
        let report =
            cobordism_ledger(&d, &links, Some(&t), &ChangeScript::default()).unwrap();
        assert_eq!(report.chi_orb, rat_int(-1));
        assert!(report.cost.is_zero());
        assert!(report.descriptor.chiorb_identity_check().unwrap());
    }

    #[test]
    fn script_parse_round_trip() {
        let src = "# unknotting\nsame r e0 e0\nmixed r g e0 e1\n";
        let s = ChangeScript::parse(src).unwrap();
        assert_eq!(s.steps.len(), 2);
        assert_eq!(s.cost(), rat(3, 2));
        let rendered = s.render();
        let s2 = ChangeScript::parse(&rendered).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn script_rejects_garbage() {
        assert!(ChangeScript::parse("same r e0\n").is_err());
        assert!(ChangeScript::parse("mixed r r e0 e1\n").is_err());
        assert!(ChangeScript::parse("flip r e0 e1\n").is_err());
    }
}
