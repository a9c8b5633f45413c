//! The `.ksg` text format: a line-oriented, UTF-8 encoding of colored
//! spatial-graph diagrams.
//!
//! ```text
//! name <label>
//! vertex <id>: <arc> <arc> <arc>          # counterclockwise
//! crossing <id>: <arc> <arc> <arc> <arc>  # ccw; slot 0 = incoming under-strand end
//! color <arc>=<r|g|b> [<arc>=<r|g|b> ...]
//! orient default | rb:c0=+,c1=- bg:c0=+ rg:c0=-
//! ```
//!
//! `#` starts a comment. Arc ids are positive integers. Node ids must be
//! unique but carry no meaning beyond file ordering. Unknown keys are an
//! error. The `orient` line is optional and addresses canonical bicolored
//! component indices; it is resolved against the parsed diagram by the
//! orientation layer.
//!
//! Serialization renumbers arcs canonically (breadth-first from the
//! lexicographically least node over all traversal roots), so
//! `parse(serialize(d))` is node-for-node identical to `canonicalize(d)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{ArcId, Color, ColoredDiagram, DiagramError, DiagramNode};

#[derive(Debug, Error)]
pub enum KsgError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Result of parsing: the validated diagram plus the raw `orient` line, if
/// any (resolved later against the diagram's canonical components).
#[derive(Debug, Clone)]
pub struct Parsed {
    pub diagram: ColoredDiagram,
    pub orient: Option<String>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> KsgError {
    KsgError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Parse `.ksg` source into a validated diagram.
pub fn parse(src: &str) -> Result<Parsed, KsgError> {
    let mut name: Option<String> = None;
    let mut nodes: Vec<DiagramNode> = Vec::new();
    let mut node_ids: BTreeMap<u64, usize> = BTreeMap::new();
    let mut colors: BTreeMap<ArcId, Color> = BTreeMap::new();
    let mut orient: Option<String> = None;

    for (lineno, raw) in src.lines().enumerate() {
        let line_no = lineno + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col_of = |word: &str| line.find(word).map(|i| i + 1).unwrap_or(1);
        let mut words = trimmed.split_whitespace();
        let key = words.next().expect("nonempty line has a first word");
        match key {
            "name" => {
                let rest = trimmed["name".len()..].trim();
                if rest.is_empty() {
                    return Err(syntax(line_no, 1, "name requires a label"));
                }
                name = Some(rest.to_string());
            }
            "orient" => {
                let rest = trimmed["orient".len()..].trim();
                if rest.is_empty() {
                    return Err(syntax(line_no, 1, "orient requires a specification"));
                }
                orient = Some(rest.to_string());
            }
            "vertex" | "crossing" => {
                let want = if key == "vertex" { 3 } else { 4 };
                let id_tok = words
                    .next()
                    .ok_or_else(|| syntax(line_no, 1, format!("{key} requires an id")))?;
                let id_str = id_tok.strip_suffix(':').ok_or_else(|| {
                    syntax(line_no, col_of(id_tok), "node id must end with ':'")
                })?;
                let id: u64 = id_str.parse().map_err(|_| {
                    syntax(line_no, col_of(id_tok), format!("bad node id '{id_str}'"))
                })?;
                if node_ids.contains_key(&id) {
                    return Err(syntax(
                        line_no,
                        col_of(id_tok),
                        format!("duplicate node id {id}"),
                    ));
                }
                let mut arcs = Vec::with_capacity(want);
                for tok in words.by_ref() {
                    let v: u32 = tok.parse().map_err(|_| {
                        syntax(line_no, col_of(tok), format!("bad arc id '{tok}'"))
                    })?;
                    if v == 0 {
                        return Err(syntax(line_no, col_of(tok), "arc ids are positive"));
                    }
                    arcs.push(ArcId(v));
                }
                if arcs.len() != want {
                    return Err(syntax(
                        line_no,
                        1,
                        format!("{key} needs {want} arcs, found {}", arcs.len()),
                    ));
                }
                node_ids.insert(id, nodes.len());
                nodes.push(if want == 3 {
                    DiagramNode::Vertex([arcs[0], arcs[1], arcs[2]])
                } else {
                    DiagramNode::Crossing([arcs[0], arcs[1], arcs[2], arcs[3]])
                });
            }
            "color" => {
                let mut any = false;
                for tok in words {
                    any = true;
                    let (arc_str, col_str) = tok.split_once('=').ok_or_else(|| {
                        syntax(line_no, col_of(tok), "color entries look like <arc>=<r|g|b>")
                    })?;
                    let a: u32 = arc_str.parse().map_err(|_| {
                        syntax(line_no, col_of(tok), format!("bad arc id '{arc_str}'"))
                    })?;
                    let mut chars = col_str.chars();
                    let c = chars
                        .next()
                        .and_then(Color::from_letter)
                        .filter(|_| chars.next().is_none())
                        .ok_or_else(|| {
                            syntax(line_no, col_of(tok), format!("bad color '{col_str}'"))
                        })?;
                    if let Some(prev) = colors.insert(ArcId(a), c) {
                        if prev != c {
                            return Err(syntax(
                                line_no,
                                col_of(tok),
                                format!("arc {a} recolored from {prev} to {c}"),
                            ));
                        }
                    }
                }
                if !any {
                    return Err(syntax(line_no, 1, "color requires entries"));
                }
            }
            other => {
                return Err(syntax(line_no, col_of(other), format!("unknown key '{other}'")));
            }
        }
    }

    let diagram = ColoredDiagram::new(name, nodes, colors)?;
    Ok(Parsed { diagram, orient })
}

/// Serialize a diagram in canonical form.
pub fn serialize(d: &ColoredDiagram) -> String {
    let (c, _) = d.canonicalize();
    let mut out = String::new();
    if let Some(name) = &c.name {
        out.push_str(&format!("name {name}\n"));
    }
    let mut vertex_id = 0usize;
    for node in c.nodes() {
        if let DiagramNode::Vertex(s) = node {
            vertex_id += 1;
            out.push_str(&format!("vertex {}: {} {} {}\n", vertex_id, s[0], s[1], s[2]));
        }
    }
    let mut cid = vertex_id;
    for node in c.nodes() {
        if let DiagramNode::Crossing(s) = node {
            cid += 1;
            out.push_str(&format!(
                "crossing {}: {} {} {} {}\n",
                cid, s[0], s[1], s[2], s[3]
            ));
        }
    }
    // Free loops are emitted as one-crossing kinks to stay within the grammar.
    let mut next_arc = c.arc_colors().keys().map(|a| a.0).max().unwrap_or(0);
    let mut extra_colors: Vec<(ArcId, Color)> = Vec::new();
    for &(a, color) in c.free_loops() {
        next_arc += 1;
        let b = ArcId(next_arc);
        cid += 1;
        out.push_str(&format!("crossing {}: {} {} {} {}\n", cid, a, b, b, a));
        extra_colors.push((b, color));
    }
    let mut entries: Vec<(ArcId, Color)> = c
        .arc_colors()
        .iter()
        .map(|(&a, &col)| (a, col))
        .chain(extra_colors)
        .collect();
    entries.sort();
    for chunk in entries.chunks(8) {
        let parts: Vec<String> = chunk
            .iter()
            .map(|(a, col)| format!("{}={}", a, col.letter()))
            .collect();
        out.push_str(&format!("color {}\n", parts.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = "name theta\nvertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=g 3=b\n";

    #[test]
    fn round_trip_trivial_theta() {
        let d = parse(THETA).unwrap().diagram;
        let text = serialize(&d);
        let d2 = parse(&text).unwrap().diagram;
        let (canon, _) = d.canonicalize();
        assert_eq!(canon.nodes(), d2.nodes());
        assert_eq!(canon.arc_colors(), d2.arc_colors());
        // Serialization is a fixed point of itself.
        assert_eq!(text, serialize(&d2));
    }

    #[test]
    fn unknown_key_is_error() {
        let err = parse("frobnicate 1\n").unwrap_err();
        assert!(format!("{err}").contains("unknown key"));
    }

    #[test]
    fn syntax_error_carries_position() {
        let err = parse("vertex 1: 1 2 x\n").unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line 1"), "{msg}");
        assert!(msg.contains("bad arc id"), "{msg}");
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let src = "# a comment\n\nname t # trailing\nvertex 1: 1 2 3\nvertex 2: 1 3 2\n\
                   color 1=r 2=g 3=b\n";
        let d = parse(src).unwrap().diagram;
        assert_eq!(d.name.as_deref(), Some("t"));
    }

    #[test]
    fn orient_line_is_captured() {
        let src = format!("{THETA}orient default\n");
        let p = parse(&src).unwrap();
        assert_eq!(p.orient.as_deref(), Some("default"));
    }

    #[test]
    fn color_conflicts_rejected() {
        let src = "vertex 1: 1 2 3\nvertex 2: 1 3 2\ncolor 1=r 2=g 3=b 1=g\n";
        assert!(parse(src).is_err());
    }
}
