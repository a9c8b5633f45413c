//! The generator corpus and a deterministic pseudo-random source for the
//! property suites. The acceptance checks live in the `acceptance`
//! integration test and the CLI's `corpus check` subcommand, both of which
//! call into this module.

use crate::diagram::ColoredDiagram;
use crate::foam::ChangeScript;
use crate::transform;

/// Deterministic xorshift64* generator; quality is irrelevant, stability
/// across runs and platforms is the point.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    /// Uniform-ish value in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Signed integer in `-n..=n`.
    pub fn signed(&mut self, n: i64) -> i64 {
        (self.next_u64() % (2 * n as u64 + 1)) as i64 - n
    }
}

/// One corpus entry: a diagram, and a reference crossing-change script when
/// the family carries one.
pub struct CorpusEntry {
    pub diagram: ColoredDiagram,
    pub script: Option<ChangeScript>,
}

/// The standard corpus: the basic graphs, the theta_n family with its
/// bundled scripts, the Kinoshita-Wolcott family, and the torus2k family.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    out.push(CorpusEntry {
        diagram: transform::gen_trivial_theta(),
        script: Some(ChangeScript::default()),
    });
    out.push(CorpusEntry {
        diagram: transform::gen_tetrahedron(),
        script: Some(ChangeScript::default()),
    });
    for n in 1..=4 {
        out.push(CorpusEntry {
            diagram: transform::gen_theta_n(n),
            script: Some(theta_n_script(n)),
        });
    }
    for (p, q, r) in [(1, 1, 1), (1, 1, 3), (1, 3, 5), (0, 0, 0)] {
        out.push(CorpusEntry {
            diagram: transform::gen_kinoshita(p, q, r),
            script: Some(ChangeScript::default()),
        });
    }
    for k in [1, 2] {
        out.push(CorpusEntry {
            diagram: transform::gen_torus2k(k),
            script: None,
        });
    }
    out
}

/// The bundled unknotting script for theta_n: n same-color changes on the
/// red edge and n mixed changes between the red and green edges, mirroring
/// the family's published count `s + m/2 = 3n/2`.
pub fn theta_n_script(n: usize) -> ChangeScript {
    use crate::diagram::{Color, EdgeId};
    let d = transform::gen_theta_n(n);
    let edges = d.derive_edges();
    let find = |c: Color| -> EdgeId {
        edges
            .iter()
            .find(|e| e.color == c)
            .expect("theta has every color")
            .id
    };
    let (er, eg) = (find(Color::R), find(Color::G));
    let mut steps = Vec::new();
    for _ in 0..n {
        steps.push(ChangeScript::same(Color::R, er, er));
    }
    for _ in 0..n {
        steps.push(ChangeScript::mixed(Color::R, Color::G, er, eg));
    }
    ChangeScript { steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn corpus_has_scripts_where_promised() {
        let c = corpus();
        assert!(c.len() >= 10);
        for e in &c {
            if let Some(s) = &e.script {
                // Scripts reference edges of their own diagram.
                let n = e.diagram.derive_edges().len();
                for step in &s.steps {
                    assert!(step.edges.0 .0 < n && step.edges.1 .0 < n);
                }
            }
        }
    }

    #[test]
    fn theta_script_counts() {
        let s = theta_n_script(2);
        assert_eq!(s.steps.len(), 4);
        assert_eq!(s.cost(), crate::rat::rat(3, 1));
    }
}
