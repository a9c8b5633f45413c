//! The full invariant bundle of a totally oriented Klein graph.
//!
//! The signature is the sum of the three oriented bicolored-link signatures;
//! the unoriented signature is recovered as `zeta = sigma + lambda` rather
//! than through a spanning-surface form, and the nullity and component count
//! add over the pairs.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::ColoredDiagram;
use crate::ksg;
use crate::link::OrientedLinkDiagram;
use crate::orient::{
    enumerate_orientations, signed_seam_vertex_count, GraphLinks, OrientError, TotalOrientation,
};
use crate::seifert::{link_signature, LinkSignatureBundle, SeifertError};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    Orient(#[from] OrientError),
}

/// The invariant bundle (V, mu, lambda, sigma, zeta, beta, sv) of one
/// totally oriented Klein graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KleinInvariants {
    pub name: Option<String>,
    #[serde(rename = "V")]
    pub vertices: usize,
    pub mu: usize,
    pub lambda: i64,
    pub sigma: i64,
    pub zeta: i64,
    pub beta: usize,
    pub sv: i64,
    pub hamiltonian: bool,
    #[serde(skip)]
    pub per_pair: [LinkSignatureBundle; 3],
    #[serde(skip)]
    pub lambda_per_pair: [i64; 3],
}

impl KleinInvariants {
    /// JSON report (schema 1): {name, V, mu, lambda, sigma, zeta, beta, sv,
    /// hamiltonian}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "name": self.name,
            "V": self.vertices,
            "mu": self.mu,
            "lambda": self.lambda,
            "sigma": self.sigma,
            "zeta": self.zeta,
            "beta": self.beta,
            "sv": self.sv,
            "hamiltonian": self.hamiltonian,
        })
    }
}

fn cache() -> &'static Mutex<HashMap<(String, String), KleinInvariants>> {
    static CACHE: OnceLock<Mutex<HashMap<(String, String), KleinInvariants>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Compute the invariant bundle. Results are cached by the canonical
/// serialization of the diagram and the orientation spec.
pub fn compute(d: &ColoredDiagram, t: &TotalOrientation) -> Result<KleinInvariants, InvariantError> {
    let links = GraphLinks::new(d);
    compute_with_links(d, &links, t)
}

/// As [`compute`], reusing already-extracted bicolored links.
pub fn compute_with_links(
    d: &ColoredDiagram,
    links: &GraphLinks,
    t: &TotalOrientation,
) -> Result<KleinInvariants, InvariantError> {
    let key = (ksg::serialize(d), t.to_spec());
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }

    let mut per_pair = [LinkSignatureBundle {
        sigma: 0,
        beta: 0,
        mu: 0,
    }; 3];
    let mut lambda_per_pair = [0i64; 3];
    for k in 0..3 {
        let oriented: OrientedLinkDiagram = links.exts[k]
            .link
            .orient(t.dirs[k].clone())
            .expect("orientation bits sized by extraction");
        per_pair[k] = link_signature(&oriented)?;
        lambda_per_pair[k] = oriented.total_linking();
    }
    let sigma: i64 = per_pair.iter().map(|b| b.sigma).sum();
    let beta: usize = per_pair.iter().map(|b| b.beta).sum();
    let mu: usize = per_pair.iter().map(|b| b.mu).sum();
    let lambda: i64 = lambda_per_pair.iter().sum();
    let sv = signed_seam_vertex_count(d, links, t);
    let hamiltonian = per_pair.iter().all(|b| b.mu == 1) && d.is_connected_code();
    debug_assert!(beta <= mu - 3, "beta is at most mu - 3");
    if hamiltonian {
        debug_assert_eq!(lambda, 0);
        debug_assert_eq!(beta, 0);
        debug_assert_eq!(mu, 3);
    }
    let inv = KleinInvariants {
        name: d.name.clone(),
        vertices: d.vertex_count(),
        mu,
        lambda,
        sigma,
        zeta: sigma + lambda,
        beta,
        sv,
        hamiltonian,
        per_pair,
        lambda_per_pair,
    };
    cache()
        .lock()
        .expect("cache lock")
        .insert(key, inv.clone());
    Ok(inv)
}

/// One row of an orientation sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub orientation: TotalOrientation,
    pub invariants: KleinInvariants,
}

/// Result of sweeping all total orientations.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub min_abs_sigma: i64,
    pub max_abs_sigma: i64,
    pub sigma_constant: bool,
}

/// Evaluate the bundle for every total orientation (guarded at mu <= 24).
/// Per-pair link invariants are memoized across orientations.
pub fn orientation_sweep(d: &ColoredDiagram) -> Result<Sweep, InvariantError> {
    let links = GraphLinks::new(d);
    let mut pair_memo: [HashMap<Vec<bool>, (LinkSignatureBundle, i64)>; 3] =
        [HashMap::new(), HashMap::new(), HashMap::new()];
    let mut rows = Vec::new();
    let vertices = d.vertex_count();
    let connected = d.is_connected_code();
    for t in enumerate_orientations(&links)? {
        let mut per_pair = [LinkSignatureBundle {
            sigma: 0,
            beta: 0,
            mu: 0,
        }; 3];
        let mut lambda_per_pair = [0i64; 3];
        for k in 0..3 {
            let entry = match pair_memo[k].get(&t.dirs[k]) {
                Some(hit) => *hit,
                None => {
                    let oriented = links.exts[k]
                        .link
                        .orient(t.dirs[k].clone())
                        .expect("sized bits");
                    let bundle = link_signature(&oriented)?;
                    let lam = oriented.total_linking();
                    pair_memo[k].insert(t.dirs[k].clone(), (bundle, lam));
                    (bundle, lam)
                }
            };
            per_pair[k] = entry.0;
            lambda_per_pair[k] = entry.1;
        }
        let sigma: i64 = per_pair.iter().map(|b| b.sigma).sum();
        let beta: usize = per_pair.iter().map(|b| b.beta).sum();
        let mu: usize = per_pair.iter().map(|b| b.mu).sum();
        let lambda: i64 = lambda_per_pair.iter().sum();
        let sv = signed_seam_vertex_count(d, &links, &t);
        let invariants = KleinInvariants {
            name: d.name.clone(),
            vertices,
            mu,
            lambda,
            sigma,
            zeta: sigma + lambda,
            beta,
            sv,
            hamiltonian: per_pair.iter().all(|b| b.mu == 1) && connected,
            per_pair,
            lambda_per_pair,
        };
        rows.push(SweepRow {
            orientation: t,
            invariants,
        });
    }
    let min_abs_sigma = rows
        .iter()
        .map(|r| r.invariants.sigma.abs())
        .min()
        .unwrap_or(0);
    let max_abs_sigma = rows
        .iter()
        .map(|r| r.invariants.sigma.abs())
        .max()
        .unwrap_or(0);
    let sigma_constant = rows
        .iter()
        .all(|r| r.invariants.sigma == rows[0].invariants.sigma);
    Ok(Sweep {
        rows,
        min_abs_sigma,
        max_abs_sigma,
        sigma_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orient::TotalOrientation;
    use crate::transform::{gen_tetrahedron, gen_trivial_theta};

    #[test]
    fn trivial_theta_bundle_is_zero() {
        let d = gen_trivial_theta();
        let links = GraphLinks::new(&d);
        let t = TotalOrientation::default_for(&links);
        let inv = compute(&d, &t).unwrap();
        assert_eq!(inv.vertices, 2);
        assert_eq!(inv.mu, 3);
        assert_eq!(inv.lambda, 0);
        assert_eq!(inv.sigma, 0);
        assert_eq!(inv.zeta, 0);
        assert_eq!(inv.beta, 0);
        assert_eq!(inv.sv, 0);
        assert!(inv.hamiltonian);
    }

    #[test]
    fn sweeps_are_constant_for_hamiltonian_graphs() {
        for d in [gen_trivial_theta(), gen_tetrahedron()] {
            let sweep = orientation_sweep(&d).unwrap();
            assert_eq!(sweep.rows.len(), 8);
            assert!(sweep.sigma_constant);
            assert_eq!(sweep.max_abs_sigma, 0);
        }
    }

    #[test]
    fn tetrahedron_sv_is_plus_minus_one() {
        let d = gen_tetrahedron();
        let sweep = orientation_sweep(&d).unwrap();
        for row in &sweep.rows {
            assert_eq!(row.invariants.sv.abs(), 1);
        }
        let plus = sweep.rows.iter().filter(|r| r.invariants.sv == 1).count();
        assert_eq!(plus, 4, "half of the eight orientations are RGB");
    }

    #[test]
    fn json_shape() {
        let d = gen_trivial_theta();
        let links = GraphLinks::new(&d);
        let t = TotalOrientation::default_for(&links);
        let inv = compute(&d, &t).unwrap();
        let v = inv.to_json();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["V"], 2);
        assert_eq!(v["hamiltonian"], true);
    }
}
