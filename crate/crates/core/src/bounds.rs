//! Certified lower bounds on Klein unknotting numbers and Klein Gordian
//! distances, and upper bounds on slice orbifold Euler characteristics,
//! evaluated exactly from invariant bundles.

use serde::Serialize;
use thiserror::Error;

use crate::foam::LedgerReport;
use crate::invariants::KleinInvariants;
use crate::rat::{ceil_i64, max_rat, rat, rat_int, serialize_rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("theta bound requires a theta curve (V = 2, mu = 3); found V = {0}, mu = {1}")]
    NotATheta(usize, usize),
    #[error("hypothesis mismatch: V {0} vs {1}, mu {2} vs {3}")]
    Hypothesis(usize, usize, usize, usize),
    #[error("constituent bound requires a 3-Hamiltonian graph")]
    NotHamiltonian,
    #[error(
        "chain violation: lower bound {lower} exceeds 4 x script cost {cost}; \
         either the computation or the script claim is wrong"
    )]
    ChainViolation { lower: String, cost: String },
}

/// Lower bound on the Klein unknotting number of a theta curve:
/// `u_Y >= |sigma|/4`, and `u >= ceil(|sigma|/4)` for the standard
/// unknotting number.
pub fn theta_unknotting_bound(inv: &KleinInvariants) -> Result<(Rat, i64), BoundsError> {
    if inv.vertices != 2 || inv.mu != 3 {
        return Err(BoundsError::NotATheta(inv.vertices, inv.mu));
    }
    let uy = rat(inv.sigma.abs(), 4);
    let u = ceil_i64(&uy);
    Ok((uy, u))
}

/// Lower bound on the Klein Gordian distance:
/// `d_Y >= (|sigma1 - sigma2| - beta1 - beta2 + 4 mu - 12)/4`, clamped at 0.
pub fn gordian_lower_bound(
    inv1: &KleinInvariants,
    inv2: &KleinInvariants,
) -> Result<Rat, BoundsError> {
    if inv1.vertices != inv2.vertices || inv1.mu != inv2.mu {
        return Err(BoundsError::Hypothesis(
            inv1.vertices,
            inv2.vertices,
            inv1.mu,
            inv2.mu,
        ));
    }
    Ok(max_rat(rat_int(0), chain_left(inv1, inv2) / rat_int(4)))
}

/// The left expression of the main inequality chain.
fn chain_left(inv1: &KleinInvariants, inv2: &KleinInvariants) -> Rat {
    rat_int(
        (inv1.sigma - inv2.sigma).abs() - inv1.beta as i64 - inv2.beta as i64
            + 4 * inv1.mu as i64
            - 12,
    )
}

/// Upper bound on the slice orbifold Euler characteristic from the
/// signature: `chi_orb_4 <= (3 - V + 2|sv| - 2(mu - 3) + beta - |sigma|)/4`.
pub fn gammasig_chi_upper(inv: &KleinInvariants) -> Rat {
    rat(
        3 - inv.vertices as i64 + 2 * inv.sv.abs() - 2 * (inv.mu as i64 - 3)
            + inv.beta as i64
            - inv.sigma.abs(),
        4,
    )
}

/// Classical comparison bound: the maximal constituent unknotting number is
/// at least `max over pairs of ceil(|sigma_ij| / 2)`; requires all three
/// bicolored links to be knots.
pub fn constituent_bound(inv: &KleinInvariants) -> Result<i64, BoundsError> {
    if !inv.hamiltonian {
        return Err(BoundsError::NotHamiltonian);
    }
    Ok(inv
        .per_pair
        .iter()
        .map(|b| ceil_i64(&rat(b.sigma.abs(), 2)))
        .max()
        .expect("three pairs"))
}

/// One line of the main chain, as far as it is computable.
#[derive(Clone, Debug, Serialize)]
pub struct ChainLine {
    pub label: &'static str,
    #[serde(serialize_with = "serialize_rat")]
    pub lower: Rat,
    #[serde(serialize_with = "crate::rat::serialize_opt_rat")]
    pub upper: Option<Rat>,
}

/// Full bounds report for one graph or a pair.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub inputs: Vec<serde_json::Value>,
    #[serde(serialize_with = "crate::rat::serialize_opt_rat")]
    pub theta_bound_uy: Option<Rat>,
    pub theta_bound_u: Option<i64>,
    #[serde(serialize_with = "serialize_rat")]
    pub gordian_bound: Rat,
    #[serde(serialize_with = "serialize_rat")]
    pub gammasig_chi_upper: Rat,
    pub chain_lines: Vec<ChainLine>,
    pub mcu_style_bound: Option<i64>,
    #[serde(serialize_with = "crate::rat::serialize_opt_rat")]
    pub script_cost: Option<Rat>,
    #[serde(serialize_with = "crate::rat::serialize_opt_rat")]
    pub sharpness_gap: Option<Rat>,
}

/// Evaluate the inequality chain for a pair of graphs, optionally against a
/// script's realized cost. A chain violation (lower bound exceeding four
/// times the cost) is an error, never silent.
pub fn chain_report(
    inv1: &KleinInvariants,
    inv2: &KleinInvariants,
    ledger: Option<&LedgerReport>,
) -> Result<BoundsReport, BoundsError> {
    if inv1.vertices != inv2.vertices || inv1.mu != inv2.mu {
        return Err(BoundsError::Hypothesis(
            inv1.vertices,
            inv2.vertices,
            inv1.mu,
            inv2.mu,
        ));
    }
    let left = chain_left(inv1, inv2);
    let clamped = max_rat(rat_int(0), left.clone());
    let gordian = &clamped / rat_int(4);
    let v = inv1.vertices as i64;

    let cost = ledger.map(|l| l.cost.clone());
    let four_cost = cost.clone().map(|c| c * rat_int(4));
    if let Some(fc) = &four_cost {
        if &left > fc {
            return Err(BoundsError::ChainViolation {
                lower: crate::rat::display_rat(&left),
                cost: crate::rat::display_rat(&(fc / rat_int(4))),
            });
        }
    }

    let chain_lines = vec![
        ChainLine {
            label: "|ds| - b1 - b2 + 4mu - 12",
            lower: left.clone(),
            upper: Some(left.clone()),
        },
        ChainLine {
            label: "5 - 4chi_orb4(sum) - 2V",
            lower: left.clone(),
            upper: four_cost.clone(),
        },
        ChainLine {
            label: "-4chi_orb4(cobordism) - 2V",
            lower: left.clone(),
            upper: four_cost.clone(),
        },
        ChainLine {
            label: "4 d_Y",
            lower: clamped.clone(),
            upper: four_cost.clone(),
        },
    ];
    let _ = v;

    let theta = theta_unknotting_bound(inv1).ok();
    let gap = match (&cost, &gordian) {
        (Some(c), g) => Some(c - g),
        _ => None,
    };
    Ok(BoundsReport {
        inputs: vec![inv1.to_json(), inv2.to_json()],
        theta_bound_uy: theta.as_ref().map(|(uy, _)| uy.clone()),
        theta_bound_u: theta.as_ref().map(|&(_, u)| u),
        gordian_bound: gordian,
        gammasig_chi_upper: gammasig_chi_upper(inv1),
        chain_lines,
        mcu_style_bound: constituent_bound(inv1).ok(),
        script_cost: cost,
        sharpness_gap: gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::LinkSignatureBundle;

    fn bundle(sigma: i64, beta: usize, mu: usize, v: usize, sv: i64) -> KleinInvariants {
        let ham = mu == 3;
        KleinInvariants {
            name: None,
            vertices: v,
            mu,
            lambda: 0,
            sigma,
            zeta: sigma,
            beta,
            sv,
            hamiltonian: ham,
            per_pair: [
                LinkSignatureBundle {
                    sigma: sigma / 3,
                    beta: 0,
                    mu: 1,
                },
                LinkSignatureBundle {
                    sigma: sigma / 3,
                    beta: 0,
                    mu: 1,
                },
                LinkSignatureBundle {
                    sigma: sigma - 2 * (sigma / 3),
                    beta: 0,
                    mu: 1,
                },
            ],
            lambda_per_pair: [0; 3],
        }
    }

    #[test]
    fn theta_bounds() {
        // |sigma| = 12: u_Y >= 3, u >= 3.
        let inv = bundle(-12, 0, 3, 2, 0);
        let (uy, u) = theta_unknotting_bound(&inv).unwrap();
        assert_eq!(uy, rat_int(3));
        assert_eq!(u, 3);
        // |sigma| = 18: u_Y >= 4.5, u >= 5.
        let inv = bundle(-18, 0, 3, 2, 0);
        let (uy, u) = theta_unknotting_bound(&inv).unwrap();
        assert_eq!(uy, rat(9, 2));
        assert_eq!(u, 5);
        // Trivial theta.
        let inv = bundle(0, 0, 3, 2, 0);
        let (uy, u) = theta_unknotting_bound(&inv).unwrap();
        assert_eq!(uy, rat_int(0));
        assert_eq!(u, 0);
        // Not a theta.
        assert!(theta_unknotting_bound(&bundle(0, 0, 3, 4, 1)).is_err());
    }

    #[test]
    fn gordian_bounds() {
        let theta2 = bundle(-12, 0, 3, 2, 0);
        let trivial = bundle(0, 0, 3, 2, 0);
        assert_eq!(gordian_lower_bound(&theta2, &trivial).unwrap(), rat_int(3));
        // Same graph: clamp at zero.
        assert_eq!(gordian_lower_bound(&theta2, &theta2).unwrap(), rat_int(0));
        // theta_3 vs theta_2 with matched chirality: 3/2.
        let theta3 = bundle(-18, 0, 3, 2, 0);
        assert_eq!(gordian_lower_bound(&theta3, &theta2).unwrap(), rat(3, 2));
        // Hypothesis mismatch.
        assert!(gordian_lower_bound(&theta2, &bundle(0, 0, 3, 4, 0)).is_err());
    }

    #[test]
    fn gammasig_values() {
        assert_eq!(gammasig_chi_upper(&bundle(0, 0, 3, 2, 0)), rat(1, 4));
        assert_eq!(gammasig_chi_upper(&bundle(-12, 0, 3, 2, 0)), rat(-11, 4));
        assert_eq!(gammasig_chi_upper(&bundle(0, 0, 3, 4, 1)), rat(1, 4));
    }

    #[test]
    fn constituent_bounds() {
        let theta2 = bundle(-12, 0, 3, 2, 0);
        assert_eq!(constituent_bound(&theta2).unwrap(), 2);
        let theta3 = bundle(-18, 0, 3, 2, 0);
        assert_eq!(constituent_bound(&theta3).unwrap(), 3);
        let trivial = bundle(0, 0, 3, 2, 0);
        assert_eq!(constituent_bound(&trivial).unwrap(), 0);
    }
}
