//! Seifert matrices, signatures and nullities of oriented links, computed
//! exactly through the braid pipeline.
//!
//! The Seifert surface of a braid closure is the disk-and-band surface: one
//! disk per strand, one band per letter. Its first homology is generated by
//! one cycle per pair of consecutive letters with the same index, and the
//! Seifert pairing of those generators has a closed form in the letter
//! exponents, implemented here. The signature and nullity of the symmetrized
//! pairing are computed by exact congruence diagonalization over rationals;
//! no floating point is involved anywhere.

use std::collections::BTreeMap;

use num::{BigRational, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::braid::{to_braid, BraidError};
use crate::link::OrientedLinkDiagram;
use crate::rat::rat_int;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeifertError {
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// A braid word: letters are signed generator indices, `+i` for sigma_i,
/// `-i` for its inverse, with `1 <= i < strands`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> BraidWord {
        assert!(strands >= 1);
        for &l in &letters {
            let idx = l.unsigned_abs() as usize;
            assert!(idx >= 1 && idx < strands, "letter {l} out of range");
        }
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Number of components of the braid closure: cycles of the underlying
    /// permutation.
    pub fn closure_component_count(&self) -> usize {
        let n = self.strands;
        let mut perm: Vec<usize> = (0..n).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        // perm[i] = final position of the strand starting at i.
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    /// Mirror image: all letter signs flipped.
    pub fn mirror(&self) -> BraidWord {
        BraidWord::new(self.strands, self.letters.iter().map(|&l| -l).collect())
    }

    /// Conjugate by sigma_i^(sign): the closure is unchanged.
    pub fn conjugate(&self, letter: i32) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        letters.push(-letter);
        BraidWord::new(self.strands, letters)
    }

    /// Markov stabilization: adds a strand and a final sigma_n^(+/-1).
    pub fn stabilize(&self, positive: bool) -> BraidWord {
        let n = self.strands;
        let mut letters = self.letters.clone();
        letters.push(if positive { n as i32 } else { -(n as i32) });
        BraidWord::new(n + 1, letters)
    }
}

/// Integer Seifert matrix plus the number of connected components of the
/// Seifert surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    /// The Seifert pairing on the band generators.
    pub v: Vec<Vec<i64>>,
    /// Connected components of the surface (strands modulo letters).
    pub r: usize,
}

impl SeifertData {
    pub fn size(&self) -> usize {
        self.v.len()
    }

    /// The symmetrized pairing `V + V^T`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = self.v[i][j] + self.v[j][i];
            }
        }
        m
    }
}

/// Signature data of one oriented link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkSignatureBundle {
    pub sigma: i64,
    pub beta: usize,
    pub mu: usize,
}

/// Linking contribution of two generator cycles at adjacent letter indices
/// whose letter positions strictly interleave, for the pattern where the
/// lower-index cycle starts first. The flipped pattern is the transpose.
/// The values are pinned by the pushoff-linking oracle in the test suite.
const INTERLEAVE_LOWER_FIRST: (i64, i64) = (0, -1);

/// Seifert matrix of the disk-and-band surface of a braid closure.
///
/// Generators are consecutive pairs of equal-index letters, ordered by
/// (index, position). `r` is the number of connected components of the
/// Seifert graph (strands as nodes, letters as edges).
pub fn seifert_matrix(w: &BraidWord) -> SeifertData {
    let letters = w.letters();
    let exp: Vec<i64> = letters.iter().map(|&l| l.signum() as i64).collect();

    // Positions of each generator index.
    let mut occ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (t, &l) in letters.iter().enumerate() {
        occ.entry(l.unsigned_abs() as usize).or_default().push(t);
    }

    #[derive(Clone, Copy)]
    struct Gen {
        index: usize,
        p: usize,
        q: usize,
    }
    let mut gens: Vec<Gen> = Vec::new();
    for (&index, positions) in &occ {
        for t in 0..positions.len().saturating_sub(1) {
            gens.push(Gen {
                index,
                p: positions[t],
                q: positions[t + 1],
            });
        }
    }

    let g = gens.len();
    let mut v = vec![vec![0i64; g]; g];
    for a in 0..g {
        let ga = gens[a];
        v[a][a] = -(exp[ga.p] + exp[ga.q]) / 2;
        for b in 0..g {
            if a == b {
                continue;
            }
            let gb = gens[b];
            if ga.index == gb.index {
                // Consecutive pairs sharing the middle letter.
                if ga.q == gb.p {
                    let e = exp[ga.q];
                    v[a][b] = (e + 1) / 2;
                    v[b][a] = (e - 1) / 2;
                }
            } else if gb.index == ga.index + 1 {
                // Strictly interleaved cycles at adjacent indices link once.
                let (c_ab, c_ba) = INTERLEAVE_LOWER_FIRST;
                if ga.p < gb.p && gb.p < ga.q && ga.q < gb.q {
                    v[a][b] = c_ab;
                    v[b][a] = c_ba;
                } else if gb.p < ga.p && ga.p < gb.q && gb.q < ga.q {
                    v[a][b] = c_ba;
                    v[b][a] = c_ab;
                }
            }
        }
    }

    // Components of the Seifert graph.
    let n = w.strands();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let (a, b) = (find(&mut parent, i), find(&mut parent, i + 1));
        if a != b {
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    roots.sort();
    roots.dedup();
    let r = roots.len();
    debug_assert_eq!(g, letters.len() + r - n, "first Betti number check");

    SeifertData { v, r }
}

/// Exact signature and nullity of a symmetric integer matrix by congruence
/// diagonalization over rationals. Pivots are chosen first-nonzero in the
/// order given by `pivot_order` (identity order when `None`); the result is
/// independent of that order.
pub fn sym_signature_nullity(m: &[Vec<i64>], pivot_order: Option<&[usize]>) -> (i64, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter().map(|&x| rat_int(x)).collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            assert_eq!(a[i][j], a[j][i], "matrix must be symmetric");
        }
    }
    let order: Vec<usize> = match pivot_order {
        Some(o) => o.to_vec(),
        None => (0..n).collect(),
    };
    assert_eq!(order.len(), n);

    let mut active: Vec<usize> = order;
    let mut pos = 0i64;
    let mut neg = 0i64;
    let mut nullity = 0usize;

    while !active.is_empty() {
        // A nonzero diagonal pivot if one exists.
        if let Some(kpos) = active.iter().position(|&k| !a[k][k].is_zero()) {
            let k = active[kpos];
            if a[k][k].is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.remove(kpos);
            let pivot = a[k][k].clone();
            for ii in 0..active.len() {
                let i = active[ii];
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for jj in 0..active.len() {
                    let j = active[jj];
                    let val = &a[i][j] - &(&factor * &a[k][j]);
                    a[i][j] = val;
                }
            }
            continue;
        }
        // All diagonal entries vanish; look for a hyperbolic pair.
        let mut pair = None;
        'outer: for (ki, &k) in active.iter().enumerate() {
            for (li, &l) in active.iter().enumerate().skip(ki + 1) {
                if !a[k][l].is_zero() {
                    pair = Some((ki, li, k, l));
                    break 'outer;
                }
            }
        }
        match pair {
            Some((ki, li, k, l)) => {
                // The block [[0, c], [c, 0]] contributes one +1 and one -1.
                pos += 1;
                neg += 1;
                let c = a[k][l].clone();
                active.remove(li);
                active.remove(ki);
                for ii in 0..active.len() {
                    let i = active[ii];
                    for jj in 0..active.len() {
                        let j = active[jj];
                        let delta = &(&(&a[i][k] * &a[l][j]) + &(&a[i][l] * &a[k][j])) / &c;
                        let val = &a[i][j] - &delta;
                        a[i][j] = val;
                    }
                }
            }
            None => {
                nullity += active.len();
                break;
            }
        }
    }
    (pos - neg, nullity)
}

/// Signature/nullity bundle of one link from its Seifert data.
///
/// `beta` is the nullity of `V + V^T` plus `r - 1`, plus one per extra split
/// piece when the caller decomposed a split diagram (`split_extra` pieces
/// beyond the first). `mu` is the component count of the link, supplied by
/// the caller since it is not recoverable from the pairing alone.
pub fn signature_nullity(s: &SeifertData, split_extra: usize, mu: usize) -> LinkSignatureBundle {
    let sym = s.symmetrized();
    let (sigma, nullity) = sym_signature_nullity(&sym, None);
    let beta = nullity + (s.r - 1) + split_extra;
    debug_assert!(sigma.unsigned_abs() as usize <= sym.len());
    LinkSignatureBundle { sigma, beta, mu }
}

/// Full pipeline for an oriented link diagram: split decomposition, braiding
/// of each piece, Seifert matrices, and exact signature/nullity, combined
/// over the split union.
pub fn link_signature(o: &OrientedLinkDiagram) -> Result<LinkSignatureBundle, SeifertError> {
    let pieces = o.base.split_decompose();
    if pieces.is_empty() {
        return Ok(LinkSignatureBundle {
            sigma: 0,
            beta: 0,
            mu: 0,
        });
    }
    let mut sigma = 0i64;
    let mut beta = 0usize;
    let mut mu = 0usize;
    for piece in &pieces {
        let dirs: Vec<bool> = (0..piece.link.component_count())
            .map(|pc| {
                let parent = piece.parent_components[pc];
                o.dirs[parent] == piece.dir_agree[pc]
            })
            .collect();
        let oriented = piece
            .link
            .orient(dirs)
            .expect("piece orientation matches its component count");
        let word = to_braid(&oriented)?;
        let data = seifert_matrix(&word);
        let piece_mu = piece.link.component_count();
        let bundle = signature_nullity(&data, 0, piece_mu);
        sigma += bundle.sigma;
        beta += bundle.beta;
        mu += piece_mu;
    }
    // Split union: beta gains one per piece beyond the first.
    beta += pieces.len() - 1;
    let bundle = LinkSignatureBundle { sigma, beta, mu };
    debug_assert!(mu == 0 || bundle.beta <= mu - 1, "nullity bound");
    Ok(bundle)
}

/// Convenience: the bundle of a braid closure.
pub fn braid_signature(w: &BraidWord) -> LinkSignatureBundle {
    let data = seifert_matrix(w);
    signature_nullity(&data, 0, w.closure_component_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus2_word(k: usize) -> BraidWord {
        BraidWord::new(2, vec![1; k])
    }

    #[test]
    fn trefoil_seifert_matrix_matches_hand_computation() {
        // Genus-1 surface of the right trefoil: pushoff linking gives
        // V = [[-1, 1], [0, -1]].
        let s = seifert_matrix(&torus2_word(3));
        assert_eq!(s.v, vec![vec![-1, 1], vec![0, -1]]);
        assert_eq!(s.r, 1);
        let b = signature_nullity(&s, 0, 1);
        assert_eq!((b.sigma, b.beta), (-2, 0));
    }

    #[test]
    fn empty_word_on_two_strands_is_the_unlink() {
        let s = seifert_matrix(&BraidWord::new(2, vec![]));
        assert_eq!(s.size(), 0);
        assert_eq!(s.r, 2);
        let b = signature_nullity(&s, 0, 2);
        assert_eq!((b.sigma, b.beta, b.mu), (0, 1, 2));
    }

    #[test]
    fn odd_torus_words_have_bidiagonal_matrices() {
        for n in 1..=5usize {
            let s = seifert_matrix(&torus2_word(2 * n + 1));
            let size = 2 * n;
            assert_eq!(s.size(), size);
            for i in 0..size {
                for j in 0..size {
                    let want = if i == j {
                        -1
                    } else if j == i + 1 {
                        1
                    } else {
                        0
                    };
                    assert_eq!(s.v[i][j], want, "entry ({i},{j}) for n={n}");
                }
            }
            assert_eq!(s.r, 1);
        }
    }

    #[test]
    fn torus_knot_signatures() {
        for n in 1..=10usize {
            let b = braid_signature(&torus2_word(2 * n + 1));
            assert_eq!(b.sigma, -2 * (n as i64), "sigma of T(2,{})", 2 * n + 1);
            assert_eq!(b.beta, 0);
            assert_eq!(b.mu, 1);
        }
    }

    #[test]
    fn hopf_link_signature() {
        let b = braid_signature(&torus2_word(2));
        assert_eq!((b.sigma, b.beta, b.mu), (-1, 0, 2));
    }

    #[test]
    fn torus_link_signatures() {
        // T(2, 2k) has signature 1 - 2k.
        for k in 1..=5i64 {
            let b = braid_signature(&torus2_word(2 * k as usize));
            assert_eq!(b.sigma, 1 - 2 * k);
            assert_eq!(b.mu, 2);
            assert_eq!(b.beta, 0);
        }
    }

    #[test]
    fn figure_eight_is_amphichiral_flavored() {
        let w = BraidWord::new(3, vec![1, -2, 1, -2]);
        let b = braid_signature(&w);
        assert_eq!((b.sigma, b.beta, b.mu), (0, 0, 1));
        // The knot determinant is 5.
        let s = seifert_matrix(&w);
        let sym = s.symmetrized();
        let det = sym[0][0] * sym[1][1] - sym[0][1] * sym[1][0];
        assert_eq!(det.abs(), 5);
    }

    #[test]
    fn t34_and_t35_signatures() {
        // T(3,4) = 8_19 has sigma -6; T(3,5) = 10_124 has sigma -8.
        let t34 = BraidWord::new(3, vec![1, 2, 1, 2, 1, 2, 1, 2]);
        assert_eq!(braid_signature(&t34).sigma, -6);
        let t35 = BraidWord::new(3, vec![1, 2, 1, 2, 1, 2, 1, 2, 1, 2]);
        assert_eq!(braid_signature(&t35).sigma, -8);
    }

    #[test]
    fn granny_and_square_knots() {
        let granny = BraidWord::new(3, vec![1, 1, 1, 2, 2, 2]);
        assert_eq!(braid_signature(&granny).sigma, -4);
        let square = BraidWord::new(3, vec![1, 1, 1, -2, -2, -2]);
        assert_eq!(braid_signature(&square).sigma, 0);
    }

    #[test]
    fn mirror_negates_signature() {
        for w in [
            torus2_word(5),
            BraidWord::new(3, vec![1, 2, 1, 2]),
            BraidWord::new(4, vec![1, 2, 3, 1, 2, 1]),
        ] {
            let b = braid_signature(&w);
            let m = braid_signature(&w.mirror());
            assert_eq!(b.sigma, -m.sigma);
            assert_eq!(b.beta, m.beta);
            assert_eq!(b.mu, m.mu);
        }
    }

    #[test]
    fn diagonalization_handles_zero_diagonal_blocks() {
        // Hyperbolic plane: signature 0, nullity 0.
        let h = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(sym_signature_nullity(&h, None), (0, 0));
        // Zero matrix: all nullity.
        let z = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(sym_signature_nullity(&z, None), (0, 2));
        // A mixed case.
        let m = vec![
            vec![0, 2, 0],
            vec![2, 0, 1],
            vec![0, 1, 0],
        ];
        let (sig, nul) = sym_signature_nullity(&m, None);
        // Eigen-signs: the matrix has determinant 0 and a +/- pair.
        assert_eq!((sig, nul), (0, 1));
    }

    #[test]
    fn pivot_order_does_not_change_the_result() {
        let m = vec![
            vec![2, 1, 0, 0],
            vec![1, -2, 3, 1],
            vec![0, 3, 0, 0],
            vec![0, 1, 0, 0],
        ];
        let base = sym_signature_nullity(&m, None);
        let orders: Vec<Vec<usize>> = vec![
            vec![3, 2, 1, 0],
            vec![2, 0, 3, 1],
            vec![1, 3, 0, 2],
        ];
        for o in orders {
            assert_eq!(sym_signature_nullity(&m, Some(&o)), base);
        }
    }

    #[test]
    fn conjugation_and_stabilization_preserve_invariants() {
        let w = BraidWord::new(3, vec![1, 2, 1, 2]);
        let base = braid_signature(&w);
        for letter in [1i32, -1, 2, -2] {
            let c = braid_signature(&w.conjugate(letter));
            assert_eq!((c.sigma, c.beta, c.mu), (base.sigma, base.beta, base.mu));
        }
        for positive in [true, false] {
            let s = braid_signature(&w.stabilize(positive));
            assert_eq!((s.sigma, s.beta, s.mu), (base.sigma, base.beta, base.mu));
        }
    }
}
