// Geometric pushoff-linking oracle for braid-surface Seifert matrices.
// Nested-disk model: rim m at radius m, height -m; half-twisted radial
// bands at letter angles; generator cycles traverse two bands and two
// dome arcs; pushoffs ride the surface normal (alternating per dome,
// rotating through bands).
use kleinsig_core::seifert::BraidWord;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug)]
struct P(f64, f64, f64);

impl P {
    fn add(self, o: P) -> P { P(self.0 + o.0, self.1 + o.1, self.2 + o.2) }
    fn scale(self, s: f64) -> P { P(self.0 * s, self.1 * s, self.2 * s) }
}

fn cyl(r: f64, th: f64, z: f64) -> P {
    P(r * th.cos(), r * th.sin(), z)
}

fn theta_hat(th: f64) -> P {
    P(-th.sin(), th.cos(), 0.0)
}

const GLOBAL_TWIRL: f64 = 0.1234567;

struct Model {
    // Calibration: global normal sign and twist handedness sign.
    s_global: f64,
    e_sign: f64,
}

impl Model {
    fn dome_normal_sign(&self, m: usize) -> f64 {
        self.s_global * if m % 2 == 1 { 1.0 } else { -1.0 }
    }

    /// Core + pushoff of the cycle (p, q) at index i with generator id g.
    fn cycle(&self, k: usize, i: usize, p: usize, q: usize, e: &[f64], g: usize) -> (Vec<P>, Vec<P>) {
        let ang = |t: usize| GLOBAL_TWIRL + 2.0 * std::f64::consts::PI * (t as f64) / (k as f64 + 1.0);
        let rim_r = |m: usize| m as f64;
        let rim_z = |m: usize| -(m as f64);
        let jit = 0.002 * (g as f64 + 1.0);
        let alpha = 0.20 + jit; // lower-dome inset (dome i+1)
        let beta = 0.40 + jit;  // upper-dome inset (dome i)
        let wdt = 0.03;
        let delta = 0.0005;
        let rise = 0.05;
        let eps0: f64 = 0.07;

        let mut core: Vec<P> = Vec::new();
        let mut push: Vec<P> = Vec::new();
        let band_samples = 16;
        let arc_step = 0.06;

        // Band traversal: from rim i to rim i+1 at angle ang(t), width w,
        // exponent et; s from 0 to 1 (down) or 1 to 0 (up).
        let mut band = |t: usize, w: f64, down: bool, et: f64, core: &mut Vec<P>, push: &mut Vec<P>| {
            let th = ang(t);
            let n0 = self.dome_normal_sign(i);
            for j in 0..=band_samples {
                let s = if down { j as f64 / band_samples as f64 } else { 1.0 - j as f64 / band_samples as f64 };
                let r = rim_r(i) * (1.0 - s) + rim_r(i + 1) * s;
                let z = rim_z(i) * (1.0 - s) + rim_z(i + 1) * s;
                let c = cyl(r, th, z);
                let twist = std::f64::consts::PI * s * self.e_sign * et;
                // Frame rotation in the (theta_hat, n0*z) plane by `twist`.
                let wv = theta_hat(th).scale(twist.cos()).add(P(0.0, 0.0, n0 * twist.sin()));
                let nv = P(0.0, 0.0, n0 * twist.cos()).add(theta_hat(th).scale(-twist.sin()));
                core.push(c.add(wv.scale(w)));
                push.push(c.add(wv.scale(w)).add(nv.scale(delta)));
            }
        };

        let e_p = e[p];
        let e_q = e[q];
        // 1. band p downward, width +w.
        band(p, wdt, true, e_p, &mut core, &mut push);
        // 2..3. dome i+1 arc from ang(p)+eps to ang(q)-eps at inset alpha.
        let m = i + 1;
        let nlow = self.dome_normal_sign(m);
        let (a0, a1) = (ang(p) + eps0, ang(q) - eps0);
        let steps = ((a1 - a0).abs() / arc_step).ceil().max(2.0) as usize;
        for j in 0..=steps {
            let th = a0 + (a1 - a0) * j as f64 / steps as f64;
            let r = rim_r(m) - alpha;
            let z = rim_z(m) + rise * alpha;
            core.push(cyl(r, th, z));
            push.push(cyl(r, th, z + nlow * delta));
        }
        // 4..5. band q upward, width -w.
        band(q, -wdt, false, e_q, &mut core, &mut push);
        // 6..7. dome i arc back from ang(q)-eps to ang(p)+eps at inset beta.
        let nup = self.dome_normal_sign(i);
        let (b0, b1) = (ang(q) - eps0, ang(p) + eps0);
        let steps = ((b1 - b0).abs() / arc_step).ceil().max(2.0) as usize;
        for j in 0..=steps {
            let th = b0 + (b1 - b0) * j as f64 / steps as f64;
            let r = rim_r(i) - beta;
            let z = rim_z(i) + rise * beta;
            core.push(cyl(r, th, z));
            push.push(cyl(r, th, z + nup * delta));
        }
        (core, push)
    }
}

/// Signed-crossing linking number of closed polylines, counting crossings
/// where `a` passes over `b`.
fn linking(a: &[P], b: &[P]) -> i64 {
    let mut total = 0i64;
    let na = a.len();
    let nb = b.len();
    for i in 0..na {
        let (p1, p2) = (a[i], a[(i + 1) % na]);
        for j in 0..nb {
            let (q1, q2) = (b[j], b[(j + 1) % nb]);
            let d1 = (p2.0 - p1.0, p2.1 - p1.1);
            let d2 = (q2.0 - q1.0, q2.1 - q1.1);
            let det = d1.0 * d2.1 - d1.1 * d2.0;
            if det.abs() < 1e-12 {
                continue;
            }
            let rx = q1.0 - p1.0;
            let ry = q1.1 - p1.1;
            let s = (rx * d2.1 - ry * d2.0) / det;
            let t = (rx * d1.1 - ry * d1.0) / det;
            if s <= 1e-9 || s >= 1.0 - 1e-9 || t <= 1e-9 || t >= 1.0 - 1e-9 {
                continue;
            }
            let za = p1.2 + (p2.2 - p1.2) * s;
            let zb = q1.2 + (q2.2 - q1.2) * t;
            assert!((za - zb).abs() > 1e-7, "degenerate crossing depth");
            if za > zb {
                total += if det > 0.0 { 1 } else { -1 };
            }
        }
    }
    total
}

fn oracle_matrix(w: &BraidWord, s_global: f64, e_sign: f64) -> Vec<Vec<i64>> {
    let letters = w.letters();
    let k = letters.len();
    let e: Vec<f64> = letters.iter().map(|&l| l.signum() as f64).collect();
    let mut occ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (t, &l) in letters.iter().enumerate() {
        occ.entry(l.unsigned_abs() as usize).or_default().push(t);
    }
    let mut gens: Vec<(usize, usize, usize)> = Vec::new();
    for (&index, positions) in &occ {
        for t in 0..positions.len().saturating_sub(1) {
            gens.push((index, positions[t], positions[t + 1]));
        }
    }
    let model = Model { s_global, e_sign };
    let curves: Vec<(Vec<P>, Vec<P>)> = gens
        .iter()
        .enumerate()
        .map(|(g, &(i, p, q))| model.cycle(k, i, p, q, &e, g))
        .collect();
    let n = gens.len();
    let mut v = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in 0..n {
            v[a][b] = linking(&curves[a].0, &curves[b].1);
        }
    }
    v
}

fn hybrid_sigma(w: &BraidWord, s_g: f64, e_g: f64) -> (i64, usize) {
    // Formula for diagonal and shared-letter entries; oracle for cross-index.
    use kleinsig_core::seifert::sym_signature_nullity;
    let letters = w.letters();
    let exp: Vec<i64> = letters.iter().map(|&l| l.signum() as i64).collect();
    let mut occ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (t, &l) in letters.iter().enumerate() {
        occ.entry(l.unsigned_abs() as usize).or_default().push(t);
    }
    let mut gens: Vec<(usize, usize, usize)> = Vec::new();
    for (&index, positions) in &occ {
        for t in 0..positions.len().saturating_sub(1) {
            gens.push((index, positions[t], positions[t + 1]));
        }
    }
    let vo = oracle_matrix(w, s_g, e_g);
    let n = gens.len();
    let mut v = vec![vec![0i64; n]; n];
    for a in 0..n {
        let (ia, pa, qa) = gens[a];
        v[a][a] = -(exp[pa] + exp[qa]) / 2;
        for b in 0..n {
            if a == b { continue; }
            let (ib, pb, qb) = gens[b];
            if ia == ib {
                if qa == pb {
                    let e = exp[qa];
                    v[a][b] = (e + 1) / 2;
                    v[b][a] = (e - 1) / 2;
                }
            } else if ib > ia {
                v[a][b] = vo[a][b];
                v[b][a] = vo[b][a];
            }
        }
    }
    let mut sym = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            sym[i][j] = v[i][j] + v[j][i];
        }
    }
    sym_signature_nullity(&sym, None)
}

fn main() {
    let battery: Vec<(BraidWord, i64, usize)> = vec![
        (BraidWord::new(3, vec![1, 2, 1, 2, 1, 2, 1, 2]), -6, 0),
        (BraidWord::new(3, vec![1, 2, 1, 2, 1, 2, 1, 2, 1, 2]), -8, 0),
        (BraidWord::new(3, vec![1, 2, 1, 2, 1, 2]), -4, 2),
        (BraidWord::new(3, vec![1, -2, 1, -2]), 0, 0),
        (BraidWord::new(3, vec![1, 1, 1, 2, 2, 2]), -4, 0),
        (BraidWord::new(3, vec![1, 1, 1, -2, -2, -2]), 0, 0),
        (BraidWord::new(4, vec![1, 2, 3, 1, 2, 3, 1, 2, 3]), -6, 0),
        (BraidWord::new(3, vec![1, 2, 2, 1]), -2, 0),
        (BraidWord::new(3, vec![2, 1, 2, 1, 2, 1, 2, 1]), -6, 0),
        (BraidWord::new(3, vec![1, 2, 2, 2, 2, 1]), -3, 0),
        (BraidWord::new(3, vec![1, 1, 1, 2]), -2, 0),
        (BraidWord::new(3, vec![1, 1, 1, -2]), -2, 0),
        (BraidWord::new(3, vec![2, 1, 1, 1, -2]), -2, 0),
        (BraidWord::new(3, vec![-2, 1, 1, 1, 2]), -2, 0),
        (BraidWord::new(4, vec![1, 3, 1, 3]), -2, 1),
    ];
    for s_g in [1.0, -1.0] {
        for e_g in [1.0, -1.0] {
            let mut ok = 0;
            let mut bad = Vec::new();
            for (idx, (w, sig, nul)) in battery.iter().enumerate() {
                let got = hybrid_sigma(w, s_g, e_g);
                if got == (*sig, *nul) { ok += 1; } else { bad.push((idx, got)); }
            }
            println!("s={s_g} e={e_g}: {ok}/{} pass; failures {bad:?}", battery.len());
        }
    }
    // Show cross-index entries from the best calibration on probe words.
    for (label, w) in [
        ("s1 s2 s1 s2", BraidWord::new(3, vec![1, 2, 1, 2])),
        ("s2 s1 s2 s1", BraidWord::new(3, vec![2, 1, 2, 1])),
        ("s1 s2 s2 s1", BraidWord::new(3, vec![1, 2, 2, 1])),
        ("s2 s1 s1 s2", BraidWord::new(3, vec![2, 1, 1, 2])),
        ("s1 -s2 s1 -s2", BraidWord::new(3, vec![1, -2, 1, -2])),
        ("-s1 s2 -s1 s2", BraidWord::new(3, vec![-1, 2, -1, 2])),
        ("s1 s2 s1 -s2", BraidWord::new(3, vec![1, 2, 1, -2])),
        ("s1 -s2 -s2 s1", BraidWord::new(3, vec![1, -2, -2, 1])),
    ] {
        let v = oracle_matrix(&w, 1.0, -1.0);
        println!("{label}: oracle V = {v:?}");
    }
}
