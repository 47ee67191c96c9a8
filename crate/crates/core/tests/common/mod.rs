//! Independent oracles: plain subset sums and boundary ranks over a prime field,
//! written without the library's polynomial or Smith normal form code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use semimatroid_dt::canonical;
use semimatroid_dt::complex::Face;
use semimatroid_dt::generators::random_semimatroid_mixed;
use semimatroid_dt::polynomial::BivariatePolynomial;
use semimatroid_dt::semimatroid::{Semimatroid, Target};

pub type Terms = BTreeMap<(u32, u32), i64>;

const P: i64 = 1_000_000_007;

/// The canonical instances followed by `random` seeded ones with 1 to 8 elements.
pub fn instances(random: u64) -> Vec<(String, Semimatroid)> {
    let mut out: Vec<(String, Semimatroid)> = canonical::all().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    for seed in 0..random {
        let n = 1 + (seed % 8) as usize;
        out.push((format!("random seed {seed} n {n}"), random_semimatroid_mixed(seed, n).unwrap()));
    }
    out
}

pub fn terms(p: &BivariatePolynomial) -> Terms {
    p.terms().filter(|(_, c)| *c != 0).collect()
}

fn add(t: &mut Terms, k: (u32, u32), c: i64) {
    let e = t.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        t.remove(&k);
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `Σ_σ (x−1)^{r_C − r(σ)} (y−1)^{|σ| − r(σ)}` expanded, keyed by `(x, y)` exponents.
pub fn tutte_oracle(s: &Semimatroid) -> Terms {
    let rc = s.ranks().map(|(_, r)| r).max().unwrap_or(0) as u32;
    let mut t = Terms::new();
    for (f, r) in s.ranks() {
        let a = rc - r as u32;
        let b = f.len() as u32 - r as u32;
        for i in 0..=a {
            for j in 0..=b {
                let sign = if (a - i + b - j) % 2 == 0 { 1 } else { -1 };
                add(&mut t, (i, j), sign * binomial(a, i) * binomial(b, j));
            }
        }
    }
    t
}

pub fn tutte_at_origin(s: &Semimatroid) -> i64 {
    tutte_oracle(s).get(&(0, 0)).copied().unwrap_or(0)
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let factor = rows[r][c] * inv % P;
                for k in c..cols {
                    rows[r][k] = (rows[r][k] - factor * rows[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    b = b.rem_euclid(P);
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Reduced relative Betti numbers over GF(p), keyed by degree `|σ| − 1`.
pub fn betti_oracle(a: &[Face], b: &[Face]) -> BTreeMap<i32, usize> {
    let cells: Vec<Face> = a.iter().copied().filter(|f| !b.contains(f)).collect();
    let top = a.iter().map(|f| f.len()).max().unwrap_or(0);
    let by_size: Vec<Vec<Face>> =
        (0..=top + 1).map(|k| cells.iter().copied().filter(|f| f.len() == k).collect()).collect();
    // rank of the boundary from size k to size k - 1
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > top || by_size[k].is_empty() || by_size[k - 1].is_empty() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = by_size[k - 1]
            .iter()
            .map(|&lo| {
                by_size[k]
                    .iter()
                    .map(|&hi| {
                        if !lo.is_subset(hi) {
                            return 0;
                        }
                        let gone = hi.difference(lo).min_element().unwrap();
                        let pos = hi.iter().take_while(|&v| v < gone).count();
                        if pos % 2 == 0 {
                            1
                        } else {
                            P - 1
                        }
                    })
                    .collect()
            })
            .collect();
        rank_mod_p(rows)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(boundary_rank).collect();
    (0..=top).map(|k| (k as i32 - 1, by_size[k].len() - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))).collect()
}

pub fn target_value(s: &Semimatroid, target: Target, f: Face) -> usize {
    let r = s.rank_of(f).unwrap();
    match target {
        Target::Rank => r,
        Target::Nullity => f.len() - r,
        Target::Constant => 0,
    }
}

/// Per value `p`, the Betti numbers of the sublevel pair, keyed by degree.
pub fn sublevel_oracle(s: &Semimatroid, target: Target) -> BTreeMap<usize, BTreeMap<i32, usize>> {
    let faces: Vec<Face> = s.complex().faces().collect();
    let values: std::collections::BTreeSet<usize> = faces.iter().map(|&f| target_value(s, target, f)).collect();
    values
        .into_iter()
        .map(|p| {
            let le: Vec<Face> = faces.iter().copied().filter(|&f| target_value(s, target, f) <= p).collect();
            let lt: Vec<Face> = faces.iter().copied().filter(|&f| target_value(s, target, f) < p).collect();
            (p, betti_oracle(&le, &lt))
        })
        .collect()
}

/// `Σ_p Σ_d β̃_d q^{d+1} x^p`, keyed by `(q, x)` exponents.
pub fn poincare_oracle(s: &Semimatroid, target: Target) -> Terms {
    let mut t = Terms::new();
    for (p, betti) in sublevel_oracle(s, target) {
        for (d, b) in betti {
            if b > 0 {
                add(&mut t, ((d + 1) as u32, p as u32), b as i64);
            }
        }
    }
    t
}

/// `q^{r_C} T((q+1)/q, 0)`, keyed by the `q` exponent.
pub fn bc_f_oracle(s: &Semimatroid) -> BTreeMap<u32, i64> {
    let rc = s.rank() as u32;
    let mut out = BTreeMap::new();
    for (&(i, j), &c) in &tutte_oracle(s) {
        if j != 0 {
            continue;
        }
        // c * (q+1)^i * q^{rc-i}
        for k in 0..=i {
            *out.entry(k + rc - i).or_insert(0) += c * binomial(i, k);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}
