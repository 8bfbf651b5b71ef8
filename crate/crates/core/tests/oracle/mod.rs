//! Independent reference computations: dense elimination, brute-force
//! ideals and centres in the path algebra, and Hochschild cohomology of
//! quantum exterior algebras from the normalized bar complex.

#![allow(dead_code)]

use std::collections::HashMap;

use koszul_core::{Field, Presentation, Scalar};

/// Rank of a list of dense rows by plain Gaussian elimination.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        let pivot: Vec<Scalar> = m[r].iter().map(|x| x * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        m[r] = pivot;
        r += 1;
    }
    r
}

/// Paths as arrow sequences, enumerated directly from the arrow list.
pub struct PathAlgebra {
    pub field: Field,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub vertices: usize,
    /// Relations as `(coefficient, arrow sequence)` terms.
    pub relations: Vec<Vec<(Scalar, Vec<usize>)>>,
}

impl PathAlgebra {
    pub fn new(p: &Presentation) -> Self {
        let q = &p.quiver;
        PathAlgebra {
            field: p.field,
            sources: q.arrows().iter().map(|a| a.source).collect(),
            targets: q.arrows().iter().map(|a| a.target).collect(),
            vertices: q.num_vertices(),
            relations: p
                .relations
                .iter()
                .map(|r| r.terms().map(|(path, c)| (c.clone(), path.arrows.clone())).collect())
                .collect(),
        }
    }

    /// All composable arrow words of length `d`, with their endpoints.
    pub fn paths(&self, d: usize) -> Vec<(Vec<usize>, usize, usize)> {
        if d == 0 {
            return (0..self.vertices).map(|v| (Vec::new(), v, v)).collect();
        }
        let mut out: Vec<(Vec<usize>, usize, usize)> = (0..self.sources.len())
            .map(|a| (vec![a], self.sources[a], self.targets[a]))
            .collect();
        for _ in 1..d {
            let mut next = Vec::new();
            for (w, s, t) in &out {
                for a in 0..self.sources.len() {
                    if self.sources[a] == *t {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push((w2, *s, self.targets[a]));
                    }
                }
            }
            out = next;
        }
        out
    }

    fn index(&self, d: usize) -> HashMap<Vec<usize>, usize> {
        self.paths(d)
            .into_iter()
            .enumerate()
            .map(|(i, (w, _, _))| (w, i))
            .collect()
    }

    /// Spanning rows of `I_d`: every `p · r · q` with `r` a relation.
    pub fn ideal_rows(&self, d: usize) -> Vec<Vec<Scalar>> {
        if d < 2 {
            return Vec::new();
        }
        let index = self.index(d);
        let mut rows = Vec::new();
        for left in 0..=d - 2 {
            for (p, _, _) in self.paths(left) {
                for (q, _, _) in self.paths(d - 2 - left) {
                    for rel in &self.relations {
                        let mut row = vec![self.field.zero(); index.len()];
                        for (c, w) in rel {
                            let word: Vec<usize> = p.iter().chain(w).chain(&q).copied().collect();
                            if let Some(&k) = index.get(&word) {
                                row[k] += c;
                            }
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        rows
    }

    /// `dim Λ_d`.
    pub fn dim(&self, d: usize) -> usize {
        self.paths(d).len() - rank(&self.ideal_rows(d))
    }

    /// `dim Z(Λ)_w`: classes `z` of paths of length `w` commuting with all
    /// vertices and arrows modulo the ideal.
    pub fn centre_dim(&self, w: usize) -> usize {
        let src = self.paths(w);
        let here = self.index(w);
        let above = self.index(w + 1);
        let ideal_w = self.ideal_rows(w);
        let ideal_up = self.ideal_rows(w + 1);
        let n_arrows = self.sources.len();
        let width = n_arrows * above.len() + self.vertices * here.len();
        let zero = self.field.zero();
        let one = self.field.one();
        let mut images = Vec::new();
        for (p, s, t) in &src {
            let mut row = vec![zero.clone(); width];
            for a in 0..n_arrows {
                let base = a * above.len();
                if self.sources[a] == *t {
                    let word: Vec<usize> = p.iter().copied().chain([a]).collect();
                    row[base + above[&word]] += &one;
                }
                if self.targets[a] == *s {
                    let word: Vec<usize> = [a].into_iter().chain(p.iter().copied()).collect();
                    row[base + above[&word]] -= &one;
                }
            }
            if s != t {
                for u in [s, t] {
                    let base = n_arrows * above.len() + u * here.len();
                    let sign = if u == s { one.clone() } else { -&one };
                    row[base + here[p]] += &sign;
                }
            }
            images.push(row);
        }
        let mut relations = Vec::new();
        for a in 0..n_arrows {
            for r in &ideal_up {
                let mut row = vec![zero.clone(); width];
                row[a * above.len()..(a + 1) * above.len()].clone_from_slice(r);
                relations.push(row);
            }
        }
        for u in 0..self.vertices {
            for r in &ideal_w {
                let base = n_arrows * above.len() + u * here.len();
                let mut row = vec![zero.clone(); width];
                row[base..base + here.len()].clone_from_slice(r);
                relations.push(row);
            }
        }
        let rank_rel = rank(&relations);
        let mut all = images;
        all.extend(relations);
        let rank_map = rank(&all) - rank_rel;
        let solutions = src.len() - rank_map;
        solutions - rank(&ideal_w)
    }
}

const P: u64 = 1_000_003;

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % P, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

fn neg_mod(a: u64) -> u64 {
    (P - a % P) % P
}

fn rank_mod(rows: Vec<HashMap<usize, u64>>) -> usize {
    let mut pivots: HashMap<usize, HashMap<usize, u64>> = HashMap::new();
    let mut r = 0;
    for mut row in rows {
        while let Some(&col) = row.keys().min() {
            match pivots.get(&col) {
                Some(prow) => {
                    let f = row[&col];
                    for (&k, &v) in prow {
                        let nv = (row.get(&k).copied().unwrap_or(0) + P - f * v % P) % P;
                        if nv == 0 {
                            row.remove(&k);
                        } else {
                            row.insert(k, nv);
                        }
                    }
                }
                None => {
                    let f = inv_mod(row[&col]);
                    pivots.insert(col, row.iter().map(|(&k, &v)| (k, v * f % P)).collect());
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

/// `dim HH^n` for `n < n_max` of `k⟨x,y,z⟩/(x², y², z², xy + a·yx,
/// xz + b·zx, yz + c·zy)` over `F_1000003`, from the normalized bar
/// complex `Hom(Λ̄^{⊗n}, Λ)` graded by internal degree.
pub fn quantum_exterior_hh(a: u64, b: u64, c: u64, n_max: usize) -> Vec<usize> {
    let basis: Vec<Vec<usize>> = vec![
        vec![],
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![0, 2],
        vec![1, 2],
        vec![0, 1, 2],
    ];
    let position: HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    // Swapping an adjacent pair (j, i) with j > i multiplies by q(j, i).
    let q = |j: usize, i: usize| -> u64 {
        match (j, i) {
            (1, 0) => neg_mod(inv_mod(a)),
            (2, 0) => neg_mod(inv_mod(b)),
            (2, 1) => neg_mod(inv_mod(c)),
            _ => unreachable!(),
        }
    };
    let mut table: HashMap<(usize, usize), (usize, u64)> = HashMap::new();
    for (i, m1) in basis.iter().enumerate() {
        for (j, m2) in basis.iter().enumerate() {
            let mut seq: Vec<usize> = m1.iter().chain(m2).copied().collect();
            let mut sorted = seq.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() < seq.len() {
                continue;
            }
            let mut coeff = 1u64;
            let mut changed = true;
            while changed {
                changed = false;
                for t in 0..seq.len().saturating_sub(1) {
                    if seq[t] > seq[t + 1] {
                        coeff = coeff * q(seq[t], seq[t + 1]) % P;
                        seq.swap(t, t + 1);
                        changed = true;
                    }
                }
            }
            table.insert((i, j), (position[&seq], coeff));
        }
    }
    let deg: Vec<usize> = basis.iter().map(Vec::len).collect();
    let bar: Vec<usize> = (1..basis.len()).collect();

    type Key = (Vec<usize>, usize);
    let cochains = |n: usize| -> HashMap<isize, Vec<Key>> {
        let mut groups: HashMap<isize, Vec<Key>> = HashMap::new();
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    bar.iter().map(move |&x| {
                        let mut t2 = t.clone();
                        t2.push(x);
                        t2
                    })
                })
                .collect();
        }
        for tup in tuples {
            let d: usize = tup.iter().map(|&t| deg[t]).sum();
            for (o, &e) in deg.iter().enumerate().take(basis.len()) {
                groups
                    .entry(e as isize - d as isize)
                    .or_default()
                    .push((tup.clone(), o));
            }
        }
        groups
    };
    let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { P - 1 };
    let delta_rank = |n: usize| -> usize {
        let src = cochains(n);
        let tgt = cochains(n + 1);
        let mut total = 0;
        for (g, cols) in &src {
            let tindex: HashMap<&Key, usize> = tgt
                .get(g)
                .map(|v| v.iter().enumerate().map(|(k, key)| (key, k)).collect())
                .unwrap_or_default();
            let mut rows = Vec::new();
            for (tup, o) in cols {
                let mut img: HashMap<usize, u64> = HashMap::new();
                let mut add = |key: Key, v: u64| {
                    if let Some(&k) = tindex.get(&key) {
                        let e = img.entry(k).or_insert(0);
                        *e = (*e + v) % P;
                    }
                };
                for &a1 in &bar {
                    if let Some(&(r, v)) = table.get(&(a1, *o)) {
                        let mut t2 = vec![a1];
                        t2.extend(tup);
                        add((t2, r), v);
                    }
                    if let Some(&(r, v)) = table.get(&(*o, a1)) {
                        let mut t2 = tup.clone();
                        t2.push(a1);
                        add((t2, r), v * sign(n + 1) % P);
                    }
                }
                for i in 0..n {
                    for &x in &bar {
                        for &y in &bar {
                            if let Some(&(r, v)) = table.get(&(x, y)) {
                                if r == tup[i] {
                                    let mut t2 = tup[..i].to_vec();
                                    t2.extend([x, y]);
                                    t2.extend(&tup[i + 1..]);
                                    add((t2, *o), v * sign(i + 1) % P);
                                }
                            }
                        }
                    }
                }
                img.retain(|_, v| *v != 0);
                rows.push(img);
            }
            total += rank_mod(rows);
        }
        total
    };
    let ranks: Vec<usize> = (0..n_max).map(delta_rank).collect();
    (0..n_max)
        .map(|n| {
            let dim = bar.len().pow(n as u32) * basis.len();
            dim - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }
        })
        .collect()
}

/// A presentation from the shared fixture directory, truncated at `maxdeg`.
pub fn fixture(name: &str, maxdeg: usize) -> Presentation {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Presentation::parse(&text).unwrap().with_maxdeg(maxdeg)
}

/// Every Koszul fixture.
pub const KOSZUL_FIXTURES: &[&str] = &[
    "ex51.kz",
    "ex52.kz",
    "ex53.kz",
    "ex53_c2.kz",
    "ex53_cm1.kz",
    "xy.kz",
    "a3.kz",
    "kronecker.kz",
    "cycle2.kz",
];
