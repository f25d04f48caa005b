//! Brute-force reference implementations used to cross-check the library.
//! They share no code with the algorithms they check beyond word storage.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::Rng;

use crate::error::Result;
use crate::freegroup::{FreeGroupWord, Gen};
use crate::lang::FactorLanguage;
use crate::rauzy::{GraphPath, RauzyGraph};
use crate::word::{Letter, Word};

/// Delayed return words of `u1.u2` read straight off a text: for each pair
/// of consecutive occurrences `i < j` of `u1 u2`, the word between
/// `i + |u1|` and `j + |u1|`.
pub fn delayed_by_scan(text: &[Letter], u1: &[Letter], u2: &[Letter]) -> BTreeSet<Word> {
    let u: Vec<Letter> = u1.iter().chain(u2).copied().collect();
    let mut previous: Option<usize> = None;
    let mut out = BTreeSet::new();
    for i in 0..text.len().saturating_sub(u.len() - 1) {
        if text[i..i + u.len()] == u[..] {
            if let Some(p) = previous {
                out.insert(Word::from(&text[p + u1.len()..i + u1.len()]));
            }
            previous = Some(i);
        }
    }
    out
}

/// Tree test for `G_w` built from `L_{|w|+1}` and `L_{|w|+2}` by filtering,
/// then checked by depth-first search: connected and no back edge.
pub fn extension_is_tree_by_dfs(lang: &FactorLanguage, w: &[Letter]) -> Result<bool> {
    let k = w.len();
    let (mut left, mut right): (Vec<Letter>, Vec<Letter>) = (Vec::new(), Vec::new());
    for x in lang.level(k + 1)? {
        if &x[1..] == w {
            left.push(x[0]);
        }
        if &x[..k] == w {
            right.push(x[k]);
        }
    }
    // Vertices: left letters as 2a, right letters as 2b + 1.
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); 2 * 256];
    for x in lang.level(k + 2)? {
        if &x[1..=k] == w {
            let (a, b) = (2 * usize::from(x[0]), 2 * usize::from(x[k + 1]) + 1);
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    let vertices: Vec<usize> = left
        .iter()
        .map(|&a| 2 * usize::from(a))
        .chain(right.iter().map(|&b| 2 * usize::from(b) + 1))
        .collect();
    let Some(&root) = vertices.first() else {
        return Ok(false);
    };
    let mut seen = HashSet::new();
    let mut stack = vec![(root, usize::MAX)];
    let mut acyclic = true;
    while let Some((v, parent)) = stack.pop() {
        if !seen.insert(v) {
            acyclic = false;
            continue;
        }
        for &x in &adjacency[v] {
            if x != parent {
                stack.push((x, v));
            }
        }
    }
    Ok(acyclic && seen.len() == vertices.len())
}

/// Membership in the subgroup generated by `gens`, decided by enumerating
/// reduced products of at most `max_factors` generators and inverses.
pub fn member_by_enumeration(gens: &[FreeGroupWord], target: &FreeGroupWord, max_factors: usize) -> bool {
    let symmetric: Vec<FreeGroupWord> = gens
        .iter()
        .flat_map(|g| [g.clone(), g.inverse()])
        .collect();
    let mut reached: HashSet<FreeGroupWord> = HashSet::from([FreeGroupWord::identity()]);
    let mut frontier = vec![FreeGroupWord::identity()];
    for _ in 0..max_factors {
        if reached.contains(target) {
            return true;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for s in &symmetric {
                let p = w.mul(s);
                if reached.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    reached.contains(target)
}

/// Is every cancellation between two elements `x, y` of `gens` and their
/// inverses (`y != x^-1`) shorter than half of each? Then a reduced product
/// of `k` factors keeps a letter of every factor, so it has length at least
/// `k`, and [`member_by_enumeration`] with `|w|` factors is exact.
pub fn has_half_cancellation_bound(gens: &[FreeGroupWord]) -> bool {
    let symmetric: Vec<FreeGroupWord> = gens
        .iter()
        .flat_map(|g| [g.clone(), g.inverse()])
        .collect();
    if symmetric.iter().any(FreeGroupWord::is_identity) {
        return false;
    }
    for x in &symmetric {
        for y in &symmetric {
            if *y == x.inverse() {
                continue;
            }
            let cancelled = (x.len() + y.len() - x.mul(y).len()) / 2;
            if 2 * cancelled >= x.len() || 2 * cancelled >= y.len() {
                return false;
            }
        }
    }
    true
}

/// A random presentation of the subgroup generated by `gens`: a few
/// Nielsen moves (inversion, swap, multiplying one generator by another)
/// plus possibly a redundant product.
pub fn scramble<R: Rng>(gens: &[FreeGroupWord], rng: &mut R) -> Vec<FreeGroupWord> {
    let mut out = gens.to_vec();
    for _ in 0..rng.gen_range(0..=4) {
        let i = rng.gen_range(0..out.len());
        match rng.gen_range(0..3) {
            0 => out[i] = out[i].inverse(),
            1 => {
                let j = rng.gen_range(0..out.len());
                out.swap(i, j);
            }
            _ => {
                let j = rng.gen_range(0..out.len());
                if i != j {
                    let factor = if rng.gen_bool(0.5) { out[j].inverse() } else { out[j].clone() };
                    out[i] = if rng.gen_bool(0.5) { out[i].mul(&factor) } else { factor.mul(&out[i]) };
                }
            }
        }
    }
    if rng.gen_bool(0.3) {
        let (i, j) = (rng.gen_range(0..out.len()), rng.gen_range(0..out.len()));
        out.push(out[i].mul(&out[j]));
    }
    out
}

/// A uniformly random freely reduced word of length `len` on `rank`
/// generators.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: u32, len: usize) -> FreeGroupWord {
    let mut gens: Vec<Gen> = Vec::with_capacity(len);
    while gens.len() < len {
        let g = Gen {
            index: rng.gen_range(0..rank),
            inverse: rng.gen_bool(0.5),
        };
        if gens.last() != Some(&g.inv()) {
            gens.push(g);
        }
    }
    FreeGroupWord::reduce(gens)
}

/// Every directed closed walk at `base` with 1 to `max_len` edges.
pub fn closed_walks(graph: &RauzyGraph, base: usize, max_len: usize) -> Vec<GraphPath> {
    let mut out = Vec::new();
    let mut edges = Vec::new();
    walk(graph, base, base, max_len, &mut edges, &mut out);
    out
}

fn walk(
    graph: &RauzyGraph,
    base: usize,
    at: usize,
    budget: usize,
    edges: &mut Vec<usize>,
    out: &mut Vec<GraphPath>,
) {
    if budget == 0 {
        return;
    }
    for &e in graph.out_edges(at) {
        edges.push(e);
        let to = graph.target(e);
        if to == base {
            out.push(GraphPath::new(graph, base, edges.clone()).expect("walk composes"));
        }
        walk(graph, base, to, budget - 1, edges, out);
        edges.pop();
    }
}

/// A random walk from `base` closed up by a shortest directed path back,
/// of total length at most `max_len`.
pub fn random_loop<R: Rng>(graph: &RauzyGraph, base: usize, max_len: usize, rng: &mut R) -> GraphPath {
    loop {
        let steps = rng.gen_range(1..=max_len);
        let mut edges = Vec::new();
        let mut at = base;
        for _ in 0..steps {
            let out = graph.out_edges(at);
            let e = out[rng.gen_range(0..out.len())];
            edges.push(e);
            at = graph.target(e);
        }
        if let Some(back) = shortest_path(graph, at, base) {
            if edges.len() + back.len() <= max_len {
                edges.extend(back);
                return GraphPath::new(graph, base, edges).expect("walk composes");
            }
        }
    }
}

fn shortest_path(graph: &RauzyGraph, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut via: Vec<Option<usize>> = vec![None; graph.vertices().len()];
    let mut seen = vec![false; graph.vertices().len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = Vec::new();
            let mut at = to;
            while let Some(e) = via[at] {
                path.push(e);
                at = graph.source(e);
            }
            path.reverse();
            return Some(path);
        }
        for &e in graph.out_edges(v) {
            let w = graph.target(e);
            if !seen[w] {
                seen[w] = true;
                via[w] = Some(e);
                queue.push_back(w);
            }
        }
    }
    None
}
