//! Stallings graphs of finitely generated subgroups of a free group.
//!
//! A subgroup given by generators is represented by its folded core graph:
//! start from a bouquet of one loop per generator at the base vertex and
//! identify pairs of edges with the same origin (or terminus) and label
//! until none remain. The result does not depend on the folding order, and
//! after trimming and relabeling from the base it is a canonical invariant
//! of the subgroup.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::Rng;

use crate::freegroup::{FreeGroupWord, Gen};
use crate::word::Word;

/// Folded, trimmed, canonically numbered subgroup graph. Vertex 0 is the
/// base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StallingsGraph {
    vertex_count: usize,
    /// `(source, label, target)`, sorted.
    edges: Vec<(usize, u32, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        // Keep the smaller id as root so the base (0) survives.
        if a < b {
            self.0[b] = a;
        } else if b < a {
            self.0[a] = b;
        }
    }
}

/// Folds the generators in a fixed order.
pub fn fold(generators: &[FreeGroupWord]) -> StallingsGraph {
    fold_impl(generators, None::<&mut rand::rngs::ThreadRng>)
}

/// Folds resolving one randomly chosen conflict at a time.
pub fn fold_shuffled<R: Rng>(generators: &[FreeGroupWord], rng: &mut R) -> StallingsGraph {
    fold_impl(generators, Some(rng))
}

fn fold_impl<R: Rng>(generators: &[FreeGroupWord], mut rng: Option<&mut R>) -> StallingsGraph {
    // Bouquet of petals at vertex 0.
    let mut vertex_count = 1;
    let mut edges: Vec<(usize, u32, usize)> = Vec::new();
    for word in generators {
        let gens = word.gens();
        let mut at = 0;
        for (i, g) in gens.iter().enumerate() {
            let next = if i + 1 == gens.len() {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            if g.inverse {
                edges.push((next, g.index, at));
            } else {
                edges.push((at, g.index, next));
            }
            at = next;
        }
    }

    let mut uf = UnionFind((0..vertex_count).collect());
    loop {
        for e in edges.iter_mut() {
            *e = (uf.find(e.0), e.1, uf.find(e.2));
        }
        edges.sort_unstable();
        edges.dedup();

        let mut conflicts: Vec<(usize, usize)> = Vec::new();
        let mut by_out: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        let mut by_in: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        for &(s, l, t) in &edges {
            if let Some(&other) = by_out.get(&(s, l)) {
                if other != t {
                    conflicts.push((other, t));
                }
            } else {
                by_out.insert((s, l), t);
            }
            if let Some(&other) = by_in.get(&(t, l)) {
                if other != s {
                    conflicts.push((other, s));
                }
            } else {
                by_in.insert((t, l), s);
            }
        }
        if conflicts.is_empty() {
            break;
        }
        match rng.as_deref_mut() {
            Some(rng) => {
                let (a, b) = conflicts[rng.gen_range(0..conflicts.len())];
                uf.union(a, b);
            }
            None => {
                for (a, b) in conflicts {
                    uf.union(a, b);
                }
            }
        }
    }

    let mut vertices: BTreeSet<usize> = edges.iter().flat_map(|e| [e.0, e.2]).collect();
    vertices.insert(0);
    trim(&mut vertices, &mut edges);
    canonical(&vertices, &edges)
}

/// Removes non-base vertices of degree one until none remain.
fn trim(vertices: &mut BTreeSet<usize>, edges: &mut Vec<(usize, u32, usize)>) {
    loop {
        let mut degree: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, 0)).collect();
        for &(s, _, t) in edges.iter() {
            *degree.get_mut(&s).unwrap() += 1;
            *degree.get_mut(&t).unwrap() += 1;
        }
        let hairs: BTreeSet<usize> = degree
            .into_iter()
            .filter(|&(v, d)| v != 0 && d <= 1)
            .map(|(v, _)| v)
            .collect();
        if hairs.is_empty() {
            return;
        }
        edges.retain(|e| !hairs.contains(&e.0) && !hairs.contains(&e.2));
        vertices.retain(|v| !hairs.contains(v));
    }
}

/// A neighbour reached by `(label, backwards)`.
type Step = ((u32, bool), usize);

/// Renumbers vertices in BFS order from the base, visiting neighbours by
/// (label, outgoing before incoming).
fn canonical(vertices: &BTreeSet<usize>, edges: &[(usize, u32, usize)]) -> StallingsGraph {
    let mut adjacency: BTreeMap<usize, Vec<Step>> = BTreeMap::new();
    for &(s, l, t) in edges {
        adjacency.entry(s).or_default().push(((l, false), t));
        adjacency.entry(t).or_default().push(((l, true), s));
    }
    for list in adjacency.values_mut() {
        list.sort_unstable();
    }
    let mut number: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::from([0usize]);
    number.insert(0, 0);
    while let Some(v) = queue.pop_front() {
        for &(_, w) in adjacency.get(&v).into_iter().flatten() {
            if !number.contains_key(&w) {
                number.insert(w, number.len());
                queue.push_back(w);
            }
        }
    }
    debug_assert_eq!(number.len(), vertices.len());
    let mut relabeled: Vec<(usize, u32, usize)> = edges
        .iter()
        .map(|&(s, l, t)| (number[&s], l, number[&t]))
        .collect();
    relabeled.sort_unstable();
    StallingsGraph {
        vertex_count: number.len(),
        edges: relabeled,
    }
}

impl StallingsGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, u32, usize)] {
        &self.edges
    }

    /// `|E| - |V| + 1`.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    fn step(&self, at: usize, g: Gen) -> Option<usize> {
        if g.inverse {
            self.edges
                .iter()
                .find(|&&(_, l, t)| t == at && l == g.index)
                .map(|e| e.0)
        } else {
            self.edges
                .iter()
                .find(|&&(s, l, _)| s == at && l == g.index)
                .map(|e| e.2)
        }
    }

    /// Does the reduced word read a closed path at the base?
    pub fn member(&self, word: &FreeGroupWord) -> bool {
        let mut at = 0;
        for &g in word.gens() {
            match self.step(at, g) {
                Some(next) => at = next,
                None => return false,
            }
        }
        at == 0
    }

    /// One vertex carrying a loop for each of `0..generators`.
    pub fn is_full_rose(&self, generators: u32) -> bool {
        self.vertex_count == 1
            && self.edges.len() == generators as usize
            && self.edges.iter().map(|e| e.1).eq(0..generators)
    }

    pub fn to_dot(&self, names: &[String]) -> String {
        let mut out = String::from("digraph stallings {\n  0 [shape=doublecircle];\n");
        for v in 1..self.vertex_count {
            let _ = writeln!(out, "  {v};");
        }
        for &(s, l, t) in &self.edges {
            let _ = writeln!(out, "  {s} -> {t} [label=\"{}\"];", names[l as usize]);
        }
        out.push_str("}\n");
        out
    }
}

/// Equality of the subgroups generated by two sets.
pub fn subgroup_equals(first: &[FreeGroupWord], second: &[FreeGroupWord]) -> bool {
    fold(first) == fold(second)
}

/// Is the set of positive words a free basis of the free group on
/// `alphabet_size` letters?
///
/// Free groups of finite rank are Hopfian, so a generating set with exactly
/// as many elements as the rank is a basis; we check the count and that the
/// folded graph is the full rose.
pub fn is_basis_of_full_group(words: &[Word], alphabet_size: usize) -> bool {
    let distinct: BTreeSet<&Word> = words.iter().collect();
    if distinct.len() != alphabet_size {
        return false;
    }
    let gens: Vec<FreeGroupWord> = distinct
        .into_iter()
        .map(|w| FreeGroupWord::from_letters(w))
        .collect();
    fold(&gens).is_full_rose(alphabet_size as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn words(ws: &[&str]) -> Vec<FreeGroupWord> {
        ws.iter()
            .map(|w| FreeGroupWord::parse(w, &names()).unwrap())
            .collect()
    }

    #[test]
    fn rose_from_a_and_ab() {
        let g = fold(&words(&["a", "a b"]));
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edges(), &[(0, 0, 0), (0, 1, 0)]);
        assert_eq!(g.rank(), 2);
        assert!(g.member(&words(&["b"])[0]));
    }

    #[test]
    fn trivial_subgroup() {
        let g = fold(&[]);
        assert_eq!(g.vertex_count(), 1);
        assert!(g.edges().is_empty());
        assert_eq!(g.rank(), 0);
        assert!(g.member(&FreeGroupWord::identity()));
    }

    #[test]
    fn square_of_a() {
        let g = fold(&words(&["a a"]));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.rank(), 1);
        let sub = fold(&words(&["a a", "b"]));
        assert!(!sub.member(&words(&["a"])[0]));
        assert!(sub.member(&words(&["a a b a^-1 a^-1"])[0]));
        assert!(!sub.member(&words(&["a b a"])[0]));
    }

    #[test]
    fn conjugate_has_hair_to_base() {
        let g = fold(&words(&["a b a^-1"]));
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.rank(), 1);
        assert!(g.member(&words(&["a b b a^-1"])[0]));
        assert!(!g.member(&words(&["b"])[0]));
    }

    #[test]
    fn equality_and_bases() {
        assert!(subgroup_equals(&words(&["a", "a b"]), &words(&["a", "b"])));
        assert!(!subgroup_equals(&words(&["a a"]), &words(&["a"])));
        let s = words(&["a b a", "b^-1 a"]);
        assert!(subgroup_equals(&s, &s));

        let a = crate::word::Alphabet::new(vec!['a', 'b']).unwrap();
        let pos = |ws: &[&str]| ws.iter().map(|w| a.parse(w).unwrap()).collect::<Vec<_>>();
        assert!(is_basis_of_full_group(&pos(&["a", "ab"]), 2));
        assert!(!is_basis_of_full_group(&pos(&["a", "a"]), 2));
        assert!(is_basis_of_full_group(&pos(&["ba", "baa"]), 2));
        assert!(!is_basis_of_full_group(&pos(&["aa", "b"]), 2));
    }

    #[test]
    fn shuffled_fold_matches() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let gens = words(&["a b a^-1 b", "b b a", "a^-1 b a"]);
        let reference = fold(&gens);
        for _ in 0..20 {
            assert_eq!(fold_shuffled(&gens, &mut rng), reference);
        }
    }
}
