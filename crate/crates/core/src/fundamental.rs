//! Spanning-tree bases of the fundamental group of an even-order Rauzy graph
//! at a base vertex, the expansion of loops in that basis, and the maps
//! induced between levels by projection.

use std::collections::VecDeque;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::freegroup::{FreeGroupWord, Gen};
use crate::lang::FactorLanguage;
use crate::rauzy::{project_word, GraphPath, RauzyGraph};
use crate::word::Letter;

/// An edge traversed forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedEdge {
    pub edge: usize,
    pub inverse: bool,
}

/// Element of the fundamental group written over the generators `g_s`,
/// `s` outside the tree; generator `i` is the `i`-th such edge.
pub type GroupoidWord = FreeGroupWord;

#[derive(Clone, Debug)]
pub struct SpanningTreeBasis {
    graph: RauzyGraph,
    base: usize,
    in_tree: Vec<bool>,
    /// Tree path from the base to each vertex.
    delta: Vec<Vec<SignedEdge>>,
    generator_of: Vec<Option<u32>>,
    generators: Vec<usize>,
}

impl SpanningTreeBasis {
    /// BFS spanning tree from `base`. Outgoing edges are followed first, so
    /// on a strongly connected graph every tree path from the base is a
    /// directed path; incoming edges are only used to reach what is left.
    pub fn new(graph: &RauzyGraph, base: &[Letter]) -> Result<Self> {
        let base_id = graph
            .vertex_id(base)
            .ok_or_else(|| Error::NotAFactor(graph.render(base)))?;
        let n = graph.vertices().len();
        let mut delta: Vec<Option<Vec<SignedEdge>>> = vec![None; n];
        let mut in_tree = vec![false; graph.edges().len()];
        delta[base_id] = Some(Vec::new());
        let mut order = vec![base_id];

        let mut queue = VecDeque::from([base_id]);
        while let Some(v) = queue.pop_front() {
            for &e in graph.out_edges(v) {
                let w = graph.target(e);
                if delta[w].is_none() {
                    let mut path = delta[v].clone().unwrap();
                    path.push(SignedEdge { edge: e, inverse: false });
                    delta[w] = Some(path);
                    in_tree[e] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }

        if order.len() < n {
            let mut queue: VecDeque<usize> = order.iter().copied().collect();
            while let Some(v) = queue.pop_front() {
                let mut incident: Vec<(usize, bool)> = graph
                    .out_edges(v)
                    .iter()
                    .map(|&e| (e, false))
                    .chain(graph.in_edges(v).iter().map(|&e| (e, true)))
                    .collect();
                incident.sort_unstable();
                for (e, backwards) in incident {
                    let w = if backwards { graph.source(e) } else { graph.target(e) };
                    if delta[w].is_none() {
                        let mut path = delta[v].clone().unwrap();
                        path.push(SignedEdge {
                            edge: e,
                            inverse: backwards,
                        });
                        delta[w] = Some(path);
                        in_tree[e] = true;
                        order.push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        if order.len() < n {
            return Err(Error::Disconnected);
        }

        let generators: Vec<usize> = (0..graph.edges().len()).filter(|&e| !in_tree[e]).collect();
        let mut generator_of = vec![None; graph.edges().len()];
        for (i, &e) in generators.iter().enumerate() {
            generator_of[e] = Some(i as u32);
        }
        Ok(SpanningTreeBasis {
            graph: graph.clone(),
            base: base_id,
            in_tree,
            delta: delta.into_iter().map(Option::unwrap).collect(),
            generator_of,
            generators,
        })
    }

    pub fn graph(&self) -> &RauzyGraph {
        &self.graph
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn base_word(&self) -> &[Letter] {
        &self.graph.vertices()[self.base]
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.in_tree[edge]
    }

    /// Edges outside the tree, in lexicographic order; edge `i` of this list
    /// is generator `i`.
    pub fn generator_edges(&self) -> &[usize] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Generators are named by their edge words.
    pub fn generator_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|&e| self.graph.render(&self.graph.edges()[e]))
            .collect()
    }

    /// Tree path from the base to `vertex`.
    pub fn delta(&self, vertex: usize) -> &[SignedEdge] {
        &self.delta[vertex]
    }

    /// Tree path from `vertex` back to the base.
    pub fn gamma(&self, vertex: usize) -> Vec<SignedEdge> {
        self.delta[vertex]
            .iter()
            .rev()
            .map(|s| SignedEdge {
                edge: s.edge,
                inverse: !s.inverse,
            })
            .collect()
    }

    /// The loop `δ_{α(s)} · s · γ_{ω(s)}` defining generator `index`.
    pub fn defining_loop(&self, index: u32) -> Vec<SignedEdge> {
        let s = self.generators[index as usize];
        let mut path = self.delta[self.graph.source(s)].clone();
        path.push(SignedEdge { edge: s, inverse: false });
        path.extend(self.gamma(self.graph.target(s)));
        path
    }

    /// `g_s` for an edge outside the tree, the identity for a tree edge.
    pub fn class_of_edge(&self, edge: &[Letter]) -> Result<GroupoidWord> {
        let id = self
            .graph
            .edge_id(edge)
            .ok_or_else(|| Error::UnknownEdge(self.graph.render(edge)))?;
        Ok(self.class_of_id(id))
    }

    fn class_of_id(&self, edge: usize) -> GroupoidWord {
        match self.generator_of[edge] {
            Some(i) => FreeGroupWord::generator(i),
            None => FreeGroupWord::identity(),
        }
    }

    /// Image of a loop at the base: the product of `g_s` over its edges
    /// outside the tree.
    pub fn expand_loop(&self, path: &GraphPath) -> Result<GroupoidWord> {
        if path.start() != self.base || path.end(&self.graph) != self.base {
            return Err(Error::NotALoop);
        }
        Ok(self.expand_signed(
            &path
                .edges()
                .iter()
                .map(|&edge| SignedEdge { edge, inverse: false })
                .collect::<Vec<_>>(),
        ))
    }

    /// Image of a path of the free groupoid (edges and formal inverses).
    pub fn expand_signed(&self, path: &[SignedEdge]) -> GroupoidWord {
        FreeGroupWord::reduce(path.iter().filter_map(|s| {
            self.generator_of[s.edge].map(|index| Gen {
                index,
                inverse: s.inverse,
            })
        }))
    }

    fn check_signed_loop(&self, path: &[SignedEdge]) -> bool {
        let mut at = self.base;
        for s in path {
            let (from, to) = if s.inverse {
                (self.graph.target(s.edge), self.graph.source(s.edge))
            } else {
                (self.graph.source(s.edge), self.graph.target(s.edge))
            };
            if from != at {
                return false;
            }
            at = to;
        }
        at == self.base
    }
}

/// Homomorphism between the fundamental groups of two levels, given on the
/// generators of the upper level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingMap {
    pub from_order: usize,
    pub to_order: usize,
    pub source_names: Vec<String>,
    pub target_names: Vec<String>,
    pub images: Vec<GroupoidWord>,
}

/// The map induced by projecting `upper` (order `2m`) onto `lower` (order
/// `2n`, `n <= m`). The base of `lower` must be the projection of the base
/// of `upper`.
pub fn connecting_map(upper: &SpanningTreeBasis, lower: &SpanningTreeBasis) -> Result<ConnectingMap> {
    let (from, to) = (upper.graph.order(), lower.graph.order());
    if from % 2 != 0 || to % 2 != 0 || to > from {
        return Err(Error::OrderMismatch { from, to });
    }
    let expected = project_word(upper.base_word(), from, to);
    if expected.as_slice() != lower.base_word() {
        return Err(Error::BaseMismatch {
            expected: upper.graph.render(&expected),
            found: lower.graph.render(lower.base_word()),
        });
    }
    let images = (0..upper.rank() as u32)
        .map(|i| {
            let projected = upper
                .defining_loop(i)
                .into_iter()
                .map(|s| {
                    let word = project_word(&upper.graph.edges()[s.edge], from, to);
                    lower
                        .graph
                        .edge_id(&word)
                        .map(|edge| SignedEdge {
                            edge,
                            inverse: s.inverse,
                        })
                        .ok_or_else(|| Error::UnknownEdge(lower.graph.render(&word)))
                })
                .collect::<Result<Vec<_>>>()?;
            if !lower.check_signed_loop(&projected) {
                return Err(Error::NotALoop);
            }
            Ok(lower.expand_signed(&projected))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConnectingMap {
        from_order: from,
        to_order: to,
        source_names: upper.generator_names(),
        target_names: lower.generator_names(),
        images,
    })
}

impl ConnectingMap {
    pub fn apply(&self, word: &GroupoidWord) -> GroupoidWord {
        word.substitute(&self.images)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ConnectingMap) -> Result<ConnectingMap> {
        if self.to_order != next.from_order {
            return Err(Error::OrderMismatch {
                from: self.to_order,
                to: next.from_order,
            });
        }
        Ok(ConnectingMap {
            from_order: self.from_order,
            to_order: next.to_order,
            source_names: self.source_names.clone(),
            target_names: next.target_names.clone(),
            images: self.images.iter().map(|w| next.apply(w)).collect(),
        })
    }

    /// Exponent sums: rows are target generators, columns source generators.
    pub fn abelianization(&self) -> Vec<Vec<i64>> {
        (0..self.target_names.len() as u32)
            .map(|t| self.images.iter().map(|w| w.exponent_sum(t)).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: serde_json::Map<String, serde_json::Value> = self
            .source_names
            .iter()
            .zip(&self.images)
            .map(|(name, image)| (name.clone(), image.render(&self.target_names).into()))
            .collect();
        serde_json::json!({
            "from_order": self.from_order,
            "to_order": self.to_order,
            "images": table,
        })
    }
}

/// Exponent-sum matrix of a connecting map.
pub fn abelianization_matrix(map: &ConnectingMap) -> Vec<Vec<i64>> {
    map.abelianization()
}

/// `(n, |E| - |V| + 1)` for `Σ_{2n}`.
pub fn rank_profile(lang: &FactorLanguage, range: RangeInclusive<usize>) -> Result<Vec<(usize, usize)>> {
    range
        .map(|n| {
            let g = RauzyGraph::build(lang, 2 * n)?;
            Ok((n, g.cycle_rank()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{Source, Substitution};

    fn fib(h: usize) -> FactorLanguage {
        let sub = Substitution::from_pairs(&[('a', "ab"), ('b', "a")]).unwrap();
        FactorLanguage::build(&Source::Substitution(sub), h).unwrap()
    }

    fn edge_names(stb: &SpanningTreeBasis, ids: &[usize]) -> Vec<String> {
        ids.iter()
            .map(|&e| stb.graph().render(&stb.graph().edges()[e]))
            .collect()
    }

    #[test]
    fn fibonacci_tree() {
        let lang = fib(6);
        let g = RauzyGraph::build(&lang, 2).unwrap();
        let stb = SpanningTreeBasis::new(&g, &lang.parse("ab").unwrap()).unwrap();
        assert_eq!(edge_names(&stb, &stb.tree_edges()), ["aba", "baa"]);
        assert_eq!(edge_names(&stb, stb.generator_edges()), ["aab", "bab"]);
        assert_eq!(stb.rank(), 2);

        let p = |s: &str| lang.parse(s).unwrap();
        assert!(stb.class_of_edge(&p("aba")).unwrap().is_identity());
        assert_eq!(stb.class_of_edge(&p("aab")).unwrap(), FreeGroupWord::generator(0));
        assert_eq!(stb.class_of_edge(&p("bab")).unwrap(), FreeGroupWord::generator(1));
        assert!(matches!(
            stb.class_of_edge(&p("bba")),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn gamma_inverts_delta() {
        let lang = fib(8);
        let g = RauzyGraph::build(&lang, 4).unwrap();
        let stb = SpanningTreeBasis::new(&g, &lang.parse("abaa").unwrap()).unwrap();
        for v in 0..g.vertices().len() {
            let mut there_and_back = stb.delta(v).to_vec();
            there_and_back.extend(stb.gamma(v));
            assert!(stb.check_signed_loop(&there_and_back));
            assert!(stb.expand_signed(&there_and_back).is_identity());
        }
        assert_eq!(stb.tree_edges().len(), g.vertices().len() - 1);
    }

    #[test]
    fn expanding_loops() {
        let lang = fib(6);
        let g = RauzyGraph::build(&lang, 2).unwrap();
        let stb = SpanningTreeBasis::new(&g, &lang.parse("ab").unwrap()).unwrap();
        let e = |s: &str| g.edge_id(&lang.parse(s).unwrap()).unwrap();
        let base = stb.base();
        let lp = GraphPath::new(&g, base, vec![e("aba"), e("bab")]).unwrap();
        assert_eq!(stb.expand_loop(&lp).unwrap(), FreeGroupWord::generator(1));
        let not_loop = GraphPath::new(&g, base, vec![e("aba")]).unwrap();
        assert_eq!(stb.expand_loop(&not_loop), Err(Error::NotALoop));
        assert!(stb.expand_loop(&GraphPath::empty(base)).unwrap().is_identity());
    }

    #[test]
    fn rose_and_two_cycle() {
        let periodic = FactorLanguage::build(&Source::periodic("ab").unwrap(), 4).unwrap();
        let g = RauzyGraph::build(&periodic, 1).unwrap();
        let stb = SpanningTreeBasis::new(&g, &periodic.parse("a").unwrap()).unwrap();
        assert_eq!(edge_names(&stb, &stb.tree_edges()), ["ab"]);
        assert_eq!(edge_names(&stb, stb.generator_edges()), ["ba"]);

        let a = crate::word::Alphabet::new(vec!['x', 'y', 'z']).unwrap();
        let rose = RauzyGraph::from_parts(
            a.clone(),
            1,
            vec![a.parse("x").unwrap()],
            vec![a.parse("xx").unwrap()],
        )
        .unwrap();
        let stb = SpanningTreeBasis::new(&rose, &a.parse("x").unwrap()).unwrap();
        assert!(stb.tree_edges().is_empty());
        assert_eq!(stb.rank(), 1);
    }

    #[test]
    fn disconnected_graph() {
        let a = crate::word::Alphabet::new(vec!['a', 'b']).unwrap();
        let g = RauzyGraph::from_parts(
            a.clone(),
            1,
            vec![a.parse("a").unwrap(), a.parse("b").unwrap()],
            vec![a.parse("aa").unwrap()],
        )
        .unwrap();
        assert_eq!(
            SpanningTreeBasis::new(&g, &a.parse("a").unwrap()).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn identity_connecting_map() {
        let lang = fib(8);
        let g = RauzyGraph::build(&lang, 4).unwrap();
        let stb = SpanningTreeBasis::new(&g, &lang.parse("abaa").unwrap()).unwrap();
        let map = connecting_map(&stb, &stb).unwrap();
        for (i, image) in map.images.iter().enumerate() {
            assert_eq!(*image, FreeGroupWord::generator(i as u32));
        }
        let m = abelianization_matrix(&map);
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, i64::from(i == j));
            }
        }
    }

    #[test]
    fn base_mismatch_is_refused() {
        let lang = fib(8);
        let g4 = RauzyGraph::build(&lang, 4).unwrap();
        let g2 = RauzyGraph::build(&lang, 2).unwrap();
        let upper = SpanningTreeBasis::new(&g4, &lang.parse("abaa").unwrap()).unwrap();
        let lower = SpanningTreeBasis::new(&g2, &lang.parse("ab").unwrap()).unwrap();
        assert!(matches!(
            connecting_map(&upper, &lower),
            Err(Error::BaseMismatch { .. })
        ));
        assert!(matches!(
            connecting_map(&lower, &upper),
            Err(Error::OrderMismatch { from: 2, to: 4 })
        ));
    }

    #[test]
    fn fibonacci_ranks() {
        let lang = fib(9);
        let profile = rank_profile(&lang, 1..=4).unwrap();
        assert_eq!(profile, vec![(1, 2), (2, 2), (3, 2), (4, 2)]);
    }
}
