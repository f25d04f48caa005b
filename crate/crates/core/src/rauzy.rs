//! Rauzy graphs `Σ_n`, their central labeling and the projections between
//! even orders.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lang::FactorLanguage;
use crate::word::{Alphabet, Letter, Word};

/// Rauzy graph of order `n`: vertices are `L_n`, edges are `L_{n+1}`, the
/// edge `a_1..a_{n+1}` runs from its prefix to its suffix of length `n`.
#[derive(Clone, Debug)]
pub struct RauzyGraph {
    alphabet: Alphabet,
    order: usize,
    vertices: Vec<Word>,
    edges: Vec<Word>,
    vertex_index: HashMap<Word, usize>,
    edge_index: HashMap<Word, usize>,
    source: Vec<usize>,
    target: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

/// A directed path, stored as edge ids plus its start vertex so that empty
/// paths keep their endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphPath {
    start: usize,
    edges: Vec<usize>,
}

impl RauzyGraph {
    pub fn build(lang: &FactorLanguage, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("Rauzy graph order must be positive".into()));
        }
        lang.check_len(order + 1)?;
        Self::from_parts(
            lang.alphabet().clone(),
            order,
            lang.level(order)?.to_vec(),
            lang.level(order + 1)?.to_vec(),
        )
    }

    /// Builds a graph from explicit vertex and edge words, checking that the
    /// prefix and suffix of every edge are vertices.
    pub fn from_parts(
        alphabet: Alphabet,
        order: usize,
        mut vertices: Vec<Word>,
        mut edges: Vec<Word>,
    ) -> Result<Self> {
        vertices.sort();
        vertices.dedup();
        edges.sort();
        edges.dedup();
        if vertices.iter().any(|v| v.len() != order) || edges.iter().any(|e| e.len() != order + 1)
        {
            return Err(Error::InvalidInput("word lengths do not match the order".into()));
        }
        let vertex_index: HashMap<Word, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let edge_index = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut source = Vec::with_capacity(edges.len());
        let mut target = Vec::with_capacity(edges.len());
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            let lookup = |w: &[Letter]| {
                vertex_index.get(w).copied().ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "edge '{}' has no vertex '{}'",
                        alphabet.render(e),
                        alphabet.render(w)
                    ))
                })
            };
            let s = lookup(&e[..order])?;
            let t = lookup(&e[1..])?;
            source.push(s);
            target.push(t);
            out_edges[s].push(i);
            in_edges[t].push(i);
        }
        Ok(RauzyGraph {
            alphabet,
            order,
            vertices,
            edges,
            vertex_index,
            edge_index,
            source,
            target,
            out_edges,
            in_edges,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Word] {
        &self.edges
    }

    pub fn vertex_id(&self, word: &[Letter]) -> Option<usize> {
        self.vertex_index.get(word).copied()
    }

    pub fn edge_id(&self, word: &[Letter]) -> Option<usize> {
        self.edge_index.get(word).copied()
    }

    pub fn source(&self, edge: usize) -> usize {
        self.source[edge]
    }

    pub fn target(&self, edge: usize) -> usize {
        self.target[edge]
    }

    /// Outgoing edge ids of a vertex, in lexicographic order.
    pub fn out_edges(&self, vertex: usize) -> &[usize] {
        &self.out_edges[vertex]
    }

    pub fn in_edges(&self, vertex: usize) -> &[usize] {
        &self.in_edges[vertex]
    }

    /// `|E| - |V| + 1`, the rank of the fundamental group when connected.
    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertices.len())
    }

    pub fn render(&self, word: &[Letter]) -> String {
        self.alphabet.render(word)
    }

    /// Middle letter of an edge word of an even-order graph.
    pub fn central_label(&self, edge: &[Letter]) -> Result<Letter> {
        if !self.order.is_multiple_of(2) {
            return Err(Error::OddOrder(self.order));
        }
        if self.edge_id(edge).is_none() {
            return Err(Error::UnknownEdge(self.render(edge)));
        }
        Ok(edge[self.order / 2])
    }

    fn label_of(&self, edge: usize) -> Letter {
        self.edges[edge][self.order / 2]
    }

    /// Strips `(order - target_order) / 2` letters from both ends of a vertex
    /// or edge word.
    pub fn project(&self, item: &[Letter], target_order: usize) -> Result<Word> {
        if !self.order.is_multiple_of(2) || !target_order.is_multiple_of(2) || target_order > self.order {
            return Err(Error::OrderMismatch {
                from: self.order,
                to: target_order,
            });
        }
        if self.vertex_id(item).is_none() && self.edge_id(item).is_none() {
            return Err(Error::NotAFactor(self.render(item)));
        }
        Ok(project_word(item, self.order, target_order))
    }

    /// Image of a path of this graph in a lower even-order graph.
    pub fn project_path(&self, path: &GraphPath, target: &RauzyGraph) -> Result<GraphPath> {
        if !self.order.is_multiple_of(2) || !target.order.is_multiple_of(2) || target.order > self.order {
            return Err(Error::OrderMismatch {
                from: self.order,
                to: target.order,
            });
        }
        let map = |w: &Word, is_edge: bool| {
            let image = project_word(w, self.order, target.order);
            let id = if is_edge {
                target.edge_id(&image)
            } else {
                target.vertex_id(&image)
            };
            id.ok_or_else(|| Error::NotAFactor(target.render(&image)))
        };
        let start = map(&self.vertices[path.start], false)?;
        let edges = path
            .edges
            .iter()
            .map(|&e| map(&self.edges[e], true))
            .collect::<Result<Vec<_>>>()?;
        Ok(GraphPath { start, edges })
    }

    /// The path from `start` to `end` whose central labels spell `u`.
    ///
    /// The traced word is the left half of `start`, then `u`, then the right
    /// half of `end`; its windows of length `order + 1` are the edges.
    pub fn lift_word_to_path(
        &self,
        lang: &FactorLanguage,
        start: &[Letter],
        u: &[Letter],
        end: &[Letter],
    ) -> Result<GraphPath> {
        if !self.order.is_multiple_of(2) {
            return Err(Error::OddOrder(self.order));
        }
        let half = self.order / 2;
        let start_id = self
            .vertex_id(start)
            .ok_or_else(|| Error::NotAFactor(self.render(start)))?;
        if self.vertex_id(end).is_none() {
            return Err(Error::NotAFactor(self.render(end)));
        }
        let traced = Word::concat(&[&start[..half], u, &end[half..]]);
        // Short windows first so the reported offender is minimal.
        for len in 1..=self.order + 1 {
            for (offset, window) in traced.windows(len).enumerate() {
                if !lang.contains(window)? {
                    return Err(Error::NotAdmissible {
                        window: self.render(window),
                        offset,
                    });
                }
            }
        }
        if &traced[..self.order] != start || &traced[traced.len() - self.order..] != end {
            return Err(Error::EndpointMismatch {
                traced: self.render(&traced),
                start: self.render(start),
                end: self.render(end),
            });
        }
        let edges = traced
            .windows(self.order + 1)
            .map(|w| self.edge_id(w).ok_or_else(|| Error::UnknownEdge(self.render(w))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GraphPath {
            start: start_id,
            edges,
        })
    }

    /// Like [`lift_word_to_path`](Self::lift_word_to_path) with the end
    /// vertex left open: the first end vertex (in lexicographic order) that
    /// admits a path wins. On failure the error for the first vertex is
    /// returned.
    pub fn lift_word_from(&self, lang: &FactorLanguage, start: &[Letter], u: &[Letter]) -> Result<GraphPath> {
        let mut first_error = None;
        for end in &self.vertices {
            match self.lift_word_to_path(lang, start, u, end) {
                Ok(path) => return Ok(path),
                Err(e) => {
                    first_error.get_or_insert(e);
                }
            }
        }
        Err(first_error.unwrap_or_else(|| Error::NotAFactor(self.render(start))))
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let forward = self.reach(0, |v| self.out_edges[v].iter().map(|&e| self.target[e]));
        let backward = self.reach(0, |v| self.in_edges[v].iter().map(|&e| self.source[e]));
        forward.iter().chain(&backward).all(|&b| b)
    }

    fn reach<'a, I: Iterator<Item = usize> + 'a>(
        &'a self,
        from: usize,
        next: impl Fn(usize) -> I,
    ) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            for w in next(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph rauzy_{} {{", self.order);
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", self.render(v));
        }
        for (i, e) in self.edges.iter().enumerate() {
            let s = self.render(&self.vertices[self.source[i]]);
            let t = self.render(&self.vertices[self.target[i]]);
            if self.order.is_multiple_of(2) {
                let label = self.alphabet.symbol(self.label_of(i));
                let _ = writeln!(
                    out,
                    "  \"{s}\" -> \"{t}\" [label=\"{} / {label}\"];",
                    self.render(e)
                );
            } else {
                let _ = writeln!(out, "  \"{s}\" -> \"{t}\" [label=\"{}\"];", self.render(e));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Rows `source,edge,target,central_label` (label empty on odd orders).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,edge,target,central_label\n");
        for (i, e) in self.edges.iter().enumerate() {
            let label = if self.order.is_multiple_of(2) {
                self.alphabet.symbol(self.label_of(i)).to_string()
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                "{},{},{},{}",
                self.render(&self.vertices[self.source[i]]),
                self.render(e),
                self.render(&self.vertices[self.target[i]]),
                label
            );
        }
        out
    }
}

/// True iff every factor of `u` of length at most `k` is in the language.
pub fn is_locally_admissible(lang: &FactorLanguage, u: &[Letter], k: usize) -> Result<bool> {
    lang.check_len(k)?;
    // Factoriality: checking the longest windows is enough.
    let len = k.min(u.len());
    if len == 0 {
        return Ok(true);
    }
    for w in u.windows(len) {
        if !lang.contains(w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn project_word(item: &[Letter], from: usize, to: usize) -> Word {
    let strip = (from - to) / 2;
    Word::from(&item[strip..item.len() - strip])
}

impl GraphPath {
    /// Validates that consecutive edges compose.
    pub fn new(graph: &RauzyGraph, start: usize, edges: Vec<usize>) -> Result<Self> {
        if start >= graph.vertices.len() {
            return Err(Error::InvalidInput("start vertex out of range".into()));
        }
        let mut at = start;
        for &e in &edges {
            if e >= graph.edges.len() || graph.source[e] != at {
                return Err(Error::InvalidInput("edges do not compose".into()));
            }
            at = graph.target[e];
        }
        Ok(GraphPath { start, edges })
    }

    pub fn empty(start: usize) -> Self {
        GraphPath {
            start,
            edges: Vec::new(),
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self, graph: &RauzyGraph) -> usize {
        self.edges.last().map_or(self.start, |&e| graph.target[e])
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Concatenation; the caller guarantees `other` starts where `self` ends.
    pub fn then(&self, other: &GraphPath) -> GraphPath {
        GraphPath {
            start: self.start,
            edges: [self.edges.as_slice(), other.edges.as_slice()].concat(),
        }
    }

    /// Word of central labels along the path.
    pub fn labels(&self, graph: &RauzyGraph) -> Result<Word> {
        if !graph.order.is_multiple_of(2) {
            return Err(Error::OddOrder(graph.order));
        }
        Ok(Word(self.edges.iter().map(|&e| graph.label_of(e)).collect()))
    }

    /// The word spelled by walking the path: the start vertex followed by the
    /// last letter of each edge.
    pub fn traced_word(&self, graph: &RauzyGraph) -> Word {
        let mut w = graph.vertices[self.start].clone();
        w.0.extend(self.edges.iter().map(|&e| graph.edges[e][graph.order]));
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{Source, Substitution};

    fn fib(h: usize) -> FactorLanguage {
        let sub = Substitution::from_pairs(&[('a', "ab"), ('b', "a")]).unwrap();
        FactorLanguage::build(&Source::Substitution(sub), h).unwrap()
    }

    fn rendered(g: &RauzyGraph) -> Vec<(String, String, String)> {
        (0..g.edges().len())
            .map(|i| {
                (
                    g.render(&g.edges()[i]),
                    g.render(&g.vertices()[g.source(i)]),
                    g.render(&g.vertices()[g.target(i)]),
                )
            })
            .collect()
    }

    #[test]
    fn fibonacci_order_two() {
        let lang = fib(4);
        let g = RauzyGraph::build(&lang, 2).unwrap();
        let verts: Vec<_> = g.vertices().iter().map(|v| g.render(v)).collect();
        assert_eq!(verts, ["aa", "ab", "ba"]);
        let s = |a: &str, b: &str, c: &str| (a.to_string(), b.to_string(), c.to_string());
        assert_eq!(
            rendered(&g),
            vec![
                s("aab", "aa", "ab"),
                s("aba", "ab", "ba"),
                s("baa", "ba", "aa"),
                s("bab", "ba", "ab"),
            ]
        );
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn fibonacci_order_one() {
        let g = RauzyGraph::build(&fib(3), 1).unwrap();
        let s = |a: &str, b: &str, c: &str| (a.to_string(), b.to_string(), c.to_string());
        assert_eq!(
            rendered(&g),
            vec![s("aa", "a", "a"), s("ab", "a", "b"), s("ba", "b", "a")]
        );
        assert_eq!(g.central_label(&g.edges()[0]), Err(Error::OddOrder(1)));
    }

    #[test]
    fn periodic_two_cycle() {
        let lang = FactorLanguage::build(&Source::periodic("ab").unwrap(), 3).unwrap();
        let g = RauzyGraph::build(&lang, 1).unwrap();
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.edges().len(), 2);
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn sink_is_not_strongly_connected() {
        let a = Alphabet::new(vec!['a', 'b']).unwrap();
        let g = RauzyGraph::from_parts(
            a.clone(),
            1,
            vec![a.parse("a").unwrap(), a.parse("b").unwrap()],
            vec![a.parse("ab").unwrap()],
        )
        .unwrap();
        assert!(!g.is_strongly_connected());
    }

    #[test]
    fn central_labels_and_projection() {
        let lang = fib(6);
        let g2 = RauzyGraph::build(&lang, 2).unwrap();
        let g4 = RauzyGraph::build(&lang, 4).unwrap();
        let p = |s: &str| lang.parse(s).unwrap();
        assert_eq!(g2.central_label(&p("aab")).unwrap(), 0);
        assert_eq!(g2.central_label(&p("bab")).unwrap(), 0);
        assert_eq!(g4.central_label(&p("aabab")).unwrap(), 1);
        assert_eq!(g4.project(&p("aabab"), 2).unwrap(), p("aba"));
        assert_eq!(g4.project(&p("aaba"), 2).unwrap(), p("ab"));
        assert_eq!(g4.project(&p("aaba"), 4).unwrap(), p("aaba"));
        assert!(matches!(
            g2.project(&p("aab"), 4),
            Err(Error::OrderMismatch { from: 2, to: 4 })
        ));
    }

    #[test]
    fn lifting_return_word() {
        let lang = fib(4);
        let g = RauzyGraph::build(&lang, 2).unwrap();
        let p = |s: &str| lang.parse(s).unwrap();
        let path = g.lift_word_to_path(&lang, &p("ab"), &p("ba"), &p("ab")).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(path.labels(&g).unwrap(), p("ba"));
        let names: Vec<_> = path.edges().iter().map(|&e| g.render(&g.edges()[e])).collect();
        assert_eq!(names, ["aba", "bab"]);
        assert_eq!(path.end(&g), path.start());

        let err = g
            .lift_word_to_path(&lang, &p("ab"), &p("bb"), &p("ab"))
            .unwrap_err();
        assert_eq!(
            err,
            Error::NotAdmissible {
                window: "bb".into(),
                offset: 1
            }
        );
        assert_eq!(
            g.lift_word_from(&lang, &p("ab"), &p("bb")).unwrap_err(),
            err
        );
        let open = g.lift_word_from(&lang, &p("ab"), &p("ba")).unwrap();
        assert_eq!(open.labels(&g).unwrap(), p("ba"));
        let one = g.lift_word_from(&lang, &p("ab"), &p("b")).unwrap();
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn dot_is_deterministic() {
        let lang = fib(4);
        let a = RauzyGraph::build(&lang, 2).unwrap().to_dot();
        let b = RauzyGraph::build(&lang, 2).unwrap().to_dot();
        assert_eq!(a, b);
        assert!(a.contains("\"aa\" -> \"ab\" [label=\"aab / a\"]"));
    }
}
