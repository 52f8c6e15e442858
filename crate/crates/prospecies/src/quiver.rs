//! Quivers, paths and the quiver constructions used throughout: doubling,
//! separation and reflection at a vertex.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Suffix marking the reversed copy of an arrow.
pub const STAR: &str = "_star";
/// Suffix marking the second copy of a vertex (and arrows into it).
pub const BAR: &str = "_bar";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with labelled vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// Whether a reflection happens at a sink or at a source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Sink,
    Source,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(label, source, target)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::LabelCollision(format!("vertex {v}")));
            }
        }
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut out = Vec::new();
        let mut labels = HashSet::new();
        for (l, s, t) in arrows {
            let (l, s, t) = (l.as_ref(), s.as_ref(), t.as_ref());
            if !labels.insert(l.to_string()) {
                return Err(Error::LabelCollision(format!("arrow {l}")));
            }
            let lookup = |v: &str| {
                index.get(v).copied().ok_or_else(|| Error::InvalidQuiver(format!("arrow {l} uses unknown vertex {v}")))
            };
            out.push(Arrow { label: l.to_string(), source: lookup(s)?, target: lookup(t)? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// Builds a quiver from already indexed arrows.
    pub fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let named: Vec<(String, String, String)> = arrows
            .iter()
            .map(|a| {
                let v = |i: usize| vertices.get(i).cloned().ok_or_else(|| Error::InvalidQuiver(format!("vertex index {i}")));
                Ok((a.label.clone(), v(a.source)?, v(a.target)?))
            })
            .collect::<Result<_>>()?;
        Quiver::new(&vertices, &named)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Indices of arrows ending at `v`.
    pub fn arrows_into(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }

    /// Indices of arrows starting at `v`.
    pub fn arrows_out_of(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows_out_of(v).is_empty()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows_into(v).is_empty()
    }

    /// True iff there is no oriented cycle (Kahn's topological sort).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices ordered so that every arrow goes forward, if the quiver is acyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        stack.push(a.target);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// True iff no vertex is both the source and the target of arrows, so
    /// every vertex is a sink or a source.
    pub fn is_bipartite(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.is_sink(v) || self.is_source(v))
    }

    /// Length of the longest path, if the quiver is acyclic.
    pub fn longest_path(&self) -> Option<usize> {
        let order = self.topological_order()?;
        let mut best = vec![0usize; self.vertices.len()];
        for v in order {
            for a in &self.arrows {
                if a.source == v {
                    best[a.target] = best[a.target].max(best[v] + 1);
                }
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// All paths of length at most `max_len`, ordered by length and then
    /// lexicographically by arrow labels in written order. Trivial paths come
    /// first, in vertex order.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        let mut layer: Vec<Path> = Vec::new();
        for len in 1..=max_len {
            let mut next = Vec::new();
            if len == 1 {
                for a in 0..self.arrows.len() {
                    next.push(Path::arrow(self, a));
                }
            } else {
                for p in &layer {
                    for a in self.arrows_out_of(p.target) {
                        next.push(Path::arrow(self, a).compose(p).expect("composable"));
                    }
                }
            }
            next.sort_by(|a, b| self.compare_paths(a, b));
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Total order on paths: by length, then by arrow labels in written
    /// order; trivial paths are ordered by vertex index.
    pub fn compare_paths(&self, a: &Path, b: &Path) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            if a.is_trivial() {
                return a.source.cmp(&b.source);
            }
            let la = a.arrows.iter().map(|&x| self.arrows[x].label.as_str());
            let lb = b.arrows.iter().map(|&x| self.arrows[x].label.as_str());
            la.cmp(lb)
        })
    }

    /// The double quiver: adds `a_star: j -> i` for every arrow `a: i -> j`,
    /// or `a: j -> i` when the arrow is already called `a_star`.
    pub fn double(&self) -> Result<Quiver> {
        let mut arrows = self.arrows.clone();
        let existing: HashSet<&str> = self.arrows.iter().map(|a| a.label.as_str()).collect();
        for a in &self.arrows {
            let star = toggle_star(&a.label);
            if existing.contains(star.as_str()) {
                return Err(Error::LabelCollision(format!("arrow {} cannot be starred", a.label)));
            }
            arrows.push(Arrow { label: star, source: a.target, target: a.source });
        }
        Ok(Quiver { vertices: self.vertices.clone(), arrows })
    }

    /// The separated quiver: vertices `i` and `i_bar`, and `a_bar: i -> j_bar`
    /// for each arrow `a: i -> j`.
    pub fn separated(&self) -> Result<Quiver> {
        let n = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(self.vertices.iter().map(|v| format!("{v}{BAR}")));
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { label: format!("{}{BAR}", a.label), source: a.source, target: n + a.target })
            .collect();
        Quiver::from_parts(vertices, arrows)
    }

    /// The quiver with every arrow at vertex `v` reversed, provided `v` is a
    /// sink (resp. source). Reversed arrows toggle the star suffix.
    pub fn reflected(&self, v: usize, dir: Direction) -> Result<Quiver> {
        let ok = match dir {
            Direction::Sink => self.is_sink(v),
            Direction::Source => self.is_source(v),
        };
        if !ok {
            return Err(Error::NotSinkOrSource(self.vertices[v].clone()));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.source == v || a.target == v {
                    Arrow { label: toggle_star(&a.label), source: a.target, target: a.source }
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver::from_parts(self.vertices.clone(), arrows)
    }

    /// The opposite quiver, keeping labels.
    pub fn opposite(&self) -> Quiver {
        let arrows = self.arrows.iter().map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source }).collect();
        Quiver { vertices: self.vertices.clone(), arrows }
    }
}

/// Adds or removes the star suffix.
pub fn toggle_star(label: &str) -> String {
    match label.strip_suffix(STAR) {
        Some(base) => base.to_string(),
        None => format!("{label}{STAR}"),
    }
}

/// A path, stored in written order: `arrows[0]` is applied last. A trivial
/// path has no arrows and equal source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        let ar = q.arrow(a);
        Path { source: ar.source, target: ar.target, arrows: vec![a] }
    }

    /// Builds a path from arrows in written order, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Option<Path> {
        let (first, last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if q.arrow(w[1]).target != q.arrow(w[0]).source {
                return None;
            }
        }
        Some(Path { source: q.arrow(*last).source, target: q.arrow(*first).target, arrows: arrows.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` after `other`, when `other` ends where `self` starts.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    /// The path minus its last-applied arrow, i.e. `q` in `p = a q`.
    pub fn tail(&self, q: &Quiver) -> Path {
        match self.arrows.len() {
            0 => self.clone(),
            1 => Path::trivial(self.source),
            _ => Path { source: self.source, target: q.arrow(self.arrows[1]).target, arrows: self.arrows[1..].to_vec() },
        }
    }

    /// Renders the path as `b*a` (written order) or `e(v)`.
    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e({})", self.quiver.vertices[self.path.source]);
        }
        let labels: Vec<&str> = self.path.arrows.iter().map(|&a| self.quiver.arrow(a).label.as_str()).collect();
        write!(f, "{}", labels.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> Quiver {
        Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap()
    }

    fn square() -> Quiver {
        Quiver::new(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")]).unwrap()
    }

    #[test]
    fn path_enumeration() {
        let one = Quiver::new::<&str>(&["1"], &[]).unwrap();
        assert_eq!(one.enumerate_paths(5).len(), 1);
        assert_eq!(a2().enumerate_paths(2).len(), 3);
        let paths = square().enumerate_paths(2);
        assert_eq!(paths.len(), 10);
        assert_eq!(paths.iter().filter(|p| p.len() == 2).count(), 2);
        assert_eq!(paths[8].display(&square()).to_string(), "b*a");
    }

    #[test]
    fn acyclicity() {
        assert!(a2().is_acyclic());
        let loop1 = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        assert!(!loop1.is_acyclic());
        assert!(!a2().double().unwrap().is_acyclic());
    }

    #[test]
    fn doubling() {
        let d = a2().double().unwrap();
        assert_eq!(d.arrow(1).label, "a_star");
        assert_eq!((d.arrow(1).source, d.arrow(1).target), (1, 0));
        assert!(matches!(d.double(), Err(Error::LabelCollision(_))));
        let par = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        assert_eq!(par.double().unwrap().num_arrows(), 4);
        let edgeless = Quiver::new::<&str>(&["1", "2"], &[]).unwrap();
        assert_eq!(edgeless.double().unwrap(), edgeless);
    }

    #[test]
    fn separation() {
        let s = a2().separated().unwrap();
        assert_eq!(s.vertices(), &["1", "2", "1_bar", "2_bar"]);
        assert_eq!((s.arrow(0).source, s.arrow(0).target), (0, 3));
        let loop1 = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap().separated().unwrap();
        assert!(loop1.is_acyclic());
        assert!(loop1.is_bipartite());
    }

    #[test]
    fn reflection() {
        let r = a2().reflected(1, Direction::Sink).unwrap();
        assert_eq!(r.arrow(0).label, "a_star");
        assert_eq!((r.arrow(0).source, r.arrow(0).target), (1, 0));
        assert!(matches!(a2().reflected(0, Direction::Sink), Err(Error::NotSinkOrSource(_))));
        let iso = Quiver::new(&["1", "2", "3"], &[("a", "1", "2")]).unwrap();
        assert_eq!(iso.reflected(2, Direction::Sink).unwrap(), iso);
        let a3 = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let r3 = a3.reflected(2, Direction::Sink).unwrap();
        assert_eq!(r3.arrow(0), a3.arrow(0));
        assert_eq!((r3.arrow(1).source, r3.arrow(1).target), (2, 1));
        assert_eq!(r3.reflected(2, Direction::Source).unwrap(), a3);
    }

    fn random_quiver() -> impl Strategy<Value = Quiver> {
        (1usize..5, proptest::collection::vec((0usize..5, 0usize..5), 0..6)).prop_map(|(n, edges)| {
            let vs: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let arrows: Vec<(String, String, String)> = edges
                .iter()
                .enumerate()
                .map(|(k, (s, t))| (format!("a{k}"), (s % n).to_string(), (t % n).to_string()))
                .collect();
            Quiver::new(&vs, &arrows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn separated_is_acyclic_and_bipartite(q in random_quiver()) {
            let s = q.separated().unwrap();
            prop_assert!(s.is_acyclic());
            prop_assert!(s.is_bipartite());
        }

        #[test]
        fn path_counts_stabilise_for_acyclic(q in random_quiver()) {
            if let Some(l) = q.longest_path() {
                prop_assert_eq!(q.enumerate_paths(l).len(), q.enumerate_paths(l + 3).len());
            }
        }

        #[test]
        fn double_twice_is_rejected(q in random_quiver()) {
            if q.num_arrows() > 0 {
                prop_assert!(q.double().unwrap().double().is_err());
            }
        }
    }
}
