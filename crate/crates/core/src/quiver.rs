//! Finite quivers, paths and the ordered path bases of `V^{⊗n}`.
//!
//! Paths compose left to right: in `p.q` the path `p` is traversed first,
//! so `p.q` is defined when `target(p) == source(q)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("quiver has no vertices")]
    NoVertices,
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("path `{0}` is not composable")]
    NotComposable(String),
    #[error("empty path expression")]
    EmptyPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Vertices by name; arrows as `(name, source, target)` vertex names.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::NoVertices);
        }
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
        };
        for v in vertices {
            let v = v.as_ref();
            if q.has_name(v) {
                return Err(QuiverError::DuplicateName(v.to_string()));
            }
            q.vertices.push(v.to_string());
        }
        for (name, s, t) in arrows {
            let name = name.as_ref();
            if q.has_name(name) {
                return Err(QuiverError::DuplicateName(name.to_string()));
            }
            let source = q.require_vertex(s.as_ref())?;
            let target = q.require_vertex(t.as_ref())?;
            q.arrows.push(Arrow {
                name: name.to_string(),
                source,
                target,
            });
        }
        Ok(q)
    }

    fn has_name(&self, name: &str) -> bool {
        self.vertex_index(name).is_some() || self.arrow_index(name).is_some()
    }

    fn require_vertex(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertex_index(name)
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Parses `x.y.z` (arrow names) or a single vertex name.
    pub fn parse_path(&self, text: &str) -> Result<Path, QuiverError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(QuiverError::EmptyPath);
        }
        if let Some(v) = self.vertex_index(text) {
            return Ok(Path::vertex(v));
        }
        let mut arrows = Vec::new();
        for name in text.split('.') {
            let name = name.trim();
            let a = self
                .arrow_index(name)
                .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))?;
            arrows.push(a);
        }
        Path::from_arrows(self, arrows).ok_or_else(|| QuiverError::NotComposable(text.to_string()))
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return self.vertices[p.source].clone();
        }
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// All paths of length `n` from `u` to `v` in length-lexicographic
    /// order by arrow index. For `n = 0` this is `[e_u]` when `u == v`.
    pub fn path_basis(&self, n: usize, u: usize, v: usize) -> Vec<Path> {
        self.paths_of_length(n)
            .into_iter()
            .filter(|p| p.source == u && p.target == v)
            .collect()
    }

    /// All paths of length `n`, in length-lexicographic order.
    pub fn paths_of_length(&self, n: usize) -> Vec<Path> {
        let mut layer: Vec<Path> = (0..self.num_vertices()).map(Path::vertex).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &layer {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path {
                            source: p.source,
                            target: arrow.target,
                            arrows,
                        });
                    }
                }
            }
            layer = next;
        }
        if n > 0 {
            layer.sort();
        }
        layer
    }
}

/// A path in the quiver; a trivial path is a vertex idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let ar = q.arrow(a);
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    /// `None` when the arrows do not compose or the list is empty.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        let first = *arrows.first()?;
        let mut end = q.arrow(first).target;
        for &a in &arrows[1..] {
            if q.arrow(a).source != end {
                return None;
            }
            end = q.arrow(a).target;
        }
        Some(Path {
            source: q.arrow(first).source,
            target: end,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Indexed basis of `V^{⊗n}`: every path of length `n`, globally ordered,
/// with a per-`(source, target)` block decomposition.
#[derive(Debug, Clone)]
pub struct PathSpace {
    degree: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    blocks: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PathSpace {
    pub fn new(quiver: &Quiver, degree: usize) -> Self {
        let paths = quiver.paths_of_length(degree);
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            blocks.entry((p.source, p.target)).or_default().push(i);
        }
        PathSpace {
            degree,
            paths,
            index,
            blocks,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Global indices of the paths from `u` to `v`.
    pub fn block(&self, u: usize, v: usize) -> &[usize] {
        self.blocks.get(&(u, v)).map_or(&[], |b| b.as_slice())
    }

    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.blocks.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn largest_block(&self) -> usize {
        self.blocks.values().map(Vec::len).max().unwrap_or(0)
    }
}
