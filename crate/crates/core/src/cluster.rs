//! Bond clusters (lattice trees and animals) and their graph predicates:
//! path lengths, double connections, pivotal bonds, and cycles through a
//! vertex.

use crate::error::{Error, Result};
use crate::lattice::{Bond, Point, Symmetry};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which cluster family a computation runs over.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Acyclic bond clusters.
    Tree,
    /// Arbitrary connected bond clusters.
    Animal,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Tree => "tree",
            Model::Animal => "animal",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite connected set of nearest-neighbour bonds, plus the derived
/// vertex set. The bondless cluster consisting of the single vertex 0 is
/// represented with an empty bond list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cluster {
    model: Model,
    d: usize,
    bonds: Vec<Bond>,
    vertices: Vec<Point>,
}

impl Cluster {
    /// The 0-bond cluster {0}.
    pub fn single_site(model: Model, d: usize) -> Cluster {
        Cluster {
            model,
            d,
            bonds: Vec::new(),
            vertices: vec![Point::origin(d)],
        }
    }

    /// Builds a cluster from a bond list, validating connectivity (and
    /// acyclicity for the tree model). An empty list yields the single-site
    /// cluster {0}.
    pub fn new(model: Model, d: usize, mut bonds: Vec<Bond>) -> Result<Cluster> {
        if bonds.is_empty() {
            return Ok(Cluster::single_site(model, d));
        }
        bonds.sort();
        bonds.dedup();
        let mut vertices: Vec<Point> = bonds.iter().flat_map(|b| [b.small(), b.large()]).collect();
        vertices.sort();
        vertices.dedup();
        let c = Cluster {
            model,
            d,
            bonds,
            vertices,
        };
        if !c.is_connected() {
            return Err(Error::InvalidCluster("bond graph is disconnected".into()));
        }
        if model == Model::Tree && c.vertices.len() != c.bonds.len() + 1 {
            return Err(Error::InvalidCluster("tree model forbids cycles".into()));
        }
        Ok(c)
    }

    /// Fast constructor for the enumerator, which maintains the invariants
    /// itself. `bonds` and `vertices` must be sorted and consistent.
    pub(crate) fn from_parts(
        model: Model,
        d: usize,
        bonds: Vec<Bond>,
        vertices: Vec<Point>,
    ) -> Cluster {
        debug_assert!(bonds.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Cluster {
            model,
            d,
            bonds,
            vertices,
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of bonds |C|.
    pub fn n_bonds(&self) -> usize {
        self.bonds.len()
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    /// Sorted vertex set.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.vertices.binary_search(x).is_ok()
    }

    pub fn contains_bond(&self, b: &Bond) -> bool {
        self.bonds.binary_search(b).is_ok()
    }

    /// Number of bonds incident to `x`.
    pub fn degree(&self, x: &Point) -> usize {
        self.bonds.iter().filter(|b| b.contains(x)).count()
    }

    /// True when the vertex sets of the two clusters share a point.
    pub fn intersects(&self, other: &Cluster) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// The cluster shifted by `by` (vertex sets stay sorted because
    /// translation preserves lexicographic order).
    pub fn translate(&self, by: &Point) -> Cluster {
        Cluster {
            model: self.model,
            d: self.d,
            bonds: self
                .bonds
                .iter()
                .map(|b| Bond::new(b.small().add(by), b.large().add(by)))
                .collect(),
            vertices: self.vertices.iter().map(|v| v.add(by)).collect(),
        }
    }

    /// The image under a point symmetry (re-sorted).
    pub fn apply_symmetry(&self, sym: &Symmetry) -> Cluster {
        let mut bonds: Vec<Bond> = self.bonds.iter().map(|b| sym.apply_bond(b)).collect();
        bonds.sort();
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| sym.apply(v)).collect();
        vertices.sort();
        Cluster {
            model: self.model,
            d: self.d,
            bonds,
            vertices,
        }
    }

    fn vertex_index(&self, x: &Point) -> Result<usize> {
        self.vertices
            .binary_search(x)
            .map_err(|_| Error::NotAVertex(x.to_string()))
    }

    /// Adjacency lists as (neighbour index, bond index), aligned with
    /// `vertices()`.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, b) in self.bonds.iter().enumerate() {
            let i = self.vertices.binary_search(&b.small()).unwrap();
            let j = self.vertices.binary_search(&b.large()).unwrap();
            adj[i].push((j, e));
            adj[j].push((i, e));
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == self.vertices.len()
    }

    /// Graph distances from `x` to every vertex, aligned with `vertices()`.
    pub fn distances_from(&self, x: &Point) -> Result<Vec<usize>> {
        let src = self.vertex_index(x)?;
        let adj = self.adjacency();
        Ok(bfs_distances(&adj, src, None))
    }

    /// Length of the shortest path between x and y inside the cluster.
    pub fn min_path_length(&self, x: &Point, y: &Point) -> Result<usize> {
        let dist = self.distances_from(x)?;
        let dst = self.vertex_index(y)?;
        Ok(dist[dst])
    }

    /// Bond indices that are bridges (removal disconnects the cluster).
    fn bridge_flags(&self) -> Vec<bool> {
        let adj = self.adjacency();
        let n = self.vertices.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_bridge = vec![false; self.bonds.len()];
        let mut timer = 0usize;
        if n > 0 {
            lowlink(
                0,
                usize::MAX,
                &adj,
                &mut disc,
                &mut low,
                &mut timer,
                &mut is_bridge,
            );
        }
        is_bridge
    }

    /// 2-edge-connected component label per vertex, aligned with
    /// `vertices()`: components of the graph with all bridges removed.
    fn two_edge_labels(&self) -> Vec<usize> {
        let bridges = self.bridge_flags();
        let adj = self.adjacency();
        let n = self.vertices.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, e) in &adj[u] {
                    if !bridges[e] && label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// True iff x = y or no single bond removal disconnects x from y.
    pub fn doubly_connected(&self, x: &Point, y: &Point) -> Result<bool> {
        let i = self.vertex_index(x)?;
        let j = self.vertex_index(y)?;
        if i == j {
            return Ok(true);
        }
        let labels = self.two_edge_labels();
        Ok(labels[i] == labels[j])
    }

    /// True iff some cycle of the cluster passes through the origin.
    pub fn origin_in_cycle(&self) -> Result<bool> {
        let origin = Point::origin(self.d);
        let o = self.vertex_index(&origin)?;
        let bridges = self.bridge_flags();
        let adj = self.adjacency();
        Ok(adj[o].iter().any(|&(_, e)| !bridges[e]))
    }

    /// The bridges separating x from y, ordered from x to y, each returned
    /// as a directed pair oriented toward y. Empty iff x and y are doubly
    /// connected.
    pub fn pivotal_bonds(&self, x: &Point, y: &Point) -> Result<Vec<(Point, Point)>> {
        let src = self.vertex_index(x)?;
        let dst = self.vertex_index(y)?;
        if src == dst {
            return Ok(Vec::new());
        }
        let adj = self.adjacency();
        let bridges = self.bridge_flags();
        // Any x-to-y path crosses exactly the separating bridges, in the
        // same order and orientation, so one BFS path suffices.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.vertices.len()];
        let mut queue = std::collections::VecDeque::from([src]);
        let mut seen = vec![false; self.vertices.len()];
        seen[src] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, e));
                    queue.push_back(v);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = dst;
        while let Some((prev, e)) = parent[cur] {
            path.push((prev, cur, e));
            cur = prev;
            if cur == src {
                break;
            }
        }
        path.reverse();
        Ok(path
            .into_iter()
            .filter(|&(_, _, e)| bridges[e])
            .map(|(u, v, _)| (self.vertices[u], self.vertices[v]))
            .collect())
    }

    /// Length of the longest cycle through `v`, or None when `v` lies on no
    /// cycle. Walks every self-avoiding loop at `v`; fine for the small
    /// clusters enumeration produces, exponential in general.
    pub fn longest_cycle_through(&self, v: &Point) -> Result<Option<usize>> {
        let src = self.vertex_index(v)?;
        let adj = self.adjacency();
        let mut visited = vec![false; self.vertices.len()];
        visited[src] = true;
        let mut best = None;
        loop_lengths(src, src, 0, &adj, &mut visited, &mut best);
        Ok(best)
    }

    /// Length of the shortest cycle through `v`, or None when `v` lies on
    /// no cycle.
    pub fn min_cycle_through(&self, v: &Point) -> Result<Option<usize>> {
        let src = self.vertex_index(v)?;
        let adj = self.adjacency();
        let mut best: Option<usize> = None;
        for &(w, e) in &adj[src] {
            let dist = bfs_distances(&adj, w, Some(e));
            if dist[src] != usize::MAX {
                let cycle = dist[src] + 1;
                best = Some(best.map_or(cycle, |b| b.min(cycle)));
            }
        }
        Ok(best)
    }
}

impl fmt::Debug for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.model)?;
        for (i, b) in self.bonds.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, "]")
    }
}

/// BFS distances from `src`, skipping the bond with index `skip_edge`;
/// unreachable vertices get usize::MAX.
fn bfs_distances(adj: &[Vec<(usize, usize)>], src: usize, skip_edge: Option<usize>) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &adj[u] {
            if Some(e) == skip_edge || dist[v] != usize::MAX {
                continue;
            }
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    dist
}

/// Extends a self-avoiding walk from `u` and records every closure back to
/// `src` with length at least 3 (so a doubled bond never counts).
fn loop_lengths(
    u: usize,
    src: usize,
    len: usize,
    adj: &[Vec<(usize, usize)>],
    visited: &mut [bool],
    best: &mut Option<usize>,
) {
    for &(w, _) in &adj[u] {
        if w == src {
            if len + 1 >= 3 {
                *best = Some(best.map_or(len + 1, |b: usize| b.max(len + 1)));
            }
        } else if !visited[w] {
            visited[w] = true;
            loop_lengths(w, src, len + 1, adj, visited, best);
            visited[w] = false;
        }
    }
}

fn lowlink(
    u: usize,
    parent_edge: usize,
    adj: &[Vec<(usize, usize)>],
    disc: &mut [usize],
    low: &mut [usize],
    timer: &mut usize,
    is_bridge: &mut [bool],
) {
    disc[u] = *timer;
    low[u] = *timer;
    *timer += 1;
    for &(v, e) in &adj[u] {
        if e == parent_edge {
            continue;
        }
        if disc[v] == usize::MAX {
            lowlink(v, e, adj, disc, low, timer, is_bridge);
            low[u] = low[u].min(low[v]);
            if low[v] > disc[u] {
                is_bridge[e] = true;
            }
        } else {
            low[u] = low[u].min(disc[v]);
        }
    }
}

/// A decidable predicate on clusters, used to select enumeration families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Constraint {
    /// x is a vertex.
    ContainsVertex(Point),
    /// The bond {0,s} is present and the origin has degree exactly 1.
    PlantedViaBond(Point),
    /// Some cycle passes through the origin.
    OriginInCycle,
    /// x and y are vertices with no separating bond.
    DoublyConnected(Point, Point),
    /// x and y are vertices at graph distance at least the given bound.
    MinPathLength(Point, Point, usize),
    /// The given bond is absent.
    ExcludesBond(Bond),
}

impl Constraint {
    /// Total predicate: vertex-membership preconditions that fail make the
    /// constraint unsatisfied rather than an error.
    pub fn satisfied(&self, c: &Cluster) -> bool {
        match self {
            Constraint::ContainsVertex(x) => c.contains(x),
            Constraint::PlantedViaBond(s) => {
                let origin = Point::origin(c.dim());
                c.contains_bond(&Bond::new(origin, *s)) && c.degree(&origin) == 1
            }
            Constraint::OriginInCycle => c.origin_in_cycle().unwrap_or(false),
            Constraint::DoublyConnected(x, y) => c.doubly_connected(x, y).unwrap_or(false),
            Constraint::MinPathLength(x, y, i) => {
                c.min_path_length(x, y).map(|l| l >= *i).unwrap_or(false)
            }
            Constraint::ExcludesBond(b) => !c.contains_bond(b),
        }
    }

    /// Stable textual form, the input to cache digests.
    pub fn canonical_string(&self) -> String {
        match self {
            Constraint::ContainsVertex(x) => format!("contains-vertex{x}"),
            Constraint::PlantedViaBond(s) => format!("planted-via-bond{s}"),
            Constraint::OriginInCycle => "origin-in-cycle".to_string(),
            Constraint::DoublyConnected(x, y) => format!("doubly-connected({x},{y})"),
            Constraint::MinPathLength(x, y, i) => format!("min-path-length({x},{y},{i})"),
            Constraint::ExcludesBond(b) => format!("excludes-bond({:?})", b),
        }
    }
}
