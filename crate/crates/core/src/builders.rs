//! Spaces from combinatorial and metric data.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::space::{PointSet, Space};
use crate::subset::Subset;

/// A simple undirected graph. Self-loops are not stored; every vertex converges to itself
/// through the closure rule.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphData {
    pub vertices: PointSet,
    pub edges: BTreeSet<(usize, usize)>,
}

impl GraphData {
    pub fn new<'a, I>(vertices: PointSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            let a = vertices
                .index_of(u)
                .ok_or_else(|| Error::MalformedEdge(format!("unknown vertex {u:?}")))?;
            let b = vertices
                .index_of(v)
                .ok_or_else(|| Error::MalformedEdge(format!("unknown vertex {v:?}")))?;
            if a == b {
                return Err(Error::MalformedEdge(format!("self-loop at {u:?}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(GraphData { vertices, edges: set })
    }

    /// Graph on numbered vertices.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::MalformedEdge(format!("({a}, {b})")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(GraphData {
            vertices: PointSet::numbered(n),
            edges: set,
        })
    }

    pub fn path(length: usize) -> Self {
        let edges: Vec<_> = (0..length).map(|k| (k, k + 1)).collect();
        GraphData::from_indices(length + 1, &edges).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|k| (k, (k + 1) % n)).filter(|(a, b)| a != b).collect();
        GraphData::from_indices(n, &edges).expect("cycle")
    }
}

/// `lim v̇ = {v} ∪ neighbours(v)`.
pub fn from_graph(g: &GraphData) -> Space {
    let n = g.vertices.len();
    let mut lims: Vec<Subset> = (0..n).map(|v| Subset::singleton(n, v)).collect();
    for &(a, b) in &g.edges {
        lims[a].insert(b);
        lims[b].insert(a);
    }
    Space::new(g.vertices.clone(), lims).expect("graph closure is centered")
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypergraphData {
    pub vertices: PointSet,
    pub edges: Vec<Subset>,
}

impl HypergraphData {
    pub fn new(vertices: PointSet, edges: Vec<Vec<&str>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if e.is_empty() {
                return Err(Error::EmptyHyperedge(i));
            }
            out.push(vertices.subset(e.iter().copied())?);
        }
        Ok(HypergraphData { vertices, edges: out })
    }

    /// The graph joining two vertices whenever some hyperedge contains both.
    pub fn two_section(&self) -> GraphData {
        let mut edges = BTreeSet::new();
        for e in &self.edges {
            let vs: Vec<usize> = e.iter().collect();
            for (i, &a) in vs.iter().enumerate() {
                for &b in &vs[i + 1..] {
                    edges.insert((a, b));
                }
            }
        }
        GraphData {
            vertices: self.vertices.clone(),
            edges,
        }
    }
}

/// Which way the specialization order on simplices points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    /// `lim σ̇` is the set of faces of `σ`; vertices are closed points.
    #[default]
    Faces,
    /// `lim σ̇` is the set of cofaces of `σ`; maximal simplices are closed points.
    Cofaces,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypergraphMode {
    Skeleton,
    Alexandrov(Orientation),
}

pub fn from_hypergraph(h: &HypergraphData, mode: HypergraphMode) -> Result<Space> {
    if let Some(i) = h.edges.iter().position(Subset::is_empty) {
        return Err(Error::EmptyHyperedge(i));
    }
    match mode {
        HypergraphMode::Skeleton => Ok(from_graph(&h.two_section())),
        HypergraphMode::Alexandrov(orientation) => Ok(alexandrov(h, orientation)),
    }
}

/// Alexandrov space on `Σ = ⋃_e (P(e) ∖ {∅})`, simplices ordered by size then vertex order.
fn alexandrov(h: &HypergraphData, orientation: Orientation) -> Space {
    let mut simplices: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for e in &h.edges {
        let vs: Vec<usize> = e.iter().collect();
        assert!(vs.len() < 32, "hyperedge too large to enumerate faces");
        for mask in 1u64..(1u64 << vs.len()) {
            let face: Vec<usize> = (0..vs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            simplices.insert((face.len(), face));
        }
    }
    let simplices: Vec<Vec<usize>> = simplices.into_iter().map(|(_, f)| f).collect();
    let n = simplices.len();
    let universe = h.vertices.len();
    let sets: Vec<Subset> = simplices
        .iter()
        .map(|s| Subset::from_indices(universe, s.iter().copied()))
        .collect();
    let labels: Vec<String> = simplices
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|&v| h.vertices.label(v)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let lims = (0..n)
        .map(|i| {
            Subset::from_indices(
                n,
                (0..n).filter(|&j| match orientation {
                    Orientation::Faces => sets[j].is_subset(&sets[i]),
                    Orientation::Cofaces => sets[i].is_subset(&sets[j]),
                }),
            )
        })
        .collect();
    Space::new(PointSet::new(labels).expect("distinct simplices"), lims).expect("centered")
}

/// Points with a symmetric, non-negative, zero-diagonal dissimilarity and a scale.
/// The triangle inequality is not required.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledMetricData<T> {
    pub points: PointSet,
    pub distances: Vec<Vec<T>>,
    pub scale: T,
}

impl<T> ScaledMetricData<T>
where
    T: Copy + PartialOrd + Zero,
{
    pub fn new(points: PointSet, distances: Vec<Vec<T>>, scale: T) -> Result<Self> {
        let n = points.len();
        if distances.len() != n || distances.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("distance matrix must be {n}×{n}")));
        }
        if !(scale >= T::zero()) {
            return Err(Error::InvalidArgument("scale must be non-negative".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let d = distances[i][j];
                if !(d >= T::zero()) {
                    return Err(Error::NegativeDistance(i, j));
                }
                if i == j && d != T::zero() {
                    return Err(Error::NonZeroDiagonal(i));
                }
                if distances[j][i] != d {
                    return Err(Error::AsymmetricMatrix(i, j));
                }
            }
        }
        Ok(ScaledMetricData {
            points,
            distances,
            scale,
        })
    }
}

/// `lim ẏ = {x : d(x, y) ≤ ε}`.
pub fn from_scaled_metric<T>(m: &ScaledMetricData<T>) -> Space
where
    T: Copy + PartialOrd + Zero,
{
    let n = m.points.len();
    let lims = (0..n)
        .map(|y| Subset::from_indices(n, (0..n).filter(|&x| m.distances[x][y] <= m.scale)))
        .collect();
    Space::new(m.points.clone(), lims).expect("zero diagonal gives centering")
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTopologyData {
    pub points: PointSet,
    pub opens: Vec<Subset>,
}

impl FiniteTopologyData {
    pub fn new(points: PointSet, opens: Vec<Vec<&str>>) -> Result<Self> {
        let opens = opens
            .into_iter()
            .map(|o| points.subset(o))
            .collect::<Result<Vec<_>>>()?;
        let t = FiniteTopologyData { points, opens };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        let family: BTreeSet<&Subset> = self.opens.iter().collect();
        let name = |s: &Subset| format!("{{{}}}", self.points.labels_of(s).join(","));
        let empty = Subset::empty(n);
        let full = Subset::full(n);
        if !family.contains(&empty) {
            return Err(Error::NotATopology("missing ∅".into()));
        }
        if !family.contains(&full) {
            return Err(Error::NotATopology(format!("missing carrier {}", name(&full))));
        }
        for a in &family {
            for b in &family {
                let u = a.union(b);
                if !family.contains(&u) {
                    return Err(Error::NotATopology(format!("missing union {}", name(&u))));
                }
                let i = a.intersection(b);
                if !family.contains(&i) {
                    return Err(Error::NotATopology(format!("missing intersection {}", name(&i))));
                }
            }
        }
        Ok(())
    }
}

/// `lim ẏ` is the topological closure of `{y}`.
pub fn from_finite_topology(t: &FiniteTopologyData) -> Result<Space> {
    t.validate()?;
    let n = t.points.len();
    let lims = (0..n)
        .map(|y| {
            let mut outside = Subset::empty(n);
            for o in t.opens.iter().filter(|o| !o.contains(y)) {
                outside.union_with(o);
            }
            outside.complement()
        })
        .collect();
    Space::new(t.points.clone(), lims)
}
