//! Finite convergence structures.
//!
//! A filter on a finite carrier is principal, so every filter is represented by
//! its generator. Point-limit spaces store `lim ẏ` for every point and derive
//! the limits of a principal filter `λ_A` by intersecting `lim ȧ` over `a ∈ A`;
//! this is exactly the pseudotopological (equivalently, on finite carriers,
//! pretopological) case. Subset-limit spaces store a limit set for every
//! non-empty generator and can express convergence structures that are not
//! limit spaces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{nonempty_subsets, Subset};

/// Largest carrier for which subset-limit storage is allowed.
pub const MAX_SUBSET_LIMIT_POINTS: usize = 16;

/// Ordered, duplicate-free point labels. The order is the canonical order used by
/// every enumeration.
#[derive(Clone, Default)]
pub struct PointSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl PointSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(l.clone()));
            }
        }
        Ok(PointSet { labels, index })
    }

    /// Points labelled `0, 1, .., n-1`.
    pub fn numbered(n: usize) -> Self {
        PointSet::new((0..n).map(|i| i.to_string())).expect("numbered labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    /// Subset from labels; unknown labels are an error.
    pub fn subset<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<Subset> {
        let mut s = Subset::empty(self.len());
        for l in labels {
            s.insert(self.require(l)?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for PointSet {}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}

/// The principal filter `{A : generator ⊆ A}` on a carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalFilter {
    generator: Subset,
}

impl PrincipalFilter {
    pub fn new(generator: Subset) -> Result<Self> {
        if generator.is_empty() {
            return Err(Error::UnknownFilter("∅".into()));
        }
        Ok(PrincipalFilter { generator })
    }

    /// The point filter `ẋ`.
    pub fn point(universe: usize, x: usize) -> Self {
        PrincipalFilter {
            generator: Subset::singleton(universe, x),
        }
    }

    pub fn generator(&self) -> &Subset {
        &self.generator
    }

    /// Whether `a` belongs to the filter.
    pub fn contains_set(&self, a: &Subset) -> bool {
        self.generator.is_subset(a)
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.generator.count() == 1
    }

    /// The ultrafilters refining this filter; on a finite carrier these are the point
    /// filters of the generator's elements.
    pub fn ultrafilters(&self) -> Vec<PrincipalFilter> {
        self.generator
            .iter()
            .map(|x| PrincipalFilter::point(self.generator.universe(), x))
            .collect()
    }
}

/// Storage kind of a [`Space`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    PointLimit,
    SubsetLimit,
}

/// Position in the hierarchy convergence ⊇ limit ⊇ pseudotopological.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureKind {
    pub is_convergence: bool,
    pub is_limit: bool,
    pub is_pseudotopological: bool,
}

/// A finite convergence space.
#[derive(Clone, PartialEq, Eq)]
pub struct Space {
    points: PointSet,
    /// `lim ẏ` for every point `y`.
    singles: Vec<Subset>,
    /// `V(x) = {y : x ∈ lim ẏ}`.
    nbhd: Vec<Subset>,
    /// Limits of every non-empty generator, for subset-limit spaces only.
    filters: Option<BTreeMap<Subset, Subset>>,
}

impl Space {
    /// Point-limit space from `lim ẏ` for every point.
    pub fn new(points: PointSet, point_limits: Vec<Subset>) -> Result<Self> {
        let n = points.len();
        if point_limits.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} limit sets for {} points",
                point_limits.len(),
                n
            )));
        }
        for (y, lim) in point_limits.iter().enumerate() {
            if lim.universe() != n {
                return Err(Error::InvalidArgument("limit set over wrong carrier".into()));
            }
            if !lim.contains(y) {
                return Err(Error::CenteringViolation(points.label(y).to_string()));
            }
        }
        let nbhd = transpose(&point_limits);
        Ok(Space {
            points,
            singles: point_limits,
            nbhd,
            filters: None,
        })
    }

    /// Point-limit space from labelled data; a point missing from `limits` has no limits
    /// and therefore violates centering.
    pub fn from_labeled(labels: Vec<String>, limits: &BTreeMap<String, Vec<String>>) -> Result<Self> {
        let points = PointSet::new(labels)?;
        let n = points.len();
        let mut sets = vec![Subset::empty(n); n];
        for (p, lims) in limits {
            let y = points.require(p)?;
            for q in lims {
                sets[y].insert(points.require(q)?);
            }
        }
        Space::new(points, sets)
    }

    /// Subset-limit space. `limits` must hold an entry for every non-empty subset.
    pub fn from_subset_limits(points: PointSet, limits: BTreeMap<Subset, Subset>) -> Result<Self> {
        let n = points.len();
        if n > MAX_SUBSET_LIMIT_POINTS {
            return Err(Error::CarrierTooLarge(n));
        }
        for g in nonempty_subsets(n) {
            match limits.get(&g) {
                Some(l) if l.universe() == n => {}
                Some(_) => return Err(Error::InvalidArgument("limit set over wrong carrier".into())),
                None => return Err(Error::UnknownFilter(format_labels(&points, &g))),
            }
        }
        if limits.len() != (1usize << n) - 1 {
            return Err(Error::InvalidArgument("limits keyed by empty or foreign subsets".into()));
        }
        let singles: Vec<Subset> = (0..n).map(|y| limits[&Subset::singleton(n, y)].clone()).collect();
        for (y, lim) in singles.iter().enumerate() {
            if !lim.contains(y) {
                return Err(Error::CenteringViolation(points.label(y).to_string()));
            }
        }
        let nbhd = transpose(&singles);
        Ok(Space {
            points,
            singles,
            nbhd,
            filters: Some(limits),
        })
    }

    pub fn empty() -> Self {
        Space::new(PointSet::default(), Vec::new()).expect("empty space")
    }

    /// The one-point space `∗`.
    pub fn point() -> Self {
        Space::new(PointSet::new(["*"]).expect("label"), vec![Subset::full(1)]).expect("point")
    }

    pub fn discrete(n: usize) -> Self {
        Space::new(PointSet::numbered(n), (0..n).map(|i| Subset::singleton(n, i)).collect())
            .expect("discrete space")
    }

    pub fn indiscrete(n: usize) -> Self {
        Space::new(PointSet::numbered(n), vec![Subset::full(n); n]).expect("indiscrete space")
    }

    /// Same structure with new labels.
    pub fn relabeled(&self, points: PointSet) -> Result<Self> {
        if points.len() != self.len() {
            return Err(Error::InvalidArgument("relabeling changes cardinality".into()));
        }
        let mut s = self.clone();
        s.points = points;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        self.points.label(i)
    }

    pub fn kind(&self) -> Kind {
        if self.filters.is_some() {
            Kind::SubsetLimit
        } else {
            Kind::PointLimit
        }
    }

    pub fn is_point_limit(&self) -> bool {
        self.filters.is_none()
    }

    /// `lim ẏ`.
    #[inline]
    pub fn point_limits(&self, y: usize) -> &Subset {
        &self.singles[y]
    }

    /// `V(x) = {y : ẏ → x}`, the generator of the neighborhood filter of `x`.
    #[inline]
    pub fn neighborhood(&self, x: usize) -> &Subset {
        &self.nbhd[x]
    }

    /// `x ∈ lim ẏ`.
    #[inline]
    pub fn converges(&self, y: usize, x: usize) -> bool {
        self.singles[y].contains(x)
    }

    pub fn stored_filter_limits(&self) -> Option<&BTreeMap<Subset, Subset>> {
        self.filters.as_ref()
    }

    /// Limits of the filter generated by `g`, or `None` if `g` is empty or foreign.
    pub fn limits_of(&self, g: &Subset) -> Option<Subset> {
        if g.is_empty() || g.universe() != self.len() {
            return None;
        }
        match &self.filters {
            Some(map) => map.get(g).cloned(),
            None => {
                let mut it = g.iter();
                let mut acc = self.singles[it.next()?].clone();
                for a in it {
                    acc.intersect_with(&self.singles[a]);
                }
                Some(acc)
            }
        }
    }

    pub fn filter_limits(&self, f: &PrincipalFilter) -> Result<Subset> {
        self.limits_of(f.generator())
            .ok_or_else(|| Error::UnknownFilter(format_labels(&self.points, f.generator())))
    }

    /// Exhaustive classification. Point-limit spaces are pseudotopological by construction.
    pub fn classify(&self) -> StructureKind {
        let Some(map) = &self.filters else {
            return StructureKind {
                is_convergence: true,
                is_limit: true,
                is_pseudotopological: true,
            };
        };
        let n = self.len();
        let centered = (0..n).all(|y| self.singles[y].contains(y));
        let monotone = self.is_monotone();
        let is_convergence = centered && monotone;

        let mut is_limit = is_convergence;
        if is_limit {
            'outer: for (a, la) in map {
                for (b, lb) in map {
                    if b < a {
                        continue;
                    }
                    let meet = la.intersection(lb);
                    if !meet.is_subset(&map[&a.union(b)]) {
                        is_limit = false;
                        break 'outer;
                    }
                }
            }
        }
        let is_pseudotopological = is_limit
            && map.iter().all(|(g, l)| {
                let mut acc = Subset::full(n);
                for a in g {
                    acc.intersect_with(&self.singles[a]);
                }
                acc == *l
            });
        StructureKind {
            is_convergence,
            is_limit,
            is_pseudotopological,
        }
    }

    fn is_monotone(&self) -> bool {
        let Some(map) = &self.filters else {
            return true;
        };
        let n = self.len();
        // Single-point extensions suffice by transitivity.
        map.iter().all(|(g, l)| {
            (0..n).filter(|&x| !g.contains(x)).all(|x| {
                let mut bigger = g.clone();
                bigger.insert(x);
                map[&bigger].is_subset(l)
            })
        })
    }

    /// The pseudotopological reflection: `lim ẋ` is kept and every other filter gets the
    /// intersection of its point filters' limits.
    pub fn pseudotopological_modification(&self) -> Result<Space> {
        if !self.is_monotone() {
            return Err(Error::NotMonotone(String::new()));
        }
        Ok(Space {
            points: self.points.clone(),
            singles: self.singles.clone(),
            nbhd: self.nbhd.clone(),
            filters: None,
        })
    }

    /// The same structure stored in subset-limit form.
    pub fn to_subset_limit(&self) -> Result<Space> {
        let n = self.len();
        if n > MAX_SUBSET_LIMIT_POINTS {
            return Err(Error::CarrierTooLarge(n));
        }
        let map = nonempty_subsets(n)
            .map(|g| {
                let l = self.limits_of(&g).expect("non-empty generator");
                (g, l)
            })
            .collect();
        Space::from_subset_limits(self.points.clone(), map)
    }

    /// Adherence of `a`: every point some filter containing `a` converges to.
    pub fn closure_of(&self, a: &Subset) -> Subset {
        let mut c = Subset::empty(self.len());
        for y in a {
            c.union_with(&self.singles[y]);
        }
        c
    }

    pub fn neighborhood_filter(&self, x: usize) -> PrincipalFilter {
        PrincipalFilter {
            generator: self.nbhd[x].clone(),
        }
    }

    /// `x ∈ lim ẏ ⟺ y ∈ lim ẋ` for all points.
    pub fn is_symmetric(&self) -> bool {
        self.singles == self.nbhd
    }

    /// Whether the closure is idempotent, i.e. the space is topological.
    pub fn is_topological(&self) -> bool {
        (0..self.len()).all(|y| {
            let c = &self.singles[y];
            self.closure_of(c) == *c
        })
    }

    /// Whether `lim ẏ` coincides for two spaces on the same number of points, ignoring labels
    /// and stored subset limits.
    pub fn same_point_structure(&self, other: &Space) -> bool {
        self.singles == other.singles
    }
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (y, l) in self.singles.iter().enumerate() {
            m.entry(&self.points.label(y), &self.points.labels_of(l));
        }
        m.finish()
    }
}

fn transpose(sets: &[Subset]) -> Vec<Subset> {
    let n = sets.len();
    let mut out = vec![Subset::empty(n); n];
    for (y, s) in sets.iter().enumerate() {
        for x in s {
            out[x].insert(y);
        }
    }
    out
}

pub(crate) fn format_labels(points: &PointSet, s: &Subset) -> String {
    format!("{{{}}}", points.labels_of(s).join(","))
}
