use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::space::{format_labels, Space};
use crate::subset::{nonempty_subsets, Subset};

/// Outcome of a continuity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Continuity {
    Continuous,
    /// `λ_generator → limit` in the domain, but the image filter does not converge to the
    /// image of `limit`.
    Violation { generator: Subset, limit: usize },
}

impl Continuity {
    pub fn is_continuous(&self) -> bool {
        matches!(self, Continuity::Continuous)
    }
}

/// A function between finite spaces with a lazily computed continuity certificate.
pub struct SpaceMap {
    domain: Arc<Space>,
    codomain: Arc<Space>,
    assignment: Vec<usize>,
    certificate: OnceLock<Continuity>,
}

impl SpaceMap {
    pub fn new(domain: Arc<Space>, codomain: Arc<Space>, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != domain.len() {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} entries for a domain of {} points",
                assignment.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::UnknownPoint(bad.to_string()));
        }
        Ok(SpaceMap {
            domain,
            codomain,
            assignment,
            certificate: OnceLock::new(),
        })
    }

    /// Map from labelled pairs; every domain point must be assigned.
    pub fn from_labels<'a, I>(domain: Arc<Space>, codomain: Arc<Space>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut assignment = vec![usize::MAX; domain.len()];
        for (a, b) in pairs {
            let i = domain.points().require(a)?;
            assignment[i] = codomain.points().require(b)?;
        }
        if let Some(missing) = assignment.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidArgument(format!(
                "point {:?} is not assigned",
                domain.label(missing)
            )));
        }
        SpaceMap::new(domain, codomain, assignment)
    }

    pub fn identity(space: Arc<Space>) -> Self {
        let n = space.len();
        SpaceMap::new(space.clone(), space, (0..n).collect()).expect("identity")
    }

    pub fn constant(domain: Arc<Space>, codomain: Arc<Space>, value: usize) -> Result<Self> {
        let n = domain.len();
        SpaceMap::new(domain, codomain, vec![value; n])
    }

    /// The unique map out of the empty space.
    pub fn from_empty(codomain: Arc<Space>) -> Self {
        SpaceMap::new(Arc::new(Space::empty()), codomain, Vec::new()).expect("empty map")
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Space> {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn image(&self, s: &Subset) -> Subset {
        s.image(&self.assignment, self.codomain.len())
    }

    /// Same assignment with different (but equally sized) endpoints.
    pub fn retarget(&self, domain: Arc<Space>, codomain: Arc<Space>) -> Result<Self> {
        SpaceMap::new(domain, codomain, self.assignment.clone())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SpaceMap) -> Result<SpaceMap> {
        if self.codomain.len() != other.domain.len() {
            return Err(Error::DomainMismatch);
        }
        let assignment = self.assignment.iter().map(|&v| other.assignment[v]).collect();
        SpaceMap::new(self.domain.clone(), other.codomain.clone(), assignment)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = Subset::empty(self.codomain.len());
        for &v in &self.assignment {
            if seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        Subset::from_indices(self.codomain.len(), self.assignment.iter().copied()).count()
            == self.codomain.len()
    }

    pub fn continuity(&self) -> &Continuity {
        self.certificate
            .get_or_init(|| check_continuity(&self.domain, &self.codomain, &self.assignment))
    }

    pub fn is_continuous(&self) -> bool {
        self.continuity().is_continuous()
    }

    pub fn require_continuous(&self) -> Result<()> {
        match self.continuity() {
            Continuity::Continuous => Ok(()),
            Continuity::Violation { generator, limit } => Err(Error::NotContinuous(format!(
                "filter {} converges to {:?} but its image does not converge to {:?}",
                format_labels(self.domain.points(), generator),
                self.domain.label(*limit),
                self.codomain.label(self.assignment[*limit]),
            ))),
        }
    }

    /// Whether two maps have equal assignments and structurally equal endpoints.
    pub fn same_as(&self, other: &SpaceMap) -> bool {
        self.assignment == other.assignment
            && same_space(&self.domain, &other.domain)
            && same_space(&self.codomain, &other.codomain)
    }

    /// Assignment as `(domain label, codomain label)` pairs.
    pub fn labeled_pairs(&self) -> Vec<(String, String)> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(x, &v)| (self.domain.label(x).to_string(), self.codomain.label(v).to_string()))
            .collect()
    }
}

pub(crate) fn same_space(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Clone for SpaceMap {
    fn clone(&self) -> Self {
        let certificate = OnceLock::new();
        if let Some(c) = self.certificate.get() {
            let _ = certificate.set(c.clone());
        }
        SpaceMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            assignment: self.assignment.clone(),
            certificate,
        }
    }
}

impl PartialEq for SpaceMap {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl fmt::Debug for SpaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (x, &v) in self.assignment.iter().enumerate() {
            m.entry(&self.domain.label(x), &self.codomain.label(v));
        }
        m.finish()
    }
}

/// Continuity of a raw assignment. Uses the point-filter criterion when both ends are
/// point-limit spaces and quantifies over every generator otherwise.
pub fn check_continuity(domain: &Space, codomain: &Space, f: &[usize]) -> Continuity {
    if domain.is_point_limit() && codomain.is_point_limit() {
        for y in 0..domain.len() {
            let fy = codomain.point_limits(f[y]);
            for x in domain.point_limits(y) {
                if !fy.contains(f[x]) {
                    return Continuity::Violation {
                        generator: Subset::singleton(domain.len(), y),
                        limit: x,
                    };
                }
            }
        }
        return Continuity::Continuous;
    }
    check_continuity_all_filters(domain, codomain, f)
}

/// Continuity by quantifying over every principal filter of the domain.
pub fn check_continuity_all_filters(domain: &Space, codomain: &Space, f: &[usize]) -> Continuity {
    for g in nonempty_subsets(domain.len()) {
        let lim = domain.limits_of(&g).expect("total structure");
        if lim.is_empty() {
            continue;
        }
        let image_lim = codomain
            .limits_of(&g.image(f, codomain.len()))
            .expect("total structure");
        for x in &lim {
            if !image_lim.contains(f[x]) {
                return Continuity::Violation { generator: g, limit: x };
            }
        }
    }
    Continuity::Continuous
}
