//! Adherence, covering systems, interiors and compactness.

use std::sync::Arc;

use serde::Serialize;

use crate::constructions::subspace;
use crate::error::{Error, Result};
use crate::space::{PrincipalFilter, Space};
use crate::subset::{nonempty_subsets, Subset};

/// Adherence `a(A)`: the points some filter containing `A` converges to.
pub fn adherence(s: &Space, a: &Subset) -> Subset {
    s.closure_of(a)
}

pub fn is_closed(s: &Space, a: &Subset) -> bool {
    adherence(s, a) == *a
}

pub fn is_open(s: &Space, a: &Subset) -> bool {
    is_closed(s, &a.complement())
}

/// A family of subsets to be tested at every point of `scope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSystem {
    pub sets: Vec<Subset>,
    pub scope: Subset,
}

impl CoveringSystem {
    /// Scope is the whole carrier.
    pub fn new(universe: usize, sets: Vec<Subset>) -> Self {
        CoveringSystem {
            sets,
            scope: Subset::full(universe),
        }
    }
}

/// Scope points where the family fails, and for the others a set containing every
/// generator converging there, when a single one does.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub holds: bool,
    pub witnesses: Vec<(usize, usize)>,
    pub failures: Vec<usize>,
}

impl CoverCertificate {
    fn from_points<I: IntoIterator<Item = (usize, bool, Option<usize>)>>(points: I) -> Self {
        let mut witnesses = Vec::new();
        let mut failures = Vec::new();
        for (x, ok, w) in points {
            if !ok {
                failures.push(x);
            } else if let Some(w) = w {
                witnesses.push((x, w));
            }
        }
        CoverCertificate {
            holds: failures.is_empty(),
            witnesses,
            failures,
        }
    }
}

/// `V(x)` bounds every generator of a filter converging to `x` in a point-limit space.
pub fn is_covering_system(s: &Space, cs: &CoveringSystem) -> CoverCertificate {
    if !s.is_point_limit() {
        return raw_certificate(s, cs);
    }
    CoverCertificate::from_points(cs.scope.iter().map(|x| {
        let w = cs.sets.iter().position(|c| s.neighborhood(x).is_subset(c));
        (x, w.is_some(), w)
    }))
}

/// Quantifies over every non-empty generator `B` with `x ∈ lim B`.
pub fn is_covering_system_raw(s: &Space, cs: &CoveringSystem) -> bool {
    raw_certificate(s, cs).holds
}

fn raw_certificate(s: &Space, cs: &CoveringSystem) -> CoverCertificate {
    let generators: Vec<(Subset, Subset)> = nonempty_subsets(s.len())
        .map(|g| {
            let l = s.limits_of(&g).expect("non-empty generator");
            (g, l)
        })
        .collect();
    CoverCertificate::from_points(cs.scope.iter().map(|x| {
        let convergent: Vec<&Subset> = generators.iter().filter(|(_, l)| l.contains(x)).map(|(g, _)| g).collect();
        let ok = convergent.iter().all(|b| cs.sets.iter().any(|c| b.is_subset(c)));
        let w = cs.sets.iter().position(|c| convergent.iter().all(|b| b.is_subset(c)));
        (x, ok, w)
    }))
}

/// Points at which `family` is a covering system.
pub fn interior(s: &Space, family: &[Subset]) -> Subset {
    let mut out = Subset::empty(s.len());
    for x in 0..s.len() {
        let cs = CoveringSystem {
            sets: family.to_vec(),
            scope: Subset::singleton(s.len(), x),
        };
        if is_covering_system(s, &cs).holds {
            out.insert(x);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subcover {
    /// Indices into the original family.
    pub indices: Vec<usize>,
    #[serde(skip)]
    pub sets: Vec<Subset>,
    /// False when the greedy fallback was used.
    pub minimal: bool,
}

/// Families up to this size are minimized exactly.
pub const EXACT_SUBCOVER_LIMIT: usize = 20;

/// A smallest sub-family that is still a covering system of the scope.
pub fn finite_subcover(s: &Space, cs: &CoveringSystem) -> Result<Subcover> {
    let cert = is_covering_system(s, cs);
    if !cert.holds {
        let bad: Vec<&str> = cert.failures.iter().map(|&x| s.label(x)).collect();
        return Err(Error::NotACoveringSystem(format!("no set fits at {}", bad.join(", "))));
    }
    let points: Vec<usize> = cs.scope.iter().collect();
    let pick = |indices: Vec<usize>, minimal: bool| Subcover {
        sets: indices.iter().map(|&i| cs.sets[i].clone()).collect(),
        indices,
        minimal,
    };
    let sub_holds = |indices: &[usize]| {
        let sub = CoveringSystem {
            sets: indices.iter().map(|&i| cs.sets[i].clone()).collect(),
            scope: cs.scope.clone(),
        };
        is_covering_system(s, &sub).holds
    };
    if cs.sets.len() <= EXACT_SUBCOVER_LIMIT {
        for size in 0..=cs.sets.len() {
            let mut found = None;
            for_each_combination(cs.sets.len(), size, &mut |c| {
                if found.is_none() && sub_holds(c) {
                    found = Some(c.to_vec());
                }
            });
            if let Some(c) = found {
                return Ok(pick(c, true));
            }
        }
        unreachable!("the full family covers");
    }
    // Greedy: repeatedly take the set that serves the most unserved points.
    let serves: Vec<Vec<usize>> = cs
        .sets
        .iter()
        .map(|c| {
            points
                .iter()
                .copied()
                .filter(|&x| {
                    let one = CoveringSystem {
                        sets: vec![c.clone()],
                        scope: Subset::singleton(s.len(), x),
                    };
                    is_covering_system(s, &one).holds
                })
                .collect()
        })
        .collect();
    let mut unserved: Vec<usize> = points;
    let mut chosen = Vec::new();
    while !unserved.is_empty() {
        let (best, _) = serves
            .iter()
            .enumerate()
            .map(|(i, sv)| (i, sv.iter().filter(|x| unserved.contains(x)).count()))
            .max_by_key(|&(i, k)| (k, std::cmp::Reverse(i)))
            .expect("non-empty family");
        unserved.retain(|x| !serves[best].contains(x));
        chosen.push(best);
    }
    chosen.sort_unstable();
    Ok(pick(chosen, false))
}

fn for_each_combination<F: FnMut(&[usize])>(n: usize, k: usize, f: &mut F) {
    fn go<F: FnMut(&[usize])>(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

/// The family traced on `u`, as a covering system of the subspace at the scope points inside `u`.
pub fn restrict_covering_system(s: &Arc<Space>, cs: &CoveringSystem, u: &Subset) -> Result<(Arc<Space>, CoveringSystem)> {
    let (sub, inclusion) = subspace(s, u)?;
    let members = inclusion.assignment();
    let local = |set: &Subset| Subset::from_indices(sub.len(), (0..members.len()).filter(|&k| set.contains(members[k])));
    let restricted = CoveringSystem {
        sets: if sub.is_empty() {
            Vec::new()
        } else {
            cs.sets.iter().map(local).collect()
        },
        scope: local(&cs.scope),
    };
    Ok((sub, restricted))
}

/// Every ultrafilter converges. On a finite carrier the ultrafilters are the point filters.
pub fn is_compact(s: &Space) -> bool {
    (0..s.len()).all(|x| {
        s.filter_limits(&PrincipalFilter::point(s.len(), x))
            .map(|l| !l.is_empty())
            .unwrap_or(false)
    })
}
