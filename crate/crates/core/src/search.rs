//! Backtracking over continuous maps and isomorphisms.
//!
//! Every exact decision in the crate (hom-set enumeration, retracts, homotopy
//! extension, lifts) reduces to finding maps `X → Y` that satisfy the
//! point-filter continuity rule together with per-point candidate sets.
//! Points are assigned in a connectivity-first order so that each new point
//! is constrained by as many already assigned neighbours as possible.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::map::check_continuity_all_filters;
use crate::space::{PointSet, Space};
use crate::subset::Subset;

/// Default node budget for a single search.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A search for continuous maps `domain → codomain` with per-point candidate sets.
#[derive(Clone)]
pub struct MapSearch<'a> {
    domain: &'a Space,
    codomain: &'a Space,
    allowed: Vec<Subset>,
    budget: u64,
}

struct Plan {
    order: Vec<usize>,
    /// For each position: earlier points `u` with `v ∈ lim u`.
    limit_of: Vec<Vec<usize>>,
    /// For each position: earlier points `u` with `u ∈ lim v`.
    limit_in: Vec<Vec<usize>>,
}

impl<'a> MapSearch<'a> {
    pub fn new(domain: &'a Space, codomain: &'a Space) -> Self {
        MapSearch {
            domain,
            codomain,
            allowed: vec![Subset::full(codomain.len()); domain.len()],
            budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Require `f(x) = v`.
    pub fn fix(&mut self, x: usize, v: usize) -> &mut Self {
        let keep = self.allowed[x].contains(v);
        self.allowed[x] = Subset::empty(self.codomain.len());
        if keep {
            self.allowed[x].insert(v);
        }
        self
    }

    /// Require `f(x) ∈ set`.
    pub fn restrict(&mut self, x: usize, set: &Subset) -> &mut Self {
        self.allowed[x].intersect_with(set);
        self
    }

    fn plan(&self) -> Plan {
        let n = self.domain.len();
        let mut placed = vec![false; n];
        let mut score = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| (usize::MAX - score[v], self.allowed[v].count(), v))
                .expect("unplaced point");
            placed[v] = true;
            order.push(v);
            for u in self.domain.point_limits(v).iter().chain(self.domain.neighborhood(v).iter()) {
                if !placed[u] {
                    score[u] += 1;
                }
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let limit_of = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                self.domain
                    .neighborhood(v)
                    .iter()
                    .filter(|&u| u != v && pos[u] < i)
                    .collect()
            })
            .collect();
        let limit_in = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                self.domain
                    .point_limits(v)
                    .iter()
                    .filter(|&u| u != v && pos[u] < i)
                    .collect()
            })
            .collect();
        Plan {
            order,
            limit_of,
            limit_in,
        }
    }

    /// Visit every solution (assignments indexed by domain point) until the visitor breaks.
    /// Returns `true` when the visitor stopped the search early.
    pub fn for_each<F>(&self, mut visit: F) -> Result<bool>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.domain.is_empty() {
            return Ok(visit(&[]).is_break());
        }
        if self.allowed.iter().any(Subset::is_empty) {
            return Ok(false);
        }
        let exact = self.domain.is_point_limit() && self.codomain.is_point_limit();
        let plan = self.plan();
        let mut state = State {
            assign: vec![usize::MAX; self.domain.len()],
            nodes: 0,
            budget: self.budget,
        };
        let mut filtered = |f: &[usize]| {
            if exact || check_continuity_all_filters(self.domain, self.codomain, f).is_continuous() {
                visit(f)
            } else {
                ControlFlow::Continue(())
            }
        };
        match self.descend(&plan, 0, &mut state, &mut filtered)? {
            ControlFlow::Break(()) => Ok(true),
            ControlFlow::Continue(()) => Ok(false),
        }
    }

    fn descend<F>(&self, plan: &Plan, depth: usize, st: &mut State, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == plan.order.len() {
            return Ok(visit(&st.assign));
        }
        let v = plan.order[depth];
        let mut cand = self.allowed[v].clone();
        for &u in &plan.limit_of[depth] {
            cand.intersect_with(self.codomain.point_limits(st.assign[u]));
        }
        for &u in &plan.limit_in[depth] {
            cand.intersect_with(self.codomain.neighborhood(st.assign[u]));
        }
        for c in cand.iter() {
            st.nodes += 1;
            if st.nodes > st.budget {
                return Err(Error::SearchSpaceTooLarge { budget: st.budget });
            }
            st.assign[v] = c;
            if self.descend(plan, depth + 1, st, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        st.assign[v] = usize::MAX;
        Ok(ControlFlow::Continue(()))
    }

    pub fn first(&self) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        self.for_each(|f| {
            found = Some(f.to_vec());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    /// Every solution, sorted lexicographically by assignment.
    pub fn all(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.for_each(|f| {
            out.push(f.to_vec());
            ControlFlow::Continue(())
        })?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn count(&self) -> Result<u64> {
        let mut n = 0u64;
        self.for_each(|_| {
            n += 1;
            ControlFlow::Continue(())
        })?;
        Ok(n)
    }
}

struct State {
    assign: Vec<usize>,
    nodes: u64,
    budget: u64,
}

/// `|codomain|^|domain|`, saturating.
pub fn exponential_size(domain: usize, codomain: usize) -> u128 {
    (codomain as u128).checked_pow(domain as u32).unwrap_or(u128::MAX)
}

/// Up to `k` indices spread evenly over `0..len`, including both ends.
pub fn evenly_spaced(len: usize, k: usize) -> Vec<usize> {
    if len == 0 || k == 0 {
        return Vec::new();
    }
    let k = k.min(len);
    let mut out: Vec<usize> = (0..k).map(|j| j * (len - 1) / (k - 1).max(1)).collect();
    out.dedup();
    out
}

/// All continuous maps, sorted, guarded by a cap on `|codomain|^|domain|`.
pub fn hom_set(domain: &Space, codomain: &Space, cap: u128) -> Result<Vec<Vec<usize>>> {
    let size = exponential_size(domain.len(), codomain.len());
    if size > cap {
        return Err(Error::ExponentialTooLarge { size, cap });
    }
    MapSearch::new(domain, codomain).all()
}

/// An isomorphism `a → b` of point-limit structures that maps each `(x, y)` in `fixed`
/// to `f(x) = y`, if one exists. The search is exhaustive.
pub fn find_isomorphism(a: &Space, b: &Space, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let colors = refine_colors(a, b, fixed)?;
    let (ca, cb) = colors.split_at(n);

    // Place scarce colours first, then follow connectivity.
    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in ca {
        *class_size.entry(c).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut score = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (usize::MAX - score[v], class_size[&ca[v]], v))
            .expect("unplaced");
        placed[v] = true;
        order.push(v);
        for u in a.point_limits(v).iter().chain(a.neighborhood(v).iter()) {
            score[u] += 1;
        }
    }
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if iso_descend(a, b, ca, cb, &order, 0, &mut assign, &mut used) {
        Some(assign)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn iso_descend(
    a: &Space,
    b: &Space,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    assign: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.len() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let fu = assign[u];
            a.converges(u, v) == b.converges(fu, w) && a.converges(v, u) == b.converges(w, fu)
        }) && (a.converges(v, v) == b.converges(w, w));
        if !consistent {
            continue;
        }
        assign[v] = w;
        used[w] = true;
        if iso_descend(a, b, ca, cb, order, depth + 1, assign, used) {
            return true;
        }
        used[w] = false;
        assign[v] = usize::MAX;
    }
    false
}

/// Colour refinement over the disjoint union of `a` and `b`; `None` when the colour
/// histograms already rule out an isomorphism.
fn refine_colors(a: &Space, b: &Space, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = a.len();
    let total = 2 * n;
    let space_of = |i: usize| if i < n { (a, i) } else { (b, i - n) };
    let mut tag = vec![0usize; total];
    for (k, &(x, y)) in fixed.iter().enumerate() {
        tag[x] = k + 1;
        tag[n + y] = k + 1;
    }
    let mut colors: Vec<usize> = {
        let keys: Vec<(usize, usize, usize)> = (0..total)
            .map(|i| {
                let (s, p) = space_of(i);
                (tag[i], s.point_limits(p).count(), s.neighborhood(p).count())
            })
            .collect();
        compress(&keys)
    };
    let mut classes = count_distinct(&colors);
    loop {
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..total)
            .map(|i| {
                let (s, p) = space_of(i);
                let off = if i < n { 0 } else { n };
                let mut outs: Vec<usize> = s.point_limits(p).iter().map(|q| colors[q + off]).collect();
                let mut ins: Vec<usize> = s.neighborhood(p).iter().map(|q| colors[q + off]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colors[i], outs, ins)
            })
            .collect();
        let next = compress(&keys);
        let next_classes = count_distinct(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut hist: BTreeMap<usize, isize> = BTreeMap::new();
    for (i, &c) in colors.iter().enumerate() {
        *hist.entry(c).or_default() += if i < n { 1 } else { -1 };
    }
    if hist.values().any(|&v| v != 0) {
        return None;
    }
    Some(colors)
}

fn compress<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    for k in keys {
        let next = ids.len();
        ids.entry(k.clone()).or_insert(next);
    }
    // Re-number by sorted key order so colours are independent of point order.
    let sorted: BTreeMap<K, usize> = ids.keys().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| sorted[k]).collect()
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn is_isomorphic(a: &Space, b: &Space) -> bool {
    find_isomorphism(a, b, &[]).is_some()
}

/// Every point-limit space on `n` points, one per isomorphism class, in a fixed order.
pub fn spaces_up_to_iso(n: usize) -> Vec<Space> {
    let choices: Vec<Vec<Subset>> = (0..n)
        .map(|y| {
            let others: Vec<usize> = (0..n).filter(|&x| x != y).collect();
            (0u64..1 << others.len())
                .map(|m| {
                    let mut s = Subset::singleton(n, y);
                    for (k, &x) in others.iter().enumerate() {
                        if m >> k & 1 == 1 {
                            s.insert(x);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Space> = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let limits = (0..n).map(|y| choices[y][pick[y]].clone()).collect();
        let space = Space::new(PointSet::numbered(n), limits).expect("centered by construction");
        if !out.iter().any(|t| is_isomorphic(t, &space)) {
            out.push(space);
        }
        let mut k = 0;
        while k < n {
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}
