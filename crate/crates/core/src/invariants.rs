//! Based spaces, torus and suspension pushouts, π₀ and budgeted πₙ.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::constructions::{pushout, PushoutResult};
use crate::error::{Error, Result};
use crate::homotopy::{cylinder, interval_space, move_components, relative_cylinder, Cylinder, RelativeCylinder};
use crate::map::SpaceMap;
use crate::search::{MapSearch, DEFAULT_NODE_BUDGET};
use crate::space::Space;
use crate::union_find::UnionFind;

/// A space with a chosen base point. The trivial map to `∗` is unique.
#[derive(Clone, Debug)]
pub struct BasedSpace {
    pub space: Arc<Space>,
    pub base: usize,
}

impl BasedSpace {
    pub fn new(space: Arc<Space>, base: usize) -> Result<Self> {
        if base >= space.len() {
            return Err(Error::UnknownPoint(format!("base point index {base}")));
        }
        Ok(BasedSpace { space, base })
    }

    pub fn point() -> Self {
        BasedSpace {
            space: Arc::new(Space::point()),
            base: 0,
        }
    }

    /// The discrete pair based at its first point.
    pub fn s0() -> Self {
        BasedSpace {
            space: Arc::new(Space::discrete(2)),
            base: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    /// `o_X : X → ∗`.
    pub fn trivial_map(&self) -> SpaceMap {
        SpaceMap::constant(self.space.clone(), Arc::new(Space::point()), 0).expect("map to the point")
    }

    /// `∗ → X` at the base point.
    pub fn base_inclusion(&self) -> SpaceMap {
        SpaceMap::new(Arc::new(Space::point()), self.space.clone(), vec![self.base]).expect("base point")
    }

    /// Continuous maps `self → y` sending base to base.
    pub fn based_maps(&self, y: &BasedSpace, budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut search = MapSearch::new(&self.space, &y.space).with_budget(budget);
        search.fix(self.base, y.base);
        search.all()
    }
}

/// `A ∨ B`, glued at the base points.
pub fn wedge(a: &BasedSpace, b: &BasedSpace) -> Result<BasedSpace> {
    let po = pushout(&a.base_inclusion(), &b.base_inclusion())?;
    BasedSpace::new(po.apex.clone(), po.leg0.apply(a.base))
}

/// `Σ_Y X`: the relative cylinder with its two ends folded onto `X`.
#[derive(Clone, Debug)]
pub struct Torus {
    pub relative: RelativeCylinder,
    pub pushout: PushoutResult,
    /// `τ : I_Y X → Σ_Y X`.
    pub tau: SpaceMap,
    /// `X → Σ_Y X`.
    pub inclusion: SpaceMap,
    /// `r : Σ_Y X → X` with `r ∘ τ = p`.
    pub r: SpaceMap,
}

impl Torus {
    pub fn space(&self) -> &Arc<Space> {
        &self.pushout.apex
    }
}

pub fn torus(i: &SpaceMap, n: usize) -> Result<Torus> {
    let relative = relative_cylinder(i, n)?;
    let (double, j) = relative.from_double()?;
    let id = SpaceMap::identity(i.codomain().clone());
    let fold = double.induced(&id, &id)?;
    let po = pushout(&j, &fold)?;
    let r = po.induced(&relative.p, &id)?;
    Ok(Torus {
        tau: po.leg0.clone(),
        inclusion: po.leg1.clone(),
        r,
        relative,
        pushout: po,
    })
}

/// `ΣA = Σ_∗A ∪_A ∗` with the quotient map from `A × I_n`.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub source: BasedSpace,
    pub length: usize,
    pub torus: Torus,
    /// `σ : Σ_∗A → ΣA`.
    pub sigma: SpaceMap,
    pub result: BasedSpace,
    /// `A × I_n → ΣA`.
    pub projection: SpaceMap,
}

impl Suspension {
    pub fn cylinder(&self) -> &Cylinder {
        &self.torus.relative.cylinder
    }

    /// Image of `(a, t)`.
    pub fn at(&self, a: usize, t: usize) -> usize {
        self.projection.apply(self.cylinder().at(a, t))
    }
}

pub fn suspension(a: &BasedSpace, n: usize) -> Result<Suspension> {
    let t = torus(&a.base_inclusion(), n)?;
    let po = pushout(&t.inclusion, &a.trivial_map())?;
    let result = BasedSpace::new(po.apex.clone(), po.leg1.apply(0))?;
    let projection = t.relative.quotient.projection.then(&t.tau)?.then(&po.leg0)?;
    Ok(Suspension {
        source: a.clone(),
        length: n,
        sigma: po.leg0.clone(),
        torus: t,
        result,
        projection,
    })
}

/// `A × I_{l₁} × … × I_{l_k}` with every point having the base in the first
/// coordinate or an end value in a later one collapsed to a single point.
pub fn iterated_suspension_direct(a: &BasedSpace, lengths: &[usize]) -> Result<BasedSpace> {
    let mut space = a.space.clone();
    let mut collapsed: Vec<bool> = (0..a.len()).map(|p| p == a.base).collect();
    for &l in lengths {
        let cyl = cylinder(&space, l)?;
        let mut next = vec![false; cyl.space().len()];
        for (p, c) in next.iter_mut().enumerate() {
            let (x, t) = cyl.product.split(p);
            *c = collapsed[x] || t == 0 || t == l;
        }
        space = cyl.space().clone();
        collapsed = next;
    }
    let first = collapsed.iter().position(|&c| c).expect("base is collapsed");
    let mut uf = UnionFind::new(space.len());
    for p in (0..space.len()).filter(|&p| collapsed[p]) {
        uf.union(first, p);
    }
    let q = crate::constructions::quotient_by_map(&space, &uf.class_map())?;
    BasedSpace::new(q.space.clone(), q.projection.apply(first))
}

/// Iterated suspensions of a based space with one interval length per level.
#[derive(Clone, Debug)]
pub struct SuspensionTower {
    pub base: BasedSpace,
    pub lengths: Vec<usize>,
    pub levels: Vec<Suspension>,
}

impl SuspensionTower {
    pub fn new(base: BasedSpace, lengths: &[usize]) -> Result<Self> {
        let mut levels: Vec<Suspension> = Vec::with_capacity(lengths.len());
        for &l in lengths {
            let prev = levels.last().map(|s| s.result.clone()).unwrap_or_else(|| base.clone());
            levels.push(suspension(&prev, l)?);
        }
        Ok(SuspensionTower {
            base,
            lengths: lengths.to_vec(),
            levels,
        })
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &BasedSpace {
        if k == 0 {
            &self.base
        } else {
            &self.levels[k - 1].result
        }
    }

    pub fn top(&self) -> &BasedSpace {
        self.level(self.dim())
    }
}

/// `Σᵏ S⁰` with the given interval length at each level.
pub fn sphere_model(k: usize, lengths: &[usize]) -> Result<SuspensionTower> {
    if lengths.len() != k {
        return Err(Error::InvalidArgument(format!("{k} lengths expected, got {}", lengths.len())));
    }
    SuspensionTower::new(BasedSpace::s0(), lengths)
}

/// The map `Σ(from) → Σ(to)` collapsing each level by `t ↦ min(t, l)`.
pub fn tower_collapse(from: &SuspensionTower, to: &SuspensionTower) -> Result<SpaceMap> {
    tower_map(from, to, |k, t| t.min(to.lengths[k]))
}

/// Map between towers over the same base given level-wise on interval coordinates.
fn tower_map<F>(from: &SuspensionTower, to: &SuspensionTower, f: F) -> Result<SpaceMap>
where
    F: Fn(usize, usize) -> usize,
{
    if from.dim() != to.dim() {
        return Err(Error::InvalidArgument("towers of different dimension".into()));
    }
    let mut current: Vec<usize> = (0..from.base.len()).collect();
    for k in 0..from.dim() {
        let (src, dst) = (&from.levels[k], &to.levels[k]);
        current = descend(src, |a, t| dst.at(current[a], f(k, t)))?;
    }
    let map = SpaceMap::new(from.top().space.clone(), to.top().space.clone(), current)?;
    map.require_continuous()?;
    Ok(map)
}

/// Assignment on `ΣA` from values on `A × I_n`, checked to be constant on fibres.
fn descend<F>(s: &Suspension, value: F) -> Result<Vec<usize>>
where
    F: Fn(usize, usize) -> usize,
{
    let cyl = s.cylinder();
    let mut out = vec![usize::MAX; s.result.len()];
    for p in 0..cyl.space().len() {
        let (a, t) = cyl.product.split(p);
        let v = value(a, t);
        let q = s.projection.apply(p);
        if out[q] == usize::MAX {
            out[q] = v;
        } else if out[q] != v {
            return Err(Error::InvalidArgument(format!(
                "values disagree on the collapsed point {}",
                s.result.space.label(q)
            )));
        }
    }
    Ok(out)
}

/// Path components: classes generated by pairs converging to each other, the steps an
/// interval can take.
pub fn pi0(x: &Space) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(x.len());
    for y in 0..x.len() {
        for v in x.point_limits(y).intersection(x.neighborhood(y)).iter() {
            uf.union(y, v);
        }
    }
    crate::union_find::classes_from_map(&uf.class_map())
}

/// Winding number of a closed walk `I_L → C_k`, where `C_k` joins `i` and `i ± 1 mod k`.
pub fn winding_oracle(f: &SpaceMap) -> Result<i64> {
    let l = f.domain().len().checked_sub(1).ok_or_else(|| Error::NotALoop("empty domain".into()))?;
    let interval = interval_space(l);
    if !f.domain().same_point_structure(&interval) {
        return Err(Error::NotALoop("domain is not an interval".into()));
    }
    let k = f.codomain().len();
    let y = f.codomain();
    let standard = (0..k).all(|v| {
        let mut expected = crate::subset::Subset::singleton(k, v);
        expected.insert((v + 1) % k);
        expected.insert((v + k - 1) % k);
        *y.point_limits(v) == expected
    });
    if k < 3 || !standard {
        return Err(Error::NotALoop("codomain is not a standard cycle".into()));
    }
    if f.apply(0) != f.apply(l) {
        return Err(Error::NotALoop("walk does not return to its start".into()));
    }
    let mut total: i64 = 0;
    for t in 0..l {
        let d = (f.apply(t + 1) + k - f.apply(t)) % k;
        total += match d {
            0 => 0,
            1 => 1,
            d if d == k - 1 => -1,
            _ => return Err(Error::NotALoop(format!("step {t} is not an edge"))),
        };
    }
    Ok(total / k as i64)
}

/// The walk `t ↦ f([(x, t)])` of a based map out of a one-level sphere, `x` the non-base point.
pub fn sphere_loop(s: &Suspension, f: &SpaceMap) -> Result<SpaceMap> {
    if s.source.len() != 2 {
        return Err(Error::InvalidArgument("loops need a suspension of S⁰".into()));
    }
    let x = 1 - s.source.base;
    let walk = (0..=s.length).map(|t| f.apply(s.at(x, t))).collect();
    SpaceMap::new(interval_space(s.length), f.codomain().clone(), walk)
}

#[derive(Clone, Debug)]
pub struct PiNOptions {
    pub budget: u64,
    /// Fail with `BudgetExhausted` unless the last two budgets agree.
    pub require_stable: bool,
    /// Largest class count for which a group table is computed.
    pub group_table_limit: usize,
}

impl Default for PiNOptions {
    fn default() -> Self {
        PiNOptions {
            budget: DEFAULT_NODE_BUDGET,
            require_stable: false,
            group_table_limit: 64,
        }
    }
}

/// Based maps `Σⁿ_L S⁰ → X` split into based homotopy classes.
#[derive(Clone, Debug)]
pub struct BasedClasses {
    pub tower: SuspensionTower,
    pub maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl BasedClasses {
    pub fn compute(tower: SuspensionTower, x: &BasedSpace, budget: u64) -> Result<Self> {
        let maps = tower.top().based_maps(x, budget)?;
        let index: HashMap<Vec<usize>, usize> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let class_of = move_components(&x.space, &maps, &index);
        let classes = crate::union_find::classes_from_map(&class_of);
        Ok(BasedClasses {
            tower,
            maps,
            index,
            class_of,
            classes,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of_map(&self, assignment: &[usize]) -> Option<usize> {
        self.index.get(assignment).map(|&i| self.class_of[i])
    }

    pub fn representative(&self, class: usize) -> &[usize] {
        &self.maps[self.classes[class][0]]
    }
}

/// Partial multiplication table on the classes at the last budget.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupTable {
    pub identity: usize,
    /// `[a, b, a·b]` for every pair whose representatives fit in the budget.
    pub products: Vec<[usize; 3]>,
    /// Class of the reversed representative of each class.
    pub inverses: Vec<usize>,
    pub identity_law: bool,
    pub inverse_law: bool,
    pub associative: bool,
    pub associativity_triples: usize,
}

impl GroupTable {
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.products.iter().find(|p| p[0] == a && p[1] == b).map(|p| p[2])
    }

    pub fn laws_hold(&self) -> bool {
        self.identity_law && self.inverse_law && self.associative
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PiNResult {
    pub n: usize,
    pub budgets: Vec<usize>,
    pub class_counts: Vec<usize>,
    /// For each consecutive pair of budgets, the class of each class under extension.
    pub stabilization_maps: Vec<Vec<usize>>,
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_table: Option<GroupTable>,
    #[serde(skip)]
    pub levels: Vec<BasedClasses>,
}

impl PiNResult {
    pub fn last(&self) -> &BasedClasses {
        self.levels.last().expect("at least one budget")
    }
}

/// `[Σⁿ S⁰, X]` per interval length in `budgets`, each level of the sphere having that length.
pub fn pi_n(x: &BasedSpace, n: usize, budgets: &[usize], opts: &PiNOptions) -> Result<PiNResult> {
    if budgets.is_empty() || budgets.contains(&0) || budgets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("budgets must be positive and increasing".into()));
    }
    let mut towers = TowerCache::default();
    let levels = budgets
        .iter()
        .map(|&l| BasedClasses::compute(towers.get(&vec![l; n])?, x, opts.budget))
        .collect::<Result<Vec<_>>>()?;
    let mut stabilization_maps = Vec::new();
    for w in levels.windows(2) {
        let c = tower_collapse(&w[1].tower, &w[0].tower)?;
        let map = w[0]
            .classes
            .iter()
            .map(|class| {
                let pulled = pull_back(&c, &w[0].maps[class[0]]);
                w[1].class_of_map(&pulled).expect("based map")
            })
            .collect::<Vec<usize>>();
        stabilization_maps.push(map);
    }
    let stabilized = match (stabilization_maps.last(), levels.len()) {
        (Some(m), k) => is_bijection(m, levels[k - 1].len()),
        (None, _) => false,
    };
    if opts.require_stable && !stabilized {
        return Err(Error::BudgetExhausted(format!(
            "class counts {:?} have not settled",
            levels.iter().map(|l| l.len()).collect::<Vec<_>>()
        )));
    }
    let group_table = if n >= 1 && levels.last().map(|l| l.len()).unwrap_or(0) <= opts.group_table_limit {
        Some(group_table(x, n, budgets, &levels, &stabilization_maps, &mut towers)?)
    } else {
        None
    };
    Ok(PiNResult {
        n,
        budgets: budgets.to_vec(),
        class_counts: levels.iter().map(|l| l.len()).collect(),
        stabilization_maps,
        stabilized,
        group_table,
        levels,
    })
}

fn is_bijection(m: &[usize], target: usize) -> bool {
    let mut seen = vec![false; target];
    m.len() == target && m.iter().all(|&c| !std::mem::replace(&mut seen[c], true))
}

fn pull_back(c: &SpaceMap, f: &[usize]) -> Vec<usize> {
    c.assignment().iter().map(|&q| f[q]).collect()
}

#[derive(Default)]
struct TowerCache {
    towers: BTreeMap<Vec<usize>, SuspensionTower>,
}

impl TowerCache {
    fn get(&mut self, lengths: &[usize]) -> Result<SuspensionTower> {
        if let Some(t) = self.towers.get(lengths) {
            return Ok(t.clone());
        }
        let t = sphere_model(lengths.len(), lengths)?;
        self.towers.insert(lengths.to_vec(), t.clone());
        Ok(t)
    }
}

fn group_table(
    x: &BasedSpace,
    n: usize,
    budgets: &[usize],
    levels: &[BasedClasses],
    stabilization: &[Vec<usize>],
    towers: &mut TowerCache,
) -> Result<GroupTable> {
    let last = levels.last().expect("budgets");
    let l = *budgets.last().expect("budgets");
    let count = last.len();
    // Earliest budget at which each class appears, with a representative there.
    let mut origin: Vec<Option<(usize, usize)>> = vec![None; count];
    for k in 0..levels.len() {
        for c in 0..levels[k].len() {
            let image = stabilization[k..].iter().fold(c, |c, m| m[c]);
            origin[image].get_or_insert((k, c));
        }
    }
    let origin: Vec<(usize, usize)> = origin.into_iter().map(|o| o.expect("every class appears")).collect();
    let full = last.tower.clone();
    let classify = |map: &[usize]| last.class_of_map(map).expect("based map");

    // Representatives on lengths [L, …, L, ℓ].
    let mut reps: Vec<(usize, Vec<usize>)> = Vec::with_capacity(count);
    for &(k, c) in &origin {
        let ell = budgets[k];
        let mut target = vec![l; n];
        target[n - 1] = ell;
        let widened = towers.get(&target)?;
        let collapse = tower_collapse(&widened, &levels[k].tower)?;
        reps.push((ell, pull_back(&collapse, levels[k].representative(c))));
    }
    let constant = vec![x.base; full.top().len()];
    let identity = classify(&constant);

    let mut inverses = Vec::with_capacity(count);
    for (ell, rep) in &reps {
        let mut lengths = vec![l; n];
        lengths[n - 1] = *ell;
        let t = towers.get(&lengths)?;
        let rev = tower_map(&t, &t, |k, s| if k == n - 1 { ell - s } else { s })?;
        let reversed = pull_back(&rev, rep);
        let back = tower_collapse(&full, &t)?;
        inverses.push(classify(&pull_back(&back, &reversed)));
    }

    let mut table = vec![vec![None; count]; count];
    let mut products = Vec::new();
    for a in 0..count {
        for b in 0..count {
            let (la, lb) = (reps[a].0, reps[b].0);
            if la + lb > l {
                continue;
            }
            let mut lengths = vec![l; n];
            lengths[n - 1] = la;
            let ta = towers.get(&lengths)?;
            lengths[n - 1] = lb;
            let tb = towers.get(&lengths)?;
            lengths[n - 1] = la + lb;
            let tab = towers.get(&lengths)?;
            let joined = concatenate_last(&tab, &ta, &reps[a].1, &tb, &reps[b].1)?;
            let back = tower_collapse(&full, &tab)?;
            let c = classify(&pull_back(&back, &joined));
            table[a][b] = Some(c);
            products.push([a, b, c]);
        }
    }

    let identity_law = (0..count).all(|a| {
        [table[identity][a], table[a][identity]]
            .iter()
            .all(|p| p.map(|c| c == a).unwrap_or(true))
    });
    let inverse_law = (0..count).all(|a| {
        let i = inverses[a];
        [table[a][i], table[i][a]].iter().all(|p| p.map(|c| c == identity).unwrap_or(true))
    });
    let mut associative = true;
    let mut associativity_triples = 0;
    for a in 0..count {
        for b in 0..count {
            for c in 0..count {
                let left = table[a][b].and_then(|ab| table[ab][c]);
                let right = table[b][c].and_then(|bc| table[a][bc]);
                if let (Some(u), Some(v)) = (left, right) {
                    associativity_triples += 1;
                    associative &= u == v;
                }
            }
        }
    }
    Ok(GroupTable {
        identity,
        products,
        inverses,
        identity_law,
        inverse_law,
        associative,
        associativity_triples,
    })
}

/// `f` followed by `g` along the last interval coordinate, on `joined` whose last
/// length is the sum of theirs.
fn concatenate_last(
    joined: &SuspensionTower,
    ta: &SuspensionTower,
    f: &[usize],
    tb: &SuspensionTower,
    g: &[usize],
) -> Result<Vec<usize>> {
    let n = joined.dim();
    let la = ta.lengths[n - 1];
    let (sa, sb) = (&ta.levels[n - 1], &tb.levels[n - 1]);
    descend(&joined.levels[n - 1], |a, t| if t <= la { f[sa.at(a, t)] } else { g[sb.at(a, t - la)] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{from_graph, GraphData};
    use crate::homotopy::homotopy_classes;
    use crate::search::is_isomorphic;

    fn cycle(k: usize) -> Arc<Space> {
        Arc::new(from_graph(&GraphData::cycle(k)))
    }

    #[test]
    fn wedges() {
        let s0 = BasedSpace::s0();
        let w = wedge(&s0, &s0).unwrap();
        assert!(is_isomorphic(&w.space, &Space::discrete(3)));
        let p = BasedSpace::point();
        assert!(is_isomorphic(&wedge(&p, &p).unwrap().space, &Space::point()));
        let i2 = BasedSpace::new(interval_space(2), 0).unwrap();
        assert!(is_isomorphic(&wedge(&i2, &p).unwrap().space, &i2.space));
    }

    #[test]
    fn tori() {
        let pt = Arc::new(Space::point());
        for n in 3..=6 {
            let t = torus(&SpaceMap::from_empty(pt.clone()), n).unwrap();
            assert!(is_isomorphic(t.space(), &cycle(n)), "n = {n}");
            assert_eq!(t.tau.then(&t.r).unwrap(), t.relative.p);
        }
        let i2 = interval_space(2);
        let t = torus(&SpaceMap::identity(i2.clone()), 2).unwrap();
        assert!(is_isomorphic(t.space(), &i2));
    }

    #[test]
    fn suspensions_of_s0_are_cycles() {
        for n in 2..=8 {
            let s = suspension(&BasedSpace::s0(), n).unwrap();
            assert!(is_isomorphic(&s.result.space, &cycle(n)), "n = {n}");
            let direct = iterated_suspension_direct(&BasedSpace::s0(), &[n]).unwrap();
            assert!(is_isomorphic(&s.result.space, &direct.space));
        }
        let s = suspension(&BasedSpace::point(), 3).unwrap();
        assert_eq!(s.result.len(), 1);
    }

    #[test]
    fn two_sphere_matches_direct_quotient() {
        let tower = sphere_model(2, &[3, 3]).unwrap();
        let direct = iterated_suspension_direct(&BasedSpace::s0(), &[3, 3]).unwrap();
        assert_eq!(tower.top().len(), direct.len());
        assert!(is_isomorphic(&tower.top().space, &direct.space));
    }

    #[test]
    fn components() {
        assert_eq!(pi0(&cycle(5)).len(), 1);
        assert_eq!(pi0(&Space::discrete(4)).len(), 4);
        let p3 = Arc::new(from_graph(&GraphData::path(2)));
        let two = crate::constructions::coproduct(&p3, &p3).unwrap().space;
        assert_eq!(pi0(&two).len(), 2);
        assert_eq!(homotopy_classes(&Arc::new(Space::point()), &two).unwrap().len(), 2);
    }

    #[test]
    fn windings() {
        let c5 = cycle(5);
        let around = SpaceMap::new(interval_space(5), c5.clone(), vec![0, 1, 2, 3, 4, 0]).unwrap();
        assert_eq!(winding_oracle(&around).unwrap(), 1);
        let back = SpaceMap::new(interval_space(5), c5.clone(), vec![0, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(winding_oracle(&back).unwrap(), -1);
        let still = SpaceMap::constant(interval_space(3), c5.clone(), 2).unwrap();
        assert_eq!(winding_oracle(&still).unwrap(), 0);
        let open = SpaceMap::new(interval_space(1), c5, vec![0, 1]).unwrap();
        assert!(matches!(winding_oracle(&open), Err(Error::NotALoop(_))));
    }

    #[test]
    fn fundamental_group_of_c5() {
        let x = BasedSpace::new(cycle(5), 0).unwrap();
        let r = pi_n(&x, 1, &[5, 6, 10], &PiNOptions::default()).unwrap();
        assert_eq!(r.class_counts, vec![3, 3, 5]);
        assert!(!r.stabilized);
        let table = r.group_table.as_ref().unwrap();
        assert!(table.laws_hold());
        let last = r.last();
        let s = &last.tower.levels[0];
        let winding = |c: usize| {
            let f = SpaceMap::new(last.tower.top().space.clone(), x.space.clone(), last.representative(c).to_vec()).unwrap();
            winding_oracle(&sphere_loop(s, &f).unwrap()).unwrap()
        };
        let mut ws: Vec<i64> = (0..last.len()).map(winding).collect();
        ws.sort();
        assert_eq!(ws, vec![-2, -1, 0, 1, 2]);
        let one = (0..last.len()).find(|&c| winding(c) == 1).unwrap();
        let two = table.product(one, one).unwrap();
        assert_eq!(winding(two), 2);
    }

    #[test]
    fn trivial_fundamental_groups() {
        for space in [Arc::new(Space::point()), Arc::new(Space::indiscrete(2))] {
            let x = BasedSpace::new(space, 0).unwrap();
            let r = pi_n(&x, 1, &[2, 3, 4], &PiNOptions::default()).unwrap();
            assert_eq!(r.class_counts, vec![1, 1, 1]);
            assert!(r.stabilized);
        }
        let r = pi_n(&BasedSpace::point(), 2, &[2, 3], &PiNOptions::default()).unwrap();
        assert_eq!(r.class_counts, vec![1, 1]);
    }

    #[test]
    fn unstable_budgets_can_be_rejected() {
        let x = BasedSpace::new(cycle(5), 0).unwrap();
        let opts = PiNOptions {
            require_stable: true,
            ..PiNOptions::default()
        };
        assert!(matches!(pi_n(&x, 1, &[5, 10], &opts), Err(Error::BudgetExhausted(_))));
    }
}
