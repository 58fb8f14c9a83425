//! Discrete cylinders `X × I_n`, homotopies, the gluing calculus and homotopy classes.
//!
//! The unit interval is replaced by the graded family of paths `I_n`. A homotopy of
//! length `n` is a continuous map `X × I_n → Y`; equivalently a chain of `n` one-step
//! homotopies.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::builders::{from_graph, GraphData};
use crate::constructions::{
    continuous_maps, product, pushout, quotient_by_map, Product, PushoutResult, Quotient,
    DEFAULT_EXPONENTIAL_CAP,
};
use crate::error::{Error, Result};
use crate::map::{same_space, SpaceMap};
use crate::search::{exponential_size, find_isomorphism, MapSearch};
use crate::space::Space;
use crate::subset::Subset;
use crate::union_find::{classes_from_map, UnionFind};

/// Default cap on the number of maps visited by a shortest-chain search.
pub const DEFAULT_MAX_VISITED: usize = 500_000;

/// The path `I_n` on `{0..n}` with its end inclusions and projection.
#[derive(Clone, Debug)]
pub struct IntervalObject {
    pub length: usize,
    pub space: Arc<Space>,
    pub end0: SpaceMap,
    pub end1: SpaceMap,
    pub proj: SpaceMap,
}

impl IntervalObject {
    pub fn new(length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidArgument("interval length must be positive".into()));
        }
        let space = interval_space(length);
        let pt = Arc::new(Space::point());
        Ok(IntervalObject {
            length,
            end0: SpaceMap::new(pt.clone(), space.clone(), vec![0])?,
            end1: SpaceMap::new(pt.clone(), space.clone(), vec![length])?,
            proj: SpaceMap::constant(space.clone(), pt, 0)?,
            space,
        })
    }
}

pub fn interval_space(length: usize) -> Arc<Space> {
    Arc::new(from_graph(&GraphData::path(length)))
}

/// `X × I_n` with `i₀, i₁ : X → X × I_n` and `p : X × I_n → X`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub base: Arc<Space>,
    pub interval: IntervalObject,
    pub product: Product,
    pub i0: SpaceMap,
    pub i1: SpaceMap,
    pub p: SpaceMap,
}

impl Cylinder {
    pub fn space(&self) -> &Arc<Space> {
        &self.product.space
    }

    pub fn length(&self) -> usize {
        self.interval.length
    }

    /// Index of `(x, t)`.
    #[inline]
    pub fn at(&self, x: usize, t: usize) -> usize {
        self.product.pair(x, t)
    }

    /// `If = f × 1 : X × I_n → Y × I_n`.
    pub fn map(&self, f: &SpaceMap, target: &Cylinder) -> Result<SpaceMap> {
        if self.length() != target.length() {
            return Err(Error::InvalidArgument("cylinders of different lengths".into()));
        }
        let id = SpaceMap::new(self.product.right.clone(), target.product.right.clone(), (0..=self.length()).collect())?;
        self.product.map_to(&target.product, f, &id)
    }
}

pub fn cylinder(x: &Arc<Space>, n: usize) -> Result<Cylinder> {
    let interval = IntervalObject::new(n)?;
    let product = product(x, &interval.space)?;
    let m = x.len();
    let i0 = SpaceMap::new(x.clone(), product.space.clone(), (0..m).map(|a| product.pair(a, 0)).collect())?;
    let i1 = SpaceMap::new(x.clone(), product.space.clone(), (0..m).map(|a| product.pair(a, n)).collect())?;
    let p = product.proj0.clone();
    Ok(Cylinder {
        base: x.clone(),
        interval,
        product,
        i0,
        i1,
        p,
    })
}

fn check_parallel(f: &SpaceMap, g: &SpaceMap) -> Result<()> {
    if !same_space(f.domain(), g.domain()) || !same_space(f.codomain(), g.codomain()) {
        return Err(Error::DomainMismatch);
    }
    if !f.domain().is_point_limit() || !f.codomain().is_point_limit() {
        return Err(Error::KindMismatch);
    }
    Ok(())
}

/// `∀ x ∈ lim ẏ : g(x) ∈ lim f(y)˙ ∧ f(x) ∈ lim g(y)˙`.
pub fn one_step_raw(x: &Space, y: &Space, f: &[usize], g: &[usize]) -> bool {
    (0..x.len()).all(|v| {
        x.point_limits(v)
            .iter()
            .all(|u| y.converges(f[v], g[u]) && y.converges(g[v], f[u]))
    })
}

/// Whether `f` and `g` are continuous and joined by a homotopy of length one.
pub fn one_step(f: &SpaceMap, g: &SpaceMap) -> Result<bool> {
    check_parallel(f, g)?;
    Ok(f.is_continuous()
        && g.is_continuous()
        && one_step_raw(f.domain(), f.codomain(), f.assignment(), g.assignment()))
}

/// Every continuous `g` with a one-step homotopy from `f`, sorted.
pub fn one_step_neighbors(x: &Space, y: &Space, f: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mut search = MapSearch::new(x, y);
    for v in 0..x.len() {
        let mut allowed = Subset::full(y.len());
        for u in x.point_limits(v) {
            allowed.intersect_with(y.neighborhood(f[u]));
        }
        for u in x.neighborhood(v) {
            allowed.intersect_with(y.point_limits(f[u]));
        }
        search.restrict(v, &allowed);
    }
    search.all()
}

/// A continuous `H : X × I_n → Y`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub cylinder: Cylinder,
    pub map: SpaceMap,
}

impl Homotopy {
    pub fn new(cylinder: Cylinder, map: SpaceMap) -> Result<Self> {
        if !same_space(map.domain(), cylinder.space()) {
            return Err(Error::DomainMismatch);
        }
        map.require_continuous()?;
        Ok(Homotopy { cylinder, map })
    }

    pub fn length(&self) -> usize {
        self.cylinder.length()
    }

    pub fn codomain(&self) -> &Arc<Space> {
        self.map.codomain()
    }

    /// `H(−, t)`.
    pub fn stage(&self, t: usize) -> SpaceMap {
        let base = &self.cylinder.base;
        let assignment = (0..base.len()).map(|x| self.map.apply(self.cylinder.at(x, t))).collect();
        SpaceMap::new(base.clone(), self.codomain().clone(), assignment).expect("stage")
    }

    pub fn start(&self) -> SpaceMap {
        self.stage(0)
    }

    pub fn end(&self) -> SpaceMap {
        self.stage(self.length())
    }

    pub fn stages(&self) -> Vec<SpaceMap> {
        (0..=self.length()).map(|t| self.stage(t)).collect()
    }

    /// The stationary homotopy `f ∘ p` of length `n`.
    pub fn constant(f: &SpaceMap, n: usize) -> Result<Self> {
        let cyl = cylinder(f.domain(), n)?;
        let map = cyl.p.then(f)?;
        Homotopy::new(cyl, map)
    }

    /// The homotopy whose stages are `chain`; a single map gives a constant homotopy.
    pub fn from_chain(chain: &[SpaceMap]) -> Result<Self> {
        let first = chain
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty chain".into()))?;
        if chain.len() == 1 {
            return Homotopy::constant(first, 1);
        }
        for g in &chain[1..] {
            check_parallel(first, g)?;
        }
        let n = chain.len() - 1;
        let cyl = cylinder(first.domain(), n)?;
        let assignment = (0..cyl.space().len())
            .map(|p| {
                let (x, t) = cyl.product.split(p);
                chain[t].apply(x)
            })
            .collect();
        let map = SpaceMap::new(cyl.space().clone(), first.codomain().clone(), assignment)?;
        Homotopy::new(cyl, map)
    }

    /// `H(x, n − t)`.
    pub fn reverse(&self) -> Self {
        let n = self.length();
        let mut stages = self.stages();
        stages.reverse();
        debug_assert_eq!(stages.len(), n + 1);
        Homotopy::from_chain(&stages).expect("reversed homotopy is continuous")
    }
}

/// The pushout `I_m ∪_{1∼0} I_n`.
pub fn glue_intervals(m: usize, n: usize) -> Result<(PushoutResult, IntervalObject, IntervalObject)> {
    let a = IntervalObject::new(m)?;
    let b = IntervalObject::new(n)?;
    let end0 = b.end0.retarget(a.end1.domain().clone(), b.space.clone())?;
    let po = pushout(&a.end1, &end0)?;
    Ok((po, a, b))
}

/// End-preserving isomorphism `I_m ∪_{1∼0} I_n → I_{m+n}`, if any.
pub fn gluing_substitute(m: usize, n: usize) -> Result<Option<Vec<usize>>> {
    let (po, _, _) = glue_intervals(m, n)?;
    let target = interval_space(m + n);
    Ok(find_isomorphism(&po.apex, &target, &[(po.leg0.apply(0), 0), (po.leg1.apply(n), m + n)]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub length: usize,
    /// `I_n ∪_{1∼0} I_n ≅ I_n` compatibly with the ends.
    pub literal_holds: bool,
    /// `I_n ∪_{1∼0} I_n ≅ I_{2n}` compatibly with the ends.
    pub substitute_holds: bool,
    pub substitute_iso: Option<Vec<usize>>,
}

pub fn gluing_check(iv: &IntervalObject) -> Result<GluingReport> {
    let n = iv.length;
    let (po, _, _) = glue_intervals(n, n)?;
    let literal = find_isomorphism(&po.apex, &iv.space, &[(po.leg0.apply(0), 0), (po.leg1.apply(n), n)]);
    let substitute = gluing_substitute(n, n)?;
    Ok(GluingReport {
        length: n,
        literal_holds: literal.is_some(),
        substitute_holds: substitute.is_some(),
        substitute_iso: substitute,
    })
}

/// `F ⋆ G`, parameterized over `I_m ∪ I_n ≅ I_{m+n}`.
pub fn concatenate(f: &Homotopy, g: &Homotopy) -> Result<Homotopy> {
    check_parallel(&f.start(), &g.start())?;
    if f.end() != g.start() {
        return Err(Error::EndMismatch);
    }
    let (m, n) = (f.length(), g.length());
    let (po, _, _) = glue_intervals(m, n)?;
    let iso = gluing_substitute(m, n)?
        .ok_or_else(|| Error::InvalidArgument("interval gluing has no end-preserving isomorphism".into()))?;
    // Stage of I_{m+n} at s comes from the pushout class u⁻¹(s).
    let mut source = vec![None; m + n + 1];
    for (c, &s) in iso.iter().enumerate() {
        let rep = po.quotient.classes[c][0];
        source[s] = Some(if rep <= m { f.stage(rep) } else { g.stage(rep - m - 1) });
    }
    let chain: Vec<SpaceMap> = source.into_iter().map(|s| s.expect("bijective")).collect();
    Homotopy::from_chain(&chain)
}

/// Connected components of the one-step relation restricted to `maps`.
///
/// Components coincide with those of single-point moves `f ↦ f[v ↦ c]` with
/// `c ∈ lim f(v)˙` and `f(v) ∈ lim ċ`: if `f` and `g` are one step apart, every map
/// agreeing with `g` on some points and with `f` elsewhere is continuous and one step
/// from both.
pub fn move_components(y: &Space, maps: &[Vec<usize>], index: &HashMap<Vec<usize>, usize>) -> Vec<usize> {
    let edges: Vec<Vec<usize>> = maps
        .par_iter()
        .map(|f| {
            let mut out = Vec::new();
            let mut g = f.clone();
            for v in 0..f.len() {
                let fv = f[v];
                for c in y.point_limits(fv).intersection(y.neighborhood(fv)).iter() {
                    if c == fv {
                        continue;
                    }
                    g[v] = c;
                    if let Some(&j) = index.get(&g) {
                        out.push(j);
                    }
                }
                g[v] = fv;
            }
            out
        })
        .collect();
    let mut uf = UnionFind::new(maps.len());
    for (i, es) in edges.iter().enumerate() {
        for &j in es {
            uf.union(i, j);
        }
    }
    uf.class_map()
}

/// `[X, Y]`: the continuous maps with their partition into homotopy classes.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    pub domain: Arc<Space>,
    pub codomain: Arc<Space>,
    /// Continuous maps in canonical order.
    pub maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Class of every map, numbered by smallest member.
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl HomotopyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, assignment: &[usize]) -> Option<usize> {
        self.index.get(assignment).copied()
    }

    pub fn class_of_map(&self, assignment: &[usize]) -> Option<usize> {
        self.index_of(assignment).map(|i| self.class_of[i])
    }

    /// Smallest map of each class.
    pub fn representatives(&self) -> Vec<SpaceMap> {
        self.classes
            .iter()
            .map(|c| SpaceMap::new(self.domain.clone(), self.codomain.clone(), self.maps[c[0]].clone()).expect("stored map"))
            .collect()
    }
}

pub fn homotopy_classes(x: &Arc<Space>, y: &Arc<Space>) -> Result<HomotopyClasses> {
    homotopy_classes_with_cap(x, y, DEFAULT_EXPONENTIAL_CAP)
}

pub fn homotopy_classes_with_cap(x: &Arc<Space>, y: &Arc<Space>, cap: u128) -> Result<HomotopyClasses> {
    if !x.is_point_limit() || !y.is_point_limit() {
        return Err(Error::KindMismatch);
    }
    let size = exponential_size(x.len(), y.len());
    if size > cap {
        return Err(Error::ExponentialTooLarge { size, cap });
    }
    let maps = continuous_maps(x, y)?;
    let index: HashMap<Vec<usize>, usize> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let class_of = move_components(y, &maps, &index);
    let classes = classes_from_map(&class_of);
    Ok(HomotopyClasses {
        domain: x.clone(),
        codomain: y.clone(),
        maps,
        index,
        class_of,
        classes,
    })
}

/// Shortest chain of one-step homotopies from `f` to `g`, inclusive of both ends.
pub fn are_homotopic(f: &SpaceMap, g: &SpaceMap) -> Result<Option<Vec<SpaceMap>>> {
    are_homotopic_within(f, g, DEFAULT_MAX_VISITED)
}

pub fn are_homotopic_within(f: &SpaceMap, g: &SpaceMap, max_visited: usize) -> Result<Option<Vec<SpaceMap>>> {
    check_parallel(f, g)?;
    f.require_continuous()?;
    g.require_continuous()?;
    let (x, y) = (f.domain(), f.codomain());
    let wrap = |a: Vec<usize>| SpaceMap::new(x.clone(), y.clone(), a).expect("searched map");
    let target = g.assignment().to_vec();
    if f.assignment() == target.as_slice() {
        return Ok(Some(vec![f.clone()]));
    }
    let start = f.assignment().to_vec();
    let mut parent: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    parent.insert(start.clone(), start.clone());
    let mut frontier = vec![start.clone()];
    while !frontier.is_empty() {
        let expanded = frontier
            .par_iter()
            .map(|h| one_step_neighbors(x, y, h))
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (h, ns) in frontier.iter().zip(expanded) {
            for k in ns {
                if parent.contains_key(&k) {
                    continue;
                }
                parent.insert(k.clone(), h.clone());
                if k == target {
                    let mut chain = vec![k];
                    while *chain.last().expect("non-empty") != start {
                        let prev = parent[chain.last().expect("non-empty")].clone();
                        chain.push(prev);
                    }
                    chain.reverse();
                    return Ok(Some(chain.into_iter().map(wrap).collect()));
                }
                next.push(k);
            }
        }
        if parent.len() > max_visited {
            return Err(Error::BudgetExhausted(format!(
                "shortest-chain search visited more than {max_visited} maps"
            )));
        }
        frontier = next;
    }
    Ok(None)
}

/// Whether consecutive maps of `chain` are one step apart.
pub fn is_chain(chain: &[SpaceMap]) -> Result<bool> {
    for w in chain.windows(2) {
        if !one_step(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(chain.iter().all(SpaceMap::is_continuous))
}

/// A homotopy inverse with chains `g∘f ≃ 1_X` and `f∘g ≃ 1_Y`.
#[derive(Clone, Debug)]
pub struct HomotopyEquivalence {
    pub inverse: SpaceMap,
    pub chain_gf: Vec<SpaceMap>,
    pub chain_fg: Vec<SpaceMap>,
}

/// Checks a candidate inverse by shortest-chain search.
pub fn verify_homotopy_inverse(f: &SpaceMap, g: &SpaceMap) -> Result<Option<HomotopyEquivalence>> {
    if !same_space(f.codomain(), g.domain()) || !same_space(f.domain(), g.codomain()) {
        return Err(Error::DomainMismatch);
    }
    let gf = f.then(g)?;
    let fg = g.then(f)?;
    let Some(chain_gf) = are_homotopic(&gf, &SpaceMap::identity(f.domain().clone()))? else {
        return Ok(None);
    };
    let Some(chain_fg) = are_homotopic(&fg, &SpaceMap::identity(f.codomain().clone()))? else {
        return Ok(None);
    };
    Ok(Some(HomotopyEquivalence {
        inverse: g.clone(),
        chain_gf,
        chain_fg,
    }))
}

/// Searches every `g : Y → X` in canonical order for a homotopy inverse of `f`.
pub fn is_homotopy_equivalence(f: &SpaceMap) -> Result<Option<HomotopyEquivalence>> {
    is_homotopy_equivalence_with_cap(f, DEFAULT_EXPONENTIAL_CAP)
}

pub fn is_homotopy_equivalence_with_cap(f: &SpaceMap, cap: u128) -> Result<Option<HomotopyEquivalence>> {
    f.require_continuous()?;
    let (x, y) = (f.domain(), f.codomain());
    let xx = homotopy_classes_with_cap(x, x, cap)?;
    let yy = homotopy_classes_with_cap(y, y, cap)?;
    let id_x: Vec<usize> = (0..x.len()).collect();
    let id_y: Vec<usize> = (0..y.len()).collect();
    let cx = xx.class_of_map(&id_x).expect("identity is continuous");
    let cy = yy.class_of_map(&id_y).expect("identity is continuous");
    if f.is_injective() && f.is_surjective() {
        let mut inv = vec![0; y.len()];
        for (a, &b) in f.assignment().iter().enumerate() {
            inv[b] = a;
        }
        let g = SpaceMap::new(y.clone(), x.clone(), inv)?;
        if g.is_continuous() {
            return verify_homotopy_inverse(f, &g);
        }
    }
    let size = exponential_size(y.len(), x.len());
    if size > cap {
        return Err(Error::ExponentialTooLarge { size, cap });
    }
    for g in continuous_maps(y, x)? {
        let gf: Vec<usize> = f.assignment().iter().map(|&v| g[v]).collect();
        let fg: Vec<usize> = g.iter().map(|&v| f.apply(v)).collect();
        if xx.class_of_map(&gf) == Some(cx) && yy.class_of_map(&fg) == Some(cy) {
            let g = SpaceMap::new(y.clone(), x.clone(), g)?;
            return verify_homotopy_inverse(f, &g);
        }
    }
    Ok(None)
}

/// `Z = (A × I_n)/((b, t) ∼ (b, 0) for b ∈ i(B))` with its structure maps.
#[derive(Clone, Debug)]
pub struct RelativeCylinder {
    pub inclusion: SpaceMap,
    pub cylinder: Cylinder,
    pub quotient: Quotient,
    pub i0: SpaceMap,
    pub i1: SpaceMap,
    pub p: SpaceMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RelativeCylinderReport {
    /// `p ∘ (i₀, i₁) = (1, 1)` on `A ∪_B A`.
    pub folding_factors: bool,
    /// `p` is a homotopy equivalence with inverse `i₀`.
    pub p_is_equivalence: bool,
}

impl RelativeCylinder {
    pub fn space(&self) -> &Arc<Space> {
        &self.quotient.space
    }

    /// The map `A ∪_B A → Z` induced by `i₀, i₁`, with the pushout it starts from.
    pub fn from_double(&self) -> Result<(PushoutResult, SpaceMap)> {
        let po = pushout(&self.inclusion, &self.inclusion)?;
        let j = po.induced(&self.i0, &self.i1)?;
        Ok((po, j))
    }

    pub fn verify(&self) -> Result<RelativeCylinderReport> {
        let (po, j) = self.from_double()?;
        let a = self.inclusion.codomain();
        let id = SpaceMap::identity(a.clone());
        let fold = po.induced(&id, &id)?;
        let folding_factors = j.is_continuous() && j.then(&self.p)? == fold;
        let p_is_equivalence = self.i0.then(&self.p)? == SpaceMap::identity(a.clone())
            && is_chain(&self.deformation())?;
        Ok(RelativeCylinderReport {
            folding_factors,
            p_is_equivalence,
        })
    }

    /// Stages `[(a, t)] ↦ [(a, min(t, n − s))]` for `s = 0..n`, from the identity to `i₀ ∘ p`.
    pub fn deformation(&self) -> Vec<SpaceMap> {
        let z = self.space();
        let cyl = &self.cylinder;
        let proj = &self.quotient.projection;
        (0..=cyl.length())
            .map(|s| {
                let assignment = self
                    .quotient
                    .classes
                    .iter()
                    .map(|class| {
                        let (a, t) = cyl.product.split(class[0]);
                        proj.apply(cyl.at(a, t.min(cyl.length() - s)))
                    })
                    .collect();
                SpaceMap::new(z.clone(), z.clone(), assignment).expect("deformation stage")
            })
            .collect()
    }

    /// Whether `h` is stationary on `B`, i.e. factors through `Z`.
    pub fn is_homotopy_rel(&self, h: &Homotopy) -> bool {
        h.length() == self.cylinder.length()
            && same_space(&h.cylinder.base, &self.cylinder.base)
            && self
                .quotient
                .factor(&h.map)
                .map(|m| m.is_continuous())
                .unwrap_or(false)
    }
}

/// Whether `i` is injective and carries the subspace structure on its image.
pub fn is_embedding(i: &SpaceMap) -> bool {
    if !i.is_injective() {
        return false;
    }
    let (b, a) = (i.domain(), i.codomain());
    let image = i.image(&Subset::full(b.len()));
    (0..b.len()).all(|y| i.image(b.point_limits(y)) == a.point_limits(i.apply(y)).intersection(&image))
}

pub fn relative_cylinder(i: &SpaceMap, n: usize) -> Result<RelativeCylinder> {
    if !is_embedding(i) {
        return Err(Error::NotEmbedding(format!("{i:?}")));
    }
    let a = i.codomain();
    let cyl = cylinder(a, n)?;
    let mut uf = UnionFind::new(cyl.space().len());
    for b in 0..i.domain().len() {
        for t in 1..=n {
            uf.union(cyl.at(i.apply(b), 0), cyl.at(i.apply(b), t));
        }
    }
    let quotient = quotient_by_map(cyl.space(), &uf.class_map())?;
    let i0 = cyl.i0.then(&quotient.projection)?;
    let i1 = cyl.i1.then(&quotient.projection)?;
    let p = quotient.factor(&cyl.p)?;
    Ok(RelativeCylinder {
        inclusion: i.clone(),
        cylinder: cyl,
        quotient,
        i0,
        i1,
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::coproduct;
    use crate::search::{hom_set, is_isomorphic};

    fn path(n: usize) -> Arc<Space> {
        interval_space(n)
    }

    #[test]
    fn cylinder_examples() {
        let pt = Arc::new(Space::point());
        for n in 1..4 {
            assert!(is_isomorphic(cylinder(&pt, n).unwrap().space(), &path(n)));
        }
        let e = Arc::new(Space::empty());
        assert!(cylinder(&e, 2).unwrap().space().is_empty());
        let c = cylinder(&path(1), 1).unwrap();
        assert!((0..4).all(|p| c.space().point_limits(p).count() == 4));
        assert!(c.i0.is_continuous() && c.i1.is_continuous() && c.p.is_continuous());
        assert!(IntervalObject::new(0).is_err());
    }

    #[test]
    fn interval_structure_maps() {
        let iv = IntervalObject::new(3).unwrap();
        assert_eq!(iv.end0.then(&iv.proj).unwrap().assignment(), &[0]);
        assert_eq!(iv.end1.then(&iv.proj).unwrap().assignment(), &[0]);
        assert_eq!(iv.space.point_limits(1), &Subset::from_indices(4, [0, 1, 2]));
    }

    #[test]
    fn one_step_examples() {
        let p2 = path(1);
        let maps = hom_set(&p2, &p2, 100).unwrap();
        for a in &maps {
            for b in &maps {
                let f = SpaceMap::new(p2.clone(), p2.clone(), a.clone()).unwrap();
                let g = SpaceMap::new(p2.clone(), p2.clone(), b.clone()).unwrap();
                assert!(one_step(&f, &g).unwrap());
            }
        }
        let p3 = path(2);
        let two = coproduct(&p3, &p3).unwrap().space;
        let c0 = SpaceMap::constant(p3.clone(), two.clone(), 0).unwrap();
        let c1 = SpaceMap::constant(p3.clone(), two.clone(), 4).unwrap();
        assert!(!one_step(&c0, &c1).unwrap());
        let other = SpaceMap::constant(p2.clone(), two, 0).unwrap();
        assert_eq!(one_step(&c0, &other).unwrap_err(), Error::DomainMismatch);
    }

    #[test]
    fn one_step_matches_cylinder_continuity() {
        let p3 = path(2);
        let maps = hom_set(&p3, &p3, 1000).unwrap();
        for a in &maps {
            for b in &maps {
                let cyl = cylinder(&p3, 1).unwrap();
                let h: Vec<usize> = (0..6)
                    .map(|q| {
                        let (x, t) = cyl.product.split(q);
                        if t == 0 { a[x] } else { b[x] }
                    })
                    .collect();
                let h = SpaceMap::new(cyl.space().clone(), p3.clone(), h).unwrap();
                assert_eq!(one_step_raw(&p3, &p3, a, b), h.is_continuous());
            }
        }
    }

    #[test]
    fn gluing_reports() {
        for n in 1..=5 {
            let r = gluing_check(&IntervalObject::new(n).unwrap()).unwrap();
            assert!(!r.literal_holds);
            assert!(r.substitute_holds);
        }
        for m in 1..6 {
            for n in 1..=(6 - m) {
                assert!(gluing_substitute(m, n).unwrap().is_some(), "{m} + {n}");
            }
        }
    }

    #[test]
    fn chains_and_concatenation() {
        let i2 = path(2);
        let id = SpaceMap::identity(i2.clone());
        let c0 = SpaceMap::constant(i2.clone(), i2.clone(), 0).unwrap();
        let chain = are_homotopic(&id, &c0).unwrap().unwrap();
        assert_eq!(chain.len() - 1, 2);
        let h = Homotopy::from_chain(&chain).unwrap();
        assert_eq!((h.start(), h.end()), (id.clone(), c0.clone()));
        let back = h.reverse();
        let loop_ = concatenate(&h, &back).unwrap();
        assert_eq!(loop_.length(), 4);
        assert_eq!((loop_.start(), loop_.end()), (id.clone(), id.clone()));
        assert_eq!(concatenate(&h, &h).unwrap_err(), Error::EndMismatch);
        let unit = concatenate(&Homotopy::constant(&id, 1).unwrap(), &h).unwrap();
        assert_eq!(unit.end(), c0);
        assert_eq!(are_homotopic(&id, &id).unwrap().unwrap().len(), 1);
    }

    #[test]
    fn identity_to_constant_length_grows_with_interval() {
        for n in 1..=4 {
            let i = path(n);
            let id = SpaceMap::identity(i.clone());
            let c0 = SpaceMap::constant(i.clone(), i.clone(), 0).unwrap();
            assert_eq!(are_homotopic(&id, &c0).unwrap().unwrap().len() - 1, n);
        }
    }

    #[test]
    fn classes_examples() {
        let p3 = path(2);
        let pt = Arc::new(Space::point());
        assert_eq!(homotopy_classes(&p3, &pt).unwrap().len(), 1);
        let two = coproduct(&p3, &p3).unwrap().space;
        assert_eq!(homotopy_classes(&pt, &two).unwrap().len(), 2);
        let p2 = path(1);
        assert_eq!(homotopy_classes(&p2, &p2).unwrap().len(), 1);
        let c0 = SpaceMap::constant(pt.clone(), two.clone(), 0).unwrap();
        let c1 = SpaceMap::constant(pt, two.clone(), 3).unwrap();
        assert!(are_homotopic(&c0, &c1).unwrap().is_none());
    }

    #[test]
    fn equivalences() {
        let i3 = path(3);
        let id = SpaceMap::identity(i3.clone());
        let w = is_homotopy_equivalence(&id).unwrap().unwrap();
        assert_eq!(w.inverse, id);
        let pt = Arc::new(Space::point());
        let end = SpaceMap::new(pt.clone(), i3.clone(), vec![0]).unwrap();
        let w = is_homotopy_equivalence(&end).unwrap().unwrap();
        assert_eq!(w.inverse.assignment(), &[0, 0, 0, 0]);
        assert!(w.chain_fg.len() - 1 <= 3);
        let d2 = Arc::new(Space::discrete(2));
        let f = SpaceMap::constant(path(2), d2, 0).unwrap();
        assert!(is_homotopy_equivalence(&f).unwrap().is_none());
    }

    #[test]
    fn relative_cylinders() {
        let i2 = path(2);
        let e = SpaceMap::from_empty(i2.clone());
        let rc = relative_cylinder(&e, 2).unwrap();
        assert_eq!(*rc.space().as_ref(), *cylinder(&i2, 2).unwrap().space().as_ref());

        let id = SpaceMap::identity(i2.clone());
        let rc = relative_cylinder(&id, 2).unwrap();
        assert!(is_isomorphic(rc.space(), &i2));
        let stationary = Homotopy::constant(&id, 2).unwrap();
        assert!(rc.is_homotopy_rel(&stationary));

        let pt = Arc::new(Space::point());
        let b0 = SpaceMap::new(pt, i2.clone(), vec![0]).unwrap();
        let rc = relative_cylinder(&b0, 2).unwrap();
        assert_eq!(rc.space().len(), 7);
        let report = rc.verify().unwrap();
        assert!(report.folding_factors && report.p_is_equivalence);
        let c0 = SpaceMap::constant(i2.clone(), i2.clone(), 0).unwrap();
        let chain = are_homotopic(&id, &c0).unwrap().unwrap();
        let h = Homotopy::from_chain(&chain).unwrap();
        assert!(rc.is_homotopy_rel(&h));
        let c2 = SpaceMap::constant(i2.clone(), i2.clone(), 2).unwrap();
        let h2 = Homotopy::from_chain(&are_homotopic(&id, &c2).unwrap().unwrap()).unwrap();
        assert!(!rc.is_homotopy_rel(&h2));

        let d2 = Arc::new(Space::discrete(2));
        let squash = SpaceMap::new(d2, i2, vec![0, 1]).unwrap();
        assert!(matches!(relative_cylinder(&squash, 1), Err(Error::NotEmbedding(_))));
    }
}
