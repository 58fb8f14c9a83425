//! Products, coproducts, subspaces, quotients, pushouts and function spaces.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::map::{same_space, SpaceMap};
use crate::search::{exponential_size, MapSearch};
use crate::space::{PointSet, Space};
use crate::subset::{nonempty_subsets, Subset};
use crate::union_find::{classes_from_map, UnionFind};

/// Default cap on `|Y|^|X|` for materialized function spaces.
pub const DEFAULT_EXPONENTIAL_CAP: u128 = 50_000;

fn require_point_limit(spaces: &[&Space]) -> Result<()> {
    if spaces.iter().all(|s| s.is_point_limit()) {
        Ok(())
    } else {
        Err(Error::KindMismatch)
    }
}

/// `X × Y` with pairs ordered lexicographically: `(a, b)` has index `a·|Y| + b`.
#[derive(Clone, Debug)]
pub struct Product {
    pub space: Arc<Space>,
    pub left: Arc<Space>,
    pub right: Arc<Space>,
    pub proj0: SpaceMap,
    pub proj1: SpaceMap,
}

impl Product {
    #[inline]
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.right.len() + b
    }

    #[inline]
    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.right.len(), p % self.right.len())
    }

    /// `⟨f, g⟩ : Z → X × Y`.
    pub fn mediate(&self, f: &SpaceMap, g: &SpaceMap) -> Result<SpaceMap> {
        if !same_space(f.domain(), g.domain())
            || !same_space(f.codomain(), &self.left)
            || !same_space(g.codomain(), &self.right)
        {
            return Err(Error::DomainMismatch);
        }
        let assignment = (0..f.domain().len())
            .map(|z| self.pair(f.apply(z), g.apply(z)))
            .collect();
        SpaceMap::new(f.domain().clone(), self.space.clone(), assignment)
    }

    /// `f × g : X × Y → X' × Y'` into another product.
    pub fn map_to(&self, target: &Product, f: &SpaceMap, g: &SpaceMap) -> Result<SpaceMap> {
        if !same_space(f.domain(), &self.left)
            || !same_space(g.domain(), &self.right)
            || !same_space(f.codomain(), &target.left)
            || !same_space(g.codomain(), &target.right)
        {
            return Err(Error::DomainMismatch);
        }
        let assignment = (0..self.space.len())
            .map(|p| {
                let (a, b) = self.split(p);
                target.pair(f.apply(a), g.apply(b))
            })
            .collect();
        SpaceMap::new(self.space.clone(), target.space.clone(), assignment)
    }
}

/// Product with componentwise point limits.
pub fn product(x: &Arc<Space>, y: &Arc<Space>) -> Result<Product> {
    require_point_limit(&[x, y])?;
    let (n, m) = (x.len(), y.len());
    let mut labels = Vec::with_capacity(n * m);
    let mut limits = Vec::with_capacity(n * m);
    for a in 0..n {
        for b in 0..m {
            labels.push(format!("({},{})", x.label(a), y.label(b)));
            let mut lim = Subset::empty(n * m);
            for a2 in x.point_limits(a) {
                for b2 in y.point_limits(b) {
                    lim.insert(a2 * m + b2);
                }
            }
            limits.push(lim);
        }
    }
    let space = Arc::new(Space::new(PointSet::new(labels)?, limits)?);
    let proj0 = SpaceMap::new(space.clone(), x.clone(), (0..n * m).map(|p| p / m.max(1)).collect())?;
    let proj1 = SpaceMap::new(space.clone(), y.clone(), (0..n * m).map(|p| p % m.max(1)).collect())?;
    Ok(Product {
        space,
        left: x.clone(),
        right: y.clone(),
        proj0,
        proj1,
    })
}

/// `X ⊔ Y`: points of `X` first, then points of `Y`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub space: Arc<Space>,
    pub inj0: SpaceMap,
    pub inj1: SpaceMap,
}

impl Coproduct {
    /// `[f, g] : X ⊔ Y → Z`.
    pub fn copair(&self, f: &SpaceMap, g: &SpaceMap) -> Result<SpaceMap> {
        if !same_space(f.codomain(), g.codomain())
            || !same_space(f.domain(), self.inj0.domain())
            || !same_space(g.domain(), self.inj1.domain())
        {
            return Err(Error::DomainMismatch);
        }
        let assignment = f.assignment().iter().chain(g.assignment()).copied().collect();
        SpaceMap::new(self.space.clone(), f.codomain().clone(), assignment)
    }
}

fn disjoint_labels(x: &Space, y: &Space) -> Vec<String> {
    let clash = y.points().labels().iter().any(|l| x.points().index_of(l).is_some());
    let (p, q) = if clash { ("0.", "1.") } else { ("", "") };
    x.points()
        .labels()
        .iter()
        .map(|l| format!("{p}{l}"))
        .chain(y.points().labels().iter().map(|l| format!("{q}{l}")))
        .collect()
}

/// Disjoint union; labels are kept when disjoint and prefixed `0.`/`1.` otherwise.
pub fn coproduct(x: &Arc<Space>, y: &Arc<Space>) -> Result<Coproduct> {
    let (n, m) = (x.len(), y.len());
    let points = PointSet::new(disjoint_labels(x, y))?;
    let shift = |s: &Subset, by: usize| Subset::from_indices(n + m, s.iter().map(|i| i + by));
    let space = if x.is_point_limit() && y.is_point_limit() {
        let limits = (0..n)
            .map(|a| shift(x.point_limits(a), 0))
            .chain((0..m).map(|b| shift(y.point_limits(b), n)))
            .collect();
        Space::new(points, limits)?
    } else {
        let x_sub = x.to_subset_limit()?;
        let y_sub = y.to_subset_limit()?;
        let left = Subset::from_indices(n + m, 0..n);
        let mut limits = BTreeMap::new();
        for g in nonempty_subsets(n + m) {
            let lim = if g.is_subset(&left) {
                let back = Subset::from_indices(n, g.iter());
                shift(&x_sub.limits_of(&back).expect("total"), 0)
            } else if g.is_disjoint(&left) {
                let back = Subset::from_indices(m, g.iter().map(|i| i - n));
                shift(&y_sub.limits_of(&back).expect("total"), n)
            } else {
                Subset::empty(n + m)
            };
            limits.insert(g, lim);
        }
        Space::from_subset_limits(points, limits)?
    };
    let space = Arc::new(space);
    let inj0 = SpaceMap::new(x.clone(), space.clone(), (0..n).collect())?;
    let inj1 = SpaceMap::new(y.clone(), space.clone(), (n..n + m).collect())?;
    Ok(Coproduct { space, inj0, inj1 })
}

/// Subspace on `u` with its inclusion.
pub fn subspace(x: &Arc<Space>, u: &Subset) -> Result<(Arc<Space>, SpaceMap)> {
    if u.universe() != x.len() {
        return Err(Error::InvalidArgument("subset over a different carrier".into()));
    }
    let members: Vec<usize> = u.iter().collect();
    let k = members.len();
    let mut pos = vec![usize::MAX; x.len()];
    for (i, &v) in members.iter().enumerate() {
        pos[v] = i;
    }
    let restrict = |s: &Subset| Subset::from_indices(k, s.intersection(u).iter().map(|v| pos[v]));
    let points = PointSet::new(members.iter().map(|&v| x.label(v).to_string()))?;
    let space = match x.stored_filter_limits() {
        None => Space::new(points, members.iter().map(|&v| restrict(x.point_limits(v))).collect())?,
        Some(_) => {
            let mut limits = BTreeMap::new();
            for g in nonempty_subsets(k) {
                let up = Subset::from_indices(x.len(), g.iter().map(|i| members[i]));
                limits.insert(g, restrict(&x.limits_of(&up).expect("total")));
            }
            Space::from_subset_limits(points, limits)?
        }
    };
    let space = Arc::new(space);
    let inclusion = SpaceMap::new(space.clone(), x.clone(), members)?;
    Ok((space, inclusion))
}

/// Quotient by a partition with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: Arc<Space>,
    pub projection: SpaceMap,
    /// Members of each class, sorted; classes ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
}

impl Quotient {
    /// The map `X/~ → Z` induced by `g : X → Z` constant on classes.
    pub fn factor(&self, g: &SpaceMap) -> Result<SpaceMap> {
        if !same_space(g.domain(), self.projection.domain()) {
            return Err(Error::DomainMismatch);
        }
        let mut assignment = Vec::with_capacity(self.classes.len());
        for class in &self.classes {
            let v = g.apply(class[0]);
            if class.iter().any(|&a| g.apply(a) != v) {
                return Err(Error::InvalidArgument(format!(
                    "map is not constant on the class of {:?}",
                    g.domain().label(class[0])
                )));
            }
            assignment.push(v);
        }
        SpaceMap::new(self.space.clone(), g.codomain().clone(), assignment)
    }
}

/// Quotient by `classes`, which must partition the carrier.
pub fn quotient(x: &Arc<Space>, classes: &[Vec<usize>]) -> Result<Quotient> {
    let mut class_of = vec![usize::MAX; x.len()];
    for (c, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::NotAPartition(format!("class {c} is empty")));
        }
        for &a in class {
            if a >= x.len() {
                return Err(Error::NotAPartition(format!("class {c} has unknown point {a}")));
            }
            if class_of[a] != usize::MAX {
                return Err(Error::NotAPartition(format!("{:?} lies in two classes", x.label(a))));
            }
            class_of[a] = c;
        }
    }
    if let Some(a) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::NotAPartition(format!("{:?} lies in no class", x.label(a))));
    }
    let mut uf = UnionFind::new(x.len());
    for class in classes {
        for &a in &class[1..] {
            uf.union(class[0], a);
        }
    }
    quotient_by_map(x, &uf.class_map())
}

/// Quotient by a canonical class map (classes numbered by smallest member).
pub fn quotient_by_map(x: &Arc<Space>, class_of: &[usize]) -> Result<Quotient> {
    require_point_limit(&[x])?;
    let classes = classes_from_map(class_of);
    let k = classes.len();
    let labels = classes.iter().map(|c| x.label(c[0]).to_string());
    let limits = classes
        .iter()
        .map(|class| {
            let mut lim = Subset::empty(k);
            for &a in class {
                lim.union_with(&x.point_limits(a).image(class_of, k));
            }
            lim
        })
        .collect();
    let space = Arc::new(Space::new(PointSet::new(labels)?, limits)?);
    let projection = SpaceMap::new(x.clone(), space.clone(), class_of.to_vec())?;
    Ok(Quotient {
        space,
        projection,
        classes,
    })
}

/// Pushout of `A ←i− B −f→ Y`.
#[derive(Clone, Debug)]
pub struct PushoutResult {
    pub apex: Arc<Space>,
    pub leg0: SpaceMap,
    pub leg1: SpaceMap,
    /// Class of every point of `A ⊔ Y`.
    pub class_map: Vec<usize>,
    pub coproduct: Coproduct,
    pub quotient: Quotient,
}

impl PushoutResult {
    /// The map out of the apex induced by a cocone `u : A → Z`, `v : Y → Z`.
    pub fn induced(&self, u: &SpaceMap, v: &SpaceMap) -> Result<SpaceMap> {
        let copaired = self.coproduct.copair(u, v)?;
        self.quotient.factor(&copaired)
    }
}

pub fn pushout(i: &SpaceMap, f: &SpaceMap) -> Result<PushoutResult> {
    if !same_space(i.domain(), f.domain()) {
        return Err(Error::DomainMismatch);
    }
    let a = i.codomain();
    let y = f.codomain();
    let coproduct = coproduct(a, y)?;
    let mut uf = UnionFind::new(a.len() + y.len());
    for b in 0..i.domain().len() {
        uf.union(i.apply(b), a.len() + f.apply(b));
    }
    let class_map = uf.class_map();
    let quotient = quotient_by_map(&coproduct.space, &class_map)?;
    let apex = quotient.space.clone();
    let leg0 = coproduct.inj0.then(&quotient.projection)?;
    let leg1 = coproduct.inj1.then(&quotient.projection)?;
    Ok(PushoutResult {
        apex,
        leg0,
        leg1,
        class_map,
        coproduct,
        quotient,
    })
}

/// `𝒞(X, Y)`: the continuous maps with continuous convergence.
#[derive(Clone, Debug)]
pub struct FunctionSpace {
    pub space: Arc<Space>,
    pub domain: Arc<Space>,
    pub codomain: Arc<Space>,
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FunctionSpace {
    /// Assignments of the points, in canonical (lexicographic) order.
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn map_at(&self, i: usize) -> SpaceMap {
        SpaceMap::new(self.domain.clone(), self.codomain.clone(), self.maps[i].clone())
            .expect("stored map")
    }

    pub fn index_of(&self, assignment: &[usize]) -> Option<usize> {
        self.index.get(assignment).copied()
    }
}

pub fn function_space(x: &Arc<Space>, y: &Arc<Space>) -> Result<FunctionSpace> {
    function_space_with_cap(x, y, DEFAULT_EXPONENTIAL_CAP)
}

/// Every continuous map in canonical (lexicographic) order, enumerated in parallel by
/// the value of the first point.
pub fn continuous_maps(x: &Space, y: &Space) -> Result<Vec<Vec<usize>>> {
    if x.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let parts = (0..y.len())
        .into_par_iter()
        .map(|v| {
            let mut s = MapSearch::new(x, y);
            s.fix(0, v);
            s.all()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// `f ∈ lim ġ` iff `f(x) ∈ lim g(y)˙` whenever `x ∈ lim ẏ`.
pub fn function_space_with_cap(x: &Arc<Space>, y: &Arc<Space>, cap: u128) -> Result<FunctionSpace> {
    require_point_limit(&[x, y])?;
    let size = exponential_size(x.len(), y.len());
    if size > cap {
        return Err(Error::ExponentialTooLarge { size, cap });
    }
    let maps = continuous_maps(x, y)?;
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|yy| x.point_limits(yy).iter().map(move |xx| (yy, xx)))
        .collect();
    let k = maps.len();
    let limits = (0..k)
        .into_par_iter()
        .map(|g| {
            let gm = &maps[g];
            Subset::from_indices(
                k,
                (0..k).filter(|&f| pairs.iter().all(|&(yy, xx)| y.converges(gm[yy], maps[f][xx]))),
            )
        })
        .collect();
    let labels = maps.iter().map(|m| {
        let parts: Vec<&str> = m.iter().map(|&v| y.label(v)).collect();
        format!("<{}>", parts.join(","))
    });
    let space = Arc::new(Space::new(PointSet::new(labels)?, limits)?);
    let index = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(FunctionSpace {
        space,
        domain: x.clone(),
        codomain: y.clone(),
        maps,
        index,
    })
}

/// Evaluation `𝒞(X, Y) × X → Y` together with the product it is defined on.
pub fn evaluation(fs: &FunctionSpace) -> Result<(Product, SpaceMap)> {
    let prod = product(&fs.space, &fs.domain)?;
    let assignment = (0..prod.space.len())
        .map(|p| {
            let (f, x) = prod.split(p);
            fs.maps[f][x]
        })
        .collect();
    let ev = SpaceMap::new(prod.space.clone(), fs.codomain.clone(), assignment)?;
    Ok((prod, ev))
}

/// `f : X × Y → Z` to `x ↦ f(x, −)`, a map `X → 𝒞(Y, Z)`.
pub fn curry(f: &SpaceMap, prod: &Product, fs: &FunctionSpace) -> Result<SpaceMap> {
    if !same_space(f.domain(), &prod.space)
        || !same_space(&fs.domain, &prod.right)
        || !same_space(&fs.codomain, f.codomain())
    {
        return Err(Error::DomainMismatch);
    }
    f.require_continuous()?;
    let m = prod.right.len();
    let assignment = (0..prod.left.len())
        .map(|a| {
            let slice: Vec<usize> = (0..m).map(|b| f.apply(prod.pair(a, b))).collect();
            fs.index_of(&slice).ok_or_else(|| {
                Error::NotContinuous(format!("slice at {:?} is not continuous", prod.left.label(a)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SpaceMap::new(prod.left.clone(), fs.space.clone(), assignment)
}

/// `h : X → 𝒞(Y, Z)` to `(x, y) ↦ h(x)(y)`.
pub fn uncurry(h: &SpaceMap, prod: &Product, fs: &FunctionSpace) -> Result<SpaceMap> {
    if !same_space(h.domain(), &prod.left)
        || !same_space(h.codomain(), &fs.space)
        || !same_space(&fs.domain, &prod.right)
    {
        return Err(Error::DomainMismatch);
    }
    h.require_continuous()?;
    let assignment = (0..prod.space.len())
        .map(|p| {
            let (a, b) = prod.split(p);
            fs.maps[h.apply(a)][b]
        })
        .collect();
    SpaceMap::new(prod.space.clone(), fs.codomain.clone(), assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{from_graph, GraphData};
    use crate::search::{hom_set, is_isomorphic};

    fn path(n: usize) -> Arc<Space> {
        Arc::new(from_graph(&GraphData::path(n)))
    }

    #[test]
    fn product_unit_and_discrete() {
        let p3 = path(2);
        let pt = Arc::new(Space::point());
        assert!(is_isomorphic(&product(&p3, &pt).unwrap().space, &p3));
        let d = Arc::new(Space::discrete(2));
        let dd = product(&d, &d).unwrap();
        assert_eq!(*dd.space, Space::discrete(4).relabeled(dd.space.points().clone()).unwrap());
        assert!(dd.proj0.is_continuous() && dd.proj1.is_continuous());
    }

    #[test]
    fn edge_squared_is_complete() {
        let p2 = path(1);
        let sq = product(&p2, &p2).unwrap();
        assert_eq!(sq.space.len(), 4);
        assert!((0..4).all(|p| sq.space.point_limits(p).count() == 4));
        assert_eq!(sq.space.label(1), "(0,1)");
    }

    #[test]
    fn product_rejects_subset_limit() {
        let s = Arc::new(Space::discrete(2).to_subset_limit().unwrap());
        assert_eq!(product(&s, &s).unwrap_err(), Error::KindMismatch);
    }

    #[test]
    fn coproducts() {
        let p3 = path(2);
        let e = Arc::new(Space::empty());
        assert_eq!(*coproduct(&p3, &e).unwrap().space, *p3);
        let pt = Arc::new(Space::point());
        let two = coproduct(&pt, &pt).unwrap();
        assert_eq!(two.space.points().labels(), &["0.*", "1.*"]);
        assert!(is_isomorphic(&two.space, &Space::discrete(2)));
        let s = Arc::new(Space::discrete(2).to_subset_limit().unwrap());
        let mixed = coproduct(&s, &pt).unwrap();
        assert_eq!(mixed.space.limits_of(&Subset::from_indices(3, [0, 2])).unwrap().count(), 0);
    }

    #[test]
    fn subspaces() {
        let p3 = path(2);
        let (s, inc) = subspace(&p3, &Subset::from_indices(3, [0, 2])).unwrap();
        assert_eq!(*s, Space::discrete(2).relabeled(PointSet::new(["0", "2"]).unwrap()).unwrap());
        assert!(inc.is_continuous());
        let (one, _) = subspace(&p3, &Subset::singleton(3, 1)).unwrap();
        assert!(is_isomorphic(&one, &Space::point()));
        let (all, inc) = subspace(&p3, &Subset::full(3)).unwrap();
        assert_eq!(*all, *p3);
        assert_eq!(inc.assignment(), &[0, 1, 2]);
    }

    #[test]
    fn quotients() {
        let i2 = path(2);
        let q = quotient(&i2, &[vec![0, 2], vec![1]]).unwrap();
        assert!(is_isomorphic(&q.space, &Space::indiscrete(2)));
        assert!(q.projection.is_continuous());
        let all = quotient(&i2, &[vec![0, 1, 2]]).unwrap();
        assert!(is_isomorphic(&all.space, &Space::point()));
        let id = quotient(&i2, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(*id.space, *i2);
        assert!(matches!(quotient(&i2, &[vec![0, 1]]), Err(Error::NotAPartition(_))));
        assert!(matches!(quotient(&i2, &[vec![0, 1], vec![1, 2]]), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn pushouts() {
        let i1 = path(1);
        let pt = Arc::new(Space::point());
        let end1 = SpaceMap::new(pt.clone(), i1.clone(), vec![1]).unwrap();
        let end0 = SpaceMap::new(pt.clone(), i1.clone(), vec![0]).unwrap();
        let po = pushout(&end1, &end0).unwrap();
        let i2 = path(2);
        assert!(is_isomorphic(&po.apex, &i2));
        assert_eq!(po.leg0.then(&SpaceMap::identity(po.apex.clone())).unwrap().apply(1), po.leg1.apply(0));

        let e = SpaceMap::from_empty(i1.clone());
        let e2 = SpaceMap::new(e.domain().clone(), i2.clone(), vec![]).unwrap();
        let po = pushout(&e, &e2).unwrap();
        assert_eq!(po.apex.len(), 5);

        let id = SpaceMap::identity(i2.clone());
        let po = pushout(&id, &id).unwrap();
        assert!(is_isomorphic(&po.apex, &i2));
    }

    #[test]
    fn function_space_examples() {
        let p2 = path(1);
        let fs = function_space(&p2, &p2).unwrap();
        assert_eq!(fs.space.len(), 4);
        assert!((0..4).all(|p| fs.space.point_limits(p).count() == 4));
        let pt = Arc::new(Space::point());
        let p3 = path(2);
        assert!(is_isomorphic(&function_space(&pt, &p3).unwrap().space, &p3));
        assert!(is_isomorphic(&function_space(&p3, &pt).unwrap().space, &Space::point()));
        for s in [&p2, &p3] {
            let fs = function_space(s, s).unwrap();
            let (_, ev) = evaluation(&fs).unwrap();
            assert!(ev.is_continuous());
        }
    }

    #[test]
    fn exponential_guard() {
        let big = Arc::new(Space::indiscrete(7));
        assert!(matches!(
            function_space(&big, &big),
            Err(Error::ExponentialTooLarge { size: 823_543, cap: 50_000 })
        ));
    }

    #[test]
    fn currying_edge() {
        let p2 = path(1);
        let prod = product(&p2, &p2).unwrap();
        let fs = function_space(&p2, &p2).unwrap();
        let lhs = hom_set(&prod.space, &p2, u128::MAX).unwrap();
        let rhs = hom_set(&p2, &fs.space, u128::MAX).unwrap();
        assert_eq!((lhs.len(), rhs.len()), (16, 16));
        for a in lhs {
            let f = SpaceMap::new(prod.space.clone(), p2.clone(), a).unwrap();
            let c = curry(&f, &prod, &fs).unwrap();
            assert!(c.is_continuous());
            assert_eq!(uncurry(&c, &prod, &fs).unwrap(), f);
        }
        let proj = prod.proj1.clone();
        let c = curry(&proj, &prod, &fs).unwrap();
        assert_eq!(c.apply(0), c.apply(1));
    }
}
