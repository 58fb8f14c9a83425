//! Cofibrations via the retract characterization, homotopy extension, the
//! interchange map and mapping-cylinder factorization.

use std::sync::Arc;

use serde::Serialize;

use crate::constructions::{pushout, PushoutResult};
use crate::error::{Error, Result};
use crate::homotopy::{are_homotopic, cylinder, is_chain, Cylinder, Homotopy};
use crate::map::{same_space, SpaceMap};
use crate::search::{MapSearch, DEFAULT_NODE_BUDGET};
use crate::space::Space;

/// Outcome of a bounded decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// `Fail` if any fails, else `Inconclusive` if any is, else `Pass`.
    pub fn all<I: IntoIterator<Item = Verdict>>(vs: I) -> Verdict {
        let mut out = Verdict::Pass;
        for v in vs {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }

    /// `Inconclusive` for exhausted budgets, the error otherwise.
    pub fn from_result(r: Result<bool>) -> Result<Self> {
        match r {
            Ok(b) => Ok(Verdict::from_bool(b)),
            Err(e) if e.is_budget() => Ok(Verdict::Inconclusive),
            Err(e) => Err(e),
        }
    }
}

/// Which end of the cylinder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum End {
    Zero,
    One,
}

impl End {
    fn level(self, n: usize) -> usize {
        match self {
            End::Zero => 0,
            End::One => n,
        }
    }
}

/// `j₀ : A ∪_{i₀} I_nB → I_nA` and a retraction of it, if one exists.
#[derive(Clone, Debug)]
pub struct RetractProblem {
    pub length: usize,
    pub cylinder_a: Cylinder,
    pub cylinder_b: Cylinder,
    /// `A ∪_{i₀} I_nB` with legs from `A` and `I_nB`.
    pub pushout: PushoutResult,
    pub j0: SpaceMap,
    /// `r : I_nA → A ∪_{i₀} I_nB` with `r ∘ j₀ = 1`.
    pub solution: Option<SpaceMap>,
}

impl RetractProblem {
    pub fn is_cofibration(&self) -> bool {
        self.solution.is_some()
    }
}

fn require_inclusion(i: &SpaceMap) -> Result<()> {
    if !i.is_injective() {
        return Err(Error::NotInjective);
    }
    i.require_continuous()
}

pub fn retract_problem(i: &SpaceMap, n: usize) -> Result<(Cylinder, Cylinder, PushoutResult, SpaceMap)> {
    require_inclusion(i)?;
    let ib = cylinder(i.domain(), n)?;
    let ia = cylinder(i.codomain(), n)?;
    let po = pushout(i, &ib.i0)?;
    let ii = ib.map(i, &ia)?;
    let j0 = po.induced(&ia.i0, &ii)?;
    Ok((ia, ib, po, j0))
}

/// Decides whether `i` is a cofibration for the length-`n` cylinder.
pub fn is_cofibration(i: &SpaceMap, n: usize) -> Result<RetractProblem> {
    is_cofibration_with_budget(i, n, DEFAULT_NODE_BUDGET)
}

pub fn is_cofibration_with_budget(i: &SpaceMap, n: usize, budget: u64) -> Result<RetractProblem> {
    let (ia, ib, po, j0) = retract_problem(i, n)?;
    let mut search = MapSearch::new(ia.space(), &po.apex).with_budget(budget);
    for p in 0..po.apex.len() {
        search.fix(j0.apply(p), p);
    }
    let solution = search
        .first()?
        .map(|r| SpaceMap::new(ia.space().clone(), po.apex.clone(), r))
        .transpose()?;
    Ok(RetractProblem {
        length: n,
        cylinder_a: ia,
        cylinder_b: ib,
        pushout: po,
        j0,
        solution,
    })
}

/// Extends `g : I_nB → Z` and `f : A → Z` (agreeing at end `k`) to `H : I_nA → Z`.
pub fn hep_solve(i: &SpaceMap, f: &SpaceMap, g: &Homotopy, k: End) -> Result<Option<Homotopy>> {
    hep_solve_with_budget(i, f, g, k, DEFAULT_NODE_BUDGET)
}

pub fn hep_solve_with_budget(i: &SpaceMap, f: &SpaceMap, g: &Homotopy, k: End, budget: u64) -> Result<Option<Homotopy>> {
    if !same_space(f.domain(), i.codomain())
        || !same_space(&g.cylinder.base, i.domain())
        || !same_space(f.codomain(), g.codomain())
    {
        return Err(Error::IncompatibleData("maps do not fit a homotopy extension problem".into()));
    }
    require_inclusion(i)?;
    let n = g.length();
    let t = k.level(n);
    if g.stage(t) != i.then(f)? {
        return Err(Error::IncompatibleData(format!(
            "homotopy at end {t} differs from f restricted along i"
        )));
    }
    let ia = cylinder(i.codomain(), n)?;
    let z = f.codomain();
    let mut search = MapSearch::new(ia.space(), z).with_budget(budget);
    for a in 0..i.codomain().len() {
        search.fix(ia.at(a, t), f.apply(a));
    }
    for b in 0..i.domain().len() {
        for s in 0..=n {
            search.fix(ia.at(i.apply(b), s), g.map.apply(g.cylinder.at(b, s)));
        }
    }
    match search.first()? {
        None => Ok(None),
        Some(h) => {
            let map = SpaceMap::new(ia.space().clone(), z.clone(), h)?;
            Ok(Some(Homotopy::new(ia, map)?))
        }
    }
}

/// A homotopy extension problem without a solution.
#[derive(Clone, Debug)]
pub struct HepFailure {
    pub target: Arc<Space>,
    pub f: SpaceMap,
    pub g: Homotopy,
}

/// Tries every extension problem along `i` at end 0 into each of `targets`:
/// all continuous `f : A → Z` and all homotopies `G : I_nB → Z` starting at `f ∘ i`.
pub fn hep_exhaustive(i: &SpaceMap, targets: &[Arc<Space>], n: usize, budget: u64) -> Result<Option<HepFailure>> {
    require_inclusion(i)?;
    let ib = cylinder(i.domain(), n)?;
    for z in targets {
        for fa in MapSearch::new(i.codomain(), z).with_budget(budget).all()? {
            let f = SpaceMap::new(i.codomain().clone(), z.clone(), fa)?;
            let mut gs = MapSearch::new(ib.space(), z).with_budget(budget);
            for b in 0..i.domain().len() {
                gs.fix(ib.at(b, 0), f.apply(i.apply(b)));
            }
            for ga in gs.all()? {
                let g = Homotopy::new(ib.clone(), SpaceMap::new(ib.space().clone(), z.clone(), ga)?)?;
                if hep_solve_with_budget(i, &f, &g, End::Zero, budget)?.is_none() {
                    return Ok(Some(HepFailure { target: z.clone(), f, g }));
                }
            }
        }
    }
    Ok(None)
}

/// `T : I_nI_nX → I_nI_nX`, `((a, t), s) ↦ ((a, s), t)`.
#[derive(Clone, Debug)]
pub struct Interchange {
    pub inner: Cylinder,
    pub outer: Cylinder,
    pub map: SpaceMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InterchangeReport {
    pub continuous: bool,
    pub involution: bool,
    /// `T ∘ i_k(IX) = I(i_k(X))` for `k = 0, 1`.
    pub t_i: [bool; 2],
    /// `T ∘ I(i_k(X)) = i_k(IX)` for `k = 0, 1`.
    pub t_ii: [bool; 2],
}

impl InterchangeReport {
    pub fn holds(&self) -> bool {
        self.continuous && self.involution && self.t_i == [true; 2] && self.t_ii == [true; 2]
    }
}

pub fn interchange(x: &Arc<Space>, n: usize) -> Result<Interchange> {
    let inner = cylinder(x, n)?;
    let outer = cylinder(inner.space(), n)?;
    let assignment = (0..outer.space().len())
        .map(|q| {
            let (p, s) = outer.product.split(q);
            let (a, t) = inner.product.split(p);
            outer.at(inner.at(a, s), t)
        })
        .collect();
    let map = SpaceMap::new(outer.space().clone(), outer.space().clone(), assignment)?;
    Ok(Interchange { inner, outer, map })
}

impl Interchange {
    pub fn check(&self) -> Result<InterchangeReport> {
        let t = &self.map;
        let involution = t.then(t)? == SpaceMap::identity(t.domain().clone());
        let ends = [(&self.outer.i0, &self.inner.i0), (&self.outer.i1, &self.inner.i1)];
        let mut t_i = [false; 2];
        let mut t_ii = [false; 2];
        for (k, (outer_ik, inner_ik)) in ends.into_iter().enumerate() {
            let ii_k = self.inner.map(inner_ik, &self.outer)?;
            t_i[k] = outer_ik.then(t)? == ii_k;
            t_ii[k] = ii_k.then(t)? == *outer_ik;
        }
        Ok(InterchangeReport {
            continuous: t.is_continuous(),
            involution,
            t_i,
            t_ii,
        })
    }
}

/// `f = g ∘ i` through the mapping cylinder `M_f = (X × I_n) ∪_{i₁, f} Y`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub map: SpaceMap,
    pub cylinder: Cylinder,
    pub pushout: PushoutResult,
    /// `i = i₀` into `M_f`.
    pub i: SpaceMap,
    /// The projection `M_f → Y`.
    pub g: SpaceMap,
    /// The inclusion `Y → M_f`, a homotopy inverse candidate for `g`.
    pub j: SpaceMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorizationReport {
    pub commutes: bool,
    pub i_cofibration: Verdict,
    pub g_equivalence: Verdict,
}

pub fn factorize(f: &SpaceMap, n: usize) -> Result<Factorization> {
    let cyl = cylinder(f.domain(), n)?;
    let po = pushout(&cyl.i1, f)?;
    let i = cyl.i0.then(&po.leg0)?;
    let g = po.induced(&cyl.p.then(f)?, &SpaceMap::identity(f.codomain().clone()))?;
    let j = po.leg1.clone();
    Ok(Factorization {
        map: f.clone(),
        cylinder: cyl,
        pushout: po,
        i,
        g,
        j,
    })
}

impl Factorization {
    pub fn space(&self) -> &Arc<Space> {
        &self.pushout.apex
    }

    /// Stages `[(x, t)] ↦ [(x, max(t, s))]` for `s = 0..n`, from the identity to `j ∘ g`.
    pub fn deformation(&self) -> Vec<SpaceMap> {
        let m = self.space();
        let cyl = &self.cylinder;
        let nx = cyl.space().len();
        (0..=cyl.length())
            .map(|s| {
                let assignment = self
                    .pushout
                    .quotient
                    .classes
                    .iter()
                    .map(|class| {
                        let rep = class[0];
                        if rep < nx {
                            let (x, t) = cyl.product.split(rep);
                            self.pushout.leg0.apply(cyl.at(x, t.max(s)))
                        } else {
                            self.pushout.leg1.apply(rep - nx)
                        }
                    })
                    .collect();
                SpaceMap::new(m.clone(), m.clone(), assignment).expect("deformation stage")
            })
            .collect()
    }

    /// Whether `g` is a homotopy equivalence with inverse `j`.
    pub fn g_is_equivalence(&self) -> Result<bool> {
        if self.j.then(&self.g)? != SpaceMap::identity(self.map.codomain().clone()) {
            return Ok(false);
        }
        let deformation = self.deformation();
        if is_chain(&deformation)? {
            return Ok(true);
        }
        let jg = self.g.then(&self.j)?;
        Ok(are_homotopic(&SpaceMap::identity(self.space().clone()), &jg)?.is_some())
    }

    pub fn verify(&self, budget: u64) -> Result<FactorizationReport> {
        let commutes = self.i.then(&self.g)? == self.map;
        let i_cofibration =
            Verdict::from_result(is_cofibration_with_budget(&self.i, self.cylinder.length(), budget).map(|r| r.is_cofibration()))?;
        let g_equivalence = Verdict::from_result(self.g_is_equivalence())?;
        Ok(FactorizationReport {
            commutes,
            i_cofibration,
            g_equivalence,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::interval_space;
    use crate::search::is_isomorphic;

    fn pt() -> Arc<Space> {
        Arc::new(Space::point())
    }

    #[test]
    fn isomorphisms_and_empty_inclusions_are_cofibrations() {
        for n in 1..=2 {
            let i2 = interval_space(2);
            let id = SpaceMap::identity(i2.clone());
            assert!(is_cofibration(&id, n).unwrap().is_cofibration());
            let flip = SpaceMap::new(i2.clone(), i2.clone(), vec![2, 1, 0]).unwrap();
            assert!(is_cofibration(&flip, n).unwrap().is_cofibration());
            let e = SpaceMap::from_empty(i2);
            assert!(is_cofibration(&e, n).unwrap().is_cofibration());
        }
    }

    fn component_inclusion() -> SpaceMap {
        let i1 = interval_space(1);
        let x = crate::constructions::coproduct(&pt(), &i1).unwrap();
        x.inj0
    }

    #[test]
    fn end_inclusions_of_paths_are_not_cofibrations() {
        // (0, 1) and (1, 0) are adjacent in I_m × I_n, while their required images (*, 1)
        // and 1 lie two steps apart in I_m ∪ {0} × I_n.
        for m in 1..=2 {
            let end = SpaceMap::new(pt(), interval_space(m), vec![0]).unwrap();
            for n in 1..=3 {
                let rp = is_cofibration(&end, n).unwrap();
                assert!(!rp.is_cofibration(), "m = {m}, n = {n}");
                assert!(!crate::homotopy::is_embedding(&rp.j0));
            }
        }
    }

    #[test]
    fn component_inclusions_are_cofibrations() {
        let inc = component_inclusion();
        for n in 1..=3 {
            let rp = is_cofibration(&inc, n).unwrap();
            let r = rp.solution.clone().unwrap();
            assert!(r.is_continuous());
            assert_eq!(rp.j0.then(&r).unwrap(), SpaceMap::identity(rp.pushout.apex.clone()));
        }
    }

    #[test]
    fn hep_examples() {
        let i2 = interval_space(2);
        let id = SpaceMap::identity(i2.clone());
        let f = SpaceMap::constant(i2.clone(), i2.clone(), 1).unwrap();
        let g = Homotopy::constant(&f, 2).unwrap();
        let h = hep_solve(&id, &f, &g, End::Zero).unwrap().unwrap();
        assert_eq!(h.map.assignment(), g.map.assignment());

        let end = SpaceMap::new(pt(), i2.clone(), vec![0]).unwrap();
        let fixed = Homotopy::constant(&end.then(&id).unwrap(), 1).unwrap();
        let h = hep_solve(&end, &id, &fixed, End::Zero).unwrap().unwrap();
        assert_eq!(h.start(), id);

        let slide = Homotopy::from_chain(&[
            SpaceMap::new(pt(), i2.clone(), vec![0]).unwrap(),
            SpaceMap::new(pt(), i2.clone(), vec![1]).unwrap(),
        ])
        .unwrap();
        let h = hep_solve(&end, &id, &slide, End::Zero).unwrap().unwrap();
        assert_eq!(h.stage(1).apply(0), 1);

        let wrong = Homotopy::constant(&SpaceMap::new(pt(), i2.clone(), vec![2]).unwrap(), 1).unwrap();
        assert!(matches!(hep_solve(&end, &id, &wrong, End::Zero), Err(Error::IncompatibleData(_))));
    }

    #[test]
    fn hep_on_canonical_target_gives_retract() {
        let inc = component_inclusion();
        let rp = is_cofibration(&inc, 1).unwrap();
        let legb = Homotopy::new(rp.cylinder_b.clone(), rp.pushout.leg1.clone()).unwrap();
        let h = hep_solve(&inc, &rp.pushout.leg0, &legb, End::Zero).unwrap().unwrap();
        assert_eq!(rp.j0.then(&h.map).unwrap(), SpaceMap::identity(rp.pushout.apex.clone()));

        let end = SpaceMap::new(pt(), interval_space(1), vec![0]).unwrap();
        let rp = is_cofibration(&end, 1).unwrap();
        let legb = Homotopy::new(rp.cylinder_b.clone(), rp.pushout.leg1.clone()).unwrap();
        assert!(hep_solve(&end, &rp.pushout.leg0, &legb, End::Zero).unwrap().is_none());
    }

    #[test]
    fn interchange_identities() {
        for x in [pt(), interval_space(1), interval_space(2), Arc::new(Space::discrete(2))] {
            for n in 1..=2 {
                assert!(interchange(&x, n).unwrap().check().unwrap().holds());
            }
        }
    }

    #[test]
    fn mapping_cylinder_factorizations() {
        let id = SpaceMap::identity(pt());
        for n in 1..=2 {
            let fac = factorize(&id, n).unwrap();
            assert!(is_isomorphic(fac.space(), &interval_space(n)));
            let report = fac.verify(DEFAULT_NODE_BUDGET).unwrap();
            assert!(report.commutes);
            assert_eq!(report.g_equivalence, Verdict::Pass);
            assert!(is_chain(&fac.deformation()).unwrap());
        }
        let i1 = interval_space(1);
        let f = SpaceMap::new(pt(), i1.clone(), vec![0]).unwrap();
        let fac = factorize(&f, 1).unwrap();
        assert!(is_isomorphic(fac.space(), &interval_space(2)));
        let report = fac.verify(DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(
            report,
            FactorizationReport {
                commutes: true,
                i_cofibration: Verdict::Fail,
                g_equivalence: Verdict::Pass
            }
        );
        let flip = SpaceMap::new(i1.clone(), i1, vec![1, 0]).unwrap();
        let report = factorize(&flip, 1).unwrap().verify(DEFAULT_NODE_BUDGET).unwrap();
        assert!(report.commutes && report.g_equivalence == Verdict::Pass);
    }
}
