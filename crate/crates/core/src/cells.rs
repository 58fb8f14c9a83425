//! Cell models, cell attachment, presentations, lifting checks against declared
//! models and bounded weak-equivalence checks.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::codec::{assignment_to_value, map_between, space_from_value, space_to_value};
use crate::cofibration::Verdict;
use crate::constructions::{pushout, quotient_by_map, PushoutResult};
use crate::error::{Error, Result};
use crate::homotopy::cylinder;
use crate::invariants::{pi0, pi_n, sphere_model, BasedSpace, PiNOptions};
use crate::map::SpaceMap;
use crate::search::{evenly_spaced, MapSearch, DEFAULT_NODE_BUDGET};
use crate::space::{PointSet, Space};
use crate::subset::Subset;
use crate::union_find::UnionFind;

/// `Dⁿ` as the cone over the sphere model `Sⁿ⁻¹`, every level of length `length`.
#[derive(Clone, Debug)]
pub struct CellModel {
    pub dim: usize,
    pub length: usize,
    pub sphere: Arc<Space>,
    pub disk: Arc<Space>,
    /// `Sⁿ⁻¹ → Dⁿ`.
    pub boundary: SpaceMap,
}

impl CellModel {
    pub fn new(dim: usize, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(Error::InvalidArgument("cell length must be positive".into()));
        }
        if dim == 0 {
            let disk = Arc::new(Space::point());
            return Ok(CellModel {
                dim,
                length,
                sphere: Arc::new(Space::empty()),
                boundary: SpaceMap::from_empty(disk.clone()),
                disk,
            });
        }
        let sphere = sphere_model(dim - 1, &vec![length; dim - 1])?.top().space.clone();
        let cyl = cylinder(&sphere, length)?;
        let mut uf = UnionFind::new(cyl.space().len());
        for s in 0..sphere.len() {
            uf.union(cyl.at(0, length), cyl.at(s, length));
        }
        let q = quotient_by_map(cyl.space(), &uf.class_map())?;
        let boundary = cyl.i0.then(&q.projection)?;
        Ok(CellModel {
            dim,
            length,
            sphere,
            disk: q.space.clone(),
            boundary,
        })
    }

    /// Points of the disk off the boundary.
    pub fn interior(&self) -> Subset {
        self.boundary.image(&Subset::full(self.sphere.len())).complement()
    }
}

/// One pushout `X ∪_h Dⁿ`.
#[derive(Clone, Debug)]
pub struct Attachment {
    pub model: CellModel,
    pub attaching: SpaceMap,
    pub pushout: PushoutResult,
    pub result: Arc<Space>,
    /// `Dⁿ → X ∪_h Dⁿ`.
    pub characteristic: SpaceMap,
    /// `X → X ∪_h Dⁿ`.
    pub inclusion: SpaceMap,
}

impl Attachment {
    /// Keeps the labels of `X` and names the new points `{prefix}{disk label}`.
    pub fn relabeled(&self, prefix: &str) -> Result<Attachment> {
        let apex = &self.pushout.apex;
        let mut labels: Vec<String> = vec![String::new(); apex.len()];
        let mut old = vec![false; apex.len()];
        for (x, &q) in self.inclusion.assignment().iter().enumerate() {
            labels[q] = self.attaching.codomain().label(x).to_string();
            old[q] = true;
        }
        for (d, &q) in self.characteristic.assignment().iter().enumerate() {
            if !old[q] {
                labels[q] = format!("{prefix}{}", self.model.disk.label(d));
            }
        }
        let result = Arc::new(apex.relabeled(PointSet::new(labels)?)?);
        Ok(Attachment {
            characteristic: self.characteristic.retarget(self.model.disk.clone(), result.clone())?,
            inclusion: self.inclusion.retarget(self.attaching.codomain().clone(), result.clone())?,
            result,
            ..self.clone()
        })
    }
}

pub fn attach_cell(x: &Arc<Space>, model: &CellModel, h: &SpaceMap) -> Result<Attachment> {
    if h.domain().len() != model.sphere.len() || !h.domain().same_point_structure(&model.sphere) {
        return Err(Error::NotContinuousAttachment(format!(
            "attaching map is not defined on the {}-sphere model",
            model.dim as isize - 1
        )));
    }
    if h.codomain().len() != x.len() || !h.codomain().same_point_structure(x) {
        return Err(Error::NotContinuousAttachment("attaching map does not land in the space".into()));
    }
    let h = h.retarget(model.sphere.clone(), x.clone())?;
    if !h.is_continuous() {
        return Err(Error::NotContinuousAttachment(format!("{h:?}")));
    }
    let pushout = pushout(&model.boundary, &h)?;
    Ok(Attachment {
        model: model.clone(),
        attaching: h,
        result: pushout.apex.clone(),
        characteristic: pushout.leg0.clone(),
        inclusion: pushout.leg1.clone(),
        pushout,
    })
}

/// A cell to attach: the attaching map is given on the current stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSpec {
    pub dim: usize,
    pub length: usize,
    pub attaching: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub base: Arc<Space>,
    pub cells: Vec<Attachment>,
    /// Interior points of each cell in the final space.
    pub cell_points: Vec<Subset>,
}

impl Presentation {
    pub fn result(&self) -> &Arc<Space> {
        self.cells.last().map(|a| &a.result).unwrap_or(&self.base)
    }

    pub fn to_value(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|a| {
                json!({
                    "dim": a.model.dim,
                    "length": a.model.length,
                    "attachingMap": assignment_to_value(&a.attaching),
                })
            })
            .collect();
        json!({
            "base": space_to_value(&self.base),
            "cells": cells,
            "result": space_to_value(self.result()),
            "topological": self.result().is_topological(),
        })
    }
}

/// Attaches `specs` left to right. Points of the `k`-th cell are labelled `e{k}.…`.
pub fn build_presentation(base: &Arc<Space>, specs: &[CellSpec]) -> Result<Presentation> {
    let mut p = Presentation {
        base: base.clone(),
        cells: Vec::with_capacity(specs.len()),
        cell_points: Vec::with_capacity(specs.len()),
    };
    for spec in specs {
        let model = CellModel::new(spec.dim, spec.length)?;
        let h = SpaceMap::new(model.sphere.clone(), p.result().clone(), spec.attaching.clone())
            .map_err(|e| Error::NotContinuousAttachment(e.to_string()))?;
        p.push(&model, &h)?;
    }
    Ok(p)
}

impl Presentation {
    fn push(&mut self, model: &CellModel, h: &SpaceMap) -> Result<()> {
        let current = self.result().clone();
        let a = attach_cell(&current, model, h)?.relabeled(&format!("e{}.", self.cells.len()))?;
        for pts in self.cell_points.iter_mut() {
            *pts = a.inclusion.image(pts);
        }
        self.cell_points.push(a.characteristic.image(&model.interior()));
        self.cells.push(a);
        Ok(())
    }
}

/// Reads `{"base": space?, "cells": [{"dim", "length", "attachingMap": {sphere: point}}]}`.
pub fn presentation_from_value(doc: &Value) -> Result<Presentation> {
    let base = match doc.get("base") {
        Some(v) => Arc::new(space_from_value(v)?),
        None => Arc::new(Space::empty()),
    };
    let cells = doc
        .get("cells")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("cells", "expected an array"))?;
    let mut p = Presentation {
        base,
        cells: Vec::with_capacity(cells.len()),
        cell_points: Vec::with_capacity(cells.len()),
    };
    for (k, cell) in cells.iter().enumerate() {
        let at = format!("cells[{k}]");
        let num = |key: &str| {
            cell.get(key)
                .and_then(Value::as_u64)
                .map(|v| v as usize)
                .ok_or_else(|| Error::parse(format!("{at}.{key}"), "expected a non-negative integer"))
        };
        let dim = num("dim")?;
        let length = if dim == 0 { num("length").unwrap_or(1) } else { num("length")? };
        let model = CellModel::new(dim, length)?;
        let empty = Value::Object(Map::new());
        let assignment = cell.get("attachingMap").unwrap_or(&empty);
        let h = map_between(model.sphere.clone(), p.result().clone(), assignment, &format!("{at}.attachingMap"))?;
        p.push(&model, &h)?;
    }
    Ok(p)
}

/// Cells whose interiors meet `k`, a subset of the final space.
pub fn cells_meeting(p: &Presentation, k: &Subset) -> Vec<usize> {
    (0..p.cells.len()).filter(|&c| !p.cell_points[c].is_disjoint(k)).collect()
}

#[derive(Clone, Debug)]
pub struct SerreOptions {
    pub budget: u64,
    /// Maps `Dⁿ → E` tried per model.
    pub max_tops: usize,
    /// Homotopies `Dⁿ × I₁ → B` tried per top map.
    pub max_homotopies: usize,
}

impl Default for SerreOptions {
    fn default() -> Self {
        SerreOptions {
            budget: DEFAULT_NODE_BUDGET,
            max_tops: 16,
            max_homotopies: 16,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelResult {
    pub dim: usize,
    pub length: usize,
    pub squares: usize,
    pub lifted: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerreReport {
    /// Verdicts hold relative to these declared cell models only.
    pub models: Vec<ModelResult>,
    pub verdict: Verdict,
}

/// Lifting against `Dⁿ × {0} → Dⁿ × I₁` for each declared model.
pub fn serre_check(p: &SpaceMap, models: &[CellModel], opts: &SerreOptions) -> Result<SerreReport> {
    p.require_continuous()?;
    let (e, b) = (p.domain(), p.codomain());
    let mut results = Vec::with_capacity(models.len());
    for model in models {
        let d = &model.disk;
        let cyl = cylinder(d, 1)?;
        let tops = MapSearch::new(d, e).with_budget(opts.budget).all()?;
        let mut squares = Vec::new();
        for k in evenly_spaced(tops.len(), opts.max_tops) {
            let u = &tops[k];
            let mut hs = MapSearch::new(cyl.space(), b).with_budget(opts.budget);
            for x in 0..d.len() {
                hs.fix(cyl.at(x, 0), p.apply(u[x]));
            }
            let homotopies = hs.all()?;
            for j in evenly_spaced(homotopies.len(), opts.max_homotopies) {
                squares.push((u.clone(), homotopies[j].clone()));
            }
        }
        let outcomes = squares
            .par_iter()
            .map(|(u, h)| {
                let mut lift = MapSearch::new(cyl.space(), e).with_budget(opts.budget);
                for x in 0..d.len() {
                    lift.fix(cyl.at(x, 0), u[x]);
                    let over = h[cyl.at(x, 1)];
                    let fibre = Subset::from_indices(e.len(), (0..e.len()).filter(|&y| p.apply(y) == over));
                    lift.restrict(cyl.at(x, 1), &fibre);
                }
                Verdict::from_result(lift.first().map(|l| l.is_some()))
            })
            .collect::<Result<Vec<_>>>()?;
        let lifted = outcomes.iter().filter(|v| **v == Verdict::Pass).count();
        let failed = outcomes.iter().position(|v| *v == Verdict::Fail);
        let verdict = if failed.is_some() {
            Verdict::Fail
        } else if lifted < outcomes.len() {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        results.push(ModelResult {
            dim: model.dim,
            length: model.length,
            squares: squares.len(),
            lifted,
            verdict,
            counterexample: failed.map(|k| json!({"top": squares[k].0, "homotopy": squares[k].1})),
        });
    }
    let verdict = Verdict::all(results.iter().map(|r| r.verdict));
    Ok(SerreReport { models: results, verdict })
}

/// Disk models in dimensions `0..=max_dim`, all of the given length.
pub fn default_models(max_dim: usize, length: usize) -> Result<Vec<CellModel>> {
    (0..=max_dim).map(|d| CellModel::new(d, length)).collect()
}

#[derive(Clone, Debug)]
pub struct WeqOptions {
    pub n_max: usize,
    pub budgets: Vec<usize>,
    pub pi: PiNOptions,
}

impl Default for WeqOptions {
    fn default() -> Self {
        WeqOptions {
            n_max: 1,
            budgets: vec![4, 5, 6],
            pi: PiNOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelCheck {
    pub n: usize,
    pub base: String,
    pub domain_classes: usize,
    pub codomain_classes: usize,
    pub bijective: bool,
    pub stabilized: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WeqReport {
    pub pi0_domain: usize,
    pub pi0_codomain: usize,
    pub pi0_bijective: bool,
    pub levels: Vec<LevelCheck>,
    /// Highest dimension and interval length the verdict covers.
    pub checked_up_to: [usize; 2],
    pub verdict: Verdict,
}

/// π₀ and, at every base point, πₙ for `1 ≤ n ≤ n_max` at the given budgets.
pub fn weak_equivalence_check(f: &SpaceMap, opts: &WeqOptions) -> Result<WeqReport> {
    f.require_continuous()?;
    let (x, y) = (f.domain(), f.codomain());
    let cx = pi0(x);
    let cy = pi0(y);
    let comp_y = component_index(y.len(), &cy);
    let mut hit = vec![false; cy.len()];
    let mut image = Vec::with_capacity(cx.len());
    for c in &cx {
        let target = comp_y[f.apply(c[0])];
        image.push(target);
        hit[target] = true;
    }
    let injective = {
        let mut seen = vec![false; cy.len()];
        image.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    };
    let pi0_bijective = injective && hit.iter().all(|&h| h);
    let mut levels = Vec::new();
    for n in 1..=opts.n_max {
        for base in 0..x.len() {
            let bx = BasedSpace::new(x.clone(), base)?;
            let by = BasedSpace::new(y.clone(), f.apply(base))?;
            let px = pi_n(&bx, n, &opts.budgets, &opts.pi)?;
            let py = pi_n(&by, n, &opts.budgets, &opts.pi)?;
            let (lx, ly) = (px.last(), py.last());
            let mut seen = vec![false; ly.len()];
            let mut injective = true;
            for c in 0..lx.len() {
                let pushed: Vec<usize> = lx.representative(c).iter().map(|&v| f.apply(v)).collect();
                let t = ly.class_of_map(&pushed).expect("based composite");
                injective &= !std::mem::replace(&mut seen[t], true);
            }
            levels.push(LevelCheck {
                n,
                base: x.label(base).to_string(),
                domain_classes: lx.len(),
                codomain_classes: ly.len(),
                bijective: injective && seen.iter().all(|&s| s),
                stabilized: px.stabilized && py.stabilized,
            });
        }
    }
    let ok = pi0_bijective && levels.iter().all(|l| l.bijective);
    Ok(WeqReport {
        pi0_domain: cx.len(),
        pi0_codomain: cy.len(),
        pi0_bijective,
        levels,
        checked_up_to: [opts.n_max, opts.budgets.last().copied().unwrap_or(0)],
        verdict: Verdict::from_bool(ok),
    })
}

fn component_index(n: usize, classes: &[Vec<usize>]) -> Vec<usize> {
    let mut out = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            out[m] = c;
        }
    }
    out
}
