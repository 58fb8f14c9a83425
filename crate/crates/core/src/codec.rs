//! Interchange formats: space and map JSON documents, edge lists, hypergraph and
//! topology JSON, and CSV distance matrices. JSON output always has sorted keys.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::builders::{FiniteTopologyData, GraphData, HypergraphData, Orientation, ScaledMetricData};
use crate::error::{Error, Result};
use crate::map::SpaceMap;
use crate::space::{PointSet, Space};
use crate::subset::Subset;

/// Version of the document formats below.
pub const SCHEMA_VERSION: u32 = 1;

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })
}

fn field<'a>(obj: &'a Value, name: &str, at: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(at.to_string(), format!("missing field {name:?}")))
}

fn string_list(v: &Value, at: &str) -> Result<Vec<String>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::parse(at.to_string(), "expected an array of strings"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(Error::parse(format!("{at}[{i}]"), "expected a string")),
        })
        .collect()
}

fn subset_of(points: &PointSet, labels: &[String], at: &str) -> Result<Subset> {
    let mut s = Subset::empty(points.len());
    for (i, l) in labels.iter().enumerate() {
        let idx = points
            .index_of(l)
            .ok_or_else(|| Error::parse(format!("{at}[{i}]"), format!("unknown point {l:?}")))?;
        s.insert(idx);
    }
    Ok(s)
}

pub fn space_from_value(doc: &Value) -> Result<Space> {
    let labels = string_list(field(doc, "points", "document")?, "points")?;
    let points = PointSet::new(labels)?;
    let kind = match doc.get("kind") {
        None => "point-limit",
        Some(Value::String(k)) => k.as_str(),
        Some(_) => return Err(Error::parse("kind", "expected a string")),
    };
    let limits = field(doc, "limits", "document")?;
    match kind {
        "point-limit" => {
            let obj = limits
                .as_object()
                .ok_or_else(|| Error::parse("limits", "expected an object"))?;
            let mut sets = vec![Subset::empty(points.len()); points.len()];
            for (p, v) in obj {
                let at = format!("limits.{p}");
                let y = points
                    .index_of(p)
                    .ok_or_else(|| Error::parse(at.clone(), format!("unknown point {p:?}")))?;
                sets[y] = subset_of(&points, &string_list(v, &at)?, &at)?;
            }
            Space::new(points, sets)
        }
        "subset-limit" => {
            let arr = limits
                .as_array()
                .ok_or_else(|| Error::parse("limits", "expected an array"))?;
            let mut map = BTreeMap::new();
            for (i, entry) in arr.iter().enumerate() {
                let at = format!("limits[{i}]");
                let g = subset_of(&points, &string_list(field(entry, "filter", &at)?, &at)?, &at)?;
                if g.is_empty() {
                    return Err(Error::parse(at, "filter generator must be non-empty"));
                }
                let l = subset_of(&points, &string_list(field(entry, "limits", &at)?, &at)?, &at)?;
                map.insert(g, l);
            }
            Space::from_subset_limits(points, map)
        }
        other => Err(Error::parse("kind", format!("unknown kind {other:?}"))),
    }
}

pub fn space_to_value(s: &Space) -> Value {
    let points: Vec<&str> = s.points().labels().iter().map(String::as_str).collect();
    match s.stored_filter_limits() {
        None => {
            let mut limits = Map::new();
            for y in 0..s.len() {
                limits.insert(
                    s.label(y).to_string(),
                    json!(s.points().labels_of(s.point_limits(y))),
                );
            }
            json!({"points": points, "kind": "point-limit", "limits": limits})
        }
        Some(map) => {
            // Generators listed by size, then by point order.
            let mut entries: Vec<(&Subset, &Subset)> = map.iter().collect();
            entries.sort_by_key(|(g, _)| (g.count(), g.iter().collect::<Vec<_>>()));
            let limits: Vec<Value> = entries
                .into_iter()
                .map(|(g, l)| json!({"filter": s.points().labels_of(g), "limits": s.points().labels_of(l)}))
                .collect();
            json!({"points": points, "kind": "subset-limit", "limits": limits})
        }
    }
}

pub fn read_space(text: &str) -> Result<Space> {
    space_from_value(&parse_json(text)?)
}

pub fn write_space(s: &Space) -> String {
    pretty(&space_to_value(s))
}

pub fn pretty(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable");
    out.push('\n');
    out
}

/// Every `*.json` space in `dir`, named by file stem, in file-name order.
pub fn read_space_dir(dir: &Path) -> Result<Vec<(String, Space)>> {
    let io = |e: std::io::Error| Error::Io {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()
        .map_err(io)?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
            let space = read_space(&text).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("{}: {location}", p.display()),
                    message,
                },
                other => other,
            })?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, space))
        })
        .collect()
}

/// Edge list: a `# vertices: a b c` header followed by one `u v` pair per line.
/// Without a header, vertices are taken in order of first appearance.
pub fn read_edge_list(text: &str) -> Result<GraphData> {
    let mut declared: Option<Vec<String>> = None;
    let mut pairs: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(vs) = rest.trim().strip_prefix("vertices:") {
                if declared.is_some() {
                    return Err(Error::parse(format!("line {lineno}"), "duplicate vertices header"));
                }
                declared = Some(vs.split_whitespace().map(str::to_string).collect());
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                format!("line {lineno}"),
                format!("expected `u v`, found {} fields", fields.len()),
            ));
        }
        pairs.push((lineno, fields[0].to_string(), fields[1].to_string()));
    }
    let labels = match declared {
        Some(v) => v,
        None => {
            let mut seen = Vec::new();
            for (_, u, v) in &pairs {
                for w in [u, v] {
                    if !seen.contains(w) {
                        seen.push(w.clone());
                    }
                }
            }
            seen
        }
    };
    let points = PointSet::new(labels)?;
    for (lineno, u, v) in &pairs {
        for w in [u, v] {
            if points.index_of(w).is_none() {
                return Err(Error::parse(format!("line {lineno}"), format!("unknown vertex {w:?}")));
            }
        }
        if u == v {
            return Err(Error::parse(format!("line {lineno}"), format!("self-loop at {u:?}")));
        }
    }
    GraphData::new(points, pairs.iter().map(|(_, u, v)| (u.as_str(), v.as_str())))
}

pub fn write_edge_list(g: &GraphData) -> String {
    let mut out = format!("# vertices: {}\n", g.vertices.labels().join(" "));
    for &(a, b) in &g.edges {
        out.push_str(&format!("{} {}\n", g.vertices.label(a), g.vertices.label(b)));
    }
    out
}

/// Hypergraph JSON with an optional `"orientation": "faces" | "cofaces"`.
pub fn read_hypergraph(text: &str) -> Result<(HypergraphData, Option<Orientation>)> {
    let doc = parse_json(text)?;
    let points = PointSet::new(string_list(field(&doc, "vertices", "document")?, "vertices")?)?;
    let edges = field(&doc, "edges", "document")?
        .as_array()
        .ok_or_else(|| Error::parse("edges", "expected an array"))?;
    let mut sets = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        let at = format!("edges[{i}]");
        let s = subset_of(&points, &string_list(e, &at)?, &at)?;
        if s.is_empty() {
            return Err(Error::EmptyHyperedge(i));
        }
        sets.push(s);
    }
    let orientation = match doc.get("orientation").and_then(Value::as_str) {
        None => None,
        Some("faces") => Some(Orientation::Faces),
        Some("cofaces") => Some(Orientation::Cofaces),
        Some(o) => return Err(Error::parse("orientation", format!("unknown orientation {o:?}"))),
    };
    Ok((HypergraphData { vertices: points, edges: sets }, orientation))
}

pub fn write_hypergraph(h: &HypergraphData) -> String {
    let edges: Vec<Vec<String>> = h.edges.iter().map(|e| h.vertices.labels_of(e)).collect();
    pretty(&json!({"vertices": h.vertices.labels(), "edges": edges}))
}

pub fn read_topology(text: &str) -> Result<FiniteTopologyData> {
    let doc = parse_json(text)?;
    let points = PointSet::new(string_list(field(&doc, "points", "document")?, "points")?)?;
    let opens = field(&doc, "opens", "document")?
        .as_array()
        .ok_or_else(|| Error::parse("opens", "expected an array"))?;
    let mut sets = Vec::with_capacity(opens.len());
    for (i, o) in opens.iter().enumerate() {
        let at = format!("opens[{i}]");
        sets.push(subset_of(&points, &string_list(o, &at)?, &at)?);
    }
    let t = FiniteTopologyData { points, opens: sets };
    t.validate()?;
    Ok(t)
}

/// CSV distance matrix: a header row of point labels, then one row of distances per
/// point, optionally prefixed by that point's label.
pub fn read_distance_csv(text: &str, scale: f64) -> Result<ScaledMetricData<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::parse("line 1", e.to_string()))?
        .iter()
        .filter(|h| !h.is_empty())
        .map(str::to_string)
        .collect();
    let n = header.len();
    let points = PointSet::new(header)?;
    let mut rows = Vec::with_capacity(n);
    for (i, rec) in reader.records().enumerate() {
        let lineno = i + 2;
        let rec = rec.map_err(|e| Error::parse(format!("line {lineno}"), e.to_string()))?;
        let fields: Vec<&str> = rec.iter().collect();
        let values = match fields.len() {
            k if k == n => &fields[..],
            k if k == n + 1 => {
                if points.index_of(fields[0]) != Some(i) {
                    return Err(Error::parse(
                        format!("line {lineno}, column 1"),
                        format!("row label {:?} does not match header", fields[0]),
                    ));
                }
                &fields[1..]
            }
            k => {
                return Err(Error::parse(
                    format!("line {lineno}"),
                    format!("expected {n} distances, found {k} fields"),
                ))
            }
        };
        let row = values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                v.parse::<f64>().map_err(|e| {
                    Error::parse(format!("line {lineno}, column {}", j + 1), e.to_string())
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse("document", format!("expected {n} rows, found {}", rows.len())));
    }
    ScaledMetricData::new(points, rows, scale)
}

/// Map document: `{"domain": space, "codomain": space, "assignment": {"a": "x", ..}}`.
pub fn map_from_value(doc: &Value) -> Result<SpaceMap> {
    let domain = Arc::new(space_from_value(field(doc, "domain", "document")?)?);
    let codomain = Arc::new(space_from_value(field(doc, "codomain", "document")?)?);
    map_between(domain, codomain, field(doc, "assignment", "document")?, "assignment")
}

/// Assignment object `{"a": "x"}` between known spaces.
pub fn map_between(domain: Arc<Space>, codomain: Arc<Space>, assignment: &Value, at: &str) -> Result<SpaceMap> {
    let obj = assignment
        .as_object()
        .ok_or_else(|| Error::parse(at.to_string(), "expected an object"))?;
    let mut pairs = Vec::with_capacity(obj.len());
    for (k, v) in obj {
        let v = v
            .as_str()
            .ok_or_else(|| Error::parse(format!("{at}.{k}"), "expected a string"))?;
        pairs.push((k.as_str(), v));
    }
    SpaceMap::from_labels(domain, codomain, pairs)
}

pub fn read_map(text: &str) -> Result<SpaceMap> {
    map_from_value(&parse_json(text)?)
}

pub fn assignment_to_value(f: &SpaceMap) -> Value {
    let obj: Map<String, Value> = f
        .labeled_pairs()
        .into_iter()
        .map(|(a, b)| (a, Value::String(b)))
        .collect();
    Value::Object(obj)
}

pub fn map_to_value(f: &SpaceMap) -> Value {
    json!({
        "domain": space_to_value(f.domain()),
        "codomain": space_to_value(f.codomain()),
        "assignment": assignment_to_value(f),
    })
}

pub fn write_map(f: &SpaceMap) -> String {
    pretty(&map_to_value(f))
}

/// A homotopy chain as an array of assignments.
pub fn chain_to_value(chain: &[SpaceMap]) -> Value {
    Value::Array(chain.iter().map(assignment_to_value).collect())
}

pub fn read_json(text: &str) -> Result<Value> {
    parse_json(text)
}
