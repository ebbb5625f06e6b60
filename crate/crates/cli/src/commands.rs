use std::fmt::Write as _;
use std::io::Read;

use cyclograph::decomposition::census_json;
use cyclograph::io::{decimal, parse_graph, read_graph};
use cyclograph::{
    brute_force_spanning_trees, build_laplacian, cauchy_binet_expand, census, census_total,
    count_alpha_beta, four_vertex_count, galois_count, laplacian_minor, spanning_trees_via_cofactor,
    triangle_count, CycloNum, Error, Limits, OrientedGraph, Result, RootParam, Substructure,
    VertexId,
};
use serde_json::{json, Value};

use crate::args::{Command, Common, EdgeSet, Guard, VertexSet};

/// What a command prints, in both formats, and the exit status to use.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: i32,
    pub warning: Option<String>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            status: 0,
            warning: None,
        }
    }
}

fn load(common: &Common) -> Result<OrientedGraph> {
    if common.graph.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read standard input: {e}"),
        })?;
        parse_graph(&text)
    } else {
        read_graph(&common.graph)
    }
}

fn limits(guard: &Guard) -> Limits {
    if guard.force {
        Limits::unbounded()
    } else {
        Limits::default()
    }
}

fn vertices(graph: &OrientedGraph, vset: &VertexSet) -> Result<Vec<VertexId>> {
    let ids = vset.vset.clone().unwrap_or_else(|| graph.vertices().to_vec());
    graph.vertex_indices(&ids)?;
    let mut seen = std::collections::HashSet::new();
    if let Some(&dup) = ids.iter().find(|v| !seen.insert(**v)) {
        return Err(Error::DuplicateVertex(dup));
    }
    Ok(ids)
}

fn edges(graph: &OrientedGraph, eset: &EdgeSet) -> Vec<usize> {
    eset.eset.clone().unwrap_or_else(|| (0..graph.edge_count()).collect())
}

/// Exact value with its polynomial form and a labelled approximation.
fn value_json(x: &CycloNum) -> Value {
    json!({
        "exact": x,
        "text": x.pretty(),
        "approx": decimal(x),
    })
}

fn value_text(x: &CycloNum) -> String {
    let exact = x.pretty();
    let approx = decimal(x);
    if exact == approx.trim_end_matches('0').trim_end_matches('.') {
        exact
    } else {
        format!("{exact}  (approx {approx})")
    }
}

fn list(vs: &[VertexId]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn determinants_json(ds: &[(RootParam, CycloNum)]) -> Value {
    Value::Array(
        ds.iter()
            .map(|(p, d)| json!({"param": p, "value": value_json(d)}))
            .collect(),
    )
}

fn determinants_text(out: &mut String, ds: &[(RootParam, CycloNum)]) {
    for (p, d) in ds {
        let _ = writeln!(out, "  det at {p} = {}", value_text(d));
    }
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Minor {
            common,
            params,
            vset,
            breakdown,
            guard,
        } => {
            let g = load(common)?;
            let vs = vertices(&g, vset)?;
            let entries = if *breakdown {
                Some(census(&g, &vs, limits(guard))?)
            } else {
                None
            };
            let mut results = Vec::new();
            let mut text = String::new();
            for &p in &params.params {
                let m = laplacian_minor(&g, p, &vs)?.simplify();
                let _ = writeln!(text, "det L[{}] at {p} = {}", list(&vs), value_text(&m));
                let mut record = json!({"param": p, "minor": value_json(&m)});
                if let Some(entries) = &entries {
                    record["breakdown"] = census_json(entries, p);
                    for e in entries {
                        let c = e.class.contribution(p);
                        let _ = writeln!(text, "  {:<16} x{:<5} each {}", e.class.to_string(), e.count, value_text(&c));
                    }
                }
                results.push(record);
            }
            Ok(Report::ok(
                json!({"command": "minor", "vset": vs, "results": results}),
                text,
            ))
        }
        Command::Expand {
            common,
            params,
            vset,
            guard,
        } => {
            let g = load(common)?;
            let vs = vertices(&g, vset)?;
            let mut results = Vec::new();
            let mut text = String::new();
            for &p in &params.params {
                let e = cauchy_binet_expand(&g, p, &vs, limits(guard))?;
                let m = laplacian_minor(&g, p, &vs)?;
                let agrees = e == m;
                let _ = writeln!(
                    text,
                    "sum over edge subsets for [{}] at {p} = {}  ({} elimination)",
                    list(&vs),
                    value_text(&e),
                    if agrees { "matches" } else { "DIFFERS FROM" }
                );
                results.push(json!({"param": p, "expansion": value_json(&e), "matches_minor": agrees}));
            }
            Ok(Report::ok(
                json!({"command": "expand", "vset": vs, "results": results}),
                text,
            ))
        }
        Command::Census {
            common,
            params,
            vset,
            guard,
        } => {
            let g = load(common)?;
            let vs = vertices(&g, vset)?;
            let entries = census(&g, &vs, limits(guard))?;
            let ps = if params.is_empty() {
                vec![RootParam::ONE]
            } else {
                params.clone()
            };
            let mut by_param = Vec::new();
            let mut text = format!("all-regular substructures on [{}]\n", list(&vs));
            for e in &entries {
                let _ = writeln!(text, "  {:<16} x{}", e.class.to_string(), e.count);
            }
            for p in ps {
                let total = census_total(&entries, p);
                let _ = writeln!(text, "weighted total at {p} = {}", value_text(&total));
                by_param.push(json!({
                    "param": p,
                    "entries": census_json(&entries, p),
                    "total": value_json(&total),
                }));
            }
            Ok(Report::ok(
                json!({"command": "census", "vset": vs, "census": by_param}),
                text,
            ))
        }
        Command::CountAb { common, vset, eset } => {
            let g = load(common)?;
            let vs = vertices(&g, vset)?;
            let sub = Substructure::new(&g, &vs, &edges(&g, eset))?;
            let ds: Vec<(RootParam, CycloNum)> = [(5, 1), (5, 2)]
                .iter()
                .map(|&(n, q)| {
                    let p = RootParam::new(n, q).expect("valid parameter");
                    (p, build_laplacian(&sub, p).determinant().simplify())
                })
                .collect();
            let counts = count_alpha_beta(&sub)?;
            let mut text = format!(
                "alpha components: {}\nbeta components: {}\n",
                counts.n_alpha.unwrap_or(0),
                counts.n_beta.unwrap_or(0)
            );
            determinants_text(&mut text, &ds);
            Ok(Report::ok(
                json!({
                    "command": "count-ab",
                    "n_alpha": counts.n_alpha,
                    "n_beta": counts.n_beta,
                    "n_star": counts.n_star,
                    "determinants": determinants_json(&ds),
                }),
                text,
            ))
        }
        Command::CountGalois { common, p, vset, eset } => {
            let g = load(common)?;
            let vs = vertices(&g, vset)?;
            let sub = Substructure::new(&g, &vs, &edges(&g, eset))?;
            let counts = galois_count(&sub, *p)?;
            let order = *p as u32;
            let ds: Vec<(RootParam, CycloNum)> = (1..=(order - 1) / 2)
                .map(|q| {
                    let prm = RootParam::new(order, q).expect("valid parameter");
                    (prm, build_laplacian(&sub, prm).determinant().simplify())
                })
                .collect();
            let mut text = format!("non-vanishing unicyclic components (p = {p}): {}\n", counts.n_star);
            determinants_text(&mut text, &ds);
            Ok(Report::ok(
                json!({
                    "command": "count-galois",
                    "p": p,
                    "n_star": counts.n_star,
                    "determinants": determinants_json(&ds),
                }),
                text,
            ))
        }
        Command::Triangles {
            common,
            vset,
            verify,
            guard,
        } => {
            let g = load(common)?;
            let vs = vertices(&g, vset)?;
            let r = triangle_count(&g, &vs, *verify, limits(guard))?;
            let mut text = format!(
                "triangles on [{}]: {}\nrootless trees: {}\n",
                list(&vs),
                r.triangles,
                r.rootless_trees
            );
            determinants_text(&mut text, &r.determinants);
            Ok(Report::ok(
                json!({
                    "command": "triangles",
                    "vset": vs,
                    "triangles": r.triangles,
                    "rootless_trees": r.rootless_trees,
                    "verified": verify,
                    "determinants": determinants_json(&r.determinants),
                }),
                text,
            ))
        }
        Command::Count4 {
            common,
            vset,
            verify,
            guard,
        } => {
            let g = load(common)?;
            let vs = vertices(&g, vset)?;
            let r = four_vertex_count(&g, &vs, *verify, limits(guard))?;
            let c = r.counts;
            let mut text = format!("four-vertex classes on [{}]\n", list(&vs));
            for (name, v) in [
                ("C(4,4,0)", c.c440),
                ("C(4,4,1)", c.c441),
                ("TU(3,3,0)", c.tu330),
                ("TU(3,3,1)", c.tu331),
                ("F(4)", c.f4),
            ] {
                let _ = writeln!(text, "  {name:<10} {v}");
            }
            determinants_text(&mut text, &r.determinants);
            Ok(Report::ok(
                json!({
                    "command": "count4",
                    "vset": vs,
                    "c440": c.c440,
                    "c441": c.c441,
                    "tu330": c.tu330,
                    "tu331": c.tu331,
                    "f4": c.f4,
                    "verified": verify,
                    "determinants": determinants_json(&r.determinants),
                }),
                text,
            ))
        }
        Command::SpanningTrees {
            common,
            param,
            vertex,
            verify,
        } => {
            let g = load(common)?;
            let v = match vertex {
                Some(v) => *v,
                None => *g.vertices().first().ok_or(Error::EmptyGraph)?,
            };
            let (report, violated) = match spanning_trees_via_cofactor(&g, *param, v) {
                Ok(r) => (r, None),
                Err(Error::ConditionViolated(r)) => {
                    let e = Error::ConditionViolated(r.clone());
                    (*r, Some(e))
                }
                Err(e) => return Err(e),
            };
            if *verify && violated.is_none() {
                let brute = brute_force_spanning_trees(&g);
                if report.count != Some(brute) {
                    return Err(Error::CensusMismatch(format!(
                        "cofactor {} but brute force finds {brute} spanning trees",
                        report.minor
                    )));
                }
            }
            let json = json!({
                "command": "spanning-trees",
                "count": report.count,
                "condition_holds": report.condition_holds,
                "parameter": report.parameter,
                "deleted_vertex": report.deleted_vertex,
                "minor": value_json(&report.minor),
                "verified": *verify && violated.is_none(),
            });
            let text = match &violated {
                None => format!(
                    "spanning trees: {}\n  det L[V - {v}] at {param} = {}\n",
                    report.count.unwrap_or(0),
                    value_text(&report.minor)
                ),
                Some(_) => format!(
                    "cycle condition fails at {param}; cofactor is not a tree count\n  det L[V - {v}] at {param} = {}\n",
                    value_text(&report.minor)
                ),
            };
            Ok(Report {
                json,
                text,
                status: violated.as_ref().map_or(0, Error::exit_code),
                warning: violated.map(|e| e.to_string()),
            })
        }
    }
}
