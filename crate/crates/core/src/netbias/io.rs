//! Graph import/export: edge list `source<TAB>target` plus a node-group
//! sidecar `id<TAB>M|W`, both UTF-8. The sidecar fixes the node set and
//! node order; duplicate edges and self-loops are preserved on import so a
//! shuffled null round-trips bit for bit.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;

use super::DirectedGraph;
use crate::corpus::Group;
use crate::error::{Error, Result};

pub fn write_edge_list(graph: &DirectedGraph, edges_path: &Path, groups_path: &Path) -> Result<()> {
    let io_err = |path: &Path| {
        let p = path.to_path_buf();
        move |source: std::io::Error| Error::Io { path: p.clone(), source }
    };
    let mut out = std::io::BufWriter::new(
        std::fs::File::create(edges_path).map_err(io_err(edges_path))?,
    );
    for &(u, v) in graph.edges() {
        writeln!(out, "{}\t{}", graph.ids()[u as usize], graph.ids()[v as usize])
            .map_err(io_err(edges_path))?;
    }
    out.flush().map_err(io_err(edges_path))?;

    let mut out = std::io::BufWriter::new(
        std::fs::File::create(groups_path).map_err(io_err(groups_path))?,
    );
    for (id, group) in graph.ids().iter().zip(graph.groups()) {
        writeln!(out, "{}\t{}", id, group.as_str()).map_err(io_err(groups_path))?;
    }
    out.flush().map_err(io_err(groups_path))
}

pub fn read_edge_list(edges_path: &Path, groups_path: &Path) -> Result<DirectedGraph> {
    let open = |path: &Path| -> Result<std::io::BufReader<std::fs::File>> {
        Ok(std::io::BufReader::new(std::fs::File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?))
    };

    let mut ids = Vec::new();
    let mut groups = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    for (lineno, line) in open(groups_path)?.lines().enumerate() {
        let line = line.map_err(|source| Error::Io { path: groups_path.to_path_buf(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        let (id, group) = line.split_once('\t').ok_or_else(|| Error::MalformedRecord {
            line: lineno + 1,
            msg: "expected id<TAB>group".into(),
        })?;
        let group = match group.trim() {
            "M" => Group::M,
            "W" => Group::W,
            other => {
                return Err(Error::MalformedRecord {
                    line: lineno + 1,
                    msg: format!("group must be M or W, got {other:?}"),
                })
            }
        };
        if index.insert(id.to_string(), ids.len() as u32).is_some() {
            return Err(Error::DuplicateId { id: id.to_string(), line: lineno + 1 });
        }
        ids.push(id.to_string());
        groups.push(group);
    }

    let mut edges = Vec::new();
    let mut simple = true;
    let mut seen = std::collections::HashSet::new();
    for (lineno, line) in open(edges_path)?.lines().enumerate() {
        let line = line.map_err(|source| Error::Io { path: edges_path.to_path_buf(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        let (src, dst) = line.split_once('\t').ok_or_else(|| Error::MalformedRecord {
            line: lineno + 1,
            msg: "expected source<TAB>target".into(),
        })?;
        let resolve = |id: &str| {
            index.get(id).copied().ok_or_else(|| Error::MalformedRecord {
                line: lineno + 1,
                msg: format!("edge endpoint {id:?} missing from the group sidecar"),
            })
        };
        let edge = (resolve(src)?, resolve(dst)?);
        if edge.0 == edge.1 || !seen.insert(edge) {
            simple = false;
        }
        edges.push(edge);
    }
    DirectedGraph::from_parts(ids, groups, edges, simple)
}
