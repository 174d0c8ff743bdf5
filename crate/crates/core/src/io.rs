//! Text formats: edge lists, contraction sequences, rotation maps.
//!
//! Edge list: first line `n m`, then `m` lines `u v` with `0 <= u < v < n`.
//! Sequence: one `survivor absorbed` pair per line.
//! Rotation map: one `v i w j` quadruple per line (slots 1-based).
//!
//! Writers emit a canonical form (edges sorted ascending) so that
//! write -> read -> write is byte-identical.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rotation::RotationMap;
use crate::sequence::ContractionSequence;

fn parse_fields(line: &str, want: usize, what: &str) -> Result<Vec<usize>> {
    let fields: Vec<usize> = line
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad {what} token {tok:?}")))
        })
        .collect::<Result<_>>()?;
    if fields.len() != want {
        return Err(Error::Parse(format!(
            "expected {want} fields in {what} line, got {}: {line:?}",
            fields.len()
        )));
    }
    Ok(fields)
}

pub fn write_edge_list(g: &Graph, mut w: impl Write) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_edge_list(r: impl BufRead) -> Result<Graph> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge-list file".into()))??;
    let head = parse_fields(&header, 2, "header")?;
    let (n, m) = (head[0], head[1]);
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f = parse_fields(&line, 2, "edge")?;
        if f[0] >= f[1] {
            return Err(Error::Parse(format!(
                "edge endpoints must satisfy u < v: {line:?}"
            )));
        }
        edges.push((f[0], f[1]));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header promises {m} edges, file has {}",
            edges.len()
        )));
    }
    Graph::new(n, &edges).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_edge_list_file(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    read_edge_list(std::io::BufReader::new(file))
}

pub fn write_sequence(seq: &ContractionSequence, mut w: impl Write) -> Result<()> {
    for &(s, a) in seq.steps() {
        writeln!(w, "{s} {a}")?;
    }
    Ok(())
}

pub fn read_sequence(r: impl BufRead) -> Result<ContractionSequence> {
    let mut steps = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f = parse_fields(&line, 2, "sequence")?;
        steps.push((f[0], f[1]));
    }
    Ok(ContractionSequence::from_steps(steps))
}

pub fn write_sequence_file(seq: &ContractionSequence, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_sequence(seq, &mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn read_sequence_file(path: impl AsRef<Path>) -> Result<ContractionSequence> {
    let file = std::fs::File::open(path)?;
    read_sequence(std::io::BufReader::new(file))
}

pub fn write_rotation_map(rot: &RotationMap, mut w: impl Write) -> Result<()> {
    for v in 0..rot.n() {
        for i in 1..=rot.degree() {
            let (dst, j) = rot.rot(v, i);
            writeln!(w, "{v} {i} {dst} {j}")?;
        }
    }
    Ok(())
}

pub fn read_rotation_map(r: impl BufRead) -> Result<RotationMap> {
    let mut quads = Vec::new();
    let (mut n, mut d) = (0usize, 0usize);
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f = parse_fields(&line, 4, "rotation")?;
        if f[1] == 0 || f[3] == 0 {
            return Err(Error::Parse("rotation slots are 1-based".into()));
        }
        n = n.max(f[0] + 1).max(f[2] + 1);
        d = d.max(f[1]).max(f[3]);
        quads.push((f[0], f[1], f[2], f[3]));
    }
    if quads.len() != n * d {
        return Err(Error::Parse(format!(
            "rotation map needs {} lines for n={n}, d={d}; got {}",
            n * d,
            quads.len()
        )));
    }
    let mut table = vec![None; n * d];
    for (v, i, w, j) in quads {
        let slot = &mut table[v * d + (i - 1)];
        if slot.is_some() {
            return Err(Error::Parse(format!("duplicate rotation entry ({v},{i})")));
        }
        *slot = Some((w, j));
    }
    let table: Vec<(usize, usize)> = table
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Parse("rotation map has missing entries".into()))?;
    let rot = RotationMap::from_table(n, d, table);
    rot.check_involution()
        .map_err(|e| Error::Parse(e.to_string()))?;
    Ok(rot)
}

pub fn write_rotation_map_file(rot: &RotationMap, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_rotation_map(rot, &mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn read_rotation_map_file(path: impl AsRef<Path>) -> Result<RotationMap> {
    let file = std::fs::File::open(path)?;
    read_rotation_map(std::io::BufReader::new(file))
}
