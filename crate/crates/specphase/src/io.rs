//! Edge lists, label files, CSV result tables and parameter manifests.
//!
//! Edge lists are plain text, one `u v` pair per line, `#` starting a comment
//! line. Node ids are arbitrary tokens, numbered densely in order of first
//! appearance. Label files are `id,label` CSV with an optional header row.
//!
//! Result tables start with a `# specphase-<kind> v1` comment, then a header
//! row. Floats are written with at most 10 significant digits, in the
//! shortest form that reads back to the rounded value.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use specphase_core::SparseGraph;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: self-loop on node `{id}`")]
    SelfLoop { line: usize, id: String },
    #[error("line {line}: unknown node id `{id}`")]
    UnknownId { line: usize, id: String },
    #[error("node `{id}` has no label")]
    MissingLabel { id: String },
    #[error("expected at most two scored label values, found {0:?}")]
    TooManyLabels(Vec<String>),
    #[error(transparent)]
    Graph(#[from] specphase_core::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Dense ids to external names and back.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdMap {
    /// `0..n` named by their decimal ids.
    pub fn numeric(n: usize) -> Self {
        let mut map = Self::default();
        for i in 0..n {
            map.intern(&i.to_string());
        }
        map
    }

    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), i);
        i
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

pub fn parse_edge_list(reader: impl BufRead) -> Result<(SparseGraph, IdMap)> {
    let mut ids = IdMap::default();
    let mut edges = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let lineno = k + 1;
        let line = line.map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let [u, v] = tokens[..] else {
            return Err(Error::Malformed {
                line: lineno,
                message: format!("expected two node ids, found {} tokens", tokens.len()),
            });
        };
        if u == v {
            return Err(Error::SelfLoop {
                line: lineno,
                id: u.to_owned(),
            });
        }
        edges.push((ids.intern(u), ids.intern(v)));
    }
    let graph = SparseGraph::from_edges(ids.len(), edges)?;
    Ok((graph, ids))
}

pub fn read_edge_list(path: &Path) -> Result<(SparseGraph, IdMap)> {
    let file = File::open(path).map_err(io_err(path))?;
    parse_edge_list(BufReader::new(file))
}

/// One `u v` line per edge in canonical order (`u < v` by dense id).
pub fn write_edge_list(g: &SparseGraph, ids: &IdMap, mut w: impl Write) -> io::Result<()> {
    for (i, j) in g.edges() {
        writeln!(w, "{} {}", ids.name(i), ids.name(j))?;
    }
    Ok(())
}

/// Reads `id,label` rows and aligns them to `ids`. Every node must be labeled.
pub fn parse_labels(reader: impl BufRead, ids: &IdMap) -> Result<Vec<String>> {
    let mut labels: Vec<Option<String>> = vec![None; ids.len()];
    for (k, line) in reader.lines().enumerate() {
        let lineno = k + 1;
        let line = line.map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let Some((id, label)) = body.split_once(',') else {
            return Err(Error::Malformed {
                line: lineno,
                message: "expected `id,label`".into(),
            });
        };
        let (id, label) = (id.trim(), label.trim());
        if lineno == 1 && id == "id" && label == "label" {
            continue;
        }
        if label.is_empty() || label.contains(',') {
            return Err(Error::Malformed {
                line: lineno,
                message: "expected `id,label`".into(),
            });
        }
        let node = ids.get(id).ok_or_else(|| Error::UnknownId {
            line: lineno,
            id: id.to_owned(),
        })?;
        labels[node] = Some(label.to_owned());
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| Error::MissingLabel {
                id: ids.name(i).to_owned(),
            })
        })
        .collect()
}

pub fn read_labels(path: &Path, ids: &IdMap) -> Result<Vec<String>> {
    let file = File::open(path).map_err(io_err(path))?;
    parse_labels(BufReader::new(file), ids)
}

pub fn write_labels<L: std::fmt::Display>(ids: &IdMap, labels: &[L], mut w: impl Write) -> io::Result<()> {
    writeln!(w, "id,label")?;
    for (i, l) in labels.iter().enumerate() {
        writeln!(w, "{},{}", ids.name(i), l)?;
    }
    Ok(())
}

/// Maps categorical labels to the two communities.
///
/// Nodes carrying `unscored` (e.g. a neutral class) become `None` and count as
/// misplaced whatever the partition. The remaining values, at most two, are
/// numbered `0` and `1` in order of first appearance.
pub fn binarize_labels(labels: &[String], unscored: Option<&str>) -> Result<Vec<Option<u8>>> {
    let mut classes: Vec<&str> = Vec::new();
    for l in labels {
        if Some(l.as_str()) != unscored && !classes.contains(&l.as_str()) {
            classes.push(l);
        }
    }
    if classes.len() > 2 {
        return Err(Error::TooManyLabels(classes.into_iter().map(String::from).collect()));
    }
    Ok(labels
        .iter()
        .map(|l| classes.iter().position(|c| c == l).map(|p| p as u8))
        .collect())
}

/// Rounds to 10 significant digits and prints the shortest decimal that reads
/// back to the rounded value. Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

pub fn parse_opt_float(field: &str) -> std::result::Result<Option<f64>, std::num::ParseFloatError> {
    if field.is_empty() {
        Ok(None)
    } else {
        field.parse().map(Some)
    }
}

/// A CSV table with a versioned comment line.
pub trait CsvTable {
    const SCHEMA: &'static str;
    const HEADER: &'static str;
    fn fields(&self) -> Vec<String>;
}

pub fn write_table<T: CsvTable>(rows: &[T], mut w: impl Write) -> io::Result<()> {
    writeln!(w, "# {}", T::SCHEMA)?;
    writeln!(w, "{}", T::HEADER)?;
    for row in rows {
        writeln!(w, "{}", row.fields().join(","))?;
    }
    Ok(())
}

/// Writes a table to `path` atomically: the file only appears once complete.
pub fn write_table_file<T: CsvTable>(rows: &[T], path: &Path) -> Result<()> {
    write_file(path, |w| write_table(rows, w))
}

pub fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<()> {
    let tmp = path.with_extension("partial");
    let file = File::create(&tmp).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(io_err(path))?;
    drop(w);
    std::fs::rename(&tmp, path).map_err(io_err(path))
}

/// Splits a table into its data rows, checking the schema line and header.
pub fn parse_table<T: CsvTable>(text: &str) -> Result<Vec<Vec<String>>> {
    let mut lines = text.lines();
    let expect = |line: Option<&str>, want: &str, lineno: usize| match line {
        Some(l) if l == want => Ok(()),
        other => Err(Error::Malformed {
            line: lineno,
            message: format!("expected `{want}`, found {other:?}"),
        }),
    };
    expect(lines.next(), &format!("# {}", T::SCHEMA), 1)?;
    expect(lines.next(), T::HEADER, 2)?;
    let width = T::HEADER.split(',').count();
    lines
        .enumerate()
        .map(|(k, l)| {
            let cells: Vec<String> = l.split(',').map(String::from).collect();
            if cells.len() != width {
                return Err(Error::Malformed {
                    line: k + 3,
                    message: format!("expected {width} fields, found {}", cells.len()),
                });
            }
            Ok(cells)
        })
        .collect()
}

/// Flat `key=value` manifest, one pair per line, keys in the given order.
pub fn write_manifest(pairs: &[(&str, String)], mut w: impl Write) -> io::Result<()> {
    for (k, v) in pairs {
        writeln!(w, "{k}={v}")?;
    }
    Ok(())
}

pub fn parse_manifest(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(k, l)| {
            l.split_once('=')
                .map(|(a, b)| (a.trim().to_owned(), b.trim().to_owned()))
                .ok_or_else(|| Error::Malformed {
                    line: k + 1,
                    message: "expected `key=value`".into(),
                })
        })
        .collect()
}
