//! JSON tables and CSV codebooks. Real numbers are written with 17 significant
//! digits so that re-parsing is lossless.

use std::io::{Read, Write};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use super::adhoc::AdhocCode;
use super::tables::{CodeTables, LeafRow, LeafTable, RowContent, SubRef, TableBody, TreeNode};
use super::{CodeSpec, Codeword, Variant};
use crate::error::{Error, Result};
use crate::foliation::{LeafAngle, LeafScheme};
use crate::torus4::TorusLayout;

/// `x` in scientific notation with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A real number serialized with 17 significant digits. Infinite scaled
/// distances (collapsed half-spaces) are written as `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct F17(pub(crate) f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            return s.serialize_none();
        }
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom("non-finite number"));
        }
        RawValue::from_string(fmt17(self.0)).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F17 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Option::<f64>::deserialize(d).map(|x| F17(x.unwrap_or(f64::INFINITY)))
    }
}

#[derive(Serialize, Deserialize)]
struct SpecDoc {
    dim: usize,
    dmin: F17,
    variant: Variant,
}

#[derive(Serialize, Deserialize)]
struct TablesDoc {
    spec: SpecDoc,
    /// Decimal string; may exceed every machine integer type in other readers.
    total: String,
    nodes: Vec<NodeDoc>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    position: usize,
    dim: usize,
    tables: Vec<TableDoc>,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    dmin: F17,
    body: BodyDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum BodyDoc {
    Leaves { scheme: LeafScheme, rows: Vec<RowDoc> },
    Adhoc(AdhocCode),
}

#[derive(Serialize, Deserialize)]
struct RowDoc {
    i: i64,
    eta: F17,
    #[serde(rename = "M1")]
    m1: u128,
    #[serde(rename = "M2")]
    m2: u128,
    content: ContentDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ContentDoc {
    /// `M1` points on each of `M2` circles of the torus at `torus_eta`.
    Torus { torus_eta: F17, swapped: bool },
    Diagonal,
    /// Child table indices; `None` stands for the single-point subcode.
    Product { cos_dmin: F17, sin_dmin: F17, cos: Option<usize>, sin: Option<usize> },
}

fn sub_doc(sub: SubRef) -> Option<usize> {
    match sub {
        SubRef::Single => None,
        SubRef::Table(t) => Some(t),
    }
}

fn to_doc(tables: &CodeTables) -> TablesDoc {
    let nodes = tables
        .nodes
        .iter()
        .map(|node| NodeDoc {
            position: node.position,
            dim: node.dim,
            tables: node
                .tables
                .iter()
                .map(|t| TableDoc {
                    dmin: F17(t.dmin),
                    body: match &t.body {
                        TableBody::Adhoc(code) => BodyDoc::Adhoc(*code),
                        TableBody::Leaves { scheme, rows } => BodyDoc::Leaves {
                            scheme: *scheme,
                            rows: rows.iter().map(row_doc).collect(),
                        },
                    },
                })
                .collect(),
        })
        .collect();
    TablesDoc {
        spec: SpecDoc { dim: tables.spec.dim, dmin: F17(tables.spec.dmin), variant: tables.spec.variant },
        total: tables.len().to_string(),
        nodes,
    }
}

fn row_doc(row: &LeafRow) -> RowDoc {
    let content = match row.content {
        RowContent::Torus { layout, swapped } => ContentDoc::Torus { torus_eta: F17(layout.eta.value()), swapped },
        RowContent::Diagonal { .. } => ContentDoc::Diagonal,
        RowContent::Product { cos_dist, sin_dist, cos, sin } => ContentDoc::Product {
            cos_dmin: F17(cos_dist),
            sin_dmin: F17(sin_dist),
            cos: sub_doc(cos),
            sin: sub_doc(sin),
        },
    };
    RowDoc { i: row.index, eta: F17(row.eta.value()), m1: row.m1, m2: row.m2, content }
}

fn count_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Format(format!("count {x} is too large for a torus")))
}

fn from_doc(doc: TablesDoc) -> Result<CodeTables> {
    let spec = CodeSpec::new(doc.spec.dim, doc.spec.dmin.0, doc.spec.variant)?;
    if doc.nodes.len() != spec.dim / 2 - 1 {
        return Err(Error::Format(format!("expected {} nodes, found {}", spec.dim / 2 - 1, doc.nodes.len())));
    }
    let table_counts: Vec<usize> = doc.nodes.iter().map(|n| n.tables.len()).collect();
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (pos, node) in doc.nodes.into_iter().enumerate() {
        let expected_dim = spec.dim >> (pos + 1).ilog2();
        if node.position != pos || node.dim != expected_dim {
            return Err(Error::Format(format!("node {pos} has inconsistent position or dimension")));
        }
        let child = |p: usize, sub: Option<usize>| -> Result<SubRef> {
            match sub {
                None => Ok(SubRef::Single),
                Some(t) if table_counts.get(p).is_some_and(|&c| t < c) => Ok(SubRef::Table(t)),
                Some(t) => Err(Error::Format(format!("node {p} has no table {t}"))),
            }
        };
        let mut tables = Vec::with_capacity(node.tables.len());
        for t in node.tables {
            let body = match t.body {
                BodyDoc::Adhoc(code) => TableBody::Adhoc(code),
                BodyDoc::Leaves { scheme, rows } => {
                    let mut out = Vec::with_capacity(rows.len());
                    for r in rows {
                        let eta = LeafAngle::new(r.eta.0)?;
                        let content = match r.content {
                            ContentDoc::Torus { torus_eta, swapped } => {
                                let layout = TorusLayout {
                                    eta: LeafAngle::new(torus_eta.0)?,
                                    m: count_u64(r.m1)?,
                                    n_circles: count_u64(r.m2)?,
                                };
                                RowContent::Torus { layout, swapped }
                            }
                            ContentDoc::Diagonal => RowContent::Diagonal { count: count_u64(r.m1)? },
                            ContentDoc::Product { cos_dmin, sin_dmin, cos, sin } => RowContent::Product {
                                cos_dist: cos_dmin.0,
                                sin_dist: sin_dmin.0,
                                cos: child(2 * pos + 1, cos)?,
                                sin: child(2 * pos + 2, sin)?,
                            },
                        };
                        if r.m1 == 0 || r.m2 == 0 {
                            return Err(Error::Format(format!("row {} has an empty subcode", r.i)));
                        }
                        out.push(LeafRow::new(r.i, eta, r.m1, r.m2, content));
                    }
                    TableBody::Leaves { scheme, rows: out }
                }
            };
            tables.push(LeafTable::new(t.dmin.0, body, node.dim)?);
        }
        nodes.push(TreeNode { position: pos, dim: node.dim, tables });
    }
    let tables = CodeTables::from_parts(spec, nodes)?;
    check_products(&tables)?;
    if tables.len().to_string() != doc.total {
        return Err(Error::Format(format!("stored total {} disagrees with rows ({})", doc.total, tables.len())));
    }
    Ok(tables)
}

/// Product rows must carry the sizes of the subcodes they reference.
fn check_products(tables: &CodeTables) -> Result<()> {
    for node in &tables.nodes {
        for t in &node.tables {
            for row in t.rows() {
                if let RowContent::Product { cos, sin, .. } = row.content {
                    let p = node.position;
                    if tables.sub_len(2 * p + 1, cos) != row.m1 || tables.sub_len(2 * p + 2, sin) != row.m2 {
                        return Err(Error::Format(format!("row {} of node {p} has inconsistent sizes", row.index)));
                    }
                }
            }
        }
    }
    Ok(())
}

impl CodeTables {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&to_doc(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_doc(serde_json::from_str(text)?)
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_json()?.as_bytes())?;
        w.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json<R: Read>(mut r: R) -> Result<Self> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        Self::from_json(&text)
    }
}

/// Writes `index, x1, …, xn` rows for every codeword, refusing codes above `cap`.
pub fn write_codebook_csv<W: Write>(tables: &CodeTables, w: W, cap: u128) -> Result<()> {
    tables.check_cap(cap)?;
    let dim = tables.spec.dim;
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["index".to_string()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    out.write_record(&header)?;
    let mut point = vec![0.0; dim];
    let mut record = Vec::with_capacity(dim + 1);
    for a in 0..tables.len() {
        tables.write_point(a, &mut point)?;
        record.clear();
        record.push(a.to_string());
        record.extend(point.iter().map(|&x| fmt17(x)));
        out.write_record(&record)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_codebook_csv<R: Read>(r: R) -> Result<Vec<Codeword>> {
    let mut reader = csv::Reader::from_reader(r);
    let mut words = Vec::new();
    for record in reader.records() {
        let record = record?;
        let mut fields = record.iter();
        let index = fields
            .next()
            .ok_or_else(|| Error::Format("empty codebook row".into()))?
            .parse::<u128>()
            .map_err(|e| Error::Format(e.to_string()))?;
        let coords = fields
            .map(|f| f.parse::<f64>().map_err(|e| Error::Format(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        words.push(Codeword { index, coords });
    }
    Ok(words)
}
