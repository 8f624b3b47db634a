//! JSON documents for structures, algebras and modules over algebras.
//!
//! Output is canonical: header fields in a fixed order, one entry per line
//! sorted by slot sequence, coefficients in lowest terms (integers as JSON
//! numbers, everything else as `"p/q"` strings). Writing what was read
//! reproduces the same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::error::Category;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::semidirect::ModuleOverAlgebra;
use crate::structure::{
    Entry, KModuleStructure, NAryAlgebra, Shape, Slot, ValidationReport, Violation, ViolationKind,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DocumentKind {
    #[serde(rename = "k-module")]
    KModule,
    #[serde(rename = "n-ary-algebra")]
    Algebra,
    #[serde(rename = "module-over-algebra")]
    ModuleOverAlgebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
enum SlotDoc {
    #[serde(rename = "m")]
    Module(usize),
    #[serde(rename = "s")]
    Space(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Integer(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    slots: Vec<SlotDoc>,
    target: usize,
    coeff: CoeffDoc,
}

/// On-disk shape. For `n-ary-algebra` documents `k` and `module_dim` are 0
/// and every slot is an `"s"` slot. For `module-over-algebra` documents the
/// header and `entries` describe the action and `algebra_entries` holds the
/// algebra product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDocument {
    format_version: u32,
    kind: DocumentKind,
    n: usize,
    k: usize,
    module_dim: usize,
    space_dim: usize,
    entries: Vec<EntryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebra_entries: Option<Vec<EntryDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    KModule(KModuleStructure),
    Algebra(NAryAlgebra),
    ModuleOverAlgebra(ModuleOverAlgebra),
}

impl Document {
    pub fn kind(&self) -> DocumentKind {
        match self {
            Document::KModule(_) => DocumentKind::KModule,
            Document::Algebra(_) => DocumentKind::Algebra,
            Document::ModuleOverAlgebra(_) => DocumentKind::ModuleOverAlgebra,
        }
    }
}

impl From<KModuleStructure> for Document {
    fn from(st: KModuleStructure) -> Self {
        Document::KModule(st)
    }
}

impl From<NAryAlgebra> for Document {
    fn from(a: NAryAlgebra) -> Self {
        Document::Algebra(a)
    }
}

impl From<ModuleOverAlgebra> for Document {
    fn from(p: ModuleOverAlgebra) -> Self {
        Document::ModuleOverAlgebra(p)
    }
}

fn json_error(err: serde_json::Error) -> Error {
    match err.classify() {
        Category::Syntax | Category::Eof => Error::Parse(err.to_string()),
        Category::Data => Error::Schema(err.to_string()),
        Category::Io => Error::Io(err.into()),
    }
}

fn coeff_of(idx: usize, coeff: &CoeffDoc) -> Result<Scalar> {
    match coeff {
        CoeffDoc::Integer(v) => Ok(Scalar::integer(*v)),
        CoeffDoc::Text(t) => t
            .parse()
            .map_err(|e| Error::Schema(format!("entry {idx}: {e}"))),
    }
}

fn module_entries(rows: &[EntryDoc]) -> Result<Vec<Entry>> {
    rows.iter()
        .enumerate()
        .map(|(idx, row)| {
            let slots = row
                .slots
                .iter()
                .map(|s| match *s {
                    SlotDoc::Module(i) => Slot::Module(i),
                    SlotDoc::Space(j) => Slot::Space(j),
                })
                .collect::<Vec<_>>();
            Ok(Entry::new(slots, row.target, coeff_of(idx, &row.coeff)?))
        })
        .collect()
}

fn algebra_rows(rows: &[EntryDoc]) -> Result<Vec<(Vec<usize>, usize, Scalar)>> {
    let mut report = ValidationReport::default();
    let mut out = Vec::with_capacity(rows.len());
    for (idx, row) in rows.iter().enumerate() {
        let args: Vec<usize> = row
            .slots
            .iter()
            .filter_map(|s| match *s {
                SlotDoc::Space(j) => Some(j),
                SlotDoc::Module(_) => None,
            })
            .collect();
        if args.len() != row.slots.len() {
            report.violations.push(Violation {
                entry: Some(idx),
                placement: None,
                kind: ViolationKind::SlotCount {
                    expected: 0,
                    found: row.slots.len() - args.len(),
                },
            });
        }
        out.push((args, row.target, coeff_of(idx, &row.coeff)?));
    }
    if report.is_valid() {
        Ok(out)
    } else {
        Err(Error::Validation(report))
    }
}

/// Parses and validates a document.
pub fn parse_document(text: &str) -> Result<Document> {
    let doc: StructureDocument = serde_json::from_str(text).map_err(json_error)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::Schema(format!(
            "unsupported format_version {} (expected {FORMAT_VERSION})",
            doc.format_version
        )));
    }
    let shape = Shape::new(doc.n, doc.k, doc.module_dim, doc.space_dim);
    match doc.kind {
        DocumentKind::KModule => {
            if doc.algebra_entries.is_some() {
                return Err(Error::Schema(
                    "algebra_entries only belong in module-over-algebra documents".into(),
                ));
            }
            Ok(Document::KModule(KModuleStructure::from_entries(
                shape,
                module_entries(&doc.entries)?,
            )?))
        }
        DocumentKind::Algebra => {
            if doc.k != 0 || doc.module_dim != 0 || doc.algebra_entries.is_some() {
                return Err(Error::Schema(
                    "n-ary-algebra documents need k = 0, module_dim = 0 and no algebra_entries"
                        .into(),
                ));
            }
            Ok(Document::Algebra(NAryAlgebra::new(
                doc.n,
                doc.space_dim,
                algebra_rows(&doc.entries)?,
            )?))
        }
        DocumentKind::ModuleOverAlgebra => {
            let Some(alg) = &doc.algebra_entries else {
                return Err(Error::Schema(
                    "module-over-algebra documents need algebra_entries".into(),
                ));
            };
            let action = KModuleStructure::from_entries(shape, module_entries(&doc.entries)?)?;
            let algebra = NAryAlgebra::new(doc.n, doc.space_dim, algebra_rows(alg)?)?;
            Ok(Document::ModuleOverAlgebra(ModuleOverAlgebra::new(
                algebra, action,
            )?))
        }
    }
}

pub fn read_document(path: impl AsRef<Path>) -> Result<Document> {
    parse_document(&fs::read_to_string(path)?)
}

/// Reads a document that must hold a plain k-module.
pub fn read_structure(path: impl AsRef<Path>) -> Result<KModuleStructure> {
    match read_document(path)? {
        Document::KModule(st) => Ok(st),
        other => Err(Error::Schema(format!(
            "expected a k-module document, found {:?}",
            other.kind()
        ))),
    }
}

fn coeff_doc(c: Scalar) -> CoeffDoc {
    if c.is_integer() {
        CoeffDoc::Integer(c.numer())
    } else {
        CoeffDoc::Text(c.to_string())
    }
}

fn module_rows(st: &KModuleStructure) -> Vec<EntryDoc> {
    st.support()
        .map(|(p, v)| EntryDoc {
            slots: p
                .slots()
                .iter()
                .map(|s| match *s {
                    Slot::Module(i) => SlotDoc::Module(i),
                    Slot::Space(j) => SlotDoc::Space(j),
                })
                .collect(),
            target: v.target,
            coeff: coeff_doc(v.coeff),
        })
        .collect()
}

fn algebra_doc_rows(a: &NAryAlgebra) -> Vec<EntryDoc> {
    a.support()
        .map(|(args, v)| EntryDoc {
            slots: args.iter().map(|&j| SlotDoc::Space(j)).collect(),
            target: v.target,
            coeff: coeff_doc(v.coeff),
        })
        .collect()
}

fn write_rows(out: &mut String, key: &str, rows: &[EntryDoc], last: bool) {
    let tail = if last { "" } else { "," };
    if rows.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{tail}");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (pos, row) in rows.iter().enumerate() {
        let sep = if pos + 1 == rows.len() { "" } else { "," };
        let line = serde_json::to_string(row).expect("entry serializes");
        let _ = writeln!(out, "    {line}{sep}");
    }
    let _ = writeln!(out, "  ]{tail}");
}

/// Canonical serialization.
pub fn render_document(doc: &Document) -> String {
    let (kind, shape, rows, algebra) = match doc {
        Document::KModule(st) => (DocumentKind::KModule, st.shape(), module_rows(st), None),
        Document::Algebra(a) => (
            DocumentKind::Algebra,
            Shape::new(a.n(), 0, 0, a.dim()),
            algebra_doc_rows(a),
            None,
        ),
        Document::ModuleOverAlgebra(p) => (
            DocumentKind::ModuleOverAlgebra,
            p.action().shape(),
            module_rows(p.action()),
            Some(algebra_doc_rows(p.algebra())),
        ),
    };
    let kind = serde_json::to_string(&kind).expect("kind serializes");
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"kind\": {kind},");
    let _ = writeln!(out, "  \"n\": {},", shape.n);
    let _ = writeln!(out, "  \"k\": {},", shape.k);
    let _ = writeln!(out, "  \"module_dim\": {},", shape.module_dim);
    let _ = writeln!(out, "  \"space_dim\": {},", shape.space_dim);
    write_rows(&mut out, "entries", &rows, algebra.is_none());
    if let Some(alg) = algebra {
        write_rows(&mut out, "algebra_entries", &alg, true);
    }
    let _ = writeln!(out, "}}");
    out
}

pub fn write_document(doc: &Document, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_document(doc))?;
    Ok(())
}
