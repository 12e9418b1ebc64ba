//! Input files: JSON documents with a top-level `"kind"` tag. Scalars are strings,
//! `"p/q"` for rationals and `"(poly)/(poly)"` or polynomials in `t` for ℚ(t).

use std::collections::BTreeMap;
use std::path::Path;

use reidemeister::algebra::{FieldElement, FieldTag, Matrix};
use reidemeister::charpts::RepresentationPoint;
use reidemeister::cw::{CellComplex, CellMap, FundamentalFamily, GlueData, GroupPresentation, GroupRingElement, Word};
use reidemeister::local::LocalSystem;
use reidemeister::surface::{
    half_euler_from_kasteleyn, reference_spin, all_spin_structures, CellRef, DimerConfiguration, KasteleynOrientation,
    Segment, SpinStructure, SurfaceModel,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub type MatrixText = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftFile {
    pub cell: String,
    pub word: String,
}

/// Complex description: cells by dimension and boundary entries keyed by cell names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    pub cells: Vec<Vec<String>>,
    /// `boundary[cell][face]` lists `(coefficient, word)` terms.
    #[serde(default)]
    pub boundary: BTreeMap<String, BTreeMap<String, Vec<(i64, String)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
    /// Named fundamental families, as shifts relative to the identity family.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub euler: BTreeMap<String, Vec<ShiftFile>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub field: String,
    pub dimension: usize,
    pub monodromy: BTreeMap<String, MatrixText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<MatrixText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    pub field: String,
    pub dimension: usize,
    pub monodromy: BTreeMap<String, MatrixText>,
    pub lie_basis: Vec<MatrixText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_form: Option<MatrixText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    /// `[m, n]` for the square grid torus.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentFile {
    pub coefficient: i64,
    pub from: String,
    pub to: String,
    #[serde(default = "identity_word")]
    pub offset: String,
}

fn identity_word() -> String {
    "1".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KasteleynFile {
    pub dimers: Vec<String>,
    pub reversed: Vec<String>,
}

/// One of: the reference structure moved by an `H₁(Σ; ℤ/2)` class, explicit chain data,
/// or a dimer configuration with a Kasteleyn orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_euler: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounding_chain: Option<Vec<SegmentFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kasteleyn: Option<KasteleynFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub presentation: PresentationFile,
    pub first: ComplexFile,
    pub second: ComplexFile,
    pub common: ComplexFile,
    pub incl_first: Vec<String>,
    pub incl_second: Vec<String>,
    pub incl_common: Vec<String>,
    /// Common cell name to `(target cell, word)` in each piece.
    pub map_first: BTreeMap<String, (String, String)>,
    pub map_second: BTreeMap<String, (String, String)>,
    /// Optional complex of the same space built directly, for comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct: Option<ComplexFile>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Complex(ComplexFile),
    Localsys(LocalSystemFile),
    Representation(RepresentationFile),
    Surface(SurfaceFile),
    Spin(SpinFile),
    Glue(GlueFile),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "complex",
            Document::Localsys(_) => "localsys",
            Document::Representation(_) => "representation",
            Document::Surface(_) => "surface",
            Document::Spin(_) => "spin",
            Document::Glue(_) => "glue",
        }
    }
}

#[derive(Deserialize)]
struct Header {
    kind: Option<String>,
}

/// Parses a document; errors carry the file, the line/column and the field path.
pub fn parse_document(name: &str, text: &str) -> Result<Document, CliError> {
    let header: Header = parse_json(name, text)?;
    let kind = header.kind.ok_or_else(|| CliError::Parse(format!("{name}: missing \"kind\"")))?;
    Ok(match kind.as_str() {
        "complex" => Document::Complex(parse_json(name, text)?),
        "localsys" => Document::Localsys(parse_json(name, text)?),
        "representation" => Document::Representation(parse_json(name, text)?),
        "surface" => Document::Surface(parse_json(name, text)?),
        "spin" => Document::Spin(parse_json(name, text)?),
        "glue" => Document::Glue(parse_json(name, text)?),
        other => return Err(CliError::Parse(format!("{name}: unknown kind \"{other}\""))),
    })
}

fn tagged<T: Serialize>(kind: &str, x: &T) -> String {
    let mut v = serde_json::to_value(x).expect("documents serialize");
    v.as_object_mut().expect("documents are objects").insert("kind".into(), kind.into());
    serde_json::to_string_pretty(&v).expect("values serialize")
}

pub fn to_json(doc: &Document) -> String {
    match doc {
        Document::Complex(x) => tagged("complex", x),
        Document::Localsys(x) => tagged("localsys", x),
        Document::Representation(x) => tagged("representation", x),
        Document::Surface(x) => tagged("surface", x),
        Document::Spin(x) => tagged("spin", x),
        Document::Glue(x) => tagged("glue", x),
    }
}

fn parse_json<T: DeserializeOwned>(name: &str, text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let at = if path == "." { String::new() } else { format!(", field {path}") };
        CliError::Parse(format!("{name}{at}: {inner}"))
    })
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: cannot read: {e}", path.display())))?;
    parse_document(&path.display().to_string(), &text)
}

macro_rules! expect_kind {
    ($name:ident, $variant:ident, $ty:ty, $kind:literal) => {
        pub fn $name(path: &Path) -> Result<$ty, CliError> {
            match read_document(path)? {
                Document::$variant(x) => Ok(x),
                other => Err(CliError::Parse(format!(
                    "{}: expected kind \"{}\", found \"{}\"",
                    path.display(),
                    $kind,
                    other.kind()
                ))),
            }
        }
    };
}

expect_kind!(read_complex, Complex, ComplexFile, "complex");
expect_kind!(read_localsys, Localsys, LocalSystemFile, "localsys");
expect_kind!(read_representation, Representation, RepresentationFile, "representation");
expect_kind!(read_surface, Surface, SurfaceFile, "surface");
expect_kind!(read_spin, Spin, SpinFile, "spin");
expect_kind!(read_glue, Glue, GlueFile, "glue");

fn invalid(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("{what}: {e}"))
}

pub fn field_tag(s: &str) -> Result<FieldTag, CliError> {
    match s {
        "Q" => Ok(FieldTag::Q),
        "Q(t)" => Ok(FieldTag::Qt),
        _ => Err(CliError::Invalid(format!("unknown field '{s}' (expected Q or Q(t))"))),
    }
}

pub fn parse_matrix(m: &MatrixText, tag: FieldTag, what: &str) -> Result<Matrix, CliError> {
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| FieldElement::parse_in(s, tag).map_err(|e| invalid(&format!("{what}[{i}][{j}]"), e)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(rows).map_err(|e| invalid(what, e))
}

pub fn build_presentation_parts(generators: &[String], relators: &[String]) -> Result<GroupPresentation, CliError> {
    let names: Vec<&str> = generators.iter().map(String::as_str).collect();
    let rels: Vec<&str> = relators.iter().map(String::as_str).collect();
    GroupPresentation::parse(&names, &rels).map_err(|e| invalid("presentation", e))
}

pub fn build_presentation(p: &PresentationFile) -> Result<GroupPresentation, CliError> {
    build_presentation_parts(&p.generators, &p.relators)
}

fn word(p: &GroupPresentation, s: &str, what: &str) -> Result<Word, CliError> {
    p.word(s).map_err(|e| invalid(what, e))
}

/// Position of every cell name; names must be unique across dimensions.
pub fn cell_index(cells: &[Vec<String>]) -> Result<BTreeMap<String, CellRef>, CliError> {
    let mut out = BTreeMap::new();
    for (d, names) in cells.iter().enumerate() {
        for (i, n) in names.iter().enumerate() {
            if out.insert(n.clone(), CellRef::new(d, i)).is_some() {
                return Err(CliError::Invalid(format!("cell name '{n}' is used twice")));
            }
        }
    }
    Ok(out)
}

fn lookup(index: &BTreeMap<String, CellRef>, name: &str) -> Result<CellRef, CliError> {
    index.get(name).copied().ok_or_else(|| CliError::Invalid(format!("unknown cell '{name}'")))
}

pub fn build_complex(f: &ComplexFile) -> Result<CellComplex, CliError> {
    let p = build_presentation_parts(&f.generators, &f.relators)?;
    let index = cell_index(&f.cells)?;
    let mut boundary: Vec<Vec<Vec<GroupRingElement>>> = (1..f.cells.len())
        .map(|d| vec![vec![GroupRingElement::zero(); f.cells[d - 1].len()]; f.cells[d].len()])
        .collect();
    for (cell, faces) in &f.boundary {
        let c = lookup(&index, cell)?;
        if c.dim == 0 {
            return Err(CliError::Invalid(format!("0-cell '{cell}' cannot have a boundary")));
        }
        for (face, terms) in faces {
            let x = lookup(&index, face)?;
            if x.dim + 1 != c.dim {
                return Err(CliError::Invalid(format!("'{face}' is not a face dimension of '{cell}'")));
            }
            let mut e = GroupRingElement::zero();
            for (k, w) in terms {
                e.add_term(*k, word(&p, w, &format!("boundary of '{cell}' on '{face}'"))?);
            }
            boundary[c.dim - 1][c.index][x.index] = e;
        }
    }
    let bp = match &f.basepoint {
        None => 0,
        Some(name) => {
            let r = lookup(&index, name)?;
            if r.dim != 0 {
                return Err(CliError::Invalid(format!("basepoint '{name}' is not a 0-cell")));
            }
            r.index
        }
    };
    CellComplex::new(p, f.cells.clone(), boundary, bp).map_err(|e| invalid("complex", e))
}

/// `identity`, a family named in the file, or `cell=word;cell=word`.
pub fn build_family(f: &ComplexFile, c: &CellComplex, spec: &str) -> Result<FundamentalFamily, CliError> {
    let shifts: Vec<ShiftFile> = if spec == "identity" {
        Vec::new()
    } else if let Some(s) = f.euler.get(spec) {
        s.clone()
    } else if spec.contains('=') {
        spec.split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                let (cell, w) = s.split_once('=').expect("checked above");
                ShiftFile { cell: cell.trim().into(), word: w.trim().into() }
            })
            .collect()
    } else {
        return Err(CliError::Invalid(format!("no Euler structure named '{spec}'")));
    };
    let index = cell_index(&f.cells)?;
    let mut fam = FundamentalFamily::identity(c);
    for s in shifts {
        let r = lookup(&index, &s.cell)?;
        fam = fam.with_shift(r.dim, r.index, word(c.presentation(), &s.word, "Euler shift")?);
    }
    fam.check(c).map_err(|e| invalid("Euler structure", e))?;
    Ok(fam)
}

fn monodromies(
    p: &GroupPresentation,
    m: &BTreeMap<String, MatrixText>,
    tag: FieldTag,
) -> Result<Vec<Matrix>, CliError> {
    for name in m.keys() {
        if !p.generators().contains(name) {
            return Err(CliError::Invalid(format!("monodromy given for unknown generator '{name}'")));
        }
    }
    p.generators()
        .iter()
        .map(|g| {
            let text = m.get(g).ok_or_else(|| CliError::Invalid(format!("no monodromy for generator '{g}'")))?;
            parse_matrix(text, tag, &format!("monodromy '{g}'"))
        })
        .collect()
}

/// `field` overrides the file's field; ℚ data may be promoted to ℚ(t), not the reverse.
pub fn build_localsys(
    f: &LocalSystemFile,
    p: &GroupPresentation,
    field: Option<FieldTag>,
) -> Result<LocalSystem, CliError> {
    let tag = field.map_or_else(|| field_tag(&f.field), Ok)?;
    let mono = monodromies(p, &f.monodromy, tag)?;
    let rho = LocalSystem::new(p, f.dimension, mono).map_err(|e| invalid("local system", e))?;
    match &f.gram {
        None => Ok(rho),
        Some(g) => rho.with_gram(parse_matrix(g, tag, "gram")?).map_err(|e| invalid("gram", e)),
    }
}

pub fn build_representation(f: &RepresentationFile, field: Option<FieldTag>) -> Result<RepresentationPoint, CliError> {
    let p = build_presentation_parts(&f.generators, &f.relators)?;
    let tag = field.map_or_else(|| field_tag(&f.field), Ok)?;
    let mono = monodromies(&p, &f.monodromy, tag)?;
    let rho = LocalSystem::new(&p, f.dimension, mono).map_err(|e| invalid("representation", e))?;
    let basis = f
        .lie_basis
        .iter()
        .enumerate()
        .map(|(k, m)| parse_matrix(m, tag, &format!("lie_basis[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let form = f.invariant_form.as_ref().map(|g| parse_matrix(g, tag, "invariant_form")).transpose()?;
    RepresentationPoint::new(p, rho, basis, form).map_err(|e| invalid("representation", e))
}

pub fn build_surface(f: &SurfaceFile) -> Result<SurfaceModel, CliError> {
    match (f.genus, f.grid) {
        (Some(g), None) => SurfaceModel::standard(g).map_err(|e| invalid("surface", e)),
        (None, Some((m, n))) => SurfaceModel::grid_torus(m, n).map_err(|e| invalid("surface", e)),
        _ => Err(CliError::Invalid("surface needs exactly one of 'genus' and 'grid'".into())),
    }
}

fn names_to_indices(c: &CellComplex, dim: usize, names: &[String], what: &str) -> Result<Vec<usize>, CliError> {
    names
        .iter()
        .map(|n| c.cell_index(dim, n).ok_or_else(|| CliError::Invalid(format!("{what}: unknown {dim}-cell '{n}'"))))
        .collect()
}

pub fn build_spin(f: &SpinFile, model: &SurfaceModel) -> Result<SpinStructure, CliError> {
    let c = &model.complex;
    let explicit = f.half_euler.is_some() || f.bounding_chain.is_some();
    let chosen = [f.shift.is_some(), explicit, f.kasteleyn.is_some()].iter().filter(|&&b| b).count();
    if chosen > 1 {
        return Err(CliError::Invalid("spin file mixes 'shift', explicit chains and 'kasteleyn'".into()));
    }
    if let Some(k) = &f.kasteleyn {
        let d = DimerConfiguration { edges: names_to_indices(c, 1, &k.dimers, "dimers")? };
        let rev = names_to_indices(c, 1, &k.reversed, "reversed")?;
        let mut reversed = vec![false; c.cell_count(1)];
        for i in rev {
            reversed[i] = true;
        }
        return half_euler_from_kasteleyn(c, &d, &KasteleynOrientation { reversed }).map_err(|e| invalid("spin", e));
    }
    if explicit {
        let index = cell_index(c.all_cells())?;
        let mut half_euler: Vec<Vec<i64>> = c.all_cells().iter().map(|v| vec![0; v.len()]).collect();
        for (name, w) in f.half_euler.iter().flatten() {
            let r = lookup(&index, name)?;
            half_euler[r.dim][r.index] = *w;
        }
        let mut chain = Vec::new();
        for s in f.bounding_chain.iter().flatten() {
            let seg = Segment {
                from: lookup(&index, &s.from)?,
                to: lookup(&index, &s.to)?,
                offset: word(c.presentation(), &s.offset, "segment offset")?,
            };
            chain.push((s.coefficient, seg));
        }
        let s = SpinStructure { half_euler, bounding_chain: chain };
        s.check(c).map_err(|e| invalid("spin", e))?;
        return Ok(s);
    }
    let base = reference_spin(c).map_err(|e| invalid("spin", e))?;
    let shift = f.shift.clone().unwrap_or_default();
    let all = all_spin_structures(c, &base);
    let bits = all.len().trailing_zeros() as usize;
    if !shift.is_empty() && shift.len() != bits {
        return Err(CliError::Invalid(format!("shift needs {bits} entries, got {}", shift.len())));
    }
    if shift.iter().any(|&b| b > 1) {
        return Err(CliError::Invalid("shift entries must be 0 or 1".into()));
    }
    let mask: usize = shift.iter().enumerate().map(|(k, &b)| (b as usize) << k).sum();
    Ok(all[mask].clone())
}

fn cell_map(
    common: &CellComplex,
    piece: &CellComplex,
    p: &GroupPresentation,
    m: &BTreeMap<String, (String, String)>,
    what: &str,
) -> Result<CellMap, CliError> {
    let mut images = Vec::new();
    for d in 0..common.all_cells().len() {
        let mut row = Vec::new();
        for name in common.cells(d) {
            let (target, w) = m.get(name).ok_or_else(|| CliError::Invalid(format!("{what}: no image for '{name}'")))?;
            let j = piece
                .cell_index(d, target)
                .ok_or_else(|| CliError::Invalid(format!("{what}: unknown {d}-cell '{target}'")))?;
            row.push((j, word(p, w, what)?));
        }
        images.push(row);
    }
    Ok(CellMap { images })
}

pub struct GluePieces {
    pub first: CellComplex,
    pub second: CellComplex,
    pub common: CellComplex,
    pub data: GlueData,
    pub direct: Option<CellComplex>,
}

pub fn build_glue(f: &GlueFile) -> Result<GluePieces, CliError> {
    let p = build_presentation(&f.presentation)?;
    let first = build_complex(&f.first)?;
    let second = build_complex(&f.second)?;
    let common = build_complex(&f.common)?;
    let words = |ws: &[String], what: &str| ws.iter().map(|w| word(&p, w, what)).collect::<Result<Vec<_>, _>>();
    let data = GlueData {
        presentation: p.clone(),
        incl1: words(&f.incl_first, "incl_first")?,
        incl2: words(&f.incl_second, "incl_second")?,
        incl0: words(&f.incl_common, "incl_common")?,
        map1: cell_map(&common, &first, &p, &f.map_first, "map_first")?,
        map2: cell_map(&common, &second, &p, &f.map_second, "map_second")?,
    };
    let direct = f.direct.as_ref().map(build_complex).transpose()?;
    Ok(GluePieces { first, second, common, data, direct })
}
