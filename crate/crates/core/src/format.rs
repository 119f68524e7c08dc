//! JSON file formats. Rationals are strings `"p/q"` (or `"p"`), triplets are
//! `[row, col, "p/q"]`, and monoid elements are `"E:p/q,mu:n"`.
//!
//! Parsing reports the JSON pointer of the offending value. Emitting sorts
//! everything canonically, so `emit(parse(x))` is a normal form of `x`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ainf::{AinfContext, AinfOperations, Dga, IsotopyPiece, MultiOp, PseudoIsotopy, Table};
use crate::error::{Error, Result};
use crate::floer::{CocycleChoice, CriticalData, FilteredMap, Label, MorseKSystem, PartialComplex, PartialHomotopy};
use crate::gradecx::{CochainComplex, GradedSpace};
use crate::matrix::Matrix;
use crate::novikov::{DiscreteSubmonoid, MonoidElement, Novikov};
use crate::poly::Poly;
use crate::scalar::{format_rational, parse_rational, Rational};

/// A rational in its string form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(serde::de::Error::custom)
    }
}

pub type Triplet = (usize, usize, Q);

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDto {
    pub name: String,
    pub deg: i64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDto {
    pub basis: Vec<BasisDto>,
    #[serde(default)]
    pub d0: Vec<Triplet>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelDto {
    pub id: String,
    #[serde(rename = "E")]
    pub energy: Q,
    pub mu: i64,
    #[serde(rename = "dimR")]
    pub dim_r: i64,
    pub complex: ComplexDto,
}

/// A block between labels; the matrix sends `from` to `to`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDto {
    pub from: String,
    pub to: String,
    pub matrix: Vec<Triplet>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountDto {
    pub minus: String,
    pub plus: String,
    pub matrix: Vec<Triplet>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimDto {
    pub minus: String,
    pub plus: String,
    pub dim: i64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KSystemDto {
    pub critical: Vec<LabelDto>,
    pub cut: Q,
    #[serde(default)]
    pub maps: Vec<BlockDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<DimDto>>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDto {
    pub source: String,
    pub target: String,
    pub cut: Q,
    pub loss: Q,
    pub degree: i64,
    #[serde(default)]
    pub unipotent: bool,
    #[serde(default)]
    pub entries: Vec<BlockDto>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyDto {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub entries: Vec<BlockDto>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChoiceDto {
    #[default]
    Minimal,
    Primitive,
}

impl From<ChoiceDto> for CocycleChoice {
    fn from(c: ChoiceDto) -> Self {
        match c {
            ChoiceDto::Minimal => CocycleChoice::Minimal,
            ChoiceDto::Primitive => CocycleChoice::Primitive,
        }
    }
}

/// What `promote-floer` and `limit` do with a bundle. Fields name objects
/// of the bundle.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FloerTask {
    Complex {
        x1: String,
        x2: String,
        psi: String,
        #[serde(default)]
        choice: ChoiceDto,
    },
    Map {
        psi21: String,
        psi21_prime: String,
        psi1: String,
        psi2: String,
        h: String,
    },
    Homotopy {
        psi1: String,
        psi2: String,
        na_i: String,
        nb_i: String,
        na_next: String,
        nb_next: String,
        h_ab_i: String,
        h_ab_next: String,
        h_a: String,
        h_b: String,
        big_h: String,
    },
    Limit {
        complexes: Vec<String>,
        maps: Vec<String>,
        #[serde(default)]
        choice: ChoiceDto,
    },
}

#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloerBundleDto {
    #[serde(default)]
    pub complexes: BTreeMap<String, KSystemDto>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDto>,
    #[serde(default)]
    pub homotopies: BTreeMap<String, HomotopyDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<FloerTask>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpEntryDto {
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: Q,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DgaDto {
    pub basis: Vec<BasisDto>,
    #[serde(default)]
    pub d0: Vec<Triplet>,
    #[serde(default)]
    pub product: Vec<OpEntryDto>,
}

#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDto {
    pub generators: Vec<String>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDto {
    pub k: usize,
    pub beta: String,
    pub entries: Vec<OpEntryDto>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AinfDto {
    pub space: DgaDto,
    #[serde(rename = "dimL")]
    pub dim_l: i64,
    pub monoid: MonoidDto,
    #[serde(rename = "E0")]
    pub cut: Q,
    pub e0: Q,
    #[serde(default)]
    pub ops: Vec<OpDto>,
}

/// An entry whose coefficient is a polynomial in `t` on each piece.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyEntryDto {
    pub inputs: Vec<String>,
    pub output: String,
    pub pieces: Vec<Vec<Q>>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyOpDto {
    pub k: usize,
    pub beta: String,
    pub entries: Vec<PolyEntryDto>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsotopyDto {
    pub space: DgaDto,
    #[serde(rename = "dimL")]
    pub dim_l: i64,
    pub monoid: MonoidDto,
    #[serde(rename = "E0")]
    pub cut: Q,
    pub e0: Q,
    pub breaks: Vec<Q>,
    #[serde(default)]
    pub m: Vec<FamilyOpDto>,
    #[serde(default)]
    pub c: Vec<FamilyOpDto>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AinfTowerDto {
    pub stages: Vec<AinfDto>,
    pub isotopies: Vec<IsotopyDto>,
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Deserializes `text`, reporting the JSON pointer of the first bad value.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let ptr = pointer(e.path());
        let inner = e.into_inner();
        Error::Schema {
            pointer: ptr,
            message: if inner.is_syntax() || inner.is_eof() {
                format!("line {} column {}: {inner}", inner.line(), inner.column())
            } else {
                inner.to_string()
            },
        }
    })
}

pub fn emit_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("formats serialize without failure");
    s.push('\n');
    s
}

fn schema(pointer: impl Into<String>, message: impl ToString) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.to_string(),
    }
}

/// Attaches `ptr` to an error coming from a constructor.
fn at(ptr: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        e @ Error::Schema { .. } => e,
        e => schema(ptr, e),
    }
}

fn rat_str(r: &Rational) -> Q {
    Q(r.clone())
}

fn matrix_from(rows: usize, cols: usize, t: &[Triplet], ptr: &str) -> Result<Matrix<Rational>> {
    for (n, (i, j, _)) in t.iter().enumerate() {
        if *i >= rows || *j >= cols {
            return Err(schema(format!("{ptr}/{n}"), format!("entry ({i}, {j}) outside a {rows}x{cols} matrix")));
        }
    }
    Ok(Matrix::from_triplets(rows, cols, t.iter().map(|(i, j, v)| (*i, *j, v.0.clone()))))
}

pub fn triplets(m: &Matrix<Rational>) -> Vec<Triplet> {
    let mut v: Vec<Triplet> = m.entries().map(|(i, j, c)| (i, j, rat_str(c))).collect();
    v.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    v
}

fn space_from(basis: &[BasisDto], ptr: &str) -> Result<GradedSpace> {
    GradedSpace::new(basis.iter().map(|b| (b.name.clone(), b.deg)).collect()).map_err(at(ptr))
}

fn basis_to(sp: &GradedSpace) -> Vec<BasisDto> {
    sp.basis()
        .iter()
        .map(|(name, deg)| BasisDto {
            name: name.clone(),
            deg: *deg,
        })
        .collect()
}

fn complex_from(c: &ComplexDto, ptr: &str) -> Result<CochainComplex<Rational>> {
    let sp = space_from(&c.basis, &format!("{ptr}/basis"))?;
    let n = sp.dim();
    let d0 = matrix_from(n, n, &c.d0, &format!("{ptr}/d0"))?;
    CochainComplex::from_triplets(sp, d0.entries().map(|(i, j, v)| (i, j, v.clone())).collect()).map_err(at(ptr))
}

fn complex_to(c: &CochainComplex<Rational>) -> ComplexDto {
    ComplexDto {
        basis: basis_to(c.space()),
        d0: triplets(c.d0().matrix()),
    }
}

fn critical_from(labels: &[LabelDto], ptr: &str) -> Result<CriticalData<Rational>> {
    let mut out = Vec::new();
    for (n, l) in labels.iter().enumerate() {
        out.push(Label {
            id: l.id.clone(),
            energy: l.energy.0.clone(),
            mu: l.mu,
            dim_r: l.dim_r,
            complex: complex_from(&l.complex, &format!("{ptr}/{n}/complex"))?,
        });
    }
    CriticalData::new(out).map_err(at(ptr))
}

fn critical_to(cd: &CriticalData<Rational>) -> Vec<LabelDto> {
    cd.labels()
        .iter()
        .map(|l| LabelDto {
            id: l.id.clone(),
            energy: rat_str(&l.energy),
            mu: l.mu,
            dim_r: l.dim_r,
            complex: complex_to(&l.complex),
        })
        .collect()
}

fn label_index(cd: &CriticalData<Rational>, id: &str, ptr: &str) -> Result<usize> {
    cd.index_of(id).ok_or_else(|| schema(ptr, format!("unknown label {id:?}")))
}

/// `(to, from, matrix)` triples for blocks between two sets of labels.
fn blocks_from(
    blocks: &[BlockDto],
    src: &CriticalData<Rational>,
    tgt: &CriticalData<Rational>,
    ptr: &str,
) -> Result<Vec<(usize, usize, Matrix<Rational>)>> {
    let mut out = Vec::new();
    for (n, b) in blocks.iter().enumerate() {
        let p = format!("{ptr}/{n}");
        let s = label_index(src, &b.from, &format!("{p}/from"))?;
        let t = label_index(tgt, &b.to, &format!("{p}/to"))?;
        let m = matrix_from(tgt.dim(t), src.dim(s), &b.matrix, &format!("{p}/matrix"))?;
        out.push((t, s, m));
    }
    Ok(out)
}

fn blocks_to<'a>(
    it: impl Iterator<Item = (&'a (usize, usize), &'a Matrix<Rational>)>,
    src: &CriticalData<Rational>,
    tgt: &CriticalData<Rational>,
) -> Vec<BlockDto> {
    it.map(|(&(t, s), m)| BlockDto {
        from: src.label(s).id.clone(),
        to: tgt.label(t).id.clone(),
        matrix: triplets(m),
    })
    .collect()
}

/// Contents of a K-system file.
#[derive(Clone, PartialEq, Debug)]
pub enum KSystemFile {
    Complex(PartialComplex<Rational>),
    /// a Morse-type system with its cut
    Morse {
        system: MorseKSystem<Rational>,
        cut: Rational,
    },
}

fn partial_complex_from(dto: &KSystemDto, ptr: &str) -> Result<PartialComplex<Rational>> {
    let cd = Arc::new(critical_from(&dto.critical, &format!("{ptr}/critical"))?);
    let maps = blocks_from(&dto.maps, &cd, &cd, &format!("{ptr}/maps"))?;
    PartialComplex::new(cd, dto.cut.0.clone(), maps).map_err(at(ptr))
}

fn partial_complex_to(x: &PartialComplex<Rational>) -> KSystemDto {
    let cd = x.critical();
    KSystemDto {
        critical: critical_to(cd),
        cut: rat_str(x.cut()),
        maps: blocks_to(x.maps().iter().map(|(k, g)| (k, g.matrix())), cd, cd),
        counts: None,
        dims: None,
    }
}

pub fn ksystem_from_dto(dto: &KSystemDto) -> Result<KSystemFile> {
    if dto.counts.is_none() && dto.dims.is_none() {
        return partial_complex_from(dto, "").map(KSystemFile::Complex);
    }
    if !dto.maps.is_empty() {
        return Err(schema("/maps", "a Morse system carries its data in counts"));
    }
    let cd = Arc::new(critical_from(&dto.critical, "/critical")?);
    let mut counts = BTreeMap::new();
    for (n, c) in dto.counts.iter().flatten().enumerate() {
        let p = format!("/counts/{n}");
        let m = label_index(&cd, &c.minus, &format!("{p}/minus"))?;
        let pl = label_index(&cd, &c.plus, &format!("{p}/plus"))?;
        counts.insert((m, pl), matrix_from(cd.dim(pl), cd.dim(m), &c.matrix, &format!("{p}/matrix"))?);
    }
    let mut dims = BTreeMap::new();
    for (n, d) in dto.dims.iter().flatten().enumerate() {
        let p = format!("/dims/{n}");
        let m = label_index(&cd, &d.minus, &format!("{p}/minus"))?;
        let pl = label_index(&cd, &d.plus, &format!("{p}/plus"))?;
        dims.insert((m, pl), d.dim);
    }
    Ok(KSystemFile::Morse {
        system: MorseKSystem {
            critical: cd,
            counts,
            dims,
        },
        cut: dto.cut.0.clone(),
    })
}

pub fn ksystem_to_dto(k: &KSystemFile) -> KSystemDto {
    match k {
        KSystemFile::Complex(x) => partial_complex_to(x),
        KSystemFile::Morse { system, cut } => {
            let cd = &system.critical;
            let counts = system
                .counts
                .iter()
                .map(|(&(m, p), mat)| CountDto {
                    minus: cd.label(m).id.clone(),
                    plus: cd.label(p).id.clone(),
                    matrix: triplets(mat),
                })
                .collect();
            let dims = system
                .dims
                .iter()
                .map(|(&(m, p), d)| DimDto {
                    minus: cd.label(m).id.clone(),
                    plus: cd.label(p).id.clone(),
                    dim: *d,
                })
                .collect();
            KSystemDto {
                critical: critical_to(cd),
                cut: rat_str(cut),
                maps: Vec::new(),
                counts: Some(counts),
                dims: Some(dims),
            }
        }
    }
}

pub fn parse_ksystem(text: &str) -> Result<KSystemFile> {
    ksystem_from_dto(&parse_json(text)?)
}

pub fn emit_ksystem(k: &KSystemFile) -> String {
    emit_json(&ksystem_to_dto(k))
}

#[derive(Clone, PartialEq, Debug)]
pub struct NamedMap {
    pub source: String,
    pub target: String,
    pub map: Arc<FilteredMap<Rational>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct NamedHomotopy {
    pub from: String,
    pub to: String,
    pub homotopy: PartialHomotopy<Rational>,
}

/// Named complexes, maps between them and homotopies between maps.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct FloerBundle {
    pub complexes: BTreeMap<String, Arc<PartialComplex<Rational>>>,
    pub maps: BTreeMap<String, NamedMap>,
    pub homotopies: BTreeMap<String, NamedHomotopy>,
    pub task: Option<FloerTask>,
}

fn key_ptr(section: &str, name: &str) -> String {
    format!("/{section}/{}", name.replace('~', "~0").replace('/', "~1"))
}

impl FloerBundle {
    pub fn complex(&self, name: &str) -> Result<&Arc<PartialComplex<Rational>>> {
        self.complexes
            .get(name)
            .ok_or_else(|| schema("/task", format!("unknown complex {name:?}")))
    }

    pub fn map(&self, name: &str) -> Result<&Arc<FilteredMap<Rational>>> {
        self.maps
            .get(name)
            .map(|m| &m.map)
            .ok_or_else(|| schema("/task", format!("unknown map {name:?}")))
    }

    pub fn homotopy(&self, name: &str) -> Result<&PartialHomotopy<Rational>> {
        self.homotopies
            .get(name)
            .map(|h| &h.homotopy)
            .ok_or_else(|| schema("/task", format!("unknown homotopy {name:?}")))
    }

    /// Name of a stored complex equal to `x`, adding it under `fallback` if
    /// there is none.
    pub fn intern_complex(&mut self, x: &PartialComplex<Rational>, fallback: &str) -> String {
        if let Some((n, _)) = self.complexes.iter().find(|(_, c)| c.as_ref() == x) {
            return n.clone();
        }
        self.complexes.insert(fallback.to_string(), Arc::new(x.clone()));
        fallback.to_string()
    }

    pub fn intern_map(&mut self, f: &FilteredMap<Rational>, fallback: &str) -> String {
        if let Some((n, _)) = self.maps.iter().find(|(_, m)| m.map.as_ref() == f) {
            return n.clone();
        }
        let source = self.intern_complex(f.source(), &format!("{fallback}.source"));
        let target = self.intern_complex(f.target(), &format!("{fallback}.target"));
        self.maps.insert(
            fallback.to_string(),
            NamedMap {
                source,
                target,
                map: Arc::new(f.clone()),
            },
        );
        fallback.to_string()
    }

    pub fn insert_homotopy(&mut self, name: &str, h: &PartialHomotopy<Rational>) {
        let from = self.intern_map(h.from_map(), &format!("{name}.from"));
        let to = self.intern_map(h.to_map(), &format!("{name}.to"));
        self.homotopies.insert(
            name.to_string(),
            NamedHomotopy {
                from,
                to,
                homotopy: h.clone(),
            },
        );
    }
}

fn map_body_from(
    dto: &MapDto,
    src: Arc<PartialComplex<Rational>>,
    tgt: Arc<PartialComplex<Rational>>,
    ptr: &str,
) -> Result<FilteredMap<Rational>> {
    let entries = blocks_from(&dto.entries, src.critical(), tgt.critical(), &format!("{ptr}/entries"))?;
    FilteredMap::new(src, tgt, dto.cut.0.clone(), dto.loss.0.clone(), dto.degree, dto.unipotent, entries).map_err(at(ptr))
}

pub fn bundle_from_dto(dto: &FloerBundleDto) -> Result<FloerBundle> {
    let mut b = FloerBundle {
        task: dto.task.clone(),
        ..Default::default()
    };
    for (name, k) in &dto.complexes {
        let ptr = key_ptr("complexes", name);
        if k.counts.is_some() || k.dims.is_some() {
            return Err(schema(ptr, "bundle complexes carry maps, not counts"));
        }
        b.complexes.insert(name.clone(), Arc::new(partial_complex_from(k, &ptr)?));
    }
    for (name, m) in &dto.maps {
        let ptr = key_ptr("maps", name);
        let get = |n: &str, field: &str| {
            b.complexes
                .get(n)
                .cloned()
                .ok_or_else(|| schema(format!("{ptr}/{field}"), format!("unknown complex {n:?}")))
        };
        let f = map_body_from(m, get(&m.source, "source")?, get(&m.target, "target")?, &ptr)?;
        b.maps.insert(
            name.clone(),
            NamedMap {
                source: m.source.clone(),
                target: m.target.clone(),
                map: Arc::new(f),
            },
        );
    }
    for (name, h) in &dto.homotopies {
        let ptr = key_ptr("homotopies", name);
        let get = |n: &str, field: &str| {
            b.maps
                .get(n)
                .map(|m| m.map.clone())
                .ok_or_else(|| schema(format!("{ptr}/{field}"), format!("unknown map {n:?}")))
        };
        let (from, to) = (get(&h.from, "from")?, get(&h.to, "to")?);
        let entries = blocks_from(&h.entries, from.source().critical(), from.target().critical(), &format!("{ptr}/entries"))?;
        let homotopy = PartialHomotopy::new(from, to, entries).map_err(at(&ptr))?;
        b.homotopies.insert(
            name.clone(),
            NamedHomotopy {
                from: h.from.clone(),
                to: h.to.clone(),
                homotopy,
            },
        );
    }
    Ok(b)
}

fn map_to(m: &NamedMap) -> MapDto {
    let f = &m.map;
    MapDto {
        source: m.source.clone(),
        target: m.target.clone(),
        cut: rat_str(f.cut()),
        loss: rat_str(f.loss()),
        degree: f.degree(),
        unipotent: f.is_unipotent(),
        entries: blocks_to(
            f.entries().iter().map(|(k, g)| (k, g.matrix())),
            f.source().critical(),
            f.target().critical(),
        ),
    }
}

pub fn bundle_to_dto(b: &FloerBundle) -> FloerBundleDto {
    FloerBundleDto {
        complexes: b.complexes.iter().map(|(n, x)| (n.clone(), partial_complex_to(x))).collect(),
        maps: b.maps.iter().map(|(n, m)| (n.clone(), map_to(m))).collect(),
        homotopies: b
            .homotopies
            .iter()
            .map(|(n, h)| {
                let body = h.homotopy.body();
                (
                    n.clone(),
                    HomotopyDto {
                        from: h.from.clone(),
                        to: h.to.clone(),
                        entries: blocks_to(
                            body.entries().iter().map(|(k, g)| (k, g.matrix())),
                            body.source().critical(),
                            body.target().critical(),
                        ),
                    },
                )
            })
            .collect(),
        task: b.task.clone(),
    }
}

pub fn parse_bundle(text: &str) -> Result<FloerBundle> {
    bundle_from_dto(&parse_json(text)?)
}

pub fn emit_bundle(b: &FloerBundle) -> String {
    emit_json(&bundle_to_dto(b))
}

pub fn monoid_from_dto(m: &MonoidDto, ptr: &str) -> Result<DiscreteSubmonoid> {
    let mut gens = Vec::new();
    for (n, g) in m.generators.iter().enumerate() {
        gens.push(g.parse::<MonoidElement>().map_err(at(&format!("{ptr}/generators/{n}")))?);
    }
    DiscreteSubmonoid::new(gens).map_err(at(ptr))
}

pub fn monoid_to_dto(g: &DiscreteSubmonoid) -> MonoidDto {
    MonoidDto {
        generators: g.generators().iter().map(|b| b.to_string()).collect(),
    }
}

pub fn parse_monoid(text: &str) -> Result<DiscreteSubmonoid> {
    monoid_from_dto(&parse_json(text)?, "")
}

fn basis_index(sp: &GradedSpace, name: &str, ptr: &str) -> Result<usize> {
    sp.index_of(name)
        .ok_or_else(|| schema(ptr, format!("unknown basis element {name:?}")))
}

fn entry_key(sp: &GradedSpace, inputs: &[String], output: &str, ptr: &str) -> Result<(Vec<usize>, usize)> {
    let mut ins = Vec::new();
    for (n, i) in inputs.iter().enumerate() {
        ins.push(basis_index(sp, i, &format!("{ptr}/inputs/{n}"))?);
    }
    Ok((ins, basis_index(sp, output, &format!("{ptr}/output"))?))
}

fn op_entries_from(sp: &GradedSpace, k: usize, entries: &[OpEntryDto], ptr: &str) -> Result<MultiOp<Rational>> {
    let mut op = MultiOp::zero(k);
    for (n, e) in entries.iter().enumerate() {
        let p = format!("{ptr}/{n}");
        if e.inputs.len() != k {
            return Err(schema(format!("{p}/inputs"), format!("{} inputs for an operation of arity {k}", e.inputs.len())));
        }
        let (ins, out) = entry_key(sp, &e.inputs, &e.output, &p)?;
        op.add_entry(ins, out, e.coeff.0.clone());
    }
    Ok(op)
}

pub fn op_entries(sp: &GradedSpace, op: &MultiOp<Rational>) -> Vec<OpEntryDto> {
    op.entries()
        .map(|(ins, out, c)| OpEntryDto {
            inputs: ins.iter().map(|&i| sp.name(i).to_string()).collect(),
            output: sp.name(out).to_string(),
            coeff: rat_str(c),
        })
        .collect()
}

fn dga_from(d: &DgaDto, ptr: &str) -> Result<Dga<Rational>> {
    let cx = complex_from(
        &ComplexDto {
            basis: d.basis.clone(),
            d0: d.d0.clone(),
        },
        ptr,
    )?;
    let product = op_entries_from(cx.space(), 2, &d.product, &format!("{ptr}/product"))?;
    Dga::new(cx, product).map_err(at(ptr))
}

fn dga_to(d: &Dga<Rational>) -> DgaDto {
    let c = complex_to(d.complex());
    DgaDto {
        basis: c.basis,
        d0: c.d0,
        product: op_entries(d.space(), d.product()),
    }
}

fn beta_from(s: &str, ptr: &str) -> Result<MonoidElement> {
    s.parse().map_err(at(ptr))
}

fn context_from(
    space: &DgaDto,
    dim_l: i64,
    monoid: &MonoidDto,
    cut: &Q,
    e0: &Q,
    dga_cache: Option<&Arc<Dga<Rational>>>,
) -> Result<AinfContext<Rational>> {
    let dga = match dga_cache {
        Some(d) if dga_to(d) == *space => d.clone(),
        _ => Arc::new(dga_from(space, "/space")?),
    };
    let g = monoid_from_dto(monoid, "/monoid")?;
    AinfContext::new(dga, dim_l, g, cut.0.clone(), e0.0.clone()).map_err(at(""))
}

pub fn ainf_from_dto(dto: &AinfDto) -> Result<AinfOperations<Rational>> {
    ainf_from_dto_sharing(dto, None)
}

/// Like [`ainf_from_dto`], reusing `dga` when the file describes the same one,
/// so that structures read from several files are compatible.
pub fn ainf_from_dto_sharing(dto: &AinfDto, dga: Option<&Arc<Dga<Rational>>>) -> Result<AinfOperations<Rational>> {
    let ctx = context_from(&dto.space, dto.dim_l, &dto.monoid, &dto.cut, &dto.e0, dga)?;
    let sp = ctx.dga().space().clone();
    let mut ops: Table<Rational> = BTreeMap::new();
    for (n, o) in dto.ops.iter().enumerate() {
        let p = format!("/ops/{n}");
        let beta = beta_from(&o.beta, &format!("{p}/beta"))?;
        let op = op_entries_from(&sp, o.k, &o.entries, &format!("{p}/entries"))?;
        let slot = ops.entry((beta, o.k)).or_insert_with(|| MultiOp::zero(o.k));
        *slot = slot.add(&op);
    }
    AinfOperations::new(ctx, ops).map_err(at("/ops"))
}

pub fn ainf_to_dto(a: &AinfOperations<Rational>) -> AinfDto {
    let ctx = a.context();
    let sp = ctx.dga().space();
    AinfDto {
        space: dga_to(ctx.dga()),
        dim_l: ctx.dim_l(),
        monoid: monoid_to_dto(ctx.monoid()),
        cut: rat_str(ctx.cut()),
        e0: rat_str(ctx.e0()),
        ops: a
            .positive_ops()
            .filter(|(_, op)| !op.is_zero())
            .map(|((beta, k), op)| OpDto {
                k: *k,
                beta: beta.to_string(),
                entries: op_entries(sp, op),
            })
            .collect(),
    }
}

pub fn parse_ainf(text: &str) -> Result<AinfOperations<Rational>> {
    ainf_from_dto(&parse_json(text)?)
}

pub fn emit_ainf(a: &AinfOperations<Rational>) -> String {
    emit_json(&ainf_to_dto(a))
}

fn family_from(
    sp: &GradedSpace,
    fam: &[FamilyOpDto],
    pieces: usize,
    ptr: &str,
) -> Result<Vec<Table<Poly<Rational>>>> {
    let mut out = vec![Table::new(); pieces];
    for (n, o) in fam.iter().enumerate() {
        let p = format!("{ptr}/{n}");
        let beta = beta_from(&o.beta, &format!("{p}/beta"))?;
        for (j, e) in o.entries.iter().enumerate() {
            let pe = format!("{p}/entries/{j}");
            if e.inputs.len() != o.k {
                return Err(schema(format!("{pe}/inputs"), format!("{} inputs for arity {}", e.inputs.len(), o.k)));
            }
            if e.pieces.len() != pieces {
                return Err(schema(format!("{pe}/pieces"), format!("{} pieces, the breaks give {pieces}", e.pieces.len())));
            }
            let (ins, out_idx) = entry_key(sp, &e.inputs, &e.output, &pe)?;
            for (i, coeffs) in e.pieces.iter().enumerate() {
                let poly = Poly::new(coeffs.iter().map(|c| c.0.clone()).collect());
                out[i]
                    .entry((beta.clone(), o.k))
                    .or_insert_with(|| MultiOp::zero(o.k))
                    .add_entry(ins.clone(), out_idx, poly);
            }
        }
    }
    Ok(out)
}

fn family_to(sp: &GradedSpace, tables: &[&Table<Poly<Rational>>], skip_unit: bool) -> Vec<FamilyOpDto> {
    let mut keys: Vec<&(MonoidElement, usize)> = tables.iter().flat_map(|t| t.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = Vec::new();
    for key in keys {
        if skip_unit && key.0.is_unit() {
            continue;
        }
        let mut entries: BTreeMap<(Vec<usize>, usize), Vec<Vec<Q>>> = BTreeMap::new();
        for (i, t) in tables.iter().enumerate() {
            if let Some(op) = t.get(key) {
                for (ins, o, poly) in op.entries() {
                    let e = entries
                        .entry((ins.to_vec(), o))
                        .or_insert_with(|| vec![Vec::new(); tables.len()]);
                    e[i] = poly.coeffs().iter().map(rat_str).collect();
                }
            }
        }
        if entries.is_empty() {
            continue;
        }
        out.push(FamilyOpDto {
            k: key.1,
            beta: key.0.to_string(),
            entries: entries
                .into_iter()
                .map(|((ins, o), pieces)| PolyEntryDto {
                    inputs: ins.iter().map(|&i| sp.name(i).to_string()).collect(),
                    output: sp.name(o).to_string(),
                    pieces,
                })
                .collect(),
        });
    }
    out
}

pub fn isotopy_from_dto(dto: &IsotopyDto) -> Result<PseudoIsotopy<Rational>> {
    isotopy_from_dto_sharing(dto, None)
}

pub fn isotopy_from_dto_sharing(dto: &IsotopyDto, dga: Option<&Arc<Dga<Rational>>>) -> Result<PseudoIsotopy<Rational>> {
    let ctx = context_from(&dto.space, dto.dim_l, &dto.monoid, &dto.cut, &dto.e0, dga)?;
    let sp = ctx.dga().space().clone();
    let n = dto.breaks.len().saturating_sub(1);
    if n == 0 {
        return Err(schema("/breaks", "need at least two breakpoints"));
    }
    let m = family_from(&sp, &dto.m, n, "/m")?;
    let c = family_from(&sp, &dto.c, n, "/c")?;
    let pieces = m.into_iter().zip(c).map(|(m, c)| IsotopyPiece { m, c }).collect();
    PseudoIsotopy::new(ctx, dto.breaks.iter().map(|b| b.0.clone()).collect(), pieces).map_err(at(""))
}

pub fn isotopy_to_dto(iso: &PseudoIsotopy<Rational>) -> IsotopyDto {
    let ctx = iso.context();
    let sp = ctx.dga().space();
    let ms: Vec<_> = iso.pieces().iter().map(|p| &p.m).collect();
    let cs: Vec<_> = iso.pieces().iter().map(|p| &p.c).collect();
    IsotopyDto {
        space: dga_to(ctx.dga()),
        dim_l: ctx.dim_l(),
        monoid: monoid_to_dto(ctx.monoid()),
        cut: rat_str(ctx.cut()),
        e0: rat_str(ctx.e0()),
        breaks: iso.breaks().iter().map(rat_str).collect(),
        m: family_to(sp, &ms, true),
        c: family_to(sp, &cs, false),
    }
}

pub fn parse_isotopy(text: &str) -> Result<PseudoIsotopy<Rational>> {
    isotopy_from_dto(&parse_json(text)?)
}

pub fn emit_isotopy(iso: &PseudoIsotopy<Rational>) -> String {
    emit_json(&isotopy_to_dto(iso))
}

/// Stages and isotopies of an A∞ tower, sharing one DGA.
pub fn ainf_tower_from_dto(dto: &AinfTowerDto) -> Result<(Vec<AinfOperations<Rational>>, Vec<PseudoIsotopy<Rational>>)> {
    let prefix = |p: &str, e: Error| match e {
        Error::Schema { pointer, message } => schema(format!("{p}{pointer}"), message),
        e => e,
    };
    let mut dga: Option<Arc<Dga<Rational>>> = None;
    let mut stages = Vec::new();
    for (n, s) in dto.stages.iter().enumerate() {
        let a = ainf_from_dto_sharing(s, dga.as_ref()).map_err(|e| prefix(&format!("/stages/{n}"), e))?;
        dga.get_or_insert_with(|| a.context().dga().clone());
        stages.push(a);
    }
    let mut isos = Vec::new();
    for (n, s) in dto.isotopies.iter().enumerate() {
        isos.push(isotopy_from_dto_sharing(s, dga.as_ref()).map_err(|e| prefix(&format!("/isotopies/{n}"), e))?);
    }
    Ok((stages, isos))
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NovikovTermDto {
    pub c: Q,
    #[serde(rename = "T")]
    pub energy: Q,
    pub e: i64,
}

pub fn novikov_to_dto(x: &Novikov<Rational>) -> Vec<NovikovTermDto> {
    x.terms()
        .iter()
        .map(|(energy, mu, c)| NovikovTermDto {
            c: rat_str(c),
            energy: rat_str(energy),
            e: *mu,
        })
        .collect()
}

pub fn novikov_from_dto(terms: &[NovikovTermDto]) -> Novikov<Rational> {
    Novikov::from_terms(terms.iter().map(|t| (t.c.0.clone(), t.energy.0.clone(), t.e)))
}
