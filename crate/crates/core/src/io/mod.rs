//! JSON definition bundles and canonical report emission.
//!
//! Element and object names are strings; bare integers are accepted wherever
//! a name is expected. Omitted hom entries default to the identity on the
//! diagonal and bottom elsewhere; omitted distributor values default to
//! bottom. Every table is validated in full after defaults are filled in.

mod emit;
pub mod report;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{Map, Value};

pub use emit::{emit_bundle, emit_report};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::oracle::{TestSuite, MAX_PROBE_OBJECTS};
use crate::qcat::{QCategory, QFunctor};
use crate::qchu::{ChuDiagram, ChuObject, ChuTransform, DiagramArrow};
use crate::qdist::QDistributor;
use crate::quantaloid::{Diagonal, Quantaloid};

pub const FORMAT_VERSION: u64 = 1;

/// How the quantaloid of a bundle was declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantaloidSpec {
    Two,
    Chain(usize),
    Diagonal(Box<QuantaloidSpec>),
    Explicit,
}

impl QuantaloidSpec {
    /// `two`, `chain:5`, `diagonal:chain:2`, each optionally prefixed by
    /// `builtin:`.
    pub fn parse_short(s: &str) -> Result<Self> {
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        if let Some(inner) = s.strip_prefix("diagonal:") {
            return Ok(QuantaloidSpec::Diagonal(Box::new(Self::parse_short(
                inner,
            )?)));
        }
        match s.split_once(':') {
            None if s == "two" => Ok(QuantaloidSpec::Two),
            Some(("chain", n)) => n
                .parse()
                .map(QuantaloidSpec::Chain)
                .map_err(|_| Error::BadParameter(format!("`{n}` is not a size"))),
            _ => Err(Error::BadParameter(format!("unknown builtin `{s}`"))),
        }
    }

    /// Builds a builtin; explicit quantaloids have no short form.
    pub fn build(&self) -> Result<Quantaloid> {
        match self {
            QuantaloidSpec::Two => Ok(Quantaloid::two()),
            QuantaloidSpec::Chain(n) => Quantaloid::chain(*n),
            QuantaloidSpec::Diagonal(inner) => Ok(Diagonal::new(&inner.build()?)?.quantaloid),
            QuantaloidSpec::Explicit => Err(Error::BadParameter(
                "explicit quantaloids have no builtin form".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDef {
    pub from: String,
    pub to: String,
    pub functor: QFunctor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributorDef {
    pub from: String,
    pub to: String,
    pub distributor: ChuObject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformDef {
    pub from: String,
    pub to: String,
    pub transform: ChuTransform,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramDef {
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
    pub diagram: ChuDiagram,
}

/// A parsed, fully resolved and validated bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinitionBundle {
    pub format: u64,
    pub spec: QuantaloidSpec,
    pub quantaloid: Arc<Quantaloid>,
    pub categories: BTreeMap<String, Arc<QCategory>>,
    pub functors: BTreeMap<String, FunctorDef>,
    pub distributors: BTreeMap<String, DistributorDef>,
    pub transforms: BTreeMap<String, TransformDef>,
    pub diagrams: BTreeMap<String, DiagramDef>,
}

impl DefinitionBundle {
    pub fn category(&self, name: &str) -> Result<&Arc<QCategory>> {
        self.categories
            .get(name)
            .ok_or_else(|| unresolved("categories", name))
    }

    pub fn functor(&self, name: &str) -> Result<&QFunctor> {
        self.functors
            .get(name)
            .map(|d| &d.functor)
            .ok_or_else(|| unresolved("functors", name))
    }

    pub fn distributor(&self, name: &str) -> Result<&ChuObject> {
        self.distributors
            .get(name)
            .map(|d| &d.distributor)
            .ok_or_else(|| unresolved("distributors", name))
    }

    pub fn transform(&self, name: &str) -> Result<&ChuTransform> {
        self.transforms
            .get(name)
            .map(|d| &d.transform)
            .ok_or_else(|| unresolved("transforms", name))
    }

    pub fn diagram(&self, name: &str) -> Result<&DiagramDef> {
        self.diagrams
            .get(name)
            .ok_or_else(|| unresolved("diagrams", name))
    }

    /// Every category and distributor small enough to serve as a probe.
    pub fn suite(&self) -> Result<TestSuite> {
        let categories = self
            .categories
            .iter()
            .filter(|(_, c)| c.len() <= MAX_PROBE_OBJECTS)
            .map(|(n, c)| (n.clone(), c.clone()))
            .collect();
        let chu = self
            .distributors
            .iter()
            .filter(|(_, d)| {
                let phi = &d.distributor;
                phi.source().len().max(phi.target().len()) <= MAX_PROBE_OBJECTS
            })
            .map(|(n, d)| (n.clone(), d.distributor.clone()))
            .collect();
        TestSuite::new(self.quantaloid.clone(), categories, chu)
    }
}

fn unresolved(section: &str, name: &str) -> Error {
    Error::UnresolvedReference {
        path: section.to_string(),
        name: name.to_string(),
    }
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| schema(path, format!("missing field `{key}`")))
}

/// A name: a string, or an integer standing for its decimal spelling.
fn name(v: &Value, path: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_u64() || n.is_i64() => Ok(n.to_string()),
        _ => Err(schema(path, "expected a name")),
    }
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(path, format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

fn section<'a>(root: &'a Map<String, Value>, key: &str) -> Result<Option<&'a Map<String, Value>>> {
    root.get(key).map(|v| as_object(v, key)).transpose()
}

pub fn parse_bundle(text: &str) -> Result<DefinitionBundle> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = as_object(&root, "$")?;
    check_keys(
        root,
        &[
            "format",
            "quantaloid",
            "categories",
            "functors",
            "distributors",
            "transforms",
            "diagrams",
        ],
        "$",
    )?;
    let format = match root.get("format") {
        None => FORMAT_VERSION,
        Some(v) => v
            .as_u64()
            .ok_or_else(|| schema("format", "expected an integer"))?,
    };
    if format != FORMAT_VERSION {
        return Err(schema("format", format!("unsupported version {format}")));
    }
    let (spec, quantaloid) = parse_quantaloid(field(root, "quantaloid", "$")?, "quantaloid")?;
    let quantaloid = Arc::new(quantaloid);

    let mut bundle = DefinitionBundle {
        format,
        spec,
        quantaloid,
        categories: BTreeMap::new(),
        functors: BTreeMap::new(),
        distributors: BTreeMap::new(),
        transforms: BTreeMap::new(),
        diagrams: BTreeMap::new(),
    };
    if let Some(m) = section(root, "categories")? {
        for (n, v) in m {
            let c = parse_category(&bundle.quantaloid, v, &format!("categories.{n}"))?;
            bundle.categories.insert(n.clone(), Arc::new(c));
        }
    }
    if let Some(m) = section(root, "functors")? {
        for (n, v) in m {
            let f = parse_functor(&bundle, v, &format!("functors.{n}"))?;
            bundle.functors.insert(n.clone(), f);
        }
    }
    if let Some(m) = section(root, "distributors")? {
        for (n, v) in m {
            let d = parse_distributor(&bundle, v, &format!("distributors.{n}"))?;
            bundle.distributors.insert(n.clone(), d);
        }
    }
    if let Some(m) = section(root, "transforms")? {
        for (n, v) in m {
            let t = parse_transform(&bundle, v, &format!("transforms.{n}"))?;
            bundle.transforms.insert(n.clone(), t);
        }
    }
    if let Some(m) = section(root, "diagrams")? {
        for (n, v) in m {
            let d = parse_diagram(&bundle, v, &format!("diagrams.{n}"))?;
            bundle.diagrams.insert(n.clone(), d);
        }
    }
    Ok(bundle)
}

/// `"two"`, `"chain:5"` (optionally prefixed `builtin:`), or the object forms
/// `{"builtin": ...}` and the explicit table form.
pub fn parse_quantaloid(v: &Value, path: &str) -> Result<(QuantaloidSpec, Quantaloid)> {
    if let Value::String(s) = v {
        let spec = QuantaloidSpec::parse_short(s).map_err(|e| e.at(path))?;
        let q = spec.build().map_err(|e| e.at(path))?;
        return Ok((spec, q));
    }
    let m = as_object(v, path)?;
    if let Some(b) = m.get("builtin") {
        let kind = b
            .as_str()
            .ok_or_else(|| schema(&format!("{path}.builtin"), "expected a string"))?;
        return match kind {
            "two" => {
                check_keys(m, &["builtin"], path)?;
                Ok((QuantaloidSpec::Two, Quantaloid::two()))
            }
            "chain" => {
                check_keys(m, &["builtin", "n"], path)?;
                let n = field(m, "n", path)?
                    .as_u64()
                    .ok_or_else(|| schema(&format!("{path}.n"), "expected an integer"))?;
                let q = Quantaloid::chain(n as usize).map_err(|e| e.at(format!("{path}.n")))?;
                Ok((QuantaloidSpec::Chain(n as usize), q))
            }
            "diagonal" => {
                check_keys(m, &["builtin", "of"], path)?;
                let inner_path = format!("{path}.of");
                let (inner, base) = parse_quantaloid(field(m, "of", path)?, &inner_path)?;
                let d = Diagonal::new(&base).map_err(|e| e.at(path))?;
                Ok((QuantaloidSpec::Diagonal(Box::new(inner)), d.quantaloid))
            }
            other => Err(schema(
                &format!("{path}.builtin"),
                format!("unknown builtin `{other}`"),
            )),
        };
    }
    parse_explicit_quantaloid(m, path).map(|q| (QuantaloidSpec::Explicit, q))
}

fn parse_explicit_quantaloid(m: &Map<String, Value>, path: &str) -> Result<Quantaloid> {
    check_keys(m, &["objects", "homs", "compose", "identities"], path)?;
    let objects: Vec<String> = as_array(field(m, "objects", path)?, &format!("{path}.objects"))?
        .iter()
        .enumerate()
        .map(|(i, v)| name(v, &format!("{path}.objects[{i}]")))
        .collect::<Result<_>>()?;
    let n = objects.len();
    let homs_path = format!("{path}.homs");
    let homs_v = as_object(field(m, "homs", path)?, &homs_path)?;
    let mut homs = Vec::with_capacity(n * n);
    for q in &objects {
        for r in &objects {
            let key = format!("{q}->{r}");
            let p = format!("{homs_path}.{key}");
            let h = as_object(
                homs_v
                    .get(&key)
                    .ok_or_else(|| schema(&homs_path, format!("missing hom `{key}`")))?,
                &p,
            )?;
            check_keys(h, &["elements", "leq"], &p)?;
            let elements: Vec<String> =
                as_array(field(h, "elements", &p)?, &format!("{p}.elements"))?
                    .iter()
                    .enumerate()
                    .map(|(i, v)| name(v, &format!("{p}.elements[{i}]")))
                    .collect::<Result<_>>()?;
            let pairs: Vec<(String, String)> = match h.get("leq") {
                None => Vec::new(),
                Some(v) => as_array(v, &format!("{p}.leq"))?
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let ep = format!("{p}.leq[{i}]");
                        match as_array(e, &ep)?.as_slice() {
                            [a, b] => Ok((name(a, &ep)?, name(b, &ep)?)),
                            _ => Err(schema(&ep, "expected a pair")),
                        }
                    })
                    .collect::<Result<_>>()?,
            };
            homs.push(FiniteLattice::new(&elements, &pairs).map_err(|e| e.at(&p))?);
        }
    }
    if homs_v.len() != n * n {
        return Err(schema(&homs_path, "hom for an unknown pair of objects"));
    }

    let id_path = format!("{path}.identities");
    let ids_v = as_object(field(m, "identities", path)?, &id_path)?;
    let identities = objects
        .iter()
        .enumerate()
        .map(|(i, q)| {
            let p = format!("{id_path}.{q}");
            let e = name(
                ids_v
                    .get(q)
                    .ok_or_else(|| schema(&id_path, format!("missing identity of `{q}`")))?,
                &p,
            )?;
            homs[i * n + i].lookup(&e).map_err(|err| err.at(p))
        })
        .collect::<Result<Vec<_>>>()?;

    let comp_path = format!("{path}.compose");
    let comp_v = as_object(field(m, "compose", path)?, &comp_path)?;
    let mut table: BTreeMap<(usize, usize, usize), Vec<Option<usize>>> = BTreeMap::new();
    for (key, rows) in comp_v {
        let p = format!("{comp_path}.{key}");
        let (q, r, s) = parse_compose_key(key, &objects).ok_or_else(|| {
            schema(
                &p,
                "expected a key of the form `(r->s)*(q->r)` over declared objects",
            )
        })?;
        let (hg, hf, hgf) = (&homs[r * n + s], &homs[q * n + r], &homs[q * n + s]);
        let entry = table
            .entry((q, r, s))
            .or_insert_with(|| vec![None; hg.len() * hf.len()]);
        for (i, row) in as_array(rows, &p)?.iter().enumerate() {
            let rp = format!("{p}[{i}]");
            let [g, f, gf] = as_array(row, &rp)?.as_slice() else {
                return Err(schema(&rp, "expected [g, f, g*f]"));
            };
            let g = hg.lookup(&name(g, &rp)?).map_err(|e| e.at(&rp))?;
            let f = hf.lookup(&name(f, &rp)?).map_err(|e| e.at(&rp))?;
            let gf = hgf.lookup(&name(gf, &rp)?).map_err(|e| e.at(&rp))?;
            entry[g * hf.len() + f] = Some(gf);
        }
    }
    Quantaloid::try_from_fn(
        objects.clone(),
        homs.clone(),
        identities,
        |q, r, s, g, f| {
            let width = homs[q * n + r].len();
            table
                .get(&(q, r, s))
                .and_then(|t| t[g * width + f])
                .ok_or_else(|| {
                    Error::IncompleteComposition(format!(
                        "({}->{})*({}->{}) at {} * {}",
                        objects[r],
                        objects[s],
                        objects[q],
                        objects[r],
                        homs[r * n + s].name(g),
                        homs[q * n + r].name(f)
                    ))
                })
        },
    )
    .map_err(|e| e.at(path))
}

fn parse_compose_key(key: &str, objects: &[String]) -> Option<(usize, usize, usize)> {
    let (left, right) = key.split_once(")*(")?;
    let (r1, s) = left.strip_prefix('(')?.split_once("->")?;
    let (q, r2) = right.strip_suffix(')')?.split_once("->")?;
    if r1 != r2 {
        return None;
    }
    let find = |n: &str| objects.iter().position(|o| o == n);
    Some((find(q)?, find(r1)?, find(s)?))
}

fn parse_category(q: &Arc<Quantaloid>, v: &Value, path: &str) -> Result<QCategory> {
    let m = as_object(v, path)?;
    check_keys(m, &["objects", "hom"], path)?;
    let objs_path = format!("{path}.objects");
    let mut names = Vec::new();
    let mut extents = Vec::new();
    for (i, o) in as_array(field(m, "objects", path)?, &objs_path)?
        .iter()
        .enumerate()
    {
        let p = format!("{objs_path}[{i}]");
        let (n, extent) = match o {
            Value::Object(om) => {
                check_keys(om, &["name", "extent"], &p)?;
                (
                    name(field(om, "name", &p)?, &format!("{p}.name"))?,
                    om.get("extent"),
                )
            }
            other => (name(other, &p)?, None),
        };
        let extent = match extent {
            Some(e) => {
                let ep = format!("{p}.extent");
                let e = name(e, &ep)?;
                q.object_index(&e)
                    .ok_or(Error::UnresolvedReference { path: ep, name: e })?
            }
            None if q.len() == 1 => 0,
            None => return Err(schema(&p, "missing extent")),
        };
        names.push(n);
        extents.push(extent);
    }
    let k = names.len();
    let index = |n: &str, p: &str| {
        names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| Error::UnresolvedReference {
                path: p.to_string(),
                name: n.to_string(),
            })
    };
    let mut hom: Vec<usize> = (0..k * k)
        .map(|i| {
            let (x, y) = (i / k, i % k);
            if x == y {
                q.identity(extents[x])
            } else {
                q.bottom(extents[x], extents[y])
            }
        })
        .collect();
    if let Some(entries) = m.get("hom") {
        let hp = format!("{path}.hom");
        for (i, e) in as_array(entries, &hp)?.iter().enumerate() {
            let p = format!("{hp}[{i}]");
            let [x, y, val] = as_array(e, &p)?.as_slice() else {
                return Err(schema(&p, "expected [x, y, value]"));
            };
            let x = index(&name(x, &format!("{p}[0]"))?, &format!("{p}[0]"))?;
            let y = index(&name(y, &format!("{p}[1]"))?, &format!("{p}[1]"))?;
            hom[x * k + y] = q
                .hom(extents[x], extents[y])
                .lookup(&name(val, &format!("{p}[2]"))?)
                .map_err(|e| e.at(format!("{p}[2]")))?;
        }
    }
    QCategory::new(q.clone(), names, extents, hom).map_err(|e| e.at(path))
}

fn resolve_category(
    b: &DefinitionBundle,
    v: &Value,
    path: &str,
) -> Result<(String, Arc<QCategory>)> {
    let n = name(v, path)?;
    let c = b
        .categories
        .get(&n)
        .cloned()
        .ok_or_else(|| Error::UnresolvedReference {
            path: path.to_string(),
            name: n.clone(),
        })?;
    Ok((n, c))
}

fn parse_map(v: &Value, source: &QCategory, target: &QCategory, path: &str) -> Result<Vec<usize>> {
    let m = as_object(v, path)?;
    for k in m.keys() {
        if source.index_of(k).is_none() {
            return Err(Error::UnresolvedReference {
                path: path.to_string(),
                name: k.clone(),
            });
        }
    }
    source
        .names()
        .iter()
        .map(|x| {
            let p = format!("{path}.{x}");
            let y = name(
                m.get(x)
                    .ok_or_else(|| schema(path, format!("no image for `{x}`")))?,
                &p,
            )?;
            target
                .index_of(&y)
                .ok_or(Error::UnresolvedReference { path: p, name: y })
        })
        .collect()
}

fn parse_functor(b: &DefinitionBundle, v: &Value, path: &str) -> Result<FunctorDef> {
    let m = as_object(v, path)?;
    check_keys(m, &["from", "to", "map"], path)?;
    let (from, x) = resolve_category(b, field(m, "from", path)?, &format!("{path}.from"))?;
    let (to, y) = resolve_category(b, field(m, "to", path)?, &format!("{path}.to"))?;
    let map = parse_map(field(m, "map", path)?, &x, &y, &format!("{path}.map"))?;
    let functor = QFunctor::new(x, y, map).map_err(|e| e.at(path))?;
    Ok(FunctorDef { from, to, functor })
}

fn parse_distributor(b: &DefinitionBundle, v: &Value, path: &str) -> Result<DistributorDef> {
    let m = as_object(v, path)?;
    check_keys(m, &["from", "to", "value"], path)?;
    let (from, x) = resolve_category(b, field(m, "from", path)?, &format!("{path}.from"))?;
    let (to, y) = resolve_category(b, field(m, "to", path)?, &format!("{path}.to"))?;
    let q = &b.quantaloid;
    let mut values: Vec<usize> = (0..x.len() * y.len())
        .map(|i| q.bottom(x.extent(i / y.len()), y.extent(i % y.len())))
        .collect();
    if let Some(entries) = m.get("value") {
        let vp = format!("{path}.value");
        for (i, e) in as_array(entries, &vp)?.iter().enumerate() {
            let p = format!("{vp}[{i}]");
            let [a, c, val] = as_array(e, &p)?.as_slice() else {
                return Err(schema(&p, "expected [x, y, value]"));
            };
            let (ap, cp) = (format!("{p}[0]"), format!("{p}[1]"));
            let an = name(a, &ap)?;
            let i = x
                .index_of(&an)
                .ok_or(Error::UnresolvedReference { path: ap, name: an })?;
            let cn = name(c, &cp)?;
            let j = y
                .index_of(&cn)
                .ok_or(Error::UnresolvedReference { path: cp, name: cn })?;
            values[i * y.len() + j] = q
                .hom(x.extent(i), y.extent(j))
                .lookup(&name(val, &format!("{p}[2]"))?)
                .map_err(|e| e.at(format!("{p}[2]")))?;
        }
    }
    let distributor = Arc::new(QDistributor::new(x, y, values).map_err(|e| e.at(path))?);
    Ok(DistributorDef {
        from,
        to,
        distributor,
    })
}

/// A functor named in the bundle, or an inline map.
fn functor_ref(
    b: &DefinitionBundle,
    v: &Value,
    source: &Arc<QCategory>,
    target: &Arc<QCategory>,
    path: &str,
) -> Result<QFunctor> {
    match v {
        Value::String(n) => {
            let f = b
                .functors
                .get(n)
                .ok_or_else(|| Error::UnresolvedReference {
                    path: path.to_string(),
                    name: n.clone(),
                })?;
            let f = &f.functor;
            if **f.source() != **source || **f.target() != **target {
                return Err(
                    Error::TypeMismatch(format!("functor `{n}` has the wrong type")).at(path),
                );
            }
            Ok(f.clone())
        }
        _ => {
            let map = parse_map(v, source, target, path)?;
            QFunctor::unchecked(source.clone(), target.clone(), map)
        }
    }
}

fn parse_transform(b: &DefinitionBundle, v: &Value, path: &str) -> Result<TransformDef> {
    let m = as_object(v, path)?;
    check_keys(m, &["from", "to", "fwd", "bwd"], path)?;
    let resolve = |key: &str| -> Result<(String, ChuObject)> {
        let p = format!("{path}.{key}");
        let n = name(field(m, key, path)?, &p)?;
        let d = b
            .distributors
            .get(&n)
            .ok_or_else(|| Error::UnresolvedReference {
                path: p,
                name: n.clone(),
            })?;
        Ok((n, d.distributor.clone()))
    };
    let (from, phi) = resolve("from")?;
    let (to, psi) = resolve("to")?;
    let fwd = functor_ref(
        b,
        field(m, "fwd", path)?,
        phi.source(),
        psi.source(),
        &format!("{path}.fwd"),
    )?;
    let bwd = functor_ref(
        b,
        field(m, "bwd", path)?,
        psi.target(),
        phi.target(),
        &format!("{path}.bwd"),
    )?;
    let transform = ChuTransform::new(phi, psi, fwd, bwd).map_err(|e| e.at(path))?;
    Ok(TransformDef {
        from,
        to,
        transform,
    })
}

fn parse_diagram(b: &DefinitionBundle, v: &Value, path: &str) -> Result<DiagramDef> {
    let m = as_object(v, path)?;
    check_keys(m, &["objects", "arrows"], path)?;
    let op = format!("{path}.objects");
    let objects: Vec<String> = as_array(field(m, "objects", path)?, &op)?
        .iter()
        .enumerate()
        .map(|(i, v)| name(v, &format!("{op}[{i}]")))
        .collect::<Result<_>>()?;
    let mut vertices = Vec::with_capacity(objects.len());
    for (i, n) in objects.iter().enumerate() {
        let p = format!("{op}[{i}]");
        if objects[..i].contains(n) {
            return Err(Error::Duplicate(n.clone()).at(p));
        }
        let d = b
            .distributors
            .get(n)
            .ok_or_else(|| Error::UnresolvedReference {
                path: p,
                name: n.clone(),
            })?;
        vertices.push(d.distributor.clone());
    }
    let ap = format!("{path}.arrows");
    let mut arrows = Vec::new();
    let mut arrow_names = Vec::new();
    if let Some(list) = m.get("arrows") {
        for (i, v) in as_array(list, &ap)?.iter().enumerate() {
            let p = format!("{ap}[{i}]");
            let n = name(v, &p)?;
            let t = b
                .transforms
                .get(&n)
                .ok_or_else(|| Error::UnresolvedReference {
                    path: p.clone(),
                    name: n.clone(),
                })?;
            let endpoint = |d: &str| {
                objects
                    .iter()
                    .position(|o| o == d)
                    .ok_or_else(|| schema(&p, format!("`{d}` is not an object of the diagram")))
            };
            arrows.push(DiagramArrow {
                from: endpoint(&t.from)?,
                to: endpoint(&t.to)?,
                transform: t.transform.clone(),
            });
            arrow_names.push(n);
        }
    }
    let diagram = ChuDiagram {
        objects: vertices,
        arrows,
    };
    diagram.validate().map_err(|e| e.at(path))?;
    Ok(DiagramDef {
        objects,
        arrows: arrow_names,
        diagram,
    })
}

#[cfg(test)]
mod tests;
