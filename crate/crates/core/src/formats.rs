//! JSON file formats. Every file written carries `"format": "grodiag-v1"`;
//! on input the field is optional but must match when present.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::backends::{Morphism, Object, ObjectRepr};
use crate::bottleneck::Matching;
use crate::diagram::{Interval, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::grocat::{Backend, GroupElement};
use crate::interleave::InterleavingData;
use crate::pipeline::{FilteredComplex, Simplex};
use crate::pmodule::ConstructibleModule;

pub const FORMAT_VERSION: &str = "grodiag-v1";

fn version() -> Option<String> {
    Some(FORMAT_VERSION.to_string())
}

fn check_version(v: &Option<String>) -> Result<()> {
    match v.as_deref() {
        None | Some(FORMAT_VERSION) => Ok(()),
        Some(other) => Err(Error::Format(format!(
            "format {other:?} is not supported (expected {FORMAT_VERSION:?})"
        ))),
    }
}

/// A real number that may be `+inf`, written as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extended(pub f64);

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Extended(x)),
            Raw::Str(s) if s == "inf" => Ok(Extended(f64::INFINITY)),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub backend: Backend,
    pub criticals: Vec<f64>,
    pub objects: Vec<ObjectRepr>,
    pub maps: Vec<Vec<Vec<i64>>>,
}

impl ModuleFile {
    pub fn from_module(m: &ConstructibleModule) -> Self {
        ModuleFile {
            format: version(),
            backend: m.backend(),
            criticals: m.criticals().values().to_vec(),
            objects: m.objects().iter().map(ObjectRepr::from).collect(),
            maps: m.maps().iter().map(Morphism::rows).collect(),
        }
    }

    pub fn to_module(&self) -> Result<ConstructibleModule> {
        check_version(&self.format)?;
        let objects = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| {
                let obj = Object::try_from(o)
                    .map_err(|e| Error::InvalidModule(format!("objects[{i}]: {e}")))?;
                if obj.backend() != self.backend {
                    return Err(Error::InvalidModule(format!(
                        "objects[{i}] is {} but the file declares {}",
                        obj.backend(),
                        self.backend
                    )));
                }
                Ok(obj)
            })
            .collect::<Result<Vec<_>>>()?;
        if self.maps.len() + 1 != objects.len() {
            return Err(Error::InvalidModule(format!(
                "{} maps for {} objects (expected {})",
                self.maps.len(),
                objects.len(),
                objects.len().saturating_sub(1)
            )));
        }
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                Morphism::from_rows(&objects[i], &objects[i + 1], rows)
                    .map_err(|e| Error::InvalidModule(format!("maps[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ConstructibleModule::new(self.criticals.clone(), objects, maps)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointRecord {
    pub birth: f64,
    pub death: Extended,
    pub value: GroupElement,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub backend: Backend,
    pub points: Vec<PointRecord>,
}

impl DiagramFile {
    /// Points come out sorted by (birth, death).
    pub fn from_diagram(d: &PersistenceDiagram) -> Self {
        DiagramFile {
            format: version(),
            backend: d.backend(),
            points: d
                .iter()
                .map(|(i, v)| PointRecord {
                    birth: i.birth(),
                    death: Extended(i.death()),
                    value: v.clone(),
                })
                .collect(),
        }
    }

    pub fn to_diagram(&self) -> Result<PersistenceDiagram> {
        check_version(&self.format)?;
        let mut d = PersistenceDiagram::new(self.backend);
        for (i, p) in self.points.iter().enumerate() {
            let interval = Interval::new(p.birth, p.death.0).map_err(|e| Error::Format(format!("points[{i}]: {e}")))?;
            d.add(interval, &p.value)
                .map_err(|e| Error::Format(format!("points[{i}]: {e}")))?;
        }
        Ok(d)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub at: f64,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterleavingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub epsilon: f64,
    pub phi: Vec<ComponentRecord>,
    pub psi: Vec<ComponentRecord>,
}

/// Reads a component matrix as a map `from(at) -> to(at + ε)`. A field
/// matrix whose size disagrees with the modules is kept with the size it has,
/// so that verification reports it as a shape violation.
fn component_map(
    name: &str,
    i: usize,
    rec: &ComponentRecord,
    from: &ConstructibleModule,
    to: &ConstructibleModule,
    epsilon: f64,
) -> Result<Morphism> {
    let source = from.evaluate(rec.at);
    let target = to.evaluate(rec.at + epsilon);
    let rows = rec.matrix.len();
    let cols = rec.matrix.first().map_or(source.rank(), Vec::len);
    let (source, target) = match (&source, &target) {
        (Object::Field(s), Object::Field(_)) if rows != target.rank() || cols != source.rank() => {
            (Object::field(s.p, cols), Object::field(s.p, rows))
        }
        _ => (source, target),
    };
    Morphism::from_rows(&source, &target, &rec.matrix).map_err(|e| Error::Format(format!("{name}[{i}]: {e}")))
}

impl InterleavingFile {
    pub fn from_data(data: &InterleavingData) -> Self {
        let records = |entries: &[(f64, Morphism)]| {
            entries
                .iter()
                .map(|(at, m)| ComponentRecord {
                    at: *at,
                    matrix: m.rows(),
                })
                .collect()
        };
        InterleavingFile {
            format: version(),
            epsilon: data.epsilon(),
            phi: records(data.phi()),
            psi: records(data.psi()),
        }
    }

    pub fn to_data(&self, f: &ConstructibleModule, g: &ConstructibleModule) -> Result<InterleavingData> {
        check_version(&self.format)?;
        let e = self.epsilon;
        let phi = self
            .phi
            .iter()
            .enumerate()
            .map(|(i, r)| Ok((r.at, component_map("phi", i, r, f, g, e)?)))
            .collect::<Result<Vec<_>>>()?;
        let psi = self
            .psi
            .iter()
            .enumerate()
            .map(|(i, r)| Ok((r.at, component_map("psi", i, r, g, f, e)?)))
            .collect::<Result<Vec<_>>>()?;
        InterleavingData::new(e, phi, psi)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplexRecord {
    pub id: i64,
    pub vertices: Vec<i64>,
    /// Filtration columns such as `value` and `value2`.
    #[serde(flatten)]
    pub columns: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub simplices: Vec<SimplexRecord>,
}

impl ComplexFile {
    /// The complex filtered by the named column.
    pub fn filtration(&self, column: &str) -> Result<FilteredComplex> {
        check_version(&self.format)?;
        let simplices = self
            .simplices
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let value = *s.columns.get(column).ok_or_else(|| {
                    Error::Format(format!("simplices[{i}] (id {}) has no column {column:?}", s.id))
                })?;
                Ok(Simplex {
                    id: s.id,
                    vertices: s.vertices.clone(),
                    value,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FilteredComplex::new(simplices)
    }

    /// One file holding several filtrations of the same complex.
    pub fn from_filtrations(columns: &[(&str, &FilteredComplex)]) -> Result<Self> {
        let Some((_, first)) = columns.first() else {
            return Err(Error::Precondition("no filtration to write".into()));
        };
        if let Some((name, _)) = columns.iter().find(|(_, k)| !k.same_cells(first)) {
            return Err(Error::Precondition(format!("column {name} is on a different complex")));
        }
        let simplices = first
            .simplices()
            .iter()
            .enumerate()
            .map(|(pos, s)| SimplexRecord {
                id: s.id,
                vertices: s.vertices.clone(),
                columns: columns
                    .iter()
                    .map(|(name, k)| (name.to_string(), k.simplices()[pos].value))
                    .collect(),
            })
            .collect();
        Ok(ComplexFile {
            format: version(),
            simplices,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub birth: f64,
    pub death: Extended,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchingEntry {
    pub from: IntervalRecord,
    pub to: IntervalRecord,
    pub value: GroupElement,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub backend: Backend,
    pub distance: Extended,
    pub entries: Vec<MatchingEntry>,
}

impl MatchingFile {
    pub fn from_matching(distance: f64, m: &Matching) -> Self {
        let rec = |i: &Interval| IntervalRecord {
            birth: i.birth(),
            death: Extended(i.death()),
        };
        MatchingFile {
            format: version(),
            backend: m.backend(),
            distance: Extended(distance),
            entries: m
                .iter()
                .map(|((a, b), v)| MatchingEntry {
                    from: rec(a),
                    to: rec(b),
                    value: v.clone(),
                })
                .collect(),
        }
    }

    pub fn to_matching(&self) -> Result<Matching> {
        check_version(&self.format)?;
        let mut m = Matching::new(self.backend);
        for (i, e) in self.entries.iter().enumerate() {
            let bad = |err: Error| Error::Format(format!("entries[{i}]: {err}"));
            let a = Interval::new(e.from.birth, e.from.death.0).map_err(bad)?;
            let b = Interval::new(e.to.birth, e.to.death.0).map_err(bad)?;
            m.add(a, b, &e.value).map_err(bad)?;
        }
        Ok(m)
    }
}

/// Either kind of input accepted by the `diagram` command.
#[derive(Debug, Clone)]
pub enum DiagramSource {
    Module(ModuleFile),
    Complex(ComplexFile),
}

pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("{what}: {e}")))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_json(&text, &path.display().to_string())
}

pub fn read_diagram_source(path: &Path) -> Result<DiagramSource> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let name = path.display().to_string();
    let value: serde_json::Value = parse_json(&text, &name)?;
    if value.get("simplices").is_some() {
        Ok(DiagramSource::Complex(parse_json(&text, &name)?))
    } else {
        Ok(DiagramSource::Module(parse_json(&text, &name)?))
    }
}

/// Pretty JSON written to a temporary file in the target directory, then renamed.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let io = |e: std::io::Error| Error::Format(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    serde_json::to_writer_pretty(&mut tmp, value).map_err(|e| Error::Format(e.to_string()))?;
    tmp.write_all(b"\n").map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_round_trip() {
        let text = r#"{"backend":"vect","criticals":[1,2,3],
            "objects":[{"type":"field","p":2,"dim":1},{"type":"field","p":2,"dim":2},{"type":"field","p":2,"dim":1}],
            "maps":[[[1],[0]],[[0,1]]]}"#;
        let file: ModuleFile = parse_json(text, "m1").unwrap();
        let m = file.to_module().unwrap();
        let again = ModuleFile::from_module(&m).to_module().unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn module_errors_are_positional() {
        let text = r#"{"backend":"vect","criticals":[1,2],
            "objects":[{"type":"field","p":2,"dim":1},{"type":"field","p":2,"dim":2}],
            "maps":[[[1]]]}"#;
        let err = parse_json::<ModuleFile>(text, "m").unwrap().to_module().unwrap_err();
        assert!(err.to_string().contains("maps[0]"), "{err}");
        let err = parse_json::<ModuleFile>("{\"backend\":\"vect\",", "m").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn diagram_round_trip_with_infinity() {
        let text = r#"{"backend":"finab","points":[
            {"birth":1,"death":2,"value":{"backend":"finab","coeffs":[[2,1]]}},
            {"birth":1,"death":"inf","value":{"backend":"finab","coeffs":[[2,1]]}}]}"#;
        let d = parse_json::<DiagramFile>(text, "d").unwrap().to_diagram().unwrap();
        assert_eq!(d.len(), 2);
        let out = serde_json::to_value(DiagramFile::from_diagram(&d)).unwrap();
        assert_eq!(out["format"], FORMAT_VERSION);
        assert_eq!(out["points"][1]["death"], "inf");
        let back: DiagramFile = serde_json::from_value(out).unwrap();
        assert_eq!(back.to_diagram().unwrap(), d);
    }

    #[test]
    fn rejects_other_versions() {
        let text = r#"{"format":"grodiag-v9","backend":"vect","points":[]}"#;
        assert!(parse_json::<DiagramFile>(text, "d").unwrap().to_diagram().is_err());
    }

    #[test]
    fn complex_columns() {
        let text = r#"{"simplices":[{"id":0,"vertices":[0],"value":0,"value2":0.5},
            {"id":1,"vertices":[1],"value":0,"value2":0.5},
            {"id":2,"vertices":[0,1],"value":1,"value2":1.5}]}"#;
        let file: ComplexFile = parse_json(text, "k").unwrap();
        let f = file.filtration("value").unwrap();
        let g = file.filtration("value2").unwrap();
        assert_eq!(g.values(), vec![0.5, 0.5, 1.5]);
        assert!(file.filtration("col9").is_err());
        let both = ComplexFile::from_filtrations(&[("value", &f), ("value2", &g)]).unwrap();
        assert_eq!(both.filtration("value2").unwrap(), g);
    }

    #[test]
    fn atomic_write() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.json");
        let d = DiagramFile::from_diagram(&PersistenceDiagram::new(Backend::Vect));
        write_json_atomic(&path, &d).unwrap();
        let back: DiagramFile = read_json(&path).unwrap();
        assert!(back.to_diagram().unwrap().is_empty());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
