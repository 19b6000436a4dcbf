//! Reading and writing the JSON file formats used by the command line tool.

use grodiag::diagram::mobius_inversion;
use grodiag::error::Result;
use grodiag::formats::{parse_json, read_json, write_json_atomic, ComplexFile, DiagramFile, ModuleFile};
use grodiag::pipeline::homology_module;
use grodiag::samples::{m2, m2_diagram};

pub fn run() -> Result<()> {
    let dir = tempfile::tempdir().map_err(|e| grodiag::error::Error::Format(e.to_string()))?;
    let path = dir.path().join("m2.json");
    write_json_atomic(&path, &ModuleFile::from_module(&m2()))?;
    let back = read_json::<ModuleFile>(&path)?.to_module()?;
    assert_eq!(back, m2());

    let diagram = DiagramFile::from_diagram(&mobius_inversion(&back));
    println!("{}", serde_json::to_string(&diagram).expect("serializable"));
    assert_eq!(diagram.to_diagram()?, m2_diagram());

    let complex: ComplexFile = parse_json(
        r#"{"simplices": [
            {"id": 0, "vertices": [0], "value": 0, "late": 1},
            {"id": 1, "vertices": [1], "value": 0, "late": 2},
            {"id": 2, "vertices": [0, 1], "value": 1, "late": 3}
        ]}"#,
        "inline complex",
    )?;
    for column in ["value", "late"] {
        let h0 = mobius_inversion(&homology_module(&complex.filtration(column)?, 0, 2)?);
        let bars: Vec<String> = h0.iter().map(|(i, v)| format!("{i}: {v}")).collect();
        println!("H_0 by {column}: {}", bars.join(", "));
    }
    assert!(complex.filtration("missing").is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
