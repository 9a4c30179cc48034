//! Group files: `{"name": ..., "generators": ["[[..],[..],[..]]", ...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::ProjGroup;
use crate::projgeom::ProjMat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub generators: Vec<String>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<GroupFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group file: {e}")))
    }

    pub fn read(path: &Path) -> Result<GroupFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        GroupFile::from_json(&text)
    }

    pub fn matrices(&self) -> Result<Vec<ProjMat>> {
        self.generators.iter().map(|s| ProjMat::parse(s)).collect()
    }

    /// Closure of the generators; no generators gives the trivial group.
    pub fn group(&self) -> Result<ProjGroup> {
        let gens = self.matrices()?;
        if gens.is_empty() {
            return Ok(ProjGroup::trivial());
        }
        ProjGroup::closure(&gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_and_closes() {
        let f = GroupFile::from_json(r#"{"name":"h1","generators":["[[1,0,0],[0,z(3),0],[0,0,z(3)^2]]","[[0,0,1],[1,0,0],[0,1,0]]"]}"#).unwrap();
        assert_eq!(f.group().unwrap().order(), 9);
        let t = GroupFile::from_json(r#"{"name":"trivial","generators":[]}"#).unwrap();
        assert_eq!(t.group().unwrap().order(), 1);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(GroupFile::from_json("{"), Err(Error::Parse(_))));
        let bad = GroupFile { name: "x".into(), generators: vec!["[[1,0],[0,1]]".into()] };
        assert!(bad.group().is_err());
    }
}
