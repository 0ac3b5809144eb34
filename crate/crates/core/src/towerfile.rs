//! JSON tower documents.
//!
//! ```json
//! {"alphabet": ["a", "b"],
//!  "levels": [{"letters": [{"name": "z", "source_gens": ["a"], "target_gens": ["b"]}]}]}
//! ```
//! `levels[i]` holds the stable letters of level `i + 2`.

use serde::{Deserialize, Serialize};

use crate::expr::parse;
use crate::tower::{GroupTower, LetterSpec, Result, TowerError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerFile {
    pub alphabet: Vec<String>,
    #[serde(default)]
    pub levels: Vec<LevelFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelFile {
    pub letters: Vec<LetterFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterFile {
    pub name: String,
    pub source_gens: Vec<String>,
    pub target_gens: Vec<String>,
}

impl TowerFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| TowerError::File(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tower file serializes")
    }

    /// Builds and validates, level by level.
    pub fn build(&self) -> Result<GroupTower> {
        let mut t = GroupTower::free(&self.alphabet)?;
        for (i, level) in self.levels.iter().enumerate() {
            if level.letters.is_empty() {
                return Err(TowerError::File(format!("level {} has no letters", i + 2)));
            }
            for l in &level.letters {
                let source = l.source_gens.iter().map(|s| parse(&t, s)).collect::<Result<Vec<_>>>()?;
                let target = l.target_gens.iter().map(|s| parse(&t, s)).collect::<Result<Vec<_>>>()?;
                t = t.add_letter(LetterSpec { name: l.name.clone(), level: i + 2, source, target })?;
            }
        }
        Ok(t)
    }

    pub fn from_tower(t: &GroupTower) -> Self {
        let mut levels: Vec<LevelFile> = (2..=t.rank()).map(|_| LevelFile { letters: Vec::new() }).collect();
        for l in t.letters() {
            levels[l.level - 2].letters.push(LetterFile {
                name: l.name.clone(),
                source_gens: l.source.iter().map(|g| t.render(g)).collect(),
                target_gens: l.target.iter().map(|g| t.render(g)).collect(),
            });
        }
        TowerFile { alphabet: t.alphabet().to_vec(), levels }
    }
}

pub fn load_tower(json: &str) -> Result<GroupTower> {
    TowerFile::from_json(json)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const T1: &str =
        r#"{"alphabet":["a","b"],"levels":[{"letters":[{"name":"z","source_gens":["a"],"target_gens":["b"]}]}]}"#;

    #[test]
    fn round_trip() {
        let t = load_tower(T1).unwrap();
        let again = TowerFile::from_tower(&t).build().unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"alphabet":["a"],"extra":1}"#;
        assert!(matches!(load_tower(bad), Err(TowerError::File(_))));
    }
}
