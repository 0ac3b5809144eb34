//! Group towers `G_1 < … < G_n` and the normal-form engine.

mod build;
mod com;
mod element;
mod mul;
mod render;
mod subgroup;

use std::fmt;

use thiserror::Error;

use crate::lambda::LambdaError;
use crate::words::FreeWord;

pub use build::{LetterSpec, CLASH};
pub use com::Side;
pub use element::{Block, Element};
pub use subgroup::AbelianSubgroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid or duplicate name `{0}`")]
    BadName(String),
    #[error("tower file: {0}")]
    File(String),
    #[error("{condition}: {detail}")]
    Rejected { condition: String, detail: String },
    #[error("operation undefined for the identity element")]
    Identity,
    #[error(transparent)]
    Lambda(#[from] LambdaError),
}

impl TowerError {
    pub fn rejected(condition: impl Into<String>, detail: impl Into<String>) -> Self {
        TowerError::Rejected { condition: condition.into(), detail: detail.into() }
    }

    /// Input could not be read at all (as opposed to a well-formed request the
    /// group theory refuses).
    pub fn is_usage(&self) -> bool {
        matches!(self, TowerError::Parse { .. } | TowerError::UnknownSymbol(_) | TowerError::File(_))
    }
}

pub type Result<T> = std::result::Result<T, TowerError>;

/// A stable letter `s` with `s^-1 A s = B`.
///
/// `src_orient[k] = ±1` records which of `source[k]^{±1}` is an initial
/// segment of the u-periodic head of `s`; `tgt_orient` likewise for terminal
/// segments of the v-periodic tail. Top generators are `+1` by definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableLetter {
    pub name: String,
    pub level: usize,
    pub source: Vec<Element>,
    pub target: Vec<Element>,
    pub(crate) src_orient: Vec<i8>,
    pub(crate) tgt_orient: Vec<i8>,
}

impl StableLetter {
    pub fn u(&self) -> &Element {
        self.source.last().expect("nonempty centralizer")
    }

    pub fn v(&self) -> &Element {
        self.target.last().expect("nonempty centralizer")
    }

    /// Generators of the subgroup a block of this sign absorbs on its left,
    /// with orientations.
    pub(crate) fn head(&self, sign: i8) -> (&[Element], Vec<i8>) {
        if sign > 0 {
            (&self.source, self.src_orient.clone())
        } else {
            (&self.target, self.tgt_orient.iter().map(|o| -o).collect())
        }
    }

    /// Generators a block of this sign carries as its offset.
    pub(crate) fn tail(&self, sign: i8) -> (&[Element], Vec<i8>) {
        if sign > 0 {
            (&self.target, self.tgt_orient.clone())
        } else {
            (&self.source, self.src_orient.iter().map(|o| -o).collect())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTower {
    alphabet: Vec<String>,
    rank: usize,
    letters: Vec<StableLetter>,
}

impl GroupTower {
    /// The free group on `alphabet` as a rank-1 tower.
    pub fn free<S: AsRef<str>>(alphabet: &[S]) -> Result<Self> {
        let mut t = GroupTower { alphabet: Vec::new(), rank: 1, letters: Vec::new() };
        for s in alphabet {
            let s = s.as_ref();
            if !build::valid_ident(s) || t.lookup(s).is_some() {
                return Err(TowerError::BadName(s.to_string()));
            }
            t.alphabet.push(s.to_string());
        }
        Ok(t)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[StableLetter] {
        &self.letters
    }

    pub fn letter(&self, idx: usize) -> &StableLetter {
        &self.letters[idx]
    }

    pub fn letters_at(&self, level: usize) -> impl Iterator<Item = (usize, &StableLetter)> {
        self.letters.iter().enumerate().filter(move |(_, l)| l.level == level)
    }

    pub(crate) fn lookup(&self, name: &str) -> Option<Symbol> {
        if let Some(i) = self.alphabet.iter().position(|a| a == name) {
            return Some(Symbol::Base(i as u32));
        }
        self.letters.iter().position(|l| l.name == name).map(Symbol::Stable)
    }

    /// Generator by name: a base symbol or a stable letter.
    pub fn generator(&self, name: &str) -> Result<Element> {
        match self.lookup(name) {
            Some(Symbol::Base(i)) => Ok(Element::Word(FreeWord::letter(i, false))),
            Some(Symbol::Stable(i)) => Ok(self.stable_element(i, 1)),
            None => Err(TowerError::UnknownSymbol(name.to_string())),
        }
    }

    /// All generators (base symbols then stable letters).
    pub fn generators(&self) -> Vec<Element> {
        let mut out: Vec<Element> =
            (0..self.alphabet.len() as u32).map(|i| Element::Word(FreeWord::letter(i, false))).collect();
        out.extend((0..self.letters.len()).map(|i| self.stable_element(i, 1)));
        out
    }

    pub fn stable_element(&self, idx: usize, sign: i8) -> Element {
        let l = &self.letters[idx];
        Element::Hnn {
            level: l.level,
            pieces: vec![Element::identity(), Element::identity()],
            blocks: vec![Block { letter: idx, sign, offset: vec![0; l.source.len()] }],
        }
    }

    /// The rank-`k` truncation `G_k`.
    pub fn truncate(&self, k: usize) -> GroupTower {
        let k = k.max(1).min(self.rank);
        GroupTower {
            alphabet: self.alphabet.clone(),
            rank: k,
            letters: self.letters.iter().filter(|l| l.level <= k).cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Symbol {
    Base(u32),
    Stable(usize),
}

impl fmt::Display for GroupTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}", self.alphabet.join(", "))?;
        for l in &self.letters {
            write!(f, "; {}@{}", l.name, l.level)?;
        }
        write!(f, "⟩")
    }
}

#[cfg(test)]
mod tests;
