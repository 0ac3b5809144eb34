use crate::words::FreeWord;

/// A stable-letter occurrence `s^sign · Π tail_k^offset_k`, where the tail
/// generators are the target centralizer for `sign = +1` and the source
/// centralizer for `sign = -1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub letter: usize,
    pub sign: i8,
    pub offset: Vec<i64>,
}

/// Group element in block normal form.
///
/// `Hnn` stores `p_1 ∘ B_1 ∘ p_2 ∘ … ∘ B_k ∘ p_{k+1}` with every `p_j` of
/// strictly lower level and `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Word(FreeWord),
    Hnn { level: usize, pieces: Vec<Element>, blocks: Vec<Block> },
}

impl Default for Element {
    fn default() -> Self {
        Element::identity()
    }
}

impl Element {
    pub fn identity() -> Self {
        Element::Word(FreeWord::identity())
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Element::Word(w) if w.is_empty())
    }

    /// 1 for base words (including ε), otherwise the top stable-letter level.
    pub fn level(&self) -> usize {
        match self {
            Element::Word(_) => 1,
            Element::Hnn { level, .. } => *level,
        }
    }

    pub fn as_word(&self) -> Option<&FreeWord> {
        match self {
            Element::Word(w) => Some(w),
            _ => None,
        }
    }

    /// Number of top-level blocks.
    pub fn block_count(&self) -> usize {
        match self {
            Element::Word(_) => 0,
            Element::Hnn { blocks, .. } => blocks.len(),
        }
    }
}

impl From<FreeWord> for Element {
    fn from(w: FreeWord) -> Self {
        Element::Word(w)
    }
}
