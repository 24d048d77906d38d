use alloc::vec::Vec;

pub type GenId = u16;

/// A letter of a group word.
///
/// `Fin` holds a whole finitary automorphism as a portrait; runs of finitary
/// generators collapse into a single such token during normalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Gen { id: GenId, inv: bool },
    Fin(u128),
}

impl Letter {
    pub fn gen(id: GenId) -> Self {
        Letter::Gen { id, inv: false }
    }

    pub fn is_long(&self) -> bool {
        matches!(self, Letter::Gen { .. })
    }
}

/// Word in the generators, read as a composition of functions: the rightmost
/// letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub(crate) Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters that are not finitary tokens.
    pub fn long_letters(&self) -> usize {
        self.0.iter().filter(|l| l.is_long()).count()
    }
}
