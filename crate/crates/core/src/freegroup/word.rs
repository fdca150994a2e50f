use std::fmt;

use thiserror::Error;

/// A signed generator index: `+i` is `a_i`, `-i` is `a_i^{-1}`. Zero is never a letter.
pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter {letter} is out of range for rank {rank}")]
    LetterOutOfRange { letter: Letter, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("cannot parse word {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn identity(rank: usize) -> Self {
        Self {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `a_i` (1-based).
    pub fn generator(rank: usize, i: usize) -> Result<Self, WordError> {
        Self::reduce([i as Letter], rank)
    }

    /// Freely reduces a raw letter sequence.
    pub fn reduce<I>(letters: I, rank: usize) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut word = Self::identity(rank);
        for letter in letters {
            check_letter(letter, rank)?;
            word.push(letter);
        }
        Ok(word)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends one letter with cancellation. The letter must already be in range.
    fn push(&mut self, letter: Letter) {
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn multiply(&self, other: &ReducedWord) -> Result<ReducedWord, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = self.clone();
        out.append(other);
        Ok(out)
    }

    /// In-place right multiplication; panics on rank mismatch.
    pub fn append(&mut self, other: &ReducedWord) {
        assert_eq!(self.rank, other.rank, "rank mismatch in append");
        for &letter in &other.letters {
            self.push(letter);
        }
    }

    pub fn invert(&self) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Product of a sequence of words of the given rank.
    pub fn product<'a, I>(rank: usize, words: I) -> ReducedWord
    where
        I: IntoIterator<Item = &'a ReducedWord>,
    {
        let mut out = ReducedWord::identity(rank);
        for w in words {
            out.append(w);
        }
        out
    }
}

fn check_letter(letter: Letter, rank: usize) -> Result<(), WordError> {
    if letter == 0 || letter.unsigned_abs() as usize > rank {
        Err(WordError::LetterOutOfRange { letter, rank })
    } else {
        Ok(())
    }
}

/// Ordered single-character generator names used for the textual word syntax.
///
/// `"ab'a"` is `a b^{-1} a`; `"1"` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    pub fn new(names: Vec<char>) -> Result<Self, WordError> {
        for (i, c) in names.iter().enumerate() {
            if !c.is_alphabetic() || names[..i].contains(c) {
                return Err(WordError::Parse {
                    input: names.iter().collect(),
                    reason: format!("generator name {c:?} is not a distinct letter"),
                });
            }
        }
        Ok(Self { names })
    }

    /// The first `rank` lowercase Latin letters.
    pub fn standard(rank: usize) -> Self {
        assert!(rank <= 26, "standard alphabet supports at most 26 generators");
        Self {
            names: (0..rank).map(|i| (b'a' + i as u8) as char).collect(),
        }
    }

    pub fn from_strings(names: &[String]) -> Result<Self, WordError> {
        let mut chars = Vec::with_capacity(names.len());
        for n in names {
            let mut it = n.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => chars.push(c),
                _ => {
                    return Err(WordError::Parse {
                        input: n.clone(),
                        reason: "generator names must be single letters".into(),
                    })
                }
            }
        }
        Self::new(chars)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.names.iter().position(|&n| n == c)
    }

    pub fn parse(&self, input: &str) -> Result<ReducedWord, WordError> {
        let text: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() || text == "1" {
            return Ok(ReducedWord::identity(self.rank()));
        }
        let mut letters: Vec<Letter> = Vec::new();
        for c in text.chars() {
            if c == '\'' {
                match letters.last_mut() {
                    Some(l) => *l = -*l,
                    None => {
                        return Err(WordError::Parse {
                            input: input.into(),
                            reason: "apostrophe without a preceding generator".into(),
                        })
                    }
                }
            } else {
                let i = self.index_of(c).ok_or_else(|| WordError::Parse {
                    input: input.into(),
                    reason: format!("unknown generator {c:?}"),
                })?;
                letters.push(i as Letter + 1);
            }
        }
        ReducedWord::reduce(letters, self.rank())
    }

    pub fn format(&self, word: &ReducedWord) -> String {
        if word.is_identity() {
            return "1".into();
        }
        let mut out = String::new();
        for &l in word.letters() {
            out.push(self.names[l.unsigned_abs() as usize - 1]);
            if l < 0 {
                out.push('\'');
            }
        }
        out
    }
}

impl fmt::Display for ReducedWord {
    /// Displays with the standard alphabet when the rank allows it, otherwise as signed indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank <= 26 {
            f.write_str(&Alphabet::standard(self.rank).format(self))
        } else {
            write!(f, "{:?}", self.letters)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Letter]) -> ReducedWord {
        ReducedWord::reduce(letters.iter().copied(), 3).unwrap()
    }

    #[test]
    fn cancellation() {
        assert!(w(&[1, -1]).is_identity());
        assert_eq!(w(&[1, 2, -2, 1]).letters(), &[1, 1]);
        assert_eq!(w(&[1, 2, -2, -1, 3]).letters(), &[3]);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(
            ReducedWord::reduce([4], 3),
            Err(WordError::LetterOutOfRange { letter: 4, rank: 3 })
        );
        assert!(ReducedWord::reduce([0], 3).is_err());
    }

    #[test]
    fn multiply_examples() {
        // (a b)(b^-1 c) = a c
        assert_eq!(w(&[1, 2]).multiply(&w(&[-2, 3])).unwrap(), w(&[1, 3]));
        assert_eq!(w(&[1, 2]).multiply(&ReducedWord::identity(3)).unwrap(), w(&[1, 2]));
        assert!(w(&[1, 2]).multiply(&w(&[-2, -1])).unwrap().is_identity());
        let other = ReducedWord::identity(2);
        assert_eq!(
            w(&[1]).multiply(&other),
            Err(WordError::RankMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn invert_examples() {
        assert!(ReducedWord::identity(2).invert().is_identity());
        assert_eq!(w(&[1, 2]).invert(), w(&[-2, -1]));
    }

    #[test]
    fn text_syntax() {
        let abc = Alphabet::standard(3);
        assert_eq!(abc.parse("ab'a").unwrap().letters(), &[1, -2, 1]);
        assert!(abc.parse("1").unwrap().is_identity());
        assert!(abc.parse("aa'").unwrap().is_identity());
        assert_eq!(abc.format(&w(&[1, -2, 1])), "ab'a");
        assert_eq!(abc.format(&ReducedWord::identity(3)), "1");
        assert!(abc.parse("'a").is_err());
        assert!(abc.parse("az").is_err());
        assert!(Alphabet::new(vec!['a', 'a']).is_err());
    }
}
