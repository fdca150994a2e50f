//! Free groups: reduced word arithmetic and Stallings foldings.

mod stallings;
mod word;

pub use stallings::{fold, SubgroupGraph};
pub use word::{Alphabet, Letter, ReducedWord, WordError};
