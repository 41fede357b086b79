//! Weaves: braid words in which a single designated mobile object does all
//! the moving while the remaining objects keep their relative order.

use crate::anyon_model::ObjectList;
use crate::braid_core::word::{BraidWord, Letter};
use crate::error::{Error, Result};

/// A braid word under the weaving discipline: every letter exchanges the
/// mobile object with one of its current neighbors, so static objects never
/// cross each other.
///
/// The mobile object's position is tracked letter by letter; `winding` is
/// the net signed interchange count, the integer that controls the overall
/// phase accumulated by one-dimensional charge sectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weave {
    context: ObjectList,
    /// Starting position of the mobile object (0-based index into the
    /// context).
    mobile: usize,
    moves: Vec<Letter>,
    /// Position of the mobile object after all moves.
    final_position: usize,
}

impl Weave {
    /// Builds a weave, validating that every move involves the mobile
    /// object at its tracked position.
    ///
    /// With the mobile object at 0-based position `p`, the admissible
    /// generator indices are `p` (exchange with the neighbor below, moving
    /// the mobile object down) and `p+1` (exchange with the neighbor above,
    /// moving it up) — in 1-based generator units.
    pub fn new(context: ObjectList, mobile: usize, moves: Vec<Letter>) -> Result<Self> {
        if mobile >= context.len() {
            return Err(Error::IndexOutOfRange {
                index: mobile,
                what: format!("mobile object in a list of {} objects", context.len()),
            });
        }
        let n = context.len();
        let mut p = mobile;
        for &(i, sign) in &moves {
            if i < 1 || (i as usize) >= n {
                return Err(Error::IndexOutOfRange {
                    index: i as usize,
                    what: format!("braid generator on {n} strands (valid: 1..={})", n - 1),
                });
            }
            if sign != 1 && sign != -1 {
                return Err(Error::Parse(format!(
                    "move sign must be +1 or -1, got {sign}"
                )));
            }
            let i = i as usize;
            if i == p {
                p -= 1;
            } else if i == p + 1 {
                p += 1;
            } else {
                return Err(Error::Refused(format!(
                    "weave move s{i} does not involve the mobile object at position {p}"
                )));
            }
        }
        Ok(Weave {
            context,
            mobile,
            moves,
            final_position: p,
        })
    }

    /// Reinterprets a braid word as a weave with the given starting mobile
    /// position, if the word obeys the weaving discipline.
    pub fn from_braid(word: &BraidWord, mobile: usize) -> Result<Self> {
        Weave::new(word.context().clone(), mobile, word.letters().to_vec())
    }

    /// The object context.
    pub fn context(&self) -> &ObjectList {
        &self.context
    }

    /// Starting position of the mobile object (0-based).
    pub fn mobile(&self) -> usize {
        self.mobile
    }

    /// The moves in application order.
    pub fn moves(&self) -> &[Letter] {
        &self.moves
    }

    /// Number of elementary interchanges.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    /// Whether the weave has no moves.
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Position of the mobile object after all moves (0-based).
    pub fn final_position(&self) -> usize {
        self.final_position
    }

    /// Net signed interchange count: the sum of the move signs.
    pub fn winding(&self) -> i64 {
        self.moves.iter().map(|&(_, sign)| sign as i64).sum()
    }

    /// Forgets the mobility restriction, yielding the same word as a plain
    /// braid word.
    pub fn to_braid(&self) -> BraidWord {
        BraidWord::new(self.context.clone(), self.moves.clone())
            .expect("weave moves are validated braid letters")
    }
}
