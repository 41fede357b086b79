//! Braid words: ordered products of elementary interchanges.

use crate::anyon_model::ObjectList;
use crate::error::{Error, Result};

/// One letter: the generator index `i` (1-based, `σ_i` exchanges the objects
/// at positions `i−1` and `i`) and its sign (`+1` for `σ_i`, `−1` for
/// `σ_i⁻¹`).
pub type Letter = (u32, i8);

/// A word in the braid group generators over a fixed object context.
///
/// Words store free-group structure only: braid relations are never used for
/// rewriting, so two words are equal exactly when their letter sequences (and
/// contexts) are. The first letter acts first; under
/// [`crate::simulator::represent`] the product `u·v` maps to the matrix
/// product `ρ(v)·ρ(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    context: ObjectList,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// Builds a word, validating every index against the context width.
    pub fn new(context: ObjectList, letters: Vec<Letter>) -> Result<Self> {
        let n = context.len();
        for &(i, sign) in &letters {
            if i < 1 || (i as usize) >= n {
                return Err(Error::IndexOutOfRange {
                    index: i as usize,
                    what: format!("braid generator on {n} strands (valid: 1..={})", n - 1),
                });
            }
            if sign != 1 && sign != -1 {
                return Err(Error::Parse(format!(
                    "letter sign must be +1 or -1, got {sign}"
                )));
            }
        }
        Ok(BraidWord { context, letters })
    }

    /// The empty word on a context.
    pub fn empty(context: ObjectList) -> Self {
        BraidWord {
            context,
            letters: Vec::new(),
        }
    }

    /// The object context the word acts on (its domain).
    pub fn context(&self) -> &ObjectList {
        &self.context
    }

    /// The letters in application order.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of letters (elementary interchanges).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Whether the word has no letters.
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The object context after the word's permutation (its codomain).
    pub fn final_context(&self) -> ObjectList {
        let mut ctx = self.context.clone();
        for &(i, _) in &self.letters {
            ctx = ctx
                .swapped(i as usize - 1)
                .expect("indices validated at construction");
        }
        ctx
    }

    /// Freely reduces the word: repeatedly cancels adjacent `σ_i σ_i⁻¹`
    /// pairs. Idempotent; the represented unitary is unchanged.
    pub fn reduce(&self) -> BraidWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &(i, sign) in &self.letters {
            if let Some(&(top_i, top_sign)) = stack.last() {
                if top_i == i && top_sign == -sign {
                    stack.pop();
                    continue;
                }
            }
            stack.push((i, sign));
        }
        BraidWord {
            context: self.context.clone(),
            letters: stack,
        }
    }

    /// The group inverse: letters reversed with flipped signs. Its context is
    /// this word's final context, so `w.concat(&w.inverse())` is always
    /// valid and represents the identity.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            context: self.final_context(),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(i, sign)| (i, -sign))
                .collect(),
        }
    }

    /// `self` followed by `next`. Requires `next` to act on this word's
    /// final context.
    pub fn concat(&self, next: &BraidWord) -> Result<BraidWord> {
        if *next.context() != self.final_context() {
            return Err(Error::BasisMismatch(
                "concatenation requires the next word's context to equal this word's final context"
                    .into(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&next.letters);
        Ok(BraidWord {
            context: self.context.clone(),
            letters,
        })
    }

    /// The word repeated `n` times. Requires a closed word (final context
    /// equal to the initial context).
    pub fn repeat(&self, n: usize) -> Result<BraidWord> {
        if n > 0 && self.final_context() != self.context {
            return Err(Error::BasisMismatch(
                "repetition requires a word whose permutation preserves the context".into(),
            ));
        }
        let mut letters = Vec::with_capacity(self.letters.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Ok(BraidWord {
            context: self.context.clone(),
            letters,
        })
    }

    /// The same letters re-indexed to act on strands
    /// `offset+1 ..= offset+len(context)` of a wider context, whose charges
    /// must agree with this word's context on that window.
    pub fn embedded(&self, context: ObjectList, offset: usize) -> Result<BraidWord> {
        let inner = self.context.charges();
        let outer = context.charges();
        if offset + inner.len() > outer.len() {
            return Err(Error::IndexOutOfRange {
                index: offset,
                what: format!(
                    "embedding offset for {} strands into {}",
                    inner.len(),
                    outer.len()
                ),
            });
        }
        if outer[offset..offset + inner.len()] != *inner {
            return Err(Error::BasisMismatch(
                "embedding window charges differ from the word's context".into(),
            ));
        }
        let letters = self
            .letters
            .iter()
            .map(|&(i, sign)| (i + offset as u32, sign))
            .collect();
        BraidWord::new(context, letters)
    }
}

impl std::fmt::Display for BraidWord {
    /// Compact human-readable form: `s1 s2' s1` with `'` marking inverses.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(out, "(empty)");
        }
        for (n, &(i, sign)) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(out, " ")?;
            }
            write!(out, "s{i}{}", if sign < 0 { "'" } else { "" })?;
        }
        Ok(())
    }
}
