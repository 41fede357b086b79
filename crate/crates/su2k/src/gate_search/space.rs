//! Precompiled search spaces over two-dimensional charge sectors.
//!
//! A weave space moves one mobile object (possibly a composite standing for
//! a rigid pair) while every other strand stays put; each available move
//! acts as a known 2x2 unitary, so the space is a table of `U2` actions
//! indexed by mobile position and word enumeration never touches the
//! simulator. A braid space drops the single-mobile constraint and offers
//! every strand interchange as a move; it requires a uniform context so the
//! per-letter actions compose in one fixed basis.

use serde::{Deserialize, Serialize};

use crate::anyon_model::{Charge, ObjectList, Theory};
use crate::braid_core::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::gate_search::su2::U2;
use crate::simulator::represent;

/// Move alphabet for weave enumeration.
///
/// `Elementary`: the mobile takes single interchanges, walking between
/// positions. `Twist`: the mobile winds fully around a neighbor (two equal
/// interchanges), returning to its position after every move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alphabet {
    Elementary,
    Twist,
}

/// One available move at a given mobile position.
#[derive(Debug, Clone)]
pub struct Move {
    /// Braid letters the move expands to (1 for elementary, 2 for twists).
    pub letters: Vec<Letter>,
    /// Sector action.
    pub action: U2,
    /// Physical interchange count (letters × crossing width).
    pub cost: u32,
    /// Signed crossing count added to the mobile's winding.
    pub winding: i64,
    /// Mobile position after the move.
    pub to_position: usize,
    /// Index into `moves_at(to_position)` of the exact inverse, for pruning
    /// freely reducible words.
    pub undo_id: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Down(i8),
    Up(i8),
    LeftTwist(i8),
    RightTwist(i8),
}

impl Kind {
    fn letters(self, p: usize) -> Vec<Letter> {
        match self {
            Kind::Down(s) => vec![(p as u32, s)],
            Kind::Up(s) => vec![(p as u32 + 1, s)],
            Kind::LeftTwist(s) => vec![(p as u32, s); 2],
            Kind::RightTwist(s) => vec![(p as u32 + 1, s); 2],
        }
    }

    fn to_position(self, p: usize) -> usize {
        match self {
            Kind::Down(_) => p - 1,
            Kind::Up(_) => p + 1,
            Kind::LeftTwist(_) | Kind::RightTwist(_) => p,
        }
    }

    fn inverse(self) -> Kind {
        match self {
            Kind::Down(s) => Kind::Up(-s),
            Kind::Up(s) => Kind::Down(-s),
            Kind::LeftTwist(s) => Kind::LeftTwist(-s),
            Kind::RightTwist(s) => Kind::RightTwist(-s),
        }
    }
}

/// A compiled search space (weave or unconstrained braid) over a
/// two-dimensional charge sector.
#[derive(Debug)]
pub struct SearchSpace {
    theory_k: u32,
    context: ObjectList,
    mobile_home: usize,
    total: Charge,
    alphabet: Alphabet,
    crossing_cost: u32,
    window: (usize, usize),
    moves: Vec<Vec<Move>>,
    closing: Vec<bool>,
}

impl SearchSpace {
    /// Builds the move tables for a weave: one mobile strand, everything
    /// else fixed.
    ///
    /// `context` holds the mobile at index `mobile`; `crossing_cost` is the
    /// number of physical interchanges one crossing stands for (2 when the
    /// mobile is a fused pair). `window` clamps the mobile's reachable
    /// positions (inclusive); it defaults to the whole strand range.
    pub fn weave(
        theory: &Theory,
        context: ObjectList,
        mobile: usize,
        total: Charge,
        alphabet: Alphabet,
        crossing_cost: u32,
        window: Option<(usize, usize)>,
    ) -> Result<SearchSpace> {
        let n = context.len();
        if mobile >= n {
            return Err(Error::IndexOutOfRange { index: mobile, what: "mobile strand".into() });
        }
        let window = window.unwrap_or((0, n - 1));
        if window.0 > mobile || window.1 < mobile || window.1 >= n {
            return Err(Error::BasisMismatch(format!(
                "window {:?} must contain the mobile index {mobile} and fit {n} strands",
                window
            )));
        }
        if crossing_cost == 0 {
            return Err(Error::BasisMismatch("crossing cost must be positive".into()));
        }
        let dim = theory.enumerate_paths(&context, Some(total)).len();
        if dim != 2 {
            return Err(Error::BasisMismatch(format!(
                "weave search needs a two-dimensional sector, got dimension {dim}"
            )));
        }

        let mut contexts: Vec<ObjectList> = Vec::with_capacity(n);
        for p in 0..n {
            let mut charges: Vec<Charge> = context
                .charges()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != mobile)
                .map(|(_, &c)| c)
                .collect();
            charges.insert(p, context.charges()[mobile]);
            contexts.push(ObjectList::new(charges)?);
        }
        let closing: Vec<bool> = contexts
            .iter()
            .map(|c| c.charges() == context.charges())
            .collect();

        let mut kinds: Vec<Vec<Kind>> = vec![Vec::new(); n];
        for (p, slot) in kinds.iter_mut().enumerate() {
            if p < window.0 || p > window.1 {
                continue;
            }
            // Lexicographic by expanded letters: lower strand index first,
            // negative sign before positive.
            match alphabet {
                Alphabet::Elementary => {
                    if p > window.0 {
                        slot.push(Kind::Down(-1));
                        slot.push(Kind::Down(1));
                    }
                    if p < window.1 {
                        slot.push(Kind::Up(-1));
                        slot.push(Kind::Up(1));
                    }
                }
                Alphabet::Twist => {
                    if p > window.0 {
                        slot.push(Kind::LeftTwist(-1));
                        slot.push(Kind::LeftTwist(1));
                    }
                    if p < window.1 {
                        slot.push(Kind::RightTwist(-1));
                        slot.push(Kind::RightTwist(1));
                    }
                }
            }
        }

        let mut moves: Vec<Vec<Move>> = Vec::with_capacity(n);
        for p in 0..n {
            let mut list = Vec::with_capacity(kinds[p].len());
            for &kind in &kinds[p] {
                let letters = kind.letters(p);
                let word = BraidWord::new(contexts[p].clone(), letters.clone())?;
                let sector = represent(theory, &word, Some(total))?;
                let action = U2::from_matrix(sector.matrix())?;
                let winding: i64 = letters.iter().map(|&(_, s)| s as i64).sum();
                let to = kind.to_position(p);
                let undo_kind = kind.inverse();
                let undo_id = kinds[to]
                    .iter()
                    .position(|&k| k == undo_kind)
                    .map(|i| i as u8)
                    .unwrap_or(u8::MAX);
                list.push(Move {
                    letters,
                    action,
                    cost: letters_cost(kind, crossing_cost),
                    winding,
                    to_position: to,
                    undo_id,
                });
            }
            moves.push(list);
        }

        Ok(SearchSpace {
            theory_k: theory.k(),
            context,
            mobile_home: mobile,
            total,
            alphabet,
            crossing_cost,
            window,
            moves,
            closing,
        })
    }

    /// Builds the move table for an unconstrained braid search: every
    /// adjacent interchange (or its square, under the `Twist` alphabet) is a
    /// move, and any strand may cross.
    ///
    /// Requires a uniform context: only then does every interchange map the
    /// sector basis to itself, letting table actions compose in one basis.
    pub fn braid(
        theory: &Theory,
        context: ObjectList,
        total: Charge,
        alphabet: Alphabet,
        crossing_cost: u32,
    ) -> Result<SearchSpace> {
        let n = context.len();
        if n < 2 {
            return Err(Error::BasisMismatch(
                "braid search needs at least two strands".into(),
            ));
        }
        if crossing_cost == 0 {
            return Err(Error::BasisMismatch("crossing cost must be positive".into()));
        }
        let first = context.charges()[0];
        if context.charges().iter().any(|&c| c != first) {
            return Err(Error::BasisMismatch(
                "unconstrained braid search requires a uniform context; for mixed charges \
                 use a weave with a single mobile strand"
                    .into(),
            ));
        }
        let dim = theory.enumerate_paths(&context, Some(total)).len();
        if dim != 2 {
            return Err(Error::BasisMismatch(format!(
                "braid search needs a two-dimensional sector, got dimension {dim}"
            )));
        }

        let mut list: Vec<Move> = Vec::with_capacity(2 * (n - 1));
        for i in 1..n as u32 {
            for s in [-1i8, 1] {
                let letters: Vec<Letter> = match alphabet {
                    Alphabet::Elementary => vec![(i, s)],
                    Alphabet::Twist => vec![(i, s); 2],
                };
                let word = BraidWord::new(context.clone(), letters.clone())?;
                let sector = represent(theory, &word, Some(total))?;
                let action = U2::from_matrix(sector.matrix())?;
                let winding: i64 = letters.iter().map(|&(_, sg)| sg as i64).sum();
                let id = list.len() as u8;
                list.push(Move {
                    cost: letters.len() as u32 * crossing_cost,
                    letters,
                    action,
                    winding,
                    to_position: 0,
                    // Moves come in (i,-1)/(i,+1) sign pairs.
                    undo_id: id ^ 1,
                });
            }
        }

        Ok(SearchSpace {
            theory_k: theory.k(),
            context,
            mobile_home: 0,
            total,
            alphabet,
            crossing_cost,
            window: (0, 0),
            moves: vec![list],
            closing: vec![true],
        })
    }

    pub fn context(&self) -> &ObjectList {
        &self.context
    }

    pub fn mobile_home(&self) -> usize {
        self.mobile_home
    }

    pub fn total(&self) -> Charge {
        self.total
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn level_k(&self) -> u32 {
        self.theory_k
    }

    pub fn crossing_cost(&self) -> u32 {
        self.crossing_cost
    }

    /// Inclusive position window the mobile may occupy.
    pub fn window(&self) -> (usize, usize) {
        self.window
    }

    /// Whether a word parking the mobile at `position` maps the home sector
    /// basis to itself. True everywhere for uniform contexts; for a mobile
    /// whose charge differs from the statics', only the home position closes.
    pub fn closes_at(&self, position: usize) -> bool {
        self.closing[position]
    }

    /// How many distinct positions the walk distinguishes. Weave spaces
    /// have one per context slot; unconstrained braid spaces collapse to a
    /// single state, so valid positions are `0..positions()`, not the
    /// context length.
    pub fn positions(&self) -> usize {
        self.moves.len()
    }

    pub fn moves_at(&self, position: usize) -> &[Move] {
        &self.moves[position]
    }

    /// Expands a move-id sequence (starting at the home position) into a
    /// braid word on this space's context.
    pub fn word_from_moves(&self, move_ids: &[u8]) -> Result<BraidWord> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut p = self.mobile_home;
        for &id in move_ids {
            let mv = self.moves[p].get(id as usize).ok_or(Error::IndexOutOfRange {
                index: id as usize,
                what: format!("move id at position {p}"),
            })?;
            letters.extend_from_slice(&mv.letters);
            p = mv.to_position;
        }
        BraidWord::new(self.context.clone(), letters)
    }

    /// The sector action of a move-id sequence, by table lookups.
    pub fn action_of(&self, move_ids: &[u8]) -> Result<U2> {
        let mut p = self.mobile_home;
        let mut u = U2::IDENTITY;
        for &id in move_ids {
            let mv = self.moves[p].get(id as usize).ok_or(Error::IndexOutOfRange {
                index: id as usize,
                what: format!("move id at position {p}"),
            })?;
            u = mv.action.mul(u);
            p = mv.to_position;
        }
        Ok(u)
    }

    /// Depth-first enumeration of weave words with total cost ≤ `max_cost`,
    /// pruning exact backtracking (a move followed by its inverse). The
    /// visitor sees every node in lexicographic move order — including the
    /// empty word first — and returns `false` to abort the walk.
    pub fn enumerate<F>(&self, max_cost: u32, visit: &mut F) -> bool
    where
        F: FnMut(&[u8], U2, usize, i64, u32) -> bool,
    {
        let mut stack_word: Vec<u8> = Vec::new();
        if !visit(&stack_word, U2::IDENTITY, self.mobile_home, 0, 0) {
            return false;
        }
        self.enumerate_from(
            &mut stack_word,
            U2::IDENTITY,
            self.mobile_home,
            0,
            0,
            u8::MAX,
            max_cost,
            visit,
        )
    }

    /// Like [`enumerate`](Self::enumerate), but restricted to the subtree
    /// under `prefix` (visited first). Lets callers partition a search by
    /// first moves and walk the partitions independently.
    pub fn enumerate_prefix<F>(&self, prefix: &[u8], max_cost: u32, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[u8], U2, usize, i64, u32) -> bool,
    {
        let mut word = prefix.to_vec();
        let mut u = U2::IDENTITY;
        let mut pos = self.mobile_home;
        let mut wind = 0i64;
        let mut cost = 0u32;
        let mut forbidden = u8::MAX;
        for &id in prefix {
            let mv = self.moves[pos].get(id as usize).ok_or(Error::IndexOutOfRange {
                index: id as usize,
                what: format!("move id at position {pos}"),
            })?;
            if id == forbidden {
                return Err(Error::Internal(format!(
                    "prefix {prefix:?} is freely reducible"
                )));
            }
            u = mv.action.mul(u);
            wind += mv.winding;
            cost += mv.cost;
            forbidden = mv.undo_id;
            pos = mv.to_position;
        }
        if cost > max_cost {
            return Err(Error::Internal(format!(
                "prefix {prefix:?} already exceeds cost {max_cost}"
            )));
        }
        if !visit(&word, u, pos, wind, cost) {
            return Ok(false);
        }
        Ok(self.enumerate_from(&mut word, u, pos, wind, cost, forbidden, max_cost, visit))
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_from<F>(
        &self,
        word: &mut Vec<u8>,
        u: U2,
        pos: usize,
        winding: i64,
        cost: u32,
        forbidden: u8,
        max_cost: u32,
        visit: &mut F,
    ) -> bool
    where
        F: FnMut(&[u8], U2, usize, i64, u32) -> bool,
    {
        for (id, mv) in self.moves[pos].iter().enumerate() {
            if id as u8 == forbidden || cost + mv.cost > max_cost {
                continue;
            }
            let next_u = mv.action.mul(u);
            let next_wind = winding + mv.winding;
            let next_cost = cost + mv.cost;
            word.push(id as u8);
            if !visit(word, next_u, mv.to_position, next_wind, next_cost) {
                word.pop();
                return false;
            }
            if !self.enumerate_from(
                word,
                next_u,
                mv.to_position,
                next_wind,
                next_cost,
                mv.undo_id,
                max_cost,
                visit,
            ) {
                word.pop();
                return false;
            }
            word.pop();
        }
        true
    }

}

fn letters_cost(kind: Kind, crossing_cost: u32) -> u32 {
    match kind {
        Kind::Down(_) | Kind::Up(_) => crossing_cost,
        Kind::LeftTwist(_) | Kind::RightTwist(_) => 2 * crossing_cost,
    }
}
