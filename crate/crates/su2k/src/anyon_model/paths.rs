//! Fusion-path bases: enumeration and the independent transfer-matrix
//! (Bratteli adjacency power) counting oracle.

use super::{Charge, ObjectList, Theory};

/// A standard-basis label: the sequence of intermediate charges obtained by
/// fusing an ordered object list left to right.
///
/// `intermediates[0]` equals the first object's charge; every consecutive
/// `(intermediates[i], charges[i+1], intermediates[i+1])` is an admissible
/// fusion; the last intermediate is the total charge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FusionPath {
    intermediates: Vec<Charge>,
}

impl FusionPath {
    pub(crate) fn new(intermediates: Vec<Charge>) -> Self {
        debug_assert!(!intermediates.is_empty());
        FusionPath { intermediates }
    }

    /// The intermediate charges, one per prefix of the object list.
    pub fn intermediates(&self) -> &[Charge] {
        &self.intermediates
    }

    /// The total charge (final intermediate).
    pub fn total(&self) -> Charge {
        *self.intermediates.last().unwrap()
    }

    /// Number of objects this path labels.
    pub fn len(&self) -> usize {
        self.intermediates.len()
    }

    /// Paths are never empty; present for idiomatic completeness.
    pub fn is_empty(&self) -> bool {
        self.intermediates.is_empty()
    }
}

impl std::fmt::Display for FusionPath {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "(")?;
        for (i, c) in self.intermediates.iter().enumerate() {
            if i > 0 {
                write!(out, ",")?;
            }
            write!(out, "{c}")?;
        }
        write!(out, ")")
    }
}

/// Depth-first enumeration in ascending channel order at each step, which
/// yields exactly the lexicographic order on intermediate vectors.
pub(crate) fn enumerate(
    theory: &Theory,
    objects: &ObjectList,
    total: Option<Charge>,
) -> Vec<FusionPath> {
    let charges = objects.charges();
    let mut out = Vec::new();
    let mut stack: Vec<Charge> = Vec::with_capacity(charges.len());
    stack.push(charges[0]);
    descend(theory, charges, total, &mut stack, &mut out);
    out
}

fn descend(
    theory: &Theory,
    charges: &[Charge],
    total: Option<Charge>,
    stack: &mut Vec<Charge>,
    out: &mut Vec<FusionPath>,
) {
    let depth = stack.len();
    if depth == charges.len() {
        if total.map_or(true, |t| stack[depth - 1] == t) {
            out.push(FusionPath::new(stack.clone()));
        }
        return;
    }
    let prev = stack[depth - 1];
    for next in theory.fuse(prev, charges[depth]) {
        stack.push(next);
        descend(theory, charges, total, stack, out);
        stack.pop();
    }
}

/// Independent path-counting oracle: the number of fusion paths equals an
/// entry of a product of Bratteli adjacency matrices, computed here with
/// exact u128 integer arithmetic and no path enumeration.
///
/// Counts paths of `objects` ending at total charge `total` (or all totals
/// when `None`).
pub fn transfer_count(theory: &Theory, objects: &ObjectList, total: Option<Charge>) -> u128 {
    let k = theory.k() as usize;
    let charges = objects.charges();
    // counts[t] = number of paths whose running total is twice-charge t.
    let mut counts = vec![0u128; k + 1];
    counts[charges[0].twice() as usize] = 1;
    for object in &charges[1..] {
        let mut next = vec![0u128; k + 1];
        for t in 0..=k {
            if counts[t] == 0 {
                continue;
            }
            for c in theory.fuse(Charge { twice: t as u32 }, *object) {
                next[c.twice() as usize] += counts[t];
            }
        }
        counts = next;
    }
    match total {
        Some(t) => counts[t.twice() as usize],
        None => counts.iter().sum(),
    }
}
