//! Exact application of braid words to fusion-path bases — the verification
//! oracle for every compiled gate.
//!
//! Everything here is dense complex linear algebra on small spaces (the
//! largest verification space in the crate is 14-dimensional), driven by the
//! tensor data of [`crate::anyon_model`]. Matrix products follow diagram
//! time: the first letter of a word acts first.

use crate::anyon_model::{braid_generator, Charge, FusionPath, ObjectList, Theory};
use crate::braid_core::BraidWord;
use crate::error::{Error, Result};
use ndarray::{Array1, Array2};
use num_complex::Complex64;

/// A dense complex unitary together with the ordered fusion-path bases it
/// maps between. For words that permute distinguishable charges the domain
/// and codomain bases differ; for closed words they coincide.
#[derive(Debug, Clone)]
pub struct SectorUnitary {
    domain_objects: ObjectList,
    codomain_objects: ObjectList,
    domain: Vec<FusionPath>,
    codomain: Vec<FusionPath>,
    matrix: Array2<Complex64>,
}

impl SectorUnitary {
    /// Assembles a sector unitary; checks dimensional consistency only
    /// (unitarity is a property checked by callers and tests, not an
    /// invariant enforced on every construction).
    pub fn new(
        domain_objects: ObjectList,
        codomain_objects: ObjectList,
        domain: Vec<FusionPath>,
        codomain: Vec<FusionPath>,
        matrix: Array2<Complex64>,
    ) -> Result<Self> {
        if matrix.nrows() != codomain.len() || matrix.ncols() != domain.len() {
            return Err(Error::DimensionMismatch {
                expected: codomain.len() * domain.len(),
                got: matrix.nrows() * matrix.ncols(),
            });
        }
        if domain.len() != codomain.len() {
            return Err(Error::BasisMismatch(
                "domain and codomain bases must have equal dimension".into(),
            ));
        }
        Ok(SectorUnitary {
            domain_objects,
            codomain_objects,
            domain,
            codomain,
            matrix,
        })
    }

    /// The identity on the basis of `objects` (restricted to `total` when
    /// given).
    pub fn identity(theory: &Theory, objects: &ObjectList, total: Option<Charge>) -> Self {
        let basis = theory.enumerate_paths(objects, total);
        let matrix = Array2::eye(basis.len());
        SectorUnitary {
            domain_objects: objects.clone(),
            codomain_objects: objects.clone(),
            domain: basis.clone(),
            codomain: basis,
            matrix,
        }
    }

    /// Basis the unitary consumes.
    pub fn domain(&self) -> &[FusionPath] {
        &self.domain
    }

    /// Basis the unitary produces.
    pub fn codomain(&self) -> &[FusionPath] {
        &self.codomain
    }

    /// Object list of the domain basis.
    pub fn domain_objects(&self) -> &ObjectList {
        &self.domain_objects
    }

    /// Object list of the codomain basis.
    pub fn codomain_objects(&self) -> &ObjectList {
        &self.codomain_objects
    }

    /// Dimension of the sector.
    pub fn dim(&self) -> usize {
        self.domain.len()
    }

    /// The dense matrix, rows over the codomain basis, columns over the
    /// domain basis.
    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// The adjoint, which is the inverse for unitary values; swaps the
    /// bases.
    pub fn dagger(&self) -> SectorUnitary {
        let n = self.matrix.nrows();
        let m = self.matrix.ncols();
        let mut adj = Array2::zeros((m, n));
        for i in 0..n {
            for j in 0..m {
                adj[[j, i]] = self.matrix[[i, j]].conj();
            }
        }
        SectorUnitary {
            domain_objects: self.codomain_objects.clone(),
            codomain_objects: self.domain_objects.clone(),
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: adj,
        }
    }

    /// `self ∘ earlier`: applies `earlier` first. The bases must match.
    pub fn compose(&self, earlier: &SectorUnitary) -> Result<SectorUnitary> {
        if earlier.codomain != self.domain {
            return Err(Error::BasisMismatch(
                "composition requires the earlier codomain to equal the later domain".into(),
            ));
        }
        Ok(SectorUnitary {
            domain_objects: earlier.domain_objects.clone(),
            codomain_objects: self.codomain_objects.clone(),
            domain: earlier.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.dot(&earlier.matrix),
        })
    }

    /// Max-norm defect of `U†U − I`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut dot = Complex64::new(0.0, 0.0);
                for l in 0..n {
                    dot += self.matrix[[l, i]].conj() * self.matrix[[l, j]];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }

    /// Max entry norm of `self − other` over matched bases.
    pub fn max_entry_distance(&self, other: &SectorUnitary) -> Result<f64> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::BasisMismatch(
                "entrywise comparison requires identical bases".into(),
            ));
        }
        let mut worst = 0.0f64;
        for (x, y) in self.matrix.iter().zip(other.matrix.iter()) {
            worst = worst.max((x - y).norm());
        }
        Ok(worst)
    }
}

/// The unitary represented by a braid word, in the canonical basis of its
/// context (optionally restricted to one total-charge sector). Letters act
/// in word order: letter n is applied last.
pub fn represent(theory: &Theory, word: &BraidWord, total: Option<Charge>) -> Result<SectorUnitary> {
    let mut acc = SectorUnitary::identity(theory, word.context(), total);
    let mut context = word.context().clone();
    for &(index, sign) in word.letters() {
        // σ_i maps its context to the swapped context; σ_i⁻¹ therefore is
        // the adjoint of the generator built on the *swapped* context, so
        // that its domain is the current context either way.
        let step = if sign > 0 {
            braid_generator(theory, &context, index as usize, total)?
        } else {
            let swapped = context.swapped(index as usize - 1)?;
            braid_generator(theory, &swapped, index as usize, total)?.dagger()
        };
        context = step.codomain_objects().clone();
        acc = step.compose(&acc)?;
    }
    Ok(acc)
}

/// Applies a braid word to a state vector over the canonical basis of the
/// word's context. Preserves the norm to working precision.
pub fn apply(
    theory: &Theory,
    word: &BraidWord,
    total: Option<Charge>,
    state: &Array1<Complex64>,
) -> Result<Array1<Complex64>> {
    let u = represent(theory, word, total)?;
    if state.len() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: state.len(),
        });
    }
    Ok(u.matrix().dot(state))
}

/// A charge observable that labels basis states, for block decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Grouping {
    /// The running total of the first `index + 1` objects — the path
    /// intermediate `m[index]`. `PrefixTotal { index: n−1 }` is the total
    /// charge.
    PrefixTotal { index: usize },
    /// The fusion channel of the last two of three objects (the label the
    /// one-F-move recoupled basis diagonalizes). Only defined for
    /// three-object sectors with equal domain and codomain.
    SuffixPair,
}

/// One diagonal block of a sector unitary with respect to a grouping label.
#[derive(Debug, Clone)]
pub struct SectorBlock {
    /// The charge label of the block.
    pub label: Charge,
    /// The block, in the grouping's basis order.
    pub block: Array2<Complex64>,
}

/// Decomposes a sector unitary into diagonal blocks of a charge observable
/// and reports the Frobenius norm of everything off those blocks (the
/// mixing between labels).
pub fn sector_blocks(
    theory: &Theory,
    u: &SectorUnitary,
    grouping: Grouping,
) -> Result<(Vec<SectorBlock>, f64)> {
    match grouping {
        Grouping::PrefixTotal { index } => {
            let n_objects = u.domain_objects().len();
            if index >= n_objects {
                return Err(Error::IndexOutOfRange {
                    index,
                    what: format!("prefix grouping on {n_objects} objects"),
                });
            }
            let label_of = |p: &FusionPath| p.intermediates()[index];
            let col_labels: Vec<Charge> = u.domain().iter().map(label_of).collect();
            let row_labels: Vec<Charge> = u.codomain().iter().map(label_of).collect();
            blocks_from_labels(u.matrix(), &row_labels, &col_labels)
        }
        Grouping::SuffixPair => {
            let (v, labels) = suffix_pair_transform(theory, u)?;
            blocks_from_labels(&v, &labels, &labels)
        }
    }
}

/// Conjugates a three-object sector unitary into the basis that fuses the
/// last two objects first, returning the transformed matrix and the pair
/// label of each transformed basis vector.
fn suffix_pair_transform(
    theory: &Theory,
    u: &SectorUnitary,
) -> Result<(Array2<Complex64>, Vec<Charge>)> {
    if u.domain_objects() != u.codomain_objects() {
        return Err(Error::BasisMismatch(
            "suffix-pair grouping requires equal domain and codomain contexts".into(),
        ));
    }
    let charges = u.domain_objects().charges();
    if charges.len() != 3 {
        return Err(Error::BasisMismatch(format!(
            "suffix-pair grouping is defined for three objects, got {}",
            charges.len()
        )));
    }
    // Right-tree basis vectors |(c0 (c1 c2)_f)_d⟩, ordered by (f, d).
    let mut right_basis: Vec<(Charge, Charge)> = Vec::new();
    for f in theory.fuse(charges[1], charges[2]) {
        for d in theory.fuse(charges[0], f) {
            if u.domain().iter().any(|p| p.total() == d) {
                right_basis.push((f, d));
            }
        }
    }
    if right_basis.len() != u.dim() {
        return Err(Error::BasisMismatch(format!(
            "recoupled basis dimension {} does not match sector dimension {}",
            right_basis.len(),
            u.dim()
        )));
    }
    // W[path, (f,d)] = δ_{total(path), d} · F^{c0 c1 c2}_d[m1, f], so that
    // path basis = W · right basis (columns express right-tree vectors).
    let dim = u.dim();
    let mut w = Array2::<Complex64>::zeros((dim, dim));
    for (col, (f, d)) in right_basis.iter().enumerate() {
        let fb = theory.f_matrix(charges[0], charges[1], charges[2], *d)?;
        for (row, p) in u.domain().iter().enumerate() {
            if p.total() != *d {
                continue;
            }
            w[[row, col]] = Complex64::new(fb.entry(p.intermediates()[1], *f), 0.0);
        }
    }
    // V = W† U W (W is real orthogonal).
    let wt = w.t().mapv(|z| z.conj());
    let v = wt.dot(u.matrix()).dot(&w);
    Ok((v, right_basis.iter().map(|(f, _)| *f).collect()))
}

fn blocks_from_labels(
    matrix: &Array2<Complex64>,
    row_labels: &[Charge],
    col_labels: &[Charge],
) -> Result<(Vec<SectorBlock>, f64)> {
    let mut distinct: Vec<Charge> = row_labels.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut off_sq = 0.0f64;
    for (i, rl) in row_labels.iter().enumerate() {
        for (j, cl) in col_labels.iter().enumerate() {
            if rl != cl {
                off_sq += matrix[[i, j]].norm_sqr();
            }
        }
    }
    let mut blocks = Vec::new();
    for label in distinct {
        let rows: Vec<usize> = (0..row_labels.len())
            .filter(|&i| row_labels[i] == label)
            .collect();
        let cols: Vec<usize> = (0..col_labels.len())
            .filter(|&j| col_labels[j] == label)
            .collect();
        let mut block = Array2::zeros((rows.len(), cols.len()));
        for (bi, &i) in rows.iter().enumerate() {
            for (bj, &j) in cols.iter().enumerate() {
                block[[bi, bj]] = matrix[[i, j]];
            }
        }
        blocks.push(SectorBlock { label, block });
    }
    Ok((blocks, off_sq.sqrt()))
}
