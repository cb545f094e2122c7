//! The extended ternary Golay code spanned by the coordinate rows of the cap.

use std::collections::{BTreeMap, BTreeSet};

use crate::cap::{CapOrigin, CapSet};
use crate::error::{Error, Result};
use crate::gf3::{GfMatrix, GfVector};
use crate::pg::{enumerate_hyperplanes, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryCode {
    /// 6x12; column `j` is the canonical vector of cap point `j`.
    pub generator: GfMatrix,
    pub column_order: Vec<ProjPoint>,
}

/// Generator matrix whose columns are the cap points in parametrization order.
pub fn generator_matrix(cap: &CapSet) -> Result<TernaryCode> {
    if cap.origin != CapOrigin::Psi {
        return Err(Error::CapOrigin);
    }
    let columns: Vec<GfVector> = cap.points.iter().map(|p| p.coords().clone()).collect();
    let generator = GfMatrix::from_rows(&columns)?.transpose();
    Ok(TernaryCode { generator, column_order: cap.points.clone() })
}

impl TernaryCode {
    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rank()
    }

    /// `m·G` for a message of length 6.
    pub fn encode(&self, message: &GfVector) -> Result<GfVector> {
        self.generator.left_mul(message)
    }

    /// Rows as digit strings separated by single spaces.
    pub fn emit_matrix(&self) -> String {
        self.generator
            .row_vectors()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }
}

/// Every codeword `m·G`, with messages in lexicographic order.
pub fn enumerate_codewords(c: &TernaryCode) -> Vec<GfVector> {
    GfVector::all(c.generator.rows()).map(|m| c.encode(&m).expect("message length")).collect()
}

pub fn weight_distribution(c: &TernaryCode) -> BTreeMap<usize, usize> {
    let mut dist = BTreeMap::new();
    for w in enumerate_codewords(c) {
        *dist.entry(w.weight()).or_insert(0) += 1;
    }
    dist
}

pub fn minimum_distance(c: &TernaryCode) -> Option<usize> {
    weight_distribution(c).keys().copied().find(|&w| w > 0)
}

/// Full rank and every pair of generator rows (including a row with itself)
/// orthogonal.
pub fn is_self_dual(c: &TernaryCode) -> bool {
    let rows = c.generator.row_vectors();
    c.generator.rank() * 2 == c.length() && rows.iter().all(|a| rows.iter().all(|b| a.dot(b).is_zero()))
}

/// Supports of the weight-6 codewords as column bitmasks.
pub fn weight6_supports(c: &TernaryCode) -> BTreeSet<u16> {
    enumerate_codewords(c)
        .into_iter()
        .filter(|w| w.weight() == 6)
        .map(|w| w.iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(0u16, |m, (i, _)| m | (1 << i)))
        .collect()
}

/// Whether the evaluation vector of every prime of PG(5,3) on the columns is
/// a codeword orthogonal to all generator rows.
pub fn hyperplane_words_in_dual(c: &TernaryCode) -> bool {
    let words: BTreeSet<GfVector> = enumerate_codewords(c).into_iter().collect();
    let rows = c.generator.row_vectors();
    enumerate_hyperplanes(5).iter().all(|h| {
        let w = c.encode(h.coords()).expect("length 6");
        words.contains(&w) && rows.iter().all(|r| r.dot(&w).is_zero())
    })
}
