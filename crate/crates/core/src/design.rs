//! Hyperplane-section designs on small point sets and the check for the
//! 5-(12,6,1) axioms.
//!
//! Point subsets are `u16` bitmasks over indices into [`Design::points`],
//! which limits a design to 16 points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::pg::{enumerate_hyperplanes, Hyperplane, ProjPoint};

pub const BLOCK_SIZE: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// The hyperplane cutting out the block.
    pub carrier: Hyperplane,
    pub members: u16,
}

impl Block {
    pub fn indices(&self) -> Vec<usize> {
        mask_indices(self.members)
    }
}

pub fn mask_indices(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask & (1 << i) != 0).collect()
}

#[derive(Clone, Debug)]
pub struct Design {
    pub points: Vec<ProjPoint>,
    pub blocks: Vec<Block>,
}

impl Design {
    pub fn block_masks(&self) -> Vec<u16> {
        self.blocks.iter().map(|b| b.members).collect()
    }

    pub fn block_points(&self, b: &Block) -> Vec<ProjPoint> {
        b.indices().into_iter().map(|i| self.points[i].clone()).collect()
    }
}

fn section_mask(points: &[ProjPoint], h: &Hyperplane) -> u16 {
    points.iter().enumerate().filter(|(_, x)| h.contains(x)).fold(0u16, |m, (i, _)| m | (1 << i))
}

/// Every hyperplane section of exactly six points, in hyperplane order.
pub fn blocks(points: &[ProjPoint]) -> Design {
    assert!(points.len() <= 16, "designs are limited to 16 points");
    let blocks = match points.first() {
        None => Vec::new(),
        Some(p) => enumerate_hyperplanes(p.dim())
            .into_iter()
            .filter_map(|h| {
                let members = section_mask(points, &h);
                (members.count_ones() as usize == BLOCK_SIZE).then_some(Block { carrier: h, members })
            })
            .collect(),
    };
    Design { points: points.to_vec(), blocks }
}

/// The design on a set of primes, read as points of the dual space; blocks
/// are cut out by the points of the original space.
pub fn dual_design(primes: &[Hyperplane]) -> Design {
    let as_points: Vec<ProjPoint> = primes.iter().map(Hyperplane::to_point).collect();
    blocks(&as_points)
}

/// Histogram of `|h ∩ points|` over all hyperplanes.
pub fn hyperplane_profile(points: &[ProjPoint]) -> BTreeMap<usize, usize> {
    let mut profile = BTreeMap::new();
    if let Some(p) = points.first() {
        for h in enumerate_hyperplanes(p.dim()) {
            *profile.entry(points.iter().filter(|x| h.contains(x)).count()).or_insert(0) += 1;
        }
    }
    profile
}

/// All `k`-subsets of `0..n` as bitmasks, in lexicographic order of their
/// sorted index lists.
pub fn subsets(n: usize, k: usize) -> Vec<u16> {
    fn rec(start: usize, n: usize, k: usize, acc: u16, out: &mut Vec<u16>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverViolation {
    pub subset: Vec<ProjPoint>,
    pub covering_blocks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittReport {
    pub pass: bool,
    pub points: usize,
    pub blocks: usize,
    pub block_sizes_ok: bool,
    pub five_subsets_checked: usize,
    /// First 5-subset not lying in exactly one block.
    pub violation: Option<CoverViolation>,
    /// Number of blocks through each 4-subset, when that number is constant.
    pub four_subset_covering: Option<usize>,
}

fn covering_count(masks: &[u16], subset: u16) -> usize {
    masks.iter().filter(|&&b| b & subset == subset).count()
}

pub fn verify_witt(d: &Design) -> WittReport {
    let n = d.points.len();
    let masks = d.block_masks();
    let block_sizes_ok = masks.iter().all(|m| m.count_ones() as usize == BLOCK_SIZE);
    let fives = if n <= 16 { subsets(n, 5) } else { Vec::new() };
    let violation = fives.iter().find_map(|&s| {
        let c = covering_count(&masks, s);
        (c != 1).then(|| CoverViolation {
            subset: mask_indices(s).into_iter().map(|i| d.points[i].clone()).collect(),
            covering_blocks: c,
        })
    });
    let mut fours = subsets(n.min(16), 4).into_iter().map(|s| covering_count(&masks, s));
    let four_subset_covering = match fours.next() {
        Some(first) if fours.all(|c| c == first) => Some(first),
        _ => None,
    };
    WittReport {
        pass: n == 12 && block_sizes_ok && violation.is_none(),
        points: n,
        blocks: masks.len(),
        block_sizes_ok,
        five_subsets_checked: fives.len(),
        violation,
        four_subset_covering,
    }
}
