//! Order of the automorphism group of a small block design.
//!
//! The order is the product of orbit lengths along a stabilizer chain: for
//! each base point we ask, for every candidate image, whether some
//! automorphism fixing the earlier base points realises it. Each question is
//! a backtracking search that prunes a partial map as soon as some block
//! meets the mapped points in a set that no block can contain.

use crate::design::Design;

struct Search {
    n: usize,
    blocks: Vec<u16>,
    /// `covered[s]` is true iff some block contains `s`.
    covered: Vec<bool>,
    fingerprint: Vec<Vec<usize>>,
}

impl Search {
    fn new(d: &Design) -> Search {
        let n = d.points.len();
        assert!(n <= 16, "automorphism search is limited to 16 points");
        let blocks = d.block_masks();
        let mut covered = vec![false; 1 << n];
        for &b in &blocks {
            // enumerate submasks of b
            let mut s = b;
            loop {
                covered[s as usize] = true;
                if s == 0 {
                    break;
                }
                s = (s - 1) & b;
            }
        }
        let fingerprint = (0..n)
            .map(|x| {
                let through: Vec<u16> = blocks.iter().copied().filter(|b| b & (1 << x) != 0).collect();
                let mut co: Vec<usize> =
                    (0..n).filter(|&y| y != x).map(|y| through.iter().filter(|b| *b & (1 << y) != 0).count()).collect();
                co.sort_unstable();
                co.insert(0, through.len());
                co
            })
            .collect();
        Search { n, blocks, covered, fingerprint }
    }

    fn image(map: &[Option<usize>], mask: u16) -> u16 {
        let mut out = 0u16;
        for (i, m) in map.iter().enumerate() {
            if mask & (1 << i) != 0 {
                out |= 1 << m.expect("mapped");
            }
        }
        out
    }

    fn consistent(&self, map: &[Option<usize>], inverse: &[Option<usize>]) -> bool {
        let domain = map.iter().enumerate().filter(|(_, m)| m.is_some()).fold(0u16, |a, (i, _)| a | (1 << i));
        let range = inverse.iter().enumerate().filter(|(_, m)| m.is_some()).fold(0u16, |a, (i, _)| a | (1 << i));
        self.blocks.iter().all(|&b| {
            let fwd = Self::image(map, b & domain);
            let bwd = Self::image(inverse, b & range);
            self.covered[fwd as usize] && self.covered[bwd as usize]
        })
    }

    /// Completes `map` to an automorphism, if possible.
    fn extend(&self, map: &mut Vec<Option<usize>>, inverse: &mut Vec<Option<usize>>) -> bool {
        let Some(x) = (0..self.n).find(|&i| map[i].is_none()) else {
            return self.blocks.iter().all(|&b| self.blocks.contains(&Self::image(map, b)));
        };
        for y in 0..self.n {
            if inverse[y].is_some() || self.fingerprint[x] != self.fingerprint[y] {
                continue;
            }
            map[x] = Some(y);
            inverse[y] = Some(x);
            if self.consistent(map, inverse) && self.extend(map, inverse) {
                return true;
            }
            map[x] = None;
            inverse[y] = None;
        }
        false
    }
}

/// Number of point permutations mapping blocks onto blocks.
pub fn automorphism_order(d: &Design) -> u64 {
    let search = Search::new(d);
    let n = search.n;
    let mut order = 1u64;
    for level in 0..n {
        let mut orbit = 1u64;
        for y in level + 1..n {
            if search.fingerprint[level] != search.fingerprint[y] {
                continue;
            }
            let mut map = vec![None; n];
            let mut inverse = vec![None; n];
            for b in 0..level {
                map[b] = Some(b);
                inverse[b] = Some(b);
            }
            map[level] = Some(y);
            inverse[y] = Some(level);
            if search.consistent(&map, &inverse) && search.extend(&mut map, &mut inverse) {
                orbit += 1;
            }
        }
        order *= orbit;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::build_cap_psi;
    use crate::design::{blocks, Block};
    use crate::pg::{enumerate_points, Hyperplane};

    fn toy(n: usize, masks: &[u16]) -> Design {
        let points = enumerate_points(5).into_iter().take(n).collect();
        let carrier: Hyperplane = "1:0:0:0:0:0".parse().unwrap();
        Design { points, blocks: masks.iter().map(|&members| Block { carrier: carrier.clone(), members }).collect() }
    }

    #[test]
    fn witt_design_has_m12() {
        let d = blocks(&build_cap_psi().points);
        assert_eq!(automorphism_order(&d), 95040);
    }

    #[test]
    fn toy_designs() {
        // no blocks: full symmetric group
        assert_eq!(automorphism_order(&toy(5, &[])), 120);
        // one block {0,1} on 4 points: S2 x S2
        assert_eq!(automorphism_order(&toy(4, &[0b0011])), 4);
        // triangle 0-1-2 plus isolated 3 as 2-blocks: S3
        assert_eq!(automorphism_order(&toy(4, &[0b011, 0b110, 0b101])), 6);
        // path 0-1-2: swap ends only
        assert_eq!(automorphism_order(&toy(3, &[0b011, 0b110])), 2);
        // Fano plane: 168
        let fano = [0b0000111u16, 0b0011001, 0b0101010, 0b1001100, 0b0110100, 0b1010010, 0b1100001];
        assert_eq!(automorphism_order(&toy(7, &fano)), 168);
    }

    #[test]
    fn brute_force_agrees_on_small_designs() {
        let designs: [&[u16]; 3] = [&[0b00111, 0b01100], &[0b00011, 0b01100, 0b10001], &[0b11100, 0b00111, 0b10101]];
        for masks in designs {
            let d = toy(5, masks);
            let mut count = 0;
            let mut perm: Vec<usize> = (0..5).collect();
            permutations(&mut perm, 0, &mut |p| {
                let img = |m: u16| (0..5).filter(|i| m & (1 << i) != 0).fold(0u16, |a, i| a | (1 << p[i]));
                let mut imgs: Vec<u16> = masks.iter().map(|&m| img(m)).collect();
                let mut orig = masks.to_vec();
                imgs.sort();
                orig.sort();
                if imgs == orig {
                    count += 1;
                }
            });
            assert_eq!(automorphism_order(&d), count, "{masks:?}");
        }
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }
}
