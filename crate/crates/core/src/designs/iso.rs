//! Isomorphism search between small divisible designs.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::Design;
use crate::projline::PointId;
use crate::{Error, Result};

/// Largest number of points accepted by [`dd_isomorphic`].
pub const ISO_POINT_LIMIT: usize = 64;

struct Side<'a> {
    d: &'a Design,
    degree: Vec<usize>,
    cooc: Vec<Vec<u32>>,
    blocks: BTreeSet<Vec<PointId>>,
    blocks_of: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(d: &'a Design) -> Self {
        let v = d.v();
        let mut cooc = vec![vec![0u32; v]; v];
        let mut blocks_of = vec![Vec::new(); v];
        for (i, b) in d.blocks().iter().enumerate() {
            for &p in b {
                blocks_of[p as usize].push(i);
                for &q in b {
                    cooc[p as usize][q as usize] += 1;
                }
            }
        }
        Side {
            d,
            degree: d.degrees(),
            cooc,
            blocks: d.blocks().iter().cloned().collect(),
            blocks_of,
        }
    }

    fn class_size(&self, p: usize) -> usize {
        self.d.classes()[self.d.class_of(p as PointId) as usize].len()
    }

    fn profile(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let mut classes: Vec<usize> = self.d.classes().iter().map(Vec::len).collect();
        let mut sizes: Vec<usize> = self.d.blocks().iter().map(Vec::len).collect();
        let mut degrees = self.degree.clone();
        classes.sort_unstable();
        sizes.sort_unstable();
        degrees.sort_unstable();
        (classes, sizes, degrees)
    }
}

/// A bijection `f` on points with `f(block)` a block and `f(class)` a class,
/// and the same for `f⁻¹`, if one exists. `result[p]` is the image of `p`.
/// Candidates are tried in ascending order, so comparing a design with
/// itself returns the identity.
pub fn dd_isomorphic(d1: &Design, d2: &Design) -> Result<Option<Vec<PointId>>> {
    for d in [d1, d2] {
        if d.v() > ISO_POINT_LIMIT {
            return Err(Error::CapExceeded {
                what: "design for isomorphism search",
                size: d.v() as u128,
                cap: ISO_POINT_LIMIT as u128,
            });
        }
    }
    if d1.v() != d2.v() || d1.b() != d2.b() || d1.classes().len() != d2.classes().len() {
        return Ok(None);
    }
    let a = Side::new(d1);
    let b = Side::new(d2);
    if a.profile() != b.profile() {
        return Ok(None);
    }
    let v = d1.v();
    let mut map = vec![PointId::MAX; v];
    let mut used = vec![false; v];
    let mut class_map = vec![u32::MAX; d1.classes().len()];
    let mut class_used = vec![false; d2.classes().len()];
    if search(&a, &b, 0, &mut map, &mut used, &mut class_map, &mut class_used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn search(
    a: &Side<'_>,
    b: &Side<'_>,
    x: usize,
    map: &mut [PointId],
    used: &mut [bool],
    class_map: &mut [u32],
    class_used: &mut [bool],
) -> bool {
    let v = map.len();
    if x == v {
        return is_isomorphism(a, b, map);
    }
    let cx = a.d.class_of(x as PointId) as usize;
    for y in 0..v {
        if used[y] || a.degree[x] != b.degree[y] || a.class_size(x) != b.class_size(y) {
            continue;
        }
        let cy = b.d.class_of(y as PointId);
        let fresh_class = class_map[cx] == u32::MAX;
        if fresh_class {
            if class_used[cy as usize] {
                continue;
            }
        } else if class_map[cx] != cy {
            continue;
        }
        if (0..x).any(|x2| a.cooc[x][x2] != b.cooc[y][map[x2] as usize]) || a.cooc[x][x] != b.cooc[y][y] {
            continue;
        }
        map[x] = y as PointId;
        // blocks through x whose points are now all mapped must land on blocks
        let blocks_ok = a.blocks_of[x].iter().all(|&bi| {
            let blk = &a.d.blocks()[bi];
            if blk.iter().any(|&p| p as usize > x) {
                return true;
            }
            let mut image: Vec<PointId> = blk.iter().map(|&p| map[p as usize]).collect();
            image.sort_unstable();
            b.blocks.contains(&image)
        });
        if blocks_ok {
            used[y] = true;
            if fresh_class {
                class_map[cx] = cy;
                class_used[cy as usize] = true;
            }
            if search(a, b, x + 1, map, used, class_map, class_used) {
                return true;
            }
            used[y] = false;
            if fresh_class {
                class_map[cx] = u32::MAX;
                class_used[cy as usize] = false;
            }
        }
        map[x] = PointId::MAX;
    }
    false
}

/// Checks blocks and classes in both directions.
fn is_isomorphism(a: &Side<'_>, b: &Side<'_>, map: &[PointId]) -> bool {
    let mut inverse = vec![PointId::MAX; map.len()];
    for (p, &q) in map.iter().enumerate() {
        inverse[q as usize] = p as PointId;
    }
    let image = |set: &[PointId], f: &[PointId]| -> Vec<PointId> {
        let mut s: Vec<PointId> = set.iter().map(|&p| f[p as usize]).collect();
        s.sort_unstable();
        s
    };
    let forward_blocks = a.d.blocks().iter().all(|blk| b.blocks.contains(&image(blk, map)));
    let backward_blocks = b.d.blocks().iter().all(|blk| a.blocks.contains(&image(blk, &inverse)));
    let classes1: BTreeSet<Vec<PointId>> = a.d.classes().iter().cloned().collect();
    let classes2: BTreeSet<Vec<PointId>> = b.d.classes().iter().cloned().collect();
    let forward_classes = a.d.classes().iter().all(|c| classes2.contains(&image(c, map)));
    let backward_classes = b.d.classes().iter().all(|c| classes1.contains(&image(c, &inverse)));
    forward_blocks && backward_blocks && forward_classes && backward_classes
}
