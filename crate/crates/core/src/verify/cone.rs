//! Double description on primitive integer vectors.
//!
//! A cone is `cone(rays) + span(lineality)`; every ray carries the set of
//! inequalities it is tight on, which drives the combinatorial adjacency
//! test. All arithmetic is checked `i128`.

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{Error, Result};

pub(crate) type IVec = Vec<i128>;

pub(crate) fn idot(a: &[i128], b: &[i128]) -> Result<i128> {
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        if *x == 0 || *y == 0 {
            continue;
        }
        acc = x
            .checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// `s * x - t * y`, divided by the gcd of its entries.
fn combine(s: i128, x: &[i128], t: i128, y: &[i128]) -> Result<IVec> {
    let mut out = Vec::with_capacity(x.len());
    for (a, b) in x.iter().zip(y) {
        let u = s.checked_mul(*a).ok_or(Error::Overflow)?;
        let v = t.checked_mul(*b).ok_or(Error::Overflow)?;
        out.push(u.checked_sub(v).ok_or(Error::Overflow)?);
    }
    make_primitive(&mut out);
    Ok(out)
}

pub(crate) fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Cone {
    dim: usize,
    lineality: Vec<IVec>,
    rays: Vec<IVec>,
    tight: Vec<FixedBitSet>,
    inequalities: usize,
    capacity: usize,
}

/// Which sides of a hyperplane a cone meets with nonempty interior.
pub(crate) enum Split {
    Plus(Cone),
    Minus(Cone),
    Both(Cone, Cone),
}

impl Cone {
    /// The whole space; `capacity` bounds the number of inequalities.
    pub(crate) fn whole(dim: usize, capacity: usize) -> Self {
        let lineality = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        Cone {
            dim,
            lineality,
            rays: Vec::new(),
            tight: Vec::new(),
            inequalities: 0,
            capacity,
        }
    }

    #[cfg(test)]
    pub(crate) fn lineality(&self) -> &[IVec] {
        &self.lineality
    }

    #[cfg(test)]
    pub(crate) fn rays(&self) -> &[IVec] {
        &self.rays
    }

    /// Generators of the cone as a pointed-plus-lines object: the rays and
    /// both orientations of every lineality vector.
    pub(crate) fn generators(&self) -> Vec<IVec> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    fn fresh_bits(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.capacity)
    }

    /// Intersects with `{a >= 0}` and/or `{a <= 0}`, keeping the sides that
    /// remain full-dimensional.
    pub(crate) fn split(mut self, a: &[i128]) -> Result<Split> {
        let k = self.inequalities;
        if k >= self.capacity {
            self.capacity = 2 * self.capacity + 1;
            for t in self.tight.iter_mut() {
                t.grow(self.capacity);
            }
        }
        self.inequalities += 1;

        let mut pivot = None;
        for (i, l) in self.lineality.iter().enumerate() {
            let v = idot(a, l)?;
            if v != 0 {
                pivot = Some((i, v));
                break;
            }
        }
        if let Some((i, v)) = pivot {
            let mut l0 = self.lineality.swap_remove(i);
            let mut s = v;
            if s < 0 {
                for x in l0.iter_mut() {
                    *x = -*x;
                }
                s = -s;
            }
            let mut lineality = Vec::with_capacity(self.lineality.len());
            for l in &self.lineality {
                let t = idot(a, l)?;
                lineality.push(if t == 0 { l.clone() } else { combine(s, l, t, &l0)? });
            }
            let mut rays = Vec::with_capacity(self.rays.len() + 1);
            let mut tight = Vec::with_capacity(self.rays.len() + 1);
            for (r, bits) in self.rays.iter().zip(&self.tight) {
                let t = idot(a, r)?;
                rays.push(if t == 0 { r.clone() } else { combine(s, r, t, &l0)? });
                let mut b = bits.clone();
                b.insert(k);
                tight.push(b);
            }
            // l0 is tight on every earlier inequality (they vanish on the
            // lineality space) and strictly inside the new one.
            let mut l0_bits = self.fresh_bits();
            l0_bits.insert_range(..k);
            let neg: IVec = l0.iter().map(|x| -x).collect();
            let base = Cone {
                dim: self.dim,
                lineality,
                rays,
                tight,
                inequalities: self.inequalities,
                capacity: self.capacity,
            };
            let mut plus = base.clone();
            plus.rays.push(l0);
            plus.tight.push(l0_bits.clone());
            let mut minus = base;
            minus.rays.push(neg);
            minus.tight.push(l0_bits);
            return Ok(Split::Both(plus, minus));
        }

        let mut vals = Vec::with_capacity(self.rays.len());
        for r in &self.rays {
            vals.push(idot(a, r)?);
        }
        let has_pos = vals.iter().any(|&v| v > 0);
        let has_neg = vals.iter().any(|&v| v < 0);
        for (bits, &v) in self.tight.iter_mut().zip(&vals) {
            if v == 0 {
                bits.insert(k);
            }
        }
        match (has_pos, has_neg) {
            (true, false) => return Ok(Split::Plus(self)),
            (false, true) => return Ok(Split::Minus(self)),
            (false, false) => {
                // A nonzero form vanishing on a full-dimensional cone.
                return Err(Error::Malformed("hyperplane vanishes on a chamber".into()));
            }
            (true, true) => {}
        }

        let pos: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] < 0).collect();
        let zero: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == 0).collect();
        // Two extreme rays of a pointed cone of dimension m are adjacent iff
        // they share at least m - 2 tight inequalities and no third ray is
        // tight on all of those.
        let needed = (self.dim - self.lineality.len()).saturating_sub(2);
        let mut new_rays = Vec::new();
        let mut new_tight = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let mut common = self.tight[p].clone();
                common.intersect_with(&self.tight[n]);
                if common.count_ones(..) < needed {
                    continue;
                }
                let blocked = (0..self.rays.len())
                    .any(|r| r != p && r != n && common.is_subset(&self.tight[r]));
                if blocked {
                    continue;
                }
                new_rays.push(combine(vals[p], &self.rays[n], vals[n], &self.rays[p])?);
                let mut b = common;
                b.insert(k);
                new_tight.push(b);
            }
        }
        let side = |keep: &[usize]| {
            let mut rays = Vec::with_capacity(keep.len() + zero.len() + new_rays.len());
            let mut tight = Vec::with_capacity(rays.capacity());
            for &i in keep.iter().chain(&zero) {
                rays.push(self.rays[i].clone());
                tight.push(self.tight[i].clone());
            }
            rays.extend(new_rays.iter().cloned());
            tight.extend(new_tight.iter().cloned());
            Cone {
                dim: self.dim,
                lineality: self.lineality.clone(),
                rays,
                tight,
                inequalities: self.inequalities,
                capacity: self.capacity,
            }
        };
        Ok(Split::Both(side(&pos), side(&neg)))
    }

    /// Restricts to `{a >= 0}`; fails if that leaves no interior.
    pub(crate) fn restrict(self, a: &[i128]) -> Result<Cone> {
        match self.split(a)? {
            Split::Plus(c) | Split::Both(c, _) => Ok(c),
            Split::Minus(_) => Err(Error::Malformed(
                "symmetry region has empty interior".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_chambers(dim: usize, hs: &[IVec]) -> usize {
        fn go(c: Cone, hs: &[IVec]) -> usize {
            match hs.split_first() {
                None => 1,
                Some((h, rest)) => match c.split(h).unwrap() {
                    Split::Plus(c) | Split::Minus(c) => go(c, rest),
                    Split::Both(a, b) => go(a, rest) + go(b, rest),
                },
            }
        }
        go(Cone::whole(dim, hs.len()), hs)
    }

    #[test]
    fn coordinate_hyperplanes_give_orthants() {
        let hs = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(count_chambers(3, &hs), 8);
    }

    #[test]
    fn braid_arrangement_in_three_coordinates() {
        // 3! chambers, each with the full line (1,1,1) as lineality.
        let hs = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert_eq!(count_chambers(3, &hs), 6);
    }

    #[test]
    fn braid_arrangement_in_four_coordinates() {
        let mut hs = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let mut h = vec![0; 4];
                h[i] = 1;
                h[j] = -1;
                hs.push(h);
            }
        }
        assert_eq!(count_chambers(4, &hs), 24);
    }

    #[test]
    fn generic_lines_in_the_plane() {
        // n distinct lines through the origin cut the plane into 2n sectors.
        let hs = vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -2]];
        assert_eq!(count_chambers(2, &hs), 8);
    }

    #[test]
    fn rays_of_an_orthant() {
        let mut c = Cone::whole(2, 2);
        for h in [vec![1, 0], vec![0, 1]] {
            c = c.restrict(&h).unwrap();
        }
        let mut rays = c.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![vec![0, 1], vec![1, 0]]);
        assert!(c.lineality().is_empty());
    }
}
