//! Points, bonds, and hyperoctahedral symmetries of Z^d.
//!
//! Coordinates are small signed integers: every construction in this crate
//! stays inside the L1 ball of radius 31, so an `i8` per axis suffices and
//! points stay `Copy`.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported dimension for geometry.
pub const MAX_DIM: usize = 15;

/// A lattice point of Z^d, stored inline.
///
/// Unused trailing coordinates are kept at zero so that derived equality,
/// ordering (lexicographic), and hashing are well defined.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    d: u8,
    c: [i8; MAX_DIM],
}

impl Point {
    /// The origin of Z^d.
    pub fn origin(d: usize) -> Point {
        debug_assert!((1..=MAX_DIM).contains(&d));
        Point {
            d: d as u8,
            c: [0; MAX_DIM],
        }
    }

    /// Builds a point from explicit coordinates.
    pub fn new(coords: &[i8]) -> Point {
        debug_assert!((1..=MAX_DIM).contains(&coords.len()));
        let mut c = [0i8; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Point {
            d: coords.len() as u8,
            c,
        }
    }

    /// The unit vector +e_axis (axis is 0-based).
    pub fn unit(d: usize, axis: usize) -> Point {
        let mut p = Point::origin(d);
        p.c[axis] = 1;
        p
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    pub fn coords(&self) -> &[i8] {
        &self.c[..self.d as usize]
    }

    pub fn is_origin(&self) -> bool {
        self.coords().iter().all(|&x| x == 0)
    }

    pub fn l1_norm(&self) -> u32 {
        self.coords().iter().map(|&x| x.unsigned_abs() as u32).sum()
    }

    pub fn add(&self, other: &Point) -> Point {
        debug_assert_eq!(self.d, other.d);
        let mut c = [0i8; MAX_DIM];
        for (ci, (a, b)) in c.iter_mut().zip(self.c.iter().zip(&other.c)) {
            *ci = a + b;
        }
        Point { d: self.d, c }
    }

    pub fn sub(&self, other: &Point) -> Point {
        debug_assert_eq!(self.d, other.d);
        let mut c = [0i8; MAX_DIM];
        for (ci, (a, b)) in c.iter_mut().zip(self.c.iter().zip(&other.c)) {
            *ci = a - b;
        }
        Point { d: self.d, c }
    }

    pub fn neg(&self) -> Point {
        let mut c = [0i8; MAX_DIM];
        for (ci, a) in c.iter_mut().zip(&self.c) {
            *ci = -a;
        }
        Point { d: self.d, c }
    }

    /// Checks that the point is a nearest neighbour of the origin.
    pub fn require_unit(&self) -> Result<()> {
        if self.l1_norm() == 1 {
            Ok(())
        } else {
            Err(Error::NotAUnitVector(self.to_string()))
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// The 2d nearest neighbours of `p`, ordered +e_1, …, +e_d, −e_1, …, −e_d.
pub fn neighbors(p: &Point) -> Vec<Point> {
    let d = p.dim();
    let mut out = Vec::with_capacity(2 * d);
    for axis in 0..d {
        let mut q = *p;
        q.c[axis] += 1;
        out.push(q);
    }
    for axis in 0..d {
        let mut q = *p;
        q.c[axis] -= 1;
        out.push(q);
    }
    out
}

/// The 2d unit vectors e_1, …, e_d, −e_1, …, −e_d.
pub fn unit_vectors(d: usize) -> Vec<Point> {
    neighbors(&Point::origin(d))
}

/// Validates a runtime dimension.
pub fn check_dim(d: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(d))
    }
}

/// An undirected nearest-neighbour bond, stored with the lexicographically
/// smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bond {
    a: Point,
    b: Point,
}

impl Bond {
    /// Canonicalizes the endpoint order. The endpoints must be nearest
    /// neighbours.
    pub fn new(p: Point, q: Point) -> Bond {
        debug_assert_eq!(p.sub(&q).l1_norm(), 1, "bond endpoints must be adjacent");
        if p <= q {
            Bond { a: p, b: q }
        } else {
            Bond { a: q, b: p }
        }
    }

    pub fn small(&self) -> Point {
        self.a
    }

    pub fn large(&self) -> Point {
        self.b
    }

    pub fn endpoints(&self) -> (Point, Point) {
        (self.a, self.b)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.a == *p || self.b == *p
    }

    /// The endpoint that is not `p`.
    pub fn other(&self, p: &Point) -> Point {
        debug_assert!(self.contains(p));
        if self.a == *p {
            self.b
        } else {
            self.a
        }
    }

    /// 0-based coordinate axis along which the bond points.
    pub fn axis(&self) -> usize {
        let diff = self.b.sub(&self.a);
        diff.coords()
            .iter()
            .position(|&x| x != 0)
            .expect("bond endpoints differ")
    }
}

impl fmt::Debug for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// A symmetry of Z^d fixing the origin: a coordinate permutation composed
/// with per-axis sign flips. Applying gives q_i = sign_i * p_{perm_i}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symmetry {
    d: u8,
    perm: [u8; MAX_DIM],
    sign: [i8; MAX_DIM],
}

impl Symmetry {
    pub fn identity(d: usize) -> Symmetry {
        let mut perm = [0u8; MAX_DIM];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i as u8;
        }
        Symmetry {
            d: d as u8,
            perm,
            sign: [1; MAX_DIM],
        }
    }

    pub fn new(perm: &[usize], sign: &[i8]) -> Symmetry {
        debug_assert_eq!(perm.len(), sign.len());
        let d = perm.len();
        let mut s = Symmetry::identity(d);
        for i in 0..d {
            s.perm[i] = perm[i] as u8;
            s.sign[i] = sign[i];
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.d as usize
    }

    pub fn apply(&self, p: &Point) -> Point {
        debug_assert_eq!(self.d, p.d);
        let mut c = [0i8; MAX_DIM];
        for (i, ci) in c.iter_mut().enumerate().take(self.d as usize) {
            *ci = self.sign[i] * p.c[self.perm[i] as usize];
        }
        Point { d: self.d, c }
    }

    pub fn apply_bond(&self, b: &Bond) -> Bond {
        Bond::new(self.apply(&b.a), self.apply(&b.b))
    }

    /// All 2^d·d! symmetries. Intended for small d; guarded to d ≤ 6.
    pub fn all(d: usize) -> Vec<Symmetry> {
        assert!(
            d <= 6,
            "full symmetry group enumeration is limited to d <= 6"
        );
        let mut perms = Vec::new();
        let mut idx: Vec<usize> = (0..d).collect();
        permutations(&mut idx, 0, &mut perms);
        let mut out = Vec::with_capacity(perms.len() << d);
        for perm in &perms {
            for mask in 0..(1u32 << d) {
                let sign: Vec<i8> = (0..d)
                    .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(Symmetry::new(perm, &sign));
            }
        }
        out
    }
}

fn permutations(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permutations(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// The orbit of `x` under the full symmetry group, sorted and deduplicated.
///
/// Computed as a closure under the group generators (adjacent-axis swaps and
/// a single sign flip), so the cost is proportional to the orbit, not to the
/// group order, so it stays usable at any supported dimension.
pub fn symmetry_orbit(x: &Point) -> Vec<Point> {
    let d = x.dim();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![*x];
    seen.insert(*x);
    while let Some(p) = stack.pop() {
        let mut images = Vec::with_capacity(d);
        for axis in 0..d.saturating_sub(1) {
            let mut q = p;
            q.c.swap(axis, axis + 1);
            images.push(q);
        }
        let mut q = p;
        q.c[0] = -q.c[0];
        images.push(q);
        for q in images {
            if seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbor_order_is_positive_axes_then_negative() {
        let p = Point::origin(2);
        let ns = neighbors(&p);
        assert_eq!(
            ns,
            vec![
                Point::new(&[1, 0]),
                Point::new(&[0, 1]),
                Point::new(&[-1, 0]),
                Point::new(&[0, -1]),
            ]
        );
    }

    #[test]
    fn neighbors_are_distinct_and_symmetry_permutes_them() {
        for d in 1..=4 {
            let ns = neighbors(&Point::origin(d));
            let set: std::collections::BTreeSet<_> = ns.iter().cloned().collect();
            assert_eq!(set.len(), 2 * d);
            for sym in Symmetry::all(d.min(3)) {
                if sym.dim() != d {
                    continue;
                }
                let image: std::collections::BTreeSet<_> =
                    ns.iter().map(|p| sym.apply(p)).collect();
                assert_eq!(set, image);
            }
        }
    }

    #[test]
    fn symmetry_preserves_l1_norm() {
        let x = Point::new(&[2, -1, 3]);
        for sym in Symmetry::all(3) {
            assert_eq!(sym.apply(&x).l1_norm(), x.l1_norm());
        }
    }

    #[test]
    fn orbit_of_unit_vector_is_all_unit_vectors() {
        let orbit = symmetry_orbit(&Point::new(&[1, 0]));
        let mut expected = unit_vectors(2);
        expected.sort();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn orbit_of_diagonal_point_in_two_dimensions() {
        let orbit = symmetry_orbit(&Point::new(&[1, 1]));
        assert_eq!(
            orbit,
            vec![
                Point::new(&[-1, -1]),
                Point::new(&[-1, 1]),
                Point::new(&[1, -1]),
                Point::new(&[1, 1]),
            ]
        );
    }

    #[test]
    fn orbit_matches_brute_force_group_action() {
        let x = Point::new(&[2, 1, 0]);
        let mut brute: Vec<Point> = Symmetry::all(3).iter().map(|s| s.apply(&x)).collect();
        brute.sort();
        brute.dedup();
        assert_eq!(symmetry_orbit(&x), brute);
    }

    #[test]
    fn bond_canonical_order_and_axis() {
        let p = Point::new(&[1, 0]);
        let q = Point::new(&[0, 0]);
        let b = Bond::new(p, q);
        assert_eq!(b.small(), q);
        assert_eq!(b.large(), p);
        assert_eq!(b.axis(), 0);
        assert_eq!(b.other(&q), p);
    }

    #[test]
    fn invalid_dimension_is_rejected() {
        assert!(check_dim(0).is_err());
        assert!(check_dim(16).is_err());
        assert!(check_dim(15).is_ok());
    }
}
