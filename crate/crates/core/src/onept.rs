//! Inclusion-exclusion expansion of the one-point function over tuples of
//! planted clusters.
//!
//! Every cluster whose origin lies on no cycle decomposes uniquely into
//! planted clusters hanging off the origin, one per occupied direction.
//! Summing over ordered tuples (s_1,S_1),…,(s_m,S_m) of directions with
//! planted clusters, with weight 1/m! and the pairwise factor (1+V_ij)
//! (V_ij = -1 when S_i and S_j share a vertex other than the origin, else
//! 0), therefore rebuilds the one-point function minus the origin-on-cycle
//! part. Truncating the expansion of the product over pairs after four V
//! factors splits that sum into the alternating gamma series verified here.

use crate::cluster::{Constraint, Model};
use crate::enumerate::{enumerate, EnumOptions};
use crate::error::Result;
use crate::lattice::{check_dim, unit_vectors, Point};
use crate::series::{check_order, Coeff, Series};
use num_bigint::BigInt;
use num_traits::One;

/// A planted cluster reduced to what the interaction needs: its bond count
/// and its sorted vertex set without the origin.
struct Piece {
    n_bonds: usize,
    verts: Vec<Point>,
}

/// Per-tuple-length, per-total-size counters (index [m][n]).
type Grid = Vec<Vec<u64>>;

/// All series produced by the expansion at one (model, d, N).
pub struct OnePointExpansion {
    pub model: Model,
    pub d: usize,
    pub order: usize,
    /// Planted-cluster counts for a single direction.
    pub planted: Series,
    /// Tuple sum with weight 1 per tuple; equals exp(2d·planted).
    pub gamma0: Series,
    /// One V factor: tuple sum of the number of intersecting pairs.
    pub gamma1: Series,
    /// Two V factors: ordered pairs of intersecting index pairs.
    pub gamma2: Series,
    /// Three V factors.
    pub gamma3: Series,
    /// Four V factors with the tail product: chains whose last element is
    /// the lexicographically largest intersecting pair.
    pub gamma4_tail: Series,
    /// gamma2 split by the cardinality (3 or 4) of the label set.
    pub gamma2_by_card: [Series; 2],
    /// gamma3 split by the cardinality (3, 4, 5, 6) of the label set.
    pub gamma3_by_card: [Series; 4],
    /// Tuple sum of the full pairwise product, split by tuple length m
    /// (weight 1/m! included): summing gives the cycle-free one-point
    /// function.
    pub product_by_count: Vec<Series>,
    /// Ordered-pair sum: both pieces intersecting, no 1/m! weight.
    pub z1: Series,
    /// Ordered triples with piece 1 meeting pieces 2 and 3.
    pub z2: Series,
    /// Ordered triples with all three pieces pairwise intersecting.
    pub z3: Series,
    /// Ordered quadruples with piece 1 meeting pieces 2, 3 and 4.
    pub z41: Series,
    /// Ordered quadruples with intersections 1-2, 1-3 and 2-4.
    pub z42: Series,
}

struct Acc {
    tuples: Grid,
    full: Grid,
    j1: Grid,
    j2: Grid,
    j3: Grid,
    j4t: Grid,
    c23: Grid,
    c24: Grid,
    c33: Grid,
    c34: Grid,
    c35: Grid,
    c36: Grid,
    z1: Vec<u64>,
    z2: Vec<u64>,
    z3: Vec<u64>,
    z41: Vec<u64>,
    z42: Vec<u64>,
}

impl Acc {
    fn new(order: usize) -> Acc {
        let grid = || vec![vec![0u64; order + 1]; order + 1];
        let row = || vec![0u64; order + 1];
        Acc {
            tuples: grid(),
            full: grid(),
            j1: grid(),
            j2: grid(),
            j3: grid(),
            j4t: grid(),
            c23: grid(),
            c24: grid(),
            c33: grid(),
            c34: grid(),
            c35: grid(),
            c36: grid(),
            z1: row(),
            z2: row(),
            z3: row(),
            z41: row(),
            z42: row(),
        }
    }
}

struct Walk<'a> {
    pools: &'a [Vec<Piece>],
    order: usize,
    verts: Vec<&'a [Point]>,
    /// vmat[i][j] (1-indexed, i < j): pieces i and j intersect.
    vmat: Vec<Vec<bool>>,
    /// The intersecting index pairs of the current tuple.
    pairs: Vec<(u8, u8)>,
    acc: Acc,
}

impl<'a> Walk<'a> {
    fn run(&mut self, used: usize) {
        self.record(used);
        if used == self.order {
            return;
        }
        let budget = self.order - used;
        let pools = self.pools;
        for pool in pools {
            for piece in pool {
                if piece.n_bonds > budget {
                    break;
                }
                let m = self.verts.len();
                let j = m + 1;
                let mut added = 0;
                for i in 1..=m {
                    let hit = sorted_intersect(self.verts[i - 1], &piece.verts);
                    self.vmat[i][j] = hit;
                    if hit {
                        self.pairs.push((i as u8, j as u8));
                        added += 1;
                    }
                }
                self.verts.push(&piece.verts);
                self.run(used + piece.n_bonds);
                self.verts.pop();
                for _ in 0..added {
                    self.pairs.pop();
                }
            }
        }
    }

    fn record(&mut self, used: usize) {
        let m = self.verts.len();
        let n = used;
        let acc = &mut self.acc;
        let p = self.pairs.len() as u64;
        acc.tuples[m][n] += 1;
        if p == 0 {
            acc.full[m][n] += 1;
        }
        acc.j1[m][n] += p;
        acc.j2[m][n] += binom(p, 2);
        acc.j3[m][n] += binom(p, 3);
        if p >= 4 {
            // In a chain of four intersecting pairs in increasing
            // lexicographic order, the trailing product over still larger
            // pairs vanishes unless the fourth element is the largest
            // intersecting pair; the first three are then free.
            acc.j4t[m][n] += binom(p - 1, 3);
        }
        let pairs = &self.pairs;
        for a in 0..pairs.len() {
            for b in a + 1..pairs.len() {
                if label_card(&[pairs[a], pairs[b]]) == 3 {
                    acc.c23[m][n] += 1;
                } else {
                    acc.c24[m][n] += 1;
                }
                for c in b + 1..pairs.len() {
                    match label_card(&[pairs[a], pairs[b], pairs[c]]) {
                        3 => acc.c33[m][n] += 1,
                        4 => acc.c34[m][n] += 1,
                        5 => acc.c35[m][n] += 1,
                        _ => acc.c36[m][n] += 1,
                    }
                }
            }
        }
        let v = &self.vmat;
        if m == 2 && v[1][2] {
            acc.z1[n] += 1;
        } else if m == 3 {
            if v[1][2] && v[1][3] {
                acc.z2[n] += 1;
                if v[2][3] {
                    acc.z3[n] += 1;
                }
            }
        } else if m == 4 {
            if v[1][2] && v[1][3] && v[1][4] {
                acc.z41[n] += 1;
            }
            if v[1][2] && v[1][3] && v[2][4] {
                acc.z42[n] += 1;
            }
        }
    }
}

/// Builds the expansion by walking every ordered tuple of planted clusters
/// with total size at most `order`.
impl OnePointExpansion {
    pub fn build(
        model: Model,
        d: usize,
        order: usize,
        options: &EnumOptions,
    ) -> Result<OnePointExpansion> {
        check_dim(d)?;
        check_order(order)?;
        let mut pools: Vec<Vec<Piece>> = Vec::with_capacity(2 * d);
        for s in unit_vectors(d) {
            let mut pool = Vec::new();
            enumerate(
                model,
                d,
                order,
                &[Constraint::PlantedViaBond(s)],
                options,
                |c| {
                    pool.push(Piece {
                        n_bonds: c.n_bonds(),
                        verts: c
                            .vertices()
                            .iter()
                            .filter(|v| !v.is_origin())
                            .copied()
                            .collect(),
                    });
                },
            )?;
            pool.sort_by_key(|p| p.n_bonds);
            pools.push(pool);
        }

        let mut planted = Series::zero(order);
        for piece in &pools[0] {
            planted.add_to_coeff(piece.n_bonds, &Coeff::one());
        }

        let mut walk = Walk {
            pools: &pools,
            order,
            verts: Vec::with_capacity(order + 1),
            vmat: vec![vec![false; order + 1]; order + 1],
            pairs: Vec::new(),
            acc: Acc::new(order),
        };
        walk.run(0);
        let acc = walk.acc;

        Ok(OnePointExpansion {
            model,
            d,
            order,
            planted,
            gamma0: weighted(&acc.tuples, order),
            gamma1: weighted(&acc.j1, order),
            gamma2: weighted(&acc.j2, order),
            gamma3: weighted(&acc.j3, order),
            gamma4_tail: weighted(&acc.j4t, order),
            gamma2_by_card: [weighted(&acc.c23, order), weighted(&acc.c24, order)],
            gamma3_by_card: [
                weighted(&acc.c33, order),
                weighted(&acc.c34, order),
                weighted(&acc.c35, order),
                weighted(&acc.c36, order),
            ],
            product_by_count: (0..=order)
                .map(|m| weighted_row(&acc.full[m], m, order))
                .collect(),
            z1: unweighted(&acc.z1, order),
            z2: unweighted(&acc.z2, order),
            z3: unweighted(&acc.z3, order),
            z41: unweighted(&acc.z41, order),
            z42: unweighted(&acc.z42, order),
        })
    }

    /// The alternating sum of the gamma terms; adding the origin-on-cycle
    /// series must reproduce the one-point function.
    pub fn alternating_sum(&self) -> Series {
        let plus = &(&self.gamma0 + &self.gamma2) + &self.gamma4_tail;
        let minus = &self.gamma1 + &self.gamma3;
        &plus - &minus
    }

    /// Sum over tuple lengths of the full-product terms; equals the
    /// one-point function of clusters whose origin lies on no cycle.
    pub fn product_sum(&self) -> Series {
        let mut acc = Series::zero(self.order);
        for row in &self.product_by_count {
            acc = &acc + row;
        }
        acc
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if n < k {
        return 0;
    }
    let mut out = 1u64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Number of distinct labels among the endpoints of index pairs.
fn label_card(pairs: &[(u8, u8)]) -> usize {
    let mut seen = 0u32;
    for &(i, j) in pairs {
        seen |= 1 << i;
        seen |= 1 << j;
    }
    seen.count_ones() as usize
}

fn sorted_intersect(a: &[Point], b: &[Point]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn factorial(m: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=m {
        f *= i as i64;
    }
    f
}

/// Series with coefficient Σ_m grid[m][n] / m!.
fn weighted(grid: &Grid, order: usize) -> Series {
    let mut s = Series::zero(order);
    for (m, row) in grid.iter().enumerate() {
        s = &s + &weighted_row(row, m, order);
    }
    s
}

fn weighted_row(row: &[u64], m: usize, order: usize) -> Series {
    let mut s = Series::zero(order);
    let weight = Coeff::new(BigInt::one(), factorial(m));
    for (n, &v) in row.iter().enumerate() {
        if v != 0 {
            s.add_to_coeff(n, &(&weight * Coeff::from_integer(BigInt::from(v))));
        }
    }
    s
}

fn unweighted(row: &[u64], order: usize) -> Series {
    let mut s = Series::zero(order);
    for (n, &v) in row.iter().enumerate() {
        if v != 0 {
            s.add_to_coeff(n, &Coeff::from_integer(BigInt::from(v)));
        }
    }
    s
}
