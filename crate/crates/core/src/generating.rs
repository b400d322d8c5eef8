//! Generating functions built from cluster enumeration: one- and two-point
//! functions, planted counts, counts with the origin on a cycle, the
//! susceptibility, path-length-restricted two-point functions and their
//! split convolution sums, and the intersecting-cluster-pair quantities.

use crate::cluster::{Cluster, Constraint, Model};
use crate::enumerate::{count, enumerate, EnumOptions};
use crate::error::Result;
use crate::lattice::Point;
use crate::series::{coeff_int, Series, SiteSeries};
use std::collections::BTreeSet;

/// Every series a model yields at one (d, N): built in a single enumeration
/// pass so the many coefficientwise identities among them are cheap to
/// check.
#[derive(Clone)]
pub struct ModelSeriesBundle {
    pub model: Model,
    pub d: usize,
    pub order: usize,
    /// Coefficient n counts the n-bond clusters containing the origin.
    pub one_point: Series,
    /// Clusters in which the origin lies on a cycle (zero for trees).
    pub origin_cycle: Series,
    /// Clusters containing the bond {0,+e_1} with the origin of degree 1.
    pub planted: Series,
    /// Sum of the two-point function over all displacements.
    pub susceptibility: Series,
    /// two_point(x): clusters containing both 0 and x.
    pub two_point: SiteSeries,
    /// two_point_min[i]: clusters whose 0-to-x connection is long. For
    /// x != 0 the graph distance is at least i, and for x = 0 some cycle of
    /// length at least i passes through the origin. Index 0 is two_point.
    pub two_point_min: Vec<SiteSeries>,
}

impl ModelSeriesBundle {
    /// Enumerates every cluster once and fills all members.
    pub fn build(model: Model, d: usize, order: usize, options: &EnumOptions) -> Result<Self> {
        let origin = Point::origin(d);
        let s1 = Point::unit(d, 0);
        let root = crate::lattice::Bond::new(origin, s1);
        let one = coeff_int(1);

        let mut one_point = Series::zero(order);
        let mut origin_cycle = Series::zero(order);
        let mut planted = Series::zero(order);
        let mut susceptibility = Series::zero(order);
        let mut two_point = SiteSeries::zero(d, order);
        let mut two_point_min: Vec<SiteSeries> =
            (0..=order).map(|_| SiteSeries::zero(d, order)).collect();

        // The 0-bond cluster {0}: one cluster, one vertex, no cycle.
        one_point.add_to_coeff(0, &one);
        susceptibility.add_to_coeff(0, &one);
        two_point.add_to_coeff(origin, 0, &one);

        enumerate(model, d, order, &[], options, |c| {
            let n = c.n_bonds();
            one_point.add_to_coeff(n, &one);
            let verts = c.vertices();
            susceptibility.add_to_coeff(n, &coeff_int(verts.len() as i64));
            if c.degree(&origin) == 1 && c.contains_bond(&root) {
                planted.add_to_coeff(n, &one);
            }
            let dist = c.distances_from(&origin).expect("clusters contain 0");
            for (x, &dx) in verts.iter().zip(dist.iter()) {
                two_point.add_to_coeff(*x, n, &one);
                if !x.is_origin() {
                    for tp in &mut two_point_min[1..=dx.min(order)] {
                        tp.add_to_coeff(*x, n, &one);
                    }
                }
            }
            if model == Model::Animal {
                if let Some(len) = c.longest_cycle_through(&origin).expect("0 is a vertex") {
                    origin_cycle.add_to_coeff(n, &one);
                    for item in two_point_min.iter_mut().take(len.min(order) + 1).skip(1) {
                        item.add_to_coeff(origin, n, &one);
                    }
                }
            }
        })?;

        two_point_min[0] = two_point.clone();
        Ok(ModelSeriesBundle {
            model,
            d,
            order,
            one_point,
            origin_cycle,
            planted,
            susceptibility,
            two_point,
            two_point_min,
        })
    }

    /// Sum over all ways to split a total path-length requirement m across
    /// n convolution factors: Σ_{i₁+…+i_n=m} two_point_min[i₁] * … *
    /// two_point_min[i_n].
    pub fn path_length_split(&self, m: usize, n: usize) -> Result<SiteSeries> {
        debug_assert!(n >= 1);
        debug_assert!(m <= self.order);
        // row[k] = the sum for the current factor count at requirement k.
        let mut row: Vec<SiteSeries> = self.two_point_min[..=m].to_vec();
        for _ in 2..=n {
            let mut next = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let mut acc = SiteSeries::zero(self.d, self.order);
                for i in 0..=k {
                    acc = acc.add(&self.two_point_min[i].convolve(&row[k - i])?)?;
                }
                next.push(acc);
            }
            row = next;
        }
        Ok(row.pop().expect("m+1 rows"))
    }
}

/// The one-point function: coefficient n counts n-bond clusters containing
/// the origin.
pub fn one_point(model: Model, d: usize, order: usize, options: &EnumOptions) -> Result<Series> {
    let table = count(model, d, order, &[], options)?;
    Ok(Series::from_counts(&table.counts, order))
}

/// Counts of clusters planted via the bond {0,s}: the bond is present and
/// the origin has degree 1. The counts do not depend on s.
pub fn planted(
    model: Model,
    d: usize,
    order: usize,
    s: &Point,
    options: &EnumOptions,
) -> Result<Series> {
    s.require_unit()?;
    let table = count(model, d, order, &[Constraint::PlantedViaBond(*s)], options)?;
    Ok(Series::from_counts(&table.counts, order))
}

/// All clusters of the model with at most n_max bonds containing the
/// origin, single-site cluster included, in deterministic order.
pub fn cluster_pool(
    model: Model,
    d: usize,
    n_max: usize,
    options: &EnumOptions,
) -> Result<Vec<Cluster>> {
    let mut pool = vec![Cluster::single_site(model, d)];
    enumerate(model, d, n_max, &[], options, |c| pool.push(c.clone()))?;
    Ok(pool)
}

/// Sum over ordered cluster pairs forced to share a vertex: entry x gets
/// z^{|C₀|+|C₁|} for every pair with C₀ containing 0, C₁ containing 0
/// translated to x, and the vertex sets intersecting.
pub fn q_pair(model: Model, d: usize, order: usize, options: &EnumOptions) -> Result<SiteSeries> {
    let pool = cluster_pool(model, d, order, options)?;
    let mut q = SiteSeries::zero(d, order);
    let one = coeff_int(1);
    for a in &pool {
        let budget = order - a.n_bonds();
        for b in &pool {
            if b.n_bonds() > budget {
                continue;
            }
            let total = a.n_bonds() + b.n_bonds();
            // x makes the pair intersect exactly when x = v - w for some
            // vertices v of a and w of b.
            let mut shifts = BTreeSet::new();
            for v in a.vertices() {
                for w in b.vertices() {
                    shifts.insert(v.sub(w));
                }
            }
            for x in shifts {
                q.add_to_coeff(x, total, &one);
            }
        }
    }
    Ok(q)
}

/// Partition of q_pair at a unit vector s by the minimal connection length:
/// entry n collects the pairs whose best path 0 → shared vertex → s has
/// combined length n. Summing the entries returns q_pair(s).
pub fn q_pair_min_split(
    model: Model,
    d: usize,
    order: usize,
    s: &Point,
    options: &EnumOptions,
) -> Result<Vec<Series>> {
    s.require_unit()?;
    let pool = cluster_pool(model, d, order, options)?;
    let origin = Point::origin(d);
    let dists: Vec<Vec<usize>> = pool
        .iter()
        .map(|c| c.distances_from(&origin).expect("clusters contain 0"))
        .collect();
    let mut split = vec![Series::zero(order); 2 * order + 1];
    let one = coeff_int(1);
    for (ai, a) in pool.iter().enumerate() {
        let budget = order - a.n_bonds();
        for (bi, b) in pool.iter().enumerate() {
            if b.n_bonds() > budget {
                continue;
            }
            let bs = b.translate(s);
            // Walk the sorted vertex lists in step; positions align with
            // the distance tables.
            let (mut i, mut j) = (0, 0);
            let mut best: Option<usize> = None;
            let (av, bv) = (a.vertices(), bs.vertices());
            while i < av.len() && j < bv.len() {
                match av[i].cmp(&bv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let len = dists[ai][i] + dists[bi][j];
                        best = Some(best.map_or(len, |m| m.min(len)));
                        i += 1;
                        j += 1;
                    }
                }
            }
            if let Some(n) = best {
                split[n].add_to_coeff(a.n_bonds() + b.n_bonds(), &one);
            }
        }
    }
    Ok(split)
}

/// Sum over ordered cluster triples (C₀ ∋ 0, C₁ ∋ s, C₂ ∋ 0) in which C₁
/// shares a vertex with both C₀ and C₂, weighted z^{|C₀|+|C₁|+|C₂|}. The
/// two sharing conditions factor once C₁ is fixed.
pub fn q_chain(
    model: Model,
    d: usize,
    order: usize,
    s: &Point,
    options: &EnumOptions,
) -> Result<Series> {
    s.require_unit()?;
    let pool = cluster_pool(model, d, order, options)?;
    let mut total = Series::zero(order);
    for mid in &pool {
        if mid.n_bonds() > order {
            continue;
        }
        let shifted = mid.translate(s);
        let budget = order - mid.n_bonds();
        let mut hits = Series::zero(budget);
        let one = coeff_int(1);
        for c in &pool {
            if c.n_bonds() <= budget && c.intersects(&shifted) {
                hits.add_to_coeff(c.n_bonds(), &one);
            }
        }
        let pair = &hits * &hits;
        total = &total + &pair.shift_up(mid.n_bonds()).truncated(order);
    }
    Ok(total)
}

/// The weight (2dz·g)^i multiplying the step-kernel comparison series.
pub fn step_weight(g: &Series, d: usize, i: usize) -> Series {
    let order = g.order();
    let mut acc = Series::one(order);
    let z2d = Series::monomial(order, 1, coeff_int(2 * d as i64));
    for _ in 0..i {
        acc = &(&acc * &z2d) * g;
    }
    acc
}
