//! Exhaustive, duplicate-free enumeration of lattice trees and bond animals
//! containing the origin, with exact big-integer counting.
//!
//! Clusters are grown over a canonically ordered candidate queue: choosing
//! the candidate at index j permits later choices only at indices above j,
//! so every bond set is produced by exactly one choice sequence and no
//! isomorphism hashing is needed. Counting splits the top-level choices
//! across workers; totals are merged by commutative addition, so results do
//! not depend on the worker count.

use crate::cluster::{Cluster, Constraint, Model};
use crate::error::{Error, Result};
use crate::lattice::{check_dim, neighbors, Bond, Point};
use crate::series::check_order;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Tunable limits for an enumeration run.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    /// Refuse to start when the predicted number of clusters exceeds this.
    pub ceiling: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            ceiling: 1_000_000_000,
        }
    }
}

/// Crude a-priori estimate of the number of clusters with up to `n_max`
/// bonds containing the origin: exact (n+1) in one dimension, otherwise the
/// growth-constant bound ((2d-1)e)^n.
pub fn predicted_clusters(d: usize, n_max: usize) -> u64 {
    if d == 1 {
        return n_max as u64 + 1;
    }
    let base = (2 * d - 1) as f64 * std::f64::consts::E;
    let predicted = base.powi(n_max as i32);
    if predicted >= u64::MAX as f64 {
        u64::MAX
    } else {
        predicted as u64
    }
}

/// Exact per-size counts of an enumeration family.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CountTable {
    pub model: Model,
    pub d: usize,
    pub n_max: usize,
    /// Canonical strings of the defining constraints.
    pub constraints: Vec<String>,
    /// counts[n] = number of clusters with exactly n bonds, n = 0..=n_max.
    #[serde(with = "decimal_counts")]
    pub counts: Vec<BigUint>,
    pub engine_version: String,
}

/// Serializes big-integer counts as decimal strings.
mod decimal_counts {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigUint>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| s.parse::<BigUint>().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Constraints split into enumeration-mode directives and per-cluster
/// filters.
struct Plan {
    planted: Option<Point>,
    excluded: Vec<Bond>,
    filters: Vec<Constraint>,
}

fn plan_constraints(d: usize, constraints: &[Constraint]) -> Result<Plan> {
    let mut planted = None;
    let mut excluded = Vec::new();
    let mut filters = Vec::new();
    for c in constraints {
        match c {
            Constraint::PlantedViaBond(s) if planted.is_none() => {
                s.require_unit()?;
                if s.dim() != d {
                    return Err(Error::DimensionMismatch(d, s.dim()));
                }
                planted = Some(*s);
            }
            Constraint::ExcludesBond(b) => excluded.push(*b),
            other => filters.push(other.clone()),
        }
    }
    Ok(Plan {
        planted,
        excluded,
        filters,
    })
}

/// Depth-first grower over the candidate queue.
struct Grower<'a> {
    model: Model,
    n_max: usize,
    queue: Vec<Bond>,
    discovered: BTreeSet<Bond>,
    chosen: Vec<Bond>,
    verts: BTreeSet<Point>,
    emit: &'a mut dyn FnMut(&[Bond], &BTreeSet<Point>),
}

impl<'a> Grower<'a> {
    fn new(
        model: Model,
        d: usize,
        n_max: usize,
        plan: &Plan,
        emit: &'a mut dyn FnMut(&[Bond], &BTreeSet<Point>),
    ) -> Grower<'a> {
        let origin = Point::origin(d);
        let mut discovered: BTreeSet<Bond> = plan.excluded.iter().copied().collect();
        let mut queue = Vec::new();
        match plan.planted {
            Some(s) => {
                let root = Bond::new(origin, s);
                let root_allowed = !discovered.contains(&root);
                for w in neighbors(&origin) {
                    discovered.insert(Bond::new(origin, w));
                }
                if root_allowed {
                    queue.push(root);
                }
            }
            None => {
                for w in neighbors(&origin) {
                    let b = Bond::new(origin, w);
                    if discovered.insert(b) {
                        queue.push(b);
                    }
                }
            }
        }
        Grower {
            model,
            n_max,
            queue,
            discovered,
            chosen: Vec::new(),
            verts: BTreeSet::from([origin]),
            emit,
        }
    }

    fn branch_count(&self) -> usize {
        self.queue.len()
    }

    /// Chooses the candidate at queue index `j`, emits, explores every
    /// extension with candidates above `j`, then restores the state.
    fn step(&mut self, j: usize) {
        if self.chosen.len() >= self.n_max {
            return;
        }
        let b = self.queue[j];
        let (p, q) = b.endpoints();
        let new_vertex = match (self.verts.contains(&p), self.verts.contains(&q)) {
            (true, true) => None,
            (true, false) => Some(q),
            (false, true) => Some(p),
            (false, false) => unreachable!("candidate bond not adjacent to cluster"),
        };
        if new_vertex.is_none() && self.model == Model::Tree {
            return;
        }
        self.chosen.push(b);
        let appended_from = self.queue.len();
        if let Some(v) = new_vertex {
            self.verts.insert(v);
            for w in neighbors(&v) {
                let nb = Bond::new(v, w);
                if self.discovered.insert(nb) {
                    self.queue.push(nb);
                }
            }
        }
        (self.emit)(&self.chosen, &self.verts);
        self.grow(j + 1);
        for k in appended_from..self.queue.len() {
            let nb = self.queue[k];
            self.discovered.remove(&nb);
        }
        self.queue.truncate(appended_from);
        if let Some(v) = new_vertex {
            self.verts.remove(&v);
        }
        self.chosen.pop();
    }

    fn grow(&mut self, start: usize) {
        if self.chosen.len() >= self.n_max {
            return;
        }
        let len = self.queue.len();
        for j in start..len {
            self.step(j);
        }
    }
}

fn check_feasible(model: Model, d: usize, n_max: usize, options: &EnumOptions) -> Result<()> {
    check_dim(d)?;
    check_order(n_max)?;
    let predicted = predicted_clusters(d, n_max);
    if predicted > options.ceiling {
        return Err(Error::ResourceCeiling {
            model: model.name(),
            d,
            n: n_max,
            predicted,
            ceiling: options.ceiling,
        });
    }
    Ok(())
}

/// Invokes `visitor` exactly once per cluster with 1..=n_max bonds that
/// contains the origin and satisfies every constraint. The 0-bond cluster
/// {0} is never visited; `count` accounts for it. Single-worker visit order
/// is deterministic.
pub fn enumerate(
    model: Model,
    d: usize,
    n_max: usize,
    constraints: &[Constraint],
    options: &EnumOptions,
    mut visitor: impl FnMut(&Cluster),
) -> Result<()> {
    check_feasible(model, d, n_max, options)?;
    let plan = plan_constraints(d, constraints)?;
    let mut emit = |chosen: &[Bond], verts: &BTreeSet<Point>| {
        let mut bonds = chosen.to_vec();
        bonds.sort();
        let c = Cluster::from_parts(model, d, bonds, verts.iter().copied().collect());
        if plan.filters.iter().all(|f| f.satisfied(&c)) {
            visitor(&c);
        }
    };
    let mut grower = Grower::new(model, d, n_max, &plan, &mut emit);
    grower.grow(0);
    Ok(())
}

/// Exact counts per bond number of the clusters selected by `constraints`,
/// including the 0-bond cluster {0} when it satisfies them all.
pub fn count(
    model: Model,
    d: usize,
    n_max: usize,
    constraints: &[Constraint],
    options: &EnumOptions,
) -> Result<CountTable> {
    check_feasible(model, d, n_max, options)?;
    let plan = plan_constraints(d, constraints)?;
    let branches = {
        let mut nop = |_: &[Bond], _: &BTreeSet<Point>| {};
        Grower::new(model, d, n_max, &plan, &mut nop).branch_count()
    };
    let branch_counts: Vec<Vec<u64>> = (0..branches)
        .into_par_iter()
        .map(|j| {
            let mut counts = vec![0u64; n_max + 1];
            let mut emit = |chosen: &[Bond], verts: &BTreeSet<Point>| {
                if !plan.filters.is_empty() {
                    let mut bonds = chosen.to_vec();
                    bonds.sort();
                    let c = Cluster::from_parts(model, d, bonds, verts.iter().copied().collect());
                    if !plan.filters.iter().all(|f| f.satisfied(&c)) {
                        return;
                    }
                }
                counts[chosen.len()] += 1;
            };
            let mut grower = Grower::new(model, d, n_max, &plan, &mut emit);
            grower.step(j);
            counts
        })
        .collect();
    let mut counts = vec![BigUint::zero(); n_max + 1];
    let single = Cluster::single_site(model, d);
    if constraints.iter().all(|c| c.satisfied(&single)) {
        counts[0] = BigUint::one();
    }
    for branch in branch_counts {
        for (n, v) in branch.iter().enumerate() {
            counts[n] += *v;
        }
    }
    Ok(CountTable {
        model,
        d,
        n_max,
        constraints: constraints.iter().map(|c| c.canonical_string()).collect(),
        counts,
        engine_version: crate::ENGINE_VERSION.to_string(),
    })
}
