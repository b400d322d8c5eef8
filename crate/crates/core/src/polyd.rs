//! Cluster counts as exact polynomials in the ambient dimension.
//!
//! An n-bond cluster whose bonds use exactly k coordinate directions sits
//! inside the d-dimensional lattice in one way per choice of k active axes,
//! so counting the clusters of Z^k that use all k directions determines the
//! count in every dimension at once: count_n(d) = sum_k binom(d, k) P_{n,k}.
//! The assembled polynomials have degree n, while the corrections that
//! separate bond animals from trees contain a cycle, which spends at least
//! two bonds per direction it uses and so drops the degree to n - 2.

use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cluster::Model;
use crate::enumerate::{enumerate, EnumOptions};
use crate::error::Result;
use crate::series::{coeff_int, Coeff};

/// Polynomial in the dimension d with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DPoly {
    coeffs: Vec<Coeff>,
}

impl DPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        DPoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial from ascending-power coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        DPoly { coeffs }
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of d^k.
    pub fn coeff(&self, k: usize) -> Coeff {
        self.coeffs.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Exact evaluation.
    pub fn eval(&self, d: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * d) + c;
        }
        acc
    }

    /// Exact evaluation at an integer dimension.
    pub fn eval_int(&self, d: i64) -> Coeff {
        self.eval(&coeff_int(d))
    }

    /// Multiplies every coefficient by a constant.
    pub fn scale(&self, c: &Coeff) -> DPoly {
        DPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &DPoly {
    type Output = DPoly;
    fn add(self, rhs: &DPoly) -> DPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        DPoly::from_coeffs(coeffs)
    }
}

impl Sub for &DPoly {
    type Output = DPoly;
    fn sub(self, rhs: &DPoly) -> DPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) - &rhs.coeff(k));
        }
        DPoly::from_coeffs(coeffs)
    }
}

fn pretty(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for DPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", pretty(&mag))?,
                (1, true) => write!(f, "d")?,
                (1, false) => write!(f, "{}*d", pretty(&mag))?,
                (_, true) => write!(f, "d^{k}")?,
                (_, false) => write!(f, "{}*d^{k}", pretty(&mag))?,
            }
        }
        Ok(())
    }
}

/// The binomial coefficient binom(d, k) as an exact polynomial in d.
pub fn binom_poly(k: usize) -> DPoly {
    let mut coeffs = vec![Coeff::one()];
    for i in 0..k {
        let root = coeff_int(i as i64);
        let mut next = vec![Coeff::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - &(c * &root);
        }
        coeffs = next;
    }
    let mut factorial = Coeff::one();
    for i in 1..=k {
        factorial = &factorial * &coeff_int(i as i64);
    }
    DPoly::from_coeffs(coeffs).scale(&factorial.recip())
}

/// Numbers P_{n,k} of n-bond clusters containing the origin in Z^k whose
/// bonds use all k coordinate directions.
#[derive(Clone, Debug)]
pub struct ProperTable {
    model: Model,
    n_max: usize,
    /// counts[n][k] for 0 <= n, k <= n_max; zero whenever k > n.
    counts: Vec<Vec<u64>>,
}

impl ProperTable {
    pub fn model(&self) -> Model {
        self.model
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// P_{n,k}; requires n <= n_max, returns zero for k > n_max.
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > self.n_max {
            return 0;
        }
        self.counts[n][k]
    }
}

/// Classifies clusters by bond number and by the number of coordinate
/// directions their bonds use, one enumeration per direction count.
pub fn proper_counts(model: Model, n_max: usize, options: &EnumOptions) -> Result<ProperTable> {
    let columns: Vec<Vec<u64>> = (1..=n_max)
        .into_par_iter()
        .map(|k| {
            let mut column = vec![0u64; n_max + 1];
            let all = (1u32 << k) - 1;
            enumerate(model, k, n_max, &[], options, |c| {
                let mut used = 0u32;
                for b in c.bonds() {
                    used |= 1 << b.axis();
                }
                if used == all {
                    column[c.n_bonds()] += 1;
                }
            })?;
            Ok(column)
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![vec![0u64; n_max + 1]; n_max + 1];
    counts[0][0] = 1;
    for (j, column) in columns.iter().enumerate() {
        for n in 0..=n_max {
            counts[n][j + 1] = column[n];
        }
    }
    Ok(ProperTable {
        model,
        n_max,
        counts,
    })
}

/// Assembles the exact count polynomial sum_k binom(d, k) P_{n,k} for
/// n-bond clusters containing the origin.
pub fn poly_from_proper(table: &ProperTable, n: usize) -> DPoly {
    assert!(
        n <= table.n_max,
        "table covers sizes 0..={}, got {n}",
        table.n_max
    );
    let mut poly = DPoly::zero();
    for k in 0..=n {
        let p = table.counts[n][k];
        if p == 0 {
            continue;
        }
        poly = &poly + &binom_poly(k).scale(&coeff_int(p as i64));
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count;
    use num_bigint::BigInt;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    fn polys(model: Model, n_max: usize) -> Vec<DPoly> {
        let table = proper_counts(model, n_max, &opts()).unwrap();
        (0..=n_max).map(|n| poly_from_proper(&table, n)).collect()
    }

    #[test]
    fn table_shape_and_small_proper_counts() {
        for model in [Model::Tree, Model::Animal] {
            let table = proper_counts(model, 3, &opts()).unwrap();
            assert_eq!(table.get(0, 0), 1);
            for n in 1..=3 {
                assert_eq!(table.get(n, 0), 0, "{model} n={n}");
            }
            for n in 0..=3 {
                for k in n + 1..=3 {
                    assert_eq!(table.get(n, k), 0, "{model} n={n} k={k}");
                }
            }
            assert_eq!(table.get(1, 1), 2);
            assert_eq!(table.get(2, 1), 3);
            assert_eq!(table.get(2, 2), 12);
        }
        let tree = proper_counts(Model::Tree, 3, &opts()).unwrap();
        let animal = proper_counts(Model::Animal, 3, &opts()).unwrap();
        for n in 0..=3 {
            for k in 0..=3 {
                assert_eq!(tree.get(n, k), animal.get(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn binomial_polynomials() {
        assert_eq!(binom_poly(0), DPoly::from_coeffs(vec![coeff_int(1)]));
        assert_eq!(
            binom_poly(1),
            DPoly::from_coeffs(vec![coeff_int(0), coeff_int(1)])
        );
        assert_eq!(
            binom_poly(2),
            DPoly::from_coeffs(vec![
                coeff_int(0),
                crate::series::coeff_ratio(-1, 2),
                crate::series::coeff_ratio(1, 2),
            ])
        );
        assert_eq!(binom_poly(3).eval_int(5), coeff_int(10));
        assert_eq!(binom_poly(4).eval_int(3), coeff_int(0));
    }

    #[test]
    fn one_and_two_bond_polynomials() {
        for model in [Model::Tree, Model::Animal] {
            let polys = polys(model, 2);
            assert_eq!(polys[0], DPoly::from_coeffs(vec![coeff_int(1)]));
            assert_eq!(
                polys[1],
                DPoly::from_coeffs(vec![coeff_int(0), coeff_int(2)])
            );
            assert_eq!(
                polys[2],
                DPoly::from_coeffs(vec![coeff_int(0), coeff_int(-3), coeff_int(6)])
            );
            assert_eq!(polys[2].to_string(), "6*d^2 - 3*d");
        }
    }

    #[test]
    fn evaluations_match_direct_counts() {
        let n_max = 5;
        for model in [Model::Tree, Model::Animal] {
            let polys = polys(model, n_max);
            for d in 1..=4usize {
                let direct = count(model, d, n_max, &[], &opts()).unwrap();
                for (n, (poly, c)) in polys.iter().zip(&direct.counts).enumerate() {
                    let expected = Coeff::from_integer(BigInt::from(c.clone()));
                    assert_eq!(poly.eval_int(d as i64), expected, "{model} d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn degree_matches_the_bond_number() {
        for model in [Model::Tree, Model::Animal] {
            let polys = polys(model, 5);
            for (n, poly) in polys.iter().enumerate() {
                assert_eq!(poly.degree(), Some(n), "{model} n={n}");
                assert!(poly.coeff(n).is_positive(), "{model} n={n}");
            }
        }
    }

    #[test]
    fn cycle_corrections_lose_two_directions() {
        let tree = polys(Model::Tree, 5);
        let animal = polys(Model::Animal, 5);
        for n in 0..=5 {
            let diff = &animal[n] - &tree[n];
            assert!(
                diff.degree().is_none_or(|deg| deg + 2 <= n),
                "n={n} degree {:?}",
                diff.degree()
            );
        }
        assert_eq!(
            &animal[4] - &tree[4],
            DPoly::from_coeffs(vec![coeff_int(0), coeff_int(-2), coeff_int(2)])
        );
    }

    fn vec_mul_linear(a: &[Coeff], root: i64) -> Vec<Coeff> {
        let r = coeff_int(root);
        let mut out = vec![Coeff::zero(); a.len() + 1];
        for (j, c) in a.iter().enumerate() {
            out[j + 1] = &out[j + 1] + c;
            out[j] = &out[j] - &(c * &r);
        }
        out
    }

    fn lagrange(points: &[(i64, Coeff)]) -> Vec<Coeff> {
        let mut acc = vec![Coeff::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = vec![Coeff::one()];
            let mut denom = Coeff::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = vec_mul_linear(&basis, *xj);
                denom = &denom * &coeff_int(xi - xj);
            }
            let weight = yi / &denom;
            for (k, b) in basis.iter().enumerate() {
                acc[k] = &acc[k] + &(b * &weight);
            }
        }
        acc
    }

    #[test]
    fn interpolation_reproduces_the_polynomials() {
        let n_max = 5;
        for model in [Model::Tree, Model::Animal] {
            let polys = polys(model, n_max);
            let tables: Vec<_> = (1..=n_max as i64 + 1)
                .map(|d| count(model, d as usize, n_max, &[], &opts()).unwrap())
                .collect();
            for (n, poly) in polys.iter().enumerate() {
                let points: Vec<(i64, Coeff)> = tables
                    .iter()
                    .take(n + 1)
                    .enumerate()
                    .map(|(i, t)| {
                        (
                            i as i64 + 1,
                            Coeff::from_integer(BigInt::from(t.counts[n].clone())),
                        )
                    })
                    .collect();
                let interpolated = DPoly::from_coeffs(lagrange(&points));
                assert_eq!(poly, &interpolated, "{model} n={n}");
            }
        }
    }

    #[test]
    fn integer_evaluations_are_nonnegative_integers() {
        for model in [Model::Tree, Model::Animal] {
            let polys = polys(model, 5);
            for poly in &polys {
                for d in 0..=8 {
                    let value = poly.eval_int(d);
                    assert!(value.is_integer(), "{model} d={d}");
                    assert!(!value.is_negative(), "{model} d={d}");
                }
            }
        }
    }
}
