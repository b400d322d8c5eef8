//! Truncated formal power series over exact rationals, and finitely
//! supported point-indexed series with spatial convolution.
//!
//! A `Series` holds coefficients c_0..c_N for a fixed truncation order N.
//! Binary operations on mixed truncations use the minimum order, so no
//! operation ever consults a coefficient it does not have.

use crate::error::{Error, Result};
use crate::lattice::{check_dim, unit_vectors, Point, Symmetry};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 31;

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Coefficient from an integer.
pub fn coeff_int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficient from a ratio of integers.
pub fn coeff_ratio(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Validates a runtime truncation order.
pub fn check_order(n: usize) -> Result<()> {
    if n <= MAX_ORDER {
        Ok(())
    } else {
        Err(Error::InvalidOrder(n))
    }
}

/// A power series in z truncated at z^N, with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Coeff>,
}

impl Series {
    /// The zero series at truncation order `n`.
    pub fn zero(n: usize) -> Series {
        Series {
            coeffs: vec![Coeff::zero(); n + 1],
        }
    }

    /// The constant series 1 at truncation order `n`.
    pub fn one(n: usize) -> Series {
        Series::constant(n, Coeff::one())
    }

    /// A constant series at truncation order `n`.
    pub fn constant(n: usize, value: Coeff) -> Series {
        let mut s = Series::zero(n);
        s.coeffs[0] = value;
        s
    }

    /// The series c·z^k at truncation order `n`.
    pub fn monomial(n: usize, k: usize, value: Coeff) -> Series {
        let mut s = Series::zero(n);
        if k <= n {
            s.coeffs[k] = value;
        }
        s
    }

    /// Builds a series whose coefficients are the given counts.
    pub fn from_counts(counts: &[BigUint], n: usize) -> Series {
        let mut s = Series::zero(n);
        for (k, c) in counts.iter().enumerate().take(n + 1) {
            s.coeffs[k] = BigRational::from_integer(BigInt::from(c.clone()));
        }
        s
    }

    /// Truncation order N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of z^k (zero beyond the truncation).
    pub fn coeff(&self, k: usize) -> Coeff {
        self.coeffs.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Copy truncated (or zero-extended is forbidden: `n` must not exceed
    /// the current order).
    pub fn truncated(&self, n: usize) -> Series {
        debug_assert!(n <= self.order());
        Series {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Adds `value` to the coefficient of z^k.
    pub fn add_to_coeff(&mut self, k: usize, value: &Coeff) {
        if k < self.coeffs.len() {
            self.coeffs[k] += value;
        }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, factor: &Coeff) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplies by z^k, raising the truncation order by `k`: the result
    /// has order N+k and its low k coefficients are zero. Exact because
    /// every original coefficient is retained.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut coeffs = vec![Coeff::zero(); self.coeffs.len() + k];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + k] = c.clone();
        }
        Series { coeffs }
    }

    /// Termwise derivative; the result is truncated one order lower since
    /// the top coefficient of the derivative is unknown.
    pub fn derivative(&self) -> Series {
        let n = self.order();
        if n == 0 {
            return Series::zero(0);
        }
        let mut coeffs = Vec::with_capacity(n);
        for k in 1..=n {
            coeffs.push(&self.coeffs[k] * coeff_int(k as i64));
        }
        Series { coeffs }
    }

    /// exp of a series with zero constant term, by the recurrence
    /// b_n = (1/n)·Σ_{k=1..n} k·a_k·b_{n−k} obtained from b′ = a′·b.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm(format_coeff(&self.coeffs[0])));
        }
        let n = self.order();
        let mut b = vec![Coeff::zero(); n + 1];
        b[0] = Coeff::one();
        for m in 1..=n {
            let mut acc = Coeff::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * coeff_int(k as i64) * &b[m - k];
            }
            b[m] = acc / coeff_int(m as i64);
        }
        Ok(Series { coeffs: b })
    }

    /// First index at which the two series differ, up to the smaller order.
    pub fn first_mismatch(&self, other: &Series) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// True when every coefficient of `self` is ≤ the matching coefficient
    /// of `other`, up to the smaller order.
    pub fn le_coefficientwise(&self, other: &Series) -> bool {
        let n = self.order().min(other.order());
        (0..=n).all(|k| self.coeffs[k] <= other.coeffs[k])
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integer(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Coefficients rendered as "num/den" strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_coeff).collect()
    }
}

/// Renders a rational as "num/den".
pub fn format_coeff(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Binary64 value of a rational, for display only.
pub fn coeff_to_f64(c: &Coeff) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            coeffs.push(&self.coeffs[k] + &rhs.coeffs[k]);
        }
        Series { coeffs }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut coeffs = Vec::with_capacity(n + 1);
        for k in 0..=n {
            coeffs.push(&self.coeffs[k] - &rhs.coeffs[k]);
        }
        Series { coeffs }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Coeff::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        Series { coeffs }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// A finitely supported map Z^d → Series, all entries sharing one
/// truncation order. Lookups outside the support return zero.
#[derive(Clone, PartialEq, Eq)]
pub struct SiteSeries {
    d: usize,
    order: usize,
    entries: BTreeMap<Point, Series>,
}

impl SiteSeries {
    pub fn zero(d: usize, order: usize) -> SiteSeries {
        SiteSeries {
            d,
            order,
            entries: BTreeMap::new(),
        }
    }

    /// The convolution identity: the series 1 at the origin.
    pub fn delta(d: usize, order: usize) -> SiteSeries {
        let mut s = SiteSeries::zero(d, order);
        s.insert(Point::origin(d), Series::one(order));
        s
    }

    /// The nearest-neighbour step kernel: weight 1/(2d) at each unit vector.
    pub fn step_kernel(d: usize, order: usize) -> SiteSeries {
        let mut s = SiteSeries::zero(d, order);
        let w = Series::constant(order, coeff_ratio(1, 2 * d as i64));
        for e in unit_vectors(d) {
            s.insert(e, w.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Inserts an entry, dropping it if identically zero.
    pub fn insert(&mut self, x: Point, series: Series) {
        debug_assert_eq!(series.order(), self.order);
        if series.is_zero() {
            self.entries.remove(&x);
        } else {
            self.entries.insert(x, series);
        }
    }

    /// Adds `value` to the coefficient of z^k at point x.
    pub fn add_to_coeff(&mut self, x: Point, k: usize, value: &Coeff) {
        if value.is_zero() || k > self.order {
            return;
        }
        let order = self.order;
        self.entries
            .entry(x)
            .or_insert_with(|| Series::zero(order))
            .add_to_coeff(k, value);
    }

    /// The series at x; zero outside the support.
    pub fn get(&self, x: &Point) -> Series {
        self.entries
            .get(x)
            .cloned()
            .unwrap_or_else(|| Series::zero(self.order))
    }

    /// Sorted support with entries.
    pub fn iter(&self) -> impl Iterator<Item = (&Point, &Series)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Removes entries that became identically zero.
    pub fn prune(&mut self) {
        self.entries.retain(|_, s| !s.is_zero());
    }

    /// Σ_x F(x).
    pub fn sum(&self) -> Series {
        let mut acc = Series::zero(self.order);
        for s in self.entries.values() {
            acc = &acc + s;
        }
        acc
    }

    pub fn add(&self, other: &SiteSeries) -> Result<SiteSeries> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = SiteSeries::zero(self.d, order);
        for (x, s) in self.entries.iter().chain(other.entries.iter()) {
            let cur = out.get(x);
            out.insert(*x, &cur + &s.truncated(order));
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Coeff) -> SiteSeries {
        let mut out = SiteSeries::zero(self.d, self.order);
        for (x, s) in &self.entries {
            out.insert(*x, s.scale(factor));
        }
        out
    }

    /// Pointwise multiplication by a plain series.
    pub fn mul_series(&self, factor: &Series) -> SiteSeries {
        let order = self.order.min(factor.order());
        let mut out = SiteSeries::zero(self.d, order);
        for (x, s) in &self.entries {
            out.insert(*x, &s.truncated(order) * &factor.truncated(order));
        }
        out
    }

    /// Spatial convolution (F*G)(x) = Σ_y F(y)·G(x−y).
    pub fn convolve(&self, other: &SiteSeries) -> Result<SiteSeries> {
        self.check_compatible(other)?;
        let order = self.order.min(other.order);
        let mut out = SiteSeries::zero(self.d, order);
        for (y, fy) in &self.entries {
            let fy = fy.truncated(order);
            for (w, gw) in &other.entries {
                let prod = &fy * &gw.truncated(order);
                if prod.is_zero() {
                    continue;
                }
                let x = y.add(w);
                let cur = out.get(&x);
                out.insert(x, &cur + &prod);
            }
        }
        Ok(out)
    }

    /// Convolution power F^{*k} (k = 0 gives the delta).
    pub fn convolve_power(&self, k: usize) -> Result<SiteSeries> {
        let mut acc = SiteSeries::delta(self.d, self.order);
        for _ in 0..k {
            acc = acc.convolve(self)?;
        }
        Ok(acc)
    }

    /// Image under a lattice symmetry.
    pub fn apply_symmetry(&self, sym: &Symmetry) -> SiteSeries {
        let mut out = SiteSeries::zero(self.d, self.order);
        for (x, s) in &self.entries {
            out.insert(sym.apply(x), s.clone());
        }
        out
    }

    fn check_compatible(&self, other: &SiteSeries) -> Result<()> {
        check_dim(self.d)?;
        if self.d != other.d {
            return Err(Error::DimensionMismatch(self.d, other.d));
        }
        Ok(())
    }
}

impl fmt::Debug for SiteSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SiteSeries(d={}, N={})", self.d, self.order)?;
        for (x, s) in &self.entries {
            writeln!(f, "  {x}: {s:?}")?;
        }
        Ok(())
    }
}
