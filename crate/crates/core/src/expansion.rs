//! Expansion tables for the critical point and the critical one-point
//! function in inverse powers of the coordination number, plus
//! ratio-method growth-constant reports.
//!
//! Coefficients live in the exact ring Q[e^{-1}]. With u = 1/(2d), the
//! critical point of either model expands as z_c = e^{-1}(u + (3/2)u^2 +
//! ...) and the critical one-point function as g_c = e(1 + (3/2)u + ...).
//! The first three critical-point rows and the first three one-point rows
//! carry rigorous error control; rows four through six are tabulated from
//! the physics literature, which gives no rigorous error estimate. The
//! solved two-point correction ties the expansions together through
//! z_c = 1/(2d(g_c + correction)), so the rigorous critical-point rows are
//! reproducible from the other two tables by exact series inversion, which
//! doubles as an internal consistency check on the ring arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cluster::Model;
use crate::enumerate::{count, EnumOptions};
use crate::error::{Error, Result};
use crate::series::{coeff_ratio, Coeff};

/// Element of the exact ring Q[e^{-1}]: a_0 + a_1 e^{-1} + a_2 e^{-2} + ...
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EulerRational {
    /// terms[k] multiplies e^{-k}.
    terms: Vec<Coeff>,
}

impl EulerRational {
    pub fn zero() -> Self {
        EulerRational { terms: Vec::new() }
    }

    pub fn one() -> Self {
        EulerRational::from_rational(Coeff::one())
    }

    /// Builds from ascending powers of e^{-1}, trimming trailing zeros.
    pub fn from_terms(mut terms: Vec<Coeff>) -> Self {
        while terms.last().is_some_and(Coeff::is_zero) {
            terms.pop();
        }
        EulerRational { terms }
    }

    /// The purely rational element a_0.
    pub fn from_rational(a0: Coeff) -> Self {
        EulerRational::from_terms(vec![a0])
    }

    /// The element a_0 + a_1 e^{-1} + a_2 e^{-2}.
    pub fn new(a0: Coeff, a1: Coeff, a2: Coeff) -> Self {
        EulerRational::from_terms(vec![a0, a1, a2])
    }

    /// Coefficient of e^{-k}.
    pub fn term(&self, k: usize) -> Coeff {
        self.terms.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Binary64 value; exact arithmetic happens before this point.
    pub fn to_f64(&self) -> f64 {
        let inv_e = 1.0 / std::f64::consts::E;
        let mut acc = 0.0;
        for (k, c) in self.terms.iter().enumerate() {
            acc += c.to_f64().expect("rational fits in binary64") * inv_e.powi(k as i32);
        }
        acc
    }
}

impl Add for &EulerRational {
    type Output = EulerRational;
    fn add(self, rhs: &EulerRational) -> EulerRational {
        let n = self.terms.len().max(rhs.terms.len());
        EulerRational::from_terms((0..n).map(|k| &self.term(k) + &rhs.term(k)).collect())
    }
}

impl Sub for &EulerRational {
    type Output = EulerRational;
    fn sub(self, rhs: &EulerRational) -> EulerRational {
        let n = self.terms.len().max(rhs.terms.len());
        EulerRational::from_terms((0..n).map(|k| &self.term(k) - &rhs.term(k)).collect())
    }
}

impl Mul for &EulerRational {
    type Output = EulerRational;
    fn mul(self, rhs: &EulerRational) -> EulerRational {
        if self.is_zero() || rhs.is_zero() {
            return EulerRational::zero();
        }
        let mut terms = vec![Coeff::zero(); self.terms.len() + rhs.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in rhs.terms.iter().enumerate() {
                terms[i + j] = &terms[i + j] + &(a * b);
            }
        }
        EulerRational::from_terms(terms)
    }
}

fn pretty(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for EulerRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().enumerate() {
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
                (1, true) => write!(f, "e^-1")?,
                (1, false) => write!(f, "{}*e^-1", pretty(&mag))?,
                (_, true) => write!(f, "e^-{k}")?,
                (_, false) => write!(f, "{}*e^-{k}", pretty(&mag))?,
            }
        }
        Ok(())
    }
}

fn rational(num: i64, den: i64) -> EulerRational {
    EulerRational::from_rational(coeff_ratio(num, den))
}

/// Bracket rows of the critical point: z_c = e^{-1} sum_{n=1..order}
/// row_n u^n with u = 1/(2d). Rows beyond the third have no rigorous error
/// control. Fails for order > 6, past the tabulated data.
pub fn zc_coefficients(model: Model, order: usize) -> Result<Vec<EulerRational>> {
    if order > 6 {
        return Err(Error::ExpansionOrderTooLarge(order));
    }
    let base = [
        (1, 1),
        (3, 2),
        (115, 24),
        (309, 16),
        (619103, 5760),
        (543967, 768),
    ];
    let cycle_first = [(0, 1), (0, 1), (-1, 2), (-2, 1), (-113, 12), (-395, 12)];
    let mut rows = Vec::with_capacity(order);
    for n in 1..=order {
        let (p, q) = base[n - 1];
        let mut row = rational(p, q);
        if model == Model::Animal {
            let (cp, cq) = cycle_first[n - 1];
            let correction = EulerRational::from_terms(vec![
                Coeff::zero(),
                coeff_ratio(cp, cq),
                if n == 6 {
                    coeff_ratio(-55, 24)
                } else {
                    Coeff::zero()
                },
            ]);
            row = &row + &correction;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Bracket rows of the critical one-point function: g_c = e(row_0 +
/// row_1 u + row_2 u^2 + ...), all three tabulated rows rigorous.
pub fn gc_coefficients(model: Model) -> Vec<EulerRational> {
    let mut quadratic = rational(263, 24);
    if model == Model::Animal {
        quadratic = &quadratic - &EulerRational::from_terms(vec![Coeff::zero(), Coeff::one()]);
    }
    vec![EulerRational::one(), rational(3, 2), quadratic]
}

/// Bracket rows of the critical two-point correction: correction =
/// e(row_1 u + row_2 u^2 + ...), both tabulated rows rigorous.
pub fn pi_coefficients(model: Model) -> Vec<EulerRational> {
    let mut quadratic = rational(-27, 2);
    if model == Model::Animal {
        quadratic = &quadratic + &EulerRational::from_terms(vec![Coeff::zero(), coeff_ratio(3, 2)]);
    }
    vec![rational(-3, 1), quadratic]
}

/// Inverts 1 + sum_{k>=1} rows[k] u^k as a power series, to the same
/// length. Requires rows[0] = 1.
fn invert_unit_series(rows: &[EulerRational]) -> Vec<EulerRational> {
    assert!(rows[0] == EulerRational::one(), "constant term must be one");
    let mut inv = vec![EulerRational::one()];
    for n in 1..rows.len() {
        let mut acc = EulerRational::zero();
        for k in 1..=n {
            acc = &acc + &(&rows[k] * &inv[n - k]);
        }
        inv.push(&EulerRational::zero() - &acc);
    }
    inv
}

/// Reconstructs the three rigorous critical-point rows from the one-point
/// and correction tables by exact inversion of z_c = 1/(2d(g_c + corr)):
/// the bracket of z_c is the series inverse of the combined bracket.
pub fn zc_from_inversion(model: Model) -> Vec<EulerRational> {
    let gc = gc_coefficients(model);
    let pi = pi_coefficients(model);
    let combined = vec![gc[0].clone(), &gc[1] + &pi[0], &gc[2] + &pi[1]];
    invert_unit_series(&combined)
}

/// One tabulated coefficient row.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub order: usize,
    pub coefficient: EulerRational,
    /// Whether the row carries a rigorous error estimate.
    pub rigorous: bool,
}

/// Exact expansion rows plus float partial sums for chosen dimensions.
#[derive(Clone, Debug)]
pub struct ExpansionTable {
    pub model: Model,
    pub order: usize,
    pub dims: Vec<usize>,
    /// Critical-point rows for u^1..=u^order.
    pub zc: Vec<TableRow>,
    /// One-point rows for u^0..=u^min(order,2).
    pub gc: Vec<TableRow>,
    /// zc_partials[i][m] = critical-point partial sum at dims[i] through
    /// row m+1.
    pub zc_partials: Vec<Vec<f64>>,
    /// gc_partials[i][m] = one-point partial sum at dims[i] through row m.
    pub gc_partials: Vec<Vec<f64>>,
}

/// Builds the critical-point and one-point tables to the requested order,
/// evaluating float partial sums at each listed dimension.
pub fn expansion_table(model: Model, order: usize, dims: &[usize]) -> Result<ExpansionTable> {
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    for &d in dims {
        if d == 0 || d > crate::lattice::MAX_DIM {
            return Err(Error::InvalidDimension(d));
        }
    }
    let zc_rows = zc_coefficients(model, order)?;
    let gc_rows = gc_coefficients(model);
    let gc_keep = order.min(gc_rows.len() - 1);
    let zc = zc_rows
        .iter()
        .enumerate()
        .map(|(i, row)| TableRow {
            order: i + 1,
            coefficient: row.clone(),
            rigorous: i < 3,
        })
        .collect();
    let gc: Vec<TableRow> = gc_rows[..=gc_keep]
        .iter()
        .enumerate()
        .map(|(i, row)| TableRow {
            order: i,
            coefficient: row.clone(),
            rigorous: true,
        })
        .collect();
    let e = std::f64::consts::E;
    let mut zc_partials = Vec::with_capacity(dims.len());
    let mut gc_partials = Vec::with_capacity(dims.len());
    for &d in dims {
        let u = 1.0 / (2.0 * d as f64);
        let mut acc = 0.0;
        let mut cumulative = Vec::with_capacity(zc_rows.len());
        for (i, row) in zc_rows.iter().enumerate() {
            acc += row.to_f64() * u.powi(i as i32 + 1);
            cumulative.push(acc / e);
        }
        zc_partials.push(cumulative);
        let mut acc = 0.0;
        let mut cumulative = Vec::with_capacity(gc_keep + 1);
        for (i, row) in gc_rows[..=gc_keep].iter().enumerate() {
            acc += row.to_f64() * u.powi(i as i32);
            cumulative.push(acc * e);
        }
        gc_partials.push(cumulative);
    }
    Ok(ExpansionTable {
        model,
        order,
        dims: dims.to_vec(),
        zc,
        gc,
        zc_partials,
        gc_partials,
    })
}

/// Renders with 15 significant digits; ties round half to even.
pub fn format_float(x: f64) -> String {
    format!("{x:.14e}")
}

/// Growth-constant prediction 1/z_c(d) from the three rigorous
/// critical-point rows of the model.
pub fn lambda_pred(model: Model, d: usize) -> f64 {
    let rows = zc_coefficients(model, 3).expect("three rows are tabulated");
    let u = 1.0 / (2.0 * d as f64);
    let mut sum = 0.0;
    for (i, row) in rows.iter().enumerate() {
        sum += row.to_f64() * u.powi(i as i32 + 1);
    }
    std::f64::consts::E / sum
}

/// Consecutive count ratios against the growth-constant prediction.
#[derive(Clone, Debug)]
pub struct RatioReport {
    pub model: Model,
    pub d: usize,
    pub n_max: usize,
    pub counts: Vec<BigUint>,
    /// ratios[n] = counts[n+1]/counts[n], exact.
    pub ratios: Vec<Coeff>,
    pub lambda_pred: f64,
}

/// Counts clusters through n_max bonds and tabulates successive ratios,
/// which approach the growth constant from below as the size grows.
pub fn ratio_report(
    model: Model,
    d: usize,
    n_max: usize,
    options: &EnumOptions,
) -> Result<RatioReport> {
    let table = count(model, d, n_max, &[], options)?;
    let counts = table.counts;
    let ratios = (0..n_max)
        .map(|n| {
            Coeff::new(
                BigInt::from(counts[n + 1].clone()),
                BigInt::from(counts[n].clone()),
            )
        })
        .collect();
    Ok(RatioReport {
        model,
        d,
        n_max,
        counts,
        ratios,
        lambda_pred: lambda_pred(model, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::coeff_int;

    fn e1(num: i64, den: i64) -> EulerRational {
        EulerRational::from_terms(vec![Coeff::zero(), coeff_ratio(num, den)])
    }

    #[test]
    fn ring_operations_and_rendering() {
        let a = EulerRational::new(coeff_int(2), coeff_ratio(-1, 2), Coeff::zero());
        let b = e1(1, 1);
        assert_eq!(
            &a + &b,
            EulerRational::new(coeff_int(2), coeff_ratio(1, 2), Coeff::zero())
        );
        let product = &a * &b;
        assert_eq!(
            product,
            EulerRational::new(Coeff::zero(), coeff_int(2), coeff_ratio(-1, 2))
        );
        let square = &b * &b;
        assert_eq!(square.term(2), Coeff::one());
        assert!((&a - &a).is_zero());
        assert_eq!(a.to_string(), "2 - 1/2*e^-1");
        assert_eq!(
            EulerRational::new(coeff_ratio(263, 24), coeff_int(-1), Coeff::zero()).to_string(),
            "263/24 - e^-1"
        );
        assert_eq!(EulerRational::zero().to_string(), "0");
        let est = a.to_f64();
        assert!((est - (2.0 - 0.5 / std::f64::consts::E)).abs() < 1e-15);
    }

    #[test]
    fn critical_point_rows_match_the_published_tables() {
        let tree = zc_coefficients(Model::Tree, 6).unwrap();
        let expected = [
            rational(1, 1),
            rational(3, 2),
            rational(115, 24),
            rational(309, 16),
            rational(619103, 5760),
            rational(543967, 768),
        ];
        assert_eq!(tree, expected);
        let animal = zc_coefficients(Model::Animal, 6).unwrap();
        let corrections = [
            EulerRational::zero(),
            EulerRational::zero(),
            e1(-1, 2),
            e1(-2, 1),
            e1(-113, 12),
            EulerRational::from_terms(vec![
                Coeff::zero(),
                coeff_ratio(-395, 12),
                coeff_ratio(-55, 24),
            ]),
        ];
        for n in 0..6 {
            assert_eq!(&animal[n] - &tree[n], corrections[n], "order {}", n + 1);
        }
        assert!(matches!(
            zc_coefficients(Model::Tree, 7),
            Err(Error::ExpansionOrderTooLarge(7))
        ));
    }

    #[test]
    fn one_point_and_correction_rows() {
        assert_eq!(
            gc_coefficients(Model::Tree),
            [rational(1, 1), rational(3, 2), rational(263, 24)]
        );
        let animal = gc_coefficients(Model::Animal);
        assert_eq!(animal[2].to_string(), "263/24 - e^-1");
        assert_eq!(
            pi_coefficients(Model::Tree),
            [rational(-3, 1), rational(-27, 2)]
        );
        assert_eq!(
            pi_coefficients(Model::Animal)[1],
            EulerRational::new(coeff_ratio(-27, 2), coeff_ratio(3, 2), Coeff::zero())
        );
    }

    #[test]
    fn inversion_reproduces_the_rigorous_rows() {
        for model in [Model::Tree, Model::Animal] {
            let direct = zc_coefficients(model, 3).unwrap();
            let inverted = zc_from_inversion(model);
            assert_eq!(direct, inverted, "{model}");
        }
    }

    #[test]
    fn table_flags_and_partial_sums() {
        let table = expansion_table(Model::Animal, 6, &[3, 4]).unwrap();
        assert_eq!(table.zc.len(), 6);
        assert_eq!(table.gc.len(), 3);
        for row in &table.zc {
            assert_eq!(row.rigorous, row.order <= 3, "order {}", row.order);
        }
        assert!(table.gc.iter().all(|row| row.rigorous));
        for partials in &table.zc_partials {
            assert!(partials.windows(2).all(|w| w[0] < w[1]));
            assert!(partials.iter().all(|p| (0.0..1.0).contains(p)));
        }
        assert!(matches!(
            expansion_table(Model::Tree, 7, &[2]),
            Err(Error::ExpansionOrderTooLarge(7))
        ));
        assert!(matches!(
            expansion_table(Model::Tree, 0, &[2]),
            Err(Error::InvalidOrder(0))
        ));
        assert!(matches!(
            expansion_table(Model::Tree, 2, &[0]),
            Err(Error::InvalidDimension(0))
        ));
    }

    #[test]
    fn float_rendering_has_fifteen_digits() {
        assert_eq!(format_float(1.0 / 3.0), "3.33333333333333e-1");
        assert_eq!(format_float(11.7926), "1.17926000000000e1");
    }

    #[test]
    fn growth_prediction_from_three_terms() {
        let expected = std::f64::consts::E * 5184.0 / 1195.0;
        assert!((lambda_pred(Model::Tree, 3) - expected).abs() < 1e-12);
        assert!(lambda_pred(Model::Animal, 3) > lambda_pred(Model::Tree, 3));
    }

    #[test]
    fn one_dimensional_ratios_are_exact() {
        let report = ratio_report(Model::Tree, 1, 10, &EnumOptions::default()).unwrap();
        for (n, ratio) in report.ratios.iter().enumerate() {
            let expected = coeff_ratio(n as i64 + 2, n as i64 + 1);
            assert_eq!(*ratio, expected, "n={n}");
        }
    }

    #[test]
    fn ratios_approach_the_prediction() {
        let report = ratio_report(Model::Tree, 3, 5, &EnumOptions::default()).unwrap();
        let last = report.ratios.last().unwrap().to_f64().unwrap();
        assert!(last < report.lambda_pred);
        assert!(report.lambda_pred / last < 2.0);
    }
}
