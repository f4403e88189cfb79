//! Aberrations, mean aberrations and the Generalized Word Length Pattern.
//!
//! The aberration of a term `X^alpha` is `||c_alpha||^2 / c_0^2`, where
//! `c_alpha` is the coefficient of the fraction's counting function on the
//! monomial basis. Writing the coefficient through the level counts
//! `(n_0, ..., n_{t-1})` of the term gives
//!
//! ```text
//! a = (1/n^2) * sum_k cos(2 pi k / t) * S_k,   S_k = sum_i n_i n_{[i-k]}
//! ```
//!
//! which is rational whenever the cosines are (`t` in {1, 2, 3, 4, 6}) and a
//! double elsewhere. The mean aberration — the average of `a` over all
//! permutations of the counts — is always rational and proportional to the
//! variance of the counts. The GWLP entry `A_j` is the sum of the
//! aberrations of order `j`; for symmetric prime-level designs it equals the
//! sum of the mean aberrations, which this module exploits as a second,
//! independent computation route.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::design::{is_prime, Exponent, Fraction, LevelCounts};
use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rat = Ratio<i128>;

/// Per-entry tolerance when ranking GWLP vectors that carry floating entries.
pub const GMA_TOLERANCE: f64 = 1e-9;

/// Largest `t` accepted by [`mean_aberration_oracle`]; `t!` permutations are
/// enumerated.
pub const ORACLE_MAX_LEVELS: u64 = 8;

fn rat(n: i128) -> Rat {
    Rat::from_integer(n)
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap())
}

/// Rational cosine table `cos(2 pi k / t)` for the values of `t` where all
/// entries are rational.
fn rational_cosines(t: u64) -> Option<Vec<Rat>> {
    let half = Rat::new(1, 2);
    match t {
        1 => Some(vec![rat(1)]),
        2 => Some(vec![rat(1), rat(-1)]),
        3 => Some(vec![rat(1), -half, -half]),
        4 => Some(vec![rat(1), rat(0), rat(-1), rat(0)]),
        6 => Some(vec![rat(1), half, -half, rat(-1), -half, half]),
        _ => None,
    }
}

/// Circular autocorrelations `S_k = sum_i n_i n_{[i-k] mod t}`.
fn circular_products(counts: &[u64]) -> Vec<i128> {
    let t = counts.len();
    (0..t)
        .map(|k| {
            (0..t)
                .map(|i| counts[i] as i128 * counts[(i + t - k) % t] as i128)
                .sum()
        })
        .collect()
}

fn aberration_from_slice(t: u64, counts: &[u64], n: u64) -> AberrationValue {
    let sums = circular_products(counts);
    let n2 = (n as i128) * (n as i128);
    match rational_cosines(t) {
        Some(cos) => {
            let total: Rat = cos
                .iter()
                .zip(&sums)
                .map(|(c, &s)| *c * rat(s))
                .sum();
            let exact = total / rat(n2);
            AberrationValue {
                t,
                approx: rat_to_f64(&exact),
                exact: Some(exact),
            }
        }
        None => {
            let total: f64 = sums
                .iter()
                .enumerate()
                .map(|(k, &s)| s as f64 * (TAU * k as f64 / t as f64).cos())
                .sum();
            AberrationValue {
                t,
                exact: None,
                approx: total / n2 as f64,
            }
        }
    }
}

/// Degree of aliasing of one term; exact when the cosine table for its `t`
/// is rational.
#[derive(Debug, Clone, PartialEq)]
pub struct AberrationValue {
    pub t: u64,
    pub exact: Option<Rat>,
    pub approx: f64,
}

/// `a_alpha` computed from the level counts of the term.
pub fn aberration(counts: &LevelCounts) -> AberrationValue {
    aberration_from_slice(counts.t(), counts.counts(), counts.total())
}

/// Permutation-invariant aberration; always an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MeanAberrationValue {
    pub exact: Rat,
}

impl MeanAberrationValue {
    pub fn approx(&self) -> f64 {
        rat_to_f64(&self.exact)
    }
}

/// Mean of the aberration over all permutations of the counts, in closed
/// form: `(1/(n^2 (t-1))) sum_{i<j} (n_i - n_j)^2`. For `t = 1` the value
/// is 0 by convention.
pub fn mean_aberration(counts: &LevelCounts) -> MeanAberrationValue {
    mean_aberration_from_slice(counts.t(), counts.counts(), counts.total())
}

fn mean_aberration_from_slice(t: u64, counts: &[u64], n: u64) -> MeanAberrationValue {
    if t <= 1 {
        return MeanAberrationValue { exact: rat(0) };
    }
    let mut ssq: i128 = 0;
    for i in 0..counts.len() {
        for j in (i + 1)..counts.len() {
            let d = counts[i] as i128 - counts[j] as i128;
            ssq += d * d;
        }
    }
    let n2 = (n as i128) * (n as i128);
    MeanAberrationValue {
        exact: Rat::new(ssq, n2 * (t as i128 - 1)),
    }
}

/// Brute-force mean aberration: averages [`aberration`] over all `t!`
/// permutations of the counts. Exact for rational-cosine `t`, floating
/// otherwise. Intended as an independent oracle for [`mean_aberration`].
pub fn mean_aberration_oracle(counts: &LevelCounts) -> Result<AberrationValue> {
    let t = counts.t();
    if t > ORACLE_MAX_LEVELS {
        return Err(Error::PermutationSpaceTooLarge {
            t,
            max: ORACLE_MAX_LEVELS,
        });
    }
    let n = counts.total();
    let base = counts.counts().to_vec();
    let exact_mode = rational_cosines(t).is_some();
    let mut exact_sum = rat(0);
    let mut float_sum = 0.0;
    let mut permutations: u64 = 0;
    let mut perm = base.clone();
    permute_all(&mut perm, 0, &mut |arrangement| {
        permutations += 1;
        let a = aberration_from_slice(t, arrangement, n);
        if exact_mode {
            exact_sum += a.exact.unwrap();
        } else {
            float_sum += a.approx;
        }
    });
    if exact_mode {
        let mean = exact_sum / rat(permutations as i128);
        Ok(AberrationValue {
            t,
            approx: rat_to_f64(&mean),
            exact: Some(mean),
        })
    } else {
        Ok(AberrationValue {
            t,
            exact: None,
            approx: float_sum / permutations as f64,
        })
    }
}

fn permute_all(values: &mut [u64], from: usize, visit: &mut impl FnMut(&[u64])) {
    if from == values.len() {
        visit(values);
        return;
    }
    for i in from..values.len() {
        values.swap(from, i);
        permute_all(values, from + 1, visit);
        values.swap(from, i);
    }
}

/// Variance of the counts, `sigma^2 = (sum n_i^2)/t - n^2/t^2`, which the
/// mean aberration is proportional to: `abar = t^2 sigma^2 / (n^2 (t-1))`.
pub fn counts_variance(counts: &LevelCounts) -> Rat {
    let t = counts.t() as i128;
    let n = counts.total() as i128;
    let sum_sq: i128 = counts
        .counts()
        .iter()
        .map(|&c| c as i128 * c as i128)
        .sum();
    Rat::new(sum_sq * t - n * n, t * t)
}

/// Coefficient `c_alpha` of the counting function, carried in exact form as
/// the level counts of `X^alpha` over the ambient cardinality.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficient {
    counts: LevelCounts,
    ambient: u64,
}

impl Coefficient {
    pub fn alpha(&self) -> &Exponent {
        self.counts.alpha()
    }

    pub fn t(&self) -> u64 {
        self.counts.t()
    }

    pub fn level_counts(&self) -> &LevelCounts {
        &self.counts
    }

    /// `#D`, the denominator of the coefficient.
    pub fn ambient(&self) -> u64 {
        self.ambient
    }

    /// Numeric view `(1/#D) sum_h n_{[t-h]} omega_h` as a `(re, im)` pair.
    pub fn value(&self) -> (f64, f64) {
        let t = self.counts.t();
        let counts = self.counts.counts();
        let mut re = 0.0;
        let mut im = 0.0;
        for h in 0..t {
            let weight = counts[((t - h) % t) as usize] as f64;
            let angle = TAU * h as f64 / t as f64;
            re += weight * angle.cos();
            im += weight * angle.sin();
        }
        let d = self.ambient as f64;
        (re / d, im / d)
    }

    pub fn norm_sq(&self) -> f64 {
        let (re, im) = self.value();
        re * re + im * im
    }

    /// `||c_alpha||^2 / c_0^2` from the numeric view; agrees with
    /// [`aberration`] of the same counts up to floating error.
    pub fn aberration_f64(&self) -> f64 {
        let n = self.counts.total() as f64;
        let d = self.ambient as f64;
        self.norm_sq() * (d / n) * (d / n)
    }
}

/// Assembles `c_alpha` from the level counts of the term over the fraction.
pub fn coefficient_from_counts(fraction: &Fraction, alpha: &Exponent) -> Coefficient {
    Coefficient {
        counts: fraction.level_counts(alpha),
        ambient: fraction.design().cardinality(),
    }
}

/// Brute-force numeric coefficient: `(1/#D) sum_zeta X^{[-alpha]}(zeta)`
/// summed directly over the multiset with floating-point phases. Used as an
/// independent oracle for [`coefficient_from_counts`].
pub fn coefficient_direct(fraction: &Fraction, alpha: &Exponent) -> (f64, f64) {
    let design = fraction.design();
    let mut re = 0.0;
    let mut im = 0.0;
    for (point, mult) in fraction.iter() {
        let phase: f64 = alpha
            .entries()
            .iter()
            .zip(point.coords())
            .zip(design.levels())
            .map(|((&a, &k), &s)| a as f64 * k as f64 / s as f64)
            .sum();
        let angle = TAU * phase;
        re += mult as f64 * angle.cos();
        im -= mult as f64 * angle.sin();
    }
    let d = design.cardinality() as f64;
    (re / d, im / d)
}

/// Verifies the coefficient convolution `c_alpha = sum_beta c_beta
/// c_{[alpha-beta]}`, which indicator functions of single-replicate
/// fractions must satisfy. Fractions with repeated points are rejected.
pub fn check_coefficient_convolution(
    fraction: &Fraction,
    alpha: &Exponent,
    tolerance: f64,
) -> Result<bool> {
    if !fraction.is_single_replicate() {
        return Err(Error::NotSingleReplicate {
            multiplicity: fraction.max_multiplicity(),
        });
    }
    let design = fraction.design();
    let coeffs: Vec<(f64, f64)> = design
        .exponents()
        .map(|beta| coefficient_from_counts(fraction, &beta).value())
        .collect();
    let (tr, ti) = coeffs[design.exponent_rank(alpha)];
    let mut sr = 0.0;
    let mut si = 0.0;
    for beta in design.exponents() {
        let gamma = design.exponent_diff(alpha, &beta);
        let (br, bi) = coeffs[design.exponent_rank(&beta)];
        let (gr, gi) = coeffs[design.exponent_rank(&gamma)];
        sr += br * gr - bi * gi;
        si += br * gi + bi * gr;
    }
    let defect = ((tr - sr) * (tr - sr) + (ti - si) * (ti - si)).sqrt();
    Ok(defect < tolerance)
}

/// The GWLP `(A_1, ..., A_m)`; exact rationals when every per-order sum
/// resolves in exact arithmetic, floating otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum GwlpVector {
    Exact(Vec<Rat>),
    Approx(Vec<f64>),
}

impl GwlpVector {
    pub fn len(&self) -> usize {
        match self {
            GwlpVector::Exact(v) => v.len(),
            GwlpVector::Approx(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, GwlpVector::Exact(_))
    }

    pub fn exact_entries(&self) -> Option<&[Rat]> {
        match self {
            GwlpVector::Exact(v) => Some(v),
            GwlpVector::Approx(_) => None,
        }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        match self {
            GwlpVector::Exact(v) => v.iter().map(rat_to_f64).collect(),
            GwlpVector::Approx(v) => v.clone(),
        }
    }
}

/// Classic GWLP route: `A_j` as the sum of the aberrations of order `j`.
///
/// The per-order sums are accumulated as integer autocorrelations grouped by
/// `t`. A group resolves exactly either through the rational cosine table or,
/// for prime `t`, through the equal-tail criterion: a combination
/// `sum_k SS_k omega^k` is rational precisely when `SS_1 = ... = SS_{t-1}`,
/// in which case it equals `SS_0 - SS_1`. Order sums over full Galois orbits
/// always satisfy this, which makes the classic route exact on symmetric
/// prime designs without any complex arithmetic. If a group fails to
/// resolve, the whole vector falls back to floating point.
pub fn gwlp_classic(fraction: &Fraction) -> GwlpVector {
    let design = fraction.design();
    let m = design.factor_count();
    let n2 = (fraction.size() as i128) * (fraction.size() as i128);
    let mut acc: Vec<BTreeMap<u64, Vec<i128>>> = vec![BTreeMap::new(); m];
    for alpha in design.exponents() {
        let order = alpha.order();
        if order == 0 {
            continue;
        }
        let counts = fraction.level_counts(&alpha);
        let sums = circular_products(counts.counts());
        let slot = acc[order - 1]
            .entry(counts.t())
            .or_insert_with(|| vec![0; counts.t() as usize]);
        for (dst, src) in slot.iter_mut().zip(&sums) {
            *dst += src;
        }
    }

    let mut exact = Vec::with_capacity(m);
    for groups in &acc {
        let mut total = rat(0);
        let mut resolved = true;
        for (&t, ss) in groups {
            match resolve_group_exact(t, ss) {
                Some(v) => total += v,
                None => {
                    resolved = false;
                    break;
                }
            }
        }
        if !resolved {
            let approx = acc
                .iter()
                .map(|groups| {
                    groups
                        .iter()
                        .map(|(&t, ss)| {
                            ss.iter()
                                .enumerate()
                                .map(|(k, &v)| v as f64 * (TAU * k as f64 / t as f64).cos())
                                .sum::<f64>()
                        })
                        .sum::<f64>()
                        / n2 as f64
                })
                .collect();
            return GwlpVector::Approx(approx);
        }
        exact.push(total / rat(n2));
    }
    GwlpVector::Exact(exact)
}

fn resolve_group_exact(t: u64, ss: &[i128]) -> Option<Rat> {
    if let Some(cos) = rational_cosines(t) {
        return Some(cos.iter().zip(ss).map(|(c, &s)| *c * rat(s)).sum());
    }
    if is_prime(t) && ss[1..].iter().all(|&v| v == ss[1]) {
        return Some(rat(ss[0] - ss[1]));
    }
    None
}

/// Mean-aberration GWLP route: `A_j` as the sum of the mean aberrations of
/// order `j`. Defined for symmetric designs with a prime number of levels;
/// always exact.
pub fn gwlp_mean(fraction: &Fraction) -> Result<GwlpVector> {
    let design = fraction.design();
    if design.symmetric_prime_level().is_none() {
        return Err(Error::NotSymmetricPrime {
            levels: design.levels().to_vec(),
        });
    }
    let m = design.factor_count();
    let mut sums = vec![rat(0); m];
    for alpha in design.exponents() {
        let order = alpha.order();
        if order == 0 {
            continue;
        }
        sums[order - 1] += mean_aberration(&fraction.level_counts(&alpha)).exact;
    }
    Ok(GwlpVector::Exact(sums))
}

/// Outcome of a GMA comparison, relative to the first argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmaOrdering {
    Better,
    Worse,
    Equal,
}

/// Generalized minimum aberration: sequential (lexicographic) comparison of
/// GWLP vectors. Two exact vectors compare exactly; as soon as a floating
/// vector is involved, entries within [`GMA_TOLERANCE`] count as equal.
pub fn gma_compare(a: &GwlpVector, b: &GwlpVector) -> Result<GmaOrdering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if let (GwlpVector::Exact(x), GwlpVector::Exact(y)) = (a, b) {
        for (u, v) in x.iter().zip(y) {
            if u < v {
                return Ok(GmaOrdering::Better);
            }
            if u > v {
                return Ok(GmaOrdering::Worse);
            }
        }
        return Ok(GmaOrdering::Equal);
    }
    let x = a.to_f64_vec();
    let y = b.to_f64_vec();
    for (u, v) in x.iter().zip(&y) {
        if (u - v).abs() <= GMA_TOLERANCE {
            continue;
        }
        return Ok(if u < v {
            GmaOrdering::Better
        } else {
            GmaOrdering::Worse
        });
    }
    Ok(GmaOrdering::Equal)
}

/// Histogram of the exact mean aberrations over all exponents of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AberrationDistribution {
    order: usize,
    histogram: BTreeMap<Rat, u64>,
}

impl AberrationDistribution {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Rows keyed by exact value, ascending.
    pub fn histogram(&self) -> &BTreeMap<Rat, u64> {
        &self.histogram
    }

    /// Number of exponents covered; equals the order's lattice census.
    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }

    /// `sum value * count`; reproduces the GWLP entry of the same order on
    /// symmetric prime designs.
    pub fn weighted_sum(&self) -> Rat {
        self.histogram
            .iter()
            .map(|(value, &count)| *value * rat(count as i128))
            .sum()
    }
}

/// Classifies the mean aberrations of all exponents of the given order.
pub fn aberration_distribution(
    fraction: &Fraction,
    order: usize,
) -> Result<AberrationDistribution> {
    let design = fraction.design();
    let m = design.factor_count();
    if order < 1 || order > m {
        return Err(Error::OrderOutOfRange { order, max: m });
    }
    let mut histogram = BTreeMap::new();
    for alpha in design.exponents() {
        if alpha.order() != order {
            continue;
        }
        let value = mean_aberration(&fraction.level_counts(&alpha)).exact;
        *histogram.entry(value).or_insert(0) += 1;
    }
    Ok(AberrationDistribution { order, histogram })
}

impl AberrationValue {
    /// Whether the value is zero, exactly when exact and within `1e-12`
    /// otherwise.
    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(r) => r.is_zero(),
            None => self.approx.abs() < 1e-12,
        }
    }
}

impl std::fmt::Display for AberrationValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.exact {
            Some(r) => {
                if r.denom() == &1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            None => write!(f, "{}", self.approx),
        }
    }
}

impl std::fmt::Display for MeanAberrationValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exact.denom() == &1 {
            write!(f, "{}", self.exact.numer())
        } else {
            write!(f, "{}/{}", self.exact.numer(), self.exact.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{DesignSpec, Fraction};

    fn design(levels: &[u32]) -> DesignSpec {
        DesignSpec::new(levels.to_vec()).unwrap()
    }

    fn half_replicate_2cubed() -> Fraction {
        let d = design(&[2, 2, 2]);
        Fraction::from_rows(
            d,
            [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]].map(|r| r.to_vec()),
        )
        .unwrap()
    }

    fn cyclic_5cubed() -> Fraction {
        let d = design(&[5, 5, 5]);
        let rows = (0..5).flat_map(|i| (0..5).map(move |j| vec![i, j, (i + j) % 5]));
        Fraction::from_rows(d, rows).unwrap()
    }

    fn counts(t: u64, values: &[u64]) -> LevelCounts {
        let d = design(&[t as u32]);
        let alpha = d.exponent(vec![1]).unwrap();
        LevelCounts::from_counts(alpha, t, values.to_vec()).unwrap()
    }

    #[test]
    fn aberration_examples() {
        assert_eq!(aberration(&counts(2, &[4, 0])).exact, Some(rat(1)));
        assert_eq!(aberration(&counts(3, &[3, 3, 3])).exact, Some(rat(0)));
        // 6-level counts (u0+h, u1, u0, u1+h, u0, u1) with u0 = u1 = h = 1
        assert_eq!(
            aberration(&counts(6, &[2, 1, 1, 2, 1, 1])).exact,
            Some(rat(0))
        );
        assert_eq!(aberration(&counts(4, &[1, 2, 1, 2])).exact, Some(rat(0)));
        assert_eq!(
            aberration(&counts(2, &[2, 4])).exact,
            Some(Rat::new(1, 9))
        );
    }

    #[test]
    fn six_level_permutations_split_the_zero_aberration() {
        // swapping the first two counts
        assert_eq!(
            aberration(&counts(6, &[1, 2, 1, 2, 1, 1])).exact,
            Some(Rat::new(1, 64))
        );
        // swapping the first and third counts
        assert_eq!(
            aberration(&counts(6, &[1, 1, 2, 2, 1, 1])).exact,
            Some(Rat::new(3, 64))
        );
        // all three arrangements share the mean aberration 1/40
        for arrangement in [
            [2, 1, 1, 2, 1, 1],
            [1, 2, 1, 2, 1, 1],
            [1, 1, 2, 2, 1, 1],
        ] {
            assert_eq!(
                mean_aberration(&counts(6, &arrangement)).exact,
                Rat::new(1, 40)
            );
        }
    }

    #[test]
    fn closed_forms_match_for_small_t() {
        // exhaustive over count vectors with n <= 30
        for n0 in 0u64..=30 {
            for n1 in 0..=(30 - n0) {
                let n = n0 + n1;
                if n == 0 {
                    continue;
                }
                let poly = rat((n0 * n0 + n1 * n1) as i128 - 2 * (n0 * n1) as i128);
                let got = aberration(&counts(2, &[n0, n1])).exact.unwrap();
                assert_eq!(got, poly / rat((n * n) as i128));
            }
        }
        for n0 in 0u64..=18 {
            for n1 in 0..=(18 - n0) {
                for n2 in 0..=(18 - n0 - n1) {
                    let n = n0 + n1 + n2;
                    if n == 0 {
                        continue;
                    }
                    let [a, b, c] = [n0 as i128, n1 as i128, n2 as i128];
                    let poly = rat(a * a + b * b + c * c - a * c - b * a - c * b);
                    let got = aberration(&counts(3, &[n0, n1, n2])).exact.unwrap();
                    assert_eq!(got, poly / rat((n * n) as i128));
                }
            }
        }
        for n0 in 0u64..=8 {
            for n1 in 0..=8u64 {
                for n2 in 0..=8u64 {
                    for n3 in 0..=8u64 {
                        let n = n0 + n1 + n2 + n3;
                        if n == 0 || n > 30 {
                            continue;
                        }
                        let [a, b, c, d] = [n0 as i128, n1 as i128, n2 as i128, n3 as i128];
                        let poly = rat(a * a + b * b + c * c + d * d - 2 * a * c - 2 * b * d);
                        let got = aberration(&counts(4, &[n0, n1, n2, n3])).exact.unwrap();
                        assert_eq!(got, poly / rat((n * n) as i128));
                    }
                }
            }
        }
    }

    #[test]
    fn mean_aberration_examples() {
        assert_eq!(
            mean_aberration(&counts(4, &[1, 2, 1, 2])).exact,
            Rat::new(1, 27)
        );
        assert_eq!(
            mean_aberration(&counts(6, &[2, 1, 1, 2, 1, 1])).exact,
            Rat::new(1, 40)
        );
        assert_eq!(
            mean_aberration(&counts(5, &[5, 5, 5, 5, 5])).exact,
            rat(0)
        );
    }

    #[test]
    fn oracle_examples() {
        let o = mean_aberration_oracle(&counts(3, &[9, 0, 0])).unwrap();
        assert_eq!(o.exact, Some(rat(1)));

        let o = mean_aberration_oracle(&counts(4, &[1, 2, 1, 2])).unwrap();
        assert_eq!(o.exact, Some(Rat::new(1, 27)));

        // for t = 2 the aberration itself is permutation-invariant
        for pair in [[3, 5], [8, 0], [1, 1]] {
            let c = counts(2, &pair);
            assert_eq!(
                mean_aberration_oracle(&c).unwrap().exact,
                aberration(&c).exact
            );
        }

        let big = counts(9, &[1; 9]);
        assert!(matches!(
            mean_aberration_oracle(&big),
            Err(Error::PermutationSpaceTooLarge { t: 9, .. })
        ));
    }

    #[test]
    fn variance_examples_and_identity() {
        assert_eq!(counts_variance(&counts(3, &[3, 3, 3])), rat(0));
        assert_eq!(counts_variance(&counts(3, &[9, 0, 0])), rat(18));
        assert_eq!(counts_variance(&counts(4, &[1, 2, 1, 2])), Rat::new(1, 4));

        for (t, values) in [
            (3u64, vec![9u64, 0, 0]),
            (4, vec![1, 2, 1, 2]),
            (5, vec![2, 0, 7, 1, 1]),
            (6, vec![2, 1, 1, 2, 1, 1]),
        ] {
            let c = counts(t, &values);
            let n = c.total() as i128;
            let sigma2 = counts_variance(&c);
            let expected = Rat::new((t * t) as i128, n * n * (t as i128 - 1)) * sigma2;
            assert_eq!(mean_aberration(&c).exact, expected);
        }
    }

    #[test]
    fn coefficient_examples() {
        let f = half_replicate_2cubed();
        let d = f.design().clone();

        let zero = d.zero_exponent();
        let c0 = coefficient_from_counts(&f, &zero);
        let (re, im) = c0.value();
        assert_eq!(re, 4.0 / 8.0);
        assert_eq!(im, 0.0);

        let parity = d.exponent(vec![1, 1, 1]).unwrap();
        let c = coefficient_from_counts(&f, &parity);
        let (re, im) = c.value();
        assert!((re - 0.5).abs() < 1e-15 && im.abs() < 1e-15);
        let (dre, dim) = coefficient_direct(&f, &parity);
        assert!((dre - 0.5).abs() < 1e-12 && dim.abs() < 1e-12);

        let f5 = cyclic_5cubed();
        let alpha = f5.design().exponent(vec![1, 1, 1]).unwrap();
        let (re, im) = coefficient_from_counts(&f5, &alpha).value();
        assert!(re.abs() < 1e-12 && im.abs() < 1e-12);

        // balanced single 3-level factor: the coefficient vanishes
        let d3 = design(&[3]);
        let f3 = Fraction::from_rows(d3.clone(), [vec![0], vec![1], vec![2]]).unwrap();
        let (re, im) = coefficient_direct(&f3, &d3.exponent(vec![1]).unwrap());
        assert!(re.abs() < 1e-15 && im.abs() < 1e-15);
    }

    #[test]
    fn convolution_check_examples() {
        let f = half_replicate_2cubed();
        let d = f.design().clone();
        let parity = d.exponent(vec![1, 1, 1]).unwrap();
        assert!(check_coefficient_convolution(&f, &parity, 1e-9).unwrap());
        assert!(check_coefficient_convolution(&f, &d.zero_exponent(), 1e-9).unwrap());

        let d2 = design(&[2, 2]);
        let dup = Fraction::from_rows(d2.clone(), [vec![0, 0], vec![0, 0], vec![1, 1]]).unwrap();
        let alpha = d2.exponent(vec![1, 1]).unwrap();
        assert!(matches!(
            check_coefficient_convolution(&dup, &alpha, 1e-9),
            Err(Error::NotSingleReplicate { multiplicity: 2 })
        ));
    }

    #[test]
    fn gwlp_classic_examples() {
        let f5 = cyclic_5cubed();
        let gwlp = gwlp_classic(&f5);
        assert_eq!(
            gwlp.exact_entries().unwrap(),
            &[rat(0), rat(0), rat(4)][..]
        );

        let full = Fraction::full(design(&[2, 2, 2]));
        assert_eq!(
            gwlp_classic(&full).exact_entries().unwrap(),
            &[rat(0); 3][..]
        );

        let d4 = design(&[4]);
        let f4 = Fraction::new(
            d4.clone(),
            (0..4u32).map(|k| (d4.point(vec![k]).unwrap(), [1u64, 2, 1, 2][k as usize])),
        )
        .unwrap();
        assert_eq!(
            gwlp_classic(&f4).exact_entries().unwrap(),
            &[Rat::new(1, 9)][..]
        );
    }

    #[test]
    fn gwlp_mean_examples() {
        let f5 = cyclic_5cubed();
        assert_eq!(gwlp_mean(&f5).unwrap(), gwlp_classic(&f5));

        let f2 = half_replicate_2cubed();
        assert_eq!(
            gwlp_mean(&f2).unwrap().exact_entries().unwrap(),
            &[rat(0), rat(0), rat(1)][..]
        );

        let d4 = design(&[4]);
        let f4 = Fraction::new(
            d4.clone(),
            (0..4u32).map(|k| (d4.point(vec![k]).unwrap(), [1u64, 2, 1, 2][k as usize])),
        )
        .unwrap();
        assert!(matches!(
            gwlp_mean(&f4),
            Err(Error::NotSymmetricPrime { .. })
        ));
        // the two notions genuinely differ here: sum of mean aberrations is 5/27
        let sum: Rat = (1..4u32)
            .map(|a| {
                let alpha = d4.exponent(vec![a]).unwrap();
                mean_aberration(&f4.level_counts(&alpha)).exact
            })
            .sum();
        assert_eq!(sum, Rat::new(5, 27));
    }

    #[test]
    fn gma_compare_examples() {
        let a = GwlpVector::Exact(vec![rat(0), rat(0), rat(4)]);
        assert_eq!(gma_compare(&a, &a).unwrap(), GmaOrdering::Equal);

        let b = GwlpVector::Exact(vec![rat(0), rat(0), rat(8), rat(18)]);
        let c = GwlpVector::Exact(vec![rat(0), rat(0), rat(8), rat(20)]);
        assert_eq!(gma_compare(&b, &c).unwrap(), GmaOrdering::Better);

        let d = GwlpVector::Exact(vec![rat(0), rat(1), rat(0)]);
        let e = GwlpVector::Exact(vec![rat(0), rat(0), rat(9)]);
        assert_eq!(gma_compare(&d, &e).unwrap(), GmaOrdering::Worse);

        assert!(gma_compare(&a, &b).is_err());

        let f = GwlpVector::Approx(vec![0.0, 4.0 + 1e-12]);
        let g = GwlpVector::Exact(vec![rat(0), rat(4)]);
        assert_eq!(gma_compare(&f, &g).unwrap(), GmaOrdering::Equal);
    }

    #[test]
    fn distribution_examples() {
        let f5 = cyclic_5cubed();
        let dist = aberration_distribution(&f5, 3).unwrap();
        let rows: Vec<_> = dist.histogram().iter().map(|(k, &v)| (*k, v)).collect();
        assert_eq!(rows, vec![(rat(0), 60), (rat(1), 4)]);
        assert_eq!(dist.total(), f5.design().exponents_of_order(3));
        assert_eq!(dist.weighted_sum(), rat(4));

        let full3 = Fraction::full(design(&[3, 3, 3]));
        let dist = aberration_distribution(&full3, 2).unwrap();
        assert_eq!(
            dist.histogram().iter().collect::<Vec<_>>(),
            vec![(&rat(0), &12)]
        );

        let f2 = half_replicate_2cubed();
        let dist = aberration_distribution(&f2, 3).unwrap();
        assert_eq!(
            dist.histogram().iter().collect::<Vec<_>>(),
            vec![(&rat(1), &1)]
        );

        assert!(matches!(
            aberration_distribution(&f2, 4),
            Err(Error::OrderOutOfRange { order: 4, max: 3 })
        ));
        assert!(matches!(
            aberration_distribution(&f2, 0),
            Err(Error::OrderOutOfRange { order: 0, max: 3 })
        ));
    }

    #[test]
    fn coefficient_norm_matches_aberration() {
        let f = cyclic_5cubed();
        let d = f.design().clone();
        for alpha in d.exponents() {
            let c = coefficient_from_counts(&f, &alpha);
            let a = aberration(&f.level_counts(&alpha));
            assert!((c.aberration_f64() - a.approx).abs() < 1e-12);
        }
    }

    #[test]
    fn equivalence_classes_for_five_levels() {
        // distinct aberration values over all 120 permutations: at most (t-1)!/2 = 12
        let base = [1u64, 2, 3, 4, 5];
        let mut values: Vec<f64> = Vec::new();
        let mut perm = base.to_vec();
        permute_all(&mut perm, 0, &mut |arr| {
            values.push(aberration_from_slice(5, arr, 15).approx);
        });
        values.sort_by(f64::total_cmp);
        let mut distinct = 1;
        for w in values.windows(2) {
            if (w[1] - w[0]).abs() > 1e-9 {
                distinct += 1;
            }
        }
        assert!(distinct <= 12, "found {distinct} distinct values");
    }
}
