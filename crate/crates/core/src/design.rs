//! Full factorial designs, fractions as multisets, and evaluation of
//! simple/interaction terms over the integer coding of the roots of unity.
//!
//! A design with level counts `(s_1, ..., s_m)` codes the levels of factor
//! `j` as the `s_j`-th roots of unity. Points and exponents are stored in
//! integer coding only; the complex values are never materialized here. A
//! term `X^alpha` evaluated at a point yields the index `h` of the root
//! `omega_h` among the `t_alpha` values the term can take.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The ambient full factorial design: per-factor level counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignSpec {
    levels: Vec<u32>,
    cardinality: u64,
    level_lcm: u64,
}

impl DesignSpec {
    /// Validates the level list and computes the cardinality `prod s_j`.
    pub fn new(levels: impl Into<Vec<u32>>) -> Result<Self> {
        let levels = levels.into();
        if levels.is_empty() {
            return Err(Error::EmptyDesign);
        }
        for (index, &s) in levels.iter().enumerate() {
            if s < 2 {
                return Err(Error::InvalidLevelCount { index, value: s });
            }
        }
        let mut cardinality: u64 = 1;
        let mut level_lcm: u64 = 1;
        for &s in &levels {
            cardinality = cardinality
                .checked_mul(u64::from(s))
                .ok_or(Error::DesignTooLarge)?;
            level_lcm = level_lcm.lcm(&u64::from(s));
        }
        Ok(Self {
            levels,
            cardinality,
            level_lcm,
        })
    }

    /// Number of factors `m`.
    pub fn factor_count(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    /// `#D`, the number of points of the full factorial design.
    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// Least common multiple of the per-factor level counts.
    pub fn level_lcm(&self) -> u64 {
        self.level_lcm
    }

    pub fn is_symmetric(&self) -> bool {
        self.levels.iter().all(|&s| s == self.levels[0])
    }

    /// For a symmetric `s^m` design with `s` prime, returns `s`.
    pub fn symmetric_prime_level(&self) -> Option<u32> {
        if self.is_symmetric() && is_prime(u64::from(self.levels[0])) {
            Some(self.levels[0])
        } else {
            None
        }
    }

    /// Builds a validated exponent of the lattice `L = Z_{s_1} x ... x Z_{s_m}`.
    pub fn exponent(&self, entries: impl Into<Vec<u32>>) -> Result<Exponent> {
        let entries = entries.into();
        self.check_entries(&entries)?;
        Ok(Exponent { entries })
    }

    /// Builds a validated design point in integer coding.
    pub fn point(&self, coords: impl Into<Vec<u32>>) -> Result<Point> {
        let coords = coords.into();
        self.check_entries(&coords)?;
        Ok(Point { coords })
    }

    fn check_entries(&self, entries: &[u32]) -> Result<()> {
        if entries.len() != self.levels.len() {
            return Err(Error::LengthMismatch {
                expected: self.levels.len(),
                got: entries.len(),
            });
        }
        for (index, (&value, &bound)) in entries.iter().zip(&self.levels).enumerate() {
            if value >= bound {
                return Err(Error::EntryOutOfRange {
                    index,
                    value,
                    bound,
                });
            }
        }
        Ok(())
    }

    pub fn zero_exponent(&self) -> Exponent {
        Exponent {
            entries: vec![0; self.levels.len()],
        }
    }

    /// Iterates the whole exponent lattice in lexicographic order (first
    /// coordinate most significant). The position of an exponent in this
    /// sequence equals [`DesignSpec::exponent_rank`].
    pub fn exponents(&self) -> impl Iterator<Item = Exponent> + '_ {
        MixedRadixIter::new(&self.levels).map(|entries| Exponent { entries })
    }

    /// Iterates all points of the full design in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        MixedRadixIter::new(&self.levels).map(|coords| Point { coords })
    }

    /// Mixed-radix rank of an exponent within the lexicographic lattice scan.
    pub fn exponent_rank(&self, alpha: &Exponent) -> usize {
        debug_assert_eq!(alpha.entries.len(), self.levels.len());
        let mut rank = 0usize;
        for (&a, &s) in alpha.entries.iter().zip(&self.levels) {
            rank = rank * s as usize + a as usize;
        }
        rank
    }

    /// Number of lattice exponents of a given interaction order, i.e. the
    /// elementary symmetric function of the `(s_j - 1)` of the chosen factors.
    pub fn exponents_of_order(&self, order: usize) -> u64 {
        let m = self.levels.len();
        let mut census = vec![0u64; m + 1];
        census[0] = 1;
        for &s in &self.levels {
            for j in (1..=m).rev() {
                census[j] += census[j - 1] * u64::from(s - 1);
            }
        }
        census.get(order).copied().unwrap_or(0)
    }

    /// `t_alpha`: the number of distinct values the term `X^alpha` takes on
    /// the full design. Zero entries contribute `t_j = 1`.
    pub fn term_levels(&self, alpha: &Exponent) -> u64 {
        debug_assert_eq!(alpha.entries.len(), self.levels.len());
        let mut t: u64 = 1;
        for (&a, &s) in alpha.entries.iter().zip(&self.levels) {
            let s = u64::from(s);
            let tj = s / u64::from(a).gcd(&s);
            t = t.lcm(&tj);
        }
        t
    }

    /// Evaluates `X^alpha` at a point, returning the index `h` of the value
    /// `omega_h` among the `t_alpha`-th roots of unity.
    ///
    /// Everything stays in integer arithmetic: with `D = lcm(s_1, ..., s_m)`,
    /// the exponent of the primitive `D`-th root is `e = sum_j a_j k_j (D/s_j)
    /// mod D`, and `h = e t_alpha / D` is exact.
    pub fn eval_term(&self, alpha: &Exponent, point: &Point) -> u64 {
        debug_assert_eq!(alpha.entries.len(), self.levels.len());
        debug_assert_eq!(point.coords.len(), self.levels.len());
        let d = self.level_lcm;
        let mut e: u64 = 0;
        for ((&a, &k), &s) in alpha.entries.iter().zip(&point.coords).zip(&self.levels) {
            let stride = d / u64::from(s);
            e = (e + u64::from(a) * u64::from(k) % u64::from(s) * stride) % d;
        }
        let t = self.term_levels(alpha);
        let num = e * t;
        assert!(
            num % d == 0,
            "term value index {e} is not a multiple of D/t = {}",
            d / t
        );
        num / d
    }

    /// Componentwise `[alpha_j - beta_j] mod s_j`.
    pub fn exponent_diff(&self, alpha: &Exponent, beta: &Exponent) -> Exponent {
        let entries = alpha
            .entries
            .iter()
            .zip(&beta.entries)
            .zip(&self.levels)
            .map(|((&a, &b), &s)| (a + s - b) % s)
            .collect();
        Exponent { entries }
    }

    /// Componentwise `[-alpha_j] mod s_j`.
    pub fn exponent_neg(&self, alpha: &Exponent) -> Exponent {
        self.exponent_diff(&self.zero_exponent(), alpha)
    }

    /// Componentwise `[h * alpha_j] mod s_j`, the exponent of `X^alpha` raised
    /// to the `h`-th power.
    pub fn exponent_scale(&self, h: u64, alpha: &Exponent) -> Exponent {
        let entries = alpha
            .entries
            .iter()
            .zip(&self.levels)
            .map(|(&a, &s)| ((u64::from(a) * h) % u64::from(s)) as u32)
            .collect();
        Exponent { entries }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A point of the exponent lattice `L`; indexes the term `X^alpha`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    entries: Vec<u32>,
}

impl Exponent {
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Interaction order: the number of nonzero entries.
    pub fn order(&self) -> usize {
        self.entries.iter().filter(|&&a| a != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.entries)
    }
}

/// A run of the design in integer coding; coordinate `k_j` stands for the
/// root of unity `omega_{k_j}` of factor `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<u32>,
}

impl Point {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.coords)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, entries: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, ")")
}

/// A fraction: a multiset of design points with positive multiplicities,
/// i.e. the support of a counting function. Points iterate in lexicographic
/// order so that every scan over a fraction is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    design: DesignSpec,
    points: BTreeMap<Point, u64>,
    size: u64,
}

impl Fraction {
    /// Builds a fraction from `(point, multiplicity)` pairs, aggregating
    /// repeated points. Points outside the design's level ranges are
    /// rejected rather than reduced.
    pub fn new(design: DesignSpec, multiset: impl IntoIterator<Item = (Point, u64)>) -> Result<Self> {
        let mut points = BTreeMap::new();
        let mut size: u64 = 0;
        for (point, mult) in multiset {
            design.check_entries(&point.coords)?;
            if mult == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            *points.entry(point).or_insert(0) += mult;
            size += mult;
        }
        if points.is_empty() {
            return Err(Error::EmptyFraction);
        }
        Ok(Self {
            design,
            points,
            size,
        })
    }

    /// Builds a fraction from raw coordinate rows; duplicate rows accumulate
    /// multiplicity.
    pub fn from_rows<R>(design: DesignSpec, rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: Into<Vec<u32>>,
    {
        let mut multiset = Vec::new();
        for row in rows {
            let point = design.point(row)?;
            multiset.push((point, 1));
        }
        Fraction::new(design, multiset)
    }

    /// The full design taken once per point.
    pub fn full(design: DesignSpec) -> Self {
        let points = design.points().map(|p| (p, 1)).collect();
        let size = design.cardinality();
        Self {
            design,
            points,
            size,
        }
    }

    pub fn design(&self) -> &DesignSpec {
        &self.design
    }

    /// Run size `n` (multiplicities included).
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn is_single_replicate(&self) -> bool {
        self.points.values().all(|&m| m == 1)
    }

    /// Largest multiplicity in the multiset.
    pub fn max_multiplicity(&self) -> u64 {
        self.points.values().copied().max().unwrap_or(0)
    }

    /// `(point, multiplicity)` pairs in lexicographic point order.
    pub fn iter(&self) -> impl Iterator<Item = (&Point, u64)> + '_ {
        self.points.iter().map(|(p, &m)| (p, m))
    }

    pub fn support_len(&self) -> usize {
        self.points.len()
    }

    /// Occurrence counts of the values of `X^alpha` over the fraction:
    /// `counts[h]` is the number of runs (with multiplicity) on which the
    /// term evaluates to `omega_h`.
    pub fn level_counts(&self, alpha: &Exponent) -> LevelCounts {
        let t = self.design.term_levels(alpha);
        let mut counts = vec![0u64; t as usize];
        for (point, mult) in self.iter() {
            let h = self.design.eval_term(alpha, point);
            counts[h as usize] += mult;
        }
        LevelCounts {
            alpha: alpha.clone(),
            t,
            counts,
        }
    }
}

/// Occurrence vector of the `t_alpha` roots of unity taken by a term on a
/// fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCounts {
    alpha: Exponent,
    t: u64,
    counts: Vec<u64>,
}

impl LevelCounts {
    /// Assembles a count vector directly; `counts.len()` must equal `t`.
    pub fn from_counts(alpha: Exponent, t: u64, counts: impl Into<Vec<u64>>) -> Result<Self> {
        let counts = counts.into();
        if counts.len() != t as usize {
            return Err(Error::CountLength {
                expected: t as usize,
                got: counts.len(),
            });
        }
        Ok(Self { alpha, t, counts })
    }

    pub fn alpha(&self) -> &Exponent {
        &self.alpha
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of runs, i.e. the sum of the counts.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The count vector of the conjugate term `X^{[-alpha]}`: index 0 stays
    /// fixed and the remaining entries reverse.
    pub fn conjugate_counts(&self) -> Vec<u64> {
        let t = self.t as usize;
        (0..t).map(|k| self.counts[(t - k) % t]).collect()
    }
}

/// Lexicographic mixed-radix counter over `prod [0, radix_j)`.
struct MixedRadixIter<'a> {
    radices: &'a [u32],
    next: Option<Vec<u32>>,
}

impl<'a> MixedRadixIter<'a> {
    fn new(radices: &'a [u32]) -> Self {
        Self {
            radices,
            next: Some(vec![0; radices.len()]),
        }
    }
}

impl Iterator for MixedRadixIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = self.radices.len();
        loop {
            if pos == 0 {
                // wrapped past the last tuple
                self.next = None;
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.radices[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}
