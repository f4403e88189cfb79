//! Convolution identities among level-count families and admissibility of
//! candidate count configurations.
//!
//! For a single-replicate fraction of a symmetric `s^m` design with `s`
//! prime, the full family of level counts `{n_alpha}` satisfies, for every
//! `alpha`, the equality of the `s` residuals
//!
//! ```text
//! r_{alpha,k} = #D n_{alpha,k} - sum_beta sum_i n_{beta,i} n_{[alpha-beta],[k-i]}
//! ```
//!
//! i.e. `r_{alpha,0} = ... = r_{alpha,s-1}`. Admissibility of a candidate
//! family is decided by evaluating these residuals in exact integer
//! arithmetic. The enumeration of admissible completions additionally uses
//! an equivalent reformulation: because `s` is prime, a vector of residuals
//! is constant exactly when the polynomial `sum_k r_k x^k` vanishes modulo
//! the cyclotomic polynomial `1 + x + ... + x^{s-1}`, so each count vector
//! can be reduced to `s - 1` integer coordinates and balanced vectors drop
//! out of the convolution entirely. Every completion that survives the
//! reduced check is re-verified against the direct residual definition.

use std::collections::BTreeMap;

use crate::design::{DesignSpec, Exponent, Fraction};
use crate::error::{Error, Result};

/// Default candidate budget for [`enumerate_admissible`].
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// Complete assignment of a level-count vector of length `s` to every
/// exponent of the lattice of a symmetric prime design.
///
/// Constraints enforced at construction: every member sums to the run size
/// (C1), the zero exponent carries `(n, 0, ..., 0)` (C2), and conjugate
/// exponents carry reversed counts (C3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountFamily {
    design: DesignSpec,
    s: u32,
    n: u64,
    counts: Vec<Vec<u64>>,
}

impl CountFamily {
    /// Assembles a family from per-exponent count vectors. The zero
    /// exponent may be omitted (it is forced by C2); a member whose
    /// conjugate is omitted fills it by reversal.
    pub fn new(
        design: &DesignSpec,
        n: u64,
        members: &BTreeMap<Exponent, Vec<u64>>,
    ) -> Result<Self> {
        let s = require_symmetric_prime(design)?;
        let size = design.cardinality() as usize;
        let mut table: Vec<Option<Vec<u64>>> = vec![None; size];
        let mut zero = vec![0u64; s as usize];
        zero[0] = n;
        table[0] = Some(zero);

        for (alpha, counts) in members {
            validate_member(alpha, counts, s, n)?;
            let rank = design.exponent_rank(alpha);
            if rank == 0 {
                if counts != table[0].as_ref().unwrap() {
                    return Err(Error::FamilyConstraint {
                        constraint: "C2",
                        alpha: alpha.to_string(),
                    });
                }
                continue;
            }
            table[rank] = Some(counts.clone());
        }

        // C3: fill or cross-check conjugates
        for rank in 1..size {
            let alpha = rank_to_exponent(design, rank);
            let neg_rank = design.exponent_rank(&design.exponent_neg(&alpha));
            let (a, b) = (table[rank].clone(), table[neg_rank].clone());
            match (a, b) {
                (Some(v), Some(w)) => {
                    if reversed_counts(&v) != w {
                        return Err(Error::FamilyConstraint {
                            constraint: "C3",
                            alpha: alpha.to_string(),
                        });
                    }
                }
                (Some(v), None) => table[neg_rank] = Some(reversed_counts(&v)),
                (None, Some(w)) => table[rank] = Some(reversed_counts(&w)),
                (None, None) => {
                    return Err(Error::FamilyIncomplete {
                        alpha: alpha.to_string(),
                    })
                }
            }
        }

        let counts = table.into_iter().map(Option::unwrap).collect();
        Ok(Self {
            design: design.clone(),
            s,
            n,
            counts,
        })
    }

    fn from_table(design: &DesignSpec, s: u32, n: u64, counts: Vec<Vec<u64>>) -> Self {
        Self {
            design: design.clone(),
            s,
            n,
            counts,
        }
    }

    pub fn design(&self) -> &DesignSpec {
        &self.design
    }

    /// Run size `n`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The common number of levels `s`.
    pub fn level(&self) -> u32 {
        self.s
    }

    pub fn counts(&self, alpha: &Exponent) -> &[u64] {
        &self.counts[self.design.exponent_rank(alpha)]
    }

    pub(crate) fn counts_by_rank(&self, rank: usize) -> &[u64] {
        &self.counts[rank]
    }

    /// The family with every member replaced by its conjugate-reversed
    /// counts; by C3 this permutes the members among conjugate exponents.
    pub fn conjugate_image(&self) -> CountFamily {
        let counts = self.counts.iter().map(|v| reversed_counts(v)).collect();
        Self {
            design: self.design.clone(),
            s: self.s,
            n: self.n,
            counts,
        }
    }
}

fn validate_member(alpha: &Exponent, counts: &[u64], s: u32, n: u64) -> Result<()> {
    if counts.len() != s as usize {
        return Err(Error::CountLength {
            expected: s as usize,
            got: counts.len(),
        });
    }
    let total: u64 = counts.iter().sum();
    if total != n {
        return Err(Error::CountSum {
            alpha: alpha.to_string(),
            expected: n,
            got: total,
        });
    }
    Ok(())
}

fn require_symmetric_prime(design: &DesignSpec) -> Result<u32> {
    design
        .symmetric_prime_level()
        .ok_or_else(|| Error::NotSymmetricPrime {
            levels: design.levels().to_vec(),
        })
}

/// Reversal with fixed zero: `out[k] = counts[(s - k) mod s]`.
fn reversed_counts(counts: &[u64]) -> Vec<u64> {
    let s = counts.len();
    (0..s).map(|k| counts[(s - k) % s]).collect()
}

fn rank_to_exponent(design: &DesignSpec, rank: usize) -> Exponent {
    let m = design.factor_count();
    let s = design.levels()[0] as usize;
    let mut entries = vec![0u32; m];
    let mut r = rank;
    for j in (0..m).rev() {
        entries[j] = (r % s) as u32;
        r /= s;
    }
    design.exponent(entries).expect("rank within lattice")
}

/// The `s` residuals of the count convolution at one exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualVector {
    pub alpha: Exponent,
    pub residuals: Vec<i128>,
}

impl ResidualVector {
    /// All residuals coincide, i.e. the convolution identity holds at
    /// `alpha`.
    pub fn is_constant(&self) -> bool {
        self.residuals.windows(2).all(|w| w[0] == w[1])
    }
}

/// Evaluates the residual vector `r_{alpha, 0..s-1}` by the direct integer
/// formula.
pub fn residuals(family: &CountFamily, alpha: &Exponent) -> ResidualVector {
    let design = family.design();
    let rank = design.exponent_rank(alpha);
    let table = DiffTable::new(design);
    ResidualVector {
        alpha: alpha.clone(),
        residuals: residuals_by_rank(family, rank, &table),
    }
}

fn residuals_by_rank(family: &CountFamily, alpha_rank: usize, table: &DiffTable) -> Vec<i128> {
    let s = family.s as usize;
    let ambient = family.design.cardinality() as i128;
    let size = family.counts.len();
    let mut conv = vec![0i128; s];
    for beta_rank in 0..size {
        let gamma_rank = table.diff(alpha_rank, beta_rank);
        let b = family.counts_by_rank(beta_rank);
        let g = family.counts_by_rank(gamma_rank);
        for i in 0..s {
            let bi = b[i] as i128;
            if bi == 0 {
                continue;
            }
            for k in 0..s {
                conv[k] += bi * g[(k + s - i) % s] as i128;
            }
        }
    }
    (0..s)
        .map(|k| ambient * family.counts_by_rank(alpha_rank)[k] as i128 - conv[k])
        .collect()
}

/// Digit-wise modular subtraction of lattice ranks for symmetric designs.
struct DiffTable {
    s: usize,
    m: usize,
}

impl DiffTable {
    fn new(design: &DesignSpec) -> Self {
        Self {
            s: design.levels()[0] as usize,
            m: design.factor_count(),
        }
    }

    fn diff(&self, a: usize, b: usize) -> usize {
        let (s, m) = (self.s, self.m);
        let mut out = 0usize;
        let mut place = 1usize;
        let (mut a, mut b) = (a, b);
        let mut digits = [0usize; 64];
        for j in 0..m {
            let da = a % s;
            let db = b % s;
            digits[j] = (da + s - db) % s;
            a /= s;
            b /= s;
        }
        for j in (0..m).rev() {
            out += digits[m - 1 - j] * place;
            place *= s;
        }
        out
    }
}

/// Verdict of the residual-equality check over the whole lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Exponents whose residuals fail to coincide, with their vectors.
    pub violations: Vec<ResidualVector>,
}

/// Checks the convolution identity at every exponent of the lattice.
pub fn is_admissible(family: &CountFamily) -> AdmissibilityReport {
    let design = family.design();
    let table = DiffTable::new(design);
    let mut violations = Vec::new();
    for (rank, alpha) in design.exponents().enumerate() {
        let residuals = residuals_by_rank(family, rank, &table);
        if !residuals.windows(2).all(|w| w[0] == w[1]) {
            violations.push(ResidualVector { alpha, residuals });
        }
    }
    AdmissibilityReport {
        admissible: violations.is_empty(),
        violations,
    }
}

/// Collects the level counts of every lattice exponent over a fraction of a
/// symmetric prime design.
pub fn family_from_fraction(fraction: &Fraction) -> Result<CountFamily> {
    let design = fraction.design();
    let s = require_symmetric_prime(design)?;
    let n = fraction.size();
    let mut counts = Vec::with_capacity(design.cardinality() as usize);
    for alpha in design.exponents() {
        let lc = fraction.level_counts(&alpha);
        let mut vec = lc.counts().to_vec();
        // the zero exponent has t = 1; pad to length s per the family layout
        vec.resize(s as usize, 0);
        counts.push(vec);
    }
    Ok(CountFamily::from_table(design, s, n, counts))
}

/// The balanced count vector `(n/s, ..., n/s)`; strength-type constraints
/// are expressed by fixing members to this vector.
pub fn balanced_counts(s: u32, n: u64) -> Result<Vec<u64>> {
    if n % u64::from(s) != 0 {
        return Err(Error::InconsistentEnumeration(format!(
            "balanced counts require {s} to divide the run size {n}"
        )));
    }
    Ok(vec![n / u64::from(s); s as usize])
}

/// Enumerates all admissible completions of a partially fixed count family.
///
/// `fixed` pins down count vectors for some exponents (conjugates are
/// mirrored automatically); `free` lists exponents whose vectors are to be
/// enumerated. Conjugate classes missing from both are appended to the free
/// list, so the family is always complete. Candidates per free class are
/// the compositions of `n` into `s` nonnegative parts, visited in
/// colexicographic order; the product of the class candidate counts must
/// stay within `budget`.
///
/// Returns the complete families passing [`is_admissible`], in
/// deterministic enumeration order.
pub fn enumerate_admissible(
    design: &DesignSpec,
    n: u64,
    fixed: &BTreeMap<Exponent, Vec<u64>>,
    free: &[Exponent],
    budget: u64,
) -> Result<Vec<CountFamily>> {
    let s = require_symmetric_prime(design)? as usize;
    let size = design.cardinality() as usize;
    let neg_rank: Vec<usize> = (0..size)
        .map(|r| {
            let alpha = rank_to_exponent(design, r);
            design.exponent_rank(&design.exponent_neg(&alpha))
        })
        .collect();

    // fixed vectors by rank, mirrored onto conjugates
    let mut fixed_by_rank: Vec<Option<Vec<u64>>> = vec![None; size];
    let mut zero = vec![0u64; s];
    zero[0] = n;
    fixed_by_rank[0] = Some(zero);
    for (alpha, counts) in fixed {
        validate_member(alpha, counts, s as u32, n)?;
        let rank = design.exponent_rank(alpha);
        let mirrored = reversed_counts(counts);
        for (r, v) in [(rank, counts.clone()), (neg_rank[rank], mirrored)] {
            match &fixed_by_rank[r] {
                Some(existing) if *existing != v => {
                    return Err(Error::InconsistentEnumeration(format!(
                        "conflicting fixed counts at {}",
                        rank_to_exponent(design, r)
                    )));
                }
                _ => fixed_by_rank[r] = Some(v),
            }
        }
    }

    // conjugate classes: explicit free ones first, then the remainder
    let mut class_of_rank = vec![usize::MAX; size];
    let mut classes: Vec<(usize, usize)> = Vec::new(); // (rep, mirror)
    let push_class = |rank: usize,
                          classes: &mut Vec<(usize, usize)>,
                          class_of_rank: &mut Vec<usize>|
     -> usize {
        let rep = rank.min(neg_rank[rank]);
        let mirror = rank.max(neg_rank[rank]);
        if class_of_rank[rep] == usize::MAX {
            classes.push((rep, mirror));
            class_of_rank[rep] = classes.len() - 1;
            class_of_rank[mirror] = classes.len() - 1;
        }
        class_of_rank[rep]
    };
    for alpha in free {
        design.exponent(alpha.entries().to_vec())?; // validate against design
        let rank = design.exponent_rank(alpha);
        if rank == 0 {
            return Err(Error::InconsistentEnumeration(
                "the zero exponent is fixed by C2 and cannot be free".into(),
            ));
        }
        if fixed_by_rank[rank].is_some() {
            return Err(Error::InconsistentEnumeration(format!(
                "exponent {alpha} appears both fixed and free"
            )));
        }
        push_class(rank, &mut classes, &mut class_of_rank);
    }
    for rank in 1..size {
        if fixed_by_rank[rank].is_none() && class_of_rank[rank] == usize::MAX {
            push_class(rank, &mut classes, &mut class_of_rank);
        }
    }

    // budget: product over classes of the composition count
    let per_class = compositions_count(n, s);
    let mut required: u128 = 1;
    for _ in &classes {
        required = required.saturating_mul(per_class);
    }
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    // reduced-coordinate machinery shared by the whole search
    let reduce = |counts: &[u64]| -> Vec<i128> {
        let last = counts[s - 1] as i128;
        counts[..s - 1].iter().map(|&c| c as i128 - last).collect()
    };
    let mut reduced: Vec<Option<Vec<i128>>> = vec![None; size];
    let mut level_of_rank: Vec<usize> = vec![0; size];
    let mut active: Vec<usize> = Vec::new();
    for rank in 0..size {
        if let Some(counts) = &fixed_by_rank[rank] {
            let v = reduce(counts);
            if v.iter().any(|&x| x != 0) {
                active.push(rank);
                reduced[rank] = Some(v);
            }
        }
    }
    for (level, &(rep, mirror)) in classes.iter().enumerate() {
        for rank in [rep, mirror] {
            if !active.contains(&rank) {
                active.push(rank);
                level_of_rank[rank] = level + 1;
            }
        }
    }

    // constraints: for each alpha, the pairs (beta, alpha - beta) drawn from
    // the active set; scheduled at the deepest level they involve
    let table = DiffTable::new(design);
    let mut schedule: Vec<Vec<Constraint>> =
        (0..=classes.len()).map(|_| Vec::new()).collect();
    for alpha_rank in 0..size {
        let mut pairs = Vec::new();
        let mut level = if reduced[alpha_rank].is_some() || level_of_rank[alpha_rank] > 0 {
            level_of_rank[alpha_rank]
        } else {
            0
        };
        for &b in &active {
            let g = table.diff(alpha_rank, b);
            if active.contains(&g) {
                pairs.push((b, g));
                level = level
                    .max(level_of_rank[b])
                    .max(level_of_rank[g]);
            }
        }
        let involved = !pairs.is_empty()
            || reduced[alpha_rank].is_some()
            || level_of_rank[alpha_rank] > 0;
        if involved {
            schedule[level].push(Constraint {
                alpha_rank,
                pairs,
            });
        }
    }

    let ambient = design.cardinality() as i128;
    let mut search = Search {
        s,
        n,
        ambient,
        classes: &classes,
        schedule: &schedule,
        reduced,
        assignments: vec![Vec::new(); classes.len()],
        out: Vec::new(),
        design,
        fixed_by_rank: &fixed_by_rank,
    };

    // constraints involving only fixed members either hold or kill the
    // whole enumeration up front
    if search.check_level(0) {
        search.descend(0);
    }

    let Search {
        out, ..
    } = search;
    Ok(out)
}

struct Constraint {
    alpha_rank: usize,
    pairs: Vec<(usize, usize)>,
}

struct Search<'a> {
    s: usize,
    n: u64,
    ambient: i128,
    classes: &'a [(usize, usize)],
    schedule: &'a [Vec<Constraint>],
    reduced: Vec<Option<Vec<i128>>>,
    assignments: Vec<Vec<u64>>,
    out: Vec<CountFamily>,
    design: &'a DesignSpec,
    fixed_by_rank: &'a [Option<Vec<u64>>],
}

impl Search<'_> {
    fn check_level(&self, level: usize) -> bool {
        let s1 = self.s - 1;
        for constraint in &self.schedule[level] {
            let mut rhs = vec![0i128; s1];
            for &(b, g) in &constraint.pairs {
                let (vb, vg) = match (&self.reduced[b], &self.reduced[g]) {
                    (Some(vb), Some(vg)) => (vb, vg),
                    _ => continue, // balanced member: contributes nothing
                };
                mul_mod_cyclotomic_into(vb, vg, &mut rhs);
            }
            let lhs = self.reduced[constraint.alpha_rank].as_deref();
            let holds = match lhs {
                Some(v) => rhs
                    .iter()
                    .zip(v)
                    .all(|(r, x)| *r == self.ambient * x),
                None => rhs.iter().all(|&r| r == 0),
            };
            if !holds {
                return false;
            }
        }
        true
    }

    fn descend(&mut self, class_idx: usize) {
        if class_idx == self.classes.len() {
            self.emit();
            return;
        }
        let (rep, mirror) = self.classes[class_idx];
        let mut parts = vec![0u64; self.s];
        for_each_composition(self.n, &mut parts, self.s - 1, &mut |search: &mut Self,
                                                                   parts: &[u64]| {
            let reversed = reversed_counts(parts);
            search.reduced[rep] = Some(reduce_slice(parts));
            if mirror != rep {
                search.reduced[mirror] = Some(reduce_slice(&reversed));
            }
            search.assignments[class_idx] = parts.to_vec();
            if search.check_level(class_idx + 1) {
                search.descend(class_idx + 1);
            }
        }, self);
        self.reduced[rep] = None;
        if mirror != rep {
            self.reduced[mirror] = None;
        }
    }

    fn emit(&mut self) {
        let size = self.design.cardinality() as usize;
        let mut table: Vec<Vec<u64>> = Vec::with_capacity(size);
        for rank in 0..size {
            table.push(match &self.fixed_by_rank[rank] {
                Some(v) => v.clone(),
                None => Vec::new(),
            });
        }
        for (class_idx, &(rep, mirror)) in self.classes.iter().enumerate() {
            let counts = self.assignments[class_idx].clone();
            table[mirror] = reversed_counts(&counts);
            table[rep] = counts;
        }
        let family = CountFamily::from_table(self.design, self.s as u32, self.n, table);
        // re-verify with the direct residual definition before accepting
        if is_admissible(&family).admissible {
            self.out.push(family);
        }
    }
}

fn reduce_slice(counts: &[u64]) -> Vec<i128> {
    let s = counts.len();
    let last = counts[s - 1] as i128;
    counts[..s - 1].iter().map(|&c| c as i128 - last).collect()
}

/// Accumulates `a * b` reduced modulo `1 + x + ... + x^{s-1}` into `acc`
/// (all of length `s - 1`).
fn mul_mod_cyclotomic_into(a: &[i128], b: &[i128], acc: &mut [i128]) {
    let s1 = a.len();
    let mut full = vec![0i128; 2 * s1 - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            full[i + j] += ai * bj;
        }
    }
    // x^{s-1} = -(1 + x + ... + x^{s-2}); spread high degrees downward
    for d in (s1..full.len()).rev() {
        let c = full[d];
        if c == 0 {
            continue;
        }
        full[d] = 0;
        for j in 0..s1 {
            full[d - s1 + j] -= c;
        }
    }
    for (dst, src) in acc.iter_mut().zip(&full[..s1]) {
        *dst += src;
    }
}

/// Number of compositions of `n` into `s` nonnegative parts,
/// `C(n + s - 1, s - 1)`, saturating.
fn compositions_count(n: u64, s: usize) -> u128 {
    let mut result: u128 = 1;
    for i in 0..(s - 1) as u128 {
        result = result.saturating_mul(u128::from(n) + i + 1);
        result /= i + 1;
    }
    result
}

/// Visits the compositions of `n` into `parts.len()` nonnegative parts in
/// colexicographic order (last coordinate slowest... smallest first).
fn for_each_composition<C>(
    n: u64,
    parts: &mut Vec<u64>,
    position: usize,
    visit: &mut impl FnMut(&mut C, &[u64]),
    ctx: &mut C,
) {
    if position == 0 {
        parts[0] = n;
        visit(ctx, parts);
        return;
    }
    for value in 0..=n {
        parts[position] = value;
        for_each_composition(n - value, parts, position - 1, visit, ctx);
    }
    parts[position] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::Fraction;

    fn design3() -> DesignSpec {
        DesignSpec::new(vec![3, 3, 3]).unwrap()
    }

    fn regular_3cubed() -> Fraction {
        // {(i, j, [i + j]_3)}: 9 runs
        let d = design3();
        let rows = (0..3).flat_map(|i| (0..3).map(move |j| vec![i, j, (i + j) % 3]));
        Fraction::from_rows(d, rows).unwrap()
    }

    #[test]
    fn full_factorial_family_has_constant_residuals() {
        let family = family_from_fraction(&Fraction::full(design3())).unwrap();
        let d = design3();
        for alpha in d.exponents() {
            let r = residuals(&family, &alpha);
            assert!(r.is_constant(), "alpha {alpha}: {:?}", r.residuals);
        }
        for alpha in d.exponents().filter(|a| !a.is_zero()) {
            assert_eq!(family.counts(&alpha), &[9, 9, 9]);
        }
    }

    #[test]
    fn half_replicate_residuals_agree() {
        let d = DesignSpec::new(vec![2, 2, 2]).unwrap();
        let rows = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];
        let f = Fraction::from_rows(d.clone(), rows.map(|r| r.to_vec())).unwrap();
        let family = family_from_fraction(&f).unwrap();
        let alpha = d.exponent(vec![1, 1, 1]).unwrap();
        let r = residuals(&family, &alpha);
        assert_eq!(r.residuals[0], r.residuals[1]);
        assert!(is_admissible(&family).admissible);
    }

    #[test]
    fn c1_violations_fail_construction() {
        let d = design3();
        let mut members = BTreeMap::new();
        for alpha in d.exponents().filter(|a| !a.is_zero()) {
            members.insert(alpha, vec![3u64, 3, 3]);
        }
        let bad = d.exponent(vec![1, 1, 1]).unwrap();
        members.insert(bad, vec![4, 3, 3]);
        let err = CountFamily::new(&d, 9, &members).unwrap_err();
        assert!(matches!(err, Error::CountSum { .. }));
    }

    #[test]
    fn c3_violations_fail_construction() {
        let d = design3();
        let mut members = BTreeMap::new();
        for alpha in d.exponents().filter(|a| !a.is_zero()) {
            members.insert(alpha, vec![3u64, 3, 3]);
        }
        members.insert(d.exponent(vec![1, 1, 1]).unwrap(), vec![9, 0, 0]);
        members.insert(d.exponent(vec![2, 2, 2]).unwrap(), vec![0, 9, 0]);
        let err = CountFamily::new(&d, 9, &members).unwrap_err();
        assert!(matches!(
            err,
            Error::FamilyConstraint {
                constraint: "C3",
                ..
            }
        ));
    }

    #[test]
    fn regular_fraction_family_is_admissible() {
        let f = regular_3cubed();
        let family = family_from_fraction(&f).unwrap();
        let d = design3();
        // the defining relation concentrates (1,1,2)
        assert_eq!(
            family.counts(&d.exponent(vec![1, 1, 2]).unwrap()),
            &[9, 0, 0]
        );
        assert!(is_admissible(&family).admissible);
    }

    #[test]
    fn non_prime_designs_are_rejected() {
        let d = DesignSpec::new(vec![4, 4, 4]).unwrap();
        let f = Fraction::from_rows(d, [vec![0, 0, 0], vec![1, 1, 1]]).unwrap();
        assert!(matches!(
            family_from_fraction(&f),
            Err(Error::NotSymmetricPrime { .. })
        ));
    }

    fn strength2_family_with_triple(triple: [u64; 3]) -> Result<CountFamily> {
        let d = design3();
        let mut members = BTreeMap::new();
        for alpha in d.exponents().filter(|a| !a.is_zero()) {
            members.insert(alpha, vec![3u64, 3, 3]);
        }
        members.insert(d.exponent(vec![1, 1, 1]).unwrap(), triple.to_vec());
        members.insert(
            d.exponent(vec![2, 2, 2]).unwrap(),
            reversed_counts(&triple),
        );
        CountFamily::new(&d, 9, &members)
    }

    #[test]
    fn unbalanced_triple_counts_are_rejected_by_residuals() {
        // (6, 3, 0) is not an admissible configuration
        let family = strength2_family_with_triple([6, 3, 0]).unwrap();
        let report = is_admissible(&family);
        assert!(!report.admissible);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn conjugate_image_preserves_admissibility_verdict() {
        for triple in [[3u64, 3, 3], [9, 0, 0], [6, 3, 0], [5, 2, 2]] {
            let family = strength2_family_with_triple(triple).unwrap();
            let image = family.conjugate_image();
            assert_eq!(
                is_admissible(&family).admissible,
                is_admissible(&image).admissible
            );
        }
    }

    fn strength2_fixed(d: &DesignSpec, n: u64) -> BTreeMap<Exponent, Vec<u64>> {
        let s = d.levels()[0];
        let mut fixed = BTreeMap::new();
        for alpha in d.exponents() {
            let order = alpha.order();
            if order >= 1 && order <= 2 {
                fixed.insert(alpha, balanced_counts(s, n).unwrap());
            }
        }
        fixed
    }

    #[test]
    fn three_cubed_enumeration_matches_the_known_configurations() {
        let d = design3();
        let fixed = strength2_fixed(&d, 9);
        let free = vec![d.exponent(vec![1, 1, 1]).unwrap()];
        let completions =
            enumerate_admissible(&d, 9, &fixed, &free, DEFAULT_ENUM_BUDGET).unwrap();
        assert!(!completions.is_empty());
        let target = d.exponent(vec![1, 1, 1]).unwrap();
        let mut seen: Vec<Vec<u64>> = completions
            .iter()
            .map(|f| f.counts(&target).to_vec())
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(
            seen,
            vec![
                vec![0, 0, 9],
                vec![0, 9, 0],
                vec![3, 3, 3],
                vec![9, 0, 0]
            ]
        );
    }

    #[test]
    fn two_cubed_enumeration() {
        let d = DesignSpec::new(vec![2, 2, 2]).unwrap();
        let fixed = strength2_fixed(&d, 4);
        let free = vec![d.exponent(vec![1, 1, 1]).unwrap()];
        let completions =
            enumerate_admissible(&d, 4, &fixed, &free, DEFAULT_ENUM_BUDGET).unwrap();
        let target = d.exponent(vec![1, 1, 1]).unwrap();
        let mut seen: Vec<Vec<u64>> = completions
            .iter()
            .map(|f| f.counts(&target).to_vec())
            .collect();
        seen.sort();
        seen.dedup();
        // brute force over the 4-run strength-2 single-replicate fractions
        // of 2^3 realizes (4,0) and (0,4); (2,2) fails the residuals
        assert_eq!(seen, vec![vec![0, 4], vec![4, 0]]);
    }

    #[test]
    fn five_cubed_full_enumeration_exceeds_the_budget() {
        let d = DesignSpec::new(vec![5, 5, 5]).unwrap();
        let fixed = BTreeMap::new();
        let free = vec![d.exponent(vec![1, 1, 1]).unwrap()];
        let err = enumerate_admissible(&d, 25, &fixed, &free, DEFAULT_ENUM_BUDGET).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn fixed_and_free_conflicts_are_reported() {
        let d = design3();
        let mut fixed = strength2_fixed(&d, 9);
        fixed.insert(d.exponent(vec![1, 1, 1]).unwrap(), vec![3, 3, 3]);
        let free = vec![d.exponent(vec![1, 1, 1]).unwrap()];
        let err = enumerate_admissible(&d, 9, &fixed, &free, DEFAULT_ENUM_BUDGET).unwrap_err();
        assert!(matches!(err, Error::InconsistentEnumeration(_)));
    }
}
