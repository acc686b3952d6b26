//! Properties of the sequences themselves: the `Q` construction and its
//! equivalence with the mex table, spectral bounds, Beatty closed forms
//! for `s = 1`, gap statistics and the second-difference experiment.

use std::collections::{BTreeMap, VecDeque};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::GameParams;
use crate::oracle::{ab_by_mex, Row, SequenceTable, Source};

/// Named pass/fail result with the first counterexample when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// `Q_n` with its first/last-occurrence sequences and the split of indices
/// into first occurrences (`q1_indices`) and repeats (`q2_indices`).
///
/// Index 0 is listed in both parts: `0` occurs once, so it is both the
/// first and the last occurrence of its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTriple {
    pub params: GameParams,
    pub q_seq: Vec<u64>,
    /// `a_prime[n]`: smallest `k` with `Q_k = n`.
    pub a_prime: Vec<u64>,
    /// `b_prime[n]`: largest `k` with `Q_k = n`; only values whose repeat
    /// has already been generated are listed.
    pub b_prime: Vec<u64>,
    pub q1_indices: Vec<u64>,
    pub q2_indices: Vec<u64>,
}

/// Builds `Q` left to right. A value first seen at `m` is repeated at index
/// `t*Q_m + s*m`; every other index takes the mex of earlier values.
pub struct QGenerator {
    triple: QTriple,
    /// Pending repeats as `(index, value)`, ascending in both.
    pending: VecDeque<(u64, u64)>,
}

impl QGenerator {
    pub fn new(params: GameParams) -> Self {
        QGenerator {
            triple: QTriple {
                params,
                q_seq: Vec::new(),
                a_prime: Vec::new(),
                b_prime: Vec::new(),
                q1_indices: Vec::new(),
                q2_indices: Vec::new(),
            },
            pending: VecDeque::new(),
        }
    }

    pub fn step(&mut self) -> u64 {
        let tr = &mut self.triple;
        let n = tr.q_seq.len() as u64;
        let value = match self.pending.front() {
            Some(&(idx, value)) if idx == n => {
                self.pending.pop_front();
                tr.b_prime.push(n);
                tr.q2_indices.push(n);
                value
            }
            _ => {
                // values so far are exactly 0..len(a_prime)
                let value = tr.a_prime.len() as u64;
                tr.a_prime.push(n);
                tr.q1_indices.push(n);
                let (s, t) = (tr.params.s(), tr.params.t());
                if n == 0 {
                    tr.b_prime.push(0);
                    tr.q2_indices.push(0);
                } else {
                    self.pending.push_back((t * value + s * n, value));
                }
                value
            }
        };
        tr.q_seq.push(value);
        value
    }

    pub fn triple(&self) -> &QTriple {
        &self.triple
    }

    pub fn into_triple(self) -> QTriple {
        self.triple
    }
}

/// `Q_0..=Q_{n_max}` and the derived sequences.
pub fn q_sequences(params: GameParams, n_max: u64) -> QTriple {
    let mut gen = QGenerator::new(params);
    for _ in 0..=n_max {
        gen.step();
    }
    gen.into_triple()
}

fn first_bad_gap(indices: &[u64], ok: impl Fn(u64) -> bool) -> Option<(u64, u64)> {
    indices
        .windows(2)
        .find(|w| !ok(w[1] - w[0]))
        .map(|w| (w[0], w[1]))
}

/// Gap rules between consecutive terms: repeats are at least 2 indices
/// apart, first occurrences at most 2, and `A'` steps by 1 or 2.
pub fn check_lemma34(triple: &QTriple) -> Vec<Check> {
    let render = |name: &str, bad: Option<(u64, u64)>| match bad {
        None => Check::new(name, true, "ok"),
        Some((i, j)) => Check::new(name, false, format!("indices {i} and {j}")),
    };
    let a_bad = triple
        .a_prime
        .windows(2)
        .skip(1)
        .find(|w| !matches!(w[1] - w[0], 1 | 2))
        .map(|w| (w[0], w[1]));
    vec![
        render(
            "q2_gaps_at_least_2",
            first_bad_gap(&triple.q2_indices, |g| g >= 2),
        ),
        render(
            "q1_gaps_at_most_2",
            first_bad_gap(&triple.q1_indices, |g| g <= 2),
        ),
        render("a_prime_steps_1_or_2", a_bad),
    ]
}

/// Generates `Q` until `B'_{n_max}` exists and compares `A'_n, B'_n` with the
/// mex table for `n = 1..=n_max`.
pub fn theorem4_equivalence(params: GameParams, n_max: u64) -> Result<Check> {
    let table = ab_by_mex(params, n_max)?;
    let mut gen = QGenerator::new(params);
    while (gen.triple().b_prime.len() as u64) <= n_max {
        gen.step();
    }
    let tr = gen.triple();
    for row in &table.rows[1..] {
        let n = row.n as usize;
        if tr.a_prime[n] != row.a || tr.b_prime[n] != row.b {
            return Ok(Check::new(
                "theorem4",
                false,
                format!(
                    "{params} n={n}: (A',B')=({},{}) but (A,B)=({},{})",
                    tr.a_prime[n], tr.b_prime[n], row.a, row.b
                ),
            ));
        }
    }
    Ok(Check::new(
        "theorem4",
        true,
        format!("{params} n<={n_max}, {} Q terms", tr.q_seq.len()),
    ))
}

/// Exact bounds on the slope of any line `floor(n*alpha + gamma)` through a
/// prefix. The prefix can start a spectrum only if `lower < upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralBounds {
    pub lower: Ratio<i128>,
    pub upper: Ratio<i128>,
    pub prefix_len: usize,
}

impl SpectralBounds {
    pub fn is_spectral_candidate(&self) -> bool {
        self.lower < self.upper
    }
}

/// Max of `(a_k - a_{k-i} - 1)/i` and min of `(a_k - a_{k-i} + 1)/i` over
/// `1 <= i < k <= r`. `None` for prefixes shorter than 2.
pub fn spectral_bounds(prefix: &[u64]) -> Option<SpectralBounds> {
    let r = prefix.len();
    if r < 2 {
        return None;
    }
    let mut lower: Option<Ratio<i128>> = None;
    let mut upper: Option<Ratio<i128>> = None;
    for i in 1..r {
        let (mut hi, mut lo) = (i128::MIN, i128::MAX);
        for k in i..r {
            let d = prefix[k] as i128 - prefix[k - i] as i128;
            hi = hi.max(d);
            lo = lo.min(d);
        }
        let cand_lower = Ratio::new(hi - 1, i as i128);
        let cand_upper = Ratio::new(lo + 1, i as i128);
        if lower.as_ref().is_none_or(|l| cand_lower > *l) {
            lower = Some(cand_lower);
        }
        if upper.as_ref().is_none_or(|u| cand_upper < *u) {
            upper = Some(cand_upper);
        }
    }
    Some(SpectralBounds {
        lower: lower.unwrap(),
        upper: upper.unwrap(),
        prefix_len: r,
    })
}

/// Rows `(n, floor(n*alpha), floor(n*beta))` for `s = 1`, where
/// `alpha = (2 - t + sqrt(t^2 + 4)) / 2` and `beta = alpha + t`.
///
/// `n*sqrt(t^2+4)` is irrational for `n > 0`, so with `S = isqrt(n^2 (t^2+4))`
/// the floor is exactly `floor((n(2-t) + S) / 2)`.
pub fn beatty_table(t: u64, n_max: u64) -> Result<SequenceTable> {
    let params = GameParams::new(1, t)?;
    let disc = (t as u128)
        .checked_mul(t as u128)
        .and_then(|v| v.checked_add(4))
        .ok_or(Error::Overflow("t^2 + 4"))?;
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let n_w = n as u128;
        let sq = n_w
            .checked_mul(n_w)
            .and_then(|v| v.checked_mul(disc))
            .ok_or(Error::Overflow("n^2 (t^2 + 4)"))?;
        let root = sq.isqrt() as i128;
        let linear = n as i128 * (2 - t as i128);
        let a = (linear + root).div_euclid(2);
        let a = u64::try_from(a).map_err(|_| Error::Overflow("floor(n alpha)"))?;
        let b = a
            .checked_add(n.checked_mul(t).ok_or(Error::Overflow("n t"))?)
            .ok_or(Error::Overflow("floor(n beta)"))?;
        rows.push(Row { n, a, b });
    }
    Ok(SequenceTable {
        params,
        rows,
        source: Source::BeattyClosedForm,
    })
}

/// Distinct consecutive differences of each column with their counts.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GapStats {
    pub a_gaps: BTreeMap<u64, u64>,
    pub b_gaps: BTreeMap<u64, u64>,
}

pub fn gap_statistics(table: &SequenceTable) -> GapStats {
    let mut stats = GapStats::default();
    for w in table.rows.windows(2) {
        *stats.a_gaps.entry(w[1].a - w[0].a).or_default() += 1;
        *stats.b_gaps.entry(w[1].b - w[0].b).or_default() += 1;
    }
    stats
}

/// Shortest prefix length of `column` in which both `small` and `large`
/// occur as consecutive differences.
pub fn first_prefix_with_both_gaps(column: &[u64], small: u64, large: u64) -> Option<usize> {
    let (mut seen_small, mut seen_large) = (false, false);
    for (k, w) in column.windows(2).enumerate() {
        let g = w[1] - w[0];
        seen_small |= g == small;
        seen_large |= g == large;
        if seen_small && seen_large {
            return Some(k + 2);
        }
    }
    None
}

/// Shortest prefix length of `column` containing complete runs of unit
/// differences of both lengths `short` and `long`. A run is complete when
/// it has a non-unit difference on each side.
pub fn first_prefix_with_both_unit_runs(
    column: &[u64],
    short: usize,
    long: usize,
) -> Option<usize> {
    let (mut run, mut bracketed) = (0usize, false);
    let (mut seen_short, mut seen_long) = (false, false);
    for (k, w) in column.windows(2).enumerate() {
        if w[1] - w[0] == 1 {
            run += 1;
            continue;
        }
        if bracketed {
            seen_short |= run == short;
            seen_long |= run == long;
        }
        bracketed = true;
        run = 0;
        if seen_short && seen_long {
            return Some(k + 2);
        }
    }
    None
}

/// Largest `|(A_{n+i} - A_n) - (A_{m+i} - A_m)|` over `1 <= i <= i_max`,
/// `1 <= m, n <= n_max`. Reported, never asserted, except that spectral
/// sequences (`s = t = 1`) must stay within 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiReport {
    pub s: u64,
    pub t: u64,
    pub n_max: u64,
    pub i_max: u64,
    pub max_deviation: u64,
    /// The conjectured bound `s`, meaningful when `s = t`.
    pub conjectured_bound: u64,
    pub exploratory: bool,
}

pub fn quasilinearity_experiment(
    params: GameParams,
    n_max: u64,
    i_max: u64,
) -> Result<QuasiReport> {
    let mut max_deviation = 0;
    if i_max > 0 && n_max > 0 {
        let a = ab_by_mex(params, n_max + i_max)?.a_column();
        for i in 1..=i_max as usize {
            let diffs = (1..=n_max as usize).map(|n| a[n + i] - a[n]);
            let (lo, hi) = diffs.fold((u64::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
            max_deviation = max_deviation.max(hi - lo);
        }
    }
    Ok(QuasiReport {
        s: params.s(),
        t: params.t(),
        n_max,
        i_max,
        max_deviation,
        conjectured_bound: params.s(),
        exploratory: params.s() != params.t(),
    })
}
