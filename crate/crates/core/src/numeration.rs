//! The numeration system tied to a game `(s, t)`.
//!
//! Bases are `u_0 = 1`, `u_1 = s + t` and `u_n = r*u_{n-1} + s*u_{n-2}`
//! with `r = s + t - 1`. Digits lie in `0..=r`, and a digit equal to `r`
//! must sit directly above a digit at most `q = s - 1`. Under that rule
//! every integer has exactly one representation and the greedy algorithm
//! finds it.
//!
//! An integer is *evil* when its representation ends in an even number of
//! zero digits and *old* when it ends in an odd number; `0` counts as both.
//! The evil numbers in increasing order are exactly the `A_n` column of the
//! P-position table, and shifting a representation one place up turns
//! `A_n` into `B_n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::GameParams;
use crate::oracle::{Row, SequenceTable, Source};

/// Strictly increasing bases, all at most some limit plus one base beyond
/// it so the greedy loop always has a stopping witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bases {
    params: GameParams,
    u: Vec<u128>,
}

impl Bases {
    pub fn up_to(params: GameParams, limit: u64) -> Result<Self> {
        let (r, s) = (params.r() as u128, params.s() as u128);
        let mut u: Vec<u128> = vec![1, params.s() as u128 + params.t() as u128];
        while u[u.len() - 2] <= limit as u128 {
            let (a, b) = (u[u.len() - 1], u[u.len() - 2]);
            let next = r
                .checked_mul(a)
                .and_then(|v| v.checked_add(s.checked_mul(b)?))
                .ok_or(Error::Overflow("numeration base exceeds 128 bits"))?;
            u.push(next);
        }
        // drop bases past the first one above the limit
        let keep = u.iter().position(|&v| v > limit as u128).unwrap() + 1;
        u.truncate(keep);
        Ok(Bases { params, u })
    }

    pub fn params(&self) -> GameParams {
        self.params
    }

    pub fn as_slice(&self) -> &[u128] {
        &self.u
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// Index of the largest base not exceeding `m` (`m >= 1`).
    fn top_index(&self, m: u64) -> usize {
        self.u.partition_point(|&b| b <= m as u128) - 1
    }
}

pub fn bases_up_to(params: GameParams, limit: u64) -> Result<Bases> {
    Bases::up_to(params, limit)
}

/// Little-endian digits: `digits[i]` multiplies `u_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Representation {
    digits: Vec<u64>,
}

impl Representation {
    /// Wraps raw digits without validating them.
    pub fn from_digits(digits: Vec<u64>) -> Self {
        Representation { digits }
    }

    /// Parses the big-endian rendering produced by [`Representation::render`].
    /// Digits are single characters unless separated by `.`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::MalformedRepresentation(text.to_string());
        let mut digits: Vec<u64> = if text.contains('.') {
            text.split('.')
                .map(|d| d.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(u64::from).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if text == "0" {
            digits.clear();
        }
        digits.reverse();
        Ok(Representation { digits })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u64> {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at position `i`, zero above the top.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn trailing_zeros(&self) -> usize {
        self.digits.iter().take_while(|&&d| d == 0).count()
    }

    /// Big-endian rendering. Digits are concatenated when the largest digit
    /// `r` is at most 9, otherwise joined with `.`; zero renders as `0`.
    pub fn render(&self, params: GameParams) -> String {
        if self.digits.is_empty() {
            return "0".to_string();
        }
        let parts = self.digits.iter().rev().map(|d| d.to_string());
        if params.r() <= 9 {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(".")
        }
    }

    /// Comparison in value order for canonical representations: longer is
    /// larger, equal lengths compare big-endian.
    pub fn cmp_canonical(&self, other: &Self) -> std::cmp::Ordering {
        self.digits
            .len()
            .cmp(&other.digits.len())
            .then_with(|| self.digits.iter().rev().cmp(other.digits.iter().rev()))
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("0");
        }
        let wide = self.digits.iter().any(|&d| d > 9);
        for (i, d) in self.digits.iter().rev().enumerate() {
            if wide && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailParity {
    Evil,
    Old,
    /// The integer zero, which is both evil and old.
    ZeroBoth,
}

impl TailParity {
    pub fn as_str(&self) -> &'static str {
        match self {
            TailParity::Evil => "evil",
            TailParity::Old => "old",
            TailParity::ZeroBoth => "zero",
        }
    }
}

pub fn tail_parity(rep: &Representation) -> TailParity {
    if rep.is_zero() {
        TailParity::ZeroBoth
    } else if rep.trailing_zeros().is_multiple_of(2) {
        TailParity::Evil
    } else {
        TailParity::Old
    }
}

/// Moves every digit one base up: `d_i u_i` becomes `d_i u_{i+1}`.
pub fn left_shift(rep: &Representation) -> Representation {
    if rep.is_empty() {
        return Representation::default();
    }
    let mut digits = Vec::with_capacity(rep.len() + 1);
    digits.push(0);
    digits.extend_from_slice(&rep.digits);
    Representation { digits }
}

/// Inverse of [`left_shift`]; needs a trailing zero digit.
pub fn right_shift(rep: &Representation) -> Result<Representation> {
    match rep.digits.first() {
        None => Ok(Representation::default()),
        Some(0) => Ok(Representation {
            digits: rep.digits[1..].to_vec(),
        }),
        Some(_) => Err(Error::MalformedRepresentation(format!(
            "right shift of {rep} needs a trailing zero"
        ))),
    }
}

/// Which tail shape an increment consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncrementCase {
    /// Tail `d r q ... r q` of even length `2k` below the incremented digit.
    EvenTail { k: usize },
    /// Tail `d r q ... q r` of odd length `2k + 1` below the incremented digit.
    OddTail { k: usize },
    /// Lowest digit strictly between `q` and `r`; it just goes up by one.
    Plain,
}

impl IncrementCase {
    /// Parity the result must have: the incremented digit is nonzero and
    /// everything below it becomes zero.
    pub fn predicted_parity(&self) -> TailParity {
        match self {
            IncrementCase::EvenTail { .. } | IncrementCase::Plain => TailParity::Evil,
            IncrementCase::OddTail { .. } => TailParity::Old,
        }
    }
}

/// Output of a single greedy pass over an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Digest {
    /// Trailing zero digits; `None` for zero.
    pub trailing_zeros: Option<usize>,
    /// Value of the left-shifted representation.
    pub left_shifted: u128,
    /// Value of the right-shifted representation when the lowest digit is 0.
    pub right_shifted: Option<u128>,
    /// Digit positions visited, including the base lookup.
    pub ops: u32,
}

impl Digest {
    pub fn parity(&self) -> TailParity {
        match self.trailing_zeros {
            None => TailParity::ZeroBoth,
            Some(z) if z % 2 == 0 => TailParity::Evil,
            Some(_) => TailParity::Old,
        }
    }
}

/// Bases for the full `u64` range plus precomputed digit-DP counts.
/// Immutable after construction and cheap to share.
#[derive(Debug, Clone)]
pub struct NumerationSystem {
    params: GameParams,
    bases: Bases,
    /// `nz_even[k][p]`: valid digit strings of length `k`, not all zero,
    /// with an even number of trailing zeros, given that the digit directly
    /// above equals `r` (`p = 1`) or not (`p = 0`).
    nz_even: Vec<[u128; 2]>,
}

impl NumerationSystem {
    pub fn new(params: GameParams) -> Result<Self> {
        let bases = Bases::up_to(params, u64::MAX)?;
        let (q, r) = (params.q() as u128, params.r() as u128);
        let mut nz_even = vec![[0u128; 2]; bases.len()];
        for k in 1..nz_even.len() {
            let prev = nz_even[k - 1];
            for (p, slot) in nz_even[k].iter_mut().enumerate() {
                let (non_r, is_r, nonzero) = if p == 1 { (q + 1, 0, q) } else { (r, 1, r) };
                let mut v = non_r
                    .checked_mul(prev[0])
                    .and_then(|v| v.checked_add(is_r * prev[1]))
                    .ok_or(Error::Overflow("digit-DP count"))?;
                if (k - 1).is_multiple_of(2) {
                    v += nonzero;
                }
                *slot = v;
            }
        }
        Ok(NumerationSystem {
            params,
            bases,
            nz_even,
        })
    }

    pub fn params(&self) -> GameParams {
        self.params
    }

    pub fn bases(&self) -> &Bases {
        &self.bases
    }

    fn base(&self, i: usize) -> Result<u128> {
        self.bases.u.get(i).copied().ok_or(Error::Overflow(
            "digit position beyond the 64-bit base range",
        ))
    }

    /// Greedy representation: repeatedly divide the remainder by the largest
    /// base not exceeding it.
    pub fn represent(&self, m: u64) -> Representation {
        if m == 0 {
            return Representation::default();
        }
        let top = self.bases.top_index(m);
        let mut digits = vec![0u64; top + 1];
        let mut rem = m as u128;
        for i in (0..=top).rev() {
            let u = self.bases.u[i];
            digits[i] = (rem / u) as u64;
            rem %= u;
        }
        Representation { digits }
    }

    pub fn value_wide(&self, rep: &Representation) -> Result<u128> {
        let mut acc: u128 = 0;
        for (i, &d) in rep.digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let term = (d as u128)
                .checked_mul(self.base(i)?)
                .ok_or(Error::Overflow("representation value"))?;
            acc = acc
                .checked_add(term)
                .ok_or(Error::Overflow("representation value"))?;
        }
        Ok(acc)
    }

    pub fn value(&self, rep: &Representation) -> Result<u64> {
        u64::try_from(self.value_wide(rep)?).map_err(|_| Error::Overflow("value exceeds 64 bits"))
    }

    /// Digit range, the `r`-above-`q` rule, and canonical form (no leading
    /// zero digit).
    pub fn validate(&self, rep: &Representation) -> bool {
        let (q, r) = (self.params.q(), self.params.r());
        let d = &rep.digits;
        if d.last() == Some(&0) {
            return false;
        }
        if d.iter().any(|&x| x > r) {
            return false;
        }
        d.windows(2).all(|w| w[1] != r || w[0] <= q)
    }

    /// Representation of `m + 1` from that of `m` by rewriting only the
    /// maximal `... r q r q` tail.
    pub fn increment(&self, rep: &Representation) -> Result<(Representation, IncrementCase)> {
        if !self.validate(rep) {
            return Err(Error::MalformedRepresentation(rep.to_string()));
        }
        let (q, r) = (self.params.q(), self.params.r());
        // a digit belongs to the tail when it is r, or q sitting under r
        let mut j = 0;
        while rep.digit(j) == r || (rep.digit(j) == q && rep.digit(j + 1) == r) {
            j += 1;
        }
        let case = if j == 0 && rep.digit(0) > q {
            IncrementCase::Plain
        } else if j % 2 == 0 {
            IncrementCase::EvenTail { k: j / 2 }
        } else {
            IncrementCase::OddTail { k: j / 2 }
        };
        let mut digits = rep.digits.clone();
        if digits.len() <= j {
            digits.resize(j + 1, 0);
        }
        digits[..j].iter_mut().for_each(|d| *d = 0);
        digits[j] += 1;
        Ok((Representation { digits }, case))
    }

    /// One greedy pass over `x` that also yields the parity and both shifted
    /// values, without allocating.
    pub fn digest(&self, x: u64) -> Digest {
        if x == 0 {
            return Digest {
                trailing_zeros: None,
                left_shifted: 0,
                right_shifted: Some(0),
                ops: 1,
            };
        }
        let u = &self.bases.u;
        let top = self.bases.top_index(x);
        let mut ops = usize::BITS - u.len().leading_zeros();
        let mut rem = x as u128;
        let (mut left, mut right) = (0u128, 0u128);
        let mut lowest_nonzero = 0;
        for i in (0..=top).rev() {
            ops += 1;
            let d = rem / u[i];
            rem %= u[i];
            if d != 0 {
                lowest_nonzero = i;
                left += d * u[i + 1];
                if i > 0 {
                    right += d * u[i - 1];
                }
            }
        }
        Digest {
            trailing_zeros: Some(lowest_nonzero),
            left_shifted: left,
            right_shifted: (lowest_nonzero > 0).then_some(right),
            ops,
        }
    }

    /// Number of evil integers `v` with `1 <= v <= x`.
    ///
    /// Counts valid digit strings of the same length as `R(x)` (leading
    /// zeros allowed) that are lexicographically at most `R(x)`, nonzero, and
    /// end in an even number of zeros. Walks the digits of `R(x)` from the
    /// top; at each position every smaller digit is allowed and none of them
    /// equals `r`, so the free suffix is counted by `nz_even` plus the
    /// all-zero suffix.
    pub fn rank_evil(&self, x: u64) -> u64 {
        let rep = self.represent(x);
        let mut count: u128 = 0;
        let mut prefix_nonzero = false;
        let mut zero_run = 0usize;
        for i in (0..rep.len()).rev() {
            let d = rep.digits[i] as u128;
            if d > 0 {
                count += d * self.nz_even[i][0];
                if i % 2 == 0 {
                    count += d - 1;
                }
                if prefix_nonzero && (zero_run + 1 + i).is_multiple_of(2) {
                    count += 1;
                }
                prefix_nonzero = true;
                zero_run = 0;
            } else {
                zero_run += 1;
            }
        }
        if x > 0 && zero_run.is_multiple_of(2) {
            count += 1;
        }
        count as u64
    }

    /// The `n`-th evil number (`0` for `n = 0`), by binary search on
    /// [`rank_evil`](Self::rank_evil).
    pub fn select_evil(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Ok(0);
        }
        let mut hi = n.saturating_mul(2);
        while self.rank_evil(hi) < n {
            if hi == u64::MAX {
                return Err(Error::Overflow("evil number beyond 64 bits"));
            }
            hi = hi.saturating_mul(2);
        }
        let mut lo = 1u64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.rank_evil(mid) >= n {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// Rows `(k, V_k, W_k)`: `V_k` the evil numbers in order, `W_k` the value
    /// of the left-shifted representation of `V_k`.
    pub fn evil_old_pairs(&self, n_max: u64) -> Result<SequenceTable> {
        let mut rows = Vec::with_capacity(n_max as usize + 1);
        rows.push(Row { n: 0, a: 0, b: 0 });
        let mut m = 0u64;
        let mut rep = Representation::default();
        while (rows.len() as u64) <= n_max {
            let (next, _) = self.increment(&rep)?;
            rep = next;
            m = m
                .checked_add(1)
                .ok_or(Error::Overflow("evil enumeration"))?;
            if tail_parity(&rep) == TailParity::Evil {
                let w = self.value(&left_shift(&rep))?;
                rows.push(Row {
                    n: rows.len() as u64,
                    a: m,
                    b: w,
                });
            }
        }
        Ok(SequenceTable {
            params: self.params,
            rows,
            source: Source::EvilOld,
        })
    }
}
