//! Ground-truth constructions that know nothing about numeration systems:
//! the mex recurrence for the `(A_n, B_n)` table and plain retrograde
//! analysis of the game graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GameParams, Position};

/// Largest `n_max` accepted by [`ab_by_mex`].
pub const MEX_ROW_CAP: u64 = 50_000_000;
/// Largest heap bound accepted by [`p_positions_retrograde`].
pub const RETROGRADE_CAP: u64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    MexRecurrence,
    Retrograde,
    EvilOld,
    QSequences,
    BeattyClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

/// Rows `(n, A_n, B_n)` for `n = 0..=n_max`, tagged with how they were built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub params: GameParams,
    pub rows: Vec<Row>,
    pub source: Source,
}

impl SequenceTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn a_column(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.a).collect()
    }

    pub fn b_column(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.b).collect()
    }

    /// Index `n` with `A_n == x`, if the table contains it.
    pub fn index_of_a(&self, x: u64) -> Option<usize> {
        self.rows.binary_search_by_key(&x, |r| r.a).ok()
    }

    /// Index `n` with `B_n == x` for `n >= 1`.
    pub fn index_of_b(&self, x: u64) -> Option<usize> {
        if x == 0 {
            return None;
        }
        self.rows.binary_search_by_key(&x, |r| r.b).ok()
    }

    /// The pairs as normalized positions.
    pub fn pairs(&self) -> BTreeSet<Position> {
        self.rows.iter().map(|r| Position::new(r.a, r.b)).collect()
    }

    /// Pairs whose larger entry is at most `bound`.
    pub fn pairs_within(&self, bound: u64) -> BTreeSet<Position> {
        self.rows
            .iter()
            .take_while(|r| r.b <= bound)
            .map(|r| Position::new(r.a, r.b))
            .collect()
    }
}

#[derive(Default)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn insert(&mut self, v: u64) {
        let w = (v / 64) as usize;
        if w >= self.words.len() {
            self.words.resize((w + 1).max(self.words.len() * 2), 0);
        }
        self.words[w] |= 1 << (v % 64);
    }

    fn contains(&self, v: u64) -> bool {
        let w = (v / 64) as usize;
        w < self.words.len() && self.words[w] & (1 << (v % 64)) != 0
    }
}

/// Streams rows of the mex recurrence: `A_n` is the least nonnegative
/// integer not among earlier `A_i, B_i`, and `B_n = s*A_n + t*n`.
pub struct MexSequence {
    params: GameParams,
    n: u64,
    used: BitSet,
    mex: u64,
}

impl MexSequence {
    pub fn new(params: GameParams) -> Self {
        MexSequence {
            params,
            n: 0,
            used: BitSet::default(),
            mex: 0,
        }
    }
}

impl Iterator for MexSequence {
    type Item = Row;

    fn next(&mut self) -> Option<Row> {
        // the n = 0 row is (0, 0, 0): mex of the empty set
        while self.used.contains(self.mex) {
            self.mex += 1;
        }
        let a = self.mex;
        let b = self
            .params
            .s()
            .checked_mul(a)?
            .checked_add(self.params.t().checked_mul(self.n)?)?;
        self.used.insert(a);
        self.used.insert(b);
        let row = Row { n: self.n, a, b };
        self.n += 1;
        Some(row)
    }
}

pub fn ab_by_mex(params: GameParams, n_max: u64) -> Result<SequenceTable> {
    if n_max > MEX_ROW_CAP {
        return Err(Error::ResourceLimit {
            what: "n_max",
            requested: n_max,
            cap: MEX_ROW_CAP,
        });
    }
    let rows: Vec<Row> = MexSequence::new(params).take(n_max as usize + 1).collect();
    if rows.len() as u64 != n_max + 1 {
        return Err(Error::Overflow("B_n exceeds 64 bits"));
    }
    Ok(SequenceTable {
        params,
        rows,
        source: Source::MexRecurrence,
    })
}

/// Builds mex rows until some `A_n` or `B_n` reaches `x`, which is how far
/// the table-driven strategy must look before it can answer for heap `x`.
pub fn ab_by_mex_until(params: GameParams, x: u64) -> Result<SequenceTable> {
    let mut rows = Vec::new();
    for row in MexSequence::new(params) {
        let done = row.a >= x;
        rows.push(row);
        if done {
            break;
        }
        if rows.len() as u64 > MEX_ROW_CAP {
            return Err(Error::ResourceLimit {
                what: "rows",
                requested: rows.len() as u64,
                cap: MEX_ROW_CAP,
            });
        }
    }
    Ok(SequenceTable {
        params,
        rows,
        source: Source::MexRecurrence,
    })
}

/// P/N labels for all normalized positions with `y <= bound`.
pub struct RetrogradeGrid {
    bound: u64,
    is_p: Vec<bool>,
}

impl RetrogradeGrid {
    fn idx(&self, x: u64, y: u64) -> usize {
        (x * (self.bound + 1) + y) as usize
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Whether the position (in either orientation) is a P-position.
    /// Panics if a heap exceeds the bound.
    pub fn is_p(&self, pos: Position) -> bool {
        let p = pos.normalize();
        assert!(
            p.y <= self.bound,
            "{p} outside retrograde bound {}",
            self.bound
        );
        self.is_p[self.idx(p.x, p.y)]
    }

    pub fn p_positions(&self) -> BTreeSet<Position> {
        let mut out = BTreeSet::new();
        for x in 0..=self.bound {
            for y in x..=self.bound {
                if self.is_p[self.idx(x, y)] {
                    out.insert(Position::new(x, y));
                }
            }
        }
        out
    }
}

/// Backward induction over the game graph.
///
/// Positions are visited by increasing `x + y`, so every successor is
/// already labelled. A position left unmarked when visited has no P
/// successor and is P; it then marks every position that can move into it
/// as N.
pub fn retrograde_grid(params: GameParams, bound: u64) -> Result<RetrogradeGrid> {
    if bound > RETROGRADE_CAP {
        return Err(Error::ResourceLimit {
            what: "bound",
            requested: bound,
            cap: RETROGRADE_CAP,
        });
    }
    let side = bound + 1;
    let mut is_n = vec![false; (side * side) as usize];
    let mut grid = RetrogradeGrid {
        bound,
        is_p: vec![false; (side * side) as usize],
    };
    let (s, t) = (params.s(), params.t());
    // oriented cells: is_n is kept for both orientations (x, y) and (y, x)
    let mark = |is_n: &mut Vec<bool>, x: u64, y: u64| {
        is_n[(x * side + y) as usize] = true;
        is_n[(y * side + x) as usize] = true;
    };
    for total in 0..=2 * bound {
        let x_lo = total.saturating_sub(bound);
        for x in x_lo..=total / 2 {
            let y = total - x;
            if is_n[(x * side + y) as usize] {
                continue;
            }
            let i = grid.idx(x, y);
            grid.is_p[i] = true;
            // predecessors (x', y') with x' >= x, y' >= y in both orientations
            for (px, py) in [(x, y), (y, x)] {
                for nx in px + 1..=bound {
                    mark(&mut is_n, nx, py);
                }
                for ny in py + 1..=bound {
                    mark(&mut is_n, px, ny);
                }
                for a in 1..=bound - px {
                    let hi = (bound - py).min(s * a + t - 1);
                    for b in a..=hi {
                        mark(&mut is_n, px + a, py + b);
                    }
                    let lo = if a >= t { (a - t) / s + 1 } else { 1 };
                    let hi = (bound - py).min(a - 1);
                    for b in lo..=hi {
                        mark(&mut is_n, px + a, py + b);
                    }
                }
            }
        }
    }
    Ok(grid)
}

pub fn p_positions_retrograde(params: GameParams, bound: u64) -> Result<BTreeSet<Position>> {
    Ok(retrograde_grid(params, bound)?.p_positions())
}
