//! Position classification and winning-move synthesis.
//!
//! Two engines that must agree: [`Engine`] works from the numeration
//! system and runs in time linear in the bit length of the heaps, while
//! [`classify_table`] looks the heap up in a precomputed `(A_n, B_n)` table
//! and therefore needs a table as long as the heap is large.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{is_legal_move, GameParams, Heap, Move, Position};
use crate::numeration::{NumerationSystem, TailParity};
use crate::oracle::SequenceTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// The previous player (the one who moved here) wins.
    P,
    /// The next player (the one to move) wins.
    N,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

/// Outcome plus, for N-positions, a move into a P-position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub kind: Outcome,
    pub witness: Option<Move>,
}

impl Verdict {
    fn p() -> Self {
        Verdict {
            kind: Outcome::P,
            witness: None,
        }
    }

    fn n(mv: Move) -> Self {
        Verdict {
            kind: Outcome::N,
            witness: Some(mv),
        }
    }
}

fn take_second(take: u64) -> Move {
    Move::SingleHeap {
        heap: Heap::Second,
        take,
    }
}

fn both(k: u64, l: u64) -> Move {
    Move::BothHeaps {
        k,
        l,
        k_heap: Heap::First,
    }
}

/// Numeration-driven strategy for one game.
#[derive(Debug, Clone)]
pub struct Engine {
    system: NumerationSystem,
}

impl Engine {
    pub fn new(params: GameParams) -> Result<Self> {
        Ok(Engine {
            system: NumerationSystem::new(params)?,
        })
    }

    pub fn params(&self) -> GameParams {
        self.system.params()
    }

    pub fn system(&self) -> &NumerationSystem {
        &self.system
    }

    /// P iff the position is `(0, 0)` or `x` is evil and `y` equals the
    /// left-shifted value of `x`.
    pub fn classify_fast(&self, pos: Position) -> Outcome {
        self.classify_counted(pos).0
    }

    /// [`classify_fast`](Self::classify_fast) plus the number of digit
    /// operations it performed.
    pub fn classify_counted(&self, pos: Position) -> (Outcome, u32) {
        let pos = pos.normalize();
        if pos.x == 0 {
            let kind = if pos.y == 0 { Outcome::P } else { Outcome::N };
            return (kind, 1);
        }
        let d = self.system.digest(pos.x);
        let kind = if d.parity() == TailParity::Evil && d.left_shifted == pos.y as u128 {
            Outcome::P
        } else {
            Outcome::N
        };
        (kind, d.ops)
    }

    /// The canonical winning move from `pos` (read as given, not normalized),
    /// or `None` at a P-position.
    pub fn winning_move_fast(&self, pos: Position) -> Result<Option<Move>> {
        let flipped = pos.x > pos.y;
        let norm = pos.normalize();
        let mv = self.winning_move_normalized(norm)?;
        if let Some(mv) = mv {
            let target = apply_amounts(norm, mv);
            if !is_legal_move(self.params(), norm, target) {
                return Err(Error::Internal(format!(
                    "synthesized move {mv} from {norm} is illegal"
                )));
            }
        }
        Ok(mv.map(|m| if flipped { flip(m) } else { m }))
    }

    pub fn verdict(&self, pos: Position) -> Result<Verdict> {
        Ok(match self.winning_move_fast(pos)? {
            None => Verdict::p(),
            Some(mv) => Verdict::n(mv),
        })
    }

    fn winning_move_normalized(&self, pos: Position) -> Result<Option<Move>> {
        let (x, y) = (pos.x, pos.y);
        if x == 0 {
            return Ok((y > 0).then(|| take_second(y)));
        }
        let (s, t) = (self.params().s() as u128, self.params().t() as u128);
        let d = self.system.digest(x);
        match d.parity() {
            TailParity::Old => {
                // x = B_n; the partner A_n is the right shift of x
                let a_n = d
                    .right_shifted
                    .ok_or_else(|| Error::Internal(format!("old {x} without trailing zero")))?;
                Ok(Some(take_second(y - a_n as u64)))
            }
            TailParity::Evil => {
                let (x_w, y_w) = (x as u128, y as u128);
                let b_n = d.left_shifted;
                if y_w > b_n {
                    return Ok(Some(take_second((y_w - b_n) as u64)));
                }
                if y_w == b_n {
                    return Ok(None);
                }
                if y_w < s * x_w + t {
                    return Ok(Some(both(x, y)));
                }
                let m = ((y_w - s * x_w) / t) as u64;
                let a_m = self.system.select_evil(m)?;
                let b_m = self.system.digest(a_m).left_shifted as u64;
                Ok(Some(both(x - a_m, y - b_m)))
            }
            TailParity::ZeroBoth => unreachable!("x > 0"),
        }
    }

    /// For an evil `x = A_n`, the index `n = (B_n - s*x) / t`.
    pub fn index_of_evil(&self, x: u64) -> Option<u64> {
        let d = self.system.digest(x);
        if d.parity() != TailParity::Evil && x != 0 {
            return None;
        }
        let (s, t) = (self.params().s() as u128, self.params().t() as u128);
        let num = d.left_shifted - s * x as u128;
        num.is_multiple_of(t).then(|| (num / t) as u64)
    }
}

fn apply_amounts(pos: Position, mv: Move) -> Position {
    let (dx, dy) = mv.amounts();
    Position::new(pos.x - dx, pos.y - dy)
}

fn flip(mv: Move) -> Move {
    match mv {
        Move::SingleHeap { heap, take } => Move::SingleHeap {
            heap: heap.other(),
            take,
        },
        Move::BothHeaps { k, l, k_heap } => Move::BothHeaps {
            k,
            l,
            k_heap: k_heap.other(),
        },
    }
}

/// Table-driven strategy: look `x` up among the `A_n` and `B_n` and play
/// the same case analysis as [`Engine`].
pub fn classify_table(table: &SequenceTable, pos: Position) -> Result<Verdict> {
    let params = table.params;
    let flipped = pos.x > pos.y;
    let norm = pos.normalize();
    let (x, y) = (norm.x, norm.y);
    let (s, t) = (params.s() as u128, params.t() as u128);
    let verdict = if let Some(n) = table.index_of_b(x) {
        Verdict::n(take_second(y - table.rows[n].a))
    } else if let Some(n) = table.index_of_a(x) {
        let b_n = table.rows[n].b;
        if y == b_n {
            Verdict::p()
        } else if y > b_n {
            Verdict::n(take_second(y - b_n))
        } else if (y as u128) < s * x as u128 + t {
            Verdict::n(both(x, y))
        } else {
            let m = ((y as u128 - s * x as u128) / t) as usize;
            let row = table.rows[m];
            Verdict::n(both(x - row.a, y - row.b))
        }
    } else {
        return Err(Error::TableTooSmall { needed: x });
    };
    if let Some(mv) = verdict.witness {
        let target = apply_amounts(norm, mv);
        if !is_legal_move(params, norm, target) {
            return Err(Error::Internal(format!(
                "table move {mv} from {norm} is illegal"
            )));
        }
    }
    Ok(Verdict {
        witness: verdict.witness.map(|m| if flipped { flip(m) } else { m }),
        ..verdict
    })
}

/// The move played from a P-position when forced: one token from the larger
/// heap. `None` at `(0, 0)`.
pub fn stalling_move(pos: Position) -> Option<Move> {
    if pos.is_terminal() {
        return None;
    }
    let heap = if pos.x > pos.y {
        Heap::First
    } else {
        Heap::Second
    };
    Some(Move::SingleHeap { heap, take: 1 })
}
