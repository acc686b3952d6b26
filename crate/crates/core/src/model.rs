//! Game rules: parameters, positions, moves and legality.
//!
//! Two heaps of tokens. A move either takes any positive number of tokens
//! from one heap, or takes `k` from one heap and `l` from the other with
//! `0 < k <= l < s*k + t`. Whoever empties the last heap wins.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, IllegalReason, Result};

/// Default cap on `x + y` for [`legal_successors`].
pub const SUCCESSOR_SUM_CAP: u64 = 10_000;

/// The pair `(s, t)` selecting one game of the family.
///
/// Both parameters are limited to 32 bits so that every intermediate
/// product used by the engine fits in `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct GameParams {
    s: u32,
    t: u32,
}

#[derive(Deserialize)]
struct RawParams {
    s: u64,
    t: u64,
}

impl TryFrom<RawParams> for GameParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        GameParams::new(raw.s, raw.t)
    }
}

impl GameParams {
    pub fn new(s: u64, t: u64) -> Result<Self> {
        if s == 0 || t == 0 || s > u32::MAX as u64 || t > u32::MAX as u64 {
            return Err(Error::InvalidParams { s, t });
        }
        Ok(GameParams {
            s: s as u32,
            t: t as u32,
        })
    }

    pub fn s(&self) -> u64 {
        self.s as u64
    }

    pub fn t(&self) -> u64 {
        self.t as u64
    }

    /// Largest digit allowed directly below a digit equal to [`r`](Self::r).
    pub fn q(&self) -> u64 {
        self.s() - 1
    }

    /// Largest digit of the numeration system.
    pub fn r(&self) -> u64 {
        self.s() + self.t() - 1
    }

    /// Whether `k <= l` amounts satisfy the both-heaps constraint.
    pub fn both_heaps_ok(&self, k: u64, l: u64) -> bool {
        k > 0 && k <= l && (l as u128) < self.s() as u128 * k as u128 + self.t() as u128
    }
}

impl fmt::Display for GameParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, t={})", self.s, self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub x: u64,
    pub y: u64,
}

impl Position {
    pub const TERMINAL: Position = Position { x: 0, y: 0 };

    pub fn new(x: u64, y: u64) -> Self {
        Position { x, y }
    }

    /// Same heaps, ordered so that `x <= y`.
    pub fn normalize(self) -> Self {
        if self.x <= self.y {
            self
        } else {
            Position {
                x: self.y,
                y: self.x,
            }
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn heap(&self, heap: Heap) -> u64 {
        match heap {
            Heap::First => self.x,
            Heap::Second => self.y,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn normalize(pos: Position) -> Position {
    pos.normalize()
}

/// Heap selector. `First` is the `x` heap, `Second` the `y` heap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Heap {
    First,
    Second,
}

impl Heap {
    pub fn other(self) -> Heap {
        match self {
            Heap::First => Heap::Second,
            Heap::Second => Heap::First,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    SingleHeap {
        heap: Heap,
        take: u64,
    },
    /// Take `k` from `k_heap` and `l` from the other heap.
    BothHeaps {
        k: u64,
        l: u64,
        k_heap: Heap,
    },
}

impl Move {
    /// Tokens removed from each heap, as `(from_first, from_second)`.
    pub fn amounts(&self) -> (u64, u64) {
        match *self {
            Move::SingleHeap {
                heap: Heap::First,
                take,
            } => (take, 0),
            Move::SingleHeap {
                heap: Heap::Second,
                take,
            } => (0, take),
            Move::BothHeaps {
                k,
                l,
                k_heap: Heap::First,
            } => (k, l),
            Move::BothHeaps {
                k,
                l,
                k_heap: Heap::Second,
            } => (l, k),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::SingleHeap { heap, take } => {
                let name = if heap == Heap::First { 'A' } else { 'B' };
                write!(f, "take {take} from {name}")
            }
            Move::BothHeaps { k, l, .. } => write!(f, "take {k} and {l}"),
        }
    }
}

/// Checks `mv` against the rules at `pos` without applying it.
pub fn check_move(params: GameParams, pos: Position, mv: Move) -> Result<()> {
    let illegal = |reason| Error::IllegalMove { from: pos, reason };
    match mv {
        Move::SingleHeap { heap, take } => {
            if take == 0 {
                return Err(illegal(IllegalReason::ZeroTake));
            }
            if take > pos.heap(heap) {
                return Err(illegal(IllegalReason::ExceedsHeap));
            }
        }
        Move::BothHeaps { k, l, k_heap } => {
            if k == 0 || l == 0 {
                return Err(illegal(IllegalReason::ZeroTake));
            }
            if k > l {
                return Err(illegal(IllegalReason::KAboveL));
            }
            if k > pos.heap(k_heap) || l > pos.heap(k_heap.other()) {
                return Err(illegal(IllegalReason::ExceedsHeap));
            }
            if !params.both_heaps_ok(k, l) {
                return Err(illegal(IllegalReason::DifferenceTooLarge));
            }
        }
    }
    Ok(())
}

pub fn apply_move(params: GameParams, pos: Position, mv: Move) -> Result<Position> {
    check_move(params, pos, mv)?;
    let (dx, dy) = mv.amounts();
    Ok(Position::new(pos.x - dx, pos.y - dy))
}

fn reachable_oriented(params: GameParams, from: Position, to: Position) -> bool {
    if to.x > from.x || to.y > from.y {
        return false;
    }
    let (dx, dy) = (from.x - to.x, from.y - to.y);
    match (dx, dy) {
        (0, 0) => false,
        (0, _) | (_, 0) => true,
        _ => params.both_heaps_ok(dx.min(dy), dx.max(dy)),
    }
}

/// True iff `to` is reachable from `from` by exactly one legal move, with
/// both positions read as unordered pairs of heaps.
pub fn is_legal_move(params: GameParams, from: Position, to: Position) -> bool {
    reachable_oriented(params, from, to)
        || reachable_oriented(params, from, Position::new(to.y, to.x))
}

/// Every normalized position reachable in one move, without duplicates,
/// in ascending order. Refuses `x + y` above `sum_cap`.
pub fn legal_successors(params: GameParams, pos: Position, sum_cap: u64) -> Result<Vec<Position>> {
    let total = pos
        .x
        .checked_add(pos.y)
        .ok_or(Error::Overflow("heap sum"))?;
    if total > sum_cap {
        return Err(Error::ResourceLimit {
            what: "x + y",
            requested: total,
            cap: sum_cap,
        });
    }
    let (x, y) = (pos.x, pos.y);
    let (s, t) = (params.s(), params.t());
    let mut out = Vec::new();
    out.extend((0..x).map(|a| Position::new(a, y).normalize()));
    out.extend((0..y).map(|b| Position::new(x, b).normalize()));
    // a tokens from the first heap, b from the second
    for a in 1..=x {
        // b >= a: need b < s*a + t
        let hi = y.min(s * a + t - 1);
        for b in a..=hi {
            out.push(Position::new(x - a, y - b).normalize());
        }
        // b < a: need a < s*b + t, i.e. b > (a - t) / s
        let lo = if a >= t { (a - t) / s + 1 } else { 1 };
        let hi = y.min(a - 1);
        for b in lo..=hi {
            out.push(Position::new(x - a, y - b).normalize());
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: u64, t: u64) -> GameParams {
        GameParams::new(s, t).unwrap()
    }

    #[test]
    fn params_derived_digits() {
        let g = p(2, 2);
        assert_eq!((g.q(), g.r()), (1, 3));
        let g = p(1, 1);
        assert_eq!((g.q(), g.r()), (0, 1));
        assert!(GameParams::new(0, 1).is_err());
        assert!(GameParams::new(1, 0).is_err());
        assert!(GameParams::new(1 << 40, 1).is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(Position::new(9, 4)), Position::new(4, 9));
        assert_eq!(normalize(Position::new(0, 0)), Position::new(0, 0));
        assert_eq!(normalize(Position::new(5, 5)), Position::new(5, 5));
    }

    #[test]
    fn apply_move_examples() {
        let g = p(2, 2);
        let mv = Move::BothHeaps {
            k: 3,
            l: 7,
            k_heap: Heap::First,
        };
        assert_eq!(
            apply_move(g, Position::new(5, 15), mv).unwrap(),
            Position::new(2, 8)
        );

        let mv = Move::SingleHeap {
            heap: Heap::Second,
            take: 12,
        };
        assert_eq!(
            apply_move(g, Position::new(5, 30), mv).unwrap(),
            Position::new(5, 18)
        );

        let mv = Move::BothHeaps {
            k: 1,
            l: 5,
            k_heap: Heap::First,
        };
        assert!(matches!(
            apply_move(g, Position::new(5, 15), mv),
            Err(Error::IllegalMove {
                reason: IllegalReason::DifferenceTooLarge,
                ..
            })
        ));
    }

    #[test]
    fn apply_move_rejections() {
        let g = p(2, 2);
        let pos = Position::new(3, 4);
        let reason = |mv| match apply_move(g, pos, mv) {
            Err(Error::IllegalMove { reason, .. }) => reason,
            other => panic!("expected rejection, got {other:?}"),
        };
        assert_eq!(
            reason(Move::SingleHeap {
                heap: Heap::First,
                take: 0
            }),
            IllegalReason::ZeroTake
        );
        assert_eq!(
            reason(Move::SingleHeap {
                heap: Heap::First,
                take: 4
            }),
            IllegalReason::ExceedsHeap
        );
        assert_eq!(
            reason(Move::BothHeaps {
                k: 3,
                l: 2,
                k_heap: Heap::Second
            }),
            IllegalReason::KAboveL
        );
        assert_eq!(
            reason(Move::BothHeaps {
                k: 4,
                l: 4,
                k_heap: Heap::First
            }),
            IllegalReason::ExceedsHeap
        );
    }

    #[test]
    fn is_legal_move_examples() {
        assert!(is_legal_move(
            p(2, 2),
            Position::new(5, 15),
            Position::new(2, 8)
        ));
        assert!(!is_legal_move(
            p(2, 2),
            Position::new(5, 15),
            Position::new(5, 15)
        ));
        assert!(!is_legal_move(
            p(1, 1),
            Position::new(3, 5),
            Position::new(1, 2)
        ));
        assert!(!is_legal_move(
            p(1, 1),
            Position::new(3, 5),
            Position::new(4, 5)
        ));
    }

    #[test]
    fn successors_examples() {
        let g = p(2, 2);
        assert!(legal_successors(g, Position::new(0, 0), SUCCESSOR_SUM_CAP)
            .unwrap()
            .is_empty());
        assert_eq!(
            legal_successors(g, Position::new(1, 1), SUCCESSOR_SUM_CAP).unwrap(),
            vec![Position::new(0, 0), Position::new(0, 1)]
        );
        let succ = legal_successors(g, Position::new(1, 4), SUCCESSOR_SUM_CAP).unwrap();
        assert!(!succ.contains(&Position::new(0, 0)));
        assert_eq!(
            succ,
            vec![
                Position::new(0, 1),
                Position::new(0, 2),
                Position::new(0, 3),
                Position::new(0, 4),
                Position::new(1, 1),
                Position::new(1, 2),
                Position::new(1, 3),
            ]
        );
        assert!(legal_successors(g, Position::new(6000, 5000), SUCCESSOR_SUM_CAP).is_err());
    }

    /// Every pair of amounts in a small box, checked one by one.
    fn brute_successors(g: GameParams, pos: Position) -> Vec<Position> {
        let mut out = Vec::new();
        for dx in 0..=pos.x {
            for dy in 0..=pos.y {
                let to = Position::new(pos.x - dx, pos.y - dy);
                if is_legal_move(g, pos, to) {
                    out.push(to.normalize());
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn successors_complete_and_sound() {
        for (s, t) in [(1, 1), (2, 2), (3, 1), (1, 4), (4, 3)] {
            let g = p(s, t);
            for x in 0..=30u64 {
                for y in 0..=(30 - x) {
                    let pos = Position::new(x, y);
                    let succ = legal_successors(g, pos, SUCCESSOR_SUM_CAP).unwrap();
                    assert_eq!(succ, brute_successors(g, pos), "{g} {pos}");
                    assert_eq!(succ.is_empty(), pos.is_terminal());
                    for to in &succ {
                        assert!(is_legal_move(g, pos, *to));
                    }
                }
            }
        }
    }

    #[test]
    fn wythoff_diagonal_rule() {
        let g = p(1, 1);
        for k in 1..=50 {
            for l in k..=50 {
                assert_eq!(g.both_heaps_ok(k, l), k == l);
            }
        }
    }

    #[test]
    fn deserialized_params_are_checked() {
        let p: GameParams = serde_json::from_str(r#"{"s":2,"t":3}"#).unwrap();
        assert_eq!((p.s(), p.t()), (2, 3));
        assert!(serde_json::from_str::<GameParams>(r#"{"s":0,"t":3}"#).is_err());
        assert!(serde_json::from_str::<GameParams>(r#"{"s":1,"t":5000000000}"#).is_err());
    }
}
