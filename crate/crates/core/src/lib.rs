//! Strategy engine and verification suite for the two-heap take-away games
//! where one move takes from a single heap and the other takes `k` and `l`
//! tokens from both heaps with `0 < k <= l < s*k + t`.
//!
//! P-positions are computed four independent ways (mex recurrence,
//! retrograde analysis, the evil/old numeration route and the `Q`
//! sequences), and winning moves come from a strategy whose cost is linear
//! in the bit length of the heaps.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod model;
pub mod numeration;
pub mod oracle;
pub mod strategy;

pub use error::{Error, Result};
pub use model::{GameParams, Heap, Move, Position};
pub use numeration::{NumerationSystem, Representation, TailParity};
pub use oracle::{Row, SequenceTable, Source};
pub use strategy::{Engine, Outcome, Verdict};
