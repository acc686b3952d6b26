//! C interface to the heapgame engine.
//!
//! Every function returns an [`HgStatus`] and writes results through out
//! pointers. Engines and tables are opaque handles released with their
//! `_free` functions. Panics are caught at the boundary and reported as
//! `HG_STATUS_PANIC`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use heapgame::model::is_legal_move;
use heapgame::oracle::ab_by_mex;
use heapgame::{Engine, Error, GameParams, Move, Outcome, Position, Representation, SequenceTable};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParams = 2,
    IllegalMove = 3,
    Overflow = 4,
    ResourceLimit = 5,
    BufferTooSmall = 6,
    TableTooSmall = 7,
    MalformedInput = 8,
    OutOfRange = 9,
    Internal = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgOutcome {
    /// The player who just moved wins.
    P = 0,
    /// The player to move wins.
    N = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgMoveKind {
    /// No winning move: the position is P.
    None = 0,
    SingleHeap = 1,
    BothHeaps = 2,
}

/// A move as the number of tokens taken from each heap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HgMove {
    pub kind: HgMoveKind,
    pub take_x: u64,
    pub take_y: u64,
}

/// Opaque strategy engine for one `(s, t)`.
pub struct HgEngine(Engine);

/// Opaque table of P-positions `(n, A_n, B_n)`.
pub struct HgTable(SequenceTable);

impl From<&Error> for HgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParams { .. } => HgStatus::InvalidParams,
            Error::IllegalMove { .. } => HgStatus::IllegalMove,
            Error::Overflow(_) => HgStatus::Overflow,
            Error::ResourceLimit { .. } => HgStatus::ResourceLimit,
            Error::MalformedRepresentation(_) => HgStatus::MalformedInput,
            Error::TableTooSmall { .. } => HgStatus::TableTooSmall,
            Error::Internal(_) => HgStatus::Internal,
        }
    }
}

impl From<Error> for HgStatus {
    fn from(e: Error) -> Self {
        HgStatus::from(&e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), HgStatus>) -> HgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HgStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => HgStatus::Panic,
    }
}

unsafe fn out<'a, T>(ptr: *mut T) -> Result<&'a mut T, HgStatus> {
    ptr.as_mut().ok_or(HgStatus::NullPointer)
}

unsafe fn engine<'a>(ptr: *const HgEngine) -> Result<&'a Engine, HgStatus> {
    ptr.as_ref().map(|e| &e.0).ok_or(HgStatus::NullPointer)
}

/// Static description of a status code. Never NULL.
#[no_mangle]
pub extern "C" fn hg_status_str(status: HgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        HgStatus::Ok => c"ok",
        HgStatus::NullPointer => c"null pointer argument",
        HgStatus::InvalidParams => c"s and t must be positive 32-bit integers",
        HgStatus::IllegalMove => c"illegal move",
        HgStatus::Overflow => c"arithmetic overflow",
        HgStatus::ResourceLimit => c"resource limit exceeded",
        HgStatus::BufferTooSmall => c"buffer too small",
        HgStatus::TableTooSmall => c"table does not reach the requested heap",
        HgStatus::MalformedInput => c"malformed input",
        HgStatus::OutOfRange => c"index out of range",
        HgStatus::Internal => c"internal inconsistency",
        HgStatus::Panic => c"panic caught at the C boundary",
    };
    s.as_ptr()
}

/// Creates an engine for the game `(s, t)`. Free it with `hg_engine_free`.
///
/// # Safety
/// `out_engine` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_engine_new(s: u64, t: u64, out_engine: *mut *mut HgEngine) -> HgStatus {
    guard(|| {
        let slot = out(out_engine)?;
        let params = GameParams::new(s, t)?;
        *slot = Box::into_raw(Box::new(HgEngine(Engine::new(params)?)));
        Ok(())
    })
}

/// # Safety
/// `engine` must be NULL or a pointer from `hg_engine_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_engine_free(engine: *mut HgEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// # Safety
/// `engine` must come from `hg_engine_new`; `out_outcome` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_classify(
    engine_ptr: *const HgEngine,
    x: u64,
    y: u64,
    out_outcome: *mut HgOutcome,
) -> HgStatus {
    guard(|| {
        let e = engine(engine_ptr)?;
        let slot = out(out_outcome)?;
        *slot = match e.classify_fast(Position::new(x, y)) {
            Outcome::P => HgOutcome::P,
            Outcome::N => HgOutcome::N,
        };
        Ok(())
    })
}

/// Writes a move into a P-position, or kind `HG_MOVE_KIND_NONE` when `(x, y)`
/// is itself P. `take_x` and `take_y` refer to the heaps as given.
///
/// # Safety
/// `engine` must come from `hg_engine_new`; `out_move` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_winning_move(
    engine_ptr: *const HgEngine,
    x: u64,
    y: u64,
    out_move: *mut HgMove,
) -> HgStatus {
    guard(|| {
        let e = engine(engine_ptr)?;
        let slot = out(out_move)?;
        *slot = match e.winning_move_fast(Position::new(x, y))? {
            None => HgMove {
                kind: HgMoveKind::None,
                take_x: 0,
                take_y: 0,
            },
            Some(mv) => {
                let (take_x, take_y) = mv.amounts();
                let kind = match mv {
                    Move::SingleHeap { .. } => HgMoveKind::SingleHeap,
                    Move::BothHeaps { .. } => HgMoveKind::BothHeaps,
                };
                HgMove {
                    kind,
                    take_x,
                    take_y,
                }
            }
        };
        Ok(())
    })
}

/// # Safety
/// `engine` must come from `hg_engine_new`; `out_legal` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_is_legal_move(
    engine_ptr: *const HgEngine,
    x: u64,
    y: u64,
    to_x: u64,
    to_y: u64,
    out_legal: *mut bool,
) -> HgStatus {
    guard(|| {
        let e = engine(engine_ptr)?;
        *out(out_legal)? =
            is_legal_move(e.params(), Position::new(x, y), Position::new(to_x, to_y));
        Ok(())
    })
}

/// Writes the representation of `m` as a NUL-terminated string, most
/// significant digit first. `*out_needed`, when not NULL, receives the
/// buffer size required including the terminator, also on
/// `HG_STATUS_BUFFER_TOO_SMALL`.
///
/// # Safety
/// `buf` must be valid for `cap` bytes of writes (it may be NULL when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn hg_represent(
    engine_ptr: *const HgEngine,
    m: u64,
    buf: *mut c_char,
    cap: usize,
    out_needed: *mut usize,
) -> HgStatus {
    guard(|| {
        let e = engine(engine_ptr)?;
        let text = e.system().represent(m).render(e.params());
        let needed = text.len() + 1;
        if let Some(n) = out_needed.as_mut() {
            *n = needed;
        }
        if cap < needed {
            return Err(HgStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err(HgStatus::NullPointer);
        }
        std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast::<u8>(), text.len());
        *buf.add(text.len()) = 0;
        Ok(())
    })
}

/// Parses a representation and writes its value. Rejects digit strings
/// the greedy algorithm would never produce.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_value` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_value(
    engine_ptr: *const HgEngine,
    text: *const c_char,
    out_value: *mut u64,
) -> HgStatus {
    guard(|| {
        let e = engine(engine_ptr)?;
        if text.is_null() {
            return Err(HgStatus::NullPointer);
        }
        let slot = out(out_value)?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| HgStatus::MalformedInput)?;
        let rep = Representation::parse(text)?;
        if !e.system().validate(&rep) {
            return Err(HgStatus::MalformedInput);
        }
        *slot = e.system().value(&rep)?;
        Ok(())
    })
}

/// Number of evil integers in `1..=x`.
///
/// # Safety
/// `engine` must come from `hg_engine_new`; `out_rank` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_rank_evil(
    engine_ptr: *const HgEngine,
    x: u64,
    out_rank: *mut u64,
) -> HgStatus {
    guard(|| {
        let e = engine(engine_ptr)?;
        *out(out_rank)? = e.system().rank_evil(x);
        Ok(())
    })
}

/// The `n`-th evil integer, which is `A_n`.
///
/// # Safety
/// `engine` must come from `hg_engine_new`; `out_value` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_select_evil(
    engine_ptr: *const HgEngine,
    n: u64,
    out_value: *mut u64,
) -> HgStatus {
    guard(|| {
        let e = engine(engine_ptr)?;
        *out(out_value)? = e.system().select_evil(n)?;
        Ok(())
    })
}

/// Builds rows `0..=n_max` by the mex recurrence. Free with `hg_table_free`.
///
/// # Safety
/// `out_table` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_table_new_mex(
    s: u64,
    t: u64,
    n_max: u64,
    out_table: *mut *mut HgTable,
) -> HgStatus {
    guard(|| {
        let slot = out(out_table)?;
        let table = ab_by_mex(GameParams::new(s, t)?, n_max)?;
        *slot = Box::into_raw(Box::new(HgTable(table)));
        Ok(())
    })
}

/// Number of rows; 0 for NULL.
///
/// # Safety
/// `table` must be NULL or come from `hg_table_new_mex`.
#[no_mangle]
pub unsafe extern "C" fn hg_table_len(table: *const HgTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.len())
}

/// # Safety
/// `table` must come from `hg_table_new_mex`; `out_a`, `out_b` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_table_row(
    table: *const HgTable,
    n: usize,
    out_a: *mut u64,
    out_b: *mut u64,
) -> HgStatus {
    guard(|| {
        let table = table.as_ref().ok_or(HgStatus::NullPointer)?;
        let (a, b) = (out(out_a)?, out(out_b)?);
        let row = table.0.rows.get(n).ok_or(HgStatus::OutOfRange)?;
        *a = row.a;
        *b = row.b;
        Ok(())
    })
}

/// # Safety
/// `table` must be NULL or a pointer from `hg_table_new_mex` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_table_free(table: *mut HgTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}
