//! `heapgame bench`: numeration strategy on huge heaps against the
//! table-driven strategy, which must build the mex table up to the heap.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::model::{GameParams, Position};
use crate::oracle::ab_by_mex_until;
use crate::strategy::{classify_table, Engine, Outcome};

pub const FAST_HEAP_MAX: u64 = 1_000_000_000_000_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct FastStats {
    pub samples: u64,
    pub heap_max: u64,
    pub p_positions: u64,
    pub mean_ns: f64,
    pub max_ns: u128,
    pub max_ops: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TablePoint {
    pub x: u64,
    pub rows: usize,
    pub table_ms: f64,
    pub fast_ns: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub s: u64,
    pub t: u64,
    pub seed: u64,
    pub fast: FastStats,
    pub table: Vec<TablePoint>,
}

/// Random positions with both heaps below `heap_max`, from a seeded stream.
pub fn random_positions(seed: u64, count: u64, heap_max: u64) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Position::new(rng.gen_range(0..=heap_max), rng.gen_range(0..=heap_max)))
        .collect()
}

pub fn run_bench(
    params: GameParams,
    seed: u64,
    samples: u64,
    table_max: u64,
) -> Result<BenchReport> {
    let engine = Engine::new(params)?;
    let positions = random_positions(seed, samples, FAST_HEAP_MAX);
    let (mut total, mut max_ns, mut max_ops, mut p_count) = (0u128, 0u128, 0u32, 0u64);
    for &pos in &positions {
        let start = Instant::now();
        let (kind, ops) = engine.classify_counted(pos);
        let mv = engine.winning_move_fast(pos)?;
        let ns = start.elapsed().as_nanos();
        std::hint::black_box(mv);
        total += ns;
        max_ns = max_ns.max(ns);
        max_ops = max_ops.max(ops);
        p_count += u64::from(kind == Outcome::P);
    }
    let fast = FastStats {
        samples,
        heap_max: FAST_HEAP_MAX,
        p_positions: p_count,
        mean_ns: if samples == 0 {
            0.0
        } else {
            total as f64 / samples as f64
        },
        max_ns,
        max_ops,
    };

    let mut table = Vec::new();
    let mut x = 10u64;
    while x <= table_max {
        // the second heap sits just past x so the answer is not trivial
        let pos = Position::new(x, x.saturating_mul(2).saturating_add(1));
        let start = Instant::now();
        let tab = ab_by_mex_until(params, x)?;
        let verdict = classify_table(&tab, pos)?;
        let table_ms = start.elapsed().as_secs_f64() * 1e3;
        let start = Instant::now();
        let fast_kind = engine.classify_fast(pos);
        let fast_ns = start.elapsed().as_nanos();
        debug_assert_eq!(verdict.kind, fast_kind);
        table.push(TablePoint {
            x,
            rows: tab.len(),
            table_ms,
            fast_ns,
        });
        x = match x.checked_mul(10) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(BenchReport {
        s: params.s(),
        t: params.t(),
        seed,
        fast,
        table,
    })
}

impl BenchReport {
    pub fn render_plain(&self) -> String {
        let mut out = String::new();
        let f = &self.fast;
        let _ = writeln!(out, "game s={} t={}, seed {}", self.s, self.t, self.seed);
        let _ = writeln!(
            out,
            "numeration: {} positions with heaps <= {}: mean {:.0} ns, max {} ns, max {} digit ops, {} P-positions",
            f.samples, f.heap_max, f.mean_ns, f.max_ns, f.max_ops, f.p_positions
        );
        let _ = writeln!(
            out,
            "{:>12} {:>10} {:>12} {:>10}",
            "x", "rows", "table ms", "fast ns"
        );
        for p in &self.table {
            let _ = writeln!(
                out,
                "{:>12} {:>10} {:>12.3} {:>10}",
                p.x, p.rows, p.table_ms, p.fast_ns
            );
        }
        out
    }
}
