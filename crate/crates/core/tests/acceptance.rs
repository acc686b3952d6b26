//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! if any fails. Runs without the libtest harness so the lines come out in
//! order and unbuffered.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use heapgame::analysis::{
    beatty_table, check_lemma34, first_prefix_with_both_gaps, first_prefix_with_both_unit_runs,
    gap_statistics, quasilinearity_experiment, spectral_bounds, theorem4_equivalence, QGenerator,
};
use heapgame::cli;
use heapgame::cli::bench::{random_positions, FAST_HEAP_MAX};
use heapgame::model::{is_legal_move, legal_successors};
use heapgame::numeration::tail_parity;
use heapgame::oracle::{ab_by_mex, ab_by_mex_until, p_positions_retrograde, retrograde_grid, Row};
use heapgame::{Engine, GameParams, NumerationSystem, Outcome, Position, Representation};

const AB_TABLE_MAX: Duration = Duration::from_secs(1);
const RETROGRADE_GRID_MAX: Duration = Duration::from_secs(60);
const FAST_QUERY_MAX: Duration = Duration::from_millis(10);
const FAST_QUERY_TYPICAL: Duration = Duration::from_millis(1);
/// Log-log slope of table-method time against x; 1.0 is linear. Timing
/// noise at the 10^4 point gets a 10% allowance.
const TABLE_TIME_MIN_SLOPE: f64 = 0.9;
/// Rows built grow as `x * const - O(1)`, which is a slope of 1 up to rounding.
const TABLE_ROWS_MIN_SLOPE: f64 = 0.99;
const QUASI_SPECTRAL_MAX: u64 = 1;

const AB_2_2: [(u64, u64); 14] = [
    (0, 0),
    (1, 4),
    (2, 8),
    (3, 12),
    (5, 18),
    (6, 22),
    (7, 26),
    (9, 32),
    (10, 36),
    (11, 40),
    (13, 46),
    (14, 50),
    (15, 54),
    (16, 58),
];

const REPRESENTATIONS_2_2: [&str; 60] = [
    "1", "2", "3", "10", "11", "12", "13", "20", "21", "22", "23", "30", "31", "100", "101", "102",
    "103", "110", "111", "112", "113", "120", "121", "122", "123", "130", "131", "200", "201",
    "202", "203", "210", "211", "212", "213", "220", "221", "222", "223", "230", "231", "300",
    "301", "302", "303", "310", "311", "312", "313", "1000", "1001", "1002", "1003", "1010",
    "1011", "1012", "1013", "1020", "1021", "1022",
];

const Q_2_1: [u64; 21] = [
    0, 1, 2, 1, 3, 4, 2, 5, 6, 7, 8, 3, 9, 10, 4, 11, 12, 13, 14, 5, 15,
];
const A_PRIME_2_1: [u64; 20] = [
    0, 1, 2, 4, 5, 7, 8, 9, 10, 12, 13, 15, 16, 17, 18, 20, 21, 23, 24, 26,
];
const B_PRIME_2_1: [u64; 8] = [0, 3, 6, 11, 14, 19, 22, 25];
const Q1_INDICES_2_1: [u64; 16] = [0, 1, 2, 4, 5, 7, 8, 9, 10, 12, 13, 15, 16, 17, 18, 20];
const Q2_INDICES_2_1: [u64; 6] = [0, 3, 6, 11, 14, 19];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn grid() -> Vec<GameParams> {
    (1..=4)
        .flat_map(|s| (1..=4).map(move |t| GameParams::new(s, t).unwrap()))
        .collect()
}

fn on_grid(mut f: impl FnMut(GameParams) -> Result<(), String>) -> Result<(), String> {
    for p in grid() {
        f(p).map_err(|e| format!("s={} t={}: {e}", p.s(), p.t()))?;
    }
    Ok(())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ac1_ab_table() -> Verdict {
    let start = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(
        [
            "heapgame", "tables", "ab", "--s", "2", "--t", "2", "--n", "13", "--format", "csv",
        ],
        &mut out,
        &mut err,
    );
    let elapsed = start.elapsed();
    ensure(code == 0, || format!("exit code {code}"))?;
    let rows = cli::export::parse_ab_csv(&String::from_utf8(out).map_err(e2s)?).map_err(e2s)?;
    let expected: Vec<Row> = AB_2_2
        .iter()
        .enumerate()
        .map(|(n, &(a, b))| Row { n: n as u64, a, b })
        .collect();
    ensure(rows == expected, || format!("got {rows:?}"))?;
    ensure(elapsed < AB_TABLE_MAX, || format!("took {elapsed:?}"))?;
    Ok(format!("14 rows in {elapsed:?}"))
}

fn ac2_representations() -> Verdict {
    let p = GameParams::new(2, 2).unwrap();
    let sys = NumerationSystem::new(p).map_err(e2s)?;
    ensure(sys.bases().as_slice()[..4] == [1, 4, 14, 50], || {
        "bases differ".into()
    })?;
    for (i, want) in REPRESENTATIONS_2_2.iter().enumerate() {
        let m = i as u64 + 1;
        let got = sys.represent(m).render(p);
        ensure(got == *want, || format!("{m}: got {got}, want {want}"))?;
    }
    Ok("60 strings".into())
}

fn ac3_q_table() -> Verdict {
    let p = GameParams::new(2, 1).unwrap();
    let mut gen = QGenerator::new(p);
    while gen.triple().a_prime.len() < A_PRIME_2_1.len() || gen.triple().q_seq.len() < Q_2_1.len() {
        gen.step();
    }
    let tr = gen.into_triple();
    ensure(tr.q_seq[..21] == Q_2_1, || {
        format!("Q = {:?}", &tr.q_seq[..21])
    })?;
    ensure(tr.a_prime[..20] == A_PRIME_2_1, || {
        format!("A' = {:?}", &tr.a_prime[..20])
    })?;
    ensure(tr.b_prime[..8] == B_PRIME_2_1, || {
        format!("B' = {:?}", &tr.b_prime[..8])
    })?;
    let first: Vec<u64> = tr.q1_indices.iter().copied().filter(|&i| i <= 20).collect();
    let repeat: Vec<u64> = tr.q2_indices.iter().copied().filter(|&i| i <= 20).collect();
    ensure(first == Q1_INDICES_2_1 && repeat == Q2_INDICES_2_1, || {
        format!("split {first:?} / {repeat:?}")
    })?;
    Ok("Q, A', B' and the first/repeat split".into())
}

fn ac4_retrograde() -> Verdict {
    let start = Instant::now();
    let mut total = 0;
    on_grid(|p| {
        let mex = ab_by_mex_until(p, 151).map_err(e2s)?.pairs_within(150);
        let retro = p_positions_retrograde(p, 150).map_err(e2s)?;
        total += retro.len();
        ensure(mex == retro, || {
            let diff: BTreeSet<_> = mex.symmetric_difference(&retro).take(3).collect();
            format!("differ at {diff:?}")
        })
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < RETROGRADE_GRID_MAX, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{total} P-positions over 16 cells in {elapsed:?}"))
}

fn ac5_evil_old() -> Verdict {
    on_grid(|p| {
        let eo = NumerationSystem::new(p)
            .map_err(e2s)?
            .evil_old_pairs(1000)
            .map_err(e2s)?;
        let mex = ab_by_mex(p, 1000).map_err(e2s)?;
        ensure(eo.rows == mex.rows, || "rows differ".into())
    })?;
    Ok("n <= 1000".into())
}

fn ac6_q_sequences() -> Verdict {
    on_grid(|p| {
        let c = theorem4_equivalence(p, 200).map_err(e2s)?;
        ensure(c.passed, || c.detail)
    })?;
    Ok("n <= 200".into())
}

fn ac7_fixpoint() -> Verdict {
    let (mut p_count, mut n_count) = (0u64, 0u64);
    on_grid(|p| {
        let engine = Engine::new(p).map_err(e2s)?;
        let truth = retrograde_grid(p, 150).map_err(e2s)?;
        for x in 0..=150 {
            for y in x..=150 {
                let pos = Position::new(x, y);
                match engine.classify_fast(pos) {
                    Outcome::P => {
                        p_count += 1;
                        for succ in legal_successors(p, pos, u64::MAX).map_err(e2s)? {
                            ensure(
                                engine.classify_fast(succ) == Outcome::N && !truth.is_p(succ),
                                || format!("{pos} -> {succ} stays in P"),
                            )?;
                        }
                    }
                    Outcome::N => {
                        n_count += 1;
                        let mv = engine
                            .winning_move_fast(pos)
                            .map_err(e2s)?
                            .ok_or_else(|| format!("{pos}: no witness"))?;
                        let (a, b) = mv.amounts();
                        let to = Position::new(x - a, y - b);
                        ensure(is_legal_move(p, pos, to) && truth.is_p(to), || {
                            format!("{pos}: witness {mv} lands on {to}")
                        })?;
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{p_count} P and {n_count} N positions"))
}

fn ac8_shift_identity() -> Verdict {
    on_grid(|p| {
        let sys = NumerationSystem::new(p).map_err(e2s)?;
        let (s, t) = (p.s() as u128, p.t() as u128);
        for k in 1..=1000u64 {
            let v = sys.select_evil(k).map_err(e2s)?;
            let rep = sys.represent(v);
            let w = sys
                .value_wide(&heapgame::numeration::left_shift(&rep))
                .map_err(e2s)?;
            ensure(w - s * v as u128 == t * k as u128, || {
                format!("k={k}: V={v}, W={w}")
            })?;
        }
        Ok(())
    })?;
    Ok("k <= 1000".into())
}

fn ac9_increment() -> Verdict {
    on_grid(|p| {
        let sys = NumerationSystem::new(p).map_err(e2s)?;
        let mut rep = Representation::default();
        for m in 0..=100_000u64 {
            let (next, case) = sys.increment(&rep).map_err(e2s)?;
            let want = sys.represent(m + 1);
            ensure(next == want, || {
                format!("{m}+1: {} vs {}", next.render(p), want.render(p))
            })?;
            ensure(tail_parity(&next) == case.predicted_parity(), || {
                format!("{}: {case:?} mispredicts", m + 1)
            })?;
            rep = next;
        }
        Ok(())
    })?;
    Ok("m <= 100000".into())
}

fn ac10_gaps() -> Verdict {
    on_grid(|p| {
        let stats = gap_statistics(&ab_by_mex(p, 1000).map_err(e2s)?);
        let (s, t) = (p.s(), p.t());
        let a: Vec<u64> = stats.a_gaps.keys().copied().collect();
        let b: Vec<u64> = stats.b_gaps.keys().copied().collect();
        ensure(a.iter().all(|g| matches!(g, 1 | 2)), || {
            format!("A gaps {a:?}")
        })?;
        ensure(b == [s + t, 2 * s + t], || format!("B gaps {b:?}"))
    })?;
    Ok("n <= 1000, both B gaps seen".into())
}

fn flag(prefix: &[u64]) -> bool {
    spectral_bounds(prefix).is_some_and(|b| b.is_spectral_candidate())
}

/// Lengths `k, 2k, 4k, ...` below `len`, then `len`. The flag can only turn
/// from true to false as a prefix grows, so these samples are enough to
/// catch a wrong answer at `k` or after.
fn sample_lengths(k: usize, len: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(k), |&l| Some(l * 2))
        .take_while(|&l| l < len)
        .collect();
    out.push(len);
    out
}

fn ac11_spectral() -> Verdict {
    let mut notes = Vec::new();
    on_grid(|p| {
        let table = ab_by_mex(p, 1000).map_err(e2s)?;
        let (a, b) = (table.a_column(), table.b_column());
        let (s, t) = (p.s(), p.t());
        if s == 1 {
            for len in (2..=200).chain([a.len()]) {
                ensure(flag(&a[..len]) && flag(&b[..len]), || {
                    format!("prefix {len} rejected")
                })?;
            }
            return Ok(());
        }
        let kb = first_prefix_with_both_gaps(&b, s + t, 2 * s + t).ok_or("B lacks a gap")?;
        let ka =
            first_prefix_with_both_unit_runs(&a, (s + t - 2) as usize, (2 * s + t - 2) as usize)
                .ok_or("A lacks a unit run")?;
        for len in sample_lengths(kb, b.len()) {
            ensure(!flag(&b[..len]), || format!("B prefix {len} accepted"))?;
        }
        for len in sample_lengths(ka, a.len()) {
            ensure(!flag(&a[..len]), || format!("A prefix {len} accepted"))?;
        }
        if s == 2 && t == 2 {
            notes.push(format!("s=t=2 flags drop at B:{kb} A:{ka}"));
        }
        Ok(())
    })?;
    for t in 1..=3 {
        let p = GameParams::new(1, t).unwrap();
        let beatty = beatty_table(t, 1000).map_err(e2s)?;
        let mex = ab_by_mex(p, 1000).map_err(e2s)?;
        ensure(beatty.rows == mex.rows, || {
            format!("Beatty form differs for t={t}")
        })?;
    }
    notes.push("Beatty = mex for t=1..3".into());
    Ok(notes.join("; "))
}

fn ac12_q_gaps() -> Verdict {
    on_grid(|p| {
        let mut gen = QGenerator::new(p);
        while gen.triple().q1_indices.len() < 500 {
            gen.step();
        }
        match check_lemma34(gen.triple()).into_iter().find(|c| !c.passed) {
            Some(c) => Err(format!("{}: {}", c.name, c.detail)),
            None => Ok(()),
        }
    })?;
    Ok(">= 500 first occurrences per cell".into())
}

fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn ac13_performance() -> Verdict {
    let p = GameParams::new(2, 2).unwrap();
    let engine = Engine::new(p).map_err(e2s)?;
    let mut times = Vec::with_capacity(10_000);
    for pos in random_positions(0, 10_000, FAST_HEAP_MAX) {
        let start = Instant::now();
        let verdict = engine.verdict(pos).map_err(e2s)?;
        times.push(start.elapsed());
        std::hint::black_box(verdict);
    }
    times.sort();
    let (median, worst) = (times[times.len() / 2], times[times.len() - 1]);
    ensure(worst < FAST_QUERY_MAX, || {
        format!("slowest query {worst:?}")
    })?;
    ensure(median < FAST_QUERY_TYPICAL, || {
        format!("median query {median:?}")
    })?;

    let xs = [10_000u64, 100_000, 1_000_000];
    let (mut secs, mut rows) = (Vec::new(), Vec::new());
    for &x in &xs {
        let mut best = Duration::MAX;
        let mut len = 0;
        for _ in 0..5 {
            let start = Instant::now();
            let table = ab_by_mex_until(p, x).map_err(e2s)?;
            best = best.min(start.elapsed());
            len = table.len();
        }
        secs.push(best.as_secs_f64());
        rows.push(len as f64);
    }
    let xf: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
    let time_slope = loglog_slope(&xf, &secs);
    let rows_slope = loglog_slope(&xf, &rows);
    ensure(rows_slope >= TABLE_ROWS_MIN_SLOPE, || {
        format!("rows slope {rows_slope:.3}")
    })?;
    ensure(time_slope >= TABLE_TIME_MIN_SLOPE, || {
        format!("time slope {time_slope:.3} ({secs:?})")
    })?;
    Ok(format!(
        "median {median:?}, worst {worst:?}; table time slope {time_slope:.2}, rows slope {rows_slope:.3}"
    ))
}

fn ac14_quasilinearity() -> Verdict {
    let mut reports = Vec::new();
    for s in 1..=3 {
        let rep =
            quasilinearity_experiment(GameParams::new(s, s).unwrap(), 300, 50).map_err(e2s)?;
        if s == 1 {
            ensure(rep.max_deviation <= QUASI_SPECTRAL_MAX, || {
                format!("s=t=1 deviation {}", rep.max_deviation)
            })?;
        }
        reports.push(rep);
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("quasilinearity.json");
    std::fs::write(&path, serde_json::to_string_pretty(&reports).map_err(e2s)?).map_err(e2s)?;
    let devs: Vec<String> = reports
        .iter()
        .map(|r| format!("s=t={}: {}", r.s, r.max_deviation))
        .collect();
    Ok(format!(
        "{} (archived to {})",
        devs.join(", "),
        path.display()
    ))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("ab table for s=t=2", ac1_ab_table),
        ("representations of 1..60 for s=t=2", ac2_representations),
        ("Q sequences for s=2 t=1", ac3_q_table),
        ("mex table = retrograde P-set, bound 150", ac4_retrograde),
        ("evil/old pairs = mex table, n <= 1000", ac5_evil_old),
        ("first/last occurrences in Q = mex table", ac6_q_sequences),
        ("strategy fixpoint, x <= y <= 150", ac7_fixpoint),
        ("left shift identity W_k - s V_k = t k", ac8_shift_identity),
        ("increment and parity prediction", ac9_increment),
        ("gap sets", ac10_gaps),
        ("spectral dichotomy and Beatty form", ac11_spectral),
        ("gap rules in Q", ac12_q_gaps),
        (
            "numeration strategy vs table strategy timing",
            ac13_performance,
        ),
        ("second-difference experiment", ac14_quasilinearity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let elapsed = start.elapsed();
        match res {
            Ok(detail) => println!("[PASS] AC{:<2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] AC{:<2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
