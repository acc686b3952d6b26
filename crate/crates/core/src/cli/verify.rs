//! `heapgame verify`: cross-checks between independent constructions, run
//! over a grid of `(s, t)` cells.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    beatty_table, check_lemma34, first_prefix_with_both_gaps, first_prefix_with_both_unit_runs,
    gap_statistics, spectral_bounds, theorem4_equivalence, QGenerator,
};
use crate::error::Result;
use crate::model::{is_legal_move, legal_successors, GameParams, Position};
use crate::numeration::{tail_parity, NumerationSystem, Representation, TailParity};
use crate::oracle::{ab_by_mex, ab_by_mex_until, p_positions_retrograde, retrograde_grid};
use crate::strategy::{classify_table, Engine, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// mex table against retrograde analysis
    #[value(alias = "theorem1")]
    MexVsRetrograde,
    /// evil/old pairs against the mex table
    #[value(alias = "theorem3")]
    EvilOld,
    /// first/last occurrences in Q against the mex table
    #[value(alias = "theorem4")]
    QSequences,
    /// fast, table and retrograde classifiers agree
    Classifiers,
    /// no P-to-P move, and every N-position has a move into P
    Fixpoint,
    /// increment against greedy representation, with parity prediction
    #[value(alias = "lemma1")]
    Increment,
    /// left shift of the n-th evil number is s*V_n + t*n
    #[value(alias = "lemma2")]
    ShiftIdentity,
    /// gap rules for first occurrences and repeats in Q
    #[value(alias = "lemma34")]
    QGaps,
    /// consecutive differences of A and B
    Gaps,
    /// which prefixes can start a spectrum; Beatty form for s = 1
    Spectral,
    /// representation parse/render/value round trips and ordering
    Roundtrip,
    /// select_evil inverts rank_evil
    RankSelect,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::MexVsRetrograde,
        Suite::EvilOld,
        Suite::QSequences,
        Suite::Classifiers,
        Suite::Fixpoint,
        Suite::Increment,
        Suite::ShiftIdentity,
        Suite::QGaps,
        Suite::Gaps,
        Suite::Spectral,
        Suite::Roundtrip,
        Suite::RankSelect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MexVsRetrograde => "mex-vs-retrograde",
            Suite::EvilOld => "evil-old",
            Suite::QSequences => "q-sequences",
            Suite::Classifiers => "classifiers",
            Suite::Fixpoint => "fixpoint",
            Suite::Increment => "increment",
            Suite::ShiftIdentity => "shift-identity",
            Suite::QGaps => "q-gaps",
            Suite::Gaps => "gaps",
            Suite::Spectral => "spectral",
            Suite::Roundtrip => "roundtrip",
            Suite::RankSelect => "rank-select",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub cells: Vec<GameParams>,
    /// Rows of the sequences checked.
    pub n: u64,
    /// Heap bound for the exhaustive suites.
    pub bound: u64,
    /// Largest integer for the numeration suites.
    pub max: u64,
}

impl VerifyConfig {
    pub fn default_grid() -> Vec<GameParams> {
        (1..=4)
            .flat_map(|s| (1..=4).map(move |t| GameParams::new(s, t).expect("small params")))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub status: Status,
    pub cells_checked: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n: u64,
    pub bound: u64,
    pub max: u64,
    pub cells: Vec<[u64; 2]>,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn render_plain(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let tag = match s.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "{tag} {} ({} cells)", s.suite, s.cells_checked);
            for f in &s.failures {
                let _ = writeln!(out, "     {f}");
            }
        }
        let _ = writeln!(
            out,
            "{} (n={}, bound={}, max={}, {} cells)",
            if self.passed {
                "all checks passed"
            } else {
                "verification FAILED"
            },
            self.n,
            self.bound,
            self.max,
            self.cells.len()
        );
        out
    }
}

enum CellResult {
    Pass,
    Skip,
    Fail(String),
}

fn fail(msg: String) -> Result<CellResult> {
    Ok(CellResult::Fail(msg))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<CellResult> {
    Ok(if ok {
        CellResult::Pass
    } else {
        CellResult::Fail(msg())
    })
}

fn mex_vs_retrograde(p: GameParams, bound: u64) -> Result<CellResult> {
    if bound == 0 {
        return Ok(CellResult::Skip);
    }
    let mex = ab_by_mex_until(p, bound + 1)?.pairs_within(bound);
    let retro = p_positions_retrograde(p, bound)?;
    check(mex == retro, || {
        let diff: Vec<_> = mex.symmetric_difference(&retro).take(3).collect();
        format!("sets differ, e.g. {diff:?}")
    })
}

fn evil_old(p: GameParams, n: u64) -> Result<CellResult> {
    let eo = NumerationSystem::new(p)?.evil_old_pairs(n)?;
    let mex = ab_by_mex(p, n)?;
    match eo.rows.iter().zip(&mex.rows).find(|(a, b)| a != b) {
        Some((a, b)) => fail(format!(
            "n={}: evil/old ({},{}) vs mex ({},{})",
            a.n, a.a, a.b, b.a, b.b
        )),
        None => Ok(CellResult::Pass),
    }
}

fn classifiers(p: GameParams, bound: u64) -> Result<CellResult> {
    if bound == 0 {
        return Ok(CellResult::Skip);
    }
    let engine = Engine::new(p)?;
    let grid = retrograde_grid(p, bound)?;
    let table = ab_by_mex_until(p, bound + 1)?;
    for x in 0..=bound {
        for y in x..=bound {
            let pos = Position::new(x, y);
            let truth = if grid.is_p(pos) {
                Outcome::P
            } else {
                Outcome::N
            };
            let fast = engine.classify_fast(pos);
            let tab = classify_table(&table, pos)?.kind;
            if fast != truth || tab != truth {
                return fail(format!(
                    "{pos}: retrograde {truth}, fast {fast}, table {tab}"
                ));
            }
        }
    }
    Ok(CellResult::Pass)
}

fn fixpoint(p: GameParams, bound: u64) -> Result<CellResult> {
    if bound == 0 {
        return Ok(CellResult::Skip);
    }
    let engine = Engine::new(p)?;
    for x in 0..=bound {
        for y in x..=bound {
            let pos = Position::new(x, y);
            match engine.classify_fast(pos) {
                Outcome::P => {
                    for succ in legal_successors(p, pos, u64::MAX)? {
                        if engine.classify_fast(succ) == Outcome::P {
                            return fail(format!("P-position {pos} moves to P-position {succ}"));
                        }
                    }
                }
                Outcome::N => {
                    let Some(mv) = engine.winning_move_fast(pos)? else {
                        return fail(format!("N-position {pos} has no witness"));
                    };
                    let (a, b) = mv.amounts();
                    let target = Position::new(x - a, y - b);
                    if !is_legal_move(p, pos, target) || engine.classify_fast(target) != Outcome::P
                    {
                        return fail(format!(
                            "witness {mv} from {pos} does not reach a P-position"
                        ));
                    }
                }
            }
        }
    }
    Ok(CellResult::Pass)
}

fn increment(p: GameParams, max: u64) -> Result<CellResult> {
    let sys = NumerationSystem::new(p)?;
    let mut rep = Representation::default();
    for m in 0..max {
        let (next, case) = sys.increment(&rep)?;
        let expected = sys.represent(m + 1);
        if next != expected {
            return fail(format!(
                "increment of {m} gives {} not {}",
                next.render(p),
                expected.render(p)
            ));
        }
        if tail_parity(&next) != case.predicted_parity() {
            return fail(format!("{}: {case:?} predicted the wrong parity", m + 1));
        }
        rep = next;
    }
    Ok(CellResult::Pass)
}

fn shift_identity(p: GameParams, n: u64) -> Result<CellResult> {
    let sys = NumerationSystem::new(p)?;
    let (s, t) = (p.s() as u128, p.t() as u128);
    for k in 1..=n {
        let v = sys.select_evil(k)?;
        let w = sys.digest(v).left_shifted;
        if w != s * v as u128 + t * k as u128 {
            return fail(format!("k={k}: V={v}, W={w}"));
        }
    }
    Ok(CellResult::Pass)
}

fn q_gaps(p: GameParams, n: u64) -> Result<CellResult> {
    let want = n.max(500) as usize;
    let mut gen = QGenerator::new(p);
    while gen.triple().q1_indices.len() < want {
        gen.step();
    }
    match check_lemma34(gen.triple()).into_iter().find(|c| !c.passed) {
        Some(c) => fail(format!("{}: {}", c.name, c.detail)),
        None => Ok(CellResult::Pass),
    }
}

fn gaps(p: GameParams, n: u64) -> Result<CellResult> {
    let stats = gap_statistics(&ab_by_mex(p, n)?);
    let (s, t) = (p.s(), p.t());
    if let Some(g) = stats.a_gaps.keys().find(|g| !matches!(g, 1 | 2)) {
        return fail(format!("A gap {g}"));
    }
    if let Some(g) = stats.b_gaps.keys().find(|&&g| g != s + t && g != 2 * s + t) {
        return fail(format!("B gap {g}"));
    }
    // both B gaps show up within the first few rows
    if n >= 2 * (s + t + 2) {
        return check(stats.b_gaps.len() == 2, || {
            format!("B gaps {:?}", stats.b_gaps)
        });
    }
    Ok(CellResult::Pass)
}

fn spectral_flag(prefix: &[u64]) -> bool {
    spectral_bounds(prefix).is_some_and(|b| b.is_spectral_candidate())
}

fn spectral(p: GameParams, n: u64) -> Result<CellResult> {
    if n < 64 {
        return Ok(CellResult::Skip);
    }
    let table = ab_by_mex(p, n)?;
    let (a, b) = (table.a_column(), table.b_column());
    let (s, t) = (p.s(), p.t());
    if s == 1 {
        if !spectral_flag(&a) || !spectral_flag(&b) {
            return fail(format!("s=1 prefix of length {} rejected", a.len()));
        }
        let beatty = beatty_table(t, n)?;
        return match beatty.rows.iter().zip(&table.rows).find(|(x, y)| x != y) {
            Some((x, y)) => fail(format!(
                "n={}: Beatty ({},{}) vs mex ({},{})",
                x.n, x.a, x.b, y.a, y.b
            )),
            None => Ok(CellResult::Pass),
        };
    }
    let Some(kb) = first_prefix_with_both_gaps(&b, s + t, 2 * s + t) else {
        return fail("B never shows both gaps".into());
    };
    let Some(ka) =
        first_prefix_with_both_unit_runs(&a, (s + t - 2) as usize, (2 * s + t - 2) as usize)
    else {
        return fail("A never shows both unit runs".into());
    };
    if spectral_flag(&b[..kb]) || spectral_flag(&b) {
        return fail(format!("B prefix of length {kb} still looks spectral"));
    }
    if spectral_flag(&a[..ka]) || spectral_flag(&a) {
        return fail(format!("A prefix of length {ka} still looks spectral"));
    }
    Ok(CellResult::Pass)
}

fn roundtrip(p: GameParams, max: u64) -> Result<CellResult> {
    let sys = NumerationSystem::new(p)?;
    let mut prev: Option<Representation> = None;
    for m in 0..=max {
        let rep = sys.represent(m);
        if !sys.validate(&rep) || sys.value(&rep)? != m {
            return fail(format!("{m} -> {} does not round trip", rep.render(p)));
        }
        if Representation::parse(&rep.render(p))? != rep {
            return fail(format!(
                "{m}: rendered form {} does not parse back",
                rep.render(p)
            ));
        }
        if let Some(prev) = &prev {
            if prev.cmp_canonical(&rep) != std::cmp::Ordering::Less {
                return fail(format!(
                    "{m}: representation order disagrees with value order"
                ));
            }
        }
        prev = Some(rep);
    }
    Ok(CellResult::Pass)
}

fn rank_select(p: GameParams, n: u64) -> Result<CellResult> {
    let sys = NumerationSystem::new(p)?;
    let mut expected_rank = 0;
    let upto = sys.select_evil(n)?;
    for x in 0..=upto {
        if x > 0 && sys.digest(x).parity() == TailParity::Evil {
            expected_rank += 1;
            if sys.select_evil(expected_rank)? != x {
                return fail(format!("select({expected_rank}) != {x}"));
            }
        }
        if sys.rank_evil(x) != expected_rank {
            return fail(format!(
                "rank({x}) = {} but {expected_rank} evil numbers are <= {x}",
                sys.rank_evil(x)
            ));
        }
    }
    Ok(CellResult::Pass)
}

fn run_cell(suite: Suite, p: GameParams, cfg: &VerifyConfig) -> CellResult {
    let res = match suite {
        Suite::MexVsRetrograde => mex_vs_retrograde(p, cfg.bound),
        Suite::EvilOld => evil_old(p, cfg.n),
        Suite::QSequences => theorem4_equivalence(p, cfg.n).map(|c| {
            if c.passed {
                CellResult::Pass
            } else {
                CellResult::Fail(c.detail)
            }
        }),
        Suite::Classifiers => classifiers(p, cfg.bound),
        Suite::Fixpoint => fixpoint(p, cfg.bound),
        Suite::Increment => increment(p, cfg.max),
        Suite::ShiftIdentity => shift_identity(p, cfg.n),
        Suite::QGaps => q_gaps(p, cfg.n),
        Suite::Gaps => gaps(p, cfg.n),
        Suite::Spectral => spectral(p, cfg.n),
        Suite::Roundtrip => roundtrip(p, cfg.max),
        Suite::RankSelect => rank_select(p, cfg.n),
    };
    res.unwrap_or_else(|e| CellResult::Fail(format!("error: {e}")))
}

pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> VerifyReport {
    let jobs: Vec<(usize, GameParams)> = suites
        .iter()
        .enumerate()
        .flat_map(|(i, _)| cfg.cells.iter().map(move |&p| (i, p)))
        .collect();
    let results: Vec<(usize, GameParams, CellResult)> = jobs
        .into_par_iter()
        .map(|(i, p)| (i, p, run_cell(suites[i], p, cfg)))
        .collect();

    let mut reports: Vec<SuiteReport> = suites
        .iter()
        .map(|s| SuiteReport {
            suite: s.name(),
            status: Status::Skipped,
            cells_checked: 0,
            failures: Vec::new(),
        })
        .collect();
    for (i, p, res) in results {
        let rep = &mut reports[i];
        match res {
            CellResult::Skip => {}
            CellResult::Pass => rep.cells_checked += 1,
            CellResult::Fail(msg) => {
                rep.cells_checked += 1;
                rep.failures.push(format!("s={} t={}: {msg}", p.s(), p.t()));
            }
        }
    }
    for rep in &mut reports {
        rep.status = if !rep.failures.is_empty() {
            Status::Fail
        } else if rep.cells_checked == 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
    }
    let passed = reports.iter().all(|r| r.status != Status::Fail);
    VerifyReport {
        n: cfg.n,
        bound: cfg.bound,
        max: cfg.max,
        cells: cfg.cells.iter().map(|p| [p.s(), p.t()]).collect(),
        suites: reports,
        passed,
    }
}
