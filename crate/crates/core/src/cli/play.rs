//! Line-based game against the engine.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::model::{apply_move, Heap, Move, Position};
use crate::strategy::{stalling_move, Engine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayResult {
    HumanWon,
    EngineWon,
    Quit,
    InputClosed,
}

#[derive(Debug, PartialEq, Eq)]
enum Command {
    Quit,
    Move(Move),
}

fn parse_heap(s: &str) -> Option<Heap> {
    match s {
        "A" | "a" => Some(Heap::First),
        "B" | "b" => Some(Heap::Second),
        _ => None,
    }
}

/// Accepts `take N from A|B`, `take K L` (K from A, L from B) and `quit`.
fn parse_command(line: &str) -> std::result::Result<Command, String> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let num = |w: &str| {
        w.parse::<u64>()
            .map_err(|_| format!("not a token count: {w}"))
    };
    match words.as_slice() {
        ["quit"] | ["q"] | ["exit"] => Ok(Command::Quit),
        ["take", n, "from", h] => {
            let heap = parse_heap(h).ok_or_else(|| format!("unknown heap {h}; use A or B"))?;
            Ok(Command::Move(Move::SingleHeap {
                heap,
                take: num(n)?,
            }))
        }
        ["take", a, b] => {
            let (a, b) = (num(a)?, num(b)?);
            let (k, l, k_heap) = if a <= b {
                (a, b, Heap::First)
            } else {
                (b, a, Heap::Second)
            };
            Ok(Command::Move(Move::BothHeaps { k, l, k_heap }))
        }
        _ => Err("expected `take N from A`, `take N from B`, `take K L` or `quit`".into()),
    }
}

/// A game where the human moves first from `start`.
pub struct PlaySession<'e, R, W> {
    engine: &'e Engine,
    pos: Position,
    input: R,
    output: W,
    history: Vec<Position>,
}

impl<'e, R: BufRead, W: Write> PlaySession<'e, R, W> {
    pub fn new(engine: &'e Engine, start: Position, input: R, output: W) -> Self {
        PlaySession {
            engine,
            pos: start,
            input,
            output,
            history: vec![start],
        }
    }

    /// Every position reached, starting with the initial one.
    pub fn history(&self) -> &[Position] {
        &self.history
    }

    fn say(&mut self, msg: &str) -> Result<()> {
        writeln!(self.output, "{msg}").map_err(|e| Error::Internal(format!("write failed: {e}")))
    }

    fn read_line(&mut self) -> Result<Option<String>> {
        let mut line = String::new();
        match self.input.read_line(&mut line) {
            Ok(0) => Ok(None),
            Ok(_) => Ok(Some(line)),
            Err(e) => Err(Error::Internal(format!("read failed: {e}"))),
        }
    }

    fn advance(&mut self, next: Position) {
        self.pos = next;
        self.history.push(next);
    }

    pub fn run(&mut self) -> Result<PlayResult> {
        let params = self.engine.params();
        self.say(&format!(
            "Game s={} t={}. Heaps A={} B={}. You move first.",
            params.s(),
            params.t(),
            self.pos.x,
            self.pos.y
        ))?;
        if self.pos.is_terminal() {
            self.say("No tokens left: you cannot move. Engine wins.")?;
            return Ok(PlayResult::EngineWon);
        }
        loop {
            write!(self.output, "> ").map_err(|e| Error::Internal(e.to_string()))?;
            let _ = self.output.flush();
            let Some(line) = self.read_line()? else {
                return Ok(PlayResult::InputClosed);
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mv = match parse_command(line) {
                Ok(Command::Quit) => {
                    self.say("Bye.")?;
                    return Ok(PlayResult::Quit);
                }
                Ok(Command::Move(mv)) => mv,
                Err(msg) => {
                    self.say(&msg)?;
                    continue;
                }
            };
            let next = match apply_move(params, self.pos, mv) {
                Ok(next) => next,
                Err(Error::IllegalMove { reason, .. }) => {
                    self.say(&format!("Illegal move: {reason}."))?;
                    continue;
                }
                Err(e) => return Err(e),
            };
            self.advance(next);
            if next.is_terminal() {
                self.say("You took the last token. You win.")?;
                return Ok(PlayResult::HumanWon);
            }
            let reply = match self.engine.winning_move_fast(next)? {
                Some(mv) => mv,
                None => stalling_move(next).ok_or_else(|| {
                    Error::Internal("no move from a non-terminal position".into())
                })?,
            };
            let after = apply_move(params, next, reply)?;
            self.advance(after);
            self.say(&format!("Engine: {reply} -> A={} B={}", after.x, after.y))?;
            if after.is_terminal() {
                self.say("Engine took the last token. Engine wins.")?;
                return Ok(PlayResult::EngineWon);
            }
        }
    }
}
