//! Sample machines and seeded random ones for the test suites.
//!
//! The five named machines pin down the acceptance behaviors: halting clean,
//! halting dirty, running right forever, crossing to the negative side with
//! a clean tape, and crossing with a dirty one.

use alloc::string::String;
use alloc::vec::Vec;

use crate::turing::{Move, StateId, SymbolId, Transition, TuringMachine};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| String::from(*s)).collect()
}

fn tr(write: u16, next: u16, mv: Move) -> Transition {
    Transition {
        write: SymbolId(write),
        next: StateId(next),
        mv,
    }
}

/// Writes a to the right of the head, returns, erases it, halts. Clean halt
/// at step 4, never negative.
pub fn m_clean() -> TuringMachine {
    TuringMachine::new(
        names(&["_", "a"]),
        names(&["q0", "q1", "q2", "q3", "qs"]),
        StateId(0),
        StateId(4),
        &[
            (StateId(0), SymbolId(0), tr(0, 1, Move::Right)),
            (StateId(0), SymbolId(1), tr(1, 0, Move::Stay)),
            (StateId(1), SymbolId(0), tr(1, 2, Move::Left)),
            (StateId(1), SymbolId(1), tr(1, 1, Move::Stay)),
            (StateId(2), SymbolId(0), tr(0, 3, Move::Right)),
            (StateId(2), SymbolId(1), tr(1, 2, Move::Stay)),
            (StateId(3), SymbolId(0), tr(0, 3, Move::Stay)),
            (StateId(3), SymbolId(1), tr(0, 4, Move::Stay)),
        ],
    )
    .expect("fixed machine is well formed")
}

/// Writes a under the head and halts at step 1 with a dirty tape.
pub fn m_dirty() -> TuringMachine {
    TuringMachine::new(
        names(&["_", "a"]),
        names(&["q0", "qs"]),
        StateId(0),
        StateId(1),
        &[
            (StateId(0), SymbolId(0), tr(1, 1, Move::Stay)),
            (StateId(0), SymbolId(1), tr(1, 0, Move::Stay)),
        ],
    )
    .expect("fixed machine is well formed")
}

/// Marches right forever on a blank tape.
pub fn m_right() -> TuringMachine {
    TuringMachine::new(
        names(&["_"]),
        names(&["q0", "qs"]),
        StateId(0),
        StateId(1),
        &[(StateId(0), SymbolId(0), tr(0, 0, Move::Right))],
    )
    .expect("fixed machine is well formed")
}

/// Marches left forever: first negative move at step 1 with a clean tape.
pub fn m_negclean() -> TuringMachine {
    TuringMachine::new(
        names(&["_"]),
        names(&["q0", "qs"]),
        StateId(0),
        StateId(1),
        &[(StateId(0), SymbolId(0), tr(0, 0, Move::Left))],
    )
    .expect("fixed machine is well formed")
}

/// Writes a at cell 1, returns, then crosses to cell -1 at step 3 with the
/// a still on the tape.
pub fn m_negdirty() -> TuringMachine {
    TuringMachine::new(
        names(&["_", "a"]),
        names(&["q0", "q1", "q2", "qs"]),
        StateId(0),
        StateId(3),
        &[
            (StateId(0), SymbolId(0), tr(0, 1, Move::Right)),
            (StateId(0), SymbolId(1), tr(1, 0, Move::Stay)),
            (StateId(1), SymbolId(0), tr(1, 2, Move::Left)),
            (StateId(1), SymbolId(1), tr(1, 1, Move::Stay)),
            (StateId(2), SymbolId(0), tr(0, 2, Move::Left)),
            (StateId(2), SymbolId(1), tr(1, 2, Move::Stay)),
        ],
    )
    .expect("fixed machine is well formed")
}

/// The five fixtures in suite order, with their names.
pub fn machine_suite() -> Vec<(&'static str, TuringMachine)> {
    alloc::vec![
        ("M_clean", m_clean()),
        ("M_dirty", m_dirty()),
        ("M_right", m_right()),
        ("M_negclean", m_negclean()),
        ("M_negdirty", m_negdirty()),
    ]
}

/// splitmix64; reproducible across platforms, good enough for fuzzing.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform enough over 0..n for test generation.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }
}

/// Small machine plus input word, both drawn from the seed: 1..=3 symbols,
/// 2..=4 states with the last as halt, total random delta, word length 0..=3
/// over the non-blank symbols.
pub fn random_machine(seed: u64) -> (TuringMachine, Vec<SymbolId>) {
    let mut rng = SplitMix64::new(seed);
    let ns = 1 + rng.below(3) as usize;
    let nq = 2 + rng.below(3) as usize;
    let symbol_pool = ["_", "a", "b"];
    let state_pool = ["q0", "q1", "q2", "qs"];
    let symbols = names(&symbol_pool[..ns]);
    let mut states = names(&state_pool[..nq - 1]);
    states.push(String::from("qs"));
    let halt = StateId(nq as u16 - 1);
    let moves = [Move::Left, Move::Stay, Move::Right];
    let mut rules = Vec::new();
    for q in 0..nq as u16 - 1 {
        for s in 0..ns as u16 {
            rules.push((
                StateId(q),
                SymbolId(s),
                Transition {
                    write: SymbolId(rng.below(ns as u64) as u16),
                    next: StateId(rng.below(nq as u64) as u16),
                    mv: moves[rng.below(3) as usize],
                },
            ));
        }
    }
    let machine = TuringMachine::new(symbols, states, StateId(0), halt, &rules)
        .expect("generated machine is total by construction");
    let word_len = if ns == 1 { 0 } else { rng.below(4) as usize };
    let word: Vec<SymbolId> = (0..word_len)
        .map(|_| SymbolId(1 + rng.below(ns as u64 - 1) as u16))
        .collect();
    (machine, word)
}
