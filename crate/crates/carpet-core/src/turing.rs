//! Turing machines on a two-way-infinite tape.
//!
//! The tape is sparse: only non-blank cells are stored, so a clean tape is
//! exactly an empty association. The head starts at cell 0 on a blank, with
//! the input word on cells 1..=n. Classification distinguishes two success
//! notions: halting with a clean tape, and the variant where entering the
//! negative side ends the run, successfully iff the tape is clean right
//! after the crossing step's write.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SymbolId(pub u16);

/// The blank; always the first symbol of the alphabet.
pub const BLANK: SymbolId = SymbolId(0);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct StateId(pub u16);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Move {
    Left,
    Stay,
    Right,
}

impl Move {
    pub fn offset(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Stay => 0,
            Move::Right => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Stay => 'S',
            Move::Right => 'R',
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Transition {
    pub write: SymbolId,
    pub next: StateId,
    pub mv: Move,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MachineError {
    EmptyAlphabet,
    EmptyStates,
    DuplicateName(String),
    IdOutOfRange,
    TransitionFromHalt { state: StateId, read: SymbolId },
    DuplicateTransition { state: StateId, read: SymbolId },
    MissingTransition { state: StateId, read: SymbolId },
    BlankInInput { position: usize },
}

impl fmt::Display for MachineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MachineError::EmptyAlphabet => write!(f, "alphabet is empty"),
            MachineError::EmptyStates => write!(f, "state set is empty"),
            MachineError::DuplicateName(n) => write!(f, "duplicate name {:?}", n),
            MachineError::IdOutOfRange => write!(f, "symbol or state id out of range"),
            MachineError::TransitionFromHalt { state, read } => {
                write!(f, "transition defined from halt state {} on symbol {}", state.0, read.0)
            }
            MachineError::DuplicateTransition { state, read } => {
                write!(f, "duplicate transition for state {} symbol {}", state.0, read.0)
            }
            MachineError::MissingTransition { state, read } => {
                write!(f, "no transition for state {} symbol {}", state.0, read.0)
            }
            MachineError::BlankInInput { position } => {
                write!(f, "input word has a blank at position {}", position)
            }
        }
    }
}

/// Deterministic machine with a total transition function off the halt state.
#[derive(Clone, Debug)]
pub struct TuringMachine {
    pub symbols: Vec<String>,
    pub states: Vec<String>,
    pub start: StateId,
    pub halt: StateId,
    delta: Vec<Option<Transition>>,
}

impl TuringMachine {
    /// Builds and validates. `rules` entries are (state, read, transition).
    pub fn new(
        symbols: Vec<String>,
        states: Vec<String>,
        start: StateId,
        halt: StateId,
        rules: &[(StateId, SymbolId, Transition)],
    ) -> Result<Self, MachineError> {
        if symbols.is_empty() {
            return Err(MachineError::EmptyAlphabet);
        }
        if states.is_empty() {
            return Err(MachineError::EmptyStates);
        }
        for list in [&symbols, &states] {
            let mut sorted: Vec<&str> = list.iter().map(|s| s.as_str()).collect();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(MachineError::DuplicateName(String::from(pair[0])));
                }
            }
        }
        let ns = symbols.len();
        let nq = states.len();
        if start.0 as usize >= nq || halt.0 as usize >= nq {
            return Err(MachineError::IdOutOfRange);
        }
        let mut delta: Vec<Option<Transition>> = alloc::vec![None; ns * nq];
        for &(state, read, tr) in rules {
            if state.0 as usize >= nq
                || read.0 as usize >= ns
                || tr.next.0 as usize >= nq
                || tr.write.0 as usize >= ns
            {
                return Err(MachineError::IdOutOfRange);
            }
            if state == halt {
                return Err(MachineError::TransitionFromHalt { state, read });
            }
            let slot = &mut delta[state.0 as usize * ns + read.0 as usize];
            if slot.is_some() {
                return Err(MachineError::DuplicateTransition { state, read });
            }
            *slot = Some(tr);
        }
        for q in 0..nq as u16 {
            if q == halt.0 {
                continue;
            }
            for s in 0..ns as u16 {
                if delta[q as usize * ns + s as usize].is_none() {
                    return Err(MachineError::MissingTransition {
                        state: StateId(q),
                        read: SymbolId(s),
                    });
                }
            }
        }
        Ok(TuringMachine {
            symbols,
            states,
            start,
            halt,
            delta,
        })
    }

    pub fn delta(&self, state: StateId, read: SymbolId) -> Option<Transition> {
        self.delta[state.0 as usize * self.symbols.len() + read.0 as usize]
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s == name).map(|i| SymbolId(i as u16))
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(|i| StateId(i as u16))
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn rules(&self) -> impl Iterator<Item = (StateId, SymbolId, Transition)> + '_ {
        let ns = self.symbols.len();
        self.delta.iter().enumerate().filter_map(move |(i, tr)| {
            tr.map(|t| (StateId((i / ns) as u16), SymbolId((i % ns) as u16), t))
        })
    }
}

/// Instantaneous description. Blanks are never stored in `tape`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub tape: BTreeMap<i64, SymbolId>,
    pub head: i64,
    pub state: StateId,
    pub min_touched: i64,
    pub max_touched: i64,
}

impl Configuration {
    pub fn read(&self, cell: i64) -> SymbolId {
        self.tape.get(&cell).copied().unwrap_or(BLANK)
    }

    pub fn tape_clean(&self) -> bool {
        self.tape.is_empty()
    }

    fn write(&mut self, cell: i64, sym: SymbolId) {
        if sym == BLANK {
            self.tape.remove(&cell);
        } else {
            self.tape.insert(cell, sym);
        }
    }
}

/// Start description: head on blank cell 0, input on cells 1..=n.
pub fn initial_configuration(m: &TuringMachine, w: &[SymbolId]) -> Result<Configuration, MachineError> {
    let mut tape = BTreeMap::new();
    for (i, &sym) in w.iter().enumerate() {
        if sym == BLANK {
            return Err(MachineError::BlankInInput { position: i });
        }
        if sym.0 as usize >= m.symbols.len() {
            return Err(MachineError::IdOutOfRange);
        }
        tape.insert(i as i64 + 1, sym);
    }
    let max = w.len() as i64;
    Ok(Configuration {
        tape,
        head: 0,
        state: m.start,
        min_touched: 0,
        max_touched: max,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepOutcome {
    Stepped,
    Halted,
}

/// One move of the machine; a configuration in the halt state stays put.
pub fn step_mut(m: &TuringMachine, c: &mut Configuration) -> StepOutcome {
    if c.state == m.halt {
        return StepOutcome::Halted;
    }
    let tr = m
        .delta(c.state, c.read(c.head))
        .expect("validated machine has a total delta off the halt state");
    c.write(c.head, tr.write);
    c.state = tr.next;
    c.head += tr.mv.offset();
    c.min_touched = c.min_touched.min(c.head);
    c.max_touched = c.max_touched.max(c.head);
    StepOutcome::Stepped
}

/// Everything the two acceptance notions need to know about a bounded run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub halted: bool,
    pub steps: u64,
    pub timed_out: bool,
    pub tape_clean_at_halt: bool,
    pub visited_negative: bool,
    pub first_negative_move_step: Option<u64>,
    /// Clean right after the write of the step that crossed to cell -1.
    pub tape_clean_at_first_negative_move: Option<bool>,
}

impl RunReport {
    /// Halted with an all-blank tape.
    pub fn uw_accept(&self) -> bool {
        self.halted && self.tape_clean_at_halt
    }

    /// Halted clean without ever going negative, or went negative for the
    /// first time with a clean tape (the run conceptually ends there).
    pub fn suw_accept(&self) -> bool {
        if self.visited_negative {
            self.tape_clean_at_first_negative_move == Some(true)
        } else {
            self.halted && self.tape_clean_at_halt
        }
    }
}

/// Runs up to `max_steps` moves and classifies the trace.
pub fn run_classify(m: &TuringMachine, w: &[SymbolId], max_steps: u64) -> Result<RunReport, MachineError> {
    let mut c = initial_configuration(m, w)?;
    let mut report = RunReport {
        halted: false,
        steps: 0,
        timed_out: false,
        tape_clean_at_halt: false,
        visited_negative: false,
        first_negative_move_step: None,
        tape_clean_at_first_negative_move: None,
    };
    loop {
        if c.state == m.halt {
            report.halted = true;
            report.tape_clean_at_halt = c.tape_clean();
            return Ok(report);
        }
        if report.steps == max_steps {
            report.timed_out = true;
            return Ok(report);
        }
        step_mut(m, &mut c);
        report.steps += 1;
        if c.head < 0 && !report.visited_negative {
            report.visited_negative = true;
            report.first_negative_move_step = Some(report.steps);
            report.tape_clean_at_first_negative_move = Some(c.tape_clean());
        }
    }
}

/// Like run_classify, also returning every configuration (index = step).
pub fn run_trace(
    m: &TuringMachine,
    w: &[SymbolId],
    max_steps: u64,
) -> Result<(Vec<Configuration>, RunReport), MachineError> {
    let mut c = initial_configuration(m, w)?;
    let mut trace = Vec::with_capacity(max_steps as usize + 1);
    trace.push(c.clone());
    while c.state != m.halt && (trace.len() as u64) <= max_steps {
        step_mut(m, &mut c);
        trace.push(c.clone());
    }
    let report = run_classify(m, w, max_steps)?;
    Ok((trace, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(i: u16) -> SymbolId {
        SymbolId(i)
    }

    fn st(i: u16) -> StateId {
        StateId(i)
    }

    fn tr(write: u16, next: u16, mv: Move) -> Transition {
        Transition {
            write: sym(write),
            next: st(next),
            mv,
        }
    }

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| String::from(*s)).collect()
    }

    /// Writes a to the right, comes back, erases it, halts clean in 4 steps.
    fn m_clean() -> TuringMachine {
        TuringMachine::new(
            names(&["_", "a"]),
            names(&["q0", "q1", "q2", "q3", "qs"]),
            st(0),
            st(4),
            &[
                (st(0), sym(0), tr(0, 1, Move::Right)),
                (st(0), sym(1), tr(1, 0, Move::Stay)),
                (st(1), sym(0), tr(1, 2, Move::Left)),
                (st(1), sym(1), tr(1, 1, Move::Stay)),
                (st(2), sym(0), tr(0, 3, Move::Right)),
                (st(2), sym(1), tr(1, 2, Move::Stay)),
                (st(3), sym(0), tr(0, 3, Move::Stay)),
                (st(3), sym(1), tr(0, 4, Move::Stay)),
            ],
        )
        .unwrap()
    }

    fn m_dirty() -> TuringMachine {
        TuringMachine::new(
            names(&["_", "a"]),
            names(&["q0", "qs"]),
            st(0),
            st(1),
            &[
                (st(0), sym(0), tr(1, 1, Move::Stay)),
                (st(0), sym(1), tr(1, 0, Move::Stay)),
            ],
        )
        .unwrap()
    }

    fn m_negclean() -> TuringMachine {
        TuringMachine::new(
            names(&["_"]),
            names(&["q0", "qs"]),
            st(0),
            st(1),
            &[(st(0), sym(0), tr(0, 0, Move::Left))],
        )
        .unwrap()
    }

    #[test]
    fn one_step_write_and_halt() {
        let m = m_dirty();
        let mut c = initial_configuration(&m, &[]).unwrap();
        assert_eq!(step_mut(&m, &mut c), StepOutcome::Stepped);
        assert_eq!(c.read(0), sym(1));
        assert_eq!(c.state, st(1));
        assert_eq!(c.head, 0);
        assert_eq!(step_mut(&m, &mut c), StepOutcome::Halted);
    }

    #[test]
    fn clean_round_trip_classifies_accepting() {
        let m = m_clean();
        let report = run_classify(&m, &[], 100).unwrap();
        assert!(report.halted);
        assert_eq!(report.steps, 4);
        assert!(report.tape_clean_at_halt);
        assert!(!report.visited_negative);
        assert!(report.uw_accept());
        assert!(report.suw_accept());
    }

    #[test]
    fn clean_round_trip_trace_erases_blank_from_store() {
        let m = m_clean();
        let (trace, report) = run_trace(&m, &[], 100).unwrap();
        assert_eq!(trace.len(), 5);
        // After step 2 the written a sits on cell 1; the final erase must
        // remove the association, not store a blank.
        assert_eq!(trace[2].tape.get(&1), Some(&sym(1)));
        assert!(trace[4].tape.is_empty());
        assert_eq!(trace[4].state, m.halt);
        assert_eq!(report.steps, 4);
    }

    #[test]
    fn dirty_halt_is_rejected() {
        let report = run_classify(&m_dirty(), &[], 100).unwrap();
        assert!(report.halted);
        assert!(!report.tape_clean_at_halt);
        assert!(!report.uw_accept());
        assert!(!report.suw_accept());
    }

    #[test]
    fn left_runner_crosses_clean_at_step_one() {
        let report = run_classify(&m_negclean(), &[], 50).unwrap();
        assert!(!report.halted);
        assert!(report.timed_out);
        assert!(report.visited_negative);
        assert_eq!(report.first_negative_move_step, Some(1));
        assert_eq!(report.tape_clean_at_first_negative_move, Some(true));
        assert!(!report.uw_accept());
        assert!(report.suw_accept());
    }

    #[test]
    fn input_word_layout_and_blank_rejection() {
        let m = m_dirty();
        let c = initial_configuration(&m, &[sym(1), sym(1)]).unwrap();
        assert_eq!(c.read(0), BLANK);
        assert_eq!(c.read(1), sym(1));
        assert_eq!(c.read(2), sym(1));
        assert_eq!(c.read(3), BLANK);
        assert_eq!(c.max_touched, 2);
        assert_eq!(
            initial_configuration(&m, &[sym(0)]),
            Err(MachineError::BlankInInput { position: 0 })
        );
    }

    #[test]
    fn validation_rejects_partial_delta_and_halt_rules() {
        let missing = TuringMachine::new(
            names(&["_", "a"]),
            names(&["q0", "qs"]),
            st(0),
            st(1),
            &[(st(0), sym(0), tr(0, 1, Move::Stay))],
        );
        assert_eq!(
            missing.unwrap_err(),
            MachineError::MissingTransition {
                state: st(0),
                read: sym(1)
            }
        );
        let from_halt = TuringMachine::new(
            names(&["_"]),
            names(&["q0", "qs"]),
            st(0),
            st(1),
            &[
                (st(0), sym(0), tr(0, 1, Move::Stay)),
                (st(1), sym(0), tr(0, 1, Move::Stay)),
            ],
        );
        assert_eq!(
            from_halt.unwrap_err(),
            MachineError::TransitionFromHalt {
                state: st(1),
                read: sym(0)
            }
        );
    }

    #[test]
    fn touched_range_grows_one_per_step() {
        let m = m_negclean();
        let mut c = initial_configuration(&m, &[]).unwrap();
        let mut prev = (c.min_touched, c.max_touched);
        for _ in 0..64 {
            step_mut(&m, &mut c);
            let now = (c.min_touched, c.max_touched);
            assert!(prev.0 - now.0 <= 1 && now.1 - prev.1 <= 1);
            prev = now;
        }
        assert_eq!(c.min_touched, -64);
    }
}
