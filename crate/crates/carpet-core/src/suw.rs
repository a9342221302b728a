//! Symmetric simulating systems. The tape is written twice, mirrored around
//! a central three-zero block, every cell value carries three tagged copies,
//! and content recurs every eighth diagonal; the seven diagonals between
//! consecutive content diagonals hold nested-pair codes of sliding windows.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dynsys::{Development, DynamicalSystem, Letter, LetterId, Role, RuleConflict, RuleTable};
use crate::symcode::{sigma, CodeError, TermId, TermInterner, TermKind, TripleAlphabet, ZERO_TERM};
use crate::turing::{run_trace, MachineError, RunReport, SymbolId, TuringMachine, BLANK};
use crate::uw::{uw_local_update, Cell, UpdateError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WindowError {
    /// Zero-gap geometry that matches no tape reading.
    Phase,
    /// Copy tags or values inside one cell disagree in every orientation.
    TagClash,
    TwoHeads,
}

impl fmt::Display for WindowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowError::Phase => write!(f, "zero gap does not line up with any tape reading"),
            WindowError::TagClash => write!(f, "copy tags inconsistent in every orientation"),
            WindowError::TwoHeads => write!(f, "more than one head in a local window"),
        }
    }
}

/// Cells read off a window in the ascending-tag orientation, as
/// (start position, value) with starts three apart. None when tags or
/// values cannot line up this way.
fn parse_ascending(trip: &TripleAlphabet, w: &[u32]) -> Option<Vec<(i32, Cell)>> {
    let mut phase: Option<i32> = None;
    for (p, &l) in w.iter().enumerate() {
        if l == 0 {
            continue;
        }
        let tag = trip.tag(l)? as i32;
        let ph = (p as i32 - tag).rem_euclid(3);
        match phase {
            None => phase = Some(ph),
            Some(q) if q != ph => return None,
            _ => {}
        }
    }
    let phase = phase?;
    let mut out = Vec::new();
    let mut start = phase - 3;
    while start < w.len() as i32 {
        let lo = start.max(0) as usize;
        let hi = (start + 3).min(w.len() as i32) as usize;
        if lo < hi {
            let mut value: Option<Cell> = None;
            let mut zeros = false;
            for &l in &w[lo..hi] {
                if l == 0 {
                    zeros = true;
                    continue;
                }
                let (cell, _) = trip.decode(l);
                match value {
                    None => value = Some(cell),
                    Some(v) if v != cell => return None,
                    _ => {}
                }
            }
            let v = match value {
                // A nonzero cell shows nonzero letters at all its positions.
                Some(_) if zeros => return None,
                Some(v) => v,
                None => Cell::Blank,
            };
            out.push((start, v));
        }
        start += 3;
    }
    Some(out)
}

/// Next letter for position 4 of a nine-letter ascending window.
fn asc_output(
    m: &TuringMachine,
    trip: &TripleAlphabet,
    slots: &[(i32, Cell)],
) -> Result<u32, WindowError> {
    let ci = slots
        .iter()
        .position(|&(s, _)| s <= 4 && 4 < s + 3)
        .ok_or(WindowError::Phase)?;
    let (s, vc) = slots[ci];
    let tag = (4 - s) as u8;
    let vl = if ci > 0 { slots[ci - 1].1 } else { Cell::Blank };
    let vr = if ci + 1 < slots.len() { slots[ci + 1].1 } else { Cell::Blank };
    let out = uw_local_update(m, vl, vc, vr).map_err(|UpdateError::TwoHeads| WindowError::TwoHeads)?;
    Ok(trip.code(out, tag))
}

/// One side of a central window: visible cell values keyed by cell index,
/// with tag positions counted away from the gap. Mixed zero/nonzero letters
/// inside one cell reject the window.
fn side_cells(
    trip: &TripleAlphabet,
    letters: impl Iterator<Item = (usize, u32)>,
    dist: impl Fn(usize) -> usize,
) -> Result<BTreeMap<i64, Cell>, WindowError> {
    let mut gather: BTreeMap<i64, (bool, Option<Cell>)> = BTreeMap::new();
    for (p, l) in letters {
        let d = dist(p);
        let c = (d / 3) as i64;
        let want_tag = (d % 3) as u8;
        let e = gather.entry(c).or_insert((false, None));
        if l == 0 {
            e.0 = true;
            continue;
        }
        let (cell, tag) = trip.decode(l);
        if tag != want_tag {
            return Err(WindowError::TagClash);
        }
        match e.1 {
            None => e.1 = Some(cell),
            Some(v) if v != cell => return Err(WindowError::TagClash),
            _ => {}
        }
    }
    let mut out = BTreeMap::new();
    for (c, (zeros, value)) in gather {
        let v = match value {
            Some(_) if zeros => return Err(WindowError::TagClash),
            Some(v) => v,
            None => Cell::Blank,
        };
        out.insert(c, v);
    }
    Ok(out)
}

/// Window straddling the central zero block: descending copies left of the
/// gap, ascending right of it, values mirrored. The gap itself stays zero;
/// cell 0 has no live left neighbor.
fn central_output(
    m: &TuringMachine,
    trip: &TripleAlphabet,
    w: &[u32],
) -> Result<u32, WindowError> {
    let n = w.len();
    let mut gap: Option<(usize, usize)> = None;
    let mut p = 0;
    while p < n {
        if w[p] != 0 {
            p += 1;
            continue;
        }
        let q0 = p;
        while p < n && w[p] == 0 {
            p += 1;
        }
        if q0 > 0 && p < n {
            if gap.is_some() {
                return Err(WindowError::Phase);
            }
            gap = Some((q0, p));
        }
    }
    let (g0, g1) = gap.ok_or(WindowError::TagClash)?;
    if g1 - g0 != 3 {
        return Err(WindowError::Phase);
    }
    let left = side_cells(
        trip,
        w[..g0].iter().enumerate().map(|(p, &l)| (p, l)),
        |p| g0 - 1 - p,
    )?;
    let right = side_cells(
        trip,
        w[g1..].iter().enumerate().map(|(p, &l)| (p + g1, l)),
        |p| p - g1,
    )?;
    for (c, v) in &left {
        if let Some(u) = right.get(c) {
            if u != v {
                return Err(WindowError::Phase);
            }
        }
    }
    if (g0..g1).contains(&4) {
        return Ok(0);
    }
    if 4 < g0 {
        // Mirror image puts the center on the right side.
        return suw_window_update(m, trip, &sigma(w));
    }
    let d = 4 - g1;
    let c = (d / 3) as i64;
    let tag = (d % 3) as u8;
    let vc = *right.get(&c).unwrap_or(&Cell::Blank);
    let vl = if c == 0 { Cell::Blank } else { *right.get(&(c - 1)).unwrap_or(&Cell::Blank) };
    let vr = *right.get(&(c + 1)).unwrap_or(&Cell::Blank);
    let out = uw_local_update(m, vl, vc, vr).map_err(|UpdateError::TwoHeads| WindowError::TwoHeads)?;
    Ok(trip.code(out, tag))
}

/// Next letter for the center of a nine-letter window of a content
/// diagonal. The window word fixes its own reading: ascending copies,
/// descending copies (computed on the mirror image), or central. Output is
/// mirror-invariant.
pub fn suw_window_update(
    m: &TuringMachine,
    trip: &TripleAlphabet,
    w: &[u32],
) -> Result<u32, WindowError> {
    debug_assert_eq!(w.len(), 9);
    if w.iter().all(|&l| l == 0) {
        return Ok(0);
    }
    if let Some(slots) = parse_ascending(trip, w) {
        return asc_output(m, trip, &slots);
    }
    let rev = sigma(w);
    if let Some(slots) = parse_ascending(trip, &rev) {
        return asc_output(m, trip, &slots);
    }
    central_output(m, trip, w)
}

#[derive(Clone, Debug)]
pub enum SuwCompileError {
    BadInput(MachineError),
    /// A double assignment in the generated table; a construction bug.
    Conflict(RuleConflict),
    Window(WindowError),
    Code(CodeError),
}

impl fmt::Display for SuwCompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuwCompileError::BadInput(e) => write!(f, "bad machine or word: {}", e),
            SuwCompileError::Conflict(c) => write!(f, "{}", c),
            SuwCompileError::Window(e) => write!(f, "window rule: {}", e),
            SuwCompileError::Code(e) => write!(f, "pair code: {}", e),
        }
    }
}

impl From<RuleConflict> for SuwCompileError {
    fn from(c: RuleConflict) -> Self {
        SuwCompileError::Conflict(c)
    }
}

impl From<CodeError> for SuwCompileError {
    fn from(e: CodeError) -> Self {
        SuwCompileError::Code(e)
    }
}

impl From<WindowError> for SuwCompileError {
    fn from(e: WindowError) -> Self {
        SuwCompileError::Window(e)
    }
}

pub struct SuwMeta {
    pub d_w: usize,
    pub center_index: usize,
    pub zero: LetterId,
    pub one: LetterId,
    pub bottom: LetterId,
    pub trip: TripleAlphabet,
    /// Letter per tagged-copy code; index 0 is the zero letter.
    letter_of_code: Vec<LetterId>,
    code_of_letter: BTreeMap<u32, u32>,
    /// Letters for pair codes of level 1 and up, by term id.
    term_letters: BTreeMap<u32, LetterId>,
    /// Palindromic pre-seed letters; keys (d, k) with k <= d - k.
    pub bootstrap: BTreeMap<(usize, usize), LetterId>,
    pub seed: Vec<LetterId>,
}

impl SuwMeta {
    /// System letter for one tagged copy of a tape cell value.
    pub fn cell_letter(&self, cell: Cell, tag: u8) -> LetterId {
        self.letter_of_code[self.trip.code(cell, tag) as usize]
    }

    /// Tape cell value and copy tag of a content letter.
    pub fn cell_of(&self, id: LetterId) -> Option<(Cell, u8)> {
        if id == self.zero {
            return Some((Cell::Blank, 0));
        }
        self.code_of_letter.get(&id.0).map(|&c| self.trip.decode(c))
    }

    /// Diagonal type 0..7 at or past the seed; None below it.
    pub fn diag_type(&self, n: usize) -> Option<u8> {
        if n < self.d_w {
            None
        } else {
            Some(((n - self.d_w) % 8) as u8)
        }
    }

    /// Center position of the content diagonal at simulated time t.
    pub fn center_at(&self, t: u64) -> usize {
        self.center_index + 4 * t as usize
    }

    /// Count of distinct top-level pair letters in the table.
    pub fn top_pair_letters(&self) -> usize {
        self.term_letters.len()
    }
}

/// Code of a word as one nested pair, memoized per subword.
fn fold_word(
    int: &mut TermInterner,
    memo: &mut BTreeMap<Vec<u32>, TermId>,
    w: &[u32],
) -> Result<TermId, CodeError> {
    if w.len() == 1 {
        return Ok(int.leaf(w[0]));
    }
    if let Some(&t) = memo.get(w) {
        return Ok(t);
    }
    let a = fold_word(int, memo, &w[..w.len() - 1])?;
    let b = fold_word(int, memo, &w[1..])?;
    let t = int.upair(a, b)?;
    memo.insert(w.to_vec(), t);
    Ok(t)
}

fn unique_name(taken: &mut BTreeMap<String, ()>, base: String) -> String {
    let mut name = base;
    while taken.contains_key(&name) {
        name.push('\'');
    }
    taken.insert(name.clone(), ());
    name
}

fn set_sym(
    table: &mut RuleTable,
    a: LetterId,
    b: LetterId,
    out: LetterId,
) -> Result<(), RuleConflict> {
    table.set(a, b, out)?;
    table.set(b, a, out)
}

/// Builds the mirrored simulating system for machine and input.
///
/// Seeded diagonal d_w = 6|w| + 28 holds the doubled tape around a central
/// zero block with nine-zero margins; the table pairs adjacent letters for
/// seven diagonals and consumes top-level pairs back into content. Rules
/// are enumerated over every window of zero-padded four-cell runs and
/// mirrored three-cell central blocks, one head at most.
pub fn compile_suw(
    m: &TuringMachine,
    w: &[SymbolId],
) -> Result<(DynamicalSystem, SuwMeta), SuwCompileError> {
    for (i, &s) in w.iter().enumerate() {
        if s == BLANK {
            return Err(SuwCompileError::BadInput(MachineError::BlankInInput { position: i }));
        }
        if s.0 as usize >= m.symbol_count() {
            return Err(SuwCompileError::BadInput(MachineError::IdOutOfRange));
        }
    }
    let d_w = 6 * w.len() + 28;
    let center_index = d_w / 2;
    let trip = TripleAlphabet::new(m.symbol_count(), m.state_count());

    // Generating strips: every simulation window lives in a zero-padded
    // run of four consecutive cells or a mirrored central block of three.
    let mut values: Vec<Cell> = vec![Cell::Blank];
    values.extend_from_slice(trip.nonzero_cells());
    let pad = [0u32; 8];
    let mut strips: BTreeSet<Vec<u32>> = BTreeSet::new();
    for &a in &values {
        for &b in &values {
            for &c in &values {
                let heads3 =
                    a.carries_head() as u8 + b.carries_head() as u8 + c.carries_head() as u8;
                if heads3 <= 1 {
                    let mut s = Vec::with_capacity(37);
                    s.extend_from_slice(&pad);
                    for v in [c, b, a] {
                        s.extend_from_slice(&trip.triple_rev(v));
                    }
                    s.extend_from_slice(&[0, 0, 0]);
                    for v in [a, b, c] {
                        s.extend_from_slice(&trip.triple(v));
                    }
                    s.extend_from_slice(&pad);
                    strips.insert(s);
                }
                for &d in &values {
                    if heads3 + d.carries_head() as u8 > 1 {
                        continue;
                    }
                    let mut s = Vec::with_capacity(28);
                    s.extend_from_slice(&pad);
                    for v in [a, b, c, d] {
                        s.extend_from_slice(&trip.triple(v));
                    }
                    s.extend_from_slice(&pad);
                    strips.insert(s);
                }
            }
        }
    }

    // Distinct windows of sizes 2..=9, one orientation per mirror pair.
    let mut windows: BTreeSet<Vec<u32>> = BTreeSet::new();
    for s in &strips {
        for size in 2..=9usize {
            for win in s.windows(size) {
                if win.iter().all(|&l| l == 0) {
                    continue;
                }
                let rev = sigma(win);
                if win <= &rev[..] {
                    windows.insert(win.to_vec());
                } else {
                    windows.insert(rev);
                }
            }
        }
    }

    let mut interner = TermInterner::new();
    let mut memo: BTreeMap<Vec<u32>, TermId> = BTreeMap::new();
    // (west term, north term, out): out is a deeper pair below size nine
    // and a content letter code at size nine.
    let mut pair_rules: Vec<(TermId, TermId, TermId)> = Vec::new();
    let mut cons_rules: Vec<(TermId, TermId, u32)> = Vec::new();
    for win in &windows {
        let s = win.len();
        let a = fold_word(&mut interner, &mut memo, &win[..s - 1])?;
        let b = fold_word(&mut interner, &mut memo, &win[1..])?;
        if s <= 8 {
            let out = interner.upair(a, b)?;
            memo.insert(win.clone(), out);
            pair_rules.push((a, b, out));
        } else {
            let out = suw_window_update(m, &trip, win)?;
            cons_rules.push((a, b, out));
        }
    }

    let mut letters: Vec<Letter> = Vec::new();
    let mut taken: BTreeMap<String, ()> = BTreeMap::new();
    let push = |letters: &mut Vec<Letter>, taken: &mut BTreeMap<String, ()>, base: String, role: Role| {
        let id = LetterId(letters.len() as u32);
        let name = unique_name(taken, base);
        letters.push(Letter { id, name, role });
        id
    };

    let one = push(&mut letters, &mut taken, String::from("1"), Role::One);
    let zero = push(&mut letters, &mut taken, String::from("0"), Role::Zero);

    let mut bootstrap = BTreeMap::new();
    for d in 2..d_w {
        for k in 1..=d / 2 {
            let id = push(&mut letters, &mut taken, format!("u_{}_{}", d, k), Role::Bootstrap);
            bootstrap.insert((d, k), id);
        }
    }
    let boot = |bs: &BTreeMap<(usize, usize), LetterId>, d: usize, k: usize| bs[&(d, k.min(d - k))];

    let mut letter_of_code: Vec<LetterId> = vec![zero];
    let mut code_of_letter: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, &cell) in trip.nonzero_cells().iter().enumerate() {
        let base = match cell {
            Cell::Sym(s) => m.symbols[s.0 as usize].clone(),
            Cell::Head(s, q) => {
                format!("({},{})", m.symbols[s.0 as usize], m.states[q.0 as usize])
            }
            Cell::Blank => unreachable!(),
        };
        for tag in 0..3u32 {
            let name = match tag {
                0 => base.clone(),
                1 => format!("{}'", base),
                _ => format!("{}''", base),
            };
            let id = push(&mut letters, &mut taken, name, Role::Type0);
            letter_of_code.push(id);
            code_of_letter.insert(id.0, 1 + 3 * i as u32 + tag);
        }
    }

    let mut term_letters: BTreeMap<u32, LetterId> = BTreeMap::new();
    for t in 0..interner.len() as u32 {
        let lv = interner.level(TermId(t));
        if lv >= 1 {
            let id = push(&mut letters, &mut taken, format!("t{}_{}", lv, t), Role::Pair(lv));
            term_letters.insert(t, id);
        }
    }
    let bottom = push(&mut letters, &mut taken, String::from("BOT"), Role::Bottom);

    let letter_of = |int: &TermInterner, t: TermId| -> LetterId {
        if t == ZERO_TERM {
            return zero;
        }
        match int.kind(t) {
            TermKind::Leaf(code) => letter_of_code[code as usize],
            _ => term_letters[&t.0],
        }
    };

    let size = letters.len() as u32;
    let mut table = RuleTable::new(size, Some(bottom));

    table.set(LetterId(zero.0), zero, zero)?;
    for l in &letters {
        let id = l.id;
        if id == one || id == bottom || matches!(l.role, Role::Bootstrap) {
            continue;
        }
        set_sym(&mut table, one, id, zero)?;
    }

    // Palindromic bootstrap triangle; mirrored positions share a letter, so
    // the mirror rule is the symmetric completion of the original.
    set_sym(&mut table, one, one, boot(&bootstrap, 2, 1))?;
    for d in 3..d_w {
        for k in 1..d {
            let north = if k <= d - 2 { boot(&bootstrap, d - 1, k) } else { one };
            let west = if k >= 2 { boot(&bootstrap, d - 1, k - 1) } else { one };
            set_sym(&mut table, north, west, boot(&bootstrap, d, k))?;
        }
    }

    // Doubled seed: mirrored tape around the central zero block.
    let mut seed = vec![zero; d_w + 1];
    seed[0] = one;
    seed[d_w] = one;
    let place_seed = |seed: &mut Vec<LetterId>, c: usize, cell: Cell| {
        for tag in 0..3u8 {
            let id = letter_of_code[trip.code(cell, tag) as usize];
            seed[center_index + 2 + 3 * c + tag as usize] = id;
            seed[center_index - 2 - 3 * c - tag as usize] = id;
        }
    };
    place_seed(&mut seed, 0, Cell::Head(BLANK, m.start));
    for (i, &s) in w.iter().enumerate() {
        place_seed(&mut seed, 1 + i, Cell::Sym(s));
    }
    for k in 1..d_w {
        let north = if k <= d_w - 2 { boot(&bootstrap, d_w - 1, k) } else { one };
        let west = if k >= 2 { boot(&bootstrap, d_w - 1, k - 1) } else { one };
        set_sym(&mut table, north, west, seed[k])?;
    }

    for &(a, b, out) in &pair_rules {
        set_sym(&mut table, letter_of(&interner, b), letter_of(&interner, a), letter_of(&interner, out))?;
    }
    for &(a, b, out) in &cons_rules {
        set_sym(&mut table, letter_of(&interner, b), letter_of(&interner, a), letter_of_code[out as usize])?;
    }

    let sys = DynamicalSystem {
        letters,
        table,
        zero,
        one,
        bottom: Some(bottom),
        symmetric: true,
    };
    let top_terms = term_letters
        .keys()
        .filter(|&&t| interner.level(TermId(t)) == 7)
        .count();
    let meta = SuwMeta {
        d_w,
        center_index,
        zero,
        one,
        bottom,
        trip,
        letter_of_code,
        code_of_letter,
        term_letters: term_letters
            .iter()
            .filter(|&(&t, _)| interner.level(TermId(t)) == 7)
            .map(|(&t, &id)| (t, id))
            .collect(),
        bootstrap,
        seed,
    };
    debug_assert_eq!(meta.term_letters.len(), top_terms);
    Ok((sys, meta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuwVerifyError {
    BadBounds { needed: usize, given: usize },
    MachineTrouble(MachineError),
    MismatchAt { t: u64, index: usize, expected: LetterId, got: LetterId },
    AsymmetryAt { diagonal: usize, index: usize },
    BottomSeen { diagonal: usize, index: usize },
    WallBreach { diagonal: usize, index: usize },
    TypeDiscipline { diagonal: usize, index: usize },
    SeedMismatch { index: usize },
    VerdictDisagreement,
}

impl fmt::Display for SuwVerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuwVerifyError::BadBounds { needed, given } => {
                write!(f, "need at least {} diagonals, given {}", needed, given)
            }
            SuwVerifyError::MachineTrouble(e) => write!(f, "{}", e),
            SuwVerifyError::MismatchAt { t, index, expected, got } => write!(
                f,
                "step {} cell at diag-index {}: expected letter {}, got {}",
                t, index, expected.0, got.0
            ),
            SuwVerifyError::AsymmetryAt { diagonal, index } => {
                write!(f, "diagonal {} differs from its mirror at index {}", diagonal, index)
            }
            SuwVerifyError::BottomSeen { diagonal, index } => {
                write!(f, "bottom letter at diagonal {} index {}", diagonal, index)
            }
            SuwVerifyError::WallBreach { diagonal, index } => write!(
                f,
                "content within two cells of the wall at diagonal {} index {}",
                diagonal, index
            ),
            SuwVerifyError::TypeDiscipline { diagonal, index } => write!(
                f,
                "letter class off its diagonal type at diagonal {} index {}",
                diagonal, index
            ),
            SuwVerifyError::SeedMismatch { index } => {
                write!(f, "seeded diagonal differs at index {}", index)
            }
            SuwVerifyError::VerdictDisagreement => {
                write!(f, "zero scan and machine classification disagree")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuwVerifyReport {
    pub steps_checked: u64,
    pub per_step_match: Vec<bool>,
    /// certified == mirrored acceptance, when the run resolved in budget.
    /// A run that crosses to the negative side resolves at the crossing.
    pub verdict_agreement: Option<bool>,
    pub bottom_free: bool,
    /// Least zero margin between wall and content over checked diagonals
    /// at or past the seed; None when no such diagonal had content.
    pub min_margin: Option<usize>,
    pub scan: crate::dynsys::ZeroScan,
    pub run: RunReport,
}

/// Expected content diagonal at simulated time t: the mirrored doubled
/// tape, walls, margins. The head dies as it crosses to cell -1 and the
/// post-write tape freezes; a halted head erases over blank and freezes
/// otherwise.
fn expected_type0(
    meta: &SuwMeta,
    trace: &[crate::turing::Configuration],
    run: &RunReport,
    t: u64,
    diag_len: usize,
) -> Vec<LetterId> {
    let mut cells = vec![meta.zero; diag_len + 1];
    cells[0] = meta.one;
    cells[diag_len] = meta.one;
    let center = meta.center_at(t);
    let last = trace.len() - 1;
    let (cfg, head) = match run.first_negative_move_step {
        Some(tc) if t >= tc => (&trace[tc as usize], None),
        _ if (t as usize) > last => {
            let cfg = &trace[last];
            let s = cfg.read(cfg.head);
            let head = if s != BLANK { Some((cfg.head, Cell::Head(s, cfg.state))) } else { None };
            (cfg, head)
        }
        _ => {
            let cfg = &trace[t as usize];
            (cfg, Some((cfg.head, Cell::Head(cfg.read(cfg.head), cfg.state))))
        }
    };
    let place = |cells: &mut Vec<LetterId>, c: i64, v: Cell| {
        debug_assert!(c >= 0);
        for tag in 0..3u8 {
            let id = meta.cell_letter(v, tag);
            cells[center + 2 + 3 * c as usize + tag as usize] = id;
            cells[center - 2 - 3 * c as usize - tag as usize] = id;
        }
    };
    for (&c, &s) in &cfg.tape {
        place(&mut cells, c, Cell::Sym(s));
    }
    if let Some((h, v)) = head {
        place(&mut cells, h, v);
    }
    cells
}

/// Develops the system and checks it cell-for-cell against the machine
/// run under the mirrored acceptance convention.
///
/// Every diagonal up to n is checked for walls, mirror symmetry, margins,
/// bottom-freeness and diagonal-type discipline; every content diagonal up
/// to step t_max is compared with the doubled encoding of the trace, dead
/// past the first crossing to the negative side.
pub fn verify_suw(
    sys: &DynamicalSystem,
    meta: &SuwMeta,
    m: &TuringMachine,
    w: &[SymbolId],
    t_max: u64,
    n: usize,
) -> Result<SuwVerifyReport, SuwVerifyError> {
    if n < meta.d_w + 8 * t_max as usize {
        return Err(SuwVerifyError::BadBounds {
            needed: meta.d_w + 8 * t_max as usize,
            given: n,
        });
    }
    let (trace, run) = run_trace(m, w, t_max).map_err(SuwVerifyError::MachineTrouble)?;
    let mut per_step_match = vec![false; t_max as usize + 1];
    let mut min_margin: Option<usize> = None;

    for diag in Development::new(sys).take(n + 1) {
        let dn = diag.n;
        let last = diag.cells.len() - 1;
        for (k, &cell) in diag.cells.iter().enumerate() {
            if cell == meta.bottom {
                return Err(SuwVerifyError::BottomSeen { diagonal: dn, index: k });
            }
            if cell != diag.cells[last - k] {
                return Err(SuwVerifyError::AsymmetryAt { diagonal: dn, index: k });
            }
            let interior = k != 0 && k != last;
            if !interior {
                continue;
            }
            match sys.role_of(cell) {
                Role::One | Role::Bottom => {
                    return Err(SuwVerifyError::TypeDiscipline { diagonal: dn, index: k })
                }
                Role::Zero => {}
                Role::Bootstrap => {
                    if dn >= meta.d_w {
                        return Err(SuwVerifyError::TypeDiscipline { diagonal: dn, index: k });
                    }
                }
                Role::Type0 => {
                    if meta.diag_type(dn) != Some(0) {
                        return Err(SuwVerifyError::TypeDiscipline { diagonal: dn, index: k });
                    }
                }
                Role::Pair(lv) => {
                    if meta.diag_type(dn) != Some(lv) {
                        return Err(SuwVerifyError::TypeDiscipline { diagonal: dn, index: k });
                    }
                }
            }
        }
        if dn >= meta.d_w {
            if let Some(first) = diag.cells[1..last].iter().position(|&c| c != meta.zero) {
                let margin = first;
                if margin < 2 {
                    return Err(SuwVerifyError::WallBreach { diagonal: dn, index: first + 1 });
                }
                min_margin = Some(min_margin.map_or(margin, |m0| m0.min(margin)));
            }
        }
        if dn == meta.d_w {
            for (k, (&got, &want)) in diag.cells.iter().zip(meta.seed.iter()).enumerate() {
                if got != want {
                    return Err(SuwVerifyError::SeedMismatch { index: k });
                }
            }
        }
        if meta.diag_type(dn) == Some(0) {
            let t = ((dn - meta.d_w) / 8) as u64;
            if t <= t_max {
                let want = expected_type0(meta, &trace, &run, t, last);
                for (k, (&got, &wanted)) in diag.cells.iter().zip(want.iter()).enumerate() {
                    if got != wanted {
                        return Err(SuwVerifyError::MismatchAt {
                            t,
                            index: k,
                            expected: wanted,
                            got,
                        });
                    }
                }
                per_step_match[t as usize] = true;
            }
        }
    }

    let scan = crate::dynsys::scan_ultimately_zero(sys, n);
    let certified = scan.verdict.map(|v| v.certified()).unwrap_or(false);
    let resolved = !run.timed_out || run.visited_negative;
    let verdict_agreement = if resolved {
        Some(certified == run.suw_accept())
    } else if certified {
        Some(false)
    } else {
        None
    };
    if verdict_agreement == Some(false) {
        return Err(SuwVerifyError::VerdictDisagreement);
    }

    Ok(SuwVerifyReport {
        steps_checked: t_max + 1,
        per_step_match,
        verdict_agreement,
        bottom_free: true,
        min_margin,
        scan,
        run,
    })
}
