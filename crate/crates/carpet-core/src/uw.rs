//! Machine-to-system compiler, asymmetric variant, and its verifier.
//!
//! The compiled development carries the machine's configurations on every
//! second diagonal. In between, a pair alphabet buffers two neighbor cells
//! so that the next content diagonal can look one step further back: the
//! local update sees three consecutive cells of the old configuration. A
//! bootstrap triangle of position-unique letters paints everything below
//! the seeded diagonal.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dynsys::{
    Development, DynamicalSystem, Letter, LetterId, Role, RuleConflict, RuleTable,
};
use crate::turing::{
    run_trace, Configuration, Move, RunReport, StateId, SymbolId, TuringMachine, BLANK,
};

/// Content of one simulated tape cell. Plain blank is canonically `Blank`
/// (it shares the system's zero letter); a head may sit on any symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Cell {
    Blank,
    Sym(SymbolId),
    Head(SymbolId, StateId),
}

impl Cell {
    pub fn plain(sym: SymbolId) -> Cell {
        if sym == BLANK {
            Cell::Blank
        } else {
            Cell::Sym(sym)
        }
    }

    pub fn carries_head(&self) -> bool {
        matches!(self, Cell::Head(_, _))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UpdateError {
    /// More than one of the three cells carries a head.
    TwoHeads,
}

impl fmt::Display for UpdateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateError::TwoHeads => write!(f, "more than one head in a local window"),
        }
    }
}

/// Next content of the center cell, from the three consecutive cells
/// (x=left, y=center, z=right) of the current configuration.
///
/// A halted head erases itself over a blank and freezes otherwise; a live
/// head applies its transition; a neighbor head moving toward the center
/// hands the state over.
pub fn uw_local_update(
    m: &TuringMachine,
    x: Cell,
    y: Cell,
    z: Cell,
) -> Result<Cell, UpdateError> {
    let heads = [x, y, z].iter().filter(|c| c.carries_head()).count();
    if heads > 1 {
        return Err(UpdateError::TwoHeads);
    }
    match y {
        Cell::Head(s, q) if q == m.halt => {
            if s == BLANK {
                Ok(Cell::Blank)
            } else {
                Ok(Cell::Head(s, q))
            }
        }
        Cell::Head(s, q) => {
            let t = m.delta(q, s).expect("live head has a transition");
            match t.mv {
                Move::Stay => Ok(Cell::Head(t.write, t.next)),
                Move::Left | Move::Right => Ok(Cell::plain(t.write)),
            }
        }
        Cell::Blank | Cell::Sym(_) => {
            let c = match y {
                Cell::Sym(s) => s,
                _ => BLANK,
            };
            let incoming = |n: Cell, toward: Move| -> Option<StateId> {
                if let Cell::Head(s, q) = n {
                    if q != m.halt {
                        let t = m.delta(q, s).expect("live head has a transition");
                        if t.mv == toward {
                            return Some(t.next);
                        }
                    }
                }
                None
            };
            if let Some(q) = incoming(x, Move::Right) {
                Ok(Cell::Head(c, q))
            } else if let Some(q) = incoming(z, Move::Left) {
                Ok(Cell::Head(c, q))
            } else {
                Ok(Cell::plain(c))
            }
        }
    }
}

/// Compile-time layout of the emitted system.
#[derive(Clone, Debug)]
pub struct UwMeta {
    pub d_w: usize,
    /// Diag-index of tape cell 0 on the seeded diagonal.
    pub cell0_index: usize,
    pub zero: LetterId,
    pub one: LetterId,
    pub bottom: LetterId,
    gamma0: BTreeMap<Cell, LetterId>,
    content: BTreeMap<u32, Cell>,
    gamma1: BTreeMap<(u32, u32), LetterId>,
    pair_of: BTreeMap<u32, (u32, u32)>,
    pub bootstrap: BTreeMap<(usize, usize), LetterId>,
    pub seed: Vec<LetterId>,
}

impl UwMeta {
    /// Letter carrying the given cell content.
    pub fn gamma0_id(&self, cell: Cell) -> LetterId {
        self.gamma0[&cell]
    }

    /// Cell content of a letter, if it is a content letter (zero included).
    pub fn content_of(&self, id: LetterId) -> Option<Cell> {
        self.content.get(&id.0).copied()
    }

    /// Pair letter for (lower, higher) diag-index contents; (0,0) is zero.
    pub fn pair_id(&self, west: LetterId, north: LetterId) -> LetterId {
        if west == self.zero && north == self.zero {
            self.zero
        } else {
            self.gamma1[&(west.0, north.0)]
        }
    }

    pub fn pair_components(&self, id: LetterId) -> Option<(LetterId, LetterId)> {
        self.pair_of.get(&id.0).map(|&(a, b)| (LetterId(a), LetterId(b)))
    }

    pub fn gamma0_cells(&self) -> impl Iterator<Item = (Cell, LetterId)> + '_ {
        self.gamma0.iter().map(|(&c, &id)| (c, id))
    }
}

#[derive(Clone, Debug)]
pub enum CompileError {
    BadInput(crate::turing::MachineError),
    /// A double assignment in the generated table; a construction bug.
    Conflict(RuleConflict),
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileError::BadInput(e) => write!(f, "bad machine or word: {}", e),
            CompileError::Conflict(c) => write!(f, "{}", c),
        }
    }
}

impl From<RuleConflict> for CompileError {
    fn from(c: RuleConflict) -> Self {
        CompileError::Conflict(c)
    }
}

fn unique_name(taken: &mut BTreeMap<String, ()>, base: String) -> String {
    let mut name = base;
    while taken.contains_key(&name) {
        name.push('\'');
    }
    taken.insert(name.clone(), ());
    name
}

/// Builds the simulating system for machine and input.
///
/// Seeded diagonal d_w = |w| + 6 reads `1 0 0 (blank,start) w1 .. wn 0 0 1`;
/// below it a triangle of position-unique letters grows from f(1,1); above
/// it content diagonals (even offsets) and pair diagonals (odd offsets)
/// alternate. Undefined pairs fall to the absorbing bottom letter.
pub fn compile_uw(
    m: &TuringMachine,
    w: &[SymbolId],
) -> Result<(DynamicalSystem, UwMeta), CompileError> {
    for (i, &s) in w.iter().enumerate() {
        if s == BLANK {
            return Err(CompileError::BadInput(
                crate::turing::MachineError::BlankInInput { position: i },
            ));
        }
        if s.0 as usize >= m.symbol_count() {
            return Err(CompileError::BadInput(crate::turing::MachineError::IdOutOfRange));
        }
    }
    let d_w = w.len() + 6;
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
        for k in 1..d {
            let id = push(&mut letters, &mut taken, format!("u_{}_{}", d, k), Role::Bootstrap);
            bootstrap.insert((d, k), id);
        }
    }

    // Content alphabet: plain non-blank symbols, then every head pairing.
    let mut gamma0: BTreeMap<Cell, LetterId> = BTreeMap::new();
    let mut content: BTreeMap<u32, Cell> = BTreeMap::new();
    gamma0.insert(Cell::Blank, zero);
    content.insert(zero.0, Cell::Blank);
    let mut gamma0_order: Vec<Cell> = vec![Cell::Blank];
    for s in 1..m.symbol_count() as u16 {
        gamma0_order.push(Cell::Sym(SymbolId(s)));
    }
    for s in 0..m.symbol_count() as u16 {
        for q in 0..m.state_count() as u16 {
            gamma0_order.push(Cell::Head(SymbolId(s), StateId(q)));
        }
    }
    for &cell in gamma0_order.iter().skip(1) {
        let base = match cell {
            Cell::Sym(s) => m.symbols[s.0 as usize].clone(),
            Cell::Head(s, q) => {
                format!("({},{})", m.symbols[s.0 as usize], m.states[q.0 as usize])
            }
            Cell::Blank => unreachable!(),
        };
        let id = push(&mut letters, &mut taken, base, Role::Type0);
        gamma0.insert(cell, id);
        content.insert(id.0, cell);
    }

    // Pair alphabet over content letters, (zero, zero) excluded.
    let mut gamma1: BTreeMap<(u32, u32), LetterId> = BTreeMap::new();
    let mut pair_of: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
    for &a in &gamma0_order {
        for &b in &gamma0_order {
            if a == Cell::Blank && b == Cell::Blank {
                continue;
            }
            let (ia, ib) = (gamma0[&a], gamma0[&b]);
            let name = format!(
                "P({},{})",
                letters[ia.0 as usize].name, letters[ib.0 as usize].name
            );
            let id = push(&mut letters, &mut taken, name, Role::Pair(1));
            gamma1.insert((ia.0, ib.0), id);
            pair_of.insert(id.0, (ia.0, ib.0));
        }
    }

    let bottom = push(&mut letters, &mut taken, String::from("BOT"), Role::Bottom);

    let size = letters.len() as u32;
    let mut table = RuleTable::new(size, Some(bottom));

    // Blank corner and margins.
    table.set(zero, zero, zero)?;
    table.set(zero, one, zero)?;
    table.set(one, zero, zero)?;
    for l in &letters {
        let id = l.id;
        if id == one || id == bottom || matches!(l.role, Role::Bootstrap) {
            continue;
        }
        table.set(one, id, zero)?;
        table.set(id, one, zero)?;
    }

    // Bootstrap triangle: the corner seeds it, each row paints the next.
    table.set(one, one, bootstrap[&(2, 1)])?;
    for d in 3..d_w {
        for k in 1..d {
            let north = if k <= d - 2 { bootstrap[&(d - 1, k)] } else { one };
            let west = if k >= 2 { bootstrap[&(d - 1, k - 1)] } else { one };
            table.set(north, west, bootstrap[&(d, k)])?;
        }
    }

    // Seeded diagonal, painted by the last bootstrap row.
    let cell0_index = 3;
    let mut seed = vec![zero; d_w + 1];
    seed[0] = one;
    seed[d_w] = one;
    seed[cell0_index] = gamma0[&Cell::Head(BLANK, m.start)];
    for (i, &s) in w.iter().enumerate() {
        seed[cell0_index + 1 + i] = gamma0[&Cell::Sym(s)];
    }
    for k in 1..d_w {
        let north = if k <= d_w - 2 { bootstrap[&(d_w - 1, k)] } else { one };
        let west = if k >= 2 { bootstrap[&(d_w - 1, k - 1)] } else { one };
        table.set(north, west, seed[k])?;
    }

    // Content pairs up: f(north=x_k, west=x_{k-1}) = P(x_{k-1}, x_k).
    for &a in &gamma0_order {
        for &b in &gamma0_order {
            if a == Cell::Blank && b == Cell::Blank {
                continue;
            }
            let (ia, ib) = (gamma0[&a], gamma0[&b]);
            table.set(ib, ia, gamma1[&(ia.0, ib.0)])?;
        }
    }

    // Pairs feed the update: f(P(y,z), P(x,y)) carries x,y,z to the center.
    // Windows with two heads never occur; their pairs stay at bottom.
    let meta_pair = |ga: &BTreeMap<Cell, LetterId>,
                     g1: &BTreeMap<(u32, u32), LetterId>,
                     u: Cell,
                     v: Cell|
     -> LetterId {
        if u == Cell::Blank && v == Cell::Blank {
            zero
        } else {
            g1[&(ga[&u].0, ga[&v].0)]
        }
    };
    for &x in &gamma0_order {
        for &y in &gamma0_order {
            for &z in &gamma0_order {
                let out = match uw_local_update(m, x, y, z) {
                    Ok(c) => c,
                    Err(UpdateError::TwoHeads) => continue,
                };
                let north = meta_pair(&gamma0, &gamma1, y, z);
                let west = meta_pair(&gamma0, &gamma1, x, y);
                table.set(north, west, gamma0[&out])?;
            }
        }
    }

    let sys = DynamicalSystem {
        letters,
        table,
        zero,
        one,
        bottom: Some(bottom),
        symmetric: false,
    };
    let meta = UwMeta {
        d_w,
        cell0_index,
        zero,
        one,
        bottom,
        gamma0,
        content,
        gamma1,
        pair_of,
        bootstrap,
        seed,
    };
    Ok((sys, meta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UwVerifyError {
    BadBounds { needed: usize, given: usize },
    MachineTrouble(crate::turing::MachineError),
    MismatchAt { t: u64, index: usize, expected: LetterId, got: LetterId },
    BottomSeen { diagonal: usize, index: usize },
    WallBreach { diagonal: usize, index: usize },
    TypeDiscipline { diagonal: usize, index: usize },
    SeedMismatch { index: usize },
    VerdictDisagreement,
}

impl fmt::Display for UwVerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UwVerifyError::BadBounds { needed, given } => {
                write!(f, "need at least {} diagonals, given {}", needed, given)
            }
            UwVerifyError::MachineTrouble(e) => write!(f, "{}", e),
            UwVerifyError::MismatchAt { t, index, expected, got } => write!(
                f,
                "step {} cell at diag-index {}: expected letter {}, got {}",
                t, index, expected.0, got.0
            ),
            UwVerifyError::BottomSeen { diagonal, index } => {
                write!(f, "bottom letter at diagonal {} index {}", diagonal, index)
            }
            UwVerifyError::WallBreach { diagonal, index } => write!(
                f,
                "content within two cells of the wall at diagonal {} index {}",
                diagonal, index
            ),
            UwVerifyError::TypeDiscipline { diagonal, index } => write!(
                f,
                "letter class off its diagonal type at diagonal {} index {}",
                diagonal, index
            ),
            UwVerifyError::SeedMismatch { index } => {
                write!(f, "seeded diagonal differs at index {}", index)
            }
            UwVerifyError::VerdictDisagreement => {
                write!(f, "zero scan and machine classification disagree")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct UwVerifyReport {
    pub steps_checked: u64,
    pub per_step_match: Vec<bool>,
    /// certified == halted-clean, when the run resolved in budget.
    pub verdict_agreement: Option<bool>,
    pub bottom_free: bool,
    pub scan: crate::dynsys::ZeroScan,
    pub run: RunReport,
}

/// Expected content diagonal at simulated time t, walls and margins included.
fn expected_type0(
    meta: &UwMeta,
    m: &TuringMachine,
    trace: &[Configuration],
    t: u64,
    diag_len: usize,
) -> Vec<LetterId> {
    let mut cells = vec![meta.zero; diag_len + 1];
    cells[0] = meta.one;
    cells[diag_len] = meta.one;
    let last = trace.len() as u64 - 1;
    let config = &trace[t.min(last) as usize];
    let idx = |c: i64| -> usize { (meta.cell0_index as i64 + t as i64 + c) as usize };
    for (&c, &s) in &config.tape {
        cells[idx(c)] = meta.gamma0_id(Cell::Sym(s));
    }
    let s = config.read(config.head);
    let halted_past = t > last && config.state == m.halt;
    if halted_past {
        if s != BLANK {
            cells[idx(config.head)] = meta.gamma0_id(Cell::Head(s, config.state));
        }
    } else {
        cells[idx(config.head)] = meta.gamma0_id(Cell::Head(s, config.state));
    }
    cells
}

/// Develops the system and checks it cell-for-cell against the machine run.
///
/// Every diagonal up to n is checked for walls, margins, bottom-freeness
/// and diagonal-type discipline; every content diagonal up to step t_max is
/// compared with the expected encoding of the traced configuration.
pub fn verify_uw(
    sys: &DynamicalSystem,
    meta: &UwMeta,
    m: &TuringMachine,
    w: &[SymbolId],
    t_max: u64,
    n: usize,
) -> Result<UwVerifyReport, UwVerifyError> {
    if n < meta.d_w + 2 * t_max as usize {
        return Err(UwVerifyError::BadBounds {
            needed: meta.d_w + 2 * t_max as usize,
            given: n,
        });
    }
    let (trace, run) = run_trace(m, w, t_max).map_err(UwVerifyError::MachineTrouble)?;
    let mut per_step_match = vec![false; t_max as usize + 1];

    for diag in Development::new(sys).take(n + 1) {
        let dn = diag.n;
        let last = diag.cells.len() - 1;
        for (k, &cell) in diag.cells.iter().enumerate() {
            if cell == meta.bottom {
                return Err(UwVerifyError::BottomSeen { diagonal: dn, index: k });
            }
            let interior = k != 0 && k != last;
            if !interior {
                continue;
            }
            match sys.role_of(cell) {
                Role::One | Role::Bottom => {
                    return Err(UwVerifyError::TypeDiscipline { diagonal: dn, index: k })
                }
                Role::Zero => {}
                Role::Bootstrap => {
                    if dn >= meta.d_w {
                        return Err(UwVerifyError::TypeDiscipline { diagonal: dn, index: k });
                    }
                }
                Role::Type0 => {
                    if dn < meta.d_w || (dn - meta.d_w) % 2 != 0 {
                        return Err(UwVerifyError::TypeDiscipline { diagonal: dn, index: k });
                    }
                }
                Role::Pair(_) => {
                    if dn < meta.d_w || (dn - meta.d_w) % 2 != 1 {
                        return Err(UwVerifyError::TypeDiscipline { diagonal: dn, index: k });
                    }
                }
            }
            if dn >= meta.d_w && cell != meta.zero && !(3..=last - 3).contains(&k) {
                return Err(UwVerifyError::WallBreach { diagonal: dn, index: k });
            }
        }
        if dn == meta.d_w {
            for (k, (&got, &want)) in diag.cells.iter().zip(meta.seed.iter()).enumerate() {
                if got != want {
                    return Err(UwVerifyError::SeedMismatch { index: k });
                }
            }
        }
        if dn >= meta.d_w && (dn - meta.d_w) % 2 == 0 {
            let t = ((dn - meta.d_w) / 2) as u64;
            if t <= t_max {
                let want = expected_type0(meta, m, &trace, t, last);
                for (k, (&got, &wanted)) in diag.cells.iter().zip(want.iter()).enumerate() {
                    if got != wanted {
                        return Err(UwVerifyError::MismatchAt {
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
    let verdict_agreement = if !run.timed_out {
        Some(certified == run.uw_accept())
    } else if certified {
        Some(false)
    } else {
        None
    };
    if verdict_agreement == Some(false) {
        return Err(UwVerifyError::VerdictDisagreement);
    }

    Ok(UwVerifyReport {
        steps_checked: t_max + 1,
        per_step_match,
        verdict_agreement,
        bottom_free: true,
        scan,
        run,
    })
}
