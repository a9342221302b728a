//! Systems, developments, and the zero certificate.
//!
//! The development of a system is the infinite matrix `a(i,j)` with
//! `a(i,j) = one` whenever `i == 0 || j == 0` and
//! `a(i,j) = f(a(i-1,j), a(i,j-1))` otherwise. We never materialize the
//! matrix: it is walked anti-diagonal by anti-diagonal, and computing the
//! next diagonal only needs the previous one.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Index of a letter in a system's alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LetterId(pub u32);

/// What a letter is for.
///
/// Roles carry no semantics inside the development engine; compilers tag
/// letters so that verifiers and renderers can classify them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    /// The border letter.
    One,
    /// The blank letter; "ultimately zero" is about this one.
    Zero,
    /// Absorbing letter used to totalize partial rule tables.
    Bottom,
    /// Seeding letter used only below the seeded diagonal.
    Bootstrap,
    /// Letter carrying one cell of simulated tape content.
    Type0,
    /// Letter encoding a window of a lower level; the payload is the level.
    Pair(u8),
}

impl Role {
    fn as_str(&self) -> &'static str {
        match self {
            Role::One => "one",
            Role::Zero => "zero",
            Role::Bottom => "bottom",
            Role::Bootstrap => "bootstrap",
            Role::Type0 => "type0",
            Role::Pair(_) => "pair",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Pair(k) => write!(f, "pair{}", k),
            other => f.write_str(other.as_str()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Letter {
    pub id: LetterId,
    pub name: String,
    pub role: Role,
}

/// A rule assignment that contradicts an earlier one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleConflict {
    pub north: LetterId,
    pub west: LetterId,
    pub existing: LetterId,
    pub rejected: LetterId,
}

impl fmt::Display for RuleConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "conflicting rule for ({}, {}): already {} but asked to be {}",
            self.north.0, self.west.0, self.existing.0, self.rejected.0
        )
    }
}

/// Total binary rule over letter ids.
///
/// Only explicitly defined pairs are stored; every other pair reads as the
/// default letter (the absorbing Bottom) when one is present. A table
/// without a default must be explicitly total before development.
#[derive(Clone, Debug)]
pub struct RuleTable {
    size: u32,
    entries: BTreeMap<(u32, u32), u32>,
    default: Option<LetterId>,
}

impl RuleTable {
    pub fn new(size: u32, default: Option<LetterId>) -> Self {
        RuleTable {
            size,
            entries: BTreeMap::new(),
            default,
        }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn default_letter(&self) -> Option<LetterId> {
        self.default
    }

    /// Defines `f(north, west) = out`, rejecting contradictions.
    /// Re-defining a pair to the same output is allowed and idempotent.
    pub fn set(&mut self, north: LetterId, west: LetterId, out: LetterId) -> Result<(), RuleConflict> {
        debug_assert!(north.0 < self.size && west.0 < self.size && out.0 < self.size);
        match self.entries.get(&(north.0, west.0)) {
            Some(&existing) if existing != out.0 => Err(RuleConflict {
                north,
                west,
                existing: LetterId(existing),
                rejected: out,
            }),
            Some(_) => Ok(()),
            None => {
                self.entries.insert((north.0, west.0), out.0);
                Ok(())
            }
        }
    }

    pub fn get(&self, north: LetterId, west: LetterId) -> Option<LetterId> {
        self.entries
            .get(&(north.0, west.0))
            .map(|&v| LetterId(v))
            .or(self.default)
    }

    /// True when the pair was explicitly defined (as opposed to defaulted).
    pub fn is_defined(&self, north: LetterId, west: LetterId) -> bool {
        self.entries.contains_key(&(north.0, west.0))
    }

    pub fn defined_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter_defined(&self) -> impl Iterator<Item = (LetterId, LetterId, LetterId)> + '_ {
        self.entries
            .iter()
            .map(|(&(a, b), &c)| (LetterId(a), LetterId(b), LetterId(c)))
    }
}

#[derive(Clone, Debug)]
pub struct DynamicalSystem {
    pub letters: Vec<Letter>,
    pub table: RuleTable,
    pub zero: LetterId,
    pub one: LetterId,
    pub bottom: Option<LetterId>,
    /// Declared symmetry: the development satisfies a(i,j) = a(j,i).
    pub symmetric: bool,
}

impl DynamicalSystem {
    pub fn letter_count(&self) -> u32 {
        self.letters.len() as u32
    }

    pub fn name_of(&self, id: LetterId) -> &str {
        &self.letters[id.0 as usize].name
    }

    pub fn role_of(&self, id: LetterId) -> Role {
        self.letters[id.0 as usize].role
    }
}

/// One anti-diagonal of the development: `cells[k] = a(n-k, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub n: usize,
    pub cells: Vec<LetterId>,
}

impl Diagonal {
    /// Interior cells all equal to the given letter (trivially true for n < 2).
    pub fn interior_all(&self, letter: LetterId) -> bool {
        self.cells[1..self.cells.len().saturating_sub(1)]
            .iter()
            .all(|&c| c == letter)
    }
}

enum TableView<'a> {
    Dense(Vec<u32>, u32),
    Sparse(&'a RuleTable),
}

// Past this alphabet size a dense size*size lookup grid stops paying for itself.
const DENSE_LIMIT: u32 = 2048;

impl<'a> TableView<'a> {
    fn new(sys: &'a DynamicalSystem) -> Self {
        let size = sys.table.size;
        if size <= DENSE_LIMIT {
            let bottom = sys.table.default.map(|b| b.0).unwrap_or(u32::MAX);
            let mut grid = vec![bottom; (size as usize) * (size as usize)];
            for (&(a, b), &c) in &sys.table.entries {
                grid[a as usize * size as usize + b as usize] = c;
            }
            TableView::Dense(grid, size)
        } else {
            TableView::Sparse(&sys.table)
        }
    }

    #[inline]
    fn get(&self, north: LetterId, west: LetterId) -> LetterId {
        match self {
            TableView::Dense(grid, size) => {
                let v = grid[north.0 as usize * *size as usize + west.0 as usize];
                assert!(v != u32::MAX, "rule table is not total and has no bottom");
                LetterId(v)
            }
            TableView::Sparse(table) => table
                .get(north, west)
                .expect("rule table is not total and has no bottom"),
        }
    }
}

/// Streaming development: an iterator over diagonals `D_0, D_1, ...`.
///
/// Memory contract: only the most recent diagonal is retained, so walking
/// N diagonals keeps O(N) cells live rather than O(N^2).
pub struct Development<'a> {
    sys: &'a DynamicalSystem,
    view: TableView<'a>,
    prev: Option<Diagonal>,
}

impl<'a> Development<'a> {
    pub fn new(sys: &'a DynamicalSystem) -> Self {
        Development {
            sys,
            view: TableView::new(sys),
            prev: None,
        }
    }

    /// Number of cells currently retained (the streaming footprint).
    pub fn live_cells(&self) -> usize {
        self.prev.as_ref().map(|d| d.cells.len()).unwrap_or(0)
    }
}

impl<'a> Iterator for Development<'a> {
    type Item = Diagonal;

    fn next(&mut self) -> Option<Diagonal> {
        let next = match &self.prev {
            None => Diagonal {
                n: 0,
                cells: vec![self.sys.one],
            },
            Some(prev) => {
                let n = prev.n + 1;
                let mut cells = Vec::with_capacity(n + 1);
                cells.push(self.sys.one);
                for k in 1..n {
                    cells.push(self.view.get(prev.cells[k], prev.cells[k - 1]));
                }
                cells.push(self.sys.one);
                Diagonal { n, cells }
            }
        };
        self.prev = Some(next.clone());
        Some(next)
    }
}

/// Develops diagonals `D_0 ..= D_n`.
pub fn develop(sys: &DynamicalSystem, n: usize) -> Vec<Diagonal> {
    Development::new(sys).take(n + 1).collect()
}

/// Outcome of scanning a development window for ultimate zeroness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroVerdict {
    /// Sound certificate: diagonal `n` has an all-zero interior and the
    /// closure rules hold, so every later diagonal is all zero too.
    ZeroCertifiedFrom(usize),
    /// Nonzero interiors persist through the end of the window.
    NotZeroWithin(usize),
    /// From diagonal `n` onward every scanned interior was zero, but the
    /// closure rules fail, so nothing follows about later diagonals.
    InteriorZeroButUncertified(usize),
}

impl ZeroVerdict {
    pub fn certified(&self) -> bool {
        matches!(self, ZeroVerdict::ZeroCertifiedFrom(_))
    }
}

impl fmt::Display for ZeroVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroVerdict::ZeroCertifiedFrom(n) => write!(f, "zero certified from diagonal {}", n),
            ZeroVerdict::NotZeroWithin(n) => write!(f, "not zero within {} diagonals", n),
            ZeroVerdict::InteriorZeroButUncertified(n) => {
                write!(f, "interior zero from diagonal {} but closure uncertified", n)
            }
        }
    }
}

const MAX_LOGGED_ISLANDS: usize = 64;

/// Scan log produced alongside a verdict.
#[derive(Clone, Debug, Default)]
pub struct ZeroScan {
    pub verdict: Option<ZeroVerdict>,
    /// Whether the table satisfies f(0,0) = f(0,1) = f(1,0) = 0.
    pub closure_holds: bool,
    /// Starting diagonals of maximal all-zero-interior runs, oldest first.
    pub islands: Vec<usize>,
    /// Convenience copy of islands[0].
    pub first_uncertified: Option<usize>,
}

/// Scans diagonals `D_2 ..= D_bound` for an all-zero interior.
///
/// The certificate is sound: once some diagonal's interior is all zero and
/// `f(0,0) = f(0,1) = f(1,0) = 0`, interiors stay zero forever. Without
/// closure, a zero run broken by a later nonzero interior downgrades the
/// verdict to NotZeroWithin; only an unbroken run earns the uncertified
/// verdict.
pub fn scan_ultimately_zero(sys: &DynamicalSystem, bound: usize) -> ZeroScan {
    let zero = sys.zero;
    let closure = [
        sys.table.get(zero, zero),
        sys.table.get(zero, sys.one),
        sys.table.get(sys.one, zero),
    ]
    .iter()
    .all(|&v| v == Some(zero));

    let mut scan = ZeroScan {
        closure_holds: closure,
        ..ZeroScan::default()
    };
    let mut in_island = false;
    let mut broken = false;
    for diag in Development::new(sys).take(bound + 1).skip(2) {
        if diag.interior_all(zero) {
            if closure {
                scan.verdict = Some(ZeroVerdict::ZeroCertifiedFrom(diag.n));
                return scan;
            }
            if !in_island {
                in_island = true;
                if scan.islands.len() < MAX_LOGGED_ISLANDS {
                    scan.islands.push(diag.n);
                }
            }
        } else {
            if !scan.islands.is_empty() {
                broken = true;
            }
            in_island = false;
        }
    }
    scan.first_uncertified = scan.islands.first().copied();
    scan.verdict = Some(match scan.islands.first() {
        Some(&n) if !broken => ZeroVerdict::InteriorZeroButUncertified(n),
        _ => ZeroVerdict::NotZeroWithin(bound),
    });
    scan
}

/// Fatal structural problem in a system description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralError {
    LetterIdOutOfRange { id: u32 },
    NonContiguousIds,
    DuplicateName(String),
    MissingDistinguished(&'static str),
    RuleIdOutOfRange { north: u32, west: u32, out: u32 },
    NotTotal { north: u32, west: u32 },
}

impl fmt::Display for StructuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralError::LetterIdOutOfRange { id } => write!(f, "letter id {} out of range", id),
            StructuralError::NonContiguousIds => write!(f, "letter ids are not 0..n in order"),
            StructuralError::DuplicateName(n) => write!(f, "duplicate letter name {:?}", n),
            StructuralError::MissingDistinguished(which) => {
                write!(f, "missing distinguished letter: {}", which)
            }
            StructuralError::RuleIdOutOfRange { north, west, out } => {
                write!(f, "rule ({}, {}) -> {} uses an id out of range", north, west, out)
            }
            StructuralError::NotTotal { north, west } => {
                write!(f, "rule table has no entry or default for ({}, {})", north, west)
            }
        }
    }
}

/// Findings from a bounded system check.
///
/// `clean` covers symmetry and Bottom. A leaked wall letter is reported but
/// kept out of `clean`: generic systems may legitimately reuse the border
/// letter in the interior, while compiled systems must not and their
/// verifiers assert `one_interior_at.is_none()` themselves.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub defined_rules: usize,
    pub defaulted_rules: usize,
    pub symmetry_declared: bool,
    /// First defined pair whose mirror disagrees, if the declared symmetry fails.
    pub symmetry_violation: Option<(LetterId, LetterId)>,
    /// First appearance of Bottom in the probed window.
    pub bottom_at: Option<(usize, usize)>,
    /// First appearance of One off the walls in the probed window.
    pub one_interior_at: Option<(usize, usize)>,
    pub probed_diagonals: usize,
    pub clean: bool,
}

/// Structural checks plus a bounded development probe.
///
/// Structural defects are fatal; behavioral findings land in the report.
pub fn validate_system(sys: &DynamicalSystem, probe: usize) -> Result<ValidationReport, StructuralError> {
    let size = sys.letters.len() as u32;
    for (i, letter) in sys.letters.iter().enumerate() {
        if letter.id.0 != i as u32 {
            return Err(StructuralError::NonContiguousIds);
        }
    }
    {
        let mut names: Vec<&str> = sys.letters.iter().map(|l| l.name.as_str()).collect();
        names.sort_unstable();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(StructuralError::DuplicateName(String::from(pair[0])));
            }
        }
    }
    for (&which, &id) in [("zero", sys.zero), ("one", sys.one)].iter().map(|(w, i)| (w, i)) {
        if id.0 >= size {
            return Err(StructuralError::MissingDistinguished(which));
        }
    }
    if let Some(b) = sys.bottom {
        if b.0 >= size {
            return Err(StructuralError::LetterIdOutOfRange { id: b.0 });
        }
    }
    for (a, b, c) in sys.table.iter_defined() {
        if a.0 >= size || b.0 >= size || c.0 >= size {
            return Err(StructuralError::RuleIdOutOfRange {
                north: a.0,
                west: b.0,
                out: c.0,
            });
        }
    }
    if sys.table.default.is_none() {
        for a in 0..size {
            for b in 0..size {
                if !sys.table.is_defined(LetterId(a), LetterId(b)) {
                    return Err(StructuralError::NotTotal { north: a, west: b });
                }
            }
        }
    }

    let defined = sys.table.defined_len();
    let total = size as usize * size as usize;
    let mut report = ValidationReport {
        defined_rules: defined,
        defaulted_rules: total - defined,
        symmetry_declared: sys.symmetric,
        symmetry_violation: None,
        bottom_at: None,
        one_interior_at: None,
        probed_diagonals: probe,
        clean: true,
    };

    if sys.symmetric {
        for (a, b, c) in sys.table.iter_defined() {
            if sys.table.get(b, a) != Some(c) {
                report.symmetry_violation = Some((a, b));
                break;
            }
        }
    }

    for diag in Development::new(sys).take(probe + 1) {
        let last = diag.cells.len() - 1;
        for (k, &cell) in diag.cells.iter().enumerate() {
            if Some(cell) == sys.bottom && report.bottom_at.is_none() {
                report.bottom_at = Some((diag.n, k));
            }
            if cell == sys.one && k != 0 && k != last && report.one_interior_at.is_none() {
                report.one_interior_at = Some((diag.n, k));
            }
        }
    }

    report.clean = report.symmetry_violation.is_none() && report.bottom_at.is_none();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_letter_system(rule: [[u32; 2]; 2], symmetric: bool) -> DynamicalSystem {
        // Letter 0 is the border one, letter 1 is zero.
        let letters = vec![
            Letter {
                id: LetterId(0),
                name: "1".into(),
                role: Role::One,
            },
            Letter {
                id: LetterId(1),
                name: "0".into(),
                role: Role::Zero,
            },
        ];
        let mut table = RuleTable::new(2, None);
        for a in 0..2u32 {
            for b in 0..2u32 {
                table
                    .set(LetterId(a), LetterId(b), LetterId(rule[a as usize][b as usize]))
                    .unwrap();
            }
        }
        DynamicalSystem {
            letters,
            table,
            zero: LetterId(1),
            one: LetterId(0),
            bottom: None,
            symmetric,
        }
    }

    /// xor on {zero, one} with one doubling as the border letter.
    fn xor_system() -> DynamicalSystem {
        // f(1,1)=0, f(1,0)=f(0,1)=1, f(0,0)=0 (ids: 0 is one, 1 is zero)
        two_letter_system([[1, 0], [0, 1]], true)
    }

    fn ids(cells: &[u32]) -> Vec<LetterId> {
        cells.iter().map(|&c| LetterId(c)).collect()
    }

    #[test]
    fn xor_development_first_diagonals() {
        let sys = xor_system();
        let d = develop(&sys, 4);
        assert_eq!(d[0].cells, ids(&[0]));
        assert_eq!(d[1].cells, ids(&[0, 0]));
        // one=id 0, zero=id 1; expected contents 1 0 1 / 1 1 1 1 / 1 0 0 0 1
        assert_eq!(d[2].cells, ids(&[0, 1, 0]));
        assert_eq!(d[3].cells, ids(&[0, 0, 0, 0]));
        assert_eq!(d[4].cells, ids(&[0, 1, 1, 1, 0]));
    }

    #[test]
    fn xor_development_is_symmetric() {
        let sys = xor_system();
        for diag in develop(&sys, 40) {
            let rev: Vec<_> = diag.cells.iter().rev().copied().collect();
            assert_eq!(diag.cells, rev, "diagonal {} not palindromic", diag.n);
        }
    }

    #[test]
    fn constant_zero_rule_certifies_immediately() {
        // f == zero everywhere.
        let sys = two_letter_system([[1, 1], [1, 1]], true);
        let scan = scan_ultimately_zero(&sys, 64);
        assert_eq!(scan.verdict, Some(ZeroVerdict::ZeroCertifiedFrom(2)));
    }

    #[test]
    fn constant_one_rule_never_zero() {
        let sys = two_letter_system([[0, 0], [0, 0]], true);
        let scan = scan_ultimately_zero(&sys, 64);
        assert_eq!(scan.verdict, Some(ZeroVerdict::NotZeroWithin(64)));
        assert_eq!(scan.first_uncertified, None);
    }

    #[test]
    fn xor_scan_logs_uncertified_zero_islands() {
        let sys = xor_system();
        let scan = scan_ultimately_zero(&sys, 16);
        // D_2 = 1 0 1 and D_4 = 1 0 0 0 1 have zero interiors, but
        // f(0,1) = 1 blocks the certificate, and D_3 / D_5 = 1 1 0 0 1 1
        // are nonzero again, so the islands never stabilize.
        assert_eq!(scan.verdict, Some(ZeroVerdict::NotZeroWithin(16)));
        assert!(!scan.closure_holds);
        assert_eq!(scan.islands, vec![2, 4, 8, 16]);
        assert_eq!(scan.first_uncertified, Some(2));
        let d5 = &develop(&sys, 5)[5];
        assert_eq!(d5.cells, ids(&[0, 0, 1, 1, 0, 0]));
    }

    #[test]
    fn unbroken_zero_run_reports_uncertified() {
        let sys = xor_system();
        // Window ending at D_2: the zero run that starts there is never
        // broken inside the window, so the scan cannot rule anything out,
        // but f(0,1) = 1 denies the certificate.
        let scan = scan_ultimately_zero(&sys, 2);
        assert_eq!(scan.verdict, Some(ZeroVerdict::InteriorZeroButUncertified(2)));
        // One diagonal more breaks the run.
        let scan3 = scan_ultimately_zero(&sys, 3);
        assert_eq!(scan3.verdict, Some(ZeroVerdict::NotZeroWithin(3)));
    }

    #[test]
    fn rule_conflict_is_reported() {
        let mut table = RuleTable::new(2, None);
        table.set(LetterId(0), LetterId(1), LetterId(1)).unwrap();
        // Idempotent re-set is fine.
        table.set(LetterId(0), LetterId(1), LetterId(1)).unwrap();
        let err = table.set(LetterId(0), LetterId(1), LetterId(0)).unwrap_err();
        assert_eq!(
            err,
            RuleConflict {
                north: LetterId(0),
                west: LetterId(1),
                existing: LetterId(1),
                rejected: LetterId(0),
            }
        );
    }

    #[test]
    fn validate_flags_asymmetric_table_declared_symmetric() {
        let mut sys = two_letter_system([[1, 0], [1, 1]], true);
        sys.symmetric = true;
        let report = validate_system(&sys, 8).unwrap();
        assert!(!report.clean);
        assert!(report.symmetry_violation.is_some());
    }

    #[test]
    fn validate_accepts_xor() {
        let report = validate_system(&xor_system(), 32).unwrap();
        assert!(report.clean, "{:?}", report);
        assert_eq!(report.defined_rules, 4);
        assert_eq!(report.defaulted_rules, 0);
        // The border letter recurs inside (D_3 = 1 1 1 1); reported as a
        // finding, legal for a hand-built system.
        assert_eq!(report.one_interior_at, Some((3, 1)));
    }

    #[test]
    fn partial_table_without_bottom_is_structural_error() {
        let mut sys = two_letter_system([[1, 0], [0, 1]], false);
        sys.table = RuleTable::new(2, None);
        sys.table.set(LetterId(0), LetterId(0), LetterId(1)).unwrap();
        assert!(matches!(
            validate_system(&sys, 4),
            Err(StructuralError::NotTotal { .. })
        ));
    }

    #[test]
    fn development_streams_with_bounded_live_cells() {
        let sys = xor_system();
        let mut dev = Development::new(&sys);
        for _ in 0..=512 {
            dev.next().unwrap();
        }
        assert_eq!(dev.live_cells(), 513);
    }
}
