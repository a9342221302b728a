//! Randomized invariants over the core operations.

use proptest::prelude::*;

use carpet_core::dynsys::{
    develop, scan_ultimately_zero, DynamicalSystem, Letter, LetterId, Role, RuleTable, ZeroVerdict,
};
use carpet_core::fieldpoly::{embed_system, interpolate2, verify_embedding};
use carpet_core::samples::random_machine;
use carpet_core::suw::compile_suw;
use carpet_core::symcode::{sigma, pi_level, TermInterner};
use carpet_core::turing::{run_classify, Move, SymbolId, TuringMachine, BLANK};
use carpet_core::uw::compile_uw;

/// Total system over k letters from a flat rule vector; letter 0 is the
/// wall, letter 1 is zero.
fn system_from_rules(k: u32, rules: &[u32]) -> DynamicalSystem {
    assert_eq!(rules.len(), (k * k) as usize);
    let mut letters = vec![
        Letter { id: LetterId(0), name: "1".into(), role: Role::One },
        Letter { id: LetterId(1), name: "0".into(), role: Role::Zero },
    ];
    for i in 2..k {
        letters.push(Letter { id: LetterId(i), name: format!("c{}", i), role: Role::Type0 });
    }
    let mut table = RuleTable::new(k, None);
    for a in 0..k {
        for b in 0..k {
            table.set(LetterId(a), LetterId(b), LetterId(rules[(a * k + b) as usize] % k)).unwrap();
        }
    }
    DynamicalSystem {
        letters,
        table,
        zero: LetterId(1),
        one: LetterId(0),
        bottom: None,
        symmetric: false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Walls stay the wall letter and diagonal n has n+1 cells.
    #[test]
    fn walls_and_lengths_hold(k in 2u32..6, rules in prop::collection::vec(0u32..6, 36), n in 1usize..40) {
        let rules: Vec<u32> = rules.iter().take((k * k) as usize).cloned().collect();
        prop_assume!(rules.len() == (k * k) as usize);
        let sys = system_from_rules(k, &rules);
        for (i, diag) in develop(&sys, n).iter().enumerate() {
            prop_assert_eq!(diag.n, i);
            prop_assert_eq!(diag.cells.len(), i + 1);
            prop_assert_eq!(diag.cells[0], sys.one);
            prop_assert_eq!(*diag.cells.last().unwrap(), sys.one);
        }
    }

    /// Development is a pure function of the system.
    #[test]
    fn development_is_deterministic(k in 2u32..6, rules in prop::collection::vec(0u32..6, 36)) {
        let rules: Vec<u32> = rules.iter().take((k * k) as usize).cloned().collect();
        prop_assume!(rules.len() == (k * k) as usize);
        let sys = system_from_rules(k, &rules);
        let a = develop(&sys, 30);
        let b = develop(&sys, 30);
        for (x, y) in a.iter().zip(b.iter()) {
            prop_assert_eq!(&x.cells, &y.cells);
        }
    }

    /// A zero certificate really pins every later interior to zero.
    #[test]
    fn certificates_are_sound(k in 2u32..6, mut rules in prop::collection::vec(0u32..6, 36)) {
        rules.truncate((k * k) as usize);
        prop_assume!(rules.len() == (k * k) as usize);
        // Force the closure rules f(0,0)=f(0,1)=f(1,0)=0 so certificates
        // can fire; everything else stays arbitrary.
        rules[(k + 1) as usize] = 1;
        rules[k as usize] = 1;
        rules[1] = 1;
        let sys = system_from_rules(k, &rules);
        let scan = scan_ultimately_zero(&sys, 60);
        if let Some(ZeroVerdict::ZeroCertifiedFrom(n)) = scan.verdict {
            for diag in develop(&sys, n + 30).iter().skip(n) {
                let last = diag.cells.len() - 1;
                for &c in &diag.cells[1..last] {
                    prop_assert_eq!(c, sys.zero);
                }
            }
        }
    }

    /// Nested-pair codes ignore word orientation.
    #[test]
    fn word_codes_are_mirror_invariant(w in prop::collection::vec(0u32..5, 2..9)) {
        prop_assume!(w.iter().any(|&l| l != 0));
        let mut int = TermInterner::new();
        let fold = |int: &mut TermInterner, word: &[u32]| {
            let mut terms: Vec<_> = word.iter().map(|&l| int.leaf(l)).collect();
            while terms.len() > 1 {
                terms = pi_level(int, &terms).unwrap();
            }
            terms[0]
        };
        let a = fold(&mut int, &w);
        let b = fold(&mut int, &sigma(&w));
        prop_assert_eq!(a, b);
    }

    /// Level codes shrink length by one per level.
    #[test]
    fn level_codes_shrink_by_one(w in prop::collection::vec(1u32..5, 2..9)) {
        let mut int = TermInterner::new();
        let terms: Vec<_> = w.iter().map(|&l| int.leaf(l)).collect();
        let up = pi_level(&mut int, &terms).unwrap();
        prop_assert_eq!(up.len(), terms.len() - 1);
    }

    /// Interpolation reproduces every grid point exactly.
    #[test]
    fn interpolation_is_exact(pi in 0usize..4, cells in prop::collection::vec(0u64..7, 49)) {
        let p = [2u64, 3, 5, 7][pi];
        let n = p as usize;
        let values: Vec<Vec<u64>> =
            (0..n).map(|i| (0..n).map(|j| cells[i * n + j] % p).collect()).collect();
        let poly = interpolate2(&values, p).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(poly.eval(x as u64, y as u64), values[x][y]);
            }
        }
        let (dx, dy) = poly.degrees();
        prop_assert!(dx < n && dy < n);
    }

    /// Table development and polynomial development never part ways.
    #[test]
    fn polynomial_development_matches_table(k in 2u32..8, rules in prop::collection::vec(0u32..8, 64)) {
        let rules: Vec<u32> = rules.iter().take((k * k) as usize).cloned().collect();
        prop_assume!(rules.len() == (k * k) as usize);
        let sys = system_from_rules(k, &rules);
        let (poly, emb) = embed_system(&sys, 11).unwrap();
        prop_assert!(verify_embedding(&sys, &poly, &emb, 40).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Compiled simulating systems of either shape survive a development
    /// probe with their declared structure intact.
    #[test]
    fn compiled_systems_probe_clean(seed in 0u64..1000) {
        let (m, w) = random_machine(seed);
        let (sys_u, _) = compile_uw(&m, &w).unwrap();
        let rep_u = carpet_core::dynsys::validate_system(&sys_u, 60).unwrap();
        prop_assert!(rep_u.clean);
        prop_assert!(rep_u.one_interior_at.is_none());
        let (sys_s, meta_s) = compile_suw(&m, &w).unwrap();
        let rep_s = carpet_core::dynsys::validate_system(&sys_s, meta_s.d_w + 16).unwrap();
        prop_assert!(rep_s.clean);
        prop_assert!(rep_s.one_interior_at.is_none());
        prop_assert!(rep_s.symmetry_declared);
    }

    /// Mirrored systems develop palindromic diagonals.
    #[test]
    fn mirrored_development_is_palindromic(seed in 0u64..1000) {
        let (m, w) = random_machine(seed);
        let (sys, meta) = compile_suw(&m, &w).unwrap();
        for diag in develop(&sys, meta.d_w + 32) {
            let last = diag.cells.len() - 1;
            for (k, &c) in diag.cells.iter().enumerate() {
                prop_assert_eq!(c, diag.cells[last - k]);
            }
        }
    }
}

/// Dense-tape reference run, for checking the sparse implementation.
/// The array covers cells -256..256 at offset 256.
fn dense_run(m: &TuringMachine, w: &[SymbolId], max_steps: u64) -> (bool, u64, bool) {
    let offset = 256i64;
    let mut tape = vec![BLANK; 512];
    for (i, &s) in w.iter().enumerate() {
        tape[(offset + 1) as usize + i] = s;
    }
    let mut head: i64 = 0;
    let mut state = m.start;
    let mut steps = 0;
    while state != m.halt && steps < max_steps {
        let cell = (head + offset) as usize;
        let t = m.delta(state, tape[cell]).unwrap();
        tape[cell] = t.write;
        state = t.next;
        head += match t.mv {
            Move::Left => -1,
            Move::Stay => 0,
            Move::Right => 1,
        };
        assert!(head.unsigned_abs() < 255, "reference run out of bounds");
        steps += 1;
    }
    let clean = tape.iter().all(|&s| s == BLANK);
    (state == m.halt, steps, clean)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The sparse stepping loop agrees with a dense-array reference.
    #[test]
    fn sparse_run_matches_dense_reference(seed in 0u64..10000) {
        let (m, w) = random_machine(seed);
        let max_steps = 60;
        let report = run_classify(&m, &w, max_steps).unwrap();
        let (halted, steps, clean) = dense_run(&m, &w, max_steps);
        prop_assert_eq!(report.halted, halted);
        prop_assert_eq!(report.steps, steps);
        if halted {
            prop_assert_eq!(report.tape_clean_at_halt, clean);
        }
    }
}
