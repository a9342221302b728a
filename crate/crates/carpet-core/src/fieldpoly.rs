//! Bivariate polynomial realizations of rule tables over prime fields.
//! Any finite table embeds into F_p for p at least the alphabet size; the
//! induced grid function interpolates to a polynomial of per-variable
//! degree below p, symmetric whenever the table is.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dynsys::{Development, DynamicalSystem, LetterId};

/// Interpolation is cubic in the modulus; this keeps it sane.
pub const MAX_MODULUS: u64 = 257;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldError {
    NonPrimeModulus(u64),
    ModulusTooSmall { modulus: u64, needed: usize },
    ModulusTooLarge(u64),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NonPrimeModulus(p) => write!(f, "{} is not prime", p),
            FieldError::ModulusTooSmall { modulus, needed } => {
                write!(f, "modulus {} below alphabet size {}", modulus, needed)
            }
            FieldError::ModulusTooLarge(p) => {
                write!(f, "modulus {} above the practical bound {}", p, MAX_MODULUS)
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_modulus(p: u64) -> Result<(), FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrimeModulus(p));
    }
    if p > MAX_MODULUS {
        return Err(FieldError::ModulusTooLarge(p));
    }
    Ok(())
}

/// Arithmetic mod a prime small enough that products fit without widening.
#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
}

/// Coefficients of d_a, the univariate polynomial that is 1 at a and 0 at
/// every other field point. Ascending powers, length p.
pub fn lagrange_basis(a: u64, p: u64) -> Result<Vec<u64>, FieldError> {
    check_modulus(p)?;
    debug_assert!(a < p);
    let fp = Fp { p };
    let mut num = vec![0u64; p as usize];
    num[0] = 1;
    let mut deg = 0;
    let mut denom = 1u64;
    for b in 0..p {
        if b == a {
            continue;
        }
        // num *= (x - b)
        for i in (0..=deg).rev() {
            let c = num[i];
            num[i + 1] = fp.add(num[i + 1], c);
            num[i] = fp.mul(c, fp.sub(0, b));
        }
        deg += 1;
        denom = fp.mul(denom, fp.sub(a, b));
    }
    let scale = fp.inv(denom);
    for c in num.iter_mut() {
        *c = fp.mul(*c, scale);
    }
    Ok(num)
}

/// Bivariate polynomial over F_p; entry (i, j) multiplies x^i y^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly2 {
    pub p: u64,
    pub coeffs: Vec<Vec<u64>>,
}

impl Poly2 {
    pub fn eval(&self, x: u64, y: u64) -> u64 {
        let fp = Fp { p: self.p };
        let mut acc = 0;
        for row in self.coeffs.iter().rev() {
            let mut r = 0;
            for &c in row.iter().rev() {
                r = fp.add(fp.mul(r, y), c);
            }
            acc = fp.add(fp.mul(acc, x), r);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|&c| c == 0))
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| (0..n).all(|j| self.coeffs[i][j] == self.coeffs[j][i]))
    }

    /// Highest power of each variable with a nonzero coefficient.
    pub fn degrees(&self) -> (usize, usize) {
        let mut dx = 0;
        let mut dy = 0;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    dx = dx.max(i);
                    dy = dy.max(j);
                }
            }
        }
        (dx, dy)
    }

    /// Nonzero coefficients in (i, j) order.
    pub fn nonzero_coeffs(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }
}

/// Exact interpolation of a full p by p value grid, row-wise in y then
/// column-wise in x, so the cost stays cubic in p.
pub fn interpolate2(values: &[Vec<u64>], p: u64) -> Result<Poly2, FieldError> {
    check_modulus(p)?;
    let n = p as usize;
    debug_assert_eq!(values.len(), n);
    debug_assert!(values.iter().all(|row| row.len() == n));
    let fp = Fp { p };
    let mut basis = Vec::with_capacity(n);
    for a in 0..p {
        basis.push(lagrange_basis(a, p)?);
    }
    // Row polynomials R_a(y) with R_a(b) = values[a][b].
    let mut rows = vec![vec![0u64; n]; n];
    for a in 0..n {
        for b in 0..n {
            let v = values[a][b] % p;
            if v == 0 {
                continue;
            }
            for j in 0..n {
                rows[a][j] = fp.add(rows[a][j], fp.mul(v, basis[b][j]));
            }
        }
    }
    // F(x, y) = sum_a d_a(x) R_a(y).
    let mut coeffs = vec![vec![0u64; n]; n];
    for a in 0..n {
        for i in 0..n {
            let c = basis[a][i];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                coeffs[i][j] = fp.add(coeffs[i][j], fp.mul(c, rows[a][j]));
            }
        }
    }
    Ok(Poly2 { p, coeffs })
}

/// Letter ids as field elements: zero and one land on the constants 0 and
/// 1, everything else fills 2.. in id order.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub to_field: Vec<u64>,
    pub from_field: BTreeMap<u64, LetterId>,
}

impl Embedding {
    pub fn embed(&self, id: LetterId) -> u64 {
        self.to_field[id.0 as usize]
    }

    pub fn lift(&self, v: u64) -> Option<LetterId> {
        self.from_field.get(&v).copied()
    }
}

/// Interpolates the rule table as a grid function on embedded letters,
/// zero off the alphabet. A symmetric table gives a symmetric polynomial;
/// so does the off-alphabet fill.
pub fn embed_system(sys: &DynamicalSystem, p: u64) -> Result<(Poly2, Embedding), FieldError> {
    check_modulus(p)?;
    let n_letters = sys.letters.len();
    if (p as usize) < n_letters {
        return Err(FieldError::ModulusTooSmall { modulus: p, needed: n_letters });
    }
    let mut to_field = vec![0u64; n_letters];
    let mut next = 2u64;
    for l in &sys.letters {
        let v = if l.id == sys.zero {
            0
        } else if l.id == sys.one {
            1
        } else {
            let v = next;
            next += 1;
            v
        };
        to_field[l.id.0 as usize] = v;
    }
    let from_field = to_field
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, LetterId(i as u32)))
        .collect();
    let mut grid = vec![vec![0u64; p as usize]; p as usize];
    for a in &sys.letters {
        for b in &sys.letters {
            if let Some(out) = sys.table.get(a.id, b.id) {
                grid[to_field[a.id.0 as usize] as usize][to_field[b.id.0 as usize] as usize] =
                    to_field[out.0 as usize];
            }
        }
    }
    let poly = interpolate2(&grid, p)?;
    let emb = Embedding { to_field, from_field };
    Ok((poly, emb))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedError {
    /// First cell where polynomial and table developments differ.
    DivergenceAt { i: usize, j: usize },
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::DivergenceAt { i, j } => {
                write!(f, "developments diverge at cell ({}, {})", i, j)
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EmbedReport {
    pub diagonals_checked: usize,
    pub cells_compared: usize,
}

/// Develops the system twice, by table lookup and by polynomial
/// evaluation under the embedding, and demands cell-for-cell equality
/// through diagonal n.
pub fn verify_embedding(
    sys: &DynamicalSystem,
    poly: &Poly2,
    emb: &Embedding,
    n: usize,
) -> Result<EmbedReport, EmbedError> {
    let mut cells_compared = 0;
    let mut prev: Vec<LetterId> = Vec::new();
    for diag in Development::new(sys).take(n + 1) {
        let dn = diag.n;
        let mut mine: Vec<LetterId> = Vec::with_capacity(dn + 1);
        for k in 0..=dn {
            if k == 0 || k == dn {
                mine.push(sys.one);
                continue;
            }
            let north = emb.embed(prev[k]);
            let west = emb.embed(prev[k - 1]);
            let v = poly.eval(north, west);
            match emb.lift(v) {
                Some(id) => mine.push(id),
                None => return Err(EmbedError::DivergenceAt { i: dn - k, j: k }),
            }
        }
        for (k, (&a, &b)) in mine.iter().zip(diag.cells.iter()).enumerate() {
            if a != b {
                return Err(EmbedError::DivergenceAt { i: dn - k, j: k });
            }
        }
        cells_compared += dn + 1;
        prev = diag.cells;
    }
    Ok(EmbedReport { diagonals_checked: n + 1, cells_compared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::{Letter, Role, RuleTable};
    use crate::samples::SplitMix64;

    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

    fn two_letter_system(out: impl Fn(LetterId, LetterId) -> LetterId) -> DynamicalSystem {
        let one = LetterId(0);
        let zero = LetterId(1);
        let letters = vec![
            Letter { id: one, name: "1".into(), role: Role::One },
            Letter { id: zero, name: "0".into(), role: Role::Zero },
        ];
        let mut table = RuleTable::new(2, None);
        for a in [one, zero] {
            for b in [one, zero] {
                table.set(a, b, out(a, b)).unwrap();
            }
        }
        DynamicalSystem { letters, table, zero, one, bottom: None, symmetric: true }
    }

    fn xor_system() -> DynamicalSystem {
        two_letter_system(|a, b| if a == b { LetterId(1) } else { LetterId(0) })
    }

    #[test]
    fn basis_frozen_values() {
        assert_eq!(lagrange_basis(1, 2).unwrap(), vec![0, 1]);
        assert_eq!(lagrange_basis(0, 3).unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn basis_delta_property() {
        for &p in &PRIMES {
            for a in 0..p {
                let d = lagrange_basis(a, p).unwrap();
                for b in 0..p {
                    let fp = Fp { p };
                    let mut v = 0;
                    for &c in d.iter().rev() {
                        v = fp.add(fp.mul(v, b), c);
                    }
                    assert_eq!(v, (a == b) as u64, "p={} a={} b={}", p, a, b);
                }
            }
        }
    }

    #[test]
    fn bad_moduli_are_rejected() {
        for p in [0u64, 1, 4, 6, 9] {
            assert_eq!(lagrange_basis(0, p), Err(FieldError::NonPrimeModulus(p)));
        }
        assert_eq!(lagrange_basis(0, 263), Err(FieldError::ModulusTooLarge(263)));
    }

    #[test]
    fn and_table_interpolates_to_xy() {
        let values = vec![vec![0, 0], vec![0, 1]];
        let poly = interpolate2(&values, 2).unwrap();
        assert_eq!(poly.coeffs, vec![vec![0, 0], vec![0, 1]]);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(poly.eval(x, y), x & y);
            }
        }
    }

    #[test]
    fn constant_grid_interpolates_to_constant() {
        let values = vec![vec![3u64; 5]; 5];
        let poly = interpolate2(&values, 5).unwrap();
        assert_eq!(poly.coeffs[0][0], 3);
        assert_eq!(poly.nonzero_coeffs(), vec![(0, 0, 3)]);
    }

    #[test]
    fn symmetric_grid_gives_symmetric_coeffs() {
        let mut rng = SplitMix64::new(7);
        let p = 7u64;
        let mut values = vec![vec![0u64; 7]; 7];
        for a in 0..7 {
            for b in a..7 {
                let v = rng.below(p);
                values[a][b] = v;
                values[b][a] = v;
            }
        }
        let poly = interpolate2(&values, p).unwrap();
        assert!(poly.is_symmetric());
    }

    #[test]
    fn interpolation_is_exact_on_random_grids() {
        for &p in &PRIMES {
            let mut rng = SplitMix64::new(100 + p);
            let n = p as usize;
            let values: Vec<Vec<u64>> =
                (0..n).map(|_| (0..n).map(|_| rng.below(p)).collect()).collect();
            let poly = interpolate2(&values, p).unwrap();
            let (dx, dy) = poly.degrees();
            assert!(dx < n && dy < n);
            for x in 0..p {
                for y in 0..p {
                    assert_eq!(poly.eval(x, y), values[x as usize][y as usize], "p={}", p);
                }
            }
        }
    }

    #[test]
    fn zero_system_embeds_to_zero_polynomial() {
        let sys = two_letter_system(|_, _| LetterId(1));
        let (poly, emb) = embed_system(&sys, 2).unwrap();
        assert!(poly.is_zero());
        assert_eq!(emb.embed(sys.zero), 0);
        assert_eq!(emb.embed(sys.one), 1);
    }

    #[test]
    fn xor_embeds_to_x_plus_y() {
        let (poly, _) = embed_system(&xor_system(), 2).unwrap();
        assert_eq!(poly.coeffs, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn modulus_below_alphabet_is_rejected() {
        let m = crate::samples::m_dirty();
        let (sys, _) = crate::suw::compile_suw(&m, &[]).unwrap();
        let p = 13;
        assert!(matches!(
            embed_system(&sys, p),
            Err(FieldError::ModulusTooSmall { modulus: 13, .. })
        ));
    }

    #[test]
    fn symmetric_subtable_gives_symmetric_polynomial() {
        // First letters of a compiled mirrored system, rule targets
        // outside the cut mapped to zero; symmetry survives the cut.
        let m = crate::samples::m_dirty();
        let (sys, _) = crate::suw::compile_suw(&m, &[]).unwrap();
        let p = 7u64;
        let k = p as usize;
        let mut values = vec![vec![0u64; k]; k];
        for a in 0..k {
            for b in 0..k {
                let out = sys.table.get(LetterId(a as u32), LetterId(b as u32)).unwrap();
                values[a][b] = if (out.0 as usize) < k { out.0 as u64 } else { 0 };
            }
        }
        for a in 0..k {
            for b in 0..k {
                assert_eq!(values[a][b], values[b][a], "table cut not symmetric");
            }
        }
        let poly = interpolate2(&values, p).unwrap();
        assert!(poly.is_symmetric());
    }

    #[test]
    fn dual_development_agrees_on_xor() {
        let sys = xor_system();
        let (poly, emb) = embed_system(&sys, 2).unwrap();
        let report = verify_embedding(&sys, &poly, &emb, 64).unwrap();
        assert_eq!(report.diagonals_checked, 65);
        assert_eq!(report.cells_compared, 65 * 66 / 2);
    }

    #[test]
    fn dual_development_agrees_on_random_tables() {
        for seed in [5u64, 6] {
            let mut rng = SplitMix64::new(seed);
            let k = 7u32;
            let one = LetterId(0);
            let zero = LetterId(1);
            let mut letters = vec![
                Letter { id: one, name: "1".into(), role: Role::One },
                Letter { id: zero, name: "0".into(), role: Role::Zero },
            ];
            for i in 2..k {
                letters.push(Letter {
                    id: LetterId(i),
                    name: alloc::format!("c{}", i),
                    role: Role::Type0,
                });
            }
            let mut table = RuleTable::new(k, None);
            for a in 0..k {
                for b in 0..k {
                    table.set(LetterId(a), LetterId(b), LetterId(rng.below(k as u64) as u32)).unwrap();
                }
            }
            let sys = DynamicalSystem {
                letters,
                table,
                zero,
                one,
                bottom: None,
                symmetric: false,
            };
            let (poly, emb) = embed_system(&sys, 7).unwrap();
            verify_embedding(&sys, &poly, &emb, 50).unwrap();
        }
    }

    #[test]
    fn corrupted_coefficient_is_caught() {
        let sys = xor_system();
        let (mut poly, emb) = embed_system(&sys, 2).unwrap();
        poly.coeffs[0][0] = 1;
        // The constant shift already falsifies the first interior cell.
        let err = verify_embedding(&sys, &poly, &emb, 16).unwrap_err();
        assert_eq!(err, EmbedError::DivergenceAt { i: 1, j: 1 });
    }
}
