//! Command-line front end: compile Turing machine instances into carpet
//! systems, develop and render them, certify zeroness, check the word
//! code, and realize tables as polynomials.

mod formats;
mod render;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use carpet_core::dynsys::{develop, scan_ultimately_zero, ZeroVerdict};
use carpet_core::fieldpoly::{embed_system, verify_embedding};
use carpet_core::suw::{compile_suw, verify_suw};
use carpet_core::symcode::check_symcod;
use carpet_core::turing::run_classify;
use carpet_core::uw::{compile_uw, verify_uw};

#[derive(Parser)]
#[command(name = "carpet", version, about = "Quarter-plane carpet toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile a machine and input word into a simulating system.
    CompileUw {
        machine: PathBuf,
        /// Input word as space-separated symbol names; empty for the
        /// empty word.
        #[arg(default_value = "")]
        word: String,
        /// System file to write; a meta sidecar lands next to it.
        #[arg(short, long)]
        out: PathBuf,
        /// Sidecar path; defaults to <out>.meta.
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Compile into the mirrored symmetric system.
    CompileSuw {
        machine: PathBuf,
        #[arg(default_value = "")]
        word: String,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
    },
    /// Develop a system file for n diagonals.
    Develop {
        system: PathBuf,
        #[arg(short = 'n', long)]
        diagonals: usize,
        /// Print the diagonals as text.
        #[arg(long)]
        dump: bool,
        /// Render the carpet as a binary PPM image.
        #[arg(long)]
        ppm: Option<PathBuf>,
    },
    /// Run a machine and report the halting classification.
    RunTm {
        machine: PathBuf,
        #[arg(default_value = "")]
        word: String,
        #[arg(long, default_value_t = 10_000)]
        max_steps: u64,
    },
    /// Compile, develop, and check the simulation cell-for-cell.
    VerifyUw {
        machine: PathBuf,
        #[arg(default_value = "")]
        word: String,
        /// Machine steps to check.
        #[arg(short = 't', long)]
        steps: u64,
        /// Diagonals to develop.
        #[arg(short = 'n', long)]
        diagonals: usize,
    },
    /// Same for the mirrored system, including the symmetry check.
    VerifySuw {
        machine: PathBuf,
        #[arg(default_value = "")]
        word: String,
        #[arg(short = 't', long)]
        steps: u64,
        #[arg(short = 'n', long)]
        diagonals: usize,
    },
    /// Scan a development window for the zero certificate.
    CertifyZero {
        system: PathBuf,
        #[arg(short = 'n', long)]
        diagonals: usize,
    },
    /// Interpolate the rule table as a bivariate polynomial mod p.
    Interpolate {
        system: PathBuf,
        #[arg(short = 'p', long)]
        modulus: u64,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Check a stored polynomial drives the same development.
    VerifyPoly {
        system: PathBuf,
        poly: PathBuf,
        #[arg(short = 'n', long)]
        diagonals: usize,
    },
    /// Brute-force the window code injectivity for a machine's alphabet.
    SymcodeCheck { machine: PathBuf },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, data: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn sidecar(out: &Path, meta: Option<PathBuf>) -> PathBuf {
    meta.unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".meta");
        PathBuf::from(p)
    })
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::CompileUw { machine, word, out, meta } => {
            let m = formats::parse_machine(&read(&machine)?)?;
            let w = formats::parse_word(&m, &word)?;
            let (sys, um) = compile_uw(&m, &w).map_err(|e| anyhow!("{}", e))?;
            write(&out, formats::system_to_string(&sys)?)?;
            let pairs = [
                ("dW", um.d_w.to_string()),
                ("cell0Index", um.cell0_index.to_string()),
                ("letters", sys.letters.len().to_string()),
            ];
            write(&sidecar(&out, meta), formats::meta_to_string(&pairs))?;
            println!(
                "compiled: {} letters, seeded diagonal {}, cell 0 at index {}",
                sys.letters.len(),
                um.d_w,
                um.cell0_index
            );
        }
        Cmd::CompileSuw { machine, word, out, meta } => {
            let m = formats::parse_machine(&read(&machine)?)?;
            let w = formats::parse_word(&m, &word)?;
            let (sys, sm) = compile_suw(&m, &w).map_err(|e| anyhow!("{}", e))?;
            write(&out, formats::system_to_string(&sys)?)?;
            let pairs = [
                ("dW", sm.d_w.to_string()),
                ("centerIndex", sm.center_index.to_string()),
                ("letters", sys.letters.len().to_string()),
            ];
            write(&sidecar(&out, meta), formats::meta_to_string(&pairs))?;
            println!(
                "compiled: {} letters, seeded diagonal {}, center at index {}",
                sys.letters.len(),
                sm.d_w,
                sm.center_index
            );
        }
        Cmd::Develop { system, diagonals, dump, ppm } => {
            let sys = formats::parse_system(&read(&system)?)?;
            let diags = develop(&sys, diagonals);
            if dump {
                print!("{}", formats::dump_diagonals(&diags));
            }
            if let Some(path) = &ppm {
                let pal = render::palette(&sys);
                let zero_color = pal[sys.zero.0 as usize];
                write(path, render::render_ppm(&diags, &pal, zero_color))?;
            }
            let last = diags.last().unwrap();
            let nonzero = last.cells.iter().filter(|&&c| c != sys.zero).count();
            println!(
                "developed {} diagonals; last has {} cells, {} nonzero",
                diags.len(),
                last.cells.len(),
                nonzero
            );
        }
        Cmd::RunTm { machine, word, max_steps } => {
            let m = formats::parse_machine(&read(&machine)?)?;
            let w = formats::parse_word(&m, &word)?;
            let r = run_classify(&m, &w, max_steps).map_err(|e| anyhow!("{}", e))?;
            println!("halted: {}", r.halted);
            println!("steps: {}", r.steps);
            println!("timed_out: {}", r.timed_out);
            println!("tape_clean_at_halt: {}", r.tape_clean_at_halt);
            println!("visited_negative: {}", r.visited_negative);
            match r.first_negative_move_step {
                Some(t) => println!("first_negative_move_step: {}", t),
                None => println!("first_negative_move_step: -"),
            }
            match r.tape_clean_at_first_negative_move {
                Some(b) => println!("tape_clean_at_first_negative_move: {}", b),
                None => println!("tape_clean_at_first_negative_move: -"),
            }
            println!("uw_accept: {}", r.uw_accept());
            println!("suw_accept: {}", r.suw_accept());
        }
        Cmd::VerifyUw { machine, word, steps, diagonals } => {
            let m = formats::parse_machine(&read(&machine)?)?;
            let w = formats::parse_word(&m, &word)?;
            let (sys, um) = compile_uw(&m, &w).map_err(|e| anyhow!("{}", e))?;
            let rep = verify_uw(&sys, &um, &m, &w, steps, diagonals)
                .map_err(|e| anyhow!("verification failed: {}", e))?;
            println!(
                "checked {} steps over {} diagonals: all configurations match",
                rep.steps_checked, diagonals
            );
            println!("bottom_free: {}", rep.bottom_free);
            println!("scan verdict: {:?}", rep.scan.verdict);
            println!("verdict agreement: {:?}", rep.verdict_agreement);
        }
        Cmd::VerifySuw { machine, word, steps, diagonals } => {
            let m = formats::parse_machine(&read(&machine)?)?;
            let w = formats::parse_word(&m, &word)?;
            let (sys, sm) = compile_suw(&m, &w).map_err(|e| anyhow!("{}", e))?;
            let rep = verify_suw(&sys, &sm, &m, &w, steps, diagonals)
                .map_err(|e| anyhow!("verification failed: {}", e))?;
            println!(
                "checked {} steps over {} diagonals: all configurations match, all diagonals palindromic",
                rep.steps_checked, diagonals
            );
            println!("bottom_free: {}", rep.bottom_free);
            match rep.min_margin {
                Some(mm) => println!("min margin: {}", mm),
                None => println!("min margin: - (no content diagonals)"),
            }
            println!("scan verdict: {:?}", rep.scan.verdict);
            println!("verdict agreement: {:?}", rep.verdict_agreement);
        }
        Cmd::CertifyZero { system, diagonals } => {
            let sys = formats::parse_system(&read(&system)?)?;
            let scan = scan_ultimately_zero(&sys, diagonals);
            match scan.verdict {
                Some(ZeroVerdict::ZeroCertifiedFrom(n)) => {
                    println!("ZeroCertifiedFrom {}", n);
                    println!("closure_holds: {}", scan.closure_holds);
                }
                Some(ZeroVerdict::NotZeroWithin(n)) => println!("NotZeroWithin {}", n),
                Some(ZeroVerdict::InteriorZeroButUncertified(n)) => {
                    println!("InteriorZeroButUncertified {}", n);
                    println!("closure_holds: {}", scan.closure_holds);
                }
                None => println!("no verdict within {} diagonals", diagonals),
            }
            for island in &scan.islands {
                println!("zero island starts at diagonal {}", island);
            }
        }
        Cmd::Interpolate { system, modulus, out } => {
            let sys = formats::parse_system(&read(&system)?)?;
            let (poly, _) = embed_system(&sys, modulus).map_err(|e| anyhow!("{}", e))?;
            write(&out, formats::poly_to_string(&poly))?;
            let (dx, dy) = poly.degrees();
            println!(
                "interpolated mod {}: degrees ({}, {}), {} nonzero coefficients, symmetric: {}",
                modulus,
                dx,
                dy,
                poly.nonzero_coeffs().len(),
                poly.is_symmetric()
            );
        }
        Cmd::VerifyPoly { system, poly, diagonals } => {
            let sys = formats::parse_system(&read(&system)?)?;
            let stored = formats::parse_poly(&read(&poly)?)?;
            let (_, emb) = embed_system(&sys, stored.p).map_err(|e| anyhow!("{}", e))?;
            let rep = verify_embedding(&sys, &stored, &emb, diagonals)
                .map_err(|e| anyhow!("{}", e))?;
            println!(
                "polynomial and table developments agree on {} diagonals ({} cells)",
                rep.diagonals_checked, rep.cells_compared
            );
        }
        Cmd::SymcodeCheck { machine } => {
            let m = formats::parse_machine(&read(&machine)?)?;
            let rep = check_symcod(m.symbol_count(), m.state_count())
                .map_err(|e| anyhow!("collision check failed: {}", e))?;
            println!("E windows: {}", rep.e_count);
            println!("S windows: {}", rep.s_count);
            println!("distinct windows: {}", rep.union_count);
            println!("code classes: {}", rep.class_count);
            println!("largest class: {}", rep.max_class_size);
            println!("palindromic classes: {}", rep.palindrome_classes);
            println!("interned terms: {}", rep.interned_terms);
            println!("no collisions: every class is a word with its mirror");
        }
    }
    Ok(())
}
