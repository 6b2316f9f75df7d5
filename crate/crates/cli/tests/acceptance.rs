//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Criteria 1 to 10 are the property suites also reachable through
//! `edr --selftest`; criterion 11 drives the binary against golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use edr_cli::input::{parse_raw, print_matrix};
use edr_cli::selftest::{run_criterion, Scale, CRITERIA, DEFAULT_SEED};
use edr_cli::with_ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(golden name, arguments, exit code)`, run from the fixtures directory.
const GOLDEN: &[(&str, &str, i32)] = &[
    ("smith_diag23", "smith diag23.mat", 0),
    ("smith_rect", "smith rect.mat", 0),
    ("smith_json", "smith --json diag23.mat", 0),
    ("smith_qpoly", "smith qpoly.mat", 0),
    ("smith_fp5", "smith fp5.mat", 0),
    ("smith_kaplansky", "smith --strategy kaplansky rect.mat", 0),
    ("verify_rect", "verify rect.mat rect_smith.json", 0),
    ("verify_mismatch", "verify diag23.mat rect_smith.json", 1),
    ("rank_rect", "rank rect.mat", 0),
    ("rank_each", "rank --each diag23.mat rect.mat qpoly.mat", 0),
    ("kernel_solve_m", "kernel solve_m.mat", 0),
    ("cokernel_rect", "cokernel rect.mat", 0),
    ("solve", "solve solve_m.mat solve_b.mat", 0),
    ("solve_none", "solve solve_m.mat solve_none.mat", 1),
    ("iso_yes", "iso diag23.mat z6.mat", 0),
    ("iso_no", "iso z4.mat z2z2.mat", 1),
    ("iso_json", "iso --json z4.mat z2z2.mat", 1),
    ("homology_point", "homology point.json", 0),
    ("homology_circle", "homology circle.json", 0),
    ("homology_sphere", "homology sphere.json", 0),
    ("homology_torus", "homology torus.json", 0),
    ("homology_klein", "homology klein.json", 0),
    ("homology_rp2", "homology rp2.json", 0),
    ("homology_rp2_h1", "homology --degree 1 rp2.json", 0),
    ("homology_json", "homology --json klein.json", 0),
];

/// Invocations whose only contract is the exit code.
const EXIT_CODES: &[(&str, i32)] = &[
    ("rank z6.mat", 0),
    ("iso z6.mat z6.mat", 0),
    ("iso z4.mat z6.mat", 1),
    ("solve solve_m.mat solve_none.mat", 1),
    ("verify diag23.mat rect_smith.json", 1),
    ("smith bad_entry.mat", 2),
    ("smith does_not_exist.mat", 2),
    ("smith", 2),
    ("iso z6.mat", 2),
    ("solve z6.mat qpoly.mat", 2),
    ("smith --strategy nonsense z6.mat", 2),
    ("frobnicate z6.mat", 2),
    ("homology z6.mat", 2),
    ("rank --each z6.mat bad_entry.mat", 2),
    ("iso --each z6.mat z4.mat", 2),
];

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn edr(args: &str) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_edr"))
        .args(args.split_whitespace())
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8"),
        out.status.code().unwrap_or(-1),
    )
}

fn golden_files() -> Result<String, String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args, code) in GOLDEN {
        let want = std::fs::read_to_string(dir.join(format!("{name}.txt")))
            .map_err(|e| format!("{name}: {e}"))?;
        let (got, got_code) = edr(args);
        if got != want || got_code != *code {
            return Err(format!(
                "`edr {args}`: exit {got_code} (want {code}), output\n{got}"
            ));
        }
    }
    for (args, code) in EXIT_CODES {
        let (_, got) = edr(args);
        if got != *code {
            return Err(format!("`edr {args}` exited {got}, want {code}"));
        }
    }
    Ok(format!(
        "{} golden outputs, {} exit codes",
        GOLDEN.len(),
        EXIT_CODES.len()
    ))
}

fn random_file(g: &mut ChaCha8Rng) -> String {
    let ring = ["int", "qpoly", "fppoly:2", "fppoly:5", "fppoly:101"][g.gen_range(0..5)];
    let (m, n) = (g.gen_range(0..=5), g.gen_range(0..=5));
    let mut text = format!("# generated\nring {ring}\n{m} {n}\n");
    for _ in 0..m {
        let row: Vec<String> = (0..n)
            .map(|_| match ring {
                "int" => g.gen_range(-10_000i64..=10_000).to_string(),
                "qpoly" => {
                    let c: Vec<String> = (0..g.gen_range(0..4))
                        .map(|_| format!("{}/{}", g.gen_range(-9..=9), g.gen_range(1..=4)))
                        .collect();
                    format!("[{}]", c.join(","))
                }
                _ => {
                    let c: Vec<String> = (0..g.gen_range(0..4))
                        .map(|_| g.gen_range(0..200).to_string())
                        .collect();
                    format!("[{}]", c.join(","))
                }
            })
            .collect();
        text.push_str(&"  ".repeat(g.gen_range(0..2)));
        text.push_str(&row.join(&" ".repeat(g.gen_range(1..3))));
        text.push('\n');
    }
    text
}

fn round_trip(text: &str) -> Result<(), String> {
    let raw = parse_raw(text).map_err(|e| e.to_string())?;
    let ring = raw.ring.instantiate().map_err(|e| e.to_string())?;
    with_ring!(&ring, |r| {
        let m = raw.build(r).map_err(|e| e.to_string())?;
        let printed = print_matrix(r, &m);
        let again = parse_raw(&printed)
            .and_then(|x| x.build(r))
            .map_err(|e| e.to_string())?;
        if again != m || print_matrix(r, &again) != printed {
            return Err(format!("round trip changed\n{text}into\n{printed}"));
        }
        Ok(())
    })
}

fn generated_round_trips() -> Result<String, String> {
    let mut g = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..100 {
        round_trip(&random_file(&mut g))?;
    }
    Ok("100 generated files".to_string())
}

fn cli() -> Result<String, String> {
    let a = golden_files()?;
    let b = generated_round_trips()?;
    Ok(format!("{a}, {b} round-trip"))
}

fn main() -> ExitCode {
    let seed = std::env::var("EDR_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    println!("acceptance suite, seed {seed}");
    let mut failed = 0;
    for (id, ..) in CRITERIA {
        let r = run_criterion(id, seed, &Scale::full());
        println!("{}", r.line());
        failed += usize::from(!r.passed);
    }
    let start = Instant::now();
    let result = cli();
    let elapsed = start.elapsed();
    let (mark, detail) = match &result {
        Ok(d) => ("PASS", d.clone()),
        Err(e) => ("FAIL", e.clone()),
    };
    println!("{mark} criterion 11 CLI: {detail} ({elapsed:.2?})");
    failed += usize::from(result.is_err());
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
