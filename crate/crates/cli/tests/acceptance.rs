//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use onecall::generate::{generate, random_basis};
use onecall_core::reduction::compute_params;
use onecall_core::verifier::{brute_cvp_within, brute_svp_within, cvp_coefficient_box, svp_coefficient_box};
use onecall_core::{
    balanced_decode, balanced_encode, check_det_bound, check_inclusion, compute_cvp_params,
    construct_b_epsilon, gen_exponents, mat_vec, norm_sq, search_cvp_via_opt, search_svp_via_opt,
    svp_opt_assisted, svp_opt_enum, BigMat, BigVec, Counted, CvpOracle, EnumOracle, Error,
    ReductionParams, SvpOracle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Returns the enumeration oracle's value plus one.
struct OffByOne;

impl SvpOracle for OffByOne {
    fn min_sq(&self, basis: &BigMat) -> onecall_core::Result<BigInt> {
        Ok(EnumOracle.min_sq(basis)? + 1)
    }
}

impl CvpOracle for OffByOne {
    fn min_dist_sq(&self, basis: &BigMat, target: &BigVec) -> onecall_core::Result<BigInt> {
        Ok(EnumOracle.min_dist_sq(basis, target)? + 1)
    }
}

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, id: &str, name: &str, started: Instant, outcome: Result<String, String>) {
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                self.failures += 1;
                println!("[FAIL] {id} {name}: {detail} ({secs:.1}s)");
            }
        }
    }
}

fn svp_instances() -> Vec<BigMat> {
    (0..210u64)
        .map(|seed| {
            let n = 1 + (seed % 3) as usize;
            generate(n, 3, seed, None).unwrap().basis_matrix().unwrap()
        })
        .collect()
}

/// Every nonsingular 2×2 matrix with entries in [−2, 2].
fn small_bases() -> Vec<BigMat> {
    let mut out = Vec::new();
    for code in 0..625u32 {
        let mut c = code;
        let mut e = [0i64; 4];
        for v in &mut e {
            *v = (c % 5) as i64 - 2;
            c /= 5;
        }
        if e[0] * e[3] - e[1] * e[2] != 0 {
            out.push(BigMat::from_i64_rows(&[[e[0], e[1]], [e[2], e[3]]]));
        }
    }
    out
}

struct CvpCase {
    b: BigMat,
    t: BigVec,
    lattice: bool,
}

fn cvp_instances() -> Vec<CvpCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut cases: Vec<CvpCase> = (0..120u64)
        .map(|seed| {
            let n = 1 + (seed % 2) as usize;
            let inst = generate(n, 2, 1000 + seed, Some(4)).unwrap();
            CvpCase {
                b: inst.basis_matrix().unwrap(),
                t: inst.target_vector().unwrap().unwrap(),
                lattice: false,
            }
        })
        .collect();
    // lattice targets: the origin, and Bx₀ for small nonzero x₀ while
    // keeping |t_i| ≤ 4
    while cases.iter().filter(|c| c.lattice).count() < 30 {
        let n = rng.random_range(1..=2);
        let b = random_basis(&mut rng, n, 2);
        let zero = cases.iter().filter(|c| c.lattice && c.t.is_zero()).count() < 10;
        let x0 = if zero {
            BigVec::zeros(n)
        } else {
            BigVec((0..n).map(|_| BigInt::from(rng.random_range(-1..=1))).collect())
        };
        let t = mat_vec(&b, &x0).unwrap();
        if (!zero && t.is_zero()) || t.max_abs() > BigInt::from(4) {
            continue;
        }
        cases.push(CvpCase { b, t, lattice: true });
    }
    cases
}

fn c1_soundness(bases: &[BigMat]) -> Result<String, String> {
    for (k, b) in bases.iter().enumerate() {
        let oracle = Counted::new(EnumOracle);
        let sol = search_svp_via_opt(b, &oracle).map_err(|e| format!("instance {k}: {e}"))?;
        let truth = svp_coefficient_box(b)
            .and_then(|bounds| brute_svp_within(b, &bounds))
            .map_err(|e| format!("instance {k}: brute force: {e}"))?;
        let v = mat_vec(b, &sol.x).unwrap();
        if sol.x.is_zero()
            || v != sol.v
            || norm_sq(&v) != truth.min_sq
            || !truth.solutions.contains(&sol.x)
            || sol.oracle_calls != 1
            || oracle.calls() != 1
        {
            return Err(format!("instance {k}: wrong answer {:?}", sol.x));
        }
    }
    Ok(format!("{} instances, n in {{1,2,3}}, one oracle call each", bases.len()))
}

fn c2_digits() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..1000 {
        let p = 2 * rng.random_range(2i64..=499_999) + 1;
        let len = rng.random_range(1..=50);
        let half = p / 2;
        let digits: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.random_range(-half..=half))).collect();
        let p = BigInt::from(p);
        let value = balanced_encode(&digits, &p);
        let back = balanced_decode(&value, &p, len).map_err(|e| format!("case {k}: {e}"))?;
        if back != digits {
            return Err(format!("case {k}: p = {p}, round trip changed the digits"));
        }
    }
    Ok("1000 random digit vectors".into())
}

fn c3_exponents() -> Result<String, String> {
    for count in 1..=50usize {
        let a = gen_exponents(count);
        let top = ((count * count + count - 1) as u64).pow(2);
        if a.len() != count || a.iter().any(|&x| x > top) || a[count - 1] != top {
            return Err(format!("count {count}: exponent bound"));
        }
        let mut sums: Vec<u64> = (0..count).flat_map(|i| (i..count).map(move |j| (i, j))).map(|(i, j)| a[i] + a[j]).collect();
        let total = sums.len();
        sums.sort_unstable();
        sums.dedup();
        if sums.len() != total {
            return Err(format!("count {count}: repeated pair sum"));
        }
    }
    Ok("count 1..=50".into())
}

fn c4_det_bound(bases: &[BigMat], cvp: &[CvpCase]) -> Result<String, String> {
    let mut params: Vec<(&BigMat, ReductionParams)> = bases.iter().map(|b| (b, compute_params(b).unwrap())).collect();
    params.extend(cvp.iter().map(|c| (&c.b, compute_cvp_params(&c.b, &c.t).unwrap().base)));
    for (k, (b, p)) in params.iter().enumerate() {
        let b_eps = construct_b_epsilon(b, p).unwrap();
        if !check_det_bound(&b_eps, p) {
            return Err(format!("instance {k} violates 2|det| >= eps^n"));
        }
    }
    Ok(format!("{} SVP and CVP instances", params.len()))
}

fn c5_inclusion(small: &[BigMat]) -> Result<String, String> {
    for b in small {
        let params = compute_params(b).unwrap();
        match check_inclusion(b, &params, &params.m1) {
            Ok(true) => {}
            Ok(false) => return Err(format!("inclusion fails for {b}")),
            Err(e) => return Err(format!("{b}: {e}")),
        }
    }
    Ok(format!("all {} nonsingular 2x2 bases with entries in [-2,2], box |x_i| <= M1", small.len()))
}

fn c6_cross_validation(small: &[BigMat]) -> Result<String, String> {
    for b in small {
        let params = compute_params(b).unwrap();
        let b_eps = construct_b_epsilon(b, &params).unwrap();
        let assisted = svp_opt_assisted(&b_eps, b).map_err(|e| e.to_string())?;
        let enumerated = svp_opt_enum(&b_eps).map_err(|e| e.to_string())?;
        if assisted.min_sq != enumerated.min_sq {
            return Err(format!("oracles disagree on {b}"));
        }
    }
    Ok(format!("{} bases", small.len()))
}

fn c7_bounds(bases: &[BigMat], small: &[BigMat]) -> Result<String, String> {
    let mut minimizers = 0usize;
    for b in bases.iter().chain(small) {
        let params = compute_params(b).unwrap();
        let bounds = svp_coefficient_box(b).map_err(|e| e.to_string())?;
        if bounds.iter().any(|h| h > &params.m1) {
            return Err(format!("certified box exceeds M1 for {b}"));
        }
        let truth = brute_svp_within(b, &bounds).map_err(|e| e.to_string())?;
        let m2_sq = &params.m2 * &params.m2;
        for x in &truth.solutions {
            minimizers += 1;
            if x.max_abs() > params.m1 || norm_sq(&mat_vec(b, x).unwrap()) > m2_sq {
                return Err(format!("minimizer {x} of {b} is out of bounds"));
            }
        }
    }
    Ok(format!("{minimizers} minimizers over {} instances", bases.len() + small.len()))
}

fn c8_cvp(cases: &[CvpCase]) -> Result<String, String> {
    let (mut origin, mut lattice) = (0, 0);
    for (k, c) in cases.iter().enumerate() {
        let oracle = Counted::new(EnumOracle);
        let sol = search_cvp_via_opt(&c.b, &c.t, &oracle).map_err(|e| format!("case {k}: {e}"))?;
        let truth = cvp_coefficient_box(&c.b, &c.t)
            .and_then(|bounds| brute_cvp_within(&c.b, &c.t, &bounds))
            .map_err(|e| format!("case {k}: brute force: {e}"))?;
        let dist = norm_sq(&sol.w.sub(&c.t).unwrap());
        if dist != truth.min_sq || sol.dist_sq != dist || sol.oracle_calls != 1 || oracle.calls() != 1 {
            return Err(format!("case {k}: distance {dist}, brute force {}", truth.min_sq));
        }
        if c.lattice {
            if !dist.is_zero() || sol.w != c.t {
                return Err(format!("case {k}: lattice target not hit"));
            }
            if c.t.is_zero() {
                if !sol.x.is_zero() {
                    return Err(format!("case {k}: t = 0 decoded to {}", sol.x));
                }
                origin += 1;
            } else {
                lattice += 1;
            }
        }
    }
    if origin < 10 {
        return Err(format!("only {origin} zero-target cases"));
    }
    Ok(format!(
        "{} instances; {lattice} nonzero lattice targets at distance 0, {origin} zero targets decoded to x = 0",
        cases.len()
    ))
}

fn c9_corrupted(bases: &[BigMat], cases: &[CvpCase]) -> Result<String, String> {
    let mut count = 0;
    for (k, b) in bases.iter().enumerate().take(60) {
        match search_svp_via_opt(b, &Counted::new(OffByOne)) {
            Err(Error::Inconsistent(_)) => count += 1,
            Err(e) => return Err(format!("svp instance {k}: unexpected error {e}")),
            Ok(sol) => return Err(format!("svp instance {k}: returned {}", sol.x)),
        }
    }
    for (k, c) in cases.iter().enumerate().take(60) {
        match search_cvp_via_opt(&c.b, &c.t, &Counted::new(OffByOne)) {
            Err(Error::Inconsistent(_)) => count += 1,
            Err(e) => return Err(format!("cvp case {k}: unexpected error {e}")),
            Ok(sol) => return Err(format!("cvp case {k}: returned {}", sol.x)),
        }
    }
    Ok(format!("{count} corrupted runs, all rejected as inconsistent"))
}

fn run_solver(args: &[&str], out: &std::path::Path) -> Result<(Vec<u8>, Vec<u8>), String> {
    let output = Command::new(env!("CARGO_BIN_EXE_onecall"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    if !output.status.success() {
        return Err(format!("{args:?} exited with {}", output.status));
    }
    let file = std::fs::read(out).map_err(|e| e.to_string())?;
    Ok((file, output.stdout))
}

fn c10_determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for seed in ["1", "7", "42"] {
        for (cmd, n, m) in [("solve-svp", "3", "3"), ("solve-cvp", "2", "2")] {
            for oracle in ["enum", "assisted"] {
                let args = [cmd, "--n", n, "--max-entry", m, "--seed", seed, "--oracle", oracle];
                let first = run_solver(&args, &dir.path().join("a.json"))?;
                let second = run_solver(&args, &dir.path().join("b.json"))?;
                if first != second {
                    return Err(format!("{args:?} produced different records"));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} command lines run twice, records byte-identical"))
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };

    let started = Instant::now();
    let bases = svp_instances();
    report.record("C1", "one-call SVP soundness", started, c1_soundness(&bases));

    let started = Instant::now();
    report.record("C2", "balanced digit round trip", started, c2_digits());

    let started = Instant::now();
    report.record("C3", "exponent family", started, c3_exponents());

    let cvp = cvp_instances();
    let started = Instant::now();
    report.record("C4", "determinant bound", started, c4_det_bound(&bases, &cvp));

    let small = small_bases();
    let started = Instant::now();
    report.record("C5", "inclusion of perturbed solutions", started, c5_inclusion(&small));

    let started = Instant::now();
    report.record("C6", "assisted vs enumeration oracle", started, c6_cross_validation(&small));

    let started = Instant::now();
    report.record("C7", "coefficient and norm bounds", started, c7_bounds(&bases, &small));

    let started = Instant::now();
    report.record("C8", "one-call CVP soundness", started, c8_cvp(&cvp));

    let started = Instant::now();
    report.record("C9", "corrupted oracle rejected", started, c9_corrupted(&bases, &cvp));

    let started = Instant::now();
    report.record("C10", "byte-identical records", started, c10_determinism());

    if report.failures == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 10 criteria failed", report.failures);
        ExitCode::FAILURE
    }
}
