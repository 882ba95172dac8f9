//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p perron-roots-core --test acceptance`.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    ev_positive_formula, load_factorization, load_matrix, random_primitive, real_primary_formula, SpectrumKinds,
};
use perron_roots::branches::{
    branch_derivative, branch_value, conjugate_branch_condition, negative_axis_branch_condition, BranchIndex,
};
use perron_roots::eigen::{pth_root_exists, real_pth_root_exists};
use perron_roots::enumroots::{
    all_primary_assignments, count_real_primary, enumerate_ev_positive_primary, enumerate_nonprimary_family,
    principal_real_root,
};
use perron_roots::matcore::mat_power;
use perron_roots::matfun::assemble_primary_root;
use perron_roots::perron::power_index;
use perron_roots::rjcf::{
    complex_pair_block, interleave_permutation, jordan_block, pairing_similarity, pairing_similarity_inverse,
    real_jordan_decompose,
};
use perron_roots::{BranchAssignment, Complex64, ComplexMatrix, PairIndex, RealMatrix, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

const X_J: [[f64; 5]; 5] = [
    [1.6668, 1.0232, 0.1130, 0.4738, -0.1145],
    [0.2762, 1.3749, 0.7313, 0.6646, 0.1153],
    [0.3939, -0.0612, 1.4926, 0.5548, 0.7823],
    [0.3217, 0.3217, 0.3217, 1.4204, 0.7768],
    [0.5037, 0.5037, 0.5037, 0.0486, 1.6024],
];

const X_J_PRIME: [[f64; 5]; 5] = [
    [-0.4019, 0.2417, 1.1519, 0.7911, 1.3794],
    [0.9887, -0.1100, 0.5336, 0.6003, 1.1496],
    [0.8710, 1.3261, -0.2276, 0.7101, 0.4826],
    [0.9432, 0.9432, 0.9432, -0.1555, 0.4881],
    [0.7612, 0.7612, 0.7612, 1.2163, -0.3375],
];

fn five_by_five() -> Outcome {
    let tol = Tolerance::default();
    let start = Instant::now();
    let a = load_matrix("example_5x5.txt");
    let d = load_factorization("example_5x5.factorization.txt")
        .into_decomposition(&a, &tol)
        .map_err(|e| e.to_string())?;
    let all = all_primary_assignments(&d, 2).map_err(|e| e.to_string())?;
    let cat = enumerate_ev_positive_primary(&d, 2, &tol).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(all.len() == 8 && cat.primary_total == 8, || {
        format!("{} primary square roots, expected 8", all.len())
    })?;
    ensure(cat.roots.len() == 2, || format!("{} eventually positive, expected 2", cat.roots.len()))?;
    let mut worst_entry = 0.0f64;
    let mut worst_residual = 0.0f64;
    for (root, printed) in cat.roots.iter().zip([X_J, X_J_PRIME]) {
        let x = root.x.as_real().ok_or("root is not real")?;
        let want = RealMatrix::from_rows(&printed.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
        worst_entry = worst_entry.max(x.max_abs_diff(&want));
        let x2 = mat_power(x, 2).map_err(|e| e.to_string())?;
        worst_residual = worst_residual.max((&x2 - &a).norm_inf());
    }
    ensure(worst_entry <= 5e-4, || format!("entrywise gap to known roots {worst_entry:.2e} > 5e-4"))?;
    ensure(worst_residual <= 1e-8, || format!("||X^2 - A|| = {worst_residual:.2e} > 1e-8"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "8 primary, 2 eventually positive; max gap {worst_entry:.1e}, residual {worst_residual:.1e}, {elapsed:?}"
    ))
}

fn nine_by_nine() -> Outcome {
    let tol = Tolerance::default();
    let start = Instant::now();
    let a = load_matrix("example_9x9.txt");
    let numeric = real_jordan_decompose(&a, &tol).map_err(|e| e.to_string())?;
    let want = [
        (false, Complex64::new(20.0, 0.0), 1),
        (true, Complex64::new(1.0, 1.0), 2),
        (true, Complex64::new(1.0, 1.0), 2),
    ];
    let got: Vec<_> = numeric.blocks().iter().map(|b| (b.is_pair(), b.eigenvalue(), b.k())).collect();
    let blocks_match = got.len() == want.len()
        && got
            .iter()
            .zip(&want)
            .all(|(g, w)| g.0 == w.0 && g.2 == w.2 && (g.1 - w.1).norm() < 1e-6);
    ensure(blocks_match, || format!("decomposition blocks {got:?}"))?;

    let d = load_factorization("example_9x9.factorization.txt")
        .into_decomposition(&a, &tol)
        .map_err(|e| e.to_string())?;
    let asg = BranchAssignment::new(&d, 2, vec![0], vec![PairIndex::new(0, 0), PairIndex::new(1, 1)])
        .map_err(|e| e.to_string())?;
    let reports = enumerate_nonprimary_family(&d, &asg, &[11, 22, 33, 44, 55], &tol).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    for r in &reports {
        let x = r.x.as_real().ok_or("sampled root is not real")?;
        worst = worst.max((&mat_power(x, 2).unwrap() - &a).norm_inf());
        ensure(r.is_eventually_positive, || "sampled root not eventually positive".into())?;
    }
    ensure(reports.len() == 5, || format!("{} roots sampled", reports.len()))?;
    ensure(worst <= 1e-8, || format!("||X^2 - A|| = {worst:.2e} > 1e-8"))?;
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "blocks [20]+C_2(1+i)x2; 5 sampled roots eventually positive, residual {worst:.1e}, {elapsed:?}"
    ))
}

fn count_oracle() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let start = Instant::now();
    let mut assemblies = 0usize;
    for case in 0..200 {
        let n = rng.random_range(2..=6);
        let p = if rng.random_bool(0.5) { 2 } else { 3 };
        let kinds = SpectrumKinds {
            negative: rng.random_bool(0.5),
            complex: rng.random_bool(0.7),
        };
        let g = random_primitive(&mut rng, n, kinds, false);
        let d = real_jordan_decompose(g.a(), &tol).map_err(|e| format!("case {case}: {e}"))?;
        let mut real = 0u128;
        let mut ev = 0u128;
        for asg in all_primary_assignments(&d, p).map_err(|e| e.to_string())? {
            let r = assemble_primary_root(&d, &asg, &tol).map_err(|e| format!("case {case}: {e}"))?;
            assemblies += 1;
            real += u128::from(r.is_real);
            ev += u128::from(r.is_real && r.is_eventually_positive);
        }
        let want_real = real_primary_formula(g.r1, g.r2, g.c, p);
        let want_ev = ev_positive_formula(g.r1, g.r2, g.c, p);
        ensure(real == want_real && ev == want_ev, || {
            format!(
                "case {case} (n={n}, p={p}, r1={}, r2={}, c={}): real {real} vs {want_real}, eventually positive {ev} vs {want_ev}",
                g.r1, g.r2, g.c
            )
        })?;
        let lib = count_real_primary(d.summary(), p).map_err(|e| e.to_string())?;
        ensure(lib == want_real, || format!("case {case}: library count {lib} vs {want_real}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("200 matrices, {assemblies} primary roots swept, {elapsed:?}"))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1.0)
}

fn branch_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut fd_worst = 0.0f64;
    for case in 0..1000 {
        let p = rng.random_range(2..=5usize);
        let k = rng.random_range(0..=3usize);
        let r = 10f64.powf(rng.random_range(-3.0..3.0));
        let on_axis = case % 4 == 0;
        let z = if on_axis {
            Complex64::new(-r, 0.0)
        } else {
            let mut theta: f64 = rng.random_range(-PI..PI);
            if theta.abs() < 1e-3 || (PI - theta.abs()) < 1e-3 {
                theta = 0.5;
            }
            Complex64::from_polar(r, theta)
        };
        for j in 0..p {
            for jp in 0..p {
                let bj = BranchIndex::new(j, p).unwrap();
                let bjp = BranchIndex::new(jp, p).unwrap();
                let lhs = branch_derivative(z, bj, k).map_err(|e| e.to_string())?;
                if on_axis {
                    let rhs = branch_derivative(z, bjp, k).unwrap().conj();
                    let cond = negative_axis_branch_condition(j, jp, p);
                    ensure(close(lhs, rhs) == cond, || {
                        format!("negative axis z={z}, p={p}, k={k}, j={j}, j'={jp}")
                    })?;
                } else {
                    let rhs = branch_derivative(z.conj(), bjp, k).unwrap().conj();
                    let cond = conjugate_branch_condition(j, jp, p);
                    ensure(close(lhs, rhs) == cond, || format!("z={z}, p={p}, k={k}, j={j}, j'={jp}"))?;
                }
            }
            if !on_axis && k >= 1 {
                let b = BranchIndex::new(j, p).unwrap();
                let h = 1e-5 * r;
                let hz = Complex64::new(h, 0.0);
                let fd = (branch_derivative(z + hz, b, k - 1).unwrap() - branch_derivative(z - hz, b, k - 1).unwrap())
                    / (2.0 * h);
                let exact = branch_derivative(z, b, k).unwrap();
                let rel = (fd - exact).norm() / exact.norm();
                fd_worst = fd_worst.max(rel);
                ensure(rel <= 1e-6, || format!("finite difference z={z}, p={p}, k={k}, j={j}: rel {rel:.2e}"))?;
            }
        }
        let _ = branch_value(z, BranchIndex::principal(p).unwrap()).map_err(|e| e.to_string())?;
    }
    Ok(format!("1000 cases, worst finite-difference error {fd_worst:.1e}"))
}

fn transform_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut im: f64 = rng.random_range(-10.0..10.0);
        if im.abs() < 1e-3 {
            im = 1.0;
        }
        let lambda = Complex64::new(rng.random_range(-10.0..10.0), im);
        for k in 1..=4 {
            let p = interleave_permutation(k).to_complex();
            let c = complex_pair_block(lambda, k).unwrap().to_complex();
            let lhs = &(&(&(&p.transpose() * &pairing_similarity_inverse(k)) * &c) * &pairing_similarity(k)) * &p;
            let rhs = ComplexMatrix::direct_sum(&[jordan_block(lambda, k), jordan_block(lambda.conj(), k)]);
            worst = worst.max((&lhs - &rhs).norm_inf());
        }
    }
    ensure(worst <= 1e-12, || format!("worst gap {worst:.2e} > 1e-12"))?;
    Ok(format!("100 values of λ, k = 1..4, worst gap {worst:.1e}"))
}

fn real_root_existence() -> Outcome {
    let tol = Tolerance::default();
    let minus_one = RealMatrix::from_diagonal(&[-1.0]);
    let d1 = real_jordan_decompose(&minus_one, &tol).map_err(|e| e.to_string())?;
    let exists1 = real_pth_root_exists(&minus_one, 2, &tol).map_err(|e| e.to_string())?;
    let root1 = principal_real_root(&d1, 2, &tol).map_err(|e| e.to_string())?;
    ensure(!exists1 && root1.is_none(), || "[[-1]] reported a real square root".into())?;

    let minus_i = RealMatrix::from_diagonal(&[-1.0, -1.0]);
    let d2 = real_jordan_decompose(&minus_i, &tol).map_err(|e| e.to_string())?;
    let exists2 = real_pth_root_exists(&minus_i, 2, &tol).map_err(|e| e.to_string())?;
    let root2 = principal_real_root(&d2, 2, &tol)
        .map_err(|e| e.to_string())?
        .ok_or("diag(-1,-1) reported no real square root")?;
    let x = root2.x.as_real().ok_or("root of diag(-1,-1) is not real")?;
    let gap = (&mat_power(x, 2).unwrap() - &minus_i).norm_inf();
    ensure(exists2, || "existence test rejected diag(-1,-1)".into())?;
    ensure(!root2.assignment.primary, || "root of diag(-1,-1) should be nonprimary".into())?;
    ensure(gap <= 1e-12, || format!("||X^2 - A|| = {gap:.2e} > 1e-12"))?;
    Ok(format!("[[-1]] has none; diag(-1,-1) has a nonprimary real root, residual {gap:.1e}"))
}

fn eventual_stochasticity() -> Outcome {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let kinds = SpectrumKinds {
        negative: false,
        complex: false,
    };
    let mut worst = 0.0f64;
    for case in 0..50 {
        let n = rng.random_range(2..=5);
        let g = random_primitive(&mut rng, n, kinds, true);
        let d = real_jordan_decompose(g.a(), &tol).map_err(|e| format!("case {case}: {e}"))?;
        for p in [2, 12] {
            let asg = BranchAssignment::principal(&d, p).unwrap();
            let r = assemble_primary_root(&d, &asg, &tol).map_err(|e| format!("case {case}: {e}"))?;
            let x = r.x.as_real().ok_or_else(|| format!("case {case}: principal root not real"))?;
            let dev = x.row_sums().iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);
            worst = worst.max(dev);
            ensure(dev <= 1e-10, || format!("case {case}, p={p}: row sums off by {dev:.2e}"))?;
            ensure(r.is_eventually_stochastic, || format!("case {case}, p={p}: not eventually stochastic"))?;
        }
    }
    Ok(format!("50 matrices, p in {{2, 12}}, worst row-sum deviation {worst:.1e}"))
}

/// Smallest `k` with `A^k > 0`, by exact integer powers.
fn brute_force_index(a: &[Vec<i64>]) -> u64 {
    let n = a.len();
    let mut power: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for k in 0..=(n * n) as u64 {
        if power.iter().flatten().all(|&v| v > 0) {
            return k;
        }
        power = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| power[i][l] * a[l][j]).sum::<i64>().min(1)).collect())
            .collect();
    }
    u64::MAX
}

fn power_indices() -> Outcome {
    let tol = Tolerance::default();
    let wielandt = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]];
    let fibonacci = vec![vec![1, 1], vec![1, 0]];
    let mut out = Vec::new();
    for (name, m, want) in [("Wielandt", wielandt, 5u64), ("Fibonacci", fibonacci, 2)] {
        let a = RealMatrix::from_rows(&m.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect::<Vec<_>>())
            .unwrap();
        let got = power_index(&a, 100, &tol).map_err(|e| e.to_string())?.index();
        let brute = brute_force_index(&m);
        ensure(got == Some(want) && brute == want, || {
            format!("{name}: power_index {got:?}, brute force {brute}, expected {want}")
        })?;
        out.push(format!("{name} {want}"));
    }
    Ok(out.join(", "))
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Exact rank of an integer matrix by fraction-free elimination.
fn int_rank(m: &[Vec<i128>]) -> usize {
    let mut m = m.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
    }
    rank
}

fn int_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

fn nilpotent(sizes: &[usize]) -> Vec<Vec<i128>> {
    let n: usize = sizes.iter().sum();
    let mut m = vec![vec![0i128; n]; n];
    let mut off = 0;
    for &k in sizes {
        for i in 0..k.saturating_sub(1) {
            m[off + i][off + i + 1] = 1;
        }
        off += k;
    }
    m
}

/// Jordan structure of a nilpotent integer matrix from exact ranks of its
/// powers.
fn nilpotent_structure(m: &[Vec<i128>]) -> Vec<usize> {
    let n = m.len();
    let mut ranks = vec![n];
    let mut power = m.to_vec();
    for _ in 0..n {
        ranks.push(int_rank(&power));
        power = int_mul(&power, m);
    }
    // blocks of size >= i: ranks[i-1] - ranks[i]
    let at_least: Vec<usize> = (1..=n).map(|i| ranks[i - 1] - ranks[i]).collect();
    let mut sizes = Vec::new();
    for i in 1..=n {
        let exact = at_least[i - 1] - at_least.get(i).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(i, exact));
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

fn ascent_oracle() -> Outcome {
    let tol = Tolerance::default();
    let mut checked = 0;
    for n in 1..=6 {
        for p in [2usize, 3] {
            let reachable: Vec<Vec<usize>> = partitions(n, n)
                .iter()
                .map(|nu| {
                    let b = nilpotent(nu);
                    let mut bp = b.clone();
                    for _ in 1..p {
                        bp = int_mul(&bp, &b);
                    }
                    nilpotent_structure(&bp)
                })
                .collect();
            for mu in partitions(n, n) {
                let a = RealMatrix::direct_sum(&mu.iter().map(|&k| jordan_block(0.0, k)).collect::<Vec<_>>());
                let got = pth_root_exists(&a, p, &tol).map_err(|e| e.to_string())?;
                let want = reachable.contains(&mu);
                ensure(got == want, || format!("structure {mu:?}, p={p}: test says {got}, oracle {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} nilpotent structures agree with the exhaustive oracle"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("five-by-five worked example", five_by_five),
        ("nine-by-nine derogatory example", nine_by_nine),
        ("count formulas vs brute-force sweep", count_oracle),
        ("branch conjugacy and derivatives", branch_identities),
        ("pair-block transform identity", transform_identity),
        ("real root existence", real_root_existence),
        ("eventual stochasticity", eventual_stochasticity),
        ("power index", power_indices),
        ("nilpotent ascent sequences", ascent_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

