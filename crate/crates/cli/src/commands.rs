use std::fs;
use std::path::{Path, PathBuf};

use perron_roots::eigen::real_pth_root_exists;
use perron_roots::enumroots::{
    all_primary_assignments, count_real_primary, enumerate_ev_positive_primary, enumerate_nonprimary_family,
    principal_real_root,
};
use perron_roots::matcore::{is_entrywise_positive, mat_power, parse_matrix};
use perron_roots::matfun::{assemble_primary_root, singular_root_report};
use perron_roots::perron::{
    default_power_cap, is_eventually_positive, is_eventually_stochastic, is_primitive, is_stochastic, power_index,
    spectral_radius_data,
};
use perron_roots::rjcf::{parse_factorization, real_jordan_decompose};
use perron_roots::{
    BranchAssignment, Error, PairIndex, PowerIndexResult, RealBlockSpec, RealJordanDecomposition, RealMatrix,
    RootReport, Tolerance,
};

use crate::report::{Map, Value};

/// Failure classes with stable exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input (exit 2).
    Input(String),
    /// The numerics could not produce an answer (exit 3).
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => CliError::Input(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A rendered body plus whether it counts as a verification failure.
pub struct Outcome {
    pub body: Map,
    pub verified: bool,
}

impl From<Map> for Outcome {
    fn from(body: Map) -> Self {
        Self { body, verified: true }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_matrix(path: &Path) -> CliResult<RealMatrix> {
    parse_matrix(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn decompose(a: &RealMatrix, factorization: Option<&Path>, tol: &Tolerance) -> CliResult<(RealJordanDecomposition, &'static str)> {
    match factorization {
        Some(path) => {
            let file = parse_factorization(&read(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok((file.into_decomposition(a, tol)?, "factorization"))
        }
        None => Ok((real_jordan_decompose(a, tol)?, "numerical")),
    }
}

fn decomposition_value(d: &RealJordanDecomposition, source: &str) -> Map {
    let blocks: Vec<Value> = d
        .blocks()
        .iter()
        .map(|b| {
            let kind = match b {
                RealBlockSpec::RealEigenBlock { .. } => "real",
                RealBlockSpec::ComplexPairBlock { .. } => "pair",
            };
            Map::new()
                .with("kind", kind)
                .with("eigenvalue", b.eigenvalue())
                .with("size", b.k())
                .into()
        })
        .collect();
    Map::new()
        .with("source", source)
        .with("residual", d.residual(d.matrix()))
        .with("blocks", blocks)
}

fn spectrum_value(d: &RealJordanDecomposition) -> Map {
    let s = d.summary();
    let structure = d.structure();
    let eigenvalues: Vec<Value> = s
        .eigenvalues
        .iter()
        .map(|e| {
            let sizes = structure.sizes(e.value).map(<[usize]>::to_vec).unwrap_or_default();
            Map::new()
                .with("value", e.value)
                .with("multiplicity", e.multiplicity)
                .with("jordan_blocks", sizes)
                .into()
        })
        .collect();
    Map::new()
        .with("distinct", s.s())
        .with("real_positive", s.r1())
        .with("real_negative", s.r2())
        .with("conjugate_pairs", s.c())
        .with("has_zero", s.has_zero())
        .with("spectral_radius", s.spectral_radius())
        .with("derogatory", structure.is_derogatory())
        .with("eigenvalues", eigenvalues)
}

fn power_index_value(r: &PowerIndexResult) -> Map {
    let mut m = Map::new();
    match r.index() {
        Some(k) => m.put("index", k),
        None => m.put("index", "exceeded cap"),
    };
    m.with("witness_exponent", r.witness_exponent).with("cap", r.cap_used)
}

fn nonnegative(a: &RealMatrix, tol: &Tolerance) -> bool {
    a.as_slice().iter().all(|&v| v >= -tol.abs_eps)
}

pub fn analyze(path: &Path, factorization: Option<&Path>, cap: Option<u64>, tol: &Tolerance) -> CliResult<Outcome> {
    let a = load_matrix(path)?;
    let n = a.ensure_square()?;
    let cap = cap.unwrap_or_else(|| default_power_cap(n));
    let (d, source) = decompose(&a, factorization, tol)?;
    let mut body = Map::new()
        .with("n", n)
        .with("decomposition", decomposition_value(&d, source))
        .with("spectrum", spectrum_value(&d));

    let perron = spectral_radius_data(&a, tol);
    match &perron {
        Ok(r) => body.put(
            "perron",
            Map::new()
                .with("rho", r.rho)
                .with("rho_is_eigenvalue", r.rho_positive)
                .with("simple", r.rho_simple)
                .with("dominant", r.rho_dominant)
                .with("right_vector", r.right_vector.clone())
                .with("left_vector", r.left_vector.clone())
                .with("strong_pf", r.strong_pf()),
        ),
        Err(e) => body.put("perron", format!("unavailable: {e}")),
    };
    let ev = perron.as_ref().is_ok_and(|r| r.eventually_positive());
    let nonneg = nonnegative(&a, tol);
    body.put("nonnegative", nonneg)
        .put("positive", is_entrywise_positive(&a, tol))
        .put("primitive", nonneg && is_primitive(&a, tol)?)
        .put("stochastic", is_stochastic(&a, tol))
        .put("eventually_positive", ev)
        .put("eventually_stochastic", ev && is_eventually_stochastic(&a, tol, cap)?);
    if nonneg {
        body.put("power_index", power_index_value(&power_index(&a, cap, tol)?));
    }
    Ok(body.into())
}

pub struct RootsRequest {
    pub matrix: PathBuf,
    pub factorization: Option<PathBuf>,
    pub p: usize,
    pub nonprimary: bool,
    pub seed: u64,
    pub samples: u64,
    pub stochastic: bool,
    pub assignment: Option<String>,
}

fn root_value(r: &RootReport, stochastic: bool) -> Value {
    let mut m = Map::new()
        .with("assignment", r.assignment.to_string())
        .with("primary", r.assignment.primary)
        .with("residual", r.residual)
        .with("eventually_positive", r.is_eventually_positive);
    if let Some(pi) = &r.power_index {
        m.put("power_index", power_index_value(pi));
    }
    if stochastic {
        m.put("eventually_stochastic", r.is_eventually_stochastic);
    }
    if let Some(x) = r.x.as_real() {
        m.put("x", x.clone());
    }
    m.into()
}

/// `j` for a real block, `j1:j2` for a pair block, separated by commas.
pub fn parse_assignment(text: &str, d: &RealJordanDecomposition, p: usize) -> CliResult<BranchAssignment> {
    let bad = |t: &str| CliError::Input(format!("bad assignment token {t:?}, expected j or j1:j2"));
    let mut reals = Vec::new();
    let mut pairs = Vec::new();
    for tok in text.split(',').map(str::trim) {
        match tok.split_once(':') {
            Some((a, b)) => {
                let j1 = a.trim().parse().map_err(|_| bad(tok))?;
                let j2 = b.trim().parse().map_err(|_| bad(tok))?;
                pairs.push(PairIndex::new(j1, j2));
            }
            None => reals.push(tok.parse().map_err(|_| bad(tok))?),
        }
    }
    BranchAssignment::new(d, p, reals, pairs).map_err(|e| CliError::Input(e.to_string()))
}

pub fn roots(req: &RootsRequest, tol: &Tolerance) -> CliResult<Outcome> {
    let a = load_matrix(&req.matrix)?;
    a.ensure_square()?;
    let (d, source) = decompose(&a, req.factorization.as_deref(), tol)?;
    let p = req.p;
    let mut body = Map::new()
        .with("p", p)
        .with("decomposition", decomposition_value(&d, source));

    if d.is_singular() {
        let report = singular_root_report(&d, p, tol)?;
        if !report.exists {
            return Err(CliError::Numerical(format!(
                "singular matrix has no {p}-th root (zero-eigenvalue blocks {:?})",
                report.zero_block_sizes
            )));
        }
        body.put("mode", "singular")
            .put("zero_blocks", report.zero_block_sizes.clone())
            .put("root_exists", true)
            .put("roots", report.root.iter().map(|r| root_value(r, req.stochastic)).collect::<Vec<_>>());
        return Ok(body.into());
    }

    let ev = spectral_radius_data(&a, tol).is_ok_and(|r| r.eventually_positive());
    if ev {
        let cat = enumerate_ev_positive_primary(&d, p, tol)?;
        body.put("mode", "eventually positive")
            .put(
                "counts",
                Map::new()
                    .with("primary_total", cat.primary_total)
                    .with("real_primary", cat.real_primary_count)
                    .with("ev_positive_primary", cat.ev_positive_primary_count),
            )
            .put("roots", cat.roots.iter().map(|r| root_value(r, req.stochastic)).collect::<Vec<_>>());
        if req.nonprimary {
            if !d.is_derogatory() {
                body.put("nonprimary", "none (every root is primary)");
            } else {
                let asg = match &req.assignment {
                    Some(t) => parse_assignment(t, &d, p)?,
                    None => BranchAssignment::principal(&d, p)?,
                };
                let seeds: Vec<u64> = (0..req.samples).map(|i| req.seed.wrapping_add(i)).collect();
                let family = enumerate_nonprimary_family(&d, &asg, &seeds, tol)?;
                let items: Vec<Value> = family
                    .iter()
                    .zip(&seeds)
                    .map(|(r, &seed)| {
                        let Value::Map(mut entries) = root_value(r, req.stochastic) else { unreachable!() };
                        entries.insert(0, ("seed".into(), seed.into()));
                        Value::Map(entries)
                    })
                    .collect();
                body.put("nonprimary", items);
            }
        }
        return Ok(body.into());
    }

    eprintln!("warning: matrix is not eventually positive; listing real roots only");
    let mut real = Vec::new();
    let all = all_primary_assignments(&d, p)?;
    for asg in &all {
        if asg.yields_real(&d) {
            real.push(assemble_primary_root(&d, asg, tol)?);
        }
    }
    body.put("mode", "real")
        .put(
            "counts",
            Map::new()
                .with("primary_total", all.len())
                .with("real_primary", count_real_primary(d.summary(), p)?),
        )
        .put("real_root_exists", real_pth_root_exists(&a, p, tol)?)
        .put("roots", real.iter().map(|r| root_value(r, req.stochastic)).collect::<Vec<_>>());
    if real.is_empty() {
        if let Some(r) = principal_real_root(&d, p, tol)? {
            body.put("nonprimary", vec![root_value(&r, req.stochastic)]);
        }
    }
    Ok(body.into())
}

pub fn verify(
    x_path: &Path,
    a_path: &Path,
    p: usize,
    max_residual: f64,
    cap: Option<u64>,
    tol: &Tolerance,
) -> CliResult<Outcome> {
    let x = load_matrix(x_path)?;
    let a = load_matrix(a_path)?;
    let n = x.ensure_square()?;
    if a.rows() != n || a.cols() != n {
        return Err(CliError::Numerical(format!(
            "dimension mismatch: X is {n}x{n}, A is {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let cap = cap.unwrap_or_else(|| default_power_cap(n));
    let residual = (&mat_power(&x, p as u64)? - &a).norm_inf();
    let ev = is_eventually_positive(&x, tol);
    let pass = residual <= max_residual;
    let body = Map::new()
        .with("p", p)
        .with("residual", residual)
        .with("max_residual", max_residual)
        .with("eventually_positive", ev)
        .with("eventually_stochastic", ev && is_eventually_stochastic(&x, tol, cap)?)
        .with("pass", pass);
    Ok(Outcome { body, verified: pass })
}

pub fn power_index_cmd(path: &Path, cap: Option<u64>, tol: &Tolerance) -> CliResult<Outcome> {
    let a = load_matrix(path)?;
    let n = a.ensure_square()?;
    let cap = cap.unwrap_or_else(|| default_power_cap(n));
    let r = power_index(&a, cap, tol)?;
    Ok(Map::new().with("n", n).with("power_index", power_index_value(&r)).into())
}
