//! Subcommands: argument structs, validation and table building.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qs_core::arith::{factorize, is_prime};
use qs_core::density::{
    a_closed, difference_check, gauss_sum, gauss_sum_closed, local_density, main_term, singular_series,
    DensityMethod, GaussTable, DEFAULT_PRIME_CUTOFF, DEFAULT_Q_CAP,
};
use qs_core::equidist::{coeff_growth_scan, decay_study, dyadic_windows, Parity};
use qs_core::lattice::{count_range, enumerate_sphere, quadric_points, quadric_sizes, r4_jacobi, Limits};
use qs_core::theta::{
    cusp_check, random_cusp, srw_predicate, srw_sum, theta_coeffs, theta_coeffs_by_classes, verify_poisson,
    verify_table1, verify_weak_modularity, TestFunction, UpperHalfPoint, SL2,
};

use crate::output::{emit, Format, Table};
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "qs", version, about = "Lattice points on spheres, local densities and weighted theta series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Cap on enumerated lattice points.
    #[arg(long, default_value_t = 100_000_000, global = true)]
    pub max_points: u128,
    /// Cap on dense table entries.
    #[arg(long, default_value_t = 10_000_000, global = true)]
    pub max_entries: u128,
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_points: self.max_points,
            max_entries: self.max_entries,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// r_d(n) by enumeration against the convolution table (and Jacobi for d = 4).
    Repnum(RepnumArgs),
    /// Cardinalities or points of the finite quadrics Q(x,x) = a.
    Quadric(QuadricArgs),
    /// Gauss sums S(q, a), with the closed form for odd prime powers.
    Gauss(GaussArgs),
    /// A_d(p^h, n) by direct summation against the closed form.
    Acoeff(AcoeffArgs),
    /// Local densities δ_{p,d}(n).
    Density(DensityArgs),
    /// Truncated singular series.
    Singular(SingularArgs),
    /// r_d(n) against the main term of the circle method.
    Mainterm(MaintermArgs),
    /// The lower bound on r_d(p²n) − r_d(n).
    Diffcheck(DiffcheckArgs),
    /// Coefficients of the weighted theta series of a seeded test function.
    ThetaCoeffs(ThetaCoeffsArgs),
    /// Poisson summation, the transformation table and weak modularity at τ.
    ThetaVerify(ThetaVerifyArgs),
    /// The cusp criterion against vanishing of the sums S(r, w).
    CuspCheck(CuspCheckArgs),
    /// The sums S(r, w) of a seeded test function.
    Srw(SrwArgs),
    /// Window medians of the total-variation distance to uniform.
    Equidist(EquidistArgs),
    /// Growth of theta coefficients of a cusp function.
    Growth(GrowthArgs),
}

/// A single `n` or every `n` in `1..=nmax`.
#[derive(Debug, Args)]
pub struct NRange {
    #[arg(long, conflicts_with = "nmax", required_unless_present = "nmax")]
    pub n: Option<u64>,
    #[arg(long)]
    pub nmax: Option<u64>,
}

impl NRange {
    fn values(&self) -> Result<Vec<u64>, Failure> {
        match (self.n, self.nmax) {
            (Some(n), _) => Ok(vec![n]),
            (None, Some(m)) => Ok((1..=m).collect()),
            (None, None) => Err(Failure::Invalid("give --n or --nmax".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct RepnumArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub nmax: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct QuadricArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: usize,
    /// List the points of this level instead of all cardinalities.
    #[arg(long)]
    pub a: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GaussArgs {
    #[arg(long)]
    pub q: u64,
    /// A single `a`; every `a` in `0..q` when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AcoeffArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub h: u32,
    #[command(flatten)]
    pub range: NRange,
    /// Largest modulus p^h summed directly.
    #[arg(long, default_value_t = DEFAULT_Q_CAP)]
    pub q_cap: u128,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: u32,
    #[command(flatten)]
    pub range: NRange,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SingularArgs {
    #[arg(long)]
    pub d: u32,
    #[command(flatten)]
    pub range: NRange,
    #[arg(long, default_value_t = DEFAULT_PRIME_CUTOFF)]
    pub prime_cutoff: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MaintermArgs {
    #[arg(long)]
    pub d: u32,
    #[command(flatten)]
    pub range: NRange,
    #[arg(long, default_value_t = DEFAULT_PRIME_CUTOFF)]
    pub prime_cutoff: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DiffcheckArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub p: u64,
    /// With --nmax and d = 4 only odd n are checked.
    #[command(flatten)]
    pub range: NRange,
    /// The constant C of the bound C·n^{d/2−1}; required for d >= 5.
    #[arg(long)]
    pub constant: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}

/// Which seeded test function to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Even, with entries uniform in the unit square.
    Even,
    /// Even and satisfying the cusp vanishing conditions exactly.
    Cusp,
    /// A cusp function plus an even bump of height 1e-3 at a seeded point.
    Perturbed,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ThetaCoeffsArgs {
    #[command(flatten)]
    pub f: FunctionArgs,
    #[arg(long, value_enum, default_value = "even")]
    pub kind: Kind,
    #[arg(long)]
    pub nmax: u64,
    /// Sum over residue classes instead of contracting coordinates.
    #[arg(long)]
    pub by_classes: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ThetaVerifyArgs {
    #[command(flatten)]
    pub f: FunctionArgs,
    /// A point of the upper half-plane written `re+imi`.
    #[arg(long, value_parser = parse_tau, allow_hyphen_values = true)]
    pub tau: UpperHalfPoint,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CuspCheckArgs {
    #[command(flatten)]
    pub f: FunctionArgs,
    #[arg(long, value_enum, default_value = "cusp")]
    pub kind: Kind,
    /// Largest r in S(r, w); 3 for odd p and 4 for p = 2 by default.
    #[arg(long)]
    pub rmax: Option<u32>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SrwArgs {
    #[command(flatten)]
    pub f: FunctionArgs,
    #[arg(long, value_enum, default_value = "cusp")]
    pub kind: Kind,
    #[arg(long)]
    pub r: u32,
    /// A single `w`; every `w` in `0..p^r` when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<i64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Any,
    Odd,
    Even,
}

#[derive(Debug, Args)]
pub struct EquidistArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub a: u64,
    #[arg(long, value_enum, default_value = "any")]
    pub parity: ParityArg,
    /// Windows are [2^k, 2^{k+1}) for kmin <= k <= kmax.
    #[arg(long, default_value_t = 6)]
    pub kmin: u32,
    #[arg(long, default_value_t = 10)]
    pub kmax: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub f: FunctionArgs,
    #[arg(long)]
    pub nmax: u64,
    #[command(flatten)]
    pub common: Common,
}

/// Parse `re+imi` (also `re-imi`), requiring a positive imaginary part.
pub fn parse_tau(s: &str) -> Result<UpperHalfPoint, String> {
    let z = parse_complex(s)?;
    UpperHalfPoint::new(z).map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("expected a complex number written re+imi, got {s:?}");
    let body = s.trim().strip_suffix('i').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im_text = &body[split..];
    let im: f64 = match im_text {
        "+" => 1.0,
        "-" => -1.0,
        t => t.parse().map_err(|_| bad())?,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Invalid(msg.into()))
}

fn require_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        invalid(format!("{p} is not prime"))
    }
}

fn build_function(f: &FunctionArgs, kind: Kind, limits: &Limits) -> Result<TestFunction, Failure> {
    require_prime(f.p)?;
    if f.d == 0 {
        return invalid("dimension must be at least 1");
    }
    let func = match kind {
        Kind::Even => TestFunction::random_even(f.p, f.d, f.seed, limits)?,
        Kind::Cusp => random_cusp(f.p, f.d, f.seed, limits)?,
        Kind::Perturbed => {
            let base = random_cusp(f.p, f.d, f.seed, limits)?;
            let size = base.len() as u64;
            let i = (f.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 11) % size;
            let p = f.p;
            let neg = qs_core::lattice::negate_index(i as usize, f.d, p) as u64;
            let bump = TestFunction::from_fn(p, f.d, limits, |x| {
                let idx = qs_core::ResidueVector {
                    coords: x.to_vec(),
                    modulus: p,
                }
                .encode() as u64;
                let h = (idx == i) as u8 + (idx == neg) as u8;
                Complex64::new(1e-3 * h as f64, 0.0)
            })?;
            base.add(&bump)?
        }
    };
    Ok(func)
}

/// Run a parsed command; `Ok(false)` means a verification failed after the
/// table was written.
pub fn run(cli: Cli) -> Result<bool, Failure> {
    let (table, verified, common) = match &cli.command {
        Command::Repnum(a) => repnum(a).map(|(t, v)| (t, v, &a.common))?,
        Command::Quadric(a) => quadric(a).map(|t| (t, true, &a.common))?,
        Command::Gauss(a) => gauss(a).map(|(t, v)| (t, v, &a.common))?,
        Command::Acoeff(a) => acoeff(a).map(|(t, v)| (t, v, &a.common))?,
        Command::Density(a) => density(a).map(|t| (t, true, &a.common))?,
        Command::Singular(a) => singular(a).map(|t| (t, true, &a.common))?,
        Command::Mainterm(a) => mainterm(a).map(|t| (t, true, &a.common))?,
        Command::Diffcheck(a) => diffcheck(a).map(|(t, v)| (t, v, &a.common))?,
        Command::ThetaCoeffs(a) => theta_coeffs_cmd(a).map(|t| (t, true, &a.common))?,
        Command::ThetaVerify(a) => theta_verify(a).map(|(t, v)| (t, v, &a.common))?,
        Command::CuspCheck(a) => cusp_check_cmd(a).map(|(t, v)| (t, v, &a.common))?,
        Command::Srw(a) => srw(a).map(|t| (t, true, &a.common))?,
        Command::Equidist(a) => equidist(a).map(|t| (t, true, &a.common))?,
        Command::Growth(a) => growth(a).map(|t| (t, true, &a.common))?,
    };
    emit(&table, common.format, common.output.as_deref())?;
    Ok(verified)
}

fn repnum(a: &RepnumArgs) -> Result<(Table, bool), Failure> {
    let limits = a.common.limits();
    if a.d == 0 {
        return invalid("dimension must be at least 1");
    }
    let conv = count_range(a.d, a.nmax, &limits)?;
    let mut t = Table::new(&["n", "r_enum", "r_jacobi", "match"]);
    let mut all = true;
    for n in 1..=a.nmax {
        let r = enumerate_sphere(a.d, n, &limits, |_| {})?.count;
        let jac = if a.d == 4 { Some(r4_jacobi(n)?) } else { None };
        let ok = r == conv[n as usize] && jac.map_or(true, |j| j == r);
        all &= ok;
        t.push(vec![n.into(), r.into(), jac.into(), ok.into()]);
    }
    Ok((t, all))
}

fn quadric(a: &QuadricArgs) -> Result<Table, Failure> {
    require_prime(a.p)?;
    let limits = a.common.limits();
    match a.a {
        None => {
            let mut t = Table::new(&["a", "size"]);
            for (level, size) in quadric_sizes(a.p, a.d)?.into_iter().enumerate() {
                t.push(vec![level.into(), (size as i128).into()]);
            }
            Ok(t)
        }
        Some(level) => {
            let mut t = Table::new(&["a", "index", "point"]);
            for v in quadric_points(a.p, a.d, level, &limits)? {
                let coords: Vec<String> = v.coords.iter().map(u64::to_string).collect();
                t.push(vec![level.into(), v.encode().into(), format!("({})", coords.join(",")).into()]);
            }
            Ok(t)
        }
    }
}

/// `(p, h)` when `q = p^h` for an odd prime `p`.
fn odd_prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q as u128).as_slice() {
        [(p, h)] if *p > 2 => Some((*p, *h)),
        _ => None,
    }
}

fn gauss(a: &GaussArgs) -> Result<(Table, bool), Failure> {
    if a.q == 0 {
        return invalid("q must be at least 1");
    }
    let limits = a.common.limits();
    let terms = a.q as u128 * a.a.map_or(a.q as u128, |_| 1);
    if terms > limits.max_points {
        return Err(Failure::Resource(format!(
            "Gauss sum terms: requested {terms}, cap {}",
            limits.max_points
        )));
    }
    let values: Vec<i64> = match a.a {
        Some(x) => vec![x],
        None => (0..a.q as i64).collect(),
    };
    let mut t = Table::new(&["q", "a", "value", "closed", "abs_error"]);
    let mut all = true;
    for x in values {
        let value = gauss_sum(a.q, x);
        let closed = match odd_prime_power(a.q) {
            Some((p, h)) if x.rem_euclid(p as i64) != 0 => Some(gauss_sum_closed(p, h, x)?),
            _ => None,
        };
        let err = closed.map(|c| (c - value).norm());
        all &= err.map_or(true, |e| e < 1e-8 * value.norm().max(1.0));
        t.push(vec![a.q.into(), x.into(), value.into(), closed.into(), err.into()]);
    }
    Ok((t, all))
}

fn acoeff(a: &AcoeffArgs) -> Result<(Table, bool), Failure> {
    require_prime(a.p)?;
    if a.p == 2 {
        return invalid("the closed form needs an odd prime");
    }
    if a.h == 0 {
        return invalid("h must be at least 1");
    }
    let q = qs_core::arith::checked_pow(a.p, a.h)?;
    let q = u64::try_from(q).map_err(|_| Failure::Resource(format!("{}^{} overflows", a.p, a.h)))?;
    let table = GaussTable::new(q, a.q_cap)?;
    let mut t = Table::new(&["d", "p", "h", "n", "brute", "closed", "abs_error", "pass"]);
    let mut all = true;
    for n in a.range.values()? {
        let closed = a_closed(a.d, a.p, a.h, n)?;
        let brute = table.a_coefficient(a.d, n);
        let err = (closed - brute).norm();
        let pass = err < a.tol;
        all &= pass;
        t.push(vec![
            a.d.into(),
            a.p.into(),
            a.h.into(),
            n.into(),
            brute.into(),
            closed.into(),
            err.into(),
            pass.into(),
        ]);
    }
    Ok((t, all))
}

fn density(a: &DensityArgs) -> Result<Table, Failure> {
    let mut t = Table::new(&["p", "d", "n", "delta", "method", "terms", "tail"]);
    for n in a.range.values()? {
        let r = local_density(a.p, a.d, n)?;
        let method = match r.method {
            DensityMethod::ClosedForm => "closed-form",
            DensityMethod::BruteForce => "brute-force",
        };
        t.push(vec![
            a.p.into(),
            a.d.into(),
            n.into(),
            r.delta.into(),
            method.into(),
            r.terms.len().into(),
            r.tail.into(),
        ]);
    }
    Ok(t)
}

fn singular(a: &SingularArgs) -> Result<Table, Failure> {
    let mut t = Table::new(&["d", "n", "prime_cutoff", "value"]);
    for n in a.range.values()? {
        let s = singular_series(a.d, n, a.prime_cutoff)?;
        t.push(vec![a.d.into(), n.into(), s.prime_cutoff.into(), s.value.into()]);
    }
    Ok(t)
}

fn mainterm(a: &MaintermArgs) -> Result<Table, Failure> {
    let ns = a.range.values()?;
    let top = ns.iter().copied().max().unwrap_or(0);
    let counts = count_range(a.d as usize, top, &a.common.limits())?;
    let mut t = Table::new(&["d", "n", "r", "main_term", "ratio"]);
    for n in ns {
        let m = main_term(a.d, n, a.prime_cutoff)?;
        let r = counts[n as usize];
        t.push(vec![a.d.into(), n.into(), r.into(), m.into(), (r as f64 / m).into()]);
    }
    Ok(t)
}

fn diffcheck(a: &DiffcheckArgs) -> Result<(Table, bool), Failure> {
    let limits = a.common.limits();
    let mut ns = a.range.values()?;
    if a.d == 4 && a.range.n.is_none() {
        ns.retain(|n| n % 2 == 1);
    }
    let mut t = Table::new(&["d", "p", "n", "lhs", "bound", "pass"]);
    let mut all = true;
    for n in ns {
        let r = difference_check(a.d, a.p, n, a.constant, &limits)?;
        all &= r.pass;
        t.push(vec![a.d.into(), a.p.into(), n.into(), r.lhs.into(), r.bound.into(), r.pass.into()]);
    }
    Ok((t, all))
}

fn theta_coeffs_cmd(a: &ThetaCoeffsArgs) -> Result<Table, Failure> {
    let limits = a.common.limits();
    let f = build_function(&a.f, a.kind, &limits)?;
    let series = if a.by_classes {
        theta_coeffs_by_classes(&f, a.nmax, &limits)?
    } else {
        theta_coeffs(&f, a.nmax, &limits)?
    };
    let mut t = Table::new(&["n", "c"]);
    for (n, c) in series.c.iter().enumerate() {
        t.push(vec![n.into(), (*c).into()]);
    }
    Ok(t)
}

fn theta_verify(a: &ThetaVerifyArgs) -> Result<(Table, bool), Failure> {
    if a.eps.is_nan() || a.eps <= 0.0 {
        return invalid("eps must be positive");
    }
    let limits = a.common.limits();
    let f = build_function(&a.f, Kind::Even, &limits)?;
    let mut rows = vec![verify_poisson(&f, a.tau, a.eps)?];
    rows.extend(verify_table1(&f, a.tau, a.eps)?);
    let p = a.f.p as i64;
    for (label, g) in [("weak T", SL2::new(1, 1, 0, 1)), ("weak lower", SL2::new(1, 0, 4 * p * p, 1))] {
        let mut r = verify_weak_modularity(&f, &g, a.tau, a.eps)?;
        r.label = label.into();
        rows.push(r);
    }
    let mut t = Table::new(&["label", "residual", "tail", "pass"]);
    let mut all = true;
    for r in rows {
        let pass = r.residual < a.tol;
        all &= pass;
        t.push(vec![r.label.into(), r.residual.into(), r.tail.into(), pass.into()]);
    }
    Ok((t, all))
}

fn cusp_check_cmd(a: &CuspCheckArgs) -> Result<(Table, bool), Failure> {
    let limits = a.common.limits();
    let f = build_function(&a.f, a.kind, &limits)?;
    let rmax = a.rmax.unwrap_or(if a.f.p == 2 { 4 } else { 3 });
    let report = cusp_check(&f);
    let vanishing = srw_predicate(&f, rmax, a.tol, &limits)?;
    let agree = report.is_cusp == vanishing;
    let mut t = Table::new(&["p", "d", "seed", "is_cusp", "failing_condition", "srw_vanishing", "agree"]);
    t.push(vec![
        a.f.p.into(),
        a.f.d.into(),
        a.f.seed.into(),
        report.is_cusp.into(),
        report.failing_condition.into(),
        vanishing.into(),
        agree.into(),
    ]);
    Ok((t, agree))
}

fn srw(a: &SrwArgs) -> Result<Table, Failure> {
    let limits = a.common.limits();
    let f = build_function(&a.f, a.kind, &limits)?;
    let ws: Vec<i64> = match a.w {
        Some(w) => vec![w],
        None => {
            let big = qs_core::arith::checked_pow(a.f.p, a.r)?;
            if big > limits.max_entries {
                return Err(Failure::Resource(format!("{big} values of w exceed the cap")));
            }
            (0..big as i64).collect()
        }
    };
    let mut t = Table::new(&["r", "w", "value", "abs"]);
    for w in ws {
        let v = srw_sum(&f, a.r, w, &limits)?;
        t.push(vec![a.r.into(), w.into(), v.into(), v.norm().into()]);
    }
    Ok(t)
}

fn equidist(a: &EquidistArgs) -> Result<Table, Failure> {
    if a.kmin > a.kmax || a.kmax >= 62 {
        return invalid("need kmin <= kmax < 62");
    }
    let parity = match a.parity {
        ParityArg::Any => Parity::Any,
        ParityArg::Odd => Parity::Odd,
        ParityArg::Even => Parity::Even,
    };
    let windows = dyadic_windows(a.kmin..=a.kmax);
    let rows = decay_study(a.d, a.p, a.a, &windows, parity, &a.common.limits())?;
    let mut t = Table::new(&[
        "lo",
        "hi",
        "admissible",
        "median_tv",
        "max_tv",
        "median_sup_dev",
        "undersampled",
    ]);
    for r in rows {
        t.push(vec![
            r.lo.into(),
            r.hi.into(),
            r.admissible.into(),
            r.median_tv.into(),
            r.max_tv.into(),
            r.median_sup_dev.into(),
            r.undersampled.into(),
        ]);
    }
    Ok(t)
}

fn growth(a: &GrowthArgs) -> Result<Table, Failure> {
    let limits = a.common.limits();
    let f = build_function(&a.f, Kind::Cusp, &limits)?;
    let mut t = Table::new(&["n", "abs_c", "hecke_ratio", "kloosterman_ratio"]);
    for r in coeff_growth_scan(&f, a.nmax, &limits)? {
        t.push(vec![r.n.into(), r.abs_c.into(), r.hecke_ratio.into(), r.kloosterman_ratio.into()]);
    }
    Ok(t)
}
