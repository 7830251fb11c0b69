//! Command-line front end: inspect diagram combinatorics, print extended
//! potentials and their bound states, run the exact identity suite, and emit
//! uncertainty-product data as CSV.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ratext_core::coherent::{uncertainty_product, CoherentFamily};
use ratext_core::error::CoreError;
use ratext_core::hermite::normalized_pseudo_wronskian;
use ratext_core::maya::{IndexSet, MayaDiagram};
use ratext_core::partition::Partition;
use ratext_core::quadrature::QuadratureSettings;
use ratext_core::rational::RationalExtension;
use ratext_core::scalar::rat;
use ratext_core::schur::{schur, schur_via_raising, schur_wronskian_form, specialize_classical};

#[derive(Parser)]
#[command(
    name = "ratext",
    about = "Rational extensions of the harmonic oscillator: combinatorics, potentials, exact identities, and coherent-state uncertainty data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the combinatorics of a Maya diagram: shape, index, deviation
    /// sets, hook lengths, critical degrees, regularity.
    Maya(DiagramArgs),
    /// Print the extended potential, its dressed polynomial, the first bound
    /// states, and the available annihilator orders.
    Extension(DiagramArgs),
    /// Run the exact identity suite for a shape; exits nonzero when any
    /// check fails.
    Verify(VerifyArgs),
    /// Evaluate the time-dependent uncertainty product on a grid and emit
    /// CSV, one file per alpha plus a combined one when --out is given.
    Uncertainty(UncertaintyArgs),
}

#[derive(Args)]
struct DiagramArgs {
    /// Partition parts, comma separated (empty string for the trivial shape).
    #[arg(long, value_name = "PARTS", allow_hyphen_values = true)]
    partition: Option<String>,
    /// Flip sites relative to the trivial diagram, comma separated integers.
    #[arg(long, value_name = "SITES", allow_hyphen_values = true)]
    index_set: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: DiagramArgs,
    /// Check a single spectral shift instead of the full suite.
    #[arg(long, value_name = "SHIFT", allow_hyphen_values = true)]
    q: Option<i64>,
    /// Invert the single-shift check: succeed when the shift is rejected.
    #[arg(long, requires = "q")]
    expect_fail: bool,
}

#[derive(Args)]
struct UncertaintyArgs {
    #[command(flatten)]
    input: DiagramArgs,
    /// Orbit radii, comma separated positive reals.
    #[arg(long, value_name = "LIST", default_value = "4")]
    alpha: String,
    /// Time grid as start:stop:count; start and stop accept pi literals
    /// such as 0, pi, 2pi, pi/2, -0.5pi.
    #[arg(long, value_name = "GRID", default_value = "0:pi:201", allow_hyphen_values = true)]
    t: String,
    /// Directory for the CSV files; omitted means stdout.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Relative tolerance for the quadrature.
    #[arg(long, value_name = "TOL")]
    quad_tol: Option<f64>,
    /// Half width of the integration window (default: alpha + 12).
    #[arg(long, value_name = "W")]
    quad_halfwidth: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    // Die quietly like other unix filters when the consumer closes the pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Maya(args) => cmd_maya(&args),
        Command::Extension(args) => cmd_extension(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Uncertainty(args) => cmd_uncertainty(&args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}

/// Resolve the diagram from exactly one of --partition / --index-set.
fn resolve_diagram(args: &DiagramArgs) -> Result<MayaDiagram> {
    match (&args.partition, &args.index_set) {
        (Some(_), Some(_)) => bail!("give either --partition or --index-set, not both"),
        (None, None) => bail!("one of --partition or --index-set is required"),
        (Some(parts), None) => {
            let lambda = Partition::from_str(parts)
                .with_context(|| format!("invalid partition {:?}", parts))?;
            Ok(MayaDiagram::from_partition(&lambda))
        }
        (None, Some(sites)) => {
            let set = parse_index_set(sites)?;
            Ok(MayaDiagram::from_index_set(&set))
        }
    }
}

fn parse_index_set(s: &str) -> Result<IndexSet> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(IndexSet::empty());
    }
    let mut sites = Vec::new();
    for (i, tok) in trimmed.split(',').enumerate() {
        let v: i64 = tok
            .trim()
            .parse()
            .with_context(|| format!("invalid site {:?} at position {}", tok.trim(), i))?;
        sites.push(v);
    }
    IndexSet::new(sites).context("invalid index set")
}

/// A scalar that may involve pi: plain floats, `pi`, `2pi`, `-0.5pi`, `pi/4`.
fn parse_scalar(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Some(at) = t.find("pi") {
        let (coef_s, rest) = (&t[..at], &t[at + 2..]);
        let coef = match coef_s.trim() {
            "" => 1.0,
            "-" => -1.0,
            c => c
                .parse::<f64>()
                .with_context(|| format!("invalid coefficient {:?} in {:?}", c, s))?,
        };
        let div = match rest.trim() {
            "" => 1.0,
            d => d
                .strip_prefix('/')
                .with_context(|| format!("unexpected trailing {:?} in {:?}", d, s))?
                .trim()
                .parse::<f64>()
                .with_context(|| format!("invalid divisor in {:?}", s))?,
        };
        if div == 0.0 {
            bail!("division by zero in {:?}", s);
        }
        Ok(coef * std::f64::consts::PI / div)
    } else {
        t.parse::<f64>()
            .with_context(|| format!("invalid number {:?}", s))
    }
}

/// Time grid `start:stop:count` with count >= 2, endpoints included.
fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("grid must be start:stop:count, got {:?}", s);
    }
    let start = parse_scalar(parts[0])?;
    let stop = parse_scalar(parts[1])?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .with_context(|| format!("invalid grid count {:?}", parts[2]))?;
    if count < 2 {
        bail!("grid needs at least 2 points, got {}", count);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

fn parse_alphas(s: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for tok in s.split(',') {
        let a = parse_scalar(tok)?;
        if !(a > 0.0) {
            bail!("alpha must be positive, got {}", a);
        }
        out.push(a);
    }
    Ok(out)
}

fn partition_label(lambda: &Partition) -> String {
    let parts: Vec<String> = lambda.parts().iter().map(|p| p.to_string()).collect();
    parts.join(",")
}

fn set_label(set: &IndexSet) -> String {
    let sites: Vec<String> = set.iter().map(|k| k.to_string()).collect();
    format!("{{{}}}", sites.join(","))
}

fn strip_window(diagram: &MayaDiagram) -> (i64, i64) {
    let set = diagram.index_set();
    let lo = set.iter().min().unwrap_or(0).min(-1) - 2;
    let hi = set.iter().max().unwrap_or(0).max(1) + 3;
    (lo, hi)
}

fn cmd_maya(args: &DiagramArgs) -> Result<bool> {
    let diagram = resolve_diagram(args)?;
    let lambda = diagram.partition();
    let set = diagram.index_set();
    let threshold = lambda.critical_threshold();
    let degrees = diagram.critical_degrees_upto(threshold + 4);
    let positives: Vec<i64> = set.iter().filter(|&k| k >= 0).collect();
    let gaps: Vec<i64> = set.iter().filter(|&k| k < 0).collect();
    let (lo, hi) = strip_window(&diagram);
    match args.format {
        Format::Json => {
            let doc = serde_json::json!({
                "partition": lambda.parts(),
                "weight": lambda.size(),
                "length": lambda.len(),
                "index": diagram.index(),
                "index_set": set.as_slice(),
                "filled_nonnegative": positives,
                "empty_negative": gaps,
                "tableaux": lambda.tableaux_count().to_string(),
                "hook_lengths": lambda.hook_lengths(),
                "critical_threshold": threshold,
                "critical_degrees": degrees,
                "regular": diagram.is_regular(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        _ => {
            println!("partition:        ({})", partition_label(&lambda));
            println!("weight / length:  {} / {}", lambda.size(), lambda.len());
            println!("index:            {}", diagram.index());
            println!("index set:        {}", set_label(&set));
            println!("filled sites >=0: {:?}", positives);
            println!("empty sites < 0:  {:?}", gaps);
            println!("tableaux count:   {}", lambda.tableaux_count());
            for (i, row) in lambda.hook_lengths().iter().enumerate() {
                println!("hooks row {}:      {:?}", i + 1, row);
            }
            println!("critical shifts:  {:?} (threshold {})", degrees, threshold);
            println!("regular:          {}", diagram.is_regular());
            println!("strip [{},{}):   {}", lo, hi, diagram.render_window(lo, hi));
        }
    }
    Ok(true)
}

fn cmd_extension(args: &DiagramArgs) -> Result<bool> {
    let diagram = resolve_diagram(args)?;
    let ext = RationalExtension::new(diagram.clone());
    if !ext.is_regular() {
        eprintln!(
            "warning: diagram {} is not regular; the potential has real poles",
            set_label(&diagram.index_set())
        );
    }
    let lambda = diagram.partition();
    let threshold = lambda.critical_threshold();
    let labels = diagram.complement_indices(6);
    let states: Vec<(i64, i64, String)> = labels
        .iter()
        .map(|&m| {
            let numerator = normalized_pseudo_wronskian(&diagram.flip(m));
            (m, ext.eigenvalue(m), numerator.to_string())
        })
        .collect();
    let orders: Vec<(i64, usize)> = diagram
        .critical_degrees_upto(threshold + 3)
        .into_iter()
        .filter(|&q| q >= threshold)
        .map(|q| {
            let kernel = diagram.translate(q).symmetric_difference(&diagram);
            (q, kernel.len())
        })
        .collect();
    match args.format {
        Format::Json => {
            let doc = serde_json::json!({
                "partition": lambda.parts(),
                "index_set": diagram.index_set().as_slice(),
                "regular": ext.is_regular(),
                "potential": ext.potential_pretty(),
                "dressed_polynomial": ext.dressed_polynomial().to_string(),
                "bound_states": states
                    .iter()
                    .map(|(m, e, p)| {
                        serde_json::json!({"label": m, "energy": e, "numerator": p})
                    })
                    .collect::<Vec<_>>(),
                "annihilator_orders": orders
                    .iter()
                    .map(|(q, o)| serde_json::json!({"shift": q, "order": o}))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        _ => {
            println!("diagram:        {}", set_label(&diagram.index_set()));
            println!("shape:          ({})", partition_label(&lambda));
            println!("regular:        {}", ext.is_regular());
            println!("potential:      {}", ext.potential_pretty());
            println!("dressed poly:   {}", ext.dressed_polynomial());
            println!("bound states (label, energy, numerator):");
            for (m, e, p) in &states {
                println!("  m={:<3} E={:<4} {}", m, e, p);
            }
            println!("annihilators (shift -> operator order):");
            for (q, o) in &orders {
                println!("  q={} -> order {}", q, o);
            }
        }
    }
    Ok(true)
}

struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        ok,
        detail: detail.into(),
    }
}

/// The full exact-identity suite for one shape. Every comparison is between
/// symbolic objects; a passing check certifies an identity, not a tolerance.
fn identity_suite(lambda: &Partition) -> Vec<Check> {
    let mut checks = Vec::new();
    let s = schur(lambda);
    checks.push(check(
        "schur-constructions-agree",
        s == schur_wronskian_form(lambda) && s == schur_via_raising(lambda),
        "determinant, derivative-wronskian, and raising constructions",
    ));

    let diagram = MayaDiagram::from_partition(lambda);
    let expected = specialize_classical(&s, &rat(-1, 4))
        .mul_scalar(&ratext_core::hermite::schur_route_factor(lambda));
    let det_ok = (-2..=2i64)
        .all(|n| normalized_pseudo_wronskian(&diagram.translate(n)) == expected);
    checks.push(check(
        "determinant-route",
        det_ok,
        "normalized determinant equals the specialized schur polynomial, shifts -2..2",
    ));

    let ext = RationalExtension::from_partition(lambda);
    let ham = ext.hamiltonian();
    let labels = diagram.complement_indices(6);
    let eigen_ok = labels.iter().all(|&m| {
        let psi = ext.eigenfunction(m);
        ham.apply(&psi)
            .sub(&psi.scale(&ratext_core::scalar::int(2 * m + 1)))
            .map(|d| d.is_zero())
            .unwrap_or(false)
    });
    checks.push(check(
        "eigenfunctions",
        eigen_ok,
        format!("labels {:?} solve the spectral problem exactly", labels),
    ));

    let threshold = lambda.critical_threshold();
    let q = if threshold == 0 { 1 } else { threshold };
    match ext.annihilator(q) {
        Ok(lad) => {
            let target = RationalExtension::new(diagram.flip_set(lad.kernel()));
            let inter_ok = lad
                .operator()
                .compose(&ham)
                .require_equal(&target.hamiltonian().compose(lad.operator()))
                .is_ok();
            checks.push(check(
                "intertwining",
                inter_ok,
                format!("operator of shift {} exchanges the two spectral problems", q),
            ));
            let kernel_ok = lad
                .kernel()
                .iter()
                .all(|k| lad.apply(&ext.eigenfunction(k)).is_zero());
            checks.push(check(
                "kernel-annihilation",
                kernel_ok,
                format!("kernel {} maps to zero", set_label(lad.kernel())),
            ));
            let ladder_ok = diagram
                .complement_indices((q + 8) as usize)
                .into_iter()
                .filter(|&m| !lad.kernel().contains(m))
                .take(3)
                .all(|m| {
                    lad.apply(&ext.eigenfunction(m))
                        == ext.eigenfunction(m - q).scale(&lad.eigenfactor(m))
                });
            checks.push(check(
                "ladder-prefactor",
                ladder_ok,
                "shift maps bound states with the predicted scale",
            ));
        }
        Err(e) => {
            checks.push(check(
                "intertwining",
                false,
                format!("shift {} unavailable: {}", q, e),
            ));
        }
    }

    let fam = CoherentFamily::new(lambda);
    checks.push(check(
        "evolution-identity",
        fam.evolution_defect().is_zero(),
        "generating function satisfies the first-order evolution relation",
    ));
    let shift_ok = fam.ladder_defect(q).map(|d| d.is_zero()).unwrap_or(false);
    checks.push(check(
        "shift-eigenvalue",
        shift_ok,
        format!("coherent state is a shift-{} eigenvector with eigenvalue z^{}", q, q),
    ));
    checks
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let diagram = resolve_diagram(&args.input)?;
    let lambda = diagram.partition();
    let checks = match args.q {
        Some(q) => {
            let fam = CoherentFamily::new(&lambda);
            let outcome = fam.ladder_defect(q);
            let (holds, detail) = match outcome {
                Ok(defect) if defect.is_zero() => {
                    (true, format!("shift {} fixes the coherent state up to z^{}", q, q))
                }
                Ok(_) => (false, format!("shift {} leaves a nonzero defect", q)),
                Err(CoreError::NotAnnihilator { witness, .. }) => (
                    false,
                    format!(
                        "shift {} rejected: kernel site {} lies inside the diagram, so its \
                         formal state grows",
                        q, witness
                    ),
                ),
                Err(e) => (false, format!("shift {} failed: {}", q, e)),
            };
            let ok = holds != args.expect_fail;
            let name = if args.expect_fail {
                "negative-control"
            } else {
                "shift-eigenvalue"
            };
            vec![check(name, ok, detail)]
        }
        None => identity_suite(&lambda),
    };
    let all_passed = checks.iter().all(|c| c.ok);
    match args.input.format {
        Format::Json => {
            let doc = serde_json::json!({
                "partition": lambda.parts(),
                "checks": checks
                    .iter()
                    .map(|c| serde_json::json!({"name": c.name, "ok": c.ok, "detail": c.detail}))
                    .collect::<Vec<_>>(),
                "all_passed": all_passed,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        _ => {
            println!("shape ({})", partition_label(&lambda));
            for c in &checks {
                println!("  [{}] {}: {}", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail);
            }
            println!("{}", if all_passed { "all checks passed" } else { "FAILURES" });
        }
    }
    Ok(all_passed)
}

fn cmd_uncertainty(args: &UncertaintyArgs) -> Result<bool> {
    let diagram = resolve_diagram(&args.input)?;
    if !diagram.is_regular() {
        bail!(
            "diagram {} is not regular: the potential has real poles, so the \
             uncertainty integrals do not exist",
            set_label(&diagram.index_set())
        );
    }
    let lambda = diagram.partition();
    let alphas = parse_alphas(&args.alpha)?;
    let times = parse_grid(&args.t)?;
    let mut settings = QuadratureSettings::default();
    if let Some(tol) = args.quad_tol {
        if !(tol > 0.0) {
            bail!("quadrature tolerance must be positive");
        }
        settings.rel_tol = tol;
    }
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let file_label = {
        let l = partition_label(&lambda);
        if l.is_empty() {
            "trivial".to_string()
        } else {
            l.replace(',', "-")
        }
    };
    let mut combined = String::new();
    for (i, &alpha) in alphas.iter().enumerate() {
        let report = uncertainty_product(&lambda, alpha, &times, &settings, args.quad_halfwidth)
            .context("uncertainty evaluation failed")?;
        if args.input.format == Format::Json {
            let doc = serde_json::json!({
                "partition": lambda.parts(),
                "alpha": alpha,
                "points": report
                    .points
                    .iter()
                    .map(|p| {
                        serde_json::json!({
                            "t": p.t,
                            "var_x": p.var_x,
                            "var_p": p.var_p,
                            "product": p.product,
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            continue;
        }
        let csv = report.to_csv();
        if i == 0 {
            combined.push_str(&csv);
        } else {
            let mut lines = csv.splitn(2, '\n');
            lines.next();
            if let Some(rest) = lines.next() {
                combined.push_str(rest);
            }
        }
        match &args.out {
            Some(dir) => {
                let path = dir.join(format!("uncertainty_{}_alpha{}.csv", file_label, alpha));
                std::fs::write(&path, &csv)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                println!("wrote {}", path.display());
            }
            None => print!("{}", csv),
        }
    }
    if let Some(dir) = &args.out {
        if alphas.len() > 1 {
            let path = dir.join(format!("uncertainty_{}_all.csv", file_label));
            std::fs::write(&path, &combined)
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("0").unwrap(), 0.0);
        assert_eq!(parse_scalar("1.5").unwrap(), 1.5);
        assert_eq!(parse_scalar("pi").unwrap(), PI);
        assert_eq!(parse_scalar("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_scalar("-pi").unwrap(), -PI);
        assert_eq!(parse_scalar("pi/2").unwrap(), PI / 2.0);
        assert_eq!(parse_scalar("-0.5pi").unwrap(), -0.5 * PI);
        assert_eq!(parse_scalar("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert!(parse_scalar("pix").is_err());
        assert!(parse_scalar("pi/0").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0:pi:3").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[0], 0.0);
        assert!((g[1] - PI / 2.0).abs() < 1e-15);
        assert!((g[2] - PI).abs() < 1e-15);
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:two").is_err());
    }

    #[test]
    fn index_set_parsing() {
        assert_eq!(parse_index_set("2,3").unwrap().as_slice(), &[2, 3]);
        assert_eq!(parse_index_set("-5,-4,-1,1,3,4").unwrap().as_slice(), &[-5, -4, -1, 1, 3, 4]);
        assert!(parse_index_set("").unwrap().as_slice().is_empty());
        assert!(parse_index_set("1,1").is_err());
        assert!(parse_index_set("a").is_err());
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!(parse_alphas("4,8,16").unwrap(), vec![4.0, 8.0, 16.0]);
        assert!(parse_alphas("0").is_err());
        assert!(parse_alphas("-2").is_err());
    }
}
