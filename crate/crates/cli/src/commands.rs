use std::fmt::Write;
use std::path::PathBuf;

use plate_core::specfn::{bessel_i, bessel_j, bessel_j_zero, gamma_nu, ratio_i};
use plate_core::twoball::{self, SweepRow};
use plate_core::{
    buckling_eigs, dirichlet_first_eig_ball, grad_norm_sq_u0, plate_eigfn_grad_norm_sq, plate_first_eig_ball,
    tau_threshold, torsion_ball, torsional_rigidity_ball, Ball64, Order64, TorsionStatus,
};
use plate_grid::rearrange::TrialRecord;
use plate_grid::verify::{comparison_shapes, run_studies, saint_venant_report, szego_report, ComparisonReport, SlopeReport};
use plate_grid::{
    convex_criterion, optimality_alpha, talenti_trials, verify_slopes, GridDomain, PlateSolver, Scheme, Shape,
    SignReport, TalentiSuite,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::*;
use crate::error::{usage, CliError, Result};
use crate::svg::{line_plot, Series};

/// What a command produced. `passed` is false when an assertion the
/// command checks did not hold.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub passed: bool,
    pub extra: Vec<(PathBuf, String)>,
}

impl Report {
    fn json<S: Serialize>(value: &S, passed: bool) -> Result<Self> {
        let mut body = serde_json::to_string_pretty(value)?;
        body.push('\n');
        Ok(Report { body, passed, extra: Vec::new() })
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Ball(a) => ball(a),
        Command::Torsion(a) => torsion(a),
        Command::Twoball(a) => two_ball(a),
        Command::GridEig(a) => grid_eig(a),
        Command::GridTorsion(a) => grid_torsion(a),
        Command::Verify(a) => verify(a),
        Command::Criteria(a) => criteria(a),
        Command::Specfn(a) => specfn(a),
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("--{name} must be finite")))
    }
}

#[derive(Debug, Serialize)]
pub struct BallRecord {
    pub d: u32,
    pub r: f64,
    pub tau: f64,
    pub gamma: Option<f64>,
    pub lambda: f64,
    pub buckling_first: f64,
    pub rigidity: Option<f64>,
    pub grad_norm_sq: Option<f64>,
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn ball(a: &BallArgs) -> Result<Report> {
    let tau = finite("tau", a.tau)?;
    let b = Ball64::new(a.d, a.r)?;
    let mut warnings = Vec::new();
    let lambda = dirichlet_first_eig_ball(&b)?;
    let buckling_first = buckling_eigs(&b, 1, 1)?[0].lambda;
    let t = torsion_ball(&b, tau)?;
    if t.status == TorsionStatus::NonExistent {
        warnings.push(format!("-tau = {} is a radial buckling eigenvalue: no torsion function", -tau));
    } else if t.near_singular {
        warnings.push("tau is near a radial buckling eigenvalue; rigidity is ill-conditioned".into());
    }
    if t.status == TorsionStatus::NonUniqueParticular {
        warnings.push("torsion function is unique only up to a non-radial buckling mode".into());
    }
    let (gamma, grad, alpha) = if tau >= 0.0 {
        let gamma = plate_first_eig_ball(&b, tau)?.gamma;
        let grad = if tau == 0.0 { grad_norm_sq_u0(&b)? } else { plate_eigfn_grad_norm_sq(&b, tau)? };
        let alpha = optimality_alpha(gamma, tau, a.d, b.volume(), grad)?.alpha;
        (Some(gamma), Some(grad), Some(alpha))
    } else {
        warnings.push("eigen quantities need tau >= 0; only the rigidity is reported".into());
        (None, None, None)
    };
    let rec = BallRecord {
        d: a.d,
        r: a.r,
        tau,
        gamma,
        lambda,
        buckling_first,
        rigidity: t.rigidity,
        grad_norm_sq: grad,
        alpha,
        warnings,
    };
    Report::json(&rec, true)
}

#[derive(Debug, Serialize)]
struct TorsionRecord {
    d: u32,
    r: f64,
    tau: f64,
    status: &'static str,
    near_singular: bool,
    rigidity: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    profile: Vec<(f64, f64)>,
}

fn torsion(a: &TorsionArgs) -> Result<Report> {
    let tau = finite("tau", a.tau)?;
    let b = Ball64::new(a.d, a.r)?;
    let t = torsion_ball(&b, tau)?;
    let status = match t.status {
        TorsionStatus::Unique => "unique",
        TorsionStatus::NonUniqueParticular => "non-unique-particular",
        TorsionStatus::NonExistent => "non-existent",
    };
    let profile = match (&t.profile, a.samples) {
        (Some(p), n) if n >= 2 => p.samples(n),
        _ => Vec::new(),
    };
    let rec = TorsionRecord { d: a.d, r: a.r, tau, status, near_singular: t.near_singular, rigidity: t.rigidity, profile };
    Report::json(&rec, true)
}

fn sorted_unique<T: Copy + PartialOrd>(v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.sort_by(|a, b| a.partial_cmp(b).expect("validated finite"));
    out.dedup();
    out
}

fn two_ball(a: &TwoBallArgs) -> Result<Report> {
    if a.tau.is_empty() {
        return Err(usage("--tau needs at least one value"));
    }
    if a.tau.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(usage("tensions must be finite and >= 0"));
    }
    if a.d.iter().any(|&d| d < 2) {
        return Err(usage("dimensions must be at least 2"));
    }
    if a.points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    let dims = sorted_unique(&a.d);
    let taus = sorted_unique(&a.tau);
    let grid: Vec<f64> = (1..=a.points).map(|k| k as f64 / (a.points + 1) as f64).collect();
    let sweeps =
        dims.par_iter().map(|&d| twoball::sweep(d, &taus, &grid)).collect::<std::result::Result<Vec<_>, _>>()?;
    let mut csv = String::from("d,tau,a,E\n");
    let mut series = Vec::new();
    let mut passed = true;
    for s in &sweeps {
        passed &= s.is_monotone();
        for r in &s.rows {
            let _ = writeln!(csv, "{},{:.16e},{:.16e},{:.16e}", r.d, r.tau, r.a, r.energy);
        }
        for chunk in s.rows.chunks(grid.len()) {
            let SweepRow { d, tau, .. } = chunk[0];
            series.push(Series { label: format!("d={d} tau={tau}"), points: chunk.iter().map(|r| (r.a, r.energy)).collect() });
        }
    }
    let extra = match &a.svg {
        Some(path) => vec![(path.clone(), line_plot(&series, "Two-ball energy", "a", "E(a, tau)"))],
        None => Vec::new(),
    };
    Ok(Report { body: csv, passed, extra })
}

fn size(v: Option<f64>, name: &str) -> Result<f64> {
    v.ok_or_else(|| usage(format!("--{name} is required for this shape")))
}

pub fn shape_from_args(s: &ShapeArgs) -> Result<Shape> {
    let shape = match (s.shape, s.unit_area) {
        (ShapeKind::Disk, true) => Shape::unit_area_disk(),
        (ShapeKind::Square, true) => Shape::unit_area_square(),
        (ShapeKind::Rect, true) => Shape::unit_area_rect(size(s.aspect, "aspect")?)?,
        (ShapeKind::Triangle, true) => Shape::unit_area_triangle(),
        (ShapeKind::LShape, true) => Shape::unit_area_l_shape(),
        (ShapeKind::Disk, false) => Shape::disk(s.radius.unwrap_or(1.0))?,
        (ShapeKind::Square, false) => Shape::square(s.side.unwrap_or(1.0))?,
        (ShapeKind::Rect, false) => match (s.width, s.height, s.aspect) {
            (Some(w), Some(h), None) => Shape::rect(w, h)?,
            (None, Some(h), Some(r)) => Shape::rect(r * h, h)?,
            (None, None, Some(r)) => Shape::rect(r, 1.0)?,
            _ => return Err(usage("rect needs --width and --height, or --aspect with optional --height")),
        },
        (ShapeKind::Triangle, false) => Shape::equilateral_triangle(s.side.unwrap_or(1.0))?,
        (ShapeKind::LShape, false) => Shape::l_shape(s.side.unwrap_or(1.0))?,
        (ShapeKind::Mask, _) => return Err(usage("a mask is not an analytic shape")),
    };
    Ok(shape)
}

fn grid_domain(a: &GridArgs) -> Result<GridDomain> {
    if !(a.h.is_finite() && a.h > 0.0) {
        return Err(usage("--h must be > 0"));
    }
    if !(a.tau.is_finite() && a.tau >= 0.0) {
        return Err(usage("--tau must be finite and >= 0"));
    }
    if a.shape.shape == ShapeKind::Mask {
        let path = a.shape.mask.as_ref().ok_or_else(|| usage("--shape mask needs --mask FILE"))?;
        return Ok(GridDomain::read_mask_file(path)?);
    }
    Ok(GridDomain::rasterize(&shape_from_args(&a.shape)?, a.h)?)
}

/// Exact area for analytic shapes, the cell count for masks.
fn reference_area(dom: &GridDomain) -> f64 {
    dom.shape().area().unwrap_or_else(|| dom.area())
}

#[derive(Debug, Serialize)]
struct GridEigRecord {
    shape: String,
    area: f64,
    h: f64,
    nodes: usize,
    tau: f64,
    scheme: Scheme,
    gamma: f64,
    disk_gamma: f64,
    iterations: usize,
    residual: f64,
    direct_residual: f64,
    sign: SignReport,
}

fn grid_eig(a: &GridArgs) -> Result<Report> {
    let dom = grid_domain(a)?;
    let e = PlateSolver::new(&dom, a.tau, a.scheme.into())?.eigen()?;
    let area = reference_area(&dom);
    let rec = GridEigRecord {
        shape: dom.shape().label(),
        area,
        h: dom.h(),
        nodes: dom.len(),
        tau: a.tau,
        scheme: e.scheme,
        gamma: e.gamma,
        disk_gamma: plate_first_eig_ball(&Ball64::with_volume(2, area)?, a.tau)?.gamma,
        iterations: e.solution.iterations,
        residual: e.solution.residual,
        direct_residual: e.solution.direct_residual,
        sign: e.sign,
    };
    Report::json(&rec, true)
}

#[derive(Debug, Serialize)]
struct GridTorsionRecord {
    shape: String,
    area: f64,
    h: f64,
    nodes: usize,
    tau: f64,
    scheme: Scheme,
    rigidity: f64,
    disk_rigidity: f64,
}

fn grid_torsion(a: &GridArgs) -> Result<Report> {
    let dom = grid_domain(a)?;
    let t = PlateSolver::new(&dom, a.tau, a.scheme.into())?.torsion()?;
    let area = reference_area(&dom);
    let rec = GridTorsionRecord {
        shape: dom.shape().label(),
        area,
        h: dom.h(),
        nodes: dom.len(),
        tau: a.tau,
        scheme: t.scheme,
        rigidity: t.rigidity,
        disk_rigidity: torsional_rigidity_ball(&Ball64::with_volume(2, area)?, a.tau)?,
    };
    Report::json(&rec, true)
}

#[derive(Debug, Serialize)]
pub struct TalentiOutput {
    pub summary: TalentiSuite,
    pub records: Vec<TrialRecord>,
}

#[derive(Debug, Default, Serialize)]
struct AllSuites {
    #[serde(skip_serializing_if = "Option::is_none")]
    szego: Option<ComparisonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    saintvenant: Option<ComparisonReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    talenti: Option<TalentiOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    slopes: Option<SlopeReport>,
    all_pass: bool,
}

/// Shapes for the slope sandwich: disk, square and triangle of unit area.
fn slope_shapes() -> Vec<Shape> {
    vec![Shape::unit_area_disk(), Shape::unit_area_square(), Shape::unit_area_triangle()]
}

fn verify(a: &VerifyArgs) -> Result<Report> {
    if !(a.h.is_finite() && a.h > 0.0 && a.h <= 0.25) {
        return Err(usage("--h must lie in (0, 0.25]"));
    }
    if a.tau.is_empty() || a.tau.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(usage("--tau needs finite values >= 0"));
    }
    if a.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let taus = sorted_unique(&a.tau);
    let mut out = AllSuites::default();
    let wants = |s: Suite| a.suite == s || a.suite == Suite::All;
    if wants(Suite::Szego) || wants(Suite::Saintvenant) {
        let studies = run_studies(&comparison_shapes(), &taus, a.h)?;
        if wants(Suite::Szego) {
            out.szego = Some(szego_report(&studies)?);
        }
        if wants(Suite::Saintvenant) {
            out.saintvenant = Some(saint_venant_report(&studies)?);
        }
    }
    if wants(Suite::Talenti) {
        let mut summary = talenti_trials(a.trials, a.seed, a.h)?;
        let records = std::mem::take(&mut summary.records);
        out.talenti = Some(TalentiOutput { summary, records });
    }
    if wants(Suite::Slopes) {
        out.slopes = Some(verify_slopes(&slope_shapes(), &taus, a.h)?);
    }
    out.all_pass = out.szego.as_ref().is_none_or(|r| r.all_hold)
        && out.saintvenant.as_ref().is_none_or(|r| r.all_hold)
        && out.talenti.as_ref().is_none_or(|t| t.summary.all_pass)
        && out.slopes.as_ref().is_none_or(|r| r.all_hold);
    let passed = out.all_pass;
    match a.suite {
        Suite::Szego => Report::json(&out.szego, passed),
        Suite::Saintvenant => Report::json(&out.saintvenant, passed),
        Suite::Talenti => Report::json(&out.talenti, passed),
        Suite::Slopes => Report::json(&out.slopes, passed),
        Suite::All => Report::json(&out, passed),
    }
}

#[derive(Debug, Serialize)]
struct CriteriaRecord {
    perimeter: f64,
    area: f64,
    value: f64,
    threshold: f64,
    passes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inconclusive: Option<String>,
}

fn criteria(a: &CriteriaArgs) -> Result<Report> {
    let (perimeter, area) = match (a.shape, a.perimeter, a.area) {
        (Some(kind), None, None) => {
            let s = shape_from_args(&ShapeArgs {
                shape: kind,
                radius: None,
                side: None,
                aspect: a.aspect,
                width: None,
                height: None,
                unit_area: true,
                mask: None,
            })?;
            (s.perimeter().expect("analytic"), s.area().expect("analytic"))
        }
        (None, Some(p), Some(ar)) => (p, ar),
        _ => return Err(usage("give either --shape or both --perimeter and --area")),
    };
    let c = convex_criterion(perimeter, area).map_err(CliError::from)?;
    let (mut tau_thr, mut inconclusive) = (None, None);
    match (a.omega_gamma0, a.omega_lambda) {
        (Some(g), Some(l)) => match tau_threshold(g, l, &Ball64::with_volume(2, area)?) {
            Ok(t) => tau_thr = Some(t),
            Err(plate_core::Error::CriterionFails(msg)) => inconclusive = Some(msg),
            Err(e) => return Err(e.into()),
        },
        (None, None) => {}
        _ => return Err(usage("--omega-gamma0 and --omega-lambda go together")),
    }
    let rec = CriteriaRecord {
        perimeter,
        area,
        value: c.value,
        threshold: c.threshold,
        passes: c.passes,
        tau_threshold: tau_thr,
        inconclusive,
    };
    Report::json(&rec, true)
}

#[derive(Debug, Serialize)]
struct SpecfnRecord {
    nu: f64,
    gamma_nu: f64,
    zeros: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<f64>,
    /// I_ν(x)/I_{ν+1}(x).
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_i: Option<f64>,
}

fn specfn(a: &SpecfnArgs) -> Result<Report> {
    let order = match a.nu {
        Some(nu) => Order64::new(nu)?,
        None => Order64::from_dimension(a.d)?,
    };
    let zeros = (1..=a.zeros).map(|i| bessel_j_zero(order, i)).collect::<std::result::Result<Vec<_>, _>>()?;
    let (j, i, ratio) = match a.x {
        Some(x) => (
            Some(bessel_j(order, x)?),
            Some(bessel_i(order, x)?),
            if x > 0.0 { Some(ratio_i(order, x)?) } else { None },
        ),
        None => (None, None, None),
    };
    let rec = SpecfnRecord { nu: order.value(), gamma_nu: gamma_nu(order)?, zeros, x: a.x, j, i, ratio_i: ratio };
    Report::json(&rec, true)
}
