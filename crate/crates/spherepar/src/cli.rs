//! Verification drivers behind the `spherepar` binary: run a configured
//! check suite over a frame, evaluate a frame at a supplied point, or
//! exercise the product-of-spheres embedding. The binary is a thin argument
//! parser over [`cmd_verify`], [`cmd_eval`], and [`cmd_embed`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frames;
use crate::geometry::{
    sample_points, AmbientVector, Frame, FrameKind, ProductPoint, SpherePoint,
};
use crate::hopf;
use crate::identities::{
    self, bracket_table_checks, change_of_basis_checks, meridian_radial_sum_check,
    specialization_checks_n1, structure_equation_checks, torsion_frame_sum_check,
    BracketTableKind, StructureKind, SymbolicBudget,
};
use crate::kervaire::{
    embed, immersion_rank, recursion_floors, round_trip_residual, sample_multi_points,
    EmbeddingSpec,
};
use crate::polybracket::{frame_as_poly, lie_bracket, point_coords};
use crate::report::{timed, Check, ConfigEcho, ConfigValue, Status, VerificationReport};
use crate::tol;

/// Number of upstairs points for the Hopf pushforward cross-checks.
const HOPF_POINTS: usize = 200;
/// Number of (permutation, point) pairs for the equivariance check.
const PERMUTATION_PAIRS: usize = 100;

/// Which frame family a verification run targets. `B` resolves to the
/// meridian frame for n = 1 and its quaternionic extension for n = 3;
/// `P` is the general frame for any odd n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameChoice {
    B,
    P,
}

impl FrameChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            FrameChoice::B => "B",
            FrameChoice::P => "P",
        }
    }
}

/// Configuration of a verification run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub frame: FrameChoice,
    pub m: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub symbolic: bool,
    pub timings: bool,
    pub budget: SymbolicBudget,
}

impl RunConfig {
    pub fn new(frame: FrameChoice, m: usize, n: usize) -> Self {
        Self {
            frame,
            m,
            n,
            samples: 1000,
            seed: 42,
            tolerance: tol::DEFAULT_NUMERIC,
            symbolic: false,
            timings: false,
            budget: SymbolicBudget::from_env(),
        }
    }

    /// Resolve the frame kind, rejecting incompatible (frame, n) pairs.
    pub fn frame_kind(&self) -> Result<FrameKind> {
        if self.m < 1 || self.n < 1 {
            return Err(Error::InvalidConfig(format!(
                "m and n must be at least 1, got m={}, n={}",
                self.m, self.n
            )));
        }
        if self.samples < 1 {
            return Err(Error::InvalidConfig("samples must be at least 1".into()));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        match self.frame {
            FrameChoice::B => match self.n {
                1 => Ok(FrameKind::BS1),
                3 => Ok(FrameKind::BS3),
                n if n % 2 == 0 => Err(Error::InvalidConfig(format!(
                    "frame B needs an odd fiber; n = {n} is even"
                ))),
                n => Err(Error::InvalidConfig(format!(
                    "frame B is shipped for n = 1 or 3 only, got n = {n}; use frame P"
                ))),
            },
            FrameChoice::P => {
                if self.n.is_multiple_of(2) {
                    Err(Error::InvalidConfig(format!(
                        "frame P needs odd n, got n = {}",
                        self.n
                    )))
                } else {
                    Ok(FrameKind::P)
                }
            }
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho::new("verify")
            .push("frame", ConfigValue::Str(self.frame.as_str().into()))
            .push("m", ConfigValue::Int(self.m as i64))
            .push("n", ConfigValue::Int(self.n as i64))
            .push("samples", ConfigValue::Int(self.samples as i64))
            .push("seed", ConfigValue::Int(self.seed as i64))
            .push("tolerance", ConfigValue::Float(self.tolerance))
            .push("symbolic", ConfigValue::Bool(self.symbolic))
            .push("timings", ConfigValue::Bool(self.timings))
    }
}

fn build_frame(kind: FrameKind, point: &ProductPoint) -> Result<Frame> {
    match kind {
        FrameKind::BS1 => frames::frame_b_s1(point),
        FrameKind::BS3 => frames::frame_b_s3(point),
        FrameKind::P => frames::frame_p(point),
        FrameKind::BGeneric => Err(Error::InvalidConfig(
            "generic frames need a supplied fiber frame".into(),
        )),
    }
}

fn orthonormality_tag(kind: FrameKind) -> &'static str {
    match kind {
        FrameKind::BS1 => "remor",
        FrameKind::BS3 => "remor3",
        _ => "frame",
    }
}

fn coframe_tag(kind: FrameKind) -> &'static str {
    match kind {
        FrameKind::BS1 => "cobruni1",
        FrameKind::BS3 => "cobruni3",
        _ => "frame",
    }
}

/// Run the full check suite for a configuration. Checks that do not apply
/// to the configuration are reported as skipped rather than omitted, so a
/// report always has the same shape for a given (frame, n) class.
pub fn cmd_verify(cfg: &RunConfig) -> Result<VerificationReport> {
    let kind = cfg.frame_kind()?;
    let mut report = VerificationReport::new(cfg.echo());
    let points = sample_points(cfg.m, cfg.n, cfg.seed, cfg.samples)?;

    // orthonormality and tangency over the sample set
    let (residuals, ms) = timed(cfg.timings, || -> Result<(f64, f64)> {
        let mut gram = 0.0f64;
        let mut tangency = 0.0f64;
        for p in &points {
            let f = build_frame(kind, p)?;
            gram = gram.max(f.max_gram_residual()?);
            tangency = tangency.max(f.max_tangency_residual());
        }
        Ok((gram, tangency))
    });
    let (gram_residual, tangency_residual) = residuals?;
    report.checks.push(
        Check::from_residual(
            "frame_orthonormal",
            orthonormality_tag(kind),
            gram_residual,
            cfg.tolerance,
        )
        .with_ms(ms),
    );
    report.checks.push(Check::from_residual(
        "frame_tangent",
        orthonormality_tag(kind),
        tangency_residual,
        tol::TANGENCY * 10.0,
    ));

    // coframe duality
    let (duality, ms) = timed(cfg.timings, || -> Result<f64> {
        let mut worst = 0.0f64;
        for p in &points {
            let f = build_frame(kind, p)?;
            let cf = frames::coframe(&f)?;
            for (a, row) in cf.pairing(&f).iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    let target = if a == b { 1.0 } else { 0.0 };
                    worst = worst.max((v - target).abs());
                }
            }
        }
        Ok(worst)
    });
    report.checks.push(
        Check::from_residual("coframe_duality", coframe_tag(kind), duality?, cfg.tolerance)
            .with_ms(ms),
    );

    // the fiber 1-form recovered from the coframe: T = sum x_i b_i
    if matches!(kind, FrameKind::BS1 | FrameKind::BS3) {
        let (residual, ms) = timed(cfg.timings, || -> Result<f64> {
            let mut worst = 0.0f64;
            for p in &points {
                let f = build_frame(kind, p)?;
                let (xl, yl) = f.vectors()[0].dims();
                let mut acc = AmbientVector::zeros(xl, yl);
                for i in 1..=cfg.m + 1 {
                    acc = acc.add(&f.vector(i).scale(p.x.coord(i)));
                }
                let t = crate::geometry::torsion(&p.y)?;
                let target = AmbientVector::new(vec![0.0; xl], t.xpart);
                worst = worst.max(acc.sub(&target).max_abs());
            }
            Ok(worst)
        });
        let tag = if cfg.n == 1 { "dθ=Σx_i b^i" } else { "τ=Σx_i b^i" };
        report.checks.push(
            Check::from_residual("fiber_form_from_coframe", tag, residual?, cfg.tolerance)
                .with_ms(ms),
        );
    } else {
        report.checks.push(Check::skipped(
            "fiber_form_from_coframe",
            "τ=Σx_i b^i",
        ));
    }

    // bracket table, numeric always, symbolic when requested
    let table_kind = match kind {
        FrameKind::BS1 => BracketTableKind::BS1,
        FrameKind::BS3 => BracketTableKind::BS3,
        FrameKind::P if cfg.n == 1 => BracketTableKind::PN1,
        _ => BracketTableKind::PGeneral,
    };
    report.checks.extend(bracket_table_checks(
        table_kind,
        cfg.m,
        cfg.n,
        cfg.samples,
        cfg.seed,
        cfg.tolerance,
        cfg.symbolic,
        cfg.budget,
        cfg.timings,
    )?);

    if cfg.symbolic {
        report
            .checks
            .push(identities::bracket_tangency_check(table_kind, cfg.m, cfg.n)?);
        if table_kind == BracketTableKind::PN1 {
            report
                .checks
                .extend(specialization_checks_n1(cfg.m, cfg.timings)?);
        }
        report.checks.push(meridian_radial_sum_check(cfg.m, cfg.n));
        if matches!(kind, FrameKind::BS1 | FrameKind::BS3) {
            report.checks.push(torsion_frame_sum_check(kind, cfg.m)?);
        }
    }

    // structure equations where a closed form exists
    let structure = match kind {
        FrameKind::BS1 => Some(StructureKind::BS1),
        FrameKind::BS3 => Some(StructureKind::BS3),
        FrameKind::P if cfg.n == 1 => Some(StructureKind::PN1),
        _ => None,
    };
    match structure {
        Some(s) => report.checks.push(structure_equation_checks(
            s,
            cfg.m,
            cfg.samples,
            cfg.seed,
            cfg.tolerance,
            cfg.timings,
        )?),
        None => report.checks.push(Check::skipped(
            "structure_equations[P]",
            "diff1genp",
        )),
    }

    // change of basis relates P to B for the two small fibers
    if cfg.n == 1 || cfg.n == 3 {
        report.checks.extend(change_of_basis_checks(
            cfg.m,
            cfg.n,
            cfg.samples,
            cfg.seed,
            cfg.symbolic,
            cfg.timings,
        )?);
    } else {
        report.checks.push(Check::skipped(
            "frame_p_equals_b_times_a",
            "changebtop",
        ));
    }

    // quotient-construction checks only make sense over a circle fiber
    if cfg.n == 1 {
        report.checks.extend(hopf_checks(cfg)?);
        report.checks.push(permutation_check(cfg)?);
    } else {
        report
            .checks
            .push(Check::skipped("hopf_pushforward_fd", "pstar"));
        report
            .checks
            .push(Check::skipped("permutation_equivariance", "lemgen"));
    }

    Ok(report)
}

fn hopf_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let upstairs = hopf::sample_upstairs(cfg.m, cfg.seed, HOPF_POINTS, 0.5, 2.0);
    let mut checks = Vec::new();

    // invariance of the projection under the group generator
    let (invariance, ms) = timed(cfg.timings, || -> Result<f64> {
        let period = std::f64::consts::TAU.exp();
        let mut worst = 0.0f64;
        for x in &upstairs {
            let scaled = hopf::UpstairsPoint::new(
                x.coords().iter().map(|c| c * period).collect(),
            )?;
            let a = hopf::project(x);
            let b = hopf::project(&scaled);
            for (u, v) in a
                .x
                .coords()
                .iter()
                .chain(a.y.coords())
                .zip(b.x.coords().iter().chain(b.y.coords()))
            {
                worst = worst.max((u - v).abs());
            }
        }
        Ok(worst)
    });
    // one period of the dilation loses ~e^{2 pi} of relative precision
    checks.push(
        Check::from_residual("projection_invariance", "projm1", invariance?, 1e-9).with_ms(ms),
    );

    let (fd, ms) = timed(cfg.timings, || -> Result<f64> {
        let mut worst = 0.0f64;
        for x in &upstairs {
            worst = worst.max(hopf::pushforward_fd_residual(x)?);
        }
        Ok(worst)
    });
    checks.push(
        Check::from_residual("hopf_pushforward_fd", "pstar", fd?, tol::FD_TOL).with_ms(ms),
    );

    let (pushed, ms) = timed(cfg.timings, || -> Result<f64> {
        let mut worst = 0.0f64;
        for x in &upstairs {
            let pf = hopf::pushed_frame(x)?;
            let direct = frames::frame_b_s1(&hopf::project(x))?;
            for (a, b) in pf.vectors().iter().zip(direct.vectors()) {
                worst = worst.max(a.sub(b).max_abs());
            }
        }
        Ok(worst)
    });
    checks.push(
        Check::from_residual(
            "pushed_frame_equals_meridian_frame",
            "progeo",
            pushed?,
            tol::EXACT_EVAL,
        )
        .with_ms(ms),
    );
    Ok(checks)
}

fn permutation_check(cfg: &RunConfig) -> Result<Check> {
    let (residual, ms) = timed(cfg.timings, || -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e3779b97f4a7c15);
        let mut worst = 0.0f64;
        for _ in 0..PERMUTATION_PAIRS {
            let pi = hopf::sample_permutation(cfg.m + 1, &mut rng);
            let point_seed: u64 = rng.random();
            let point = crate::geometry::sample_point(cfg.m, 1, point_seed)?;
            worst = worst.max(pi.equivariance_residual(&point)?);
        }
        Ok(worst)
    });
    Ok(
        Check::from_residual("permutation_equivariance", "lemgen", residual?, tol::EXACT_EVAL)
            .with_ms(ms),
    )
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

/// Configuration for evaluating a frame at one supplied point.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub frame: FrameChoice,
    pub m: usize,
    pub n: usize,
    pub point: ProductPoint,
    pub bracket: Option<(usize, usize)>,
}

/// Parse a point from whitespace-separated decimals: the first m+1 numbers
/// are x, the next n+1 are y. Reports the 1-based line of the first bad
/// token.
pub fn parse_point_text(text: &str, m: usize, n: usize) -> Result<ProductPoint> {
    let expected = (m + 1) + (n + 1);
    let mut values = Vec::with_capacity(expected);
    let mut last_line = 1;
    for (lineno, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            last_line = lineno + 1;
            let v: f64 = token.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("expected a decimal number, got {token:?}"),
            })?;
            values.push(v);
        }
    }
    if values.len() != expected {
        return Err(Error::Parse {
            line: last_line,
            message: format!(
                "expected {expected} numbers ({} for x, {} for y), got {}",
                m + 1,
                n + 1,
                values.len()
            ),
        });
    }
    let y = values.split_off(m + 1);
    Ok(ProductPoint::new(
        SpherePoint::new(values)?,
        SpherePoint::new(y)?,
    ))
}

fn format_vector(v: &AmbientVector) -> String {
    let xs: Vec<String> = v.xpart.iter().map(|c| format!("{c:+.16e}")).collect();
    let ys: Vec<String> = v.ypart.iter().map(|c| format!("{c:+.16e}")).collect();
    format!("[{} | {}]", xs.join(", "), ys.join(", "))
}

/// Print the frame, its Gram residual, and optionally one bracket at the
/// point: the closed-form value, the oracle value, and both expanded in
/// frame coefficients (inner products against the orthonormal frame).
pub fn cmd_eval(cfg: &EvalConfig) -> Result<String> {
    let run = RunConfig::new(cfg.frame, cfg.m, cfg.n);
    let kind = run.frame_kind()?;
    if cfg.point.m() != cfg.m || cfg.point.n() != cfg.n {
        return Err(Error::InvalidConfig(format!(
            "point dimensions ({}, {}) do not match (m, n) = ({}, {})",
            cfg.point.m(),
            cfg.point.n(),
            cfg.m,
            cfg.n
        )));
    }
    let frame = build_frame(kind, &cfg.point)?;
    let mut out = String::new();
    out.push_str(&format!(
        "frame {} on S^{} x S^{} ({} fields)\n",
        kind.as_str(),
        cfg.m,
        cfg.n,
        frame.len()
    ));
    out.push_str(&format!(
        "point: x = {:?}, y = {:?}\n",
        cfg.point.x.coords(),
        cfg.point.y.coords()
    ));
    for (i, v) in frame.vectors().iter().enumerate() {
        out.push_str(&format!("  {}_{} = {}\n", frame_letter(kind), i + 1, format_vector(v)));
    }
    out.push_str(&format!(
        "gram residual: {:.3e}\ntangency residual: {:.3e}\n",
        frame.max_gram_residual()?,
        frame.max_tangency_residual()
    ));

    if let Some((i, j)) = cfg.bracket {
        let table_kind = match kind {
            FrameKind::BS1 => BracketTableKind::BS1,
            FrameKind::BS3 => BracketTableKind::BS3,
            FrameKind::P if cfg.n == 1 => BracketTableKind::PN1,
            _ => BracketTableKind::PGeneral,
        };
        let table = identities::BracketTable::new(table_kind, cfg.m, cfg.n)?;
        let closed = table.entry(i, j)?.eval(&cfg.point);
        let fields = frame_as_poly(kind, cfg.m, cfg.n)?;
        if i < 1 || i > fields.len() || j < 1 || j > fields.len() {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                max: fields.len(),
            });
        }
        let oracle = lie_bracket(&fields[i - 1], &fields[j - 1])
            .to_numeric()
            .eval(&point_coords(&cfg.point));
        out.push_str(&format!("bracket ({i}, {j}) at the point:\n"));
        out.push_str(&format!("  closed form: {}\n", format_vector(&closed)));
        out.push_str(&format!("  oracle:      {}\n", format_vector(&oracle)));
        let coeff_fmt = |v: &AmbientVector| {
            frame
                .coefficients(v)
                .iter()
                .map(|c| format!("{c:+.16e}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        out.push_str(&format!(
            "  frame coefficients (closed): [{}]\n",
            coeff_fmt(&closed)
        ));
        out.push_str(&format!(
            "  frame coefficients (oracle): [{}]\n",
            coeff_fmt(&oracle)
        ));
        out.push_str(&format!(
            "  difference max component: {:.3e}\n",
            closed.sub(&oracle).max_abs()
        ));
    }
    Ok(out)
}

fn frame_letter(kind: FrameKind) -> &'static str {
    match kind {
        FrameKind::P => "p",
        _ => "b",
    }
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

/// Configuration for the embedding report.
#[derive(Debug, Clone)]
pub struct EmbedConfig {
    pub dims: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub timings: bool,
}

impl EmbedConfig {
    pub fn new(dims: Vec<usize>) -> Self {
        Self {
            dims,
            samples: 500,
            seed: 42,
            timings: false,
        }
    }
}

/// Round-trip, immersion-rank, output-dimension, and shift-floor checks for
/// the recursive embedding of a product of spheres.
pub fn cmd_embed(cfg: &EmbedConfig) -> Result<VerificationReport> {
    let spec = EmbeddingSpec::new(cfg.dims.clone())?;
    let config = ConfigEcho::new("embed")
        .push(
            "dims",
            ConfigValue::IntList(cfg.dims.iter().map(|&d| d as i64).collect()),
        )
        .push("samples", ConfigValue::Int(cfg.samples as i64))
        .push("seed", ConfigValue::Int(cfg.seed as i64))
        .push("timings", ConfigValue::Bool(cfg.timings));
    let mut report = VerificationReport::new(config);
    let points = sample_multi_points(&cfg.dims, cfg.seed, cfg.samples)?;
    let expected_rank: usize = cfg.dims.iter().sum();

    let (roundtrip, ms) = timed(cfg.timings, || -> Result<f64> {
        let mut worst = 0.0f64;
        for p in &points {
            worst = worst.max(round_trip_residual(&spec, p)?);
        }
        Ok(worst)
    });
    report.checks.push(
        Check::from_residual(
            "embedding_roundtrip",
            "kervaire-step1",
            roundtrip?,
            tol::ROUNDTRIP,
        )
        .with_ms(ms),
    );

    let (ranks, ms) = timed(cfg.timings, || -> Result<(usize, usize)> {
        let mut lo = usize::MAX;
        let mut hi = 0usize;
        for p in &points {
            let r = immersion_rank(&spec, p)?;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        Ok((lo, hi))
    });
    let (lo, hi) = ranks?;
    let rank_ok = lo == expected_rank && hi == expected_rank;
    report.checks.push(
        Check::new(
            "immersion_rank",
            "kervaire-step1",
            if rank_ok { Status::Pass } else { Status::Fail },
        )
        .with_normal_form(format!(
            "rank min={lo} max={hi} expected={expected_rank} over {} points",
            points.len()
        ))
        .with_ms(ms),
    );

    let dim_ok = points
        .iter()
        .take(1)
        .map(|p| embed(&spec, p).map(|v| v.len()))
        .next()
        .transpose()?
        == Some(spec.output_dim());
    report.checks.push(
        Check::new(
            "output_dimension",
            "kervaire-step1",
            if dim_ok { Status::Pass } else { Status::Fail },
        )
        .with_normal_form(format!("{}", spec.output_dim())),
    );

    let (floor, ms) = timed(cfg.timings, || -> Result<f64> {
        let mut lowest = f64::INFINITY;
        for p in &points {
            for v in recursion_floors(&spec, p)? {
                lowest = lowest.min(v);
            }
        }
        Ok(lowest)
    });
    let lowest = floor?;
    let floor_ok = cfg.dims.len() == 1 || lowest >= 1.0 - 1e-12;
    report.checks.push(
        Check::new(
            "recursion_shift_floor",
            "kervaire-step1",
            if floor_ok { Status::Pass } else { Status::Fail },
        )
        .with_normal_form(if cfg.dims.len() == 1 {
            "no recursion levels for a single factor".to_string()
        } else {
            format!("lowest first coordinate entering a level: {lowest:.6}")
        })
        .with_ms(ms),
    );

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_runs_clean_for_each_frame_class() {
        for (frame, m, n) in [
            (FrameChoice::B, 2, 1),
            (FrameChoice::B, 2, 3),
            (FrameChoice::P, 2, 1),
            (FrameChoice::P, 2, 3),
            (FrameChoice::P, 2, 5),
        ] {
            let mut cfg = RunConfig::new(frame, m, n);
            cfg.samples = 25;
            cfg.symbolic = true;
            let report = cmd_verify(&cfg).unwrap();
            assert!(
                report.all_passed(),
                "frame {frame:?} (m,n)=({m},{n}):\n{}",
                report.to_text()
            );
        }
    }

    #[test]
    fn verify_rejects_bad_configs() {
        let cfg = RunConfig::new(FrameChoice::B, 2, 2);
        assert!(matches!(cmd_verify(&cfg), Err(Error::InvalidConfig(_))));
        let cfg = RunConfig::new(FrameChoice::P, 2, 4);
        assert!(matches!(cmd_verify(&cfg), Err(Error::InvalidConfig(_))));
        let mut cfg = RunConfig::new(FrameChoice::B, 2, 1);
        cfg.samples = 0;
        assert!(matches!(cmd_verify(&cfg), Err(Error::InvalidConfig(_))));
        let cfg = RunConfig::new(FrameChoice::B, 2, 5);
        assert!(matches!(cmd_verify(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn verify_budget_refusal_propagates() {
        let mut cfg = RunConfig::new(FrameChoice::P, 9, 5);
        cfg.samples = 2;
        cfg.symbolic = true;
        cfg.budget = SymbolicBudget { max_total_dim: 10 };
        assert!(matches!(
            cmd_verify(&cfg),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn verify_json_is_byte_identical_across_runs() {
        let mut cfg = RunConfig::new(FrameChoice::P, 3, 1);
        cfg.samples = 10;
        cfg.symbolic = true;
        let a = cmd_verify(&cfg).unwrap().to_json();
        let b = cmd_verify(&cfg).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_point_text_reports_lines() {
        let p = parse_point_text("1 0 0\n1 0", 2, 1).unwrap();
        assert_eq!(p.x.coords(), &[1.0, 0.0, 0.0]);
        let err = parse_point_text("1 0 0\n1 oops", 2, 1).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_point_text("1 0 0", 2, 1).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn eval_prints_frame_and_bracket() {
        let point = parse_point_text("0 0 1 0.6 0.8", 2, 1).unwrap();
        let cfg = EvalConfig {
            frame: FrameChoice::B,
            m: 2,
            n: 1,
            point,
            bracket: Some((1, 2)),
        };
        let text = cmd_eval(&cfg).unwrap();
        assert!(text.contains("frame B_S1"));
        assert!(text.contains("bracket (1, 2)"));
        assert!(text.contains("frame coefficients"));
    }

    #[test]
    fn embed_report_passes() {
        let mut cfg = EmbedConfig::new(vec![1, 1, 2]);
        cfg.samples = 25;
        let report = cmd_embed(&cfg).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
        let json = report.to_json();
        assert!(json.contains("\"dims\": [1, 1, 2]"));
    }
}
