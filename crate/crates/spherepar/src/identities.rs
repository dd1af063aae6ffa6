//! Closed-form right-hand sides of every bracket table and structure
//! equation satisfied by the explicit frames, plus the harness that proves
//! them against the exact Lie-bracket oracle and numeric sampling.
//!
//! Sign convention for the stacked +- symbols in the general table: an odd
//! index takes the upper sign together with the +1 index shift, an even
//! index the lower sign with the -1 shift. This is the unique reading under
//! which the general table specializes to the printed n = 1 table, which
//! [`verify_specialization_n1`] checks exactly.

use crate::error::{Error, Result};
use crate::frames;
use crate::geometry::{sample_points, Frame, FrameKind, ProductPoint};
use crate::polybracket::{
    frame_as_poly, lie_bracket, point_coords, radial_x_field, radial_y_field, rat,
    torsion_field, x_aux_field, PolyVectorField, SparsePoly, SphereIdeal, VarSet,
};
use crate::report::{timed, Check, ConfigEcho, ConfigValue, VerificationReport};

/// How many sample points to throw at a nonzero normal form, to separate a
/// genuine counterexample from a reduction bug.
const NORMAL_FORM_PROBES: usize = 100;

// ---------------------------------------------------------------------------
// Budget
// ---------------------------------------------------------------------------

/// Size gate for symbolic verification. The cost driver is the number of
/// bracket pairs times the term growth in m + n + 2 variables, so the knob
/// is the total dimension m + n.
#[derive(Debug, Clone, Copy)]
pub struct SymbolicBudget {
    pub max_total_dim: usize,
}

impl Default for SymbolicBudget {
    fn default() -> Self {
        Self { max_total_dim: 12 }
    }
}

impl SymbolicBudget {
    /// Default budget, raised by the SPHEREPAR_BUDGET environment variable
    /// when it parses as an integer.
    pub fn from_env() -> Self {
        match std::env::var("SPHEREPAR_BUDGET") {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(limit) => Self {
                    max_total_dim: limit,
                },
                Err(_) => Self::default(),
            },
            Err(_) => Self::default(),
        }
    }

    pub fn admit(&self, kind: BracketTableKind, m: usize, n: usize) -> Result<()> {
        if m + n > self.max_total_dim {
            let size = kind.frame_size(m, n);
            let pairs = size * (size - 1) / 2;
            return Err(Error::BudgetExceeded {
                estimate: format!(
                    "{} with m={m}, n={n}: {pairs} bracket pairs over {} variables",
                    kind.as_str(),
                    m + n + 2
                ),
                limit: self.max_total_dim,
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Helper quantities of the general table
// ---------------------------------------------------------------------------

/// C_{j,k} = y_j t_k - y_k t_j and its companion
/// D_{j,k} = 2 C_{j,k} -+ delta_{k, j +- 1} +- delta_{j, k +- 1}, where each
/// stacked sign resolves by the parity of its governing index: odd takes
/// the upper sign and the +1 shift, even the lower sign and the -1 shift.
pub fn helper_quantities(vars: VarSet, j: usize, k: usize) -> (SparsePoly, SparsePoly) {
    let c = &(&SparsePoly::y(vars, j) * &SparsePoly::t(vars, k))
        - &(&SparsePoly::y(vars, k) * &SparsePoly::t(vars, j));
    let mut d_const = 0i64;
    if j % 2 == 1 {
        if k == j + 1 {
            d_const -= 1;
        }
    } else if k == j - 1 {
        d_const += 1;
    }
    if k % 2 == 1 {
        if j == k + 1 {
            d_const += 1;
        }
    } else if j == k - 1 {
        d_const -= 1;
    }
    let d = &c.scale(&rat(2)) + &SparsePoly::constant(vars, rat(d_const));
    (c, d)
}

// ---------------------------------------------------------------------------
// Bracket tables
// ---------------------------------------------------------------------------

/// Which closed-form bracket table to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketTableKind {
    /// [b_i, b_j] = x_i b_j - x_j b_i on S^m x S^1.
    BS1,
    /// The quaternionic table on S^m x S^3.
    BS3,
    /// The printed n = 1 table for the frame P.
    PN1,
    /// The general table for the frame P, any odd n.
    PGeneral,
}

impl BracketTableKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BracketTableKind::BS1 => "B_S1",
            BracketTableKind::BS3 => "B_S3",
            BracketTableKind::PN1 => "P(n=1)",
            BracketTableKind::PGeneral => "P",
        }
    }

    pub fn paper_tag(&self) -> &'static str {
        match self {
            BracketTableKind::BS1 => "bracket1gen",
            BracketTableKind::BS3 => "bracket3gen",
            BracketTableKind::PN1 => "bracket1genp",
            BracketTableKind::PGeneral => "genbracket",
        }
    }

    pub fn frame_kind(&self) -> FrameKind {
        match self {
            BracketTableKind::BS1 => FrameKind::BS1,
            BracketTableKind::BS3 => FrameKind::BS3,
            BracketTableKind::PN1 | BracketTableKind::PGeneral => FrameKind::P,
        }
    }

    /// Number of frame fields: m + n for every table (the meridian frame
    /// has m+1 fields with n = 1, the quaternionic one m+3 with n = 3).
    pub fn frame_size(&self, m: usize, n: usize) -> usize {
        m + n
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            BracketTableKind::BS1 | BracketTableKind::PN1 if n != 1 => {
                Err(Error::DimensionMismatch { expected: 1, actual: n })
            }
            BracketTableKind::BS3 if n != 3 => {
                Err(Error::DimensionMismatch { expected: 3, actual: n })
            }
            BracketTableKind::PGeneral if n.is_multiple_of(2) => Err(Error::ParityRequired(n)),
            _ => Ok(()),
        }
    }
}

/// A closed-form bracket table over the symbolic frame fields. Entries are
/// expanded into ambient polynomial components on demand; the table is
/// antisymmetric by construction where the display covers one ordering only,
/// and the displayed families are antisymmetric as written.
#[derive(Debug, Clone)]
pub struct BracketTable {
    kind: BracketTableKind,
    m: usize,
    n: usize,
    vars: VarSet,
    fields: Vec<PolyVectorField>,
}

impl BracketTable {
    pub fn new(kind: BracketTableKind, m: usize, n: usize) -> Result<Self> {
        kind.validate(n)?;
        if m < 1 {
            return Err(Error::DimensionTooSmall(m));
        }
        let fields = frame_as_poly(kind.frame_kind(), m, n)?;
        Ok(Self {
            kind,
            m,
            n,
            vars: VarSet::new(m, n),
            fields,
        })
    }

    pub fn kind(&self) -> BracketTableKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.fields.len()
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    /// The symbolic frame fields the table is expressed in.
    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    fn field(&self, a: usize) -> &PolyVectorField {
        &self.fields[a - 1]
    }

    fn x(&self, i: usize) -> SparsePoly {
        SparsePoly::x(self.vars, i)
    }

    fn y(&self, j: usize) -> SparsePoly {
        SparsePoly::y(self.vars, j)
    }

    fn t(&self, j: usize) -> SparsePoly {
        SparsePoly::t(self.vars, j)
    }

    /// The closed-form right-hand side for the pair (i, j), 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Result<PolyVectorField> {
        let size = self.size();
        if i < 1 || i > size {
            return Err(Error::IndexOutOfRange { index: i, max: size });
        }
        if j < 1 || j > size {
            return Err(Error::IndexOutOfRange { index: j, max: size });
        }
        if i == j {
            return Ok(PolyVectorField::zero(self.vars));
        }
        match self.kind {
            BracketTableKind::BS1 => Ok(self.rotation_pair(i, j)),
            BracketTableKind::BS3 => Ok(self.entry_bs3(i, j)),
            BracketTableKind::PN1 => Ok(self.entry_pn1(i, j)),
            BracketTableKind::PGeneral => Ok(self.entry_general(i, j)),
        }
    }

    /// x_i f_j - x_j f_i, the pattern shared by every meridian family.
    fn rotation_pair(&self, i: usize, j: usize) -> PolyVectorField {
        self.field(j)
            .scale_by(&self.x(i))
            .sub(&self.field(i).scale_by(&self.x(j)))
    }

    fn entry_bs3(&self, i: usize, j: usize) -> PolyVectorField {
        let m = self.m;
        if i > j {
            return self.entry_bs3(j, i).neg();
        }
        // now i < j
        if j <= m + 1 {
            self.rotation_pair(i, j)
        } else if i <= m + 1 && j == m + 2 {
            self.field(m + 3).scale_by(&self.x(i)).scale_by_rat(&rat(-2))
        } else if i <= m + 1 && j == m + 3 {
            self.field(m + 2).scale_by(&self.x(i)).scale_by_rat(&rat(2))
        } else {
            // (m+2, m+3): -2 T
            torsion_field(self.vars).scale_by_rat(&rat(-2))
        }
    }

    fn entry_pn1(&self, i: usize, j: usize) -> PolyVectorField {
        let m = self.m;
        if i > j {
            return self.entry_pn1(j, i).neg();
        }
        let (y1, y2) = (self.y(1), self.y(2));
        let (xm, xm1) = (self.x(m), self.x(m + 1));
        if j < m {
            self.rotation_pair(i, j)
        } else if i < m && j == m {
            // (-x_m y_1 + x_{m+1} y_2) p_i + x_i p_m - x_i p_{m+1}
            let coef = &(&xm1 * &y2) - &(&xm * &y1);
            self.field(i)
                .scale_by(&coef)
                .add(&self.field(m).scale_by(&self.x(i)))
                .sub(&self.field(m + 1).scale_by(&self.x(i)))
        } else if i < m && j == m + 1 {
            // (-x_m y_2 - x_{m+1} y_1) p_i + x_i p_m + x_i p_{m+1}
            let coef = -&(&(&xm * &y2) + &(&xm1 * &y1));
            self.field(i)
                .scale_by(&coef)
                .add(&self.field(m).scale_by(&self.x(i)))
                .add(&self.field(m + 1).scale_by(&self.x(i)))
        } else {
            // (m, m+1):
            // (x_m (y_1 - y_2) - x_{m+1} (y_1 + y_2)) p_m
            //   + (x_m (y_1 + y_2) + x_{m+1} (y_1 - y_2)) p_{m+1}
            let diff = &y1 - &y2;
            let sum = &y1 + &y2;
            let cm = &(&xm * &diff) - &(&xm1 * &sum);
            let cm1 = &(&xm * &sum) + &(&xm1 * &diff);
            self.field(m)
                .scale_by(&cm)
                .add(&self.field(m + 1).scale_by(&cm1))
        }
    }

    /// Index shift dictated by parity: odd -> +1, even -> -1. Always lands
    /// back in 1..=n+1 because n is odd.
    fn parity_shift(j: usize) -> usize {
        if j % 2 == 1 {
            j + 1
        } else {
            j - 1
        }
    }

    /// Signed coefficient (y_j x_m + t_j x_{m+1} - t_j), positive as written
    /// for the lower-sign (even) branch.
    fn shift_coefficient(&self, j: usize) -> SparsePoly {
        let (xm, xm1) = (self.x(self.m), self.x(self.m + 1));
        &(&(&self.y(j) * &xm) + &(&self.t(j) * &xm1)) - &self.t(j)
    }

    fn entry_general(&self, i: usize, j: usize) -> PolyVectorField {
        let m = self.m;
        if i > j {
            return self.entry_general(j, i).neg();
        }
        if j < m {
            return self.rotation_pair(i, j);
        }
        let x_m_field = x_aux_field(self.vars, m);
        let x_m1_field = x_aux_field(self.vars, m + 1);
        if i < m {
            // [p_i, p_{m-1+j}] with fiber index jj:
            //   -(y_j x_m + t_j x_{m+1}) p_i  -+ x_i p_{m-1+j+-1}
            //   + x_i y_j X_m + x_i t_j X_{m+1}
            let jj = j - (m - 1);
            let (xm, xm1) = (self.x(m), self.x(m + 1));
            let coef = -&(&(&self.y(jj) * &xm) + &(&self.t(jj) * &xm1));
            let xi = self.x(i);
            let mut acc = self.field(i).scale_by(&coef);
            let shifted = self.field(m - 1 + Self::parity_shift(jj)).scale_by(&xi);
            if jj % 2 == 1 {
                acc = acc.sub(&shifted);
            } else {
                acc = acc.add(&shifted);
            }
            acc = acc.add(&x_m_field.scale_by(&(&xi * &self.y(jj))));
            acc = acc.add(&x_m1_field.scale_by(&(&xi * &self.t(jj))));
            return acc;
        }
        // [p_{m-1+j}, p_{m-1+k}]
        let jj = i - (m - 1);
        let kk = j - (m - 1);
        let (c, d) = helper_quantities(self.vars, jj, kk);
        let (xm, xm1) = (self.x(m), self.x(m + 1));

        // D_{j,k} sum_{i<=m-1} x_i p_i
        let mut acc = PolyVectorField::zero(self.vars);
        for a in 1..m {
            acc = acc.add(&self.field(a).scale_by(&self.x(a)));
        }
        acc = acc.scale_by(&d);

        // y_j p_{m-1+k} - y_k p_{m-1+j}
        acc = acc.add(&self.field(m - 1 + kk).scale_by(&self.y(jj)));
        acc = acc.sub(&self.field(m - 1 + jj).scale_by(&self.y(kk)));

        // (x_m D - x_{m+1} C) X_m
        let coef_xm = &(&xm * &d) - &(&xm1 * &c);
        acc = acc.add(&x_m_field.scale_by(&coef_xm));

        // ((x_{m+1} - 1) D + x_m C) X_{m+1}
        let coef_xm1 = &(&(&xm1 - &SparsePoly::one(self.vars)) * &d) + &(&xm * &c);
        acc = acc.add(&x_m1_field.scale_by(&coef_xm1));

        // (-+ y_j x_m -+ t_j x_{m+1} +- t_j) p_{m-1+k+-1}, parity of k
        let shift_k = self.field(m - 1 + Self::parity_shift(kk));
        let coef_j = self.shift_coefficient(jj);
        if kk % 2 == 1 {
            acc = acc.sub(&shift_k.scale_by(&coef_j));
        } else {
            acc = acc.add(&shift_k.scale_by(&coef_j));
        }

        // (+- y_k x_m +- t_k x_{m+1} -+ t_k) p_{m-1+j+-1}, parity of j
        let shift_j = self.field(m - 1 + Self::parity_shift(jj));
        let coef_k = self.shift_coefficient(kk);
        if jj % 2 == 1 {
            acc = acc.add(&shift_j.scale_by(&coef_k));
        } else {
            acc = acc.sub(&shift_j.scale_by(&coef_k));
        }
        acc
    }
}

/// One entry of a closed-form bracket table, expanded into ambient
/// polynomial components.
pub fn closed_bracket(
    kind: BracketTableKind,
    i: usize,
    j: usize,
    m: usize,
    n: usize,
) -> Result<PolyVectorField> {
    BracketTable::new(kind, m, n)?.entry(i, j)
}

// ---------------------------------------------------------------------------
// Bracket-table verification
// ---------------------------------------------------------------------------

fn describe_normal_form(
    vars: VarSet,
    pair: (usize, usize),
    nf: &PolyVectorField,
) -> String {
    let mut pieces = Vec::new();
    for (slot, comp) in nf.components().iter().enumerate() {
        if !comp.is_zero() {
            pieces.push(format!("d/d{}: {}", vars.var_name(slot), comp));
            if pieces.len() >= 3 {
                pieces.push("...".to_string());
                break;
            }
        }
    }
    format!("pair ({}, {}): {}", pair.0, pair.1, pieces.join("; "))
}

/// For every pair (i, j) of the table: the difference between the exact Lie
/// bracket of the frame fields and the closed form, evaluated numerically at
/// `samples` seeded points, and (when `symbolic` is set) reduced to normal
/// form modulo the sphere ideal. Produces one numeric and optionally one
/// symbolic check record.
#[allow(clippy::too_many_arguments)]
pub fn bracket_table_checks(
    kind: BracketTableKind,
    m: usize,
    n: usize,
    samples: usize,
    seed: u64,
    tolerance: f64,
    symbolic: bool,
    budget: SymbolicBudget,
    timings: bool,
) -> Result<Vec<Check>> {
    if symbolic {
        budget.admit(kind, m, n)?;
    }
    let table = BracketTable::new(kind, m, n)?;
    let ideal = SphereIdeal::new(table.vars());
    let points = sample_points(m, n, seed, samples)?;
    let coords: Vec<Vec<f64>> = points.iter().map(point_coords).collect();
    let probe_points = sample_points(m, n, seed ^ 0x5eed, NORMAL_FORM_PROBES)?;

    let mut checks = Vec::new();
    let ((numeric_residual, symbolic_failures), ms) = timed(timings, || {
        let mut numeric_residual = 0.0f64;
        let mut symbolic_failures: Vec<(String, f64)> = Vec::new();
        let size = table.size();
        for i in 1..=size {
            for j in (i + 1)..=size {
                let oracle = lie_bracket(table.field(i), table.field(j));
                let diff = oracle.sub(&table.entry(i, j).expect("indices in range"));
                let numeric = diff.to_numeric();
                for c in &coords {
                    numeric_residual = numeric_residual.max(numeric.max_abs_at(c));
                }
                if symbolic {
                    let nf = diff.reduce(&ideal);
                    if !nf.is_zero() {
                        let nf_numeric = nf.to_numeric();
                        let worst = probe_points
                            .iter()
                            .map(|p| nf_numeric.max_abs_at(&point_coords(p)))
                            .fold(0.0, f64::max);
                        symbolic_failures
                            .push((describe_normal_form(table.vars(), (i, j), &nf), worst));
                    }
                }
            }
        }
        (numeric_residual, symbolic_failures)
    });

    checks.push(
        Check::from_residual(
            &format!("bracket_table_numeric[{}]", kind.as_str()),
            kind.paper_tag(),
            numeric_residual,
            tolerance,
        )
        .with_ms(ms),
    );

    if symbolic {
        let id = format!("bracket_table_symbolic[{}]", kind.as_str());
        if symbolic_failures.is_empty() {
            checks.push(
                Check::pass(&id, kind.paper_tag())
                    .with_normal_form("0".to_string())
                    .with_ms(ms),
            );
        } else {
            let worst = symbolic_failures
                .iter()
                .map(|(_, r)| *r)
                .fold(0.0, f64::max);
            let description = symbolic_failures
                .iter()
                .map(|(d, _)| d.as_str())
                .collect::<Vec<_>>()
                .join(" | ");
            checks.push(
                Check::fail(&id, kind.paper_tag())
                    .with_normal_form(format!(
                        "{} nonzero normal form(s): {description}",
                        symbolic_failures.len()
                    ))
                    .with_residual(worst)
                    .with_ms(ms),
            );
        }
    }
    Ok(checks)
}

/// Standalone report wrapper around [`bracket_table_checks`].
pub fn verify_bracket_table(
    kind: BracketTableKind,
    m: usize,
    n: usize,
    samples: usize,
    seed: u64,
    tolerance: f64,
    budget: SymbolicBudget,
) -> Result<VerificationReport> {
    let config = ConfigEcho::new("verify_bracket_table")
        .push("table", ConfigValue::Str(kind.as_str().into()))
        .push("m", ConfigValue::Int(m as i64))
        .push("n", ConfigValue::Int(n as i64))
        .push("samples", ConfigValue::Int(samples as i64))
        .push("seed", ConfigValue::Int(seed as i64))
        .push("tolerance", ConfigValue::Float(tolerance));
    let mut report = VerificationReport::new(config);
    report.checks =
        bracket_table_checks(kind, m, n, samples, seed, tolerance, true, budget, false)?;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Structure equations
// ---------------------------------------------------------------------------

/// Which closed-form structure equations to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    /// db^i = b^i /\ dtheta on S^m x S^1.
    BS1,
    /// The S^m x S^3 equations with the non-closed fiber form.
    BS3,
    /// The n = 1 equations for the coframe dual to P.
    PN1,
}

impl StructureKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructureKind::BS1 => "B_S1",
            StructureKind::BS3 => "B_S3",
            StructureKind::PN1 => "P(n=1)",
        }
    }

    pub fn paper_tag(&self) -> &'static str {
        match self {
            StructureKind::BS1 => "db^i=b^i∧dθ",
            StructureKind::BS3 => "struc3",
            StructureKind::PN1 => "diff1genp",
        }
    }

    fn n(&self) -> usize {
        match self {
            StructureKind::BS1 | StructureKind::PN1 => 1,
            StructureKind::BS3 => 3,
        }
    }

    fn frame_kind(&self) -> FrameKind {
        match self {
            StructureKind::BS1 => FrameKind::BS1,
            StructureKind::BS3 => FrameKind::BS3,
            StructureKind::PN1 => FrameKind::P,
        }
    }
}

/// The closed-form exterior derivatives of a coframe, as rules expressing
/// each d(coframe element) in wedge products of coframe elements; the
/// auxiliary fiber 1-form is expanded through its coframe expression.
/// Evaluation is on frame pairs: a 2-form is determined by those values,
/// and there the exterior-derivative formula needs no derivatives because
/// coframe-frame pairings are constant.
#[derive(Debug, Clone)]
pub struct StructureEquationSet {
    kind: StructureKind,
    m: usize,
}

impl StructureEquationSet {
    pub fn new(kind: StructureKind, m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::DimensionTooSmall(m));
        }
        Ok(Self { kind, m })
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn frame_size(&self) -> usize {
        match self.kind {
            StructureKind::BS1 => self.m + 1,
            StructureKind::BS3 => self.m + 3,
            StructureKind::PN1 => self.m + 1,
        }
    }

    /// Value of the fiber 1-form on the k-th frame field at the point.
    fn tau_on_frame(&self, k: usize, point: &ProductPoint) -> f64 {
        let m = self.m;
        match self.kind {
            // dtheta = sum x_l b^l and tau = sum x_l b^l over the meridian family
            StructureKind::BS1 | StructureKind::BS3 => {
                if k <= m + 1 {
                    point.x.coord(k)
                } else {
                    0.0
                }
            }
            // tau = sum_{l<=m-1} x_l p^l + (x_m y_1 - x_{m+1} y_2) p^m
            //       + (x_m y_2 + x_{m+1} y_1) p^{m+1}
            StructureKind::PN1 => {
                let (y1, y2) = (point.y.coord(1), point.y.coord(2));
                let (xm, xm1) = (point.x.coord(m), point.x.coord(m + 1));
                if k < m {
                    point.x.coord(k)
                } else if k == m {
                    xm * y1 - xm1 * y2
                } else {
                    xm * y2 + xm1 * y1
                }
            }
        }
    }

    /// The right-hand 2-form of the rule for coframe element `a`, evaluated
    /// on the frame pair (j, k). All indices 1-based.
    pub fn rhs_on_pair(&self, a: usize, j: usize, k: usize, point: &ProductPoint) -> f64 {
        let m = self.m;
        let delta = |p: usize, q: usize| if p == q { 1.0 } else { 0.0 };
        let tau_j = self.tau_on_frame(j, point);
        let tau_k = self.tau_on_frame(k, point);
        match self.kind {
            StructureKind::BS1 => delta(a, j) * tau_k - delta(a, k) * tau_j,
            StructureKind::BS3 => {
                if a <= m + 1 {
                    // db^a = b^a /\ tau + 2 x_a b^{m+2} /\ b^{m+3}
                    delta(a, j) * tau_k - delta(a, k) * tau_j
                        + 2.0
                            * point.x.coord(a)
                            * (delta(j, m + 2) * delta(k, m + 3)
                                - delta(k, m + 2) * delta(j, m + 3))
                } else if a == m + 2 {
                    2.0 * (delta(j, m + 3) * tau_k - delta(k, m + 3) * tau_j)
                } else {
                    -2.0 * (delta(j, m + 2) * tau_k - delta(k, m + 2) * tau_j)
                }
            }
            StructureKind::PN1 => {
                if a < m {
                    delta(a, j) * tau_k - delta(a, k) * tau_j
                } else if a == m {
                    // dp^m = p^m /\ tau + p^{m+1} /\ tau
                    (delta(j, m) + delta(j, m + 1)) * tau_k
                        - (delta(k, m) + delta(k, m + 1)) * tau_j
                } else {
                    // dp^{m+1} = p^{m+1} /\ tau - p^m /\ tau
                    (delta(j, m + 1) - delta(j, m)) * tau_k
                        - (delta(k, m + 1) - delta(k, m)) * tau_j
                }
            }
        }
    }
}

fn numeric_frame(kind: FrameKind, point: &ProductPoint) -> Result<Frame> {
    match kind {
        FrameKind::BS1 => frames::frame_b_s1(point),
        FrameKind::BS3 => frames::frame_b_s3(point),
        FrameKind::P => frames::frame_p(point),
        FrameKind::BGeneric => Err(Error::InvalidConfig(
            "generic frames need a supplied fiber frame".into(),
        )),
    }
}

/// Frame-pair residuals of the structure equations: the left side is
/// d(alpha)(b_j, b_k) = -alpha([b_j, b_k]) with the bracket taken from the
/// exact oracle and evaluated at each sample point; the right side is the
/// closed-form 2-form.
pub fn structure_equation_checks(
    kind: StructureKind,
    m: usize,
    samples: usize,
    seed: u64,
    tolerance: f64,
    timings: bool,
) -> Result<Check> {
    let set = StructureEquationSet::new(kind, m)?;
    let n = kind.n();
    let fields = frame_as_poly(kind.frame_kind(), m, n)?;
    let size = set.frame_size();
    let points = sample_points(m, n, seed, samples)?;

    let (residual, ms) = timed(timings, || -> Result<f64> {
        // brackets once, numerically evaluable
        let mut brackets = Vec::new();
        for j in 1..=size {
            for k in (j + 1)..=size {
                brackets.push(((j, k), lie_bracket(&fields[j - 1], &fields[k - 1]).to_numeric()));
            }
        }
        let mut residual = 0.0f64;
        for point in &points {
            let frame = numeric_frame(kind.frame_kind(), point)?;
            let coframe = frames::coframe(&frame)?;
            let coords = point_coords(point);
            for ((j, k), bracket) in &brackets {
                let value = bracket.eval(&coords);
                for a in 1..=size {
                    let lhs = -coframe.apply(a, &value);
                    let rhs = set.rhs_on_pair(a, *j, *k, point);
                    residual = residual.max((lhs - rhs).abs());
                }
            }
        }
        Ok(residual)
    });
    let residual = residual?;

    Ok(Check::from_residual(
        &format!("structure_equations[{}]", kind.as_str()),
        kind.paper_tag(),
        residual,
        tolerance,
    )
    .with_ms(ms))
}

/// Standalone report wrapper around [`structure_equation_checks`].
pub fn verify_structure_equations(
    kind: StructureKind,
    m: usize,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    let config = ConfigEcho::new("verify_structure_equations")
        .push("set", ConfigValue::Str(kind.as_str().into()))
        .push("m", ConfigValue::Int(m as i64))
        .push("samples", ConfigValue::Int(samples as i64))
        .push("seed", ConfigValue::Int(seed as i64))
        .push("tolerance", ConfigValue::Float(tolerance));
    let mut report = VerificationReport::new(config);
    report
        .checks
        .push(structure_equation_checks(kind, m, samples, seed, tolerance, false)?);
    Ok(report)
}

// ---------------------------------------------------------------------------
// Specialization of the general table at n = 1
// ---------------------------------------------------------------------------

/// Exact checks that the general table collapses to the printed n = 1 table:
/// C_{1,2} reduces to 1, D_{1,2} reduces to 0, and every pair of the general
/// table reduces to the corresponding printed entry.
pub fn specialization_checks_n1(m: usize, timings: bool) -> Result<Vec<Check>> {
    let vars = VarSet::new(m, 1);
    let ideal = SphereIdeal::new(vars);
    let (c, d) = helper_quantities(vars, 1, 2);
    let mut checks = Vec::new();

    let c_red = ideal.reduce(&c);
    let c_ok = c_red == SparsePoly::one(vars);
    checks.push(
        Check::new(
            "helper_c12_reduces_to_one",
            "C_{j,k}",
            if c_ok {
                crate::report::Status::Pass
            } else {
                crate::report::Status::Fail
            },
        )
        .with_normal_form(c_red.to_string()),
    );

    let d_red = ideal.reduce(&d);
    let d_ok = d_red.is_zero();
    checks.push(
        Check::new(
            "helper_d12_reduces_to_zero",
            "D_{j,k}",
            if d_ok {
                crate::report::Status::Pass
            } else {
                crate::report::Status::Fail
            },
        )
        .with_normal_form(d_red.to_string()),
    );

    let general = BracketTable::new(BracketTableKind::PGeneral, m, 1)?;
    let printed = BracketTable::new(BracketTableKind::PN1, m, 1)?;
    let (failures, ms) = timed(timings, || -> Result<Vec<String>> {
        let mut failures = Vec::new();
        let size = general.size();
        for i in 1..=size {
            for j in (i + 1)..=size {
                let diff = general.entry(i, j)?.sub(&printed.entry(i, j)?);
                let nf = diff.reduce(&ideal);
                if !nf.is_zero() {
                    failures.push(describe_normal_form(vars, (i, j), &nf));
                }
            }
        }
        Ok(failures)
    });
    let failures = failures?;
    let id = format!("genbracket_specializes_to_n1[m={m}]");
    if failures.is_empty() {
        checks.push(
            Check::pass(&id, "genbracket")
                .with_normal_form("0".into())
                .with_ms(ms),
        );
    } else {
        checks.push(
            Check::fail(&id, "genbracket")
                .with_normal_form(failures.join(" | "))
                .with_ms(ms),
        );
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Change of basis, exact side
// ---------------------------------------------------------------------------

/// Polynomial entries of the change-of-basis matrix between the frames, for
/// n in {1, 3}: identity block, then the y-dependent rotation block whose
/// rows are the coordinates of y and the fiber frame fields.
pub fn change_of_basis_poly(m: usize, n: usize) -> Result<Vec<Vec<SparsePoly>>> {
    if !(n == 1 || n == 3) {
        return Err(Error::InvalidConfig(format!(
            "change of basis is only defined for n = 1 or 3, got n = {n}"
        )));
    }
    let vars = VarSet::new(m, n);
    let size = m + n;
    let zero = SparsePoly::zero(vars);
    let mut matrix = vec![vec![zero; size]; size];
    for (i, row) in matrix.iter_mut().enumerate().take(m - 1) {
        row[i] = SparsePoly::one(vars);
    }
    let y = |j| SparsePoly::y(vars, j);
    let block: Vec<Vec<SparsePoly>> = if n == 1 {
        vec![vec![y(1), y(2)], vec![-&y(2), y(1)]]
    } else {
        vec![
            vec![y(1), y(2), y(3), y(4)],
            vec![-&y(2), y(1), -&y(4), y(3)],
            vec![-&y(3), y(4), y(1), -&y(2)],
            vec![-&y(4), -&y(3), y(2), y(1)],
        ]
    };
    for (r, brow) in block.into_iter().enumerate() {
        for (c, val) in brow.into_iter().enumerate() {
            matrix[m - 1 + r][m - 1 + c] = val;
        }
    }
    Ok(matrix)
}

/// Checks that A A^T - I reduces to zero exactly, and that the numeric
/// frames satisfy P = B A at sampled points.
pub fn change_of_basis_checks(
    m: usize,
    n: usize,
    samples: usize,
    seed: u64,
    symbolic: bool,
    timings: bool,
) -> Result<Vec<Check>> {
    let tag = if n == 1 { "changebtop" } else { "changebtop3" };
    let mut checks = Vec::new();

    if symbolic {
        let vars = VarSet::new(m, n);
        let ideal = SphereIdeal::new(vars);
        let a = change_of_basis_poly(m, n)?;
        let size = m + n;
        let (worst, ms) = timed(timings, || {
            let mut worst: Option<String> = None;
            for r in 0..size {
                for c in 0..size {
                    let mut acc = SparsePoly::zero(vars);
                    for (l, _) in a.iter().enumerate() {
                        acc = &acc + &(&a[r][l] * &a[c][l]);
                    }
                    if r == c {
                        acc = &acc - &SparsePoly::one(vars);
                    }
                    let nf = ideal.reduce(&acc);
                    if !nf.is_zero() && worst.is_none() {
                        worst = Some(format!("entry ({r}, {c}): {nf}"));
                    }
                }
            }
            worst
        });
        let id = format!("change_of_basis_orthogonal[n={n}]");
        checks.push(match worst {
            None => Check::pass(&id, tag).with_normal_form("0".into()).with_ms(ms),
            Some(w) => Check::fail(&id, tag).with_normal_form(w).with_ms(ms),
        });
    }

    let points = sample_points(m, n, seed, samples)?;
    let (residual, ms) = timed(timings, || -> Result<f64> {
        let mut residual = 0.0f64;
        for point in &points {
            let a = frames::change_of_basis(point)?;
            residual = residual.max(a.orthogonality_residual());
            let b = if n == 1 {
                frames::frame_b_s1(point)?
            } else {
                frames::frame_b_s3(point)?
            };
            let transformed = a.apply(&b)?;
            let p = frames::frame_p(point)?;
            for (u, v) in transformed.iter().zip(p.vectors()) {
                residual = residual.max(u.sub(v).max_abs());
            }
        }
        Ok(residual)
    });
    checks.push(
        Check::from_residual(
            &format!("frame_p_equals_b_times_a[n={n}]"),
            tag,
            residual?,
            crate::tol::EXACT_EVAL,
        )
        .with_ms(ms),
    );
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Plain frame identities
// ---------------------------------------------------------------------------

/// sum_i x_i M_i = 0, exactly.
pub fn meridian_radial_sum_check(m: usize, n: usize) -> Check {
    let vars = VarSet::new(m, n);
    let ideal = SphereIdeal::new(vars);
    let mut acc = PolyVectorField::zero(vars);
    for i in 1..=m + 1 {
        acc = acc.add(
            &crate::polybracket::meridian_field(vars, i).scale_by(&SparsePoly::x(vars, i)),
        );
    }
    let nf = acc.reduce(&ideal);
    let id = format!("radial_meridian_sum_vanishes[m={m}]");
    if nf.is_zero() {
        Check::pass(&id, "fundeq").with_normal_form("0".into())
    } else {
        Check::fail(&id, "fundeq").with_normal_form(describe_normal_form(vars, (0, 0), &nf))
    }
}

/// T = sum_i x_i b_i for the meridian-built frames (n = 1 or 3), exactly.
pub fn torsion_frame_sum_check(kind: FrameKind, m: usize) -> Result<Check> {
    let n = match kind {
        FrameKind::BS1 => 1,
        FrameKind::BS3 => 3,
        _ => {
            return Err(Error::InvalidConfig(
                "torsion recovery applies to the meridian-built frames".into(),
            ))
        }
    };
    let vars = VarSet::new(m, n);
    let ideal = SphereIdeal::new(vars);
    let fields = frame_as_poly(kind, m, n)?;
    let mut acc = PolyVectorField::zero(vars);
    for (i, field) in fields.iter().enumerate().take(m + 1) {
        acc = acc.add(&field.scale_by(&SparsePoly::x(vars, i + 1)));
    }
    let diff = acc.sub(&torsion_field(vars));
    let nf = diff.reduce(&ideal);
    let id = format!("torsion_equals_radial_frame_sum[{}, m={m}]", match kind {
        FrameKind::BS1 => "B_S1",
        _ => "B_S3",
    });
    let tag = if n == 1 { "dθ=Σx_i b^i" } else { "τ=Σx_i b^i" };
    Ok(if nf.is_zero() {
        Check::pass(&id, tag).with_normal_form("0".into())
    } else {
        Check::fail(&id, tag).with_normal_form(describe_normal_form(vars, (0, 0), &nf))
    })
}

/// Exact tangency of every closed-form bracket entry: its pairing with each
/// radial field reduces to zero.
pub fn bracket_tangency_check(kind: BracketTableKind, m: usize, n: usize) -> Result<Check> {
    let table = BracketTable::new(kind, m, n)?;
    let ideal = SphereIdeal::new(table.vars());
    let rx = radial_x_field(table.vars());
    let ry = radial_y_field(table.vars());
    let mut failure = None;
    let size = table.size();
    'outer: for i in 1..=size {
        for j in (i + 1)..=size {
            let entry = table.entry(i, j)?;
            let px = ideal.reduce(&entry.dot(&rx));
            let py = ideal.reduce(&entry.dot(&ry));
            if !px.is_zero() || !py.is_zero() {
                failure = Some(format!("pair ({i}, {j}) not tangent: x-pairing {px}, y-pairing {py}"));
                break 'outer;
            }
        }
    }
    let id = format!("closed_bracket_tangent[{}]", kind.as_str());
    Ok(match failure {
        None => Check::pass(&id, kind.paper_tag()).with_normal_form("0".into()),
        Some(w) => Check::fail(&id, kind.paper_tag()).with_normal_form(w),
    })
}
