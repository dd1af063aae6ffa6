//! Exact sparse multivariate polynomial arithmetic over the rationals in the
//! ambient variables x_1..x_{m+1}, y_1..y_{n+1}; polynomial vector fields;
//! the exact Lie bracket; and normal-form reduction modulo the two sphere
//! relations.
//!
//! This module is the brute-force oracle behind every bracket identity: an
//! identity of vector fields holds on S^m x S^n exactly when its residual
//! reduces to the zero polynomial. Floating point is not used here;
//! coefficients are arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{AmbientVector, FrameKind, ProductPoint};

/// Exact coefficient type.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

/// The variable universe for a fixed (m, n): x_1..x_{m+1} then y_1..y_{n+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarSet {
    pub m: usize,
    pub n: usize,
}

impl VarSet {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub fn nvars(&self) -> usize {
        self.m + self.n + 2
    }

    /// 0-based slot of x_i (1-based i).
    pub fn x_index(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.m + 1, "x index {i} out of range");
        i - 1
    }

    /// 0-based slot of y_j (1-based j).
    pub fn y_index(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.n + 1, "y index {j} out of range");
        self.m + 1 + (j - 1)
    }

    pub fn var_name(&self, slot: usize) -> String {
        if slot <= self.m {
            format!("x{}", slot + 1)
        } else {
            format!("y{}", slot - self.m)
        }
    }
}

/// Exponent multi-index over a [`VarSet`]. Ordered so polynomials have a
/// canonical term sequence for equality testing and printing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, slot: usize) -> Self {
        let mut e = vec![0; nvars];
        e[slot] = 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

// ---------------------------------------------------------------------------
// SparsePoly
// ---------------------------------------------------------------------------

/// A sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rat>,
}

impl SparsePoly {
    pub fn zero(vars: VarSet) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(vars.nvars()), c);
        }
        p
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn from_slot(vars: VarSet, slot: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms
            .insert(Monomial::var(vars.nvars(), slot), Rat::one());
        p
    }

    /// The coordinate polynomial x_i (1-based).
    pub fn x(vars: VarSet, i: usize) -> Self {
        Self::from_slot(vars, vars.x_index(i))
    }

    /// The coordinate polynomial y_j (1-based).
    pub fn y(vars: VarSet, j: usize) -> Self {
        Self::from_slot(vars, vars.y_index(j))
    }

    /// Coordinate function of the torsion field: t_j = -y_{j+1} for odd j,
    /// t_j = y_{j-1} for even j.
    pub fn t(vars: VarSet, j: usize) -> Self {
        if j % 2 == 1 {
            -&Self::y(vars, j + 1)
        } else {
            Self::y(vars, j - 1)
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.vars);
        }
        SparsePoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Partial derivative with respect to the given variable slot.
    pub fn partial(&self, slot: usize) -> SparsePoly {
        let mut out = SparsePoly::zero(self.vars);
        for (mono, coeff) in &self.terms {
            let e = mono.0[slot];
            if e == 0 {
                continue;
            }
            let mut m = mono.clone();
            m.0[slot] = e - 1;
            out.insert_term(m, coeff * rat(e as i64));
        }
        out
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a full coordinate vector (x then y), in floating point.
    pub fn eval(&self, coords: &[f64]) -> f64 {
        assert_eq!(coords.len(), self.vars.nvars(), "coordinate length mismatch");
        let mut acc = 0.0;
        for (mono, coeff) in &self.terms {
            let mut term = coeff.to_f64().expect("rational fits in f64");
            for (slot, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term *= coords[slot].powi(e as i32);
                }
            }
            acc += term;
        }
        acc
    }

    /// Precompute a float-coefficient copy for fast repeated evaluation.
    pub fn to_numeric(&self) -> NumericPoly {
        NumericPoly {
            nvars: self.vars.nvars(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (c.to_f64().expect("rational fits in f64"), m.0.clone()))
                .collect(),
        }
    }

    fn assert_same_vars(&self, other: &SparsePoly) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial variable universes differ"
        );
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.assert_same_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.assert_same_vars(rhs);
        let mut out = SparsePoly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            for (slot, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.var_name(slot)),
                    _ => factors.push(format!("{}^{}", self.vars.var_name(slot), e)),
                }
            }
            let abs = coeff.abs();
            let mut body = if factors.is_empty() {
                format!("{abs}")
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", abs, factors.join("*"))
            };
            if first {
                if coeff.is_negative() {
                    body = format!("-{body}");
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                let sign = if coeff.is_negative() { "-" } else { "+" };
                write!(f, " {sign} {body}")?;
            }
        }
        Ok(())
    }
}

/// Float-coefficient copy of a [`SparsePoly`], for hot evaluation loops.
#[derive(Debug, Clone)]
pub struct NumericPoly {
    nvars: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl NumericPoly {
    pub fn eval(&self, coords: &[f64]) -> f64 {
        debug_assert_eq!(coords.len(), self.nvars);
        let mut acc = 0.0;
        for (coeff, exps) in &self.terms {
            let mut term = *coeff;
            for (slot, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => term *= coords[slot],
                    _ => term *= coords[slot].powi(e as i32),
                }
            }
            acc += term;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Sphere ideal reduction
// ---------------------------------------------------------------------------

/// The ideal generated by sum(x_i^2) - 1 and sum(y_j^2) - 1.
///
/// Reduction rewrites x_{m+1}^2 -> 1 - sum_{i<=m} x_i^2 and
/// y_{n+1}^2 -> 1 - sum_{j<=n} y_j^2 until neither squared variable remains.
/// Under a lexicographic order ranking x_{m+1} and y_{n+1} highest, the two
/// generators have coprime leading monomials, so this rewriting computes the
/// normal form of the division algorithm and a zero normal form is exactly
/// ideal membership.
#[derive(Debug, Clone, Copy)]
pub struct SphereIdeal {
    vars: VarSet,
}

impl SphereIdeal {
    pub fn new(vars: VarSet) -> Self {
        Self { vars }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    /// The two generators: (sum x_i^2 - 1, sum y_j^2 - 1).
    pub fn generators(&self) -> (SparsePoly, SparsePoly) {
        let v = self.vars;
        let mut gx = -&SparsePoly::one(v);
        for i in 1..=v.m + 1 {
            let xi = SparsePoly::x(v, i);
            gx = &gx + &(&xi * &xi);
        }
        let mut gy = -&SparsePoly::one(v);
        for j in 1..=v.n + 1 {
            let yj = SparsePoly::y(v, j);
            gy = &gy + &(&yj * &yj);
        }
        (gx, gy)
    }

    /// 1 - sum_{i <= m} x_i^2, the replacement for x_{m+1}^2.
    fn x_substitute(&self) -> SparsePoly {
        let v = self.vars;
        let mut s = SparsePoly::one(v);
        for i in 1..=v.m {
            let xi = SparsePoly::x(v, i);
            s = &s - &(&xi * &xi);
        }
        s
    }

    fn y_substitute(&self) -> SparsePoly {
        let v = self.vars;
        let mut s = SparsePoly::one(v);
        for j in 1..=v.n {
            let yj = SparsePoly::y(v, j);
            s = &s - &(&yj * &yj);
        }
        s
    }

    /// Normal form of `p` modulo the two sphere relations. Idempotent, and
    /// compatible with ring operations up to re-reduction.
    pub fn reduce(&self, p: &SparsePoly) -> SparsePoly {
        assert_eq!(p.vars(), self.vars, "ideal and polynomial universes differ");
        let xslot = self.vars.x_index(self.vars.m + 1);
        let yslot = self.vars.y_index(self.vars.n + 1);

        let max_qx = p.terms.keys().map(|m| m.0[xslot] / 2).max().unwrap_or(0);
        let max_qy = p.terms.keys().map(|m| m.0[yslot] / 2).max().unwrap_or(0);
        if max_qx == 0 && max_qy == 0 {
            return p.clone();
        }

        // powers of the substitutes, computed once
        let mut xpows = Vec::with_capacity(max_qx as usize + 1);
        xpows.push(SparsePoly::one(self.vars));
        let xsub = self.x_substitute();
        for q in 1..=max_qx {
            xpows.push(&xpows[q as usize - 1] * &xsub);
        }
        let mut ypows = Vec::with_capacity(max_qy as usize + 1);
        ypows.push(SparsePoly::one(self.vars));
        let ysub = self.y_substitute();
        for q in 1..=max_qy {
            ypows.push(&ypows[q as usize - 1] * &ysub);
        }

        let mut out = SparsePoly::zero(self.vars);
        for (mono, coeff) in &p.terms {
            let qx = mono.0[xslot] / 2;
            let qy = mono.0[yslot] / 2;
            if qx == 0 && qy == 0 {
                out.insert_term(mono.clone(), coeff.clone());
                continue;
            }
            let mut stem = mono.clone();
            stem.0[xslot] %= 2;
            stem.0[yslot] %= 2;
            let factor = &xpows[qx as usize] * &ypows[qy as usize];
            for (fm, fc) in &factor.terms {
                out.insert_term(stem.mul(fm), coeff * fc);
            }
        }
        out
    }

    /// Ideal membership test: zero normal form.
    pub fn contains(&self, p: &SparsePoly) -> bool {
        self.reduce(p).is_zero()
    }
}

// ---------------------------------------------------------------------------
// Polynomial vector fields and the Lie bracket
// ---------------------------------------------------------------------------

/// A vector field with polynomial components in ambient coordinates:
/// one component per variable of the universe.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyVectorField {
    vars: VarSet,
    components: Vec<SparsePoly>,
}

impl PolyVectorField {
    pub fn zero(vars: VarSet) -> Self {
        Self {
            vars,
            components: vec![SparsePoly::zero(vars); vars.nvars()],
        }
    }

    pub fn from_components(vars: VarSet, components: Vec<SparsePoly>) -> Self {
        assert_eq!(components.len(), vars.nvars(), "component count mismatch");
        for c in &components {
            assert_eq!(c.vars(), vars, "component universe mismatch");
        }
        Self { vars, components }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn components(&self) -> &[SparsePoly] {
        &self.components
    }

    pub fn component(&self, slot: usize) -> &SparsePoly {
        &self.components[slot]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SparsePoly::is_zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.components
            .iter()
            .map(SparsePoly::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        assert_eq!(self.vars, other.vars);
        PolyVectorField {
            vars: self.vars,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolyVectorField) -> PolyVectorField {
        assert_eq!(self.vars, other.vars);
        PolyVectorField {
            vars: self.vars,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> PolyVectorField {
        PolyVectorField {
            vars: self.vars,
            components: self.components.iter().map(|c| -c).collect(),
        }
    }

    /// Multiply every component by a polynomial coefficient function.
    pub fn scale_by(&self, f: &SparsePoly) -> PolyVectorField {
        assert_eq!(self.vars, f.vars());
        PolyVectorField {
            vars: self.vars,
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale_by_rat(&self, c: &Rat) -> PolyVectorField {
        PolyVectorField {
            vars: self.vars,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Componentwise normal form modulo the sphere ideal.
    pub fn reduce(&self, ideal: &SphereIdeal) -> PolyVectorField {
        PolyVectorField {
            vars: self.vars,
            components: self.components.iter().map(|c| ideal.reduce(c)).collect(),
        }
    }

    /// Pointwise inner product with another field, as a polynomial.
    pub fn dot(&self, other: &PolyVectorField) -> SparsePoly {
        assert_eq!(self.vars, other.vars);
        let mut acc = SparsePoly::zero(self.vars);
        for (a, b) in self.components.iter().zip(&other.components) {
            acc = &acc + &(a * b);
        }
        acc
    }

    /// Evaluate at a point of S^m x S^n, splitting components into the two
    /// ambient factors.
    pub fn eval(&self, point: &ProductPoint) -> AmbientVector {
        let coords = point_coords(point);
        assert_eq!(coords.len(), self.vars.nvars(), "point does not match universe");
        let vals: Vec<f64> = self.components.iter().map(|c| c.eval(&coords)).collect();
        let (xc, yc) = vals.split_at(self.vars.m + 1);
        AmbientVector::new(xc.to_vec(), yc.to_vec())
    }

    pub fn to_numeric(&self) -> NumericVectorField {
        NumericVectorField {
            m: self.vars.m,
            components: self.components.iter().map(SparsePoly::to_numeric).collect(),
        }
    }
}

/// Concatenated (x, y) coordinates of a product point.
pub fn point_coords(point: &ProductPoint) -> Vec<f64> {
    let mut c = point.x.coords().to_vec();
    c.extend_from_slice(point.y.coords());
    c
}

/// Float-coefficient copy of a [`PolyVectorField`] for sampling loops.
#[derive(Debug, Clone)]
pub struct NumericVectorField {
    m: usize,
    components: Vec<NumericPoly>,
}

impl NumericVectorField {
    pub fn eval(&self, coords: &[f64]) -> AmbientVector {
        let vals: Vec<f64> = self.components.iter().map(|c| c.eval(coords)).collect();
        let (xc, yc) = vals.split_at(self.m + 1);
        AmbientVector::new(xc.to_vec(), yc.to_vec())
    }

    /// Max absolute component value at a point.
    pub fn max_abs_at(&self, coords: &[f64]) -> f64 {
        self.components
            .iter()
            .map(|c| c.eval(coords).abs())
            .fold(0.0, f64::max)
    }
}

/// The Lie bracket [X, Y]^k = sum_l (X^l d_l Y^k - Y^l d_l X^k), computed
/// exactly. Valid on the product of spheres because every field in play is
/// tangent along it.
pub fn lie_bracket(x: &PolyVectorField, y: &PolyVectorField) -> PolyVectorField {
    assert_eq!(x.vars(), y.vars(), "bracket of fields over different universes");
    let vars = x.vars();
    let nv = vars.nvars();
    let mut components = Vec::with_capacity(nv);
    for k in 0..nv {
        let mut acc = SparsePoly::zero(vars);
        for l in 0..nv {
            if !x.components[l].is_zero() {
                let d = y.components[k].partial(l);
                if !d.is_zero() {
                    acc = &acc + &(&x.components[l] * &d);
                }
            }
            if !y.components[l].is_zero() {
                let d = x.components[k].partial(l);
                if !d.is_zero() {
                    acc = &acc - &(&y.components[l] * &d);
                }
            }
        }
        components.push(acc);
    }
    PolyVectorField::from_components(vars, components)
}

// ---------------------------------------------------------------------------
// Symbolic elementary fields and frames
// ---------------------------------------------------------------------------

/// Meridian field on the x factor: component l is delta_{il} - x_i x_l.
pub fn meridian_field(vars: VarSet, i: usize) -> PolyVectorField {
    let xi = SparsePoly::x(vars, i);
    let mut comps = Vec::with_capacity(vars.nvars());
    for l in 1..=vars.m + 1 {
        let mut c = -&(&xi * &SparsePoly::x(vars, l));
        if l == i {
            c = &c + &SparsePoly::one(vars);
        }
        comps.push(c);
    }
    comps.resize(vars.nvars(), SparsePoly::zero(vars));
    PolyVectorField::from_components(vars, comps)
}

/// Meridian field on the y factor: component (m+1)+l is delta_{jl} - y_j y_l.
pub fn y_meridian_field(vars: VarSet, j: usize) -> PolyVectorField {
    let yj = SparsePoly::y(vars, j);
    let mut comps = vec![SparsePoly::zero(vars); vars.m + 1];
    for l in 1..=vars.n + 1 {
        let mut c = -&(&yj * &SparsePoly::y(vars, l));
        if l == j {
            c = &c + &SparsePoly::one(vars);
        }
        comps.push(c);
    }
    PolyVectorField::from_components(vars, comps)
}

/// The torsion field on the y factor, components t_j.
pub fn torsion_field(vars: VarSet) -> PolyVectorField {
    assert!(vars.n % 2 == 1, "torsion requires odd n");
    let mut comps = vec![SparsePoly::zero(vars); vars.m + 1];
    for j in 1..=vars.n + 1 {
        comps.push(SparsePoly::t(vars, j));
    }
    PolyVectorField::from_components(vars, comps)
}

/// Quaternionic fields (multiplication by j and k) on the y factor, n = 3.
pub fn quaternion_j_field(vars: VarSet) -> PolyVectorField {
    assert_eq!(vars.n, 3);
    let y = |j| SparsePoly::y(vars, j);
    let mut comps = vec![SparsePoly::zero(vars); vars.m + 1];
    comps.extend([-&y(3), y(4), y(1), -&y(2)]);
    PolyVectorField::from_components(vars, comps)
}

pub fn quaternion_k_field(vars: VarSet) -> PolyVectorField {
    assert_eq!(vars.n, 3);
    let y = |j| SparsePoly::y(vars, j);
    let mut comps = vec![SparsePoly::zero(vars); vars.m + 1];
    comps.extend([-&y(4), -&y(3), y(2), y(1)]);
    PolyVectorField::from_components(vars, comps)
}

/// The radial field on the x factor (components x_l); pairing a tangent
/// field with this must reduce to zero.
pub fn radial_x_field(vars: VarSet) -> PolyVectorField {
    let mut comps: Vec<SparsePoly> = (1..=vars.m + 1).map(|l| SparsePoly::x(vars, l)).collect();
    comps.resize(vars.nvars(), SparsePoly::zero(vars));
    PolyVectorField::from_components(vars, comps)
}

pub fn radial_y_field(vars: VarSet) -> PolyVectorField {
    let mut comps = vec![SparsePoly::zero(vars); vars.m + 1];
    comps.extend((1..=vars.n + 1).map(|l| SparsePoly::y(vars, l)));
    PolyVectorField::from_components(vars, comps)
}

/// X_m = M_m + x_m T and X_{m+1} = M_{m+1} + x_{m+1} T, the two recurring
/// combinations in the general bracket table.
pub fn x_aux_field(vars: VarSet, which: usize) -> PolyVectorField {
    assert!(which == vars.m || which == vars.m + 1);
    meridian_field(vars, which)
        .add(&torsion_field(vars).scale_by(&SparsePoly::x(vars, which)))
}

/// Symbolic form of a frame. Every component has total degree at most 3,
/// and evaluation at any point of the product agrees with the numeric frame
/// constructors.
pub fn frame_as_poly(kind: FrameKind, m: usize, n: usize) -> Result<Vec<PolyVectorField>> {
    let vars = VarSet::new(m, n);
    match kind {
        FrameKind::BS1 => {
            if n != 1 {
                return Err(Error::DimensionMismatch { expected: 1, actual: n });
            }
            let t = torsion_field(vars);
            Ok((1..=m + 1)
                .map(|i| meridian_field(vars, i).add(&t.scale_by(&SparsePoly::x(vars, i))))
                .collect())
        }
        FrameKind::BS3 => {
            if n != 3 {
                return Err(Error::DimensionMismatch { expected: 3, actual: n });
            }
            let t = torsion_field(vars);
            let mut fields: Vec<PolyVectorField> = (1..=m + 1)
                .map(|i| meridian_field(vars, i).add(&t.scale_by(&SparsePoly::x(vars, i))))
                .collect();
            fields.push(quaternion_j_field(vars));
            fields.push(quaternion_k_field(vars));
            Ok(fields)
        }
        FrameKind::P => {
            if n.is_multiple_of(2) {
                return Err(Error::ParityRequired(n));
            }
            let t = torsion_field(vars);
            let mut fields: Vec<PolyVectorField> = Vec::with_capacity(m + n);
            for i in 1..m {
                fields.push(meridian_field(vars, i).add(&t.scale_by(&SparsePoly::x(vars, i))));
            }
            let xm = SparsePoly::x(vars, m);
            let xm1 = SparsePoly::x(vars, m + 1);
            let mm = meridian_field(vars, m);
            let mm1 = meridian_field(vars, m + 1);
            for j in 1..=n + 1 {
                let yj = SparsePoly::y(vars, j);
                let tj = SparsePoly::t(vars, j);
                // t_j x_{m+1} + y_j x_m - t_j
                let tcoef = &(&(&tj * &xm1) + &(&yj * &xm)) - &tj;
                let field = mm
                    .scale_by(&yj)
                    .add(&mm1.scale_by(&tj))
                    .add(&t.scale_by(&tcoef))
                    .add(&y_meridian_field(vars, j));
                fields.push(field);
            }
            Ok(fields)
        }
        FrameKind::BGeneric => Err(Error::InvalidConfig(
            "generic product frames have no canonical polynomial form".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_point;
    use proptest::prelude::*;

    fn v21() -> VarSet {
        VarSet::new(2, 1)
    }

    #[test]
    fn derivative_of_square() {
        let vars = v21();
        let y1 = SparsePoly::y(vars, 1);
        let sq = &y1 * &y1;
        let d = sq.partial(vars.y_index(1));
        assert_eq!(d, y1.scale(&rat(2)));
    }

    #[test]
    fn torsion_coordinate_polynomials() {
        let vars = v21();
        assert_eq!(SparsePoly::t(vars, 1), -&SparsePoly::y(vars, 2));
        assert_eq!(SparsePoly::t(vars, 2), SparsePoly::y(vars, 1));
    }

    #[test]
    fn reduce_kills_generators_and_leaves_reduced_terms() {
        let vars = v21();
        let ideal = SphereIdeal::new(vars);
        let (gx, gy) = ideal.generators();
        assert!(ideal.reduce(&gx).is_zero());
        assert!(ideal.reduce(&gy).is_zero());

        // y1*t2 - y2*t1 = y1^2 + y2^2 -> 1
        let c = &(&SparsePoly::y(vars, 1) * &SparsePoly::t(vars, 2))
            - &(&SparsePoly::y(vars, 2) * &SparsePoly::t(vars, 1));
        assert_eq!(ideal.reduce(&c), SparsePoly::one(vars));

        // x1*y1 is already a normal form
        let p = &SparsePoly::x(vars, 1) * &SparsePoly::y(vars, 1);
        assert_eq!(ideal.reduce(&p), p);
    }

    #[test]
    fn generator_leading_monomials_are_coprime() {
        // under lex with x_{m+1}, y_{n+1} ranked highest the leading
        // monomials are the squared last variables; they share no variable
        let vars = v21();
        let ideal = SphereIdeal::new(vars);
        let (gx, gy) = ideal.generators();
        let xslot = vars.x_index(vars.m + 1);
        let yslot = vars.y_index(vars.n + 1);
        let lead_x = gx.terms().map(|(m, _)| m.clone()).max_by_key(|m| m.0[xslot]).unwrap();
        let lead_y = gy.terms().map(|(m, _)| m.clone()).max_by_key(|m| m.0[yslot]).unwrap();
        assert_eq!(lead_x.0[xslot], 2);
        assert_eq!(lead_y.0[yslot], 2);
        assert!(lead_x.0.iter().zip(&lead_y.0).all(|(a, b)| a * b == 0));
    }

    #[test]
    fn textbook_bracket() {
        // [d/dx1, x1 d/dx2] = d/dx2
        let vars = v21();
        let xf = PolyVectorField::from_components(vars, {
            let mut c = vec![SparsePoly::zero(vars); vars.nvars()];
            c[0] = SparsePoly::one(vars);
            c
        });
        let yf = PolyVectorField::from_components(vars, {
            let mut c = vec![SparsePoly::zero(vars); vars.nvars()];
            c[1] = SparsePoly::x(vars, 1);
            c
        });
        let b = lie_bracket(&xf, &yf);
        assert_eq!(b.component(1), &SparsePoly::one(vars));
        assert!(b
            .components()
            .iter()
            .enumerate()
            .all(|(k, c)| k == 1 || c.is_zero()));

        // [X, X] = 0
        assert!(lie_bracket(&yf, &yf).is_zero());
    }

    #[test]
    fn frame_polys_match_displayed_expansion() {
        // first field of the meridian frame on S^2 x S^1:
        // x components (1 - x1^2, -x1 x2, -x1 x3), y components x1*(-y2, y1)
        let vars = v21();
        let fields = frame_as_poly(FrameKind::BS1, 2, 1).unwrap();
        let b1 = &fields[0];
        let x1 = SparsePoly::x(vars, 1);
        let one = SparsePoly::one(vars);
        assert_eq!(b1.component(0), &(&one - &(&x1 * &x1)));
        assert_eq!(b1.component(1), &-&(&x1 * &SparsePoly::x(vars, 2)));
        assert_eq!(b1.component(2), &-&(&x1 * &SparsePoly::x(vars, 3)));
        assert_eq!(b1.component(3), &-&(&x1 * &SparsePoly::y(vars, 2)));
        assert_eq!(b1.component(4), &(&x1 * &SparsePoly::y(vars, 1)));
    }

    #[test]
    fn frame_poly_degrees_are_at_most_three() {
        for (m, n) in [(1, 1), (2, 1), (3, 3), (2, 5), (1, 5)] {
            for f in frame_as_poly(FrameKind::P, m, n).unwrap() {
                assert!(f.total_degree() <= 3);
            }
        }
    }

    #[test]
    fn frame_poly_eval_matches_numeric_frames() {
        use crate::frames;
        for seed in 0..5 {
            let p = sample_point(3, 1, seed).unwrap();
            let numeric = frames::frame_b_s1(&p).unwrap();
            let symbolic = frame_as_poly(FrameKind::BS1, 3, 1).unwrap();
            for (nv, sv) in numeric.vectors().iter().zip(&symbolic) {
                assert!(nv.sub(&sv.eval(&p)).max_abs() < 1e-12);
            }

            let p = sample_point(2, 3, seed).unwrap();
            let numeric = frames::frame_b_s3(&p).unwrap();
            let symbolic = frame_as_poly(FrameKind::BS3, 2, 3).unwrap();
            for (nv, sv) in numeric.vectors().iter().zip(&symbolic) {
                assert!(nv.sub(&sv.eval(&p)).max_abs() < 1e-12);
            }

            let p = sample_point(3, 5, seed).unwrap();
            let numeric = frames::frame_p(&p).unwrap();
            let symbolic = frame_as_poly(FrameKind::P, 3, 5).unwrap();
            for (nv, sv) in numeric.vectors().iter().zip(&symbolic) {
                assert!(nv.sub(&sv.eval(&p)).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn radial_meridian_sum_is_exactly_zero() {
        // sum_i x_i M_i = 0 as a polynomial identity after reduction
        for (m, n) in [(2, 1), (5, 1), (3, 3)] {
            let vars = VarSet::new(m, n);
            let ideal = SphereIdeal::new(vars);
            let mut acc = PolyVectorField::zero(vars);
            for i in 1..=m + 1 {
                acc = acc.add(&meridian_field(vars, i).scale_by(&SparsePoly::x(vars, i)));
            }
            assert!(acc.reduce(&ideal).is_zero());
        }
    }

    #[test]
    fn bracket_of_frame_fields_is_tangent() {
        let vars = VarSet::new(2, 3);
        let ideal = SphereIdeal::new(vars);
        let fields = frame_as_poly(FrameKind::P, 2, 3).unwrap();
        let rx = radial_x_field(vars);
        let ry = radial_y_field(vars);
        let b = lie_bracket(&fields[0], &fields[3]);
        assert!(ideal.reduce(&b.dot(&rx)).is_zero());
        assert!(ideal.reduce(&b.dot(&ry)).is_zero());
    }

    // --- randomized algebraic properties ---

    fn arb_poly() -> impl Strategy<Value = SparsePoly> {
        // up to 4 terms over 5 variables with small exponents/coefficients
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, 5), -4i64..=4),
            0..4,
        )
        .prop_map(|terms| {
            let vars = VarSet::new(2, 1);
            let mut p = SparsePoly::zero(vars);
            for (exps, c) in terms {
                p.insert_term(Monomial(exps), rat(c));
            }
            p
        })
    }

    fn arb_field() -> impl Strategy<Value = PolyVectorField> {
        proptest::collection::vec(arb_poly(), 5).prop_map(|comps| {
            PolyVectorField::from_components(VarSet::new(2, 1), comps)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduce_is_idempotent(p in arb_poly()) {
            let ideal = SphereIdeal::new(VarSet::new(2, 1));
            let r = ideal.reduce(&p);
            prop_assert_eq!(ideal.reduce(&r), r);
        }

        #[test]
        fn reduce_commutes_with_ring_ops(a in arb_poly(), b in arb_poly()) {
            let ideal = SphereIdeal::new(VarSet::new(2, 1));
            let sum = ideal.reduce(&(&a + &b));
            let sum2 = ideal.reduce(&(&ideal.reduce(&a) + &ideal.reduce(&b)));
            prop_assert_eq!(sum, sum2);
            let prod = ideal.reduce(&(&a * &b));
            let prod2 = ideal.reduce(&(&ideal.reduce(&a) * &ideal.reduce(&b)));
            prop_assert_eq!(prod, prod2);
        }

        #[test]
        fn bracket_is_antisymmetric_and_bilinear(x in arb_field(), y in arb_field(), z in arb_field()) {
            let xy = lie_bracket(&x, &y);
            prop_assert_eq!(xy.clone(), lie_bracket(&y, &x).neg());
            let sum = lie_bracket(&x.add(&z), &y);
            prop_assert_eq!(sum, xy.add(&lie_bracket(&z, &y)));
        }

        #[test]
        fn jacobi_identity(x in arb_field(), y in arb_field(), z in arb_field()) {
            let a = lie_bracket(&x, &lie_bracket(&y, &z));
            let b = lie_bracket(&y, &lie_bracket(&z, &x));
            let c = lie_bracket(&z, &lie_bracket(&x, &y));
            prop_assert!(a.add(&b).add(&c).is_zero());
        }

        #[test]
        fn leibniz_rule(f in arb_poly(), g in arb_poly(), x in arb_field(), y in arb_field()) {
            // [fX, gY] = fg [X,Y] + f (X g) Y - g (Y f) X
            let fx = x.scale_by(&f);
            let gy = y.scale_by(&g);
            let lhs = lie_bracket(&fx, &gy);
            let xg: SparsePoly = (0..5)
                .map(|l| x.component(l) * &g.partial(l))
                .fold(SparsePoly::zero(f.vars()), |acc, t| &acc + &t);
            let yf: SparsePoly = (0..5)
                .map(|l| y.component(l) * &f.partial(l))
                .fold(SparsePoly::zero(f.vars()), |acc, t| &acc + &t);
            let rhs = lie_bracket(&x, &y)
                .scale_by(&(&f * &g))
                .add(&y.scale_by(&(&f * &xg)))
                .sub(&x.scale_by(&(&g * &yf)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
