//! Exact fiber geometry for a monomial function (plus optional additive
//! constant) on a smooth trinomial curve.
//!
//! Points on the three coordinate lines are analyzed through valuations:
//! intersection multiplicities of binary forms give the order of each
//! vanishing coordinate at a point, local power series handle the
//! indeterminate coordinate points, and a reduction trick handles classes of
//! conjugate line points where the function has a finite nonzero value. The
//! off-line part of each fiber is read from a sheared resultant
//! H(u, t) = Res_y(F(u - lam*y, y), num - (t - shift) den), whose
//! specializations are decomposed squarefree-exactly. A Riemann-Hurwitz
//! audit over the assembled critical set certifies completeness: any missed
//! critical value, collided shear, or miscounted multiplicity leaves a
//! nonzero defect.
//!
//! Variable slots throughout: 0 = x, 1 = y, 2 = t (the target parameter),
//! 3 = u (the shear coordinate).

use crate::algebra::{roots, Fp, Poly, UPoly};
use crate::curve::TrinomialCurve;
use crate::{MultiPoly, Rat, TrinomiaError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const VX: usize = 0;
pub const VY: usize = 1;
pub const VT: usize = 2;
pub const VU: usize = 3;

/// Value of the function at a special point.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Finite(Rat),
    Infinity,
}

/// A Galois-stable class of points on the coordinate lines with uniform
/// behavior of the candidate function.
#[derive(Clone, Debug)]
pub struct SpecialClass {
    pub count: usize,
    pub value: Value,
    pub ram: usize,
    pub affine_base: bool,
    pub location: String,
}

/// Everything the report assembly needs from one analyzed fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiber {
    pub value: Value,
    /// Ramification profile: one entry per distinct point.
    pub profile: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FiberAnalysis {
    pub degree: usize,
    pub genus: i64,
    pub critical_fibers: Vec<Fiber>,
    pub rh_defect: i64,
    pub shear_used: i64,
    pub stripped_log: Vec<String>,
    pub non_rational_flag: bool,
}

pub struct CandidateData<'a> {
    pub curve: &'a TrinomialCurve,
    pub num: [u16; 3],
    pub den: [u16; 3],
    pub shift: Rat,
}

impl<'a> CandidateData<'a> {
    fn exps(&self, var: usize) -> (i64, i64) {
        (self.num[var] as i64, self.den[var] as i64)
    }
}

// ---------------------------------------------------------------------------
// special points on the coordinate lines
// ---------------------------------------------------------------------------

/// Multiplicity of the coordinate point where `vother` also vanishes, as a
/// root of the binary form F restricted to {vanished = 0}: the minimal
/// exponent of `vother` among the surviving terms.
fn coord_ord(curve: &TrinomialCurve, vanished: usize, vother: usize) -> usize {
    let mut best: Option<usize> = None;
    for (row, _) in curve.matrix.rows.iter().zip(curve.coeffs.iter()) {
        if row[vanished] != 0 {
            continue;
        }
        let e = row[vother] as usize;
        if best.is_none_or(|b| e < b) {
            best = Some(e);
        }
    }
    best.expect("coordinate point is on the curve")
}

/// Residual binary form of the curve on the line {var = 0}, dehomogenized in
/// s = a/b where (a, b) are the other two variables in index order, with the
/// powers of a and b stripped.
fn line_residual(curve: &TrinomialCurve, var: usize) -> (UPoly<Rat>, usize, usize) {
    let others: Vec<usize> = (0..3).filter(|&v| v != var).collect();
    let (a, b) = (others[0], others[1]);
    let _ = b;
    let mut terms: Vec<(usize, Rat)> = Vec::new();
    for (row, c) in curve.matrix.rows.iter().zip(curve.coeffs.iter()) {
        if row[var] != 0 {
            continue;
        }
        terms.push((row[a] as usize, c.clone()));
    }
    assert!(!terms.is_empty(), "coordinate line contained in curve");
    let ka = terms.iter().map(|(e, _)| *e).min().unwrap();
    let deg = terms.iter().map(|(e, _)| *e).max().unwrap();
    let total: usize = {
        // all surviving terms share total degree d in (a, b)
        curve.degree() as usize
    };
    let kb = total - deg;
    let mut coeffs = vec![Rat::zero(); deg - ka + 1];
    for (e, c) in terms {
        coeffs[e - ka] += c;
    }
    (UPoly::new(coeffs), ka, kb)
}

/// Truncated power-series Newton at a coordinate point: the curve in the
/// chart where the nonzero coordinate is 1, with local variables (a, b); the
/// returned data is (uniformizer index in {a, b}, series for the dependent
/// variable).
fn local_series(
    f_local: &MultiPoly, // arity 2: vars 0 = a, 1 = b
    prec: usize,
) -> Result<(usize, UPoly<Rat>), TrinomiaError> {
    let origin = [Rat::zero(), Rat::zero()];
    let fa = f_local.partial_derivative(0).eval(&origin);
    let fb = f_local.partial_derivative(1).eval(&origin);
    let (uni, dep) = if !fb.is_zero() {
        (0usize, 1usize)
    } else if !fa.is_zero() {
        (1usize, 0usize)
    } else {
        return Err(TrinomiaError::Undetermined(
            "singular point in local series expansion".into(),
        ));
    };
    let fdep0 = if dep == 1 { fb } else { fa };
    let mut psi = UPoly::zero_poly(); // dep = psi(uni)
    loop {
        // value = f(uni, psi(uni)) truncated
        let val = eval_bivar_series(f_local, uni, dep, &psi, prec);
        let Some(vord) = lowest_order(&val) else {
            break; // identically zero to precision
        };
        if vord >= prec {
            break;
        }
        let lead = val.coeffs[vord].clone();
        let corr = -lead / fdep0.clone();
        let mut add = vec![Rat::zero(); vord + 1];
        add[vord] = corr;
        psi = &psi + &UPoly::new(add);
    }
    Ok((uni, psi))
}

fn lowest_order(p: &UPoly<Rat>) -> Option<usize> {
    p.coeffs.iter().position(|c| !c.is_zero())
}

/// Evaluate an arity-2 polynomial at (uni = x, dep = psi(x)), truncated.
fn eval_bivar_series(
    f: &MultiPoly,
    uni: usize,
    dep: usize,
    psi: &UPoly<Rat>,
    prec: usize,
) -> UPoly<Rat> {
    let mut acc = UPoly::zero_poly();
    for (e, c) in f.terms() {
        let mut term = UPoly::constant(c.clone());
        term = mul_trunc(&term, &UPoly::monomial(Rat::one(), e[uni] as usize), prec);
        for _ in 0..e[dep] {
            term = mul_trunc(&term, psi, prec);
            if term.is_zero() {
                break;
            }
        }
        acc = &acc + &term;
    }
    acc
}

fn mul_trunc(a: &UPoly<Rat>, b: &UPoly<Rat>, prec: usize) -> UPoly<Rat> {
    let p = a * b;
    UPoly::new(p.coeffs.into_iter().take(prec).collect())
}

/// Value and ramification of the candidate at a coordinate point with net
/// valuation zero, via local series.
fn series_value_ram(
    cand: &CandidateData,
    point: [u16; 3], // 0/1 coordinates
    prec: usize,
) -> Result<(Value, usize), TrinomiaError> {
    let unit = (0..3).find(|&i| point[i] != 0).unwrap();
    let locals: Vec<usize> = (0..3).filter(|&i| i != unit).collect();
    // curve polynomial restricted to chart unit = 1, in local vars (a, b)
    let mut terms = Vec::new();
    for (row, c) in cand.curve.matrix.rows.iter().zip(cand.curve.coeffs.iter()) {
        terms.push((
            [row[locals[0]], row[locals[1]], 0, 0],
            c.clone(),
        ));
    }
    let f_local = MultiPoly::from_terms(2, terms);
    let (uni, psi) = local_series(&f_local, prec)?;
    // series for each coordinate: unit -> 1, locals[uni] -> x, locals[dep] -> psi
    let coord_series = |v: usize| -> UPoly<Rat> {
        if v == unit {
            UPoly::constant(Rat::one())
        } else if v == locals[uni] {
            UPoly::monomial(Rat::one(), 1)
        } else {
            psi.clone()
        }
    };
    let mono_series = |exps: [u16; 3]| -> UPoly<Rat> {
        let mut acc = UPoly::constant(Rat::one());
        for v in 0..3 {
            for _ in 0..exps[v] {
                acc = mul_trunc(&acc, &coord_series(v), prec);
            }
        }
        acc
    };
    let ns = mono_series(cand.num);
    let ds = mono_series(cand.den);
    let no = lowest_order(&ns).ok_or_else(|| {
        TrinomiaError::Undetermined("series precision exhausted (numerator)".into())
    })?;
    let do_ = lowest_order(&ds).ok_or_else(|| {
        TrinomiaError::Undetermined("series precision exhausted (denominator)".into())
    })?;
    if no < do_ {
        return Ok((Value::Infinity, do_ - no));
    }
    if no > do_ {
        return Ok((Value::Finite(cand.shift.clone()), no - do_));
    }
    // finite nonzero value: ratio of leading coefficients; ramification =
    // order of num - value * den relative to den
    let v0 = ns.coeffs[no].clone() / ds.coeffs[do_].clone();
    let diff = &ns - &ds.scale(&v0);
    let e = lowest_order(&diff).ok_or_else(|| {
        TrinomiaError::Undetermined("series precision exhausted (ramification)".into())
    })? - do_;
    Ok((Value::Finite(&v0 + &cand.shift), e))
}

/// Net-zero line classes: value from s^k reduced mod the class polynomial,
/// ramification from the v-order of F restricted to the pencil line a = s b,
/// with gcd splitting when the order is not uniform across the class.
fn line_netzero_classes(
    cand: &CandidateData,
    var: usize,
    class_poly: &UPoly<Rat>,
    line_mult: usize,
    out: &mut Vec<SpecialClass>,
) -> Result<(), TrinomiaError> {
    let others: Vec<usize> = (0..3).filter(|&v| v != var).collect();
    let (a, _b) = (others[0], others[1]);
    let (na, da) = cand.exps(a);
    let k = na - da;
    // coefficient of v^j in F(a -> s b): a polynomial in s (times a b-power)
    let mut coeff_polys: Vec<UPoly<Rat>> = Vec::new();
    let vmax = cand
        .curve
        .matrix
        .rows
        .iter()
        .map(|r| r[var] as usize)
        .max()
        .unwrap();
    for j in 0..=vmax {
        let mut c = UPoly::zero_poly();
        for (row, cf) in cand.curve.matrix.rows.iter().zip(cand.curve.coeffs.iter()) {
            if row[var] as usize != j {
                continue;
            }
            c = &c + &UPoly::monomial(cf.clone(), row[a] as usize);
        }
        coeff_polys.push(c);
    }
    let _ = line_mult;
    // walk j upward; split the class whenever coeff_j(eta) vanishes on part
    // of it only. The first uniformly nonzero j is the ramification index.
    let mut stack = vec![class_poly.monic()];
    'classes: while let Some(g) = stack.pop() {
        if g.degree().map(|d| d == 0).unwrap_or(true) {
            continue;
        }
        // value: s^k reduced mod g must be a constant, otherwise the class
        // has non-rational (or non-uniform) values
        let sknum = UPoly::<Rat>::monomial(Rat::one(), k.unsigned_abs() as usize).rem(&g);
        if sknum.degree().map(|d| d > 0).unwrap_or(false) {
            return Err(TrinomiaError::Undetermined(
                "algebraic special value on a coordinate line".into(),
            ));
        }
        let c0 = sknum.coeff(0);
        if c0.is_zero() {
            return Err(TrinomiaError::Undetermined(
                "unexpected zero class value".into(),
            ));
        }
        let value = if k >= 0 { c0 } else { c0.recip() };
        for (j, coeff) in coeff_polys.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let r = coeff.rem(&g);
            if r.is_zero() {
                continue; // coeff_j vanishes on the whole class: go deeper
            }
            let common = r.gcd(&g);
            if common.degree() == Some(0) {
                out.push(SpecialClass {
                    count: g.deg(),
                    value: Value::Finite(&value + &cand.shift),
                    ram: j,
                    affine_base: false,
                    location: format!(
                        "line {} = 0, class of degree {}",
                        var_name(var),
                        g.deg()
                    ),
                });
                continue 'classes;
            }
            // partial vanishing: split into conjugate subclasses
            stack.push(common.clone());
            stack.push(g.exact_div(&common).unwrap());
            continue 'classes;
        }
        return Err(TrinomiaError::Undetermined(
            "line restriction vanished identically".into(),
        ));
    }
    Ok(())
}

fn var_name(v: usize) -> &'static str {
    ["x", "y", "z"][v]
}

/// All special classes: the on-curve coordinate points, the non-coordinate
/// curve points on the chart line z = 0, and the affine zeros of the
/// denominator (poles). These are exactly the points the sheared affine
/// resultant cannot see or cannot be trusted on.
pub fn special_classes(cand: &CandidateData) -> Result<Vec<SpecialClass>, TrinomiaError> {
    let mut out = Vec::new();
    let curve = cand.curve;
    let prec = 2 * (curve.degree() as usize).pow(2) + 12;

    // coordinate points: F vanishes there iff the terms surviving at the
    // point (those whose exponents vanish on both zero coordinates) sum to 0
    let coord_points = [[1u16, 0, 0], [0, 1, 0], [0, 0, 1]];
    for pt in coord_points {
        let value_at_pt = curve.matrix.rows.iter().zip(curve.coeffs.iter()).fold(
            Rat::zero(),
            |acc, (row, c)| {
                if (0..3).all(|v| pt[v] != 0 || row[v] == 0) {
                    acc + c.clone()
                } else {
                    acc
                }
            },
        );
        if !value_at_pt.is_zero() {
            continue; // F(pt) != 0
        }
        let zv: Vec<usize> = (0..3).filter(|&v| pt[v] == 0).collect();
        let on_chart_line = zv.contains(&2);
        // every on-curve coordinate point is special: the two on z = 0 are
        // outside the chart, and the affine origin (0:0:1) sits at u = 0 for
        // every shear, where the resultant machinery strips it
        let mut net: i64 = 0;
        let mut num_ord: i64 = 0;
        let mut den_ord: i64 = 0;
        for &v in &zv {
            let other = zv.iter().copied().find(|&w| w != v).unwrap();
            let ordv = coord_ord(curve, v, other) as i64;
            let (nv, dv) = cand.exps(v);
            net += (nv - dv) * ordv;
            num_ord += nv * ordv;
            den_ord += dv * ordv;
        }
        let affine_base = !on_chart_line && num_ord > 0 && den_ord > 0;
        let location = format!("({}:{}:{})", pt[0], pt[1], pt[2]);
        let (value, ram) = if net > 0 {
            (Value::Finite(cand.shift.clone()), net as usize)
        } else if net < 0 {
            (Value::Infinity, (-net) as usize)
        } else {
            series_value_ram(cand, pt, prec)?
        };
        out.push(SpecialClass {
            count: 1,
            value,
            ram,
            affine_base,
            location,
        });
    }

    // non-coordinate line classes: only the chart line z = 0 and the
    // denominator's vanishing lines are blind spots of the affine machinery
    for var in 0..3usize {
        let den_positive = cand.den[var] > 0;
        if !(var == 2 || den_positive) {
            continue;
        }
        let (g, _ka, _kb) = line_residual(curve, var);
        if g.degree().map(|d| d == 0).unwrap_or(true) {
            continue;
        }
        let (nv, dv) = cand.exps(var);
        for (s, m) in g.squarefree_decomposition() {
            if s.degree() == Some(0) {
                continue;
            }
            let net = (nv - dv) * m as i64;
            if net > 0 {
                out.push(SpecialClass {
                    count: s.deg(),
                    value: Value::Finite(cand.shift.clone()),
                    ram: net as usize,
                    affine_base: false,
                    location: format!("line {} = 0, class of degree {}", var_name(var), s.deg()),
                });
            } else if net < 0 {
                out.push(SpecialClass {
                    count: s.deg(),
                    value: Value::Infinity,
                    ram: (-net) as usize,
                    affine_base: false,
                    location: format!("line {} = 0, class of degree {}", var_name(var), s.deg()),
                });
            } else {
                line_netzero_classes(cand, var, &s, m, &mut out)?;
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// sheared resultants
// ---------------------------------------------------------------------------

/// Affine curve polynomial in slots (x, y): z set to 1.
pub fn affine_curve(curve: &TrinomialCurve) -> MultiPoly {
    let mut terms = Vec::new();
    for (row, c) in curve.matrix.rows.iter().zip(curve.coeffs.iter()) {
        terms.push(([row[0], row[1], 0, 0], c.clone()));
    }
    Poly::from_terms(4, terms)
}

/// G = num - (t - shift) * den in the affine chart.
pub fn affine_pencil(cand: &CandidateData) -> MultiPoly {
    let num = Poly::monomial(4, &[cand.num[0], cand.num[1], 0, 0], Rat::one());
    let den = Poly::monomial(4, &[cand.den[0], cand.den[1], 0, 0], Rat::one());
    let t = Poly::var(4, VT);
    let shift = Poly::constant(4, cand.shift.clone());
    &num - &(&(&t - &shift) * &den)
}

/// Substitute x -> u - lam * y.
fn shear(p: &MultiPoly, lam: i64) -> MultiPoly {
    let u = Poly::var(4, VU);
    let y = Poly::var(4, VY).scale(&Rat::from_integer(lam.into()));
    let repl = &u - &y;
    p.subst_var(VX, &repl)
}

/// Extract the coefficient polynomials of a (t, u)-polynomial as a dense
/// vector in one variable with UPoly entries in the other.
fn biv_coeffs<C: crate::algebra::Field>(
    p: &Poly<C>,
    outer: usize,
    inner: usize,
) -> Vec<UPoly<C>> {
    let d = p.deg_in(outer).unwrap_or(0) as usize;
    let mut raw: Vec<Vec<C>> = vec![Vec::new(); d + 1];
    for (e, c) in p.terms() {
        let k = e[outer] as usize;
        let j = e[inner] as usize;
        while raw[k].len() <= j {
            raw[k].push(C::zero());
        }
        raw[k][j] = raw[k][j].clone() + c.clone();
    }
    raw.into_iter().map(UPoly::new).collect()
}

fn upoly_to_multipoly<C: crate::algebra::Field>(p: &UPoly<C>, var: usize) -> Poly<C> {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = [0u16; 4];
        e[var] = k as u16;
        terms.push((e, c.clone()));
    }
    Poly::from_terms(4, terms)
}

/// Strip the content of a bivariate (t, u)-polynomial in each variable,
/// returning the stripped polynomial and a log of what was removed.
pub fn strip_contents<C: crate::algebra::Field>(h: &Poly<C>) -> (Poly<C>, Vec<String>) {
    let mut out = h.clone();
    let mut log = Vec::new();
    for (var, name) in [(VU, "u"), (VT, "t")] {
        let other = if var == VU { VT } else { VU };
        let coeffs = biv_coeffs(&out, other, var);
        let mut g = UPoly::zero_poly();
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            g = if g.is_zero() { c.monic() } else { g.gcd(c) };
            if g.degree() == Some(0) {
                break;
            }
        }
        if g.degree().map(|d| d > 0).unwrap_or(false) {
            let gm = upoly_to_multipoly(&g, var);
            out = out.exact_div(&gm).expect("content divides");
            log.push(format!("removed {}-content of degree {}", name, g.deg()));
        }
    }
    (out, log)
}

/// Exact specialized fiber polynomial at a rational parameter value:
/// Res_y(F(u - lam y, y), G(u - lam y, y, t0)) as a univariate polynomial in
/// the shear coordinate u, computed from univariate resultants on a u-grid.
pub fn exact_specialized_fiber(
    cand: &CandidateData,
    lam: i64,
    t0: &Rat,
) -> Result<UPoly<Rat>, TrinomiaError> {
    let f = shear(&affine_curve(cand.curve), lam);
    let g = shear(&affine_pencil(cand), lam).specialize(VT, t0);
    let dy_f = f.deg_in(VY).unwrap_or(0) as usize;
    let dy_g = g.deg_in(VY).unwrap_or(0) as usize;
    if dy_f == 0 && dy_g == 0 {
        return Err(TrinomiaError::NothingToEliminate);
    }
    let du = f.deg_in(VU).unwrap_or(0) as usize * dy_g
        + g.deg_in(VU).unwrap_or(0) as usize * dy_f;
    let mut nodes: Vec<(Rat, Rat)> = Vec::new();
    let mut k = 0i64;
    while nodes.len() < du + 2 {
        let u0 = Rat::from_integer(k.into());
        k += 1;
        let fs = specialize_to_y(&f, &u0, t0);
        let gs = specialize_to_y(&g, &u0, t0);
        if fs.degree() != Some(dy_f) || gs.degree() != Some(dy_g) {
            continue;
        }
        nodes.push((u0, fs.resultant(&gs)));
        if k > 4 * (du as i64 + 4) {
            return Err(TrinomiaError::Undetermined(
                "could not collect interpolation nodes".into(),
            ));
        }
    }
    let check = nodes.pop().unwrap();
    let out = UPoly::interpolate(&nodes);
    if out.eval(&check.0) != check.1 {
        return Err(TrinomiaError::Undetermined(
            "fiber interpolation cross-check failed".into(),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// resultants by grid evaluation and interpolation
// ---------------------------------------------------------------------------

/// Dense coefficients in y of a (y, u, t)-polynomial specialized at (u0, t0).
fn specialize_to_y<C: crate::algebra::Field>(p: &Poly<C>, u0: &C, t0: &C) -> UPoly<C> {
    let mut coeffs = vec![C::zero(); p.deg_in(VY).unwrap_or(0) as usize + 1];
    for (e, c) in p.terms() {
        let mut v = c.clone();
        for _ in 0..e[VU] {
            v = v * u0.clone();
        }
        for _ in 0..e[VT] {
            v = v * t0.clone();
        }
        coeffs[e[VY] as usize] = coeffs[e[VY] as usize].clone() + v;
    }
    UPoly::new(coeffs)
}

/// Res_y(f, g) for (y, u, t)-polynomials, computed by evaluating univariate
/// resultants on a (u, t) grid and interpolating. Nodes where either leading
/// y-coefficient drops are skipped, so every sample equals the specialized
/// generic resultant. A spare node cross-checks the interpolation.
fn grid_resultant_y<C: crate::algebra::Field>(
    f: &Poly<C>,
    g: &Poly<C>,
    sample: &mut impl FnMut(u64) -> C,
    max_nodes: u64,
) -> Option<Poly<C>> {
    let dy_f = f.deg_in(VY).unwrap_or(0) as usize;
    let dy_g = g.deg_in(VY).unwrap_or(0) as usize;
    if dy_f == 0 && dy_g == 0 {
        return None;
    }
    let du = f.deg_in(VU).unwrap_or(0) as usize * dy_g
        + g.deg_in(VU).unwrap_or(0) as usize * dy_f;
    let dt = f.deg_in(VT).unwrap_or(0) as usize * dy_g
        + g.deg_in(VT).unwrap_or(0) as usize * dy_f;
    // per t-node: interpolate in u; then interpolate each u-coefficient in t
    let mut t_nodes: Vec<(C, Vec<C>)> = Vec::new(); // (t0, u-coefficients)
    let mut t_iter = 0u64;
    while t_nodes.len() < dt + 2 {
        if t_iter >= max_nodes {
            return None;
        }
        let t0 = sample(t_iter);
        t_iter += 1;
        let mut u_nodes: Vec<(C, C)> = Vec::new();
        let mut u_iter = 0u64;
        // a leading-coefficient drop that does not depend on u makes every
        // u-sample fail; give the t-node a bounded attempt budget and move on
        let u_budget = (du as u64 + 2) * 2 + 16;
        let mut bad_t = false;
        while u_nodes.len() < du + 2 {
            if u_iter >= u_budget || u_iter >= max_nodes {
                bad_t = true;
                break;
            }
            let u0 = sample(u_iter);
            u_iter += 1;
            let fs = specialize_to_y(f, &u0, &t0);
            let gs = specialize_to_y(g, &u0, &t0);
            if fs.degree() != Some(dy_f) || gs.degree() != Some(dy_g) {
                continue; // leading coefficient dropped at this node
            }
            u_nodes.push((u0, fs.resultant(&gs)));
        }
        if bad_t {
            continue; // skip this t-node entirely
        }
        // spare node check in u
        let check = u_nodes.pop().unwrap();
        let upoly = UPoly::interpolate(&u_nodes);
        if upoly.eval(&check.0) != check.1 {
            return None;
        }
        let mut cs = upoly.coeffs;
        cs.resize(du + 1, C::zero());
        t_nodes.push((t0, cs));
    }
    let check = t_nodes.pop().unwrap();
    let mut out = Poly::zero_poly(4);
    let mut check_eval = vec![C::zero(); du + 1];
    for k in 0..=du {
        let nodes: Vec<(C, C)> = t_nodes
            .iter()
            .map(|(t0, cs)| (t0.clone(), cs[k].clone()))
            .collect();
        let ck = UPoly::interpolate(&nodes);
        check_eval[k] = ck.eval(&check.0);
        for (j, c) in ck.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0u16; 4];
                e[VU] = k as u16;
                e[VT] = j as u16;
                out = &out + &Poly::from_terms(4, vec![(e, c.clone())]);
            }
        }
    }
    if check_eval != check.1 {
        return None;
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// candidate critical values via modular discriminants
// ---------------------------------------------------------------------------

/// The sheared, content-stripped fiber polynomial mod q, as u-coefficient
/// polynomials in t over F_q. None when q is unusable (divides a
/// denominator, or degrees degenerate mod q).
fn modp_sheared(cand: &CandidateData, lam: i64, q: u64) -> Option<Vec<UPoly<Fp>>> {
    let f = shear(&affine_curve(cand.curve), lam);
    let g = shear(&affine_pencil(cand), lam);
    let fq = crate::smoothness::reduce_mod_p(&f, q).ok()?;
    let gq = crate::smoothness::reduce_mod_p(&g, q).ok()?;
    if fq.deg_in(VY) != f.deg_in(VY) || gq.deg_in(VY) != g.deg_in(VY) {
        return None;
    }
    let mut sample = |k: u64| Fp::from_u64(q, k);
    let r = grid_resultant_y(&fq, &gq, &mut sample, q.min(1 << 20))?;
    if r.is_zero() {
        return None;
    }
    let (h, _) = strip_contents(&r);
    Some(biv_coeffs(&h, VU, VT))
}

/// Discriminant-in-u of the mod-q fiber polynomial, by interpolation in t.
/// None when q is unusable; Some(zero poly) signals a non-squarefree H mod q
/// (shear collapse or unlucky prime).
fn modp_disc(ucoeffs: &[UPoly<Fp>], q: u64) -> Option<UPoly<Fp>> {
    let du = ucoeffs.len() - 1;
    if du < 1 {
        return Some(UPoly::constant(Fp::from_u64(q, 1)));
    }
    let dt = ucoeffs
        .iter()
        .map(|c| c.degree().map(|d| d + 1).unwrap_or(0))
        .max()
        .unwrap_or(1);
    let bound = (2 * du).saturating_sub(1) * dt + 1;
    let mut nodes: Vec<(Fp, Fp)> = Vec::new();
    let mut t0 = 0u64;
    let mut zero_hits = 0usize;
    while nodes.len() < bound && t0 < q {
        let tv = Fp::from_u64(q, t0);
        t0 += 1;
        let spec = UPoly::new(ucoeffs.iter().map(|c| c.eval(&tv)).collect::<Vec<Fp>>());
        if spec.degree() != Some(du) {
            continue; // leading-coefficient drop: skip the node
        }
        let der = spec.derivative();
        let res = spec.resultant(&der);
        if res.is_zero() {
            zero_hits += 1;
            if zero_hits > bound {
                return Some(UPoly::zero_poly());
            }
        }
        nodes.push((tv, res));
    }
    if nodes.len() < bound {
        return None;
    }
    Some(UPoly::interpolate(&nodes))
}

struct ModularCandidates {
    values: Vec<Rat>,
    /// At least one good prime had a nonzero discriminant, certifying that
    /// the sheared fiber polynomial is squarefree over Q (faithful shear).
    squarefree_certified: bool,
    /// Stripped mod-p fiber data, kept for the per-fiber profile work:
    /// (prime, u-coefficient polynomials in t).
    fiber_data: Vec<(u64, Vec<UPoly<Fp>>)>,
}

/// Rational candidate critical values: roots of the modular discriminants
/// from two large primes, paired by CRT and rationally reconstructed with a
/// small height bound (junk pairs almost never reconstruct). Completeness
/// of the final critical set does not rest on this list: the
/// Riemann-Hurwitz audit certifies it downstream.
fn modular_candidates(cand: &CandidateData, lam: i64, prime_round: u64) -> ModularCandidates {
    let mut q = (1u64 << 62) + (prime_round << 8);
    let mut residue_sets: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut fiber_data = Vec::new();
    let mut sf = false;
    let mut attempts = 0;
    while residue_sets.len() < 2 && attempts < 8 {
        q = crate::algebra::primes::next_prime(q);
        attempts += 1;
        let Some(ucoeffs) = modp_sheared(cand, lam, q) else {
            continue;
        };
        let Some(disc) = modp_disc(&ucoeffs, q) else {
            continue;
        };
        if disc.is_zero() {
            continue; // collapse suspected at this prime
        }
        sf = true;
        residue_sets.push((q, roots::fp_roots(&disc, q)));
        fiber_data.push((q, ucoeffs));
    }
    let mut values = Vec::new();
    if residue_sets.len() == 2 {
        let (q1, r1) = &residue_sets[0];
        let (q2, r2) = &residue_sets[1];
        let m1 = BigInt::from(*q1);
        let m2 = BigInt::from(*q2);
        let m = &m1 * &m2;
        let bound = BigInt::from(1u64 << 36);
        let inv_m1_mod_m2 = mod_inv(&m1, &m2);
        for a in r1 {
            for b in r2 {
                let x1 = BigInt::from(*a);
                let x2 = BigInt::from(*b);
                let k = ((&x2 - &x1) * &inv_m1_mod_m2).mod_floor(&m2);
                let x = (&x1 + &k * &m1).mod_floor(&m);
                if let Some(r) = rational_reconstruct_sym(&x, &m, &bound) {
                    push_unique(&mut values, r);
                }
            }
        }
    }
    ModularCandidates {
        values,
        squarefree_certified: sf,
        fiber_data,
    }
}

/// Stripped mod-p fiber data for one shear, up to two usable primes; used
/// for profile refinement (an unfaithful shear can only merge roots, which
/// the finest-profile rule and the Riemann-Hurwitz audit absorb).
fn modp_fiber_data(cand: &CandidateData, lam: i64, prime_round: u64) -> Vec<(u64, Vec<UPoly<Fp>>)> {
    let mut q = (1u64 << 62) + (prime_round << 8);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < 2 && attempts < 8 {
        q = crate::algebra::primes::next_prime(q);
        attempts += 1;
        if let Some(ucoeffs) = modp_sheared(cand, lam, q) {
            out.push((q, ucoeffs));
        }
    }
    out
}

fn mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn rational_reconstruct_sym(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rat> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let qq = &r0 / &r1;
        let r2 = &r0 - &qq * &r1;
        let t2 = &t0 - &qq * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    let (a, b) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if a.gcd(&b).is_one() {
        Some(Rat::new(a, b))
    } else {
        None
    }
}

fn push_unique(v: &mut Vec<Rat>, r: Rat) {
    if !v.contains(&r) {
        v.push(r);
    }
}

/// Multiplicity profile of the fiber over t0 read mod p from the stripped
/// fiber data: specialize the t-polynomials, strip every power of u (shears
/// start at 1, so only base points, the affine origin, and shear collisions
/// sit at u = 0, all either accounted among the special classes or caught by
/// the conservation check), and decompose squarefree. Roots can only merge
/// mod p, never split, so an undercounted profile leaves a Riemann-Hurwitz
/// defect and escalates.
fn modp_profile(ucoeffs: &[UPoly<Fp>], q: u64, t0: &Rat) -> Option<Vec<usize>> {
    let qm = BigInt::from(q);
    if (t0.denom() % &qm).is_zero() {
        return None;
    }
    let tn = t0.numer().mod_floor(&qm);
    let td = t0.denom().mod_floor(&qm);
    let tv = Fp::from_u64(q, u64::try_from(tn).unwrap()) / Fp::from_u64(q, u64::try_from(td).unwrap());
    let spec = UPoly::new(ucoeffs.iter().map(|c| c.eval(&tv)).collect::<Vec<Fp>>());
    if spec.is_zero() {
        return None;
    }
    let low = spec.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let trimmed = UPoly::new(spec.coeffs[low..].to_vec());
    let mut profile = Vec::new();
    if trimmed.deg() > 0 {
        for (s, m) in trimmed.squarefree_decomposition() {
            if let Some(ds) = s.degree() {
                for _ in 0..ds {
                    profile.push(m);
                }
            }
        }
    }
    Some(profile)
}

// ---------------------------------------------------------------------------
// fiber assembly and the Riemann-Hurwitz audit
// ---------------------------------------------------------------------------

// ---------------------------------------------------------------------------
// fiber assembly and the Riemann-Hurwitz audit
// ---------------------------------------------------------------------------

/// Affine multiplicity profile of the fiber over t0 from one shear: the
/// exact specialized resultant with every power of u stripped (for shears
/// lam >= 1 only base points and shear collisions sit at u = 0; a collision
/// breaks mass conservation and escalates the shear). Returns the profile
/// and the stripped mass.
fn affine_profile(
    cand: &CandidateData,
    lam: i64,
    t0: &Rat,
) -> Result<Option<(Vec<usize>, usize)>, TrinomiaError> {
    let spec = exact_specialized_fiber(cand, lam, t0)?;
    if spec.is_zero() {
        return Ok(None);
    }
    let low = spec.coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let trimmed = UPoly::new(spec.coeffs[low..].to_vec());
    let mut profile = Vec::new();
    if trimmed.deg() > 0 {
        for (s, m) in trimmed.squarefree_decomposition() {
            if let Some(ds) = s.degree() {
                for _ in 0..ds {
                    profile.push(m);
                }
            }
        }
    }
    Ok(Some((profile, low)))
}

/// Full certified analysis of the candidate's fibers.
pub fn analyze(cand: &CandidateData) -> Result<FiberAnalysis, TrinomiaError> {
    if cand.num == cand.den {
        return Err(TrinomiaError::ConstantCandidate);
    }
    let d = cand.curve.degree() as i64;
    let genus = (d - 1) * (d - 2) / 2;
    let specials = special_classes(cand)?;

    // the map degree is the total pole mass, known exactly from valuations
    let degree: usize = specials
        .iter()
        .filter(|s| s.value == Value::Infinity)
        .map(|s| s.ram * s.count)
        .sum();
    if degree == 0 {
        return Err(TrinomiaError::ConstantCandidate);
    }

    let mut log: Vec<String> = Vec::new();
    for s in &specials {
        log.push(format!(
            "special: {} -> {:?}, e = {}, count = {}{}",
            s.location,
            s.value,
            s.ram,
            s.count,
            if s.affine_base { " (base point)" } else { "" }
        ));
    }

    // shears start at 1 so that coordinate-axis fiber points never sit at
    // u = 0; escalate the shear (and the primes) on any inconsistency
    for round in 0..3u64 {
        'shears: for lam0 in 1..=8i64 {
            let mc = modular_candidates(cand, lam0, round);
            if !mc.squarefree_certified || mc.fiber_data.is_empty() {
                continue; // collapsed projection at this shear
            }
            let mut cands = mc.values.clone();
            for s in &specials {
                if let Value::Finite(v) = &s.value {
                    push_unique(&mut cands, v.clone());
                }
            }
            cands.sort();

            let mut shear_cache: Vec<(i64, Vec<(u64, Vec<UPoly<Fp>>)>)> =
                vec![(lam0, mc.fiber_data.clone())];
            let mut fibers: Vec<Fiber> = Vec::new();
            for t0 in &cands {
                let special_part: Vec<usize> = specials
                    .iter()
                    .filter(|s| s.value == Value::Finite(t0.clone()))
                    .flat_map(|s| std::iter::repeat(s.ram).take(s.count))
                    .collect();
                let mut best: Option<Vec<usize>> = None;
                'refine: for lam in lam0..lam0 + 6 {
                    let data = match shear_cache.iter().find(|(l, _)| *l == lam) {
                        Some((_, d)) => d.clone(),
                        None => {
                            let d = modp_fiber_data(cand, lam, round);
                            shear_cache.push((lam, d.clone()));
                            d
                        }
                    };
                    for (q, ucoeffs) in &data {
                        let Some(affine) = modp_profile(ucoeffs, *q, t0) else {
                            continue;
                        };
                        let mut profile = affine;
                        profile.extend(special_part.iter().copied());
                        if profile.iter().sum::<usize>() != degree {
                            continue; // mass lost at u = 0: collision here
                        }
                        profile.sort_unstable();
                        if best.as_ref().map(|b| profile.len() > b.len()).unwrap_or(true) {
                            best = Some(profile);
                        }
                        if best.as_ref().map(|b| b.len()) == Some(degree) {
                            break 'refine;
                        }
                    }
                }
                let Some(profile) = best else {
                    continue 'shears;
                };
                if profile.len() < degree {
                    fibers.push(Fiber {
                        value: Value::Finite(t0.clone()),
                        profile,
                    });
                }
            }

            // fiber over infinity from the special poles
            let mut inf_profile: Vec<usize> = specials
                .iter()
                .filter(|s| s.value == Value::Infinity)
                .flat_map(|s| std::iter::repeat(s.ram).take(s.count))
                .collect();
            inf_profile.sort_unstable();
            if inf_profile.len() < degree {
                fibers.push(Fiber {
                    value: Value::Infinity,
                    profile: inf_profile,
                });
            }

            let total_defect: i64 = fibers
                .iter()
                .map(|f| degree as i64 - f.profile.len() as i64)
                .sum();
            let rh_defect = (2 * genus - 2) - (-(2 * degree as i64) + total_defect);
            if rh_defect != 0 {
                continue 'shears; // missed value or merged profile: escalate
            }
            log.push(format!("shear u = x + {} y", lam0));
            return Ok(FiberAnalysis {
                degree,
                genus,
                critical_fibers: fibers,
                rh_defect,
                shear_used: lam0,
                stripped_log: log,
                non_rational_flag: false,
            });
        }
    }

    Err(TrinomiaError::Undetermined(
        "Riemann-Hurwitz audit failed for every shear in budget; \
         non-rational critical values are likely"
            .into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{canonical_curve, CurveType};

    fn cand_for(ty: CurveType, d: u32) -> (TrinomialCurve, [u16; 3], [u16; 3], Rat) {
        let curve = canonical_curve(ty, d).unwrap();
        let dd = d as u16;
        match ty {
            CurveType::Fermat => (curve, [dd, 0, 0], [0, 0, dd], Rat::zero()),
            CurveType::SmallJordan => (curve, [0, dd - 1, 0], [0, 0, dd - 1], Rat::one()),
            CurveType::Block => (curve, [0, dd - 2, 0], [0, 0, dd - 2], Rat::one()),
            CurveType::BigJordan => (curve, [dd - 1, 0, 0], [0, dd - 1, 0], Rat::one()),
            CurveType::Klein => (curve, [0, dd - 1, 0], [dd - 2, 0, 1], Rat::zero()),
        }
    }

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn fermat_cubic_analysis() {
        let (curve, num, den, shift) = cand_for(CurveType::Fermat, 3);
        let cand = CandidateData { curve: &curve, num, den, shift };
        let a = analyze(&cand).unwrap();
        assert_eq!(a.degree, 9);
        assert_eq!(a.rh_defect, 0);
        assert_eq!(a.critical_fibers.len(), 3);
        let vals: Vec<&Value> = a.critical_fibers.iter().map(|f| &f.value).collect();
        assert!(vals.contains(&&Value::Finite(q(0))));
        assert!(vals.contains(&&Value::Finite(q(-1))));
        assert!(vals.contains(&&Value::Infinity));
        for f in &a.critical_fibers {
            assert_eq!(f.profile, vec![3, 3, 3]);
        }
    }

    #[test]
    fn small_jordan_cubic_analysis() {
        let (curve, num, den, shift) = cand_for(CurveType::SmallJordan, 3);
        let cand = CandidateData { curve: &curve, num, den, shift };
        let a = analyze(&cand).unwrap();
        assert_eq!(a.degree, 6);
        assert_eq!(a.rh_defect, 0);
        let by_val = |v: Value| {
            a.critical_fibers
                .iter()
                .find(|f| f.value == v)
                .map(|f| f.profile.clone())
        };
        assert_eq!(by_val(Value::Finite(q(0))), Some(vec![3, 3]));
        assert_eq!(by_val(Value::Finite(q(1))), Some(vec![6]));
        assert_eq!(by_val(Value::Infinity), Some(vec![2, 2, 2]));
    }

    #[test]
    fn klein_quartic_analysis() {
        let (curve, num, den, shift) = cand_for(CurveType::Klein, 4);
        let cand = CandidateData { curve: &curve, num, den, shift };
        let a = analyze(&cand).unwrap();
        assert_eq!(a.degree, 7); // d^2 - 3d + 3, not the printed d^2 - d
        assert_eq!(a.rh_defect, 0);
        assert_eq!(a.critical_fibers.len(), 3);
        for f in &a.critical_fibers {
            assert_eq!(f.profile, vec![7]);
        }
    }

    #[test]
    fn big_jordan_quartic_analysis() {
        let (curve, num, den, shift) = cand_for(CurveType::BigJordan, 4);
        let cand = CandidateData { curve: &curve, num, den, shift };
        let a = analyze(&cand).unwrap();
        assert_eq!(a.degree, 9);
        assert_eq!(a.rh_defect, 0);
        let by_val = |v: Value| {
            a.critical_fibers
                .iter()
                .find(|f| f.value == v)
                .map(|f| f.profile.clone())
        };
        assert_eq!(by_val(Value::Finite(q(0))), Some(vec![3, 3, 3]));
        assert_eq!(by_val(Value::Finite(q(1))), Some(vec![9]));
        assert_eq!(by_val(Value::Infinity), Some(vec![9]));
    }

    #[test]
    fn block_analysis_d5() {
        let (curve, num, den, shift) = cand_for(CurveType::Block, 5);
        let cand = CandidateData { curve: &curve, num, den, shift };
        let a = analyze(&cand).unwrap();
        assert_eq!(a.degree, 15);
        assert_eq!(a.rh_defect, 0);
        let by_val = |v: Value| {
            a.critical_fibers
                .iter()
                .find(|f| f.value == v)
                .map(|f| f.profile.clone())
        };
        assert_eq!(by_val(Value::Finite(q(0))), Some(vec![5, 5, 5]));
        assert_eq!(by_val(Value::Finite(q(1))), Some(vec![15]));
        assert_eq!(by_val(Value::Infinity), Some(vec![15]));
    }
}


#[cfg(test)]
mod timing {
    use super::*;
    use crate::curve::{canonical_curve, CurveType};

    #[test]
    #[ignore]
    fn d6_timing() {
        for (ty, num, den, shift) in [
            (CurveType::Fermat, [6u16, 0, 0], [0u16, 0, 6], 0i64),
            (CurveType::SmallJordan, [0, 5, 0], [0, 0, 5], 1),
            (CurveType::Block, [0, 4, 0], [0, 0, 4], 1),
            (CurveType::BigJordan, [5, 0, 0], [0, 5, 0], 1),
            (CurveType::Klein, [0, 5, 0], [4, 0, 1], 0),
        ] {
            let curve = canonical_curve(ty, 6).unwrap();
            let cand = CandidateData {
                curve: &curve,
                num,
                den,
                shift: Rat::from_integer(shift.into()),
            };
            let t0 = std::time::Instant::now();
            let a = analyze(&cand).unwrap();
            println!(
                "{:?}: degree {} rh_defect {} criticals {} in {:.2?}",
                ty,
                a.degree,
                a.rh_defect,
                a.critical_fibers.len(),
                t0.elapsed()
            );
            assert_eq!(a.rh_defect, 0);
        }
    }
}

