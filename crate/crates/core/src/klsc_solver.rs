//! Exact solving of `2 s1 - s = 0` over the positive orthant of invariant
//! metrics: clear denominators into a homogeneous polynomial, reduce under
//! an optional Gray-Hervella class constraint and fixed values, and solve
//! the residual univariate equation in a quadratic surd field.

use crate::flag_manifold::{enumerate_triples, FlagDecomposition};
use crate::hermitian_geometry::{
    scalar_gap, triple_type, AlmostComplexStructure, GrayHervellaClass, TripleType,
};
use crate::poly::MultiPoly;
use crate::structure_constants::{kl_constants, m_squared};
use crate::surd::{squarefree_decompose, Scalar, Surd};
use crate::{rat, ratio, Error, Rat, Result};
use num::traits::{Signed, ToPrimitive};
use num::Integer;

/// The cleared-denominator gap equation: `poly / (12 * prod l_i^denom[i])`
/// equals `2 s1 - s` on the positive orthant.
#[derive(Debug, Clone, PartialEq)]
pub struct GapPolynomial {
    pub poly: MultiPoly,
    /// Exponents of the cleared monomial denominator (the 12 is implicit).
    pub denominator: Vec<u32>,
}

impl GapPolynomial {
    pub fn n_vars(&self) -> usize {
        self.poly.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = serde_json::Map::new();
        for (e, c) in &self.poly.terms {
            terms.insert(monomial_string(e), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({
            "n_vars": self.n_vars(),
            "degree": self.degree(),
            "denominator": format!("12*{}", monomial_string(&self.denominator)),
            "terms": terms,
        })
    }
}

fn monomial_string(exps: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("l{}", i + 1)),
            _ => parts.push(format!("l{}^{}", i + 1, e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl std::fmt::Display for GapPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms.iter().rev() {
            if first {
                write!(f, "({})*{}", c, monomial_string(e))?;
                first = false;
            } else {
                write!(f, " + ({})*{}", c, monomial_string(e))?;
            }
        }
        Ok(())
    }
}

/// Clear denominators of `2 s1 - s` into a homogeneous polynomial with
/// exact rational coefficients.
pub fn gap_polynomial(d: &FlagDecomposition, j: &AlmostComplexStructure) -> Result<GapPolynomial> {
    let n = d.n_summands();
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedSummandCount(n));
    }
    j.check_len(n)?;
    let triples = enumerate_triples(d);

    // Per-triple numerators and monomial denominators.
    let mut numerators: Vec<MultiPoly> = Vec::new();
    let mut denoms: Vec<Vec<u32>> = Vec::new();
    let mut common: Vec<u32> = vec![0; n];
    for t in &triples {
        let m2 = m_squared(&d.root_system, &t.a, &t.b)?;
        let idx = [
            d.summand_of(&t.a).unwrap() - 1,
            d.summand_of(&t.b).unwrap() - 1,
            d.summand_of(&t.c).unwrap() - 1,
        ];
        let eps = [
            i64::from(j.eps(d, &t.a)?),
            i64::from(j.eps(d, &t.b)?),
            i64::from(j.eps(d, &t.c)?),
        ];
        let mut den = vec![0u32; n];
        for &i in &idx {
            den[i] += 1;
        }
        for i in 0..n {
            common[i] = common[i].max(den[i]);
        }

        let var = |i: usize| MultiPoly::var(n, i);
        let sum_l = var(idx[0]).add(&var(idx[1])).add(&var(idx[2]));
        let e = eps[0] * eps[1] * eps[2] + eps[0] + eps[1] + eps[2];
        let ef2 = e * e;

        let mut num = MultiPoly::zero(n);
        if ef2 != 0 {
            // -(5/6) * m^2 ef2 (la+lb+lc)^2 / 96.
            let c = &m2 * ratio(-5 * ef2, 6 * 96);
            num = num.add(&sum_l.mul(&sum_l).scale(&c));
            // (1/8) * m^2 ef2 [sum (-2 la + lb + lc)^2] / 54.
            let c = &m2 * ratio(ef2, 8 * 54);
            let q = |a: usize, b: usize, c2: usize| {
                let v = var(idx[b]).add(&var(idx[c2])).sub(&var(idx[a])).sub(&var(idx[a]));
                v.mul(&v)
            };
            let bracket = q(0, 1, 2).add(&q(1, 0, 2)).add(&q(2, 0, 1));
            num = num.add(&bracket.scale(&c));
        }
        // (1/2) * m^2 [4 sum eps_i l_i - e_lin sum l_i]^2 / 96.
        let e_lin = eps[0] + eps[1] + eps[2] + eps[0] * eps[1] * eps[2];
        let mut inner = MultiPoly::zero(n);
        for k in 0..3 {
            inner = inner.add(&var(idx[k]).scale(&rat(4 * eps[k])));
        }
        inner = inner.sub(&sum_l.scale(&rat(e_lin)));
        let c = &m2 * ratio(1, 2 * 96);
        num = num.add(&inner.mul(&inner).scale(&c));

        numerators.push(num);
        denoms.push(den);
    }

    // Multiply each numerator by the missing part of the common denominator
    // and by the overall 12.
    let mut poly = MultiPoly::zero(n);
    for (num, den) in numerators.iter().zip(&denoms) {
        let missing: Vec<u32> = common.iter().zip(den).map(|(c, d2)| c - d2).collect();
        let lift = MultiPoly::monomial(n, &missing, rat(12));
        poly = poly.add(&num.mul(&lift));
    }
    debug_assert!(poly.is_homogeneous());
    Ok(GapPolynomial {
        poly,
        denominator: common,
    })
}

/// A certified numeric root bracket, used only when the residual equation
/// has degree above two.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub residual_bound: Rat,
}

/// Exact solution family of `2 s1 - s = 0` under fixed values and an
/// optional class constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFamily {
    pub flag: String,
    pub j: AlmostComplexStructure,
    pub constraint: Option<GrayHervellaClass>,
    /// 1-based variable index with its fixed rational value.
    pub fixed: Vec<(usize, Rat)>,
    /// 1-based index of the variable the residual equation was solved for.
    pub solved_var: Option<usize>,
    pub roots: Vec<Surd>,
    /// Roots whose full reconstructed metric is positive.
    pub positive: Vec<Surd>,
    /// Full metrics for each member of `positive`, in variable order.
    pub metrics: Vec<Vec<Surd>>,
    pub certified: bool,
    /// True when the gap vanishes identically on the constrained locus.
    pub identically_zero: bool,
    pub numeric_intervals: Vec<NumericInterval>,
    pub notes: Vec<String>,
}

impl SolutionFamily {
    pub fn is_empty(&self) -> bool {
        !self.identically_zero && self.positive.is_empty() && self.numeric_intervals.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let surd_json = |s: &Surd| {
            serde_json::json!({
                "a": s.a.to_string(),
                "b": s.b.to_string(),
                "d": s.d,
            })
        };
        serde_json::json!({
            "flag": self.flag,
            "J": self.j.to_string(),
            "constraint": self.constraint.map(|c| c.label()),
            "fixed": self
                .fixed
                .iter()
                .map(|(i, v)| serde_json::json!({"var": format!("l{i}"), "value": v.to_string()}))
                .collect::<Vec<_>>(),
            "solved_var": self.solved_var.map(|i| format!("l{i}")),
            "roots": self.roots.iter().map(surd_json).collect::<Vec<_>>(),
            "positive": self.positive.iter().map(surd_json).collect::<Vec<_>>(),
            "metrics": self
                .metrics
                .iter()
                .map(|m| m.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "certified": self.certified,
            "identically_zero": self.identically_zero,
            "numeric_intervals": self
                .numeric_intervals
                .iter()
                .map(|iv| {
                    serde_json::json!({
                        "lo": iv.lo.to_string(),
                        "hi": iv.hi.to_string(),
                        "residual_bound": iv.residual_bound.to_string(),
                    })
                })
                .collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

/// True iff `2 s1 - s` is exactly zero at the given positive surd metric.
pub fn verify(d: &FlagDecomposition, j: &AlmostComplexStructure, g: &[Surd]) -> Result<bool> {
    let mut field = 1i64;
    for s in g {
        if s.d != 1 {
            if field != 1 && field != s.d {
                return Err(Error::IncompatibleSurds(field, s.d));
            }
            field = s.d;
        }
    }
    let triples = enumerate_triples(d);
    Ok(scalar_gap(d, &triples, j, g)?.is_zero())
}

/// Linear forms (rows of rational coefficients) whose vanishing puts
/// `(g, J)` inside the given Gray-Hervella class. Each norm component is a
/// positively weighted sum of squares of linear forms in the metric, so
/// forcing a component to zero forces each of its forms to zero.
fn class_vanishing_forms(
    d: &FlagDecomposition,
    j: &AlmostComplexStructure,
    class: GrayHervellaClass,
) -> Result<Vec<Vec<Rat>>> {
    use GrayHervellaClass::*;
    let (kill_w1, kill_w2, kill_w3) = match class {
        Kaehler => (true, true, true),
        W1 => (false, true, true),
        W2 => (true, false, true),
        W3 => (true, true, false),
        W1W2 => (false, false, true),
        W1W3 => (false, true, false),
        W2W3 => (true, false, false),
        W1W2W3 => (false, false, false),
    };
    let n = d.n_summands();
    let triples = enumerate_triples(d);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for t in &triples {
        let m2 = m_squared(&d.root_system, &t.a, &t.b)?;
        if m2.is_zero() {
            continue;
        }
        let idx = [
            d.summand_of(&t.a).unwrap() - 1,
            d.summand_of(&t.b).unwrap() - 1,
            d.summand_of(&t.c).unwrap() - 1,
        ];
        match triple_type(d, j, t)? {
            TripleType::ZeroThree => {
                if kill_w1 {
                    // (dF)- form: la + lb + lc.
                    let mut row = vec![Rat::zero(); n];
                    for &i in &idx {
                        row[i] += rat(1);
                    }
                    rows.push(row);
                }
                if kill_w2 {
                    // N0 forms: -2 la + lb + lc and cyclic.
                    for a in 0..3 {
                        let mut row = vec![Rat::zero(); n];
                        for (k, &i) in idx.iter().enumerate() {
                            row[i] += if k == a { rat(-2) } else { rat(1) };
                        }
                        rows.push(row);
                    }
                }
            }
            TripleType::OneTwo => {
                if kill_w3 {
                    // (dF)+ form: eps_a la + eps_b lb + eps_c lc.
                    let mut row = vec![Rat::zero(); n];
                    let eps = [j.eps(d, &t.a)?, j.eps(d, &t.b)?, j.eps(d, &t.c)?];
                    for (k, &i) in idx.iter().enumerate() {
                        row[i] += rat(i64::from(eps[k]));
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

/// Gaussian elimination preferring high-index pivots, so relations come
/// out in the paper's shape (l3 expressed through l1, l2). Returns
/// substitutions (pivot var, linear coefficients over the other vars).
fn eliminate(rows: Vec<Vec<Rat>>, n: usize) -> Vec<(usize, Vec<Rat>)> {
    let mut rows = rows;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut used_rows = vec![false; rows.len()];
    for col in (0..n).rev() {
        let Some(r) = (0..rows.len())
            .find(|&r| !used_rows[r] && !rows[r][col].is_zero()) else { continue };
        used_rows[r] = true;
        let inv = rows[r][col].clone();
        for c in 0..n {
            rows[r][c] = &rows[r][c] / &inv;
        }
        for r2 in 0..rows.len() {
            if r2 != r && !rows[r2][col].is_zero() {
                let f = rows[r2][col].clone();
                for c in 0..n {
                    let delta = &rows[r][c] * &f;
                    rows[r2][c] = &rows[r2][c] - &delta;
                }
            }
        }
        pivots.push((r, col));
    }
    let mut subs = Vec::new();
    for (r, col) in pivots {
        let mut coeffs = vec![Rat::zero(); n];
        for c in 0..n {
            if c != col {
                coeffs[c] = -rows[r][c].clone();
            }
        }
        subs.push((col, coeffs));
    }
    subs
}

fn rat_to_i64(r: &num::BigInt) -> Option<i64> {
    r.to_i64()
}

/// Exact square root of a nonnegative rational as a surd, if the radicand
/// fits machine integers.
fn sqrt_rat(d2: &Rat) -> Option<Surd> {
    debug_assert!(!d2.is_negative());
    let num = d2.numer().clone();
    let den = d2.denom().clone();
    let nd = &num * &den;
    let nd = rat_to_i64(&nd)?;
    let (s, sf) = squarefree_decompose(nd);
    Some(Surd::new(Rat::zero(), Rat::new(s.into(), den), sf))
}

/// Rational roots of an integer-coefficient polynomial, found by the
/// rational root test. Returns roots with multiplicity 1 each (deflation
/// handles repeats at the call site).
fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    // Clear to integers.
    let mut lcm = num::BigInt::from(1);
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<num::BigInt> = coeffs
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let (Some(a0), Some(lead)) = (ints.first(), ints.last()) else {
        return Vec::new();
    };
    let (a0, lead) = (a0.clone(), lead.clone());
    let (Some(a0), Some(lead)) = (rat_to_i64(&a0.abs()), rat_to_i64(&lead.abs())) else {
        return Vec::new();
    };
    if a0 == 0 || lead == 0 {
        return Vec::new();
    }
    let divisors = |n: i64| -> Vec<i64> {
        let mut out = Vec::new();
        let mut k = 1;
        while k * k <= n {
            if n % k == 0 {
                out.push(k);
                out.push(n / k);
            }
            k += 1;
        }
        out
    };
    let mut found = Vec::new();
    for p in divisors(a0) {
        for q in divisors(lead) {
            for sign in [1i64, -1] {
                let cand = Rat::new((sign * p).into(), q.into());
                let mut val = Rat::zero();
                for c in coeffs.iter().rev() {
                    val = val * &cand + c;
                }
                if val.is_zero() && !found.contains(&cand) {
                    found.push(cand);
                }
            }
        }
    }
    found
}

/// Synthetic division of `coeffs` (constant term first) by `x - r`;
/// assumes `r` is an exact root.
fn deflate(coeffs: &[Rat], r: &Rat) -> Vec<Rat> {
    let n = coeffs.len();
    let mut q = vec![Rat::zero(); n - 1];
    let mut carry = Rat::zero();
    for i in (1..n).rev() {
        carry = &coeffs[i] + &carry * r;
        q[i - 1] = carry.clone();
    }
    debug_assert!((&coeffs[0] + &carry * r).is_zero());
    q
}

/// Bisection brackets for positive roots of a univariate polynomial with
/// rational coefficients; used only above degree two.
fn bisect_positive_roots(coeffs: &[Rat]) -> Vec<NumericInterval> {
    let eval = |x: &Rat| -> Rat {
        let mut v = Rat::zero();
        for c in coeffs.iter().rev() {
            v = v * x + c;
        }
        v
    };
    let lead = coeffs.last().unwrap();
    let bound: Rat = coeffs
        .iter()
        .map(|c| (c / lead).abs())
        .fold(Rat::zero(), |a, b| if a > b { a } else { b })
        + rat(1);
    let steps = 256;
    let mut out = Vec::new();
    let mut prev_x = &bound / rat(1_000_000);
    let mut prev_v = eval(&prev_x);
    for k in 1..=steps {
        let x = &bound * ratio(k, steps);
        let v = eval(&x);
        if v.is_zero() {
            out.push(NumericInterval {
                lo: x.clone(),
                hi: x.clone(),
                residual_bound: Rat::zero(),
            });
        } else if prev_v.is_negative() != v.is_negative() && !prev_v.is_zero() {
            let (mut lo, mut hi, mut flo) = (prev_x.clone(), x.clone(), prev_v.clone());
            for _ in 0..64 {
                let mid = (&lo + &hi) / rat(2);
                let fm = eval(&mid);
                if fm.is_zero() {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                if fm.is_negative() == flo.is_negative() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            let mid = (&lo + &hi) / rat(2);
            out.push(NumericInterval {
                residual_bound: eval(&mid).abs(),
                lo,
                hi,
            });
        }
        prev_x = x;
        prev_v = v;
    }
    out
}

/// Solve `2 s1 - s = 0` for `(d, J)` after fixing some variables
/// (1-based) and optionally restricting to a Gray-Hervella class. The
/// residual equation must be univariate; degree above two falls back to
/// certified bisection.
pub fn solve(
    d: &FlagDecomposition,
    j: &AlmostComplexStructure,
    fixed: &[(usize, Rat)],
    constraint: Option<GrayHervellaClass>,
) -> Result<SolutionFamily> {
    let n = d.n_summands();
    let gp = gap_polynomial(d, j)?;
    let mut family = SolutionFamily {
        flag: d.spec.name.clone(),
        j: j.clone(),
        constraint,
        fixed: fixed.to_vec(),
        solved_var: None,
        roots: Vec::new(),
        positive: Vec::new(),
        metrics: Vec::new(),
        certified: true,
        identically_zero: false,
        numeric_intervals: Vec::new(),
        notes: Vec::new(),
    };

    // Constraint relations, as substitutions pivot -> linear combination.
    let subs = match constraint {
        Some(class) => eliminate(class_vanishing_forms(d, j, class)?, n),
        None => Vec::new(),
    };
    // Normalizing the polynomial makes the output invariant under joint
    // rescaling of (K, L).
    let mut p = gp.poly.primitive();
    for (i, coeffs) in &subs {
        p = p.subst_linear(*i, coeffs);
    }
    for (i, v) in fixed {
        if *i == 0 || *i > n {
            return Err(Error::MetricCountMismatch { got: *i, expected: n });
        }
        p = p.subst_const(i - 1, v);
    }

    if p.is_zero() {
        family.identically_zero = true;
        note_degenerate_kl(d, j, &mut family)?;
        return Ok(family);
    }

    let free: Vec<usize> = (0..n).filter(|&i| p.degree_in(i) > 0).collect();
    if free.is_empty() {
        // Nonzero constant: empty family.
        note_degenerate_kl(d, j, &mut family)?;
        return Ok(family);
    }
    if free.len() > 1 {
        return Err(Error::NotUnivariate(free.len()));
    }
    let var = free[0];
    family.solved_var = Some(var + 1);
    let (_, mut coeffs) = p.as_univariate().expect("single free variable");

    // Strip roots at zero (never positive).
    while coeffs.first().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.remove(0);
    }
    // Deflate rational roots until the residual is at most quadratic.
    let mut rational: Vec<Rat> = Vec::new();
    while coeffs.len() > 3 {
        let found = rational_roots(&coeffs);
        match found.first() {
            Some(r) => {
                rational.push(r.clone());
                coeffs = deflate(&coeffs, r);
            }
            None => break,
        }
    }

    let mut roots: Vec<Surd> = rational.iter().map(|r| Surd::rational(r.clone())).collect();
    match coeffs.len() {
        0 | 1 => {}
        2 => roots.push(Surd::rational(-&coeffs[0] / &coeffs[1])),
        3 => {
            let (a0, a1, a2) = (&coeffs[0], &coeffs[1], &coeffs[2]);
            let disc = a1 * a1 - rat(4) * a0 * a2;
            if disc.is_negative() {
                family.notes.push("negative discriminant: no real roots".into());
            } else {
                match sqrt_rat(&disc) {
                    Some(s) => {
                        let two_a2 = rat(2) * a2;
                        let base = Surd::rational(-a1 / &two_a2);
                        let off = s.scale(&(rat(1) / &two_a2));
                        roots.push(base.add(&off));
                        roots.push(base.sub(&off));
                    }
                    None => {
                        family.notes.push(
                            "discriminant too large for exact surd reduction; numeric fallback"
                                .into(),
                        );
                        family.numeric_intervals = bisect_positive_roots(&coeffs);
                        family.certified = false;
                    }
                }
            }
        }
        _ => {
            family
                .notes
                .push(format!("residual degree {} > 2: certified bisection", coeffs.len() - 1));
            family.numeric_intervals = bisect_positive_roots(&coeffs);
            family.certified = false;
        }
    }

    // Deduplicate (a double root appears once per source).
    roots.dedup();
    family.roots = roots.clone();

    // Reconstruct the full metric per root and filter by positivity.
    'root: for r in &roots {
        let mut vals: Vec<Option<Surd>> = vec![None; n];
        for (i, v) in fixed {
            vals[i - 1] = Some(Surd::rational(v.clone()));
        }
        if let Some(prev) = &vals[var] {
            // The solved variable was also fixed; keep only matching roots.
            if prev != r {
                continue;
            }
        }
        vals[var] = Some(r.clone());
        // Pivot variables from their relations (dependencies are free vars,
        // all assigned by now).
        for (i, coeffs2) in &subs {
            let mut acc = Surd::rational(Rat::zero());
            for (k, c) in coeffs2.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match &vals[k] {
                    Some(v) => acc = acc.add(&v.scale(c)),
                    None => {
                        family
                            .notes
                            .push(format!("variable l{} left free; cannot reconstruct", k + 1));
                        continue 'root;
                    }
                }
            }
            match &vals[*i] {
                Some(prev) if *prev != acc => {
                    family.notes.push(format!(
                        "fixed value for l{} conflicts with the class constraint",
                        i + 1
                    ));
                    continue 'root;
                }
                _ => vals[*i] = Some(acc),
            }
        }
        let metric: Vec<Surd> = match vals.into_iter().collect::<Option<Vec<_>>>() {
            Some(m) => m,
            None => {
                family
                    .notes
                    .push("underdetermined metric after reconstruction".into());
                continue;
            }
        };
        if metric.iter().all(|v| v.is_positive()) {
            if !verify(d, j, &metric)? {
                family.certified = false;
                family
                    .notes
                    .push(format!("root {} failed exact re-certification", r));
            }
            family.positive.push(r.clone());
            family.metrics.push(metric);
        }
    }
    if family.is_empty() {
        note_degenerate_kl(d, j, &mut family)?;
    }
    Ok(family)
}

/// Record the `L = 15 K` coincidence when it actually holds for the flag;
/// in that degenerate case some constrained branches vanish identically.
fn note_degenerate_kl(
    d: &FlagDecomposition,
    j: &AlmostComplexStructure,
    family: &mut SolutionFamily,
) -> Result<()> {
    if family.constraint.is_none() {
        return Ok(());
    }
    let triples = enumerate_triples(d);
    let kl = kl_constants(d, &triples, j)?;
    if !kl.k.is_zero() && kl.l == rat(15) * &kl.k {
        family
            .notes
            .push("degenerate coincidence: this flag satisfies L = 15K".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag_manifold::{decompose, resolve_flag};
    use crate::rat;

    fn flag(name: &str) -> FlagDecomposition {
        decompose(resolve_flag(name).unwrap())
    }

    fn j(s: &str) -> AlmostComplexStructure {
        AlmostComplexStructure::parse(s).unwrap()
    }

    #[test]
    fn two_summand_gap_polynomial_shape() {
        let d = flag("G2/U2-2s");
        let gp = gap_polynomial(&d, &j("+-")).unwrap();
        // K (-4 l1^2 - 12 l1 l2 + l2^2), K > 0, up to a positive factor.
        let p = gp.poly.primitive();
        assert_eq!(p.terms[&vec![2, 0]], rat(-4));
        assert_eq!(p.terms[&vec![1, 1]], rat(-12));
        assert_eq!(p.terms[&vec![0, 2]], rat(1));
    }

    #[test]
    fn typeii_j4_gap_polynomial_shape() {
        let d = flag("SU4/SU2xU1xU1");
        let gp = gap_polynomial(&d, &j("++-")).unwrap();
        let p = gp.poly.primitive();
        // l1^2 - 6 l1 l2 - 6 l1 l3 + l2^2 - 6 l2 l3 + l3^2.
        assert_eq!(p.terms[&vec![2, 0, 0]], rat(1));
        assert_eq!(p.terms[&vec![0, 2, 0]], rat(1));
        assert_eq!(p.terms[&vec![0, 0, 2]], rat(1));
        assert_eq!(p.terms[&vec![1, 1, 0]], rat(-6));
        assert_eq!(p.terms[&vec![1, 0, 1]], rat(-6));
        assert_eq!(p.terms[&vec![0, 1, 1]], rat(-6));
    }

    #[test]
    fn kaehler_locus_annihilates_gap() {
        // TypeII J1: substituting l3 = l1 + l2 kills the polynomial.
        let d = flag("SU4/SU2xU1xU1");
        let gp = gap_polynomial(&d, &j("+++")).unwrap();
        let coeffs = vec![rat(1), rat(1), Rat::zero()];
        assert!(gp.poly.subst_linear(2, &coeffs).is_zero());
    }

    #[test]
    fn two_summand_solve() {
        let d = flag("G2/U2-2s");
        let fam = solve(&d, &j("+-"), &[(1, rat(1))], None).unwrap();
        assert_eq!(fam.solved_var, Some(2));
        assert_eq!(fam.roots.len(), 2);
        assert_eq!(fam.positive, vec![Surd::from_parts(6, 2, 10)]);
        assert!(fam.certified);
        // Scale invariance: doubling l1 doubles the root.
        let fam2 = solve(&d, &j("+-"), &[(1, rat(2))], None).unwrap();
        assert_eq!(fam2.positive, vec![Surd::from_parts(12, 4, 10)]);
    }

    #[test]
    fn g2_j2_both_roots_positive() {
        let d = flag("G2/U2");
        let fam = solve(&d, &j("-++"), &[(1, rat(1)), (2, rat(2))], None).unwrap();
        assert_eq!(fam.solved_var, Some(3));
        // 3(z^2 - 18z + 1) = 0: both 9 +- 4 sqrt(5) are positive.
        assert_eq!(
            fam.positive,
            vec![Surd::from_parts(9, 4, 5), Surd::from_parts(9, -4, 5)]
        );
        assert!(fam.certified);
    }

    #[test]
    fn g2_j4_solution() {
        let d = flag("G2/U2");
        let fam = solve(&d, &j("++-"), &[(1, rat(1)), (2, rat(1))], None).unwrap();
        assert_eq!(
            fam.positive,
            vec![Surd::new(ratio(17, 3), ratio(5, 3), 13)]
        );
        assert!(fam.certified);
    }

    #[test]
    fn g2_w1w3_linear_branch() {
        // J2 under W1+W3 forces l1 = l2, leaving the linear root
        // l3 = 15 K l1 / L = 10 l1 for G2.
        let d = flag("G2/U2");
        let fam = solve(
            &d,
            &j("-++"),
            &[(1, rat(1))],
            Some(GrayHervellaClass::W1W3),
        )
        .unwrap();
        assert_eq!(fam.positive, vec![Surd::integer(10)]);
        assert_eq!(fam.metrics[0], vec![Surd::integer(1), Surd::integer(1), Surd::integer(10)]);
    }

    #[test]
    fn g2_j2_w1w2_branch() {
        // Constraint l3 = l2 - l1; root l2 = (6 + 2 sqrt(10)) l1, plus the
        // rational root l2 = l1 which reconstructs l3 = 0 and is filtered.
        let d = flag("G2/U2");
        let fam = solve(
            &d,
            &j("-++"),
            &[(1, rat(1))],
            Some(GrayHervellaClass::W1W2),
        )
        .unwrap();
        assert_eq!(fam.positive, vec![Surd::from_parts(6, 2, 10)]);
        assert_eq!(
            fam.metrics[0],
            vec![
                Surd::integer(1),
                Surd::from_parts(6, 2, 10),
                Surd::from_parts(5, 2, 10)
            ]
        );
    }

    #[test]
    fn g2_j3_w1w2_empty() {
        // Constraint l3 = l1 - l2 makes every root reconstruct a
        // nonpositive l3: the family is empty, matching the paper.
        let d = flag("G2/U2");
        let fam = solve(
            &d,
            &j("+-+"),
            &[(1, rat(1))],
            Some(GrayHervellaClass::W1W2),
        )
        .unwrap();
        assert!(fam.is_empty());
    }

    #[test]
    fn g2_j4_w1w3_empty_without_degeneracy() {
        // l1 = l2 = l3 leaves residual (3L - 45K) l^3, nonzero for G2.
        let d = flag("G2/U2");
        let fam = solve(
            &d,
            &j("++-"),
            &[(1, rat(1))],
            Some(GrayHervellaClass::W1W3),
        )
        .unwrap();
        assert!(fam.is_empty());
        assert!(fam.notes.is_empty()); // L != 15K here
    }

    #[test]
    fn typeii_kaehler_identically_zero() {
        let d = flag("SU4/SU2xU1xU1");
        let fam = solve(&d, &j("+++"), &[], Some(GrayHervellaClass::Kaehler)).unwrap();
        assert!(fam.identically_zero);
    }

    #[test]
    fn typeii_j4_solutions() {
        let d = flag("SU4/SU2xU1xU1");
        for (l1, l2, want) in [
            (1, 1, Surd::from_parts(6, 2, 10)),
            (1, 2, Surd::from_parts(9, 2, 22)),
            (2, 3, Surd::from_parts(15, 2, 62)),
        ] {
            let fam = solve(&d, &j("++-"), &[(1, rat(l1)), (2, rat(l2))], None).unwrap();
            assert_eq!(fam.positive, vec![want]);
            assert!(fam.certified);
        }
    }

    #[test]
    fn f4_j2_solution_and_closed_form() {
        let d = flag("F4/SU3xSU2xU1");
        let fam = solve(&d, &j("-++"), &[(1, rat(1)), (2, rat(2))], None).unwrap();
        let want = Surd::from_parts(19, 6, 10);
        assert!(fam.positive.contains(&want));
        assert!(fam.certified);
        // Closed form (24K + 2L + 2 sqrt(6) sqrt(K(24K + 4L))) / (2L) at the
        // flag's own constants must agree.
        let triples = enumerate_triples(&d);
        let kl = kl_constants(&d, &triples, &j("-++")).unwrap();
        let s6 = sqrt_rat(&(rat(6) * &kl.k * (rat(24) * &kl.k + rat(4) * &kl.l))).unwrap();
        let closed = Surd::rational(rat(24) * &kl.k + rat(2) * &kl.l)
            .add(&s6.scale(&rat(2)))
            .scale(&(rat(1) / (rat(2) * &kl.l)));
        assert_eq!(closed, want);
    }

    #[test]
    fn verify_examples_and_erratum() {
        let d = flag("G2/U2");
        let one = Surd::integer(1);
        let two = Surd::integer(2);
        assert!(verify(&d, &j("+-+"), &[one.clone(), two.clone(), Surd::from_parts(7, 4, 3)]).unwrap());
        // The quoted 9 - sqrt(5) does not satisfy the equation; the exact
        // roots are 9 +- 4 sqrt(5).
        assert!(!verify(&d, &j("-++"), &[one.clone(), two.clone(), Surd::from_parts(9, -1, 5)]).unwrap());
        assert!(verify(&d, &j("-++"), &[one.clone(), two.clone(), Surd::from_parts(9, -4, 5)]).unwrap());
        // TypeII J3 Kaehler point (l2 + l3, l2, l3).
        let d2 = flag("SU4/SU2xU1xU1");
        assert!(verify(&d2, &j("+-+"), &[Surd::integer(5), two, Surd::integer(3)]).unwrap());
    }

    #[test]
    fn incompatible_surd_fields_error() {
        let d = flag("G2/U2");
        let g = [
            Surd::from_parts(1, 1, 2),
            Surd::integer(1),
            Surd::from_parts(1, 1, 3),
        ];
        assert!(matches!(
            verify(&d, &j("-++"), &g),
            Err(Error::IncompatibleSurds(_, _))
        ));
    }

    #[test]
    fn unsupported_summand_count() {
        use crate::flag_manifold::FlagSpec;
        use crate::root_system::{Family, RootFamily};
        // Removing two roots of A4 with heights (1,1) far apart still gives
        // three summands, but removing three gives more.
        let d = decompose(FlagSpec::new(
            RootFamily::new(Family::A, 4).unwrap(),
            vec![0, 1, 2],
            "A4-too-many",
        ));
        assert!(matches!(
            gap_polynomial(&d, &AlmostComplexStructure::new(vec![1; d.n_summands()])),
            Err(Error::UnsupportedSummandCount(_))
        ));
    }
}
