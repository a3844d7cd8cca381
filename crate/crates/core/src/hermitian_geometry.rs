//! Gray-Hervella norm components and the scalar-curvature gaps
//! `2 s1 - s` and `2 s2(t) - s` for invariant almost Hermitian structures.
//!
//! All sums run over canonical zero-sum triples; the epsilon factor
//! `(e_a e_b e_c + e_a + e_b + e_c)^2` is 16 on (0,3)-triples and 0 on
//! (1,2)-triples, which turns each component into a K- or L-weighted
//! rational function of the metric. The Lee form vanishes identically on
//! flag manifolds, so no codifferential terms appear anywhere.

use crate::flag_manifold::{FlagDecomposition, Triple};
use crate::structure_constants::m_squared;
use crate::surd::Scalar;
use crate::{rat, ratio, Error, Rat, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An invariant almost complex structure: one sign per summand, with the
/// convention `eps(-alpha) = -eps(alpha)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostComplexStructure {
    pub signs: Vec<i8>,
}

impl AlmostComplexStructure {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(signs.iter().all(|&s| s == 1 || s == -1));
        AlmostComplexStructure { signs }
    }

    /// Parse "+,+,-" or "++-" style sign strings.
    pub fn parse(s: &str) -> Option<Self> {
        let signs: Option<Vec<i8>> = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '+' => Some(1),
                '-' => Some(-1),
                _ => None,
            })
            .collect();
        let signs = signs?;
        if signs.is_empty() {
            None
        } else {
            Some(AlmostComplexStructure::new(signs))
        }
    }

    pub fn conjugate(&self) -> Self {
        AlmostComplexStructure::new(self.signs.iter().map(|s| -s).collect())
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.signs.len() == n {
            Ok(())
        } else {
            Err(Error::SignCountMismatch {
                got: self.signs.len(),
                expected: n,
            })
        }
    }

    /// Sign on a (possibly negative) complementary root.
    pub fn eps(&self, d: &FlagDecomposition, r: &crate::root_system::Root) -> Result<i8> {
        let idx = d
            .summand_of(r)
            .ok_or_else(|| Error::NotARoot(r.to_string()))?;
        let s = self.signs[idx - 1];
        Ok(if r.is_positive() { s } else { -s })
    }
}

impl fmt::Display for AlmostComplexStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .signs
            .iter()
            .map(|&x| if x > 0 { "+" } else { "-" })
            .collect();
        write!(f, "({})", s.join(","))
    }
}

/// Classification of a zero-sum triple by sign agreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleType {
    ZeroThree,
    OneTwo,
}

/// A triple is (0,3) exactly when the three signs agree, after the
/// negation rule is applied to the negative member.
pub fn triple_type(
    d: &FlagDecomposition,
    j: &AlmostComplexStructure,
    t: &Triple,
) -> Result<TripleType> {
    let ea = j.eps(d, &t.a)?;
    let eb = j.eps(d, &t.b)?;
    let ec = j.eps(d, &t.c)?;
    Ok(if ea == eb && eb == ec {
        TripleType::ZeroThree
    } else {
        TripleType::OneTwo
    })
}

/// The four norm components of the covariant derivative of the fundamental
/// 2-form, all exact.
#[derive(Debug, Clone, PartialEq)]
pub struct NormBundle<S: Scalar> {
    pub df_minus_sq: S,
    pub n0_sq: S,
    pub df_plus_sq: S,
    pub df_total_sq: S,
}

impl<S: Scalar> NormBundle<S> {
    /// `||DF||^2 = ||(dF)+||^2 + ||N0||^2/4 + ||(dF)-||^2/3`, exactly.
    pub fn identity_holds(&self) -> bool {
        let rhs = self
            .df_plus_sq
            .add(&self.n0_sq.scale(&ratio(1, 4)))
            .add(&self.df_minus_sq.scale(&ratio(1, 3)));
        self.df_total_sq == rhs
    }
}

/// The eight Gray-Hervella classes that can occur on a flag manifold
/// (the Lee-form component W4 is identically absent).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrayHervellaClass {
    Kaehler,
    W1,
    W2,
    W3,
    W1W2,
    W1W3,
    W2W3,
    W1W2W3,
}

impl GrayHervellaClass {
    pub fn label(self) -> &'static str {
        match self {
            GrayHervellaClass::Kaehler => "Kähler",
            GrayHervellaClass::W1 => "W1",
            GrayHervellaClass::W2 => "W2",
            GrayHervellaClass::W3 => "W3",
            GrayHervellaClass::W1W2 => "W1⊕W2",
            GrayHervellaClass::W1W3 => "W1⊕W3",
            GrayHervellaClass::W2W3 => "W2⊕W3",
            GrayHervellaClass::W1W2W3 => "W1⊕W2⊕W3",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        Some(match norm.as_str() {
            "KAHLER" | "KAEHLER" | "K" => GrayHervellaClass::Kaehler,
            "W1" => GrayHervellaClass::W1,
            "W2" => GrayHervellaClass::W2,
            "W3" => GrayHervellaClass::W3,
            "W1W2" => GrayHervellaClass::W1W2,
            "W1W3" => GrayHervellaClass::W1W3,
            "W2W3" => GrayHervellaClass::W2W3,
            "W1W2W3" => GrayHervellaClass::W1W2W3,
            _ => return None,
        })
    }
}

fn check_metric_len<S: Scalar>(d: &FlagDecomposition, g: &[S]) -> Result<()> {
    if g.len() == d.n_summands() {
        Ok(())
    } else {
        Err(Error::MetricCountMismatch {
            got: g.len(),
            expected: d.n_summands(),
        })
    }
}

/// Evaluate the four norm components for `(g, J)` exactly. The metric may
/// be rational or surd-valued.
pub fn curvature_norms<S: Scalar>(
    d: &FlagDecomposition,
    triples: &[Triple],
    j: &AlmostComplexStructure,
    g: &[S],
) -> Result<NormBundle<S>> {
    j.check_len(d.n_summands())?;
    check_metric_len(d, g)?;
    let mut df_minus = S::zero();
    let mut n0 = S::zero();
    let mut df_plus = S::zero();
    let mut df_total = S::zero();

    for t in triples {
        let m2 = m_squared(&d.root_system, &t.a, &t.b)?;
        let ia = d.summand_of(&t.a).unwrap();
        let ib = d.summand_of(&t.b).unwrap();
        let ic = d.summand_of(&t.c).unwrap();
        let (la, lb, lc) = (&g[ia - 1], &g[ib - 1], &g[ic - 1]);
        let (ea, eb, ec) = (
            i64::from(j.eps(d, &t.a)?),
            i64::from(j.eps(d, &t.b)?),
            i64::from(j.eps(d, &t.c)?),
        );
        let prod = la.mul(lb).mul(lc);
        // epsilon factor (eps_a eps_b eps_c + eps_a + eps_b + eps_c)^2:
        // 16 on (0,3)-triples, 0 on (1,2)-triples.
        let ef2 = {
            let e = ea * eb * ec + ea + eb + ec;
            e * e
        };
        let sum_l = la.add(lb).add(lc);

        if ef2 != 0 {
            // ||(dF)-||^2 term: m^2 (la+lb+lc)^2 / (6 la lb lc) per (0,3)-triple.
            let c = &m2 * rat(ef2) / rat(96);
            df_minus = df_minus.add(&sum_l.mul(&sum_l).scale(&c).div(&prod));
            // ||N0||^2 term: 8 m^2 [...] / (27 la lb lc) per (0,3)-triple.
            let c = &m2 * rat(ef2) / rat(54);
            let q = |x: &S, y: &S, z: &S| {
                let v = y.add(z).sub(x).sub(x);
                v.mul(&v)
            };
            let bracket = q(la, lb, lc).add(&q(lc, la, lb)).add(&q(lb, la, lc));
            n0 = n0.add(&bracket.scale(&c).div(&prod));
        }
        // ||(dF)+||^2 term: vanishes on (0,3)-triples, and reduces to
        // 16 m^2 (sum of signed lambdas)^2 / 96 on (1,2)-triples.
        let sgn = |e: i64, l: &S| if e >= 0 { l.clone() } else { S::zero().sub(l) };
        let eps_sum_l = sgn(ea, la).add(&sgn(eb, lb)).add(&sgn(ec, lc));
        let e_lin = ea + eb + ec + ea * eb * ec;
        let inner = eps_sum_l.scale(&rat(4)).sub(&sum_l.scale(&rat(e_lin)));
        let c = &m2 / rat(96);
        df_plus = df_plus.add(&inner.mul(&inner).scale(&c).div(&prod));
        // ||DF||^2 term, coefficient fixed by the identity
        // DF^2 = (dF)+^2 + N0^2/4 + (dF)-^2/3 on both triple types.
        let pair = |e1: i64, e2: i64, v: &S| {
            let w = rat((e1 + e2) * (e1 + e2));
            v.mul(v).scale(&w)
        };
        let v1 = lb.add(lc).sub(la);
        let v2 = la.add(lc).sub(lb);
        let v3 = la.add(lb).sub(lc);
        let bracket = pair(eb, ec, &v1).add(&pair(ea, ec, &v2)).add(&pair(ea, eb, &v3));
        let c = &m2 / rat(24);
        df_total = df_total.add(&bracket.scale(&c).div(&prod));
    }

    Ok(NormBundle {
        df_minus_sq: df_minus,
        n0_sq: n0,
        df_plus_sq: df_plus,
        df_total_sq: df_total,
    })
}

/// The gap `2 s1 - s = -(5/6)||(dF)-||^2 + (1/8)||N0||^2 + (1/2)||(dF)+||^2`.
pub fn scalar_gap<S: Scalar>(
    d: &FlagDecomposition,
    triples: &[Triple],
    j: &AlmostComplexStructure,
    g: &[S],
) -> Result<S> {
    let n = curvature_norms(d, triples, j, g)?;
    Ok(gap_from_norms(&n))
}

/// Gap assembled from precomputed norms.
pub fn gap_from_norms<S: Scalar>(n: &NormBundle<S>) -> S {
    n.df_minus_sq
        .scale(&ratio(-5, 6))
        .add(&n.n0_sq.scale(&ratio(1, 8)))
        .add(&n.df_plus_sq.scale(&ratio(1, 2)))
}

/// The second-curvature gap
/// `2 s2(t) - s = -(1/6)||(dF)-||^2 + (1/16)||N0||^2 - ((t^2-2t)/2)||(dF)+||^2`.
pub fn scalar_gap_s2<S: Scalar>(
    d: &FlagDecomposition,
    triples: &[Triple],
    j: &AlmostComplexStructure,
    g: &[S],
    t: &Rat,
) -> Result<S> {
    let n = curvature_norms(d, triples, j, g)?;
    let tcoef = -(t * t - rat(2) * t) / rat(2);
    Ok(n
        .df_minus_sq
        .scale(&ratio(-1, 6))
        .add(&n.n0_sq.scale(&ratio(1, 16)))
        .add(&n.df_plus_sq.scale(&tcoef)))
}

/// Name the Gray-Hervella class of `(g, J)` from exact vanishing of the
/// three norm components.
pub fn gray_hervella_class<S: Scalar>(
    d: &FlagDecomposition,
    triples: &[Triple],
    j: &AlmostComplexStructure,
    g: &[S],
) -> Result<GrayHervellaClass> {
    let n = curvature_norms(d, triples, j, g)?;
    Ok(class_from_norms(&n))
}

pub fn class_from_norms<S: Scalar>(n: &NormBundle<S>) -> GrayHervellaClass {
    let w1 = !n.df_minus_sq.is_zero();
    let w2 = !n.n0_sq.is_zero();
    let w3 = !n.df_plus_sq.is_zero();
    match (w1, w2, w3) {
        (false, false, false) => GrayHervellaClass::Kaehler,
        (true, false, false) => GrayHervellaClass::W1,
        (false, true, false) => GrayHervellaClass::W2,
        (false, false, true) => GrayHervellaClass::W3,
        (true, true, false) => GrayHervellaClass::W1W2,
        (true, false, true) => GrayHervellaClass::W1W3,
        (false, true, true) => GrayHervellaClass::W2W3,
        (true, true, true) => GrayHervellaClass::W1W2W3,
    }
}
