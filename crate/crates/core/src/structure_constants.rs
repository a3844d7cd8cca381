//! Squared Weyl-basis structure constants and the aggregate constants K, L.
//!
//! With root vectors normalized against the Killing-dual pairing, the
//! squared bracket constant of two roots is `q(1+p)/2 * <alpha,alpha>`
//! where `(p, q)` is the alpha-string through beta. Only the squares enter
//! the curvature formulas, so signs are never computed.

use crate::flag_manifold::{FlagDecomposition, Triple};
use crate::hermitian_geometry::{triple_type, AlmostComplexStructure, TripleType};
use crate::root_system::{root_string, Root, RootSystem};
use crate::{ratio, Rat, Result};
use num::traits::Zero;
use std::collections::BTreeMap;

/// `m_{alpha,beta}^2` in the Killing-dual Weyl-basis normalization.
/// Returns zero when `alpha + beta` is not a root.
pub fn m_squared(rs: &RootSystem, alpha: &Root, beta: &Root) -> Result<Rat> {
    if beta == alpha || *beta == alpha.neg() {
        return Err(crate::Error::DegenerateRootString);
    }
    if !rs.is_root(&alpha.add(beta)) {
        return Ok(Rat::zero());
    }
    let (p, q) = root_string(rs, alpha, beta)?;
    Ok(ratio(i64::from(q) * i64::from(1 + p), 2) * rs.inner(alpha, alpha))
}

/// The aggregate constants of a flag manifold under an almost complex
/// structure: K sums `m^2` over (0,3)-triples, L over (1,2)-triples.
#[derive(Debug, Clone, PartialEq)]
pub struct KlConstants {
    pub k: Rat,
    pub l: Rat,
    /// Total `m^2` per triple pattern, e.g. `(1,1,2) -> 5/12`.
    pub per_pattern: BTreeMap<(usize, usize, usize), Rat>,
}

impl KlConstants {
    pub fn total(&self) -> Rat {
        &self.k + &self.l
    }
}

/// Compute K and L over the canonical (unsigned) triples of `d`.
pub fn kl_constants(
    d: &FlagDecomposition,
    triples: &[Triple],
    j: &AlmostComplexStructure,
) -> Result<KlConstants> {
    j.check_len(d.n_summands())?;
    let mut k = Rat::zero();
    let mut l = Rat::zero();
    let mut per_pattern: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
    for t in triples {
        let m2 = m_squared(&d.root_system, &t.a, &t.b)?;
        *per_pattern.entry(t.pattern).or_insert_with(Rat::zero) += &m2;
        match triple_type(d, j, t)? {
            TripleType::ZeroThree => k += m2,
            TripleType::OneTwo => l += m2,
        }
    }
    Ok(KlConstants { k, l, per_pattern })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag_manifold::{decompose, enumerate_triples, FlagSpec};
    use crate::root_system::{build_root_system, Family, RootFamily};
    use crate::{rat, ratio};

    fn root(v: &[i64]) -> Root {
        Root(v.to_vec())
    }

    #[test]
    fn g2_m_squared_values() {
        let rs = build_root_system(RootFamily::new(Family::G, 2).unwrap());
        // String oracle: q(1+p)/2 * <a,a>. Cross-checked against the G2
        // constants table: K(-,+,+) = 1/6 and L(+,+,+) = 1/6 + 1/8 + 1/8.
        assert_eq!(
            m_squared(&rs, &root(&[0, 1]), &root(&[1, 1])).unwrap(),
            ratio(1, 6)
        );
        assert_eq!(
            m_squared(&rs, &root(&[0, 1]), &root(&[1, 2])).unwrap(),
            ratio(1, 8)
        );
        assert_eq!(
            m_squared(&rs, &root(&[1, 1]), &root(&[1, 2])).unwrap(),
            ratio(1, 8)
        );
        // Non-root sum gives zero.
        assert_eq!(
            m_squared(&rs, &root(&[0, 1]), &root(&[2, 3])).unwrap(),
            Rat::zero()
        );
        assert!(m_squared(&rs, &root(&[1, 0]), &root(&[-1, 0])).is_err());
    }

    #[test]
    fn m_squared_cyclic_and_sign_invariance() {
        for e in crate::flag_manifold::catalog() {
            if e.spec.root_system.rank > 5 {
                continue;
            }
            let d = decompose(e.spec.clone());
            for t in enumerate_triples(&d) {
                let ab = m_squared(&d.root_system, &t.a, &t.b).unwrap();
                let bc = m_squared(&d.root_system, &t.b, &t.c).unwrap();
                let ca = m_squared(&d.root_system, &t.c, &t.a).unwrap();
                assert_eq!(ab, bc, "{}", e.spec.name);
                assert_eq!(bc, ca, "{}", e.spec.name);
                let neg = m_squared(&d.root_system, &t.a.neg(), &t.b.neg()).unwrap();
                assert_eq!(ab, neg);
            }
        }
    }

    #[test]
    fn g2_kl_table() {
        let d = decompose(FlagSpec::new(
            RootFamily::new(Family::G, 2).unwrap(),
            vec![1],
            "G2/U2",
        ));
        let ts = enumerate_triples(&d);
        let cases = [
            (vec![1, 1, 1], (rat(0), ratio(5, 12))),
            (vec![-1, 1, 1], (ratio(1, 6), ratio(1, 4))),
            (vec![1, -1, 1], (ratio(1, 6), ratio(1, 4))),
            (vec![1, 1, -1], (ratio(1, 4), ratio(1, 6))),
        ];
        for (signs, (k, l)) in cases {
            let j = AlmostComplexStructure::new(signs.clone());
            let kl = kl_constants(&d, &ts, &j).unwrap();
            assert_eq!((kl.k.clone(), kl.l.clone()), (k, l), "{signs:?}");
            // Conjugation invariance.
            let jc = AlmostComplexStructure::new(signs.iter().map(|s| -s).collect());
            let klc = kl_constants(&d, &ts, &jc).unwrap();
            assert_eq!((kl.k, kl.l), (klc.k, klc.l));
        }
    }

    #[test]
    fn f4_ratio_normalization() {
        // The F4 table of triple weights is stated in a rescaled
        // normalization; only ratios are Killing-invariant. The marked
        // ratio is 1/2 between the two named rows.
        let rs = build_root_system(RootFamily::new(Family::F, 4).unwrap());
        let small = m_squared(&rs, &root(&[0, 1, 1, 0]), &root(&[1, 1, 1, 1])).unwrap();
        let big = m_squared(&rs, &root(&[0, 1, 0, 0]), &root(&[1, 1, 2, 0])).unwrap();
        assert_eq!(small / big, ratio(1, 2));
    }
}
