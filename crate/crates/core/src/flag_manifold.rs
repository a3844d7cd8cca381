//! Isotropy decompositions of generalized flag manifolds, zero-sum triples
//! and the built-in catalog of all two- and three-summand flags.
//!
//! Summands are computed generically as fibers of the coefficient-tuple map
//! on the removed simple roots (the t-root decomposition), so a single code
//! path serves every family.

use crate::root_system::{build_root_system, Root, RootFamily, RootSystem};
use serde::{Deserialize, Serialize};

/// A flag manifold descriptor: root system plus removed simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagSpec {
    pub root_system: RootFamily,
    /// 0-based indices of the removed simple roots (complement of Theta).
    pub removed: Vec<usize>,
    /// Canonical slug, e.g. "G2/U2".
    pub name: String,
}

impl FlagSpec {
    pub fn new(root_system: RootFamily, removed: Vec<usize>, name: &str) -> Self {
        let mut removed = removed;
        removed.sort_unstable();
        removed.dedup();
        assert!(!removed.is_empty(), "removed set must be nonempty");
        assert!(
            removed.iter().all(|&i| i < root_system.rank),
            "removed index out of range"
        );
        FlagSpec {
            root_system,
            removed,
            name: name.to_string(),
        }
    }
}

/// How the removed-root heights classify the flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    TwoSummand,
    ThreeTypeI,
    ThreeTypeII,
    Other,
}

/// One irreducible isotropy summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    /// 1-based summand index.
    pub index: usize,
    /// Coefficients of the summand's roots on the removed simple roots.
    pub coeff_tuple: Vec<i64>,
    pub roots: Vec<Root>,
    /// `2 * |roots|`: each root contributes a real plane.
    pub real_dimension: usize,
}

/// A zero-sum root triple in canonical form: two positive roots (sorted)
/// followed by the negative of their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub a: Root,
    pub b: Root,
    pub c: Root,
    /// Summand indices of |a|, |b|, |c|, sorted ascending.
    pub pattern: (usize, usize, usize),
}

/// A flag manifold with its isotropy decomposition.
#[derive(Debug, Clone)]
pub struct FlagDecomposition {
    pub spec: FlagSpec,
    pub root_system: RootSystem,
    /// Positive complementary roots.
    pub complementary_positive: Vec<Root>,
    pub summands: Vec<Summand>,
    pub family_kind: FamilyKind,
}

impl FlagDecomposition {
    pub fn n_summands(&self) -> usize {
        self.summands.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.real_dimension).collect()
    }

    /// 1-based summand index of a complementary root (sign-insensitive).
    pub fn summand_of(&self, r: &Root) -> Option<usize> {
        let tuple = self.coeff_tuple(&r.abs());
        self.summands
            .iter()
            .find(|s| s.coeff_tuple == tuple)
            .map(|s| s.index)
    }

    fn coeff_tuple(&self, r: &Root) -> Vec<i64> {
        self.spec.removed.iter().map(|&i| r.0[i]).collect()
    }
}

/// Build the isotropy decomposition of the flag manifold defined by `spec`.
pub fn decompose(spec: FlagSpec) -> FlagDecomposition {
    let rs = build_root_system(spec.root_system);
    let complementary: Vec<Root> = rs
        .positive_roots
        .iter()
        .filter(|r| spec.removed.iter().any(|&i| r.0[i] != 0))
        .cloned()
        .collect();

    let heights: Vec<i64> = spec.removed.iter().map(|&i| rs.highest_root.0[i]).collect();
    let family_kind = match heights.as_slice() {
        [2] => FamilyKind::TwoSummand,
        [3] => FamilyKind::ThreeTypeI,
        [1, 1] => FamilyKind::ThreeTypeII,
        _ => FamilyKind::Other,
    };

    // Fibers of the coefficient-tuple map on the removed simple roots.
    let mut tuples: Vec<Vec<i64>> = Vec::new();
    for r in &complementary {
        let t: Vec<i64> = spec.removed.iter().map(|&i| r.0[i]).collect();
        if !tuples.contains(&t) {
            tuples.push(t);
        }
    }
    // Summand ordering: single removal by coefficient value; two removals
    // (type II) in the order (1,0), (0,1), (1,1); anything else lexicographic.
    if family_kind == FamilyKind::ThreeTypeII {
        let order = [vec![1, 0], vec![0, 1], vec![1, 1]];
        tuples.sort_by_key(|t| order.iter().position(|o| o == t).unwrap_or(usize::MAX));
    } else {
        tuples.sort();
    }

    let summands: Vec<Summand> = tuples
        .into_iter()
        .enumerate()
        .map(|(k, tuple)| {
            let roots: Vec<Root> = complementary
                .iter()
                .filter(|r| spec.removed.iter().map(|&i| r.0[i]).collect::<Vec<_>>() == tuple)
                .cloned()
                .collect();
            let dim = 2 * roots.len();
            Summand {
                index: k + 1,
                coeff_tuple: tuple,
                roots,
                real_dimension: dim,
            }
        })
        .collect();

    FlagDecomposition {
        spec,
        root_system: rs,
        complementary_positive: complementary,
        summands,
        family_kind,
    }
}

/// Enumerate every unordered zero-sum triple of complementary roots in
/// canonical form (two positive roots, lexicographically sorted, then the
/// negative root).
pub fn enumerate_triples(d: &FlagDecomposition) -> Vec<Triple> {
    let mut out = Vec::new();
    let roots = &d.complementary_positive;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let sum = roots[i].add(&roots[j]);
            if roots.contains(&sum) {
                let (a, b) = if roots[i].0 <= roots[j].0 {
                    (roots[i].clone(), roots[j].clone())
                } else {
                    (roots[j].clone(), roots[i].clone())
                };
                let mut pat = [
                    d.summand_of(&a).expect("complementary root"),
                    d.summand_of(&b).expect("complementary root"),
                    d.summand_of(&sum).expect("complementary root"),
                ];
                pat.sort_unstable();
                out.push(Triple {
                    a,
                    b,
                    c: sum.neg(),
                    pattern: (pat[0], pat[1], pat[2]),
                });
            }
        }
    }
    out.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
    out
}

/// A named entry of the built-in catalog.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub spec: FlagSpec,
    pub display: String,
    pub kind: FamilyKind,
    /// Expected summand dimensions, for table reproduction.
    pub dims: Vec<usize>,
}

fn entry(
    family: crate::root_system::Family,
    rank: usize,
    removed: &[usize],
    slug: &str,
    display: &str,
    kind: FamilyKind,
    dims: &[usize],
) -> CatalogEntry {
    CatalogEntry {
        spec: FlagSpec::new(
            RootFamily::new(family, rank).expect("valid rank"),
            removed.to_vec(),
            slug,
        ),
        display: display.to_string(),
        kind,
        dims: dims.to_vec(),
    }
}

/// The built-in catalog: all thirteen two-summand families at representative
/// ranks, the seven type-I flags and the three type-II families at
/// representative parameters. Removed indices are 0-based.
pub fn catalog() -> Vec<CatalogEntry> {
    use crate::root_system::Family::*;
    use FamilyKind::*;
    vec![
        // Two-summand flags: one removed simple root of height 2.
        entry(B, 3, &[1], "B3/U2xSO3", "SO(7)/U(2)xSO(3)", TwoSummand, &[12, 2]),
        entry(B, 4, &[1], "B4/U2xSO5", "SO(9)/U(2)xSO(5)", TwoSummand, &[20, 2]),
        entry(C, 2, &[0], "C2/U1xSp1", "Sp(2)/U(1)xSp(1)", TwoSummand, &[4, 2]),
        entry(C, 3, &[1], "C3/U2xSp1", "Sp(3)/U(2)xSp(1)", TwoSummand, &[8, 6]),
        entry(D, 4, &[1], "D4/U2xSO4", "SO(8)/U(2)xSO(4)", TwoSummand, &[16, 2]),
        entry(D, 5, &[1], "D5/U2xSO6", "SO(10)/U(2)xSO(6)", TwoSummand, &[24, 2]),
        entry(G, 2, &[0], "G2/U2-2s", "G2/U(2) (short-root U(2))", TwoSummand, &[8, 2]),
        entry(F, 4, &[3], "F4/SO7xU1", "F4/SO(7)xU(1)", TwoSummand, &[16, 14]),
        entry(F, 4, &[0], "F4/Sp3xU1", "F4/Sp(3)xU(1)", TwoSummand, &[28, 2]),
        entry(E, 6, &[1], "E6/SU6xU1", "E6/SU(6)xU(1)", TwoSummand, &[40, 2]),
        entry(E, 6, &[2], "E6/SU2xSU5xU1", "E6/SU(2)xSU(5)xU(1)", TwoSummand, &[40, 10]),
        entry(E, 7, &[1], "E7/SU7xU1", "E7/SU(7)xU(1)", TwoSummand, &[70, 14]),
        entry(E, 7, &[5], "E7/SU2xSO10xU1", "E7/SU(2)xSO(10)xU(1)", TwoSummand, &[64, 20]),
        entry(E, 7, &[0], "E7/SO12xU1", "E7/SO(12)xU(1)", TwoSummand, &[64, 2]),
        entry(E, 8, &[7], "E8/E7xU1", "E8/E7xU(1)", TwoSummand, &[112, 2]),
        entry(E, 8, &[0], "E8/SO14xU1", "E8/SO(14)xU(1)", TwoSummand, &[128, 28]),
        // Type I flags: one removed simple root of height 3.
        entry(G, 2, &[1], "G2/U2", "G2/U(2) (long-root U(2))", ThreeTypeI, &[4, 2, 4]),
        entry(F, 4, &[1], "F4/SU3xSU2xU1", "F4/SU(3)xSU(2)xU(1)", ThreeTypeI, &[24, 12, 4]),
        entry(E, 6, &[3], "E6/SU3xSU3xSU2xU1", "E6/SU(3)xSU(3)xSU(2)xU(1)", ThreeTypeI, &[36, 18, 4]),
        entry(E, 7, &[4], "E7/SU5xSU3xU1", "E7/SU(5)xSU(3)xU(1)", ThreeTypeI, &[60, 30, 10]),
        entry(E, 7, &[2], "E7/SU6xSU2xU1", "E7/SU(6)xSU(2)xU(1)", ThreeTypeI, &[60, 30, 4]),
        entry(E, 8, &[6], "E8/E6xSU2xU1", "E8/E6xSU(2)xU(1)", ThreeTypeI, &[108, 54, 4]),
        entry(E, 8, &[1], "E8/SU8xU1", "E8/SU(8)xU(1)", ThreeTypeI, &[112, 56, 16]),
        // Type II flags: two removed simple roots of height 1.
        entry(A, 3, &[1, 2], "SU4/SU2xU1xU1", "SU(4)/S(U(2)xU(1)xU(1))", ThreeTypeII, &[4, 2, 4]),
        entry(A, 4, &[2, 3], "SU5/SU3xU1xU1", "SU(5)/S(U(3)xU(1)xU(1))", ThreeTypeII, &[6, 2, 6]),
        entry(A, 3, &[0, 1], "SU4/U1xU1xSU2", "SU(4)/S(U(1)xU(1)xU(2))", ThreeTypeII, &[2, 4, 4]),
        entry(D, 4, &[2, 3], "SO8/U1xU3", "SO(8)/U(1)xU(3), l=4", ThreeTypeII, &[6, 6, 6]),
        entry(D, 5, &[3, 4], "SO10/U1xU4", "SO(10)/U(1)xU(4), l=5", ThreeTypeII, &[8, 8, 12]),
        entry(E, 6, &[0, 5], "E6/SO8xU1xU1", "E6/SO(8)xU(1)xU(1)", ThreeTypeII, &[16, 16, 16]),
    ]
}

/// Resolve a flag name (catalog slug, display name, or the raw escape hatch
/// `FAMILY:RANK:i[,j]` with 1-based removed indices) to a spec.
pub fn resolve_flag(name: &str) -> crate::Result<FlagSpec> {
    for e in catalog() {
        if e.spec.name == name || e.display == name {
            return Ok(e.spec);
        }
    }
    // Raw addressing, e.g. "G:2:2" or "A:3:2,3".
    let parts: Vec<&str> = name.split(':').collect();
    if parts.len() == 3 {
        let family = match parts[0] {
            "A" => Some(crate::root_system::Family::A),
            "B" => Some(crate::root_system::Family::B),
            "C" => Some(crate::root_system::Family::C),
            "D" => Some(crate::root_system::Family::D),
            "E" => Some(crate::root_system::Family::E),
            "F" => Some(crate::root_system::Family::F),
            "G" => Some(crate::root_system::Family::G),
            _ => None,
        };
        if let (Some(f), Ok(rank)) = (family, parts[1].parse::<usize>()) {
            let removed: Option<Vec<usize>> = parts[2]
                .split(',')
                .map(|s| s.trim().parse::<usize>().ok().and_then(|i| i.checked_sub(1)))
                .collect();
            if let (Ok(rf), Some(removed)) = (RootFamily::new(f, rank), removed) {
                if !removed.is_empty() && removed.iter().all(|&i| i < rank) {
                    return Ok(FlagSpec::new(rf, removed, name));
                }
            }
        }
    }
    Err(crate::Error::UnknownFlag(name.to_string()))
}

/// JSON export schema for a decomposition.
#[derive(Serialize)]
struct DecompositionExport<'a> {
    name: &'a str,
    family_kind: &'a FamilyKind,
    removed: &'a [usize],
    summands: Vec<SummandExport<'a>>,
    triples: Vec<TripleExport<'a>>,
}

#[derive(Serialize)]
struct SummandExport<'a> {
    index: usize,
    coeff_tuple: &'a [i64],
    roots: Vec<&'a [i64]>,
    dim: usize,
}

#[derive(Serialize)]
struct TripleExport<'a> {
    a: &'a [i64],
    b: &'a [i64],
    c: &'a [i64],
    pattern: (usize, usize, usize),
}

/// Serialize the decomposition (with its triples) to stable JSON.
pub fn decomposition_to_json(d: &FlagDecomposition, triples: &[Triple]) -> serde_json::Value {
    let export = DecompositionExport {
        name: &d.spec.name,
        family_kind: &d.family_kind,
        removed: &d.spec.removed,
        summands: d
            .summands
            .iter()
            .map(|s| SummandExport {
                index: s.index,
                coeff_tuple: &s.coeff_tuple,
                roots: s.roots.iter().map(|r| r.0.as_slice()).collect(),
                dim: s.real_dimension,
            })
            .collect(),
        triples: triples
            .iter()
            .map(|t| TripleExport {
                a: &t.a.0,
                b: &t.b.0,
                c: &t.c.0,
                pattern: t.pattern,
            })
            .collect(),
    };
    serde_json::to_value(export).expect("serializable")
}
