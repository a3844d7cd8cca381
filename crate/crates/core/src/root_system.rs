//! Simple root systems A..G with exact Killing-dual inner products.
//!
//! Roots are stored as integer coefficient vectors over the simple roots.
//! The inner product is normalized so that the defining identity of the
//! Killing-dual form holds exactly:
//! `sum_{gamma in Pi} <l,gamma><m,gamma> = <l,m>` for all simple roots l, m.
//! Under this normalization the squared long root of G2 is 1/4 and the
//! squared short root is 1/12.

use crate::{rat, Error, Rat, Result};
use num::traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// The classical families of simple complex Lie algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A family together with a rank, e.g. `E6` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootFamily {
    pub family: Family,
    pub rank: usize,
}

impl RootFamily {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(RootFamily { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A root, as an integer coefficient vector over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// The positive representative of `self` or `-self`.
    pub fn abs(&self) -> Root {
        if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A simple root system with exact Killing-dual form data.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: RootFamily,
    /// Cartan matrix, `a[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Positive roots ordered by (height, lexicographic coefficients).
    pub positive_roots: Vec<Root>,
    /// Gram matrix of the Killing-dual form on the simple roots.
    pub gram_killing: Vec<Vec<Rat>>,
    pub highest_root: Root,
    all_roots: BTreeSet<Root>,
}

impl RootSystem {
    pub fn is_root(&self, r: &Root) -> bool {
        self.all_roots.contains(r)
    }

    /// Killing-dual inner product of two weights given by coefficient vectors.
    pub fn inner(&self, a: &Root, b: &Root) -> Rat {
        let mut acc = Rat::zero();
        for (i, &ca) in a.0.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.0.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                acc += &self.gram_killing[i][j] * rat(ca) * rat(cb);
            }
        }
        acc
    }

    pub fn all_roots(&self) -> impl Iterator<Item = &Root> {
        self.all_roots.iter()
    }

    pub fn rank(&self) -> usize {
        self.family.rank
    }
}

/// Bourbaki Cartan matrix, except G2 where the labeling is chosen so the
/// highest root is `2 a1 + 3 a2` (a1 long, a2 short).
fn cartan_matrix(spec: RootFamily) -> Vec<Vec<i64>> {
    let n = spec.rank;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let bond = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let chain = |a: &mut Vec<Vec<i64>>, from: usize, to: usize| {
        for i in from..to {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match spec.family {
        Family::A => chain(&mut a, 0, n - 1),
        Family::B => {
            chain(&mut a, 0, n - 1);
            bond(&mut a, n - 2, n - 1, -2, -1);
        }
        Family::C => {
            chain(&mut a, 0, n - 1);
            bond(&mut a, n - 2, n - 1, -1, -2);
        }
        Family::D => {
            // Nodes 0..n-3 form a chain; both n-2 and n-1 attach to n-3.
            chain(&mut a, 0, n - 2);
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            if n >= 3 {
                bond(&mut a, n - 3, n - 1, -1, -1);
            }
        }
        Family::E => {
            // Bourbaki: chain 1-3-4-5-..-n with node 2 attached to node 4.
            bond(&mut a, 0, 2, -1, -1);
            chain(&mut a, 2, n - 1);
            a[1][2] = 0;
            a[2][1] = 0;
            bond(&mut a, 1, 3, -1, -1);
        }
        Family::F => {
            chain(&mut a, 0, 3);
            bond(&mut a, 1, 2, -2, -1);
        }
        Family::G => {
            bond(&mut a, 0, 1, -3, -1);
        }
    }
    a
}

/// Construct the root system for the given family, with positive roots,
/// highest root and the Killing-dual Gram matrix.
pub fn build_root_system(spec: RootFamily) -> RootSystem {
    let cartan = cartan_matrix(spec);
    let n = spec.rank;

    // Closure of the simple roots under the simple reflections.
    let mut roots: BTreeSet<Root> = BTreeSet::new();
    let mut frontier: Vec<Root> = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            Root(v)
        })
        .collect();
    for r in &frontier {
        roots.insert(r.clone());
        roots.insert(r.neg());
    }
    while let Some(r) = frontier.pop() {
        for j in 0..n {
            // s_j(r) = r - <r, alpha_j^vee> alpha_j
            let pairing: i64 = (0..n).map(|i| r.0[i] * cartan[i][j]).sum();
            let mut v = r.0.clone();
            v[j] -= pairing;
            let refl = Root(v);
            if roots.insert(refl.clone()) {
                roots.insert(refl.neg());
                frontier.push(refl);
            }
        }
    }

    let mut positive: Vec<Root> = roots.iter().filter(|r| r.is_positive()).cloned().collect();
    positive.sort_by_key(|r| (r.height(), r.0.clone()));
    let highest = positive.last().expect("nonempty root system").clone();

    // Base Gram matrix from a consistent symmetrization of the Cartan matrix:
    // d_j A[i][j] with d propagated along the Dynkin graph.
    let mut d = vec![Rat::zero(); n];
    d[0] = rat(1);
    let mut done = vec![false; n];
    done[0] = true;
    loop {
        let mut progressed = false;
        for i in 0..n {
            if !done[i] {
                continue;
            }
            for j in 0..n {
                if i != j && !done[j] && cartan[i][j] != 0 {
                    // (a_i, a_j) symmetric forces d_j a_ij = d_i a_ji.
                    d[j] = &d[i] * ratio(cartan[j][i], cartan[i][j]);
                    done[j] = true;
                    progressed = true;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    debug_assert!(done.iter().all(|&x| x));
    let base: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| &d[j] * rat(cartan[i][j])).collect())
        .collect();

    // Rescale so that sum_{gamma in Pi} <l,gamma><m,gamma> = <l,m>.
    // The bilinear form sum gamma (x) gamma is Weyl-invariant, hence a
    // constant multiple c of the base form; dividing by c does the job.
    let base_inner = |a: &Root, b: &Root| -> Rat {
        let mut acc = Rat::zero();
        for i in 0..n {
            for j in 0..n {
                if a.0[i] != 0 && b.0[j] != 0 {
                    acc += &base[i][j] * rat(a.0[i]) * rat(b.0[j]);
                }
            }
        }
        acc
    };
    let alpha0 = {
        let mut v = vec![0i64; n];
        v[0] = 1;
        Root(v)
    };
    let mut sum = Rat::zero();
    for gamma in &roots {
        let p = base_inner(&alpha0, gamma);
        sum += &p * &p;
    }
    let c = sum / base_inner(&alpha0, &alpha0);
    let gram: Vec<Vec<Rat>> = base
        .iter()
        .map(|row| row.iter().map(|x| x / &c).collect())
        .collect();

    RootSystem {
        family: spec,
        cartan_matrix: cartan,
        positive_roots: positive,
        gram_killing: gram,
        highest_root: highest,
        all_roots: roots,
    }
}

use crate::ratio;

/// The alpha-string through beta: maximal `p, q >= 0` such that
/// `beta + n alpha` is a root for `-p <= n <= q`. The scan runs over the
/// full signed root set.
pub fn root_string(rs: &RootSystem, alpha: &Root, beta: &Root) -> Result<(u32, u32)> {
    if beta == alpha || *beta == alpha.neg() {
        return Err(Error::DegenerateRootString);
    }
    if !rs.is_root(alpha) {
        return Err(Error::NotARoot(alpha.to_string()));
    }
    if !rs.is_root(beta) {
        return Err(Error::NotARoot(beta.to_string()));
    }
    let mut p = 0u32;
    let mut cur = beta.clone();
    loop {
        cur = Root(cur.0.iter().zip(&alpha.0).map(|(b, a)| b - a).collect());
        if rs.is_root(&cur) {
            p += 1;
        } else {
            break;
        }
    }
    let mut q = 0u32;
    let mut cur = beta.clone();
    loop {
        cur = cur.add(alpha);
        if rs.is_root(&cur) {
            q += 1;
        } else {
            break;
        }
    }
    Ok((p, q))
}

/// Coefficient of each simple root in the highest root.
pub fn coefficient_heights(rs: &RootSystem) -> Vec<i64> {
    rs.highest_root.0.clone()
}
