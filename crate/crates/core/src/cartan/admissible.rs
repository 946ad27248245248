use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{CartanDatum, CartanError, RootVector, WeylWord};

/// Largest rank accepted by [`enumerate_admissible`].
pub const ENUMERATION_RANK_LIMIT: usize = 10;

/// One failed requirement on a candidate pair `(X, tau)`. Node fields carry
/// labels, not internal indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// `tau` is not a permutation of the nodes.
    NotPermutation,
    /// `tau(tau(i)) != i`.
    NotInvolution { node: i64 },
    /// `a_ij != a_{tau(i) tau(j)}`.
    NotDiagramAutomorphism { i: i64, j: i64 },
    /// `tau(X) != X`.
    NotStable { node: i64 },
    /// The subdiagram on `X` is not of finite type.
    NotFiniteType,
    /// `w_X(alpha_j) != -alpha_{tau(j)}` for `j` in `X`.
    LongestElementAction { node: i64 },
    /// `alpha_j(rho_X^vee)` is not an integer for some `tau`-fixed `j` outside `X`;
    /// `twice` records `alpha_j(2 rho_X^vee)`.
    CorootIntegrality { node: i64, twice: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPermutation => write!(f, "tau is not a permutation of the nodes"),
            Violation::NotInvolution { node } => write!(f, "tau^2 moves node {node}"),
            Violation::NotDiagramAutomorphism { i, j } => {
                write!(f, "tau does not preserve a_{{{i},{j}}}")
            }
            Violation::NotStable { node } => write!(f, "tau(X) != X at node {node}"),
            Violation::NotFiniteType => write!(f, "parabolic not finite type"),
            Violation::LongestElementAction { node } => {
                write!(f, "w_X(alpha_{node}) != -alpha_tau({node})")
            }
            Violation::CorootIntegrality { node, twice } => {
                write!(f, "alpha_{node}(rho_X^vee) = {twice}/2 is not an integer")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("not admissible: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("rank {0} exceeds the enumeration limit {ENUMERATION_RANK_LIMIT}")]
    RankTooLarge(usize),
}

/// A validated admissible pair `(X, tau)` together with its derived data.
#[derive(Clone, Debug)]
pub struct AdmissiblePair {
    datum: Arc<CartanDatum>,
    x: Vec<usize>,
    in_x: Vec<bool>,
    tau: Vec<usize>,
    w_x: WeylWord,
    roots_x: Vec<RootVector>,
    two_rho: RootVector,
}

impl PartialEq for AdmissiblePair {
    fn eq(&self, other: &Self) -> bool {
        self.datum == other.datum && self.x == other.x && self.tau == other.tau
    }
}

impl Eq for AdmissiblePair {}

impl AdmissiblePair {
    /// Checks every requirement and returns either the pair or the complete
    /// list of violations. `x` and `tau` use internal indices.
    pub fn validate(
        datum: Arc<CartanDatum>,
        x: &[usize],
        tau: &[usize],
    ) -> Result<AdmissiblePair, PairError> {
        let n = datum.rank();
        let mut violations = Vec::new();
        let mut seen = vec![false; n];
        let is_perm = tau.len() == n
            && tau.iter().all(|&t| {
                let fresh = t < n && !seen[t];
                if fresh {
                    seen[t] = true;
                }
                fresh
            });
        if !is_perm || x.iter().any(|&j| j >= n) {
            return Err(PairError::Invalid(vec![Violation::NotPermutation]));
        }
        for i in 0..n {
            if tau[tau[i]] != i {
                violations.push(Violation::NotInvolution {
                    node: datum.label(i),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if datum.a(i, j) != datum.a(tau[i], tau[j]) {
                    violations.push(Violation::NotDiagramAutomorphism {
                        i: datum.label(i),
                        j: datum.label(j),
                    });
                }
            }
        }
        let mut in_x = vec![false; n];
        for &j in x {
            in_x[j] = true;
        }
        let mut xs: Vec<usize> = (0..n).filter(|&j| in_x[j]).collect();
        xs.dedup();
        for &j in &xs {
            if !in_x[tau[j]] {
                violations.push(Violation::NotStable {
                    node: datum.label(j),
                });
            }
        }
        let roots_x = match datum.positive_roots(&xs) {
            Ok(r) => r,
            Err(_) => {
                violations.push(Violation::NotFiniteType);
                return Err(PairError::Invalid(violations));
            }
        };
        let w_x = datum.longest_word(&xs)?;
        for &j in &xs {
            let image = datum.weyl_action(&w_x, &datum.simple(j));
            if image != -&datum.simple(tau[j]) {
                violations.push(Violation::LongestElementAction {
                    node: datum.label(j),
                });
            }
        }
        for j in 0..n {
            if in_x[j] || tau[j] != j {
                continue;
            }
            let twice = datum.two_rho_coroot(&xs, &datum.simple(j))?;
            if twice % 2 != 0 {
                violations.push(Violation::CorootIntegrality {
                    node: datum.label(j),
                    twice,
                });
            }
        }
        if !violations.is_empty() {
            return Err(PairError::Invalid(violations));
        }
        let mut two_rho = RootVector::zero(n);
        for r in &roots_x {
            two_rho = &two_rho + r;
        }
        Ok(AdmissiblePair {
            datum,
            x: xs,
            in_x,
            tau: tau.to_vec(),
            w_x,
            roots_x,
            two_rho,
        })
    }

    /// Like [`AdmissiblePair::validate`] but with node labels; `tau_pairs`
    /// lists transpositions `(i, tau(i))` (either or both orders) and omitted nodes are fixed.
    pub fn from_labels(
        datum: Arc<CartanDatum>,
        x: &[i64],
        tau_pairs: &[(i64, i64)],
    ) -> Result<AdmissiblePair, PairError> {
        let xs = x
            .iter()
            .map(|&l| datum.index_of(l))
            .collect::<Result<Vec<_>, _>>()?;
        let mut tau: Vec<usize> = (0..datum.rank()).collect();
        let mut assigned = vec![false; datum.rank()];
        for &(a, b) in tau_pairs {
            let (ia, ib) = (datum.index_of(a)?, datum.index_of(b)?);
            // a pair (a, b) lists a transposition, so both directions are set
            for (from, to) in [(ia, ib), (ib, ia)] {
                if assigned[from] && tau[from] != to {
                    return Err(PairError::Invalid(vec![Violation::NotPermutation]));
                }
                assigned[from] = true;
                tau[from] = to;
            }
        }
        AdmissiblePair::validate(datum, &xs, &tau)
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Nodes of `X`, ascending.
    pub fn x(&self) -> &[usize] {
        &self.x
    }

    pub fn in_x(&self, i: usize) -> bool {
        self.in_x[i]
    }

    /// Nodes outside `X`, ascending.
    pub fn outside_x(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.in_x[i]).collect()
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn tau_map(&self) -> &[usize] {
        &self.tau
    }

    /// Reduced word for `w_X`.
    pub fn w_x(&self) -> &WeylWord {
        &self.w_x
    }

    /// Positive roots of the subsystem on `X`.
    pub fn roots_x(&self) -> &[RootVector] {
        &self.roots_x
    }

    /// `2 rho_X` as an integer vector.
    pub fn two_rho(&self) -> &RootVector {
        &self.two_rho
    }

    /// `gamma(2 rho_X^vee)`.
    pub fn two_rho_coroot(&self, gamma: &RootVector) -> i64 {
        self.roots_x
            .iter()
            .map(|b| 2 * self.datum.form(gamma, b) / self.datum.form(b, b))
            .sum()
    }

    /// `tau` acting on the root lattice by permuting coordinates.
    pub fn tau_root(&self, beta: &RootVector) -> RootVector {
        let mut out = RootVector::zero(self.rank());
        for (i, &c) in beta.iter().enumerate() {
            out[self.tau[i]] = c;
        }
        out
    }

    /// `w_X(beta)`.
    pub fn w_x_action(&self, beta: &RootVector) -> RootVector {
        self.datum.weyl_action(&self.w_x, beta)
    }

    /// `Theta(beta) = -w_X(tau(beta))`.
    pub fn theta(&self, beta: &RootVector) -> RootVector {
        -&self.w_x_action(&self.tau_root(beta))
    }

    /// Whether `Theta(beta) = beta`.
    pub fn in_q_theta(&self, beta: &RootVector) -> bool {
        &self.theta(beta) == beta
    }

    /// `(alpha_i, Theta(alpha_i) - 2 rho_X)`.
    pub fn theta_rho_exponent(&self, i: usize) -> i64 {
        let a = self.datum.simple(i);
        self.datum.form(&a, &(&self.theta(&a) - &self.two_rho))
    }

    /// Nodes `i` outside `X` with `tau(i) = i` and `a_ij = 0` for all `j` in `X`.
    pub fn i_ns(&self) -> Vec<usize> {
        self.outside_x()
            .into_iter()
            .filter(|&i| self.tau[i] == i && self.x.iter().all(|&j| self.datum.a(i, j) == 0))
            .collect()
    }

    /// `X` as labels.
    pub fn x_labels(&self) -> Vec<i64> {
        self.x.iter().map(|&j| self.datum.label(j)).collect()
    }

    /// `(i, tau(i))` as labels for every node.
    pub fn tau_labels(&self) -> Vec<(i64, i64)> {
        (0..self.rank())
            .map(|i| (self.datum.label(i), self.datum.label(self.tau[i])))
            .collect()
    }
}

impl fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x: Vec<String> = self.x_labels().iter().map(|l| l.to_string()).collect();
        let moved: Vec<String> = self
            .tau_labels()
            .into_iter()
            .filter(|(a, b)| a < b)
            .map(|(a, b)| format!("({a} {b})"))
            .collect();
        let tau = if moved.is_empty() {
            "id".to_string()
        } else {
            moved.join("")
        };
        write!(f, "X={{{}}}, tau={}", x.join(","), tau)
    }
}

/// Involutive permutations of the nodes preserving the Cartan matrix, in
/// lexicographic order.
pub fn involutive_automorphisms(datum: &CartanDatum) -> Vec<Vec<usize>> {
    let n = datum.rank();
    let mut out = Vec::new();
    let mut tau = vec![usize::MAX; n];
    fn extend(d: &CartanDatum, tau: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        let n = d.rank();
        if k == n {
            out.push(tau.clone());
            return;
        }
        if tau[k] != usize::MAX {
            extend(d, tau, k + 1, out);
            return;
        }
        for t in k..n {
            if tau[t] != usize::MAX {
                continue;
            }
            tau[k] = t;
            tau[t] = k;
            let consistent = (0..n).all(|j| {
                let tj = tau[j];
                tj == usize::MAX
                    || (d.a(k, j) == d.a(t, tj) && d.a(j, k) == d.a(tj, t))
            });
            if consistent {
                extend(d, tau, k + 1, out);
            }
            tau[t] = usize::MAX;
            tau[k] = usize::MAX;
        }
    }
    extend(datum, &mut tau, 0, &mut out);
    out.sort();
    out
}

/// All admissible pairs, sorted by `(X, tau)` with `X` read as an ascending
/// list of node indices.
pub fn enumerate_admissible(datum: Arc<CartanDatum>) -> Result<Vec<AdmissiblePair>, PairError> {
    let n = datum.rank();
    if n > ENUMERATION_RANK_LIMIT {
        return Err(PairError::RankTooLarge(n));
    }
    let taus = involutive_automorphisms(&datum);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let x: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        if datum.positive_roots(&x).is_err() {
            continue;
        }
        for tau in &taus {
            if x.iter().any(|&j| mask >> tau[j] & 1 == 0) {
                continue;
            }
            if let Ok(p) = AdmissiblePair::validate(datum.clone(), &x, tau) {
                out.push(p);
            }
        }
    }
    out.sort_by(|a, b| (&a.x, &a.tau).cmp(&(&b.x, &b.tau)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> Arc<CartanDatum> {
        Arc::new(CartanDatum::finite("A", n).unwrap())
    }

    #[test]
    fn aiv_is_admissible_and_theta_matches() {
        let d = a(3);
        let p = AdmissiblePair::from_labels(d.clone(), &[2], &[(1, 3), (3, 1)]).unwrap();
        assert_eq!(
            p.theta(&d.simple(0)),
            RootVector(vec![0, -1, -1])
        );
        assert_eq!(p.two_rho_coroot(&d.simple(0)), -1);
    }

    #[test]
    fn integrality_failure_is_reported() {
        let d = a(3);
        let err = AdmissiblePair::from_labels(d, &[2], &[]).unwrap_err();
        match err {
            PairError::Invalid(v) => assert!(v.contains(&Violation::CorootIntegrality {
                node: 1,
                twice: -1
            })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_admissible(a(1)).unwrap().len(), 2);
        assert_eq!(enumerate_admissible(a(3)).unwrap().len(), 5);
        assert_eq!(involutive_automorphisms(&a(3)).len(), 2);
    }
}
