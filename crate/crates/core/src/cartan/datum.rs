use num_integer::Integer;
use thiserror::Error;

use super::{RootVector, WeylWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("matrix must be square and nonempty")]
    Shape,
    #[error("diagonal entry a[{0}][{0}] must be 2")]
    Diagonal(i64),
    #[error("off-diagonal entry a[{0}][{1}] must be nonpositive")]
    Positive(i64, i64),
    #[error("a[{0}][{1}] and a[{1}][{0}] must vanish together")]
    ZeroPattern(i64, i64),
    #[error("symmetrizers must be positive coprime integers with eps_i a_ij = eps_j a_ji")]
    Symmetrizer,
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("labels must be distinct")]
    Labels,
    #[error("unknown Cartan type {0}")]
    UnknownType(String),
    #[error("unknown node label {0}")]
    UnknownLabel(i64),
    #[error("parabolic not finite type")]
    NotFiniteType,
    #[error("word is not reduced")]
    NotReduced,
}

/// A symmetrizable generalized Cartan matrix with node labels.
///
/// Conventions: `a[i][j] = alpha_j(h_i)` and `(alpha_i, alpha_j) = eps_i a[i][j]`.
/// Nodes are addressed internally by position `0..n`; `labels` gives the
/// integer names used for input and output, in ascending order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanDatum {
    labels: Vec<i64>,
    a: Vec<Vec<i64>>,
    eps: Vec<i64>,
    name: Option<String>,
}

/// Root-system closures larger than this are treated as infinite.
const ROOT_CAP: usize = 20_000;

impl CartanDatum {
    /// Validates `a` and the symmetrizers. Labels must be strictly increasing.
    pub fn new(labels: Vec<i64>, a: Vec<Vec<i64>>, eps: Vec<i64>) -> Result<Self, CartanError> {
        let n = a.len();
        if n == 0 || a.iter().any(|row| row.len() != n) || labels.len() != n || eps.len() != n {
            return Err(CartanError::Shape);
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CartanError::Labels);
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CartanError::Diagonal(labels[i]));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(CartanError::Positive(labels[i], labels[j]));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(CartanError::ZeroPattern(labels[i], labels[j]));
                }
            }
        }
        if eps.iter().any(|&e| e <= 0) || eps.iter().fold(0, |g, &e| g.gcd(&e)) != 1 {
            return Err(CartanError::Symmetrizer);
        }
        for i in 0..n {
            for j in 0..n {
                if eps[i] * a[i][j] != eps[j] * a[j][i] {
                    return Err(CartanError::Symmetrizer);
                }
            }
        }
        Ok(CartanDatum {
            labels,
            a,
            eps,
            name: None,
        })
    }

    /// Like [`CartanDatum::new`] with labels `1..=n` and symmetrizers computed
    /// from the matrix.
    pub fn from_matrix(a: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = a.len();
        let eps = symmetrizer(&a)?;
        CartanDatum::new((1..=n as i64).collect(), a, eps)
    }

    /// Finite type `X_n` in Bourbaki numbering, for `X` in `A..G`.
    pub fn finite(kind: &str, rank: usize) -> Result<Self, CartanError> {
        let bad = || CartanError::UnknownType(format!("{kind}{rank}"));
        let n = rank;
        let mut a = identity2(n);
        let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
            for i in 0..upto.saturating_sub(1) {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        };
        let eps: Vec<i64> = match kind {
            "A" if n >= 1 => {
                chain(&mut a, n);
                vec![1; n]
            }
            "B" if n >= 2 => {
                chain(&mut a, n);
                a[n - 1][n - 2] = -2;
                let mut e = vec![2; n];
                e[n - 1] = 1;
                e
            }
            "C" if n >= 2 => {
                chain(&mut a, n);
                a[n - 2][n - 1] = -2;
                let mut e = vec![1; n];
                e[n - 1] = 2;
                e
            }
            "D" if n >= 4 => {
                chain(&mut a, n - 1);
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
                vec![1; n]
            }
            "E" if (6..=8).contains(&n) => {
                // 1-3-4-5-...-n with 2 attached to 4
                let edges = std::iter::once((0, 2))
                    .chain(std::iter::once((1, 3)))
                    .chain((2..n - 1).map(|k| (k, k + 1)));
                for (i, j) in edges {
                    a[i][j] = -1;
                    a[j][i] = -1;
                }
                vec![1; n]
            }
            "F" if n == 4 => {
                chain(&mut a, 4);
                a[2][1] = -2;
                vec![2, 2, 1, 1]
            }
            "G" if n == 2 => {
                a[0][1] = -3;
                a[1][0] = -1;
                vec![1, 3]
            }
            _ => return Err(bad()),
        };
        let mut d = CartanDatum::new((1..=n as i64).collect(), a, eps)?;
        d.name = Some(format!("{kind}{n}"));
        Ok(d)
    }

    /// Untwisted affine type `X_n^{(1)}`; currently `X = A`. Nodes are
    /// labelled `0..=n`, with `0` the affine node.
    pub fn affine(kind: &str, rank: usize) -> Result<Self, CartanError> {
        if kind != "A" || rank == 0 {
            return Err(CartanError::UnknownType(format!("affine:{kind}{rank}")));
        }
        let n = rank + 1;
        let mut a = identity2(n);
        if rank == 1 {
            a[0][1] = -2;
            a[1][0] = -2;
        } else {
            for i in 0..n {
                let j = (i + 1) % n;
                a[i][j] = -1;
                a[j][i] = -1;
            }
        }
        let mut d = CartanDatum::new((0..n as i64).collect(), a, vec![1; n])?;
        d.name = Some(format!("affine:{kind}{rank}"));
        Ok(d)
    }

    /// Parses names such as `A3`, `B2`, `affine:A1`, or `A:3`.
    pub fn by_name(spec: &str) -> Result<Self, CartanError> {
        let (affine, rest) = match spec.strip_prefix("affine:") {
            Some(r) => (true, r),
            None => (false, spec),
        };
        let bad = || CartanError::UnknownType(spec.to_string());
        let split = rest.find(|c: char| c.is_ascii_digit() || c == ':').ok_or_else(bad)?;
        let kind = &rest[..split];
        let rank: usize = rest[split..]
            .trim_start_matches(':')
            .parse()
            .map_err(|_| bad())?;
        if affine {
            CartanDatum::affine(kind, rank)
        } else {
            CartanDatum::finite(kind, rank)
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> i64 {
        self.labels[i]
    }

    pub fn index_of(&self, label: i64) -> Result<usize, CartanError> {
        self.labels
            .binary_search(&label)
            .map_err(|_| CartanError::UnknownLabel(label))
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.eps[i]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.eps
    }

    pub fn simple(&self, i: usize) -> RootVector {
        RootVector::simple(self.rank(), i)
    }

    /// `(alpha_i, beta)`.
    pub fn form_simple(&self, i: usize, beta: &RootVector) -> i64 {
        self.eps[i] * self.coroot(i, beta)
    }

    /// `(beta, gamma)`.
    pub fn form(&self, beta: &RootVector, gamma: &RootVector) -> i64 {
        beta.iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| b * self.form_simple(i, gamma))
            .sum()
    }

    /// `beta(h_i)`.
    pub fn coroot(&self, i: usize, beta: &RootVector) -> i64 {
        self.a[i].iter().zip(beta.iter()).map(|(a, b)| a * b).sum()
    }

    /// `s_i(beta) = beta - beta(h_i) alpha_i`.
    pub fn reflect(&self, i: usize, beta: &RootVector) -> RootVector {
        let mut out = beta.clone();
        out[i] -= self.coroot(i, beta);
        out
    }

    /// `w(beta)` for `w = s_{i_1} ... s_{i_k}`; the rightmost letter acts first.
    pub fn weyl_action(&self, w: &WeylWord, beta: &RootVector) -> RootVector {
        w.0.iter()
            .rev()
            .fold(beta.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// Whether `s_{i_1} ... s_{i_k}` is reduced: every root
    /// `s_{i_k} ... s_{i_{l+1}}(alpha_{i_l})` must be positive.
    pub fn is_reduced(&self, w: &WeylWord) -> bool {
        let k = w.len();
        (0..k).all(|l| {
            let tail = WeylWord(w.0[l + 1..].iter().rev().copied().collect());
            self.weyl_action(&tail, &self.simple(w.0[l])).is_positive()
        })
    }

    /// Positive roots of the root subsystem spanned by `x`, by closure of the
    /// simple roots under reflections from `x`.
    pub fn positive_roots(&self, x: &[usize]) -> Result<Vec<RootVector>, CartanError> {
        let mut seen: std::collections::BTreeSet<RootVector> =
            x.iter().map(|&i| self.simple(i)).collect();
        let mut frontier: Vec<RootVector> = seen.iter().cloned().collect();
        while let Some(beta) = frontier.pop() {
            for &j in x {
                let r = self.reflect(j, &beta);
                if r.is_positive() && !seen.contains(&r) {
                    if seen.len() >= ROOT_CAP {
                        return Err(CartanError::NotFiniteType);
                    }
                    seen.insert(r.clone());
                    frontier.push(r);
                }
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        Ok(roots)
    }

    /// A reduced word for the longest element of the parabolic subgroup
    /// generated by `x`, obtained by moving an `x`-dominant regular weight to
    /// the antidominant chamber.
    pub fn longest_word(&self, x: &[usize]) -> Result<WeylWord, CartanError> {
        let roots = self.positive_roots(x)?;
        let mut pairing: Vec<i64> = vec![0; self.rank()];
        for &j in x {
            pairing[j] = 1;
        }
        let mut word = Vec::new();
        while let Some(&k) = x.iter().find(|&&k| pairing[k] > 0) {
            word.push(k);
            let c = pairing[k];
            for &j in x {
                pairing[j] -= c * self.a[j][k];
            }
            if word.len() > roots.len() {
                return Err(CartanError::NotFiniteType);
            }
        }
        // The recorded sequence spells w_0^{-1} = w_0 from the right.
        word.reverse();
        let w = WeylWord(word);
        debug_assert_eq!(w.len(), roots.len());
        debug_assert!(self.is_reduced(&w));
        Ok(w)
    }

    /// Twice the half-sum of positive roots of the subsystem spanned by `x`.
    pub fn two_rho(&self, x: &[usize]) -> Result<RootVector, CartanError> {
        let roots = self.positive_roots(x)?;
        let mut out = RootVector::zero(self.rank());
        for r in &roots {
            out = &out + r;
        }
        Ok(out)
    }

    /// `gamma(2 rho_X^vee) = sum over positive roots beta of 2(gamma,beta)/(beta,beta)`.
    pub fn two_rho_coroot(&self, x: &[usize], gamma: &RootVector) -> Result<i64, CartanError> {
        let roots = self.positive_roots(x)?;
        Ok(roots
            .iter()
            .map(|b| {
                let num = 2 * self.form(gamma, b);
                let den = self.form(b, b);
                debug_assert_eq!(num % den, 0);
                num / den
            })
            .sum())
    }
}

fn identity2(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    a
}

/// Smallest positive integer symmetrizer, computed per connected component.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    use num_rational::Ratio;
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(CartanError::Shape);
    }
    let mut eps: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if eps[start].is_some() {
            continue;
        }
        eps[start] = Some(Ratio::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let ei = eps[i].unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return Err(CartanError::ZeroPattern(i as i64 + 1, j as i64 + 1));
                }
                let ej = ei * Ratio::new(a[i][j], a[j][i]);
                match eps[j] {
                    None => {
                        eps[j] = Some(ej);
                        stack.push(j);
                    }
                    Some(e) if e != ej => return Err(CartanError::NotSymmetrizable),
                    _ => {}
                }
            }
        }
    }
    let eps: Vec<Ratio<i64>> = eps.into_iter().map(Option::unwrap).collect();
    let lcm = eps.iter().fold(1i64, |l, e| l.lcm(e.denom()));
    let ints: Vec<i64> = eps.iter().map(|e| (e * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |g, &e| g.gcd(&e));
    Ok(ints.into_iter().map(|e| e / g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizer_recovers_named_types() {
        for (k, n) in [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("E", 6), ("F", 4), ("G", 2)] {
            let d = CartanDatum::finite(k, n).unwrap();
            assert_eq!(
                symmetrizer(d.matrix()).unwrap(),
                d.symmetrizers(),
                "{k}{n}"
            );
        }
    }

    #[test]
    fn b2_form() {
        let d = CartanDatum::finite("B", 2).unwrap();
        let a1 = d.simple(0);
        let a2 = d.simple(1);
        assert_eq!(d.form(&a1, &a2), -2);
        assert_eq!(d.form(&a1, &a1), 4);
        assert_eq!(d.form(&a2, &a2), 2);
    }

    #[test]
    fn root_counts() {
        let all = |d: &CartanDatum| (0..d.rank()).collect::<Vec<_>>();
        for (k, n, count) in [
            ("A", 4, 10),
            ("B", 3, 9),
            ("C", 3, 9),
            ("D", 4, 12),
            ("E", 6, 36),
            ("E", 7, 63),
            ("E", 8, 120),
            ("F", 4, 24),
            ("G", 2, 6),
        ] {
            let d = CartanDatum::finite(k, n).unwrap();
            let roots = d.positive_roots(&all(&d)).unwrap();
            assert_eq!(roots.len(), count, "{k}{n}");
            let w = d.longest_word(&all(&d)).unwrap();
            assert_eq!(w.len(), count);
            assert!(d.is_reduced(&w));
        }
    }

    #[test]
    fn affine_is_not_finite() {
        let d = CartanDatum::affine("A", 2).unwrap();
        assert_eq!(d.positive_roots(&[0, 1, 2]), Err(CartanError::NotFiniteType));
        assert_eq!(d.positive_roots(&[0, 1]).unwrap().len(), 3);
    }

    #[test]
    fn names_parse() {
        assert_eq!(CartanDatum::by_name("B:2").unwrap().name(), Some("B2"));
        assert_eq!(CartanDatum::by_name("affine:A1").unwrap().labels(), &[0, 1]);
        assert!(CartanDatum::by_name("Q7").is_err());
    }
}
