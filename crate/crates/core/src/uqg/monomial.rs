use crate::cartan::RootVector;

/// A word in the generators, stored as internal node indices.
pub type Word = Vec<u8>;

/// The normal-ordered monomial `E_{e_1} ... E_{e_r} K_k F_{f_1} ... F_{f_s}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    pub e: Word,
    pub k: RootVector,
    pub f: Word,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial {
            e: Vec::new(),
            k: RootVector::zero(rank),
            f: Vec::new(),
        }
    }

    pub fn e_word(rank: usize, word: &[u8]) -> Self {
        Monomial {
            e: word.to_vec(),
            k: RootVector::zero(rank),
            f: Vec::new(),
        }
    }

    pub fn f_word(rank: usize, word: &[u8]) -> Self {
        Monomial {
            e: Vec::new(),
            k: RootVector::zero(rank),
            f: word.to_vec(),
        }
    }

    pub fn k_part(k: RootVector) -> Self {
        Monomial {
            e: Vec::new(),
            k,
            f: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.k.len()
    }

    pub fn is_one(&self) -> bool {
        self.e.is_empty() && self.f.is_empty() && self.k.is_zero()
    }

    /// Degree of the E-word in `Q^+`.
    pub fn e_degree(&self) -> RootVector {
        word_degree(self.rank(), &self.e)
    }

    /// Degree of the F-word, as a positive vector (its grading is the negative).
    pub fn f_degree(&self) -> RootVector {
        word_degree(self.rank(), &self.f)
    }

    /// Weight in the `Q`-grading: `deg(E-word) - deg(F-word)`.
    pub fn weight(&self) -> RootVector {
        let mut w = RootVector::zero(self.rank());
        for &l in &self.e {
            w[l as usize] += 1;
        }
        for &l in &self.f {
            w[l as usize] -= 1;
        }
        w
    }
}

/// Sum of the simple roots spelled by `word`.
pub fn word_degree(rank: usize, word: &[u8]) -> RootVector {
    let mut d = RootVector::zero(rank);
    for &l in word {
        d[l as usize] += 1;
    }
    d
}
