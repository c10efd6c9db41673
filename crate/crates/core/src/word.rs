//! Reduced words in W_n = *_n Z/2, conjugates of generators, and automorphisms
//! of permutation-plus-conjugator shape.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Errors raised by word and automorphism constructors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    /// A generator index fell outside `1..=n`.
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    /// An operation needing two distinct indices got the same one twice.
    #[error("indices must be distinct, got {0} twice")]
    SameIndex(usize),
    /// A word expected to be an odd reduced palindrome was not.
    #[error("word {0} is not a conjugate of a generator")]
    NotConjugateOfGenerator(Word),
    /// Images of the generators do not have pairwise distinct cores.
    #[error("generator images do not induce a permutation")]
    NotPermutation,
    /// Length reduction stalled, so the images are not a basis.
    #[error("generator images do not form a basis of W_{0}")]
    NotInvertible(usize),
    /// Mismatched rank between operands.
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    /// Malformed automorphism product string.
    #[error("cannot parse automorphism: {0}")]
    Parse(String),
}

/// A reduced word in the involutive generators `x_1..x_n`, stored as 1-based
/// letters with no two equal neighbours.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: u8) -> Self {
        Word(vec![i])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = u8>>(letters: I) -> Self {
        let mut out: Vec<u8> = Vec::new();
        for a in letters {
            if out.last() == Some(&a) {
                out.pop();
            } else {
                out.push(a);
            }
        }
        Word(out)
    }

    /// Wraps letters that are already known to be reduced.
    pub(crate) fn from_reduced(letters: Vec<u8>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1]));
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &a in &other.0 {
            if out.last() == Some(&a) {
                out.pop();
            } else {
                out.push(a);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `w * self * w^{-1}`, reduced.
    pub fn conjugate_by(&self, w: &Word) -> Word {
        w.multiply(self).multiply(&w.inverse())
    }

    /// Largest letter used, or 0 for the identity.
    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn check_rank(&self, n: usize) -> Result<(), WordError> {
        match self.0.iter().find(|&&a| a == 0 || a as usize > n) {
            Some(&a) => Err(WordError::IndexOutOfRange { index: a as usize, n }),
            None => Ok(()),
        }
    }

    /// Parses `[1,2,3]` style JSON-free input: letters must be reduced.
    pub fn try_from_letters(letters: Vec<u8>, n: usize) -> Result<Word, WordError> {
        let w = Word::reduce(letters.iter().copied());
        if w.len() != letters.len() {
            return Err(WordError::Parse(format!("word {letters:?} is not reduced")));
        }
        w.check_rank(n)?;
        Ok(w)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for a in &self.0 {
            write!(f, "x{a}")?;
        }
        Ok(())
    }
}

/// Reduced product `a * b`.
pub fn multiply(a: &Word, b: &Word) -> Word {
    a.multiply(b)
}

/// Inverse of a reduced word: its reversal.
pub fn invert(a: &Word) -> Word {
    a.inverse()
}

/// Reduced form of `w g w^{-1}`.
pub fn conjugate(g: &Word, w: &Word) -> Word {
    g.conjugate_by(w)
}

/// A conjugate `w x_core w^{-1}` of a generator. The conjugator is reduced and
/// never ends with `core`, which makes the representation unique.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConjGen {
    pub core: u8,
    pub conj: Word,
}

impl ConjGen {
    /// Builds the canonical representative of `w x_core w^{-1}`.
    pub fn new(core: u8, w: &Word) -> ConjGen {
        let mut letters = w.0.clone();
        if letters.last() == Some(&core) {
            letters.pop();
        }
        ConjGen { core, conj: Word(letters) }
    }

    pub fn generator(i: u8) -> ConjGen {
        ConjGen { core: i, conj: Word::identity() }
    }

    pub fn expand(&self) -> Word {
        let mut v = Vec::with_capacity(2 * self.conj.len() + 1);
        v.extend_from_slice(&self.conj.0);
        v.push(self.core);
        v.extend(self.conj.0.iter().rev());
        Word(v)
    }

    /// Length of the expanded palindrome.
    pub fn word_len(&self) -> usize {
        2 * self.conj.len() + 1
    }

    /// Recognises an odd reduced palindrome.
    pub fn from_word(w: &Word) -> Result<ConjGen, WordError> {
        let l = w.len();
        if l.is_multiple_of(2) || w.0.iter().ne(w.0.iter().rev()) {
            return Err(WordError::NotConjugateOfGenerator(w.clone()));
        }
        let h = l / 2;
        Ok(ConjGen { core: w.0[h], conj: Word(w.0[..h].to_vec()) })
    }

    /// `g * self * g^{-1}`.
    pub fn conjugated_by(&self, g: &Word) -> ConjGen {
        ConjGen::new(self.core, &g.multiply(&self.conj))
    }

    pub fn is_bare(&self) -> bool {
        self.conj.is_empty()
    }

    pub fn check_rank(&self, n: usize) -> Result<(), WordError> {
        if self.core == 0 || self.core as usize > n {
            return Err(WordError::IndexOutOfRange { index: self.core as usize, n });
        }
        self.conj.check_rank(n)
    }
}

impl fmt::Debug for ConjGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expand())
    }
}

impl fmt::Display for ConjGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expand())
    }
}

/// An automorphism `x_j -> w_j x_{perm(j)} w_j^{-1}` of W_n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Automorphism {
    perm: Vec<u8>,
    conj: Vec<Word>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism { perm: (1..=n as u8).collect(), conj: vec![Word::identity(); n] }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn conjugators(&self) -> &[Word] {
        &self.conj
    }

    fn check_index(n: usize, i: usize) -> Result<u8, WordError> {
        if i == 0 || i > n {
            Err(WordError::IndexOutOfRange { index: i, n })
        } else {
            Ok(i as u8)
        }
    }

    /// The partial conjugation sending `x_j` to `x_i x_j x_i`.
    pub fn sigma(n: usize, j: usize, i: usize) -> Result<Self, WordError> {
        let (jj, ii) = (Self::check_index(n, j)?, Self::check_index(n, i)?);
        if jj == ii {
            return Err(WordError::SameIndex(i));
        }
        let mut a = Self::identity(n);
        a.conj[j - 1] = Word::generator(ii);
        Ok(a)
    }

    /// The automorphism swapping `x_i` and `x_j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, WordError> {
        let (ii, jj) = (Self::check_index(n, i)?, Self::check_index(n, j)?);
        if ii == jj {
            return Err(WordError::SameIndex(i));
        }
        let mut a = Self::identity(n);
        a.perm.swap(i - 1, j - 1);
        Ok(a)
    }

    /// Global conjugation `g -> w g w^{-1}`.
    pub fn inner(n: usize, w: &Word) -> Self {
        let images = (1..=n as u8).map(|i| ConjGen::generator(i).conjugated_by(w)).collect();
        Self::from_images_unchecked(images)
    }

    /// Automorphism given by the images of `x_1..x_n`. Only the permutation
    /// condition is checked here; see [`Automorphism::from_images`].
    pub(crate) fn from_images_unchecked(images: Vec<ConjGen>) -> Self {
        let perm = images.iter().map(|c| c.core).collect();
        let conj = images.into_iter().map(|c| c.conj).collect();
        Automorphism { perm, conj }
    }

    /// Automorphism given by the images of `x_1..x_n`; fails unless the images
    /// form a basis.
    pub fn from_images(images: Vec<ConjGen>) -> Result<Self, WordError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for c in &images {
            c.check_rank(n)?;
            if std::mem::replace(&mut seen[c.core as usize], true) {
                return Err(WordError::NotPermutation);
            }
        }
        let a = Self::from_images_unchecked(images);
        a.try_inverse()?;
        Ok(a)
    }

    pub fn image_of_generator(&self, j: usize) -> ConjGen {
        ConjGen { core: self.perm[j - 1], conj: self.conj[j - 1].clone() }
    }

    pub fn images(&self) -> Vec<ConjGen> {
        (1..=self.rank()).map(|j| self.image_of_generator(j)).collect()
    }

    /// Image of a word: letterwise substitution followed by reduction.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out: Vec<u8> = Vec::new();
        for &a in &w.0 {
            let img = self.image_of_generator(a as usize).expand();
            for b in img.0 {
                if out.last() == Some(&b) {
                    out.pop();
                } else {
                    out.push(b);
                }
            }
        }
        Word(out)
    }

    pub fn apply_conj(&self, c: &ConjGen) -> ConjGen {
        let u = self.apply(&c.conj);
        self.image_of_generator(c.core as usize).conjugated_by(&u)
    }

    /// `self ∘ g`, i.e. `x -> self(g(x))`.
    pub fn compose(&self, g: &Automorphism) -> Automorphism {
        assert_eq!(self.rank(), g.rank(), "rank mismatch in compose");
        let images = g.images().iter().map(|c| self.apply_conj(c)).collect();
        Self::from_images_unchecked(images)
    }

    fn total_len(images: &[ConjGen]) -> usize {
        images.iter().map(|c| c.conj.len()).sum()
    }

    /// Inverse computed by greedy length reduction with partial conjugations
    /// applied on the right and single-letter inner automorphisms on the left.
    pub fn try_inverse(&self) -> Result<Automorphism, WordError> {
        let n = self.rank();
        let mut images = self.images();
        let mut moves: Vec<(usize, usize)> = Vec::new();
        let mut g = Word::identity();
        loop {
            let cur = Self::total_len(&images);
            if cur == 0 {
                break;
            }
            let mut best: Option<(usize, Option<(usize, usize)>, Option<u8>)> = None;
            for p in 0..n {
                for a in 0..n {
                    if a == p {
                        continue;
                    }
                    let cand = images[p].conjugated_by(&images[a].expand());
                    let new_total = cur - images[p].conj.len() + cand.conj.len();
                    if new_total < cur && best.as_ref().is_none_or(|b| new_total < b.0) {
                        best = Some((new_total, Some((p, a)), None));
                    }
                }
            }
            for y in 1..=n as u8 {
                let yw = Word::generator(y);
                let new_total: usize = images.iter().map(|c| c.conjugated_by(&yw).conj.len()).sum();
                if new_total < cur && best.as_ref().is_none_or(|b| new_total < b.0) {
                    best = Some((new_total, None, Some(y)));
                }
            }
            match best {
                Some((_, Some((p, a)), _)) => {
                    images[p] = images[p].conjugated_by(&images[a].expand());
                    moves.push((p + 1, a + 1));
                }
                Some((_, None, Some(y))) => {
                    let yw = Word::generator(y);
                    for c in images.iter_mut() {
                        *c = c.conjugated_by(&yw);
                    }
                    g = yw.multiply(&g);
                }
                _ => return Err(WordError::NotInvertible(n)),
            }
        }
        // images now bare: self = inner(g)^{-1} ∘ P ∘ M^{-1}, with M the product of moves.
        let mut seen = vec![false; n + 1];
        for c in &images {
            if std::mem::replace(&mut seen[c.core as usize], true) {
                return Err(WordError::NotInvertible(n));
            }
        }
        let mut pinv = vec![0u8; n];
        for (j, c) in images.iter().enumerate() {
            pinv[c.core as usize - 1] = (j + 1) as u8;
        }
        let p_inv = Automorphism { perm: pinv, conj: vec![Word::identity(); n] };
        let mut result = p_inv.compose(&Automorphism::inner(n, &g));
        for &(p, a) in moves.iter().rev() {
            result = Automorphism::sigma(n, p, a).expect("valid move").compose(&result);
        }
        Ok(result)
    }

    pub fn inverse(&self) -> Automorphism {
        self.try_inverse().expect("automorphism of permutation-plus-conjugator shape is invertible")
    }

    /// The unique `w` with `self = (g -> w g w^{-1})`, if any.
    pub fn is_inner(&self) -> Option<Word> {
        if self.perm.iter().enumerate().any(|(j, &p)| p as usize != j + 1) {
            return None;
        }
        let w1 = &self.conj[0];
        let candidates = [w1.clone(), w1.multiply(&Word::generator(1))];
        candidates.into_iter().find(|w| {
            (1..=self.rank() as u8).all(|j| ConjGen::generator(j).conjugated_by(w) == self.image_of_generator(j as usize))
        })
    }

    /// Representative of the outer class with empty n-th conjugator. The two
    /// such representatives differ by conjugation by the n-th image; the one
    /// with shorter, then lexicographically smaller, conjugators is returned.
    pub fn outer_normal_form(&self) -> Automorphism {
        let n = self.rank();
        let wn = self.conj[n - 1].inverse();
        let core = self.perm[n - 1];
        [wn.clone(), Word::generator(core).multiply(&wn)]
            .iter()
            .map(|g| Automorphism::inner(n, g).compose(self))
            .min_by_key(|f| (f.conj.iter().map(Word::len).sum::<usize>(), f.conj.clone()))
            .expect("two candidates")
    }

    /// Parses a product such as `"s(2,1) t(1,3)"`; the leftmost factor is
    /// applied last.
    pub fn parse_product(n: usize, s: &str) -> Result<Automorphism, WordError> {
        let mut acc = Automorphism::identity(n);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = cleaned.as_str();
        if rest.is_empty() {
            return Ok(acc);
        }
        while !rest.is_empty() {
            let rest_trim = rest.trim_start_matches(['*', '.', '∘']);
            let kind = rest_trim.chars().next().ok_or_else(|| WordError::Parse(s.to_string()))?;
            let open = rest_trim.find('(').ok_or_else(|| WordError::Parse(s.to_string()))?;
            let close = rest_trim.find(')').ok_or_else(|| WordError::Parse(s.to_string()))?;
            if open != 1 || close < open {
                return Err(WordError::Parse(s.to_string()));
            }
            let args: Vec<usize> = rest_trim[open + 1..close]
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|_| WordError::Parse(s.to_string())))
                .collect::<Result<_, _>>()?;
            if args.len() != 2 {
                return Err(WordError::Parse(s.to_string()));
            }
            let factor = match kind {
                's' | 'S' => Automorphism::sigma(n, args[0], args[1])?,
                't' | 'T' => Automorphism::transposition(n, args[0], args[1])?,
                _ => return Err(WordError::Parse(s.to_string())),
            };
            acc = acc.compose(&factor);
            rest = &rest_trim[close + 1..];
        }
        Ok(acc)
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (1..=self.rank()).map(|j| format!("x{j}->{}", self.image_of_generator(j))).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u8]) -> Word {
        Word::reduce(v.iter().copied())
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&w(&[1, 2]), &w(&[2, 3])), w(&[1, 3]));
        assert!(multiply(&w(&[1]), &w(&[1])).is_empty());
        assert_eq!(multiply(&w(&[3, 1, 3]), &w(&[3, 2, 3])), w(&[3, 1, 2, 3]));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&w(&[2]), &w(&[1])), w(&[1, 2, 1]));
        assert_eq!(conjugate(&w(&[1]), &w(&[1])), w(&[1]));
        assert_eq!(conjugate(&w(&[4]), &w(&[3, 1])), w(&[3, 1, 4, 1, 3]));
    }

    #[test]
    fn conj_gen_strips_trailing_core() {
        let c = ConjGen::new(1, &w(&[2, 1]));
        assert_eq!(c.conj, w(&[2]));
        assert_eq!(c.expand(), w(&[2, 1, 2]));
    }

    #[test]
    fn sigma_rejects_equal_indices() {
        assert_eq!(Automorphism::sigma(4, 2, 2), Err(WordError::SameIndex(2)));
    }

    #[test]
    fn parse_product_order() {
        let f = Automorphism::parse_product(4, "s(2,1) s(3,1)").unwrap();
        let g = Automorphism::sigma(4, 2, 1).unwrap().compose(&Automorphism::sigma(4, 3, 1).unwrap());
        assert_eq!(f, g);
        assert!(Automorphism::parse_product(4, "q(1,2)").is_err());
        assert!(Automorphism::parse_product(4, "s(1,9)").is_err());
    }
}
