//! Truncated power series in `k` non-commuting indeterminates, and the
//! one-variable series calculus.
//!
//! Coefficients are sparse: an absent word of admissible length means 0.
//! The constant term of a multivariate series is identically 0. Mixed
//! operations take the minimum of the two truncation degrees rather than
//! silently extrapolating.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::nclat::{MultiChain, NcPartition};
use crate::ratio;
use crate::Result;

/// A word over the alphabet `{1..k}`; the empty word is allowed only as
/// an explicit sentinel and never stored in a series.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    /// The constant word `(i, i, .., i)` of length `n`.
    pub fn constant(letter: usize, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// True when every letter equals the first one.
    pub fn is_pure(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// The subword at the given 1-based positions, which must be strictly
    /// increasing and within range.
    pub fn restrict(&self, positions: &[usize]) -> Result<Word> {
        if positions.is_empty() {
            return Err(Error::domain("restriction set must be non-empty"));
        }
        let mut out = Vec::with_capacity(positions.len());
        let mut prev = 0usize;
        for &p in positions {
            if p == 0 || p > self.0.len() {
                return Err(Error::domain(format!(
                    "position {p} outside 1..{}",
                    self.0.len()
                )));
            }
            if p <= prev {
                return Err(Error::domain("positions must strictly increase"));
            }
            prev = p;
            out.push(self.0[p - 1]);
        }
        Ok(Word(out))
    }

    /// All words of the given length over `{1..k}`, in canonical order.
    pub fn all_of_length(k: usize, n: usize) -> Vec<Word> {
        let mut out = vec![Word(Vec::new())];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * k);
            for w in &out {
                for letter in 1..=k {
                    let mut v = w.0.clone();
                    v.push(letter);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        // canonical order: by length, then lexicographically
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Word(Vec::<usize>::deserialize(d)?))
    }
}

/// A truncated series in `k` non-commuting indeterminates with vanishing
/// constant term. Coefficients are stored for words of length `1..=degree`;
/// absent words are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcSeries {
    k: usize,
    degree: usize,
    coeffs: BTreeMap<Word, BigRational>,
}

impl NcSeries {
    pub fn zero(k: usize, degree: usize) -> Result<Self> {
        if k == 0 || degree == 0 {
            return Err(Error::domain("alphabet size and degree must be positive"));
        }
        Ok(NcSeries {
            k,
            degree,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn from_coeffs(
        k: usize,
        degree: usize,
        coeffs: impl IntoIterator<Item = (Word, BigRational)>,
    ) -> Result<Self> {
        let mut s = NcSeries::zero(k, degree)?;
        for (w, v) in coeffs {
            s.set(w, v)?;
        }
        Ok(s)
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<Word, BigRational> {
        &self.coeffs
    }

    pub fn set(&mut self, w: Word, v: BigRational) -> Result<()> {
        if w.is_empty() {
            return Err(Error::domain("constant term must stay zero"));
        }
        if w.len() > self.degree {
            return Err(Error::domain(format!(
                "word {w} exceeds truncation degree {}",
                self.degree
            )));
        }
        if w.max_letter() > self.k {
            return Err(Error::domain(format!(
                "word {w} uses letters beyond alphabet size {}",
                self.k
            )));
        }
        if v.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, v);
        }
        Ok(())
    }

    /// The coefficient of a word, zero when absent. The word must be within
    /// the truncation degree.
    pub fn coeff(&self, w: &Word) -> Result<BigRational> {
        if w.is_empty() || w.len() > self.degree {
            return Err(Error::domain(format!(
                "word {w} outside stored range 1..={}",
                self.degree
            )));
        }
        Ok(self
            .coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    /// Product over the blocks of `p` of the coefficients of the restricted
    /// subwords.
    pub fn partition_coefficient(&self, w: &Word, p: &NcPartition) -> Result<BigRational> {
        if p.ground_size() != w.len() {
            return Err(Error::domain(format!(
                "partition of {} points against word of length {}",
                p.ground_size(),
                w.len()
            )));
        }
        if w.len() > self.degree {
            return Err(Error::domain(format!(
                "word {w} beyond truncation degree {}",
                self.degree
            )));
        }
        let mut acc = BigRational::one();
        for b in p.blocks() {
            let sub = w.restrict(b)?;
            let c = self.coeff(&sub)?;
            if c.is_zero() {
                return Ok(BigRational::zero());
            }
            acc *= c;
        }
        Ok(acc)
    }

    /// Product over the steps of a multi-chain of the partition
    /// coefficients taken at the relative complement of each step.
    pub fn multichain_coefficient(&self, w: &Word, g: &MultiChain) -> Result<BigRational> {
        if g.ground_size() != w.len() {
            return Err(Error::domain(format!(
                "multi-chain on {} points against word of length {}",
                g.ground_size(),
                w.len()
            )));
        }
        let mut acc = BigRational::one();
        for step in g.step_complements()? {
            acc *= self.partition_coefficient(w, &step)?;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        Ok(acc)
    }

    /// True when the coefficient of every single-letter word is 1.
    pub fn has_unit_linear_part(&self) -> bool {
        (1..=self.k).all(|i| {
            self.coeffs
                .get(&Word(vec![i]))
                .map(|v| v.is_one())
                .unwrap_or(false)
        })
    }

    /// Sets every single-letter coefficient to 1.
    pub fn with_unit_linear_part(mut self) -> Self {
        for i in 1..=self.k {
            self.coeffs.insert(Word(vec![i]), BigRational::one());
        }
        self
    }

    /// Re-truncates to a smaller degree.
    pub fn truncated(&self, degree: usize) -> Result<NcSeries> {
        if degree == 0 || degree > self.degree {
            return Err(Error::domain(format!(
                "cannot truncate degree {} to {degree}",
                self.degree
            )));
        }
        NcSeries::from_coeffs(
            self.k,
            degree,
            self.coeffs
                .iter()
                .filter(|(w, _)| w.len() <= degree)
                .map(|(w, v)| (w.clone(), v.clone())),
        )
    }
}

/// Wire form of a coefficient table entry: the word and the exact
/// rational as a string.
#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    word: Word,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct NcSeriesRepr {
    k: usize,
    degree: usize,
    coeffs: Vec<CoeffEntry>,
}

impl Serialize for NcSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = NcSeriesRepr {
            k: self.k,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, v)| CoeffEntry {
                    word: w.clone(),
                    value: ratio::to_string(v),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NcSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = NcSeriesRepr::deserialize(d)?;
        let mut out = NcSeries::zero(repr.k, repr.degree).map_err(D::Error::custom)?;
        for entry in repr.coeffs {
            if out.coeffs.contains_key(&entry.word) {
                return Err(D::Error::custom(format!(
                    "duplicate word {} in coefficient table",
                    entry.word
                )));
            }
            let value = ratio::parse(&entry.value).map_err(D::Error::custom)?;
            out.set(entry.word, value).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

/// A truncated one-variable series; `coeffs[i]` is the coefficient of `z^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneVarSeries {
    coeffs: Vec<BigRational>,
}

impl OneVarSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant");
        OneVarSeries { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        OneVarSeries {
            coeffs: vec![BigRational::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The identity series `z`.
    pub fn identity(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if degree >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn set(&mut self, i: usize, v: BigRational) {
        assert!(i < self.coeffs.len());
        self.coeffs[i] = v;
    }

    pub fn truncated(&self, degree: usize) -> OneVarSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(degree + 1);
        coeffs.resize(degree + 1, BigRational::zero());
        OneVarSeries { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &OneVarSeries) -> OneVarSeries {
        let deg = self.degree().min(other.degree());
        let coeffs = (0..=deg).map(|i| self.coeff(i) + other.coeff(i)).collect();
        OneVarSeries { coeffs }
    }

    pub fn sub(&self, other: &OneVarSeries) -> OneVarSeries {
        let deg = self.degree().min(other.degree());
        let coeffs = (0..=deg).map(|i| self.coeff(i) - other.coeff(i)).collect();
        OneVarSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> OneVarSeries {
        OneVarSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Coefficientwise product truncated at the smaller degree.
    pub fn mul(&self, other: &OneVarSeries) -> OneVarSeries {
        let deg = self.degree().min(other.degree());
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for i in 0..=deg {
            let a = self.coeff(i);
            if a.is_zero() {
                continue;
            }
            for j in 0..=deg - i {
                let b = other.coeff(j);
                if !b.is_zero() {
                    coeffs[i + j] += &a * b;
                }
            }
        }
        OneVarSeries { coeffs }
    }

    /// Multiplication by `z`, keeping the degree bound.
    pub fn shift_up(&self, degree: usize) -> OneVarSeries {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        for i in 0..degree {
            coeffs[i + 1] = self.coeff(i);
        }
        OneVarSeries { coeffs }
    }

    /// Division by `z`; the constant term must vanish.
    pub fn shift_down(&self) -> Result<OneVarSeries> {
        if !self.coeff(0).is_zero() {
            return Err(Error::domain("cannot divide by z: nonzero constant term"));
        }
        let coeffs = (1..self.coeffs.len()).map(|i| self.coeff(i)).collect();
        Ok(OneVarSeries { coeffs })
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<OneVarSeries> {
        if self.coeff(0).is_zero() {
            return Err(Error::domain("reciprocal needs a nonzero constant term"));
        }
        let deg = self.degree();
        let inv0 = BigRational::one() / self.coeff(0);
        let mut out = vec![BigRational::zero(); deg + 1];
        out[0] = inv0.clone();
        for n in 1..=deg {
            let mut acc = BigRational::zero();
            for i in 1..=n {
                let fi = self.coeff(i);
                if !fi.is_zero() {
                    acc += fi * &out[n - i];
                }
            }
            out[n] = -&inv0 * acc;
        }
        Ok(OneVarSeries { coeffs: out })
    }

    /// Composition `self(inner)`; the inner series must have zero
    /// constant term.
    pub fn compose(&self, inner: &OneVarSeries) -> Result<OneVarSeries> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::domain(
                "composition needs zero constant term in the inner series",
            ));
        }
        let deg = self.degree().min(inner.degree());
        let mut result = OneVarSeries::zero(deg);
        result.coeffs[0] = self.coeff(0);
        let mut power = OneVarSeries::one(deg);
        let inner = inner.truncated(deg);
        for i in 1..=deg {
            power = power.mul(&inner);
            let c = self.coeff(i);
            if !c.is_zero() {
                result = result.add(&power.scale(&c));
            }
            if power.is_zero() {
                break;
            }
        }
        Ok(result)
    }

    /// Compositional inverse, solved degree by degree; requires zero
    /// constant term and nonzero linear term.
    pub fn compositional_inverse(&self) -> Result<OneVarSeries> {
        if !self.coeff(0).is_zero() {
            return Err(Error::domain(
                "compositional inverse needs zero constant term",
            ));
        }
        if self.coeff(1).is_zero() {
            return Err(Error::domain(
                "compositional inverse needs nonzero linear term",
            ));
        }
        let deg = self.degree();
        let mut g = OneVarSeries::zero(deg);
        if deg == 0 {
            return Ok(g);
        }
        let inv1 = BigRational::one() / self.coeff(1);
        g.coeffs[1] = inv1.clone();
        // impose [z^n] self(g) = 0 for n >= 2, one degree at a time
        for n in 2..=deg {
            let trial = self.compose(&g.truncated(n))?;
            let residue = trial.coeff(n);
            g.coeffs[n] = -&inv1 * residue;
        }
        Ok(g)
    }

    /// Series logarithm via the alternating power sum; requires constant
    /// term 1. The sum terminates at the truncation degree.
    pub fn log(&self) -> Result<OneVarSeries> {
        if !self.coeff(0).is_one() {
            return Err(Error::domain("log needs constant term 1"));
        }
        let deg = self.degree();
        let u = OneVarSeries::one(deg).sub(self); // zero constant term
        let mut acc = OneVarSeries::one(deg);
        let mut out = OneVarSeries::zero(deg);
        for n in 1..=deg {
            acc = acc.mul(&u);
            if acc.is_zero() {
                break;
            }
            out = out.sub(&acc.scale(&ratio::ratio(1, n as i64)));
        }
        Ok(out)
    }

    /// Series exponential; requires zero constant term. Inverse of [`log`]
    /// up to truncation.
    ///
    /// [`log`]: OneVarSeries::log
    pub fn exp(&self) -> Result<OneVarSeries> {
        if !self.coeff(0).is_zero() {
            return Err(Error::domain("exp needs zero constant term"));
        }
        let deg = self.degree();
        let mut acc = OneVarSeries::one(deg);
        let mut out = OneVarSeries::one(deg);
        let mut factorial = BigRational::one();
        for n in 1..=deg {
            acc = acc.mul(self);
            if acc.is_zero() {
                break;
            }
            factorial *= ratio::int(n as i64);
            out = out.add(&acc.scale(&(BigRational::one() / &factorial)));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct OneVarSeriesRepr {
    degree: usize,
    coeffs: Vec<String>,
}

impl Serialize for OneVarSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = OneVarSeriesRepr {
            degree: self.degree(),
            coeffs: self.coeffs.iter().map(ratio::to_string).collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OneVarSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = OneVarSeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.degree + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, got {}",
                repr.degree + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| ratio::parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(OneVarSeries::new(coeffs))
    }
}

impl fmt::Display for OneVarSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", ratio::to_string(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", ratio::to_string(&a))?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nclat;
    use crate::ratio::{int, ratio};
    use proptest::prelude::*;

    fn word(letters: &[usize]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn restriction_examples() {
        let w = word(&[7, 3, 5, 2, 9]);
        assert_eq!(w.restrict(&[1, 4, 5]).unwrap(), word(&[7, 2, 9]));
        assert_eq!(w.restrict(&[1, 2, 3, 4, 5]).unwrap(), w);
        assert_eq!(word(&[2, 1, 2]).restrict(&[2]).unwrap(), word(&[1]));
        assert!(w.restrict(&[6]).is_err());
        assert!(w.restrict(&[2, 2]).is_err());
        assert!(w.restrict(&[]).is_err());
    }

    #[test]
    fn word_order_is_length_then_lex() {
        let mut ws = vec![word(&[2]), word(&[1, 1]), word(&[1]), word(&[1, 2])];
        ws.sort();
        assert_eq!(
            ws,
            vec![word(&[1]), word(&[2]), word(&[1, 1]), word(&[1, 2])]
        );
    }

    fn sample_series() -> NcSeries {
        // all linear coefficients 1, a few higher ones set
        let mut s = NcSeries::zero(2, 5).unwrap().with_unit_linear_part();
        s.set(word(&[1, 2]), ratio(2, 3)).unwrap();
        s.set(word(&[2, 1]), int(-1)).unwrap();
        s.set(word(&[1, 2, 1]), ratio(5, 7)).unwrap();
        s.set(word(&[1, 1, 2, 1, 2]), int(4)).unwrap();
        s
    }

    #[test]
    fn partition_coefficient_examples() {
        let s = sample_series();
        let w = word(&[1, 1, 2, 1, 2]);
        // one big block and one nested pair
        let p = NcPartition::new(5, vec![vec![1, 4, 5], vec![2, 3]]).unwrap();
        let expected = s.coeff(&word(&[1, 1, 2])).unwrap() * s.coeff(&word(&[1, 2])).unwrap();
        assert_eq!(s.partition_coefficient(&w, &p).unwrap(), expected);
        // bottom partition on a series with unit linear part
        let bottom = NcPartition::bottom(5);
        assert_eq!(s.partition_coefficient(&w, &bottom).unwrap(), int(1));
        // top partition is the plain coefficient
        let top = NcPartition::top(5);
        assert_eq!(s.partition_coefficient(&w, &top).unwrap(), int(4));
        // mismatched sizes and degree overflow error out
        assert!(s.partition_coefficient(&word(&[1, 2]), &top).is_err());
        let long = word(&[1, 2, 1, 2, 1, 2]);
        assert!(s
            .partition_coefficient(&long, &NcPartition::bottom(6))
            .is_err());
    }

    #[test]
    fn partition_coefficient_brute_force_oracle() {
        // independent evaluation materializing each restricted word, on a
        // dense random series through ground size 6
        let mut s = NcSeries::zero(2, 6).unwrap();
        let mut state = 1u64;
        for n in 1..=6 {
            for w in Word::all_of_length(2, n) {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let numer = (state >> 33) as i64 % 7 - 3;
                s.set(w, int(numer)).unwrap();
            }
        }
        for n in 1..=6usize {
            let w = Word::new((0..n).map(|i| 1 + (i % 2)).collect());
            for p in nclat::enumerate_nc(n).unwrap() {
                let mut acc = int(1);
                for b in p.blocks() {
                    let letters: Vec<usize> = b.iter().map(|&i| w.letters()[i - 1]).collect();
                    acc *= s.coeff(&Word::new(letters)).unwrap();
                }
                assert_eq!(s.partition_coefficient(&w, &p).unwrap(), acc);
            }
        }
    }

    #[test]
    fn multichain_coefficient_examples() {
        let s = sample_series();
        let w = word(&[1, 2, 1, 2]);
        // the unique length-1 chain gives the plain coefficient
        let g = MultiChain::new(vec![NcPartition::bottom(4), NcPartition::top(4)]).unwrap();
        assert_eq!(
            s.multichain_coefficient(&w, &g).unwrap(),
            s.coeff(&w).unwrap()
        );
        // the worked length-3 chain on 4 points
        let p1 = NcPartition::new(4, vec![vec![1, 3], vec![2], vec![4]]).unwrap();
        let p2 = NcPartition::new(4, vec![vec![1, 3, 4], vec![2]]).unwrap();
        let g = MultiChain::new(vec![NcPartition::bottom(4), p1, p2, NcPartition::top(4)]).unwrap();
        let expected = s.coeff(&word(&[1, 1])).unwrap()
            * s.coeff(&word(&[1, 2])).unwrap()
            * s.coeff(&word(&[1, 2])).unwrap();
        assert_eq!(s.multichain_coefficient(&w, &g).unwrap(), expected);
    }

    #[test]
    fn multichain_coefficient_vanishes_without_coefficients() {
        // series of a unit-like transform: linear part 1, nothing else
        let s = NcSeries::zero(1, 4).unwrap().with_unit_linear_part();
        let w = word(&[1, 1, 1, 1]);
        for c in nclat::enumerate_chains(4).unwrap() {
            let g: MultiChain = c.into();
            let v = s.multichain_coefficient(&w, &g).unwrap();
            if g.len() == 1 {
                assert_eq!(v, int(0)); // plain coefficient of the long word
            } else {
                // every longer chain has a step with a non-singleton block
                assert_eq!(v, int(0));
            }
        }
    }

    #[test]
    fn reciprocal_geometric() {
        let mut f = OneVarSeries::one(5);
        f.set(1, int(1)); // 1 + z
        let g = f.reciprocal().unwrap();
        for i in 0..=5 {
            assert_eq!(g.coeff(i), if i % 2 == 0 { int(1) } else { int(-1) });
        }
        assert_eq!(f.mul(&g), OneVarSeries::one(5));
        assert!(OneVarSeries::zero(3).reciprocal().is_err());
    }

    #[test]
    fn compositional_inverse_of_geometric_ratio() {
        // z/(1-z) inverts to z/(1+z)
        let deg = 7;
        let f = OneVarSeries::new((0..=deg).map(|i| int((i > 0) as i64)).collect());
        let g = f.compositional_inverse().unwrap();
        for i in 1..=deg {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            assert_eq!(g.coeff(i), int(sign));
        }
        assert_eq!(f.compose(&g).unwrap(), OneVarSeries::identity(deg));
        assert_eq!(g.compose(&f).unwrap(), OneVarSeries::identity(deg));
    }

    #[test]
    fn log_taylor_oracle() {
        // log(1/(1+z)) = -z + z^2/2 - z^3/3 + ...
        let mut f = OneVarSeries::one(6);
        f.set(1, int(1));
        let g = f.reciprocal().unwrap().log().unwrap();
        assert_eq!(g.coeff(0), int(0));
        for i in 1..=6 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            assert_eq!(g.coeff(i), ratio(sign, i as i64));
        }
        assert!(OneVarSeries::zero(3).log().is_err());
    }

    #[test]
    fn exp_log_round_trip() {
        let f = OneVarSeries::new(vec![int(0), int(2), ratio(-1, 3), int(0), ratio(7, 5)]);
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        let g = OneVarSeries::new(vec![int(1), ratio(1, 2), int(-3), ratio(2, 9), int(1)]);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn prop_reciprocal_multiplies_to_one(
            coeffs in proptest::collection::vec((-6i64..=6, 1i64..=6), 5..7),
            c0 in prop_oneof![1i64..=6, -6i64..=-1],
        ) {
            let mut v: Vec<_> = coeffs.iter().map(|&(p, q)| ratio(p, q)).collect();
            v[0] = int(c0);
            let f = OneVarSeries::new(v);
            let deg = f.degree();
            prop_assert_eq!(f.mul(&f.reciprocal().unwrap()), OneVarSeries::one(deg));
        }

        #[test]
        fn prop_compose_with_inverse_is_identity(
            coeffs in proptest::collection::vec((-6i64..=6, 1i64..=6), 5..7),
            c1 in prop_oneof![1i64..=6, -6i64..=-1],
        ) {
            let mut v: Vec<_> = coeffs.iter().map(|&(p, q)| ratio(p, q)).collect();
            v[0] = int(0);
            v[1] = int(c1);
            let f = OneVarSeries::new(v);
            let deg = f.degree();
            let g = f.compositional_inverse().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), OneVarSeries::identity(deg));
            prop_assert_eq!(g.compose(&f).unwrap(), OneVarSeries::identity(deg));
        }
    }
}
