//! Distributions of `k`-tuples and their transforms.
//!
//! A distribution is stored by its moments; the cumulant series, the
//! chain-sum transform and the one-variable S-transform are derived views,
//! cached per instance. The convolution `boxtimes` is computed on cumulant
//! coefficients through the complement pairing, and the chain-sum
//! transform (`ls`) linearizes commuting products.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::{BigRational, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::nclat::{self, NcPartition};
use crate::ratio;
use crate::series::{NcSeries, OneVarSeries, Word};
use crate::Result;

/// A unital moment functional on words, truncated at a degree bound.
/// Absent words of admissible length carry moment 0; the empty word
/// implicitly has moment 1.
#[derive(Debug, Clone)]
pub struct Distribution {
    k: usize,
    degree: usize,
    moments: BTreeMap<Word, BigRational>,
    r_cache: OnceLock<NcSeries>,
    ls_cache: OnceLock<NcSeries>,
    s_cache: OnceLock<OneVarSeries>,
}

impl PartialEq for Distribution {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.degree == other.degree && self.moments == other.moments
    }
}

impl Eq for Distribution {}

impl Distribution {
    pub fn from_moments(
        k: usize,
        degree: usize,
        moments: impl IntoIterator<Item = (Word, BigRational)>,
    ) -> Result<Self> {
        if k == 0 || degree == 0 {
            return Err(Error::domain("alphabet size and degree must be positive"));
        }
        if degree > nclat::MAX_GROUND_SET {
            return Err(Error::domain(format!(
                "degree {degree} beyond the enumeration bound {}",
                nclat::MAX_GROUND_SET
            )));
        }
        let mut map = BTreeMap::new();
        for (w, v) in moments {
            if w.is_empty() || w.len() > degree {
                return Err(Error::domain(format!(
                    "moment word {w} outside 1..={degree}"
                )));
            }
            if w.max_letter() > k {
                return Err(Error::domain(format!(
                    "moment word {w} uses letters beyond alphabet size {k}"
                )));
            }
            if !v.is_zero() {
                map.insert(w, v);
            }
        }
        Ok(Distribution {
            k,
            degree,
            moments: map,
            r_cache: OnceLock::new(),
            ls_cache: OnceLock::new(),
            s_cache: OnceLock::new(),
        })
    }

    /// The convolution unit: every moment equals 1.
    pub fn boxtimes_unit(k: usize, degree: usize) -> Self {
        let mut moments = BTreeMap::new();
        for n in 1..=degree {
            for w in Word::all_of_length(k, n) {
                moments.insert(w, BigRational::one());
            }
        }
        Distribution::from_moments(k, degree, moments).expect("unit moments are valid")
    }

    /// The one-variable distribution with every free cumulant equal to 1;
    /// its moments are the Catalan numbers.
    pub fn free_poisson(degree: usize) -> Self {
        let mut r = NcSeries::zero(1, degree).expect("positive degree");
        for n in 1..=degree {
            r.set(Word::constant(1, n), BigRational::one())
                .expect("within degree");
        }
        Distribution::from_r_transform(&r).expect("valid cumulant series")
    }

    /// Rebuilds the distribution whose cumulant series is `r`.
    pub fn from_r_transform(r: &NcSeries) -> Result<Self> {
        let k = r.alphabet_size();
        let degree = r.degree();
        let mut moments = BTreeMap::new();
        for n in 1..=degree {
            let partitions = nclat::enumerate_nc(n)?;
            for w in Word::all_of_length(k, n) {
                let mut acc = BigRational::zero();
                for p in &partitions {
                    acc += r.partition_coefficient(&w, p)?;
                }
                if !acc.is_zero() {
                    moments.insert(w, acc);
                }
            }
        }
        let d = Distribution::from_moments(k, degree, moments)?;
        let _ = d.r_cache.set(r.clone());
        Ok(d)
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn moments(&self) -> &BTreeMap<Word, BigRational> {
        &self.moments
    }

    pub fn moment(&self, w: &Word) -> Result<BigRational> {
        if w.is_empty() {
            return Ok(BigRational::one());
        }
        if w.len() > self.degree {
            return Err(Error::domain(format!(
                "word {w} beyond truncation degree {}",
                self.degree
            )));
        }
        Ok(self
            .moments
            .get(w)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    /// Group membership: every first moment equals 1.
    pub fn is_normalized(&self) -> bool {
        (1..=self.k).all(|i| {
            self.moments
                .get(&Word::constant(i, 1))
                .map(|v| v.is_one())
                .unwrap_or(false)
        })
    }

    /// Re-truncates to a smaller degree.
    pub fn truncated(&self, degree: usize) -> Result<Distribution> {
        if degree == 0 || degree > self.degree {
            return Err(Error::domain(format!(
                "cannot truncate degree {} to {degree}",
                self.degree
            )));
        }
        Distribution::from_moments(
            self.k,
            degree,
            self.moments
                .iter()
                .filter(|(w, _)| w.len() <= degree)
                .map(|(w, v)| (w.clone(), v.clone())),
        )
    }

    /// The free-cumulant series, solved from the moments one word length
    /// at a time and cached.
    pub fn r_transform(&self) -> &NcSeries {
        self.r_cache.get_or_init(|| {
            moments_to_r_impl(self).expect("moment data is within enumeration bounds")
        })
    }

    /// The chain-sum transform of the distribution; requires membership in
    /// the normalized group.
    pub fn ls_transform(&self) -> Result<&NcSeries> {
        if !self.is_normalized() {
            return Err(Error::domain(
                "transform needs every first moment equal to 1",
            ));
        }
        if let Some(found) = self.ls_cache.get() {
            return Ok(found);
        }
        let ls = ls_from_r(self.r_transform())?;
        let _ = self.ls_cache.set(ls);
        Ok(self.ls_cache.get().expect("just set"))
    }

    /// Free multiplicative convolution, computed on cumulant coefficients.
    pub fn boxtimes(&self, other: &Distribution) -> Result<Distribution> {
        if self.k != other.k || self.degree != other.degree {
            return Err(Error::domain(format!(
                "alphabet/degree mismatch: ({}, {}) vs ({}, {})",
                self.k, self.degree, other.k, other.degree
            )));
        }
        let ra = self.r_transform();
        let rb = other.r_transform();
        let mut r = NcSeries::zero(self.k, self.degree)?;
        for n in 1..=self.degree {
            let partitions = nclat::enumerate_nc(n)?;
            let complements: Vec<NcPartition> = partitions.iter().map(|p| p.kreweras()).collect();
            for w in Word::all_of_length(self.k, n) {
                let mut acc = BigRational::zero();
                for (p, kp) in partitions.iter().zip(&complements) {
                    let left = ra.partition_coefficient(&w, p)?;
                    if left.is_zero() {
                        continue;
                    }
                    acc += left * rb.partition_coefficient(&w, kp)?;
                }
                r.set(w, acc)?;
            }
        }
        Distribution::from_r_transform(&r)
    }

    /// The two-sided inverse under the convolution, via the signed chain
    /// sum on cumulants. Requires membership in the normalized group.
    pub fn boxtimes_inverse(&self) -> Result<Distribution> {
        if !self.is_normalized() {
            return Err(Error::domain("inverse needs every first moment equal to 1"));
        }
        let r = self.r_transform();
        let mut out = NcSeries::zero(self.k, self.degree)?.with_unit_linear_part();
        for n in 2..=self.degree {
            let index = nclat::chain_index(n)?;
            for w in Word::all_of_length(self.k, n) {
                let mut memo: Vec<Option<BigRational>> = vec![None; index.partitions.len()];
                let mut acc = BigRational::zero();
                for steps in &index.step_complements {
                    let term = chain_product(r, &w, steps, &index.partitions, &mut memo)?;
                    if term.is_zero() {
                        continue;
                    }
                    if steps.len() % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                out.set(w, acc)?;
            }
        }
        Distribution::from_r_transform(&out)
    }

    /// One-variable S-transform through the compositional inverse of the
    /// cumulant series; cached. Truncated one degree below the moment data.
    pub fn s_transform(&self) -> Result<&OneVarSeries> {
        if self.k != 1 {
            return Err(Error::domain("S-transform is one-variable only"));
        }
        if !self.is_normalized() {
            return Err(Error::domain("S-transform needs first moment 1"));
        }
        if let Some(found) = self.s_cache.get() {
            return Ok(found);
        }
        let r = onevar_from_series(self.r_transform());
        let inv = r.compositional_inverse()?;
        let s = inv.shift_down()?;
        let _ = self.s_cache.set(s);
        Ok(self.s_cache.get().expect("just set"))
    }

    /// Reciprocal of the S-transform.
    pub fn t_transform(&self) -> Result<OneVarSeries> {
        self.s_transform()?.reciprocal()
    }

    /// One-variable route to the chain-sum transform: `-z log S`.
    pub fn ls_via_s(&self) -> Result<OneVarSeries> {
        let s = self.s_transform()?;
        let log = s.log()?;
        Ok(log.shift_up(self.degree).scale(&ratio::int(-1)))
    }

    /// The distribution of the tuple `(a, a, .., a)` with `k` repetitions,
    /// built on cumulants: every word of length `n` receives the `n`-th
    /// cumulant of the one-variable input.
    pub fn repeated(base: &Distribution, k: usize) -> Result<Distribution> {
        if base.k != 1 {
            return Err(Error::domain("repeated tuple needs a one-variable input"));
        }
        if k == 0 {
            return Err(Error::domain("tuple size must be positive"));
        }
        let r1 = base.r_transform();
        let mut r = NcSeries::zero(k, base.degree)?;
        for n in 1..=base.degree {
            let c = r1.coeff(&Word::constant(1, n))?;
            if c.is_zero() {
                continue;
            }
            for w in Word::all_of_length(k, n) {
                r.set(w, c.clone())?;
            }
        }
        Distribution::from_r_transform(&r)
    }

    /// The one-variable distribution of the `i`-th coordinate.
    pub fn marginal(&self, letter: usize) -> Result<Distribution> {
        if letter == 0 || letter > self.k {
            return Err(Error::domain(format!(
                "letter {letter} outside 1..{}",
                self.k
            )));
        }
        let moments = (1..=self.degree).filter_map(|n| {
            let w = Word::constant(letter, n);
            let v = self.moments.get(&w)?.clone();
            Some((Word::constant(1, n), v))
        });
        Distribution::from_moments(1, self.degree, moments.collect::<Vec<_>>())
    }

    /// Freeness criterion: true iff every mixed coefficient of the
    /// chain-sum transform vanishes through the truncation degree.
    pub fn is_free(&self) -> Result<bool> {
        Ok(mixed_coefficients_vanish(self.ls_transform()?))
    }
}

#[derive(Serialize, Deserialize)]
struct MomentEntry {
    word: Word,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct DistributionRepr {
    k: usize,
    degree: usize,
    moments: Vec<MomentEntry>,
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = DistributionRepr {
            k: self.k,
            degree: self.degree,
            moments: self
                .moments
                .iter()
                .map(|(w, v)| MomentEntry {
                    word: w.clone(),
                    value: ratio::to_string(v),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DistributionRepr::deserialize(d)?;
        let mut moments = Vec::with_capacity(repr.moments.len());
        let mut seen = std::collections::BTreeSet::new();
        for entry in repr.moments {
            if !seen.insert(entry.word.clone()) {
                return Err(D::Error::custom(format!(
                    "duplicate word {} in moment table",
                    entry.word
                )));
            }
            let value = ratio::parse(&entry.value).map_err(D::Error::custom)?;
            moments.push((entry.word, value));
        }
        Distribution::from_moments(repr.k, repr.degree, moments).map_err(D::Error::custom)
    }
}

/// True when every stored word that mixes letters has zero coefficient.
pub fn mixed_coefficients_vanish(s: &NcSeries) -> bool {
    s.coeffs().iter().all(|(w, v)| w.is_pure() || v.is_zero())
}

/// The one-variable view of a series over a single letter.
pub fn onevar_from_series(s: &NcSeries) -> OneVarSeries {
    let mut out = OneVarSeries::zero(s.degree());
    for n in 1..=s.degree() {
        out.set(
            n,
            s.coeffs()
                .get(&Word::constant(1, n))
                .cloned()
                .unwrap_or_else(BigRational::zero),
        );
    }
    out
}

/// The one-letter series with the given one-variable coefficients
/// (the constant term is dropped; it must be zero).
pub fn series_from_onevar(f: &OneVarSeries) -> Result<NcSeries> {
    if !f.coeff(0).is_zero() {
        return Err(Error::domain("series must have zero constant term"));
    }
    let mut out = NcSeries::zero(1, f.degree().max(1))?;
    for n in 1..=f.degree() {
        out.set(Word::constant(1, n), f.coeff(n))?;
    }
    Ok(out)
}

fn moments_to_r_impl(d: &Distribution) -> Result<NcSeries> {
    let mut r = NcSeries::zero(d.k, d.degree)?;
    for n in 1..=d.degree {
        let partitions = nclat::enumerate_nc(n)?;
        for w in Word::all_of_length(d.k, n) {
            // the full-block term is the unknown; every other partition
            // multiplies coefficients of strictly shorter words
            let mut rest = BigRational::zero();
            for p in &partitions {
                if p.is_top() {
                    continue;
                }
                rest += r.partition_coefficient(&w, p)?;
            }
            let value = d.moment(&w)? - rest;
            r.set(w, value)?;
        }
    }
    Ok(r)
}

/// The moment functional determined by a cumulant series.
pub fn r_to_moments(r: &NcSeries) -> Result<Distribution> {
    Distribution::from_r_transform(r)
}

/// The free-cumulant series of a distribution.
pub fn moments_to_r(d: &Distribution) -> NcSeries {
    d.r_transform().clone()
}

fn chain_product(
    r: &NcSeries,
    w: &Word,
    steps: &[u32],
    partitions: &[NcPartition],
    memo: &mut [Option<BigRational>],
) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for &s in steps {
        let idx = s as usize;
        if memo[idx].is_none() {
            memo[idx] = Some(r.partition_coefficient(w, &partitions[idx])?);
        }
        let v = memo[idx].as_ref().expect("just filled");
        if v.is_zero() {
            return Ok(BigRational::zero());
        }
        acc *= v;
    }
    Ok(acc)
}

/// Chain-sum transform of a cumulant series whose linear part is 1:
/// the coefficient of each word of length `n >= 2` is the sum over all
/// strict bottom-to-top chains of the signed, length-weighted product of
/// partition coefficients along the chain steps.
pub fn ls_from_r(r: &NcSeries) -> Result<NcSeries> {
    if !r.has_unit_linear_part() {
        return Err(Error::domain(
            "chain-sum transform needs every linear coefficient equal to 1",
        ));
    }
    let mut out = NcSeries::zero(r.alphabet_size(), r.degree())?;
    for n in 2..=r.degree() {
        let index = nclat::chain_index(n)?;
        for w in Word::all_of_length(r.alphabet_size(), n) {
            let mut memo: Vec<Option<BigRational>> = vec![None; index.partitions.len()];
            let mut acc = BigRational::zero();
            for steps in &index.step_complements {
                let term = chain_product(r, &w, steps, &index.partitions, &mut memo)?;
                if term.is_zero() {
                    continue;
                }
                let len = steps.len() as i64;
                let sign = if steps.len() % 2 == 1 { 1 } else { -1 };
                acc += term * ratio::ratio(sign, len);
            }
            out.set(w, acc)?;
        }
    }
    Ok(out)
}

/// Inverse of [`ls_from_r`]: rebuilds the unique cumulant series with unit
/// linear part, one word length at a time. Every chain of two or more
/// steps only involves coefficients of strictly shorter words.
pub fn r_from_ls(ls: &NcSeries) -> Result<NcSeries> {
    for i in 1..=ls.alphabet_size() {
        if !ls.coeff(&Word::constant(i, 1))?.is_zero() {
            return Err(Error::domain(
                "chain-sum series must have zero linear coefficients",
            ));
        }
    }
    let mut r = NcSeries::zero(ls.alphabet_size(), ls.degree())?.with_unit_linear_part();
    for n in 2..=ls.degree() {
        let index = nclat::chain_index(n)?;
        for w in Word::all_of_length(ls.alphabet_size(), n) {
            let mut memo: Vec<Option<BigRational>> = vec![None; index.partitions.len()];
            let mut acc = ls.coeff(&w)?;
            for steps in &index.step_complements {
                if steps.len() < 2 {
                    continue;
                }
                let term = chain_product(&r, &w, steps, &index.partitions, &mut memo)?;
                if term.is_zero() {
                    continue;
                }
                let len = steps.len() as i64;
                let sign = if steps.len() % 2 == 1 { 1 } else { -1 };
                acc -= term * ratio::ratio(sign, len);
            }
            r.set(w, acc)?;
        }
    }
    Ok(r)
}

/// Moment-series route to the S-transform, used as an independent oracle:
/// `S(z) = ((1+z)/z) * M^{<-1>}(z)` where `M` is the moment series.
pub fn s_via_moment_series(d: &Distribution) -> Result<OneVarSeries> {
    if d.alphabet_size() != 1 {
        return Err(Error::domain("S-transform is one-variable only"));
    }
    if !d.is_normalized() {
        return Err(Error::domain("S-transform needs first moment 1"));
    }
    let mut m = OneVarSeries::zero(d.degree());
    for n in 1..=d.degree() {
        m.set(n, d.moment(&Word::constant(1, n))?);
    }
    let inv = m.compositional_inverse()?;
    let shifted = inv.shift_down()?;
    let mut one_plus_z = OneVarSeries::one(shifted.degree());
    if shifted.degree() >= 1 {
        one_plus_z.set(1, BigRational::one());
    }
    Ok(shifted.mul(&one_plus_z))
}

/// Cumulants from the reciprocal-S coefficients: the `n`-th cumulant is
/// the sum over non-crossing partitions of `n-1` points of the products
/// of the input coefficients by block size.
pub fn alpha_from_gamma(g: &OneVarSeries) -> Result<OneVarSeries> {
    if !g.coeff(0).is_one() {
        return Err(Error::domain("input must have constant term 1"));
    }
    let out_degree = g.degree() + 1;
    let mut out = OneVarSeries::zero(out_degree);
    if out_degree >= 1 {
        out.set(1, BigRational::one());
    }
    for n in 2..=out_degree {
        let mut acc = BigRational::zero();
        for p in nclat::enumerate_nc(n - 1)? {
            let mut term = BigRational::one();
            for b in p.blocks() {
                term *= g.coeff(b.len());
                if term.is_zero() {
                    break;
                }
            }
            acc += term;
        }
        out.set(n, acc);
    }
    Ok(out)
}
