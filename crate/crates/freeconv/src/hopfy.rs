//! A self-contained Hopf-algebra engine over the polynomial algebra whose
//! generators are indexed by words of length at least two.
//!
//! The comultiplication of a generator sums, over the non-crossing
//! partitions of the word's positions, the restriction monomial of each
//! partition paired against that of its complement. Everything downstream
//! (functional convolution, antipode, exp/log, character inverses) is
//! driven by terminating series in the convolution algebra, and is kept
//! deliberately independent of the chain-sum formulas so the two routes
//! can be checked against each other.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigRational, One, Zero};

use crate::error::Error;
use crate::nclat::{self, NcPartition};
use crate::ratio;
use crate::series::{NcSeries, Word};
use crate::Result;

/// A monomial in the generators: a multiset of words, each of length at
/// least two, kept sorted. The empty multiset is the unit. The degree of
/// a generator for a word `w` is `|w| - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YMonomial {
    words: Vec<Word>,
}

impl YMonomial {
    pub fn unit() -> Self {
        YMonomial { words: Vec::new() }
    }

    pub fn generator(w: Word) -> Result<Self> {
        if w.len() < 2 {
            return Err(Error::domain(format!(
                "generators are indexed by words of length >= 2, got {w}"
            )));
        }
        Ok(YMonomial { words: vec![w] })
    }

    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        if words.iter().any(|w| w.len() < 2) {
            return Err(Error::domain("every factor word must have length >= 2"));
        }
        words.sort();
        Ok(YMonomial { words })
    }

    /// The restriction monomial of a word along a partition of its
    /// positions: one generator factor per non-singleton block.
    pub fn from_restriction(w: &Word, p: &NcPartition) -> Result<Self> {
        if p.ground_size() != w.len() {
            return Err(Error::domain(format!(
                "partition of {} points against word of length {}",
                p.ground_size(),
                w.len()
            )));
        }
        let mut words = Vec::new();
        for b in p.blocks() {
            if b.len() >= 2 {
                words.push(w.restrict(b)?);
            }
        }
        YMonomial::new(words)
    }

    pub fn is_unit(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn degree(&self) -> usize {
        self.words.iter().map(|w| w.len() - 1).sum()
    }

    pub fn mul(&self, other: &YMonomial) -> YMonomial {
        let mut words = self.words.clone();
        words.extend(other.words.iter().cloned());
        words.sort();
        YMonomial { words }
    }
}

impl Ord for YMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for YMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "1");
        }
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "Y{w}")?;
        }
        Ok(())
    }
}

/// A finite linear combination of monomials; zero coefficients are absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct YElement {
    terms: BTreeMap<YMonomial, BigRational>,
}

impl YElement {
    pub fn zero() -> Self {
        YElement::default()
    }

    pub fn one() -> Self {
        YElement::from_monomial(YMonomial::unit())
    }

    pub fn from_monomial(m: YMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, BigRational::one());
        YElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<YMonomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: YMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &YElement) -> YElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> YElement {
        if c.is_zero() {
            return YElement::zero();
        }
        YElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &YElement) -> YElement {
        let mut out = YElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// A sparse element of the tensor square.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct YTensor {
    terms: BTreeMap<(YMonomial, YMonomial), BigRational>,
}

impl YTensor {
    pub fn zero() -> Self {
        YTensor::default()
    }

    pub fn unit() -> Self {
        let mut t = YTensor::zero();
        t.add_term(YMonomial::unit(), YMonomial::unit(), BigRational::one());
        t
    }

    pub fn terms(&self) -> &BTreeMap<(YMonomial, YMonomial), BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, a: YMonomial, b: YMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &YTensor) -> YTensor {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> YTensor {
        if c.is_zero() {
            return YTensor::zero();
        }
        YTensor {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Componentwise product in the tensor square.
    pub fn mul(&self, other: &YTensor) -> YTensor {
        let mut out = YTensor::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.mul(a2), b1.mul(b2), c1 * c2);
            }
        }
        out
    }

    /// Swaps the tensor legs.
    pub fn flip(&self) -> YTensor {
        YTensor {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| ((b.clone(), a.clone()), c.clone()))
                .collect(),
        }
    }
}

/// A sparse element of an `l`-fold tensor power, keyed by monomial tuples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct YTensorChain {
    terms: BTreeMap<Vec<YMonomial>, BigRational>,
}

impl YTensorChain {
    pub fn terms(&self) -> &BTreeMap<Vec<YMonomial>, BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, key: Vec<YMonomial>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }
}

/// A linear functional stored by its values on the monomial basis up to a
/// degree bound. The value on the unit monomial is always stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YFunctional {
    k: usize,
    degree: usize,
    values: BTreeMap<YMonomial, BigRational>,
}

impl YFunctional {
    pub fn new(
        k: usize,
        degree: usize,
        values: impl IntoIterator<Item = (YMonomial, BigRational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(YMonomial::unit(), BigRational::zero());
        for (m, v) in values {
            if m.degree() > degree {
                return Err(Error::domain(format!(
                    "monomial {m} beyond degree bound {degree}"
                )));
            }
            if m.words().iter().any(|w| w.max_letter() > k) {
                return Err(Error::domain(format!(
                    "monomial {m} uses letters beyond alphabet size {k}"
                )));
            }
            if m.is_unit() || !v.is_zero() {
                map.insert(m, v);
            }
        }
        Ok(YFunctional {
            k,
            degree,
            values: map,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<YMonomial, BigRational> {
        &self.values
    }

    pub fn unit_value(&self) -> BigRational {
        self.values
            .get(&YMonomial::unit())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval_monomial(&self, m: &YMonomial) -> Result<BigRational> {
        if m.degree() > self.degree {
            return Err(Error::domain(format!(
                "monomial {m} beyond degree bound {}",
                self.degree
            )));
        }
        Ok(self
            .values
            .get(m)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    pub fn eval_element(&self, e: &YElement) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in e.terms() {
            acc += self.eval_monomial(m)? * c;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &YFunctional) -> Result<YFunctional> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, v) in &other.values {
            let entry = out
                .values
                .entry(m.clone())
                .or_insert_with(BigRational::zero);
            *entry += v;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &YFunctional) -> Result<YFunctional> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> YFunctional {
        let mut out = YFunctional {
            k: self.k,
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        };
        out.prune();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    fn prune(&mut self) {
        self.values.retain(|m, v| m.is_unit() || !v.is_zero());
        self.values
            .entry(YMonomial::unit())
            .or_insert_with(BigRational::zero);
    }

    fn check_compatible(&self, other: &YFunctional) -> Result<()> {
        if self.k != other.k || self.degree != other.degree {
            return Err(Error::domain(format!(
                "functional mismatch: ({}, {}) vs ({}, {})",
                self.k, self.degree, other.k, other.degree
            )));
        }
        Ok(())
    }
}

/// The Hopf engine for one alphabet size, owning the comultiplication,
/// basis and antipode caches. The caches sit behind a mutex, so shared
/// references can be used from multiple threads.
pub struct YAlgebra {
    k: usize,
    delta_cache: Mutex<HashMap<YMonomial, Arc<YTensor>>>,
    basis_cache: Mutex<HashMap<usize, Arc<Vec<YMonomial>>>>,
    antipode_cache: Mutex<HashMap<usize, Arc<HashMap<YMonomial, YElement>>>>,
}

/// A process-wide engine per alphabet size, so the comultiplication and
/// antipode caches are shared across call sites.
pub fn shared(k: usize) -> &'static YAlgebra {
    static SHARED: OnceLock<Mutex<HashMap<usize, &'static YAlgebra>>> = OnceLock::new();
    let map = SHARED.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().unwrap();
    guard
        .entry(k)
        .or_insert_with(|| Box::leak(Box::new(YAlgebra::new(k))))
}

impl YAlgebra {
    pub fn new(k: usize) -> Self {
        YAlgebra {
            k,
            delta_cache: Mutex::new(HashMap::new()),
            basis_cache: Mutex::new(HashMap::new()),
            antipode_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    /// Conventional degree bound for stored functionals.
    pub fn default_degree(k: usize) -> usize {
        if k == 1 {
            7
        } else {
            5
        }
    }

    /// Comultiplication of a generator: the sum over non-crossing
    /// partitions of restriction monomials paired with their complements.
    pub fn delta_generator(&self, w: &Word) -> Result<YTensor> {
        if w.len() < 2 {
            return Err(Error::domain(format!(
                "comultiplication of a generator needs |w| >= 2, got {w}"
            )));
        }
        if w.max_letter() > self.k {
            return Err(Error::domain(format!(
                "word {w} uses letters beyond alphabet size {}",
                self.k
            )));
        }
        let n = w.len();
        let mut out = YTensor::zero();
        for p in nclat::enumerate_nc(n)? {
            let left = YMonomial::from_restriction(w, &p)?;
            let right = YMonomial::from_restriction(w, &p.kreweras())?;
            out.add_term(left, right, BigRational::one());
        }
        Ok(out)
    }

    /// Direct formula for the comultiplication of a restriction monomial:
    /// the sum over partitions below `rho` paired with relative
    /// complements inside `rho`.
    pub fn delta_restriction(&self, w: &Word, rho: &NcPartition) -> Result<YTensor> {
        let mut out = YTensor::zero();
        for p in nclat::enumerate_nc(w.len())? {
            if !p.leq(rho)? {
                continue;
            }
            let left = YMonomial::from_restriction(w, &p)?;
            let right = YMonomial::from_restriction(w, &p.relative_kreweras(rho)?)?;
            out.add_term(left, right, BigRational::one());
        }
        Ok(out)
    }

    /// Comultiplication of a monomial (multiplicative extension), cached.
    pub fn delta_monomial(&self, m: &YMonomial) -> Result<Arc<YTensor>> {
        {
            let guard = self.delta_cache.lock().unwrap();
            if let Some(found) = guard.get(m) {
                return Ok(found.clone());
            }
        }
        let mut acc = YTensor::unit();
        for w in m.words() {
            acc = acc.mul(&self.delta_generator(w)?);
        }
        let acc = Arc::new(acc);
        let mut guard = self.delta_cache.lock().unwrap();
        Ok(guard.entry(m.clone()).or_insert(acc).clone())
    }

    /// Linear extension of the comultiplication.
    pub fn delta_element(&self, e: &YElement) -> Result<YTensor> {
        let mut out = YTensor::zero();
        for (m, c) in e.terms() {
            out = out.add(&self.delta_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// The `l`-fold iterated comultiplication, as a tensor of order `l`.
    /// `l = 1` is the identity embedding.
    pub fn delta_iter(&self, e: &YElement, l: usize) -> Result<YTensorChain> {
        if l == 0 {
            return Err(Error::domain("iteration count must be positive"));
        }
        let mut acc = YTensorChain::default();
        for (m, c) in e.terms() {
            acc.add_term(vec![m.clone()], c.clone());
        }
        for _ in 2..=l {
            let mut next = YTensorChain::default();
            for (key, c) in &acc.terms {
                let head = &key[0];
                for ((a, b), d) in self.delta_monomial(head)?.terms() {
                    let mut new_key = Vec::with_capacity(key.len() + 1);
                    new_key.push(a.clone());
                    new_key.push(b.clone());
                    new_key.extend(key[1..].iter().cloned());
                    next.add_term(new_key, c * d);
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// All basis monomials of degree at most `max_degree`, cached.
    pub fn basis(&self, max_degree: usize) -> Arc<Vec<YMonomial>> {
        {
            let guard = self.basis_cache.lock().unwrap();
            if let Some(found) = guard.get(&max_degree) {
                return found.clone();
            }
        }
        let mut generators = Vec::new();
        for len in 2..=max_degree + 1 {
            generators.extend(Word::all_of_length(self.k, len));
        }
        let mut out = Vec::new();
        let mut current: Vec<Word> = Vec::new();
        fn rec(
            generators: &[Word],
            start: usize,
            budget: usize,
            current: &mut Vec<Word>,
            out: &mut Vec<YMonomial>,
        ) {
            out.push(YMonomial::new(current.clone()).expect("factors are generators"));
            for (i, g) in generators.iter().enumerate().skip(start) {
                let d = g.len() - 1;
                if d > budget {
                    continue;
                }
                current.push(g.clone());
                rec(generators, i, budget - d, current, out);
                current.pop();
            }
        }
        rec(&generators, 0, max_degree, &mut current, &mut out);
        out.sort();
        let out = Arc::new(out);
        let mut guard = self.basis_cache.lock().unwrap();
        guard.entry(max_degree).or_insert(out).clone()
    }

    /// The counit as a stored functional: 1 on the unit, 0 elsewhere.
    pub fn counit(&self, degree: usize) -> YFunctional {
        YFunctional::new(
            self.k,
            degree,
            vec![(YMonomial::unit(), BigRational::one())],
        )
        .expect("unit monomial fits any bound")
    }

    /// Convolution of functionals through the comultiplication.
    pub fn convolve(&self, f: &YFunctional, g: &YFunctional) -> Result<YFunctional> {
        f.check_compatible(g)?;
        if f.alphabet_size() != self.k {
            return Err(Error::domain("functional alphabet differs from engine"));
        }
        let basis = self.basis(f.degree());
        let mut values = Vec::new();
        for m in basis.iter() {
            let mut acc = BigRational::zero();
            for ((a, b), c) in self.delta_monomial(m)?.terms() {
                let left = f.eval_monomial(a)?;
                if left.is_zero() {
                    continue;
                }
                acc += left * g.eval_monomial(b)? * c;
            }
            if !acc.is_zero() {
                values.push((m.clone(), acc));
            }
        }
        YFunctional::new(self.k, f.degree(), values)
    }

    /// Multiplicative functional determined by the coefficients of a
    /// cumulant series with unit linear part: the value on a generator is
    /// the coefficient of its word, extended to products.
    pub fn character_from_r(&self, r: &NcSeries) -> Result<YFunctional> {
        if r.alphabet_size() != self.k {
            return Err(Error::domain("series alphabet differs from engine"));
        }
        if !r.has_unit_linear_part() {
            return Err(Error::domain(
                "character needs every linear coefficient equal to 1",
            ));
        }
        let degree = r.degree().saturating_sub(1);
        let basis = self.basis(degree);
        let mut values = vec![(YMonomial::unit(), BigRational::one())];
        for m in basis.iter() {
            if m.is_unit() {
                continue;
            }
            let mut acc = BigRational::one();
            for w in m.words() {
                acc *= r.coeff(w)?;
                if acc.is_zero() {
                    break;
                }
            }
            if !acc.is_zero() {
                values.push((m.clone(), acc));
            }
        }
        YFunctional::new(self.k, degree, values)
    }

    /// Whether the stored values are multiplicative over the basis.
    pub fn is_character(&self, f: &YFunctional) -> bool {
        if !f.unit_value().is_one() {
            return false;
        }
        let basis = self.basis(f.degree());
        basis.iter().all(|m| {
            let mut acc = BigRational::one();
            for w in m.words() {
                let g = YMonomial::generator(w.clone()).expect("basis factor");
                match f.eval_monomial(&g) {
                    Ok(v) => acc *= v,
                    Err(_) => return false,
                }
            }
            f.eval_monomial(m).map(|v| v == acc).unwrap_or(false)
        })
    }

    /// Convolution power.
    pub fn convolution_power(&self, f: &YFunctional, l: usize) -> Result<YFunctional> {
        let mut out = self.counit(f.degree());
        for _ in 0..l {
            out = self.convolve(&out, f)?;
        }
        Ok(out)
    }

    /// Logarithm of a unit-valued functional: the alternating power sum
    /// terminates because shifted powers vanish in low degree.
    pub fn log_functional(&self, e: &YFunctional) -> Result<YFunctional> {
        if !e.unit_value().is_one() {
            return Err(Error::domain("log needs value 1 on the unit"));
        }
        let u = self.counit(e.degree()).sub(e)?;
        let mut out = YFunctional::new(self.k, e.degree(), vec![])?;
        let mut pow = self.counit(e.degree());
        for l in 1..=e.degree() {
            pow = self.convolve(&pow, &u)?;
            if pow.is_zero() {
                break;
            }
            out = out.sub(&pow.scale(&ratio::ratio(1, l as i64)))?;
        }
        Ok(out)
    }

    /// Exponential of a functional vanishing on the unit; inverse of
    /// [`log_functional`] up to the degree bound.
    ///
    /// [`log_functional`]: YAlgebra::log_functional
    pub fn exp_functional(&self, x: &YFunctional) -> Result<YFunctional> {
        if !x.unit_value().is_zero() {
            return Err(Error::domain("exp needs value 0 on the unit"));
        }
        let mut out = self.counit(x.degree());
        let mut pow = self.counit(x.degree());
        let mut factorial = BigRational::one();
        for l in 1..=x.degree() {
            pow = self.convolve(&pow, x)?;
            if pow.is_zero() {
                break;
            }
            factorial *= ratio::int(l as i64);
            out = out.add(&pow.scale(&(BigRational::one() / &factorial)))?;
        }
        Ok(out)
    }

    /// Convolution inverse of a character via the geometric series.
    pub fn character_inverse(&self, e: &YFunctional) -> Result<YFunctional> {
        if !self.is_character(e) {
            return Err(Error::domain(
                "inverse formula needs a multiplicative functional",
            ));
        }
        let u = self.counit(e.degree()).sub(e)?;
        let mut out = self.counit(e.degree());
        let mut pow = self.counit(e.degree());
        for _ in 1..=e.degree() {
            pow = self.convolve(&pow, &u)?;
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow)?;
        }
        Ok(out)
    }

    /// The antipode table on the basis up to `degree`, cached: the
    /// geometric series for the convolution inverse of the identity map.
    pub fn antipode_table(&self, degree: usize) -> Result<Arc<HashMap<YMonomial, YElement>>> {
        {
            let guard = self.antipode_cache.lock().unwrap();
            if let Some(found) = guard.get(&degree) {
                return Ok(found.clone());
            }
        }
        let basis = self.basis(degree);
        // u = counit - identity, as a basis-indexed map into the algebra
        let u: HashMap<YMonomial, YElement> = basis
            .iter()
            .map(|m| {
                let mut e = YElement::from_monomial(m.clone()).scale(&-BigRational::one());
                if m.is_unit() {
                    e.add_term(YMonomial::unit(), BigRational::one());
                }
                (m.clone(), e)
            })
            .collect();
        let mut table: HashMap<YMonomial, YElement> = basis
            .iter()
            .map(|m| {
                let s = if m.is_unit() {
                    YElement::one()
                } else {
                    YElement::zero()
                };
                (m.clone(), s)
            })
            .collect();
        let mut pow = u.clone();
        for _ in 1..=degree {
            for m in basis.iter() {
                let acc = table.get_mut(m).expect("basis key");
                *acc = acc.add(&pow[m]);
            }
            // next convolution power: (pow * u)(m) = sum over the
            // comultiplication of pow(left) * u(right)
            let mut next: HashMap<YMonomial, YElement> = HashMap::new();
            let mut all_zero = true;
            for m in basis.iter() {
                let mut acc = YElement::zero();
                for ((a, b), c) in self.delta_monomial(m)?.terms() {
                    let left = &pow[a];
                    if left.is_zero() {
                        continue;
                    }
                    let right = &u[b];
                    if right.is_zero() {
                        continue;
                    }
                    acc = acc.add(&left.mul(right).scale(c));
                }
                if !acc.is_zero() {
                    all_zero = false;
                }
                next.insert(m.clone(), acc);
            }
            pow = next;
            if all_zero {
                break;
            }
        }
        let table = Arc::new(table);
        let mut guard = self.antipode_cache.lock().unwrap();
        Ok(guard.entry(degree).or_insert(table).clone())
    }

    /// The antipode of an element, by linear extension of the basis table.
    pub fn antipode(&self, e: &YElement) -> Result<YElement> {
        let degree = e.max_degree();
        let table = self.antipode_table(degree)?;
        let mut out = YElement::zero();
        for (m, c) in e.terms() {
            let s = table
                .get(m)
                .ok_or_else(|| Error::invariant(format!("monomial {m} missing from table")))?;
            out = out.add(&s.scale(c));
        }
        Ok(out)
    }

    /// Composition with the antipode: the standard route to character
    /// inverses.
    pub fn compose_with_antipode(&self, f: &YFunctional) -> Result<YFunctional> {
        let table = self.antipode_table(f.degree())?;
        let basis = self.basis(f.degree());
        let mut values = Vec::new();
        for m in basis.iter() {
            let v = f.eval_element(&table[m])?;
            if !v.is_zero() {
                values.push((m.clone(), v));
            }
        }
        YFunctional::new(self.k, f.degree(), values)
    }

    /// Debug dump of the comultiplication tables on the basis through
    /// `max_degree`, as deterministic JSON keyed by monomial, for fixture
    /// diffing.
    pub fn delta_table_json(&self, max_degree: usize) -> Result<String> {
        let mut table = serde_json::Map::new();
        for m in self.basis(max_degree).iter() {
            let delta = self.delta_monomial(m)?;
            let rows: Vec<serde_json::Value> = delta
                .terms()
                .iter()
                .map(|((a, b), c)| {
                    serde_json::json!([a.to_string(), b.to_string(), ratio::to_string(c)])
                })
                .collect();
            table.insert(m.to_string(), serde_json::Value::Array(rows));
        }
        serde_json::to_string_pretty(&serde_json::Value::Object(table))
            .map_err(|e| Error::invariant(format!("dump failed: {e}")))
    }

    /// Searches for a generator whose comultiplication is not symmetric
    /// under the tensor flip; returns the first witness word found.
    pub fn cocommutativity_witness(&self, max_len: usize) -> Result<Option<Word>> {
        for n in 2..=max_len {
            for w in Word::all_of_length(self.k, n) {
                let d = self.delta_generator(&w)?;
                if d.flip() != d {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    /// One-variable cocommutativity check through the given degree bound.
    pub fn is_cocommutative_k1(&self, degree: usize) -> Result<bool> {
        if self.k != 1 {
            return Err(Error::domain("check applies to the one-letter engine"));
        }
        Ok(self.cocommutativity_witness(degree + 1)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::freeprob::Distribution;
    use crate::ratio::int;

    fn gen(letters: &[usize]) -> YMonomial {
        YMonomial::generator(Word::new(letters.to_vec())).unwrap()
    }

    #[test]
    fn monomial_degree_and_order() {
        assert_eq!(YMonomial::unit().degree(), 0);
        assert_eq!(gen(&[1, 1]).degree(), 1);
        assert_eq!(gen(&[1, 2, 1]).degree(), 2);
        let m = gen(&[1, 2, 1]).mul(&gen(&[1, 1]));
        assert_eq!(m.degree(), 3);
        assert!(YMonomial::unit() < gen(&[1, 1]));
        assert!(gen(&[1, 1]) < gen(&[1, 1]).mul(&gen(&[1, 1])));
        assert!(YMonomial::generator(Word::new(vec![1])).is_err());
    }

    #[test]
    fn delta_of_length_two_generator() {
        let alg = YAlgebra::new(2);
        let w = Word::new(vec![1, 2]);
        let d = alg.delta_generator(&w).unwrap();
        let mut expected = YTensor::zero();
        expected.add_term(gen(&[1, 2]), YMonomial::unit(), int(1));
        expected.add_term(YMonomial::unit(), gen(&[1, 2]), int(1));
        assert_eq!(d, expected);
        assert!(alg.delta_generator(&Word::new(vec![1])).is_err());
    }

    #[test]
    fn delta_of_y3_collects_middle_terms() {
        let alg = YAlgebra::new(1);
        let d = alg.delta_generator(&Word::constant(1, 3)).unwrap();
        let mut expected = YTensor::zero();
        expected.add_term(gen(&[1, 1, 1]), YMonomial::unit(), int(1));
        expected.add_term(YMonomial::unit(), gen(&[1, 1, 1]), int(1));
        expected.add_term(gen(&[1, 1]), gen(&[1, 1]), int(3));
        assert_eq!(d, expected);
    }

    #[test]
    fn delta_of_unit() {
        let alg = YAlgebra::new(1);
        assert_eq!(
            *alg.delta_monomial(&YMonomial::unit()).unwrap(),
            YTensor::unit()
        );
    }

    #[test]
    fn counit_law_on_generators() {
        let alg = YAlgebra::new(2);
        let eps = alg.counit(4);
        for n in 2..=4usize {
            for w in Word::all_of_length(2, n) {
                let d = alg.delta_generator(&w).unwrap();
                // contract each leg with the counit
                let mut left = YElement::zero();
                let mut right = YElement::zero();
                for ((a, b), c) in d.terms() {
                    left = left.add(
                        &YElement::from_monomial(b.clone())
                            .scale(&(eps.eval_monomial(a).unwrap() * c)),
                    );
                    right = right.add(
                        &YElement::from_monomial(a.clone())
                            .scale(&(eps.eval_monomial(b).unwrap() * c)),
                    );
                }
                let expected = YElement::from_monomial(YMonomial::generator(w.clone()).unwrap());
                assert_eq!(left, expected, "left contraction of {w}");
                assert_eq!(right, expected, "right contraction of {w}");
            }
        }
    }

    #[test]
    fn delta_restriction_agrees_with_multiplicative_route() {
        let alg = YAlgebra::new(2);
        let w = Word::new(vec![1, 2, 2, 1]);
        for rho in nclat::enumerate_nc(4).unwrap() {
            let direct = alg.delta_restriction(&w, &rho).unwrap();
            let m = YMonomial::from_restriction(&w, &rho).unwrap();
            let multiplicative = alg.delta_monomial(&m).unwrap();
            assert_eq!(direct, *multiplicative, "partition {rho}");
        }
    }

    #[test]
    fn delta_is_an_algebra_homomorphism() {
        let alg = YAlgebra::new(2);
        let u = YElement::from_monomial(gen(&[1, 2]));
        let v = YElement::from_monomial(gen(&[2, 1, 1]));
        let lhs = alg.delta_element(&u.mul(&v)).unwrap();
        let rhs = alg
            .delta_element(&u)
            .unwrap()
            .mul(&alg.delta_element(&v).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coassociativity_small() {
        let alg = YAlgebra::new(2);
        for n in 2..=4usize {
            for w in Word::all_of_length(2, n) {
                let m = YElement::from_monomial(YMonomial::generator(w.clone()).unwrap());
                let left = alg.delta_iter(&m, 3).unwrap();
                // (id x delta) o delta: expand the second leg instead
                let mut right = YTensorChain::default();
                for ((a, b), c) in alg.delta_element(&m).unwrap().terms() {
                    for ((x, y), d) in alg.delta_monomial(b).unwrap().terms() {
                        right.add_term(vec![a.clone(), x.clone(), y.clone()], c * d);
                    }
                }
                assert_eq!(left, right, "word {w}");
            }
        }
    }

    #[test]
    fn delta_iter_identities() {
        let alg = YAlgebra::new(1);
        let y4 = YElement::from_monomial(gen(&[1, 1, 1, 1]));
        // l = 1 is the identity embedding
        let t1 = alg.delta_iter(&y4, 1).unwrap();
        assert_eq!(t1.terms().len(), 1);
        // l = 2 matches the comultiplication
        let t2 = alg.delta_iter(&y4, 2).unwrap();
        let d = alg.delta_element(&y4).unwrap();
        assert_eq!(t2.terms().len(), d.terms().len());
        for ((a, b), c) in d.terms() {
            assert_eq!(t2.terms().get(&vec![a.clone(), b.clone()]), Some(c));
        }
        assert!(alg.delta_iter(&y4, 0).is_err());
    }

    #[test]
    fn delta_iter_matches_multichain_sum() {
        let alg = YAlgebra::new(2);
        for n in 2..=4usize {
            let w = Word::new((0..n).map(|i| 1 + (i % 2)).collect());
            let e = YElement::from_monomial(YMonomial::generator(w.clone()).unwrap());
            for l in 1..=3usize {
                let got = alg.delta_iter(&e, l).unwrap();
                let mut expected = YTensorChain::default();
                for mc in nclat::enumerate_multichains(n, l).unwrap() {
                    let key: Vec<YMonomial> = mc
                        .step_complements()
                        .unwrap()
                        .iter()
                        .map(|p| YMonomial::from_restriction(&w, p).unwrap())
                        .collect();
                    expected.add_term(key, int(1));
                }
                assert_eq!(got, expected, "word {w}, l = {l}");
            }
        }
    }

    #[test]
    fn grading_is_respected() {
        let alg = YAlgebra::new(2);
        for n in 2..=5usize {
            let w = Word::new((0..n).map(|i| 1 + (i + 1) % 2).collect());
            let d = alg.delta_generator(&w).unwrap();
            for (a, b) in d.terms().keys() {
                assert_eq!(a.degree() + b.degree(), n - 1);
            }
        }
    }

    #[test]
    fn counit_is_convolution_unit() {
        let alg = YAlgebra::new(2);
        let mut rng = fixtures::SplitMix64::new(0xbead);
        let r = fixtures::random_sparse_r(2, 4, &mut rng);
        let chi = alg.character_from_r(&r).unwrap();
        let eps = alg.counit(chi.degree());
        assert_eq!(alg.convolve(&chi, &eps).unwrap(), chi);
        assert_eq!(alg.convolve(&eps, &chi).unwrap(), chi);
    }

    #[test]
    fn triple_convolution_matches_iterated_coproduct() {
        // ((f g) h)(m) must equal the direct contraction of the 3-fold
        // coproduct against f x g x h
        let alg = YAlgebra::new(2);
        let mut rng = fixtures::SplitMix64::new(0xbeef);
        let f = alg
            .character_from_r(&fixtures::random_sparse_r(2, 4, &mut rng))
            .unwrap();
        let g = alg
            .log_functional(
                &alg.character_from_r(&fixtures::random_sparse_r(2, 4, &mut rng))
                    .unwrap(),
            )
            .unwrap();
        let h = alg
            .character_from_r(&fixtures::random_sparse_r(2, 4, &mut rng))
            .unwrap();
        let nested = alg.convolve(&alg.convolve(&f, &g).unwrap(), &h).unwrap();
        for m in alg.basis(3).iter() {
            let mut direct = int(0);
            let triple = alg
                .delta_iter(&YElement::from_monomial(m.clone()), 3)
                .unwrap();
            for (key, c) in triple.terms() {
                let x = f.eval_monomial(&key[0]).unwrap();
                if x.is_zero() {
                    continue;
                }
                let y = g.eval_monomial(&key[1]).unwrap();
                if y.is_zero() {
                    continue;
                }
                direct += x * y * h.eval_monomial(&key[2]).unwrap() * c;
            }
            assert_eq!(nested.eval_monomial(m).unwrap(), direct, "monomial {m}");
        }
    }

    #[test]
    fn convolution_of_characters_matches_partition_pairing() {
        let alg = YAlgebra::new(2);
        let mut rng = fixtures::SplitMix64::new(0xcafe);
        let ra = fixtures::random_sparse_r(2, 4, &mut rng);
        let rb = fixtures::random_sparse_r(2, 4, &mut rng);
        let fa = alg.character_from_r(&ra).unwrap();
        let fb = alg.character_from_r(&rb).unwrap();
        let conv = alg.convolve(&fa, &fb).unwrap();
        for n in 2..=4usize {
            for w in Word::all_of_length(2, n) {
                let mut expected = int(0);
                for p in nclat::enumerate_nc(n).unwrap() {
                    expected += ra.partition_coefficient(&w, &p).unwrap()
                        * rb.partition_coefficient(&w, &p.kreweras()).unwrap();
                }
                let got = conv
                    .eval_monomial(&YMonomial::generator(w.clone()).unwrap())
                    .unwrap();
                assert_eq!(got, expected, "word {w}");
            }
        }
        // characters are closed under convolution
        assert!(alg.is_character(&conv));
    }

    #[test]
    fn character_group_matches_convolution_product() {
        let alg = YAlgebra::new(2);
        let mut rng = fixtures::SplitMix64::new(0xdead);
        let a = fixtures::random_distribution(2, 4, &mut rng);
        let b = fixtures::random_distribution(2, 4, &mut rng);
        let prod = a.boxtimes(&b).unwrap();
        let lhs = alg.character_from_r(prod.r_transform()).unwrap();
        let rhs = alg
            .convolve(
                &alg.character_from_r(a.r_transform()).unwrap(),
                &alg.character_from_r(b.r_transform()).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn character_of_unit_distribution_is_counit() {
        let alg = YAlgebra::new(2);
        let unit = Distribution::boxtimes_unit(2, 4);
        let chi = alg.character_from_r(unit.r_transform()).unwrap();
        assert_eq!(chi, alg.counit(3));
        let fp = Distribution::free_poisson(5);
        let alg1 = YAlgebra::new(1);
        let chi = alg1.character_from_r(fp.r_transform()).unwrap();
        for n in 2..=5 {
            assert_eq!(
                chi.eval_monomial(&gen(&vec![1; n])).unwrap(),
                int(1),
                "generator of length {n}"
            );
        }
    }

    #[test]
    fn log_of_counit_is_zero() {
        let alg = YAlgebra::new(1);
        let eps = alg.counit(5);
        assert!(alg.log_functional(&eps).unwrap().is_zero());
    }

    #[test]
    fn log_vanishes_on_products() {
        let alg = YAlgebra::new(2);
        let mut rng = fixtures::SplitMix64::new(0xf00d);
        let r = fixtures::random_sparse_r(2, 5, &mut rng);
        let chi = alg.character_from_r(&r).unwrap();
        let log = alg.log_functional(&chi).unwrap();
        for m in alg.basis(log.degree()).iter() {
            if m.words().len() >= 2 {
                assert_eq!(log.eval_monomial(m).unwrap(), int(0), "monomial {m}");
            }
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let alg = YAlgebra::new(2);
        let mut rng = fixtures::SplitMix64::new(0xf17e);
        let r = fixtures::random_sparse_r(2, 4, &mut rng);
        let chi = alg.character_from_r(&r).unwrap();
        let log = alg.log_functional(&chi).unwrap();
        assert_eq!(alg.exp_functional(&log).unwrap(), chi);
        assert_eq!(
            alg.exp_functional(&log.scale(&int(0))).unwrap(),
            alg.counit(3)
        );
        assert!(alg.exp_functional(&chi).is_err());
        assert!(alg.log_functional(&log).is_err());
    }

    #[test]
    fn exp_is_additive_on_commuting_functionals() {
        // one-variable logs always commute
        let alg = YAlgebra::new(1);
        let mut rng = fixtures::SplitMix64::new(0xfade);
        let x1 = alg
            .log_functional(
                &alg.character_from_r(&fixtures::random_sparse_r(1, 6, &mut rng))
                    .unwrap(),
            )
            .unwrap();
        let x2 = alg
            .log_functional(
                &alg.character_from_r(&fixtures::random_sparse_r(1, 6, &mut rng))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(
            alg.convolve(&x1, &x2).unwrap(),
            alg.convolve(&x2, &x1).unwrap()
        );
        let lhs = alg.exp_functional(&x1.add(&x2).unwrap()).unwrap();
        let rhs = alg
            .convolve(
                &alg.exp_functional(&x1).unwrap(),
                &alg.exp_functional(&x2).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_basics() {
        let alg = YAlgebra::new(2);
        assert_eq!(alg.antipode(&YElement::one()).unwrap(), YElement::one());
        for w in Word::all_of_length(2, 2) {
            let m = YElement::from_monomial(YMonomial::generator(w).unwrap());
            assert_eq!(alg.antipode(&m).unwrap(), m.scale(&int(-1)));
        }
    }

    #[test]
    fn antipode_convolves_to_counit() {
        let alg = YAlgebra::new(2);
        let table = alg.antipode_table(4).unwrap();
        for m in alg.basis(4).iter() {
            // (S * id)(m) = sum S(a) * b over the comultiplication
            let mut acc = YElement::zero();
            for ((a, b), c) in alg.delta_monomial(m).unwrap().terms() {
                acc = acc.add(&table[a].mul(&YElement::from_monomial(b.clone())).scale(c));
            }
            let expected = if m.is_unit() {
                YElement::one()
            } else {
                YElement::zero()
            };
            assert_eq!(acc, expected, "monomial {m}");
            // and on the other side
            let mut acc = YElement::zero();
            for ((a, b), c) in alg.delta_monomial(m).unwrap().terms() {
                acc = acc.add(&YElement::from_monomial(a.clone()).mul(&table[b]).scale(c));
            }
            assert_eq!(acc, expected, "monomial {m} (right)");
        }
    }

    #[test]
    fn antipode_is_multiplicative_here() {
        // the algebra is commutative, so the antipode is a homomorphism
        let alg = YAlgebra::new(2);
        let p = YElement::from_monomial(gen(&[1, 2]));
        let q = YElement::from_monomial(gen(&[2, 2]));
        assert_eq!(
            alg.antipode(&p.mul(&q)).unwrap(),
            alg.antipode(&p).unwrap().mul(&alg.antipode(&q).unwrap())
        );
    }

    #[test]
    fn character_inverse_routes_agree() {
        let alg = YAlgebra::new(1);
        let fp = Distribution::free_poisson(6);
        let chi = alg.character_from_r(fp.r_transform()).unwrap();
        let inv = alg.character_inverse(&chi).unwrap();
        assert_eq!(inv.eval_monomial(&gen(&[1, 1])).unwrap(), int(-1));
        assert_eq!(inv.eval_monomial(&gen(&[1, 1, 1])).unwrap(), int(2));
        // convolving back gives the counit
        assert_eq!(alg.convolve(&chi, &inv).unwrap(), alg.counit(5));
        assert_eq!(alg.convolve(&inv, &chi).unwrap(), alg.counit(5));
        // composing with the antipode is the same inverse
        assert_eq!(alg.compose_with_antipode(&chi).unwrap(), inv);
        // counit is self-inverse
        let eps = alg.counit(5);
        assert_eq!(alg.character_inverse(&eps).unwrap(), eps);
        // non-multiplicative input is rejected
        let log = alg.log_functional(&chi).unwrap();
        assert!(alg.character_inverse(&log).is_err());
    }

    #[test]
    fn power_vanishing_branches() {
        let alg = YAlgebra::new(1);
        let mut rng = fixtures::SplitMix64::new(0x1dea);
        let r = fixtures::random_sparse_r(1, 5, &mut rng);
        let chi = alg.character_from_r(&r).unwrap();
        let u = alg.counit(4).sub(&chi).unwrap();
        for n in 2..=5usize {
            let yw = gen(&vec![1; n]);
            for l in 1..n {
                // equals the sum over length-l chains of the step products
                let mut expected = int(0);
                for c in nclat::enumerate_chains(n).unwrap() {
                    if c.len() != l {
                        continue;
                    }
                    expected += r
                        .multichain_coefficient(&Word::constant(1, n), c.as_multichain())
                        .unwrap();
                }
                let got = alg
                    .convolution_power(&u, l)
                    .unwrap()
                    .eval_monomial(&yw)
                    .unwrap();
                let sign = if l % 2 == 0 { int(1) } else { int(-1) };
                // (eps - chi)^l = (-1)^l (chi - eps)^l
                assert_eq!(got, sign * expected, "n = {n}, l = {l}");
            }
            for l in n..=n + 1 {
                let got = alg
                    .convolution_power(&u, l)
                    .unwrap()
                    .eval_monomial(&yw)
                    .unwrap();
                assert_eq!(got, int(0), "vanishing branch n = {n}, l = {l}");
            }
        }
    }

    #[test]
    fn delta_table_dump_is_deterministic_json() {
        let alg = YAlgebra::new(1);
        let dump = alg.delta_table_json(2).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&dump).unwrap();
        let rows = parsed["Y(1,1,1)"].as_array().unwrap();
        assert_eq!(rows.len(), 3); // ends plus the collected middle term
        assert_eq!(alg.delta_table_json(2).unwrap(), dump);
    }

    #[test]
    fn one_variable_engine_is_cocommutative() {
        let alg = YAlgebra::new(1);
        assert!(alg.is_cocommutative_k1(6).unwrap());
        assert!(YAlgebra::new(2).is_cocommutative_k1(4).is_err());
    }

    #[test]
    fn two_letter_engine_has_a_witness() {
        let alg = YAlgebra::new(2);
        let w = alg.cocommutativity_witness(4).unwrap();
        assert_eq!(w, Some(Word::new(vec![1, 2, 1])));
    }
}
