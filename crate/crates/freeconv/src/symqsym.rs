//! Symmetric functions in the elementary basis, quasi-symmetric functions
//! in the monomial basis, and the bridge from the one-letter Hopf engine.
//!
//! Partition-indexed keys (weakly decreasing) and composition-indexed keys
//! (order-sensitive) are distinct types and never interconverted
//! implicitly. The complete and power-sum generators are stored as
//! elementary-basis expansions, so every functional evaluation reduces to
//! values on elementary monomials.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::hopfy::YElement;
use crate::nclat;
use crate::ratio;
use crate::series::OneVarSeries;
use crate::Result;

/// A weakly decreasing sequence of positive integers; the empty partition
/// indexes the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPartition(Vec<usize>);

impl IntPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntPartition(parts))
    }

    pub fn unit() -> Self {
        IntPartition(Vec::new())
    }

    pub fn single(n: usize) -> Self {
        IntPartition(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn merge(&self, other: &IntPartition) -> IntPartition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition(parts)
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, in a deterministic order.
pub fn partitions_of(n: usize) -> Vec<IntPartition> {
    fn rec(n: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
        if n == 0 {
            out.push(IntPartition(current.clone()));
            return;
        }
        for part in (1..=max.min(n)).rev() {
            current.push(part);
            rec(n - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// A polynomial in the elementary generators, keyed by partitions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<IntPartition, BigRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::from_term(IntPartition::unit(), BigRational::one())
    }

    /// The elementary generator of the given degree (`e_0` is the unit).
    pub fn elementary(n: usize) -> Self {
        if n == 0 {
            SymPoly::one()
        } else {
            SymPoly::from_term(IntPartition::single(n), BigRational::one())
        }
    }

    pub fn from_term(p: IntPartition, c: BigRational) -> Self {
        let mut out = SymPoly::zero();
        out.add_term(p, c);
        out
    }

    pub fn terms(&self) -> &BTreeMap<IntPartition, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(|p| p.weight()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, p: IntPartition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
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

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (p1, c1) in &self.terms {
            for (p2, c2) in &other.terms {
                out.add_term(p1.merge(p2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*e{}", ratio::to_string(c), p)?;
        }
        Ok(())
    }
}

/// Fixture dump: a deterministic list of `{"partition": [..], "value": ".."}`
/// entries in the elementary basis.
impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            partition: &'a [usize],
            value: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (p, c) in &self.terms {
            seq.serialize_element(&Entry {
                partition: p.parts(),
                value: ratio::to_string(c),
            })?;
        }
        seq.end()
    }
}

/// A sparse element of the tensor square of the symmetric functions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymTensor {
    terms: BTreeMap<(IntPartition, IntPartition), BigRational>,
}

impl SymTensor {
    pub fn unit() -> Self {
        let mut t = SymTensor::default();
        t.add_term(
            IntPartition::unit(),
            IntPartition::unit(),
            BigRational::one(),
        );
        t
    }

    pub fn terms(&self) -> &BTreeMap<(IntPartition, IntPartition), BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, a: IntPartition, b: IntPartition, c: BigRational) {
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

    pub fn add(&self, other: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SymTensor {
        if c.is_zero() {
            return SymTensor::default();
        }
        SymTensor {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SymTensor) -> SymTensor {
        let mut out = SymTensor::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.merge(a2), b1.merge(b2), c1 * c2);
            }
        }
        out
    }
}

/// The tensor of two polynomials.
pub fn tensor_of(a: &SymPoly, b: &SymPoly) -> SymTensor {
    let mut out = SymTensor::default();
    for (p1, c1) in a.terms() {
        for (p2, c2) in b.terms() {
            out.add_term(p1.clone(), p2.clone(), c1 * c2);
        }
    }
    out
}

/// Coproduct of an elementary generator: the full convolution split,
/// with the unit at both ends.
pub fn delta_elementary(n: usize) -> SymTensor {
    let mut out = SymTensor::default();
    for i in 0..=n {
        let left = if i == 0 {
            IntPartition::unit()
        } else {
            IntPartition::single(i)
        };
        let right = if n - i == 0 {
            IntPartition::unit()
        } else {
            IntPartition::single(n - i)
        };
        out.add_term(left, right, BigRational::one());
    }
    out
}

/// Coproduct extended multiplicatively and linearly.
pub fn delta_sym(p: &SymPoly) -> SymTensor {
    let mut out = SymTensor::default();
    for (part, c) in p.terms() {
        let mut acc = SymTensor::unit();
        for &piece in part.parts() {
            acc = acc.mul(&delta_elementary(piece));
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// Series arithmetic with polynomial coefficients: multiplicative inverse
/// of `coeffs[0] + coeffs[1] z + ..` where `coeffs[0]` must be the unit.
pub fn poly_series_reciprocal(coeffs: &[SymPoly]) -> Vec<SymPoly> {
    assert_eq!(coeffs[0], SymPoly::one(), "constant coefficient must be 1");
    let deg = coeffs.len() - 1;
    let mut out = vec![SymPoly::zero(); deg + 1];
    out[0] = SymPoly::one();
    for n in 1..=deg {
        let mut acc = SymPoly::zero();
        for i in 1..=n {
            acc = acc.add(&coeffs[i].mul(&out[n - i]));
        }
        out[n] = acc.scale(&-BigRational::one());
    }
    out
}

/// Series logarithm with polynomial coefficients; the constant coefficient
/// must be the unit, and the sum terminates at the truncation degree.
pub fn poly_series_log(coeffs: &[SymPoly]) -> Vec<SymPoly> {
    assert_eq!(coeffs[0], SymPoly::one(), "constant coefficient must be 1");
    let deg = coeffs.len() - 1;
    // u = 1 - series, which has zero constant coefficient
    let mut u = vec![SymPoly::zero(); deg + 1];
    for (i, c) in coeffs.iter().enumerate().skip(1) {
        u[i] = c.scale(&-BigRational::one());
    }
    let mut acc = {
        let mut one = vec![SymPoly::zero(); deg + 1];
        one[0] = SymPoly::one();
        one
    };
    let mut out = vec![SymPoly::zero(); deg + 1];
    for l in 1..=deg {
        // acc = acc * u, truncated
        let mut next = vec![SymPoly::zero(); deg + 1];
        for i in 0..=deg {
            if acc[i].is_zero() {
                continue;
            }
            for j in 1..=deg - i {
                if !u[j].is_zero() {
                    next[i + j] = next[i + j].add(&acc[i].mul(&u[j]));
                }
            }
        }
        acc = next;
        let w = ratio::ratio(-1, l as i64);
        for i in 0..=deg {
            if !acc[i].is_zero() {
                out[i] = out[i].add(&acc[i].scale(&w));
            }
        }
    }
    out
}

/// Series exponential with polynomial coefficients; the constant
/// coefficient must vanish. Inverse of [`poly_series_log`] up to
/// truncation.
pub fn poly_series_exp(coeffs: &[SymPoly]) -> Vec<SymPoly> {
    assert!(coeffs[0].is_zero(), "constant coefficient must vanish");
    let deg = coeffs.len() - 1;
    let mut acc = {
        let mut one = vec![SymPoly::zero(); deg + 1];
        one[0] = SymPoly::one();
        one
    };
    let mut out = acc.clone();
    let mut factorial = BigRational::one();
    for l in 1..=deg {
        let mut next = vec![SymPoly::zero(); deg + 1];
        for i in 0..=deg {
            if acc[i].is_zero() {
                continue;
            }
            for j in 1..=deg - i {
                if !coeffs[j].is_zero() {
                    next[i + j] = next[i + j].add(&acc[i].mul(&coeffs[j]));
                }
            }
        }
        acc = next;
        factorial *= ratio::int(l as i64);
        let w = BigRational::one() / &factorial;
        for i in 0..=deg {
            if !acc[i].is_zero() {
                out[i] = out[i].add(&acc[i].scale(&w));
            }
        }
    }
    out
}

/// The complete generators `h_1..h_n` as elementary-basis expansions,
/// from the reciprocal of the elementary generating series with
/// alternating signs.
pub fn h_polys(n: usize) -> Vec<SymPoly> {
    let coeffs: Vec<SymPoly> = (0..=n).map(SymPoly::elementary).collect();
    let inv = poly_series_reciprocal(&coeffs);
    let mut out = vec![SymPoly::one()];
    for (i, item) in inv.into_iter().enumerate().skip(1) {
        let sign = if i % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        out.push(item.scale(&sign));
    }
    out
}

/// The power-sum generators `p_1..p_n` as elementary-basis expansions,
/// from the logarithm of the elementary generating series with the
/// alternating-weight normalization.
pub fn p_polys(n: usize) -> Vec<SymPoly> {
    let coeffs: Vec<SymPoly> = (0..=n).map(SymPoly::elementary).collect();
    let log = poly_series_log(&coeffs);
    let mut out = vec![SymPoly::zero()];
    for (i, item) in log.into_iter().enumerate().skip(1) {
        // log e = sum ((-1)^{n+1}/n) p_n z^n
        let sign = if i % 2 == 1 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        out.push(item.scale(&(sign * ratio::int(i as i64))));
    }
    out
}

/// The distinguished symmetric function of each degree: the sum over
/// non-crossing partitions of `n - 1` points of the elementary monomials
/// given by block sizes. Degree `n` maps to weight `n - 1`. Built once
/// per size and shared.
pub fn y_poly(n: usize) -> Result<SymPoly> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<HashMap<usize, SymPoly>>> = OnceLock::new();
    if n < 2 {
        return Err(Error::domain("defined for n >= 2"));
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(found) = guard.get(&n) {
            return Ok(found.clone());
        }
    }
    let mut out = SymPoly::zero();
    for p in nclat::enumerate_nc(n - 1)? {
        let part = IntPartition::new(p.blocks().iter().map(|b| b.len()).collect())?;
        out.add_term(part, BigRational::one());
    }
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry(n).or_insert(out).clone())
}

/// Independent recursive route to the same polynomials: split the point
/// set at the positions of the block containing the last point.
pub fn y_poly_recursive(n: usize) -> Result<SymPoly> {
    if n < 2 {
        return Err(Error::domain("defined for n >= 2"));
    }
    let mut table: Vec<SymPoly> = vec![SymPoly::zero(); n + 1];
    table[1] = SymPoly::one();
    for m in 2..=n {
        let mut acc = SymPoly::zero();
        // choose the chain of gap positions 1 = i_1 < .. < i_q = m
        fn gaps(
            m: usize,
            last: usize,
            picked: &mut Vec<usize>,
            table: &[SymPoly],
            acc: &mut SymPoly,
        ) {
            if last == m {
                if picked.len() >= 2 {
                    let mut term = SymPoly::elementary(picked.len() - 1);
                    for w in picked.windows(2) {
                        term = term.mul(&table[w[1] - w[0]]);
                    }
                    *acc = acc.add(&term);
                }
                return;
            }
            for next in last + 1..=m {
                picked.push(next);
                gaps(m, next, picked, table, acc);
                picked.pop();
            }
        }
        gaps(m, 1, &mut vec![1], &table, &mut acc);
        table[m] = acc;
    }
    Ok(table[n].clone())
}

/// Product of the distinguished functions over the blocks of a
/// non-crossing partition, with the size-1 convention equal to the unit.
pub fn y_partition_product(p: &nclat::NcPartition) -> Result<SymPoly> {
    let mut out = SymPoly::one();
    for b in p.blocks() {
        if b.len() >= 2 {
            out = out.mul(&y_poly(b.len())?);
        }
    }
    Ok(out)
}

/// The graded algebra map from the one-letter engine determined by
/// sending each generator to the distinguished function of its length.
pub fn phi(e: &YElement) -> Result<SymPoly> {
    let mut out = SymPoly::zero();
    for (m, c) in e.terms() {
        let mut acc = SymPoly::one();
        for w in m.words() {
            if w.max_letter() > 1 {
                return Err(Error::domain(
                    "the symmetric-function bridge needs one-letter words",
                ));
            }
            acc = acc.mul(&y_poly(w.len())?);
        }
        out = out.add(&acc.scale(c));
    }
    Ok(out)
}

/// A linear functional on symmetric functions, stored on elementary
/// monomials of weight up to a degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFunctional {
    degree: usize,
    values: BTreeMap<IntPartition, BigRational>,
}

impl SymFunctional {
    pub fn new(
        degree: usize,
        values: impl IntoIterator<Item = (IntPartition, BigRational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(IntPartition::unit(), BigRational::zero());
        for (p, v) in values {
            if p.weight() > degree {
                return Err(Error::domain(format!(
                    "partition {p} beyond degree bound {degree}"
                )));
            }
            if p.parts().is_empty() || !v.is_zero() {
                map.insert(p, v);
            }
        }
        Ok(SymFunctional {
            degree,
            values: map,
        })
    }

    /// The counit: 1 on the unit, 0 on positive weight.
    pub fn counit(degree: usize) -> Self {
        SymFunctional::new(degree, vec![(IntPartition::unit(), BigRational::one())])
            .expect("unit entry fits")
    }

    /// The multiplicative functional with the given values on the
    /// elementary generators (`values[i]` is taken at weight `i + 1`).
    pub fn character_from_elementary_values(degree: usize, values: &[BigRational]) -> Result<Self> {
        if values.len() < degree {
            return Err(Error::domain(format!(
                "need values on the first {degree} generators, got {}",
                values.len()
            )));
        }
        let mut out = vec![(IntPartition::unit(), BigRational::one())];
        for n in 1..=degree {
            for p in partitions_of(n) {
                let mut acc = BigRational::one();
                for &part in p.parts() {
                    acc *= &values[part - 1];
                    if acc.is_zero() {
                        break;
                    }
                }
                if !acc.is_zero() {
                    out.push((p, acc));
                }
            }
        }
        SymFunctional::new(degree, out)
    }

    /// The zeta-like character: 1 on the first elementary generator,
    /// 0 on the higher ones.
    pub fn zeta(degree: usize) -> Self {
        let mut values = vec![BigRational::zero(); degree.max(1)];
        values[0] = BigRational::one();
        SymFunctional::character_from_elementary_values(degree, &values)
            .expect("values cover the bound")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &BTreeMap<IntPartition, BigRational> {
        &self.values
    }

    pub fn unit_value(&self) -> BigRational {
        self.values
            .get(&IntPartition::unit())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval_partition(&self, p: &IntPartition) -> Result<BigRational> {
        if p.weight() > self.degree {
            return Err(Error::domain(format!(
                "partition {p} beyond degree bound {}",
                self.degree
            )));
        }
        Ok(self
            .values
            .get(p)
            .cloned()
            .unwrap_or_else(BigRational::zero))
    }

    pub fn eval_poly(&self, poly: &SymPoly) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (p, c) in poly.terms() {
            acc += self.eval_partition(p)? * c;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &SymFunctional) -> Result<SymFunctional> {
        if self.degree != other.degree {
            return Err(Error::domain("degree bounds differ"));
        }
        let mut out = self.clone();
        for (p, v) in &other.values {
            let entry = out
                .values
                .entry(p.clone())
                .or_insert_with(BigRational::zero);
            *entry += v;
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &SymFunctional) -> Result<SymFunctional> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> SymFunctional {
        let mut out = SymFunctional {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(p, v)| (p.clone(), v * c))
                .collect(),
        };
        out.prune();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    fn prune(&mut self) {
        self.values
            .retain(|p, v| p.parts().is_empty() || !v.is_zero());
        self.values
            .entry(IntPartition::unit())
            .or_insert_with(BigRational::zero);
    }
}

/// The character attached to a one-variable series with constant term 1:
/// its values on the elementary generators are the coefficients of the
/// reciprocal series.
pub fn theta_from_s(s: &OneVarSeries, degree: usize) -> Result<SymFunctional> {
    if !s.coeff(0).is_one() {
        return Err(Error::domain("series must have constant term 1"));
    }
    if degree > s.degree() {
        return Err(Error::domain(format!(
            "degree bound {degree} beyond series truncation {}",
            s.degree()
        )));
    }
    let gamma = s.reciprocal()?;
    let values: Vec<BigRational> = (1..=degree).map(|n| gamma.coeff(n)).collect();
    SymFunctional::character_from_elementary_values(degree, &values)
}

/// Convolution of functionals through the coproduct.
pub fn sym_convolve(f: &SymFunctional, g: &SymFunctional) -> Result<SymFunctional> {
    if f.degree() != g.degree() {
        return Err(Error::domain("degree bounds differ"));
    }
    let mut values = Vec::new();
    for n in 0..=f.degree() {
        for p in partitions_of(n) {
            let mut acc = BigRational::zero();
            let mut tensor = SymTensor::unit();
            for &part in p.parts() {
                tensor = tensor.mul(&delta_elementary(part));
            }
            for ((a, b), c) in tensor.terms() {
                let left = f.eval_partition(a)?;
                if left.is_zero() {
                    continue;
                }
                acc += left * g.eval_partition(b)? * c;
            }
            if !acc.is_zero() {
                values.push((p, acc));
            }
        }
    }
    SymFunctional::new(f.degree(), values)
}

/// Logarithm of a unit-valued functional; the alternating power sum
/// terminates at the degree bound.
pub fn sym_log(f: &SymFunctional) -> Result<SymFunctional> {
    if !f.unit_value().is_one() {
        return Err(Error::domain("log needs value 1 on the unit"));
    }
    let u = SymFunctional::counit(f.degree()).sub(f)?;
    let mut out = SymFunctional::new(f.degree(), vec![])?;
    let mut pow = SymFunctional::counit(f.degree());
    for l in 1..=f.degree() {
        pow = sym_convolve(&pow, &u)?;
        if pow.is_zero() {
            break;
        }
        out = out.sub(&pow.scale(&ratio::ratio(1, l as i64)))?;
    }
    Ok(out)
}

/// The zeta-like character takes value 1 on every distinguished function
/// through the bound.
pub fn zeta_check(n_max: usize) -> Result<bool> {
    let zeta = SymFunctional::zeta(n_max);
    for n in 2..=n_max + 1 {
        if !zeta.eval_poly(&y_poly(n)?)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A composition: an order-sensitive tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("composition parts must be positive"));
        }
        Ok(Composition(parts))
    }

    pub fn unit() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A quasi-symmetric function in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QSymPoly {
    terms: BTreeMap<Composition, BigRational>,
}

impl QSymPoly {
    pub fn zero() -> Self {
        QSymPoly::default()
    }

    pub fn one() -> Self {
        QSymPoly::from_term(Composition::unit(), BigRational::one())
    }

    pub fn monomial(c: Composition) -> Self {
        QSymPoly::from_term(c, BigRational::one())
    }

    pub fn from_term(c: Composition, v: BigRational) -> Self {
        let mut out = QSymPoly::zero();
        out.add_term(c, v);
        out
    }

    pub fn terms(&self) -> &BTreeMap<Composition, BigRational> {
        &self.terms
    }

    pub fn add_term(&mut self, c: Composition, v: BigRational) {
        if v.is_zero() {
            return;
        }
        match self.terms.entry(c) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
        }
    }

    pub fn add(&self, other: &QSymPoly) -> QSymPoly {
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, v: &BigRational) -> QSymPoly {
        if v.is_zero() {
            return QSymPoly::zero();
        }
        QSymPoly {
            terms: self.terms.iter().map(|(c, x)| (c.clone(), x * v)).collect(),
        }
    }

    /// Bilinear extension of the overlapping-shuffle product: interleave
    /// the parts or merge the two heads, recursively.
    pub fn mul(&self, other: &QSymPoly) -> QSymPoly {
        let mut out = QSymPoly::zero();
        for (c1, v1) in &self.terms {
            for (c2, v2) in &other.terms {
                let shuffled = quasi_shuffle(c1.parts(), c2.parts());
                out = out.add(&shuffled.scale(&(v1 * v2)));
            }
        }
        out
    }
}

/// Fixture dump: a deterministic list of `{"composition": [..], "value": ".."}`
/// entries in the monomial basis.
impl Serialize for QSymPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            composition: &'a [usize],
            value: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (c, v) in &self.terms {
            seq.serialize_element(&Entry {
                composition: c.parts(),
                value: ratio::to_string(v),
            })?;
        }
        seq.end()
    }
}

/// Overlapping shuffle of two bare compositions.
pub fn quasi_shuffle(a: &[usize], b: &[usize]) -> QSymPoly {
    if a.is_empty() {
        return QSymPoly::monomial(Composition(b.to_vec()));
    }
    if b.is_empty() {
        return QSymPoly::monomial(Composition(a.to_vec()));
    }
    let mut out = QSymPoly::zero();
    for (head, rest_a, rest_b) in [
        (a[0], &a[1..], b),
        (b[0], a, &b[1..]),
        (a[0] + b[0], &a[1..], &b[1..]),
    ] {
        for (c, v) in quasi_shuffle(rest_a, rest_b).terms {
            let mut parts = Vec::with_capacity(c.0.len() + 1);
            parts.push(head);
            parts.extend(c.0);
            out.add_term(Composition(parts), v);
        }
    }
    out
}

/// Expands a symmetric function into the quasi-symmetric monomial basis:
/// each elementary generator of weight `n` becomes the monomial of `n`
/// ones, and products expand through the overlapping shuffle.
pub fn sym_to_qsym(p: &SymPoly) -> QSymPoly {
    let mut out = QSymPoly::zero();
    for (part, c) in p.terms() {
        let mut acc = QSymPoly::one();
        for &piece in part.parts() {
            acc = acc.mul(&QSymPoly::monomial(Composition(vec![1; piece])));
        }
        out = out.add(&acc.scale(c));
    }
    out
}

/// The chain-indexed quasi-symmetric expansion of the distinguished
/// function: one monomial per strict bottom-to-top chain, recording the
/// drops in block count along the chain.
pub fn y_via_chains(n: usize) -> Result<QSymPoly> {
    if n < 2 {
        return Err(Error::domain("defined for n >= 2"));
    }
    let mut out = QSymPoly::zero();
    for chain in nclat::enumerate_chains(n)? {
        let counts: Vec<usize> = chain.elements().iter().map(|p| p.block_count()).collect();
        let parts: Vec<usize> = counts.windows(2).map(|w| w[0] - w[1]).collect();
        out.add_term(Composition(parts), BigRational::one());
    }
    Ok(out)
}
