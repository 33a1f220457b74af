//! Deterministic inputs for tests and verification suites: a tiny
//! seedable generator and canonical random sparse series/distributions.
//! Everything here is reproducible across platforms, so verification
//! reports are byte-identical run to run.

use num::{BigRational, One};

use crate::freeprob::Distribution;
use crate::ratio;
use crate::series::{NcSeries, OneVarSeries, Word};

/// SplitMix64: tiny, seedable, platform-independent.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// A small rational with numerator in `-9..=9` and denominator in `1..=9`.
    pub fn rational(&mut self) -> BigRational {
        let numer = self.below(19) as i64 - 9;
        let denom = self.below(9) as i64 + 1;
        ratio::ratio(numer, denom)
    }

    /// A small nonzero rational.
    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !num::Zero::is_zero(&r) {
                return r;
            }
        }
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// All set partitions of `{1..n}` as block lists, via restricted growth
/// strings. This is the oracle against which the non-crossing enumerator
/// is filtered and compared.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    assert!(n >= 1);
    let mut rgs = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let parts = rgs.iter().copied().max().unwrap() + 1;
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); parts];
        for (i, &p) in rgs.iter().enumerate() {
            blocks[p].push(i + 1);
        }
        out.push(blocks);
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for x in rgs[i + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
            rgs[i] = 0;
        }
    }
}

/// The first `n` Catalan numbers `1, 2, 5, 14, ..` (starting at index 1).
pub fn catalan_numbers(n: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    let mut c = num::BigInt::from(1);
    for i in 1..=n {
        // C(i) = C(i-1) * 2(2i-1)/(i+1)
        c = c * 2 * (2 * i as i64 - 1) / (i as i64 + 1);
        out.push(BigRational::from_integer(c.clone()));
    }
    out
}

/// A sparse cumulant series with unit linear part: each word of length
/// `2..=degree` carries a small random rational with probability 1/2.
pub fn random_sparse_r(k: usize, degree: usize, rng: &mut SplitMix64) -> NcSeries {
    let mut s = NcSeries::zero(k, degree)
        .expect("positive parameters")
        .with_unit_linear_part();
    for n in 2..=degree {
        for w in Word::all_of_length(k, n) {
            if rng.coin() {
                s.set(w, rng.rational()).expect("within degree");
            }
        }
    }
    s
}

/// A sparse series with zero linear part, shaped like a chain-sum
/// transform.
pub fn random_sparse_ls(k: usize, degree: usize, rng: &mut SplitMix64) -> NcSeries {
    let mut s = NcSeries::zero(k, degree).expect("positive parameters");
    for n in 2..=degree {
        for w in Word::all_of_length(k, n) {
            if rng.coin() {
                s.set(w, rng.rational()).expect("within degree");
            }
        }
    }
    s
}

/// A random normalized distribution (every first moment 1), built from a
/// random sparse cumulant series.
pub fn random_distribution(k: usize, degree: usize, rng: &mut SplitMix64) -> Distribution {
    let r = random_sparse_r(k, degree, rng);
    Distribution::from_r_transform(&r).expect("cumulant series is valid")
}

/// A random one-variable series with constant term 1.
pub fn random_onevar_unit(degree: usize, rng: &mut SplitMix64) -> OneVarSeries {
    let mut s = OneVarSeries::zero(degree);
    s.set(0, BigRational::one());
    for i in 1..=degree {
        if rng.coin() {
            s.set(i, rng.rational());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    #[test]
    fn catalan_values() {
        let c = catalan_numbers(7);
        let expected = [1, 2, 5, 14, 42, 132, 429];
        for (got, want) in c.iter().zip(expected) {
            assert_eq!(got, &int(want));
        }
    }

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
