//! Machine-checkable identity suites.
//!
//! Each suite runs a fixed list of checks and reports one record per
//! identity. All inputs are deterministic (fixed seeds), so reports are
//! byte-identical run to run. The `anchor` of a check states the identity
//! being verified.

use std::collections::BTreeSet;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::fixtures::{self, SplitMix64};
use crate::freeprob::{self, Distribution};
use crate::hopfy::{self, YElement, YMonomial, YTensorChain};
use crate::nclat::{self, NcPartition};
use crate::ratio::{int, ratio};
use crate::series::{NcSeries, Word};
use crate::symqsym::{self, IntPartition, SymFunctional, SymPoly};
use crate::Result;

/// One verified identity.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub pass: bool,
    pub detail: String,
}

/// A named batch of checks.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lattice,
    Hopf,
    LsOracle,
    Sym,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "lattice" => Some(Suite::Lattice),
            "hopf" => Some(Suite::Hopf),
            "ls-oracle" => Some(Suite::LsOracle),
            "sym" => Some(Suite::Sym),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Hopf => "hopf",
            Suite::LsOracle => "ls-oracle",
            Suite::Sym => "sym",
            Suite::All => "all",
        }
    }
}

/// Runs a suite at the given size/degree parameter (each suite has its
/// own default when `None`).
pub fn run_suite(suite: Suite, degree: Option<usize>) -> Result<Report> {
    let checks = match suite {
        Suite::Lattice => lattice_checks(degree.unwrap_or(6))?,
        Suite::Hopf => hopf_checks(degree.unwrap_or(5))?,
        Suite::LsOracle => ls_oracle_checks(degree.unwrap_or(5))?,
        Suite::Sym => sym_checks(degree.unwrap_or(6))?,
        Suite::All => {
            let mut all = lattice_checks(degree.unwrap_or(6))?;
            all.extend(hopf_checks(degree.unwrap_or(5))?);
            all.extend(ls_oracle_checks(degree.unwrap_or(5))?);
            all.extend(sym_checks(degree.unwrap_or(6))?);
            all
        }
    };
    Ok(Report {
        suite: suite.name().to_string(),
        checks,
    })
}

fn check<F>(name: &str, anchor: &str, body: F) -> Check
where
    F: FnOnce() -> std::result::Result<String, String>,
{
    match body() {
        Ok(detail) => Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: true,
            detail,
        },
        Err(detail) => Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            pass: false,
            detail,
        },
    }
}

fn err<T>(msg: String) -> std::result::Result<T, String> {
    Err(msg)
}

// ---------------------------------------------------------------- lattice

/// All `(p, r)` pairs with `p <= r` over the enumerated lattice.
fn ordered_pairs(n: usize) -> Result<Vec<(NcPartition, NcPartition)>> {
    let all = nclat::enumerate_nc(n)?;
    let mut out = Vec::new();
    for p in &all {
        for r in &all {
            if p.leq(r)? {
                out.push((p.clone(), r.clone()));
            }
        }
    }
    Ok(out)
}

pub fn lattice_checks(n_max: usize) -> Result<Vec<Check>> {
    let n_max = n_max.clamp(1, 6);
    let mut out = Vec::new();

    out.push(check(
        "catalan-counts",
        "row counts of the lattice match the filtered set-partition oracle",
        || {
            let catalan = [1usize, 1, 2, 5, 14, 42, 132];
            for n in 1..=n_max {
                let got = nclat::enumerate_nc(n).map_err(|e| e.to_string())?;
                let oracle: Vec<_> = fixtures::set_partitions(n)
                    .into_iter()
                    .filter_map(|blocks| NcPartition::new(n, blocks).ok())
                    .collect();
                if got.len() != catalan[n] || got.len() != oracle.len() {
                    return err(format!(
                        "n={n}: got {}, oracle {}, expected {}",
                        got.len(),
                        oracle.len(),
                        catalan[n]
                    ));
                }
            }
            Ok(format!("counts agree for n <= {n_max}"))
        },
    ));

    out.push(check(
        "chain-counts",
        "bottom-to-top chains in the 4-point lattice number 1/12/16 by length",
        || {
            let c4 = nclat::enumerate_chains(4).map_err(|e| e.to_string())?;
            let by_len: Vec<usize> = (1..=3)
                .map(|l| c4.iter().filter(|c| c.len() == l).count())
                .collect();
            if by_len != vec![1, 12, 16] {
                return err(format!("lengths 1..3 counted {by_len:?}"));
            }
            let c2 = nclat::enumerate_chains(2).map_err(|e| e.to_string())?;
            let c3 = nclat::enumerate_chains(3).map_err(|e| e.to_string())?;
            if c2.len() != 1 || c3.len() != 4 {
                return err(format!("n=2: {}, n=3: {}", c2.len(), c3.len()));
            }
            Ok("1 + 12 + 16 chains at n=4; 1 at n=2; 1 + 3 at n=3".to_string())
        },
    ));

    out.push(check(
        "complement-block-count",
        "|K_r(p)| = n + |r| - |p| for every p <= r",
        || {
            for n in 1..=n_max {
                for (p, r) in ordered_pairs(n).map_err(|e| e.to_string())? {
                    let comp = p.relative_kreweras(&r).map_err(|e| e.to_string())?;
                    if comp.block_count() != n + r.block_count() - p.block_count() {
                        return err(format!("violated at p={p}, r={r}"));
                    }
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    out.push(check(
        "complement-order-reversal",
        "for fixed r, p -> K_r(p) is an order-reversing bijection of the ideal below r",
        || {
            for n in 1..=n_max {
                let all = nclat::enumerate_nc(n).map_err(|e| e.to_string())?;
                for r in &all {
                    let ideal: Vec<_> = all.iter().filter(|p| p.leq(r).unwrap()).cloned().collect();
                    let images: BTreeSet<_> = ideal
                        .iter()
                        .map(|p| p.relative_kreweras(r).unwrap())
                        .collect();
                    if images.len() != ideal.len() || !images.iter().all(|s| s.leq(r).unwrap()) {
                        return err(format!("not a bijection below r={r}"));
                    }
                    for a in &ideal {
                        for b in &ideal {
                            if a.leq(b).unwrap() {
                                let ka = a.relative_kreweras(r).unwrap();
                                let kb = b.relative_kreweras(r).unwrap();
                                if !kb.leq(&ka).unwrap() {
                                    return err(format!(
                                        "order not reversed at p={a}, q={b}, r={r}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    out.push(check(
        "complement-monotone-in-outer",
        "p <= r1 <= r2 implies K_r1(p) <= K_r2(p)",
        || {
            for n in 1..=n_max {
                let all = nclat::enumerate_nc(n).map_err(|e| e.to_string())?;
                for p in &all {
                    for r1 in &all {
                        if !p.leq(r1).unwrap() {
                            continue;
                        }
                        for r2 in &all {
                            if !r1.leq(r2).unwrap() {
                                continue;
                            }
                            let k1 = p.relative_kreweras(r1).unwrap();
                            let k2 = p.relative_kreweras(r2).unwrap();
                            if !k1.leq(&k2).unwrap() {
                                return err(format!("violated at p={p}, r1={r1}, r2={r2}"));
                            }
                        }
                    }
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    out.push(check(
        "complement-domination",
        "K_r(p) <= K(p) for every p <= r",
        || {
            for n in 1..=n_max {
                for (p, r) in ordered_pairs(n).map_err(|e| e.to_string())? {
                    let comp = p.relative_kreweras(&r).unwrap();
                    if !comp.leq(&p.kreweras()).unwrap() {
                        return err(format!("violated at p={p}, r={r}"));
                    }
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    out.push(check(
        "complement-inverse-pairing",
        "K_r(p) = s implies K_{K(p)}(s) = K(r)",
        || {
            for n in 1..=n_max {
                for (p, r) in ordered_pairs(n).map_err(|e| e.to_string())? {
                    let s = p.relative_kreweras(&r).unwrap();
                    let paired = s.relative_kreweras(&p.kreweras()).unwrap();
                    if paired != r.kreweras() {
                        return err(format!("violated at p={p}, r={r}"));
                    }
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    out.push(check(
        "complement-consolidated-bijection",
        "(p, r) -> (p, K_r(p)) maps pairs p <= r bijectively onto pairs s <= K(p)",
        || {
            for n in 1..=n_max {
                let pairs = ordered_pairs(n).map_err(|e| e.to_string())?;
                let image: BTreeSet<(NcPartition, NcPartition)> = pairs
                    .iter()
                    .map(|(p, r)| (p.clone(), p.relative_kreweras(r).unwrap()))
                    .collect();
                if image.len() != pairs.len() {
                    return err(format!("not injective at n={n}"));
                }
                let all = nclat::enumerate_nc(n).map_err(|e| e.to_string())?;
                let mut target = BTreeSet::new();
                for p in &all {
                    let kp = p.kreweras();
                    for s in &all {
                        if s.leq(&kp).unwrap() {
                            target.insert((p.clone(), s.clone()));
                        }
                    }
                }
                if image != target {
                    return err(format!("image differs from target at n={n}"));
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    out.push(check(
        "complement-block-structure",
        "the complement and the inverse complement of a partition share block sizes",
        || {
            for n in 1..=n_max {
                let all = nclat::enumerate_nc(n).map_err(|e| e.to_string())?;
                // invert the complement bijection by table
                let mut inverse = std::collections::HashMap::new();
                for p in &all {
                    inverse.insert(p.kreweras(), p.clone());
                }
                for rho in &all {
                    let fwd = rho.kreweras();
                    let bwd = inverse
                        .get(rho)
                        .ok_or_else(|| format!("no preimage for {rho}"))?;
                    if fwd.block_sizes() != bwd.block_sizes() {
                        return err(format!("sizes differ at {rho}"));
                    }
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    out.push(check(
        "complement-blockwise-restriction",
        "restricting to the blocks of r and complementing per block equals K_r(p)",
        || {
            for n in 1..=n_max {
                for (p, r) in ordered_pairs(n).map_err(|e| e.to_string())? {
                    let mut blocks: Vec<Vec<usize>> = Vec::new();
                    for b in r.blocks() {
                        let inner = p.restrict_renumbered(b).map_err(|e| e.to_string())?;
                        for ib in inner.kreweras().blocks() {
                            blocks.push(ib.iter().map(|&j| b[j - 1]).collect());
                        }
                    }
                    let assembled = NcPartition::new(n, blocks).map_err(|e| e.to_string())?;
                    if assembled != p.relative_kreweras(&r).unwrap() {
                        return err(format!("violated at p={p}, r={r}"));
                    }
                }
            }
            Ok(format!("exhaustive for n <= {n_max}"))
        },
    ));

    Ok(out)
}

// ------------------------------------------------------------------- hopf

pub fn hopf_checks(degree: usize) -> Result<Vec<Check>> {
    let degree = degree.clamp(2, 5);
    let mut out = Vec::new();

    out.push(check(
        "coassociativity",
        "expanding the left leg of the coproduct equals expanding the right leg",
        || {
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                for n in 2..=degree.min(5) {
                    for w in Word::all_of_length(k, n) {
                        let m = YElement::from_monomial(YMonomial::generator(w.clone()).unwrap());
                        let left = alg.delta_iter(&m, 3).map_err(|e| e.to_string())?;
                        let mut right = YTensorChain::default();
                        let d = alg.delta_element(&m).map_err(|e| e.to_string())?;
                        for ((a, b), c) in d.terms() {
                            let db = alg.delta_monomial(b).map_err(|e| e.to_string())?;
                            for ((x, y), e) in db.terms() {
                                right.add_term(vec![a.clone(), x.clone(), y.clone()], c * e);
                            }
                        }
                        if left != right {
                            return err(format!("fails on the generator of {w}"));
                        }
                    }
                }
            }
            Ok(format!("generators up to length {degree}, both alphabets"))
        },
    ));

    out.push(check(
        "counit-law",
        "contracting either coproduct leg with the counit returns the generator",
        || {
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                for n in 2..=degree.min(5) {
                    for w in Word::all_of_length(k, n) {
                        let d = alg.delta_generator(&w).map_err(|e| e.to_string())?;
                        let expected =
                            YElement::from_monomial(YMonomial::generator(w.clone()).unwrap());
                        let mut left = YElement::zero();
                        let mut right = YElement::zero();
                        for ((a, b), c) in d.terms() {
                            if a.is_unit() {
                                left = left.add(&YElement::from_monomial(b.clone()).scale(c));
                            }
                            if b.is_unit() {
                                right = right.add(&YElement::from_monomial(a.clone()).scale(c));
                            }
                        }
                        if left != expected || right != expected {
                            return err(format!("fails on the generator of {w}"));
                        }
                    }
                }
            }
            Ok(format!("generators up to length {degree}, both alphabets"))
        },
    ));

    out.push(check(
        "grading",
        "coproduct legs of a generator have degrees summing to |w| - 1",
        || {
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                for n in 2..=degree.min(5) {
                    for w in Word::all_of_length(k, n) {
                        let d = alg.delta_generator(&w).map_err(|e| e.to_string())?;
                        for (a, b) in d.terms().keys() {
                            if a.degree() + b.degree() != n - 1 {
                                return err(format!("degree leak on {w}"));
                            }
                        }
                    }
                }
            }
            Ok(format!("generators up to length {degree}, both alphabets"))
        },
    ));

    out.push(check(
        "restriction-coproduct",
        "the coproduct of a restriction monomial sums over partitions below the outer one",
        || {
            let alg = hopfy::shared(2);
            for n in 2..=degree.min(4) {
                let w = Word::new((0..n).map(|i| 1 + (i % 2)).collect());
                for rho in nclat::enumerate_nc(n).map_err(|e| e.to_string())? {
                    let direct = alg.delta_restriction(&w, &rho).map_err(|e| e.to_string())?;
                    let m = YMonomial::from_restriction(&w, &rho).unwrap();
                    let multiplicative = alg.delta_monomial(&m).map_err(|e| e.to_string())?;
                    if direct != *multiplicative {
                        return err(format!("fails at w={w}, outer={rho}"));
                    }
                }
            }
            Ok("direct and multiplicative routes agree".to_string())
        },
    ));

    out.push(check(
        "iterated-coproduct",
        "the l-fold coproduct of a generator is the sum over l-step multi-chains",
        || {
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                for n in 2..=degree.min(5) {
                    let w = Word::new((0..n).map(|i| 1 + (i % k)).collect());
                    let e = YElement::from_monomial(YMonomial::generator(w.clone()).unwrap());
                    for l in 1..=4usize {
                        let got = alg.delta_iter(&e, l).map_err(|e| e.to_string())?;
                        let mut expected = YTensorChain::default();
                        for mc in nclat::enumerate_multichains(n, l).map_err(|e| e.to_string())? {
                            let key: Vec<YMonomial> = mc
                                .step_complements()
                                .unwrap()
                                .iter()
                                .map(|p| YMonomial::from_restriction(&w, p).unwrap())
                                .collect();
                            expected.add_term(key, int(1));
                        }
                        if got != expected {
                            return err(format!("fails at w={w}, l={l}"));
                        }
                    }
                }
            }
            Ok(format!("words up to length {degree}, l <= 4").to_string())
        },
    ));

    out.push(check(
        "antipode-identity",
        "the antipode convolved with the identity map gives the counit, on both sides",
        || {
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let table = alg.antipode_table(degree).map_err(|e| e.to_string())?;
                for m in alg.basis(degree).iter() {
                    let expected = if m.is_unit() {
                        YElement::one()
                    } else {
                        YElement::zero()
                    };
                    let mut left = YElement::zero();
                    let mut right = YElement::zero();
                    let d = alg.delta_monomial(m).map_err(|e| e.to_string())?;
                    for ((a, b), c) in d.terms() {
                        left =
                            left.add(&table[a].mul(&YElement::from_monomial(b.clone())).scale(c));
                        right =
                            right.add(&YElement::from_monomial(a.clone()).mul(&table[b]).scale(c));
                    }
                    if left != expected || right != expected {
                        return err(format!("fails on monomial {m} (k={k})"));
                    }
                }
            }
            Ok(format!("basis through degree {degree}, both alphabets"))
        },
    ));

    out.push(check(
        "antipode-character-inverse",
        "composing a character with the antipode gives its convolution inverse",
        || {
            let mut rng = SplitMix64::new(0x41_01);
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let r = fixtures::random_sparse_r(k, degree + 1, &mut rng);
                let chi = alg.character_from_r(&r).map_err(|e| e.to_string())?;
                let via_antipode = alg.compose_with_antipode(&chi).map_err(|e| e.to_string())?;
                let via_series = alg.character_inverse(&chi).map_err(|e| e.to_string())?;
                if via_antipode != via_series {
                    return err(format!("routes disagree at k={k}"));
                }
                let eps = alg.counit(chi.degree());
                if alg
                    .convolve(&chi, &via_antipode)
                    .map_err(|e| e.to_string())?
                    != eps
                {
                    return err(format!("not a right inverse at k={k}"));
                }
            }
            Ok("antipode route equals the geometric-series inverse".to_string())
        },
    ));

    out.push(check(
        "power-vanishing",
        "shifted character powers match length-graded chain sums and vanish from length n",
        || {
            let mut rng = SplitMix64::new(0x41_02);
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let r = fixtures::random_sparse_r(k, degree + 1, &mut rng);
                let chi = alg.character_from_r(&r).map_err(|e| e.to_string())?;
                let u = alg
                    .counit(chi.degree())
                    .sub(&chi)
                    .map_err(|e| e.to_string())?;
                for n in 2..=(degree + 1).min(5) {
                    let w = Word::new((0..n).map(|i| 1 + (i % k)).collect());
                    let yw = YMonomial::generator(w.clone()).unwrap();
                    let mut pow = alg.counit(chi.degree());
                    for l in 1..=n + 1 {
                        pow = alg.convolve(&pow, &u).map_err(|e| e.to_string())?;
                        let got = pow.eval_monomial(&yw).map_err(|e| e.to_string())?;
                        let expected = if l < n {
                            let mut acc = BigRational::zero();
                            for c in nclat::enumerate_chains(n).map_err(|e| e.to_string())? {
                                if c.len() != l {
                                    continue;
                                }
                                acc += r.multichain_coefficient(&w, c.as_multichain()).unwrap();
                            }
                            if l % 2 == 0 {
                                acc
                            } else {
                                -acc
                            }
                        } else {
                            BigRational::zero()
                        };
                        if got != expected {
                            return err(format!("fails at w={w}, l={l}, k={k}"));
                        }
                    }
                }
            }
            Ok("both branches verified on random characters".to_string())
        },
    ));

    out.push(check(
        "exp-log-round-trip",
        "exp inverts log on characters; log of the counit is zero",
        || {
            let mut rng = SplitMix64::new(0x41_03);
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let eps = alg.counit(degree);
                if !alg
                    .log_functional(&eps)
                    .map_err(|e| e.to_string())?
                    .is_zero()
                {
                    return err("log of the counit is not zero".to_string());
                }
                let r = fixtures::random_sparse_r(k, degree + 1, &mut rng);
                let chi = alg.character_from_r(&r).map_err(|e| e.to_string())?;
                let log = alg.log_functional(&chi).map_err(|e| e.to_string())?;
                if alg.exp_functional(&log).map_err(|e| e.to_string())? != chi {
                    return err(format!("round trip fails at k={k}"));
                }
            }
            Ok("round trips hold on random characters".to_string())
        },
    ));

    out.push(check(
        "log-infinitesimal",
        "the log of a character vanishes on every product of two or more generators",
        || {
            let mut rng = SplitMix64::new(0x41_04);
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let r = fixtures::random_sparse_r(k, degree + 1, &mut rng);
                let chi = alg.character_from_r(&r).map_err(|e| e.to_string())?;
                let log = alg.log_functional(&chi).map_err(|e| e.to_string())?;
                for m in alg.basis(log.degree()).iter() {
                    if m.words().len() >= 2
                        && !log.eval_monomial(m).map_err(|e| e.to_string())?.is_zero()
                    {
                        return err(format!("nonzero on {m} (k={k})"));
                    }
                }
            }
            Ok("infinitesimal on the stored basis".to_string())
        },
    ));

    out.push(check(
        "character-homomorphism",
        "the character of a convolution product is the convolution of the characters",
        || {
            let mut rng = SplitMix64::new(0x41_05);
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let a = fixtures::random_distribution(k, degree + 1, &mut rng);
                let b = fixtures::random_distribution(k, degree + 1, &mut rng);
                let prod = a.boxtimes(&b).map_err(|e| e.to_string())?;
                let lhs = alg
                    .character_from_r(prod.r_transform())
                    .map_err(|e| e.to_string())?;
                let rhs = alg
                    .convolve(
                        &alg.character_from_r(a.r_transform())
                            .map_err(|e| e.to_string())?,
                        &alg.character_from_r(b.r_transform())
                            .map_err(|e| e.to_string())?,
                    )
                    .map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return err(format!("fails at k={k}"));
                }
            }
            Ok("group homomorphism verified on random pairs".to_string())
        },
    ));

    out.push(check(
        "cocommutativity",
        "the one-letter engine is cocommutative through degree 6; two letters are not",
        || {
            let alg1 = hopfy::shared(1);
            if !alg1.is_cocommutative_k1(6).map_err(|e| e.to_string())? {
                return err("one-letter coproduct is not flip-symmetric".to_string());
            }
            let alg2 = hopfy::shared(2);
            match alg2.cocommutativity_witness(4).map_err(|e| e.to_string())? {
                Some(w) => Ok(format!(
                    "one letter symmetric through degree 6; two letters break at {w}"
                )),
                None => err("expected a two-letter witness below length 5".to_string()),
            }
        },
    ));

    Ok(out)
}

// -------------------------------------------------------------- ls-oracle

/// Degree-2 closed form of the chain sum.
pub fn ls_closed_form_2(r: &NcSeries, w: &Word) -> BigRational {
    r.coeff(w).unwrap()
}

/// Degree-3 closed form of the chain sum.
pub fn ls_closed_form_3(r: &NcSeries, w: &Word) -> BigRational {
    let a = |positions: &[usize]| r.coeff(&w.restrict(positions).unwrap()).unwrap();
    let half = ratio(1, 2);
    r.coeff(w).unwrap()
        - &half * (a(&[1, 2]) * a(&[1, 3]))
        - &half * (a(&[1, 3]) * a(&[2, 3]))
        - &half * (a(&[2, 3]) * a(&[1, 2]))
}

/// Degree-4 closed form of the chain sum, with the three collected sums.
pub fn ls_closed_form_4(r: &NcSeries, w: &Word) -> BigRational {
    let a = |positions: &[usize]| r.coeff(&w.restrict(positions).unwrap()).unwrap();
    let sigma = a(&[1, 2, 3]) * (a(&[1, 4]) + a(&[3, 4]))
        + a(&[1, 2, 4]) * (a(&[3, 4]) + a(&[2, 3]))
        + a(&[1, 3, 4]) * (a(&[2, 3]) + a(&[1, 2]))
        + a(&[2, 3, 4]) * (a(&[1, 2]) + a(&[1, 4]));
    let sigma_p = a(&[1, 2]) * a(&[1, 3]) * a(&[1, 4])
        + a(&[1, 2]) * a(&[2, 3]) * a(&[2, 4])
        + a(&[1, 3]) * a(&[2, 3]) * a(&[3, 4])
        + a(&[1, 4]) * a(&[2, 4]) * a(&[3, 4])
        + a(&[1, 2]) * a(&[2, 3]) * a(&[3, 4])
        + a(&[1, 2]) * a(&[2, 3]) * a(&[1, 4])
        + a(&[1, 2]) * a(&[1, 4]) * a(&[3, 4])
        + a(&[1, 4]) * a(&[2, 3]) * a(&[3, 4]);
    let sigma_pp = a(&[1, 2]) * a(&[1, 3]) * a(&[3, 4])
        + a(&[1, 2]) * a(&[2, 4]) * a(&[3, 4])
        + a(&[1, 3]) * a(&[1, 4]) * a(&[2, 3])
        + a(&[1, 4]) * a(&[2, 3]) * a(&[2, 4]);
    r.coeff(w).unwrap() - ratio(1, 2) * sigma + ratio(1, 3) * sigma_p + ratio(1, 6) * sigma_pp
}

pub fn ls_oracle_checks(degree: usize) -> Result<Vec<Check>> {
    let degree = degree.clamp(2, 5);
    let mut out = Vec::new();

    out.push(check(
        "chain-log-agreement",
        "the signed chain sum equals the Hopf log of the character on every generator",
        || {
            let mut rng = SplitMix64::new(0x15_01);
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let r = fixtures::random_sparse_r(k, degree, &mut rng);
                let ls = freeprob::ls_from_r(&r).map_err(|e| e.to_string())?;
                let chi = alg.character_from_r(&r).map_err(|e| e.to_string())?;
                let log = alg.log_functional(&chi).map_err(|e| e.to_string())?;
                for n in 2..=degree {
                    for w in Word::all_of_length(k, n) {
                        let lhs = ls.coeff(&w).unwrap();
                        let rhs = log
                            .eval_monomial(&YMonomial::generator(w.clone()).unwrap())
                            .map_err(|e| e.to_string())?;
                        if lhs != rhs {
                            return err(format!("routes differ at {w} (k={k})"));
                        }
                    }
                }
            }
            Ok(format!(
                "all generators of length <= {degree}, both alphabets"
            ))
        },
    ));

    out.push(check(
        "inverse-chain-formula",
        "the signed, unweighted chain sum computes the cumulants of the convolution inverse",
        || {
            let mut rng = SplitMix64::new(0x15_02);
            for k in 1..=2usize {
                let alg = hopfy::shared(k);
                let d = fixtures::random_distribution(k, degree, &mut rng);
                let inv = d.boxtimes_inverse().map_err(|e| e.to_string())?;
                let chi = alg
                    .character_from_r(d.r_transform())
                    .map_err(|e| e.to_string())?;
                let chi_inv = alg.character_inverse(&chi).map_err(|e| e.to_string())?;
                for n in 2..=degree {
                    for w in Word::all_of_length(k, n) {
                        let lhs = inv.r_transform().coeff(&w).unwrap();
                        let rhs = chi_inv
                            .eval_monomial(&YMonomial::generator(w.clone()).unwrap())
                            .map_err(|e| e.to_string())?;
                        if lhs != rhs {
                            return err(format!("routes differ at {w} (k={k})"));
                        }
                    }
                }
                let unit = Distribution::boxtimes_unit(k, degree);
                if d.boxtimes(&inv).map_err(|e| e.to_string())? != unit {
                    return err(format!("not a convolution inverse at k={k}"));
                }
            }
            Ok("chain route equals the character-inverse route".to_string())
        },
    ));

    out.push(check(
        "log-additivity",
        "the log linearizes commuting convolution products",
        || {
            let mut rng = SplitMix64::new(0x15_03);
            // one variable: every pair commutes
            let alg1 = hopfy::shared(1);
            let a = fixtures::random_distribution(1, degree, &mut rng);
            let b = fixtures::random_distribution(1, degree, &mut rng);
            let ca = alg1
                .character_from_r(a.r_transform())
                .map_err(|e| e.to_string())?;
            let cb = alg1
                .character_from_r(b.r_transform())
                .map_err(|e| e.to_string())?;
            if alg1.convolve(&ca, &cb).map_err(|e| e.to_string())?
                != alg1.convolve(&cb, &ca).map_err(|e| e.to_string())?
            {
                return err("one-variable convolution failed to commute".to_string());
            }
            let lhs = alg1
                .log_functional(&alg1.convolve(&ca, &cb).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let rhs = alg1
                .log_functional(&ca)
                .map_err(|e| e.to_string())?
                .add(&alg1.log_functional(&cb).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return err("one-variable additivity fails".to_string());
            }
            // two variables with one repeated-tuple factor
            let alg2 = hopfy::shared(2);
            let a = fixtures::random_distribution(2, degree, &mut rng);
            let p = fixtures::random_distribution(1, degree, &mut rng);
            let rep = Distribution::repeated(&p, 2).map_err(|e| e.to_string())?;
            let ca = alg2
                .character_from_r(a.r_transform())
                .map_err(|e| e.to_string())?;
            let cr = alg2
                .character_from_r(rep.r_transform())
                .map_err(|e| e.to_string())?;
            if alg2.convolve(&ca, &cr).map_err(|e| e.to_string())?
                != alg2.convolve(&cr, &ca).map_err(|e| e.to_string())?
            {
                return err("repeated-tuple factor failed to commute".to_string());
            }
            let lhs = alg2
                .log_functional(&alg2.convolve(&ca, &cr).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let rhs = alg2
                .log_functional(&ca)
                .map_err(|e| e.to_string())?
                .add(&alg2.log_functional(&cr).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return err("two-variable additivity fails".to_string());
            }
            Ok("additivity holds for commuting pairs".to_string())
        },
    ));

    out.push(check(
        "closed-forms",
        "the collected degree-2/3/4 formulas match the general chain sum",
        || {
            let mut rng = SplitMix64::new(0x15_04);
            for k in 1..=2usize {
                let r = fixtures::random_sparse_r(k, 4, &mut rng);
                let ls = freeprob::ls_from_r(&r).map_err(|e| e.to_string())?;
                for w in Word::all_of_length(k, 2) {
                    if ls.coeff(&w).unwrap() != ls_closed_form_2(&r, &w) {
                        return err(format!("degree-2 form fails at {w}"));
                    }
                }
                for w in Word::all_of_length(k, 3) {
                    if ls.coeff(&w).unwrap() != ls_closed_form_3(&r, &w) {
                        return err(format!("degree-3 form fails at {w}"));
                    }
                }
                for w in Word::all_of_length(k, 4) {
                    if ls.coeff(&w).unwrap() != ls_closed_form_4(&r, &w) {
                        return err(format!("degree-4 form fails at {w}"));
                    }
                }
            }
            Ok("collected forms match on random rational cumulants".to_string())
        },
    ));

    out.push(check(
        "chain-sum-round-trip",
        "the chain sum and its recursive inverse are mutually inverse",
        || {
            let mut rng = SplitMix64::new(0x15_05);
            for k in 1..=2usize {
                let r = fixtures::random_sparse_r(k, degree, &mut rng);
                if freeprob::r_from_ls(&freeprob::ls_from_r(&r).unwrap())
                    .map_err(|e| e.to_string())?
                    != r
                {
                    return err(format!("round trip fails at k={k}"));
                }
                let ls = fixtures::random_sparse_ls(k, degree, &mut rng);
                if freeprob::ls_from_r(&freeprob::r_from_ls(&ls).unwrap())
                    .map_err(|e| e.to_string())?
                    != ls
                {
                    return err(format!("reverse round trip fails at k={k}"));
                }
            }
            Ok("both round trips exact".to_string())
        },
    ));

    Ok(out)
}

// -------------------------------------------------------------------- sym

pub fn sym_checks(n_max: usize) -> Result<Vec<Check>> {
    let n_max = n_max.clamp(3, 6);
    let mut out = Vec::new();

    out.push(check(
        "distinguished-values",
        "the first distinguished functions expand as recorded in the elementary basis",
        || {
            let e = |parts: &[usize]| IntPartition::new(parts.to_vec()).unwrap();
            let mut y3 = SymPoly::from_term(e(&[2]), int(1));
            y3.add_term(e(&[1, 1]), int(1));
            let mut y4 = SymPoly::from_term(e(&[3]), int(1));
            y4.add_term(e(&[2, 1]), int(3));
            y4.add_term(e(&[1, 1, 1]), int(1));
            let mut y5 = SymPoly::from_term(e(&[4]), int(1));
            y5.add_term(e(&[3, 1]), int(4));
            y5.add_term(e(&[2, 2]), int(2));
            y5.add_term(e(&[2, 1, 1]), int(6));
            y5.add_term(e(&[1, 1, 1, 1]), int(1));
            let expected = [SymPoly::elementary(1), y3, y4, y5];
            for (n, want) in (2..=5).zip(expected) {
                if symqsym::y_poly(n).unwrap() != want {
                    return err(format!("expansion differs at n={n}"));
                }
            }
            Ok("first four expansions verbatim".to_string())
        },
    ));

    out.push(check(
        "distinguished-coproduct-3",
        "the degree-2 distinguished function comultiplies with the 3-fold middle term",
        || {
            let y3 = symqsym::y_poly(3).unwrap();
            let y2 = symqsym::y_poly(2).unwrap();
            let got = symqsym::delta_sym(&y3);
            let expected = symqsym::tensor_of(&y3, &SymPoly::one())
                .add(&symqsym::tensor_of(&y2, &y2).scale(&int(3)))
                .add(&symqsym::tensor_of(&SymPoly::one(), &y3));
            if got != expected {
                return err("coproduct differs".to_string());
            }
            Ok("matches the recorded three-term expansion".to_string())
        },
    ));

    out.push(check(
        "distinguished-coproduct",
        "the distinguished functions comultiply through the complement pairing",
        || {
            for n in 2..=n_max.min(5) {
                let lhs = symqsym::delta_sym(&symqsym::y_poly(n).unwrap());
                let mut rhs = symqsym::SymTensor::default();
                for p in nclat::enumerate_nc(n).map_err(|e| e.to_string())? {
                    let left = symqsym::y_partition_product(&p).unwrap();
                    let right = symqsym::y_partition_product(&p.kreweras()).unwrap();
                    rhs = rhs.add(&symqsym::tensor_of(&left, &right));
                }
                if lhs != rhs {
                    return err(format!("pairing fails at n={n}"));
                }
            }
            Ok(format!("pairing verified for n <= {}", n_max.min(5)))
        },
    ));

    out.push(check(
        "newton-identity",
        "alternating power-sum/elementary products telescope to n times the elementary",
        || {
            let p = symqsym::p_polys(n_max);
            for n in 1..=n_max {
                let mut acc = SymPoly::zero();
                for i in 1..=n {
                    let sign = if i % 2 == 1 { int(1) } else { int(-1) };
                    acc = acc.add(&p[i].mul(&SymPoly::elementary(n - i)).scale(&sign));
                }
                if acc != SymPoly::elementary(n).scale(&int(n as i64)) {
                    return err(format!("identity fails at n={n}"));
                }
            }
            Ok(format!("symbolic identity through n = {n_max}"))
        },
    ));

    out.push(check(
        "base-change-round-trip",
        "reciprocal and logarithm base changes between generator families invert exactly",
        || {
            let e_series: Vec<SymPoly> = (0..=n_max).map(SymPoly::elementary).collect();
            let back = symqsym::poly_series_reciprocal(&symqsym::poly_series_reciprocal(&e_series));
            if back != e_series {
                return err("double reciprocal is not the identity".to_string());
            }
            let log = symqsym::poly_series_log(&e_series);
            if symqsym::poly_series_exp(&log) != e_series {
                return err("exp does not invert log".to_string());
            }
            Ok("double reciprocal and exp-of-log both recover the generators".to_string())
        },
    ));

    out.push(check(
        "character-factorization",
        "the series character evaluated on distinguished functions returns the cumulants",
        || {
            let mut rng = SplitMix64::new(0x57_01);
            for _ in 0..4 {
                let d = fixtures::random_distribution(1, n_max, &mut rng);
                let theta =
                    symqsym::theta_from_s(d.s_transform().map_err(|e| e.to_string())?, n_max - 1)
                        .map_err(|e| e.to_string())?;
                let r = d.r_transform();
                for n in 2..=n_max {
                    let got = theta
                        .eval_poly(&symqsym::y_poly(n).unwrap())
                        .map_err(|e| e.to_string())?;
                    let want = r.coeff(&Word::constant(1, n)).unwrap();
                    if got != want {
                        return err(format!("differs at n={n}"));
                    }
                }
            }
            Ok(format!(
                "factorization through n = {n_max} on random inputs"
            ))
        },
    ));

    out.push(check(
        "log-character-chain-sum",
        "the log of the series character on distinguished functions equals the chain sum",
        || {
            let mut rng = SplitMix64::new(0x57_02);
            for _ in 0..4 {
                let d = fixtures::random_distribution(1, n_max, &mut rng);
                let theta =
                    symqsym::theta_from_s(d.s_transform().map_err(|e| e.to_string())?, n_max - 1)
                        .map_err(|e| e.to_string())?;
                let log = symqsym::sym_log(&theta).map_err(|e| e.to_string())?;
                let ls = d.ls_transform().map_err(|e| e.to_string())?;
                for n in 2..=n_max {
                    let got = log
                        .eval_poly(&symqsym::y_poly(n).unwrap())
                        .map_err(|e| e.to_string())?;
                    let want = ls.coeff(&Word::constant(1, n)).unwrap();
                    if got != want {
                        return err(format!("differs at n={n}"));
                    }
                }
                // the log is an infinitesimal character: it vanishes on
                // every product of two positive-weight monomials
                for m in 0..=log.degree() {
                    for p in symqsym::partitions_of(m) {
                        if p.parts().len() >= 2
                            && !log.eval_partition(&p).map_err(|e| e.to_string())?.is_zero()
                        {
                            return err(format!("log not infinitesimal at {p}"));
                        }
                    }
                }
            }
            Ok(format!("agreement through n = {n_max} on random inputs"))
        },
    ));

    out.push(check(
        "minus-z-log-s",
        "the one-variable chain sum equals minus z times the log of the S-transform",
        || {
            let mut rng = SplitMix64::new(0x57_03);
            for _ in 0..4 {
                let d = fixtures::random_distribution(1, n_max, &mut rng);
                let via_s = d.ls_via_s().map_err(|e| e.to_string())?;
                let ls = d.ls_transform().map_err(|e| e.to_string())?;
                for n in 2..=n_max {
                    if ls.coeff(&Word::constant(1, n)).unwrap() != via_s.coeff(n) {
                        return err(format!("differs at degree {n}"));
                    }
                }
            }
            let fp = Distribution::free_poisson(n_max);
            let ls = fp.ls_via_s().map_err(|e| e.to_string())?;
            for n in 2..=n_max {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                if ls.coeff(n) != ratio(sign, (n - 1) as i64) {
                    return err(format!("closed form differs at degree {n}"));
                }
            }
            Ok("routes agree; the all-ones closed form is reproduced".to_string())
        },
    ));

    out.push(check(
        "quasi-shuffle-products",
        "the overlapping-shuffle products reproduce the recorded expansions",
        || {
            let c = |parts: &[usize]| symqsym::Composition::new(parts.to_vec()).unwrap();
            let m1 = symqsym::QSymPoly::monomial(c(&[1]));
            let m11 = symqsym::QSymPoly::monomial(c(&[1, 1]));
            let mut want = symqsym::QSymPoly::zero();
            want.add_term(c(&[1, 1, 1]), int(3));
            want.add_term(c(&[2, 1]), int(1));
            want.add_term(c(&[1, 2]), int(1));
            if m1.mul(&m11) != want {
                return err("the product of the two smallest monomials differs".to_string());
            }
            let mut want = symqsym::QSymPoly::zero();
            want.add_term(c(&[1, 1, 1]), int(6));
            want.add_term(c(&[2, 1]), int(3));
            want.add_term(c(&[1, 2]), int(3));
            want.add_term(c(&[3]), int(1));
            if m1.mul(&m1).mul(&m1) != want {
                return err("the cube expansion differs".to_string());
            }
            Ok("recorded products reproduced".to_string())
        },
    ));

    out.push(check(
        "chain-indexed-expansion",
        "the chain-indexed quasi-symmetric expansion collects to the elementary route",
        || {
            let chains4 = nclat::enumerate_chains(4).map_err(|e| e.to_string())?;
            if chains4.len() != 29 {
                return err(format!("expected 29 chains at n=4, got {}", chains4.len()));
            }
            let c = |parts: &[usize]| symqsym::Composition::new(parts.to_vec()).unwrap();
            let mut want = symqsym::QSymPoly::zero();
            want.add_term(c(&[1, 1, 1]), int(16));
            want.add_term(c(&[2, 1]), int(6));
            want.add_term(c(&[1, 2]), int(6));
            want.add_term(c(&[3]), int(1));
            if symqsym::sym_to_qsym(&symqsym::y_poly(4).unwrap()) != want {
                return err("collected degree-4 expansion differs".to_string());
            }
            for n in 2..=n_max {
                if symqsym::y_via_chains(n).map_err(|e| e.to_string())?
                    != symqsym::sym_to_qsym(&symqsym::y_poly(n).unwrap())
                {
                    return err(format!("routes differ at n={n}"));
                }
            }
            Ok(format!(
                "29 pre-collection terms; routes agree for n <= {n_max}"
            ))
        },
    ));

    out.push(check(
        "zeta-characters",
        "the zeta character takes value 1 on every distinguished function",
        || {
            if !symqsym::zeta_check(n_max).map_err(|e| e.to_string())? {
                return err("zeta check fails".to_string());
            }
            // the same values arise from the all-ones cumulant character
            let fp = Distribution::free_poisson(n_max + 1);
            let r = fp.r_transform();
            let zeta = SymFunctional::zeta(n_max);
            for n in 2..=n_max + 1 {
                let via_bridge = zeta
                    .eval_poly(&symqsym::y_poly(n).unwrap())
                    .map_err(|e| e.to_string())?;
                let direct = r.coeff(&Word::constant(1, n)).unwrap();
                if via_bridge != direct {
                    return err(format!("values differ at n={n}"));
                }
            }
            Ok(format!("value 1 through n = {}", n_max + 1))
        },
    ));

    out.push(check(
        "graded-dimensions",
        "monomial counts in each degree equal the number of integer partitions",
        || {
            let alg = hopfy::shared(1);
            let basis = alg.basis(8);
            for n in 0..=8usize {
                let got = basis.iter().filter(|m| m.degree() == n).count();
                let want = symqsym::partitions_of(n).len();
                if got != want {
                    return err(format!("degree {n}: {got} monomials vs p(n) = {want}"));
                }
            }
            Ok("dimensions agree through degree 8".to_string())
        },
    ));

    out.push(check(
        "recursion-route",
        "the gap recursion rebuilds the distinguished functions",
        || {
            for n in 2..=(n_max + 1).min(7) {
                if symqsym::y_poly(n).unwrap() != symqsym::y_poly_recursive(n).unwrap() {
                    return err(format!("routes differ at n={n}"));
                }
            }
            Ok(format!("agreement for n <= {}", (n_max + 1).min(7)))
        },
    ));

    Ok(out)
}
