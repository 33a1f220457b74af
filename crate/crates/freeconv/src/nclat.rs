//! The lattice of non-crossing partitions of `{1..n}`.
//!
//! Partitions are kept in canonical form (blocks sorted by minimum, each
//! block ascending), ordered by reversed refinement, and related through
//! the (relative) complementation map defined by permutation products.
//! Chains and multi-chains from the bottom to the top of the lattice are
//! enumerated here; they drive the chain-sum transforms downstream.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// Largest ground set accepted by the enumerator.
pub const MAX_GROUND_SET: usize = 9;
/// Largest ground set for which chains are enumerated.
pub const MAX_CHAIN_GROUND_SET: usize = 8;

/// A non-crossing set partition of `{1..n}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl NcPartition {
    /// Builds a partition from blocks, canonicalizing their order and
    /// validating that they partition `{1..n}` without crossings.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("ground set must be non-empty"));
        }
        let mut blocks: Vec<Vec<usize>> = blocks;
        for b in &mut blocks {
            b.sort_unstable();
            if b.is_empty() {
                return Err(Error::domain("empty block"));
            }
        }
        blocks.sort_unstable();
        let mut seen = vec![false; n + 1];
        let mut count = 0usize;
        for b in &blocks {
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::domain(format!("element {x} outside 1..{n}")));
                }
                if seen[x] {
                    return Err(Error::domain(format!("element {x} repeated")));
                }
                seen[x] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::domain("blocks do not cover the ground set"));
        }
        let p = NcPartition { n, blocks };
        if !p.is_noncrossing() {
            return Err(Error::domain(format!("crossing blocks in {p}")));
        }
        Ok(p)
    }

    /// The minimal element: `n` singleton blocks.
    pub fn bottom(n: usize) -> Self {
        NcPartition {
            n,
            blocks: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// The maximal element: one block `{1..n}`.
    pub fn top(n: usize) -> Self {
        NcPartition {
            n,
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Multiset of block sizes, sorted ascending.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn is_bottom(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn is_top(&self) -> bool {
        self.blocks.len() == 1
    }

    fn is_noncrossing(&self) -> bool {
        // Two blocks cross iff their merged label sequence alternates
        // at least three times.
        for (i, a) in self.blocks.iter().enumerate() {
            for b in self.blocks.iter().skip(i + 1) {
                if blocks_cross(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Reversed refinement: `self <= other` iff every block of `other`
    /// is a union of blocks of `self`.
    pub fn leq(&self, other: &NcPartition) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::domain(format!(
                "ground sets differ: {} vs {}",
                self.n, other.n
            )));
        }
        let idx = other.block_index();
        for b in &self.blocks {
            let target = idx[b[0] - 1];
            if b.iter().any(|&x| idx[x - 1] != target) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For each element `i` (0-indexed slot `i-1`), the index of its block.
    fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0usize; self.n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                idx[x - 1] = bi;
            }
        }
        idx
    }

    /// The permutation whose cycles traverse each block in increasing order.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.n).collect();
        for b in &self.blocks {
            for w in b.windows(2) {
                images[w[0] - 1] = w[1];
            }
            images[b[b.len() - 1] - 1] = b[0];
        }
        Permutation { n: self.n, images }
    }

    /// The complement of `self` inside `outer`, defined through the
    /// permutation product `P_self^{-1} . P_outer` (applied right to left).
    /// Requires `self <= outer`.
    pub fn relative_kreweras(&self, outer: &NcPartition) -> Result<NcPartition> {
        if !self.leq(outer)? {
            return Err(Error::domain(format!(
                "{self} is not below {outer} in reversed refinement"
            )));
        }
        let prod = self.permutation().inverse().compose(&outer.permutation());
        NcPartition::from_permutation(&prod)
    }

    /// The complement with respect to the maximal element.
    pub fn kreweras(&self) -> NcPartition {
        let top = NcPartition::top(self.n);
        self.relative_kreweras(&top)
            .expect("complement of a valid partition")
    }

    /// Rebuilds the partition whose associated permutation is `p`, failing
    /// if no non-crossing partition realizes it.
    fn from_permutation(p: &Permutation) -> Result<NcPartition> {
        let blocks = p.cycle_supports();
        let cand = NcPartition::new(p.n, blocks)
            .map_err(|_| Error::invariant(format!("permutation {p:?} has crossing cycles")))?;
        if cand.permutation() != *p {
            return Err(Error::invariant(format!(
                "permutation {p:?} does not traverse its cycles in increasing order"
            )));
        }
        Ok(cand)
    }

    /// Restriction of `self` to a block `b` of an outer partition, with the
    /// elements of `b` renumbered to `1..b.len()` in increasing order.
    pub fn restrict_renumbered(&self, b: &[usize]) -> Result<NcPartition> {
        let mut pos = HashMap::new();
        for (i, &x) in b.iter().enumerate() {
            pos.insert(x, i + 1);
        }
        let mut blocks = Vec::new();
        for blk in &self.blocks {
            let inner: Vec<usize> = blk.iter().filter_map(|x| pos.get(x).copied()).collect();
            if !inner.is_empty() && inner.len() != blk.len() {
                return Err(Error::domain(format!(
                    "block {blk:?} straddles the restriction set {b:?}"
                )));
            }
            if !inner.is_empty() {
                blocks.push(inner);
            }
        }
        NcPartition::new(b.len(), blocks)
    }
}

fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let mut ia = 0;
    let mut ib = 0;
    let mut last = 0u8; // 0 none, 1 from a, 2 from b
    let mut switches = 0;
    while ia < a.len() || ib < b.len() {
        let take_a = ib == b.len() || (ia < a.len() && a[ia] < b[ib]);
        let label = if take_a { 1 } else { 2 };
        if take_a {
            ia += 1;
        } else {
            ib += 1;
        }
        if last != 0 && label != last {
            switches += 1;
        }
        last = label;
    }
    switches >= 3
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for NcPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NcPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        let n = blocks.iter().map(|b| b.len()).sum();
        NcPartition::new(n, blocks).map_err(D::Error::custom)
    }
}

/// A permutation of `{1..n}`; `images[i-1]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    n: usize,
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::domain("images are not a bijection of 1..n"));
            }
            seen[x] = true;
        }
        Ok(Permutation { n, images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            n,
            images: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.n];
        for (i, &y) in self.images.iter().enumerate() {
            images[y - 1] = i + 1;
        }
        Permutation { n: self.n, images }
    }

    /// Right-to-left composition: `(self.compose(g))(x) = self(g(x))`.
    pub fn compose(&self, g: &Permutation) -> Permutation {
        assert_eq!(self.n, g.n, "composing permutations of different sizes");
        let images = (1..=self.n).map(|x| self.apply(g.apply(x))).collect();
        Permutation { n: self.n, images }
    }

    /// Supports of the cycles, each sorted ascending.
    fn cycle_supports(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            cyc.sort_unstable();
            out.push(cyc);
        }
        out
    }
}

/// A weakly increasing tuple from the bottom to the top of the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiChain {
    n: usize,
    elements: Vec<NcPartition>,
}

impl MultiChain {
    /// Validates endpoints and the weak order along the tuple.
    pub fn new(elements: Vec<NcPartition>) -> Result<Self> {
        if elements.len() < 2 {
            return Err(Error::domain("a multi-chain has at least one step"));
        }
        let n = elements[0].ground_size();
        if !elements[0].is_bottom() {
            return Err(Error::domain("multi-chain must start at the bottom"));
        }
        if !elements[elements.len() - 1].is_top() {
            return Err(Error::domain("multi-chain must end at the top"));
        }
        for w in elements.windows(2) {
            if !w[0].leq(&w[1])? {
                return Err(Error::domain("multi-chain is not weakly increasing"));
            }
        }
        Ok(MultiChain { n, elements })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[NcPartition] {
        &self.elements
    }

    /// The relative complements along the steps:
    /// the `j`-th entry is the complement of element `j` inside element `j+1`.
    pub fn step_complements(&self) -> Result<Vec<NcPartition>> {
        self.elements
            .windows(2)
            .map(|w| w[0].relative_kreweras(&w[1]))
            .collect()
    }
}

/// A strictly increasing multi-chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain(MultiChain);

impl Chain {
    pub fn new(elements: Vec<NcPartition>) -> Result<Self> {
        let mc = MultiChain::new(elements)?;
        for w in mc.elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::domain("chain elements must strictly increase"));
            }
        }
        Ok(Chain(mc))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[NcPartition] {
        self.0.elements()
    }

    pub fn as_multichain(&self) -> &MultiChain {
        &self.0
    }
}

impl From<Chain> for MultiChain {
    fn from(c: Chain) -> MultiChain {
        c.0
    }
}

/// All non-crossing partitions of `{1..n}`, canonical, sorted by their
/// block encoding. Built by choosing the block of the least element and
/// recursing into the gaps it leaves, so it is independent of the
/// filter-all-set-partitions oracle used in tests.
pub fn enumerate_nc(n: usize) -> Result<Vec<NcPartition>> {
    if n == 0 || n > MAX_GROUND_SET {
        return Err(Error::domain(format!(
            "ground set size {n} outside 1..={MAX_GROUND_SET}"
        )));
    }
    let elems: Vec<usize> = (1..=n).collect();
    let mut out: Vec<NcPartition> = noncrossing_of(&elems)
        .into_iter()
        .map(|mut blocks| {
            blocks.sort_unstable();
            NcPartition { n, blocks }
        })
        .collect();
    out.sort_unstable_by(|a, b| a.blocks.cmp(&b.blocks));
    Ok(out)
}

fn noncrossing_of(elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if elems.is_empty() {
        return vec![vec![]];
    }
    let first = elems[0];
    let rest = &elems[1..];
    let mut out = Vec::new();
    // Every subset of the remaining elements may join the block of the
    // least element; the gaps between consecutive members of that block
    // are partitioned independently.
    for mask in 0..(1u32 << rest.len()) {
        let mut block = vec![first];
        let mut gaps: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, &x) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                block.push(x);
                gaps.push(Vec::new());
            } else {
                gaps.last_mut().unwrap().push(x);
            }
        }
        let gap_parts: Vec<Vec<Vec<Vec<usize>>>> = gaps.iter().map(|g| noncrossing_of(g)).collect();
        let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![block.clone()]];
        for parts in gap_parts {
            let mut next = Vec::with_capacity(combos.len() * parts.len());
            for c in &combos {
                for p in &parts {
                    let mut merged = c.clone();
                    merged.extend(p.iter().cloned());
                    next.push(merged);
                }
            }
            combos = next;
        }
        out.extend(combos);
    }
    out
}

/// All strictly increasing chains from the bottom to the top of the
/// lattice, of every length, in a deterministic order.
pub fn enumerate_chains(n: usize) -> Result<Vec<Chain>> {
    if !(2..=MAX_CHAIN_GROUND_SET).contains(&n) {
        return Err(Error::domain(format!(
            "chain enumeration needs 2 <= n <= {MAX_CHAIN_GROUND_SET}, got {n}"
        )));
    }
    let idx = chain_index(n)?;
    let all = &idx.partitions;
    Ok(idx
        .raw_chains
        .iter()
        .map(|seq| {
            let elems = seq.iter().map(|&i| all[i as usize].clone()).collect();
            Chain::new(elems).expect("enumerated chain is valid")
        })
        .collect())
}

/// All weakly increasing tuples of `l` steps from bottom to top.
pub fn enumerate_multichains(n: usize, l: usize) -> Result<Vec<MultiChain>> {
    if n == 0 || n > MAX_CHAIN_GROUND_SET {
        return Err(Error::domain(format!(
            "multi-chain enumeration needs 1 <= n <= {MAX_CHAIN_GROUND_SET}, got {n}"
        )));
    }
    if l == 0 {
        return Err(Error::domain("multi-chain length must be positive"));
    }
    let all = enumerate_nc(n)?;
    let m = all.len();
    let leq = leq_table(&all)?;
    let bottom = 0usize; // canonical sort puts the all-singleton partition first
    debug_assert!(all[bottom].is_bottom());
    let top = all.iter().position(|p| p.is_top()).unwrap();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = vec![bottom];
    fn rec(
        all: &[NcPartition],
        leq: &[Vec<bool>],
        m: usize,
        top: usize,
        l: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<MultiChain>,
    ) {
        if stack.len() == l + 1 {
            if *stack.last().unwrap() == top {
                let elems = stack.iter().map(|&i| all[i].clone()).collect();
                out.push(MultiChain::new(elems).expect("enumerated multi-chain is valid"));
            }
            return;
        }
        let cur = *stack.last().unwrap();
        for next in 0..m {
            if leq[cur][next] {
                stack.push(next);
                rec(all, leq, m, top, l, stack, out);
                stack.pop();
            }
        }
    }
    rec(&all, &leq, m, top, l, &mut stack, &mut out);
    Ok(out)
}

fn leq_table(all: &[NcPartition]) -> Result<Vec<Vec<bool>>> {
    let m = all.len();
    let mut leq = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            leq[i][j] = all[i].leq(&all[j])?;
        }
    }
    Ok(leq)
}

/// Chain data for one ground-set size, cached process-wide: the sorted
/// lattice, every strict bottom-to-top chain as index tuples, and for each
/// chain the indices of the relative complements along its steps.
pub struct ChainIndex {
    pub partitions: Vec<NcPartition>,
    /// Chains as index tuples `(pi_0, .., pi_l)` into `partitions`.
    pub raw_chains: Vec<Vec<u32>>,
    /// Per chain, the index of the complement of each step.
    pub step_complements: Vec<Vec<u32>>,
}

static CHAIN_CACHE: OnceLock<Mutex<HashMap<usize, Arc<ChainIndex>>>> = OnceLock::new();

/// The cached [`ChainIndex`] for ground-set size `n`.
pub fn chain_index(n: usize) -> Result<Arc<ChainIndex>> {
    if !(2..=MAX_CHAIN_GROUND_SET).contains(&n) {
        return Err(Error::domain(format!(
            "chain index needs 2 <= n <= {MAX_CHAIN_GROUND_SET}, got {n}"
        )));
    }
    let cache = CHAIN_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(found) = guard.get(&n) {
            return Ok(found.clone());
        }
    }
    let built = Arc::new(build_chain_index(n)?);
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry(n).or_insert(built).clone())
}

fn build_chain_index(n: usize) -> Result<ChainIndex> {
    let partitions = enumerate_nc(n)?;
    let m = partitions.len();
    let leq = leq_table(&partitions)?;
    let by_key: HashMap<&[Vec<usize>], u32> = partitions
        .iter()
        .enumerate()
        .map(|(i, p)| (p.blocks.as_slice(), i as u32))
        .collect();
    let bottom = 0usize;
    let top = partitions.iter().position(|p| p.is_top()).unwrap();

    // Strict chains by depth-first extension; any strict increase is
    // allowed, not only covers.
    let mut raw_chains: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<u32> = vec![bottom as u32];
    fn rec(leq: &[Vec<bool>], m: usize, top: usize, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let cur = *stack.last().unwrap() as usize;
        if cur == top {
            out.push(stack.clone());
            return;
        }
        for next in 0..m {
            if next != cur && leq[cur][next] {
                stack.push(next as u32);
                rec(leq, m, top, stack, out);
                stack.pop();
            }
        }
    }
    rec(&leq, m, top, &mut stack, &mut raw_chains);

    // Relative complements per step, deduplicated across chains.
    let mut pair_memo: HashMap<(u32, u32), u32> = HashMap::new();
    let mut step_complements = Vec::with_capacity(raw_chains.len());
    for chain in &raw_chains {
        let mut steps = Vec::with_capacity(chain.len() - 1);
        for w in chain.windows(2) {
            let key = (w[0], w[1]);
            let idx = match pair_memo.get(&key) {
                Some(&i) => i,
                None => {
                    let comp =
                        partitions[w[0] as usize].relative_kreweras(&partitions[w[1] as usize])?;
                    let i = *by_key.get(comp.blocks.as_slice()).ok_or_else(|| {
                        Error::invariant("relative complement missing from enumeration")
                    })?;
                    pair_memo.insert(key, i);
                    i
                }
            };
            steps.push(idx);
        }
        step_complements.push(steps);
    }
    Ok(ChainIndex {
        partitions,
        raw_chains,
        step_complements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nc(n: usize, blocks: &[&[usize]]) -> NcPartition {
        NcPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    /// Oracle: all set partitions of `{1..n}` filtered by the crossing
    /// predicate.
    fn brute_force_nc(n: usize) -> Vec<NcPartition> {
        let mut out: Vec<NcPartition> = crate::fixtures::set_partitions(n)
            .into_iter()
            .filter_map(|blocks| NcPartition::new(n, blocks).ok())
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn enumeration_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132];
        for n in 1..=6 {
            let got = enumerate_nc(n).unwrap();
            assert_eq!(got.len(), catalan[n], "count at n={n}");
            assert_eq!(got, brute_force_nc(n), "filter oracle at n={n}");
        }
    }

    #[test]
    fn enumeration_edges() {
        assert_eq!(enumerate_nc(1).unwrap(), vec![nc(1, &[&[1]])]);
        assert_eq!(enumerate_nc(4).unwrap().len(), 14);
        assert!(enumerate_nc(0).is_err());
        assert!(enumerate_nc(MAX_GROUND_SET + 1).is_err());
    }

    #[test]
    fn nc3_is_the_five_listed_partitions() {
        let got = enumerate_nc(3).unwrap();
        let expected = vec![
            nc(3, &[&[1], &[2], &[3]]),
            nc(3, &[&[1], &[2, 3]]),
            nc(3, &[&[1, 2], &[3]]),
            nc(3, &[&[1, 2, 3]]),
            nc(3, &[&[1, 3], &[2]]),
        ];
        let mut expected = expected;
        expected.sort_unstable();
        assert_eq!(got, expected);
    }

    #[test]
    fn crossing_is_rejected() {
        assert!(NcPartition::new(4, vec![vec![1, 3], vec![2, 4]]).is_err());
        assert!(NcPartition::new(4, vec![vec![1, 4], vec![2, 3]]).is_ok());
    }

    #[test]
    fn order_examples() {
        let p1 = nc(4, &[&[1, 3], &[2], &[4]]);
        let p2 = nc(4, &[&[1, 3, 4], &[2]]);
        assert!(NcPartition::bottom(4).leq(&p2).unwrap());
        assert!(p1.leq(&p2).unwrap());
        let a = nc(3, &[&[1, 2], &[3]]);
        let b = nc(3, &[&[1, 3], &[2]]);
        assert!(!a.leq(&b).unwrap());
        assert!(!b.leq(&a).unwrap());
        assert!(a.leq(&NcPartition::bottom(4)).is_err());
    }

    #[test]
    fn permutations_of_extremes() {
        assert_eq!(
            NcPartition::bottom(5).permutation(),
            Permutation::identity(5)
        );
        let top = NcPartition::top(4).permutation();
        assert_eq!(top.images(), &[2, 3, 4, 1]);
        let p = nc(4, &[&[1, 3], &[2], &[4]]);
        assert_eq!(p.permutation().images(), &[3, 2, 1, 4]);
    }

    #[test]
    fn relative_complement_worked_example() {
        // the two middle steps of the length-3 worked chain on 4 points
        let p1 = nc(4, &[&[1, 3], &[2], &[4]]);
        let p2 = nc(4, &[&[1, 3, 4], &[2]]);
        assert_eq!(
            p1.relative_kreweras(&p2).unwrap(),
            nc(4, &[&[1], &[2], &[3, 4]])
        );
        assert_eq!(p2.kreweras(), nc(4, &[&[1, 2], &[3], &[4]]));
        // bottom relative to any outer partition gives that partition back
        for r in enumerate_nc(4).unwrap() {
            assert_eq!(
                NcPartition::bottom(4).relative_kreweras(&r).unwrap(),
                r.clone()
            );
        }
        // incomparable pair must error
        let a = nc(3, &[&[1, 2], &[3]]);
        let b = nc(3, &[&[1, 3], &[2]]);
        assert!(a.relative_kreweras(&b).is_err());
    }

    #[test]
    fn kreweras_identities_small() {
        for n in 1..=5 {
            let all = enumerate_nc(n).unwrap();
            for p in &all {
                for r in &all {
                    if !p.leq(r).unwrap() {
                        continue;
                    }
                    let comp = p.relative_kreweras(r).unwrap();
                    // block-count identity
                    assert_eq!(comp.block_count(), n + r.block_count() - p.block_count());
                    // domination by the absolute complement
                    assert!(comp.leq(&p.kreweras()).unwrap());
                    // inverse pairing
                    let paired = comp.relative_kreweras(&p.kreweras()).unwrap();
                    assert_eq!(paired, r.kreweras());
                }
            }
        }
    }

    #[test]
    fn chain_counts() {
        assert_eq!(enumerate_chains(2).unwrap().len(), 1);
        let c3 = enumerate_chains(3).unwrap();
        assert_eq!(c3.len(), 4);
        assert_eq!(c3.iter().filter(|c| c.len() == 1).count(), 1);
        assert_eq!(c3.iter().filter(|c| c.len() == 2).count(), 3);
        let c4 = enumerate_chains(4).unwrap();
        assert_eq!(c4.len(), 29);
        assert_eq!(c4.iter().filter(|c| c.len() == 1).count(), 1);
        assert_eq!(c4.iter().filter(|c| c.len() == 2).count(), 12);
        assert_eq!(c4.iter().filter(|c| c.len() == 3).count(), 16);
        assert!(enumerate_chains(1).is_err());
        assert!(enumerate_chains(MAX_CHAIN_GROUND_SET + 1).is_err());
    }

    #[test]
    fn multichain_counts() {
        let m = enumerate_multichains(2, 1).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].elements().len(), 2);
        let m = enumerate_multichains(2, 2).unwrap();
        assert_eq!(m.len(), 2);
        // middle element ranges over the whole lattice
        assert_eq!(enumerate_multichains(3, 2).unwrap().len(), 5);
        // two free middles: exhaustive listing gives 12
        assert_eq!(enumerate_multichains(3, 3).unwrap().len(), 12);
        assert!(enumerate_multichains(3, 0).is_err());
    }

    #[test]
    fn multichain_n1() {
        let m = enumerate_multichains(1, 3).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].elements().iter().all(|p| p.is_top()));
    }

    #[test]
    fn chain_step_complements_match_chain_index() {
        let idx = chain_index(4).unwrap();
        let chains = enumerate_chains(4).unwrap();
        for (c, steps) in chains.iter().zip(&idx.step_complements) {
            let direct = c.as_multichain().step_complements().unwrap();
            let via_index: Vec<NcPartition> = steps
                .iter()
                .map(|&i| idx.partitions[i as usize].clone())
                .collect();
            assert_eq!(direct, via_index);
        }
    }

    #[test]
    fn serde_blocks_form() {
        let p = nc(4, &[&[1, 3], &[2], &[4]]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1,3],[2],[4]]");
        let back: NcPartition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<NcPartition>("[[1,3],[2,4]]").is_err());
    }
}
