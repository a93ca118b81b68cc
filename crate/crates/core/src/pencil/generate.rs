//! Seeded instances: canonical direct sums hidden by a random congruence.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_jordan_block, build_kronecker_block, congruence_transform, direct_sum};
use super::{Eigen, JKInvariants, JordanEntry, ProjParam, SkewPencil};
use crate::error::{JkError, Result};
use crate::exactalg::{rat, RatMatrix};

/// One canonical block: `J:e:m` (Jordan, eigenvalue `e`, half-size `m`) or
/// `K:k` (Kronecker index `k`, size `2k - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSpec {
    Jordan(ProjParam, usize),
    Kronecker(usize),
}

impl BlockSpec {
    pub fn size(&self) -> usize {
        match self {
            BlockSpec::Jordan(_, m) => 2 * m,
            BlockSpec::Kronecker(k) => 2 * k - 1,
        }
    }

    pub fn build(&self) -> Result<SkewPencil> {
        match self {
            BlockSpec::Jordan(e, m) => build_jordan_block(e, *m),
            BlockSpec::Kronecker(k) => build_kronecker_block(*k),
        }
    }
}

impl std::fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockSpec::Jordan(e, m) => write!(f, "J:{e}:{m}"),
            BlockSpec::Kronecker(k) => write!(f, "K:{k}"),
        }
    }
}

/// Parses a comma-separated list such as `J:2:2,K:3,J:inf:1`.
pub fn parse_block_spec(s: &str) -> Result<Vec<BlockSpec>> {
    let bad = |item: &str, why: &str| JkError::Parse(format!("bad block '{item}': {why}"));
    let count = |item: &str, t: &str| -> Result<usize> {
        match t.trim().parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(bad(item, "sizes are positive integers")),
        }
    };
    s.split(',')
        .map(|item| {
            let parts: Vec<&str> = item.trim().split(':').collect();
            match parts.as_slice() {
                ["J", e, m] => Ok(BlockSpec::Jordan(
                    ProjParam::parse(e).map_err(|_| bad(item, "eigenvalue must be rational or inf"))?,
                    count(item, m)?,
                )),
                ["K", k] => Ok(BlockSpec::Kronecker(count(item, k)?)),
                _ => Err(bad(item, "expected J:<eig>:<halfsize> or K:<index>")),
            }
        })
        .collect()
}

/// Invariants read off the block list.
pub fn expected_invariants(blocks: &[BlockSpec]) -> JKInvariants {
    let mut kronecker = Vec::new();
    let mut jordan: BTreeMap<Eigen, Vec<usize>> = BTreeMap::new();
    for b in blocks {
        match b {
            BlockSpec::Kronecker(k) => kronecker.push(*k),
            BlockSpec::Jordan(e, m) => {
                let key = match e {
                    ProjParam::Finite(r) => Eigen::Finite(r.clone()),
                    ProjParam::Infinity => Eigen::Infinite,
                };
                jordan.entry(key).or_default().push(*m);
            }
        }
    }
    kronecker.sort_unstable();
    let n: usize = blocks.iter().map(BlockSpec::size).sum();
    JKInvariants {
        n,
        rank: n - kronecker.len(),
        kronecker,
        jordan: jordan
            .into_iter()
            .map(|(eig, mut halfsizes)| {
                halfsizes.sort_unstable();
                JordanEntry { eig, halfsizes }
            })
            .collect(),
    }
}

/// Invertible `n x n` integer matrix with entries in `[-bound, bound]`.
pub fn random_invertible<R: Rng>(n: usize, bound: i64, rng: &mut R) -> RatMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect()).collect::<Vec<_>>();
        let s = RatMatrix::from_i64(&rows);
        if s.rank() == n {
            return s;
        }
    }
}

/// Direct sum of the blocks, congruence-transformed by a seeded random
/// matrix with entries in `[-3, 3]`, or left canonical when `seed` is `None`.
pub fn generate(blocks: &[BlockSpec], seed: Option<u64>) -> Result<SkewPencil> {
    let parts = blocks.iter().map(BlockSpec::build).collect::<Result<Vec<_>>>()?;
    let p = direct_sum(&parts);
    match seed {
        None => Ok(p),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            congruence_transform(&p, &random_invertible(p.n(), 3, &mut rng))
        }
    }
}

/// Random block list of total size at most `max_n` with at most `max_blocks`
/// blocks; eigenvalues are drawn from `{-2, ..., 2, inf}`.
pub fn random_blocks<R: Rng>(max_blocks: usize, max_n: usize, rng: &mut R) -> Vec<BlockSpec> {
    let count = rng.gen_range(1..=max_blocks);
    let mut out = Vec::new();
    let mut used = 0;
    for _ in 0..count {
        let b = if rng.gen_bool(0.5) {
            let e = match rng.gen_range(-2i64..=3) {
                3 => ProjParam::Infinity,
                v => ProjParam::Finite(rat(v)),
            };
            BlockSpec::Jordan(e, rng.gen_range(1..=3))
        } else {
            BlockSpec::Kronecker(rng.gen_range(1..=4))
        };
        if used + b.size() <= max_n {
            used += b.size();
            out.push(b);
        }
    }
    if out.is_empty() {
        out.push(BlockSpec::Kronecker(1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::jk_invariants;

    #[test]
    fn parses_specs() {
        let b = parse_block_spec("J:2:2, K:3,J:inf:1").unwrap();
        assert_eq!(b[0], BlockSpec::Jordan(ProjParam::int(2), 2));
        assert_eq!(b[1], BlockSpec::Kronecker(3));
        assert_eq!(b[2], BlockSpec::Jordan(ProjParam::Infinity, 1));
        assert_eq!(b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), "J:2:2,K:3,J:inf:1");
        for bad in ["", "J:2", "K:0", "X:1", "J:x:1", "K:-1"] {
            assert!(matches!(parse_block_spec(bad), Err(JkError::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn identity_generation_is_canonical() {
        let p = generate(&parse_block_spec("K:3").unwrap(), None).unwrap();
        assert_eq!(p, build_kronecker_block(3).unwrap());
        let p = generate(&parse_block_spec("J:inf:1").unwrap(), None).unwrap();
        assert_eq!(p.n(), 2);
        assert!(p.b().is_zero());
    }

    #[test]
    fn seeded_generation_is_deterministic_and_keeps_invariants() {
        let b = parse_block_spec("J:2:2,K:2,J:inf:1").unwrap();
        let p = generate(&b, Some(11)).unwrap();
        assert_eq!(p, generate(&b, Some(11)).unwrap());
        assert_ne!(p, generate(&b, None).unwrap());
        assert_eq!(jk_invariants(&p).unwrap(), expected_invariants(&b));
    }
}
