//! Signed indices and the combinatorial families built from them.
//!
//! A signed index is a tuple of nonzero integers. An entry `-k` stands for
//! exponent `k` carrying the alternating sign `(-1)^m` on its summation
//! variable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `s + t` for shuffle enumeration.
pub const MAX_SHUFFLE_SIZE: usize = 12;

/// A nonempty tuple of nonzero integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedIndex(Vec<i32>);

/// Weight, depth and total sign of an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexStats {
    pub weight: u32,
    pub depth: usize,
    pub sign: i8,
}

impl SignedIndex {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::IndexLiteral {
                literal: String::new(),
                reason: "an index needs at least one entry".into(),
            });
        }
        if entries.contains(&0) {
            return Err(Error::IndexLiteral {
                literal: format_entries(&entries),
                reason: "entries must be nonzero".into(),
            });
        }
        Ok(SignedIndex(entries))
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    /// Product of the entry signs.
    pub fn sign(&self) -> i8 {
        if self.0.iter().filter(|&&a| a < 0).count() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn stats(&self) -> IndexStats {
        IndexStats {
            weight: self.weight(),
            depth: self.depth(),
            sign: self.sign(),
        }
    }

    pub fn reversed(&self) -> SignedIndex {
        let mut v = self.0.clone();
        v.reverse();
        SignedIndex(v)
    }

    pub fn concat(&self, other: &SignedIndex) -> SignedIndex {
        let mut v = Vec::with_capacity(self.depth() + other.depth());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        SignedIndex(v)
    }

    /// Concatenates a nonempty sequence of indices.
    pub fn concat_all<'a, I>(parts: I) -> SignedIndex
    where
        I: IntoIterator<Item = &'a SignedIndex>,
    {
        let v: Vec<i32> = parts
            .into_iter()
            .flat_map(|p| p.0.iter().copied())
            .collect();
        assert!(!v.is_empty(), "concatenation of no indices");
        SignedIndex(v)
    }

    /// The sequence of one-forms in the iterated-integral expression of the
    /// polylogarithm of this index, innermost variable first.
    ///
    /// Each entry `a_i` opens with `dt/(eta - t)`, where `eta` is the product of
    /// the signs of `a_i` and every entry after it, followed by `|a_i| - 1`
    /// copies of `dt/t`.
    pub fn integral_word(&self) -> Vec<Form> {
        let mut suffix_sign = vec![1i8; self.depth() + 1];
        for i in (0..self.depth()).rev() {
            suffix_sign[i] = suffix_sign[i + 1] * if self.0[i] < 0 { -1 } else { 1 };
        }
        let mut word = Vec::with_capacity(self.weight() as usize);
        for (i, &a) in self.0.iter().enumerate() {
            word.push(if suffix_sign[i] > 0 {
                Form::One
            } else {
                Form::MinusOne
            });
            word.extend(std::iter::repeat_n(
                Form::Zero,
                a.unsigned_abs() as usize - 1,
            ));
        }
        word
    }
}

impl TryFrom<Vec<i32>> for SignedIndex {
    type Error = Error;

    fn try_from(v: Vec<i32>) -> Result<Self> {
        SignedIndex::new(v)
    }
}

impl From<SignedIndex> for Vec<i32> {
    fn from(s: SignedIndex) -> Self {
        s.0
    }
}

fn format_entries(v: &[i32]) -> String {
    v.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_entries(&self.0))
    }
}

impl FromStr for SignedIndex {
    type Err = Error;

    /// Parses the literal syntax `1,-2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::IndexLiteral {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad("empty literal"));
        }
        let entries = trimmed
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i32>()
                    .map_err(|_| bad("entries must be integers"))
            })
            .collect::<Result<Vec<_>>>()?;
        SignedIndex::new(entries).map_err(|_| bad("entries must be nonzero"))
    }
}

/// The three one-forms `dt/(1-t)`, `-dt/(1+t)` and `dt/t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    One,
    MinusOne,
    Zero,
}

/// A tuple of nonnegative integers with a prescribed sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// All `length`-tuples of nonnegative integers summing to `total`, in
/// lexicographic order.
pub fn enumerate_compositions(length: usize, total: u32) -> Vec<Composition> {
    assert!(length >= 1, "compositions need at least one part");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(length);
    fn rec(length: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if current.len() + 1 == length {
            current.push(remaining);
            out.push(Composition {
                parts: current.clone(),
            });
            current.pop();
            return;
        }
        for a in 0..=remaining {
            current.push(a);
            rec(length, remaining - a, current, out);
            current.pop();
        }
    }
    rec(length, total, &mut current, &mut out);
    out
}

/// The family `S_{i,j}`: indices of depth `i + 1` and weight `i + j + 1`.
///
/// With `signed`, every absolute-value pattern is dressed with all `2^{i+1}`
/// sign patterns; otherwise only positive entries appear. Order is
/// lexicographic on (absolute values, sign pattern) with `+` before `-`.
pub fn enumerate_s(i: u32, j: u32, signed: bool) -> Vec<SignedIndex> {
    let depth = i as usize + 1;
    let mut out = Vec::new();
    for comp in enumerate_compositions(depth, j) {
        let abs: Vec<i32> = comp.parts.iter().map(|&c| c as i32 + 1).collect();
        if !signed {
            out.push(SignedIndex(abs));
            continue;
        }
        for mask in 0u32..(1 << depth) {
            let v = abs
                .iter()
                .enumerate()
                // most significant bit is the first entry
                .map(|(k, &a)| {
                    if mask >> (depth - 1 - k) & 1 == 1 {
                        -a
                    } else {
                        a
                    }
                })
                .collect();
            out.push(SignedIndex(v));
        }
    }
    out
}

/// Every index of the given weight (any depth), signed or not.
pub fn indices_of_weight(weight: u32, signed: bool) -> Vec<SignedIndex> {
    (0..weight)
        .flat_map(|i| enumerate_s(i, weight - 1 - i, signed))
        .collect()
}

/// Every index of weight `1..=max_weight`.
pub fn indices_up_to_weight(max_weight: u32, signed: bool) -> Vec<SignedIndex> {
    (1..=max_weight)
        .flat_map(|w| indices_of_weight(w, signed))
        .collect()
}

/// An `(s, t)`-shuffle: a permutation of `1..=s+t` increasing on the first `s`
/// and on the last `t` positions, stored as the map `i -> sigma(i)` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shuffle {
    s: usize,
    t: usize,
    image: Vec<usize>,
}

impl Shuffle {
    pub fn new(s: usize, t: usize, image: Vec<usize>) -> Result<Self> {
        let n = s + t;
        if s == 0 || t == 0 || image.len() != n {
            return Err(Error::param("shuffle needs s, t >= 1 and s + t images"));
        }
        let mut seen = vec![false; n + 1];
        for &x in &image {
            if x == 0 || x > n || seen[x] {
                return Err(Error::param("shuffle image is not a permutation"));
            }
            seen[x] = true;
        }
        let increasing = |w: &[usize]| w.windows(2).all(|p| p[0] < p[1]);
        if !increasing(&image[..s]) || !increasing(&image[s..]) {
            return Err(Error::param("shuffle must increase on both blocks"));
        }
        Ok(Shuffle { s, t, image })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `sigma^{-1}` as a vector indexed by merged position (1-based values).
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| x == i + 1)
    }
}

/// All `C(s+t, s)` shuffles of two blocks, ordered by the positions taken by
/// the first block.
pub fn enumerate_shuffles(s: usize, t: usize) -> Result<Vec<Shuffle>> {
    if s == 0 || t == 0 {
        return Err(Error::param("shuffles need s, t >= 1"));
    }
    if s + t > MAX_SHUFFLE_SIZE {
        return Err(Error::param(format!(
            "s + t = {} exceeds the shuffle bound {MAX_SHUFFLE_SIZE}",
            s + t
        )));
    }
    let n = s + t;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(s);
    fn rec(start: usize, s: usize, t: usize, chosen: &mut Vec<usize>, out: &mut Vec<Shuffle>) {
        let n = s + t;
        if chosen.len() == s {
            let mut image = chosen.clone();
            image.extend((1..=n).filter(|x| !chosen.contains(x)));
            out.push(Shuffle { s, t, image });
            return;
        }
        for x in start..=n {
            chosen.push(x);
            rec(x + 1, s, t, chosen, out);
            chosen.pop();
        }
    }
    rec(1, s, t, &mut chosen, &mut out);
    debug_assert_eq!(out.len() as u64, binomial(n as u64, s as u64));
    Ok(out)
}

/// Exact binomial coefficient (small arguments).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Classification of a member of `S_{q,k}^sgn` into the blocks `T^±_{i,k}`
/// used when matching integrals to polylogarithms: the total sign, and the
/// number `i` of positive (resp. `j` of negative) partial sign products
/// `sgn(a_{r-d}) ... sgn(a_r)` taken over proper suffixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignBlock {
    pub total_sign: i8,
    pub positive_suffixes: u32,
    pub negative_suffixes: u32,
}

pub fn sign_block(index: &SignedIndex) -> SignBlock {
    let mut acc = 1i8;
    let mut pos = 0;
    let mut neg = 0;
    let r = index.depth();
    for (d, &a) in index.entries().iter().rev().enumerate() {
        acc *= if a < 0 { -1 } else { 1 };
        if d + 1 < r {
            if acc > 0 {
                pos += 1;
            } else {
                neg += 1;
            }
        }
    }
    SignBlock {
        total_sign: acc,
        positive_suffixes: pos,
        negative_suffixes: neg,
    }
}
