//! Finite alternating multiple zeta values modulo primes.
//!
//! For a signed index `a = (a_1, ..., a_r)` and an odd prime `p` the value is
//!
//! ```text
//! sum_{0 < m_1 < ... < m_r < p}  prod_i sgn(a_i)^{m_i} / m_i^{|a_i|}   (mod p)
//! ```
//!
//! [`ZetaEngine`] evaluates it with a running-sum recurrence in `O(r p)` after a
//! single batch inversion; [`famzv_naive`] is the literal nested sum and serves
//! as the reference oracle.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::SignedIndex;
use crate::modp::{self, Fp, Residue};

/// Largest prime accepted by [`famzv_naive`].
pub const NAIVE_PRIME_BOUND: u64 = 200;

/// Per-prime evaluator holding the table of inverses `1/m mod p`.
#[derive(Debug, Clone)]
pub struct ZetaEngine {
    fp: Fp,
    inv: Vec<u64>,
}

impl ZetaEngine {
    pub fn new(p: u64) -> Result<Self> {
        let fp = Fp::new(p)?;
        Ok(ZetaEngine {
            fp,
            inv: modp::inverse_table(fp),
        })
    }

    pub fn prime(&self) -> u64 {
        self.fp.modulus()
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn inverses(&self) -> &[u64] {
        &self.inv
    }

    /// Runs the recurrence `T_j(M) = T_j(M-1) + T_{j-1}(M-1) sgn_j^M / M^{|a_j|}`
    /// for `M = 1..p-1`, calling `top` with the increment of the last level
    /// (the coefficient of `z^M` in the polylogarithm series).
    fn run(&self, index: &SignedIndex, mut top: impl FnMut(usize, u64)) -> u64 {
        let fp = self.fp;
        let entries = index.entries();
        let r = entries.len();
        let max_exp = entries
            .iter()
            .map(|a| a.unsigned_abs() as usize)
            .max()
            .unwrap_or(1);
        let mut level = vec![0u64; r + 1];
        level[0] = 1;
        let mut powers = vec![1u64; max_exp + 1];
        for m in 1..fp.modulus() as usize {
            let inv = self.inv[m];
            for e in 1..=max_exp {
                powers[e] = fp.mul(powers[e - 1], inv);
            }
            let odd = m & 1 == 1;
            // descending j so that level[j - 1] still holds T_{j-1}(M - 1)
            for j in (1..=r.min(m)).rev() {
                let a = entries[j - 1];
                let mut term = fp.mul(level[j - 1], powers[a.unsigned_abs() as usize]);
                if a < 0 && odd {
                    term = fp.neg(term);
                }
                if j == r {
                    top(m, term);
                }
                level[j] = fp.add(level[j], term);
            }
        }
        level[r]
    }

    /// The finite alternating multiple zeta value of `index` at this prime.
    pub fn famzv(&self, index: &SignedIndex) -> u64 {
        self.run(index, |_, _| {})
    }

    /// Coefficients `c_0, ..., c_{p-1}` of the polylogarithm series of
    /// `index` reduced mod `p`; their sum is [`Self::famzv`].
    pub fn li_coefficients(&self, index: &SignedIndex) -> Vec<u64> {
        let mut coeffs = vec![0u64; self.prime() as usize];
        self.run(index, |m, c| coeffs[m] = c);
        coeffs
    }
}

/// `zeta_A(index)` at the odd prime `p`.
pub fn famzv(index: &SignedIndex, p: u64) -> Result<Residue> {
    let engine = ZetaEngine::new(p)?;
    Ok(Residue::from_reduced(engine.famzv(index), p))
}

/// Literal nested summation over `0 < m_1 < ... < m_r < p`. Costs
/// `C(p-1, r)` terms; restricted to `p <= 200`.
pub fn famzv_naive(index: &SignedIndex, p: u64) -> Result<Residue> {
    if p > NAIVE_PRIME_BOUND {
        return Err(Error::PrimeTooLarge {
            prime: p,
            bound: NAIVE_PRIME_BOUND,
            what: "the naive oracle",
        });
    }
    let fp = Fp::new(p)?;
    // term[i][m] = sgn(a_i)^m / m^{|a_i|}
    let terms: Vec<Vec<u64>> = index
        .entries()
        .iter()
        .map(|&a| {
            let mut row = vec![0u64; p as usize];
            for m in 1..p {
                let denom = modp::pow_mod(m, a.unsigned_abs() as u64, p);
                let v = modp::inv_mod(denom as i64, p).expect("m < p").value();
                row[m as usize] = if a < 0 && m % 2 == 1 { fp.neg(v) } else { v };
            }
            row
        })
        .collect();

    fn nest(fp: Fp, terms: &[Vec<u64>], level: usize, lower: u64, acc: u64) -> u64 {
        if level == terms.len() {
            return acc;
        }
        let mut total = 0;
        for m in lower..fp.modulus() {
            let next = fp.mul(acc, terms[level][m as usize]);
            total = fp.add(total, nest(fp, terms, level + 1, m + 1, next));
        }
        total
    }
    Ok(Residue::from_reduced(nest(fp, &terms, 0, 1, 1), p))
}

/// A finite slice of an element of the ring `prod Z/p / (+) Z/p`: one residue
/// per listed prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdeleVector {
    values: BTreeMap<u64, u64>,
}

impl AdeleVector {
    pub fn from_values(values: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, v) in values {
            Fp::new(p)?;
            map.insert(p, v % p);
        }
        Ok(AdeleVector { values: map })
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.keys().copied()
    }

    pub fn get(&self, p: u64) -> Option<Residue> {
        self.values.get(&p).map(|&v| Residue::from_reduced(v, p))
    }

    pub fn iter(&self) -> impl Iterator<Item = Residue> + '_ {
        self.values
            .iter()
            .map(|(&p, &v)| Residue::from_reduced(v, p))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `zeta_A(index)` at every prime of `primes`.
pub fn famzv_adele(index: &SignedIndex, primes: &[u64]) -> Result<AdeleVector> {
    let mut values = BTreeMap::new();
    for &p in primes {
        values.insert(p, famzv(index, p)?.value());
    }
    Ok(AdeleVector { values })
}

/// Outcome of comparing two adele vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdeleComparison {
    /// Primes at which the components differ, ascending.
    pub differing: Vec<u64>,
    pub threshold: u64,
}

impl AdeleComparison {
    /// Equal in the quotient ring: every disagreement lies below the threshold.
    pub fn equal(&self) -> bool {
        self.differing.iter().all(|&p| p < self.threshold)
    }

    /// Disagreements at or above the threshold.
    pub fn judged_failures(&self) -> Vec<u64> {
        self.differing
            .iter()
            .copied()
            .filter(|&p| p >= self.threshold)
            .collect()
    }
}

pub fn adele_equal(a: &AdeleVector, b: &AdeleVector, threshold: u64) -> Result<AdeleComparison> {
    if !a.values.keys().eq(b.values.keys()) {
        return Err(Error::param("adele vectors cover different primes"));
    }
    let differing = a
        .values
        .iter()
        .zip(&b.values)
        .filter(|((_, x), (_, y))| x != y)
        .map(|((&p, _), _)| p)
        .collect();
    Ok(AdeleComparison {
        differing,
        threshold,
    })
}

/// One line of the on-disk cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub index: SignedIndex,
    pub p: u64,
    pub value: u64,
}

#[derive(Debug, Default)]
struct CacheInner {
    map: HashMap<(SignedIndex, u64), u64>,
    pending: Vec<CacheRecord>,
}

/// Cache of zeta values keyed by `(index, p)`, persisted as line-delimited JSON.
#[derive(Debug, Default)]
pub struct ZetaCache {
    path: Option<PathBuf>,
    invalid_lines: usize,
    inner: Mutex<CacheInner>,
}

impl ZetaCache {
    pub fn in_memory() -> Self {
        ZetaCache::default()
    }

    /// Loads the cache at `path` (a missing file is an empty cache). Lines that
    /// do not parse, or carry a residue out of range, are skipped and counted.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut inner = CacheInner::default();
        let mut invalid = 0;
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for line in reader.lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(&line) {
                    Ok(rec) if Fp::new(rec.p).is_ok() && rec.value < rec.p => {
                        inner.map.insert((rec.index, rec.p), rec.value);
                    }
                    _ => invalid += 1,
                }
            }
        }
        Ok(ZetaCache {
            path: Some(path),
            invalid_lines: invalid,
            inner: Mutex::new(inner),
        })
    }

    pub fn invalid_lines(&self) -> usize {
        self.invalid_lines
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: &SignedIndex, p: u64) -> Option<u64> {
        self.inner
            .lock()
            .unwrap()
            .map
            .get(&(index.clone(), p))
            .copied()
    }

    pub fn insert(&self, index: &SignedIndex, p: u64, value: u64) {
        let mut inner = self.inner.lock().unwrap();
        if inner.map.insert((index.clone(), p), value).is_none() {
            inner.pending.push(CacheRecord {
                index: index.clone(),
                p,
                value,
            });
        }
    }

    /// Appends records added since the last flush, sorted by `(p, index)`.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut inner = self.inner.lock().unwrap();
        if inner.pending.is_empty() {
            return Ok(());
        }
        let mut pending = std::mem::take(&mut inner.pending);
        pending.sort_by(|a, b| (a.p, &a.index).cmp(&(b.p, &b.index)));
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        for rec in &pending {
            let line = serde_json::to_string(rec).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(file, "{line}")?;
        }
        Ok(())
    }
}

/// Zeta values for a set of indices at one prime, each computed once.
#[derive(Debug, Clone)]
pub struct ZetaTable {
    prime: u64,
    values: HashMap<SignedIndex, u64>,
    computed: usize,
    cache_hits: usize,
}

impl ZetaTable {
    pub fn compute<'a, I>(engine: &ZetaEngine, indices: I, cache: Option<&ZetaCache>) -> Self
    where
        I: IntoIterator<Item = &'a SignedIndex>,
    {
        let p = engine.prime();
        let mut values = HashMap::new();
        let mut computed = 0;
        let mut cache_hits = 0;
        for index in indices {
            if values.contains_key(index) {
                continue;
            }
            let v = match cache.and_then(|c| c.get(index, p)) {
                Some(v) => {
                    cache_hits += 1;
                    v
                }
                None => {
                    computed += 1;
                    let v = engine.famzv(index);
                    if let Some(c) = cache {
                        c.insert(index, p, v);
                    }
                    v
                }
            };
            values.insert(index.clone(), v);
        }
        ZetaTable {
            prime: p,
            values,
            computed,
            cache_hits,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Panics if `index` was not part of the requested set.
    pub fn get(&self, index: &SignedIndex) -> u64 {
        *self
            .values
            .get(index)
            .unwrap_or_else(|| panic!("zeta({index}) was not gathered"))
    }

    pub fn computed(&self) -> usize {
        self.computed
    }

    pub fn cache_hits(&self) -> usize {
        self.cache_hits
    }
}
