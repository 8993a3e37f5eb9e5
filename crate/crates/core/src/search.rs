//! Brute-force enumeration of `A^4 + a*B^4 = C^4 + a*D^4` over a box.
//!
//! For `a = m/n` the cleared form `n*A^4 + m*B^4` is tabulated for every
//! `0 <= A, B <= N` in a hash index. Each worker then walks a slice of `C` values
//! and, for every `(C, D)`, looks up the pairs `(A, B) < (C, D)` with the same value.
//! Memory is `O(N^2)` index entries; see [`estimate_index_bytes`].
//!
//! Hits are canonicalized, trivial ones dropped, and duplicates merged in an ordered
//! map, so the output does not depend on the number of workers.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::ExactRat;
use crate::families::{generate, FamilyId};
use crate::quartic::{canonicalize, is_trivial, verify_quadruple, Mode, Quadruple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub a: ExactRat,
    pub bound: u32,
    /// Whether entries may be zero.
    pub include_zero: bool,
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(a: ExactRat, bound: u32) -> Result<Self> {
        let cfg = SearchConfig {
            a,
            bound,
            include_zero: true,
            workers: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_include_zero(mut self, include_zero: bool) -> Self {
        self.include_zero = include_zero;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.a.is_zero() {
            return Err(Error::domain("a must be nonzero"));
        }
        if self.bound == 0 {
            return Err(Error::domain("bound must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::domain("workers must be at least 1"));
        }
        Ok(())
    }

    /// `(m, n)` with `a = m/n`, `n > 0`.
    fn cleared(&self) -> (BigInt, BigInt) {
        (self.a.numer().clone(), self.a.denom().clone())
    }

    /// Whether every index value `n*A^4 + m*B^4` fits an `i128`.
    pub fn fits_native(&self) -> bool {
        let (m, n) = self.cleared();
        let big = BigInt::from(self.bound).pow(4) * (n + m.abs());
        big <= BigInt::from(i128::MAX)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    /// Canonical, primitive and nontrivial.
    pub quad: Quadruple,
    /// Raw `(A, B), (C, D)` index pairs that reduced to `quad`.
    pub witnesses: usize,
}

/// Rough upper estimate of the index size in bytes for `cfg`.
pub fn estimate_index_bytes(cfg: &SearchConfig) -> u128 {
    let side = u128::from(cfg.bound) + 1;
    let key = if cfg.fits_native() {
        16
    } else {
        // BigInt header plus digits
        let (m, n) = cfg.cleared();
        let bits = (BigInt::from(cfg.bound).pow(4) * (n + m.abs())).bits();
        32 + (bits as u128).div_ceil(64) * 8
    };
    // key, one (u32, u32) pair, bucket vector header and hash-table slack
    side * side * (key + 8 + 24 + 16)
}

fn pairs(cfg: &SearchConfig) -> impl Iterator<Item = (u32, u32)> + Clone {
    let lo = u32::from(!cfg.include_zero);
    let hi = cfg.bound;
    (lo..=hi)
        .flat_map(move |x| (lo..=hi).map(move |y| (x, y)))
        .filter(|&(x, y)| x != 0 || y != 0)
}

fn join<K, F>(cfg: &SearchConfig, value: F) -> Vec<[u32; 4]>
where
    K: Hash + Eq + Send + Sync,
    F: Fn(u32, u32) -> K + Sync,
{
    let mut index: HashMap<K, Vec<(u32, u32)>> = HashMap::new();
    for (x, y) in pairs(cfg) {
        index.entry(value(x, y)).or_default().push((x, y));
    }
    let lo = u32::from(!cfg.include_zero);
    let cs: Vec<u32> = (lo..=cfg.bound).collect();
    let chunk = cs.len().div_ceil(cfg.workers).max(1);
    let index = &index;
    let value = &value;
    std::thread::scope(|scope| {
        let handles: Vec<_> = cs
            .chunks(chunk)
            .map(|slice| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for &c in slice {
                        for d in lo..=cfg.bound {
                            if c == 0 && d == 0 {
                                continue;
                            }
                            let Some(bucket) = index.get(&value(c, d)) else {
                                continue;
                            };
                            for &(a, b) in bucket {
                                if (a, b) < (c, d) {
                                    out.push([a, b, c, d]);
                                }
                            }
                        }
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker panicked"))
            .collect()
    })
}

/// Every primitive nontrivial solution with entries in `[0, N]` (or `[1, N]`
/// without zeros), in canonical form, sorted by entries then `a`.
///
/// Hits are reported in canonical form, so their coefficient is the canonical
/// one, e.g. a search at `a = 1/16` reports `a = 1`.
pub fn brute_search(cfg: &SearchConfig) -> Result<Vec<SearchHit>> {
    search_with(cfg, !cfg.fits_native())
}

fn search_with(cfg: &SearchConfig, big_keys: bool) -> Result<Vec<SearchHit>> {
    cfg.validate()?;
    let (m, n) = cfg.cleared();
    let raw = if !big_keys {
        let (m, n) = (m.to_i128().unwrap(), n.to_i128().unwrap());
        join(cfg, move |x, y| {
            let (x, y) = (i128::from(x), i128::from(y));
            n * x.pow(4) + m * y.pow(4)
        })
    } else {
        join(cfg, move |x, y| {
            &n * BigInt::from(x).pow(4) + &m * BigInt::from(y).pow(4)
        })
    };

    let unit = cfg.a.abs().is_one();
    let positive = cfg.a.is_positive();
    let mut merged: BTreeMap<(Vec<BigInt>, ExactRat), (Quadruple, usize)> = BTreeMap::new();
    for e in raw {
        // the bulk of trivial pairs, without canonicalizing
        let [x, y, z, w] = e;
        if unit && positive && x == w && y == z {
            continue;
        }
        if unit && !positive && x == y && z == w {
            continue;
        }
        let q = Quadruple::new(e.map(BigInt::from), cfg.a.clone())?;
        if is_trivial(&q) {
            continue;
        }
        let c = canonicalize(&q);
        let key = (c.entries.to_vec(), c.a.clone());
        merged.entry(key).or_insert((c, 0)).1 += 1;
    }
    let hits: Vec<SearchHit> = merged
        .into_values()
        .map(|(quad, witnesses)| SearchHit { quad, witnesses })
        .collect();
    for h in &hits {
        assert!(
            verify_quadruple(&h.quad).is_zero(),
            "search produced a non-solution {}",
            h.quad
        );
    }
    Ok(hits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrossStatus {
    Found,
    /// In range with matching `a`, but absent from the search output.
    Missing,
    /// Larger than the bound; not a failure.
    OutOfRange,
    /// The family member lives at a different coefficient.
    OtherA,
    /// Evaluation failed, e.g. at a pole.
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub family: FamilyId,
    pub param: ExactRat,
    pub quad: Option<Quadruple>,
    pub status: CrossStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossReport {
    pub checks: Vec<CrossCheck>,
}

impl CrossReport {
    pub fn misses(&self) -> Vec<&CrossCheck> {
        self.checks
            .iter()
            .filter(|c| c.status == CrossStatus::Missing)
            .collect()
    }

    pub fn ok(&self) -> bool {
        self.misses().is_empty()
    }
}

fn canonical_a(a: &ExactRat) -> ExactRat {
    let probe = Quadruple {
        entries: [BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one()],
        a: a.clone(),
    };
    canonicalize(&probe).a
}

/// Checks each `(family, param)` member against one search at `cfg`.
///
/// A member is in range when a representative at the search's own coefficient has
/// entries within the bound: the raw form when the family's `a` equals `cfg.a`, or
/// the canonical form when `cfg.a` is already canonical and the classes agree.
pub fn cross_check_families(
    cfg: &SearchConfig,
    ids: &[FamilyId],
    params: &[ExactRat],
) -> Result<CrossReport> {
    let hits = brute_search(cfg)?;
    let found: Vec<&Quadruple> = hits.iter().map(|h| &h.quad).collect();
    let search_a = canonical_a(&cfg.a);
    let bound = BigInt::from(cfg.bound);
    let mut checks = Vec::new();
    for &id in ids {
        for param in params {
            let check = |quad: Option<Quadruple>, status| CrossCheck {
                family: id,
                param: param.clone(),
                quad,
                status,
            };
            let raw = match generate(id, param, Mode::Raw) {
                Ok(q) => q,
                Err(e) => {
                    checks.push(check(None, CrossStatus::Error(e.to_string())));
                    continue;
                }
            };
            let canon = canonicalize(&raw);
            let rep = if raw.a == cfg.a {
                Some(&raw)
            } else if canon.a == cfg.a {
                Some(&canon)
            } else {
                None
            };
            let status = match rep {
                _ if canon.a != search_a => CrossStatus::OtherA,
                None => CrossStatus::OtherA,
                Some(r) if r.max_abs_entry() > bound => CrossStatus::OutOfRange,
                Some(_) if is_trivial(&canon) || found.contains(&&canon) => CrossStatus::Found,
                Some(_) => CrossStatus::Missing,
            };
            checks.push(check(Some(canon), status));
        }
    }
    Ok(CrossReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rat_int};
    use num_rational::BigRational;

    fn quad(v: [i64; 4], a: i64) -> Quadruple {
        Quadruple::from_i64(v, rat_int(a))
    }

    fn entries(hits: &[SearchHit]) -> Vec<Quadruple> {
        hits.iter().map(|h| h.quad.clone()).collect()
    }

    #[test]
    fn config_invariants() {
        assert!(SearchConfig::new(rat_int(0), 5).is_err());
        assert!(SearchConfig::new(rat_int(1), 0).is_err());
        let cfg = SearchConfig::new(rat_int(1), 5).unwrap().with_workers(0);
        assert!(brute_search(&cfg).is_err());
    }

    #[test]
    fn native_threshold_is_computed() {
        assert!(SearchConfig::new(rat_int(1), 10_000).unwrap().fits_native());
        let huge = BigRational::from_integer(BigInt::from(10).pow(30));
        assert!(!SearchConfig::new(huge, 10_000).unwrap().fits_native());
    }

    #[test]
    fn small_examples() {
        let hits = brute_search(&SearchConfig::new(rat_int(3), 5).unwrap()).unwrap();
        assert_eq!(entries(&hits), vec![canonicalize(&quad([4, 1, 2, 3], 3))]);

        let hits = brute_search(&SearchConfig::new(rat_int(5), 3).unwrap()).unwrap();
        assert!(entries(&hits).contains(&canonicalize(&quad([3, 0, 1, 2], 5))));

        let cfg = SearchConfig::new(rat_int(5), 3)
            .unwrap()
            .with_include_zero(false);
        let hits = brute_search(&cfg).unwrap();
        assert!(!entries(&hits).contains(&canonicalize(&quad([3, 0, 1, 2], 5))));
    }

    #[test]
    fn bigint_keys_agree_with_native() {
        for a in [rat_int(3), rat_int(-1), rat(1, 3)] {
            let cfg = SearchConfig::new(a, 30).unwrap().with_workers(2);
            assert_eq!(
                search_with(&cfg, true).unwrap(),
                search_with(&cfg, false).unwrap()
            );
        }
    }

    #[test]
    fn rational_a_reports_canonical_coefficient() {
        let cfg = SearchConfig::new(rat(1, 3), 12).unwrap();
        let hits = brute_search(&cfg).unwrap();
        assert!(entries(&hits).contains(&canonicalize(&quad([4, 1, 2, 3], 3))));
        assert!(hits.iter().all(|h| h.quad.a == rat_int(3)));
    }

    #[test]
    fn monotone_in_bound() {
        for a in [1, 2, 3, -1] {
            let small = brute_search(&SearchConfig::new(rat_int(a), 40).unwrap()).unwrap();
            let large = brute_search(&SearchConfig::new(rat_int(a), 80).unwrap()).unwrap();
            let large = entries(&large);
            for h in entries(&small) {
                assert!(large.contains(&h), "a={a}: {h}");
            }
        }
    }

    #[test]
    fn workers_do_not_change_output() {
        let cfg = SearchConfig::new(rat_int(-1), 120).unwrap();
        let one = brute_search(&cfg).unwrap();
        let three = brute_search(&cfg.clone().with_workers(3)).unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn cross_check_examples() {
        let cfg = SearchConfig::new(rat_int(1), 160).unwrap();
        let r = cross_check_families(&cfg, &[FamilyId::Euler1], &[rat_int(3)]).unwrap();
        assert_eq!(r.checks[0].status, CrossStatus::Found);

        let cfg = SearchConfig::new(rat_int(1), 50).unwrap();
        let r = cross_check_families(&cfg, &[FamilyId::Euler1], &[rat_int(3)]).unwrap();
        assert_eq!(r.checks[0].status, CrossStatus::OutOfRange);
        assert!(r.ok());

        let r = cross_check_families(&cfg, &[FamilyId::NegA16], &[rat_int(1)]).unwrap();
        assert_eq!(r.checks[0].status, CrossStatus::OtherA);
    }

    #[test]
    fn index_estimate_grows_quadratically() {
        let small = estimate_index_bytes(&SearchConfig::new(rat_int(1), 100).unwrap());
        let large = estimate_index_bytes(&SearchConfig::new(rat_int(1), 200).unwrap());
        assert!(large > 3 * small && large < 5 * small);
    }
}
