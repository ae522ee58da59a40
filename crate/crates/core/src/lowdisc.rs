//! Random-access low-discrepancy sequences in the unit cube.
//!
//! Every coordinate is a radical inverse, optionally with a per-base digit
//! permutation (generalized Halton). Points are pure functions of the
//! sequence description and the index, so any prefix can be regenerated or
//! split across threads without shared state.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Digits whose weight `b^-j` falls below this are dropped.
const TRUNCATION: f64 = 1.0 / 9_223_372_036_854_775_808.0; // 2^-63

/// Largest double strictly below one.
const ONE_BELOW: f64 = 1.0 - f64::EPSILON / 2.0;

/// A point of the half-open unit cube `[0,1)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitPoint(Vec<f64>);

impl UnitPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return domain("unit point needs at least one coordinate");
        }
        if let Some(c) = coords.iter().find(|c| !(0.0..1.0).contains(*c)) {
            return domain(format!("coordinate {c} outside [0,1)"));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// The family a [`SequenceSpec`] draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    /// One-dimensional radical inverse sequence.
    VanDerCorput,
    Halton,
    /// Halton with a digit permutation per base, derived from `permutation_seed`.
    /// Permutations always fix the digit 0.
    ScrambledHalton,
}

/// Full description of a low-discrepancy sequence.
///
/// The JSON form uses the keys `kind`, `dims`, `bases`, `skip` and
/// `permutation_seed`; `bases` defaults to the first `dims` primes and the
/// other numeric fields default to 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSequenceSpec")]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub dims: usize,
    pub bases: Vec<u64>,
    pub skip: u64,
    pub permutation_seed: u64,
}

#[derive(Deserialize)]
struct RawSequenceSpec {
    kind: SequenceKind,
    dims: usize,
    #[serde(default)]
    bases: Option<Vec<u64>>,
    #[serde(default)]
    skip: u64,
    #[serde(default)]
    permutation_seed: u64,
}

impl TryFrom<RawSequenceSpec> for SequenceSpec {
    type Error = Error;

    fn try_from(raw: RawSequenceSpec) -> Result<Self> {
        let spec = SequenceSpec {
            kind: raw.kind,
            dims: raw.dims,
            bases: raw.bases.unwrap_or_else(|| first_primes(raw.dims)),
            skip: raw.skip,
            permutation_seed: raw.permutation_seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl SequenceSpec {
    /// Plain Halton sequence on the first `dims` primes.
    pub fn halton(dims: usize) -> Self {
        Self::with_bases(SequenceKind::Halton, first_primes(dims))
    }

    pub fn scrambled_halton(dims: usize, permutation_seed: u64) -> Self {
        Self {
            permutation_seed,
            ..Self::with_bases(SequenceKind::ScrambledHalton, first_primes(dims))
        }
    }

    pub fn van_der_corput(base: u64) -> Self {
        Self::with_bases(SequenceKind::VanDerCorput, vec![base])
    }

    pub fn with_bases(kind: SequenceKind, bases: Vec<u64>) -> Self {
        Self {
            kind,
            dims: bases.len(),
            bases,
            skip: 0,
            permutation_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims == 0 {
            return domain("sequence needs at least one dimension");
        }
        if self.bases.len() != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                found: self.bases.len(),
            });
        }
        if self.kind == SequenceKind::VanDerCorput && self.dims != 1 {
            return domain("van-der-corput sequences are one-dimensional");
        }
        if let Some(b) = self.bases.iter().find(|&&b| b < 2) {
            return domain(format!("base {b} < 2"));
        }
        if self.bases.iter().any(|&b| b > u64::from(u32::MAX)) {
            return domain("base does not fit in 32 bits");
        }
        for (i, &a) in self.bases.iter().enumerate() {
            for &b in &self.bases[i + 1..] {
                if gcd(a, b) != 1 {
                    return domain(format!("bases {a} and {b} are not coprime"));
                }
            }
        }
        Ok(())
    }
}

/// The first `count` primes in increasing order.
pub fn first_primes(count: usize) -> Vec<u64> {
    primes_from(0, count)
}

/// `count` consecutive primes, skipping the first `offset` primes.
pub fn primes_from(offset: usize, count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(offset + count);
    let mut candidate = 2u64;
    while primes.len() < offset + count {
        if primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| candidate % p != 0)
        {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes.split_off(offset)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Radical inverse of `index` in `base`: the base-`base` digits of `index`
/// mirrored about the radix point.
pub fn radical_inverse(index: u64, base: u64) -> Result<f64> {
    if index < 1 {
        return domain("radical inverse index must be >= 1");
    }
    if base < 2 {
        return domain(format!("base {base} < 2"));
    }
    Ok(permuted_radical_inverse(index, base, None))
}

/// Radical inverse with every digit `d` replaced by `perm[d]`.
///
/// `perm` must fix 0 so that the infinite run of leading zeros of `index`
/// still contributes nothing.
pub(crate) fn permuted_radical_inverse(mut index: u64, base: u64, perm: Option<&[u32]>) -> f64 {
    let mut value = 0.0;
    let mut weight = 1.0 / base as f64;
    while index > 0 && weight >= TRUNCATION {
        let digit = (index % base) as usize;
        let digit = perm.map_or(digit as f64, |p| f64::from(p[digit]));
        value += digit * weight;
        weight /= base as f64;
        index /= base;
    }
    value.min(ONE_BELOW)
}

fn digits_inverse(digits: &[u32], base: u64, perm: Option<&[u32]>) -> f64 {
    let mut value = 0.0;
    let mut weight = 1.0 / base as f64;
    for &d in digits {
        if weight < TRUNCATION {
            break;
        }
        let d = perm.map_or(f64::from(d), |p| f64::from(p[d as usize]));
        value += d * weight;
        weight /= base as f64;
    }
    value.min(ONE_BELOW)
}

/// Digit permutation of `{0, .., base-1}` fixing 0, from a 64-bit LCG
/// (Knuth's MMIX constants) driving a Fisher-Yates shuffle of `{1, .., base-1}`.
pub fn scramble_permutation(base: u64, seed: u64) -> Vec<u32> {
    let mut state = seed ^ base.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    let mut next = move || {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        state >> 33
    };
    // warm-up so nearby seeds decorrelate
    for _ in 0..4 {
        next();
    }
    let mut perm: Vec<u32> = (0..base as u32).collect();
    for i in (2..base as usize).rev() {
        let j = 1 + (next() % i as u64) as usize;
        perm.swap(i, j);
    }
    perm
}

/// A compiled [`SequenceSpec`]: bases plus their digit permutations.
#[derive(Debug, Clone)]
pub struct QuasiSequence {
    spec: SequenceSpec,
    perms: Vec<Option<Vec<u32>>>,
}

impl QuasiSequence {
    pub fn new(spec: SequenceSpec) -> Result<Self> {
        spec.validate()?;
        let perms = match spec.kind {
            SequenceKind::ScrambledHalton => spec
                .bases
                .iter()
                .map(|&b| Some(scramble_permutation(b, spec.permutation_seed)))
                .collect(),
            _ => vec![None; spec.dims],
        };
        Ok(Self { spec, perms })
    }

    /// Uses caller-supplied digit permutations, one per base.
    pub fn with_permutations(spec: SequenceSpec, perms: Vec<Vec<u32>>) -> Result<Self> {
        spec.validate()?;
        if perms.len() != spec.dims {
            return Err(Error::DimensionMismatch {
                expected: spec.dims,
                found: perms.len(),
            });
        }
        for (p, &b) in perms.iter().zip(&spec.bases) {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if !sorted.iter().copied().eq(0..b as u32) {
                return domain(format!("not a permutation of the digits of base {b}"));
            }
            if p[0] != 0 {
                return domain("digit permutations must fix 0");
            }
        }
        Ok(Self {
            spec,
            perms: perms.into_iter().map(Some).collect(),
        })
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn dims(&self) -> usize {
        self.spec.dims
    }

    /// The `index`-th point (1-based).
    pub fn point(&self, index: u64) -> Result<UnitPoint> {
        if index < 1 {
            return domain("sequence index must be >= 1");
        }
        let shifted = index
            .checked_add(self.spec.skip)
            .ok_or_else(|| Error::Domain("index + skip overflows".into()))?;
        let coords = self
            .spec
            .bases
            .iter()
            .zip(&self.perms)
            .map(|(&b, p)| permuted_radical_inverse(shifted, b, p.as_deref()))
            .collect();
        Ok(UnitPoint(coords))
    }

    /// Streams points from index 1 onward by incrementing digit counters.
    pub fn stream(&self) -> Stream<'_> {
        let digits = self
            .spec
            .bases
            .iter()
            .map(|&b| {
                let mut n = self.spec.skip;
                let mut d = Vec::new();
                while n > 0 {
                    d.push((n % b) as u32);
                    n /= b;
                }
                d
            })
            .collect();
        Stream { seq: self, digits }
    }
}

/// Free-function form of [`QuasiSequence::point`].
pub fn point_at(spec: &SequenceSpec, index: u64) -> Result<UnitPoint> {
    QuasiSequence::new(spec.clone())?.point(index)
}

/// Incremental iterator over a [`QuasiSequence`]; yields the same values as
/// repeated calls to [`QuasiSequence::point`].
#[derive(Debug, Clone)]
pub struct Stream<'a> {
    seq: &'a QuasiSequence,
    /// Least-significant digit first, one counter per coordinate.
    digits: Vec<Vec<u32>>,
}

impl Iterator for Stream<'_> {
    type Item = UnitPoint;

    fn next(&mut self) -> Option<UnitPoint> {
        let spec = &self.seq.spec;
        let mut coords = Vec::with_capacity(spec.dims);
        for ((digits, &base), perm) in self.digits.iter_mut().zip(&spec.bases).zip(&self.seq.perms) {
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    digits.push(1);
                    break;
                }
                digits[pos] += 1;
                if u64::from(digits[pos]) < base {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            coords.push(digits_inverse(digits, base, perm.as_deref()));
        }
        Some(UnitPoint(coords))
    }
}
