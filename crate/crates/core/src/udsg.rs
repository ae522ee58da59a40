//! Veech's uniformly distributed sequence generator built on Champernowne's
//! number.
//!
//! Scanning the digits of `alpha = 0.123456789101112...` for a target digit
//! `t` gives the positions `q_1 < q_2 < ...`; their gaps
//! `r_1 = q_1 - 1, r_m = q_m - q_{m-1}` index a group sequence `z`, and the
//! products `w_m = z_{r_1} z_{r_2} ... z_{r_m}` are uniformly distributed in
//! any compact group as long as `z` escapes every proper closed subgroup.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Which digit-aligned interval `[t/b, (t+1)/b)` the generator tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct GeneratorSpec {
    pub target_digit: u32,
    pub base: u32,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        Self {
            target_digit: 5,
            base: 10,
        }
    }
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.base < 2 {
            return domain(format!("digit base {} < 2", self.base));
        }
        if self.target_digit >= self.base {
            return domain(format!(
                "target digit {} is not a base-{} digit",
                self.target_digit, self.base
            ));
        }
        Ok(())
    }
}

/// The `i`-th digit (1-based) after the point of the base-10 Champernowne number.
pub fn champernowne_digit(i: u64) -> Result<u32> {
    champernowne_digit_in_base(i, 10)
}

/// Digit `i` of the concatenation of `1, 2, 3, ..` written in `base`.
///
/// Skips whole blocks of `k`-digit integers (`(b-1) b^{k-1}` of them) instead
/// of materializing the expansion.
pub fn champernowne_digit_in_base(i: u64, base: u32) -> Result<u32> {
    if i < 1 {
        return domain("digit positions start at 1");
    }
    if base < 2 {
        return domain(format!("digit base {base} < 2"));
    }
    let b = u128::from(base);
    let mut rest = u128::from(i) - 1;
    let mut width = 1u128;
    let mut first = 1u128; // smallest `width`-digit integer
    loop {
        let block = (b - 1) * first * width;
        if rest < block {
            break;
        }
        rest -= block;
        width += 1;
        first *= b;
    }
    let number = first + rest / width;
    let from_left = rest % width;
    let shift = width - 1 - from_left;
    Ok(((number / b.pow(shift as u32)) % b) as u32)
}

/// Sequential digits `(position, digit)` of a Champernowne number.
#[derive(Debug, Clone)]
pub struct ChampernowneDigits {
    base: u64,
    number: u64,
    /// Digits of `number`, most significant first.
    buf: Vec<u32>,
    cursor: usize,
    position: u64,
}

impl ChampernowneDigits {
    pub fn new(base: u32) -> Result<Self> {
        if base < 2 {
            return domain(format!("digit base {base} < 2"));
        }
        Ok(Self {
            base: u64::from(base),
            number: 0,
            buf: Vec::new(),
            cursor: 0,
            position: 0,
        })
    }
}

impl Iterator for ChampernowneDigits {
    type Item = (u64, u32);

    fn next(&mut self) -> Option<(u64, u32)> {
        if self.cursor == self.buf.len() {
            self.number += 1;
            self.buf.clear();
            let mut n = self.number;
            while n > 0 {
                self.buf.push((n % self.base) as u32);
                n /= self.base;
            }
            self.buf.reverse();
            self.cursor = 0;
        }
        let d = self.buf[self.cursor];
        self.cursor += 1;
        self.position += 1;
        Some((self.position, d))
    }
}

/// Positions `q_m` where the Champernowne digit equals the target digit.
#[derive(Debug, Clone)]
pub struct Occurrences {
    digits: ChampernowneDigits,
    target: u32,
}

impl Occurrences {
    pub fn new(spec: GeneratorSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            digits: ChampernowneDigits::new(spec.base)?,
            target: spec.target_digit,
        })
    }
}

impl Iterator for Occurrences {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let target = self.target;
        self.digits.find(|&(_, d)| d == target).map(|(q, _)| q)
    }
}

/// The gap sequence `r_m` of [`Occurrences`].
#[derive(Debug, Clone)]
pub struct Gaps {
    occurrences: Occurrences,
    previous: u64,
}

impl Gaps {
    pub fn new(spec: GeneratorSpec) -> Result<Self> {
        Ok(Self {
            occurrences: Occurrences::new(spec)?,
            previous: 1,
        })
    }
}

impl Iterator for Gaps {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let q = self.occurrences.next()?;
        let r = q - self.previous;
        self.previous = q;
        Some(r)
    }
}

/// The first `count` positions `q_1 < .. < q_count`.
pub fn occurrence_positions(spec: GeneratorSpec, count: usize) -> Result<Vec<u64>> {
    if count < 1 {
        return domain("count must be >= 1");
    }
    Ok(Occurrences::new(spec)?.take(count).collect())
}

/// The first `count` generator values `r_1, .., r_count`.
pub fn r_sequence(spec: GeneratorSpec, count: usize) -> Result<Vec<u64>> {
    if count < 1 {
        return domain("count must be >= 1");
    }
    Ok(Gaps::new(spec)?.take(count).collect())
}

/// `w_m = z(r_1) * z(r_2) * .. * z(r_m)`, recomputed from scratch.
///
/// `z` is 1-indexed; `mul(a, b)` must be associative.
pub fn generate<G, Z, M>(spec: GeneratorSpec, m: u64, identity: G, mut z: Z, mut mul: M) -> Result<G>
where
    Z: FnMut(u64) -> Result<G>,
    M: FnMut(&G, &G) -> G,
{
    if m < 1 {
        return domain("m must be >= 1");
    }
    let mut w = identity;
    for r in Gaps::new(spec)?.take(m as usize) {
        w = mul(&w, &z(r)?);
    }
    Ok(w)
}

/// Streaming form of [`generate`]: each step right-multiplies by the next
/// `z(r_m)`.
#[derive(Debug, Clone)]
pub struct VeechAccumulator<G> {
    gaps: Gaps,
    current: G,
    m: u64,
}

impl<G: Clone> VeechAccumulator<G> {
    pub fn new(spec: GeneratorSpec, identity: G) -> Result<Self> {
        Ok(Self {
            gaps: Gaps::new(spec)?,
            current: identity,
            m: 0,
        })
    }

    /// Advances to `w_{m+1}` and returns it with its index.
    pub fn step<Z, M>(&mut self, mut z: Z, mut mul: M) -> Result<(u64, &G)>
    where
        Z: FnMut(u64) -> Result<G>,
        M: FnMut(&G, &G) -> G,
    {
        let r = self.gaps.next().expect("Champernowne digits never run out");
        self.current = mul(&self.current, &z(r)?);
        self.m += 1;
        Ok((self.m, &self.current))
    }

    /// Number of factors accumulated so far.
    pub fn index(&self) -> u64 {
        self.m
    }

    pub fn current(&self) -> &G {
        &self.current
    }
}
