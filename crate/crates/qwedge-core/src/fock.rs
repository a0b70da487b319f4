//! Tensor-space plumbing: flat indexing, semi-infinite pure tensors with
//! frozen tails, and exact linear combinations of them.
//!
//! A slot holds `z^j v_i` with letter `i` in `1..=n` and an integer exponent
//! `j`; we store the single flat index `m = i - n*j` instead. Flattening is a
//! bijection, strictly monotone in `-j` and in `i`, so "normally ordered"
//! means strictly decreasing flat indices. The rank-free variant (`SlInf`)
//! treats every integer as its own letter with no exponent.
//!
//! Semi-infinite tensors are a finite prefix plus a frozen arithmetic tail
//! `t, t-1, t-2, ...`. Operations never write into the tail; anything that
//! would is a boundary violation and the caller must re-truncate deeper.

use crate::coeff::LaurentQ;
use crate::error::FockError;
use std::collections::BTreeMap;
use std::fmt;

/// Flat basis index: `m = letter - n * exponent`.
pub type FlatIndex = i64;

/// Which algebra the letters belong to. This fixes how a flat index splits
/// into (letter, exponent) and therefore how the Hecke action compares slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// Every flat index is its own letter; no spectral variable.
    SlInf,
    /// Letters `1..=n` with a `z`-exponent; flat index `letter - n*exp`.
    Affine { n: usize },
}

impl Algebra {
    pub fn affine(n: usize) -> Self {
        assert!(n >= 2, "affine rank must be at least 2");
        Algebra::Affine { n }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            Algebra::SlInf => None,
            Algebra::Affine { n } => Some(*n),
        }
    }

    /// The letter of a flat index (`1..=n` affine; the index itself for the
    /// rank-free algebra).
    pub fn letter(&self, m: FlatIndex) -> i64 {
        match self {
            Algebra::SlInf => m,
            Algebra::Affine { n } => (m - 1).rem_euclid(*n as i64) + 1,
        }
    }

    /// The `z`-exponent of a flat index (always 0 for the rank-free algebra).
    pub fn exponent(&self, m: FlatIndex) -> i64 {
        match self {
            Algebra::SlInf => 0,
            Algebra::Affine { n } => (self.letter(m) - m) / *n as i64,
        }
    }

    /// Inverse of (`letter`, `exponent`).
    pub fn flatten(&self, letter: i64, exponent: i64) -> Result<FlatIndex, FockError> {
        match self {
            Algebra::SlInf => {
                if exponent != 0 {
                    Err(FockError::LetterOutOfRange(letter, 0))
                } else {
                    Ok(letter)
                }
            }
            Algebra::Affine { n } => {
                if (1..=*n as i64).contains(&letter) {
                    Ok(letter - *n as i64 * exponent)
                } else {
                    Err(FockError::LetterOutOfRange(letter, *n))
                }
            }
        }
    }

    /// Whether the letter of `m` lies in the residue class `i` (mod `n` for
    /// the affine algebra, literal equality otherwise).
    pub fn letter_in_class(&self, m: FlatIndex, i: i64) -> bool {
        match self {
            Algebra::SlInf => m == i,
            Algebra::Affine { n } => (self.letter(m) - i).rem_euclid(*n as i64) == 0,
        }
    }

    /// Canonical representative in `1..=n` of the residue class `i`.
    pub fn class_letter(&self, i: i64) -> i64 {
        match self {
            Algebra::SlInf => i,
            Algebra::Affine { n } => (i - 1).rem_euclid(*n as i64) + 1,
        }
    }
}

/// A pure tensor: explicit slots `prefix[0..]` (1-based in all APIs), then
/// optionally a frozen tail `t, t-1, t-2, ...` starting right after the
/// prefix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureTensor {
    prefix: Vec<FlatIndex>,
    tail: Option<FlatIndex>,
}

impl PureTensor {
    pub fn finite(prefix: Vec<FlatIndex>) -> Self {
        PureTensor { prefix, tail: None }
    }

    pub fn semi_infinite(prefix: Vec<FlatIndex>, tail_start: FlatIndex) -> Self {
        PureTensor {
            prefix,
            tail: Some(tail_start),
        }
    }

    /// The descent `t, t-1, ..., t-L+1 | tail(t-L)`.
    pub fn vacuum(start: FlatIndex, depth: usize) -> Self {
        assert!(depth >= 1);
        let prefix = (0..depth as i64).map(|k| start - k).collect();
        PureTensor {
            prefix,
            tail: Some(start - depth as i64),
        }
    }

    /// The canonical highest-weight tensor of class `i`: descent starting at
    /// `i - n` (reading class 0 as letter `n`).
    pub fn vacuum_for_class(alg: Algebra, class: i64, depth: usize) -> Self {
        let start = match alg {
            Algebra::SlInf => class,
            Algebra::Affine { n } => alg.class_letter(class) - n as i64,
        };
        PureTensor::vacuum(start, depth)
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.tail.is_none()
    }

    pub fn is_semi_infinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn prefix(&self) -> &[FlatIndex] {
        &self.prefix
    }

    pub fn tail_start(&self) -> Option<FlatIndex> {
        self.tail
    }

    /// Value at a 1-based slot, reading into the tail when present.
    pub fn value_at(&self, slot: usize) -> Option<FlatIndex> {
        assert!(slot >= 1);
        if slot <= self.prefix.len() {
            Some(self.prefix[slot - 1])
        } else {
            self.tail.map(|t| t - (slot - self.prefix.len() - 1) as i64)
        }
    }

    /// Smallest depth [`PureTensor::truncate`] will cut to: every slot pair
    /// breaking the unit descent — the junction with the stored tail included
    /// — must stay strictly inside the kept prefix, so the cut never hides a
    /// break behind a fresh tail marker.
    pub fn minimal_depth(&self) -> usize {
        let p = self.prefix.len();
        let mut last_break = 0usize;
        for s in 1..=p {
            if let Some(next) = self.value_at(s + 1) {
                if self.prefix[s - 1] != next + 1 {
                    last_break = s;
                }
            }
        }
        (last_break + 1).min(p)
    }

    /// Re-represent with prefix length exactly `depth`. Extending unrolls the
    /// tail; cutting is only allowed down to [`PureTensor::minimal_depth`].
    pub fn truncate(&self, depth: usize) -> Result<PureTensor, FockError> {
        let t = self.tail.expect("truncate requires a semi-infinite tensor");
        let p = self.prefix.len();
        if depth >= p {
            let mut prefix = self.prefix.clone();
            for k in 0..(depth - p) {
                prefix.push(t - k as i64);
            }
            return Ok(PureTensor {
                prefix,
                tail: Some(t - (depth - p) as i64),
            });
        }
        let minimal = self.minimal_depth();
        if depth < minimal {
            return Err(FockError::TruncationTooShallow {
                requested: depth,
                minimal,
            });
        }
        Ok(PureTensor {
            prefix: self.prefix[..depth].to_vec(),
            tail: Some(self.prefix[depth]),
        })
    }

    /// Shortest structural representation of the same infinite sequence:
    /// trailing prefix entries that already continue the tail's unit descent
    /// are absorbed into the tail. Unlike [`PureTensor::truncate`], the
    /// resulting junction may break the descent — the tail start is stored
    /// explicitly, so nothing is lost — which makes this form a sound
    /// deduplication key: semantically equal tensors strip to equal values.
    pub fn canonical(&self) -> PureTensor {
        match self.tail {
            None => self.clone(),
            Some(t0) => {
                let mut prefix = self.prefix.clone();
                let mut t = t0;
                while prefix.last() == Some(&(t + 1)) {
                    prefix.pop();
                    t += 1;
                }
                PureTensor {
                    prefix,
                    tail: Some(t),
                }
            }
        }
    }

    /// Multiplicity of the flat value `v`, counting the tail.
    pub fn count_flat(&self, v: FlatIndex) -> usize {
        self.count_flat_from(v, 1)
    }

    fn count_flat_from(&self, v: FlatIndex, from_slot: usize) -> usize {
        let mut c = self
            .prefix
            .iter()
            .skip(from_slot.saturating_sub(1))
            .filter(|&&x| x == v)
            .count();
        if let Some(t) = self.tail {
            let cut = t - (from_slot as i64 - self.prefix.len() as i64 - 1).max(0);
            if v <= cut {
                c += 1;
            }
        }
        c
    }

    /// Eigenvalue of the `i`-th Cartan generator on the sub-tensor starting
    /// at `from_slot`, as the finitely supported sum over `j` in class `i` of
    /// `count(j) - count(j+1)`.
    ///
    /// Grouping the counts by adjacent flat pairs is what makes the sum
    /// finite on semi-infinite tensors and is the grouping under which the
    /// level comes out as 1.
    pub fn h_eigenvalue(&self, alg: Algebra, i: i64, from_slot: usize) -> i64 {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for &v in self.prefix.iter().skip(from_slot.saturating_sub(1)) {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if let Some(t) = self.tail {
            let cut = t - (from_slot as i64 - self.prefix.len() as i64 - 1).max(0);
            lo = lo.min(cut);
            hi = hi.max(cut);
        }
        if lo > hi {
            return 0;
        }
        let step = match alg {
            Algebra::SlInf => None,
            Algebra::Affine { n } => Some(n as i64),
        };
        let mut acc = 0i64;
        match step {
            None => {
                acc += self.count_flat_from(i, from_slot) as i64;
                acc -= self.count_flat_from(i + 1, from_slot) as i64;
            }
            Some(n) => {
                // All j = i mod n with c(j) or c(j+1) possibly nonzero.
                let mut j = i + n * ((lo - 1 - i).div_euclid(n));
                while j <= hi {
                    acc += self.count_flat_from(j, from_slot) as i64;
                    acc -= self.count_flat_from(j + 1, from_slot) as i64;
                    j += n;
                }
            }
        }
        acc
    }

    /// Copy with slots `slot`, `slot+1` replaced (both must be in the
    /// prefix).
    pub fn with_pair(&self, slot: usize, a: FlatIndex, b: FlatIndex) -> PureTensor {
        debug_assert!(slot >= 1 && slot < self.prefix.len());
        let mut p = self.prefix.clone();
        p[slot - 1] = a;
        p[slot] = b;
        PureTensor {
            prefix: p,
            tail: self.tail,
        }
    }

    /// Copy with a single prefix slot replaced.
    pub fn with_value(&self, slot: usize, v: FlatIndex) -> PureTensor {
        debug_assert!(slot >= 1 && slot <= self.prefix.len());
        let mut p = self.prefix.clone();
        p[slot - 1] = v;
        PureTensor {
            prefix: p,
            tail: self.tail,
        }
    }

    /// Whether adjacent slots `slot` and `slot+1` hold equal values (reads
    /// into the tail).
    pub fn has_repeat_at(&self, slot: usize) -> bool {
        match (self.value_at(slot), self.value_at(slot + 1)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for PureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.prefix.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        if let Some(t) = self.tail {
            write!(f, " |{t}")?;
        }
        write!(f, ")")
    }
}

/// A finite linear combination of pure tensors with [`LaurentQ`]
/// coefficients. All entries must share prefix length and tail start; the
/// map, not the caller, takes care of cancellation.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    entries: BTreeMap<PureTensor, LaurentQ>,
}

impl TensorVector {
    pub fn zero() -> Self {
        TensorVector::default()
    }

    pub fn unit(t: PureTensor) -> Self {
        let mut v = TensorVector::zero();
        v.add_term(t, LaurentQ::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_term(&mut self, t: PureTensor, c: LaurentQ) {
        if c.is_zero() {
            return;
        }
        debug_assert!(
            self.entries
                .keys()
                .next()
                .map(|k| k.len() == t.len() && k.tail_start() == t.tail_start())
                .unwrap_or(true),
            "mixed depths in one tensor vector"
        );
        use std::collections::btree_map::Entry;
        match self.entries.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorVector, c: &LaurentQ) {
        for (t, a) in &other.entries {
            self.add_term(t.clone(), a * c);
        }
    }

    pub fn add(&mut self, other: &TensorVector) {
        for (t, a) in &other.entries {
            self.add_term(t.clone(), a.clone());
        }
    }

    pub fn sub(&mut self, other: &TensorVector) {
        for (t, a) in &other.entries {
            self.add_term(t.clone(), -a.clone());
        }
    }

    pub fn scale(&self, c: &LaurentQ) -> TensorVector {
        let mut out = TensorVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, t: &PureTensor) -> LaurentQ {
        self.entries.get(t).cloned().unwrap_or_else(LaurentQ::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PureTensor, &LaurentQ)> {
        self.entries.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (PureTensor, LaurentQ)> {
        self.entries.into_iter()
    }

    /// Depth shared by all entries, if there are any.
    pub fn depth(&self) -> Option<usize> {
        self.entries.keys().next().map(|t| t.len())
    }

    /// Coefficientwise `q = 1` specialization.
    pub fn eval_q1(&self) -> TensorVector {
        let mut out = TensorVector::zero();
        for (t, c) in &self.entries {
            out.add_term(t.clone(), LaurentQ::int(c.eval_q1()));
        }
        out
    }

    pub fn map_terms(
        &self,
        mut f: impl FnMut(&PureTensor, &LaurentQ) -> Option<(PureTensor, LaurentQ)>,
    ) -> TensorVector {
        let mut out = TensorVector::zero();
        for (t, c) in &self.entries {
            if let Some((t2, c2)) = f(t, c) {
                out.add_term(t2, c2);
            }
        }
        out
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{t:?}")?;
        }
        Ok(())
    }
}
