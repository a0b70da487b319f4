//! Normally ordered q-wedges.
//!
//! A wedge label is normally ordered when its flat indices strictly decrease.
//! Everything here revolves around expressing arbitrary (finite or
//! semi-infinite) wedge labels in that basis: the straightening rewrite, the
//! truncated expansion into antisymmetrized tensors, the Young-diagram
//! correspondence, weights, and an empirical probe of how truncated
//! expansion coefficients stabilize as the depth grows.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::coeff::LaurentQ;
use crate::error::{FockError, WedgeError};
use crate::fock::{Algebra, FlatIndex, PureTensor, TensorVector};
use crate::hecke::{antisymmetrize, ti_pair_terms};

/// A normally ordered wedge label: strictly decreasing flat indices, either
/// finitely many or followed by a frozen descent. Semi-infinite labels are
/// stored in their unique shortest representation, so equality of terms is
/// equality of the underlying semi-infinite sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeTerm {
    tensor: PureTensor,
}

impl WedgeTerm {
    /// Wraps a tensor as a wedge label, requiring strict decrease across all
    /// explicit slots and across the junction into the tail.
    pub fn new(tensor: PureTensor) -> Result<WedgeTerm, WedgeError> {
        let p = tensor.prefix();
        for slot in 1..p.len() {
            if p[slot - 1] <= p[slot] {
                return Err(WedgeError::RecognitionFailure(slot));
            }
        }
        if let (Some(&last), Some(t)) = (p.last(), tensor.tail_start()) {
            if last <= t {
                return Err(WedgeError::RecognitionFailure(p.len()));
            }
        }
        Ok(WedgeTerm {
            tensor: tensor.canonical(),
        })
    }

    /// The pure descent starting at `charge`, i.e. the vacuum of that charge.
    pub fn charge_vacuum(charge: i64) -> WedgeTerm {
        WedgeTerm {
            tensor: PureTensor::semi_infinite(Vec::new(), charge),
        }
    }

    /// The highest-weight vacuum of the given class.
    pub fn class_vacuum(alg: Algebra, class: i64) -> WedgeTerm {
        WedgeTerm::charge_vacuum(class_charge(alg, class))
    }

    pub fn tensor(&self) -> &PureTensor {
        &self.tensor
    }

    pub fn is_semi_infinite(&self) -> bool {
        self.tensor.is_semi_infinite()
    }

    /// Charge of a semi-infinite label: the tail a descent of the same shape
    /// would start at if the whole label were one unbroken descent.
    pub fn charge(&self) -> Option<i64> {
        self.tensor
            .tail_start()
            .map(|t| t + self.tensor.len() as i64)
    }

    /// Residue class of the charge: the sector the label lives in.
    pub fn class(&self, alg: Algebra) -> Option<i64> {
        self.charge().map(|r| match alg {
            Algebra::SlInf => r,
            Algebra::Affine { n } => r.rem_euclid(n as i64),
        })
    }

    /// The defining tensor at an explicit depth.
    pub fn at_depth(&self, depth: usize) -> Result<PureTensor, FockError> {
        self.tensor.truncate(depth)
    }
}

impl fmt::Debug for WedgeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.tensor)
    }
}

/// A finite linear combination of normally ordered wedge labels.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WedgeVector {
    entries: BTreeMap<WedgeTerm, LaurentQ>,
}

impl WedgeVector {
    pub fn zero() -> Self {
        WedgeVector::default()
    }

    pub fn unit(w: WedgeTerm) -> Self {
        let mut v = WedgeVector::zero();
        v.add_term(w, LaurentQ::one());
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

    pub fn add_term(&mut self, w: WedgeTerm, c: LaurentQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.entries.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WedgeVector, c: &LaurentQ) {
        for (w, x) in &other.entries {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&mut self, other: &WedgeVector) {
        for (w, x) in &other.entries {
            self.add_term(w.clone(), x.clone());
        }
    }

    pub fn sub(&mut self, other: &WedgeVector) {
        for (w, x) in &other.entries {
            self.add_term(w.clone(), -x.clone());
        }
    }

    pub fn scale(&self, c: &LaurentQ) -> WedgeVector {
        let mut out = WedgeVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, w: &WedgeTerm) -> LaurentQ {
        self.entries.get(w).cloned().unwrap_or_else(LaurentQ::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WedgeTerm, &LaurentQ)> {
        self.entries.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (WedgeTerm, LaurentQ)> {
        self.entries.into_iter()
    }

    /// Specialize every coefficient at q = 1.
    pub fn eval_q1(&self) -> WedgeVector {
        let mut out = WedgeVector::zero();
        for (w, c) in &self.entries {
            out.add_term(w.clone(), LaurentQ::int(c.eval_q1()));
        }
        out
    }

    /// Reads the vector as tensors at an explicit depth, each wedge replaced
    /// by its defining truncated tensor.
    pub fn to_tensors(&self, depth: usize) -> Result<TensorVector, FockError> {
        let mut out = TensorVector::zero();
        for (w, c) in &self.entries {
            out.add_term(w.at_depth(depth)?, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Debug for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{w:?}")?;
        }
        Ok(())
    }
}

/// A partition: weakly decreasing positive row lengths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Builds a partition, stripping trailing zero rows. Panics if the rows
    /// increase somewhere; callers parsing untrusted input validate first.
    pub fn new(mut parts: Vec<u64>) -> Partition {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition rows must weakly decrease"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn boxes(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Charge of the class-`i` vacuum: where its unbroken descent starts.
pub fn class_charge(alg: Algebra, class: i64) -> i64 {
    match alg {
        Algebra::SlInf => class,
        Algebra::Affine { n } => alg.class_letter(class) - n as i64,
    }
}

/// Termination measure for straightening: the total positive inversion gap
/// Σ_{i<j} max(0, v_j − v_i) over explicit slots. An adjacent sorting swap
/// lowers it by the gap it removes; correction pairs stay strictly inside
/// the interval they replace and lower it as well.
fn inversion_weight(t: &PureTensor) -> i64 {
    let p = t.prefix();
    let mut m = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            m += (p[j] - p[i]).max(0);
        }
    }
    m
}

/// The straightening engine: rewrites arbitrary wedge labels into the
/// normally ordered basis, memoizing on the exact tensor.
///
/// The rewrite comes from the coset identity: antisymmetrizing x·T_i equals
/// q² times antisymmetrizing x. Writing y for a label with an adjacent
/// sorted pair and expanding y·T_i into a swap term plus exponent-interior
/// corrections, the identity solves for the unsorted label. The solving
/// denominator is −q (distinct letters) or −q² (equal letters), always an
/// invertible monomial, so no division beyond monomial inversion is needed.
pub struct Straightener {
    alg: Algebra,
    memo: HashMap<PureTensor, WedgeVector>,
}

impl Straightener {
    pub fn new(alg: Algebra) -> Self {
        Straightener {
            alg,
            memo: HashMap::new(),
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    /// Straightens a linear combination of labels term by term.
    pub fn straighten(&mut self, x: &TensorVector) -> Result<WedgeVector, WedgeError> {
        let mut out = WedgeVector::zero();
        for (t, c) in x.iter() {
            let nf = self.normal_form(t)?;
            out.add_scaled(&nf, c);
        }
        Ok(out)
    }

    /// Normal form of a single label. A semi-infinite label is first unrolled
    /// far enough that every value the rewrite can ever produce stays above
    /// the frozen tail; values only move inside the interval they start in,
    /// so unrolling past the minimum prefix value suffices once and for all.
    pub fn normal_form(&mut self, t: &PureTensor) -> Result<WedgeVector, WedgeError> {
        let prepared = match (t.tail_start(), t.prefix().iter().min()) {
            (Some(ts), Some(&m0)) if ts >= m0 => {
                let depth = t.len() + (ts - m0 + 1) as usize;
                t.truncate(depth)?
            }
            _ => t.clone(),
        };
        self.recurse(&prepared)
    }

    fn recurse(&mut self, t: &PureTensor) -> Result<WedgeVector, WedgeError> {
        if let Some(hit) = self.memo.get(t) {
            return Ok(hit.clone());
        }
        let out = self.rewrite(t)?;
        self.memo.insert(t.clone(), out.clone());
        Ok(out)
    }

    fn rewrite(&mut self, t: &PureTensor) -> Result<WedgeVector, WedgeError> {
        let p = t.prefix();
        for s in 1..p.len() {
            if p[s - 1] == p[s] {
                return Ok(WedgeVector::zero());
            }
        }
        if let (Some(&last), Some(ts)) = (p.last(), t.tail_start()) {
            if last == ts {
                return Ok(WedgeVector::zero());
            }
            debug_assert!(last > ts, "junction must be inert after preparation");
        }
        let Some(i) = (1..p.len()).find(|&s| p[s - 1] < p[s]) else {
            return Ok(WedgeVector::unit(WedgeTerm::new(t.clone())?));
        };
        let (u, w) = (p[i - 1], p[i]);
        let y = t.with_pair(i, w, u);
        let m_t = inversion_weight(t);
        if inversion_weight(&y) >= m_t {
            return Err(WedgeError::NonTerminating(y.prefix().to_vec()));
        }
        let (swap_coeff, corrections) = ti_pair_terms(self.alg, w, u);
        // y·T_i = swap_coeff·t + Σ c·y_c, and straightening intertwines T_i
        // with multiplication by q², so q²·NF(y) = D·NF(t) + Σ' c·NF(y_c)
        // where D collects the terms that reproduce t itself.
        let mut acc = self.recurse(&y)?.scale(&LaurentQ::q_pow(2));
        let mut denom = swap_coeff;
        for (c, f1, f2) in corrections {
            let yc = t.with_pair(i, f1, f2);
            if yc == *t {
                denom += c;
                continue;
            }
            if inversion_weight(&yc) >= m_t {
                return Err(WedgeError::NonTerminating(yc.prefix().to_vec()));
            }
            let nf = self.recurse(&yc)?;
            acc.add_scaled(&nf, &(-c));
        }
        let inv = denom
            .monomial_inverse()
            .ok_or_else(|| WedgeError::NonTerminating(t.prefix().to_vec()))?;
        Ok(acc.scale(&inv))
    }
}

/// One-shot straightening with a throwaway memo table.
pub fn straighten(alg: Algebra, x: &TensorVector) -> Result<WedgeVector, WedgeError> {
    Straightener::new(alg).straighten(x)
}

/// Expands a semi-infinite wedge at an explicit depth: antisymmetrize the
/// defining tensor over all permutations of the first `depth` slots, the
/// tail beyond staying frozen. The defining tensor itself always carries
/// coefficient exactly 1 in the result.
pub fn expand(alg: Algebra, w: &WedgeTerm, depth: usize) -> Result<TensorVector, FockError> {
    assert!(
        w.is_semi_infinite(),
        "only semi-infinite wedges expand against a frozen tail"
    );
    let margin = alg.rank().unwrap_or(1);
    let need = w.tensor().len() + margin;
    if depth < need {
        return Err(FockError::BoundaryViolation { slot: need, depth });
    }
    let base = w.tensor().truncate(depth)?;
    antisymmetrize(alg, &TensorVector::unit(base), depth)
}

/// Reads off the partition of a semi-infinite wedge: row j is how far the
/// j-th index sits above where the unbroken descent of the same charge would
/// put it. Returns the partition together with the charge.
pub fn young_from_wedge(w: &WedgeTerm) -> (Partition, i64) {
    let t = w.tensor();
    let ts = t
        .tail_start()
        .expect("the Young correspondence needs a semi-infinite wedge");
    let r = ts + t.len() as i64;
    let parts = t
        .prefix()
        .iter()
        .enumerate()
        .map(|(k, &m)| (m - (r - (k as i64 + 1) + 1)) as u64)
        .collect();
    (Partition::new(parts), r)
}

/// Inverse of [`young_from_wedge`] at a fixed charge: row j becomes the
/// index λ_j + r − j + 1, and the tail resumes right below the last row.
pub fn wedge_from_charge(p: &Partition, charge: i64) -> WedgeTerm {
    let rows = p.rows() as i64;
    let prefix = p
        .parts()
        .iter()
        .enumerate()
        .map(|(k, &l)| l as i64 + charge - (k as i64 + 1) + 1)
        .collect();
    WedgeTerm::new(PureTensor::semi_infinite(prefix, charge - rows))
        .expect("a partition always yields a normally ordered wedge")
}

/// Inverse of [`young_from_wedge`] in the canonical charge sector of a
/// class. The depth is how many explicit rows the caller is prepared to
/// represent; all nonzero rows must fit.
pub fn wedge_from_young(
    alg: Algebra,
    p: &Partition,
    class: i64,
    depth: usize,
) -> Result<WedgeTerm, WedgeError> {
    if depth < p.rows() {
        return Err(WedgeError::Fock(FockError::TruncationTooShallow {
            requested: depth,
            minimal: p.rows(),
        }));
    }
    Ok(wedge_from_charge(p, class_charge(alg, class)))
}

/// Weight data of a semi-infinite wedge: graded eigenvalues H_i(d) (exact
/// flat-index counts, finitely supported because the label is eventually an
/// unbroken descent) and their aggregates H_i = Σ_d H_i(d).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightReport {
    pub charge: i64,
    pub class: i64,
    /// Nonzero aggregate eigenvalues H_i.
    pub aggregate: BTreeMap<i64, i64>,
    /// Nonzero graded eigenvalues, keyed by (i, d).
    pub graded: BTreeMap<(i64, i64), i64>,
}

impl WeightReport {
    pub fn h(&self, i: i64) -> i64 {
        self.aggregate.get(&i).copied().unwrap_or(0)
    }

    pub fn graded_h(&self, i: i64, d: i64) -> i64 {
        self.graded.get(&(i, d)).copied().unwrap_or(0)
    }

    /// Σ_i H_i; always 1 for a single semi-infinite wedge (the counts
    /// telescope down the descent).
    pub fn level(&self) -> i64 {
        self.aggregate.values().sum()
    }
}

/// Computes the weight of a semi-infinite wedge. The graded eigenvalue at
/// (i, d) is the multiplicity difference of the flat indices i − nd and
/// i + 1 − nd; only indices at the tail junction or touching the prefix can
/// contribute, so the support is finite.
pub fn weight(alg: Algebra, w: &WedgeTerm) -> WeightReport {
    let t = w.tensor();
    let ts = t
        .tail_start()
        .expect("weights are defined for semi-infinite wedges");
    let charge = ts + t.len() as i64;
    let mut candidates: BTreeSet<FlatIndex> = BTreeSet::new();
    candidates.insert(ts);
    for &v in t.prefix() {
        candidates.insert(v);
        candidates.insert(v - 1);
    }
    let mut graded: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for a in candidates {
        let h = t.count_flat(a) as i64 - t.count_flat(a + 1) as i64;
        if h == 0 {
            continue;
        }
        let key = match alg {
            Algebra::SlInf => (a, 0),
            Algebra::Affine { n } => {
                let i = a.rem_euclid(n as i64);
                (i, (i - a) / n as i64)
            }
        };
        *graded.entry(key).or_insert(0) += h;
    }
    let mut aggregate: BTreeMap<i64, i64> = BTreeMap::new();
    for (&(i, _), &h) in &graded {
        *aggregate.entry(i).or_insert(0) += h;
    }
    aggregate.retain(|_, v| *v != 0);
    #[cfg(debug_assertions)]
    {
        let letters: Vec<i64> = match alg {
            Algebra::Affine { n } => (0..n as i64).collect(),
            Algebra::SlInf => aggregate.keys().copied().collect(),
        };
        for i in letters {
            assert_eq!(
                aggregate.get(&i).copied().unwrap_or(0),
                t.h_eigenvalue(alg, i, 1),
                "aggregate weight disagrees with the running count at {i}"
            );
        }
    }
    let class = match alg {
        Algebra::SlInf => charge,
        Algebra::Affine { n } => charge.rem_euclid(n as i64),
    };
    WeightReport {
        charge,
        class,
        aggregate,
        graded,
    }
}

/// One window pattern whose coefficient changed between the two depths.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilityDiscrepancy {
    pub window: Vec<FlatIndex>,
    pub shallow: LaurentQ,
    pub deep: LaurentQ,
}

/// Outcome of comparing two truncated expansions of the same wedge on the
/// window where the shallow one can be trusted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilityReport {
    pub depths: (usize, usize),
    /// Number of leading slots compared (shallow depth minus the rank).
    pub window: usize,
    pub classical: bool,
    pub compared: usize,
    pub stable: usize,
    pub discrepancies: Vec<StabilityDiscrepancy>,
    /// Lowest q-degree appearing in any coefficient difference.
    pub min_unstable_degree: Option<i64>,
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "stability probe at depths {} and {} ({}), window {} slots",
            self.depths.0,
            self.depths.1,
            if self.classical { "q = 1" } else { "generic q" },
            self.window
        )?;
        writeln!(
            f,
            "  window patterns compared: {}, stable: {}, unstable: {}",
            self.compared,
            self.stable,
            self.discrepancies.len()
        )?;
        match self.min_unstable_degree {
            None => writeln!(f, "  all compared coefficients are stable")?,
            Some(d) => writeln!(f, "  lowest q-degree of any discrepancy: {d}")?,
        }
        for disc in &self.discrepancies {
            writeln!(
                f,
                "  {:?}: shallow {} vs deep {}",
                disc.window, disc.shallow, disc.deep
            )?;
        }
        Ok(())
    }
}

/// Expands `w` at two depths and diffs the coefficients of all tensors whose
/// slots beyond the comparison window still look like the defining tensor.
/// Says nothing the expansion cannot: this is evidence about stabilization,
/// not a proof.
pub fn stability_probe(
    alg: Algebra,
    w: &WedgeTerm,
    shallow_depth: usize,
    deep_depth: usize,
    classical: bool,
) -> Result<StabilityReport, FockError> {
    assert!(shallow_depth < deep_depth);
    let margin = alg.rank().unwrap_or(1);
    let window = shallow_depth - margin;
    let mut shallow = expand(alg, w, shallow_depth)?;
    let mut deep = expand(alg, w, deep_depth)?;
    if classical {
        shallow = shallow.eval_q1();
        deep = deep.eval_q1();
    }
    let collect =
        |e: &TensorVector, depth: usize| -> Result<BTreeMap<Vec<FlatIndex>, LaurentQ>, FockError> {
            let defining = w.tensor().truncate(depth)?;
            let mut out = BTreeMap::new();
            for (t, c) in e.iter() {
                if t.prefix()[window..] == defining.prefix()[window..] {
                    out.insert(t.prefix()[..window].to_vec(), c.clone());
                }
            }
            Ok(out)
        };
    let sh = collect(&shallow, shallow_depth)?;
    let dp = collect(&deep, deep_depth)?;
    let keys: BTreeSet<Vec<FlatIndex>> = sh.keys().chain(dp.keys()).cloned().collect();
    let mut discrepancies = Vec::new();
    let mut min_deg: Option<i64> = None;
    for k in &keys {
        let a = sh.get(k).cloned().unwrap_or_else(LaurentQ::zero);
        let b = dp.get(k).cloned().unwrap_or_else(LaurentQ::zero);
        if a != b {
            if let Some(d) = (a.clone() - b.clone()).min_degree() {
                min_deg = Some(min_deg.map_or(d, |m| m.min(d)));
            }
            discrepancies.push(StabilityDiscrepancy {
                window: k.clone(),
                shallow: a,
                deep: b,
            });
        }
    }
    Ok(StabilityReport {
        depths: (shallow_depth, deep_depth),
        window,
        classical,
        compared: keys.len(),
        stable: keys.len() - discrepancies.len(),
        discrepancies,
        min_unstable_degree: min_deg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::{apply_ti, poincare_polynomial, Permutation};
    use proptest::prelude::*;

    fn wt(prefix: Vec<i64>, tail: i64) -> WedgeTerm {
        WedgeTerm::new(PureTensor::semi_infinite(prefix, tail)).unwrap()
    }

    fn unit_finite(values: &[i64]) -> TensorVector {
        TensorVector::unit(PureTensor::finite(values.to_vec()))
    }

    /// Checks that the claimed normal form really decomposes the
    /// antisymmetrization: Σ_σ x·T_σ must equal Σ_w c_w Σ_σ w·T_σ.
    fn assert_brute_force_agrees(alg: Algebra, values: &[i64]) {
        let d = values.len();
        let x = unit_finite(values);
        let nf = straighten(alg, &x).unwrap();
        let lhs = antisymmetrize(alg, &x, d).unwrap();
        let mut rhs = TensorVector::zero();
        for (w, c) in nf.iter() {
            let a = antisymmetrize(alg, &TensorVector::unit(w.tensor().clone()), d).unwrap();
            rhs.add_scaled(&a, c);
        }
        assert_eq!(lhs, rhs, "decomposition failed for {values:?}");
    }

    #[test]
    fn straighten_sorts_adjacent_transpositions() {
        // distinct letters: a single transposition costs −q
        let nf = straighten(Algebra::SlInf, &unit_finite(&[1, 2])).unwrap();
        let sorted = WedgeTerm::new(PureTensor::finite(vec![2, 1])).unwrap();
        assert_eq!(nf.coeff(&sorted), -LaurentQ::q_pow(1));
        assert_eq!(nf.len(), 1);
        // equal letters, adjacent exponents: the swap costs only the sign
        let alg = Algebra::affine(2);
        let nf = straighten(alg, &unit_finite(&[0, 2])).unwrap();
        let sorted = WedgeTerm::new(PureTensor::finite(vec![2, 0])).unwrap();
        assert_eq!(nf.coeff(&sorted), -LaurentQ::one());
        assert_eq!(nf.len(), 1);
    }

    #[test]
    fn straighten_kills_repeats() {
        for alg in [Algebra::SlInf, Algebra::affine(2)] {
            assert!(straighten(alg, &unit_finite(&[3, 3])).unwrap().is_zero());
            assert!(straighten(alg, &unit_finite(&[1, 4, 4])).unwrap().is_zero());
            // a repeat hidden behind the junction: the prefix value -3
            // collides with the frozen descent -1, -2, -3, ...
            let x = TensorVector::unit(PureTensor::semi_infinite(vec![-3, 0], -1));
            assert!(straighten(alg, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn straighten_canonicalizes_junctions() {
        let alg = Algebra::affine(2);
        // already sorted across the junction; only the representation shrinks
        let x = TensorVector::unit(PureTensor::semi_infinite(vec![5, 0], -1));
        let nf = straighten(alg, &x).unwrap();
        assert_eq!(nf, WedgeVector::unit(wt(vec![5], 0)));
        // unsorted against a live junction: unroll, sort, re-strip
        let x = TensorVector::unit(PureTensor::semi_infinite(vec![0, 2], -1));
        let nf = straighten(alg, &x).unwrap();
        assert_eq!(
            nf,
            WedgeVector::unit(wt(vec![2], 0)).scale(&-LaurentQ::one())
        );
    }

    #[test]
    fn straighten_matches_brute_force_antisymmetrization() {
        // every two-slot label in a window, all letter alignments
        for alg in [Algebra::SlInf, Algebra::affine(2), Algebra::affine(3)] {
            for a in -4..=4 {
                for b in -4..=4 {
                    assert_brute_force_agrees(alg, &[a, b]);
                }
            }
        }
        // three slots over a smaller window
        for alg in [Algebra::SlInf, Algebra::affine(2)] {
            for a in -2..=3 {
                for b in -2..=3 {
                    for c in -2..=3 {
                        assert_brute_force_agrees(alg, &[a, b, c]);
                    }
                }
            }
        }
    }

    #[test]
    fn straighten_intertwines_the_hecke_action() {
        // straightening turns ·T_i into multiplication by q²
        let samples: Vec<Vec<i64>> = vec![
            vec![1, 3, -2],
            vec![0, 0, 2],
            vec![-1, 2, 1, 0],
            vec![2, -3, 1, -1],
        ];
        for alg in [Algebra::SlInf, Algebra::affine(2), Algebra::affine(3)] {
            for values in &samples {
                let x = unit_finite(values);
                let base = straighten(alg, &x).unwrap();
                for i in 1..values.len() {
                    let moved = straighten(alg, &apply_ti(alg, &x, i).unwrap()).unwrap();
                    assert_eq!(moved, base.scale(&LaurentQ::q_pow(2)));
                }
            }
        }
    }

    #[test]
    fn straighten_at_q_one_is_signed_sorting() {
        let alg = Algebra::affine(2);
        let cases: Vec<(Vec<i64>, i64)> = vec![
            (vec![1, 2], -1),
            (vec![2, 1], 1),
            (vec![0, 1, 2], -1),    // reversing three slots: odd # of inversions
            (vec![-1, 3, 0], 1),    // two inversions
            (vec![3, -1, 2, 0], 1), // ascents (-1,2) and (-1,0): even
        ];
        for (values, sign) in cases {
            let nf = straighten(alg, &unit_finite(&values)).unwrap().eval_q1();
            let mut sorted = values.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let target = WedgeTerm::new(PureTensor::finite(sorted)).unwrap();
            assert_eq!(nf.coeff(&target), LaurentQ::int(sign));
            assert_eq!(nf.len(), 1);
        }
    }

    #[test]
    fn expansion_matches_two_slot_hand_computation() {
        // class-0 vacuum at depth 2: the descent, minus q times its swap
        let alg = Algebra::affine(2);
        let vac = WedgeTerm::class_vacuum(alg, 0);
        let e = expand(alg, &vac, 2).unwrap();
        let mut expected = TensorVector::unit(PureTensor::semi_infinite(vec![0, -1], -2));
        expected.add_term(
            PureTensor::semi_infinite(vec![-1, 0], -2),
            -LaurentQ::q_pow(1),
        );
        assert_eq!(e, expected);
        // too shallow a depth is a boundary error, not a silent truncation
        assert!(matches!(
            expand(alg, &wt(vec![3, 1], -2), 3),
            Err(FockError::BoundaryViolation { .. })
        ));
    }

    #[test]
    fn expansion_at_q_one_is_the_signed_sum() {
        for (alg, depth) in [(Algebra::affine(2), 4), (Algebra::SlInf, 3)] {
            let w = wt(vec![3], 1);
            let e = expand(alg, &w, depth).unwrap().eval_q1();
            let base = w.at_depth(depth).unwrap();
            let mut expected = TensorVector::zero();
            for sigma in Permutation::all(depth) {
                expected.add_term(sigma.permute_slots(&base), LaurentQ::int(sigma.sign()));
            }
            assert_eq!(e, expected);
        }
    }

    #[test]
    fn expansion_is_unitriangular_with_unit_leading_coefficient() {
        let cases: Vec<(Algebra, WedgeTerm, usize)> = vec![
            (
                Algebra::affine(2),
                WedgeTerm::class_vacuum(Algebra::affine(2), 0),
                3,
            ),
            (Algebra::affine(2), wt(vec![3, 1], -2), 4),
            (Algebra::affine(2), wt(vec![4, 2, 1], -2), 5),
            (Algebra::affine(3), wt(vec![3, 1], -2), 5),
            (Algebra::SlInf, wt(vec![2, 0], -2), 4),
            (Algebra::SlInf, wt(vec![4, 2, 1], -2), 4),
        ];
        for (alg, w, depth) in cases {
            let e = expand(alg, &w, depth).unwrap();
            let defining = w.at_depth(depth).unwrap();
            assert!(
                e.coeff(&defining).is_one(),
                "defining coefficient {} for {w:?} at depth {depth} ({alg:?})",
                e.coeff(&defining)
            );
            let dvals = defining.prefix();
            for (t, _) in e.iter() {
                let v = t.prefix();
                if *t == defining || !v.windows(2).all(|p| p[0] > p[1]) {
                    continue;
                }
                // any other sorted label is strictly dominated: partial sums
                // never exceed the defining ones and dip below somewhere
                let mut run_t = 0i64;
                let mut run_d = 0i64;
                let mut strict = false;
                for k in 0..depth {
                    run_t += v[k];
                    run_d += dvals[k];
                    assert!(run_t <= run_d, "{t:?} not dominated by {defining:?}");
                    strict |= run_t < run_d;
                }
                assert_eq!(run_t, run_d, "pair sums must be preserved");
                assert!(strict);
            }
        }
    }

    #[test]
    fn restraightening_expansion_scales_by_poincare() {
        // the antisymmetrizer acts on its own image by Σ_σ q^(2 length σ), so
        // re-straightening a depth-L expansion returns the wedge scaled by
        // exactly that polynomial; dividing it out is the identity
        let cases: Vec<(Algebra, WedgeTerm, usize)> = vec![
            (
                Algebra::affine(2),
                WedgeTerm::class_vacuum(Algebra::affine(2), 0),
                2,
            ),
            (
                Algebra::affine(2),
                WedgeTerm::class_vacuum(Algebra::affine(2), 1),
                3,
            ),
            (Algebra::affine(2), wt(vec![3, 1], -2), 4),
            (Algebra::affine(3), wt(vec![2], -1), 4),
            (Algebra::SlInf, wt(vec![2, 0], -2), 4),
        ];
        for (alg, w, depth) in cases {
            let e = expand(alg, &w, depth).unwrap();
            let nf = straighten(alg, &e).unwrap();
            let expected = WedgeVector::unit(w.clone()).scale(&poincare_polynomial(depth));
            assert_eq!(nf, expected, "at depth {depth}: {w:?}");
        }
    }

    #[test]
    fn young_diagram_examples() {
        // the two-row diagram (3,2) in the charge-0 sector, any rank
        for alg in [Algebra::affine(2), Algebra::affine(3)] {
            let w = wt(vec![3, 1], -2);
            let (p, r) = young_from_wedge(&w);
            assert_eq!(p, Partition::new(vec![3, 2]));
            assert_eq!(r, 0);
            assert_eq!(wedge_from_young(alg, &p, 0, 4).unwrap(), w);
        }
        // direct formula: indices 2, 0, -2, -3, ... over the charge-0 descent
        let w = wt(vec![2, 0, -2], -3);
        let (p, r) = young_from_wedge(&w);
        assert_eq!(p, Partition::new(vec![2, 1]));
        assert_eq!(r, 0);
        // vacua of every class correspond to the empty diagram
        for alg in [Algebra::affine(2), Algebra::affine(3), Algebra::SlInf] {
            for class in -1..=2 {
                let (p, r) = young_from_wedge(&WedgeTerm::class_vacuum(alg, class));
                assert_eq!(p, Partition::empty());
                assert_eq!(r, class_charge(alg, class));
            }
        }
        // depth must hold all the rows
        assert!(matches!(
            wedge_from_young(Algebra::affine(2), &Partition::new(vec![3, 2, 1]), 0, 2),
            Err(WedgeError::Fock(FockError::TruncationTooShallow { .. }))
        ));
    }

    #[test]
    fn weight_of_class_vacua_is_fundamental() {
        for n in [2usize, 3] {
            let alg = Algebra::affine(n);
            for class in 0..n as i64 {
                let rep = weight(alg, &WedgeTerm::class_vacuum(alg, class));
                for j in 0..n as i64 {
                    assert_eq!(rep.h(j), i64::from(j == class), "n={n} class={class}");
                }
                assert_eq!(rep.level(), 1);
                assert_eq!(rep.class, class);
            }
        }
        let rep = weight(Algebra::SlInf, &WedgeTerm::class_vacuum(Algebra::SlInf, 2));
        assert_eq!(rep.h(2), 1);
        assert_eq!(rep.aggregate.len(), 1);
        assert_eq!(rep.graded_h(2, 0), 1);
    }

    #[test]
    fn weight_counts_graded_pieces_exactly() {
        // lowering the class-0 vacuum once along the affine root moves the
        // weight to Λ_0 − α_0 = (−1, 2) and spreads it over two degrees
        let alg = Algebra::affine(2);
        let w = wt(vec![1], -1);
        let rep = weight(alg, &w);
        assert_eq!(rep.charge, 0);
        assert_eq!(rep.class, 0);
        assert_eq!(rep.h(0), -1);
        assert_eq!(rep.h(1), 2);
        assert_eq!(rep.level(), 1);
        let graded: Vec<((i64, i64), i64)> = rep.graded.iter().map(|(k, v)| (*k, *v)).collect();
        assert_eq!(graded, vec![((0, 0), -1), ((1, 0), 1), ((1, 1), 1)]);
    }

    #[test]
    fn weight_level_is_one_on_samples() {
        let shapes = [vec![], vec![1], vec![2, 1], vec![3, 3, 1], vec![4, 2, 2, 1]];
        for alg in [Algebra::affine(2), Algebra::affine(3), Algebra::SlInf] {
            for shape in &shapes {
                for class in 0..2 {
                    let w =
                        wedge_from_charge(&Partition::new(shape.clone()), class_charge(alg, class));
                    assert_eq!(weight(alg, &w).level(), 1, "{w:?}");
                }
            }
        }
    }

    #[test]
    fn probe_vacuum_window_is_stable_below_degree_two() {
        let alg = Algebra::affine(2);
        let vac = WedgeTerm::class_vacuum(alg, 0);
        let rep = stability_probe(alg, &vac, 4, 6, false).unwrap();
        assert_eq!(rep.window, 2);
        assert!(rep.compared > 0);
        assert!(
            rep.min_unstable_degree.is_none_or(|d| d >= 2),
            "low-degree drift: {rep}"
        );
    }

    #[test]
    fn probe_smoke_on_perturbed_wedge() {
        let alg = Algebra::affine(2);
        let w = wt(vec![2, 0], -2);
        let rep = stability_probe(alg, &w, 5, 7, false).unwrap();
        assert_eq!(rep.depths, (5, 7));
        assert_eq!(rep.compared, rep.stable + rep.discrepancies.len());
        // the report renders
        assert!(!format!("{rep}").is_empty());
    }

    #[test]
    fn probe_classical_is_exactly_stable() {
        // at q = 1 distinct labels keep the tail slots unreachable, so the
        // window coefficients agree on the nose
        let alg = Algebra::affine(2);
        let vac = WedgeTerm::class_vacuum(alg, 0);
        let rep = stability_probe(alg, &vac, 4, 6, true).unwrap();
        assert!(rep.discrepancies.is_empty());
        assert!(rep.compared > 0);
    }

    #[test]
    fn wedge_term_validation_and_canonical_form() {
        assert!(matches!(
            WedgeTerm::new(PureTensor::finite(vec![1, 5])),
            Err(WedgeError::RecognitionFailure(1))
        ));
        assert!(matches!(
            WedgeTerm::new(PureTensor::semi_infinite(vec![3, 1], 1)),
            Err(WedgeError::RecognitionFailure(2))
        ));
        // representations of the same semi-infinite sequence collapse
        let a = wt(vec![3, 1, 0, -1], -2);
        let b = wt(vec![3, 1], 0);
        assert_eq!(a, b);
        assert_eq!(a.charge(), Some(2));
        assert_eq!(a.class(Algebra::affine(2)), Some(0));
        assert_eq!(a.class(Algebra::SlInf), Some(2));
    }

    #[test]
    fn partition_basics() {
        let p = Partition::new(vec![3, 2, 0, 0]);
        assert_eq!(p.parts(), &[3, 2]);
        assert_eq!(p.rows(), 2);
        assert_eq!(p.boxes(), 5);
        assert_eq!(format!("{p:?}"), "[3,2]");
        assert_eq!(format!("{:?}", Partition::empty()), "[]");
    }

    #[test]
    fn wedge_vector_arithmetic() {
        let a = wt(vec![2], 0);
        let b = wt(vec![3], 0);
        let mut v = WedgeVector::unit(a.clone());
        v.add_term(b.clone(), LaurentQ::q_pow(1));
        v.add_term(a.clone(), -LaurentQ::one());
        assert_eq!(v.len(), 1);
        assert_eq!(v.coeff(&b), LaurentQ::q_pow(1));
        let tensors = v.to_tensors(3).unwrap();
        assert_eq!(
            tensors.coeff(&PureTensor::semi_infinite(vec![3, 0, -1], -2)),
            LaurentQ::q_pow(1)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn young_round_trip(
            mut rows in proptest::collection::vec(1u64..=4, 0..4),
            class in -2i64..=2,
            affine in proptest::bool::ANY,
        ) {
            rows.sort_unstable_by(|a, b| b.cmp(a));
            let alg = if affine { Algebra::affine(2) } else { Algebra::SlInf };
            let p = Partition::new(rows);
            let w = wedge_from_young(alg, &p, class, p.rows().max(1)).unwrap();
            let (p2, r2) = young_from_wedge(&w);
            prop_assert_eq!(p2, p);
            prop_assert_eq!(r2, class_charge(alg, class));
        }

        #[test]
        fn straighten_decomposition_random_width_three(
            values in proptest::collection::vec(-4i64..=4, 3),
            pick in 0u8..3,
        ) {
            let alg = match pick {
                0 => Algebra::SlInf,
                1 => Algebra::affine(2),
                _ => Algebra::affine(3),
            };
            assert_brute_force_agrees(alg, &values);
        }
    }
}
