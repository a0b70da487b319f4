//! The finite Hecke algebras H_d(q²) acting on tensor slots from the right,
//! reduced-word bookkeeping for the T_σ basis, and q-antisymmetrizers.
//!
//! The generator action on a slot pair is computed in flat coordinates. The
//! two geometric-correction numerators are expanded by exact two-variable
//! polynomial division by (z_i − z_{i+1}); the rank-2 closed forms serve as
//! regression tests, not as the implementation.

use crate::coeff::LaurentQ;
use crate::error::FockError;
use crate::fock::{Algebra, FlatIndex, PureTensor, TensorVector};
use std::collections::BTreeMap;

/// Default width cap for full symmetric-group sums (9! ≈ 3.6·10⁵ terms).
pub const WIDTH_CAP: usize = 9;

/// A permutation in one-line notation. The stored reduced word is recomputed
/// canonically (leftmost-descent bubble sort), so its length always equals
/// the Bruhat length.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    one_line: Vec<u8>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        assert!((1..256).contains(&d));
        Permutation {
            one_line: (1..=d as u8).collect(),
        }
    }

    /// The adjacent transposition σ_i inside S_d (1-based, i < d).
    pub fn adjacent(d: usize, i: usize) -> Self {
        let mut p = Permutation::identity(d);
        p.one_line.swap(i - 1, i);
        p
    }

    pub fn from_one_line(line: Vec<usize>) -> Self {
        let d = line.len();
        let mut seen = vec![false; d + 1];
        for &v in &line {
            assert!(v >= 1 && v <= d && !seen[v], "not a permutation of 1..=d");
            seen[v] = true;
        }
        Permutation {
            one_line: line.into_iter().map(|v| v as u8).collect(),
        }
    }

    /// Build σ_{w_1}·σ_{w_2}⋯σ_{w_l} from any (not necessarily reduced) word.
    pub fn from_word(d: usize, word: &[usize]) -> Self {
        let mut p = Permutation::identity(d);
        for &i in word {
            p = p.right_mul_adjacent(i).0;
        }
        p
    }

    pub fn size(&self) -> usize {
        self.one_line.len()
    }

    /// Image of position `k` (1-based).
    pub fn image(&self, k: usize) -> usize {
        self.one_line[k - 1] as usize
    }

    /// σ·σ_i (swap of positions i, i+1 in one-line notation) and whether the
    /// Bruhat length went up.
    pub fn right_mul_adjacent(&self, i: usize) -> (Permutation, bool) {
        assert!(i >= 1 && i < self.size());
        let up = self.one_line[i - 1] < self.one_line[i];
        let mut line = self.one_line.clone();
        line.swap(i - 1, i);
        (Permutation { one_line: line }, up)
    }

    /// Bruhat length = inversion count.
    pub fn bruhat_length(&self) -> usize {
        let d = self.one_line.len();
        let mut l = 0;
        for i in 0..d {
            for j in (i + 1)..d {
                if self.one_line[i] > self.one_line[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// (−1)^{Bruhat length}.
    pub fn sign(&self) -> i64 {
        if self.bruhat_length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Canonical reduced word: sort the one-line form by repeatedly swapping
    /// at the leftmost descent; each swap contributes one letter, collected
    /// in reverse. The result has exactly `bruhat_length` letters.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut line = self.one_line.clone();
        let mut rev = Vec::new();
        loop {
            let mut moved = false;
            for i in 0..(line.len() - 1) {
                if line[i] > line[i + 1] {
                    line.swap(i, i + 1);
                    rev.push(i + 1);
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        rev.reverse();
        rev
    }

    /// Classical right action on slots: slot k of the result holds the value
    /// at slot σ(k). Slots beyond the permutation's size are untouched.
    pub fn permute_slots(&self, t: &PureTensor) -> PureTensor {
        let d = self.size();
        assert!(d <= t.len(), "permutation wider than the tensor prefix");
        let mut prefix = t.prefix().to_vec();
        for k in 1..=d {
            prefix[k - 1] = t.prefix()[self.image(k) - 1];
        }
        match t.tail_start() {
            Some(tail) => PureTensor::semi_infinite(prefix, tail),
            None => PureTensor::finite(prefix),
        }
    }

    /// All of S_d, in length-increasing order (breadth-first over the weak
    /// order).
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(d)];
        let mut frontier = vec![Permutation::identity(d)];
        while !frontier.is_empty() {
            let mut next = BTreeMap::new();
            for p in &frontier {
                for i in 1..d {
                    let (p2, up) = p.right_mul_adjacent(i);
                    if up {
                        next.entry(p2).or_insert(());
                    }
                }
            }
            frontier = next.into_keys().collect();
            out.extend(frontier.iter().cloned());
        }
        out
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.one_line.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Exact division of a two-variable Laurent polynomial (given as a map
/// (e_x, e_y) → coefficient) by (x − y). Panics if not exactly divisible —
/// all callers pass differences that vanish on x = y.
fn divide_by_variable_difference(mut num: BTreeMap<(i64, i64), i64>) -> Vec<((i64, i64), i64)> {
    let mut quot = Vec::new();
    let mut guard = 0usize;
    while let Some((&(e1, e2), &c)) = num.iter().next_back() {
        num.remove(&(e1, e2));
        quot.push(((e1 - 1, e2), c));
        // subtract c·x^{e1-1}·y^{e2}·(x − y): the head cancels, the cross
        // term folds back into the remainder
        let entry = num.entry((e1 - 1, e2 + 1)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            num.remove(&(e1 - 1, e2 + 1));
        }
        guard += 1;
        assert!(guard < 10_000, "numerator not divisible by (x - y)");
    }
    quot
}

/// The generator action on one slot pair holding flat values (u, w): returns
/// the coefficient of the value-swapped pair and the list of correction
/// terms (coefficient, slot-i value, slot-i+1 value).
///
/// Letters compare three ways; the correction numerator is
/// (z_{i+1}·z^swap − z_i·z) for strictly increasing letters and
/// z_i·(z^swap − z) otherwise, each divided exactly by (z_i − z_{i+1}) and
/// read back through the flat identification. Corrections keep the letters
/// in place and move only exponents, i.e. they shift flat values by
/// multiples of the rank.
pub fn ti_pair_terms(
    alg: Algebra,
    u: FlatIndex,
    w: FlatIndex,
) -> (LaurentQ, Vec<(LaurentQ, FlatIndex, FlatIndex)>) {
    let lu = alg.letter(u);
    let lw = alg.letter(w);
    let a = alg.exponent(u);
    let b = alg.exponent(w);
    let swap_coeff = if lu == lw {
        -LaurentQ::one()
    } else {
        -LaurentQ::q_pow(1)
    };
    let mut num: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let head = if lu < lw { (b, a + 1) } else { (b + 1, a) };
    *num.entry(head).or_insert(0) += 1;
    *num.entry((a + 1, b)).or_insert(0) -= 1;
    num.retain(|_, c| *c != 0);
    let n = alg.rank().map(|n| n as i64).unwrap_or(0);
    let q2m1 = LaurentQ::q_pow(2) - LaurentQ::one();
    let corrections = divide_by_variable_difference(num)
        .into_iter()
        .map(|((e1, e2), c)| (-(&q2m1 * &LaurentQ::int(c)), lu - n * e1, lw - n * e2))
        .collect();
    (swap_coeff, corrections)
}

/// Right action of the generator T_i on a linear combination of tensors.
/// Both slots of the pair must lie inside the explicit prefix; reaching into
/// a frozen tail is a boundary violation, not a silent unroll.
pub fn apply_ti(alg: Algebra, x: &TensorVector, i: usize) -> Result<TensorVector, FockError> {
    let mut out = TensorVector::zero();
    for (t, c) in x.iter() {
        let depth = t.len();
        if i < 1 || i + 1 > depth {
            return Err(FockError::BoundaryViolation { slot: i, depth });
        }
        let u = t.prefix()[i - 1];
        let w = t.prefix()[i];
        let (swap_coeff, corrections) = ti_pair_terms(alg, u, w);
        out.add_term(t.with_pair(i, w, u), c * &swap_coeff);
        for (cc, a, b) in corrections {
            out.add_term(t.with_pair(i, a, b), c * &cc);
        }
    }
    Ok(out)
}

/// Right action of T_σ along a reduced word of σ. Independent of the chosen
/// word by the braid and commutation relations.
pub fn apply_tsigma(
    alg: Algebra,
    x: &TensorVector,
    sigma: &Permutation,
) -> Result<TensorVector, FockError> {
    let mut v = x.clone();
    for i in sigma.reduced_word() {
        v = apply_ti(alg, &v, i)?;
    }
    Ok(v)
}

/// Σ_{σ ∈ S_d} x·T_σ, the q-antisymmetrization over the first d slots.
///
/// σ's are enumerated breadth-first in Bruhat length so that each x·T_σ is
/// one generator step away from an already-computed x·T_{σ'}: d! incremental
/// steps instead of d!·l(σ) generator applications.
pub fn antisymmetrize(alg: Algebra, x: &TensorVector, d: usize) -> Result<TensorVector, FockError> {
    if d > WIDTH_CAP {
        return Err(FockError::SizeCap(format!(
            "antisymmetrization width {d} exceeds the cap {WIDTH_CAP}"
        )));
    }
    if x.is_zero() || d <= 1 {
        return Ok(x.clone());
    }
    if let Some(depth) = x.depth() {
        if d > depth {
            return Err(FockError::BoundaryViolation { slot: d, depth });
        }
    }
    let mut total = x.clone();
    let mut frontier: BTreeMap<Permutation, TensorVector> = BTreeMap::new();
    frontier.insert(Permutation::identity(d), x.clone());
    let mut visited = 1usize;
    while !frontier.is_empty() {
        let mut next: BTreeMap<Permutation, TensorVector> = BTreeMap::new();
        for (sigma, v) in &frontier {
            for i in 1..d {
                let (s2, up) = sigma.right_mul_adjacent(i);
                if up && !next.contains_key(&s2) {
                    next.insert(s2, apply_ti(alg, v, i)?);
                }
            }
        }
        for v in next.values() {
            total.add(v);
        }
        visited += next.len();
        frontier = next;
    }
    debug_assert_eq!(visited, (1..=d).product::<usize>());
    Ok(total)
}

/// Checks the coset identity: antisymmetrizing x·T_i equals q² times
/// antisymmetrizing x, for any slot pair inside the width.
pub fn coset_lemma_check(
    alg: Algebra,
    x: &TensorVector,
    i: usize,
    d: usize,
) -> Result<bool, FockError> {
    let lhs = antisymmetrize(alg, &apply_ti(alg, x, i)?, d)?;
    let rhs = antisymmetrize(alg, x, d)?.scale(&LaurentQ::q_pow(2));
    Ok(lhs == rhs)
}

/// The Poincaré polynomial `Σ_{σ∈S_d} q^{2·length(σ)} = ∏_{k=1}^{d} [k]_{q²}`.
/// This is the scalar by which the antisymmetrizer acts on its own image.
pub fn poincare_polynomial(d: usize) -> LaurentQ {
    let mut out = LaurentQ::one();
    for k in 1..=d {
        let mut factor = LaurentQ::zero();
        for j in 0..k {
            factor += LaurentQ::q_pow(2 * j as i64);
        }
        out = &out * &factor;
    }
    out
}

/// An element of H_d(q²) in the T_σ basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    size: usize,
    terms: BTreeMap<Permutation, LaurentQ>,
}

impl HeckeElement {
    pub fn zero(d: usize) -> Self {
        HeckeElement {
            size: d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(d: usize) -> Self {
        HeckeElement::basis(Permutation::identity(d))
    }

    pub fn generator(d: usize, i: usize) -> Self {
        HeckeElement::basis(Permutation::adjacent(d, i))
    }

    pub fn basis(sigma: Permutation) -> Self {
        let mut terms = BTreeMap::new();
        let size = sigma.size();
        terms.insert(sigma, LaurentQ::one());
        HeckeElement { size, terms }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentQ)> {
        self.terms.iter()
    }

    fn add_term(&mut self, sigma: Permutation, c: LaurentQ) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(sigma) {
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

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        assert_eq!(self.size, other.size);
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentQ) -> HeckeElement {
        let mut out = HeckeElement::zero(self.size);
        for (s, a) in &self.terms {
            out.add_term(s.clone(), a * c);
        }
        out
    }

    /// Right multiplication by the generator T_i:
    /// T_σ·T_i = T_{σσ_i} when the length goes up, else
    /// (q²−1)·T_σ + q²·T_{σσ_i}.
    pub fn mul_generator(&self, i: usize) -> HeckeElement {
        let q2 = LaurentQ::q_pow(2);
        let q2m1 = LaurentQ::q_pow(2) - LaurentQ::one();
        let mut out = HeckeElement::zero(self.size);
        for (sigma, c) in &self.terms {
            let (s2, up) = sigma.right_mul_adjacent(i);
            if up {
                out.add_term(s2, c.clone());
            } else {
                out.add_term(sigma.clone(), c * &q2m1);
                out.add_term(s2, c * &q2);
            }
        }
        out
    }

    pub fn mul(&self, other: &HeckeElement) -> HeckeElement {
        assert_eq!(self.size, other.size);
        let mut out = HeckeElement::zero(self.size);
        for (tau, c) in &other.terms {
            let mut acc = self.clone();
            for i in tau.reduced_word() {
                acc = acc.mul_generator(i);
            }
            for (s, a) in acc.terms {
                out.add_term(s, &a * c);
            }
        }
        out
    }

    /// Right action on a tensor vector: Σ_σ c_σ · (x·T_σ).
    pub fn apply(&self, alg: Algebra, x: &TensorVector) -> Result<TensorVector, FockError> {
        let mut out = TensorVector::zero();
        for (sigma, c) in &self.terms {
            out.add_scaled(&apply_tsigma(alg, x, sigma)?, c);
        }
        Ok(out)
    }
}
