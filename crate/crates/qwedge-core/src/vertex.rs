//! Split-off-first-factor intertwiners on semi-infinite wedges.
//!
//! Splitting off the first tensor factor of every term maps the charge-`c`
//! wedge space into (single factor) ⊗ (charge-`c−1` wedge space), and the
//! map intertwines the coproduct action. This module computes that splitting
//! exactly at a finite working depth: [`split_first`] groups the
//! antisymmetrized expansion of a wedge by its first factor and recognizes
//! every remainder back in the normally ordered basis; [`compose`] iterates
//! the splitting; [`matrix_coefficient`] reads off the finite
//! tensor-product-valued coefficient of a target wedge — for vacuum inputs,
//! the "highest-to-highest" coefficient.
//!
//! The engine never antisymmetrizes the full width. Writing the
//! antisymmetrizer through the length-additive coset factorization
//! `Σ_{σ∈S_L} T_σ = Σ_{r=1}^{L} T_{c_r}·(Σ_{τ∈S_{2..L}} T_τ)` with
//! `c_r = s_{r−1}⋯s_1` (the cycle moving slot `r` to the front), the group
//! of the expansion with a given first factor is (stabilizer sum)-invariant,
//! and restraightening a stabilizer sum only costs the Poincaré scalar. So
//! it suffices to move each slot to the front (`T_{r−1}, …, T_1`), group by
//! the first value, drop it, and straighten the remainder — `L²/2` Hecke
//! steps instead of `L!`.

use std::collections::BTreeMap;

use crate::coeff::LaurentQ;
use crate::error::{FockError, WedgeError};
use crate::fock::{Algebra, FlatIndex, PureTensor, TensorVector};
use crate::hecke::apply_ti;
use crate::wedge::{Straightener, WedgeTerm, WedgeVector};

/// One group of the split expansion: everything whose first tensor factor
/// is `first`, written as `coefficient · rest` with `rest` a wedge vector
/// in the charge-lowered space. When the dominant wedge of the remainder
/// carries a unit (monomial) coefficient it is factored into `coefficient`,
/// so single-wedge remainders print with coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitEntry {
    pub first: FlatIndex,
    pub coefficient: LaurentQ,
    pub rest: WedgeVector,
}

/// The first-factor decomposition of a wedge vector at a working depth,
/// ordered by descending first factor (shallowest group first). Entries are
/// exact wherever the working depth leaves the usual margin; groups whose
/// remainder straightens to zero are omitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitExpansion {
    entries: Vec<SplitEntry>,
}

impl SplitExpansion {
    pub fn entries(&self) -> &[SplitEntry] {
        &self.entries
    }

    pub fn get(&self, first: FlatIndex) -> Option<&SplitEntry> {
        self.entries.iter().find(|e| e.first == first)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The groups as a map `first ↦ coefficient·rest`, with the
    /// normalization folded back in.
    pub fn into_map(self) -> BTreeMap<FlatIndex, WedgeVector> {
        self.entries
            .into_iter()
            .map(|e| (e.first, e.rest.scale(&e.coefficient)))
            .collect()
    }
}

/// Pulls the dominant term's coefficient out of a wedge vector when it is a
/// unit of the coefficient ring (`±q^k`), so that the dominant wedge is left
/// monic. Non-unit dominant coefficients stay in the vector.
fn factor_unit(v: WedgeVector) -> (LaurentQ, WedgeVector) {
    let dominant = v
        .iter()
        .last()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(LaurentQ::one);
    match dominant.monomial_inverse() {
        Some(inv) => (dominant, v.scale(&inv)),
        None => (LaurentQ::one(), v),
    }
}

/// Splits off the first tensor factor of a wedge vector at working depth
/// `depth`: the result groups the depth-`depth` antisymmetrized expansion by
/// its first factor and returns each remainder recognized in the normally
/// ordered basis of the charge-lowered space.
///
/// All terms must be semi-infinite and share one charge (the splitting is
/// defined sector by sector). Requires `depth ≥ prefix length + margin`
/// where the margin is the affine rank (1 in the rank-free case); entries
/// within that margin are exact, deeper entries are boundary-affected.
pub fn split_first(
    alg: Algebra,
    w: &WedgeVector,
    depth: usize,
) -> Result<SplitExpansion, WedgeError> {
    let margin = alg.rank().unwrap_or(1);
    let mut charge: Option<i64> = None;
    let mut groups: BTreeMap<FlatIndex, TensorVector> = BTreeMap::new();
    for (term, c) in w.iter() {
        assert!(
            term.is_semi_infinite(),
            "split_first expects semi-infinite wedges"
        );
        let ch = term.charge().expect("semi-infinite wedges carry a charge");
        if let Some(prev) = charge.replace(ch) {
            assert_eq!(prev, ch, "split_first expects a single charge sector");
        }
        let need = term.tensor().len() + margin;
        if depth < need {
            return Err(FockError::BoundaryViolation { slot: need, depth }.into());
        }
        let x = TensorVector::unit(term.tensor().truncate(depth)?);
        for r in 1..=depth {
            // x·T_{c_r} with c_r = s_{r−1}⋯s_1: apply T_{r−1} first, T_1
            // last, carrying slot r to the front.
            let mut y = x.clone();
            for i in (1..r).rev() {
                y = apply_ti(alg, &y, i)?;
            }
            for (t, tc) in y.iter() {
                let first = t.prefix()[0];
                let rest = PureTensor::semi_infinite(
                    t.prefix()[1..].to_vec(),
                    t.tail_start().expect("truncation keeps the tail"),
                );
                groups
                    .entry(first)
                    .or_insert_with(TensorVector::zero)
                    .add_term(rest, c * tc);
            }
        }
    }
    let mut st = Straightener::new(alg);
    let mut entries = Vec::new();
    for (first, dropped) in groups.into_iter().rev() {
        let recognized = st.straighten(&dropped)?;
        if recognized.is_zero() {
            continue;
        }
        let (coefficient, rest) = factor_unit(recognized);
        entries.push(SplitEntry {
            first,
            coefficient,
            rest,
        });
    }
    Ok(SplitExpansion { entries })
}

/// An iterated splitting: every length-`width` prefix of first factors,
/// together with the wedge vector left behind in the charge-lowered space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComposeExpansion {
    width: usize,
    target_charge: Option<i64>,
    entries: BTreeMap<Vec<FlatIndex>, (LaurentQ, WedgeVector)>,
}

impl ComposeExpansion {
    pub fn width(&self) -> usize {
        self.width
    }

    /// Charge of the sector the remainders live in (input charge minus the
    /// number of steps); `None` only for a zero input.
    pub fn target_charge(&self) -> Option<i64> {
        self.target_charge
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<FlatIndex>, &(LaurentQ, WedgeVector))> {
        self.entries.iter()
    }

    pub fn get(&self, prefix: &[FlatIndex]) -> Option<&(LaurentQ, WedgeVector)> {
        self.entries.get(prefix)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Iterates [`split_first`] `steps` times, collecting for every tuple of
/// split-off first factors the wedge vector it leaves behind. The working
/// depth shrinks by one per step, so entries are exact on a window that
/// shrinks accordingly; remainders already pressed against the working
/// depth (too long to split at the next depth) are outside that window and
/// are discarded rather than mis-split.
///
/// The classical statements all start from a vacuum; arbitrary inputs are
/// accepted but their deep entries inherit the boundary caveat of
/// [`split_first`], so treat non-vacuum compositions as experimental.
pub fn compose(
    alg: Algebra,
    w: &WedgeVector,
    steps: usize,
    depth: usize,
) -> Result<ComposeExpansion, WedgeError> {
    if depth < steps {
        return Err(FockError::BoundaryViolation { slot: steps, depth }.into());
    }
    let margin = alg.rank().unwrap_or(1);
    let target_charge = w
        .iter()
        .next()
        .map(|(t, _)| t.charge().expect("semi-infinite wedges carry a charge") - steps as i64);
    let mut current: BTreeMap<Vec<FlatIndex>, WedgeVector> = BTreeMap::new();
    current.insert(Vec::new(), w.clone());
    for step in 0..steps {
        let working = depth - step;
        let mut next: BTreeMap<Vec<FlatIndex>, WedgeVector> = BTreeMap::new();
        for (tuple, vec) in &current {
            let mut splittable = WedgeVector::zero();
            for (t, c) in vec.iter() {
                if t.tensor().len() + margin <= working {
                    splittable.add_term(t.clone(), c.clone());
                }
            }
            if splittable.is_zero() {
                continue;
            }
            let split = split_first(alg, &splittable, working)?;
            for e in split.entries() {
                let mut extended = tuple.clone();
                extended.push(e.first);
                next.entry(extended)
                    .or_insert_with(WedgeVector::zero)
                    .add_scaled(&e.rest, &e.coefficient);
            }
        }
        current = next;
    }
    let entries = current
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(tuple, v)| {
            let (c, rest) = factor_unit(v);
            (tuple, (c, rest))
        })
        .collect();
    Ok(ComposeExpansion {
        width: steps,
        target_charge,
        entries,
    })
}

/// Reads off the coefficient of `target` from every prefix group of an
/// iterated splitting and assembles them into a finite tensor-product
/// element: a linear combination of length-`width` tuples of first factors,
/// the `r`-th slot carrying the `r`-th splitting variable.
///
/// `target` must be semi-infinite and live in the expansion's target sector.
pub fn matrix_coefficient(
    expansion: &ComposeExpansion,
    target: &WedgeTerm,
) -> Result<TensorVector, WedgeError> {
    assert!(
        target.is_semi_infinite(),
        "matrix coefficients are taken against semi-infinite wedges"
    );
    let found = target
        .charge()
        .expect("semi-infinite wedges carry a charge");
    if let Some(expected) = expansion.target_charge {
        if found != expected {
            return Err(WedgeError::TargetClassMismatch { expected, found });
        }
    }
    let mut out = TensorVector::zero();
    for (tuple, (c, rest)) in &expansion.entries {
        let a = rest.coeff(target);
        if a.is_zero() {
            continue;
        }
        out.add_term(PureTensor::finite(tuple.clone()), c * &a);
    }
    Ok(out)
}
