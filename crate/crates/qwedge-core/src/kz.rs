//! Exact verification that the finite signed antisymmetrization solves the
//! rational exchange (KZ) system.
//!
//! The claim: with `t_ij = P_ij − (1/n)·id`, where `P_ij` switches the
//! vectors (but not the variables) in slots `i` and `j`, the function
//!
//! ```text
//! F = Π_{i<j} (z_i − z_j)^{−1/n} · W,
//! W = v_n ∧ v_{n−1} ∧ ⋯ ∧ v_1 ∧ z·v_n ∧ ⋯ ∧ z^{N−1}·v_1
//! ```
//!
//! satisfies `(∂/∂z_i − (1/(n+1)) Σ_{j≠i} t_ij/(z_i − z_j))·F = 0` for every
//! slot `i`. The fractional-power prefactor is never represented: dividing
//! the equation by the prefactor and using its log-derivative
//! `∂_i log Π (z_k − z_l)^{−1/n} = −(1/n) Σ_{j≠i} 1/(z_i − z_j)` together
//! with the rewrite `t_ij/(n+1) + (1/n)·id = (P_ij + id)/(n+1)` turns the
//! system into the algebraically equivalent reduced identity on the
//! polynomial part alone:
//!
//! ```text
//! R_i(W) = ∂_i W − (1/(n+1)) Σ_{j≠i} (P_ij + id)·W / (z_i − z_j) = 0,
//! ```
//!
//! where every division is exact — `(P_ij + id)·W` being divisible by
//! `(z_i − z_j)` is itself a checked sub-property. [`kz_residual`] clears
//! the denominators by `Π_{j≠i}(z_i − z_j)` and returns the resulting
//! polynomials, all of which must vanish. Both ingredient identities of the
//! reduction are unit-tested symbolically at small sizes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::coeff::PolyZ;
use crate::error::KzError;
use crate::hecke::Permutation;

/// An element of `V^{⊗nN}` with polynomial coefficients: a finite map from
/// length-`nN` letter tuples (letters in `1..=n`) to polynomials in
/// `z_1..z_{nN}` with exact rational coefficients. Slot `s` of a tuple is
/// paired with the variable `z_s` for good.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KZVector {
    letters: usize,
    nvars: usize,
    entries: BTreeMap<Vec<u8>, PolyZ>,
}

impl KZVector {
    pub fn zero(letters: usize, nvars: usize) -> Self {
        assert!(letters >= 2);
        KZVector {
            letters,
            nvars,
            entries: BTreeMap::new(),
        }
    }

    /// Number of letters `n` (tuple entries range over `1..=n`).
    pub fn letters(&self) -> usize {
        self.letters
    }

    /// Number of slots, which is also the number of `z`-variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<u8>, p: PolyZ) {
        assert_eq!(tuple.len(), self.nvars);
        assert_eq!(p.nvars(), self.nvars);
        assert!(tuple.iter().all(|&l| (1..=self.letters as u8).contains(&l)));
        if p.is_zero() {
            return;
        }
        let merged = match self.entries.remove(&tuple) {
            Some(existing) => &existing + &p,
            None => p,
        };
        if !merged.is_zero() {
            self.entries.insert(tuple, merged);
        }
    }

    pub fn add_scaled(&mut self, other: &KZVector, c: &BigRational) {
        assert_eq!(self.letters, other.letters);
        assert_eq!(self.nvars, other.nvars);
        for (tuple, p) in &other.entries {
            self.add_term(tuple.clone(), p.scale(c));
        }
    }

    pub fn scale(&self, c: &BigRational) -> KZVector {
        let mut out = KZVector::zero(self.letters, self.nvars);
        out.add_scaled(self, c);
        out
    }

    /// Multiplies every coefficient polynomial by `p`.
    pub fn mul_poly(&self, p: &PolyZ) -> KZVector {
        let mut out = KZVector::zero(self.letters, self.nvars);
        for (tuple, q) in &self.entries {
            out.add_term(tuple.clone(), q * p);
        }
        out
    }

    pub fn coeff(&self, tuple: &[u8]) -> PolyZ {
        self.entries
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| PolyZ::zero(self.nvars))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &PolyZ)> {
        self.entries.iter()
    }

    /// The simultaneous action of the transposition `(k l)`: switches the
    /// vectors *and* the variables in slots `k` and `l` (1-based). The
    /// antisymmetrized wedge polynomial changes sign under every such swap.
    pub fn swap_slots(&self, k: usize, l: usize) -> KZVector {
        assert!((1..=self.nvars).contains(&k));
        assert!((1..=self.nvars).contains(&l));
        let mut out = KZVector::zero(self.letters, self.nvars);
        for (tuple, p) in &self.entries {
            let mut t = tuple.clone();
            t.swap(k - 1, l - 1);
            let mut q = PolyZ::zero(self.nvars);
            for (exps, c) in p.terms() {
                let mut e = exps.clone();
                e.swap(k - 1, l - 1);
                q = &q + &PolyZ::monomial(self.nvars, e, c.clone());
            }
            out.add_term(t, q);
        }
        out
    }
}

/// How an [`ExchangeOperator`] acts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExchangeMode {
    /// `P_ij`: switch the vectors (but not the variables).
    Swap,
    /// `t_ij = P_ij − (1/n)·id`.
    T,
}

/// The two-slot operators of the exchange system, acting on [`KZVector`]s
/// via [`apply_exchange`]. Satisfies `P_ij² = id` and
/// `t_ij = P_ij − (1/n)·id` with `n` the vector's letter count.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExchangeOperator {
    pub i: usize,
    pub j: usize,
    pub mode: ExchangeMode,
}

impl ExchangeOperator {
    pub fn swap(i: usize, j: usize) -> Self {
        ExchangeOperator {
            i,
            j,
            mode: ExchangeMode::Swap,
        }
    }

    pub fn t(i: usize, j: usize) -> Self {
        ExchangeOperator {
            i,
            j,
            mode: ExchangeMode::T,
        }
    }
}

/// Applies an exchange operator exactly. `P` permutes the letters in slots
/// `i`, `j` of every tuple and leaves the polynomials alone; `t` applies `P`
/// and then subtracts `(1/n)` times the input.
pub fn apply_exchange(op: &ExchangeOperator, x: &KZVector) -> KZVector {
    assert!((1..=x.nvars).contains(&op.i));
    assert!((1..=x.nvars).contains(&op.j));
    let mut out = KZVector::zero(x.letters, x.nvars);
    for (tuple, p) in &x.entries {
        let mut t = tuple.clone();
        t.swap(op.i - 1, op.j - 1);
        out.add_term(t, p.clone());
    }
    if op.mode == ExchangeMode::T {
        let minus_inv_n = BigRational::new(BigInt::from(-1), BigInt::from(x.letters as i64));
        out.add_scaled(x, &minus_inv_n);
    }
    out
}

/// All of `S_d` in one-line notation, lexicographically.
pub(crate) fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in 1..=d {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(d, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(
        d,
        &mut Vec::with_capacity(d),
        &mut vec![false; d + 1],
        &mut out,
    );
    out
}

/// The signed antisymmetrization with the slot contents shifted by `offset`
/// extra powers of `z`: slot `s` of the defining tensor carries letter
/// `n − ((s−1) mod n)` and exponent `(s−1) div n + offset`.
fn wedge_poly_with_offset(n: usize, copies: usize, offset: i32) -> Result<KZVector, KzError> {
    assert!(n >= 2, "need at least two letters");
    assert!(copies >= 1, "need at least one cycle");
    let nv = n * copies;
    if nv > 8 {
        return Err(KzError::SizeCap(format!(
            "antisymmetrizing {nv} slots exceeds the cap of 8"
        )));
    }
    let letter = |s: usize| (n - ((s - 1) % n)) as u8;
    let expo = |s: usize| ((s - 1) / n) as i32 + offset;
    let mut out = KZVector::zero(n, nv);
    for line in permutations(nv) {
        let sigma = Permutation::from_one_line(line);
        let mut tuple = Vec::with_capacity(nv);
        let mut exps = vec![0i32; nv];
        for (s, e) in exps.iter_mut().enumerate() {
            let src = sigma.image(s + 1);
            tuple.push(letter(src));
            *e = expo(src);
        }
        out.add_term(
            tuple,
            PolyZ::monomial(nv, exps, BigRational::from(BigInt::from(sigma.sign()))),
        );
    }
    Ok(out)
}

/// The finite wedge polynomial `W`: the signed sum over all of `S_{nN}`,
/// permuting vectors and variables simultaneously, of the defining tensor
/// `v_n ⊗ v_{n−1} ⊗ ⋯ ⊗ v_1 ⊗ z·v_n ⊗ ⋯ ⊗ z^{N−1}·v_1` (slot `s` reading
/// its power of `z` in its own variable `z_s`). Capped at `nN ≤ 8` slots.
pub fn finite_wedge_poly(n: usize, copies: usize) -> Result<KZVector, KzError> {
    wedge_poly_with_offset(n, copies, 0)
}

/// The reduced exchange-system residual at slot `i` (1-based), cleared of
/// denominators: for each letter tuple, the polynomial
///
/// ```text
/// Π_{j≠i}(z_i − z_j) · [ ∂_i W − (1/(n+1)) Σ_{j≠i} (P_ij + id)·W / (z_i − z_j) ]
/// ```
///
/// with every inner division performed exactly. Returns one entry per tuple
/// (zero polynomials included, so the caller sees each tuple's verdict);
/// fails with [`KzError::NotDivisible`] if some `(P_ij + id)·W` is not
/// divisible by `(z_i − z_j)` — which signals that `x` was not an
/// antisymmetrized wedge polynomial.
pub fn kz_residual(x: &KZVector, n: usize, i: usize) -> Result<Vec<(Vec<u8>, PolyZ)>, KzError> {
    assert_eq!(n, x.letters(), "letter count disagrees with the vector");
    let nv = x.nvars();
    assert!((1..=nv).contains(&i), "slot out of range");
    let mut clearing = PolyZ::one(nv);
    for j in (1..=nv).filter(|&j| j != i) {
        clearing = &clearing * &PolyZ::var_diff(nv, i, j);
    }
    let mut residual: BTreeMap<Vec<u8>, PolyZ> = BTreeMap::new();
    let mut bump = |tuple: &Vec<u8>, p: PolyZ| {
        let slot = residual
            .entry(tuple.clone())
            .or_insert_with(|| PolyZ::zero(nv));
        *slot = &*slot + &p;
    };
    for (tuple, p) in x.iter() {
        bump(tuple, &p.derivative(i) * &clearing);
    }
    let scale = BigRational::new(BigInt::from(-1), BigInt::from(n as i64 + 1));
    for j in (1..=nv).filter(|&j| j != i) {
        let mut symmetrized = apply_exchange(&ExchangeOperator::swap(i, j), x);
        symmetrized.add_scaled(x, &BigRational::one());
        let divisor = PolyZ::var_diff(nv, i, j);
        for (tuple, p) in symmetrized.iter() {
            let quotient = p
                .divide_exact(&divisor)
                .map_err(|_| KzError::NotDivisible { i, j })?;
            bump(tuple, (&quotient * &clearing).scale(&scale));
        }
    }
    Ok(residual.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn the_two_slot_wedge_is_the_signed_swap() {
        let w = finite_wedge_poly(2, 1).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.coeff(&[2, 1]), PolyZ::one(2));
        assert_eq!(w.coeff(&[1, 2]), PolyZ::int(2, -1));
        // the vector-only swap negates it
        let swapped = apply_exchange(&ExchangeOperator::swap(1, 2), &w);
        assert_eq!(swapped, w.scale(&rat(-1, 1)));
    }

    #[test]
    fn the_four_slot_wedge_expands_to_twenty_four_signed_monomials() {
        let w = finite_wedge_poly(2, 2).unwrap();
        // six letter tuples (two 2s, two 1s), four monomials each
        assert_eq!(w.len(), 6);
        let monomials: usize = w.iter().map(|(_, p)| p.terms().count()).sum();
        assert_eq!(monomials, 24);
        // the identity permutation contributes z_3·z_4 to (v2, v1, v2, v1)
        let p = w.coeff(&[2, 1, 2, 1]);
        assert_eq!(p.coeff(&[0, 0, 1, 1]), rat(1, 1));
        // and that coefficient factors as (z_1 − z_3)(z_2 − z_4)
        let factored = &PolyZ::var_diff(4, 1, 3) * &PolyZ::var_diff(4, 2, 4);
        assert_eq!(p, factored);
    }

    #[test]
    fn simultaneous_slot_swaps_negate_the_wedge() {
        for (n, copies) in [(2usize, 2usize), (3, 1)] {
            let w = finite_wedge_poly(n, copies).unwrap();
            let nv = n * copies;
            for k in 1..nv {
                assert_eq!(w.swap_slots(k, k + 1), w.scale(&rat(-1, 1)), "adjacent {k}");
            }
            if nv >= 3 {
                assert_eq!(w.swap_slots(1, 3), w.scale(&rat(-1, 1)), "non-adjacent");
            }
        }
    }

    #[test]
    fn exchange_operators_satisfy_their_algebra() {
        for (n, copies, i, j) in [(2usize, 2usize, 1usize, 3usize), (3, 1, 1, 2)] {
            let w = finite_wedge_poly(n, copies).unwrap();
            let p = ExchangeOperator::swap(i, j);
            let t = ExchangeOperator::t(i, j);

            // P² = id
            let twice = apply_exchange(&p, &apply_exchange(&p, &w));
            assert_eq!(twice, w);

            // t² = (P − 1/n)² = (1 + 1/n²)·id − (2/n)·P
            let t_twice = apply_exchange(&t, &apply_exchange(&t, &w));
            let pw = apply_exchange(&p, &w);
            let mut expected = w.scale(&rat(n as i64 * n as i64 + 1, n as i64 * n as i64));
            expected.add_scaled(&pw, &rat(-2, n as i64));
            assert_eq!(t_twice, expected);
        }
    }

    #[test]
    fn reduction_identities_hold_symbolically() {
        // Log-derivative of the full difference product, cleared: with
        // P = Π_{k<l}(z_k − z_l),
        //   ∂_i P · Π_{j≠i}(z_i − z_j)  =  P · Σ_{j≠i} Π_{j'≠i,j}(z_i − z_j').
        // Raising P to the −1/n scales both sides by −1/n, which is the form
        // the reduction uses.
        for nv in [3usize, 4] {
            let mut prod = PolyZ::one(nv);
            for k in 1..=nv {
                for l in (k + 1)..=nv {
                    prod = &prod * &PolyZ::var_diff(nv, k, l);
                }
            }
            for i in 1..=nv {
                let mut clearing = PolyZ::one(nv);
                for j in (1..=nv).filter(|&j| j != i) {
                    clearing = &clearing * &PolyZ::var_diff(nv, i, j);
                }
                let lhs = &prod.derivative(i) * &clearing;
                let mut rhs = PolyZ::zero(nv);
                for j in (1..=nv).filter(|&j| j != i) {
                    let mut partial = PolyZ::one(nv);
                    for j2 in (1..=nv).filter(|&j2| j2 != i && j2 != j) {
                        partial = &partial * &PolyZ::var_diff(nv, i, j2);
                    }
                    rhs = &rhs + &(&prod * &partial);
                }
                assert_eq!(lhs, rhs, "nv={nv}, i={i}");
            }
        }

        // t_ij/(n+1) + (1/n)·id = (P_ij + id)/(n+1) as operators.
        for (n, copies) in [(2usize, 2usize), (3, 1)] {
            let w = finite_wedge_poly(n, copies).unwrap();
            let t = apply_exchange(&ExchangeOperator::t(1, 2), &w);
            let p = apply_exchange(&ExchangeOperator::swap(1, 2), &w);
            let mut lhs = t.scale(&rat(1, n as i64 + 1));
            lhs.add_scaled(&w, &rat(1, n as i64));
            let mut rhs = p.scale(&rat(1, n as i64 + 1));
            rhs.add_scaled(&w, &rat(1, n as i64 + 1));
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn residuals_vanish_at_desk_scale() {
        for (n, copies) in [(2usize, 1usize), (2, 2), (3, 1)] {
            let w = finite_wedge_poly(n, copies).unwrap();
            for i in 1..=(n * copies) {
                let residual = kz_residual(&w, n, i).unwrap();
                assert!(!residual.is_empty());
                for (tuple, p) in &residual {
                    assert!(
                        p.is_zero(),
                        "(n,N)=({n},{copies}), slot {i}, tuple {tuple:?}: {p:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn the_two_product_forms_differ_by_the_variable_monomial() {
        // The shifted-exponent form equals z_1⋯z_{nN} times the plain form,
        // so both clear to the same residual conclusion.
        for (n, copies) in [(2usize, 2usize), (3, 1)] {
            let nv = n * copies;
            let w = finite_wedge_poly(n, copies).unwrap();
            let shifted = wedge_poly_with_offset(n, copies, 1).unwrap();
            let all_vars = PolyZ::monomial(nv, vec![1; nv], BigRational::one());
            assert_eq!(shifted, w.mul_poly(&all_vars), "n={n}, N={copies}");
        }
    }

    #[test]
    fn non_wedge_input_fails_the_divisibility_check() {
        let mut x = KZVector::zero(2, 2);
        x.add_term(vec![1, 2], PolyZ::one(2));
        let err = kz_residual(&x, 2, 1).unwrap_err();
        assert_eq!(err, KzError::NotDivisible { i: 1, j: 2 });
    }

    #[test]
    fn oversized_wedge_polynomials_are_capped() {
        assert!(matches!(finite_wedge_poly(3, 3), Err(KzError::SizeCap(_))));
        assert!(matches!(finite_wedge_poly(2, 5), Err(KzError::SizeCap(_))));
    }

    /// A small random vector with letters in `1..=3` on three slots.
    fn small_vector() -> impl Strategy<Value = KZVector> {
        proptest::collection::vec(
            (
                proptest::collection::vec(1u8..=3, 3),
                proptest::collection::vec(0i32..=2, 3),
                -3i64..=3,
            ),
            1..=4,
        )
        .prop_map(|entries| {
            let mut x = KZVector::zero(3, 3);
            for (tuple, exps, c) in entries {
                x.add_term(tuple, PolyZ::monomial(3, exps, rat(c, 1)));
            }
            x
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn vector_swaps_are_involutions(x in small_vector(), i in 1usize..=3, j in 1usize..=3) {
            prop_assume!(i != j);
            let p = ExchangeOperator::swap(i, j);
            prop_assert_eq!(apply_exchange(&p, &apply_exchange(&p, &x)), x);
        }

        #[test]
        fn t_is_swap_minus_a_third(x in small_vector(), i in 1usize..=3, j in 1usize..=3) {
            prop_assume!(i != j);
            let mut expected = apply_exchange(&ExchangeOperator::swap(i, j), &x);
            expected.add_scaled(&x, &rat(-1, 3));
            prop_assert_eq!(apply_exchange(&ExchangeOperator::t(i, j), &x), expected);
        }
    }
}
