//! D(n)-quadruples: verification, regularity, equivalence and normalization.
//!
//! A set `{a, b, c, d}` of distinct nonzero integers is a D(n)-quadruple when
//! every pairwise product plus `n` is a perfect square. It is *regular* when
//! `n(d + c - a - b)^2 = 4(ab + n)(cd + n)` for some split of the set into two
//! pairs `{a, b} | {c, d}`. Quadruples are sets, so every check here is
//! independent of element order.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{gcd_all, int_square_root_exact, rat_from_int, rat_square_root_exact, Int, Rat};

/// Index pairs `(i, j)`, `i < j`, in the order witness roots are stored.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The three ways to split four elements into two pairs.
pub const PAIRINGS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

fn check_distinct_nonzero<T: PartialEq + Zero + fmt::Display>(elements: &[T; 4]) -> Result<()> {
    if let Some(z) = elements.iter().position(Zero::is_zero) {
        return Err(Error::Domain(format!("element {z} is zero")));
    }
    for (i, j) in PAIRS {
        if elements[i] == elements[j] {
            return Err(Error::Domain(format!("repeated element {}", elements[i])));
        }
    }
    Ok(())
}

/// Four distinct nonzero integers. Positions carry the (a, b, c, d) roles for
/// reporting only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad([Int; 4]);

impl Quad {
    pub fn new(elements: [Int; 4]) -> Result<Self> {
        check_distinct_nonzero(&elements)?;
        Ok(Quad(elements))
    }

    pub fn from_i64(elements: [i64; 4]) -> Result<Self> {
        Quad::new(elements.map(Int::from))
    }

    pub fn elements(&self) -> &[Int; 4] {
        &self.0
    }

    pub fn to_rat(&self) -> RatQuad {
        RatQuad(self.0.clone().map(Rat::from_integer))
    }

    pub fn is_regular(&self, n: &Int) -> bool {
        self.to_rat().is_regular(&rat_from_int(n))
    }

    /// Elements sorted ascending.
    pub fn sorted(&self) -> [Int; 4] {
        let mut e = self.0.clone();
        e.sort();
        e
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "{{{a}, {b}, {c}, {d}}}")
    }
}

/// Four distinct nonzero rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatQuad([Rat; 4]);

impl RatQuad {
    pub fn new(elements: [Rat; 4]) -> Result<Self> {
        check_distinct_nonzero(&elements)?;
        Ok(RatQuad(elements))
    }

    pub fn elements(&self) -> &[Rat; 4] {
        &self.0
    }

    pub fn product(&self) -> Rat {
        self.0.iter().product()
    }

    /// Index of the pairing satisfying the regularity equation, if any.
    pub fn regular_pairing(&self, n: &Rat) -> Option<usize> {
        PAIRINGS.iter().position(|&[i, j, k, l]| {
            let e = &self.0;
            let diff = &e[k] + &e[l] - &e[i] - &e[j];
            n * &diff * &diff == Rat::from_integer(Int::from(4)) * (&e[i] * &e[j] + n) * (&e[k] * &e[l] + n)
        })
    }

    pub fn is_regular(&self, n: &Rat) -> bool {
        self.regular_pairing(n).is_some()
    }

    pub fn scale(&self, factor: &Rat) -> Result<RatQuad> {
        RatQuad::new(self.0.clone().map(|e| e * factor))
    }
}

impl fmt::Display for RatQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "{{{a}, {b}, {c}, {d}}}")
    }
}

/// Square roots certifying that a quadruple has property D(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnWitness {
    pub n: Int,
    /// `roots[p]² = e[i]·e[j] + n` for `(i, j) = PAIRS[p]`; all nonnegative.
    pub roots: [Int; 6],
}

impl DnWitness {
    /// Re-checks every root against the quadruple.
    pub fn certifies(&self, q: &Quad) -> bool {
        let e = q.elements();
        PAIRS
            .iter()
            .zip(&self.roots)
            .all(|(&(i, j), r)| !r.is_negative() && r * r == &e[i] * &e[j] + &self.n)
    }
}

/// Like [`verify_dn`] but reports the first pair whose product plus `n` is
/// not a square.
pub fn check_dn(q: &Quad, n: &Int) -> std::result::Result<DnWitness, (usize, usize)> {
    let e = q.elements();
    let mut roots: [Int; 6] = Default::default();
    for (slot, &(i, j)) in roots.iter_mut().zip(&PAIRS) {
        *slot = int_square_root_exact(&(&e[i] * &e[j] + n)).ok_or((i, j))?;
    }
    Ok(DnWitness { n: n.clone(), roots })
}

pub fn verify_dn(q: &Quad, n: &Int) -> Option<DnWitness> {
    check_dn(q, n).ok()
}

/// Rational roots of all six `e[i]·e[j] + 1`, in [`PAIRS`] order.
pub fn verify_rat_d1(q: &RatQuad) -> Option<[Rat; 6]> {
    let e = q.elements();
    let one = Rat::one();
    let mut roots: [Rat; 6] = Default::default();
    for (slot, &(i, j)) in roots.iter_mut().zip(&PAIRS) {
        *slot = rat_square_root_exact(&(&e[i] * &e[j] + &one))?;
    }
    Some(roots)
}

/// `{a/ℓ, b/ℓ, c/ℓ, d/ℓ}`: regular as a D(1)-quadruple exactly when the
/// input is regular for D(ℓ²).
pub fn scale_regularity_reduction(q: &Quad, ell: &Int) -> Result<RatQuad> {
    if ell.is_zero() {
        return Err(Error::Domain("scaling by zero".into()));
    }
    q.to_rat().scale(&Rat::new(Int::one(), ell.clone()))
}

fn sorted_rats(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort();
    v
}

/// The `u` with `q2 = u·q1` as sets and `ns2 = u²·ns1` as multisets.
pub fn equivalent(q1: &Quad, ns1: &[Int], q2: &Quad, ns2: &[Int]) -> Option<Rat> {
    if ns1.len() != ns2.len() {
        return None;
    }
    let target = sorted_rats(q2.elements().iter().map(rat_from_int).collect());
    let target_ns = sorted_rats(ns2.iter().map(rat_from_int).collect());
    let first = rat_from_int(&q1.elements()[0]);
    for candidate in q2.elements() {
        let u = rat_from_int(candidate) / &first;
        let scaled = sorted_rats(q1.elements().iter().map(|e| rat_from_int(e) * &u).collect());
        if scaled != target {
            continue;
        }
        let u2 = &u * &u;
        let scaled_ns = sorted_rats(ns1.iter().map(|n| rat_from_int(n) * &u2).collect());
        if scaled_ns == target_ns {
            return Some(u);
        }
    }
    None
}

/// Largest `d` with `d² | h`, found by trial division plus a final
/// perfect-square check on the cofactor. Exact unless the cofactor left after
/// removing primes below 2^16 has a repeated prime yet is not a square.
fn square_divisor_root(h: &Int) -> Int {
    let mut h = h.abs();
    let mut d = Int::one();
    let mut p = Int::from(2u32);
    let bound = Int::from(1u32 << 16);
    while p <= bound && &p * &p <= h {
        let p2 = &p * &p;
        while (&h % &p2).is_zero() {
            h /= &p2;
            d *= &p;
        }
        if (&h % &p).is_zero() {
            h /= &p;
        }
        p += if p == Int::from(2u32) { 1u32 } else { 2u32 };
    }
    if let Some(r) = int_square_root_exact(&h) {
        d *= r;
    }
    d
}

/// Divides out the largest positive `g` with `g | every element` and
/// `g² | every n`, then sorts the elements ascending.
pub fn normalize(q: &Quad, ns: &[Int]) -> (Quad, Vec<Int>) {
    let g_elems = gcd_all(q.elements());
    let roots: Option<Vec<Int>> = ns.iter().map(int_square_root_exact).collect();
    let g = match roots {
        Some(roots) => g_elems.gcd(&gcd_all(&roots)),
        None => {
            let n_gcd = gcd_all(ns);
            square_divisor_root(&(&g_elems * &g_elems).gcd(&n_gcd))
        }
    };
    let g2 = &g * &g;
    let mut elements = q.elements().clone().map(|e| e / &g);
    elements.sort();
    let ns = ns.iter().map(|n| n / &g2).collect();
    (Quad(elements), ns)
}

/// Canonical representative of the equivalence class: primitive integer
/// elements with the sign fixed so the largest-magnitude element is positive,
/// sorted, together with the correspondingly rescaled sorted `ns`.
/// Two pairs are [`equivalent`] iff their keys are equal.
pub fn class_key(q: &Quad, ns: &[Int]) -> (Vec<Int>, Vec<Rat>) {
    let g = gcd_all(q.elements());
    let primitive: Vec<Int> = q.elements().iter().map(|e| e / &g).collect();
    let arrange = |sign: &Int| {
        let mut v: Vec<Int> = primitive.iter().map(|e| e * sign).collect();
        v.sort();
        v
    };
    let pos = arrange(&Int::one());
    let neg = arrange(&-Int::one());
    let max = primitive.iter().map(Signed::abs).max().unwrap_or_default();
    let max_is_positive = primitive.contains(&max);
    let max_is_negative = primitive.contains(&-&max);
    let elements = match (max_is_positive, max_is_negative) {
        (true, false) => pos,
        (false, true) => neg,
        _ => pos.min(neg),
    };
    let g2 = Rat::from_integer(&g * &g);
    let ns = sorted_rats(ns.iter().map(|n| rat_from_int(n) / &g2).collect());
    (elements, ns)
}

/// Everything that makes a quadruple doubly regular: D(n1), D(n2) and D(0)
/// witnesses, regularity for both nonzero parameters, and `n1 ≠ n2` distinct
/// nonzero squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub d_n1: DnWitness,
    pub d_n2: DnWitness,
    pub d_zero: DnWitness,
    pub regular_n1: bool,
    pub regular_n2: bool,
}

pub fn certify_doubly_regular(q: &Quad, n1: &Int, n2: &Int) -> Result<Certificate> {
    let fail = |msg: String| Err(Error::Verification(format!("{q}: {msg}")));
    if n1.is_zero() || n2.is_zero() {
        return fail("n1 and n2 must be nonzero".into());
    }
    if n1 == n2 {
        return fail(format!("n1 = n2 = {n1}"));
    }
    for n in [n1, n2] {
        if int_square_root_exact(n).is_none() {
            return fail(format!("{n} is not a perfect square"));
        }
    }
    let witness = |n: &Int| {
        check_dn(q, n).map_err(|(i, j)| {
            Error::Verification(format!(
                "{q}: product of elements {i},{j} plus {n} is not a square"
            ))
        })
    };
    let d_n1 = witness(n1)?;
    let d_n2 = witness(n2)?;
    let d_zero = witness(&Int::zero())?;
    let regular_n1 = q.is_regular(n1);
    let regular_n2 = q.is_regular(n2);
    if !regular_n1 || !regular_n2 {
        return fail(format!(
            "regularity failed (n1: {regular_n1}, n2: {regular_n2})"
        ));
    }
    Ok(Certificate {
        d_n1,
        d_n2,
        d_zero,
        regular_n1,
        regular_n2,
    })
}
