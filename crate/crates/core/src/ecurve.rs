//! The curve `Y² = (X + A)(X + B)(X + C)` over ℚ attached to a rational `k`,
//! with
//!
//! ```text
//! f = k³ - k² - 3k + 4
//! A = f (k² - 2)²,  B = (k + 1) f (k² - 2)²,  C = (k + 1) f²
//! ```
//!
//! A point's `X` maps back to the quartic parameter via
//! `t3 = k(k-1)(k+1)(k²-3) f / X`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_rat_square, rat, Rat};
use crate::poly::IntPoly;

fn f_poly() -> IntPoly {
    IntPoly::new(&[1, -1, -3, 4])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rat, y: Rat },
}

impl CurvePoint {
    pub fn affine(x: Rat, y: Rat) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn x(&self) -> Option<&Rat> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rat> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { y, .. } => Some(y),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn neg(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), -y),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveK {
    pub k: Rat,
    /// `[A, B, C]`
    pub factors: [Rat; 3],
    /// `[s1, s2, s3]` with `Y² = X³ + s1 X² + s2 X + s3`.
    pub coeffs: [Rat; 3],
}

impl CurveK {
    pub fn new(k: Rat) -> Result<Self> {
        let one = Rat::one();
        let f = f_poly().eval_rat(&k);
        let k2m2 = &k * &k - rat(2, 1);
        let a = &f * &k2m2 * &k2m2;
        let b = (&k + &one) * &a;
        let c = (&k + &one) * &f * &f;
        for (x, y, which) in [(&a, &b, "A, B"), (&a, &c, "A, C"), (&b, &c, "B, C")] {
            if x == y {
                return Err(Error::SingularCurve { k: k.to_string(), which });
            }
        }
        let coeffs = [
            &a + &b + &c,
            &a * &b + &b * &c + &c * &a,
            &a * &b * &c,
        ];
        Ok(CurveK { k, factors: [a, b, c], coeffs })
    }

    pub fn rhs(&self, x: &Rat) -> Rat {
        let [a, b, c] = &self.factors;
        (x + a) * (x + b) * (x + c)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    /// `[T1, T2, T3] = [(-C, 0), (-B, 0), (-A, 0)]`.
    pub fn torsion_points(&self) -> [CurvePoint; 3] {
        let [a, b, c] = &self.factors;
        [c, b, a].map(|v| CurvePoint::affine(-v, Rat::zero()))
    }

    /// `P = (-(k-2)(k+2)(k+1)(k-1) f, k²(k+1) f²)`.
    pub fn point_p(&self) -> CurvePoint {
        let k = &self.k;
        let one = Rat::one();
        let two = rat(2, 1);
        let f = f_poly().eval_rat(k);
        let x = -((k - &two) * (k + &two) * (k + &one) * &f * (k - &one));
        let y = k * k * (k + &one) * &f * &f;
        CurvePoint::affine(x, y)
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let [s1, s2, _] = &self.coeffs;
        let slope = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else if y1 == &-y2 {
            // vertical chord, or tangent at a 2-torsion point
            return CurvePoint::Infinity;
        } else {
            (rat(3, 1) * x1 * x1 + rat(2, 1) * s1 * x1 + s2) / (rat(2, 1) * y1)
        };
        let x3 = &slope * &slope - s1 - x1 - x2;
        let y3 = &slope * (x1 - &x3) - y1;
        CurvePoint::affine(x3, y3)
    }

    /// `n·p` by double-and-add; negative `n` negates.
    pub fn mul(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let mut acc = CurvePoint::Infinity;
        let mut base = p.clone();
        let mut m = n.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            m >>= 1;
            if m > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(if n < 0 { acc.neg() } else { acc })
    }

    /// Whether `f·(X + A)` is a rational square at the point.
    pub fn ac_condition_holds(&self, p: &CurvePoint) -> Result<bool> {
        let x = p
            .x()
            .ok_or_else(|| Error::Domain("ac condition at the point at infinity".into()))?;
        let f = f_poly().eval_rat(&self.k);
        Ok(is_rat_square(&(f * (x + &self.factors[0]))))
    }

    pub fn t3_of(&self, p: &CurvePoint) -> Result<Rat> {
        let x = p
            .x()
            .ok_or_else(|| Error::Domain("t3 of the point at infinity".into()))?;
        t3_from_x(&self.k, x)
    }

    pub fn eval_expr(&self, expr: &PointExpr) -> Result<CurvePoint> {
        let p = self.point_p();
        let torsion = self.torsion_points();
        let mut acc = CurvePoint::Infinity;
        for term in &expr.terms {
            let point = match *term {
                Term::MultipleOfP(n) => self.mul(n, &p)?,
                Term::Torsion(i) => torsion[i - 1].clone(),
            };
            acc = self.add_unchecked(&acc, &point);
        }
        Ok(acc)
    }
}

/// `curve_from_k`
pub fn curve_from_k(k: &Rat) -> Result<CurveK> {
    CurveK::new(k.clone())
}

/// `t3 = k(k-1)(k+1)(k²-3) f / X`.
pub fn t3_from_x(k: &Rat, x: &Rat) -> Result<Rat> {
    if x.is_zero() {
        return Err(Error::Domain("X = 0 has no t3".into()));
    }
    let one = Rat::one();
    let num = k * (k - &one) * (k + &one) * (k * k - rat(3, 1)) * f_poly().eval_rat(k);
    Ok(num / x)
}

/// Closed form labelled `3P` where it is derived. Its `Y` has the opposite
/// sign to the group-law `3P`, so it is `-3P` (same `X`, same `t3`). Fails
/// where `k⁶-6k⁵-3k⁴+28k³-8k²-32k+16` vanishes.
pub fn closed_form_3p(k: &Rat) -> Result<CurvePoint> {
    let den = IntPoly::new(&[1, -6, -3, 28, -8, -32, 16]).eval_rat(k);
    if den.is_zero() {
        return Err(Error::Domain(format!("3P closed form undefined at k = {k}")));
    }
    let one = Rat::one();
    let two = rat(2, 1);
    let f = f_poly().eval_rat(k);
    let x = (k - &two)
        * (k + &two)
        * (k - &one)
        * (k + &one)
        * IntPoly::new(&[3, -2, -13, 8, 16, 0, -16]).eval_rat(k)
        * IntPoly::new(&[5, -6, -27, 40, 32, -64, 16]).eval_rat(k)
        * &f
        / (&den * &den);
    let y = -(k * k)
        * (k + &one)
        * IntPoly::new(&[4, -7, -22, 49, 20, -88, 32, 16]).eval_rat(k)
        * IntPoly::new(&[4, -5, -26, 39, 48, -88, -16, 48]).eval_rat(k)
        * IntPoly::new(&[1, 2, -7, 0, 8, -16, 16]).eval_rat(k)
        * &f
        * &f
        / (&den * &den * &den);
    Ok(CurvePoint::affine(x, y))
}

/// The closed-form point that specializes to the second family at `k = -u²`.
///
/// Labelled `P + T1` where it is derived; under the chord-tangent law it is
/// `2P + T1` (see the tests). Fails where `k³-k²-2k+4` vanishes.
pub fn closed_form_p_plus_t1(k: &Rat) -> Result<CurvePoint> {
    let g = IntPoly::new(&[1, -1, -2, 4]).eval_rat(k);
    if g.is_zero() {
        return Err(Error::Domain(format!("P+T1 closed form undefined at k = {k}")));
    }
    let one = Rat::one();
    let two = rat(2, 1);
    let f = f_poly().eval_rat(k);
    let x = -((k + &one)
        * IntPoly::new(&[1, 2, -7, 0, 8, -16, 16]).eval_rat(k)
        * &f
        * &f)
        / (&g * &g);
    let y = -(&two
        * k
        * k
        * (k - &two)
        * (k + &two)
        * (k + &one)
        * (k * k - rat(3, 1))
        * IntPoly::new(&[2, -1, -7, 4, 4]).eval_rat(k)
        * (k - &one)
        * (k - &one)
        * &f
        * &f)
        / (&g * &g * &g);
    Ok(CurvePoint::affine(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    MultipleOfP(i64),
    /// 1-based index into `[T1, T2, T3]`.
    Torsion(usize),
}

/// A sum of terms `nP` and `Ti`, e.g. `P`, `3P`, `-P`, `T2`, `P+T1`,
/// `2P+T1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointExpr {
    terms: Vec<Term>,
}

impl FromStr for PointExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse point expression {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        for raw in compact.split('+') {
            let term = if let Some(idx) = raw.strip_prefix('T') {
                match idx {
                    "1" | "2" | "3" => Term::Torsion(idx.parse().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            } else if let Some(coef) = raw.strip_suffix('P') {
                let n = match coef {
                    "" => 1,
                    "-" => -1,
                    _ => coef.parse::<i64>().map_err(|_| bad())?,
                };
                Term::MultipleOfP(n)
            } else {
                return Err(bad());
            };
            terms.push(term);
        }
        Ok(PointExpr { terms })
    }
}
