//! Rational D(1)-triples from three parameters, their regular fourth element,
//! and the quartics that decide when the resulting quadruple is doubly
//! regular.
//!
//! With `x² = abcd` the scaled set `{a/x, b/x, c/x, d/x}` is again a regular
//! D(1)-quadruple. Substituting `t1 = k/(t2·t3)` and `t2 = m - 1/t3` turns
//! the squareness of `abcd` into a quartic `Q(t3) = w²` over ℚ(k, m).

use num_traits::{One, Zero};

use crate::dncore::{verify_rat_d1, RatQuad};
use crate::error::{Error, Result};
use crate::exactnum::{rat, rat_square_root_exact, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleParams {
    pub t1: Rat,
    pub t2: Rat,
    pub t3: Rat,
}

fn two() -> Rat {
    rat(2, 1)
}

impl TripleParams {
    pub fn new(t1: Rat, t2: Rat, t3: Rat) -> Self {
        TripleParams { t1, t2, t3 }
    }

    fn product(&self) -> Rat {
        &self.t1 * &self.t2 * &self.t3
    }

    /// The rational D(1)-triple `(a, b, c)`.
    pub fn lasic_triple(&self) -> Result<(Rat, Rat, Rat)> {
        let s = self.product();
        if s.is_one() || (-&s).is_one() {
            return Err(Error::DegenerateParameters(format!("t1·t2·t3 = {s}")));
        }
        let one = Rat::one();
        let den = (&s - &one) * (&s + &one);
        let (t1, t2, t3) = (&self.t1, &self.t2, &self.t3);
        let a = two() * t1 * (&one + t1 * t2 * (&one + t2 * t3)) / &den;
        let b = two() * t2 * (&one + t2 * t3 * (&one + t3 * t1)) / &den;
        let c = two() * t3 * (&one + t3 * t1 * (&one + t1 * t2)) / &den;
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::DegenerateTriple(format!("zero element in ({a}, {b}, {c})")));
        }
        if a == b || a == c || b == c {
            return Err(Error::DegenerateTriple(format!("repeated element in ({a}, {b}, {c})")));
        }
        Ok((a, b, c))
    }

    /// The `d` making `{a, b, c, d}` a regular D(1)-quadruple.
    pub fn regular_fourth(&self) -> Result<Rat> {
        let s = self.product();
        if s.is_one() {
            return Err(Error::DegenerateParameters("t1·t2·t3 = 1".into()));
        }
        let one = Rat::one();
        let (t1, t2, t3) = (&self.t1, &self.t2, &self.t3);
        let num = two()
            * (&one + &s)
            * (t1 * t2 + &one + t2)
            * (t1 + &one + t3 * t1)
            * (&one + t3 + t2 * t3);
        let den = num_traits::pow(&s - &one, 3);
        Ok(num / den)
    }

    pub fn rational_quadruple(&self) -> Result<RatQuad> {
        let (a, b, c) = self.lasic_triple()?;
        let d = self.regular_fourth()?;
        RatQuad::new([a, b, c, d]).map_err(|e| Error::DegenerateTriple(format!("fourth element: {e}")))
    }
}

/// `c4·x⁴ + c2·x² + c0`, the condition for `{a/x, b/x, c/x, d/x}` to be
/// regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticX {
    pub c4: Rat,
    pub c2: Rat,
    pub c0: Rat,
}

impl QuarticX {
    pub fn eval(&self, x: &Rat) -> Rat {
        let x2 = x * x;
        &self.c4 * &x2 * &x2 + &self.c2 * &x2 + &self.c0
    }
}

pub fn quartic_in_x(q: &RatQuad) -> QuarticX {
    let [a, b, c, d] = q.elements();
    let pair_sum = a * b + a * c + a * d + b * c + b * d + c * d;
    let square_sum = a * a + b * b + c * c + d * d;
    QuarticX {
        c4: rat(4, 1),
        c2: two() * pair_sum - square_sum,
        c0: rat(4, 1) * q.product(),
    }
}

/// Positive `x` with `x² = abcd` for a regular rational D(1)-quadruple.
pub fn solve_x(q: &RatQuad) -> Result<Option<Rat>> {
    if !q.is_regular(&Rat::one()) || verify_rat_d1(q).is_none() {
        return Err(Error::Precondition(format!("{q} is not a regular D(1)-quadruple")));
    }
    Ok(rat_square_root_exact(&q.product()))
}

/// `m = (k² - z²) / (k(2z - 1 - k²))`, which makes `k(km+1)(k+m) = (km+z)²`.
pub fn m_from_k(k: &Rat, z: &Rat) -> Result<Rat> {
    let den = k * (two() * z - Rat::one() - k * k);
    if den.is_zero() {
        return Err(Error::Domain(format!("m undefined at k = {k}, z = {z}")));
    }
    Ok((k * k - z * z) / den)
}

/// The `(k, m)` plane with the auxiliary `z` from `k(km+1)(k+m) = (km+z)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmChart {
    pub k: Rat,
    pub z: Rat,
    pub m: Rat,
}

impl KmChart {
    pub fn new(k: Rat, z: Rat) -> Result<Self> {
        let m = m_from_k(&k, &z)?;
        Ok(KmChart { k, z, m })
    }

    /// The standard chart `z = 2`.
    pub fn standard(k: Rat) -> Result<Self> {
        KmChart::new(k, two())
    }

    /// Recovers `z` from an arbitrary `m`; needs `k(km+1)(k+m)` to be a
    /// rational square.
    pub fn from_km(k: Rat, m: Rat) -> Result<Self> {
        let value = &k * (&k * &m + Rat::one()) * (&k + &m);
        let root = rat_square_root_exact(&value)
            .ok_or_else(|| Error::Domain(format!("k(km+1)(k+m) = {value} is not a square")))?;
        let z = root - &k * &m;
        if m_from_k(&k, &z)? != m {
            return Err(Error::Domain(format!("chart inconsistent at k = {k}, m = {m}")));
        }
        Ok(KmChart { k, z, m })
    }

    /// `t2 = m - 1/t3`, `t1 = k/(t2·t3)`.
    pub fn params(&self, t3: &Rat) -> Result<TripleParams> {
        if t3.is_zero() {
            return Err(Error::Domain("t3 = 0".into()));
        }
        let t2 = &self.m - t3.recip();
        if t2.is_zero() {
            return Err(Error::DegenerateChart(format!("t3 = 1/m = {t3} gives t2 = 0")));
        }
        let t1 = &self.k / (&t2 * t3);
        Ok(TripleParams::new(t1, t2, t3.clone()))
    }

    pub fn quartic(&self) -> QuarticT3 {
        quartic_t3(&self.k, &self.m)
    }
}

/// `t_chart(k, t3)` on the standard chart.
pub fn t_chart(k: &Rat, t3: &Rat) -> Result<TripleParams> {
    KmChart::standard(k.clone())?.params(t3)
}

/// `c4·t³⁴ + c3·t³³ + c2·t³² + c1·t3`; no constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticT3 {
    pub c4: Rat,
    pub c3: Rat,
    pub c2: Rat,
    pub c1: Rat,
}

impl QuarticT3 {
    pub fn eval(&self, t: &Rat) -> Rat {
        (((&self.c4 * t + &self.c3) * t + &self.c2) * t + &self.c1) * t
    }

    /// `w ≥ 0` with `w² = Q(t)`.
    pub fn root_at(&self, t: &Rat) -> Option<Rat> {
        rat_square_root_exact(&self.eval(t))
    }

    pub fn coefficients(&self) -> [&Rat; 4] {
        [&self.c4, &self.c3, &self.c2, &self.c1]
    }
}

pub fn quartic_t3(k: &Rat, m: &Rat) -> QuarticT3 {
    let one = Rat::one();
    let r = |n: i64| rat(n, 1);
    let km1 = k * m + &one;
    let kpm = k + m;
    let mp1 = m + &one;
    let km = k - &one;
    let common = k * &mp1 * &km1 * &kpm;
    QuarticT3 {
        c4: &common * &mp1 * &kpm * &kpm,
        c3: &common * &km * (k * m + r(3) * m + r(2) * k + r(2)) * &kpm,
        c2: &common * &km * &km * (k * k + r(2) * k * m + r(3) * k + r(3) * m + &one),
        c1: &common * (k + &one) * &km * &km * &km,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::is_rat_square;
    use proptest::prelude::*;

    fn r(n: i64) -> Rat {
        rat(n, 1)
    }

    #[test]
    fn lasic_example() {
        let p = TripleParams::new(r(1), r(1), r(2));
        assert_eq!(p.lasic_triple().unwrap(), (rat(8, 3), rat(14, 3), rat(20, 3)));
        assert_eq!(p.regular_fourth().unwrap(), r(360));
        let quad = p.rational_quadruple().unwrap();
        assert!(quad.is_regular(&r(1)));
        assert!(verify_rat_d1(&quad).is_some());
        assert_eq!(r(20) / r(3) * r(360) + r(1), r(49 * 49));
    }

    #[test]
    fn degenerate_parameters() {
        let p = TripleParams::new(r(1), r(1), r(1));
        assert!(matches!(p.lasic_triple(), Err(Error::DegenerateParameters(_))));
        assert!(matches!(p.regular_fourth(), Err(Error::DegenerateParameters(_))));
        let p = TripleParams::new(r(-1), r(1), r(1));
        assert!(matches!(p.lasic_triple(), Err(Error::DegenerateParameters(_))));
        // t1 = 0 gives a = 0
        let p = TripleParams::new(r(0), r(1), r(2));
        assert!(matches!(p.lasic_triple(), Err(Error::DegenerateTriple(_))));
    }

    #[test]
    fn quartic_in_x_examples() {
        let fermat = crate::dncore::Quad::from_i64([1, 3, 8, 120]).unwrap().to_rat();
        let qx = quartic_in_x(&fermat);
        assert_eq!((qx.c4.clone(), qx.c2.clone(), qx.c0.clone()), (r(4), r(-11524), r(11520)));
        assert_eq!(qx.c2, -r(4) * (r(1) + fermat.product()));
        assert!(qx.eval(&r(1)).is_zero());
        assert_eq!(solve_x(&fermat).unwrap(), None);

        let lasic = TripleParams::new(r(1), r(1), r(2)).rational_quadruple().unwrap();
        assert_eq!(quartic_in_x(&lasic).c0, rat(358_400, 3));
    }

    #[test]
    fn solve_x_requires_regular_d1() {
        let not_regular = crate::dncore::Quad::from_i64([1, 3, 8, 121]).unwrap().to_rat();
        assert!(matches!(solve_x(&not_regular), Err(Error::Precondition(_))));
    }

    #[test]
    fn m_from_k_examples() {
        assert_eq!(m_from_k(&r(3), &r(2)).unwrap(), rat(-5, 18));
        assert!(matches!(m_from_k(&r(0), &r(2)), Err(Error::Domain(_))));
        // -1 - k² + 2z = 0 at k = 1, z = 1
        assert!(m_from_k(&r(1), &r(1)).is_err());
    }

    #[test]
    fn quartic_t3_special_points() {
        let k = r(3);
        let m = m_from_k(&k, &r(2)).unwrap();
        let q = quartic_t3(&k, &m);
        assert!(q.eval(&Rat::zero()).is_zero());
        assert_eq!(m.recip(), rat(-18, 5));
        assert!(q.root_at(&rat(-18, 5)).is_some());
    }

    #[test]
    fn t_chart_examples() {
        assert!(matches!(t_chart(&r(3), &rat(-18, 5)), Err(Error::DegenerateChart(_))));
        assert!(matches!(t_chart(&r(3), &Rat::zero()), Err(Error::Domain(_))));
        let p = t_chart(&r(3), &rat(9522, 23095)).unwrap();
        assert_eq!(p.t2, rat(-1430, 529));
        assert_eq!(p.t1, rat(-4619, 1716));
    }

    #[test]
    fn chart_from_km_recovers_z() {
        let chart = KmChart::standard(rat(7, 3)).unwrap();
        let again = KmChart::from_km(chart.k.clone(), chart.m.clone()).unwrap();
        assert_eq!(again.m, chart.m);
        assert!(KmChart::from_km(r(3), r(1)).is_err());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-30i64..=30, 1i64..=30).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn random_params_give_regular_d1_quadruples(t1 in small_rat(), t2 in small_rat(), t3 in small_rat()) {
            let p = TripleParams::new(t1, t2, t3);
            if let Ok((a, b, c)) = p.lasic_triple() {
                let one = Rat::one();
                prop_assert!(is_rat_square(&(&a * &b + &one)));
                prop_assert!(is_rat_square(&(&a * &c + &one)));
                prop_assert!(is_rat_square(&(&b * &c + &one)));
            }
            if let Ok(quad) = p.rational_quadruple() {
                prop_assert!(quad.is_regular(&Rat::one()));
                prop_assert!(verify_rat_d1(&quad).is_some());
                let qx = quartic_in_x(&quad);
                prop_assert_eq!(&qx.c2, &(-r(4) * (Rat::one() + quad.product())));
                prop_assert_eq!(&qx.c0, &(r(4) * quad.product()));
            }
        }

        #[test]
        fn m_from_k_makes_ab_square(k in small_rat()) {
            if let Ok(m) = m_from_k(&k, &r(2)) {
                let value = &k * (&k * &m + Rat::one()) * (&k + &m);
                let km2 = &k * &m + r(2);
                prop_assert_eq!(&value, &(&km2 * &km2));
                prop_assert!(is_rat_square(&value));
                let q = quartic_t3(&k, &m);
                prop_assert!(q.eval(&Rat::zero()).is_zero());
                if !m.is_zero() {
                    prop_assert!(q.root_at(&m.recip()).is_some());
                }
            }
        }

        // abcd = 16·Q(t3) / ((k-1)⁶ (k+1)² (m·t3 - 1)²) on the (k, m) chart
        #[test]
        fn quartic_t3_tracks_abcd(k in small_rat(), m in small_rat(), t3 in small_rat()) {
            let one = Rat::one();
            prop_assume!(!t3.is_zero() && k != one && k != -&one);
            let t2 = &m - t3.recip();
            prop_assume!(!t2.is_zero());
            let p = TripleParams::new(&k / (&t2 * &t3), t2, t3.clone());
            if let Ok(quad) = p.rational_quadruple() {
                let mt = &m * &t3 - &one;
                let scale = r(16) / (num_traits::pow(&k - &one, 6) * (&k + &one) * (&k + &one) * &mt * &mt);
                prop_assert_eq!(quad.product(), scale * quartic_t3(&k, &m).eval(&t3));
            }
        }
    }
}
