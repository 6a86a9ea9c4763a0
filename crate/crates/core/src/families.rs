//! From curve points to integer doubly regular quadruples, and the two
//! closed-form families.
//!
//! A point `(X, Y)` gives `t3` by inverting `X`, the standard chart gives
//! `t2 = m - 1/t3` and `t1 = k/(t2·t3)`, and the triple parametrization with
//! its regular fourth element gives a rational D(1)-quadruple `{a, b, c, d}`.
//! When `abcd = x²` and all six products are squares, scaling by the least
//! `L` that clears the denominators of the elements and of `x` yields integers
//! that are regular D(L²)-, regular D((xL)²)- and D(0)-quadruples.

use std::fmt;

use num_traits::{One, Zero};

use crate::dncore::{certify_doubly_regular, equivalent, normalize, Certificate, Quad, RatQuad, PAIRS};
use crate::ecurve::{closed_form_3p, curve_from_k, t3_from_x, CurvePoint};
use crate::error::{Error, Result};
use crate::exactnum::{common_denominator, int_square_root_exact, rat_square_root_exact, Int, Rat};
use crate::param::{KmChart, TripleParams};
use crate::poly::FactoredForm;

/// How `e[i]·e[j] + x²` behaves for one pair of a rational quadruple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairStatus {
    Square,
    /// `-k` times a nonzero rational square.
    NegKSquare,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Prop1,
    Prop2,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyId::Prop1 => "prop1",
            FamilyId::Prop2 => "prop2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm { family: FamilyId, parameter: Int },
    Point { k: Rat, tag: String },
    Search { k: Rat, m: Rat, t3: Rat },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::ClosedForm { family, parameter } => {
                let name = match family {
                    FamilyId::Prop1 => "k",
                    FamilyId::Prop2 => "u",
                };
                write!(f, "{family}:{name}={parameter}")
            }
            Provenance::Point { k, tag } => write!(f, "point:k={k}:{tag}"),
            Provenance::Search { k, m, t3 } => write!(f, "search:k={k}:m={m}:t3={t3}"),
        }
    }
}

/// A verified doubly regular quadruple with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub provenance: Provenance,
    /// Absent for closed-form instances.
    pub chart: Option<KmChart>,
    pub params: Option<TripleParams>,
    pub rational: RatQuad,
    pub x: Rat,
    pub quad: Quad,
    pub n1: Int,
    pub n2: Int,
    pub n3: Int,
    pub multiplier: Int,
    pub certificate: Certificate,
}

impl FamilyInstance {
    pub fn ns(&self) -> [Int; 3] {
        [self.n1.clone(), self.n2.clone(), self.n3.clone()]
    }

    pub fn normalized(&self) -> (Quad, Vec<Int>) {
        normalize(&self.quad, &self.ns())
    }

    pub fn equivalent_to(&self, other: &FamilyInstance) -> Option<Rat> {
        equivalent(&self.quad, &self.ns(), &other.quad, &other.ns())
    }

    /// Re-runs the full verifier and the scaling invariants.
    pub fn verify(&self) -> Result<Certificate> {
        let l = Rat::from_integer(self.multiplier.clone());
        let scaled = self.rational.scale(&l)?;
        if scaled != self.quad.to_rat() {
            return Err(Error::Verification("quad ≠ L × rational quadruple".into()));
        }
        if self.n1 != &self.multiplier * &self.multiplier {
            return Err(Error::Verification("n1 ≠ L²".into()));
        }
        let xl = &self.x * &l;
        if Rat::from_integer(self.n2.clone()) != &xl * &xl {
            return Err(Error::Verification("n2 ≠ (xL)²".into()));
        }
        if !self.n3.is_zero() {
            return Err(Error::Verification("n3 ≠ 0".into()));
        }
        certify_doubly_regular(&self.quad, &self.n1, &self.n2)
    }
}

/// The rational quadruple and `x` for one `t3` on a chart, before any
/// integrality or squareness requirement on the six products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalStage {
    pub chart: KmChart,
    pub params: TripleParams,
    pub rational: RatQuad,
    pub x: Rat,
    pub statuses: [PairStatus; 6],
}

fn classify(value: &Rat, k: &Rat) -> PairStatus {
    if rat_square_root_exact(value).is_some() {
        PairStatus::Square
    } else if !k.is_zero() && !value.is_zero() && rat_square_root_exact(&(value / -k)).is_some() {
        PairStatus::NegKSquare
    } else {
        PairStatus::Other
    }
}

pub fn rational_stage(chart: &KmChart, t3: &Rat) -> Result<RationalStage> {
    let params = chart.params(t3)?;
    let rational = params.rational_quadruple()?;
    let product = rational.product();
    let x = rat_square_root_exact(&product).ok_or_else(|| Error::NotConstructible {
        reason: format!("abcd = {product} is not a square"),
        statuses: None,
    })?;
    let x2 = &x * &x;
    let e = rational.elements();
    let statuses = PAIRS.map(|(i, j)| classify(&(&e[i] * &e[j] + &x2), &chart.k));
    Ok(RationalStage {
        chart: chart.clone(),
        params,
        rational,
        x,
        statuses,
    })
}

/// Clears denominators and certifies. Requires all six statuses square.
pub fn instance_from_stage(provenance: Provenance, stage: RationalStage) -> Result<FamilyInstance> {
    if stage.x.is_one() {
        return Err(Error::TrivialSolution);
    }
    if stage.statuses.iter().any(|s| *s != PairStatus::Square) {
        let reason = if stage.statuses[1] != PairStatus::Square {
            "ac + x² is not a square".to_string()
        } else {
            "some product plus x² is not a square".to_string()
        };
        return Err(Error::NotConstructible {
            reason,
            statuses: Some(stage.statuses),
        });
    }
    let elements = stage.rational.elements();
    let multiplier = common_denominator(elements.iter().chain([&stage.x]));
    let l = Rat::from_integer(multiplier.clone());
    let ints = elements.clone().map(|e| (e * &l).to_integer());
    let quad = Quad::new(ints).map_err(|e| Error::DegenerateInstance(e.to_string()))?;
    let n1 = &multiplier * &multiplier;
    let xl = (&stage.x * &l).to_integer();
    let n2 = &xl * &xl;
    let certificate = certify_doubly_regular(&quad, &n1, &n2)?;
    Ok(FamilyInstance {
        provenance,
        chart: Some(stage.chart),
        params: Some(stage.params),
        rational: stage.rational,
        x: stage.x,
        quad,
        n1,
        n2,
        n3: Int::zero(),
        multiplier,
        certificate,
    })
}

/// The full pipeline for one curve point on the standard chart (`z = 2`).
pub fn quadruple_from_point(k: &Rat, point: &CurvePoint, tag: &str) -> Result<FamilyInstance> {
    let curve = curve_from_k(k)?;
    if !curve.contains(point) {
        return Err(Error::NotOnCurve);
    }
    let x = point
        .x()
        .ok_or_else(|| Error::Domain("point at infinity has no quadruple".into()))?;
    let t3 = t3_from_x(k, x)?;
    let chart = KmChart::standard(k.clone())?;
    let stage = rational_stage(&chart, &t3)?;
    instance_from_stage(
        Provenance::Point {
            k: k.clone(),
            tag: tag.to_string(),
        },
        stage,
    )
}

/// The six statuses for a point, without requiring them to be squares.
pub fn pair_statuses(k: &Rat, point: &CurvePoint) -> Result<[PairStatus; 6]> {
    let x = point
        .x()
        .ok_or_else(|| Error::Domain("point at infinity".into()))?;
    let chart = KmChart::standard(k.clone())?;
    Ok(rational_stage(&chart, &t3_from_x(k, x)?)?.statuses)
}

/// `x = x1/x2` for the `3P` instance.
pub fn x_closed_form(k: &Rat) -> Result<Rat> {
    if k.is_zero() {
        return Err(Error::Domain("chart undefined at k = 0".into()));
    }
    let x1 = FactoredForm::new(
        1,
        &[
            (&[1, 0, -2], 1),
            (&[1, 2, -7, 0, 8, -16, 16], 1),
            (&[1, -6, -3, 28, -8, -32, 16], 1),
            (&[4, -5, -26, 39, 48, -88, -16, 48], 1),
            (&[4, -7, -22, 49, 20, -88, 32, 16], 1),
        ],
    );
    let x2 = FactoredForm::new(
        2,
        &[
            (&[1, 1], 1),
            (&[1, 0, -3], 1),
            (&[1, -1, -2, 4], 1),
            (&[2, -1, -7, 4, 4], 1),
            (&[1, -2], 2),
            (&[1, 2], 2),
            (&[1, -1], 3),
            (&[3, -2, -13, 8, 16, 0, -16], 1),
            (&[5, -6, -27, 40, 32, -64, 16], 1),
        ],
    );
    if x1.vanishes_at(k) || x2.vanishes_at(k) {
        return Err(Error::Domain(format!("x closed form degenerates at k = {k}")));
    }
    Ok(x1.eval_rat(k) / x2.eval_rat(k))
}

/// One of the two printed families: every element and both `n` values as a
/// constant times a product of integer polynomial factors.
#[derive(Debug, Clone)]
pub struct ClosedFormFamily {
    pub id: FamilyId,
    pub parameter: &'static str,
    pub excluded: Vec<i64>,
    pub elements: [FactoredForm; 4],
    pub n1: FactoredForm,
    pub n2: FactoredForm,
}

const F: &[i64] = &[1, -1, -3, 4];
const G: &[i64] = &[1, -1, -2, 4];
const H: &[i64] = &[2, -1, -7, 4, 4];
const P3: &[i64] = &[3, -2, -13, 8, 16, 0, -16];
const P5: &[i64] = &[5, -6, -27, 40, 32, -64, 16];
const D6: &[i64] = &[1, -6, -3, 28, -8, -32, 16];
const Q1: &[i64] = &[4, -7, -22, 49, 20, -88, 32, 16];
const Q2: &[i64] = &[4, -5, -26, 39, 48, -88, -16, 48];
const R6: &[i64] = &[1, 2, -7, 0, 8, -16, 16];
const X: &[i64] = &[1, 0];
const XM1: &[i64] = &[1, -1];
const XP1: &[i64] = &[1, 1];
const XM2: &[i64] = &[1, -2];
const XP2: &[i64] = &[1, 2];

impl ClosedFormFamily {
    /// Perfect-square elements; parameter `k ∉ {0, ±1, ±2}`.
    pub fn prop1() -> Self {
        let k2m2: &[i64] = &[1, 0, -2];
        let k2m3: &[i64] = &[1, 0, -3];
        ClosedFormFamily {
            id: FamilyId::Prop1,
            parameter: "k",
            excluded: vec![0, 1, -1, 2, -2],
            elements: [
                FactoredForm::new(1, &[(XM1, 2), (XM2, 2), (XP2, 2), (P3, 2), (P5, 2)]),
                FactoredForm::new(
                    64,
                    &[(X, 2), (XM1, 2), (XM2, 2), (XP2, 2), (F, 2), (k2m2, 2), (G, 2), (H, 2)],
                ),
                FactoredForm::new(1, &[(X, 2), (XM1, 2), (k2m3, 2), (D6, 2), (Q2, 2)]),
                FactoredForm::new(1, &[(XP1, 2), (F, 2), (R6, 2), (Q1, 2)]),
            ],
            n1: FactoredForm::new(
                16,
                &[
                    (X, 2),
                    (XP1, 2),
                    (XM2, 4),
                    (XP2, 4),
                    (XM1, 6),
                    (k2m3, 2),
                    (G, 2),
                    (F, 2),
                    (H, 2),
                    (P3, 2),
                    (P5, 2),
                ],
            ),
            n2: FactoredForm::new(
                4,
                &[(X, 2), (k2m2, 2), (F, 2), (R6, 2), (D6, 2), (Q2, 2), (Q1, 2)],
            ),
        }
    }

    /// Elements are `2·□` and `8·□`; parameter `u ∉ {0, ±1}`, curve
    /// parameter `k = -u²`.
    pub fn prop2() -> Self {
        let a1: &[i64] = &[1, 2, 1, 0, -4, -4, -4];
        let a2: &[i64] = &[1, -2, 1, 0, -4, 4, -4];
        let c1: &[i64] = &[1, -1, 1, -2];
        let c2: &[i64] = &[1, 1, 1, 2];
        let b1: &[i64] = &[2, -1, 2, -1, -6, 4, -8, 4];
        let b2: &[i64] = &[2, 1, 2, 1, -6, -4, -8, -4];
        let u4m2: &[i64] = &[1, 0, 0, 0, -2];
        let u4m3: &[i64] = &[1, 0, 0, 0, -3];
        let u2p1: &[i64] = &[1, 0, 1];
        let u2p2: &[i64] = &[1, 0, 2];
        let u2m2: &[i64] = &[1, 0, -2];
        let e8: &[i64] = &[2, 0, 1, 0, -7, 0, -4, 0, 4];
        let e6: &[i64] = &[1, 0, 1, 0, -2, 0, -4];
        ClosedFormFamily {
            id: FamilyId::Prop2,
            parameter: "u",
            excluded: vec![0, 1, -1],
            elements: [
                FactoredForm::new(2, &[(a1, 2), (a2, 2), (c1, 2), (c2, 2)]),
                FactoredForm::new(2, &[(b1, 2), (b2, 2), (u4m2, 2)]),
                FactoredForm::new(2, &[(u2p1, 2), (e8, 2), (e6, 2), (X, 2), (u4m3, 2)]),
                FactoredForm::new(
                    8,
                    &[
                        (XM1, 2),
                        (XP1, 2),
                        (X, 2),
                        (u4m3, 2),
                        (c1, 2),
                        (c2, 2),
                        (u2p1, 4),
                        (u2p2, 2),
                        (u2m2, 2),
                    ],
                ),
            ],
            n1: FactoredForm::new(
                1,
                &[
                    (XM1, 2),
                    (XP1, 2),
                    (u4m3, 2),
                    (u2p1, 2),
                    (b1, 2),
                    (b2, 2),
                    (a1, 2),
                    (a2, 2),
                    (c1, 2),
                    (c2, 2),
                ],
            ),
            n2: FactoredForm::new(
                64,
                &[
                    (u2p1, 4),
                    (u4m2, 2),
                    (e8, 2),
                    (e6, 2),
                    (X, 4),
                    (u2p2, 2),
                    (u2m2, 2),
                    (u4m3, 2),
                    (c1, 2),
                    (c2, 2),
                ],
            ),
        }
    }

    pub fn get(id: FamilyId) -> Self {
        match id {
            FamilyId::Prop1 => Self::prop1(),
            FamilyId::Prop2 => Self::prop2(),
        }
    }

    pub fn is_excluded(&self, value: &Int) -> bool {
        self.excluded.iter().any(|&e| Int::from(e) == *value)
    }

    pub fn instance(&self, value: &Int) -> Result<FamilyInstance> {
        if self.is_excluded(value) {
            return Err(Error::ExcludedParameter {
                param: self.parameter,
                value: value.to_string(),
            });
        }
        let elements = self.elements.clone().map(|form| form.eval_int(value));
        let quad = Quad::new(elements)
            .map_err(|e| Error::DegenerateInstance(format!("{}={value}: {e}", self.parameter)))?;
        let n1 = self.n1.eval_int(value);
        let n2 = self.n2.eval_int(value);
        let multiplier = int_square_root_exact(&n1)
            .filter(|r| !r.is_zero())
            .ok_or_else(|| Error::DegenerateInstance(format!("n1 = {n1} is not a nonzero square")))?;
        let root2 = int_square_root_exact(&n2)
            .ok_or_else(|| Error::DegenerateInstance(format!("n2 = {n2} is not a square")))?;
        let l = Rat::from_integer(multiplier.clone());
        let x = Rat::new(root2, multiplier.clone());
        let rational = quad.to_rat().scale(&l.recip())?;
        let certificate = certify_doubly_regular(&quad, &n1, &n2)?;
        Ok(FamilyInstance {
            provenance: Provenance::ClosedForm {
                family: self.id,
                parameter: value.clone(),
            },
            chart: None,
            params: None,
            rational,
            x,
            quad,
            n1,
            n2,
            n3: Int::zero(),
            multiplier,
            certificate,
        })
    }
}

pub fn prop1(k: &Int) -> Result<FamilyInstance> {
    ClosedFormFamily::prop1().instance(k)
}

pub fn prop2(u: &Int) -> Result<FamilyInstance> {
    ClosedFormFamily::prop2().instance(u)
}

/// Instances from `(2j+1)·P` for `j = 1..=j_max`; failures are recorded.
#[derive(Debug, Clone, Default)]
pub struct OddMultiples {
    pub instances: Vec<FamilyInstance>,
    /// `(multiple, reason)`; `multiple` is `None` when the curve itself fails.
    pub skipped: Vec<(Option<i64>, Error)>,
}

pub fn odd_multiple_instances(k: &Rat, j_max: u32) -> OddMultiples {
    let mut out = OddMultiples::default();
    let curve = match curve_from_k(k) {
        Ok(c) => c,
        Err(e) => {
            out.skipped.push((None, e));
            return out;
        }
    };
    let p = curve.point_p();
    for j in 1..=j_max as i64 {
        let n = 2 * j + 1;
        let result = curve
            .mul(n, &p)
            .and_then(|pt| quadruple_from_point(k, &pt, &format!("{n}P")));
        match result {
            Ok(instance) => out.instances.push(instance),
            Err(e) => out.skipped.push((Some(n), e)),
        }
    }
    out
}

/// `3P` via the closed form rather than the group law.
pub fn triple_p_instance(k: &Rat) -> Result<FamilyInstance> {
    quadruple_from_point(k, &closed_form_3p(k)?, "3P")
}

/// The `k = -u²` specialization of the displayed `P + T1` point.
pub fn p_plus_t1_instance(u: &Int) -> Result<FamilyInstance> {
    let k = -Rat::from_integer(u * u);
    quadruple_from_point(&k, &crate::ecurve::closed_form_p_plus_t1(&k)?, "P+T1")
}
