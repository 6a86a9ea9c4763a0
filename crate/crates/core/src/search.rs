//! Brute-force search for small doubly regular quadruples over rational
//! `(k, m, t3)` of bounded height.
//!
//! For fixed `(k, m)` the product `ab` is `4k(km+1)(k+m)/(k²-1)²`, independent
//! of `t3`, so pairs where `k(km+1)(k+m)` is not a square are dropped before
//! the inner loop. For each `t3` two integer forms are tested with the
//! residue filter and an exact root: the `ac` condition
//! `k(km+1)·t3·((k+m)t3 + k² - 1)` and the quartic `Q(t3)` (which differs from
//! `abcd` by a square). Survivors go through the full construction and the
//! verifier; the search never trusts the algebra on its own.
//!
//! Work is split by `k`. Each unit is scanned independently and the
//! coordinator merges units in enumeration order, deduplicates by
//! equivalence class and sorts, so the output does not depend on the
//! worker count.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dncore::{certify_doubly_regular, class_key, equivalent, normalize, Certificate, Quad};
use crate::error::{Error, Result};
use crate::exactnum::{
    common_denominator, could_be_square, could_be_square_u128, int_square_root_exact, square_root_u128, Int, Rat,
};
use crate::families::{instance_from_stage, rational_stage, FamilyInstance, Provenance};
use crate::param::KmChart;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Height bounds for `k`, `m` and `t3`.
    pub hk: u32,
    pub hm: u32,
    pub ht: u32,
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(hk: u32, hm: u32, ht: u32, workers: usize) -> Result<Self> {
        if hk == 0 || hm == 0 || ht == 0 {
            return Err(Error::Domain("height bounds must be at least 1".into()));
        }
        Ok(SearchConfig {
            hk,
            hm,
            ht,
            workers: workers.max(1),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub k: Rat,
    pub m: Rat,
    pub t3: Rat,
    /// `w ≥ 0` with `w² = Q(t3)`.
    pub w: Rat,
    pub instance: FamilyInstance,
    /// Normalized, with the largest-magnitude element positive.
    pub normalized: Quad,
    pub normalized_ns: Vec<Int>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// `(k, m)` pairs visited.
    pub pairs: u64,
    /// Pairs dropped because `k(km+1)(k+m)` is not a square.
    pub pair_rejects: u64,
    /// `(k, m, t3)` candidates evaluated.
    pub candidates: u64,
    /// Rejected by the quadratic-residue pre-filter.
    pub residue_rejects: u64,
    /// Passed the residue filter, failed the exact root.
    pub root_rejects: u64,
    /// Both forms square but the chart or quadruple degenerated.
    pub degenerate: u64,
    pub hits: u64,
    /// Hits equivalent to an earlier one.
    pub duplicates: u64,
}

impl Counters {
    fn merge(&mut self, o: &Counters) {
        self.pairs += o.pairs;
        self.pair_rejects += o.pair_rejects;
        self.candidates += o.candidates;
        self.residue_rejects += o.residue_rejects;
        self.root_rejects += o.root_rejects;
        self.degenerate += o.degenerate;
        self.hits += o.hits;
        self.duplicates += o.duplicates;
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    pub counters: Counters,
}

impl SearchOutcome {
    /// For each table row, the index of an equivalent hit.
    pub fn rediscovered(&self) -> Vec<Option<usize>> {
        table_fixture()
            .iter()
            .map(|(quad, ns)| {
                self.hits
                    .iter()
                    .position(|h| equivalent(&h.instance.quad, &h.instance.ns(), quad, ns).is_some())
            })
            .collect()
    }
}

/// Every reduced `p/q` with `1 ≤ q ≤ h`, `0 < |p| ≤ h`, ascending.
pub fn enumerate_rationals(h: u32) -> Vec<Rat> {
    let h = h as i64;
    let mut out: Vec<Rat> = (1..=h)
        .flat_map(|q| {
            (-h..=h)
                .filter(move |&p| p != 0 && p.gcd(&q) == 1)
                .map(move |p| Rat::new(Int::from(p), Int::from(q)))
        })
        .collect();
    out.sort();
    out
}

/// A polynomial in `t` whose squareness at `t = p/q` is tested through
/// `Σ coeffs[i]·p^i·q^(d-i)` for even degree `d`.
#[derive(Debug, Clone)]
struct SquareForm {
    /// Ascending by power of `t`.
    coeffs: Vec<Int>,
    small: Option<Vec<i128>>,
}

enum FormTest {
    Square,
    ResidueReject,
    RootReject,
}

impl SquareForm {
    /// `coeffs` ascending; degree must be even.
    fn new(coeffs: &[Rat]) -> Self {
        debug_assert!((coeffs.len() - 1).is_multiple_of(2));
        let den = common_denominator(coeffs);
        // multiply by den² so the form is an integer square iff the
        // rational polynomial value is a square
        let ints: Vec<Int> = coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(&den * &den)).to_integer())
            .collect();
        let small = ints.iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>();
        SquareForm { coeffs: ints, small }
    }

    fn eval_small(&self, p: i128, q: i128) -> Option<i128> {
        let small = self.small.as_ref()?;
        let d = small.len() - 1;
        let mut acc = small[d];
        let mut qpow: i128 = 1;
        for i in (0..d).rev() {
            qpow = qpow.checked_mul(q)?;
            acc = acc.checked_mul(p)?.checked_add(small[i].checked_mul(qpow)?)?;
        }
        Some(acc)
    }

    fn eval_big(&self, p: &Int, q: &Int) -> Int {
        let d = self.coeffs.len() - 1;
        let mut acc = self.coeffs[d].clone();
        let mut qpow = Int::one();
        for i in (0..d).rev() {
            qpow *= q;
            acc = acc * p + &self.coeffs[i] * &qpow;
        }
        acc
    }

    fn test(&self, p: i64, q: i64) -> FormTest {
        match self.eval_small(p as i128, q as i128) {
            Some(v) if v < 0 => FormTest::ResidueReject,
            Some(v) if !could_be_square_u128(v as u128) => FormTest::ResidueReject,
            Some(v) => match square_root_u128(v as u128) {
                Some(_) => FormTest::Square,
                None => FormTest::RootReject,
            },
            None => {
                let v = self.eval_big(&Int::from(p), &Int::from(q));
                if !could_be_square(&v) {
                    FormTest::ResidueReject
                } else if int_square_root_exact(&v).is_some() {
                    FormTest::Square
                } else {
                    FormTest::RootReject
                }
            }
        }
    }
}

fn pair_forms(k: &Rat, m: &Rat) -> (SquareForm, SquareForm) {
    let one = Rat::one();
    let alpha = k * (k * m + &one);
    let ac = SquareForm::new(&[Rat::zero(), &alpha * (k * k - &one), &alpha * (k + m)]);
    let q = crate::param::quartic_t3(k, m);
    let quartic = SquareForm::new(&[Rat::zero(), q.c1.clone(), q.c2.clone(), q.c3.clone(), q.c4.clone()]);
    (ac, quartic)
}

struct UnitResult {
    hits: Vec<SearchHit>,
    counters: Counters,
}

fn canonical(instance: &FamilyInstance) -> (Quad, Vec<Int>) {
    let elements = instance.quad.elements();
    let max = elements.iter().max_by_key(|e| e.abs()).cloned().unwrap_or_default();
    let quad = if max.is_negative() {
        Quad::new(elements.clone().map(|e| -e)).expect("negation keeps elements distinct")
    } else {
        instance.quad.clone()
    };
    normalize(&quad, &instance.ns())
}

fn scan_unit(k: &Rat, ms: &[Rat], ts: &[(i64, i64, Rat)]) -> UnitResult {
    let mut counters = Counters::default();
    let mut hits = Vec::new();
    let one = Rat::one();
    for m in ms {
        counters.pairs += 1;
        let ab_core = k * (k * m + &one) * (k + m);
        if ab_core.is_zero() || crate::exactnum::rat_square_root_exact(&ab_core).is_none() {
            counters.pair_rejects += 1;
            continue;
        }
        let Ok(chart) = KmChart::from_km(k.clone(), m.clone()) else {
            counters.pair_rejects += 1;
            continue;
        };
        let (ac_form, quartic_form) = pair_forms(k, m);
        for (p, q, t3) in ts {
            counters.candidates += 1;
            let mut passed = true;
            for form in [&ac_form, &quartic_form] {
                match form.test(*p, *q) {
                    FormTest::Square => {}
                    FormTest::ResidueReject => {
                        counters.residue_rejects += 1;
                        passed = false;
                    }
                    FormTest::RootReject => {
                        counters.root_rejects += 1;
                        passed = false;
                    }
                }
                if !passed {
                    break;
                }
            }
            if !passed {
                continue;
            }
            let provenance = Provenance::Search {
                k: k.clone(),
                m: m.clone(),
                t3: t3.clone(),
            };
            let instance = rational_stage(&chart, t3).and_then(|stage| instance_from_stage(provenance, stage));
            let Ok(instance) = instance else {
                counters.degenerate += 1;
                continue;
            };
            let Some(w) = chart.quartic().root_at(t3) else {
                counters.degenerate += 1;
                continue;
            };
            counters.hits += 1;
            let (normalized, normalized_ns) = canonical(&instance);
            hits.push(SearchHit {
                k: k.clone(),
                m: m.clone(),
                t3: t3.clone(),
                w,
                instance,
                normalized,
                normalized_ns,
            });
        }
    }
    UnitResult { hits, counters }
}

pub fn run_search(cfg: &SearchConfig) -> SearchOutcome {
    run_search_with_progress(cfg, &|_, _| {})
}

/// `progress(done, total)` is called as work units finish, in completion
/// order.
pub fn run_search_with_progress(cfg: &SearchConfig, progress: &(dyn Fn(usize, usize) + Sync)) -> SearchOutcome {
    let ks = enumerate_rationals(cfg.hk);
    let ms = enumerate_rationals(cfg.hm);
    let ts: Vec<(i64, i64, Rat)> = enumerate_rationals(cfg.ht)
        .into_iter()
        .map(|t| {
            let p = t.numer().to_i64().expect("height fits in i64");
            let q = t.denom().to_i64().expect("height fits in i64");
            (p, q, t)
        })
        .collect();
    let done = AtomicUsize::new(0);
    let total = ks.len();
    let scan = |k: &Rat| {
        let r = scan_unit(k, &ms, &ts);
        progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
        r
    };
    let units: Vec<UnitResult> = match rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build() {
        Ok(pool) => pool.install(|| ks.par_iter().map(scan).collect()),
        Err(_) => ks.iter().map(scan).collect(),
    };

    let mut counters = Counters::default();
    let mut seen = HashSet::new();
    let mut hits = Vec::new();
    for unit in units {
        counters.merge(&unit.counters);
        for hit in unit.hits {
            if seen.insert(class_key(&hit.instance.quad, &hit.instance.ns())) {
                hits.push(hit);
            } else {
                counters.duplicates += 1;
            }
        }
    }
    hits.sort_by(|a, b| {
        let ka = a.normalized.sorted();
        let kb = b.normalized.sorted();
        ka[3].cmp(&kb[3]).then_with(|| ka.cmp(&kb))
    });
    SearchOutcome { hits, counters }
}

/// The ten small quadruples with their `(n1, n2)`; `n3 = 0` throughout.
pub const TABLE: [([i64; 4], [i64; 2]); 10] = [
    ([1458, 66248, 5000, 14112], [16769025, 406425600]),
    ([451584, 25921, 12996, 950625], [30234254400, 4783105600]),
    ([985608, 11858, 57800, 352800], [49177497600, 4846248225]),
    ([105625, 50176, 72900, 1002001], [2981160000, 129859329600]),
    ([693889, 116964, 47089, 1982464], [144284503104, 52510639104]),
    ([74529, 2832489, 122500, 1115136], [134336910400, 214665422400]),
    ([438048, 3246152, 187272, 451250], [618173337600, 194388401025]),
    ([349448, 120050, 930248, 3645000], [493141017600, 288449555625]),
    ([31752, 45125000, 3426962, 18727200], [1409028350625, 65260546560000]),
    ([27766152, 1059968, 1820232, 61051250], [26694995558400, 122518001376225]),
];

/// The table rows as `(quad, [n1, n2, 0])`.
pub fn table_fixture() -> Vec<(Quad, Vec<Int>)> {
    TABLE
        .iter()
        .map(|(e, [n1, n2])| {
            (
                Quad::from_i64(*e).expect("table rows are distinct and nonzero"),
                vec![Int::from(*n1), Int::from(*n2), Int::zero()],
            )
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct RowReport {
    pub row: usize,
    pub quad: Quad,
    pub n1_root: Int,
    pub n2_root: Int,
    pub certificate: Certificate,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    pub pairwise_nonequivalent: bool,
}

/// Checks every table row with the full verifier and that no two rows are
/// equivalent. Rows are numbered from 1.
pub fn verify_table_fixture() -> Result<TableReport> {
    let fixture = table_fixture();
    let mut rows = Vec::new();
    for (idx, (quad, ns)) in fixture.iter().enumerate() {
        let row = idx + 1;
        let fail = |reason: String| Error::FixtureFailure { row, reason };
        let certificate = certify_doubly_regular(quad, &ns[0], &ns[1]).map_err(|e| fail(e.to_string()))?;
        let n1_root = int_square_root_exact(&ns[0]).ok_or_else(|| fail("n1 not a square".into()))?;
        let n2_root = int_square_root_exact(&ns[1]).ok_or_else(|| fail("n2 not a square".into()))?;
        rows.push(RowReport {
            row,
            quad: quad.clone(),
            n1_root,
            n2_root,
            certificate,
        });
    }
    for i in 0..fixture.len() {
        for j in i + 1..fixture.len() {
            if equivalent(&fixture[i].0, &fixture[i].1, &fixture[j].0, &fixture[j].1).is_some() {
                return Err(Error::FixtureFailure {
                    row: j + 1,
                    reason: format!("equivalent to row {}", i + 1),
                });
            }
        }
    }
    Ok(TableReport {
        rows,
        pairwise_nonequivalent: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_rationals(1), vec![rat(-1, 1), rat(1, 1)]);
        assert_eq!(
            enumerate_rationals(2),
            vec![rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(1, 2), rat(1, 1), rat(2, 1)]
        );
        // oracle: distinct values over all (p, q) in the box, reduced or not
        for h in 1..=12i64 {
            let mut all: Vec<Rat> = (1..=h)
                .flat_map(|q| (-h..=h).filter(|&p| p != 0).map(move |p| rat(p, q)))
                .collect();
            all.sort();
            all.dedup();
            assert_eq!(enumerate_rationals(h as u32), all, "h = {h}");
        }
        assert_eq!(enumerate_rationals(3).len(), 14);
    }

    #[test]
    fn square_form_paths_agree() {
        let k = rat(3, 2);
        let m = rat(-5, 7);
        let (ac, quartic) = pair_forms(&k, &m);
        for form in [&ac, &quartic] {
            for (p, q) in [(1i64, 1i64), (-3, 2), (7, 5), (-11, 13)] {
                let small = form.eval_small(p as i128, q as i128).unwrap();
                assert_eq!(Int::from(small), form.eval_big(&int(p), &int(q)));
            }
        }
    }

    #[test]
    fn square_form_decides_rational_squareness() {
        // t·(t + 3)/4 at t = 1/3 is 10/36, not a square; at t = 1 is 1
        let form = SquareForm::new(&[Rat::zero(), rat(3, 4), rat(1, 4)]);
        assert!(matches!(form.test(1, 1), FormTest::Square));
        assert!(!matches!(form.test(1, 3), FormTest::Square));
        // (t/2)² at any t
        let form = SquareForm::new(&[Rat::zero(), Rat::zero(), rat(1, 4)]);
        assert!(matches!(form.test(5, 7), FormTest::Square));
    }

    #[test]
    fn table_fixture_passes() {
        let report = verify_table_fixture().unwrap();
        assert_eq!(report.rows.len(), 10);
        assert!(report.pairwise_nonequivalent);
        let first = &report.rows[0];
        assert_eq!(first.n1_root, int(4095));
        assert_eq!(int(1458) * int(5000) + int(16769025), int(4905) * int(4905));
        assert_eq!(int(4905) * int(4905), int(24_059_025));
    }

    #[test]
    fn tiny_search_is_sound() {
        let cfg = SearchConfig::new(1, 1, 1, 1).unwrap();
        let out = run_search(&cfg);
        assert_eq!(out.counters.pairs, 4);
        for hit in &out.hits {
            hit.instance.verify().unwrap();
        }
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(0, 1, 1, 1).is_err());
        assert_eq!(SearchConfig::new(1, 1, 1, 0).unwrap().workers, 1);
    }
}
