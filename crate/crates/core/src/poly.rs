//! Integer polynomials in one variable, written highest degree first so the
//! coefficient lists read like the printed factorizations.

use num_traits::Zero;

use crate::exactnum::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    /// `coeffs[0]` multiplies the highest power.
    pub fn new(coeffs: &[i64]) -> Self {
        let first = coeffs.iter().position(|&c| c != 0).unwrap_or(coeffs.len());
        IntPoly {
            coeffs: coeffs[first..].to_vec(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        self.coeffs
            .iter()
            .fold(Int::zero(), |acc, &c| acc * x + Int::from(c))
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .fold(Rat::zero(), |acc, &c| acc * x + Rat::from_integer(Int::from(c)))
    }
}

/// A product `constant · Π factorᵢ^expᵢ`.
#[derive(Debug, Clone)]
pub struct FactoredForm {
    pub constant: i64,
    pub factors: Vec<(IntPoly, u32)>,
}

impl FactoredForm {
    pub fn new(constant: i64, factors: &[(&[i64], u32)]) -> Self {
        FactoredForm {
            constant,
            factors: factors
                .iter()
                .map(|(c, e)| (IntPoly::new(c), *e))
                .collect(),
        }
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        self.factors
            .iter()
            .fold(Int::from(self.constant), |acc, (p, e)| {
                acc * num_traits::pow(p.eval_int(x), *e as usize)
            })
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.factors
            .iter()
            .fold(Rat::from_integer(Int::from(self.constant)), |acc, (p, e)| {
                acc * num_traits::pow(p.eval_rat(x), *e as usize)
            })
    }

    /// True when the constant is a square and every exponent is even.
    pub fn is_manifest_square(&self) -> bool {
        let c = self.constant;
        c >= 0
            && crate::exactnum::square_root_u128(c as u128).is_some()
            && self.factors.iter().all(|(_, e)| e % 2 == 0)
    }

    /// Some factor vanishes at `x`.
    pub fn vanishes_at(&self, x: &Rat) -> bool {
        self.constant == 0 || self.factors.iter().any(|(p, _)| p.eval_rat(x).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn horner_matches_direct_evaluation() {
        // 3k^6 - 2k^5 - 13k^4 + 8k^3 + 16k^2 - 16 at k = 3
        let p = IntPoly::new(&[3, -2, -13, 8, 16, 0, -16]);
        assert_eq!(p.degree(), 6);
        assert_eq!(p.eval_int(&int(3)), int(3 * 729 - 2 * 243 - 13 * 81 + 8 * 27 + 16 * 9 - 16));
        assert_eq!(p.eval_rat(&rat(1, 2)), rat(3, 64) - rat(2, 32) - rat(13, 16) + rat(8, 8) + rat(16, 4) - rat(16, 1));
    }

    #[test]
    fn factored_form() {
        // 2 (k+1)^2 (k-1) at k = 4
        let f = FactoredForm::new(2, &[(&[1, 1], 2), (&[1, -1], 1)]);
        assert_eq!(f.eval_int(&int(4)), int(150));
        assert!(!f.is_manifest_square());
        assert!(f.vanishes_at(&rat(1, 1)));
        let sq = FactoredForm::new(16, &[(&[1, 0], 2)]);
        assert!(sq.is_manifest_square());
    }
}
