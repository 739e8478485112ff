use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::CMatrix;
use crate::strata::{ambient_real_dim, coords_to_matrix, Field};

/// One of the reduced algebras: mat(R, n), mat(C, n) or the complex picture
/// of quaternionic n-by-n matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub field: Field,
    pub n: usize,
}

impl AlgebraSpec {
    pub fn real_dim(&self) -> usize {
        ambient_real_dim(self.field, self.n)
    }

    /// Side length of the matrices in the complex picture.
    pub fn matrix_dim(&self) -> usize {
        match self.field {
            Field::R | Field::C => self.n,
            Field::H => 2 * self.n,
        }
    }

    pub fn matrix_of(&self, coords: &DVector<f64>) -> CMatrix {
        coords_to_matrix(self.field, self.n, coords)
    }
}

/// All exponent multi-indices in `k` variables of total degree at most
/// `degree`, in graded lexicographic order.
pub fn monomials(k: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(k: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(k, left - e, prefix, out);
            prefix.pop();
        }
    }
    for total in 0..=degree {
        let mut batch = Vec::new();
        fn rec_total(k: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == k {
                if left == 0 {
                    out.push(prefix.clone());
                }
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec_total(k, left - e, prefix, out);
                prefix.pop();
            }
        }
        rec_total(k, total, &mut Vec::new(), &mut batch);
        batch.sort();
        batch.reverse();
        out.extend(batch);
        let _ = rec; // single implementation path
    }
    out
}

/// A polynomial map from a box in parameter space into a reduced algebra,
/// with one algebra-valued coefficient per monomial. Evaluation is
/// `f(lambda) = sum coefficient_alpha * lambda^alpha`.
#[derive(Debug, Clone)]
pub struct ParametricFamily {
    pub algebra: AlgebraSpec,
    pub k: usize,
    pub degree: usize,
    /// `(lo, hi)` per parameter axis.
    pub domain: Vec<(f64, f64)>,
    pub monomials: Vec<Vec<usize>>,
    /// Algebra coordinates, one vector per monomial.
    pub coefficients: Vec<DVector<f64>>,
    pub seed: u64,
}

impl ParametricFamily {
    pub fn eval_coords(&self, lambda: &[f64]) -> DVector<f64> {
        let mut out = DVector::zeros(self.algebra.real_dim());
        for (alpha, coeff) in self.monomials.iter().zip(&self.coefficients) {
            let mut m = 1.0;
            for (e, l) in alpha.iter().zip(lambda) {
                m *= l.powi(*e as i32);
            }
            out += coeff * m;
        }
        out
    }

    pub fn eval(&self, lambda: &[f64]) -> CMatrix {
        self.algebra.matrix_of(&self.eval_coords(lambda))
    }

    /// Coordinates of `d f / d lambda_j` at `lambda`.
    pub fn derivative_coords(&self, lambda: &[f64], j: usize) -> DVector<f64> {
        let mut out = DVector::zeros(self.algebra.real_dim());
        for (alpha, coeff) in self.monomials.iter().zip(&self.coefficients) {
            let e_j = alpha[j];
            if e_j == 0 {
                continue;
            }
            let mut m = e_j as f64;
            for (i, (e, l)) in alpha.iter().zip(lambda).enumerate() {
                let pow = if i == j { e.saturating_sub(1) } else { *e };
                m *= l.powi(pow as i32);
            }
            out += coeff * m;
        }
        out
    }

    pub fn clamp_to_domain(&self, lambda: &mut [f64]) {
        for (l, (lo, hi)) in lambda.iter_mut().zip(&self.domain) {
            *l = l.clamp(*lo, *hi);
        }
    }
}

/// Seeded family with i.i.d. standard normal coefficients in the algebra's
/// real parameterization; identical seeds give identical families.
pub fn random_family(
    algebra: AlgebraSpec,
    k: usize,
    degree: usize,
    domain: Vec<(f64, f64)>,
    seed: u64,
) -> Result<ParametricFamily> {
    if k < 1 {
        return Err(Error::InvalidParameter("need k >= 1 parameters".into()));
    }
    if domain.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "domain has {} axes, expected {k}",
            domain.len()
        )));
    }
    let mons = monomials(k, degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = algebra.real_dim();
    let coefficients = (0..mons.len())
        .map(|_| DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal)))
        .collect();
    Ok(ParametricFamily {
        algebra,
        k,
        degree,
        domain,
        monomials: mons,
        coefficients,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(1, 3).len(), 4);
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(3, 1).len(), 4);
    }

    #[test]
    fn same_seed_same_family() {
        let spec = AlgebraSpec { field: Field::R, n: 2 };
        let a = random_family(spec, 1, 2, vec![(-1.0, 1.0)], 7).unwrap();
        let b = random_family(spec, 1, 2, vec![(-1.0, 1.0)], 7).unwrap();
        for (x, y) in a.coefficients.iter().zip(&b.coefficients) {
            assert_eq!(x, y);
        }
        assert_eq!(a.eval(&[0.3]), b.eval(&[0.3]));
    }

    #[test]
    fn degree_zero_is_constant() {
        let spec = AlgebraSpec { field: Field::C, n: 2 };
        let f = random_family(spec, 1, 0, vec![(-1.0, 1.0)], 3).unwrap();
        assert_eq!(f.eval(&[-0.5]), f.eval(&[0.9]));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let spec = AlgebraSpec { field: Field::R, n: 2 };
        let f = random_family(spec, 2, 3, vec![(-1.0, 1.0), (-1.0, 1.0)], 11).unwrap();
        let lambda = [0.3, -0.4];
        let h = 1e-6;
        for j in 0..2 {
            let mut lp = lambda;
            lp[j] += h;
            let mut lm = lambda;
            lm[j] -= h;
            let fd = (f.eval_coords(&lp) - f.eval_coords(&lm)) / (2.0 * h);
            let an = f.derivative_coords(&lambda, j);
            assert!((fd - an).norm() < 1e-8);
        }
    }
}
