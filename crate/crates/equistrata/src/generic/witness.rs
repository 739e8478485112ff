use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generic::family::{monomials, AlgebraSpec, ParametricFamily};
use crate::generic::mc::trial_seed;
use crate::linalg::nullspace_r_with_floor;
use crate::mat::{flatten_complex, CMatrix, RMatrix};
use crate::strata::{
    algebra_basis, algebra_coords, ambient_real_dim, sample, tangent_span, StratumLabel,
};
use crate::tol::ToleranceConfig;

/// A polynomial family through a stratum sample, moving transversally along
/// an orthonormal complement of the stratum tangent space.
#[derive(Debug, Clone)]
pub struct WitnessFamily {
    pub label: StratumLabel,
    pub k: usize,
    pub codim: usize,
    pub family: ParametricFamily,
    /// The stratum parameters of the base sample (empty for nilpotent
    /// labels).
    pub base_parameters: Vec<f64>,
}

/// Result of re-finding the stratum after one coefficient perturbation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerturbationOutcome {
    pub index: usize,
    /// Conjugation residual `|f(lambda) g - g model(x)| / |g|` at the
    /// refined point: the distance proxy certified against `hit_tol`.
    pub residual: f64,
    pub lambda: Vec<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub outcomes: Vec<PerturbationOutcome>,
    pub passed: bool,
}

/// Builds the witness family `f(lambda) = X0 + sum lambda_j E_j` with the
/// `E_j` an orthonormal basis of the tangent complement at a seeded sample.
/// Errors when `k` is smaller than the measured codimension.
pub fn witness_family(
    label: &StratumLabel,
    k: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<WitnessFamily> {
    let field = label.field();
    let n = label.ambient_n();
    let dim = ambient_real_dim(field, n);
    let s = sample(label, seed, tol)?;
    let span = tangent_span(&s)?;
    let mut rows = RMatrix::zeros(span.len(), dim);
    for (i, m) in span.iter().enumerate() {
        let v = algebra_coords(field, n, m);
        rows.row_mut(i).copy_from(&v.transpose());
    }
    // Orthonormal complement of the tangent row space.
    let complement = nullspace_r_with_floor(&rows, tol, 0.0)?;
    let codim = complement.ncols();
    if k < codim {
        return Err(Error::InvalidParameter(format!(
            "stratum has codimension {codim}, a transversal witness needs k >= codim but k = {k}"
        )));
    }
    let algebra = AlgebraSpec { field, n };
    let mons = monomials(k, 1);
    let mut coefficients = vec![DVector::zeros(dim); mons.len()];
    coefficients[0] = algebra_coords(field, n, &s.matrix.as_complex());
    for j in 0..k {
        // monomials(k, 1) lists the constant first, then degree-one terms in
        // order lambda_1, ..., lambda_k.
        if j < codim {
            coefficients[1 + j] = complement.column(j).into_owned();
        }
    }
    Ok(WitnessFamily {
        label: label.clone(),
        k,
        codim,
        family: ParametricFamily {
            algebra,
            k,
            degree: 1,
            domain: vec![(-1.0, 1.0); k],
            monomials: mons,
            coefficients,
            seed,
        },
        base_parameters: s.parameters.clone(),
    })
}

/// Perturbs every coefficient of the witness family by a relative amount and
/// re-finds the stratum crossing with a Gauss-Newton orbit fit. The
/// certificate passes iff every perturbation yields a refined conjugation
/// residual below `hit_tol`.
pub fn certify_witness(
    witness: &WitnessFamily,
    perturbations: usize,
    rel_size: f64,
    hit_tol: f64,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<WitnessCertificate> {
    let mut outcomes = Vec::with_capacity(perturbations);
    let mut all = true;
    for p in 0..perturbations {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, p));
        let mut family = witness.family.clone();
        for c in family.coefficients.iter_mut() {
            let mut g = DVector::from_fn(c.len(), |_, _| rng.sample::<f64, _>(StandardNormal));
            let gn = g.norm();
            if gn > 0.0 {
                g /= gn;
            }
            let scale = c.norm().max(1.0);
            *c += g * (rel_size * scale);
        }
        let fit = orbit_fit(&family, &witness.label, &witness.base_parameters, tol);
        let outcome = match fit {
            Ok((lambda, residual)) => PerturbationOutcome {
                index: p,
                passed: residual <= hit_tol,
                residual,
                lambda,
            },
            Err(_) => PerturbationOutcome {
                index: p,
                passed: false,
                residual: f64::INFINITY,
                lambda: Vec::new(),
            },
        };
        all &= outcome.passed;
        outcomes.push(outcome);
    }
    Ok(WitnessCertificate {
        outcomes,
        passed: all,
    })
}

/// Gauss-Newton on `F(lambda, g, x) = f(lambda) g - g model(x)` over the
/// algebra coordinates of `g`, starting at `lambda = 0`, `g = Id`,
/// `x = base`. At a transversal crossing the zero set is regular up to the
/// centralizer gauge, which the pseudoinverse step ignores.
fn orbit_fit(
    family: &ParametricFamily,
    label: &StratumLabel,
    base_parameters: &[f64],
    tol: &ToleranceConfig,
) -> Result<(Vec<f64>, f64)> {
    let field = label.field();
    let n = label.ambient_n();
    let algebra = family.algebra;
    let dim_alg = algebra.real_dim();
    let mdim = algebra.matrix_dim();
    let basis = algebra_basis(field, n);
    let model_derivs = crate::strata::build_model_derivatives(label)?;
    let l = base_parameters.len();
    let k = family.k;

    let mut lambda = vec![0.0; k];
    let mut x = base_parameters.to_vec();
    let id_coords = algebra_coords(field, n, &CMatrix::identity(mdim, mdim));
    let id_norm = id_coords.norm();
    let mut g_coords = id_coords.clone();

    let residual_of = |lambda: &[f64], g: &DVector<f64>, x: &[f64]| -> Result<(DVector<f64>, f64)> {
        let f_m = family.eval(lambda);
        let g_m = algebra.matrix_of(g);
        let model = crate::strata::build_model_matrix(label, x)?;
        let f_vec = flatten_complex(&(&f_m * &g_m - &g_m * &model));
        let res = f_vec.norm() / g.norm().max(1e-12);
        Ok((f_vec, res))
    };

    let (mut f_vec, mut res) = residual_of(&lambda, &g_coords, &x)?;
    for _iter in 0..100 {
        if res < 1e-12 {
            break;
        }
        let f_m = family.eval(&lambda);
        let g_m = algebra.matrix_of(&g_coords);
        let model = crate::strata::build_model_matrix(label, &x)?;
        let cols = k + dim_alg + l;
        let rows = 2 * mdim * mdim;
        let mut jac = RMatrix::zeros(rows, cols);
        for j in 0..k {
            let df = algebra.matrix_of(&family.derivative_coords(&lambda, j));
            jac.set_column(j, &flatten_complex(&(&df * &g_m)));
        }
        for (e, b) in basis.iter().enumerate() {
            let col = flatten_complex(&(&f_m * b - b * &model));
            jac.set_column(k + e, &col);
        }
        for (j, d) in model_derivs.iter().enumerate() {
            let col = flatten_complex(&(-(&g_m * d)));
            jac.set_column(k + dim_alg + j, &col);
        }
        let svd = jac.svd(true, true);
        let delta = svd
            .solve(&(-&f_vec), 1e-12)
            .map_err(|e| Error::NonConvergence(format!("pseudoinverse step: {e}")))?;
        // Backtracking line search.
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..25 {
            let cand_lambda: Vec<f64> = lambda
                .iter()
                .enumerate()
                .map(|(i, v)| v + step * delta[i])
                .collect();
            let mut cand_g = &g_coords + delta.rows(k, dim_alg) * step;
            let gn = cand_g.norm();
            if gn > 1e-12 {
                cand_g *= id_norm / gn;
            }
            let cand_x: Vec<f64> = x
                .iter()
                .enumerate()
                .map(|(i, v)| v + step * delta[k + dim_alg + i])
                .collect();
            match residual_of(&cand_lambda, &cand_g, &cand_x) {
                Ok((fv, r)) if r < res => {
                    lambda = cand_lambda;
                    g_coords = cand_g;
                    x = cand_x;
                    f_vec = fv;
                    res = r;
                    accepted = true;
                    break;
                }
                _ => step *= 0.5,
            }
        }
        if !accepted {
            break;
        }
    }
    // The fitted conjugator must stay well-conditioned for the conjugation
    // residual to certify stratum membership.
    let g_m = algebra.matrix_of(&g_coords);
    let sv = crate::linalg::singular_values_c(&g_m);
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if !(smin > 0.0 && smax / smin < 1e8) {
        return Err(Error::NonConvergence(
            "conjugator became ill-conditioned".into(),
        ));
    }
    // Refined stratum parameters must stay admissible.
    check_admissible(label, &x)?;
    let _ = tol;
    Ok((lambda, res))
}

fn check_admissible(label: &StratumLabel, x: &[f64]) -> Result<()> {
    let need_positive = matches!(
        label,
        StratumLabel::CenterR { .. } | StratumLabel::CenterH { .. }
    );
    if matches!(label, StratumLabel::Nilpotent { .. }) {
        return Ok(());
    }
    for (i, &v) in x.iter().enumerate() {
        if need_positive && v <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "refined parameter x[{i}] = {v} left the admissible cone"
            )));
        }
        for (j, &w) in x.iter().enumerate().skip(i + 1) {
            if (v - w).abs() < 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "refined parameters x[{i}], x[{j}] collided"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{Field, Partition};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn witness_rejects_too_few_parameters() {
        let label = StratumLabel::Nilpotent {
            field: Field::R,
            partition: Partition::new(vec![2]).unwrap(),
        };
        assert!(witness_family(&label, 1, 0, &tol()).is_err());
    }

    #[test]
    fn witness_base_point_is_on_stratum() {
        let label = StratumLabel::Nilpotent {
            field: Field::R,
            partition: Partition::new(vec![2]).unwrap(),
        };
        let w = witness_family(&label, 2, 0, &tol()).unwrap();
        assert_eq!(w.codim, 2);
        let at_zero = w.family.eval(&[0.0, 0.0]);
        let d = crate::generic::matrix_distance(&at_zero, crate::generic::DistanceProxy::Nilpotency)
            .unwrap();
        assert!(d < 1e-14);
    }

    #[test]
    fn certify_top_nilpotent_r2() {
        let label = StratumLabel::Nilpotent {
            field: Field::R,
            partition: Partition::new(vec![2]).unwrap(),
        };
        let w = witness_family(&label, 2, 0, &tol()).unwrap();
        let cert = certify_witness(&w, 5, 1e-3, 1e-8, 17, &tol()).unwrap();
        assert!(cert.passed, "outcomes: {:?}", cert.outcomes);
    }

    #[test]
    fn certify_top_center_r2() {
        let labels = crate::strata::enumerate_strata(Field::R, 2, crate::strata::StratumKind::Center);
        let w = witness_family(&labels[0], 1, 0, &tol()).unwrap();
        assert_eq!(w.codim, 1);
        let cert = certify_witness(&w, 5, 1e-3, 1e-8, 23, &tol()).unwrap();
        assert!(cert.passed, "outcomes: {:?}", cert.outcomes);
    }
}
