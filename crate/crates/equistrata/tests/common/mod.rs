//! Shared test oracles, independent of the library's implementation paths.

#![allow(dead_code)]

use equistrata::linalg::QuatStructured;
use equistrata::mat::{complexify, CMatrix, RMatrix, C64};
use equistrata::strata::{Field, StratumLabel, StratumMatrix};
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Sum of min(s_i, s_j) over all ordered pairs of parts: the dimension of
/// the commutant of a nilpotent Jordan matrix with block sizes `parts`.
pub fn min_sum(parts: &[usize]) -> usize {
    let mut total = 0;
    for &a in parts {
        for &b in parts {
            total += a.min(b);
        }
    }
    total
}

/// Independent closed-form real dimension of every stratum, derived from
/// block-by-block Sylvester kernel counts; used as the oracle against the
/// measured tangent rank.
pub fn oracle_dimension(label: &StratumLabel) -> usize {
    let n = label.ambient_n();
    match label {
        StratumLabel::Nilpotent { field, partition } => {
            let image = n * n - min_sum(partition.parts());
            match field {
                Field::R => image,
                Field::C => 2 * image,
                Field::H => 4 * image,
            }
        }
        StratumLabel::CenterC { xi } => {
            let k = xi.block_count();
            let kernel: usize = xi.inner.iter().map(|p| min_sum(p.parts())).sum();
            k + 2 * (n * n - kernel)
        }
        StratumLabel::CenterR { xi, q } => {
            let l = xi.block_count();
            let kernel: usize =
                2 * xi.inner.iter().map(|p| min_sum(p.parts())).sum::<usize>() + min_sum(q.parts());
            l + n * n - kernel
        }
        StratumLabel::CenterH { xi, q } => {
            let l = xi.block_count();
            let pk: usize = xi.inner.iter().map(|p| min_sum(p.parts())).sum();
            let qk = min_sum(q.parts());
            l + 4 * n * n - 2 * pk - 4 * qk
        }
    }
}

pub fn random_real(n: usize, rng: &mut ChaCha8Rng) -> RMatrix {
    RMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal))
}

pub fn random_complex(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    DMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn random_quat(n: usize, rng: &mut ChaCha8Rng) -> QuatStructured {
    let x = random_complex(n, rng);
    let y = random_complex(n, rng);
    QuatStructured::from_blocks(&x, &y).expect("square blocks")
}

fn cond_c(m: &CMatrix) -> f64 {
    let sv = equistrata::linalg::singular_values_c(m);
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// A random invertible element of the field's algebra with condition number
/// below the bound; resamples until one is found.
pub fn random_conjugator(field: Field, n: usize, cond_bound: f64, rng: &mut ChaCha8Rng) -> CMatrix {
    loop {
        let cand = match field {
            Field::R => complexify(&random_real(n, rng)),
            Field::C => random_complex(n, rng),
            Field::H => random_quat(n, rng).into_matrix(),
        };
        if cond_c(&cand) < cond_bound {
            return cand;
        }
    }
}

/// Conjugates a stratum sample matrix inside its own algebra.
pub fn conjugate_in_algebra(
    m: &StratumMatrix,
    conj: &CMatrix,
) -> StratumMatrix {
    let inv = conj.clone().try_inverse().expect("well-conditioned");
    let moved = conj * m.as_complex() * inv;
    match m {
        StratumMatrix::Real(_) => {
            StratumMatrix::Real(moved.map(|z| z.re))
        }
        StratumMatrix::Complex(_) => StratumMatrix::Complex(moved),
        StratumMatrix::Quat(_) => StratumMatrix::Quat(
            QuatStructured::new(moved, &equistrata::ToleranceConfig {
                residual_tol: 1e-6,
                ..Default::default()
            })
            .expect("conjugation preserves the structure"),
        ),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
