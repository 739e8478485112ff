use nalgebra::DVector;

use crate::algebra::{frob_inner, EndAlgebraBasis};
use crate::error::{Error, Result};
use crate::linalg::nullspace_r_with_floor;
use crate::mat::{RMatrix, C64};
use crate::tol::ToleranceConfig;

/// The semisimple quotient `S = End(W)/J`, realized concretely on the
/// orthogonal complement of the radical inside the commutant. Products are
/// matrix products followed by projection along `J` (which is the orthogonal
/// projection, since the complement is built orthogonal to `J`).
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    pub n: usize,
    basis: Vec<RMatrix>,
    unit: DVector<f64>,
}

impl QuotientAlgebra {
    pub fn new(end: &EndAlgebraBasis, radical: &[RMatrix], tol: &ToleranceConfig) -> Result<Self> {
        let n = end.n;
        let nn = n * n;
        let vecify = |m: &RMatrix| DVector::from_column_slice(m.as_slice());
        // Orthonormalize the radical span.
        let rad_basis = orthonormal_rows(&radical.iter().map(vecify).collect::<Vec<_>>(), tol);
        // Project the End basis off the radical and orthonormalize what is left.
        let mut residuals = Vec::new();
        for e in &end.basis {
            let mut v = vecify(e);
            for r in &rad_basis {
                let c = v.dot(r);
                v -= r * c;
            }
            residuals.push(v);
        }
        let comp = orthonormal_rows(&residuals, tol);
        if comp.len() + rad_basis.len() != end.dim_end() {
            return Err(Error::ToleranceFailure(format!(
                "complement dim {} + radical dim {} != end dim {}",
                comp.len(),
                rad_basis.len(),
                end.dim_end()
            )));
        }
        let basis: Vec<RMatrix> = comp
            .iter()
            .map(|v| RMatrix::from_column_slice(n, n, v.as_slice()))
            .collect();
        let _ = nn;
        let mut quot = Self {
            n,
            basis,
            unit: DVector::zeros(comp.len()),
        };
        quot.unit = quot.project(&RMatrix::identity(n, n));
        Ok(quot)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> DVector<f64> {
        self.unit.clone()
    }

    pub fn basis(&self) -> &[RMatrix] {
        &self.basis
    }

    /// Coordinates of the projection of `m` onto the complement along `J`.
    pub fn project(&self, m: &RMatrix) -> DVector<f64> {
        DVector::from_iterator(self.basis.len(), self.basis.iter().map(|e| frob_inner(e, m)))
    }

    /// The representative matrix of a coordinate vector.
    pub fn matrix_of(&self, coords: &DVector<f64>) -> RMatrix {
        let mut out = RMatrix::zeros(self.n, self.n);
        for (c, e) in coords.iter().zip(&self.basis) {
            out += e * *c;
        }
        out
    }

    /// The product in `S`: multiply representatives, project along `J`.
    pub fn mul(&self, a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
        self.project(&(self.matrix_of(a) * self.matrix_of(b)))
    }

    /// Basis of the center of `S` in coordinates.
    pub fn center(&self, tol: &ToleranceConfig) -> Result<Vec<DVector<f64>>> {
        let s = self.dim();
        let mut stacked = RMatrix::zeros(s * s, s);
        for i in 0..s {
            let ei = DVector::from_fn(s, |r, _| if r == i { 1.0 } else { 0.0 });
            for j in 0..s {
                let ej = DVector::from_fn(s, |r, _| if r == j { 1.0 } else { 0.0 });
                let comm = self.mul(&ej, &ei) - self.mul(&ei, &ej);
                for r in 0..s {
                    stacked[(i * s + r, j)] = comm[r];
                }
            }
        }
        let kernel = nullspace_r_with_floor(&stacked, tol, tol.rank_tol)?;
        Ok((0..kernel.ncols())
            .map(|c| kernel.column(c).into_owned())
            .collect())
    }

    /// Monic minimal polynomial of `b` in the unital subalgebra generated by
    /// `unit` and `b`: returns `[c_0, ..., c_{d-1}]` with
    /// `b^d = c_0 unit + c_1 b + ... + c_{d-1} b^{d-1}`.
    pub fn minimal_polynomial(
        &self,
        b: &DVector<f64>,
        unit: &DVector<f64>,
    ) -> Result<Vec<f64>> {
        let s = self.dim();
        let max_deg = s + 1;
        let mut krylov: Vec<DVector<f64>> = vec![unit.clone()];
        let mut ortho: Vec<DVector<f64>> = Vec::new();
        push_orthonormal(&mut ortho, unit.clone());
        for _ in 0..max_deg {
            let next = self.mul(b, krylov.last().unwrap());
            let mut res = next.clone();
            for q in &ortho {
                let c = res.dot(q);
                res -= q * c;
            }
            // re-orthogonalize once for stability
            for q in &ortho {
                let c = res.dot(q);
                res -= q * c;
            }
            let scale = next.norm().max(1.0);
            if res.norm() <= 1e-10 * scale {
                // Dependent: solve next = sum coeffs * krylov via least squares.
                let d = krylov.len();
                let mut a = RMatrix::zeros(s, d);
                for (j, v) in krylov.iter().enumerate() {
                    a.set_column(j, v);
                }
                let svd = a.svd(true, true);
                let coeffs = svd
                    .solve(&next, 1e-12)
                    .map_err(|e| Error::NonConvergence(format!("least squares: {e}")))?;
                return Ok(coeffs.iter().copied().collect());
            }
            krylov.push(next);
            push_orthonormal(&mut ortho, res);
        }
        Err(Error::NonConvergence(
            "Krylov sequence did not close up".into(),
        ))
    }

    /// Evaluates a complex polynomial (coefficients low-to-high) at `b`,
    /// with the given corner unit standing in for 1.
    fn eval_poly(
        &self,
        coeffs: &[C64],
        b: &DVector<f64>,
        unit: &DVector<f64>,
    ) -> (DVector<f64>, DVector<f64>) {
        let s = self.dim();
        let mut wre = DVector::zeros(s);
        let mut wim = DVector::zeros(s);
        for &c in coeffs.iter().rev() {
            wre = self.mul(b, &wre) + unit * c.re;
            wim = self.mul(b, &wim) + unit * c.im;
        }
        (wre, wim)
    }

    /// Splits the corner with the given unit along the spectral clusters of a
    /// generic element `b`, returning one idempotent per cluster via Lagrange
    /// interpolation on the roots of the minimal polynomial.
    pub fn spectral_idempotents(
        &self,
        b: &DVector<f64>,
        unit: &DVector<f64>,
        tol: &ToleranceConfig,
    ) -> Result<Vec<DVector<f64>>> {
        let minpoly = self.minimal_polynomial(b, unit)?;
        let d = minpoly.len();
        if d <= 1 {
            // b is a multiple of the unit: no split information.
            return Ok(vec![unit.clone()]);
        }
        let roots = companion_roots(&minpoly)?;
        let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
        // Squarefree check: all roots separated.
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if (roots[i] - roots[j]).norm() <= 1e-6 * scale {
                    return Err(Error::AmbiguousCluster(
                        "repeated roots in minimal polynomial".into(),
                    ));
                }
            }
        }
        // Cluster roots: real roots alone, complex conjugate pairs together.
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        let mut used = vec![false; roots.len()];
        for i in 0..roots.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            if roots[i].im.abs() <= 1e-8 * scale {
                clusters.push(vec![i]);
            } else {
                let partner = (0..roots.len())
                    .find(|&j| !used[j] && (roots[j] - roots[i].conj()).norm() <= 1e-6 * scale);
                match partner {
                    Some(j) => {
                        used[j] = true;
                        clusters.push(vec![i, j]);
                    }
                    None => {
                        return Err(Error::AmbiguousCluster(
                            "complex root without conjugate partner".into(),
                        ))
                    }
                }
            }
        }
        let mut out = Vec::new();
        for cluster in &clusters {
            let mut ere = DVector::zeros(self.dim());
            let mut eim = DVector::zeros(self.dim());
            for &ri in cluster {
                let lagrange = lagrange_coeffs(&roots, ri);
                let (re, im) = self.eval_poly(&lagrange, b, unit);
                ere += re;
                eim += im;
            }
            if eim.norm() > 1e-6 * ere.norm().max(1.0) {
                return Err(Error::ToleranceFailure(
                    "cluster idempotent has imaginary residue".into(),
                ));
            }
            // Validate idempotency.
            let sq = self.mul(&ere, &ere);
            if (&sq - &ere).norm() > 1e-6 * ere.norm().max(1.0) {
                return Err(Error::ToleranceFailure(
                    "spectral idempotent fails e*e = e".into(),
                ));
            }
            out.push(ere);
        }
        let total: DVector<f64> = out.iter().fold(DVector::zeros(self.dim()), |acc, e| acc + e);
        if (total - unit).norm() > 1e-6 * unit.norm().max(1.0) {
            return Err(Error::ToleranceFailure(
                "spectral idempotents do not sum to the unit".into(),
            ));
        }
        let _ = tol;
        Ok(out)
    }
}

fn push_orthonormal(ortho: &mut Vec<DVector<f64>>, mut v: DVector<f64>) {
    for q in ortho.iter() {
        let c = v.dot(q);
        v -= q * c;
    }
    let n = v.norm();
    if n > 0.0 {
        ortho.push(v / n);
    }
}

fn orthonormal_rows(vectors: &[DVector<f64>], tol: &ToleranceConfig) -> Vec<DVector<f64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows = vectors.len();
    let cols = vectors[0].len();
    let mut m = RMatrix::zeros(rows, cols);
    for (i, v) in vectors.iter().enumerate() {
        m.row_mut(i).copy_from(&v.transpose());
    }
    let svd = m.svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let vt = svd.v_t.expect("requested");
    let mut out = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if smax > 0.0 && s > tol.rank_tol * smax {
            out.push(vt.row(i).transpose().into_owned());
        }
    }
    out
}

/// Roots of the monic polynomial `t^d - c_{d-1} t^{d-1} - ... - c_0` via its
/// companion matrix.
fn companion_roots(coeffs: &[f64]) -> Result<Vec<C64>> {
    let d = coeffs.len();
    let mut comp = RMatrix::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = 1.0;
    }
    for (i, &c) in coeffs.iter().enumerate() {
        comp[(i, d - 1)] = c;
    }
    Ok(comp.complex_eigenvalues().iter().copied().collect())
}

/// Coefficients (low-to-high) of the Lagrange basis polynomial that is 1 at
/// `roots[which]` and 0 at every other root.
fn lagrange_coeffs(roots: &[C64], which: usize) -> Vec<C64> {
    let mut num = vec![C64::new(1.0, 0.0)];
    let mut denom = C64::new(1.0, 0.0);
    for (j, &r) in roots.iter().enumerate() {
        if j == which {
            continue;
        }
        // num *= (t - r)
        let mut next = vec![C64::new(0.0, 0.0); num.len() + 1];
        for (k, &c) in num.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        num = next;
        denom *= roots[which] - r;
    }
    num.iter().map(|&c| c / denom).collect()
}
