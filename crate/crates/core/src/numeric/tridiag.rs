use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidParameter("empty tridiagonal operator".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "off-diagonal length {} does not match diagonal length {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Number of eigenvalues strictly below `lambda`, from the signs of the
    /// LDLᵀ pivots of `T − λI` (Sturm sequence).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let pivmin = self.pivot_floor();
        let mut count = 0;
        let mut pivot = self.diag[0] - lambda;
        if pivot.abs() < pivmin {
            pivot = -pivmin;
        }
        if pivot < 0.0 {
            count += 1;
        }
        for (d, e) in self.diag[1..].iter().zip(&self.offdiag) {
            pivot = (d - lambda) - e * e / pivot;
            if pivot.abs() < pivmin {
                pivot = -pivmin;
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn pivot_floor(&self) -> f64 {
        let emax = self.offdiag.iter().fold(1.0f64, |acc, e| acc.max(e * e));
        f64::MIN_POSITIVE * emax / f64::EPSILON
    }

    /// Gershgorin interval enclosing the spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = f64::EPSILON * lo.abs().max(hi.abs()) + 1e-300;
        (lo - pad, hi + pad)
    }

    /// The `count` smallest eigenvalues in ascending order, each bisected to
    /// `max(1e-10, 1e-12 |λ|)`.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        if count > self.len() {
            return Err(Error::InvalidParameter(format!(
                "requested {count} eigenvalues of a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (glo, ghi) = self.gershgorin_bounds();
        let mut out = Vec::with_capacity(count);
        let mut lo = glo;
        for k in 0..count {
            // invariant: count(lo) <= k < count(hi)
            let mut a = lo;
            let mut b = ghi;
            for _ in 0..256 {
                let mid = 0.5 * (a + b);
                let tol = (1e-12 * mid.abs()).max(1e-10);
                if b - a <= tol {
                    break;
                }
                if self.sturm_count(mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            out.push(0.5 * (a + b));
            lo = a;
        }
        Ok(out)
    }
}
