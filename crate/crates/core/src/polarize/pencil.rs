use crate::error::{Error, Result};
use crate::polycore::{CRational, Form, MatrixForm, SymMatrix};

/// Linear pencil `A(z) = Σ_k z_k A_k` with symmetric coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    size: usize,
    coeffs: Vec<SymMatrix>,
}

impl Pencil {
    pub fn new(coeffs: Vec<SymMatrix>) -> Result<Self> {
        let size = coeffs.first().map_or(0, |c| c.size());
        if coeffs.iter().any(|c| c.size() != size) {
            return Err(Error::SizeMismatch("pencil coefficients differ in size".into()));
        }
        Ok(Self { size, coeffs })
    }

    pub fn zeros(nvars: usize, size: usize) -> Self {
        Self {
            size,
            coeffs: vec![SymMatrix::zeros(size); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coeffs(&self) -> &[SymMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &SymMatrix {
        &self.coeffs[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut SymMatrix {
        &mut self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, a: SymMatrix) {
        assert_eq!(a.size(), self.size);
        self.coeffs[k] = a;
    }

    pub fn sub(&self, o: &Pencil) -> Result<Pencil> {
        self.check_shape(o)?;
        Ok(Pencil {
            size: self.size,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn add(&self, o: &Pencil) -> Result<Pencil> {
        self.check_shape(o)?;
        Ok(Pencil {
            size: self.size,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        })
    }

    fn check_shape(&self, o: &Pencil) -> Result<()> {
        if self.size != o.size || self.nvars() != o.nvars() {
            return Err(Error::SizeMismatch(format!(
                "pencils {}x{} in {} variables vs {}x{} in {}",
                self.size,
                self.size,
                self.nvars(),
                o.size,
                o.size,
                o.nvars()
            )));
        }
        Ok(())
    }

    /// `A(z)` as a degree-one matrix form.
    pub fn as_matrix_form(&self) -> MatrixForm {
        let d = self.nvars();
        let n = self.size;
        let mut entries = vec![Form::zero(d, 1); n * n];
        for (k, a) in self.coeffs.iter().enumerate() {
            let zk = Form::var(d, k);
            for i in 0..n {
                for j in 0..n {
                    let c = a.get(i, j);
                    if !num_traits::Zero::is_zero(c) {
                        entries[i * n + j] = entries[i * n + j].checked_add(&zk.scale(c)).expect("degree one");
                    }
                }
            }
        }
        MatrixForm::new(n, n, entries).expect("well-formed pencil")
    }

    pub fn evaluate(&self, point: &[CRational]) -> Vec<Vec<CRational>> {
        let n = self.size;
        let mut out = vec![vec![CRational::zero(); n]; n];
        for (k, a) in self.coeffs.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let c = a.get(i, j);
                    if !num_traits::Zero::is_zero(c) {
                        out[i][j] = &out[i][j] + &point[k].scale(c);
                    }
                }
            }
        }
        out
    }

    /// Smallest eigenvalue over all coefficients.
    pub fn min_eigenvalue(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.min_eigenvalue())
            .fold(f64::INFINITY, f64::min)
    }
}
