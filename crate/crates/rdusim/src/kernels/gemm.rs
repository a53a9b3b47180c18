//! Dense matrix product used as the systolic-mode oracle and by the GEMM
//! work accounting.

use std::ops::{Add, Mul};

use super::KernelError;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Copy> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, KernelError> {
        if data.len() != rows * cols {
            return Err(KernelError::ShapeMismatch(format!(
                "{}x{} matrix needs {} elements, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn at(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }
}

impl Matrix<i64> {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix { rows: n, cols: n, data }
    }
}

/// Naive triple-loop product. MAC count is M*N*K.
pub fn gemm<T>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>, KernelError>
where
    T: Copy + Add<Output = T> + Mul<Output = T> + Default,
{
    if a.cols != b.rows {
        return Err(KernelError::ShapeMismatch(format!(
            "inner dimensions disagree: {}x{} * {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut data = vec![T::default(); a.rows * b.cols];
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.at(i, k);
            for j in 0..b.cols {
                data[i * b.cols + j] = data[i * b.cols + j] + aik * b.at(k, j);
            }
        }
    }
    Ok(Matrix { rows: a.rows, cols: b.cols, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let a = Matrix::new(2, 3, vec![1i64, 2, 3, 4, 5, 6]).unwrap();
        let id = Matrix::identity(2);
        assert_eq!(gemm(&id, &a).unwrap(), a);
    }

    #[test]
    fn two_by_two_case() {
        let a = Matrix::new(2, 2, vec![1i64, 2, 3, 4]).unwrap();
        let b = Matrix::new(2, 2, vec![5i64, 6, 7, 8]).unwrap();
        let c = gemm(&a, &b).unwrap();
        assert_eq!(c.data, vec![19, 22, 43, 50]);
    }

    #[test]
    fn random_shapes_match_hand_loop() {
        let mut rng = crate::verify::test_rng(47);
        let a_data = crate::verify::random_int_vec(&mut rng, 7 * 5);
        let b_data = crate::verify::random_int_vec(&mut rng, 5 * 3);
        let a = Matrix::new(7, 5, a_data).unwrap();
        let b = Matrix::new(5, 3, b_data).unwrap();
        let c = gemm(&a, &b).unwrap();
        for i in 0..7 {
            for j in 0..3 {
                let mut want = 0i64;
                for k in 0..5 {
                    want += a.at(i, k) * b.at(k, j);
                }
                assert_eq!(c.at(i, j), want);
            }
        }
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = Matrix::new(2, 3, vec![0i64; 6]).unwrap();
        let b = Matrix::new(2, 2, vec![0i64; 4]).unwrap();
        assert!(gemm(&a, &b).is_err());
    }
}
