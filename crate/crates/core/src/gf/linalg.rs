use super::{Fe, Field, Poly};

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn diagonal(entries: &[Fe]) -> Matrix {
        let mut m = Matrix::zero(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| f.sum(self.row(i).iter().zip(v).map(|(&a, &b)| f.mul(a, b))))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel(&self, f: &Field) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }
}

/// Incrementally built echelon basis that reports linear dependencies in
/// terms of the previously accepted vectors.
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<Fe>, Vec<Fe>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Tries to add `v`. Returns `None` when `v` is independent of the
    /// accepted vectors (it is then accepted), or `Some(c)` with
    /// `v = sum c[i] * accepted[i]` otherwise.
    pub fn insert(&mut self, f: &Field, v: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(v.len(), self.dim);
        let k = self.rows.len();
        let mut v = v.to_vec();
        let mut combo = vec![Fe::ZERO; k + 1];
        combo[k] = Fe::ONE;
        for (pivot, row, rc) in &self.rows {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            for (x, &y) in combo.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                // 0 = v + sum combo[i] accepted[i]
                combo.pop();
                Some(combo.into_iter().map(|c| f.neg(c)).collect())
            }
            Some(p) => {
                let inv = f.inv(v[p]);
                let row = v.iter().map(|&x| f.mul(x, inv)).collect();
                let rc = combo.iter().map(|&x| f.mul(x, inv)).collect();
                self.rows.push((p, row, rc));
                None
            }
        }
    }
}

/// Monic polynomial of least degree annihilating a square matrix.
pub fn min_poly_of_operator(f: &Field, op: &Matrix) -> Poly {
    assert!(op.is_square(), "operator must be square");
    let n = op.rows();
    let mut ech = Echelon::new(n * n);
    let mut power = Matrix::identity(n);
    loop {
        if let Some(c) = ech.insert(f, power.data()) {
            // op^k = sum c_i op^i
            let mut coeffs: Vec<Fe> = c.into_iter().map(|x| f.neg(x)).collect();
            coeffs.push(Fe::ONE);
            return Poly::new(coeffs);
        }
        power = power.mul(f, op);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn identity_min_poly() {
        let f = make_field(3, 1).unwrap();
        let p = min_poly_of_operator(&f, &Matrix::identity(3));
        assert_eq!(p, Poly::new(vec![f.from_int(-1), Fe::ONE]));
    }

    #[test]
    fn nilpotent_jordan_block() {
        let f = make_field(5, 1).unwrap();
        let j = Matrix::from_rows(&[vec![Fe(0), Fe(1)], vec![Fe(0), Fe(0)]]);
        assert_eq!(
            min_poly_of_operator(&f, &j),
            Poly::new(vec![Fe(0), Fe(0), Fe(1)])
        );
    }

    #[test]
    fn diagonal_distinct_eigenvalues() {
        let f = make_field(5, 1).unwrap();
        let d = Matrix::diagonal(&[Fe(1), Fe(2)]);
        let expected = Poly::linear(&f, Fe(1)).mul(&f, &Poly::linear(&f, Fe(2)));
        assert_eq!(min_poly_of_operator(&f, &d), expected);
    }

    #[test]
    fn kernel_and_inverse() {
        let f = make_field(7, 1).unwrap();
        let m = Matrix::from_rows(&[vec![Fe(1), Fe(2), Fe(3)], vec![Fe(2), Fe(4), Fe(6)]]);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(&f, v).iter().all(|x| x.is_zero()));
        }
        let a = Matrix::from_rows(&[vec![Fe(2), Fe(1)], vec![Fe(1), Fe(1)]]);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv), Matrix::identity(2));
        assert!(m.transpose().mul(&f, &m).inverse(&f).is_none());
    }

    #[test]
    fn echelon_reports_dependencies() {
        let f = make_field(3, 1).unwrap();
        let mut e = Echelon::new(3);
        assert!(e.insert(&f, &[Fe(1), Fe(0), Fe(1)]).is_none());
        assert!(e.insert(&f, &[Fe(0), Fe(1), Fe(1)]).is_none());
        let c = e.insert(&f, &[Fe(1), Fe(2), Fe(0)]).unwrap();
        assert_eq!(c, vec![Fe(1), Fe(2)]);
        assert_eq!(e.len(), 2);
    }
}
