//! Dense exact linear algebra over a prime field: rank, kernels, and an
//! incremental echelon form used to coordinatize subquotients. Every
//! homological length in the crate bottoms out here.

use crate::field::FieldSpec;

/// Dense matrix over F_p, row major.
#[derive(Debug, Clone)]
pub struct MatFp {
    pub field: FieldSpec,
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<u64>>,
}

impl MatFp {
    pub fn zero(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        MatFp {
            field,
            nrows,
            ncols,
            rows: vec![vec![0; ncols]; nrows],
        }
    }

    pub fn from_rows(field: FieldSpec, ncols: usize, rows: Vec<Vec<u64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        MatFp {
            field,
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field, self.ncols);
        for r in &self.rows {
            e.insert(r.clone(), None);
        }
        e.rank()
    }

    /// Basis of the right kernel: vectors v with M v = 0.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut rows = self.rows.clone();
        let n = self.ncols;
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut rank = 0usize;
        for col in 0..n {
            let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = f.inv(rows[rank][col]);
            for v in rows[rank].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = row[col];
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v = f.sub(*v, f.mul(c, *pv));
                    }
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..n {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; n];
            v[free] = 1;
            for &(r, c) in &pivots {
                v[c] = f.neg(rows[r][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        self.rows
            .iter()
            .map(|row| {
                let mut acc = 0u64;
                for (a, b) in row.iter().zip(v) {
                    acc = f.add(acc, f.mul(*a, *b));
                }
                acc
            })
            .collect()
    }
}

/// Incremental row echelon form with optionally tagged rows. Tagged rows act
/// as a chosen basis of a subquotient: untagged rows span the submodule being
/// quotiented out, tagged rows span the complement.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    /// (pivot column, normalized row, tag)
    rows: Vec<(usize, Vec<u64>, Option<usize>)>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn tagged_count(&self) -> usize {
        self.rows.iter().filter(|(_, _, t)| t.is_some()).count()
    }

    fn find_pivot_row(&self, col: usize) -> Option<usize> {
        self.rows.iter().position(|(p, _, _)| *p == col)
    }

    /// Reduce `v` in place against the echelon rows. Returns the coefficients
    /// used on tagged rows, as (tag, coefficient) pairs.
    pub fn reduce(&self, v: &mut Vec<u64>) -> Vec<(usize, u64)> {
        let f = self.field;
        let mut coords = Vec::new();
        let mut col = 0usize;
        while col < self.ncols {
            if v[col] == 0 {
                col += 1;
                continue;
            }
            let Some(ri) = self.find_pivot_row(col) else {
                col += 1;
                continue;
            };
            let c = v[col];
            let (_, row, tag) = &self.rows[ri];
            for (a, b) in v.iter_mut().zip(row) {
                *a = f.sub(*a, f.mul(c, *b));
            }
            if let Some(t) = tag {
                coords.push((*t, c));
            }
            // v[col] is now zero; continue from the same column.
        }
        coords
    }

    /// Insert a row (if independent). Returns true when a new pivot appears.
    pub fn insert(&mut self, mut v: Vec<u64>, tag: Option<usize>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[pivot]);
        for c in v.iter_mut() {
            *c = f.mul(*c, inv);
        }
        self.rows.push((pivot, v, tag));
        true
    }

    /// True when `v` lies in the row space.
    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }

    /// Coordinates of `v` on the tagged rows; None when `v` is not in the
    /// row space. The result vector is indexed by tag.
    pub fn coords(&self, v: &[u64], ntags: usize) -> Option<Vec<u64>> {
        let mut w = v.to_vec();
        let pairs = self.reduce(&mut w);
        if w.iter().any(|&c| c != 0) {
            return None;
        }
        let mut out = vec![0u64; ntags];
        for (t, c) in pairs {
            out[t] = c;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    #[test]
    fn rank_and_kernel() {
        // [[1,2,3],[2,4,6],[0,1,1]] has rank 2, kernel dim 1
        let m = MatFp::from_rows(f(), 3, vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.apply(v).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn subquotient_coords() {
        // Ambient F^3, quotient by span{(1,0,0)}; basis of complement from
        // (1,1,0) and (0,0,1).
        let mut e = Echelon::new(f(), 3);
        e.insert(vec![1, 0, 0], None);
        assert!(e.insert(vec![1, 1, 0], Some(0)));
        assert!(e.insert(vec![0, 0, 1], Some(1)));
        assert!(!e.insert(vec![1, 1, 1], Some(2)));
        // (5, 2, 3) = 5 e1 + 2 e2 + 3 e3 == 2*(class of row 0) + 3*(class of row 1)
        let coords = e.coords(&[5, 2, 3], 2).unwrap();
        assert_eq!(coords, vec![2, 3]);
        assert!(e.contains(&[7, 0, 0]));
    }
}
