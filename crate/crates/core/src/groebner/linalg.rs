use crate::field::Field;

/// Rank of a dense matrix given by rows, by Gaussian elimination.
#[cfg(test)]
fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col]).unwrap();
        let pivot_row: Vec<F::Elem> = rows[rank].iter().map(|x| field.mul(x, &inv)).collect();
        for r in rank + 1..rows.len() {
            if field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..width {
                let delta = field.mul(&factor, &pivot_row[c]);
                rows[r][c] = field.sub(&rows[r][c], &delta);
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Incremental row echelon form for sparse rows (sorted by column).
pub(crate) struct SparseEchelon<F: Field> {
    field: F,
    pivots: std::collections::HashMap<usize, Vec<(usize, F::Elem)>>,
}

impl<F: Field> SparseEchelon<F> {
    pub(crate) fn new(field: F) -> Self {
        SparseEchelon {
            field,
            pivots: std::collections::HashMap::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns holding a pivot, in no particular order.
    pub(crate) fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub(crate) fn insert(&mut self, mut row: Vec<(usize, F::Elem)>) -> bool {
        row.retain(|(_, c)| !self.field.is_zero(c));
        row.sort_by_key(|(c, _)| *c);
        loop {
            let Some((col, lead)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&col) {
                Some(pivot) => {
                    let factor = self.field.neg(&lead);
                    row = axpy(&self.field, &row, &factor, pivot);
                }
                None => {
                    let inv = self.field.inv(&lead).unwrap();
                    let normalized = row
                        .into_iter()
                        .map(|(c, x)| (c, self.field.mul(&x, &inv)))
                        .collect();
                    self.pivots.insert(col, normalized);
                    return true;
                }
            }
        }
    }
}

/// `a + factor * b` for sparse rows.
fn axpy<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    factor: &F::Elem,
    b: &[(usize, F::Elem)],
) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(factor, &b[j].1)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(factor, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn small_ranks() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(rank(&f, vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&f, vec![vec![1, 2], vec![2, 5]]), 2);
        assert_eq!(rank(&f, vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&f, Vec::<Vec<u32>>::new()), 0);
    }

    #[test]
    fn sparse_matches_dense() {
        let f = PrimeField::new(7).unwrap();
        let rows = vec![vec![1, 0, 6], vec![0, 1, 6], vec![1, 6, 0], vec![0, 0, 1]];
        let mut e = SparseEchelon::new(f);
        let mut independent = 0;
        for r in &rows {
            let sparse = r.iter().enumerate().map(|(c, &x)| (c, x)).collect();
            if e.insert(sparse) {
                independent += 1;
            }
        }
        assert_eq!(independent, rank(&f, rows.clone()));
        assert_eq!(e.rank(), 3);
    }
}
