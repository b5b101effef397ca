//! Smith normal form over the integers and the lattice queries built on it.

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | … | d_r`, `d_i > 0`, zeros after the rank.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    pub diag: Vec<i128>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

impl SmithForm {
    pub fn compute(a: &[Vec<i128>], cols: usize) -> SmithForm {
        let rows = a.len();
        let mut m: Vec<Vec<i128>> = a.to_vec();
        let mut u = identity(rows);
        let mut v = identity(cols);
        let mut diag = Vec::new();

        let swap_cols = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, i: usize, j: usize| {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        };

        let mut t = 0;
        while t < rows.min(cols) {
            // smallest nonzero entry of the trailing block
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, &mut v, t, pj);

            loop {
                let mut clean = true;
                // clear column t below the pivot
                for i in t + 1..rows {
                    if m[i][t] != 0 {
                        let q = m[i][t].div_euclid(m[t][t]);
                        for j in 0..cols {
                            m[i][j] -= q * m[t][j];
                        }
                        for j in 0..rows {
                            u[i][j] -= q * u[t][j];
                        }
                        if m[i][t] != 0 {
                            clean = false;
                        }
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..cols {
                    if m[t][j] != 0 {
                        let q = m[t][j].div_euclid(m[t][t]);
                        for i in 0..rows {
                            m[i][j] -= q * m[i][t];
                        }
                        for i in 0..cols {
                            v[i][j] -= q * v[i][t];
                        }
                        if m[t][j] != 0 {
                            clean = false;
                        }
                    }
                }
                if clean {
                    // divisibility of the remaining block
                    let bad = (t + 1..rows)
                        .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                        .find(|&(i, j)| m[i][j] % m[t][t] != 0);
                    match bad {
                        None => break,
                        Some((i, _)) => {
                            for j in 0..cols {
                                m[t][j] += m[i][j];
                            }
                            for j in 0..rows {
                                u[t][j] += u[i][j];
                            }
                            continue;
                        }
                    }
                }
                // move the smallest remaining entry of row/column t to the pivot
                let cand = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| m[i][j] != 0)
                    .min_by_key(|&(i, j)| m[i][j].abs())
                    .expect("pivot row is nonzero");
                if cand.0 != t {
                    m.swap(t, cand.0);
                    u.swap(t, cand.0);
                } else if cand.1 != t {
                    swap_cols(&mut m, &mut v, t, cand.1);
                }
            }
            if m[t][t] < 0 {
                for j in 0..cols {
                    m[t][j] = -m[t][j];
                }
                for j in 0..rows {
                    u[t][j] = -u[t][j];
                }
            }
            diag.push(m[t][t]);
            t += 1;
        }
        SmithForm {
            rows,
            cols,
            u,
            v,
            diag,
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Invariant factors of the cokernel `Z^cols / rowspace(A)`, with `0`
    /// standing for a free summand. Trivial factors are dropped.
    pub fn cokernel_invariants(&self) -> Vec<i128> {
        let mut out: Vec<i128> = self.diag.iter().copied().filter(|&d| d != 1).collect();
        out.extend(std::iter::repeat_n(0, self.cols - self.rank()));
        out
    }

    /// `b · V`.
    pub fn transform_row(&self, b: &[i128]) -> Vec<i128> {
        (0..self.cols)
            .map(|j| (0..self.cols).map(|i| b[i] * self.v[i][j]).sum())
            .collect()
    }

    /// Some `y` with `y · A = b`, if one exists.
    pub fn solve_left(&self, b: &[i128]) -> Option<Vec<i128>> {
        let bv = self.transform_row(b);
        let mut z = vec![0i128; self.rows];
        for (i, &d) in self.diag.iter().enumerate() {
            if bv[i] % d != 0 {
                return None;
            }
            z[i] = bv[i] / d;
        }
        if bv[self.rank()..].iter().any(|&x| x != 0) {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|j| (0..self.rows).map(|i| z[i] * self.u[i][j]).sum())
                .collect(),
        )
    }

    /// A basis of `{ y : y · A = 0 }`.
    pub fn left_kernel(&self) -> Vec<Vec<i128>> {
        self.u[self.rank()..].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b[0].len();
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn factorization_holds() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = SmithForm::compute(&a, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = matmul(&matmul(&s.u, &a), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diag[i] } else { 0 };
                assert_eq!(d[i][j], want);
            }
        }
    }

    #[test]
    fn solve_and_kernel() {
        let a = vec![vec![2, 0], vec![0, 3], vec![4, 3]];
        let s = SmithForm::compute(&a, 2);
        assert_eq!(s.cokernel_invariants(), vec![6]);
        let y = s.solve_left(&[2, 6]).unwrap();
        let got: Vec<i128> = (0..2).map(|j| (0..3).map(|i| y[i] * a[i][j]).sum()).collect();
        assert_eq!(got, vec![2, 6]);
        assert!(s.solve_left(&[1, 0]).is_none());
        let k = s.left_kernel();
        assert_eq!(k.len(), 1);
        for j in 0..2 {
            assert_eq!((0..3).map(|i| k[0][i] * a[i][j]).sum::<i128>(), 0);
        }
    }

    #[test]
    fn free_part_reported() {
        let a = vec![vec![0, 4]];
        let s = SmithForm::compute(&a, 2);
        assert_eq!(s.cokernel_invariants(), vec![4, 0]);
    }
}
