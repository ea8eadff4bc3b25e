//! Smith normal form over Z and reduced homology of simplicial complexes.

/// Invariant factors d_1 | d_2 | … of an integer matrix (nonzero ones only).
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for r in a.iter_mut().skip(t) {
                        r[j] -= q * r[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // divisibility of the remaining block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t onto the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            }
            if best.1 != t {
                for r in a.iter_mut() {
                    r.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs() as i64);
        t += 1;
    }
    diag
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    invariant_factors(m).len()
}

/// A simplicial complex given by its faces (each a sorted vertex list).
/// The empty face is implicit.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// `faces` must be closed under taking nonempty subsets.
    pub fn new(faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for mut f in faces {
            if f.is_empty() {
                continue;
            }
            f.sort_unstable();
            let d = f.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            if !by_dim[d].contains(&f) {
                by_dim[d].push(f);
            }
        }
        for v in &mut by_dim {
            v.sort();
        }
        SimplicialComplex { by_dim }
    }

    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn faces(&self, d: usize) -> &[Vec<usize>] {
        self.by_dim.get(d).map_or(&[], |v| v.as_slice())
    }

    fn count(&self, d: isize) -> usize {
        if d == -1 {
            1
        } else if d < -1 {
            0
        } else {
            self.faces(d as usize).len()
        }
    }

    // augmented boundary C_d → C_{d-1}, rows indexed by (d-1)-faces
    fn boundary(&self, d: usize) -> Vec<Vec<i64>> {
        if d == 0 {
            return vec![vec![1; self.faces(0).len()]];
        }
        let lower = self.faces(d - 1);
        let upper = self.faces(d);
        let mut m = vec![vec![0i64; upper.len()]; lower.len()];
        for (j, f) in upper.iter().enumerate() {
            for k in 0..f.len() {
                let mut g = f.clone();
                g.remove(k);
                let i = lower.binary_search(&g).expect("complex is closed under faces");
                m[i][j] = if k % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    fn boundary_rank(&self, d: isize) -> usize {
        if d < 0 || self.count(d) == 0 {
            0
        } else {
            rank(&self.boundary(d as usize))
        }
    }

    /// Rational reduced Betti numbers b̃_d for d = −1..=dim; index k holds b̃_{k−1}.
    pub fn reduced_betti(&self) -> Vec<usize> {
        let top = self.dim();
        (-1..=top.max(-1))
            .map(|d| self.count(d) - self.boundary_rank(d) - self.boundary_rank(d + 1))
            .collect()
    }

    /// b̃_d with d ≥ −1; zero outside the range.
    pub fn reduced_betti_at(&self, d: isize) -> usize {
        let b = self.reduced_betti();
        if d < -1 {
            return 0;
        }
        b.get((d + 1) as usize).copied().unwrap_or(0)
    }
}
