//! Exact linear algebra over `ℚ(i)` and small polynomial matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::coeff::GaussRat;
use crate::error::Result;
use crate::poly::Poly;
use crate::vars::VarTable;

/// Incrementally maintained row-echelon basis of a subspace of `ℚ(i)^dim`.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    // pivot column -> row whose first nonzero entry is 1 at that column
    rows: BTreeMap<usize, Vec<GaussRat>>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, mut v: Vec<GaussRat>) -> Vec<GaussRat> {
        debug_assert_eq!(v.len(), self.dim);
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (j, r) in row.iter().enumerate().skip(p) {
                if !r.is_zero() {
                    v[j] -= &(&f * r);
                }
            }
        }
        v
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<GaussRat>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        let row: Vec<GaussRat> = v.iter().map(|c| c * &inv).collect();
        self.rows.insert(p, row);
        true
    }

    pub fn contains(&self, v: Vec<GaussRat>) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank(vectors: impl IntoIterator<Item = Vec<GaussRat>>, dim: usize) -> usize {
    let mut space = RowSpace::new(dim);
    for v in vectors {
        space.insert(v);
    }
    space.rank()
}

/// Determinant by cofactor expansion. Intended for the small (`≤ 5×5`)
/// matrices arising from Jacobians and defining-function blocks.
pub fn poly_det(m: &[Vec<Poly>], table: &Arc<VarTable>) -> Result<Poly> {
    let n = m.len();
    match n {
        0 => return Ok(Poly::one(table)),
        1 => return Ok(m[0][0].clone()),
        _ => {}
    }
    let mut acc = Poly::zero(table);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor = minor(m, 0, j);
        let term = m[0][j].checked_mul(&poly_det(&minor, table)?)?;
        acc = if j % 2 == 0 {
            acc.checked_add(&term)?
        } else {
            acc.checked_sub(&term)?
        };
    }
    Ok(acc)
}

fn minor(m: &[Vec<Poly>], row: usize, col: usize) -> Vec<Vec<Poly>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

/// Adjugate matrix: `adj(A)·A = A·adj(A) = det(A)·1`.
#[allow(clippy::needless_range_loop)]
pub fn poly_adjugate(m: &[Vec<Poly>], table: &Arc<VarTable>) -> Result<Vec<Vec<Poly>>> {
    let n = m.len();
    if n == 1 {
        return Ok(vec![vec![Poly::one(table)]]);
    }
    let mut adj = vec![vec![Poly::zero(table); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = poly_det(&minor(m, i, j), table)?;
            // adj[j][i] = (-1)^{i+j} det(minor(i, j))
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -&c };
        }
    }
    Ok(adj)
}
