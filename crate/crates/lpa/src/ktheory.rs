//! Exact integer Smith normal form and the `K_0` group of the Leavitt path
//! algebra, with the class of the identity.
//!
//! `K_0` is presented as the cokernel of the map sending, for each non-sink
//! vertex `v`, the basis vector `e_v` to `e_v - Σ_{e ∈ s^{-1}(v)} e_{r(e)}`
//! (the columns of `I - Aᵗ` restricted to non-sink columns); the class of
//! the identity is the image of the all-ones vector. Everything runs on
//! arbitrary-precision integers: intermediate Smith entries can explode and
//! the point of the module is exactness.

use num::{BigInt, Integer, Signed, Zero};

use crate::graph::Graph;
use crate::{Error, Result};

/// A dense rectangular matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    /// Builds from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(target, j) + factor * self.get(source, j);
            self.set(target, j, v);
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, target) + factor * self.get(i, source);
            self.set(i, target, v);
        }
    }
}

/// The decomposition `U · M · V = D` with unimodular `U`, `V` and diagonal
/// `D` whose nonneg entries satisfy `d_1 | d_2 | …` with zeros trailing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The diagonal of `D`, one entry per `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// The nonzero diagonal entries (elementary divisors, 1s included).
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

/// Smith normal form by Euclidean pivoting. The pivot is always the entry
/// of least absolute value in the remaining submatrix (ties broken in
/// row-major order), which makes the reduction deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let limit = m.rows().min(m.cols());
    let mut k = 0;
    while k < limit {
        let Some((pi, pj)) = find_pivot(&d, k) else {
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        'reduce: loop {
            // clear the pivot column
            let mut dirty = false;
            for i in k + 1..d.rows() {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let q = -(d.get(i, k) / d.get(k, k));
                d.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                if !d.get(i, k).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                repivot(&mut d, &mut u, &mut v, k);
                continue 'reduce;
            }
            // clear the pivot row
            for j in k + 1..d.cols() {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let q = -(d.get(k, j) / d.get(k, k));
                d.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                if !d.get(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                repivot(&mut d, &mut u, &mut v, k);
                continue 'reduce;
            }
            // make the pivot divide the rest of the submatrix
            for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if !(d.get(i, j) % d.get(k, k)).is_zero() {
                        d.add_row_multiple(k, i, &BigInt::from(1));
                        u.add_row_multiple(k, i, &BigInt::from(1));
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
        k += 1;
    }
    SnfResult { u, d, v }
}

fn find_pivot(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let a = d.get(i, j).abs();
            if a.is_zero() {
                continue;
            }
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Re-selects the minimal entry of the submatrix as the pivot at `(k, k)`.
fn repivot(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, k: usize) {
    if let Some((pi, pj)) = find_pivot(d, k) {
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
    }
}

/// Structure of `K_0(L(E))` together with basis-independent data about the
/// class of the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Presentation {
    /// Invariant factors at least 2; the torsion part is their direct sum.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
    /// Coordinates of `[1]` in the Smith basis (torsion coordinates reduced
    /// modulo their factor). Basis-dependent; compare only the summaries.
    pub one_class: Vec<BigInt>,
    /// Order of the torsion component of `[1]` (1 when trivial). Canonical
    /// whenever `one_free_gcd` is 0; otherwise the splitting into torsion
    /// and free parts is not unique and the value is pinned by the
    /// declaration vertex order.
    pub one_torsion_order: BigInt,
    /// Gcd of the free coordinates of `[1]` (the content of its image in
    /// the free quotient); 0 when the free part vanishes.
    pub one_free_gcd: BigInt,
}

impl K0Presentation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "torsion": self.invariant_factors.iter().map(BigInt::to_string).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
            "one_torsion_order": self.one_torsion_order.to_string(),
            "one_free_gcd": self.one_free_gcd.to_string(),
        })
    }

    /// Renders the group as `Z/d1 + … + Z^r`.
    pub fn group_description(&self) -> String {
        let mut parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// The presentation matrix: rows indexed by all vertices, one column per
/// non-sink vertex `v` holding `e_v - Σ_{e ∈ s^{-1}(v)} e_{r(e)}`.
pub fn k0_relation_matrix(g: &Graph) -> IntMatrix {
    let n = g.vertex_count();
    let nonsinks: Vec<usize> = (0..n).filter(|&v| g.out_degree(v) > 0).collect();
    let mut m = IntMatrix::zeros(n, nonsinks.len());
    for (col, &v) in nonsinks.iter().enumerate() {
        let cur = m.get(v, col) + 1;
        m.set(v, col, cur);
        for &e in g.out_edges(v) {
            let w = g.edge(e).dst;
            let cur = m.get(w, col) - 1;
            m.set(w, col, cur);
        }
    }
    m
}

pub fn k0_presentation(g: &Graph) -> Result<K0Presentation> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let m = k0_relation_matrix(g);
    let snf = smith_normal_form(&m);
    let divisors = snf.nonzero_diagonal();
    let rank = divisors.len();
    let n = g.vertex_count();
    let ones = vec![BigInt::from(1); n];
    let y = snf.u.mul_vec(&ones);
    let mut one_class = Vec::with_capacity(n);
    let mut one_torsion_order = BigInt::from(1);
    for (i, coord) in y.iter().enumerate() {
        if i < rank {
            let d = &divisors[i];
            let reduced = coord.mod_floor(d);
            if *d > BigInt::from(1) {
                let order = d / d.gcd(&reduced);
                one_torsion_order = one_torsion_order.lcm(&order);
            }
            one_class.push(reduced);
        } else {
            one_class.push(coord.clone());
        }
    }
    let one_free_gcd = y[rank..].iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    Ok(K0Presentation {
        invariant_factors: divisors
            .into_iter()
            .filter(|d| *d > BigInt::from(1))
            .collect(),
        free_rank: n - rank,
        one_class,
        one_torsion_order,
        one_free_gcd,
    })
}
