//! Computable invariants of the Laplacian module: its integer specialization
//! and Smith normal form, the sign-normalized polynomial pair of a graph and
//! its dual, and symplectic-rank genus certificates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::SignedGraph;
use crate::laplacian::{laplacian_matrix, laplacian_polynomial, LaplacianMatrix};
use crate::ring::{LaurentPoly, Monomial, VariableSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("variable sets differ: genus {left} vs genus {right}")]
    VariableMismatch { left: usize, right: usize },
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .flat_map(|r| r.iter().cloned().map(Into::into))
                .collect(),
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= k * row[source]
    fn sub_row(&mut self, target: usize, source: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = k * &self[(source, j)];
            self[(target, j)] -= delta;
        }
    }

    /// col[target] -= k * col[source]
    fn sub_col(&mut self, target: usize, source: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = k * &self[(i, source)];
            self[(i, target)] -= delta;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`
/// with `1 < d1 | d2 | ... | dk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Replaces every entry by its augmentation (all variables set to 1).
pub fn integer_specialization(m: &LaplacianMatrix) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(LaurentPoly::augment).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}

/// Cokernel of `m` acting on row vectors, `Z^cols / (row space)`.
pub fn smith_normal_form(m: &IntMatrix) -> AbelianInvariants {
    let diagonal = smith_diagonal(m);
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    let torsion = diagonal
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    AbelianInvariants {
        free_rank: m.num_cols() - rank,
        torsion,
    }
}

/// Nonnegative Smith diagonal `d1 | d2 | ...`, one entry per pivot position
/// (`min(rows, cols)` entries), zeros last.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Pivot on the smallest nonzero absolute value in the trailing block.
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&p, &q| a[p].abs().cmp(&a[q].abs()));
            let Some((pi, pj)) = pivot else {
                return finish_diagonal(&a, steps);
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = a[(i, t)].div_floor(&a[(t, t)]);
                    a.sub_row(i, t, &q);
                    clean &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = a[(t, j)].div_floor(&a[(t, t)]);
                    a.sub_col(j, t, &q);
                    clean &= a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility: fold an offending row into row t and retry.
            let offending = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&p| !a[p].is_multiple_of(&a[(t, t)]));
            match offending {
                Some((i, _)) => {
                    let minus_one = -BigInt::one();
                    a.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
    }
    finish_diagonal(&a, steps)
}

fn finish_diagonal(a: &IntMatrix, steps: usize) -> Vec<BigInt> {
    (0..steps).map(|i| a[(i, i)].abs()).collect()
}

/// SNF of the integer specialization of `L_G`.
pub fn module_invariants(g: &SignedGraph) -> AbelianInvariants {
    smith_normal_form(&integer_specialization(&laplacian_matrix(g)))
}

/// Rank of the span of the exponent vectors of `p`'s monomials, with a
/// maximal independent subset chosen greedily in canonical term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticRank {
    pub rank: usize,
    pub witness: Vec<Monomial>,
}

pub fn symplectic_rank(p: &LaurentPoly) -> SymplecticRank {
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut witness = Vec::new();
    for (m, _) in p.terms() {
        if m.is_one() {
            continue;
        }
        let v: Vec<BigInt> = m.exponents().iter().map(|&e| BigInt::from(e)).collect();
        let mut trial = basis.clone();
        trial.push(v);
        if rank(&trial) > basis.len() {
            basis = trial;
            witness.push(m.clone());
        }
    }
    SymplecticRank {
        rank: basis.len(),
        witness,
    }
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
pub fn rank(vectors: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = vectors.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Symplectic ranks of `Δ_G` (and optionally `Δ_{G*}`) against `2g`.
/// Conclusive exactly when one of them reaches `2g`; then the virtual genus
/// of the link equals `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusCertificate {
    pub genus: usize,
    pub two_g: usize,
    pub rank_g: usize,
    pub witness_g: Vec<Monomial>,
    pub rank_gstar: Option<usize>,
    pub witness_gstar: Option<Vec<Monomial>>,
    pub conclusive: bool,
}

impl GenusCertificate {
    pub fn virtual_genus(&self) -> Option<usize> {
        self.conclusive.then_some(self.genus)
    }
}

pub fn genus_certificate(
    delta_g: &LaurentPoly,
    delta_gstar: Option<&LaurentPoly>,
    genus: usize,
) -> Result<GenusCertificate, InvariantError> {
    let vars = VariableSet::new(genus);
    for p in std::iter::once(delta_g).chain(delta_gstar) {
        if p.vars() != vars {
            return Err(InvariantError::VariableMismatch {
                left: genus,
                right: p.vars().genus(),
            });
        }
    }
    let two_g = 2 * genus;
    let primal = symplectic_rank(delta_g);
    let dual = delta_gstar.map(symplectic_rank);
    let conclusive = primal.rank == two_g || dual.as_ref().is_some_and(|d| d.rank == two_g);
    Ok(GenusCertificate {
        genus,
        two_g,
        rank_g: primal.rank,
        witness_g: primal.witness,
        rank_gstar: dual.as_ref().map(|d| d.rank),
        witness_gstar: dual.map(|d| d.witness),
        conclusive,
    })
}

/// The unordered pair `{Δ_G, Δ_{G*}}`, each sign-normalized, stored in
/// canonical-string order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairInvariant {
    pub first: LaurentPoly,
    pub second: LaurentPoly,
}

impl PairInvariant {
    pub fn from_polys(a: &LaurentPoly, b: &LaurentPoly) -> Result<Self, InvariantError> {
        if a.vars() != b.vars() {
            return Err(InvariantError::VariableMismatch {
                left: a.vars().genus(),
                right: b.vars().genus(),
            });
        }
        let (a, b) = (a.sign_normalized(), b.sign_normalized());
        let (first, second) = if a.canonical_string() <= b.canonical_string() {
            (a, b)
        } else {
            (b, a)
        };
        Ok(PairInvariant { first, second })
    }

    pub fn canonical_strings(&self) -> (String, String) {
        (
            self.first.canonical_string(),
            self.second.canonical_string(),
        )
    }
}

pub fn pair_invariant(
    g: &SignedGraph,
    gstar: &SignedGraph,
) -> Result<PairInvariant, InvariantError> {
    if g.vars() != gstar.vars() {
        return Err(InvariantError::VariableMismatch {
            left: g.vars().genus(),
            right: gstar.vars().genus(),
        });
    }
    PairInvariant::from_polys(&laplacian_polynomial(g), &laplacian_polynomial(gstar))
}
