//! Leading left singular vectors through the smaller Gram matrix.
//!
//! Combiner construction repeatedly needs the dominant left singular vectors
//! of a tall complex matrix `B`. Both required decompositions are obtained
//! from the eigendecomposition of whichever Gram matrix (`B B^H` or `B^H B`)
//! is smaller, which is roughly half the cost of a full SVD and keeps one code
//! path for every scheme.

use nalgebra::SymmetricEigen;

use crate::{C64, CMat, CVec};

/// Eigenvalues this far below the leading one (relative) count as null space.
const RANK_TOL: f64 = 1e-12;

/// Indices of `vals` sorted by descending value, ties by ascending index.
fn descending_order(vals: &nalgebra::DVector<f64>) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap().then(a.cmp(&b)));
    idx
}

/// Rotates `u` so its largest-magnitude entry (ties: lowest index) is real
/// and positive, making eigenvector output deterministic.
fn normalize_phase(mut u: CVec) -> CVec {
    let mut k = 0;
    let mut best = 0.0;
    for (i, z) in u.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best {
            best = m;
            k = i;
        }
    }
    if best > 0.0 {
        let pivot = u[k];
        let rot = pivot.conj() / pivot.norm();
        u *= rot;
    }
    u
}

fn canonical(n: usize, j: usize) -> CVec {
    let mut e = CVec::zeros(n);
    e[j % n] = C64::new(1.0, 0.0);
    e
}

/// The `count` leading unit-norm left singular vectors of `b`, ordered by
/// descending singular value with the deterministic phase convention.
///
/// Directions beyond the numerical rank fall back to canonical basis vectors
/// so the output length is always `count`.
pub(crate) fn leading_left_vectors(b: &CMat, count: usize) -> Vec<CVec> {
    let (rows, cols) = b.shape();
    assert!(count <= rows, "cannot extract {count} directions from {rows}-dimensional space");
    if count == 0 {
        return Vec::new();
    }
    if rows <= cols {
        // Left vectors are eigenvectors of the row-side Gram matrix.
        let eig = SymmetricEigen::new(b * b.adjoint());
        let order = descending_order(&eig.eigenvalues);
        order
            .iter()
            .take(count)
            .map(|&i| normalize_phase(eig.eigenvectors.column(i).clone_owned()))
            .collect()
    } else {
        // Work in the smaller column space, then map back through b.
        let eig = SymmetricEigen::new(b.adjoint() * b);
        let order = descending_order(&eig.eigenvalues);
        let lead = eig.eigenvalues[order[0]].max(0.0);
        (0..count)
            .map(|j| match order.get(j) {
                Some(&i) if eig.eigenvalues[i] > RANK_TOL * lead && eig.eigenvalues[i] > 0.0 => {
                    let w = eig.eigenvectors.column(i);
                    let mut u = b * w;
                    let norm = u.norm();
                    u /= C64::from(norm);
                    normalize_phase(u)
                }
                _ => canonical(rows, j),
            })
            .collect()
    }
}

/// The `count` largest singular values of `b`, descending, zero-padded past
/// the smaller dimension.
pub(crate) fn leading_singular_values(b: &CMat, count: usize) -> Vec<f64> {
    let (rows, cols) = b.shape();
    let gram = if rows <= cols { b * b.adjoint() } else { b.adjoint() * b };
    let eig = SymmetricEigen::new(gram);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().map(|&v| v.max(0.0).sqrt()).collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals.resize(count, 0.0);
    vals
}
