use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::EigList;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub value: Complex64,
    pub alg_mult: usize,
}

/// Distinct eigenvalues with algebraic multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub points: Vec<SpectralPoint>,
}

impl Spectrum {
    pub fn values(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn dimension(&self) -> usize {
        self.points.iter().map(|p| p.alg_mult).sum()
    }

    /// Largest modulus among the cluster representatives.
    pub fn radius(&self) -> f64 {
        self.points.iter().map(|p| p.value.norm()).fold(0.0, f64::max)
    }
}

/// Single-linkage groups of `values` at absolute threshold `tol`, each group
/// in ascending index order, groups ordered by their first index.
pub(crate) fn single_linkage_groups(values: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

pub(crate) fn mean(values: &[Complex64], members: &[usize]) -> Complex64 {
    let sum: Complex64 = members.iter().map(|&i| values[i]).sum();
    sum / members.len() as f64
}

/// Single-linkage clustering at threshold `tol`; the representative of each
/// cluster is the mean of its members.
pub fn cluster_spectrum(eigs: &EigList, tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0) {
        return Err(Error::invalid("cluster tolerance must be positive"));
    }
    if eigs.values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("non-finite eigenvalue"));
    }
    let points = single_linkage_groups(&eigs.values, tol)
        .into_iter()
        .map(|g| SpectralPoint {
            value: mean(&eigs.values, &g),
            alg_mult: g.len(),
        })
        .collect();
    Ok(Spectrum { points })
}
