//! Singular-value rank analysis.

use nalgebra::DMatrix;

/// Numerical rank of a matrix with the gap between kept and dropped singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct RankInfo {
    /// Singular values, largest first.
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// `σ_{rank-1} / σ_rank`; infinite when nothing (or everything) is dropped.
    pub gap: f64,
}

/// Rank with cutoff `rel_cutoff × σ_max`.
pub fn numerical_rank(m: &DMatrix<f64>, rel_cutoff: f64) -> RankInfo {
    if m.nrows() == 0 || m.ncols() == 0 {
        return RankInfo {
            singular_values: Vec::new(),
            rank: 0,
            gap: f64::INFINITY,
        };
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let cutoff = rel_cutoff * sv[0];
    let rank = if sv[0] == 0.0 {
        0
    } else {
        sv.iter().take_while(|&&s| s >= cutoff).count()
    };
    let gap = if rank == 0 || rank == sv.len() || sv[rank] == 0.0 {
        f64::INFINITY
    } else {
        sv[rank - 1] / sv[rank]
    };
    RankInfo {
        singular_values: sv,
        rank,
        gap,
    }
}
