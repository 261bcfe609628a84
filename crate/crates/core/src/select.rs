//! Choice of decision procedure for a given `(G, k)`.

use crate::graph::{ell_k, m_degree, Graph};
use crate::outcome::Algorithm;

/// First applicable of: `k = m(G)`, `k = Δ(G)`, `k = m(G) - 1`, then the
/// degree-parameterized route when `k = Δ(G) + 1` or `ℓ_k(G) <= k`, and the
/// `Δ + ℓ_k` route otherwise. The `k = Δ(G) + 1` clause is implied by the
/// other one since no vertex has degree `Δ(G) + 1`.
pub fn select_algorithm(g: &Graph, k: usize) -> Algorithm {
    let m = m_degree(g);
    let delta = g.max_degree();
    if k == m {
        Algorithm::KEqM
    } else if k == delta && delta >= 1 {
        Algorithm::KEqDelta
    } else if m >= 2 && k == m - 1 {
        Algorithm::KEqMMinus1
    } else if k == delta + 1 || ell_k(g, k) <= k {
        Algorithm::FptDelta
    } else {
        Algorithm::FptEll
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(select_algorithm(&c4, 2), Algorithm::KEqDelta);
        assert_eq!(select_algorithm(&c4, 3), Algorithm::KEqM);
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(select_algorithm(&p5, 3), Algorithm::KEqM);
        // K_{1,3}: m = 2, Δ = 3
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(select_algorithm(&star, 3), Algorithm::KEqDelta);
        assert_eq!(select_algorithm(&Graph::complete(4), 4), Algorithm::KEqM);
        assert_eq!(select_algorithm(&star, 1), Algorithm::KEqMMinus1);
        assert_eq!(select_algorithm(&star, 4), Algorithm::FptDelta);
        assert_eq!(select_algorithm(&Graph::complete(4), 1), Algorithm::FptEll);
    }
}
