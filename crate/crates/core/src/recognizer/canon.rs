//! Canonical labeling of small 3-uniform hypergraphs by exhaustive
//! permutation search.

use crate::error::{Error, Result};
use crate::hypergraph::{for_each_permutation, sorted_triple, Hypergraph3};

pub const CANONICAL_MAX_N: usize = 8;

/// The lexicographically smallest encoding `[n, a0, b0, c0, a1, ...]` of the
/// sorted triple list over all relabelings. Two hypergraphs get the same
/// string iff they are isomorphic.
pub fn canonical_form(h: &Hypergraph3) -> Result<Vec<u8>> {
    let n = h.n();
    if n > CANONICAL_MAX_N {
        return Err(Error::OutOfRange(format!("canonical_form supports n <= {CANONICAL_MAX_N}, got {n}")));
    }
    let mut best: Option<Vec<u8>> = None;
    let mut buf: Vec<[u8; 3]> = Vec::with_capacity(h.len());
    for_each_permutation(n, |perm| {
        buf.clear();
        buf.extend(h.triples().iter().map(|&[a, b, c]| {
            let [x, y, z] = sorted_triple(perm[a], perm[b], perm[c]);
            [x as u8, y as u8, z as u8]
        }));
        buf.sort_unstable();
        let better = match &best {
            None => true,
            Some(b) => buf.iter().flatten().copied().lt(b[1..].iter().copied()),
        };
        if better {
            let mut enc = Vec::with_capacity(1 + 3 * buf.len());
            enc.push(n as u8);
            enc.extend(buf.iter().flatten());
            best = Some(enc);
        }
    });
    Ok(best.unwrap_or_else(|| vec![n as u8]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{based_hypergraph, Graph};

    #[test]
    fn relabelings_agree() {
        let h = based_hypergraph(&Graph::cycle(4).unwrap());
        let c = canonical_form(&h).unwrap();
        for perm in [[1, 2, 3, 0, 4], [4, 3, 2, 1, 0], [0, 2, 1, 4, 3]] {
            assert_eq!(canonical_form(&h.relabel(&perm)).unwrap(), c);
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let c5 = based_hypergraph(&Graph::cycle(5).unwrap());
        let p5 = based_hypergraph(&Graph::path(5));
        assert_ne!(canonical_form(&c5).unwrap(), canonical_form(&p5).unwrap());
        assert_ne!(canonical_form(&Hypergraph3::empty(4)).unwrap(), canonical_form(&Hypergraph3::complete(4)).unwrap());
        // same triple count, different structure
        let a = Hypergraph3::new(5, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let b = Hypergraph3::new(5, [[0, 1, 2], [0, 3, 4]]).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn size_limit() {
        assert!(canonical_form(&Hypergraph3::empty(9)).is_err());
    }
}
