use super::monomial::Monomial;
use super::ring::{BlockRingSpec, MultiDegree};

/// All exponent vectors of length `parts` summing to `total`, in
/// lexicographically decreasing order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fill(total, 0, &mut cur, &mut out);
    out
}

fn fill(remaining: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill(remaining - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Every monomial of multidegree `n`: the product of per-block compositions.
pub fn monomials_of_multidegree(spec: &BlockRingSpec, n: &MultiDegree) -> Vec<Monomial> {
    let mut acc: Vec<Vec<u32>> = vec![Vec::with_capacity(spec.num_vars())];
    for (b, &nb) in n.entries().iter().enumerate() {
        let parts = compositions(nb, spec.block_range(b).len());
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for prefix in &acc {
            for p in &parts {
                let mut e = prefix.clone();
                e.extend_from_slice(p);
                next.push(e);
            }
        }
        acc = next;
    }
    acc.into_iter().map(Monomial::from_exponents).collect()
}

/// Every monomial of total degree `t` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, t: u32) -> Vec<Monomial> {
    compositions(t, nvars)
        .into_iter()
        .map(Monomial::from_exponents)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::count_free_monomials;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(compositions(4, 3).len(), 15);
    }

    #[test]
    fn enumeration_matches_free_count() {
        let r = BlockRingSpec::new(vec![vec!["a", "b"], vec!["c", "d", "e"]]).unwrap();
        for n0 in 0..4 {
            for n1 in 0..4 {
                let n = MultiDegree(vec![n0, n1]);
                let ms = monomials_of_multidegree(&r, &n);
                assert_eq!(num_bigint::BigUint::from(ms.len()), count_free_monomials(&r, &n));
                assert!(ms.iter().all(|m| r.multidegree_of(m).unwrap() == n));
            }
        }
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
    }
}
