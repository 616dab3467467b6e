//! Hitting-set searches over generator supports.
//!
//! Minimal primes of a squarefree monomial ideal are exactly the minimal
//! transversals of its generator supports; the height is the size of a
//! smallest transversal.

use super::SquarefreeMonomial;

/// Enumerate all minimal transversals of `edges`.
///
/// Branches on an uncovered edge with the fewest admissible variables and
/// prunes as soon as some chosen variable loses its last private edge.
/// Every minimal transversal is produced exactly once.
pub fn minimal_transversals(edges: &[SquarefreeMonomial]) -> Vec<SquarefreeMonomial> {
    let mut out = Vec::new();
    if edges.is_empty() {
        out.push(SquarefreeMonomial::one());
        return out;
    }
    if edges.iter().any(|e| e.is_one()) {
        return out;
    }
    let mut chosen = Vec::new();
    let forbidden = SquarefreeMonomial::one();
    mmcs(edges, &mut chosen, &forbidden, &mut out);
    out.sort();
    out
}

fn mmcs(
    edges: &[SquarefreeMonomial],
    chosen: &mut Vec<usize>,
    forbidden: &SquarefreeMonomial,
    out: &mut Vec<SquarefreeMonomial>,
) {
    let chosen_set = SquarefreeMonomial::from_indices(chosen.iter().copied());
    let mut pick: Option<SquarefreeMonomial> = None;
    for e in edges {
        if !e.is_coprime(&chosen_set) {
            continue;
        }
        let avail = e.without(forbidden);
        if avail.is_one() {
            return;
        }
        if pick.as_ref().is_none_or(|p| avail.degree() < p.degree()) {
            pick = Some(avail);
        }
    }
    let Some(branch) = pick else {
        out.push(chosen_set);
        return;
    };
    let mut forbid = forbidden.clone();
    for v in branch.iter() {
        chosen.push(v);
        if every_var_has_private_edge(edges, chosen) {
            mmcs(edges, chosen, &forbid, out);
        }
        chosen.pop();
        forbid.insert(v);
    }
}

fn every_var_has_private_edge(edges: &[SquarefreeMonomial], chosen: &[usize]) -> bool {
    let set = SquarefreeMonomial::from_indices(chosen.iter().copied());
    chosen.iter().all(|&u| {
        edges
            .iter()
            .any(|e| e.contains(u) && e.gcd(&set).degree() == 1)
    })
}

/// Size of a smallest transversal, by branch and bound.
pub fn min_transversal_size(edges: &[SquarefreeMonomial]) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let mut best = usize::MAX;
    let chosen = SquarefreeMonomial::one();
    let forbidden = SquarefreeMonomial::one();
    branch_min(edges, &chosen, 0, &forbidden, &mut best);
    best
}

fn disjoint_packing(uncovered: &[&SquarefreeMonomial]) -> usize {
    let mut used = SquarefreeMonomial::one();
    let mut count = 0;
    let mut sorted: Vec<_> = uncovered.to_vec();
    sorted.sort_by_key(|e| e.degree());
    for e in sorted {
        if e.is_coprime(&used) {
            used = used.lcm(e);
            count += 1;
        }
    }
    count
}

fn branch_min(
    edges: &[SquarefreeMonomial],
    chosen: &SquarefreeMonomial,
    size: usize,
    forbidden: &SquarefreeMonomial,
    best: &mut usize,
) {
    let uncovered: Vec<&SquarefreeMonomial> =
        edges.iter().filter(|e| e.is_coprime(chosen)).collect();
    if uncovered.is_empty() {
        *best = (*best).min(size);
        return;
    }
    if size + disjoint_packing(&uncovered) >= *best {
        return;
    }
    let mut pick: Option<SquarefreeMonomial> = None;
    for e in &uncovered {
        let avail = e.without(forbidden);
        if avail.is_one() {
            return;
        }
        if pick.as_ref().is_none_or(|p| avail.degree() < p.degree()) {
            pick = Some(avail);
        }
    }
    let branch = pick.expect("uncovered edge exists");
    let mut forbid = forbidden.clone();
    for v in branch.iter() {
        let mut next = chosen.clone();
        next.insert(v);
        branch_min(edges, &next, size + 1, &forbid, best);
        forbid.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[usize]) -> SquarefreeMonomial {
        SquarefreeMonomial::from_indices(v.iter().copied())
    }

    fn brute_force(edges: &[SquarefreeMonomial], n: usize) -> Vec<SquarefreeMonomial> {
        let hits = |s: &SquarefreeMonomial| edges.iter().all(|e| !e.is_coprime(s));
        let mut all: Vec<SquarefreeMonomial> = (0u32..1 << n)
            .map(|mask| m(&(0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
            .filter(|s| hits(s))
            .collect();
        all.retain(|s| {
            s.iter().all(|v| {
                let mut t = s.clone();
                t.remove(v);
                !hits(&t)
            })
        });
        all.sort();
        all
    }

    #[test]
    fn triangle_primes() {
        let edges = [m(&[0, 1]), m(&[1, 2]), m(&[0, 2])];
        assert_eq!(
            minimal_transversals(&edges),
            vec![m(&[0, 1]), m(&[0, 2]), m(&[1, 2])]
        );
        assert_eq!(min_transversal_size(&edges), 2);
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let cases: Vec<Vec<SquarefreeMonomial>> = vec![
            vec![m(&[0, 1]), m(&[2, 3])],
            vec![m(&[0, 1, 2])],
            vec![m(&[0, 1]), m(&[1, 2]), m(&[2, 3]), m(&[3, 4]), m(&[4, 0])],
            vec![m(&[0, 1, 5]), m(&[1, 2, 6]), m(&[2, 3]), m(&[0, 3, 4, 6])],
        ];
        for edges in cases {
            let bf = brute_force(&edges, 7);
            assert_eq!(minimal_transversals(&edges), bf);
            assert_eq!(
                min_transversal_size(&edges),
                bf.iter().map(|s| s.degree()).min().unwrap()
            );
        }
    }
}
